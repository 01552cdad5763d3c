//! Named small categories used as the standard test corpus.

use super::constructions::{arrow_category, interval, parallel_arrows, product, terminal};
use super::fincat::FinCat;
use std::sync::Arc;

/// Base categories: `∅, 1, K_0..K_3, I, P(A_2)`.
pub fn base() -> Vec<(String, Arc<FinCat>)> {
    let mut out = vec![("empty".to_string(), Arc::new(FinCat::empty())), ("1".to_string(), Arc::new(terminal()))];
    for n in 0..=3 {
        out.push((format!("K{n}"), Arc::new(parallel_arrows(n))));
    }
    out.push(("I".to_string(), Arc::new(interval())));
    out.push(("A2".to_string(), Arc::new(arrow_category())));
    out
}

/// Base categories together with each `C × I`.
pub fn full() -> Vec<(String, Arc<FinCat>)> {
    let b = base();
    let i = interval();
    let mut out = b.clone();
    for (name, c) in &b {
        out.push((format!("{name}xI"), Arc::new(product(c, &i))));
    }
    out
}

/// Corpus members with at most `objects` objects and `morphisms` morphisms.
pub fn small(objects: usize, morphisms: usize) -> Vec<(String, Arc<FinCat>)> {
    full().into_iter().filter(|(_, c)| c.num_objects() <= objects && c.num_morphisms() <= morphisms).collect()
}
