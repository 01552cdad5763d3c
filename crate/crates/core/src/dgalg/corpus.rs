//! Named concrete dg algebras used by tests and the command line.

use super::cocylinder::cocylinder;
use super::{disc, dual_numbers, free_product, ground, sphere};
use crate::dg::ConcreteDgAlg;
use crate::Scalar;
use std::sync::Arc;

/// Ten finite or truncated dg algebras covering zero and nonzero
/// differentials, relations, and generators of both signs of degree.
pub fn concrete_corpus<S: Scalar>() -> Vec<(String, Arc<ConcreteDgAlg<S>>)> {
    let t = |p: crate::dg::Presentation<S>, lo: i64, hi: i64, cap: u32| Arc::new(p.truncate(lo, hi, cap).0);
    let k = t(ground(), -2, 2, 4);
    vec![
        ("k".to_string(), k.clone()),
        ("S(1)".into(), t(sphere(1), -4, 0, 4)),
        ("S(2)".into(), t(sphere(2), -6, 0, 3)),
        ("S(-1)".into(), t(sphere(-1), 0, 4, 4)),
        ("D(1)".into(), t(disc(1), -3, 1, 4)),
        ("D(0)".into(), t(disc(0), -1, 2, 3)),
        ("D(-1)".into(), t(disc(-1), 0, 4, 4)),
        ("k[e]/e^2".into(), Arc::new(dual_numbers())),
        ("Gamma(k)".into(), cocylinder(&k_finite()).gamma),
        ("S(1)*D(2)".into(), t(free_product(&sphere(1), &disc(2)), -4, 0, 4)),
    ]
}

/// The ground field as a finite algebra concentrated in degree zero.
pub fn k_finite<S: Scalar>() -> Arc<ConcreteDgAlg<S>> {
    Arc::new(ground().truncate(0, 0, 0).0)
}
