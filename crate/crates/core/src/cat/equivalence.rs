//! Equivalences of finite categories, structurally and by quasi-inverse search.

use super::enumerate::{find_nat_iso, search_functors, Flow, GuardExceeded};
use super::functor::{Functor, NatTransf};

/// Full, faithful and dense.
pub fn is_equivalence(f: &Functor) -> bool {
    f.is_full() && f.is_faithful() && f.is_dense()
}

pub struct QuasiInverse {
    pub inverse: Functor,
    /// `G∘F ≅ Id`.
    pub unit: NatTransf,
    /// `F∘G ≅ Id`.
    pub counit: NatTransf,
}

/// Searches functors `D → C` for a quasi-inverse of `f`.
pub fn find_quasi_inverse(f: &Functor, guard: usize) -> Result<Option<QuasiInverse>, GuardExceeded> {
    let (c, d) = (&f.source, &f.target);
    let id_c = Functor::identity(c);
    let id_d = Functor::identity(d);
    let mut visited = 0usize;
    let mut exceeded = false;
    let mut found = None;
    search_functors(d, c, &|_, _| true, &|_, _| true, &mut |o, m| {
        visited += 1;
        if visited > guard {
            exceeded = true;
            return Flow::Stop;
        }
        let g = Functor::new_unchecked(d.clone(), c.clone(), o.to_vec(), m.to_vec());
        let gf = f.then(&g);
        let Some(unit) = find_nat_iso(&gf, &id_c) else { return Flow::Continue };
        let fg = g.then(f);
        let Some(counit) = find_nat_iso(&fg, &id_d) else { return Flow::Continue };
        found = Some(QuasiInverse { inverse: g, unit, counit });
        Flow::Stop
    });
    if found.is_some() {
        return Ok(found);
    }
    if exceeded {
        return Err(GuardExceeded { limit: guard });
    }
    Ok(None)
}
