//! Homotopy of functors by three independent routes.

use super::factor::{cylinder, path_object, CylinderDiagram, PathDiagram};
use crate::cat::enumerate::{enumerate_functors, find_functor, find_nat_iso, GuardExceeded};
use crate::cat::{FinCat, Functor, NatTransf};
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct NatIsoRoutes {
    pub nat_iso: Option<NatTransf>,
    /// `H: C×I → D` restricting to `F` and `G` on the two ends.
    pub left: Option<Functor>,
    /// `K: C → Hom(I, D)` with `p₀K = F` and `p₁K = G`.
    pub right: Option<Functor>,
}

impl NatIsoRoutes {
    pub fn agree(&self) -> bool {
        self.nat_iso.is_some() == self.left.is_some() && self.left.is_some() == self.right.is_some()
    }

    pub fn homotopic(&self) -> bool {
        self.nat_iso.is_some()
    }
}

fn left_homotopy(cyl: &CylinderDiagram, f: &Functor, g: &Functor) -> Option<Functor> {
    let ends = [f, g];
    find_functor(
        &cyl.cyl,
        &f.target,
        &|o, y| ends[o % 2].obj[o / 2] == y,
        &|m, n| {
            let k = m % 4;
            k >= 2 || ends[k].mor[m / 4] == n
        },
    )
}

fn right_homotopy(path: &PathDiagram, f: &Functor, g: &Functor) -> Option<Functor> {
    let d = &path.base;
    find_functor(
        &f.source,
        &path.path,
        &|x, s| d.dom(path.isos[s]) == f.obj[x] && d.cod(path.isos[s]) == g.obj[x],
        &|m, n| path.pairs[n] == (f.mor[m], g.mor[m]),
    )
}

/// Decides `F ≅ G` by natural-isomorphism search, by a cylinder homotopy
/// and by a path-object homotopy.
pub fn naturally_isomorphic(f: &Functor, g: &Functor) -> NatIsoRoutes {
    let cyl = cylinder(&f.source);
    let path = path_object(&f.target);
    NatIsoRoutes { nat_iso: find_nat_iso(f, g), left: left_homotopy(&cyl, f, g), right: right_homotopy(&path, f, g) }
}

/// `Fun(C, D)` partitioned into natural-isomorphism classes, in order of
/// first member.
pub fn ho_hom(c: &Arc<FinCat>, d: &Arc<FinCat>, guard: usize) -> Result<Vec<Vec<Functor>>, GuardExceeded> {
    let mut classes: Vec<Vec<Functor>> = Vec::new();
    for f in enumerate_functors(c, d, guard)? {
        match classes.iter_mut().find(|cl| find_nat_iso(&cl[0], &f).is_some()) {
            Some(cl) => cl.push(f),
            None => classes.push(vec![f]),
        }
    }
    Ok(classes)
}

/// The left-homotopy relation on `Fun(C, D)` through the cylinder `C×I`,
/// as a boolean matrix in enumeration order.
pub fn left_homotopy_relation(c: &Arc<FinCat>, d: &Arc<FinCat>, guard: usize) -> Result<(Vec<Functor>, Vec<Vec<bool>>), GuardExceeded> {
    let fs = enumerate_functors(c, d, guard)?;
    let cyl = cylinder(c);
    let rel = fs.iter().map(|f| fs.iter().map(|g| left_homotopy(&cyl, f, g).is_some()).collect()).collect();
    Ok((fs, rel))
}
