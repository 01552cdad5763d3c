//! Gluing presentations along objects, and bounded checks that a cell
//! attachment leaves the old Hom complexes unchanged up to quasi-isomorphism.

use crate::dg::{NcPoly, Path, Presentation, Quiver};
use crate::linalg::{span_coefficients, span_rank, Matrix};
use crate::Scalar;

/// `C ⊔_{𝕂^k} D`: the objects of `D` listed in `pairs` as `(d, c)` are
/// identified with objects of `C`; the others are added. Generators of `C`
/// keep their indices and come first.
pub fn glue<S: Scalar>(c: &Presentation<S>, d: &Presentation<S>, pairs: &[(usize, usize)]) -> Presentation<S> {
    let mut objects = c.quiver.objects.clone();
    let obj: Vec<usize> = (0..d.quiver.objects.len())
        .map(|x| match pairs.iter().find(|p| p.0 == x) {
            Some(&(_, y)) => y,
            None => {
                objects.push(d.quiver.objects[x].clone());
                objects.len() - 1
            }
        })
        .collect();
    let mut gens = c.quiver.gens.clone();
    let offset = gens.len();
    for g in &d.quiver.gens {
        let mut name = g.name.clone();
        while gens.iter().any(|h| h.name == name) {
            name.push('\'');
        }
        gens.push(crate::dg::Generator { name, src: obj[g.src], tgt: obj[g.tgt], ..g.clone() });
    }
    let q = Quiver { objects, gens };
    let lift = |p: &NcPoly<S>| q.remap(p, |a| a + offset, |x| obj[x]);
    let mut diff = c.diff.iter().map(|p| super::rebuild(&q, p)).collect::<Vec<_>>();
    diff.extend(d.diff.iter().map(&lift));
    let mut out = Presentation::free(q.clone(), diff);
    out.relations = c.relations.iter().map(|p| super::rebuild(&q, p)).chain(d.relations.iter().map(&lift)).collect();
    out
}

/// One old Hom block seen inside the enlarged category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionEntry {
    pub src: usize,
    pub tgt: usize,
    pub degree: i64,
    /// Cycles of the new Hom spanned by words of weight at most the cap.
    pub new_cycles: usize,
    /// Those cohomologous to an old cycle.
    pub explained: usize,
    pub old_classes: usize,
    /// Old classes that stay independent modulo new boundaries.
    pub surviving: usize,
}

impl ExtensionEntry {
    pub fn ok(&self) -> bool {
        self.new_cycles == self.explained && self.old_classes == self.surviving
    }
}

/// For old objects `a, b` and degrees `lo..=hi`: new cycles of weight at most
/// `cap` are old cycles up to boundaries of weight at most `cap + slack`,
/// and old classes stay nonzero. `new` must extend `old` by generators and
/// relations that do not rewrite old words.
pub fn bounded_extension_check<S: Scalar>(old: &Presentation<S>, new: &Presentation<S>, lo: i64, hi: i64, cap: u32, slack: u32) -> Vec<ExtensionEntry> {
    let (tn, _) = new.truncate(lo - 1, hi + 1, cap + slack);
    let (to, _) = old.truncate(lo - 1, hi + 1, cap);
    let index: std::collections::HashMap<Path, usize> = tn.basis.iter().enumerate().filter_map(|(a, b)| b.path.clone().map(|p| (p, a))).collect();
    let mut out = Vec::new();
    for a in 0..old.quiver.objects.len() {
        for b in 0..old.quiver.objects.len() {
            for n in lo..=hi {
                let block = tn.block(a, b, n);
                let dim = block.len();
                let hc = tn.hom_complex_on(a, b, n - 1, n + 1);
                let dmat = hc.diff(n);
                let light: Vec<usize> = (0..dim).filter(|&k| tn.basis[block[k]].weight <= cap).collect();
                let sub = Matrix::from_columns(dmat.rows(), &light.iter().map(|&k| dmat.column(k)).collect::<Vec<_>>());
                let cycles: Vec<Vec<S>> = sub
                    .kernel()
                    .into_iter()
                    .map(|z| {
                        let mut full = vec![S::zero(); dim];
                        for (c, &k) in light.iter().enumerate() {
                            full[k] = z[c].clone();
                        }
                        full
                    })
                    .collect();
                let embed = |v: &[S]| -> Vec<S> {
                    let mut w = vec![S::zero(); dim];
                    for (k, &i) in to.block(a, b, n).iter().enumerate() {
                        let p = to.basis[i].path.clone().expect("truncation words");
                        let j = index[&p];
                        w[tn.position(j)] = v[k].clone();
                    }
                    w
                };
                let old_hc = to.hom_complex_on(a, b, n - 1, n + 1);
                let old_cycles: Vec<Vec<S>> = old_hc.cycles(n).iter().map(|z| embed(z)).collect();
                let old_reps: Vec<Vec<S>> = old_hc.cohomology(n).representatives.iter().map(|z| embed(z)).collect();
                let bnd = hc.boundaries(n);
                let mut span = bnd.clone();
                span.extend(old_cycles);
                let explained = cycles.iter().filter(|z| span_coefficients(dim, &span, z).is_some()).count();
                let base = span_rank(dim, &bnd);
                let surviving = span_rank(dim, &[bnd, old_reps.clone()].concat()) - base;
                out.push(ExtensionEntry { src: a, tgt: b, degree: n, new_cycles: cycles.len(), explained, old_classes: old_reps.len(), surviving });
            }
        }
    }
    out
}
