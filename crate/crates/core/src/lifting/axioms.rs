//! Finite-corpus verification of the model-category axioms.

use super::{is_orthogonal, retraction_pairs, Ambient, AmbientError};
use std::fmt;

type Pred<'a, M> = Box<dyn Fn(&M) -> bool + 'a>;

/// Cofibrations, weak equivalences and fibrations as predicates.
pub struct ModelTriple<'a, M> {
    pub cof: Pred<'a, M>,
    pub we: Pred<'a, M>,
    pub fib: Pred<'a, M>,
}

impl<'a, M> ModelTriple<'a, M> {
    pub fn new(cof: impl Fn(&M) -> bool + 'a, we: impl Fn(&M) -> bool + 'a, fib: impl Fn(&M) -> bool + 'a) -> Self {
        ModelTriple { cof: Box::new(cof), we: Box::new(we), fib: Box::new(fib) }
    }

    fn classes(&self, f: &M) -> [bool; 3] {
        [(self.cof)(f), (self.we)(f), (self.fib)(f)]
    }
}

const CLASS_NAMES: [&str; 3] = ["cofibrations", "weak equivalences", "fibrations"];

type Factor<'a, M> = Box<dyn Fn(&M) -> Option<(M, M)> + 'a>;

/// The two factorizations, each returning `(left, right)` with `f = right∘left`.
pub struct Factorizer<'a, M> {
    /// Acyclic cofibration followed by a fibration.
    pub acyclic_cof_then_fib: Factor<'a, M>,
    /// Cofibration followed by an acyclic fibration.
    pub cof_then_acyclic_fib: Factor<'a, M>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxiomStatus {
    Pass,
    Fail,
    /// Only a bounded sample was examined.
    Sampled,
}

impl fmt::Display for AxiomStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AxiomStatus::Pass => "pass",
            AxiomStatus::Fail => "fail",
            AxiomStatus::Sampled => "sampled",
        })
    }
}

#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub axiom: String,
    pub status: AxiomStatus,
    pub checked: usize,
    pub counterexample: Option<String>,
}

impl AxiomReport {
    fn new(axiom: &str) -> Self {
        AxiomReport { axiom: axiom.into(), status: AxiomStatus::Pass, checked: 0, counterexample: None }
    }

    fn fail(&mut self, why: String) {
        if self.status != AxiomStatus::Fail {
            self.status = AxiomStatus::Fail;
            self.counterexample = Some(why);
        }
    }

    pub fn passed(&self) -> bool {
        self.status != AxiomStatus::Fail
    }
}

#[derive(Clone, Copy, Debug)]
pub struct AxiomOptions {
    /// Morphisms examined per direction of the lifting characterization.
    pub model_or_sample: usize,
    pub check_retracts: bool,
}

impl Default for AxiomOptions {
    fn default() -> Self {
        AxiomOptions { model_or_sample: 64, check_retracts: true }
    }
}

struct Corpus<M> {
    mors: Vec<M>,
    /// Indices into `mors` by (source, target) corpus position.
    homs: Vec<Vec<Vec<usize>>>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    classes: Vec<[bool; 3]>,
}

fn corpus<A: Ambient>(amb: &A, triple: &ModelTriple<A::Mor>, objects: &[A::Obj]) -> Result<Corpus<A::Mor>, AmbientError> {
    let n = objects.len();
    let mut c = Corpus { mors: Vec::new(), homs: vec![vec![Vec::new(); n]; n], src: Vec::new(), tgt: Vec::new(), classes: Vec::new() };
    for x in 0..n {
        for y in 0..n {
            for f in amb.hom(&objects[x], &objects[y])? {
                c.homs[x][y].push(c.mors.len());
                c.classes.push(triple.classes(&f));
                c.mors.push(f);
                c.src.push(x);
                c.tgt.push(y);
            }
        }
    }
    Ok(c)
}

/// MC1–MC4 exhaustively over every morphism between corpus objects, MC5
/// through the supplied factorizations, and the lifting characterization of
/// cofibrations and fibrations on a sample.
pub fn check_model_axioms<A: Ambient>(
    amb: &A,
    triple: &ModelTriple<A::Mor>,
    objects: &[A::Obj],
    factorizer: Option<&Factorizer<A::Mor>>,
    opts: AxiomOptions,
) -> Result<Vec<AxiomReport>, AmbientError> {
    let c = corpus(amb, triple, objects)?;
    let n = objects.len();
    let mut mc1 = AxiomReport::new("MC1");
    let mut mc3 = AxiomReport::new("MC3");

    for (x, obj) in objects.iter().enumerate() {
        let id = amb.identity(obj);
        let cl = triple.classes(&id);
        mc1.checked += 1;
        for k in 0..3 {
            if !cl[k] {
                mc1.fail(format!("identity on object {x} is not in {}", CLASS_NAMES[k]));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for &fi in &c.homs[x][y] {
                for z in 0..n {
                    for &gi in &c.homs[y][z] {
                        let (cf, cg) = (c.classes[fi], c.classes[gi]);
                        let gf = amb.compose(&c.mors[gi], &c.mors[fi]);
                        let cgf = triple.classes(&gf);
                        mc1.checked += 1;
                        mc3.checked += 1;
                        for k in 0..3 {
                            if cf[k] && cg[k] && !cgf[k] {
                                mc1.fail(format!("{} not closed under composition: g = {:?}, f = {:?}", CLASS_NAMES[k], c.mors[gi], c.mors[fi]));
                            }
                        }
                        let count = [cf[1], cg[1], cgf[1]].iter().filter(|&&b| b).count();
                        if count == 2 {
                            mc3.fail(format!("two out of three fails: g = {:?}, f = {:?}", c.mors[gi], c.mors[fi]));
                        }
                    }
                }
            }
        }
    }

    let mut mc2 = AxiomReport::new("MC2");
    if opts.check_retracts {
        let mut pairs = vec![vec![Vec::new(); n]; n];
        for x in 0..n {
            for x2 in 0..n {
                pairs[x][x2] = retraction_pairs(amb, &objects[x], &objects[x2])?;
            }
        }
        for x2 in 0..n {
            for y2 in 0..n {
                for &fi in &c.homs[x2][y2] {
                    let f2 = &c.mors[fi];
                    for x in 0..n {
                        if pairs[x][x2].is_empty() {
                            continue;
                        }
                        for y in 0..n {
                            for (i, p) in &pairs[x][x2] {
                                let f2i = amb.compose(f2, i);
                                for (j, q) in &pairs[y][y2] {
                                    let f = amb.compose(q, &f2i);
                                    if !amb.mor_eq(&amb.compose(j, &f), &f2i) {
                                        continue;
                                    }
                                    if !amb.mor_eq(&amb.compose(&f, p), &amb.compose(q, f2)) {
                                        continue;
                                    }
                                    mc2.checked += 1;
                                    let cf = triple.classes(&f);
                                    for k in 0..3 {
                                        if c.classes[fi][k] && !cf[k] {
                                            mc2.fail(format!("{} not closed under retracts: {:?} is a retract of {:?}", CLASS_NAMES[k], f, f2));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    } else {
        mc2.status = AxiomStatus::Sampled;
    }

    let mut mc4 = AxiomReport::new("MC4");
    let all: Vec<usize> = (0..c.mors.len()).collect();
    let acyclic_cof: Vec<usize> = all.iter().copied().filter(|&i| c.classes[i][0] && c.classes[i][1]).collect();
    let cof: Vec<usize> = all.iter().copied().filter(|&i| c.classes[i][0]).collect();
    let fib: Vec<usize> = all.iter().copied().filter(|&i| c.classes[i][2]).collect();
    let acyclic_fib: Vec<usize> = all.iter().copied().filter(|&i| c.classes[i][1] && c.classes[i][2]).collect();
    for (lefts, rights) in [(&acyclic_cof, &fib), (&cof, &acyclic_fib)] {
        for &fi in lefts {
            for &gi in rights {
                let o = is_orthogonal(amb, &c.mors[fi], &c.mors[gi])?;
                mc4.checked += o.squares_checked;
                if let Some(sq) = o.counterexample {
                    mc4.fail(format!("square without lift: {sq:?}"));
                }
            }
        }
    }

    let mut mc5 = AxiomReport::new("MC5");
    match factorizer {
        None => mc5.status = AxiomStatus::Sampled,
        Some(fz) => {
            for f in &c.mors {
                mc5.checked += 1;
                match (fz.acyclic_cof_then_fib)(f) {
                    Some((i, p)) => {
                        let ok = amb.mor_eq(&amb.compose(&p, &i), f) && (triple.cof)(&i) && (triple.we)(&i) && (triple.fib)(&p);
                        if !ok {
                            mc5.fail(format!("bad acyclic-cofibration/fibration factorization of {f:?}"));
                        }
                    }
                    None => mc5.fail(format!("no acyclic-cofibration/fibration factorization of {f:?}")),
                }
                match (fz.cof_then_acyclic_fib)(f) {
                    Some((j, q)) => {
                        let ok = amb.mor_eq(&amb.compose(&q, &j), f) && (triple.cof)(&j) && (triple.we)(&q) && (triple.fib)(&q);
                        if !ok {
                            mc5.fail(format!("bad cofibration/acyclic-fibration factorization of {f:?}"));
                        }
                    }
                    None => mc5.fail(format!("no cofibration/acyclic-fibration factorization of {f:?}")),
                }
            }
        }
    }

    let mut or = AxiomReport::new("model-or");
    or.status = AxiomStatus::Sampled;
    let non_cof: Vec<usize> = all.iter().copied().filter(|&i| !c.classes[i][0]).take(opts.model_or_sample).collect();
    for &fi in &non_cof {
        or.checked += 1;
        let mut blocked = false;
        for &gi in &acyclic_fib {
            if !is_orthogonal(amb, &c.mors[fi], &c.mors[gi])?.holds {
                blocked = true;
                break;
            }
        }
        if !blocked {
            or.fail(format!("{:?} is not a cofibration but lifts against every corpus acyclic fibration", c.mors[fi]));
        }
    }
    let non_fib: Vec<usize> = all.iter().copied().filter(|&i| !c.classes[i][2]).take(opts.model_or_sample).collect();
    for &gi in &non_fib {
        or.checked += 1;
        let mut blocked = false;
        for &fi in &acyclic_cof {
            if !is_orthogonal(amb, &c.mors[fi], &c.mors[gi])?.holds {
                blocked = true;
                break;
            }
        }
        if !blocked {
            or.fail(format!("{:?} is not a fibration but lifts against every corpus acyclic cofibration", c.mors[gi]));
        }
    }

    Ok(vec![mc1, mc2, mc3, mc4, mc5, or])
}
