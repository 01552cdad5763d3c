//! Finite categories stored by total composition table.

use std::collections::HashMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub id: String,
    pub dom: usize,
    pub cod: usize,
}

#[derive(Clone, PartialEq, Eq)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<usize>,
    /// `compose[g * m + f] = Some(g∘f)` when `cod f = dom g`.
    compose: Vec<Option<usize>>,
    hom: Vec<Vec<usize>>,
    inverse: Vec<Option<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatError {
    UnknownObject(String),
    UnknownMorphism(String),
    DuplicateId(String),
    MissingIdentity(String),
    BadIdentity(String),
    MissingComposite(String, String),
    BadComposite { g: String, f: String, result: String },
    NotComposable(String, String),
}

impl fmt::Display for CatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatError::UnknownObject(x) => write!(f, "unknown object `{x}`"),
            CatError::UnknownMorphism(x) => write!(f, "unknown morphism `{x}`"),
            CatError::DuplicateId(x) => write!(f, "duplicate id `{x}`"),
            CatError::MissingIdentity(x) => write!(f, "object `{x}` has no identity"),
            CatError::BadIdentity(x) => write!(f, "identity `{x}` is not an endomorphism"),
            CatError::MissingComposite(g, h) => write!(f, "composite {g}∘{h} missing from table"),
            CatError::BadComposite { g, f: h, result } => {
                write!(f, "composite {g}∘{h} = {result} has wrong endpoints")
            }
            CatError::NotComposable(g, h) => write!(f, "{g}∘{h} is not composable"),
        }
    }
}

impl std::error::Error for CatError {}

/// Outcome of checking the category axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatValidation {
    Ok,
    IdentityFailure { identity: String, morphism: String },
    AssociativityFailure { h: String, g: String, f: String },
}

impl CatValidation {
    pub fn is_ok(&self) -> bool {
        matches!(self, CatValidation::Ok)
    }
}

impl fmt::Debug for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinCat(objects={:?}, morphisms=[", self.objects)?;
        for (i, m) in self.morphisms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{}→{}", m.id, self.objects[m.dom], self.objects[m.cod])?;
        }
        write!(f, "])")
    }
}

impl FinCat {
    /// Builds a category from a composition function on indices. The
    /// function is consulted for every composable pair.
    pub fn from_fn(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identity: Vec<usize>,
        mut comp: impl FnMut(usize, usize) -> usize,
    ) -> Result<FinCat, CatError> {
        check_ids(&objects, &morphisms)?;
        let m = morphisms.len();
        for (x, &i) in identity.iter().enumerate() {
            if i >= m {
                return Err(CatError::MissingIdentity(objects[x].clone()));
            }
            if morphisms[i].dom != x || morphisms[i].cod != x {
                return Err(CatError::BadIdentity(morphisms[i].id.clone()));
            }
        }
        if identity.len() != objects.len() {
            return Err(CatError::MissingIdentity(objects.get(identity.len()).cloned().unwrap_or_default()));
        }
        let mut compose = vec![None; m * m];
        for g in 0..m {
            for f in 0..m {
                if morphisms[f].cod != morphisms[g].dom {
                    continue;
                }
                let h = comp(g, f);
                if h >= m || morphisms[h].dom != morphisms[f].dom || morphisms[h].cod != morphisms[g].cod {
                    return Err(CatError::BadComposite {
                        g: morphisms[g].id.clone(),
                        f: morphisms[f].id.clone(),
                        result: morphisms.get(h).map(|x| x.id.clone()).unwrap_or_default(),
                    });
                }
                compose[g * m + f] = Some(h);
            }
        }
        Ok(Self::assemble(objects, morphisms, identity, compose))
    }

    /// Builds a category from named data; `table` lists `(g, f, g∘f)`.
    pub fn from_names(
        objects: &[&str],
        morphisms: &[(&str, &str, &str)],
        identities: &[(&str, &str)],
        table: &[(&str, &str, &str)],
    ) -> Result<FinCat, CatError> {
        let objs: Vec<String> = objects.iter().map(|s| s.to_string()).collect();
        let obj_index: HashMap<&str, usize> = objects.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let mut mors = Vec::new();
        for (id, d, c) in morphisms {
            let dom = *obj_index.get(d).ok_or_else(|| CatError::UnknownObject(d.to_string()))?;
            let cod = *obj_index.get(c).ok_or_else(|| CatError::UnknownObject(c.to_string()))?;
            mors.push(Morphism { id: id.to_string(), dom, cod });
        }
        let mor_index: HashMap<&str, usize> = morphisms.iter().enumerate().map(|(i, m)| (m.0, i)).collect();
        let mut identity = vec![usize::MAX; objs.len()];
        for (o, m) in identities {
            let x = *obj_index.get(o).ok_or_else(|| CatError::UnknownObject(o.to_string()))?;
            let i = *mor_index.get(m).ok_or_else(|| CatError::UnknownMorphism(m.to_string()))?;
            identity[x] = i;
        }
        for (x, &i) in identity.iter().enumerate() {
            if i == usize::MAX {
                return Err(CatError::MissingIdentity(objs[x].clone()));
            }
        }
        let mut explicit: HashMap<(usize, usize), usize> = HashMap::new();
        for (g, f, h) in table {
            let gi = *mor_index.get(g).ok_or_else(|| CatError::UnknownMorphism(g.to_string()))?;
            let fi = *mor_index.get(f).ok_or_else(|| CatError::UnknownMorphism(f.to_string()))?;
            let hi = *mor_index.get(h).ok_or_else(|| CatError::UnknownMorphism(h.to_string()))?;
            if mors[fi].cod != mors[gi].dom {
                return Err(CatError::NotComposable(g.to_string(), f.to_string()));
            }
            explicit.insert((gi, fi), hi);
        }
        let mut missing = None;
        let ident_set = identity.clone();
        let result = FinCat::from_fn(objs, mors.clone(), identity, |g, f| {
            if let Some(&h) = explicit.get(&(g, f)) {
                h
            } else if ident_set.contains(&g) && mors[g].dom == mors[g].cod && ident_set[mors[g].dom] == g {
                f
            } else if ident_set[mors[f].dom] == f {
                g
            } else {
                if missing.is_none() {
                    missing = Some((mors[g].id.clone(), mors[f].id.clone()));
                }
                f
            }
        });
        if let Some((g, f)) = missing {
            return Err(CatError::MissingComposite(g, f));
        }
        result
    }

    /// Builds from a raw table, which may violate the axioms; used to
    /// exercise [`FinCat::validate`].
    pub fn from_raw_table(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identity: Vec<usize>,
        table: &HashMap<(usize, usize), usize>,
    ) -> Result<FinCat, CatError> {
        FinCat::from_fn(objects, morphisms.clone(), identity, |g, f| {
            *table.get(&(g, f)).unwrap_or(&usize::MAX)
        })
    }

    fn assemble(objects: Vec<String>, morphisms: Vec<Morphism>, identity: Vec<usize>, compose: Vec<Option<usize>>) -> FinCat {
        let n = objects.len();
        let mut hom = vec![Vec::new(); n * n];
        for (i, m) in morphisms.iter().enumerate() {
            hom[m.dom * n + m.cod].push(i);
        }
        let mut c = FinCat { objects, morphisms, identity, compose, hom, inverse: Vec::new() };
        let inverse = (0..c.morphisms.len())
            .map(|f| {
                let (d, k) = (c.morphisms[f].dom, c.morphisms[f].cod);
                c.hom(k, d).iter().copied().find(|&g| c.comp(g, f) == c.identity[d] && c.comp(f, g) == c.identity[k])
            })
            .collect();
        c.inverse = inverse;
        c
    }

    pub fn empty() -> FinCat {
        FinCat::assemble(Vec::new(), Vec::new(), Vec::new(), Vec::new())
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn mor_name(&self, f: usize) -> &str {
        &self.morphisms[f].id
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn mor_index(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.id == name)
    }

    pub fn dom(&self, f: usize) -> usize {
        self.morphisms[f].dom
    }

    pub fn cod(&self, f: usize) -> usize {
        self.morphisms[f].cod
    }

    pub fn id(&self, x: usize) -> usize {
        self.identity[x]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identity[self.dom(f)] == f
    }

    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        &self.hom[x * self.objects.len() + y]
    }

    /// `g∘f`; panics if not composable.
    pub fn comp(&self, g: usize, f: usize) -> usize {
        self.compose[g * self.morphisms.len() + f].expect("composable pair")
    }

    pub fn try_comp(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g * self.morphisms.len() + f]
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        self.inverse[f]
    }

    pub fn is_iso(&self, f: usize) -> bool {
        self.inverse[f].is_some()
    }

    pub fn isos_from(&self, x: usize) -> Vec<usize> {
        (0..self.morphisms.len()).filter(|&f| self.dom(f) == x && self.is_iso(f)).collect()
    }

    pub fn isomorphic_objects(&self, x: usize, y: usize) -> bool {
        self.hom(x, y).iter().any(|&f| self.is_iso(f))
    }

    pub fn is_groupoid(&self) -> bool {
        (0..self.morphisms.len()).all(|f| self.is_iso(f))
    }

    /// Checks identity laws and associativity, reporting the first failure.
    pub fn validate(&self) -> CatValidation {
        for (f, m) in self.morphisms.iter().enumerate() {
            let (idd, idc) = (self.identity[m.dom], self.identity[m.cod]);
            if self.comp(f, idd) != f {
                return CatValidation::IdentityFailure { identity: self.morphisms[idd].id.clone(), morphism: m.id.clone() };
            }
            if self.comp(idc, f) != f {
                return CatValidation::IdentityFailure { identity: self.morphisms[idc].id.clone(), morphism: m.id.clone() };
            }
        }
        let n = self.morphisms.len();
        for h in 0..n {
            for g in 0..n {
                let Some(hg) = self.try_comp(h, g) else { continue };
                for f in 0..n {
                    let Some(gf) = self.try_comp(g, f) else { continue };
                    if self.comp(hg, f) != self.comp(h, gf) {
                        return CatValidation::AssociativityFailure {
                            h: self.morphisms[h].id.clone(),
                            g: self.morphisms[g].id.clone(),
                            f: self.morphisms[f].id.clone(),
                        };
                    }
                }
            }
        }
        CatValidation::Ok
    }

    /// The opposite category, with the same ids.
    pub fn opposite(&self) -> FinCat {
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| Morphism { id: m.id.clone(), dom: m.cod, cod: m.dom })
            .collect();
        FinCat::from_fn(self.objects.clone(), morphisms, self.identity.clone(), |g, f| self.comp(f, g))
            .expect("opposite of a valid category")
    }

    /// Full subcategory on the given objects, keeping ids.
    pub fn full_subcategory(&self, objs: &[usize]) -> (FinCat, Vec<usize>) {
        let mut obj_pos = vec![usize::MAX; self.objects.len()];
        for (i, &o) in objs.iter().enumerate() {
            obj_pos[o] = i;
        }
        let mut mor_map = Vec::new();
        let mut mor_pos = vec![usize::MAX; self.morphisms.len()];
        for (f, m) in self.morphisms.iter().enumerate() {
            if obj_pos[m.dom] != usize::MAX && obj_pos[m.cod] != usize::MAX {
                mor_pos[f] = mor_map.len();
                mor_map.push(f);
            }
        }
        let morphisms = mor_map
            .iter()
            .map(|&f| Morphism { id: self.morphisms[f].id.clone(), dom: obj_pos[self.dom(f)], cod: obj_pos[self.cod(f)] })
            .collect();
        let identity = objs.iter().map(|&o| mor_pos[self.identity[o]]).collect();
        let sub = FinCat::from_fn(objs.iter().map(|&o| self.objects[o].clone()).collect(), morphisms, identity, |g, f| {
            mor_pos[self.comp(mor_map[g], mor_map[f])]
        })
        .expect("full subcategory of a valid category");
        (sub, mor_map)
    }
}

fn check_ids(objects: &[String], morphisms: &[Morphism]) -> Result<(), CatError> {
    let mut seen = std::collections::HashSet::new();
    for o in objects {
        if !seen.insert(o) {
            return Err(CatError::DuplicateId(o.clone()));
        }
    }
    let mut seen = std::collections::HashSet::new();
    for m in morphisms {
        if !seen.insert(&m.id) {
            return Err(CatError::DuplicateId(m.id.clone()));
        }
        if m.dom >= objects.len() || m.cod >= objects.len() {
            return Err(CatError::UnknownObject(m.id.clone()));
        }
    }
    Ok(())
}
