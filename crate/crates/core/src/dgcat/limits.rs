//! Limits of finite diagrams of finite dg categories, and presentations of
//! their colimits.

use super::generator;
use crate::dg::concrete::elem_add;
use crate::dg::{BasisElem, BasisMap, ConcreteDgCat, DgError, Elem, NcPoly, Presentation, Quiver};
use crate::linalg::{span_coefficients, Matrix};
use crate::Scalar;
use std::collections::HashMap;
use std::sync::Arc;

/// Categories and functors `cats[i] → cats[j]` between them.
#[derive(Clone)]
pub struct Diagram<S> {
    pub cats: Vec<Arc<ConcreteDgCat<S>>>,
    pub arrows: Vec<(usize, usize, BasisMap<S>)>,
}

/// The limit with its projections. Objects are compatible tuples; each Hom
/// is the subspace of compatible tuples of morphisms.
pub struct Limit<S> {
    pub cat: Arc<ConcreteDgCat<S>>,
    pub tuples: Vec<Vec<usize>>,
    pub projections: Vec<BasisMap<S>>,
}

pub fn limit<S: Scalar>(d: &Diagram<S>) -> Result<Limit<S>, DgError> {
    if d.cats.iter().any(|c| !c.supported) {
        return Err(DgError::Unknown("limits need finite categories".into()));
    }
    let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
    for c in &d.cats {
        tuples = tuples.into_iter().flat_map(|t| (0..c.num_objects()).map(move |x| [t.clone(), vec![x]].concat())).collect();
    }
    tuples.retain(|t| d.arrows.iter().all(|(i, j, f)| f.obj[t[*i]] == t[*j]));
    let lo = d.cats.iter().map(|c| c.lo).min().unwrap_or(0);
    let hi = d.cats.iter().map(|c| c.hi).max().unwrap_or(0);
    // Per (s, t, n): the component blocks and a basis of compatible tuples.
    let mut spaces: HashMap<(usize, usize, i64), (Vec<usize>, Vec<Vec<S>>)> = HashMap::new();
    let mut basis = Vec::new();
    let mut vectors: Vec<Vec<S>> = Vec::new();
    for (s, ts) in tuples.iter().enumerate() {
        for (t, tt) in tuples.iter().enumerate() {
            for n in lo..=hi {
                let dims: Vec<usize> = d.cats.iter().enumerate().map(|(i, c)| c.dim(ts[i], tt[i], n)).collect();
                let mut offsets = vec![0];
                for k in &dims {
                    offsets.push(offsets.last().unwrap() + k);
                }
                let total = *offsets.last().unwrap();
                let mut rows = Vec::new();
                for (i, j, f) in &d.arrows {
                    let (ci, cj) = (&d.cats[*i], &d.cats[*j]);
                    let m = cj.dim(ts[*j], tt[*j], n);
                    let mut block = vec![vec![S::zero(); total]; m];
                    for (c, &e) in ci.block(ts[*i], tt[*i], n).iter().enumerate() {
                        for (r, v) in cj.coords(&f.images[e], ts[*j], tt[*j], n).into_iter().enumerate() {
                            block[r][offsets[*i] + c] = block[r][offsets[*i] + c].clone() + v;
                        }
                    }
                    for (c, _) in cj.block(ts[*j], tt[*j], n).iter().enumerate() {
                        block[c][offsets[*j] + c] = block[c][offsets[*j] + c].clone() - S::one();
                    }
                    rows.extend(block);
                }
                let kernel = if total == 0 {
                    Vec::new()
                } else if rows.is_empty() {
                    (0..total).map(|k| crate::linalg::unit_vec(total, k)).collect()
                } else {
                    Matrix::from_row_vecs(total, &rows).kernel()
                };
                for v in &kernel {
                    let label = d
                        .cats
                        .iter()
                        .enumerate()
                        .map(|(i, c)| c.render(&c.from_coords(ts[i], tt[i], n, &v[offsets[i]..offsets[i + 1]])))
                        .collect::<Vec<_>>()
                        .join(",");
                    basis.push(BasisElem { src: s, tgt: t, degree: n, weight: 0, label: format!("({label})"), path: None });
                    vectors.push(v.clone());
                }
                spaces.insert((s, t, n), (offsets, kernel));
            }
        }
    }
    let components = |k: usize| -> Vec<Elem<S>> {
        let b = &basis[k];
        let (offsets, _) = &spaces[&(b.src, b.tgt, b.degree)];
        d.cats
            .iter()
            .enumerate()
            .map(|(i, c)| c.from_coords(tuples[b.src][i], tuples[b.tgt][i], b.degree, &vectors[k][offsets[i]..offsets[i + 1]]))
            .collect()
    };
    let first: HashMap<(usize, usize, i64), usize> = {
        let mut m = HashMap::new();
        for (k, b) in basis.iter().enumerate() {
            m.entry((b.src, b.tgt, b.degree)).or_insert(k);
        }
        m
    };
    let express = |s: usize, t: usize, n: i64, parts: &[Elem<S>]| -> Elem<S> {
        let Some((offsets, kernel)) = spaces.get(&(s, t, n)) else { return Elem::new() };
        if kernel.is_empty() {
            return Elem::new();
        }
        let mut v = Vec::new();
        for (i, c) in d.cats.iter().enumerate() {
            v.extend(c.coords(&parts[i], tuples[s][i], tuples[t][i], n));
        }
        debug_assert_eq!(v.len(), *offsets.last().unwrap());
        let coeffs = span_coefficients(v.len(), kernel, &v).expect("compatible tuples stay compatible");
        let start = first[&(s, t, n)];
        coeffs.into_iter().enumerate().filter(|(_, c)| !c.is_negligible()).map(|(k, c)| (start + k, c)).collect()
    };
    let comps: Vec<Vec<Elem<S>>> = (0..basis.len()).map(components).collect();
    let diff = (0..basis.len())
        .map(|k| {
            let b = &basis[k];
            let parts: Vec<Elem<S>> = d.cats.iter().zip(&comps[k]).map(|(c, e)| c.d(e)).collect();
            express(b.src, b.tgt, b.degree + 1, &parts)
        })
        .collect();
    let mut mult = HashMap::new();
    for (q, bq) in basis.iter().enumerate() {
        for (p, bp) in basis.iter().enumerate() {
            let n = bq.degree + bp.degree;
            if bp.tgt != bq.src || n < lo || n > hi {
                continue;
            }
            let parts: Vec<Elem<S>> = d.cats.iter().enumerate().map(|(i, c)| c.compose(&comps[q][i], &comps[p][i]).expect("finite")).collect();
            mult.insert((q, p), express(bp.src, bq.tgt, n, &parts));
        }
    }
    let identity = (0..tuples.len())
        .map(|s| {
            let parts: Vec<Elem<S>> = d.cats.iter().enumerate().map(|(i, c)| c.identity[tuples[s][i]].clone()).collect();
            express(s, s, 0, &parts)
        })
        .collect();
    let names = tuples.iter().map(|t| format!("({})", t.iter().enumerate().map(|(i, &x)| d.cats[i].objects[x].clone()).collect::<Vec<_>>().join(","))).collect();
    let cat = Arc::new(ConcreteDgCat::new(names, lo, hi, None, true, basis, diff, mult, identity));
    let projections = d
        .cats
        .iter()
        .enumerate()
        .map(|(i, c)| BasisMap { source: cat.clone(), target: c.clone(), obj: tuples.iter().map(|t| t[i]).collect(), images: comps.iter().map(|v| v[i].clone()).collect() })
        .collect();
    Ok(Limit { cat, tuples, projections })
}

/// A presentation of the colimit: objects are classes of objects under the
/// arrows, every basis element becomes a generator, and relations impose
/// composition, identities and the identifications along the arrows.
pub struct ColimitPresentation<S> {
    pub presentation: Presentation<S>,
    /// Object class of each object of each category.
    pub object_of: Vec<Vec<usize>>,
    /// Generator of each basis element of each category.
    pub generator_of: Vec<Vec<usize>>,
}

fn find(parent: &mut Vec<usize>, x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

pub fn colimit_presentation<S: Scalar>(d: &Diagram<S>) -> ColimitPresentation<S> {
    let mut start = Vec::new();
    let mut total = 0;
    for c in &d.cats {
        start.push(total);
        total += c.num_objects();
    }
    let mut parent: Vec<usize> = (0..total).collect();
    for (i, j, f) in &d.arrows {
        for x in 0..d.cats[*i].num_objects() {
            let (a, b) = (find(&mut parent, start[*i] + x), find(&mut parent, start[*j] + f.obj[x]));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut class_index: HashMap<usize, usize> = HashMap::new();
    let mut objects = Vec::new();
    let mut object_of = Vec::new();
    for (i, c) in d.cats.iter().enumerate() {
        let mut row = Vec::new();
        for x in 0..c.num_objects() {
            let r = find(&mut parent, start[i] + x);
            let next = class_index.len();
            let k = *class_index.entry(r).or_insert_with(|| {
                objects.push(format!("{i}.{}", c.objects[x]));
                next
            });
            row.push(k);
        }
        object_of.push(row);
    }
    let mut gens = Vec::new();
    let mut generator_of = Vec::new();
    for (i, c) in d.cats.iter().enumerate() {
        let mut row = Vec::new();
        for b in &c.basis {
            row.push(gens.len());
            gens.push(generator(&format!("{i}.{}", b.label), object_of[i][b.src], object_of[i][b.tgt], b.degree));
        }
        generator_of.push(row);
    }
    let q = Quiver { objects, gens };
    let poly = |i: usize, e: &Elem<S>| -> NcPoly<S> {
        let mut p = NcPoly::zero();
        for (&k, c) in e {
            p.add_term(q.arrow(generator_of[i][k]), c.clone());
        }
        p
    };
    let diff = d.cats.iter().enumerate().flat_map(|(i, c)| c.diff.iter().map(move |e| (i, e))).map(|(i, e)| poly(i, e)).collect();
    let mut relations = Vec::new();
    for (i, c) in d.cats.iter().enumerate() {
        for a in 0..c.len() {
            for b in 0..c.len() {
                if c.basis[a].src != c.basis[b].tgt {
                    continue;
                }
                let Some(ab) = c.compose_basis(a, b) else { continue };
                let word = q.path(&[generator_of[i][a], generator_of[i][b]]).expect("composable");
                let mut r = NcPoly::path(word);
                r.add_scaled(&poly(i, &ab), &-S::one());
                relations.push(r);
            }
        }
        for x in 0..c.num_objects() {
            let mut r = poly(i, &c.identity[x]);
            r.add_term(q.id(object_of[i][x]), -S::one());
            relations.push(r);
        }
    }
    for (i, j, f) in &d.arrows {
        for k in 0..d.cats[*i].len() {
            let mut r = poly(*i, &crate::dg::concrete::unit(k));
            let mut img = Elem::new();
            elem_add(&mut img, &f.images[k], &S::one());
            r.add_scaled(&poly(*j, &img), &-S::one());
            relations.push(r);
        }
    }
    relations.retain(|r| !r.is_zero());
    let mut presentation = Presentation::free(q, diff);
    presentation.relations = relations;
    ColimitPresentation { presentation, object_of, generator_of }
}
