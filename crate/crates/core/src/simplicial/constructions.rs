use std::collections::HashMap;

use crate::error::{structural, Error, Result};

use super::{SimplicialMap, SimplicialSet};

/// The one-point simplicial set.
pub fn point(dim: usize) -> SimplicialSet {
    let levels = vec![vec![()]; dim + 1];
    SimplicialSet::from_keys(dim, &levels, |_, _, _| (), |_, _, _| ()).expect("point is valid")
}

/// The constant simplicial set on a pointed set with `size` elements
/// (basepoint included).
pub fn discrete(size: usize, dim: usize) -> SimplicialSet {
    let ident: Vec<usize> = (0..size).collect();
    let faces = (0..=dim).map(|k| vec![ident.clone(); if k == 0 { 0 } else { k + 1 }]).collect();
    let degeneracies = (0..=dim).map(|k| vec![ident.clone(); if k < dim { k + 1 } else { 0 }]).collect();
    SimplicialSet::from_tables(dim, vec![size; dim + 1], faces, degeneracies).expect("discrete set is valid")
}

/// The 0-sphere: a basepoint and one further vertex.
pub fn s0(dim: usize) -> SimplicialSet {
    let levels = vec![vec![false, true]; dim + 1];
    SimplicialSet::from_keys(dim, &levels, |_, _, &k| k, |_, _, &k| k).expect("S^0 is valid")
}

/// Non-decreasing sequences of length `len` with entries in `0..=max`,
/// in lexicographic order.
pub(crate) fn nondecreasing_sequences(len: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(len: usize, max: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in lo..=max {
            cur.push(v);
            rec(len, max, v, cur, out);
            cur.pop();
        }
    }
    rec(len, max, 0, &mut cur, &mut out);
    out
}

fn delete_at(seq: &[usize], i: usize) -> Vec<usize> {
    let mut v = seq.to_vec();
    v.remove(i);
    v
}

fn repeat_at(seq: &[usize], j: usize) -> Vec<usize> {
    let mut v = seq.to_vec();
    v.insert(j, seq[j]);
    v
}

/// `Δⁿ/∂Δⁿ`, truncated at `dim`.
pub fn boundary_quotient_sphere(n: usize, dim: usize) -> Result<SimplicialSet> {
    if n > dim {
        return Err(Error::DimensionBound(format!("Δ^{n}/∂Δ^{n} needs dimension bound at least {n}")));
    }
    let surjective = |s: &[usize]| (0..=n).all(|v| s.contains(&v));
    let levels: Vec<Vec<Option<Vec<usize>>>> = (0..=dim)
        .map(|k| {
            std::iter::once(None)
                .chain(nondecreasing_sequences(k + 1, n).into_iter().filter(|s| surjective(s)).map(Some))
                .collect()
        })
        .collect();
    let keep = |s: Vec<usize>| if surjective(&s) { Some(s) } else { None };
    SimplicialSet::from_keys(
        dim,
        &levels,
        |_, i, key| key.as_ref().and_then(|s| keep(delete_at(s, i))),
        |_, j, key| key.as_ref().map(|s| repeat_at(s, j)),
    )
}

/// `Δⁿ` with a disjoint basepoint adjoined.
pub fn delta_plus(n: usize, dim: usize) -> Result<SimplicialSet> {
    let levels: Vec<Vec<Option<Vec<usize>>>> = (0..=dim)
        .map(|k| std::iter::once(None).chain(nondecreasing_sequences(k + 1, n).into_iter().map(Some)).collect())
        .collect();
    SimplicialSet::from_keys(
        dim,
        &levels,
        |_, i, key| key.as_ref().map(|s| delete_at(s, i)),
        |_, j, key| key.as_ref().map(|s| repeat_at(s, j)),
    )
}

/// The map `Δ^m_+ → Δ^n_+` induced by a monotone `θ : [m] → [n]`, given
/// as its list of values.
pub fn delta_map(theta: &[usize], n: usize, dim: usize) -> SimplicialMap {
    let m = theta.len() - 1;
    let tables = (0..=dim)
        .map(|k| {
            let index: HashMap<Vec<usize>, usize> =
                nondecreasing_sequences(k + 1, n).into_iter().enumerate().map(|(i, s)| (s, i + 1)).collect();
            std::iter::once(0)
                .chain(nondecreasing_sequences(k + 1, m).iter().map(|s| index[&s.iter().map(|&v| theta[v]).collect::<Vec<_>>()]))
                .collect()
        })
        .collect();
    SimplicialMap::from_tables(tables)
}

/// Index of the identity simplex `ι_n` among the `n`-simplices of `Δ^n_+`.
pub fn delta_top(n: usize) -> usize {
    1 + nondecreasing_sequences(n + 1, n).iter().position(|s| s.iter().enumerate().all(|(i, &v)| i == v)).expect("identity")
}

/// The simplicial set of an ordered simplicial complex given by its facets.
///
/// With `base = Some(v)` the basepoint is the vertex `v`; with `None` a
/// disjoint basepoint is adjoined.
pub fn from_simplicial_complex(
    vertices: usize,
    facets: &[Vec<usize>],
    base: Option<usize>,
    dim: usize,
) -> Result<SimplicialSet> {
    if vertices == 0 {
        return Err(structural("a simplicial complex needs at least one vertex"));
    }
    let in_facet = |s: &[usize]| facets.iter().any(|f| s.iter().all(|v| f.contains(v)));
    let levels: Vec<Vec<Option<Vec<usize>>>> = (0..=dim)
        .map(|k| {
            let base_key = base.map(|b| vec![b; k + 1]);
            let mut lvl = vec![None];
            for s in nondecreasing_sequences(k + 1, vertices - 1) {
                if Some(&s) != base_key.as_ref() && in_facet(&s) {
                    lvl.push(Some(s));
                }
            }
            lvl
        })
        .collect();
    let normalize = |s: Vec<usize>| {
        if base.is_some_and(|b| s.iter().all(|&v| v == b)) {
            None
        } else {
            Some(s)
        }
    };
    SimplicialSet::from_keys(
        dim,
        &levels,
        |_, i, key| key.as_ref().and_then(|s| normalize(delete_at(s, i))),
        |_, j, key| key.as_ref().map(|s| repeat_at(s, j)),
    )
}

/// Facets of the six-vertex triangulation of the real projective plane.
pub const RP2_FACETS: [[usize; 3]; 10] = [
    [0, 1, 2],
    [0, 2, 3],
    [0, 3, 4],
    [0, 4, 5],
    [0, 1, 5],
    [1, 2, 4],
    [2, 3, 5],
    [1, 3, 4],
    [1, 3, 5],
    [2, 4, 5],
];

/// The six-vertex real projective plane, pointed at vertex 0 (`adjoin_base =
/// false`) or with a disjoint basepoint adjoined (`adjoin_base = true`).
pub fn rp2(dim: usize, adjoin_base: bool) -> Result<SimplicialSet> {
    let facets: Vec<Vec<usize>> = RP2_FACETS.iter().map(|f| f.to_vec()).collect();
    from_simplicial_complex(6, &facets, if adjoin_base { None } else { Some(0) }, dim)
}

/// `Sⁿ = S¹ ∧ ⋯ ∧ S¹` built from the `Δ¹/∂Δ¹` model; `S⁰` for `n = 0`.
pub fn smash_spheres(n: usize, dim: usize) -> Result<SimplicialSet> {
    if n > dim {
        return Err(Error::DimensionBound(format!("S^{n} needs dimension bound at least {n}")));
    }
    let circle = boundary_quotient_sphere(1, dim)?;
    let mut acc = s0(dim);
    for _ in 0..n {
        acc = smash(&circle, &acc);
    }
    Ok(acc)
}

fn common_dim(xs: &[&SimplicialSet]) -> (usize, bool) {
    let d = xs.iter().map(|x| x.dim()).min().unwrap_or(0);
    let truncated = xs.iter().any(|x| x.dim() != d || x.is_truncated());
    (d, truncated)
}

/// Degreewise smash product with diagonal faces and degeneracies. The
/// result is bounded by the smaller of the two dimension bounds.
pub fn smash(x: &SimplicialSet, y: &SimplicialSet) -> SimplicialSet {
    let (dim, truncated) = common_dim(&[x, y]);
    let levels: Vec<Vec<Option<(usize, usize)>>> = (0..=dim)
        .map(|k| {
            let mut lvl = vec![None];
            for a in 1..x.size(k) {
                for b in 1..y.size(k) {
                    lvl.push(Some((a, b)));
                }
            }
            lvl
        })
        .collect();
    let pair = |a: usize, b: usize| if a == 0 || b == 0 { None } else { Some((a, b)) };
    SimplicialSet::from_keys(
        dim,
        &levels,
        |k, i, key| key.and_then(|(a, b)| pair(x.face(k, i, a), y.face(k, i, b))),
        |k, j, key| key.and_then(|(a, b)| pair(x.degeneracy(k, j, a), y.degeneracy(k, j, b))),
    )
    .expect("smash of valid simplicial sets is valid")
    .mark_truncated(truncated)
}

/// Degreewise cartesian product, pointed at `(base, base)`.
pub fn product(x: &SimplicialSet, y: &SimplicialSet) -> SimplicialSet {
    let (dim, truncated) = common_dim(&[x, y]);
    let levels: Vec<Vec<(usize, usize)>> = (0..=dim)
        .map(|k| (0..x.size(k)).flat_map(|a| (0..y.size(k)).map(move |b| (a, b))).collect())
        .collect();
    SimplicialSet::from_keys(
        dim,
        &levels,
        |k, i, &(a, b)| (x.face(k, i, a), y.face(k, i, b)),
        |k, j, &(a, b)| (x.degeneracy(k, j, a), y.degeneracy(k, j, b)),
    )
    .expect("product of valid simplicial sets is valid")
    .mark_truncated(truncated)
}

/// A wedge together with its summand injections.
#[derive(Clone, Debug)]
pub struct Wedge {
    pub space: SimplicialSet,
    pub injections: Vec<SimplicialMap>,
}

/// The coproduct of pointed simplicial sets. The empty wedge is a point
/// of dimension `empty_dim`.
pub fn wedge(xs: &[&SimplicialSet], empty_dim: usize) -> Wedge {
    if xs.is_empty() {
        return Wedge { space: point(empty_dim), injections: Vec::new() };
    }
    let (dim, truncated) = common_dim(xs);
    let levels: Vec<Vec<Option<(usize, usize)>>> = (0..=dim)
        .map(|k| {
            std::iter::once(None)
                .chain(xs.iter().enumerate().flat_map(|(s, x)| (1..x.size(k)).map(move |a| Some((s, a)))))
                .collect()
        })
        .collect();
    let tag = |s: usize, a: usize| if a == 0 { None } else { Some((s, a)) };
    let space = SimplicialSet::from_keys(
        dim,
        &levels,
        |k, i, key| key.and_then(|(s, a)| tag(s, xs[s].face(k, i, a))),
        |k, j, key| key.and_then(|(s, a)| tag(s, xs[s].degeneracy(k, j, a))),
    )
    .expect("wedge of valid simplicial sets is valid")
    .mark_truncated(truncated);
    let mut offsets = vec![vec![0usize; dim + 1]; xs.len()];
    for k in 0..=dim {
        let mut off = 0;
        for (s, x) in xs.iter().enumerate() {
            offsets[s][k] = off;
            off += x.size(k) - 1;
        }
    }
    let injections = xs
        .iter()
        .enumerate()
        .map(|(s, x)| {
            let tables = (0..=dim)
                .map(|k| (0..x.size(k)).map(|a| if a == 0 { 0 } else { offsets[s][k] + a }).collect())
                .collect();
            SimplicialMap::from_tables(tables)
        })
        .collect();
    Wedge { space, injections }
}

/// Collapses a simplicial subset to the basepoint. `subset[k][x]` marks
/// membership; the subset must contain the basepoint simplices and be closed
/// under faces and degeneracies.
pub fn quotient(x: &SimplicialSet, subset: &[Vec<bool>]) -> Result<SimplicialSet> {
    let dim = x.dim();
    if subset.len() != dim + 1 || (0..=dim).any(|k| subset[k].len() != x.size(k)) {
        return Err(structural("subset shape does not match the simplicial set"));
    }
    for k in 0..=dim {
        if !subset[k][0] {
            return Err(structural("subset must contain the basepoint simplices"));
        }
        for a in 0..x.size(k) {
            if !subset[k][a] {
                continue;
            }
            if k > 0 {
                for i in 0..=k {
                    if !subset[k - 1][x.face(k, i, a)] {
                        return Err(structural(format!("subset not closed under d_{i} at simplex {a} of degree {k}")));
                    }
                }
            }
            if k < dim {
                for j in 0..=k {
                    if !subset[k + 1][x.degeneracy(k, j, a)] {
                        return Err(structural(format!(
                            "subset not closed under s_{j} at simplex {a} of degree {k}"
                        )));
                    }
                }
            }
        }
    }
    let levels: Vec<Vec<Option<usize>>> = (0..=dim)
        .map(|k| std::iter::once(None).chain((1..x.size(k)).filter(|&a| !subset[k][a]).map(Some)).collect())
        .collect();
    let keep = |k: usize, a: usize| if subset[k][a] { None } else { Some(a) };
    SimplicialSet::from_keys(
        dim,
        &levels,
        |k, i, key| key.and_then(|a| keep(k - 1, x.face(k, i, a))),
        |k, j, key| key.and_then(|a| keep(k + 1, x.degeneracy(k, j, a))),
    )
    .map(|q| q.mark_truncated(x.is_truncated()))
}

/// The projection `X → X/A` for a subset accepted by [`quotient`].
pub fn quotient_projection(x: &SimplicialSet, subset: &[Vec<bool>]) -> SimplicialMap {
    let tables = (0..=x.dim())
        .map(|k| {
            let mut next = 0;
            (0..x.size(k))
                .map(|a| {
                    if subset[k][a] {
                        0
                    } else {
                        next += 1;
                        next
                    }
                })
                .collect()
        })
        .collect();
    SimplicialMap::from_tables(tables)
}

/// `f ∧ g : X ∧ Y → X' ∧ Y'`, indexed as in [`smash`].
pub fn smash_maps(f: &SimplicialMap, g: &SimplicialMap, x: &SimplicialSet, y: &SimplicialSet, y2: &SimplicialSet) -> SimplicialMap {
    let dim = x.dim().min(y.dim());
    let tables = (0..=dim)
        .map(|k| {
            let (ny, ny2) = (y.size(k) - 1, y2.size(k) - 1);
            let mut t = vec![0; 1 + (x.size(k) - 1) * ny];
            for a in 1..x.size(k) {
                for b in 1..y.size(k) {
                    let (fa, gb) = (f.apply(k, a), g.apply(k, b));
                    t[(a - 1) * ny + b] = if fa == 0 || gb == 0 { 0 } else { (fa - 1) * ny2 + gb };
                }
            }
            t
        })
        .collect();
    SimplicialMap::from_tables(tables)
}

/// `f × g`, indexed as in [`product`].
pub fn product_maps(f: &SimplicialMap, g: &SimplicialMap, x: &SimplicialSet, y: &SimplicialSet, y2: &SimplicialSet) -> SimplicialMap {
    let dim = x.dim().min(y.dim());
    let tables = (0..=dim)
        .map(|k| {
            (0..x.size(k))
                .flat_map(|a| (0..y.size(k)).map(move |b| (a, b)))
                .map(|(a, b)| f.apply(k, a) * y2.size(k) + g.apply(k, b))
                .collect()
        })
        .collect();
    SimplicialMap::from_tables(tables)
}

/// `∨ fᵢ` between two wedges with matching summand counts.
pub fn wedge_maps(fs: &[&SimplicialMap], source: &Wedge, target: &Wedge) -> SimplicialMap {
    let dim = source.space.dim();
    let mut tables: Vec<Vec<usize>> = (0..=dim).map(|k| vec![0; source.space.size(k)]).collect();
    for ((f, inj), out) in fs.iter().zip(&source.injections).zip(&target.injections) {
        for k in 0..=dim {
            for (a, &w) in inj.table(k).iter().enumerate() {
                tables[k][w] = out.apply(k, f.apply(k, a));
            }
        }
    }
    SimplicialMap::from_tables(tables)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nondeg_counts(x: &SimplicialSet) -> Vec<usize> {
        (0..=x.dim()).map(|k| x.nondegenerate(k).len()).collect()
    }

    #[test]
    fn sphere_zero_is_two_vertices() {
        let s = boundary_quotient_sphere(0, 2).unwrap();
        assert_eq!(s.sizes(), &[2, 2, 2]);
        assert_eq!(nondeg_counts(&s), vec![1, 0, 0]);
    }

    #[test]
    fn circle_model() {
        let s = boundary_quotient_sphere(1, 2).unwrap();
        assert_eq!(s.size(0), 1);
        assert_eq!(nondeg_counts(&s), vec![0, 1, 0]);
    }

    #[test]
    fn two_sphere_model_counts() {
        // Hand enumeration: surjective non-decreasing sequences onto [2] of
        // length k+1 number C(k, 2); only (0,1,2) is non-degenerate.
        let s = boundary_quotient_sphere(2, 3).unwrap();
        assert_eq!(s.sizes(), &[1, 1, 2, 4]);
        assert_eq!(nondeg_counts(&s), vec![0, 0, 1, 0]);
    }

    #[test]
    fn dimension_bound_errors() {
        assert!(matches!(boundary_quotient_sphere(3, 2), Err(Error::DimensionBound(_))));
        assert!(matches!(smash_spheres(3, 2), Err(Error::DimensionBound(_))));
    }

    #[test]
    fn smash_of_circles() {
        let c = boundary_quotient_sphere(1, 3).unwrap();
        let t = smash(&c, &c);
        // Direct enumeration: (σ, σ) survives as a non-degenerate 1-simplex,
        // and (s0σ, s1σ), (s1σ, s0σ) are the non-degenerate 2-simplices.
        assert_eq!(t.size(1), 2);
        assert_eq!(nondeg_counts(&t), vec![0, 1, 2, 0]);
    }

    #[test]
    fn smash_with_s0_and_point() {
        let x = rp2(3, true).unwrap();
        let left = smash(&s0(3), &x);
        assert_eq!(left.sizes(), x.sizes());
        let p = smash(&x, &point(3));
        assert!(p.is_point());
    }

    #[test]
    fn sphere_one_matches_quotient_model() {
        assert_eq!(smash_spheres(1, 3).unwrap().sizes(), boundary_quotient_sphere(1, 3).unwrap().sizes());
    }

    #[test]
    fn wedge_edge_cases() {
        let w = wedge(&[], 2);
        assert!(w.space.is_point());
        let c = boundary_quotient_sphere(1, 2).unwrap();
        let w1 = wedge(&[&c], 2);
        assert_eq!(w1.space, c);
        let w2 = wedge(&[&c, &c], 2);
        assert_eq!(nondeg_counts(&w2.space), vec![0, 2, 0]);
        for inj in &w2.injections {
            inj.validate(&c, &w2.space).unwrap();
        }
    }

    #[test]
    fn quotient_of_delta_by_boundary_is_sphere() {
        let d = delta_plus(2, 3).unwrap();
        let boundary: Vec<Vec<bool>> = (0..=3)
            .map(|k| {
                let seqs = nondecreasing_sequences(k + 1, 2);
                std::iter::once(true).chain(seqs.iter().map(|s| !(0..=2).all(|v| s.contains(&v)))).collect()
            })
            .collect();
        let q = quotient(&d, &boundary).unwrap();
        assert_eq!(q, boundary_quotient_sphere(2, 3).unwrap());
    }

    #[test]
    fn quotient_by_basepoint_is_identity() {
        let x = rp2(2, false).unwrap();
        let base: Vec<Vec<bool>> = (0..=2).map(|k| (0..x.size(k)).map(|a| a == 0).collect()).collect();
        assert_eq!(quotient(&x, &base).unwrap(), x);
    }

    #[test]
    fn quotient_rejects_unclosed_subset() {
        let d = delta_plus(1, 2).unwrap();
        // the 1-simplex (0,1) without its vertices
        let mut sub: Vec<Vec<bool>> = (0..=2).map(|k| (0..d.size(k)).map(|a| a == 0).collect()).collect();
        sub[1][2] = true;
        assert!(matches!(quotient(&d, &sub), Err(Error::Structural(_))));
    }

    #[test]
    fn rp2_euler_characteristic() {
        let x = rp2(3, true).unwrap();
        let c = nondeg_counts(&x);
        assert_eq!(c, vec![6, 15, 10, 0]);
    }

    #[test]
    fn functorial_smash_and_product() {
        let c = boundary_quotient_sphere(1, 3).unwrap();
        let x = rp2(3, false).unwrap();
        let maps = crate::simplicial::enumerate_simplicial_maps(&c, &c, 1000).unwrap();
        for f in &maps {
            let id = SimplicialMap::identity(&x);
            let cx = smash(&c, &x);
            smash_maps(f, &id, &c, &x, &x).validate(&cx, &cx).unwrap();
            let px = product(&c, &x);
            product_maps(f, &id, &c, &x, &x).validate(&px, &px).unwrap();
        }
        let cx = smash(&c, &x);
        let ident = smash_maps(&SimplicialMap::identity(&c), &SimplicialMap::identity(&x), &c, &x, &x);
        assert_eq!(ident, SimplicialMap::identity(&cx));
    }

    #[test]
    fn wedge_and_quotient_maps() {
        let c = boundary_quotient_sphere(1, 2).unwrap();
        let x = rp2(2, false).unwrap();
        let w = wedge(&[&c, &x], 2);
        let w2 = wedge(&[&c, &x], 2);
        let id = wedge_maps(&[&SimplicialMap::identity(&c), &SimplicialMap::identity(&x)], &w, &w2);
        assert_eq!(id, SimplicialMap::identity(&w.space));
        let mut sub: Vec<Vec<bool>> = (0..=2).map(|k| vec![false; w.space.size(k)]).collect();
        for k in 0..=2 {
            for a in 0..c.size(k) {
                sub[k][w.injections[0].apply(k, a)] = true;
            }
        }
        let q = quotient(&w.space, &sub).unwrap();
        quotient_projection(&w.space, &sub).validate(&w.space, &q).unwrap();
        assert_eq!(q.sizes(), x.sizes());
    }
}
