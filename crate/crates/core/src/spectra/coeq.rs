//! `F(K)` for a finite pointed set `K` as the coequalizer of
//! `⋁_θ K^{×m} ∧ F(n_+) ⇉ ⋁_k K^{×k} ∧ F(k_+)`.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::gamma::{gamma_morphisms, Gamma};
use crate::simplicial::{pointed_map_from_index, pointed_map_index, smash_spheres, PointedMap};

use super::tuple_digits;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoequalizerCase {
    /// Sphere dimension `i` and simplicial degree `q` of `Sⁱ_q`.
    pub sphere: usize,
    pub degree: usize,
    pub object: String,
    /// Simplicial degree of `F(−)` being compared.
    pub simplicial_degree: usize,
    pub classes: usize,
    pub target_size: usize,
    pub bijective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoequalizerReport {
    pub name: String,
    pub cases: Vec<CoequalizerCase>,
    pub passed: bool,
}

fn find(parent: &mut [usize], mut a: usize) -> usize {
    while parent[a] != a {
        parent[a] = parent[parent[a]];
        a = parent[a];
    }
    a
}

/// For every sphere `Sⁱ` with `i ≤ level_bound`, degree `q ≤ degree_bound`,
/// object and simplicial degree, computes the coequalizer over arities
/// `k ≤ |Sⁱ_q| - 1` with a union-find and checks that
/// `[a, x] ↦ F(a)(x)` is a bijection onto `F(Sⁱ_q)`.
pub fn sp_coequalizer_check(f: &Gamma, level_bound: usize, degree_bound: usize) -> Result<CoequalizerReport> {
    let site = f.site().clone();
    let mut cases = Vec::new();
    for i in 0..=level_bound {
        let sphere = smash_spheres(i, degree_bound.max(i))?;
        for q in 0..=degree_bound {
            let s = sphere.size(q) - 1;
            let target = f.eval(s)?;
            let values = (0..=s).map(|k| f.eval(k)).collect::<Result<Vec<_>>>()?;
            for (o, oname) in site.objects().iter().enumerate() {
                for r in 0..=f.dim() {
                    // element (k, a, x): a ∈ K^{×k} as a pointed map k_+ → K, x ∈ F(k)_r
                    let mut offsets = vec![0];
                    for k in 0..=s {
                        let count = (s + 1).pow(k as u32) * values[k].value(o).size(r);
                        offsets.push(offsets[k] + count);
                    }
                    let id = |k: usize, a: usize, x: usize| offsets[k] + a * values[k].value(o).size(r) + x;
                    let total = offsets[s + 1];
                    let mut parent: Vec<usize> = (0..total).collect();
                    for n in 0..=s {
                        for m in 0..=s {
                            for theta in gamma_morphisms(n, m) {
                                let ft = f.eval_map(&theta)?;
                                for ai in 0..(s + 1).pow(m as u32) {
                                    let a = pointed_map_from_index(m, s, ai);
                                    let at = pointed_map_index(&a.after(&theta)?);
                                    for x in 0..values[n].value(o).size(r) {
                                        let (u, v) = (id(n, at, x), id(m, ai, ft.component(o).apply(r, x)));
                                        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                                        if ru != rv {
                                            parent[ru.max(rv)] = ru.min(rv);
                                        }
                                    }
                                }
                            }
                        }
                    }
                    // [a, x] ↦ F(a)(x), checked to be well defined and bijective
                    let mut image = vec![usize::MAX; target.value(o).size(r)];
                    let mut class_image = vec![usize::MAX; total];
                    let mut well_defined = true;
                    for k in 0..=s {
                        for ai in 0..(s + 1).pow(k as u32) {
                            let digits = tuple_digits(ai, s + 1, k);
                            let a = PointedMap::new(k, s, std::iter::once(0).chain(digits).collect())?;
                            let fa = f.eval_map(&a)?;
                            for x in 0..values[k].value(o).size(r) {
                                let c = find(&mut parent, id(k, ai, x));
                                let y = fa.component(o).apply(r, x);
                                if class_image[c] == usize::MAX {
                                    class_image[c] = y;
                                } else if class_image[c] != y {
                                    well_defined = false;
                                }
                            }
                        }
                    }
                    let classes: Vec<usize> = (0..total).filter(|&u| find(&mut parent, u) == u).collect();
                    let mut injective = true;
                    for &c in &classes {
                        let y = class_image[c];
                        if image[y] != usize::MAX {
                            injective = false;
                        }
                        image[y] = c;
                    }
                    let surjective = image.iter().all(|&c| c != usize::MAX);
                    cases.push(CoequalizerCase {
                        sphere: i,
                        degree: q,
                        object: oname.clone(),
                        simplicial_degree: r,
                        classes: classes.len(),
                        target_size: target.value(o).size(r),
                        bijective: well_defined && injective && surjective,
                    });
                }
            }
        }
    }
    let passed = cases.iter().all(|c| c.bijective);
    Ok(CoequalizerReport { name: f.describe(), cases, passed })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::gamma::{corepresentable, eilenberg_mac_lane};
    use crate::homology::SimplicialAbGroup;
    use crate::site::{FinCategory, SimplicialAbPresheaf};

    fn one() -> Arc<FinCategory> {
        Arc::new(FinCategory::one_point())
    }

    #[test]
    fn corepresentable_and_point() {
        let r = sp_coequalizer_check(&corepresentable(one(), 1, 1), 1, 2).unwrap();
        assert!(r.passed);
        // S¹_1 has one non-basepoint simplex, so F(S¹_1) = Γ¹(1_+) has two points
        let c = r.cases.iter().find(|c| c.sphere == 1 && c.degree == 1 && c.simplicial_degree == 0).unwrap();
        assert_eq!((c.classes, c.target_size), (2, 2));
        let p = sp_coequalizer_check(&corepresentable(one(), 0, 1), 1, 2).unwrap();
        assert!(p.passed && p.cases.iter().all(|c| c.target_size == 1));
    }

    #[test]
    fn eilenberg_mac_lane_z2() {
        let a = SimplicialAbPresheaf::constant(one(), &SimplicialAbGroup::constant(&[2], 1));
        let r = sp_coequalizer_check(&eilenberg_mac_lane(a), 1, 2).unwrap();
        assert!(r.passed);
        let c = r.cases.iter().find(|c| c.sphere == 1 && c.degree == 2 && c.simplicial_degree == 1).unwrap();
        assert_eq!(c.target_size, 4);
    }
}
