//! The linearization `L`, left adjoint to the Eilenberg–Mac Lane functor.
//!
//! `L(F)` is the cokernel of `p₁* + p₂* − ∇* : Z̃F(2_+) → Z̃F(1_+)`,
//! computed per section and degree. Each cokernel is diagonalized by a
//! Smith normal form and presented on the coordinates whose invariant
//! factor is not a unit.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::homology::{pi0, smith_normal_form, IntMatrix, SimplicialAbGroup, SimplicialAbMap};
use crate::simplicial::{pointed_map_from_index, PointedMap, SimplicialMap, SimplicialSet};
use crate::site::{PresheafMap, PresheafSpace, SimplicialAbPresheaf};

use super::kinds::corepresentable;
use super::natural::{enumerate_gamma_maps, enumerate_presheaf_maps, AdjunctionReport, Family};
use super::{generating_morphisms, Gamma, GammaMap};

/// `L(F)` together with the quotient maps `Z̃F(1_+) → L(F)` and chosen
/// sections of them.
#[derive(Clone, Debug)]
pub struct Linearization {
    pub presheaf: SimplicialAbPresheaf,
    /// `projection[U][q]`
    pub projection: Vec<Vec<IntMatrix>>,
    /// `section[U][q]`, a right inverse of the projection on coordinates.
    pub section: Vec<Vec<IntMatrix>>,
}

fn free_map(table: &[usize], source: usize, target: usize) -> IntMatrix {
    let cols = (1..source)
        .map(|x| if table[x] == 0 { vec![] } else { vec![(table[x] - 1, BigInt::one())] })
        .collect();
    IntMatrix::from_sparse_columns(target - 1, cols)
}

fn projection(k: usize, j: usize) -> PointedMap {
    PointedMap::new(k, 1, (0..=k).map(|i| usize::from(i == j)).collect()).expect("projection")
}

/// The relation matrix `p₁* + p₂* − ∇*` in degree `q` over one section.
fn relations(f2: &SimplicialSet, f1: &SimplicialSet, maps: [&SimplicialMap; 3], q: usize) -> IntMatrix {
    let (n1, n2) = (f1.size(q), f2.size(q));
    let mut m = IntMatrix::zeros(n1 - 1, n2 - 1);
    for x in 1..n2 {
        for (sign, map) in [(1, maps[0]), (1, maps[1]), (-1, maps[2])] {
            let y = map.apply(q, x);
            if y != 0 {
                m.add_to(y - 1, x - 1, BigInt::from(sign));
            }
        }
    }
    m
}

/// Computes `L(F)` from `F(1_+)`, `F(2_+)` and the maps induced by the two
/// projections and the fold `2_+ → 1_+`.
pub fn linearization(f: &Gamma) -> Result<Linearization> {
    let (f1, f2) = (f.eval(1)?, f.eval(2)?);
    let p1 = f.eval_map(&projection(2, 1))?;
    let p2 = f.eval_map(&projection(2, 2))?;
    let fold = f.eval_map(&PointedMap::new(2, 1, vec![0, 1, 1])?)?;
    let dim = f.dim();
    let site = f.site().clone();
    let mut orders = Vec::new();
    let mut proj = Vec::new();
    let mut sect = Vec::new();
    for o in 0..site.num_objects() {
        let (mut ord_o, mut p_o, mut s_o) = (Vec::new(), Vec::new(), Vec::new());
        for q in 0..=dim {
            let m = relations(f2.value(o), f1.value(o), [p1.component(o), p2.component(o), fold.component(o)], q);
            let snf = smith_normal_form(&m);
            let n1 = m.nrows();
            let kept: Vec<usize> = (0..n1).filter(|&i| i >= snf.rank() || !snf.diagonal[i].is_one()).collect();
            ord_o.push(
                kept.iter()
                    .map(|&i| {
                        if i >= snf.rank() {
                            Ok(0)
                        } else {
                            snf.diagonal[i].to_u64().ok_or_else(|| Error::Infinite("invariant factor beyond u64".into()))
                        }
                    })
                    .collect::<Result<Vec<u64>>>()?,
            );
            p_o.push(snf.u.select_rows(&kept));
            s_o.push(snf.u_inv.select_columns(&kept));
        }
        orders.push(ord_o);
        proj.push(p_o);
        sect.push(s_o);
    }
    let conj = |p: &IntMatrix, a: &IntMatrix, s: &IntMatrix, target: &[u64]| p.mul(a).mul(s).reduce_rows(target);
    let values = (0..site.num_objects())
        .map(|o| {
            let x = f1.value(o);
            let faces = (0..=dim)
                .map(|q| {
                    if q == 0 {
                        return vec![];
                    }
                    (0..=q)
                        .map(|i| conj(&proj[o][q - 1], &free_map(x.face_table(q, i), x.size(q), x.size(q - 1)), &sect[o][q], &orders[o][q - 1]))
                        .collect()
                })
                .collect();
            let degeneracies = (0..=dim)
                .map(|q| {
                    if q == dim {
                        return vec![];
                    }
                    (0..=q)
                        .map(|j| {
                            conj(&proj[o][q + 1], &free_map(x.degeneracy_table(q, j), x.size(q), x.size(q + 1)), &sect[o][q], &orders[o][q + 1])
                        })
                        .collect()
                })
                .collect();
            SimplicialAbGroup::new(orders[o].clone(), faces, degeneracies)
        })
        .collect::<Result<Vec<_>>>()?;
    let restrictions = site
        .morphisms()
        .iter()
        .enumerate()
        .map(|(m, mor)| {
            let (big, small) = (mor.target, mor.source);
            let r = f1.restriction(m);
            SimplicialAbMap::from_matrices(
                (0..=dim)
                    .map(|q| {
                        let a = free_map(r.table(q), f1.value(big).size(q), f1.value(small).size(q));
                        conj(&proj[small][q], &a, &sect[big][q], &orders[small][q])
                    })
                    .collect(),
            )
        })
        .collect();
    let presheaf = SimplicialAbPresheaf::new(site, values, restrictions)?;
    Ok(Linearization { presheaf, projection: proj, section: sect })
}

impl Linearization {
    /// `L(φ) : L(F) → L(G)` from the component `φ₁ : F(1_+) → G(1_+)`.
    pub fn induced(&self, target: &Linearization, f1: &PresheafSpace, g1: &PresheafSpace, phi1: &PresheafMap) -> Vec<SimplicialAbMap> {
        (0..f1.site().num_objects())
            .map(|o| {
                SimplicialAbMap::from_matrices(
                    (0..=f1.dim())
                        .map(|q| {
                            let a = free_map(phi1.component(o).table(q), f1.value(o).size(q), g1.value(o).size(q));
                            target.projection[o][q]
                                .mul(&a)
                                .mul(&self.section[o][q])
                                .reduce_rows(target.presheaf.value(o).orders(q))
                        })
                        .collect(),
                )
            })
            .collect()
    }
}

/// Encodes a vector of `HA(1_+)` indices as an index of `HA(k_+)`.
fn product_index(digits: &[usize], s: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * s + d)
}

/// Checks `L ⊣ H` for a Γ-space `F` and a finite `A`: natural families
/// `F → HA` on `0_+, …, kmax_+` against additive maps `F(1_+) → HA(1_+)`,
/// i.e. homomorphisms `L(F) → A`. A map `g` goes to the family
/// `x ↦ (g(F(p_j) x))_j`; a family goes to its component at `1_+`.
pub fn lh_adjunction_check(f: &Gamma, a: &SimplicialAbPresheaf, kmax: usize, budget: u64) -> Result<AdjunctionReport> {
    let h = super::kinds::eilenberg_mac_lane(a.clone());
    let (f1, h1) = (f.eval(1)?, h.eval(1)?);
    let fold = h.eval_map(&PointedMap::new(2, 1, vec![0, 1, 1])?)?;
    let fp: Vec<_> = [projection(2, 1), projection(2, 2), PointedMap::new(2, 1, vec![0, 1, 1])?]
        .iter()
        .map(|m| f.eval_map(m))
        .collect::<Result<_>>()?;
    let f2 = f.eval(2)?;
    let additive = |g: &PresheafMap| {
        (0..f.site().num_objects()).all(|o| {
            (0..=f.dim()).all(|q| {
                let s = h1.value(o).size(q);
                (1..f2.value(o).size(q)).all(|x| {
                    let (u, v, w) = (
                        g.component(o).apply(q, fp[0].component(o).apply(q, x)),
                        g.component(o).apply(q, fp[1].component(o).apply(q, x)),
                        g.component(o).apply(q, fp[2].component(o).apply(q, x)),
                    );
                    fold.component(o).apply(q, u * s + v) == w
                })
            })
        })
    };
    let left: Vec<PresheafMap> = enumerate_presheaf_maps(&f1, &h1, budget)?.into_iter().filter(additive).collect();
    let right = enumerate_gamma_maps(f, &h, kmax, budget)?;
    let mut report = AdjunctionReport::new(format!("L ⊣ H for {}", f.describe()), left.len(), right.len());
    let projections: Vec<Vec<_>> = (0..=kmax)
        .map(|k| (1..=k).map(|j| f.eval_map(&projection(k, j))).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let extend = |g: &PresheafMap| -> Result<Family> {
        (0..=kmax)
            .map(|k| {
                let fk = f.eval(k)?;
                Ok(PresheafMap::from_components(
                    (0..f.site().num_objects())
                        .map(|o| {
                            let s_of = |q: usize| h1.value(o).size(q);
                            SimplicialMap::from_tables(
                                (0..=f.dim())
                                    .map(|q| {
                                        (0..fk.value(o).size(q))
                                            .map(|x| {
                                                let digits: Vec<usize> = projections[k]
                                                    .iter()
                                                    .map(|p| g.component(o).apply(q, p.component(o).apply(q, x)))
                                                    .collect();
                                                product_index(&digits, s_of(q))
                                            })
                                            .collect()
                                    })
                                    .collect(),
                            )
                        })
                        .collect(),
                ))
            })
            .collect()
    };
    for g in &left {
        let fam = extend(g)?;
        if fam[1] != *g {
            report.fail("extension does not restrict to the map at 1_+");
        }
        if let Err(e) = GammaMap::from_components(f.clone(), h.clone(), fam).check_naturality(kmax) {
            report.fail(format!("extension of an additive map is not natural: {e}"));
        }
    }
    for fam in &right {
        if !additive(&fam[1]) {
            report.fail("component at 1_+ of a natural family is not additive");
        }
        if extend(&fam[1])? != *fam {
            report.fail("natural family is not determined by its component at 1_+");
        }
    }
    // additive maps are exactly the homomorphisms out of the cokernel
    for g in &left {
        for o in 0..f.site().num_objects() {
            for q in 0..=f.dim().min(a.dim()) {
                let m = relations(f2.value(o), f1.value(o), [fp[0].component(o), fp[1].component(o), fp[2].component(o)], q);
                let gm = element_matrix(a, o, q, g.component(o).table(q));
                if !gm.mul(&m).reduce_rows(a.value(o).orders(q)).is_zero() {
                    report.fail(format!("additive map does not kill the relations at object {o}, degree {q}"));
                }
            }
        }
    }
    Ok(report)
}

/// The matrix `Z̃X_q → A_q` of a pointed map into the elements of `A_q`.
fn element_matrix(a: &SimplicialAbPresheaf, o: usize, q: usize, table: &[usize]) -> IntMatrix {
    let orders = a.value(o).orders(q);
    let cols = table[1..]
        .iter()
        .map(|&e| {
            let mut idx = e;
            let mut v = vec![0u64; orders.len()];
            for i in (0..orders.len()).rev() {
                v[i] = (idx % orders[i] as usize) as u64;
                idx /= orders[i] as usize;
            }
            v.into_iter().enumerate().filter(|(_, c)| *c != 0).map(|(i, c)| (i, BigInt::from(c))).collect()
        })
        .collect();
    IntMatrix::from_sparse_columns(orders.len(), cols)
}

/// `L ⊣ H` for `F = Γⁿ` and `A = Z`, where both sides are `Zⁿ`. The
/// correspondence is checked on the vectors with entries in
/// `[-window, window]`: `v` gives the family `φ ↦ (Σ_{φ(i)=j} v_i)_j`, whose
/// component at `1_+` is additive, kills the linearization relations, and
/// recovers `v`.
pub fn lh_adjunction_check_integers(n: usize, window: i64, kmax: usize) -> Result<AdjunctionReport> {
    let site = std::sync::Arc::new(crate::site::FinCategory::one_point());
    let gn = corepresentable(site, n, 0);
    let lin = linearization(&gn)?;
    let group = lin.presheaf.value(0).group(0);
    let mut report = AdjunctionReport::new(format!("L ⊣ H for Γ^{n} and Z"), n, group.free_rank);
    if !group.torsion.is_empty() {
        report.fail("L(Γⁿ) has torsion");
    }
    let family = |v: &[i64], k: usize| -> BTreeMap<usize, Vec<i64>> {
        (0..(k + 1).pow(n as u32))
            .map(|idx| {
                let phi = pointed_map_from_index(n, k, idx);
                let mut out = vec![0; k];
                for i in 1..=n {
                    if phi.apply(i) != 0 {
                        out[phi.apply(i) - 1] += v[i - 1];
                    }
                }
                (idx, out)
            })
            .collect()
    };
    let span = (2 * window + 1) as usize;
    let f1 = gn.eval(1)?;
    let rel = {
        let f2 = gn.eval(2)?;
        let maps: Vec<_> = [projection(2, 1), projection(2, 2), PointedMap::new(2, 1, vec![0, 1, 1])?]
            .iter()
            .map(|m| gn.eval_map(m))
            .collect::<Result<_>>()?;
        relations(f2.value(0), f1.value(0), [maps[0].component(0), maps[1].component(0), maps[2].component(0)], 0)
    };
    for code in 0..span.pow(n as u32) {
        let v: Vec<i64> = (0..n).map(|i| (code / span.pow(i as u32) % span) as i64 - window).collect();
        for alpha in generating_morphisms(kmax) {
            let (src, tgt) = (family(&v, alpha.source()), family(&v, alpha.target()));
            let post = super::postcompose(n, &alpha);
            for (idx, vec) in &src {
                let mut pushed = vec![0; alpha.target()];
                for (j, c) in vec.iter().enumerate() {
                    if alpha.apply(j + 1) != 0 {
                        pushed[alpha.apply(j + 1) - 1] += c;
                    }
                }
                if tgt[&post.apply(*idx)] != pushed {
                    report.fail(format!("family of {v:?} is not natural"));
                }
            }
        }
        // the component at 1_+ as a functional on Z̃Γⁿ(1_+)
        let g: Vec<BigInt> = family(&v, 1).into_iter().skip(1).map(|(_, x)| BigInt::from(x[0])).collect();
        let row = IntMatrix::from_rows(std::slice::from_ref(&g));
        if !row.mul(&rel).is_zero() {
            report.fail(format!("functional of {v:?} does not vanish on the relations"));
        }
        let singletons: Vec<i64> = (1..=n)
            .map(|i| {
                let phi = PointedMap::new(n, 1, (0..=n).map(|a| usize::from(a == i)).collect()).expect("indicator");
                let idx = crate::simplicial::pointed_map_index(&phi);
                g[idx - 1].to_i64().expect("small")
            })
            .collect();
        if singletons != v {
            report.fail(format!("round trip of {v:?} gives {singletons:?}"));
        }
    }
    Ok(report)
}

/// Checks that the unit `F → H L(F)` induces a bijection
/// `π₀(F(1_+)) → π₀(L(F))` over every section. Needs finite `π₀(L(F))`.
pub fn unit_pi0_check(f: &Gamma) -> Result<AdjunctionReport> {
    let lin = linearization(f)?;
    let f1 = f.eval(1)?;
    let mut report = AdjunctionReport::new(format!("π₀ of the unit of {}", f.describe()), 0, 0);
    for o in 0..f.site().num_objects() {
        let x = f1.value(o);
        let comps = pi0(x);
        let classes = lin.presheaf.value(o).homotopy_classes(0)?;
        let size = classes
            .orders()
            .iter()
            .try_fold(1usize, |acc, ord| if ord.is_zero() { None } else { ord.to_usize().map(|v| acc * v) })
            .ok_or_else(|| Error::Infinite("π₀ of the linearization is infinite".into()))?;
        let mut image: Vec<Option<Vec<BigInt>>> = vec![None; comps.count];
        for v in 0..x.size(0) {
            let mut e = vec![BigInt::zero(); x.size(0) - 1];
            if v > 0 {
                e[v - 1] = BigInt::one();
            }
            let cls = classes.classify(&lin.projection[o][0].mul_vec(&e))?;
            match &image[comps.of_vertex[v]] {
                None => image[comps.of_vertex[v]] = Some(cls),
                Some(c) if *c != cls => report.fail(format!("object {o}: a component has two images")),
                _ => {}
            }
        }
        let mut distinct: Vec<_> = image.into_iter().flatten().collect();
        distinct.sort();
        distinct.dedup();
        report.left += comps.count;
        report.right += size;
        if distinct.len() != comps.count || comps.count != size {
            report.fail(format!("object {o}: {} components, {} classes hit, π₀(L) has {size} elements", comps.count, distinct.len()));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::gamma::kinds::{eilenberg_mac_lane, level};
    use crate::homology::AbGroup;
    use crate::simplicial::{boundary_quotient_sphere, s0};
    use crate::site::FinCategory;

    fn one() -> Arc<FinCategory> {
        Arc::new(FinCategory::one_point())
    }

    #[test]
    fn linearization_of_small_spaces() {
        let g1 = corepresentable(one(), 1, 1);
        let l = linearization(&g1).unwrap();
        assert_eq!(l.presheaf.value(0).homotopy(0).unwrap(), AbGroup::free(1));
        let g0 = corepresentable(one(), 0, 1);
        assert!(linearization(&g0).unwrap().presheaf.value(0).orders(0).is_empty());
        let g2 = corepresentable(one(), 2, 1);
        assert_eq!(linearization(&g2).unwrap().presheaf.value(0).homotopy(0).unwrap(), AbGroup::free(2));
        let h = eilenberg_mac_lane(SimplicialAbPresheaf::constant(one(), &SimplicialAbGroup::constant(&[3], 1)));
        assert_eq!(linearization(&h).unwrap().presheaf.value(0).homotopy(0).unwrap(), AbGroup::cyclic(3));
        // L(L₁ S¹) is the reduced free simplicial group on S¹
        let c = boundary_quotient_sphere(1, 2).unwrap();
        let l1 = level(1, PresheafSpace::constant(one(), &c));
        let lin = linearization(&l1).unwrap();
        assert_eq!(lin.presheaf.value(0).homotopy(1).unwrap(), AbGroup::free(1));
    }

    #[test]
    fn adjunction_and_unit() {
        let z2 = SimplicialAbPresheaf::constant(one(), &SimplicialAbGroup::constant(&[2], 1));
        let g1 = corepresentable(one(), 1, 1);
        let r = lh_adjunction_check(&g1, &z2, 3, 1_000_000).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.left, 2);
        let arrow = Arc::new(FinCategory::arrow());
        let x = PresheafSpace::constant(arrow.clone(), &s0(1));
        let a = SimplicialAbPresheaf::constant(arrow, &SimplicialAbGroup::constant(&[3], 1));
        let r = lh_adjunction_check(&level(1, x), &a, 2, 1_000_000).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.left, 3);
        let r = lh_adjunction_check_integers(1, 3, 3).unwrap();
        assert!(r.passed, "{r:?}");
        let r = lh_adjunction_check_integers(2, 2, 3).unwrap();
        assert!(r.passed, "{r:?}");
        let r = unit_pi0_check(&eilenberg_mac_lane(z2)).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.left, 2);
    }
}
