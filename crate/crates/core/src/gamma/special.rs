//! Special and very special Γ-spaces.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{structural, Result};
use crate::homology::{pi0, IntMatrix, SimplicialAbMap};
use crate::simplicial::{PointedMap, SimplicialMap};
use crate::site::{abelian_equivalence, sectionwise_equivalence_proxy, EquivalenceReport, PresheafMap, PresheafSpace, SimplicialAbPresheaf};

use super::Gamma;

/// One comparison map and its verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub label: String,
    pub report: EquivalenceReport,
    /// Whether the map is an isomorphism on the nose.
    pub isomorphism: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialReport {
    pub name: String,
    pub comparisons: Vec<Comparison>,
    pub special: bool,
    /// Present for the very-special check: the shear comparison holds and
    /// `π₀(F(1_+))` is a group over every object.
    pub very_special: Option<bool>,
    /// Addition table of `π₀(F(1_+)(U))` per object, component `0` being
    /// the basepoint's.
    pub pi0_tables: Vec<Vec<Vec<usize>>>,
    pub pi0_is_group: Option<bool>,
    pub pi0_is_commutative: Option<bool>,
}

fn project(k: usize, j: usize) -> PointedMap {
    PointedMap::new(k, 1, (0..=k).map(|i| usize::from(i == j)).collect()).expect("projection")
}

fn fold() -> PointedMap {
    PointedMap::new(2, 1, vec![0, 1, 1]).expect("fold")
}

/// `F(1_+)^{×n}` and the map `x ↦ (F(m_1)x, …, F(m_n)x)` into it.
fn comparison(f: &Gamma, source: usize, maps: &[PointedMap]) -> Result<(PresheafSpace, PresheafSpace, PresheafMap)> {
    let (fs, f1) = (f.eval(source)?, f.eval(1)?);
    let target = (1..maps.len()).fold((*f1).clone(), |acc, _| acc.product(&f1));
    let induced = maps.iter().map(|m| f.eval_map(m)).collect::<Result<Vec<_>>>()?;
    let components = (0..f.site().num_objects())
        .map(|o| {
            let tables = (0..=f.dim())
                .map(|q| {
                    let s = f1.value(o).size(q);
                    (0..fs.value(o).size(q))
                        .map(|x| induced.iter().fold(0, |acc, m| acc * s + m.component(o).apply(q, x)))
                        .collect()
                })
                .collect();
            SimplicialMap::from_tables(tables)
        })
        .collect();
    Ok(((*fs).clone(), target, PresheafMap::from_components(components)))
}

fn compare(label: String, source: &PresheafSpace, target: &PresheafSpace, map: &PresheafMap) -> Result<Comparison> {
    let max_degree = source.dim().saturating_sub(1);
    let report = sectionwise_equivalence_proxy(map, source, target, max_degree)?;
    let isomorphism = (0..source.site().num_objects()).all(|o| map.component(o).is_bijective_onto(target.value(o)));
    Ok(Comparison { label, report, isomorphism })
}

/// Builds `F(n_+) → F(1_+)^{×n}` for `2 ≤ n ≤ max_n` and judges each with
/// the sectionwise equivalence proxy in degrees below the dimension bound.
pub fn is_special(f: &Gamma, max_n: usize) -> Result<SpecialReport> {
    let mut comparisons = Vec::new();
    for n in 2..=max_n {
        let maps: Vec<PointedMap> = (1..=n).map(|j| project(n, j)).collect();
        let (s, t, m) = comparison(f, n, &maps)?;
        comparisons.push(compare(format!("{}({n}_+) → {}(1_+)^{n}", f.describe(), f.describe()), &s, &t, &m)?);
    }
    let special = comparisons.iter().all(|c| c.report.holds());
    Ok(SpecialReport {
        name: f.describe(),
        comparisons,
        special,
        very_special: None,
        pi0_tables: vec![],
        pi0_is_group: None,
        pi0_is_commutative: None,
    })
}

/// [`is_special`] plus the shear `F(2_+) → F(1_+) × F(1_+)`,
/// `x ↦ (F(p₁)x, F(∇)x)`, and the monoid `π₀(F(1_+))` with its group and
/// commutativity checks.
pub fn is_very_special(f: &Gamma, max_n: usize) -> Result<SpecialReport> {
    let mut report = is_special(f, max_n.max(2))?;
    let (s, t, m) = comparison(f, 2, &[project(2, 1), fold()])?;
    let shear = compare(format!("shear {}(2_+) → {}(1_+)^2", f.describe(), f.describe()), &s, &t, &m)?;
    let shear_ok = shear.report.holds();
    report.comparisons.push(shear);
    let (f1, f2) = (f.eval(1)?, f.eval(2)?);
    let (p1, p2, nabla) = (f.eval_map(&project(2, 1))?, f.eval_map(&project(2, 2))?, f.eval_map(&fold())?);
    let mut group = true;
    let mut commutative = true;
    let mut tables = Vec::new();
    for o in 0..f.site().num_objects() {
        let c1 = pi0(f1.value(o));
        let n = c1.count;
        let mut table = vec![vec![usize::MAX; n]; n];
        for z in 0..f2.value(o).size(0) {
            let a = c1.of_vertex[p1.component(o).apply(0, z)];
            let b = c1.of_vertex[p2.component(o).apply(0, z)];
            let sum = c1.of_vertex[nabla.component(o).apply(0, z)];
            if table[a][b] == usize::MAX {
                table[a][b] = sum;
            } else if table[a][b] != sum {
                return Err(structural(format!(
                    "π₀ addition of {} is not well defined over object {o}; the space is not special",
                    f.describe()
                )));
            }
        }
        if table.iter().flatten().any(|&v| v == usize::MAX) {
            group = false;
            commutative = false;
        } else {
            group &= (0..n).all(|a| (0..n).any(|b| table[a][b] == 0));
            commutative &= (0..n).all(|a| (0..n).all(|b| table[a][b] == table[b][a]));
        }
        tables.push(table);
    }
    report.very_special = Some(report.special && shear_ok && group);
    report.pi0_tables = tables;
    report.pi0_is_group = Some(group);
    report.pi0_is_commutative = Some(commutative);
    Ok(report)
}

/// The comparison maps for `HA` computed on the linear model: `A^n → A^n`
/// assembled from the sum formula for the projections, and the shear
/// `(a, b) ↦ (a, a + b)`. Each is judged by its determinant and by the
/// induced map on homotopy groups.
pub fn is_very_special_linear(a: &SimplicialAbPresheaf, max_n: usize) -> Result<SpecialReport> {
    let mut comparisons = Vec::new();
    let max_degree = a.dim().saturating_sub(1);
    let mut cases: Vec<(String, Vec<Vec<i64>>)> = (2..=max_n)
        .map(|n| {
            // the j-th projection picks the j-th coordinate
            let m = (0..n).map(|j| (0..n).map(|i| i64::from(i == j)).collect()).collect();
            (format!("HA({n}_+) → HA(1_+)^{n}"), m)
        })
        .collect();
    cases.push(("shear HA(2_+) → HA(1_+)^2".into(), vec![vec![1, 0], vec![1, 1]]));
    for (label, blocks) in cases {
        let n = blocks.len();
        let power = power_presheaf(a, n)?;
        let maps: Vec<SimplicialAbMap> = (0..a.site().num_objects())
            .map(|o| {
                SimplicialAbMap::from_matrices(
                    (0..=a.dim())
                        .map(|q| {
                            let r = a.value(o).rank(q);
                            let rows: Vec<Vec<BigInt>> = (0..n * r)
                                .map(|row| (0..n * r).map(|col| if row % r == col % r { BigInt::from(blocks[row / r][col / r]) } else { BigInt::from(0) }).collect())
                                .collect();
                            IntMatrix::from_rows(&rows)
                        })
                        .collect(),
                )
            })
            .collect();
        let isomorphism = maps.iter().all(|m| m.matrices().iter().all(|x| x.nrows() == 0 || x.determinant().abs() == BigInt::from(1)));
        let report = abelian_equivalence(&maps, &power, &power, max_degree)?;
        comparisons.push(Comparison { label, report, isomorphism });
    }
    let special = comparisons.iter().all(|c| c.report.holds());
    Ok(SpecialReport {
        name: "HA (linear model)".into(),
        comparisons,
        special,
        very_special: Some(special),
        pi0_tables: vec![],
        pi0_is_group: Some(true),
        pi0_is_commutative: Some(true),
    })
}

/// `A^{⊕n}` with generators ordered `(copy, generator)`.
fn power_presheaf(a: &SimplicialAbPresheaf, n: usize) -> Result<SimplicialAbPresheaf> {
    let block = |m: &IntMatrix| -> IntMatrix {
        (1..n).fold(m.clone(), |acc, _| {
            let top = acc.hcat(&IntMatrix::zeros(acc.nrows(), m.ncols()));
            let bottom = IntMatrix::zeros(m.nrows(), acc.ncols()).hcat(m);
            top.vcat(&bottom)
        })
    };
    let values = a
        .values()
        .iter()
        .map(|g| {
            let d = g.dim();
            crate::homology::SimplicialAbGroup::new(
                (0..=d).map(|q| g.orders(q).repeat(n)).collect(),
                (0..=d).map(|q| if q == 0 { vec![] } else { (0..=q).map(|i| block(g.face(q, i))).collect() }).collect(),
                (0..=d).map(|q| if q < d { (0..=q).map(|j| block(g.degeneracy(q, j))).collect() } else { vec![] }).collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let restrictions = (0..a.site().morphisms().len())
        .map(|m| SimplicialAbMap::from_matrices(a.restriction(m).matrices().iter().map(block).collect()))
        .collect();
    SimplicialAbPresheaf::new(a.site().clone(), values, restrictions)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::gamma::kinds::{corepresentable, eilenberg_mac_lane, level};
    use crate::homology::SimplicialAbGroup;
    use crate::simplicial::boundary_quotient_sphere;
    use crate::site::{EquivalenceVerdict, FinCategory};

    fn one() -> Arc<FinCategory> {
        Arc::new(FinCategory::one_point())
    }

    #[test]
    fn corepresentable_is_not_special() {
        // Γ¹(n_+) = n_+ has n + 1 points against 2^n in the product
        let r = is_very_special(&corepresentable(one(), 1, 2), 3).unwrap();
        assert!(!r.special);
        assert!(r.comparisons.iter().all(|c| !c.isomorphism));
        assert_eq!(r.very_special, Some(false));
        // 1 + 1 has no witness in Γ¹(2_+)
        assert_eq!(r.pi0_tables[0], vec![vec![0, 1], vec![1, usize::MAX]]);
        assert_eq!(r.pi0_is_group, Some(false));
    }

    #[test]
    fn eilenberg_mac_lane_is_very_special() {
        let a = SimplicialAbPresheaf::constant(one(), &SimplicialAbGroup::constant(&[3], 2));
        let r = is_very_special(&eilenberg_mac_lane(a), 2).unwrap();
        assert_eq!(r.very_special, Some(true));
        assert!(r.comparisons.iter().all(|c| c.isomorphism));
        let z = SimplicialAbPresheaf::constant(one(), &SimplicialAbGroup::constant(&[0], 2));
        let r = is_very_special_linear(&z, 3).unwrap();
        assert!(r.comparisons.iter().all(|c| c.isomorphism && c.report.holds()));
    }

    #[test]
    fn level_of_circle_is_not_special() {
        let c = boundary_quotient_sphere(1, 3).unwrap();
        let l = level(1, PresheafSpace::constant(one(), &c));
        let r = is_special(&l, 2).unwrap();
        assert!(!r.special);
        assert_eq!(r.comparisons[0].report.verdicts[0].1, EquivalenceVerdict::Not { degree: 2 });
    }
}
