//! The homology long exact sequence of the levelwise cofiber sequence
//! `Sp(F) → Sp(G) → Sp(G/F)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{structural, Error, Result};
use crate::gamma::{quotient_gamma, GammaMap};
use crate::homology::lattice::{preimage_basis, Lattice};
use crate::homology::{induced_chain_map, invariant_factors, reduced_chain_complex, ChainComplex, HomologyClasses, IntMatrix};
use crate::simplicial::{SimplicialMap, SimplicialSet};

use super::sp::{sp, sp_map};

/// A short exact sequence of free chain complexes `0 → S → T → Q → 0` in
/// which `inclusion` and `projection` are coordinate maps: `lift` is a
/// section of the projection and `restrict` a retraction of the inclusion.
#[derive(Clone, Debug)]
pub struct ChainTriple {
    pub sub: ChainComplex,
    pub total: ChainComplex,
    pub quotient: ChainComplex,
    pub inclusion: Vec<IntMatrix>,
    pub projection: Vec<IntMatrix>,
    pub lift: Vec<IntMatrix>,
    pub restrict: Vec<IntMatrix>,
}

impl ChainTriple {
    /// The triple of reduced normalized chains for `X ⊂ Y → Y/X`.
    pub fn from_cofiber(
        inclusion: &SimplicialMap,
        sub: &SimplicialSet,
        total: &SimplicialSet,
        projection: &SimplicialMap,
        quotient: &SimplicialSet,
    ) -> Self {
        let i = induced_chain_map(inclusion, sub, total);
        let p = induced_chain_map(projection, total, quotient);
        Self {
            sub: reduced_chain_complex(sub),
            total: reduced_chain_complex(total),
            quotient: reduced_chain_complex(quotient),
            lift: p.iter().map(IntMatrix::transpose).collect(),
            restrict: i.iter().map(IntMatrix::transpose).collect(),
            inclusion: i,
            projection: p,
        }
    }

    /// Replaces the differential `d_degree` of the middle complex by a
    /// multiple of itself, which keeps `d² = 0` but breaks the sequence.
    pub fn corrupt_total_differential(&mut self, degree: usize, factor: i64) -> Result<()> {
        let top = self.total.top();
        let ranks = (0..=top).map(|k| self.total.rank(k)).collect();
        let ds = (1..=top)
            .map(|k| {
                let d = self.total.differential(k).clone();
                if k == degree {
                    d.scale(&BigInt::from(factor))
                } else {
                    d
                }
            })
            .collect();
        self.total = ChainComplex::free(ranks, ds, self.total.is_complete())?;
        Ok(())
    }
}

/// Exactness at one spot of the long exact sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LesSpot {
    pub level: usize,
    pub object: String,
    /// `sub`, `total` or `quotient`.
    pub group: String,
    pub degree: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LesReport {
    pub name: String,
    pub max_degree: usize,
    pub spots: Vec<LesSpot>,
    pub passed: bool,
    /// The first spot where exactness fails.
    pub witness: Option<LesSpot>,
}

fn dense(x: &IntMatrix, j: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); x.nrows()];
    for (i, a) in x.column(j) {
        v[*i] = a.clone();
    }
    v
}

fn relations(h: &HomologyClasses) -> IntMatrix {
    let n = h.orders().len();
    IntMatrix::from_sparse_columns(
        n,
        h.orders().iter().enumerate().filter(|(_, o)| !o.is_zero()).map(|(i, o)| vec![(i, o.clone())]).collect(),
    )
}

fn to_sparse(v: Vec<BigInt>) -> Vec<(usize, BigInt)> {
    v.into_iter().enumerate().filter(|(_, a)| !a.is_zero()).collect()
}

/// Whether `A →f B →g C` is exact at `B`, for matrices in class
/// coordinates: `ker g = im f + (relations of B)`.
fn exact_at(f: &IntMatrix, b: &HomologyClasses, g: &IntMatrix, c: &HomologyClasses) -> bool {
    let ker = Lattice::span(&preimage_basis(g, &relations(c)));
    let gens = f.hcat(&relations(b));
    let mut cols = Vec::with_capacity(gens.ncols());
    for j in 0..gens.ncols() {
        match ker.coords(&dense(&gens, j)) {
            Some(c) => cols.push(to_sparse(c)),
            None => return false,
        }
    }
    let m = IntMatrix::from_sparse_columns(ker.rank(), cols);
    let factors = invariant_factors(&m);
    factors.len() == ker.rank() && factors.iter().all(One::is_one)
}

fn induced(h: &HomologyClasses, target: &HomologyClasses, chain: &IntMatrix) -> Result<IntMatrix> {
    h.induced_by(target, chain)
}

/// The connecting map `H_j(Q) → H_{j-1}(S)`: lift, apply the differential
/// of `T`, pull back along the inclusion.
fn connecting(t: &ChainTriple, j: usize, hq: &HomologyClasses, hs: &HomologyClasses) -> Result<IntMatrix> {
    let d = t.total.differential(j);
    let cols = hq
        .generators()
        .iter()
        .map(|z| {
            let w = d.mul_vec(&t.lift[j].mul_vec(z));
            let y = t.restrict[j - 1].mul_vec(&w);
            if t.inclusion[j - 1].mul_vec(&y) != w {
                return Err(structural("boundary of a lifted cycle leaves the subcomplex"));
            }
            Ok(to_sparse(hs.classify(&y)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntMatrix::from_sparse_columns(hs.orders().len(), cols))
}

/// Checks exactness of `⋯ → H_j(S) → H_j(T) → H_j(Q) → H_{j-1}(S) → ⋯`
/// for `j ≤ max_degree`. Exactness at `H_j(S)` needs `H_{j+1}(Q)` and is
/// only checked below `max_degree`.
pub fn les_exactness(t: &ChainTriple, max_degree: usize, level: usize, object: &str) -> Result<Vec<LesSpot>> {
    let classes = |c: &ChainComplex| (0..=max_degree).map(|j| c.homology_classes(j)).collect::<Result<Vec<_>>>();
    let (hs, ht, hq) = (classes(&t.sub)?, classes(&t.total)?, classes(&t.quotient)?);
    let mut spots = Vec::new();
    let spot = |group: &str, degree: usize, exact: bool| LesSpot { level, object: object.into(), group: group.into(), degree, exact };
    let mut boundary = vec![None];
    for j in 1..=max_degree {
        boundary.push(Some(connecting(t, j, &hq[j], &hs[j - 1])?));
    }
    for j in 0..=max_degree {
        let i = induced(&hs[j], &ht[j], &t.inclusion[j])?;
        let p = induced(&ht[j], &hq[j], &t.projection[j])?;
        spots.push(spot("total", j, exact_at(&i, &ht[j], &p, &hq[j])));
        let exact_q = match &boundary[j] {
            Some(d) => exact_at(&p, &hq[j], d, &hs[j - 1]),
            // H_0(Q) → 0: the projection must be onto
            None => exact_at(&p, &hq[0], &IntMatrix::zeros(0, hq[0].orders().len()), &zero_classes()),
        };
        spots.push(spot("quotient", j, exact_q));
        if j < max_degree {
            let d = boundary[j + 1].as_ref().expect("computed above");
            spots.push(spot("sub", j, exact_at(d, &hs[j], &i, &ht[j])));
        }
    }
    Ok(spots)
}

fn zero_classes() -> HomologyClasses {
    ChainComplex::free(vec![0], vec![], true).and_then(|c| c.homology_classes(0)).expect("zero complex")
}

/// Builds `Sp(F) → Sp(G) → Sp(G/F)` for a levelwise injective `j` and
/// checks exactness of the homology long exact sequence at every level,
/// object and degree below the dimension bound.
pub fn cofiber_les_check(j: &GammaMap, l: usize, dim: usize) -> Result<LesReport> {
    let arity = dim.pow(l as u32);
    if !j.is_levelwise_injective(arity)? {
        return Err(Error::Precondition("the map is not levelwise injective".into()));
    }
    let (q, proj) = quotient_gamma(j.clone());
    let (ef, eg, eq) = (sp(j.source(), l, dim)?, sp(j.target(), l, dim)?, sp(&q, l, dim)?);
    let (sj, sp_proj) = (sp_map(j, &ef, &eg)?, sp_map(&proj, &eg, &eq)?);
    let max_degree = dim - 1;
    let mut spots = Vec::new();
    for k in 0..=l {
        for (o, name) in ef.site().objects().iter().enumerate() {
            let t = ChainTriple::from_cofiber(
                sj.level(k).component(o),
                ef.level(k).value(o),
                eg.level(k).value(o),
                sp_proj.level(k).component(o),
                eq.level(k).value(o),
            );
            spots.extend(les_exactness(&t, max_degree, k, name)?);
        }
    }
    let witness = spots.iter().find(|s| !s.exact).cloned();
    Ok(LesReport {
        name: format!("{} → {}", j.source().describe(), j.target().describe()),
        max_degree,
        passed: witness.is_none(),
        spots,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::gamma::{corepresentable, wedge_into_product, GammaMap};
    use crate::simplicial::{quotient, quotient_projection, rp2};
    use crate::site::FinCategory;

    fn one() -> Arc<FinCategory> {
        Arc::new(FinCategory::one_point())
    }

    #[test]
    fn wedge_into_product_sequence_is_exact() {
        let g1 = corepresentable(one(), 1, 3);
        let j = wedge_into_product(g1.clone(), g1).unwrap();
        let r = cofiber_les_check(&j, 2, 3).unwrap();
        assert!(r.passed, "{:?}", r.witness);
        assert!(r.spots.len() > 20);
    }

    #[test]
    fn identity_of_point_degenerates() {
        let p = corepresentable(one(), 0, 2);
        let r = cofiber_les_check(&GammaMap::identity(&p), 1, 2).unwrap();
        assert!(r.passed);
    }

    #[test]
    fn non_injective_maps_are_refused() {
        let g1 = corepresentable(one(), 1, 2);
        let p = corepresentable(one(), 0, 2);
        let z = GammaMap::new(g1, p.clone(), move |k| Ok(crate::site::PresheafMap::constant(&*corepresentable(one(), 1, 2).eval(k)?)));
        assert!(matches!(cofiber_les_check(&z, 1, 2), Err(Error::Precondition(_))));
    }

    /// `S⁰ → RP²_+ → RP²`: exact as given, broken once a differential of
    /// the middle complex is doubled.
    #[test]
    fn corrupted_differential_fails_with_witness() {
        let x = rp2(3, true).unwrap();
        // the adjoined basepoint and vertex 1 form the subspace
        let sub_flags: Vec<Vec<bool>> = (0..=3).map(|k| (0..x.size(k)).map(|s| s == 0 || is_vertex_one(&x, k, s)).collect()).collect();
        let q = quotient(&x, &sub_flags).unwrap();
        let p = quotient_projection(&x, &sub_flags);
        let s0 = crate::simplicial::s0(3);
        let inc = SimplicialMap::from_tables(
            (0..=3).map(|k| (0..2).map(|v| if v == 0 { 0 } else { vertex_one(&x, k) }).collect()).collect(),
        );
        let mut t = ChainTriple::from_cofiber(&inc, &s0, &x, &p, &q);
        assert!(les_exactness(&t, 2, 0, "pt").unwrap().iter().all(|s| s.exact));
        t.corrupt_total_differential(2, 2).unwrap();
        let spots = les_exactness(&t, 2, 0, "pt").unwrap();
        let bad = spots.iter().find(|s| !s.exact).expect("corruption is detected");
        assert!(bad.degree <= 2);
    }

    fn vertex_one(x: &SimplicialSet, k: usize) -> usize {
        let mut v = 1;
        for d in 0..k {
            v = x.degeneracy(d, 0, v);
        }
        v
    }

    fn is_vertex_one(x: &SimplicialSet, k: usize, s: usize) -> bool {
        vertex_one(x, k) == s
    }
}
