use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{structural, Error, Result};
use crate::simplicial::{SimplicialMap, SimplicialSet};

use super::group::AbGroup;
use super::lattice::{preimage_basis, Lattice};
use super::matrix::IntMatrix;
use super::snf::{invariant_factors, smith_normal_form};

/// A bounded chain complex of finitely presented abelian groups.
///
/// Degree `k` has `rank(k)` generators subject to the relations given by
/// the columns of `relations(k)` (none for free groups). The differential
/// `d_k : C_k → C_{k-1}` is stored for `1 ≤ k ≤ top`. Unless the complex
/// is marked complete, `C_{top+1}` is unknown and homology in degree `top`
/// is refused.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    relations: Vec<IntMatrix>,
    differentials: Vec<IntMatrix>,
    complete: bool,
}

impl ChainComplex {
    /// A complex of free groups; `differentials[k - 1]` is `d_k`.
    pub fn free(ranks: Vec<usize>, differentials: Vec<IntMatrix>, complete: bool) -> Result<Self> {
        let relations = ranks.iter().map(|&r| IntMatrix::zeros(r, 0)).collect();
        Self::presented(ranks, relations, differentials, complete)
    }

    pub fn presented(
        ranks: Vec<usize>,
        relations: Vec<IntMatrix>,
        differentials: Vec<IntMatrix>,
        complete: bool,
    ) -> Result<Self> {
        if ranks.is_empty() {
            return Err(structural("chain complex needs degree 0"));
        }
        let mut ds = vec![IntMatrix::zeros(0, ranks[0])];
        ds.extend(differentials);
        let c = Self { ranks, relations, differentials: ds, complete };
        c.validate()?;
        Ok(c)
    }

    /// [`Self::presented`] without the lattice checks, for complexes that
    /// are complexes by construction.
    pub(crate) fn presented_unchecked(
        ranks: Vec<usize>,
        relations: Vec<IntMatrix>,
        differentials: Vec<IntMatrix>,
        complete: bool,
    ) -> Self {
        let mut ds = vec![IntMatrix::zeros(0, ranks[0])];
        ds.extend(differentials);
        Self { ranks, relations, differentials: ds, complete }
    }

    pub fn top(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn rank(&self, k: usize) -> usize {
        self.ranks[k]
    }

    pub fn differential(&self, k: usize) -> &IntMatrix {
        &self.differentials[k]
    }

    pub fn relations(&self, k: usize) -> &IntMatrix {
        &self.relations[k]
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn is_free(&self) -> bool {
        self.relations.iter().all(|r| r.ncols() == 0)
    }

    pub fn validate(&self) -> Result<()> {
        let top = self.top();
        if self.relations.len() != top + 1 || self.differentials.len() != top + 1 {
            return Err(structural("chain complex degree count mismatch"));
        }
        for k in 0..=top {
            if self.relations[k].nrows() != self.ranks[k] {
                return Err(structural(format!("relations in degree {k} have the wrong row count")));
            }
            if k >= 1 {
                let d = &self.differentials[k];
                if d.nrows() != self.ranks[k - 1] || d.ncols() != self.ranks[k] {
                    return Err(structural(format!("d_{k} has the wrong shape")));
                }
                let rel = Lattice::span(&self.relations[k - 1]);
                let image = d.mul(&self.relations[k]);
                if !columns_in(&image, &rel) {
                    return Err(structural(format!("d_{k} does not respect the relations")));
                }
                if k >= 2 {
                    let dd = self.differentials[k - 1].mul(d);
                    if !columns_in(&dd, &Lattice::span(&self.relations[k - 2])) {
                        return Err(structural(format!("d_{} d_{k} is not zero", k - 1)));
                    }
                }
            }
        }
        Ok(())
    }

    /// Adds the relation `order · g = 0` for every generator (order 0 leaves
    /// the complex unchanged).
    pub fn with_coefficients(&self, order: u64) -> ChainComplex {
        if order == 0 {
            return self.clone();
        }
        let relations = self
            .relations
            .iter()
            .zip(&self.ranks)
            .map(|(r, &n)| r.hcat(&IntMatrix::identity(n).scale(&BigInt::from(order))))
            .collect();
        ChainComplex { relations, ..self.clone() }
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        let limit = if self.complete { self.top() } else { self.top().saturating_sub(1) };
        if n > self.top() || (n == self.top() && !self.complete) {
            return Err(Error::Truncation { degree: n, limit });
        }
        Ok(())
    }

    /// Drops generators killed by a relation `±g = 0`.
    fn prune(&self) -> (ChainComplex, Vec<Vec<usize>>) {
        let kept: Vec<Vec<usize>> = (0..=self.top())
            .map(|k| {
                let mut dead = vec![false; self.ranks[k]];
                for col in self.relations[k].columns() {
                    if let [(i, v)] = col.as_slice() {
                        if v.abs().is_one() {
                            dead[*i] = true;
                        }
                    }
                }
                (0..self.ranks[k]).filter(|&g| !dead[g]).collect()
            })
            .collect();
        let relations = (0..=self.top())
            .map(|k| {
                let r = self.relations[k].select_rows(&kept[k]);
                let nonzero: Vec<usize> = (0..r.ncols()).filter(|&j| !r.column(j).is_empty()).collect();
                r.select_columns(&nonzero)
            })
            .collect();
        let differentials = (0..=self.top())
            .map(|k| {
                if k == 0 {
                    IntMatrix::zeros(0, kept[0].len())
                } else {
                    self.differentials[k].select_rows(&kept[k - 1]).select_columns(&kept[k])
                }
            })
            .collect();
        let ranks = kept.iter().map(Vec::len).collect();
        (ChainComplex { ranks, relations, differentials, complete: self.complete }, kept)
    }

    /// The homology group in degree `n`.
    pub fn homology(&self, n: usize) -> Result<AbGroup> {
        self.check_degree(n)?;
        let (c, _) = self.prune();
        if c.is_free() {
            let rank_n = if n == 0 { 0 } else { invariant_factors(&c.differentials[n]).len() };
            let (rank_up, torsion) = if n < c.top() {
                let f = invariant_factors(&c.differentials[n + 1]);
                (f.len(), f.into_iter().filter(|d| !d.is_one()).collect())
            } else {
                (0, Vec::new())
            };
            return Ok(AbGroup { free_rank: c.ranks[n] - rank_n - rank_up, torsion });
        }
        Ok(c.classes_unpruned(n)?.group)
    }

    /// Homology in degree `n` with explicit representatives and a
    /// classifier for cycles.
    pub fn homology_classes(&self, n: usize) -> Result<HomologyClasses> {
        self.check_degree(n)?;
        let (c, kept) = self.prune();
        let mut h = c.classes_unpruned(n)?;
        h.kept = kept[n].clone();
        h.ambient = self.ranks[n];
        Ok(h)
    }

    fn classes_unpruned(&self, n: usize) -> Result<HomologyClasses> {
        let rn = self.ranks[n];
        let cycles_basis = if n == 0 {
            IntMatrix::identity(rn)
        } else {
            preimage_basis(&self.differentials[n], &self.relations[n - 1])
        };
        let cycles = Lattice::span(&cycles_basis);
        let boundary_gens = if n < self.top() {
            self.differentials[n + 1].hcat(&self.relations[n])
        } else {
            self.relations[n].clone()
        };
        let z = cycles.rank();
        let mut bcols = Vec::with_capacity(boundary_gens.ncols());
        for j in 0..boundary_gens.ncols() {
            let x = dense_column(&boundary_gens, j);
            let c = cycles.coords(&x).ok_or_else(|| structural("boundary is not a cycle"))?;
            bcols.push(c.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect());
        }
        let bk = IntMatrix::from_sparse_columns(z, bcols);
        let s = smith_normal_form(&bk);
        let mut orders = Vec::new();
        let mut rows = Vec::new();
        for i in 0..z {
            let e = s.diagonal.get(i).cloned().unwrap_or_else(BigInt::zero);
            if !e.is_one() {
                orders.push(e);
                rows.push(i);
            }
        }
        let generators = rows
            .iter()
            .map(|&i| cycles.basis().mul_vec(&dense_column(&s.u_inv, i)))
            .collect();
        let transform = s.u.select_rows(&rows);
        Ok(HomologyClasses {
            group: AbGroup::from_orders(&orders),
            orders,
            generators,
            cycles,
            transform,
            kept: (0..rn).collect(),
            ambient: rn,
        })
    }
}

fn dense_column(m: &IntMatrix, j: usize) -> Vec<BigInt> {
    let mut x = vec![BigInt::zero(); m.nrows()];
    for (i, v) in m.column(j) {
        x[*i] = v.clone();
    }
    x
}

fn columns_in(m: &IntMatrix, lattice: &Lattice) -> bool {
    (0..m.ncols()).all(|j| m.column(j).is_empty() || lattice.coords(&dense_column(m, j)).is_some())
}

/// A homology group together with cycle representatives for its cyclic
/// summands and a way to express any cycle in those coordinates.
#[derive(Clone, Debug)]
pub struct HomologyClasses {
    pub group: AbGroup,
    orders: Vec<BigInt>,
    generators: Vec<Vec<BigInt>>,
    cycles: Lattice,
    transform: IntMatrix,
    kept: Vec<usize>,
    ambient: usize,
}

impl HomologyClasses {
    /// Order of each coordinate (0 for infinite cyclic).
    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    /// Cycle representatives, one per coordinate, as vectors over the chain
    /// generators.
    pub fn generators(&self) -> Vec<Vec<BigInt>> {
        self.generators
            .iter()
            .map(|g| {
                let mut x = vec![BigInt::zero(); self.ambient];
                for (v, &i) in g.iter().zip(&self.kept) {
                    x[i] = v.clone();
                }
                x
            })
            .collect()
    }

    /// Coordinates of the class of a cycle, reduced modulo the orders.
    pub fn classify(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        let projected: Vec<BigInt> = self.kept.iter().map(|&i| x[i].clone()).collect();
        let c = self.cycles.coords(&projected).ok_or_else(|| Error::Precondition("chain is not a cycle".into()))?;
        let y = self.transform.mul_vec(&c);
        Ok(y.into_iter().zip(&self.orders).map(|(v, o)| if o.is_zero() { v } else { v.mod_floor(o) }).collect())
    }

    /// Matrix of the map on homology induced by a chain map given on
    /// degree `n` generators.
    pub fn induced_by(&self, target: &HomologyClasses, chain_map: &IntMatrix) -> Result<IntMatrix> {
        let cols = self
            .generators()
            .iter()
            .map(|g| {
                let img = target.classify(&chain_map.mul_vec(g))?;
                Ok(img.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix::from_sparse_columns(target.orders.len(), cols))
    }
}

/// Whether `matrix` (from [`HomologyClasses::induced_by`]) is an
/// isomorphism: the groups agree and the map is onto.
pub fn is_isomorphism(source: &HomologyClasses, target: &HomologyClasses, matrix: &IntMatrix) -> bool {
    if source.group != target.group {
        return false;
    }
    let n = target.orders.len();
    let rel = IntMatrix::from_sparse_columns(
        n,
        target.orders.iter().enumerate().map(|(i, o)| if o.is_zero() { vec![] } else { vec![(i, o.clone())] }).collect(),
    );
    let f = invariant_factors(&matrix.hcat(&rel));
    f.len() == n && f.iter().all(One::is_one)
}

/// The reduced normalized chain complex of a pointed simplicial set:
/// generated by non-degenerate, non-basepoint simplices.
pub fn reduced_chain_complex(x: &SimplicialSet) -> ChainComplex {
    let dim = x.dim();
    let gens: Vec<Vec<usize>> = (0..=dim).map(|k| x.nondegenerate(k)).collect();
    let index: Vec<std::collections::HashMap<usize, usize>> =
        gens.iter().map(|g| g.iter().enumerate().map(|(i, &s)| (s, i)).collect()).collect();
    let differentials = (1..=dim)
        .map(|k| {
            let cols = gens[k]
                .iter()
                .map(|&s| {
                    (0..=k)
                        .filter_map(|i| {
                            let f = x.face(k, i, s);
                            let sign = if i % 2 == 0 { 1 } else { -1 };
                            index[k - 1].get(&f).map(|&r| (r, BigInt::from(sign)))
                        })
                        .collect()
                })
                .collect();
            IntMatrix::from_sparse_columns(gens[k - 1].len(), cols)
        })
        .collect();
    let ranks = gens.iter().map(Vec::len).collect();
    ChainComplex::free(ranks, differentials, false).expect("normalized chains form a complex")
}

/// The map of reduced normalized chains induced by a simplicial map, one
/// matrix per degree (columns: non-degenerate simplices of the source).
pub fn induced_chain_map(f: &SimplicialMap, source: &SimplicialSet, target: &SimplicialSet) -> Vec<IntMatrix> {
    (0..=source.dim())
        .map(|k| {
            let tgt = target.nondegenerate(k);
            let index: std::collections::HashMap<usize, usize> = tgt.iter().enumerate().map(|(i, &s)| (s, i)).collect();
            let cols = source
                .nondegenerate(k)
                .iter()
                .map(|&s| index.get(&f.apply(k, s)).map(|&r| vec![(r, BigInt::one())]).unwrap_or_default())
                .collect();
            IntMatrix::from_sparse_columns(tgt.len(), cols)
        })
        .collect()
}

/// Reduced integral homology of `x` in degree `n`; refused above the
/// trusted degree of the dimension bound.
pub fn reduced_homology(x: &SimplicialSet, n: usize) -> Result<AbGroup> {
    reduced_chain_complex(x).homology(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{boundary_quotient_sphere, product, rp2, smash_spheres};

    #[test]
    fn spheres_and_projective_plane() {
        let s2 = boundary_quotient_sphere(2, 3).unwrap();
        assert_eq!(reduced_homology(&s2, 2).unwrap(), AbGroup::free(1));
        assert_eq!(reduced_homology(&s2, 1).unwrap(), AbGroup::trivial());
        let rp = rp2(3, true).unwrap();
        assert_eq!(reduced_homology(&rp, 1).unwrap(), AbGroup::cyclic(2));
        assert_eq!(reduced_homology(&rp, 2).unwrap(), AbGroup::trivial());
        let rp_based = rp2(3, false).unwrap();
        assert_eq!(reduced_homology(&rp_based, 0).unwrap(), AbGroup::trivial());
    }

    #[test]
    fn torus_and_smash_of_circles() {
        let c = boundary_quotient_sphere(1, 3).unwrap();
        let t = product(&c, &c);
        assert_eq!(reduced_homology(&t, 1).unwrap(), AbGroup::free(2));
        assert_eq!(reduced_homology(&t, 2).unwrap(), AbGroup::free(1));
        let s2 = smash_spheres(2, 3).unwrap();
        assert_eq!(reduced_homology(&s2, 2).unwrap(), AbGroup::free(1));
        assert_eq!(reduced_homology(&s2, 1).unwrap(), AbGroup::trivial());
    }

    #[test]
    fn top_degree_is_refused() {
        let s2 = boundary_quotient_sphere(2, 2).unwrap();
        assert!(matches!(reduced_homology(&s2, 2), Err(Error::Truncation { degree: 2, limit: 1 })));
    }

    #[test]
    fn classes_agree_with_fast_path_and_coefficients() {
        let rp = rp2(3, true).unwrap();
        let c = reduced_chain_complex(&rp);
        for n in 0..3 {
            assert_eq!(c.homology_classes(n).unwrap().group, c.homology(n).unwrap());
        }
        let mod2 = c.with_coefficients(2);
        assert_eq!(mod2.homology(1).unwrap(), AbGroup::cyclic(2));
        assert_eq!(mod2.homology(2).unwrap(), AbGroup::cyclic(2));
        let mod3 = c.with_coefficients(3);
        assert_eq!(mod3.homology(1).unwrap(), AbGroup::trivial());
    }

    #[test]
    fn classify_representatives() {
        let rp = rp2(3, true).unwrap();
        let h = reduced_chain_complex(&rp).homology_classes(1).unwrap();
        let gens = h.generators();
        assert_eq!(gens.len(), 1);
        assert_eq!(h.classify(&gens[0]).unwrap(), vec![BigInt::one()]);
        let twice: Vec<BigInt> = gens[0].iter().map(|v| v * 2).collect();
        assert_eq!(h.classify(&twice).unwrap(), vec![BigInt::zero()]);
        let id = IntMatrix::identity(gens[0].len());
        let m = h.induced_by(&h, &id).unwrap();
        assert!(is_isomorphism(&h, &h, &m));
        let zero = IntMatrix::zeros(gens[0].len(), gens[0].len());
        assert!(!is_isomorphism(&h, &h, &h.induced_by(&h, &zero).unwrap()));
    }
}
