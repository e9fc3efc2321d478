use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{structural, Error, Result};
use crate::simplicial::{SimplicialMap, SimplicialSet};

use super::chain::{ChainComplex, HomologyClasses};
use super::group::AbGroup;
use super::lattice::{preimage_basis, Lattice};
use super::matrix::IntMatrix;

/// A simplicial abelian group, truncated at degree `dim`. Degree `k` is
/// `⊕ Z/oᵢ` over its generators (order 0 meaning `Z`); faces and
/// degeneracies are integer matrices acting on generator coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialAbGroup {
    orders: Vec<Vec<u64>>,
    faces: Vec<Vec<IntMatrix>>,
    degeneracies: Vec<Vec<IntMatrix>>,
}

/// A homomorphism of simplicial abelian groups, one matrix per degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialAbMap {
    matrices: Vec<IntMatrix>,
}

fn diagonal_relations(orders: &[u64]) -> IntMatrix {
    let cols = orders
        .iter()
        .enumerate()
        .filter(|(_, &o)| o != 0)
        .map(|(i, &o)| vec![(i, BigInt::from(o))])
        .collect();
    IntMatrix::from_sparse_columns(orders.len(), cols)
}

/// Whether `a ≡ b` after reducing rows modulo `orders`.
fn congruent(a: &IntMatrix, b: &IntMatrix, orders: &[u64]) -> bool {
    a.reduce_rows(orders) == b.reduce_rows(orders)
}

impl SimplicialAbGroup {
    /// `faces[k][i] : A_k → A_{k-1}` for `k ≥ 1` and
    /// `degeneracies[k][j] : A_k → A_{k+1}` for `k < dim`.
    pub fn new(orders: Vec<Vec<u64>>, faces: Vec<Vec<IntMatrix>>, degeneracies: Vec<Vec<IntMatrix>>) -> Result<Self> {
        let a = Self { orders, faces, degeneracies };
        a.validate()?;
        Ok(a)
    }

    pub fn dim(&self) -> usize {
        self.orders.len() - 1
    }

    pub fn orders(&self, k: usize) -> &[u64] {
        &self.orders[k]
    }

    pub fn rank(&self, k: usize) -> usize {
        self.orders[k].len()
    }

    pub fn face(&self, k: usize, i: usize) -> &IntMatrix {
        &self.faces[k][i]
    }

    pub fn degeneracy(&self, k: usize, j: usize) -> &IntMatrix {
        &self.degeneracies[k][j]
    }

    /// The group in degree `k` as an abstract abelian group.
    pub fn group(&self, k: usize) -> AbGroup {
        AbGroup::from_orders(&self.orders[k].iter().map(|&o| BigInt::from(o)).collect::<Vec<_>>())
    }

    fn well_defined(&self, m: &IntMatrix, source: &[u64], target: &[u64]) -> bool {
        source.iter().enumerate().all(|(j, &o)| {
            o == 0 || {
                let col = IntMatrix::from_sparse_columns(m.nrows(), vec![m.column(j).to_vec()]);
                col.scale(&BigInt::from(o)).reduce_rows(target).is_zero()
            }
        })
    }

    pub fn validate(&self) -> Result<()> {
        let dim = self.orders.len().checked_sub(1).ok_or_else(|| structural("empty simplicial group"))?;
        if self.faces.len() != dim + 1 || self.degeneracies.len() != dim + 1 {
            return Err(structural("structure map count mismatch"));
        }
        for k in 0..=dim {
            let nf = if k == 0 { 0 } else { k + 1 };
            let nd = if k < dim { k + 1 } else { 0 };
            if self.faces[k].len() != nf || self.degeneracies[k].len() != nd {
                return Err(structural(format!("degree {k} has the wrong number of structure maps")));
            }
            for (i, d) in self.faces[k].iter().enumerate() {
                if d.nrows() != self.rank(k - 1) || d.ncols() != self.rank(k) {
                    return Err(structural(format!("d_{i} in degree {k} has the wrong shape")));
                }
                if !self.well_defined(d, &self.orders[k], &self.orders[k - 1]) {
                    return Err(structural(format!("d_{i} in degree {k} is not well defined")));
                }
            }
            for (j, s) in self.degeneracies[k].iter().enumerate() {
                if s.nrows() != self.rank(k + 1) || s.ncols() != self.rank(k) {
                    return Err(structural(format!("s_{j} in degree {k} has the wrong shape")));
                }
                if !self.well_defined(s, &self.orders[k], &self.orders[k + 1]) {
                    return Err(structural(format!("s_{j} in degree {k} is not well defined")));
                }
            }
        }
        let d = |k: usize, i: usize| &self.faces[k][i];
        let s = |k: usize, j: usize| &self.degeneracies[k][j];
        for k in 0..=dim {
            if k >= 2 {
                for j in 0..=k {
                    for i in 0..j {
                        if !congruent(&d(k - 1, i).mul(d(k, j)), &d(k - 1, j - 1).mul(d(k, i)), &self.orders[k - 2]) {
                            return Err(structural(format!("d_{i} d_{j} identity fails in degree {k}")));
                        }
                    }
                }
            }
            if k < dim {
                for j in 0..=k {
                    for i in 0..=k + 1 {
                        let lhs = d(k + 1, i).mul(s(k, j));
                        let rhs = if i < j {
                            s(k - 1, j - 1).mul(d(k, i))
                        } else if i == j || i == j + 1 {
                            IntMatrix::identity(self.rank(k))
                        } else {
                            s(k - 1, j).mul(d(k, i - 1))
                        };
                        if !congruent(&lhs, &rhs, &self.orders[k]) {
                            return Err(structural(format!("d_{i} s_{j} identity fails in degree {k}")));
                        }
                    }
                }
                if k + 1 < dim {
                    for j in 0..=k + 1 {
                        for i in 0..j {
                            // s_i s_j = s_{j+1} s_i for i ≤ j; here i < j
                            let lhs = s(k + 1, i).mul(s(k, j - 1));
                            let rhs = s(k + 1, j).mul(s(k, i));
                            if !congruent(&lhs, &rhs, &self.orders[k + 2]) {
                                return Err(structural(format!("s_{i} s_{} identity fails in degree {k}", j - 1)));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Restricts to degrees `0..=dim`.
    pub fn truncate(&self, dim: usize) -> Result<Self> {
        if dim > self.dim() {
            return Err(Error::DimensionBound(format!("cannot extend a {}-truncated simplicial group to {dim}", self.dim())));
        }
        let mut degeneracies = self.degeneracies[..dim].to_vec();
        degeneracies.push(vec![]);
        Ok(Self { orders: self.orders[..=dim].to_vec(), faces: self.faces[..=dim].to_vec(), degeneracies })
    }

    /// The constant simplicial group on `⊕ Z/oᵢ`.
    pub fn constant(orders: &[u64], dim: usize) -> Self {
        let id = IntMatrix::identity(orders.len());
        Self {
            orders: vec![orders.to_vec(); dim + 1],
            faces: (0..=dim).map(|k| if k == 0 { vec![] } else { vec![id.clone(); k + 1] }).collect(),
            degeneracies: (0..=dim).map(|k| if k < dim { vec![id.clone(); k + 1] } else { vec![] }).collect(),
        }
    }

    /// `A ⊗ Z̃[X]` for `A = ⊕ Z/oᵢ`: generators are pairs of a
    /// non-basepoint simplex and a summand of `A`, indexed
    /// `(x - 1) · |orders| + c`, with the basepoint sent to zero.
    pub fn reduced_free(x: &SimplicialSet, orders: &[u64]) -> Self {
        let m = orders.len();
        let dim = x.dim();
        let gen_orders = (0..=dim).map(|k| (1..x.size(k)).flat_map(|_| orders.iter().copied()).collect()).collect();
        let induced = |k: usize, k2: usize, table: &[usize]| {
            let cols = (1..x.size(k))
                .flat_map(|s| {
                    (0..m).map(move |c| {
                        let t = table[s];
                        if t == 0 {
                            vec![]
                        } else {
                            vec![((t - 1) * m + c, BigInt::one())]
                        }
                    })
                })
                .collect();
            IntMatrix::from_sparse_columns((x.size(k2) - 1) * m, cols)
        };
        let faces = (0..=dim)
            .map(|k| if k == 0 { vec![] } else { (0..=k).map(|i| induced(k, k - 1, x.face_table(k, i))).collect() })
            .collect();
        let degeneracies = (0..=dim)
            .map(|k| if k < dim { (0..=k).map(|j| induced(k, k + 1, x.degeneracy_table(k, j))).collect() } else { vec![] })
            .collect();
        Self { orders: gen_orders, faces, degeneracies }
    }

    /// The degreewise tensor product `A ⊗ Z̃[X]`: generators are pairs of a
    /// non-basepoint simplex `x` and a generator `c` of `A`, indexed
    /// `(x - 1) · rank + c`.
    pub fn tensor_space(&self, x: &SimplicialSet) -> Self {
        let dim = self.dim().min(x.dim());
        let orders = (0..=dim)
            .map(|k| (1..x.size(k)).flat_map(|_| self.orders[k].iter().copied()).collect())
            .collect();
        let op = |k: usize, k2: usize, table: &[usize], m: &IntMatrix| tensor_block(k, k2, table, m, x, x, &self.orders);
        let faces = (0..=dim)
            .map(|k| if k == 0 { vec![] } else { (0..=k).map(|i| op(k, k - 1, x.face_table(k, i), &self.faces[k][i])).collect() })
            .collect();
        let degeneracies = (0..=dim)
            .map(|k| {
                if k < dim {
                    (0..=k).map(|j| op(k, k + 1, x.degeneracy_table(k, j), &self.degeneracies[k][j])).collect()
                } else {
                    vec![]
                }
            })
            .collect();
        Self { orders, faces, degeneracies }
    }

    /// The full chain complex with differential `Σ (-1)^i d_i`.
    pub fn unnormalized_complex(&self) -> ChainComplex {
        let ranks = self.orders.iter().map(Vec::len).collect();
        let relations = self.orders.iter().map(|o| diagonal_relations(o)).collect();
        let differentials = (1..=self.dim()).map(|k| self.alternating_sum(k)).collect();
        ChainComplex::presented(ranks, relations, differentials, false).expect("alternating face sum squares to zero")
    }

    fn alternating_sum(&self, k: usize) -> IntMatrix {
        let mut acc = IntMatrix::zeros(self.rank(k - 1), self.rank(k));
        for (i, d) in self.faces[k].iter().enumerate() {
            acc = if i % 2 == 0 { acc.add(d) } else { acc.add(&d.scale(&BigInt::from(-1))) };
        }
        acc
    }

    /// The quotient by degenerate elements, `A_k / Σ_j s_j(A_{k-1})`, with
    /// the alternating face sum.
    pub fn normalized_complex(&self) -> ChainComplex {
        let c = self.normalized_through(self.dim());
        c.validate().expect("degenerate elements form a subcomplex");
        c
    }

    /// The normalized complex in degrees `0..=top`.
    fn normalized_through(&self, top: usize) -> ChainComplex {
        let ranks = self.orders[..=top].iter().map(Vec::len).collect();
        let relations = (0..=top)
            .map(|k| {
                let mut r = diagonal_relations(&self.orders[k]);
                if k > 0 {
                    for s in &self.degeneracies[k - 1] {
                        r = r.hcat(s);
                    }
                }
                r
            })
            .collect();
        let differentials = (1..=top).map(|k| self.alternating_sum(k)).collect();
        ChainComplex::presented_unchecked(ranks, relations, differentials, false)
    }

    /// The Moore complex `N_k = ∩_{i>0} ker d_i` with differential `d_0`,
    /// presented on a lattice basis of the preimage of the relations.
    pub fn moore_complex(&self) -> ChainComplex {
        let dim = self.dim();
        // lattice bases of {x : d_i x ≡ 0 for all i ≥ 1} in each degree
        let bases: Vec<IntMatrix> = (0..=dim)
            .map(|k| {
                if k == 0 {
                    return IntMatrix::identity(self.rank(0));
                }
                let rel = diagonal_relations(&self.orders[k - 1]);
                let mut stacked = IntMatrix::zeros(0, self.rank(k));
                let mut rels = IntMatrix::zeros(0, 0);
                for i in 1..=k {
                    stacked = stacked.vcat(&self.faces[k][i]);
                    rels = block_diagonal(&rels, &rel);
                }
                preimage_basis(&stacked, &rels)
            })
            .collect();
        let lattices: Vec<Lattice> = bases.iter().map(Lattice::span).collect();
        let ranks = lattices.iter().map(Lattice::rank).collect();
        let relations = (0..=dim)
            .map(|k| {
                // relations of A_k lying in N_k, in N_k coordinates
                let rel = diagonal_relations(&self.orders[k]);
                let inside = preimage_basis(lattices[k].basis(), &rel);
                inside
            })
            .collect();
        let differentials = (1..=dim)
            .map(|k| {
                let image = self.faces[k][0].mul(lattices[k].basis());
                let cols = (0..image.ncols())
                    .map(|j| {
                        let mut x = vec![BigInt::zero(); image.nrows()];
                        for (i, v) in image.column(j) {
                            x[*i] = v.clone();
                        }
                        let c = lattices[k - 1].coords(&x).expect("d_0 preserves the Moore lattice");
                        c.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect()
                    })
                    .collect();
                IntMatrix::from_sparse_columns(lattices[k - 1].rank(), cols)
            })
            .collect();
        ChainComplex::presented(ranks, relations, differentials, false).expect("Moore complex is a complex")
    }

    /// `π_n(A)`, computed on the normalized complex. Refused at and above the
    /// dimension bound.
    pub fn homotopy(&self, n: usize) -> Result<AbGroup> {
        self.normalized_through((n + 1).min(self.dim())).homology(n)
    }

    pub fn homotopy_classes(&self, n: usize) -> Result<HomologyClasses> {
        self.normalized_through((n + 1).min(self.dim())).homology_classes(n)
    }
}

/// The matrix of `m ⊗ Z̃[table]` from degree `k` of `A ⊗ Z̃[X]` to degree
/// `k2` of `A' ⊗ Z̃[Y]`, where `m : A_k → A'_{k2}`.
fn tensor_block(
    k: usize,
    k2: usize,
    table: &[usize],
    m: &IntMatrix,
    x: &SimplicialSet,
    y: &SimplicialSet,
    target_orders: &[Vec<u64>],
) -> IntMatrix {
    let (r, r2) = (m.ncols(), target_orders[k2].len());
    let cols = (1..x.size(k))
        .flat_map(|s| {
            (0..r).map(move |c| {
                let t = table[s];
                if t == 0 {
                    vec![]
                } else {
                    m.column(c).iter().map(|(row, v)| ((t - 1) * r2 + row, v.clone())).collect()
                }
            })
        })
        .collect();
    IntMatrix::from_sparse_columns((y.size(k2) - 1) * r2, cols)
}

fn block_diagonal(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let top = a.hcat(&IntMatrix::zeros(a.nrows(), b.ncols()));
    let bottom = IntMatrix::zeros(b.nrows(), a.ncols()).hcat(b);
    top.vcat(&bottom)
}

impl SimplicialAbMap {

    /// `A ⊗ Z̃[f]` between the groups built by
    /// [`SimplicialAbGroup::reduced_free`].
    pub fn induced_free(f: &SimplicialMap, source: &SimplicialSet, target: &SimplicialSet, orders: &[u64]) -> Self {
        let m = orders.len();
        let matrices = (0..=source.dim())
            .map(|k| {
                let cols = (1..source.size(k))
                    .flat_map(|s| {
                        (0..m).map(move |c| {
                            let t = f.apply(k, s);
                            if t == 0 {
                                vec![]
                            } else {
                                vec![((t - 1) * m + c, BigInt::one())]
                            }
                        })
                    })
                    .collect();
                IntMatrix::from_sparse_columns((target.size(k) - 1) * m, cols)
            })
            .collect();
        Self { matrices }
    }

    /// `g ⊗ Z̃[f] : A ⊗ Z̃[X] → B ⊗ Z̃[Y]`, where `target` is `B`.
    pub fn tensor(
        g: &SimplicialAbMap,
        f: &SimplicialMap,
        target: &SimplicialAbGroup,
        x: &SimplicialSet,
        y: &SimplicialSet,
    ) -> Self {
        let dim = target.dim().min(x.dim());
        let matrices = (0..=dim).map(|k| tensor_block(k, k, f.table(k), &g.matrices[k], x, y, &target.orders)).collect();
        Self { matrices }
    }

    pub fn from_matrices(matrices: Vec<IntMatrix>) -> Self {
        Self { matrices }
    }

    pub fn identity(a: &SimplicialAbGroup) -> Self {
        Self { matrices: (0..=a.dim()).map(|k| IntMatrix::identity(a.rank(k))).collect() }
    }

    pub fn matrices(&self) -> &[IntMatrix] {
        &self.matrices
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &SimplicialAbMap) -> SimplicialAbMap {
        Self { matrices: self.matrices.iter().zip(&first.matrices).map(|(g, f)| g.mul(f)).collect() }
    }

    /// Equality as homomorphisms, i.e. after reducing modulo the target.
    pub fn agrees_with(&self, other: &SimplicialAbMap, target: &SimplicialAbGroup) -> bool {
        self.matrices.iter().zip(&other.matrices).enumerate().all(|(k, (a, b))| congruent(a, b, target.orders(k)))
    }

    pub fn new(source: &SimplicialAbGroup, target: &SimplicialAbGroup, matrices: Vec<IntMatrix>) -> Result<Self> {
        let f = Self { matrices };
        f.validate(source, target)?;
        Ok(f)
    }

    pub fn matrix(&self, k: usize) -> &IntMatrix {
        &self.matrices[k]
    }

    pub fn validate(&self, source: &SimplicialAbGroup, target: &SimplicialAbGroup) -> Result<()> {
        let dim = source.dim();
        if target.dim() != dim || self.matrices.len() != dim + 1 {
            return Err(structural("homomorphism dimension bounds disagree"));
        }
        for k in 0..=dim {
            let f = &self.matrices[k];
            if f.nrows() != target.rank(k) || f.ncols() != source.rank(k) {
                return Err(structural(format!("homomorphism has the wrong shape in degree {k}")));
            }
            if !source.well_defined(f, source.orders(k), target.orders(k)) {
                return Err(structural(format!("homomorphism is not well defined in degree {k}")));
            }
            if k > 0 {
                for i in 0..=k {
                    let lhs = target.face(k, i).mul(f);
                    let rhs = self.matrices[k - 1].mul(source.face(k, i));
                    if !congruent(&lhs, &rhs, target.orders(k - 1)) {
                        return Err(structural(format!("homomorphism does not commute with d_{i} in degree {k}")));
                    }
                }
            }
            if k < dim {
                for j in 0..=k {
                    let lhs = target.degeneracy(k, j).mul(f);
                    let rhs = self.matrices[k + 1].mul(source.degeneracy(k, j));
                    if !congruent(&lhs, &rhs, target.orders(k + 1)) {
                        return Err(structural(format!("homomorphism does not commute with s_{j} in degree {k}")));
                    }
                }
            }
        }
        Ok(())
    }

    /// The induced map on `π_n` as a matrix between class coordinates.
    pub fn on_homotopy(
        &self,
        n: usize,
        source: &HomologyClasses,
        target: &HomologyClasses,
    ) -> Result<IntMatrix> {
        source.induced_by(target, &self.matrices[n])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{boundary_quotient_sphere, rp2};

    #[test]
    fn constant_group() {
        let a = SimplicialAbGroup::constant(&[0], 3);
        a.validate().unwrap();
        assert_eq!(a.homotopy(0).unwrap(), AbGroup::free(1));
        assert_eq!(a.homotopy(1).unwrap(), AbGroup::trivial());
        assert_eq!(a.homotopy(2).unwrap(), AbGroup::trivial());
        assert!(a.homotopy(3).is_err());
    }

    #[test]
    fn free_on_circle_and_projective_plane() {
        let c = boundary_quotient_sphere(1, 3).unwrap();
        let a = SimplicialAbGroup::reduced_free(&c, &[0]);
        a.validate().unwrap();
        assert_eq!(a.homotopy(1).unwrap(), AbGroup::free(1));
        let rp = rp2(3, false).unwrap();
        let b = SimplicialAbGroup::reduced_free(&rp, &[0]);
        assert_eq!(b.homotopy(1).unwrap(), AbGroup::cyclic(2));
        assert_eq!(b.homotopy(0).unwrap(), AbGroup::trivial());
        let b2 = SimplicialAbGroup::reduced_free(&rp, &[2]);
        assert_eq!(b2.homotopy(1).unwrap(), AbGroup::cyclic(2));
        assert_eq!(b2.homotopy(2).unwrap(), AbGroup::cyclic(2));
    }

    #[test]
    fn three_complexes_agree() {
        let rp = rp2(3, false).unwrap();
        let c = boundary_quotient_sphere(2, 3).unwrap();
        let groups = [
            SimplicialAbGroup::reduced_free(&rp, &[0]),
            SimplicialAbGroup::reduced_free(&rp, &[3, 2]),
            SimplicialAbGroup::reduced_free(&c, &[4]),
            SimplicialAbGroup::constant(&[0, 6], 3),
        ];
        for a in &groups {
            let moore = a.moore_complex();
            let full = a.unnormalized_complex();
            let norm = a.normalized_complex();
            for n in 0..3 {
                let h = moore.homology(n).unwrap();
                assert_eq!(h, full.homology(n).unwrap(), "degree {n}");
                assert_eq!(h, norm.homology(n).unwrap(), "degree {n}");
            }
        }
    }

    #[test]
    fn broken_identity_is_reported() {
        let mut a = SimplicialAbGroup::constant(&[0], 2);
        a.faces[1][0] = IntMatrix::from_rows(&[vec![2]]);
        assert!(a.validate().is_err());
        let mut b = SimplicialAbGroup::constant(&[2], 2);
        b.degeneracies[0][0] = IntMatrix::from_rows(&[vec![3]]);
        assert!(b.validate().is_ok());
        let mut c = SimplicialAbGroup::constant(&[2], 2);
        c.orders[1] = vec![0];
        assert!(c.validate().is_err());
    }

    #[test]
    fn maps_induce_on_homotopy() {
        let rp = rp2(3, false).unwrap();
        let a = SimplicialAbGroup::reduced_free(&rp, &[0]);
        let id = SimplicialAbMap::new(&a, &a, (0..=3).map(|k| IntMatrix::identity(a.rank(k))).collect()).unwrap();
        let h = a.homotopy_classes(1).unwrap();
        let m = id.on_homotopy(1, &h, &h).unwrap();
        assert!(super::super::chain::is_isomorphism(&h, &h, &m));
    }
}
