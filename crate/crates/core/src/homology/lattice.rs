use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::matrix::IntMatrix;
use super::snf::smith_normal_form;

/// A sublattice of `Z^n` with a basis and a solver for coordinates.
#[derive(Clone, Debug)]
pub(crate) struct Lattice {
    basis: IntMatrix,
    u: IntMatrix,
    diag: Vec<BigInt>,
}

impl Lattice {
    /// The lattice spanned by the columns of `gens`.
    pub fn span(gens: &IntMatrix) -> Self {
        let s = smith_normal_form(gens);
        // gens = u_inv * D * v_inv, so the columns u_inv[:, i] * d_i form a basis
        let cols = s
            .diagonal
            .iter()
            .enumerate()
            .map(|(i, d)| s.u_inv.column(i).iter().map(|(r, v)| (*r, v * d)).collect())
            .collect();
        let basis = IntMatrix::from_sparse_columns(gens.nrows(), cols);
        Self { basis, u: s.u, diag: s.diagonal }
    }

    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Coordinates of `x` in the basis, if `x` lies in the lattice.
    pub fn coords(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let y = self.u.mul_vec(x);
        if y[self.rank()..].iter().any(|v| !v.is_zero()) {
            return None;
        }
        self.diag
            .iter()
            .zip(&y)
            .map(|(d, v)| {
                let (q, r) = v.div_rem(d);
                r.is_zero().then_some(q)
            })
            .collect()
    }
}

/// A basis of the integer kernel of `m`, as columns.
pub(crate) fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    if m.nrows() == 0 || m.is_zero() {
        return IntMatrix::identity(m.ncols());
    }
    let s = smith_normal_form(m);
    let idx: Vec<usize> = (s.rank()..m.ncols()).collect();
    s.v.select_columns(&idx)
}

/// Basis of `{x : m x ∈ span(rel)}` where `rel` has the same row count
/// as `m`.
pub(crate) fn preimage_basis(m: &IntMatrix, rel: &IntMatrix) -> IntMatrix {
    if rel.ncols() == 0 {
        return kernel_basis(m);
    }
    let k = kernel_basis(&m.hcat(rel));
    let first: Vec<usize> = (0..m.ncols()).collect();
    let projected = k.select_rows(&first);
    Lattice::span(&projected).basis().clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn span_and_coordinates() {
        let gens = IntMatrix::from_rows(&[vec![2, 4, 6], vec![0, 2, 2]]);
        let l = Lattice::span(&gens);
        assert_eq!(l.rank(), 2);
        assert!(l.coords(&v(&[2, 0])).is_some());
        assert!(l.coords(&v(&[1, 0])).is_none());
        let c = l.coords(&v(&[6, 2])).unwrap();
        assert_eq!(l.basis().mul_vec(&c), v(&[6, 2]));
    }

    #[test]
    fn kernel_is_annihilated() {
        let m = IntMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6]]);
        let k = kernel_basis(&m);
        assert_eq!(k.ncols(), 2);
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn preimage_modulo_relations() {
        // x ↦ x in Z/2: preimage of 0 is 2Z
        let m = IntMatrix::from_rows(&[vec![1]]);
        let rel = IntMatrix::from_rows(&[vec![2]]);
        let b = preimage_basis(&m, &rel);
        assert_eq!(b.ncols(), 1);
        assert_eq!(b.get(0, 0).magnitude(), BigInt::from(2).magnitude());
    }
}
