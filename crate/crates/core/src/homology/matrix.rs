use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// A sparse integer matrix stored column by column; entries are arbitrary
/// precision and zero entries are never stored.
#[derive(Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: Vec<Vec<(usize, BigInt)>>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols.len())?;
        for r in self.to_dense() {
            writeln!(f, "  {:?}", r.iter().map(|x| x.to_string()).collect::<Vec<_>>())?;
        }
        Ok(())
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self { rows: n, cols: (0..n).map(|i| vec![(i, BigInt::one())]).collect() }
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(nrows, ncols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), ncols, "ragged rows");
            for (j, v) in r.iter().enumerate() {
                m.add_to(i, j, v.clone().into());
            }
        }
        m
    }

    /// Builds a matrix from columns given as sparse `(row, value)` lists;
    /// repeated rows are summed.
    pub fn from_sparse_columns(rows: usize, columns: Vec<Vec<(usize, BigInt)>>) -> Self {
        let cols = columns.into_iter().map(normalize_column).collect();
        Self { rows, cols }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, BigInt)] {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[Vec<(usize, BigInt)>] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        match self.cols[j].binary_search_by_key(&i, |e| e.0) {
            Ok(p) => self.cols[j][p].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: BigInt) {
        assert!(i < self.rows, "row index out of range");
        let col = &mut self.cols[j];
        match col.binary_search_by_key(&i, |e| e.0) {
            Ok(p) => {
                col[p].1 += v;
                if col[p].1.is_zero() {
                    col.remove(p);
                }
            }
            Err(p) => {
                if !v.is_zero() {
                    col.insert(p, (i, v));
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols.len()]; self.rows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c {
                d[*i][j] = v.clone();
            }
        }
        d
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut cols = vec![Vec::new(); self.rows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c {
                cols[*i].push((j, v.clone()));
            }
        }
        IntMatrix { rows: self.cols.len(), cols }
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.ncols(), rhs.nrows(), "dimension mismatch in product");
        let cols = rhs
            .cols
            .iter()
            .map(|c| {
                let mut acc: Vec<(usize, BigInt)> = Vec::new();
                for (k, v) in c {
                    for (i, w) in &self.cols[*k] {
                        acc.push((*i, v * w));
                    }
                }
                normalize_column(acc)
            })
            .collect();
        IntMatrix { rows: self.rows, cols }
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.ncols());
        let mut out = vec![BigInt::zero(); self.rows];
        for (j, c) in self.cols.iter().enumerate() {
            if x[j].is_zero() {
                continue;
            }
            for (i, v) in c {
                out[*i] += v * &x[j];
            }
        }
        out
    }

    pub fn add(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.ncols()), (rhs.rows, rhs.ncols()));
        let cols = self
            .cols
            .iter()
            .zip(&rhs.cols)
            .map(|(a, b)| normalize_column(a.iter().chain(b).cloned().collect()))
            .collect();
        IntMatrix { rows: self.rows, cols }
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        let cols = self
            .cols
            .iter()
            .map(|c| normalize_column(c.iter().map(|(i, v)| (*i, v * k)).collect()))
            .collect();
        IntMatrix { rows: self.rows, cols }
    }

    /// `[self | rhs]`.
    pub fn hcat(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, rhs.rows, "hcat row mismatch");
        let mut cols = self.cols.clone();
        cols.extend(rhs.cols.iter().cloned());
        IntMatrix { rows: self.rows, cols }
    }

    /// `[self ; rhs]`.
    pub fn vcat(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.ncols(), rhs.ncols(), "vcat column mismatch");
        let cols = self
            .cols
            .iter()
            .zip(&rhs.cols)
            .map(|(a, b)| a.iter().cloned().chain(b.iter().map(|(i, v)| (i + self.rows, v.clone()))).collect())
            .collect();
        IntMatrix { rows: self.rows + rhs.rows, cols }
    }

    pub fn select_columns(&self, idx: &[usize]) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: idx.iter().map(|&j| self.cols[j].clone()).collect() }
    }

    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        let mut pos = vec![usize::MAX; self.rows];
        for (new, &old) in idx.iter().enumerate() {
            pos[old] = new;
        }
        let cols = self
            .cols
            .iter()
            .map(|c| {
                normalize_column(
                    c.iter().filter(|(i, _)| pos[*i] != usize::MAX).map(|(i, v)| (pos[*i], v.clone())).collect(),
                )
            })
            .collect();
        IntMatrix { rows: idx.len(), cols }
    }

    /// Reduces each row modulo the corresponding order (0 means no
    /// reduction).
    pub fn reduce_rows(&self, orders: &[u64]) -> IntMatrix {
        let cols = self
            .cols
            .iter()
            .map(|c| {
                c.iter()
                    .filter_map(|(i, v)| {
                        let o = orders[*i];
                        let r = if o == 0 { v.clone() } else { v.mod_floor(&BigInt::from(o)) };
                        (!r.is_zero()).then_some((*i, r))
                    })
                    .collect()
            })
            .collect();
        IntMatrix { rows: self.rows, cols }
    }

    /// Determinant of a square matrix, by fraction-free elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.ncols(), "determinant of non-square matrix");
        let n = self.rows;
        let mut a = self.to_dense();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else { return BigInt::zero() };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            BigInt::one()
        } else {
            sign * &a[n - 1][n - 1]
        }
    }
}

fn normalize_column(mut c: Vec<(usize, BigInt)>) -> Vec<(usize, BigInt)> {
    c.sort_by_key(|e| e.0);
    let mut out: Vec<(usize, BigInt)> = Vec::with_capacity(c.len());
    for (i, v) in c {
        match out.last_mut() {
            Some((li, lv)) if *li == i => *lv += v,
            _ => out.push((i, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

/// Integer arithmetic used by the dense elimination kernels. Operations
/// return `None` on overflow so a fixed-width attempt can fall back to
/// arbitrary precision.
pub(crate) trait Scalar: Clone + PartialEq + fmt::Debug {
    fn nil() -> Self;
    fn unit() -> Self;
    fn is_nil(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn abs_cmp(&self, other: &Self) -> std::cmp::Ordering;
    fn checked_add(&self, o: &Self) -> Option<Self>;
    fn checked_mul(&self, o: &Self) -> Option<Self>;
    fn checked_neg(&self) -> Option<Self>;
    /// Floor quotient.
    fn checked_div_floor(&self, o: &Self) -> Option<Self>;
    fn divides(&self, o: &Self) -> bool;
    fn to_big(&self) -> BigInt;
    fn from_big(b: &BigInt) -> Option<Self>;
}

impl Scalar for i64 {
    fn nil() -> Self {
        0
    }
    fn unit() -> Self {
        1
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn is_neg(&self) -> bool {
        *self < 0
    }
    fn abs_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn checked_add(&self, o: &Self) -> Option<Self> {
        i64::checked_add(*self, *o)
    }
    fn checked_mul(&self, o: &Self) -> Option<Self> {
        i64::checked_mul(*self, *o)
    }
    fn checked_neg(&self) -> Option<Self> {
        i64::checked_neg(*self)
    }
    fn checked_div_floor(&self, o: &Self) -> Option<Self> {
        if *self == i64::MIN && *o == -1 {
            return None;
        }
        Some(Integer::div_floor(self, o))
    }
    fn divides(&self, o: &Self) -> bool {
        if *self == 0 {
            *o == 0
        } else {
            o.checked_rem(*self).is_none_or(|r| r == 0)
        }
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn from_big(b: &BigInt) -> Option<Self> {
        b.to_i64()
    }
}

impl Scalar for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn abs_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn checked_add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn checked_mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn checked_neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn checked_div_floor(&self, o: &Self) -> Option<Self> {
        Some(Integer::div_floor(self, o))
    }
    fn divides(&self, o: &Self) -> bool {
        if Zero::is_zero(self) {
            Zero::is_zero(o)
        } else {
            Zero::is_zero(&(o % self))
        }
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn from_big(b: &BigInt) -> Option<Self> {
        Some(b.clone())
    }
}
