//! Smith normal form over the integers.
//!
//! The dense kernel runs first in checked `i64` arithmetic and restarts in
//! `BigInt` if any intermediate value overflows, so results are always
//! exact. Large sparse inputs to [`invariant_factors`] are first reduced
//! by eliminating unit pivots.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::{IntMatrix, Scalar};

/// `u * m * v = d`, where `d` has the non-zero entries of `diagonal` in
/// positions `(0,0), (1,1), …` and zeros elsewhere. Each diagonal entry
/// is positive and divides the next. `u_inv` and `v_inv` are the inverses
/// of the unimodular transforms.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

struct Dense<T> {
    a: Vec<Vec<T>>,
    track: bool,
    u: Vec<Vec<T>>,
    u_inv: Vec<Vec<T>>,
    v: Vec<Vec<T>>,
    v_inv: Vec<Vec<T>>,
}

fn ident<T: Scalar>(n: usize) -> Vec<Vec<T>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { T::unit() } else { T::nil() }).collect()).collect()
}

/// `row[i] += q * row[j]` in a row-major matrix.
fn rows_addmul<T: Scalar>(m: &mut [Vec<T>], i: usize, j: usize, q: &T) -> Option<()> {
    let (src, dst) = if i < j {
        let (lo, hi) = m.split_at_mut(j);
        (&hi[0], &mut lo[i])
    } else {
        let (lo, hi) = m.split_at_mut(i);
        (&lo[j], &mut hi[0])
    };
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_nil() {
            *d = d.checked_add(&s.checked_mul(q)?)?;
        }
    }
    Some(())
}

/// `col[i] += q * col[j]` in a row-major matrix.
fn cols_addmul<T: Scalar>(m: &mut [Vec<T>], i: usize, j: usize, q: &T) -> Option<()> {
    for row in m.iter_mut() {
        if !row[j].is_nil() {
            let add = row[j].checked_mul(q)?;
            row[i] = row[i].checked_add(&add)?;
        }
    }
    Some(())
}

impl<T: Scalar> Dense<T> {
    fn new(a: Vec<Vec<T>>, ncols: usize, track: bool) -> Self {
        let r = a.len();
        let (u, u_inv, v, v_inv) =
            if track { (ident(r), ident(r), ident(ncols), ident(ncols)) } else { (vec![], vec![], vec![], vec![]) };
        Self { a, track, u, u_inv, v, v_inv }
    }

    fn row_addmul(&mut self, i: usize, j: usize, q: &T) -> Option<()> {
        rows_addmul(&mut self.a, i, j, q)?;
        if self.track {
            rows_addmul(&mut self.u, i, j, q)?;
            cols_addmul(&mut self.u_inv, j, i, &q.checked_neg()?)?;
        }
        Some(())
    }

    fn col_addmul(&mut self, i: usize, j: usize, q: &T) -> Option<()> {
        cols_addmul(&mut self.a, i, j, q)?;
        if self.track {
            cols_addmul(&mut self.v, i, j, q)?;
            rows_addmul(&mut self.v_inv, j, i, &q.checked_neg()?)?;
        }
        Some(())
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if self.track {
            self.u.swap(i, j);
            for row in &mut self.u_inv {
                row.swap(i, j);
            }
        }
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in &mut self.a {
            row.swap(i, j);
        }
        if self.track {
            for row in &mut self.v {
                row.swap(i, j);
            }
            self.v_inv.swap(i, j);
        }
    }

    fn row_neg(&mut self, i: usize) -> Option<()> {
        for x in &mut self.a[i] {
            *x = x.checked_neg()?;
        }
        if self.track {
            for x in &mut self.u[i] {
                *x = x.checked_neg()?;
            }
            for row in &mut self.u_inv {
                row[i] = row[i].checked_neg()?;
            }
        }
        Some(())
    }

    /// Runs the elimination; returns the diagonal or `None` on overflow.
    fn reduce(&mut self) -> Option<Vec<T>> {
        let r = self.a.len();
        let c = self.a.first().map_or(0, Vec::len);
        let mut diag = Vec::new();
        for t in 0..r.min(c) {
            // global pivot: smallest non-zero magnitude in the remaining block
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let x = &self.a[i][j];
                    if !x.is_nil() && best.is_none_or(|(bi, bj)| x.abs_cmp(&self.a[bi][bj]).is_lt()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            self.row_swap(t, pi);
            self.col_swap(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..r {
                    if !self.a[i][t].is_nil() {
                        let q = self.a[i][t].checked_div_floor(&self.a[t][t])?.checked_neg()?;
                        self.row_addmul(i, t, &q)?;
                        clean &= self.a[i][t].is_nil();
                    }
                }
                for j in t + 1..c {
                    if !self.a[t][j].is_nil() {
                        let q = self.a[t][j].checked_div_floor(&self.a[t][t])?.checked_neg()?;
                        self.col_addmul(j, t, &q)?;
                        clean &= self.a[t][j].is_nil();
                    }
                }
                if !clean {
                    // a remainder is now smaller than the pivot
                    let mut best = (t, t);
                    for i in t + 1..r {
                        let x = &self.a[i][t];
                        if !x.is_nil() && x.abs_cmp(&self.a[best.0][best.1]).is_lt() {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..c {
                        let x = &self.a[t][j];
                        if !x.is_nil() && x.abs_cmp(&self.a[best.0][best.1]).is_lt() {
                            best = (t, j);
                        }
                    }
                    self.row_swap(t, best.0);
                    self.col_swap(t, best.1);
                    continue;
                }
                let bad = (t + 1..r)
                    .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
                    .find(|&(i, j)| !self.a[t][t].divides(&self.a[i][j]));
                match bad {
                    Some((i, _)) => self.row_addmul(t, i, &T::unit())?,
                    None => break,
                }
            }
            if self.a[t][t].is_neg() {
                self.row_neg(t)?;
            }
            diag.push(self.a[t][t].clone());
        }
        Some(diag)
    }
}

fn to_dense<T: Scalar>(m: &IntMatrix) -> Option<Vec<Vec<T>>> {
    let mut d = vec![vec![T::nil(); m.ncols()]; m.nrows()];
    for (j, col) in m.columns().iter().enumerate() {
        for (i, v) in col {
            d[*i][j] = T::from_big(v)?;
        }
    }
    Some(d)
}

fn from_dense<T: Scalar>(d: &[Vec<T>], ncols: usize) -> IntMatrix {
    let cols = (0..ncols)
        .map(|j| d.iter().enumerate().filter(|(_, r)| !r[j].is_nil()).map(|(i, r)| (i, r[j].to_big())).collect())
        .collect();
    IntMatrix::from_sparse_columns(d.len(), cols)
}

fn try_smith<T: Scalar>(m: &IntMatrix, track: bool) -> Option<(Vec<BigInt>, Option<[IntMatrix; 4]>)> {
    let mut dense = Dense::<T>::new(to_dense(m)?, m.ncols(), track);
    let diag = dense.reduce()?;
    let big = diag.iter().map(Scalar::to_big).collect();
    let transforms = track.then(|| {
        let (r, c) = (m.nrows(), m.ncols());
        [from_dense(&dense.u, r), from_dense(&dense.u_inv, r), from_dense(&dense.v, c), from_dense(&dense.v_inv, c)]
    });
    Some((big, transforms))
}

/// Smith normal form with unimodular transforms.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (diagonal, t) = try_smith::<i64>(m, true)
        .or_else(|| try_smith::<BigInt>(m, true))
        .expect("arbitrary precision elimination cannot overflow");
    let [u, u_inv, v, v_inv] = t.expect("transforms requested");
    SmithForm { diagonal, u, u_inv, v, v_inv }
}

fn dense_invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    try_smith::<i64>(m, false)
        .or_else(|| try_smith::<BigInt>(m, false))
        .expect("arbitrary precision elimination cannot overflow")
        .0
}

/// The non-zero invariant factors of `m` in divisibility order, including
/// ones. Their count is the rank of `m`.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let (units, rest) = eliminate_unit_pivots(m);
    let mut factors = vec![BigInt::one(); units];
    factors.extend(dense_invariant_factors(&rest));
    factors
}

/// Eliminates pivots equal to ±1 (which contribute invariant factor 1)
/// with sparse row operations, returning how many were removed and the
/// remaining matrix, which has the same non-unit invariant factors.
fn eliminate_unit_pivots(m: &IntMatrix) -> (usize, IntMatrix) {
    let nrows = m.nrows();
    let ncols = m.ncols();
    let mut rows: Vec<HashMap<usize, BigInt>> = vec![HashMap::new(); nrows];
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); ncols];
    for (j, col) in m.columns().iter().enumerate() {
        for (i, v) in col {
            rows[*i].insert(j, v.clone());
            col_rows[j].push(*i);
        }
    }
    let mut row_alive = vec![true; nrows];
    let mut col_alive = vec![true; ncols];
    let mut count = 0;
    loop {
        let mut progress = false;
        let mut order: Vec<usize> = (0..ncols).filter(|&j| col_alive[j]).collect();
        order.sort_by_key(|&j| col_rows[j].len());
        for j in order {
            if !col_alive[j] {
                continue;
            }
            col_rows[j].retain(|&i| row_alive[i] && rows[i].contains_key(&j));
            col_rows[j].sort_unstable();
            col_rows[j].dedup();
            let pivot = col_rows[j]
                .iter()
                .copied()
                .filter(|&i| rows[i].get(&j).is_some_and(|v| v.abs().is_one()))
                .min_by_key(|&i| rows[i].len());
            let Some(p) = pivot else { continue };
            let prow = std::mem::take(&mut rows[p]);
            let pv = prow[&j].clone();
            for i in col_rows[j].clone() {
                if i == p {
                    continue;
                }
                let Some(f) = rows[i].get(&j).cloned() else { continue };
                // row_i -= f * pv * row_p (pv is ±1 so pv = pv^{-1})
                let q = &f * &pv;
                for (k, v) in &prow {
                    let e = rows[i].entry(*k).or_insert_with(BigInt::zero);
                    *e -= &q * v;
                    if e.is_zero() {
                        rows[i].remove(k);
                    } else if *k != j {
                        col_rows[*k].push(i);
                    }
                }
            }
            row_alive[p] = false;
            col_alive[j] = false;
            count += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let live_rows: Vec<usize> = (0..nrows).filter(|&i| row_alive[i]).collect();
    let live_cols: Vec<usize> = (0..ncols).filter(|&j| col_alive[j]).collect();
    let mut col_pos = vec![usize::MAX; ncols];
    for (n, &j) in live_cols.iter().enumerate() {
        col_pos[j] = n;
    }
    let mut cols = vec![Vec::new(); live_cols.len()];
    for (ni, &i) in live_rows.iter().enumerate() {
        for (k, v) in &rows[i] {
            if col_alive[*k] {
                cols[col_pos[*k]].push((ni, v.clone()));
            }
        }
    }
    (count, IntMatrix::from_sparse_columns(live_rows.len(), cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check_form(m: &IntMatrix, s: &SmithForm) {
        let d = s.u.mul(m).mul(&s.v);
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                let expect = if i == j && i < s.rank() { s.diagonal[i].clone() } else { BigInt::zero() };
                assert_eq!(d.get(i, j), expect, "entry ({i},{j})");
            }
        }
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(m.nrows()));
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(m.ncols()));
        for w in s.diagonal.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
        assert!(s.diagonal.iter().all(|x| x.is_positive()));
    }

    #[test]
    fn small_examples() {
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(invariant_factors(&m), vec![BigInt::from(2), BigInt::from(4)]);
        let s = smith_normal_form(&m);
        check_form(&m, &s);
        assert_eq!(invariant_factors(&IntMatrix::identity(3)), vec![BigInt::one(); 3]);
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = i64::MAX / 3;
        let m = IntMatrix::from_rows(&[vec![big, big - 1], vec![big - 2, big - 7]]);
        let s = smith_normal_form(&m);
        check_form(&m, &s);
        let det: BigInt = s.diagonal.iter().product();
        assert_eq!(det, m.determinant().abs());
    }

    proptest! {
        #[test]
        fn transforms_are_consistent(rows in 1usize..6, cols in 1usize..6, seed in prop::collection::vec(-6i64..7, 36)) {
            let data: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 6 + j]).collect()).collect();
            let m = IntMatrix::from_rows(&data);
            let s = smith_normal_form(&m);
            check_form(&m, &s);
            prop_assert_eq!(invariant_factors(&m), s.diagonal.clone());
        }

        #[test]
        fn product_of_factors_is_determinant(seed in prop::collection::vec(-5i64..6, 16)) {
            let data: Vec<Vec<i64>> = (0..4).map(|i| seed[i * 4..i * 4 + 4].to_vec()).collect();
            let m = IntMatrix::from_rows(&data);
            let f = invariant_factors(&m);
            let det = m.determinant().abs();
            if det.is_zero() {
                prop_assert!(f.len() < 4);
            } else {
                prop_assert_eq!(f.iter().product::<BigInt>(), det);
            }
        }
    }
}
