//! `Σ_m × Σ_n`-equivariance of the iterated structure maps
//! `S^m ∧ E^n → E^{m+n}` of `Sp(F)`.
//!
//! A non-basepoint simplex of `Sᵏ_q` is a word of `k` letters in
//! `1..=q`, one per circle factor, first factor most significant; `Σ_k`
//! permutes the letters and acts on `Sp(F)^k` through `F`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::Gamma;
use crate::simplicial::PointedMap;

use super::sp::block_embedding;
use super::{sp, tuple_digits, tuple_index, LinearSpectrum};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivarianceReport {
    pub name: String,
    pub m: usize,
    pub n: usize,
    /// Number of equivariance squares checked elementwise.
    pub squares: usize,
    pub passed: bool,
    pub witness: Option<String>,
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for slot in 0..k {
            let mut q = p.clone();
            q.insert(slot, k - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// The letter permutation on the non-basepoint simplices of `Sᵏ_q`, as
/// a table on `0..=q^k`: letter `i` moves to position `perm[i]`.
fn permute_letters(perm: &[usize], q: usize) -> Vec<usize> {
    let k = perm.len();
    let size = q.pow(k as u32);
    std::iter::once(0)
        .chain((0..size).map(|x| {
            let digits = tuple_digits(x, q, k);
            let mut out = vec![0; k];
            for (i, &d) in digits.iter().enumerate() {
                out[perm[i]] = d;
            }
            tuple_index(&out, q) + 1
        }))
        .collect()
}

fn joined(p: &[usize], r: &[usize]) -> Vec<usize> {
    p.iter().copied().chain(r.iter().map(|&i| i + p.len())).collect()
}

fn check_levels(m: usize, n: usize, l: usize) -> Result<()> {
    if m + n > l {
        return Err(Error::DimensionBound(format!("S^{m} ∧ E^{n} lands in level {}, above the level bound {l}", m + n)));
    }
    Ok(())
}

/// Checks `σ^{m,n}(πu ∧ ρx) = (π × ρ)·σ^{m,n}(u ∧ x)` for every pair of
/// permutations, object, degree `≤ dim` and simplex of `S^m ∧ Sp(F)^n`,
/// where `σ^{m,n}` is the composite of `m` structure maps of `Sp(F)`.
pub fn symmetric_equivariance_check(f: &Gamma, m: usize, n: usize, l: usize, dim: usize) -> Result<EquivarianceReport> {
    check_levels(m, n, l)?;
    let e = sp(f, m + n, dim)?;
    let mut report = EquivarianceReport { name: e.name().to_string(), m, n, squares: 0, passed: true, witness: None };
    for q in 1..=dim {
        let action = |perm: &[usize]| -> Result<Vec<Vec<usize>>> {
            let table = permute_letters(perm, q);
            let s = table.len() - 1;
            let induced = f.eval_map(&PointedMap::new(s, s, table)?)?;
            Ok((0..f.site().num_objects()).map(|o| induced.component(o).table(q).to_vec()).collect())
        };
        for pi in permutations(m) {
            for rho in permutations(n) {
                let (act_n, act_mn) = (action(&rho)?, action(&joined(&pi, &rho))?);
                let move_u = permute_letters(&pi, q);
                for o in 0..f.site().num_objects() {
                    let iterate = |u: usize, x: usize| -> usize {
                        let letters = tuple_digits(u - 1, q, m);
                        let mut y = x;
                        for (step, &c) in letters.iter().rev().enumerate() {
                            if y == 0 {
                                return 0;
                            }
                            let k = n + step;
                            let width = e.level(k).value(o).size(q) - 1;
                            y = e.structure_map(k).component(o).apply(q, c * width + y);
                        }
                        y
                    };
                    for u in 1..=q.pow(m as u32) {
                        for x in 0..e.level(n).value(o).size(q) {
                            report.squares += 1;
                            let lhs = iterate(move_u[u], act_n[o][x]);
                            let rhs = act_mn[o][iterate(u, x)];
                            if lhs != rhs && report.passed {
                                report.passed = false;
                                report.witness = Some(format!(
                                    "degree {q}, object {o}, permutations {pi:?} × {rho:?}, simplex {u} ∧ {x}: {lhs} ≠ {rhs}"
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Generator permutation matrix of `π` on `A ⊗ Z̃[Sᵏ_q]`, generators
/// `(x - 1) · rank + c`.
fn linear_action(perm: &[usize], q: usize, rank: usize) -> Vec<usize> {
    let table = permute_letters(perm, q);
    (0..(table.len() - 1) * rank).map(|g| (table[g / rank + 1] - 1) * rank + g % rank).collect()
}

fn reduce(v: &[BigInt], orders: &[u64]) -> Vec<BigInt> {
    v.iter()
        .zip(orders)
        .map(|(x, &o)| if o == 0 { x.clone() } else { ((x % o) + o) % o })
        .collect()
}

/// The same check for a linear spectrum whose level `k` is
/// `A ⊗ Z̃[Sᵏ]`, such as `Sp(HA)` from [`super::sp_linear`]. Every basis
/// vector of `Z̃[S^m] ⊗ E^n` is pushed through both sides of the square.
pub fn symmetric_equivariance_check_linear(e: &LinearSpectrum, m: usize, n: usize) -> Result<EquivarianceReport> {
    check_levels(m, n, e.level_bound())?;
    let dim = e.dim();
    let mut report = EquivarianceReport { name: e.name().to_string(), m, n, squares: 0, passed: true, witness: None };
    for o in 0..e.site().num_objects() {
        for q in 1..=dim {
            let rank_of = |k: usize| e.level(k).value(o).rank(q);
            let base = rank_of(0);
            let iterate = |u: usize, v: Vec<BigInt>| -> Vec<BigInt> {
                let letters = tuple_digits(u - 1, q, m);
                let mut y = v;
                for (step, &c) in letters.iter().rev().enumerate() {
                    let k = n + step;
                    let embedded = block_embedding(c + 1, rank_of(k), q).mul_vec(&y);
                    y = e.structure_map(k, o).matrix(q).mul_vec(&embedded);
                }
                y
            };
            let orders = e.level(m + n).value(o).orders(q).to_vec();
            for pi in permutations(m) {
                for rho in permutations(n) {
                    let act_n = linear_action(&rho, q, base);
                    let act_mn = linear_action(&joined(&pi, &rho), q, base);
                    let move_u = permute_letters(&pi, q);
                    for u in 1..=q.pow(m as u32) {
                        for g in 0..rank_of(n) {
                            report.squares += 1;
                            let unit = |i: usize, len: usize| -> Vec<BigInt> {
                                (0..len).map(|j| if j == i { BigInt::from(1) } else { BigInt::zero() }).collect()
                            };
                            let lhs = iterate(move_u[u], unit(act_n[g], rank_of(n)));
                            let image = iterate(u, unit(g, rank_of(n)));
                            let mut rhs = vec![BigInt::zero(); image.len()];
                            for (i, x) in image.into_iter().enumerate() {
                                rhs[act_mn[i]] += x;
                            }
                            if reduce(&lhs, &orders) != reduce(&rhs, &orders) && report.passed {
                                report.passed = false;
                                report.witness =
                                    Some(format!("degree {q}, object {o}, permutations {pi:?} × {rho:?}, generator {u} ⊗ {g}"));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::gamma::corepresentable;
    use crate::homology::SimplicialAbGroup;
    use crate::site::{FinCategory, SimplicialAbPresheaf};
    use crate::spectra::sp_linear;

    fn one() -> Arc<FinCategory> {
        Arc::new(FinCategory::one_point())
    }

    #[test]
    fn letter_permutations() {
        assert_eq!(permutations(3).len(), 6);
        // swapping the two letters of S²_2: (1,2) ↔ (2,1)
        assert_eq!(permute_letters(&[1, 0], 2), vec![0, 1, 3, 2, 4]);
    }

    #[test]
    fn corepresentable_swap() {
        let r = symmetric_equivariance_check(&corepresentable(one(), 1, 3), 1, 1, 2, 3).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.squares > 0);
        let r = symmetric_equivariance_check(&corepresentable(one(), 1, 3), 0, 2, 2, 3).unwrap();
        assert!(r.passed);
    }

    #[test]
    fn integral_eilenberg_mac_lane() {
        let a = SimplicialAbPresheaf::constant(one(), &SimplicialAbGroup::constant(&[0], 3));
        let e = sp_linear(&a, 2, "H(Z)").unwrap();
        for (m, n) in [(1, 1), (2, 0), (0, 2)] {
            let r = symmetric_equivariance_check_linear(&e, m, n).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn level_bound_is_enforced() {
        assert!(matches!(
            symmetric_equivariance_check(&corepresentable(one(), 1, 3), 2, 1, 2, 3),
            Err(Error::DimensionBound(_))
        ));
    }
}
