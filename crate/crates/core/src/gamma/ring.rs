//! Γ-rings and Γ-modules.
//!
//! A multiplication `R ∧ R → R` is the same as a family of external
//! pairings `μ_{i,j} : R(i_+) ∧ R(j_+) → R((ij)_+)`, natural in both
//! variables, with `(ij)_+` identified with `i_+ ∧ j_+` lexicographically.
//! The laws are checked on these pairings elementwise, and the induced map
//! out of the computed smash product is checked to be well defined.
//! For `H` of a ring with infinite underlying groups the laws are checked
//! on structure constants, which is exact by multilinearity.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{structural, Result};
use crate::simplicial::{pair_index, PointedMap, SimplicialMap};
use crate::site::{FinCategory, PresheafMap, SimplicialAbPresheaf};
use crate::homology::SimplicialAbGroup;

use super::kinds::{corepresentable, eilenberg_mac_lane, power_digits};
use super::smash::{smash_gamma, SmashGamma};
use super::{generating_morphisms, map_digits, Gamma, GammaMap};

type PairingFn = dyn Fn(usize, usize, usize, usize, usize, usize) -> usize + Send + Sync;

/// External pairings `L(i_+) ∧ M(j_+) → T((ij)_+)`, given as
/// `(i, j, object, degree, x, y) ↦ simplex`, with `x, y` non-base.
#[derive(Clone)]
pub struct Pairing {
    pub left: Gamma,
    pub right: Gamma,
    pub target: Gamma,
    mul: Arc<PairingFn>,
    /// Unit vertex of `left(1_+)` over each object, if any.
    pub unit: Option<Vec<usize>>,
}

impl fmt::Debug for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pairing({} ∧ {} → {})", self.left.describe(), self.right.describe(), self.target.describe())
    }
}

impl Pairing {
    pub fn new(
        left: Gamma,
        right: Gamma,
        target: Gamma,
        unit: Option<Vec<usize>>,
        mul: impl Fn(usize, usize, usize, usize, usize, usize) -> usize + Send + Sync + 'static,
    ) -> Self {
        Self { left, right, target, mul: Arc::new(mul), unit }
    }

    pub fn apply(&self, i: usize, j: usize, object: usize, q: usize, x: usize, y: usize) -> usize {
        if x == 0 || y == 0 {
            0
        } else {
            (self.mul)(i, j, object, q, x, y)
        }
    }

    /// The map `L ∧ M → T` out of the smash product computed at arity
    /// bound `bound`: `(i, x, y)` with `y ∈ M(Γ(i_+, k_+))` goes to
    /// `T(ev)(μ(x, y))`, `ev(r, φ) = φ(r)`. The report records whether this
    /// is constant on every class, i.e. whether the pairing descends to the
    /// coend.
    pub fn smash_map(&self, bound: usize, kmax: usize) -> Result<(SmashGamma, GammaMap, LawReport)> {
        let s = smash_gamma(&self.left, &self.right, bound)?;
        let mut report = LawReport::new(format!("{:?} descends to the smash product", self));
        let dim = s.gamma().dim();
        let mut comps = Vec::new();
        for k in 0..=kmax {
            let target = self.target.eval(k)?;
            let evs = (0..=bound)
                .map(|i| {
                    let m = (k + 1).pow(i as u32) - 1;
                    let table = std::iter::once(0)
                        .chain((1..=i).flat_map(|r| (1..=m).map(move |p| map_digits(p, i, k)[r - 1])))
                        .collect();
                    self.target.eval_map(&PointedMap::new(i * m, k, table)?)
                })
                .collect::<Result<Vec<_>>>()?;
            let objects = (0..self.left.site().num_objects())
                .map(|o| {
                    let tables = (0..=dim)
                        .map(|q| {
                            let n = s.class_count(k, o, q)?;
                            let mut t = vec![usize::MAX; n];
                            t[0] = 0;
                            for (i, x, y) in s.elements(k, o, q)? {
                                let m = (k + 1).pow(i as u32) - 1;
                                let v = evs[i].component(o).apply(q, self.apply(i, m, o, q, x, y));
                                let c = s.class(k, o, q, i, x, y)?;
                                if t[c] == usize::MAX {
                                    t[c] = v;
                                } else if t[c] != v {
                                    report.fail(format!("k={k}, object {o}, degree {q}: class {c} has two products"));
                                }
                                report.checked += 1;
                            }
                            Ok(t.into_iter().map(|v| if v == usize::MAX { 0 } else { v }).collect())
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Ok(SimplicialMap::from_tables(tables))
                })
                .collect::<Result<Vec<_>>>()?;
            let map = PresheafMap::from_components(objects);
            if let Err(e) = map.validate(&*s.gamma().eval(k)?, &target) {
                report.fail(format!("k={k}: {e}"));
            }
            comps.push(map);
        }
        let gm = GammaMap::from_components(s.gamma().clone(), self.target.clone(), comps);
        if report.passed {
            if let Err(e) = gm.check_naturality(kmax) {
                report.fail(e.to_string());
            }
        }
        Ok((s, gm, report))
    }
}

/// Outcome of a law check, with a concrete witness on failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub witness: Option<String>,
}

impl LawReport {
    fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), passed: true, checked: 0, witness: None }
    }

    fn fail(&mut self, why: String) {
        if self.passed {
            self.passed = false;
            self.witness = Some(why);
        }
    }
}

fn unit_simplex(g: &Gamma, unit: &[usize], o: usize, q: usize) -> Result<usize> {
    let x = g.eval(1)?;
    Ok((0..q).fold(unit[o], |v, d| x.value(o).degeneracy(d, 0, v)))
}

/// Arity triples `(i, j, k)` with positive entries and `ijk ≤ max_arity`.
fn triples(max_arity: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=max_arity {
        for j in 1..=max_arity / i {
            for k in 1..=max_arity / (i * j) {
                out.push((i, j, k));
            }
        }
    }
    out
}

/// Checks that a pairing is simplicial, natural in each variable over the
/// site and along the generating morphisms, for arities with product at
/// most `max_arity`.
pub fn check_pairing(p: &Pairing, max_arity: usize) -> Result<LawReport> {
    let mut report = LawReport::new(format!("{p:?} is natural"));
    let dim = p.left.dim().min(p.right.dim());
    let site = p.left.site().clone();
    for i in 1..=max_arity {
        for j in 1..=max_arity / i {
            let (li, mj, tij) = (p.left.eval(i)?, p.right.eval(j)?, p.target.eval(i * j)?);
            for o in 0..site.num_objects() {
                for q in 0..=dim {
                    for x in 1..li.value(o).size(q) {
                        for y in 1..mj.value(o).size(q) {
                            let z = p.apply(i, j, o, q, x, y);
                            report.checked += 1;
                            if q > 0 {
                                for d in 0..=q {
                                    let lhs = p.apply(i, j, o, q - 1, li.value(o).face(q, d, x), mj.value(o).face(q, d, y));
                                    if lhs != tij.value(o).face(q, d, z) {
                                        report.fail(format!("d_{d} fails at i={i}, j={j}, object {o}, degree {q}, x={x}, y={y}"));
                                    }
                                }
                            }
                            if q < dim {
                                for d in 0..=q {
                                    let lhs =
                                        p.apply(i, j, o, q + 1, li.value(o).degeneracy(q, d, x), mj.value(o).degeneracy(q, d, y));
                                    if lhs != tij.value(o).degeneracy(q, d, z) {
                                        report.fail(format!("s_{d} fails at i={i}, j={j}, object {o}, degree {q}, x={x}, y={y}"));
                                    }
                                }
                            }
                            for (m, mor) in site.morphisms().iter().enumerate() {
                                if mor.target != o {
                                    continue;
                                }
                                let s = mor.source;
                                let lhs = p.apply(i, j, s, q, li.restriction(m).apply(q, x), mj.restriction(m).apply(q, y));
                                if lhs != tij.restriction(m).apply(q, z) {
                                    report.fail(format!("restriction {m} fails at i={i}, j={j}, degree {q}, x={x}, y={y}"));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    for alpha in generating_morphisms(max_arity) {
        let (a, b) = (alpha.source(), alpha.target());
        if a == 0 || b == 0 {
            continue;
        }
        for j in 1..=max_arity / a.max(b) {
            let id = PointedMap::identity(j);
            let (la, mj) = (p.left.eval(a)?, p.right.eval(j)?);
            let (lf, tf) = (p.left.eval_map(&alpha)?, p.target.eval_map(&alpha.smash(&id))?);
            let (ma, lj) = (p.right.eval(a)?, p.left.eval(j)?);
            let (mf, tf2) = (p.right.eval_map(&alpha)?, p.target.eval_map(&id.smash(&alpha))?);
            for o in 0..site.num_objects() {
                for q in 0..=dim {
                    for x in 1..la.value(o).size(q) {
                        for y in 1..mj.value(o).size(q) {
                            let lhs = p.apply(b, j, o, q, lf.component(o).apply(q, x), y);
                            if lhs != tf.component(o).apply(q, p.apply(a, j, o, q, x, y)) {
                                report.fail(format!("left naturality fails for {:?}, j={j}, object {o}, degree {q}", alpha.table()));
                            }
                        }
                    }
                    for x in 1..lj.value(o).size(q) {
                        for y in 1..ma.value(o).size(q) {
                            let lhs = p.apply(j, b, o, q, x, mf.component(o).apply(q, y));
                            if lhs != tf2.component(o).apply(q, p.apply(j, a, o, q, x, y)) {
                                report.fail(format!("right naturality fails for {:?}, i={j}, object {o}, degree {q}", alpha.table()));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Associativity and two-sided unit for a multiplication on `R`, checked
/// on every simplex for arity products up to `max_arity`.
pub fn check_pairing_monoid(p: &Pairing, max_arity: usize) -> Result<LawReport> {
    let mut report = LawReport::new(format!("{} is a monoid", p.target.describe()));
    let r = &p.target;
    let dim = r.dim();
    for (i, j, k) in triples(max_arity) {
        let (ri, rj, rk) = (r.eval(i)?, r.eval(j)?, r.eval(k)?);
        for o in 0..r.site().num_objects() {
            for q in 0..=dim {
                for x in 1..ri.value(o).size(q) {
                    for y in 1..rj.value(o).size(q) {
                        let xy = p.apply(i, j, o, q, x, y);
                        for z in 1..rk.value(o).size(q) {
                            let lhs = p.apply(i * j, k, o, q, xy, z);
                            let rhs = p.apply(i, j * k, o, q, x, p.apply(j, k, o, q, y, z));
                            report.checked += 1;
                            if lhs != rhs {
                                report.fail(format!(
                                    "associativity fails at arities ({i}, {j}, {k}), object {o}, degree {q}: x={x}, y={y}, z={z} give {lhs} and {rhs}"
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    check_units(p, max_arity, true, &mut report)?;
    Ok(report)
}

fn check_units(p: &Pairing, max_arity: usize, two_sided: bool, report: &mut LawReport) -> Result<()> {
    let Some(unit) = &p.unit else {
        report.fail("no unit given".into());
        return Ok(());
    };
    let dim = p.target.dim();
    for j in 1..=max_arity {
        let mj = p.right.eval(j)?;
        for o in 0..p.target.site().num_objects() {
            for q in 0..=dim {
                let e = unit_simplex(&p.left, unit, o, q)?;
                for y in 1..mj.value(o).size(q) {
                    report.checked += 1;
                    if p.apply(1, j, o, q, e, y) != y {
                        report.fail(format!("left unit fails at arity {j}, object {o}, degree {q}, y={y}"));
                    }
                    if two_sided && p.apply(j, 1, o, q, y, e) != y {
                        report.fail(format!("right unit fails at arity {j}, object {o}, degree {q}, x={y}"));
                    }
                }
            }
        }
    }
    Ok(())
}

/// The action laws `(rs)m = r(sm)` and `1m = m` for a module pairing
/// `action : R ∧ M → M` over a monoid pairing `ring` on `R`.
pub fn check_pairing_module(ring: &Pairing, action: &Pairing, max_arity: usize) -> Result<LawReport> {
    let mut report = LawReport::new(format!("{} is a module", action.target.describe()));
    let (r, m) = (&ring.target, &action.target);
    for (i, j, k) in triples(max_arity) {
        let (ri, rj, mk) = (r.eval(i)?, r.eval(j)?, m.eval(k)?);
        for o in 0..r.site().num_objects() {
            for q in 0..=m.dim().min(r.dim()) {
                for x in 1..ri.value(o).size(q) {
                    for y in 1..rj.value(o).size(q) {
                        let xy = ring.apply(i, j, o, q, x, y);
                        for z in 1..mk.value(o).size(q) {
                            report.checked += 1;
                            let lhs = action.apply(i * j, k, o, q, xy, z);
                            let rhs = action.apply(i, j * k, o, q, x, action.apply(j, k, o, q, y, z));
                            if lhs != rhs {
                                report.fail(format!("action fails at arities ({i}, {j}, {k}), object {o}, degree {q}: r={x}, s={y}, m={z}"));
                            }
                        }
                    }
                }
            }
        }
    }
    check_units(action, max_arity, false, &mut report)?;
    Ok(report)
}

/// The unit pairing on `Γ¹`: `(r, s) ↦ (r, s)` in `(ij)_+`.
pub fn gamma_one_pairing(site: Arc<FinCategory>, dim: usize) -> Pairing {
    let g1 = corepresentable(site.clone(), 1, dim);
    let unit = vec![1; site.num_objects()];
    Pairing::new(g1.clone(), g1.clone(), g1, Some(unit), |_, j, _, _, r, s| pair_index(r, s, j))
}

/// A ring structure on `⊕ Z/oᵢ` given by structure constants:
/// `table[a][b]` is the product of basis elements `a` and `b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearRing {
    pub orders: Vec<u64>,
    pub table: Vec<Vec<Vec<i64>>>,
    pub unit: Option<Vec<i64>>,
}

impl LinearRing {
    /// `Z/n` (or `Z` for `n = 0`) with its usual multiplication.
    pub fn cyclic(n: u64) -> Self {
        Self { orders: vec![n], table: vec![vec![vec![1]]], unit: Some(vec![1]) }
    }

    /// `Z²` (or `(Z/n)²`) with a multiplication that has a left unit but is
    /// not associative: `e₁e₁ = e₁`, `e₁e₂ = e₂`, `e₂e₁ = 0`, `e₂e₂ = e₂`.
    pub fn perturbed(n: u64) -> Self {
        Self {
            orders: vec![n, n],
            table: vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 0], vec![0, 1]]],
            unit: Some(vec![1, 0]),
        }
    }

    fn reduce(&self, v: Vec<i64>) -> Vec<i64> {
        v.into_iter().zip(&self.orders).map(|(c, &o)| if o == 0 { c } else { c.rem_euclid(o as i64) }).collect()
    }

    pub fn mul(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let r = self.orders.len();
        let mut out = vec![0; r];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                if x != 0 && y != 0 {
                    for (c, &t) in self.table[i][j].iter().enumerate() {
                        out[c] += x * y * t;
                    }
                }
            }
        }
        self.reduce(out)
    }

    fn basis(&self, i: usize) -> Vec<i64> {
        (0..self.orders.len()).map(|j| i64::from(i == j)).collect()
    }

    /// Whether the structure constants respect the orders, i.e. define a
    /// bilinear map on `⊕ Z/oᵢ`.
    fn well_defined(&self) -> bool {
        let r = self.orders.len();
        (0..r).all(|a| {
            (0..r).all(|b| {
                let g = gcd(self.orders[a], self.orders[b]);
                self.table[a][b].iter().zip(&self.orders).all(|(&t, &o)| match (g, o) {
                    (0, _) => true,
                    (_, 0) => t == 0,
                    _ => (t * g as i64).rem_euclid(o as i64) == 0,
                })
            })
        })
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Associativity and unit laws on basis elements; exact by multilinearity.
pub fn check_linear_ring(ring: &LinearRing) -> LawReport {
    let mut report = LawReport::new("ring laws on structure constants");
    if !ring.well_defined() {
        report.fail("structure constants do not respect the orders".into());
    }
    let r = ring.orders.len();
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                let (ea, eb, ec) = (ring.basis(a), ring.basis(b), ring.basis(c));
                let lhs = ring.mul(&ring.mul(&ea, &eb), &ec);
                let rhs = ring.mul(&ea, &ring.mul(&eb, &ec));
                report.checked += 1;
                if lhs != rhs {
                    report.fail(format!("(e{} e{}) e{} = {lhs:?} but e{} (e{} e{}) = {rhs:?}", a + 1, b + 1, c + 1, a + 1, b + 1, c + 1));
                }
            }
        }
    }
    match &ring.unit {
        None => report.fail("no unit given".into()),
        Some(u) => {
            for a in 0..r {
                let ea = ring.basis(a);
                if ring.mul(u, &ea) != ea || ring.mul(&ea, u) != ea {
                    report.fail(format!("unit fails on e{}", a + 1));
                }
            }
        }
    }
    report
}

/// A module over a [`LinearRing`]: `action[a][m]` is the action of the
/// ring basis element `a` on the module basis element `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearModule {
    pub orders: Vec<u64>,
    pub action: Vec<Vec<Vec<i64>>>,
}

impl LinearModule {
    fn act(&self, r: &[i64], m: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.orders.len()];
        for (a, &x) in r.iter().enumerate() {
            for (b, &y) in m.iter().enumerate() {
                for (c, &t) in self.action[a][b].iter().enumerate() {
                    out[c] += x * y * t;
                }
            }
        }
        out.into_iter().zip(&self.orders).map(|(c, &o)| if o == 0 { c } else { c.rem_euclid(o as i64) }).collect()
    }
}

/// `(rs)m = r(sm)` and `1m = m` on basis elements.
pub fn check_linear_module(ring: &LinearRing, module: &LinearModule) -> LawReport {
    let mut report = LawReport::new("module laws on structure constants");
    let (r, n) = (ring.orders.len(), module.orders.len());
    let mb = |i: usize| -> Vec<i64> { (0..n).map(|j| i64::from(i == j)).collect() };
    for a in 0..r {
        for b in 0..r {
            for m in 0..n {
                report.checked += 1;
                let lhs = module.act(&ring.mul(&ring.basis(a), &ring.basis(b)), &mb(m));
                let rhs = module.act(&ring.basis(a), &module.act(&ring.basis(b), &mb(m)));
                if lhs != rhs {
                    report.fail(format!("(e{} e{}) m{} ≠ e{} (e{} m{})", a + 1, b + 1, m + 1, a + 1, b + 1, m + 1));
                }
            }
        }
    }
    if let Some(u) = &ring.unit {
        for m in 0..n {
            if module.act(u, &mb(m)) != mb(m) {
                report.fail(format!("unit does not fix m{}", m + 1));
            }
        }
    }
    report
}

fn element_digits(mut idx: usize, orders: &[u64]) -> Vec<i64> {
    let mut v = vec![0; orders.len()];
    for i in (0..orders.len()).rev() {
        v[i] = (idx % orders[i] as usize) as i64;
        idx /= orders[i] as usize;
    }
    v
}

fn element_index(v: &[i64], orders: &[u64]) -> usize {
    v.iter().zip(orders).fold(0, |acc, (&c, &o)| acc * o as usize + c as usize)
}

/// `H` of a finite ring, constant over the site, with the pairing
/// `((a_r), (b_s)) ↦ (a_r b_s)_{(r, s)}`.
pub fn h_pairing(site: Arc<FinCategory>, ring: &LinearRing, dim: usize) -> Result<Pairing> {
    if ring.orders.contains(&0) {
        return Err(structural("set-level pairings need a finite ring; use the structure-constant check"));
    }
    let a = SimplicialAbPresheaf::constant(site.clone(), &SimplicialAbGroup::constant(&ring.orders, dim));
    let h = eilenberg_mac_lane(a);
    let s: usize = ring.orders.iter().map(|&o| o as usize).product();
    let unit = ring.unit.as_ref().map(|u| vec![element_index(u, &ring.orders); site.num_objects()]);
    let r = ring.clone();
    Ok(Pairing::new(h.clone(), h.clone(), h, unit, move |i, j, _, _, x, y| {
        let (xs, ys) = (power_digits(x, i, s), power_digits(y, j, s));
        let mut out = vec![0; i * j];
        for (a, &u) in xs.iter().enumerate() {
            for (b, &v) in ys.iter().enumerate() {
                let prod = r.mul(&element_digits(u, &r.orders), &element_digits(v, &r.orders));
                out[a * j + b] = element_index(&prod, &r.orders);
            }
        }
        out.iter().fold(0, |acc, &d| acc * s + d)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> Arc<FinCategory> {
        Arc::new(FinCategory::one_point())
    }

    #[test]
    fn unit_object_and_h_rings() {
        let p = gamma_one_pairing(one(), 1);
        assert!(check_pairing(&p, 4).unwrap().passed);
        assert!(check_pairing_monoid(&p, 6).unwrap().passed);
        let h = h_pairing(one(), &LinearRing::cyclic(2), 1).unwrap();
        assert!(check_pairing(&h, 4).unwrap().passed);
        let r = check_pairing_monoid(&h, 4).unwrap();
        assert!(r.passed, "{r:?}");
        let r = check_pairing_module(&h, &h, 4).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(check_linear_ring(&LinearRing::cyclic(0)).passed);
    }

    #[test]
    fn perturbed_multiplication_fails() {
        let r = check_linear_ring(&LinearRing::perturbed(0));
        assert!(!r.passed);
        assert!(r.witness.unwrap().contains("(e2 e1) e2"));
        let h = h_pairing(one(), &LinearRing::perturbed(2), 0).unwrap();
        assert!(check_pairing(&h, 2).unwrap().passed);
        let r = check_pairing_monoid(&h, 2).unwrap();
        assert!(!r.passed);
        assert!(r.witness.unwrap().starts_with("associativity fails at arities (1, 1, 1)"));
    }

    #[test]
    fn modules() {
        let z = LinearRing::cyclic(0);
        let z2 = LinearModule { orders: vec![2], action: vec![vec![vec![1]]] };
        assert!(check_linear_module(&z, &z2).passed);
        let bad = LinearModule { orders: vec![0], action: vec![vec![vec![2]]] };
        assert!(!check_linear_module(&z, &bad).passed);
    }

    #[test]
    fn pairings_descend_to_the_smash_product() {
        let p = gamma_one_pairing(one(), 1);
        let (_, _, r) = p.smash_map(2, 2).unwrap();
        assert!(r.passed, "{r:?}");
        let h = h_pairing(one(), &LinearRing::cyclic(2), 1).unwrap();
        let (_, _, r) = h.smash_map(2, 1).unwrap();
        assert!(r.passed, "{r:?}");
    }
}
