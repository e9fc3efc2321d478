//! The smash product of Γ-spaces as a truncated coend.
//!
//! `(F ∧ G)(k_+)` is the quotient of `⋁_{i ≤ B} F(i_+) ∧ G(Γ(i_+, k_+))` by
//! the relations `(F(α)x, y) ~ (x, G(α^*)y)` for the generating morphisms
//! `α` among `0_+, …, B_+`. This is exact whenever `F` is left Kan extended
//! from arities `≤ B`, which holds for `Γⁿ` with `n ≤ B` and for any
//! Γ-space built from those by colimits; [`stabilization`] measures it.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{structural, Result};
use crate::simplicial::{pair_index, PointedMap, SimplicialMap, SimplicialSet};
use crate::site::{FinCategory, PresheafMap, PresheafSpace};

use super::kinds::corepresentable;
use super::{digits_index, generating_morphisms, map_digits, postcompose, precompose, Gamma, GammaMap, GammaSpace};

/// Arity bound used for the coend when none is given.
pub const DEFAULT_COLIMIT_BOUND: usize = 3;

/// Classes of one simplicial degree of one section. Element ids are dense:
/// `0` is the basepoint and `(i, x, y)` with `x, y` non-base sits at
/// `offsets[i] + (x-1)·widths[i] + (y-1)`.
#[derive(Debug)]
struct DegreeTable {
    offsets: Vec<usize>,
    widths: Vec<usize>,
    class_of: Vec<u32>,
    reps: Vec<usize>,
}

impl DegreeTable {
    fn id(&self, i: usize, x: usize, y: usize) -> usize {
        if x == 0 || y == 0 {
            0
        } else {
            self.offsets[i] + (x - 1) * self.widths[i] + (y - 1)
        }
    }

    fn class(&self, i: usize, x: usize, y: usize) -> usize {
        self.class_of[self.id(i, x, y)] as usize
    }

    fn decode(&self, id: usize) -> (usize, usize, usize) {
        if id == 0 {
            return (0, 0, 0);
        }
        let i = self.offsets.partition_point(|&o| o <= id) - 1;
        let rel = id - self.offsets[i];
        (i, rel / self.widths[i] + 1, rel % self.widths[i] + 1)
    }

    fn len(&self) -> usize {
        self.class_of.len()
    }
}

#[derive(Debug)]
struct Level {
    fvals: Vec<Arc<PresheafSpace>>,
    gvals: Vec<Arc<PresheafSpace>>,
    /// `[object][degree]`
    tables: Vec<Vec<DegreeTable>>,
}

fn find(parent: &mut [u32], mut a: u32) -> u32 {
    while parent[a as usize] != a {
        parent[a as usize] = parent[parent[a as usize] as usize];
        a = parent[a as usize];
    }
    a
}

#[derive(Debug)]
struct Inner {
    f: Gamma,
    g: Gamma,
    bound: usize,
    dim: usize,
    levels: Mutex<HashMap<usize, Arc<Level>>>,
}

impl Inner {
    fn site(&self) -> &Arc<FinCategory> {
        self.f.site()
    }

    fn level(&self, k: usize) -> Result<Arc<Level>> {
        if let Some(l) = self.levels.lock().expect("level lock").get(&k) {
            return Ok(l.clone());
        }
        let l = Arc::new(self.build(k)?);
        Ok(self.levels.lock().expect("level lock").entry(k).or_insert(l).clone())
    }

    fn build(&self, k: usize) -> Result<Level> {
        let b = self.bound;
        let fvals = (0..=b).map(|i| self.f.eval(i)).collect::<Result<Vec<_>>>()?;
        let gvals = (0..=b).map(|i| self.g.eval((k + 1).pow(i as u32) - 1)).collect::<Result<Vec<_>>>()?;
        let mut relations = Vec::new();
        for alpha in generating_morphisms(b) {
            let fa = self.f.eval_map(&alpha)?;
            let ga = self.g.eval_map(&precompose(&alpha, k))?;
            relations.push((alpha.source(), alpha.target(), fa, ga));
        }
        let tables = (0..self.site().num_objects())
            .map(|o| {
                (0..=self.dim)
                    .map(|q| {
                        let mut offsets = Vec::with_capacity(b + 1);
                        let mut widths = Vec::with_capacity(b + 1);
                        let mut next = 1;
                        for i in 0..=b {
                            let w = gvals[i].value(o).size(q) - 1;
                            offsets.push(next);
                            widths.push(w.max(1));
                            next += (fvals[i].value(o).size(q) - 1) * w;
                        }
                        let mut t = DegreeTable { offsets, widths, class_of: Vec::new(), reps: Vec::new() };
                        let mut parent: Vec<u32> = (0..next as u32).collect();
                        for (i, i2, fa, ga) in &relations {
                            let (fa, ga) = (fa.component(o), ga.component(o));
                            for x in 1..fvals[*i].value(o).size(q) {
                                let fx = fa.apply(q, x);
                                for y2 in 1..gvals[*i2].value(o).size(q) {
                                    let a = t.id(*i2, fx, y2) as u32;
                                    let c = t.id(*i, x, ga.apply(q, y2)) as u32;
                                    let (ra, rc) = (find(&mut parent, a), find(&mut parent, c));
                                    if ra != rc {
                                        parent[ra.max(rc) as usize] = ra.min(rc);
                                    }
                                }
                            }
                        }
                        // roots are minimal ids, so classes are numbered by
                        // their least element and the base class is 0
                        let mut label = vec![u32::MAX; next];
                        let mut class_of = Vec::with_capacity(next);
                        for id in 0..next {
                            let r = find(&mut parent, id as u32) as usize;
                            if label[r] == u32::MAX {
                                label[r] = t.reps.len() as u32;
                                t.reps.push(id);
                            }
                            class_of.push(label[r]);
                        }
                        t.class_of = class_of;
                        t
                    })
                    .collect()
            })
            .collect();
        Ok(Level { fvals, gvals, tables })
    }

    fn value(&self, k: usize) -> Result<PresheafSpace> {
        let l = self.level(k)?;
        let dim = self.dim;
        let values = (0..self.site().num_objects())
            .map(|o| {
                let t = &l.tables[o];
                let faces = (0..=dim)
                    .map(|q| {
                        if q == 0 {
                            return vec![];
                        }
                        (0..=q)
                            .map(|j| {
                                t[q].reps
                                    .iter()
                                    .map(|&id| {
                                        let (i, x, y) = t[q].decode(id);
                                        if id == 0 {
                                            return 0;
                                        }
                                        let fx = l.fvals[i].value(o).face(q, j, x);
                                        let gy = l.gvals[i].value(o).face(q, j, y);
                                        t[q - 1].class(i, fx, gy)
                                    })
                                    .collect()
                            })
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
                                t[q].reps
                                    .iter()
                                    .map(|&id| {
                                        let (i, x, y) = t[q].decode(id);
                                        if id == 0 {
                                            return 0;
                                        }
                                        let fx = l.fvals[i].value(o).degeneracy(q, j, x);
                                        let gy = l.gvals[i].value(o).degeneracy(q, j, y);
                                        t[q + 1].class(i, fx, gy)
                                    })
                                    .collect()
                            })
                            .collect()
                    })
                    .collect();
                SimplicialSet::from_tables(dim, t.iter().map(|d| d.reps.len()).collect(), faces, degeneracies)
            })
            .collect::<Result<Vec<_>>>()?;
        let restrictions = self
            .site()
            .morphisms()
            .iter()
            .enumerate()
            .map(|(m, mor)| {
                let (src, tgt) = (mor.target, mor.source);
                let tables = (0..=dim)
                    .map(|q| {
                        l.tables[src][q]
                            .reps
                            .iter()
                            .map(|&id| {
                                if id == 0 {
                                    return 0;
                                }
                                let (i, x, y) = l.tables[src][q].decode(id);
                                let rx = l.fvals[i].restriction(m).apply(q, x);
                                let ry = l.gvals[i].restriction(m).apply(q, y);
                                l.tables[tgt][q].class(i, rx, ry)
                            })
                            .collect()
                    })
                    .collect();
                SimplicialMap::from_tables(tables)
            })
            .collect();
        PresheafSpace::new(self.site().clone(), values, restrictions)
    }

    fn induced(&self, g: &PointedMap) -> Result<PresheafMap> {
        let (la, lb) = (self.level(g.source())?, self.level(g.target())?);
        let posts = (0..=self.bound)
            .map(|i| self.g.eval_map(&postcompose(i, g)))
            .collect::<Result<Vec<_>>>()?;
        let components = (0..self.site().num_objects())
            .map(|o| {
                let tables = (0..=self.dim)
                    .map(|q| {
                        let (ta, tb) = (&la.tables[o][q], &lb.tables[o][q]);
                        ta.reps
                            .iter()
                            .map(|&id| {
                                if id == 0 {
                                    return 0;
                                }
                                let (i, x, y) = ta.decode(id);
                                tb.class(i, x, posts[i].component(o).apply(q, y))
                            })
                            .collect()
                    })
                    .collect();
                SimplicialMap::from_tables(tables)
            })
            .collect();
        Ok(PresheafMap::from_components(components))
    }
}

#[derive(Debug)]
struct SmashRule(Arc<Inner>);

impl GammaSpace for SmashRule {
    fn site(&self) -> &Arc<FinCategory> {
        self.0.site()
    }

    fn dim(&self) -> usize {
        self.0.dim
    }

    fn describe(&self) -> String {
        format!("{}∧{}", self.0.f.describe(), self.0.g.describe())
    }

    fn value(&self, k: usize) -> Result<PresheafSpace> {
        self.0.value(k)
    }

    fn induced(&self, f: &PointedMap) -> Result<PresheafMap> {
        self.0.induced(f)
    }
}

/// The smash product `F ∧ G` computed with arity bound `B`, together with
/// access to its coend presentation.
#[derive(Clone, Debug)]
pub struct SmashGamma {
    inner: Arc<Inner>,
    gamma: Gamma,
}

impl SmashGamma {
    pub fn gamma(&self) -> &Gamma {
        &self.gamma
    }

    pub fn bound(&self) -> usize {
        self.inner.bound
    }

    /// The class of `(i, x, y)` with `x ∈ F(i_+)(U)_q` and
    /// `y ∈ G(Γ(i_+, k_+))(U)_q`, as a simplex of `(F ∧ G)(k_+)(U)`.
    pub fn class(&self, k: usize, object: usize, q: usize, i: usize, x: usize, y: usize) -> Result<usize> {
        Ok(self.inner.level(k)?.tables[object][q].class(i, x, y))
    }

    /// The least representative `(i, x, y)` of a class.
    pub fn representative(&self, k: usize, object: usize, q: usize, class: usize) -> Result<(usize, usize, usize)> {
        let l = self.inner.level(k)?;
        let t = &l.tables[object][q];
        Ok(t.decode(t.reps[class]))
    }

    /// Every non-base element `(i, x, y)` of the presentation in degree `q`.
    pub fn elements(&self, k: usize, object: usize, q: usize) -> Result<Vec<(usize, usize, usize)>> {
        let l = self.inner.level(k)?;
        let t = &l.tables[object][q];
        Ok((1..t.len()).map(|id| t.decode(id)).collect())
    }

    pub fn class_count(&self, k: usize, object: usize, q: usize) -> Result<usize> {
        Ok(self.inner.level(k)?.tables[object][q].reps.len())
    }
}

/// `F ∧ G` with arity bound `bound`.
pub fn smash_gamma(f: &Gamma, g: &Gamma, bound: usize) -> Result<SmashGamma> {
    if f.site() != g.site() {
        return Err(structural("smash factors live over different sites"));
    }
    let inner = Arc::new(Inner {
        f: f.clone(),
        g: g.clone(),
        bound,
        dim: f.dim().min(g.dim()),
        levels: Mutex::new(HashMap::new()),
    });
    let gamma = Gamma::new(SmashRule(inner.clone()));
    Ok(SmashGamma { inner, gamma })
}

/// Outcome of a comparison between two Γ-spaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmashReport {
    pub name: String,
    pub passed: bool,
    /// Number of simplices compared.
    pub checked: usize,
    pub witness: Option<String>,
}

impl SmashReport {
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

/// A class-level map read off from a function on presentation elements,
/// checking that it is constant on classes and bijective onto `target`.
fn classwise(
    s: &SmashGamma,
    k: usize,
    o: usize,
    q: usize,
    target: usize,
    report: &mut SmashReport,
    mut image: impl FnMut(usize, usize, usize) -> Result<usize>,
) -> Result<Vec<usize>> {
    let n = s.class_count(k, o, q)?;
    let mut table = vec![usize::MAX; n];
    table[0] = 0;
    for (i, x, y) in s.elements(k, o, q)? {
        let c = s.class(k, o, q, i, x, y)?;
        let v = image(i, x, y)?;
        if table[c] == usize::MAX {
            table[c] = v;
        } else if table[c] != v {
            report.fail(format!("k={k}, object {o}, degree {q}: class {c} has two images"));
        }
    }
    let mut hit = vec![false; target];
    for &v in &table {
        if v < target {
            if hit[v] {
                report.fail(format!("k={k}, object {o}, degree {q}: not injective"));
            }
            hit[v] = true;
        }
    }
    if hit.iter().any(|h| !h) {
        report.fail(format!("k={k}, object {o}, degree {q}: {n} classes for {target} target simplices"));
    }
    report.checked += n;
    Ok(table.into_iter().map(|v| v.min(target.saturating_sub(1))).collect())
}

fn classwise_map(
    s: &SmashGamma,
    target: &Gamma,
    kmax: usize,
    report: &mut SmashReport,
    mut image: impl FnMut(usize, usize, usize, usize, usize, usize) -> Result<usize>,
) -> Result<Vec<PresheafMap>> {
    let mut out = Vec::new();
    for k in 0..=kmax {
        let t = target.eval(k)?;
        let comps = (0..t.site().num_objects())
            .map(|o| {
                let tables = (0..=s.gamma.dim())
                    .map(|q| classwise(s, k, o, q, t.value(o).size(q), report, |i, x, y| image(k, o, q, i, x, y)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(SimplicialMap::from_tables(tables))
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(PresheafMap::from_components(comps));
    }
    Ok(out)
}

fn finish(report: &mut SmashReport, s: &SmashGamma, target: &Gamma, comps: Vec<PresheafMap>, kmax: usize) {
    if report.passed {
        let map = GammaMap::from_components(s.gamma.clone(), target.clone(), comps);
        if let Err(e) = map.check_naturality(kmax) {
            report.fail(e.to_string());
        }
    }
}

/// `F ∧ Γⁿ ≅ F ∘ Γⁿ` via `(i, x, φ) ↦ F(φ♭)(x)` with `φ♭(a) = (b ↦ φ(b)(a))`,
/// checked to be a well-defined natural isomorphism on `0_+, …, kmax_+`.
/// For `F` not generated in low arity, such as `HA`, the coend is exact at
/// `k_+` only when `bound ≥ (k+1)ⁿ - 1`.
pub fn compare_to_composite(f: &Gamma, n: usize, bound: usize, kmax: usize) -> Result<SmashReport> {
    let gn = corepresentable(f.site().clone(), n, f.dim());
    let s = smash_gamma(f, &gn, bound)?;
    let c = super::kinds::compose_corep(f.clone(), n);
    let mut report = SmashReport::new(format!("{}∧Γ^{n} ≅ {}∘Γ^{n}", f.describe(), f.describe()));
    let mut flat_cache: HashMap<(usize, usize, usize), Arc<PresheafMap>> = HashMap::new();
    let comps = classwise_map(&s, &c, kmax, &mut report, |k, o, q, i, x, y| {
        let m = (k + 1).pow(i as u32) - 1;
        let key = (k, i, y);
        if let std::collections::hash_map::Entry::Vacant(slot) = flat_cache.entry(key) {
            let phi = map_digits(y, n, m);
            let mut table = vec![0; i + 1];
            for (a, slot) in table.iter_mut().enumerate().skip(1) {
                let values: Vec<usize> = phi.iter().map(|&p| map_digits(p, i, k)[a - 1]).collect();
                *slot = digits_index(&values, k);
            }
            let flat = PointedMap::new(i, (k + 1).pow(n as u32) - 1, table)?;
            slot.insert(f.eval_map(&flat)?);
        }
        Ok(flat_cache[&key].component(o).apply(q, x))
    })?;
    finish(&mut report, &s, &c, comps, kmax);
    Ok(report)
}

/// `Γ^m ∧ Γⁿ ≅ Γ^{mn}` via `(i, x, φ) ↦ ((r, s) ↦ φ(s)(x(r)))`.
pub fn corep_smash_iso(site: Arc<FinCategory>, m: usize, n: usize, dim: usize, bound: usize, kmax: usize) -> Result<SmashReport> {
    let (gm, gn, gmn) = (
        corepresentable(site.clone(), m, dim),
        corepresentable(site.clone(), n, dim),
        corepresentable(site, m * n, dim),
    );
    let s = smash_gamma(&gm, &gn, bound)?;
    let mut report = SmashReport::new(format!("Γ^{m}∧Γ^{n} ≅ Γ^{}", m * n));
    let comps = classwise_map(&s, &gmn, kmax, &mut report, |k, _, _, i, x, y| {
        let xr = map_digits(x, m, i);
        let phi = map_digits(y, n, (k + 1).pow(i as u32) - 1);
        let mut psi = vec![0; m * n];
        for r in 1..=m {
            for s in 1..=n {
                if xr[r - 1] != 0 {
                    psi[pair_index(r, s, n) - 1] = map_digits(phi[s - 1], i, k)[xr[r - 1] - 1];
                }
            }
        }
        Ok(digits_index(&psi, k))
    })?;
    finish(&mut report, &s, &gmn, comps, kmax);
    Ok(report)
}

/// The symmetry `F ∧ G ≅ G ∧ F` through the two-variable presentation:
/// each `(i, j, x, y, ψ)` with `ψ : (ij)_+ → k_+` is sent to
/// `(i, x, G(ψ♯)y)` and to `(j, y, F(ψ♭)x)`. The check is that these
/// classes correspond bijectively in every degree and section.
pub fn smash_symmetry(f: &Gamma, g: &Gamma, bound: usize, kmax: usize) -> Result<SmashReport> {
    let fg = smash_gamma(f, g, bound)?;
    let gf = smash_gamma(g, f, bound)?;
    let mut report = SmashReport::new(format!("{}∧{} ≅ {}∧{}", f.describe(), g.describe(), g.describe(), f.describe()));
    for k in 0..=kmax {
        for o in 0..f.site().num_objects() {
            for q in 0..=fg.gamma.dim() {
                let (n1, n2) = (fg.class_count(k, o, q)?, gf.class_count(k, o, q)?);
                let mut fwd = vec![usize::MAX; n1];
                let mut back = vec![usize::MAX; n2];
                fwd[0] = 0;
                back[0] = 0;
                for i in 1..=bound {
                    for j in 1..=bound {
                        let (fi, gj) = (f.eval(i)?, g.eval(j)?);
                        for psi in 0..(k + 1).pow((i * j) as u32) {
                            let digits = map_digits(psi, i * j, k);
                            let at = |a: usize, b: usize| digits[pair_index(a, b, j) - 1];
                            let sharp = PointedMap::new(
                                j,
                                (k + 1).pow(i as u32) - 1,
                                std::iter::once(0)
                                    .chain((1..=j).map(|b| digits_index(&(1..=i).map(|a| at(a, b)).collect::<Vec<_>>(), k)))
                                    .collect(),
                            )?;
                            let flat = PointedMap::new(
                                i,
                                (k + 1).pow(j as u32) - 1,
                                std::iter::once(0)
                                    .chain((1..=i).map(|a| digits_index(&(1..=j).map(|b| at(a, b)).collect::<Vec<_>>(), k)))
                                    .collect(),
                            )?;
                            let (gs, ff) = (g.eval_map(&sharp)?, f.eval_map(&flat)?);
                            for x in 1..fi.value(o).size(q) {
                                for y in 1..gj.value(o).size(q) {
                                    let c1 = fg.class(k, o, q, i, x, gs.component(o).apply(q, y))?;
                                    let c2 = gf.class(k, o, q, j, y, ff.component(o).apply(q, x))?;
                                    for (slot, want, dir) in [(&mut fwd[c1], c2, "forward"), (&mut back[c2], c1, "backward")] {
                                        if *slot == usize::MAX {
                                            *slot = want;
                                        } else if *slot != want {
                                            report.fail(format!("k={k}, object {o}, degree {q}: {dir} relation is not a function"));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
                if fwd.contains(&usize::MAX) || back.contains(&usize::MAX) {
                    report.fail(format!("k={k}, object {o}, degree {q}: two-variable elements miss some classes"));
                }
                for (c, &d) in fwd.iter().enumerate() {
                    if d != usize::MAX && back[d] != c {
                        report.fail(format!("k={k}, object {o}, degree {q}: relation is not a bijection"));
                    }
                }
                report.checked += n1;
            }
        }
    }
    Ok(report)
}

/// `j ∧ G : F ∧ G → F' ∧ G` for a map `j : F → F'`, with both smash
/// products at the same arity bound.
pub fn smash_map_left(j: &GammaMap, g: &Gamma, bound: usize) -> Result<(SmashGamma, SmashGamma, GammaMap)> {
    let src = smash_gamma(j.source(), g, bound)?;
    let tgt = smash_gamma(j.target(), g, bound)?;
    let comps = (0..=bound).map(|i| j.component(i)).collect::<Result<Vec<_>>>()?;
    let (s2, t2) = (src.clone(), tgt.clone());
    let dim = src.gamma.dim();
    let map = GammaMap::new(src.gamma.clone(), tgt.gamma.clone(), move |k| {
        let components = (0..s2.gamma.site().num_objects())
            .map(|o| {
                let tables = (0..=dim)
                    .map(|q| {
                        (0..s2.class_count(k, o, q)?)
                            .map(|c| {
                                if c == 0 {
                                    return Ok(0);
                                }
                                let (i, x, y) = s2.representative(k, o, q, c)?;
                                t2.class(k, o, q, i, comps[i].component(o).apply(q, x), y)
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(SimplicialMap::from_tables(tables))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PresheafMap::from_components(components))
    });
    Ok((src, tgt, map))
}

/// Compares the coend at bounds `B` and `B + 1` on `0_+, …, kmax_+`: the
/// evident map must be bijective on every simplex set.
pub fn stabilization(f: &Gamma, g: &Gamma, bound: usize, kmax: usize) -> Result<SmashReport> {
    let a = smash_gamma(f, g, bound)?;
    let b = smash_gamma(f, g, bound + 1)?;
    let mut report = SmashReport::new(format!("{} stable from arity {bound}", a.gamma.describe()));
    for k in 0..=kmax {
        for o in 0..f.site().num_objects() {
            for q in 0..=a.gamma.dim() {
                let target = b.class_count(k, o, q)?;
                let mut hit = vec![false; target];
                for c in 0..a.class_count(k, o, q)? {
                    let (i, x, y) = a.representative(k, o, q, c)?;
                    let d = b.class(k, o, q, i, x, y)?;
                    if hit[d] {
                        report.fail(format!("k={k}, object {o}, degree {q}: classes merge at arity {}", bound + 1));
                    }
                    hit[d] = true;
                }
                if hit.iter().any(|h| !h) {
                    report.fail(format!("k={k}, object {o}, degree {q}: new classes appear at arity {}", bound + 1));
                }
                report.checked += target;
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::kinds::{eilenberg_mac_lane, level};
    use crate::homology::SimplicialAbGroup;
    use crate::simplicial::boundary_quotient_sphere;
    use crate::site::SimplicialAbPresheaf;

    fn one() -> Arc<FinCategory> {
        Arc::new(FinCategory::one_point())
    }

    #[test]
    fn unit_and_corepresentables() {
        // Γ¹ is the unit
        let g1 = corepresentable(one(), 1, 1);
        let s = smash_gamma(&g1, &g1, 2).unwrap();
        for k in 0..=3 {
            assert_eq!(s.class_count(k, 0, 0).unwrap(), k + 1);
        }
        s.gamma().check_functoriality(2).unwrap();
        for (m, n) in [(1, 2), (2, 1), (2, 2), (0, 2)] {
            let r = corep_smash_iso(one(), m, n, 1, 2, 2).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn composite_comparison() {
        let h = eilenberg_mac_lane(SimplicialAbPresheaf::constant(one(), &SimplicialAbGroup::constant(&[3], 1)));
        let r = compare_to_composite(&h, 1, 2, 2).unwrap();
        assert!(r.passed, "{r:?}");
        let x = crate::site::PresheafSpace::constant(one(), &boundary_quotient_sphere(1, 2).unwrap());
        let r = compare_to_composite(&level(1, x), 2, 2, 2).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn symmetry_and_stability() {
        let g1 = corepresentable(one(), 1, 1);
        let g2 = corepresentable(one(), 2, 1);
        let r = smash_symmetry(&g1, &g2, 2, 2).unwrap();
        assert!(r.passed, "{r:?}");
        let r = smash_symmetry(&g2, &g2, 2, 1).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(stabilization(&g2, &g1, 2, 2).unwrap().passed);
        // a two-variable functor is not seen by arity 1
        let r = stabilization(&g2, &g1, 1, 2).unwrap();
        assert!(!r.passed);
    }
}
