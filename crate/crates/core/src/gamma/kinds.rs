//! Procedural and tabulated Γ-spaces.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{structural, Error, Result};
use crate::homology::SimplicialAbGroup;
use crate::simplicial::{
    discrete, point, pointed_maps, product, product_maps, wedge, wedge_maps, PointedMap, SimplicialMap,
    SimplicialSet,
};
use crate::site::{FinCategory, PresheafMap, PresheafSpace, SimplicialAbPresheaf, Slice};

use super::{postcompose, Gamma, GammaMap, GammaSpace};

/// Largest degreewise group order for which `H(A)` is evaluated as sets.
pub const FINITE_ELEMENT_CAP: usize = 4096;

#[derive(Debug)]
struct Corep {
    site: Arc<FinCategory>,
    n: usize,
    dim: usize,
}

impl GammaSpace for Corep {
    fn site(&self) -> &Arc<FinCategory> {
        &self.site
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn describe(&self) -> String {
        format!("Γ^{}", self.n)
    }

    fn value(&self, k: usize) -> Result<PresheafSpace> {
        Ok(PresheafSpace::constant(self.site.clone(), &discrete((k + 1).pow(self.n as u32), self.dim)))
    }

    fn induced(&self, f: &PointedMap) -> Result<PresheafMap> {
        let table = postcompose(self.n, f).table().to_vec();
        let m = SimplicialMap::from_tables(vec![table; self.dim + 1]);
        Ok(PresheafMap::from_components(vec![m; self.site.num_objects()]))
    }
}

/// The corepresentable Γ-space `Γⁿ = Γ(n_+, −)`, discrete and constant over
/// the site. `Γ⁰` is the point.
pub fn corepresentable(site: Arc<FinCategory>, n: usize, dim: usize) -> Gamma {
    Gamma::new(Corep { site, n, dim })
}

/// The underlying pointed simplicial set of a finite simplicial abelian
/// group with its addition tables.
#[derive(Debug)]
struct FiniteAb {
    under: SimplicialSet,
    add: Vec<Vec<usize>>,
}

fn element_count(orders: &[u64]) -> Option<usize> {
    orders.iter().try_fold(1usize, |acc, &o| {
        if o == 0 {
            None
        } else {
            acc.checked_mul(o as usize).filter(|&n| n <= FINITE_ELEMENT_CAP)
        }
    })
}

fn decode(mut idx: usize, orders: &[u64]) -> Vec<u64> {
    let mut v = vec![0; orders.len()];
    for i in (0..orders.len()).rev() {
        v[i] = (idx % orders[i] as usize) as u64;
        idx /= orders[i] as usize;
    }
    v
}

fn encode(v: &[u64], orders: &[u64]) -> usize {
    v.iter().zip(orders).fold(0, |acc, (&c, &o)| acc * o as usize + c as usize)
}

fn apply_reduced(m: &crate::homology::IntMatrix, v: &[u64], target: &[u64]) -> usize {
    let x: Vec<BigInt> = v.iter().map(|&c| BigInt::from(c)).collect();
    let y = m.mul_vec(&x);
    let reduced: Vec<u64> = y
        .iter()
        .zip(target)
        .map(|(c, &o)| c.mod_floor(&BigInt::from(o)).to_u64().expect("reduced coordinate"))
        .collect();
    encode(&reduced, target)
}

fn element_table(m: &crate::homology::IntMatrix, source: &[u64], target: &[u64]) -> Vec<usize> {
    let n = element_count(source).expect("finite");
    (0..n).map(|e| apply_reduced(m, &decode(e, source), target)).collect()
}

impl FiniteAb {
    fn new(a: &SimplicialAbGroup) -> Option<Self> {
        let dim = a.dim();
        let sizes = (0..=dim).map(|k| element_count(a.orders(k))).collect::<Option<Vec<_>>>()?;
        let faces = (0..=dim)
            .map(|k| {
                if k == 0 {
                    vec![]
                } else {
                    (0..=k).map(|i| element_table(a.face(k, i), a.orders(k), a.orders(k - 1))).collect()
                }
            })
            .collect();
        let degeneracies = (0..=dim)
            .map(|k| {
                if k < dim {
                    (0..=k).map(|j| element_table(a.degeneracy(k, j), a.orders(k), a.orders(k + 1))).collect()
                } else {
                    vec![]
                }
            })
            .collect();
        let under = SimplicialSet::from_tables(dim, sizes.clone(), faces, degeneracies).ok()?;
        let add = (0..=dim)
            .map(|k| {
                let o = a.orders(k);
                let n = sizes[k];
                let mut t = vec![0; n * n];
                for x in 0..n {
                    let vx = decode(x, o);
                    for y in 0..n {
                        let vy = decode(y, o);
                        let s: Vec<u64> = vx.iter().zip(&vy).zip(o).map(|((a, b), m)| (a + b) % m).collect();
                        t[x * n + y] = encode(&s, o);
                    }
                }
                t
            })
            .collect();
        Some(Self { under, add })
    }
}

#[derive(Debug)]
struct EilenbergMacLane {
    a: SimplicialAbPresheaf,
    finite: Option<(Vec<FiniteAb>, Vec<Vec<Vec<usize>>>)>,
}

impl EilenbergMacLane {
    fn finite(&self) -> Result<&(Vec<FiniteAb>, Vec<Vec<Vec<usize>>>)> {
        self.finite.as_ref().ok_or_else(|| {
            Error::Infinite(format!(
                "H(A) has infinite or oversized simplices (cap {FINITE_ELEMENT_CAP}); use its linear model"
            ))
        })
    }
}

impl GammaSpace for EilenbergMacLane {
    fn site(&self) -> &Arc<FinCategory> {
        self.a.site()
    }

    fn dim(&self) -> usize {
        self.a.dim()
    }

    fn describe(&self) -> String {
        "H(A)".into()
    }

    fn value(&self, k: usize) -> Result<PresheafSpace> {
        if k == 0 {
            return Ok(PresheafSpace::point(self.site().clone(), self.dim()));
        }
        let (groups, restrictions) = self.finite()?;
        let dim = self.dim();
        let values: Vec<SimplicialSet> = groups
            .iter()
            .map(|g| (0..k).fold(point(dim), |acc, _| product(&acc, &g.under)))
            .collect();
        let site = self.site().clone();
        let maps = site
            .morphisms()
            .iter()
            .enumerate()
            .map(|(m, mor)| {
                let sizes = groups[mor.target].under.sizes();
                let tables = (0..=dim)
                    .map(|q| {
                        let s = sizes[q];
                        let s2 = groups[mor.source].under.size(q);
                        let r = &restrictions[m][q];
                        (0..values[mor.target].size(q))
                            .map(|idx| power_digits(idx, k, s).iter().fold(0, |acc, &d| acc * s2 + r[d]))
                            .collect()
                    })
                    .collect();
                SimplicialMap::from_tables(tables)
            })
            .collect();
        PresheafSpace::new(site, values, maps)
    }

    fn induced(&self, f: &PointedMap) -> Result<PresheafMap> {
        let (k, k2) = (f.source(), f.target());
        let dim = self.dim();
        if k == 0 || k2 == 0 {
            let src = self.value(k)?;
            let _ = self.value(k2)?;
            return Ok(PresheafMap::constant(&src));
        }
        let (groups, _) = self.finite()?;
        let components = groups
            .iter()
            .map(|g| {
                let tables = (0..=dim)
                    .map(|q| {
                        let s = g.under.size(q);
                        let add = &g.add[q];
                        (0..s.pow(k as u32))
                            .map(|idx| {
                                let digits = power_digits(idx, k, s);
                                let mut out = vec![0; k2 + 1];
                                for (i, &d) in digits.iter().enumerate() {
                                    let j = f.apply(i + 1);
                                    out[j] = add[out[j] * s + d];
                                }
                                out[1..].iter().fold(0, |acc, &d| acc * s + d)
                            })
                            .collect()
                    })
                    .collect();
                SimplicialMap::from_tables(tables)
            })
            .collect();
        Ok(PresheafMap::from_components(components))
    }

    fn linear_model(&self) -> Option<&SimplicialAbPresheaf> {
        Some(&self.a)
    }
}

/// Base-`s` digits of `idx`, most significant first, `k` of them.
pub(crate) fn power_digits(mut idx: usize, k: usize, s: usize) -> Vec<usize> {
    let mut d = vec![0; k];
    for i in (0..k).rev() {
        d[i] = idx % s;
        idx /= s;
    }
    d
}

/// The Eilenberg–Mac Lane Γ-space `HA(n_+) = A^{×n}`, with the map induced
/// by `f` sending `(a_i)` to `(Σ_{f(i) = j} a_i)_j`. Set-valued evaluation
/// is available when every `A_q` is finite and small; the linear model is
/// always available.
pub fn eilenberg_mac_lane(a: SimplicialAbPresheaf) -> Gamma {
    let site = a.site().clone();
    let groups: Option<Vec<FiniteAb>> = a.values().iter().map(FiniteAb::new).collect();
    let finite = groups.map(|groups| {
        let restrictions = site
            .morphisms()
            .iter()
            .enumerate()
            .map(|(m, mor)| {
                let (src, tgt) = (a.value(mor.target), a.value(mor.source));
                (0..=a.dim()).map(|q| element_table(a.restriction(m).matrix(q), src.orders(q), tgt.orders(q))).collect()
            })
            .collect();
        (groups, restrictions)
    });
    Gamma::new(EilenbergMacLane { a, finite })
}

#[derive(Debug)]
struct Level {
    n: usize,
    x: PresheafSpace,
}

impl GammaSpace for Level {
    fn site(&self) -> &Arc<FinCategory> {
        self.x.site()
    }

    fn dim(&self) -> usize {
        self.x.dim()
    }

    fn describe(&self) -> String {
        format!("L_{}(X)", self.n)
    }

    fn value(&self, k: usize) -> Result<PresheafSpace> {
        let copies = (k + 1).pow(self.n as u32) - 1;
        let xs = vec![&self.x; copies];
        Ok(PresheafSpace::wedge(self.site().clone(), &xs, self.dim()).0)
    }

    fn induced(&self, f: &PointedMap) -> Result<PresheafMap> {
        let post = postcompose(self.n, f);
        let components = self
            .x
            .values()
            .iter()
            .map(|v| {
                let tables = (0..=v.dim())
                    .map(|q| {
                        let m = v.size(q) - 1;
                        let total = post.source() * m + 1;
                        (0..total)
                            .map(|a| {
                                if a == 0 {
                                    return 0;
                                }
                                let (s, b) = ((a - 1) / m, (a - 1) % m + 1);
                                match post.apply(s + 1) {
                                    0 => 0,
                                    t => (t - 1) * m + b,
                                }
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

/// `L_n(X) = X ∧ Γⁿ`, built as the wedge of one copy of `X` per non-zero
/// map `n_+ → k_+`, in the order of [`pointed_maps`] with the zero map
/// skipped.
pub fn level(n: usize, x: PresheafSpace) -> Gamma {
    Gamma::new(Level { n, x })
}

#[derive(Debug)]
struct ComposeCorep {
    f: Gamma,
    n: usize,
}

impl GammaSpace for ComposeCorep {
    fn site(&self) -> &Arc<FinCategory> {
        self.f.site()
    }

    fn dim(&self) -> usize {
        self.f.dim()
    }

    fn describe(&self) -> String {
        format!("{}∘Γ^{}", self.f.describe(), self.n)
    }

    fn value(&self, k: usize) -> Result<PresheafSpace> {
        Ok((*self.f.eval((k + 1).pow(self.n as u32) - 1)?).clone())
    }

    fn induced(&self, g: &PointedMap) -> Result<PresheafMap> {
        Ok((*self.f.eval_map(&postcompose(self.n, g))?).clone())
    }
}

/// `F ∘ Γⁿ : k_+ ↦ F(Γ(n_+, k_+))`, with the mapping set ordered as in
/// [`pointed_maps`].
pub fn compose_corep(f: Gamma, n: usize) -> Gamma {
    Gamma::new(ComposeCorep { f, n })
}

#[derive(Debug)]
struct SmashSpace {
    x: PresheafSpace,
    f: Gamma,
    linear: Option<SimplicialAbPresheaf>,
}

impl GammaSpace for SmashSpace {
    fn site(&self) -> &Arc<FinCategory> {
        self.f.site()
    }

    fn dim(&self) -> usize {
        self.x.dim().min(self.f.dim())
    }

    fn describe(&self) -> String {
        format!("X∧{}", self.f.describe())
    }

    fn bound(&self) -> Option<usize> {
        self.f.bound()
    }

    fn value(&self, k: usize) -> Result<PresheafSpace> {
        Ok(self.x.smash(&*self.f.eval(k)?))
    }

    fn induced(&self, g: &PointedMap) -> Result<PresheafMap> {
        let fg = self.f.eval_map(g)?;
        let (a, b) = (self.f.eval(g.source())?, self.f.eval(g.target())?);
        Ok(PresheafMap::identity(&self.x).smash(&fg, &self.x, &a, &b))
    }

    fn linear_model(&self) -> Option<&SimplicialAbPresheaf> {
        self.linear.as_ref()
    }
}

/// The levelwise smash `X ∧ F`. When `F` is of Eilenberg–Mac Lane type
/// `HA`, the result carries the linear model `A ⊗ Z̃X`, the linearization
/// through which its stable homotopy is computed.
pub fn smash_space(x: PresheafSpace, f: Gamma) -> Gamma {
    let linear = f.linear_model().map(|a| crate::site::tensor_presheaf(a, &x));
    Gamma::new(SmashSpace { x, f, linear })
}

#[derive(Debug)]
struct WedgeGamma {
    parts: Vec<Gamma>,
}

impl WedgeGamma {
    fn wedges(&self, k: usize) -> Result<Vec<crate::simplicial::Wedge>> {
        let values = self.parts.iter().map(|p| p.eval(k)).collect::<Result<Vec<_>>>()?;
        Ok((0..self.site().num_objects())
            .map(|o| wedge(&values.iter().map(|v| v.value(o)).collect::<Vec<_>>(), self.dim()))
            .collect())
    }
}

impl GammaSpace for WedgeGamma {
    fn site(&self) -> &Arc<FinCategory> {
        self.parts[0].site()
    }

    fn dim(&self) -> usize {
        self.parts.iter().map(Gamma::dim).min().unwrap_or(0)
    }

    fn describe(&self) -> String {
        self.parts.iter().map(Gamma::describe).collect::<Vec<_>>().join("∨")
    }

    fn bound(&self) -> Option<usize> {
        self.parts.iter().filter_map(Gamma::bound).min()
    }

    fn value(&self, k: usize) -> Result<PresheafSpace> {
        let values = self.parts.iter().map(|p| p.eval(k)).collect::<Result<Vec<_>>>()?;
        let refs: Vec<&PresheafSpace> = values.iter().map(|v| &**v).collect();
        Ok(PresheafSpace::wedge(self.site().clone(), &refs, self.dim()).0)
    }

    fn induced(&self, g: &PointedMap) -> Result<PresheafMap> {
        let (ws, wt) = (self.wedges(g.source())?, self.wedges(g.target())?);
        let maps = self.parts.iter().map(|p| p.eval_map(g)).collect::<Result<Vec<_>>>()?;
        let components = (0..self.site().num_objects())
            .map(|o| {
                let fs: Vec<&SimplicialMap> = maps.iter().map(|m| m.component(o)).collect();
                wedge_maps(&fs, &ws[o], &wt[o])
            })
            .collect();
        Ok(PresheafMap::from_components(components))
    }
}

/// The levelwise wedge of Γ-spaces over a common site.
pub fn wedge_gamma(parts: Vec<Gamma>) -> Result<Gamma> {
    if parts.is_empty() {
        return Err(structural("wedge of no Γ-spaces"));
    }
    if parts.iter().any(|p| p.site() != parts[0].site()) {
        return Err(structural("wedge summands live over different sites"));
    }
    Ok(Gamma::new(WedgeGamma { parts }))
}

#[derive(Debug)]
struct ProductGamma {
    a: Gamma,
    b: Gamma,
}

impl GammaSpace for ProductGamma {
    fn site(&self) -> &Arc<FinCategory> {
        self.a.site()
    }

    fn dim(&self) -> usize {
        self.a.dim().min(self.b.dim())
    }

    fn describe(&self) -> String {
        format!("{}×{}", self.a.describe(), self.b.describe())
    }

    fn bound(&self) -> Option<usize> {
        self.a.bound().into_iter().chain(self.b.bound()).min()
    }

    fn value(&self, k: usize) -> Result<PresheafSpace> {
        Ok(self.a.eval(k)?.product(&*self.b.eval(k)?))
    }

    fn induced(&self, g: &PointedMap) -> Result<PresheafMap> {
        let (fa, fb) = (self.a.eval_map(g)?, self.b.eval_map(g)?);
        let (xa, yb, yb2) = (self.a.eval(g.source())?, self.b.eval(g.source())?, self.b.eval(g.target())?);
        let components = (0..self.site().num_objects())
            .map(|o| product_maps(fa.component(o), fb.component(o), xa.value(o), yb.value(o), yb2.value(o)))
            .collect();
        Ok(PresheafMap::from_components(components))
    }
}

/// The levelwise product `F × G`.
pub fn product_gamma(a: Gamma, b: Gamma) -> Gamma {
    Gamma::new(ProductGamma { a, b })
}

/// The canonical inclusion `F ∨ G → F × G`, `x ↦ (x, *)`, `y ↦ (*, y)`.
pub fn wedge_into_product(a: Gamma, b: Gamma) -> Result<GammaMap> {
    let w = wedge_gamma(vec![a.clone(), b.clone()])?;
    let p = product_gamma(a.clone(), b.clone());
    let (aa, bb) = (a, b);
    Ok(GammaMap::new(w, p, move |k| {
        let (va, vb) = (aa.eval(k)?, bb.eval(k)?);
        let components = (0..va.site().num_objects())
            .map(|o| {
                let (x, y) = (va.value(o), vb.value(o));
                let tables = (0..=x.dim().min(y.dim()))
                    .map(|q| {
                        let (nx, ny) = (x.size(q), y.size(q));
                        let mut t = vec![0];
                        t.extend((1..nx).map(|a| a * ny));
                        t.extend(1..ny);
                        t
                    })
                    .collect();
                SimplicialMap::from_tables(tables)
            })
            .collect();
        Ok(PresheafMap::from_components(components))
    }))
}

#[derive(Debug)]
struct QuotientGamma {
    j: GammaMap,
}

impl QuotientGamma {
    fn subset(&self, k: usize) -> Result<Vec<Vec<Vec<bool>>>> {
        let target = self.j.target().eval(k)?;
        let jk = self.j.component(k)?;
        Ok(target
            .values()
            .iter()
            .enumerate()
            .map(|(o, v)| {
                (0..=v.dim())
                    .map(|q| {
                        let mut s = vec![false; v.size(q)];
                        s[0] = true;
                        for &y in jk.component(o).table(q) {
                            s[y] = true;
                        }
                        s
                    })
                    .collect()
            })
            .collect())
    }
}

impl GammaSpace for QuotientGamma {
    fn site(&self) -> &Arc<FinCategory> {
        self.j.target().site()
    }

    fn dim(&self) -> usize {
        self.j.target().dim()
    }

    fn describe(&self) -> String {
        format!("{}/{}", self.j.target().describe(), self.j.source().describe())
    }

    fn bound(&self) -> Option<usize> {
        self.j.target().bound()
    }

    fn value(&self, k: usize) -> Result<PresheafSpace> {
        Ok(self.j.target().eval(k)?.quotient(&self.subset(k)?)?.0)
    }

    fn induced(&self, g: &PointedMap) -> Result<PresheafMap> {
        let (a, b) = (g.source(), g.target());
        let (ga, gb) = (self.j.target().eval(a)?, self.j.target().eval(b)?);
        let (sa, sb) = (self.subset(a)?, self.subset(b)?);
        let (_, pa) = ga.quotient(&sa)?;
        let (_, pb) = gb.quotient(&sb)?;
        let gg = self.j.target().eval_map(g)?;
        let components = (0..ga.site().num_objects())
            .map(|o| {
                let tables = (0..=self.dim())
                    .map(|q| {
                        let size = pa.component(o).table(q).iter().max().map_or(1, |m| m + 1);
                        let mut t = vec![0; size];
                        for x in 0..ga.value(o).size(q) {
                            if !sa[o][q][x] {
                                t[pa.component(o).apply(q, x)] = pb.component(o).apply(q, gg.component(o).apply(q, x));
                            }
                        }
                        t
                    })
                    .collect();
                SimplicialMap::from_tables(tables)
            })
            .collect();
        Ok(PresheafMap::from_components(components))
    }
}

/// The levelwise cofiber `G/F` of a levelwise injective map `j : F → G`,
/// with the projection `G → G/F`.
pub fn quotient_gamma(j: GammaMap) -> (Gamma, GammaMap) {
    let q = Gamma::new(QuotientGamma { j: j.clone() });
    let g = j.target().clone();
    let proj = GammaMap::new(g, q, move |k| {
        let sub = (QuotientGamma { j: j.clone() }).subset(k)?;
        Ok(j.target().eval(k)?.quotient(&sub)?.1)
    });
    (proj.target().clone(), proj)
}

/// A Γ-space tabulated on `0_+, …, N_+`; evaluation beyond `N` is an
/// arity error.
#[derive(Debug)]
pub struct Tabulated {
    site: Arc<FinCategory>,
    dim: usize,
    name: String,
    values: Vec<PresheafSpace>,
    maps: BTreeMap<PointedMap, PresheafMap>,
}

impl Tabulated {
    /// Builds a tabulated Γ-space from its values and the maps induced by
    /// every pointed map among `0_+, …, N_+`, and validates functoriality.
    pub fn from_values(
        name: impl Into<String>,
        values: Vec<PresheafSpace>,
        maps: BTreeMap<PointedMap, PresheafMap>,
    ) -> Result<Gamma> {
        let Some(first) = values.first() else {
            return Err(structural("a tabulated Γ-space needs a value at 0_+"));
        };
        let (site, dim) = (first.site().clone(), first.dim());
        let n = values.len() - 1;
        for a in 0..=n {
            for b in 0..=n {
                for f in pointed_maps(a, b) {
                    if !maps.contains_key(&f) {
                        return Err(structural(format!("tabulation lacks the map {:?}", f.table())));
                    }
                }
            }
        }
        let g = Gamma::new(Tabulated { site, dim, name: name.into(), values, maps });
        g.check_functoriality(n)?;
        Ok(g)
    }
}

impl GammaSpace for Tabulated {
    fn site(&self) -> &Arc<FinCategory> {
        &self.site
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn describe(&self) -> String {
        self.name.clone()
    }

    fn bound(&self) -> Option<usize> {
        Some(self.values.len() - 1)
    }

    fn value(&self, n: usize) -> Result<PresheafSpace> {
        Ok(self.values[n].clone())
    }

    fn induced(&self, f: &PointedMap) -> Result<PresheafMap> {
        self.maps.get(f).cloned().ok_or_else(|| structural(format!("no tabulated map for {:?}", f.table())))
    }
}

/// Snapshots `f` on `0_+, …, bound_+`.
pub fn tabulate(f: &Gamma, bound: usize) -> Result<Gamma> {
    let values = (0..=bound).map(|k| f.eval(k).map(|v| (*v).clone())).collect::<Result<Vec<_>>>()?;
    let mut maps = BTreeMap::new();
    for a in 0..=bound {
        for b in 0..=bound {
            for g in pointed_maps(a, b) {
                let m = (*f.eval_map(&g)?).clone();
                maps.insert(g, m);
            }
        }
    }
    Tabulated::from_values(format!("tab_{bound}({})", f.describe()), values, maps)
}

#[derive(Debug)]
struct SliceGamma {
    f: Gamma,
    slice: Slice,
}

impl GammaSpace for SliceGamma {
    fn site(&self) -> &Arc<FinCategory> {
        &self.slice.category
    }

    fn dim(&self) -> usize {
        self.f.dim()
    }

    fn describe(&self) -> String {
        format!("{}|U", self.f.describe())
    }

    fn bound(&self) -> Option<usize> {
        self.f.bound()
    }

    fn value(&self, n: usize) -> Result<PresheafSpace> {
        Ok(self.f.eval(n)?.restrict(&self.slice))
    }

    fn induced(&self, g: &PointedMap) -> Result<PresheafMap> {
        let m = self.f.eval_map(g)?;
        Ok(PresheafMap::from_components(self.slice.objects.iter().map(|&o| m.component(o).clone()).collect()))
    }
}

/// Restriction of a Γ-space to the slice site `C/U`.
pub fn restrict_to_slice(f: &Gamma, slice: &Slice) -> Gamma {
    Gamma::new(SliceGamma { f: f.clone(), slice: slice.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{boundary_quotient_sphere, s0};

    fn one() -> Arc<FinCategory> {
        Arc::new(FinCategory::one_point())
    }

    fn z_mod(n: u64, dim: usize) -> SimplicialAbPresheaf {
        SimplicialAbPresheaf::constant(one(), &SimplicialAbGroup::constant(&[n], dim))
    }

    #[test]
    fn corepresentable_sizes() {
        let g0 = corepresentable(one(), 0, 2);
        assert!(g0.eval(3).unwrap().is_point());
        let g1 = corepresentable(one(), 1, 2);
        assert_eq!(g1.eval(4).unwrap().value(0).size(0), 5);
        let g2 = corepresentable(one(), 2, 2);
        assert_eq!(g2.eval(2).unwrap().value(0).size(1), 9);
        g2.check_functoriality(2).unwrap();
    }

    #[test]
    fn eilenberg_mac_lane_sets() {
        let h = eilenberg_mac_lane(z_mod(2, 2));
        assert!(h.eval(0).unwrap().is_point());
        assert_eq!(h.eval(3).unwrap().value(0).size(2), 8);
        h.check_functoriality(2).unwrap();
        // the fold map adds
        let fold = PointedMap::new(2, 1, vec![0, 1, 1]).unwrap();
        let m = h.eval_map(&fold).unwrap();
        // (1, 1) has index 1·2 + 1 = 3 and sums to 0
        assert_eq!(m.component(0).apply(0, 3), 0);
        assert_eq!(m.component(0).apply(0, 2), 1);
        let h3 = eilenberg_mac_lane(z_mod(3, 1));
        let m = h3.eval_map(&fold).unwrap();
        // (2, 2) ↦ 4 mod 3 = 1
        assert_eq!(m.component(0).apply(0, 2 * 3 + 2), 1);
        let hz = eilenberg_mac_lane(z_mod(0, 1));
        assert!(matches!(hz.eval(1), Err(Error::Infinite(_))));
        assert!(hz.eval(0).unwrap().is_point());
    }

    #[test]
    fn level_wedges() {
        let c = boundary_quotient_sphere(1, 2).unwrap();
        let x = PresheafSpace::constant(one(), &c);
        let l1 = level(1, x.clone());
        assert_eq!(l1.eval(3).unwrap().value(0).size(1), 4);
        assert!(level(1, PresheafSpace::point(one(), 2)).eval(2).unwrap().is_point());
        l1.check_functoriality(2).unwrap();
        level(2, PresheafSpace::constant(one(), &s0(1))).check_functoriality(2).unwrap();
    }

    #[test]
    fn composites_and_products() {
        let g1 = corepresentable(one(), 1, 1);
        let c = compose_corep(g1.clone(), 2);
        assert_eq!(c.eval(2).unwrap().value(0).size(0), 9);
        c.check_functoriality(2).unwrap();
        let p = product_gamma(g1.clone(), g1.clone());
        p.check_functoriality(2).unwrap();
        let w = wedge_gamma(vec![g1.clone(), g1.clone()]).unwrap();
        w.check_functoriality(2).unwrap();
        let j = wedge_into_product(g1.clone(), g1.clone()).unwrap();
        j.check_naturality(3).unwrap();
        assert!(j.is_levelwise_injective(3).unwrap());
        let (q, proj) = quotient_gamma(j);
        q.check_functoriality(2).unwrap();
        proj.check_naturality(3).unwrap();
        // K × K / K ∨ K = K ∧ K
        assert_eq!(q.eval(3).unwrap().value(0).size(0), 10);
        let t = tabulate(&p, 2).unwrap();
        assert!(matches!(t.eval(3), Err(Error::ArityBound { needed: 3, bound: 2 })));
    }
}
