//! The category Γ and Γ-spaces valued in presheaves of pointed simplicial
//! sets.
//!
//! A Γ-space is an evaluator: it can be asked for its value at any `n_+`
//! and for the map induced by any pointed map. Values and maps are memoized
//! behind a [`Gamma`] handle, which is cheap to clone and safe to share
//! between threads.

mod kinds;
mod linear;
mod natural;
mod ring;
mod smash;
mod special;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{structural, Error, Result};
use crate::simplicial::{pointed_maps, PointedMap};
use crate::site::{FinCategory, PresheafMap, PresheafSpace, SimplicialAbPresheaf};

pub use linear::{
    lh_adjunction_check, lh_adjunction_check_integers, linearization, unit_pi0_check, Linearization,
};
pub use natural::{
    enumerate_gamma_maps, enumerate_presheaf_maps, ln_adjunction_check, spc_hom, yoneda_check, AdjunctionReport, Family,
    SpcHom,
};
pub use ring::{
    check_linear_module, check_linear_ring, check_pairing, check_pairing_module, check_pairing_monoid, gamma_one_pairing,
    h_pairing, LawReport, LinearModule, LinearRing, Pairing,
};
pub use smash::{
    compare_to_composite, corep_smash_iso, smash_gamma, smash_map_left, smash_symmetry, stabilization, SmashGamma,
    SmashReport, DEFAULT_COLIMIT_BOUND,
};
pub(crate) use natural::{decode, presheaf_variables};
pub use special::{is_special, is_very_special, is_very_special_linear, Comparison, SpecialReport};
pub use kinds::{
    corepresentable, eilenberg_mac_lane, level, compose_corep, product_gamma, quotient_gamma, restrict_to_slice,
    smash_space, tabulate, wedge_gamma, wedge_into_product, Tabulated,
};

/// A functor from Γ to presheaves of pointed simplicial sets.
pub trait GammaSpace: Send + Sync + fmt::Debug {
    fn site(&self) -> &Arc<FinCategory>;

    /// Simplicial dimension bound of every value.
    fn dim(&self) -> usize;

    fn describe(&self) -> String;

    /// Largest `n` with `n_+` evaluable, if bounded.
    fn bound(&self) -> Option<usize> {
        None
    }

    /// The value at `n_+`.
    fn value(&self, n: usize) -> Result<PresheafSpace>;

    /// The map induced by a pointed map.
    fn induced(&self, f: &PointedMap) -> Result<PresheafMap>;

    /// A simplicial abelian presheaf `A` with `F(K) = A ⊗ Z̃[K]`, when the
    /// Γ-space is of Eilenberg–Mac Lane type.
    fn linear_model(&self) -> Option<&SimplicialAbPresheaf> {
        None
    }
}

#[derive(Default)]
struct Cache {
    values: Mutex<BTreeMap<usize, Arc<PresheafSpace>>>,
    maps: Mutex<HashMap<PointedMap, Arc<PresheafMap>>>,
}

/// A shared, memoizing handle to a Γ-space.
#[derive(Clone)]
pub struct Gamma {
    rule: Arc<dyn GammaSpace>,
    cache: Arc<Cache>,
}

impl fmt::Debug for Gamma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gamma({})", self.rule.describe())
    }
}

impl Gamma {
    pub fn new(rule: impl GammaSpace + 'static) -> Self {
        Self { rule: Arc::new(rule), cache: Arc::default() }
    }

    pub fn site(&self) -> &Arc<FinCategory> {
        self.rule.site()
    }

    pub fn dim(&self) -> usize {
        self.rule.dim()
    }

    pub fn describe(&self) -> String {
        self.rule.describe()
    }

    pub fn bound(&self) -> Option<usize> {
        self.rule.bound()
    }

    pub fn linear_model(&self) -> Option<&SimplicialAbPresheaf> {
        self.rule.linear_model()
    }

    fn check_arity(&self, n: usize) -> Result<()> {
        match self.rule.bound() {
            Some(b) if n > b => Err(Error::ArityBound { needed: n, bound: b }),
            _ => Ok(()),
        }
    }

    /// The value at `n_+`.
    pub fn eval(&self, n: usize) -> Result<Arc<PresheafSpace>> {
        self.check_arity(n)?;
        if let Some(v) = self.cache.values.lock().expect("cache lock").get(&n) {
            return Ok(v.clone());
        }
        let v = Arc::new(self.rule.value(n)?);
        Ok(self.cache.values.lock().expect("cache lock").entry(n).or_insert(v).clone())
    }

    /// The map induced by `f`.
    pub fn eval_map(&self, f: &PointedMap) -> Result<Arc<PresheafMap>> {
        self.check_arity(f.source().max(f.target()))?;
        if let Some(m) = self.cache.maps.lock().expect("cache lock").get(f) {
            return Ok(m.clone());
        }
        let m = Arc::new(self.rule.induced(f)?);
        Ok(self.cache.maps.lock().expect("cache lock").entry(f.clone()).or_insert(m).clone())
    }

    /// Whether the two handles share one evaluator.
    pub fn same(&self, other: &Gamma) -> bool {
        Arc::ptr_eq(&self.rule, &other.rule)
    }

    /// Checks that `0_+` goes to the point, that identities and all
    /// composites of pointed maps among `0_+, …, n_+` are respected, and
    /// that every induced map is a valid presheaf map.
    pub fn check_functoriality(&self, n: usize) -> Result<()> {
        if !self.eval(0)?.is_point() {
            return Err(structural(format!("{} is not the point at 0_+", self.describe())));
        }
        for a in 0..=n {
            let fa = self.eval(a)?;
            if *self.eval_map(&PointedMap::identity(a))? != PresheafMap::identity(&fa) {
                return Err(structural(format!("{} does not preserve the identity of {a}_+", self.describe())));
            }
            for b in 0..=n {
                let fb = self.eval(b)?;
                for f in pointed_maps(a, b) {
                    let ff = self.eval_map(&f)?;
                    ff.validate(&fa, &fb)
                        .map_err(|e| structural(format!("{} at {:?}: {e}", self.describe(), f.table())))?;
                    for c in 0..=n {
                        for g in pointed_maps(b, c) {
                            let gf = g.after(&f)?;
                            if *self.eval_map(&gf)? != self.eval_map(&g)?.after(&ff) {
                                return Err(structural(format!(
                                    "{} does not respect the composite {:?} ∘ {:?}",
                                    self.describe(),
                                    g.table(),
                                    f.table()
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

type ComponentFn = dyn Fn(usize) -> Result<PresheafMap> + Send + Sync;

/// A natural transformation of Γ-spaces, given by its component at each
/// `k_+`.
#[derive(Clone)]
pub struct GammaMap {
    source: Gamma,
    target: Gamma,
    component: Arc<ComponentFn>,
    bound: Option<usize>,
}

impl fmt::Debug for GammaMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GammaMap({} → {})", self.source.describe(), self.target.describe())
    }
}

impl GammaMap {
    pub fn new(
        source: Gamma,
        target: Gamma,
        component: impl Fn(usize) -> Result<PresheafMap> + Send + Sync + 'static,
    ) -> Self {
        Self { source, target, component: Arc::new(component), bound: None }
    }

    /// A map known only at `0_+, …, (components.len() - 1)_+`.
    pub fn from_components(source: Gamma, target: Gamma, components: Vec<PresheafMap>) -> Self {
        let bound = components.len().saturating_sub(1);
        let components = Arc::new(components);
        Self {
            source,
            target,
            component: Arc::new(move |k| {
                components.get(k).cloned().ok_or(Error::ArityBound { needed: k, bound })
            }),
            bound: Some(bound),
        }
    }

    pub fn identity(f: &Gamma) -> Self {
        let g = f.clone();
        Self::new(f.clone(), f.clone(), move |k| Ok(PresheafMap::identity(&*g.eval(k)?)))
    }

    pub fn source(&self) -> &Gamma {
        &self.source
    }

    pub fn target(&self) -> &Gamma {
        &self.target
    }

    pub fn bound(&self) -> Option<usize> {
        self.bound
    }

    pub fn component(&self, k: usize) -> Result<PresheafMap> {
        (self.component)(k)
    }

    /// Validates the components at `0_+, …, kmax_+` and the naturality
    /// squares for all generating morphisms among them.
    pub fn check_naturality(&self, kmax: usize) -> Result<()> {
        for k in 0..=kmax {
            self.component(k)?.validate(&*self.source.eval(k)?, &*self.target.eval(k)?)?;
        }
        for g in generating_morphisms(kmax) {
            let (a, b) = (g.source(), g.target());
            let lhs = self.target.eval_map(&g)?.after(&self.component(a)?);
            let rhs = self.component(b)?.after(&*self.source.eval_map(&g)?);
            if lhs != rhs {
                return Err(structural(format!("naturality fails for {:?}", g.table())));
            }
        }
        Ok(())
    }

    pub fn is_levelwise_injective(&self, kmax: usize) -> Result<bool> {
        for k in 0..=kmax {
            if !self.component(k)?.is_injective() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// All `(n+1)^m` pointed maps `m_+ → n_+`, zero map first.
pub fn gamma_morphisms(m: usize, n: usize) -> Vec<PointedMap> {
    pointed_maps(m, n)
}

/// Maps generating the full subcategory of Γ on `0_+, …, bound_+`:
/// adjacent transpositions, collapsing the last element, folding the last
/// two elements together, and the inclusions `(k-1)_+ → k_+`. Every pointed
/// map among these objects factors through them without leaving the range.
pub fn generating_morphisms(bound: usize) -> Vec<PointedMap> {
    let mut out = Vec::new();
    for k in 1..=bound {
        for j in 1..k {
            let mut t: Vec<usize> = (0..=k).collect();
            t.swap(j, j + 1);
            out.push(PointedMap::new(k, k, t).expect("transposition"));
        }
        let mut collapse: Vec<usize> = (0..=k).collect();
        collapse[k] = 0;
        collapse.truncate(k + 1);
        out.push(PointedMap::new(k, k - 1, collapse).expect("collapse"));
        if k >= 2 {
            let mut fold: Vec<usize> = (0..=k).collect();
            fold[k] = k - 1;
            out.push(PointedMap::new(k, k - 1, fold).expect("fold"));
        }
        out.push(PointedMap::new(k - 1, k, (0..k).collect()).expect("inclusion"));
    }
    out
}

/// `φ ↦ f ∘ φ` on `Γ(n_+, k_+) → Γ(n_+, k'_+)`, as a pointed map of the
/// enumerated mapping sets.
pub fn postcompose(n: usize, f: &PointedMap) -> PointedMap {
    let (k, k2) = (f.source(), f.target());
    let size = (k + 1).pow(n as u32);
    let table = (0..size)
        .map(|mut idx| {
            let mut digits = vec![0; n];
            for d in (0..n).rev() {
                digits[d] = idx % (k + 1);
                idx /= k + 1;
            }
            digits.iter().fold(0, |acc, &v| acc * (k2 + 1) + f.apply(v))
        })
        .collect();
    PointedMap::new(size - 1, (k2 + 1).pow(n as u32) - 1, table).expect("postcomposition is pointed")
}

/// `φ ↦ φ ∘ α` on `Γ(i'_+, k_+) → Γ(i_+, k_+)` for `α : i_+ → i'_+`.
pub fn precompose(alpha: &PointedMap, k: usize) -> PointedMap {
    let (i, i2) = (alpha.source(), alpha.target());
    let size = (k + 1).pow(i2 as u32);
    let table = (0..size)
        .map(|mut idx| {
            // digits[0] is φ(0) = 0, digits[1..] the values of φ
            let mut digits = vec![0; i2 + 1];
            for d in (1..=i2).rev() {
                digits[d] = idx % (k + 1);
                idx /= k + 1;
            }
            (1..=i).fold(0, |acc, a| acc * (k + 1) + digits[alpha.apply(a)])
        })
        .collect();
    PointedMap::new(size - 1, (k + 1).pow(i as u32) - 1, table).expect("precomposition is pointed")
}

/// Digits of a pointed map's index, i.e. its values on `1..=m`.
pub(crate) fn map_digits(mut idx: usize, m: usize, n: usize) -> Vec<usize> {
    let mut digits = vec![0; m];
    for d in (0..m).rev() {
        digits[d] = idx % (n + 1);
        idx /= n + 1;
    }
    digits
}

pub(crate) fn digits_index(digits: &[usize], n: usize) -> usize {
    digits.iter().fold(0, |acc, &v| acc * (n + 1) + v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::pointed_map_index;

    #[test]
    fn morphism_counts() {
        assert_eq!(gamma_morphisms(1, 1).len(), 2);
        assert_eq!(gamma_morphisms(2, 1).len(), 4);
        assert_eq!(gamma_morphisms(2, 3).len(), 16);
        assert_eq!(gamma_morphisms(0, 5).len(), 1);
    }

    /// Closing the generators under composition recovers every pointed map
    /// among objects up to 3.
    #[test]
    fn generators_generate() {
        let b = 3;
        let gens = generating_morphisms(b);
        let mut reached: std::collections::BTreeSet<PointedMap> = (0..=b).map(PointedMap::identity).collect();
        loop {
            let mut next = reached.clone();
            for f in &reached {
                for g in &gens {
                    if g.source() == f.target() {
                        next.insert(g.after(f).unwrap());
                    }
                }
            }
            if next.len() == reached.len() {
                break;
            }
            reached = next;
        }
        let total: usize = (0..=b).flat_map(|m| (0..=b).map(move |n| (n + 1).pow(m as u32))).sum();
        assert_eq!(reached.len(), total);
    }

    #[test]
    fn pre_and_post_composition() {
        for n in 0..=2 {
            for f in pointed_maps(2, 3) {
                let post = postcompose(n, &f);
                for phi in pointed_maps(n, 2) {
                    let image = pointed_map_index(&f.after(&phi).unwrap());
                    assert_eq!(post.apply(pointed_map_index(&phi)), image);
                }
            }
        }
        for alpha in pointed_maps(2, 3) {
            let pre = precompose(&alpha, 2);
            for phi in pointed_maps(3, 2) {
                assert_eq!(pre.apply(pointed_map_index(&phi)), pointed_map_index(&phi.after(&alpha).unwrap()));
            }
        }
    }
}
