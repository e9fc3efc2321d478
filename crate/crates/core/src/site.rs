//! Finite index categories and presheaves of pointed simplicial sets and of
//! simplicial abelian groups over them. All monoidal structure is computed
//! sectionwise; Grothendieck topologies are not modelled, so local notions
//! coincide with sectionwise ones.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{structural, Error, Result};
use crate::homology::{
    induced_chain_map, is_isomorphism, pi0, reduced_chain_complex, SimplicialAbGroup, SimplicialAbMap,
};
use crate::simplicial::{
    point, product, product_maps, quotient, quotient_projection, smash, smash_maps, wedge, wedge_maps,
    BiSimplicialSet, SimplicialMap, SimplicialSet,
};

/// A morphism `source → target` of a finite category.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Morphism {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite category. Morphisms `0..objects.len()` are the identities, in
/// object order; `compose[(g, f)] = g ∘ f` for every composable pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    compose: BTreeMap<(usize, usize), usize>,
}

impl FinCategory {
    /// Builds a category from its objects, non-identity arrows
    /// `(name, source, target)` and composites `(g, f, g∘f)` given as
    /// indices into the arrow list shifted past the identities. Composites
    /// with identities are filled in automatically.
    pub fn new(objects: Vec<String>, arrows: Vec<(String, usize, usize)>, composites: Vec<(usize, usize, usize)>) -> Result<Self> {
        let n = objects.len();
        let mut morphisms: Vec<Morphism> =
            objects.iter().enumerate().map(|(i, o)| Morphism { name: format!("id_{o}"), source: i, target: i }).collect();
        for (name, s, t) in arrows {
            if s >= n || t >= n {
                return Err(structural(format!("arrow {name} has an unknown endpoint")));
            }
            morphisms.push(Morphism { name, source: s, target: t });
        }
        let mut compose = BTreeMap::new();
        for (m, f) in morphisms.iter().enumerate() {
            compose.insert((f.target, m), m);
            compose.insert((m, f.source), m);
        }
        for (g, f, h) in composites {
            if g >= morphisms.len() || f >= morphisms.len() || h >= morphisms.len() {
                return Err(structural(format!("composite ({g}, {f}, {h}) names an unknown morphism")));
            }
            if let Some(&old) = compose.get(&(g, f)) {
                if old != h {
                    return Err(structural(format!(
                        "composite {} ∘ {} = {} conflicts with {}",
                        morphisms[g].name, morphisms[f].name, morphisms[h].name, morphisms[old].name
                    )));
                }
            }
            compose.insert((g, f), h);
        }
        let c = Self { objects, morphisms, compose };
        c.validate()?;
        Ok(c)
    }

    /// One object, only its identity.
    pub fn one_point() -> Self {
        Self::new(vec!["*".into()], vec![], vec![]).expect("one-point category is valid")
    }

    /// Two objects `a`, `b` and one arrow `u : a → b`.
    pub fn arrow() -> Self {
        Self::new(vec!["a".into(), "b".into()], vec![("u".into(), 0, 1)], vec![]).expect("arrow category is valid")
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn identity(&self, object: usize) -> usize {
        object
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_index(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    /// `g ∘ f`, if composable.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose.get(&(g, f)).copied()
    }

    /// Composable pairs `(g, f)` with their composite.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.compose.iter().map(|(&(g, f), &h)| (g, f, h))
    }

    pub fn validate(&self) -> Result<()> {
        let ms = &self.morphisms;
        for (g, mg) in ms.iter().enumerate() {
            for (f, mf) in ms.iter().enumerate() {
                let composable = mf.target == mg.source;
                match (composable, self.compose.get(&(g, f))) {
                    (true, None) => {
                        return Err(structural(format!("missing composite {} ∘ {}", mg.name, mf.name)));
                    }
                    (false, Some(_)) => {
                        return Err(structural(format!("composite {} ∘ {} of non-composable arrows", mg.name, mf.name)));
                    }
                    (true, Some(&h)) => {
                        if ms[h].source != mf.source || ms[h].target != mg.target {
                            return Err(structural(format!(
                                "composite ({}, {}, {}) has the wrong endpoints",
                                mg.name, mf.name, ms[h].name
                            )));
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for (&(h, g), &hg) in &self.compose {
            for f in 0..ms.len() {
                if let Some(&gf) = self.compose.get(&(g, f)) {
                    let left = self.compose[&(hg, f)];
                    let right = self.compose[&(h, gf)];
                    if left != right {
                        return Err(structural(format!(
                            "associativity fails for ({}, {}, {})",
                            ms[h].name, ms[g].name, ms[f].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The slice category `C/U` together with the forgetful functor to `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slice {
    pub category: Arc<FinCategory>,
    /// Underlying object `V` of each slice object `V → U`.
    pub objects: Vec<usize>,
    /// Underlying morphism of each slice morphism.
    pub morphisms: Vec<usize>,
    /// The morphism `V → U` of each slice object.
    pub structure: Vec<usize>,
}

impl FinCategory {
    /// The slice category over `object`. Slice objects are the morphisms
    /// into `object` in index order, named after them.
    pub fn slice(&self, object: usize) -> Slice {
        let structure: Vec<usize> =
            (0..self.morphisms.len()).filter(|&m| self.morphisms[m].target == object).collect();
        let objects: Vec<usize> = structure.iter().map(|&m| self.morphisms[m].source).collect();
        let names = structure.iter().map(|&m| self.morphisms[m].name.clone()).collect();
        let nobj = structure.len();
        let mut arrows = Vec::new();
        let mut under = Vec::new();
        for (a, &f) in structure.iter().enumerate() {
            for (b, &g) in structure.iter().enumerate() {
                for (h, mh) in self.morphisms.iter().enumerate() {
                    let is_identity = h < self.objects.len();
                    if mh.source == objects[a] && mh.target == objects[b] && self.compose(g, h) == Some(f) && !(is_identity && a == b) {
                        arrows.push((format!("{}/{}", mh.name, self.morphisms[g].name), a, b));
                        under.push(h);
                    }
                }
            }
        }
        let find = |h: usize, s: usize, t: usize| -> usize {
            if s == t && h < self.objects.len() {
                return s;
            }
            nobj + (0..arrows.len()).find(|&i| under[i] == h && arrows[i].1 == s && arrows[i].2 == t).expect("slice is closed under composition")
        };
        let mut composites = Vec::new();
        for (i, &(_, s1, t1)) in arrows.iter().enumerate() {
            for (j, &(_, s2, t2)) in arrows.iter().enumerate() {
                if t1 == s2 {
                    let h = self.compose(under[j], under[i]).expect("composable");
                    composites.push((nobj + j, nobj + i, find(h, s1, t2)));
                }
            }
        }
        let mut morphisms: Vec<usize> = objects.clone();
        morphisms.extend(under.iter().copied());
        let category = Arc::new(FinCategory::new(names, arrows, composites).expect("slice of a valid category is valid"));
        Slice { category, objects, morphisms, structure }
    }
}

/// A presheaf of pointed simplicial sets: `values[U]` per object and, for
/// each morphism `u : U → V`, a restriction `values[V] → values[U]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresheafSpace {
    site: Arc<FinCategory>,
    values: Vec<SimplicialSet>,
    restrictions: Vec<SimplicialMap>,
}

/// A natural family of simplicial maps between presheaf spaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PresheafMap {
    components: Vec<SimplicialMap>,
}

impl PresheafSpace {
    pub fn new(site: Arc<FinCategory>, values: Vec<SimplicialSet>, restrictions: Vec<SimplicialMap>) -> Result<Self> {
        let x = Self { site, values, restrictions };
        x.validate()?;
        Ok(x)
    }

    /// Builds a presheaf whose restriction along each morphism is computed
    /// by `restrict(morphism)`; identities are not special-cased.
    pub fn from_fn(
        site: Arc<FinCategory>,
        values: Vec<SimplicialSet>,
        restrict: impl Fn(usize) -> SimplicialMap,
    ) -> Result<Self> {
        let restrictions = (0..site.morphisms().len()).map(restrict).collect();
        Self::new(site, values, restrictions)
    }

    /// The constant presheaf with identity restrictions.
    pub fn constant(site: Arc<FinCategory>, x: &SimplicialSet) -> Self {
        let n = site.num_objects();
        let id = SimplicialMap::identity(x);
        let m = site.morphisms().len();
        Self { site, values: vec![x.clone(); n], restrictions: vec![id; m] }
    }

    pub fn point(site: Arc<FinCategory>, dim: usize) -> Self {
        Self::constant(site, &point(dim))
    }

    pub fn site(&self) -> &Arc<FinCategory> {
        &self.site
    }

    pub fn value(&self, object: usize) -> &SimplicialSet {
        &self.values[object]
    }

    pub fn values(&self) -> &[SimplicialSet] {
        &self.values
    }

    pub fn restriction(&self, morphism: usize) -> &SimplicialMap {
        &self.restrictions[morphism]
    }

    pub fn dim(&self) -> usize {
        self.values[0].dim()
    }

    pub fn is_point(&self) -> bool {
        self.values.iter().all(SimplicialSet::is_point)
    }

    pub fn validate(&self) -> Result<()> {
        let site = &self.site;
        if self.values.len() != site.num_objects() || self.restrictions.len() != site.morphisms().len() {
            return Err(structural("presheaf shape does not match its site"));
        }
        let dim = self.values[0].dim();
        if self.values.iter().any(|v| v.dim() != dim) {
            return Err(structural("presheaf values have different dimension bounds"));
        }
        for (m, mor) in site.morphisms().iter().enumerate() {
            self.restrictions[m]
                .validate(&self.values[mor.target], &self.values[mor.source])
                .map_err(|e| structural(format!("restriction along {}: {e}", mor.name)))?;
        }
        for obj in 0..site.num_objects() {
            if self.restrictions[site.identity(obj)] != SimplicialMap::identity(&self.values[obj]) {
                return Err(structural(format!("identity of {} does not restrict to the identity", site.objects()[obj])));
            }
        }
        for (g, f, h) in site.composable_pairs() {
            // X(g ∘ f) = X(f) ∘ X(g)
            if self.restrictions[h] != self.restrictions[f].after(&self.restrictions[g]) {
                let ms = site.morphisms();
                return Err(structural(format!(
                    "restriction is not functorial on {} ∘ {}",
                    ms[g].name, ms[f].name
                )));
            }
        }
        Ok(())
    }

    /// The sectionwise truncation to degrees `0..=dim`.
    pub fn truncate(&self, dim: usize) -> Result<PresheafSpace> {
        Ok(PresheafSpace {
            site: self.site.clone(),
            values: self.values.iter().map(|v| v.truncate(dim)).collect::<Result<_>>()?,
            restrictions: self.restrictions.iter().map(|r| r.truncate(dim)).collect(),
        })
    }

    /// Restriction along the forgetful functor of a slice.
    pub fn restrict(&self, slice: &Slice) -> PresheafSpace {
        PresheafSpace {
            site: slice.category.clone(),
            values: slice.objects.iter().map(|&o| self.values[o].clone()).collect(),
            restrictions: slice.morphisms.iter().map(|&m| self.restrictions[m].clone()).collect(),
        }
    }

    /// Sectionwise smash product.
    pub fn smash(&self, other: &PresheafSpace) -> PresheafSpace {
        let values: Vec<_> = self.values.iter().zip(&other.values).map(|(x, y)| smash(x, y)).collect();
        let restrictions = self
            .site
            .morphisms()
            .iter()
            .enumerate()
            .map(|(m, mor)| {
                smash_maps(
                    &self.restrictions[m],
                    &other.restrictions[m],
                    &self.values[mor.target],
                    &other.values[mor.target],
                    &other.values[mor.source],
                )
            })
            .collect();
        PresheafSpace { site: self.site.clone(), values, restrictions }
    }

    /// Sectionwise product.
    pub fn product(&self, other: &PresheafSpace) -> PresheafSpace {
        let values: Vec<_> = self.values.iter().zip(&other.values).map(|(x, y)| product(x, y)).collect();
        let restrictions = self
            .site
            .morphisms()
            .iter()
            .enumerate()
            .map(|(m, mor)| {
                product_maps(
                    &self.restrictions[m],
                    &other.restrictions[m],
                    &self.values[mor.target],
                    &other.values[mor.target],
                    &other.values[mor.source],
                )
            })
            .collect();
        PresheafSpace { site: self.site.clone(), values, restrictions }
    }

    /// Sectionwise wedge with the summand injections.
    pub fn wedge(site: Arc<FinCategory>, xs: &[&PresheafSpace], empty_dim: usize) -> (PresheafSpace, Vec<PresheafMap>) {
        let nobj = site.num_objects();
        let wedges: Vec<_> = (0..nobj)
            .map(|o| wedge(&xs.iter().map(|x| &x.values[o]).collect::<Vec<_>>(), empty_dim))
            .collect();
        let restrictions = site
            .morphisms()
            .iter()
            .enumerate()
            .map(|(m, mor)| {
                let fs: Vec<&SimplicialMap> = xs.iter().map(|x| &x.restrictions[m]).collect();
                if fs.is_empty() {
                    SimplicialMap::identity(&wedges[mor.target].space)
                } else {
                    wedge_maps(&fs, &wedges[mor.target], &wedges[mor.source])
                }
            })
            .collect();
        let injections = (0..xs.len())
            .map(|s| PresheafMap { components: wedges.iter().map(|w| w.injections[s].clone()).collect() })
            .collect();
        let values = wedges.into_iter().map(|w| w.space).collect();
        (PresheafSpace { site, values, restrictions }, injections)
    }

    /// Collapses a sub-presheaf, given sectionwise as membership flags, to
    /// the basepoint. Returns the quotient and the projection.
    pub fn quotient(&self, subset: &[Vec<Vec<bool>>]) -> Result<(PresheafSpace, PresheafMap)> {
        let values = self.values.iter().zip(subset).map(|(x, s)| quotient(x, s)).collect::<Result<Vec<_>>>()?;
        let proj: Vec<SimplicialMap> =
            self.values.iter().zip(subset).map(|(x, s)| quotient_projection(x, s)).collect();
        let mut restrictions = Vec::new();
        for (m, mor) in self.site.morphisms().iter().enumerate() {
            let r = &self.restrictions[m];
            let src = &self.values[mor.target];
            let sub_t = &subset[mor.target];
            let sub_s = &subset[mor.source];
            let tables = (0..=src.dim())
                .map(|k| {
                    let mut t = vec![0; values[mor.target].size(k)];
                    for a in 0..src.size(k) {
                        let img = r.apply(k, a);
                        if sub_t[k][a] {
                            if !sub_s[k][img] {
                                return Err(structural(format!(
                                    "restriction along {} leaves the sub-presheaf",
                                    mor.name
                                )));
                            }
                        } else {
                            t[proj[mor.target].apply(k, a)] = proj[mor.source].apply(k, img);
                        }
                    }
                    Ok(t)
                })
                .collect::<Result<Vec<_>>>()?;
            restrictions.push(SimplicialMap::from_tables(tables));
        }
        let q = PresheafSpace::new(self.site.clone(), values, restrictions)?;
        Ok((q, PresheafMap { components: proj }))
    }

    /// The diagonal of a bisimplicial presheaf given sectionwise, with
    /// restrictions given per morphism as one map per column.
    pub fn diagonal(
        site: Arc<FinCategory>,
        values: &[BiSimplicialSet],
        restrictions: &[Vec<SimplicialMap>],
    ) -> Result<PresheafSpace> {
        let diags = values.iter().map(BiSimplicialSet::diagonal).collect::<Result<Vec<_>>>()?;
        let maps = restrictions
            .iter()
            .map(|cols| SimplicialMap::from_tables(cols.iter().enumerate().map(|(k, f)| f.table(k).to_vec()).collect()))
            .collect();
        PresheafSpace::new(site, diags, maps)
    }
}

impl PresheafMap {
    pub fn new(source: &PresheafSpace, target: &PresheafSpace, components: Vec<SimplicialMap>) -> Result<Self> {
        let f = Self { components };
        f.validate(source, target)?;
        Ok(f)
    }

    pub(crate) fn from_components(components: Vec<SimplicialMap>) -> Self {
        Self { components }
    }

    pub fn identity(x: &PresheafSpace) -> Self {
        Self { components: x.values.iter().map(SimplicialMap::identity).collect() }
    }

    pub fn constant(x: &PresheafSpace) -> Self {
        Self { components: x.values.iter().map(SimplicialMap::constant).collect() }
    }

    pub fn component(&self, object: usize) -> &SimplicialMap {
        &self.components[object]
    }

    pub fn components(&self) -> &[SimplicialMap] {
        &self.components
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &PresheafMap) -> PresheafMap {
        Self { components: self.components.iter().zip(&first.components).map(|(g, f)| g.after(f)).collect() }
    }

    pub fn validate(&self, source: &PresheafSpace, target: &PresheafSpace) -> Result<()> {
        let site = &source.site;
        if self.components.len() != site.num_objects() {
            return Err(structural("presheaf map has the wrong number of components"));
        }
        for (o, f) in self.components.iter().enumerate() {
            f.validate(&source.values[o], &target.values[o])
                .map_err(|e| structural(format!("component at {}: {e}", site.objects()[o])))?;
        }
        for (m, mor) in site.morphisms().iter().enumerate() {
            let lhs = target.restrictions[m].after(&self.components[mor.target]);
            let rhs = self.components[mor.source].after(&source.restrictions[m]);
            if lhs != rhs {
                return Err(structural(format!("naturality square for {} does not commute", mor.name)));
            }
        }
        Ok(())
    }

    /// Sectionwise smash of two maps.
    pub fn smash(&self, other: &PresheafMap, x: &PresheafSpace, y: &PresheafSpace, y2: &PresheafSpace) -> PresheafMap {
        let components = (0..x.values.len())
            .map(|o| smash_maps(&self.components[o], &other.components[o], &x.values[o], &y.values[o], &y2.values[o]))
            .collect();
        PresheafMap { components }
    }

    pub fn truncate(&self, dim: usize) -> PresheafMap {
        PresheafMap { components: self.components.iter().map(|c| c.truncate(dim)).collect() }
    }

    pub fn is_injective(&self) -> bool {
        self.components.iter().all(SimplicialMap::is_injective)
    }
}

/// A presheaf of simplicial abelian groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialAbPresheaf {
    site: Arc<FinCategory>,
    values: Vec<SimplicialAbGroup>,
    restrictions: Vec<SimplicialAbMap>,
}

impl SimplicialAbPresheaf {
    pub fn new(site: Arc<FinCategory>, values: Vec<SimplicialAbGroup>, restrictions: Vec<SimplicialAbMap>) -> Result<Self> {
        let a = Self { site, values, restrictions };
        a.validate()?;
        Ok(a)
    }

    /// Restricts every value and restriction to degrees `0..=dim`.
    pub fn truncate(&self, dim: usize) -> Result<Self> {
        let values = self.values.iter().map(|v| v.truncate(dim)).collect::<Result<Vec<_>>>()?;
        let restrictions = self.restrictions.iter().map(|r| SimplicialAbMap::from_matrices(r.matrices()[..=dim].to_vec())).collect();
        Ok(Self { site: self.site.clone(), values, restrictions })
    }

    /// The constant presheaf on a simplicial abelian group.
    pub fn constant(site: Arc<FinCategory>, a: &SimplicialAbGroup) -> Self {
        let n = site.num_objects();
        let m = site.morphisms().len();
        Self { site, values: vec![a.clone(); n], restrictions: vec![SimplicialAbMap::identity(a); m] }
    }

    pub fn site(&self) -> &Arc<FinCategory> {
        &self.site
    }

    pub fn value(&self, object: usize) -> &SimplicialAbGroup {
        &self.values[object]
    }

    pub fn values(&self) -> &[SimplicialAbGroup] {
        &self.values
    }

    pub fn restriction(&self, morphism: usize) -> &SimplicialAbMap {
        &self.restrictions[morphism]
    }

    pub fn dim(&self) -> usize {
        self.values[0].dim()
    }

    pub fn validate(&self) -> Result<()> {
        let site = &self.site;
        if self.values.len() != site.num_objects() || self.restrictions.len() != site.morphisms().len() {
            return Err(structural("presheaf shape does not match its site"));
        }
        for (m, mor) in site.morphisms().iter().enumerate() {
            self.restrictions[m]
                .validate(&self.values[mor.target], &self.values[mor.source])
                .map_err(|e| structural(format!("restriction along {}: {e}", mor.name)))?;
        }
        for obj in 0..site.num_objects() {
            let id = SimplicialAbMap::identity(&self.values[obj]);
            if !self.restrictions[site.identity(obj)].agrees_with(&id, &self.values[obj]) {
                return Err(structural(format!("identity of {} does not restrict to the identity", site.objects()[obj])));
            }
        }
        for (g, f, h) in site.composable_pairs() {
            let src = site.morphisms()[f].source;
            let composite = self.restrictions[f].after(&self.restrictions[g]);
            if !self.restrictions[h].agrees_with(&composite, &self.values[src]) {
                let ms = site.morphisms();
                return Err(structural(format!("restriction is not functorial on {} ∘ {}", ms[g].name, ms[f].name)));
            }
        }
        Ok(())
    }
}

/// The reduced free simplicial abelian presheaf `Z̃X`.
pub fn free_abelian(x: &PresheafSpace) -> SimplicialAbPresheaf {
    tensor_free(x, &[0])
}

/// `A ⊗ Z̃X` for a constant `A = ⊕ Z/oᵢ`.
pub fn tensor_free(x: &PresheafSpace, orders: &[u64]) -> SimplicialAbPresheaf {
    let values = x.values.iter().map(|v| SimplicialAbGroup::reduced_free(v, orders)).collect();
    let restrictions = x
        .site
        .morphisms()
        .iter()
        .enumerate()
        .map(|(m, mor)| {
            SimplicialAbMap::induced_free(&x.restrictions[m], &x.values[mor.target], &x.values[mor.source], orders)
        })
        .collect();
    SimplicialAbPresheaf { site: x.site.clone(), values, restrictions }
}

/// The sectionwise degreewise tensor product `A ⊗ Z̃X`.
pub fn tensor_presheaf(a: &SimplicialAbPresheaf, x: &PresheafSpace) -> SimplicialAbPresheaf {
    let values: Vec<_> = a.values.iter().zip(&x.values).map(|(g, v)| g.tensor_space(v)).collect();
    let restrictions = x
        .site
        .morphisms()
        .iter()
        .enumerate()
        .map(|(m, mor)| {
            SimplicialAbMap::tensor(
                &a.restrictions[m],
                &x.restrictions[m],
                &a.values[mor.source],
                &x.values[mor.target],
                &x.values[mor.source],
            )
        })
        .collect();
    SimplicialAbPresheaf { site: x.site.clone(), values, restrictions }
}

/// Outcome of the sectionwise equivalence test at one object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EquivalenceVerdict {
    /// Exact: isomorphism on all homotopy groups in range (abelian values).
    Equivalent,
    /// Bijection on components and isomorphism on reduced homology in range.
    HomologyEquivalent,
    /// A witness: the first degree where the comparison fails.
    Not { degree: usize },
}

/// Per-object verdicts, in object order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub max_degree: usize,
    pub verdicts: Vec<(String, EquivalenceVerdict)>,
}

impl EquivalenceReport {
    /// True when no object failed.
    pub fn holds(&self) -> bool {
        self.verdicts.iter().all(|(_, v)| !matches!(v, EquivalenceVerdict::Not { .. }))
    }
}

/// Compares `f` on components and on reduced homology in degrees up to
/// `max_degree` at every object. Never claims a genuine weak equivalence for
/// set-valued presheaves.
pub fn sectionwise_equivalence_proxy(
    f: &PresheafMap,
    source: &PresheafSpace,
    target: &PresheafSpace,
    max_degree: usize,
) -> Result<EquivalenceReport> {
    let mut verdicts = Vec::new();
    for (o, name) in source.site.objects().iter().enumerate() {
        let (x, y) = (&source.values[o], &target.values[o]);
        let fo = &f.components[o];
        verdicts.push((name.clone(), map_verdict(fo, x, y, max_degree)?));
    }
    Ok(EquivalenceReport { max_degree, verdicts })
}

fn map_verdict(f: &SimplicialMap, x: &SimplicialSet, y: &SimplicialSet, max_degree: usize) -> Result<EquivalenceVerdict> {
    let (cx, cy) = (pi0(x), pi0(y));
    let mut hit = vec![usize::MAX; cy.count];
    let mut injective = true;
    for v in 0..x.size(0) {
        let a = cx.of_vertex[v];
        let b = cy.of_vertex[f.apply(0, v)];
        if hit[b] == usize::MAX {
            hit[b] = a;
        } else if hit[b] != a {
            injective = false;
        }
    }
    // a component of x maps to exactly one component of y, so counting suffices
    if !injective || cx.count != cy.count || hit.contains(&usize::MAX) {
        return Ok(EquivalenceVerdict::Not { degree: 0 });
    }
    let limit = x.trusted_homology_degree().min(y.trusted_homology_degree());
    if max_degree > limit {
        return Err(Error::Truncation { degree: max_degree, limit });
    }
    let (ccx, ccy) = (reduced_chain_complex(x), reduced_chain_complex(y));
    let chain = induced_chain_map(f, x, y);
    for n in 1..=max_degree {
        let hx = ccx.homology_classes(n)?;
        let hy = ccy.homology_classes(n)?;
        let m = hx.induced_by(&hy, &chain[n])?;
        if !is_isomorphism(&hx, &hy, &m) {
            return Ok(EquivalenceVerdict::Not { degree: n });
        }
    }
    Ok(EquivalenceVerdict::HomologyEquivalent)
}

/// Exact comparison for simplicial abelian presheaves: isomorphism on
/// `π_n` for `n ≤ max_degree` at every object.
pub fn abelian_equivalence(
    f: &[SimplicialAbMap],
    source: &SimplicialAbPresheaf,
    target: &SimplicialAbPresheaf,
    max_degree: usize,
) -> Result<EquivalenceReport> {
    let mut verdicts = Vec::new();
    for (o, name) in source.site.objects().iter().enumerate() {
        let mut verdict = EquivalenceVerdict::Equivalent;
        for n in 0..=max_degree {
            let hx = source.values[o].homotopy_classes(n)?;
            let hy = target.values[o].homotopy_classes(n)?;
            let m = f[o].on_homotopy(n, &hx, &hy)?;
            if !is_isomorphism(&hx, &hy, &m) {
                verdict = EquivalenceVerdict::Not { degree: n };
                break;
            }
        }
        verdicts.push((name.clone(), verdict));
    }
    Ok(EquivalenceReport { max_degree, verdicts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::AbGroup;
    use crate::simplicial::{boundary_quotient_sphere, delta_plus, rp2, s0};

    fn arrow() -> Arc<FinCategory> {
        Arc::new(FinCategory::arrow())
    }

    /// `X(a) = point`, `X(b) = RP²`, restricting along `u` by the constant map.
    fn nonconstant(dim: usize) -> PresheafSpace {
        let site = arrow();
        let p = point(dim);
        let r = rp2(dim, false).unwrap();
        PresheafSpace::new(site, vec![p.clone(), r.clone()], vec![
            SimplicialMap::identity(&p),
            SimplicialMap::identity(&r),
            SimplicialMap::constant(&r),
        ])
        .unwrap()
    }

    #[test]
    fn categories() {
        let a = FinCategory::arrow();
        assert_eq!(a.morphisms().len(), 3);
        assert_eq!(a.compose(2, 0), Some(2));
        assert_eq!(a.compose(1, 2), Some(2));
        assert_eq!(a.compose(2, 2), None);
        // a → b → c without the composite
        let bad = FinCategory::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![("f".into(), 0, 1), ("g".into(), 1, 2)],
            vec![],
        );
        assert!(matches!(bad, Err(Error::Structural(m)) if m.contains("missing composite g ∘ f")));
        let wrong = FinCategory::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![("f".into(), 0, 1), ("g".into(), 1, 2)],
            vec![(4, 3, 3)],
        );
        assert!(matches!(wrong, Err(Error::Structural(m)) if m.contains("wrong endpoints")));
    }

    #[test]
    fn slices() {
        let a = FinCategory::arrow();
        let over_a = a.slice(0);
        assert_eq!(over_a.category.num_objects(), 1);
        let over_b = a.slice(1);
        assert_eq!(over_b.category.num_objects(), 2);
        assert_eq!(over_b.category.morphisms().len(), 3);
        assert_eq!(over_b.objects, vec![1, 0]);
        // a → b → c with its composite: the slice over c is again a chain
        let chain = FinCategory::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![("f".into(), 0, 1), ("g".into(), 1, 2), ("gf".into(), 0, 2)],
            vec![(4, 3, 5)],
        )
        .unwrap();
        let s = chain.slice(2);
        assert_eq!(s.category.num_objects(), 3);
        assert_eq!(s.category.morphisms().len(), 6);
    }

    #[test]
    fn one_point_site_reduces_to_simplicial() {
        let site = Arc::new(FinCategory::one_point());
        let c = boundary_quotient_sphere(1, 3).unwrap();
        let r = rp2(3, false).unwrap();
        let x = PresheafSpace::constant(site.clone(), &c);
        let y = PresheafSpace::constant(site.clone(), &r);
        assert_eq!(x.smash(&y).value(0), &smash(&c, &r));
        assert_eq!(x.product(&y).value(0), &product(&c, &r));
        let (w, inj) = PresheafSpace::wedge(site.clone(), &[&x, &y], 3);
        assert_eq!(w.value(0), &wedge(&[&c, &r], 3).space);
        inj[1].validate(&y, &w).unwrap();
        let unit = PresheafSpace::constant(site, &s0(3));
        let xs = unit.smash(&x);
        assert_eq!(xs.value(0).sizes(), x.value(0).sizes());
    }

    #[test]
    fn arrow_site_naturality() {
        let x = nonconstant(2);
        x.validate().unwrap();
        let c = PresheafSpace::constant(arrow(), &boundary_quotient_sphere(1, 2).unwrap());
        let s = c.smash(&x);
        s.validate().unwrap();
        x.smash(&c).validate().unwrap();
        x.product(&c).validate().unwrap();
        let (w, inj) = PresheafSpace::wedge(arrow(), &[&x, &c], 2);
        w.validate().unwrap();
        for (i, src) in [&x, &c].into_iter().enumerate() {
            inj[i].validate(src, &w).unwrap();
        }
        // functoriality failure is reported
        let mut bad = x.clone();
        bad.restrictions[2] = SimplicialMap::identity(bad.value(1));
        assert!(bad.validate().is_err());
    }

    #[test]
    fn quotient_of_subpresheaf() {
        let site = arrow();
        let d = delta_plus(1, 2).unwrap();
        let x = PresheafSpace::constant(site, &d);
        // collapse the boundary: vertices and their degeneracies
        let level: Vec<Vec<bool>> =
            (0..=2).map(|k| (0..d.size(k)).map(|a| a == 0 || is_vertex_chain(&d, k, a)).collect()).collect();
        let sub = vec![level; 2];
        let (q, proj) = x.quotient(&sub).unwrap();
        proj.validate(&x, &q).unwrap();
        assert_eq!(crate::homology::reduced_homology(q.value(0), 1).unwrap(), AbGroup::free(1));
    }

    fn is_vertex_chain(d: &SimplicialSet, k: usize, a: usize) -> bool {
        // an iterated degeneracy of a vertex: all vertices equal
        let mut verts = Vec::new();
        for i in 0..=k {
            let mut v = a;
            let mut deg = k;
            let mut idx: Vec<usize> = (0..=k).collect();
            while deg > 0 {
                let drop = idx.iter().position(|&j| j != i).unwrap();
                v = d.face(deg, drop, v);
                idx.remove(drop);
                deg -= 1;
            }
            verts.push(v);
        }
        verts.windows(2).all(|w| w[0] == w[1])
    }

    #[test]
    fn equivalence_proxy_verdicts() {
        let site = arrow();
        let c = boundary_quotient_sphere(1, 3).unwrap();
        let x = PresheafSpace::constant(site.clone(), &c);
        let id = PresheafMap::identity(&x);
        let r = sectionwise_equivalence_proxy(&id, &x, &x, 2).unwrap();
        assert!(r.verdicts.iter().all(|(_, v)| *v == EquivalenceVerdict::HomologyEquivalent));
        let pt = PresheafSpace::point(site.clone(), 3);
        let collapse = PresheafMap::new(&x, &pt, vec![SimplicialMap::constant(&c); 2]).unwrap();
        let r = sectionwise_equivalence_proxy(&collapse, &x, &pt, 2).unwrap();
        assert_eq!(r.verdicts[0].1, EquivalenceVerdict::Not { degree: 1 });
        assert!(!r.holds());
        let a = free_abelian(&x);
        let ids: Vec<_> = a.values().iter().map(SimplicialAbMap::identity).collect();
        let r = abelian_equivalence(&ids, &a, &a, 2).unwrap();
        assert!(r.verdicts.iter().all(|(_, v)| *v == EquivalenceVerdict::Equivalent));
    }

    #[test]
    fn free_abelian_values() {
        let site = arrow();
        let z0 = free_abelian(&PresheafSpace::constant(site.clone(), &s0(3)));
        z0.validate().unwrap();
        assert_eq!(z0.value(0).homotopy(0).unwrap(), AbGroup::free(1));
        assert_eq!(z0.value(0).rank(2), 1);
        let zp = free_abelian(&PresheafSpace::point(site.clone(), 3));
        assert_eq!(zp.value(1).rank(1), 0);
        let x = nonconstant(3);
        let a = free_abelian(&x);
        a.validate().unwrap();
        assert_eq!(a.value(1).homotopy(1).unwrap(), AbGroup::cyclic(2));
        assert_eq!(a.value(0).homotopy(1).unwrap(), AbGroup::trivial());
    }

    #[test]
    fn free_abelian_preserves_wedges() {
        let site = arrow();
        let c = PresheafSpace::constant(site.clone(), &boundary_quotient_sphere(1, 2).unwrap());
        let x = nonconstant(2);
        let (w, _) = PresheafSpace::wedge(site, &[&c, &x], 2);
        let zw = free_abelian(&w);
        let (zc, zx) = (free_abelian(&c), free_abelian(&x));
        for o in 0..2 {
            for k in 0..=2 {
                assert_eq!(zw.value(o).rank(k), zc.value(o).rank(k) + zx.value(o).rank(k));
                // block structure: each face matrix is block diagonal
                let f = zw.value(o).face(k.max(1), 0);
                let split_src = zc.value(o).rank(k.max(1));
                let split_tgt = zc.value(o).rank(k.max(1) - 1);
                for (j, col) in f.columns().iter().enumerate() {
                    for (i, _) in col {
                        assert_eq!(j < split_src, *i < split_tgt);
                    }
                }
            }
        }
    }
}
