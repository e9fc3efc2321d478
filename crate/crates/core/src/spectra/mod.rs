//! Truncated presheaves of spectra, the functor `Sp` from Γ-spaces, its
//! right adjoint `Φ`, and stable invariants.
//!
//! A spectrum is kept up to a level bound `L`; every level is a presheaf of
//! pointed simplicial sets with one common dimension bound. Spectra whose
//! levels are simplicial abelian presheaves (those coming from
//! Eilenberg–Mac Lane Γ-spaces) have a separate linear representation so
//! that infinite coefficient groups stay finite to describe.

mod coeq;
mod les;
mod phi;
mod sp;
mod stable;
mod symmetric;

use std::sync::Arc;


use crate::error::{structural, Result};
use crate::homology::SimplicialAbMap;
use crate::simplicial::{boundary_quotient_sphere, product, smash_spheres, SimplicialMap, SimplicialSet};
use crate::site::{tensor_presheaf, FinCategory, PresheafMap, PresheafSpace, SimplicialAbPresheaf, Slice};

pub use coeq::{sp_coequalizer_check, CoequalizerReport};
pub use les::{cofiber_les_check, les_exactness, ChainTriple, LesReport};
pub use phi::{enumerate_spectrum_maps, phi, sp_phi_adjunction_check, PhiValue};
pub use sp::{sp, sp_linear, sp_map, sphere_comparison};
pub use stable::{
    gamma_pi, spectrum_homology, spectrum_homology_linear, wedge_to_product_stable_check, LevelEntry, StableInvariantReport,
    Tag, WedgeProductReport,
};
pub use symmetric::{symmetric_equivariance_check, symmetric_equivariance_check_linear, EquivarianceReport};

/// `S¹ ∧ X`, with `(t, x)` at index `(t - 1)(|X_k| - 1) + x`.
pub fn suspend(x: &PresheafSpace) -> PresheafSpace {
    let circle = boundary_quotient_sphere(1, x.dim()).expect("circle within any bound");
    PresheafSpace::constant(x.site().clone(), &circle).smash(x)
}

/// `Z̃[S¹] ⊗ E`, with `(t, g)` at index `(t - 1) · rank + g`.
pub fn suspend_linear(e: &SimplicialAbPresheaf) -> SimplicialAbPresheaf {
    let circle = boundary_quotient_sphere(1, e.dim()).expect("circle within any bound");
    tensor_presheaf(e, &PresheafSpace::constant(e.site().clone(), &circle))
}

/// A spectrum truncated at level `L`: levels `E⁰ … E^L` and structure maps
/// `σ_k : S¹ ∧ E^k → E^{k+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSpectrum {
    name: String,
    levels: Vec<PresheafSpace>,
    structure: Vec<PresheafMap>,
}

impl TruncatedSpectrum {
    pub fn new(name: impl Into<String>, levels: Vec<PresheafSpace>, structure: Vec<PresheafMap>) -> Result<Self> {
        let e = Self { name: name.into(), levels, structure };
        e.validate()?;
        Ok(e)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn level_bound(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.levels[0].dim()
    }

    pub fn site(&self) -> &Arc<FinCategory> {
        self.levels[0].site()
    }

    pub fn level(&self, k: usize) -> &PresheafSpace {
        &self.levels[k]
    }

    pub fn levels(&self) -> &[PresheafSpace] {
        &self.levels
    }

    pub fn structure_map(&self, k: usize) -> &PresheafMap {
        &self.structure[k]
    }

    /// Checks level shapes and that every structure map is a map of
    /// presheaves out of the suspension.
    pub fn validate(&self) -> Result<()> {
        if self.levels.is_empty() {
            return Err(structural("a spectrum needs level 0"));
        }
        if self.structure.len() + 1 != self.levels.len() {
            return Err(structural("one structure map per consecutive pair of levels is required"));
        }
        let dim = self.dim();
        for (k, e) in self.levels.iter().enumerate() {
            if e.dim() != dim || e.site().num_objects() != self.site().num_objects() {
                return Err(structural(format!("level {k} has a different site or dimension bound")));
            }
        }
        for (k, s) in self.structure.iter().enumerate() {
            s.validate(&suspend(&self.levels[k]), &self.levels[k + 1])
                .map_err(|e| structural(format!("structure map at level {k}: {e}")))?;
        }
        Ok(())
    }

    /// Keeps levels `0..=l`.
    pub fn truncate_levels(&self, l: usize) -> Result<Self> {
        if l > self.level_bound() {
            return Err(structural(format!("spectrum has only {} levels", self.level_bound() + 1)));
        }
        Ok(Self { name: self.name.clone(), levels: self.levels[..=l].to_vec(), structure: self.structure[..l].to_vec() })
    }

    /// Restriction along the forgetful functor of a slice.
    pub fn restrict(&self, slice: &Slice) -> Self {
        let structure = self
            .structure
            .iter()
            .map(|s| PresheafMap::from_components(slice.objects.iter().map(|&o| s.component(o).clone()).collect()))
            .collect();
        Self { name: self.name.clone(), levels: self.levels.iter().map(|e| e.restrict(slice)).collect(), structure }
    }

    /// The constant point spectrum.
    pub fn point(site: Arc<FinCategory>, l: usize, dim: usize) -> Self {
        let p = PresheafSpace::point(site, dim);
        let s = PresheafMap::constant(&suspend(&p));
        Self { name: "*".into(), levels: vec![p; l + 1], structure: vec![s; l] }
    }

    /// A deterministic plain-text description: level sizes per object and
    /// degree.
    pub fn summary(&self) -> String {
        let mut out = format!("spectrum {} levels 0..{} dim {}\n", self.name, self.level_bound(), self.dim());
        for (k, e) in self.levels.iter().enumerate() {
            for (o, name) in self.site().objects().iter().enumerate() {
                let sizes: Vec<String> = e.value(o).sizes().iter().map(usize::to_string).collect();
                out.push_str(&format!("level {k} {name} sizes {}\n", sizes.join(" ")));
            }
        }
        out
    }
}

/// A map of truncated spectra, one presheaf map per level.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpectrumMap {
    levels: Vec<PresheafMap>,
}

impl SpectrumMap {
    /// Validates each level and every compatibility square
    /// `f^{k+1} ∘ σ_k = σ'_k ∘ (S¹ ∧ f^k)`.
    pub fn new(source: &TruncatedSpectrum, target: &TruncatedSpectrum, levels: Vec<PresheafMap>) -> Result<Self> {
        let f = Self { levels };
        f.validate(source, target)?;
        Ok(f)
    }

    pub fn level(&self, k: usize) -> &PresheafMap {
        &self.levels[k]
    }

    pub fn levels(&self) -> &[PresheafMap] {
        &self.levels
    }

    pub fn after(&self, first: &SpectrumMap) -> SpectrumMap {
        Self { levels: self.levels.iter().zip(&first.levels).map(|(g, f)| g.after(f)).collect() }
    }

    pub fn validate(&self, source: &TruncatedSpectrum, target: &TruncatedSpectrum) -> Result<()> {
        if self.levels.len() != source.levels.len() || source.levels.len() != target.levels.len() {
            return Err(structural("spectrum map level count mismatch"));
        }
        for (k, f) in self.levels.iter().enumerate() {
            f.validate(&source.levels[k], &target.levels[k])?;
        }
        let circle = boundary_quotient_sphere(1, source.dim())?;
        let id = SimplicialMap::identity(&circle);
        for k in 0..source.level_bound() {
            for o in 0..source.site().num_objects() {
                let sf = crate::simplicial::smash_maps(
                    &id,
                    self.levels[k].component(o),
                    &circle,
                    source.levels[k].value(o),
                    target.levels[k].value(o),
                );
                let lhs = self.levels[k + 1].component(o).after(source.structure[k].component(o));
                let rhs = target.structure[k].component(o).after(&sf);
                if lhs != rhs {
                    let q = (0..=source.dim()).find(|&q| lhs.table(q) != rhs.table(q)).unwrap_or(0);
                    return Err(structural(format!(
                        "compatibility square at level {k} fails over object {o} in degree {q}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A spectrum whose levels are simplicial abelian presheaves, with linear
/// structure maps `Z̃[S¹] ⊗ E^k → E^{k+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSpectrum {
    name: String,
    levels: Vec<SimplicialAbPresheaf>,
    structure: Vec<Vec<SimplicialAbMap>>,
}

impl LinearSpectrum {
    pub fn new(name: impl Into<String>, levels: Vec<SimplicialAbPresheaf>, structure: Vec<Vec<SimplicialAbMap>>) -> Result<Self> {
        let e = Self { name: name.into(), levels, structure };
        e.validate()?;
        Ok(e)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn level_bound(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.levels[0].dim()
    }

    pub fn site(&self) -> &Arc<FinCategory> {
        self.levels[0].site()
    }

    pub fn level(&self, k: usize) -> &SimplicialAbPresheaf {
        &self.levels[k]
    }

    /// Component of `σ_k` over an object.
    pub fn structure_map(&self, k: usize, object: usize) -> &SimplicialAbMap {
        &self.structure[k][object]
    }

    pub fn validate(&self) -> Result<()> {
        if self.levels.is_empty() || self.structure.len() + 1 != self.levels.len() {
            return Err(structural("a linear spectrum needs one structure map per consecutive pair of levels"));
        }
        let site = self.site().clone();
        for (k, maps) in self.structure.iter().enumerate() {
            let susp = suspend_linear(&self.levels[k]);
            let next = &self.levels[k + 1];
            if maps.len() != site.num_objects() {
                return Err(structural(format!("structure map at level {k} has the wrong number of components")));
            }
            for (o, m) in maps.iter().enumerate() {
                m.validate(susp.value(o), next.value(o))
                    .map_err(|e| structural(format!("structure map at level {k}, object {o}: {e}")))?;
            }
            for (mi, mor) in site.morphisms().iter().enumerate() {
                let lhs = maps[mor.source].after(susp.restriction(mi));
                let rhs = next.restriction(mi).after(&maps[mor.target]);
                if !lhs.agrees_with(&rhs, next.value(mor.source)) {
                    return Err(structural(format!("structure map at level {k} is not natural along {}", mor.name)));
                }
            }
        }
        Ok(())
    }
}

/// `(S^k)^{×n}` with `n`-tuples in lexicographic order, first factor most
/// significant; the point for `n = 0`.
pub fn sphere_power(k: usize, n: usize, dim: usize) -> Result<SimplicialSet> {
    let s = smash_spheres(k, dim)?;
    Ok(match n {
        0 => crate::simplicial::point(dim),
        _ => (1..n).fold(s.clone(), |acc, _| product(&acc, &s)),
    })
}

/// `|Sᵏ_q|` for `q ≤ dim`.
pub(crate) fn smash_spheres_size(k: usize, dim: usize) -> Result<Vec<usize>> {
    let s = smash_spheres(k, dim)?;
    Ok((0..=dim).map(|q| s.size(q)).collect())
}

/// Index of a tuple in [`sphere_power`] given the factor size.
pub(crate) fn tuple_index(tuple: &[usize], size: usize) -> usize {
    tuple.iter().fold(0, |acc, &v| acc * size + v)
}

pub(crate) fn tuple_digits(mut idx: usize, size: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for slot in (0..n).rev() {
        out[slot] = idx % size;
        idx /= size;
    }
    out
}

/// The product sphere spectrum `𝕊^{×n}` with levels `(S^k)^{×n}` and the
/// structure maps `t ∧ (x₁, …, xₙ) ↦ (t ∧ x₁, …, t ∧ xₙ)`.
pub fn sphere_spectrum(site: Arc<FinCategory>, n: usize, l: usize, dim: usize) -> Result<TruncatedSpectrum> {
    let mut levels = Vec::with_capacity(l + 1);
    for k in 0..=l {
        levels.push(PresheafSpace::constant(site.clone(), &sphere_power(k, n, dim)?));
    }
    let mut structure = Vec::with_capacity(l);
    for k in 0..l {
        let (sk, sk1) = (smash_spheres(k, dim)?, smash_spheres(k + 1, dim)?);
        let susp = suspend(&levels[k]);
        let tables: Vec<Vec<usize>> = (0..=dim)
            .map(|q| {
                let (a, b) = (sk.size(q), sk1.size(q));
                let width = levels[k].value(0).size(q) - 1;
                let mut t = vec![0; susp.value(0).size(q)];
                for c in 1..q + 1 {
                    for x in 1..=width {
                        let image: Vec<usize> = tuple_digits(x, a, n)
                            .into_iter()
                            .map(|v| if v == 0 { 0 } else { (c - 1) * (a - 1) + v })
                            .collect();
                        t[(c - 1) * width + x] = tuple_index(&image, b);
                    }
                }
                t
            })
            .collect();
        let m = SimplicialMap::from_tables(tables);
        structure.push(PresheafMap::from_components(vec![m; site.num_objects()]));
    }
    TruncatedSpectrum::new(format!("S^×{n}"), levels, structure)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{reduced_homology, AbGroup};

    fn one() -> Arc<FinCategory> {
        Arc::new(FinCategory::one_point())
    }

    #[test]
    fn sphere_spectra_are_valid() {
        for n in 0..=2 {
            let s = sphere_spectrum(one(), n, 2, 3).unwrap();
            s.validate().unwrap();
        }
        let s1 = sphere_spectrum(one(), 1, 3, 4).unwrap();
        for k in 0..=3 {
            assert_eq!(s1.level(k).value(0), &smash_spheres(k, 4).unwrap());
        }
        let s0 = sphere_spectrum(one(), 0, 2, 3).unwrap();
        assert!(s0.levels().iter().all(PresheafSpace::is_point));
    }

    #[test]
    fn torus_level_homology() {
        // level 1 of the square of the sphere spectrum is S¹ × S¹
        let s = sphere_spectrum(one(), 2, 1, 3).unwrap();
        assert_eq!(reduced_homology(s.level(1).value(0), 1).unwrap(), AbGroup::free(2));
        assert_eq!(reduced_homology(s.level(1).value(0), 2).unwrap(), AbGroup::free(1));
    }

    #[test]
    fn broken_structure_map_is_rejected() {
        let s = sphere_spectrum(one(), 1, 1, 2).unwrap();
        let mut tables = s.structure_map(0).component(0).tables().to_vec();
        tables[1][1] = 0;
        let bad = PresheafMap::from_components(vec![SimplicialMap::from_tables(tables)]);
        assert!(TruncatedSpectrum::new("bad", s.levels().to_vec(), vec![bad]).is_err());
    }

    #[test]
    fn identity_and_zero_are_spectrum_maps() {
        let s = sphere_spectrum(one(), 1, 2, 3).unwrap();
        let id = SpectrumMap::new(&s, &s, s.levels().iter().map(PresheafMap::identity).collect()).unwrap();
        assert_eq!(id.after(&id), id);
        let p = TruncatedSpectrum::point(one(), 2, 3);
        SpectrumMap::new(&s, &p, s.levels().iter().map(PresheafMap::constant).collect()).unwrap();
    }
}
