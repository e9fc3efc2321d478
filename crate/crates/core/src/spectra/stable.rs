//! Stable invariants: the system of groups `H_{n+k}(Eᵏ)` (or `π_{n+k}`
//! for abelian levels) joined by suspension followed by the structure map.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::Gamma;
use crate::homology::{
    induced_chain_map, is_isomorphism, pi_n_via_hurewicz, reduced_chain_complex, AbGroup, ConnectivityCertificate,
    HomologyClasses, IntMatrix,
};
use crate::simplicial::{boundary_quotient_sphere, smash_spheres, wedge, SimplicialSet};

use super::sp::{block_embedding, sp, sp_linear};
use super::{sphere_power, tuple_index, LinearSpectrum, TruncatedSpectrum};

/// Whether a reported group is the stable homotopy group itself or the
/// homology group standing in for it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Tag {
    #[serde(rename = "EXACT")]
    Exact,
    #[serde(rename = "SURROGATE")]
    Surrogate,
}

impl std::fmt::Display for Tag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Tag::Exact => "EXACT",
            Tag::Surrogate => "SURROGATE",
        })
    }
}

/// One level of the stable system: the group in degree `n + k` over each
/// object and whether the comparison to the next level is an isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelEntry {
    pub level: usize,
    pub degree: usize,
    pub groups: Vec<(String, AbGroup)>,
    pub comparison_to_next: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableInvariantReport {
    pub name: String,
    pub degree: usize,
    /// `homotopy` or `homology`: what was computed at each level.
    pub invariant: String,
    pub tag: Tag,
    pub levels: Vec<LevelEntry>,
    /// Levels that were not computed because `n + k` lies outside the
    /// trusted degrees of the dimension bound.
    pub skipped_levels: Vec<usize>,
    pub stabilized: bool,
    pub stable: Option<Vec<(String, AbGroup)>>,
    pub note: String,
}

impl StableInvariantReport {
    /// The stable group over the first object, when stabilized.
    pub fn value(&self) -> Option<&AbGroup> {
        self.stable.as_ref().and_then(|s| s.first()).map(|(_, g)| g)
    }

    pub fn render(&self) -> String {
        let mut out = format!("{} degree {} [{}] {}\n", self.name, self.degree, self.tag, self.invariant);
        for l in &self.levels {
            let groups: Vec<String> = l.groups.iter().map(|(o, g)| format!("{o}: {g}")).collect();
            let cmp = match l.comparison_to_next {
                Some(true) => " -> iso",
                Some(false) => " -> not iso",
                None => "",
            };
            out.push_str(&format!("  level {} degree {}: {}{cmp}\n", l.level, l.degree, groups.join(", ")));
        }
        if !self.skipped_levels.is_empty() {
            let s: Vec<String> = self.skipped_levels.iter().map(usize::to_string).collect();
            out.push_str(&format!("  outside window: levels {}\n", s.join(" ")));
        }
        match &self.stable {
            Some(g) => {
                let groups: Vec<String> = g.iter().map(|(o, g)| format!("{o}: {g}")).collect();
                out.push_str(&format!("  stabilized: {}\n", groups.join(", ")));
            }
            None => out.push_str("  not stabilized\n"),
        }
        if !self.note.is_empty() {
            out.push_str(&format!("  note: {}\n", self.note));
        }
        out
    }
}

/// Applies `s_{ν_q} ⋯ s_{ν_1}` (indices ascending) to the generator of the
/// circle.
fn degenerate_circle(circle: &SimplicialSet, nu: &[usize]) -> usize {
    let mut x = 1;
    for (step, &j) in nu.iter().enumerate() {
        x = circle.degeneracy(1 + step, j, x);
    }
    x
}

/// The Eilenberg–Zilber terms of `ι × b` for `b` of degree `j`: pairs of a
/// sign, the circle simplex `s_ν ι` and the degeneracy index `p` to apply
/// to `b`, all in degree `j + 1`.
fn shuffle_terms(circle: &SimplicialSet, j: usize) -> Vec<(i64, usize, usize)> {
    (0..=j)
        .map(|p| {
            let nu: Vec<usize> = (0..=j).filter(|&i| i != p).collect();
            (if p % 2 == 0 { 1 } else { -1 }, degenerate_circle(circle, &nu), p)
        })
        .collect()
}

/// The chain map `C̃_j(Eᵏ) → C̃_{j+1}(E^{k+1})`, `z ↦ σ_*(ι × z)`, over one
/// object, on normalized chains.
fn suspension_chain_map(e: &TruncatedSpectrum, k: usize, object: usize, j: usize) -> IntMatrix {
    let circle = boundary_quotient_sphere(1, e.dim()).expect("circle");
    let (x, y) = (e.level(k).value(object), e.level(k + 1).value(object));
    let sigma = e.structure_map(k).component(object);
    let target: HashMap<usize, usize> = y.nondegenerate(j + 1).into_iter().enumerate().map(|(i, s)| (s, i)).collect();
    let width = x.size(j + 1) - 1;
    let terms = shuffle_terms(&circle, j);
    let cols = x
        .nondegenerate(j)
        .into_iter()
        .map(|b| {
            let mut col: HashMap<usize, i64> = HashMap::new();
            for &(sign, t, p) in &terms {
                let image = sigma.apply(j + 1, (t - 1) * width + x.degeneracy(j, p, b));
                if let Some(&r) = target.get(&image) {
                    *col.entry(r).or_default() += sign;
                }
            }
            let mut col: Vec<(usize, BigInt)> = col.into_iter().filter(|(_, v)| *v != 0).map(|(r, v)| (r, BigInt::from(v))).collect();
            col.sort();
            col
        })
        .collect();
    IntMatrix::from_sparse_columns(target.len(), cols)
}

/// The same chain map for abelian levels, on the normalized complex.
fn suspension_matrix_linear(e: &LinearSpectrum, k: usize, object: usize, j: usize) -> IntMatrix {
    let circle = boundary_quotient_sphere(1, e.dim()).expect("circle");
    let a = e.level(k).value(object);
    let sigma = e.structure_map(k, object).matrix(j + 1);
    let rank = a.rank(j + 1);
    let blocks = circle.size(j + 1) - 1;
    let mut acc = IntMatrix::zeros(sigma.nrows(), a.rank(j));
    for (sign, t, p) in shuffle_terms(&circle, j) {
        let term = sigma.mul(&block_embedding(t, rank, blocks)).mul(a.degeneracy(j, p));
        acc = acc.add(&term.scale(&BigInt::from(sign)));
    }
    acc
}

fn finish(
    name: String,
    n: usize,
    invariant: &str,
    tag: Tag,
    entries: Vec<LevelEntry>,
    skipped: Vec<usize>,
    note: String,
) -> StableInvariantReport {
    let cmps: Vec<bool> = entries.iter().filter_map(|e| e.comparison_to_next).collect();
    let stabilized = cmps.len() >= 2 && cmps[cmps.len() - 2..].iter().all(|&c| c);
    let stable = if stabilized { entries.last().map(|e| e.groups.clone()) } else { None };
    StableInvariantReport { name, degree: n, invariant: invariant.into(), tag, levels: entries, skipped_levels: skipped, stabilized, stable, note }
}

fn window(n: usize, top: usize, dim: usize) -> (Vec<usize>, Vec<usize>) {
    (0..=top).partition(|&k| n + k < dim)
}

/// `H̃_{n+k}(Eᵏ)` over every object for each level in the trusted window,
/// joined by suspension and the structure maps. Homology of set-valued
/// levels is reported with the surrogate tag.
pub fn spectrum_homology(e: &TruncatedSpectrum, n: usize) -> Result<StableInvariantReport> {
    let (levels, skipped) = window(n, e.level_bound(), e.dim());
    let objects = e.site().objects().to_vec();
    let classes: Vec<Vec<HomologyClasses>> = levels
        .iter()
        .map(|&k| {
            (0..objects.len())
                .map(|o| reduced_chain_complex(e.level(k).value(o)).homology_classes(n + k))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let mut entries = Vec::new();
    for (i, &k) in levels.iter().enumerate() {
        let comparison = if i + 1 < levels.len() {
            let mut all = true;
            for o in 0..objects.len() {
                let m = suspension_chain_map(e, k, o, n + k);
                let induced = classes[i][o].induced_by(&classes[i + 1][o], &m)?;
                all &= is_isomorphism(&classes[i][o], &classes[i + 1][o], &induced);
            }
            Some(all)
        } else {
            None
        };
        let groups = objects.iter().cloned().zip(classes[i].iter().map(|c| c.group.clone())).collect();
        entries.push(LevelEntry { level: k, degree: n + k, groups, comparison_to_next: comparison });
    }
    Ok(finish(e.name().to_string(), n, "homology", Tag::Surrogate, entries, skipped, String::new()))
}

/// `π_{n+k}(Eᵏ)` for abelian levels, exact via the normalized complex.
pub fn spectrum_homology_linear(e: &LinearSpectrum, n: usize) -> Result<StableInvariantReport> {
    let (levels, skipped) = window(n, e.level_bound(), e.dim());
    let objects = e.site().objects().to_vec();
    let classes: Vec<Vec<HomologyClasses>> = levels
        .iter()
        .map(|&k| (0..objects.len()).map(|o| e.level(k).value(o).homotopy_classes(n + k)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let mut entries = Vec::new();
    for (i, &k) in levels.iter().enumerate() {
        let comparison = if i + 1 < levels.len() {
            let mut all = true;
            for o in 0..objects.len() {
                let m = suspension_matrix_linear(e, k, o, n + k);
                let induced = classes[i][o].induced_by(&classes[i + 1][o], &m)?;
                all &= is_isomorphism(&classes[i][o], &classes[i + 1][o], &induced);
            }
            Some(all)
        } else {
            None
        };
        let groups = objects.iter().cloned().zip(classes[i].iter().map(|c| c.group.clone())).collect();
        entries.push(LevelEntry { level: k, degree: n + k, groups, comparison_to_next: comparison });
    }
    Ok(finish(e.name().to_string(), n, "homotopy", Tag::Exact, entries, skipped, "abelian levels, Moore complexes".into()))
}

/// `π_n` of the spectrum of `F`. With a linear model the answer is exact in
/// every degree. Otherwise `n = 0` is exact through Hurewicz at a level
/// `k ≥ 2`, where level `k` is `(k-1)`-connected; higher `n` fall back to
/// stable homology and are tagged as surrogates.
pub fn gamma_pi(f: &Gamma, n: usize, l: usize, dim: usize) -> Result<StableInvariantReport> {
    if let Some(a) = f.linear_model() {
        let a = a.truncate(dim.min(a.dim()))?;
        return spectrum_homology_linear(&sp_linear(&a, l.min(a.dim()), &f.describe())?, n);
    }
    let e = sp(f, l, dim)?;
    let mut report = spectrum_homology(&e, n)?;
    if n == 0 && report.stabilized {
        let last = report.levels.last().expect("stabilized reports have levels").level;
        if last >= 2 {
            let cert = ConnectivityCertificate::new(last - 1, "level k of a spectrum of a Γ-space is (k-1)-connected");
            for (o, (_, g)) in report.stable.as_mut().expect("stabilized").iter_mut().enumerate() {
                let pi = pi_n_via_hurewicz(e.level(last).value(o), last, Some(&cert))?;
                if &pi != g {
                    return Err(Error::Precondition("Hurewicz group disagrees with homology".into()));
                }
                *g = pi;
            }
            report.invariant = "homotopy".into();
            report.tag = Tag::Exact;
            report.note = format!("Hurewicz at level {last}");
        }
    }
    Ok(report)
}

/// One comparison `H̃_k(⋁ₙ Sᵐ) → H̃_k((Sᵐ)^{×n})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WedgeProductEntry {
    pub level: usize,
    pub degree: usize,
    pub in_window: bool,
    pub isomorphism: bool,
    pub source: AbGroup,
    pub target: AbGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WedgeProductReport {
    pub n: usize,
    pub window: String,
    pub entries: Vec<WedgeProductEntry>,
    pub passed: bool,
}

/// Compares the wedge and the product of `n` sphere spectra levelwise in
/// homology. Degrees `k ≤ 2m - 1` at level `m ≥ 1` form the stable window;
/// comparisons outside it are reported but do not count against the check.
pub fn wedge_to_product_stable_check(n: usize, l: usize, dim: usize) -> Result<WedgeProductReport> {
    let mut entries = Vec::new();
    for m in 0..=l {
        let s = smash_spheres(m, dim)?;
        let w = wedge(&vec![&s; n], dim);
        let p = sphere_power(m, n, dim)?;
        let tables: Vec<Vec<usize>> = (0..=dim)
            .map(|q| {
                let mut t = vec![0; w.space.size(q)];
                for (slot, inj) in w.injections.iter().enumerate() {
                    for a in 0..s.size(q) {
                        let mut tuple = vec![0; n];
                        tuple[slot] = a;
                        t[inj.apply(q, a)] = tuple_index(&tuple, s.size(q));
                    }
                }
                t
            })
            .collect();
        let f = crate::simplicial::SimplicialMap::new(&w.space, &p, tables)?;
        let (cw, cp) = (reduced_chain_complex(&w.space), reduced_chain_complex(&p));
        let chain = induced_chain_map(&f, &w.space, &p);
        for k in 0..dim {
            let (hw, hp) = (cw.homology_classes(k)?, cp.homology_classes(k)?);
            let induced = hw.induced_by(&hp, &chain[k])?;
            entries.push(WedgeProductEntry {
                level: m,
                degree: k,
                in_window: m >= 1 && k < 2 * m,
                isomorphism: is_isomorphism(&hw, &hp, &induced),
                source: hw.group.clone(),
                target: hp.group.clone(),
            });
        }
    }
    let passed = entries.iter().all(|e| !e.in_window || e.isomorphism);
    Ok(WedgeProductReport { n, window: "degrees k <= 2m - 1 at level m >= 1".into(), entries, passed })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::gamma::{corepresentable, eilenberg_mac_lane};
    use crate::site::FinCategory;
    use crate::homology::SimplicialAbGroup;
    use crate::site::SimplicialAbPresheaf;

    fn one() -> Arc<FinCategory> {
        Arc::new(FinCategory::one_point())
    }

    #[test]
    fn sphere_spectrum_pi_zero_is_z() {
        let r = gamma_pi(&corepresentable(one(), 1, 4), 0, 3, 4).unwrap();
        assert!(r.stabilized, "{}", r.render());
        assert_eq!(r.tag, Tag::Exact);
        assert_eq!(r.value(), Some(&AbGroup::free(1)));
    }

    #[test]
    fn eilenberg_mac_lane_of_z() {
        let a = SimplicialAbPresheaf::constant(one(), &SimplicialAbGroup::constant(&[0], 4));
        let h = eilenberg_mac_lane(a);
        let r = gamma_pi(&h, 0, 2, 4).unwrap();
        assert!(r.stabilized);
        assert_eq!(r.value(), Some(&AbGroup::free(1)));
        let r1 = gamma_pi(&h, 1, 2, 4).unwrap();
        assert_eq!(r1.value(), Some(&AbGroup::trivial()));
    }

    #[test]
    fn linear_and_set_models_agree_for_z2() {
        let a = SimplicialAbPresheaf::constant(one(), &SimplicialAbGroup::constant(&[2], 3));
        let lin = spectrum_homology_linear(&sp_linear(&a, 2, "H(Z/2)").unwrap(), 0).unwrap();
        let set = spectrum_homology(&sp(&eilenberg_mac_lane(a), 2, 3).unwrap(), 0).unwrap();
        assert_eq!(lin.levels.len(), set.levels.len());
        // level 0 is discrete: π₀ = Z/2 but H̃₀ of two points is Z
        assert_eq!(set.levels[0].groups[0].1, AbGroup::free(1));
        for (x, y) in lin.levels.iter().zip(&set.levels).skip(1) {
            assert_eq!(x.groups, y.groups);
        }
        assert_eq!(lin.value(), Some(&AbGroup::cyclic(2)));
    }

    #[test]
    fn wedge_into_product_is_stable_equivalence_in_window() {
        let r = wedge_to_product_stable_check(2, 2, 5).unwrap();
        assert!(r.passed);
        let at = |m, k| r.entries.iter().find(|e| e.level == m && e.degree == k).unwrap();
        assert!(at(2, 2).isomorphism);
        assert_eq!(at(2, 2).target, AbGroup::free(2));
        // the top cell of S² × S² lies outside the window
        let top = at(2, 4);
        assert!(!top.in_window && !top.isomorphism);
        assert_eq!(top.target, AbGroup::free(1));
    }
}
