//! The associated spectrum of a Γ-space.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::gamma::{Gamma, GammaMap};
use crate::homology::{IntMatrix, SimplicialAbMap};
use crate::simplicial::{pointed_map_from_index, smash_spheres, PointedMap, SimplicialMap, SimplicialSet};
use crate::site::{tensor_presheaf, PresheafMap, PresheafSpace, SimplicialAbPresheaf};

use super::{sphere_spectrum, suspend, suspend_linear, tuple_index, LinearSpectrum, SpectrumMap, TruncatedSpectrum};

/// Size of the pointed set `(Sᵏ)_m` without its basepoint.
fn arity(sphere: &SimplicialSet, m: usize) -> usize {
    sphere.size(m) - 1
}

fn check_bounds(f: &Gamma, l: usize, dim: usize) -> Result<()> {
    if dim > f.dim() {
        return Err(Error::DimensionBound(format!(
            "{} is only known up to simplicial degree {}, level spaces need {dim}",
            f.describe(),
            f.dim()
        )));
    }
    if l > dim {
        return Err(Error::DimensionBound(format!("level {l} needs a dimension bound of at least {l}")));
    }
    let needed = dim.pow(l as u32);
    if let Some(b) = f.bound() {
        if needed > b {
            return Err(Error::ArityBound { needed, bound: b });
        }
    }
    Ok(())
}

/// Level `k` of `Sp(F)`: the diagonal of `m ↦ F((Sᵏ)_m)`.
fn sp_level(f: &Gamma, sphere: &SimplicialSet, dim: usize) -> Result<PresheafSpace> {
    let site = f.site().clone();
    let values: Vec<Arc<PresheafSpace>> = (0..=dim).map(|m| f.eval(arity(sphere, m))).collect::<Result<_>>()?;
    let faces: Vec<Vec<Arc<PresheafMap>>> = (0..=dim)
        .map(|m| {
            (0..if m == 0 { 0 } else { m + 1 })
                .map(|i| {
                    let p = PointedMap::new(arity(sphere, m), arity(sphere, m - 1), sphere.face_table(m, i).to_vec())?;
                    f.eval_map(&p)
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let degens: Vec<Vec<Arc<PresheafMap>>> = (0..=dim)
        .map(|m| {
            (0..if m < dim { m + 1 } else { 0 })
                .map(|j| {
                    let p = PointedMap::new(arity(sphere, m), arity(sphere, m + 1), sphere.degeneracy_table(m, j).to_vec())?;
                    f.eval_map(&p)
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let mut levels = Vec::with_capacity(site.num_objects());
    for o in 0..site.num_objects() {
        let sizes: Vec<usize> = (0..=dim).map(|m| values[m].value(o).size(m)).collect();
        let face_tables = (0..=dim)
            .map(|m| {
                faces[m]
                    .iter()
                    .enumerate()
                    .map(|(i, h)| (0..sizes[m]).map(|x| values[m - 1].value(o).face(m, i, h.component(o).apply(m, x))).collect())
                    .collect()
            })
            .collect();
        let degen_tables = (0..=dim)
            .map(|m| {
                degens[m]
                    .iter()
                    .enumerate()
                    .map(|(j, h)| {
                        (0..sizes[m]).map(|x| values[m + 1].value(o).degeneracy(m, j, h.component(o).apply(m, x))).collect()
                    })
                    .collect()
            })
            .collect();
        levels.push(SimplicialSet::from_tables(dim, sizes, face_tables, degen_tables)?);
    }
    let restrictions = (0..site.morphisms().len())
        .map(|mi| SimplicialMap::from_tables((0..=dim).map(|m| values[m].restriction(mi).table(m).to_vec()).collect()))
        .collect();
    PresheafSpace::new(site, levels, restrictions)
}

/// `u ∧ − : (Sᵏ)_m → (S^{k+1})_m` for a non-basepoint `u ∈ S¹_m`.
fn smash_with(u: usize, width: usize, target_width: usize) -> PointedMap {
    let table = (0..=width).map(|b| if b == 0 { 0 } else { (u - 1) * width + b }).collect();
    PointedMap::new(width, target_width, table).expect("smash with a simplex of the circle")
}

/// `Sp(F)` up to level `l` with dimension bound `dim`. Level `k` needs `F`
/// at arities up to `dim^k`.
pub fn sp(f: &Gamma, l: usize, dim: usize) -> Result<TruncatedSpectrum> {
    check_bounds(f, l, dim)?;
    let spheres: Vec<SimplicialSet> = (0..=l).map(|k| smash_spheres(k, dim)).collect::<Result<_>>()?;
    let levels: Vec<PresheafSpace> = spheres.iter().map(|s| sp_level(f, s, dim)).collect::<Result<_>>()?;
    let mut structure = Vec::with_capacity(l);
    for k in 0..l {
        let susp = suspend(&levels[k]);
        let mut components = Vec::new();
        for o in 0..f.site().num_objects() {
            let tables = (0..=dim)
                .map(|m| {
                    let (w, w1) = (arity(&spheres[k], m), arity(&spheres[k + 1], m));
                    let width = levels[k].value(o).size(m) - 1;
                    let mut t = vec![0; susp.value(o).size(m)];
                    for u in 1..=m {
                        let induced = f.eval_map(&smash_with(u, w, w1))?;
                        for x in 1..=width {
                            t[(u - 1) * width + x] = induced.component(o).apply(m, x);
                        }
                    }
                    Ok(t)
                })
                .collect::<Result<Vec<_>>>()?;
            components.push(SimplicialMap::from_tables(tables));
        }
        structure.push(PresheafMap::from_components(components));
    }
    TruncatedSpectrum::new(format!("Sp({})", f.describe()), levels, structure)
}

/// `Sp(φ)` for a map of Γ-spaces, with every compatibility square checked.
pub fn sp_map(phi: &GammaMap, source: &TruncatedSpectrum, target: &TruncatedSpectrum) -> Result<SpectrumMap> {
    let dim = source.dim();
    let mut levels = Vec::with_capacity(source.level_bound() + 1);
    for k in 0..=source.level_bound() {
        let sphere = smash_spheres(k, dim)?;
        let comps: Vec<PresheafMap> = (0..=dim).map(|m| phi.component(arity(&sphere, m))).collect::<Result<_>>()?;
        let components = (0..source.site().num_objects())
            .map(|o| SimplicialMap::from_tables((0..=dim).map(|m| comps[m].component(o).table(m).to_vec()).collect()))
            .collect();
        levels.push(PresheafMap::from_components(components));
    }
    SpectrumMap::new(source, target, levels)
}

/// `Sp(HA)` computed on the linear model: level `k` is `A ⊗ Z̃[Sᵏ]`, and the
/// structure maps are identities in the chosen generator orders.
pub fn sp_linear(a: &SimplicialAbPresheaf, l: usize, name: &str) -> Result<LinearSpectrum> {
    let dim = a.dim();
    let mut levels = Vec::with_capacity(l + 1);
    for k in 0..=l {
        let s = smash_spheres(k, dim)?;
        levels.push(tensor_presheaf(a, &PresheafSpace::constant(a.site().clone(), &s)));
    }
    let structure = (0..l)
        .map(|k| {
            let susp = suspend_linear(&levels[k]);
            (0..a.site().num_objects())
                .map(|o| SimplicialAbMap::identity(susp.value(o)))
                .collect()
        })
        .collect();
    LinearSpectrum::new(format!("Sp({name})"), levels, structure)
}

/// The levelwise comparison `Sp(Γⁿ) → 𝕊^{×n}` sending a pointed map
/// `a : n_+ → (Sᵏ)_m` to the tuple `(a(1), …, a(n))`, checked to be an
/// isomorphism of spectra in every degree.
pub fn sphere_comparison(gamma_n: &Gamma, n: usize, l: usize, dim: usize) -> Result<(TruncatedSpectrum, TruncatedSpectrum, SpectrumMap)> {
    let source = sp(gamma_n, l, dim)?;
    let target = sphere_spectrum(gamma_n.site().clone(), n, l, dim)?;
    let mut levels = Vec::new();
    for k in 0..=l {
        let sphere = smash_spheres(k, dim)?;
        let tables: Vec<Vec<usize>> = (0..=dim)
            .map(|m| {
                let w = arity(&sphere, m);
                (0..source.level(k).value(0).size(m))
                    .map(|x| tuple_index(&pointed_map_from_index(n, w, x).table()[1..], w + 1))
                    .collect()
            })
            .collect();
        let comp = SimplicialMap::from_tables(tables);
        if (0..gamma_n.site().num_objects()).any(|o| !comp.is_bijective_onto(target.level(k).value(o))) {
            return Err(crate::error::structural(format!("comparison at level {k} is not bijective")));
        }
        levels.push(PresheafMap::from_components(vec![comp; gamma_n.site().num_objects()]));
    }
    let map = SpectrumMap::new(&source, &target, levels)?;
    Ok((source, target, map))
}

/// The matrix that places a vector of `E_m` into the block of the circle
/// simplex `t` inside `Z̃[S¹] ⊗ E` in degree `m`.
pub(crate) fn block_embedding(t: usize, rank: usize, blocks: usize) -> IntMatrix {
    IntMatrix::from_sparse_columns(blocks * rank, (0..rank).map(|c| vec![((t - 1) * rank + c, BigInt::from(1))]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::{corepresentable, eilenberg_mac_lane, level, wedge_gamma};
    use crate::homology::{reduced_homology, AbGroup, SimplicialAbGroup};
    use crate::simplicial::boundary_quotient_sphere;
    use crate::site::FinCategory;

    fn one() -> Arc<FinCategory> {
        Arc::new(FinCategory::one_point())
    }

    #[test]
    fn level_zero_is_the_value_at_one() {
        let f = level(1, PresheafSpace::constant(one(), &boundary_quotient_sphere(1, 3).unwrap()));
        let e = sp(&f, 1, 3).unwrap();
        assert_eq!(e.level(0), &*f.eval(1).unwrap());
    }

    #[test]
    fn corepresentables_give_sphere_spectra() {
        for n in 0..=2 {
            let g = corepresentable(one(), n, 3);
            let (_, _, iso) = sphere_comparison(&g, n, 3, 3).unwrap();
            assert_eq!(iso.levels().len(), 4);
        }
    }

    #[test]
    fn set_and_linear_models_of_h_agree() {
        let a = SimplicialAbPresheaf::constant(one(), &SimplicialAbGroup::constant(&[2], 3));
        let h = eilenberg_mac_lane(a.clone());
        let e = sp(&h, 2, 3).unwrap();
        let lin = sp_linear(&a, 2, "H(Z/2)").unwrap();
        for k in 0..=2 {
            for m in 0..=3 {
                assert_eq!(e.level(k).value(0).size(m), 1usize << lin.level(k).value(0).rank(m));
            }
        }
        // level 1 is a K(Z/2, 1), so its first homology is Z/2
        assert_eq!(reduced_homology(e.level(1).value(0), 1).unwrap(), AbGroup::cyclic(2));
    }

    #[test]
    fn sp_of_wedge_map_is_compatible() {
        let g1 = corepresentable(one(), 1, 3);
        let w = wedge_gamma(vec![g1.clone(), g1.clone()]).unwrap();
        let j = crate::gamma::wedge_into_product(g1.clone(), g1).unwrap();
        let (src, tgt) = (sp(&w, 2, 3).unwrap(), sp(j.target(), 2, 3).unwrap());
        sp_map(&j, &src, &tgt).unwrap();
    }

    #[test]
    fn bound_errors_name_the_needed_arity() {
        let g = crate::gamma::tabulate(&corepresentable(one(), 1, 3), 4).unwrap();
        match sp(&g, 2, 3) {
            Err(Error::ArityBound { needed, bound }) => assert_eq!((needed, bound), (9, 4)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
