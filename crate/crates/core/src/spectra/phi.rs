//! The right adjoint `Φ` of `Sp`: `Φ(E)(n_+)` is the presheaf of mapping
//! spaces `U ↦ Map(𝕊^{×n}|U, E|U)` of spectra over slices.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{structural, Error, Result};
use crate::gamma::{decode, enumerate_gamma_maps, presheaf_variables, AdjunctionReport, Family, Gamma, GammaSpace};
use crate::search::FunctionalCsp;
use crate::simplicial::{delta_map, delta_plus, smash_maps, PointedMap, SimplicialMap, SimplicialSet};
use crate::site::{FinCategory, PresheafMap, PresheafSpace, Slice};

use super::{sp, sphere_spectrum, suspend, tuple_digits, tuple_index, SpectrumMap, TruncatedSpectrum};

/// Every map of truncated spectra `E → E'`, zero map first.
pub fn enumerate_spectrum_maps(source: &TruncatedSpectrum, target: &TruncatedSpectrum, budget: u64) -> Result<Vec<SpectrumMap>> {
    if source.level_bound() != target.level_bound() {
        return Err(structural("spectra have different level bounds"));
    }
    let mut csp = FunctionalCsp::new();
    let mut vars = Vec::new();
    let mut order = Vec::new();
    for k in 0..=source.level_bound() {
        let (v, ord) = presheaf_variables(&mut csp, source.level(k), target.level(k))?;
        vars.push(v);
        order.extend(ord);
    }
    // f^{k+1}(σ(t ∧ x)) = σ'(t ∧ f^k(x))
    for k in 0..source.level_bound() {
        let (ssusp, tsusp) = (suspend(source.level(k)), suspend(target.level(k)));
        for o in 0..source.site().num_objects() {
            for q in 1..=source.dim() {
                let w = source.level(k).value(o).size(q) - 1;
                let tw = target.level(k).value(o).size(q) - 1;
                let (sigma, tsigma) = (source.structure_map(k).component(o), target.structure_map(k).component(o));
                for t in 1..=q {
                    let table = (0..=tw)
                        .map(|v| if v == 0 { tsigma.apply(q, 0) } else { tsigma.apply(q, (t - 1) * tw + v) })
                        .collect();
                    let tab = csp.add_table(table);
                    for x in 1..=w {
                        let z = (t - 1) * w + x;
                        debug_assert!(z < ssusp.value(o).size(q) && tw < tsusp.value(o).size(q));
                        csp.constrain(vars[k][o][q][x], vars[k + 1][o][q][sigma.apply(q, z)], tab);
                    }
                }
            }
        }
    }
    csp.set_priority(order);
    let mut maps: Vec<SpectrumMap> =
        csp.solve_all(budget)?.iter().map(|s| SpectrumMap { levels: vars.iter().map(|v| decode(v, s)).collect() }).collect();
    maps.sort();
    Ok(maps)
}

/// `E ∧ Y` for a constant pointed simplicial set `Y`, with `x ∧ y` at
/// index `(x - 1)(|Y| - 1) + y` and structure maps `σ ∧ Y`.
fn smash_constant(e: &TruncatedSpectrum, y: &SimplicialSet) -> Result<TruncatedSpectrum> {
    let site = e.site().clone();
    let ys = PresheafSpace::constant(site.clone(), y);
    let levels: Vec<PresheafSpace> = e.levels().iter().map(|l| l.smash(&ys)).collect();
    let structure = (0..e.level_bound())
        .map(|k| {
            let components = (0..site.num_objects())
                .map(|o| {
                    let sigma = e.structure_map(k).component(o);
                    let tables = (0..=e.dim())
                        .map(|q| {
                            let w = e.level(k).value(o).size(q) - 1;
                            let d = y.size(q) - 1;
                            let mut t = vec![0; q * w * d + 1];
                            // S¹ ∧ (E ∧ Y) and (S¹ ∧ E) ∧ Y share indices
                            for (z, slot) in t.iter_mut().enumerate().skip(1) {
                                let (ex, yy) = ((z - 1) / d + 1, (z - 1) % d + 1);
                                let image = sigma.apply(q, ex);
                                *slot = if image == 0 { 0 } else { (image - 1) * d + yy };
                            }
                            t
                        })
                        .collect();
                    SimplicialMap::from_tables(tables)
                })
                .collect();
            PresheafMap::from_components(components)
        })
        .collect();
    TruncatedSpectrum::new(format!("{} ∧ Y", e.name()), levels, structure)
}

/// `Φ(E)(n_+)` truncated at simplicial degree `qmax`.
#[derive(Clone, Debug)]
pub struct PhiValue {
    pub n: usize,
    pub space: PresheafSpace,
    /// `maps[U][q]` lists the `q`-simplices over `U`: maps of spectra
    /// `𝕊^{×n} ∧ Δ^q_+ → E` over `C/U`, zero map first.
    pub maps: Vec<Vec<Vec<SpectrumMap>>>,
    pub slices: Vec<Slice>,
}

impl PhiValue {
    fn position(&self, u: usize, q: usize, g: &SpectrumMap) -> Option<usize> {
        self.maps[u][q].binary_search(g).ok()
    }
}

/// Computes `Φ(E)(n_+)` in simplicial degrees `≤ qmax`.
pub fn phi(e: &TruncatedSpectrum, n: usize, qmax: usize, budget: u64) -> Result<PhiValue> {
    let site = e.site().clone();
    let (l, dim) = (e.level_bound(), e.dim());
    if qmax > dim {
        return Err(Error::DimensionBound(format!("mapping spaces up to degree {qmax} need a dimension bound of {qmax}")));
    }
    let slices: Vec<Slice> = (0..site.num_objects()).map(|u| site.slice(u)).collect();
    let deltas: Vec<SimplicialSet> = (0..=qmax + 1).map(|q| delta_plus(q, dim)).collect::<Result<_>>()?;
    let mut maps = Vec::new();
    for s in &slices {
        let eu = e.restrict(s);
        let spheres = sphere_spectrum(s.category.clone(), n, l, dim)?;
        let per_q = deltas
            .iter()
            .take(qmax + 1)
            .map(|d| enumerate_spectrum_maps(&smash_constant(&spheres, d)?, &eu, budget))
            .collect::<Result<Vec<_>>>()?;
        maps.push(per_q);
    }
    let value = PhiValue { n, space: PresheafSpace::point(site.clone(), qmax), maps, slices };
    // precomposition with X ∧ θ_+ on every level
    let reindex = |u: usize, theta: &[usize], from_q: usize, to_q: usize, g: &SpectrumMap| -> Result<usize> {
        let th = delta_map(theta, from_q, dim);
        let levels = (0..=l)
            .map(|k| {
                let base = super::sphere_power(k, n, dim)?;
                let pre = smash_maps(&SimplicialMap::identity(&base), &th, &base, &deltas[to_q], &deltas[from_q]);
                Ok(PresheafMap::from_components(
                    (0..value.slices[u].objects.len()).map(|o| g.level(k).component(o).after(&pre)).collect(),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        value.position(u, to_q, &SpectrumMap { levels }).ok_or_else(|| structural("a face of a spectrum map is not a spectrum map"))
    };
    let mut values = Vec::new();
    for u in 0..site.num_objects() {
        let mut faces = vec![vec![]];
        for q in 1..=qmax {
            faces.push(
                (0..=q)
                    .map(|i| {
                        let theta: Vec<usize> = (0..q).map(|v| if v < i { v } else { v + 1 }).collect();
                        value.maps[u][q].iter().map(|g| reindex(u, &theta, q, q - 1, g)).collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        let mut degeneracies = Vec::new();
        for q in 0..qmax {
            degeneracies.push(
                (0..=q)
                    .map(|j| {
                        let theta: Vec<usize> = (0..=q + 1).map(|v| if v <= j { v } else { v - 1 }).collect();
                        value.maps[u][q].iter().map(|g| reindex(u, &theta, q, q + 1, g)).collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        degeneracies.push(vec![]);
        values.push(SimplicialSet::from_tables(qmax, value.maps[u].iter().map(Vec::len).collect(), faces, degeneracies)?);
    }
    let restrictions = site
        .morphisms()
        .iter()
        .enumerate()
        .map(|(w, mor)| {
            let (big, small) = (mor.target, mor.source);
            let pos = slice_positions(&site, &value.slices, w, big, small);
            let tables = (0..=qmax)
                .map(|q| {
                    value.maps[big][q]
                        .iter()
                        .map(|g| {
                            let r = SpectrumMap {
                                levels: g
                                    .levels()
                                    .iter()
                                    .map(|c| PresheafMap::from_components(pos.iter().map(|&p| c.component(p).clone()).collect()))
                                    .collect(),
                            };
                            value.position(small, q, &r).ok_or_else(|| structural("restricted spectrum map is missing"))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(SimplicialMap::from_tables(tables))
        })
        .collect::<Result<Vec<_>>>()?;
    let space = PresheafSpace::new(site, values, restrictions)?;
    Ok(PhiValue { space, ..value })
}

/// For `w : U' → U`, the position in `C/U` of `w ∘ v` for each slice
/// object `v` of `C/U'`.
fn slice_positions(site: &FinCategory, slices: &[Slice], w: usize, big: usize, small: usize) -> Vec<usize> {
    slices[small]
        .structure
        .iter()
        .map(|&v| {
            let wv = site.compose(w, v).expect("composable");
            slices[big].structure.iter().position(|&x| x == wv).expect("slice object")
        })
        .collect()
}

/// `Φ(E)` as a Γ-space, memoizing each arity.
#[derive(Debug)]
struct PhiGamma {
    e: TruncatedSpectrum,
    qmax: usize,
    budget: u64,
    cache: Mutex<HashMap<usize, Arc<PhiValue>>>,
}

impl PhiGamma {
    fn at(&self, n: usize) -> Result<Arc<PhiValue>> {
        if let Some(v) = self.cache.lock().expect("cache").get(&n) {
            return Ok(v.clone());
        }
        let v = Arc::new(phi(&self.e, n, self.qmax, self.budget)?);
        self.cache.lock().expect("cache").insert(n, v.clone());
        Ok(v)
    }
}

impl GammaSpace for PhiGamma {
    fn site(&self) -> &Arc<FinCategory> {
        self.e.site()
    }

    fn dim(&self) -> usize {
        self.qmax
    }

    fn describe(&self) -> String {
        format!("Φ({})", self.e.name())
    }

    fn value(&self, n: usize) -> Result<PresheafSpace> {
        Ok(self.at(n)?.space.clone())
    }

    /// `g ↦ g ∘ (θ^* ∧ Δ^q_+)` with `θ^*(x₁, …, x_m) = (x_{θ(1)}, …, x_{θ(n)})`.
    fn induced(&self, theta: &PointedMap) -> Result<PresheafMap> {
        let (n, m) = (theta.source(), theta.target());
        let (from, to) = (self.at(n)?, self.at(m)?);
        let dim = self.e.dim();
        let components = (0..self.e.site().num_objects())
            .map(|u| {
                let tables = (0..=self.qmax)
                    .map(|q| {
                        let delta = delta_plus(q, dim)?;
                        let pre: Vec<SimplicialMap> = (0..=self.e.level_bound())
                            .map(|k| {
                                let s = super::smash_spheres_size(k, dim)?;
                                Ok(SimplicialMap::from_tables(
                                    (0..=dim)
                                        .map(|r| {
                                            let (a, d) = (s[r], delta.size(r) - 1);
                                            let size = (a.pow(m as u32) - 1) * d + 1;
                                            (0..size)
                                                .map(|z| {
                                                    if z == 0 {
                                                        return 0;
                                                    }
                                                    let (x, y) = ((z - 1) / d + 1, (z - 1) % d + 1);
                                                    let digits = tuple_digits(x, a, m);
                                                    let image: Vec<usize> = (1..=n)
                                                        .map(|i| match theta.apply(i) {
                                                            0 => 0,
                                                            j => digits[j - 1],
                                                        })
                                                        .collect();
                                                    let t = tuple_index(&image, a);
                                                    if t == 0 {
                                                        0
                                                    } else {
                                                        (t - 1) * d + y
                                                    }
                                                })
                                                .collect()
                                        })
                                        .collect(),
                                ))
                            })
                            .collect::<Result<_>>()?;
                        from.maps[u][q]
                            .iter()
                            .map(|g| {
                                let levels = g
                                    .levels()
                                    .iter()
                                    .zip(&pre)
                                    .map(|(c, p)| PresheafMap::from_components(c.components().iter().map(|x| x.after(p)).collect()))
                                    .collect();
                                to.position(u, q, &SpectrumMap { levels })
                                    .ok_or_else(|| structural("precomposition with θ* is not a spectrum map"))
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(SimplicialMap::from_tables(tables))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PresheafMap::from_components(components))
    }
}

/// A Γ-space cut down to a smaller simplicial dimension bound.
#[derive(Debug)]
struct Truncated {
    f: Gamma,
    dim: usize,
}

impl GammaSpace for Truncated {
    fn site(&self) -> &Arc<FinCategory> {
        self.f.site()
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn describe(&self) -> String {
        self.f.describe()
    }

    fn bound(&self) -> Option<usize> {
        self.f.bound()
    }

    fn value(&self, n: usize) -> Result<PresheafSpace> {
        self.f.eval(n)?.truncate(self.dim)
    }

    fn induced(&self, g: &PointedMap) -> Result<PresheafMap> {
        Ok(self.f.eval_map(g)?.truncate(self.dim))
    }
}

fn is_discrete(x: &PresheafSpace) -> bool {
    x.values().iter().all(|v| v.sizes().iter().all(|&s| s == v.size(0)))
}

/// Lifts a vertex of a discrete simplicial set to degree `m`.
fn degenerate(x: &SimplicialSet, v: usize, m: usize) -> usize {
    (0..m).fold(v, |acc, q| x.degeneracy(q, 0, acc))
}

/// Checks `Hom(Sp F, E) ≅ Hom(F, Φ E)` in simplicial degree 0 for a
/// discrete Γ-space `F` generated in arity `≤ kmax`. Γ-maps are compared
/// on `0_+, …, kmax_+`. Both directions of the correspondence are built
/// explicitly: a spectrum map `h` gives `y ↦ (a ∧ * ↦ h(F(a)(y)))`, and a
/// family `φ` gives `F(a)(y) ↦ φ(y)(a(1), …, a(k))`. The check passes when
/// both round trips are identities.
pub fn sp_phi_adjunction_check(f: &Gamma, e: &TruncatedSpectrum, kmax: usize, budget: u64) -> Result<AdjunctionReport> {
    let (l, dim) = (e.level_bound(), e.dim());
    let site = e.site().clone();
    let spf = sp(f, l, dim)?;
    for k in 0..=dim.pow(l as u32) {
        if !is_discrete(&*f.eval(k)?) {
            return Err(Error::Precondition(format!("{} is not discrete at {k}_+", f.describe())));
        }
    }
    let right = enumerate_spectrum_maps(&spf, e, budget)?;
    let phi_gamma = PhiGamma { e: e.clone(), qmax: 0, budget, cache: Mutex::new(HashMap::new()) };
    let phis: Vec<Arc<PhiValue>> = (0..=kmax).map(|k| phi_gamma.at(k)).collect::<Result<_>>()?;
    let phi_gamma = Gamma::new(phi_gamma);
    let f0 = Gamma::new(Truncated { f: f.clone(), dim: 0 });
    let left = enumerate_gamma_maps(&f0, &phi_gamma, kmax, budget)?;
    let mut report = AdjunctionReport::new(format!("Sp ⊣ Φ for {} and {}", f.describe(), e.name()), left.len(), right.len());

    let identity_slot: Vec<usize> = (0..site.num_objects())
        .map(|u| phis[0].slices[u].structure.iter().position(|&m| m == site.identity(u)).expect("identity in slice"))
        .collect();
    let spheres: Vec<Vec<usize>> = (0..=l).map(|k| super::smash_spheres_size(k, dim)).collect::<Result<_>>()?;

    // generators: for every arity s in use and object, each vertex of F(s)
    // written as F(a)(y) with y in arity ≤ kmax
    let mut generators: HashMap<(usize, usize), Vec<(usize, PointedMap, usize)>> = HashMap::new();
    for sizes in &spheres {
        for &a in sizes {
            let s = a - 1;
            if generators.contains_key(&(s, 0)) {
                continue;
            }
            let fs = f.eval(s)?;
            for o in 0..site.num_objects() {
                let mut found: Vec<Option<(usize, PointedMap, usize)>> = vec![None; fs.value(o).size(0)];
                for k in 0..=kmax {
                    let fk = f.eval(k)?;
                    for ai in 0..(s + 1).pow(k as u32) {
                        let map = PointedMap::new(k, s, std::iter::once(0).chain(tuple_digits(ai, s + 1, k)).collect())?;
                        let fa = f.eval_map(&map)?;
                        for y in 0..fk.value(o).size(0) {
                            let x = fa.component(o).apply(0, y);
                            if found[x].is_none() {
                                found[x] = Some((k, map.clone(), y));
                            }
                        }
                    }
                }
                let all = found
                    .into_iter()
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| Error::Precondition(format!("{} is not generated in arity ≤ {kmax}", f.describe())))?;
                generators.insert((s, o), all);
            }
        }
    }

    let forward = |fam: &Family| -> Result<SpectrumMap> {
        let levels = (0..=l)
            .map(|j| {
                let level = spf.level(j);
                let components = (0..site.num_objects())
                    .map(|o| {
                        let tables = (0..=dim)
                            .map(|m| {
                                let s = spheres[j][m] - 1;
                                let gens = &generators[&(s, o)];
                                let fs = f.eval(s)?;
                                let x = fs.value(o);
                                Ok((0..level.value(o).size(m))
                                    .map(|z| {
                                        let v = (0..m).fold(z, |acc, q| x.face(m - q, 0, acc));
                                        let (k, a, y) = &gens[v];
                                        let g = &phis[*k].maps[o][0][fam[*k].component(o).apply(0, *y)];
                                        let t = tuple_index(&a.table()[1..], s + 1);
                                        g.level(j).component(identity_slot[o]).apply(m, t)
                                    })
                                    .collect::<Vec<_>>())
                            })
                            .collect::<Result<Vec<_>>>()?;
                        Ok(SimplicialMap::from_tables(tables))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(PresheafMap::from_components(components))
            })
            .collect::<Result<Vec<_>>>()?;
        SpectrumMap::new(&spf, e, levels)
    };

    let backward = |h: &SpectrumMap| -> Result<Family> {
        (0..=kmax)
            .map(|k| {
                let fk = f.eval(k)?;
                let components = (0..site.num_objects())
                    .map(|u| {
                        let slice = &phis[k].slices[u];
                        let table = (0..fk.value(u).size(0))
                            .map(|y| {
                                let levels = (0..=l)
                                    .map(|j| {
                                        let comps = slice
                                            .objects
                                            .iter()
                                            .zip(&slice.structure)
                                            .map(|(&v, &str_v)| {
                                                let yv = fk.restriction(str_v).apply(0, y);
                                                let tables = (0..=dim)
                                                    .map(|m| {
                                                        let a = spheres[j][m];
                                                        let fs = f.eval(a - 1)?;
                                                        let level = fs.value(v);
                                                        (0..a.pow(k as u32))
                                                            .map(|z| {
                                                                if z == 0 {
                                                                    return Ok(h.level(j).component(v).apply(m, 0));
                                                                }
                                                                let digits = tuple_digits(z, a, k);
                                                                let map = PointedMap::new(
                                                                    k,
                                                                    a - 1,
                                                                    std::iter::once(0).chain(digits).collect(),
                                                                )?;
                                                                let x0 = f.eval_map(&map)?.component(v).apply(0, yv);
                                                                Ok(h.level(j).component(v).apply(m, degenerate(level, x0, m)))
                                                            })
                                                            .collect::<Result<Vec<_>>>()
                                                    })
                                                    .collect::<Result<Vec<_>>>()?;
                                                Ok(SimplicialMap::from_tables(tables))
                                            })
                                            .collect::<Result<Vec<_>>>()?;
                                        Ok(PresheafMap::from_components(comps))
                                    })
                                    .collect::<Result<Vec<_>>>()?;
                                phis[k]
                                    .position(u, 0, &SpectrumMap { levels })
                                    .ok_or_else(|| structural("adjoint of a spectrum map is not a spectrum map"))
                            })
                            .collect::<Result<Vec<_>>>()?;
                        Ok(SimplicialMap::from_tables(vec![table]))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(PresheafMap::from_components(components))
            })
            .collect()
    };

    for (i, fam) in left.iter().enumerate() {
        match forward(fam).and_then(|h| backward(&h)) {
            Ok(back) if &back == fam => {}
            Ok(_) => report.fail(format!("Γ-map {i} does not survive the round trip")),
            Err(err) => report.fail(format!("Γ-map {i}: {err}")),
        }
    }
    for (i, h) in right.iter().enumerate() {
        match backward(h).and_then(|fam| forward(&fam)) {
            Ok(back) if &back == h => {}
            Ok(_) => report.fail(format!("spectrum map {i} does not survive the round trip")),
            Err(err) => report.fail(format!("spectrum map {i}: {err}")),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::{corepresentable, wedge_gamma};

    fn one() -> Arc<FinCategory> {
        Arc::new(FinCategory::one_point())
    }

    #[test]
    fn maps_of_the_sphere_spectrum() {
        let s = sphere_spectrum(one(), 1, 2, 3).unwrap();
        let maps = enumerate_spectrum_maps(&s, &s, 1_000_000).unwrap();
        assert_eq!(maps.len(), 2);
        assert!(maps[0].level(0).component(0).table(0).iter().all(|&x| x == 0));
    }

    #[test]
    fn phi_of_the_point_is_a_point() {
        let p = TruncatedSpectrum::point(one(), 1, 2);
        let v = phi(&p, 2, 1, 1_000_000).unwrap();
        assert!(v.space.is_point());
    }

    #[test]
    fn mapping_space_into_the_sphere_spectrum() {
        let s = sphere_spectrum(one(), 1, 1, 2).unwrap();
        let v = phi(&s, 1, 1, 1_000_000).unwrap();
        // vertices: the zero map and the identity
        assert_eq!(v.space.value(0).size(0), 2);
        v.space.validate().unwrap();
    }

    #[test]
    fn adjunction_for_small_cases() {
        let s = sphere_spectrum(one(), 1, 2, 3).unwrap();
        let g1 = corepresentable(one(), 1, 3);
        let r = sp_phi_adjunction_check(&g1, &s, 1, 1_000_000).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!((r.left, r.right), (2, 2));
        let p = TruncatedSpectrum::point(one(), 2, 3);
        let w = wedge_gamma(vec![g1.clone(), g1]).unwrap();
        let r = sp_phi_adjunction_check(&w, &p, 1, 1_000_000).unwrap();
        assert!(r.passed && r.left == 1);
        let r = sp_phi_adjunction_check(&corepresentable(one(), 0, 3), &s, 1, 1_000_000).unwrap();
        assert!(r.passed && r.left == 1);
    }
}
