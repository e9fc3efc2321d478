//! Enumeration of natural families of maps, mapping spaces, and the
//! adjunction and Yoneda checks built on them.
//!
//! A family of components on `0_+, …, kmax_+` that is natural for the
//! generating morphisms is natural for every pointed map among those
//! objects. For Γ-spaces generated in arity `≤ kmax` (corepresentables
//! `Γⁿ` and `L_n X` with `n ≤ kmax`) such families are exactly the maps of
//! Γ-spaces.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{structural, Result};
use crate::search::FunctionalCsp;
use crate::simplicial::{
    add_map_variables, delta_map, delta_plus, delta_top, pointed_map_from_index, pointed_map_index, PointedMap,
    SimplicialMap,
};
use crate::site::{PresheafMap, PresheafSpace, Slice};

use super::kinds::{level, restrict_to_slice, smash_space};
use super::{generating_morphisms, Gamma, GammaMap};

/// Components at `0_+, …, kmax_+` of a natural map of Γ-spaces.
pub type Family = Vec<PresheafMap>;

pub(crate) type Vars = Vec<Vec<Vec<usize>>>;

pub(crate) fn presheaf_variables(csp: &mut FunctionalCsp, x: &PresheafSpace, y: &PresheafSpace) -> Result<(Vars, Vec<usize>)> {
    if x.dim() != y.dim() {
        return Err(structural(format!("dimension bounds differ: {} and {}", x.dim(), y.dim())));
    }
    let mut vars = Vec::new();
    let mut order = Vec::new();
    for o in 0..x.site().num_objects() {
        let (v, ord) = add_map_variables(csp, x.value(o), y.value(o));
        vars.push(v);
        order.extend(ord);
    }
    for (m, mor) in x.site().morphisms().iter().enumerate() {
        let (big, small) = (mor.target, mor.source);
        for q in 0..=x.dim() {
            let t = csp.add_table(y.restriction(m).table(q).to_vec());
            for e in 0..x.value(big).size(q) {
                csp.constrain(vars[big][q][e], vars[small][q][x.restriction(m).apply(q, e)], t);
            }
        }
    }
    Ok((vars, order))
}

pub(crate) fn decode(vars: &Vars, sol: &[usize]) -> PresheafMap {
    PresheafMap::from_components(
        vars.iter()
            .map(|v| SimplicialMap::from_tables(v.iter().map(|deg| deg.iter().map(|&x| sol[x]).collect()).collect()))
            .collect(),
    )
}

/// Every map of presheaf spaces `X → Y`, in a deterministic order.
pub fn enumerate_presheaf_maps(x: &PresheafSpace, y: &PresheafSpace, budget: u64) -> Result<Vec<PresheafMap>> {
    let mut csp = FunctionalCsp::new();
    let (vars, order) = presheaf_variables(&mut csp, x, y)?;
    csp.set_priority(order);
    Ok(csp.solve_all(budget)?.iter().map(|s| decode(&vars, s)).collect())
}

/// Every natural family `F → G` on `0_+, …, kmax_+`. The search branches
/// on arity `seed` first when given, which is where a Γ-space generated in
/// one arity should be decided.
fn enumerate_families(f: &Gamma, g: &Gamma, kmax: usize, seed: Option<usize>, budget: u64) -> Result<Vec<Family>> {
    let mut csp = FunctionalCsp::new();
    let mut levels = Vec::new();
    let mut orders = Vec::new();
    for k in 0..=kmax {
        let (vars, order) = presheaf_variables(&mut csp, &*f.eval(k)?, &*g.eval(k)?)?;
        levels.push(vars);
        orders.push(order);
    }
    for alpha in generating_morphisms(kmax) {
        let (a, b) = (alpha.source(), alpha.target());
        let (fa, ga, fk) = (f.eval_map(&alpha)?, g.eval_map(&alpha)?, f.eval(a)?);
        for o in 0..f.site().num_objects() {
            for q in 0..=f.dim() {
                let t = csp.add_table(ga.component(o).table(q).to_vec());
                for x in 0..fk.value(o).size(q) {
                    csp.constrain(levels[a][o][q][x], levels[b][o][q][fa.component(o).apply(q, x)], t);
                }
            }
        }
    }
    let mut priority = Vec::new();
    if let Some(s) = seed.filter(|&s| s <= kmax) {
        priority.extend(orders[s].iter().copied());
    }
    priority.extend(orders.into_iter().flatten());
    csp.set_priority(priority);
    Ok(csp
        .solve_all(budget)?
        .iter()
        .map(|sol| levels.iter().map(|vars| decode(vars, sol)).collect())
        .collect())
}

/// Every natural family of maps `F → G` on `0_+, …, kmax_+`.
pub fn enumerate_gamma_maps(f: &Gamma, g: &Gamma, kmax: usize, budget: u64) -> Result<Vec<Family>> {
    enumerate_families(f, g, kmax, None, budget)
}

/// The presheaf of mapping spaces `U ↦ Map(F|U, G|U)`, truncated at
/// simplicial degree `qmax`. A `q`-simplex over `U` is a natural family
/// `Δ^q_+ ∧ F|U → G|U` over the slice `C/U`.
#[derive(Clone, Debug)]
pub struct SpcHom {
    pub space: PresheafSpace,
    /// `families[U][q]` lists the `q`-simplices over `U`, zero family first.
    pub families: Vec<Vec<Vec<Family>>>,
    pub slices: Vec<Slice>,
}

/// Computes [`SpcHom`] for Γ-spaces compared on `0_+, …, kmax_+`. When
/// `seed` names the arity in which `F` is generated the search starts
/// there.
pub fn spc_hom(f: &Gamma, g: &Gamma, qmax: usize, kmax: usize, seed: Option<usize>, budget: u64) -> Result<SpcHom> {
    let site = f.site().clone();
    let dim = f.dim();
    let slices: Vec<Slice> = (0..site.num_objects()).map(|u| site.slice(u)).collect();
    let mut families = Vec::new();
    for s in &slices {
        let (fu, gu) = (restrict_to_slice(f, s), restrict_to_slice(g, s));
        let per_q = (0..=qmax)
            .map(|q| {
                let dq = PresheafSpace::constant(s.category.clone(), &delta_plus(q, dim)?);
                let mut fams = enumerate_families(&smash_space(dq, fu.clone()), &gu, kmax, seed, budget)?;
                fams.sort();
                Ok(fams)
            })
            .collect::<Result<Vec<_>>>()?;
        families.push(per_q);
    }
    let index: Vec<Vec<HashMap<&Family, usize>>> = families
        .iter()
        .map(|per_q| per_q.iter().map(|fs| fs.iter().enumerate().map(|(i, x)| (x, i)).collect()).collect())
        .collect();
    // precomposition with θ_+ ∧ F on each slice and level
    let reindex = |u: usize, theta: &[usize], from_q: usize, to_q: usize, fam: &Family| -> Result<usize> {
        let s = &slices[u];
        let th = delta_map(theta, from_q, dim);
        let dsrc = PresheafSpace::constant(s.category.clone(), &delta_plus(to_q, dim)?);
        let th = PresheafMap::from_components(vec![th; s.category.num_objects()]);
        let fu = restrict_to_slice(f, s);
        let composed: Family = fam
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let v = fu.eval(k)?;
                Ok(c.after(&th.smash(&PresheafMap::identity(&v), &dsrc, &v, &v)))
            })
            .collect::<Result<_>>()?;
        index[u][to_q].get(&composed).copied().ok_or_else(|| structural("a face of a natural family is not natural"))
    };
    let mut values = Vec::new();
    for u in 0..site.num_objects() {
        let mut faces = vec![vec![]];
        for q in 1..=qmax {
            faces.push(
                (0..=q)
                    .map(|i| {
                        let theta: Vec<usize> = (0..q).map(|v| if v < i { v } else { v + 1 }).collect();
                        families[u][q].iter().map(|fam| reindex(u, &theta, q, q - 1, fam)).collect::<Result<Vec<_>>>()
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
                        families[u][q].iter().map(|fam| reindex(u, &theta, q, q + 1, fam)).collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        degeneracies.push(vec![]);
        values.push(crate::simplicial::SimplicialSet::from_tables(
            qmax,
            families[u].iter().map(Vec::len).collect(),
            faces,
            degeneracies,
        )?);
    }
    // restriction along w : U' → U sends a family over C/U to the family
    // over C/U' whose component at (W, v) is the one at (W, w ∘ v)
    let restrictions = site
        .morphisms()
        .iter()
        .enumerate()
        .map(|(w, mor)| {
            let (big, small) = (mor.target, mor.source);
            let pos: Vec<usize> = slices[small]
                .structure
                .iter()
                .map(|&v| {
                    let wv = site.compose(w, v).expect("composable");
                    slices[big].structure.iter().position(|&x| x == wv).expect("slice object")
                })
                .collect();
            let tables = (0..=qmax)
                .map(|q| {
                    families[big][q]
                        .iter()
                        .map(|fam| {
                            let r: Family = fam
                                .iter()
                                .map(|c| PresheafMap::from_components(pos.iter().map(|&p| c.component(p).clone()).collect()))
                                .collect();
                            index[small][q].get(&r).copied().ok_or_else(|| structural("restricted family is not natural"))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(SimplicialMap::from_tables(tables))
        })
        .collect::<Result<Vec<_>>>()?;
    let space = PresheafSpace::new(site, values, restrictions)?;
    Ok(SpcHom { space, families, slices })
}

/// Outcome of a check that two finite sets of maps correspond.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjunctionReport {
    pub name: String,
    pub left: usize,
    pub right: usize,
    pub passed: bool,
    pub witness: Option<String>,
}

impl AdjunctionReport {
    pub(crate) fn new(name: impl Into<String>, left: usize, right: usize) -> Self {
        let mut r = Self { name: name.into(), left, right, passed: true, witness: None };
        if left != right {
            r.fail(format!("{left} maps on the left, {right} on the right"));
        }
        r
    }

    pub(crate) fn fail(&mut self, why: impl Into<String>) {
        if self.passed {
            self.passed = false;
            self.witness = Some(why.into());
        }
    }
}

/// Checks the Yoneda isomorphism `SpcHom(Γⁿ, F) ≅ F(n_+)`, sending a
/// family to its value on `ι_q ∧ id_n` at `U`, in simplicial degrees
/// `≤ qmax` with families compared on `0_+, …, kmax_+`.
pub fn yoneda_check(n: usize, f: &Gamma, qmax: usize, kmax: usize, budget: u64) -> Result<AdjunctionReport> {
    let gn = super::kinds::corepresentable(f.site().clone(), n, f.dim());
    let hom = spc_hom(&gn, f, qmax, kmax.max(n), Some(n), budget)?;
    let fnv = f.eval(n)?;
    let total = |x: &PresheafSpace| (0..x.site().num_objects()).map(|o| x.value(o).sizes()[..=qmax].iter().sum::<usize>()).sum();
    let mut report = AdjunctionReport::new(format!("SpcHom(Γ^{n}, {}) ≅ {}({n}_+)", f.describe(), f.describe()), total(&hom.space), total(&fnv));
    let id = pointed_map_index(&PointedMap::identity(n));
    let width = (n + 1).pow(n as u32) - 1;
    let mut comps = Vec::new();
    for (u, s) in hom.slices.iter().enumerate() {
        let at_u = s.structure.iter().position(|&m| m == f.site().identity(u)).expect("identity slice object");
        let tables: Vec<Vec<usize>> = (0..=qmax)
            .map(|q| {
                let elem = if width == 0 { 0 } else { (delta_top(q) - 1) * width + id };
                hom.families[u][q].iter().map(|fam| if elem == 0 { 0 } else { fam[n].component(at_u).apply(q, elem) }).collect()
            })
            .collect();
        comps.push(SimplicialMap::from_tables(tables));
    }
    let truncated = fnv.truncate(qmax)?;
    match PresheafMap::new(&hom.space, &truncated, comps) {
        Err(e) => report.fail(format!("evaluation is not a map of presheaves: {e}")),
        Ok(ev) => {
            for (o, c) in ev.components().iter().enumerate() {
                if !c.is_bijective_onto(truncated.value(o)) {
                    report.fail(format!("evaluation is not bijective over object {o}"));
                }
            }
        }
    }
    Ok(report)
}

/// Checks `L_n ⊣ Ev_n`: natural maps `L_n(X) → G` on `0_+, …, kmax_+`
/// against maps `X → G(n_+)`, by restriction to the identity summand and
/// by `(φ, x) ↦ G(φ)(g(x))`, with both round trips.
pub fn ln_adjunction_check(n: usize, x: &PresheafSpace, g: &Gamma, kmax: usize, budget: u64) -> Result<AdjunctionReport> {
    if kmax < n {
        return Err(structural("the adjunction check needs kmax >= n"));
    }
    let ln = level(n, x.clone());
    let left = enumerate_families(&ln, g, kmax, Some(n), budget)?;
    let gn = g.eval(n)?;
    let right = enumerate_presheaf_maps(x, &gn, budget)?;
    let mut report = AdjunctionReport::new(format!("L_{n} ⊣ Ev_{n} against {}", g.describe()), left.len(), right.len());
    // for n = 0 the identity of 0_+ is the basepoint and L_0(X) is a point
    let id_summand = pointed_map_index(&PointedMap::identity(n)).checked_sub(1);
    let restrict = |fam: &Family| -> PresheafMap {
        PresheafMap::from_components(
            (0..x.site().num_objects())
                .map(|o| {
                    let v = x.value(o);
                    let tables = (0..=v.dim())
                        .map(|q| {
                            let m = v.size(q) - 1;
                            (0..v.size(q))
                                .map(|e| match id_summand {
                                    Some(i) if e != 0 => fam[n].component(o).apply(q, i * m + e),
                                    _ => 0,
                                })
                                .collect()
                        })
                        .collect();
                    SimplicialMap::from_tables(tables)
                })
                .collect(),
        )
    };
    let extend = |h: &PresheafMap| -> Result<Family> {
        (0..=kmax)
            .map(|k| {
                let maps = (1..(k + 1).pow(n as u32))
                    .map(|i| g.eval_map(&pointed_map_from_index(n, k, i)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(PresheafMap::from_components(
                    (0..x.site().num_objects())
                        .map(|o| {
                            let v = x.value(o);
                            let tables = (0..=v.dim())
                                .map(|q| {
                                    let m = v.size(q) - 1;
                                    let mut t = vec![0];
                                    for phi in &maps {
                                        for e in 1..=m {
                                            t.push(phi.component(o).apply(q, h.component(o).apply(q, e)));
                                        }
                                    }
                                    t
                                })
                                .collect();
                            SimplicialMap::from_tables(tables)
                        })
                        .collect(),
                ))
            })
            .collect()
    };
    for h in &right {
        let fam = extend(h)?;
        let as_map = GammaMap::from_components(ln.clone(), g.clone(), fam.clone());
        if let Err(e) = as_map.check_naturality(kmax) {
            report.fail(format!("extension is not natural: {e}"));
        }
        if restrict(&fam) != *h {
            report.fail("restricting an extension does not recover the map");
        }
    }
    for fam in &left {
        if extend(&restrict(fam))? != *fam {
            report.fail("a natural map is not the extension of its restriction");
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::gamma::kinds::{corepresentable, wedge_gamma};
    use crate::simplicial::{boundary_quotient_sphere, s0};
    use crate::site::FinCategory;

    fn one() -> Arc<FinCategory> {
        Arc::new(FinCategory::one_point())
    }

    #[test]
    fn families_of_corepresentables() {
        // maps Γ¹ → Γ² are the elements of Γ²(1_+)
        let (g1, g2) = (corepresentable(one(), 1, 1), corepresentable(one(), 2, 1));
        assert_eq!(enumerate_gamma_maps(&g1, &g2, 3, 1_000_000).unwrap().len(), 4);
        // maps Γ² → Γ¹ are the elements of Γ¹(2_+)
        assert_eq!(enumerate_gamma_maps(&g2, &g1, 3, 1_000_000).unwrap().len(), 3);
        let g0 = corepresentable(one(), 0, 1);
        assert_eq!(enumerate_gamma_maps(&g0, &g2, 2, 1_000).unwrap().len(), 1);
    }

    #[test]
    fn mapping_spaces() {
        let g2 = corepresentable(one(), 2, 2);
        let c = boundary_quotient_sphere(1, 2).unwrap();
        let l = level(1, PresheafSpace::constant(one(), &c));
        let r = yoneda_check(2, &g2, 2, 3, 1_000_000).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.left, 27);
        let r = yoneda_check(1, &l, 2, 2, 1_000_000).unwrap();
        assert!(r.passed, "{r:?}");
        // SpcHom(Γ⁰, F) is the point
        let h = spc_hom(&corepresentable(one(), 0, 2), &l, 1, 2, None, 1_000).unwrap();
        assert!(h.space.is_point());
        // vertices of SpcHom(Γ¹ ∨ Γ¹, F) are pairs of vertices of F(1_+)
        let g1 = corepresentable(one(), 1, 2);
        let w = wedge_gamma(vec![g1.clone(), g1]).unwrap();
        let h = spc_hom(&w, &g2, 0, 2, Some(1), 1_000_000).unwrap();
        assert_eq!(h.space.value(0).size(0), 16);
    }

    #[test]
    fn level_adjunction_arrow_site() {
        let site = Arc::new(FinCategory::arrow());
        let x = PresheafSpace::constant(site.clone(), &s0(1));
        let g2 = corepresentable(site, 2, 1);
        let r = ln_adjunction_check(1, &x, &g2, 2, 1_000_000).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.left, 4);
        // L_0(X) and G(0_+) are both the point
        let r = ln_adjunction_check(0, &x, &corepresentable(Arc::new(FinCategory::arrow()), 1, 1), 1, 1_000).unwrap();
        assert!(r.passed && r.left == 1 && r.right == 1, "{r:?}");
    }
}
