use serde::{Deserialize, Serialize};

use crate::error::{structural, Result};
use crate::search::FunctionalCsp;

use super::SimplicialSet;

/// Default node budget for exhaustive map enumeration.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// A basepoint preserving simplicial map, stored as one table per degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimplicialMap {
    tables: Vec<Vec<usize>>,
}

impl SimplicialMap {
    pub fn from_tables(tables: Vec<Vec<usize>>) -> Self {
        Self { tables }
    }

    /// Builds a map and checks it against source and target.
    pub fn new(source: &SimplicialSet, target: &SimplicialSet, tables: Vec<Vec<usize>>) -> Result<Self> {
        let f = Self { tables };
        f.validate(source, target)?;
        Ok(f)
    }

    pub fn identity(x: &SimplicialSet) -> Self {
        Self { tables: x.sizes().iter().map(|&n| (0..n).collect()).collect() }
    }

    pub fn constant(source: &SimplicialSet) -> Self {
        Self { tables: source.sizes().iter().map(|&n| vec![0; n]).collect() }
    }

    pub fn dim(&self) -> usize {
        self.tables.len() - 1
    }

    pub fn apply(&self, k: usize, x: usize) -> usize {
        self.tables[k][x]
    }

    pub fn table(&self, k: usize) -> &[usize] {
        &self.tables[k]
    }

    pub fn tables(&self) -> &[Vec<usize>] {
        &self.tables
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &SimplicialMap) -> SimplicialMap {
        let tables = first
            .tables
            .iter()
            .zip(&self.tables)
            .map(|(f, g)| f.iter().map(|&x| g[x]).collect())
            .collect();
        SimplicialMap { tables }
    }

    pub fn truncate(&self, dim: usize) -> SimplicialMap {
        SimplicialMap { tables: self.tables[..=dim].to_vec() }
    }

    pub fn validate(&self, source: &SimplicialSet, target: &SimplicialSet) -> Result<()> {
        let dim = source.dim();
        if target.dim() != dim || self.tables.len() != dim + 1 {
            return Err(structural("simplicial map dimension bounds disagree"));
        }
        for k in 0..=dim {
            let t = &self.tables[k];
            if t.len() != source.size(k) {
                return Err(structural(format!("map table in degree {k} has wrong length")));
            }
            if t[0] != 0 {
                return Err(structural(format!("map moves the basepoint in degree {k}")));
            }
            if t.iter().any(|&y| y >= target.size(k)) {
                return Err(structural(format!("map value out of range in degree {k}")));
            }
            for x in 0..source.size(k) {
                if k > 0 {
                    for i in 0..=k {
                        if target.face(k, i, t[x]) != self.tables[k - 1][source.face(k, i, x)] {
                            return Err(structural(format!(
                                "map does not commute with d_{i} on simplex {x} of degree {k}"
                            )));
                        }
                    }
                }
                if k < dim {
                    for j in 0..=k {
                        if target.degeneracy(k, j, t[x]) != self.tables[k + 1][source.degeneracy(k, j, x)] {
                            return Err(structural(format!(
                                "map does not commute with s_{j} on simplex {x} of degree {k}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_injective(&self) -> bool {
        self.tables.iter().all(|t| {
            let mut seen = std::collections::HashSet::new();
            t.iter().all(|y| seen.insert(*y))
        })
    }

    pub fn is_bijective_onto(&self, target: &SimplicialSet) -> bool {
        self.is_injective() && self.tables.iter().enumerate().all(|(k, t)| t.len() == target.size(k))
    }

    /// The inverse of a bijective map.
    pub fn inverse(&self) -> Option<SimplicialMap> {
        let mut tables = Vec::with_capacity(self.tables.len());
        for t in &self.tables {
            let mut inv = vec![usize::MAX; t.len()];
            for (x, &y) in t.iter().enumerate() {
                if y >= inv.len() || inv[y] != usize::MAX {
                    return None;
                }
                inv[y] = x;
            }
            tables.push(inv);
        }
        Some(SimplicialMap { tables })
    }
}

/// Adds one variable per simplex of `source` (domain: simplices of `target`
/// in the same degree) with face/degeneracy constraints. Returns the
/// variable ids, indexed `[degree][simplex]`, and a branching order that
/// puts non-degenerate simplices first, top degree down.
pub(crate) fn add_map_variables(
    csp: &mut FunctionalCsp,
    source: &SimplicialSet,
    target: &SimplicialSet,
) -> (Vec<Vec<usize>>, Vec<usize>) {
    let dim = source.dim();
    let vars: Vec<Vec<usize>> =
        (0..=dim).map(|k| (0..source.size(k)).map(|_| csp.add_var(target.size(k))).collect()).collect();
    for k in 0..=dim {
        csp.restrict(vars[k][0], vec![0]);
        for i in 0..=k {
            if k == 0 {
                break;
            }
            let t = csp.add_table(target.face_table(k, i).to_vec());
            for x in 0..source.size(k) {
                csp.constrain(vars[k][x], vars[k - 1][source.face(k, i, x)], t);
            }
        }
        if k < dim {
            for j in 0..=k {
                let t = csp.add_table(target.degeneracy_table(k, j).to_vec());
                for x in 0..source.size(k) {
                    csp.constrain(vars[k][x], vars[k + 1][source.degeneracy(k, j, x)], t);
                }
            }
        }
    }
    let mut order = vec![vars[0][0]];
    for k in (0..=dim).rev() {
        for x in source.nondegenerate(k) {
            order.push(vars[k][x]);
        }
    }
    (vars, order)
}

/// All basepoint preserving simplicial maps `source -> target`, in a
/// deterministic order. Fails with a budget error past `budget` search
/// nodes.
pub fn enumerate_simplicial_maps(
    source: &SimplicialSet,
    target: &SimplicialSet,
    budget: u64,
) -> Result<Vec<SimplicialMap>> {
    if source.dim() != target.dim() {
        return Err(structural("map enumeration needs equal dimension bounds"));
    }
    let mut csp = FunctionalCsp::new();
    let (vars, order) = add_map_variables(&mut csp, source, target);
    csp.set_priority(order);
    let sols = csp.solve_all(budget)?;
    Ok(sols
        .into_iter()
        .map(|sol| SimplicialMap { tables: vars.iter().map(|vk| vk.iter().map(|&v| sol[v]).collect()).collect() })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::super::{boundary_quotient_sphere, point, rp2, s0, smash, product};
    use super::*;
    use crate::error::Error;

    #[test]
    fn maps_from_point_and_s0() {
        let y = rp2(2, false).unwrap();
        let from_point = enumerate_simplicial_maps(&point(2), &y, DEFAULT_BUDGET).unwrap();
        assert_eq!(from_point.len(), 1);
        let from_s0 = enumerate_simplicial_maps(&s0(2), &y, DEFAULT_BUDGET).unwrap();
        assert_eq!(from_s0.len(), y.size(0));
    }

    /// Exhaustive oracle: try every degree-1 assignment of the circle's
    /// generator and extend by degeneracies; count valid ones.
    fn brute_force_circle_maps(target: &SimplicialSet) -> usize {
        let circle = boundary_quotient_sphere(1, target.dim()).unwrap();
        (0..target.size(1))
            .filter(|&y| {
                // faces of the image must be the basepoint vertex
                (0..=1).all(|i| target.face(1, i, y) == 0)
            })
            .filter(|&y| {
                let mut tables = vec![vec![0; circle.size(0)]];
                // degree-k simplices of the circle are surjections [k]->[1];
                // each equals an iterated degeneracy of σ = (0,1).
                for k in 1..=target.dim() {
                    let mut t = vec![0; circle.size(k)];
                    for x in 1..circle.size(k) {
                        // strip degeneracies: find path down to degree 1
                        let mut chain = Vec::new();
                        let mut cur = x;
                        let mut deg = k;
                        while deg > 1 {
                            let j = (0..deg).find(|&j| circle.degeneracy(deg - 1, j, circle.face(deg, j, cur)) == cur).unwrap();
                            chain.push(j);
                            cur = circle.face(deg, j, cur);
                            deg -= 1;
                        }
                        let mut img = y;
                        for (step, &j) in chain.iter().rev().enumerate() {
                            img = target.degeneracy(1 + step, j, img);
                        }
                        t[x] = img;
                    }
                    tables.push(t);
                }
                SimplicialMap::from_tables(tables).validate(&circle, target).is_ok()
            })
            .count()
    }

    #[test]
    fn circle_self_maps_match_brute_force() {
        let c = boundary_quotient_sphere(1, 3).unwrap();
        let maps = enumerate_simplicial_maps(&c, &c, DEFAULT_BUDGET).unwrap();
        assert_eq!(maps.len(), brute_force_circle_maps(&c));
        assert_eq!(maps.len(), 2);
        let t = product(&c, &c);
        let into_torus = enumerate_simplicial_maps(&c, &t, DEFAULT_BUDGET).unwrap();
        assert_eq!(into_torus.len(), brute_force_circle_maps(&t));
    }

    #[test]
    fn every_enumerated_map_is_valid() {
        let c = boundary_quotient_sphere(1, 2).unwrap();
        let x = smash(&c, &c);
        for f in enumerate_simplicial_maps(&c, &x, DEFAULT_BUDGET).unwrap() {
            f.validate(&c, &x).unwrap();
        }
    }

    #[test]
    fn budget_guard() {
        let x = rp2(2, true).unwrap();
        assert!(matches!(enumerate_simplicial_maps(&x, &x, 10), Err(Error::Budget { .. })));
    }
}
