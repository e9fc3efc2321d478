//! Finite pointed simplicial sets truncated at an explicit dimension bound.
//!
//! Simplices of degree `k` are the integers `0..size(k)`, with `0` the
//! basepoint simplex. Degenerate simplices are stored explicitly so that
//! products and diagonals reduce to table lookups.

mod bisimplicial;
mod constructions;
mod maps;
mod pointed;

use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{structural, Error, Result};

pub use bisimplicial::BiSimplicialSet;
pub use constructions::{
    boundary_quotient_sphere, delta_map, delta_plus, delta_top, discrete, from_simplicial_complex, point, product, product_maps, quotient,
    quotient_projection, rp2, s0, smash, smash_maps, smash_spheres, wedge, wedge_maps, Wedge, RP2_FACETS,
};
pub(crate) use maps::add_map_variables;
pub use maps::{enumerate_simplicial_maps, SimplicialMap, DEFAULT_BUDGET};
pub use pointed::{
    pair_index, pointed_map_from_index, pointed_map_index, pointed_maps, unpair_index,
    FinPointedSet, PointedMap,
};

/// A finite pointed simplicial set, stored in degrees `0..=dim`.
///
/// `faces[k][i]` is `d_i` from degree `k` to `k - 1` (present for `k >= 1`);
/// `degeneracies[k][j]` is `s_j` from degree `k` to `k + 1` (present for
/// `k < dim`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialSet {
    dim: usize,
    sizes: Vec<usize>,
    faces: Vec<Vec<Vec<usize>>>,
    degeneracies: Vec<Vec<Vec<usize>>>,
    #[serde(default)]
    truncated: bool,
}

impl SimplicialSet {
    /// Assembles a simplicial set from explicit tables and validates it.
    pub fn from_tables(
        dim: usize,
        sizes: Vec<usize>,
        faces: Vec<Vec<Vec<usize>>>,
        degeneracies: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let x = Self { dim, sizes, faces, degeneracies, truncated: false };
        x.validate()?;
        Ok(x)
    }

    /// Builds a simplicial set whose simplices are described by keys.
    ///
    /// `levels[k]` lists the keys of the `k`-simplices with the basepoint key
    /// first; `face(k, i, key)` and `degeneracy(k, j, key)` compute keys of
    /// faces and degeneracies of a degree-`k` key.
    pub fn from_keys<K, F, S>(dim: usize, levels: &[Vec<K>], face: F, degeneracy: S) -> Result<Self>
    where
        K: Eq + Hash + Clone + std::fmt::Debug,
        F: Fn(usize, usize, &K) -> K,
        S: Fn(usize, usize, &K) -> K,
    {
        if levels.len() != dim + 1 {
            return Err(structural("one key level per degree is required"));
        }
        let index: Vec<HashMap<&K, usize>> = levels
            .iter()
            .map(|lvl| lvl.iter().enumerate().map(|(i, k)| (k, i)).collect())
            .collect();
        for (k, lvl) in levels.iter().enumerate() {
            if lvl.is_empty() {
                return Err(structural(format!("degree {k} has no basepoint simplex")));
            }
            if index[k].len() != lvl.len() {
                return Err(structural(format!("degree {k} has repeated keys")));
            }
        }
        let lookup = |k: usize, key: &K| -> Result<usize> {
            index[k]
                .get(key)
                .copied()
                .ok_or_else(|| structural(format!("key {key:?} missing in degree {k}")))
        };
        let mut faces = vec![Vec::new()];
        for k in 1..=dim {
            let mut per_k = Vec::with_capacity(k + 1);
            for i in 0..=k {
                let table = levels[k]
                    .iter()
                    .map(|key| lookup(k - 1, &face(k, i, key)))
                    .collect::<Result<Vec<_>>>()?;
                per_k.push(table);
            }
            faces.push(per_k);
        }
        let mut degeneracies = Vec::with_capacity(dim);
        for k in 0..dim {
            let mut per_k = Vec::with_capacity(k + 1);
            for j in 0..=k {
                let table = levels[k]
                    .iter()
                    .map(|key| lookup(k + 1, &degeneracy(k, j, key)))
                    .collect::<Result<Vec<_>>>()?;
                per_k.push(table);
            }
            degeneracies.push(per_k);
        }
        degeneracies.push(Vec::new());
        Self::from_tables(dim, levels.iter().map(Vec::len).collect(), faces, degeneracies)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of `k`-simplices including the basepoint simplex.
    pub fn size(&self, k: usize) -> usize {
        self.sizes[k]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn face(&self, k: usize, i: usize, x: usize) -> usize {
        self.faces[k][i][x]
    }

    pub fn face_table(&self, k: usize, i: usize) -> &[usize] {
        &self.faces[k][i]
    }

    pub fn degeneracy(&self, k: usize, j: usize, x: usize) -> usize {
        self.degeneracies[k][j][x]
    }

    pub fn degeneracy_table(&self, k: usize, j: usize) -> &[usize] {
        &self.degeneracies[k][j]
    }

    /// Whether some construction had to cut off simplices above `dim`.
    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub(crate) fn mark_truncated(mut self, flag: bool) -> Self {
        self.truncated |= flag;
        self
    }

    /// Highest degree in which homology is computed from complete data.
    pub fn trusted_homology_degree(&self) -> usize {
        self.dim.saturating_sub(1)
    }

    pub fn is_degenerate(&self, k: usize, x: usize) -> bool {
        k > 0 && (0..k).any(|j| self.degeneracies[k - 1][j][self.faces[k][j][x]] == x)
    }

    /// Non-degenerate, non-basepoint simplices of degree `k`, ascending.
    pub fn nondegenerate(&self, k: usize) -> Vec<usize> {
        (1..self.sizes[k]).filter(|&x| !self.is_degenerate(k, x)).collect()
    }

    /// Whether all simplices are basepoint simplices.
    pub fn is_point(&self) -> bool {
        self.sizes.iter().all(|&s| s == 1)
    }

    /// Restricts to degrees `0..=dim`.
    pub fn truncate(&self, dim: usize) -> Result<Self> {
        if dim > self.dim {
            return Err(Error::DimensionBound(format!(
                "cannot extend a {}-truncated simplicial set to {dim}",
                self.dim
            )));
        }
        let mut degeneracies: Vec<_> = self.degeneracies[..dim].to_vec();
        degeneracies.push(Vec::new());
        Ok(Self {
            dim,
            sizes: self.sizes[..=dim].to_vec(),
            faces: self.faces[..=dim].to_vec(),
            degeneracies,
            truncated: self.truncated || dim < self.dim,
        })
    }

    /// Checks table shapes, basepoint conditions and all simplicial
    /// identities in the stored degrees.
    pub fn validate(&self) -> Result<()> {
        let dim = self.dim;
        if self.sizes.len() != dim + 1 || self.faces.len() != dim + 1 || self.degeneracies.len() != dim + 1 {
            return Err(structural("table count does not match dimension bound"));
        }
        for k in 0..=dim {
            if self.sizes[k] == 0 {
                return Err(structural(format!("degree {k} lacks a basepoint simplex")));
            }
            let nf = if k == 0 { 0 } else { k + 1 };
            if self.faces[k].len() != nf {
                return Err(structural(format!("degree {k} has {} face maps", self.faces[k].len())));
            }
            for (i, t) in self.faces[k].iter().enumerate() {
                check_table(t, self.sizes[k], self.sizes[k - 1], &format!("d_{i} in degree {k}"))?;
            }
            let nd = if k < dim { k + 1 } else { 0 };
            if self.degeneracies[k].len() != nd {
                return Err(structural(format!(
                    "degree {k} has {} degeneracy maps",
                    self.degeneracies[k].len()
                )));
            }
            for (j, t) in self.degeneracies[k].iter().enumerate() {
                check_table(t, self.sizes[k], self.sizes[k + 1], &format!("s_{j} in degree {k}"))?;
            }
        }
        let d = |k: usize, i: usize, x: usize| self.faces[k][i][x];
        let s = |k: usize, j: usize, x: usize| self.degeneracies[k][j][x];
        for k in 0..=dim {
            for x in 0..self.sizes[k] {
                if k >= 2 {
                    for j in 0..=k {
                        for i in 0..j {
                            if d(k - 1, i, d(k, j, x)) != d(k - 1, j - 1, d(k, i, x)) {
                                return Err(structural(format!(
                                    "d_{i} d_{j} != d_{} d_{i} on simplex {x} of degree {k}",
                                    j - 1
                                )));
                            }
                        }
                    }
                }
                if k < dim {
                    for j in 0..=k {
                        let y = s(k, j, x);
                        for i in 0..=k + 1 {
                            let lhs = d(k + 1, i, y);
                            let rhs = if i < j {
                                s(k - 1, j - 1, d(k, i, x))
                            } else if i == j || i == j + 1 {
                                x
                            } else {
                                s(k - 1, j, d(k, i - 1, x))
                            };
                            if lhs != rhs {
                                return Err(structural(format!(
                                    "d_{i} s_{j} identity fails on simplex {x} of degree {k}"
                                )));
                            }
                        }
                        if k + 1 < dim {
                            for i in 0..=j {
                                if s(k + 1, i, s(k, j, x)) != s(k + 1, j + 1, s(k, i, x)) {
                                    return Err(structural(format!(
                                        "s_{i} s_{j} identity fails on simplex {x} of degree {k}"
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn check_table(table: &[usize], len: usize, target: usize, what: &str) -> Result<()> {
    if table.len() != len {
        return Err(structural(format!("{what} has {} entries, expected {len}", table.len())));
    }
    if table.first() != Some(&0) {
        return Err(structural(format!("{what} moves the basepoint simplex")));
    }
    if table.iter().any(|&v| v >= target) {
        return Err(structural(format!("{what} has an out-of-range value")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn broken_identity_is_reported() {
        let circle = boundary_quotient_sphere(1, 2).unwrap();
        let mut faces = circle.faces.clone();
        // two 1-simplices would be needed to break d0 d1 = d0 d0; instead
        // corrupt a degeneracy so d_0 s_0 != id.
        let mut degs = circle.degeneracies.clone();
        degs[1][0][1] = 0;
        faces[2][0][0] = 0;
        let err = SimplicialSet::from_tables(2, circle.sizes.clone(), faces, degs).unwrap_err();
        assert!(matches!(err, Error::Structural(_)));
    }

    #[test]
    fn truncation_keeps_identities() {
        let s2 = boundary_quotient_sphere(2, 4).unwrap();
        let t = s2.truncate(2).unwrap();
        t.validate().unwrap();
        assert!(t.is_truncated());
        assert_eq!(t.nondegenerate(2).len(), 1);
    }
}
