use serde::{Deserialize, Serialize};

use crate::error::{structural, Result};

/// The finite pointed set `n_+ = {0, 1, ..., n}` with basepoint `0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FinPointedSet {
    pub size: usize,
}

impl FinPointedSet {
    pub fn new(size: usize) -> Self {
        Self { size }
    }

    /// Number of elements including the basepoint.
    pub fn cardinality(&self) -> usize {
        self.size + 1
    }
}

/// A basepoint preserving map `m_+ -> n_+`, stored as its value table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PointedMap {
    source: usize,
    target: usize,
    table: Vec<usize>,
}

impl PointedMap {
    pub fn new(source: usize, target: usize, table: Vec<usize>) -> Result<Self> {
        if table.len() != source + 1 {
            return Err(structural(format!(
                "pointed map table has length {}, expected {}",
                table.len(),
                source + 1
            )));
        }
        if table[0] != 0 {
            return Err(structural("pointed map does not preserve the basepoint"));
        }
        if let Some(&bad) = table.iter().find(|&&v| v > target) {
            return Err(structural(format!("pointed map value {bad} exceeds target {target}")));
        }
        Ok(Self { source, target, table })
    }

    pub fn identity(n: usize) -> Self {
        Self { source: n, target: n, table: (0..=n).collect() }
    }

    pub fn zero(source: usize, target: usize) -> Self {
        Self { source, target, table: vec![0; source + 1] }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &PointedMap) -> Result<PointedMap> {
        if first.target != self.source {
            return Err(structural("composing pointed maps with mismatched ends"));
        }
        Ok(PointedMap {
            source: first.source,
            target: self.target,
            table: first.table.iter().map(|&x| self.table[x]).collect(),
        })
    }

    pub fn is_injective_off_base(&self) -> bool {
        let mut seen = vec![false; self.target + 1];
        for &v in &self.table[1..] {
            if v != 0 {
                if seen[v] {
                    return false;
                }
                seen[v] = true;
            } else {
                return false;
            }
        }
        true
    }

    /// `self ∧ other : (ij)_+ -> (i'j')_+` under the lexicographic
    /// identification `i_+ ∧ j_+ ≅ (ij)_+`.
    pub fn smash(&self, other: &PointedMap) -> PointedMap {
        let (i, j) = (self.source, other.source);
        let jt = other.target;
        let mut table = vec![0; i * j + 1];
        for r in 1..=i {
            for s in 1..=j {
                let (a, b) = (self.table[r], other.table[s]);
                if a != 0 && b != 0 {
                    table[pair_index(r, s, j)] = pair_index(a, b, jt);
                }
            }
        }
        PointedMap { source: i * j, target: self.target * jt, table }
    }
}

/// Position of the pair `(r, s)` in `(ij)_+` for `1 <= r <= i`, `1 <= s <= j`.
pub fn pair_index(r: usize, s: usize, j: usize) -> usize {
    (r - 1) * j + s
}

/// Inverse of [`pair_index`].
pub fn unpair_index(p: usize, j: usize) -> (usize, usize) {
    ((p - 1) / j + 1, (p - 1) % j + 1)
}

/// All pointed maps `m_+ -> n_+` in lexicographic order of their tables;
/// the zero map comes first.
pub fn pointed_maps(m: usize, n: usize) -> Vec<PointedMap> {
    let count = (n + 1).checked_pow(m as u32).expect("pointed map count overflow");
    (0..count).map(|idx| pointed_map_from_index(m, n, idx)).collect()
}

/// The `idx`-th map in the order used by [`pointed_maps`].
pub fn pointed_map_from_index(m: usize, n: usize, mut idx: usize) -> PointedMap {
    let mut table = vec![0; m + 1];
    for slot in (1..=m).rev() {
        table[slot] = idx % (n + 1);
        idx /= n + 1;
    }
    PointedMap { source: m, target: n, table }
}

/// Position of a map in the order used by [`pointed_maps`].
pub fn pointed_map_index(map: &PointedMap) -> usize {
    map.table[1..].iter().fold(0, |acc, &v| acc * (map.target + 1) + v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_counts() {
        assert_eq!(pointed_maps(1, 1).len(), 2);
        assert_eq!(pointed_maps(2, 1).len(), 4);
        assert_eq!(pointed_maps(2, 3).len(), 16);
        assert_eq!(pointed_maps(0, 5).len(), 1);
        assert_eq!(pointed_maps(3, 0).len(), 1);
    }

    #[test]
    fn index_round_trip() {
        for (idx, f) in pointed_maps(3, 2).iter().enumerate() {
            assert_eq!(pointed_map_index(f), idx);
        }
        assert_eq!(pointed_maps(2, 2)[0], PointedMap::zero(2, 2));
    }

    #[test]
    fn rejects_non_pointed_tables() {
        assert!(PointedMap::new(1, 1, vec![1, 0]).is_err());
        assert!(PointedMap::new(1, 1, vec![0, 2]).is_err());
        assert!(PointedMap::new(2, 1, vec![0, 1]).is_err());
    }

    #[test]
    fn smash_of_identities_is_identity() {
        let f = PointedMap::identity(2).smash(&PointedMap::identity(3));
        assert_eq!(f, PointedMap::identity(6));
    }

    #[test]
    fn smash_respects_composition() {
        let maps21 = pointed_maps(2, 1);
        let maps12 = pointed_maps(1, 2);
        for a in &maps21 {
            for b in &maps12 {
                for c in &maps12 {
                    for d in &maps21 {
                        let left = c.smash(b);
                        let right = d.smash(a);
                        let composite = right.after(&left).unwrap();
                        let direct = d.after(c).unwrap().smash(&a.after(b).unwrap());
                        assert_eq!(composite, direct);
                    }
                }
            }
        }
    }
}
