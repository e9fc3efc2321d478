use crate::error::{structural, Result};

use super::{SimplicialMap, SimplicialSet};

/// A bisimplicial set presented as a simplicial object in simplicial sets:
/// column `p` is the simplicial set `B_{p,•}` and the horizontal faces and
/// degeneracies are simplicial maps between columns.
#[derive(Clone, Debug)]
pub struct BiSimplicialSet {
    columns: Vec<SimplicialSet>,
    hfaces: Vec<Vec<SimplicialMap>>,
    hdegeneracies: Vec<Vec<SimplicialMap>>,
}

impl BiSimplicialSet {
    /// `hfaces[p][i] : column p -> column p-1` (empty for `p = 0`) and
    /// `hdegeneracies[p][j] : column p -> column p+1` (empty for the last).
    pub fn new(
        columns: Vec<SimplicialSet>,
        hfaces: Vec<Vec<SimplicialMap>>,
        hdegeneracies: Vec<Vec<SimplicialMap>>,
    ) -> Result<Self> {
        let b = Self { columns, hfaces, hdegeneracies };
        b.validate()?;
        Ok(b)
    }

    /// Horizontal and vertical dimension bounds.
    pub fn dims(&self) -> (usize, usize) {
        (self.columns.len() - 1, self.columns[0].dim())
    }

    pub fn column(&self, p: usize) -> &SimplicialSet {
        &self.columns[p]
    }

    pub fn validate(&self) -> Result<()> {
        if self.columns.is_empty() {
            return Err(structural("bisimplicial set needs at least one column"));
        }
        let h = self.columns.len() - 1;
        let v = self.columns[0].dim();
        if self.columns.iter().any(|c| c.dim() != v) {
            return Err(structural("columns have different vertical bounds"));
        }
        if self.hfaces.len() != h + 1 || self.hdegeneracies.len() != h + 1 {
            return Err(structural("horizontal structure map count mismatch"));
        }
        for p in 0..=h {
            let nf = if p == 0 { 0 } else { p + 1 };
            let nd = if p < h { p + 1 } else { 0 };
            if self.hfaces[p].len() != nf || self.hdegeneracies[p].len() != nd {
                return Err(structural(format!("column {p} has the wrong number of horizontal maps")));
            }
            for f in &self.hfaces[p] {
                f.validate(&self.columns[p], &self.columns[p - 1])?;
            }
            for s in &self.hdegeneracies[p] {
                s.validate(&self.columns[p], &self.columns[p + 1])?;
            }
        }
        // horizontal simplicial identities, checked as map equalities
        let d = |p: usize, i: usize| &self.hfaces[p][i];
        let s = |p: usize, j: usize| &self.hdegeneracies[p][j];
        for p in 0..=h {
            if p >= 2 {
                for j in 0..=p {
                    for i in 0..j {
                        if d(p - 1, i).after(d(p, j)) != d(p - 1, j - 1).after(d(p, i)) {
                            return Err(structural(format!("horizontal d_{i} d_{j} identity fails at column {p}")));
                        }
                    }
                }
            }
            if p < h {
                for j in 0..=p {
                    for i in 0..=p + 1 {
                        let lhs = d(p + 1, i).after(s(p, j));
                        let rhs = if i < j {
                            s(p - 1, j - 1).after(d(p, i))
                        } else if i == j || i == j + 1 {
                            SimplicialMap::identity(&self.columns[p])
                        } else {
                            s(p - 1, j).after(d(p, i - 1))
                        };
                        if lhs != rhs {
                            return Err(structural(format!("horizontal d_{i} s_{j} identity fails at column {p}")));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Constant in the horizontal direction with value `x`.
    pub fn horizontally_constant(x: &SimplicialSet, hdim: usize) -> Self {
        let id = SimplicialMap::identity(x);
        Self {
            columns: vec![x.clone(); hdim + 1],
            hfaces: (0..=hdim).map(|p| if p == 0 { Vec::new() } else { vec![id.clone(); p + 1] }).collect(),
            hdegeneracies: (0..=hdim).map(|p| if p < hdim { vec![id.clone(); p + 1] } else { Vec::new() }).collect(),
        }
    }

    /// `B_{p,q} = X_p ∧ Y_q`; its diagonal is `X ∧ Y`.
    pub fn external_smash(x: &SimplicialSet, y: &SimplicialSet) -> Self {
        let h = x.dim();
        let v = y.dim();
        // column p: the discrete set X_p smashed with Y, i.e. pairs (a, b)
        let columns: Vec<SimplicialSet> = (0..=h)
            .map(|p| {
                let levels: Vec<Vec<Option<(usize, usize)>>> = (0..=v)
                    .map(|q| {
                        std::iter::once(None)
                            .chain((1..x.size(p)).flat_map(|a| (1..y.size(q)).map(move |b| Some((a, b)))))
                            .collect()
                    })
                    .collect();
                let pair = |a: usize, b: usize| if b == 0 { None } else { Some((a, b)) };
                SimplicialSet::from_keys(
                    v,
                    &levels,
                    |q, i, key| key.and_then(|(a, b)| pair(a, y.face(q, i, b))),
                    |q, j, key| key.and_then(|(a, b)| pair(a, y.degeneracy(q, j, b))),
                )
                .expect("external smash column is valid")
            })
            .collect();
        let index = |_p: usize, q: usize, a: usize, b: usize| -> usize {
            if a == 0 || b == 0 {
                0
            } else {
                (a - 1) * (y.size(q) - 1) + b
            }
        };
        let hmap = |p: usize, p2: usize, f: &dyn Fn(usize) -> usize| -> SimplicialMap {
            let tables = (0..=v)
                .map(|q| {
                    let mut t = vec![0; columns[p].size(q)];
                    for a in 1..x.size(p) {
                        for b in 1..y.size(q) {
                            t[index(p, q, a, b)] = index(p2, q, f(a), b);
                        }
                    }
                    t
                })
                .collect();
            SimplicialMap::from_tables(tables)
        };
        let hfaces = (0..=h)
            .map(|p| if p == 0 { Vec::new() } else { (0..=p).map(|i| hmap(p, p - 1, &|a| x.face(p, i, a))).collect() })
            .collect();
        let hdegeneracies = (0..=h)
            .map(|p| if p < h { (0..=p).map(|j| hmap(p, p + 1, &|a| x.degeneracy(p, j, a))).collect() } else { Vec::new() })
            .collect();
        Self { columns, hfaces, hdegeneracies }
    }

    /// The diagonal simplicial set `k ↦ B_{k,k}`.
    pub fn diagonal(&self) -> Result<SimplicialSet> {
        let (h, v) = self.dims();
        if h != v {
            return Err(structural(format!("diagonal needs equal bounds, got ({h}, {v})")));
        }
        let sizes: Vec<usize> = (0..=h).map(|k| self.columns[k].size(k)).collect();
        let faces = (0..=h)
            .map(|k| {
                if k == 0 {
                    return Vec::new();
                }
                (0..=k)
                    .map(|i| {
                        let hf = &self.hfaces[k][i];
                        (0..sizes[k]).map(|x| self.columns[k - 1].face(k, i, hf.apply(k, x))).collect()
                    })
                    .collect()
            })
            .collect();
        let degeneracies = (0..=h)
            .map(|k| {
                if k == h {
                    return Vec::new();
                }
                (0..=k)
                    .map(|j| {
                        let hs = &self.hdegeneracies[k][j];
                        (0..sizes[k]).map(|x| self.columns[k + 1].degeneracy(k, j, hs.apply(k, x))).collect()
                    })
                    .collect()
            })
            .collect();
        let truncated = self.columns.iter().any(|c| c.is_truncated());
        Ok(SimplicialSet::from_tables(h, sizes, faces, degeneracies)?.mark_truncated(truncated))
    }
}

#[cfg(test)]
mod tests {
    use super::super::{boundary_quotient_sphere, rp2, smash};
    use super::*;

    #[test]
    fn diagonal_of_constant_is_the_value() {
        let x = rp2(3, false).unwrap();
        let b = BiSimplicialSet::horizontally_constant(&x, 3);
        b.validate().unwrap();
        assert_eq!(b.diagonal().unwrap(), x);
    }

    #[test]
    fn diagonal_of_external_smash_is_smash() {
        let c = boundary_quotient_sphere(1, 3).unwrap();
        let x = rp2(3, false).unwrap();
        let b = BiSimplicialSet::external_smash(&c, &x);
        b.validate().unwrap();
        assert_eq!(b.diagonal().unwrap(), smash(&c, &x));
    }

    #[test]
    fn unequal_bounds_rejected() {
        let x = rp2(2, false).unwrap();
        let b = BiSimplicialSet::horizontally_constant(&x, 3);
        assert!(b.diagonal().is_err());
    }
}
