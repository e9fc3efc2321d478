use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// A finitely generated abelian group in canonical form `Z^r ⊕ Z/d₁ ⊕ …`
/// with `2 ≤ d₁ | d₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbGroup {
    pub fn trivial() -> Self {
        Self { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        Self { free_rank: rank, torsion: Vec::new() }
    }

    pub fn cyclic(order: u64) -> Self {
        Self::from_orders(&[BigInt::from(order)])
    }

    /// The group `⊕ Z/oᵢ`, where order 0 stands for `Z`. Orders need not be
    /// in canonical form.
    pub fn from_orders(orders: &[BigInt]) -> Self {
        let free_rank = orders.iter().filter(|o| o.is_zero()).count();
        // canonical torsion via prime-power decomposition collected into
        // invariant factors
        let mut primes: std::collections::BTreeMap<BigInt, Vec<BigInt>> = Default::default();
        for o in orders.iter().filter(|o| !o.is_zero() && !o.is_one()) {
            for (p, pk) in prime_power_parts(o) {
                primes.entry(p).or_default().push(pk);
            }
        }
        let len = primes.values().map(Vec::len).max().unwrap_or(0);
        let mut torsion = vec![BigInt::one(); len];
        for powers in primes.values_mut() {
            powers.sort();
            // largest powers go to the last invariant factors
            for (slot, pk) in torsion.iter_mut().rev().zip(powers.iter().rev()) {
                *slot *= pk;
            }
        }
        Self { free_rank, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }
}

fn prime_power_parts(n: &BigInt) -> Vec<(BigInt, BigInt)> {
    let mut n = n.clone();
    if n < BigInt::zero() {
        n = -n;
    }
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            let mut pk = BigInt::one();
            while (&n % &p).is_zero() {
                n /= &p;
                pk *= &p;
            }
            out.push((p.clone(), pk));
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push((n.clone(), n));
    }
    out
}

impl fmt::Display for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" (+) "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn rendering() {
        assert_eq!(AbGroup::trivial().to_string(), "0");
        assert_eq!(AbGroup::free(1).to_string(), "Z");
        assert_eq!(AbGroup::free(2).to_string(), "Z^2");
        assert_eq!(AbGroup::cyclic(2).to_string(), "Z/2");
        assert_eq!(AbGroup::from_orders(&b(&[0, 2, 0])).to_string(), "Z^2 (+) Z/2");
    }

    #[test]
    fn canonical_torsion() {
        assert_eq!(AbGroup::from_orders(&b(&[6, 4])).torsion, b(&[2, 12]));
        assert_eq!(AbGroup::from_orders(&b(&[2, 3])), AbGroup::cyclic(6));
        assert_eq!(AbGroup::from_orders(&b(&[1, 1])), AbGroup::trivial());
        assert_eq!(AbGroup::from_orders(&b(&[4, 2, 8])).torsion, b(&[2, 4, 8]));
    }
}
