use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simplicial::SimplicialSet;

use super::chain::reduced_homology;
use super::group::AbGroup;

/// Path components of a simplicial set, with the basepoint's component
/// numbered 0 and the others in order of their smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Components {
    pub count: usize,
    pub of_vertex: Vec<usize>,
}

pub fn pi0(x: &SimplicialSet) -> Components {
    let n = x.size(0);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            p[a] = p[p[a]];
            a = p[a];
        }
        a
    }
    if x.dim() >= 1 {
        for e in 0..x.size(1) {
            let (a, b) = (find(&mut parent, x.face(1, 0, e)), find(&mut parent, x.face(1, 1, e)));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut of_vertex = vec![0; n];
    let mut count = 0;
    for v in 0..n {
        let r = find(&mut parent, v);
        if label[r] == usize::MAX {
            label[r] = count;
            count += 1;
        }
        of_vertex[v] = label[r];
    }
    Components { count, of_vertex }
}

/// A recorded reason why a space is `(connectivity)`-connected. The
/// Hurewicz shortcut is only applied when one is supplied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityCertificate {
    pub connectivity: usize,
    pub reason: String,
}

impl ConnectivityCertificate {
    pub fn new(connectivity: usize, reason: impl Into<String>) -> Self {
        Self { connectivity, reason: reason.into() }
    }
}

/// `π_n(X)` read off as `H̃_n(X)` for an `(n-1)`-connected space with
/// `n ≥ 2`. Without a sufficient certificate this refuses rather than
/// guessing.
pub fn pi_n_via_hurewicz(x: &SimplicialSet, n: usize, certificate: Option<&ConnectivityCertificate>) -> Result<AbGroup> {
    if n < 2 {
        return Err(Error::Precondition(format!("Hurewicz shortcut needs n >= 2, got {n}")));
    }
    match certificate {
        None => Err(Error::Precondition(format!("no connectivity certificate for pi_{n}"))),
        Some(c) if c.connectivity + 1 < n => Err(Error::Precondition(format!(
            "certificate gives {}-connected ({}), pi_{n} needs {}-connected",
            c.connectivity,
            c.reason,
            n - 1
        ))),
        Some(_) => reduced_homology(x, n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{boundary_quotient_sphere, point, rp2, s0, smash_spheres, wedge};

    #[test]
    fn components() {
        assert_eq!(pi0(&s0(2)).count, 2);
        assert_eq!(pi0(&rp2(2, false).unwrap()).count, 1);
        let w = wedge(&[&s0(2), &s0(2)], 2);
        assert_eq!(pi0(&w.space).count, 3);
        assert_eq!(pi0(&rp2(2, true).unwrap()).count, 2);
    }

    #[test]
    fn hurewicz_with_certificates() {
        let cert = |c| ConnectivityCertificate::new(c, "sphere");
        for n in 2..=3 {
            let s = boundary_quotient_sphere(n, n + 1).unwrap();
            assert_eq!(pi_n_via_hurewicz(&s, n, Some(&cert(n - 1))).unwrap(), AbGroup::free(1));
        }
        let s11 = smash_spheres(2, 3).unwrap();
        assert_eq!(pi_n_via_hurewicz(&s11, 2, Some(&cert(1))).unwrap(), AbGroup::free(1));
        assert_eq!(pi_n_via_hurewicz(&point(3), 2, Some(&cert(5))).unwrap(), AbGroup::trivial());
    }

    #[test]
    fn refuses_without_certificate() {
        let s = boundary_quotient_sphere(2, 3).unwrap();
        assert!(matches!(pi_n_via_hurewicz(&s, 2, None), Err(Error::Precondition(_))));
        let weak = ConnectivityCertificate::new(0, "connected only");
        assert!(pi_n_via_hurewicz(&s, 2, Some(&weak)).is_err());
        assert!(pi_n_via_hurewicz(&s, 1, Some(&weak)).is_err());
    }
}
