use std::sync::Arc;

use gspc_core::gamma::{corepresentable, eilenberg_mac_lane, linearization};
use gspc_core::homology::{
    invariant_factors, reduced_chain_complex, reduced_homology, smith_normal_form, AbGroup, IntMatrix, SimplicialAbGroup,
};
use gspc_core::simplicial::{boundary_quotient_sphere, rp2, s0, smash};
use gspc_core::site::{FinCategory, SimplicialAbPresheaf};
use gspc_core::spectra::{sp_linear, spectrum_homology_linear, Tag};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn one() -> Arc<FinCategory> {
    Arc::new(FinCategory::one_point())
}

#[test]
fn sphere_homology() {
    let s2 = boundary_quotient_sphere(2, 4).unwrap();
    for n in 0..=3 {
        let expected = if n == 2 { AbGroup::free(1) } else { AbGroup::trivial() };
        assert_eq!(reduced_homology(&s2, n).unwrap(), expected, "degree {n}");
    }
    assert_eq!(reduced_homology(&s0(2), 0).unwrap(), AbGroup::free(1));
    assert!(reduced_homology(&s0(2), 1).unwrap().is_trivial());
    assert_eq!(reduced_homology(&boundary_quotient_sphere(1, 2).unwrap(), 1).unwrap(), AbGroup::free(1));
}

#[test]
fn projective_plane() {
    let x = rp2(3, true).unwrap();
    assert_eq!(reduced_homology(&x, 1).unwrap(), AbGroup::cyclic(2));
    assert!(reduced_homology(&x, 2).unwrap().is_trivial());
    let c = reduced_chain_complex(&rp2(3, false).unwrap()).with_coefficients(2);
    assert_eq!(c.homology(2).unwrap(), AbGroup::cyclic(2));
}

#[test]
fn homology_is_refused_at_the_dimension_bound() {
    let s1 = boundary_quotient_sphere(1, 2).unwrap();
    assert!(reduced_homology(&s1, 2).is_err());
}

#[test]
fn normalization_theorem() {
    let s1 = boundary_quotient_sphere(1, 4).unwrap();
    let objects = [
        SimplicialAbGroup::reduced_free(&s1, &[0]),
        SimplicialAbGroup::reduced_free(&rp2(4, false).unwrap(), &[0]),
        SimplicialAbGroup::reduced_free(&smash(&s1, &s1), &[2]),
        SimplicialAbGroup::constant(&[0, 3], 4),
    ];
    for a in &objects {
        let (full, norm, moore) = (a.unnormalized_complex(), a.normalized_complex(), a.moore_complex());
        for n in 0..3 {
            let h = norm.homology(n).unwrap();
            assert_eq!(full.homology(n).unwrap(), h, "degree {n}");
            assert_eq!(moore.homology(n).unwrap(), h, "degree {n}");
            assert_eq!(a.homotopy(n).unwrap(), h, "degree {n}");
        }
    }
}

#[test]
fn linearization_of_small_gamma_spaces() {
    let l = linearization(&corepresentable(one(), 1, 2)).unwrap();
    assert_eq!(l.presheaf.value(0).homotopy(0).unwrap(), AbGroup::free(1));
    assert!(l.presheaf.value(0).homotopy(1).unwrap().is_trivial());
    let l = linearization(&corepresentable(one(), 0, 2)).unwrap();
    assert!(l.presheaf.value(0).homotopy(0).unwrap().is_trivial());
    let z3 = SimplicialAbPresheaf::constant(one(), &SimplicialAbGroup::constant(&[3], 2));
    let l = linearization(&eilenberg_mac_lane(z3)).unwrap();
    assert_eq!(l.presheaf.value(0).homotopy(0).unwrap(), AbGroup::cyclic(3));
}

#[test]
fn spectrum_homology_of_mod_two_eilenberg_mac_lane() {
    let a = SimplicialAbPresheaf::constant(one(), &SimplicialAbGroup::constant(&[2], 4));
    let e = sp_linear(&a, 2, "H(Z/2)").unwrap();
    let r = spectrum_homology_linear(&e, 1).unwrap();
    assert_eq!(r.tag, Tag::Exact);
    assert_eq!(r.value(), Some(&AbGroup::trivial()));
    assert_eq!(spectrum_homology_linear(&e, 0).unwrap().value(), Some(&AbGroup::cyclic(2)));
}

fn matrix(rows: usize, cols: usize, entries: &[i64]) -> IntMatrix {
    IntMatrix::from_rows(&(0..rows).map(|i| entries[i * cols..(i + 1) * cols].to_vec()).collect::<Vec<_>>())
}

fn diagonal(rows: usize, cols: usize, d: &[BigInt]) -> IntMatrix {
    let mut m = IntMatrix::zeros(rows, cols);
    for (i, v) in d.iter().enumerate() {
        m.add_to(i, i, v.clone());
    }
    m
}

proptest! {
    #[test]
    fn smith_form_factors_the_matrix((rows, cols, entries) in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
        (Just(r), Just(c), prop::collection::vec(-6i64..7, r * c))
    })) {
        let m = matrix(rows, cols, &entries);
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), diagonal(rows, cols, &s.diagonal));
        prop_assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(rows));
        prop_assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(cols));
        for w in s.diagonal.windows(2) {
            prop_assert!(w[0] > BigInt::zero() && (&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn invariant_factors_ignore_relabeling((rows, cols, entries, seed) in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
        (Just(r), Just(c), prop::collection::vec(-6i64..7, r * c), any::<u64>())
    })) {
        let m = matrix(rows, cols, &entries);
        let mut perm_r: Vec<usize> = (0..rows).collect();
        let mut perm_c: Vec<usize> = (0..cols).collect();
        perm_r.rotate_left((seed as usize) % rows);
        perm_c.reverse();
        perm_c.rotate_left((seed as usize / 7) % cols);
        let shuffled = m.select_rows(&perm_r).select_columns(&perm_c);
        prop_assert_eq!(invariant_factors(&m), invariant_factors(&shuffled));
        let negated = m.scale(&-BigInt::one());
        prop_assert_eq!(invariant_factors(&m), invariant_factors(&negated));
    }
}
