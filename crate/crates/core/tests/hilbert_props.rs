mod common;

use common::{field, field_and_seed, odd_field, FIELDS};
use padic_qm::hilbert::{self, norm_two_scalar, BasisRotation, PVector};
use padic_qm::sample::Sampler;
use padic_qm::{Branch, ExtensionContext};
use proptest::prelude::*;

/// Looks for `(a + b sqrt(mu)) e1 + e2` with `N(a + b sqrt(mu)) = -1` by
/// trying rational `b = t / p^j` and taking `a` as a square root.
fn support_two_witness(k: &ExtensionContext) -> Option<PVector> {
    let base = k.base();
    let p = k.p() as i64;
    for j in 0..3 {
        for t in 0..p.pow(3) {
            let b = base.from_i64(t) * base.p_power(-j);
            let a2 = base.from_i64(-1) + k.mu() * b * b;
            if a2.is_zero() {
                continue;
            }
            if let Ok(a) = a2.sqrt(Branch::Principal) {
                let x = PVector::from_dense(*k, &[k.from_parts(a, b).unwrap(), k.one()]).unwrap();
                return Some(x);
            }
        }
    }
    None
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn basis_expansion_recovers_vector_and_norm((i, seed) in field_and_seed()) {
        let k = field(i, 10);
        let mut s = Sampler::new(k, seed);
        let v = s.vector(6, -2, 2);
        let coords: Vec<_> = (1..=6).map(|n| PVector::basis(k, n).inner(&v).unwrap()).collect();
        prop_assert_eq!(PVector::from_dense(k, &coords).unwrap(), v.clone());
        let top = coords.iter().map(|c| c.ext_abs()).max().unwrap();
        prop_assert_eq!(top, v.sup_norm());
    }

    #[test]
    fn cauchy_schwarz((i, seed) in field_and_seed()) {
        let k = field(i, 10);
        let mut s = Sampler::new(k, seed);
        let (x, y) = (s.vector(5, -2, 2), s.vector(5, -2, 2));
        prop_assert!(x.inner(&y).unwrap().ext_abs() <= x.sup_norm() * y.sup_norm());
        prop_assert_eq!(x.inner(&y).unwrap(), y.inner(&x).unwrap().conj());
    }

    #[test]
    fn sums_and_differences_keep_the_max((i, seed) in (0..FIELDS.len(), any::<u64>())) {
        let k = odd_field(i, 10);
        let mut s = Sampler::new(k, seed);
        let (a, b) = (s.scalar(-2, 2), s.scalar(-2, 2));
        prop_assert_eq!(a.ext_abs().max(b.ext_abs()), (a + b).ext_abs().max((a - b).ext_abs()));
    }

    #[test]
    fn rotations_preserve_inner_products((i, seed) in (0..FIELDS.len(), any::<u64>())) {
        let k = odd_field(i, 10);
        let Some(z) = norm_two_scalar(&k) else { return Ok(()) };
        let mut s = Sampler::new(k, seed);
        let r = BasisRotation::consecutive(k, 6, z).unwrap();
        let (x, y) = (s.vector(6, -2, 2), s.vector(6, -2, 2));
        let (rx, ry) = (r.apply(&x).unwrap(), r.apply(&y).unwrap());
        prop_assert_eq!(rx.inner(&ry).unwrap(), x.inner(&y).unwrap());
        prop_assert_eq!(rx.sup_norm(), x.sup_norm());
        prop_assert_eq!(r.inverse().apply(&rx).unwrap(), x);
    }

    #[test]
    fn rotated_bases_are_orthonormal((i, _seed) in (0..FIELDS.len(), any::<u64>())) {
        let k = odd_field(i, 10);
        let Some(z) = norm_two_scalar(&k) else { return Ok(()) };
        let r = BasisRotation::consecutive(k, 4, z).unwrap();
        let images: Vec<_> = (1..=4).map(|n| r.image_of_basis(n)).collect();
        prop_assert!(hilbert::is_orthonormal_system(&images).unwrap());
        prop_assert!(hilbert::is_norm_orthogonal(&images).unwrap());
    }
}

#[test]
fn isotropy_index_agrees_with_search_oracle() {
    for &(p, mu) in FIELDS.iter().chain([(11, 2), (13, 13), (3, 15)].iter()) {
        let k = ExtensionContext::from_params(p, mu, 12).unwrap();
        let (nu, witness) = hilbert::isotropy_index(&k, hilbert::DEFAULT_ISOTROPY_BOUND).unwrap();
        assert!(witness.inner(&witness).unwrap().is_zero() && !witness.is_zero());
        assert_eq!(witness.support_size(), nu as usize, "Q_{p}(sqrt {mu})");
        let oracle = support_two_witness(&k);
        if let Some(x) = &oracle {
            assert!(x.inner(x).unwrap().is_zero());
        }
        assert_eq!(nu == 2, oracle.is_some(), "Q_{p}(sqrt {mu})");
    }
}

#[test]
fn no_isotropic_vector_below_the_index() {
    let k = ExtensionContext::from_params(3, 3, 10).unwrap();
    assert_eq!(hilbert::isotropy_index_by_symbol(&k), 3);
    assert!(hilbert::find_isotropic(&k, 2).is_none());
    assert!(hilbert::find_isotropic(&k, 3).is_some());
}
