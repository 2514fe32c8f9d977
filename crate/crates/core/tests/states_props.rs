mod common;

use common::{field, field_and_seed, odd_field, FIELDS};
use padic_qm::sample::Sampler;
use padic_qm::states::{self, combine, pair, sovm_from_symmetric_decomposition, PadicDistribution, Sovm};
use padic_qm::{BlockOperator, StatisticalOperator};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn pairing_is_affine_in_the_state((i, seed) in field_and_seed()) {
        let k = field(i, 12);
        let mut s = Sampler::new(k, seed);
        let sovm = s.sovm(4, 3, -1, 2);
        let (s1, s2) = (s.statistical(4, -1, 2), s.statistical(4, -1, 2));
        let alpha = s.padic(-1, 2);
        let beta = k.base().one() - alpha;
        let mix = StatisticalOperator::new(combine(&[s1.op().clone(), s2.op().clone()], &[alpha, beta]).unwrap()).unwrap();
        let (d, d1, d2) = (pair(&sovm, &mix).unwrap(), pair(&sovm, &s1).unwrap(), pair(&sovm, &s2).unwrap());
        for j in 0..d.distribution.len() {
            let expect = alpha * d1.distribution.weights()[j] + beta * d2.distribution.weights()[j];
            prop_assert_eq!(d.distribution.weights()[j], expect);
        }
    }

    #[test]
    fn pairing_values_are_bounded_by_norms((i, seed) in field_and_seed()) {
        let k = field(i, 12);
        let mut s = Sampler::new(k, seed);
        let sovm = s.sovm(5, 4, -1, 2);
        let st = s.statistical(5, -1, 2);
        let r = pair(&sovm, &st).unwrap();
        for (a, w) in sovm.effects().iter().zip(r.distribution.weights()) {
            prop_assert!(w.abs_p() <= a.operator_norm() * st.norm());
        }
    }

    #[test]
    fn density_mixtures_stay_density((i, seed) in field_and_seed(), n in 2usize..4) {
        let k = field(i, 12);
        let mut s = Sampler::new(k, seed);
        let ops: Vec<BlockOperator> = (0..n).map(|_| s.density(4).into_op()).collect();
        let mut w: Vec<_> = (1..n).map(|_| s.padic_or_zero(0, 2, 0.2)).collect();
        let rest = w.iter().fold(k.base().one(), |acc, x| acc - *x);
        w.push(rest);
        prop_assert!(states::is_convex_combination(&w));
        let mix = StatisticalOperator::new(combine(&ops, &w).unwrap()).unwrap();
        prop_assert!(mix.is_density());
        prop_assert_eq!(mix.is_density_by_decomposition().unwrap(), true);
    }

    #[test]
    fn products_of_distributions_validate((i, seed) in field_and_seed()) {
        let k = field(i, 12);
        let mut s = Sampler::new(k, seed);
        let draw = |s: &mut Sampler, n: usize| {
            let mut w: Vec<_> = (1..n).map(|_| s.padic_or_zero(-2, 2, 0.2)).collect();
            let rest = w.iter().fold(k.base().one(), |acc, x| acc - *x);
            w.push(rest);
            PadicDistribution::new(w).unwrap()
        };
        let (a, b) = (draw(&mut s, 3), draw(&mut s, 4));
        let ab = a.product(&b).unwrap();
        prop_assert_eq!(ab.len(), 12);
        prop_assert_eq!(ab.sup_norm(), a.sup_norm() * b.sup_norm());
        prop_assert_eq!(ab.is_in_simplex(), a.is_in_simplex() && b.is_in_simplex());
    }

    #[test]
    fn zero_trace_split_recombines((i, seed) in field_and_seed()) {
        let k = field(i, 12);
        let mut s = Sampler::new(k, seed);
        let st = s.statistical(4, -1, 2);
        let t = s.zero_trace(4, -2, 1);
        let perturbed = states::zero_trace_perturb(&st, &t).unwrap();
        if st.norm() < t.operator_norm() {
            prop_assert_eq!(perturbed.norm(), t.operator_norm());
        }
        let (s0, s1) = perturbed.split_zero_trace().unwrap();
        prop_assert!(s0.op().trace().is_zero());
        prop_assert_eq!(s1.op().trace(), k.one());
        prop_assert_eq!(s0.op().add(s1.op()).unwrap(), perturbed.op().clone());
    }

    #[test]
    fn decomposition_sovm_of_a_density_is_contractive((i, seed) in (0..FIELDS.len(), any::<u64>())) {
        let k = odd_field(i, 12);
        let mut s = Sampler::new(k, seed);
        let d = s.density(4);
        let derived = sovm_from_symmetric_decomposition(&d).unwrap();
        prop_assert!(derived.sovm.is_contractive());
        let r = pair(&derived.sovm, &d).unwrap();
        prop_assert!(r.in_simplex);
        prop_assert!(derived.associated.is_in_simplex());
    }
}

#[test]
fn sovm_json_round_trip() {
    let k = field(1, 8);
    let mut s = Sampler::new(k, 5);
    let sovm = s.sovm(3, 3, 0, 2);
    let back: Sovm = serde_json::from_str(&serde_json::to_string(&sovm).unwrap()).unwrap();
    assert_eq!(back, sovm);
    let d = PadicDistribution::from_i64(k.base(), &[1, 2, -1, -1]).unwrap();
    let text = serde_json::to_string(&d).unwrap();
    assert!(text.starts_with("{\"weights\":["));
    assert_eq!(serde_json::from_str::<PadicDistribution>(&text).unwrap(), d);
}
