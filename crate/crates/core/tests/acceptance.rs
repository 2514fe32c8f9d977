//! The acceptance suite: one line per criterion, nonzero exit on any failure.

use std::time::{Duration, Instant};

use padic_qm::hilbert::{self, norm_two_scalar, BasisRotation, PVector};
use padic_qm::operator::{
    block_is_ip_preserving, block_is_unitary, dyadic_sqrt14_unitary, factor_trace_class, ip_preserving_non_unitary,
    verify_cyclic, CanonicalDecomposition, SymmetricDecomposition,
};
use padic_qm::sample::Sampler;
use padic_qm::states::{pair, PadicDistribution};
use padic_qm::{AbsValue, BlockOperator, Branch, ExtensionContext, MatrixOperator, PadicContext, QuadExt};

type Outcome = Result<String, String>;
type Build<T> = Box<dyn Fn(&ExtensionContext) -> T>;
type Criterion = (&'static str, fn() -> Outcome);

const FIELDS: [(u64, i64); 12] = [
    (3, 5),
    (3, 2),
    (3, 3),
    (3, 6),
    (5, 2),
    (5, 3),
    (5, 10),
    (7, 3),
    (7, 7),
    (2, 2),
    (2, 3),
    (2, 5),
];

fn field(i: usize, precision: u32) -> ExtensionContext {
    let (p, mu) = FIELDS[i % FIELDS.len()];
    ExtensionContext::from_params(p, mu, precision).unwrap()
}

fn odd_field(i: usize, precision: u32) -> ExtensionContext {
    let (p, mu) = FIELDS[i % 9];
    ExtensionContext::from_params(p, mu, precision).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed < limit, || format!("{what} took {elapsed:?}, limit {limit:?}"))
}

fn digit_expansions() -> Outcome {
    let start = Instant::now();
    let cases: [(u64, i64, [u64; 5], [u64; 5]); 3] = [
        (3, 7, [1, 1, 1, 0, 2], [2, 1, 1, 2, 0]),
        (5, 29, [2, 0, 4, 3, 4], [3, 4, 0, 1, 0]),
        (7, 2, [3, 1, 2, 6, 1], [4, 5, 4, 0, 5]),
    ];
    for (p, n, a, b) in cases {
        let ctx = PadicContext::new(p, 5).map_err(|e| e.to_string())?;
        let x = ctx.from_i64(n);
        let roots: Vec<Vec<u64>> = [Branch::Principal, Branch::Other]
            .iter()
            .map(|&br| x.sqrt(br).map(|r| r.digits()).map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
        let mut got = roots.clone();
        got.sort();
        let mut want = vec![a.to_vec(), b.to_vec()];
        want.sort();
        ensure(got == want, || format!("sqrt({n}) in Q_{p}: {roots:?}"))?;
    }
    within(start.elapsed(), Duration::from_secs(1), "square roots")?;
    Ok("sqrt 7 in Q_3, sqrt 29 in Q_5, sqrt 2 in Q_7 match both listed expansions".into())
}

fn norm_two_constructions() -> Outcome {
    let mut checked = Vec::new();
    for precision in [5, 10, 20] {
        let z_values: Vec<(u64, i64, Build<QuadExt>)> = vec![
            (3, 5, Box::new(|k| k.embed(k.base().from_i64(7).sqrt(Branch::Principal).unwrap()) - k.sqrt_mu())),
            (3, 2, Box::new(|k| k.element(2, 1))),
            (5, 3, Box::new(|k| k.embed(k.base().from_i64(29).sqrt(Branch::Principal).unwrap()) + k.element(0, 3))),
            (7, 7, Box::new(|k| k.embed(k.base().from_i64(2).sqrt(Branch::Principal).unwrap()))),
        ];
        for (p, mu, build) in z_values {
            let k = ExtensionContext::from_params(p, mu, precision).map_err(|e| e.to_string())?;
            let z = build(&k);
            ensure(z * z.conj() == k.from_i64(2), || format!("z conj(z) != 2 in Q_{p}(sqrt {mu}) at N = {precision}"))?;
            ensure(z.ext_abs() == AbsValue::one(p), || format!("|z| != 1 in Q_{p}(sqrt {mu})"))?;
            checked.push((p, mu));
        }
    }
    Ok(format!("{} checks over (3,5), (3,2), (5,3), (7,7) at N = 5, 10, 20", checked.len()))
}

fn isotropy() -> Outcome {
    let start = Instant::now();
    let explicit: [(i64, Build<Vec<QuadExt>>); 3] = [
        (2, Box::new(|k| vec![k.element(1, 1), k.one()])),
        (3, Box::new(|k| vec![k.element(1, 1), k.one(), k.one()])),
        (5, Box::new(|k| vec![k.element(1, 1), k.from_i64(2)])),
    ];
    for (mu, coords) in explicit {
        let k = ExtensionContext::from_params(2, mu, 10).map_err(|e| e.to_string())?;
        let x = PVector::from_dense(k, &coords(&k)).map_err(|e| e.to_string())?;
        let g = x.inner(&x).map_err(|e| e.to_string())?;
        // integer inputs are known modulo 2^N, so the cancellation is exact to that precision
        let full = [g.sc(), g.ac()].iter().all(|c| c.is_zero() && c.absolute_precision().is_none_or(|a| a >= 10));
        ensure(full, || format!("<x, x> = {g} for Q_2(sqrt {mu})"))?;
    }
    let mut indices = Vec::new();
    for i in 0..FIELDS.len() {
        let k = field(i, 12);
        let (nu, w) = hilbert::isotropy_index(&k, hilbert::DEFAULT_ISOTROPY_BOUND).map_err(|e| format!("{k}: {e}"))?;
        ensure(nu == 2 || nu == 3, || format!("{k}: nu = {nu}"))?;
        ensure(!w.is_zero() && w.inner(&w).unwrap().is_zero(), || format!("{k}: witness is not isotropic"))?;
        ensure(w.support_size() == nu as usize, || format!("{k}: witness support {}", w.support_size()))?;
        indices.push(nu);
    }
    within(start.elapsed(), Duration::from_secs(10), "isotropy search")?;
    Ok(format!("explicit dyadic vectors isotropic; nu over 12 fields = {indices:?}"))
}

/// `<psi_m, A psi_n>` for the orthonormal basis `psi_n = U e_n`.
fn matrix_in_basis(a: &BlockOperator, u: &BlockOperator) -> BlockOperator {
    let psi: Vec<PVector> = (1..=u.dim()).map(|n| u.column(n)).collect();
    BlockOperator::from_fn(*a.context(), u.dim(), |m, n| psi[m - 1].inner(&a.apply(&psi[n - 1]).unwrap()).unwrap())
}

fn norm_triple_equality() -> Outcome {
    for case in 0..500u64 {
        let k = field(case as usize, 10);
        let mut s = Sampler::new(k, 1000 + case);
        let dim = 1 + (case % 8) as usize;
        let a = s.block(dim, -2, 3);
        let u = s.unitary(dim);
        let by_entries = a.operator_norm();
        let by_columns = a.max_column_norm();
        let in_other_basis = matrix_in_basis(&a, &u).operator_norm();
        ensure(by_entries == by_columns && by_columns == in_other_basis, || {
            format!("case {case} over {k}: {by_entries} / {by_columns} / {in_other_basis}")
        })?;
    }
    Ok("500 operators, dim 1..=8, N = 10: max |A_mn| = max ||A e_n|| = max |<psi_m, A psi_n>|".into())
}

fn trace_invariance() -> Outcome {
    // 2 is a norm only from some of the odd fields; the others have no rotation scalar
    let rotatable: Vec<(ExtensionContext, QuadExt)> =
        (0..9).map(|i| odd_field(i, 10)).filter_map(|k| norm_two_scalar(&k).map(|z| (k, z))).collect();
    ensure(rotatable.len() >= 5, || format!("only {} fields admit z conj(z) = 2", rotatable.len()))?;
    let mut rotations = 0;
    for case in 0..100u64 {
        let (k, z) = rotatable[case as usize % rotatable.len()];
        let mut s = Sampler::new(k, 2000 + case);
        let a = s.block(6, -1, 3);
        let r = BasisRotation::new(k, vec![(1, 2, z), (3, 5, z), (4, 6, z)]).map_err(|e| e.to_string())?;
        let u = r.to_block(6).map_err(|e| e.to_string())?;
        ensure(block_is_unitary(&u), || format!("case {case}: rotation is not unitary"))?;
        rotations += 1;
        let t_phi = a.trace();
        let t_psi = matrix_in_basis(&a, &u).trace();
        let t_conj = a.conjugate_by(&u).map_err(|e| e.to_string())?.trace();
        let mixed = s.unitary(6);
        let t_mixed = a.conjugate_by(&mixed).map_err(|e| e.to_string())?.trace();
        ensure(t_phi == t_psi && t_phi == t_conj && t_phi == t_mixed, || {
            format!("case {case} over {k}: {t_phi} / {t_psi} / {t_conj} / {t_mixed}")
        })?;
    }
    Ok(format!("100 random 6x6 operators over {} fields, {rotations} rotation bases: traces agree", rotatable.len()))
}

fn cyclic_and_bound() -> Outcome {
    for case in 0..500u64 {
        let k = field(case as usize, 10);
        let mut s = Sampler::new(k, 3000 + case);
        let b = s.block(1 + (case % 6) as usize, -2, 2);
        let t = s.block(1 + (case % 5) as usize, -2, 2);
        let (bt, tb) = verify_cyclic(&b, &t).map_err(|e| e.to_string())?;
        ensure(bt == tb, || format!("case {case}: tr(BT) = {bt}, tr(TB) = {tb}"))?;
        ensure(bt.ext_abs() <= b.operator_norm() * t.operator_norm(), || format!("case {case}: trace bound fails"))?;
    }
    Ok("500 pairs: tr(BT) = tr(TB) and |tr(BT)| <= ||B|| ||T||".into())
}

fn decompositions() -> Outcome {
    for case in 0..200u64 {
        let k = field(case as usize, 10);
        let mut s = Sampler::new(k, 4000 + case);
        let dim = 1 + (case % 6) as usize;
        let c = s.block(dim, -2, 3);
        let dec = CanonicalDecomposition::of(&c).map_err(|e| e.to_string())?;
        ensure(dec.reconstruct(k).unwrap() == c, || format!("case {case}: canonical reconstruction"))?;
        ensure(dec.max_coefficient(k.p()) == c.operator_norm(), || format!("case {case}: max |lambda| != ||C||"))?;
        let t = s.self_adjoint(dim, -2, 3);
        let sym = SymmetricDecomposition::of(&t).map_err(|e| e.to_string())?;
        ensure(sym.reconstruct(k).unwrap() == t, || format!("case {case}: symmetric reconstruction"))?;
        let (f, g) = factor_trace_class(&c).map_err(|e| e.to_string())?;
        ensure(f.compose(&g).unwrap() == c, || format!("case {case}: factorization does not recompose"))?;
    }
    Ok("200 instances: canonical and symmetric round trips, max |lambda_j| = ||C||, T = S T'".into())
}

fn hilbert_schmidt() -> Outcome {
    let dim = 4;
    for case in 0..200u64 {
        let k = field(case as usize, 10);
        let mut s = Sampler::new(k, 5000 + case);
        let (a, t) = (s.block(dim, -2, 2), s.block(dim, -2, 2));
        let st = a.hs_inner(&t).unwrap();
        ensure(st == t.hs_inner(&a).unwrap().conj(), || format!("case {case}: Hermitian symmetry"))?;
        ensure(st.ext_abs() <= a.operator_norm() * t.operator_norm(), || format!("case {case}: Cauchy-Schwarz"))?;
        for (j, l) in (1..=dim).flat_map(|j| (1..=dim).map(move |l| (j, l))) {
            let e = BlockOperator::matrix_unit(k, dim, j, l);
            ensure(e.hs_inner(&t).unwrap() == t.entry(j, l), || format!("case {case}: <E^{j}{l}, T> != T_{j}{l}"))?;
            if case == 0 {
                for (q, r) in (1..=dim).flat_map(|q| (1..=dim).map(move |r| (q, r))) {
                    let g = e.hs_inner(&BlockOperator::matrix_unit(k, dim, q, r)).unwrap();
                    let want = if (j, l) == (q, r) { k.one() } else { k.zero() };
                    ensure(g == want, || format!("<E^{j}{l}, E^{q}{r}> = {g}"))?;
                }
            }
        }
    }
    Ok("200 operators: symmetry, Cauchy-Schwarz, matrix units orthonormal, <E^jk, T> = T_jk".into())
}

fn unitary_characterization() -> Outcome {
    let u = dyadic_sqrt14_unitary(10).map_err(|e| e.to_string())?;
    ensure(block_is_unitary(&u), || "Q_2(sqrt 14) example is not unitary".into())?;
    let k = ExtensionContext::from_params(3, 5, 10).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let (a, sol) = ip_preserving_non_unitary(&k, 1, 0).map_err(|e| e.to_string())?;
    within(start.elapsed(), Duration::from_secs(5), "four-squares search")?;
    ensure(block_is_ip_preserving(&a), || "counterexample does not preserve inner products".into())?;
    ensure(a.operator_norm() == AbsValue::from_valuation(3, -1), || format!("||A|| = {}", a.operator_norm()))?;
    ensure(!block_is_unitary(&a), || "counterexample passes as unitary".into())?;
    Ok(format!("Q_2(sqrt 14) unitary; x = {:?} gives A* A = Id, ||A|| = 3, not unitary", sol.x))
}

fn state_layer() -> Outcome {
    let mut density_pairs = 0;
    for case in 0..100u64 {
        let k = field(case as usize, 12);
        let mut s = Sampler::new(k, 6000 + case);
        let dim = 1 + (case % 6) as usize;
        let contractive = case % 2 == 0;
        let sovm = if contractive { s.sovm(dim, 3, 0, 2) } else { s.sovm(dim, 3, -1, 2) };
        let st = if contractive { s.density(dim) } else { s.statistical(dim, -1, 2) };
        let r = pair(&sovm, &st).map_err(|e| format!("case {case}: {e}"))?;
        let total = r.distribution.weights().iter().fold(k.base().zero(), |acc, w| acc + *w);
        ensure(total == k.base().one(), || format!("case {case}: pairing sums to {total}"))?;
        if sovm.is_contractive() && st.is_density() {
            density_pairs += 1;
            ensure(r.in_simplex, || format!("case {case}: density + contractive pairing leaves Z_p"))?;
        }
    }
    for p in [2u64, 3, 5, 7] {
        let c = PadicContext::new(p, 10).map_err(|e| e.to_string())?;
        PadicDistribution::from_i64(c, &[1, 2, -1, -1]).map_err(|e| format!("{{1,2,-1,-1}} over Q_{p}: {e}"))?;
        let inv = c.p_power(-1);
        let d = PadicDistribution::new(vec![inv, c.one() - inv]).map_err(|e| e.to_string())?;
        ensure(d.sup_norm() == AbsValue::from_valuation(p, -1), || format!("sup norm {} over Q_{p}", d.sup_norm()))?;
        ensure(!d.is_in_simplex(), || "{p^-1, 1 - p^-1} reported inside the simplex".into())?;
    }
    Ok(format!("100 pairings sum to 1 ({density_pairs} density/contractive pairs in Z_p); {{1, 2, -1, -1}} and {{1/p, 1 - 1/p}} validate"))
}

fn classification_lattice() -> Outcome {
    let mut counts = [0usize; 2];
    for case in 0..1000u64 {
        let k = field(case as usize, 8);
        let mut s = Sampler::new(k, 7000 + case);
        let op: MatrixOperator = match case % 3 {
            0 => s.block(1 + (case % 4) as usize, -2, 2).into(),
            1 => s.self_adjoint(1 + (case % 4) as usize, -2, 2).into(),
            _ => s.generator().into(),
        };
        counts[usize::from(matches!(op, MatrixOperator::Generator(_)))] += 1;
        let c = op.classify();
        let tc = !c.trace_class.holds() || (c.compact.holds() && c.adjointable.holds());
        let sa = !c.self_adjoint.holds() || c.adjointable.holds();
        ensure(tc && sa, || format!("case {case}: {c:?}"))?;
    }
    Ok(format!("{} block and {} generator operators respect the lattice", counts[0], counts[1]))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("digit expansions of square roots", digit_expansions),
        ("z conj(z) = 2 constructions", norm_two_constructions),
        ("isotropic vectors and isotropy index", isotropy),
        ("operator norm triple equality", norm_triple_equality),
        ("trace basis independence and unitary invariance", trace_invariance),
        ("cyclic property and trace bound", cyclic_and_bound),
        ("canonical and symmetric decompositions", decompositions),
        ("Hilbert-Schmidt product axioms", hilbert_schmidt),
        ("unitary characterization", unitary_characterization),
        ("state layer pairings and distributions", state_layer),
        ("classification lattice", classification_lattice),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({ms} ms): {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL {:>2} {name} ({ms} ms): {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
