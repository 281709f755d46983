//! The acceptance suite: one PASS or FAIL line per criterion, nonzero exit if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use krall::classical_families::{
    dual_hahn_family, dual_hahn_measure, dual_hahn_norm, gamma_op, verify_hahn_2nd_order, verify_identity_fwd_shift,
    verify_identity_genfun, verify_identity_sum, DualHahnParams,
};
use krall::cli_reporter::{eight_couples, EightCouplesConfig};
use krall::d_operator_engine::{d_operator, verify_d_operator, verify_z_recurrence, EpsilonKind};
use krall::exact_algebra::{format_rational, int, rat, Poly, RatFun, Rational};
use krall::krall_builder::{
    build_higher_op, build_m, build_s, christoffel_measure, corollary_instance, eigen_mismatch, geronimus_mismatch,
    krall_q_family, lemma_degree, lemma_leading_coefficient, lemma_p_poly, lemma_p_ratio, lemma_q_matrix,
    omega_nonzero_sweep, omega_ratfun, predicted_order, target_measure, verify_moment_identities, verify_orthogonality,
    FiniteSet, KrallInstance, MomentOutcome,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn classical_params() -> [DualHahnParams; 3] {
    [
        DualHahnParams::new(rat(1, 2), rat(1, 3), int(5)),
        DualHahnParams::new(rat(7, 5), rat(2, 7), int(6)),
        DualHahnParams::new(rat(5, 3), rat(-1, 4), int(8)),
    ]
}

fn show(p: &DualHahnParams) -> String {
    format!(
        "(alpha, beta, N) = ({}, {}, {})",
        format_rational(&p.alpha),
        format_rational(&p.beta),
        format_rational(&p.n_param)
    )
}

fn classical_layer() -> Outcome {
    for p in classical_params() {
        let n = p.integer_n().expect("integer N");
        let rho = ok(dual_hahn_measure(&p))?;
        let fam = ok(dual_hahn_family(8.max(n), &p))?;
        for i in 0..=n {
            for j in 0..=i {
                let v = rho.pair_product(&fam[i], &fam[j]);
                let want = if i == j { ok(dual_hahn_norm(i, &p))? } else { Rational::from_integer(0.into()) };
                ensure(v == want, || format!("{}: <rho, R_{i} R_{j}> = {}", show(&p), format_rational(&v)))?;
            }
        }
        let gamma = gamma_op(&p);
        for (k, r) in fam.iter().enumerate().take(9) {
            let lhs = gamma.apply(r);
            ensure(lhs == RatFun::from(r.x_view().scale(&int(k as i64))), || {
                format!("{}: Gamma R_{k} != {k} R_{k}", show(&p))
            })?;
        }
    }
    Ok("orthogonality and norms for n, m <= N and Gamma R_n = n R_n for n <= 8 on 3 parameter sets".into())
}

fn structural_identities() -> Outcome {
    for p in classical_params() {
        for n in 0..=6 {
            ensure(ok(verify_identity_sum(n, &p))?, || format!("{}: sum identity fails at n = {n}", show(&p)))?;
            ensure(ok(verify_identity_fwd_shift(n, &p))?, || format!("{}: shift identity fails at n = {n}", show(&p)))?;
        }
        for n in 0..=5 {
            let hold = ok(verify_hahn_2nd_order(n, &p.alpha, &p.beta, &p.n_param))?;
            ensure(hold, || format!("{}: Hahn equation fails at n = {n}", show(&p)))?;
        }
    }
    let half = DualHahnParams::new(rat(1, 2), rat(1, 3), rat(7, 2));
    for x in 0..=3 {
        ensure(ok(verify_identity_genfun(x, &half, 8))?, || format!("generating function fails at x = {x}"))?;
    }
    Ok("sum and shift identities for n <= 6, generating function to order 8 at N = 7/2, Hahn equation for n <= 5"
        .into())
}

fn lowering_operators() -> Outcome {
    for p in classical_params() {
        for kind in EpsilonKind::ALL {
            ensure(ok(verify_d_operator(kind, 8, &p))?, || format!("{}: kind {} fails", show(&p), kind.index()))?;
            ensure(d_operator(kind, &p).is_in_lambda_algebra(12), || {
                format!("{}: kind {} leaves the lambda algebra", show(&p), kind.index())
            })?;
        }
    }
    Ok("all three kinds lower R_n for n <= 8 and lie in the lambda algebra to degree 12, 3 parameter sets".into())
}

fn z_recurrences() -> Outcome {
    let mut exceptions = 0;
    for p in classical_params() {
        let n = p.integer_n().expect("integer N") as i64;
        for kind in EpsilonKind::ALL {
            for j in 0..=4 {
                let rep = ok(verify_z_recurrence(kind, j, (-5, n + 3), &p))?;
                ensure(rep.holds, || format!("{}: kind {} j = {j}: {:?}", show(&p), kind.index(), rep.counterexample))?;
                let at: Vec<i64> = rep.exceptions.iter().map(|e| e.n).collect();
                let want: Vec<i64> = if kind == EpsilonKind::Three { vec![n + 1] } else { vec![] };
                ensure(at == want, || format!("{}: kind {} j = {j}: exceptions at {at:?}", show(&p), kind.index()))?;
                exceptions += at.len();
            }
        }
    }
    Ok(format!("recurrence holds for every kind, j <= 4, n in [-5, N+3]; {exceptions} exception points, all at n = N+1 for kind 3"))
}

/// Cofactor expansion along the first row.
fn laplace(matrix: &[Vec<Poly>]) -> Poly {
    if matrix.is_empty() {
        return Poly::one();
    }
    let mut acc = Poly::zero();
    for c in 0..matrix.len() {
        let sub: Vec<Vec<Poly>> = matrix[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != c).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = &matrix[0][c] * &laplace(&sub);
        acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// One trio for each block shape `(m1, m2, m3)` with `m1 + m2 + m3 <= 3`.
fn block_shapes() -> Vec<[FiniteSet; 3]> {
    // with h = 1 both |J_1({m})| and |I({m})| equal m
    let single = |m: usize| if m == 0 { FiniteSet::empty() } else { FiniteSet::from_slice(&[m as i64]) };
    let mut out = Vec::new();
    for m1 in 0..=3 {
        for m2 in 0..=3 - m1 {
            for m3 in 0..=3 - m1 - m2 {
                out.push([single(m1), single(m2), single(m3)]);
            }
        }
    }
    out
}

fn lemma_objects() -> Outcome {
    let shapes = block_shapes();
    let mut seen = Vec::new();
    for (a, b) in [(rat(1, 2), rat(1, 3)), (rat(2, 5), rat(-3, 7))] {
        for f in &shapes {
            let k = ok(KrallInstance::new(a.clone(), b.clone(), 6, f.clone(), 1, 1))?;
            ok(k.check_admissible())?;
            seen.push(k.block_sizes());
            let ys = ok(k.y_polys())?;
            let p = ok(lemma_p_ratio(&k, &ys))?;
            let so = (&build_s(&k) * &ok(omega_ratfun(&k))?).into_poly();
            ensure(so.as_ref() == Ok(&p), || format!("{:?}: S Omega is not P", k.block_sizes()))?;
            ensure(laplace(&lemma_q_matrix(&k, &ys)) == &p * &lemma_p_poly(&k), || {
                format!("{:?}: cofactor oracle disagrees", k.block_sizes())
            })?;
            ensure(p.degree().map(|d| d as i64) == Some(lemma_degree(&k)), || {
                format!("{:?}: degree {:?} against {}", k.block_sizes(), p.degree(), lemma_degree(&k))
            })?;
            ensure(p.leading() == Some(&lemma_leading_coefficient(&k, &ys)), || {
                format!("{:?}: leading coefficient differs", k.block_sizes())
            })?;
            let r = lemma_degree(&k) + 1;
            for (h, (mh, row)) in ok(build_m(&k))?.iter().zip(k.rows()).enumerate() {
                let deg = mh.degree().map_or(-1, |d| d as i64);
                ensure(deg <= r - row.g, || format!("{:?}: deg M_{} = {deg} > {}", k.block_sizes(), h + 1, r - row.g))?;
            }
        }
    }
    seen.sort();
    seen.dedup();
    ensure(seen.len() == 20, || format!("only {} block shapes covered", seen.len()))?;
    Ok("20 block shapes x 2 parameter sets: degree, leading coefficient and cofactor oracle agree; deg M_h <= r - g_h"
        .into())
}

fn end_to_end() -> Outcome {
    let one = || FiniteSet::from_slice(&[1]);
    let none = FiniteSet::empty;
    let trios = [
        ("F1 only", [one(), none(), none()]),
        ("F2 only", [none(), one(), none()]),
        ("F3 only", [none(), none(), one()]),
        ("mixed", [one(), one(), one()]),
    ];
    let mut orders = Vec::new();
    for (label, f) in trios {
        let k = ok(KrallInstance::new(rat(1, 2), rat(1, 3), 6, f, 1, 1))?;
        ensure(k.m() <= 3, || format!("{label}: m = {}", k.m()))?;
        ok(k.check_admissible())?;
        ensure(ok(omega_nonzero_sweep(&k))?.is_none(), || format!("{label}: Omega vanishes in the sweep"))?;
        let [m1, m2, _] = k.block_sizes();
        let q = ok(krall_q_family(&k, k.n as usize + m1 + m2))?;
        let rep = verify_orthogonality(&q, &ok(target_measure(&k))?);
        ensure(rep.holds, || format!("{label}: {:?}", rep.witness))?;
        let op = ok(build_higher_op(&k))?;
        let bad = eigen_mismatch(&op, &q[..7]);
        ensure(bad.is_none(), || format!("{label}: eigen-equation fails at n = {bad:?}"))?;
        let r = predicted_order(&k);
        let w = ok(op.operator.order_window())?;
        ensure(w == (-r, r), || format!("{label}: window {w:?} against r = {r}"))?;
        orders.push(format!("{label} r={r}"));
    }
    Ok(format!("sweep, orthogonality, eigen-equation (n <= 6) and window at N = 6: {}", orders.join(", ")))
}

fn corollary_and_geronimus() -> Outcome {
    let p = DualHahnParams::new(rat(1, 2), rat(1, 3), int(9));
    let trios = [
        [FiniteSet::from_slice(&[1]), FiniteSet::from_slice(&[2]), FiniteSet::empty()],
        [FiniteSet::from_slice(&[1, 3]), FiniteSet::empty(), FiniteSet::from_slice(&[2])],
    ];
    for f in &trios {
        let tilde = ok(corollary_instance(&p, f))?;
        let lhs = ok(christoffel_measure(&p, f))?;
        let rhs = ok(target_measure(&tilde))?.translate(&int(f[1].max() + 1));
        ensure(lhs == rhs, || format!("correspondence fails for {f:?}"))?;
    }
    let g = DualHahnParams::new(rat(1, 2), rat(1, 3), int(7));
    let bad = ok(geronimus_mismatch(&g))?;
    ensure(bad.is_none(), || format!("Geronimus identity: {bad:?}"))?;
    Ok("Christoffel measure equals the shifted target of the corollary instance on 2 trios; Geronimus identity holds atomwise at N = 7".into())
}

fn eight_couples_example() -> Outcome {
    let report = ok(eight_couples(&EightCouplesConfig::default(), false))?;
    let details = report.details.clone().unwrap_or_default();
    let failing: Vec<String> = report
        .checks
        .iter()
        .filter(|c| c.status != krall::cli_reporter::Status::Pass)
        .map(|c| format!("{}: {}", c.name, c.witness.clone().unwrap_or_default()))
        .collect();
    ensure(failing.is_empty(), || failing.join("; "))?;
    let printed_r = &details["printed_minimizer"]["r"];
    ensure(printed_r == 37, || format!("printed minimizer has r = {printed_r}"))?;
    let evidence = details["printed_minimizer"]["vanishing_mismatches"].as_array().cloned().unwrap_or_default();
    let points: Vec<String> = evidence.iter().map(|e| e["x"].as_str().unwrap_or("?").to_string()).collect();
    let best = &details["minimizer"];
    Ok(format!(
        "8 couples at N = 100, equal to the printed list with f1+f2 = N (printed pairs sum to {}); \
         minimizer F1={} F2={} r={} at N = 100; printed list and minimizer F1={{1,5}} F2={{31}} r={} reproduced verbatim at N = {}; \
         printed minimizer at N = 100 disagrees with the target in vanishing at x = {}",
        details["pair_sum"]["printed"],
        best["F1"],
        best["F2"],
        best["r"],
        printed_r,
        details["verbatim_search"]["N"],
        points.join(", ")
    ))
}

fn moment_identities() -> Outcome {
    let instances = [
        [FiniteSet::from_slice(&[1]), FiniteSet::empty(), FiniteSet::empty()],
        [FiniteSet::from_slice(&[1]), FiniteSet::from_slice(&[1]), FiniteSet::from_slice(&[1])],
    ];
    let mut constants = Vec::new();
    for f in instances {
        let k = ok(KrallInstance::new(rat(1, 2), rat(1, 3), 5, f, 1, 1))?;
        let rep = ok(verify_moment_identities(&k))?;
        ensure(rep.outcome == MomentOutcome::Holds, || format!("{:?}: {:?} {:?}", k.f, rep.outcome, rep.witness))?;
        constants.push(rep.constant);
    }
    Ok(format!(
        "all three identities hold exactly with c = {} and c = {}; no sign discrepancy",
        constants[0], constants[1]
    ))
}

fn set_layer() -> Outcome {
    let mut runner = TestRunner::new_with_rng(
        Config { cases: 50, failure_persistence: None, ..Config::default() },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    );
    let strategy =
        prop::collection::btree_set(1i64..60, 1..10).prop_map(|s| FiniteSet::new(s.into_iter().collect()).unwrap());
    ok(runner.run(&strategy, |f| {
        let k = f.len() as i64;
        prop_assert_eq!(f.involution_i().involution_i(), f.clone());
        prop_assert_eq!(f.involution_i().len() as i64, f.max() - k + 1);
        for h in 1..=3 {
            prop_assert_eq!(f.transform_j(h).len() as i64, f.max() + h - k);
        }
        Ok(())
    }))?;
    for k in 2..=9 {
        let all = FiniteSet::new((1..=k).collect()).unwrap();
        ensure(all.involution_i() == FiniteSet::from_slice(&[k]), || {
            format!("I({{1..{k}}}) = {}", all.involution_i())
        })?;
        let ends = FiniteSet::from_slice(&[1, k]).involution_i();
        let want = FiniteSet::new((1..=k - 2).chain([k]).collect()).unwrap();
        ensure(ends == want, || format!("I({{1,{k}}}) = {ends}"))?;
    }
    Ok("I is an involution and the cardinality identities hold on 50 random sets (h = 1, 2, 3); both I examples reproduced for k = 2..9".into())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("classical layer", classical_layer),
        ("structural identities", structural_identities),
        ("lowering operators", lowering_operators),
        ("dual recurrence of the Z polynomials", z_recurrences),
        ("lemma polynomials", lemma_objects),
        ("end-to-end bispectrality", end_to_end),
        ("corollary correspondence and Geronimus identity", corollary_and_geronimus),
        ("eight couples example", eight_couples_example),
        ("moment identities", moment_identities),
        ("set layer", set_layer),
    ];
    let mut failures = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(summary) => println!("PASS {:>2} {title} ({secs:.1} s): {summary}", i + 1),
            Err(reason) => {
                failures += 1;
                println!("FAIL {:>2} {title} ({secs:.1} s): {reason}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
