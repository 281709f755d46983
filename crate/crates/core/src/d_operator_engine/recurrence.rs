use num_traits::{One, Zero};
use serde::Serialize;

use super::{describe, epsilon, EpsilonKind};
use crate::classical_families::{hahn, ttrr_coeffs, DualHahnParams};
use crate::error::Result;
use crate::exact_algebra::{format_rational, int, Poly, Rational};

/// `Z_j(x) = h_j^{a,b,M}(-x-1)` with the Hahn parameters tied to the kind:
/// `(b+N+1, a+N+1, -2-N)`, `(-a, -b, -2-N)` or `(-a, b, -b-2-N)`.
pub fn z_poly(kind: EpsilonKind, j: usize, params: &DualHahnParams) -> Result<Poly> {
    let (a, b, n) = (&params.alpha, &params.beta, &params.n_param);
    let one = Rational::one();
    let m = -(n + int(2));
    let h = match kind {
        EpsilonKind::One => hahn(j, &(b + n + &one), &(a + n + &one), &m)?,
        EpsilonKind::Two => hahn(j, &-a, &-b, &m)?,
        EpsilonKind::Three => hahn(j, &-a, b, &(&m - b))?,
    };
    Ok(h.substitute_linear(&-&one, &-&one))
}

/// The eigenvalue attached to `Z_j`: `-lambda(j+N+1)`, `-lambda(-j-1)` or `-lambda(j-alpha)`.
pub fn z_eigenvalue(kind: EpsilonKind, j: usize, params: &DualHahnParams) -> Rational {
    let lat = params.lattice();
    let jr = int(j as i64);
    let at = match kind {
        EpsilonKind::One => &jr + &params.n_param + Rational::one(),
        EpsilonKind::Two => -&jr - Rational::one(),
        EpsilonKind::Three => &jr - &params.alpha,
    };
    -lat.lambda_eval(&at)
}

/// A point where `epsilon_n = 0`: there `c_n` must vanish too, and `d` is the
/// value standing in for `c_n / epsilon_n`. `d` is `None` when `Z(n-1) = 0`
/// and the identity holds without that term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecurrenceException {
    pub n: i64,
    #[serde(serialize_with = "ser_opt")]
    pub d: Option<Rational>,
}

fn ser_opt<S: serde::Serializer>(v: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_str(&format_rational(r)),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZRecurrenceReport {
    pub holds: bool,
    pub exceptions: Vec<RecurrenceException>,
    pub counterexample: Option<String>,
}

/// Checks
/// `eps_{n+1} a_{n+1} Z(n+1) - b_n Z(n) + (c_n/eps_n) Z(n-1) = lambda_h(j) Z(n)`
/// for every `n` in the inclusive range.
pub fn verify_z_recurrence(
    kind: EpsilonKind,
    j: usize,
    n_range: (i64, i64),
    params: &DualHahnParams,
) -> Result<ZRecurrenceReport> {
    let z = z_poly(kind, j, params)?;
    let eig = z_eigenvalue(kind, j, params);
    let mut report = ZRecurrenceReport { holds: true, exceptions: Vec::new(), counterexample: None };
    for n in n_range.0..=n_range.1 {
        let nr = int(n);
        let (_, bn, cn) = ttrr_coeffs(&nr, params);
        let (an1, _, _) = ttrr_coeffs(&(&nr + int(1)), params);
        let z_next = z.eval(&(&nr + int(1)));
        let z_here = z.eval(&nr);
        let z_prev = z.eval(&(&nr - int(1)));
        let known = epsilon(kind, &(&nr + int(1)), params)? * an1 * &z_next - &bn * &z_here;
        let target = &eig * &z_here;
        let eps_n = epsilon(kind, &nr, params)?;
        if eps_n.is_zero() {
            if !cn.is_zero() {
                report.holds = false;
                report.counterexample =
                    Some(format!("{}: epsilon vanishes but c_n = {}", describe(kind, &nr), format_rational(&cn)));
                return Ok(report);
            }
            let rest = &target - &known;
            let d = if z_prev.is_zero() {
                if !rest.is_zero() {
                    report.holds = false;
                    report.counterexample = Some(format!("{}: no replacement value exists", describe(kind, &nr)));
                    return Ok(report);
                }
                None
            } else {
                Some(rest / &z_prev)
            };
            report.exceptions.push(RecurrenceException { n, d });
            continue;
        }
        let lhs = known + cn / eps_n * z_prev;
        if lhs != target {
            report.holds = false;
            report.counterexample = Some(format!(
                "{}: left side {} but right side {}",
                describe(kind, &nr),
                format_rational(&lhs),
                format_rational(&target)
            ));
            return Ok(report);
        }
    }
    Ok(report)
}
