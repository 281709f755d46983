//! JSON front end: polynomial evaluation, instance construction, verification
//! reports and the worked examples, each paired with a process exit code.

mod examples;

pub use examples::{d_operator_display, eight_couples, geronimus, EightCouplesConfig};

use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::classical_families::{dual_hahn, hahn, DualHahnParams};
use crate::error::{Error, Result};
use crate::exact_algebra::{format_rational, Poly, Rational};
use crate::krall_builder::{
    build_higher_op, build_m, build_s, eigen_mismatch, krall_q_family, lemma_degree, lemma_leading_coefficient,
    lemma_p_ratio, omega_nonzero_sweep, omega_ratfun, predicted_order, target_measure, verify_moment_identities,
    verify_orthogonality, KrallInstance, MomentOutcome, MomentReport,
};
use crate::lattice_ops::LambdaPoly;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_PARAMETER: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;

/// A JSON document for standard output and the exit code that goes with it.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub json: Value,
    pub exit: i32,
}

impl Outcome {
    /// Pretty JSON with a trailing newline; key order is fixed, so equal inputs give equal bytes.
    pub fn render(&self) -> String {
        let mut text = serde_json::to_string_pretty(&self.json).expect("JSON values always serialize");
        text.push('\n');
        text
    }
}

/// The machine-readable error object and its exit code: 3 for a vanishing Casorati
/// determinant, 2 for everything else.
pub fn error_outcome(e: &Error) -> Outcome {
    let (kind, exit) = match e {
        Error::DegenerateCasorati { .. } => ("DegenerateCasorati", EXIT_DEGENERATE),
        Error::ParameterViolation(_) => ("ParameterViolation", EXIT_PARAMETER),
        Error::Parse(_) => ("Parse", EXIT_PARAMETER),
        Error::DivisionByZero(_) => ("DivisionByZero", EXIT_PARAMETER),
        Error::NotInLambdaRing => ("NotInLambdaRing", EXIT_PARAMETER),
        Error::EmptyOperator => ("EmptyOperator", EXIT_PARAMETER),
        Error::NonExactDivision => ("NonExactDivision", EXIT_PARAMETER),
        Error::NotPolynomial(_) => ("NotPolynomial", EXIT_PARAMETER),
    };
    let mut obj = json!({ "kind": kind, "message": e.to_string() });
    if let Error::DegenerateCasorati { n } = e {
        obj["n"] = json!(n);
    }
    Outcome { json: json!({ "error": obj }), exit }
}

fn admissibility_outcome(inst: &KrallInstance) -> Option<Outcome> {
    let violations = inst.admissibility();
    (!violations.is_empty()).then(|| Outcome {
        json: json!({ "error": {
            "kind": "AdmissibilityViolation",
            "message": "the instance violates the parameter conditions",
            "violations": violations,
        }}),
        exit: EXIT_PARAMETER,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One verification; a failed check always carries a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    /// The property being checked, stated in words.
    pub property: String,
    pub status: Status,
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u128>,
}

impl Check {
    pub fn new(name: &str, property: &str, status: Status, witness: Option<String>) -> Self {
        let witness = match (status, witness) {
            (Status::Fail, None) => Some("no witness recorded".to_string()),
            (_, w) => w,
        };
        Check { name: name.into(), property: property.into(), status, witness, millis: None }
    }
}

/// The subject being verified, its checks in a fixed order, and optional extra data.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub subject: Value,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn to_outcome(&self) -> Outcome {
        let exit = if self.failed() { EXIT_FAIL } else { EXIT_PASS };
        Outcome { json: serde_json::to_value(self).expect("reports serialize"), exit }
    }
}

/// Runs checks in order, optionally recording wall-clock time per check.
pub(crate) struct Runner {
    timing: bool,
    checks: Vec<Check>,
}

impl Runner {
    pub(crate) fn new(timing: bool) -> Self {
        Runner { timing, checks: Vec::new() }
    }

    /// Runs `f`, which returns `None` when the property holds and a witness otherwise;
    /// an error becomes a failure whose witness is the error message.
    pub(crate) fn run(&mut self, name: &str, property: &str, f: impl FnOnce() -> Result<Option<String>>) {
        let start = Instant::now();
        let status = f();
        let mut check = match status {
            Ok(None) => Check::new(name, property, Status::Pass, None),
            Ok(Some(w)) => Check::new(name, property, Status::Fail, Some(w)),
            Err(e) => Check::new(name, property, Status::Fail, Some(format!("error: {e}"))),
        };
        if self.timing {
            check.millis = Some(start.elapsed().as_millis());
        }
        self.checks.push(check);
    }

    pub(crate) fn skip(&mut self, name: &str, property: &str, reason: &str) {
        self.checks.push(Check::new(name, property, Status::Skipped, Some(reason.into())));
    }

    pub(crate) fn finish(self) -> Vec<Check> {
        self.checks
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    DualHahn,
    Hahn,
}

/// Coefficients of `R_n` in powers of `lambda` (dual Hahn) or of `h_n` in powers of `x`
/// (Hahn, with `a = alpha`, `b = beta`, `M = N`); with `x` given, the value at `x` instead.
pub fn eval(
    family: Family,
    n: usize,
    alpha: Rational,
    beta: Rational,
    n_param: Rational,
    x: Option<Rational>,
) -> Outcome {
    let result = match family {
        Family::DualHahn => dual_hahn(n, &DualHahnParams::new(alpha, beta, n_param)).map(|p| match &x {
            Some(x) => json!(format_rational(&p.eval_at_x(x))),
            None => json!(p),
        }),
        Family::Hahn => hahn(n, &alpha, &beta, &n_param).map(|p| match &x {
            Some(x) => json!(format_rational(&p.eval(x))),
            None => json!(p),
        }),
    };
    match result {
        Ok(json) => Outcome { json, exit: EXIT_PASS },
        Err(e) => error_outcome(&e),
    }
}

fn last_q_index(inst: &KrallInstance) -> usize {
    let [m1, m2, _] = inst.block_sizes();
    inst.n as usize + m1 + m2
}

/// Every constructed object of an admissible instance: `q_0, ..., q_{N+m1+m2}` in powers of
/// `lambda`, the operator with `P_S`, `P`, `S`, `M_h`, `Y_h`, and the target measure.
pub fn construct(inst: &KrallInstance) -> Outcome {
    if let Some(out) = admissibility_outcome(inst) {
        return out;
    }
    let build = || -> Result<Value> {
        if let Some(n) = omega_nonzero_sweep(inst)? {
            return Err(Error::DegenerateCasorati { n });
        }
        let q = krall_q_family(inst, last_q_index(inst))?;
        let op = build_higher_op(inst)?;
        let window = op.operator.order_window()?;
        Ok(json!({
            "instance": inst,
            "order": predicted_order(inst),
            "window": [window.0, window.1],
            "q": q,
            "operator": op,
            "measure": target_measure(inst)?,
        }))
    };
    match build() {
        Ok(json) => Outcome { json, exit: EXIT_PASS },
        Err(e) => error_outcome(&e),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Full,
    /// Caps every polynomial index at 4.
    Fast,
}

const CHECK_NAMES: [(&str, &str); 9] = [
    ("admissibility", "the parameters satisfy every condition of the construction"),
    ("casorati-nonvanishing", "Omega(n) != 0 for 0 <= n <= N+m1+m2+1"),
    ("q-degrees", "q_n has degree n in lambda"),
    ("orthogonality", "the q_n are orthogonal with nonzero norms against the target measure"),
    ("lemma-polynomial", "S Omega is a polynomial P with the predicted degree and leading coefficient"),
    ("m-degrees", "every M_h is a polynomial with deg M_h <= r - g_h"),
    ("eigen-equation", "D q_n = P_S(n) q_n for n <= 6"),
    ("order-window", "the operator window is (-r, r) with r from the order formula"),
    ("moment-identities", "the three moment identities hold with the normalizing constant c"),
];

fn property(name: &str) -> &'static str {
    CHECK_NAMES.iter().find(|(n, _)| *n == name).map(|(_, p)| *p).expect("known check")
}

/// The verification suite scoped to one instance. Inadmissible instances report every
/// check as skipped and exit 2; a vanishing Casorati determinant exits 3.
pub fn verify(inst: &KrallInstance, suite: Suite, timing: bool) -> Outcome {
    let subject = serde_json::to_value(inst).expect("instances serialize");
    let violations = inst.admissibility();
    if !violations.is_empty() {
        let reason: Vec<String> = violations.iter().map(|v| format!("{} ({})", v.condition, v.witness)).collect();
        let reason = format!("inadmissible: {}", reason.join("; "));
        let checks = CHECK_NAMES.iter().map(|(n, p)| Check::new(n, p, Status::Skipped, Some(reason.clone()))).collect();
        let report = Report { subject, checks, details: None };
        return Outcome { json: serde_json::to_value(&report).expect("reports serialize"), exit: EXIT_PARAMETER };
    }
    let cap = match suite {
        Suite::Full => usize::MAX,
        Suite::Fast => 4,
    };
    let top = last_q_index(inst).min(cap);
    let mut run = Runner::new(timing);
    let named = |name: &'static str| (name, property(name));
    let (name, prop) = named("admissibility");
    run.run(name, prop, || Ok(None));

    let sweep = omega_nonzero_sweep(inst);
    let degenerate = matches!(sweep, Ok(Some(_)));
    let (name, prop) = named("casorati-nonvanishing");
    run.run(name, prop, || Ok(sweep?.map(|n| format!("Omega vanishes at n = {n}"))));

    let q: Option<Result<Vec<LambdaPoly>>> = (!degenerate).then(|| krall_q_family(inst, top));
    for name in ["q-degrees", "orthogonality"] {
        let (name, prop) = named(name);
        match &q {
            None => run.skip(name, prop, "the Casorati determinant vanishes"),
            Some(Err(e)) => run.run(name, prop, || Err(e.clone())),
            Some(Ok(q)) if name == "q-degrees" => run.run(name, prop, || {
                Ok(q.iter()
                    .enumerate()
                    .find(|(n, p)| p.degree() != Some(*n))
                    .map(|(n, p)| format!("q_{n} has degree {:?}", p.degree())))
            }),
            Some(Ok(q)) => run.run(name, prop, || Ok(verify_orthogonality(q, &target_measure(inst)?).witness)),
        }
    }

    let (name, prop) = named("lemma-polynomial");
    run.run(name, prop, || {
        let ys = inst.y_polys()?;
        let p = lemma_p_ratio(inst, &ys)?;
        let so = (&build_s(inst) * &omega_ratfun(inst)?).into_poly();
        let d = lemma_degree(inst);
        let lead = lemma_leading_coefficient(inst, &ys);
        if so.as_ref().ok() != Some(&p) {
            return Ok(Some("S Omega differs from det(Q)/p".into()));
        }
        let holds = degree(&p) == d && p.leading() == Some(&lead);
        Ok((!holds).then(|| {
            format!(
                "P has degree {} and leading coefficient {} against {d} and {}",
                degree(&p),
                p.leading().map(format_rational).unwrap_or_default(),
                format_rational(&lead)
            )
        }))
    });
    let r = predicted_order(inst);
    let (name, prop) = named("m-degrees");
    run.run(name, prop, || {
        let ms = build_m(inst)?;
        let bad = ms.iter().zip(inst.rows()).enumerate().find(|(_, (mh, row))| degree(mh) > r - row.g);
        Ok(bad.map(|(h, (mh, row))| format!("M_{} has degree {} above r - g = {}", h + 1, degree(mh), r - row.g)))
    });

    let op = build_higher_op(inst);
    let (name, prop) = named("eigen-equation");
    match (&q, &op) {
        (Some(Ok(q)), Ok(op)) => {
            let upto = q.len().min(7);
            run.run(name, prop, || Ok(eigen_mismatch(op, &q[..upto]).map(|n| format!("fails at n = {n}"))));
        }
        (_, Err(e)) => run.run(name, prop, || Err(e.clone())),
        _ => run.skip(name, prop, "the polynomials q_n are not defined"),
    }
    let (name, prop) = named("order-window");
    run.run(name, prop, || {
        let w = op.clone()?.operator.order_window()?;
        let holds = w == (-r, r) && r == lemma_degree(inst) + 1;
        Ok((!holds).then(|| format!("window ({}, {}) against r = {r}", w.0, w.1)))
    });
    let (name, prop) = named("moment-identities");
    if inst.m() == 0 {
        run.skip(name, prop, "the empty trio has no moment identities");
    } else if degenerate {
        run.skip(name, prop, "the Casorati determinant vanishes");
    } else {
        run.run(name, prop, || {
            let rep = verify_moment_identities(inst)?;
            Ok((rep.outcome != MomentOutcome::Holds).then(|| moment_witness(&rep)))
        });
    }

    let report = Report { subject, checks: run.finish(), details: None };
    let mut out = report.to_outcome();
    if degenerate {
        out.exit = EXIT_DEGENERATE;
    }
    out
}

fn moment_witness(rep: &MomentReport) -> String {
    let kind = match rep.outcome {
        MomentOutcome::GlobalSignFlip => "global sign flip: the identities hold with -c",
        _ => "the identities fail",
    };
    format!("{kind} (c = {}): {}", rep.constant, rep.witness.clone().unwrap_or_default())
}

fn degree(p: &Poly) -> i64 {
    p.degree().map_or(-1, |d| d as i64)
}
