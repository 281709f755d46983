use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::FiniteSet;
use crate::classical_families::DualHahnParams;
use crate::d_operator_engine::{z_eigenvalue, EpsilonKind};
use crate::error::{Error, Result};
use crate::exact_algebra::{as_integer, format_rational, int, parse_rational, Rational};
use crate::lattice_ops::Lattice;

/// One row of the Casorati data: the epsilon kind of its block and its degree `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Row {
    pub kind: EpsilonKind,
    pub g: i64,
}

/// Parameters `alpha, beta, N`, the trio `F1, F2, F3` and the shifts `h1, h3`,
/// together with the derived trio `U1 = J_{h1}(F1)`, `U2 = I(F2)`, `U3 = J_{h3}(F3)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KrallInstance {
    pub alpha: Rational,
    pub beta: Rational,
    pub n: i64,
    pub f: [FiniteSet; 3],
    pub h1: i64,
    pub h3: i64,
    u: [FiniteSet; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: String,
    pub witness: String,
}

impl KrallInstance {
    pub fn new(alpha: Rational, beta: Rational, n: i64, f: [FiniteSet; 3], h1: i64, h3: i64) -> Result<Self> {
        if n < 1 {
            return Err(Error::ParameterViolation(format!("N must be a positive integer, got {n}")));
        }
        if h1 < 1 || h3 < 1 {
            return Err(Error::ParameterViolation(format!("h1 and h3 must be at least 1, got {h1} and {h3}")));
        }
        if let Some(bad) = f.iter().find(|s| !s.is_positive()) {
            return Err(Error::ParameterViolation(format!("the sets F must hold positive integers, got {bad}")));
        }
        let u = [f[0].transform_j(h1), f[1].involution_i(), f[2].transform_j(h3)];
        Ok(KrallInstance { alpha, beta, n, f, h1, h3, u })
    }

    pub fn u(&self) -> &[FiniteSet; 3] {
        &self.u
    }

    /// `(m1, m2, m3)`.
    pub fn block_sizes(&self) -> [usize; 3] {
        [self.u[0].len(), self.u[1].len(), self.u[2].len()]
    }

    pub fn m(&self) -> usize {
        self.block_sizes().iter().sum()
    }

    /// `max F_i`, or `-1` when `F_i` is empty.
    pub fn fmax(&self, i: usize) -> i64 {
        self.f[i].max()
    }

    pub fn params(&self) -> DualHahnParams {
        DualHahnParams::new(self.alpha.clone(), self.beta.clone(), int(self.n))
    }

    pub fn lattice(&self) -> Lattice {
        Lattice::new(self.alpha.clone(), self.beta.clone())
    }

    /// The rows in block order: `U1` with the first kind, `U2` with the second, `U3` with the third.
    pub fn rows(&self) -> Vec<Row> {
        let kinds = EpsilonKind::ALL;
        self.u.iter().zip(kinds).flat_map(|(set, kind)| set.elems().iter().map(move |&g| Row { kind, g })).collect()
    }

    /// `g~_i`: `-lambda(u+N+1)`, `-lambda(-u-1)` or `-lambda(u-alpha)` per block.
    pub fn g_tilde(&self) -> Vec<Rational> {
        let p = self.params();
        self.rows().iter().map(|r| z_eigenvalue(r.kind, r.g as usize, &p)).collect()
    }

    /// Parameters `(alpha~, beta~, N~)` of the dual Hahn weight inside the target measure.
    pub fn tilde_params(&self) -> DualHahnParams {
        let (f1, f2, f3) = (self.fmax(0), self.fmax(1), self.fmax(2));
        let alpha = &self.alpha - int(f2 + f3 + self.h3 + 1);
        let beta = &self.beta - int(f2) + int(f3 + self.h3 - 1);
        let n = int(self.n + f1 + f2 + self.h1 + 1);
        DualHahnParams::new(alpha, beta, n)
    }

    /// Lists every violated parameter condition; empty when the instance is admissible.
    pub fn admissibility(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let (f2, f3) = (self.fmax(1), self.fmax(2));
        let ab = &self.alpha + &self.beta;
        let mut at_most = |name: &str, v: &Rational, bound: i64| {
            if crate::exact_algebra::is_integer_at_most(v, bound) {
                out.push(Violation {
                    condition: format!("{name} must not be an integer <= {bound}"),
                    witness: format!("{name} = {}", format_rational(v)),
                });
            }
        };
        at_most("alpha", &self.alpha, f2 + f3 + self.h3);
        at_most("beta", &self.beta, f2);
        at_most("alpha+beta", &ab, 2 * f2 + 1);
        let natural = |v: &Rational| as_integer(v).is_some_and(|k| k >= 0);
        if !self.f[1].is_empty() && natural(&(&ab - Rational::one())) {
            out.push(Violation {
                condition: "alpha+beta-1 must not be a nonnegative integer when F2 is nonempty".into(),
                witness: format!("alpha+beta-1 = {}", format_rational(&(&ab - Rational::one()))),
            });
        }
        let amb = &self.alpha - &self.beta - Rational::one();
        if !self.f[2].is_empty() && natural(&amb) {
            out.push(Violation {
                condition: "alpha-beta-1 must not be a nonnegative integer when F3 is nonempty".into(),
                witness: format!("alpha-beta-1 = {}", format_rational(&amb)),
            });
        }
        out.extend(self.simple_root_violations());
        out
    }

    fn simple_root_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let (a, b, n) = (&self.alpha, &self.beta, int(self.n));
        let one = Rational::one();
        let mut check = |expr: &str, v: Rational, u: String| {
            if v.is_zero() {
                out.push(Violation { condition: format!("{expr} must not vanish"), witness: u });
            }
        };
        for &u in self.u[0].elems() {
            for &v in self.u[1].elems() {
                let w = format!("u = {u}, v = {v}");
                check("alpha+beta+N+1+u-v", a + b + &n + &one + int(u - v), w.clone());
                check("N+2+u+v", &n + int(2 + u + v), w);
            }
            for &w in self.u[2].elems() {
                let wit = format!("u = {u}, w = {w}");
                check("alpha+N+1+u-w", a + &n + &one + int(u - w), wit.clone());
                check("N+beta+2+u+w", &n + b + int(2 + u + w), wit);
            }
        }
        for &v in self.u[1].elems() {
            for &w in self.u[2].elems() {
                let wit = format!("v = {v}, w = {w}");
                check("beta-v+w", b + int(w - v), wit.clone());
                check("alpha-1-v-w", a - int(1 + v + w), wit);
            }
        }
        let gt = self.g_tilde();
        for i in 0..gt.len() {
            for k in i + 1..gt.len() {
                if gt[i] == gt[k] {
                    out.push(Violation {
                        condition: "the eigenvalues g~ must be pairwise distinct".into(),
                        witness: format!("rows {} and {} share {}", i + 1, k + 1, format_rational(&gt[i])),
                    });
                }
            }
        }
        out
    }

    pub fn check_admissible(&self) -> Result<()> {
        let v = self.admissibility();
        if v.is_empty() {
            Ok(())
        } else {
            let text: Vec<String> = v.iter().map(|v| format!("{} ({})", v.condition, v.witness)).collect();
            Err(Error::ParameterViolation(text.join("; ")))
        }
    }
}

/// A rational given either as a JSON integer or as a `"p/q"` string.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum RationalField {
    Int(i64),
    Text(String),
}

impl RationalField {
    fn value(&self) -> Result<Rational> {
        match self {
            RationalField::Int(k) => Ok(int(*k)),
            RationalField::Text(s) => parse_rational(s),
        }
    }
}

fn one_shift() -> i64 {
    1
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    alpha: RationalField,
    beta: RationalField,
    #[serde(rename = "N")]
    n: i64,
    #[serde(rename = "F1", default)]
    f1: FiniteSet,
    #[serde(rename = "F2", default)]
    f2: FiniteSet,
    #[serde(rename = "F3", default)]
    f3: FiniteSet,
    #[serde(default = "one_shift")]
    h1: i64,
    #[serde(default = "one_shift")]
    h3: i64,
}

#[derive(Serialize)]
struct InstanceEcho<'a> {
    alpha: String,
    beta: String,
    #[serde(rename = "N")]
    n: i64,
    #[serde(rename = "F1")]
    f1: &'a FiniteSet,
    #[serde(rename = "F2")]
    f2: &'a FiniteSet,
    #[serde(rename = "F3")]
    f3: &'a FiniteSet,
    h1: i64,
    h3: i64,
    #[serde(rename = "U1")]
    u1: &'a FiniteSet,
    #[serde(rename = "U2")]
    u2: &'a FiniteSet,
    #[serde(rename = "U3")]
    u3: &'a FiniteSet,
}

impl KrallInstance {
    /// Parses `{alpha, beta, N, F1, F2, F3, h1, h3}`; the sets default to empty
    /// and the shifts to 1.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: InstanceDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        KrallInstance::new(doc.alpha.value()?, doc.beta.value()?, doc.n, [doc.f1, doc.f2, doc.f3], doc.h1, doc.h3)
    }
}

impl Serialize for KrallInstance {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        InstanceEcho {
            alpha: format_rational(&self.alpha),
            beta: format_rational(&self.beta),
            n: self.n,
            f1: &self.f[0],
            f2: &self.f[1],
            f3: &self.f[2],
            h1: self.h1,
            h3: self.h3,
            u1: &self.u[0],
            u2: &self.u[1],
            u3: &self.u[2],
        }
        .serialize(serializer)
    }
}
