//! The three lowering operators of the dual Hahn family, the sequences
//! `epsilon_n` defining them, the products `xi_{x,i}`, and the Hahn-type
//! polynomials `Z_j` that solve the associated dual recurrence.

mod recurrence;

pub use recurrence::{verify_z_recurrence, z_eigenvalue, z_poly, RecurrenceException, ZRecurrenceReport};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::classical_families::{dual_hahn_family, DualHahnParams};
use crate::error::{Error, Result};
use crate::exact_algebra::{format_rational, int, sign, Poly, RatFun, Rational};
use crate::lattice_ops::{DiffOp, LambdaPoly};

/// Which of the three sequences
/// `-1`, `(beta+N-n+1)/(alpha+n)`, `(N-n+1)/(alpha+n)` is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum EpsilonKind {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "3")]
    Three,
}

impl EpsilonKind {
    pub const ALL: [EpsilonKind; 3] = [EpsilonKind::One, EpsilonKind::Two, EpsilonKind::Three];

    pub fn from_index(k: u8) -> Result<Self> {
        match k {
            1 => Ok(EpsilonKind::One),
            2 => Ok(EpsilonKind::Two),
            3 => Ok(EpsilonKind::Three),
            _ => Err(Error::ParameterViolation(format!("kind must be 1, 2 or 3, got {k}"))),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            EpsilonKind::One => 1,
            EpsilonKind::Two => 2,
            EpsilonKind::Three => 3,
        }
    }

    /// `epsilon_x` as a rational function of `x`.
    pub fn as_ratfun(self, params: &DualHahnParams) -> RatFun {
        let one = Rational::one();
        let den = Poly::linear(params.alpha.clone(), one.clone());
        let num = match self {
            EpsilonKind::One => return RatFun::constant(-one),
            EpsilonKind::Two => Poly::linear(&params.beta + &params.n_param + &one, -one.clone()),
            EpsilonKind::Three => Poly::linear(&params.n_param + &one, -one.clone()),
        };
        RatFun::new(num, den).expect("nonzero denominator")
    }
}

pub fn epsilon(kind: EpsilonKind, n: &Rational, params: &DualHahnParams) -> Result<Rational> {
    kind.as_ratfun(params).eval(n)
}

/// A value of `xi_{x,i}`; negative `i` can produce a reciprocal of zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum XiValue {
    Finite(Rational),
    Infinity,
}

impl XiValue {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            XiValue::Finite(v) => Some(v),
            XiValue::Infinity => None,
        }
    }
}

/// `xi_{x,i} = prod_{j<i} epsilon_{x-j}` for `i >= 0` and `1/xi_{x-i,-i}` for `i < 0`.
pub fn xi(kind: EpsilonKind, x: &Rational, i: i64, params: &DualHahnParams) -> Result<XiValue> {
    if i >= 0 {
        let mut acc = Rational::one();
        for j in 0..i {
            acc *= epsilon(kind, &(x - int(j)), params)?;
        }
        return Ok(XiValue::Finite(acc));
    }
    match xi(kind, &(x - int(i)), -i, params)? {
        XiValue::Finite(v) if v.is_zero() => Ok(XiValue::Infinity),
        XiValue::Finite(v) => Ok(XiValue::Finite(v.recip())),
        XiValue::Infinity => unreachable!("nonnegative index gives a finite product"),
    }
}

/// `xi_{x,i}` as a rational function of `x`.
pub fn xi_ratfun(kind: EpsilonKind, i: i64, params: &DualHahnParams) -> Result<RatFun> {
    if kind == EpsilonKind::One {
        return Ok(RatFun::constant(sign(i)));
    }
    if i >= 0 {
        let eps = kind.as_ratfun(params);
        return Ok((0..i).fold(RatFun::one(), |acc, j| &acc * &eps.shift(&int(-j))));
    }
    xi_ratfun(kind, -i, params)?.shift(&int(-i)).recip()
}

/// The first-order operator `A(x) Delta + C(x) nabla` whose lowering action is
/// given by the chosen epsilon sequence.
pub fn d_operator(kind: EpsilonKind, params: &DualHahnParams) -> DiffOp {
    let (a, b, n) = (&params.alpha, &params.beta, &params.n_param);
    let one = Rational::one();
    let ab = a + b;
    let lin = |c: Rational| Poly::linear(c, one.clone());
    let n_minus_x = Poly::linear(n.clone(), -one.clone());
    let fwd_den = &Poly::linear(&ab + &one, int(2)) * &Poly::linear(&ab + int(2), int(2));
    let bwd_den = &Poly::linear(ab.clone(), int(2)) * &Poly::linear(&ab + &one, int(2));
    let (fwd_num, bwd_num) = match kind {
        EpsilonKind::One => (-(&lin(a + &one) * &lin(&ab + &one)), &Poly::x() * &lin(b.clone())),
        EpsilonKind::Two => (&lin(a + &one) * &n_minus_x, &lin(b.clone()) * &lin(&ab + n + &one)),
        EpsilonKind::Three => (&lin(&ab + &one) * &n_minus_x, &Poly::x() * &lin(&ab + n + &one)),
    };
    let fwd = RatFun::new(fwd_num, fwd_den).expect("nonzero polynomial");
    let bwd = RatFun::new(bwd_num, bwd_den).expect("nonzero polynomial");
    // A (s_1 - s_0) + C (s_0 - s_{-1})
    DiffOp::from_terms(&params.lattice(), [(1, fwd.clone()), (0, &bwd - &fwd), (-1, -bwd)])
}

/// `sum_{j=1}^n (-1)^{j+1} epsilon_n ... epsilon_{n-j+1} R_{n-j}`.
pub fn lowering_expansion(kind: EpsilonKind, n: usize, params: &DualHahnParams) -> Result<LambdaPoly> {
    let fam = dual_hahn_family(n, params)?;
    lowering_from_family(kind, n, params, &fam)
}

fn lowering_from_family(
    kind: EpsilonKind,
    n: usize,
    params: &DualHahnParams,
    fam: &[LambdaPoly],
) -> Result<LambdaPoly> {
    let mut acc = LambdaPoly::zero(&params.lattice());
    let mut prod = Rational::one();
    for j in 1..=n {
        prod *= epsilon(kind, &int((n + 1 - j) as i64), params)?;
        if prod.is_zero() {
            break;
        }
        acc = &acc + &fam[n - j].scale(&(sign(j as i64 + 1) * &prod));
    }
    Ok(acc)
}

/// Checks `D(R_n) = lowering_expansion(n)` for every `n <= n_max`.
pub fn verify_d_operator(kind: EpsilonKind, n_max: usize, params: &DualHahnParams) -> Result<bool> {
    let fam = dual_hahn_family(n_max, params)?;
    let op = d_operator(kind, params);
    for n in 0..=n_max {
        let lhs = op.apply(&fam[n]);
        let rhs = lowering_from_family(kind, n, params, &fam)?;
        if lhs != RatFun::from(rhs.x_view()) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn describe(kind: EpsilonKind, n: &Rational) -> String {
    format!("kind {} at n = {}", kind.index(), format_rational(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::rat;
    use proptest::prelude::*;

    fn params() -> DualHahnParams {
        DualHahnParams::new(rat(1, 2), rat(1, 3), int(5))
    }

    #[test]
    fn epsilon_values() {
        let p = params();
        assert_eq!(epsilon(EpsilonKind::One, &int(17), &p).unwrap(), int(-1));
        assert!(epsilon(EpsilonKind::Three, &int(6), &p).unwrap().is_zero());
        assert_eq!(epsilon(EpsilonKind::Two, &int(0), &p).unwrap(), rat(38, 3));
        let bad = DualHahnParams::new(int(-2), rat(1, 3), int(5));
        assert!(epsilon(EpsilonKind::Two, &int(2), &bad).is_err());
    }

    #[test]
    fn xi_values() {
        let p = params();
        let x = rat(7, 3);
        for kind in EpsilonKind::ALL {
            assert_eq!(xi(kind, &x, 0, &p).unwrap(), XiValue::Finite(Rational::one()));
        }
        assert_eq!(xi(EpsilonKind::One, &x, 3, &p).unwrap(), XiValue::Finite(int(-1)));
        // xi_{x,i} = 1 / xi_{x-i,-i}, and epsilon_6 = 0 for the third kind
        assert_eq!(xi(EpsilonKind::Three, &int(5), -1, &p).unwrap(), XiValue::Infinity);
        for n in -6..=0 {
            let v = xi(EpsilonKind::Three, &int(-1), -n - 1, &p).unwrap();
            assert!(v.finite().is_some(), "n = {n}");
        }
        // closed form (N-x+1)_i / (alpha+x-i+1)_i for the third kind
        let closed = crate::exact_algebra::pochhammer(&(int(6) - &x), 3)
            / crate::exact_algebra::pochhammer(&(rat(1, 2) + &x - int(2)), 3);
        assert_eq!(xi(EpsilonKind::Three, &x, 3, &p).unwrap(), XiValue::Finite(closed));
    }

    #[test]
    fn xi_ratfun_matches_pointwise() {
        let p = params();
        for kind in EpsilonKind::ALL {
            for i in -3..=3 {
                let f = xi_ratfun(kind, i, &p).unwrap();
                let x = rat(11, 7);
                assert_eq!(XiValue::Finite(f.eval(&x).unwrap()), xi(kind, &x, i, &p).unwrap());
            }
        }
    }

    #[test]
    fn operators_lower_and_live_in_algebra() {
        let p = params();
        for kind in EpsilonKind::ALL {
            let op = d_operator(kind, &p);
            assert!(op.is_in_lambda_algebra(12), "kind {kind:?}");
            assert!(verify_d_operator(kind, 8, &p).unwrap(), "kind {kind:?}");
            let r0 = dual_hahn_family(0, &p).unwrap();
            assert!(op.apply(&r0[0]).is_zero());
        }
        let fwd = d_operator(EpsilonKind::Three, &p).coeff(1);
        let (a, b, n) = (rat(1, 2), rat(1, 3), int(5));
        let x = rat(3, 11);
        let expect =
            (&x + &a + &b + int(1)) * (&n - &x) / ((int(2) * &x + &a + &b + int(1)) * (int(2) * &x + &a + &b + int(2)));
        assert_eq!(fwd.eval(&x).unwrap(), expect);
    }

    #[test]
    fn lowering_examples() {
        let p = params();
        assert!(lowering_expansion(EpsilonKind::Two, 0, &p).unwrap().is_zero());
        let fam_lower = dual_hahn_family(4, &p.with_n(int(4))).unwrap();
        let k1 = lowering_expansion(EpsilonKind::One, 5, &p).unwrap();
        assert_eq!(k1.coeffs(), &-fam_lower[4].coeffs().clone());
        let fam = dual_hahn_family(2, &p).unwrap();
        let e2 = epsilon(EpsilonKind::Three, &int(2), &p).unwrap();
        let e1 = epsilon(EpsilonKind::Three, &int(1), &p).unwrap();
        let expect = &fam[1].scale(&e2) - &fam[0].scale(&(&e2 * &e1));
        assert_eq!(lowering_expansion(EpsilonKind::Three, 2, &p).unwrap(), expect);
    }

    proptest! {
        #[test]
        fn xi_multiplicative(i in 0i64..=4, k in 0i64..=4, xn in -40i64..40, xd in 1i64..9) {
            let p = params();
            let x = rat(2 * xn + 1, 2 * xd + 1) + rat(1, 97);
            for kind in EpsilonKind::ALL {
                let lhs = xi(kind, &x, i + k, &p).unwrap();
                let a = xi(kind, &x, i, &p).unwrap();
                let b = xi(kind, &(&x - int(i)), k, &p).unwrap();
                prop_assert_eq!(lhs, XiValue::Finite(a.finite().unwrap() * b.finite().unwrap()));
            }
        }
    }
}
