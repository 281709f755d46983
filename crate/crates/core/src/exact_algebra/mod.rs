//! Exact scalars, dense univariate polynomials, rational functions,
//! truncated power series and determinants over them.
//!
//! Everything is built on [`BigRational`]; no floating point appears anywhere.

mod det;
mod poly;
mod ratfun;
mod series;

pub use det::{det_poly, det_ratfun, det_rational};
pub use poly::Poly;
pub use ratfun::RatFun;
pub use series::{series_pow, Series};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The ground field.
pub type Rational = BigRational;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`; whitespace around the parts is ignored.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::DivisionByZero(format!("rational {s:?}")));
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(p))
        }
    }
}

/// Canonical serialization: `"p/q"` with `q > 0`, or `"p"` when `q = 1`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Returns the value as an `i64` if it is an integer that fits.
pub fn as_integer(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

/// Rising factorial `(u)_j = u (u+1) ... (u+j-1)`, with `(u)_0 = 1`.
pub fn pochhammer(u: &Rational, j: usize) -> Rational {
    let mut acc = Rational::one();
    let mut term = u.clone();
    for _ in 0..j {
        acc *= &term;
        term += Rational::one();
    }
    acc
}

/// Rising factorial for any integer index, using `(u)_{-k} = 1/((u-1)(u-2)...(u-k))`.
pub fn pochhammer_signed(u: &Rational, j: i64) -> Result<Rational> {
    if j >= 0 {
        return Ok(pochhammer(u, j as usize));
    }
    let k = (-j) as usize;
    let base = u - int(k as i64);
    let den = pochhammer(&base, k);
    if den.is_zero() {
        return Err(Error::DivisionByZero(format!("pochhammer({}, {j})", format_rational(u))));
    }
    Ok(den.recip())
}

pub fn factorial(n: usize) -> Rational {
    pochhammer(&Rational::one(), n)
}

/// Generalized binomial coefficient `binom(a, k) = (a-k+1)_k / k!`.
pub fn binomial(a: &Rational, k: usize) -> Rational {
    let start = a - int(k as i64) + Rational::one();
    pochhammer(&start, k) / factorial(k)
}

/// `(u - x)_j` as a polynomial in `x` of degree `j`.
pub fn shifted_factorial_s(u: &Rational, j: usize) -> Poly {
    Poly::linear(u.clone(), -Rational::one()).pochhammer(j)
}

/// Sign `(-1)^k` for any integer `k`.
pub fn sign(k: i64) -> Rational {
    if k.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// True when `r` is an integer no larger than `bound`.
pub fn is_integer_at_most(r: &Rational, bound: i64) -> bool {
    r.is_integer() && r.numer() <= &BigInt::from(bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&rat(7, 3), 0), int(1));
        assert_eq!(pochhammer(&int(2), 3), int(24));
        assert_eq!(Poly::x().pochhammer(2), Poly::from_ints(&[0, 1, 1]));
    }

    #[test]
    fn negative_pochhammer_inverts_positive() {
        let u = rat(5, 2);
        let prod = pochhammer_signed(&u, -3).unwrap() * pochhammer(&(&u - int(3)), 3);
        assert_eq!(prod, int(1));
        assert!(pochhammer_signed(&int(2), -2).is_err());
    }

    #[test]
    fn shifted_factorial_examples() {
        assert_eq!(shifted_factorial_s(&rat(4, 7), 0), Poly::one());
        assert_eq!(shifted_factorial_s(&int(3), 1), Poly::from_ints(&[3, -1]));
        // (N+1-x)(N+2-x) at N = 5
        let expect = Poly::from_ints(&[6, -1]) * Poly::from_ints(&[7, -1]);
        assert_eq!(shifted_factorial_s(&int(6), 2), expect);
        assert_eq!(shifted_factorial_s(&rat(1, 3), 4).degree(), Some(4));
    }

    #[test]
    fn rational_round_trip_format() {
        for s in ["0", "-3", "7/2", "-11/6"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(format_rational(&parse_rational("4/6").unwrap()), "2/3");
        assert_eq!(format_rational(&parse_rational("3/-4").unwrap()), "-3/4");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn generalized_binomial() {
        assert_eq!(binomial(&int(5), 2), int(10));
        assert_eq!(binomial(&rat(1, 2), 2), rat(-1, 8));
        assert_eq!(binomial(&int(2), 3), int(0));
    }

    proptest! {
        #[test]
        fn pochhammer_splits(p in -40i64..40, q in 1i64..9, j in 0usize..=6, k in 0usize..=6) {
            let u = rat(p, q);
            let lhs = pochhammer(&u, j + k);
            let rhs = pochhammer(&u, j) * pochhammer(&(&u + int(j as i64)), k);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
