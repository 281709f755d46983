use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::Serialize;

use super::{format_rational, Poly, Rational};
use crate::error::{Error, Result};

/// Rational function `num / den` in lowest terms with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero("rational function denominator".into()));
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFun::zero();
        }
        let g = Poly::gcd(&num, &den);
        let (mut num, mut den) =
            if g.degree() == Some(0) { (num, den) } else { (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap()) };
        let lc = den.leading().unwrap().clone();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFun { num, den }
    }

    pub fn zero() -> Self {
        RatFun { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFun::from(Poly::one())
    }

    pub fn constant(c: Rational) -> Self {
        RatFun::from(Poly::constant(c))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The numerator when the denominator is `1`.
    pub fn as_poly(&self) -> Option<&Poly> {
        (self.den.degree() == Some(0)).then_some(&self.num)
    }

    pub fn into_poly(self) -> Result<Poly> {
        if self.den.degree() == Some(0) {
            Ok(self.num)
        } else {
            Err(Error::NotPolynomial(self.to_string()))
        }
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::DivisionByZero(format!("rational function pole at x = {}", format_rational(x))));
        }
        Ok(self.num.eval(x) / d)
    }

    /// `self(x + c)`. Shifting preserves coprimality and monicity.
    pub fn shift(&self, c: &Rational) -> RatFun {
        RatFun { num: self.num.shift(c), den: self.den.shift(c) }
    }

    /// `self(a x + b)`.
    pub fn substitute_linear(&self, a: &Rational, b: &Rational) -> RatFun {
        Self::normalized(self.num.substitute_linear(a, b), self.den.substitute_linear(a, b))
    }

    pub fn scale(&self, c: &Rational) -> RatFun {
        if c.is_zero() {
            return RatFun::zero();
        }
        RatFun { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &Poly) -> RatFun {
        Self::normalized(&self.num * p, self.den.clone())
    }

    pub fn recip(&self) -> Result<RatFun> {
        RatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFun) -> Result<RatFun> {
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, k: usize) -> RatFun {
        RatFun { num: self.num.pow(k), den: self.den.pow(k) }
    }
}

impl From<Poly> for RatFun {
    fn from(p: Poly) -> Self {
        RatFun { num: p, den: Poly::one() }
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFun::normalized(&self.num + &rhs.num, self.den.clone());
        }
        let g = Poly::gcd(&self.den, &rhs.den);
        let lhs_cof = rhs.den.exact_div(&g).unwrap();
        let rhs_cof = self.den.exact_div(&g).unwrap();
        let num = &(&self.num * &lhs_cof) + &(&rhs.num * &rhs_cof);
        RatFun::normalized(num, &self.den * &lhs_cof)
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        // cross-cancel first so the products stay small
        let g1 = Poly::gcd(&self.num, &rhs.den);
        let g2 = Poly::gcd(&rhs.num, &self.den);
        let a = self.num.exact_div(&g1).unwrap();
        let d = rhs.den.exact_div(&g1).unwrap();
        let c = rhs.num.exact_div(&g2).unwrap();
        let b = self.den.exact_div(&g2).unwrap();
        RatFun::normalized(&a * &c, &b * &d)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for RatFun {
            type Output = RatFun;
            fn $m(self, rhs: RatFun) -> RatFun { (&self).$m(&rhs) }
        }
        impl $tr<&RatFun> for RatFun {
            type Output = RatFun;
            fn $m(self, rhs: &RatFun) -> RatFun { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}
