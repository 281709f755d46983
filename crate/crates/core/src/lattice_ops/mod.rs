//! The quadratic lattice `lambda(x) = x(x+alpha+beta+1)`, polynomials in
//! `lambda`, and shift-difference operators acting on them.

mod diffop;

pub use diffop::DiffOp;

use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact_algebra::{int, Poly, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    pub alpha: Rational,
    pub beta: Rational,
}

impl Lattice {
    pub fn new(alpha: Rational, beta: Rational) -> Self {
        Lattice { alpha, beta }
    }

    /// `alpha + beta + 1`, the linear coefficient of `lambda(x)`.
    pub fn s(&self) -> Rational {
        &self.alpha + &self.beta + Rational::one()
    }

    /// `lambda(x)` expanded in `x`.
    pub fn lambda_poly(&self) -> Poly {
        Poly::new(vec![Rational::zero(), self.s(), Rational::one()])
    }

    pub fn lambda_eval(&self, x: &Rational) -> Rational {
        x * (x + self.s())
    }

    /// `f(-(x+alpha+beta+1))`.
    pub fn involution(&self, f: &Poly) -> Poly {
        f.substitute_linear(&-Rational::one(), &-self.s())
    }

    /// `mu_j(lambda(x)) = (-1)^j (-x)_j (x+alpha+beta+1)_j`.
    fn mu_x(&self, j: usize) -> Poly {
        let a = Poly::linear(Rational::zero(), -Rational::one()).pochhammer(j);
        let b = Poly::linear(self.s(), Rational::one()).pochhammer(j);
        (&a * &b).scale(&crate::exact_algebra::sign(j as i64))
    }

    /// `mu_j(lambda) = prod_{i<j} (lambda - lambda(i))`.
    fn mu_lambda(&self, j: usize) -> Poly {
        (0..j).fold(Poly::one(), |acc, i| {
            let root = self.lambda_eval(&int(i as i64));
            &acc * &Poly::linear(-root, Rational::one())
        })
    }

    /// Recovers `q` with `q(lambda(x)) = f(x)`.
    ///
    /// Eliminates leading coefficients against the monic `mu_j(lambda(x))`, then converts the `mu` coordinates back to
    /// the power basis in `lambda`.
    pub fn to_lambda_poly(&self, f: &Poly) -> Result<LambdaPoly> {
        if &self.involution(f) != f {
            return Err(Error::NotInLambdaRing);
        }
        let mut rest = f.clone();
        let mut q = Poly::zero();
        while let Some(deg) = rest.degree() {
            if deg % 2 == 1 {
                return Err(Error::NotInLambdaRing);
            }
            let j = deg / 2;
            let mu = self.mu_x(j);
            let c = rest.leading().unwrap() / mu.leading().unwrap();
            rest = &rest - &mu.scale(&c);
            q = &q + &self.mu_lambda(j).scale(&c);
        }
        Ok(LambdaPoly::new(self.clone(), q))
    }
}

/// A polynomial in `lambda` tied to its lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaPoly {
    lattice: Lattice,
    coeffs: Poly,
}

impl LambdaPoly {
    pub fn new(lattice: Lattice, coeffs: Poly) -> Self {
        LambdaPoly { lattice, coeffs }
    }

    pub fn zero(lattice: &Lattice) -> Self {
        LambdaPoly::new(lattice.clone(), Poly::zero())
    }

    /// `lambda^k`.
    pub fn lambda_power(lattice: &Lattice, k: usize) -> Self {
        LambdaPoly::new(lattice.clone(), Poly::monomial(Rational::one(), k))
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// Coefficients in the variable `lambda`.
    pub fn coeffs(&self) -> &Poly {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.degree()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    /// The polynomial in `x` obtained by substituting `lambda(x)`.
    pub fn x_view(&self) -> Poly {
        self.coeffs.compose(&self.lattice.lambda_poly())
    }

    /// Value at `lambda(x)` for a lattice point `x`.
    pub fn eval_at_x(&self, x: &Rational) -> Rational {
        self.coeffs.eval(&self.lattice.lambda_eval(x))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        LambdaPoly::new(self.lattice.clone(), self.coeffs.scale(c))
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.lattice, other.lattice, "mixing polynomials from different lattices");
    }
}

impl Serialize for LambdaPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl Add for &LambdaPoly {
    type Output = LambdaPoly;
    fn add(self, rhs: &LambdaPoly) -> LambdaPoly {
        self.check(rhs);
        LambdaPoly::new(self.lattice.clone(), &self.coeffs + &rhs.coeffs)
    }
}

impl Sub for &LambdaPoly {
    type Output = LambdaPoly;
    fn sub(self, rhs: &LambdaPoly) -> LambdaPoly {
        self.check(rhs);
        LambdaPoly::new(self.lattice.clone(), &self.coeffs - &rhs.coeffs)
    }
}

impl Mul for &LambdaPoly {
    type Output = LambdaPoly;
    fn mul(self, rhs: &LambdaPoly) -> LambdaPoly {
        self.check(rhs);
        LambdaPoly::new(self.lattice.clone(), &self.coeffs * &rhs.coeffs)
    }
}
