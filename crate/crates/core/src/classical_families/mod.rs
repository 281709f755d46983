//! Dual Hahn polynomials on the quadratic lattice, their weight, norms,
//! recurrence and second-order operator, plus the Hahn polynomials in `x`.

mod hahn;
mod identities;
mod measure;

pub use hahn::{hahn, verify_hahn_2nd_order};
pub use identities::{verify_identity_fwd_shift, verify_identity_genfun, verify_identity_sum};
pub use measure::{Atom, DiscreteMeasure};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_algebra::{as_integer, factorial, format_rational, int, pochhammer, sign, Poly, RatFun, Rational};
use crate::lattice_ops::{DiffOp, LambdaPoly, Lattice};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualHahnParams {
    pub alpha: Rational,
    pub beta: Rational,
    pub n_param: Rational,
}

impl DualHahnParams {
    pub fn new(alpha: Rational, beta: Rational, n_param: Rational) -> Self {
        DualHahnParams { alpha, beta, n_param }
    }

    pub fn lattice(&self) -> Lattice {
        Lattice::new(self.alpha.clone(), self.beta.clone())
    }

    /// Same `alpha, beta` with `N` replaced.
    pub fn with_n(&self, n_param: Rational) -> Self {
        DualHahnParams::new(self.alpha.clone(), self.beta.clone(), n_param)
    }

    /// `N` as a nonnegative integer, if it is one.
    pub fn integer_n(&self) -> Option<usize> {
        as_integer(&self.n_param).and_then(|n| usize::try_from(n).ok())
    }

    /// Checks the conditions under which the weight on `{0, ..., N}` exists
    /// and returns `N`.
    pub fn check_measure_mode(&self) -> Result<usize> {
        let n = self.integer_n().ok_or_else(|| {
            Error::ParameterViolation(format!("N = {} is not a nonnegative integer", format_rational(&self.n_param)))
        })?;
        let n_i = n as i64;
        let in_range = |v: &Rational, lo: i64| as_integer(v).is_some_and(|k| (lo..=-1).contains(&k));
        if in_range(&self.alpha, -n_i) {
            return Err(Error::ParameterViolation(format!(
                "alpha = {} lies in {{-1, ..., -N}}",
                format_rational(&self.alpha)
            )));
        }
        if in_range(&self.beta, -n_i) {
            return Err(Error::ParameterViolation(format!(
                "beta = {} lies in {{-1, ..., -N}}",
                format_rational(&self.beta)
            )));
        }
        let ab = &self.alpha + &self.beta;
        if in_range(&ab, -2 * n_i - 1) {
            return Err(Error::ParameterViolation(format!(
                "alpha + beta = {} lies in {{-1, ..., -2N-1}}",
                format_rational(&ab)
            )));
        }
        Ok(n)
    }
}

/// `R_0, ..., R_{n_max}` as polynomials in `lambda`.
///
/// `R_n(lambda) = (1/n!) sum_j (-1)^j (-n)_j (-N+j)_{n-j} / ((alpha+1)_j j!) mu_j(lambda)`
/// with `mu_j(lambda) = prod_{i<j} (lambda - i(alpha+beta+1+i))`.
pub fn dual_hahn_family(n_max: usize, params: &DualHahnParams) -> Result<Vec<LambdaPoly>> {
    let alpha1 = &params.alpha + Rational::one();
    if pochhammer(&alpha1, n_max).is_zero() {
        return Err(Error::ParameterViolation(format!(
            "(alpha+1)_{n_max} vanishes for alpha = {}",
            format_rational(&params.alpha)
        )));
    }
    let lat = params.lattice();
    let s = lat.s();
    let mut mu = vec![Poly::one()];
    for i in 0..n_max {
        let ii = int(i as i64);
        let root = &ii * (&s + &ii);
        let next = &mu[i] * &Poly::linear(-root, Rational::one());
        mu.push(next);
    }
    let minus_n = -&params.n_param;
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let neg_n = int(-(n as i64));
        let mut acc = Poly::zero();
        for (j, mu_j) in mu.iter().enumerate().take(n + 1) {
            let c = sign(j as i64) * pochhammer(&neg_n, j) * pochhammer(&(&minus_n + int(j as i64)), n - j)
                / (pochhammer(&alpha1, j) * factorial(j));
            if !c.is_zero() {
                acc = &acc + &mu_j.scale(&c);
            }
        }
        out.push(LambdaPoly::new(lat.clone(), acc.scale(&factorial(n).recip())));
    }
    Ok(out)
}

pub fn dual_hahn(n: usize, params: &DualHahnParams) -> Result<LambdaPoly> {
    Ok(dual_hahn_family(n, params)?.pop().unwrap())
}

/// Whether `R_n(lambda(i))` vanishes.
pub fn dual_hahn_roots_property(params: &DualHahnParams, n: usize, i: i64) -> Result<bool> {
    Ok(dual_hahn(n, params)?.eval_at_x(&int(i)).is_zero())
}

/// The second-order operator `Gamma = B s_1 - (B+D) s_0 + D s_{-1}` with
/// `Gamma(R_n) = n R_n`.
pub fn gamma_op(params: &DualHahnParams) -> DiffOp {
    let (a, b, n) = (&params.alpha, &params.beta, &params.n_param);
    let one = Rational::one();
    let ab = a + b;
    let lin = |c: Rational| Poly::linear(c, one.clone());
    let two_x = |c: Rational| Poly::linear(c, int(2));
    let b_num = &(&lin(a + &one) * &lin(&ab + &one)) * &Poly::linear(n.clone(), -one.clone());
    let b_den = &two_x(&ab + &one) * &two_x(&ab + int(2));
    let b_coef = RatFun::new(-b_num, b_den).expect("nonzero polynomial");
    let d_num = &(&Poly::x() * &lin(&ab + &one + n)) * &lin(b.clone());
    let d_den = &two_x(ab.clone()) * &two_x(&ab + &one);
    let d_coef = RatFun::new(-d_num, d_den).expect("nonzero polynomial");
    let mid = -(&b_coef + &d_coef);
    DiffOp::from_terms(&params.lattice(), [(1, b_coef), (0, mid), (-1, d_coef)])
}

/// Coefficients `(a_n, b_n, c_n)` of
/// `lambda R_n = a_{n+1} R_{n+1} + b_n R_n + c_n R_{n-1}`.
pub fn ttrr_coeffs(n: &Rational, params: &DualHahnParams) -> (Rational, Rational, Rational) {
    let (a, b, big_n) = (&params.alpha, &params.beta, &params.n_param);
    let one = Rational::one();
    let an = n * (n + a);
    let bn = -((n + a + &one) * (n - big_n)) - n * (n - b - big_n - &one);
    let cn = (n - b - big_n - &one) * (n - big_n - &one);
    (an, bn, cn)
}

/// Mass of the dual Hahn weight at the integer `x`:
/// `(2x+a+b+1)(a+1)_x(-N)_x N! / ((-1)^x (x+a+b+1)_{N+1} (b+1)_x x!)`.
pub fn dual_hahn_weight(x: i64, params: &DualHahnParams) -> Result<Rational> {
    let n = params
        .integer_n()
        .ok_or_else(|| Error::ParameterViolation("the weight needs a nonnegative integer N".into()))?;
    if x < 0 {
        return Ok(Rational::zero());
    }
    let xu = x as usize;
    let xr = int(x);
    let (a, b) = (&params.alpha, &params.beta);
    let one = Rational::one();
    let num =
        (int(2) * &xr + a + b + &one) * pochhammer(&(a + &one), xu) * pochhammer(&-&params.n_param, xu) * factorial(n);
    let den = sign(x) * pochhammer(&(&xr + a + b + &one), n + 1) * pochhammer(&(b + &one), xu) * factorial(xu);
    if den.is_zero() {
        return Err(Error::ParameterViolation(format!("dual Hahn weight has a pole at x = {x}")));
    }
    Ok(num / den)
}

/// `w(0), ..., w(upto)` for the dual Hahn weight, built by updating the factors of
/// [`dual_hahn_weight`] from one point to the next.
pub fn dual_hahn_weights(upto: i64, params: &DualHahnParams) -> Result<Vec<Rational>> {
    let n = params
        .integer_n()
        .ok_or_else(|| Error::ParameterViolation("the weight needs a nonnegative integer N".into()))?;
    let (a, b) = (&params.alpha, &params.beta);
    let one = Rational::one();
    let s = a + b + &one;
    let mut top = factorial(n);
    let mut bottom = Rational::one();
    let mut block = pochhammer(&s, n + 1);
    let mut out = Vec::new();
    for x in 0..=upto {
        let xr = int(x);
        if x > 0 {
            let prev = &xr - &one;
            top *= (a + &one + &prev) * (&prev - &params.n_param);
            bottom *= -(b + &one + &prev) * &xr;
            let old = &prev + &s;
            block = if old.is_zero() {
                pochhammer(&(&xr + &s), n + 1)
            } else {
                block * (&prev + &s + int(n as i64 + 1)) / old
            };
        }
        let den = &bottom * &block;
        if den.is_zero() {
            return Err(Error::ParameterViolation(format!("dual Hahn weight has a pole at x = {x}")));
        }
        out.push((int(2) * &xr + &s) * &top / den);
    }
    Ok(out)
}

/// The dual Hahn weight on `{0, ..., N}`.
pub fn dual_hahn_measure(params: &DualHahnParams) -> Result<DiscreteMeasure> {
    let n = params.check_measure_mode()?;
    let atoms = dual_hahn_weights(n as i64, params)?
        .into_iter()
        .enumerate()
        .map(|(x, w)| Atom::new(int(x as i64), w))
        .collect();
    Ok(DiscreteMeasure::new(atoms))
}

/// `<rho, R_n^2> = (-N)_n^2 / (n!^2 binom(a+n, n) binom(b+N-n, N-n))`, zero past `N`.
pub fn dual_hahn_norm(n: usize, params: &DualHahnParams) -> Result<Rational> {
    let big_n =
        params.integer_n().ok_or_else(|| Error::ParameterViolation("the norm needs a nonnegative integer N".into()))?;
    if n > big_n {
        return Ok(Rational::zero());
    }
    let nr = int(n as i64);
    let minus_n = -&params.n_param;
    let num = pochhammer(&minus_n, n).pow(2);
    let den = factorial(n).pow(2)
        * crate::exact_algebra::binomial(&(&params.alpha + &nr), n)
        * crate::exact_algebra::binomial(&(&params.beta + &params.n_param - &nr), big_n - n);
    if den.is_zero() {
        return Err(Error::ParameterViolation(format!("norm formula degenerates at n = {n}")));
    }
    Ok(num / den)
}
