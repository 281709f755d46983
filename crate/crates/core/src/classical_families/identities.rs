use num_traits::{One, Zero};

use super::{dual_hahn, dual_hahn_family, DualHahnParams};
use crate::error::{Error, Result};
use crate::exact_algebra::{factorial, int, pochhammer, series_pow, Poly, RatFun, Rational, Series};
use crate::lattice_ops::LambdaPoly;

/// `sum_{j<=n} R_j^{a,b,N} = R_n^{a,b,N-1}`.
pub fn verify_identity_sum(n: usize, params: &DualHahnParams) -> Result<bool> {
    let fam = dual_hahn_family(n, params)?;
    let lat = params.lattice();
    let sum = fam.iter().fold(LambdaPoly::zero(&lat), |acc, r| &acc + r);
    let lowered = dual_hahn(n, &params.with_n(&params.n_param - Rational::one()))?;
    Ok(sum == lowered)
}

/// `R_n(lambda(x+1)) - R_n(lambda(x)) = (2x+a+b+2)/(a+1) R_{n-1}^{a+1,b,N-1}(lambda^{a+1,b}(x))`,
/// compared as rational functions of `x`.
pub fn verify_identity_fwd_shift(n: usize, params: &DualHahnParams) -> Result<bool> {
    let one = Rational::one();
    let r = dual_hahn(n, params)?.x_view();
    let lhs = RatFun::from(&r.shift(&one) - &r);
    if n == 0 {
        return Ok(lhs.is_zero());
    }
    let shifted = DualHahnParams::new(&params.alpha + &one, params.beta.clone(), &params.n_param - &one);
    let inner = dual_hahn(n - 1, &shifted)?.x_view();
    let factor =
        RatFun::new(Poly::linear(&params.alpha + &params.beta + int(2), int(2)), Poly::constant(&params.alpha + &one))?;
    Ok(lhs == factor.mul_poly(&inner))
}

/// Compares the truncations to order `k` of `(1-t)^{N-x} 2F1(-x, -x-b; a+1; t)`
/// and `sum_n R_n(lambda(x)) t^n`, for a nonnegative integer `x` and `N` not in `N`.
pub fn verify_identity_genfun(x: usize, params: &DualHahnParams, k: usize) -> Result<bool> {
    if params.integer_n().is_some() {
        return Err(Error::ParameterViolation(
            "the generating function needs N outside the nonnegative integers".into(),
        ));
    }
    let xr = int(x as i64);
    let one = Rational::one();
    let a1 = &params.alpha + &one;
    let hyper: Vec<Rational> = (0..=x.min(k))
        .map(|j| {
            let den = pochhammer(&a1, j) * factorial(j);
            if den.is_zero() {
                return Err(Error::ParameterViolation("2F1 lower parameter hits a nonpositive integer".into()));
            }
            Ok(pochhammer(&-&xr, j) * pochhammer(&(-&xr - &params.beta), j) / den)
        })
        .collect::<Result<_>>()?;
    let lhs = &series_pow(&(&params.n_param - &xr), k) * &Series::new(hyper, k);
    let fam = dual_hahn_family(k, params)?;
    let rhs: Vec<Rational> = fam.iter().map(|r| r.eval_at_x(&xr)).collect();
    Ok(lhs.coeffs() == rhs.as_slice())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::rat;

    fn params() -> DualHahnParams {
        DualHahnParams::new(rat(1, 2), rat(1, 3), int(5))
    }

    #[test]
    fn sum_identity() {
        for n in 0..=6 {
            assert!(verify_identity_sum(n, &params()).unwrap());
        }
    }

    #[test]
    fn forward_shift_identity() {
        for n in 0..=6 {
            assert!(verify_identity_fwd_shift(n, &params()).unwrap());
        }
    }

    #[test]
    fn generating_function() {
        let p = DualHahnParams::new(rat(1, 2), rat(1, 3), rat(7, 2));
        for x in 0..=3 {
            assert!(verify_identity_genfun(x, &p, 8).unwrap());
        }
        assert!(verify_identity_genfun(1, &params(), 4).is_err());
        let other_beta = DualHahnParams::new(rat(1, 2), rat(1, 2), rat(7, 2));
        assert!(verify_identity_genfun(3, &other_beta, 8).unwrap());
    }
}
