use std::ops::Mul;

use num_traits::{One, Zero};

use super::{binomial, sign, Rational};

/// Power series in `t` truncated after `t^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    /// Pads with zeros or truncates so that exactly `order + 1` terms remain.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        Series { coeffs }
    }

    pub fn one(order: usize) -> Self {
        Series::new(vec![Rational::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Series { coeffs: out }
    }
}

/// `(1 - t)^exponent` up to `t^order`: the k-th coefficient is `(-1)^k binom(exponent, k)`.
pub fn series_pow(exponent: &Rational, order: usize) -> Series {
    let coeffs = (0..=order).map(|k| sign(k as i64) * binomial(exponent, k)).collect();
    Series { coeffs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{int, rat};

    #[test]
    fn pow_examples() {
        assert_eq!(series_pow(&int(0), 3).coeffs(), &[int(1), int(0), int(0), int(0)]);
        assert_eq!(series_pow(&int(1), 2).coeffs(), &[int(1), int(-1), int(0)]);
        assert_eq!(series_pow(&rat(1, 2), 2).coeffs(), &[int(1), rat(-1, 2), rat(-1, 8)]);
    }

    #[test]
    fn exponents_add_under_multiplication() {
        let a = rat(3, 7);
        let b = rat(-5, 2);
        let prod = &series_pow(&a, 8) * &series_pow(&b, 8);
        assert_eq!(prod, series_pow(&(&a + &b), 8));
    }
}
