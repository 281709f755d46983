use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_algebra::{factorial, format_rational, int, pochhammer, Poly, Rational};

/// Hahn polynomial in `x`:
/// `h_n(x) = sum_j (-n)_j (n+a+b+1)_j (-M+j)_{n-j} (a+j+1)_{n-j} (-x)_j / j!`.
///
/// Rejects parameters for which the leading coefficient `(n+a+b+1)_n` vanishes,
/// since the result would then fall short of degree `n`.
pub fn hahn(n: usize, a: &Rational, b: &Rational, m: &Rational) -> Result<Poly> {
    let nr = int(n as i64);
    let apb1 = &nr + a + b + Rational::one();
    if pochhammer(&apb1, n).is_zero() {
        return Err(Error::ParameterViolation(format!(
            "Hahn polynomial of degree {n} degenerates for a + b = {}",
            format_rational(&(a + b))
        )));
    }
    let neg_n = -&nr;
    let minus_x = Poly::linear(Rational::zero(), -Rational::one());
    let mut acc = Poly::zero();
    for j in 0..=n {
        let jr = int(j as i64);
        let c = pochhammer(&neg_n, j)
            * pochhammer(&apb1, j)
            * pochhammer(&(&jr - m), n - j)
            * pochhammer(&(a + &jr + Rational::one()), n - j)
            / factorial(j);
        if !c.is_zero() {
            acc = &acc + &minus_x.pochhammer(j).scale(&c);
        }
    }
    Ok(acc)
}

/// Checks `B h(x+1) - (B+D) h(x) + D h(x-1) = n(n+a+b+1) h(x)` as a polynomial
/// identity, with `B = (x+a+1)(x-M)` and `D = x(x-b-M-1)`.
pub fn verify_hahn_2nd_order(n: usize, a: &Rational, b: &Rational, m: &Rational) -> Result<bool> {
    let h = hahn(n, a, b, m)?;
    let one = Rational::one();
    let bx = &Poly::linear(a + &one, one.clone()) * &Poly::linear(-m, one.clone());
    let dx = &Poly::x() * &Poly::linear(-(b + m + &one), one.clone());
    let lhs = &(&(&bx * &h.shift(&one)) - &(&(&bx + &dx) * &h)) + &(&dx * &h.shift(&-&one));
    let nr = int(n as i64);
    let eigen = &nr * (&nr + a + b + &one);
    Ok(lhs == h.scale(&eigen))
}
