use num_traits::{One, Zero};

use super::{Poly, RatFun, Rational};

/// Determinant of a square rational matrix by Gaussian elimination.
/// The empty matrix has determinant 1.
pub fn det_rational(matrix: &[Vec<Rational>]) -> Rational {
    let n = matrix.len();
    let mut a: Vec<Vec<Rational>> = matrix.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        let p_inv = p.recip();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let (top, bottom) = a.split_at_mut(r);
            let (pivot_row, row) = (&top[col], &mut bottom[0]);
            let factor = &row[col] * &p_inv;
            for (x, y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &factor * y;
            }
        }
    }
    det
}

/// Fraction-free (Bareiss) determinant of a square polynomial matrix.
pub fn det_poly(matrix: &[Vec<Poly>]) -> Poly {
    let n = matrix.len();
    if n == 0 {
        return Poly::one();
    }
    let mut a: Vec<Vec<Poly>> = matrix.to_vec();
    let mut negate = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(piv) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return Poly::zero();
            };
            a.swap(piv, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = t.exact_div(&prev).expect("Bareiss step divides exactly");
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Determinant over the rational-function field.
///
/// Each row is cleared by the monic lcm of its denominators, the resulting
/// polynomial matrix goes through [`det_poly`], and the row multipliers are
/// divided back out.
pub fn det_ratfun(matrix: &[Vec<RatFun>]) -> RatFun {
    let mut total_den = Poly::one();
    let rows: Vec<Vec<Poly>> = matrix
        .iter()
        .map(|row| {
            let l = row.iter().fold(Poly::one(), |acc, f| lcm(&acc, f.den()));
            let out = row.iter().map(|f| &f.num().clone() * &l.exact_div(f.den()).unwrap()).collect();
            total_den = &total_den * &l;
            out
        })
        .collect();
    RatFun::new(det_poly(&rows), total_den).expect("nonzero denominator")
}

fn lcm(a: &Poly, b: &Poly) -> Poly {
    let g = Poly::gcd(a, b);
    (a * &b.exact_div(&g).unwrap()).monic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::rat;
    use proptest::prelude::*;

    fn laplace(m: &[Vec<RatFun>]) -> RatFun {
        let n = m.len();
        if n == 0 {
            return RatFun::one();
        }
        let mut acc = RatFun::zero();
        for j in 0..n {
            let minor: Vec<Vec<RatFun>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
                .collect();
            let term = &m[0][j] * &laplace(&minor);
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    fn arb_ratfun() -> impl Strategy<Value = RatFun> {
        let poly = prop::collection::vec((-4i64..=4, 1i64..=3), 0..=3)
            .prop_map(|cs| Poly::new(cs.into_iter().map(|(p, q)| rat(p, q)).collect()));
        let den = prop::collection::vec((-4i64..=4, 1i64..=3), 1..=2)
            .prop_map(|cs| Poly::new(cs.into_iter().map(|(p, q)| rat(p, q)).collect()))
            .prop_filter("nonzero", |p| !p.is_zero());
        (poly, den).prop_map(|(n, d)| RatFun::new(n, d).unwrap())
    }

    fn arb_matrix() -> impl Strategy<Value = Vec<Vec<RatFun>>> {
        (1usize..=4).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(arb_ratfun(), n), n))
    }

    #[test]
    fn small_examples() {
        let x = RatFun::from(Poly::x());
        assert_eq!(det_ratfun(&[vec![RatFun::one()]]), RatFun::one());
        assert_eq!(det_ratfun(&[]), RatFun::one());
        let m = vec![vec![x.clone(), RatFun::one()], vec![RatFun::one(), x.clone()]];
        assert_eq!(det_ratfun(&m), RatFun::from(Poly::from_ints(&[-1, 0, 1])));
        let row = vec![x.clone(), RatFun::one(), x.clone()];
        let sing = vec![row.clone(), vec![RatFun::one(); 3], row];
        assert!(det_ratfun(&sing).is_zero());
    }

    #[test]
    fn rational_det_with_pivoting() {
        let m = vec![
            vec![rat(0, 1), rat(1, 2), rat(2, 1)],
            vec![rat(3, 1), rat(0, 1), rat(-1, 3)],
            vec![rat(1, 1), rat(1, 1), rat(1, 1)],
        ];
        // expanded by hand along the first row
        let expect = -rat(1, 2) * (rat(3, 1) + rat(1, 3)) + rat(2, 1) * rat(3, 1);
        assert_eq!(det_rational(&m), expect);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn bareiss_agrees_with_cofactor_expansion(m in arb_matrix()) {
            prop_assert_eq!(det_ratfun(&m), laplace(&m));
        }
    }
}
