use num_traits::One;

use super::{casorati_matrix, KrallInstance};
use crate::d_operator_engine::{xi_ratfun, EpsilonKind};
use crate::error::{Error, Result};
use crate::exact_algebra::{det_poly, det_ratfun, int, shifted_factorial_s, sign, Poly, RatFun, Rational};

fn choose2(k: usize) -> i64 {
    (k * k.saturating_sub(1) / 2) as i64
}

/// `p(x) = prod_{i<=m2-2} (beta+N+m-x-i)^{m2-i-1} prod_{i<=m3-2} (N+m-x-i)^{m3-i-1}
/// prod_{i<=m2+m3-2} (-alpha-x+i+1)^{m2+m3-i-1}`.
pub fn lemma_p_poly(inst: &KrallInstance) -> Poly {
    let [_, m2, m3] = inst.block_sizes();
    let m = int(inst.m() as i64);
    let n = int(inst.n);
    let minus_one = -Rational::one();
    let mut acc = Poly::one();
    let mut times = |base: Rational, step: i64, count: usize| {
        for i in 0..count.saturating_sub(1) {
            let factor = Poly::linear(&base + int(step * i as i64), minus_one.clone());
            acc = &acc * &factor.pow(count - i - 1);
        }
    };
    times(&inst.beta + &n + &m, -1, m2);
    times(&n + &m, -1, m3);
    times(Rational::one() - &inst.alpha, 1, m2 + m3);
    acc.clone()
}

/// The polynomial matrix whose determinant divided by `p` is `P`, for arbitrary row
/// polynomials `Y_i` of degrees matching the trio.
pub fn lemma_q_matrix(inst: &KrallInstance, ys: &[Poly]) -> Vec<Vec<Poly>> {
    let m = inst.m();
    let n = int(inst.n);
    let one = Rational::one();
    let left = |u: Rational, j: usize| {
        shifted_factorial_s(&u, m - j).shift(&int(-(j as i64))) * shifted_factorial_s(&(&one - &inst.alpha), j - 1)
    };
    inst.rows()
        .iter()
        .zip(ys)
        .map(|(row, y)| {
            (1..=m)
                .map(|j| {
                    let yj = y.shift(&int(-(j as i64)));
                    match row.kind {
                        EpsilonKind::One => yj,
                        EpsilonKind::Two => &left(&inst.beta + &n + &one, j) * &yj,
                        EpsilonKind::Three => &left(&n + &one, j) * &yj,
                    }
                })
                .collect()
        })
        .collect()
}

/// `P = det(Q) / p`, required to divide exactly.
pub fn lemma_p_ratio(inst: &KrallInstance, ys: &[Poly]) -> Result<Poly> {
    det_poly(&lemma_q_matrix(inst, ys)).exact_div(&lemma_p_poly(inst)).map_err(|_| Error::NonExactDivision)
}

/// `d = sum u - binom(m1,2) - binom(m2,2) - binom(m3,2)`.
pub fn lemma_degree(inst: &KrallInstance) -> i64 {
    let sum: i64 = inst.u().iter().map(|s| s.sum()).sum();
    sum - inst.block_sizes().iter().map(|&k| choose2(k)).sum::<i64>()
}

/// `prod_{a<b} (u_b - u_a)` over the increasing elements of the set.
fn vandermonde(elems: &[i64]) -> Rational {
    let mut acc = Rational::one();
    for b in 0..elems.len() {
        for a in 0..b {
            acc *= int(elems[b] - elems[a]);
        }
    }
    acc
}

/// The predicted leading coefficient of `P`:
/// `(-1)^{binom(m,2)+m2 m3} V_{U1} V_{U2} V_{U3} prod r_i prod (beta-v+w)
/// prod (alpha+beta+N+1+u-v) prod (alpha+N+1+u-w)`, with `V_U` the Vandermonde product.
pub fn lemma_leading_coefficient(inst: &KrallInstance, ys: &[Poly]) -> Rational {
    let [_, m2, m3] = inst.block_sizes();
    let (a, b, n) = (&inst.alpha, &inst.beta, int(inst.n));
    let one = Rational::one();
    let u = inst.u();
    let mut acc = sign(choose2(inst.m()) + (m2 * m3) as i64);
    for set in u {
        acc *= vandermonde(set.elems());
    }
    for y in ys {
        acc *= y.leading().cloned().unwrap_or_default();
    }
    for &v in u[1].elems() {
        for &w in u[2].elems() {
            acc *= b - int(v) + int(w);
        }
    }
    for &x in u[0].elems() {
        for &v in u[1].elems() {
            acc *= a + b + &n + &one + int(x - v);
        }
        for &w in u[2].elems() {
            acc *= a + &n + &one + int(x - w);
        }
    }
    acc
}

/// `S(x) = (-1)^{binom(m,2)+m1} (alpha+x-m+1)_{m-1}^{m2+m3} / p(x)`, so that `S Omega^U = P`.
pub fn build_s(inst: &KrallInstance) -> RatFun {
    let [m1, m2, m3] = inst.block_sizes();
    let m = inst.m();
    let lead = sign(choose2(m) + m1 as i64);
    let num = if m2 + m3 == 0 {
        Poly::one()
    } else {
        Poly::linear(&inst.alpha - int(m as i64) + Rational::one(), Rational::one()).pochhammer(m - 1).pow(m2 + m3)
    };
    RatFun::new(num.scale(&lead), lemma_p_poly(inst)).expect("p is a nonzero polynomial")
}

/// `S` rescaled by `(-1)^{m m1}`, the multiplier matching the quasi Casorati determinant
/// `det(xi^l_{x-j,m-j} Y_l(x-j))`.
pub fn build_s_casorati(inst: &KrallInstance) -> RatFun {
    build_s(inst).scale(&sign((inst.m() * inst.block_sizes()[0]) as i64))
}

fn minor(matrix: &[Vec<RatFun>], skip_row: usize, skip_col: usize) -> Vec<Vec<RatFun>> {
    matrix
        .iter()
        .enumerate()
        .filter(|&(r, _)| r != skip_row)
        .map(|(_, row)| row.iter().enumerate().filter(|&(c, _)| c != skip_col).map(|(_, v)| v.clone()).collect())
        .collect()
}

/// `M_h(x) = sum_j (-1)^{h+j} xi^h_{x,m-j} S(x+j) det(xi^l_{x+j-r,m-r} Y_l(x+j-r))_{l != h, r != j}`
/// for every row `h` (0-based), with `S` the Casorati-matched multiplier.
pub fn build_m(inst: &KrallInstance) -> Result<Vec<Poly>> {
    let m = inst.m();
    let p = inst.params();
    let a = casorati_matrix(inst)?;
    let s = build_s_casorati(inst);
    let rows = inst.rows();
    (0..m)
        .map(|h| {
            let mut acc = RatFun::zero();
            for j in 0..m {
                let shift = int(j as i64 + 1);
                let det = det_ratfun(&minor(&a, h, j)).shift(&shift);
                let xi = xi_ratfun(rows[h].kind, (m - j - 1) as i64, &p)?;
                let term = &(&xi * &s.shift(&shift)) * &det;
                acc = &acc + &term.scale(&sign((h + j) as i64));
            }
            acc.into_poly().map_err(|_| Error::NotPolynomial(format!("M_{} is not a polynomial", h + 1)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::rat;
    use crate::krall_builder::{omega_ratfun, omega_teor_ratfun, FiniteSet};
    use proptest::prelude::*;

    /// Cofactor expansion along the first row, independent of the elimination routine.
    fn laplace(matrix: &[Vec<Poly>]) -> Poly {
        if matrix.is_empty() {
            return Poly::one();
        }
        let mut acc = Poly::zero();
        for c in 0..matrix.len() {
            let sub: Vec<Vec<Poly>> = matrix[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(k, _)| k != c).map(|(_, v)| v.clone()).collect())
                .collect();
            let term = &matrix[0][c] * &laplace(&sub);
            acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    /// `(F1, F2, F3)` choices producing every block shape with `m <= 3`.
    fn shapes() -> Vec<[FiniteSet; 3]> {
        let one: [&[i64]; 4] = [&[], &[1], &[2], &[3]];
        let two: [&[i64]; 4] = [&[], &[1], &[1, 3], &[3]];
        let mut out = Vec::new();
        for f1 in one {
            for f2 in two {
                for f3 in one {
                    let f = [FiniteSet::from_slice(f1), FiniteSet::from_slice(f2), FiniteSet::from_slice(f3)];
                    let m = f[0].transform_j(1).len() + f[1].involution_i().len() + f[2].transform_j(1).len();
                    if m <= 3 {
                        out.push(f);
                    }
                }
            }
        }
        out
    }

    fn parameter_sets() -> [(Rational, Rational); 2] {
        [(rat(1, 2), rat(1, 3)), (rat(2, 5), rat(-3, 7))]
    }

    #[test]
    fn shapes_cover_all_block_sizes() {
        let mut seen: Vec<[usize; 3]> = shapes()
            .into_iter()
            .map(|f| KrallInstance::new(rat(1, 2), rat(1, 3), 6, f, 1, 1).unwrap().block_sizes())
            .collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 20);
    }

    #[test]
    fn s_times_omega_is_the_lemma_polynomial() {
        for (a, b) in parameter_sets() {
            for f in shapes() {
                let k = KrallInstance::new(a.clone(), b.clone(), 6, f, 1, 1).unwrap();
                let ys = k.y_polys().unwrap();
                let p = lemma_p_ratio(&k, &ys).unwrap();
                let so = &build_s(&k) * &omega_ratfun(&k).unwrap();
                assert_eq!(so.as_poly(), Some(&p), "{k:?}");
                let st = &build_s_casorati(&k) * &omega_teor_ratfun(&k).unwrap();
                assert_eq!(st.as_poly(), Some(&p));
                assert_eq!(p.degree().map(|d| d as i64), Some(lemma_degree(&k)), "{k:?}");
                assert_eq!(p.leading().unwrap(), &lemma_leading_coefficient(&k, &ys), "{k:?}");
                let oracle = laplace(&lemma_q_matrix(&k, &ys));
                assert_eq!(oracle, &p * &lemma_p_poly(&k));
            }
        }
    }

    #[test]
    fn m_h_are_polynomials_within_the_degree_bound() {
        for (a, b) in parameter_sets() {
            for f in shapes() {
                let k = KrallInstance::new(a.clone(), b.clone(), 6, f, 1, 1).unwrap();
                let r = lemma_degree(&k) + 1;
                let ms = build_m(&k).unwrap();
                for (mh, row) in ms.iter().zip(k.rows()) {
                    let deg = mh.degree().map_or(-1, |d| d as i64);
                    assert!(deg <= r - row.g, "{k:?}: deg M = {deg}, r = {r}, g = {}", row.g);
                }
            }
        }
    }

    #[test]
    fn single_row_m_is_shifted_s() {
        let f = [FiniteSet::from_slice(&[1]), FiniteSet::empty(), FiniteSet::empty()];
        let k = KrallInstance::new(rat(1, 2), rat(1, 3), 6, f, 1, 1).unwrap();
        let ms = build_m(&k).unwrap();
        let s = build_s_casorati(&k).shift(&int(1));
        assert_eq!(RatFun::from(ms[0].clone()), s);
        assert_eq!(build_s(&k), RatFun::constant(int(-1)));
    }

    #[test]
    fn empty_trio_objects() {
        let k = KrallInstance::new(rat(1, 2), rat(1, 3), 6, Default::default(), 1, 1).unwrap();
        assert_eq!(lemma_p_ratio(&k, &[]).unwrap(), Poly::one());
        assert_eq!(build_s(&k), RatFun::one());
        assert!(build_m(&k).unwrap().is_empty());
    }

    fn arb_poly(deg: usize) -> impl Strategy<Value = Poly> {
        (prop::collection::vec(-5i64..=5, deg), 1i64..=4, prop::bool::ANY).prop_map(move |(mut c, lead, neg)| {
            c.push(if neg { -lead } else { lead });
            Poly::from_ints(&c)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn lemma_holds_for_arbitrary_rows(
            y1 in arb_poly(1), y2 in arb_poly(1), y3 in arb_poly(1), pick in 0usize..2,
        ) {
            let (a, b) = parameter_sets()[pick].clone();
            let f = [FiniteSet::from_slice(&[1]), FiniteSet::from_slice(&[1]), FiniteSet::from_slice(&[1])];
            let k = KrallInstance::new(a, b, 5, f, 1, 1).unwrap();
            let degs: Vec<i64> = k.rows().iter().map(|r| r.g).collect();
            prop_assert_eq!(degs, vec![1, 1, 1]);
            let ys = vec![y1, y2, y3];
            let p = lemma_p_ratio(&k, &ys).unwrap();
            prop_assert_eq!(p.degree().map(|d| d as i64), Some(lemma_degree(&k)));
            prop_assert_eq!(p.leading().unwrap(), &lemma_leading_coefficient(&k, &ys));
            prop_assert_eq!(laplace(&lemma_q_matrix(&k, &ys)), &p * &lemma_p_poly(&k));
        }
    }
}
