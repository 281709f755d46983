use serde::Serialize;

use super::{build_m, build_s_casorati, omega_teor_ratfun, FiniteSet, KrallInstance};
use crate::classical_families::gamma_op;
use crate::d_operator_engine::d_operator;
use crate::error::{Error, Result};
use crate::exact_algebra::{int, Poly, RatFun};
use crate::lattice_ops::{DiffOp, LambdaPoly};

/// The operator `D_{q,S} = P_S(Gamma) + sum_h M_h(Gamma) D_h Y_h(Gamma)` with its ingredients.
#[derive(Clone, Debug, Serialize)]
pub struct HigherOperator {
    pub operator: DiffOp,
    /// `P_S` with `P_S(x) - P_S(x-1) = S(x) Omega(x)` and `P_S(-1) = 0`; `q_n` has eigenvalue `P_S(n)`.
    pub p_s: Poly,
    /// `S(x) Omega(x)`.
    pub p: Poly,
    pub s: RatFun,
    pub m: Vec<Poly>,
    pub y: Vec<Poly>,
}

/// `sum_k c_k T^k` from precomputed powers `T^0, T^1, ...`.
fn poly_of_powers(p: &Poly, powers: &[DiffOp]) -> DiffOp {
    let mut acc = DiffOp::zero(powers[0].lattice());
    for (k, c) in p.coeffs().iter().enumerate() {
        acc = acc.add(&powers[k].scale(c));
    }
    acc
}

pub fn build_higher_op(inst: &KrallInstance) -> Result<HigherOperator> {
    let params = inst.params();
    let s = build_s_casorati(inst);
    let p = (&s * &omega_teor_ratfun(inst)?)
        .into_poly()
        .map_err(|_| Error::NotPolynomial("S Omega is not a polynomial".into()))?;
    let p_s = p.discrete_antiderivative();
    let m = build_m(inst)?;
    let y = inst.y_polys()?;
    let top = m.iter().chain(&y).chain(std::iter::once(&p_s)).filter_map(Poly::degree).max().unwrap_or(0);
    let gamma = gamma_op(&params);
    let mut powers = vec![DiffOp::identity(&params.lattice())];
    for k in 0..top {
        let next = powers[k].compose(&gamma);
        powers.push(next);
    }
    let mut operator = poly_of_powers(&p_s, &powers);
    for ((mh, yh), row) in m.iter().zip(&y).zip(inst.rows()) {
        let term =
            poly_of_powers(mh, &powers).compose(&d_operator(row.kind, &params)).compose(&poly_of_powers(yh, &powers));
        operator = operator.add(&term);
    }
    Ok(HigherOperator { operator, p_s, p, s, m, y })
}

/// The first `n` with `D q_n != P_S(n) q_n`, comparing exact rational functions of `x`.
pub fn eigen_mismatch(op: &HigherOperator, q: &[LambdaPoly]) -> Option<usize> {
    q.iter().enumerate().find_map(|(n, qn)| {
        let lhs = op.operator.apply(qn);
        let rhs = RatFun::from(qn.x_view().scale(&op.p_s.eval(&int(n as i64))));
        (lhs != rhs).then_some(n)
    })
}

fn choose2(k: usize) -> i64 {
    (k * k.saturating_sub(1) / 2) as i64
}

/// `r = sum_{F2} f - sum_{F1,F3} f - sum binom(k_i,2) + k1 (f1M+h1) + k3 (f3M+h3) + 1`;
/// the operator has order window `(-r, r)`.
pub fn predicted_order(inst: &KrallInstance) -> i64 {
    let f = &inst.f;
    let k: Vec<i64> = f.iter().map(|s| s.len() as i64).collect();
    f[1].sum() - f[0].sum() - f[2].sum() - f.iter().map(|s| choose2(s.len())).sum::<i64>()
        + k[0] * (inst.fmax(0) + inst.h1)
        + k[2] * (inst.fmax(2) + inst.h3)
        + 1
}

/// `r = sum_{F1,F2,F3} f - sum binom(k_i,2) + 1` for the Christoffel measure of `F`.
pub fn corollary_order(f: &[FiniteSet; 3]) -> i64 {
    f.iter().map(|s| s.sum() - choose2(s.len())).sum::<i64>() + 1
}
