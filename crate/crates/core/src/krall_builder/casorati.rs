use num_traits::{One, Zero};

use super::KrallInstance;
use crate::classical_families::dual_hahn_family;
use crate::d_operator_engine::{xi_ratfun, z_poly, EpsilonKind};
use crate::error::{Error, Result};
use crate::exact_algebra::{det_ratfun, det_rational, format_rational, int, pochhammer, sign, Poly, RatFun, Rational};
use crate::lattice_ops::LambdaPoly;

impl KrallInstance {
    /// `Y_l = Z^l_{g_l}` for each row, in row order.
    pub fn y_polys(&self) -> Result<Vec<Poly>> {
        let p = self.params();
        self.rows().iter().map(|r| z_poly(r.kind, r.g as usize, &p)).collect()
    }
}

/// The row weight of a Casorati block at column `j` (1-based) for an
/// `m`-column determinant evaluated at `x`: `(-1)^j`,
/// `(beta+N-x+j+1)_{m-j} / (alpha+x-m+1)_{m-j}` or `(N-x+j+1)_{m-j} / (alpha+x-m+1)_{m-j}`.
fn block_weight(inst: &KrallInstance, kind: EpsilonKind, x: &Rational, j: usize, m: usize) -> Result<Rational> {
    let k = m - j;
    let jr = int(j as i64);
    let top = match kind {
        EpsilonKind::One => return Ok(sign(j as i64)),
        EpsilonKind::Two => pochhammer(&(&inst.beta + int(inst.n) - x + &jr + Rational::one()), k),
        EpsilonKind::Three => pochhammer(&(int(inst.n) - x + &jr + Rational::one()), k),
    };
    let bottom = pochhammer(&(&inst.alpha + x - int(m as i64) + Rational::one()), k);
    if bottom.is_zero() {
        return Err(Error::DivisionByZero(format!("Casorati weight denominator at x = {}", format_rational(x))));
    }
    Ok(top / bottom)
}

/// `Omega^U(x)` evaluated entrywise from the Hahn rows, block by block.
pub fn omega_at(inst: &KrallInstance, x: &Rational) -> Result<Rational> {
    let m = inst.m();
    let ys = inst.y_polys()?;
    let rows = inst.rows();
    let mut matrix = Vec::with_capacity(m);
    for (row, y) in rows.iter().zip(&ys) {
        let mut line = Vec::with_capacity(m);
        for j in 1..=m {
            let w = block_weight(inst, row.kind, x, j, m)?;
            line.push(w * y.eval(&(x - int(j as i64))));
        }
        matrix.push(line);
    }
    Ok(det_rational(&matrix))
}

/// `(xi^l_{x-j,m-j} Y_l(x-j))_{l,j}` as rational functions of `x`.
pub fn casorati_matrix(inst: &KrallInstance) -> Result<Vec<Vec<RatFun>>> {
    let m = inst.m() as i64;
    let p = inst.params();
    let ys = inst.y_polys()?;
    inst.rows()
        .iter()
        .zip(&ys)
        .map(|(row, y)| {
            (1..=m)
                .map(|j| {
                    let shift = int(-j);
                    let xi = xi_ratfun(row.kind, m - j, &p)?.shift(&shift);
                    Ok(xi.mul_poly(&y.shift(&shift)))
                })
                .collect()
        })
        .collect()
}

/// The quasi Casorati determinant `det(xi^l_{x-j,m-j} Y_l(x-j))`.
pub fn omega_teor_ratfun(inst: &KrallInstance) -> Result<RatFun> {
    Ok(det_ratfun(&casorati_matrix(inst)?))
}

/// `Omega^U(x) = (-1)^{m m1} det(xi^l_{x-j,m-j} Y_l(x-j))` as a rational function.
pub fn omega_ratfun(inst: &KrallInstance) -> Result<RatFun> {
    let s = sign((inst.m() * inst.block_sizes()[0]) as i64);
    Ok(omega_teor_ratfun(inst)?.scale(&s))
}

/// The last index of the nonvanishing range `0 <= n <= N+m1+m2+1`.
pub fn sweep_end(inst: &KrallInstance) -> i64 {
    let [m1, m2, _] = inst.block_sizes();
    inst.n + (m1 + m2) as i64 + 1
}

/// The first `n` in `0..=N+m1+m2+1` with `Omega^U(n) = 0` (or with a pole), if any.
pub fn omega_nonzero_sweep(inst: &KrallInstance) -> Result<Option<i64>> {
    for n in 0..=sweep_end(inst) {
        match omega_at(inst, &int(n)) {
            Ok(v) if !v.is_zero() => {}
            Ok(_) | Err(Error::DivisionByZero(_)) => return Ok(Some(n)),
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

/// The numeric rows of the `q_n` determinant below the first row.
fn q_rows(inst: &KrallInstance, ys: &[Poly], n: i64) -> Result<Vec<Vec<Rational>>> {
    let m = inst.m();
    let nr = int(n);
    inst.rows()
        .iter()
        .zip(ys)
        .map(|(row, y)| {
            (1..=m + 1)
                .map(|j| {
                    let at = &nr - int(j as i64) + Rational::one();
                    let w = block_weight(inst, row.kind, &(&nr + Rational::one()), j, m + 1)?;
                    let w = if row.kind == EpsilonKind::One { -w } else { w };
                    Ok(w * y.eval(&at))
                })
                .collect()
        })
        .collect()
}

/// `q_n`: the `(m+1) x (m+1)` determinant whose first row is `(-1)^{j-1} R_{n+1-j}`
/// and whose remaining rows are the weighted Hahn rows, expanded along the first row.
pub fn krall_q(inst: &KrallInstance, n: usize) -> Result<LambdaPoly> {
    let fam = dual_hahn_family(n, &inst.params())?;
    krall_q_from(inst, n, &fam, &inst.y_polys()?)
}

/// `q_0, ..., q_{n_max}`.
pub fn krall_q_family(inst: &KrallInstance, n_max: usize) -> Result<Vec<LambdaPoly>> {
    let fam = dual_hahn_family(n_max, &inst.params())?;
    let ys = inst.y_polys()?;
    (0..=n_max).map(|n| krall_q_from(inst, n, &fam, &ys)).collect()
}

/// The coefficients `c_j` in `q_n = sum_j c_j R_{n-j}`, `j = 0..=m`.
pub fn krall_q_coefficients(inst: &KrallInstance, n: usize) -> Result<Vec<Rational>> {
    q_coefficients(inst, n as i64, &inst.y_polys()?)
}

fn q_coefficients(inst: &KrallInstance, n: i64, ys: &[Poly]) -> Result<Vec<Rational>> {
    let rows = q_rows(inst, ys, n)?;
    let m = inst.m();
    let coeffs: Vec<Rational> = (0..=m)
        .map(|j| {
            let minor: Vec<Vec<Rational>> = rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
                .collect();
            det_rational(&minor)
        })
        .collect();
    if coeffs[0].is_zero() {
        return Err(Error::DegenerateCasorati { n });
    }
    Ok(coeffs)
}

fn krall_q_from(inst: &KrallInstance, n: usize, fam: &[LambdaPoly], ys: &[Poly]) -> Result<LambdaPoly> {
    let coeffs = q_coefficients(inst, n as i64, ys)?;
    let lat = inst.lattice();
    let mut acc = LambdaPoly::zero(&lat);
    for (j, c) in coeffs.iter().enumerate() {
        if j <= n && !c.is_zero() {
            acc = &acc + &fam[n - j].scale(c);
        }
    }
    Ok(acc)
}
