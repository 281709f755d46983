use num_traits::{One, Zero};
use serde::Serialize;

use super::{FiniteSet, KrallInstance};
use crate::classical_families::{dual_hahn_weight, dual_hahn_weights, Atom, DiscreteMeasure, DualHahnParams};
use crate::error::{Error, Result};
use crate::exact_algebra::{format_rational, int, pochhammer, Rational};
use crate::lattice_ops::{LambdaPoly, Lattice};

/// `prod_{v} (lambda(x) - lambda(v))` over the given roots.
fn lambda_factor(lat: &Lattice, x: &Rational, roots: &[Rational]) -> Rational {
    let lx = lat.lambda_eval(x);
    roots.iter().map(|v| &lx - lat.lambda_eval(v)).product()
}

/// Masses of the measure the polynomials `q_n` are orthogonal against, at every
/// integer of `{-f2M-1, ..., N+f1M+h1}` including the vanishing ones.
pub fn target_masses(inst: &KrallInstance) -> Result<Vec<Atom>> {
    let lat = inst.lattice();
    let (f1m, f2m) = (inst.fmax(0), inst.fmax(1));
    let n = int(inst.n);
    let mut roots: Vec<Rational> = inst.f[0].elems().iter().map(|&f| &n + int(f)).collect();
    roots.extend(inst.f[1].elems().iter().map(|&f| int(f - f2m - 1)));
    roots.extend(inst.f[2].elems().iter().map(|&f| int(f - 1) - &inst.alpha));
    let lo = -f2m - 1;
    let weights = dual_hahn_weights(inst.n + f1m + inst.h1 - lo, &inst.tilde_params())?;
    Ok(weights
        .into_iter()
        .zip(lo..)
        .map(|(w, x)| {
            let xr = int(x);
            let mass = lambda_factor(&lat, &xr, &roots) * w;
            Atom::new(xr, mass)
        })
        .collect())
}

/// The target measure with its zero atoms removed.
pub fn target_measure(inst: &KrallInstance) -> Result<DiscreteMeasure> {
    Ok(DiscreteMeasure::new(target_masses(inst)?).without_zero_atoms())
}

/// Masses at `x = 0..=N` of `prod_{F1}(lambda-lambda(N-f)) prod_{F2}(lambda-lambda(f))
/// prod_{F3}(lambda-lambda(f-beta))` times the dual Hahn weight, zeros included.
pub fn christoffel_masses(params: &DualHahnParams, f: &[FiniteSet; 3]) -> Result<Vec<Atom>> {
    let n = params.check_measure_mode()?;
    let lat = params.lattice();
    let mut roots: Vec<Rational> = f[0].elems().iter().map(|&v| &params.n_param - int(v)).collect();
    roots.extend(f[1].elems().iter().map(|&v| int(v)));
    roots.extend(f[2].elems().iter().map(|&v| int(v) - &params.beta));
    Ok(dual_hahn_weights(n as i64, params)?
        .into_iter()
        .zip(0..)
        .map(|(w, x)| {
            let xr = int(x);
            let mass = lambda_factor(&lat, &xr, &roots) * w;
            Atom::new(xr, mass)
        })
        .collect())
}

pub fn christoffel_measure(params: &DualHahnParams, f: &[FiniteSet; 3]) -> Result<DiscreteMeasure> {
    Ok(DiscreteMeasure::new(christoffel_masses(params, f)?).without_zero_atoms())
}

/// The instance whose target measure, translated by `f2M+1`, is the Christoffel
/// measure of `(alpha, beta, N, F)`: parameters `(alpha+f2M+f3M+2, beta+f2M-f3M, N-f1M-f2M-2)`,
/// sets `({f1M-f+1}, F2, {f3M-f+1})` and shifts `h_j = min F_j` (1 when empty).
pub fn corollary_instance(params: &DualHahnParams, f: &[FiniteSet; 3]) -> Result<KrallInstance> {
    let n = params.check_measure_mode()? as i64;
    let (f1m, f2m, f3m) = (f[0].max(), f[1].max(), f[2].max());
    let shift_of = |s: &FiniteSet| s.min().unwrap_or(1);
    KrallInstance::new(
        &params.alpha + int(f2m + f3m + 2),
        &params.beta + int(f2m - f3m),
        n - f1m - f2m - 2,
        [f[0].reflect(), f[1].clone(), f[2].reflect()],
        shift_of(&f[0]),
        shift_of(&f[2]),
    )
}

/// The outcome of an orthogonality check, with the first offending pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrthogonalityReport {
    pub holds: bool,
    pub witness: Option<String>,
}

/// `<mu, q_i q_j> = 0` for `i != j` and `<mu, q_i^2> != 0` for every `i`.
pub fn verify_orthogonality(polys: &[LambdaPoly], measure: &DiscreteMeasure) -> OrthogonalityReport {
    for i in 0..polys.len() {
        for j in 0..=i {
            let v = measure.pair_product(&polys[i], &polys[j]);
            let bad = if i == j { v.is_zero() } else { !v.is_zero() };
            if bad {
                return OrthogonalityReport {
                    holds: false,
                    witness: Some(format!("<mu, q_{i} q_{j}> = {}", format_rational(&v))),
                };
            }
        }
    }
    OrthogonalityReport { holds: true, witness: None }
}

/// Compares, at every `x = 0..=N`, the Christoffel measure with `F1 = F2 = F3 = {1}`
/// multiplied by `lambda (lambda - lambda(N)) (lambda - lambda(-1-alpha))` against
/// `(alpha+1)_4 (N-3)_4^2 w_{alpha+4, beta, N-4}(x-2)`. Returns the first mismatch.
pub fn geronimus_mismatch(params: &DualHahnParams) -> Result<Option<String>> {
    let n = params.check_measure_mode()? as i64;
    if n < 4 {
        return Err(Error::ParameterViolation("the Geronimus comparison needs N >= 4".into()));
    }
    let one = FiniteSet::from_slice(&[1]);
    let masses = christoffel_masses(params, &[one.clone(), one.clone(), one])?;
    let lat = params.lattice();
    let roots = [Rational::zero(), params.n_param.clone(), -Rational::one() - &params.alpha];
    let shifted = DualHahnParams::new(&params.alpha + int(4), params.beta.clone(), &params.n_param - int(4));
    let scale = pochhammer(&(&params.alpha + Rational::one()), 4) * pochhammer(&(&params.n_param - int(3)), 4).pow(2);
    for atom in masses {
        let x = atom.x.clone();
        let xi = crate::exact_algebra::as_integer(&x).expect("integer support");
        let lhs = lambda_factor(&lat, &x, &roots) * &atom.mass;
        let rhs = &scale * dual_hahn_weight(xi - 2, &shifted)?;
        if lhs != rhs {
            return Ok(Some(format!("x = {xi}: left {} but right {}", format_rational(&lhs), format_rational(&rhs))));
        }
    }
    Ok(None)
}
