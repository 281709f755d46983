use num_traits::{One, Zero};
use serde::Serialize;

use super::{corollary_order, FiniteSet};
use crate::classical_families::{dual_hahn_measure, DiscreteMeasure, DualHahnParams};
use crate::error::Result;
use crate::exact_algebra::{as_integer, format_rational, int, Rational};

/// One trio whose Christoffel measure is proportional to the target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Representation {
    #[serde(rename = "F1")]
    pub f1: FiniteSet,
    #[serde(rename = "F2")]
    pub f2: FiniteSet,
    #[serde(rename = "F3")]
    pub f3: FiniteSet,
    /// The corollary order `r`; the operator has order `2r`.
    pub r: i64,
    /// `c` with `christoffel = c * target`.
    #[serde(serialize_with = "ser_rational")]
    pub scale: Rational,
}

fn ser_rational<S: serde::Serializer>(v: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(v))
}

impl Representation {
    pub fn trio(&self) -> [FiniteSet; 3] {
        [self.f1.clone(), self.f2.clone(), self.f3.clone()]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub representations: Vec<Representation>,
    /// Index of the representation with the smallest `r`.
    pub minimizer: Option<usize>,
}

impl SearchResult {
    pub fn best(&self) -> Option<&Representation> {
        self.minimizer.map(|i| &self.representations[i])
    }
}

/// All trios with `F1, F2 ⊆ {1..N}` and `F3 ⊆ {1..f3_bound}` whose Christoffel measure
/// equals `target` up to a nonzero scalar.
///
/// Every element of `F1` or `F2` below `N+1` produces a zero of the Christoffel measure
/// on `{0..N}` (at `N-f` or at `f`), so candidates are assembled from the zero set of the
/// target: each zero is explained by an `F1` element, an `F2` element, or both.
pub fn find_equivalent_representations(
    params: &DualHahnParams,
    target: &DiscreteMeasure,
    f3_bound: i64,
) -> Result<SearchResult> {
    let base = dual_hahn_measure(params)?;
    let n = params.check_measure_mode()? as i64;
    let lat = params.lattice();
    let empty = SearchResult { representations: Vec::new(), minimizer: None };
    if target.atoms().iter().any(|a| as_integer(&a.x).is_none_or(|x| x < 0 || x > n)) {
        return Ok(empty);
    }
    let zeros: Vec<i64> = (0..=n).filter(|&x| target.mass_at(&int(x)).is_zero()).collect();
    // target mass divided by the dual Hahn weight, at each surviving point
    let ratio: Vec<Option<Rational>> = base
        .atoms()
        .iter()
        .map(|a| {
            let t = target.mass_at(&a.x);
            (!t.is_zero()).then(|| t / &a.mass)
        })
        .collect();

    let mut out = Vec::new();
    let choices = 3usize.pow(zeros.len() as u32);
    for code in 0..choices {
        let mut f1 = Vec::new();
        let mut f2 = Vec::new();
        let mut c = code;
        let mut valid = true;
        for &z in &zeros {
            let pick = c % 3;
            c /= 3;
            if pick != 1 {
                if z >= n {
                    valid = false;
                }
                f1.push(n - z);
            }
            if pick != 0 {
                if z < 1 {
                    valid = false;
                }
                f2.push(z);
            }
        }
        if !valid {
            continue;
        }
        for mask in 0..1u64 << f3_bound {
            let f3: Vec<i64> = (1..=f3_bound).filter(|k| mask >> (k - 1) & 1 == 1).collect();
            let mut roots: Vec<Rational> = f1.iter().map(|&f| int(n - f)).collect();
            roots.extend(f2.iter().map(|&f| int(f)));
            roots.extend(f3.iter().map(|&f| int(f) - &params.beta));
            let mut scale: Option<Rational> = None;
            let mut ok = true;
            for (atom, r) in base.atoms().iter().zip(&ratio) {
                let lx = lat.lambda_eval(&atom.x);
                let factor: Rational = roots.iter().map(|v| &lx - lat.lambda_eval(v)).product();
                match r {
                    None => ok = factor.is_zero(),
                    Some(_) if factor.is_zero() => ok = false,
                    Some(r) => {
                        let c = factor / r;
                        match &scale {
                            None => scale = Some(c),
                            Some(s) => ok = *s == c,
                        }
                    }
                }
                if !ok {
                    break;
                }
            }
            if ok {
                let f = [FiniteSet::new(f1.clone())?, FiniteSet::new(f2.clone())?, FiniteSet::new(f3)?];
                let r = corollary_order(&f);
                let [f1s, f2s, f3s] = f;
                out.push(Representation { f1: f1s, f2: f2s, f3: f3s, r, scale: scale.unwrap_or_else(Rational::one) });
            }
        }
    }
    out.sort_by(|a, b| {
        (a.r, a.f1.elems(), a.f2.elems(), a.f3.elems()).cmp(&(b.r, b.f1.elems(), b.f2.elems(), b.f3.elems()))
    });
    let minimizer = (!out.is_empty()).then_some(0);
    Ok(SearchResult { representations: out, minimizer })
}
