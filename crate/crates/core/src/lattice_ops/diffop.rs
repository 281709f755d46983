use std::collections::BTreeMap;

use num_traits::One;
use serde::ser::{Serialize, SerializeSeq, Serializer};

use super::{LambdaPoly, Lattice};
use crate::error::{Error, Result};
use crate::exact_algebra::{int, Poly, RatFun, Rational};

/// `T = sum_j h_j(x) s_j` where `s_j p(lambda) = p(lambda(x+j))`.
///
/// Terms with a zero coefficient are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOp {
    lattice: Lattice,
    terms: BTreeMap<i64, RatFun>,
}

impl DiffOp {
    pub fn zero(lattice: &Lattice) -> Self {
        DiffOp { lattice: lattice.clone(), terms: BTreeMap::new() }
    }

    pub fn identity(lattice: &Lattice) -> Self {
        DiffOp::shift(lattice, 0)
    }

    /// The bare shift `s_j`.
    pub fn shift(lattice: &Lattice, j: i64) -> Self {
        DiffOp::from_terms(lattice, [(j, RatFun::one())])
    }

    pub fn from_terms(lattice: &Lattice, terms: impl IntoIterator<Item = (i64, RatFun)>) -> Self {
        let mut op = DiffOp::zero(lattice);
        for (j, h) in terms {
            op.add_term(j, &h);
        }
        op
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn terms(&self) -> &BTreeMap<i64, RatFun> {
        &self.terms
    }

    pub fn coeff(&self, j: i64) -> RatFun {
        self.terms.get(&j).cloned().unwrap_or_else(RatFun::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, j: i64, h: &RatFun) {
        let sum = match self.terms.get(&j) {
            Some(old) => old + h,
            None => h.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&j);
        } else {
            self.terms.insert(j, sum);
        }
    }

    fn check(&self, other: &DiffOp) {
        assert_eq!(self.lattice, other.lattice, "operators on different lattices");
    }

    pub fn add(&self, other: &DiffOp) -> DiffOp {
        self.check(other);
        let mut out = self.clone();
        for (&j, h) in &other.terms {
            out.add_term(j, h);
        }
        out
    }

    pub fn sub(&self, other: &DiffOp) -> DiffOp {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> DiffOp {
        DiffOp::from_terms(&self.lattice, self.terms.iter().map(|(&j, h)| (j, h.scale(c))))
    }

    /// Left multiplication by a function of `x`.
    pub fn left_mul(&self, f: &RatFun) -> DiffOp {
        DiffOp::from_terms(&self.lattice, self.terms.iter().map(|(&j, h)| (j, h * f)))
    }

    /// `self o other`, using `(f s_j) o (g s_k) = f(x) g(x+j) s_{j+k}`.
    pub fn compose(&self, other: &DiffOp) -> DiffOp {
        self.check(other);
        let mut out = DiffOp::zero(&self.lattice);
        for (&j, f) in &self.terms {
            let shift = int(j);
            for (&k, g) in &other.terms {
                out.add_term(j + k, &(f * &g.shift(&shift)));
            }
        }
        out
    }

    /// `P(self)` by Horner's rule, the constant term acting as a multiple of the identity.
    pub fn poly_of_op(p: &Poly, op: &DiffOp) -> DiffOp {
        let id = DiffOp::identity(&op.lattice);
        let mut acc = DiffOp::zero(&op.lattice);
        for c in p.coeffs().iter().rev() {
            acc = acc.compose(op).add(&id.scale(c));
        }
        acc
    }

    /// Applies the operator to an arbitrary polynomial in `x`.
    pub fn apply_x(&self, p: &Poly) -> RatFun {
        self.terms.iter().fold(RatFun::zero(), |acc, (&j, h)| &acc + &h.mul_poly(&p.shift(&int(j))))
    }

    /// `sum_j h_j(x) p(lambda(x+j))`.
    pub fn apply(&self, p: &LambdaPoly) -> RatFun {
        assert_eq!(&self.lattice, p.lattice(), "operator and polynomial on different lattices");
        self.apply_x(&p.x_view())
    }

    /// Minimal and maximal shift with a nonzero coefficient.
    pub fn order_window(&self) -> Result<(i64, i64)> {
        let lo = self.terms.keys().next().ok_or(Error::EmptyOperator)?;
        let hi = self.terms.keys().next_back().ok_or(Error::EmptyOperator)?;
        Ok((*lo, *hi))
    }

    /// Checks that `T(lambda^k)` is an involution-invariant polynomial in `x`
    /// for every `k <= max_degree`.
    pub fn is_in_lambda_algebra(&self, max_degree: usize) -> bool {
        let lambda = self.lattice.lambda_poly();
        let mut power = Poly::one();
        for _ in 0..=max_degree {
            let image = self.apply_x(&power);
            match image.as_poly() {
                Some(p) if &self.lattice.involution(p) == p => {}
                _ => return false,
            }
            power = &power * &lambda;
        }
        true
    }
}

impl Serialize for DiffOp {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(serde::Serialize)]
        struct Term<'a> {
            shift: i64,
            coeff: &'a RatFun,
        }
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (&shift, coeff) in &self.terms {
            seq.serialize_element(&Term { shift, coeff })?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::rat;
    use proptest::prelude::*;

    fn lat() -> Lattice {
        Lattice::new(rat(1, 2), rat(1, 3))
    }

    fn x_times_shift(l: &Lattice, j: i64) -> DiffOp {
        DiffOp::from_terms(l, [(j, RatFun::from(Poly::x()))])
    }

    fn arb_op() -> impl Strategy<Value = DiffOp> {
        prop::collection::vec((-2i64..=2, -3i64..=3, -3i64..=3, 1i64..=3), 1..=3).prop_map(|ts| {
            let l = lat();
            DiffOp::from_terms(
                &l,
                ts.into_iter().map(|(j, a, b, d)| {
                    let num = Poly::new(vec![rat(a, d), rat(b, 1)]);
                    let den = Poly::from_ints(&[2 * d + 1, 2]);
                    (j, RatFun::new(num, den).unwrap())
                }),
            )
        })
    }

    #[test]
    fn identity_and_shift_examples() {
        let l = lat();
        let p = LambdaPoly::new(l.clone(), Poly::from_ints(&[3, -1, 2]));
        assert_eq!(DiffOp::identity(&l).apply(&p), RatFun::from(p.x_view()));
        let lam = LambdaPoly::lambda_power(&l, 1);
        let expect = Poly::new(vec![&l.s() + int(1), &l.s() + int(2), int(1)]);
        assert_eq!(DiffOp::shift(&l, 1).apply(&lam), RatFun::from(expect));
    }

    #[test]
    fn composition_examples() {
        let l = lat();
        let b = x_times_shift(&l, -1);
        assert_eq!(DiffOp::identity(&l).compose(&b), b);
        assert_eq!(DiffOp::shift(&l, 1).compose(&DiffOp::shift(&l, -1)), DiffOp::identity(&l));
        let sq = x_times_shift(&l, 1).compose(&x_times_shift(&l, 1));
        let expect = DiffOp::from_terms(&l, [(2, RatFun::from(Poly::from_ints(&[0, 1, 1])))]);
        assert_eq!(sq, expect);
    }

    #[test]
    fn order_window_and_membership() {
        let l = lat();
        assert_eq!(DiffOp::identity(&l).order_window(), Ok((0, 0)));
        assert_eq!(DiffOp::zero(&l).order_window(), Err(Error::EmptyOperator));
        assert!(!DiffOp::shift(&l, 1).is_in_lambda_algebra(4));
        assert!(DiffOp::identity(&l).is_in_lambda_algebra(4));
        assert_eq!(DiffOp::poly_of_op(&Poly::one(), &DiffOp::shift(&l, 1)), DiffOp::identity(&l));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn composition_is_associative(a in arb_op(), b in arb_op(), c in arb_op()) {
            prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        }

        #[test]
        fn composed_application_matches_chain(a in arb_op(), b in arb_op(), cs in prop::collection::vec(-5i64..5, 0..4)) {
            let p = Poly::from_ints(&cs);
            let chained = {
                // a(b(p)) where b(p) is a rational function: apply term by term
                let inner = b.apply_x(&p);
                a.terms().iter().fold(RatFun::zero(), |acc, (&j, h)| &acc + &(h * &inner.shift(&int(j))))
            };
            prop_assert_eq!(a.compose(&b).apply_x(&p), chained);
        }
    }
}
