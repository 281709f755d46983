use num_traits::Zero;
use serde::Serialize;

use crate::exact_algebra::{format_rational, Rational};
use crate::lattice_ops::LambdaPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub x: Rational,
    pub mass: Rational,
}

impl Atom {
    pub fn new(x: Rational, mass: Rational) -> Self {
        Atom { x, mass }
    }
}

impl Serialize for Atom {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            x: String,
            mass: String,
        }
        Repr { x: format_rational(&self.x), mass: format_rational(&self.mass) }.serialize(serializer)
    }
}

/// A finite signed measure, atoms kept in increasing order of `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct DiscreteMeasure {
    atoms: Vec<Atom>,
}

impl DiscreteMeasure {
    /// Sorts the atoms by position. Panics on a repeated support point.
    pub fn new(mut atoms: Vec<Atom>) -> Self {
        atoms.sort_by(|a, b| a.x.cmp(&b.x));
        assert!(atoms.windows(2).all(|w| w[0].x != w[1].x), "support points must be distinct");
        DiscreteMeasure { atoms }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Mass at `x`, zero off the support.
    pub fn mass_at(&self, x: &Rational) -> Rational {
        self.atoms
            .binary_search_by(|a| a.x.cmp(x))
            .map(|i| self.atoms[i].mass.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn without_zero_atoms(self) -> Self {
        DiscreteMeasure { atoms: self.atoms.into_iter().filter(|a| !a.mass.is_zero()).collect() }
    }

    /// Moves every atom from `x` to `x + c`.
    pub fn translate(&self, c: &Rational) -> Self {
        DiscreteMeasure { atoms: self.atoms.iter().map(|a| Atom::new(&a.x + c, a.mass.clone())).collect() }
    }

    pub fn total_mass(&self) -> Rational {
        self.atoms.iter().map(|a| &a.mass).sum()
    }

    /// `sum_x mass(x) p(lambda(x))`, with `lambda` taken from `p`'s lattice.
    pub fn pair(&self, p: &LambdaPoly) -> Rational {
        self.atoms.iter().map(|a| &a.mass * p.eval_at_x(&a.x)).sum()
    }

    pub fn pair_product(&self, p: &LambdaPoly, q: &LambdaPoly) -> Rational {
        self.atoms.iter().map(|a| &a.mass * p.eval_at_x(&a.x) * q.eval_at_x(&a.x)).sum()
    }

    /// The scalar `c != 0` with `self = c * other` atom by atom, if any.
    /// Atoms of zero mass are treated as absent.
    pub fn proportionality(&self, other: &DiscreteMeasure) -> Option<Rational> {
        let a = self.clone().without_zero_atoms();
        let b = other.clone().without_zero_atoms();
        if a.len() != b.len() {
            return None;
        }
        let mut ratio: Option<Rational> = None;
        for (p, q) in a.atoms.iter().zip(&b.atoms) {
            if p.x != q.x {
                return None;
            }
            let r = &p.mass / &q.mass;
            match &ratio {
                None => ratio = Some(r),
                Some(c) if *c == r => {}
                Some(_) => return None,
            }
        }
        Some(ratio.unwrap_or_else(num_traits::One::one))
    }
}
