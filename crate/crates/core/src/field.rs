//! Evaluatable Clifford-valued fields.

use std::sync::Arc;

use crate::algebra::{Multivector, Point, Scalar};
use crate::poly::PolyField;
use crate::transform::MassTerm;

/// Declared solution class of a field. Advisory metadata only: the suites
/// verify it, never assume it.
#[derive(Clone, Debug, PartialEq)]
pub enum SolutionClass {
    Monogenic,
    MassSolution(MassTerm),
    Arbitrary,
}

type DynEval<S> = Arc<dyn Fn(&Point) -> Multivector<S> + Send + Sync>;

#[derive(Clone)]
enum Repr<S: Scalar> {
    Poly(Arc<PolyField<S>>),
    Dynamic(DynEval<S>),
}

/// A function from points of R^{n+1} into Cl(0,n). Immutable once built and
/// safe to evaluate concurrently.
#[derive(Clone)]
pub struct CliffordField<S: Scalar = f64> {
    n: u8,
    repr: Repr<S>,
    class: SolutionClass,
}

impl<S: Scalar> CliffordField<S> {
    pub fn from_poly(poly: PolyField<S>, class: SolutionClass) -> Self {
        CliffordField {
            n: poly.n(),
            repr: Repr::Poly(Arc::new(poly)),
            class,
        }
    }

    pub fn from_fn(n: u8, eval: DynEval<S>, class: SolutionClass) -> Self {
        CliffordField {
            n,
            repr: Repr::Dynamic(eval),
            class,
        }
    }

    pub fn constant(value: Multivector<S>) -> Self {
        Self::from_poly(PolyField::constant(value), SolutionClass::Monogenic)
    }

    pub fn eval(&self, p: &Point) -> Multivector<S> {
        match &self.repr {
            Repr::Poly(poly) => poly.eval(p),
            Repr::Dynamic(f) => f(p),
        }
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn declared_class(&self) -> &SolutionClass {
        &self.class
    }

    pub fn set_class(&mut self, class: SolutionClass) {
        self.class = class;
    }

    pub fn with_class(mut self, class: SolutionClass) -> Self {
        self.class = class;
        self
    }

    /// The exact polynomial behind this field, when it has one.
    pub fn as_poly(&self) -> Option<&PolyField<S>> {
        match &self.repr {
            Repr::Poly(p) => Some(p),
            Repr::Dynamic(_) => None,
        }
    }

    /// Pointwise sum of two fields.
    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        let a = self.clone();
        let b = rhs.clone();
        CliffordField::from_fn(
            self.n,
            Arc::new(move |p: &Point| &a.eval(p) + &b.eval(p)),
            SolutionClass::Arbitrary,
        )
    }
}

impl<S: Scalar> std::fmt::Debug for CliffordField<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let kind = match &self.repr {
            Repr::Poly(_) => "poly",
            Repr::Dynamic(_) => "dynamic",
        };
        write!(f, "CliffordField<n={}, {kind}, {:?}>", self.n, self.class)
    }
}
