//! Mass terms and the exponential intertwining transform.
//!
//! An M-solution is a field with (D + M)f = 0, where M is zero or right
//! multiplication by a Clifford number lambda. The exponential e^{y0 M} maps
//! M-solutions bijectively onto nullsolutions of D, and composing two such
//! exponentials carries M1-solutions to M2-solutions. That transform is the
//! backbone of every deformed integral theorem in this crate: each one is the
//! classical theorem conjugated by e^{y0 M}.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{Multivector, Point, Scalar};
use crate::error::{Error, Result};
use crate::field::{CliffordField, SolutionClass};

/// The commuting perturbation M: zero, or multiplication from the right by a
/// Clifford number (the scalar case kept distinguished).
#[derive(Clone, Debug, PartialEq)]
pub enum MassTerm {
    Zero,
    RightScalar(f64),
    RightClifford(Multivector<f64>),
}

impl MassTerm {
    /// Scalar constructor; normalizes lambda = 0 to `Zero`.
    pub fn scalar(lambda: f64) -> Self {
        if lambda == 0.0 {
            MassTerm::Zero
        } else {
            MassTerm::RightScalar(lambda)
        }
    }

    /// Clifford constructor; normalizes pure-scalar multivectors down to the
    /// scalar variant (and further to `Zero`).
    pub fn clifford(lambda: Multivector<f64>) -> Self {
        if lambda.grade(0).distance(&lambda) == 0.0 {
            Self::scalar(lambda.scalar_part())
        } else {
            MassTerm::RightClifford(lambda)
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, MassTerm::Zero)
    }

    /// Apply M itself: v -> v lambda.
    pub fn apply<S: Scalar>(&self, v: &Multivector<S>) -> Multivector<S> {
        match self {
            MassTerm::Zero => Multivector::zero(v.n()),
            MassTerm::RightScalar(l) => v.scale(*l),
            MassTerm::RightClifford(l) => v.mul(&cast(l)),
        }
    }

    /// The Clifford number exp(t lambda), i.e. the value of e^{t M} on e0.
    pub fn exp_factor(&self, t: f64, n: u8) -> Result<Multivector<f64>> {
        match self {
            MassTerm::Zero => Ok(Multivector::one(n)),
            MassTerm::RightScalar(l) => Ok(Multivector::scalar(n, (t * l).exp())),
            MassTerm::RightClifford(l) => l.scale(t).clifford_exp(),
        }
    }

    /// e^{t M} v. For right multiplications this is v * exp(t lambda); the
    /// exponential of lambda commutes with lambda itself, so the operator
    /// power series collapses to a single Clifford factor.
    pub fn exp_mass<S: Scalar>(&self, t: f64, v: &Multivector<S>) -> Multivector<S> {
        match self {
            MassTerm::Zero => v.clone(),
            MassTerm::RightScalar(l) => v.scale((t * l).exp()),
            MassTerm::RightClifford(l) => {
                let factor = l
                    .scale(t)
                    .clifford_exp()
                    .expect("entire series: cannot fail on finite input");
                v.mul(&cast(&factor))
            }
        }
    }

    /// Two right multiplications commute exactly when their Clifford numbers
    /// do.
    pub fn commutes_with(&self, other: &MassTerm) -> bool {
        match (self, other) {
            (MassTerm::RightClifford(a), MassTerm::RightClifford(b)) => {
                a.mul(b).distance(&b.mul(a)) <= 1e-14 * (1.0 + a.modulus() * b.modulus())
            }
            _ => true,
        }
    }

    /// Generator count of a Clifford-valued term, if any.
    pub fn n(&self) -> Option<u8> {
        match self {
            MassTerm::RightClifford(l) => Some(l.n()),
            _ => None,
        }
    }

    /// Parse "0", a single real, or a comma-separated blade coefficient list
    /// (bitmask order, zero-padded to 2^n entries).
    pub fn parse(text: &str, n: u8) -> Result<Self> {
        let parts: Vec<&str> = text.split(',').collect();
        let values: Vec<f64> = parts
            .iter()
            .map(|p| {
                p.trim().parse::<f64>().map_err(|e| Error::Parse {
                    what: "mass term",
                    detail: format!("'{p}': {e}"),
                })
            })
            .collect::<Result<_>>()?;
        if values.len() == 1 {
            return Ok(Self::scalar(values[0]));
        }
        let dim = 1usize << n;
        if values.len() > dim {
            return Err(Error::Parse {
                what: "mass term",
                detail: format!("{} coefficients exceed 2^{n} = {dim}", values.len()),
            });
        }
        let mut coeffs = values;
        coeffs.resize(dim, 0.0);
        Ok(Self::clifford(Multivector::from_coeffs(n, coeffs)?))
    }
}

impl fmt::Display for MassTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MassTerm::Zero => write!(f, "0"),
            MassTerm::RightScalar(l) => write!(f, "{l}"),
            MassTerm::RightClifford(l) => write!(f, "{l}"),
        }
    }
}

fn cast<S: Scalar>(m: &Multivector<f64>) -> Multivector<S> {
    let mut out = Multivector::zero(m.n());
    for (mask, &c) in m.coeffs().iter().enumerate() {
        out.set_coeff(mask, S::from_re(c));
    }
    out
}

/// Ordered pair of mass terms for the intertwining transform.
#[derive(Clone, Debug, PartialEq)]
pub struct TransformSpec {
    pub from_mass: MassTerm,
    pub to_mass: MassTerm,
}

impl TransformSpec {
    pub fn new(from_mass: MassTerm, to_mass: MassTerm) -> Self {
        TransformSpec { from_mass, to_mass }
    }
}

/// Carry an M1-solution to an M2-solution:
/// g(y) = e^{-y0 M2} e^{+y0 M1} f(y).
///
/// The inner exponential lands f in the nullspace of D; the outer one pulls
/// the result back into the M2 class. The two factors are applied in this
/// fixed order; when M1 and M2 commute the composite transforms satisfy the
/// expected group law.
pub fn intertwine<S: Scalar>(f: &CliffordField<S>, spec: &TransformSpec) -> CliffordField<S> {
    let f = f.clone();
    let from = spec.from_mass.clone();
    let to = spec.to_mass.clone();
    let n = f.n();
    let class = SolutionClass::MassSolution(to.clone());
    CliffordField::from_fn(
        n,
        Arc::new(move |y: &Point| {
            let inner = from.exp_mass(y.y0, &f.eval(y));
            to.exp_mass(-y.y0, &inner)
        }),
        class,
    )
}

/// e^{+y0 M} f: maps an M-solution into the nullspace of D.
pub fn to_monogenic<S: Scalar>(f: &CliffordField<S>, mass: &MassTerm) -> CliffordField<S> {
    let mut g = intertwine(f, &TransformSpec::new(mass.clone(), MassTerm::Zero));
    g.set_class(SolutionClass::Monogenic);
    g
}

/// e^{-y0 M} g: exact inverse of [`to_monogenic`].
pub fn from_monogenic<S: Scalar>(g: &CliffordField<S>, mass: &MassTerm) -> CliffordField<S> {
    intertwine(g, &TransformSpec::new(MassTerm::Zero, mass.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn normalization_rules() {
        assert_eq!(MassTerm::scalar(0.0), MassTerm::Zero);
        let scalar_mv = Multivector::scalar(2, 0.7);
        assert_eq!(MassTerm::clifford(scalar_mv), MassTerm::RightScalar(0.7));
        let e1 = Multivector::<f64>::basis(2, 1);
        assert!(matches!(
            MassTerm::clifford(e1.scale(0.3)),
            MassTerm::RightClifford(_)
        ));
    }

    #[test]
    fn exp_mass_examples() {
        let n = 2;
        let v = Multivector::from_coeffs(n, vec![1.0, -0.5, 2.0, 0.25]).unwrap();

        // t = 0 is the identity
        let m = MassTerm::scalar(0.8);
        assert_eq!(m.exp_mass(0.0, &v), v);

        // real lambda: left and right scalar multiplication coincide
        let t = 0.4;
        let expect = v.scale((t * 0.8f64).exp());
        assert!(m.exp_mass(t, &v).distance(&expect) < 1e-14);

        // lambda = e1, t = pi/2: exp factor is cos(pi/2) + sin(pi/2) e1 = e1
        let me1 = MassTerm::clifford(Multivector::basis(n, 1));
        let got = me1.exp_mass(FRAC_PI_2, &Multivector::<f64>::one(n));
        assert!(got.distance(&Multivector::basis(n, 1)) < 1e-14);
    }

    #[test]
    fn exp_mass_is_right_multiplication_by_exp_factor() {
        let n = 3;
        let lam = Multivector::from_coeffs(n, {
            let mut c = vec![0.0; 8];
            c[0] = 0.2;
            c[1] = -0.5;
            c[3] = 0.3;
            c
        })
        .unwrap();
        let m = MassTerm::clifford(lam.clone());
        let v = Multivector::from_coeffs(n, vec![1.0, 0.5, -0.25, 2.0, 0.1, 0.0, -1.0, 0.4]).unwrap();
        let t = -0.7;
        let direct = m.exp_mass(t, &v);
        let factored = v.mul(&m.exp_factor(t, n).unwrap());
        assert!(direct.distance(&factored) < 1e-13);
    }

    #[test]
    fn parse_forms() {
        assert_eq!(MassTerm::parse("0", 2).unwrap(), MassTerm::Zero);
        assert_eq!(MassTerm::parse("0.5", 2).unwrap(), MassTerm::RightScalar(0.5));
        let m = MassTerm::parse("0,0.3", 2).unwrap();
        assert_eq!(
            m,
            MassTerm::RightClifford(Multivector::basis(2, 1).scale(0.3))
        );
        assert!(MassTerm::parse("1,2,3,4,5", 2).is_err());
        assert!(MassTerm::parse("abc", 2).is_err());
    }

    #[test]
    fn commutation() {
        let e1 = MassTerm::clifford(Multivector::basis(2, 1).scale(0.3));
        let e2 = MassTerm::clifford(Multivector::basis(2, 2).scale(0.4));
        let s = MassTerm::scalar(0.5);
        assert!(e1.commutes_with(&e1));
        assert!(e1.commutes_with(&s));
        assert!(!e1.commutes_with(&e2));
    }

    #[test]
    fn intertwine_examples() {
        use crate::basis::{symmetric_power_field, MultiIndex};
        use crate::convention::Convention;
        use crate::operators::{residual_norm, StencilSpec};

        let n = 2;
        let conv = Convention::Ledger;
        let st = StencilSpec::new(1e-3);
        let samples = vec![
            Point::new(0.1, &[0.2, -0.1]),
            Point::new(-0.2, &[0.05, 0.3]),
        ];
        let v11 = symmetric_power_field(n, &MultiIndex::new(&[1, 1]), conv).unwrap();

        // equal masses act as the identity
        let m = MassTerm::scalar(0.7);
        let id = intertwine(&v11, &TransformSpec::new(m.clone(), m.clone()));
        for p in &samples {
            assert!(id.eval(p).distance(&v11.eval(p)) < 1e-12);
        }

        // a nullsolution of D pushed to the mass class solves (D + M)f = 0
        let mass = MassTerm::scalar(0.5);
        let g = intertwine(&v11, &TransformSpec::new(MassTerm::Zero, mass.clone()));
        assert!(matches!(g.declared_class(), crate::field::SolutionClass::MassSolution(_)));
        let res = residual_norm(&g, &mass, &samples, st, conv).unwrap();
        assert!(res < 1e-6, "residual {res}");

        // round trip is pointwise the identity
        let back = intertwine(&g, &TransformSpec::new(mass.clone(), MassTerm::Zero));
        for p in &samples {
            assert!(back.eval(p).distance(&v11.eval(p)) < 1e-12);
        }

        // to_monogenic / from_monogenic are the two transform legs
        let f = from_monogenic(&v11, &mass);
        let lifted = to_monogenic(&f, &mass);
        for p in &samples {
            assert!(lifted.eval(p).distance(&v11.eval(p)) < 1e-12);
            assert!(f.eval(p).distance(&g.eval(p)) < 1e-14);
        }
    }
}
