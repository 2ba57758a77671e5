//! Finite-difference application of D, its conjugate factor, the perturbed
//! operator D + M, and the Laplacian.
//!
//! Central differences of order two throughout. The exact symbolic
//! counterparts for polynomial fields live in [`crate::poly`] and serve as
//! the oracle for everything here.

use crate::algebra::{Multivector, Point, Scalar};
use crate::convention::Convention;
use crate::error::{Error, Result};
use crate::field::CliffordField;
use crate::transform::MassTerm;

/// Step size for the second-order central stencils.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StencilSpec {
    pub h: f64,
}

impl StencilSpec {
    pub fn new(h: f64) -> Self {
        assert!(h > 0.0, "stencil step must be positive");
        StencilSpec { h }
    }

    pub fn halved(self) -> Self {
        StencilSpec { h: self.h / 2.0 }
    }
}

impl Default for StencilSpec {
    fn default() -> Self {
        StencilSpec { h: 1e-3 }
    }
}

/// Central difference of f along coordinate i (0 = y0).
fn partial_fd<S: Scalar>(
    f: &CliffordField<S>,
    p: &Point,
    i: usize,
    st: StencilSpec,
) -> Multivector<S> {
    let plus = f.eval(&p.with_coord(i, p.coord(i) + st.h));
    let minus = f.eval(&p.with_coord(i, p.coord(i) - st.h));
    (&plus - &minus).scale(1.0 / (2.0 * st.h))
}

/// D f = d0 f + sigma sum_j e_j d_j f, with sigma from the convention and
/// e_j acting by left multiplication.
pub fn apply_d<S: Scalar>(
    f: &CliffordField<S>,
    p: &Point,
    st: StencilSpec,
    conv: Convention,
) -> Multivector<S> {
    let n = f.n();
    let mut acc = partial_fd(f, p, 0, st);
    for j in 1..=n as usize {
        let ej = Multivector::<S>::basis(n, j);
        acc += &ej.mul(&partial_fd(f, p, j, st)).scale(conv.sigma());
    }
    acc
}

/// The conjugate factor: d0 f - sigma sum_j e_j d_j f. Composing it with
/// [`apply_d`] in either order recovers the Laplacian.
pub fn apply_d_conj<S: Scalar>(
    f: &CliffordField<S>,
    p: &Point,
    st: StencilSpec,
    conv: Convention,
) -> Multivector<S> {
    let n = f.n();
    let mut acc = partial_fd(f, p, 0, st);
    for j in 1..=n as usize {
        let ej = Multivector::<S>::basis(n, j);
        acc += &ej.mul(&partial_fd(f, p, j, st)).scale(-conv.sigma());
    }
    acc
}

/// Right-handed D: d0 f + sigma sum_j (d_j f) e_j. Used to verify kernels
/// that are nullsolutions from the right.
pub fn apply_d_right<S: Scalar>(
    f: &CliffordField<S>,
    p: &Point,
    st: StencilSpec,
    conv: Convention,
) -> Multivector<S> {
    let n = f.n();
    let mut acc = partial_fd(f, p, 0, st);
    for j in 1..=n as usize {
        let ej = Multivector::<S>::basis(n, j);
        acc += &partial_fd(f, p, j, st).mul(&ej).scale(conv.sigma());
    }
    acc
}

/// Residual of the perturbed equation: (D + M) f at p.
pub fn apply_perturbed<S: Scalar>(
    f: &CliffordField<S>,
    p: &Point,
    st: StencilSpec,
    mass: &MassTerm,
    conv: Convention,
) -> Multivector<S> {
    let mut acc = apply_d(f, p, st, conv);
    acc += &mass.apply(&f.eval(p));
    acc
}

/// Laplacian over all n+1 coordinates via second central differences.
pub fn laplacian<S: Scalar>(f: &CliffordField<S>, p: &Point, st: StencilSpec) -> Multivector<S> {
    let n = f.n();
    let center = f.eval(p).scale(-2.0);
    let mut acc = Multivector::zero(n);
    for i in 0..=n as usize {
        let plus = f.eval(&p.with_coord(i, p.coord(i) + st.h));
        let minus = f.eval(&p.with_coord(i, p.coord(i) - st.h));
        acc += &(&(&plus + &minus) + &center).scale(1.0 / (st.h * st.h));
    }
    acc
}

/// Laplacian over the spatial coordinates only.
pub fn spatial_laplacian<S: Scalar>(
    f: &CliffordField<S>,
    p: &Point,
    st: StencilSpec,
) -> Multivector<S> {
    let n = f.n();
    let center = f.eval(p).scale(-2.0);
    let mut acc = Multivector::zero(n);
    for i in 1..=n as usize {
        let plus = f.eval(&p.with_coord(i, p.coord(i) + st.h));
        let minus = f.eval(&p.with_coord(i, p.coord(i) - st.h));
        acc += &(&(&plus + &minus) + &center).scale(1.0 / (st.h * st.h));
    }
    acc
}

/// The spatial Dirac part A = sum_j e_j d_j (no sigma, no d0 term).
pub fn spatial_dirac<S: Scalar>(
    f: &CliffordField<S>,
    p: &Point,
    st: StencilSpec,
) -> Multivector<S> {
    let n = f.n();
    let mut acc = Multivector::zero(n);
    for j in 1..=n as usize {
        let ej = Multivector::<S>::basis(n, j);
        acc += &ej.mul(&partial_fd(f, p, j, st));
    }
    acc
}

/// Max residual of the factorization
/// (A + M_lambda)(A - M_lambda) f = -(spatial Laplacian + M_{lambda^2}) f
/// over the given fields and points, via composed finite differences.
pub fn helmholtz_factorization_residual(
    lambda: &Multivector<f64>,
    fields: &[CliffordField<f64>],
    points: &[Point],
    st: StencilSpec,
) -> Result<f64> {
    if fields.is_empty() || points.is_empty() {
        return Err(Error::EmptyInput("helmholtz trial set"));
    }
    let lambda_sq = lambda.mul(lambda);
    let mut worst: f64 = 0.0;
    for f in fields {
        let inner_field = {
            let f = f.clone();
            let lam = lambda.clone();
            CliffordField::from_fn(
                f.n(),
                std::sync::Arc::new(move |q: &Point| {
                    &spatial_dirac(&f, q, st) - &f.eval(q).mul(&lam)
                }),
                crate::field::SolutionClass::Arbitrary,
            )
        };
        for p in points {
            let lhs = &spatial_dirac(&inner_field, p, st) + &inner_field.eval(p).mul(lambda);
            let rhs = -&(&spatial_laplacian(f, p, st) + &f.eval(p).mul(&lambda_sq));
            worst = worst.max(lhs.distance(&rhs));
        }
    }
    Ok(worst)
}

/// Max modulus of (D + M) f over the sample points.
pub fn residual_norm<S: Scalar>(
    f: &CliffordField<S>,
    mass: &MassTerm,
    samples: &[Point],
    st: StencilSpec,
    conv: Convention,
) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::EmptyInput("residual sample set"));
    }
    Ok(samples
        .iter()
        .map(|p| apply_perturbed(f, p, st, mass, conv).modulus())
        .fold(0.0, f64::max))
}

/// Richardson estimate of the residual order: residuals at h and h/2 and
/// log2 of their ratio. `None` when both residuals sit below `floor`.
pub fn residual_order<S: Scalar>(
    f: &CliffordField<S>,
    mass: &MassTerm,
    samples: &[Point],
    st: StencilSpec,
    conv: Convention,
    floor: f64,
) -> Result<(f64, f64, Option<f64>)> {
    let coarse = residual_norm(f, mass, samples, st, conv)?;
    let fine = residual_norm(f, mass, samples, st.halved(), conv)?;
    let order = if coarse <= floor && fine <= floor {
        None
    } else {
        Some((coarse / fine.max(f64::MIN_POSITIVE)).log2())
    };
    Ok((coarse, fine, order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{symmetric_power_field, MultiIndex};
    use crate::field::SolutionClass;
    use crate::poly::PolyField;
    use std::sync::Arc;

    const LEDGER: Convention = Convention::Ledger;
    const ST: StencilSpec = StencilSpec { h: 1e-3 };

    fn identity_field(n: u8) -> CliffordField<f64> {
        CliffordField::from_fn(
            n,
            Arc::new(|p: &Point| p.to_paravector()),
            SolutionClass::Arbitrary,
        )
    }

    #[test]
    fn apply_d_on_constants_and_identity() {
        let n = 3;
        let constant = CliffordField::constant(Multivector::<f64>::one(n));
        let p = Point::new(0.2, &[0.1, -0.3, 0.5]);
        assert!(apply_d(&constant, &p, ST, LEDGER).is_zero(0.0));

        // f(y) = y with sigma = +1: D y = (1 - n) e0
        let id = identity_field(n);
        let got = apply_d(&id, &p, ST, LEDGER);
        assert!(got.distance(&Multivector::scalar(n, 1.0 - f64::from(n))) < 1e-10);

        // conjugate factor: (1 + n) e0
        let got = apply_d_conj(&id, &p, ST, LEDGER);
        assert!(got.distance(&Multivector::scalar(n, 1.0 + f64::from(n))) < 1e-10);
    }

    #[test]
    fn apply_d_annihilates_degree_one_powers() {
        let f = symmetric_power_field(2, &MultiIndex::new(&[1, 0]), LEDGER).unwrap();
        let p = Point::new(0.4, &[0.2, 0.7]);
        // exactly zero: central differences are exact on degree-one fields
        assert!(apply_d(&f, &p, ST, LEDGER).is_zero(1e-12));
    }

    #[test]
    fn laplacian_examples() {
        let n = 2;
        let p = Point::new(0.3, &[0.2, -0.1]);
        let constant = CliffordField::constant(Multivector::<f64>::one(n));
        assert!(laplacian(&constant, &p, ST).is_zero(0.0));

        // harmonic quadratic: y0^2 - y1^2
        let harmonic = {
            let y0 = PolyField::<f64>::coordinate(n, 0);
            let y1 = PolyField::<f64>::coordinate(n, 1);
            CliffordField::from_poly(y0.mul(&y0).sub(&y1.mul(&y1)), SolutionClass::Arbitrary)
        };
        assert!(laplacian(&harmonic, &p, ST).is_zero(1e-9));

        // y0^2 has Laplacian 2
        let square = {
            let y0 = PolyField::<f64>::coordinate(n, 0);
            CliffordField::from_poly(y0.mul(&y0), SolutionClass::Arbitrary)
        };
        assert!(laplacian(&square, &p, ST).distance(&Multivector::scalar(n, 2.0)) < 1e-9);
    }

    #[test]
    fn perturbed_operator_examples() {
        let n = 2;
        let p = Point::new(0.25, &[0.4, -0.2]);
        // M = 0 reduces to D
        let f = symmetric_power_field(n, &MultiIndex::new(&[1, 1]), LEDGER).unwrap();
        let a = apply_perturbed(&f, &p, ST, &MassTerm::Zero, LEDGER);
        let b = apply_d(&f, &p, ST, LEDGER);
        assert_eq!(a.coeffs(), b.coeffs());

        // f(y) = exp(-y0 lambda) c for real lambda is a mass solution
        let lambda = 0.7;
        let c = Multivector::from_coeffs(n, vec![1.0, 0.5, -0.3, 0.2]).unwrap();
        let exp_field = CliffordField::from_fn(
            n,
            Arc::new(move |q: &Point| c.scale((-q.y0 * lambda).exp())),
            SolutionClass::MassSolution(MassTerm::scalar(lambda)),
        );
        let res = apply_perturbed(&exp_field, &p, ST, &MassTerm::scalar(lambda), LEDGER);
        assert!(res.modulus() < 20.0 * ST.h * ST.h, "res = {}", res.modulus());
    }

    #[test]
    fn helmholtz_identity_cases() {
        let n = 2;
        let points: Vec<Point> = vec![
            Point::new(0.1, &[0.3, -0.2]),
            Point::new(-0.2, &[0.05, 0.4]),
        ];
        let mut rng = {
            use rand::SeedableRng;
            rand_chacha::ChaCha8Rng::seed_from_u64(5)
        };
        let quad = CliffordField::from_poly(
            PolyField::random(n, 2, 1.0, &mut rng),
            SolutionClass::Arbitrary,
        );
        let constant = CliffordField::constant(Multivector::<f64>::one(n));

        // lambda = 0: A^2 = -spatial Laplacian, exact on quadratics
        let zero = Multivector::zero(n);
        let res = helmholtz_factorization_residual(&zero, std::slice::from_ref(&quad), &points, ST).unwrap();
        assert!(res < 1e-7, "res = {res}");

        // lambda real on a constant: derivatives vanish, both sides -c lambda^2
        let lam = Multivector::scalar(n, 0.5);
        let res = helmholtz_factorization_residual(&lam, &[constant], &points, ST).unwrap();
        assert!(res < 1e-12, "res = {res}");

        // lambda = e1 on a random quadratic
        let e1 = Multivector::<f64>::basis(n, 1);
        let res = helmholtz_factorization_residual(&e1, &[quad], &points, ST).unwrap();
        assert!(res < 1e-6, "res = {res}");
    }

    #[test]
    fn residual_norm_detects_non_solutions() {
        let n = 2;
        let samples: Vec<Point> = vec![
            Point::new(0.1, &[0.35, -0.15]),
            Point::new(-0.3, &[0.2, 0.25]),
        ];
        // cubic monogenic: order-two decay of the FD truncation error
        let v30 = symmetric_power_field(n, &MultiIndex::new(&[3, 0]), LEDGER).unwrap();
        let (coarse, fine, order) = residual_order(
            &v30,
            &MassTerm::Zero,
            &samples,
            StencilSpec::new(1e-2),
            LEDGER,
            1e-11,
        )
        .unwrap();
        let order = order.expect("truncation error must be visible");
        assert!(coarse > fine);
        assert!((order - 2.0).abs() < 0.1, "order = {order}");

        // non-solution stays bounded away from zero as h shrinks
        let nonsol = CliffordField::from_poly(
            {
                let y1 = PolyField::<f64>::coordinate(n, 1);
                y1.mul(&y1)
            },
            SolutionClass::Arbitrary,
        );
        let r1 = residual_norm(&nonsol, &MassTerm::Zero, &samples, StencilSpec::new(1e-2), LEDGER)
            .unwrap();
        let r2 = residual_norm(&nonsol, &MassTerm::Zero, &samples, StencilSpec::new(1e-3), LEDGER)
            .unwrap();
        assert!(r1 > 0.1 && r2 > 0.1);
        assert!((r1 - r2).abs() < 0.05 * r1);

        assert!(matches!(
            residual_norm(&nonsol, &MassTerm::Zero, &[], ST, LEDGER),
            Err(Error::EmptyInput(_))
        ));
    }
}
