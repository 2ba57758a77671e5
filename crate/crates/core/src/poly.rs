//! Multivector-coefficient polynomials in the n+1 real coordinates.
//!
//! This is the exact backend: operator identities that hold on polynomial
//! fields are checked here with no discretization error, and the quadrature
//! suites evaluate their polynomial test fields through it.

use std::collections::BTreeMap;

use rand::Rng;

use crate::algebra::{Multivector, Point, Scalar};
use crate::convention::Convention;

/// Exponent vector over (y0, y1, ..., yn).
pub type Exponents = Vec<u8>;

#[derive(Clone, Debug)]
pub struct PolyField<S: Scalar = f64> {
    n: u8,
    // Deterministic iteration order matters for reproducible sums.
    terms: BTreeMap<Exponents, Multivector<S>>,
}

impl<S: Scalar> PolyField<S> {
    pub fn zero(n: u8) -> Self {
        PolyField {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(value: Multivector<S>) -> Self {
        let n = value.n();
        let mut p = Self::zero(n);
        p.add_term(vec![0; n as usize + 1], value);
        p
    }

    /// The scalar monomial y_i * e0 (i = 0 is y0).
    pub fn coordinate(n: u8, i: usize) -> Self {
        let mut exps = vec![0u8; n as usize + 1];
        exps[i] = 1;
        let mut p = Self::zero(n);
        p.add_term(exps, Multivector::one(n));
        p
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Multivector<S>)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, exps: Exponents, coeff: Multivector<S>) {
        debug_assert_eq!(exps.len(), self.n as usize + 1);
        match self.terms.get_mut(&exps) {
            Some(c) => *c += &coeff,
            None => {
                self.terms.insert(exps, coeff);
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -&*c;
        }
        out
    }

    pub fn scale(&self, k: f64) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.scale(k);
        }
        out
    }

    /// Multiply every coefficient by `m` from the left.
    pub fn left_mul(&self, m: &Multivector<S>) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = m.mul(c);
        }
        out
    }

    /// Multiply every coefficient by `m` from the right.
    pub fn right_mul(&self, m: &Multivector<S>) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.mul(m);
        }
        out
    }

    /// Polynomial product; coefficient order is preserved (left coefficients
    /// multiply from the left).
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "signature mismatch in polynomial product");
        let mut out = Self::zero(self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exps: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca.mul(cb));
            }
        }
        out
    }

    /// Exact partial derivative with respect to coordinate i (0 = y0).
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut exps = e.clone();
            exps[i] -= 1;
            out.add_term(exps, c.scale(f64::from(e[i])));
        }
        out
    }

    pub fn eval(&self, p: &Point) -> Multivector<S> {
        debug_assert_eq!(p.n(), self.n);
        let mut acc = Multivector::zero(self.n);
        for (e, c) in &self.terms {
            let mut mono = 1.0;
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    mono *= p.coord(i);
                }
            }
            acc += &c.scale(mono);
        }
        acc
    }

    pub fn degree(&self) -> usize {
        self.terms
            .iter()
            .filter(|(_, c)| !c.is_zero(0.0))
            .map(|(e, _)| e.iter().map(|&k| k as usize).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn max_coeff_modulus(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.modulus())
            .fold(0.0, f64::max)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.is_zero(tol))
    }

    /// Drop terms whose coefficient modulus is at most `tol`.
    pub fn prune(&mut self, tol: f64) {
        self.terms.retain(|_, c| !c.is_zero(tol));
    }
}

impl PolyField<f64> {
    /// Random polynomial with independent uniform coefficients for every
    /// blade and every exponent vector of total degree at most `max_degree`.
    pub fn random<R: Rng>(n: u8, max_degree: usize, amplitude: f64, rng: &mut R) -> Self {
        let mut out = Self::zero(n);
        let nvars = n as usize + 1;
        let mut exps = vec![0u8; nvars];
        loop {
            let total: usize = exps.iter().map(|&k| k as usize).sum();
            if total <= max_degree {
                let dim = 1usize << n;
                let coeffs: Vec<f64> = (0..dim)
                    .map(|_| rng.random_range(-amplitude..amplitude))
                    .collect();
                out.add_term(exps.clone(), Multivector::from_coeffs(n, coeffs).unwrap());
            }
            // odometer over exponent vectors bounded by max_degree per slot
            let mut i = 0;
            loop {
                if i == nvars {
                    return out;
                }
                if (exps[i] as usize) < max_degree {
                    exps[i] += 1;
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
        }
    }
}

/// The monomial zeta_j as a polynomial: y0 e_j + s y_j e0 with s the
/// convention sign. These span the degree-one nullspace of D.
pub fn zeta_poly(n: u8, j: usize, conv: Convention) -> PolyField<f64> {
    assert!((1..=n as usize).contains(&j));
    let mut p = PolyField::zero(n);
    let nvars = n as usize + 1;
    let mut e_y0 = vec![0u8; nvars];
    e_y0[0] = 1;
    p.add_term(e_y0, Multivector::basis(n, j));
    let mut e_yj = vec![0u8; nvars];
    e_yj[j] = 1;
    p.add_term(e_yj, Multivector::one(n).scale(conv.zeta_sign()));
    p
}

/// Exact application of D = d/dy0 + sigma sum_j e_j d/dy_j (left action).
pub fn apply_d_exact(p: &PolyField<f64>, conv: Convention) -> PolyField<f64> {
    let n = p.n();
    let mut out = p.partial(0);
    for j in 1..=n as usize {
        let ej = Multivector::basis(n, j);
        out = out.add(&p.partial(j).left_mul(&ej).scale(conv.sigma()));
    }
    out
}

/// Exact application of the conjugate factor d/dy0 - sigma sum_j e_j d/dy_j.
pub fn apply_d_conj_exact(p: &PolyField<f64>, conv: Convention) -> PolyField<f64> {
    let n = p.n();
    let mut out = p.partial(0);
    for j in 1..=n as usize {
        let ej = Multivector::basis(n, j);
        out = out.add(&p.partial(j).left_mul(&ej).scale(-conv.sigma()));
    }
    out
}

/// Exact Laplacian over all n+1 coordinates.
pub fn laplacian_exact(p: &PolyField<f64>) -> PolyField<f64> {
    let n = p.n();
    let mut out = PolyField::zero(n);
    for i in 0..=n as usize {
        out = out.add(&p.partial(i).partial(i));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn eval_and_partial_agree_with_hand_expansion() {
        // p = (2 + e1) * y0 * y1^2
        let n = 2;
        let mut c = Multivector::<f64>::scalar(n, 2.0);
        c.set_coeff(1, 1.0);
        let mut p = PolyField::zero(n);
        p.add_term(vec![1, 2, 0], c.clone());

        let at = Point::new(3.0, &[2.0, -1.0]);
        assert!(p.eval(&at).distance(&c.scale(12.0)) < 1e-14);

        let d1 = p.partial(1); // 2 y0 y1 * c
        assert!(d1.eval(&at).distance(&c.scale(12.0)) < 1e-14);
        let d0 = p.partial(0); // y1^2 * c
        assert!(d0.eval(&at).distance(&c.scale(4.0)) < 1e-14);
    }

    #[test]
    fn product_matches_pointwise_multiplication() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = PolyField::random(2, 2, 1.0, &mut rng);
        let b = PolyField::random(2, 2, 1.0, &mut rng);
        let ab = a.mul(&b);
        for k in 0..5 {
            let p = Point::new(0.1 * k as f64 - 0.2, &[0.3 - 0.1 * k as f64, 0.05 * k as f64]);
            let direct = a.eval(&p).mul(&b.eval(&p));
            assert!(ab.eval(&p).distance(&direct) < 1e-12);
        }
    }

    #[test]
    fn zeta_is_annihilated_by_d_under_both_conventions() {
        for conv in [Convention::Ledger, Convention::Printed] {
            for n in 1..=4u8 {
                for j in 1..=n as usize {
                    let z = zeta_poly(n, j, conv);
                    assert!(
                        apply_d_exact(&z, conv).is_zero(0.0),
                        "D zeta_{j} != 0 at n = {n} under {conv}"
                    );
                }
            }
        }
    }

    #[test]
    fn factorization_on_random_polynomials() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for conv in [Convention::Ledger, Convention::Printed] {
            for n in 1..=3u8 {
                let p = PolyField::random(n, 3, 1.0, &mut rng);
                let lhs = apply_d_conj_exact(&apply_d_exact(&p, conv), conv);
                let rhs = laplacian_exact(&p);
                assert!(lhs.sub(&rhs).is_zero(1e-12), "conj(D) D != Lap at n = {n}");
                let lhs2 = apply_d_exact(&apply_d_conj_exact(&p, conv), conv);
                assert!(lhs2.sub(&rhs).is_zero(1e-12), "D conj(D) != Lap at n = {n}");
            }
        }
    }
}
