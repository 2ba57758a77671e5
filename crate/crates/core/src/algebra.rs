//! Dense arithmetic of the Clifford algebra Cl(0,n).
//!
//! A multivector is stored as 2^n coefficients indexed by blade bitmask:
//! bit j-1 set means the generator e_j is present, mask 0 is the identity
//! blade e0. Generators square to -1 and anticommute pairwise. Coefficients
//! are real by default; a complex scalar mode (a commuting imaginary unit
//! independent of the generators) exists for the plane-wave constructions.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest supported generator count. The dense 2^n layout keeps products
/// O(4^n), which is trivial at this scale and exhaustively testable.
pub const MAX_GENERATORS: u8 = 6;

const EXP_TOL: f64 = 1e-15;
const EXP_MAX_TERMS: usize = 200;

/// Coefficient field of a multivector: `f64` or `Complex64`.
pub trait Scalar:
    Copy
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_re(x: f64) -> Self;
    fn scale(self, k: f64) -> Self;
    fn abs_sq(self) -> f64;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_re(x: f64) -> Self {
        x
    }
    fn scale(self, k: f64) -> Self {
        self * k
    }
    fn abs_sq(self) -> f64 {
        self * self
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_re(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn scale(self, k: f64) -> Self {
        self * k
    }
    fn abs_sq(self) -> f64 {
        self.norm_sqr()
    }
}

/// Product of two basis blades under e_j^2 = -1, e_i e_j = -e_j e_i.
///
/// Returns the sign and the bitmask of the resulting blade. Total on all
/// valid masks (`mask < 2^n`). The sign counts the transpositions needed to
/// interleave the two sorted generator lists, plus one factor of -1 per
/// generator common to both blades.
pub fn blade_product(mask_a: usize, mask_b: usize, n: u8) -> (i32, usize) {
    debug_assert!(mask_a < (1usize << n) && mask_b < (1usize << n));
    // Transpositions: for every generator in b, count the generators of a
    // strictly above it that it must move past.
    let mut swaps = 0u32;
    let mut upper = mask_a >> 1;
    while upper != 0 {
        swaps += (upper & mask_b).count_ones();
        upper >>= 1;
    }
    // Each repeated generator contributes e_j e_j = -1.
    swaps += (mask_a & mask_b).count_ones();
    let sign = if swaps.is_multiple_of(2) { 1 } else { -1 };
    (sign, mask_a ^ mask_b)
}

/// Element of Cl(0,n) in the dense blade-coefficient representation.
#[derive(Clone, PartialEq)]
pub struct Multivector<S: Scalar = f64> {
    n: u8,
    coeffs: Vec<S>,
}

impl<S: Scalar> Multivector<S> {
    pub fn zero(n: u8) -> Self {
        assert!(
            (1..=MAX_GENERATORS).contains(&n),
            "generator count {n} outside 1..={MAX_GENERATORS}"
        );
        Multivector {
            n,
            coeffs: vec![S::zero(); 1 << n],
        }
    }

    pub fn scalar(n: u8, value: S) -> Self {
        let mut m = Self::zero(n);
        m.coeffs[0] = value;
        m
    }

    /// The identity blade e0.
    pub fn one(n: u8) -> Self {
        Self::scalar(n, S::one())
    }

    /// Basis generator e_j for 1 <= j <= n; j = 0 yields the identity.
    pub fn basis(n: u8, j: usize) -> Self {
        assert!(j <= n as usize, "generator index {j} exceeds n = {n}");
        let mask = if j == 0 { 0 } else { 1usize << (j - 1) };
        Self::blade(n, mask, S::one())
    }

    pub fn blade(n: u8, mask: usize, coeff: S) -> Self {
        let mut m = Self::zero(n);
        assert!(mask < m.coeffs.len(), "blade mask {mask} out of range");
        m.coeffs[mask] = coeff;
        m
    }

    pub fn from_coeffs(n: u8, coeffs: Vec<S>) -> Result<Self> {
        if !(1..=MAX_GENERATORS).contains(&n) {
            return Err(Error::UnsupportedDimension(n));
        }
        if coeffs.len() != 1 << n {
            return Err(Error::Parse {
                what: "multivector coefficients",
                detail: format!("expected {} coefficients, got {}", 1usize << n, coeffs.len()),
            });
        }
        Ok(Multivector { n, coeffs })
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, mask: usize) -> S {
        self.coeffs[mask]
    }

    pub fn set_coeff(&mut self, mask: usize, value: S) {
        self.coeffs[mask] = value;
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn scalar_part(&self) -> S {
        self.coeffs[0]
    }

    /// Geometric (Clifford) product. Panics on mismatched signatures; use
    /// [`checked_mul`](Self::checked_mul) where the mismatch is an input error.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(
            self.n, rhs.n,
            "signature mismatch: Cl(0,{}) * Cl(0,{})",
            self.n, rhs.n
        );
        let mut out = Self::zero(self.n);
        for (a, &ca) in self.coeffs.iter().enumerate() {
            if ca == S::zero() {
                continue;
            }
            for (b, &cb) in rhs.coeffs.iter().enumerate() {
                if cb == S::zero() {
                    continue;
                }
                let (sign, mask) = blade_product(a, b, self.n);
                let term = ca * cb;
                out.coeffs[mask] += if sign > 0 { term } else { -term };
            }
        }
        out
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.n != rhs.n {
            return Err(Error::SignatureMismatch {
                left: self.n,
                right: rhs.n,
            });
        }
        Ok(self.mul(rhs))
    }

    /// Clifford conjugation: a grade-k blade picks up the sign (-1)^{k(k+1)/2}.
    /// Anti-automorphism; on paravectors it negates the vector part.
    pub fn conjugate(&self) -> Self {
        let mut out = self.clone();
        for (mask, c) in out.coeffs.iter_mut().enumerate() {
            let k = mask.count_ones() as usize;
            if (k * (k + 1) / 2) % 2 == 1 {
                *c = -*c;
            }
        }
        out
    }

    /// Projection onto the grade-k part.
    pub fn grade(&self, k: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (mask, &c) in self.coeffs.iter().enumerate() {
            if mask.count_ones() as usize == k {
                out.coeffs[mask] = c;
            }
        }
        out
    }

    /// Coefficient 2-norm. Not submultiplicative under the Clifford product;
    /// the safe bound is modulus(ab) <= 2^{n/2} modulus(a) modulus(b).
    pub fn modulus(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.abs_sq())
            .sum::<f64>()
            .sqrt()
    }

    pub fn scale(&self, k: f64) -> Self {
        let mut out = self.clone();
        for c in &mut out.coeffs {
            *c = c.scale(k);
        }
        out
    }

    pub fn mul_scalar(&self, s: S) -> Self {
        let mut out = self.clone();
        for c in &mut out.coeffs {
            *c = *c * s;
        }
        out
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.abs_sq() <= tol * tol)
    }

    /// True when only grade-0 and grade-1 blades carry weight above `tol`.
    pub fn is_paravector(&self, tol: f64) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(mask, c)| mask.count_ones() <= 1 || c.abs_sq() <= tol * tol)
    }

    pub fn distance(&self, rhs: &Self) -> f64 {
        (self - rhs).modulus()
    }

    /// Power-series exponential, summed until the additive term's modulus
    /// drops below tol * (1 + modulus of the accumulated sum). The series is
    /// entire, so this terminates for every finite input.
    pub fn clifford_exp(&self) -> Result<Self> {
        self.clifford_exp_with(EXP_TOL, EXP_MAX_TERMS)
    }

    pub fn clifford_exp_with(&self, tol: f64, max_terms: usize) -> Result<Self> {
        let mut acc = Self::one(self.n);
        let mut term = Self::one(self.n);
        for j in 1..=max_terms {
            term = term.mul(self).scale(1.0 / j as f64);
            acc = &acc + &term;
            if term.modulus() <= tol * (1.0 + acc.modulus()) {
                return Ok(acc);
            }
        }
        Err(Error::ExpNoConvergence {
            max_terms,
            last_term: term.modulus(),
        })
    }

}

impl Multivector<f64> {
    /// The matrix of left multiplication v -> m v on blade coefficients.
    /// `result[row][col]` is the row-th coefficient of m * e_col.
    pub fn left_mul_matrix(&self) -> Vec<Vec<f64>> {
        let dim = self.dim();
        let mut mat = vec![vec![0.0; dim]; dim];
        for (a, &ca) in self.coeffs.iter().enumerate() {
            if ca == 0.0 {
                continue;
            }
            for col in 0..dim {
                let (sign, mask) = blade_product(a, col, self.n);
                mat[mask][col] += sign as f64 * ca;
            }
        }
        mat
    }

    /// Inverse of a nonzero paravector: conjugate(y) / modulus(y)^2.
    pub fn inverse_paravector(&self) -> Result<Self> {
        if !self.is_paravector(0.0) {
            return Err(Error::NotParavector);
        }
        let m2 = self.modulus();
        if m2 == 0.0 {
            return Err(Error::ZeroParavector);
        }
        Ok(self.conjugate().scale(1.0 / (m2 * m2)))
    }

    /// Promote real coefficients to the complex scalar mode.
    pub fn to_complex(&self) -> Multivector<Complex64> {
        Multivector {
            n: self.n,
            coeffs: self.coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect(),
        }
    }
}

impl<S: Scalar> Add for &Multivector<S> {
    type Output = Multivector<S>;
    fn add(self, rhs: &Multivector<S>) -> Multivector<S> {
        assert_eq!(self.n, rhs.n, "signature mismatch in addition");
        let mut out = self.clone();
        for (c, &r) in out.coeffs.iter_mut().zip(&rhs.coeffs) {
            *c += r;
        }
        out
    }
}

impl<S: Scalar> Sub for &Multivector<S> {
    type Output = Multivector<S>;
    fn sub(self, rhs: &Multivector<S>) -> Multivector<S> {
        assert_eq!(self.n, rhs.n, "signature mismatch in subtraction");
        let mut out = self.clone();
        for (c, &r) in out.coeffs.iter_mut().zip(&rhs.coeffs) {
            *c = *c - r;
        }
        out
    }
}

impl<S: Scalar> Neg for &Multivector<S> {
    type Output = Multivector<S>;
    fn neg(self) -> Multivector<S> {
        let mut out = self.clone();
        for c in &mut out.coeffs {
            *c = -*c;
        }
        out
    }
}

impl<S: Scalar> Add for Multivector<S> {
    type Output = Multivector<S>;
    fn add(self, rhs: Multivector<S>) -> Multivector<S> {
        &self + &rhs
    }
}

impl<S: Scalar> Sub for Multivector<S> {
    type Output = Multivector<S>;
    fn sub(self, rhs: Multivector<S>) -> Multivector<S> {
        &self - &rhs
    }
}

impl<S: Scalar> Mul for &Multivector<S> {
    type Output = Multivector<S>;
    fn mul(self, rhs: &Multivector<S>) -> Multivector<S> {
        Multivector::mul(self, rhs)
    }
}

impl<S: Scalar> AddAssign<&Multivector<S>> for Multivector<S> {
    fn add_assign(&mut self, rhs: &Multivector<S>) {
        assert_eq!(self.n, rhs.n, "signature mismatch in addition");
        for (c, &r) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *c += r;
        }
    }
}

impl<S: Scalar> fmt::Debug for Multivector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<S: Scalar> fmt::Display for Multivector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (mask, c) in self.coeffs.iter().enumerate() {
            if c.abs_sq() == 0.0 {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            if mask == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})*e")?;
                for j in 0..self.n {
                    if mask & (1 << j) != 0 {
                        write!(f, "{}", j + 1)?;
                    }
                }
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A point (y0, y1, ..., yn) of R^{n+1}, embeddable as a paravector.
#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    pub y0: f64,
    pub spatial: Vec<f64>,
}

impl Point {
    pub fn new(y0: f64, spatial: &[f64]) -> Self {
        Point {
            y0,
            spatial: spatial.to_vec(),
        }
    }

    pub fn origin(n: u8) -> Self {
        Point {
            y0: 0.0,
            spatial: vec![0.0; n as usize],
        }
    }

    pub fn from_coords(coords: &[f64]) -> Self {
        assert!(!coords.is_empty(), "a point needs at least one coordinate");
        Point {
            y0: coords[0],
            spatial: coords[1..].to_vec(),
        }
    }

    /// Number of spatial coordinates (the generator count it pairs with).
    pub fn n(&self) -> u8 {
        self.spatial.len() as u8
    }

    /// Coordinate by index, 0 being y0.
    pub fn coord(&self, i: usize) -> f64 {
        if i == 0 {
            self.y0
        } else {
            self.spatial[i - 1]
        }
    }

    pub fn with_coord(&self, i: usize, value: f64) -> Self {
        let mut p = self.clone();
        if i == 0 {
            p.y0 = value;
        } else {
            p.spatial[i - 1] = value;
        }
        p
    }

    pub fn coords(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(self.spatial.len() + 1);
        v.push(self.y0);
        v.extend_from_slice(&self.spatial);
        v
    }

    pub fn add(&self, rhs: &Point) -> Point {
        Point {
            y0: self.y0 + rhs.y0,
            spatial: self
                .spatial
                .iter()
                .zip(&rhs.spatial)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Point) -> Point {
        Point {
            y0: self.y0 - rhs.y0,
            spatial: self
                .spatial
                .iter()
                .zip(&rhs.spatial)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, k: f64) -> Point {
        Point {
            y0: self.y0 * k,
            spatial: self.spatial.iter().map(|x| x * k).collect(),
        }
    }

    pub fn norm(&self) -> f64 {
        (self.y0 * self.y0 + self.spatial.iter().map(|x| x * x).sum::<f64>()).sqrt()
    }

    pub fn dot(&self, rhs: &Point) -> f64 {
        self.y0 * rhs.y0
            + self
                .spatial
                .iter()
                .zip(&rhs.spatial)
                .map(|(a, b)| a * b)
                .sum::<f64>()
    }

    /// Paravector embedding y0 e0 + sum_j y_j e_j.
    pub fn to_paravector(&self) -> Multivector<f64> {
        embed_point(self)
    }
}

/// Paravector embedding of a point: y0 e0 + sum_j y_j e_j.
pub fn embed_point(p: &Point) -> Multivector<f64> {
    let n = p.n();
    let mut m = Multivector::zero(n);
    m.set_coeff(0, p.y0);
    for (j, &v) in p.spatial.iter().enumerate() {
        m.set_coeff(1 << j, v);
    }
    m
}
