//! Closed-form solution families used as ground truth by every suite:
//! degree-one monomials zeta_j, their symmetric powers V_beta, Taylor series
//! with a mass factor, plane waves, and the lambda-linear differentiability
//! fit.

use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;

use crate::algebra::{Multivector, Point, Scalar};
use crate::convention::Convention;
use crate::error::{Error, Result};
use crate::field::{CliffordField, SolutionClass};
use crate::poly::{zeta_poly, PolyField};
use crate::transform::MassTerm;

/// Hard cap on symmetric-product arity (the permutation sum is brute force).
pub const MAX_SYMMETRIC_FACTORS: usize = 8;

/// Multi-index beta over the n monomial directions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(pub Vec<u8>);

impl MultiIndex {
    pub fn new(entries: &[u8]) -> Self {
        MultiIndex(entries.to_vec())
    }

    pub fn zero(n: u8) -> Self {
        MultiIndex(vec![0; n as usize])
    }

    pub fn order(&self) -> usize {
        self.0.iter().map(|&k| k as usize).sum()
    }

    pub fn n(&self) -> u8 {
        self.0.len() as u8
    }

    /// All multi-indices over n directions with total order exactly `order`.
    pub fn with_order(n: u8, order: usize) -> Vec<MultiIndex> {
        fn rec(slots: usize, left: usize, prefix: &mut Vec<u8>, out: &mut Vec<MultiIndex>) {
            if slots == 1 {
                let mut full = prefix.clone();
                full.push(left as u8);
                out.push(MultiIndex(full));
                return;
            }
            for k in 0..=left {
                prefix.push(k as u8);
                rec(slots - 1, left - k, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(n as usize, order, &mut Vec::new(), &mut out);
        out
    }

    pub fn label(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        format!("({})", parts.join(","))
    }
}

/// The degree-one monomial zeta_j evaluated at a point:
/// y0 e_j + s y_j e0 with s the convention sign.
pub fn zeta(j: usize, p: &Point, conv: Convention) -> Result<Multivector<f64>> {
    let n = p.n();
    if j == 0 || j > n as usize {
        return Err(Error::IndexOutOfRange { index: j, n });
    }
    let mut m = Multivector::basis(n, j).scale(p.y0);
    m.set_coeff(0, conv.zeta_sign() * p.spatial[j - 1]);
    Ok(m)
}

/// The k!-averaged product over all orderings of the factor list.
pub fn symmetric_product<S: Scalar>(factors: &[Multivector<S>]) -> Result<Multivector<S>> {
    if factors.is_empty() {
        return Err(Error::EmptyInput("symmetric product factor list"));
    }
    if factors.len() > MAX_SYMMETRIC_FACTORS {
        return Err(Error::SymmetricProductSize {
            got: factors.len(),
            limit: MAX_SYMMETRIC_FACTORS,
        });
    }
    let n = factors[0].n();
    let k = factors.len();
    let mut used = vec![false; k];
    let mut acc = Multivector::zero(n);
    let mut count = 0usize;
    // Depth-first over orderings with shared prefix products.
    fn rec<S: Scalar>(
        factors: &[Multivector<S>],
        used: &mut [bool],
        prefix: &Multivector<S>,
        depth: usize,
        acc: &mut Multivector<S>,
        count: &mut usize,
    ) {
        if depth == factors.len() {
            *acc += prefix;
            *count += 1;
            return;
        }
        for i in 0..factors.len() {
            if used[i] {
                continue;
            }
            used[i] = true;
            let next = prefix.mul(&factors[i]);
            rec(factors, used, &next, depth + 1, acc, count);
            used[i] = false;
        }
    }
    rec(
        factors,
        &mut used,
        &Multivector::one(n),
        0,
        &mut acc,
        &mut count,
    );
    Ok(acc.scale(1.0 / count as f64))
}

/// Symmetric product of polynomial factors given as (factor, multiplicity)
/// pairs. Enumerates distinct orderings only; each one stands for
/// prod(multiplicity!) equal permutations.
pub fn symmetric_product_poly(
    factors: &[(PolyField<f64>, usize)],
) -> Result<PolyField<f64>> {
    let total: usize = factors.iter().map(|(_, m)| m).sum();
    if total == 0 {
        return Err(Error::EmptyInput("symmetric product factor list"));
    }
    if total > MAX_SYMMETRIC_FACTORS {
        return Err(Error::SymmetricProductSize {
            got: total,
            limit: MAX_SYMMETRIC_FACTORS,
        });
    }
    let n = factors[0].0.n();
    let mut counts: Vec<usize> = factors.iter().map(|(_, m)| *m).collect();
    let mut acc = PolyField::zero(n);
    let mut distinct = 0usize;
    fn rec(
        factors: &[(PolyField<f64>, usize)],
        counts: &mut [usize],
        prefix: &PolyField<f64>,
        left: usize,
        acc: &mut PolyField<f64>,
        distinct: &mut usize,
    ) {
        if left == 0 {
            *acc = acc.add(prefix);
            *distinct += 1;
            return;
        }
        for i in 0..factors.len() {
            if counts[i] == 0 {
                continue;
            }
            counts[i] -= 1;
            let next = prefix.mul(&factors[i].0);
            rec(factors, counts, &next, left - 1, acc, distinct);
            counts[i] += 1;
        }
    }
    rec(
        factors,
        &mut counts,
        &PolyField::constant(Multivector::one(n)),
        total,
        &mut acc,
        &mut distinct,
    );
    // distinct orderings each represent prod(counts!) identical terms:
    // (prod m_i!) * distinct = total!, so dividing by `distinct` averages.
    let mut out = acc.scale(1.0 / distinct as f64);
    out.prune(0.0);
    Ok(out)
}

/// V_beta evaluated at a point: the symmetric product of the multiset that
/// contains zeta_j with multiplicity beta_j. V_0 = e0.
pub fn symmetric_power(p: &Point, beta: &MultiIndex, conv: Convention) -> Result<Multivector<f64>> {
    let n = p.n();
    if beta.n() != n {
        return Err(Error::SignatureMismatch {
            left: beta.n(),
            right: n,
        });
    }
    if beta.order() == 0 {
        return Ok(Multivector::one(n));
    }
    let mut factors = Vec::with_capacity(beta.order());
    for (j, &mult) in beta.0.iter().enumerate() {
        let z = zeta(j + 1, p, conv)?;
        for _ in 0..mult {
            factors.push(z.clone());
        }
    }
    symmetric_product(&factors)
}

/// V_beta as an exact polynomial field, optionally centered at `a`
/// (the factors become zeta_j(y) - zeta_j(a)).
pub fn symmetric_power_poly(
    n: u8,
    beta: &MultiIndex,
    center: Option<&Point>,
    conv: Convention,
) -> Result<PolyField<f64>> {
    if beta.n() != n {
        return Err(Error::SignatureMismatch {
            left: beta.n(),
            right: n,
        });
    }
    if beta.order() == 0 {
        return Ok(PolyField::constant(Multivector::one(n)));
    }
    let mut factors = Vec::new();
    for (j, &mult) in beta.0.iter().enumerate() {
        if mult == 0 {
            continue;
        }
        let mut z = zeta_poly(n, j + 1, conv);
        if let Some(a) = center {
            let shift = zeta(j + 1, a, conv)?;
            z = z.sub(&PolyField::constant(shift));
        }
        factors.push((z, mult as usize));
    }
    symmetric_product_poly(&factors)
}

/// Monogenic polynomial field V_beta (about the origin).
pub fn symmetric_power_field(n: u8, beta: &MultiIndex, conv: Convention) -> Result<CliffordField> {
    Ok(CliffordField::from_poly(
        symmetric_power_poly(n, beta, None, conv)?,
        SolutionClass::Monogenic,
    ))
}

/// Truncated Taylor expansion about a center: right-side coefficients on the
/// symmetric powers and a trailing mass factor,
/// f(y) = [ sum_beta V_beta(y - a) c_beta ] e^{-y0 lambda}.
#[derive(Clone, Debug)]
pub struct TaylorSeries {
    pub center: Point,
    pub lambda: MassTerm,
    pub terms: Vec<(MultiIndex, Multivector<f64>)>,
    pub max_order: usize,
}

impl TaylorSeries {
    pub fn new(
        center: Point,
        lambda: MassTerm,
        terms: Vec<(MultiIndex, Multivector<f64>)>,
    ) -> Result<Self> {
        let n = center.n();
        let mut max_order = 0;
        for (beta, c) in &terms {
            if beta.n() != n || c.n() != n {
                return Err(Error::SignatureMismatch {
                    left: beta.n().max(c.n()),
                    right: n,
                });
            }
            max_order = max_order.max(beta.order());
        }
        Ok(TaylorSeries {
            center,
            lambda,
            terms,
            max_order,
        })
    }

    /// The polynomial part sum_beta V_beta(y - a) c_beta, exact.
    pub fn polynomial_part(&self, conv: Convention) -> Result<PolyField<f64>> {
        let n = self.center.n();
        let mut acc = PolyField::zero(n);
        for (beta, c) in &self.terms {
            let v = symmetric_power_poly(n, beta, Some(&self.center), conv)?;
            acc = acc.add(&v.right_mul(c));
        }
        acc.prune(0.0);
        Ok(acc)
    }

    pub fn eval(&self, p: &Point, conv: Convention) -> Result<Multivector<f64>> {
        let poly = self.polynomial_part(conv)?;
        Ok(self.lambda.exp_mass(-p.y0, &poly.eval(p)))
    }

    /// The series as an evaluatable field (polynomial part precomputed).
    pub fn as_field(&self, conv: Convention) -> Result<CliffordField> {
        let poly = self.polynomial_part(conv)?;
        let lambda = self.lambda.clone();
        let class = if lambda.is_zero() {
            SolutionClass::Monogenic
        } else {
            SolutionClass::MassSolution(lambda.clone())
        };
        Ok(CliffordField::from_fn(
            self.center.n(),
            Arc::new(move |y: &Point| lambda.exp_mass(-y.y0, &poly.eval(y))),
            class,
        ))
    }
}

/// Evaluate a polynomial field on the hyperplane y0 = 0. For symmetric
/// powers every zeta_j collapses to s y_j e0, so the value is the scalar
/// blade (s y)^beta e0.
pub fn restrict_to_hyperplane(f: &PolyField<f64>, spatial: &[f64]) -> Multivector<f64> {
    f.eval(&Point::new(0.0, spatial))
}

/// Frequency and weight of one plane-wave summand.
#[derive(Clone, Debug)]
pub struct PlaneWaveParam {
    pub eta: Vec<f64>,
    pub weight: Multivector<Complex64>,
}

impl PlaneWaveParam {
    pub fn new(eta: Vec<f64>, weight: Multivector<Complex64>) -> Result<Self> {
        if eta.len() != weight.n() as usize {
            return Err(Error::SignatureMismatch {
                left: eta.len() as u8,
                right: weight.n(),
            });
        }
        Ok(PlaneWaveParam { eta, weight })
    }
}

/// exp(-i sum_j eta_j zeta_j(p)) * weight. Each such wave is annihilated by
/// D pointwise; finite superpositions generate the test bank of solutions.
pub fn plane_wave(
    param: &PlaneWaveParam,
    p: &Point,
    conv: Convention,
) -> Result<Multivector<Complex64>> {
    let n = p.n();
    if param.eta.len() != n as usize {
        return Err(Error::SignatureMismatch {
            left: param.eta.len() as u8,
            right: n,
        });
    }
    let mut phase = Multivector::<f64>::zero(n);
    for (j, &eta_j) in param.eta.iter().enumerate() {
        phase += &zeta(j + 1, p, conv)?.scale(eta_j);
    }
    let exponent = phase.to_complex().mul_scalar(Complex64::new(0.0, -1.0));
    Ok(exponent.clifford_exp()?.mul(&param.weight))
}

/// Finite plane-wave superposition pushed into the mass-M class:
/// y -> e^{-y0 M} sum_k wave_k(y).
pub fn superpose_plane_waves(
    params: Vec<PlaneWaveParam>,
    mass: MassTerm,
    conv: Convention,
) -> Result<CliffordField<Complex64>> {
    if params.is_empty() {
        return Err(Error::EmptyInput("plane-wave parameter list"));
    }
    let n = params[0].eta.len() as u8;
    for p in &params {
        if p.eta.len() as u8 != n {
            return Err(Error::SignatureMismatch {
                left: p.eta.len() as u8,
                right: n,
            });
        }
    }
    let class = if mass.is_zero() {
        SolutionClass::Monogenic
    } else {
        SolutionClass::MassSolution(mass.clone())
    };
    Ok(CliffordField::from_fn(
        n,
        Arc::new(move |y: &Point| {
            let mut acc = Multivector::<Complex64>::zero(n);
            for param in &params {
                acc += &plane_wave(param, y, conv).expect("dimensions checked at construction");
            }
            mass.exp_mass(-y.y0, &acc)
        }),
        class,
    ))
}

/// Fitted lambda-linear increment form
/// l(d) = [ sum_j zeta_j(d) A_j ] exp(-(base_y0 + d0) lambda).
#[derive(Clone, Debug)]
pub struct LambdaLinearForm {
    pub coefficients: Vec<Multivector<f64>>,
    pub lambda: MassTerm,
    pub base_y0: f64,
}

impl LambdaLinearForm {
    pub fn eval(&self, increment: &Point, conv: Convention) -> Result<Multivector<f64>> {
        let n = increment.n();
        let mut acc = Multivector::zero(n);
        for (j, a) in self.coefficients.iter().enumerate() {
            acc += &zeta(j + 1, increment, conv)?.mul(a);
        }
        Ok(self
            .lambda
            .exp_mass(-(self.base_y0 + increment.y0), &acc))
    }
}

/// Least-squares fit of the lambda-linear form from sampled increments on
/// two spheres (radius r and r/2, at least 4n directions each), plus the
/// empirical decay order of the remainder: about 2 for members of the
/// mass-lambda class, about 1 for generic smooth non-members.
///
/// The fitted model is the twisted increment
/// f(p + d) - f(p) e^{-d0 lambda} = [ sum_j zeta_j(d) A_j ] e^{-(y0+d0) lambda} + o(|d|),
/// which is the increment of the associated nullsolution of D pulled back
/// through the mass exponential.
pub fn fit_lambda_linear_form<R: Rng>(
    f: &CliffordField<f64>,
    p: &Point,
    lambda: &MassTerm,
    radius: f64,
    conv: Convention,
    rng: &mut R,
) -> Result<(LambdaLinearForm, f64)> {
    let n = f.n();
    let dim = 1usize << n;
    let n_dirs = 4 * n as usize + 2;

    let mut directions = Vec::with_capacity(n_dirs);
    for _ in 0..n_dirs {
        loop {
            let coords: Vec<f64> = (0..=n as usize)
                .map(|_| rng.random_range(-1.0..1.0))
                .collect();
            let d = Point::from_coords(&coords);
            let len = d.norm();
            if len > 0.1 {
                directions.push(d.scale(1.0 / len));
                break;
            }
        }
    }

    let f_at_p = f.eval(p);
    // Twisted increment mapped back to the nullsolution side:
    // T(d) = [f(p+d) - f(p) e^{-d0 L}] e^{(y0+d0) L} = g(p+d) - g(p),
    // g = e^{y0 M} f. Members make T a pure zeta-linear form to O(|d|^2).
    let target = |d: &Point| -> Multivector<f64> {
        let shifted = f.eval(&p.add(d));
        let twisted = &shifted - &lambda.exp_mass(-d.y0, &f_at_p);
        lambda.exp_mass(p.y0 + d.y0, &twisted)
    };

    // One least-squares fit per sphere, over the same direction set: the
    // optimal coefficients at radius r carry an O(r) bias from the
    // quadratic remainder, so per-scale fits make the remainder scale
    // exactly with r^2 for members and the order estimate clean.
    let fit_at = |scale: f64| -> Result<(Vec<Multivector<f64>>, f64)> {
        let unknowns = n as usize * dim;
        let mut normal = vec![vec![0.0; unknowns]; unknowns];
        let mut rhs = vec![0.0; unknowns];
        let mut samples: Vec<(Point, Multivector<f64>)> = Vec::new();
        for dir in &directions {
            let d = dir.scale(scale);
            let t = target(&d);
            // Row block: T(d) = sum_j L[zeta_j(d)] A_j.
            let mats: Vec<Vec<Vec<f64>>> = (1..=n as usize)
                .map(|j| zeta(j, &d, conv).unwrap().left_mul_matrix())
                .collect();
            for row in 0..dim {
                for (j, mj) in mats.iter().enumerate() {
                    for c in 0..dim {
                        let a_col = j * dim + c;
                        let m_rc = mj[row][c];
                        if m_rc == 0.0 {
                            continue;
                        }
                        rhs[a_col] += m_rc * t.coeff(row);
                        for (k, mk) in mats.iter().enumerate() {
                            for c2 in 0..dim {
                                normal[a_col][k * dim + c2] += m_rc * mk[row][c2];
                            }
                        }
                    }
                }
            }
            samples.push((d, t));
        }
        let solution = solve_symmetric(&mut normal, &mut rhs)?;
        let coefficients: Vec<Multivector<f64>> = (0..n as usize)
            .map(|j| {
                Multivector::from_coeffs(n, solution[j * dim..(j + 1) * dim].to_vec()).unwrap()
            })
            .collect();
        let residual = samples
            .iter()
            .map(|(d, t)| {
                let mut fitted = Multivector::zero(n);
                for (j, a) in coefficients.iter().enumerate() {
                    fitted += &zeta(j + 1, d, conv).unwrap().mul(a);
                }
                (t - &fitted).modulus()
            })
            .fold(0.0, f64::max);
        Ok((coefficients, residual))
    };

    let (_, res_full) = fit_at(radius)?;
    let (coefficients, res_half) = fit_at(radius / 2.0)?;

    let floor = 1e-13 * (1.0 + f_at_p.modulus());
    let remainder_order = if res_full <= floor && res_half <= floor {
        f64::INFINITY
    } else {
        (res_full / res_half.max(f64::MIN_POSITIVE)).log2()
    };

    Ok((
        LambdaLinearForm {
            coefficients,
            lambda: lambda.clone(),
            base_y0: p.y0,
        },
        remainder_order,
    ))
}

/// [`fit_lambda_linear_form`] with its own seeded generator, for callers
/// without an RNG at hand.
pub fn fit_lambda_linear_form_seeded(
    f: &CliffordField<f64>,
    p: &Point,
    lambda: &MassTerm,
    radius: f64,
    conv: Convention,
    seed: u64,
) -> Result<(LambdaLinearForm, f64)> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    fit_lambda_linear_form(f, p, lambda, radius, conv, &mut rng)
}

/// Seeded random monogenic polynomial: a right-coefficient combination of
/// the symmetric powers up to `max_order`, with amplitudes decaying in the
/// order so finite-difference truncation constants stay small.
pub fn seeded_monogenic_poly(
    n: u8,
    max_order: usize,
    amplitude: f64,
    conv: Convention,
    seed: u64,
) -> PolyField<f64> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    monogenic_poly_from_rng(n, max_order, amplitude, conv, &mut rng)
}

/// Random monogenic polynomial drawn from the given generator.
pub fn monogenic_poly_from_rng<R: Rng>(
    n: u8,
    max_order: usize,
    amplitude: f64,
    conv: Convention,
    rng: &mut R,
) -> PolyField<f64> {
    let mut acc = PolyField::zero(n);
    for order in 0..=max_order {
        let betas = MultiIndex::with_order(n, order);
        // keep the per-order contribution bounded independently of how many
        // multi-indices the dimension admits
        let scale = amplitude
            / ((1.0 + order as f64) * (1.0 + order as f64) * (betas.len() as f64).sqrt());
        for beta in betas {
            let v = symmetric_power_poly(n, &beta, None, conv).unwrap();
            let coeffs: Vec<f64> = (0..1usize << n)
                .map(|_| rng.random_range(-scale..scale))
                .collect();
            let c = Multivector::from_coeffs(n, coeffs).unwrap();
            acc = acc.add(&v.right_mul(&c));
        }
    }
    acc.prune(0.0);
    acc
}

/// Gaussian elimination with partial pivoting on the (symmetric) normal
/// equations. Small systems only.
fn solve_symmetric(a: &mut [Vec<f64>], b: &mut [f64]) -> Result<Vec<f64>> {
    let m = b.len();
    let scale = a
        .iter()
        .flat_map(|row| row.iter().map(|x| x.abs()))
        .fold(0.0, f64::max);
    for col in 0..m {
        let (pivot_row, pivot) = (col..m)
            .map(|r| (r, a[r][col].abs()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        if pivot <= 1e-12 * scale.max(1.0) {
            return Err(Error::DegenerateFit);
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        for r in col + 1..m {
            let factor = a[r][col] / a[col][col];
            if factor == 0.0 {
                continue;
            }
            for c in col..m {
                a[r][c] -= factor * a[col][c];
            }
            b[r] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; m];
    for col in (0..m).rev() {
        let mut acc = b[col];
        for c in col + 1..m {
            acc -= a[col][c] * x[c];
        }
        x[col] = acc / a[col][col];
    }
    Ok(x)
}
