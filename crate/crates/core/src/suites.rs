//! The named verification suites behind `run_suite`.
//!
//! Every suite draws its randomness from a stream derived from the
//! configured seed and accumulates in a fixed order, so a report is a pure
//! function of its configuration.

use std::str::FromStr;
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Multivector, Point};
use crate::basis::{
    fit_lambda_linear_form, plane_wave, superpose_plane_waves, symmetric_power_field,
    symmetric_power_poly, MultiIndex, PlaneWaveParam, TaylorSeries,
};
use crate::convention::Convention;
use crate::error::{Error, Result};
use crate::field::{CliffordField, SolutionClass};
use crate::integral::{
    bergman_kernel_raw, bergman_reproduce, calibrate_bergman, cauchy_integral,
    cauchy_kernel, cauchy_theorem_residual, mean_value, mean_value_constant, KernelParams,
};
use crate::operators::{
    apply_d, apply_d_conj, apply_d_right, helmholtz_factorization_residual, residual_norm,
    StencilSpec,
};
use crate::poly::{apply_d_conj_exact, apply_d_exact, laplacian_exact, zeta_poly, PolyField};
use crate::quadrature::{build_rule, ball_volume_value, Domain};
use crate::report::{CheckRecord, SuiteConfig, SuiteReport, VerificationReport};
use crate::transform::{from_monogenic, intertwine, to_monogenic, MassTerm, TransformSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteName {
    Algebra,
    Operators,
    Transform,
    Cauchy,
    MeanValue,
    Bergman,
    Taylor,
    Differentiability,
    All,
}

impl SuiteName {
    pub const ALL: [SuiteName; 8] = [
        SuiteName::Algebra,
        SuiteName::Operators,
        SuiteName::Transform,
        SuiteName::Cauchy,
        SuiteName::MeanValue,
        SuiteName::Bergman,
        SuiteName::Taylor,
        SuiteName::Differentiability,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Algebra => "algebra",
            SuiteName::Operators => "operators",
            SuiteName::Transform => "transform",
            SuiteName::Cauchy => "cauchy",
            SuiteName::MeanValue => "meanvalue",
            SuiteName::Bergman => "bergman",
            SuiteName::Taylor => "taylor",
            SuiteName::Differentiability => "differentiability",
            SuiteName::All => "all",
        }
    }
}

impl FromStr for SuiteName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "algebra" => Ok(SuiteName::Algebra),
            "operators" => Ok(SuiteName::Operators),
            "transform" => Ok(SuiteName::Transform),
            "cauchy" => Ok(SuiteName::Cauchy),
            "meanvalue" => Ok(SuiteName::MeanValue),
            "bergman" => Ok(SuiteName::Bergman),
            "taylor" => Ok(SuiteName::Taylor),
            "differentiability" => Ok(SuiteName::Differentiability),
            "all" => Ok(SuiteName::All),
            other => Err(Error::InvalidConfig(format!("unknown suite '{other}'"))),
        }
    }
}

impl std::fmt::Display for SuiteName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.as_str())
    }
}

/// Run one suite (or all of them) under the given configuration.
pub fn run_suite(name: SuiteName, cfg: &SuiteConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let mut report = VerificationReport::new(cfg.clone());
    match name {
        SuiteName::All => {
            for suite in SuiteName::ALL {
                report.push(dispatch(suite, cfg)?);
            }
        }
        single => report.push(dispatch(single, cfg)?),
    }
    Ok(report)
}

fn dispatch(name: SuiteName, cfg: &SuiteConfig) -> Result<SuiteReport> {
    match name {
        SuiteName::Algebra => algebra_suite(cfg),
        SuiteName::Operators => operators_suite(cfg),
        SuiteName::Transform => transform_suite(cfg),
        SuiteName::Cauchy => cauchy_suite(cfg),
        SuiteName::MeanValue => mean_value_suite(cfg),
        SuiteName::Bergman => bergman_suite(cfg),
        SuiteName::Taylor => taylor_suite(cfg),
        SuiteName::Differentiability => differentiability_suite(cfg),
        SuiteName::All => unreachable!("dispatch is called per suite"),
    }
}

fn rng_for(cfg: &SuiteConfig, stream: &str) -> ChaCha8Rng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in stream.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(cfg.seed ^ h)
}

fn random_multivector(n: u8, amplitude: f64, rng: &mut ChaCha8Rng) -> Multivector<f64> {
    let coeffs: Vec<f64> = (0..1usize << n)
        .map(|_| rng.random_range(-amplitude..amplitude))
        .collect();
    Multivector::from_coeffs(n, coeffs).unwrap()
}

fn random_int_multivector(n: u8, rng: &mut ChaCha8Rng) -> Multivector<f64> {
    let coeffs: Vec<f64> = (0..1usize << n)
        .map(|_| f64::from(rng.random_range(-2i8..=2)))
        .collect();
    Multivector::from_coeffs(n, coeffs).unwrap()
}

fn sample_points(n: u8, count: usize, amplitude: f64, rng: &mut ChaCha8Rng) -> Vec<Point> {
    (0..count)
        .map(|_| {
            let coords: Vec<f64> = (0..=n as usize)
                .map(|_| rng.random_range(-amplitude..amplitude))
                .collect();
            Point::from_coords(&coords)
        })
        .collect()
}

fn random_monogenic_poly(
    n: u8,
    max_order: usize,
    conv: Convention,
    rng: &mut ChaCha8Rng,
) -> PolyField<f64> {
    crate::basis::monogenic_poly_from_rng(n, max_order, 0.5, conv, rng)
}

/// The mass terms a configuration exercises: zero plus the configured one.
fn lambda_set(cfg: &SuiteConfig) -> Result<Vec<MassTerm>> {
    let configured = MassTerm::parse(&cfg.lambda, cfg.n)?;
    let mut set = vec![MassTerm::Zero];
    if !configured.is_zero() {
        set.push(configured);
    }
    Ok(set)
}

/// Pass check for an order-two truncation error: the fine residual either
/// sits at the rounding floor or decays by at least the given ratio.
fn order_two_passed(coarse: f64, fine: f64, floor: f64, min_ratio: f64) -> (bool, Option<f64>) {
    if fine <= floor {
        (true, None)
    } else {
        let order = (coarse / fine.max(f64::MIN_POSITIVE)).log2();
        (order >= min_ratio.log2(), Some(order))
    }
}

// ---------------------------------------------------------------------------
// algebra
// ---------------------------------------------------------------------------

fn algebra_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut suite = SuiteReport::new("algebra");
    let n = cfg.n;

    // anticommutation, exhaustively for every supported generator count
    let mut worst: f64 = 0.0;
    for nn in 1..=crate::MAX_GENERATORS {
        for i in 1..=nn as usize {
            for j in 1..=nn as usize {
                let ei = Multivector::<f64>::basis(nn, i);
                let ej = Multivector::<f64>::basis(nn, j);
                let delta = if i == j { -2.0 } else { 0.0 };
                let dev = (&ei.mul(&ej) + &ej.mul(&ei))
                    .distance(&Multivector::scalar(nn, delta));
                worst = worst.max(dev);
            }
        }
    }
    suite.push(
        CheckRecord::new("anticommutation", worst, cfg.tol("anticommutation", 0.0))
            .with_param("n", format!("1..={}", crate::MAX_GENERATORS)),
    );

    // associativity on randomized triples: exact on integer coefficients,
    // 1e-12 relative on floats
    let triples = 10_000usize;
    let mut rng = rng_for(cfg, "algebra.associativity.exact");
    let mut worst: f64 = 0.0;
    for _ in 0..triples / 2 {
        let a = random_int_multivector(n, &mut rng);
        let b = random_int_multivector(n, &mut rng);
        let c = random_int_multivector(n, &mut rng);
        worst = worst.max(a.mul(&b).mul(&c).distance(&a.mul(&b.mul(&c))));
    }
    suite.push(
        CheckRecord::new("associativity_exact", worst, cfg.tol("associativity_exact", 0.0))
            .with_param("triples", triples / 2)
            .with_param("n", n),
    );

    let mut rng = rng_for(cfg, "algebra.associativity.float");
    let mut worst: f64 = 0.0;
    for _ in 0..triples / 2 {
        let a = random_multivector(n, 1.0, &mut rng);
        let b = random_multivector(n, 1.0, &mut rng);
        let c = random_multivector(n, 1.0, &mut rng);
        let lhs = a.mul(&b).mul(&c);
        let rhs = a.mul(&b.mul(&c));
        worst = worst.max(lhs.distance(&rhs) / (1.0 + lhs.modulus().max(rhs.modulus())));
    }
    suite.push(
        CheckRecord::new(
            "associativity_float",
            worst,
            cfg.tol("associativity_float", 1e-12),
        )
        .with_param("triples", triples / 2)
        .with_param("n", n),
    );

    // conjugation anti-automorphism on randomized pairs
    let mut rng = rng_for(cfg, "algebra.conjugation");
    let mut worst: f64 = 0.0;
    for _ in 0..triples {
        let a = random_multivector(n, 1.0, &mut rng);
        let b = random_multivector(n, 1.0, &mut rng);
        let lhs = a.mul(&b).conjugate();
        let rhs = b.conjugate().mul(&a.conjugate());
        worst = worst.max(lhs.distance(&rhs) / (1.0 + lhs.modulus()));
    }
    suite.push(
        CheckRecord::new(
            "conjugation_anti_automorphism",
            worst,
            cfg.tol("conjugation_anti_automorphism", 1e-12),
        )
        .with_param("pairs", triples)
        .with_param("n", n),
    );

    // paravector norm identity y conj(y) = |y|^2 e0
    let mut rng = rng_for(cfg, "algebra.paravector");
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let p = Point::from_coords(
            &(0..=n as usize)
                .map(|_| rng.random_range(-2.0..2.0))
                .collect::<Vec<_>>(),
        );
        let y = p.to_paravector();
        let dev = y
            .mul(&y.conjugate())
            .distance(&Multivector::scalar(n, p.norm() * p.norm()));
        worst = worst.max(dev / (1.0 + p.norm() * p.norm()));
    }
    suite.push(
        CheckRecord::new("paravector_norm", worst, cfg.tol("paravector_norm", 1e-12))
            .with_param("n", n),
    );

    // exponential homomorphism on commuting pairs: b a polynomial in a
    let mut rng = rng_for(cfg, "algebra.exp");
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let a = random_multivector(n, 0.6, &mut rng);
        let b = &(&Multivector::scalar(n, rng.random_range(-0.5..0.5))
            + &a.scale(rng.random_range(-0.5..0.5)))
            + &a.mul(&a).scale(rng.random_range(-0.3..0.3));
        let sum_exp = (&a + &b).clifford_exp().unwrap();
        let prod_exp = a.clifford_exp().unwrap().mul(&b.clifford_exp().unwrap());
        worst = worst.max(sum_exp.distance(&prod_exp) / (1.0 + sum_exp.modulus()));
    }
    suite.push(
        CheckRecord::new(
            "exp_homomorphism_commuting",
            worst,
            cfg.tol("exp_homomorphism_commuting", 1e-10),
        )
        .with_param("pairs", 100)
        .with_param("n", n),
    );

    // exp closed form on a generator direction
    let t = 0.9f64;
    let mut expect = Multivector::zero(n);
    expect.set_coeff(0, t.cos());
    expect.set_coeff(1, t.sin());
    let dev = Multivector::blade(n, 1, t)
        .clifford_exp()
        .unwrap()
        .distance(&expect);
    suite.push(CheckRecord::new("exp_closed_form", dev, cfg.tol("exp_closed_form", 1e-13)));

    Ok(suite)
}

// ---------------------------------------------------------------------------
// operators
// ---------------------------------------------------------------------------

fn operators_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut suite = SuiteReport::new("operators");
    let conv = cfg.convention;

    // factorization conj(D) D = D conj(D) = Laplacian, exact in symbolic
    // mode on every monomial field of degree <= 3 for n <= 3
    let mut worst: f64 = 0.0;
    for n in 1..=3u8 {
        let nvars = n as usize + 1;
        let blade_mix = &Multivector::<f64>::one(n) + &Multivector::basis(n, n as usize);
        let mut exps = vec![0u8; nvars];
        loop {
            let total: usize = exps.iter().map(|&k| k as usize).sum();
            if total <= 3 {
                let mut mono = PolyField::zero(n);
                mono.add_term(exps.clone(), blade_mix.clone());
                let lap = laplacian_exact(&mono);
                let r1 = apply_d_conj_exact(&apply_d_exact(&mono, conv), conv).sub(&lap);
                let r2 = apply_d_exact(&apply_d_conj_exact(&mono, conv), conv).sub(&lap);
                worst = worst.max(r1.max_coeff_modulus()).max(r2.max_coeff_modulus());
            }
            let mut i = 0;
            loop {
                if i == nvars {
                    break;
                }
                if exps[i] < 3 {
                    exps[i] += 1;
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
            if i == nvars {
                break;
            }
        }
    }
    suite.push(
        CheckRecord::new(
            "factorization_symbolic",
            worst,
            cfg.tol("factorization_symbolic", 1e-12),
        )
        .with_param("degree", "<=3")
        .with_param("n", "1..=3"),
    );

    // FD factorization order: composed central stencils are exact on cubics,
    // so the truncation signal is measured on quartic fields
    let mut rng = rng_for(cfg, "operators.fd_order");
    let quartic = CliffordField::from_poly(
        PolyField::random(cfg.n, 4, 1.0, &mut rng),
        SolutionClass::Arbitrary,
    );
    let lap_exact = laplacian_exact(quartic.as_poly().unwrap());
    let samples = sample_points(cfg.n, 4, 0.3, &mut rng);
    let composed_residual = |h: f64| -> f64 {
        let st = StencilSpec::new(h);
        let inner = {
            let f = quartic.clone();
            CliffordField::from_fn(
                cfg.n,
                Arc::new(move |q: &Point| apply_d(&f, q, st, conv)),
                SolutionClass::Arbitrary,
            )
        };
        samples
            .iter()
            .map(|p| apply_d_conj(&inner, p, st, conv).distance(&lap_exact.eval(p)))
            .fold(0.0, f64::max)
    };
    let coarse = composed_residual(1e-2);
    let fine = composed_residual(5e-3);
    let order = (coarse / fine.max(f64::MIN_POSITIVE)).log2();
    suite.push(
        CheckRecord::new(
            "factorization_fd_order",
            (order - 2.0).abs(),
            cfg.tol("factorization_fd_order", 0.2),
        )
        .with_param("h", "1e-2,5e-3")
        .with_param("degree", 4)
        .with_param("n", cfg.n)
        .with_order(Some(order)),
    );

    // kernel membership, symbolic: D zeta_j = 0 and D V_beta = 0 exactly
    let n = cfg.n;
    let mut worst: f64 = 0.0;
    for j in 1..=n as usize {
        worst = worst.max(apply_d_exact(&zeta_poly(n, j, conv), conv).max_coeff_modulus());
    }
    for order in 0..=3usize {
        for beta in MultiIndex::with_order(n, order) {
            let v = symmetric_power_poly(n, &beta, None, conv)?;
            worst = worst.max(apply_d_exact(&v, conv).max_coeff_modulus());
        }
    }
    suite.push(
        CheckRecord::new(
            "kernel_membership_symbolic",
            worst,
            cfg.tol("kernel_membership_symbolic", 1e-12),
        )
        .with_param("orders", "<=3")
        .with_param("n", n),
    );

    // kernel membership, plane waves: FD residual at the configured h
    let mut rng = rng_for(cfg, "operators.plane_waves");
    let st = StencilSpec::new(cfg.h);
    let mut etas: Vec<Vec<f64>> = (0..6)
        .map(|_| {
            (0..n as usize)
                .map(|_| rng.random_range(-0.9..0.9))
                .collect()
        })
        .collect();
    let mut probe1 = vec![0.0; n as usize];
    probe1[0] = 1.2;
    etas.push(probe1);
    if n >= 2 {
        let mut probe2 = vec![0.0; n as usize];
        probe2[1] = -1.3;
        etas.push(probe2);
    }
    let points: Vec<Point> = (0..4)
        .map(|_| {
            let mut coords: Vec<f64> = (0..=n as usize)
                .map(|_| rng.random_range(-0.3..0.3))
                .collect();
            coords[0] = rng.random_range(-0.2..0.2);
            Point::from_coords(&coords)
        })
        .collect();
    let mut worst: f64 = 0.0;
    for eta in &etas {
        let weight = Multivector::<f64>::one(n).to_complex();
        let field = superpose_plane_waves(
            vec![PlaneWaveParam::new(eta.clone(), weight)?],
            MassTerm::Zero,
            conv,
        )?;
        worst = worst.max(residual_norm(&field, &MassTerm::Zero, &points, st, conv)?);
    }
    suite.push(
        CheckRecord::new(
            "kernel_membership_plane_wave",
            worst,
            cfg.tol("kernel_membership_plane_wave", 1e-6),
        )
        .with_param("h", cfg.h)
        .with_param("waves", etas.len())
        .with_param("n", n),
    );

    // plane-wave superpositions under a mass term solve the mass equation
    let mut rng = rng_for(cfg, "operators.superposition");
    for mass in lambda_set(cfg)? {
        let params: Vec<PlaneWaveParam> = (0..3)
            .map(|_| {
                let eta: Vec<f64> = (0..n as usize)
                    .map(|_| rng.random_range(-0.9..0.9))
                    .collect();
                // genuinely complex weights, normalized to unit modulus
                let re = random_multivector(n, 1.0, &mut rng).to_complex();
                let im = random_multivector(n, 1.0, &mut rng)
                    .to_complex()
                    .mul_scalar(num_complex::Complex64::new(0.0, 1.0));
                let weight = &re + &im;
                let weight = weight.scale(1.0 / weight.modulus().max(1e-9));
                PlaneWaveParam::new(eta, weight)
            })
            .collect::<Result<_>>()?;
        let field = superpose_plane_waves(params, mass.clone(), conv)?;
        let res = residual_norm(&field, &mass, &points, st, conv)?;
        suite.push(
            CheckRecord::new(
                "superposition_mass_equation",
                res,
                cfg.tol("superposition_mass_equation", 1e-5),
            )
            .with_param("lambda", &mass)
            .with_param("h", cfg.h),
        );
    }

    // Helmholtz factorization for scalar and non-scalar lambda
    let mut rng = rng_for(cfg, "operators.helmholtz");
    let trial_fields = vec![
        CliffordField::constant(Multivector::one(n)),
        CliffordField::from_poly(PolyField::random(n, 2, 1.0, &mut rng), SolutionClass::Arbitrary),
        CliffordField::from_poly(PolyField::random(n, 4, 0.5, &mut rng), SolutionClass::Arbitrary),
    ];
    let helm_points = sample_points(n, 3, 0.3, &mut rng);
    let lambdas = vec![
        ("0", Multivector::zero(n)),
        ("0.5", Multivector::scalar(n, 0.5)),
        ("e1", Multivector::basis(n, 1)),
    ];
    for (label, lam) in lambdas {
        let coarse = helmholtz_factorization_residual(
            &lam,
            &trial_fields,
            &helm_points,
            StencilSpec::new(1e-2),
        )?;
        let fine = helmholtz_factorization_residual(
            &lam,
            &trial_fields,
            &helm_points,
            StencilSpec::new(5e-3),
        )?;
        let (passed, order) = order_two_passed(coarse, fine, 1e-9, 3.0);
        suite.push(
            CheckRecord::new("helmholtz_identity", fine, cfg.tol("helmholtz_identity", 1e-3))
                .with_param("lambda", label)
                .with_param("h", "1e-2,5e-3")
                .with_order(order)
                .with_passed(passed && fine <= cfg.tol("helmholtz_identity", 1e-3)),
        );
    }

    Ok(suite)
}

// ---------------------------------------------------------------------------
// transform
// ---------------------------------------------------------------------------

fn mass_pair_set(n: u8) -> Vec<(String, MassTerm)> {
    vec![
        ("0".to_string(), MassTerm::Zero),
        ("0.5".to_string(), MassTerm::scalar(0.5)),
        ("-0.5".to_string(), MassTerm::scalar(-0.5)),
        (
            "0.3e1".to_string(),
            MassTerm::clifford(Multivector::basis(n, 1).scale(0.3)),
        ),
    ]
}

fn transform_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut suite = SuiteReport::new("transform");
    let conv = cfg.convention;
    let n = cfg.n;
    let st = StencilSpec::new(cfg.h);

    // exp_mass closed forms
    let v = Multivector::from_coeffs(n, {
        let mut c = vec![0.0; 1 << n];
        c[0] = 1.0;
        c[1] = -0.5;
        c[(1 << n) - 1] = 0.25;
        c
    })?;
    let m = MassTerm::scalar(0.8);
    let mut worst = m.exp_mass(0.0, &v).distance(&v);
    worst = worst.max(m.exp_mass(0.4, &v).distance(&v.scale((0.4f64 * 0.8).exp())));
    let me1 = MassTerm::clifford(Multivector::basis(n, 1));
    worst = worst.max(
        me1.exp_mass(std::f64::consts::FRAC_PI_2, &Multivector::<f64>::one(n))
            .distance(&Multivector::basis(n, 1)),
    );
    suite.push(CheckRecord::new(
        "exp_mass_closed_forms",
        worst,
        cfg.tol("exp_mass_closed_forms", 1e-13),
    ));

    // seeded generator fields and the full pair sweep
    let mut rng = rng_for(cfg, "transform.generators");
    let monogenic_seeds: Vec<PolyField<f64>> = (0..10)
        .map(|_| random_monogenic_poly(n, 3, conv, &mut rng))
        .collect();
    let samples = sample_points(n, 5, 0.3, &mut rng);
    let pairs = mass_pair_set(n);

    for (label1, m1) in &pairs {
        for (label2, m2) in &pairs {
            let spec = TransformSpec::new(m1.clone(), m2.clone());
            let back = TransformSpec::new(m2.clone(), m1.clone());
            let mut worst_source: f64 = 0.0;
            let mut worst_target: f64 = 0.0;
            let mut worst_round: f64 = 0.0;
            for seed_poly in &monogenic_seeds {
                let monogenic =
                    CliffordField::from_poly(seed_poly.clone(), SolutionClass::Monogenic);
                let source = from_monogenic(&monogenic, m1);
                worst_source = worst_source.max(residual_norm(&source, m1, &samples, st, conv)?);
                let transformed = intertwine(&source, &spec);
                worst_target =
                    worst_target.max(residual_norm(&transformed, m2, &samples, st, conv)?);
                let round = intertwine(&transformed, &back);
                for p in &samples {
                    worst_round = worst_round.max(round.eval(p).distance(&source.eval(p)));
                }
            }
            suite.push(
                CheckRecord::new(
                    "intertwine_source_class",
                    worst_source,
                    cfg.tol("intertwine_source_class", 1e-6),
                )
                .with_param("m1", label1)
                .with_param("m2", label2)
                .with_param("fields", monogenic_seeds.len()),
            );
            suite.push(
                CheckRecord::new(
                    "intertwine_target_class",
                    worst_target,
                    cfg.tol("intertwine_target_class", 1e-6),
                )
                .with_param("m1", label1)
                .with_param("m2", label2)
                .with_param("fields", monogenic_seeds.len()),
            );
            suite.push(
                CheckRecord::new(
                    "intertwine_round_trip",
                    worst_round,
                    cfg.tol("intertwine_round_trip", 1e-12),
                )
                .with_param("m1", label1)
                .with_param("m2", label2),
            );
        }
    }

    // identity transform
    let f = from_monogenic(
        &CliffordField::from_poly(monogenic_seeds[0].clone(), SolutionClass::Monogenic),
        &MassTerm::scalar(0.5),
    );
    let id = intertwine(
        &f,
        &TransformSpec::new(MassTerm::scalar(0.5), MassTerm::scalar(0.5)),
    );
    let mut worst: f64 = 0.0;
    for p in &samples {
        worst = worst.max(id.eval(p).distance(&f.eval(p)));
    }
    suite.push(CheckRecord::new(
        "intertwine_identity",
        worst,
        cfg.tol("intertwine_identity", 1e-12),
    ));

    // group law on commuting masses: (A->B) after (C->A) equals (C->B)
    let mc = MassTerm::scalar(-0.4);
    let ma = MassTerm::scalar(0.3);
    let mb = MassTerm::clifford(Multivector::basis(n, 1).scale(0.2));
    let source = from_monogenic(
        &CliffordField::from_poly(monogenic_seeds[1].clone(), SolutionClass::Monogenic),
        &mc,
    );
    let step = intertwine(
        &intertwine(&source, &TransformSpec::new(mc.clone(), ma.clone())),
        &TransformSpec::new(ma.clone(), mb.clone()),
    );
    let direct = intertwine(&source, &TransformSpec::new(mc.clone(), mb.clone()));
    let mut worst: f64 = 0.0;
    for p in &samples {
        worst = worst.max(step.eval(p).distance(&direct.eval(p)));
    }
    suite.push(
        CheckRecord::new("intertwine_group_law", worst, cfg.tol("intertwine_group_law", 1e-12))
            .with_param("masses", "-0.4 -> 0.3 -> 0.2e1"),
    );

    // to_monogenic / from_monogenic are exact inverses
    let mass = MassTerm::scalar(1.0);
    let g = CliffordField::constant(Multivector::<f64>::one(n));
    let f = from_monogenic(&g, &mass);
    let res = residual_norm(&f, &mass, &samples, st, conv)?;
    suite.push(
        CheckRecord::new("from_monogenic_class", res, cfg.tol("from_monogenic_class", 1e-6))
            .with_param("lambda", "1"),
    );
    let round = to_monogenic(&f, &mass);
    let mut worst: f64 = 0.0;
    for p in &samples {
        worst = worst.max(round.eval(p).distance(&g.eval(p)));
    }
    suite.push(CheckRecord::new(
        "monogenic_round_trip",
        worst,
        cfg.tol("monogenic_round_trip", 1e-12),
    ));

    Ok(suite)
}

// ---------------------------------------------------------------------------
// cauchy
// ---------------------------------------------------------------------------

/// The polynomial test basis: V_beta for |beta| <= max_order.
fn test_basis(n: u8, max_order: usize, conv: Convention) -> Vec<(String, CliffordField<f64>)> {
    let mut out = Vec::new();
    for order in 0..=max_order {
        for beta in MultiIndex::with_order(n, order) {
            let field = symmetric_power_field(n, &beta, conv).unwrap();
            out.push((format!("V_{}", beta.label()), field));
        }
    }
    out
}

fn cauchy_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut suite = SuiteReport::new("cauchy");
    let conv = cfg.convention;
    let n = cfg.n;
    if n > 3 {
        suite.diagnose(format!(
            "cauchy suite skipped: surface quadrature rules cover n <= 3, configured n = {n}"
        ));
        return Ok(suite);
    }
    let masses = lambda_set(cfg)?;
    let top = *cfg.refinements.last().unwrap();

    let domains: Vec<(&str, Domain)> = vec![
        (
            "sphere",
            Domain::SphereSurface {
                center: Point::origin(n),
                radius: 1.0,
            },
        ),
        (
            "box",
            Domain::BoxBoundary {
                lo: Point::from_coords(&vec![-0.8; n as usize + 1]),
                hi: Point::from_coords(&vec![0.8; n as usize + 1]),
            },
        ),
    ];

    // kernel nullsolution checks away from the singularity
    let kp = KernelParams::new(n);
    let x_sing = Point::new(0.1, &(0..n as usize).map(|j| 0.1 * j as f64).collect::<Vec<_>>());
    let probe = Point::from_coords(&{
        let mut c = vec![0.8; n as usize + 1];
        c[0] = 0.9;
        c
    });
    let st_kernel = StencilSpec::new(1e-4);
    let kernel_field = {
        let x = x_sing.clone();
        CliffordField::from_fn(
            n,
            Arc::new(move |y: &Point| cauchy_kernel(&x, y, &kp, conv).unwrap()),
            SolutionClass::Arbitrary,
        )
    };
    let left = apply_d(&kernel_field, &probe, st_kernel, conv).modulus();
    let right = apply_d_right(&kernel_field, &probe, st_kernel, conv).modulus();
    let kernel_field_x = {
        let y = probe.clone();
        CliffordField::from_fn(
            n,
            Arc::new(move |x: &Point| cauchy_kernel(x, &y, &kp, conv).unwrap()),
            SolutionClass::Arbitrary,
        )
    };
    let in_x = apply_d(&kernel_field_x, &x_sing, st_kernel, conv).modulus();
    suite.push(
        CheckRecord::new(
            "cauchy_kernel_nullsolution",
            left.max(right).max(in_x),
            cfg.tol("cauchy_kernel_nullsolution", 1e-5),
        )
        .with_param("h", "1e-4")
        .with_param("sides", "left,right,x-argument"),
    );

    // rule invariants: total weight against the closed-form measure and the
    // vanishing closed-surface normal integral
    for (domain_label, domain) in &domains {
        let rule = build_rule(domain, top)?;
        let expected_measure = match domain {
            Domain::SphereSurface { radius, .. } => {
                crate::quadrature::unit_sphere_area(n) * radius.powi(n as i32)
            }
            Domain::BoxBoundary { lo, hi } => {
                let lengths: Vec<f64> = hi
                    .coords()
                    .iter()
                    .zip(lo.coords())
                    .map(|(h, l)| h - l)
                    .collect();
                let volume: f64 = lengths.iter().product();
                lengths.iter().map(|len| 2.0 * volume / len).sum()
            }
            Domain::BallVolume { .. } => unreachable!("surface domains only"),
        };
        suite.push(
            CheckRecord::new(
                "rule_surface_measure",
                (rule.total_weight() / expected_measure - 1.0).abs(),
                cfg.tol("rule_surface_measure", 1e-10),
            )
            .with_param("domain", domain_label)
            .with_param("refinement", top),
        );
        let normal_terms: Vec<Multivector<f64>> = rule
            .normals
            .as_ref()
            .unwrap()
            .iter()
            .zip(&rule.weights)
            .map(|(nu, w)| conv.surface_element(nu).scale(*w))
            .collect();
        suite.push(
            CheckRecord::new(
                "rule_normal_integral",
                crate::summation::pairwise_sum_multivectors(&normal_terms).modulus(),
                cfg.tol("rule_normal_integral", 1e-12),
            )
            .with_param("domain", domain_label)
            .with_param("refinement", top),
        );
    }

    for (domain_label, domain) in &domains {
        let leveled_rules: Vec<(u32, crate::quadrature::QuadratureRule)> = cfg
            .refinements
            .iter()
            .map(|&level| Ok((level, build_rule(domain, level)?)))
            .collect::<Result<_>>()?;

        // constant field: exact vanishing at every refinement
        let constant = CliffordField::constant(Multivector::one(n));
        for (level, rule) in &leveled_rules {
            let res = cauchy_theorem_residual(&constant, &MassTerm::Zero, rule, conv)?;
            suite.push(
                CheckRecord::new(
                    "cauchy_theorem_constant",
                    res,
                    cfg.tol("cauchy_theorem_constant", 1e-12),
                )
                .with_param("domain", domain_label)
                .with_param("refinement", level)
                .with_param("lambda", "0"),
            );
        }

        // deformed theorem on the verified solution bank, one row per
        // (refinement, field, lambda)
        let mut fields: Vec<(String, CliffordField<f64>)> = Vec::new();
        for order in 1..=2usize {
            for beta in MultiIndex::with_order(n, order) {
                fields.push((
                    format!("V_{}", beta.label()),
                    symmetric_power_field(n, &beta, conv)?,
                ));
            }
        }
        for mass in &masses {
            for (field_label, monogenic) in &fields {
                let f = if mass.is_zero() {
                    monogenic.clone()
                } else {
                    from_monogenic(monogenic, mass)
                };
                let mut residuals = Vec::new();
                for (level, rule) in &leveled_rules {
                    let level = *level;
                    let res = cauchy_theorem_residual(&f, mass, rule, conv)?;
                    let tol = if level >= top.min(4) {
                        cfg.tol("cauchy_theorem", 1e-6)
                    } else {
                        cfg.tol("cauchy_theorem_sweep", 1e-2)
                    };
                    suite.push(
                        CheckRecord::new("cauchy_theorem", res, tol)
                            .with_param("domain", domain_label)
                            .with_param("refinement", level)
                            .with_param("field", field_label)
                            .with_param("lambda", mass),
                    );
                    residuals.push(res);
                }
                // recorded decay across the sweep
                let first = residuals[0];
                let last = *residuals.last().unwrap();
                let decayed = last <= first || last <= 1e-10;
                suite.push(
                    CheckRecord::new("cauchy_theorem_decay", last / first.max(1e-300), 1.0)
                        .with_param("domain", domain_label)
                        .with_param("field", field_label)
                        .with_param("lambda", mass)
                        .with_passed(decayed),
                );
            }
        }
    }

    // interior reproduction and exterior vanishing on the unit sphere
    let sphere = build_rule(&domains[0].1, top)?;
    let mut interior = Point::origin(n);
    interior.y0 = 0.2;
    interior.spatial[0] = 0.1;
    let mut exterior = Point::origin(n);
    exterior.y0 = 2.0;
    for mass in &masses {
        for (field_label, monogenic) in test_basis(n, 2, conv) {
            let f = if mass.is_zero() {
                monogenic.clone()
            } else {
                from_monogenic(&monogenic, mass)
            };
            let expected = f.eval(&interior);
            let got = cauchy_integral(&f, mass, &sphere, &interior, conv)?;
            let rel = got.value.distance(&expected) / expected.modulus().max(1e-2);
            suite.push(
                CheckRecord::new(
                    "cauchy_integral_interior",
                    rel,
                    cfg.tol("cauchy_integral_interior", 1e-3),
                )
                .with_param("field", &field_label)
                .with_param("lambda", mass)
                .with_param("refinement", top)
                .with_param("x", "(0.2,0.1,..)"),
            );

            let outside = cauchy_integral(&f, mass, &sphere, &exterior, conv)?;
            suite.push(
                CheckRecord::new(
                    "cauchy_integral_exterior",
                    outside.value.modulus(),
                    cfg.tol("cauchy_integral_exterior", 1e-4),
                )
                .with_param("field", &field_label)
                .with_param("lambda", mass)
                .with_param("refinement", top)
                .with_param("x", "(2,0,..)"),
            );
        }
    }

    // deformation consistency: the deformed integral is the conjugated
    // classical one
    let mass = masses.last().unwrap().clone();
    let monogenic = symmetric_power_field(n, &MultiIndex::with_order(n, 1)[0], conv)?;
    let f = from_monogenic(&monogenic, &mass);
    let direct = cauchy_integral(&f, &mass, &sphere, &interior, conv)?.value;
    let lifted = to_monogenic(&f, &mass);
    let indirect = mass.exp_mass(
        -interior.y0,
        &cauchy_integral(&lifted, &MassTerm::Zero, &sphere, &interior, conv)?.value,
    );
    suite.push(
        CheckRecord::new(
            "cauchy_deformation_consistency",
            direct.distance(&indirect),
            cfg.tol("cauchy_deformation_consistency", 1e-10),
        )
        .with_param("lambda", &mass),
    );

    Ok(suite)
}

// ---------------------------------------------------------------------------
// meanvalue
// ---------------------------------------------------------------------------

fn mean_value_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut suite = SuiteReport::new("meanvalue");
    let conv = cfg.convention;
    let n = cfg.n;
    let top = *cfg.refinements.last().unwrap();

    // printed constant equals the inverse ball volume, closed form
    let mut worst: f64 = 0.0;
    for nn in 1..=4u8 {
        for radius in [0.5, 1.0, 2.0] {
            let printed = mean_value_constant(nn, radius);
            let inverse = 1.0 / ball_volume_value(nn, radius);
            worst = worst.max((printed / inverse - 1.0).abs());
        }
    }
    suite.push(
        CheckRecord::new(
            "mean_value_constant_identity",
            worst,
            cfg.tol("mean_value_constant_identity", 1e-14),
        )
        .with_param("n", "1..=4"),
    );

    if n > 2 {
        suite.diagnose(format!(
            "mean-value reproduction skipped: ball volume rules cover n <= 2, configured n = {n}"
        ));
        return Ok(suite);
    }

    let masses = lambda_set(cfg)?;
    let centers = [Point::origin(n), {
        let mut p = Point::origin(n);
        p.y0 = 0.1;
        p.spatial[0] = -0.05;
        p
    }];
    for x in &centers {
        let rule = build_rule(
            &Domain::BallVolume {
                center: x.clone(),
                radius: 0.7,
            },
            top,
        )?;
        for mass in &masses {
            for (field_label, monogenic) in test_basis(n, 2, conv) {
                let f = if mass.is_zero() {
                    monogenic.clone()
                } else {
                    from_monogenic(&monogenic, mass)
                };
                let got = mean_value(&f, mass, &rule, x)?;
                let err = got.distance(&f.eval(x));
                suite.push(
                    CheckRecord::new("mean_value_reproduction", err, cfg.tol("mean_value_reproduction", 1e-5))
                        .with_param("field", &field_label)
                        .with_param("lambda", mass)
                        .with_param("refinement", top)
                        .with_param("x", format!("({},..)", x.y0)),
                );
            }
        }
    }

    Ok(suite)
}

// ---------------------------------------------------------------------------
// bergman
// ---------------------------------------------------------------------------

fn bergman_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut suite = SuiteReport::new("bergman");
    let conv = cfg.convention;
    let n = cfg.n;

    if n != 2 {
        suite.diagnose(format!(
            "bergman suite skipped: the explicit unit-ball kernel checks run at n = 2, \
             configured n = {n}"
        ));
        return Ok(suite);
    }

    // calibration on the constant function at the origin; a constant far
    // from 1 is a transcription finding about the printed bracket
    let level = cfg.refinements.last().unwrap() + 1;
    let calibration = calibrate_bergman(n, conv, level + 1)?;
    let deviation = (calibration - 1.0).abs();
    suite.diagnose(format!(
        "bergman calibration constant = {calibration:.6} at refinement {}",
        level + 1
    ));
    if deviation > cfg.tol("bergman_calibration_deviation", 1e-3) {
        suite.diagnose(format!(
            "bergman calibration deviates from 1 by {deviation:.3e}: the printed kernel bracket \
             integrates to {:.6} on constants (expected 1); reproduction checks run with the \
             calibrated kernel",
            1.0 / calibration
        ));
    }

    let rule = build_rule(
        &Domain::BallVolume {
            center: Point::origin(n),
            radius: 1.0,
        },
        level,
    )?;

    let masses = lambda_set(cfg)?;
    let eval_points = [Point::new(0.0, &[0.0, 0.0]), Point::new(0.1, &[0.2, 0.0])];

    for mass in &masses {
        // constants
        let constant = CliffordField::constant(Multivector::one(n));
        let f = if mass.is_zero() {
            constant.clone()
        } else {
            from_monogenic(&constant, mass)
        };
        for x in &eval_points {
            let got = bergman_reproduce(&f, mass, &rule, x, conv, calibration)?;
            let err = got.distance(&f.eval(x));
            suite.push(
                CheckRecord::new(
                    "bergman_reproduce_constant",
                    err,
                    cfg.tol("bergman_reproduce_constant", 5e-3),
                )
                .with_param("lambda", mass)
                .with_param("refinement", level)
                .with_param("x", format!("({},{},..)", x.y0, x.spatial[0])),
            );
        }

        // degree-one monogenic polynomials
        for beta in MultiIndex::with_order(n, 1) {
            let monogenic = symmetric_power_field(n, &beta, conv)?;
            let f = if mass.is_zero() {
                monogenic.clone()
            } else {
                from_monogenic(&monogenic, mass)
            };
            for x in &eval_points {
                let got = bergman_reproduce(&f, mass, &rule, x, conv, calibration)?;
                let err = got.distance(&f.eval(x));
                suite.push(
                    CheckRecord::new(
                        "bergman_reproduce_degree1",
                        err,
                        cfg.tol("bergman_reproduce_degree1", 1e-2),
                    )
                    .with_param("field", format!("V_{}", beta.label()))
                    .with_param("lambda", mass)
                    .with_param("refinement", level)
                    .with_param("x", format!("({},{},..)", x.y0, x.spatial[0])),
                );
            }
        }
    }

    // structural diagnostics on the raw bracket: scalar-part symmetry in
    // (x, y) and nullsolution behavior in the first argument
    let mut rng = rng_for(cfg, "bergman.symmetry");
    let mut asym: f64 = 0.0;
    for _ in 0..20 {
        let draw = |rng: &mut ChaCha8Rng| {
            loop {
                let coords: Vec<f64> = (0..=n as usize)
                    .map(|_| rng.random_range(-0.6..0.6))
                    .collect();
                let p = Point::from_coords(&coords);
                if p.norm() < 0.8 {
                    return p;
                }
            }
        };
        let x = draw(&mut rng);
        let y = draw(&mut rng);
        let bxy = bergman_kernel_raw(&x, &y, n, conv)?;
        let byx = bergman_kernel_raw(&y, &x, n, conv)?;
        asym = asym.max((bxy.scalar_part() - byx.scalar_part()).abs());
    }
    suite.diagnose(format!(
        "bergman scalar-part asymmetry max |B(x,y)_0 - B(y,x)_0| = {asym:.3e} on 20 sampled pairs"
    ));

    let y_fixed = Point::new(0.3, &[-0.2, 0.4]);
    let kernel_in_x = CliffordField::from_fn(
        n,
        Arc::new(move |x: &Point| bergman_kernel_raw(x, &y_fixed, n, conv).unwrap()),
        SolutionClass::Arbitrary,
    );
    let probe = Point::new(0.1, &[0.15, -0.1]);
    let dres = apply_d(&kernel_in_x, &probe, StencilSpec::new(1e-4), conv).modulus();
    suite.diagnose(format!(
        "bergman kernel first-argument D-residual (FD, h = 1e-4) = {dres:.3e}"
    ));

    Ok(suite)
}

// ---------------------------------------------------------------------------
// taylor
// ---------------------------------------------------------------------------

fn taylor_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut suite = SuiteReport::new("taylor");
    let conv = cfg.convention;
    let n = cfg.n;

    // fixed examples: the constant series and the degree-one recovery
    let constant_series = TaylorSeries::new(
        Point::origin(n),
        MassTerm::Zero,
        vec![(MultiIndex::zero(n), Multivector::one(n))],
    )?;
    let f = constant_series.as_field(conv)?;
    let p = Point::from_coords(&vec![0.25; n as usize + 1]);
    let mut worst = f.eval(&p).distance(&Multivector::one(n));

    let beta1 = MultiIndex::with_order(n, 1)[0].clone();
    let linear_series = TaylorSeries::new(
        Point::origin(n),
        MassTerm::Zero,
        vec![(beta1.clone(), Multivector::one(n))],
    )?;
    let f = linear_series.as_field(conv)?;
    let z = symmetric_power_field(n, &beta1, conv)?;
    worst = worst.max(f.eval(&p).distance(&z.eval(&p)));
    suite.push(CheckRecord::new(
        "taylor_fixed_examples",
        worst,
        cfg.tol("taylor_fixed_examples", 1e-13),
    ));

    // truncated random series of each order are mass solutions: residual at
    // the configured h plus an order-two decay check
    let mut rng = rng_for(cfg, "taylor.random_series");
    let samples = sample_points(n, 4, 0.3, &mut rng);
    for mass in lambda_set(cfg)? {
        for max_order in 1..=3usize {
            let mut terms = Vec::new();
            for order in 0..=max_order {
                for beta in MultiIndex::with_order(n, order) {
                    terms.push((
                        beta,
                        random_multivector(n, 1.0 / (1.0 + order as f64), &mut rng),
                    ));
                }
            }
            let center = Point::from_coords(
                &(0..=n as usize)
                    .map(|_| rng.random_range(-0.1..0.1))
                    .collect::<Vec<_>>(),
            );
            let series = TaylorSeries::new(center, mass.clone(), terms)?;
            let field = series.as_field(conv)?;
            let res = residual_norm(&field, &mass, &samples, StencilSpec::new(cfg.h), conv)?;
            let coarse = residual_norm(&field, &mass, &samples, StencilSpec::new(1e-2), conv)?;
            let fine = residual_norm(&field, &mass, &samples, StencilSpec::new(5e-3), conv)?;
            let (order_ok, order) = order_two_passed(coarse, fine, 1e-10, 3.0);
            suite.push(
                CheckRecord::new("taylor_truncation_residual", res, cfg.tol("taylor_truncation_residual", 1e-5))
                    .with_param("order", max_order)
                    .with_param("lambda", &mass)
                    .with_param("h", cfg.h)
                    .with_order(order)
                    .with_passed(res <= cfg.tol("taylor_truncation_residual", 1e-5) && order_ok),
            );
        }
    }

    // plane waves restricted to the hyperplane match the scalar Fourier mode
    let t = 0.8;
    let weight = Multivector::<f64>::one(1).to_complex();
    let param = PlaneWaveParam::new(vec![1.0], weight)?;
    let v = plane_wave(&param, &Point::new(0.0, &[t]), conv)?;
    let s = conv.zeta_sign();
    let expect = num_complex::Complex64::new(0.0, -s * t).exp();
    let dev = (v.coeff(0) - expect).norm();
    suite.push(CheckRecord::new(
        "plane_wave_hyperplane_mode",
        dev,
        cfg.tol("plane_wave_hyperplane_mode", 1e-13),
    ));

    Ok(suite)
}

// ---------------------------------------------------------------------------
// differentiability
// ---------------------------------------------------------------------------

fn differentiability_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut suite = SuiteReport::new("differentiability");
    let conv = cfg.convention;
    let n = cfg.n;
    let base = Point::from_coords(&{
        let mut c = vec![0.2; n as usize + 1];
        c[0] = 0.1;
        c[1] = 0.4;
        c
    });
    let radius = 0.05;

    // constant field: zero form, zero remainder
    let mut rng = rng_for(cfg, "differentiability.constant");
    let constant = CliffordField::constant(Multivector::one(n));
    let (form, order) =
        fit_lambda_linear_form(&constant, &base, &MassTerm::Zero, radius, conv, &mut rng)?;
    let coeff_norm = form
        .coefficients
        .iter()
        .map(|a| a.modulus())
        .fold(0.0, f64::max);
    suite.push(
        CheckRecord::new("fit_constant_exact", coeff_norm, cfg.tol("fit_constant_exact", 1e-10))
            .with_order(Some(order))
            .with_passed(coeff_norm <= cfg.tol("fit_constant_exact", 1e-10) && order >= 1.9),
    );

    // members: remainder decays at second order
    for mass in lambda_set(cfg)? {
        let mut rng = rng_for(cfg, "differentiability.members");
        for (idx, max_order) in [2usize, 3].iter().enumerate() {
            let poly = random_monogenic_poly(n, *max_order, conv, &mut rng);
            let monogenic = CliffordField::from_poly(poly, SolutionClass::Monogenic);
            let member = if mass.is_zero() {
                monogenic
            } else {
                from_monogenic(&monogenic, &mass)
            };
            let (_, order) =
                fit_lambda_linear_form(&member, &base, &mass, radius, conv, &mut rng)?;
            let deficit = if order.is_infinite() { 0.0 } else { (1.9 - order).max(0.0) };
            suite.push(
                CheckRecord::new("fit_member_order", deficit, cfg.tol("fit_member_order", 0.0))
                    .with_param("lambda", &mass)
                    .with_param("field", format!("seeded degree-{max_order} #{idx}"))
                    .with_order(Some(order)),
            );
        }
    }

    // the planted non-member y1^2 e0 decays at first order only
    let mut rng = rng_for(cfg, "differentiability.nonmember");
    let nonmember = CliffordField::from_poly(
        {
            let y1 = PolyField::coordinate(n, 1);
            y1.mul(&y1)
        },
        SolutionClass::Arbitrary,
    );
    let (_, order) =
        fit_lambda_linear_form(&nonmember, &base, &MassTerm::Zero, radius, conv, &mut rng)?;
    let excess = (order - 1.2).max(0.0);
    suite.push(
        CheckRecord::new("fit_nonmember_order", excess, cfg.tol("fit_nonmember_order", 0.0))
            .with_param("field", "y1^2 e0")
            .with_order(Some(order)),
    );

    // fit uniqueness: independent sample draws agree on exactly linear
    // members (their increments are captured with no remainder)
    for mass in lambda_set(cfg)? {
        let mut rng_field = rng_for(cfg, "differentiability.uniq.field");
        let poly = random_monogenic_poly(n, 1, conv, &mut rng_field);
        let member = from_monogenic(
            &CliffordField::from_poly(poly, SolutionClass::Monogenic),
            &mass,
        );
        let mut coeff_sets = Vec::new();
        for stream in ["differentiability.uniq.a", "differentiability.uniq.b"] {
            let mut rng = rng_for(cfg, stream);
            let (form, _) =
                fit_lambda_linear_form(&member, &base, &mass, radius, conv, &mut rng)?;
            coeff_sets.push(form.coefficients);
        }
        let mut worst: f64 = 0.0;
        for (a, b) in coeff_sets[0].iter().zip(&coeff_sets[1]) {
            worst = worst.max(a.distance(b));
        }
        suite.push(
            CheckRecord::new("fit_uniqueness", worst, cfg.tol("fit_uniqueness", 1e-6))
                .with_param("lambda", &mass),
        );
    }

    Ok(suite)
}
