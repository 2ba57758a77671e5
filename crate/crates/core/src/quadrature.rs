//! Quadrature rules over sphere surfaces, box boundaries and ball volumes in
//! R^{n+1}, with outward unit normals on surface rules.
//!
//! Surface rules exist for n in {1, 2, 3} (circle, 2-sphere, 3-sphere plus
//! box boundaries); volume rules for n in {1, 2} (disk, 3-ball). Rules can
//! be exported to and re-imported from a plain-text columnar table so
//! third-party rules can be injected.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::algebra::Point;
use crate::error::{Error, Result};

/// Domain a rule integrates over.
#[derive(Clone, Debug, PartialEq)]
pub enum Domain {
    SphereSurface { center: Point, radius: f64 },
    BoxBoundary { lo: Point, hi: Point },
    BallVolume { center: Point, radius: f64 },
}

impl Domain {
    pub fn kind(&self) -> &'static str {
        match self {
            Domain::SphereSurface { .. } => "sphere-surface",
            Domain::BoxBoundary { .. } => "box-boundary",
            Domain::BallVolume { .. } => "ball-volume",
        }
    }

    pub fn is_surface(&self) -> bool {
        !matches!(self, Domain::BallVolume { .. })
    }
}

/// Nodes, positive weights, and (for surface rules) outward unit normals.
#[derive(Clone, Debug)]
pub struct QuadratureRule {
    pub domain: Domain,
    pub nodes: Vec<Point>,
    pub weights: Vec<f64>,
    pub normals: Option<Vec<Point>>,
    n: u8,
}

impl QuadratureRule {
    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn total_weight(&self) -> f64 {
        crate::summation::pairwise_sum_f64(&self.weights)
    }

    pub fn is_surface(&self) -> bool {
        self.normals.is_some()
    }

    /// Local node spacing: the smallest distance between consecutive nodes.
    /// Our rules list geometric neighbors consecutively, so this tracks the
    /// finest mesh width; kernel evaluations closer than a few multiples of
    /// it to the surface are flagged ill-conditioned.
    pub fn node_spacing(&self) -> f64 {
        self.nodes
            .windows(2)
            .map(|w| w[0].sub(&w[1]).norm())
            .filter(|d| *d > 0.0)
            .fold(f64::INFINITY, f64::min)
    }

    /// Distance from a point to the rule's carrier set.
    pub fn distance_to_domain(&self, x: &Point) -> f64 {
        match &self.domain {
            Domain::SphereSurface { center, radius } => (x.sub(center).norm() - radius).abs(),
            Domain::BoxBoundary { lo, hi } => {
                // distance to the boundary of the box
                let coords = x.coords();
                let lo = lo.coords();
                let hi = hi.coords();
                let inside = coords
                    .iter()
                    .zip(lo.iter().zip(hi.iter()))
                    .all(|(c, (l, h))| c >= l && c <= h);
                if inside {
                    coords
                        .iter()
                        .zip(lo.iter().zip(hi.iter()))
                        .map(|(c, (l, h))| (c - l).min(h - c))
                        .fold(f64::INFINITY, f64::min)
                } else {
                    coords
                        .iter()
                        .zip(lo.iter().zip(hi.iter()))
                        .map(|(c, (l, h))| (l - c).max(0.0).max(c - h))
                        .map(|d| d * d)
                        .sum::<f64>()
                        .sqrt()
                }
            }
            Domain::BallVolume { center, radius } => {
                (radius - x.sub(center).norm()).max(0.0)
            }
        }
    }

    /// Plain-text columnar export: coordinates, weight, then normal
    /// components for surface rules. Lines starting with '#' are headers.
    pub fn export(&self) -> String {
        let mut out = String::new();
        let n = self.n;
        out.push_str("# cliffcheck quadrature rule v1\n");
        let domain = match &self.domain {
            Domain::SphereSurface { center, radius } => format!(
                "sphere-surface center={} radius={radius}",
                join(&center.coords())
            ),
            Domain::BoxBoundary { lo, hi } => {
                format!("box-boundary lo={} hi={}", join(&lo.coords()), join(&hi.coords()))
            }
            Domain::BallVolume { center, radius } => format!(
                "ball-volume center={} radius={radius}",
                join(&center.coords())
            ),
        };
        let _ = writeln!(out, "# n={n} domain={domain}");
        let cols: Vec<String> = (0..=n as usize)
            .map(|i| format!("y{i}"))
            .chain(std::iter::once("weight".to_string()))
            .chain(
                self.normals
                    .iter()
                    .flat_map(|_| (0..=n as usize).map(|i| format!("nu{i}")))
                    .collect::<Vec<_>>(),
            )
            .collect();
        let _ = writeln!(out, "# columns: {}", cols.join(" "));
        for (k, node) in self.nodes.iter().enumerate() {
            let mut fields: Vec<String> = node.coords().iter().map(|v| format!("{v:.17e}")).collect();
            fields.push(format!("{:.17e}", self.weights[k]));
            if let Some(normals) = &self.normals {
                fields.extend(normals[k].coords().iter().map(|v| format!("{v:.17e}")));
            }
            let _ = writeln!(out, "{}", fields.join(" "));
        }
        out
    }

    pub fn export_to(&self, path: &Path) -> Result<()> {
        fs::write(path, self.export()).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn import(text: &str) -> Result<Self> {
        let mut n: Option<u8> = None;
        let mut domain: Option<Domain> = None;
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        let mut normals: Vec<Point> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                let rest = rest.trim();
                if let Some(spec) = rest.strip_prefix("n=") {
                    let mut parts = spec.splitn(2, " domain=");
                    n = Some(parse_num(parts.next().unwrap_or_default())? as u8);
                    if let Some(d) = parts.next() {
                        domain = Some(parse_domain(d)?);
                    }
                }
                continue;
            }
            let values: Vec<f64> = line
                .split_whitespace()
                .map(parse_num)
                .collect::<Result<_>>()?;
            let n = n.ok_or_else(|| Error::Parse {
                what: "quadrature rule",
                detail: "missing '# n=... domain=...' header before data rows".to_string(),
            })? as usize;
            let coords = n + 1;
            if values.len() == coords + 1 {
                nodes.push(Point::from_coords(&values[..coords]));
                weights.push(values[coords]);
            } else if values.len() == 2 * coords + 1 {
                nodes.push(Point::from_coords(&values[..coords]));
                weights.push(values[coords]);
                normals.push(Point::from_coords(&values[coords + 1..]));
            } else {
                return Err(Error::Parse {
                    what: "quadrature rule",
                    detail: format!("row has {} fields, expected {} or {}", values.len(), coords + 1, 2 * coords + 1),
                });
            }
        }
        let n = n.ok_or_else(|| Error::Parse {
            what: "quadrature rule",
            detail: "empty rule file".to_string(),
        })?;
        let domain = domain.ok_or_else(|| Error::Parse {
            what: "quadrature rule",
            detail: "missing domain descriptor".to_string(),
        })?;
        if !normals.is_empty() && normals.len() != nodes.len() {
            return Err(Error::Parse {
                what: "quadrature rule",
                detail: "normals present on some rows but not all".to_string(),
            });
        }
        Ok(QuadratureRule {
            domain,
            nodes,
            weights,
            normals: if normals.is_empty() { None } else { Some(normals) },
            n,
        })
    }

    pub fn import_from(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::import(&text)
    }
}

fn join(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| format!("{v}"))
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_num(s: &str) -> Result<f64> {
    s.parse::<f64>().map_err(|e| Error::Parse {
        what: "quadrature rule",
        detail: format!("'{s}': {e}"),
    })
}

fn parse_domain(s: &str) -> Result<Domain> {
    let mut parts = s.split_whitespace();
    let kind = parts.next().unwrap_or_default();
    let mut center = None;
    let mut radius = None;
    let mut lo = None;
    let mut hi = None;
    for part in parts {
        if let Some(v) = part.strip_prefix("center=") {
            center = Some(parse_point(v)?);
        } else if let Some(v) = part.strip_prefix("radius=") {
            radius = Some(parse_num(v)?);
        } else if let Some(v) = part.strip_prefix("lo=") {
            lo = Some(parse_point(v)?);
        } else if let Some(v) = part.strip_prefix("hi=") {
            hi = Some(parse_point(v)?);
        }
    }
    match kind {
        "sphere-surface" => Ok(Domain::SphereSurface {
            center: center.ok_or_else(|| missing("center"))?,
            radius: radius.ok_or_else(|| missing("radius"))?,
        }),
        "ball-volume" => Ok(Domain::BallVolume {
            center: center.ok_or_else(|| missing("center"))?,
            radius: radius.ok_or_else(|| missing("radius"))?,
        }),
        "box-boundary" => Ok(Domain::BoxBoundary {
            lo: lo.ok_or_else(|| missing("lo"))?,
            hi: hi.ok_or_else(|| missing("hi"))?,
        }),
        other => Err(Error::Parse {
            what: "quadrature rule",
            detail: format!("unknown domain kind '{other}'"),
        }),
    }
}

fn missing(field: &str) -> Error {
    Error::Parse {
        what: "quadrature rule",
        detail: format!("domain descriptor missing '{field}'"),
    }
}

fn parse_point(s: &str) -> Result<Point> {
    let coords: Vec<f64> = s.split(',').map(parse_num).collect::<Result<_>>()?;
    Ok(Point::from_coords(&coords))
}

/// Gauss-Legendre nodes and weights on [-1, 1], symmetrized exactly.
pub fn gauss_legendre(count: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(count >= 1);
    let mut nodes = vec![0.0; count];
    let mut weights = vec![0.0; count];
    for i in 0..count.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (count as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre recurrence for P_count and its derivative at x
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=count {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = count as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x.abs();
        weights[i] = w;
        nodes[count - 1 - i] = x.abs();
        weights[count - 1 - i] = w;
    }
    if !count.is_multiple_of(2) {
        nodes[count / 2] = 0.0;
    }
    (nodes, weights)
}

/// Gauss-Legendre rule mapped onto [a, b].
fn gauss_legendre_on(a: f64, b: f64, count: usize) -> (Vec<f64>, Vec<f64>) {
    let (xs, ws) = gauss_legendre(count);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    (
        xs.iter().map(|x| mid + half * x).collect(),
        ws.iter().map(|w| w * half).collect(),
    )
}

/// Build a rule for the given domain at a refinement level (>= 1). Node
/// counts grow linearly with the level:
/// circle 16L, 2-sphere (4L polar) x (8L azimuth), 3-sphere 4L x 4L x 8L,
/// box faces (4L)^n per face, balls 6L radial shells times the sphere rule.
pub fn build_rule(domain: &Domain, refinement: u32) -> Result<QuadratureRule> {
    if refinement == 0 {
        return Err(Error::InvalidConfig("refinement must be >= 1".to_string()));
    }
    let level = refinement as usize;
    match domain {
        Domain::SphereSurface { center, radius } => {
            sphere_surface(center, *radius, level).map(|(nodes, weights, normals)| QuadratureRule {
                domain: domain.clone(),
                nodes,
                weights,
                normals: Some(normals),
                n: center.n(),
            })
        }
        Domain::BoxBoundary { lo, hi } => box_boundary(lo, hi, level),
        Domain::BallVolume { center, radius } => ball_volume(center, *radius, level),
    }
}

type SurfaceData = (Vec<Point>, Vec<f64>, Vec<Point>);

fn sphere_surface(center: &Point, radius: f64, level: usize) -> Result<SurfaceData> {
    let n = center.n();
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    let mut normals = Vec::new();
    match n {
        1 => {
            // circle: uniform in angle, spectrally accurate for smooth data
            let m = 16 * level;
            for k in 0..m {
                let theta = 2.0 * PI * k as f64 / m as f64;
                let normal = Point::new(theta.cos(), &[theta.sin()]);
                nodes.push(center.add(&normal.scale(radius)));
                weights.push(2.0 * PI * radius / m as f64);
                normals.push(normal);
            }
        }
        2 => {
            // Gauss-Legendre in the polar cosine, uniform azimuth
            let (ts, tw) = gauss_legendre(4 * level);
            let m = 8 * level;
            for (t, wt) in ts.iter().zip(&tw) {
                let sin_theta = (1.0 - t * t).sqrt();
                for k in 0..m {
                    let phi = 2.0 * PI * k as f64 / m as f64;
                    let normal =
                        Point::new(*t, &[sin_theta * phi.cos(), sin_theta * phi.sin()]);
                    nodes.push(center.add(&normal.scale(radius)));
                    weights.push(radius * radius * wt * 2.0 * PI / m as f64);
                    normals.push(normal);
                }
            }
        }
        3 => {
            // hyperspherical product: sin^2(psi) dpsi x GL in cos(theta) x uniform phi
            let (us, uw) = gauss_legendre_on(0.0, PI, 4 * level);
            let (ts, tw) = gauss_legendre(4 * level);
            let m = 8 * level;
            for (psi, wpsi) in us.iter().zip(&uw) {
                let sp = psi.sin();
                for (t, wt) in ts.iter().zip(&tw) {
                    let st = (1.0 - t * t).sqrt();
                    for k in 0..m {
                        let phi = 2.0 * PI * k as f64 / m as f64;
                        let normal = Point::new(
                            psi.cos(),
                            &[sp * t, sp * st * phi.cos(), sp * st * phi.sin()],
                        );
                        nodes.push(center.add(&normal.scale(radius)));
                        weights.push(radius.powi(3) * wpsi * sp * sp * wt * 2.0 * PI / m as f64);
                        normals.push(normal);
                    }
                }
            }
        }
        other => {
            return Err(Error::UnsupportedDomain {
                domain: "sphere-surface",
                n: other,
            })
        }
    }
    Ok((nodes, weights, normals))
}

fn box_boundary(lo: &Point, hi: &Point, level: usize) -> Result<QuadratureRule> {
    let n = lo.n();
    if !(1..=3).contains(&n) {
        return Err(Error::UnsupportedDomain {
            domain: "box-boundary",
            n,
        });
    }
    let dims = n as usize + 1;
    let m = 4 * level;
    let lo_c = lo.coords();
    let hi_c = hi.coords();
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    let mut normals = Vec::new();
    // per-axis 1D rules for the tangential directions
    let axis_rules: Vec<(Vec<f64>, Vec<f64>)> = (0..dims)
        .map(|i| gauss_legendre_on(lo_c[i], hi_c[i], m))
        .collect();
    for fixed_axis in 0..dims {
        for (side, coord_value) in [(-1.0, lo_c[fixed_axis]), (1.0, hi_c[fixed_axis])] {
            let tangents: Vec<usize> = (0..dims).filter(|&i| i != fixed_axis).collect();
            // tensor product over the tangent axes
            let mut idx = vec![0usize; tangents.len()];
            loop {
                let mut coords = vec![0.0; dims];
                let mut w = 1.0;
                coords[fixed_axis] = coord_value;
                for (slot, &axis) in tangents.iter().enumerate() {
                    coords[axis] = axis_rules[axis].0[idx[slot]];
                    w *= axis_rules[axis].1[idx[slot]];
                }
                let mut normal = vec![0.0; dims];
                normal[fixed_axis] = side;
                nodes.push(Point::from_coords(&coords));
                weights.push(w);
                normals.push(Point::from_coords(&normal));
                // advance tensor index
                let mut slot = 0;
                loop {
                    if slot == tangents.len() {
                        break;
                    }
                    idx[slot] += 1;
                    if idx[slot] < m {
                        break;
                    }
                    idx[slot] = 0;
                    slot += 1;
                }
                if slot == tangents.len() {
                    break;
                }
            }
        }
    }
    Ok(QuadratureRule {
        domain: Domain::BoxBoundary {
            lo: lo.clone(),
            hi: hi.clone(),
        },
        nodes,
        weights,
        normals: Some(normals),
        n,
    })
}

fn ball_volume(center: &Point, radius: f64, level: usize) -> Result<QuadratureRule> {
    let n = center.n();
    if !(1..=2).contains(&n) {
        return Err(Error::UnsupportedDomain {
            domain: "ball-volume",
            n,
        });
    }
    let (rs, rw) = gauss_legendre_on(0.0, radius, 6 * level);
    let (unit_nodes, unit_weights, _) = sphere_surface(&Point::origin(n), 1.0, level)?;
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for (r, wr) in rs.iter().zip(&rw) {
        let shell = r.powi(n as i32);
        for (omega, ws) in unit_nodes.iter().zip(&unit_weights) {
            nodes.push(center.add(&omega.scale(*r)));
            weights.push(wr * shell * ws);
        }
    }
    Ok(QuadratureRule {
        domain: Domain::BallVolume {
            center: center.clone(),
            radius,
        },
        nodes,
        weights,
        normals: None,
        n,
    })
}

/// Surface area of the unit n-sphere in R^{n+1}.
pub fn unit_sphere_area(n: u8) -> f64 {
    2.0 * PI.powf((n as f64 + 1.0) / 2.0) / gamma_half_integer(n as u32 + 1)
}

/// Volume of the radius-R ball in R^{n+1}.
pub fn ball_volume_value(n: u8, radius: f64) -> f64 {
    unit_sphere_area(n) * radius.powi(n as i32 + 1) / (n as f64 + 1.0)
}

/// Gamma(k/2) for positive integer k, exact in double arithmetic.
pub fn gamma_half_integer(k: u32) -> f64 {
    assert!(k >= 1);
    if k.is_multiple_of(2) {
        // Gamma(m) = (m-1)!
        (1..k / 2).map(f64::from).product()
    } else {
        // Gamma(m + 1/2) = (2m)! sqrt(pi) / (4^m m!)
        let mut value = PI.sqrt();
        let mut arg = 0.5;
        while arg + 1.0 <= k as f64 / 2.0 {
            value *= arg;
            arg += 1.0;
        }
        value
    }
}
