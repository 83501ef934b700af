//! Concentration ratios, the sharp envelope, and the level-set machinery.
//!
//! The quotient `R(f, Omega)` of alpha-weighted mass inside a domain against
//! the full norm is bounded by `theta(s) = 1 - (1 + s/pi)^{-1-alpha}` over
//! all domains of hyperbolic measure `s`, with equality exactly for
//! reproducing kernels on their pseudohyperbolic discs. This module computes
//! the quotient, its supremum over signals (top Galerkin eigenvalue), the
//! decreasing-rearrangement envelope `I(s)` of a fixed signal, the
//! isoperimetric audit of its level curves, and the Lebesgue-constraint
//! functionals with their boundary-escape and thin-annuli demonstrations.

use num_complex::Complex64;
use serde::Serialize;

use crate::bergman::{
    radial_restriction_diagonal, top_eigenpair, toeplitz_matrix, vector_cosine,
    BergmanFunctionDisc, ToeplitzMatrix,
};
use crate::error::{Error, Result};
use crate::geometry::{DomainSpec, Model, Shape};
use crate::quadrature::{gauss_jacobi, gauss_legendre_on, DiscChart, DiskGrid, Measure};
use crate::specfun::reg_inc_beta;

/// Gap below which a domain is flagged as extremal by reports.
pub const EXTREMAL_GAP: f64 = 1e-5;

/// The sharp concentration envelope `theta(s) = 1 - (1 + s/pi)^{-1-alpha}`.
pub fn theta(s: f64, alpha: f64) -> Result<f64> {
    if !(s.is_finite() && s >= 0.0) {
        return Err(Error::domain(format!("theta requires s >= 0, got {s}")));
    }
    if !(alpha.is_finite() && alpha > -1.0) {
        return Err(Error::domain(format!(
            "theta requires alpha > -1, got {alpha}"
        )));
    }
    Ok(1.0 - (1.0 + s / std::f64::consts::PI).powf(-1.0 - alpha))
}

/// `theta'(s) = (1+alpha)/pi (1 + s/pi)^{-2-alpha}`.
pub fn theta_prime(s: f64, alpha: f64) -> Result<f64> {
    if !(s.is_finite() && s >= 0.0) {
        return Err(Error::domain(format!("theta' requires s >= 0, got {s}")));
    }
    if !(alpha.is_finite() && alpha > -1.0) {
        return Err(Error::domain(format!(
            "theta' requires alpha > -1, got {alpha}"
        )));
    }
    let pi = std::f64::consts::PI;
    Ok((1.0 + alpha) / pi * (1.0 + s / pi).powf(-2.0 - alpha))
}

fn chart_resolution_for(len: usize) -> (usize, usize) {
    (160.max(2 * len), (2 * len + 64).max(128))
}

/// `int_Omega |f|^2 (1-|z|^2)^alpha dz` for a coefficient-space function.
fn alpha_mass_on_shape(
    f: &BergmanFunctionDisc,
    shape: &Shape,
    grid: &DiskGrid,
) -> Result<f64> {
    let alpha = f.alpha();
    let (n_u, n_phi) = chart_resolution_for(f.len());
    let ev = f.evaluator();
    let weighted = |z: Complex64| ev.eval(z).norm_sqr() * (1.0 - z.norm_sqr()).powf(alpha);
    match shape {
        Shape::CenteredDisc { radius } => {
            let chart = DiscChart::annulus(0.0, *radius, n_u, n_phi)?;
            Ok(chart.integrate(weighted))
        }
        Shape::Annulus { r_inner, r_outer } => {
            let chart = DiscChart::annulus(*r_inner, *r_outer, n_u, n_phi)?;
            Ok(chart.integrate(weighted))
        }
        Shape::BoundaryComplement { radius } => {
            let chart = DiscChart::annulus(0.0, *radius, n_u, n_phi)?;
            Ok(f.norm_sq() - chart.integrate(weighted))
        }
        Shape::PseudoDisc { center, measure } => {
            let w = crate::geometry::Point::Disc(crate::geometry::DiskPoint::new(
                center[0], center[1],
            )?);
            let ball = crate::geometry::disc_from_measure(&w, *measure)?;
            let chart = DiscChart::new(
                ball.euclidean_center_c(),
                ball.euclidean_radius,
                n_u,
                n_phi,
            )?;
            Ok(chart.integrate(weighted))
        }
        Shape::Union { parts } => {
            let mut total = 0.0;
            for part in parts {
                total += alpha_mass_on_shape(f, part, grid)?;
            }
            Ok(total)
        }
        Shape::Mask { grid: dims, cells } => {
            if dims[0] != grid.radial_count() || dims[1] != grid.angular_count() {
                return Err(Error::usage("mask grid mismatch".to_string()));
            }
            let values: Vec<f64> = grid.nodes().iter().map(|&z| ev.eval(z).norm_sqr()).collect();
            grid.integrate_masked(&values, cells, Measure::AlphaWeighted)
        }
        Shape::Rectangle { .. } => Err(Error::usage(
            "rectangles live in the half-plane; map them to the disc first".to_string(),
        )),
    }
}

/// The concentration quotient
/// `R(f, Omega) = int_Omega |f|^2 (1-|z|^2)^alpha dz / ||f||^2`.
pub fn concentration_ratio(
    f: &BergmanFunctionDisc,
    dom: &DomainSpec,
    grid: &DiskGrid,
) -> Result<f64> {
    if dom.model != Model::Disc {
        return Err(Error::usage(
            "concentration ratios are computed in the disc model".to_string(),
        ));
    }
    let norm_sq = f.norm_sq();
    if norm_sq == 0.0 {
        return Err(Error::usage(
            "concentration ratio of the zero function".to_string(),
        ));
    }
    Ok(alpha_mass_on_shape(f, &dom.shape, grid)? / norm_sq)
}

/// Leading data of the optimizing signal.
#[derive(Debug, Clone, Serialize)]
pub struct EigenSummary {
    pub eigenvalue: f64,
    pub vector: Vec<Complex64>,
}

/// Outcome of a maximal-concentration computation.
#[derive(Debug, Clone, Serialize)]
pub struct ConcentrationReport {
    pub alpha: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    /// JSON descriptor of the analyzed domain.
    pub domain: String,
    /// Disc-side hyperbolic measure entering the envelope.
    pub mu: f64,
    /// Half-plane measure of the original domain, when one existed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    /// The concentration value (top eigenvalue or fixed-signal quotient).
    pub value: f64,
    pub theta: f64,
    pub gap: f64,
    pub verdict: String,
    pub basis: usize,
    pub grid: [usize; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigen: Option<EigenSummary>,
}

fn report_from_matrix(
    matrix: &ToeplitzMatrix,
    mu: f64,
    nu: Option<f64>,
    beta: Option<f64>,
    grid: &DiskGrid,
) -> Result<ConcentrationReport> {
    let (eigenvalue, vector) = top_eigenpair(matrix)?;
    let bound = theta(mu, matrix.alpha)?;
    let gap = bound - eigenvalue;
    Ok(ConcentrationReport {
        alpha: matrix.alpha,
        beta,
        domain: matrix.domain.clone(),
        mu,
        nu,
        value: eigenvalue,
        theta: bound,
        gap,
        verdict: if gap.abs() < EXTREMAL_GAP {
            "extremal".to_string()
        } else {
            "sub_extremal".to_string()
        },
        basis: matrix.n,
        grid: [grid.radial_count(), grid.angular_count()],
        eigen: Some(EigenSummary {
            eigenvalue,
            vector,
        }),
    })
}

/// Maximal concentration over the truncated space for a disc-model domain,
/// with the envelope comparison.
pub fn sup_concentration(
    dom: &DomainSpec,
    alpha: f64,
    n_basis: usize,
    grid: &DiskGrid,
) -> Result<ConcentrationReport> {
    let mu = dom.hyperbolic_measure(grid)?;
    let matrix = toeplitz_matrix(dom, alpha, n_basis, grid)?;
    report_from_matrix(&matrix, mu, None, None, grid)
}

/// Maximal wavelet concentration of order `beta` on a half-plane domain.
///
/// Pipeline: reflect through `x -> -x`, map by the Cayley transform to a
/// disc domain, set `alpha = 2 beta - 1` and `s = nu(Delta)/4`, and take the
/// top Galerkin eigenpair. The reflection leaves the spectrum unchanged (it
/// conjugates the matrix by a diagonal sign unitary), so reported values are
/// orientation-free.
pub fn c_delta_beta(
    delta: &DomainSpec,
    beta: f64,
    n_basis: usize,
    grid: &DiskGrid,
) -> Result<ConcentrationReport> {
    if delta.model != Model::HalfPlane {
        return Err(Error::usage(
            "wavelet concentration takes a half-plane domain".to_string(),
        ));
    }
    if !(beta.is_finite() && beta > 0.0) {
        return Err(Error::domain(format!(
            "wavelet concentration requires beta > 0, got {beta}"
        )));
    }
    let nu = delta.hyperbolic_measure(grid)?;
    let alpha = 2.0 * beta - 1.0;
    let omega = delta.reflect()?.to_disc_model(grid)?;
    let matrix = toeplitz_matrix(&omega, alpha, n_basis, grid)?;
    let mut report = report_from_matrix(&matrix, nu / 4.0, Some(nu), Some(beta), grid)?;
    report.domain = serde_json::to_string(delta)
        .map_err(|e| Error::Parse(format!("domain descriptor serialization: {e}")))?;
    Ok(report)
}

/// Samples of `u(z) = |f(z)|^2 (1-|z|^2)^{alpha+2}` on the grid, with `f`
/// normalized first.
pub fn u_profile(f: &BergmanFunctionDisc, grid: &DiskGrid) -> Result<Vec<f64>> {
    let f = f.normalized()?;
    let ev = f.evaluator();
    let alpha = f.alpha();
    let n_theta = grid.angular_count();
    let mut out = Vec::with_capacity(grid.len());
    for (idx, &z) in grid.nodes().iter().enumerate() {
        let gap = grid.ring_boundary_gap(idx / n_theta);
        out.push(ev.eval(z).norm_sqr() * gap.powf(alpha + 2.0));
    }
    Ok(out)
}

/// Distribution function, decreasing rearrangement and envelope of a scalar
/// field against the hyperbolic measure.
///
/// Cells are sorted exactly (ties by index); the envelope is the concave
/// piecewise-linear prefix interpolation, so `I(s) = int_0^s u*(sigma)
/// dsigma` by construction.
#[derive(Debug, Clone, Serialize)]
pub struct LevelProfile {
    /// Sampled thresholds, descending.
    pub thresholds: Vec<f64>,
    /// `rho(t) = mu({u > t})` at the sampled thresholds.
    pub rho: Vec<f64>,
    /// Sampled measures.
    pub s_samples: Vec<f64>,
    /// `u*(s)` at the sampled measures.
    pub ustar: Vec<f64>,
    /// `I(s)` at the sampled measures.
    pub envelope: Vec<f64>,
    /// Total field mass over the grid.
    pub total_mass: f64,
    /// Total hyperbolic measure carried by the grid.
    pub total_measure: f64,
    #[serde(skip)]
    order: Vec<u32>,
    #[serde(skip)]
    prefix_measure: Vec<f64>,
    #[serde(skip)]
    prefix_mass: Vec<f64>,
    #[serde(skip)]
    sorted_values: Vec<f64>,
}

impl LevelProfile {
    /// Right-continuous step value `u*(s)`.
    pub fn ustar_at(&self, s: f64) -> f64 {
        if s <= 0.0 {
            return self.sorted_values.first().copied().unwrap_or(0.0);
        }
        if s >= self.total_measure {
            return 0.0;
        }
        let k = self.prefix_measure.partition_point(|&m| m <= s);
        self.sorted_values[k.min(self.sorted_values.len() - 1)]
    }

    /// Concave piecewise-linear envelope `I(s)`.
    pub fn envelope_at(&self, s: f64) -> f64 {
        if s <= 0.0 {
            return 0.0;
        }
        if s >= self.total_measure {
            return self.total_mass;
        }
        let k = self.prefix_measure.partition_point(|&m| m <= s);
        let (m0, i0) = if k == 0 {
            (0.0, 0.0)
        } else {
            (self.prefix_measure[k - 1], self.prefix_mass[k - 1])
        };
        i0 + self.sorted_values[k.min(self.sorted_values.len() - 1)] * (s - m0)
    }

    /// Index count of the superlevel prefix of measure closest to `s`.
    pub fn prefix_for_measure(&self, s: f64) -> usize {
        let k = self.prefix_measure.partition_point(|&m| m < s);
        if k == 0 {
            return 1;
        }
        if k >= self.prefix_measure.len() {
            return self.prefix_measure.len();
        }
        let under = (self.prefix_measure[k - 1] - s).abs();
        let over = (self.prefix_measure[k] - s).abs();
        if under <= over {
            k
        } else {
            k + 1
        }
    }

    /// Grid indices of the first `count` cells in descending field order.
    pub fn leading_cells(&self, count: usize) -> impl Iterator<Item = usize> + '_ {
        self.order.iter().take(count).map(|&i| i as usize)
    }
}

/// Build the level-set profile of a field sampled on the grid.
pub fn level_profile(u: &[f64], grid: &DiskGrid, n_samples: usize) -> Result<LevelProfile> {
    if u.len() != grid.len() {
        return Err(Error::usage(format!(
            "field length {} does not match grid size {}",
            u.len(),
            grid.len()
        )));
    }
    if n_samples < 2 {
        return Err(Error::usage("need at least two profile samples".to_string()));
    }
    let mut order: Vec<u32> = (0..u.len() as u32).collect();
    order.sort_by(|&a, &b| {
        u[b as usize]
            .partial_cmp(&u[a as usize])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    let mut prefix_measure = Vec::with_capacity(u.len());
    let mut prefix_mass = Vec::with_capacity(u.len());
    let mut sorted_values = Vec::with_capacity(u.len());
    let mut m_acc = 0.0;
    let mut i_acc = 0.0;
    for &idx in &order {
        let w = grid.weight(idx as usize, Measure::Hyperbolic);
        let val = u[idx as usize];
        m_acc += w;
        i_acc += w * val;
        prefix_measure.push(m_acc);
        prefix_mass.push(i_acc);
        sorted_values.push(val);
    }
    let total_measure = m_acc;
    let total_mass = i_acc;

    // sampled summaries: thresholds descending through the value range,
    // measures linear to a moderate multiple of the interesting range
    let mut profile = LevelProfile {
        thresholds: Vec::new(),
        rho: Vec::new(),
        s_samples: Vec::new(),
        ustar: Vec::new(),
        envelope: Vec::new(),
        total_mass,
        total_measure,
        order,
        prefix_measure,
        prefix_mass,
        sorted_values,
    };
    let u_max = profile.sorted_values.first().copied().unwrap_or(0.0);
    for k in 0..n_samples {
        let t = u_max * (n_samples - k) as f64 / (n_samples as f64 + 1.0);
        let rho = match profile
            .sorted_values
            .iter()
            .position(|&v| v <= t)
        {
            Some(0) | None if profile.sorted_values.first().map_or(true, |&v| v <= t) => 0.0,
            Some(pos) => profile.prefix_measure[pos - 1],
            None => profile.total_measure,
        };
        profile.thresholds.push(t);
        profile.rho.push(rho);
    }
    let s_cap = profile.total_measure.min(40.0 * std::f64::consts::PI);
    for k in 1..=n_samples {
        let s = s_cap * k as f64 / n_samples as f64;
        profile.s_samples.push(s);
        profile.ustar.push(profile.ustar_at(s));
        profile.envelope.push(profile.envelope_at(s));
    }
    Ok(profile)
}

/// The best superlevel mask of hyperbolic measure near `s` for the field
/// behind `profile`; returns the mask domain and its achieved measure.
pub fn superlevel_domain(
    profile: &LevelProfile,
    grid: &DiskGrid,
    s: f64,
) -> Result<(DomainSpec, f64)> {
    if !(s > 0.0 && s < profile.total_measure) {
        return Err(Error::usage(format!(
            "superlevel measure {s} outside (0, {})",
            profile.total_measure
        )));
    }
    let count = profile.prefix_for_measure(s);
    let mut cells = vec![false; grid.len()];
    for idx in profile.leading_cells(count) {
        cells[idx] = true;
    }
    let achieved = profile.prefix_measure[count - 1];
    Ok((
        DomainSpec {
            model: Model::Disc,
            shape: Shape::Mask {
                grid: [grid.radial_count(), grid.angular_count()],
                cells,
            },
        },
        achieved,
    ))
}

/// One audited level curve.
#[derive(Debug, Clone, Serialize)]
pub struct AuditSample {
    pub s: f64,
    pub level: f64,
    pub hyperbolic_length: f64,
    /// Isoperimetric bound `4 pi s + 4 s^2`.
    pub bound: f64,
    /// `L^2 / bound - 1`; nonnegative up to discretization for true fields.
    pub excess: f64,
    pub segments: usize,
    pub skipped: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Trace level curves of the field at `u*(s)` for each requested `s` and
/// compare their hyperbolic length against the isoperimetric bound
/// `L^2 >= 4 pi s + 4 s^2` (equality exactly for geodesic discs).
pub fn isoperimetric_audit(
    profile: &LevelProfile,
    u: &[f64],
    grid: &DiskGrid,
    s_samples: &[f64],
) -> Vec<AuditSample> {
    s_samples
        .iter()
        .map(|&s| {
            let level = profile.ustar_at(s);
            let bound = 4.0 * std::f64::consts::PI * s + 4.0 * s * s;
            if !(level > 0.0) {
                return AuditSample {
                    s,
                    level,
                    hyperbolic_length: 0.0,
                    bound,
                    excess: 0.0,
                    segments: 0,
                    skipped: true,
                    note: Some("degenerate level".to_string()),
                };
            }
            let (length, segments) = contour_hyperbolic_length(u, grid, level);
            if segments == 0 {
                AuditSample {
                    s,
                    level,
                    hyperbolic_length: 0.0,
                    bound,
                    excess: 0.0,
                    segments: 0,
                    skipped: true,
                    note: Some("no contour at this level".to_string()),
                }
            } else {
                AuditSample {
                    s,
                    level,
                    hyperbolic_length: length,
                    bound,
                    excess: length * length / bound - 1.0,
                    segments,
                    skipped: false,
                    note: None,
                }
            }
        })
        .collect()
}

/// Marching-squares level curve on the polar grid; returns the hyperbolic
/// length `sum |segment| / (1 - |mid|^2)` and the segment count.
fn contour_hyperbolic_length(u: &[f64], grid: &DiskGrid, level: f64) -> (f64, usize) {
    let n_r = grid.radial_count();
    let n_t = grid.angular_count();
    let dtheta = 2.0 * std::f64::consts::PI / n_t as f64;
    let mut length = 0.0;
    let mut segments = 0usize;

    let mut add_segment = |p: Complex64, q: Complex64| {
        let mid = 0.5 * (p + q);
        length += (p - q).norm() / (1.0 - mid.norm_sqr());
        segments += 1;
    };

    for j in 0..n_r - 1 {
        let r0 = grid.ring_radius(j);
        let r1 = grid.ring_radius(j + 1);
        for k in 0..n_t {
            let k1 = (k + 1) % n_t;
            let th0 = dtheta * k as f64;
            let th1 = th0 + dtheta;
            // corners: a = (r0, th0), b = (r1, th0), c = (r1, th1), d = (r0, th1)
            let ua = u[j * n_t + k];
            let ub = u[(j + 1) * n_t + k];
            let uc = u[(j + 1) * n_t + k1];
            let ud = u[j * n_t + k1];
            let mut case = 0usize;
            if ua > level {
                case |= 1;
            }
            if ub > level {
                case |= 2;
            }
            if uc > level {
                case |= 4;
            }
            if ud > level {
                case |= 8;
            }
            if case == 0 || case == 15 {
                continue;
            }
            let lerp = |x0: f64, x1: f64, v0: f64, v1: f64| x0 + (level - v0) / (v1 - v0) * (x1 - x0);
            let polar = |r: f64, th: f64| Complex64::new(r * th.cos(), r * th.sin());
            let e_ab = || polar(lerp(r0, r1, ua, ub), th0);
            let e_bc = || polar(r1, lerp(th0, th1, ub, uc));
            let e_cd = || polar(lerp(r1, r0, uc, ud), th1);
            let e_da = || polar(r0, lerp(th1, th0, ud, ua));
            match case {
                1 | 14 => add_segment(e_ab(), e_da()),
                2 | 13 => add_segment(e_ab(), e_bc()),
                4 | 11 => add_segment(e_bc(), e_cd()),
                8 | 7 => add_segment(e_cd(), e_da()),
                3 | 12 => add_segment(e_bc(), e_da()),
                6 | 9 => add_segment(e_ab(), e_cd()),
                5 => {
                    // saddle: resolve by the cell average
                    if 0.25 * (ua + ub + uc + ud) > level {
                        add_segment(e_ab(), e_bc());
                        add_segment(e_cd(), e_da());
                    } else {
                        add_segment(e_ab(), e_da());
                        add_segment(e_bc(), e_cd());
                    }
                }
                10 => {
                    if 0.25 * (ua + ub + uc + ud) > level {
                        add_segment(e_ab(), e_da());
                        add_segment(e_bc(), e_cd());
                    } else {
                        add_segment(e_ab(), e_bc());
                        add_segment(e_cd(), e_da());
                    }
                }
                _ => unreachable!(),
            }
        }
    }
    (length, segments)
}

fn check_range(name: &str, value: f64, lo: f64, hi: f64) -> Result<()> {
    if !(value.is_finite() && value > lo && value < hi) {
        return Err(Error::domain(format!(
            "{name} must lie in ({lo}, {hi}), got {value}"
        )));
    }
    Ok(())
}

/// Composite Gauss-Legendre on `[a, b)` with panels geometrically refined
/// toward `b`, for integrands whose derivatives blow up there. Panels halve
/// their distance to `b`; the dropped sliver has relative width `1e-30`.
fn endpoint_refined_integral<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<f64> {
    let span = b - a;
    let mut total = 0.0;
    let mut gap = span;
    loop {
        let next_gap = 0.5 * gap;
        let (nodes, weights) = gauss_legendre_on(24, b - gap, b - next_gap)?;
        total += nodes
            .iter()
            .zip(&weights)
            .map(|(t, w)| w * f(*t))
            .sum::<f64>();
        gap = next_gap;
        if gap < 1e-30 * span {
            break;
        }
    }
    Ok(total)
}

/// `theta^1_alpha(s) = 2 int_0^{sqrt(s/pi)} t (1-t^2)^alpha dt` for
/// `alpha` in `(-1, 0)`: closed form
/// `(1 - (1 - s/pi)^{1+alpha}) / (1+alpha)`, gated against direct
/// quadrature of the integral before being returned.
pub fn theta1(s: f64, alpha: f64) -> Result<f64> {
    if !(alpha > -1.0 && alpha < 0.0) {
        return Err(Error::domain(format!(
            "theta1 requires alpha in (-1, 0), got {alpha}"
        )));
    }
    check_range("s", s, 0.0, std::f64::consts::PI)?;
    let c = s / std::f64::consts::PI;
    let closed = (1.0 - (1.0 - c).powf(1.0 + alpha)) / (1.0 + alpha);
    // the integrand is analytic on [0, sqrt(c)] but its derivatives blow up
    // as the interval approaches t = 1; refine panels toward the upper end
    let integrand = |t: f64| 2.0 * t * (1.0 - t * t).powf(alpha);
    let quad = endpoint_refined_integral(&integrand, 0.0, c.sqrt())?;
    if (closed - quad).abs() > 1e-10 {
        return Err(Error::domain(format!(
            "theta1 closed form {closed} disagrees with its defining integral {quad}"
        )));
    }
    Ok(closed)
}

/// `theta^2_alpha(s) = 2 int_{sqrt(1-s/pi)}^1 t (1-t^2)^alpha dt` for
/// `alpha > 0`: closed form `(s/pi)^{1+alpha} / (1+alpha)`, gated against a
/// Gauss-Jacobi quadrature of the printed integral (the `(1-t)^alpha`
/// endpoint factor needs the Jacobi weight).
pub fn theta2(s: f64, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::domain(format!(
            "theta2 requires alpha > 0, got {alpha}"
        )));
    }
    check_range("s", s, 0.0, std::f64::consts::PI)?;
    let c = s / std::f64::consts::PI;
    let closed = c.powf(1.0 + alpha) / (1.0 + alpha);
    // the integrand vanishes at t = 1 but has a derivative singularity
    // there for non-integer alpha; refine panels toward the endpoint
    let a = (1.0 - c).sqrt();
    let integrand = |t: f64| 2.0 * t * (1.0 - t * t).powf(alpha);
    let quad = endpoint_refined_integral(&integrand, a, 1.0)?;
    if (closed - quad).abs() > 1e-10 {
        return Err(Error::domain(format!(
            "theta2 closed form {closed} disagrees with its defining integral {quad}"
        )));
    }
    Ok(closed)
}

/// `(1/pi) int_Omega (1-|z|^2)^alpha dz`: the radial-rearrangement
/// functional whose minimizers over fixed Lebesgue measure are the stated
/// radial domains.
pub fn weighted_lebesgue_functional(
    dom: &DomainSpec,
    alpha: f64,
    grid: &DiskGrid,
) -> Result<f64> {
    if dom.model != Model::Disc {
        return Err(Error::usage("the functional is defined on disc domains".to_string()));
    }
    let unit = BergmanFunctionDisc::new(alpha, vec![Complex64::new(1.0, 0.0)])?;
    // |e_0|^2 = (alpha+1)/pi, so int_Omega (1-|z|^2)^alpha dz / pi
    // = mass(e_0, Omega) / (alpha + 1)
    let mass = alpha_mass_on_shape(&unit, &dom.shape, grid)?;
    Ok(mass / (alpha + 1.0))
}

/// Row of a Lebesgue-constraint comparison.
#[derive(Debug, Clone, Serialize)]
pub struct LebesgueCandidate {
    pub domain: String,
    pub lebesgue_measure: f64,
    /// `(1/pi) int_Omega (1-|z|^2)^alpha dz`.
    pub functional: f64,
    /// `sup_f R(f, Omega)` over the truncated space.
    pub sup_ratio: f64,
}

/// Verification that the stated radial domain minimizes the weighted
/// Lebesgue functional at fixed planar measure.
#[derive(Debug, Clone, Serialize)]
pub struct LebesgueMinReport {
    pub alpha: f64,
    pub s: f64,
    pub bound_name: String,
    pub bound_value: f64,
    pub minimizer: LebesgueCandidate,
    pub candidates: Vec<LebesgueCandidate>,
    pub minimizer_attains_bound: bool,
    pub others_exceed_bound: bool,
    /// Expected `sup_f R` at the minimizer: `(1+alpha) theta^1` for the
    /// centered disc (constant-signal direction), `s/pi` at `alpha = 0`;
    /// for the boundary annulus the supremum escapes to 1 with the degree,
    /// so the reported value is the `N`-truncated stand-in.
    pub minimizer_sup_expected: Option<f64>,
    pub note: String,
}

fn candidate_row(
    dom: &DomainSpec,
    alpha: f64,
    n_basis: usize,
    grid: &DiskGrid,
) -> Result<LebesgueCandidate> {
    let matrix = toeplitz_matrix(dom, alpha, n_basis, grid)?;
    let (sup_ratio, _) = top_eigenpair(&matrix)?;
    Ok(LebesgueCandidate {
        domain: serde_json::to_string(dom)
            .map_err(|e| Error::Parse(format!("descriptor: {e}")))?,
        lebesgue_measure: dom.lebesgue_measure(grid)?,
        functional: weighted_lebesgue_functional(dom, alpha, grid)?,
        sup_ratio,
    })
}

/// Compare the stated minimizer of the weighted Lebesgue functional against
/// candidate domains of the same planar measure.
pub fn lebesgue_min_check(
    alpha: f64,
    s: f64,
    candidates: &[DomainSpec],
    n_basis: usize,
    grid: &DiskGrid,
) -> Result<LebesgueMinReport> {
    check_range("s", s, 0.0, std::f64::consts::PI)?;
    if !(alpha.is_finite() && alpha > -1.0) {
        return Err(Error::domain(format!("alpha {alpha} out of range")));
    }
    let pi = std::f64::consts::PI;
    for dom in candidates {
        let m = dom.lebesgue_measure(grid)?;
        if (m - s).abs() > 1e-6 {
            return Err(Error::usage(format!(
                "candidate has Lebesgue measure {m}, expected {s}"
            )));
        }
    }
    let (bound_name, bound_value, minimizer_shape, minimizer_sup_expected, note) = if alpha < 0.0 {
        let t1 = theta1(s, alpha)?;
        (
            "theta1".to_string(),
            t1,
            Shape::CenteredDisc {
                radius: (s / pi).sqrt(),
            },
            Some((1.0 + alpha) * t1),
            "sup_f R at the centered disc is attained by the constant direction, \
             value (1+alpha) * theta1"
                .to_string(),
        )
    } else if alpha > 0.0 {
        let t2 = theta2(s, alpha)?;
        (
            "theta2".to_string(),
            t2,
            Shape::BoundaryComplement {
                radius: (1.0 - s / pi).sqrt(),
            },
            None,
            "sup_f R over the boundary annulus escapes to 1 as the degree grows; \
             the reported sup is truncated at the basis size"
                .to_string(),
        )
    } else {
        (
            "s_over_pi".to_string(),
            s / pi,
            Shape::CenteredDisc {
                radius: (s / pi).sqrt(),
            },
            Some(s / pi),
            "at alpha = 0 the centered disc attains s/pi exactly".to_string(),
        )
    };
    let minimizer_dom = DomainSpec::new(Model::Disc, minimizer_shape)?;
    let minimizer = candidate_row(&minimizer_dom, alpha, n_basis, grid)?;
    let mut rows = Vec::with_capacity(candidates.len());
    for dom in candidates {
        rows.push(candidate_row(dom, alpha, n_basis, grid)?);
    }
    let minimizer_attains_bound = (minimizer.functional - bound_value).abs() < 1e-8;
    let others_exceed_bound = rows
        .iter()
        .all(|r| r.functional > bound_value + 1e-10);
    Ok(LebesgueMinReport {
        alpha,
        s,
        bound_name,
        bound_value,
        minimizer,
        candidates: rows,
        minimizer_attains_bound,
        others_exceed_bound,
        minimizer_sup_expected,
        note,
    })
}

/// One step of the boundary-escape sequence.
#[derive(Debug, Clone, Serialize)]
pub struct EscapeRow {
    pub n: usize,
    /// `R(e_n, D minus B_r)`.
    pub ratio: f64,
    /// Mass left inside the removed disc, closed form.
    pub removed_mass: f64,
    /// The same mass by direct radial quadrature.
    pub removed_mass_quadrature: f64,
}

/// The boundary-escape demonstration: `R(e_n, D minus B_r) -> 1`.
#[derive(Debug, Clone, Serialize)]
pub struct EscapeReport {
    pub alpha: f64,
    pub s_lebesgue: f64,
    pub removed_radius: f64,
    pub threshold: f64,
    pub first_n_above: Option<usize>,
    pub rows: Vec<EscapeRow>,
}

/// Concentration of the basis directions on the complement of a centered
/// disc whose complement has planar measure `s_lebesgue`.
pub fn escape_demo(alpha: f64, s_lebesgue: f64, n_max: usize) -> Result<EscapeReport> {
    let pi = std::f64::consts::PI;
    check_range("s_lebesgue", s_lebesgue, 0.0, pi)?;
    if !(alpha.is_finite() && alpha > -1.0) {
        return Err(Error::domain(format!("alpha {alpha} out of range")));
    }
    let r = (1.0 - s_lebesgue / pi).sqrt();
    let u_cut = r * r;
    let (nodes, weights) = gauss_legendre_on(256, 0.0, u_cut)?;
    let mut rows = Vec::with_capacity(n_max + 1);
    let mut first = None;
    let threshold = 0.99;
    for n in 0..=n_max {
        let removed = reg_inc_beta(u_cut, n as f64 + 1.0, alpha + 1.0)?;
        // pi/c_n int_0^{u} v^n (1-v)^alpha dv, normalized by the same route
        let c_n = crate::specfun::c_monomial(n, alpha)?;
        let quad: f64 = nodes
            .iter()
            .zip(&weights)
            .map(|(v, w)| w * v.powi(n as i32) * (1.0 - v).powf(alpha))
            .sum::<f64>()
            * pi
            / c_n;
        let ratio = 1.0 - removed;
        if first.is_none() && ratio > threshold {
            first = Some(n);
        }
        rows.push(EscapeRow {
            n,
            ratio,
            removed_mass: removed,
            removed_mass_quadrature: quad,
        });
    }
    Ok(EscapeReport {
        alpha,
        s_lebesgue,
        removed_radius: r,
        threshold,
        first_n_above: first,
        rows,
    })
}

/// One annulus of the thin-annuli sequence.
#[derive(Debug, Clone, Serialize)]
pub struct AnnulusRow {
    pub k: usize,
    pub r_inner: f64,
    pub r_outer: f64,
    /// `sup_f R` over the truncated space: radial domains are diagonal, so
    /// this is the largest diagonal restriction value.
    pub sup_ratio: f64,
    pub argmax_degree: usize,
}

/// Annuli pushed to the boundary at fixed hyperbolic measure drive the
/// maximal concentration to zero.
#[derive(Debug, Clone, Serialize)]
pub struct AnnuliReport {
    pub alpha: f64,
    pub s: f64,
    pub basis: usize,
    pub rows: Vec<AnnulusRow>,
    pub truncation_note: String,
}

pub fn annuli_infimum_demo(
    alpha: f64,
    s: f64,
    k_max: usize,
    n_basis: usize,
) -> Result<AnnuliReport> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::domain(format!("annuli demo requires s > 0, got {s}")));
    }
    if k_max < 2 {
        return Err(Error::usage("annuli demo requires k_max >= 2".to_string()));
    }
    let pi = std::f64::consts::PI;
    let mut rows = Vec::new();
    for k in 2..=k_max {
        let r_in = 1.0 - 1.0 / k as f64;
        let x_in = r_in * r_in;
        // mu(annulus) = s fixes the outer radius
        let q = s / pi + x_in / (1.0 - x_in);
        let x_out = q / (1.0 + q);
        let r_out = x_out.sqrt();
        let diag = radial_restriction_diagonal(r_in, r_out, alpha, n_basis)?;
        let (argmax, sup) = diag
            .iter()
            .enumerate()
            .fold((0usize, f64::MIN), |acc, (i, &v)| {
                if v > acc.1 {
                    (i, v)
                } else {
                    acc
                }
            });
        rows.push(AnnulusRow {
            k,
            r_inner: r_in,
            r_outer: r_out,
            sup_ratio: sup,
            argmax_degree: argmax,
        });
    }
    Ok(AnnuliReport {
        alpha,
        s,
        basis: n_basis,
        rows,
        truncation_note: format!(
            "suprema are over radial degrees below {n_basis}; the true supremum over \
             all degrees is approached from below"
        ),
    })
}
