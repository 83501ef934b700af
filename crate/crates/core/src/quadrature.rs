//! Deterministic quadrature grids.
//!
//! Two rule families cover every integral in the crate:
//!
//! - polar tensor grids on the unit disc whose radial nodes follow a
//!   Gauss-Jacobi rule in `u = r^2` adapted to the weight `(1-u)^alpha`
//!   (this absorbs the integrable boundary singularity for `alpha` in
//!   `(-1, 0)`), with a trigonometric rule in the angle;
//! - generalized Gauss-Laguerre rules on the positive frequency axis for
//!   weights `t^a e^{-2t}`.
//!
//! Nodes and weights come from the Golub-Welsch eigendecomposition of the
//! corresponding Jacobi matrix. All reductions run over a fixed pairwise
//! tree so repeated integrations are bit-identical.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::gamma_ln;

/// Eigenvalues of a symmetric tridiagonal matrix together with the first
/// component of each (normalized) eigenvector, by implicit-shift QL.
///
/// `diag` holds the diagonal, `off` the subdiagonal (`off.len() == diag.len()`,
/// last entry ignored). This is all Golub-Welsch needs: Gauss nodes are the
/// eigenvalues and each weight is `mu_0 * first_component^2`.
fn tridiag_nodes_first_components(
    diag: &mut [f64],
    off: &mut [f64],
    first: &mut [f64],
) -> Result<()> {
    let n = diag.len();
    if n == 0 {
        return Ok(());
    }
    off[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0usize;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if off[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::Domain(
                    "tridiagonal QL iteration failed to converge".to_string(),
                ));
            }
            let mut g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + off[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let mut f = s * off[i];
                let b = c * off[i];
                r = f.hypot(g);
                off[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    off[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
                f = first[i + 1];
                first[i + 1] = s * first[i] + c * f;
                first[i] = c * first[i] - s * f;
            }
            if underflow && i > l {
                continue;
            }
            diag[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        }
    }
    Ok(())
}

/// Gauss rule from the recurrence data of an orthogonal polynomial family.
fn golub_welsch(
    mut diag: Vec<f64>,
    mut off: Vec<f64>,
    total_weight: f64,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = diag.len();
    let mut first = vec![0.0; n];
    first[0] = 1.0;
    tridiag_nodes_first_components(&mut diag, &mut off, &mut first)?;
    let mut pairs: Vec<(f64, f64)> = diag
        .into_iter()
        .zip(first)
        .map(|(x, f)| (x, total_weight * f * f))
        .collect();
    pairs.sort_unstable_by(|p, q| p.0.partial_cmp(&q.0).unwrap());
    Ok(pairs.into_iter().unzip())
}

/// Measure factor applied per node when integrating over the disc.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    /// Plain planar Lebesgue measure `dz`.
    Lebesgue,
    /// Weighted measure `(1-|z|^2)^alpha dz` with the grid's `alpha`.
    AlphaWeighted,
    /// Hyperbolic measure `(1-|z|^2)^{-2} dz`.
    Hyperbolic,
}

const PAIRWISE_LEAF: usize = 32;

/// Sum `f(lo) + ... + f(hi-1)` over a fixed pairwise split tree.
pub fn pairwise_sum_by<F: Fn(usize) -> f64>(lo: usize, hi: usize, f: &F) -> f64 {
    if hi - lo <= PAIRWISE_LEAF {
        let mut acc = 0.0;
        for i in lo..hi {
            acc += f(i);
        }
        acc
    } else {
        let mid = lo + (hi - lo) / 2;
        pairwise_sum_by(lo, mid, f) + pairwise_sum_by(mid, hi, f)
    }
}

/// Complex variant of [`pairwise_sum_by`].
pub fn pairwise_sum_complex_by<F: Fn(usize) -> Complex64>(
    lo: usize,
    hi: usize,
    f: &F,
) -> Complex64 {
    if hi - lo <= PAIRWISE_LEAF {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in lo..hi {
            acc += f(i);
        }
        acc
    } else {
        let mid = lo + (hi - lo) / 2;
        pairwise_sum_complex_by(lo, mid, f) + pairwise_sum_complex_by(mid, hi, f)
    }
}

/// Gauss-Jacobi nodes and weights on `[-1, 1]` for the weight
/// `(1-x)^a (1+x)^b`, by Golub-Welsch on the symmetrized Jacobi matrix.
pub fn gauss_jacobi(deg: usize, a: f64, b: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if deg < 2 {
        return Err(Error::domain(format!(
            "gauss_jacobi requires degree >= 2, got {deg}"
        )));
    }
    if !(a.is_finite() && a > -1.0 && b.is_finite() && b > -1.0) {
        return Err(Error::domain(format!(
            "gauss_jacobi requires exponents > -1, got a={a}, b={b}"
        )));
    }

    let mut diag = vec![0.0; deg];
    let mut off = vec![0.0; deg];
    diag[0] = (b - a) / (2.0 + a + b);
    for idx in 0..deg - 1 {
        let k = idx as f64 + 1.0;
        let denom = 2.0 * k + a + b;
        off[idx] = 2.0 / denom
            * (k * (k + a) * (k + b) * (k + a + b) / ((denom + 1.0) * (denom - 1.0))).sqrt();
        diag[idx + 1] = (b * b - a * a) / (denom * (denom + 2.0));
    }
    let total = (gamma_ln(a + 1.0)? + gamma_ln(b + 1.0)? - gamma_ln(a + b + 2.0)?
        + (a + b + 1.0) * std::f64::consts::LN_2)
        .exp();
    let (mut nodes, weights) = golub_welsch(diag, off, total)?;

    // symmetric weights put the middle node at exactly zero for odd degrees
    if a == b && deg % 2 == 1 {
        nodes[deg / 2] = 0.0;
    }

    Ok((nodes, weights))
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(deg: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    gauss_jacobi(deg, 0.0, 0.0)
}

/// Gauss-Legendre rule mapped to `[lo, hi]`.
pub fn gauss_legendre_on(deg: usize, lo: f64, hi: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let (x, w) = gauss_legendre(deg)?;
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    Ok((
        x.iter().map(|&t| mid + half * t).collect(),
        w.iter().map(|&v| v * half).collect(),
    ))
}

/// Nodes `u_j` and weights `a_j` with
/// `int_0^1 g(u) (1-u)^alpha du ~= sum_j a_j g(u_j)`.
///
/// Returns `(u, one_minus_u, weights)`; `1-u` is carried separately so the
/// boundary distance never suffers cancellation.
pub fn gauss_jacobi_01(deg: usize, alpha: f64) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>)> {
    let (x, w) = gauss_jacobi(deg, alpha, 0.0)?;
    let scale = 0.5f64.powf(alpha + 1.0);
    let u: Vec<f64> = x.iter().map(|&t| 0.5 * (t + 1.0)).collect();
    let omu: Vec<f64> = x.iter().map(|&t| 0.5 * (1.0 - t)).collect();
    let a: Vec<f64> = w.iter().map(|&v| v * scale).collect();
    Ok((u, omu, a))
}

/// Generalized Gauss-Laguerre rule for `int_0^infty g(t) t^a e^{-t} dt`.
pub fn gauss_laguerre(deg: usize, a: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if deg < 2 {
        return Err(Error::domain(format!(
            "gauss_laguerre requires degree >= 2, got {deg}"
        )));
    }
    if !(a.is_finite() && a > -1.0) {
        return Err(Error::domain(format!(
            "gauss_laguerre requires exponent > -1, got {a}"
        )));
    }
    let mut diag = vec![0.0; deg];
    let mut off = vec![0.0; deg];
    for k in 0..deg {
        diag[k] = 2.0 * k as f64 + a + 1.0;
        if k + 1 < deg {
            let kf = k as f64 + 1.0;
            off[k] = (kf * (kf + a)).sqrt();
        }
    }
    let total = gamma_ln(a + 1.0)?.exp();
    golub_welsch(diag, off, total)
}

/// Tensor rule over a Euclidean disc `|z - center| < radius`, exact in the
/// angle for harmonics below `n_phi` and Gauss-accurate radially.
///
/// Parametrize `z = c + R sqrt(v) e^{i phi}`; then
/// `int f dz = (R^2 / 2) int_0^1 int_0^{2pi} f dv dphi`.
pub struct DiscChart {
    nodes: Vec<Complex64>,
    weights: Vec<f64>,
}

impl DiscChart {
    pub fn new(center: Complex64, radius: f64, n_rho: usize, n_phi: usize) -> Result<Self> {
        if radius <= 0.0 || n_rho < 2 || n_phi < 4 {
            return Err(Error::usage(format!(
                "invalid disc chart: radius={radius}, n_rho={n_rho}, n_phi={n_phi}"
            )));
        }
        let (v, wv) = gauss_legendre_on(n_rho, 0.0, 1.0)?;
        let mut nodes = Vec::with_capacity(n_rho * n_phi);
        let mut weights = Vec::with_capacity(n_rho * n_phi);
        let dphi = 2.0 * std::f64::consts::PI / n_phi as f64;
        for (vi, wvi) in v.iter().zip(&wv) {
            let rho = radius * vi.sqrt();
            let w = 0.5 * radius * radius * wvi * dphi;
            for k in 0..n_phi {
                let phi = dphi * k as f64;
                nodes.push(center + Complex64::new(rho * phi.cos(), rho * phi.sin()));
                weights.push(w);
            }
        }
        Ok(Self { nodes, weights })
    }

    /// Tensor rule over a centered annulus `r_inner <= |z| <= r_outer`, set up
    /// in `u = |z|^2` so radial integrands of polynomial type are exact.
    pub fn annulus(r_inner: f64, r_outer: f64, n_u: usize, n_phi: usize) -> Result<Self> {
        if !(0.0..1.0).contains(&r_inner) || r_outer <= r_inner || r_outer > 1.0 {
            return Err(Error::usage(format!(
                "invalid annulus chart: r_inner={r_inner}, r_outer={r_outer}"
            )));
        }
        let (u, wu) = gauss_legendre_on(n_u, r_inner * r_inner, r_outer * r_outer)?;
        let mut nodes = Vec::with_capacity(n_u * n_phi);
        let mut weights = Vec::with_capacity(n_u * n_phi);
        let dphi = 2.0 * std::f64::consts::PI / n_phi as f64;
        for (ui, wui) in u.iter().zip(&wu) {
            let rho = ui.sqrt();
            let w = 0.5 * wui * dphi;
            for k in 0..n_phi {
                let phi = dphi * k as f64;
                nodes.push(Complex64::new(rho * phi.cos(), rho * phi.sin()));
                weights.push(w);
            }
        }
        Ok(Self { nodes, weights })
    }

    pub fn nodes(&self) -> &[Complex64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate<F: Fn(Complex64) -> f64>(&self, f: F) -> f64 {
        pairwise_sum_by(0, self.nodes.len(), &|i| self.weights[i] * f(self.nodes[i]))
    }

    pub fn integrate_complex<F: Fn(Complex64) -> Complex64>(&self, f: F) -> Complex64 {
        pairwise_sum_complex_by(0, self.nodes.len(), &|i| self.weights[i] * f(self.nodes[i]))
    }
}

/// Gauss-type rule on the positive frequency axis for the weight
/// `t^a e^{-2t}`, exact on polynomials of degree `<= 2N - 1`.
#[derive(Debug, Clone)]
pub struct FrequencyGrid {
    exponent: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl FrequencyGrid {
    pub fn build(a: f64, n: usize) -> Result<Self> {
        if n < 8 {
            return Err(Error::domain(format!(
                "frequency grid requires N >= 8, got {n}"
            )));
        }
        let (tau, omega) = gauss_laguerre(n, a)?;
        let scale = 0.5f64.powf(a + 1.0);
        let nodes: Vec<f64> = tau.iter().map(|&t| 0.5 * t).collect();
        // weights of the outermost nodes underflow at high degree; clamp the
        // resulting eigensolver dust to zero instead of rejecting the rule
        let weights: Vec<f64> = omega
            .iter()
            .map(|&w| if w.abs() < 1e-280 { 0.0 } else { w * scale })
            .collect();
        if nodes.iter().any(|&t| t <= 0.0) || weights.iter().any(|&w| w < 0.0) {
            return Err(Error::domain(
                "frequency grid produced nonpositive nodes or negative weights".to_string(),
            ));
        }
        Ok(Self {
            exponent: a,
            nodes,
            weights,
        })
    }

    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `int_0^infty g(t) t^a e^{-2t} dt` for smooth `g`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, g: F) -> f64 {
        pairwise_sum_by(0, self.nodes.len(), &|i| {
            self.weights[i] * g(self.nodes[i])
        })
    }

    /// Complex variant of [`FrequencyGrid::integrate`].
    pub fn integrate_complex<F: Fn(f64) -> Complex64>(&self, g: F) -> Complex64 {
        pairwise_sum_complex_by(0, self.nodes.len(), &|i| self.weights[i] * g(self.nodes[i]))
    }
}

/// Polar tensor grid on the unit disc.
///
/// Radial placement is in `u = r^2` with a Gauss-Jacobi rule for the weight
/// `(1-u)^alpha`; the angle carries an equispaced trigonometric rule. Node
/// index is `j * n_theta + k` with `j` radial (increasing) and `k` angular.
#[derive(Debug, Clone)]
pub struct DiskGrid {
    alpha: f64,
    n_r: usize,
    n_theta: usize,
    radial_u: Vec<f64>,
    radial_omu: Vec<f64>,
    radial_w: Vec<f64>,
    nodes: Vec<Complex64>,
}

impl DiskGrid {
    pub fn build(n_r: usize, n_theta: usize, alpha: f64) -> Result<Self> {
        if n_r < 4 || n_theta < 4 {
            return Err(Error::domain(format!(
                "disk grid requires n_r, n_theta >= 4, got ({n_r}, {n_theta})"
            )));
        }
        if !(alpha.is_finite() && alpha > -1.0) {
            return Err(Error::domain(format!(
                "disk grid requires alpha > -1, got {alpha}"
            )));
        }
        let (radial_u, radial_omu, radial_w) = gauss_jacobi_01(n_r, alpha)?;
        let mut nodes = Vec::with_capacity(n_r * n_theta);
        let dtheta = 2.0 * std::f64::consts::PI / n_theta as f64;
        for j in 0..n_r {
            let r = radial_u[j].sqrt();
            for k in 0..n_theta {
                let theta = dtheta * k as f64;
                nodes.push(Complex64::new(r * theta.cos(), r * theta.sin()));
            }
        }
        Ok(Self {
            alpha,
            n_r,
            n_theta,
            radial_u,
            radial_omu,
            radial_w,
            nodes,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn radial_count(&self) -> usize {
        self.n_r
    }

    pub fn angular_count(&self) -> usize {
        self.n_theta
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Complex64] {
        &self.nodes
    }

    pub fn node(&self, idx: usize) -> Complex64 {
        self.nodes[idx]
    }

    pub fn node_index(&self, j: usize, k: usize) -> usize {
        j * self.n_theta + k
    }

    /// Radius of the ring `j` (radial node in `r`).
    pub fn ring_radius(&self, j: usize) -> f64 {
        self.radial_u[j].sqrt()
    }

    /// `1 - r_j^2`, computed without cancellation.
    pub fn ring_boundary_gap(&self, j: usize) -> f64 {
        self.radial_omu[j]
    }

    /// Per-node weight of ring `j` under the requested measure.
    pub fn ring_weight(&self, j: usize, measure: Measure) -> f64 {
        let base = std::f64::consts::PI / self.n_theta as f64 * self.radial_w[j];
        match measure {
            // the Jacobi weight already contains (1-u)^alpha; divide it out
            Measure::Lebesgue => base * self.radial_omu[j].powf(-self.alpha),
            Measure::AlphaWeighted => base,
            Measure::Hyperbolic => {
                base * self.radial_omu[j].powf(-self.alpha) / (self.radial_omu[j] * self.radial_omu[j])
            }
        }
    }

    /// Per-node weight under the requested measure.
    pub fn weight(&self, idx: usize, measure: Measure) -> f64 {
        self.ring_weight(idx / self.n_theta, measure)
    }

    /// Evaluate a function on every node.
    pub fn sample<T, F: Fn(Complex64) -> T>(&self, f: F) -> Vec<T> {
        self.nodes.iter().map(|&z| f(z)).collect()
    }

    /// Integrate node samples against the requested measure.
    pub fn integrate(&self, values: &[f64], measure: Measure) -> Result<f64> {
        self.check_len(values.len())?;
        let weights = self.weight_table(measure);
        Ok(pairwise_sum_by(0, values.len(), &|i| {
            values[i] * weights[i / self.n_theta]
        }))
    }

    /// Complex variant of [`DiskGrid::integrate`].
    pub fn integrate_complex(&self, values: &[Complex64], measure: Measure) -> Result<Complex64> {
        self.check_len(values.len())?;
        let weights = self.weight_table(measure);
        Ok(pairwise_sum_complex_by(0, values.len(), &|i| {
            values[i] * weights[i / self.n_theta]
        }))
    }

    /// Integrate node samples over the cells selected by `mask`.
    pub fn integrate_masked(&self, values: &[f64], mask: &[bool], measure: Measure) -> Result<f64> {
        self.check_len(values.len())?;
        self.check_len(mask.len())?;
        let weights = self.weight_table(measure);
        Ok(pairwise_sum_by(0, values.len(), &|i| {
            if mask[i] {
                values[i] * weights[i / self.n_theta]
            } else {
                0.0
            }
        }))
    }

    /// Total measure carried by the masked cells.
    pub fn masked_measure(&self, mask: &[bool], measure: Measure) -> Result<f64> {
        self.check_len(mask.len())?;
        let weights = self.weight_table(measure);
        Ok(pairwise_sum_by(0, mask.len(), &|i| {
            if mask[i] {
                weights[i / self.n_theta]
            } else {
                0.0
            }
        }))
    }

    fn weight_table(&self, measure: Measure) -> Vec<f64> {
        (0..self.n_r).map(|j| self.ring_weight(j, measure)).collect()
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.nodes.len() {
            return Err(Error::usage(format!(
                "array length {len} does not match grid size {}",
                self.nodes.len()
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{c_monomial, laguerre, LaguerreParams};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn legendre_five_point_reference() {
        let (x, w) = gauss_legendre(5).unwrap();
        let x_ref = [
            -0.906_179_845_938_664,
            -0.538_469_310_105_683_1,
            0.0,
            0.538_469_310_105_683_1,
            0.906_179_845_938_664,
        ];
        let w_ref = [
            0.236_926_885_056_189_08,
            0.478_628_670_499_366_47,
            0.568_888_888_888_888_9,
            0.478_628_670_499_366_47,
            0.236_926_885_056_189_08,
        ];
        for i in 0..5 {
            assert_abs_diff_eq!(x[i], x_ref[i], epsilon = 1e-14);
            assert_abs_diff_eq!(w[i], w_ref[i], epsilon = 1e-14);
        }
    }

    #[test]
    fn jacobi_rule_rejects_bad_parameters() {
        assert!(gauss_jacobi(1, 0.0, 0.0).is_err());
        assert!(gauss_jacobi(8, -1.0, 0.0).is_err());
        assert!(gauss_laguerre(8, -1.2).is_err());
        assert!(DiskGrid::build(2, 64, 0.0).is_err());
        assert!(DiskGrid::build(64, 64, -1.0).is_err());
        assert!(FrequencyGrid::build(0.0, 4).is_err());
    }

    #[test]
    fn disk_grid_unit_lebesgue_mass() {
        let grid = DiskGrid::build(64, 128, 0.0).unwrap();
        let ones = vec![1.0; grid.len()];
        assert_abs_diff_eq!(
            grid.integrate(&ones, Measure::Lebesgue).unwrap(),
            PI,
            epsilon = 1e-12
        );
    }

    #[test]
    fn disk_grid_alpha_weighted_mass() {
        // int_D (1-|z|^2)^alpha dz = pi/(alpha+1); alpha = -1/2 gives 2 pi
        let grid = DiskGrid::build(64, 128, -0.5).unwrap();
        let ones = vec![1.0; grid.len()];
        assert_abs_diff_eq!(
            grid.integrate(&ones, Measure::AlphaWeighted).unwrap(),
            2.0 * PI,
            epsilon = 1e-12
        );
    }

    #[test]
    fn disk_grid_monomial_moments() {
        for &alpha in &[-0.5, 0.0, 1.0, 2.5] {
            let grid = DiskGrid::build(32, 64, alpha).unwrap();
            for n in 0..=10usize {
                let values = grid.sample(|z| z.norm_sqr().powi(n as i32));
                let got = grid.integrate(&values, Measure::AlphaWeighted).unwrap();
                let expect = c_monomial(n, alpha).unwrap();
                assert!(
                    (got - expect).abs() < 1e-12,
                    "alpha={alpha} n={n}: got {got}, expect {expect}"
                );
            }
        }
    }

    #[test]
    fn disk_grid_mixed_moments_vanish() {
        let grid = DiskGrid::build(24, 48, 1.0).unwrap();
        for (m, n) in [(1usize, 0usize), (3, 1), (5, 2)] {
            let values = grid.sample(|z| z.powu(m as u32) * z.conj().powu(n as u32));
            let got = grid.integrate_complex(&values, Measure::AlphaWeighted).unwrap();
            assert!(got.norm() < 1e-13, "m={m} n={n}: got {got}");
        }
    }

    #[test]
    fn disk_grid_lebesgue_mass_near_pi_across_alpha() {
        for &alpha in &[-0.5, 0.0, 1.0, 2.5] {
            let grid = DiskGrid::build(256, 64, alpha).unwrap();
            let ones = vec![1.0; grid.len()];
            let mass = grid.integrate(&ones, Measure::Lebesgue).unwrap();
            assert!(
                (mass - PI).abs() < 1e-3 * PI,
                "alpha={alpha}: mass {mass}"
            );
        }
    }

    #[test]
    fn disk_grid_hyperbolic_mask_measure() {
        // mu(B_r) = pi (1/(1-r^2) - 1) = pi at r^2 = 1/2; cell-center masks
        // are boundary-limited, so the tolerance here is the grid's, not the
        // rule's. Refining the grid shrinks the error.
        let coarse = DiskGrid::build(128, 256, 0.0).unwrap();
        let fine = DiskGrid::build(512, 256, 0.0).unwrap();
        let mut errs = Vec::new();
        for grid in [&coarse, &fine] {
            let mask: Vec<bool> = grid.nodes().iter().map(|z| z.norm_sqr() < 0.5).collect();
            let got = grid.masked_measure(&mask, Measure::Hyperbolic).unwrap();
            errs.push((got - PI).abs());
        }
        assert!(errs[0] < 0.1, "coarse mask error {}", errs[0]);
        assert!(errs[1] < errs[0], "refinement did not help: {errs:?}");
    }

    #[test]
    fn disk_grid_mask_monotone_under_inclusion() {
        let grid = DiskGrid::build(64, 128, 0.0).unwrap();
        let small: Vec<bool> = grid.nodes().iter().map(|z| z.norm_sqr() < 0.3).collect();
        let large: Vec<bool> = grid.nodes().iter().map(|z| z.norm_sqr() < 0.6).collect();
        let m_small = grid.masked_measure(&small, Measure::Hyperbolic).unwrap();
        let m_large = grid.masked_measure(&large, Measure::Hyperbolic).unwrap();
        assert!(m_small <= m_large);
    }

    #[test]
    fn disk_grid_weights_positive() {
        let grid = DiskGrid::build(48, 96, -0.5).unwrap();
        for j in 0..grid.radial_count() {
            for m in [Measure::Lebesgue, Measure::AlphaWeighted, Measure::Hyperbolic] {
                assert!(grid.ring_weight(j, m) > 0.0);
            }
        }
        assert!(grid.nodes().iter().all(|z| z.norm() < 1.0));
    }

    #[test]
    fn disk_grid_self_convergence() {
        let coarse = DiskGrid::build(64, 128, 0.5).unwrap();
        let fine = DiskGrid::build(128, 256, 0.5).unwrap();
        let integrand = |z: Complex64| (z.re).exp() * (1.0 + (3.0 * z.im).cos());
        let a = coarse
            .integrate(&coarse.sample(integrand), Measure::AlphaWeighted)
            .unwrap();
        let b = fine
            .integrate(&fine.sample(integrand), Measure::AlphaWeighted)
            .unwrap();
        assert!((a - b).abs() < 1e-10, "coarse {a} vs fine {b}");
    }

    #[test]
    fn frequency_grid_gamma_moments() {
        // int t^a e^{-2t} dt = Gamma(a+1) / 2^{a+1}
        let grid = FrequencyGrid::build(1.0, 32).unwrap();
        assert_abs_diff_eq!(grid.integrate(|_| 1.0), 0.25, epsilon = 1e-12);

        let grid0 = FrequencyGrid::build(0.0, 32).unwrap();
        assert_abs_diff_eq!(grid0.integrate(|_| 1.0), 0.5, epsilon = 1e-12);

        // polynomial exactness at the top degree 2N-1
        let n = 16usize;
        let a = 0.7;
        let grid = FrequencyGrid::build(a, n).unwrap();
        let k = (2 * n - 1) as f64;
        let expect = (gamma_ln(a + k + 1.0).unwrap() - (a + k + 1.0) * std::f64::consts::LN_2).exp();
        let got = grid.integrate(|t| t.powf(k));
        assert!(
            ((got - expect) / expect).abs() < 1e-12,
            "got {got}, expect {expect}"
        );
    }

    #[test]
    fn frequency_grid_window_normalization_integral() {
        // beta = 1: int t^{2 beta - 1} e^{-2t} dt = Gamma(2)/4 = 1/4
        let grid = FrequencyGrid::build(1.0, 24).unwrap();
        assert_abs_diff_eq!(grid.integrate(|_| 1.0), 0.25, epsilon = 1e-13);
    }

    #[test]
    fn laguerre_functions_orthogonal_under_plain_dt() {
        // int l_n^a(2t) l_m^a(2t) dt = Gamma(n+a+1) / (2 n!) delta_{nm},
        // with l_n^a(x) = e^{-x/2} x^{a/2} L_n^a(x); the integrand against
        // t^a e^{-2t} is the polynomial 2^a L_n(2t) L_m(2t).
        for &alpha in &[-0.5, 0.0, 1.0] {
            let n_nodes = 32usize;
            let grid = FrequencyGrid::build(alpha, n_nodes).unwrap();
            let dense = FrequencyGrid::build(alpha, 4 * n_nodes).unwrap();
            let two_pow = 2.0f64.powf(alpha);
            for n in 0..=8usize {
                for m in 0..=8usize {
                    let f = |t: f64| {
                        two_pow
                            * laguerre(LaguerreParams { n, alpha }, 2.0 * t)
                            * laguerre(LaguerreParams { n: m, alpha }, 2.0 * t)
                    };
                    let got = grid.integrate(f);
                    let oracle = dense.integrate(f);
                    assert!(
                        (got - oracle).abs() < 1e-11,
                        "rule disagrees with dense oracle: n={n} m={m} alpha={alpha}"
                    );
                    if n == m {
                        let expect = (gamma_ln(n as f64 + alpha + 1.0).unwrap()
                            - gamma_ln(n as f64 + 1.0).unwrap())
                        .exp()
                            / 2.0;
                        assert!(
                            ((got - expect) / expect).abs() < 1e-11,
                            "diagonal n={n} alpha={alpha}: got {got}, expect {expect}"
                        );
                    } else {
                        assert!(
                            got.abs() < 1e-11,
                            "off-diagonal n={n} m={m} alpha={alpha}: got {got}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn pairwise_sum_deterministic_and_accurate() {
        let xs: Vec<f64> = (0..100_000)
            .map(|i| ((i * 2654435761u64 as usize) % 1000) as f64 * 1e-3 - 0.5)
            .collect();
        let a = pairwise_sum_by(0, xs.len(), &|i| xs[i]);
        let b = pairwise_sum_by(0, xs.len(), &|i| xs[i]);
        assert_eq!(a.to_bits(), b.to_bits());
        let naive: f64 = xs.iter().sum();
        assert!((a - naive).abs() < 1e-9);
    }
}
