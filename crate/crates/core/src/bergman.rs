//! Weighted Bergman spaces of the disc and half-plane.
//!
//! Functions are held as coefficient vectors in the orthonormal basis
//! `e_n(z) = z^n / sqrt(c_n)`; reproducing kernels have geometric
//! coefficients and a closed pointwise form. Restriction of the space to a
//! domain is compressed to a Hermitian Galerkin matrix
//! `M_{mn} = <1_Omega e_n, e_m>_alpha`, whose top eigenpair is the maximal
//! concentration and its optimizer. Parametric domains are integrated over
//! dedicated local charts (exact in the angle, Gauss-accurate radially);
//! complements are assembled as `I - M(disc)` so the boundary circle never
//! enters a quadrature.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{disc_from_measure, DiskPoint, DomainSpec, Model, Point, Shape};
use crate::quadrature::{
    pairwise_sum_by, pairwise_sum_complex_by, DiscChart, DiskGrid, Measure,
};
use crate::specfun::reg_inc_beta;

/// Default basis truncation for Galerkin matrices.
pub const DEFAULT_BASIS: usize = 64;

const EIGEN_RESIDUAL: f64 = 1e-10;


/// `1/sqrt(c_k)` for `k < n`, by the ratio `c_{k+1}/c_k = (k+1)/(alpha+k+2)`.
pub fn inv_sqrt_norms(alpha: f64, n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return out;
    }
    // c_0 = pi / (alpha + 1)
    let mut inv = ((alpha + 1.0) / std::f64::consts::PI).sqrt();
    out.push(inv);
    for k in 0..n - 1 {
        let kf = k as f64;
        inv *= ((alpha + kf + 2.0) / (kf + 1.0)).sqrt();
        out.push(inv);
    }
    out
}

/// Element of `A_alpha(D)` as coefficients against `e_n = z^n / sqrt(c_n)`.
#[derive(Debug, Clone)]
pub struct BergmanFunctionDisc {
    alpha: f64,
    coeffs: Vec<Complex64>,
}

impl BergmanFunctionDisc {
    pub fn new(alpha: f64, coeffs: Vec<Complex64>) -> Result<Self> {
        if !(alpha.is_finite() && alpha > -1.0) {
            return Err(Error::domain(format!(
                "Bergman weight requires alpha > -1, got {alpha}"
            )));
        }
        if coeffs.is_empty() {
            return Err(Error::usage("coefficient vector is empty".to_string()));
        }
        Ok(Self { alpha, coeffs })
    }

    /// The basis vector `e_k` in a space of dimension `len`.
    pub fn basis_element(alpha: f64, k: usize, len: usize) -> Result<Self> {
        if k >= len {
            return Err(Error::usage(format!("basis index {k} >= length {len}")));
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); len];
        coeffs[k] = Complex64::new(1.0, 0.0);
        Self::new(alpha, coeffs)
    }

    /// The monomial `z^k` (not normalized) in a space of dimension `len`.
    pub fn monomial(alpha: f64, k: usize, len: usize) -> Result<Self> {
        let mut f = Self::basis_element(alpha, k, len)?;
        let inv = inv_sqrt_norms(alpha, len);
        f.coeffs[k] = Complex64::new(1.0 / inv[k], 0.0);
        Ok(f)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Parseval: the squared norm is the squared coefficient sum.
    pub fn norm_sq(&self) -> f64 {
        pairwise_sum_by(0, self.coeffs.len(), &|i| self.coeffs[i].norm_sqr())
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm_sq().sqrt();
        if n == 0.0 {
            return Err(Error::usage("cannot normalize the zero function".to_string()));
        }
        Ok(Self {
            alpha: self.alpha,
            coeffs: self.coeffs.iter().map(|c| c / n).collect(),
        })
    }

    /// Pointwise value `sum_n a_n z^n / sqrt(c_n)`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.evaluator().eval(z)
    }

    /// Evaluator with the basis normalizations cached.
    pub fn evaluator(&self) -> DiscEvaluator<'_> {
        DiscEvaluator {
            coeffs: &self.coeffs,
            inv: inv_sqrt_norms(self.alpha, self.coeffs.len()),
        }
    }
}

/// Cached pointwise evaluator of a coefficient-space function.
pub struct DiscEvaluator<'a> {
    coeffs: &'a [Complex64],
    inv: Vec<f64>,
}

impl DiscEvaluator<'_> {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut zn = Complex64::new(1.0, 0.0);
        for (k, a) in self.coeffs.iter().enumerate() {
            acc += a * self.inv[k] * zn;
            zn *= z;
        }
        acc
    }
}

/// Pointwise evaluation of a coefficient-space function.
pub fn eval_disc(f: &BergmanFunctionDisc, z: DiskPoint) -> Complex64 {
    f.eval(z.to_complex())
}

/// Coefficient-space inner product `sum_n a_n conj(b_n)`.
pub fn inner_product_alpha(f: &BergmanFunctionDisc, g: &BergmanFunctionDisc) -> Result<Complex64> {
    if f.alpha() != g.alpha() {
        return Err(Error::usage(format!(
            "inner product requires matching weights, got alpha {} vs {}",
            f.alpha(),
            g.alpha()
        )));
    }
    let n = f.len().min(g.len());
    let mut acc = pairwise_sum_complex_by(0, n, &|i| f.coeffs[i] * g.coeffs[i].conj());
    // tails against implicit zeros
    acc += Complex64::new(0.0, 0.0);
    Ok(acc)
}

/// Quadrature-path inner product of node samples:
/// `int f conj(g) (1-|z|^2)^alpha dz`.
pub fn inner_product_alpha_sampled(
    f_values: &[Complex64],
    g_values: &[Complex64],
    grid: &DiskGrid,
) -> Result<Complex64> {
    if f_values.len() != g_values.len() {
        return Err(Error::usage("sample arrays differ in length".to_string()));
    }
    let products: Vec<Complex64> = f_values
        .iter()
        .zip(g_values)
        .map(|(a, b)| a * b.conj())
        .collect();
    grid.integrate_complex(&products, Measure::AlphaWeighted)
}

/// Reproducing kernel request: weight `alpha`, evaluation point `w`.
#[derive(Debug, Clone, Copy)]
pub struct KernelSpecDisc {
    pub alpha: f64,
    pub w: DiskPoint,
}

/// Truncated reproducing kernel with its closed pointwise form.
#[derive(Debug, Clone)]
pub struct KernelDisc {
    pub spec: KernelSpecDisc,
    pub function: BergmanFunctionDisc,
    /// Squared-norm mass dropped by the truncation,
    /// `sum_{k >= N} |w|^{2k} / c_k`.
    pub truncation_tail: f64,
}

impl KernelDisc {
    /// Closed form `K_w(z) = (1+alpha)/pi (1 - conj(w) z)^{-alpha-2}`.
    pub fn eval_closed(&self, z: Complex64) -> Complex64 {
        kernel_eval_closed(self.spec.alpha, self.spec.w.to_complex(), z)
    }

    /// Closed form `|K_w|^2 = (1+alpha)/pi (1-|w|^2)^{-2-alpha}`.
    pub fn norm_sq_closed(&self) -> f64 {
        let alpha = self.spec.alpha;
        let g = 1.0 - self.spec.w.to_complex().norm_sqr();
        (1.0 + alpha) / std::f64::consts::PI * g.powf(-2.0 - alpha)
    }
}

pub fn kernel_eval_closed(alpha: f64, w: Complex64, z: Complex64) -> Complex64 {
    let base = Complex64::new(1.0, 0.0) - w.conj() * z;
    (1.0 + alpha) / std::f64::consts::PI * base.powc(Complex64::new(-alpha - 2.0, 0.0))
}

/// Truncated coefficient form of the reproducing kernel,
/// `a_k = conj(w)^k / sqrt(c_k)`.
pub fn kernel_disc(spec: KernelSpecDisc, n_terms: usize) -> Result<KernelDisc> {
    if n_terms == 0 {
        return Err(Error::usage("kernel truncation must be positive".to_string()));
    }
    let alpha = spec.alpha;
    let inv = inv_sqrt_norms(alpha, n_terms);
    let wbar = spec.w.to_complex().conj();
    let mut coeffs = Vec::with_capacity(n_terms);
    let mut wk = Complex64::new(1.0, 0.0);
    for item in inv.iter().take(n_terms) {
        coeffs.push(wk * *item);
        wk *= wbar;
    }
    // tail of sum |w|^{2k} / c_k from k = n_terms, with a geometric cap
    let q0 = spec.w.to_complex().norm_sqr();
    let mut inv_c = inv[n_terms - 1] * inv[n_terms - 1];
    let mut pw = q0.powi(n_terms as i32 - 1);
    let mut tail = 0.0;
    let mut term = 0.0;
    for k in (n_terms - 1)..(n_terms + 400) {
        let kf = k as f64;
        inv_c *= (alpha + kf + 2.0) / (kf + 1.0);
        pw *= q0;
        term = pw * inv_c;
        if k >= n_terms {
            tail += term;
        }
        if term < 1e-300 {
            break;
        }
    }
    let k_end = (n_terms + 400) as f64;
    let q_end = q0 * (alpha + k_end + 2.0) / (k_end + 1.0);
    if q_end < 1.0 {
        tail += term * q_end / (1.0 - q_end);
    }
    Ok(KernelDisc {
        spec,
        function: BergmanFunctionDisc::new(alpha, coeffs)?,
        truncation_tail: tail,
    })
}

/// The half-plane -> disc isomorphism
/// `T_alpha f(w) = 2^{alpha/2} (1 - w)^{-alpha-2} f((w+1)/(i(w-1)))`.
///
/// Unitary up to the measured constant `kappa_T(alpha)`; quotients are
/// unaffected either way.
pub fn t_alpha_map<'f>(
    f: impl Fn(Complex64) -> Complex64 + 'f,
    alpha: f64,
) -> impl Fn(Complex64) -> Complex64 + 'f {
    move |w: Complex64| {
        let z = crate::geometry::cayley_halfplane_c(w);
        let one_minus_w = Complex64::new(1.0, 0.0) - w;
        let factor =
            2f64.powf(alpha / 2.0) * one_minus_w.powc(Complex64::new(-alpha - 2.0, 0.0));
        factor * f(z)
    }
}

/// Hermitian Galerkin matrix of a domain restriction in the `e_n` basis.
#[derive(Debug, Clone, Serialize)]
pub struct ToeplitzMatrix {
    pub alpha: f64,
    pub n: usize,
    /// Row-major entries, `entries[m * n + k] = M_{mk}`.
    pub entries: Vec<Complex64>,
    pub domain: String,
}

impl ToeplitzMatrix {
    pub fn entry(&self, m: usize, k: usize) -> Complex64 {
        self.entries[m * self.n + k]
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n).map(|k| self.entry(k, k).re).collect()
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for m in 0..n {
            let row = &self.entries[m * n..(m + 1) * n];
            out[m] = pairwise_sum_complex_by(0, n, &|k| row[k] * v[k]);
        }
        out
    }

    /// Largest asymmetry `|M - M^H|` before the final hermitization.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for m in 0..self.n {
            for k in 0..self.n {
                worst = worst.max((self.entry(m, k) - self.entry(k, m).conj()).norm());
            }
        }
        worst
    }

    /// Rayleigh quotient `v^H M v / v^H v`.
    pub fn rayleigh(&self, v: &[Complex64]) -> f64 {
        let mv = self.matvec(v);
        let num = pairwise_sum_complex_by(0, self.n, &|i| v[i].conj() * mv[i]);
        let den = pairwise_sum_by(0, self.n, &|i| v[i].norm_sqr());
        num.re / den
    }

    fn hermitize(&mut self) {
        let n = self.n;
        for m in 0..n {
            for k in m..n {
                let avg = 0.5 * (self.entries[m * n + k] + self.entries[k * n + m].conj());
                self.entries[m * n + k] = avg;
                self.entries[k * n + m] = avg.conj();
            }
        }
    }
}

/// Closed-form diagonal of a centered radial restriction:
/// `lambda_k = I_{r_out^2}(k+1, alpha+1) - I_{r_in^2}(k+1, alpha+1)`.
pub fn radial_restriction_diagonal(
    r_inner: f64,
    r_outer: f64,
    alpha: f64,
    n: usize,
) -> Result<Vec<f64>> {
    if !(0.0..=1.0).contains(&r_inner) || !(r_inner..=1.0).contains(&r_outer) {
        return Err(Error::usage(format!(
            "radial restriction requires 0 <= r_inner <= r_outer <= 1, got ({r_inner}, {r_outer})"
        )));
    }
    let (ui, uo) = (r_inner * r_inner, r_outer * r_outer);
    (0..n)
        .map(|k| {
            let a = k as f64 + 1.0;
            Ok(reg_inc_beta(uo, a, alpha + 1.0)? - reg_inc_beta(ui, a, alpha + 1.0)?)
        })
        .collect()
}

fn assemble_from_nodes(
    alpha: f64,
    n: usize,
    nodes: &[Complex64],
    lebesgue_weights: &[f64],
    domain: String,
) -> ToeplitzMatrix {
    let inv = inv_sqrt_norms(alpha, n);
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    let mut basis = vec![Complex64::new(0.0, 0.0); n];
    for (idx, &z) in nodes.iter().enumerate() {
        let w_alpha = lebesgue_weights[idx] * (1.0 - z.norm_sqr()).powf(alpha);
        if w_alpha == 0.0 {
            continue;
        }
        let mut zk = Complex64::new(1.0, 0.0);
        for k in 0..n {
            basis[k] = inv[k] * zk;
            zk *= z;
        }
        for m in 0..n {
            let em_conj_w = basis[m].conj() * w_alpha;
            let row = &mut entries[m * n..(m + 1) * n];
            for (k, b) in basis.iter().enumerate().skip(m) {
                row[k] += b * em_conj_w;
            }
        }
    }
    let mut matrix = ToeplitzMatrix {
        alpha,
        n,
        entries,
        domain,
    };
    // mirror the computed upper triangle
    for m in 0..n {
        for k in 0..m {
            matrix.entries[m * n + k] = matrix.entries[k * n + m].conj();
        }
    }
    matrix.hermitize();
    matrix
}

fn identity_matrix(alpha: f64, n: usize, domain: String) -> ToeplitzMatrix {
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    for k in 0..n {
        entries[k * n + k] = Complex64::new(1.0, 0.0);
    }
    ToeplitzMatrix {
        alpha,
        n,
        entries,
        domain,
    }
}

fn matrix_sub(a: &ToeplitzMatrix, b: &ToeplitzMatrix, domain: String) -> ToeplitzMatrix {
    let entries = a
        .entries
        .iter()
        .zip(&b.entries)
        .map(|(x, y)| x - y)
        .collect();
    ToeplitzMatrix {
        alpha: a.alpha,
        n: a.n,
        entries,
        domain,
    }
}

fn matrix_add(a: &ToeplitzMatrix, b: &ToeplitzMatrix, domain: String) -> ToeplitzMatrix {
    let entries = a
        .entries
        .iter()
        .zip(&b.entries)
        .map(|(x, y)| x + y)
        .collect();
    ToeplitzMatrix {
        alpha: a.alpha,
        n: a.n,
        entries,
        domain,
    }
}

fn chart_resolution(n: usize) -> (usize, usize) {
    (160.max(n + 16), (2 * n + 64).max(128))
}

fn toeplitz_shape(
    shape: &Shape,
    alpha: f64,
    n: usize,
    grid: &DiskGrid,
    descriptor: &str,
) -> Result<ToeplitzMatrix> {
    let (n_u, n_phi) = chart_resolution(n);
    match shape {
        Shape::CenteredDisc { radius } => {
            let chart = DiscChart::annulus(0.0, *radius, n_u, n_phi)?;
            Ok(assemble_from_nodes(
                alpha,
                n,
                chart.nodes(),
                chart.weights(),
                descriptor.to_string(),
            ))
        }
        Shape::Annulus { r_inner, r_outer } => {
            let outer = toeplitz_shape(
                &Shape::CenteredDisc { radius: *r_outer },
                alpha,
                n,
                grid,
                descriptor,
            )?;
            if *r_inner == 0.0 {
                return Ok(outer);
            }
            let inner = toeplitz_shape(
                &Shape::CenteredDisc { radius: *r_inner },
                alpha,
                n,
                grid,
                descriptor,
            )?;
            Ok(matrix_sub(&outer, &inner, descriptor.to_string()))
        }
        Shape::BoundaryComplement { radius } => {
            // 1_{D \ B_r} = 1_D - 1_{B_r}; the full-disc matrix is the identity
            let disc = toeplitz_shape(
                &Shape::CenteredDisc { radius: *radius },
                alpha,
                n,
                grid,
                descriptor,
            )?;
            let identity = identity_matrix(alpha, n, descriptor.to_string());
            Ok(matrix_sub(&identity, &disc, descriptor.to_string()))
        }
        Shape::PseudoDisc { center, measure } => {
            let w = Point::Disc(DiskPoint::new(center[0], center[1])?);
            let ball = disc_from_measure(&w, *measure)?;
            let chart = DiscChart::new(
                ball.euclidean_center_c(),
                ball.euclidean_radius,
                n_u,
                n_phi,
            )?;
            Ok(assemble_from_nodes(
                alpha,
                n,
                chart.nodes(),
                chart.weights(),
                descriptor.to_string(),
            ))
        }
        Shape::Union { parts } => {
            let mut acc: Option<ToeplitzMatrix> = None;
            for part in parts {
                let m = toeplitz_shape(part, alpha, n, grid, descriptor)?;
                acc = Some(match acc {
                    None => m,
                    Some(prev) => matrix_add(&prev, &m, descriptor.to_string()),
                });
            }
            Ok(acc.expect("validated unions are nonempty"))
        }
        Shape::Rectangle { .. } => Err(Error::usage(
            "rectangles live in the half-plane; map them to a disc mask first".to_string(),
        )),
        Shape::Mask { grid: dims, cells } => {
            if dims[0] != grid.radial_count() || dims[1] != grid.angular_count() {
                return Err(Error::usage("mask grid mismatch".to_string()));
            }
            if n > grid.radial_count() {
                return Err(Error::usage(format!(
                    "basis size {n} exceeds the grid's exactness bound {}",
                    grid.radial_count()
                )));
            }
            let mut nodes = Vec::new();
            let mut weights = Vec::new();
            for (idx, &selected) in cells.iter().enumerate() {
                if selected {
                    nodes.push(grid.node(idx));
                    weights.push(grid.weight(idx, Measure::Lebesgue));
                }
            }
            Ok(assemble_from_nodes(
                alpha,
                n,
                &nodes,
                &weights,
                descriptor.to_string(),
            ))
        }
    }
}

/// Galerkin matrix `M_{mk} = int_Omega e_k conj(e_m) (1-|z|^2)^alpha dz` of a
/// disc-model domain.
pub fn toeplitz_matrix(
    dom: &DomainSpec,
    alpha: f64,
    n: usize,
    grid: &DiskGrid,
) -> Result<ToeplitzMatrix> {
    if dom.model != Model::Disc {
        return Err(Error::usage(
            "Galerkin compression is assembled in the disc model".to_string(),
        ));
    }
    if n == 0 {
        return Err(Error::usage("basis size must be positive".to_string()));
    }
    dom.validate()?;
    let descriptor = serde_json::to_string(dom)
        .map_err(|e| Error::Parse(format!("domain descriptor serialization: {e}")))?;
    toeplitz_shape(&dom.shape, alpha, n, grid, &descriptor)
}

/// Dominant eigenpair of a Hermitian Galerkin matrix: power iteration with a
/// Rayleigh-quotient residual test, falling back to shifted inverse
/// iteration when the top of the spectrum is clustered. Deterministic fixed
/// starting vector.
pub fn top_eigenpair(m: &ToeplitzMatrix) -> Result<(f64, Vec<Complex64>)> {
    let n = m.n;
    let mut v: Vec<Complex64> = (0..n)
        .map(|k| Complex64::new(1.0 / (k as f64 + 1.0), 0.0))
        .collect();
    normalize(&mut v);
    let mut lambda = 0.0;
    let mut residual = f64::INFINITY;
    for _ in 0..POWER_PHASE_ITER {
        let mv = m.matvec(&v);
        lambda = pairwise_sum_complex_by(0, n, &|i| v[i].conj() * mv[i]).re;
        residual = (0..n)
            .map(|i| (mv[i] - lambda * v[i]).norm_sqr())
            .sum::<f64>()
            .sqrt();
        if residual < EIGEN_RESIDUAL {
            return Ok((lambda, v));
        }
        let norm = mv.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            // the matrix annihilates the iterate: spectrum is 0 here
            return Ok((0.0, v));
        }
        v = mv.into_iter().map(|c| c / norm).collect();
    }

    // inverse iteration on (sigma I - M), Hermitian positive definite for
    // sigma above the top eigenvalue; the shift tracks the Rayleigh quotient
    let mut sigma = lambda + residual.max(1e-12);
    let mut iterations = POWER_PHASE_ITER;
    for _ in 0..INVERSE_PHASE_ITER {
        iterations += 1;
        let mut shifted = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                shifted[i * n + j] = -m.entries[i * n + j];
            }
            shifted[i * n + i] += sigma;
        }
        if cholesky_in_place(&mut shifted, n).is_none() {
            // sigma slipped below the spectrum top; back off upward
            sigma = lambda + 2.0 * (sigma - lambda).abs().max(1e-12);
            continue;
        }
        let mut w = cholesky_solve(&shifted, n, &v);
        normalize(&mut w);
        v = w;
        let mv = m.matvec(&v);
        lambda = pairwise_sum_complex_by(0, n, &|i| v[i].conj() * mv[i]).re;
        residual = (0..n)
            .map(|i| (mv[i] - lambda * v[i]).norm_sqr())
            .sum::<f64>()
            .sqrt();
        if residual < EIGEN_RESIDUAL {
            return Ok((lambda, v));
        }
        sigma = lambda + residual.max(1e-14);
    }
    Err(Error::NoConvergence {
        residual,
        iterations,
    })
}

const POWER_PHASE_ITER: usize = 2000;
const INVERSE_PHASE_ITER: usize = 80;

/// In-place lower Cholesky factor of a Hermitian positive definite matrix;
/// `None` if a pivot is nonpositive.
fn cholesky_in_place(a: &mut [Complex64], n: usize) -> Option<()> {
    for j in 0..n {
        let mut d = a[j * n + j].re;
        for k in 0..j {
            d -= a[j * n + k].norm_sqr();
        }
        if !(d > 0.0) {
            return None;
        }
        let d = d.sqrt();
        a[j * n + j] = Complex64::new(d, 0.0);
        for i in j + 1..n {
            let mut v = a[i * n + j];
            for k in 0..j {
                v -= a[i * n + k] * a[j * n + k].conj();
            }
            a[i * n + j] = v / d;
        }
    }
    Some(())
}

/// Solve `L L^H x = b` given the lower factor.
fn cholesky_solve(l: &[Complex64], n: usize, b: &[Complex64]) -> Vec<Complex64> {
    let mut y = vec![Complex64::new(0.0, 0.0); n];
    for i in 0..n {
        let mut acc = b[i];
        for k in 0..i {
            acc -= l[i * n + k] * y[k];
        }
        y[i] = acc / l[i * n + i].re;
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for i in (0..n).rev() {
        let mut acc = y[i];
        for k in i + 1..n {
            acc -= l[k * n + i].conj() * x[k];
        }
        x[i] = acc / l[i * n + i].re;
    }
    x
}

fn normalize(v: &mut [Complex64]) {
    let n = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if n > 0.0 {
        for c in v.iter_mut() {
            *c /= n;
        }
    }
}

/// Measured norm-ratio constants of the transform chain.
///
/// `kappa_b` is `||B_alpha f||_{A_alpha(C+)} / ||f||` (expected 1 with the
/// crate's transform constant and plain Lebesgue `dx ds` on the half-plane),
/// `kappa_t` is `||T_alpha g||_{A_alpha(D)} / ||g||_{A_alpha(C+)}` (expected
/// `2^{(alpha-2)/2}`), and `kappa_w` is the transform-plane mass ratio
/// `int |W f|^2 dnu / ||f||^2 = 2 pi kappa_b^2`. Concentration quotients are
/// invariant under all of these; absolute-norm reports divide by them.
#[derive(Debug, Clone, Serialize)]
pub struct Calibration {
    pub alpha: f64,
    pub kappa_b: f64,
    pub kappa_t: f64,
    pub kappa_w: f64,
    pub spread_b: f64,
    pub spread_t: f64,
}

const CALIBRATION_SPREAD_LIMIT: f64 = 1e-5;

/// `int_{C+} |g(z)|^2 s^alpha dx ds` by pulling the half-plane back onto a
/// disc grid through the Cayley map (the grid covers all of `C+` except an
/// O(boundary-gap) sliver).
pub fn halfplane_alpha_mass(
    g: impl Fn(Complex64) -> Complex64,
    alpha: f64,
    grid: &DiskGrid,
) -> Result<f64> {
    let values: Vec<f64> = grid
        .nodes()
        .iter()
        .map(|&w| {
            let z = crate::geometry::cayley_halfplane_c(w);
            let jac = 4.0 / (Complex64::new(1.0, 0.0) - w).norm_sqr().powi(2);
            g(z).norm_sqr() * z.im.powf(alpha) * jac
        })
        .collect();
    grid.integrate(&values, Measure::Lebesgue)
}

/// `int_{C+} |W(z)|^2 dnu(z)` by the same pullback (`dnu = 4 dmu`).
pub fn transform_plane_mass(
    w_eval: impl Fn(Complex64) -> Complex64,
    grid: &DiskGrid,
) -> Result<f64> {
    let values: Vec<f64> = grid
        .nodes()
        .iter()
        .map(|&w| {
            let z = crate::geometry::cayley_halfplane_c(w);
            4.0 * w_eval(z).norm_sqr()
        })
        .collect();
    grid.integrate(&values, Measure::Hyperbolic)
}

fn calibration_signals(alpha: f64) -> Result<Vec<crate::wavelet::SignalSpec>> {
    use crate::wavelet::{SignalKind, SignalSpec};
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let patterns: Vec<Vec<Complex64>> = vec![
        vec![c(1.0, 0.0)],
        vec![c(0.0, 0.0), c(1.0, 0.0)],
        vec![c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0)],
        vec![c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0), c(0.5, 0.0)],
        vec![c(0.9, 0.1), c(-0.4, 0.3), c(0.2, -0.6), c(0.1, 0.1), c(0.0, 0.2), c(0.3, 0.0)],
        vec![c(0.3, 0.0), c(0.0, 0.0), c(0.0, 0.7), c(0.0, 0.0), c(0.2, -0.2)],
    ];
    patterns
        .into_iter()
        .map(|coeffs| SignalSpec::new(SignalKind::Mix { alpha, coeffs }))
        .collect()
}

/// Measure the norm-ratio constants of `B_alpha` and `T_alpha` over a fixed
/// signal set; a ratio spread beyond `1e-5` flags a bug.
pub fn calibrate_unitarity(alpha: f64, grid: &DiskGrid) -> Result<Calibration> {
    let signals = calibration_signals(alpha)?;
    let mut kappa_b = Vec::new();
    let mut kappa_t = Vec::new();
    for f in &signals {
        let h2 = f.norm()?;
        let bt = crate::wavelet::BergmanTransform::new(f, alpha, 160)?;
        let hp_mass = halfplane_alpha_mass(
            |z| bt.eval_c(z).expect("closed-form signal evaluation"),
            alpha,
            grid,
        )?;
        let mapped = t_alpha_map(|z| bt.eval_c(z).expect("closed-form signal evaluation"), alpha);
        let disc_values: Vec<Complex64> = grid.nodes().iter().map(|&w| mapped(w)).collect();
        let disc_mass = inner_product_alpha_sampled(&disc_values, &disc_values, grid)?.re;
        kappa_b.push((hp_mass / (h2 * h2)).sqrt());
        kappa_t.push((disc_mass / hp_mass).sqrt());
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let spread = |v: &[f64], m: f64| {
        v.iter()
            .map(|x| (x - m).abs() / m)
            .fold(0.0f64, f64::max)
    };
    let (mb, mt) = (mean(&kappa_b), mean(&kappa_t));
    let (sb, st) = (spread(&kappa_b, mb), spread(&kappa_t, mt));
    if sb > CALIBRATION_SPREAD_LIMIT || st > CALIBRATION_SPREAD_LIMIT {
        return Err(Error::Calibration {
            spread: sb.max(st),
            limit: CALIBRATION_SPREAD_LIMIT,
        });
    }
    Ok(Calibration {
        alpha,
        kappa_b: mb,
        kappa_t: mt,
        kappa_w: 2.0 * std::f64::consts::PI * mb * mb,
        spread_b: sb,
        spread_t: st,
    })
}

/// Coefficients of `T_alpha(B_alpha f)` against the `e_n` basis, by disc
/// quadrature. For the crate's closed-form signal classes the image is a
/// polynomial-type element, so the projection is grid-exact.
pub fn disc_function_of_signal(
    f: &crate::wavelet::SignalSpec,
    alpha: f64,
    n: usize,
    grid: &DiskGrid,
) -> Result<BergmanFunctionDisc> {
    let bt = crate::wavelet::BergmanTransform::new(f, alpha, 160)?;
    let mapped = t_alpha_map(|z| bt.eval_c(z).expect("closed-form signal evaluation"), alpha);
    let values: Vec<Complex64> = grid.nodes().iter().map(|&w| mapped(w)).collect();
    let inv = inv_sqrt_norms(alpha, n);
    let mut coeffs = Vec::with_capacity(n);
    for k in 0..n {
        // <T B f, e_k>_alpha with e_k = z^k / sqrt(c_k)
        let products: Vec<Complex64> = grid
            .nodes()
            .iter()
            .zip(&values)
            .map(|(&w, &v)| v * w.conj().powu(k as u32) * inv[k])
            .collect();
        coeffs.push(grid.integrate_complex(&products, Measure::AlphaWeighted)?);
    }
    BergmanFunctionDisc::new(alpha, coeffs)
}

/// Cosine of the angle between two coefficient vectors.
pub fn vector_cosine(a: &[Complex64], b: &[Complex64]) -> f64 {
    let n = a.len().min(b.len());
    let dot = pairwise_sum_complex_by(0, n, &|i| a[i].conj() * b[i]).norm();
    let na = pairwise_sum_by(0, a.len(), &|i| a[i].norm_sqr()).sqrt();
    let nb = pairwise_sum_by(0, b.len(), &|i| b[i].norm_sqr()).sqrt();
    if na == 0.0 || nb == 0.0 {
        0.0
    } else {
        dot / (na * nb)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::centered_disc_hyperbolic_measure;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn grid() -> DiskGrid {
        DiskGrid::build(64, 128, 0.0).unwrap()
    }

    #[test]
    fn eval_basis_elements() {
        let alpha = 0.0;
        let e0 = BergmanFunctionDisc::basis_element(alpha, 0, 4).unwrap();
        let z = DiskPoint::new(0.3, -0.4).unwrap();
        // e_0 = 1/sqrt(c_0) = sqrt((alpha+1)/pi)
        assert_abs_diff_eq!(
            eval_disc(&e0, z).re,
            (1.0 / PI).sqrt(),
            epsilon = 1e-15
        );
        let e1 = BergmanFunctionDisc::basis_element(alpha, 1, 4).unwrap();
        let origin = DiskPoint::new(0.0, 0.0).unwrap();
        assert_abs_diff_eq!(eval_disc(&e1, origin).norm(), 0.0, epsilon = 0.0);
    }

    #[test]
    fn truncated_kernel_matches_closed_form() {
        let alpha = 0.0;
        let spec = KernelSpecDisc {
            alpha,
            w: DiskPoint::new(0.5, 0.0).unwrap(),
        };
        let kernel = kernel_disc(spec, 128).unwrap();
        let z = Complex64::new(0.3, 0.0);
        let series = kernel.function.eval(z);
        let closed = kernel.eval_closed(z);
        assert!((series - closed).norm() < 1e-8, "series {series}, closed {closed}");
        assert!(kernel.truncation_tail < 1e-12);
    }

    #[test]
    fn coefficient_and_quadrature_inner_products_agree() {
        let g = grid();
        let alpha = 0.0;
        for n in 0..=10usize {
            for m in 0..=10usize {
                let en = BergmanFunctionDisc::basis_element(alpha, n, 11).unwrap();
                let em = BergmanFunctionDisc::basis_element(alpha, m, 11).unwrap();
                let coeff = inner_product_alpha(&en, &em).unwrap();
                let fv = g.sample(|z| en.eval(z));
                let gv = g.sample(|z| em.eval(z));
                let quad = inner_product_alpha_sampled(&fv, &gv, &g).unwrap();
                let expect = if n == m { 1.0 } else { 0.0 };
                assert!((coeff.re - expect).abs() < 1e-14);
                assert!(
                    (quad - coeff).norm() < 1e-10,
                    "n={n} m={m}: quad {quad}, coeff {coeff}"
                );
            }
        }
    }

    #[test]
    fn inner_product_rejects_weight_mismatch() {
        let f = BergmanFunctionDisc::basis_element(0.0, 0, 2).unwrap();
        let g = BergmanFunctionDisc::basis_element(1.0, 0, 2).unwrap();
        assert!(inner_product_alpha(&f, &g).is_err());
    }

    #[test]
    fn parseval_norm() {
        let alpha = 1.0;
        let coeffs = vec![
            Complex64::new(0.3, -0.1),
            Complex64::new(0.0, 0.7),
            Complex64::new(-0.2, 0.2),
        ];
        let expect: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
        let f = BergmanFunctionDisc::new(alpha, coeffs).unwrap();
        assert_abs_diff_eq!(f.norm_sq(), expect, epsilon = 1e-15);
    }

    #[test]
    fn monomial_kernel_pairing() {
        // <z^k, K_w> = w^k
        let alpha = 0.0;
        let w = DiskPoint::new(0.4, 0.2).unwrap();
        let kernel = kernel_disc(KernelSpecDisc { alpha, w }, 64).unwrap();
        for k in 0..=5usize {
            let zk = BergmanFunctionDisc::monomial(alpha, k, 64).unwrap();
            let pair = inner_product_alpha(&zk, &kernel.function).unwrap();
            let expect = w.to_complex().powu(k as u32);
            assert!(
                (pair - expect).norm() < 1e-12,
                "k={k}: got {pair}, expect {expect}"
            );
        }
    }

    #[test]
    fn kernel_norm_identity_and_reproduction() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let g = grid();
        for &alpha in &[-0.5, 0.0, 1.0, 2.5] {
            // norm identity across |w| <= 0.9
            for _ in 0..12 {
                let r = rng.gen_range(0.0..0.9);
                let phi = rng.gen_range(0.0..2.0 * PI);
                let w = DiskPoint::new(r * phi.cos(), r * phi.sin()).unwrap();
                let kernel = kernel_disc(KernelSpecDisc { alpha, w }, 512).unwrap();
                let series = kernel.function.norm_sq() + kernel.truncation_tail;
                let closed = kernel.norm_sq_closed();
                assert!(
                    ((series - closed) / closed).abs() < 1e-9,
                    "alpha={alpha} w={w:?}: series {series}, closed {closed}"
                );
            }
            // alpha = 1, w = 0.6: |K_w|^2 = (2/pi) 0.64^{-3}
            if alpha == 1.0 {
                let w = DiskPoint::new(0.6, 0.0).unwrap();
                let kernel = kernel_disc(KernelSpecDisc { alpha, w }, 256).unwrap();
                assert_abs_diff_eq!(
                    kernel.norm_sq_closed(),
                    2.0 / PI * 0.64f64.powi(-3),
                    epsilon = 1e-12
                );
                let quad = {
                    let fv = g.sample(|z| kernel.eval_closed(z));
                    // alpha = 1 needs the alpha = 1 grid
                    let g1 = DiskGrid::build(96, 192, 1.0).unwrap();
                    let fv1 = g1.sample(|z| kernel.eval_closed(z));
                    let _ = fv;
                    inner_product_alpha_sampled(&fv1, &fv1, &g1).unwrap().re
                };
                assert!(
                    ((quad - kernel.norm_sq_closed()) / quad).abs() < 1e-8,
                    "quadrature {quad} vs closed {}",
                    kernel.norm_sq_closed()
                );
            }
            // reproducing property on a random polynomial
            let coeffs: Vec<Complex64> = (0..12)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let f = BergmanFunctionDisc::new(alpha, coeffs).unwrap();
            let w = DiskPoint::new(0.35, -0.25).unwrap();
            let kernel = kernel_disc(KernelSpecDisc { alpha, w }, 256).unwrap();
            let pairing = inner_product_alpha(&f, &kernel.function).unwrap();
            let direct = f.eval(w.to_complex());
            assert!(
                (pairing - direct).norm() < 1e-9,
                "alpha={alpha}: pairing {pairing}, direct {direct}"
            );
        }
    }

    #[test]
    fn kernel_at_origin_is_constant() {
        let kernel = kernel_disc(
            KernelSpecDisc {
                alpha: 1.5,
                w: DiskPoint::new(0.0, 0.0).unwrap(),
            },
            16,
        )
        .unwrap();
        for &z in &[Complex64::new(0.2, 0.1), Complex64::new(-0.7, 0.3)] {
            assert_abs_diff_eq!(
                kernel.eval_closed(z).re,
                2.5 / PI,
                epsilon = 1e-14
            );
            assert_abs_diff_eq!(kernel.eval_closed(z).im, 0.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn toeplitz_full_disc_is_identity() {
        let g = grid();
        let dom = DomainSpec::new(
            Model::Disc,
            Shape::CenteredDisc {
                radius: 1.0 - 1e-12,
            },
        )
        .unwrap();
        let m = toeplitz_matrix(&dom, 0.0, 12, &g).unwrap();
        for a in 0..12 {
            for b in 0..12 {
                let expect = if a == b { 1.0 } else { 0.0 };
                assert!(
                    (m.entry(a, b) - expect).norm() < 1e-10,
                    "entry ({a},{b}) = {}",
                    m.entry(a, b)
                );
            }
        }
    }

    #[test]
    fn toeplitz_centered_disc_diagonal_matches_incomplete_beta() {
        let g = grid();
        for &alpha in &[-0.5, 0.0, 1.0, 2.5] {
            let r = 0.7f64;
            let dom = DomainSpec::new(Model::Disc, Shape::CenteredDisc { radius: r }).unwrap();
            let m = toeplitz_matrix(&dom, alpha, 16, &g).unwrap();
            let diag = radial_restriction_diagonal(0.0, r, alpha, 16).unwrap();
            for k in 0..16 {
                assert!(
                    (m.entry(k, k).re - diag[k]).abs() < 1e-12,
                    "alpha={alpha} k={k}: {} vs {}",
                    m.entry(k, k).re,
                    diag[k]
                );
            }
            // off-diagonals vanish for radial domains
            let mut max_off = 0.0f64;
            for a in 0..16 {
                for b in 0..16 {
                    if a != b {
                        max_off = max_off.max(m.entry(a, b).norm());
                    }
                }
            }
            assert!(max_off < 1e-12, "alpha={alpha}: off-diagonal {max_off}");
            // lambda_0 = 1 - (1 - r^2)^{1+alpha}
            assert_abs_diff_eq!(
                diag[0],
                1.0 - (1.0 - r * r).powf(1.0 + alpha),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn toeplitz_hermitian_and_contractive() {
        let g = grid();
        let dom = DomainSpec::new(
            Model::Disc,
            Shape::PseudoDisc {
                center: [0.3, 0.4],
                measure: PI,
            },
        )
        .unwrap();
        let m = toeplitz_matrix(&dom, 0.0, 24, &g).unwrap();
        assert!(m.hermiticity_defect() < 1e-12);
        // Ritz values stay within [0, 1] up to quadrature tolerance
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..20 {
            let v: Vec<Complex64> = (0..24)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let q = m.rayleigh(&v);
            assert!((-1e-8..=1.0 + 1e-8).contains(&q), "Ritz value {q}");
        }
    }

    #[test]
    fn toeplitz_monotone_under_inclusion() {
        let g = grid();
        let small = DomainSpec::new(Model::Disc, Shape::CenteredDisc { radius: 0.5 }).unwrap();
        let large = DomainSpec::new(Model::Disc, Shape::CenteredDisc { radius: 0.7 }).unwrap();
        let ms = toeplitz_matrix(&small, 0.5, 16, &g).unwrap();
        let ml = toeplitz_matrix(&large, 0.5, 16, &g).unwrap();
        let (ls, _) = top_eigenpair(&ms).unwrap();
        let (ll, _) = top_eigenpair(&ml).unwrap();
        assert!(ls <= ll + 1e-8, "{ls} > {ll}");
    }

    #[test]
    fn top_eigenpair_diagonal_cases() {
        let identity = identity_matrix(0.0, 5, "identity".to_string());
        let (lambda, _) = top_eigenpair(&identity).unwrap();
        assert_abs_diff_eq!(lambda, 1.0, epsilon = 1e-12);

        let mut entries = vec![Complex64::new(0.0, 0.0); 9];
        entries[0] = Complex64::new(0.7, 0.0);
        entries[4] = Complex64::new(0.3, 0.0);
        entries[8] = Complex64::new(0.1, 0.0);
        let m = ToeplitzMatrix {
            alpha: 0.0,
            n: 3,
            entries,
            domain: "diag(0.7, 0.3, 0.1)".to_string(),
        };
        let (lambda, v) = top_eigenpair(&m).unwrap();
        assert_abs_diff_eq!(lambda, 0.7, epsilon = 1e-10);
        let e0 = [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ];
        assert!(vector_cosine(&v, &e0) > 1.0 - 1e-10);
    }

    #[test]
    fn top_eigenvalue_centered_measure_pi_is_half() {
        // mu(B_r) = pi at r^2 = 1/2; theta(pi) with alpha = 0 is 1/2
        let g = grid();
        let radius = 0.5f64.sqrt();
        assert_abs_diff_eq!(
            centered_disc_hyperbolic_measure(radius),
            PI,
            epsilon = 1e-12
        );
        let dom = DomainSpec::new(Model::Disc, Shape::CenteredDisc { radius }).unwrap();
        let m = toeplitz_matrix(&dom, 0.0, 64, &g).unwrap();
        let (lambda, v) = top_eigenpair(&m).unwrap();
        assert_abs_diff_eq!(lambda, 0.5, epsilon = 1e-9);
        let mut e0 = vec![Complex64::new(0.0, 0.0); 64];
        e0[0] = Complex64::new(1.0, 0.0);
        assert!(vector_cosine(&v, &e0) > 1.0 - 1e-10);
    }

    #[test]
    fn t_alpha_maps_halfplane_kernels_to_disc_kernels() {
        // (z - conj(w0))^{-alpha-2} should map to a multiple of K_{w0_disc}
        let alpha = 1.0;
        let w0 = Complex64::new(0.4, 1.3);
        let f = move |z: Complex64| {
            (z - w0.conj()).powc(Complex64::new(-alpha - 2.0, 0.0))
        };
        let mapped = t_alpha_map(f, alpha);
        let w_disc = crate::geometry::cayley_disk_c(w0);
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mut ratios = Vec::new();
        for _ in 0..50 {
            let r = rng.gen_range(0.0..0.8);
            let phi = rng.gen_range(0.0..2.0 * PI);
            let w = Complex64::new(r * phi.cos(), r * phi.sin());
            let lhs = mapped(w);
            let rhs = kernel_eval_closed(alpha, w_disc, w);
            ratios.push(lhs / rhs);
        }
        let mean = ratios.iter().sum::<Complex64>() / ratios.len() as f64;
        for r in &ratios {
            assert!(
                (r - mean).norm() < 1e-9 * mean.norm(),
                "ratio wobble: {r} vs mean {mean}"
            );
        }
    }

    #[test]
    fn calibration_constants_match_derived_values() {
        // kappa_B = 1 by the transform constant; kappa_T = 2^{(alpha-2)/2}
        // from the change of variables in the norm integral
        let g = DiskGrid::build(128, 256, 0.0).unwrap();
        for &alpha in &[0.0, 1.0] {
            let g_alpha = DiskGrid::build(128, 256, alpha).unwrap();
            let _ = &g;
            let cal = calibrate_unitarity(alpha, &g_alpha).unwrap();
            assert!(
                (cal.kappa_b - 1.0).abs() < 2e-4,
                "alpha={alpha}: kappa_b {}",
                cal.kappa_b
            );
            let expect_t = 2f64.powf((alpha - 2.0) / 2.0);
            assert!(
                ((cal.kappa_t - expect_t) / expect_t).abs() < 2e-4,
                "alpha={alpha}: kappa_t {} expected {expect_t}",
                cal.kappa_t
            );
            assert!(cal.spread_b < 1e-5 && cal.spread_t < 1e-5);
        }
    }

    #[test]
    fn eigenfunction_chain_reaches_monomial_basis() {
        // T_alpha(B_alpha psi_n) is proportional to e_n, constant ratio
        let g = DiskGrid::build(96, 192, 0.0).unwrap();
        let _ = &g;
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for &alpha in &[0.0, 1.0] {
            for n in 0..=6usize {
                let psi = crate::wavelet::eigenfunction_psi(n, alpha).unwrap();
                let bt = crate::wavelet::BergmanTransform::new(&psi, alpha, 160).unwrap();
                let mapped = t_alpha_map(|z| bt.eval_c(z).unwrap(), alpha);
                let e_n = BergmanFunctionDisc::basis_element(alpha, n, n + 1).unwrap();
                let mut ratios = Vec::new();
                for _ in 0..20 {
                    let r = rng.gen_range(0.45..0.8);
                    let phi = rng.gen_range(0.0..2.0 * PI);
                    let w = Complex64::new(r * phi.cos(), r * phi.sin());
                    ratios.push(mapped(w) / e_n.eval(w));
                }
                let mean = ratios.iter().sum::<Complex64>() / ratios.len() as f64;
                for r in &ratios {
                    assert!(
                        (r - mean).norm() < 1e-7 * mean.norm(),
                        "alpha={alpha} n={n}: ratio {r} vs mean {mean}"
                    );
                }
            }
        }
    }

    #[test]
    fn signal_projection_recovers_mix_coefficients() {
        // a Mix maps to its own coefficient vector up to the chain constant
        let alpha = 1.0;
        let g = DiskGrid::build(128, 256, alpha).unwrap();
        let coeffs = vec![
            Complex64::new(0.6, 0.0),
            Complex64::new(0.0, -0.5),
            Complex64::new(0.3, 0.2),
        ];
        let f = crate::wavelet::SignalSpec::new(crate::wavelet::SignalKind::Mix {
            alpha,
            coeffs: coeffs.clone(),
        })
        .unwrap();
        let projected = disc_function_of_signal(&f, alpha, 6, &g).unwrap();
        // proportionality with a single complex constant
        let ratio = projected.coeffs()[0] / coeffs[0];
        for k in 0..3 {
            assert!(
                (projected.coeffs()[k] - ratio * coeffs[k]).norm() < 1e-6 * ratio.norm(),
                "k={k}"
            );
        }
        for k in 3..6 {
            assert!(projected.coeffs()[k].norm() < 1e-8);
        }
        // |ratio| = kappa_T * kappa_B = 2^{(alpha-2)/2}
        let expect = 2f64.powf((alpha - 2.0) / 2.0);
        assert!(
            ((ratio.norm() - expect) / expect).abs() < 1e-4,
            "|ratio| = {}, expect {expect}",
            ratio.norm()
        );
    }

    #[test]
    fn toeplitz_requires_disc_model() {
        let g = grid();
        let dom = DomainSpec::new(
            Model::HalfPlane,
            Shape::Rectangle {
                x: [0.0, 1.0],
                s: [1.0, 2.0],
            },
        )
        .unwrap();
        assert!(toeplitz_matrix(&dom, 0.0, 8, &g).is_err());
    }

    #[test]
    fn toeplitz_mask_respects_exactness_bound() {
        let g = DiskGrid::build(16, 32, 0.0).unwrap();
        let dom = DomainSpec::new(
            Model::Disc,
            Shape::Mask {
                grid: [16, 32],
                cells: vec![true; 16 * 32],
            },
        )
        .unwrap();
        assert!(toeplitz_matrix(&dom, 0.0, 32, &g).is_err());
        let m = toeplitz_matrix(&dom, 0.0, 8, &g).unwrap();
        // full-disc mask is close to the identity
        for k in 0..8 {
            assert!((m.entry(k, k).re - 1.0).abs() < 1e-6);
        }
    }
}
