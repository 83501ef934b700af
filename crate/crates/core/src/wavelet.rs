//! Hardy-space signals and their time-scale transforms.
//!
//! Signals live on the frequency side: every closed-form kind decomposes as
//! `fhat(t) = t^{e0} e^{-sigma t} p(t)` with `p` polynomial up to a bounded
//! phase. Transforms are Laplace-type integrals
//! `int_0^infty t^c fhat(t) e^{izt} dt`; substituting `t = tau / lambda` with
//! `lambda = (sigma + s)/2` turns them into integrals against the fixed
//! weight `tau^c e^{-2 tau}`, which the generalized Gauss rules integrate to
//! near machine precision uniformly in the scale `s`.
//!
//! Conventions: the Fourier transform is unitary,
//! `fhat(xi) = (2 pi)^{-1/2} int f(t) e^{-i t xi} dt`, and
//! `||f||^2 = int_0^infty |fhat|^2 dt`. The transform is the coherent-state
//! pairing `W f(x, s) = <f, pi_z psi_beta>` with
//! `pi_z g(t) = s^{-1/2} g((t - x)/s)`, which on the frequency side reads
//! `W f(x, s) = s^{beta + 1/2} c_beta^{-1} int t^beta fhat(t) e^{izt} dt`,
//! `z = x + i s`. With this orientation the covariance
//! `W(pi_w f)(z) = W f(tau_w(z))` holds exactly as the affine action is
//! defined; the domain pipeline keeps its separate reflection step, which
//! leaves all concentration values unchanged.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::HalfPlanePoint;
use crate::quadrature::{pairwise_sum_by, FrequencyGrid};
use crate::specfun::{gamma_ln, laguerre_complex, window_norm_constant, LaguerreParams};

/// Default node count for frequency-side transform evaluation.
pub const DEFAULT_FREQ_NODES: usize = 160;

/// The analyzing window: frequency profile `t^beta e^{-t} / c_beta`,
/// normalized to unit norm in `L^2(R+, dt/t)`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct WindowPsi {
    pub beta: f64,
    pub c_beta: f64,
}

impl WindowPsi {
    pub fn fhat(&self, t: f64) -> f64 {
        if t <= 0.0 {
            0.0
        } else {
            t.powf(self.beta) * (-t).exp() / self.c_beta
        }
    }
}

/// Build the window of order `beta > 0`.
pub fn make_window(beta: f64) -> Result<WindowPsi> {
    let c_beta = window_norm_constant(beta)?;
    Ok(WindowPsi { beta, c_beta })
}

/// Closed-form signal kinds, plus raw samples for external data.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SignalKind {
    /// `psi_n^alpha`: frequency profile
    /// `b_{n,alpha} t^{(alpha+1)/2} e^{-t} L_n^{alpha+1}(2t)`, unit norm.
    Eigenfunction { n: usize, alpha: f64 },
    /// The analyzing window itself as a signal.
    Window { beta: f64 },
    /// `pi_w psi_0^{2 beta - 1}` for `w = center`: the signal concentrating
    /// optimally on pseudohyperbolic discs about `w`. Unit norm.
    Extremizer { beta: f64, center: [f64; 2] },
    /// Finite combination `sum_k coeffs[k] psi_k^alpha`.
    Mix { alpha: f64, coeffs: Vec<Complex64> },
    /// `pi_w` applied to an inner signal, `w = x + i s`.
    Translated {
        x: f64,
        s: f64,
        inner: Box<SignalKind>,
    },
    /// Samples `(t, re, im)` of `fhat` on the canonical frequency grid with
    /// the given weight exponent (nodes of `FrequencyGrid::build(exponent,
    /// len)`).
    Samples {
        exponent: f64,
        triples: Vec<[f64; 3]>,
    },
}

/// A Hardy-space signal described on the frequency side.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SignalSpec {
    pub kind: SignalKind,
}

impl SignalSpec {
    pub fn new(kind: SignalKind) -> Result<Self> {
        validate_kind(&kind)?;
        Ok(Self { kind })
    }

    /// Whether all transforms have closed-form decompositions available.
    pub fn is_closed_form(&self) -> bool {
        !matches!(self.kind, SignalKind::Samples { .. })
    }

    /// Exponential decay rate `sigma` with `fhat ~ e^{-sigma t}`.
    pub fn decay_rate(&self) -> f64 {
        match &self.kind {
            SignalKind::Eigenfunction { .. }
            | SignalKind::Window { .. }
            | SignalKind::Mix { .. }
            | SignalKind::Samples { .. } => 1.0,
            SignalKind::Extremizer { center, .. } => center[1],
            SignalKind::Translated { s, inner, .. } => {
                s * SignalSpec {
                    kind: (**inner).clone(),
                }
                .decay_rate()
            }
        }
    }

    /// Power `e0` with `fhat ~ t^{e0}` as `t -> 0`.
    pub fn power_exponent(&self) -> f64 {
        match &self.kind {
            SignalKind::Eigenfunction { alpha, .. } | SignalKind::Mix { alpha, .. } => {
                (alpha + 1.0) / 2.0
            }
            SignalKind::Window { beta } => *beta,
            SignalKind::Extremizer { beta, .. } => *beta,
            SignalKind::Translated { inner, .. } => SignalSpec {
                kind: (**inner).clone(),
            }
            .power_exponent(),
            SignalKind::Samples { exponent, .. } => exponent / 2.0,
        }
    }

    /// The factor `p(t) = fhat(t) t^{-e0} e^{sigma t}`: a polynomial times a
    /// unimodular phase for every closed-form kind.
    pub fn smooth_part(&self, t: f64) -> Result<Complex64> {
        self.smooth_part_c(Complex64::new(t, 0.0))
    }

    /// [`SignalSpec::smooth_part`] continued to complex arguments; the
    /// transform evaluators integrate along rotated rays where `t` is
    /// complex.
    pub fn smooth_part_c(&self, t: Complex64) -> Result<Complex64> {
        Ok(match &self.kind {
            SignalKind::Eigenfunction { n, alpha } => {
                let b = eigenfunction_norm_constant(*n, *alpha)?;
                b * laguerre_complex(
                    LaguerreParams {
                        n: *n,
                        alpha: alpha + 1.0,
                    },
                    2.0 * t,
                )
            }
            SignalKind::Window { beta } => {
                Complex64::new(1.0 / window_norm_constant(*beta)?, 0.0)
            }
            SignalKind::Extremizer { beta, center } => {
                let alpha = 2.0 * beta - 1.0;
                let b = eigenfunction_norm_constant(0, alpha)?;
                let y = center[1];
                let phase = (-Complex64::new(0.0, center[0]) * t).exp();
                y.powf(beta + 0.5) * b * phase
            }
            SignalKind::Mix { alpha, coeffs } => {
                let values =
                    crate::specfun::laguerre_complex_sequence(alpha + 1.0, coeffs.len() - 1, 2.0 * t);
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, c) in coeffs.iter().enumerate() {
                    acc += c * eigenfunction_norm_constant(k, *alpha)? * values[k];
                }
                acc
            }
            SignalKind::Translated { x, s, inner } => {
                let inner_spec = SignalSpec {
                    kind: (**inner).clone(),
                };
                let e0 = inner_spec.power_exponent();
                let phase = (-Complex64::new(0.0, *x) * t).exp();
                s.powf(0.5 + e0) * inner_spec.smooth_part_c(s * t)? * phase
            }
            SignalKind::Samples { .. } => {
                return Err(Error::usage(
                    "sampled signals have no closed-form decomposition".to_string(),
                ))
            }
        })
    }

    /// Frequency-side value `fhat(t)`.
    pub fn fhat(&self, t: f64) -> Result<Complex64> {
        if t <= 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let e0 = self.power_exponent();
        let sigma = self.decay_rate();
        Ok(self.smooth_part(t)? * t.powf(e0) * (-sigma * t).exp())
    }

    /// `||f||_{H^2} = (int_0^infty |fhat|^2 dt)^{1/2}` by quadrature.
    pub fn norm(&self) -> Result<f64> {
        match &self.kind {
            SignalKind::Samples { exponent, triples } => {
                let grid = FrequencyGrid::build(*exponent, triples.len())?;
                check_sample_nodes(&grid, triples)?;
                // plain-dt weights: v_k e^{2 t_k} t_k^{-a}
                let total = pairwise_sum_by(0, triples.len(), &|i| {
                    let [t, re, im] = triples[i];
                    let plain = grid.weights()[i] * (2.0 * t).exp() * t.powf(-exponent);
                    plain * (re * re + im * im)
                });
                Ok(total.sqrt())
            }
            _ => {
                let e0 = self.power_exponent();
                let sigma = self.decay_rate();
                // |fhat|^2 = t^{2 e0} e^{-2 sigma t} |p|^2; substitute tau = sigma t
                let grid = FrequencyGrid::build(2.0 * e0, DEFAULT_FREQ_NODES)?;
                let scale = sigma.powf(-2.0 * e0 - 1.0);
                let mut values = Vec::with_capacity(grid.len());
                for &tau in grid.nodes() {
                    values.push(self.smooth_part(tau / sigma)?.norm_sqr());
                }
                let weights = grid.weights();
                let total =
                    pairwise_sum_by(0, values.len(), &|i| weights[i] * values[i]) * scale;
                Ok(total.sqrt())
            }
        }
    }

    /// Apply the unitary translation-dilation `pi_w`.
    pub fn translated(&self, w: HalfPlanePoint) -> Result<SignalSpec> {
        SignalSpec::new(SignalKind::Translated {
            x: w.x,
            s: w.s,
            inner: Box::new(self.kind.clone()),
        })
    }
}

fn validate_kind(kind: &SignalKind) -> Result<()> {
    match kind {
        SignalKind::Eigenfunction { alpha, .. } => {
            if !(alpha.is_finite() && *alpha > -1.0) {
                return Err(Error::domain(format!(
                    "eigenfunction requires alpha > -1, got {alpha}"
                )));
            }
        }
        SignalKind::Window { beta } => {
            if !(beta.is_finite() && *beta > 0.0) {
                return Err(Error::domain(format!("window requires beta > 0, got {beta}")));
            }
        }
        SignalKind::Extremizer { beta, center } => {
            if !(beta.is_finite() && *beta > 0.0) {
                return Err(Error::domain(format!(
                    "extremizer requires beta > 0, got {beta}"
                )));
            }
            HalfPlanePoint::new(center[0], center[1])?;
        }
        SignalKind::Mix { alpha, coeffs } => {
            if !(alpha.is_finite() && *alpha > -1.0) || coeffs.is_empty() {
                return Err(Error::domain(
                    "mix requires alpha > -1 and at least one coefficient".to_string(),
                ));
            }
        }
        SignalKind::Translated { x, s, inner } => {
            HalfPlanePoint::new(*x, *s)?;
            validate_kind(inner)?;
        }
        SignalKind::Samples { exponent, triples } => {
            if !(exponent.is_finite() && *exponent > -1.0) || triples.len() < 8 {
                return Err(Error::domain(
                    "samples require exponent > -1 and at least 8 nodes".to_string(),
                ));
            }
            if triples.iter().any(|t| t[0] <= 0.0) {
                return Err(Error::domain(
                    "sample frequencies must be positive".to_string(),
                ));
            }
        }
    }
    Ok(())
}

fn check_sample_nodes(grid: &FrequencyGrid, triples: &[[f64; 3]]) -> Result<()> {
    for (node, triple) in grid.nodes().iter().zip(triples) {
        if (node - triple[0]).abs() > 1e-9 * node.max(1.0) {
            return Err(Error::usage(format!(
                "sample frequency {} does not match the canonical grid node {node}",
                triple[0]
            )));
        }
    }
    Ok(())
}

/// Normalization `b_{n,alpha}` giving `psi_n^alpha` unit norm:
/// `b = 2^{(alpha+2)/2} sqrt(n! / Gamma(n + alpha + 2))`.
pub fn eigenfunction_norm_constant(n: usize, alpha: f64) -> Result<f64> {
    let ln = 0.5 * (alpha + 2.0) * std::f64::consts::LN_2
        + 0.5 * (gamma_ln(n as f64 + 1.0)? - gamma_ln(n as f64 + alpha + 2.0)?);
    Ok(ln.exp())
}

/// The `n`-th Laguerre eigenfunction of order `alpha`, unit `H^2` norm.
///
/// Under the transform chain it corresponds to the monomial basis element
/// `e_n` of the disc, up to one constant.
pub fn eigenfunction_psi(n: usize, alpha: f64) -> Result<SignalSpec> {
    SignalSpec::new(SignalKind::Eigenfunction { n, alpha })
}

/// The signal concentrating optimally on pseudohyperbolic discs centered at
/// `w`: `pi_w psi_0^{2 beta - 1}` with unit norm.
pub fn extremizer_signal(beta: f64, w: HalfPlanePoint) -> Result<SignalSpec> {
    SignalSpec::new(SignalKind::Extremizer {
        beta,
        center: [w.x, w.s],
    })
}

/// Flattened closed-form profile
/// `p(t) = amp e^{-i phase t} sum_k d_k L_k^{order}(2 arg_scale t)`.
///
/// Every closed-form kind (including nested translations) collapses to this
/// shape, so evaluators run one Laguerre sweep per point.
struct FlatProfile {
    order: f64,
    lag_coeffs: Vec<Complex64>,
    arg_scale: f64,
    phase: f64,
    amp: Complex64,
}

impl FlatProfile {
    fn from_kind(kind: &SignalKind) -> Result<Self> {
        Ok(match kind {
            SignalKind::Eigenfunction { n, alpha } => {
                let mut lag_coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
                lag_coeffs[*n] = Complex64::new(eigenfunction_norm_constant(*n, *alpha)?, 0.0);
                FlatProfile {
                    order: alpha + 1.0,
                    lag_coeffs,
                    arg_scale: 1.0,
                    phase: 0.0,
                    amp: Complex64::new(1.0, 0.0),
                }
            }
            SignalKind::Window { beta } => FlatProfile {
                order: 2.0 * beta,
                lag_coeffs: vec![Complex64::new(1.0, 0.0)],
                arg_scale: 1.0,
                phase: 0.0,
                amp: Complex64::new(1.0 / window_norm_constant(*beta)?, 0.0),
            },
            SignalKind::Extremizer { beta, center } => {
                let alpha = 2.0 * beta - 1.0;
                let b = eigenfunction_norm_constant(0, alpha)?;
                FlatProfile {
                    order: alpha + 1.0,
                    lag_coeffs: vec![Complex64::new(1.0, 0.0)],
                    arg_scale: 1.0,
                    phase: center[0],
                    amp: Complex64::new(center[1].powf(beta + 0.5) * b, 0.0),
                }
            }
            SignalKind::Mix { alpha, coeffs } => {
                let mut lag_coeffs = Vec::with_capacity(coeffs.len());
                for (k, c) in coeffs.iter().enumerate() {
                    lag_coeffs.push(c * eigenfunction_norm_constant(k, *alpha)?);
                }
                FlatProfile {
                    order: alpha + 1.0,
                    lag_coeffs,
                    arg_scale: 1.0,
                    phase: 0.0,
                    amp: Complex64::new(1.0, 0.0),
                }
            }
            SignalKind::Translated { x, s, inner } => {
                let base = FlatProfile::from_kind(inner)?;
                let e0 = SignalSpec {
                    kind: (**inner).clone(),
                }
                .power_exponent();
                FlatProfile {
                    order: base.order,
                    lag_coeffs: base.lag_coeffs,
                    arg_scale: s * base.arg_scale,
                    phase: x + s * base.phase,
                    amp: base.amp * s.powf(0.5 + e0),
                }
            }
            SignalKind::Samples { .. } => {
                return Err(Error::usage(
                    "sampled signals have no closed-form decomposition".to_string(),
                ))
            }
        })
    }

}

/// Laplace-type evaluator `J(z) = int_0^infty t^c fhat(t) e^{izt} dt`.
///
/// With `fhat = t^{e0} e^{-sigma t} p(t)` this is
/// `int t^c p(t) e^{-omega t} dt`, `omega = (sigma + s) - i x`. Rotating the
/// contour onto the ray `t = tau / omega` (legitimate: the integrand is
/// analytic and decays in the closed sector, `Re omega > 0`) gives
/// `omega^{-c-1} int_0^infty tau^c e^{-tau} p(tau/omega) dtau`, which a
/// generalized Gauss-Laguerre rule integrates exactly for polynomial `p` -
/// no oscillatory factor survives, so accuracy is uniform over the
/// half-plane. The phase factor inside `p` shifts `omega` instead, keeping
/// the integrand polynomial.
struct LaplaceEvaluator {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    sigma: f64,
    power: f64,
    profile: FlatProfile,
}

impl LaplaceEvaluator {
    fn new(signal: &SignalSpec, extra_power: f64, n_nodes: usize) -> Result<Self> {
        if !signal.is_closed_form() {
            return Err(Error::usage(
                "transforms of sampled signals are not supported; project them onto a closed-form family first"
                    .to_string(),
            ));
        }
        let e0 = signal.power_exponent();
        let c = extra_power + e0;
        if c <= -1.0 {
            return Err(Error::domain(format!(
                "transform power {c} must exceed -1"
            )));
        }
        let (nodes, weights) = crate::quadrature::gauss_laguerre(n_nodes, c)?;
        Ok(Self {
            nodes,
            weights,
            sigma: signal.decay_rate(),
            power: c,
            profile: FlatProfile::from_kind(&signal.kind)?,
        })
    }

    /// `J(z)` with `z = x + i s`, `s > 0`.
    fn eval(&self, z: HalfPlanePoint) -> Result<Complex64> {
        // the profile's phase e^{-i phase t} joins the exponential: the
        // effective decay is omega = (sigma + s) - i (x - phase), and the
        // remaining smooth factor is a plain polynomial
        let omega = Complex64::new(self.sigma + z.s, -(z.x - self.profile.phase));
        let k_max = self.profile.lag_coeffs.len() - 1;
        let mut acc = Complex64::new(0.0, 0.0);
        for (tau, v) in self.nodes.iter().zip(&self.weights) {
            let lag = crate::specfun::laguerre_complex_sequence(
                self.profile.order,
                k_max,
                2.0 * self.profile.arg_scale * tau / omega,
            );
            let mut p = Complex64::new(0.0, 0.0);
            for (d, l) in self.profile.lag_coeffs.iter().zip(&lag) {
                p += d * l;
            }
            acc += v * p;
        }
        // principal branch; Re(omega) > 0 keeps it continuous
        let scale = omega.powc(Complex64::new(-self.power - 1.0, 0.0));
        Ok(self.profile.amp * acc * scale)
    }
}

/// Evaluator for the wavelet transform with window `psi_beta`:
/// `W f(x, s) = s^{beta + 1/2} c_beta^{-1} int t^beta fhat(t) e^{izt} dt`.
pub struct WaveletTransform {
    window: WindowPsi,
    inner: LaplaceEvaluator,
}

impl WaveletTransform {
    pub fn new(signal: &SignalSpec, beta: f64, n_nodes: usize) -> Result<Self> {
        let window = make_window(beta)?;
        let inner = LaplaceEvaluator::new(signal, beta, n_nodes)?;
        Ok(Self { window, inner })
    }

    pub fn window(&self) -> WindowPsi {
        self.window
    }

    pub fn eval(&self, z: HalfPlanePoint) -> Result<Complex64> {
        let j = self.inner.eval(z)?;
        Ok(z.s.powf(self.window.beta + 0.5) / self.window.c_beta * j)
    }
}

/// One-off wavelet transform value at `z`.
pub fn wavelet_transform(f: &SignalSpec, beta: f64, z: HalfPlanePoint) -> Result<Complex64> {
    WaveletTransform::new(f, beta, DEFAULT_FREQ_NODES)?.eval(z)
}

/// Evaluator for the Bergman transform of order `alpha`:
/// `B_alpha f(z) = c_alpha int t^{(alpha+1)/2} fhat(t) e^{izt} dt` with
/// `c_alpha = 1 / (sqrt(2 pi) c_beta)`, `beta = (alpha+1)/2`. This constant
/// makes `B_alpha` unitary from `H^2` onto `A_alpha(C+)` with plain Lebesgue
/// `dx ds` (measured by the calibration routine), and
/// `W f(x, s) = sqrt(2 pi) s^{alpha/2 + 1} B_alpha f(z)`.
pub struct BergmanTransform {
    alpha: f64,
    constant: f64,
    inner: LaplaceEvaluator,
}

impl BergmanTransform {
    pub fn new(signal: &SignalSpec, alpha: f64, n_nodes: usize) -> Result<Self> {
        if !(alpha.is_finite() && alpha > -1.0) {
            return Err(Error::domain(format!(
                "Bergman transform requires alpha > -1, got {alpha}"
            )));
        }
        let beta = (alpha + 1.0) / 2.0;
        let c_beta = window_norm_constant(beta)?;
        let inner = LaplaceEvaluator::new(signal, beta, n_nodes)?;
        Ok(Self {
            alpha,
            constant: 1.0 / ((2.0 * std::f64::consts::PI).sqrt() * c_beta),
            inner,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn eval(&self, z: HalfPlanePoint) -> Result<Complex64> {
        Ok(self.constant * self.inner.eval(z)?)
    }

    /// Evaluate at a raw complex point (must have positive imaginary part).
    pub fn eval_c(&self, z: Complex64) -> Result<Complex64> {
        self.eval(HalfPlanePoint::new(z.re, z.im)?)
    }
}

/// One-off Bergman transform evaluator.
pub fn bergman_transform(f: &SignalSpec, alpha: f64) -> Result<BergmanTransform> {
    BergmanTransform::new(f, alpha, DEFAULT_FREQ_NODES)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::gauss_legendre_on;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn random_mix(rng: &mut ChaCha8Rng, alpha: f64, terms: usize) -> SignalSpec {
        let coeffs: Vec<Complex64> = (0..terms)
            .map(|k| {
                let decay = 1.0 / (k as f64 + 1.0);
                Complex64::new(
                    rng.gen_range(-1.0..1.0) * decay,
                    rng.gen_range(-1.0..1.0) * decay,
                )
            })
            .collect();
        SignalSpec::new(SignalKind::Mix { alpha, coeffs }).unwrap()
    }

    #[test]
    fn window_profile_and_normalization() {
        let w = make_window(0.5).unwrap();
        // c_{1/2} = 1/sqrt(2), so fhat(t) = sqrt(2) t^{1/2} e^{-t}
        for &t in &[0.1, 0.5, 2.0] {
            assert_abs_diff_eq!(
                w.fhat(t),
                2.0f64.sqrt() * t.sqrt() * (-t).exp(),
                epsilon = 1e-14
            );
        }
        assert_abs_diff_eq!(w.fhat(0.0), 0.0, epsilon = 0.0);

        // int |fhat|^2 dt/t = 1 for several orders
        for &beta in &[0.5, 1.0, 2.0] {
            let w = make_window(beta).unwrap();
            let grid = FrequencyGrid::build(2.0 * beta - 1.0, 64).unwrap();
            let total = grid.integrate(|_| 1.0) / (w.c_beta * w.c_beta);
            assert_abs_diff_eq!(total, 1.0, epsilon = 1e-10);
        }
        assert!(make_window(0.0).is_err());
    }

    #[test]
    fn signal_norms() {
        // the window of order 1 has H^2 norm exactly beta = 1
        let f = SignalSpec::new(SignalKind::Window { beta: 1.0 }).unwrap();
        assert_abs_diff_eq!(f.norm().unwrap(), 1.0, epsilon = 1e-12);

        // in general ||psi_beta||^2 = beta
        for &beta in &[0.5, 1.7, 3.0] {
            let f = SignalSpec::new(SignalKind::Window { beta }).unwrap();
            assert_abs_diff_eq!(f.norm().unwrap(), beta.sqrt(), epsilon = 1e-11);
        }

        // scaling: ||c f|| = |c| ||f||
        let mix = SignalSpec::new(SignalKind::Mix {
            alpha: 0.0,
            coeffs: vec![Complex64::new(0.6, 0.0), Complex64::new(0.0, -0.8)],
        })
        .unwrap();
        assert_abs_diff_eq!(mix.norm().unwrap(), 1.0, epsilon = 1e-12);
        let scaled = SignalSpec::new(SignalKind::Mix {
            alpha: 0.0,
            coeffs: vec![Complex64::new(1.2, 0.0), Complex64::new(0.0, -1.6)],
        })
        .unwrap();
        assert_abs_diff_eq!(scaled.norm().unwrap(), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn eigenfunctions_unit_norm_and_orthogonal() {
        for &alpha in &[-0.5, 0.0, 1.0, 2.5] {
            let grid = FrequencyGrid::build(alpha + 1.0, 64).unwrap();
            for n in 0..=8usize {
                let f = eigenfunction_psi(n, alpha).unwrap();
                assert_abs_diff_eq!(f.norm().unwrap(), 1.0, epsilon = 1e-11);
                for m in 0..=8usize {
                    let g = eigenfunction_psi(m, alpha).unwrap();
                    // <fhat, ghat>_{L^2(dt)} via the alpha+1 weight
                    let ip = grid.integrate(|t| {
                        f.smooth_part(t).unwrap().re * g.smooth_part(t).unwrap().re
                    });
                    let expect = if n == m { 1.0 } else { 0.0 };
                    assert!(
                        (ip - expect).abs() < 1e-8,
                        "alpha={alpha} n={n} m={m}: <f,g> = {ip}"
                    );
                }
            }
        }
    }

    #[test]
    fn eigenfunction_zero_is_window_profile() {
        // psi_0^alpha has frequency profile t^{(alpha+1)/2} e^{-t} = the
        // window of order beta = (alpha+1)/2 up to normalization
        let alpha = 0.4;
        let f = eigenfunction_psi(0, alpha).unwrap();
        let w = make_window((alpha + 1.0) / 2.0).unwrap();
        let mut ratios = Vec::new();
        for &t in &[0.2, 0.9, 2.7, 6.0] {
            ratios.push(f.fhat(t).unwrap().re / w.fhat(t));
        }
        for r in &ratios {
            assert_abs_diff_eq!(*r, ratios[0], epsilon = 1e-12 * ratios[0].abs());
        }
    }

    #[test]
    fn extremizer_at_i_is_ground_eigenfunction() {
        let beta = 0.8;
        let ext = extremizer_signal(beta, HalfPlanePoint::new(0.0, 1.0).unwrap()).unwrap();
        let psi0 = eigenfunction_psi(0, 2.0 * beta - 1.0).unwrap();
        for &t in &[0.3, 1.1, 4.2] {
            let a = ext.fhat(t).unwrap();
            let b = psi0.fhat(t).unwrap();
            assert!((a - b).norm() < 1e-13, "t={t}: {a} vs {b}");
        }
    }

    #[test]
    fn extremizer_unit_norm_anywhere() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..10 {
            let w = HalfPlanePoint::new(rng.gen_range(-3.0..3.0), rng.gen_range(0.2..4.0)).unwrap();
            let ext = extremizer_signal(1.25, w).unwrap();
            assert_abs_diff_eq!(ext.norm().unwrap(), 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn translation_preserves_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let f = random_mix(&mut rng, 0.5, 6);
        let base = f.norm().unwrap();
        for _ in 0..5 {
            let w = HalfPlanePoint::new(rng.gen_range(-2.0..2.0), rng.gen_range(0.3..3.0)).unwrap();
            let moved = f.translated(w).unwrap();
            assert_abs_diff_eq!(moved.norm().unwrap(), base, epsilon = 1e-10 * base);
        }
    }

    #[test]
    fn wavelet_matches_bergman_relation() {
        // W f(x,s) = sqrt(2 pi) s^{alpha/2 + 1} B_alpha f(z), alpha = 2 beta - 1
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let beta = 1.0;
        let alpha = 2.0 * beta - 1.0;
        let f = random_mix(&mut rng, alpha, 5);
        let wt = WaveletTransform::new(&f, beta, 128).unwrap();
        let bt = BergmanTransform::new(&f, alpha, 128).unwrap();
        for _ in 0..10 {
            let z = HalfPlanePoint::new(rng.gen_range(-3.0..3.0), rng.gen_range(0.2..4.0)).unwrap();
            let w = wt.eval(z).unwrap();
            let b = bt.eval(z).unwrap();
            let relation = (2.0 * PI).sqrt() * z.s.powf(alpha / 2.0 + 1.0) * b;
            assert!(
                (w - relation).norm() < 1e-12 * w.norm().max(1e-12),
                "z=({}, {}): W={w}, via B={relation}",
                z.x,
                z.s
            );
        }
    }

    #[test]
    fn covariance_under_affine_action() {
        // W(pi_w f)(z) = W f(tau_w(z))
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        let beta = 0.75;
        for trial in 0..100 {
            let f = random_mix(&mut rng, 2.0 * beta - 1.0, 4);
            let w = HalfPlanePoint::new(rng.gen_range(-2.0..2.0), rng.gen_range(0.4..2.5)).unwrap();
            let z = HalfPlanePoint::new(rng.gen_range(-2.0..2.0), rng.gen_range(0.2..3.0)).unwrap();
            let moved = f.translated(w).unwrap();
            let lhs = wavelet_transform(&moved, beta, z).unwrap();
            let rhs = wavelet_transform(&f, beta, crate::geometry::tau_action(w, z)).unwrap();
            assert!(
                (lhs - rhs).norm() < 1e-8 * rhs.norm().max(1e-8),
                "trial {trial}: lhs {lhs}, rhs {rhs}"
            );
        }
    }

    #[test]
    fn time_domain_oracle_agrees() {
        // Direct Eq-(1)-style check: W f(x,s) = s^{-1/2} int f(t)
        // conj(psi_beta((t-x)/s)) dt with both factors in closed form:
        // psi_gamma(u) = (2 pi)^{-1/2} c_gamma^{-1} Gamma(gamma+1)
        //               (1 - i u)^{-gamma-1}.
        let gamma = 2.0;
        let beta = 1.0;
        let f = SignalSpec::new(SignalKind::Window { beta: gamma }).unwrap();

        let time_window = |order: f64, u: f64| -> Complex64 {
            let c = window_norm_constant(order).unwrap();
            let front = gamma_ln(order + 1.0).unwrap().exp() / ((2.0 * PI).sqrt() * c);
            front * Complex64::new(1.0, -u).powc(Complex64::new(-order - 1.0, 0.0))
        };

        // composite Gauss-Legendre over t in [-T, T]; panel width below the
        // pole distance s so each panel converges fast
        let oracle = |x: f64, s: f64| -> Complex64 {
            let t_max = 600.0;
            let panels = 1500;
            let mut acc = Complex64::new(0.0, 0.0);
            let width = 2.0 * t_max / panels as f64;
            for p in 0..panels {
                let lo = -t_max + p as f64 * width;
                let (nodes, weights) = gauss_legendre_on(10, lo, lo + width).unwrap();
                for (t, w) in nodes.iter().zip(&weights) {
                    let ft = time_window(gamma, *t);
                    let window_val = time_window(beta, (t - x) / s).conj();
                    acc += w * ft * window_val;
                }
            }
            acc / s.sqrt()
        };

        for &(x, s) in &[(0.0, 1.0), (0.7, 0.8), (-1.2, 1.6), (0.3, 0.5)] {
            let direct = wavelet_transform(&f, beta, HalfPlanePoint::new(x, s).unwrap()).unwrap();
            let reference = oracle(x, s);
            assert!(
                (direct - reference).norm() < 1e-7 * reference.norm().max(1e-6),
                "(x,s)=({x},{s}): frequency route {direct}, time route {reference}"
            );
        }
    }

    #[test]
    fn bergman_transform_of_ground_state_is_half_plane_kernel() {
        // B_alpha psi_0^alpha is a multiple of (z + i)^{-alpha-2}
        for &alpha in &[0.0, 1.0] {
            let f = eigenfunction_psi(0, alpha).unwrap();
            let bt = bergman_transform(&f, alpha).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(35);
            let mut ratios = Vec::new();
            for _ in 0..20 {
                let z = HalfPlanePoint::new(rng.gen_range(-3.0..3.0), rng.gen_range(0.2..4.0))
                    .unwrap();
                let val = bt.eval(z).unwrap();
                let model = (z.to_complex() + Complex64::new(0.0, 1.0))
                    .powc(Complex64::new(-alpha - 2.0, 0.0));
                ratios.push(val / model);
            }
            let mean = ratios.iter().sum::<Complex64>() / ratios.len() as f64;
            for r in &ratios {
                assert!(
                    (r - mean).norm() < 1e-6 * mean.norm(),
                    "alpha={alpha}: ratio {r} vs mean {mean}"
                );
            }
        }
    }

    #[test]
    fn bergman_transform_linearity_and_analyticity() {
        let alpha = 0.5;
        let f = eigenfunction_psi(1, alpha).unwrap();
        let g = eigenfunction_psi(3, alpha).unwrap();
        let sum = SignalSpec::new(SignalKind::Mix {
            alpha,
            coeffs: vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
            ],
        })
        .unwrap();
        let bf = bergman_transform(&f, alpha).unwrap();
        let bg = bergman_transform(&g, alpha).unwrap();
        let bsum = bergman_transform(&sum, alpha).unwrap();
        let z = HalfPlanePoint::new(0.4, 1.2).unwrap();
        let lhs = bsum.eval(z).unwrap();
        let rhs = bf.eval(z).unwrap() + bg.eval(z).unwrap();
        assert!((lhs - rhs).norm() < 1e-12);

        // Cauchy-Riemann residual by central differences
        let h = 1e-5;
        let at = |x: f64, s: f64| {
            bsum.eval(HalfPlanePoint::new(x, s).unwrap()).unwrap()
        };
        for &(x, s) in &[(0.0, 1.0), (1.0, 0.7), (-0.8, 2.2)] {
            let d_dx = (at(x + h, s) - at(x - h, s)) / (2.0 * h);
            let d_ds = (at(x, s + h) - at(x, s - h)) / (2.0 * h);
            let cr = d_dx + Complex64::new(0.0, 1.0) * d_ds * Complex64::new(0.0, 1.0) * (-1.0);
            // f analytic means d/dx f = -i d/ds f... i.e. d_dx - (-i d_ds) = 0
            let residual = (d_dx - Complex64::new(0.0, -1.0) * d_ds).norm();
            let _ = cr;
            assert!(
                residual < 1e-6 * d_dx.norm().max(1.0),
                "CR residual {residual} at ({x}, {s})"
            );
        }
    }

    #[test]
    fn ridge_location_smoke_test() {
        // fhat of the extremizer at (0, y) peaks near t = beta/y; the
        // transform magnitude along x = 0 should peak near s = y
        let beta = 1.0;
        let y = 1.7;
        let f = extremizer_signal(beta, HalfPlanePoint::new(0.0, y).unwrap()).unwrap();
        let wt = WaveletTransform::new(&f, beta, 128).unwrap();
        let mut best = (0.0f64, 0.0f64);
        for k in 0..200 {
            let s = 0.1 * 1.04f64.powi(k);
            let v = wt.eval(HalfPlanePoint::new(0.0, s).unwrap()).unwrap().norm();
            if v > best.1 {
                best = (s, v);
            }
        }
        assert!(
            (best.0 / y).ln().abs() < 2.0f64.ln(),
            "ridge at s = {}, expected near {y}",
            best.0
        );
    }

    #[test]
    fn signal_spec_json_round_trip() {
        let f = SignalSpec::new(SignalKind::Translated {
            x: 0.3,
            s: 1.2,
            inner: Box::new(SignalKind::Eigenfunction { n: 2, alpha: 0.5 }),
        })
        .unwrap();
        let json = serde_json::to_string(&f).unwrap();
        assert!(json.contains("\"kind\":\"translated\""));
        let back: SignalSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(json, serde_json::to_string(&back).unwrap());

        let samples = SignalSpec::new(SignalKind::Samples {
            exponent: 1.0,
            triples: FrequencyGrid::build(1.0, 16)
                .unwrap()
                .nodes()
                .iter()
                .map(|&t| [t, (-t).exp(), 0.0])
                .collect(),
        })
        .unwrap();
        let json = serde_json::to_string(&samples).unwrap();
        let back: SignalSpec = serde_json::from_str(&json).unwrap();
        assert!(back.norm().unwrap() > 0.0);
    }

    #[test]
    fn sampled_signals_reject_transforms() {
        let samples = SignalSpec::new(SignalKind::Samples {
            exponent: 0.0,
            triples: FrequencyGrid::build(0.0, 8)
                .unwrap()
                .nodes()
                .iter()
                .map(|&t| [t, 1.0, 0.0])
                .collect(),
        })
        .unwrap();
        assert!(wavelet_transform(&samples, 1.0, HalfPlanePoint::new(0.0, 1.0).unwrap()).is_err());
    }

    #[test]
    fn hardy_support_is_positive_axis() {
        let f = eigenfunction_psi(3, 1.0).unwrap();
        assert_eq!(f.fhat(-1.0).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(f.fhat(0.0).unwrap(), Complex64::new(0.0, 0.0));
    }
}
