//! The two conformal models and their hyperbolic structure.
//!
//! The upper half-plane carries the measure `d nu = dx ds / s^2`, the unit
//! disc carries `d mu = (1 - |z|^2)^{-2} dz`; the Cayley map identifies the
//! two with `nu(Delta) = 4 mu(image)`. Pseudohyperbolic balls are Euclidean
//! discs in both models, with hyperbolic and Euclidean centers differing in
//! general; this module computes the exact Euclidean data from Moebius images
//! of centered discs rather than approximating masks.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{DiskGrid, Measure};

/// Scale floor below which a half-plane domain is declared to have divergent
/// hyperbolic measure.
pub const MIN_SCALE_FLOOR: f64 = 1e-6;

/// Cap on reported hyperbolic measures; anything above is divergent.
pub const MEASURE_CAP: f64 = 1e12;

/// Conformal model tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    Disc,
    HalfPlane,
}

/// Point `x + i s` of the upper half-plane, `s > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfPlanePoint {
    pub x: f64,
    pub s: f64,
}

impl HalfPlanePoint {
    pub fn new(x: f64, s: f64) -> Result<Self> {
        if !(x.is_finite() && s.is_finite() && s > 0.0) {
            return Err(Error::domain(format!(
                "half-plane point requires finite x and s > 0, got ({x}, {s})"
            )));
        }
        Ok(Self { x, s })
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.s)
    }
}

/// Point of the open unit disc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiskPoint {
    pub re: f64,
    pub im: f64,
}

impl DiskPoint {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !(re.is_finite() && im.is_finite()) || re * re + im * im >= 1.0 {
            return Err(Error::domain(format!(
                "disc point requires |w| < 1, got ({re}, {im})"
            )));
        }
        Ok(Self { re, im })
    }

    pub fn from_complex(w: Complex64) -> Result<Self> {
        Self::new(w.re, w.im)
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// A point in either model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Point {
    Disc(DiskPoint),
    HalfPlane(HalfPlanePoint),
}

impl Point {
    pub fn model(&self) -> Model {
        match self {
            Point::Disc(_) => Model::Disc,
            Point::HalfPlane(_) => Model::HalfPlane,
        }
    }
}

/// Cayley map `z -> (z - i)/(z + i)` on raw complex values.
pub fn cayley_disk_c(z: Complex64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    (z - i) / (z + i)
}

/// Inverse Cayley map `w -> (w + 1)/(i (w - 1))` on raw complex values.
pub fn cayley_halfplane_c(w: Complex64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    (w + 1.0) / (i * (w - 1.0))
}

/// Map a half-plane point into the disc.
pub fn cayley_to_disk(z: HalfPlanePoint) -> DiskPoint {
    let w = cayley_disk_c(z.to_complex());
    // s > 0 guarantees an interior image; clamp roundoff at the boundary
    DiskPoint::from_complex(w).unwrap_or(DiskPoint {
        re: w.re / (w.norm() + 1e-15),
        im: w.im / (w.norm() + 1e-15),
    })
}

/// Map a disc point into the half-plane.
pub fn cayley_to_halfplane(w: DiskPoint) -> Result<HalfPlanePoint> {
    let z = cayley_halfplane_c(w.to_complex());
    HalfPlanePoint::new(z.re, z.im)
}

/// Disc automorphism `phi_a(z) = (z + a)/(1 + conj(a) z)`, `phi_a(0) = a`.
pub fn mobius_disc(a: Complex64, z: Complex64) -> Complex64 {
    (z + a) / (Complex64::new(1.0, 0.0) + a.conj() * z)
}

/// Pseudohyperbolic distance between two points of the same model.
pub fn pseudohyperbolic_distance(a: &Point, b: &Point) -> Result<f64> {
    match (a, b) {
        (Point::Disc(p), Point::Disc(q)) => {
            let (p, q) = (p.to_complex(), q.to_complex());
            Ok(((p - q) / (Complex64::new(1.0, 0.0) - q.conj() * p)).norm())
        }
        (Point::HalfPlane(p), Point::HalfPlane(q)) => {
            let (p, q) = (p.to_complex(), q.to_complex());
            Ok(((p - q) / (p - q.conj())).norm())
        }
        _ => Err(Error::usage(
            "pseudohyperbolic distance requires both points in the same model".to_string(),
        )),
    }
}

/// The affine group action `tau_w(z) = ((x - x1)/s1, s/s1)` for
/// `w = x1 + i s1`; an isometry of the half-plane preserving `nu`.
pub fn tau_action(w: HalfPlanePoint, z: HalfPlanePoint) -> HalfPlanePoint {
    HalfPlanePoint {
        x: (z.x - w.x) / w.s,
        s: z.s / w.s,
    }
}

/// A pseudohyperbolic disc with its derived Euclidean description.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PseudoHyperbolicDisc {
    pub model: Model,
    /// Hyperbolic center, `[re, im]` (disc) or `[x, s]` (half-plane).
    pub hyperbolic_center: [f64; 2],
    /// Hyperbolic measure: `mu` in the disc model, `nu` in the half-plane.
    pub measure: f64,
    /// Pseudohyperbolic radius of the ball.
    pub pseudo_radius: f64,
    pub euclidean_center: [f64; 2],
    pub euclidean_radius: f64,
}

impl PseudoHyperbolicDisc {
    pub fn euclidean_center_c(&self) -> Complex64 {
        Complex64::new(self.euclidean_center[0], self.euclidean_center[1])
    }

    pub fn contains(&self, p: Complex64) -> bool {
        (p - self.euclidean_center_c()).norm() < self.euclidean_radius
    }
}

/// Pseudohyperbolic disc of prescribed hyperbolic measure about a center.
///
/// In the disc model the centered ball of measure `s` has
/// `r^2 = s / (pi + s)`; off-center balls are its Moebius images with
/// Euclidean center `(1 - r^2) w / (1 - r^2 |w|^2)` and radius
/// `r (1 - |w|^2) / (1 - r^2 |w|^2)`. In the half-plane the ball about
/// `x0 + i s0` of measure `nu = s` has pseudo-radius `r^2 = s/(4 pi + s)`,
/// Euclidean center `x0 + i s0 (1 + r^2)/(1 - r^2)` and radius
/// `2 s0 r / (1 - r^2)`.
pub fn disc_from_measure(center: &Point, s: f64) -> Result<PseudoHyperbolicDisc> {
    if !(s.is_finite() && s > 0.0) {
        return Err(Error::domain(format!(
            "pseudohyperbolic disc requires measure > 0, got {s}"
        )));
    }
    match center {
        Point::Disc(w) => {
            let r2 = s / (std::f64::consts::PI + s);
            let r = r2.sqrt();
            let wc = w.to_complex();
            let w2 = wc.norm_sqr();
            let denom = 1.0 - r2 * w2;
            let c = wc * ((1.0 - r2) / denom);
            let radius = r * (1.0 - w2) / denom;
            Ok(PseudoHyperbolicDisc {
                model: Model::Disc,
                hyperbolic_center: [w.re, w.im],
                measure: s,
                pseudo_radius: r,
                euclidean_center: [c.re, c.im],
                euclidean_radius: radius,
            })
        }
        Point::HalfPlane(z) => {
            let r2 = s / (4.0 * std::f64::consts::PI + s);
            let r = r2.sqrt();
            let center_s = z.s * (1.0 + r2) / (1.0 - r2);
            let radius = 2.0 * z.s * r / (1.0 - r2);
            Ok(PseudoHyperbolicDisc {
                model: Model::HalfPlane,
                hyperbolic_center: [z.x, z.s],
                measure: s,
                pseudo_radius: r,
                euclidean_center: [z.x, center_s],
                euclidean_radius: radius,
            })
        }
    }
}

/// Parametric or mask description of a measurable subset.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Shape {
    /// `|z| < radius` (disc model).
    CenteredDisc { radius: f64 },
    /// Pseudohyperbolic ball of hyperbolic measure `measure` about `center`.
    PseudoDisc { center: [f64; 2], measure: f64 },
    /// `r_inner < |z| < r_outer` (disc model).
    Annulus { r_inner: f64, r_outer: f64 },
    /// `radius < |z| < 1`: the complement of a centered disc (disc model).
    BoundaryComplement { radius: f64 },
    /// `[x0, x1] x [s0, s1]` (half-plane model).
    Rectangle { x: [f64; 2], s: [f64; 2] },
    /// Disjoint union of parts.
    Union { parts: Vec<Shape> },
    /// Per-cell indicator on a `[n_r, n_theta]` disc grid.
    Mask { grid: [usize; 2], cells: Vec<bool> },
}

/// A measurable subset of one of the two models.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DomainSpec {
    pub model: Model,
    pub shape: Shape,
}

impl DomainSpec {
    pub fn new(model: Model, shape: Shape) -> Result<Self> {
        let dom = Self { model, shape };
        dom.validate()?;
        Ok(dom)
    }

    pub fn validate(&self) -> Result<()> {
        validate_shape(&self.shape, self.model)
    }

    /// Membership test for non-mask shapes. For the disc model `p` is the
    /// point itself; for the half-plane it is `x + i s`.
    pub fn contains(&self, p: Complex64) -> Result<bool> {
        shape_contains(&self.shape, self.model, p)
    }

    /// Build the per-cell indicator of this domain on a grid (disc model).
    pub fn mask_on(&self, grid: &DiskGrid) -> Result<Vec<bool>> {
        if self.model != Model::Disc {
            return Err(Error::usage(
                "masks are built in the disc model; map the domain first".to_string(),
            ));
        }
        if let Shape::Mask { grid: dims, cells } = &self.shape {
            if dims[0] != grid.radial_count() || dims[1] != grid.angular_count() {
                return Err(Error::usage(format!(
                    "mask grid {:?} does not match target grid [{}, {}]",
                    dims,
                    grid.radial_count(),
                    grid.angular_count()
                )));
            }
            return Ok(cells.clone());
        }
        let mut mask = Vec::with_capacity(grid.len());
        for &z in grid.nodes() {
            mask.push(shape_contains(&self.shape, Model::Disc, z)?);
        }
        Ok(mask)
    }

    /// Hyperbolic measure (`mu` or `nu` according to the model); closed form
    /// for parametric shapes, cell sums for masks.
    pub fn hyperbolic_measure(&self, grid: &DiskGrid) -> Result<f64> {
        let m = hyperbolic_measure_shape(&self.shape, self.model, grid)?;
        if !m.is_finite() || m > MEASURE_CAP {
            return Err(Error::DivergentMeasure(format!(
                "measure {m:.3e} exceeds cap {MEASURE_CAP:.1e}"
            )));
        }
        Ok(m)
    }

    /// Planar Lebesgue measure of the domain.
    pub fn lebesgue_measure(&self, grid: &DiskGrid) -> Result<f64> {
        lebesgue_measure_shape(&self.shape, self.model, grid)
    }

    /// Reflect a half-plane domain through `x -> -x`.
    pub fn reflect(&self) -> Result<DomainSpec> {
        if self.model != Model::HalfPlane {
            return Err(Error::usage(
                "reflect applies to half-plane domains".to_string(),
            ));
        }
        Ok(DomainSpec {
            model: Model::HalfPlane,
            shape: reflect_shape(&self.shape),
        })
    }

    /// Apply the affine action `tau_w` to a half-plane domain.
    pub fn tau_transform(&self, w: HalfPlanePoint) -> Result<DomainSpec> {
        if self.model != Model::HalfPlane {
            return Err(Error::usage("tau acts on half-plane domains".to_string()));
        }
        Ok(DomainSpec {
            model: Model::HalfPlane,
            shape: tau_shape(&self.shape, w)?,
        })
    }

    /// Map a half-plane domain to the disc model through the Cayley map.
    /// Pseudohyperbolic discs and unions map exactly; rectangles become grid
    /// masks through the inverse map.
    pub fn to_disc_model(&self, grid: &DiskGrid) -> Result<DomainSpec> {
        if self.model != Model::HalfPlane {
            return Err(Error::usage(
                "to_disc_model applies to half-plane domains".to_string(),
            ));
        }
        match map_shape_to_disc(&self.shape) {
            Some(shape) => Ok(DomainSpec {
                model: Model::Disc,
                shape,
            }),
            None => {
                // fall back to a mask through the inverse Cayley map
                let mut cells = Vec::with_capacity(grid.len());
                for &wnode in grid.nodes() {
                    let z = cayley_halfplane_c(wnode);
                    cells.push(if z.im > 0.0 {
                        shape_contains(&self.shape, Model::HalfPlane, z)?
                    } else {
                        false
                    });
                }
                Ok(DomainSpec {
                    model: Model::Disc,
                    shape: Shape::Mask {
                        grid: [grid.radial_count(), grid.angular_count()],
                        cells,
                    },
                })
            }
        }
    }
}

fn validate_shape(shape: &Shape, model: Model) -> Result<()> {
    match shape {
        Shape::CenteredDisc { radius } => {
            if model != Model::Disc || !(*radius > 0.0 && *radius < 1.0) {
                return Err(Error::usage(format!(
                    "centered disc requires disc model and radius in (0,1), got {radius}"
                )));
            }
        }
        Shape::PseudoDisc { center, measure } => {
            if *measure <= 0.0 {
                return Err(Error::usage(
                    "pseudo-disc requires positive measure".to_string(),
                ));
            }
            match model {
                Model::Disc => {
                    DiskPoint::new(center[0], center[1])?;
                }
                Model::HalfPlane => {
                    HalfPlanePoint::new(center[0], center[1])?;
                }
            }
        }
        Shape::Annulus { r_inner, r_outer } => {
            if model != Model::Disc || !(*r_inner >= 0.0 && r_inner < r_outer && *r_outer < 1.0) {
                return Err(Error::usage(format!(
                    "annulus requires disc model and 0 <= r_inner < r_outer < 1, got ({r_inner}, {r_outer})"
                )));
            }
        }
        Shape::BoundaryComplement { radius } => {
            if model != Model::Disc || !(*radius > 0.0 && *radius < 1.0) {
                return Err(Error::usage(format!(
                    "boundary complement requires disc model and radius in (0,1), got {radius}"
                )));
            }
        }
        Shape::Rectangle { x, s } => {
            if model != Model::HalfPlane || !(x[0] < x[1] && 0.0 < s[0] && s[0] < s[1]) {
                return Err(Error::usage(format!(
                    "rectangle requires half-plane model and ordered bounds, got x={x:?}, s={s:?}"
                )));
            }
        }
        Shape::Union { parts } => {
            if parts.is_empty() {
                return Err(Error::usage("union requires at least one part".to_string()));
            }
            for p in parts {
                validate_shape(p, model)?;
            }
        }
        Shape::Mask { grid, cells } => {
            if model != Model::Disc || cells.len() != grid[0] * grid[1] {
                return Err(Error::usage(format!(
                    "mask requires disc model and {}x{} cells, got {}",
                    grid[0],
                    grid[1],
                    cells.len()
                )));
            }
        }
    }
    Ok(())
}

fn shape_contains(shape: &Shape, model: Model, p: Complex64) -> Result<bool> {
    Ok(match shape {
        Shape::CenteredDisc { radius } => p.norm() < *radius,
        Shape::PseudoDisc { center, measure } => {
            let center_point = match model {
                Model::Disc => Point::Disc(DiskPoint::new(center[0], center[1])?),
                Model::HalfPlane => Point::HalfPlane(HalfPlanePoint::new(center[0], center[1])?),
            };
            disc_from_measure(&center_point, *measure)?.contains(p)
        }
        Shape::Annulus { r_inner, r_outer } => {
            let r = p.norm();
            *r_inner < r && r < *r_outer
        }
        Shape::BoundaryComplement { radius } => p.norm() > *radius,
        Shape::Rectangle { x, s } => x[0] <= p.re && p.re <= x[1] && s[0] <= p.im && p.im <= s[1],
        Shape::Union { parts } => {
            for part in parts {
                if shape_contains(part, model, p)? {
                    return Ok(true);
                }
            }
            false
        }
        Shape::Mask { .. } => {
            return Err(Error::usage(
                "mask membership requires the grid; use mask_on".to_string(),
            ))
        }
    })
}

/// `mu(B_r) = pi (1/(1 - r^2) - 1)` for a centered disc of the disc model.
pub fn centered_disc_hyperbolic_measure(radius: f64) -> f64 {
    let r2 = radius * radius;
    std::f64::consts::PI * (1.0 / (1.0 - r2) - 1.0)
}

fn hyperbolic_measure_shape(shape: &Shape, model: Model, grid: &DiskGrid) -> Result<f64> {
    match shape {
        Shape::CenteredDisc { radius } => Ok(centered_disc_hyperbolic_measure(*radius)),
        Shape::PseudoDisc { measure, .. } => Ok(*measure),
        Shape::Annulus { r_inner, r_outer } => Ok(centered_disc_hyperbolic_measure(*r_outer)
            - centered_disc_hyperbolic_measure(*r_inner)),
        Shape::BoundaryComplement { radius } => Err(Error::DivergentMeasure(format!(
            "complement of |z| < {radius} reaches the boundary circle"
        ))),
        Shape::Rectangle { x, s } => {
            if s[0] < MIN_SCALE_FLOOR {
                return Err(Error::DivergentMeasure(format!(
                    "rectangle scale floor {} is below {MIN_SCALE_FLOOR:e}",
                    s[0]
                )));
            }
            Ok((x[1] - x[0]) * (1.0 / s[0] - 1.0 / s[1]))
        }
        Shape::Union { parts } => {
            let mut total = 0.0;
            for p in parts {
                total += hyperbolic_measure_shape(p, model, grid)?;
            }
            Ok(total)
        }
        Shape::Mask { grid: dims, cells } => {
            if dims[0] != grid.radial_count() || dims[1] != grid.angular_count() {
                return Err(Error::usage("mask grid mismatch".to_string()));
            }
            grid.masked_measure(cells, Measure::Hyperbolic)
        }
    }
}

fn lebesgue_measure_shape(shape: &Shape, model: Model, grid: &DiskGrid) -> Result<f64> {
    use std::f64::consts::PI;
    match shape {
        Shape::CenteredDisc { radius } => Ok(PI * radius * radius),
        Shape::PseudoDisc { center, measure } => {
            let center_point = match model {
                Model::Disc => Point::Disc(DiskPoint::new(center[0], center[1])?),
                Model::HalfPlane => Point::HalfPlane(HalfPlanePoint::new(center[0], center[1])?),
            };
            let ball = disc_from_measure(&center_point, *measure)?;
            Ok(PI * ball.euclidean_radius * ball.euclidean_radius)
        }
        Shape::Annulus { r_inner, r_outer } => Ok(PI * (r_outer * r_outer - r_inner * r_inner)),
        Shape::BoundaryComplement { radius } => Ok(PI * (1.0 - radius * radius)),
        Shape::Rectangle { x, s } => Ok((x[1] - x[0]) * (s[1] - s[0])),
        Shape::Union { parts } => {
            let mut total = 0.0;
            for p in parts {
                total += lebesgue_measure_shape(p, model, grid)?;
            }
            Ok(total)
        }
        Shape::Mask { grid: dims, cells } => {
            if dims[0] != grid.radial_count() || dims[1] != grid.angular_count() {
                return Err(Error::usage("mask grid mismatch".to_string()));
            }
            grid.masked_measure(cells, Measure::Lebesgue)
        }
    }
}

fn reflect_shape(shape: &Shape) -> Shape {
    match shape {
        Shape::PseudoDisc { center, measure } => Shape::PseudoDisc {
            center: [-center[0], center[1]],
            measure: *measure,
        },
        Shape::Rectangle { x, s } => Shape::Rectangle {
            x: [-x[1], -x[0]],
            s: *s,
        },
        Shape::Union { parts } => Shape::Union {
            parts: parts.iter().map(reflect_shape).collect(),
        },
        other => other.clone(),
    }
}

fn tau_shape(shape: &Shape, w: HalfPlanePoint) -> Result<Shape> {
    Ok(match shape {
        Shape::PseudoDisc { center, measure } => {
            let c = tau_action(w, HalfPlanePoint::new(center[0], center[1])?);
            Shape::PseudoDisc {
                center: [c.x, c.s],
                measure: *measure,
            }
        }
        Shape::Rectangle { x, s } => Shape::Rectangle {
            x: [(x[0] - w.x) / w.s, (x[1] - w.x) / w.s],
            s: [s[0] / w.s, s[1] / w.s],
        },
        Shape::Union { parts } => Shape::Union {
            parts: parts
                .iter()
                .map(|p| tau_shape(p, w))
                .collect::<Result<Vec<_>>>()?,
        },
        other => {
            return Err(Error::usage(format!(
                "tau does not act on this shape: {other:?}"
            )))
        }
    })
}

fn map_shape_to_disc(shape: &Shape) -> Option<Shape> {
    match shape {
        Shape::PseudoDisc { center, measure } => {
            let z = HalfPlanePoint::new(center[0], center[1]).ok()?;
            let w = cayley_to_disk(z);
            Some(Shape::PseudoDisc {
                center: [w.re, w.im],
                measure: measure / 4.0,
            })
        }
        Shape::Union { parts } => {
            let mapped: Option<Vec<Shape>> = parts.iter().map(map_shape_to_disc).collect();
            Some(Shape::Union { parts: mapped? })
        }
        _ => None,
    }
}
