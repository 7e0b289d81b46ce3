//! Constant-curvature model planes: laws of cosines and comparison triangles.
//!
//! Triangles are described by side lengths only. The three models
//! (hyperbolic, flat, spherical) are selected at runtime from the sign of the
//! curvature, and every formula is written in half-angle form so that thin
//! and nearly degenerate triangles keep full relative precision.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Slack, relative to the perimeter, tolerated on triangle inequalities
/// before a configuration is rejected. Smaller violations are clamped.
pub const CLAMP_TOLERANCE: f64 = 1e-12;

/// Upper curvature bound χ. Any finite real.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Curvature(f64);

impl Curvature {
    pub const FLAT: Curvature = Curvature(0.0);
    pub const SPHERE: Curvature = Curvature(1.0);

    pub fn new(chi: f64) -> Result<Self> {
        if !chi.is_finite() {
            return domain(format!("curvature must be finite, got {chi}"));
        }
        Ok(Curvature(chi))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    fn model(self) -> Model {
        if self.0 > 0.0 {
            Model::Spherical(self.0.sqrt())
        } else if self.0 < 0.0 {
            Model::Hyperbolic((-self.0).sqrt())
        } else {
            Model::Flat
        }
    }

    /// Largest admissible side length: π/√χ for χ > 0, unbounded otherwise.
    pub fn diameter(self) -> f64 {
        match self.model() {
            Model::Spherical(k) => PI / k,
            _ => f64::INFINITY,
        }
    }
}

impl TryFrom<f64> for Curvature {
    type Error = Error;

    fn try_from(chi: f64) -> Result<Self> {
        Curvature::new(chi)
    }
}

#[derive(Debug, Clone, Copy)]
enum Model {
    Hyperbolic(f64),
    Flat,
    Spherical(f64),
}

impl Model {
    /// The generalized sine used by the half-angle formulas, up to a constant
    /// factor that cancels in every ratio it appears in.
    fn sn(self, x: f64) -> f64 {
        match self {
            Model::Hyperbolic(k) => (k * x).sinh(),
            Model::Flat => x,
            Model::Spherical(k) => (k * x).sin(),
        }
    }
}

/// Circumference of the model plane X_χ: 2π/√χ for χ > 0, +∞ otherwise.
pub fn model_circumference(chi: Curvature) -> f64 {
    match chi.model() {
        Model::Spherical(k) => 2.0 * PI / k,
        _ => f64::INFINITY,
    }
}

fn check_length(name: &str, x: f64) -> Result<()> {
    if !(x.is_finite() && x >= 0.0) {
        return domain(format!(
            "{name} must be a finite nonnegative length, got {x}"
        ));
    }
    Ok(())
}

/// Length of the side opposite the angle `gamma` enclosed by sides `a`, `b`.
pub fn side_from_angle(chi: Curvature, a: f64, b: f64, gamma: f64) -> Result<f64> {
    check_length("a", a)?;
    check_length("b", b)?;
    if !(gamma.is_finite() && (-CLAMP_TOLERANCE..=PI + CLAMP_TOLERANCE).contains(&gamma)) {
        return domain(format!("angle must lie in [0, π], got {gamma}"));
    }
    let gamma = gamma.clamp(0.0, PI);
    let max = chi.diameter() * (1.0 + CLAMP_TOLERANCE);
    if a > max || b > max {
        return domain(format!(
            "sides ({a}, {b}) exceed π/√χ = {} for χ = {}",
            chi.diameter(),
            chi.value()
        ));
    }
    let (a, b) = (a.min(chi.diameter()), b.min(chi.diameter()));
    let hav = (0.5 * gamma).sin().powi(2);
    let c = match chi.model() {
        Model::Flat => ((a - b).powi(2) + 4.0 * a * b * hav).sqrt(),
        Model::Spherical(k) => {
            let h = (0.5 * k * (a - b)).sin().powi(2) + (k * a).sin() * (k * b).sin() * hav;
            2.0 * h.clamp(0.0, 1.0).sqrt().asin() / k
        }
        Model::Hyperbolic(k) => {
            let h = (0.5 * k * (a - b)).sinh().powi(2) + (k * a).sinh() * (k * b).sinh() * hav;
            2.0 * h.max(0.0).sqrt().asinh() / k
        }
    };
    Ok(c)
}

/// Angle between sides `a` and `b` of the model triangle with third side `c`.
pub fn angle_from_sides(chi: Curvature, a: f64, b: f64, c: f64) -> Result<f64> {
    check_length("a", a)?;
    check_length("b", b)?;
    check_length("c", c)?;
    if a == 0.0 || b == 0.0 {
        return domain("angle is undefined when an enclosing side has length zero");
    }
    let [sa, sb, sc] = triangle_excesses(chi, a, b, c)?;
    let s = 0.5 * (a + b + c);
    let m = chi.model();
    let num = (m.sn(sa) * m.sn(sb)).max(0.0).sqrt();
    let den = (m.sn(s) * m.sn(sc)).max(0.0).sqrt();
    Ok(2.0 * num.atan2(den))
}

/// Returns (s−a, s−b, s−c) with s the semiperimeter, after checking the
/// triangle and perimeter conditions and clamping tiny negative excesses.
fn triangle_excesses(chi: Curvature, a: f64, b: f64, c: f64) -> Result<[f64; 3]> {
    let perimeter = a + b + c;
    let slack = CLAMP_TOLERANCE * perimeter.max(f64::MIN_POSITIVE);
    let s = 0.5 * perimeter;
    let mut ex = [s - a, s - b, s - c];
    for e in ex.iter_mut() {
        if *e < -slack {
            return Err(Error::InadmissibleTriangle(format!(
                "sides ({a}, {b}, {c}) violate the triangle inequality"
            )));
        }
        *e = e.max(0.0);
    }
    let circ = model_circumference(chi);
    if perimeter >= circ {
        return Err(Error::InadmissibleTriangle(format!(
            "perimeter {perimeter} is not below the model circumference {circ}"
        )));
    }
    Ok(ex)
}

/// A side of a triangle, named by the opposite vertex.
///
/// Sides are oriented cyclically: `A` runs from vertex B to vertex C, `B`
/// from C to A and `C` from A to B. Arclength parameters are measured from
/// the start of the side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
    C,
}

impl Side {
    pub const ALL: [Side; 3] = [Side::A, Side::B, Side::C];

    /// The side that starts where this one ends.
    pub fn next(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::C,
            Side::C => Side::A,
        }
    }

    /// The side that ends where this one starts.
    pub fn prev(self) -> Side {
        self.next().next()
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

/// A point on a side of a triangle, `s` units of arclength from its start.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgePoint {
    pub side: Side,
    pub s: f64,
}

impl EdgePoint {
    pub fn new(side: Side, s: f64) -> Self {
        EdgePoint { side, s }
    }
}

/// A triangle in the model plane X_χ, given by its three side lengths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelTriangle {
    chi: Curvature,
    sides: [f64; 3],
}

impl ModelTriangle {
    /// Validates the triangle inequality and, for χ > 0, the perimeter bound.
    pub fn new(chi: Curvature, a: f64, b: f64, c: f64) -> Result<Self> {
        for (name, x) in [("a", a), ("b", b), ("c", c)] {
            if !(x.is_finite() && x >= 0.0) {
                return Err(Error::InadmissibleTriangle(format!(
                    "side {name} = {x} is not a finite nonnegative length"
                )));
            }
        }
        triangle_excesses(chi, a, b, c)?;
        Ok(ModelTriangle {
            chi,
            sides: [a, b, c],
        })
    }

    pub fn curvature(&self) -> Curvature {
        self.chi
    }

    pub fn side(&self, side: Side) -> f64 {
        self.sides[side.index()]
    }

    pub fn sides(&self) -> [f64; 3] {
        self.sides
    }

    pub fn perimeter(&self) -> f64 {
        self.sides.iter().sum()
    }

    /// Interior angle at the vertex where `side` ends (and `side.next()` starts).
    pub fn angle_after(&self, side: Side) -> Result<f64> {
        angle_from_sides(
            self.chi,
            self.side(side),
            self.side(side.next()),
            self.side(side.prev()),
        )
    }

    /// Model distance between two points on the sides of this triangle.
    pub fn point_distance(&self, p: EdgePoint, q: EdgePoint) -> Result<f64> {
        comparison_point_distance(self, p, q)
    }
}

fn clamp_param(tri: &ModelTriangle, p: EdgePoint) -> Result<f64> {
    let len = tri.side(p.side);
    let slack = CLAMP_TOLERANCE * len.max(1.0);
    if !(p.s.is_finite() && p.s >= -slack && p.s <= len + slack) {
        return domain(format!(
            "arclength {} outside [0, {len}] on side {:?}",
            p.s, p.side
        ));
    }
    Ok(p.s.clamp(0.0, len))
}

/// Distance in X_χ between two points on the sides of a comparison triangle,
/// computed from the law of cosines at the shared vertex.
pub fn comparison_point_distance(tri: &ModelTriangle, p: EdgePoint, q: EdgePoint) -> Result<f64> {
    let s = clamp_param(tri, p)?;
    let t = clamp_param(tri, q)?;
    if p.side == q.side {
        return Ok((s - t).abs());
    }
    // Orient the pair so that `first` ends at the vertex where `second` starts.
    let (first, d1, second, d2) = if q.side == p.side.next() {
        (p.side, tri.side(p.side) - s, q.side, t)
    } else {
        (q.side, tri.side(q.side) - t, p.side, s)
    };
    if d1 == 0.0 {
        return Ok(d2);
    }
    if d2 == 0.0 {
        return Ok(d1);
    }
    if d1 == tri.side(first) && d2 == tri.side(second) {
        return Ok(tri.side(first.prev()));
    }
    let gamma = angle_from_sides(
        tri.chi,
        tri.side(first),
        tri.side(second),
        tri.side(first.prev()),
    )?;
    side_from_angle(tri.chi, d1, d2, gamma)
}
