//! Circles, lines and the Euclidean cones over them.
//!
//! The cone over a circle of circumference L is the plane branched at one
//! point with total angle L: L = 2π is the plane itself, L = 2πk the
//! completed k-sheeted cover of the punctured plane, and L = +∞ (the cone
//! over a line) the completed universal cover.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::metric::{
    cat_scan, hypothesis_c_scan, CatScan, Geodesic, HypothesisCReport, Metric, ScanParams,
    TriangleSpec,
};
use crate::model::Curvature;

/// A point of the circle of circumference `circumference` (a line when infinite).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CirclePoint {
    pub theta: f64,
    pub circumference: f64,
}

/// Distance on a circle of circumference L, or on the line when L = +∞.
pub fn circle_distance(p: CirclePoint, q: CirclePoint) -> Result<f64> {
    if p.circumference != q.circumference {
        return domain(format!(
            "points on circles of different circumference ({} and {})",
            p.circumference, q.circumference
        ));
    }
    Ok(arc_distance(p.circumference, p.theta, q.theta))
}

fn arc_distance(circumference: f64, a: f64, b: f64) -> f64 {
    let d = (b - a).abs();
    if circumference.is_infinite() {
        return d;
    }
    let d = d % circumference;
    d.min(circumference - d)
}

/// θ_q − θ_p reduced into (−L/2, L/2].
fn signed_offset(circumference: f64, from: f64, to: f64) -> f64 {
    let delta = to - from;
    if circumference.is_infinite() {
        return delta;
    }
    let d = delta.rem_euclid(circumference);
    if d > circumference / 2.0 {
        d - circumference
    } else {
        d
    }
}

/// The circle of circumference L as a metric on angle coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    circumference: f64,
}

impl Circle {
    pub fn new(circumference: f64) -> Result<Self> {
        if !(circumference > 0.0) {
            return domain(format!(
                "circumference must be positive, got {circumference}"
            ));
        }
        Ok(Circle { circumference })
    }

    /// The real line.
    pub fn line() -> Self {
        Circle {
            circumference: f64::INFINITY,
        }
    }

    pub fn circumference(&self) -> f64 {
        self.circumference
    }

    pub fn point(&self, theta: f64) -> CirclePoint {
        CirclePoint {
            theta,
            circumference: self.circumference,
        }
    }

    /// A shortest arc from `a` to `b` (the positive direction at antipodes).
    pub fn geodesic(&self, a: f64, b: f64) -> Geodesic<'static, f64> {
        let delta = signed_offset(self.circumference, a, b);
        Geodesic::new(move |u| a + u * delta)
    }
}

impl Metric for Circle {
    type Point = f64;

    fn distance(&self, p: &f64, q: &f64) -> f64 {
        arc_distance(self.circumference, *p, *q)
    }
}

/// A point (t, x) of a Euclidean cone; all points with t = 0 are the apex.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConePoint<Q> {
    pub t: f64,
    pub base: Q,
}

impl<Q> ConePoint<Q> {
    pub fn new(t: f64, base: Q) -> Self {
        ConePoint { t, base }
    }

    pub fn is_apex(&self) -> bool {
        self.t == 0.0
    }
}

/// Law-of-cosines distance in the cone over a base with distance `base_distance`
/// between the base points, angles truncated at π.
fn cone_formula(tp: f64, tq: f64, base_distance: f64) -> f64 {
    if tp == 0.0 {
        return tq;
    }
    if tq == 0.0 {
        return tp;
    }
    let half = (base_distance.min(PI) / 2.0).sin();
    ((tp - tq).powi(2) + 4.0 * tp * tq * half * half).sqrt()
}

/// Distance in the Euclidean cone over `base`.
pub fn cone_distance<B: Metric>(base: &B, p: &ConePoint<B::Point>, q: &ConePoint<B::Point>) -> f64 {
    if p.t == 0.0 || q.t == 0.0 {
        return p.t + q.t;
    }
    cone_formula(p.t, q.t, base.distance(&p.base, &q.base))
}

/// The Euclidean cone CX over a metric space X.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EuclideanCone<B> {
    base: B,
}

impl<B: Metric> EuclideanCone<B> {
    pub fn new(base: B) -> Self {
        EuclideanCone { base }
    }

    pub fn base(&self) -> &B {
        &self.base
    }
}

impl<B: Metric> Metric for EuclideanCone<B> {
    type Point = ConePoint<B::Point>;

    fn distance(&self, p: &Self::Point, q: &Self::Point) -> f64 {
        cone_distance(&self.base, p, q)
    }
}

pub type CircleCone = EuclideanCone<Circle>;

impl EuclideanCone<Circle> {
    /// Cone over a circle of circumference L (a line for L = +∞).
    pub fn with_circumference(circumference: f64) -> Result<Self> {
        Ok(EuclideanCone::new(Circle::new(circumference)?))
    }

    pub fn circumference(&self) -> f64 {
        self.base.circumference
    }

    pub fn geodesic(
        &self,
        p: ConePoint<f64>,
        q: ConePoint<f64>,
    ) -> Geodesic<'static, ConePoint<f64>> {
        let l = self.circumference();
        Geodesic::new(move |u| cone_geodesic_point(l, p, q, u))
    }

    /// Triangle with geodesic edges between the given vertices.
    pub fn triangle(
        &self,
        vertices: [ConePoint<f64>; 3],
        samples: usize,
    ) -> Result<TriangleSpec<'static, ConePoint<f64>>> {
        TriangleSpec::from_vertices(self, vertices, samples, |p, q| self.geodesic(*p, *q))
    }

    /// A point drawn from the closed ball of the given radius about `center`
    /// by rejection sampling from an enclosing polar box.
    pub fn sample_in_ball<R: Rng + ?Sized>(
        &self,
        center: ConePoint<f64>,
        radius: f64,
        rng: &mut R,
    ) -> ConePoint<f64> {
        let t_lo = (center.t - radius).max(0.0);
        let t_hi = center.t + radius;
        // Away from the apex the ball only reaches angular offsets below π. When it
        // contains the apex, offsets are drawn from a window of half-width π + 1.
        let mut span = PI.min(self.circumference() / 2.0);
        if center.t <= radius {
            span = (self.circumference() / 2.0).min(PI + 1.0);
        }
        loop {
            let t = rng.gen_range(t_lo..=t_hi);
            let theta = center.base + rng.gen_range(-span..=span);
            let p = ConePoint::new(t, theta);
            if self.distance(&center, &p) <= radius {
                return p;
            }
        }
    }
}

/// The point at parameter u ∈ [0, 1] on a constant-speed geodesic from p to q
/// in the cone over a circle of circumference L.
///
/// For angular offset δ below π the geodesic is the straight segment in a
/// developed flat sector; otherwise it runs through the apex.
pub fn cone_geodesic_point(
    circumference: f64,
    p: ConePoint<f64>,
    q: ConePoint<f64>,
    u: f64,
) -> ConePoint<f64> {
    let delta = if p.t == 0.0 || q.t == 0.0 {
        0.0
    } else {
        signed_offset(circumference, p.base, q.base)
    };
    if delta.abs() >= PI {
        let s = u * (p.t + q.t);
        return if s < p.t {
            ConePoint::new(p.t - s, p.base)
        } else if s > p.t {
            ConePoint::new(s - p.t, q.base)
        } else {
            ConePoint::new(0.0, p.base)
        };
    }
    let base_p = if p.t == 0.0 { q.base } else { p.base };
    let (qx, qy) = (q.t * delta.cos(), q.t * delta.sin());
    let x = (1.0 - u) * p.t + u * qx;
    let y = u * qy;
    let t = x.hypot(y);
    let theta = if t == 0.0 {
        base_p
    } else {
        base_p + y.atan2(x)
    };
    ConePoint::new(t, theta)
}

/// [`cat_scan`] on the cone over a circle of circumference L. For
/// finite L the first triangle is the evenly spaced one with vertices
/// (1, 0), (1, L/3), (1, 2L/3), which encloses the apex; the rest have
/// t ∈ [0.1, 2] and θ uniform over [0, L) (over [−3π, 3π] on the line).
pub fn cone_cat_scan(
    circumference: f64,
    chi: Curvature,
    count: usize,
    samples: usize,
    tolerance: f64,
    seed: u64,
) -> Result<CatScan> {
    let cone = CircleCone::with_circumference(circumference)?;
    let window = if circumference.is_finite() {
        (0.0, circumference)
    } else {
        (-3.0 * PI, 3.0 * PI)
    };
    cat_scan(&cone, chi, tolerance, count, seed, |k, rng| {
        let vertices = if k == 0 && circumference.is_finite() {
            [0.0, 1.0, 2.0].map(|i| ConePoint::new(1.0, i * circumference / 3.0))
        } else {
            [(); 3].map(|_| {
                ConePoint::new(rng.gen_range(0.1..=2.0), rng.gen_range(window.0..window.1))
            })
        };
        cone.triangle(vertices, samples)
    })
}

/// [`cat_scan`] at χ = 1 on the circle of circumference L itself. The first
/// triangle is the evenly spaced one when its perimeter min(L, ·) is below 2π;
/// the rest have vertices uniform in [0, min(L, 2π)), and those with
/// perimeter ≥ 2π are skipped.
pub fn circle_cat_scan(
    circumference: f64,
    count: usize,
    samples: usize,
    tolerance: f64,
    seed: u64,
) -> Result<CatScan> {
    let circle = Circle::new(circumference)?;
    let width = circumference.min(2.0 * PI);
    cat_scan(
        &circle,
        Curvature::SPHERE,
        tolerance,
        count,
        seed,
        |k, rng| {
            let vertices = if k == 0 {
                [0.0, 1.0, 2.0].map(|i| i * width / 3.0)
            } else {
                [(); 3].map(|_| rng.gen_range(0.0..width))
            };
            TriangleSpec::from_vertices(&circle, vertices, samples, |a, b| circle.geodesic(*a, *b))
        },
    )
}

/// Number of local geodesics in the cone over a circle of circumference L
/// between two points off the apex with angles θ_p, θ_q: one straight segment
/// for each lift δ + kL of the angular offset with |δ + kL| < π, plus the
/// broken path through the apex when the base distance is at least π.
/// Geodesics are unique exactly when this is 1, which holds for every pair
/// when L ≥ 2π.
pub fn cone_local_geodesic_count(circumference: f64, theta_p: f64, theta_q: f64) -> Result<usize> {
    if !(circumference > 0.0) {
        return domain(format!(
            "circumference must be positive, got {circumference}"
        ));
    }
    let delta = signed_offset(circumference, theta_p, theta_q);
    let mut straight = usize::from(delta.abs() < PI);
    if circumference.is_finite() {
        let reach = (PI / circumference).ceil() as i64 + 1;
        straight = (-reach..=reach)
            .filter(|&k| (delta + k as f64 * circumference).abs() < PI)
            .count();
    }
    let through_apex = arc_distance(circumference, theta_p, theta_q) >= PI;
    Ok(straight + usize::from(through_apex))
}

/// Hypothesis (C) on the cone over a circle with Δ = {apex}: probes at
/// t ∈ [0.5, 2] with random angle, and triangles with vertices drawn from the
/// ball B(x, λ·t).
pub fn cone_hypothesis_c(
    circumference: f64,
    probes: usize,
    triangles_per_probe: usize,
    lambda: f64,
    samples: usize,
    tolerance: f64,
    seed: u64,
) -> Result<HypothesisCReport> {
    let cone = CircleCone::with_circumference(circumference)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let window = if circumference.is_finite() {
        circumference
    } else {
        4.0 * PI
    };
    let probe_points: Vec<ConePoint<f64>> = (0..probes)
        .map(|_| ConePoint::new(rng.gen_range(0.5..=2.0), rng.gen_range(0.0..window)))
        .collect();
    let params = ScanParams {
        lambda,
        chi: Curvature::FLAT,
        triangles_per_probe,
        tolerance,
        seed,
    };
    hypothesis_c_scan(
        &cone,
        &[ConePoint::new(0.0, 0.0)],
        &probe_points,
        params,
        |x, r, rng| {
            let v = [(); 3].map(|_| cone.sample_in_ball(*x, r, rng));
            cone.triangle(v, samples)
        },
    )
}

impl TryFrom<f64> for Circle {
    type Error = Error;

    fn try_from(circumference: f64) -> Result<Self> {
        Circle::new(circumference)
    }
}
