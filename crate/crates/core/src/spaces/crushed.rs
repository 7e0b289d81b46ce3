//! The half-plane x ≥ 0 with the line x = 0 crushed to a single point 0.
//!
//! Distances: d(0, (x, y)) = x and
//! d((x₁,y₁),(x₂,y₂)) = min{x₁ + x₂, |(x₁,y₁) − (x₂,y₂)|}.
//! Every point other than 0 has a flat neighborhood, the tangent cone at 0 is
//! a cone over an uncountable discrete set, and yet the space is not CAT(0).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::metric::{
    cat_scan, hypothesis_c_scan, CatScan, CatWitness, Geodesic, HypothesisCReport, Metric,
    ScanParams, TriangleSpec,
};
use crate::model::{Curvature, EdgePoint, Side};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CrushedPoint {
    /// The crushed boundary line.
    Origin,
    Half {
        x: f64,
        y: f64,
    },
}

impl CrushedPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(x > 0.0 && x.is_finite() && y.is_finite()) {
            return domain(format!(
                "points off the crushed line need finite x > 0, got ({x}, {y})"
            ));
        }
        Ok(CrushedPoint::Half { x, y })
    }

    /// Distance to the crushed point.
    pub fn height(&self) -> f64 {
        match *self {
            CrushedPoint::Origin => 0.0,
            CrushedPoint::Half { x, .. } => x,
        }
    }
}

pub fn crushed_distance(p: &CrushedPoint, q: &CrushedPoint) -> f64 {
    match (*p, *q) {
        (CrushedPoint::Half { x: x1, y: y1 }, CrushedPoint::Half { x: x2, y: y2 }) => {
            (x1 + x2).min((x1 - x2).hypot(y1 - y2))
        }
        _ => p.height() + q.height(),
    }
}

/// Point at parameter u of a constant-speed geodesic from p to q. Ties
/// between the straight segment and the path through 0 go through 0.
pub fn crushed_geodesic_point(p: &CrushedPoint, q: &CrushedPoint, u: f64) -> CrushedPoint {
    if let (CrushedPoint::Half { x: x1, y: y1 }, CrushedPoint::Half { x: x2, y: y2 }) = (*p, *q) {
        if (x1 - x2).hypot(y1 - y2) < x1 + x2 {
            return CrushedPoint::Half {
                x: x1 + u * (x2 - x1),
                y: y1 + u * (y2 - y1),
            };
        }
    }
    let (h1, h2) = (p.height(), q.height());
    let s = u * (h1 + h2);
    let radial = |point: &CrushedPoint, h: f64| match *point {
        CrushedPoint::Half { y, .. } if h > 0.0 => CrushedPoint::Half { x: h, y },
        _ => CrushedPoint::Origin,
    };
    if s < h1 {
        radial(p, h1 - s)
    } else {
        radial(q, s - h1)
    }
}

/// The crushed half-plane as a metric space.
#[derive(Debug, Clone, Copy, Default)]
pub struct CrushedHalfPlane;

impl Metric for CrushedHalfPlane {
    type Point = CrushedPoint;

    fn distance(&self, p: &CrushedPoint, q: &CrushedPoint) -> f64 {
        crushed_distance(p, q)
    }
}

impl CrushedHalfPlane {
    pub fn geodesic(p: CrushedPoint, q: CrushedPoint) -> Geodesic<'static, CrushedPoint> {
        Geodesic::new(move |u| crushed_geodesic_point(&p, &q, u))
    }

    pub fn triangle(
        vertices: [CrushedPoint; 3],
        samples: usize,
    ) -> Result<TriangleSpec<'static, CrushedPoint>> {
        TriangleSpec::from_vertices(&CrushedHalfPlane, vertices, samples, |p, q| {
            Self::geodesic(*p, *q)
        })
    }

    /// A point of the open disk of the given radius about (x, y); the disk must
    /// stay inside x > 0, where the metric is Euclidean at that scale.
    pub fn sample_in_disk<R: Rng + ?Sized>(
        center: (f64, f64),
        radius: f64,
        rng: &mut R,
    ) -> Result<CrushedPoint> {
        if !(radius > 0.0 && 2.0 * radius <= center.0) {
            return domain(format!(
                "disk of radius {radius} about {center:?} is not Euclidean"
            ));
        }
        loop {
            let dx = rng.gen_range(-radius..=radius);
            let dy = rng.gen_range(-radius..=radius);
            if dx.hypot(dy) <= radius {
                return CrushedPoint::new(center.0 + dx, center.1 + dy);
            }
        }
    }
}

/// Hypothesis (C) with Δ = {0}: probes (x, y) with x ∈ [0.5, 2], y ∈ [−2, 2]
/// and triangles drawn from the disk of radius λ·x, which is Euclidean for
/// λ ≤ 1/2.
pub fn crushed_hypothesis_c(
    probes: usize,
    triangles_per_probe: usize,
    lambda: f64,
    samples: usize,
    tolerance: f64,
    seed: u64,
) -> Result<HypothesisCReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let probe_points = (0..probes)
        .map(|_| CrushedPoint::new(rng.gen_range(0.5..=2.0), rng.gen_range(-2.0..=2.0)))
        .collect::<Result<Vec<_>>>()?;
    let params = ScanParams {
        lambda,
        chi: Curvature::FLAT,
        triangles_per_probe,
        tolerance,
        seed,
    };
    hypothesis_c_scan(
        &CrushedHalfPlane,
        &[CrushedPoint::Origin],
        &probe_points,
        params,
        |x, r, rng| {
            let CrushedPoint::Half { x: cx, y: cy } = *x else {
                return domain("probe at the crushed point");
            };
            let mut v = [CrushedPoint::Origin; 3];
            for p in &mut v {
                *p = CrushedHalfPlane::sample_in_disk((cx, cy), r, rng)?;
            }
            CrushedHalfPlane::triangle(v, samples)
        },
    )
}

/// Triangles with an edge inside Δ = {0}: two vertices at 0 and a third at
/// (x, y), so the edges are the constant path at 0 and two copies of the
/// radial segment.
pub fn crushed_edge_at_zero_triangle(
    x: f64,
    y: f64,
    samples: usize,
) -> Result<TriangleSpec<'static, CrushedPoint>> {
    CrushedHalfPlane::triangle(
        [
            CrushedPoint::Origin,
            CrushedPoint::Origin,
            CrushedPoint::new(x, y)?,
        ],
        samples,
    )
}

/// [`cat_scan`] over `count` edge-at-0 triangles with third vertex drawn
/// from x ∈ [0.01, 3), y ∈ [−3, 3).
pub fn crushed_edge_at_zero_scan(
    count: usize,
    samples: usize,
    tolerance: f64,
    seed: u64,
) -> Result<CatScan> {
    cat_scan(
        &CrushedHalfPlane,
        Curvature::FLAT,
        tolerance,
        count,
        seed,
        |_, rng| {
            crushed_edge_at_zero_triangle(
                rng.gen_range(0.01..3.0),
                rng.gen_range(-3.0..3.0),
                samples,
            )
        },
    )
}

/// The triangle with vertices A = 0, B = (1, −1/2), C = (1, 1/2) and the
/// pair v = (1/2, −1/2) ∈ AB, w = (1/2, 1/2) ∈ CA on which the CAT(0)
/// inequality fails: d(v, w) = 1 while the equilateral comparison triangle
/// puts them at distance 1/2.
pub fn crushed_cat_witness(
    samples: usize,
) -> Result<(TriangleSpec<'static, CrushedPoint>, CatWitness)> {
    let a = CrushedPoint::Origin;
    let b = CrushedPoint::new(1.0, -0.5)?;
    let c = CrushedPoint::new(1.0, 0.5)?;
    let tri = CrushedHalfPlane::triangle([a, b, c], samples)?;
    let model = tri.comparison_triangle(Curvature::FLAT, &CrushedHalfPlane)?;
    // Side C runs A→B and side B runs C→A; both points sit halfway along.
    let v = tri.edge(Side::C).at(0.5);
    let w = tri.edge(Side::B).at(0.5);
    let measured = crushed_distance(&v, &w);
    let comparison = model.point_distance(
        EdgePoint::new(Side::C, 0.5 * model.side(Side::C)),
        EdgePoint::new(Side::B, 0.5 * model.side(Side::B)),
    )?;
    let witness = CatWitness {
        side1: Side::C,
        u: 0.5,
        side2: Side::B,
        v: 0.5,
        measured,
        comparison,
        violation: measured - comparison,
    };
    Ok((tri, witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{cat_test, default_t_sequence, tangent_distance_estimate};

    fn h(x: f64, y: f64) -> CrushedPoint {
        CrushedPoint::new(x, y).unwrap()
    }

    #[test]
    fn distance_examples() {
        assert_eq!(crushed_distance(&h(1.0, 0.0), &h(1.0, 3.0)), 2.0);
        assert_eq!(crushed_distance(&h(1.0, 0.0), &h(1.0, 1.0)), 1.0);
        assert_eq!(crushed_distance(&h(2.5, 7.0), &CrushedPoint::Origin), 2.5);
        assert_eq!(
            crushed_distance(&CrushedPoint::Origin, &CrushedPoint::Origin),
            0.0
        );
        assert!(CrushedPoint::new(0.0, 1.0).is_err());
    }

    #[test]
    fn geodesic_examples() {
        assert_eq!(
            crushed_geodesic_point(&h(1.0, 0.0), &h(1.0, 3.0), 0.5),
            CrushedPoint::Origin
        );
        assert_eq!(
            crushed_geodesic_point(&h(1.0, 0.0), &h(1.0, 1.0), 0.5),
            h(1.0, 0.5)
        );
        assert_eq!(
            crushed_geodesic_point(&h(2.0, 5.0), &CrushedPoint::Origin, 0.5),
            h(1.0, 5.0)
        );
        // Tie: straight length 2 equals the path through 0.
        assert_eq!(
            crushed_geodesic_point(&h(1.0, 0.0), &h(1.0, 2.0), 0.5),
            CrushedPoint::Origin
        );
    }

    #[test]
    fn geodesics_have_constant_speed() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let p = h(rng.gen_range(0.01..2.0), rng.gen_range(-3.0..3.0));
            let q = h(rng.gen_range(0.01..2.0), rng.gen_range(-3.0..3.0));
            let g = CrushedHalfPlane::geodesic(p, q);
            assert!(g.speed_defect(&CrushedHalfPlane, 15) < 1e-12);
        }
    }

    #[test]
    fn triangle_inequality_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let point = |rng: &mut ChaCha8Rng| {
            if rng.gen_bool(0.05) {
                CrushedPoint::Origin
            } else {
                h(rng.gen_range(1e-3..3.0), rng.gen_range(-5.0..5.0))
            }
        };
        for _ in 0..100_000 {
            let (a, b, c) = (point(&mut rng), point(&mut rng), point(&mut rng));
            let d = crushed_distance;
            assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c) + 1e-12);
        }
    }

    #[test]
    fn witness_is_exact() {
        let (tri, w) = crushed_cat_witness(32).unwrap();
        assert_eq!(w.measured, 1.0);
        assert_eq!(w.comparison, 0.5);
        assert_eq!(w.violation, 0.5);
        let v = cat_test(&tri, Curvature::FLAT, &CrushedHalfPlane, 1e-9).unwrap();
        assert!(v.witness().unwrap().violation > 0.49);
        // An odd sample count puts the midpoints on the grid.
        let tri = tri.with_samples(33);
        let w = *cat_test(&tri, Curvature::FLAT, &CrushedHalfPlane, 1e-9)
            .unwrap()
            .witness()
            .unwrap();
        assert!((w.violation - 0.5).abs() < 1e-12, "{w:?}");
    }

    #[test]
    fn hypothesis_c_holds() {
        let rep = crushed_hypothesis_c(10, 20, 0.5, 12, 1e-9, 3).unwrap();
        assert!(rep.all_passed(), "{rep:?}");
        assert!(crushed_hypothesis_c(1, 1, 0.75, 12, 1e-9, 3).is_err());
    }

    #[test]
    fn edge_at_zero_triangles_pass() {
        let scan = crushed_edge_at_zero_scan(100, 16, 1e-9, 4).unwrap();
        assert_eq!((scan.passed, scan.skipped), (100, 0));
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            let tri = crushed_edge_at_zero_triangle(
                rng.gen_range(0.01..3.0),
                rng.gen_range(-3.0..3.0),
                16,
            )
            .unwrap();
            assert!(cat_test(&tri, Curvature::FLAT, &CrushedHalfPlane, 1e-9)
                .unwrap()
                .passed());
        }
    }

    #[test]
    fn tangent_cone_at_origin_is_discrete() {
        let ts = default_t_sequence();
        for (y1, y2) in [(0.0, 1.0), (0.0, 1e-3), (-2.0, 5.0)] {
            let g1 = move |t: f64| {
                if t == 0.0 {
                    CrushedPoint::Origin
                } else {
                    h(t, y1)
                }
            };
            let g2 = move |t: f64| {
                if t == 0.0 {
                    CrushedPoint::Origin
                } else {
                    h(t, y2)
                }
            };
            let est = tangent_distance_estimate(g1, g2, &CrushedHalfPlane, &ts).unwrap();
            assert!(
                (est.estimate - 2.0).abs() < 1e-6,
                "{y1} {y2}: {}",
                est.estimate
            );
        }
        let g = |t: f64| {
            if t == 0.0 {
                CrushedPoint::Origin
            } else {
                h(t, 0.3)
            }
        };
        assert_eq!(
            tangent_distance_estimate(g, g, &CrushedHalfPlane, &ts)
                .unwrap()
                .estimate,
            0.0
        );
    }
}
