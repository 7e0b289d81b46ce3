//! Sampled curvature tests on abstract metric spaces.
//!
//! A space is anything implementing [`Metric`]; edges of triangles are
//! [`Geodesic`] samplers parametrized on [0, 1]. The CAT(χ) tester compares
//! sampled pairwise distances against the comparison triangle built from the
//! measured edge lengths. It is a falsifier: a reported witness is a genuine
//! violation (up to the tolerance), a pass only covers the sampled pairs.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::model::{Curvature, EdgePoint, ModelTriangle, Side};

pub const DEFAULT_SAMPLES: usize = 32;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// A distance function on an opaque point type.
pub trait Metric {
    type Point: Clone;

    fn distance(&self, p: &Self::Point, q: &Self::Point) -> f64;
}

impl<M: Metric + ?Sized> Metric for &M {
    type Point = M::Point;

    fn distance(&self, p: &Self::Point, q: &Self::Point) -> f64 {
        (**self).distance(p, q)
    }
}

/// The Euclidean plane.
#[derive(Debug, Clone, Copy, Default)]
pub struct EuclideanPlane;

impl Metric for EuclideanPlane {
    type Point = [f64; 2];

    fn distance(&self, p: &[f64; 2], q: &[f64; 2]) -> f64 {
        (p[0] - q[0]).hypot(p[1] - q[1])
    }
}

impl EuclideanPlane {
    pub fn segment(p: [f64; 2], q: [f64; 2]) -> Geodesic<'static, [f64; 2]> {
        Geodesic::new(move |u| [p[0] + u * (q[0] - p[0]), p[1] + u * (q[1] - p[1])])
    }
}

/// A constant-speed path on [0, 1].
pub struct Geodesic<'a, P> {
    start: P,
    end: P,
    eval: Box<dyn Fn(f64) -> P + Send + Sync + 'a>,
}

impl<'a, P: Clone> Geodesic<'a, P> {
    pub fn new(eval: impl Fn(f64) -> P + Send + Sync + 'a) -> Self {
        Geodesic {
            start: eval(0.0),
            end: eval(1.0),
            eval: Box::new(eval),
        }
    }

    /// The constant path.
    pub fn constant(p: P) -> Self
    where
        P: Send + Sync + 'a,
    {
        let q = p.clone();
        Geodesic::new(move |_| q.clone())
    }

    pub fn start(&self) -> &P {
        &self.start
    }

    pub fn end(&self) -> &P {
        &self.end
    }

    pub fn at(&self, u: f64) -> P {
        if u <= 0.0 {
            self.start.clone()
        } else if u >= 1.0 {
            self.end.clone()
        } else {
            (self.eval)(u)
        }
    }

    /// Largest relative deviation from constant speed over `n` sample points:
    /// max |d(γ(u),γ(v)) − σ|u−v|| / σ over all sampled pairs, where σ is the
    /// endpoint distance. Zero for a true geodesic.
    pub fn speed_defect<M: Metric<Point = P>>(&self, metric: &M, n: usize) -> f64 {
        let sigma = metric.distance(&self.start, &self.end);
        let pts: Vec<P> = (0..n).map(|i| self.at(grid(i, n))).collect();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                let expected = sigma * (grid(j, n) - grid(i, n));
                let got = metric.distance(&pts[i], &pts[j]);
                worst = worst.max((got - expected).abs());
            }
        }
        if sigma > 0.0 {
            worst / sigma
        } else {
            worst
        }
    }
}

fn grid(i: usize, n: usize) -> f64 {
    if n <= 1 {
        0.0
    } else {
        i as f64 / (n - 1) as f64
    }
}

/// Sum of consecutive distances along an ordered sample of a path.
pub fn path_length<M: Metric>(samples: &[M::Point], metric: &M) -> Result<f64> {
    if samples.is_empty() {
        return domain("path_length needs at least one point");
    }
    Ok(samples
        .windows(2)
        .map(|w| metric.distance(&w[0], &w[1]))
        .sum())
}

/// A triangle with vertices A, B, C and edges oriented as in [`Side`]:
/// edge `A` runs B→C, edge `B` runs C→A, edge `C` runs A→B.
pub struct TriangleSpec<'a, P> {
    vertices: [P; 3],
    edges: [Geodesic<'a, P>; 3],
    samples: usize,
}

impl<'a, P: Clone> TriangleSpec<'a, P> {
    /// Checks that each edge joins the right pair of vertices (to `1e-9`).
    pub fn new<M: Metric<Point = P>>(
        metric: &M,
        vertices: [P; 3],
        edges: [Geodesic<'a, P>; 3],
        samples: usize,
    ) -> Result<Self> {
        if samples < 2 {
            return domain("a triangle needs at least two samples per edge");
        }
        let [va, vb, vc] = &vertices;
        let ends = [(vb, vc), (vc, va), (va, vb)];
        for (side, (edge, (s, e))) in Side::ALL.iter().zip(edges.iter().zip(ends)) {
            let gap = metric
                .distance(edge.start(), s)
                .max(metric.distance(edge.end(), e));
            if gap > 1e-9 {
                return domain(format!(
                    "edge {side:?} does not join its vertices (off by {gap})"
                ));
            }
        }
        Ok(TriangleSpec {
            vertices,
            edges,
            samples,
        })
    }

    /// Triangle whose edges are produced by `geodesic(start, end)`.
    pub fn from_vertices<M, G>(
        metric: &M,
        vertices: [P; 3],
        samples: usize,
        geodesic: G,
    ) -> Result<Self>
    where
        M: Metric<Point = P>,
        G: Fn(&P, &P) -> Geodesic<'a, P>,
    {
        let [a, b, c] = &vertices;
        let edges = [geodesic(b, c), geodesic(c, a), geodesic(a, b)];
        TriangleSpec::new(metric, vertices.clone(), edges, samples)
    }

    pub fn vertices(&self) -> &[P; 3] {
        &self.vertices
    }

    pub fn edge(&self, side: Side) -> &Geodesic<'a, P> {
        &self.edges[side.index()]
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples.max(2);
        self
    }

    /// Edge lengths measured by the metric between each edge's endpoints.
    pub fn edge_lengths<M: Metric<Point = P>>(&self, metric: &M) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (o, e) in out.iter_mut().zip(&self.edges) {
            *o = metric.distance(e.start(), e.end());
        }
        out
    }

    pub fn comparison_triangle<M: Metric<Point = P>>(
        &self,
        chi: Curvature,
        metric: &M,
    ) -> Result<ModelTriangle> {
        let [a, b, c] = self.edge_lengths(metric);
        ModelTriangle::new(chi, a, b, c)
    }
}

/// A sampled pair of edge points where the CAT(χ) inequality fails.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CatWitness {
    pub side1: Side,
    pub u: f64,
    pub side2: Side,
    pub v: f64,
    pub measured: f64,
    pub comparison: f64,
    pub violation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CatVerdict {
    /// Every sampled pair satisfied the inequality up to the tolerance.
    Pass { max_violation: f64, pairs: usize },
    /// The worst sampled violation.
    Fail(CatWitness),
}

impl CatVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, CatVerdict::Pass { .. })
    }

    pub fn witness(&self) -> Option<&CatWitness> {
        match self {
            CatVerdict::Fail(w) => Some(w),
            CatVerdict::Pass { .. } => None,
        }
    }
}

/// Tests the CAT(χ) inequality on all `n²` sampled pairs of each pair of
/// distinct edges. Returns the maximal violation if it exceeds `tolerance`.
///
/// Fails with [`Error::InadmissibleTriangle`] when the measured edge lengths
/// have no comparison triangle in X_χ.
pub fn cat_test<M: Metric>(
    tri: &TriangleSpec<'_, M::Point>,
    chi: Curvature,
    metric: &M,
    tolerance: f64,
) -> Result<CatVerdict> {
    if !(tolerance > 0.0) {
        return domain("tolerance must be positive");
    }
    let model = tri.comparison_triangle(chi, metric)?;
    let n = tri.samples;
    let lens = model.sides();
    let points: Vec<Vec<M::Point>> = Side::ALL
        .iter()
        .map(|&s| (0..n).map(|i| tri.edge(s).at(grid(i, n))).collect())
        .collect();

    let mut worst: Option<CatWitness> = None;
    let mut pairs = 0;
    for (s1, s2) in [(Side::A, Side::B), (Side::B, Side::C), (Side::C, Side::A)] {
        for i in 0..n {
            let u = grid(i, n);
            let p = EdgePoint::new(s1, u * lens[s1.index()]);
            for j in 0..n {
                let v = grid(j, n);
                let q = EdgePoint::new(s2, v * lens[s2.index()]);
                let comparison = model.point_distance(p, q)?;
                let measured = metric.distance(&points[s1.index()][i], &points[s2.index()][j]);
                let violation = measured - comparison;
                pairs += 1;
                if worst.map_or(true, |w| violation > w.violation) {
                    worst = Some(CatWitness {
                        side1: s1,
                        u,
                        side2: s2,
                        v,
                        measured,
                        comparison,
                        violation,
                    });
                }
            }
        }
    }
    let worst = worst.expect("at least one sampled pair");
    if worst.violation > tolerance {
        Ok(CatVerdict::Fail(worst))
    } else {
        Ok(CatVerdict::Pass {
            max_violation: worst.violation,
            pairs,
        })
    }
}

/// Tally of [`cat_test`] over a batch of triangles.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CatScan {
    pub tested: usize,
    /// Triangles without a comparison triangle in X_χ (perimeter too large).
    pub skipped: usize,
    pub passed: usize,
    pub failed: usize,
    /// Largest violation among failures, or the largest sampled violation if
    /// every triangle passed.
    pub worst: Option<CatWitness>,
    pub max_violation: f64,
}

impl CatScan {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Runs [`cat_test`] on `count` triangles drawn by `make` from a ChaCha8 stream
/// seeded with `seed`. Inadmissible triangles are counted as skipped.
pub fn cat_scan<'a, M, F>(
    metric: &M,
    chi: Curvature,
    tolerance: f64,
    count: usize,
    seed: u64,
    mut make: F,
) -> Result<CatScan>
where
    M: Metric,
    F: FnMut(usize, &mut ChaCha8Rng) -> Result<TriangleSpec<'a, M::Point>>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut scan = CatScan {
        tested: 0,
        skipped: 0,
        passed: 0,
        failed: 0,
        worst: None,
        max_violation: f64::NEG_INFINITY,
    };
    for k in 0..count {
        let tri = make(k, &mut rng)?;
        match cat_test(&tri, chi, metric, tolerance) {
            Ok(CatVerdict::Pass { max_violation, .. }) => {
                scan.tested += 1;
                scan.passed += 1;
                scan.max_violation = scan.max_violation.max(max_violation);
            }
            Ok(CatVerdict::Fail(w)) => {
                scan.tested += 1;
                scan.failed += 1;
                scan.max_violation = scan.max_violation.max(w.violation);
                if scan.worst.map_or(true, |old| w.violation > old.violation) {
                    scan.worst = Some(w);
                }
            }
            Err(Error::InadmissibleTriangle(_)) => scan.skipped += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(scan)
}

/// Outcome of straightening two glued comparison triangles.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlexandrovReport {
    /// Comparison triangle of the combined triangle. Vertex A is the common
    /// apex, B and C the outer vertices of the first and second triangle;
    /// side A is the straightened base.
    pub outer: ModelTriangle,
    /// Sum of the two angles at the subdivision point, or `None` when one of
    /// the triangles has a zero-length base and the gluing is trivial.
    pub angle_sum: Option<f64>,
    /// Minimum over sampled pairs of (straightened distance − glued distance).
    pub min_gap: f64,
    pub pairs: usize,
    pub samples: usize,
}

/// Alexandrov's subdivision lemma in comparison pictures.
///
/// Both triangles share the side labelled `shared`, which runs from the common
/// apex to the subdivision point. Gluing them along it (on opposite sides) and
/// straightening at the subdivision point gives the outer triangle with sides
/// `prev(shared)` of each triangle and base `next(shared)₁ + next(shared)₂`.
/// The report checks on an `n`-point grid per boundary piece that no distance
/// between boundary points decreases under straightening.
pub fn alexandrov_combine(
    t1: &ModelTriangle,
    t2: &ModelTriangle,
    shared: Side,
    chi: Curvature,
    samples: usize,
) -> Result<AlexandrovReport> {
    if t1.curvature() != chi || t2.curvature() != chi {
        return domain("both triangles must live in the model plane of the given curvature");
    }
    let cevian = t1.side(shared);
    if (cevian - t2.side(shared)).abs() > 1e-12 * cevian.max(1.0) {
        return domain(format!(
            "shared sides differ: {cevian} vs {}",
            t2.side(shared)
        ));
    }
    let (n1, n2) = (t1.side(shared.next()), t2.side(shared.next()));
    let (p1, p2) = (t1.side(shared.prev()), t2.side(shared.prev()));

    let angle_sum = if n1 == 0.0 || n2 == 0.0 || cevian == 0.0 {
        None
    } else {
        let sum = t1.angle_after(shared)? + t2.angle_after(shared)?;
        if sum < PI - 1e-12 {
            return domain(format!(
                "gluing angle sum {sum} is below π; the subdivision lemma does not apply"
            ));
        }
        Some(sum)
    };
    let outer = ModelTriangle::new(chi, n1 + n2, p2, p1)?;

    // Boundary pieces: (triangle, side within it, outer side, map to outer arclength).
    #[derive(Clone, Copy)]
    struct Piece {
        first: bool,
        side: Side,
        len: f64,
        outer: Side,
        flip: bool,
        offset: f64,
    }
    let pieces = [
        Piece {
            first: true,
            side: shared.prev(),
            len: p1,
            outer: Side::C,
            flip: true,
            offset: p1,
        },
        Piece {
            first: true,
            side: shared.next(),
            len: n1,
            outer: Side::A,
            flip: true,
            offset: n1,
        },
        Piece {
            first: false,
            side: shared.next(),
            len: n2,
            outer: Side::A,
            flip: false,
            offset: n1,
        },
        Piece {
            first: false,
            side: shared.prev(),
            len: p2,
            outer: Side::B,
            flip: false,
            offset: 0.0,
        },
    ];
    let n = samples.max(2);
    let glued = |a: (Piece, f64), b: (Piece, f64)| -> Result<f64> {
        let pa = EdgePoint::new(a.0.side, a.1);
        let pb = EdgePoint::new(b.0.side, b.1);
        match (a.0.first, b.0.first) {
            (true, true) => t1.point_distance(pa, pb),
            (false, false) => t2.point_distance(pa, pb),
            (first_a, _) => {
                let (q1, q2) = if first_a { (pa, pb) } else { (pb, pa) };
                let f = |x: f64| -> Result<f64> {
                    let c = EdgePoint::new(shared, x);
                    Ok(t1.point_distance(q1, c)? + t2.point_distance(c, q2)?)
                };
                minimize_on_interval(f, 0.0, cevian)
            }
        }
    };
    let straight = |a: (Piece, f64), b: (Piece, f64)| -> Result<f64> {
        let map = |(p, s): (Piece, f64)| {
            EdgePoint::new(p.outer, if p.flip { p.offset - s } else { p.offset + s })
        };
        outer.point_distance(map(a), map(b))
    };

    let mut min_gap = f64::INFINITY;
    let mut pairs = 0;
    for i in 0..pieces.len() {
        for j in i + 1..pieces.len() {
            for a in 0..n {
                for b in 0..n {
                    let pa = (pieces[i], grid(a, n) * pieces[i].len);
                    let pb = (pieces[j], grid(b, n) * pieces[j].len);
                    let gap = straight(pa, pb)? - glued(pa, pb)?;
                    min_gap = min_gap.min(gap);
                    pairs += 1;
                }
            }
        }
    }
    Ok(AlexandrovReport {
        outer,
        angle_sum,
        min_gap,
        pairs,
        samples: n,
    })
}

/// Minimum of a unimodal function: coarse scan followed by golden-section refinement.
fn minimize_on_interval(f: impl Fn(f64) -> Result<f64>, lo: f64, hi: f64) -> Result<f64> {
    if hi <= lo {
        return f(lo);
    }
    const COARSE: usize = 32;
    let mut best = (f64::INFINITY, 0usize);
    for k in 0..=COARSE {
        let x = lo + (hi - lo) * k as f64 / COARSE as f64;
        let v = f(x)?;
        if v < best.0 {
            best = (v, k);
        }
    }
    let step = (hi - lo) / COARSE as f64;
    let mut a = (lo + step * best.1 as f64 - step).max(lo);
    let mut b = (lo + step * best.1 as f64 + step).min(hi);
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - ratio * (b - a);
    let mut x2 = a + ratio * (b - a);
    let (mut f1, mut f2) = (f(x1)?, f(x2)?);
    for _ in 0..100 {
        if b - a < 1e-15 * hi.abs().max(1.0) {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - ratio * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + ratio * (b - a);
            f2 = f(x2)?;
        }
    }
    Ok(best.0.min(f1).min(f2))
}

/// Sampled estimate of the tangent-space distance between two germs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TangentEstimate {
    /// max of d(γ₁(t),γ₂(t))/t over the tail half of the sequence.
    pub estimate: f64,
    /// (t, ratio) for every element of the sequence.
    pub ratios: Vec<(f64, f64)>,
}

/// t_k = 2^{-k}, k = 4..=24.
pub fn default_t_sequence() -> Vec<f64> {
    (4..=24).map(|k| 2f64.powi(-k)).collect()
}

/// Estimates limsup_{t→0} d(γ₁(t), γ₂(t))/t along a decreasing sequence.
pub fn tangent_distance_estimate<M: Metric>(
    g1: impl Fn(f64) -> M::Point,
    g2: impl Fn(f64) -> M::Point,
    metric: &M,
    ts: &[f64],
) -> Result<TangentEstimate> {
    if ts.is_empty() {
        return domain("t sequence is empty");
    }
    if ts[0] <= 0.0 || ts.windows(2).any(|w| !(w[1] < w[0] && w[1] > 0.0)) {
        return domain("t sequence must be positive and strictly decreasing");
    }
    let base_gap = metric.distance(&g1(0.0), &g2(0.0));
    if base_gap > 1e-12 {
        return domain(format!(
            "germs have different basepoints (distance {base_gap})"
        ));
    }
    let ratios: Vec<(f64, f64)> = ts
        .iter()
        .map(|&t| (t, metric.distance(&g1(t), &g2(t)) / t))
        .collect();
    let estimate = ratios[ratios.len() / 2..]
        .iter()
        .map(|r| r.1)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(TangentEstimate { estimate, ratios })
}

/// B(x,y) over a finite sample of Δ and the sample point realizing it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CenterResult<P> {
    pub b: f64,
    pub center: P,
    pub index: usize,
    /// d(x, y), a lower bound for `b`.
    pub direct: f64,
}

/// Minimizes d(x,c) + d(c,y) over the sampled points c of Δ.
pub fn center_and_b<M: Metric>(
    metric: &M,
    delta: &[M::Point],
    x: &M::Point,
    y: &M::Point,
) -> Result<CenterResult<M::Point>> {
    let (index, b) = delta
        .iter()
        .map(|c| metric.distance(x, c) + metric.distance(c, y))
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .ok_or_else(|| Error::Domain("Δ sample is empty".into()))?;
    Ok(CenterResult {
        b,
        center: delta[index].clone(),
        index,
        direct: metric.distance(x, y),
    })
}

/// Result of scanning balls around one probe point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeResult {
    pub distance_to_delta: f64,
    pub radius: f64,
    pub passed: usize,
    pub failed: usize,
    pub worst: Option<CatWitness>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HypothesisCReport {
    pub lambda: f64,
    pub probes: Vec<ProbeResult>,
    pub passed: usize,
    pub failed: usize,
}

impl HypothesisCReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Parameters of a hypothesis (C) scan.
#[derive(Debug, Clone, Copy)]
pub struct ScanParams {
    pub lambda: f64,
    pub chi: Curvature,
    pub triangles_per_probe: usize,
    pub tolerance: f64,
    pub seed: u64,
}

/// Samples triangles inside the closed balls B(x, λ·d(x,Δ)) around each probe
/// and runs [`cat_test`] on them.
///
/// `sampler(center, radius, rng)` must return a triangle whose vertices and
/// edges lie in the ball. A sampled necessary condition, not a proof.
pub fn hypothesis_c_scan<'a, M, F>(
    metric: &M,
    delta: &[M::Point],
    probes: &[M::Point],
    params: ScanParams,
    mut sampler: F,
) -> Result<HypothesisCReport>
where
    M: Metric,
    F: FnMut(&M::Point, f64, &mut ChaCha8Rng) -> Result<TriangleSpec<'a, M::Point>>,
{
    if !(params.lambda > 0.0 && params.lambda.is_finite()) {
        return domain("λ must be a positive real");
    }
    if delta.is_empty() {
        return domain("Δ is empty, so d(x, Δ) = +∞ and the balls are unbounded");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut out = Vec::with_capacity(probes.len());
    for x in probes {
        let dist = delta
            .iter()
            .map(|c| metric.distance(x, c))
            .fold(f64::INFINITY, f64::min);
        if dist <= 0.0 {
            return domain("probe lies in Δ");
        }
        let radius = params.lambda * dist;
        let mut res = ProbeResult {
            distance_to_delta: dist,
            radius,
            passed: 0,
            failed: 0,
            worst: None,
        };
        for _ in 0..params.triangles_per_probe {
            let tri = sampler(x, radius, &mut rng)?;
            match cat_test(&tri, params.chi, metric, params.tolerance)? {
                CatVerdict::Pass { .. } => res.passed += 1,
                CatVerdict::Fail(w) => {
                    res.failed += 1;
                    if res.worst.map_or(true, |old| w.violation > old.violation) {
                        res.worst = Some(w);
                    }
                }
            }
        }
        out.push(res);
    }
    let passed = out.iter().map(|p| p.passed).sum();
    let failed = out.iter().map(|p| p.failed).sum();
    Ok(HypothesisCReport {
        lambda: params.lambda,
        probes: out,
        passed,
        failed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn flat() -> Curvature {
        Curvature::FLAT
    }

    fn plane_triangle(
        a: [f64; 2],
        b: [f64; 2],
        c: [f64; 2],
        n: usize,
    ) -> TriangleSpec<'static, [f64; 2]> {
        TriangleSpec::from_vertices(&EuclideanPlane, [a, b, c], n, |p, q| {
            EuclideanPlane::segment(*p, *q)
        })
        .unwrap()
    }

    #[test]
    fn path_length_examples() {
        assert_eq!(
            path_length(&[[0.0, 0.0], [3.0, 4.0]], &EuclideanPlane).unwrap(),
            5.0
        );
        assert_eq!(path_length(&[[1.0, 1.0]], &EuclideanPlane).unwrap(), 0.0);
        assert!(path_length::<EuclideanPlane>(&[], &EuclideanPlane).is_err());
    }

    #[test]
    fn semicircle_chord_sum_converges() {
        // Chord sum of n equal chords: 2n sin(π/2n); error ≈ π³/(24 n²) ≈ 1.3e-8.
        let n = 10_000;
        let pts: Vec<[f64; 2]> = (0..n)
            .map(|i| {
                let a = PI * i as f64 / (n - 1) as f64;
                [a.cos(), a.sin()]
            })
            .collect();
        let len = path_length(&pts, &EuclideanPlane).unwrap();
        assert!((len - PI).abs() < 1e-6);
        assert!(len <= PI);
    }

    #[test]
    fn euclidean_triangles_pass() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let mut p = || [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)];
            let tri = plane_triangle(p(), p(), p(), 12);
            let v = cat_test(&tri, flat(), &EuclideanPlane, 1e-9).unwrap();
            assert!(v.passed(), "{v:?}");
        }
    }

    #[test]
    fn triangle_spec_rejects_mismatched_edges() {
        let edges = [
            EuclideanPlane::segment([1.0, 0.0], [0.0, 1.0]),
            EuclideanPlane::segment([0.0, 1.0], [0.0, 0.0]),
            EuclideanPlane::segment([0.0, 0.0], [2.0, 0.0]),
        ];
        let r = TriangleSpec::new(
            &EuclideanPlane,
            [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]],
            edges,
            8,
        );
        assert!(r.is_err());
    }

    #[test]
    fn cat_test_rejects_inadmissible_comparison() {
        // Edge lengths of a unit-sphere-sized triangle are too long for χ = 4.
        let tri = plane_triangle([0.0, 0.0], [1.0, 0.0], [0.0, 1.0], 8);
        let r = cat_test(&tri, Curvature::new(4.0).unwrap(), &EuclideanPlane, 1e-9);
        assert!(matches!(r, Err(Error::InadmissibleTriangle(_))));
    }

    #[test]
    fn euclidean_triangles_fail_for_negative_curvature() {
        let tri = plane_triangle([0.0, 0.0], [2.0, 0.0], [1.0, 1.7], 16);
        let v = cat_test(&tri, Curvature::new(-1.0).unwrap(), &EuclideanPlane, 1e-9).unwrap();
        let w = v
            .witness()
            .expect("a flat triangle is fatter than its hyperbolic comparison");
        assert!(w.violation > 0.0);
        assert!(w.measured > w.comparison);
    }

    #[test]
    fn tangent_rays() {
        for theta in [PI / 6.0, PI / 3.0, PI / 2.0, PI] {
            let g1 = |t: f64| [t, 0.0];
            let g2 = move |t: f64| [t * theta.cos(), t * theta.sin()];
            let est =
                tangent_distance_estimate(g1, g2, &EuclideanPlane, &default_t_sequence()).unwrap();
            assert!((est.estimate - 2.0 * (theta / 2.0).sin()).abs() < 1e-8);
            assert_eq!(est.ratios.len(), 21);
        }
        let same = tangent_distance_estimate(
            |t| [t, t],
            |t| [t, t],
            &EuclideanPlane,
            &default_t_sequence(),
        )
        .unwrap();
        assert_eq!(same.estimate, 0.0);
    }

    #[test]
    fn tangent_errors() {
        let ts = default_t_sequence();
        assert!(
            tangent_distance_estimate(|t| [t, 0.0], |t| [1.0 + t, 0.0], &EuclideanPlane, &ts)
                .is_err()
        );
        assert!(tangent_distance_estimate(
            |t| [t, 0.0],
            |t| [t, 0.0],
            &EuclideanPlane,
            &[0.1, 0.2]
        )
        .is_err());
        assert!(
            tangent_distance_estimate(|t| [t, 0.0], |t| [t, 0.0], &EuclideanPlane, &[]).is_err()
        );
    }

    #[test]
    fn centers_in_the_plane() {
        let r = center_and_b(&EuclideanPlane, &[[0.0, 0.0]], &[1.0, 0.0], &[-1.0, 0.0]).unwrap();
        assert_eq!(r.b, 2.0);
        let axis: Vec<[f64; 2]> = (-100..=100).map(|i| [i as f64 * 0.01, 0.0]).collect();
        let r = center_and_b(&EuclideanPlane, &axis, &[0.0, 1.0], &[0.0, -1.0]).unwrap();
        assert!((r.b - 2.0).abs() < 1e-12);
        assert!(r.center[0].abs() < 1e-12);
        assert!(r.b >= r.direct);
        assert!(center_and_b(&EuclideanPlane, &[], &[0.0, 1.0], &[0.0, -1.0]).is_err());
    }

    #[test]
    fn alexandrov_flat_cevian() {
        // Isoceles right triangle split by its altitude.
        let k = flat();
        let r2 = 2f64.sqrt();
        // Shared side A (apex→D) = 1, next side B (D→outer) = 1, prev side C (outer→apex) = √2.
        let t = ModelTriangle::new(k, 1.0, 1.0, r2).unwrap();
        let rep = alexandrov_combine(&t, &t, Side::A, k, 9).unwrap();
        let mut sides = rep.outer.sides();
        sides.sort_by(f64::total_cmp);
        assert!((sides[0] - r2).abs() < 1e-15 && (sides[1] - r2).abs() < 1e-15);
        assert!((sides[2] - 2.0).abs() < 1e-15);
        assert!((rep.angle_sum.unwrap() - PI).abs() < 1e-12);
        assert!(rep.min_gap.abs() < 1e-9, "{}", rep.min_gap);
    }

    #[test]
    fn alexandrov_flat_arbitrary_cevian() {
        // Outer triangle with vertices (0,0), (3,0), (1,2); cevian from (1,2) to (1.8,0).
        let k = flat();
        let e = EuclideanPlane;
        let (apex, d, b, c) = ([1.0, 2.0], [1.8, 0.0], [0.0, 0.0], [3.0, 0.0]);
        let cev = e.distance(&apex, &d);
        let t1 = ModelTriangle::new(k, cev, e.distance(&d, &b), e.distance(&b, &apex)).unwrap();
        let t2 = ModelTriangle::new(k, cev, e.distance(&d, &c), e.distance(&c, &apex)).unwrap();
        let rep = alexandrov_combine(&t1, &t2, Side::A, k, 9).unwrap();
        assert!((rep.angle_sum.unwrap() - PI).abs() < 1e-12);
        assert!((rep.outer.side(Side::A) - 3.0).abs() < 1e-15);
        assert!(rep.min_gap.abs() < 1e-9, "{}", rep.min_gap);
    }

    #[test]
    fn alexandrov_rejects_small_angle_sum() {
        let k = flat();
        // Each equilateral contributes π/3 at the subdivision point.
        let t = ModelTriangle::new(k, 1.0, 1.0, 1.0).unwrap();
        assert!(matches!(
            alexandrov_combine(&t, &t, Side::A, k, 5),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn alexandrov_identity_gluing() {
        let k = flat();
        let t1 = ModelTriangle::new(k, 1.2, 0.8, 1.1).unwrap();
        // Zero-length base: t2 collapses onto the shared side.
        let t2 = ModelTriangle::new(k, 1.2, 0.0, 1.2).unwrap();
        let rep = alexandrov_combine(&t1, &t2, Side::A, k, 7).unwrap();
        assert_eq!(rep.angle_sum, None);
        let mut got = rep.outer.sides();
        let mut want = t1.sides();
        got.sort_by(f64::total_cmp);
        want.sort_by(f64::total_cmp);
        assert_eq!(got, want);
        assert!(rep.min_gap >= -1e-10);
    }

    #[test]
    fn hypothesis_c_rejects_bad_input() {
        let params = ScanParams {
            lambda: 0.5,
            chi: flat(),
            triangles_per_probe: 2,
            tolerance: 1e-9,
            seed: 0,
        };
        let sampler = |_: &[f64; 2],
                       _: f64,
                       _: &mut ChaCha8Rng|
         -> Result<TriangleSpec<'static, [f64; 2]>> { unreachable!() };
        assert!(hypothesis_c_scan(&EuclideanPlane, &[], &[[1.0, 0.0]], params, sampler).is_err());
        assert!(hypothesis_c_scan(
            &EuclideanPlane,
            &[[1.0, 0.0]],
            &[[1.0, 0.0]],
            params,
            sampler
        )
        .is_err());
    }
}
