//! Graph approximations of surfaces of revolution.
//!
//! The surface is parametrized by (x, φ) with x in [x_min, x_max] and φ
//! periodic, carrying the metric ds² = (1 + r′(x)²) dx² + r(x)² dφ². The mesh
//! has `nx + 1` rings of `nphi` vertices; every vertex is joined to its eight
//! grid neighbors, with weights given by the metric at the edge midpoint.
//! Shortest paths in the graph are upper bounds for surface distances.
//!
//! The cusped surface r = x² is the one obtained by rotating y = x² about the
//! x-axis. Its cusp at x = 0 is not part of the mesh; statements about it are
//! limits as x_min shrinks.
//!
//! A window mesh unrolls `turns` full turns of φ without identifying the ends,
//! a finite piece of the universal cover of the surface minus the cusp.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::TAU;

use serde::Serialize;

use crate::error::{domain, Result};

/// Profile radius r(x) of the surface of revolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    /// r(x) = x².
    Parabola,
    /// r(x) = 1.
    Cylinder,
}

impl Profile {
    pub fn radius(self, x: f64) -> f64 {
        match self {
            Profile::Parabola => x * x,
            Profile::Cylinder => 1.0,
        }
    }

    pub fn slope(self, x: f64) -> f64 {
        match self {
            Profile::Parabola => 2.0 * x,
            Profile::Cylinder => 0.0,
        }
    }
}

/// Grid neighbor offsets (ring step, column step).
const NEIGHBORS: [(i64, i64); 8] = [
    (-1, -1),
    (-1, 0),
    (-1, 1),
    (0, -1),
    (0, 1),
    (1, -1),
    (1, 0),
    (1, 1),
];

#[derive(Debug, Clone, Serialize)]
pub struct RevolutionMesh {
    profile: Profile,
    x_min: f64,
    x_max: f64,
    nx: usize,
    nphi: usize,
    /// `None` for the periodic surface, `Some(k)` for a window of k turns.
    turns: Option<usize>,
    #[serde(skip)]
    weights: Vec<[f64; 8]>,
}

/// Mesh of the cusped surface r = x² on [x_min, x_max].
pub fn revolution_mesh(x_min: f64, x_max: f64, nx: usize, nphi: usize) -> Result<RevolutionMesh> {
    RevolutionMesh::new(Profile::Parabola, x_min, x_max, nx, nphi)
}

impl RevolutionMesh {
    /// `nx` and `nphi` count intervals: there are `nx + 1` rings and `nphi`
    /// columns, so doubling both refines the previous grid.
    pub fn new(profile: Profile, x_min: f64, x_max: f64, nx: usize, nphi: usize) -> Result<Self> {
        if !(x_min > 0.0 && x_min < x_max && x_max.is_finite()) {
            return domain(format!("need 0 < x_min < x_max, got [{x_min}, {x_max}]"));
        }
        if nx < 8 || nphi < 8 {
            return domain(format!(
                "resolutions must be at least 8, got nx={nx}, nphi={nphi}"
            ));
        }
        let mut mesh = RevolutionMesh {
            profile,
            x_min,
            x_max,
            nx,
            nphi,
            turns: None,
            weights: Vec::new(),
        };
        let dphi = TAU / nphi as f64;
        mesh.weights = (0..=nx)
            .map(|i| {
                let x0 = mesh.ring_x(i);
                let mut w = [f64::NAN; 8];
                for (k, &(di, dj)) in NEIGHBORS.iter().enumerate() {
                    let i1 = i as i64 + di;
                    if i1 < 0 || i1 > nx as i64 {
                        continue;
                    }
                    let x1 = mesh.ring_x(i1 as usize);
                    let xm = 0.5 * (x0 + x1);
                    let dx = x1 - x0;
                    let dp = dj as f64 * dphi;
                    let slope = profile.slope(xm);
                    let r = profile.radius(xm);
                    w[k] = ((1.0 + slope * slope) * dx * dx + r * r * dp * dp).sqrt();
                }
                w
            })
            .collect();
        Ok(mesh)
    }

    /// An unrolled window of `turns` turns with `nphi` columns per turn and
    /// no identification between the first and last column.
    pub fn window(
        profile: Profile,
        x_min: f64,
        x_max: f64,
        nx: usize,
        nphi: usize,
        turns: usize,
    ) -> Result<Self> {
        if turns == 0 {
            return domain("a window needs at least one turn");
        }
        let mut mesh = Self::new(profile, x_min, x_max, nx, nphi)?;
        mesh.turns = Some(turns);
        Ok(mesh)
    }

    pub fn is_periodic(&self) -> bool {
        self.turns.is_none()
    }

    /// Number of columns: `nphi` per turn.
    pub fn columns(&self) -> usize {
        self.nphi * self.turns.unwrap_or(1)
    }

    pub fn profile(&self) -> Profile {
        self.profile
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn nphi(&self) -> usize {
        self.nphi
    }

    pub fn vertex_count(&self) -> usize {
        (self.nx + 1) * self.columns()
    }

    pub fn ring_x(&self, i: usize) -> f64 {
        self.x_min + (self.x_max - self.x_min) * i as f64 / self.nx as f64
    }

    pub fn column_phi(&self, j: usize) -> f64 {
        TAU * j as f64 / self.nphi as f64
    }

    /// Ring whose x is closest to `x`.
    pub fn nearest_ring(&self, x: f64) -> usize {
        let t = (x - self.x_min) / (self.x_max - self.x_min) * self.nx as f64;
        t.round().clamp(0.0, self.nx as f64) as usize
    }

    /// Vertex id; columns wrap around on the periodic surface.
    pub fn vertex(&self, ring: usize, column: usize) -> usize {
        let cols = self.columns();
        ring * cols
            + if self.is_periodic() {
                column % cols
            } else {
                column.min(cols - 1)
            }
    }

    /// (ring, column) of a vertex id.
    pub fn ring_column(&self, v: usize) -> (usize, usize) {
        (v / self.columns(), v % self.columns())
    }

    /// (x, φ) of a vertex id.
    pub fn coords(&self, v: usize) -> (f64, f64) {
        let (i, j) = self.ring_column(v);
        (self.ring_x(i), self.column_phi(j))
    }

    fn check(&self, v: usize) -> Result<()> {
        if v >= self.vertex_count() {
            return domain(format!(
                "vertex {v} out of range (mesh has {})",
                self.vertex_count()
            ));
        }
        Ok(())
    }

    /// Neighbors of `v` with edge weights.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let (i, j) = self.ring_column(v);
        let n = self.columns() as i64;
        let periodic = self.is_periodic();
        NEIGHBORS
            .iter()
            .enumerate()
            .filter_map(move |(k, &(di, dj))| {
                let w = self.weights[i][k];
                if w.is_nan() {
                    return None;
                }
                let i1 = (i as i64 + di) as usize;
                let j1 = j as i64 + dj;
                let j1 = if periodic {
                    j1.rem_euclid(n)
                } else if (0..n).contains(&j1) {
                    j1
                } else {
                    return None;
                };
                Some((self.vertex(i1, j1 as usize), w))
            })
    }

    /// Length of the meridian from ring 0 to ring `i` along graph edges.
    pub fn meridian_length(&self, i: usize) -> f64 {
        (0..i).map(|k| self.weights[k][6]).sum()
    }

    /// Ring whose meridian distance from ring 0 is closest to `s`.
    pub fn ring_at_meridian_length(&self, s: f64) -> usize {
        let mut acc = 0.0;
        for i in 0..self.nx {
            let next = acc + self.weights[i][6];
            if next >= s {
                return if s - acc <= next - s { i } else { i + 1 };
            }
            acc = next;
        }
        self.nx
    }

    /// Length of the profile curve from the cusp x = 0 to ring `i`: the
    /// closed-form arclength up to x_min plus the graph meridian. Only the
    /// parabola has a cusp.
    pub fn cusp_distance(&self, i: usize) -> Result<f64> {
        match self.profile {
            Profile::Parabola => Ok(parabola_arclength(self.x_min) + self.meridian_length(i)),
            Profile::Cylinder => domain("the cylinder has no cusp"),
        }
    }

    /// Single-source shortest paths; `blocked` vertices are never entered.
    fn dijkstra(
        &self,
        sources: &[usize],
        target: Option<usize>,
        blocked: &dyn Fn(usize) -> bool,
    ) -> (Vec<f64>, Vec<usize>) {
        let n = self.vertex_count();
        let mut dist = vec![f64::INFINITY; n];
        let mut prev = vec![usize::MAX; n];
        let mut heap = BinaryHeap::new();
        for &s in sources {
            dist[s] = 0.0;
            heap.push(Entry { d: 0.0, v: s });
        }
        while let Some(Entry { d, v }) = heap.pop() {
            if d > dist[v] {
                continue;
            }
            if Some(v) == target {
                break;
            }
            for (w, len) in self.neighbors(v) {
                if blocked(w) {
                    continue;
                }
                let nd = d + len;
                if nd < dist[w] {
                    dist[w] = nd;
                    prev[w] = v;
                    heap.push(Entry { d: nd, v: w });
                }
            }
        }
        (dist, prev)
    }

    fn shortest_path(
        &self,
        a: usize,
        b: usize,
        blocked: &dyn Fn(usize) -> bool,
    ) -> Result<MeshPath> {
        self.check(a)?;
        self.check(b)?;
        let (dist, prev) = self.dijkstra(&[a], Some(b), blocked);
        if dist[b].is_infinite() {
            return domain(format!("vertex {b} is unreachable from {a}"));
        }
        let mut path = vec![b];
        while *path.last().unwrap() != a {
            path.push(prev[*path.last().unwrap()]);
        }
        path.reverse();
        Ok(MeshPath {
            length: dist[b],
            path,
        })
    }

    /// Distances from every vertex to the nearest of `sources`.
    pub fn distances_from(&self, sources: &[usize]) -> Result<Vec<f64>> {
        for &s in sources {
            self.check(s)?;
        }
        Ok(self.dijkstra(sources, None, &|_| false).0)
    }

    /// Vertex list and undirected edge list (each edge once).
    pub fn export(&self) -> MeshExport {
        let vertices = (0..self.vertex_count())
            .map(|v| {
                let (x, phi) = self.coords(v);
                ExportVertex { x, phi }
            })
            .collect();
        let mut edges = Vec::new();
        for v in 0..self.vertex_count() {
            for (w, len) in self.neighbors(v) {
                if v < w {
                    edges.push(ExportEdge { i: v, j: w, w: len });
                }
            }
        }
        MeshExport { vertices, edges }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Entry {
    d: f64,
    v: usize,
}

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .d
            .total_cmp(&self.d)
            .then_with(|| other.v.cmp(&self.v))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeshPath {
    pub length: f64,
    pub path: Vec<usize>,
}

/// ∫₀ˣ √(1 + 4s²) ds.
pub fn parabola_arclength(x: f64) -> f64 {
    let s = (1.0 + 4.0 * x * x).sqrt();
    0.5 * x * s + 0.25 * (2.0 * x + s).ln()
}

/// d(γ(s), γ′(s))/s for two meridian germs leaving the cusp a given number of
/// columns apart, where s is the distance to the cusp (see
/// [`RevolutionMesh::cusp_distance`]). Tends to 0 as s shrinks when the
/// tangent space at the cusp is a ray; a cone point would give a positive limit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CuspGerms {
    pub column_offset: usize,
    /// (s, ratio) for each requested s, largest s first.
    pub ratios: Vec<(f64, f64)>,
}

pub fn cusp_germ_ratios(
    mesh: &RevolutionMesh,
    column_offset: usize,
    s_values: &[f64],
) -> Result<CuspGerms> {
    if s_values.iter().any(|&s| !(s > 0.0)) {
        return domain("germ distances must be positive");
    }
    let offset0 = mesh.cusp_distance(0)?;
    let mut ratios = Vec::with_capacity(s_values.len());
    let mut sorted = s_values.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    for s in sorted {
        if s < offset0 {
            return domain(format!(
                "s = {s} lies inside the excluded disk around the cusp (radius {offset0})"
            ));
        }
        let ring = mesh.ring_at_meridian_length(s - offset0);
        let s_ring = mesh.cusp_distance(ring)?;
        let d = mesh_distance(mesh, mesh.vertex(ring, 0), mesh.vertex(ring, column_offset))?.length;
        ratios.push((s_ring, d / s_ring));
    }
    Ok(CuspGerms {
        column_offset,
        ratios,
    })
}

/// Shortest path between two vertices.
pub fn mesh_distance(mesh: &RevolutionMesh, a: usize, b: usize) -> Result<MeshPath> {
    mesh.shortest_path(a, b, &|_| false)
}

/// Two shortest paths between antipodal vertices of a ring, one on each side.
#[derive(Debug, Clone, Serialize)]
pub struct Bigon {
    pub paths: [MeshPath; 2],
    /// Longer length over shorter length.
    pub length_ratio: f64,
    /// Largest distance from a vertex of the second path to the first path.
    pub separation: f64,
    /// `separation` over the mean path length.
    pub normalized_separation: f64,
}

/// Shortest paths from `a` to the antipodal vertex `b` of the same ring, each
/// forced to one side by cutting the mesh along the meridian a quarter turn
/// away on the other side.
pub fn mesh_bigon(mesh: &RevolutionMesh, a: usize, b: usize) -> Result<Bigon> {
    mesh.check(a)?;
    mesh.check(b)?;
    if !mesh.is_periodic() {
        return domain("the bigon lives on the periodic surface, not on a window");
    }
    let n = mesh.nphi;
    if n % 4 != 0 {
        return domain(format!("the bigon needs nphi divisible by 4, got {n}"));
    }
    let (ia, ja) = mesh.ring_column(a);
    let (ib, jb) = mesh.ring_column(b);
    if ia != ib || (ja + n / 2) % n != jb {
        return domain(format!(
            "vertices {a} and {b} are not antipodal on one ring"
        ));
    }
    let cut_plus = (ja + n / 4) % n;
    let cut_minus = (ja + 3 * n / 4) % n;
    let p1 = mesh.shortest_path(a, b, &|v| v % n == cut_plus)?;
    let p2 = mesh.shortest_path(a, b, &|v| v % n == cut_minus)?;
    let to_first = mesh.distances_from(&p1.path)?;
    let separation = p2.path.iter().map(|&v| to_first[v]).fold(0.0, f64::max);
    let (lo, hi) = if p1.length <= p2.length {
        (p1.length, p2.length)
    } else {
        (p2.length, p1.length)
    };
    let mean = 0.5 * (lo + hi);
    Ok(Bigon {
        length_ratio: hi / lo,
        normalized_separation: separation / mean,
        separation,
        paths: [p1, p2],
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ExportVertex {
    pub x: f64,
    pub phi: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExportEdge {
    pub i: usize,
    pub j: usize,
    pub w: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct MeshExport {
    pub vertices: Vec<ExportVertex>,
    pub edges: Vec<ExportEdge>,
}
