//! Exact symmetric bilinear forms over ℚ.
//!
//! A [`GramLattice`] is a symmetric rational matrix together with basis labels;
//! vectors are rational coordinate vectors in that basis. Nothing in this
//! module touches floating point except [`omega_membership`], which accepts
//! real input, and the pruning bounds inside [`enumerate_norm_vectors`], whose
//! results are re-checked exactly.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "p/q" or "p".
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| {
        BigInt::from_str(t.trim())
            .map_err(|_| Error::Parse(format!("not a rational number: {s:?}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(parse_int(n)?, d))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// Signature (n₊, n₀, n₋) of a symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub n_plus: usize,
    pub n_zero: usize,
    pub n_minus: usize,
}

impl Signature {
    pub const fn new(n_plus: usize, n_zero: usize, n_minus: usize) -> Self {
        Signature {
            n_plus,
            n_zero,
            n_minus,
        }
    }

    pub fn rank(&self) -> usize {
        self.n_plus + self.n_zero + self.n_minus
    }

    pub fn is_positive_definite(&self) -> bool {
        self.n_zero == 0 && self.n_minus == 0
    }

    pub fn is_negative_definite(&self) -> bool {
        self.n_zero == 0 && self.n_plus == 0
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.n_plus, self.n_zero, self.n_minus)
    }
}

/// A vector of rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeVector {
    pub coords: Vec<Rational>,
}

impl LatticeVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        LatticeVector { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        LatticeVector::new(coords.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        LatticeVector::new(vec![Rational::zero(); dim])
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = LatticeVector::zero(dim);
        v.coords[i] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> LatticeVector {
        LatticeVector::new(self.coords.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> LatticeVector {
        LatticeVector::new(self.coords.iter().map(|a| -a).collect())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for LatticeVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coords.iter().map(|c| c.to_string()))
    }
}

impl<'de> Deserialize<'de> for LatticeVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map(LatticeVector::new)
            .map_err(serde::de::Error::custom)
    }
}

/// A symmetric rational Gram matrix with basis labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramLattice {
    gram: Vec<Vec<Rational>>,
    labels: Vec<String>,
}

impl GramLattice {
    /// Checks squareness and symmetry; labels default to e1, e2, ….
    pub fn new(gram: Vec<Vec<Rational>>) -> Result<Self> {
        let n = gram.len();
        for row in &gram {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return domain(format!("Gram matrix is not symmetric at ({i}, {j})"));
                }
            }
        }
        let labels = (1..=n).map(|i| format!("e{i}")).collect();
        Ok(GramLattice { gram, labels })
    }

    pub fn from_ints(rows: &[Vec<i64>]) -> Result<Self> {
        GramLattice::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: labels.len(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.gram[i][j]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// The same basis with the form multiplied by `c`.
    pub fn scaled(&self, c: &Rational) -> GramLattice {
        GramLattice {
            gram: self
                .gram
                .iter()
                .map(|r| r.iter().map(|x| x * c).collect())
                .collect(),
            labels: self.labels.clone(),
        }
    }

    /// PᵀGP for a square matrix P (columns are the new basis vectors).
    pub fn congruent(&self, p: &[Vec<Rational>]) -> Result<GramLattice> {
        let n = self.dim();
        if p.len() != n || p.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.len(),
            });
        }
        let cols: Vec<LatticeVector> = (0..n)
            .map(|j| LatticeVector::new((0..n).map(|i| p[i][j].clone()).collect()))
            .collect();
        GramLattice::new(
            cols.iter()
                .map(|a| cols.iter().map(|b| self.inner_unchecked(a, b)).collect())
                .collect(),
        )
    }

    /// Gram matrix of a list of vectors.
    pub fn gram_of(&self, vectors: &[LatticeVector]) -> Result<GramLattice> {
        for v in vectors {
            self.check(v)?;
        }
        GramLattice::new(
            vectors
                .iter()
                .map(|a| vectors.iter().map(|b| self.inner_unchecked(a, b)).collect())
                .collect(),
        )
    }

    fn check(&self, v: &LatticeVector) -> Result<()> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.dim(),
            });
        }
        Ok(())
    }

    fn inner_unchecked(&self, v: &LatticeVector, w: &LatticeVector) -> Rational {
        let mut acc = Rational::zero();
        for (i, vi) in v.coords.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            let mut row = Rational::zero();
            for (j, wj) in w.coords.iter().enumerate() {
                if !wj.is_zero() && !self.gram[i][j].is_zero() {
                    row += &self.gram[i][j] * wj;
                }
            }
            acc += vi * row;
        }
        acc
    }

    pub fn inner(&self, v: &LatticeVector, w: &LatticeVector) -> Result<Rational> {
        self.check(v)?;
        self.check(w)?;
        Ok(self.inner_unchecked(v, w))
    }

    pub fn norm(&self, v: &LatticeVector) -> Result<Rational> {
        self.inner(v, v)
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.gram
            .iter()
            .map(|r| r.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect())
            .collect()
    }
}

/// vᵀ G w.
pub fn inner(g: &GramLattice, v: &LatticeVector, w: &LatticeVector) -> Result<Rational> {
    g.inner(v, w)
}

/// Diagonal of a congruence diagonalization PᵀGP with det P = ±1.
fn congruence_diagonal(g: &GramLattice) -> Vec<Rational> {
    let n = g.dim();
    let mut a = g.gram.clone();
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // All remaining diagonal entries vanish: adding e_j to e_k makes
                // the new diagonal entry 2·a[k][j] ≠ 0.
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for row in a.iter_mut() {
                    let v = row[j].clone();
                    row[k] += v;
                }
            } else {
                continue;
            }
        }
        let pivot = a[k][k].clone();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for c in k..n {
                let v = &f * &a[k][c];
                a[i][c] -= v;
            }
            for row in a.iter_mut().skip(k) {
                let v = &f * &row[k];
                row[i] -= v;
            }
        }
    }
    (0..n).map(|i| a[i][i].clone()).collect()
}

/// Exact signature by symmetric Gaussian elimination.
pub fn signature(g: &GramLattice) -> Signature {
    let mut s = Signature::new(0, 0, 0);
    for d in congruence_diagonal(g) {
        if d.is_positive() {
            s.n_plus += 1;
        } else if d.is_negative() {
            s.n_minus += 1;
        } else {
            s.n_zero += 1;
        }
    }
    s
}

/// Exact determinant (the congruences used have determinant ±1).
pub fn determinant(g: &GramLattice) -> Rational {
    congruence_diagonal(g)
        .into_iter()
        .fold(Rational::one(), |acc, d| acc * d)
}

/// Orthogonal direct sum.
pub fn direct_sum(parts: &[GramLattice]) -> GramLattice {
    let n: usize = parts.iter().map(GramLattice::dim).sum();
    let mut gram = vec![vec![Rational::zero(); n]; n];
    let mut labels = Vec::with_capacity(n);
    let mut off = 0;
    for (k, p) in parts.iter().enumerate() {
        for i in 0..p.dim() {
            for j in 0..p.dim() {
                gram[off + i][off + j] = p.gram[i][j].clone();
            }
            labels.push(if parts.len() > 1 {
                format!("{}.{}", k + 1, p.labels[i])
            } else {
                p.labels[i].clone()
            });
        }
        off += p.dim();
    }
    GramLattice { gram, labels }
}

/// Edges of the E8 Dynkin diagram in Bourbaki numbering: the chain
/// 1–3–4–5–6–7–8 with node 2 attached to node 4.
pub const E8_EDGES: [(usize, usize); 7] = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)];

/// sign · (E8 Cartan matrix), with labels a1..a8.
pub fn e8_gram(sign: i64) -> GramLattice {
    assert!(sign == 1 || sign == -1, "sign must be ±1");
    let mut g = vec![vec![0i64; 8]; 8];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = 2 * sign;
    }
    for (a, b) in E8_EDGES {
        g[a - 1][b - 1] = -sign;
        g[b - 1][a - 1] = -sign;
    }
    GramLattice::from_ints(&g)
        .expect("symmetric by construction")
        .with_labels((1..=8).map(|i| format!("a{i}")).collect())
        .expect("eight labels")
}

/// The hyperbolic plane U with basis e, f: e·e = f·f = 0, e·f = 1.
pub fn u_gram() -> GramLattice {
    GramLattice::from_ints(&[vec![0, 1], vec![1, 0]])
        .expect("symmetric")
        .with_labels(vec!["e".into(), "f".into()])
        .expect("two labels")
}

/// The K3 lattice E8(−1)² ⊕ U³, so that roots have norm −2.
pub fn k3_gram() -> GramLattice {
    direct_sum(&[e8_gram(-1), e8_gram(-1), u_gram(), u_gram(), u_gram()])
}

/// Row-reduces `m` in place; returns pivot columns.
fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..cols {
                    let v = &f * &m[r][k];
                    m[i][k] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// The vector x in the span of the target vectors with x·vᵢ = cᵢ.
///
/// Fails with [`Error::Inconsistent`] when no such x exists and with
/// [`Error::Singular`] when the targets span a degenerate subspace on which
/// the solution is not unique.
pub fn solve_gram(g: &GramLattice, targets: &[(LatticeVector, Rational)]) -> Result<LatticeVector> {
    let n = g.dim();
    if targets.is_empty() {
        return Ok(LatticeVector::zero(n));
    }
    let vs: Vec<LatticeVector> = targets.iter().map(|(v, _)| v.clone()).collect();
    let m = g.gram_of(&vs)?;
    let k = vs.len();
    let mut aug: Vec<Vec<Rational>> = (0..k)
        .map(|i| {
            let mut row = m.gram[i].clone();
            row.push(targets[i].1.clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&k) {
        return Err(Error::Inconsistent(
            "prescribed inner products are incompatible with the span of the targets".into(),
        ));
    }
    let mut coeffs = vec![Rational::zero(); k];
    for (row, &c) in pivots.iter().enumerate() {
        coeffs[c] = aug[row][k].clone();
    }
    let x = vs
        .iter()
        .zip(&coeffs)
        .fold(LatticeVector::zero(n), |acc, (v, c)| acc.add(&v.scale(c)));
    if pivots.len() < k {
        // A consistent system on a degenerate span: x is determined only up to
        // the radical, unless every radical direction is already zero in ℚⁿ.
        let radical_nonzero = (0..k).filter(|c| !pivots.contains(c)).any(|free| {
            let mut dir = vec![Rational::zero(); k];
            dir[free] = Rational::one();
            for (row, &c) in pivots.iter().enumerate() {
                dir[c] = -aug[row][free].clone();
            }
            let v = vs
                .iter()
                .zip(&dir)
                .fold(LatticeVector::zero(n), |acc, (v, c)| acc.add(&v.scale(c)));
            !v.is_zero()
        });
        if radical_nonzero {
            return Err(Error::Singular(
                "the targets span a degenerate subspace".into(),
            ));
        }
    }
    Ok(x)
}

/// Rational basis of {x ∈ ℚⁿ : x·s = 0 for all s in `span`}.
pub fn orthogonal_complement(
    g: &GramLattice,
    span: &[LatticeVector],
) -> Result<Vec<LatticeVector>> {
    let n = g.dim();
    let mut m = Vec::with_capacity(span.len());
    for s in span {
        g.check(s)?;
        m.push(
            (0..n)
                .map(|j| g.inner_unchecked(s, &LatticeVector::basis(n, j)))
                .collect::<Vec<_>>(),
        );
    }
    let pivots = rref(&mut m);
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); n];
        v[free] = Rational::one();
        for (row, &c) in pivots.iter().enumerate() {
            v[c] = -m[row][free].clone();
        }
        basis.push(LatticeVector::new(v));
    }
    Ok(basis)
}

/// Integer vectors of a prescribed norm in a definite lattice.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Enumeration {
    pub vectors: Vec<LatticeVector>,
    /// Whether the coefficient box is provably large enough to contain every
    /// vector of this norm.
    pub complete: bool,
}

/// Rational matrix inverse by Gauss–Jordan elimination.
fn inverse(g: &GramLattice) -> Result<Vec<Vec<Rational>>> {
    let n = g.dim();
    let mut aug: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row = g.gram[i].clone();
            row.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
        return Err(Error::Singular("Gram matrix is not invertible".into()));
    }
    Ok(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Every integer vector x with x·x = `norm` and |xᵢ| ≤ `coeff_bound`, by
/// Fincke–Pohst enumeration inside the box.
///
/// The result is flagged complete when (bound + 1)² exceeds |norm|·(G⁻¹)ᵢᵢ
/// for every i, which bounds every coordinate of a vector of that norm.
pub fn enumerate_norm_vectors(
    g: &GramLattice,
    norm: &Rational,
    coeff_bound: u64,
) -> Result<Enumeration> {
    let sig = signature(g);
    let sign = if sig.is_positive_definite() {
        Rational::one()
    } else if sig.is_negative_definite() {
        -Rational::one()
    } else {
        return Err(Error::Indefinite(format!(
            "short-vector enumeration needs a definite form, signature is {sig}"
        )));
    };
    let n = g.dim();
    let target = norm * &sign;
    if target.is_negative() {
        return Ok(Enumeration {
            vectors: Vec::new(),
            complete: true,
        });
    }
    let pos = g.scaled(&sign);
    let inv = inverse(&pos)?;
    let bound_sq = rat((coeff_bound as i64 + 1).pow(2));
    let complete = (0..n).all(|i| bound_sq > &target * &inv[i][i]);

    // Q(x) = Σ qᵢᵢ (xᵢ + Σ_{j>i} qᵢⱼ xⱼ)², computed exactly then rounded.
    let mut q = pos.gram.clone();
    for i in 0..n {
        for j in i + 1..n {
            let v = &q[i][j] / &q[i][i];
            q[j][i] = q[i][j].clone();
            q[i][j] = v;
        }
        for k in i + 1..n {
            for l in k..n {
                let v = &q[k][i] * &q[i][l];
                q[k][l] -= v;
            }
        }
    }
    let qf: Vec<Vec<f64>> = q
        .iter()
        .map(|r| r.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect())
        .collect();
    let t = target.to_f64().unwrap_or(f64::INFINITY);
    let slack = 1e-9 * (1.0 + t);
    let b = coeff_bound as i64;

    let mut vectors = Vec::new();
    let mut x = vec![0i64; n];
    // Depth-first over i = n−1, …, 0 with remaining budgets.
    fn recurse(
        i: usize,
        remaining: f64,
        x: &mut [i64],
        qf: &[Vec<f64>],
        b: i64,
        slack: f64,
        emit: &mut dyn FnMut(&[i64]),
    ) {
        let n = x.len();
        let center: f64 = -(i + 1..n).map(|j| qf[i][j] * x[j] as f64).sum::<f64>();
        let radius = ((remaining + slack).max(0.0) / qf[i][i]).sqrt();
        let lo = ((center - radius).ceil() as i64).max(-b);
        let hi = ((center + radius).floor() as i64).min(b);
        for xi in lo..=hi {
            x[i] = xi;
            let d = xi as f64 - center;
            let rest = remaining - qf[i][i] * d * d;
            if rest < -slack {
                continue;
            }
            if i == 0 {
                emit(x);
            } else {
                recurse(i - 1, rest, x, qf, b, slack, emit);
            }
        }
        x[i] = 0;
    }
    if n == 0 {
        if target.is_zero() {
            vectors.push(LatticeVector::zero(0));
        }
        return Ok(Enumeration {
            vectors,
            complete: true,
        });
    }
    let mut emit = |c: &[i64]| {
        let v = LatticeVector::from_ints(c);
        if pos.inner_unchecked(&v, &v) == target {
            vectors.push(v);
        }
    };
    recurse(n - 1, t, &mut x, &qf, b, slack, &mut emit);
    vectors.sort_by(|a, b| a.coords.cmp(&b.coords));
    Ok(Enumeration { vectors, complete })
}

/// Inner products behind a period-domain membership test.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OmegaReport {
    pub member: bool,
    pub re_norm: f64,
    pub im_norm: f64,
    pub cross: f64,
}

fn require_signature_2n(g: &GramLattice) -> Result<Signature> {
    let sig = signature(g);
    if sig.n_plus != 2 || sig.n_zero != 0 {
        return domain(format!("period domain needs signature (2,0,n), got {sig}"));
    }
    Ok(sig)
}

/// Whether x = re + i·im satisfies x·x = 0 and x·x̄ > 0, i.e. re, im are
/// orthogonal of equal positive norm, up to `tolerance` relative to the norms.
pub fn omega_membership(
    g: &GramLattice,
    re: &[f64],
    im: &[f64],
    tolerance: f64,
) -> Result<OmegaReport> {
    require_signature_2n(g)?;
    let n = g.dim();
    for v in [re, im] {
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
    }
    let gf = g.to_f64();
    let ip = |a: &[f64], b: &[f64]| -> f64 {
        (0..n)
            .map(|i| a[i] * (0..n).map(|j| gf[i][j] * b[j]).sum::<f64>())
            .sum()
    };
    let (rr, ii, ri) = (ip(re, re), ip(im, im), ip(re, im));
    let scale = 1.0f64.max(rr.abs()).max(ii.abs());
    let member = rr > tolerance * scale
        && (rr - ii).abs() <= tolerance * scale
        && ri.abs() <= tolerance * scale;
    Ok(OmegaReport {
        member,
        re_norm: rr,
        im_norm: ii,
        cross: ri,
    })
}

/// Exact version of [`omega_membership`] for rational vectors.
pub fn omega_membership_exact(
    g: &GramLattice,
    re: &LatticeVector,
    im: &LatticeVector,
) -> Result<bool> {
    require_signature_2n(g)?;
    let rr = g.inner(re, re)?;
    let ii = g.inner(im, im)?;
    let ri = g.inner(re, im)?;
    Ok(rr.is_positive() && rr == ii && ri.is_zero())
}

#[derive(Serialize, Deserialize)]
struct GramJson {
    labels: Vec<String>,
    gram: Vec<Vec<String>>,
}

impl Serialize for GramLattice {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GramJson {
            labels: self.labels.clone(),
            gram: self
                .gram
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GramLattice {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = GramJson::deserialize(d)?;
        let gram = raw
            .gram
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        GramLattice::new(gram)
            .and_then(|g| g.with_labels(raw.labels))
            .map_err(serde::de::Error::custom)
    }
}
