//! Finite ADE root systems, reflections and mirror arrangements.
//!
//! Roots are exact rational vectors in a standard Euclidean model:
//! A_n in ℝⁿ⁺¹ (eᵢ − eᵢ₊₁), D_n in ℝⁿ (eᵢ − eᵢ₊₁ and e_{n−1} + e_n), and
//! E6 ⊂ E7 ⊂ E8 in ℝ⁸ with Bourbaki's simple roots. All roots have norm 2.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::lattice::{frac, rat, LatticeVector, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    A,
    D,
    E,
}

/// An irreducible simply-laced type such as A2, D4 or E8.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CoxeterType {
    pub family: Family,
    pub rank: usize,
}

impl CoxeterType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if !ok {
            return domain(format!("no root system of type {family:?}{rank}"));
        }
        Ok(CoxeterType { family, rank })
    }

    /// Number of roots.
    pub fn root_count(&self) -> usize {
        let n = self.rank;
        match (self.family, n) {
            (Family::A, _) => n * (n + 1),
            (Family::D, _) => 2 * n * (n - 1),
            (Family::E, 6) => 72,
            (Family::E, 7) => 126,
            (Family::E, _) => 240,
        }
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for CoxeterType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(Error::Parse(format!("unknown root system type {s:?}"))),
        };
        let rank = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank in {s:?}")))?;
        CoxeterType::new(family, rank)
    }
}

impl Serialize for CoxeterType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Euclidean dot product.
pub fn dot(a: &LatticeVector, b: &LatticeVector) -> Result<Rational> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(a.coords
        .iter()
        .zip(&b.coords)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y))
}

/// v − (2⟨v,α⟩/⟨α,α⟩) α.
pub fn reflect(root: &LatticeVector, v: &LatticeVector) -> Result<LatticeVector> {
    let rr = dot(root, root)?;
    if rr.is_zero() {
        return domain("cannot reflect in the zero vector");
    }
    let c = dot(v, root)? * rat(2) / rr;
    Ok(v.sub(&root.scale(&c)))
}

/// The reflecting hyperplane α^⊥ of a root, identified with ±α.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Mirror {
    pub root: LatticeVector,
}

impl Mirror {
    /// Normalizes the sign so the first nonzero coordinate is positive.
    pub fn new(root: LatticeVector) -> Result<Self> {
        let first = root.coords.iter().find(|c| !c.is_zero());
        match first {
            None => domain("the zero vector defines no mirror"),
            Some(c) if *c < Rational::zero() => Ok(Mirror { root: root.neg() }),
            Some(_) => Ok(Mirror { root }),
        }
    }

    pub fn contains(&self, x: &LatticeVector) -> Result<bool> {
        Ok(dot(&self.root, x)?.is_zero())
    }

    pub fn reflect(&self, v: &LatticeVector) -> Result<LatticeVector> {
        reflect(&self.root, v)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RootSystem {
    #[serde(rename = "type")]
    pub kind: CoxeterType,
    pub rank: usize,
    pub ambient_dim: usize,
    pub simple: Vec<LatticeVector>,
    pub roots: Vec<LatticeVector>,
}

fn unit(dim: usize, i: usize, c: i64) -> LatticeVector {
    let mut v = LatticeVector::zero(dim);
    v.coords[i] = rat(c);
    v
}

/// Bourbaki simple roots of E8 in ℝ⁸; E7 and E6 use the first 7 and 6.
pub fn e8_simple_roots() -> Vec<LatticeVector> {
    let half = frac(1, 2);
    let mut a1 = vec![-half.clone(); 8];
    a1[0] = half.clone();
    a1[7] = half;
    let mut roots = vec![LatticeVector::new(a1), unit(8, 0, 1).add(&unit(8, 1, 1))];
    for i in 0..6 {
        roots.push(unit(8, i + 1, 1).sub(&unit(8, i, 1)));
    }
    roots
}

pub fn simple_roots(kind: CoxeterType) -> Vec<LatticeVector> {
    let n = kind.rank;
    match kind.family {
        Family::A => (0..n)
            .map(|i| unit(n + 1, i, 1).sub(&unit(n + 1, i + 1, 1)))
            .collect(),
        Family::D => {
            let mut s: Vec<_> = (0..n - 1)
                .map(|i| unit(n, i, 1).sub(&unit(n, i + 1, 1)))
                .collect();
            s.push(unit(n, n - 2, 1).add(&unit(n, n - 1, 1)));
            s
        }
        Family::E => e8_simple_roots().into_iter().take(n).collect(),
    }
}

/// Closure of the simple roots under the simple reflections.
pub fn generate_roots(kind: CoxeterType) -> Result<RootSystem> {
    let simple = simple_roots(kind);
    let mut seen: HashSet<LatticeVector> = simple.iter().cloned().collect();
    let mut roots = simple.clone();
    let mut queue: VecDeque<LatticeVector> = simple.iter().cloned().collect();
    while let Some(r) = queue.pop_front() {
        for s in &simple {
            let img = reflect(s, &r)?;
            if seen.insert(img.clone()) {
                roots.push(img.clone());
                queue.push_back(img);
            }
        }
    }
    if roots.len() != kind.root_count() {
        return Err(Error::Invariant(format!(
            "{kind} closure produced {} roots, expected {}",
            roots.len(),
            kind.root_count()
        )));
    }
    roots.sort_by(|a, b| a.coords.cmp(&b.coords));
    Ok(RootSystem {
        kind,
        rank: kind.rank,
        ambient_dim: simple[0].dim(),
        simple,
        roots,
    })
}

impl RootSystem {
    pub fn contains(&self, v: &LatticeVector) -> bool {
        self.roots
            .binary_search_by(|r| r.coords.cmp(&v.coords))
            .is_ok()
    }

    /// One mirror per pair ±α.
    pub fn mirrors(&self) -> Vec<Mirror> {
        let mut out: Vec<Mirror> = self
            .roots
            .iter()
            .filter_map(|r| Mirror::new(r.clone()).ok())
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        out.sort_by(|a, b| a.root.coords.cmp(&b.root.coords));
        out
    }

    /// Coordinates of a root in the basis of simple roots.
    pub fn simple_coordinates(&self, v: &LatticeVector) -> Result<Vec<Rational>> {
        let g: Vec<Vec<Rational>> = self
            .simple
            .iter()
            .map(|a| self.simple.iter().map(|b| dot(a, b)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        let rhs: Vec<Rational> = self
            .simple
            .iter()
            .map(|a| dot(a, v))
            .collect::<Result<_>>()?;
        solve_square(g, rhs)
    }
}

/// Solves a nonsingular square system exactly.
fn solve_square(mut a: Vec<Vec<Rational>>, rhs: Vec<Rational>) -> Result<Vec<Rational>> {
    let n = a.len();
    for (row, r) in a.iter_mut().zip(rhs) {
        row.push(r);
    }
    for c in 0..n {
        let p = (c..n)
            .find(|&i| !a[i][c].is_zero())
            .ok_or_else(|| Error::Singular("simple roots are linearly dependent".into()))?;
        a.swap(c, p);
        let inv = Rational::one() / &a[c][c];
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in c..=n {
                    let v = &f * &a[c][k];
                    a[i][k] -= v;
                }
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n].clone()).collect())
}

/// Roots orthogonal to a point: the arrangement seen locally near it.
#[derive(Debug, Clone, Serialize)]
pub struct LocalSubsystem {
    pub point: LatticeVector,
    pub roots: Vec<LatticeVector>,
    /// Dimension of the span of `roots`.
    pub rank: usize,
}

/// All roots α with ⟨α, x⟩ = 0, checked to be closed under their own
/// reflections.
pub fn local_subsystem(rs: &RootSystem, x: &LatticeVector) -> Result<LocalSubsystem> {
    let mut roots = Vec::new();
    for r in &rs.roots {
        if dot(r, x)?.is_zero() {
            roots.push(r.clone());
        }
    }
    if !reflection_closed(&roots)? {
        return Err(Error::Invariant(format!(
            "local subsystem at {x} is not reflection-closed"
        )));
    }
    let rank = span_rank(&roots);
    Ok(LocalSubsystem {
        point: x.clone(),
        roots,
        rank,
    })
}

/// Closure of a set of norm-2 roots under their own reflections. Roots with
/// half-integral coordinates are checked in doubled integer coordinates.
fn reflection_closed(roots: &[LatticeVector]) -> Result<bool> {
    let two = rat(2);
    let doubled: Option<Vec<Vec<i64>>> = roots
        .iter()
        .map(|r| {
            r.coords
                .iter()
                .map(|c| {
                    let d = c * &two;
                    if d.is_integer() {
                        d.to_integer().try_into().ok()
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect();
    if let (Some(doubled), true) = (
        doubled,
        roots.iter().all(|r| dot(r, r).map_or(false, |n| n == two)),
    ) {
        let set: HashSet<&Vec<i64>> = doubled.iter().collect();
        for a in &doubled {
            for b in &doubled {
                // Coordinates are doubled, so ⟨a,b⟩ = (2a)·(2b)/4.
                let c = a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>() / 4;
                let img: Vec<i64> = b.iter().zip(a).map(|(y, x)| y - c * x).collect();
                if !set.contains(&img) {
                    return Ok(false);
                }
            }
        }
        return Ok(true);
    }
    let set: HashSet<&LatticeVector> = roots.iter().collect();
    for a in roots {
        for b in roots {
            if !set.contains(&reflect(a, b)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn span_rank(vs: &[LatticeVector]) -> usize {
    let mut m: Vec<Vec<Rational>> = vs.iter().map(|v| v.coords.clone()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for k in c..cols {
                    let v = &f * &m[r][k];
                    m[i][k] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// Whether z = re + i·im lies on the complexified mirror of `root`.
pub fn complex_mirror_membership(
    root: &LatticeVector,
    re: &LatticeVector,
    im: &LatticeVector,
) -> Result<bool> {
    Ok(dot(root, re)?.is_zero() && dot(root, im)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{e8_gram, enumerate_norm_vectors};
    use proptest::prelude::*;
    use std::sync::LazyLock;

    static E8: LazyLock<RootSystem> = LazyLock::new(|| generate_roots(ty("E8")).unwrap());

    fn ty(s: &str) -> CoxeterType {
        s.parse().unwrap()
    }

    #[test]
    fn root_counts() {
        for (s, n) in [
            ("A1", 2),
            ("A2", 6),
            ("A3", 12),
            ("A4", 20),
            ("D4", 24),
            ("D5", 40),
            ("E6", 72),
            ("E7", 126),
            ("E8", 240),
        ] {
            let rs = generate_roots(ty(s)).unwrap();
            assert_eq!(rs.roots.len(), n, "{s}");
            assert!(rs.roots.iter().all(|r| dot(r, r).unwrap() == rat(2)));
        }
        assert!("B3".parse::<CoxeterType>().is_err());
        assert!("E9".parse::<CoxeterType>().is_err());
        assert!("D3".parse::<CoxeterType>().is_err());
    }

    #[test]
    fn e6_e7_cartan_matrices() {
        // Simple roots realize the Bourbaki diagram: ⟨αᵢ,αⱼ⟩ = −1 exactly on edges.
        let e8 = e8_gram(1);
        let s = e8_simple_roots();
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(&dot(&s[i], &s[j]).unwrap(), e8.entry(i, j));
            }
        }
    }

    #[test]
    fn reflection_closure_exhaustive_small_rank() {
        for s in ["A1", "A2", "A3", "A4", "D4"] {
            let rs = generate_roots(ty(s)).unwrap();
            for a in &rs.roots {
                assert!(rs.contains(&a.neg()));
                for b in &rs.roots {
                    assert!(rs.contains(&reflect(a, b).unwrap()));
                }
            }
        }
    }

    #[test]
    fn reflection_closure_sampled_e7_e8() {
        for s in ["E7", "E8"] {
            let rs = generate_roots(ty(s)).unwrap();
            for (i, a) in rs.roots.iter().enumerate().step_by(5) {
                for b in rs.roots.iter().skip(i % 3).step_by(3) {
                    assert!(rs.contains(&reflect(a, b).unwrap()));
                }
            }
        }
    }

    #[test]
    fn e8_two_ways() {
        let rs = generate_roots(ty("E8")).unwrap();
        let e = enumerate_norm_vectors(&e8_gram(1), &rat(2), 7).unwrap();
        assert!(e.complete);
        let mapped: HashSet<LatticeVector> = e
            .vectors
            .iter()
            .map(|c| {
                rs.simple
                    .iter()
                    .zip(&c.coords)
                    .fold(LatticeVector::zero(8), |acc, (a, k)| acc.add(&a.scale(k)))
            })
            .collect();
        let closure: HashSet<LatticeVector> = rs.roots.iter().cloned().collect();
        assert_eq!(mapped, closure);
        for r in &rs.roots {
            assert!(rs
                .simple_coordinates(r)
                .unwrap()
                .iter()
                .all(|c| c.is_integer()));
        }
    }

    #[test]
    fn reflect_basics() {
        let a = unit(3, 0, 1).sub(&unit(3, 1, 1));
        assert_eq!(reflect(&a, &a).unwrap(), a.neg());
        let v = LatticeVector::from_ints(&[1, 1, 5]);
        assert_eq!(reflect(&a, &v).unwrap(), v);
        assert!(reflect(&LatticeVector::zero(3), &v).is_err());
        assert!(Mirror::new(a.clone()).unwrap().contains(&v).unwrap());
    }

    proptest! {
        #[test]
        fn reflect_is_an_isometric_involution(v in prop::collection::vec(-20i64..20, 8), k in 0usize..240) {
            let a = &E8.roots[k];
            let v = LatticeVector::from_ints(&v);
            let w = reflect(a, &v).unwrap();
            prop_assert_eq!(reflect(a, &w).unwrap(), v.clone());
            prop_assert_eq!(dot(&w, &w).unwrap(), dot(&v, &v).unwrap());
        }

        #[test]
        fn local_subsystems_are_closed(v in prop::collection::vec(-2i64..=2, 8)) {
            let local = local_subsystem(&E8, &LatticeVector::from_ints(&v)).unwrap();
            prop_assert_eq!(local.roots.len() % 2, 0);
        }

        #[test]
        fn complex_membership_is_two_real_conditions(re in prop::collection::vec(-2i64..=2, 4), im in prop::collection::vec(-2i64..=2, 4)) {
            let rs = generate_roots(ty("D4")).unwrap();
            let (re, im) = (LatticeVector::from_ints(&re), LatticeVector::from_ints(&im));
            for r in &rs.roots {
                let both = dot(r, &re).unwrap().is_zero() && dot(r, &im).unwrap().is_zero();
                prop_assert_eq!(complex_mirror_membership(r, &re, &im).unwrap(), both);
            }
        }
    }

    #[test]
    fn nonclosed_sets_are_detected() {
        let a = unit(3, 0, 1).sub(&unit(3, 1, 1));
        let b = unit(3, 1, 1).sub(&unit(3, 2, 1));
        assert!(!reflection_closed(&[a.clone(), b.clone()]).unwrap());
        assert!(reflection_closed(&[a.clone(), a.neg()]).unwrap());
        let third = a.add(&b);
        let all = [
            a.clone(),
            b.clone(),
            third.clone(),
            a.neg(),
            b.neg(),
            third.neg(),
        ];
        assert!(reflection_closed(&all).unwrap());
        // Same check through the rational path (norm 4 vectors).
        let big = [a.scale(&rat(2)), b.scale(&rat(2))];
        assert!(!reflection_closed(&big).unwrap());
    }

    #[test]
    fn local_examples() {
        let rs = &*E8;
        assert_eq!(
            local_subsystem(rs, &LatticeVector::zero(8))
                .unwrap()
                .roots
                .len(),
            240
        );
        let generic = LatticeVector::from_ints(&[1, 2, 4, 8, 16, 32, 64, 1000]);
        assert!(local_subsystem(rs, &generic).unwrap().roots.is_empty());
        // Orthogonal to e2 − e1 only: equal first two coordinates, otherwise generic.
        let x = LatticeVector::from_ints(&[3, 3, 10, 30, 100, 300, 1000, 5000]);
        let local = local_subsystem(rs, &x).unwrap();
        assert_eq!(local.roots.len(), 2);
        assert_eq!(local.rank, 1);
        assert!(local.roots.contains(&unit(8, 1, 1).sub(&unit(8, 0, 1))));
    }

    #[test]
    fn complex_membership_examples() {
        let a = unit(3, 0, 1).sub(&unit(3, 1, 1));
        assert!(!complex_mirror_membership(&a, &a, &LatticeVector::zero(3)).unwrap());
        let p = LatticeVector::from_ints(&[1, 1, 0]);
        let q = LatticeVector::from_ints(&[0, 0, 1]);
        assert!(complex_mirror_membership(&a, &p, &q).unwrap());
        assert!(complex_mirror_membership(&a, &p, &LatticeVector::zero(2)).is_err());
    }

    #[test]
    fn json_export() {
        let rs = generate_roots(ty("A2")).unwrap();
        let v: serde_json::Value = serde_json::to_value(&rs).unwrap();
        assert_eq!(v["type"], "A2");
        assert_eq!(v["rank"], 2);
        assert_eq!(v["roots"].as_array().unwrap().len(), 6);
        assert_eq!(generate_roots(ty("E8")).unwrap().mirrors().len(), 120);
    }
}
