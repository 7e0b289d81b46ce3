//! The Y_{p,q,r} root systems in an explicit coordinate model.
//!
//! Coordinates come in blocks of sizes 1, p, q, r with the form
//! diag(1; −1,…,−1; −1,…,−1; −1,…,−1). The central root is
//! (1; 1,0,…; 1,0,…; 1,0,…) and the roots along an arm are
//! (−1,1,0,…), (0,−1,1,0,…), … inside that arm's block. Every simple root has
//! norm −2 and adjacent roots pair to 1. An arm of length p carries p − 1
//! roots besides the central one, so there are p + q + r − 2 simple roots.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::lattice::{
    frac, rat, signature, solve_gram, GramLattice, LatticeVector, Rational, Signature,
};

/// One of the three arms, in the order the triple was given.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Arm {
    P,
    Q,
    R,
}

impl Arm {
    pub const ALL: [Arm; 3] = [Arm::P, Arm::Q, Arm::R];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn end_label(self) -> &'static str {
        match self {
            Arm::P => "e_p",
            Arm::Q => "e_q",
            Arm::R => "e_r",
        }
    }
}

impl fmt::Display for Arm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.end_label())
    }
}

/// Ordered pair of arm ends: products +1 with `plus`, −1 with `minus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ETypePair {
    pub plus: Arm,
    pub minus: Arm,
}

impl ETypePair {
    pub fn new(plus: Arm, minus: Arm) -> Result<Self> {
        if plus == minus {
            return domain(format!(
                "an E-set type needs two distinct ends, got {plus} twice"
            ));
        }
        Ok(ETypePair { plus, minus })
    }

    pub fn reversed(self) -> Self {
        ETypePair {
            plus: self.minus,
            minus: self.plus,
        }
    }

    /// The unordered type {plus, minus}, smaller arm first.
    pub fn unordered(self) -> (Arm, Arm) {
        (self.plus.min(self.minus), self.plus.max(self.minus))
    }

    pub fn same_unordered(self, other: ETypePair) -> bool {
        self.unordered() == other.unordered()
    }
}

impl fmt::Display for ETypePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(+{}, -{})", self.plus, self.minus)
    }
}

/// The triple's coordinate model and simple roots.
#[derive(Debug, Clone)]
pub struct Ypqr {
    arms: [usize; 3],
    ambient: GramLattice,
    roots: Vec<LatticeVector>,
    labels: Vec<String>,
}

impl Ypqr {
    pub fn arms(&self) -> [usize; 3] {
        self.arms
    }

    pub fn arm_length(&self, arm: Arm) -> usize {
        self.arms[arm.index()]
    }

    /// The ambient form diag(1; −1 × (p+q+r)).
    pub fn ambient(&self) -> &GramLattice {
        &self.ambient
    }

    /// Simple roots: central root first, then each arm outward from the center.
    pub fn roots(&self) -> &[LatticeVector] {
        &self.roots
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Index into [`Ypqr::roots`] of the k-th root (1-based, from the center) on an arm.
    pub fn arm_root_index(&self, arm: Arm, k: usize) -> usize {
        let before: usize = self.arms[..arm.index()].iter().map(|l| l - 1).sum();
        before + k
    }

    pub fn end_index(&self, arm: Arm) -> usize {
        self.arm_root_index(arm, self.arm_length(arm) - 1)
    }

    fn block_offset(&self, arm: Arm) -> usize {
        1 + self.arms[..arm.index()].iter().sum::<usize>()
    }

    /// Gram matrix of the simple roots.
    pub fn root_gram(&self) -> GramLattice {
        self.ambient
            .gram_of(&self.roots)
            .expect("roots live in the ambient space")
    }

    /// 1 − 1/p − 1/q − 1/r: positive for hyperbolic triples, zero for the
    /// affine ones.
    pub fn defect(&self) -> Rational {
        let [p, q, r] = self.arms.map(|a| frac(1, a as i64));
        Rational::one() - p - q - r
    }
}

/// Builds the coordinate model and checks the norm and adjacency pattern exactly.
pub fn ypqr_roots(p: usize, q: usize, r: usize) -> Result<Ypqr> {
    if p < 2 || q < 2 || r < 2 {
        return domain(format!("arm lengths must be at least 2, got ({p},{q},{r})"));
    }
    let arms = [p, q, r];
    let dim = 1 + p + q + r;
    let mut diag = vec![vec![Rational::zero(); dim]; dim];
    diag[0][0] = Rational::one();
    for (i, row) in diag.iter_mut().enumerate().skip(1) {
        row[i] = -Rational::one();
    }
    let ambient = GramLattice::new(diag)?;

    let mut roots = Vec::with_capacity(p + q + r - 2);
    let mut labels = Vec::with_capacity(p + q + r - 2);
    let mut central = LatticeVector::zero(dim);
    central.coords[0] = Rational::one();
    let mut offset = 1;
    for len in arms {
        central.coords[offset] = Rational::one();
        offset += len;
    }
    roots.push(central);
    labels.push("c".to_string());
    let mut offset = 1;
    for (arm, len) in Arm::ALL.into_iter().zip(arms) {
        for k in 1..len {
            let mut v = LatticeVector::zero(dim);
            v.coords[offset + k - 1] = -Rational::one();
            v.coords[offset + k] = Rational::one();
            roots.push(v);
            let name = ["p", "q", "r"][arm.index()];
            labels.push(if k == len - 1 {
                format!("e_{name}")
            } else {
                format!("{name}{k}")
            });
        }
        offset += len;
    }
    let y = Ypqr {
        arms,
        ambient,
        roots,
        labels,
    };

    let g = y.root_gram();
    let n = y.roots.len();
    let adjacent = |i: usize, j: usize| -> bool {
        let arm_of = |k: usize| -> Option<(Arm, usize)> {
            Arm::ALL.into_iter().find_map(|a| {
                (1..y.arm_length(a))
                    .find(|&m| y.arm_root_index(a, m) == k)
                    .map(|m| (a, m))
            })
        };
        match (arm_of(i), arm_of(j)) {
            (None, Some((_, 1))) | (Some((_, 1)), None) => true,
            (Some((a, m)), Some((b, l))) => a == b && m.abs_diff(l) == 1,
            _ => false,
        }
    };
    for i in 0..n {
        for j in 0..n {
            let want = if i == j {
                rat(-2)
            } else if adjacent(i, j) {
                rat(1)
            } else {
                rat(0)
            };
            if g.entry(i, j) != &want {
                return Err(Error::Invariant(format!(
                    "Y({p},{q},{r}) roots {} and {} pair to {}, expected {want}",
                    y.labels[i],
                    y.labels[j],
                    g.entry(i, j)
                )));
            }
        }
    }
    Ok(y)
}

/// Signature of the span of the simple roots.
pub fn weyl_signature(p: usize, q: usize, r: usize) -> Result<Signature> {
    Ok(signature(&ypqr_roots(p, q, r)?.root_gram()))
}

/// The affine subdiagrams that can serve as a core.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CoreType {
    #[serde(rename = "E6~")]
    E6,
    #[serde(rename = "E7~")]
    E7,
    #[serde(rename = "E8~")]
    E8,
}

impl CoreType {
    /// Arm lengths in increasing order: Y(3,3,3), Y(2,4,4), Y(2,3,6).
    pub fn arms(self) -> [usize; 3] {
        match self {
            CoreType::E6 => [3, 3, 3],
            CoreType::E7 => [2, 4, 4],
            CoreType::E8 => [2, 3, 6],
        }
    }
}

impl fmt::Display for CoreType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoreType::E6 => "E6~",
            CoreType::E7 => "E7~",
            CoreType::E8 => "E8~",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Core {
    pub kind: CoreType,
    /// Length of the core's part of each arm, in the triple's arm order.
    pub core_arms: [usize; 3],
    /// Indices into the simple roots of [`ypqr_roots`].
    pub nodes: Vec<usize>,
    /// Arms whose end root lies outside the core.
    pub free_ends: Vec<Arm>,
}

/// The core: Ẽ6 if present, else Ẽ7, else Ẽ8, placed on initial arm segments.
pub fn core_nodes(p: usize, q: usize, r: usize) -> Result<Core> {
    let arms = [p, q, r];
    if arms.iter().any(|&a| a < 2) {
        return domain(format!("arm lengths must be at least 2, got ({p},{q},{r})"));
    }
    let mut order = Arm::ALL;
    order.sort_by_key(|a| arms[a.index()]);
    let sorted = order.map(|a| arms[a.index()]);
    let kind = [CoreType::E6, CoreType::E7, CoreType::E8]
        .into_iter()
        .find(|k| k.arms().iter().zip(sorted).all(|(&c, s)| s >= c))
        .ok_or_else(|| Error::Domain(format!("Y({p},{q},{r}) contains no affine E diagram")))?;
    let mut core_arms = [0; 3];
    for (a, c) in order.iter().zip(kind.arms()) {
        core_arms[a.index()] = c;
    }
    let y = ypqr_roots(p, q, r)?;
    let mut nodes = vec![0];
    for a in Arm::ALL {
        nodes.extend((1..core_arms[a.index()]).map(|k| y.arm_root_index(a, k)));
    }
    nodes.sort_unstable();
    let free_ends = Arm::ALL
        .into_iter()
        .filter(|a| arms[a.index()] > core_arms[a.index()])
        .collect();
    Ok(Core {
        kind,
        core_arms,
        nodes,
        free_ends,
    })
}

/// Ordered pairs of distinct free ends.
pub fn eset_types(p: usize, q: usize, r: usize) -> Result<Vec<ETypePair>> {
    let core = core_nodes(p, q, r)?;
    let mut out = Vec::new();
    for &a in &core.free_ends {
        for &b in &core.free_ends {
            if a != b {
                out.push(ETypePair { plus: a, minus: b });
            }
        }
    }
    Ok(out)
}

/// The Q-projection y_Q of an E-set vector of a given type.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct YProjection {
    pub ty: ETypePair,
    pub vector: LatticeVector,
    /// Block values (a; b; c; d) of the closed form.
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
}

fn check_type(y: &Ypqr, ty: ETypePair) -> Result<()> {
    if ty.plus == ty.minus {
        return domain("type ends must differ");
    }
    if y.defect().is_zero() {
        return domain(format!(
            "Y{:?} is affine (1/p+1/q+1/r = 1); y_Q is undefined",
            y.arms
        ));
    }
    Ok(())
}

/// The closed form (a; b,…,b,b−1; c,…,c,c+1; d,…,d) with arm roles permuted
/// to match the type.
fn closed_form(y: &Ypqr, ty: ETypePair) -> (LatticeVector, [Rational; 4]) {
    let third = Arm::ALL
        .into_iter()
        .find(|&a| a != ty.plus && a != ty.minus)
        .expect("three arms");
    let len = |a: Arm| rat(y.arm_length(a) as i64);
    let (pp, qq, rr) = (len(ty.plus), len(ty.minus), len(third));
    let one = Rational::one();
    let a = (one.clone() / &pp - one.clone() / &qq) / y.defect();
    let b = (&a + &one) / &pp;
    let c = (&a - &one) / &qq;
    let d = &a / &rr;
    let mut v = LatticeVector::zero(y.ambient.dim());
    v.coords[0] = a.clone();
    for (arm, val, last_shift) in [
        (ty.plus, &b, -one.clone()),
        (ty.minus, &c, one.clone()),
        (third, &d, Rational::zero()),
    ] {
        let off = y.block_offset(arm);
        let l = y.arm_length(arm);
        for k in 0..l {
            v.coords[off + k] = val.clone();
        }
        v.coords[off + l - 1] += last_shift;
    }
    (v, [a, b, c, d])
}

/// y_Q by a linear solve against all simple roots and by the closed form;
/// disagreement is an [`Error::Invariant`].
pub fn y_projection(p: usize, q: usize, r: usize, ty: ETypePair) -> Result<YProjection> {
    let y = ypqr_roots(p, q, r)?;
    y_projection_in(&y, ty)
}

pub(crate) fn y_projection_in(y: &Ypqr, ty: ETypePair) -> Result<YProjection> {
    check_type(y, ty)?;
    let (plus, minus) = (y.end_index(ty.plus), y.end_index(ty.minus));
    let targets: Vec<(LatticeVector, Rational)> = y
        .roots
        .iter()
        .enumerate()
        .map(|(i, root)| {
            let c = if i == plus {
                rat(1)
            } else if i == minus {
                rat(-1)
            } else {
                rat(0)
            };
            (root.clone(), c)
        })
        .collect();
    let solved = solve_gram(&y.ambient, &targets)?;
    let (closed, [a, b, c, d]) = closed_form(y, ty);
    if solved != closed {
        return Err(Error::Invariant(format!(
            "y_Q for Y{:?} type {ty}: linear solve gives {solved}, closed form gives {closed}",
            y.arms
        )));
    }
    Ok(YProjection {
        ty,
        vector: solved,
        a: a.to_string(),
        b: b.to_string(),
        c: c.to_string(),
        d: d.to_string(),
    })
}

/// 2 + N with N = y_Q², by the direct norm and by the closed form
/// (1/p − 1/q)²/(1 − 1/p − 1/q − 1/r) + 1/p + 1/q; both must agree and be
/// positive.
pub fn n_plus_2(p: usize, q: usize, r: usize, ty: ETypePair) -> Result<Rational> {
    let y = ypqr_roots(p, q, r)?;
    n_plus_2_in(&y, ty)
}

pub(crate) fn n_plus_2_in(y: &Ypqr, ty: ETypePair) -> Result<Rational> {
    let proj = y_projection_in(y, ty)?;
    let direct = rat(2) + y.ambient.norm(&proj.vector)?;
    let one = Rational::one();
    let pp = one.clone() / rat(y.arm_length(ty.plus) as i64);
    let qq = one / rat(y.arm_length(ty.minus) as i64);
    let diff = &pp - &qq;
    let closed = &diff * &diff / y.defect() + pp + qq;
    if direct != closed {
        return Err(Error::Invariant(format!(
            "2+N for Y{:?} type {ty}: direct {direct}, closed form {closed}",
            y.arms
        )));
    }
    if !direct.is_positive() {
        return Err(Error::Invariant(format!(
            "2+N = {direct} is not positive for Y{:?}",
            y.arms
        )));
    }
    Ok(direct)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::e8_gram;

    fn ty(a: Arm, b: Arm) -> ETypePair {
        ETypePair::new(a, b).unwrap()
    }

    #[test]
    fn root_counts_and_norms() {
        let y = ypqr_roots(2, 3, 5).unwrap();
        assert_eq!(y.roots().len(), 8);
        assert_eq!(ypqr_roots(2, 3, 7).unwrap().roots().len(), 10);
        let y = ypqr_roots(3, 3, 3).unwrap();
        assert_eq!(y.ambient().norm(&y.roots()[0]).unwrap(), rat(-2));
        assert!(ypqr_roots(1, 3, 3).is_err());
    }

    #[test]
    fn y235_is_negative_e8() {
        // Match Bourbaki labels: central root ↔ a4, p-arm ↔ a2, q-arm ↔ a3, a1,
        // r-arm ↔ a5, a6, a7, a8.
        let y = ypqr_roots(2, 3, 5).unwrap();
        let g = y.root_gram();
        let to_bourbaki = [4, 2, 3, 1, 5, 6, 7, 8];
        let e8 = e8_gram(-1);
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(
                    g.entry(i, j),
                    e8.entry(to_bourbaki[i] - 1, to_bourbaki[j] - 1)
                );
            }
        }
    }

    #[test]
    fn signatures() {
        assert_eq!(weyl_signature(2, 3, 7).unwrap(), Signature::new(1, 0, 9));
        assert_eq!(weyl_signature(3, 3, 3).unwrap(), Signature::new(0, 1, 6));
        assert_eq!(weyl_signature(2, 3, 5).unwrap(), Signature::new(0, 0, 8));
        for (p, q, r) in [(2, 3, 8), (3, 4, 5), (4, 4, 4), (2, 7, 9), (5, 6, 7)] {
            assert_eq!(
                weyl_signature(p, q, r).unwrap(),
                Signature::new(1, 0, p + q + r - 3)
            );
        }
    }

    #[test]
    fn cores() {
        let c = core_nodes(4, 4, 4).unwrap();
        assert_eq!(c.kind, CoreType::E6);
        assert_eq!(c.free_ends, vec![Arm::P, Arm::Q, Arm::R]);
        assert_eq!(c.nodes.len(), 7);
        let c = core_nodes(2, 3, 7).unwrap();
        assert_eq!(c.kind, CoreType::E8);
        assert_eq!(c.free_ends, vec![Arm::R]);
        let c = core_nodes(2, 4, 5).unwrap();
        assert_eq!(c.kind, CoreType::E7);
        assert_eq!(c.free_ends, vec![Arm::R]);
        assert_eq!(c.nodes.len(), 8);
        // Arm order does not matter.
        assert_eq!(core_nodes(5, 2, 4).unwrap().free_ends, vec![Arm::P]);
        assert!(core_nodes(2, 3, 5).is_err());
        assert_eq!(core_nodes(2, 3, 6).unwrap().kind, CoreType::E8);
    }

    #[test]
    fn types() {
        assert_eq!(eset_types(4, 4, 4).unwrap().len(), 6);
        assert!(eset_types(2, 3, 7).unwrap().is_empty());
        assert!(eset_types(4, 4, 7).unwrap().contains(&ty(Arm::P, Arm::Q)));
        assert!(ETypePair::new(Arm::P, Arm::P).is_err());
    }

    #[test]
    fn u12_projection() {
        let pr = y_projection(4, 4, 4, ty(Arm::P, Arm::Q)).unwrap();
        assert_eq!(
            (pr.a.as_str(), pr.b.as_str(), pr.c.as_str(), pr.d.as_str()),
            ("0", "1/4", "-1/4", "0")
        );
        let y = ypqr_roots(4, 4, 4).unwrap();
        assert_eq!(y.ambient().norm(&pr.vector).unwrap(), frac(-3, 2));
        let other = y_projection(4, 4, 4, ty(Arm::Q, Arm::R)).unwrap();
        assert_eq!(
            y.ambient().inner(&pr.vector, &other.vector).unwrap(),
            frac(3, 4)
        );
        assert_eq!(n_plus_2(4, 4, 4, ty(Arm::P, Arm::Q)).unwrap(), frac(1, 2));
    }

    #[test]
    fn n_plus_2_examples() {
        assert_eq!(n_plus_2(4, 5, 2, ty(Arm::P, Arm::Q)).unwrap(), frac(1, 2));
        for p in 4..=9 {
            for r in 2..=12 {
                if let Ok(v) = n_plus_2(p, p, r, ty(Arm::P, Arm::Q)) {
                    assert_eq!(v, frac(2, p as i64));
                }
            }
        }
        assert!(n_plus_2(2, 3, 6, ty(Arm::Q, Arm::R)).is_err());
    }

    #[test]
    fn projections_agree_everywhere() {
        for p in 2..=20 {
            for q in p..=20 {
                for r in q..=20 {
                    if p + q + r > 22 || core_nodes(p, q, r).is_err() {
                        continue;
                    }
                    let y = ypqr_roots(p, q, r).unwrap();
                    if y.defect().is_zero() {
                        continue;
                    }
                    for a in Arm::ALL {
                        for b in Arm::ALL {
                            if a != b {
                                y_projection_in(&y, ty(a, b)).unwrap();
                            }
                        }
                    }
                }
            }
        }
    }
}
