//! Admissible values of α = y·y′ for pairs of E-set vectors.
//!
//! Write y = y_Q + y_V with y_V in the negative definite complement of the
//! root span Q. Then y_V² = −2 − N with N = y_Q², and the Gram matrix of
//! (y_V, y′_V) must be negative definite. For two vectors of the same type
//! this is [[−2−N, α−N], [α−N, −2−N]], which forces −2 < α < 2 + 2N.

use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use super::ypqr::{
    core_nodes, n_plus_2_in, y_projection_in, ypqr_roots, Arm, CoreType, ETypePair, Ypqr,
};
use crate::error::{domain, Error, Result};
use crate::lattice::{rat, Rational};

/// Integers strictly between −2 and 2 + 2N, given 2 + N.
pub fn alpha_window_same(two_plus_n: &Rational) -> Vec<i64> {
    let n = two_plus_n - rat(2);
    let upper = rat(2) + rat(2) * n;
    // Largest integer strictly below `upper`.
    let top: num_bigint::BigInt = upper.ceil().to_integer() - 1;
    let top = top.to_i64().expect("α window fits in i64");
    (-1..=top).collect()
}

/// Integer α with [[−2−N, α−N], [α−N, −2−N]] negative definite for two
/// E-set vectors of the same type.
pub fn alpha_range_same_type(p: usize, q: usize, r: usize, ty: ETypePair) -> Result<Vec<i64>> {
    let y = ypqr_roots(p, q, r)?;
    Ok(alpha_window_same(&n_plus_2_in(&y, ty)?))
}

fn cross_window(y: &Ypqr, t1: ETypePair, t2: ETypePair) -> Result<Vec<i64>> {
    if t1.same_unordered(t2) {
        return domain(format!("{t1} and {t2} are the same type"));
    }
    let a = y_projection_in(y, t1)?.vector;
    let b = y_projection_in(y, t2)?.vector;
    let g = y.ambient();
    let na = g.norm(&a)?;
    let nb = g.norm(&b)?;
    let pab = g.inner(&a, &b)?;
    // y_V² = −2 − N for each, and y_V·y′_V = α − y_Q·y′_Q.
    let da = -rat(2) - na;
    let db = -rat(2) - nb;
    if !da.is_negative() || !db.is_negative() {
        return Ok(Vec::new());
    }
    let det = &da * &db;
    // (α − P)² < det bounds α within P ± max(1, det).
    let reach = if det > Rational::one() {
        det.clone()
    } else {
        Rational::one()
    };
    let lo = (&pab - &reach)
        .floor()
        .to_integer()
        .to_i64()
        .expect("α window fits in i64");
    let hi = (&pab + &reach)
        .ceil()
        .to_integer()
        .to_i64()
        .expect("α window fits in i64");
    Ok((lo..=hi)
        .filter(|&alpha| {
            let off = rat(alpha) - &pab;
            &off * &off < det
        })
        .collect())
}

/// Integer α making the Gram matrix of the V-parts of two E-set vectors of
/// different types negative definite. The orientations are used as given.
pub fn alpha_range_cross_type(
    p: usize,
    q: usize,
    r: usize,
    t1: ETypePair,
    t2: ETypePair,
) -> Result<Vec<i64>> {
    let y = ypqr_roots(p, q, r)?;
    cross_window(&y, t1, t2)
}

/// Orients two distinct unordered types {a, s}, {s, b} sharing the end s so
/// that y·s = −1 and y′·s = +1, i.e. (+a, −s) and (+s, −b).
pub fn cyclic_orientation(t1: ETypePair, t2: ETypePair) -> Result<(ETypePair, ETypePair)> {
    if t1.same_unordered(t2) {
        return domain(format!("{t1} and {t2} are the same type"));
    }
    let (a1, b1) = t1.unordered();
    let (a2, b2) = t2.unordered();
    let shared = if a1 == a2 || a1 == b2 { a1 } else { b1 };
    let other = |(x, y): (Arm, Arm)| if x == shared { y } else { x };
    Ok((
        ETypePair::new(other((a1, b1)), shared)?,
        ETypePair::new(shared, other((a2, b2)))?,
    ))
}

/// Result of the third-type check for a cross pair at α = 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThirdType {
    pub ty: ETypePair,
    /// (y″)² = y² + y′² + 2α.
    pub norm: i64,
    /// y″_Q = −y_Q − y′_Q coincides with the projection of the third type.
    pub projection_matches: bool,
}

/// For cyclically oriented t1 = (+a, −s), t2 = (+s, −b) with y·y′ = α,
/// computes the norm of y″ = −y − y′ and checks that its projection is that
/// of the type (+b, −a). At α = 1 the norm is −2.
pub fn third_type_check(
    p: usize,
    q: usize,
    r: usize,
    t1: ETypePair,
    t2: ETypePair,
    alpha: i64,
) -> Result<ThirdType> {
    let y = ypqr_roots(p, q, r)?;
    third_type_in(&y, t1, t2, alpha)
}

fn third_type_in(y: &Ypqr, t1: ETypePair, t2: ETypePair, alpha: i64) -> Result<ThirdType> {
    if t1.minus != t2.plus || t1.plus == t2.minus {
        return domain(format!("{t1}, {t2} are not cyclically oriented"));
    }
    let ty = ETypePair::new(t2.minus, t1.plus)?;
    let norm = -2 + -2 + 2 * alpha;
    let ya = y_projection_in(y, t1)?.vector;
    let yb = y_projection_in(y, t2)?.vector;
    let sum = ya.add(&yb).neg();
    let third = y_projection_in(y, ty)?.vector;
    Ok(ThirdType {
        ty,
        norm,
        projection_matches: sum == third,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossPair {
    pub types: [String; 2],
    pub alpha_set: Vec<i64>,
    pub third_type: String,
    pub third_norm: i64,
    pub third_projection_matches: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SamePair {
    #[serde(rename = "type")]
    pub ty: String,
    pub two_plus_n: String,
    pub alpha_set: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaCase {
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub core: CoreType,
    pub free_ends: Vec<Arm>,
    pub cross_pairs: Vec<CrossPair>,
    pub same_pairs: Vec<SamePair>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaReport {
    pub max_sum: usize,
    pub cases: Vec<AlphaCase>,
    pub cross_pairs_checked: usize,
    pub same_pairs_checked: usize,
    /// Cross pairs whose α set is not exactly {1} or whose third type fails,
    /// and same-type pairs with a nonempty α set.
    pub failures: Vec<String>,
}

impl AlphaReport {
    pub fn all_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Whether 1/p + 1/q + 1/r < 1.
pub fn is_hyperbolic(p: usize, q: usize, r: usize) -> bool {
    let (p, q, r) = (p as u64, q as u64, r as u64);
    q * r + p * r + p * q < p * q * r
}

/// The analysis of one triple: same-type windows for every free type and the
/// α set of every cyclically oriented cross pair.
pub fn alpha_case(p: usize, q: usize, r: usize) -> Result<AlphaCase> {
    if !is_hyperbolic(p, q, r) {
        return domain(format!("({p},{q},{r}) is not hyperbolic"));
    }
    let core = core_nodes(p, q, r)?;
    let y = ypqr_roots(p, q, r)?;
    let mut unordered = Vec::new();
    for (i, &a) in core.free_ends.iter().enumerate() {
        for &b in &core.free_ends[i + 1..] {
            unordered.push(ETypePair::new(a, b)?);
        }
    }
    let mut same_pairs = Vec::new();
    for &t in &unordered {
        let two_plus_n = n_plus_2_in(&y, t)?;
        same_pairs.push(SamePair {
            ty: t.to_string(),
            alpha_set: alpha_window_same(&two_plus_n),
            two_plus_n: two_plus_n.to_string(),
        });
    }
    let mut cross_pairs = Vec::new();
    for (i, &t1) in unordered.iter().enumerate() {
        for &t2 in &unordered[i + 1..] {
            let (o1, o2) = cyclic_orientation(t1, t2)?;
            let alpha_set = cross_window(&y, o1, o2)?;
            let alpha = if alpha_set.len() == 1 {
                alpha_set[0]
            } else {
                1
            };
            let third = third_type_in(&y, o1, o2, alpha)?;
            cross_pairs.push(CrossPair {
                types: [o1.to_string(), o2.to_string()],
                alpha_set,
                third_type: third.ty.to_string(),
                third_norm: third.norm,
                third_projection_matches: third.projection_matches,
            });
        }
    }
    Ok(AlphaCase {
        p,
        q,
        r,
        core: core.kind,
        free_ends: core.free_ends,
        cross_pairs,
        same_pairs,
    })
}

/// Every hyperbolic p ≤ q ≤ r with p + q + r ≤ `max_sum`, a core, and at least
/// two free ends. Cross pairs must admit exactly α = 1 and same-type pairs
/// must admit no α at all.
pub fn verify_alpha_one(max_sum: usize) -> Result<AlphaReport> {
    if max_sum > 200 {
        return domain(format!(
            "max_sum {max_sum} is too large for exact enumeration"
        ));
    }
    let mut cases = Vec::new();
    let mut failures = Vec::new();
    let mut cross_pairs_checked = 0;
    let mut same_pairs_checked = 0;
    for p in 2..=max_sum {
        for q in p..=max_sum {
            for r in q..=max_sum {
                if p + q + r > max_sum {
                    break;
                }
                if !is_hyperbolic(p, q, r) {
                    continue;
                }
                let core = match core_nodes(p, q, r) {
                    Ok(c) => c,
                    Err(Error::Domain(_)) => continue,
                    Err(e) => return Err(e),
                };
                if core.free_ends.len() < 2 {
                    continue;
                }
                let case = alpha_case(p, q, r)?;
                for pair in &case.cross_pairs {
                    cross_pairs_checked += 1;
                    if pair.alpha_set != [1]
                        || pair.third_norm != -2
                        || !pair.third_projection_matches
                    {
                        failures.push(format!(
                            "({p},{q},{r}) {:?}: α ∈ {:?}",
                            pair.types, pair.alpha_set
                        ));
                    }
                }
                for pair in &case.same_pairs {
                    same_pairs_checked += 1;
                    if !pair.alpha_set.is_empty() {
                        failures.push(format!(
                            "({p},{q},{r}) {}: α ∈ {:?}",
                            pair.ty, pair.alpha_set
                        ));
                    }
                }
                cases.push(case);
            }
        }
    }
    Ok(AlphaReport {
        max_sum,
        cases,
        cross_pairs_checked,
        same_pairs_checked,
        failures,
    })
}
