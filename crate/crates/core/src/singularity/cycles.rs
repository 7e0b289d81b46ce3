//! Cyclic sequences of self-intersection numbers for cusp resolutions, and
//! the Hirzebruch–Zagier duality between a cycle and its dual.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{domain, Error, Result};

/// A cyclic sequence, stored rotated to its lexicographically least form so
/// that `==` is equality up to rotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleSeq(Vec<u32>);

impl CycleSeq {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return domain("a cycle needs at least one entry");
        }
        Ok(CycleSeq(least_rotation(&entries)))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All entries ≥ 2 and at least one ≥ 3.
    pub fn is_adjusted(&self) -> bool {
        self.0.iter().all(|&e| e >= 2) && self.0.iter().any(|&e| e >= 3)
    }
}

/// Lexicographically least rotation (Booth's algorithm would be overkill for
/// the cycle lengths that occur here).
fn least_rotation(v: &[u32]) -> Vec<u32> {
    let n = v.len();
    (0..n)
        .map(|s| v[s..].iter().chain(&v[..s]).copied().collect::<Vec<_>>())
        .min()
        .expect("nonempty")
}

impl fmt::Display for CycleSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for CycleSeq {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl FromStr for CycleSeq {
    type Err = Error;

    /// Accepts "3 2 2", "3,2,2" or "(3, 2, 2)".
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let entries = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|e| Error::Parse(format!("cycle entry {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        CycleSeq::new(entries)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AdjustDirection {
    /// Raw Table 2 entry c to the Zykel c′.
    RawToZykel,
    /// The dual Zykel d′ to the Table 2 entry d.
    ZykelStarToD,
}

/// Identity on cycles of length ≥ 2; a single entry gains 2 (raw → Zykel) or
/// loses 2 (Zykel* → d).
pub fn adjust_cycle(c: &CycleSeq, direction: AdjustDirection) -> Result<CycleSeq> {
    if c.len() >= 2 {
        return Ok(c.clone());
    }
    let e = c.0[0];
    let out = match direction {
        AdjustDirection::RawToZykel => e + 2,
        AdjustDirection::ZykelStarToD => e.checked_sub(2).unwrap_or(0),
    };
    if out < 1 {
        return domain(format!("adjusting {c} gives an entry below 1"));
    }
    CycleSeq::new(vec![out])
}

/// The Hirzebruch–Zagier dual. Starting at an entry ≥ 3, parse the cycle as
/// (m₁+3, 2^{k₁}, …, m_s+3, 2^{k_s}) and return
/// (k₁+3, 2^{m₂}, k₂+3, 2^{m₃}, …, k_s+3, 2^{m₁}).
pub fn dual_cycle(c: &CycleSeq) -> Result<CycleSeq> {
    if !c.is_adjusted() {
        return domain(format!(
            "{c} is not an adjusted cycle (entries ≥ 2, one ≥ 3)"
        ));
    }
    let v = c.entries();
    let start = v.iter().position(|&e| e >= 3).expect("adjusted");
    let rotated: Vec<u32> = v[start..].iter().chain(&v[..start]).copied().collect();
    let mut blocks: Vec<(u32, u32)> = Vec::new();
    for &e in &rotated {
        if e >= 3 {
            blocks.push((e - 3, 0));
        } else {
            blocks.last_mut().expect("starts at an entry ≥ 3").1 += 1;
        }
    }
    let s = blocks.len();
    let mut out = Vec::new();
    for i in 0..s {
        out.push(blocks[i].1 + 3);
        out.extend(std::iter::repeat(2).take(blocks[(i + 1) % s].0 as usize));
    }
    CycleSeq::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cyc(v: &[u32]) -> CycleSeq {
        CycleSeq::new(v.to_vec()).unwrap()
    }

    fn with_twos(head: &[u32], twos: usize) -> Vec<u32> {
        let mut v = head.to_vec();
        v.extend(std::iter::repeat(2).take(twos));
        v
    }

    #[test]
    fn rotation_equality() {
        assert_eq!(cyc(&[3, 2]), cyc(&[2, 3]));
        assert_eq!(cyc(&[2, 2, 3]), cyc(&[3, 2, 2]));
        assert_ne!(cyc(&[3, 2, 4]), cyc(&[4, 2, 3, 2]));
        assert_eq!(cyc(&[3, 2, 2]).entries(), &[2, 2, 3]);
        assert!(CycleSeq::new(vec![]).is_err());
        assert_eq!("(3, 2, 2)".parse::<CycleSeq>().unwrap(), cyc(&[2, 3, 2]));
        assert_eq!(
            "3 2 2".parse::<CycleSeq>().unwrap().to_string(),
            "(2, 2, 3)"
        );
        assert!("3 x".parse::<CycleSeq>().is_err());
    }

    #[test]
    fn adjustments() {
        use AdjustDirection::*;
        assert_eq!(adjust_cycle(&cyc(&[1]), RawToZykel).unwrap(), cyc(&[3]));
        assert_eq!(adjust_cycle(&cyc(&[3]), ZykelStarToD).unwrap(), cyc(&[1]));
        assert_eq!(
            adjust_cycle(&cyc(&[3, 2, 2]), RawToZykel).unwrap(),
            cyc(&[3, 2, 2])
        );
        assert_eq!(
            adjust_cycle(&cyc(&[2, 3]), ZykelStarToD).unwrap(),
            cyc(&[2, 3])
        );
        assert!(adjust_cycle(&cyc(&[2]), ZykelStarToD).is_err());
    }

    #[test]
    fn dual_examples() {
        assert_eq!(dual_cycle(&cyc(&[3, 2, 2])).unwrap(), cyc(&[5]));
        assert_eq!(dual_cycle(&cyc(&[5])).unwrap(), cyc(&[2, 2, 3]));
        assert_eq!(dual_cycle(&cyc(&[3])).unwrap(), cyc(&[3]));
        assert_eq!(dual_cycle(&cyc(&[4])).unwrap(), cyc(&[2, 3]));
        for r in 8..=12u32 {
            let c = cyc(&with_twos(&[3], r as usize - 7));
            assert_eq!(dual_cycle(&c).unwrap(), cyc(&[r - 4]));
        }
        let (q, r) = (5, 6);
        let mut c = with_twos(&[3], q - 5);
        c.extend(with_twos(&[3], r - 5));
        assert_eq!(
            dual_cycle(&cyc(&c)).unwrap(),
            cyc(&[q as u32 - 2, r as u32 - 2])
        );
        let (p, q, r) = (4, 5, 6);
        let mut c = with_twos(&[3], p - 4);
        c.extend(with_twos(&[3], q - 4));
        c.extend(with_twos(&[3], r - 4));
        assert_eq!(
            dual_cycle(&cyc(&c)).unwrap(),
            cyc(&[p as u32 - 1, q as u32 - 1, r as u32 - 1])
        );
        assert!(dual_cycle(&cyc(&[2, 2])).is_err());
        assert!(dual_cycle(&cyc(&[1, 3])).is_err());
    }

    /// Calls `f` on one representative of every cyclic class of sequences of
    /// length 1..=max_len over 2..=max_entry with some entry ≥ 3.
    fn for_each_adjusted_necklace(max_len: usize, max_entry: u32, mut f: impl FnMut(&[u32])) {
        // FKM generation of necklaces over the alphabet {2, …, max_entry}.
        let k = max_entry - 1;
        for n in 1..=max_len {
            let mut a = vec![0u32; n + 1];
            let mut buf = vec![0u32; n];
            let mut t = 1usize;
            loop {
                if n % t == 0 {
                    for (b, x) in buf.iter_mut().zip(&a[1..]) {
                        *b = x + 2;
                    }
                    if buf.iter().any(|&e| e >= 3) {
                        f(&buf);
                    }
                }
                let mut i = n;
                while i > 0 && a[i] == k - 1 {
                    i -= 1;
                }
                if i == 0 {
                    break;
                }
                a[i] += 1;
                for j in i + 1..=n {
                    a[j] = a[j - i];
                }
                t = i;
            }
        }
    }

    fn exhaustive_involution(max_len: usize, max_entry: u32) -> usize {
        let mut count = 0;
        for_each_adjusted_necklace(max_len, max_entry, |v| {
            let c = CycleSeq(v.to_vec());
            let dd = dual_cycle(&dual_cycle(&c).unwrap()).unwrap();
            assert_eq!(dd.0, least_rotation(v), "{v:?}");
            count += 1;
        });
        count
    }

    #[test]
    fn necklace_counts() {
        // Binary necklaces of length ≤ 4 over {2, 3}, minus (2), (2,2), …: 2+3+4+6 − 4.
        assert_eq!(exhaustive_involution(4, 3), 11);
    }

    #[test]
    fn duality_is_an_involution_up_to_length_7() {
        assert!(exhaustive_involution(7, 9) > 300_000);
    }

    #[test]
    #[ignore = "full exhaustive search over lengths ≤ 10; run with --ignored"]
    fn duality_is_an_involution_up_to_length_10() {
        exhaustive_involution(10, 9);
    }

    proptest! {
        #[test]
        fn dual_preserves_weight_balance(v in prop::collection::vec(2u32..=9, 1..12)) {
            prop_assume!(v.iter().any(|&e| e >= 3));
            let c = CycleSeq::new(v).unwrap();
            let d = dual_cycle(&c).unwrap();
            // Σ(cᵢ − 2) over a cycle equals the length of its dual, and vice versa.
            let excess = |x: &CycleSeq| x.entries().iter().map(|&e| (e - 2) as usize).sum::<usize>();
            prop_assert_eq!(excess(&c), d.len());
            prop_assert_eq!(excess(&d), c.len());
            prop_assert_eq!(dual_cycle(&d).unwrap(), c);
        }
    }
}
