//! Partitions, Young-diagram combinatorics and shape-bound predicates.
//!
//! A partition is stored without trailing zeros; indexing beyond the stored
//! length returns 0, matching the convention λ = (λ₁ ≥ … ≥ λ_n ≥ 0).

use std::fmt;

use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A partition: a weakly decreasing tuple of positive integers.
///
/// The empty tuple is the unique partition of 0.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Builds a partition, stripping trailing zeros.
    ///
    /// Panics if the parts are not weakly decreasing.
    pub fn new(parts: impl Into<Vec<u32>>) -> Self {
        let mut parts = parts.into();
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "partition parts must be weakly decreasing: {parts:?}"
        );
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// |λ|, the sum of the parts.
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// λ_i with 1-based index; 0 beyond the stored length.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 || i > self.0.len() {
            0
        } else {
            self.0[i - 1]
        }
    }

    /// The conjugate partition λ', with λ'_j = #{i : λ_i ≥ j}.
    pub fn conjugate(&self) -> Partition {
        let cols = self.part(1) as usize;
        let mut out = Vec::with_capacity(cols);
        for j in 1..=cols as u32 {
            out.push(self.0.iter().filter(|&&p| p >= j).count() as u32);
        }
        Partition(out)
    }

    /// True iff every part equals every other (the empty partition counts).
    pub fn is_rectangular(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

// Partitions serialize as plain JSON arrays, e.g. [3,1]; the empty partition
// as [].
impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for p in &self.0 {
            seq.serialize_element(p)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct PartsVisitor;
        impl<'de> Visitor<'de> for PartsVisitor {
            type Value = Partition;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a weakly decreasing array of nonnegative integers")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Partition, A::Error> {
                let mut parts: Vec<u32> = Vec::new();
                while let Some(p) = seq.next_element()? {
                    parts.push(p);
                }
                if !parts.windows(2).all(|w| w[0] >= w[1]) {
                    return Err(serde::de::Error::custom("parts not weakly decreasing"));
                }
                Ok(Partition::new(parts))
            }
        }
        deserializer.deserialize_seq(PartsVisitor)
    }
}

/// The hook H(k,l): partitions with λ_{k+1} ≤ l.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct HookSpec {
    /// Arm rows k.
    pub arm: u32,
    /// Leg columns l.
    pub leg: u32,
}

impl HookSpec {
    pub fn new(arm: u32, leg: u32) -> Self {
        HookSpec { arm, leg }
    }
}

/// True iff λ lies in the hook H(k,l), i.e. λ_{k+1} ≤ l.
pub fn in_hook(lam: &Partition, h: HookSpec) -> bool {
    lam.part(h.arm as usize + 1) <= h.leg
}

/// The shape constraints bounding a cocharacter support: the arm/leg widths
/// ω₀, ω₁ with their caps s₂, s₁, plus optional explicit row and column caps.
///
/// `s1 = None` means the conjugate-side cap at row ω₁+1 is not asserted
/// (the value is finite but not provided by a formula).  Extra caps of the
/// form λ_{row} ≤ c live in `step_bounds`; caps λ'_{col} ≤ c on the conjugate
/// live in `conj_bounds`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundProfile {
    pub omega0: u32,
    pub omega1: u32,
    /// False when ω₁ is only an upper bound (single factors p_i = 1 present).
    pub omega1_exact: bool,
    pub s1: Option<u32>,
    pub s2: u32,
    /// Pairs (row index, cap): λ_{row} ≤ cap.
    pub step_bounds: Vec<(u32, u32)>,
    /// Pairs (column index, cap): λ'_{col} ≤ cap.
    pub conj_bounds: Vec<(u32, u32)>,
}

impl BoundProfile {
    pub fn new(omega0: u32, omega1: u32, s1: u32, s2: u32, step_bounds: Vec<(u32, u32)>) -> Self {
        assert!(omega0 >= omega1, "omega0 must be >= omega1");
        BoundProfile {
            omega0,
            omega1,
            omega1_exact: true,
            s1: Some(s1),
            s2,
            step_bounds,
            conj_bounds: Vec::new(),
        }
    }
}

/// True iff λ_{ω₀+1} ≤ s₂, λ'_{ω₁+1} ≤ s₁ (when s₁ is asserted) and every
/// explicit row/column cap holds.
pub fn satisfies_profile(lam: &Partition, b: &BoundProfile) -> bool {
    if lam.part(b.omega0 as usize + 1) > b.s2 {
        return false;
    }
    let conj = lam.conjugate();
    if let Some(s1) = b.s1 {
        if conj.part(b.omega1 as usize + 1) > s1 {
            return false;
        }
    }
    for &(row, cap) in &b.step_bounds {
        if lam.part(row as usize) > cap {
            return false;
        }
    }
    for &(col, cap) in &b.conj_bounds {
        if conj.part(col as usize) > cap {
            return false;
        }
    }
    true
}

/// Step-diagram bound: true iff λ_{2k} ≤ p−k for every 1 ≤ k ≤ ⌊n/2⌋ with
/// p > 2(k−1).
pub fn step_check(lam: &Partition, p: u32, n: u32) -> bool {
    assert!(p >= 1 && n >= 1);
    for k in 1..=(n / 2) {
        if p > 2 * (k - 1) && lam.part(2 * k as usize) > p - k {
            return false;
        }
    }
    true
}

/// All partitions of `m` with at most `max_parts` parts, in reverse
/// lexicographic order (largest first part first).
pub fn partitions_of(m: u32, max_parts: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    gen_partitions(m, m, max_parts, &mut prefix, &mut out);
    out
}

fn gen_partitions(
    remaining: u32,
    max_part: u32,
    parts_left: usize,
    prefix: &mut Vec<u32>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition(prefix.clone()));
        return;
    }
    if parts_left == 0 {
        return;
    }
    let hi = max_part.min(remaining);
    // Largest next part first gives reverse lexicographic output order.
    for next in (1..=hi).rev() {
        prefix.push(next);
        gen_partitions(remaining - next, next, parts_left - 1, prefix, out);
        prefix.pop();
    }
}
