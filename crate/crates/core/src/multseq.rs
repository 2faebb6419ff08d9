//! Multiplicity sequences and the Arf numerical semigroups they encode.
//!
//! A multiplicity sequence is a nonincreasing sequence of positive integers,
//! eventually constant equal to 1, in which every term is the sum of an
//! initial run of the terms that follow it. It is stored in its canonical
//! finite form `[m_1, ..., m_k]` where `m_k` is the last term different
//! from 1; the constant sequence is stored as `[1]`.
//!
//! The associated semigroup is `{0, m_1, m_1 + m_2, ..., m_1 + ... + m_k, ->}`.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

/// Reasons a vector is rejected as a multiplicity sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceError {
    Empty,
    /// An entry is zero (1-based position).
    ZeroEntry(usize),
    /// Entry at this 1-based position is larger than its predecessor.
    NotNonincreasing(usize),
    /// Entry at this 1-based position is not the sum of any initial run of
    /// the entries that follow it.
    NoSuffixSumWitness(usize),
    /// The vector ends with 1 but is not `[1]`.
    NonCanonicalTail,
    /// The conductor does not fit in a `u32`.
    Overflow,
}

impl fmt::Display for SequenceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceError::Empty => write!(f, "empty multiplicity sequence"),
            SequenceError::ZeroEntry(i) => write!(f, "entry {i} is zero"),
            SequenceError::NotNonincreasing(i) => {
                write!(f, "entry {i} is larger than the entry before it")
            }
            SequenceError::NoSuffixSumWitness(i) => {
                write!(f, "entry {i} is not a sum of the entries that follow it")
            }
            SequenceError::NonCanonicalTail => {
                write!(f, "sequence ends in 1 but is not [1]")
            }
            SequenceError::Overflow => write!(f, "sequence sum overflows u32"),
        }
    }
}

impl core::error::Error for SequenceError {}

/// A multiplicity sequence in canonical form.
///
/// Equality, ordering and hashing only look at the entries; ordering is
/// lexicographic on the entry vectors.
#[derive(Clone)]
pub struct MultiplicitySequence {
    entries: Vec<u32>,
    // sums[j] = m_1 + ... + m_{j+1}
    sums: Vec<u32>,
}

impl MultiplicitySequence {
    /// Validates `entries` and wraps them.
    pub fn new(entries: Vec<u32>) -> Result<Self, SequenceError> {
        validate(&entries)?;
        Ok(Self::from_valid(entries))
    }

    /// The sequence `[1]` of the semigroup ℕ.
    pub fn natural() -> Self {
        Self::from_valid(alloc::vec![1])
    }

    /// The single-entry sequence `[m]`, `m >= 1`.
    pub fn single(m: u32) -> Self {
        assert!(m >= 1, "multiplicity must be positive");
        Self::from_valid(alloc::vec![m])
    }

    fn from_valid(entries: Vec<u32>) -> Self {
        let sums = entries
            .iter()
            .scan(0u32, |acc, &m| {
                *acc += m;
                Some(*acc)
            })
            .collect();
        MultiplicitySequence { entries, sums }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<u32> {
        self.entries
    }

    /// `l(M)`, the number of stored entries.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_natural(&self) -> bool {
        self.entries == [1]
    }

    /// The first multiplicity `m_1`.
    pub fn first(&self) -> u32 {
        self.entries[0]
    }

    /// Entry at 1-based `level`; levels past the stored entries are 1.
    pub fn at(&self, level: usize) -> u32 {
        debug_assert!(level >= 1);
        self.entries.get(level - 1).copied().unwrap_or(1)
    }

    /// `m_1 + ... + m_depth`, continuing with ones past the stored entries.
    pub fn prefix_sum(&self, depth: usize) -> u32 {
        if depth == 0 {
            return 0;
        }
        let k = self.entries.len();
        if depth <= k {
            self.sums[depth - 1]
        } else {
            self.sums[k - 1] + (depth - k) as u32
        }
    }

    /// Conductor of the associated semigroup; 0 for `[1]`.
    pub fn conductor(&self) -> u32 {
        if self.is_natural() {
            0
        } else {
            *self.sums.last().expect("nonempty")
        }
    }

    /// Genus `c(M) - l(M)`; 0 for `[1]`.
    pub fn genus(&self) -> u32 {
        if self.is_natural() {
            0
        } else {
            self.conductor() - self.entries.len() as u32
        }
    }

    /// Membership in the associated Arf numerical semigroup.
    pub fn contains(&self, x: u32) -> bool {
        if x == 0 || x >= self.conductor() {
            return true;
        }
        self.sums.binary_search(&x).is_ok()
    }

    /// Elements of the semigroup strictly below the conductor.
    pub fn small_elements(&self) -> Vec<u32> {
        if self.is_natural() {
            return Vec::new();
        }
        let mut out = Vec::with_capacity(self.entries.len());
        out.push(0);
        out.extend_from_slice(&self.sums[..self.sums.len() - 1]);
        out
    }

    pub fn view(&self) -> ArfNumericalSemigroupView {
        ArfNumericalSemigroupView {
            conductor: self.conductor(),
            genus: self.genus(),
            small_elements: self.small_elements(),
            source: self.clone(),
        }
    }

    /// The 1-based index `s` with `m_k = m_{k+1} + ... + m_s`.
    pub fn s_value(&self, k: usize) -> usize {
        debug_assert!(k >= 1);
        let target = u64::from(self.at(k));
        let mut sum = 0u64;
        let mut idx = k;
        while idx < self.entries.len() {
            idx += 1;
            sum += u64::from(self.entries[idx - 1]);
            if sum >= target {
                debug_assert_eq!(sum, target, "validated sequences always have a witness");
                return idx;
            }
        }
        // The remainder is filled by trailing ones.
        idx + (target - sum) as usize
    }

    /// `(s_1, ..., s_upto)`.
    pub fn s_values(&self, upto: usize) -> Vec<usize> {
        (1..=upto).map(|k| self.s_value(k)).collect()
    }

    /// `[m | self]`, re-canonicalized. Callers must ensure the result is a
    /// multiplicity sequence (`m >= m_1` and `m` is in the semigroup of
    /// `self`).
    pub fn prepend(&self, m: u32) -> Self {
        debug_assert!(m >= self.first() && self.contains(m));
        if self.is_natural() {
            return Self::single(m);
        }
        let mut entries = Vec::with_capacity(self.entries.len() + 1);
        entries.push(m);
        entries.extend_from_slice(&self.entries);
        Self::from_valid(entries)
    }

    /// The sequence with `m_1` removed, re-canonicalized.
    pub fn tail(&self) -> Self {
        if self.entries.len() <= 1 {
            Self::natural()
        } else {
            Self::from_valid(self.entries[1..].to_vec())
        }
    }
}

fn validate(v: &[u32]) -> Result<(), SequenceError> {
    if v.is_empty() {
        return Err(SequenceError::Empty);
    }
    if let Some(i) = v.iter().position(|&m| m == 0) {
        return Err(SequenceError::ZeroEntry(i + 1));
    }
    if let Some(i) = v.windows(2).position(|w| w[1] > w[0]) {
        return Err(SequenceError::NotNonincreasing(i + 2));
    }
    if v.len() > 1 && *v.last().unwrap() == 1 {
        return Err(SequenceError::NonCanonicalTail);
    }
    v.iter()
        .try_fold(0u32, |acc, &m| acc.checked_add(m))
        .ok_or(SequenceError::Overflow)?;
    for n in 0..v.len() {
        let target = v[n];
        let mut sum = 0u32;
        let mut witnessed = false;
        for &m in &v[n + 1..] {
            sum += m;
            if sum >= target {
                witnessed = sum == target;
                break;
            }
        }
        // Running out of stored entries below the target is fine: the
        // trailing ones make up the difference.
        if sum < target {
            witnessed = true;
        }
        if !witnessed {
            return Err(SequenceError::NoSuffixSumWitness(n + 1));
        }
    }
    Ok(())
}

/// Checks `v` and returns the wrapped sequence.
pub fn validate_sequence(v: &[u32]) -> Result<MultiplicitySequence, SequenceError> {
    MultiplicitySequence::new(v.to_vec())
}

impl PartialEq for MultiplicitySequence {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl Eq for MultiplicitySequence {}

impl PartialOrd for MultiplicitySequence {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiplicitySequence {
    fn cmp(&self, other: &Self) -> Ordering {
        self.entries.cmp(&other.entries)
    }
}

impl core::hash::Hash for MultiplicitySequence {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.entries.hash(state);
    }
}

impl fmt::Debug for MultiplicitySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for MultiplicitySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, m) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "]")
    }
}

/// The Arf numerical semigroup of a sequence, described by its small
/// elements and conductor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArfNumericalSemigroupView {
    pub source: MultiplicitySequence,
    pub conductor: u32,
    pub genus: u32,
    pub small_elements: Vec<u32>,
}

impl ArfNumericalSemigroupView {
    pub fn contains(&self, x: u32) -> bool {
        x >= self.conductor || self.small_elements.binary_search(&x).is_ok()
    }
}

/// Maximum admissible gluing level between two branches.
///
/// Variant order makes every finite level compare below `Unbounded`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Compatibility {
    Level(u32),
    Unbounded,
}

impl Compatibility {
    /// Whether gluing at `level` is allowed.
    pub fn admits(self, level: u32) -> bool {
        match self {
            Compatibility::Level(max) => level <= max,
            Compatibility::Unbounded => true,
        }
    }

    pub fn level(self) -> Option<u32> {
        match self {
            Compatibility::Level(l) => Some(l),
            Compatibility::Unbounded => None,
        }
    }
}

impl fmt::Display for Compatibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Compatibility::Level(l) => write!(f, "{l}"),
            Compatibility::Unbounded => write!(f, "inf"),
        }
    }
}

/// The highest level at which branches carrying `a` and `b` can be glued:
/// the least `min(s_k(a), s_k(b))` over the indices where the two
/// s-streams differ, or `Unbounded` when the sequences are equal.
pub fn compatibility(a: &MultiplicitySequence, b: &MultiplicitySequence) -> Compatibility {
    if a == b {
        return Compatibility::Unbounded;
    }
    // Past both lengths every s_k equals k + 1.
    let bound = a.len().max(b.len()) + 1;
    let level = (1..=bound)
        .filter_map(|k| {
            let (sa, sb) = (a.s_value(k), b.s_value(k));
            (sa != sb).then(|| sa.min(sb))
        })
        .min()
        .expect("distinct sequences have distinct s-values");
    Compatibility::Level(level as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn seq(v: &[u32]) -> MultiplicitySequence {
        validate_sequence(v).unwrap()
    }

    #[test]
    fn validation_examples() {
        assert!(validate_sequence(&[2, 2]).is_ok());
        assert!(validate_sequence(&[1]).is_ok());
        assert_eq!(
            validate_sequence(&[3, 2, 2]),
            Err(SequenceError::NoSuffixSumWitness(1))
        );
        assert_eq!(
            validate_sequence(&[2, 3]),
            Err(SequenceError::NotNonincreasing(2))
        );
        assert_eq!(validate_sequence(&[2, 1]), Err(SequenceError::NonCanonicalTail));
        assert_eq!(validate_sequence(&[1, 1]), Err(SequenceError::NonCanonicalTail));
        assert_eq!(validate_sequence(&[]), Err(SequenceError::Empty));
        assert_eq!(validate_sequence(&[2, 0]), Err(SequenceError::ZeroEntry(2)));
        assert_eq!(
            validate_sequence(&[u32::MAX, 2]),
            Err(SequenceError::Overflow)
        );
    }

    #[test]
    fn views() {
        let n = seq(&[1]).view();
        assert_eq!((n.conductor, n.genus), (0, 0));
        assert!(n.small_elements.is_empty());

        let v = seq(&[2, 2]).view();
        assert_eq!((v.conductor, v.genus), (4, 2));
        assert_eq!(v.small_elements, vec![0, 2]);

        let v = seq(&[3, 2]).view();
        assert_eq!((v.conductor, v.genus), (5, 3));
        assert_eq!(v.small_elements, vec![0, 3]);
    }

    #[test]
    fn membership() {
        let m = seq(&[2, 2]);
        assert!(m.contains(2));
        assert!(!m.contains(3));
        assert!(m.contains(4) && m.contains(0) && !m.contains(1));
        assert!(seq(&[1]).contains(1));
        let view = m.view();
        for x in 0..20 {
            assert_eq!(view.contains(x), m.contains(x));
        }
    }

    #[test]
    fn s_value_examples() {
        assert_eq!(seq(&[1]).s_values(3), vec![2, 3, 4]);
        assert_eq!(seq(&[3]).s_values(1), vec![4]);
        assert_eq!(seq(&[2, 2]).s_values(2), vec![2, 4]);
    }

    #[test]
    fn compatibility_examples() {
        let one = seq(&[1]);
        assert_eq!(compatibility(&one, &seq(&[3])), Compatibility::Level(2));
        assert_eq!(compatibility(&one, &seq(&[2, 2])), Compatibility::Level(3));
        assert_eq!(compatibility(&seq(&[2]), &seq(&[2])), Compatibility::Unbounded);
        assert_eq!(compatibility(&one, &seq(&[2])), Compatibility::Level(2));
        // Values used in the conductor worked examples.
        assert_eq!(compatibility(&seq(&[4]), &seq(&[5])), Compatibility::Level(5));
        assert_eq!(compatibility(&seq(&[4]), &seq(&[3, 2])), Compatibility::Level(3));
        assert_eq!(compatibility(&seq(&[2, 2]), &seq(&[5])), Compatibility::Level(2));
        assert_eq!(compatibility(&seq(&[2, 2]), &seq(&[3, 2])), Compatibility::Level(2));
    }

    #[test]
    fn compatibility_ordering() {
        assert!(Compatibility::Level(u32::MAX) < Compatibility::Unbounded);
        assert!(Compatibility::Unbounded.admits(u32::MAX));
        assert!(!Compatibility::Level(2).admits(3));
    }

    #[test]
    fn prepend_and_tail() {
        let m = seq(&[2, 2]);
        assert_eq!(m.prepend(4), seq(&[4, 2, 2]));
        assert_eq!(seq(&[1]).prepend(3), seq(&[3]));
        assert_eq!(seq(&[3]).tail(), seq(&[1]));
        assert_eq!(seq(&[4, 2, 2]).tail(), m);
    }

    #[test]
    fn prefix_sums_continue_with_ones() {
        let m = seq(&[3, 2]);
        assert_eq!(m.prefix_sum(0), 0);
        assert_eq!(m.prefix_sum(2), 5);
        assert_eq!(m.prefix_sum(4), 7);
        assert_eq!(m.at(7), 1);
    }
}
