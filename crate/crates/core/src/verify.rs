//! Independent checks: genus through saturated chains, the good and Arf
//! axioms on a finite box, and a brute-force tree enumerator.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::genus1::brute_force_genus;
use crate::multseq::{compatibility, MultiplicitySequence};
use crate::tree::{validate_tree, FiniteGoodSemigroup, TreeError, UntwistedTree};

/// Random greedy runs per chain length, on top of the deterministic one.
pub const DEFAULT_CHAIN_SAMPLES: usize = 8;

const CHAIN_SEED: u64 = 0x5eed_c4a1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyError {
    /// `from <= to` fails componentwise.
    NotComparable,
    /// An endpoint is not in the semigroup.
    NotMembers,
    /// Different cover choices gave chains of different lengths.
    InconsistentChains(Vec<usize>),
    Tree(TreeError),
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::NotComparable => write!(f, "chain endpoints are not comparable"),
            VerifyError::NotMembers => write!(f, "chain endpoint is not an element"),
            VerifyError::InconsistentChains(lengths) => {
                write!(f, "saturated chains of different lengths: {lengths:?}")
            }
            VerifyError::Tree(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for VerifyError {}

impl From<TreeError> for VerifyError {
    fn from(e: TreeError) -> Self {
        VerifyError::Tree(e)
    }
}

fn leq(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Minimal elements of `S` strictly above `from` and below `to`.
fn covers(elements: &[Vec<u32>], from: &[u32], to: &[u32]) -> Vec<usize> {
    // `elements` is sorted by coordinate sum, so anything below a candidate
    // has been seen before it.
    let mut minimal: Vec<usize> = Vec::new();
    for (idx, e) in elements.iter().enumerate() {
        if e.as_slice() == from || !leq(from, e) || !leq(e, to) {
            continue;
        }
        if minimal.iter().all(|&m| !leq(&elements[m], e)) {
            minimal.push(idx);
        }
    }
    minimal
}

fn greedy_chain(
    elements: &[Vec<u32>],
    from: &[u32],
    to: &[u32],
    mut choose: impl FnMut(usize) -> usize,
) -> usize {
    let mut current = from.to_vec();
    let mut length = 0;
    while current.as_slice() != to {
        let options = covers(elements, &current, to);
        current = elements[options[choose(options.len())]].clone();
        length += 1;
    }
    length
}

/// Chain lengths from `from` to `to`: one run always taking the first
/// cover, then `runs` runs picking covers at random.
pub fn sample_chain_lengths(
    s: &FiniteGoodSemigroup,
    from: &[u32],
    to: &[u32],
    runs: usize,
    seed: u64,
) -> Result<Vec<usize>, VerifyError> {
    if from.len() != to.len() || from.len() != s.rank() || !leq(from, to) {
        return Err(VerifyError::NotComparable);
    }
    if !s.contains(from) || !s.contains(to) {
        return Err(VerifyError::NotMembers);
    }
    let mut elements: Vec<Vec<u32>> = s
        .elements()
        .into_iter()
        .filter(|e| leq(from, e) && leq(e, to))
        .collect();
    elements.sort_by_key(|e| e.iter().map(|&x| u64::from(x)).sum::<u64>());

    let mut lengths = vec![greedy_chain(&elements, from, to, |_| 0)];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..runs {
        lengths.push(greedy_chain(&elements, from, to, |n| {
            (rng.next_u32() as usize) % n
        }));
    }
    Ok(lengths)
}

/// Length of a saturated chain of `S` from `from` to `to`. Several cover
/// choices are sampled and must agree.
pub fn saturated_chain_length(
    s: &FiniteGoodSemigroup,
    from: &[u32],
    to: &[u32],
) -> Result<usize, VerifyError> {
    let lengths = sample_chain_lengths(s, from, to, DEFAULT_CHAIN_SAMPLES, CHAIN_SEED)?;
    if lengths.iter().any(|&l| l != lengths[0]) {
        return Err(VerifyError::InconsistentChains(lengths));
    }
    Ok(lengths[0])
}

/// `sum(c) - d(0, c)` for a semigroup whose box contains its conductor.
pub fn semigroup_genus(s: &FiniteGoodSemigroup) -> Result<u64, VerifyError> {
    let zero = vec![0; s.rank()];
    let total: u64 = s.conductor().iter().map(|&c| u64::from(c)).sum();
    let chain = saturated_chain_length(s, &zero, s.conductor())?;
    Ok(total - chain as u64)
}

/// Genus of the semigroup of `tree`, read off a saturated chain rather than
/// the tree.
pub fn chain_genus(tree: &UntwistedTree) -> Result<u64, VerifyError> {
    let bounds: Vec<u32> = tree.conductor().iter().map(|c| c + 1).collect();
    semigroup_genus(&tree.expand_semigroup(&bounds)?)
}

/// The box used by the axiom checks: the conductor plus two in every
/// coordinate.
pub fn default_box(conductor: &[u32]) -> Vec<u32> {
    conductor.iter().map(|c| c + 2).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    Identity,
    Addition,
    MinClosure,
    /// For `a != b` with `a[i] = b[i]`, some `c` rises strictly in `i` and
    /// matches `min(a, b)` wherever `a` and `b` differ.
    Witness,
    ConductorSaturation,
    Arf,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::Identity => "identity",
            Axiom::Addition => "addition",
            Axiom::MinClosure => "min-closure",
            Axiom::Witness => "witness",
            Axiom::ConductorSaturation => "conductor",
            Axiom::Arf => "arf",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness_vectors: Vec<Vec<u32>>,
}

/// Outcome of an axiom check. A check whose witness would lie outside the
/// box is counted as unchecked, never as a violation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Report {
    pub checked: u64,
    pub unchecked: u64,
    pub violations: Vec<Violation>,
    /// Zero is the only element with a zero coordinate.
    pub local: bool,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(&mut self, ok: bool, axiom: Axiom, witness: impl FnOnce() -> Vec<Vec<u32>>) {
        self.checked += 1;
        if !ok {
            self.violations.push(Violation {
                axiom,
                witness_vectors: witness(),
            });
        }
    }

    /// Adds the tallies of another report.
    pub fn merge(&mut self, other: Report) {
        self.checked += other.checked;
        self.unchecked += other.unchecked;
        self.violations.extend(other.violations);
        self.local &= other.local;
    }
}

fn is_local(elements: &[Vec<u32>]) -> bool {
    elements
        .iter()
        .all(|e| e.iter().all(|&x| x == 0) || e.iter().all(|&x| x > 0))
}

fn add(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn min(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.min(y)).collect()
}

/// Checks identity, addition, min-closure, the witness axiom and
/// saturation above the conductor inside the box of `s`.
pub fn check_good_axioms(s: &FiniteGoodSemigroup) -> Report {
    let elements = s.elements();
    let bounds = s.bounds();
    let r = s.rank();
    let mut report = Report {
        local: is_local(&elements),
        ..Report::default()
    };

    let zero = vec![0; r];
    report.record(s.contains(&zero), Axiom::Identity, || vec![zero.clone()]);

    for (x, a) in elements.iter().enumerate() {
        for b in &elements[x..] {
            let sum = add(a, b);
            if s.in_box(&sum) {
                report.record(s.contains(&sum), Axiom::Addition, || {
                    vec![a.clone(), b.clone(), sum.clone()]
                });
            } else {
                report.unchecked += 1;
            }
            let m = min(a, b);
            report.record(s.contains(&m), Axiom::MinClosure, || {
                vec![a.clone(), b.clone(), m.clone()]
            });
            if a == b {
                continue;
            }
            for i in 0..r {
                if a[i] != b[i] {
                    continue;
                }
                // A witness can be pulled into the box with a min against
                // box - 1 unless it has to leave it in coordinate i.
                if a[i] + 1 >= bounds[i] {
                    report.unchecked += 1;
                    continue;
                }
                let found = elements.iter().any(|c| {
                    c[i] > a[i]
                        && (0..r).all(|j| {
                            j == i
                                || if a[j] != b[j] {
                                    c[j] == m[j]
                                } else {
                                    c[j] >= m[j]
                                }
                        })
                });
                report.record(found, Axiom::Witness, || vec![a.clone(), b.clone()]);
            }
        }
    }

    let conductor = s.conductor();
    if conductor.iter().zip(bounds).all(|(c, b)| c < b) {
        let mut v = conductor.to_vec();
        loop {
            report.record(s.contains(&v), Axiom::ConductorSaturation, || vec![v.clone()]);
            // odometer over the box above the conductor
            let mut k = r;
            loop {
                if k == 0 {
                    return report;
                }
                k -= 1;
                v[k] += 1;
                if v[k] < bounds[k] {
                    break;
                }
                v[k] = conductor[k];
            }
        }
    }
    report
}

/// Checks that `S(a) - a` is closed under addition for every element `a`,
/// where `S(a)` is the set of elements dominating `a`.
pub fn check_arf_axiom(s: &FiniteGoodSemigroup) -> Report {
    let elements = s.elements();
    let mut report = Report {
        local: is_local(&elements),
        ..Report::default()
    };
    for alpha in &elements {
        let above: Vec<&Vec<u32>> = elements.iter().filter(|e| leq(alpha, e)).collect();
        for (x, b1) in above.iter().enumerate() {
            for b2 in &above[x..] {
                // (b1 - a) + (b2 - a) + a
                let target: Vec<u32> = b1
                    .iter()
                    .zip(b2.iter())
                    .zip(alpha)
                    .map(|((p, q), a)| p + q - a)
                    .collect();
                if !s.in_box(&target) {
                    report.unchecked += 1;
                    continue;
                }
                report.record(s.contains(&target), Axiom::Arf, || {
                    vec![alpha.clone(), (*b1).clone(), (*b2).clone()]
                });
            }
        }
    }
    report
}

/// Every untwisted tree of rank `r` and genus `n`, found by trying all
/// branch sequences and all gluings against the genus formula
/// `sum g(M_i) + sum p_i`. Sorted.
pub fn brute_force_genus_trees(r: usize, n: u32) -> Vec<UntwistedTree> {
    if r == 0 {
        return Vec::new();
    }
    if r == 1 {
        return brute_force_genus(n)
            .into_iter()
            .map(UntwistedTree::single)
            .collect();
    }
    if (n as usize) + 1 < r {
        return Vec::new();
    }
    let gluing_min = (r - 1) as u32;
    let mut by_genus: BTreeMap<u32, Vec<MultiplicitySequence>> = BTreeMap::new();
    for k in 0..=n - gluing_min {
        by_genus.insert(k, brute_force_genus(k));
    }
    let mut out = Vec::new();
    let mut seqs = Vec::with_capacity(r);
    pick_sequences(r, n - gluing_min, &by_genus, &mut seqs, &mut |seqs, budget| {
        let gluing_total = n - budget;
        let mut gluing = Vec::with_capacity(r - 1);
        pick_gluing(seqs, gluing_total, &mut gluing, &mut |g| {
            if let Ok(t) = validate_tree(seqs.to_vec(), g.to_vec()) {
                out.push(t);
            }
        });
    });
    out.sort();
    out
}

// Chooses r sequences whose genera sum to at most `budget`; calls `emit`
// with the sequences and the genus used.
fn pick_sequences(
    r: usize,
    budget: u32,
    by_genus: &BTreeMap<u32, Vec<MultiplicitySequence>>,
    seqs: &mut Vec<MultiplicitySequence>,
    emit: &mut impl FnMut(&[MultiplicitySequence], u32),
) {
    if seqs.len() == r {
        let used = seqs.iter().map(MultiplicitySequence::genus).sum();
        emit(seqs, used);
        return;
    }
    let used: u32 = seqs.iter().map(MultiplicitySequence::genus).sum();
    for k in 0..=budget - used {
        for m in &by_genus[&k] {
            seqs.push(m.clone());
            pick_sequences(r, budget, by_genus, seqs, emit);
            seqs.pop();
        }
    }
}

// All positive gluing vectors with the given total that respect the seam
// compatibilities.
fn pick_gluing(
    seqs: &[MultiplicitySequence],
    total: u32,
    gluing: &mut Vec<u32>,
    emit: &mut impl FnMut(&[u32]),
) {
    let seams = seqs.len() - 1;
    let used: u32 = gluing.iter().sum();
    let seam = gluing.len();
    if seam == seams {
        if used == total {
            emit(gluing);
        }
        return;
    }
    let left_after = (seams - seam - 1) as u32;
    if used + 1 + left_after > total {
        return;
    }
    let comp = compatibility(&seqs[seam], &seqs[seam + 1]);
    for p in 1..=total - used - left_after {
        if !comp.admits(p) {
            break;
        }
        gluing.push(p);
        pick_gluing(seqs, total, gluing, emit);
        gluing.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multseq::validate_sequence;

    fn tree(seqs: &[&[u32]], gluing: &[u32]) -> UntwistedTree {
        validate_tree(
            seqs.iter().map(|v| validate_sequence(v).unwrap()).collect(),
            gluing.to_vec(),
        )
        .unwrap()
    }

    fn box_set(bounds: &[u32], conductor: &[u32], elements: &[&[u32]]) -> FiniteGoodSemigroup {
        FiniteGoodSemigroup::from_elements(
            bounds.to_vec(),
            conductor.to_vec(),
            elements.iter().map(|e| e.to_vec()),
        )
        .unwrap()
    }

    #[test]
    fn chain_through_diagonal() {
        let t = tree(&[&[1], &[1]], &[3]);
        let s = t.expand_semigroup(&[5, 5]).unwrap();
        assert_eq!(saturated_chain_length(&s, &[0, 0], &[3, 3]), Ok(3));
        assert_eq!(saturated_chain_length(&s, &[2, 2], &[2, 2]), Ok(0));
        assert_eq!(
            saturated_chain_length(&s, &[3, 3], &[0, 0]),
            Err(VerifyError::NotComparable)
        );
        assert_eq!(
            saturated_chain_length(&s, &[0, 0], &[1, 2]),
            Err(VerifyError::NotMembers)
        );
    }

    #[test]
    fn chain_in_full_box() {
        let s = FiniteGoodSemigroup::natural(vec![6, 6]);
        assert_eq!(saturated_chain_length(&s, &[0, 0], &[3, 4]), Ok(7));
        let lengths = sample_chain_lengths(&s, &[0, 0], &[5, 5], 20, 7).unwrap();
        assert!(lengths.iter().all(|&l| l == 10));
    }

    #[test]
    fn genus_from_chains() {
        assert_eq!(chain_genus(&tree(&[&[1], &[1]], &[3])), Ok(3));
        assert_eq!(chain_genus(&tree(&[&[1], &[3]], &[1])), Ok(3));
        assert_eq!(chain_genus(&tree(&[&[2, 2]], &[])), Ok(2));
    }

    #[test]
    fn good_axioms_on_trees() {
        for t in [
            tree(&[&[1], &[1]], &[3]),
            tree(&[&[2], &[2], &[2, 2]], &[1, 1]),
            tree(&[&[3, 2], &[2]], &[2]),
        ] {
            let bounds = default_box(&t.conductor());
            let s = t.expand_semigroup(&bounds).unwrap();
            let good = check_good_axioms(&s);
            assert!(good.passed(), "{t}: {:?}", good.violations);
            assert!(good.local);
            assert!(good.checked > 0);
            let arf = check_arf_axiom(&s);
            assert!(arf.passed(), "{t}: {:?}", arf.violations);
        }
    }

    #[test]
    fn min_closure_counterexample() {
        let s = box_set(&[5, 5], &[3, 3], &[&[1, 2], &[2, 1]]);
        let report = check_good_axioms(&s);
        assert!(report.violations.iter().any(|v| v.axiom == Axiom::MinClosure
            && v.witness_vectors[2] == vec![1, 1]));
    }

    #[test]
    fn full_box_is_good_but_not_local() {
        let s = FiniteGoodSemigroup::natural(vec![4, 4]);
        let good = check_good_axioms(&s);
        assert!(good.passed());
        assert!(!good.local);
        assert!(check_arf_axiom(&s).passed());
    }

    #[test]
    fn arf_in_one_dimension() {
        let arf = box_set(&[10], &[5], &[&[3]]);
        assert!(check_arf_axiom(&arf).passed());

        // 3 + 3 = 6 is missing
        let not_arf = box_set(&[10], &[7], &[&[3], &[5]]);
        let report = check_arf_axiom(&not_arf);
        assert!(report
            .violations
            .iter()
            .any(|v| v.witness_vectors == vec![vec![0], vec![3], vec![3]]));

        // S(4) - 4 = {0, 1, 4, ...} misses 2
        let shifted = box_set(&[12], &[8], &[&[4], &[5]]);
        let report = check_arf_axiom(&shifted);
        assert!(report
            .violations
            .iter()
            .any(|v| v.witness_vectors == vec![vec![4], vec![5], vec![5]]));
    }

    #[test]
    fn brute_force_small() {
        assert_eq!(brute_force_genus_trees(2, 3).len(), 8);
        assert_eq!(
            brute_force_genus_trees(3, 2),
            vec![tree(&[&[1], &[1], &[1]], &[1, 1])]
        );
        let single: Vec<_> = brute_force_genus(7).into_iter().map(UntwistedTree::single).collect();
        assert_eq!(brute_force_genus_trees(1, 7), single);
        assert!(brute_force_genus_trees(3, 1).is_empty());
    }
}
