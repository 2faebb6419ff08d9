//! Arf numerical semigroups of a given genus.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::multseq::{validate_sequence, MultiplicitySequence};

/// All multiplicity sequences of genus `n`, in lexicographic order.
///
/// Single left-to-right pass over the working sets `U(i)` (sequences of
/// genus `i` with `m_1 + i - 1 <= n`): each member either closes into a
/// genus-`n` sequence by prepending `n - i + 1`, or feeds `U(i + k - 1)`
/// by prepending a small element `k` of its semigroup.
pub fn enumerate_genus(n: u32) -> Vec<MultiplicitySequence> {
    if n == 0 {
        return vec![MultiplicitySequence::natural()];
    }
    let n_us = n as usize;
    let mut result = BTreeSet::new();
    result.insert(MultiplicitySequence::single(n + 1));

    // working[i] holds U(i) for i in 1..n; index 0 unused.
    let mut working: Vec<BTreeSet<MultiplicitySequence>> = vec![BTreeSet::new(); n_us];
    for (i, set) in working.iter_mut().enumerate().skip(1) {
        if i <= n_us / 2 {
            set.insert(MultiplicitySequence::single(i as u32 + 1));
        }
    }

    for i in 1..n_us {
        // Writes below only target indices > i.
        let current = core::mem::take(&mut working[i]);
        let i32_ = i as u32;
        for m in &current {
            let closing = n - i32_ + 1;
            if m.contains(closing) {
                result.insert(m.prepend(closing));
            }
            let upper = (n - i32_ + 2) / 2;
            for k in 2..=upper {
                if m.contains(k) {
                    let target = i + k as usize - 1;
                    working[target].insert(m.prepend(k));
                }
            }
        }
    }
    result.into_iter().collect()
}

/// Independent oracle for [`enumerate_genus`]: depth-first search over all
/// nonincreasing vectors with entries `>= 2` whose genus `sum(m_i - 1)` is
/// `n`, keeping those that pass [`validate_sequence`].
pub fn brute_force_genus(n: u32) -> Vec<MultiplicitySequence> {
    if n == 0 {
        return vec![MultiplicitySequence::natural()];
    }
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    search(n, n + 1, &mut prefix, &mut out);
    out.sort();
    out
}

fn search(remaining: u32, cap: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiplicitySequence>) {
    if remaining == 0 {
        if let Ok(m) = validate_sequence(prefix) {
            out.push(m);
        }
        return;
    }
    for m in 2..=cap.min(remaining + 1) {
        prefix.push(m);
        search(remaining - (m - 1), m, prefix, out);
        prefix.pop();
    }
}
