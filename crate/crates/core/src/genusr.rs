//! Untwisted multiplicity trees of rank `r` and genus `n`, and all trees up
//! to branch relabeling.
//!
//! A tree of rank `r` splits at seam `t` into a rank-`t` tree of genus `k`,
//! the gluing level `p` across the seam, and a rank-`(r - t)` tree of genus
//! `n - p - k`. The only new constraint is that `p` is admissible for the
//! two sequences meeting at the seam. With `t <= r / 2` it is enough to
//! build the splits with `k <= ceil((n - p - 1) / 2)` and add the reversed
//! trees.
//!
//! Results are memoized per `(rank, genus)` in a [`GenusTable`]. Trees are
//! stored as fixed-stride rows of `u16`: the sequence ids of the branches
//! followed by the gluing levels. Sequence ids follow the lexicographic
//! order of the sequences, so row order is tree order.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::genus1::enumerate_genus;
use crate::multseq::{compatibility, Compatibility, MultiplicitySequence};
use crate::tree::{next_permutation, TreeMatrix, UntwistedTree};

/// Default largest rank expanded over all branch permutations.
pub const DEFAULT_TWISTED_RANK_CAP: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenusError {
    ZeroRank,
    /// The genus is above what the table was built for.
    GenusOutOfRange { genus: u32, max: u32 },
    /// Twisted enumeration visits `rank!` permutations per tree.
    RankTooLargeForTwisted { rank: usize, cap: usize },
    /// A count does not fit in a `u64`.
    Overflow,
    /// More distinct sequences or levels than the compact rows can index.
    CapacityExceeded,
}

impl fmt::Display for GenusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenusError::ZeroRank => write!(f, "rank must be at least 1"),
            GenusError::GenusOutOfRange { genus, max } => {
                write!(f, "genus {genus} exceeds the table bound {max}")
            }
            GenusError::RankTooLargeForTwisted { rank, cap } => write!(
                f,
                "rank {rank} is above the twisted enumeration cap {cap}"
            ),
            GenusError::Overflow => write!(f, "count overflows u64"),
            GenusError::CapacityExceeded => write!(f, "too many sequences for compact storage"),
        }
    }
}

impl core::error::Error for GenusError {}

/// How a rank-`r` set is split. The default is the cheapest split the
/// reversal argument allows: seam `floor(r / 2)` and the halved genus range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SplitStrategy {
    /// Fixed seam `t` in `1..r`; `None` picks `floor(r / 2)`. Ranks where
    /// the fixed seam is out of range fall back to the default.
    pub seam: Option<usize>,
    /// Iterate the left genus over its whole range instead of relying on
    /// reversal.
    pub full_range: bool,
}

impl SplitStrategy {
    fn seam_for(&self, r: usize) -> usize {
        match self.seam {
            Some(t) if t >= 1 && t < r => t,
            _ => r / 2,
        }
    }
}

#[derive(Debug, Clone, Default)]
struct Bucket {
    stride: usize,
    rows: Vec<u16>,
}

impl Bucket {
    fn len(&self) -> usize {
        self.rows.len().checked_div(self.stride).unwrap_or(0)
    }

    fn iter(&self) -> core::slice::ChunksExact<'_, u16> {
        self.rows.chunks_exact(self.stride.max(1))
    }
}

/// Memo of `Gen(t, k)` for every rank and genus visited so far.
#[derive(Debug, Clone)]
pub struct GenusTable {
    max_genus: u32,
    strategy: SplitStrategy,
    catalog: Vec<MultiplicitySequence>,
    by_genus: Vec<Vec<u16>>,
    // comp[a * catalog.len() + b], u16::MAX when unbounded
    comp: Vec<u16>,
    buckets: BTreeMap<(usize, u32), Bucket>,
}

impl GenusTable {
    /// Prepares a table for genera up to `max_genus`.
    pub fn new(max_genus: u32) -> Result<Self, GenusError> {
        Self::with_strategy(max_genus, SplitStrategy::default())
    }

    pub fn with_strategy(max_genus: u32, strategy: SplitStrategy) -> Result<Self, GenusError> {
        if max_genus >= u32::from(u16::MAX) {
            return Err(GenusError::CapacityExceeded);
        }
        let mut catalog: Vec<MultiplicitySequence> =
            (0..=max_genus).flat_map(enumerate_genus).collect();
        catalog.sort();
        if catalog.len() > usize::from(u16::MAX) {
            return Err(GenusError::CapacityExceeded);
        }
        let mut by_genus = vec![Vec::new(); max_genus as usize + 1];
        for (id, m) in catalog.iter().enumerate() {
            by_genus[m.genus() as usize].push(id as u16);
        }
        let size = catalog.len();
        let mut comp = Vec::with_capacity(size * size);
        for a in &catalog {
            for b in &catalog {
                comp.push(match compatibility(a, b) {
                    Compatibility::Level(l) => l.min(u32::from(u16::MAX - 1)) as u16,
                    Compatibility::Unbounded => u16::MAX,
                });
            }
        }
        let mut buckets = BTreeMap::new();
        for (k, ids) in by_genus.iter().enumerate() {
            buckets.insert(
                (1, k as u32),
                Bucket {
                    stride: 1,
                    rows: ids.clone(),
                },
            );
        }
        Ok(GenusTable {
            max_genus,
            strategy,
            catalog,
            by_genus,
            comp,
            buckets,
        })
    }

    pub fn max_genus(&self) -> u32 {
        self.max_genus
    }

    /// Every sequence of genus up to the bound, in lexicographic order.
    pub fn catalog(&self) -> &[MultiplicitySequence] {
        &self.catalog
    }

    /// Sequences of genus `k`.
    pub fn sequences_of_genus(&self, k: u32) -> impl Iterator<Item = &MultiplicitySequence> {
        self.by_genus[k as usize]
            .iter()
            .map(|&id| &self.catalog[usize::from(id)])
    }

    fn admits(&self, a: u16, b: u16, p: u16) -> bool {
        p <= self.comp[usize::from(a) * self.catalog.len() + usize::from(b)]
    }

    fn check(&self, r: usize, n: u32) -> Result<(), GenusError> {
        if r == 0 {
            return Err(GenusError::ZeroRank);
        }
        if n > self.max_genus {
            return Err(GenusError::GenusOutOfRange {
                genus: n,
                max: self.max_genus,
            });
        }
        Ok(())
    }

    /// `|Gen(r, n)|`.
    pub fn count(&mut self, r: usize, n: u32) -> Result<u64, GenusError> {
        self.check(r, n)?;
        self.ensure(r, n);
        Ok(self.buckets[&(r, n)].len() as u64)
    }

    /// `Gen(r, n)` in tree order.
    pub fn trees(&mut self, r: usize, n: u32) -> Result<Vec<UntwistedTree>, GenusError> {
        self.check(r, n)?;
        self.ensure(r, n);
        let bucket = &self.buckets[&(r, n)];
        Ok(bucket.iter().map(|row| self.row_to_tree(r, row)).collect())
    }

    fn row_to_tree(&self, r: usize, row: &[u16]) -> UntwistedTree {
        let sequences = row[..r]
            .iter()
            .map(|&id| self.catalog[usize::from(id)].clone())
            .collect();
        let gluing = row[r..].iter().map(|&p| u32::from(p)).collect();
        UntwistedTree::from_parts_unchecked(sequences, gluing)
    }

    /// Fills `(r, n)` after every bucket it depends on.
    fn ensure(&mut self, r: usize, n: u32) {
        if self.buckets.contains_key(&(r, n)) {
            return;
        }
        let stride = 2 * r - 1;
        if (n as usize) + 1 < r {
            self.buckets.insert((r, n), Bucket { stride, rows: Vec::new() });
            return;
        }
        let plan = self.plan(r, n);
        let t = self.strategy.seam_for(r);
        for &(_, k, k2) in &plan.splits {
            self.ensure(t, k);
            self.ensure(r - t, k2);
        }
        let rows = self.build(r, t, &plan);
        self.buckets.insert((r, n), Bucket { stride, rows });
    }

    fn plan(&self, r: usize, n: u32) -> Plan {
        let t = self.strategy.seam_for(r);
        let reduced = !self.strategy.full_range && 2 * t <= r;
        let n = i64::from(n);
        let (r_i, t_i) = (r as i64, t as i64);
        let mut splits = Vec::new();
        for p in 1..=(n - r_i + 2) {
            let k_max = if reduced {
                // ceil((n - p - 1) / 2), also for negative numerators
                (n - p - 1).div_euclid(2) + (n - p - 1).rem_euclid(2)
            } else {
                n - p - (r_i - t_i - 1)
            };
            for k in (t_i - 1)..=k_max {
                let k2 = n - p - k;
                if k2 < r_i - t_i - 1 {
                    continue;
                }
                splits.push((p as u16, k as u32, k2 as u32));
            }
        }
        Plan { splits, reduced }
    }

    fn build(&self, r: usize, t: usize, plan: &Plan) -> Vec<u16> {
        let stride = 2 * r - 1;
        let join = |&(p, k, k2): &(u16, u32, u32)| -> Vec<u16> {
            let left = &self.buckets[&(t, k)];
            let right = &self.buckets[&(r - t, k2)];
            let mut out = Vec::new();
            for l in left.iter() {
                let seam_left = l[t - 1];
                for rr in right.iter() {
                    if !self.admits(seam_left, rr[0], p) {
                        continue;
                    }
                    let start = out.len();
                    out.extend_from_slice(&l[..t]);
                    out.extend_from_slice(&rr[..r - t]);
                    out.extend_from_slice(&l[t..]);
                    out.push(p);
                    out.extend_from_slice(&rr[r - t..]);
                    if plan.reduced {
                        reverse_row(&mut out, start, r);
                    }
                }
            }
            out
        };

        #[cfg(feature = "parallel")]
        let rows: Vec<u16> = {
            use rayon::prelude::*;
            plan.splits
                .par_iter()
                .map(join)
                .collect::<Vec<_>>()
                .concat()
        };
        #[cfg(not(feature = "parallel"))]
        let rows: Vec<u16> = plan.splits.iter().flat_map(join).collect();

        sort_dedup_rows(rows, stride)
    }

    /// `Gen̄(r, n)`: every untwisted tree under every branch relabeling.
    pub fn all_trees(&mut self, r: usize, n: u32, cap: usize) -> Result<Vec<TreeMatrix>, GenusError> {
        let (stride, rows) = self.all_tree_rows(r, n, cap)?;
        Ok(rows
            .chunks_exact(stride)
            .map(|row| {
                let sequences = row[..r]
                    .iter()
                    .map(|&id| self.catalog[usize::from(id)].clone())
                    .collect();
                let levels = row[r..].iter().map(|&p| u32::from(p)).collect();
                TreeMatrix::from_parts_unchecked(sequences, levels)
            })
            .collect())
    }

    /// `|Gen̄(r, n)|`.
    pub fn count_all(&mut self, r: usize, n: u32, cap: usize) -> Result<u64, GenusError> {
        let (stride, rows) = self.all_tree_rows(r, n, cap)?;
        Ok((rows.len() / stride) as u64)
    }

    fn all_tree_rows(&mut self, r: usize, n: u32, cap: usize) -> Result<(usize, Vec<u16>), GenusError> {
        self.check(r, n)?;
        if r > cap {
            return Err(GenusError::RankTooLargeForTwisted { rank: r, cap });
        }
        self.ensure(r, n);
        let stride = r + r * (r - 1) / 2;
        let bucket = &self.buckets[&(r, n)];
        let orbit = |row: &[u16]| -> Vec<u16> { permutation_orbit(row, r) };

        #[cfg(feature = "parallel")]
        let rows: Vec<u16> = {
            use rayon::prelude::*;
            bucket
                .rows
                .par_chunks_exact(bucket.stride)
                .map(orbit)
                .collect::<Vec<_>>()
                .concat()
        };
        #[cfg(not(feature = "parallel"))]
        let rows: Vec<u16> = bucket.iter().flat_map(orbit).collect();

        Ok((stride, sort_dedup_rows(rows, stride)))
    }
}

struct Plan {
    // (p, left genus, right genus)
    splits: Vec<(u16, u32, u32)>,
    reduced: bool,
}

/// Appends the reversal of the row that starts at `start`.
fn reverse_row(out: &mut Vec<u16>, start: usize, r: usize) {
    let stride = 2 * r - 1;
    for i in (0..r).rev() {
        out.push(out[start + i]);
    }
    for i in (r..stride).rev() {
        out.push(out[start + i]);
    }
}

/// Matrix rows of every relabeling of an untwisted row, deduplicated.
fn permutation_orbit(row: &[u16], r: usize) -> Vec<u16> {
    let ids = &row[..r];
    let gluing = &row[r..];
    let mut level = vec![0u16; r * r];
    for i in 0..r {
        let mut run = u16::MAX;
        for j in i + 1..r {
            run = run.min(gluing[j - 1]);
            level[i * r + j] = run;
            level[j * r + i] = run;
        }
    }
    let stride = r + r * (r - 1) / 2;
    let mut out = Vec::new();
    let mut sigma: Vec<usize> = (0..r).collect();
    loop {
        out.extend(sigma.iter().map(|&s| ids[s]));
        for a in 0..r {
            for b in a + 1..r {
                out.push(level[sigma[a] * r + sigma[b]]);
            }
        }
        if !next_permutation(&mut sigma) {
            break;
        }
    }
    sort_dedup_rows(out, stride)
}

fn sort_dedup_rows(rows: Vec<u16>, stride: usize) -> Vec<u16> {
    let count = rows.len() / stride;
    let row = |i: u32| &rows[i as usize * stride..(i as usize + 1) * stride];
    let mut order: Vec<u32> = (0..count as u32).collect();
    order.sort_unstable_by(|&a, &b| row(a).cmp(row(b)));
    order.dedup_by(|a, b| row(*a) == row(*b));
    let mut out = Vec::with_capacity(order.len() * stride);
    for i in order {
        out.extend_from_slice(row(i));
    }
    out
}

/// `Gen(r, n)`, the untwisted trees of rank `r` and genus `n`, in tree
/// order.
pub fn enumerate_genus_trees(r: usize, n: u32) -> Result<Vec<UntwistedTree>, GenusError> {
    GenusTable::new(n)?.trees(r, n)
}

/// `Gen̄(r, n)` with the default rank cap.
pub fn enumerate_all_trees(r: usize, n: u32) -> Result<Vec<TreeMatrix>, GenusError> {
    GenusTable::new(n)?.all_trees(r, n, DEFAULT_TWISTED_RANK_CAP)
}

/// `|Gen(r, n)|` for `r` in `1..=r_max` (rows) and `n` in `0..=n_max`
/// (columns), sharing one memo.
pub fn count_table(r_max: usize, n_max: u32) -> Result<Vec<Vec<u64>>, GenusError> {
    let mut table = GenusTable::new(n_max)?;
    (1..=r_max)
        .map(|r| (0..=n_max).map(|n| table.count(r, n)).collect())
        .collect()
}

/// `|Gen̄(r, n)|` over the same layout as [`count_table`].
pub fn twisted_count_table(r_max: usize, n_max: u32, cap: usize) -> Result<Vec<Vec<u64>>, GenusError> {
    let mut table = GenusTable::new(n_max)?;
    (1..=r_max)
        .map(|r| (0..=n_max).map(|n| table.count_all(r, n, cap)).collect())
        .collect()
}

/// Number of local untwisted Arf semigroups of genus `n` over all ranks.
pub fn ng(n: u32) -> Result<u64, GenusError> {
    let mut table = GenusTable::new(n)?;
    ng_with(&mut table, n)
}

/// [`ng`] reusing an existing table.
pub fn ng_with(table: &mut GenusTable, n: u32) -> Result<u64, GenusError> {
    (1..=n as usize + 1).try_fold(0u64, |acc, r| {
        acc.checked_add(table.count(r, n)?).ok_or(GenusError::Overflow)
    })
}
