//! Multiplicity trees of local Arf good semigroups of ℕ^r.
//!
//! A tree is described by an ordered list of branch sequences together with
//! the levels at which branches are glued. Untwisted trees only need the
//! gluing levels between consecutive branches; general trees carry the full
//! upper-triangular level matrix.
//!
//! Levels are 1-based: level 1 is the root, shared by every branch.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::multseq::{compatibility, MultiplicitySequence};

/// Largest rank for which raw level matrices are checked for realizability
/// by permutation search.
pub const REALIZABILITY_SEARCH_MAX_RANK: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeError {
    NoBranches,
    /// `gluing` must have one entry fewer than the number of branches.
    GluingLength { branches: usize, gluing: usize },
    /// Gluing levels are 1-based; 0 at this seam (1-based).
    ZeroGluing(usize),
    /// The gluing level at this 1-based seam exceeds the compatibility of
    /// the two sequences it joins.
    GluingExceedsCompatibility { seam: usize, level: u32, max: u32 },
    /// Matrix entry `(i, j)` (1-based) exceeds the compatibility of `M_i`
    /// and `M_j`, or is zero.
    InvalidLevel { i: usize, j: usize, level: u32 },
    /// The level matrix has the wrong shape.
    MatrixShape,
    /// No branch permutation turns the matrix into an untwisted one.
    NotRealizable,
    /// Realizability is only searched up to this rank.
    RankTooLarge(usize),
    /// The argument is not a permutation of `0..rank`.
    NotPermutation,
    /// The bounding box does not extend past the conductor.
    BoxTooSmall,
}

impl fmt::Display for TreeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeError::NoBranches => write!(f, "a tree needs at least one branch"),
            TreeError::GluingLength { branches, gluing } => write!(
                f,
                "{branches} branches need {} gluing levels, got {gluing}",
                branches.saturating_sub(1)
            ),
            TreeError::ZeroGluing(seam) => write!(f, "gluing level at seam {seam} is zero"),
            TreeError::GluingExceedsCompatibility { seam, level, max } => write!(
                f,
                "gluing level {level} at seam {seam} exceeds compatibility {max}"
            ),
            TreeError::InvalidLevel { i, j, level } => {
                write!(f, "level {level} between branches {i} and {j} is not admissible")
            }
            TreeError::MatrixShape => write!(f, "level matrix has the wrong shape"),
            TreeError::NotRealizable => {
                write!(f, "no permutation of the branches makes the tree untwisted")
            }
            TreeError::RankTooLarge(r) => {
                write!(f, "rank {r} is above the realizability search limit")
            }
            TreeError::NotPermutation => write!(f, "not a permutation of the branches"),
            TreeError::BoxTooSmall => write!(f, "box must exceed the conductor in every coordinate"),
        }
    }
}

impl core::error::Error for TreeError {}

/// An untwisted multiplicity tree: sequences `(M_1, ..., M_r)` and the
/// gluing levels `(p_1, ..., p_{r-1})` between consecutive branches.
///
/// Ordered by sequences first, then gluing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UntwistedTree {
    sequences: Vec<MultiplicitySequence>,
    gluing: Vec<u32>,
}

/// Checks every seam against the compatibility of the sequences it joins.
pub fn validate_tree(
    sequences: Vec<MultiplicitySequence>,
    gluing: Vec<u32>,
) -> Result<UntwistedTree, TreeError> {
    if sequences.is_empty() {
        return Err(TreeError::NoBranches);
    }
    if gluing.len() + 1 != sequences.len() {
        return Err(TreeError::GluingLength {
            branches: sequences.len(),
            gluing: gluing.len(),
        });
    }
    for (i, &p) in gluing.iter().enumerate() {
        if p == 0 {
            return Err(TreeError::ZeroGluing(i + 1));
        }
        let comp = compatibility(&sequences[i], &sequences[i + 1]);
        if !comp.admits(p) {
            return Err(TreeError::GluingExceedsCompatibility {
                seam: i + 1,
                level: p,
                max: comp.level().unwrap_or(u32::MAX),
            });
        }
    }
    Ok(UntwistedTree { sequences, gluing })
}

impl UntwistedTree {
    /// The single-branch tree.
    pub fn single(sequence: MultiplicitySequence) -> Self {
        UntwistedTree {
            sequences: vec![sequence],
            gluing: Vec::new(),
        }
    }

    pub(crate) fn from_parts_unchecked(
        sequences: Vec<MultiplicitySequence>,
        gluing: Vec<u32>,
    ) -> Self {
        debug_assert_eq!(sequences.len(), gluing.len() + 1);
        UntwistedTree { sequences, gluing }
    }

    /// `left` and `right` glued at level `p` across the new seam. Only the
    /// new seam is checked.
    pub fn join(left: &UntwistedTree, p: u32, right: &UntwistedTree) -> Result<Self, TreeError> {
        let seam = left.rank();
        let comp = compatibility(left.sequences.last().unwrap(), &right.sequences[0]);
        if p == 0 {
            return Err(TreeError::ZeroGluing(seam));
        }
        if !comp.admits(p) {
            return Err(TreeError::GluingExceedsCompatibility {
                seam,
                level: p,
                max: comp.level().unwrap_or(u32::MAX),
            });
        }
        let mut sequences = left.sequences.clone();
        sequences.extend(right.sequences.iter().cloned());
        let mut gluing = left.gluing.clone();
        gluing.push(p);
        gluing.extend_from_slice(&right.gluing);
        Ok(UntwistedTree { sequences, gluing })
    }

    pub fn rank(&self) -> usize {
        self.sequences.len()
    }

    pub fn sequences(&self) -> &[MultiplicitySequence] {
        &self.sequences
    }

    pub fn gluing(&self) -> &[u32] {
        &self.gluing
    }

    /// Sum of the branch genera plus the sum of the gluing levels.
    pub fn genus(&self) -> u64 {
        let branches: u64 = self.sequences.iter().map(|m| u64::from(m.genus())).sum();
        let glue: u64 = self.gluing.iter().map(|&p| u64::from(p)).sum();
        branches + glue
    }

    /// Number of levels along branch `i` (0-based) that are not the
    /// terminal canonical node: `max(l(M_i), p_{i-1}, p_i)`.
    fn split_depth(&self, i: usize) -> usize {
        let before = if i > 0 { self.gluing[i - 1] } else { 0 };
        let after = self.gluing.get(i).copied().unwrap_or(0);
        self.sequences[i].len().max(before as usize).max(after as usize)
    }

    /// Conductor vector of the semigroup of the tree.
    pub fn conductor(&self) -> Vec<u32> {
        if self.rank() == 1 {
            return vec![self.sequences[0].conductor()];
        }
        (0..self.rank())
            .map(|i| self.sequences[i].prefix_sum(self.split_depth(i)))
            .collect()
    }

    /// Branch order and gluing reversed.
    pub fn reverse(&self) -> Self {
        UntwistedTree {
            sequences: self.sequences.iter().rev().cloned().collect(),
            gluing: self.gluing.iter().rev().copied().collect(),
        }
    }

    /// Full level matrix, `p_{i,j} = min(p_i, ..., p_{j-1})`.
    pub fn to_matrix(&self) -> TreeMatrix {
        let r = self.rank();
        let mut levels = Vec::with_capacity(r * r.saturating_sub(1) / 2);
        for i in 0..r {
            let mut run = u32::MAX;
            for j in i + 1..r {
                run = run.min(self.gluing[j - 1]);
                levels.push(run);
            }
        }
        TreeMatrix {
            sequences: self.sequences.clone(),
            levels,
        }
    }

    pub fn node_grid(&self) -> NodeGrid {
        if self.rank() == 1 {
            return NodeGrid::build(&self.sequences, |_, _| 0);
        }
        let gluing = &self.gluing;
        NodeGrid::build(&self.sequences, |i, j| {
            let (a, b) = if i < j { (i, j) } else { (j, i) };
            gluing[a..b].iter().copied().min().unwrap()
        })
    }

    /// Every element of the semigroup inside `bounds` (exclusive).
    pub fn expand_semigroup(&self, bounds: &[u32]) -> Result<FiniteGoodSemigroup, TreeError> {
        let gluing = &self.gluing;
        expand(&self.sequences, &self.conductor(), bounds, |i, j| {
            gluing[i..j].iter().copied().min().unwrap()
        })
    }
}

impl fmt::Display for UntwistedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, m) in self.sequences.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ") p=(")?;
        for (i, p) in self.gluing.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A general multiplicity tree: sequences plus the gluing level of every
/// pair of branches.
///
/// Compared structurally, sequences first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeMatrix {
    sequences: Vec<MultiplicitySequence>,
    // Upper triangle, row-major: (0,1), (0,2), ..., (0,r-1), (1,2), ...
    levels: Vec<u32>,
}

fn pair_index(r: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < r);
    i * (2 * r - i - 1) / 2 + (j - i - 1)
}

impl TreeMatrix {
    /// Builds a matrix from raw input. `levels` is the full `r x r` matrix;
    /// only the strict upper triangle is read. The tree must be untwisted
    /// or become untwisted under some permutation of its branches.
    pub fn new(
        sequences: Vec<MultiplicitySequence>,
        levels: &[Vec<u32>],
    ) -> Result<Self, TreeError> {
        let r = sequences.len();
        if r == 0 {
            return Err(TreeError::NoBranches);
        }
        if levels.len() != r || levels.iter().any(|row| row.len() != r) {
            return Err(TreeError::MatrixShape);
        }
        let mut flat = Vec::with_capacity(r * (r - 1) / 2);
        for i in 0..r {
            for j in i + 1..r {
                let level = levels[i][j];
                if level == 0 || !compatibility(&sequences[i], &sequences[j]).admits(level) {
                    return Err(TreeError::InvalidLevel {
                        i: i + 1,
                        j: j + 1,
                        level,
                    });
                }
                flat.push(level);
            }
        }
        let matrix = TreeMatrix {
            sequences,
            levels: flat,
        };
        if matrix.is_untwisted() {
            return Ok(matrix);
        }
        if r > REALIZABILITY_SEARCH_MAX_RANK {
            return Err(TreeError::RankTooLarge(r));
        }
        let mut sigma: Vec<usize> = (0..r).collect();
        loop {
            if matrix.permute_unchecked(&sigma).is_untwisted() {
                return Ok(matrix);
            }
            if !next_permutation(&mut sigma) {
                return Err(TreeError::NotRealizable);
            }
        }
    }

    pub(crate) fn from_parts_unchecked(sequences: Vec<MultiplicitySequence>, levels: Vec<u32>) -> Self {
        debug_assert_eq!(levels.len(), sequences.len() * (sequences.len() - 1) / 2);
        TreeMatrix { sequences, levels }
    }

    pub fn rank(&self) -> usize {
        self.sequences.len()
    }

    pub fn sequences(&self) -> &[MultiplicitySequence] {
        &self.sequences
    }

    /// Gluing level between distinct branches `i` and `j` (0-based, either
    /// order).
    pub fn level(&self, i: usize, j: usize) -> u32 {
        assert_ne!(i, j, "a branch is glued to itself at every level");
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.levels[pair_index(self.rank(), a, b)]
    }

    /// The full matrix with zero diagonal and zero lower triangle.
    pub fn rows(&self) -> Vec<Vec<u32>> {
        let r = self.rank();
        (0..r)
            .map(|i| (0..r).map(|j| if j > i { self.level(i, j) } else { 0 }).collect())
            .collect()
    }

    /// Whether `p_{i,j} = min(p_{i,i+1}, ..., p_{j-1,j})` for all `i < j`.
    pub fn is_untwisted(&self) -> bool {
        let r = self.rank();
        (0..r).all(|i| {
            let mut run = u32::MAX;
            (i + 1..r).all(|j| {
                run = run.min(self.level(j - 1, j));
                self.level(i, j) == run
            })
        })
    }

    /// The untwisted vector form, when the matrix is untwisted.
    pub fn to_untwisted(&self) -> Option<UntwistedTree> {
        self.is_untwisted().then(|| {
            UntwistedTree::from_parts_unchecked(
                self.sequences.clone(),
                (1..self.rank()).map(|j| self.level(j - 1, j)).collect(),
            )
        })
    }

    /// Relabels branches: new branch `a` is old branch `sigma[a]`.
    pub fn permute(&self, sigma: &[usize]) -> Result<Self, TreeError> {
        if !is_permutation(sigma, self.rank()) {
            return Err(TreeError::NotPermutation);
        }
        Ok(self.permute_unchecked(sigma))
    }

    fn permute_unchecked(&self, sigma: &[usize]) -> Self {
        let r = self.rank();
        let sequences = sigma.iter().map(|&s| self.sequences[s].clone()).collect();
        let mut levels = Vec::with_capacity(self.levels.len());
        for a in 0..r {
            for b in a + 1..r {
                levels.push(self.level(sigma[a], sigma[b]));
            }
        }
        TreeMatrix { sequences, levels }
    }

    /// Genus of the semigroup: coordinate sum of the conductor minus the
    /// number of non-canonical nodes.
    pub fn genus(&self) -> u64 {
        let grid = self.node_grid();
        let c: u64 = self.conductor().iter().map(|&x| u64::from(x)).sum();
        c - grid.non_canonical_count() as u64
    }

    pub fn conductor(&self) -> Vec<u32> {
        let r = self.rank();
        if r == 1 {
            return vec![self.sequences[0].conductor()];
        }
        (0..r)
            .map(|i| {
                let glued = (0..r)
                    .filter(|&j| j != i)
                    .map(|j| self.level(i, j) as usize)
                    .max()
                    .unwrap_or(0);
                self.sequences[i].prefix_sum(self.sequences[i].len().max(glued))
            })
            .collect()
    }

    pub fn node_grid(&self) -> NodeGrid {
        NodeGrid::build(&self.sequences, |i, j| self.level(i, j))
    }

    pub fn expand_semigroup(&self, bounds: &[u32]) -> Result<FiniteGoodSemigroup, TreeError> {
        expand(&self.sequences, &self.conductor(), bounds, |i, j| self.level(i, j))
    }
}

fn is_permutation(sigma: &[usize], r: usize) -> bool {
    if sigma.len() != r {
        return false;
    }
    let mut seen = vec![false; r];
    sigma.iter().all(|&s| s < r && !core::mem::replace(&mut seen[s], true))
}

/// Advances `perm` to the next permutation in lexicographic order; returns
/// `false` (leaving it sorted ascending) after the last one.
pub fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        perm.reverse();
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// One node of a multiplicity tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridNode {
    /// 1-based level.
    pub level: usize,
    /// Branches (0-based, ascending) passing through this node.
    pub branches: Vec<usize>,
    pub vector: Vec<u32>,
    /// Index of the parent node in [`NodeGrid::nodes`].
    pub parent: Option<usize>,
}

impl GridNode {
    /// Whether this is the terminal canonical vector `e_i` of a lone branch.
    pub fn is_canonical(&self) -> bool {
        self.branches.len() == 1 && self.vector[self.branches[0]] == 1
    }
}

/// Explicit nodes of a tree down to the level where every node is
/// canonical. Glued branches share their nodes, so each node appears once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeGrid {
    rank: usize,
    depth: usize,
    nodes: Vec<GridNode>,
}

impl NodeGrid {
    fn build(sequences: &[MultiplicitySequence], level_of: impl Fn(usize, usize) -> u32) -> Self {
        let r = sequences.len();
        let depth = 1 + (0..r)
            .map(|i| {
                let glued = (0..r)
                    .filter(|&j| j != i)
                    .map(|j| level_of(i, j) as usize)
                    .max()
                    .unwrap_or(0);
                sequences[i].len().max(glued)
            })
            .max()
            .unwrap_or(0);

        let mut nodes: Vec<GridNode> = Vec::new();
        let mut owner_prev: Vec<usize> = Vec::new();
        for level in 1..=depth {
            let mut owner = vec![usize::MAX; r];
            for i in 0..r {
                if owner[i] != usize::MAX {
                    continue;
                }
                let block: Vec<usize> = (0..r)
                    .filter(|&h| h == i || level_of(i, h) as usize >= level)
                    .collect();
                let mut vector = vec![0; r];
                for &h in &block {
                    vector[h] = sequences[h].at(level);
                    owner[h] = nodes.len();
                }
                nodes.push(GridNode {
                    level,
                    parent: (level > 1).then(|| owner_prev[i]),
                    branches: block,
                    vector,
                });
            }
            owner_prev = owner;
        }
        NodeGrid { rank: r, depth, nodes }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of levels; every node on the last level is canonical.
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Nodes ordered by level, then by their lowest branch.
    pub fn nodes(&self) -> &[GridNode] {
        &self.nodes
    }

    pub fn level(&self, level: usize) -> impl Iterator<Item = &GridNode> {
        self.nodes.iter().filter(move |n| n.level == level)
    }

    /// The node on branch `branch` (0-based) at 1-based `level`; levels
    /// past the stored depth are the canonical vector of the branch.
    pub fn node(&self, branch: usize, level: usize) -> GridNode {
        if level <= self.depth {
            let found = self
                .nodes
                .iter()
                .find(|n| n.level == level && n.branches.contains(&branch))
                .expect("every branch has a node on every level");
            return found.clone();
        }
        let mut vector = vec![0; self.rank];
        vector[branch] = 1;
        GridNode {
            level,
            branches: vec![branch],
            vector,
            parent: None,
        }
    }

    pub fn children(&self, index: usize) -> impl Iterator<Item = usize> + '_ {
        self.nodes
            .iter()
            .enumerate()
            .filter(move |(_, n)| n.parent == Some(index))
            .map(|(i, _)| i)
    }

    pub fn non_canonical_count(&self) -> usize {
        self.nodes.iter().filter(|n| !n.is_canonical()).count()
    }

    /// Componentwise sum of the nodes that are not canonical vectors.
    pub fn non_canonical_sum(&self) -> Vec<u32> {
        let mut sum = vec![0; self.rank];
        for n in self.nodes.iter().filter(|n| !n.is_canonical()) {
            for (s, v) in sum.iter_mut().zip(&n.vector) {
                *s += v;
            }
        }
        sum
    }

    /// The nonzero components met walking down branch `branch`.
    pub fn branch_projection(&self, branch: usize) -> Vec<u32> {
        (1..=self.depth)
            .map(|level| self.node(branch, level).vector[branch])
            .collect()
    }
}

/// Elements of a good semigroup of ℕ^r inside a box `[0, bounds)`, with its
/// conductor. Every vector between the conductor and the box is a member.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGoodSemigroup {
    bounds: Vec<u32>,
    conductor: Vec<u32>,
    cells: Vec<bool>,
}

impl FiniteGoodSemigroup {
    /// Builds the set from explicit elements (those outside the box are
    /// dropped), adding `0` and saturating the region above `conductor`.
    pub fn from_elements<I>(bounds: Vec<u32>, conductor: Vec<u32>, elements: I) -> Result<Self, TreeError>
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        if bounds.len() != conductor.len() || bounds.contains(&0) {
            return Err(TreeError::BoxTooSmall);
        }
        let size = bounds.iter().map(|&b| b as usize).product();
        let mut set = FiniteGoodSemigroup {
            bounds,
            conductor,
            cells: vec![false; size],
        };
        let zero = vec![0; set.rank()];
        set.insert(&zero);
        for e in elements {
            if set.in_box(&e) {
                set.insert(&e);
            }
        }
        set.saturate();
        Ok(set)
    }

    /// ℕ^r clipped to the box.
    pub fn natural(bounds: Vec<u32>) -> Self {
        let conductor = vec![0; bounds.len()];
        Self::from_elements(bounds, conductor, core::iter::empty())
            .expect("positive bounds")
    }

    pub fn rank(&self) -> usize {
        self.bounds.len()
    }

    pub fn bounds(&self) -> &[u32] {
        &self.bounds
    }

    pub fn conductor(&self) -> &[u32] {
        &self.conductor
    }

    pub fn in_box(&self, v: &[u32]) -> bool {
        v.len() == self.rank() && v.iter().zip(&self.bounds).all(|(x, b)| x < b)
    }

    fn index(&self, v: &[u32]) -> usize {
        v.iter()
            .zip(&self.bounds)
            .fold(0usize, |acc, (&x, &b)| acc * b as usize + x as usize)
    }

    fn vector_at(&self, mut index: usize) -> Vec<u32> {
        let mut v = vec![0; self.rank()];
        for k in (0..self.rank()).rev() {
            let b = self.bounds[k] as usize;
            v[k] = (index % b) as u32;
            index /= b;
        }
        v
    }

    fn insert(&mut self, v: &[u32]) {
        let i = self.index(v);
        self.cells[i] = true;
    }

    fn saturate(&mut self) {
        if self.conductor.iter().zip(&self.bounds).any(|(c, b)| c >= b) {
            return;
        }
        for i in 0..self.cells.len() {
            let v = self.vector_at(i);
            if v.iter().zip(&self.conductor).all(|(x, c)| x >= c) {
                self.cells[i] = true;
            }
        }
    }

    /// Membership; vectors outside the box are not members.
    pub fn contains(&self, v: &[u32]) -> bool {
        self.in_box(v) && self.cells[self.index(v)]
    }

    /// Members in row-major order of the box.
    pub fn elements(&self) -> Vec<Vec<u32>> {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| self.vector_at(i))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.cells.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Debug for FiniteGoodSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGoodSemigroup")
            .field("bounds", &self.bounds)
            .field("conductor", &self.conductor)
            .field("elements", &self.elements())
            .finish()
    }
}

/// Subtree sums: a finite subtree rooted at the root is a cut depth
/// `d_i >= 1` per branch, where branches glued at level `p` must agree on
/// `min(d, p)` because they share those nodes. Its sum has coordinate `i`
/// equal to `m_1 + ... + m_{d_i}` of branch `i`.
fn expand(
    sequences: &[MultiplicitySequence],
    conductor: &[u32],
    bounds: &[u32],
    level_of: impl Fn(usize, usize) -> u32,
) -> Result<FiniteGoodSemigroup, TreeError> {
    let r = sequences.len();
    if bounds.len() != r || bounds.iter().zip(conductor).any(|(b, c)| *b <= *c) {
        return Err(TreeError::BoxTooSmall);
    }
    let mut elements = Vec::new();
    let mut depths = vec![0usize; r];
    cut_depths(0, sequences, bounds, &level_of, &mut depths, &mut elements);
    FiniteGoodSemigroup::from_elements(bounds.to_vec(), conductor.to_vec(), elements)
}

fn cut_depths(
    branch: usize,
    sequences: &[MultiplicitySequence],
    bounds: &[u32],
    level_of: &impl Fn(usize, usize) -> u32,
    depths: &mut [usize],
    out: &mut Vec<Vec<u32>>,
) {
    if branch == sequences.len() {
        out.push(
            depths
                .iter()
                .zip(sequences)
                .map(|(&d, m)| m.prefix_sum(d))
                .collect(),
        );
        return;
    }
    let mut d = 1;
    while sequences[branch].prefix_sum(d) < bounds[branch] {
        let consistent = (0..branch).all(|h| {
            let p = level_of(h, branch) as usize;
            depths[h].min(p) == d.min(p)
        });
        if consistent {
            depths[branch] = d;
            cut_depths(branch + 1, sequences, bounds, level_of, depths, out);
        }
        d += 1;
    }
}
