//! Set partitions of `{1..n}` and the lattice structure of `P(n)` and `NC(n)`.
//!
//! A [`SetPartition`] is stored as its restricted growth string: element `i`
//! carries the label of its block, labels are assigned in order of first
//! appearance. This makes the canonical form unique and makes the derived
//! `Ord` coincide with the enumeration order of [`enumerate_partitions`].
//!
//! The order on partitions is reverse refinement: `π ⪯ σ` iff every block of
//! `π` lies inside a block of `σ`. `0_n` (all singletons) is the minimum and
//! `1_n` (one block) the maximum.

mod lattice;

pub use lattice::{
    check_size, lattice_table, partition_cap, set_partition_cap, LatticeTable, TypeClass, DEFAULT_PARTITION_CAP,
    HARD_PARTITION_CAP,
};

use num_bigint::BigUint;
use num_traits::One;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rational::{factorial, int};
use crate::varpoly::VarPoly;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    labels: Vec<u8>,
}

impl SetPartition {
    /// Builds a partition from 1-based blocks, in any order.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("a set partition needs n >= 1"));
        }
        if n > u8::MAX as usize {
            return Err(Error::domain(format!("ground set of size {n} is too large")));
        }
        let mut block_of = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::domain("empty block"));
            }
            for &e in block {
                if e == 0 || e > n {
                    return Err(Error::domain(format!("element {e} outside 1..={n}")));
                }
                if block_of[e - 1] != usize::MAX {
                    return Err(Error::domain(format!("element {e} appears in two blocks")));
                }
                block_of[e - 1] = b;
            }
        }
        if let Some(missing) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::domain(format!("element {} is not covered", missing + 1)));
        }
        Ok(Self::relabel(&block_of))
    }

    /// Accepts any labelling (not necessarily restricted growth) and canonicalizes it.
    pub fn from_labels<T: Copy + Eq + std::hash::Hash>(labels: &[T]) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::domain("a set partition needs n >= 1"));
        }
        if labels.len() > u8::MAX as usize {
            return Err(Error::domain("ground set too large"));
        }
        Ok(Self::relabel(labels))
    }

    fn relabel<T: Copy + Eq + std::hash::Hash>(labels: &[T]) -> Self {
        let mut seen = std::collections::HashMap::new();
        let labels = labels
            .iter()
            .map(|l| {
                let next = seen.len() as u8;
                *seen.entry(*l).or_insert(next)
            })
            .collect();
        SetPartition { labels }
    }

    pub(crate) fn from_rgs_unchecked(labels: Vec<u8>) -> Self {
        SetPartition { labels }
    }

    /// `0_n`: all singletons.
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1 && n <= u8::MAX as usize);
        SetPartition { labels: (0..n as u8).collect() }
    }

    /// `1_n`: a single block.
    pub fn one(n: usize) -> Self {
        assert!(n >= 1 && n <= u8::MAX as usize);
        SetPartition { labels: vec![0; n] }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Restricted growth string (0-based block label of each element).
    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    /// `|π|`
    pub fn num_blocks(&self) -> usize {
        self.labels.iter().copied().max().map_or(0, |m| m as usize + 1)
    }

    /// Blocks in canonical order (sorted by least element), 1-based and sorted.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (i, &l) in self.labels.iter().enumerate() {
            blocks[l as usize].push(i + 1);
        }
        blocks
    }

    /// Block sizes in canonical block order.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.num_blocks()];
        for &l in &self.labels {
            sizes[l as usize] += 1;
        }
        sizes
    }

    /// `self ⪯ other` in reverse refinement order.
    pub fn refines(&self, other: &SetPartition) -> bool {
        if self.n() != other.n() {
            return false;
        }
        let mut image = [u8::MAX; 256];
        for (&a, &b) in self.labels.iter().zip(&other.labels) {
            let slot = &mut image[a as usize];
            if *slot == u8::MAX {
                *slot = b;
            } else if *slot != b {
                return false;
            }
        }
        true
    }

    /// False iff some `a < b < c < d` has `a, c` in one block and `b, d` in another.
    pub fn is_noncrossing(&self) -> bool {
        is_noncrossing_rgs(&self.labels)
    }

    /// Least upper bound in reverse refinement order.
    pub fn join(&self, other: &SetPartition) -> Result<SetPartition> {
        if self.n() != other.n() {
            return Err(Error::Dimension(format!(
                "cannot join partitions of {} and {} elements",
                self.n(),
                other.n()
            )));
        }
        Ok(SetPartition::from_rgs_unchecked(join_rgs(&self.labels, &other.labels)))
    }

    /// `μ(0_n, π) = Π_V (-1)^{|V|-1} (|V|-1)!`
    pub fn mobius_from_zero(&self) -> i64 {
        mobius_from_zero_sizes(&self.block_sizes())
    }

    /// `μ(π, 1_n) = (-1)^{|π|-1} (|π|-1)!`; the interval `[π, 1_n]` is isomorphic to `P(|π|)`.
    pub fn mobius_to_one(&self) -> i64 {
        mobius_to_one_blocks(self.num_blocks())
    }

    pub fn partition_type(&self) -> PartitionType {
        PartitionType::from_block_sizes(&self.block_sizes())
    }

    /// `n_σ`: the product of all block sizes.
    pub fn block_size_product(&self) -> u64 {
        self.block_sizes().iter().map(|&s| s as u64).product()
    }
}

pub(crate) fn mobius_from_zero_sizes(sizes: &[usize]) -> i64 {
    sizes
        .iter()
        .map(|&s| {
            let f: i64 = (1..s as i64).product();
            if s % 2 == 0 {
                -f
            } else {
                f
            }
        })
        .product()
}

pub(crate) fn mobius_to_one_blocks(k: usize) -> i64 {
    let f: i64 = (1..k as i64).product();
    if k % 2 == 0 {
        -f
    } else {
        f
    }
}

/// Stack scan: a block may only reappear while it is the innermost open block.
pub(crate) fn is_noncrossing_rgs(labels: &[u8]) -> bool {
    let mut last = [0usize; 256];
    for (i, &l) in labels.iter().enumerate() {
        last[l as usize] = i;
    }
    let mut opened = [false; 256];
    let mut stack: Vec<u8> = Vec::with_capacity(labels.len());
    for (i, &l) in labels.iter().enumerate() {
        if !opened[l as usize] {
            opened[l as usize] = true;
            stack.push(l);
        } else if stack.last() != Some(&l) {
            return false;
        }
        if last[l as usize] == i {
            stack.pop();
        }
    }
    true
}

pub(crate) fn join_rgs(a: &[u8], b: &[u8]) -> Vec<u8> {
    let n = a.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for labels in [a, b] {
        let mut first = [usize::MAX; 256];
        for (i, &l) in labels.iter().enumerate() {
            let f = first[l as usize];
            if f == usize::MAX {
                first[l as usize] = i;
            } else {
                let (ra, rb) = (find(&mut parent, f), find(&mut parent, i));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }
    let mut label_of_root = vec![u8::MAX; n];
    let mut next = 0u8;
    (0..n)
        .map(|i| {
            let r = find(&mut parent, i);
            if label_of_root[r] == u8::MAX {
                label_of_root[r] = next;
                next += 1;
            }
            label_of_root[r]
        })
        .collect()
}

/// True iff the join of the two labellings is `1_n`.
pub(crate) fn joins_to_one(a: &[u8], b: &[u8]) -> bool {
    join_rgs(a, b).iter().all(|&l| l == 0)
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, block) in self.blocks().iter().enumerate() {
            if k > 0 {
                write!(f, "|")?;
            }
            let items: Vec<String> = block.iter().map(usize::to_string).collect();
            write!(f, "{}", items.join(","))?;
        }
        write!(f, "}}")
    }
}

impl FromStr for SetPartition {
    type Err = Error;

    /// Parses the text form `{1,3|2,4}`; `n` is the largest element.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| Error::parse(format!("set partition must look like {{1,3|2,4}}, got {s:?}")))?;
        let blocks = inner
            .split('|')
            .map(|b| {
                b.split(',')
                    .map(|e| {
                        e.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::parse(format!("bad element {e:?} in {s:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let n = blocks.iter().flatten().copied().max().unwrap_or(0);
        SetPartition::from_blocks(n, &blocks).map_err(|e| Error::parse(e.to_string()))
    }
}

/// Lexicographic iterator over restricted growth strings of length `n`.
pub(crate) struct RgsIter {
    labels: Vec<u8>,
    // prefix_max[i] = max(labels[0..i]), with prefix_max[0] unused
    prefix_max: Vec<u8>,
    started: bool,
    done: bool,
}

impl RgsIter {
    pub(crate) fn new(n: usize) -> Self {
        RgsIter {
            labels: vec![0; n],
            prefix_max: vec![0; n],
            started: false,
            done: n == 0,
        }
    }

    /// Advances in place and returns the current string; avoids allocation in hot loops.
    pub(crate) fn advance(&mut self) -> Option<&[u8]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.labels);
        }
        let n = self.labels.len();
        for i in (1..n).rev() {
            if self.labels[i] <= self.prefix_max[i] {
                self.labels[i] += 1;
                let m = self.prefix_max[i].max(self.labels[i]);
                for j in i + 1..n {
                    self.labels[j] = 0;
                    self.prefix_max[j] = m;
                }
                return Some(&self.labels);
            }
        }
        self.done = true;
        None
    }
}

impl Iterator for RgsIter {
    type Item = SetPartition;
    fn next(&mut self) -> Option<SetPartition> {
        self.advance().map(|l| SetPartition::from_rgs_unchecked(l.to_vec()))
    }
}

/// All of `P(n)` in restricted-growth-string lexicographic order.
pub fn enumerate_partitions(n: usize) -> Result<Vec<SetPartition>> {
    check_size(n)?;
    Ok(RgsIter::new(n).collect())
}

/// `NC(n)`, in the same order as [`enumerate_partitions`].
pub fn enumerate_noncrossing(n: usize) -> Result<Vec<SetPartition>> {
    check_size(n)?;
    Ok(RgsIter::new(n).filter(SetPartition::is_noncrossing).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartitionType {
    n: usize,
    r: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMode {
    All,
    NonCrossing,
}

impl PartitionType {
    /// `r[i-1]` is the number of blocks of size `i`; `r` may be shorter than `n`.
    pub fn new(n: usize, r: &[usize]) -> Result<Self> {
        if r.len() > n {
            return Err(Error::domain(format!("type vector longer than n = {n}")));
        }
        let weight: usize = r.iter().enumerate().map(|(i, &c)| (i + 1) * c).sum();
        if weight != n || n == 0 {
            return Err(Error::domain(format!(
                "type vector has weight {weight}, expected n = {n} >= 1"
            )));
        }
        let mut r = r.to_vec();
        r.resize(n, 0);
        Ok(PartitionType { n, r })
    }

    pub fn from_block_sizes(sizes: &[usize]) -> Self {
        let n: usize = sizes.iter().sum();
        let mut r = vec![0; n];
        for &s in sizes {
            r[s - 1] += 1;
        }
        PartitionType { n, r }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of blocks of size `i` (1-based).
    pub fn blocks_of_size(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.r.get(i - 1).copied().unwrap_or(0)
        }
    }

    pub fn r(&self) -> &[usize] {
        &self.r
    }

    /// `m = Σ r_i`
    pub fn num_blocks(&self) -> usize {
        self.r.iter().sum()
    }

    /// Block sizes in descending order.
    pub fn sizes_desc(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.num_blocks());
        for (i, &c) in self.r.iter().enumerate().rev() {
            out.extend(std::iter::repeat_n(i + 1, c));
        }
        out
    }

    /// Number of partitions of this type, by the closed forms
    /// `n! / (p_r (n-m+1)!)` for `NC(n)` and `n! / (p_r Π (i!)^{r_i})` for `P(n)`.
    pub fn count(&self, mode: CountMode) -> BigUint {
        let to_u = |b: num_bigint::BigInt| b.to_biguint().expect("factorials are positive");
        let p_r: BigUint = self.r.iter().map(|&c| to_u(factorial(c))).product();
        let n_fact = to_u(factorial(self.n));
        let denom = match mode {
            CountMode::NonCrossing => p_r * to_u(factorial(self.n + 1 - self.num_blocks())),
            CountMode::All => {
                let blocks: BigUint = self
                    .r
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| num_traits::pow(to_u(factorial(i + 1)), c))
                    .product();
                p_r * blocks
            }
        };
        n_fact / denom
    }
}

pub fn count_by_type(t: &PartitionType, mode: CountMode) -> BigUint {
    t.count(mode)
}

/// `f_π = Π_V f_{|V|}` with `f[k-1]` holding `f_k`.
pub fn multiplicative_extension<T>(f: &[T], pi: &SetPartition) -> Result<T>
where
    T: Clone + One + for<'a> Mul<&'a T, Output = T>,
{
    extend_over_sizes(f, &pi.block_sizes())
}

pub(crate) fn extend_over_sizes<T>(f: &[T], sizes: &[usize]) -> Result<T>
where
    T: Clone + One + for<'a> Mul<&'a T, Output = T>,
{
    sizes.iter().try_fold(T::one(), |acc, &s| {
        f.get(s - 1)
            .map(|v| acc * v)
            .ok_or_else(|| Error::Index(format!("sequence has {} entries, block of size {s} needs more", f.len())))
    })
}

/// `Σ_{π ∈ P(n)} μ(0, π) t^{|π|}`, summed over the enumeration.
pub fn partition_lattice_charpoly(n: usize) -> Result<VarPoly> {
    check_size(n)?;
    let mut coeffs = vec![0i64; n + 1];
    let mut it = RgsIter::new(n);
    let mut sizes = vec![0usize; n];
    while let Some(labels) = it.advance() {
        sizes.iter_mut().for_each(|s| *s = 0);
        let mut k = 0;
        for &l in labels {
            sizes[l as usize] += 1;
            k = k.max(l as usize + 1);
        }
        coeffs[k] += mobius_from_zero_sizes(&sizes[..k]);
    }
    Ok(VarPoly::new(coeffs.into_iter().map(int).collect()))
}
