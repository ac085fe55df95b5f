//! Size cap for lattice sums and memoized per-`n` tables of `P(n)` grouped by type.
//!
//! Every summand in the transforms depends on a partition only through its
//! multiset of block sizes, so each table stores one [`TypeClass`] per type,
//! with multiplicities tallied by walking the whole enumeration of `P(n)`.
//! Tables are published once through a `OnceLock` and are immutable after.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::OnceLock;

use super::{is_noncrossing_rgs, mobius_from_zero_sizes, RgsIter};
use crate::error::{Error, Result};

pub const DEFAULT_PARTITION_CAP: usize = 12;
/// Bell(15) is about 1.4e9; nothing above this is ever enumerated.
pub const HARD_PARTITION_CAP: usize = 15;

static CAP: AtomicUsize = AtomicUsize::new(DEFAULT_PARTITION_CAP);

pub fn partition_cap() -> usize {
    CAP.load(Ordering::Relaxed)
}

/// Sets the cap `n_max` for every operation that sums over `P(n)`.
pub fn set_partition_cap(cap: usize) -> Result<()> {
    if cap == 0 || cap > HARD_PARTITION_CAP {
        return Err(Error::SizeLimit { n: cap, cap: HARD_PARTITION_CAP });
    }
    CAP.store(cap, Ordering::Relaxed);
    Ok(())
}

pub fn check_size(n: usize) -> Result<()> {
    let cap = partition_cap();
    if n == 0 || n > cap {
        Err(Error::SizeLimit { n, cap })
    } else {
        Ok(())
    }
}

/// All partitions of one type inside `P(n)`.
#[derive(Clone, Debug)]
pub struct TypeClass {
    /// Block sizes in descending order.
    pub sizes: Vec<usize>,
    pub count_all: u64,
    pub count_noncrossing: u64,
    /// `μ(0_n, π)` for any `π` of this type.
    pub mobius: i64,
}

impl TypeClass {
    pub fn num_blocks(&self) -> usize {
        self.sizes.len()
    }
}

#[derive(Debug)]
pub struct LatticeTable {
    n: usize,
    classes: Vec<TypeClass>,
    index: HashMap<Vec<usize>, usize>,
    coarsenings: OnceLock<Vec<Vec<(usize, u64)>>>,
}

impl LatticeTable {
    fn build(n: usize) -> Self {
        let mut classes: Vec<TypeClass> = Vec::new();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut it = RgsIter::new(n);
        let mut sizes = vec![0usize; n];
        while let Some(labels) = it.advance() {
            sizes.iter_mut().for_each(|s| *s = 0);
            let mut k = 0;
            for &l in labels {
                sizes[l as usize] += 1;
                k = k.max(l as usize + 1);
            }
            let mut key = sizes[..k].to_vec();
            key.sort_unstable_by(|a, b| b.cmp(a));
            let nc = is_noncrossing_rgs(labels);
            let slot = *index.entry(key.clone()).or_insert_with(|| {
                classes.push(TypeClass {
                    mobius: mobius_from_zero_sizes(&key),
                    sizes: key,
                    count_all: 0,
                    count_noncrossing: 0,
                });
                classes.len() - 1
            });
            classes[slot].count_all += 1;
            if nc {
                classes[slot].count_noncrossing += 1;
            }
        }
        LatticeTable { n, classes, index, coarsenings: OnceLock::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Type classes in order of first appearance in the enumeration.
    pub fn classes(&self) -> &[TypeClass] {
        &self.classes
    }

    pub fn class_of(&self, sizes: &[usize]) -> Option<usize> {
        let mut key = sizes.to_vec();
        key.sort_unstable_by(|a, b| b.cmp(a));
        self.index.get(&key).copied()
    }

    /// For class `i`, the pairs `(j, c)`: a fixed `σ` of class `i` has exactly `c`
    /// coarsenings `π ⪰ σ` of class `j`. Obtained by enumerating `P(|σ|)` over the
    /// blocks of `σ`, since `[σ, 1_n] ≅ P(|σ|)`.
    pub fn coarsenings(&self, i: usize) -> &[(usize, u64)] {
        let all = self.coarsenings.get_or_init(|| {
            self.classes
                .iter()
                .map(|class| {
                    let mut tally: Vec<u64> = vec![0; self.classes.len()];
                    let k = class.sizes.len();
                    let mut it = RgsIter::new(k);
                    let mut merged = vec![0usize; k];
                    while let Some(labels) = it.advance() {
                        merged.iter_mut().for_each(|s| *s = 0);
                        let mut m = 0;
                        for (b, &l) in labels.iter().enumerate() {
                            merged[l as usize] += class.sizes[b];
                            m = m.max(l as usize + 1);
                        }
                        let j = self.class_of(&merged[..m]).expect("coarsening of a partition of n");
                        tally[j] += 1;
                    }
                    tally
                        .into_iter()
                        .enumerate()
                        .filter(|&(_, c)| c > 0)
                        .collect()
                })
                .collect()
        });
        &all[i]
    }
}

static TABLES: [OnceLock<LatticeTable>; HARD_PARTITION_CAP + 1] = [const { OnceLock::new() }; HARD_PARTITION_CAP + 1];

/// The memoized table for `P(n)`, subject to the current cap.
pub fn lattice_table(n: usize) -> Result<&'static LatticeTable> {
    check_size(n)?;
    Ok(TABLES[n].get_or_init(|| LatticeTable::build(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{enumerate_partitions, CountMode, PartitionType};
    use num_bigint::BigUint;

    const BELL: [u64; 11] = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975];
    const CATALAN: [u64; 11] = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796];

    #[test]
    fn table_totals_are_bell_and_catalan() {
        for n in 1..=10 {
            let t = lattice_table(n).unwrap();
            let all: u64 = t.classes().iter().map(|c| c.count_all).sum();
            let nc: u64 = t.classes().iter().map(|c| c.count_noncrossing).sum();
            assert_eq!(all, BELL[n]);
            assert_eq!(nc, CATALAN[n]);
            for c in t.classes() {
                let ty = PartitionType::from_block_sizes(&c.sizes);
                assert_eq!(ty.count(CountMode::All), BigUint::from(c.count_all));
                assert_eq!(ty.count(CountMode::NonCrossing), BigUint::from(c.count_noncrossing));
            }
        }
    }

    #[test]
    fn coarsening_counts_match_filtering() {
        let n = 6;
        let t = lattice_table(n).unwrap();
        let parts = enumerate_partitions(n).unwrap();
        for (i, class) in t.classes().iter().enumerate() {
            let sigma = parts
                .iter()
                .find(|p| t.class_of(&p.block_sizes()) == Some(i))
                .unwrap();
            let mut tally = vec![0u64; t.classes().len()];
            for pi in parts.iter().filter(|pi| sigma.refines(pi)) {
                tally[t.class_of(&pi.block_sizes()).unwrap()] += 1;
            }
            let expected: Vec<(usize, u64)> = tally.into_iter().enumerate().filter(|&(_, c)| c > 0).collect();
            assert_eq!(t.coarsenings(i), expected.as_slice(), "class {:?}", class.sizes);
        }
    }

    #[test]
    fn cap_rejects_out_of_range() {
        assert!(lattice_table(0).is_err());
        assert!(lattice_table(DEFAULT_PARTITION_CAP + 1).is_err());
        assert!(set_partition_cap(HARD_PARTITION_CAP + 1).is_err());
        assert!(set_partition_cap(0).is_err());
    }
}
