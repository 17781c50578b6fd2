//! Closure of subsets of a finite additive group under addition and a family
//! of unary operators. Left ideals, two-sided ideals and submodules are all
//! instances, differing only in the operator family.

use fixedbitset::FixedBitSet;
use std::cmp::Ordering;
use std::collections::HashSet;

pub(crate) struct OperatorGroup<'a> {
    pub order: usize,
    pub zero: usize,
    pub add: &'a [usize],
    pub ops: Vec<Vec<usize>>,
}

impl OperatorGroup<'_> {
    #[inline]
    pub fn sum(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b]
    }

    /// Smallest closed subset containing `seeds` (and zero).
    pub fn closure(&self, seeds: impl IntoIterator<Item = usize>) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.order);
        let mut elems = Vec::new();
        let push = |x: usize, set: &mut FixedBitSet, elems: &mut Vec<usize>| {
            if !set.put(x) {
                elems.push(x);
            }
        };
        push(self.zero, &mut set, &mut elems);
        for s in seeds {
            push(s, &mut set, &mut elems);
        }
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            for op in &self.ops {
                push(op[x], &mut set, &mut elems);
            }
            for j in 0..=i {
                let y = elems[j];
                push(self.sum(x, y), &mut set, &mut elems);
            }
            i += 1;
        }
        set
    }

    /// Sum of two closed subsets. Both must already be closed.
    pub fn join(&self, a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.order);
        for x in a.ones() {
            for y in b.ones() {
                out.insert(self.sum(x, y));
            }
        }
        out
    }

    pub fn is_closed(&self, set: &FixedBitSet) -> bool {
        if !set.contains(self.zero) {
            return false;
        }
        set.ones().all(|x| {
            self.ops.iter().all(|op| set.contains(op[x]))
                && set.ones().all(|y| set.contains(self.sum(x, y)))
        })
    }

    /// Every closed subset, built from principal closures by pairwise joins
    /// to a fixpoint, returned in canonical order.
    pub fn all_closed(&self) -> Vec<FixedBitSet> {
        let mut principal: Vec<FixedBitSet> = Vec::new();
        let mut seen: HashSet<FixedBitSet> = HashSet::new();
        for x in 0..self.order {
            let c = self.closure([x]);
            if seen.insert(c.clone()) {
                principal.push(c);
            }
        }
        let mut all: Vec<FixedBitSet> = principal.clone();
        let mut i = 0;
        while i < all.len() {
            let a = all[i].clone();
            for p in &principal {
                if p.is_subset(&a) {
                    continue;
                }
                let j = self.join(&a, p);
                if seen.insert(j.clone()) {
                    all.push(j);
                }
            }
            i += 1;
        }
        all.sort_by(canonical_cmp);
        all
    }
}

/// Canonical order on carriers: by size, then by sorted element list.
pub fn canonical_cmp(a: &FixedBitSet, b: &FixedBitSet) -> Ordering {
    a.count_ones(..)
        .cmp(&b.count_ones(..))
        .then_with(|| a.ones().cmp(b.ones()))
}

pub(crate) fn set_from(order: usize, elems: impl IntoIterator<Item = usize>) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(order);
    s.extend(elems);
    s
}

pub(crate) fn full_set(order: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(order);
    s.insert_range(..);
    s
}
