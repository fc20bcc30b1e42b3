//! Partitions of a model's points and explicit pair relations.

use crate::error::{Error, Result};
use crate::set::PointSet;

/// A partition of the points `0..width` into disjoint non-empty classes.
///
/// Classes are numbered canonically: class ids follow the order of each
/// class's least member, so two equal partitions always have identical
/// numbering regardless of how they were produced. Classes are stored as
/// sorted member lists, so the whole structure stays linear in the carrier
/// size even when every class is a singleton.
#[derive(Clone, PartialEq, Eq)]
pub struct Partition {
    class_of: Vec<u32>,
    classes: Vec<Vec<usize>>,
}

impl Partition {
    /// Build from an arbitrary class assignment; ids are compacted and
    /// renumbered canonically (by least member).
    pub fn from_class_of(raw: &[u32]) -> Partition {
        let width = raw.len();
        assert!(width > 0, "partition of an empty carrier");
        let mut remap: std::collections::HashMap<u32, u32> = std::collections::HashMap::new();
        let mut class_of = vec![0u32; width];
        for (i, &c) in raw.iter().enumerate() {
            let next = remap.len() as u32;
            let id = *remap.entry(c).or_insert(next);
            class_of[i] = id;
        }
        let count = remap.len();
        let mut classes = vec![Vec::new(); count];
        for (i, &c) in class_of.iter().enumerate() {
            classes[c as usize].push(i);
        }
        Partition { class_of, classes }
    }

    /// Each point in its own class.
    pub fn identity(width: usize) -> Partition {
        Partition::from_class_of(&(0..width as u32).collect::<Vec<_>>())
    }

    /// One class holding every point.
    pub fn single(width: usize) -> Partition {
        Partition::from_class_of(&vec![0; width])
    }

    /// Build from explicit classes; they must cover `0..width` exactly once.
    pub fn from_classes(width: usize, classes: &[Vec<usize>]) -> Result<Partition> {
        let mut class_of = vec![u32::MAX; width];
        for (c, members) in classes.iter().enumerate() {
            if members.is_empty() {
                return Err(Error::InvalidPartition {
                    reason: format!("class {c} is empty"),
                });
            }
            for &p in members {
                if p >= width {
                    return Err(Error::InvalidPartition {
                        reason: format!("point {p} out of range {width}"),
                    });
                }
                if class_of[p] != u32::MAX {
                    return Err(Error::InvalidPartition {
                        reason: format!("point {p} appears in more than one class"),
                    });
                }
                class_of[p] = c as u32;
            }
        }
        if let Some(p) = class_of.iter().position(|&c| c == u32::MAX) {
            return Err(Error::InvalidPartition {
                reason: format!("point {p} is not covered by any class"),
            });
        }
        Ok(Partition::from_class_of(&class_of))
    }

    pub fn width(&self) -> usize {
        self.class_of.len()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    #[inline]
    pub fn class_of(&self, point: usize) -> usize {
        self.class_of[point] as usize
    }

    pub fn class_assignment(&self) -> &[u32] {
        &self.class_of
    }

    /// Members of one class, sorted.
    pub fn class(&self, id: usize) -> &[usize] {
        &self.classes[id]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// One class as a bitset over the carrier.
    pub fn class_set(&self, id: usize) -> PointSet {
        PointSet::from_iter(self.width(), self.classes[id].iter().copied())
    }

    pub fn same_class(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    /// True iff every class of `self` is contained in a class of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        assert_eq!(self.width(), coarser.width());
        self.classes.iter().all(|cls| {
            let rep = cls[0];
            cls[1..].iter().all(|&p| coarser.class_of(p) == coarser.class_of(rep))
        })
    }

    /// View as the set of related ordered pairs.
    pub fn to_pair_relation(&self) -> PairRelation {
        let mut rel = PairRelation::empty(self.width());
        for cls in &self.classes {
            for &a in cls {
                for &b in cls {
                    rel.insert(a, b);
                }
            }
        }
        rel
    }
}

impl std::fmt::Debug for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.classes.iter()).finish()
    }
}

/// An explicit set of ordered point pairs over one model, stored densely.
///
/// Used for candidate bisimulations and for the pair-based greatest-fixpoint
/// computations; `n * n` bits, so only suitable for small carriers.
#[derive(Clone, PartialEq, Eq)]
pub struct PairRelation {
    n: usize,
    rows: Vec<PointSet>,
}

impl PairRelation {
    pub fn empty(n: usize) -> PairRelation {
        PairRelation {
            n,
            rows: vec![PointSet::empty(n); n],
        }
    }

    pub fn width(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.rows[a].contains(b)
    }

    #[inline]
    pub fn insert(&mut self, a: usize, b: usize) {
        self.rows[a].insert(b);
    }

    #[inline]
    pub fn remove(&mut self, a: usize, b: usize) {
        self.rows[a].remove(b);
    }

    /// Points related to `a` on the right (the row of `a`).
    pub fn row(&self, a: usize) -> &PointSet {
        &self.rows[a]
    }

    pub fn iter_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.iter().map(move |b| (a, b)))
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|a| self.contains(a, a))
    }

    pub fn is_symmetric(&self) -> bool {
        self.iter_pairs().all(|(a, b)| self.contains(b, a))
    }

    /// Returns a violating triple if the relation is not transitive.
    pub fn transitivity_counterexample(&self) -> Option<(usize, usize, usize)> {
        for (a, b) in self.iter_pairs() {
            for c in self.rows[b].iter() {
                if !self.contains(a, c) {
                    return Some((a, b, c));
                }
            }
        }
        None
    }

    /// Convert to a partition, verifying reflexivity, symmetry and
    /// transitivity first.
    pub fn to_partition(&self) -> Result<Partition> {
        if !self.is_reflexive() {
            return Err(Error::NotAnEquivalence {
                detail: "relation is not reflexive".into(),
            });
        }
        if !self.is_symmetric() {
            return Err(Error::NotAnEquivalence {
                detail: "relation is not symmetric".into(),
            });
        }
        if let Some((a, b, c)) = self.transitivity_counterexample() {
            return Err(Error::NotAnEquivalence {
                detail: format!("transitivity fails on ({a}, {b}, {c})"),
            });
        }
        let mut class_of = vec![u32::MAX; self.n];
        let mut next = 0u32;
        for a in 0..self.n {
            if class_of[a] == u32::MAX {
                for b in self.rows[a].iter() {
                    class_of[b] = next;
                }
                next += 1;
            }
        }
        Ok(Partition::from_class_of(&class_of))
    }
}

impl std::fmt::Debug for PairRelation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter_pairs()).finish()
    }
}
