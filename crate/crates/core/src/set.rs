//! Fixed-width bitsets over a model's point indices.

use std::fmt;

/// A subset of the points of one model, stored as a bitset.
///
/// Every set carries the width (point count) of the model it belongs to;
/// binary operations require equal widths.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    width: usize,
    words: Vec<u64>,
}

#[inline]
fn word_count(width: usize) -> usize {
    width.div_ceil(64)
}

impl PointSet {
    pub fn empty(width: usize) -> Self {
        PointSet {
            width,
            words: vec![0; word_count(width)],
        }
    }

    pub fn full(width: usize) -> Self {
        let mut s = Self::empty(width);
        for i in 0..width {
            s.insert(i);
        }
        s
    }

    pub fn singleton(width: usize, id: usize) -> Self {
        let mut s = Self::empty(width);
        s.insert(id);
        s
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(width: usize, iter: I) -> Self {
        let mut s = Self::empty(width);
        for i in iter {
            s.insert(i);
        }
        s
    }

    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn contains(&self, id: usize) -> bool {
        assert!(id < self.width, "point id {id} out of range {}", self.width);
        self.words[id / 64] >> (id % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, id: usize) {
        assert!(id < self.width, "point id {id} out of range {}", self.width);
        self.words[id / 64] |= 1 << (id % 64);
    }

    #[inline]
    pub fn remove(&mut self, id: usize) {
        assert!(id < self.width, "point id {id} out of range {}", self.width);
        self.words[id / 64] &= !(1 << (id % 64));
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn check_width(&self, other: &PointSet) {
        assert_eq!(
            self.width, other.width,
            "point sets of different models: width {} vs {}",
            self.width, other.width
        );
    }

    pub fn union_with(&mut self, other: &PointSet) {
        self.check_width(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &PointSet) {
        self.check_width(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn subtract(&mut self, other: &PointSet) {
        self.check_width(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        let mut s = self.clone();
        s.subtract(other);
        s
    }

    pub fn complement(&self) -> PointSet {
        let mut s = PointSet {
            width: self.width,
            words: self.words.iter().map(|w| !w).collect(),
        };
        // mask out the bits past `width`
        let tail = self.width % 64;
        if tail != 0 {
            if let Some(last) = s.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
        s
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.check_width(other);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &PointSet) -> bool {
        self.check_width(other);
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    /// Iterate over member indices in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let mut a = PointSet::empty(130);
        a.insert(0);
        a.insert(64);
        a.insert(129);
        assert_eq!(a.len(), 3);
        assert!(a.contains(64));
        assert!(!a.contains(63));
        assert_eq!(a.to_vec(), vec![0, 64, 129]);

        let b = PointSet::from_iter(130, [64, 65]);
        assert!(a.intersects(&b));
        assert_eq!(a.intersection(&b).to_vec(), vec![64]);
        assert_eq!(a.union(&b).len(), 4);
        assert_eq!(a.difference(&b).to_vec(), vec![0, 129]);
    }

    #[test]
    fn complement_respects_width() {
        let a = PointSet::from_iter(70, [0, 69]);
        let c = a.complement();
        assert_eq!(c.len(), 68);
        assert!(!c.contains(0));
        assert!(c.contains(1));
        assert_eq!(c.complement(), a);
        assert_eq!(PointSet::full(70).complement(), PointSet::empty(70));
    }

    #[test]
    #[should_panic]
    fn width_mismatch_panics() {
        let a = PointSet::empty(4);
        let b = PointSet::empty(5);
        a.is_subset(&b);
    }
}
