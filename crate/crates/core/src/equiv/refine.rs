//! Shared machinery for signature-based partition refinement.
//!
//! All refinement loops here keep class ids *stable* across rounds: when a
//! class splits, the fragment containing the class's least member keeps the
//! old id and the other fragments get fresh ids. That makes "did anything
//! my signature depends on change" queries cheap and keeps the final
//! numbering independent of iteration order (the result is canonicalized
//! once at the end).

use std::collections::HashMap;

use crate::model::PointId;

/// A set of class ids, as a growable bitset. Used as (part of) a signature.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub(crate) struct ClassSet {
    words: Vec<u64>,
}

impl ClassSet {
    pub fn insert(&mut self, class: u32) {
        let w = (class / 64) as usize;
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << (class % 64);
    }

    pub fn union_with(&mut self, other: &ClassSet) {
        if other.words.len() > self.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// Drop trailing zero words so equal sets compare equal.
    pub fn normalize(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }
}

/// Mutable refinement state over stable class ids.
pub(crate) struct Refinement {
    pub class_of: Vec<u32>,
    pub next_id: u32,
}

impl Refinement {
    pub fn new(initial: &crate::partition::Partition) -> Refinement {
        Refinement {
            class_of: initial.class_assignment().to_vec(),
            next_id: initial.class_count() as u32,
        }
    }

    pub fn n(&self) -> usize {
        self.class_of.len()
    }

    /// Split every class according to the signatures; `sig_of(x)` must be
    /// comparable across members of one class. Returns the points that
    /// moved to a fresh class id.
    pub fn split_round<S: std::hash::Hash + Eq>(&mut self, sigs: &[S]) -> Vec<PointId> {
        let n = self.n();
        // bucket points per class, in increasing point order
        let mut members: HashMap<u32, Vec<PointId>> = HashMap::new();
        for x in 0..n {
            members.entry(self.class_of[x]).or_default().push(x);
        }
        let mut buckets: Vec<Vec<PointId>> = members.into_values().collect();
        buckets.sort_by_key(|points| points[0]);
        let mut moved = Vec::new();
        for points in &buckets {
            let mut groups: HashMap<&S, Vec<PointId>> = HashMap::new();
            for &x in points {
                groups.entry(&sigs[x]).or_default().push(x);
            }
            if groups.len() <= 1 {
                continue;
            }
            // the group holding the least member keeps the old id
            let mut group_list: Vec<&Vec<PointId>> = groups.values().collect();
            group_list.sort_by_key(|g| g[0]);
            for group in &group_list[1..] {
                let id = self.next_id;
                self.next_id += 1;
                for &x in group.iter() {
                    self.class_of[x] = id;
                    moved.push(x);
                }
            }
        }
        moved.sort_unstable();
        moved
    }

    pub fn into_partition(self) -> crate::partition::Partition {
        crate::partition::Partition::from_class_of(&self.class_of)
    }

    pub fn snapshot(&self) -> crate::partition::Partition {
        crate::partition::Partition::from_class_of(&self.class_of)
    }
}

/// Iterative Tarjan over an arbitrary successor function restricted to the
/// given vertices. Returns the strongly connected components in reverse
/// topological order (every component precedes the components that can
/// reach it).
pub(crate) fn sccs_of<F>(vertices: &[PointId], n: usize, succ: F) -> Vec<Vec<PointId>>
where
    F: Fn(PointId, &mut Vec<PointId>),
{
    const UNSEEN: u32 = u32::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<PointId> = Vec::new();
    let mut next_index = 0u32;
    let mut out = Vec::new();

    // explicit DFS frames: (vertex, iterator position over its successors)
    let mut succ_buf: Vec<Vec<PointId>> = Vec::new();
    let mut frames: Vec<(PointId, usize, usize)> = Vec::new(); // (v, buf slot, next child)

    for &root in vertices {
        if index[root] != UNSEEN {
            continue;
        }
        let mut buf = Vec::new();
        succ(root, &mut buf);
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        succ_buf.push(buf);
        frames.push((root, succ_buf.len() - 1, 0));

        while let Some(&mut (v, slot, ref mut child)) = frames.last_mut() {
            if *child < succ_buf[slot].len() {
                let w = succ_buf[slot][*child];
                *child += 1;
                if index[w] == UNSEEN {
                    let mut buf = Vec::new();
                    succ(w, &mut buf);
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    succ_buf.push(buf);
                    frames.push((w, succ_buf.len() - 1, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                frames.pop();
                if let Some(&mut (parent, _, _)) = frames.last_mut() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    out.push(comp);
                }
                if frames.len() < succ_buf.len() {
                    succ_buf.pop();
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::Partition;

    #[test]
    fn split_keeps_least_member_id() {
        let mut r = Refinement::new(&Partition::single(4));
        let moved = r.split_round(&[0, 1, 0, 1]);
        assert_eq!(moved, vec![1, 3]);
        assert_eq!(r.class_of, vec![0, 1, 0, 1]);
        let moved = r.split_round(&[0, 0, 2, 0]);
        assert_eq!(moved, vec![2]);
        assert_eq!(r.class_of, vec![0, 1, 2, 1]);
    }

    #[test]
    fn scc_reverse_topological() {
        // 0 -> 1 <-> 2, 1 -> 3
        let adj: Vec<Vec<usize>> = vec![vec![1], vec![2, 3], vec![1], vec![]];
        let verts = vec![0, 1, 2, 3];
        let comps = sccs_of(&verts, 4, |v, out| out.extend_from_slice(&adj[v]));
        assert_eq!(comps.len(), 3);
        // every component appears before any component that reaches it
        let pos = |x: usize| comps.iter().position(|c| c.contains(&x)).unwrap();
        assert!(pos(3) < pos(1));
        assert!(pos(1) < pos(0));
        assert_eq!(pos(1), pos(2));
    }

    #[test]
    fn scc_long_chain_no_overflow() {
        let n = 200_000;
        let verts: Vec<usize> = (0..n).collect();
        let comps = sccs_of(&verts, n, |v, out| {
            if v + 1 < n {
                out.push(v + 1);
            }
        });
        assert_eq!(comps.len(), n);
        assert_eq!(comps[0], vec![n - 1]);
    }
}
