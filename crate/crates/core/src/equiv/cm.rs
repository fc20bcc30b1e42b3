//! CM-bisimilarity: neighbourhood-transfer bisimilarity.
//!
//! On a quasi-discrete model the transfer conditions over arbitrary
//! neighbourhoods collapse to the minimal neighbourhoods
//! `mn(x) = {x} ∪ predecessors(x)`: the smallest `S1` is the hardest to
//! answer and the smallest `S2` is the easiest to pick, and any
//! neighbourhood contains the minimal one. On equivalence partitions the
//! two remaining conditions say that `mn(x1)` and `mn(x2)` touch the same
//! classes, which is what the refinement below splits by. The
//! subset-enumeration and pair-gfp routes in [`crate::oracle`] serve as
//! oracles for this reduction.

use super::refine::Refinement;
use crate::equiv::ap_equivalence;
use crate::model::QdModel;
use crate::partition::Partition;

pub fn cm_bisimilarity(model: &QdModel) -> Partition {
    let n = model.len();
    let mut r = Refinement::new(&ap_equivalence(model));
    loop {
        let mut sigs: Vec<Vec<u32>> = Vec::with_capacity(n);
        for x in 0..n {
            let mut s: Vec<u32> = std::iter::once(x)
                .chain(model.pred(x).iter().copied())
                .map(|p| r.class_of[p])
                .collect();
            s.sort_unstable();
            s.dedup();
            sigs.push(s);
        }
        if r.split_round(&sigs).is_empty() {
            return r.into_partition();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twin_components_are_bisimilar() {
        // r -> b   versus   r -> b, b (two blue successors)
        let m = QdModel::new(
            &[
                ("x11", vec!["r"]),
                ("x12", vec!["b"]),
                ("x21", vec!["r"]),
                ("x22", vec!["b"]),
                ("x23", vec!["b"]),
            ],
            &[("x11", "x12"), ("x21", "x22"), ("x21", "x23")],
        )
        .unwrap();
        let p = cm_bisimilarity(&m);
        assert!(p.same_class(m.point("x11").unwrap(), m.point("x21").unwrap()));
        assert_eq!(p.class_count(), 2);
    }

    #[test]
    fn single_point_single_class() {
        let m = QdModel::new(&[("x", vec!["r"])], &[]).unwrap();
        assert_eq!(cm_bisimilarity(&m).class_count(), 1);
    }

    #[test]
    fn predecessor_labels_split() {
        // v11(r) -> v12(b),  v21(g) -> v22(b): the blues differ by what
        // precedes them.
        let m = QdModel::new(
            &[
                ("v11", vec!["r"]),
                ("v12", vec!["b"]),
                ("v21", vec!["g"]),
                ("v22", vec!["b"]),
            ],
            &[("v11", "v12"), ("v21", "v22")],
        )
        .unwrap();
        let p = cm_bisimilarity(&m);
        assert!(!p.same_class(m.point("v12").unwrap(), m.point("v22").unwrap()));
    }
}
