//! Path-bisimilarity: points are related when the endpoints of their
//! forward bounded paths, and the start points of their backward ones, can
//! be matched within the relation.
//!
//! Bounded-path endpoints are exactly the reachable points, so on an
//! equivalence the four transfer conditions become: the forward reach sets
//! of related points touch the same classes, and likewise backward. The
//! refinement below splits by those class sets; reach-class sets are
//! computed per round by a DP over the condensation of the relation, which
//! is built once. The literal pair-gfp over reach sets is
//! [`crate::oracle::path_gfp`].

use super::refine::{sccs_of, ClassSet, Refinement};
use crate::equiv::ap_equivalence;
use crate::model::{Dir, PointId, QdModel};
use crate::partition::Partition;

pub fn path_bisimilarity(model: &QdModel) -> Partition {
    let n = model.len();
    let all: Vec<PointId> = (0..n).collect();
    // reverse topological order: successors of a component come earlier
    let comps = sccs_of(&all, n, |v, out| out.extend_from_slice(model.succ(v)));
    let comp_of = {
        let mut c = vec![0u32; n];
        for (i, comp) in comps.iter().enumerate() {
            for &x in comp {
                c[x] = i as u32;
            }
        }
        c
    };

    let mut r = Refinement::new(&ap_equivalence(model));
    loop {
        // classes reachable from each component, by direction
        let creach = reach_classes(model, &comps, &comp_of, &r.class_of, Dir::Fwd);
        let breach = reach_classes(model, &comps, &comp_of, &r.class_of, Dir::Bwd);
        let sigs: Vec<(ClassSet, ClassSet)> = (0..n)
            .map(|x| {
                let c = comp_of[x] as usize;
                (creach[c].clone(), breach[c].clone())
            })
            .collect();
        if r.split_round(&sigs).is_empty() {
            return r.into_partition();
        }
    }
}

fn reach_classes(
    model: &QdModel,
    comps: &[Vec<PointId>],
    comp_of: &[u32],
    class_of: &[u32],
    dir: Dir,
) -> Vec<ClassSet> {
    let mut out: Vec<ClassSet> = vec![ClassSet::default(); comps.len()];
    // iterate components so that everything reachable is already done:
    // forward that is the reverse topological order comps already have,
    // backward the opposite
    let order: Box<dyn Iterator<Item = usize>> = match dir {
        Dir::Fwd => Box::new(0..comps.len()),
        Dir::Bwd => Box::new((0..comps.len()).rev()),
    };
    for ci in order {
        let mut acc = ClassSet::default();
        for &x in &comps[ci] {
            acc.insert(class_of[x]);
            for &y in model.step(x, dir) {
                let cj = comp_of[y] as usize;
                if cj != ci {
                    acc.union_with(&out[cj]);
                }
            }
        }
        acc.normalize();
        out[ci] = acc;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    // x11(r) -> x12(b)   versus   x21(r) -> x22(r) -> x23(b)
    fn two_chains() -> QdModel {
        QdModel::new(
            &[
                ("x11", vec!["r"]),
                ("x12", vec!["b"]),
                ("x21", vec!["r"]),
                ("x22", vec!["r"]),
                ("x23", vec!["b"]),
            ],
            &[("x11", "x12"), ("x21", "x22"), ("x22", "x23")],
        )
        .unwrap()
    }

    #[test]
    fn chains_of_different_length_are_path_bisimilar() {
        let m = two_chains();
        let p = path_bisimilarity(&m);
        assert!(p.same_class(m.point("x11").unwrap(), m.point("x21").unwrap()));
        assert_eq!(p.class_count(), 2);
    }

    #[test]
    fn unreachable_sink_splits() {
        // y21 -> y24 where y24 is a red sink; y11 has no such dead end
        let m = QdModel::new(
            &[
                ("y11", vec!["r"]),
                ("y12", vec!["r"]),
                ("y13", vec!["b"]),
                ("y21", vec!["r"]),
                ("y22", vec!["r"]),
                ("y23", vec!["b"]),
                ("y24", vec!["r"]),
            ],
            &[
                ("y11", "y12"),
                ("y12", "y13"),
                ("y21", "y22"),
                ("y22", "y23"),
                ("y21", "y24"),
            ],
        )
        .unwrap();
        let p = path_bisimilarity(&m);
        assert!(!p.same_class(m.point("y11").unwrap(), m.point("y21").unwrap()));
    }

    #[test]
    fn self_loop_twin_is_related() {
        let m = QdModel::new(
            &[("a", vec!["r"]), ("b", vec!["r"])],
            &[("a", "a")],
        )
        .unwrap();
        // both reach only red points in both directions
        let p = path_bisimilarity(&m);
        assert!(p.same_class(0, 1));
    }

    #[test]
    fn agrees_with_pair_gfp() {
        let m = two_chains();
        let p = path_bisimilarity(&m);
        let q = crate::oracle::path_gfp(&m).to_partition().unwrap();
        assert_eq!(p, q);
    }
}
