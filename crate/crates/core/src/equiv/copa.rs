//! CoPa-bisimilarity: path matching through compatible zones of mutually
//! related points.
//!
//! Two points are CoPa-bisimilar exactly when they are divergence-blind
//! stuttering equivalent, with converse, on the reflexive closure of the
//! model's relation; self-loops give the Kripke structure the same paths
//! as the closure model, stuttering included. That route is used because
//! the direct transfer condition quantifies over a path's prefix
//! negatively, so a top-down fixpoint on it would be unjustified; the
//! direct condition is only ever *checked*, by
//! [`is_copa_bisimulation`].
//!
//! The decider below is a signature refinement: within its current class a
//! point may move freely (inert steps), so its signature is the set of
//! classes reachable by an inert walk followed by one step, computed per
//! class through an SCC condensation, in both directions. The verbatim
//! pair-gfp of the stuttering conditions is [`crate::oracle::dbsc_gfp`]
//! and must agree with this fast path.

use std::collections::HashMap;

use super::refine::{sccs_of, ClassSet, Refinement};
use crate::equiv::ap_equivalence;
use crate::model::{PointId, QdModel};
use crate::partition::{PairRelation, Partition};
use crate::set::PointSet;

pub fn copa_bisimilarity(model: &QdModel) -> Partition {
    let n = model.len();
    let mut r = Refinement::new(&ap_equivalence(model));
    let mut members: Vec<Vec<PointId>> = vec![Vec::new(); r.next_id as usize];
    for x in 0..n {
        members[r.class_of[x] as usize].push(x);
    }
    loop {
        let mut sigs: Vec<(ClassSet, ClassSet)> = vec![Default::default(); n];
        for class_members in &members {
            inert_signatures(model, &r.class_of, class_members, &mut sigs);
        }
        let moved = r.split_round(&sigs);
        if moved.is_empty() {
            return r.into_partition();
        }
        members = vec![Vec::new(); r.next_id as usize];
        for x in 0..n {
            members[r.class_of[x] as usize].push(x);
        }
    }
}

/// For every member of one class, the classes reachable by an inert walk
/// (staying in the class, reflexive steps included) followed by one step,
/// forward and backward. Propagated over the SCC condensation of the
/// class-internal subgraph.
fn inert_signatures(
    model: &QdModel,
    class_of: &[u32],
    members: &[PointId],
    sigs: &mut [(ClassSet, ClassSet)],
) {
    let n = class_of.len();
    let class = class_of[members[0]];
    for dir in 0..2 {
        let comps = sccs_of(members, n, |v, out| {
            let step = if dir == 0 { model.succ(v) } else { model.pred(v) };
            out.extend(step.iter().copied().filter(|&y| class_of[y] == class));
        });
        let mut comp_of: HashMap<PointId, usize> = HashMap::new();
        for (i, comp) in comps.iter().enumerate() {
            for &x in comp {
                comp_of.insert(x, i);
            }
        }
        // reverse topological order: internal successors already done
        let mut comp_sig: Vec<ClassSet> = Vec::with_capacity(comps.len());
        for (i, comp) in comps.iter().enumerate() {
            let mut acc = ClassSet::default();
            acc.insert(class); // reflexive step stays in the class
            for &x in comp {
                let step = if dir == 0 { model.succ(x) } else { model.pred(x) };
                for &y in step {
                    if class_of[y] == class {
                        let j = comp_of[&y];
                        if j != i {
                            acc.union_with(&comp_sig[j]);
                        }
                    } else {
                        acc.insert(class_of[y]);
                    }
                }
            }
            acc.normalize();
            comp_sig.push(acc);
        }
        for (i, comp) in comps.iter().enumerate() {
            for &x in comp {
                if dir == 0 {
                    sigs[x].0 = comp_sig[i].clone();
                } else {
                    sigs[x].1 = comp_sig[i].clone();
                }
            }
        }
    }
}

/// Check a candidate relation against the compatible-path transfer
/// conditions, taken verbatim on walk zones.
///
/// For each related pair `(x1, x2)`, the forward paths from `x1` whose
/// prefix stays related to `x2` end in `succ(W1)` where `W1` is the zone
/// grown from `x1` through points related to `x2` (walks in the reflexive
/// closure); the matching condition reduces to: every such endpoint has a
/// related endpoint in `succ(W2)`, with `W2` the mirrored zone. Backward
/// conditions use predecessor-side zones (the constrained indices are then
/// `0 < i <= len`).
pub fn is_copa_bisimulation(model: &QdModel, b: &PairRelation) -> bool {
    if b.width() != model.len() {
        return false;
    }
    for (x1, x2) in b.iter_pairs() {
        if model.label_id(x1) != model.label_id(x2) {
            return false;
        }
        if !zone_condition(model, b, x1, x2, true, false)
            || !zone_condition(model, b, x1, x2, true, true)
            || !zone_condition(model, b, x1, x2, false, false)
            || !zone_condition(model, b, x1, x2, false, true)
        {
            return false;
        }
    }
    true
}

/// One transfer condition. `fwd` picks the direction of the paths;
/// `swapped` checks the condition with the roles of the pair exchanged
/// (the relation is ordered, so "related" always means `(left, right)` in
/// the original orientation).
fn zone_condition(
    model: &QdModel,
    b: &PairRelation,
    x1: usize,
    x2: usize,
    fwd: bool,
    swapped: bool,
) -> bool {
    let related_to_partner = |y: usize| -> bool {
        // prefix points of the challenger's path must be related to the
        // defender's start point
        if swapped {
            b.contains(x1, y)
        } else {
            b.contains(y, x2)
        }
    };
    let related_to_self = |y: usize| -> bool {
        if swapped {
            b.contains(y, x2)
        } else {
            b.contains(x1, y)
        }
    };
    let endpoints_related = |e1: usize, e2: usize| -> bool {
        if swapped {
            b.contains(e2, e1)
        } else {
            b.contains(e1, e2)
        }
    };
    let (challenger, defender) = if swapped { (x2, x1) } else { (x1, x2) };

    let zone = |start: usize, ok: &dyn Fn(usize) -> bool| -> PointSet {
        let mut z = PointSet::empty(model.len());
        if !ok(start) {
            return z;
        }
        z.insert(start);
        let mut stack = vec![start];
        while let Some(p) = stack.pop() {
            let step = if fwd { model.succ(p) } else { model.pred(p) };
            for &q in step {
                if !z.contains(q) && ok(q) {
                    z.insert(q);
                    stack.push(q);
                }
            }
        }
        z
    };
    let frontier = |z: &PointSet| -> PointSet {
        // one step out of the zone; reflexivity keeps the zone included
        let mut f = z.clone();
        for p in z.iter() {
            let step = if fwd { model.succ(p) } else { model.pred(p) };
            for &q in step {
                f.insert(q);
            }
        }
        f
    };

    let w1 = zone(challenger, &related_to_partner);
    if w1.is_empty() {
        // the pair itself fails the prefix condition, nothing to transfer
        return true;
    }
    let w2 = zone(defender, &related_to_self);
    let ends1 = frontier(&w1);
    let ends2 = frontier(&w2);
    let ok = ends1
        .iter()
        .all(|e1| ends2.iter().any(|e2| endpoints_related(e1, e2)));
    ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::dbsc_gfp;

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
    fn stuttering_zones_relate_chains() {
        let m = two_chains();
        let p = copa_bisimilarity(&m);
        assert!(p.same_class(m.point("x11").unwrap(), m.point("x21").unwrap()));
        assert_eq!(p.class_count(), 2);
        assert_eq!(p, dbsc_gfp(&m).to_partition().unwrap());
    }

    #[test]
    fn candidate_relation_passes_definition_check() {
        let m = two_chains();
        let (x11, x21) = (m.point("x11").unwrap(), m.point("x21").unwrap());
        let (x12, x22) = (m.point("x12").unwrap(), m.point("x22").unwrap());
        let x23 = m.point("x23").unwrap();
        let mut b = PairRelation::empty(5);
        b.insert(x11, x21);
        b.insert(x11, x22);
        b.insert(x12, x23);
        assert!(is_copa_bisimulation(&m, &b));
        // adding a label-mismatched pair breaks condition 1
        let mut bad = b.clone();
        bad.insert(x12, x22);
        assert!(!is_copa_bisimulation(&m, &bad));
        // the identity is always a CoPa-bisimulation
        assert!(is_copa_bisimulation(
            &m,
            &Partition::identity(5).to_pair_relation()
        ));
    }

    #[test]
    fn isolated_identical_points_relate() {
        let m = QdModel::new(&[("a", vec!["r"]), ("b", vec!["r"])], &[]).unwrap();
        let p = copa_bisimilarity(&m);
        assert!(p.same_class(0, 1));
    }

    #[test]
    fn computed_partition_is_a_copa_bisimulation() {
        let m = two_chains();
        let rel = copa_bisimilarity(&m).to_pair_relation();
        assert!(is_copa_bisimulation(&m, &rel));
    }
}
