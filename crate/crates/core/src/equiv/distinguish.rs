//! Distinguishing-formula generation for points that are not
//! CMC-bisimilar.
//!
//! The witness is read off the refinement history of the C-bisimilarity
//! computation. Every class of every round has a characteristic formula:
//! label formulas at round zero, and refinements of the parent's formula
//! by near-modality conjuncts afterwards. When a split separates two
//! points, some class is touched by the one-step closure of one point but
//! not the other, which one of the `N+`/`N-` modalities expresses
//! directly. The result uses atoms, boolean connectives and the two near
//! modalities only, and is verified by the evaluator before being
//! returned.

use std::collections::HashMap;

use crate::equiv::cmc::c_bisimilarity_history;
use crate::error::{Error, Result};
use crate::logic::{evaluate, Formula};
use crate::model::{PointId, QdModel};
use crate::partition::Partition;

/// A formula holding at one point and failing at another, with both points
/// recorded. Construction verifies the claim against the evaluator.
#[derive(Debug, Clone)]
pub struct DistinguishingWitness {
    pub formula: Formula,
    pub holds_at: PointId,
    pub fails_at: PointId,
}

impl DistinguishingWitness {
    pub fn verified(model: &QdModel, formula: Formula, holds_at: PointId, fails_at: PointId) -> Result<Self> {
        let sat = evaluate(model, &formula);
        if sat.contains(holds_at) && !sat.contains(fails_at) {
            Ok(DistinguishingWitness {
                formula,
                holds_at,
                fails_at,
            })
        } else {
            Err(Error::Format(format!(
                "formula {formula} does not distinguish {} from {}",
                model.name(holds_at),
                model.name(fails_at)
            )))
        }
    }
}

/// Produce a verified formula that holds at `x1` and fails at `x2`.
/// Errors when the points are CMC-bisimilar.
pub fn distinguish(model: &QdModel, x1: PointId, x2: PointId) -> Result<DistinguishingWitness> {
    model.check_point(x1)?;
    model.check_point(x2)?;
    let history = c_bisimilarity_history(model);
    let last = history.last().expect("history is never empty");
    if last.same_class(x1, x2) {
        return Err(Error::NoWitness {
            p1: model.name(x1).to_string(),
            p2: model.name(x2).to_string(),
        });
    }
    let mut builder = CharBuilder {
        model,
        history: &history,
        cache: HashMap::new(),
    };
    // first round where the two points no longer share a class
    let t = (0..history.len())
        .find(|&t| !history[t].same_class(x1, x2))
        .expect("they are separated in the last round");
    let formula = if t == 0 {
        // label difference: one atom suffices
        label_difference(model, x1, x2)
    } else {
        split_formula(&mut builder, t - 1, x1, x2)
    };
    DistinguishingWitness::verified(model, formula, x1, x2)
}

fn label_difference(model: &QdModel, x1: PointId, x2: PointId) -> Formula {
    let l1 = model.label(x1);
    let l2 = model.label(x2);
    if let Some(p) = l1.iter().find(|p| !l2.contains(p)) {
        return Formula::atom(p.clone());
    }
    let p = l2
        .iter()
        .find(|p| !l1.contains(p))
        .expect("labels differ in some proposition");
    Formula::not(Formula::atom(p.clone()))
}

struct CharBuilder<'m> {
    model: &'m QdModel,
    history: &'m [Partition],
    cache: HashMap<(usize, usize), Formula>,
}

impl CharBuilder<'_> {
    /// Characteristic formula of class `c` of round `t`: satisfied by
    /// exactly the members of that class.
    fn class_formula(&mut self, t: usize, c: usize) -> Formula {
        if let Some(f) = self.cache.get(&(t, c)) {
            return f.clone();
        }
        let f = self.build_class_formula(t, c);
        debug_assert_eq!(
            evaluate(self.model, &f),
            self.history[t].class_set(c),
            "characteristic formula of round-{t} class {c} is not exact"
        );
        self.cache.insert((t, c), f.clone());
        f
    }

    fn build_class_formula(&mut self, t: usize, c: usize) -> Formula {
        let part = &self.history[t];
        let rep = part.class(c)[0];
        if t == 0 {
            // label fiber: present atoms and negated absent atoms
            let label = self.model.label(rep);
            let mut conj: Vec<Formula> = Vec::new();
            for p in self.model.prop_names() {
                if label.iter().any(|q| q == p) {
                    conj.push(Formula::atom(p));
                } else {
                    conj.push(Formula::not(Formula::atom(p)));
                }
            }
            return if conj.is_empty() {
                Formula::True
            } else {
                Formula::and(conj)
            };
        }
        let parent_part = &self.history[t - 1];
        let parent = parent_part.class_of(rep);
        let mut conj = vec![self.class_formula(t - 1, parent)];
        // separate from every sibling fragment of the parent class
        let siblings: Vec<usize> = {
            let mut s: Vec<usize> = self.history[t]
                .classes()
                .iter()
                .enumerate()
                .filter(|(cc, members)| {
                    *cc != c && parent_part.class_of(members[0]) == parent
                })
                .map(|(cc, _)| cc)
                .collect();
            s.sort_unstable();
            s
        };
        for sib in siblings {
            let sib_rep = self.history[t].class(sib)[0];
            conj.push(self.separator(t - 1, rep, sib_rep));
        }
        Formula::and(conj)
    }

    /// A near-modality literal (over round-`t` class formulas) holding at
    /// `x` but not at `y`; exists whenever the round-`t+1` split put them
    /// in different fragments.
    fn separator(&mut self, t: usize, x: PointId, y: PointId) -> Formula {
        let part = &self.history[t];
        let succ_classes = |p: PointId| -> Vec<usize> {
            let mut v: Vec<usize> = std::iter::once(p)
                .chain(self.model.succ(p).iter().copied())
                .map(|q| part.class_of(q))
                .collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let pred_classes = |p: PointId| -> Vec<usize> {
            let mut v: Vec<usize> = std::iter::once(p)
                .chain(self.model.pred(p).iter().copied())
                .map(|q| part.class_of(q))
                .collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let (sx, sy) = (succ_classes(x), succ_classes(y));
        // a class seen one step after x but never after y: x is in the
        // backward closure of that class, y is not
        if let Some(&d) = sx.iter().find(|d| !sy.contains(d)) {
            return Formula::near_bwd(self.class_formula(t, d));
        }
        if let Some(&d) = sy.iter().find(|d| !sx.contains(d)) {
            return Formula::not(Formula::near_bwd(self.class_formula(t, d)));
        }
        let (px, py) = (pred_classes(x), pred_classes(y));
        if let Some(&d) = px.iter().find(|d| !py.contains(d)) {
            return Formula::near_fwd(self.class_formula(t, d));
        }
        if let Some(&d) = py.iter().find(|d| !px.contains(d)) {
            return Formula::not(Formula::near_fwd(self.class_formula(t, d)));
        }
        unreachable!("points separated by a split must differ in some signature class")
    }
}

/// Formula separating `x1`'s fragment from `x2`'s at the first round that
/// splits them.
fn split_formula(builder: &mut CharBuilder, t: usize, x1: PointId, x2: PointId) -> Formula {
    debug_assert!(builder.history[t].same_class(x1, x2));
    builder.separator(t, x1, x2)
}
