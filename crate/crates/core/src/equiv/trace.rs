//! Trace equivalence: equality of the label-word languages of bounded
//! paths, forward and backward.
//!
//! A bounded path's trace is its label word padded by repeating the final
//! label; since every walk extends by stuttering and every prefix of a walk
//! is a walk, two points have equal trace sets exactly when their finite
//! label-word languages over the reflexive-closed relation coincide. That
//! is decided by determinizing the point automaton (subset construction)
//! from both start points and searching the product for a word accepted on
//! one side only; the shortest such word is returned as a witness.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::model::{Dir, PointId, QdModel};
use crate::set::PointSet;

/// Default carrier-size guard for determinization (`2^n` subsets).
pub const TRACE_DEFAULT_LIMIT: usize = 20;

/// A word separating the two languages, with the direction it was found
/// in. Letters are label sets, rendered as sorted proposition names; for
/// the backward direction the word reads from the path's start to its end,
/// like a forward trace would.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceWitness {
    pub dir: Dir,
    pub word: Vec<Vec<String>>,
    /// Point whose language contains the word.
    pub holds_at: PointId,
}

pub fn trace_equivalent(model: &QdModel, x1: PointId, x2: PointId) -> Result<bool> {
    trace_equivalent_limited(model, x1, x2, TRACE_DEFAULT_LIMIT)
}

pub fn trace_equivalent_limited(
    model: &QdModel,
    x1: PointId,
    x2: PointId,
    max_points: usize,
) -> Result<bool> {
    Ok(trace_distinguish_limited(model, x1, x2, max_points)?.is_none())
}

pub fn trace_distinguish(
    model: &QdModel,
    x1: PointId,
    x2: PointId,
) -> Result<Option<TraceWitness>> {
    trace_distinguish_limited(model, x1, x2, TRACE_DEFAULT_LIMIT)
}

pub fn trace_distinguish_limited(
    model: &QdModel,
    x1: PointId,
    x2: PointId,
    max_points: usize,
) -> Result<Option<TraceWitness>> {
    model.check_point(x1)?;
    model.check_point(x2)?;
    if model.len() > max_points {
        return Err(Error::TooLarge {
            what: "trace determinization",
            limit: max_points,
            actual: model.len(),
        });
    }
    if x1 == x2 {
        return Ok(None);
    }
    for dir in [Dir::Fwd, Dir::Bwd] {
        if let Some(witness) = language_difference(model, x1, x2, dir) {
            return Ok(Some(witness));
        }
    }
    Ok(None)
}

/// Breadth-first search over pairs of determinized subset states; a
/// difference is a word leading to an empty subset on exactly one side.
fn language_difference(
    model: &QdModel,
    x1: PointId,
    x2: PointId,
    dir: Dir,
) -> Option<TraceWitness> {
    let n = model.len();
    let labels: Vec<u32> = (0..n).map(|x| model.label_id(x)).collect();
    let mut alphabet: Vec<u32> = labels.clone();
    alphabet.sort_unstable();
    alphabet.dedup();

    // first letter: the start point's own label
    if labels[x1] != labels[x2] {
        return Some(TraceWitness {
            dir,
            word: finish_word(model, dir, vec![labels[x1]]),
            holds_at: x1,
        });
    }

    let move_set = |s: &PointSet, letter: u32| -> PointSet {
        // step through the reflexive closure, keep points carrying `letter`
        let mut out = PointSet::empty(n);
        for p in s.iter() {
            if labels[p] == letter {
                out.insert(p);
            }
            for &q in model.step(p, dir) {
                if labels[q] == letter {
                    out.insert(q);
                }
            }
        }
        out
    };

    // parent-linked BFS queue for witness reconstruction
    let start = (
        PointSet::singleton(n, x1),
        PointSet::singleton(n, x2),
    );
    let mut nodes: Vec<(PointSet, PointSet, usize, u32)> =
        vec![(start.0, start.1, usize::MAX, u32::MAX)];
    let mut visited: HashMap<(PointSet, PointSet), ()> = HashMap::new();
    visited.insert((nodes[0].0.clone(), nodes[0].1.clone()), ());
    let mut head = 0;
    while head < nodes.len() {
        let (a, b) = (nodes[head].0.clone(), nodes[head].1.clone());
        for &letter in &alphabet {
            let a2 = move_set(&a, letter);
            let b2 = move_set(&b, letter);
            match (a2.is_empty(), b2.is_empty()) {
                (true, true) => continue,
                (false, true) | (true, false) => {
                    let mut word = vec![letter];
                    let mut at = head;
                    while at != 0 {
                        word.push(nodes[at].3);
                        at = nodes[at].2;
                    }
                    // the start point emits its own label before any step
                    word.push(labels[x1]);
                    word.reverse();
                    let holds_at = if b2.is_empty() { x1 } else { x2 };
                    return Some(TraceWitness {
                        dir,
                        word: finish_word(model, dir, word),
                        holds_at,
                    });
                }
                (false, false) => {
                    let key = (a2.clone(), b2.clone());
                    if !visited.contains_key(&key) {
                        visited.insert(key, ());
                        nodes.push((a2, b2, head, letter));
                    }
                }
            }
        }
        head += 1;
    }
    None
}

/// Render label ids as proposition-name sets; backward words are flipped so
/// they read start-to-end.
fn finish_word(model: &QdModel, dir: Dir, mut word: Vec<u32>) -> Vec<Vec<String>> {
    if dir == Dir::Bwd {
        word.reverse();
    }
    let mut by_id: HashMap<u32, Vec<String>> = HashMap::new();
    for x in 0..model.len() {
        by_id
            .entry(model.label_id(x))
            .or_insert_with(|| model.label(x).to_vec());
    }
    word.into_iter().map(|id| by_id[&id].clone()).collect()
}
