//! Homeomorphism search between points of one model.
//!
//! On finite relational models a homeomorphism is a label-preserving
//! bijection `h` with `h(C({x})) = C({h(x)})` for every point (additivity
//! reduces the set-level condition to singletons), i.e. a label-preserving
//! digraph isomorphism of the model onto itself. The search maps the weak
//! component of `x1` onto that of `x2` by backtracking and leaves every
//! other point fixed (swapping the two components when they differ), which
//! is sufficient: any such partial isomorphism extends to the whole model.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::model::{PointId, QdModel};

pub const HOMEO_DEFAULT_LIMIT: usize = 12;

/// Verify the homeomorphism conditions for an explicit bijection given as
/// `map[x] = h(x)`.
pub fn is_homeomorphism(model: &QdModel, map: &[PointId]) -> bool {
    let n = model.len();
    if map.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &y in map {
        if y >= n || seen[y] {
            return false;
        }
        seen[y] = true;
    }
    for x in 0..n {
        if model.label_id(x) != model.label_id(map[x]) {
            return false;
        }
    }
    for x in 0..n {
        for y in 0..n {
            if model.has_edge(x, y) != model.has_edge(map[x], map[y]) {
                return false;
            }
        }
    }
    true
}

pub fn find_homeomorphism(
    model: &QdModel,
    x1: PointId,
    x2: PointId,
) -> Result<Option<Vec<PointId>>> {
    find_homeomorphism_limited(model, x1, x2, HOMEO_DEFAULT_LIMIT)
}

/// Search for a homeomorphism sending `x1` to `x2`; returns the full
/// bijection when one exists. The backtracking is exponential in the worst
/// case, so the size of the affected component is guarded.
pub fn find_homeomorphism_limited(
    model: &QdModel,
    x1: PointId,
    x2: PointId,
    limit: usize,
) -> Result<Option<Vec<PointId>>> {
    model.check_point(x1)?;
    model.check_point(x2)?;
    let n = model.len();
    if x1 == x2 {
        return Ok(Some((0..n).collect()));
    }
    let comp1 = weak_component(model, x1);
    let comp2 = weak_component(model, x2);
    if comp1.len() > limit || comp2.len() > limit {
        return Err(Error::TooLarge {
            what: "homeomorphism search",
            limit,
            actual: comp1.len().max(comp2.len()),
        });
    }
    let same_component = comp1.contains(&x2);
    if !same_component && comp1.len() != comp2.len() {
        return Ok(None);
    }
    let source = comp1.clone();
    let target: Vec<PointId> = if same_component {
        comp1.clone()
    } else {
        comp2.clone()
    };

    // order source vertices from x1 outward so candidates are constrained
    // early
    let mut order = vec![x1];
    {
        let mut seen: HashMap<PointId, ()> = HashMap::new();
        seen.insert(x1, ());
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &w in model.succ(v).iter().chain(model.pred(v)) {
                if source.contains(&w) && !seen.contains_key(&w) {
                    seen.insert(w, ());
                    order.push(w);
                }
            }
        }
    }

    let mut assignment: HashMap<PointId, PointId> = HashMap::new();
    let mut used: HashMap<PointId, ()> = HashMap::new();
    assignment.insert(x1, x2);
    used.insert(x2, ());
    if !extend(model, &order, 1, &target, &mut assignment, &mut used) {
        return Ok(None);
    }

    let mut map: Vec<PointId> = (0..n).collect();
    for (&a, &b) in &assignment {
        map[a] = b;
    }
    if same_component {
        // the assignment is already a permutation of the one component
    } else {
        // swap the components: the inverse sends comp2 back onto comp1
        for (&a, &b) in &assignment {
            map[b] = a;
        }
    }
    debug_assert!(is_homeomorphism(model, &map));
    Ok(Some(map))
}

fn extend(
    model: &QdModel,
    order: &[PointId],
    at: usize,
    target: &[PointId],
    assignment: &mut HashMap<PointId, PointId>,
    used: &mut HashMap<PointId, ()>,
) -> bool {
    if at == order.len() {
        return true;
    }
    let v = order[at];
    for &w in target {
        if used.contains_key(&w) || model.label_id(v) != model.label_id(w) {
            continue;
        }
        if model.succ(v).len() != model.succ(w).len()
            || model.pred(v).len() != model.pred(w).len()
        {
            continue;
        }
        // edges to already-assigned vertices must be preserved and
        // reflected
        let consistent = assignment.iter().all(|(&a, &b)| {
            model.has_edge(v, a) == model.has_edge(w, b)
                && model.has_edge(a, v) == model.has_edge(b, w)
                && model.has_edge(v, v) == model.has_edge(w, w)
        });
        if !consistent {
            continue;
        }
        assignment.insert(v, w);
        used.insert(w, ());
        if extend(model, order, at + 1, target, assignment, used) {
            return true;
        }
        assignment.remove(&v);
        used.remove(&w);
    }
    false
}

fn weak_component(model: &QdModel, x: PointId) -> Vec<PointId> {
    let mut seen = crate::set::PointSet::singleton(model.len(), x);
    let mut stack = vec![x];
    while let Some(v) = stack.pop() {
        for &w in model.succ(v).iter().chain(model.pred(v)) {
            if !seen.contains(w) {
                seen.insert(w);
                stack.push(w);
            }
        }
    }
    seen.to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_always_found() {
        let m = QdModel::new(&[("a", vec!["r"])], &[]).unwrap();
        let h = find_homeomorphism(&m, 0, 0).unwrap().unwrap();
        assert_eq!(h, vec![0]);
        assert!(is_homeomorphism(&m, &h));
    }

    #[test]
    fn twin_chains_swap() {
        let m = QdModel::new(
            &[
                ("a1", vec!["r"]),
                ("a2", vec!["b"]),
                ("b1", vec!["r"]),
                ("b2", vec!["b"]),
            ],
            &[("a1", "a2"), ("b1", "b2")],
        )
        .unwrap();
        let h = find_homeomorphism(&m, 0, 2).unwrap().unwrap();
        assert!(is_homeomorphism(&m, &h));
        assert_eq!(h[0], 2);
        assert_eq!(h[2], 0);
    }

    #[test]
    fn asymmetric_components_have_none() {
        // r -> b   versus   r -> b, b
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
        assert!(find_homeomorphism(&m, 0, 2).unwrap().is_none());
    }

    #[test]
    fn size_guard_errors() {
        let points: Vec<(String, Vec<String>)> =
            (0..20).map(|i| (format!("p{i}"), vec![])).collect();
        let edges: Vec<(String, String)> = (0..19)
            .map(|i| (format!("p{i}"), format!("p{}", i + 1)))
            .collect();
        let m = QdModel::new(&points, &edges).unwrap();
        assert!(matches!(
            find_homeomorphism(&m, 0, 1),
            Err(Error::TooLarge { .. })
        ));
    }
}
