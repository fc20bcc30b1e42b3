//! Set-based evaluation of formulas on a model.
//!
//! Every operator is computed on whole point sets. Reachability operators
//! are least fixpoints over the edge relation:
//!
//! `zeta+(f1, f2)` is the least `B = [[f1]] ∪ ([[f2]] ∩ pre(B))` where
//! `pre` takes R-predecessors, and `rho+(f1, f2) = [[f1]] ∪ pre(B)`.
//! The fixpoint deliberately follows plain R rather than its reflexive
//! closure: stuttering steps cannot change a least fixpoint, because a
//! self-step contributes `x ∈ pre(B)` only when `x` is already in `B`, and
//! `[[f1]]` seeds `B` directly, so any walk witness that stutters has a
//! stutter-free sub-walk witnessing the same membership.
//!
//! Backward variants run the same computation on the edge-reversed model.

use crate::error::{Error, Result};
use crate::model::{Dir, PointId, QdModel};
use crate::set::PointSet;

use super::ast::Formula;

struct Evaluator<'m> {
    model: &'m QdModel,
    unknown_atoms: Vec<String>,
}

impl<'m> Evaluator<'m> {
    fn eval(&mut self, f: &Formula) -> PointSet {
        let n = self.model.len();
        use Formula::*;
        match f {
            True => PointSet::full(n),
            False => PointSet::empty(n),
            Atom(name) => match self.model.prop(name) {
                Some(set) => set.clone(),
                None => {
                    if !self.unknown_atoms.iter().any(|a| a == name) {
                        self.unknown_atoms.push(name.clone());
                    }
                    PointSet::empty(n)
                }
            },
            Not(g) => self.eval(g).complement(),
            And(fs) => {
                let mut acc = self.eval(&fs[0]);
                for g in &fs[1..] {
                    acc.intersect_with(&self.eval(g));
                }
                acc
            }
            Or(fs) => {
                let mut acc = self.eval(&fs[0]);
                for g in &fs[1..] {
                    acc.union_with(&self.eval(g));
                }
                acc
            }
            NearFwd(g) => {
                let s = self.eval(g);
                self.model.closure(&s, Dir::Fwd).expect("width matches")
            }
            NearBwd(g) => {
                let s = self.eval(g);
                self.model.closure(&s, Dir::Bwd).expect("width matches")
            }
            RhoFwd(f1, f2) => {
                let (s1, s2) = (self.eval(f1), self.eval(f2));
                rho_set(self.model, Dir::Fwd, &s1, &s2)
            }
            RhoBwd(f1, f2) => {
                let (s1, s2) = (self.eval(f1), self.eval(f2));
                rho_set(self.model, Dir::Bwd, &s1, &s2)
            }
            SigmaFwd(g) => {
                let s = self.eval(g);
                rho_set(self.model, Dir::Fwd, &s, &PointSet::full(n))
            }
            SigmaBwd(g) => {
                let s = self.eval(g);
                rho_set(self.model, Dir::Bwd, &s, &PointSet::full(n))
            }
            ZetaFwd(f1, f2) => {
                let (s1, s2) = (self.eval(f1), self.eval(f2));
                zeta_set(self.model, Dir::Fwd, &s1, &s2)
            }
            ZetaBwd(f1, f2) => {
                let (s1, s2) = (self.eval(f1), self.eval(f2));
                zeta_set(self.model, Dir::Bwd, &s1, &s2)
            }
            Surround(f1, f2) => {
                let (s1, s2) = (self.eval(f1), self.eval(f2));
                surround_set(self.model, &s1, &s2)
            }
            Propagate(f1, f2) => {
                let (s1, s2) = (self.eval(f1), self.eval(f2));
                propagate_set(self.model, &s1, &s2)
            }
        }
    }
}

/// The least fixpoint `B = phi1 ∪ (phi2 ∩ pre(B))`, i.e. the points from
/// which `phi1` is reachable along a (possibly empty) chain of `phi2`
/// points ending just before the target.
pub(crate) fn zeta_set(model: &QdModel, dir: Dir, phi1: &PointSet, phi2: &PointSet) -> PointSet {
    let toward = dir.flip(); // pre() of the (possibly reversed) run
    let mut b = phi1.clone();
    let mut work: Vec<PointId> = phi1.iter().collect();
    while let Some(y) = work.pop() {
        for &x in model.step(y, toward) {
            if !b.contains(x) && phi2.contains(x) {
                b.insert(x);
                work.push(x);
            }
        }
    }
    b
}

/// `phi1 ∪ pre(zeta_set)`: the start point itself is unconstrained.
pub(crate) fn rho_set(model: &QdModel, dir: Dir, phi1: &PointSet, phi2: &PointSet) -> PointSet {
    let b = zeta_set(model, dir, phi1, phi2);
    let toward = dir.flip();
    let mut out = phi1.clone();
    for y in b.iter() {
        for &x in model.step(y, toward) {
            out.insert(x);
        }
    }
    out
}

/// `S(f1, f2) = f1 ∧ ¬ rho+(¬(f1 ∨ f2), ¬f2)`: a point of `f1` is
/// surrounded by `f2` unless it can reach a point outside both without
/// crossing `f2`.
pub(crate) fn surround_set(model: &QdModel, s1: &PointSet, s2: &PointSet) -> PointSet {
    let escape = rho_set(
        model,
        Dir::Fwd,
        &s1.union(s2).complement(),
        &s2.complement(),
    );
    s1.intersection(&escape.complement())
}

/// `P(f1, f2) = f2 ∧ rho-(f1, f2)`.
pub(crate) fn propagate_set(model: &QdModel, s1: &PointSet, s2: &PointSet) -> PointSet {
    s2.intersection(&rho_set(model, Dir::Bwd, s1, s2))
}

/// Evaluate a formula; atoms missing from the model's valuation denote the
/// empty set.
pub fn evaluate(model: &QdModel, f: &Formula) -> PointSet {
    evaluate_checked(model, f).0
}

/// Evaluate and report which atoms were missing from the valuation.
pub fn evaluate_checked(model: &QdModel, f: &Formula) -> (PointSet, Vec<String>) {
    let mut ev = Evaluator {
        model,
        unknown_atoms: Vec::new(),
    };
    let set = ev.eval(f);
    (set, ev.unknown_atoms)
}

/// Evaluate, rejecting formulas that mention atoms the model does not know.
pub fn evaluate_strict(model: &QdModel, f: &Formula) -> Result<PointSet> {
    let (set, unknown) = evaluate_checked(model, f);
    match unknown.into_iter().next() {
        None => Ok(set),
        Some(name) => Err(Error::UnknownAtom { name }),
    }
}

/// Membership of one point in the satisfying set.
pub fn check(model: &QdModel, point: PointId, f: &Formula) -> Result<bool> {
    model.check_point(point)?;
    Ok(evaluate(model, f).contains(point))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;
    use crate::model::QdModel;

    fn eval_names(m: &QdModel, src: &str) -> Vec<String> {
        let f = parse_formula(src).unwrap();
        evaluate(m, &f)
            .iter()
            .map(|x| m.name(x).to_string())
            .collect()
    }

    // y11 -> y12 -> y13,  y21 -> y22 -> y23, y21 -> y24 (y24 is a sink)
    fn two_branches() -> QdModel {
        QdModel::new(
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
        .unwrap()
    }

    #[test]
    fn near_of_false_is_empty() {
        let m = two_branches();
        assert!(eval_names(&m, "N+ false").is_empty());
        assert_eq!(eval_names(&m, "true").len(), 7);
    }

    #[test]
    fn zeta_excludes_non_target_sinks() {
        let m = two_branches();
        assert_eq!(
            eval_names(&m, "zeta+(b, r)"),
            vec!["y11", "y12", "y13", "y21", "y22", "y23"]
        );
    }

    #[test]
    fn sigma_reaches_forward() {
        let m = two_branches();
        let f = parse_formula("sigma+ b").unwrap();
        assert!(check(&m, m.point("y11").unwrap(), &f).unwrap());
        assert!(!check(&m, m.point("y24").unwrap(), &f).unwrap());
        assert!(check(&m, m.point("y24").unwrap(), &parse_formula("true").unwrap()).unwrap());
        assert!(check(&m, 99, &f).is_err());
    }

    #[test]
    fn unknown_atoms_are_empty_with_warning() {
        let m = two_branches();
        let f = parse_formula("nosuch | b").unwrap();
        let (set, warn) = evaluate_checked(&m, &f);
        assert_eq!(set.len(), 2);
        assert_eq!(warn, vec!["nosuch".to_string()]);
        assert!(evaluate_strict(&m, &f).is_err());
        assert!(evaluate_strict(&m, &parse_formula("b").unwrap()).is_ok());
    }

    #[test]
    fn rho_intermediates_only_constrain_interior_points() {
        // x -> g -> b : x reaches b through g
        let m = QdModel::new(
            &[("x", vec!["r"]), ("g", vec!["g"]), ("b", vec!["b"])],
            &[("x", "g"), ("g", "b")],
        )
        .unwrap();
        assert_eq!(eval_names(&m, "rho+(b, g)"), vec!["x", "g", "b"]);
        // without g as an allowed intermediate, only one step works
        assert_eq!(eval_names(&m, "rho+(b, false)"), vec!["g", "b"]);
        // start point needs f2 under zeta but not under rho
        assert_eq!(eval_names(&m, "zeta+(b, g)"), vec!["g", "b"]);
    }
}
