//! Slow reference implementations used to cross-check the production
//! algorithms.
//!
//! Everything here computes straight from definitions: subsets are
//! enumerated, walks are enumerated, transfer conditions are checked
//! verbatim on explicit pair relations. These routines are exponential and
//! guarded accordingly; they exist so that the fast implementations never
//! have to be trusted on their own.

use crate::error::{Error, Result};
use crate::model::{Dir, PointId, QdModel};
use crate::partition::PairRelation;
use crate::set::PointSet;

/// A tiny closure space where subsets are bitmasks in a single `u64`.
///
/// Built from a model's adjacency; used for exhaustive axiom checking and
/// subset-enumeration oracles. Limited to 16 points.
pub struct MaskSpace<'m> {
    model: &'m QdModel,
    n: usize,
    succ_mask: Vec<u64>,
    pred_mask: Vec<u64>,
}

pub struct AxiomReport {
    pub violations: Vec<String>,
    /// A set witnessing `C(C(A)) != C(A)`, when the space is not topological.
    pub idempotence_counterexample: Option<u64>,
}

impl<'m> MaskSpace<'m> {
    pub const LIMIT: usize = 16;

    pub fn new(model: &'m QdModel) -> MaskSpace<'m> {
        let n = model.len();
        assert!(n <= Self::LIMIT, "MaskSpace supports at most 16 points");
        let mut succ_mask = vec![0u64; n];
        let mut pred_mask = vec![0u64; n];
        for (s, d) in model.edges() {
            succ_mask[s] |= 1 << d;
            pred_mask[d] |= 1 << s;
        }
        MaskSpace {
            model,
            n,
            succ_mask,
            pred_mask,
        }
    }

    #[inline]
    pub fn universe(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    #[inline]
    pub fn closure(&self, a: u64, dir: Dir) -> u64 {
        let masks = match dir {
            Dir::Fwd => &self.succ_mask,
            Dir::Bwd => &self.pred_mask,
        };
        let mut out = a;
        let mut bits = a;
        while bits != 0 {
            let x = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            out |= masks[x];
        }
        out
    }

    #[inline]
    pub fn interior(&self, a: u64, dir: Dir) -> u64 {
        self.universe() & !self.closure(self.universe() & !a, dir)
    }

    pub fn mask_of(&self, set: &PointSet) -> u64 {
        let mut m = 0;
        for x in set.iter() {
            m |= 1 << x;
        }
        m
    }

    pub fn set_of(&self, mask: u64) -> PointSet {
        PointSet::from_iter(self.n, (0..self.n).filter(|&x| mask >> x & 1 == 1))
    }

    pub fn mask_to_names(&self, mask: u64) -> Vec<&str> {
        (0..self.n)
            .filter(|&x| mask >> x & 1 == 1)
            .map(|x| self.model.name(x))
            .collect()
    }

    /// All neighbourhoods of `x` in the given direction: the sets `S` with
    /// `x ∈ interior(S, dir)`, enumerated exhaustively.
    pub fn neighbourhoods(&self, x: PointId, dir: Dir) -> Vec<u64> {
        (0..=self.universe())
            .filter(|&s| self.interior(s, dir) >> x & 1 == 1)
            .collect()
    }

    /// Exhaustively check the closure axioms, additivity over all pairs of
    /// subsets, duality, monotonicity, and the elementary forward/backward
    /// correspondences.
    pub fn check_axioms(&self) -> AxiomReport {
        let mut violations = Vec::new();
        let top = self.universe();
        for dir in [Dir::Fwd, Dir::Bwd] {
            if self.closure(0, dir) != 0 {
                violations.push(format!("C(empty) != empty ({dir:?})"));
            }
            for a in 0..=top {
                let c = self.closure(a, dir);
                if a & !c != 0 {
                    violations.push(format!("A not within C(A) for A={a:#x} ({dir:?})"));
                }
                if self.interior(a, dir) != top & !self.closure(top & !a, dir) {
                    violations.push(format!("duality fails for A={a:#x} ({dir:?})"));
                }
            }
            for a1 in 0..=top {
                let c1 = self.closure(a1, dir);
                for a2 in a1..=top {
                    let c2 = self.closure(a2, dir);
                    if self.closure(a1 | a2, dir) != c1 | c2 {
                        violations.push(format!(
                            "additivity fails for A1={a1:#x} A2={a2:#x} ({dir:?})"
                        ));
                    }
                    if a1 & !a2 == 0 {
                        // monotonicity of closure and interior
                        if c1 & !c2 != 0 {
                            violations.push(format!(
                                "closure not monotone on {a1:#x} within {a2:#x} ({dir:?})"
                            ));
                        }
                        if self.interior(a1, dir) & !self.interior(a2, dir) != 0 {
                            violations.push(format!(
                                "interior not monotone on {a1:#x} within {a2:#x} ({dir:?})"
                            ));
                        }
                    }
                }
            }
        }

        // backward closure agrees with its pointwise characterizations
        for a in 0..=top {
            let bwd = self.closure(a, Dir::Bwd);
            let mut literal = a;
            let mut via_fwd = 0u64;
            for x in 0..self.n {
                if self.succ_mask[x] & a != 0 {
                    literal |= 1 << x;
                }
                if self.closure(1 << x, Dir::Fwd) & a != 0 {
                    via_fwd |= 1 << x;
                }
            }
            if bwd != literal {
                violations.push(format!("backward closure literal form fails for A={a:#x}"));
            }
            if bwd != via_fwd {
                violations.push(format!(
                    "backward closure via forward singletons fails for A={a:#x}"
                ));
            }
        }
        // x1 in bwd-C({x2})  iff  x2 in fwd-C({x1})
        for x1 in 0..self.n {
            for x2 in 0..self.n {
                let lhs = self.closure(1 << x2, Dir::Bwd) >> x1 & 1 == 1;
                let rhs = self.closure(1 << x1, Dir::Fwd) >> x2 & 1 == 1;
                if lhs != rhs {
                    violations.push(format!(
                        "fwd/bwd singleton correspondence fails for ({x1},{x2})"
                    ));
                }
            }
        }

        let mut idempotence_counterexample = None;
        for a in 0..=top {
            let c = self.closure(a, Dir::Fwd);
            if self.closure(c, Dir::Fwd) != c {
                idempotence_counterexample = Some(a);
                break;
            }
        }
        AxiomReport {
            violations,
            idempotence_counterexample,
        }
    }
}

/// Endpoints of all walks from (or to) `x` of at most `max_len` steps,
/// enumerated explicitly. Agrees with [`QdModel::reach`] when
/// `max_len >= n - 1`.
pub fn reach_by_walk_enumeration(
    model: &QdModel,
    x: PointId,
    dir: Dir,
    max_len: usize,
) -> PointSet {
    let mut out = PointSet::singleton(model.len(), x);
    let mut frontier = vec![x];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for &p in &frontier {
            for &q in model.step(p, dir) {
                if !out.contains(q) {
                    out.insert(q);
                    next.push(q);
                }
            }
        }
        frontier = next;
    }
    out
}

/// Enumerate every stuttering walk (steps through `R ∪ id`) from `start` of
/// at most `max_len` steps, calling `visit` on each prefix. `visit` returns
/// `false` to stop the whole enumeration early.
fn enumerate_walks(
    model: &QdModel,
    start: PointId,
    max_len: usize,
    visit: &mut dyn FnMut(&[PointId]) -> bool,
) -> bool {
    fn go(
        model: &QdModel,
        walk: &mut Vec<PointId>,
        max_len: usize,
        visit: &mut dyn FnMut(&[PointId]) -> bool,
    ) -> bool {
        if !visit(walk) {
            return false;
        }
        if walk.len() - 1 >= max_len {
            return true;
        }
        let last = *walk.last().unwrap();
        // stutter
        walk.push(last);
        if !go(model, walk, max_len, visit) {
            walk.pop();
            return false;
        }
        walk.pop();
        for &q in model.succ(last) {
            if q == last {
                continue; // the self-loop duplicates the stutter step
            }
            walk.push(q);
            if !go(model, walk, max_len, visit) {
                walk.pop();
                return false;
            }
            walk.pop();
        }
        true
    }
    let mut walk = vec![start];
    go(model, &mut walk, max_len, visit)
}

/// Walk-enumeration semantics of the conditional reachability operator:
/// a point satisfies it if some walk of at most `max_len` steps ends in
/// `phi1` with all strictly intermediate points in `phi2`.
pub fn rho_oracle(
    model: &QdModel,
    dir: Dir,
    phi1: &PointSet,
    phi2: &PointSet,
    max_len: usize,
) -> PointSet {
    let work = oriented(model, dir);
    let mut out = PointSet::empty(model.len());
    for x in 0..model.len() {
        let mut found = false;
        enumerate_walks(&work, x, max_len, &mut |walk| {
            let l = walk.len() - 1;
            if phi1.contains(walk[l]) && (1..l).all(|j| phi2.contains(walk[j])) {
                found = true;
                return false;
            }
            true
        });
        if found {
            out.insert(x);
        }
    }
    out
}

/// Walk-enumeration semantics of the zone reachability operator: like
/// [`rho_oracle`] but the start point itself must satisfy `phi2` whenever
/// the witnessing walk takes at least one step.
pub fn zeta_oracle(
    model: &QdModel,
    dir: Dir,
    phi1: &PointSet,
    phi2: &PointSet,
    max_len: usize,
) -> PointSet {
    let work = oriented(model, dir);
    let mut out = PointSet::empty(model.len());
    for x in 0..model.len() {
        let mut found = false;
        enumerate_walks(&work, x, max_len, &mut |walk| {
            let l = walk.len() - 1;
            if phi1.contains(walk[l]) && (0..l).all(|j| phi2.contains(walk[j])) {
                found = true;
                return false;
            }
            true
        });
        if found {
            out.insert(x);
        }
    }
    out
}

/// Walk-enumeration semantics of plain reachability.
pub fn sigma_oracle(model: &QdModel, dir: Dir, phi: &PointSet, max_len: usize) -> PointSet {
    let mut out = PointSet::empty(model.len());
    for x in 0..model.len() {
        if reach_by_walk_enumeration(model, x, dir, max_len).intersects(phi) {
            out.insert(x);
        }
    }
    out
}

/// Walk-enumeration semantics of the surrounded operator: `x` satisfies
/// `phi1 S phi2` iff `x` satisfies `phi1` and every walk from `x` leaving
/// `phi1` passes through `phi2` first (at a position after the start).
/// Minimal violating walks repeat no point, so `max_len = n - 1` is
/// exhaustive.
pub fn surround_oracle(
    model: &QdModel,
    phi1: &PointSet,
    phi2: &PointSet,
    max_len: usize,
) -> PointSet {
    let mut out = PointSet::empty(model.len());
    for x in phi1.iter() {
        let mut violated = false;
        enumerate_walks(model, x, max_len, &mut |walk| {
            let l = walk.len() - 1;
            if l > 0
                && !phi1.contains(walk[l])
                && (1..=l).all(|j| !phi2.contains(walk[j]))
            {
                violated = true;
                return false;
            }
            true
        });
        if !violated {
            out.insert(x);
        }
    }
    out
}

/// Walk-enumeration semantics of the propagation operator: `x` satisfies
/// `phi1 P phi2` iff `x` satisfies `phi2` and some walk from a `phi1` point
/// reaches `x` with all strictly intermediate points in `phi2`.
pub fn propagate_oracle(
    model: &QdModel,
    phi1: &PointSet,
    phi2: &PointSet,
    max_len: usize,
) -> PointSet {
    rho_oracle(model, Dir::Bwd, phi1, phi2, max_len).intersection(phi2)
}

fn oriented(model: &QdModel, dir: Dir) -> QdModel {
    match dir {
        Dir::Fwd => model.clone(),
        Dir::Bwd => reversed(model),
    }
}

/// The model with every edge reversed.
pub fn reversed(model: &QdModel) -> QdModel {
    let edges: Vec<(PointId, PointId)> = model.edges().map(|(s, d)| (d, s)).collect();
    QdModel::from_indexed(
        model.names().to_vec(),
        edges,
        model.valuation().clone(),
    )
    .expect("reversing preserves validity")
}

fn label_equal_pairs(model: &QdModel) -> PairRelation {
    let n = model.len();
    let mut rel = PairRelation::empty(n);
    for a in 0..n {
        for b in 0..n {
            if model.label_id(a) == model.label_id(b) {
                rel.insert(a, b);
            }
        }
    }
    rel
}

fn gfp_sweep(
    n: usize,
    mut rel: PairRelation,
    keep: impl Fn(&PairRelation, usize, usize) -> bool,
) -> PairRelation {
    loop {
        let mut changed = false;
        for a in 0..n {
            for b in rel.row(a).to_vec() {
                if !keep(&rel, a, b) {
                    rel.remove(a, b);
                    changed = true;
                }
            }
        }
        if !changed {
            return rel;
        }
    }
}

/// Greatest CM-bisimulation by full neighbourhood enumeration: the transfer
/// conditions quantify over every neighbourhood (all supersets count), with
/// interiors computed by exhaustive subset enumeration.
pub fn cm_subset_enum_gfp(model: &QdModel) -> Result<PairRelation> {
    subset_enum_gfp(model, 12, false, false)
}

/// Greatest CMC-bisimulation by full neighbourhood enumeration in both
/// directions.
pub fn cmc_subset_enum_gfp(model: &QdModel) -> Result<PairRelation> {
    subset_enum_gfp(model, 12, true, false)
}

/// Greatest INL-bisimulation: like CM but each chosen neighbourhood must
/// transfer in both directions at once.
pub fn inl_subset_enum_gfp(model: &QdModel) -> Result<PairRelation> {
    subset_enum_gfp(model, 15, false, true)
}

fn subset_enum_gfp(
    model: &QdModel,
    limit: usize,
    with_backward: bool,
    both_ways_per_set: bool,
) -> Result<PairRelation> {
    let n = model.len();
    if n > limit {
        return Err(Error::TooLarge {
            what: "subset-enumeration bisimulation oracle",
            limit,
            actual: n,
        });
    }
    let space = MaskSpace::new(model);
    let nbhd_fwd: Vec<Vec<u64>> = (0..n).map(|x| space.neighbourhoods(x, Dir::Fwd)).collect();
    let nbhd_bwd: Vec<Vec<u64>> = if with_backward {
        (0..n).map(|x| space.neighbourhoods(x, Dir::Bwd)).collect()
    } else {
        Vec::new()
    };

    // rows[p] = mask of q with B(p,q); cols[q] = mask of p with B(p,q)
    let matrices = |rel: &PairRelation| -> (Vec<u64>, Vec<u64>) {
        let mut rows = vec![0u64; n];
        let mut cols = vec![0u64; n];
        for (p, q) in rel.iter_pairs() {
            rows[p] |= 1 << q;
            cols[q] |= 1 << p;
        }
        (rows, cols)
    };
    let or_over = |masks: &[u64], set: u64| -> u64 {
        let mut acc = 0u64;
        let mut bits = set;
        while bits != 0 {
            let p = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            acc |= masks[p];
        }
        acc
    };

    // cond A: for all S1 there is S2 such that every s2 in S2 has a match
    // s1 in S1; with `both`, additionally every s1 in S1 has a match in S2.
    let cond_a = |rows: &[u64], cols: &[u64], n1: &[u64], n2: &[u64], both: bool| -> bool {
        n1.iter().all(|&s1| {
            let cover = or_over(rows, s1); // points matched by some member of S1
            n2.iter().any(|&s2| {
                s2 & !cover == 0 && (!both || s1 & !or_over(cols, s2) == 0)
            })
        })
    };
    // cond B: for all S2 there is S1 such that every s1 in S1 has a match
    // s2 in S2; with `both`, additionally every s2 in S2 has a match in S1.
    let cond_b = |rows: &[u64], cols: &[u64], n1: &[u64], n2: &[u64], both: bool| -> bool {
        n2.iter().all(|&s2| {
            let col_cover = or_over(cols, s2); // points with a match inside S2
            n1.iter().any(|&s1| {
                s1 & !col_cover == 0 && (!both || s2 & !or_over(rows, s1) == 0)
            })
        })
    };

    let rel = gfp_sweep(n, label_equal_pairs(model), |rel, a, b| {
        let (rows, cols) = matrices(rel);
        let mut ok = cond_a(&rows, &cols, &nbhd_fwd[a], &nbhd_fwd[b], both_ways_per_set)
            && cond_b(&rows, &cols, &nbhd_fwd[a], &nbhd_fwd[b], both_ways_per_set);
        if ok && with_backward {
            ok = cond_a(&rows, &cols, &nbhd_bwd[a], &nbhd_bwd[b], both_ways_per_set)
                && cond_b(&rows, &cols, &nbhd_bwd[a], &nbhd_bwd[b], both_ways_per_set);
        }
        ok
    });
    Ok(rel)
}

/// Greatest CM-bisimulation by pair-gfp over minimal neighbourhoods. On a
/// quasi-discrete model the transfer over arbitrary neighbourhoods
/// collapses to the minimal ones (the smallest `S1` is the hardest to
/// answer and the smallest `S2` the easiest to pick).
pub fn cm_mn_gfp(model: &QdModel) -> PairRelation {
    let n = model.len();
    let mn: Vec<Vec<PointId>> = (0..n)
        .map(|x| model.min_neighbourhood(x).expect("valid point").to_vec())
        .collect();
    gfp_sweep(n, label_equal_pairs(model), |rel, a, b| {
        mn[b]
            .iter()
            .all(|&s2| mn[a].iter().any(|&s1| rel.contains(s1, s2)))
            && mn[a]
                .iter()
                .all(|&s1| mn[b].iter().any(|&s2| rel.contains(s1, s2)))
    })
}

/// Greatest C-bisimulation by pair-gfp with singleton-closure transfers in
/// both directions (the checked sets are `{x} ∪ succ(x)` and
/// `{x} ∪ pred(x)`).
pub fn c_gfp(model: &QdModel) -> PairRelation {
    let n = model.len();
    let fwd: Vec<Vec<PointId>> = (0..n)
        .map(|x| {
            let mut v = vec![x];
            v.extend_from_slice(model.succ(x));
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();
    let bwd: Vec<Vec<PointId>> = (0..n)
        .map(|x| {
            let mut v = vec![x];
            v.extend_from_slice(model.pred(x));
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();
    gfp_sweep(n, label_equal_pairs(model), |rel, a, b| {
        fwd[a]
            .iter()
            .all(|&x1| fwd[b].iter().any(|&x2| rel.contains(x1, x2)))
            && fwd[b]
                .iter()
                .all(|&x2| fwd[a].iter().any(|&x1| rel.contains(x1, x2)))
            && bwd[a]
                .iter()
                .all(|&x1| bwd[b].iter().any(|&x2| rel.contains(x1, x2)))
            && bwd[b]
                .iter()
                .all(|&x2| bwd[a].iter().any(|&x1| rel.contains(x1, x2)))
    })
}

/// Greatest Path-bisimulation by pair-gfp over reach sets: bounded-path
/// endpoints are exactly the reachable points, so the four transfer
/// conditions reduce to matching of forward and backward reach sets.
pub fn path_gfp(model: &QdModel) -> PairRelation {
    let n = model.len();
    let rf: Vec<PointSet> = (0..n).map(|x| model.reach(x, Dir::Fwd).unwrap()).collect();
    let rb: Vec<PointSet> = (0..n).map(|x| model.reach(x, Dir::Bwd).unwrap()).collect();
    let covered = |rel: &PairRelation, ys: &PointSet, targets: &PointSet, flip: bool| {
        ys.iter().all(|y| {
            if flip {
                targets.iter().any(|t| rel.contains(t, y))
            } else {
                rel.row(y).intersects(targets)
            }
        })
    };
    gfp_sweep(n, label_equal_pairs(model), |rel, a, b| {
        covered(rel, &rf[a], &rf[b], false)
            && covered(rel, &rf[b], &rf[a], true)
            && covered(rel, &rb[a], &rb[b], false)
            && covered(rel, &rb[b], &rb[a], true)
    })
}

/// Greatest divergence-blind stuttering equivalence with converse on the
/// reflexive-closed Kripke structure of the model, by pair-gfp with the
/// transfer conditions checked verbatim: a step of one state must be
/// answered by an inert path of the other (staying related to the first
/// state) followed by one step to a related state.
pub fn dbsc_gfp(model: &QdModel) -> PairRelation {
    let n = model.len();
    let succ_r: Vec<Vec<PointId>> = (0..n)
        .map(|x| {
            let mut v = vec![x];
            v.extend_from_slice(model.succ(x));
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();
    let pred_r: Vec<Vec<PointId>> = (0..n)
        .map(|x| {
            let mut v = vec![x];
            v.extend_from_slice(model.pred(x));
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();

    let answer = |rel: &PairRelation, s: usize, t: usize, steps: &[Vec<PointId>]| -> bool {
        // inert zone: states reachable from t through states related to s
        let mut zone = Vec::new();
        let mut in_zone = PointSet::empty(n);
        if rel.contains(s, t) {
            zone.push(t);
            in_zone.insert(t);
        }
        let mut i = 0;
        while i < zone.len() {
            let u = zone[i];
            i += 1;
            for &v in &steps[u] {
                if !in_zone.contains(v) && rel.contains(s, v) {
                    in_zone.insert(v);
                    zone.push(v);
                }
            }
        }
        // possible endpoints: one step out of the zone (reflexive steps make
        // the zone itself included)
        let mut ends = PointSet::empty(n);
        for &u in &zone {
            for &v in &steps[u] {
                ends.insert(v);
            }
        }
        steps[s].iter().all(|&s_next| rel.row(s_next).intersects(&ends))
    };

    let mut rel = label_equal_pairs(model);
    loop {
        let mut changed = false;
        for a in 0..n {
            for b in rel.row(a).to_vec() {
                let ok = answer(&rel, a, b, &succ_r)
                    && answer(&rel, b, a, &succ_r)
                    && answer(&rel, a, b, &pred_r)
                    && answer(&rel, b, a, &pred_r);
                if !ok {
                    rel.remove(a, b);
                    rel.remove(b, a); // the relation stays symmetric
                    changed = true;
                }
            }
        }
        if !changed {
            return rel;
        }
    }
}

/// Connectedness checked straight from the separated-sets definition: the
/// carrier is disconnected iff it splits into two non-empty sets `A1, A2`
/// with `A1 ∩ C(A2) = C(A1) ∩ A2 = ∅`.
pub fn is_connected_bruteforce(model: &QdModel) -> Result<bool> {
    let n = model.len();
    if n > 16 {
        return Err(Error::TooLarge {
            what: "brute-force connectedness",
            limit: 16,
            actual: n,
        });
    }
    let space = MaskSpace::new(model);
    let top = space.universe();
    for a1 in 1..top {
        let a2 = top & !a1;
        if a2 == 0 {
            continue;
        }
        if a1 & space.closure(a2, Dir::Fwd) == 0 && space.closure(a1, Dir::Fwd) & a2 == 0 {
            return Ok(false);
        }
    }
    Ok(true)
}
