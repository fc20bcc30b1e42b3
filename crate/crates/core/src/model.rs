//! Finite quasi-discrete closure models.
//!
//! A model is a finite carrier of points, a binary edge relation, and a
//! valuation mapping proposition names to point sets. The closure operator
//! `C(A) = A ∪ successors(A)` (forward) or `A ∪ predecessors(A)` (backward)
//! makes the carrier a closure space; interiors are the duals. Since the
//! carrier is finite and closure distributes over binary unions, every
//! closure operator arising here is determined by the relation, so the
//! relation-based representation is complete. Closure is generally not
//! idempotent (a chain `a → b → c` gives `C({a}) = {a,b}` but
//! `C(C({a})) = {a,b,c}`), which is exactly what separates these spaces
//! from topological ones.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::set::PointSet;

/// Dense index of a point within one model.
pub type PointId = usize;

/// Direction in which relational operators follow edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dir {
    /// Follow edges source-to-target (`C(A) = A ∪ successors(A)`).
    Fwd,
    /// Follow edges target-to-source (`C(A) = A ∪ predecessors(A)`).
    Bwd,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::Fwd => Dir::Bwd,
            Dir::Bwd => Dir::Fwd,
        }
    }
}

/// A finite non-empty sequence of point ids, representing a bounded path
/// by its prefix up to the path's length; the implicit constant tail is
/// never materialized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk(Vec<PointId>);

impl Walk {
    pub fn new(points: Vec<PointId>) -> Result<Walk> {
        if points.is_empty() {
            return Err(Error::EmptyWalk);
        }
        Ok(Walk(points))
    }

    /// Number of steps: one less than the number of positions, matching
    /// the length index of the bounded path it represents.
    pub fn len(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> &[PointId] {
        &self.0
    }
}

/// Diagnostic severity for [`QdModel::validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
    Info,
}

#[derive(Debug, Clone)]
pub struct Finding {
    pub severity: Severity,
    pub message: String,
}

#[derive(Debug, Clone, Default)]
pub struct Diagnostics {
    pub findings: Vec<Finding>,
}

impl Diagnostics {
    pub fn push_error(&mut self, message: String) {
        self.findings.push(Finding {
            severity: Severity::Error,
            message,
        });
    }

    pub fn push_info(&mut self, message: String) {
        self.findings.push(Finding {
            severity: Severity::Info,
            message,
        });
    }

    pub fn has_errors(&self) -> bool {
        self.findings.iter().any(|f| f.severity == Severity::Error)
    }
}

/// A finite quasi-discrete closure model.
///
/// Points carry stable external names; internally they are dense indices.
/// Edges are kept with both successor and predecessor adjacency; edge sets
/// are deduplicated. Self-loops are allowed and are distinct from the
/// implicit stuttering of bounded paths. Models are immutable after
/// construction.
#[derive(Clone)]
pub struct QdModel {
    names: Vec<String>,
    index: HashMap<String, PointId>,
    succ: Vec<Vec<PointId>>,
    pred: Vec<Vec<PointId>>,
    valuation: BTreeMap<String, PointSet>,
    /// Interned label id per point; the label of a point is the set of
    /// propositions holding there.
    labels: Vec<u32>,
    /// Label id -> sorted proposition names.
    label_defs: Vec<Vec<String>>,
}

impl QdModel {
    /// Build a model from named points with their propositions and edges
    /// between named points.
    pub fn new<S: AsRef<str>>(
        points: &[(S, Vec<S>)],
        edges: &[(S, S)],
    ) -> Result<QdModel> {
        if points.is_empty() {
            return Err(Error::EmptyModel);
        }
        let mut names = Vec::with_capacity(points.len());
        let mut index = HashMap::new();
        for (name, _) in points {
            let name = name.as_ref().to_string();
            if index.insert(name.clone(), names.len()).is_some() {
                return Err(Error::DuplicatePointName { name });
            }
            names.push(name);
        }
        let n = names.len();
        let mut valuation: BTreeMap<String, PointSet> = BTreeMap::new();
        for (i, (_, props)) in points.iter().enumerate() {
            for p in props {
                valuation
                    .entry(p.as_ref().to_string())
                    .or_insert_with(|| PointSet::empty(n))
                    .insert(i);
            }
        }
        let mut edge_ids = Vec::with_capacity(edges.len());
        for (src, dst) in edges {
            let (s, d) = (src.as_ref(), dst.as_ref());
            let (Some(&si), Some(&di)) = (index.get(s), index.get(d)) else {
                return Err(Error::DanglingEdge {
                    src: s.to_string(),
                    dst: d.to_string(),
                });
            };
            edge_ids.push((si, di));
        }
        Self::from_parts(names, index, edge_ids, valuation)
    }

    /// Build from index-level parts. Edge endpoints must be valid ids and
    /// valuation sets must have the model's width.
    pub fn from_indexed(
        names: Vec<String>,
        edges: Vec<(PointId, PointId)>,
        valuation: BTreeMap<String, PointSet>,
    ) -> Result<QdModel> {
        if names.is_empty() {
            return Err(Error::EmptyModel);
        }
        let mut index = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicatePointName { name: name.clone() });
            }
        }
        let n = names.len();
        for &(s, d) in &edges {
            if s >= n || d >= n {
                return Err(Error::InvalidPoint {
                    id: s.max(d),
                    width: n,
                });
            }
        }
        for set in valuation.values() {
            if set.width() != n {
                return Err(Error::WidthMismatch {
                    expected: n,
                    got: set.width(),
                });
            }
        }
        Self::from_parts(names, index, edges, valuation)
    }

    fn from_parts(
        names: Vec<String>,
        index: HashMap<String, PointId>,
        edges: Vec<(PointId, PointId)>,
        valuation: BTreeMap<String, PointSet>,
    ) -> Result<QdModel> {
        let n = names.len();
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for (s, d) in edges {
            succ[s].push(d);
        }
        for list in &mut succ {
            list.sort_unstable();
            list.dedup();
        }
        for (s, list) in succ.iter().enumerate() {
            for &d in list {
                pred[d].push(s);
            }
        }
        for list in &mut pred {
            list.sort_unstable();
        }

        // intern labels
        let prop_names: Vec<&String> = valuation.keys().collect();
        let mut point_props: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (pi, set) in valuation.values().enumerate() {
            for x in set.iter() {
                point_props[x].push(pi);
            }
        }
        let mut label_ids: HashMap<Vec<usize>, u32> = HashMap::new();
        let mut label_defs: Vec<Vec<String>> = Vec::new();
        let mut labels = vec![0u32; n];
        for (x, props) in point_props.iter().enumerate() {
            let next = label_ids.len() as u32;
            let id = *label_ids.entry(props.clone()).or_insert_with(|| {
                label_defs.push(props.iter().map(|&pi| prop_names[pi].clone()).collect());
                next
            });
            labels[x] = id;
        }

        Ok(QdModel {
            names,
            index,
            succ,
            pred,
            valuation,
            labels,
            label_defs,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false // empty models are rejected at construction
    }

    pub fn name(&self, id: PointId) -> &str {
        &self.names[id]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn point(&self, name: &str) -> Result<PointId> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownPointName {
                name: name.to_string(),
            })
    }

    pub fn check_point(&self, id: PointId) -> Result<()> {
        if id < self.len() {
            Ok(())
        } else {
            Err(Error::InvalidPoint {
                id,
                width: self.len(),
            })
        }
    }

    fn check_width(&self, set: &PointSet) -> Result<()> {
        if set.width() == self.len() {
            Ok(())
        } else {
            Err(Error::WidthMismatch {
                expected: self.len(),
                got: set.width(),
            })
        }
    }

    #[inline]
    pub fn succ(&self, id: PointId) -> &[PointId] {
        &self.succ[id]
    }

    #[inline]
    pub fn pred(&self, id: PointId) -> &[PointId] {
        &self.pred[id]
    }

    #[inline]
    pub fn step(&self, id: PointId, dir: Dir) -> &[PointId] {
        match dir {
            Dir::Fwd => &self.succ[id],
            Dir::Bwd => &self.pred[id],
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = (PointId, PointId)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(s, list)| list.iter().map(move |&d| (s, d)))
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(|l| l.len()).sum()
    }

    pub fn has_edge(&self, s: PointId, d: PointId) -> bool {
        self.succ[s].binary_search(&d).is_ok()
    }

    /// Interned label id of a point (two points have equal labels iff their
    /// ids are equal).
    #[inline]
    pub fn label_id(&self, id: PointId) -> u32 {
        self.labels[id]
    }

    /// The set of proposition names holding at a point, sorted.
    pub fn label(&self, id: PointId) -> &[String] {
        &self.label_defs[self.labels[id] as usize]
    }

    pub fn valuation(&self) -> &BTreeMap<String, PointSet> {
        &self.valuation
    }

    pub fn prop(&self, name: &str) -> Option<&PointSet> {
        self.valuation.get(name)
    }

    pub fn prop_names(&self) -> impl Iterator<Item = &str> {
        self.valuation.keys().map(|s| s.as_str())
    }

    /// Closure of `a`: `a` plus its successors (fwd) or predecessors (bwd).
    pub fn closure(&self, a: &PointSet, dir: Dir) -> Result<PointSet> {
        self.check_width(a)?;
        let mut out = a.clone();
        for x in a.iter() {
            for &y in self.step(x, dir) {
                out.insert(y);
            }
        }
        Ok(out)
    }

    /// Interior of `a`, the dual of closure:
    /// `I(a) = complement(C(complement(a)))`.
    pub fn interior(&self, a: &PointSet, dir: Dir) -> Result<PointSet> {
        self.check_width(a)?;
        Ok(self.closure(&a.complement(), dir)?.complement())
    }

    /// The smallest neighbourhood of `x`: the least `S` with
    /// `x ∈ interior(S, Fwd)`, which is `{x} ∪ predecessors(x)`
    /// (= `closure({x}, Bwd)`).
    pub fn min_neighbourhood(&self, x: PointId) -> Result<PointSet> {
        self.check_point(x)?;
        let mut out = PointSet::singleton(self.len(), x);
        for &p in self.pred(x) {
            out.insert(p);
        }
        Ok(out)
    }

    /// All endpoints of bounded paths from `x` (fwd) or all start points of
    /// bounded paths to `x` (bwd): the reflexive-transitive image under the
    /// relation. Always contains `x`.
    pub fn reach(&self, x: PointId, dir: Dir) -> Result<PointSet> {
        self.check_point(x)?;
        let mut out = PointSet::singleton(self.len(), x);
        let mut stack = vec![x];
        while let Some(p) = stack.pop() {
            for &q in self.step(p, dir) {
                if !out.contains(q) {
                    out.insert(q);
                    stack.push(q);
                }
            }
        }
        Ok(out)
    }

    /// Whether the sequence is a valid bounded-path prefix: each step is an
    /// edge or a stutter (`A ⊆ C(A)` makes stuttering always legal).
    pub fn is_walk(&self, w: &Walk) -> Result<bool> {
        for &p in w.points() {
            self.check_point(p)?;
        }
        Ok(w.points()
            .windows(2)
            .all(|s| s[0] == s[1] || self.has_edge(s[0], s[1])))
    }

    /// Quotient by a partition. Class labels must agree; quotient points are
    /// named `q0, q1, ...` ordered by the lexicographically least member
    /// name of each class. Returns the quotient and the projection map.
    pub fn quotient(&self, p: &Partition) -> Result<(QdModel, Vec<PointId>)> {
        if p.width() != self.len() {
            return Err(Error::InvalidPartition {
                reason: format!(
                    "partition width {} does not match model width {}",
                    p.width(),
                    self.len()
                ),
            });
        }
        for cls in p.classes() {
            let rep = cls[0];
            for &x in &cls[1..] {
                if self.labels[x] != self.labels[rep] {
                    return Err(Error::InconsistentClassLabels {
                        members: cls
                            .iter()
                            .map(|&m| self.names[m].clone())
                            .collect::<Vec<_>>()
                            .join(", "),
                    });
                }
            }
        }

        // order classes by lexicographically least member name
        let least_names: Vec<&str> = (0..p.class_count())
            .map(|c| {
                p.class(c)
                    .iter()
                    .map(|&x| self.names[x].as_str())
                    .min()
                    .expect("non-empty class")
            })
            .collect();
        let mut order: Vec<usize> = (0..p.class_count()).collect();
        order.sort_by_key(|&c| least_names[c]);
        let mut rank = vec![0usize; p.class_count()];
        for (r, &c) in order.iter().enumerate() {
            rank[c] = r;
        }

        let k = p.class_count();
        let names: Vec<String> = (0..k).map(|r| format!("q{r}")).collect();
        let mut edges = Vec::new();
        for (s, d) in self.edges() {
            edges.push((rank[p.class_of(s)], rank[p.class_of(d)]));
        }
        let mut valuation: BTreeMap<String, PointSet> = BTreeMap::new();
        for (prop, set) in &self.valuation {
            let mut qset = PointSet::empty(k);
            for x in set.iter() {
                qset.insert(rank[p.class_of(x)]);
            }
            if !qset.is_empty() {
                valuation.insert(prop.clone(), qset);
            }
        }
        let quotient = QdModel::from_indexed(names, edges, valuation)?;
        let projection = (0..self.len()).map(|x| rank[p.class_of(x)]).collect();
        Ok((quotient, projection))
    }

    /// Disjoint union of two models. Point names are preserved where
    /// possible; a name of `other` that clashes with one of `self` gets a
    /// `#2` suffix. Returns the union and both injections.
    pub fn disjoint_union(&self, other: &QdModel) -> (QdModel, Vec<PointId>, Vec<PointId>) {
        let n1 = self.len();
        let mut names = self.names.clone();
        for name in &other.names {
            if self.index.contains_key(name) {
                let mut candidate = format!("{name}#2");
                let mut k = 2;
                while names.contains(&candidate) {
                    k += 1;
                    candidate = format!("{name}#{k}");
                }
                names.push(candidate);
            } else {
                names.push(name.clone());
            }
        }
        let mut edges: Vec<(PointId, PointId)> = self.edges().collect();
        edges.extend(other.edges().map(|(s, d)| (s + n1, d + n1)));
        let width = n1 + other.len();
        let mut valuation: BTreeMap<String, PointSet> = BTreeMap::new();
        for (prop, set) in &self.valuation {
            let entry = valuation
                .entry(prop.clone())
                .or_insert_with(|| PointSet::empty(width));
            for x in set.iter() {
                entry.insert(x);
            }
        }
        for (prop, set) in &other.valuation {
            let entry = valuation
                .entry(prop.clone())
                .or_insert_with(|| PointSet::empty(width));
            for x in set.iter() {
                entry.insert(x + n1);
            }
        }
        let union = QdModel::from_indexed(names, edges, valuation)
            .expect("union of valid models is valid");
        let inj1 = (0..n1).collect();
        let inj2 = (0..other.len()).map(|x| x + n1).collect();
        (union, inj1, inj2)
    }

    /// Connectedness: the carrier is not the union of two non-empty
    /// separated sets, which on relational models means the underlying
    /// undirected graph is connected.
    pub fn is_connected(&self) -> bool {
        let mut seen = PointSet::singleton(self.len(), 0);
        let mut stack = vec![0];
        while let Some(p) = stack.pop() {
            for &q in self.succ(p).iter().chain(self.pred(p)) {
                if !seen.contains(q) {
                    seen.insert(q);
                    stack.push(q);
                }
            }
        }
        seen.len() == self.len()
    }

    /// Path-connectedness: every point reaches every other via bounded
    /// paths, i.e. the relation is strongly connected.
    pub fn is_path_connected(&self) -> bool {
        self.reach(0, Dir::Fwd).expect("0 is valid").len() == self.len()
            && self.reach(0, Dir::Bwd).expect("0 is valid").len() == self.len()
    }

    /// Check representation invariants. Structural corruption is impossible
    /// through the public constructors, so this mostly reports statistics
    /// and (for tiny models) defers to [`QdModel::validate_exhaustive`].
    pub fn validate(&self) -> Diagnostics {
        let mut d = Diagnostics::default();
        for (s, list) in self.succ.iter().enumerate() {
            for &t in list {
                if t >= self.len() {
                    d.push_error(format!("edge {s} -> {t} out of range"));
                }
                if self.pred[t].binary_search(&s).is_err() {
                    d.push_error(format!("adjacency mismatch on edge {s} -> {t}"));
                }
            }
            if list.windows(2).any(|w| w[0] >= w[1]) {
                d.push_error(format!("successor list of {s} not sorted/deduplicated"));
            }
        }
        for (prop, set) in &self.valuation {
            if set.width() != self.len() {
                d.push_error(format!("valuation of {prop:?} has wrong width"));
            }
            if set.is_empty() {
                d.push_info(format!("proposition {prop:?} holds nowhere"));
            }
        }
        d
    }

    /// Exhaustively verify the closure axioms, additivity, duality and the
    /// elementary forward/backward correspondences over all subsets by
    /// enumeration. Also reports (as info) whether the closure is
    /// idempotent, i.e. whether the space happens to be topological.
    /// Limited to models with at most 12 points.
    pub fn validate_exhaustive(&self) -> Result<Diagnostics> {
        const LIMIT: usize = 12;
        if self.len() > LIMIT {
            return Err(Error::TooLarge {
                what: "exhaustive axiom validation",
                limit: LIMIT,
                actual: self.len(),
            });
        }
        let mut d = self.validate();
        let space = crate::oracle::MaskSpace::new(self);
        let report = space.check_axioms();
        for msg in report.violations {
            d.push_error(msg);
        }
        match report.idempotence_counterexample {
            None => d.push_info("closure is idempotent (space is topological)".into()),
            Some(mask) => d.push_info(format!(
                "closure not idempotent, e.g. C(C(A)) != C(A) for A = {:?}",
                space.mask_to_names(mask)
            )),
        }
        Ok(d)
    }
}

impl std::fmt::Debug for QdModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "QdModel {{")?;
        for i in 0..self.len() {
            writeln!(
                f,
                "  {} {:?} -> {:?}",
                self.names[i],
                self.label(i),
                self.succ[i].iter().map(|&j| &self.names[j]).collect::<Vec<_>>()
            )?;
        }
        write!(f, "}}")
    }
}
