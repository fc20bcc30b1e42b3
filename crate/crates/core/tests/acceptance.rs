//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (run with `-- --nocapture` to see them). Every tolerance and
//! threshold is pinned here; the random corpora are seeded and fixed.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::Rng;

use qdcm_core::equiv::{
    ap_equivalence, c_bisimilarity, cm_bisimilarity, copa_bisimilarity, distinguish,
    find_homeomorphism, is_copa_bisimulation, is_homeomorphism, path_bisimilarity,
    trace_distinguish, trace_equivalent, EquivalenceKind,
};
use qdcm_core::gen::{
    generate_maze, random_formula, random_model, seeded_rng, LogicFragment, RandomModelCfg,
};
use qdcm_core::io::{image_to_model, load_model, render_classes, Image, PaletteConfig};
use qdcm_core::logic::{evaluate, Formula};
use qdcm_core::minimize::{minimize, verify_quotient};
use qdcm_core::model::{Dir, Walk};
use qdcm_core::oracle;
use qdcm_core::{Partition, PointSet, QdModel};

fn fixture_path(name: &str) -> String {
    format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn fixture(name: &str) -> QdModel {
    load_model(&std::fs::read_to_string(fixture_path(name)).unwrap()).unwrap()
}

fn maze_palette() -> PaletteConfig {
    PaletteConfig::from_json(&std::fs::read_to_string(fixture_path("maze_palette.json")).unwrap())
        .unwrap()
}

fn report(criterion: &str, violations: Vec<String>) {
    let ok = violations.is_empty();
    println!(
        "acceptance {criterion}: {}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(
        ok,
        "{criterion}: {} violation(s), first: {}",
        violations.len(),
        violations.first().map(String::as_str).unwrap_or("")
    );
}

/// The shared 100-model random corpus for the equivalence criteria
/// (n <= 12, mixed density).
fn corpus_small(count: usize) -> Vec<QdModel> {
    (0..count)
        .map(|i| {
            let mut rng = seeded_rng(0x5EED_0000 + i as u64);
            let n = 2 + (i % 11); // 2..=12
            let mut cfg = RandomModelCfg::new(n);
            cfg.avg_out_degree = [0.8, 1.4, 2.2][i % 3];
            cfg.props = vec!["p".into(), "q".into()];
            random_model(&mut rng, &cfg)
        })
        .collect()
}

fn random_subset(rng: &mut impl Rng, n: usize) -> PointSet {
    PointSet::from_iter(n, (0..n).filter(|_| rng.gen_bool(0.5)))
}

// ----------------------------------------------------------------------
// Criterion 1: closure axioms, additivity, duality, and the elementary
// forward/backward correspondences on 200 random models (n <= 64); full
// subset enumeration on n <= 12; idempotence fails on the 3-chain.
// ----------------------------------------------------------------------
#[test]
fn criterion_01_closure_axioms() {
    let mut violations = Vec::new();
    for i in 0..200 {
        let mut rng = seeded_rng(0xAA00 + i as u64);
        let n = if i < 120 {
            2 + (i % 11) // 2..=12: exhaustively checkable
        } else {
            13 + (i % 52) // 13..=64
        };
        let mut cfg = RandomModelCfg::new(n);
        cfg.avg_out_degree = [0.9, 1.7, 2.6][i % 3];
        let m = random_model(&mut rng, &cfg);

        if n <= 12 {
            let space = oracle::MaskSpace::new(&m);
            // the mask oracle must agree with the production closure on
            // every singleton and a sample of sets, which makes its
            // exhaustive sweep a faithful check of the model operators
            for x in 0..n {
                let s = PointSet::singleton(n, x);
                for dir in [Dir::Fwd, Dir::Bwd] {
                    if space.set_of(space.closure(1 << x, dir)) != m.closure(&s, dir).unwrap() {
                        violations.push(format!("model {i}: mask/closure mismatch at {x}"));
                    }
                }
            }
            for _ in 0..50 {
                let a = random_subset(&mut rng, n);
                let mask = space.mask_of(&a);
                for dir in [Dir::Fwd, Dir::Bwd] {
                    if space.set_of(space.closure(mask, dir)) != m.closure(&a, dir).unwrap() {
                        violations.push(format!("model {i}: mask/closure mismatch on set"));
                    }
                    if space.set_of(space.interior(mask, dir)) != m.interior(&a, dir).unwrap() {
                        violations.push(format!("model {i}: mask/interior mismatch on set"));
                    }
                }
            }
            let report = space.check_axioms();
            violations.extend(
                report
                    .violations
                    .into_iter()
                    .map(|v| format!("model {i}: {v}")),
            );
        } else {
            // sampled checks on the production operators
            for _ in 0..40 {
                let a = random_subset(&mut rng, n);
                let b = random_subset(&mut rng, n).union(&a); // a subset of b
                for dir in [Dir::Fwd, Dir::Bwd] {
                    let ca = m.closure(&a, dir).unwrap();
                    if !a.is_subset(&ca) {
                        violations.push(format!("model {i}: A not within C(A)"));
                    }
                    let cb = m.closure(&b, dir).unwrap();
                    if m.closure(&a.union(&b), dir).unwrap() != ca.union(&cb) {
                        violations.push(format!("model {i}: additivity fails"));
                    }
                    if !ca.is_subset(&cb) || !m
                        .interior(&a, dir)
                        .unwrap()
                        .is_subset(&m.interior(&b, dir).unwrap())
                    {
                        violations.push(format!("model {i}: monotonicity fails"));
                    }
                    if m.interior(&a, dir).unwrap()
                        != m.closure(&a.complement(), dir).unwrap().complement()
                    {
                        violations.push(format!("model {i}: duality fails"));
                    }
                }
                // forward interior, directly: points whose predecessors
                // stay inside
                let direct = PointSet::from_iter(
                    n,
                    a.iter().filter(|&x| m.pred(x).iter().all(|&p| a.contains(p))),
                );
                if m.interior(&a, Dir::Fwd).unwrap() != direct {
                    violations.push(format!("model {i}: direct interior form fails"));
                }
                // backward closure, literally
                let mut literal = a.clone();
                for x in 0..n {
                    if m.succ(x).iter().any(|&y| a.contains(y)) {
                        literal.insert(x);
                    }
                }
                if m.closure(&a, Dir::Bwd).unwrap() != literal {
                    violations.push(format!("model {i}: literal backward closure fails"));
                }
            }
            if !m.closure(&PointSet::empty(n), Dir::Fwd).unwrap().is_empty() {
                violations.push(format!("model {i}: C(empty) not empty"));
            }
            // singleton correspondence over all pairs
            for x1 in 0..n {
                let fwd = m.closure(&PointSet::singleton(n, x1), Dir::Fwd).unwrap();
                for x2 in 0..n {
                    let bwd = m.closure(&PointSet::singleton(n, x2), Dir::Bwd).unwrap();
                    if bwd.contains(x1) != fwd.contains(x2) {
                        violations.push(format!("model {i}: singleton correspondence fails"));
                    }
                }
            }
        }
    }

    // idempotence must fail on the committed 3-chain
    let chain = fixture("chain3.json");
    let a = PointSet::singleton(chain.len(), chain.point("a").unwrap());
    let c1 = chain.closure(&a, Dir::Fwd).unwrap();
    if chain.closure(&c1, Dir::Fwd).unwrap() == c1 {
        violations.push("idempotence unexpectedly holds on chain3".into());
    }
    report("criterion 01 (closure axioms)", violations);
}

// ----------------------------------------------------------------------
// Criterion 2: walk validity agrees with the closure-membership
// characterization on 1000 random sequences per model.
// ----------------------------------------------------------------------
#[test]
fn criterion_02_walk_characterization() {
    let mut violations = Vec::new();
    for i in 0..20 {
        let mut rng = seeded_rng(0xBB00 + i as u64);
        let n = 2 + (i % 11);
        let m = random_model(&mut rng, &RandomModelCfg::new(n));
        for s in 0..1000 {
            let len = 1 + rng.gen_range(0..6);
            let mut seq = Vec::with_capacity(len);
            let mut at = rng.gen_range(0..n);
            seq.push(at);
            for _ in 1..len {
                // half the steps try to follow the structure, half are
                // uniformly random
                at = if rng.gen_bool(0.5) && !m.succ(at).is_empty() {
                    m.succ(at)[rng.gen_range(0..m.succ(at).len())]
                } else if rng.gen_bool(0.3) {
                    at // stutter
                } else {
                    rng.gen_range(0..n)
                };
                seq.push(at);
            }
            let via_is_walk = m.is_walk(&Walk::new(seq.clone()).unwrap()).unwrap();
            // closure-membership characterization, via the set operators
            let via_closure = seq.windows(2).all(|w| {
                let fwd = m
                    .closure(&PointSet::singleton(n, w[0]), Dir::Fwd)
                    .unwrap()
                    .contains(w[1]);
                let bwd = m
                    .closure(&PointSet::singleton(n, w[1]), Dir::Bwd)
                    .unwrap()
                    .contains(w[0]);
                fwd && bwd
            });
            if via_is_walk != via_closure {
                violations.push(format!("model {i} sequence {s}: {seq:?} classified differently"));
            }
        }
    }
    report("criterion 02 (walk characterization)", violations);
}

// ----------------------------------------------------------------------
// Criteria 3 and 4: the near/reachability identities, exact set equality
// over 200 random (model, formula) pairs of depth <= 4.
// ----------------------------------------------------------------------
fn identity_corpus() -> Vec<(QdModel, Formula)> {
    (0..200)
        .map(|i| {
            let mut rng = seeded_rng(0xCC00 + i as u64);
            let n = 2 + (i % 9);
            let m = random_model(&mut rng, &RandomModelCfg::new(n));
            let atoms: Vec<String> = m.prop_names().map(|s| s.to_string()).collect();
            let f = random_formula(&mut rng, LogicFragment::Full, &atoms, 4);
            (m, f)
        })
        .collect()
}

#[test]
fn criterion_03_near_from_rho() {
    let mut violations = Vec::new();
    for (i, (m, f)) in identity_corpus().into_iter().enumerate() {
        let n_fwd = evaluate(&m, &Formula::near_fwd(f.clone()));
        let via_rho = evaluate(&m, &Formula::rho_bwd(f.clone(), Formula::False));
        if n_fwd != via_rho {
            violations.push(format!("case {i}: N+ differs from rho-(.,false)"));
        }
        let n_bwd = evaluate(&m, &Formula::near_bwd(f.clone()));
        let via_rho = evaluate(&m, &Formula::rho_fwd(f.clone(), Formula::False));
        if n_bwd != via_rho {
            violations.push(format!("case {i}: N- differs from rho+(.,false)"));
        }
    }
    report("criterion 03 (near from conditional reachability)", violations);
}

#[test]
fn criterion_04_sigma_rho_zeta_coincide() {
    let mut violations = Vec::new();
    for (i, (m, f)) in identity_corpus().into_iter().enumerate() {
        let sat = evaluate(&m, &f);
        for dir in [Dir::Fwd, Dir::Bwd] {
            let (sigma, rho_true, zeta_true) = match dir {
                Dir::Fwd => (
                    evaluate(&m, &Formula::sigma_fwd(f.clone())),
                    evaluate(&m, &Formula::rho_fwd(f.clone(), Formula::True)),
                    evaluate(&m, &Formula::zeta_fwd(f.clone(), Formula::True)),
                ),
                Dir::Bwd => (
                    evaluate(&m, &Formula::sigma_bwd(f.clone())),
                    evaluate(&m, &Formula::rho_bwd(f.clone(), Formula::True)),
                    evaluate(&m, &Formula::zeta_bwd(f.clone(), Formula::True)),
                ),
            };
            if sigma != rho_true || sigma != zeta_true {
                violations.push(format!("case {i}: sigma/rho/zeta disagree ({dir:?})"));
            }
            // independent route through reach sets
            let by_reach = PointSet::from_iter(
                m.len(),
                (0..m.len()).filter(|&x| m.reach(x, dir).unwrap().intersects(&sat)),
            );
            if sigma != by_reach {
                violations.push(format!("case {i}: sigma differs from reach route ({dir:?})"));
            }
        }
    }
    report("criterion 04 (sigma = rho(.,true) = zeta(.,true))", violations);
}

// ----------------------------------------------------------------------
// Criterion 5: the derived surround/propagate operators match the direct
// walk-enumeration semantics on every model with n <= 7; the other
// reachability operators are held to the same oracle.
// ----------------------------------------------------------------------
#[test]
fn criterion_05_walk_oracles() {
    let mut violations = Vec::new();
    let mut corpus: Vec<QdModel> = ["fig2.json", "fig3.json", "fig4.json", "fig6.json", "fig10.json", "chain3.json", "prop66_model.json"]
        .iter()
        .map(|f| fixture(f))
        .collect();
    for i in 0..30 {
        let mut rng = seeded_rng(0xDD00 + i as u64);
        let mut cfg = RandomModelCfg::sparse(2 + (i % 6));
        cfg.self_loop_prob = 0.15;
        corpus.push(random_model(&mut rng, &cfg));
    }
    let mut rng = seeded_rng(0xDD99);
    for (mi, m) in corpus.iter().enumerate() {
        assert!(m.len() <= 7, "criterion-5 corpus must stay tiny");
        let atoms: Vec<String> = m.prop_names().map(|s| s.to_string()).collect();
        let max_len = 7;
        for case in 0..8 {
            let f1 = random_formula(&mut rng, LogicFragment::Boolean, &atoms, 2);
            let f2 = random_formula(&mut rng, LogicFragment::Boolean, &atoms, 2);
            let (s1, s2) = (evaluate(m, &f1), evaluate(m, &f2));
            let mut check = |what: &str, fast: PointSet, slow: PointSet| {
                if fast != slow {
                    violations.push(format!(
                        "model {mi} case {case}: {what} disagrees with walk oracle \
                         (f1 = {f1}, f2 = {f2})"
                    ));
                }
            };
            check(
                "S",
                evaluate(m, &Formula::surround(f1.clone(), f2.clone())),
                oracle::surround_oracle(m, &s1, &s2, max_len),
            );
            check(
                "P",
                evaluate(m, &Formula::propagate(f1.clone(), f2.clone())),
                oracle::propagate_oracle(m, &s1, &s2, max_len),
            );
            for dir in [Dir::Fwd, Dir::Bwd] {
                let (rho, zeta, sigma) = match dir {
                    Dir::Fwd => (
                        Formula::rho_fwd(f1.clone(), f2.clone()),
                        Formula::zeta_fwd(f1.clone(), f2.clone()),
                        Formula::sigma_fwd(f1.clone()),
                    ),
                    Dir::Bwd => (
                        Formula::rho_bwd(f1.clone(), f2.clone()),
                        Formula::zeta_bwd(f1.clone(), f2.clone()),
                        Formula::sigma_bwd(f1.clone()),
                    ),
                };
                check(
                    "rho",
                    evaluate(m, &rho),
                    oracle::rho_oracle(m, dir, &s1, &s2, max_len),
                );
                check(
                    "zeta",
                    evaluate(m, &zeta),
                    oracle::zeta_oracle(m, dir, &s1, &s2, max_len),
                );
                check(
                    "sigma",
                    evaluate(m, &sigma),
                    oracle::sigma_oracle(m, dir, &s1, max_len),
                );
            }
        }
    }
    report("criterion 05 (surround/propagate vs walk oracles)", violations);
}

// ----------------------------------------------------------------------
// Criterion 6: the zeta/rho conjunction identity fails at points
// satisfying f1 but not f2 (witnessed by the committed model), while the
// disjunctive identity holds everywhere on the corpus.
// ----------------------------------------------------------------------
#[test]
fn criterion_06_zeta_identity_edge_case() {
    let mut violations = Vec::new();

    // committed counterexample: w satisfies a but not b
    let m = fixture("prop66_model.json");
    let w = m.point("w").unwrap();
    let (a, b) = (Formula::atom("a"), Formula::atom("b"));
    let zeta = evaluate(&m, &Formula::zeta_fwd(a.clone(), b.clone()));
    let conj = evaluate(
        &m,
        &Formula::and(vec![b.clone(), Formula::rho_fwd(a.clone(), b.clone())]),
    );
    if !zeta.contains(w) {
        violations.push("zeta+(a,b) should hold at the a-point (length-0 path)".into());
    }
    if conj.contains(w) {
        violations.push("b & rho+(a,b) should fail at the a-point".into());
    }
    if zeta == conj {
        violations.push("the literal conjunction identity unexpectedly holds".into());
    }
    // persist the counterexample alongside the test artifacts
    let artifact = format!(
        "{}/prop66_counterexample.json",
        env!("CARGO_TARGET_TMPDIR")
    );
    std::fs::write(
        &artifact,
        concat!(
            "{\n",
            "  \"model\": \"fixtures/prop66_model.json\",\n",
            "  \"point\": \"w\",\n",
            "  \"holds\": \"zeta+(a, b)\",\n",
            "  \"fails\": \"b & rho+(a, b)\"\n",
            "}\n"
        ),
    )
    .unwrap();

    // the corrected identity holds on the whole corpus, in both directions
    for (i, (m, f)) in identity_corpus().into_iter().enumerate() {
        let mut rng = seeded_rng(0xEE00 + i as u64);
        let atoms: Vec<String> = m.prop_names().map(|s| s.to_string()).collect();
        let f2 = random_formula(&mut rng, LogicFragment::Full, &atoms, 3);
        for dir in [Dir::Fwd, Dir::Bwd] {
            let (zeta, rho) = match dir {
                Dir::Fwd => (
                    Formula::zeta_fwd(f.clone(), f2.clone()),
                    Formula::rho_fwd(f.clone(), f2.clone()),
                ),
                Dir::Bwd => (
                    Formula::zeta_bwd(f.clone(), f2.clone()),
                    Formula::rho_bwd(f.clone(), f2.clone()),
                ),
            };
            let lhs = evaluate(&m, &zeta);
            let rhs = evaluate(
                &m,
                &Formula::or(vec![f.clone(), Formula::and(vec![f2.clone(), rho])]),
            );
            if lhs != rhs {
                violations.push(format!(
                    "case {i}: zeta != f1 | (f2 & rho) ({dir:?})"
                ));
            }
        }
    }
    report("criterion 06 (zeta identity edge case)", violations);
}

// ----------------------------------------------------------------------
// Criterion 7: exact verdicts on the committed figure fixtures.
// ----------------------------------------------------------------------
#[test]
fn criterion_07_fixture_verdicts() {
    let mut violations = Vec::new();
    struct Expect {
        file: &'static str,
        pair: (&'static str, &'static str),
        cm: Option<bool>,
        cmc: Option<bool>,
        path: Option<bool>,
        copa: Option<bool>,
        trace: Option<bool>,
        homeo: Option<bool>,
    }
    let cases = [
        Expect {
            file: "fig2.json",
            pair: ("x11", "x21"),
            cm: Some(true),
            cmc: None,
            path: None,
            copa: None,
            trace: None,
            homeo: Some(false),
        },
        Expect {
            file: "fig3.json",
            pair: ("u11", "u21"),
            cm: Some(true),
            cmc: Some(false),
            path: None,
            copa: None,
            trace: None,
            homeo: None,
        },
        Expect {
            file: "fig4.json",
            pair: ("y11", "y21"),
            cm: None,
            cmc: Some(false),
            path: Some(false),
            copa: None,
            trace: Some(true),
            homeo: None,
        },
        Expect {
            file: "fig6.json",
            pair: ("x11", "x21"),
            cm: None,
            cmc: Some(false),
            path: Some(true),
            copa: Some(true),
            trace: Some(false),
            homeo: None,
        },
        Expect {
            file: "fig8.json",
            pair: ("t11", "t21"),
            cm: None,
            cmc: None,
            path: Some(true),
            copa: Some(false),
            trace: None,
            homeo: None,
        },
        Expect {
            file: "fig10.json",
            pair: ("v12", "v22"),
            cm: None,
            cmc: Some(false),
            path: None,
            copa: None,
            trace: None,
            homeo: None,
        },
    ];
    for c in cases {
        let m = fixture(c.file);
        let (a, b) = (m.point(c.pair.0).unwrap(), m.point(c.pair.1).unwrap());
        let mut expect = |what: &str, want: Option<bool>, got: bool| {
            if let Some(want) = want {
                if want != got {
                    violations.push(format!(
                        "{}: {what}({}, {}) = {got}, expected {want}",
                        c.file, c.pair.0, c.pair.1
                    ));
                }
            }
        };
        expect("cm", c.cm, cm_bisimilarity(&m).same_class(a, b));
        expect("cmc", c.cmc, c_bisimilarity(&m).same_class(a, b));
        expect("path", c.path, path_bisimilarity(&m).same_class(a, b));
        expect("copa", c.copa, copa_bisimilarity(&m).same_class(a, b));
        expect("trace", c.trace, trace_equivalent(&m, a, b).unwrap());
        expect(
            "homeo",
            c.homeo,
            find_homeomorphism(&m, a, b).unwrap().is_some(),
        );
    }
    // the trace inequivalence on fig6 is witnessed by the word {r}{b}
    let m = fixture("fig6.json");
    let w = trace_distinguish(&m, m.point("x11").unwrap(), m.point("x21").unwrap())
        .unwrap()
        .expect("fig6 heads are not trace equivalent");
    if w.word != vec![vec!["r".to_string()], vec!["b".to_string()]] {
        violations.push(format!("fig6 trace witness is {:?}, expected [r][b]", w.word));
    }
    report("criterion 07 (fixture verdicts)", violations);
}

// ----------------------------------------------------------------------
// Criterion 8: hierarchy inclusions on 100 random models.
// ----------------------------------------------------------------------
#[test]
fn criterion_08_hierarchy() {
    let mut violations = Vec::new();
    for (i, m) in corpus_small(100).iter().enumerate() {
        let ap = ap_equivalence(m);
        let cm = cm_bisimilarity(m);
        let cmc = c_bisimilarity(m);
        let path = path_bisimilarity(m);
        let copa = copa_bisimilarity(m);
        let mut include = |finer: &Partition, coarser: &Partition, what: &str| {
            if !finer.refines(coarser) {
                violations.push(format!("model {i}: {what} inclusion fails"));
            }
        };
        include(&cmc, &cm, "CMC within CM");
        include(&cmc, &copa, "CMC within CoPa");
        include(&copa, &path, "CoPa within Path");
        include(&path, &ap, "Path within AP");
        // CMC-related points are trace equivalent
        for x in 0..m.len() {
            for y in x + 1..m.len() {
                if cmc.same_class(x, y) && !trace_equivalent(m, x, y).unwrap() {
                    violations.push(format!(
                        "model {i}: CMC-related pair ({x},{y}) not trace equivalent"
                    ));
                }
            }
        }
        // homeomorphic points are CM-bisimilar: glue a verbatim copy onto
        // the model; every point is homeomorphic to its mirror image
        let (doubled, inj1, inj2) = m.disjoint_union(m);
        let cm2 = cm_bisimilarity(&doubled);
        for x in 0..m.len() {
            if !cm2.same_class(inj1[x], inj2[x]) {
                violations.push(format!("model {i}: mirror pair {x} not CM-bisimilar"));
            }
        }
        if i % 10 == 0 {
            // spot-check that the mirror really is a homeomorphism
            let h = find_homeomorphism(&doubled, inj1[0], inj2[0]).unwrap();
            match h {
                Some(map) => {
                    if !is_homeomorphism(&doubled, &map) {
                        violations.push(format!("model {i}: mirror witness not a homeomorphism"));
                    }
                }
                None => violations.push(format!("model {i}: mirror homeomorphism not found")),
            }
        }
    }
    report("criterion 08 (hierarchy inclusions)", violations);
}

// ----------------------------------------------------------------------
// Criterion 9: refinement implementations agree with the pair-gfp
// oracles; CoPa output passes the definition-level check.
// ----------------------------------------------------------------------
#[test]
fn criterion_09_cross_algorithm_agreement() {
    let mut violations = Vec::new();
    for (i, m) in corpus_small(100).iter().enumerate() {
        let cm = cm_bisimilarity(m);
        match oracle::cm_mn_gfp(m).to_partition() {
            Ok(p) => {
                if p != cm {
                    violations.push(format!("model {i}: CM refinement vs pair-gfp"));
                }
            }
            Err(e) => violations.push(format!("model {i}: CM gfp not an equivalence: {e}")),
        }
        let cmc = c_bisimilarity(m);
        match oracle::c_gfp(m).to_partition() {
            Ok(p) => {
                if p != cmc {
                    violations.push(format!("model {i}: CMC refinement vs pair-gfp"));
                }
            }
            Err(e) => violations.push(format!("model {i}: C gfp not an equivalence: {e}")),
        }
        let copa = copa_bisimilarity(m);
        match oracle::dbsc_gfp(m).to_partition() {
            Ok(p) => {
                if p != copa {
                    violations.push(format!("model {i}: CoPa refinement vs stuttering gfp"));
                }
            }
            Err(e) => violations.push(format!("model {i}: dbsc gfp not an equivalence: {e}")),
        }
        if !is_copa_bisimulation(m, &copa.to_pair_relation()) {
            violations.push(format!("model {i}: CoPa output fails the definition check"));
        }
        let path = path_bisimilarity(m);
        match oracle::path_gfp(m).to_partition() {
            Ok(p) => {
                if p != path {
                    violations.push(format!("model {i}: Path refinement vs pair-gfp"));
                }
            }
            Err(e) => violations.push(format!("model {i}: Path gfp not an equivalence: {e}")),
        }
        // subset-enumeration oracles on the smallest models: both the CM
        // reduction and the coincidence of the interior-based and
        // closure-based formulations
        if m.len() <= 8 && i % 3 == 0 {
            let enum_cm = oracle::cm_subset_enum_gfp(m).unwrap();
            if enum_cm.to_partition().ok().as_ref() != Some(&cm) {
                violations.push(format!("model {i}: CM subset enumeration disagrees"));
            }
            let enum_cmc = oracle::cmc_subset_enum_gfp(m).unwrap();
            if enum_cmc.to_partition().ok().as_ref() != Some(&cmc) {
                violations.push(format!("model {i}: CMC subset enumeration disagrees"));
            }
        }
    }
    report("criterion 09 (cross-algorithm agreement)", violations);
}

// ----------------------------------------------------------------------
// Criterion 10: logical characterization. Non-CMC pairs get verified
// distinguishing formulas; equivalent pairs agree on 500 sampled formulas
// of the characterizing logic.
// ----------------------------------------------------------------------
#[test]
fn criterion_10_logical_characterization() {
    let mut violations = Vec::new();
    let files = [
        "fig2.json",
        "fig3.json",
        "fig4.json",
        "fig6.json",
        "fig8.json",
        "fig10.json",
    ];
    for file in files {
        let m = fixture(file);
        let atoms: Vec<String> = m.prop_names().map(|s| s.to_string()).collect();
        let cmc = c_bisimilarity(&m);
        let path = path_bisimilarity(&m);
        let copa = copa_bisimilarity(&m);
        for x in 0..m.len() {
            for y in 0..m.len() {
                if x == y {
                    continue;
                }
                if !cmc.same_class(x, y) {
                    match distinguish(&m, x, y) {
                        Ok(w) => {
                            let sat = evaluate(&m, &w.formula);
                            if !sat.contains(x) || sat.contains(y) {
                                violations.push(format!(
                                    "{file}: unverified witness for ({x},{y})"
                                ));
                            }
                        }
                        Err(e) => violations.push(format!(
                            "{file}: no witness for non-CMC pair ({x},{y}): {e}"
                        )),
                    }
                }
            }
        }
        let mut sampled_agreement =
            |partition: &Partition, fragment: LogicFragment, what: &str, seed: u64| {
                let mut rng = seeded_rng(seed);
                let formulas: Vec<Formula> = (0..500)
                    .map(|_| random_formula(&mut rng, fragment, &atoms, 4))
                    .collect();
                for f in &formulas {
                    let sat = evaluate(&m, f);
                    for members in partition.classes() {
                        let first = sat.contains(members[0]);
                        for &p in &members[1..] {
                            if sat.contains(p) != first {
                                violations.push(format!(
                                    "{file}: {what}-equivalent points disagree on {f}"
                                ));
                                return;
                            }
                        }
                    }
                }
            };
        sampled_agreement(&cmc, LogicFragment::NearConverse, "CMC", 0x10AA);
        sampled_agreement(&path, LogicFragment::Reach, "Path", 0x10BB);
        sampled_agreement(&copa, LogicFragment::ZoneReach, "CoPa", 0x10CC);
    }
    report("criterion 10 (logical characterization)", violations);
}

// ----------------------------------------------------------------------
// Criterion 11: quotient soundness via the disjoint-union harness for
// CMC, Path and CoPa on fixtures and 100 random models.
// ----------------------------------------------------------------------
#[test]
fn criterion_11_quotient_soundness() {
    let mut violations = Vec::new();
    let kinds = [
        EquivalenceKind::Cmc,
        EquivalenceKind::Path,
        EquivalenceKind::CoPa,
    ];
    let mut models: Vec<(String, QdModel)> = [
        "fig2.json",
        "fig3.json",
        "fig4.json",
        "fig6.json",
        "fig8.json",
        "fig10.json",
        "chain3.json",
    ]
    .iter()
    .map(|f| (f.to_string(), fixture(f)))
    .collect();
    for (i, m) in corpus_small(100).into_iter().enumerate() {
        models.push((format!("random-{i}"), m));
    }
    for (name, m) in &models {
        for kind in kinds {
            let result = match minimize(m, kind) {
                Ok(r) => r,
                Err(e) => {
                    violations.push(format!("{name}/{kind}: minimize failed: {e}"));
                    continue;
                }
            };
            let rep = verify_quotient(m, &result, 200, 0x11AA);
            if !rep.passed() {
                violations.push(format!(
                    "{name}/{kind}: {}",
                    rep.failures.first().cloned().unwrap_or_default()
                ));
            }
        }
    }
    report("criterion 11 (quotient soundness)", violations);
}

// ----------------------------------------------------------------------
// Criterion 12: the committed 32x32 maze. Path minimization coincides
// with label equivalence; CoPa keeps three corridor classes with the
// documented start/exit adjacency structure.
// ----------------------------------------------------------------------
#[test]
fn criterion_12_maze() {
    let mut violations = Vec::new();
    let bytes = std::fs::read(fixture_path("maze32.ppm")).unwrap();
    let img = Image::decode_netpbm(&bytes).unwrap();
    // the committed image is the generator's output for seed 7
    if generate_maze(32, 32, 7).pixels != img.pixels {
        violations.push("committed maze differs from the generator output".into());
    }
    let grid = image_to_model(&img, &maze_palette()).unwrap();
    let m = &grid.base;
    if m.len() != 1024 {
        violations.push(format!("maze model has {} points, expected 1024", m.len()));
    }

    let ap = ap_equivalence(m);
    let path = path_bisimilarity(m);
    if path.class_count() != ap.class_count() {
        violations.push(format!(
            "path classes {} != ap classes {}",
            path.class_count(),
            ap.class_count()
        ));
    }

    let copa = copa_bisimilarity(m);
    let has_prop = |cls: &[usize], prop: &str| -> bool {
        let set = m.prop(prop).expect("maze prop");
        cls.iter().any(|&x| set.contains(x))
    };
    // classify quotient classes and their adjacency
    let mut white_classes: Vec<usize> = Vec::new();
    for (c, cls) in copa.classes().iter().enumerate() {
        if has_prop(cls, "white") {
            white_classes.push(c);
        }
    }
    if white_classes.len() < 3 {
        violations.push(format!(
            "only {} white CoPa classes, expected at least 3",
            white_classes.len()
        ));
    }
    let touches = |c: usize, prop: &str| -> bool {
        copa.class(c).iter().any(|&x| {
            m.succ(x)
                .iter()
                .any(|&y| copa.class_of(y) != c && m.label(y).iter().any(|p| p == prop))
        })
    };
    let both: Vec<usize> = white_classes
        .iter()
        .copied()
        .filter(|&c| touches(c, "start") && touches(c, "exit"))
        .collect();
    let exit_only: Vec<usize> = white_classes
        .iter()
        .copied()
        .filter(|&c| touches(c, "exit") && !touches(c, "start"))
        .collect();
    let start_only: Vec<usize> = white_classes
        .iter()
        .copied()
        .filter(|&c| touches(c, "start") && !touches(c, "exit"))
        .collect();
    if both.len() != 1 {
        violations.push(format!(
            "{} white classes adjacent to both start and exit, expected exactly 1",
            both.len()
        ));
    }
    if exit_only.is_empty() {
        violations.push("no white class adjacent to an exit but no start".into());
    }
    if start_only.is_empty() {
        violations.push("no white class adjacent to a start but no exit".into());
    }

    // rendering the CoPa classes recolors the corridors with >= 3 colors
    let rendered = render_classes(&grid, &copa).unwrap();
    let mut corridor_colors: BTreeSet<[u8; 3]> = BTreeSet::new();
    for (p, &(row, col)) in grid.pixel_of.iter().enumerate() {
        if m.label(p) == ["white".to_string()] {
            corridor_colors.insert(rendered.get(row, col));
        }
    }
    if corridor_colors.len() < 3 {
        violations.push(format!(
            "rendered corridors use {} colors, expected >= 3",
            corridor_colors.len()
        ));
    }
    report("criterion 12 (maze reproduction)", violations);
}

// ----------------------------------------------------------------------
// Criterion 13: performance sanity on a 256x256 ingested image.
// ----------------------------------------------------------------------
#[test]
fn criterion_13_performance() {
    let mut violations = Vec::new();
    let img = generate_maze(256, 256, 7);
    let grid = image_to_model(&img, &maze_palette()).unwrap();
    assert_eq!(grid.base.len(), 65_536);

    let t = Instant::now();
    let cmc = minimize(&grid.base, EquivalenceKind::Cmc).unwrap();
    let cmc_time = t.elapsed();
    if cmc_time > Duration::from_secs(10) {
        violations.push(format!("CMC minimization took {cmc_time:?} (> 10 s)"));
    }

    let t = Instant::now();
    let copa = copa_bisimilarity(&grid.base);
    let copa_time = t.elapsed();
    if copa_time > Duration::from_secs(60) {
        violations.push(format!("CoPa took {copa_time:?} (> 60 s)"));
    }
    println!(
        "  timings: cmc minimization {cmc_time:?} ({} classes), copa {copa_time:?} ({} classes)",
        cmc.class_count,
        copa.class_count()
    );
    report("criterion 13 (performance sanity)", violations);
}
