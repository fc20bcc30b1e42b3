//! Deterministic generators: random models, random formulas per logic
//! fragment, and the maze test image. Everything is seeded; equal seeds
//! give equal output.

use std::collections::BTreeMap;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::io::Image;
use crate::logic::Formula;
use crate::model::QdModel;
use crate::set::PointSet;

/// Parameters for [`random_model`].
#[derive(Debug, Clone)]
pub struct RandomModelCfg {
    pub points: usize,
    /// Expected out-degree (edges are sampled independently).
    pub avg_out_degree: f64,
    /// Proposition names to draw from.
    pub props: Vec<String>,
    /// Probability that a given proposition holds at a given point.
    pub prop_density: f64,
    /// Probability of a self-loop at a given point.
    pub self_loop_prob: f64,
}

impl RandomModelCfg {
    pub fn new(points: usize) -> Self {
        RandomModelCfg {
            points,
            avg_out_degree: 1.6,
            props: vec!["p".into(), "q".into(), "r".into()],
            prop_density: 0.45,
            self_loop_prob: 0.05,
        }
    }

    pub fn sparse(points: usize) -> Self {
        RandomModelCfg {
            avg_out_degree: 1.2,
            ..Self::new(points)
        }
    }
}

pub fn random_model(rng: &mut impl RngCore, cfg: &RandomModelCfg) -> QdModel {
    let n = cfg.points.max(1);
    let names: Vec<String> = (0..n).map(|i| format!("n{i}")).collect();
    let p_edge = (cfg.avg_out_degree / n as f64).min(1.0);
    let mut edges = Vec::new();
    for s in 0..n {
        for d in 0..n {
            if s == d {
                if rng.gen_bool(cfg.self_loop_prob) {
                    edges.push((s, d));
                }
            } else if rng.gen_bool(p_edge) {
                edges.push((s, d));
            }
        }
    }
    let mut valuation: BTreeMap<String, PointSet> = BTreeMap::new();
    for prop in &cfg.props {
        let mut set = PointSet::empty(n);
        for x in 0..n {
            if rng.gen_bool(cfg.prop_density) {
                set.insert(x);
            }
        }
        valuation.insert(prop.clone(), set);
    }
    QdModel::from_indexed(names, edges, valuation).expect("generated model is valid")
}

/// A random strongly connected model: a random cycle through all points
/// plus random extra edges.
pub fn random_path_connected_model(rng: &mut impl RngCore, cfg: &RandomModelCfg) -> QdModel {
    let base = random_model(rng, cfg);
    let n = base.len();
    let mut order: Vec<usize> = (0..n).collect();
    // Fisher-Yates
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        order.swap(i, j);
    }
    let mut edges: Vec<(usize, usize)> = base.edges().collect();
    for i in 0..n {
        edges.push((order[i], order[(i + 1) % n]));
    }
    QdModel::from_indexed(base.names().to_vec(), edges, base.valuation().clone())
        .expect("still valid")
}

/// Deterministic RNG for test corpora.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The logic fragments whose random formulas characterize the
/// equivalences.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogicFragment {
    /// Atoms and boolean connectives only.
    Boolean,
    /// Boolean plus the forward near modality.
    Near,
    /// Boolean plus both near modalities.
    NearConverse,
    /// Boolean plus conditional reachability (both directions).
    CondReach,
    /// Boolean plus plain reachability (both directions).
    Reach,
    /// Boolean plus zone reachability (both directions).
    ZoneReach,
    /// Everything, including the derived surround/propagate operators.
    Full,
}

/// A random formula of the fragment with nesting depth at most `depth`.
pub fn random_formula(
    rng: &mut dyn RngCore,
    fragment: LogicFragment,
    atoms: &[String],
    depth: usize,
) -> Formula {
    let leaf = |rng: &mut dyn RngCore| -> Formula {
        if atoms.is_empty() {
            return if rng.next_u32() % 2 == 0 {
                Formula::True
            } else {
                Formula::False
            };
        }
        match rng.next_u32() % 8 {
            0 => Formula::True,
            1 => Formula::False,
            _ => Formula::atom(atoms[rng.next_u32() as usize % atoms.len()].clone()),
        }
    };
    if depth == 0 {
        return leaf(rng);
    }
    let sub = |rng: &mut dyn RngCore| -> Formula {
        // bias toward shallow subterms
        let d = rng.next_u32() as usize % depth;
        random_formula(rng, fragment, atoms, d)
    };
    use LogicFragment::*;
    let modal_choices: usize = match fragment {
        Boolean => 0,
        Near => 1,
        NearConverse | Reach => 2,
        CondReach | ZoneReach => 2,
        Full => 10,
    };
    let pick = rng.next_u32() as usize % (4 + modal_choices);
    match (fragment, pick) {
        (_, 0) => leaf(rng),
        (_, 1) => Formula::not(random_formula(rng, fragment, atoms, depth - 1)),
        (_, 2) => {
            let k = 2 + rng.next_u32() as usize % 2;
            Formula::and((0..k).map(|_| sub(rng)).collect())
        }
        (_, 3) => {
            let k = 2 + rng.next_u32() as usize % 2;
            Formula::or((0..k).map(|_| sub(rng)).collect())
        }
        (Near, _) => Formula::near_fwd(random_formula(rng, fragment, atoms, depth - 1)),
        (NearConverse, 4) => Formula::near_fwd(random_formula(rng, fragment, atoms, depth - 1)),
        (NearConverse, _) => Formula::near_bwd(random_formula(rng, fragment, atoms, depth - 1)),
        (Reach, 4) => Formula::sigma_fwd(random_formula(rng, fragment, atoms, depth - 1)),
        (Reach, _) => Formula::sigma_bwd(random_formula(rng, fragment, atoms, depth - 1)),
        (CondReach, 4) => Formula::rho_fwd(sub(rng), sub(rng)),
        (CondReach, _) => Formula::rho_bwd(sub(rng), sub(rng)),
        (ZoneReach, 4) => Formula::zeta_fwd(sub(rng), sub(rng)),
        (ZoneReach, _) => Formula::zeta_bwd(sub(rng), sub(rng)),
        (Full, 4) => Formula::near_fwd(sub(rng)),
        (Full, 5) => Formula::near_bwd(sub(rng)),
        (Full, 6) => Formula::rho_fwd(sub(rng), sub(rng)),
        (Full, 7) => Formula::rho_bwd(sub(rng), sub(rng)),
        (Full, 8) => Formula::sigma_fwd(sub(rng)),
        (Full, 9) => Formula::sigma_bwd(sub(rng)),
        (Full, 10) => Formula::zeta_fwd(sub(rng), sub(rng)),
        (Full, 11) => Formula::zeta_bwd(sub(rng), sub(rng)),
        (Full, 12) => Formula::surround(sub(rng), sub(rng)),
        (Full, _) => Formula::propagate(sub(rng), sub(rng)),
        (Boolean, _) => leaf(rng),
    }
}

/// Maze colors, matching the standard palette file.
pub const MAZE_WALL: [u8; 3] = [0, 0, 0];
pub const MAZE_CORRIDOR: [u8; 3] = [255, 255, 255];
pub const MAZE_EXIT: [u8; 3] = [0, 255, 0];
pub const MAZE_START: [u8; 3] = [0, 0, 255];

/// Generate a maze image with three walled-off chambers:
///
/// * the top chamber has a start and an exit, connected by corridors;
/// * the middle chamber has an exit but no start;
/// * the bottom chamber has a start but no exit.
///
/// Corridors inside a chamber are carved by a recursive backtracker on the
/// odd-coordinate cell lattice, so each chamber's corridor area is
/// connected and the wall network stays connected. Start/exit markers
/// replace dead-end cells, which keeps the white area of a chamber
/// connected. Deterministic in the seed.
pub fn generate_maze(width: usize, height: usize, seed: u64) -> Image {
    assert!(
        width >= 13 && height >= 17,
        "maze needs at least 13x17 pixels"
    );
    let mut img = Image::filled(width, height, MAZE_WALL);

    // three vertical bands separated by full wall rows
    let inner_rows = height - 4; // border rows + two separators
    let band = inner_rows / 3;
    let chambers = [
        (1, band),
        (band + 2, 2 * band + 1),
        (2 * band + 3, height.min(3 * band + 2 + 1) - 1),
    ];

    for (i, &(r0, r1)) in chambers.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
        let leaves = carve_chamber(&mut img, r0, r1.min(height - 2), 1, width - 2, &mut rng);
        match i {
            0 => {
                img.set(leaves[0].0, leaves[0].1, MAZE_START);
                let last = leaves[leaves.len() - 1];
                img.set(last.0, last.1, MAZE_EXIT);
            }
            1 => img.set(leaves[0].0, leaves[0].1, MAZE_EXIT),
            _ => img.set(leaves[0].0, leaves[0].1, MAZE_START),
        }
    }
    img
}

/// Recursive-backtracker carve on the odd lattice of a rectangle; returns
/// the dead-end cells (at least two exist in any tree with two or more
/// cells, and the rectangle is big enough for that).
fn carve_chamber(
    img: &mut Image,
    r0: usize,
    r1: usize,
    c0: usize,
    c1: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<(usize, usize)> {
    let cell_rows: Vec<usize> = (r0..=r1).step_by(2).collect();
    let cell_cols: Vec<usize> = (c0..=c1).step_by(2).collect();
    let (nr, nc) = (cell_rows.len(), cell_cols.len());
    assert!(nr * nc >= 2, "chamber too small to carve");
    let mut visited = vec![false; nr * nc];
    let mut passages: Vec<u32> = vec![0; nr * nc]; // carved-degree per cell
    let mut stack = vec![(0usize, 0usize)];
    visited[0] = true;
    img.set(cell_rows[0], cell_cols[0], MAZE_CORRIDOR);
    while let Some(&(r, c)) = stack.last() {
        let mut options: Vec<(usize, usize)> = Vec::new();
        for (dr, dc) in [(0i64, 1i64), (1, 0), (0, -1), (-1, 0)] {
            let (r2, c2) = (r as i64 + dr, c as i64 + dc);
            if r2 >= 0 && (r2 as usize) < nr && c2 >= 0 && (c2 as usize) < nc {
                let idx = r2 as usize * nc + c2 as usize;
                if !visited[idx] {
                    options.push((r2 as usize, c2 as usize));
                }
            }
        }
        if options.is_empty() {
            stack.pop();
            continue;
        }
        let (r2, c2) = options[rng.gen_range(0..options.len())];
        visited[r2 * nc + c2] = true;
        passages[r * nc + c] += 1;
        passages[r2 * nc + c2] += 1;
        // carve the wall between the two cells and the new cell itself
        let wall_r = (cell_rows[r] + cell_rows[r2]) / 2;
        let wall_c = (cell_cols[c] + cell_cols[c2]) / 2;
        img.set(wall_r, wall_c, MAZE_CORRIDOR);
        img.set(cell_rows[r2], cell_cols[c2], MAZE_CORRIDOR);
        stack.push((r2, c2));
    }
    let mut leaves: Vec<(usize, usize)> = (0..nr * nc)
        .filter(|&i| passages[i] == 1)
        .map(|i| (cell_rows[i / nc], cell_cols[i % nc]))
        .collect();
    if leaves.is_empty() {
        // cannot happen for a tree with >= 2 cells, but keep a fallback
        leaves.push((cell_rows[0], cell_cols[0]));
    }
    leaves
}
