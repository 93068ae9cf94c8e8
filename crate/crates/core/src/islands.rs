//! c-islands and (a,b)-sparsity.

use std::collections::BTreeSet;

use num_rational::Ratio;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::plane_graph::{PlaneGraph, Vertex};

/// Default node budget for one island search.
pub const ISLAND_BUDGET: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Island {
    /// Sorted.
    pub vertices: Vec<Vertex>,
    pub c: usize,
    /// Neighbors outside the island, per vertex (same order as `vertices`).
    pub external_degree: Vec<usize>,
}

pub fn is_island(g: &PlaneGraph, set: &[Vertex], c: usize) -> bool {
    if set.is_empty() {
        return false;
    }
    let inside: BTreeSet<Vertex> = set.iter().copied().collect();
    set.iter().all(|&v| g.is_alive(v) && g.neighbors(v).iter().filter(|w| !inside.contains(w)).count() < c)
}

/// Adjacency restricted to a live vertex mask. Lets the island-coloring
/// loop peel vertices without rebuilding the embedding.
pub struct Residual<'a> {
    pub adj: &'a [Vec<Vertex>],
    pub alive: Vec<bool>,
}

impl Residual<'_> {
    fn live_neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[v].iter().copied().filter(move |&w| self.alive[w])
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.live_neighbors(v).count()
    }
}

struct Search<'r, 'a> {
    res: &'r Residual<'a>,
    c: usize,
    k: usize,
    nodes: u64,
    budget: u64,
    best: Option<Vec<Vertex>>,
}

/// Outcome of a bounded search.
enum Step {
    Done,
    OutOfBudget,
}

impl Search<'_, '_> {
    fn ext(&self, v: Vertex, in_set: &[bool]) -> usize {
        self.res.live_neighbors(v).filter(|&w| !in_set[w]).count()
    }

    /// Branches on the first vertex of `set` with too many outside neighbors.
    /// `out` marks vertices that may not join the set.
    fn grow(&mut self, set: &mut Vec<Vertex>, in_set: &mut Vec<bool>, out: &mut Vec<bool>) -> Step {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Step::OutOfBudget;
        }
        let mut need_max = 0;
        let mut first: Option<Vertex> = None;
        for &v in set.iter() {
            let e = self.ext(v, in_set);
            if e >= self.c {
                let blocked = self.res.live_neighbors(v).filter(|&w| !in_set[w] && out[w]).count();
                if blocked >= self.c {
                    return Step::Done;
                }
                need_max = need_max.max(e + 1 - self.c);
                if first.is_none() {
                    first = Some(v);
                }
            }
        }
        let Some(w) = first else {
            let mut s = set.clone();
            s.sort_unstable();
            if self.best.as_ref().is_none_or(|b| s < *b) {
                self.best = Some(s);
            }
            return Step::Done;
        };
        if set.len() + need_max > self.k {
            return Step::Done;
        }
        let mut cands: Vec<Vertex> = self.res.live_neighbors(w).filter(|&n| !in_set[n] && !out[n]).collect();
        cands.sort_unstable();
        let mut excluded = Vec::new();
        for n in cands {
            set.push(n);
            in_set[n] = true;
            let step = self.grow(set, in_set, out);
            in_set[n] = false;
            set.pop();
            if let Step::OutOfBudget = step {
                for e in excluded {
                    out[e] = false;
                }
                return Step::OutOfBudget;
            }
            out[n] = true;
            excluded.push(n);
        }
        for e in excluded {
            out[e] = false;
        }
        Step::Done
    }
}

/// Smallest c-island of size at most `sigma_max` avoiding `avoid` (ties:
/// lexicographically least). Returns `Err(())` if the node budget ran out
/// before the search finished.
pub fn find_island_in(
    res: &Residual<'_>,
    c: usize,
    sigma_max: usize,
    avoid: &[bool],
    budget: u64,
) -> Result<Option<Island>, ()> {
    let n = res.adj.len();
    let make = |vertices: Vec<Vertex>| {
        let set: BTreeSet<Vertex> = vertices.iter().copied().collect();
        let external_degree = vertices.iter().map(|&v| res.live_neighbors(v).filter(|w| !set.contains(w)).count()).collect();
        Island { vertices, c, external_degree }
    };
    for v in 0..n {
        if res.alive[v] && !avoid[v] && res.degree(v) < c {
            return Ok(Some(make(vec![v])));
        }
    }
    let mut spent = 0;
    for k in 2..=sigma_max {
        for v in 0..n {
            if !res.alive[v] || avoid[v] {
                continue;
            }
            let mut out: Vec<bool> = (0..n).map(|w| w < v || avoid[w] || !res.alive[w]).collect();
            let mut in_set = vec![false; n];
            in_set[v] = true;
            out[v] = true;
            let mut search = Search { res, c, k, nodes: 0, budget: budget - spent, best: None };
            let step = search.grow(&mut vec![v], &mut in_set, &mut out);
            spent += search.nodes.min(budget - spent);
            if let Step::OutOfBudget = step {
                return Err(());
            }
            if let Some(best) = search.best {
                return Ok(Some(make(best)));
            }
        }
    }
    Ok(None)
}

/// One c-island of size at most `sigma_max` disjoint from `avoid`, of
/// minimum size among those found within the default budget.
pub fn find_island(g: &PlaneGraph, c: usize, sigma_max: usize, avoid: &BTreeSet<Vertex>) -> Option<Island> {
    let adj = g.rotations();
    let res = Residual { adj, alive: g.alive_mask().to_vec() };
    let avoid_mask: Vec<bool> = (0..g.capacity()).map(|v| avoid.contains(&v)).collect();
    find_island_in(&res, c, sigma_max, &avoid_mask, ISLAND_BUDGET).ok().flatten()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsityParams {
    pub a: Ratio<i64>,
    pub b: Ratio<i64>,
}

impl SparsityParams {
    /// `a = 3 - 1/(208t)`, `b = |X| + t + 2`.
    pub fn discharging(t: usize, x_len: usize) -> Self {
        let t = t as i64;
        SparsityParams { a: Ratio::from_integer(3) - Ratio::new(1, 208 * t), b: Ratio::from_integer(x_len as i64 + t + 2) }
    }
}

pub fn is_sparse(g: &PlaneGraph, a: Ratio<i64>, b: Ratio<i64>) -> bool {
    Ratio::from_integer(g.edge_count() as i64) <= a * Ratio::from_integer(g.vertex_count() as i64) + b
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparsityReport {
    pub checked: usize,
    /// Vertex sets of induced subgraphs violating the inequality.
    pub violations: Vec<Vec<Vertex>>,
}

/// Checks `g`, every single-vertex deletion and `samples` random induced
/// subgraphs.
pub fn hereditary_sparse_sample<R: Rng>(g: &PlaneGraph, a: Ratio<i64>, b: Ratio<i64>, samples: usize, rng: &mut R) -> SparsityReport {
    let verts: Vec<Vertex> = g.vertices().collect();
    let mut subsets: Vec<Vec<Vertex>> = vec![verts.clone()];
    for &v in &verts {
        subsets.push(verts.iter().copied().filter(|&w| w != v).collect());
    }
    for _ in 0..samples {
        let p: f64 = rng.gen_range(0.2..1.0);
        subsets.push(verts.iter().copied().filter(|_| rng.gen_bool(p)).collect());
    }
    let mut report = SparsityReport { checked: 0, violations: Vec::new() };
    for s in subsets {
        report.checked += 1;
        let h = g.induced_subgraph(&s);
        if !is_sparse(&h, a, b) {
            report.violations.push(s);
        }
    }
    report
}
