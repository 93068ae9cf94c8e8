//! Brute-force references for small instances.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cli_io::gen;
use crate::color_core::{Color, Coloring, Lists, Precoloring};
use crate::plane_graph::{PlaneGraph, Vertex};
use crate::structure_detect::PwordEmbedding;

/// Default node budget for the backtracking searches.
pub const ORACLE_BUDGET: u64 = 50_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("graph is neither two apexes over a linear forest nor small enough to search")]
    UnsupportedStructure,
}

/// Size of the monochromatic component of `v` among colored vertices.
fn component_size(g: &PlaneGraph, phi: &[Option<Color>], v: Vertex, cap: usize) -> usize {
    let Some(c) = phi[v] else { return 0 };
    let mut seen = vec![v];
    let mut i = 0;
    while i < seen.len() && seen.len() <= cap {
        let u = seen[i];
        i += 1;
        for &w in g.neighbors(u) {
            if phi[w] == Some(c) && !seen.contains(&w) {
                seen.push(w);
            }
        }
    }
    seen.len()
}

fn max_cluster(g: &PlaneGraph, phi: &[Option<Color>]) -> usize {
    g.vertices().map(|v| component_size(g, phi, v, usize::MAX)).max().unwrap_or(0)
}

struct Brute<'a> {
    g: &'a PlaneGraph,
    lists: &'a Lists,
    order: Vec<Vertex>,
    gamma: usize,
    uniform: bool,
    nodes: u64,
    budget: u64,
}

impl Brute<'_> {
    fn search(&mut self, i: usize, phi: &mut Coloring, used: usize) -> Result<bool, OracleError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(OracleError::BudgetExceeded(self.budget));
        }
        let Some(&v) = self.order.get(i) else { return Ok(true) };
        if phi[v].is_some() {
            return self.search(i + 1, phi, used);
        }
        let list = &self.lists[v];
        // with identical lists, a fresh color is only tried in first-use order
        let limit = if self.uniform { (used + 1).min(list.len()) } else { list.len() };
        for (k, &c) in list[..limit].iter().enumerate() {
            phi[v] = Some(c);
            if component_size(self.g, phi, v, self.gamma) <= self.gamma && self.search(i + 1, phi, used.max(k + 1))? {
                return Ok(true);
            }
        }
        phi[v] = None;
        Ok(false)
    }
}

/// Clustering of `phi` if it colors every vertex from its list and agrees
/// with `psi`.
pub fn check_coloring(g: &PlaneGraph, lists: &Lists, psi: &Precoloring, phi: &[Option<Color>]) -> Option<usize> {
    let listed = g.vertices().all(|v| phi.get(v).copied().flatten().is_some_and(|c| lists[v].contains(&c)));
    let extends = psi.iter().all(|(&v, &c)| !g.is_alive(v) || phi[v] == Some(c));
    (listed && extends).then(|| max_cluster(g, phi))
}

/// A minimum-clustering extension of `psi`, provided that minimum is at most
/// `gamma_max`.
pub fn brute_min_clustering(
    g: &PlaneGraph,
    lists: &Lists,
    psi: &Precoloring,
    gamma_max: usize,
    budget: u64,
) -> Result<Option<(Coloring, usize)>, OracleError> {
    let mut order: Vec<Vertex> = g.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let uniform = psi.is_empty() && order.windows(2).all(|w| lists[w[0]] == lists[w[1]]);
    let mut base: Coloring = vec![None; g.capacity()];
    for (&v, &c) in psi {
        base[v] = Some(c);
    }
    let pre_gamma = max_cluster(g, &base);
    let mut spent = 0;
    for gamma in pre_gamma.max(1)..=gamma_max {
        let mut b = Brute { g, lists, order: order.clone(), gamma, uniform, nodes: 0, budget: budget - spent };
        let mut phi = base.clone();
        let found = b.search(0, &mut phi, 0)?;
        spent += b.nodes;
        if found {
            let achieved = max_cluster(g, &phi);
            debug_assert!(achieved <= gamma);
            return Ok(Some((phi, achieved)));
        }
    }
    Ok(None)
}

/// Outcome of enumerating every 3-coloring of P''_t.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrucialReport {
    pub gamma: usize,
    pub t: usize,
    pub colorings: u64,
    /// Colorings with clustering at most `gamma`.
    pub low_clustering: u64,
    /// One such coloring giving the apexes different colors.
    pub counterexample: Option<Vec<Color>>,
}

impl CrucialReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Enumerates all `3^(t+2)` colorings of P''_t with colors 1..=3.
pub fn obs_crucial_report(gamma: usize, t: usize) -> CrucialReport {
    let g = gen::pword(t);
    let n = t + 2;
    let mut digits = vec![0u8; n];
    let mut phi: Coloring = vec![Some(1); n];
    let mut report = CrucialReport { gamma, t, colorings: 0, low_clustering: 0, counterexample: None };
    loop {
        report.colorings += 1;
        if max_cluster(&g, &phi) <= gamma {
            report.low_clustering += 1;
            if phi[0] != phi[1] && report.counterexample.is_none() {
                report.counterexample = Some(phi.iter().map(|c| c.unwrap()).collect());
            }
        }
        let mut k = 0;
        while k < n && digits[k] == 2 {
            digits[k] = 0;
            phi[k] = Some(1);
            k += 1;
        }
        if k == n {
            break;
        }
        digits[k] += 1;
        phi[k] = Some(Color::from(digits[k]) + 1);
    }
    report
}

/// Every 3-coloring of P''_t with `t = (2γ-1)(γ+1)` and clustering at most
/// `γ` gives both apexes the same color.
pub fn verify_obs_crucial(gamma: usize) -> bool {
    verify_obs_crucial_with_t(gamma, (2 * gamma - 1) * (gamma + 1))
}

pub fn verify_obs_crucial_with_t(gamma: usize, t: usize) -> bool {
    obs_crucial_report(gamma, t).holds()
}

/// Two vertices whose removal leaves a linear forest, if any.
fn apex_pair(g: &PlaneGraph) -> Option<(Vertex, Vertex)> {
    let vs: Vec<Vertex> = g.vertices().collect();
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            let h = g.delete_vertices(&[u, v]);
            let forest = h.vertices().all(|w| h.degree(w) <= 2) && h.edge_count() + h.components().len() == h.vertex_count();
            if forest {
                return Some((u, v));
            }
        }
    }
    None
}

fn proper_backtrack(g: &PlaneGraph, lists: &Lists, order: &[Vertex], phi: &mut Coloring) -> bool {
    let Some((&v, rest)) = order.split_first() else { return true };
    for &c in &lists[v] {
        if g.neighbors(v).iter().all(|&w| phi[w] != Some(c)) {
            phi[v] = Some(c);
            if proper_backtrack(g, lists, rest, phi) {
                return true;
            }
        }
    }
    phi[v] = None;
    false
}

/// Whether `g` has a proper L-coloring. Two apexes over a linear forest are
/// handled by a path DP for every apex coloring; other graphs on at most 20
/// vertices by backtracking.
pub fn proper_list_colorable(g: &PlaneGraph, lists: &Lists) -> Result<bool, OracleError> {
    if let Some((u, v)) = apex_pair(g) {
        let h = g.delete_vertices(&[u, v]);
        for &cu in &lists[u] {
            for &cv in &lists[v] {
                if g.has_edge(u, v) && cu == cv {
                    continue;
                }
                let allowed = |w: Vertex| -> BTreeSet<Color> {
                    lists[w].iter().copied().filter(|&c| !(g.has_edge(w, u) && c == cu) && !(g.has_edge(w, v) && c == cv)).collect()
                };
                let ok = h.components().iter().all(|comp| {
                    // walk the path from an end
                    let start = comp.iter().copied().find(|&w| h.degree(w) <= 1).unwrap_or(comp[0]);
                    let mut prev = None;
                    let mut cur = start;
                    let mut reach = allowed(cur);
                    loop {
                        let next = h.neighbors(cur).iter().copied().find(|&w| Some(w) != prev);
                        let Some(nx) = next else { break };
                        let options = allowed(nx);
                        // a color is reachable at nx unless it is the only one reachable at cur
                        reach = options.into_iter().filter(|c| reach.iter().any(|d| d != c)).collect();
                        prev = Some(cur);
                        cur = nx;
                    }
                    !reach.is_empty()
                });
                if ok {
                    return Ok(true);
                }
            }
        }
        return Ok(false);
    }
    if g.vertex_count() <= 20 {
        let mut order: Vec<Vertex> = g.vertices().collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        return Ok(proper_backtrack(g, lists, &order, &mut vec![None; g.capacity()]));
    }
    Err(OracleError::UnsupportedStructure)
}

fn extend_path(g: &PlaneGraph, common: &BTreeSet<Vertex>, path: &mut Vec<Vertex>, t: usize) -> bool {
    if path.len() == t {
        return true;
    }
    let last = *path.last().unwrap();
    for &w in g.neighbors(last) {
        if common.contains(&w) && !path.contains(&w) {
            path.push(w);
            if extend_path(g, common, path, t) {
                return true;
            }
            path.pop();
        }
    }
    false
}

/// Plain enumeration: every apex pair, every start, every simple path.
pub fn exhaustive_pword(g: &PlaneGraph, t: usize) -> Option<PwordEmbedding> {
    let vs: Vec<Vertex> = g.vertices().collect();
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            let nu: BTreeSet<Vertex> = g.neighbors(u).iter().copied().collect();
            let common: BTreeSet<Vertex> = g.neighbors(v).iter().copied().filter(|w| nu.contains(w)).collect();
            for &s in &common {
                let mut path = vec![s];
                if extend_path(g, &common, &mut path, t) {
                    return Some(PwordEmbedding { u, v, path });
                }
            }
        }
    }
    None
}

type BoundaryKey = (usize, [Color; 3], [bool; 3]);

/// Minimum number of interior vertices joining the clusters of the tracked
/// root vertices, over all 3-colorings of a depth-`d` complete 3-tree.
fn tracked_min(d: usize, cols: [Color; 3], flags: [bool; 3], memo: &mut BTreeMap<BoundaryKey, usize>) -> usize {
    if d == 0 {
        return 0;
    }
    if let Some(&m) = memo.get(&(d, cols, flags)) {
        return m;
    }
    let mut best = usize::MAX;
    for c in 1..=3 {
        let tracked = (0..3).any(|i| flags[i] && cols[i] == c);
        let mut total = usize::from(tracked);
        // children replace one root vertex by the tip
        for drop in 0..3 {
            let mut cc = cols;
            let mut ff = flags;
            cc[drop] = c;
            ff[drop] = tracked;
            total += tracked_min(d - 1, cc, ff, memo);
        }
        best = best.min(total);
    }
    memo.insert((d, cols, flags), best);
    best
}

/// Least possible sum of the sizes of the clusters of the three root vertices
/// of the depth-`k` complete rooted 3-tree, roots colored 1, 2, 3 and every
/// vertex using colors 1..=3.
pub fn complete_3tree_boundary_sum(k: usize) -> usize {
    3 + tracked_min(k, [1, 2, 3], [true; 3], &mut BTreeMap::new())
}

/// The same minimum by enumerating every coloring of the interior.
pub fn complete_3tree_boundary_sum_brute(k: usize) -> usize {
    let g = gen::complete_3tree(k);
    let interior: Vec<Vertex> = (3..g.capacity()).collect();
    let mut phi: Coloring = vec![None; g.capacity()];
    for (i, c) in phi.iter_mut().take(3).enumerate() {
        *c = Some(i as Color + 1);
    }
    for &v in &interior {
        phi[v] = Some(1);
    }
    let mut digits = vec![0u8; interior.len()];
    let mut best = usize::MAX;
    loop {
        let s: usize = (0..3).map(|i| component_size(&g, &phi, i, usize::MAX)).sum();
        best = best.min(s);
        let mut k = 0;
        while k < digits.len() && digits[k] == 2 {
            digits[k] = 0;
            phi[interior[k]] = Some(1);
            k += 1;
        }
        if k == digits.len() {
            break;
        }
        digits[k] += 1;
        phi[interior[k]] = Some(Color::from(digits[k]) + 1);
    }
    best
}
