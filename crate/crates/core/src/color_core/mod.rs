//! Colorings, clusters and the coloring pipeline for graphs whose
//! X-external triangles are all facial.

mod island;
mod nocut;
mod sparsify;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::plane_graph::{PlaneGraph, Vertex};

pub(crate) use island::check_lists;
pub use island::{island_coloring, IslandColoring};
pub use nocut::{color_no_nonfacial, NocutColoring};
pub use sparsify::{extend_over_sparsifiers, satisfies_extension_conditions};

pub type Color = u32;
/// Per-vertex lists indexed by vertex id, each sorted ascending.
pub type Lists = Vec<Vec<Color>>;
/// Precolored vertices X with their colors.
pub type Precoloring = BTreeMap<Vertex, Color>;
/// Partial coloring over the vertex id space.
pub type Coloring = Vec<Option<Color>>;

/// Knobs shared by the whole pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    /// Starting island size bound.
    pub sigma: usize,
    /// The island bound is doubled up to this value before giving up.
    pub sigma_cap: usize,
    /// Overrides `D = 336t`.
    pub d_override: Option<usize>,
    /// Node budget for a single island search.
    pub island_budget: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config { sigma: 12, sigma_cap: 48, d_override: None, island_budget: crate::islands::ISLAND_BUDGET }
    }
}

impl Config {
    pub fn big_degree(&self, t: usize) -> usize {
        self.d_override.unwrap_or(336 * t)
    }
}

pub fn x_set(psi: &Precoloring) -> BTreeSet<Vertex> {
    psi.keys().copied().collect()
}

/// Uniform lists `{1, 2, 3}` over `n` ids.
pub fn uniform_lists(n: usize) -> Lists {
    vec![vec![1, 2, 3]; n]
}

/// Maximal monochromatic connected sets among colored live vertices, each
/// sorted, ordered by smallest vertex.
pub fn clusters(g: &PlaneGraph, phi: &[Option<Color>]) -> Vec<Vec<Vertex>> {
    let mut seen = vec![false; g.capacity()];
    let mut out = Vec::new();
    for s in g.vertices() {
        let Some(c) = phi[s] else { continue };
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut part = vec![s];
        let mut i = 0;
        while i < part.len() {
            let u = part[i];
            i += 1;
            for &w in g.neighbors(u) {
                if !seen[w] && phi[w] == Some(c) {
                    seen[w] = true;
                    part.push(w);
                }
            }
        }
        part.sort_unstable();
        out.push(part);
    }
    out
}

pub fn clustering(g: &PlaneGraph, phi: &[Option<Color>]) -> usize {
    clusters(g, phi).iter().map(Vec::len).max().unwrap_or(0)
}

/// Size of the cluster containing `v`.
pub fn cluster_size_of(g: &PlaneGraph, phi: &[Option<Color>], v: Vertex) -> usize {
    let Some(c) = phi[v] else { return 0 };
    let mut seen = BTreeSet::from([v]);
    let mut stack = vec![v];
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if phi[w] == Some(c) && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len()
}

/// No edge from `y` to the rest of the graph is monochromatic.
pub fn isolates(g: &PlaneGraph, phi: &[Option<Color>], y: &BTreeSet<Vertex>) -> bool {
    y.iter().filter(|&&u| g.is_alive(u)).all(|&u| {
        g.neighbors(u).iter().all(|w| y.contains(w) || phi[u].is_none() || phi[*w] != phi[u])
    })
}

/// Every vertex outside `y` has fewer than `c` neighbors in `y`.
pub fn is_solitary(g: &PlaneGraph, y: &BTreeSet<Vertex>, c: usize) -> bool {
    g.vertices().filter(|v| !y.contains(v)).all(|v| g.neighbors(v).iter().filter(|w| y.contains(w)).count() < c)
}

/// Checks that `phi` colors every live vertex from its list and agrees with
/// `psi`.
pub fn respects(g: &PlaneGraph, lists: &Lists, psi: &Precoloring, phi: &[Option<Color>]) -> bool {
    g.vertices().all(|v| phi[v].is_some_and(|c| lists[v].contains(&c)))
        && psi.iter().all(|(&v, &c)| !g.is_alive(v) || phi[v] == Some(c))
}

/// Smallest color of `list` not in `used`.
pub(crate) fn smallest_avoiding(list: &[Color], used: &BTreeSet<Color>) -> Option<Color> {
    list.iter().copied().find(|c| !used.contains(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli_io::gen;

    #[test]
    fn cluster_examples() {
        let p = gen::path(3);
        let phi = vec![Some(1), Some(1), Some(2)];
        assert_eq!(clusters(&p, &phi), vec![vec![0, 1], vec![2]]);
        assert_eq!(clustering(&p, &phi), 2);
        let k4 = gen::k4();
        let phi = vec![Some(1), Some(1), Some(2), Some(3)];
        assert_eq!(clusters(&k4, &phi), vec![vec![0, 1], vec![2], vec![3]]);
        assert_eq!(clustering(&k4, &vec![Some(1), Some(2), Some(3), Some(4)]), 1);
        assert_eq!(clustering(&gen::edgeless(0), &[]), 0);
    }

    #[test]
    fn isolation_and_solitude() {
        let k4 = gen::k4();
        let constant = vec![Some(1); 4];
        assert!(!isolates(&k4, &constant, &[0].into()));
        assert!(isolates(&k4, &constant, &[0, 1, 2, 3].into()));
        assert!(!is_solitary(&k4, &[0, 1, 2].into(), 3));
        assert!(is_solitary(&k4, &[0, 1].into(), 3));
    }
}
