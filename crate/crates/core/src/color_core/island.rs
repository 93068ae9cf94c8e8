use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{smallest_avoiding, Coloring, Config, Lists, Precoloring};
use crate::error::SolveError;
use crate::islands::{find_island_in, Residual};
use crate::plane_graph::{PlaneGraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IslandColoring {
    pub coloring: Coloring,
    /// Final island size bound after escalation.
    pub sigma_used: usize,
    /// Peeled islands in peel order.
    pub islands: Vec<Vec<Vertex>>,
    pub kernel: Vec<Vertex>,
    /// Whether the kernel was colored by the isolating branch.
    pub kernel_isolating: bool,
    /// `sigma_used * max(|X|, 1)`.
    pub bound: u64,
}

pub(crate) fn check_lists(g: &PlaneGraph, lists: &Lists, psi: &Precoloring, c: usize) -> Result<(), SolveError> {
    for v in g.vertices() {
        if lists[v].len() < c {
            return Err(SolveError::ListTooSmall(v));
        }
    }
    for (&v, &col) in psi {
        if g.is_alive(v) && !lists[v].contains(&col) {
            return Err(SolveError::PrecolorNotInList(v, col));
        }
    }
    Ok(())
}

/// Extends `psi` by peeling c-islands disjoint from X while more than
/// `sigma * |X|` vertices remain, coloring the kernel, then coloring the
/// islands in reverse order with colors unused on their outside neighbors.
pub fn island_coloring(g: &PlaneGraph, lists: &Lists, psi: &Precoloring, c: usize, cfg: &Config) -> Result<IslandColoring, SolveError> {
    check_lists(g, lists, psi, c)?;
    let n = g.capacity();
    let x: BTreeSet<Vertex> = psi.keys().copied().filter(|&v| g.is_alive(v)).collect();
    let x_mask: Vec<bool> = (0..n).map(|v| x.contains(&v)).collect();
    let mut res = Residual { adj: g.rotations(), alive: g.alive_mask().to_vec() };
    let mut remaining = g.vertex_count();
    let mut sigma = cfg.sigma.max(1);
    let mut islands: Vec<Vec<Vertex>> = Vec::new();
    loop {
        let done = if x.is_empty() { remaining == 0 } else { remaining <= sigma * x.len() };
        if done {
            break;
        }
        match find_island_in(&res, c, sigma, &x_mask, cfg.island_budget) {
            Ok(Some(island)) => {
                for &v in &island.vertices {
                    res.alive[v] = false;
                }
                remaining -= island.vertices.len();
                islands.push(island.vertices);
            }
            _ if sigma < cfg.sigma_cap => sigma = (sigma * 2).min(cfg.sigma_cap),
            _ => return Err(SolveError::IslandNotFound { sigma, remaining }),
        }
    }

    let mut phi: Coloring = vec![None; n];
    for &v in &x {
        phi[v] = Some(psi[&v]);
    }
    let kernel: Vec<Vertex> = (0..n).filter(|&v| res.alive[v]).collect();
    let others: Vec<Vertex> = kernel.iter().copied().filter(|v| !x.contains(v)).collect();
    let solitary = others.iter().all(|&v| g.neighbors(v).iter().filter(|w| x.contains(w)).count() < c);
    let kernel_isolating = solitary && !others.is_empty();
    for &v in &others {
        let used: BTreeSet<_> = if kernel_isolating {
            g.neighbors(v).iter().filter(|w| x.contains(w)).filter_map(|&w| phi[w]).collect()
        } else {
            BTreeSet::new()
        };
        phi[v] = smallest_avoiding(&lists[v], &used);
    }
    for island in islands.iter().rev() {
        let inside: BTreeSet<Vertex> = island.iter().copied().collect();
        for &v in island {
            let used: BTreeSet<_> = g.neighbors(v).iter().filter(|w| !inside.contains(w)).filter_map(|&w| phi[w]).collect();
            phi[v] = smallest_avoiding(&lists[v], &used);
            debug_assert!(phi[v].is_some());
        }
    }
    Ok(IslandColoring {
        coloring: phi,
        sigma_used: sigma,
        islands,
        kernel,
        kernel_isolating,
        bound: (sigma * x.len().max(1)) as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli_io::gen;
    use crate::color_core::{clustering, is_solitary, isolates, respects, uniform_lists};

    #[test]
    fn single_vertex() {
        let g = gen::edgeless(1);
        let out = island_coloring(&g, &uniform_lists(1), &Precoloring::new(), 3, &Config::default()).unwrap();
        assert_eq!(out.coloring, vec![Some(1)]);
    }

    #[test]
    fn four_cycle_peels_singletons() {
        let g = gen::cycle(4);
        let cfg = Config { sigma: 1, ..Config::default() };
        let out = island_coloring(&g, &uniform_lists(4), &Precoloring::new(), 3, &cfg).unwrap();
        assert_eq!(out.islands, vec![vec![0], vec![1], vec![2], vec![3]]);
        // replay: 3 -> 1, 2 -> 2, 1 -> 1, 0 -> 2
        assert_eq!(out.coloring, vec![Some(2), Some(1), Some(2), Some(1)]);
        assert!(clustering(&g, &out.coloring) <= 2);
    }

    #[test]
    fn k4_kernel_extends_psi() {
        let g = gen::k4();
        let psi: Precoloring = [(0, 1), (1, 2), (2, 3)].into();
        let mut lists = uniform_lists(4);
        lists[3] = vec![1, 2, 4];
        let out = island_coloring(&g, &lists, &psi, 3, &Config::default()).unwrap();
        assert!(respects(&g, &lists, &psi, &out.coloring));
        assert!(!out.kernel_isolating);
        assert_eq!(out.islands.len(), 0);
    }

    #[test]
    fn solitary_x_is_isolated() {
        let g = gen::octahedron();
        let psi: Precoloring = [(0, 1), (5, 1)].into();
        let x = psi.keys().copied().collect();
        assert!(is_solitary(&g, &x, 3));
        let out = island_coloring(&g, &uniform_lists(6), &psi, 3, &Config::default()).unwrap();
        assert!(isolates(&g, &out.coloring, &x));
    }

    #[test]
    fn short_list_is_rejected() {
        let g = gen::edgeless(1);
        let err = island_coloring(&g, &vec![vec![1, 2]], &Precoloring::new(), 3, &Config::default());
        assert_eq!(err.unwrap_err(), SolveError::ListTooSmall(0));
    }
}
