use serde::{Deserialize, Serialize};

use super::{island_coloring, x_set, Coloring, Config, Lists, Precoloring};
use crate::error::SolveError;
use crate::plane_graph::PlaneGraph;
use crate::structure_detect::{maximal_separated_system, system_vertices};

use super::extend_over_sparsifiers;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NocutColoring {
    pub coloring: Coloring,
    pub sigma_used: usize,
    pub system_len: usize,
    /// `(4D+1) * sigma_used * max(|X|, 1)`.
    pub bound: u64,
}

/// Colors a graph whose X-external triangles are all facial: removes a
/// maximal separated system of sparsifiers, island-colors the rest and
/// extends back over the system.
pub fn color_no_nonfacial(g: &PlaneGraph, lists: &Lists, psi: &Precoloring, t: usize, cfg: &Config) -> Result<NocutColoring, SolveError> {
    let x = x_set(psi);
    for k in g.triangles() {
        if k.0.iter().any(|v| !x.contains(v)) && !g.is_facial(&k) {
            return Err(SolveError::HypothesesViolated(format!("X-external triangle {:?} is not facial", k.0)));
        }
    }
    let d = cfg.big_degree(t);
    let system = maximal_separated_system(g, &x, d);
    let residual = g.delete_vertices(&system_vertices(&system));
    let base = island_coloring(&residual, lists, psi, 3, cfg)?;
    let coloring = extend_over_sparsifiers(g, &x, d, lists, &system, &base.coloring)?;
    Ok(NocutColoring {
        coloring,
        sigma_used: base.sigma_used,
        system_len: system.len(),
        bound: (4 * d as u64 + 1) * base.bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli_io::gen;
    use crate::color_core::{clustering, respects, uniform_lists};

    #[test]
    fn octahedron_and_icosahedron() {
        for (g, t) in [(gen::octahedron(), 5), (gen::icosahedron(), 3)] {
            let lists = uniform_lists(g.capacity());
            let out = color_no_nonfacial(&g, &lists, &Precoloring::new(), t, &Config::default()).unwrap();
            assert!(respects(&g, &lists, &Precoloring::new(), &out.coloring));
            assert!(clustering(&g, &out.coloring) as u64 <= out.bound);
        }
    }

    #[test]
    fn k4_with_outer_precolored() {
        let g = gen::k4();
        let psi: Precoloring = [(0, 1), (1, 2), (2, 3)].into();
        let lists = uniform_lists(4);
        let out = color_no_nonfacial(&g, &lists, &psi, 3, &Config::default()).unwrap();
        assert!(respects(&g, &lists, &psi, &out.coloring));
    }

    #[test]
    fn separating_triangle_is_rejected() {
        let (g, _) = gen::k4().with_outer_triangle();
        let err = color_no_nonfacial(&g, &uniform_lists(7), &Precoloring::new(), 3, &Config::default());
        assert!(matches!(err, Err(SolveError::HypothesesViolated(_))));
    }
}
