//! Independent re-check of a coloring against the definitions.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::color_core::{Color, Lists, Precoloring};
use crate::plane_graph::{PlaneGraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Failure {
    Uncolored { vertex: Vertex },
    ListViolation { vertex: Vertex, color: Color },
    PrecolorMismatch { vertex: Vertex, expected: Color, found: Option<Color> },
    ClusteringMismatch { claimed: usize, actual: usize },
    BoundExceeded { bound: u64, actual: usize },
    IsolationViolated { inside: Vertex, outside: Vertex },
}

/// What the producer of a coloring asserts about it.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claims {
    pub clustering: Option<usize>,
    pub bound: Option<u64>,
    /// A vertex set claimed to be isolated.
    pub isolates: Option<Vec<Vertex>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub passed: bool,
    /// Recomputed clustering over the colored vertices.
    pub clustering: usize,
    pub failures: Vec<Failure>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Largest monochromatic component, via union-find over monochromatic edges.
fn recompute_clustering(g: &PlaneGraph, phi: &[Option<Color>]) -> usize {
    let n = g.capacity();
    let mut parent: Vec<usize> = (0..n).collect();
    for (u, v) in g.edges() {
        if phi[u].is_some() && phi[u] == phi[v] {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            parent[a] = b;
        }
    }
    let mut size = vec![0usize; n];
    for v in g.vertices().filter(|&v| phi[v].is_some()) {
        let r = find(&mut parent, v);
        size[r] += 1;
    }
    size.into_iter().max().unwrap_or(0)
}

pub fn verify_solution(g: &PlaneGraph, lists: &Lists, psi: &Precoloring, phi: &[Option<Color>], claims: &Claims) -> Verdict {
    let mut failures = Vec::new();
    for v in g.vertices() {
        match phi.get(v).copied().flatten() {
            None => failures.push(Failure::Uncolored { vertex: v }),
            Some(c) if !lists.get(v).is_some_and(|l| l.contains(&c)) => failures.push(Failure::ListViolation { vertex: v, color: c }),
            _ => {}
        }
    }
    for (&v, &c) in psi {
        let found = phi.get(v).copied().flatten();
        if g.is_alive(v) && found != Some(c) {
            failures.push(Failure::PrecolorMismatch { vertex: v, expected: c, found });
        }
    }
    let padded: Vec<Option<Color>> = (0..g.capacity()).map(|v| phi.get(v).copied().flatten()).collect();
    let actual = recompute_clustering(g, &padded);
    if let Some(claimed) = claims.clustering {
        if claimed != actual {
            failures.push(Failure::ClusteringMismatch { claimed, actual });
        }
    }
    if let Some(bound) = claims.bound {
        if actual as u64 > bound {
            failures.push(Failure::BoundExceeded { bound, actual });
        }
    }
    if let Some(y) = &claims.isolates {
        let y: BTreeSet<Vertex> = y.iter().copied().collect();
        for (u, v) in g.edges() {
            if y.contains(&u) != y.contains(&v) && padded[u].is_some() && padded[u] == padded[v] {
                let (inside, outside) = if y.contains(&u) { (u, v) } else { (v, u) };
                failures.push(Failure::IsolationViolated { inside, outside });
            }
        }
    }
    Verdict { passed: failures.is_empty(), clustering: actual, failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli_io::gen;
    use crate::color_core::uniform_lists;

    #[test]
    fn detects_each_failure() {
        let g = gen::path(3);
        let lists = uniform_lists(3);
        let ok = verify_solution(&g, &lists, &Precoloring::new(), &[Some(1), Some(1), Some(2)], &Claims { clustering: Some(2), ..Claims::default() });
        assert!(ok.passed);
        let off = verify_solution(&g, &lists, &Precoloring::new(), &[Some(1), Some(4), Some(2)], &Claims::default());
        assert_eq!(off.failures, vec![Failure::ListViolation { vertex: 1, color: 4 }]);
        let low = verify_solution(&g, &lists, &Precoloring::new(), &[Some(1), Some(1), Some(2)], &Claims { clustering: Some(1), ..Claims::default() });
        assert_eq!(low.failures, vec![Failure::ClusteringMismatch { claimed: 1, actual: 2 }]);
        let psi: Precoloring = [(2, 3)].into();
        let pre = verify_solution(&g, &lists, &psi, &[Some(1), Some(2), None], &Claims { isolates: Some(vec![0]), ..Claims::default() });
        assert_eq!(pre.failures, vec![Failure::Uncolored { vertex: 2 }, Failure::PrecolorMismatch { vertex: 2, expected: 3, found: None }]);
        let iso = verify_solution(&g, &lists, &Precoloring::new(), &[Some(1), Some(1), Some(2)], &Claims { isolates: Some(vec![0]), bound: Some(1), ..Claims::default() });
        assert_eq!(iso.failures, vec![Failure::BoundExceeded { bound: 1, actual: 2 }, Failure::IsolationViolated { inside: 0, outside: 1 }]);
    }
}
