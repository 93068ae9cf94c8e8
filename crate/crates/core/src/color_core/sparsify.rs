use std::collections::{BTreeMap, BTreeSet};

use super::{Coloring, Color, Lists};
use crate::error::SolveError;
use crate::plane_graph::{PlaneGraph, Vertex};
use crate::structure_detect::{big_mask, separated, Sparsifier};

/// Component label of each vertex of `set` in the monochromatic subgraph of
/// `g[set]`.
fn mono_components(g: &PlaneGraph, set: &BTreeSet<Vertex>, phi: &[Option<Color>]) -> BTreeMap<Vertex, Vertex> {
    let mut label = BTreeMap::new();
    for &s in set {
        if label.contains_key(&s) {
            continue;
        }
        label.insert(s, s);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if set.contains(&w) && !label.contains_key(&w) && phi[w].is_some() && phi[w] == phi[u] {
                    label.insert(w, s);
                    stack.push(w);
                }
            }
        }
    }
    label
}

/// Conditions for extending a coloring to one sparsifier `s`:
/// (i) vertices of H joined by a monochromatic path in T are already joined
/// in H; (ii) no vertex of `s` shares its color with a big neighbor.
pub fn satisfies_extension_conditions(g: &PlaneGraph, big: &[bool], s: &[Vertex], phi: &[Option<Color>]) -> bool {
    let sset: BTreeSet<Vertex> = s.iter().copied().collect();
    for &v in s {
        if g.neighbors(v).iter().any(|&w| big[w] && phi[w] == phi[v]) {
            return false;
        }
    }
    let h: BTreeSet<Vertex> = s.iter().flat_map(|&v| g.neighbors(v).iter().copied()).filter(|w| !sset.contains(w)).collect();
    let t: BTreeSet<Vertex> = h.union(&sset).copied().collect();
    let in_h = mono_components(g, &h, phi);
    let in_t = mono_components(g, &t, phi);
    let mut seen: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    for &u in &h {
        let tc = in_t[&u];
        match seen.get(&tc) {
            Some(&hc) if hc != in_h[&u] => return false,
            Some(_) => {}
            None => {
                seen.insert(tc, in_h[&u]);
            }
        }
    }
    true
}

/// Odometer step over list indices, last position fastest.
fn advance(idx: &mut [usize], size: impl Fn(usize) -> usize) -> bool {
    for k in (0..idx.len()).rev() {
        idx[k] += 1;
        if idx[k] < size(k) {
            return true;
        }
        idx[k] = 0;
    }
    false
}

/// Extends `phi0` (a coloring of `g` minus the system) to every sparsifier
/// of `system`, taking for each the lexicographically first list assignment
/// that satisfies the extension conditions.
pub fn extend_over_sparsifiers(
    g: &PlaneGraph,
    x: &BTreeSet<Vertex>,
    d: usize,
    lists: &Lists,
    system: &[Sparsifier],
    phi0: &[Option<Color>],
) -> Result<Coloring, SolveError> {
    for (i, a) in system.iter().enumerate() {
        for b in &system[i + 1..] {
            if !separated(g, &a.vertices, &b.vertices) {
                return Err(SolveError::NotSeparated(a.vertices.clone(), b.vertices.clone()));
            }
        }
    }
    let big = big_mask(g, x, d);
    let mut phi = phi0.to_vec();
    for s in system {
        let vs = &s.vertices;
        let mut idx = vec![0usize; vs.len()];
        let found = loop {
            for (k, &v) in vs.iter().enumerate() {
                phi[v] = Some(lists[v][idx[k]]);
            }
            if satisfies_extension_conditions(g, &big, vs, &phi) {
                break true;
            }
            if !advance(&mut idx, |k| lists[vs[k]].len()) {
                break false;
            }
        };
        if !found {
            return Err(SolveError::NoValidExtension(vs.clone()));
        }
    }
    Ok(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli_io::gen;
    use crate::color_core::{clustering, uniform_lists};
    use crate::structure_detect::maximal_separated_system;

    #[test]
    fn octahedron_antipodes_get_the_free_color() {
        let g = gen::octahedron();
        let x = BTreeSet::new();
        let sys = maximal_separated_system(&g, &x, 6);
        let mut phi0 = vec![None; 6];
        for (v, c) in [(1, 1), (2, 2), (3, 1), (4, 2)] {
            phi0[v] = Some(c);
        }
        let phi = extend_over_sparsifiers(&g, &x, 6, &uniform_lists(6), &sys, &phi0).unwrap();
        assert_eq!(phi[0], Some(3));
        assert_eq!(phi[5], Some(3));
        assert_eq!(clustering(&g, &phi), 1);
    }

    #[test]
    fn connected_neighbors_allow_any_color() {
        let g = gen::octahedron();
        let x = BTreeSet::new();
        let sys = maximal_separated_system(&g, &x, 6);
        let mut phi0 = vec![None; 6];
        for v in 1..5 {
            phi0[v] = Some(1);
        }
        let phi = extend_over_sparsifiers(&g, &x, 6, &uniform_lists(6), &sys[..1], &phi0).unwrap();
        assert_eq!(phi[0], Some(1));
    }

    #[test]
    fn empty_system_is_identity() {
        let g = gen::k4();
        let phi0 = vec![Some(1), Some(2), Some(3), Some(1)];
        let phi = extend_over_sparsifiers(&g, &BTreeSet::new(), 6, &uniform_lists(4), &[], &phi0).unwrap();
        assert_eq!(phi, phi0);
    }

    #[test]
    fn adjacent_sparsifiers_are_rejected() {
        let g = gen::octahedron();
        let all = crate::structure_detect::find_sparsifiers(&g, &BTreeSet::new(), 6);
        let err = extend_over_sparsifiers(&g, &BTreeSet::new(), 6, &uniform_lists(6), &all[..2], &vec![None; 6]);
        assert!(matches!(err, Err(SolveError::NotSeparated(..))));
    }
}
