//! Precoloring extension inside a triangle and the top-level planar solver.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cli_io::verify::{verify_solution, Claims, Verdict};
use crate::color_core::{check_lists, clustering, isolates, x_set, Color, Coloring, Config, Lists, Precoloring};
use crate::error::SolveError;
use crate::plane_graph::{PlaneGraph, Triangle, Vertex};
use crate::stacks::color_pyramidal;
use crate::structure_detect::{find_pword, min_free_t};

/// `0` for an empty set, `2|Y| + 1` if `Y` is cut off from the outer face by
/// some triangle other than `c`, else `2|Y|`.
pub fn q_value(g: &PlaneGraph, y: &BTreeSet<Vertex>, c: &Triangle) -> u64 {
    if y.is_empty() {
        return 0;
    }
    let cut_off = g.triangles().into_iter().filter(|k| k != c && !g.bounds_outer(k)).any(|k| {
        g.interior_vertices(&k).map(|inside| y.iter().all(|v| inside.binary_search(v).is_ok())).unwrap_or(false)
    });
    2 * y.len() as u64 + u64::from(cut_off)
}

/// Which branch a recursive call took.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// Split at a minimal triangle with a precolored vertex inside.
    Precolored,
    /// Split at a precolor-free triangle whose vertices are 3-solitary inside.
    Solitary,
    /// Delegated to the pyramidal solver.
    Pyramidal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub depth: usize,
    pub branch: Branch,
    pub root: Triangle,
    /// The splitting triangle for the first two branches.
    pub split: Option<Triangle>,
    pub vertices: usize,
    pub q: u64,
    pub bound: u64,
}

/// Per-stage factors of one pyramidal call.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageBound {
    pub depth: usize,
    pub x_len: usize,
    /// `sigma_used * max(|X|, 1)`.
    pub islands: u64,
    /// `4D + 1`.
    pub sparsifiers: u64,
    /// `12 + 2|X|`, or 1 without disks.
    pub pointer: u64,
    /// `t`, or 1 without disks.
    pub stacks: u64,
    pub total: u64,
    /// Measured thickness of the pointer system.
    pub thickness: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStats {
    pub calls: usize,
    pub precolored_splits: usize,
    pub solitary_splits: usize,
    pub pyramidal_calls: usize,
    pub max_depth: usize,
    pub disks: usize,
    pub sparsifiers: usize,
    pub max_thickness: usize,
    pub sigma_used: usize,
    /// Solitary splits whose inner coloring did not isolate the triangle.
    pub isolation_failures: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleColoring {
    pub coloring: Coloring,
    pub bound: u64,
    pub stats: SolveStats,
    pub trace: Vec<TraceEntry>,
    pub stages: Vec<StageBound>,
}

struct Ctx<'a> {
    lists: &'a Lists,
    t: usize,
    cfg: &'a Config,
    stats: SolveStats,
    trace: Vec<TraceEntry>,
    stages: Vec<StageBound>,
}

impl Ctx<'_> {
    fn run(&mut self, g: &PlaneGraph, c: &Triangle, psi: &Precoloring, depth: usize) -> Result<(Coloring, u64), SolveError> {
        if !g.bounds_outer(c) {
            return Err(SolveError::OuterNotTriangle(*c));
        }
        if let Some(&u) = c.0.iter().find(|u| !psi.contains_key(u)) {
            return Err(SolveError::PrecoloringIncomplete(u));
        }
        self.stats.calls += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);
        let x: BTreeSet<Vertex> = x_set(psi).into_iter().filter(|&v| g.is_alive(v)).collect();
        let beyond: BTreeSet<Vertex> = x.iter().copied().filter(|&v| !c.contains(v)).collect();
        let q = q_value(g, &beyond, c);

        let mut external: Vec<(Triangle, Vec<Vertex>)> = Vec::new();
        for k in g.triangles() {
            if k != *c && k.0.iter().any(|v| !x.contains(v)) {
                let inside = g.interior_vertices(&k)?;
                external.push((k, inside));
            }
        }
        let holding = external
            .iter()
            .filter(|(_, inside)| inside.iter().any(|v| x.contains(v)))
            .min_by_key(|(k, inside)| (inside.len(), *k));
        if let Some((k, inside)) = holding {
            let (phi, b1, b2) = self.split(g, c, k, inside, psi, &x, depth)?;
            let bound = b1 + b2;
            self.stats.precolored_splits += 1;
            self.push(depth, Branch::Precolored, c, Some(*k), g, q, bound);
            return Ok((phi, bound));
        }
        let solitary = external.iter().find(|(k, inside)| {
            !inside.is_empty() && !g.is_facial(k) && !inside.iter().any(|&w| k.0.iter().all(|&u| g.has_edge(u, w)))
        });
        if let Some((k, inside)) = solitary {
            let (phi, b1, b2) = self.split(g, c, k, inside, psi, &x, depth)?;
            let inner = g.interior_subgraph(k)?;
            let bound = if isolates(&inner, &phi, &k.0.into_iter().collect()) {
                b1.max(b2)
            } else {
                self.stats.isolation_failures += 1;
                b1 + b2
            };
            self.stats.solitary_splits += 1;
            self.push(depth, Branch::Solitary, c, Some(*k), g, q, bound);
            return Ok((phi, bound));
        }

        let out = color_pyramidal(g, self.lists, psi, self.t, self.cfg)?;
        self.stats.pyramidal_calls += 1;
        self.stats.disks += out.disks.len();
        self.stats.sparsifiers += out.nocut.system_len;
        self.stats.max_thickness = self.stats.max_thickness.max(out.thickness);
        self.stats.sigma_used = self.stats.sigma_used.max(out.nocut.sigma_used);
        let with_disks = !out.disks.is_empty();
        let d = self.cfg.big_degree(self.t) as u64;
        self.stages.push(StageBound {
            depth,
            x_len: x.len(),
            islands: (out.nocut.sigma_used * x.len().max(1)) as u64,
            sparsifiers: 4 * d + 1,
            pointer: if with_disks { 12 + 2 * x.len() as u64 } else { 1 },
            stacks: if with_disks { self.t as u64 } else { 1 },
            total: out.bound,
            thickness: out.thickness,
        });
        self.push(depth, Branch::Pyramidal, c, None, g, q, out.bound);
        Ok((out.coloring, out.bound))
    }

    /// Colors `g` minus the disk of `k`, then the disk with `k` pinned.
    #[allow(clippy::too_many_arguments)]
    fn split(
        &mut self,
        g: &PlaneGraph,
        c: &Triangle,
        k: &Triangle,
        inside: &[Vertex],
        psi: &Precoloring,
        x: &BTreeSet<Vertex>,
        depth: usize,
    ) -> Result<(Coloring, u64, u64), SolveError> {
        let outer = g.delete_vertices(inside);
        let inner = g.interior_subgraph(k)?;
        debug_assert!(outer.vertex_count() < g.vertex_count() && inner.vertex_count() < g.vertex_count());
        let psi_out: Precoloring = psi.iter().filter(|(v, _)| outer.is_alive(**v)).map(|(&v, &col)| (v, col)).collect();
        let (mut phi, b1) = self.run(&outer, c, &psi_out, depth + 1)?;
        let mut psi_in: Precoloring = inside.iter().filter(|v| x.contains(v)).map(|&v| (v, psi[&v])).collect();
        for u in k.0 {
            psi_in.insert(u, phi[u].expect("outer part is fully colored"));
        }
        let (phi_in, b2) = self.run(&inner, k, &psi_in, depth + 1)?;
        for &v in inside {
            phi[v] = phi_in[v];
        }
        Ok((phi, b1, b2))
    }

    #[allow(clippy::too_many_arguments)]
    fn push(&mut self, depth: usize, branch: Branch, c: &Triangle, split: Option<Triangle>, g: &PlaneGraph, q: u64, bound: u64) {
        self.trace.push(TraceEntry { depth, branch, root: *c, split, vertices: g.vertex_count(), q, bound });
    }
}

/// Extends `psi` (which must color `V(c)`) to `g`, whose outer face is
/// bounded by `c`.
pub fn color_in_triangle(
    g: &PlaneGraph,
    c: &Triangle,
    lists: &Lists,
    psi: &Precoloring,
    t: usize,
    cfg: &Config,
) -> Result<TriangleColoring, SolveError> {
    let mut ctx = Ctx { lists, t, cfg, stats: SolveStats::default(), trace: Vec::new(), stages: Vec::new() };
    let (coloring, bound) = ctx.run(g, c, psi, 0)?;
    Ok(TriangleColoring { coloring, bound, stats: ctx.stats, trace: ctx.trace, stages: ctx.stages })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    /// The P''_t-freeness parameter of the input.
    pub t: usize,
    /// `max(t, 2)`, used by the pipeline.
    pub t_eff: usize,
    pub big_degree: usize,
    pub coloring: Coloring,
    pub clustering: usize,
    pub sigma_used: usize,
    pub bound: u64,
    pub stats: SolveStats,
    pub trace: Vec<TraceEntry>,
    pub stages: Vec<StageBound>,
    pub verdict: Verdict,
}

/// Colors a sphere-embedded graph: wraps it in a fresh outer triangle with
/// fresh colors, extends inside that triangle and strips it again. With
/// `t = None` the smallest `t` for which `g` is P''_t-free is used.
pub fn solve_planar(g: &PlaneGraph, lists: &Lists, psi: &Precoloring, t: Option<usize>, cfg: &Config) -> Result<SolveReport, SolveError> {
    if lists.len() < g.capacity() {
        return Err(SolveError::HypothesesViolated(format!("{} lists for {} vertex ids", lists.len(), g.capacity())));
    }
    check_lists(g, lists, psi, 3)?;
    let t = match t {
        Some(t) => t,
        None => min_free_t(g)?,
    };
    if let Some(emb) = find_pword(g, t)? {
        return Err(SolveError::PwordPresent(emb));
    }
    let t_eff = t.max(2);
    let n = g.capacity();
    let (wrapped, cstar) = g.with_outer_triangle();
    let top: Color = lists.iter().flatten().chain(psi.values()).copied().max().unwrap_or(0);
    let fresh = vec![top + 1, top + 2, top + 3];
    let mut wlists: Lists = lists[..n].to_vec();
    wlists.extend(std::iter::repeat_n(fresh, 3));
    let mut wpsi = psi.clone();
    for (i, u) in cstar.0.into_iter().enumerate() {
        wpsi.insert(u, top + 1 + i as Color);
    }
    let out = color_in_triangle(&wrapped, &cstar, &wlists, &wpsi, t_eff, cfg)?;
    let coloring: Coloring = out.coloring[..n].to_vec();
    let achieved = clustering(g, &coloring);
    let claims = Claims { clustering: Some(achieved), bound: Some(out.bound), isolates: None };
    let verdict = verify_solution(g, lists, psi, &coloring, &claims);
    Ok(SolveReport {
        t,
        t_eff,
        big_degree: cfg.big_degree(t_eff),
        coloring,
        clustering: achieved,
        sigma_used: out.stats.sigma_used,
        bound: out.bound,
        stats: out.stats,
        trace: out.trace,
        stages: out.stages,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli_io::gen;
    use crate::color_core::{respects, uniform_lists};

    #[test]
    fn q_values() {
        let c = Triangle::new(0, 1, 2);
        let k4 = gen::k4();
        assert_eq!(q_value(&k4, &BTreeSet::new(), &c), 0);
        assert_eq!(q_value(&k4, &[3].into(), &c), 2);
        let g = gen::stacked_from(&[[0, 1, 2], [0, 1, 3]]);
        assert_eq!(q_value(&g, &[4].into(), &c), 3);
    }

    #[test]
    fn triangle_alone() {
        let g = gen::triangle();
        let c = Triangle::new(0, 1, 2);
        let psi: Precoloring = [(0, 1), (1, 2), (2, 1)].into();
        let out = color_in_triangle(&g, &c, &uniform_lists(3), &psi, 3, &Config::default()).unwrap();
        assert_eq!(out.coloring, vec![Some(1), Some(2), Some(1)]);
    }

    #[test]
    fn nested_precolored_vertex_splits_first() {
        let g = gen::stacked_from(&[[0, 1, 2], [0, 1, 3]]);
        let c = Triangle::new(0, 1, 2);
        let psi: Precoloring = [(0, 1), (1, 2), (2, 3), (4, 2)].into();
        let lists = uniform_lists(5);
        let out = color_in_triangle(&g, &c, &lists, &psi, 3, &Config::default()).unwrap();
        assert!(respects(&g, &lists, &psi, &out.coloring));
        let top = out.trace.last().unwrap();
        assert_eq!((top.depth, top.branch, top.split, top.q), (0, Branch::Precolored, Some(Triangle::new(0, 1, 3)), 3));
        assert!(out.trace.iter().filter(|e| e.depth == 1).all(|e| e.q < 3));
    }

    #[test]
    fn missing_precolor_is_reported() {
        let g = gen::k4();
        let err = color_in_triangle(&g, &Triangle::new(0, 1, 2), &uniform_lists(4), &[(0, 1)].into(), 3, &Config::default());
        assert!(matches!(err, Err(SolveError::PrecoloringIncomplete(1))));
    }

    #[test]
    fn solve_small_examples() {
        let cases: Vec<(PlaneGraph, Precoloring, usize)> = vec![
            (gen::octahedron(), Precoloring::new(), 5),
            (gen::k4(), [(0, 2)].into(), 3),
            (gen::icosahedron(), [(0, 1), (1, 2), (2, 3)].into(), 3),
        ];
        for (g, psi, t) in cases {
            let lists = uniform_lists(g.capacity());
            let rep = solve_planar(&g, &lists, &psi, Some(t), &Config::default()).unwrap();
            assert!(rep.verdict.passed, "{:?}", rep.verdict);
            assert!(respects(&g, &lists, &psi, &rep.coloring));
        }
    }

    #[test]
    fn pword_input_is_rejected() {
        let g = gen::pword(3);
        let err = solve_planar(&g, &uniform_lists(5), &Precoloring::new(), Some(3), &Config::default());
        assert!(matches!(err, Err(SolveError::PwordPresent(_))));
    }
}
