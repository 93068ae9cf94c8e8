//! Structural classifiers: (D,X)-small/big vertices, triangle flags,
//! P''_t search and sparsifier detection.

use std::collections::BTreeSet;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::plane_graph::{GraphError, PlaneGraph, Triangle, Vertex};

/// Default node budget for the P''_t search.
pub const PWORD_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("P''_t search exceeded its budget of {0} nodes")]
    SearchBudgetExceeded(u64),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VertexClass {
    Small,
    Big { in_x: bool, high_degree: bool, bad_face: bool },
}

impl VertexClass {
    pub fn is_big(&self) -> bool {
        matches!(self, VertexClass::Big { .. })
    }
}

fn has_bad_face(g: &PlaneGraph, v: Vertex) -> bool {
    if g.degree(v) == 0 {
        return true;
    }
    g.faces_at(v).into_iter().any(|f| g.face(f).len() != 3 || !g.is_two_cell(f))
}

pub fn classify_vertex(g: &PlaneGraph, x: &BTreeSet<Vertex>, d: usize, v: Vertex) -> VertexClass {
    let in_x = x.contains(&v);
    let high_degree = g.degree(v) > d;
    let bad_face = has_bad_face(g, v);
    if in_x || high_degree || bad_face {
        VertexClass::Big { in_x, high_degree, bad_face }
    } else {
        VertexClass::Small
    }
}

/// `mask[v]` is true iff `v` is alive and (D,X)-big.
pub fn big_mask(g: &PlaneGraph, x: &BTreeSet<Vertex>, d: usize) -> Vec<bool> {
    let mut out = vec![false; g.capacity()];
    for v in g.vertices() {
        out[v] = classify_vertex(g, x, d, v).is_big();
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TriangleFlags {
    pub facial: bool,
    pub x_external: bool,
    pub x_empty: bool,
    pub x_pyramidal: bool,
    pub bounds_outer: bool,
}

/// Flags of `k`. The emptiness flags refer to the disk side of `k` and are
/// only set for X-external triangles.
pub fn classify_triangle(g: &PlaneGraph, x: &BTreeSet<Vertex>, k: &Triangle) -> Result<TriangleFlags, GraphError> {
    if !g.is_triangle(k) {
        return Err(GraphError::NotATriangle(k.0));
    }
    let facial = g.is_facial(k);
    let bounds_outer = g.bounds_outer(k);
    let x_external = k.0.iter().any(|v| !x.contains(v));
    let mut flags = TriangleFlags { facial, x_external, bounds_outer, ..Default::default() };
    if x_external {
        let inside = g.interior_vertices(k)?;
        flags.x_empty = inside.iter().all(|v| !x.contains(v));
        flags.x_pyramidal = flags.x_empty && inside.iter().any(|&w| k.0.iter().all(|&c| g.has_edge(w, c)));
    }
    Ok(flags)
}

/// A copy of P''_t: apexes `u`, `v` joined to every vertex of `path`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PwordEmbedding {
    pub u: Vertex,
    pub v: Vertex,
    pub path: Vec<Vertex>,
}

impl PwordEmbedding {
    pub fn is_valid_in(&self, g: &PlaneGraph) -> bool {
        let mut seen = BTreeSet::new();
        self.u != self.v
            && self.path.iter().all(|&p| p != self.u && p != self.v && seen.insert(p))
            && self.path.iter().all(|&p| g.has_edge(p, self.u) && g.has_edge(p, self.v))
            && self.path.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }
}

struct PathSearch<'a> {
    adj: &'a [Vec<usize>],
    target: usize,
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl PathSearch<'_> {
    fn reach_bound(&self, tail: usize, on_path: &[bool]) -> usize {
        let mut seen = on_path.to_vec();
        let mut stack = vec![tail];
        let mut count = 0;
        while let Some(a) = stack.pop() {
            for &b in &self.adj[a] {
                if !seen[b] {
                    seen[b] = true;
                    count += 1;
                    stack.push(b);
                }
            }
        }
        count
    }

    fn dfs(&mut self, path: &mut Vec<usize>, on_path: &mut Vec<bool>) -> Result<(), u64> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(self.budget);
        }
        if path.len() > self.best.len() {
            self.best = path.clone();
        }
        if self.best.len() >= self.target {
            return Ok(());
        }
        let tail = *path.last().unwrap();
        if path.len() + self.reach_bound(tail, on_path) <= self.best.len() {
            return Ok(());
        }
        for i in 0..self.adj[tail].len() {
            let b = self.adj[tail][i];
            if on_path[b] {
                continue;
            }
            on_path[b] = true;
            path.push(b);
            self.dfs(path, on_path)?;
            path.pop();
            on_path[b] = false;
            if self.best.len() >= self.target {
                return Ok(());
            }
        }
        Ok(())
    }
}

/// Longest path in the subgraph induced by the common neighbors of `u` and
/// `v`, stopping early once `target` vertices are reached. Also returns the
/// number of search nodes spent.
pub fn longest_common_path(
    g: &PlaneGraph,
    u: Vertex,
    v: Vertex,
    target: usize,
    budget: u64,
) -> Result<(Vec<Vertex>, u64), StructureError> {
    let mut common: Vec<Vertex> = g.neighbors(u).iter().copied().filter(|&w| g.has_edge(w, v)).collect();
    common.sort_unstable();
    let idx = |w: Vertex| common.binary_search(&w).ok();
    let adj: Vec<Vec<usize>> =
        common.iter().map(|&a| { let mut n: Vec<usize> = g.neighbors(a).iter().filter_map(|&b| idx(b)).collect(); n.sort_unstable(); n }).collect();
    let mut search = PathSearch { adj: &adj, target, best: Vec::new(), nodes: 0, budget };
    for s in 0..common.len() {
        if search.best.len() >= target.min(common.len()) {
            break;
        }
        let mut on_path = vec![false; common.len()];
        on_path[s] = true;
        search.dfs(&mut vec![s], &mut on_path).map_err(StructureError::SearchBudgetExceeded)?;
    }
    Ok((search.best.iter().map(|&i| common[i]).collect(), search.nodes))
}

/// Unordered pairs of distinct vertices with at least one common neighbor.
fn apex_pairs(g: &PlaneGraph) -> Vec<(Vertex, Vertex)> {
    let mut pairs = BTreeSet::new();
    for w in g.vertices() {
        let nb = g.neighbors(w);
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                pairs.insert((a.min(b), a.max(b)));
            }
        }
    }
    pairs.into_iter().collect()
}

pub fn find_pword(g: &PlaneGraph, t: usize) -> Result<Option<PwordEmbedding>, StructureError> {
    find_pword_with_budget(g, t, PWORD_BUDGET)
}

pub fn find_pword_with_budget(g: &PlaneGraph, t: usize, budget: u64) -> Result<Option<PwordEmbedding>, StructureError> {
    let t = t.max(1);
    let mut spent = 0;
    for (u, v) in apex_pairs(g) {
        let (path, nodes) = longest_common_path(g, u, v, t, budget - spent)?;
        spent += nodes;
        if path.len() >= t {
            let found = PwordEmbedding { u, v, path: path[..t].to_vec() };
            debug_assert!(found.is_valid_in(g));
            return Ok(Some(found));
        }
    }
    Ok(None)
}

/// Smallest `t >= 1` such that `g` is P''_t-free.
pub fn min_free_t(g: &PlaneGraph) -> Result<usize, StructureError> {
    let mut longest = 0;
    let mut spent = 0;
    for (u, v) in apex_pairs(g) {
        let (path, nodes) = longest_common_path(g, u, v, usize::MAX, PWORD_BUDGET - spent)?;
        spent += nodes;
        longest = longest.max(path.len());
    }
    Ok(longest + 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SparsifierKind {
    Four,
    Five,
    Ft1,
    Ft2,
    Six,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Witness {
    None,
    /// Common big neighbor of the two degree-five vertices.
    BigNeighbor(Vertex),
    /// The two facial triangles sharing an edge.
    Triangles(Triangle, Triangle),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sparsifier {
    pub kind: SparsifierKind,
    /// Sorted.
    pub vertices: Vec<Vertex>,
    pub witness: Witness,
}

struct Ctx<'a> {
    g: &'a PlaneGraph,
    big: Vec<bool>,
}

impl Ctx<'_> {
    fn small(&self, v: Vertex) -> bool {
        self.g.is_alive(v) && !self.big[v]
    }

    fn big_neighbors(&self, v: Vertex) -> Vec<Vertex> {
        let mut b: Vec<Vertex> = self.g.neighbors(v).iter().copied().filter(|&w| self.big[w]).collect();
        b.sort_unstable();
        b
    }

    /// Triangular 2-cell faces, as triangles, each listed once.
    fn facial_triangles(&self) -> BTreeSet<Triangle> {
        self.g
            .faces()
            .iter()
            .filter(|f| f.len() == 3 && self.g.is_two_cell(f.id))
            .filter_map(|f| {
                let w = f.walk();
                (w[0] != w[1] && w[1] != w[2] && w[0] != w[2]).then(|| Triangle::new(w[0], w[1], w[2]))
            })
            .collect()
    }

    fn ft1(&self, k: &Triangle) -> Option<Vertex> {
        let [a, b, c] = k.0;
        if ![a, b, c].iter().all(|&v| self.small(v) && self.g.degree(v) == 5) {
            return None;
        }
        let bn: Vec<Vec<Vertex>> = [a, b, c].iter().map(|&v| self.big_neighbors(v)).collect();
        if bn.iter().any(|l| l.len() != 1) {
            return None;
        }
        let mut shared: Vec<Vertex> = Vec::new();
        for i in 0..3 {
            for j in i + 1..3 {
                if bn[i][0] == bn[j][0] {
                    shared.push(bn[i][0]);
                }
            }
        }
        shared.into_iter().min()
    }

    fn ft2(&self, k: &Triangle) -> Option<Vertex> {
        let vs = k.0;
        if !vs.iter().all(|&v| self.small(v)) {
            return None;
        }
        for i in 0..3 {
            let v3 = vs[i];
            let (v1, v2) = (vs[(i + 1) % 3], vs[(i + 2) % 3]);
            if self.g.degree(v3) != 6 || !self.big_neighbors(v3).is_empty() {
                continue;
            }
            if self.g.degree(v1) != 5 || self.g.degree(v2) != 5 {
                continue;
            }
            let (b1, b2) = (self.big_neighbors(v1), self.big_neighbors(v2));
            if b1.len() == 1 && b1 == b2 {
                return Some(b1[0]);
            }
        }
        None
    }

    fn six_member(&self, v: Vertex) -> bool {
        self.small(v) && self.g.degree(v) == 6 && self.big_neighbors(v).is_empty()
    }
}

/// All sparsifiers, sorted by kind and then by vertex set.
pub fn find_sparsifiers(g: &PlaneGraph, x: &BTreeSet<Vertex>, d: usize) -> Vec<Sparsifier> {
    let ctx = Ctx { g, big: big_mask(g, x, d) };
    let mut out = BTreeSet::new();
    let mut push = |kind, mut vertices: Vec<Vertex>, witness: Witness| {
        vertices.sort_unstable();
        out.insert((kind, vertices, WitnessKey(witness)));
    };
    for v in g.vertices() {
        if !ctx.small(v) {
            continue;
        }
        let nb = ctx.big_neighbors(v).len();
        match g.degree(v) {
            4 if nb <= 1 => push(SparsifierKind::Four, vec![v], Witness::None),
            5 if nb == 0 => push(SparsifierKind::Five, vec![v], Witness::None),
            _ => {}
        }
    }
    let tris = ctx.facial_triangles();
    for k in &tris {
        if let Some(b) = ctx.ft1(k) {
            push(SparsifierKind::Ft1, k.0.to_vec(), Witness::BigNeighbor(b));
        }
        if let Some(b) = ctx.ft2(k) {
            push(SparsifierKind::Ft2, k.0.to_vec(), Witness::BigNeighbor(b));
        }
    }
    for k1 in &tris {
        if !k1.0.iter().all(|&v| ctx.six_member(v)) {
            continue;
        }
        for (v2, v3) in k1.edges() {
            let v1 = k1.0.iter().copied().find(|&w| w != v2 && w != v3).unwrap();
            for &v4 in g.neighbors(v2) {
                if v4 == v1 || v4 == v3 || !g.has_edge(v4, v3) {
                    continue;
                }
                let k2 = Triangle::new(v2, v3, v4);
                if tris.contains(&k2) && ctx.six_member(v4) && !g.has_edge(v1, v4) {
                    let (a, b) = if k1 < &k2 { (*k1, k2) } else { (k2, *k1) };
                    push(SparsifierKind::Six, vec![v1, v2, v3, v4], Witness::Triangles(a, b));
                }
            }
        }
    }
    // one entry per (kind, vertex set), keeping the smallest witness
    let mut result: Vec<Sparsifier> = Vec::new();
    for (kind, vertices, WitnessKey(witness)) in out {
        if result.last().is_some_and(|s| s.kind == kind && s.vertices == vertices) {
            continue;
        }
        result.push(Sparsifier { kind, vertices, witness });
    }
    debug_assert!(result.iter().all(|s| is_sparsifier(g, x, d, s)));
    result
}

#[derive(PartialEq, Eq)]
struct WitnessKey(Witness);

impl WitnessKey {
    fn key(&self) -> (u8, [Vertex; 6]) {
        match &self.0 {
            Witness::None => (0, [0; 6]),
            Witness::BigNeighbor(b) => (1, [*b, 0, 0, 0, 0, 0]),
            Witness::Triangles(a, b) => (2, [a.0[0], a.0[1], a.0[2], b.0[0], b.0[1], b.0[2]]),
        }
    }
}

impl PartialOrd for WitnessKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WitnessKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

/// Re-checks the definition of the sparsifier's kind from scratch.
pub fn is_sparsifier(g: &PlaneGraph, x: &BTreeSet<Vertex>, d: usize, s: &Sparsifier) -> bool {
    let ctx = Ctx { g, big: big_mask(g, x, d) };
    if !s.vertices.iter().all(|&v| ctx.small(v)) {
        return false;
    }
    let facial = |k: &Triangle| g.is_triangle(k) && g.is_facial(k);
    match (s.kind, s.vertices.as_slice()) {
        (SparsifierKind::Four, &[v]) => g.degree(v) == 4 && ctx.big_neighbors(v).len() <= 1,
        (SparsifierKind::Five, &[v]) => g.degree(v) == 5 && ctx.big_neighbors(v).is_empty(),
        (SparsifierKind::Ft1, &[a, b, c]) => {
            let k = Triangle::new(a, b, c);
            facial(&k) && ctx.ft1(&k).is_some()
        }
        (SparsifierKind::Ft2, &[a, b, c]) => {
            let k = Triangle::new(a, b, c);
            facial(&k) && ctx.ft2(&k).is_some()
        }
        (SparsifierKind::Six, vs @ &[_, _, _, _]) => {
            if !vs.iter().all(|&v| ctx.six_member(v)) {
                return false;
            }
            // some labeling v1 v2 v3 v4 with v2 v3 the shared edge
            for i in 0..4 {
                for j in 0..4 {
                    if i == j {
                        continue;
                    }
                    let (v1, v4) = (vs[i], vs[j]);
                    let rest: Vec<Vertex> = vs.iter().copied().filter(|&w| w != v1 && w != v4).collect();
                    let (v2, v3) = (rest[0], rest[1]);
                    if !g.has_edge(v1, v4) && facial(&Triangle::new(v1, v2, v3)) && facial(&Triangle::new(v2, v3, v4)) {
                        return true;
                    }
                }
            }
            false
        }
        _ => false,
    }
}

pub fn separated(g: &PlaneGraph, a: &[Vertex], b: &[Vertex]) -> bool {
    a.iter().all(|u| !b.contains(u)) && a.iter().all(|&u| g.neighbors(u).iter().all(|w| !b.contains(w)))
}

/// Greedy maximal system of pairwise separated sparsifiers, scanning kinds
/// in the order FOUR, FIVE, FT1, FT2, SIX and vertex sets ascending.
pub fn maximal_separated_system(g: &PlaneGraph, x: &BTreeSet<Vertex>, d: usize) -> Vec<Sparsifier> {
    let mut chosen: Vec<Sparsifier> = Vec::new();
    let mut blocked = vec![false; g.capacity()];
    for s in find_sparsifiers(g, x, d) {
        if s.vertices.iter().any(|&v| blocked[v]) {
            continue;
        }
        for &v in &s.vertices {
            blocked[v] = true;
            for &w in g.neighbors(v) {
                blocked[w] = true;
            }
        }
        chosen.push(s);
    }
    chosen
}

pub fn system_vertices(system: &[Sparsifier]) -> Vec<Vertex> {
    let mut v: Vec<Vertex> = system.iter().flat_map(|s| s.vertices.iter().copied()).collect();
    v.sort_unstable();
    v
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HereditaryViolation {
    /// Vertex set of the subgraph in which the sparsifier was found.
    pub subgraph: Vec<Vertex>,
    pub sparsifier: Sparsifier,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HereditaryReport {
    pub samples_checked: usize,
    /// Sparsifiers of the original graph separated from the whole system.
    pub maximality_violations: Vec<Sparsifier>,
    pub violations: Vec<HereditaryViolation>,
}

impl HereditaryReport {
    pub fn passed(&self) -> bool {
        self.maximality_violations.is_empty() && self.violations.is_empty()
    }
}

/// Checks that `residual` and `samples` random induced subgraphs of it are
/// sparsifier-free (with X restricted to each subgraph).
pub fn check_hereditary_sparsifier_free<R: Rng>(
    residual: &PlaneGraph,
    x: &BTreeSet<Vertex>,
    d: usize,
    samples: usize,
    rng: &mut R,
) -> HereditaryReport {
    let mut report = HereditaryReport { samples_checked: 0, maximality_violations: vec![], violations: vec![] };
    let verts: Vec<Vertex> = residual.vertices().collect();
    let check = |h: &PlaneGraph, report: &mut HereditaryReport| {
        report.samples_checked += 1;
        let xh: BTreeSet<Vertex> = x.iter().copied().filter(|&v| h.is_alive(v)).collect();
        for s in find_sparsifiers(h, &xh, d) {
            report.violations.push(HereditaryViolation { subgraph: h.vertices().collect(), sparsifier: s });
        }
    };
    check(residual, &mut report);
    for _ in 0..samples {
        let p: f64 = rng.gen_range(0.3..1.0);
        let keep: Vec<Vertex> = verts.iter().copied().filter(|_| rng.gen_bool(p)).collect();
        let h = residual.induced_subgraph(&keep);
        check(&h, &mut report);
    }
    report
}

/// Like [`check_hereditary_sparsifier_free`] on `g - system`, and also
/// checks that `system` cannot be extended by a sparsifier of `g`.
pub fn check_system_residual<R: Rng>(
    g: &PlaneGraph,
    x: &BTreeSet<Vertex>,
    d: usize,
    system: &[Sparsifier],
    samples: usize,
    rng: &mut R,
) -> HereditaryReport {
    let removed = system_vertices(system);
    let residual = g.delete_vertices(&removed);
    let mut report = check_hereditary_sparsifier_free(&residual, x, d, samples, rng);
    report.maximality_violations =
        find_sparsifiers(g, x, d).into_iter().filter(|s| separated(g, &s.vertices, &removed)).collect();
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli_io::gen;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn none() -> BTreeSet<Vertex> {
        BTreeSet::new()
    }

    #[test]
    fn classify_examples() {
        let oct = gen::octahedron();
        assert_eq!(classify_vertex(&oct, &none(), 6, 0), VertexClass::Small);
        let c4 = gen::cycle(4);
        assert!(classify_vertex(&c4, &none(), 6, 0).is_big());
        let k4 = gen::k4();
        let x: BTreeSet<Vertex> = [0].into();
        assert_eq!(classify_vertex(&k4, &x, 6, 0), VertexClass::Big { in_x: true, high_degree: false, bad_face: false });
    }

    #[test]
    fn triangle_flags_on_k4() {
        // outer face 0 1 2, inner vertex 3
        let k4 = gen::k4();
        let f = classify_triangle(&k4, &none(), &Triangle::new(0, 1, 3)).unwrap();
        assert!(f.facial && f.x_external && f.x_empty && !f.x_pyramidal && !f.bounds_outer);
        let f = classify_triangle(&k4, &none(), &Triangle::new(0, 1, 2)).unwrap();
        assert!(f.facial && f.x_external && f.x_empty && f.x_pyramidal && f.bounds_outer);
        let x: BTreeSet<Vertex> = [0, 1, 3].into();
        assert!(!classify_triangle(&k4, &x, &Triangle::new(0, 1, 3)).unwrap().x_external);
    }

    #[test]
    fn pword_examples() {
        let p2 = gen::pword(2);
        let e = find_pword(&p2, 2).unwrap().unwrap();
        assert!(e.is_valid_in(&p2));
        assert_eq!((e.u, e.v), (0, 1));
        assert_eq!(min_free_t(&gen::octahedron()).unwrap(), 5);
        assert!(find_pword(&gen::octahedron(), 5).unwrap().is_none());
        assert!(find_pword(&gen::octahedron(), 4).unwrap().is_some());
        let ico = gen::icosahedron();
        assert!(find_pword(&ico, 3).unwrap().is_none());
        assert!(find_pword(&ico, 2).unwrap().is_some());
        assert_eq!(min_free_t(&ico).unwrap(), 3);
        assert_eq!(min_free_t(&gen::edgeless(4)).unwrap(), 1);
    }

    #[test]
    fn budget_is_reported() {
        let g = gen::pword(30);
        assert_eq!(find_pword_with_budget(&g, 31, 5), Err(StructureError::SearchBudgetExceeded(5)));
    }

    #[test]
    fn sparsifier_examples() {
        let oct = gen::octahedron();
        let s = find_sparsifiers(&oct, &none(), 6);
        assert_eq!(s.len(), 6);
        assert!(s.iter().all(|s| s.kind == SparsifierKind::Four));
        let ico = gen::icosahedron();
        let s = find_sparsifiers(&ico, &none(), 6);
        assert_eq!(s.len(), 12);
        assert!(s.iter().all(|s| s.kind == SparsifierKind::Five));
        assert!(find_sparsifiers(&gen::cycle(4), &none(), 6).is_empty());
    }

    #[test]
    fn maximal_systems() {
        let oct = gen::octahedron();
        let sys = maximal_separated_system(&oct, &none(), 6);
        assert_eq!(system_vertices(&sys), vec![0, 5]);
        let ico = gen::icosahedron();
        let sys = maximal_separated_system(&ico, &none(), 6);
        assert_eq!(system_vertices(&sys), vec![0, 6, 8]);
        assert!(maximal_separated_system(&gen::cycle(4), &none(), 6).is_empty());
    }

    #[test]
    fn hereditary_check() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let oct = gen::octahedron();
        let sys = maximal_separated_system(&oct, &none(), 6);
        let rep = check_system_residual(&oct, &none(), 6, &sys, 100, &mut rng);
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.samples_checked, 101);
        let rep = check_hereditary_sparsifier_free(&gen::k4(), &none(), 6, 20, &mut rng);
        assert!(rep.passed());
        // drop one member of the system: the other antipode stays a FOUR
        let rep = check_system_residual(&oct, &none(), 6, &sys[..1], 100, &mut rng);
        assert!(!rep.passed());
        assert_eq!(rep.maximality_violations[0].vertices, vec![5]);
    }
}
