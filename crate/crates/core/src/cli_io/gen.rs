//! Graph generators: fixed solids, the P''_t family and its list gadget,
//! stacked 3-trees, random triangulations and degree-four strips.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::color_core::Color;
use crate::plane_graph::{PlaneGraph, Triangle, Vertex};
use crate::structure_detect::{longest_common_path, PWORD_BUDGET};

/// Builds a rotation system from a list of oriented faces. Each face
/// `(f_0, .., f_{k-1})` fixes `succ_{f_i}(f_{i-1}) = f_{i+1}` in the rotation
/// at `f_i`. Panics if the faces do not close up into one cycle per vertex.
pub fn from_oriented_faces(n: usize, faces: &[Vec<Vertex>], outer: Option<&[Vertex]>) -> PlaneGraph {
    let mut succ: Vec<BTreeMap<Vertex, Vertex>> = vec![BTreeMap::new(); n];
    for f in faces {
        let k = f.len();
        for i in 0..k {
            let (prev, cur, next) = (f[(i + k - 1) % k], f[i], f[(i + 1) % k]);
            let old = succ[cur].insert(prev, next);
            assert!(old.is_none(), "dart used twice at {cur}");
        }
    }
    let rot: Vec<Vec<Vertex>> = succ
        .iter()
        .map(|s| {
            let Some((&start, _)) = s.iter().next() else { return Vec::new() };
            let mut r = vec![start];
            let mut cur = s[&start];
            while cur != start {
                r.push(cur);
                cur = s[&cur];
            }
            assert_eq!(r.len(), s.len(), "rotation does not close");
            r
        })
        .collect();
    PlaneGraph::new(n, rot, outer).expect("generated embedding is valid")
}

pub fn edgeless(n: usize) -> PlaneGraph {
    PlaneGraph::new(n, vec![Vec::new(); n], None).unwrap()
}

pub fn cycle(n: usize) -> PlaneGraph {
    let rot = (0..n).map(|i| vec![(i + 1) % n, (i + n - 1) % n]).collect();
    PlaneGraph::new(n, rot, None).unwrap()
}

pub fn path(n: usize) -> PlaneGraph {
    let rot = (0..n)
        .map(|i| {
            let mut r = Vec::new();
            if i + 1 < n {
                r.push(i + 1);
            }
            if i > 0 {
                r.push(i - 1);
            }
            r
        })
        .collect();
    PlaneGraph::new(n, rot, None).unwrap()
}

pub fn triangle() -> PlaneGraph {
    from_oriented_faces(3, &[vec![0, 1, 2], vec![0, 2, 1]], Some(&[0, 2, 1]))
}

/// K4 with outer face 0 1 2 and inner vertex 3.
pub fn k4() -> PlaneGraph {
    complete_3tree(1)
}

pub fn octahedron() -> PlaneGraph {
    let faces = [[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 1], [5, 2, 1], [5, 3, 2], [5, 4, 3], [5, 1, 4]];
    from_oriented_faces(6, &faces.map(|f| f.to_vec()), None)
}

/// Icosahedron: apex 0, upper ring 1..=5, lower ring 6..=10, apex 11.
pub fn icosahedron() -> PlaneGraph {
    let u = |i: usize| 1 + i % 5;
    let l = |i: usize| 6 + i % 5;
    let mut faces = Vec::new();
    for i in 0..5 {
        faces.push(vec![0, u(i), u(i + 1)]);
        faces.push(vec![u(i), l(i), u(i + 1)]);
        faces.push(vec![u(i + 1), l(i), l(i + 1)]);
        faces.push(vec![11, l(i + 1), l(i)]);
    }
    from_oriented_faces(12, &faces, None)
}

/// P''_t: apexes 0 and 1, path 2..t+2.
pub fn pword(t: usize) -> PlaneGraph {
    assert!(t >= 1);
    let p = |i: usize| 2 + i;
    if t == 1 {
        return PlaneGraph::new(3, vec![vec![2], vec![2], vec![0, 1]], None).unwrap();
    }
    let mut faces = Vec::new();
    for i in 0..t - 1 {
        faces.push(vec![0, p(i), p(i + 1)]);
        faces.push(vec![1, p(i + 1), p(i)]);
    }
    faces.push(vec![0, p(t - 1), 1, p(0)]);
    from_oriented_faces(t + 2, &faces, Some(&[0, p(t - 1), 1, p(0)]))
}

/// The list gadget on P''_t with `t = 9(2γ-1)(γ+1)`: the path is split into
/// nine consecutive segments, segment `(i, j)` getting lists `{i, j, 7}`.
pub fn choos_gadget(gamma: usize) -> (PlaneGraph, Vec<Vec<Color>>) {
    let seg = (2 * gamma - 1) * (gamma + 1);
    let t = 9 * seg;
    let g = pword(t);
    let mut lists = vec![vec![1, 2, 3], vec![4, 5, 6]];
    for i in 1..=3 {
        for j in 4..=6 {
            lists.extend(std::iter::repeat_n(vec![i, j, 7], seg));
        }
    }
    (g, lists)
}

/// Oriented-face bookkeeping for stacking constructions.
struct Stacker {
    succ: Vec<BTreeMap<Vertex, Vertex>>,
    /// Internal faces that may receive a new vertex.
    faces: Vec<[Vertex; 3]>,
}

impl Stacker {
    fn new() -> Self {
        let mut s = Stacker { succ: vec![BTreeMap::new(); 3], faces: vec![[0, 1, 2]] };
        for f in [[0, 1, 2], [0, 2, 1]] {
            s.set_face(&f);
        }
        s
    }

    fn set_face(&mut self, f: &[Vertex; 3]) {
        for i in 0..3 {
            self.succ[f[i]].insert(f[(i + 2) % 3], f[(i + 1) % 3]);
        }
    }

    fn insert(&mut self, idx: usize) -> Vertex {
        let [a, b, c] = self.faces.swap_remove(idx);
        let v = self.succ.len();
        self.succ.push(BTreeMap::new());
        for f in [[a, b, v], [b, c, v], [c, a, v]] {
            self.set_face(&f);
            self.faces.push(f);
        }
        v
    }

    fn graph(&self) -> PlaneGraph {
        let faces: Vec<Vec<Vertex>> = self.all_faces();
        from_oriented_faces(self.succ.len(), &faces, Some(&[0, 2, 1]))
    }

    fn all_faces(&self) -> Vec<Vec<Vertex>> {
        let mut seen = std::collections::BTreeSet::new();
        let mut out = Vec::new();
        for u in 0..self.succ.len() {
            for &prev in self.succ[u].keys() {
                // dart prev -> u starts a face walk
                if seen.contains(&(prev, u)) {
                    continue;
                }
                let mut walk = Vec::new();
                let (mut a, mut b) = (prev, u);
                while seen.insert((a, b)) {
                    walk.push(a);
                    let c = self.succ[b][&a];
                    a = b;
                    b = c;
                }
                out.push(walk);
            }
        }
        out
    }
}

/// Complete rooted planar 3-tree of depth `k` with root triangle 0 1 2.
pub fn complete_3tree(depth: usize) -> PlaneGraph {
    let mut s = Stacker::new();
    for _ in 0..depth {
        for f in s.faces.clone() {
            let i = s.faces.iter().position(|&g| g == f).unwrap();
            s.insert(i);
        }
    }
    s.graph()
}

/// Rooted planar 3-tree with root 0 1 2 built by stacking vertex `3 + i`
/// into the internal face with vertex set `into[i]`.
pub fn stacked_from(into: &[[Vertex; 3]]) -> PlaneGraph {
    let mut s = Stacker::new();
    for k in into {
        let k = Triangle::new(k[0], k[1], k[2]);
        let i = s.faces.iter().position(|f| Triangle::new(f[0], f[1], f[2]) == k).expect("no such internal face");
        s.insert(i);
    }
    s.graph()
}

/// Random rooted planar 3-tree on `n >= 3` vertices with root 0 1 2.
pub fn stacked_3tree(n: usize, seed: u64) -> PlaneGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = Stacker::new();
    while s.succ.len() < n {
        let i = rng.gen_range(0..s.faces.len());
        s.insert(i);
    }
    s.graph()
}

/// Random P''_t-free rooted planar 3-tree: insertions that would create a
/// copy of P''_t are rejected. Stops early if no face accepts a vertex.
pub fn free_3tree(n: usize, t: usize, seed: u64) -> PlaneGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = Stacker::new();
    let mut stuck = 0;
    while s.succ.len() < n && stuck < 200 {
        let i = rng.gen_range(0..s.faces.len());
        let mut trial = Stacker { succ: s.succ.clone(), faces: s.faces.clone() };
        let [a, b, c] = trial.faces[i];
        let v = trial.insert(i);
        let g = trial.graph();
        let mut pairs: Vec<(Vertex, Vertex)> = vec![(a, b), (a, c), (b, c)];
        pairs.extend(g.vertices().filter(|&w| w != v).map(|w| (v, w)));
        let ok = pairs.iter().all(|&(p, q)| {
            longest_common_path(&g, p, q, t, PWORD_BUDGET).map(|(path, _)| path.len() < t).unwrap_or(false)
        });
        if ok {
            s = trial;
            stuck = 0;
        } else {
            stuck += 1;
        }
    }
    s.graph()
}

/// Random triangulation: random stacking followed by random edge flips.
pub fn triangulation(n: usize, seed: u64) -> PlaneGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = Stacker::new();
    // the outer face is also available for insertion
    s.faces.push([0, 2, 1]);
    while s.succ.len() < n {
        let i = rng.gen_range(0..s.faces.len());
        s.insert(i);
    }
    let mut succ = s.succ;
    let flips = 4 * n;
    for _ in 0..flips {
        let a = rng.gen_range(0..succ.len());
        let nbrs: Vec<Vertex> = succ[a].keys().copied().collect();
        let Some(&b) = nbrs.choose(&mut rng) else { continue };
        try_flip(&mut succ, a, b);
    }
    let st = Stacker { succ, faces: Vec::new() };
    let faces = st.all_faces();
    from_oriented_faces(st.succ.len(), &faces, None)
}

/// Random triangulation without separating triangles, when the flip
/// heuristic finds one: separating triangles of [`triangulation`] are broken
/// by flipping one of their edges. Gives up after `50n` flips.
pub fn four_connected_triangulation(n: usize, seed: u64) -> PlaneGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let g = triangulation(n, seed);
    let mut succ: Vec<BTreeMap<Vertex, Vertex>> = vec![BTreeMap::new(); g.capacity()];
    for f in g.faces() {
        let w = f.walk();
        for i in 0..w.len() {
            let k = w.len();
            succ[w[i]].insert(w[(i + k - 1) % k], w[(i + 1) % k]);
        }
    }
    for _ in 0..50 * n {
        let separating: Vec<[Vertex; 3]> = (0..succ.len())
            .flat_map(|a| {
                let succ = &succ;
                succ[a].keys().copied().filter(move |&b| b > a).flat_map(move |b| {
                    succ[b].keys().copied().filter(move |&c| c > b && succ[a].contains_key(&c)).map(move |c| [a, b, c])
                })
            })
            .filter(|&[a, b, c]| succ[b][&a] != c && succ[a][&b] != c)
            .collect();
        let Some(k) = separating.choose(&mut rng) else { break };
        let i = rng.gen_range(0..3);
        try_flip(&mut succ, k[i], k[(i + 1) % 3]);
    }
    let st = Stacker { succ, faces: Vec::new() };
    let faces = st.all_faces();
    from_oriented_faces(st.succ.len(), &faces, None)
}

/// Flips edge `ab` of a triangulation if the result stays simple and keeps
/// all degrees at least three.
fn try_flip(succ: &mut [BTreeMap<Vertex, Vertex>], a: Vertex, b: Vertex) -> bool {
    // faces (a, b, c) and (b, a, d)
    let c = succ[b][&a];
    let d = succ[a][&b];
    if c == d || succ[c].contains_key(&d) || succ[a].len() < 4 || succ[b].len() < 4 {
        return false;
    }
    // unlink b from a: predecessor of b in a's rotation now points at d
    let pa = pred(&succ[a], b);
    succ[a].remove(&b);
    succ[a].insert(pa, d);
    let pb = pred(&succ[b], a);
    succ[b].remove(&a);
    succ[b].insert(pb, c);
    // link d into c's rotation after b, and c into d's rotation after a
    let after_b = succ[c][&b];
    succ[c].insert(b, d);
    succ[c].insert(d, after_b);
    let after_a = succ[d][&a];
    succ[d].insert(a, c);
    succ[d].insert(c, after_a);
    true
}

fn pred(rot: &BTreeMap<Vertex, Vertex>, x: Vertex) -> Vertex {
    *rot.iter().find(|(_, &n)| n == x).map(|(p, _)| p).unwrap()
}

/// A strip of `len` degree-four vertices between two vertices `x`, `y`,
/// capped at both ends. Vertices: `x = 0`, `y = 1`, path `2..len+4`
/// (`len + 2` vertices whose two ends have degree five), then caps
/// `a1 a2 b1 b2`. The outer face is the hexagon `x a2 a1 y b1 b2`.
pub fn strip(len: usize) -> PlaneGraph {
    let (x, y) = (0, 1);
    let m = len + 2;
    let p = |i: usize| 2 + i;
    let a1 = 2 + m;
    let a2 = a1 + 1;
    let b1 = a1 + 2;
    let b2 = a1 + 3;
    let last = p(m - 1);
    let mut faces = Vec::new();
    for i in 0..m - 1 {
        faces.push(vec![x, p(i), p(i + 1)]);
        faces.push(vec![y, p(i + 1), p(i)]);
    }
    // caps at the p(0) end
    faces.push(vec![x, a2, p(0)]);
    faces.push(vec![a2, a1, p(0)]);
    faces.push(vec![a1, y, p(0)]);
    // caps at the far end
    faces.push(vec![y, b1, last]);
    faces.push(vec![b1, b2, last]);
    faces.push(vec![b2, x, last]);
    let outer = vec![x, b2, b1, y, a1, a2];
    faces.push(outer.clone());
    from_oriented_faces(2 + m + 4, &faces, Some(&outer))
}

/// Builds a graph from an existing one with some edges removed; used to
/// make quadrangulated variants of triangulations.
pub fn delete_random_edges(g: &PlaneGraph, count: usize, seed: u64) -> PlaneGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = g.edges();
    edges.shuffle(&mut rng);
    edges.truncate(count);
    g.delete_edges(&edges)
}

/// Random triangle of `g`, for tests that need one.
pub fn random_triangle<R: Rng>(g: &PlaneGraph, rng: &mut R) -> Option<Triangle> {
    g.triangles().choose(rng).copied()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solids() {
        let o = octahedron();
        assert_eq!((o.vertex_count(), o.edge_count(), o.faces().len()), (6, 12, 8));
        assert!(o.faces().iter().all(|f| f.len() == 3));
        let i = icosahedron();
        assert_eq!((i.vertex_count(), i.edge_count(), i.faces().len()), (12, 30, 20));
        assert!(i.vertices().all(|v| i.degree(v) == 5));
        let k = k4();
        assert!(k.bounds_outer(&Triangle::new(0, 1, 2)));
        assert_eq!(k.neighbors(3).len(), 3);
    }

    #[test]
    fn octahedron_minus_antipodes_is_c4() {
        let h = octahedron().delete_vertices(&[0, 5]);
        assert_eq!(h.faces().len(), 2);
        assert!(h.faces().iter().all(|f| f.len() == 4));
        let t = octahedron().delete_vertices(&[0, 5, 1]);
        assert_eq!(t.edge_count(), 2);
    }

    #[test]
    fn pword_family() {
        let g = pword(2);
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 5));
        assert!(!g.has_edge(0, 1));
        let g = pword(7);
        g.euler_check().unwrap();
        assert_eq!(g.edge_count(), 3 * 7 - 1);
        let (g, lists) = choos_gadget(1);
        assert_eq!(g.vertex_count(), 20);
        assert_eq!(lists.len(), 20);
        let colors: std::collections::BTreeSet<Color> = lists.iter().flatten().copied().collect();
        assert_eq!(colors.len(), 7);
    }

    #[test]
    fn three_trees() {
        assert_eq!(complete_3tree(0).vertex_count(), 3);
        let g = complete_3tree(1);
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 6));
        let g = complete_3tree(3);
        assert_eq!(g.vertex_count(), 3 + 13);
        assert_eq!(g.edge_count(), 3 + 3 * 13);
        let g = stacked_3tree(40, 3);
        assert_eq!(g.vertex_count(), 40);
        assert!(g.bounds_outer(&Triangle::new(0, 1, 2)));
        assert_eq!(stacked_3tree(40, 3), g);
    }

    #[test]
    fn triangulations_are_deterministic_and_valid() {
        for seed in 0..5 {
            let g = triangulation(30, seed);
            g.euler_check().unwrap();
            assert_eq!(g.edge_count(), 3 * 30 - 6);
            assert!(g.faces().iter().all(|f| f.len() == 3));
            assert_eq!(g, triangulation(30, seed));
        }
    }

    #[test]
    fn four_connected_triangulations_have_only_facial_triangles() {
        for seed in 0..5 {
            let g = four_connected_triangulation(40, seed);
            g.euler_check().unwrap();
            assert_eq!(g.edge_count(), 3 * 40 - 6);
            assert!(g.triangles().iter().all(|k| g.is_facial(k)));
        }
    }

    #[test]
    fn strip_shape() {
        let g = strip(3);
        g.euler_check().unwrap();
        // interior path vertices have degree four, ends five
        assert_eq!(g.degree(2), 5);
        assert_eq!(g.degree(3), 4);
        assert_eq!(g.degree(6), 5);
        assert_eq!(g.outer_face().map(|f| g.face(f).len()), Some(6));
    }
}
