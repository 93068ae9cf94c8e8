//! Combinatorial plane graphs given by rotation systems.
//!
//! Vertices live in a fixed id space `0..capacity`; subgraphs keep the ids of
//! their parent and mark removed vertices as dead. This lets colorings of
//! nested subgraphs be merged without any relabeling.
//!
//! Faces are the closed walks traced from the rotation system. A *region* is a
//! connected piece of the sphere minus the drawing; it is bounded by one or
//! more walks and may contain isolated vertices. A walk is a 2-cell face iff
//! it is the only thing on the boundary of its region.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} has a loop or a repeated neighbor")]
    NotSimple(Vertex),
    #[error("vertex {1} appears in the rotation of {0} but not the other way round")]
    AsymmetricRotation(Vertex, Vertex),
    #[error("vertex {0} lists neighbor {1}, which is out of range")]
    OutOfRange(Vertex, Vertex),
    #[error("rotation count {got} does not match n = {n}")]
    WrongLength { n: usize, got: usize },
    #[error("not a sphere embedding: component of vertex {vertex} has V - E + F = {euler}")]
    NotSphereEmbedding { vertex: Vertex, euler: i64 },
    #[error("outer face hint does not match any face")]
    BadOuterFace,
    #[error("{0:?} is not a triangle of the graph")]
    NotATriangle([Vertex; 3]),
    #[error("no outer face is designated, so the disk side of {0:?} is ambiguous")]
    TriangleOnOuterFace([Vertex; 3]),
}

/// Three distinct vertices in ascending order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Triangle(pub [Vertex; 3]);

impl Triangle {
    pub fn new(a: Vertex, b: Vertex, c: Vertex) -> Self {
        let mut v = [a, b, c];
        v.sort_unstable();
        debug_assert!(v[0] != v[1] && v[1] != v[2], "degenerate triangle {v:?}");
        Triangle(v)
    }

    pub fn vertices(&self) -> [Vertex; 3] {
        self.0
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    pub fn edges(&self) -> [(Vertex, Vertex); 3] {
        let [a, b, c] = self.0;
        [(a, b), (a, c), (b, c)]
    }

    fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.contains(u) && self.contains(v) && u != v
    }
}

/// A closed boundary walk, stored as its directed edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    pub darts: Vec<(Vertex, Vertex)>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// Vertices in walk order (with repetitions for non-simple walks).
    pub fn walk(&self) -> Vec<Vertex> {
        self.darts.iter().map(|&(u, _)| u).collect()
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.darts.iter().map(|&(u, _)| u).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Region {
    pub faces: Vec<usize>,
    pub isolated: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneGraph {
    rot: Vec<Vec<Vertex>>,
    alive: Vec<bool>,
    faces: Vec<Face>,
    dart_face: Vec<Vec<usize>>,
    regions: Vec<Region>,
    face_region: Vec<usize>,
    isolated_region: Vec<Option<usize>>,
    outer: Option<usize>,
}

/// The two sides of a triangle, as strict vertex sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleSides {
    pub sides: [Vec<Vertex>; 2],
    /// Index of the side holding the outer region, when one is designated.
    pub outer_side: Option<usize>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = x;
        while self.0[c] != r {
            let next = self.0[c];
            self.0[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller root so that the result does not depend on call order
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

fn trace_faces(rot: &[Vec<Vertex>], alive: &[bool]) -> (Vec<Face>, Vec<Vec<usize>>) {
    const UNSET: usize = usize::MAX;
    let mut dart_face: Vec<Vec<usize>> = rot.iter().map(|r| vec![UNSET; r.len()]).collect();
    let mut faces = Vec::new();
    for u in 0..rot.len() {
        if !alive[u] {
            continue;
        }
        for i in 0..rot[u].len() {
            if dart_face[u][i] != UNSET {
                continue;
            }
            let id = faces.len();
            let mut darts = Vec::new();
            let (mut a, mut ai) = (u, i);
            loop {
                dart_face[a][ai] = id;
                let b = rot[a][ai];
                darts.push((a, b));
                let j = rot[b].iter().position(|&w| w == a).expect("symmetric rotation");
                let bi = (j + 1) % rot[b].len();
                a = b;
                ai = bi;
                if dart_face[a][ai] != UNSET {
                    break;
                }
            }
            faces.push(Face { id, darts });
        }
    }
    (faces, dart_face)
}

fn cyclic_match(walk: &[Vertex], hint: &[Vertex]) -> bool {
    if walk.len() != hint.len() || walk.is_empty() {
        return false;
    }
    let n = walk.len();
    (0..n).any(|s| (0..n).all(|k| walk[(s + k) % n] == hint[k]))
}

impl PlaneGraph {
    /// Validates a rotation system and builds the embedding.
    ///
    /// Components are placed side by side: each one faces the common region
    /// with its designated outer walk (the hinted face for the component that
    /// holds it, otherwise its longest walk, lowest id on ties). Without a
    /// hint the longest walk of the whole graph is the outer face.
    pub fn new(
        n: usize,
        rotations: Vec<Vec<Vertex>>,
        outer_hint: Option<&[Vertex]>,
    ) -> Result<Self, GraphError> {
        if rotations.len() != n {
            return Err(GraphError::WrongLength { n, got: rotations.len() });
        }
        for (u, r) in rotations.iter().enumerate() {
            let mut seen = BTreeSet::new();
            for &w in r {
                if w >= n {
                    return Err(GraphError::OutOfRange(u, w));
                }
                if w == u || !seen.insert(w) {
                    return Err(GraphError::NotSimple(u));
                }
            }
        }
        for (u, r) in rotations.iter().enumerate() {
            for &w in r {
                if !rotations[w].contains(&u) {
                    return Err(GraphError::AsymmetricRotation(u, w));
                }
            }
        }
        let alive = vec![true; n];
        let (faces, dart_face) = trace_faces(&rotations, &alive);

        // components
        let mut uf = UnionFind::new(n);
        for (u, r) in rotations.iter().enumerate() {
            for &w in r {
                uf.union(u, w);
            }
        }
        let comp: Vec<usize> = (0..n).map(|v| uf.find(v)).collect();
        let mut verts = vec![0i64; n];
        let mut edges = vec![0i64; n];
        let mut walks = vec![0i64; n];
        for v in 0..n {
            verts[comp[v]] += 1;
            edges[comp[v]] += rotations[v].len() as i64;
        }
        for f in &faces {
            walks[comp[f.darts[0].0]] += 1;
        }
        for v in 0..n {
            if comp[v] == v {
                let w = if edges[v] == 0 { 1 } else { walks[v] };
                let euler = verts[v] - edges[v] / 2 + w;
                if euler != 2 {
                    return Err(GraphError::NotSphereEmbedding { vertex: v, euler });
                }
            }
        }

        let hinted = match outer_hint {
            Some(h) => {
                let fwd = faces.iter().find(|f| cyclic_match(&f.walk(), h));
                let rev: Vec<Vertex> = h.iter().rev().copied().collect();
                let found = fwd.or_else(|| faces.iter().find(|f| cyclic_match(&f.walk(), &rev)));
                Some(found.ok_or(GraphError::BadOuterFace)?.id)
            }
            None => None,
        };
        let default_outer = faces
            .iter()
            .max_by(|a, b| a.len().cmp(&b.len()).then(b.id.cmp(&a.id)))
            .map(|f| f.id);
        let outer_face = hinted.or(default_outer);

        // outer walk per component
        let mut comp_outer: Vec<Option<usize>> = vec![None; n];
        for f in &faces {
            let c = comp[f.darts[0].0];
            match comp_outer[c] {
                Some(g) if faces[g].len() >= f.len() => {}
                _ => comp_outer[c] = Some(f.id),
            }
        }
        if let Some(of) = outer_face {
            comp_outer[comp[faces[of].darts[0].0]] = Some(of);
        }

        let mut regions: Vec<Region> = Vec::new();
        let mut shared: Option<usize> = None;
        let mut face_region = vec![0; faces.len()];
        for f in &faces {
            let c = comp[f.darts[0].0];
            if comp_outer[c] == Some(f.id) {
                let r = *shared.get_or_insert_with(|| {
                    regions.push(Region::default());
                    regions.len() - 1
                });
                regions[r].faces.push(f.id);
                face_region[f.id] = r;
            } else {
                regions.push(Region { faces: vec![f.id], isolated: vec![] });
                face_region[f.id] = regions.len() - 1;
            }
        }
        let mut isolated_region = vec![None; n];
        for v in 0..n {
            if rotations[v].is_empty() {
                let r = *shared.get_or_insert_with(|| {
                    regions.push(Region::default());
                    regions.len() - 1
                });
                regions[r].isolated.push(v);
                isolated_region[v] = Some(r);
            }
        }
        let outer = outer_face.map(|f| face_region[f]).or(shared);

        Ok(PlaneGraph {
            rot: rotations,
            alive,
            faces,
            dart_face,
            regions,
            face_region,
            isolated_region,
            outer,
        })
    }

    /// Size of the vertex id space (including dead ids).
    pub fn capacity(&self) -> usize {
        self.rot.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    pub fn edge_count(&self) -> usize {
        self.rot.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_alive(&self, v: Vertex) -> bool {
        v < self.alive.len() && self.alive[v]
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.rot.len()).filter(move |&v| self.alive[v])
    }

    pub fn alive_mask(&self) -> &[bool] {
        &self.alive
    }

    /// Neighbors of `v` in rotation (clockwise) order.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.rot[v]
    }

    pub fn rotations(&self) -> &[Vec<Vertex>] {
        &self.rot
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.rot[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.rot.len() && self.rot[u].contains(&v)
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for u in self.vertices() {
            for &w in &self.rot[u] {
                if u < w {
                    out.push((u, w));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> &Face {
        &self.faces[id]
    }

    /// Face whose boundary walk traverses the dart `u -> v`.
    pub fn face_of_dart(&self, u: Vertex, v: Vertex) -> Option<usize> {
        let i = self.rot.get(u)?.iter().position(|&w| w == v)?;
        Some(self.dart_face[u][i])
    }

    /// Faces incident with `v`, ascending and deduplicated.
    pub fn faces_at(&self, v: Vertex) -> Vec<usize> {
        let mut fs: Vec<usize> = self.dart_face[v].clone();
        fs.sort_unstable();
        fs.dedup();
        fs
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn region_of_face(&self, f: usize) -> usize {
        self.face_region[f]
    }

    /// Region containing an isolated vertex.
    pub fn region_of_isolated(&self, v: Vertex) -> Option<usize> {
        self.isolated_region[v]
    }

    pub fn outer_region(&self) -> Option<usize> {
        self.outer
    }

    /// The outer face, when the outer region is a single 2-cell face.
    pub fn outer_face(&self) -> Option<usize> {
        let r = &self.regions[self.outer?];
        (r.faces.len() == 1 && r.isolated.is_empty()).then(|| r.faces[0])
    }

    pub fn is_two_cell(&self, f: usize) -> bool {
        let r = &self.regions[self.face_region[f]];
        r.faces.len() == 1 && r.isolated.is_empty()
    }

    /// Sum of face lengths; equals `2|E|`.
    pub fn face_length_sum(&self) -> usize {
        self.faces.iter().map(Face::len).sum()
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.capacity()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = vec![];
            while let Some(u) = stack.pop() {
                comp.push(u);
                for &w in &self.rot[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Per-component Euler check plus the handshake identity for faces.
    pub fn euler_check(&self) -> Result<(), GraphError> {
        let mut walks_at = vec![0i64; self.capacity()];
        for f in &self.faces {
            walks_at[f.darts[0].0] += 1;
        }
        for comp in self.components() {
            let v = comp.len() as i64;
            let e2: i64 = comp.iter().map(|&u| self.rot[u].len() as i64).sum();
            let w: i64 = if e2 == 0 {
                1
            } else {
                let set: BTreeSet<Vertex> = comp.iter().copied().collect();
                self.faces.iter().filter(|f| set.contains(&f.darts[0].0)).count() as i64
            };
            let euler = v - e2 / 2 + w;
            if euler != 2 {
                return Err(GraphError::NotSphereEmbedding { vertex: comp[0], euler });
            }
        }
        debug_assert_eq!(self.face_length_sum(), 2 * self.edge_count());
        Ok(())
    }

    /// All triangles, ascending.
    pub fn triangles(&self) -> Vec<Triangle> {
        let mut out = Vec::new();
        for u in self.vertices() {
            let mut nb: Vec<Vertex> = self.rot[u].iter().copied().filter(|&w| w > u).collect();
            nb.sort_unstable();
            for (i, &v) in nb.iter().enumerate() {
                for &w in &nb[i + 1..] {
                    if self.has_edge(v, w) {
                        out.push(Triangle([u, v, w]));
                    }
                }
            }
        }
        out
    }

    pub fn is_triangle(&self, k: &Triangle) -> bool {
        let [a, b, c] = k.0;
        self.is_alive(a) && self.is_alive(b) && self.is_alive(c) && self.has_edge(a, b) && self.has_edge(b, c) && self.has_edge(a, c)
    }

    fn face_is_triangle(&self, f: usize, k: &Triangle) -> bool {
        let face = &self.faces[f];
        face.len() == 3 && face.darts.iter().all(|&(u, _)| k.contains(u))
    }

    /// `k` bounds a 2-cell face.
    pub fn is_facial(&self, k: &Triangle) -> bool {
        let [a, b, _] = k.0;
        [self.face_of_dart(a, b), self.face_of_dart(b, a)]
            .into_iter()
            .flatten()
            .any(|f| self.is_two_cell(f) && self.face_is_triangle(f, k))
    }

    /// `k` is the boundary of the outer face.
    pub fn bounds_outer(&self, k: &Triangle) -> bool {
        self.outer_face().is_some_and(|f| self.face_is_triangle(f, k))
    }

    /// The 2-cell face bounded by `k` on the side away from the outer region.
    pub fn disk_face(&self, k: &Triangle) -> Option<usize> {
        let [a, b, _] = k.0;
        [self.face_of_dart(a, b), self.face_of_dart(b, a)]
            .into_iter()
            .flatten()
            .find(|&f| self.is_two_cell(f) && self.face_is_triangle(f, k) && Some(self.face_region[f]) != self.outer)
    }

    /// Splits the vertices not on `k` into the two sides of `k`.
    pub fn triangle_sides(&self, k: &Triangle) -> Result<TriangleSides, GraphError> {
        if !self.is_triangle(k) {
            return Err(GraphError::NotATriangle(k.0));
        }
        let [a, b, _] = k.0;
        let seeds = [self.face_of_dart(a, b).unwrap(), self.face_of_dart(b, a).unwrap()];
        let nf = self.faces.len();
        let mut side_of = vec![usize::MAX; nf];
        for (s, &seed) in seeds.iter().enumerate() {
            if side_of[seed] != usize::MAX {
                // the two sides of a cycle can never share a face
                debug_assert!(false, "triangle {k:?} does not separate");
                continue;
            }
            let mut stack = vec![seed];
            side_of[seed] = s;
            while let Some(f) = stack.pop() {
                let mut next: Vec<usize> = Vec::new();
                for &(u, v) in &self.faces[f].darts {
                    if !k.has_edge(u, v) {
                        next.push(self.face_of_dart(v, u).unwrap());
                    }
                }
                next.extend(self.regions[self.face_region[f]].faces.iter().copied());
                for g in next {
                    if side_of[g] == usize::MAX {
                        side_of[g] = s;
                        stack.push(g);
                    }
                }
            }
        }
        let mut sets: [BTreeSet<Vertex>; 2] = [BTreeSet::new(), BTreeSet::new()];
        let mut region_side: Vec<Option<usize>> = vec![None; self.regions.len()];
        for f in 0..nf {
            let s = side_of[f];
            if s == usize::MAX {
                continue;
            }
            region_side[self.face_region[f]] = Some(s);
            for &(u, _) in &self.faces[f].darts {
                if !k.contains(u) {
                    sets[s].insert(u);
                }
            }
        }
        for (r, region) in self.regions.iter().enumerate() {
            if let Some(s) = region_side[r] {
                sets[s].extend(region.isolated.iter().copied());
            }
        }
        let outer_side = self.outer.and_then(|r| region_side[r]);
        let [s0, s1] = sets;
        Ok(TriangleSides { sides: [s0.into_iter().collect(), s1.into_iter().collect()], outer_side })
    }

    /// Vertices strictly inside the disk bounded by `k` (the side away from
    /// the outer region).
    pub fn interior_vertices(&self, k: &Triangle) -> Result<Vec<Vertex>, GraphError> {
        let sides = self.triangle_sides(k)?;
        let outer = sides.outer_side.ok_or(GraphError::TriangleOnOuterFace(k.0))?;
        let [s0, s1] = sides.sides;
        Ok(if outer == 0 { s1 } else { s0 })
    }

    /// The subgraph drawn in the closed disk bounded by `k`; its outer face
    /// is bounded by `k`.
    pub fn interior_subgraph(&self, k: &Triangle) -> Result<PlaneGraph, GraphError> {
        let inside = self.interior_vertices(k)?;
        let mut keep = vec![false; self.capacity()];
        for v in inside.into_iter().chain(k.0) {
            keep[v] = true;
        }
        Ok(self.induced_subgraph_mask(&keep))
    }

    pub fn delete_vertices(&self, s: &[Vertex]) -> PlaneGraph {
        let mut keep = self.alive.clone();
        for &v in s {
            if v < keep.len() {
                keep[v] = false;
            }
        }
        self.induced_subgraph_mask(&keep)
    }

    pub fn induced_subgraph(&self, w: &[Vertex]) -> PlaneGraph {
        let mut keep = vec![false; self.capacity()];
        for &v in w {
            if self.is_alive(v) {
                keep[v] = true;
            }
        }
        self.induced_subgraph_mask(&keep)
    }

    /// Induced subgraph with the inherited embedding. Regions of the result
    /// are unions of regions of `self` glued along deleted edges.
    pub fn induced_subgraph_mask(&self, keep: &[bool]) -> PlaneGraph {
        self.restrict(keep, &BTreeSet::new())
    }

    /// Same vertex set with the given edges removed.
    pub fn delete_edges(&self, edges: &[(Vertex, Vertex)]) -> PlaneGraph {
        let gone: BTreeSet<(Vertex, Vertex)> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        self.restrict(&self.alive.clone(), &gone)
    }

    fn restrict(&self, keep: &[bool], gone: &BTreeSet<(Vertex, Vertex)>) -> PlaneGraph {
        let n = self.capacity();
        let alive: Vec<bool> = (0..n).map(|v| self.alive[v] && keep.get(v).copied().unwrap_or(false)).collect();
        let kept = |u: Vertex, w: Vertex| alive[u] && alive[w] && !gone.contains(&(u.min(w), u.max(w)));
        let rot: Vec<Vec<Vertex>> = (0..n)
            .map(|v| if alive[v] { self.rot[v].iter().copied().filter(|&w| kept(v, w)).collect() } else { Vec::new() })
            .collect();
        let (faces, dart_face) = trace_faces(&rot, &alive);

        let mut uf = UnionFind::new(self.regions.len());
        for u in self.vertices() {
            for (i, &w) in self.rot[u].iter().enumerate() {
                if u < w && !kept(u, w) {
                    let f1 = self.dart_face[u][i];
                    let f2 = self.face_of_dart(w, u).unwrap();
                    uf.union(self.face_region[f1], self.face_region[f2]);
                }
            }
        }
        let mut new_id: Vec<Option<usize>> = vec![None; self.regions.len()];
        let mut regions: Vec<Region> = Vec::new();
        let mut face_region = vec![0; faces.len()];
        let mut slot = |root: usize, regions: &mut Vec<Region>| -> usize {
            *new_id[root].get_or_insert_with(|| {
                regions.push(Region::default());
                regions.len() - 1
            })
        };
        for f in &faces {
            let (u, v) = f.darts[0];
            let old = self.face_of_dart(u, v).unwrap();
            let root = uf.find(self.face_region[old]);
            let r = slot(root, &mut regions);
            regions[r].faces.push(f.id);
            face_region[f.id] = r;
        }
        let mut isolated_region = vec![None; n];
        for v in 0..n {
            if alive[v] && rot[v].is_empty() {
                let old = if self.rot[v].is_empty() {
                    self.isolated_region[v].expect("isolated vertex has a region")
                } else {
                    self.face_region[self.dart_face[v][0]]
                };
                let root = uf.find(old);
                let r = slot(root, &mut regions);
                regions[r].isolated.push(v);
                isolated_region[v] = Some(r);
            }
        }
        let outer = self.outer.and_then(|r| new_id[uf.find(r)]);
        PlaneGraph { rot, alive, faces, dart_face, regions, face_region, isolated_region, outer }
    }

    /// Disjoint union with a fresh triangle drawn around the whole graph.
    /// The triangle's vertices are `capacity()..capacity()+3` and its outer
    /// side becomes the outer face.
    pub fn with_outer_triangle(&self) -> (PlaneGraph, Triangle) {
        let n = self.capacity();
        let (a, b, c) = (n, n + 1, n + 2);
        let mut rot = self.rot.clone();
        rot.push(vec![b, c]);
        rot.push(vec![c, a]);
        rot.push(vec![a, b]);
        let mut alive = self.alive.clone();
        alive.extend([true; 3]);
        let (faces, dart_face) = trace_faces(&rot, &alive);
        // old faces are traced first and in the same order
        debug_assert!(faces.len() == self.faces.len() + 2);
        let mut regions = self.regions.clone();
        let mut face_region = self.face_region.clone();
        let outer_face_id = dart_face[a][0];
        let inner_face_id = if outer_face_id == self.faces.len() { self.faces.len() + 1 } else { self.faces.len() };
        let inner_region = match self.outer {
            Some(r) => r,
            None => {
                regions.push(Region::default());
                regions.len() - 1
            }
        };
        face_region.resize(faces.len(), 0);
        regions[inner_region].faces.push(inner_face_id);
        face_region[inner_face_id] = inner_region;
        regions.push(Region { faces: vec![outer_face_id], isolated: vec![] });
        face_region[outer_face_id] = regions.len() - 1;
        let outer = Some(regions.len() - 1);
        let mut isolated_region = self.isolated_region.clone();
        isolated_region.extend([None; 3]);
        (
            PlaneGraph { rot, alive, faces, dart_face, regions, face_region, isolated_region, outer },
            Triangle::new(a, b, c),
        )
    }

    /// Compacts alive vertices to `0..k`; returns the graph data and the map
    /// from new ids to old ids.
    pub fn compacted(&self) -> (usize, Vec<Vec<Vertex>>, Option<Vec<Vertex>>, Vec<Vertex>) {
        let order: Vec<Vertex> = self.vertices().collect();
        let mut new_of = vec![usize::MAX; self.capacity()];
        for (i, &v) in order.iter().enumerate() {
            new_of[v] = i;
        }
        let rot = order.iter().map(|&v| self.rot[v].iter().map(|&w| new_of[w]).collect()).collect();
        let outer = self.outer_region().and_then(|r| self.regions[r].faces.first().copied()).map(|f| self.faces[f].walk().into_iter().map(|v| new_of[v]).collect());
        (order.len(), rot, outer, order)
    }
}
