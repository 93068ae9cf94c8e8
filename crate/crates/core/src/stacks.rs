//! Rooted planar 3-trees, pointer systems and the pyramidal solver.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::color_core::{
    cluster_size_of, color_no_nonfacial, isolates, x_set, Color, Coloring, Config, Lists, NocutColoring, Precoloring,
};
use crate::error::SolveError;
use crate::plane_graph::{PlaneGraph, Triangle, Vertex};
use crate::structure_detect::{classify_triangle, PwordEmbedding};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StackDecomposition {
    pub root: Triangle,
    pub tip: Option<Vertex>,
    /// Children for the three triangles through the tip, in triangle order.
    pub children: Vec<StackDecomposition>,
}

impl StackDecomposition {
    pub fn child(&self, k: &Triangle) -> Option<&StackDecomposition> {
        self.children.iter().find(|c| c.root == *k)
    }

    /// Number of vertices, root included.
    pub fn size(&self) -> usize {
        3 + self.interior_size()
    }

    fn interior_size(&self) -> usize {
        self.children.iter().map(StackDecomposition::interior_size).sum::<usize>() + usize::from(self.tip.is_some())
    }

    /// Tips in preorder.
    pub fn tips(&self) -> Vec<Vertex> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(d) = stack.pop() {
            out.extend(d.tip);
            stack.extend(d.children.iter().rev());
        }
        out
    }
}

/// Recursive tip decomposition of `g` with root `c`, or `None` if `g` is not
/// a rooted planar 3-tree with outer face bounded by `c`.
pub fn decompose_3tree(g: &PlaneGraph, c: &Triangle) -> Option<StackDecomposition> {
    if !g.bounds_outer(c) {
        return None;
    }
    let n = g.vertex_count();
    if g.edge_count() != 3 * n - 6 {
        return None;
    }
    let inside: Vec<Vertex> = g.vertices().filter(|&v| !c.contains(v)).collect();
    decompose_in(g, c, &inside)
}

fn decompose_in(g: &PlaneGraph, c: &Triangle, inside: &[Vertex]) -> Option<StackDecomposition> {
    if inside.is_empty() {
        return Some(StackDecomposition { root: *c, tip: None, children: Vec::new() });
    }
    let mut tips = inside.iter().copied().filter(|&w| c.0.iter().all(|&u| g.has_edge(u, w)));
    let v = tips.next()?;
    if tips.next().is_some() {
        return None;
    }
    let [a, b, d] = c.0;
    let inside_set: BTreeSet<Vertex> = inside.iter().copied().collect();
    let mut children = Vec::with_capacity(3);
    let mut covered = 1;
    for k in [Triangle::new(a, b, v), Triangle::new(a, d, v), Triangle::new(b, d, v)] {
        let sub = g.interior_vertices(&k).ok()?;
        if !sub.iter().all(|w| inside_set.contains(w)) {
            return None;
        }
        covered += sub.len();
        children.push(decompose_in(g, &k, &sub)?);
    }
    if covered != inside.len() {
        return None;
    }
    Some(StackDecomposition { root: *c, tip: Some(v), children })
}

fn others(k: &Triangle, r: Vertex) -> (Vertex, Vertex) {
    let mut it = k.0.into_iter().filter(|&u| u != r);
    (it.next().unwrap(), it.next().unwrap())
}

fn list_equals(list: &[Color], colors: &BTreeSet<Color>) -> bool {
    list.iter().copied().collect::<BTreeSet<_>>() == *colors
}

/// Extends `phi` (colored on the root of `dec`) to the whole 3-tree. `r` is
/// a root vertex; the tip gets a color avoiding the root colors when its list
/// allows, otherwise the strip of x,y-common tips is colored like `r`.
pub fn fill_3tree(dec: &StackDecomposition, lists: &Lists, phi: &mut Coloring, r: Vertex, t: usize) -> Result<(), SolveError> {
    let Some(v) = dec.tip else { return Ok(()) };
    let (x, y) = others(&dec.root, r);
    let boundary: BTreeSet<Color> = [r, x, y].iter().filter_map(|&u| phi[u]).collect();
    if let Some(&col) = lists[v].iter().find(|c| !boundary.contains(c)) {
        phi[v] = Some(col);
        for child in &dec.children {
            fill_3tree(child, lists, phi, v, t)?;
        }
        return Ok(());
    }
    let mut node = dec;
    let mut path = vec![r];
    loop {
        let p = node.tip.expect("strip nodes have tips");
        let prev = *path.last().unwrap();
        path.push(p);
        if path.len() >= t {
            return Err(SolveError::PwordPresent(PwordEmbedding { u: x.min(y), v: x.max(y), path }));
        }
        phi[p] = phi[r];
        for k in [Triangle::new(x, prev, p), Triangle::new(y, prev, p)] {
            fill_3tree(node.child(&k).expect("child triangle"), lists, phi, p, t)?;
        }
        let next = node.child(&Triangle::new(x, y, p)).expect("child triangle");
        match next.tip {
            Some(z) if list_equals(&lists[z], &boundary) => node = next,
            _ => return fill_3tree(next, lists, phi, p, t),
        }
    }
}

/// Colors the rooted planar 3-tree `g` with root `c`, extending `psi` on
/// `V(c)`.
pub fn color_3tree(g: &PlaneGraph, c: &Triangle, lists: &Lists, psi: &Precoloring, r: Vertex, t: usize) -> Result<Coloring, SolveError> {
    let dec = decompose_3tree(g, c).ok_or(SolveError::NotA3Tree(*c))?;
    let mut phi = vec![None; g.capacity()];
    for u in c.0 {
        phi[u] = Some(*psi.get(&u).ok_or(SolveError::PrecoloringIncomplete(u))?);
    }
    fill_3tree(&dec, lists, &mut phi, r, t)?;
    Ok(phi)
}

/// The two possible outcomes for a 3-tree coloring: `V(c)` is isolated, or
/// `c` is 3-colored, the tip's list is exactly those colors, `V(c) - r` is
/// isolated and the cluster of `r` has fewer than `t` vertices.
pub fn stack_outcome_holds(g: &PlaneGraph, c: &Triangle, lists: &Lists, r: Vertex, t: usize, phi: &[Option<Color>]) -> bool {
    let all: BTreeSet<Vertex> = c.0.into_iter().collect();
    if isolates(g, phi, &all) {
        return true;
    }
    let colors: BTreeSet<Color> = c.0.iter().filter_map(|&u| phi[u]).collect();
    let Some(tip) = g.vertices().find(|&w| !c.contains(w) && c.0.iter().all(|&u| g.has_edge(u, w))) else {
        return false;
    };
    let rest: BTreeSet<Vertex> = c.0.into_iter().filter(|&u| u != r).collect();
    colors.len() == 3 && list_equals(&lists[tip], &colors) && isolates(g, phi, &rest) && cluster_size_of(g, phi, r) < t
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointerSystem {
    /// Face id to its representative vertex.
    pub pointer: BTreeMap<usize, Vertex>,
    pub thickness: usize,
}

/// Repeatedly removes a vertex of minimum degree (ties: smallest id).
pub fn degeneracy_order(g: &PlaneGraph) -> Vec<Vertex> {
    let mut deg: Vec<usize> = (0..g.capacity()).map(|v| g.degree(v)).collect();
    let mut queue: BTreeSet<(usize, Vertex)> = g.vertices().map(|v| (deg[v], v)).collect();
    let mut removed = vec![false; g.capacity()];
    let mut order = Vec::with_capacity(queue.len());
    while let Some((_, v)) = queue.pop_first() {
        removed[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                queue.remove(&(deg[w], w));
                deg[w] -= 1;
                queue.insert((deg[w], w));
            }
        }
    }
    order
}

/// Points each face of `faces` at its earliest incident vertex outside `x`
/// in the degeneracy order.
pub fn build_pointer_system(g: &PlaneGraph, faces: &[usize], x: &BTreeSet<Vertex>) -> Result<PointerSystem, SolveError> {
    let order = degeneracy_order(g);
    let mut rank = vec![usize::MAX; g.capacity()];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let mut pointer = BTreeMap::new();
    let mut load: BTreeMap<Vertex, usize> = BTreeMap::new();
    for &f in faces {
        let r = g.face(f).vertex_set().into_iter().filter(|v| !x.contains(v)).min_by_key(|&v| rank[v]);
        let r = r.ok_or(SolveError::AllIncidentVerticesPrecolored(f))?;
        pointer.insert(f, r);
        *load.entry(r).or_default() += 1;
    }
    let thickness = load.values().copied().max().unwrap_or(0);
    Ok(PointerSystem { pointer, thickness })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PyramidalColoring {
    pub coloring: Coloring,
    pub nocut: NocutColoring,
    /// Triangles whose disks were excised and refilled.
    pub disks: Vec<Triangle>,
    pub thickness: usize,
    /// `(12 + 2|X|) * t * nocut.bound`, or `nocut.bound` without disks.
    pub bound: u64,
}

/// Colors a graph in which every X-external non-facial triangle is
/// X-pyramidal: excises the maximal disks, colors the rest, then refills
/// each disk as a 3-tree rooted at its pointer vertex.
pub fn color_pyramidal(g: &PlaneGraph, lists: &Lists, psi: &Precoloring, t: usize, cfg: &Config) -> Result<PyramidalColoring, SolveError> {
    let x: BTreeSet<Vertex> = x_set(psi).into_iter().filter(|&v| g.is_alive(v)).collect();
    let mut candidates: Vec<(Triangle, BTreeSet<Vertex>)> = Vec::new();
    for k in g.triangles() {
        if k.0.iter().all(|v| x.contains(v)) || g.is_facial(&k) {
            continue;
        }
        let flags = classify_triangle(g, &x, &k)?;
        if !flags.x_pyramidal {
            return Err(SolveError::HypothesesViolated(format!("triangle {:?} is not X-pyramidal", k.0)));
        }
        candidates.push((k, g.interior_vertices(&k)?.into_iter().collect()));
    }
    let mut disks: Vec<(Triangle, BTreeSet<Vertex>)> = Vec::new();
    for (i, (k, inside)) in candidates.iter().enumerate() {
        let dominated = candidates.iter().enumerate().any(|(j, (_, other))| {
            j != i && inside.is_subset(other) && (inside.len() < other.len() || j < i)
        });
        if !dominated {
            disks.push((*k, inside.clone()));
        }
    }
    let removed: Vec<Vertex> = disks.iter().flat_map(|(_, s)| s.iter().copied()).collect();
    debug_assert_eq!(removed.iter().collect::<BTreeSet<_>>().len(), removed.len(), "maximal disks overlap");
    let g0 = g.delete_vertices(&removed);
    let psi0: Precoloring = psi.iter().filter(|(v, _)| g0.is_alive(**v)).map(|(&v, &c)| (v, c)).collect();
    let nocut = color_no_nonfacial(&g0, lists, &psi0, t, cfg)?;
    let faces: Vec<usize> = disks.iter().map(|(k, _)| g0.disk_face(k).expect("excised disk is a face")).collect();
    let ps = build_pointer_system(&g0, &faces, &x)?;
    let mut phi = nocut.coloring.clone();
    for ((k, _), f) in disks.iter().zip(&faces) {
        let sub = g.interior_subgraph(k)?;
        let dec = decompose_3tree(&sub, k).ok_or(SolveError::NotA3Tree(*k))?;
        fill_3tree(&dec, lists, &mut phi, ps.pointer[f], t)?;
    }
    let bound = if disks.is_empty() { nocut.bound } else { (12 + 2 * x.len() as u64) * t as u64 * nocut.bound };
    Ok(PyramidalColoring {
        coloring: phi,
        nocut,
        disks: disks.into_iter().map(|(k, _)| k).collect(),
        thickness: ps.thickness,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli_io::gen;
    use crate::color_core::{clustering, respects, uniform_lists};

    fn outer(g: &PlaneGraph) -> Triangle {
        let f = g.outer_face().unwrap();
        let w = g.face(f).walk();
        Triangle::new(w[0], w[1], w[2])
    }

    #[test]
    fn decompositions() {
        let c = Triangle::new(0, 1, 2);
        let leaf = decompose_3tree(&gen::triangle(), &c).unwrap();
        assert_eq!(leaf.tip, None);
        let k4 = decompose_3tree(&gen::k4(), &c).unwrap();
        assert_eq!(k4.tip, Some(3));
        assert!(k4.children.iter().all(|d| d.tip.is_none()));
        let oct = gen::octahedron();
        assert!(decompose_3tree(&oct, &outer(&oct)).is_none());
        let g = gen::complete_3tree(3);
        let d = decompose_3tree(&g, &c).unwrap();
        assert_eq!(d.size(), 3 + 13);
        assert_eq!(d.tips().len(), 13);
        fn leaf_depths(d: &StackDecomposition, depth: usize, out: &mut Vec<usize>) {
            if d.tip.is_none() {
                out.push(depth);
            }
            for c in &d.children {
                leaf_depths(c, depth + 1, out);
            }
        }
        let mut depths = Vec::new();
        leaf_depths(&d, 0, &mut depths);
        assert_eq!(depths, vec![3; 27]);
    }

    #[test]
    fn k4_strip_case() {
        let g = gen::k4();
        let c = Triangle::new(0, 1, 2);
        let psi: Precoloring = [(0, 1), (1, 2), (2, 3)].into();
        let lists = uniform_lists(4);
        let phi = color_3tree(&g, &c, &lists, &psi, 0, 3).unwrap();
        assert_eq!(phi[3], Some(1));
        assert_eq!(clustering(&g, &phi), 2);
        assert!(stack_outcome_holds(&g, &c, &lists, 0, 3, &phi));
        assert!(!isolates(&g, &phi, &[0, 1, 2].into()));
    }

    #[test]
    fn k4_avoiding_color() {
        let g = gen::k4();
        let c = Triangle::new(0, 1, 2);
        let psi: Precoloring = [(0, 1), (1, 2), (2, 3)].into();
        let mut lists = uniform_lists(4);
        lists[3] = vec![1, 2, 4];
        let phi = color_3tree(&g, &c, &lists, &psi, 0, 3).unwrap();
        assert_eq!(phi[3], Some(4));
        assert!(isolates(&g, &phi, &[0, 1, 2].into()));
    }

    #[test]
    fn long_strip_is_a_pword() {
        let g = gen::complete_3tree(4);
        let c = Triangle::new(0, 1, 2);
        let psi: Precoloring = [(0, 1), (1, 2), (2, 3)].into();
        let err = color_3tree(&g, &c, &uniform_lists(g.capacity()), &psi, 0, 3).unwrap_err();
        let SolveError::PwordPresent(emb) = err else { panic!("expected a P''_t") };
        assert!(emb.is_valid_in(&g));
        assert_eq!(emb.path.len(), 3);
    }

    #[test]
    fn pointer_systems() {
        let oct = gen::octahedron();
        let all: Vec<usize> = (0..oct.faces().len()).collect();
        let ps = build_pointer_system(&oct, &all, &BTreeSet::new()).unwrap();
        assert!(ps.thickness <= 4);
        let one = build_pointer_system(&oct, &[0], &BTreeSet::new()).unwrap();
        assert_eq!(one.thickness, 1);
        let f = oct.face(0).vertex_set();
        assert!(matches!(build_pointer_system(&oct, &[0], &f), Err(SolveError::AllIncidentVerticesPrecolored(0))));
    }

    #[test]
    fn pyramidal_double_stack() {
        // K4 with a vertex stacked into face 0,1,3
        let g = gen::stacked_from(&[[0, 1, 2], [0, 1, 3]]);
        let psi: Precoloring = [(0, 1), (1, 2), (2, 3)].into();
        let lists = uniform_lists(g.capacity());
        let out = color_pyramidal(&g, &lists, &psi, 3, &Config::default()).unwrap();
        assert_eq!(out.disks, vec![Triangle::new(0, 1, 3)]);
        assert!(respects(&g, &lists, &psi, &out.coloring));
        assert!(clustering(&g, &out.coloring) as u64 <= out.bound);
    }
}
