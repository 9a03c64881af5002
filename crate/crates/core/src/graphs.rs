//! Small multigraphs: blocks, the allowed block shapes, and `K4/e` minors.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{self, Mask};
use crate::budget::{BudgetExceeded, Meter};
use crate::matroid::CircuitMatroid;

/// Edge limit for the exhaustive `K4/e` minor search.
pub const K4E_EDGE_LIMIT: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {edge} uses vertex {vertex} but the graph has {n} vertices")]
    BadVertex { edge: usize, vertex: usize, n: usize },
    #[error("{edges} edges exceed the limit {cap}")]
    TooLarge { edges: usize, cap: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

/// Loops and parallel edges allowed; edges are identified by position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BlockKind {
    Bridge,
    Circuit,
    SubdivisionOfA(usize),
    Other,
}

impl MultiGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<MultiGraph, GraphError> {
        for (i, &(u, v)) in edges.iter().enumerate() {
            if let Some(&bad) = [u, v].iter().find(|&&x| x >= n) {
                return Err(GraphError::BadVertex {
                    edge: i,
                    vertex: bad,
                    n,
                });
            }
        }
        Ok(MultiGraph { n, edges })
    }

    /// Two vertices joined by `t` parallel edges.
    pub fn parallel(t: usize) -> MultiGraph {
        MultiGraph::new(2, vec![(0, 1); t]).expect("valid")
    }

    pub fn cycle(len: usize) -> MultiGraph {
        MultiGraph::new(len, (0..len).map(|i| (i, (i + 1) % len)).collect()).expect("valid")
    }

    pub fn complete(k: usize) -> MultiGraph {
        let mut e = Vec::new();
        for u in 0..k {
            for v in u + 1..k {
                e.push((u, v));
            }
        }
        MultiGraph::new(k, e).expect("valid")
    }

    /// `K4` with one edge contracted: a triangle with two of its sides doubled.
    pub fn k4_minus_contracted_edge() -> MultiGraph {
        MultiGraph::new(3, vec![(0, 2), (0, 1), (1, 2), (0, 1), (1, 2)]).expect("valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Replaces edge `e = uv` by a path `u w v` through a new vertex.
    pub fn subdivide(&self, e: usize) -> MultiGraph {
        let (u, v) = self.edges[e];
        let w = self.n;
        let mut edges = self.edges.clone();
        edges[e] = (u, w);
        edges.push((w, v));
        MultiGraph { n: self.n + 1, edges }
    }

    /// Parses `u v` edge lines; the vertex count is one more than the largest index.
    pub fn parse(text: &str) -> Result<MultiGraph, GraphError> {
        let mut edges = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let nums: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
            match nums {
                Ok(v) if v.len() == 2 => edges.push((v[0], v[1])),
                _ => {
                    return Err(GraphError::Parse {
                        line: i + 1,
                        message: format!("expected `u v`, got {line:?}"),
                    })
                }
            }
        }
        let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
        MultiGraph::new(n, edges)
    }

    fn degrees_of(&self, edge_ids: &[usize]) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &e in edge_ids {
            let (u, v) = self.edges[e];
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.degrees_of(&(0..self.edges.len()).collect::<Vec<_>>())
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut parent: Vec<usize> = (0..self.n).collect();
        for &(u, v) in &self.edges {
            let (a, b) = (root(&mut parent, u), root(&mut parent, v));
            parent[a] = b;
        }
        let r = root(&mut parent, 0);
        (0..self.n).all(|x| root(&mut parent, x) == r)
    }

    /// Edge sets of the blocks; every loop is a block of its own.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.n];
        let mut out = Vec::new();
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            if u == v {
                out.push(vec![id]);
            } else {
                adj[u].push((v, id));
                adj[v].push((u, id));
            }
        }
        let mut st = DfsState {
            disc: vec![usize::MAX; self.n],
            low: vec![0; self.n],
            time: 0,
            stack: Vec::new(),
        };
        for s in 0..self.n {
            if st.disc[s] == usize::MAX {
                block_dfs(&adj, s, usize::MAX, &mut st, &mut out);
            }
        }
        for b in &mut out {
            b.sort_unstable();
        }
        out.sort();
        out
    }

    /// Shape of the subgraph formed by `edge_ids` (assumed to be a block).
    pub fn block_kind(&self, edge_ids: &[usize]) -> BlockKind {
        if edge_ids.len() == 1 {
            let (u, v) = self.edges[edge_ids[0]];
            return if u == v { BlockKind::Circuit } else { BlockKind::Bridge };
        }
        let deg = self.degrees_of(edge_ids);
        if deg.iter().all(|&d| d == 0 || d == 2) {
            return BlockKind::Circuit;
        }
        match self.sub(edge_ids).is_subdivision_of_at() {
            Some(t) => BlockKind::SubdivisionOfA(t),
            None => BlockKind::Other,
        }
    }

    fn sub(&self, edge_ids: &[usize]) -> MultiGraph {
        MultiGraph {
            n: self.n,
            edges: edge_ids.iter().map(|&e| self.edges[e]).collect(),
        }
    }

    /// `Some(t)` when the graph, ignoring isolated vertices, consists of
    /// `t >= 3` internally disjoint paths between two branch vertices.
    pub fn is_subdivision_of_at(&self) -> Option<usize> {
        if self.edges.iter().any(|&(u, v)| u == v) {
            return None;
        }
        let deg = self.degrees();
        let branch: Vec<usize> = (0..self.n).filter(|&x| deg[x] >= 3).collect();
        if branch.len() != 2 || deg[branch[0]] != deg[branch[1]] {
            return None;
        }
        if deg.iter().any(|&d| d != 0 && d != 2 && d < 3) {
            return None;
        }
        let (u, v) = (branch[0], branch[1]);
        let t = deg[u];
        let mut used = vec![false; self.edges.len()];
        let mut paths = 0;
        for start in 0..self.edges.len() {
            let (a, b) = self.edges[start];
            if used[start] || (a != u && b != u) {
                continue;
            }
            // walk from u along degree-2 vertices
            let mut cur = if a == u { b } else { a };
            used[start] = true;
            while cur != u && cur != v {
                let next = (0..self.edges.len()).find(|&e| {
                    !used[e] && (self.edges[e].0 == cur || self.edges[e].1 == cur)
                })?;
                used[next] = true;
                let (x, y) = self.edges[next];
                cur = if x == cur { y } else { x };
            }
            if cur != v {
                return None;
            }
            paths += 1;
        }
        (paths == t && used.iter().all(|&x| x) && t >= 3).then_some(t)
    }

    /// Every block is a bridge, a circuit, or a subdivision of some `A_t`.
    pub fn blocks_allowed(&self) -> bool {
        self.blocks()
            .iter()
            .all(|b| self.block_kind(b) != BlockKind::Other)
    }

    /// Exhaustive delete/contract search for a `K4/e` graph minor.
    pub fn has_k4e_graph_minor(&self, meter: &mut Meter) -> Result<bool, GraphError> {
        let m = self.edges.len();
        if m > K4E_EDGE_LIMIT {
            return Err(GraphError::TooLarge {
                edges: m,
                cap: K4E_EDGE_LIMIT,
            });
        }
        for keep in bits::k_subsets(m, 5) {
            let rest = bits::elements(bits::full(m) & !keep);
            let kept = bits::elements(keep);
            for choice in 0u64..(1 << rest.len()) {
                meter.tick()?;
                let mut parent: Vec<usize> = (0..self.n).collect();
                for (i, &e) in rest.iter().enumerate() {
                    if choice & (1 << i) != 0 {
                        let (a, b) = self.edges[e];
                        let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
                        parent[ra] = rb;
                    }
                }
                if is_k4e(&kept.iter().map(|&e| {
                    let (a, b) = self.edges[e];
                    (root(&mut parent, a), root(&mut parent, b))
                }).collect::<Vec<_>>())
                {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// The cycle matroid: circuits are the edge sets of cycles (loops included).
    pub fn cycle_matroid(&self) -> CircuitMatroid {
        let m = self.edges.len();
        assert!(m <= 20, "cycle enumeration is exhaustive over edge subsets");
        let mut circuits: Vec<Mask> = Vec::new();
        for set in 1u64..(1 << m) {
            let ids = bits::elements(set);
            let deg = self.degrees_of(&ids);
            if deg.iter().any(|&d| d != 0 && d != 2) {
                continue;
            }
            let sub = self.sub(&ids);
            let touched: Vec<usize> = (0..self.n).filter(|&x| deg[x] > 0).collect();
            let mut parent: Vec<usize> = (0..self.n).collect();
            for &(u, v) in &sub.edges {
                let (a, b) = (root(&mut parent, u), root(&mut parent, v));
                parent[a] = b;
            }
            let r = root(&mut parent, touched[0]);
            if touched.iter().all(|&x| root(&mut parent, x) == r) {
                circuits.push(set);
            }
        }
        CircuitMatroid::new(m, circuits).expect("cycles of a graph form a matroid")
    }

    /// Canonical representative of the isomorphism class (vertex relabelling).
    pub fn canonical_form(&self) -> MultiGraph {
        let colours = refine_colours(self);
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut keys: Vec<u64> = colours.clone();
        keys.sort_unstable();
        keys.dedup();
        for k in keys {
            classes.push((0..self.n).filter(|&x| colours[x] == k).collect());
        }
        let mut best: Option<Vec<(usize, usize)>> = None;
        let mut relabel = vec![0usize; self.n];
        canon_rec(self, &classes, 0, 0, &mut relabel, &mut best);
        MultiGraph {
            n: self.n,
            edges: best.unwrap_or_default(),
        }
    }
}

struct DfsState {
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    stack: Vec<usize>,
}

fn block_dfs(
    adj: &[Vec<(usize, usize)>],
    u: usize,
    parent_edge: usize,
    st: &mut DfsState,
    out: &mut Vec<Vec<usize>>,
) {
    st.disc[u] = st.time;
    st.low[u] = st.time;
    st.time += 1;
    for &(v, id) in &adj[u] {
        if id == parent_edge {
            continue;
        }
        if st.disc[v] == usize::MAX {
            st.stack.push(id);
            block_dfs(adj, v, id, st, out);
            st.low[u] = st.low[u].min(st.low[v]);
            if st.low[v] >= st.disc[u] {
                let mut block = Vec::new();
                while let Some(e) = st.stack.pop() {
                    block.push(e);
                    if e == id {
                        break;
                    }
                }
                out.push(block);
            }
        } else if st.disc[v] < st.disc[u] {
            st.stack.push(id);
            st.low[u] = st.low[u].min(st.disc[v]);
        }
    }
}

fn root(p: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while p[r] != r {
        r = p[r];
    }
    let mut y = x;
    while p[y] != r {
        let n = p[y];
        p[y] = r;
        y = n;
    }
    r
}

/// Three vertices, no loops, pair multiplicities {1, 2, 2}.
fn is_k4e(edges: &[(usize, usize)]) -> bool {
    if edges.iter().any(|&(a, b)| a == b) {
        return false;
    }
    let mut verts: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    verts.sort_unstable();
    verts.dedup();
    if verts.len() != 3 {
        return false;
    }
    let mut pairs: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    pairs.sort_unstable();
    let mut mult: Vec<usize> = pairs
        .chunk_by(|x, y| x == y)
        .map(|c| c.len())
        .collect();
    mult.sort_unstable();
    mult == [1, 2, 2]
}

fn refine_colours(g: &MultiGraph) -> Vec<u64> {
    let n = g.n;
    let mut colour: Vec<u64> = (0..n)
        .map(|x| {
            let loops = g.edges.iter().filter(|&&(a, b)| a == x && b == x).count() as u64;
            let deg = g.edges.iter().filter(|&&(a, b)| a == x || b == x).count() as u64;
            deg * 64 + loops
        })
        .collect();
    loop {
        let sigs: Vec<(u64, Vec<u64>)> = (0..n)
            .map(|x| {
                let mut nb: Vec<u64> = g
                    .edges
                    .iter()
                    .filter_map(|&(a, b)| {
                        if a == x && b != x {
                            Some(colour[b])
                        } else if b == x && a != x {
                            Some(colour[a])
                        } else {
                            None
                        }
                    })
                    .collect();
                nb.sort_unstable();
                (colour[x], nb)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<u64> = sigs
            .iter()
            .map(|s| distinct.binary_search(s).expect("present") as u64)
            .collect();
        let before = {
            let mut c = colour.clone();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        if distinct.len() == before {
            return next;
        }
        colour = next;
    }
}

fn canon_rec(
    g: &MultiGraph,
    classes: &[Vec<usize>],
    ci: usize,
    offset: usize,
    relabel: &mut Vec<usize>,
    best: &mut Option<Vec<(usize, usize)>>,
) {
    if ci == classes.len() {
        let mut e: Vec<(usize, usize)> = g
            .edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (relabel[a], relabel[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        e.sort_unstable();
        if best.as_ref().is_none_or(|b| e < *b) {
            *best = Some(e);
        }
        return;
    }
    let class = &classes[ci];
    for p in bits::permutations(class.len()) {
        for (i, &v) in class.iter().enumerate() {
            relabel[v] = offset + p[i];
        }
        canon_rec(g, classes, ci + 1, offset + class.len(), relabel, best);
    }
}

/// All connected multigraphs (loops and parallel edges allowed) with at most
/// `max_edges` edges, one per isomorphism class, including the single vertex.
pub fn connected_multigraphs(max_edges: usize) -> Vec<MultiGraph> {
    let mut all = Vec::new();
    let mut level = vec![MultiGraph { n: 1, edges: Vec::new() }];
    all.extend(level.iter().cloned());
    for _ in 0..max_edges {
        let mut seen: HashSet<MultiGraph> = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            let mut push = |h: MultiGraph| {
                let c = h.canonical_form();
                if seen.insert(c.clone()) {
                    next.push(c);
                }
            };
            for u in 0..g.n {
                for v in u..g.n {
                    let mut h = g.clone();
                    h.edges.push((u, v));
                    push(h);
                }
                let mut h = g.clone();
                h.edges.push((u, g.n));
                h.n += 1;
                push(h);
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_examples() {
        assert_eq!(MultiGraph::parallel(3).blocks().len(), 1);
        let path = MultiGraph::new(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(path.blocks(), vec![vec![0], vec![1], vec![2]]);
        let bowtie =
            MultiGraph::new(5, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert_eq!(bowtie.blocks(), vec![vec![0, 1, 2], vec![3, 4, 5]]);
        let looped = MultiGraph::new(2, vec![(0, 0), (0, 1)]).unwrap();
        assert_eq!(looped.blocks(), vec![vec![0], vec![1]]);
    }

    #[test]
    fn subdivisions() {
        let g = MultiGraph::parallel(4).subdivide(0);
        assert_eq!(g.is_subdivision_of_at(), Some(4));
        assert_eq!(MultiGraph::cycle(5).is_subdivision_of_at(), None);
        assert_eq!(MultiGraph::complete(4).is_subdivision_of_at(), None);
        assert_eq!(MultiGraph::parallel(2).is_subdivision_of_at(), None);
    }

    #[test]
    fn block_kinds() {
        let g = MultiGraph::parallel(3);
        assert_eq!(g.block_kind(&[0, 1, 2]), BlockKind::SubdivisionOfA(3));
        let c = MultiGraph::cycle(4);
        assert_eq!(c.block_kind(&[0, 1, 2, 3]), BlockKind::Circuit);
        let k4 = MultiGraph::complete(4);
        assert_eq!(k4.block_kind(&[0, 1, 2, 3, 4, 5]), BlockKind::Other);
    }

    #[test]
    fn k4e_minors() {
        let mut m = Meter::unlimited();
        assert!(MultiGraph::k4_minus_contracted_edge().has_k4e_graph_minor(&mut m).unwrap());
        assert!(MultiGraph::complete(4).has_k4e_graph_minor(&mut m).unwrap());
        let a5 = MultiGraph::parallel(5).subdivide(1).subdivide(3);
        assert!(!a5.has_k4e_graph_minor(&mut m).unwrap());
        assert!(a5.blocks_allowed());
    }

    #[test]
    fn cycle_matroid_of_parallel_edges() {
        let m = MultiGraph::parallel(3).cycle_matroid();
        assert_eq!(m.circuits(), crate::matroid::parallel(3).circuits());
        let k4e = MultiGraph::k4_minus_contracted_edge().cycle_matroid();
        assert!(k4e
            .is_isomorphic(&crate::matroid::MatroidTarget::MK4e.matroid())
            .is_some());
    }

    #[test]
    fn small_graph_counts() {
        // connected multigraphs with loops: 1 with no edge, 2 with one edge
        // (loop, bridge), 4 with two edges
        let gs = connected_multigraphs(2);
        let by_edges = |k: usize| gs.iter().filter(|g| g.edges().len() == k).count();
        assert_eq!(by_edges(0), 1);
        assert_eq!(by_edges(1), 2);
        assert_eq!(by_edges(2), 4);
    }

    #[test]
    fn canonical_form_is_invariant() {
        let a = MultiGraph::new(3, vec![(0, 1), (1, 2), (2, 2)]).unwrap();
        let b = MultiGraph::new(3, vec![(0, 0), (0, 1), (1, 2)]).unwrap();
        assert_eq!(a.canonical_form(), b.canonical_form());
    }
}
