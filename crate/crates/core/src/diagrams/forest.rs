use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{hopf, Diagram, GaussCode};
use crate::error::{Error, Result};

/// Simple graph on vertices `0..vertex_count` with a clasp sign per edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize, i8)>,
}

impl ForestGraph {
    /// Edges are normalized to `(min, max, sign)`; loops, repeated edges and
    /// signs other than ±1 are rejected.
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize, i8)>) -> Result<ForestGraph> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for (a, b, s) in edges {
            if a >= vertex_count || b >= vertex_count {
                return Err(Error::BadGraph(format!("edge ({a},{b}) outside 0..{vertex_count}")));
            }
            if a == b {
                return Err(Error::BadGraph(format!("loop at vertex {a}")));
            }
            if s != 1 && s != -1 {
                return Err(Error::BadGraph(format!("edge sign {s} is not ±1")));
            }
            let e = (a.min(b), a.max(b));
            if !seen.insert(e) {
                return Err(Error::BadGraph(format!("repeated edge ({},{})", e.0, e.1)));
            }
            out.push((e.0, e.1, s));
        }
        Ok(ForestGraph { vertex_count, edges: out })
    }

    /// All edges positive.
    pub fn unsigned(vertex_count: usize, edges: &[(usize, usize)]) -> Result<ForestGraph> {
        ForestGraph::new(vertex_count, edges.iter().map(|&(a, b)| (a, b, 1)).collect())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize, i8)] {
        &self.edges
    }

    /// Sorted `(min, max)` pairs, forgetting signs.
    pub fn edge_set(&self) -> BTreeSet<(usize, usize)> {
        self.edges.iter().map(|&(a, b, _)| (a, b)).collect()
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(a, b, _) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Vertex sets of connected components, each sorted, ordered by least vertex.
    pub fn trees(&self) -> Vec<Vec<usize>> {
        let adj = self.neighbors();
        let mut seen = vec![false; self.vertex_count];
        let mut out = Vec::new();
        for s in 0..self.vertex_count {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut verts = vec![];
            while let Some(x) = stack.pop() {
                verts.push(x);
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            verts.sort_unstable();
            out.push(verts);
        }
        out
    }

    pub fn is_forest(&self) -> bool {
        self.edges.len() + self.trees().len() == self.vertex_count
    }

    /// A shortest cycle, written from its least vertex towards the smaller
    /// neighbour; among shortest cycles the lexicographically least.
    pub fn shortest_cycle(&self) -> Option<Vec<usize>> {
        let adj = self.neighbors();
        let n = self.vertex_count;
        // girth by breadth-first search from every root
        let mut girth = usize::MAX;
        for root in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        queue.push_back(y);
                    } else if parent[x] != y {
                        girth = girth.min(dist[x] + dist[y] + 1);
                    }
                }
            }
        }
        if girth == usize::MAX {
            return None;
        }
        for s in 0..n {
            let mut path = vec![s];
            if extend_cycle(&adj, girth, &mut path) {
                return Some(path);
            }
        }
        None
    }
}

/// Depth-first search in increasing vertex order for a cycle of exactly
/// `len` vertices through `path[0]`, using only larger vertices.
fn extend_cycle(adj: &[Vec<usize>], len: usize, path: &mut Vec<usize>) -> bool {
    let s = path[0];
    let last = *path.last().unwrap();
    if path.len() == len {
        return adj[last].contains(&s) && path[1] < path[len - 1];
    }
    for &y in &adj[last] {
        if y > s && !path.contains(&y) {
            path.push(y);
            if extend_cycle(adj, len, path) {
                return true;
            }
            path.pop();
        }
    }
    false
}

/// Unknots at the vertices, one Hopf clasp per edge; component `i` is vertex `i`.
///
/// Each tree is grown depth-first from its least vertex by connected sums
/// with Hopf links of the edge's sign; the trees are then placed side by side.
pub fn forest_link(g: &ForestGraph) -> Result<Diagram> {
    if let Some(cycle) = g.shortest_cycle() {
        return Err(Error::NotAForest(cycle));
    }
    let mut sign = std::collections::HashMap::new();
    for &(a, b, s) in &g.edges {
        sign.insert((a, b), s);
        sign.insert((b, a), s);
    }
    let adj = g.neighbors();
    let mut total = GaussCode { signs: vec![], comps: vec![], basepoints: Default::default() };
    // vertex carried by each component of `total`
    let mut order: Vec<usize> = Vec::with_capacity(g.vertex_count);
    for tree in g.trees() {
        let root = tree[0];
        let mut code = GaussCode { signs: vec![], comps: vec![vec![]], basepoints: Default::default() };
        let mut local = vec![root];
        let mut stack = vec![(root, usize::MAX)];
        let mut visit = Vec::new();
        // pre-order traversal, children in increasing order
        while let Some((x, from)) = stack.pop() {
            if from != usize::MAX {
                visit.push((from, x));
            }
            for &y in adj[x].iter().rev() {
                if y != from {
                    stack.push((y, x));
                }
            }
        }
        for (p, c) in visit {
            let at = local.iter().position(|&v| v == p).unwrap();
            code = code.connected_sum(at, &hopf(sign[&(p, c)]).gauss(), 0);
            local.push(c);
        }
        total = total.disjoint_union(&code);
        order.extend(local);
    }
    let mut perm = vec![0; g.vertex_count];
    for (k, &v) in order.iter().enumerate() {
        perm[v] = k;
    }
    Ok(total.permuted(&perm).to_diagram())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_validation() {
        assert!(ForestGraph::unsigned(2, &[(0, 0)]).is_err());
        assert!(ForestGraph::unsigned(2, &[(0, 1), (1, 0)]).is_err());
        assert!(ForestGraph::unsigned(2, &[(0, 2)]).is_err());
    }

    #[test]
    fn shortest_cycle_is_lexicographic() {
        let g = ForestGraph::unsigned(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (4, 1)]).unwrap();
        assert_eq!(g.shortest_cycle(), Some(vec![1, 2, 4]));
        let sq = ForestGraph::unsigned(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(sq.shortest_cycle(), Some(vec![0, 1, 2, 3]));
        assert!(matches!(forest_link(&sq), Err(Error::NotAForest(_))));
    }

    #[test]
    fn forest_link_linking_matches_edges() {
        let g = ForestGraph::new(5, vec![(0, 3, 1), (3, 1, -1), (3, 4, 1)]).unwrap();
        let d = forest_link(&g).unwrap();
        assert_eq!(d.component_count(), 5);
        let lk = d.linking_matrix();
        assert_eq!(lk.get(0, 3), 1);
        assert_eq!(lk.get(1, 3), -1);
        assert_eq!(lk.get(3, 4), 1);
        assert_eq!(lk.get(0, 1), 0);
        assert_eq!(lk.get(2, 3), 0);
    }

    #[test]
    fn single_vertex_is_unknot() {
        let d = forest_link(&ForestGraph::unsigned(1, &[]).unwrap()).unwrap();
        assert_eq!((d.component_count(), d.crossing_count()), (1, 0));
    }
}
