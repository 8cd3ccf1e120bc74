//! The zero-divisor graph of Z_n: vertices are the non-zero zero-divisors and
//! two distinct vertices are adjacent when their product vanishes mod n.
//!
//! Construction goes through the gcd classes: `u ~ v` iff `n` divides
//! `gcd(u, n) * gcd(v, n)`, so whole blocks of edges are emitted at once.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfmat::{GfMatrix, PrimeField};
use crate::modring::{class_size_formula, divisor_classes, gcd, Modulus};

/// Graphs with more edges than this are refused.
pub const MAX_EDGES: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZdGraph {
    modulus: Modulus,
    vertices: Vec<u64>,
    edges: Vec<(u64, u64)>,
    class_of: Vec<u64>,
    // per vertex: (neighbour index, edge index), ascending by neighbour
    adjacency: Vec<Vec<(usize, usize)>>,
}

pub fn build_graph(m: &Modulus) -> Result<ZdGraph> {
    let expected_edges = edge_count_formula(m)?;
    if expected_edges > MAX_EDGES {
        return Err(Error::InvalidInput(format!(
            "Z_{} yields {expected_edges} edges, above the supported {MAX_EDGES}",
            m.n()
        )));
    }
    let n = m.n() as u128;
    let classes = divisor_classes(m)?;
    let mut edges = Vec::with_capacity(expected_edges as usize);
    for (i, a) in classes.iter().enumerate() {
        for b in &classes[i..] {
            if !(a.divisor as u128 * b.divisor as u128).is_multiple_of(n) {
                continue;
            }
            if a.divisor == b.divisor {
                for (k, &u) in a.members.iter().enumerate() {
                    for &v in &a.members[k + 1..] {
                        edges.push((u, v));
                    }
                }
            } else {
                for &u in &a.members {
                    for &v in &b.members {
                        edges.push((u.min(v), u.max(v)));
                    }
                }
            }
        }
    }
    edges.sort_unstable();
    debug_assert!(edges
        .iter()
        .all(|&(u, v)| u != v && (u as u128 * v as u128).is_multiple_of(n)));
    let mut vertices: Vec<u64> = classes.into_iter().flat_map(|c| c.members).collect();
    vertices.sort_unstable();
    Ok(ZdGraph::from_edges(m.clone(), vertices, edges))
}

/// Number of edges predicted from class sizes alone: every unordered pair of
/// classes `{d, e}` with `n | d*e` contributes `|A_d| * |A_e|`, and a class
/// with `n | d^2` contributes `C(|A_d|, 2)` internal edges.
pub fn edge_count_formula(m: &Modulus) -> Result<u64> {
    if m.is_prime() {
        return Err(Error::NoZeroDivisors { n: m.n() });
    }
    let n = m.n() as u128;
    let divisors = m.proper_divisors();
    let sizes: Vec<u64> = divisors
        .iter()
        .map(|&d| class_size_formula(m, d))
        .collect::<Result<_>>()?;
    let mut total = 0u64;
    for i in 0..divisors.len() {
        let di = divisors[i] as u128;
        if (di * di).is_multiple_of(n) {
            total += sizes[i] * sizes[i].saturating_sub(1) / 2;
        }
        for j in i + 1..divisors.len() {
            if (di * divisors[j] as u128).is_multiple_of(n) {
                total += sizes[i] * sizes[j];
            }
        }
    }
    if total == 0 {
        return Err(Error::NoEdges { n: m.n() });
    }
    Ok(total)
}

/// Predicted edge connectivity `min (p - 1)` over the primes dividing `n`.
///
/// This is a prediction only. It is wrong for `n = p^2`, where the graph is
/// the complete graph on `p - 1` vertices.
pub fn edge_connectivity_formula(m: &Modulus) -> Result<u64> {
    if m.is_prime() {
        return Err(Error::NoZeroDivisors { n: m.n() });
    }
    if m.n() == 4 {
        return Err(Error::NoEdges { n: 4 });
    }
    Ok(m.primes()
        .map(|p| p - 1)
        .min()
        .expect("composite modulus has a prime factor"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bipartiteness {
    Bipartite {
        left: Vec<u64>,
        right: Vec<u64>,
    },
    /// Closed walk `c[0] - c[1] - ... - c[k-1] - c[0]` of odd length.
    OddCycle(Vec<u64>),
}

impl Bipartiteness {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartiteness::Bipartite { .. })
    }
}

/// A global minimum edge cut: `side` is one shore `W`, `value = q(W, V - W)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinCut {
    pub value: usize,
    pub side: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LambdaMethod {
    Formula,
    Mincut,
    BothAgree,
    Disagree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub is_connected: bool,
    pub is_bipartite: bool,
    pub min_degree: usize,
    /// Edge connectivity computed by maximum flow.
    pub edge_connectivity: usize,
    pub lambda_formula: u64,
    pub lambda_method: LambdaMethod,
    pub min_cut: MinCut,
}

/// Incidence matrix with its row and column labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    pub matrix: GfMatrix,
    pub vertex_order: Vec<u64>,
    pub edge_order: Vec<(u64, u64)>,
}

impl ZdGraph {
    /// Assemble a graph from a sorted vertex list and a sorted list of
    /// normalized edges `(u, v)` with `u < v`.
    pub(crate) fn from_edges(modulus: Modulus, vertices: Vec<u64>, edges: Vec<(u64, u64)>) -> Self {
        let n = modulus.n();
        let class_of = vertices.iter().map(|&v| gcd(v, n)).collect();
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for (j, &(u, v)) in edges.iter().enumerate() {
            let a = vertices
                .binary_search(&u)
                .expect("edge endpoint is a vertex");
            let b = vertices
                .binary_search(&v)
                .expect("edge endpoint is a vertex");
            adjacency[a].push((b, j));
            adjacency[b].push((a, j));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        ZdGraph {
            modulus,
            vertices,
            edges,
            class_of,
            adjacency,
        }
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn vertices(&self) -> &[u64] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(u64, u64)] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn index_of(&self, v: u64) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    /// Divisor class (`gcd(v, n)`) of the vertex at `index`.
    pub fn class_of(&self, index: usize) -> u64 {
        self.class_of[index]
    }

    pub fn degree(&self, index: usize) -> usize {
        self.adjacency[index].len()
    }

    pub fn neighbors(&self, index: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[index].iter().map(|&(w, _)| w)
    }

    pub fn min_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        self.vertices.is_empty() || self.component_of(0).len() == self.vertices.len()
    }

    fn component_of(&self, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        let mut out = Vec::new();
        while let Some(u) = queue.pop_front() {
            out.push(u);
            for w in self.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Two-colouring by breadth-first search, or an odd cycle if none exists.
    pub fn bipartiteness(&self) -> Bipartiteness {
        let nv = self.vertices.len();
        let mut color: Vec<Option<u8>> = vec![None; nv];
        let mut parent = vec![usize::MAX; nv];
        for root in 0..nv {
            if color[root].is_some() {
                continue;
            }
            color[root] = Some(0);
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for w in self.neighbors(u) {
                    match color[w] {
                        None => {
                            color[w] = Some(1 - cu);
                            parent[w] = u;
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => {
                            return Bipartiteness::OddCycle(self.tree_cycle(&parent, u, w));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for (i, c) in color.iter().enumerate() {
            if *c == Some(0) {
                left.push(self.vertices[i]);
            } else {
                right.push(self.vertices[i]);
            }
        }
        Bipartiteness::Bipartite { left, right }
    }

    // Cycle closed by the non-tree edge (u, w) in the BFS forest.
    fn tree_cycle(&self, parent: &[usize], u: usize, w: usize) -> Vec<u64> {
        let ancestors = |mut x: usize| {
            let mut path = vec![x];
            while parent[x] != usize::MAX {
                x = parent[x];
                path.push(x);
            }
            path
        };
        let pu = ancestors(u);
        let pw = ancestors(w);
        // strip the common tail above the lowest common ancestor
        let mut common = 0;
        while common < pu.len().min(pw.len())
            && pu[pu.len() - 1 - common] == pw[pw.len() - 1 - common]
        {
            common += 1;
        }
        let mut cycle: Vec<usize> = pu[..pu.len() - common + 1].to_vec();
        cycle.extend(pw[..pw.len() - common].iter().rev());
        cycle.into_iter().map(|i| self.vertices[i]).collect()
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartiteness().is_bipartite()
    }

    /// `q(W, V - W)`: number of edges with exactly one endpoint in `side`.
    pub fn cut_size(&self, side: &[u64]) -> Result<usize> {
        let member = self.membership(side)?;
        Ok(self
            .edges
            .iter()
            .filter(|&&(u, v)| {
                member[self.index_of(u).unwrap()] != member[self.index_of(v).unwrap()]
            })
            .count())
    }

    fn membership(&self, side: &[u64]) -> Result<Vec<bool>> {
        let mut member = vec![false; self.vertices.len()];
        for &v in side {
            let i = self
                .index_of(v)
                .ok_or_else(|| Error::InvalidInput(format!("{v} is not a vertex")))?;
            member[i] = true;
        }
        Ok(member)
    }

    /// Exact edge connectivity by unit-capacity maximum flow from the first
    /// vertex to every other vertex.
    pub fn min_cut(&self) -> Result<MinCut> {
        let nv = self.vertices.len();
        if nv < 2 {
            return Err(Error::InvalidInput(
                "edge connectivity needs at least two vertices".into(),
            ));
        }
        if !self.is_connected() {
            let side = self
                .component_of(0)
                .into_iter()
                .map(|i| self.vertices[i])
                .collect();
            return Ok(MinCut { value: 0, side });
        }
        // a single vertex of minimum degree is always a candidate cut
        let (v0, best_deg) = (0..nv)
            .map(|i| (i, self.degree(i)))
            .min_by_key(|&(i, d)| (d, i))
            .unwrap();
        let mut best = MinCut {
            value: best_deg,
            side: vec![self.vertices[v0]],
        };
        let mut flow = FlowNetwork::new(self);
        for t in 1..nv {
            if let Some(side) = flow.cut_below(0, t, best.value) {
                best = MinCut {
                    value: side.0,
                    side: side.1.into_iter().map(|i| self.vertices[i]).collect(),
                };
            }
        }
        Ok(best)
    }

    pub fn stats(&self) -> Result<GraphStats> {
        let min_cut = self.min_cut()?;
        let lambda_formula = edge_connectivity_formula(&self.modulus)?;
        let lambda_method = if min_cut.value as u64 == lambda_formula {
            LambdaMethod::BothAgree
        } else {
            LambdaMethod::Disagree
        };
        Ok(GraphStats {
            vertex_count: self.vertex_count(),
            edge_count: self.edge_count(),
            is_connected: self.is_connected(),
            is_bipartite: self.is_bipartite(),
            min_degree: self.min_degree(),
            edge_connectivity: min_cut.value,
            lambda_formula,
            lambda_method,
            min_cut,
        })
    }

    /// `|V| x |E|` incidence matrix over GF(p), vertices ascending and edges
    /// in lexicographic order.
    pub fn incidence_matrix(&self, field: PrimeField) -> IncidenceMatrix {
        let mut matrix = GfMatrix::zeros(field, self.vertex_count(), self.edge_count());
        for (j, &(u, v)) in self.edges.iter().enumerate() {
            matrix.set(self.index_of(u).unwrap(), j, 1);
            matrix.set(self.index_of(v).unwrap(), j, 1);
        }
        IncidenceMatrix {
            matrix,
            vertex_order: self.vertices.clone(),
            edge_order: self.edges.clone(),
        }
    }

    /// Row-space vector supported exactly on the cut edges `E(W, V - W)`.
    ///
    /// Over GF(2) this is the sum of the incidence rows of `W`. For odd `p` the
    /// rows of `W` are combined with sign `+1` on one colour class and `-1` on
    /// the other, which needs the graph to be bipartite.
    pub fn cut_codeword(&self, side: &[u64], field: PrimeField) -> Result<Vec<u8>> {
        let member = self.membership(side)?;
        let inside = member.iter().filter(|&&b| b).count();
        if inside == 0 || inside == self.vertex_count() {
            return Err(Error::InvalidInput(
                "cut side must be a nonempty proper subset".into(),
            ));
        }
        let coefficient: Vec<u8> = if field.is_binary() {
            member.iter().map(|&b| b as u8).collect()
        } else {
            let Bipartiteness::Bipartite { left, .. } = self.bipartiteness() else {
                return Err(Error::Unavailable(format!(
                    "no signed cut vector over GF({}) on a non-bipartite graph",
                    field.p()
                )));
            };
            let on_left = self.membership(&left)?;
            member
                .iter()
                .zip(&on_left)
                .map(|(&m, &l)| match (m, l) {
                    (false, _) => 0,
                    (true, true) => 1,
                    (true, false) => field.neg(1),
                })
                .collect()
        };
        let incidence = self.incidence_matrix(field).matrix;
        let mut word = vec![0u8; self.edge_count()];
        for (i, &c) in coefficient.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (j, v) in incidence.row_support(i) {
                word[j] = field.add(word[j], field.mul(c, v));
            }
        }
        Ok(word)
    }

    /// Graphviz rendering, one edge per line in canonical order.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph zdn {\n");
        for &(u, v) in &self.edges {
            writeln!(out, "  {u} -- {v};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

// Residual network for an undirected unit-capacity graph. Each edge carries a
// flow in {-1, 0, 1}, positive meaning from its smaller to its larger endpoint.
struct FlowNetwork<'g> {
    graph: &'g ZdGraph,
    ends: Vec<(usize, usize)>,
    flow: Vec<i8>,
}

impl<'g> FlowNetwork<'g> {
    fn new(graph: &'g ZdGraph) -> Self {
        let ends = graph
            .edges
            .iter()
            .map(|&(u, v)| (graph.index_of(u).unwrap(), graph.index_of(v).unwrap()))
            .collect();
        FlowNetwork {
            graph,
            ends,
            flow: vec![0; graph.edge_count()],
        }
    }

    fn residual(&self, from: usize, edge: usize) -> i8 {
        if self.ends[edge].0 == from {
            1 - self.flow[edge]
        } else {
            1 + self.flow[edge]
        }
    }

    /// If the maximum `s-t` flow is below `limit`, return it with the source
    /// side of a minimum `s-t` cut.
    fn cut_below(&mut self, s: usize, t: usize, limit: usize) -> Option<(usize, Vec<usize>)> {
        self.flow.iter_mut().for_each(|f| *f = 0);
        let nv = self.graph.vertex_count();
        let mut value = 0;
        loop {
            // BFS over residual arcs, remembering the edge used to reach each vertex
            let mut via = vec![usize::MAX; nv];
            let mut seen = vec![false; nv];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                if u == t {
                    break;
                }
                for &(w, e) in &self.graph.adjacency[u] {
                    if !seen[w] && self.residual(u, e) > 0 {
                        seen[w] = true;
                        via[w] = e;
                        queue.push_back(w);
                    }
                }
            }
            if !seen[t] {
                let side = (0..nv).filter(|&i| seen[i]).collect();
                return Some((value, side));
            }
            let mut x = t;
            while x != s {
                let e = via[x];
                let (a, b) = self.ends[e];
                let from = if a == x { b } else { a };
                self.flow[e] += if from == a { 1 } else { -1 };
                x = from;
            }
            value += 1;
            if value >= limit {
                return None;
            }
        }
    }
}
