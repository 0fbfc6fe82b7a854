//! Oblak's directed graph `D_P` on the cells of a partition, its U-chains,
//! and a DOT rendering.
//!
//! Rows are laid out longest first. Vertex `(u, p, k)` is the `u`-th cell of
//! the `k`-th row of length `p`. A directed path from `a` to `b` means `a > b`
//! in the poset.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write};

use crate::error::{Error, Result};
use crate::partition::Partition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    /// 1-based position within the row.
    pub u: usize,
    /// Length of the row.
    pub p: usize,
    /// 1-based row index among the rows of length `p`, counted top to bottom.
    pub k: usize,
    /// 0-based index of the group of equal parts.
    pub group: usize,
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.u, self.p, self.k)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeFamily {
    /// Top row of one group to the bottom row of the next shorter group.
    Down,
    /// Top row of the shorter group back to the bottom row of the longer one, right aligned.
    UpShift,
    /// From a row to the row directly above it inside a group of equal parts.
    WithinGroup,
    /// Left-to-right edges of an isolated part.
    Isolated,
}

impl EdgeFamily {
    pub const ALL: [EdgeFamily; 4] = [
        EdgeFamily::Down,
        EdgeFamily::UpShift,
        EdgeFamily::WithinGroup,
        EdgeFamily::Isolated,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EdgeFamily::Down => "down",
            EdgeFamily::UpShift => "up_shift",
            EdgeFamily::WithinGroup => "within_group",
            EdgeFamily::Isolated => "isolated",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub family: EdgeFamily,
}

#[derive(Clone, Debug)]
pub struct PosetDp {
    partition: Partition,
    groups: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

impl PosetDp {
    pub fn build(partition: &Partition) -> Result<Self> {
        if partition.is_empty() {
            return Err(Error::EmptyPartition);
        }
        let groups = partition.groups();
        let mut offsets = Vec::with_capacity(groups.len());
        let mut vertices = Vec::with_capacity(partition.total());
        for (group, &(p, count)) in groups.iter().enumerate() {
            offsets.push(vertices.len());
            for k in 1..=count {
                for u in 1..=p {
                    vertices.push(Vertex { u, p, k, group });
                }
            }
        }
        let mut dp = PosetDp {
            partition: partition.clone(),
            groups,
            offsets,
            vertices,
            edges: Vec::new(),
        };
        dp.edges = dp.generate_edges();
        Ok(dp)
    }

    fn generate_edges(&self) -> Vec<Edge> {
        let t = self.groups.len();
        let mut edges = Vec::new();
        let mut push = |from, to, family| edges.push(Edge { from, to, family });
        for i in 0..t {
            let (p, count) = self.groups[i];
            if i + 1 < t {
                let (q, q_count) = self.groups[i + 1];
                for u in 1..=q {
                    push(self.idx(i, u, 1), self.idx(i + 1, u, q_count), EdgeFamily::Down);
                }
                for u in 1..=q {
                    push(
                        self.idx(i + 1, u, 1),
                        self.idx(i, u + p - q, count),
                        EdgeFamily::UpShift,
                    );
                }
            }
            for k in 2..=count {
                for u in 1..=p {
                    push(self.idx(i, u, k), self.idx(i, u, k - 1), EdgeFamily::WithinGroup);
                }
            }
            // neighbours outside the partition count as +inf above and 0 below
            let above_gap = if i == 0 { usize::MAX } else { self.groups[i - 1].0 - p };
            let below_gap = if i + 1 < t { p - self.groups[i + 1].0 } else { p };
            if above_gap > 1 && below_gap > 1 {
                for u in 1..p {
                    push(self.idx(i, u, 1), self.idx(i, u + 1, count), EdgeFamily::Isolated);
                }
            }
        }
        edges
    }

    fn idx(&self, group: usize, u: usize, k: usize) -> usize {
        let p = self.groups[group].0;
        self.offsets[group] + (k - 1) * p + (u - 1)
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self, family: EdgeFamily) -> usize {
        self.edges.iter().filter(|e| e.family == family).count()
    }

    /// Index of the vertex labelled `(u, p, k)`.
    pub fn index_of(&self, u: usize, p: usize, k: usize) -> Option<usize> {
        let group = self.groups.iter().position(|&(q, _)| q == p)?;
        let count = self.groups[group].1;
        ((1..=p).contains(&u) && (1..=count).contains(&k)).then(|| self.idx(group, u, k))
    }

    fn lookup(&self, v: &Vertex) -> Result<usize> {
        self.index_of(v.u, v.p, v.k)
            .ok_or_else(|| Error::VertexNotFound(format!("{v}")))
    }

    /// Out-neighbour lists indexed by vertex.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = alloc::vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            adj[e.from].push(e.to);
        }
        adj
    }

    /// Kahn's algorithm; `None` if the graph has a cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.vertices.len();
        let mut indeg = alloc::vec![0usize; n];
        for e in &self.edges {
            indeg[e.to] += 1;
        }
        let adj = self.adjacency();
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &adj[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Transitive closure, one BFS per vertex.
    pub fn reachability(&self) -> Reachability {
        let n = self.vertices.len();
        let words = n.div_ceil(64);
        let adj = self.adjacency();
        let mut bits = alloc::vec![0u64; n * words];
        let mut queue = VecDeque::new();
        for s in 0..n {
            let row = &mut bits[s * words..(s + 1) * words];
            row[s / 64] |= 1 << (s % 64);
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if row[w / 64] & (1 << (w % 64)) == 0 {
                        row[w / 64] |= 1 << (w % 64);
                        queue.push_back(w);
                    }
                }
            }
        }
        Reachability { n, words, bits }
    }

    /// True iff a directed path joins `a` and `b` in either direction.
    pub fn comparable(&self, a: &Vertex, b: &Vertex) -> Result<bool> {
        let (a, b) = (self.lookup(a)?, self.lookup(b)?);
        let reach = self.reachability();
        Ok(reach.comparable(a, b))
    }

    /// `U_P(p)`: all cells of the rows of length `p` and `p - 1`, plus the
    /// two end cells of every longer row.
    pub fn u_chain(&self, p: usize) -> Result<UChain> {
        if p == 0 || self.partition.count_parts_of_size(p) == 0 {
            return Err(Error::PartAbsent {
                partition: self.partition.clone(),
                p,
            });
        }
        let vertices: Vec<usize> = (0..self.vertices.len())
            .filter(|&i| {
                let v = self.vertices[i];
                v.p == p || v.p + 1 == p || (v.p > p && (v.u == 1 || v.u == v.p))
            })
            .collect();
        Ok(UChain { p, vertices })
    }

    /// Renders the graph in DOT with a fixed layout mirroring the row picture.
    ///
    /// Edge styles: down dashed, up-shift dotted, within-group solid, isolated bold.
    /// Vertices of `highlight` are drawn as boxes.
    pub fn to_dot(&self, highlight: Option<&UChain>) -> String {
        let mut out = String::new();
        let width = self.partition.largest().unwrap_or(0);
        let mut boxed = alloc::vec![false; self.vertices.len()];
        if let Some(chain) = highlight {
            for &v in &chain.vertices {
                boxed[v] = true;
            }
        }
        let _ = writeln!(out, "digraph D_P {{");
        let _ = writeln!(out, "  label=\"D_P for P=({})\";", self.partition);
        let _ = writeln!(out, "  layout=neato;");
        let _ = writeln!(out, "  node [shape=circle, fontsize=8, width=0.3, fixedsize=true];");
        let mut row = 0usize;
        for (i, v) in self.vertices.iter().enumerate() {
            if v.u == 1 && i > 0 {
                row += 1;
            }
            // center each row under the longest one
            let x2 = 2 * v.u + (width - v.p);
            let shape = if boxed[i] { ", shape=box" } else { "" };
            let _ = writeln!(
                out,
                "  v{i} [label=\"{v}\", pos=\"{}.{},-{row}!\"{shape}];",
                x2 / 2,
                if x2 % 2 == 1 { 5 } else { 0 }
            );
        }
        for e in &self.edges {
            let style = match e.family {
                EdgeFamily::Down => "dashed",
                EdgeFamily::UpShift => "dotted",
                EdgeFamily::WithinGroup => "solid",
                EdgeFamily::Isolated => "bold",
            };
            let _ = writeln!(out, "  v{} -> v{} [style={style}];", e.from, e.to);
        }
        out.push_str("}\n");
        out
    }
}

/// Dense transitive closure of a `PosetDp`.
#[derive(Clone, Debug)]
pub struct Reachability {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Reachability {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Directed path from `a` to `b` (reflexive).
    pub fn reaches(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.words + b / 64] & (1 << (b % 64)) != 0
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.reaches(a, b) || self.reaches(b, a)
    }

    pub fn is_chain(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &a)| vertices[i + 1..].iter().all(|&b| self.comparable(a, b)))
    }
}

/// A U-chain of `D_P`, as vertex indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UChain {
    pub p: usize,
    pub vertices: Vec<usize>,
}

impl UChain {
    pub fn cardinality(&self) -> usize {
        self.vertices.len()
    }
}

/// Closed form `p N(p) + (p-1) N(p-1) + 2 sum_{j>p} N(j)`.
pub fn u_cardinality(partition: &Partition, p: usize) -> Result<usize> {
    if p == 0 || partition.count_parts_of_size(p) == 0 {
        return Err(Error::PartAbsent {
            partition: partition.clone(),
            p,
        });
    }
    Ok(partition
        .parts()
        .iter()
        .map(|&x| match x {
            x if x > p => 2,
            x if x + 1 >= p => x,
            _ => 0,
        })
        .sum())
}

/// Part sizes whose U-chain is largest, ascending, together with that size.
pub fn max_u_chains(partition: &Partition) -> Result<(Vec<usize>, usize)> {
    if partition.is_empty() {
        return Err(Error::EmptyPartition);
    }
    let mut best = 0;
    let mut arg = Vec::new();
    for (p, _) in partition.groups().into_iter().rev() {
        let u = u_cardinality(partition, p)?;
        if u > best {
            best = u;
            arg.clear();
        }
        if u == best {
            arg.push(p);
        }
    }
    Ok((arg, best))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    fn figure_partition() -> Partition {
        p(&[6, 4, 4, 3, 3, 2, 2, 1])
    }

    fn edge(d: &PosetDp, a: (usize, usize, usize), b: (usize, usize, usize), f: EdgeFamily) -> Edge {
        Edge {
            from: d.index_of(a.0, a.1, a.2).unwrap(),
            to: d.index_of(b.0, b.1, b.2).unwrap(),
            family: f,
        }
    }

    #[test]
    fn three_one_matches_generic_matrix_picture() {
        let d = PosetDp::build(&p(&[3, 1])).unwrap();
        let labels: Vec<_> = d.vertices().iter().map(|v| (v.u, v.p, v.k)).collect();
        assert_eq!(labels, vec![(1, 3, 1), (2, 3, 1), (3, 3, 1), (1, 1, 1)]);
        let mut expected = vec![
            edge(&d, (1, 3, 1), (2, 3, 1), EdgeFamily::Isolated),
            edge(&d, (2, 3, 1), (3, 3, 1), EdgeFamily::Isolated),
            edge(&d, (1, 3, 1), (1, 1, 1), EdgeFamily::Down),
            edge(&d, (1, 1, 1), (3, 3, 1), EdgeFamily::UpShift),
        ];
        let mut got = d.edges().to_vec();
        let key = |e: &Edge| (e.from, e.to);
        expected.sort_by_key(key);
        got.sort_by_key(key);
        assert_eq!(got, expected);
    }

    #[test]
    fn figure_partition_edge_counts() {
        let d = PosetDp::build(&figure_partition()).unwrap();
        assert_eq!(d.vertex_count(), 25);
        assert_eq!(d.edge_count(EdgeFamily::Down), 10);
        assert_eq!(d.edge_count(EdgeFamily::UpShift), 10);
        assert_eq!(d.edge_count(EdgeFamily::WithinGroup), 9);
        assert_eq!(d.edge_count(EdgeFamily::Isolated), 5);
        assert_eq!(d.edges().len(), 34);
        // isolated edges only on the row of 6
        assert!(d
            .edges()
            .iter()
            .filter(|e| e.family == EdgeFamily::Isolated)
            .all(|e| d.vertices()[e.from].p == 6));
    }

    #[test]
    fn single_row_is_one_chain() {
        let d = PosetDp::build(&p(&[5])).unwrap();
        assert_eq!(d.edges().len(), 4);
        assert!(d.edges().iter().all(|e| e.family == EdgeFamily::Isolated));
        let r = d.reachability();
        assert!(r.is_chain(&(0..5).collect::<Vec<_>>()));
    }

    #[test]
    fn comparability_examples() {
        let d = PosetDp::build(&figure_partition()).unwrap();
        let v = |u, p, k| Vertex { u, p, k, group: 0 };
        assert_eq!(d.comparable(&v(2, 6, 1), &v(1, 2, 1)), Ok(false));
        assert_eq!(d.comparable(&v(3, 4, 2), &v(3, 4, 2)), Ok(true));
        assert!(matches!(
            d.comparable(&v(7, 6, 1), &v(1, 6, 1)),
            Err(Error::VertexNotFound(_))
        ));
        let small = PosetDp::build(&p(&[3, 1])).unwrap();
        assert_eq!(small.comparable(&v(1, 1, 1), &v(3, 3, 1)), Ok(true));
    }

    #[test]
    fn u_chain_values() {
        let q = figure_partition();
        let d = PosetDp::build(&q).unwrap();
        for (part, value) in [(6, 6), (4, 16), (3, 16), (2, 15), (1, 15)] {
            assert_eq!(u_cardinality(&q, part), Ok(value), "p = {part}");
            assert_eq!(d.u_chain(part).unwrap().cardinality(), value, "p = {part}");
        }
        assert!(d.u_chain(5).is_err());
        assert!(u_cardinality(&q, 5).is_err());
    }

    #[test]
    fn max_u_chain_examples() {
        assert_eq!(max_u_chains(&figure_partition()), Ok((vec![3, 4], 16)));
        assert_eq!(max_u_chains(&p(&[7])), Ok((vec![7], 7)));
        // u(1) = 1 + 2*3 ties with u(2) = 4 + 1 + 2
        assert_eq!(max_u_chains(&p(&[4, 2, 2, 1])), Ok((vec![1, 2], 7)));
    }

    #[test]
    fn dot_output() {
        let d = PosetDp::build(&p(&[3, 1])).unwrap();
        let dot = d.to_dot(None);
        assert_eq!(dot.matches("[label=").count(), 4);
        assert_eq!(dot.matches(" -> ").count(), 4);
        assert!(!dot.contains("shape=box"));
        for style in ["dashed", "dotted", "bold"] {
            assert!(dot.contains(&format!("style={style}")));
        }

        let d = PosetDp::build(&figure_partition()).unwrap();
        let chain = d.u_chain(3).unwrap();
        let dot = d.to_dot(Some(&chain));
        assert_eq!(dot.matches("[label=").count(), 25);
        assert_eq!(dot.matches("shape=box").count(), 16);
    }
}
