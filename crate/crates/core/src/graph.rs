//! Finite multigraphs with loops and parallel edges.
//!
//! The position of an edge in [`Multigraph::edges`] is its rank in the fixed
//! linear edge order; vertex ids give the linear vertex order. Every operation
//! returns a fresh value and preserves the relative order of surviving edges.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dsu::UnionFind;
use crate::error::{Error, Result};

pub type Edge = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<Edge>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeClass {
    Loop,
    Bridge,
    Ordinary,
}

/// Result of replacing every edge by `t` ordered parallel copies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CloneGraph {
    pub graph: Multigraph,
    pub t: u32,
    /// `origin[j] = (i, label)`: clone edge `j` is copy `label` (1-based) of edge `i`.
    pub origin: Vec<(usize, u32)>,
}

impl CloneGraph {
    /// Position of copy `label` of original edge `edge` in the clone graph.
    pub fn clone_index(&self, edge: usize, label: u32) -> usize {
        edge * self.t as usize + (label as usize - 1)
    }
}

impl Multigraph {
    pub fn new(vertex_count: usize, edges: Vec<Edge>) -> Result<Self> {
        if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a >= vertex_count || b >= vertex_count) {
            return Err(Error::InvalidEndpoint { a, b, vertex_count });
        }
        Ok(Multigraph { vertex_count, edges })
    }

    pub fn empty(vertex_count: usize) -> Self {
        Multigraph { vertex_count, edges: Vec::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> Result<Edge> {
        self.edges.get(index).copied().ok_or(Error::InvalidEdge { index, edge_count: self.edges.len() })
    }

    pub fn is_loop(&self, index: usize) -> Result<bool> {
        let (a, b) = self.edge(index)?;
        Ok(a == b)
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|(a, b)| a == b).count()
    }

    /// Number of connected components; isolated vertices count.
    pub fn component_count(&self) -> usize {
        self.union_find().components()
    }

    /// Rank of the cycle matroid, `v(G) - c(G)`.
    pub fn rank(&self) -> usize {
        self.vertex_count - self.component_count()
    }

    pub(crate) fn union_find(&self) -> UnionFind {
        let mut uf = UnionFind::new(self.vertex_count);
        for &(a, b) in &self.edges {
            uf.union(a, b);
        }
        uf
    }

    /// Component label for every vertex, numbered by smallest member.
    pub fn component_labels(&self) -> Vec<usize> {
        let uf = self.union_find();
        let mut label_of_root = vec![usize::MAX; self.vertex_count];
        let mut next = 0;
        (0..self.vertex_count)
            .map(|v| {
                let r = uf.find(v);
                if label_of_root[r] == usize::MAX {
                    label_of_root[r] = next;
                    next += 1;
                }
                label_of_root[r]
            })
            .collect()
    }

    pub fn delete(&self, index: usize) -> Result<Multigraph> {
        self.edge(index)?;
        let mut edges = self.edges.clone();
        edges.remove(index);
        Ok(Multigraph { vertex_count: self.vertex_count, edges })
    }

    /// Merges the endpoints of a non-loop edge. The merged vertex keeps the
    /// smaller id; ids above the larger endpoint shift down by one.
    pub fn contract(&self, index: usize) -> Result<Multigraph> {
        let (a, b) = self.edge(index)?;
        if a == b {
            return Err(Error::ContractLoop(index));
        }
        let (keep, gone) = (a.min(b), a.max(b));
        let relabel = |u: usize| match u.cmp(&gone) {
            std::cmp::Ordering::Less => u,
            std::cmp::Ordering::Equal => keep,
            std::cmp::Ordering::Greater => u - 1,
        };
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != index)
            .map(|(_, &(u, v))| (relabel(u), relabel(v)))
            .collect();
        Ok(Multigraph { vertex_count: self.vertex_count - 1, edges })
    }

    pub fn classify(&self, index: usize) -> Result<EdgeClass> {
        let (a, b) = self.edge(index)?;
        if a == b {
            return Ok(EdgeClass::Loop);
        }
        let mut uf = UnionFind::new(self.vertex_count);
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if i != index {
                uf.union(u, v);
            }
        }
        Ok(if uf.connected(a, b) { EdgeClass::Ordinary } else { EdgeClass::Bridge })
    }

    pub fn clone_graph(&self, t: u32) -> Result<CloneGraph> {
        if t == 0 {
            return Err(Error::ZeroLabels);
        }
        let mut edges = Vec::with_capacity(self.edges.len() * t as usize);
        let mut origin = Vec::with_capacity(edges.capacity());
        for (i, &e) in self.edges.iter().enumerate() {
            for label in 1..=t {
                edges.push(e);
                origin.push((i, label));
            }
        }
        Ok(CloneGraph { graph: Multigraph { vertex_count: self.vertex_count, edges }, t, origin })
    }

    /// Reorders edges so that new position `j` holds old edge `order[j]`.
    pub fn permute_edges(&self, order: &[usize]) -> Result<Multigraph> {
        let mut seen = vec![false; self.edges.len()];
        let mut edges = Vec::with_capacity(self.edges.len());
        for &i in order {
            let e = self.edge(i)?;
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidEdge { index: i, edge_count: self.edges.len() });
            }
            edges.push(e);
        }
        if edges.len() != self.edges.len() {
            return Err(Error::InvalidEdge { index: order.len(), edge_count: self.edges.len() });
        }
        Ok(Multigraph { vertex_count: self.vertex_count, edges })
    }

    /// Appends a loop at `vertex` as the last edge.
    pub fn with_loop(&self, vertex: usize) -> Result<Multigraph> {
        let mut edges = self.edges.clone();
        edges.push((vertex, vertex));
        Multigraph::new(self.vertex_count, edges)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// Serializes to the plain-text graph format accepted by [`FromStr`].
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.vertex_count, self.edges.len());
        for (a, b) in &self.edges {
            out.push_str(&format!("{a} {b}\n"));
        }
        out
    }
}

impl fmt::Display for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G(v={}, e=[", self.vertex_count)?;
        for (i, (a, b)) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}-{b}")?;
        }
        write!(f, "])")
    }
}

/// Text format: a header line `n m`, then `m` lines `a b`. Lines starting
/// with `#` and blank lines are ignored.
impl FromStr for Multigraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |line: usize, message: String| Error::Parse { line, message };
        let mut lines =
            s.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let pair = |line: usize, text: &str| -> Result<(usize, usize)> {
            let fields: Vec<&str> = text.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(parse_err(line, format!("expected two integers, found {:?}", text)));
            }
            let num = |f: &str| f.parse::<usize>().map_err(|e| parse_err(line, format!("bad integer {f:?}: {e}")));
            Ok((num(fields[0])?, num(fields[1])?))
        };

        let (header_line, header) = lines.next().ok_or_else(|| parse_err(1, "missing header".into()))?;
        let (n, m) = pair(header_line, header)?;
        let mut edges = Vec::with_capacity(m);
        let mut last_line = header_line;
        for (line, text) in lines {
            last_line = line;
            if edges.len() == m {
                return Err(parse_err(line, format!("more than the declared {m} edges")));
            }
            let (a, b) = pair(line, text)?;
            if a >= n || b >= n {
                return Err(parse_err(line, format!("endpoint out of range 0..{n}")));
            }
            edges.push((a, b));
        }
        if edges.len() != m {
            return Err(parse_err(last_line, format!("declared {m} edges, found {}", edges.len())));
        }
        Ok(Multigraph { vertex_count: n, edges })
    }
}
