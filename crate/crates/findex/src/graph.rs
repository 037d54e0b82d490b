//! Immutable simple undirected graphs with degree queries, the forgotten
//! index in both of its defining forms, and the structural predicates used
//! throughout the crate (connectivity, cycle rank, the bicyclic test).

use std::collections::VecDeque;

use thiserror::Error;

use crate::arith::{self, Overflow};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for order {n}")]
    VertexOutOfRange { vertex: u32, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(u32, u32),
    #[error("relabeling is not a permutation of 0..{0}")]
    BadPermutation(usize),
}

/// A simple undirected graph on vertices `0..n`.
///
/// Edges are stored normalized (`u < v`, sorted, no duplicates), so two
/// graphs compare equal exactly when they are equal as labeled graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(u32, u32)>,
    adj: Vec<Vec<u32>>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self, GraphError> {
        let mut norm: Vec<(u32, u32)> = Vec::new();
        for (u, v) in edges {
            if u as usize >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u, n });
            }
            if v as usize >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        for w in norm.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &norm {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: norm,
            adj,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Normalized edge list: `u < v`, lexicographically sorted.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.adj.iter().map(|a| a.len())
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj
            .get(u as usize)
            .is_some_and(|a| a.binary_search(&v).is_ok())
    }

    /// Number of connected components (isolated vertices count).
    pub fn components(&self) -> usize {
        let mut seen = vec![false; self.n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            queue.push_back(start as u32);
            while let Some(v) = queue.pop_front() {
                for &w in self.neighbors(v) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.components() <= 1
    }

    /// `m - n + #components`; zero exactly for forests.
    pub fn cycle_rank(&self) -> usize {
        // m + c >= n holds for every simple graph, so this cannot underflow.
        self.m() + self.components() - self.n
    }

    /// Connected with exactly one more edge than vertices.
    pub fn is_bicyclic(&self) -> bool {
        self.m() == self.n + 1 && self.is_connected()
    }

    /// Edge-count test alone, connectivity not required.
    pub fn is_bicyclic_relaxed(&self) -> bool {
        self.m() == self.n + 1
    }

    /// The forgotten index `F(G)`, computed as the sum of cubed degrees.
    ///
    /// Debug builds also evaluate the equivalent edge sum and assert the two
    /// agree. Arithmetic is checked; overflow is an error.
    pub fn forgotten_index(&self) -> Result<u64, Overflow> {
        let mut total: u64 = 0;
        for d in self.degrees() {
            total = arith::add(total, arith::cube(d as u64)?)?;
        }
        #[cfg(debug_assertions)]
        {
            let edge_form = self.forgotten_index_edge_form()?;
            debug_assert_eq!(total, edge_form, "the two forms of F disagree");
        }
        Ok(total)
    }

    /// `F(G)` as the sum over edges of `d(u)^2 + d(v)^2`.
    pub fn forgotten_index_edge_form(&self) -> Result<u64, Overflow> {
        let mut total: u64 = 0;
        for &(u, v) in &self.edges {
            let du = arith::square(self.degree(u) as u64)?;
            let dv = arith::square(self.degree(v) as u64)?;
            total = arith::add(total, arith::add(du, dv)?)?;
        }
        Ok(total)
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[u32]) -> Result<Graph, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::BadPermutation(self.n));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p as usize >= self.n || seen[p as usize] {
                return Err(GraphError::BadPermutation(self.n));
            }
            seen[p as usize] = true;
        }
        Graph::new(
            self.n,
            self.edges
                .iter()
                .map(|&(u, v)| (perm[u as usize], perm[v as usize])),
        )
    }
}
