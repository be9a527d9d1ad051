//! Simple connected graphs with their shortest-path metric.
//!
//! Vertices are `0..n` in the Rust API. Text and JSON formats, the CLI and the C ABI
//! number vertices `1..=n`.

mod canon;
mod enumerate;
mod io;

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use canon::{canonical_form, is_isomorphic, CANON_CAP};
pub use enumerate::{enumerate_connected, enumerate_connected_with_cap, ENUM_CAP};
pub use io::GraphJson;

/// An immutable simple connected graph with all-pairs distances.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    neighbors: Vec<Vec<usize>>,
    dist: Vec<u32>,
    /// For each center, vertices sorted by (distance, id).
    by_distance: Vec<Vec<usize>>,
    /// `ball_sizes[v][r] = |B(v, r)|` for `r` in `0..=ecc(v)`.
    ball_sizes: Vec<Vec<usize>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.neighbors == other.neighbors
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph").field("n", &self.n).field("edges", &self.edges()).finish()
    }
}

impl Graph {
    /// Builds a graph on `0..n` from an edge list; duplicate edges are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        if n == 0 {
            return Err(Error::UnsupportedSize { family: "any", n });
        }
        let mut adj = vec![vec![false; n]; n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w + 1, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u + 1));
            }
            adj[u][v] = true;
            adj[v][u] = true;
        }
        let neighbors = adj
            .iter()
            .map(|row| row.iter().enumerate().filter(|(_, &a)| a).map(|(j, _)| j).collect())
            .collect();
        Graph::from_neighbors(neighbors)
    }

    /// Same as [`Graph::from_edges`] with endpoints numbered `1..=n`.
    pub fn from_edges_one_based(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut shifted = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            shifted.push((u - 1, v - 1));
        }
        Graph::from_edges(n, &shifted)
    }

    /// `neighbors` must be symmetric, loop-free and sorted.
    pub(crate) fn from_neighbors(neighbors: Vec<Vec<usize>>) -> Result<Graph> {
        let n = neighbors.len();
        let mut dist = vec![u32::MAX; n * n];
        let mut by_distance = Vec::with_capacity(n);
        let mut ball_sizes = Vec::with_capacity(n);
        let mut queue = VecDeque::with_capacity(n);
        for s in 0..n {
            let row = &mut dist[s * n..(s + 1) * n];
            row[s] = 0;
            queue.clear();
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &w in &neighbors[u] {
                    if row[w] == u32::MAX {
                        row[w] = row[u] + 1;
                        queue.push_back(w);
                    }
                }
            }
            if row.iter().any(|&d| d == u32::MAX) {
                return Err(Error::DisconnectedGraph);
            }
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&w| (row[w], w));
            let ecc = row[order[n - 1]] as usize;
            let mut sizes = vec![0; ecc + 1];
            for &w in &order {
                sizes[row[w] as usize] += 1;
            }
            for r in 1..=ecc {
                sizes[r] += sizes[r - 1];
            }
            by_distance.push(order);
            ball_sizes.push(sizes);
        }
        Ok(Graph { n, neighbors, dist, by_distance, ball_sizes })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, ns) in self.neighbors.iter().enumerate() {
            out.extend(ns.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.neighbors.iter().map(Vec::len).collect()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.dist(u, v) == 1
    }

    pub fn dist(&self, u: usize, v: usize) -> usize {
        self.dist[u * self.n + v] as usize
    }

    pub fn eccentricity(&self, v: usize) -> usize {
        self.ball_sizes[v].len() - 1
    }

    pub fn diameter(&self) -> usize {
        (0..self.n).map(|v| self.eccentricity(v)).max().unwrap_or(0)
    }

    /// `|B(v, r)|` without materializing the ball.
    pub fn ball_size(&self, v: usize, r: usize) -> usize {
        let sizes = &self.ball_sizes[v];
        sizes[r.min(sizes.len() - 1)]
    }

    /// Cumulative ball sizes `|B(v, 0)|, …, |B(v, ecc(v))|`.
    pub fn ball_sizes(&self, v: usize) -> &[usize] {
        &self.ball_sizes[v]
    }

    /// All vertices sorted by distance from `v` (ties by id); every ball centered at `v`
    /// is a prefix of this slice.
    pub fn by_distance(&self, v: usize) -> &[usize] {
        &self.by_distance[v]
    }

    pub fn ball(&self, center: usize, radius: usize) -> Ball {
        let size = self.ball_size(center, radius);
        let mut members = self.by_distance[center][..size].to_vec();
        members.sort_unstable();
        Ball { center, radius, members }
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * (self.n - 1) / 2
    }

    /// Isomorphic to the star `S_n` (for `n = 2` this is `K_2`).
    pub fn is_star(&self) -> bool {
        let n = self.n;
        n >= 2
            && self.edge_count() == n - 1
            && self.neighbors.iter().any(|ns| ns.len() == n - 1)
    }

    /// Isomorphic to the path `L_n`.
    pub fn is_path(&self) -> bool {
        self.edge_count() + 1 == self.n && self.neighbors.iter().all(|ns| ns.len() <= 2)
    }

    /// Whether `d(x, y) <= max(d(x, z), d(z, y))` holds for every triple.
    pub fn is_ultrametric(&self) -> bool {
        let n = self.n;
        (0..n).all(|x| {
            (0..n).all(|y| (0..n).all(|z| self.dist(x, y) <= self.dist(x, z).max(self.dist(z, y))))
        })
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let edges: Vec<_> = self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edges(self.n, &edges).expect("relabeling preserves connectivity")
    }

    /// Adds edge `(u, v)`; the result is connected whenever `self` is.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let mut edges = self.edges();
        edges.push((u, v));
        Graph::from_edges(self.n, &edges)
    }
}

/// A metric ball `B(center, radius)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ball {
    pub center: usize,
    pub radius: usize,
    /// Sorted member ids.
    pub members: Vec<usize>,
}

impl Ball {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn intersects(&self, other: &Ball) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.members.len() && j < other.members.len() {
            match self.members[i].cmp(&other.members[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    /// Member set as a bitmask; requires `n <= 64`.
    pub(crate) fn mask(&self) -> u64 {
        self.members.iter().fold(0, |m, &v| m | 1 << v)
    }
}

/// Named graph families on `0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Complete,
    Star,
    Path,
    Cycle,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Complete, Family::Star, Family::Path, Family::Cycle];

    pub fn name(self) -> &'static str {
        match self {
            Family::Complete => "complete",
            Family::Star => "star",
            Family::Path => "path",
            Family::Cycle => "cycle",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown family {s:?}")))
    }
}

/// `K_n`, `S_n` (center 0), `L_n` (endpoints 0 and n-1) or `C_n` (circular order).
pub fn named_graph(family: Family, n: usize) -> Result<Graph> {
    let min = if family == Family::Cycle { 3 } else { 2 };
    if n < min {
        return Err(Error::UnsupportedSize { family: family.name(), n });
    }
    let edges: Vec<(usize, usize)> = match family {
        Family::Complete => (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect(),
        Family::Star => (1..n).map(|v| (0, v)).collect(),
        Family::Path => (1..n).map(|v| (v - 1, v)).collect(),
        Family::Cycle => (0..n).map(|v| (v, (v + 1) % n)).collect(),
    };
    Graph::from_edges(n, &edges)
}
