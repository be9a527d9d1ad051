//! Exhaustive enumeration of small connected graphs.

use std::collections::BTreeMap;

use super::canon::canonical_rows;
use super::Graph;
use crate::error::{Error, Result};

/// Default vertex cap for [`enumerate_connected`].
pub const ENUM_CAP: usize = 8;

/// Every connected simple graph on `n` labeled vertices, or one canonical
/// representative per isomorphism class when `up_to_iso` is set.
pub fn enumerate_connected(
    n: usize,
    up_to_iso: bool,
) -> Result<Box<dyn Iterator<Item = Graph> + Send>> {
    enumerate_connected_with_cap(n, up_to_iso, ENUM_CAP)
}

pub fn enumerate_connected_with_cap(
    n: usize,
    up_to_iso: bool,
    cap: usize,
) -> Result<Box<dyn Iterator<Item = Graph> + Send>> {
    if n == 0 {
        return Err(Error::UnsupportedSize { family: "connected", n });
    }
    let cap = cap.min(if up_to_iso { super::CANON_CAP } else { 11 });
    if n > cap {
        return Err(Error::CapExceeded { what: "graph enumeration", n, cap });
    }
    if up_to_iso {
        let classes = iso_classes(n);
        Ok(Box::new(classes.into_iter().map(|rows| graph_from_rows(&rows))))
    } else {
        Ok(Box::new(Labeled::new(n)))
    }
}

/// Canonical adjacency rows of every connected class on `n` vertices, ordered by
/// (edge count, canonical form).
///
/// Each connected graph on `n > 1` vertices has a vertex whose removal keeps it
/// connected, so the classes on `n` vertices arise from those on `n - 1` by attaching
/// a new vertex to a nonempty subset.
fn iso_classes(n: usize) -> Vec<Vec<u64>> {
    let mut level: Vec<Vec<u64>> = vec![vec![0]];
    for size in 2..=n {
        let mut found: BTreeMap<(u32, Vec<u8>), Vec<u64>> = BTreeMap::new();
        let old = size - 1;
        for rows in &level {
            for subset in 1u64..(1 << old) {
                let mut next = rows.clone();
                for (v, row) in next.iter_mut().enumerate() {
                    if subset >> v & 1 == 1 {
                        *row |= 1 << old;
                    }
                }
                next.push(subset);
                let form = canonical_rows(&next);
                let edges = next.iter().map(|r| r.count_ones()).sum::<u32>() / 2;
                found.entry((edges, form)).or_insert_with_key(|(_, f)| rows_from_form(f));
            }
        }
        level = found.into_values().collect();
    }
    level
}

/// Decodes a canonical form into adjacency rows (the canonically labeled graph).
fn rows_from_form(form: &[u8]) -> Vec<u64> {
    let n = form[0] as usize;
    let bit = |idx: usize| form[1 + idx / 8] >> (7 - idx % 8) & 1 == 1;
    let mut rows = vec![0u64; n];
    let mut idx = 0;
    for k in 1..n {
        for i in 0..k {
            if bit(idx) {
                rows[k] |= 1 << i;
                rows[i] |= 1 << k;
            }
            idx += 1;
        }
    }
    rows
}

fn graph_from_rows(rows: &[u64]) -> Graph {
    let n = rows.len();
    let neighbors = rows.iter().map(|r| (0..n).filter(|&w| r >> w & 1 == 1).collect()).collect();
    Graph::from_neighbors(neighbors).expect("enumerated graphs are connected")
}

/// Labeled connected graphs by edge-subset mask, filtered with union-find.
struct Labeled {
    n: usize,
    pairs: Vec<(usize, usize)>,
    next: u64,
    end: u64,
}

impl Labeled {
    fn new(n: usize) -> Self {
        let pairs: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let end = 1u64 << pairs.len();
        Labeled { n, pairs, next: 0, end }
    }

    fn connected(&self, mask: u64) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = self.n;
        for (i, &(u, v)) in self.pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                if a != b {
                    parent[a] = b;
                    components -= 1;
                }
            }
        }
        components == 1
    }
}

impl Iterator for Labeled {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        while self.next < self.end {
            let mask = self.next;
            self.next += 1;
            if (mask.count_ones() as usize) + 1 < self.n || !self.connected(mask) {
                continue;
            }
            let edges: Vec<_> =
                self.pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            return Some(Graph::from_edges(self.n, &edges).expect("mask is connected"));
        }
        None
    }
}
