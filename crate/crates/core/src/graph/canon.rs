//! Canonical forms by exhaustive search over refined vertex orderings.

use std::cmp::Ordering;

use super::Graph;
use crate::error::{Error, Result};

/// Largest vertex count accepted by [`canonical_form`].
pub const CANON_CAP: usize = 10;

/// A byte string that is equal for two graphs iff they are isomorphic.
///
/// Vertices are first split into cells by color refinement (starting from degrees);
/// the form is the lexicographically smallest lower-triangle adjacency string over all
/// orderings that list the cells in order.
pub fn canonical_form(g: &Graph) -> Result<Vec<u8>> {
    if g.n() > CANON_CAP {
        return Err(Error::CapExceeded { what: "canonical form", n: g.n(), cap: CANON_CAP });
    }
    let rows: Vec<u64> =
        (0..g.n()).map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w)).collect();
    Ok(canonical_rows(&rows))
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

/// Canonical form of the graph whose adjacency bitmask rows are `rows`.
pub(crate) fn canonical_rows(rows: &[u64]) -> Vec<u8> {
    let n = rows.len();
    let colors = refine(rows);
    // cell_of_position[k] lists the vertices allowed at position k
    let mut by_color: Vec<(u32, usize)> = colors.iter().enumerate().map(|(v, &c)| (c, v)).collect();
    by_color.sort_unstable();
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut last = None;
    for (c, v) in by_color {
        if last != Some(c) {
            cells.push(Vec::new());
            last = Some(c);
        }
        cells.last_mut().expect("cell pushed").push(v);
    }
    let mut allowed = Vec::with_capacity(n);
    for cell in &cells {
        for _ in cell {
            allowed.push(cell.clone());
        }
    }

    let mut search = Search {
        rows,
        allowed: &allowed,
        order: Vec::with_capacity(n),
        bits: Vec::with_capacity(n * n / 2),
        best: None,
    };
    search.run(0, Ordering::Equal);
    let best = search.best.unwrap_or_default();

    let mut out = Vec::with_capacity(1 + best.len().div_ceil(8));
    out.push(n as u8);
    for chunk in best.chunks(8) {
        let byte = chunk.iter().enumerate().fold(0u8, |b, (i, &bit)| b | (u8::from(bit) << (7 - i)));
        out.push(byte);
    }
    out
}

/// Iterated color refinement; colors are renumbered by sorted signature so the
/// resulting ordered partition is isomorphism invariant.
fn refine(rows: &[u64]) -> Vec<u32> {
    let n = rows.len();
    let mut colors: Vec<u32> = rows.iter().map(|r| r.count_ones()).collect();
    let mut classes = count_distinct(&colors);
    loop {
        let sigs: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut nc: Vec<u32> = (0..n).filter(|&w| rows[v] >> w & 1 == 1).map(|w| colors[w]).collect();
                nc.sort_unstable();
                (colors[v], nc)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<u32> =
            sigs.iter().map(|s| distinct.binary_search(s).expect("signature present") as u32).collect();
        let next_classes = distinct.len();
        colors = next;
        if next_classes == classes {
            return colors;
        }
        classes = next_classes;
    }
}

fn count_distinct(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

struct Search<'a> {
    rows: &'a [u64],
    allowed: &'a [Vec<usize>],
    order: Vec<usize>,
    bits: Vec<bool>,
    best: Option<Vec<bool>>,
}

impl Search<'_> {
    fn run(&mut self, pos: usize, state: Ordering) {
        let n = self.rows.len();
        if pos == n {
            if self.best.is_none() || state == Ordering::Less {
                self.best = Some(self.bits.clone());
            }
            return;
        }
        let start = self.bits.len();
        for idx in 0..self.allowed[pos].len() {
            let v = self.allowed[pos][idx];
            if self.order.contains(&v) {
                continue;
            }
            for i in 0..pos {
                self.bits.push(self.rows[v] >> self.order[i] & 1 == 1);
            }
            let mut next = state;
            if state == Ordering::Equal {
                if let Some(best) = &self.best {
                    next = self.bits[start..].cmp(&best[start..start + pos]);
                }
            }
            if next != Ordering::Greater {
                self.order.push(v);
                self.run(pos + 1, next);
                self.order.pop();
            }
            self.bits.truncate(start);
        }
    }
}
