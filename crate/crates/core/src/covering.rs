//! Dilation and overlapping indices, Vitali selection and the weak (1,1) bound they give.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Ball, Graph};
use crate::number::Exponent;

/// Default largest `n` for the exact overlapping index.
pub const OVERLAP_CAP: usize = 7;

/// `D(G) = max |B(x, 3r)| / |B(x, r)|` over vertices `x` and `1 <= r <= diam(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dilation {
    pub value: BigRational,
    pub vertex: usize,
    pub radius: usize,
}

pub fn dilation_index(g: &Graph) -> Dilation {
    let mut best = Dilation { value: BigRational::one(), vertex: 0, radius: 1 };
    for x in 0..g.n() {
        for r in 1..=g.diameter() {
            let ratio = BigRational::new(BigInt::from(g.ball_size(x, 3 * r)), BigInt::from(g.ball_size(x, r)));
            if ratio > best.value {
                best = Dilation { value: ratio, vertex: x, radius: r };
            }
        }
    }
    best
}

/// `O(G)` together with a family of balls that forces it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Overlapping {
    pub value: usize,
    /// Balls sharing one vertex, each with a member no other ball of the family has.
    /// No proper subfamily has the same union, so the family's overlap cannot be reduced.
    pub witness: Vec<Ball>,
    /// True when `value` is only a lower bound from sampled families.
    pub lower_bound_only: bool,
}

/// One representative per distinct member set, smallest `(radius, center)` first.
fn distinct_balls(g: &Graph) -> Vec<Ball> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for r in 0..=g.diameter() {
        for x in 0..g.n() {
            let b = g.ball(x, r);
            if seen.insert(b.members.clone()) {
                out.push(b);
            }
        }
    }
    out
}

/// Every ball of the family has a private vertex.
fn all_private(masks: &[u64]) -> bool {
    masks.iter().enumerate().all(|(i, &m)| {
        let others = masks.iter().enumerate().filter(|&(j, _)| j != i).fold(0, |acc, (_, &o)| acc | o);
        m & !others != 0
    })
}

struct Search<'a> {
    candidates: &'a [u64],
    chosen: Vec<usize>,
    best: Vec<usize>,
}

impl Search<'_> {
    /// Largest family of candidates in which every member keeps a private vertex.
    /// The property is hereditary, so adding balls one at a time and backtracking
    /// on failure visits every such family.
    fn run(&mut self, from: usize) {
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        if self.chosen.len() + (self.candidates.len() - from) <= self.best.len() {
            return;
        }
        for i in from..self.candidates.len() {
            self.chosen.push(i);
            let masks: Vec<u64> = self.chosen.iter().map(|&c| self.candidates[c]).collect();
            if all_private(&masks) {
                self.run(i + 1);
            }
            self.chosen.pop();
        }
    }
}

/// Exact `O(G)` for `n <= OVERLAP_CAP`.
pub fn overlapping_index(g: &Graph) -> Result<Overlapping> {
    overlapping_index_with_cap(g, OVERLAP_CAP)
}

/// Exact `O(G)`: the least `r` such that every ball family has a subfamily with the same
/// union covering each vertex at most `r` times.
///
/// Any family contains a union-preserving subfamily in which every ball has a private
/// vertex, and such a family admits no proper union-preserving subfamily. So `O(G)` is the
/// largest number of balls through a single vertex in a family with private vertices.
pub fn overlapping_index_with_cap(g: &Graph, cap: usize) -> Result<Overlapping> {
    let n = g.n();
    if n > cap || n > 64 {
        return Err(Error::CapExceeded { what: "overlapping index", n, cap: cap.min(64) });
    }
    let balls = distinct_balls(g);
    let best = (0..n)
        .into_par_iter()
        .map(|v| {
            let through: Vec<&Ball> = balls.iter().filter(|b| b.contains(v)).collect();
            let masks: Vec<u64> = through.iter().map(|b| b.mask()).collect();
            let mut search = Search { candidates: &masks, chosen: Vec::new(), best: Vec::new() };
            search.run(0);
            search.best.iter().map(|&i| through[i].clone()).collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .reduce(|a, b| if b.len() > a.len() { b } else { a })
        .unwrap_or_default();
    Ok(Overlapping { value: best.len().max(1), witness: best, lower_bound_only: false })
}

/// Lower bound on `O(G)` from `samples` random greedy families per vertex.
pub fn overlapping_index_lower_bound(g: &Graph, samples: usize, seed: u64) -> Result<Overlapping> {
    if g.n() > 64 {
        return Err(Error::CapExceeded { what: "overlapping index sampling", n: g.n(), cap: 64 });
    }
    let balls = distinct_balls(g);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Vec<Ball> = Vec::new();
    for v in 0..g.n() {
        let mut through: Vec<&Ball> = balls.iter().filter(|b| b.contains(v)).collect();
        for _ in 0..samples {
            through.shuffle(&mut rng);
            let mut family: Vec<&Ball> = Vec::new();
            let mut masks = Vec::new();
            for b in &through {
                masks.push(b.mask());
                if all_private(&masks) {
                    family.push(b);
                } else {
                    masks.pop();
                }
            }
            if family.len() > best.len() {
                best = family.into_iter().cloned().collect();
            }
        }
    }
    Ok(Overlapping { value: best.len().max(1), witness: best, lower_bound_only: true })
}

/// Greedy disjoint subfamily: largest radius first, ties by smallest center, keeping a
/// ball when it misses every ball kept so far.
pub fn vitali_select(balls: &[Ball]) -> Vec<Ball> {
    let mut order: Vec<&Ball> = balls.iter().collect();
    order.sort_by(|a, b| b.radius.cmp(&a.radius).then(a.center.cmp(&b.center)));
    let mut selected: Vec<Ball> = Vec::new();
    for b in order {
        if selected.iter().all(|s| !s.intersects(b)) {
            selected.push(b.clone());
        }
    }
    selected
}

/// `|⋃ balls|` and `Σ |selected|` for a Vitali selection.
pub fn vitali_sizes(balls: &[Ball]) -> (usize, usize) {
    let union: BTreeSet<usize> = balls.iter().flat_map(|b| b.members.iter().copied()).collect();
    let selected = vitali_select(balls).iter().map(Ball::len).sum();
    (union.len(), selected)
}

/// Both indices and the weak (1,1) bound `min{D(G), O(G)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexReport {
    pub dilation: Dilation,
    /// Absent when skipped.
    pub overlapping: Option<Overlapping>,
    pub weak11_upper: BigRational,
}

/// Computes the indices; with `skip_overlap` the bound uses the dilation index only.
pub fn weak11_upper_bound(g: &Graph, skip_overlap: bool, cap: usize) -> Result<IndexReport> {
    let dilation = dilation_index(g);
    let overlapping = if skip_overlap { None } else { Some(overlapping_index_with_cap(g, cap)?) };
    let mut weak11_upper = dilation.value.clone();
    if let Some(o) = &overlapping {
        weak11_upper = weak11_upper.min(BigRational::from_integer(BigInt::from(o.value)));
    }
    Ok(IndexReport { dilation, overlapping, weak11_upper })
}

/// `(p')^{1/p'} p^{1/p} c1^{1/p} cinf^{1/p'}` for `p > 1`, `c1, cinf >= 1`.
pub fn interpolation_bound(p: &Exponent, c1: f64, cinf: f64) -> Result<f64> {
    p.require_above_one()?;
    if !(c1 >= 1.0) || !(cinf >= 1.0) {
        return Err(Error::InvalidArgument(format!("constants must be at least 1 (got {c1}, {cinf})")));
    }
    let pv = p.value();
    let q = p.conjugate().expect("p > 1").value();
    Ok(q.powf(1.0 / q) * pv.powf(1.0 / pv) * c1.powf(1.0 / pv) * cinf.powf(1.0 / q))
}
