//! Evaluation of `M_G`, the delta-response matrix and the isomorphism-class operator `M_[G]`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::function::VertexFunction;
use crate::graph::Graph;
use crate::number::{format_ratio, max_of, parse_rational, Scalar};
use crate::perm::for_each_permutation;

/// Largest `n` for which `M_[G]` is evaluated by scanning all vertex permutations.
pub const PERMUTATION_CAP: usize = 8;

/// `M_G f(v)` for a single vertex.
pub fn maximal_at<T: Scalar>(g: &Graph, f: &[T], v: usize) -> T {
    let order = g.by_distance(v);
    let mut sum = T::zero();
    let mut best = T::zero();
    let mut taken = 0;
    for &size in g.ball_sizes(v) {
        while taken < size {
            sum = sum + f[order[taken]].clone();
            taken += 1;
        }
        best = max_of(best, &(sum.clone() / T::from_count(size)));
    }
    best
}

/// `M_G f(v) = max_r (Σ_{w ∈ B(v,r)} f(w)) / |B(v,r)|`.
pub fn eval_maximal<T: Scalar>(g: &Graph, f: &VertexFunction<T>) -> Result<VertexFunction<T>> {
    check_len(g, f.len())?;
    Ok(VertexFunction::new((0..g.n()).map(|v| maximal_at(g, f.values(), v)).collect()))
}

/// Like [`eval_maximal`] but writes into `out` without checks; used in hot loops.
pub(crate) fn eval_into(g: &Graph, f: &[f64], out: &mut [f64]) {
    for (v, slot) in out.iter_mut().enumerate() {
        *slot = maximal_at(g, f, v);
    }
}

fn check_len(g: &Graph, len: usize) -> Result<()> {
    if len != g.n() {
        return Err(Error::LengthMismatch { expected: g.n(), got: len });
    }
    Ok(())
}

/// The matrix `entry(j, k) = M_G δ_k(j) = 1 / |B(j, d(j, k))|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaResponseMatrix {
    n: usize,
    entries: Vec<BigRational>,
}

impl DeltaResponseMatrix {
    pub fn from_graph(g: &Graph) -> Self {
        let n = g.n();
        let mut entries = Vec::with_capacity(n * n);
        for j in 0..n {
            for k in 0..n {
                let size = g.ball_size(j, g.dist(j, k));
                entries.push(BigRational::new(BigInt::one(), BigInt::from(size)));
            }
        }
        DeltaResponseMatrix { n, entries }
    }

    /// Row-major entries; validated only by [`reconstruct_from_deltas`].
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::LengthMismatch { expected: n, got: bad.len() });
        }
        Ok(DeltaResponseMatrix { n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, j: usize, k: usize) -> &BigRational {
        &self.entries[j * self.n + k]
    }

    /// `M_G δ_k` as a vector over `j`.
    pub fn column(&self, k: usize) -> Vec<BigRational> {
        (0..self.n).map(|j| self.entry(j, k).clone()).collect()
    }

    pub fn rows(&self) -> Vec<Vec<BigRational>> {
        self.entries.chunks(self.n.max(1)).map(<[BigRational]>::to_vec).collect()
    }

    /// JSON array of arrays of `"p/q"` strings.
    pub fn to_json(&self) -> String {
        let rows: Vec<Vec<String>> =
            self.rows().iter().map(|r| r.iter().map(format_ratio).collect()).collect();
        serde_json::to_string(&rows).expect("string matrix serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let rows: Vec<Vec<String>> = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        DeltaResponseMatrix::from_rows(rows)
    }
}

pub fn delta_response_matrix(g: &Graph) -> DeltaResponseMatrix {
    DeltaResponseMatrix::from_graph(g)
}

/// Recovers the unique graph whose delta-response matrix is `m`.
///
/// The neighbors of `j` are exactly the vertices where row `j` attains its largest
/// off-diagonal value `1 / (1 + deg j)`. The candidate is re-checked against `m`.
pub fn reconstruct_from_deltas(m: &DeltaResponseMatrix) -> Result<Graph> {
    let n = m.n();
    if n == 0 {
        return Err(Error::InconsistentMatrix);
    }
    let lowest = BigRational::new(BigInt::one(), BigInt::from(n));
    for j in 0..n {
        if !m.entry(j, j).is_one() {
            return Err(Error::InconsistentMatrix);
        }
        for k in 0..n {
            let e = m.entry(j, k);
            if *e < lowest || *e > BigRational::one() {
                return Err(Error::InconsistentMatrix);
            }
        }
    }
    let mut edges = Vec::new();
    for j in 0..n {
        let top = (0..n).filter(|&k| k != j).map(|k| m.entry(j, k)).max();
        let Some(top) = top else { continue };
        edges.extend((0..n).filter(|&k| k != j && m.entry(j, k) == top).map(|k| (j.min(k), j.max(k))));
    }
    edges.sort_unstable();
    edges.dedup();
    let g = Graph::from_edges(n, &edges).map_err(|_| Error::InconsistentMatrix)?;
    if DeltaResponseMatrix::from_graph(&g) != *m {
        return Err(Error::InconsistentMatrix);
    }
    Ok(g)
}

/// `M_[G] f(j) = max_{H ≅ G} M_H f(j)` over all graphs on the same vertex set.
///
/// Complete graphs, stars and paths use closed forms; other graphs are scanned over
/// every vertex permutation (capped at [`PERMUTATION_CAP`]).
pub fn eval_isoclass_maximal<T: Scalar>(g: &Graph, f: &VertexFunction<T>) -> Result<VertexFunction<T>> {
    check_len(g, f.len())?;
    if g.is_complete() {
        eval_maximal(g, f)
    } else if g.is_star() {
        Ok(isoclass_star(f))
    } else if g.is_path() {
        Ok(isoclass_path(f))
    } else {
        eval_isoclass_maximal_exhaustive(g, f)
    }
}

/// `M_[G]` by scanning all `n!` relabelings.
pub fn eval_isoclass_maximal_exhaustive<T: Scalar>(
    g: &Graph,
    f: &VertexFunction<T>,
) -> Result<VertexFunction<T>> {
    check_len(g, f.len())?;
    let n = g.n();
    if n > PERMUTATION_CAP {
        return Err(Error::CapExceeded { what: "isomorphism-class operator", n, cap: PERMUTATION_CAP });
    }
    // With H = π(G): M_H f(π(u)) = M_G (f ∘ π)(u).
    let mut out = vec![T::zero(); n];
    let mut pulled = vec![T::zero(); n];
    for_each_permutation(n, |perm| {
        for u in 0..n {
            pulled[u] = f.values()[perm[u]].clone();
        }
        for u in 0..n {
            let value = maximal_at(g, &pulled, u);
            if value > out[perm[u]] {
                out[perm[u]] = value;
            }
        }
    });
    Ok(VertexFunction::new(out))
}

/// `M_[S_n] f(j) = max{(f(j) + max f) / 2, Σf / n}`.
fn isoclass_star<T: Scalar>(f: &VertexFunction<T>) -> VertexFunction<T> {
    let n = f.len();
    let top = f.max_value();
    let mean = f.sum() / T::from_count(n);
    let two = T::from_count(2);
    VertexFunction::new(
        f.values().iter().map(|x| max_of((x.clone() + top.clone()) / two.clone(), &mean)).collect(),
    )
}

/// `M_[L_n] f(j) = max_s (f(j) + sum of the s-1 largest other values) / s`: a path with
/// `j` as a leaf and the others in decreasing order realizes every such prefix.
fn isoclass_path<T: Scalar>(f: &VertexFunction<T>) -> VertexFunction<T> {
    let n = f.len();
    let values = f.values();
    let out = (0..n)
        .map(|j| {
            let mut others: Vec<T> = (0..n).filter(|&k| k != j).map(|k| values[k].clone()).collect();
            others.sort_by(|a, b| b.partial_cmp(a).expect("comparable"));
            let mut sum = values[j].clone();
            let mut best = sum.clone();
            for (i, x) in others.into_iter().enumerate() {
                sum = sum + x;
                best = max_of(best, &(sum.clone() / T::from_count(i + 2)));
            }
            best
        })
        .collect();
    VertexFunction::new(out)
}

/// Exact rational `M_G δ_k` computed from the closed form.
pub fn delta_response(g: &Graph, k: usize) -> Vec<BigRational> {
    (0..g.n())
        .map(|j| BigRational::new(BigInt::one(), BigInt::from(g.ball_size(j, g.dist(j, k)))))
        .collect()
}
