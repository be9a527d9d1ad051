//! Nonnegative functions on the vertex set.

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::Result;
use crate::number::{format_ratio, max_of, parse_rational, Scalar};

/// A function `f: V -> [0, ∞)`. Signed input is replaced by its absolute value, since
/// the maximal operator only sees `|f|`.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexFunction<T>(Vec<T>);

pub type ExactFunction = VertexFunction<BigRational>;
pub type FloatFunction = VertexFunction<f64>;

impl<T: Scalar> VertexFunction<T> {
    pub fn new(values: Vec<T>) -> Self {
        VertexFunction(values.into_iter().map(|x| x.abs()).collect())
    }

    /// Kronecker delta at `k`.
    pub fn delta(n: usize, k: usize) -> Self {
        let mut v = vec![T::zero(); n];
        v[k] = T::one();
        VertexFunction(v)
    }

    /// Characteristic function of `members`.
    pub fn indicator(n: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let mut v = vec![T::zero(); n];
        for k in members {
            v[k] = T::one();
        }
        VertexFunction(v)
    }

    pub fn constant(n: usize, c: T) -> Self {
        VertexFunction::new(vec![c; n])
    }

    pub fn values(&self) -> &[T] {
        &self.0
    }

    pub fn into_values(self) -> Vec<T> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> T {
        self.0.iter().fold(T::zero(), |acc, x| acc + x.clone())
    }

    pub fn max_value(&self) -> T {
        self.0.iter().fold(T::zero(), |acc, x| max_of(acc, x))
    }

    /// Decreasing rearrangement `f*`.
    pub fn decreasing(&self) -> Vec<T> {
        let mut v = self.0.clone();
        v.sort_by(|a, b| b.partial_cmp(a).expect("values are comparable"));
        v
    }

    pub fn to_float(&self) -> FloatFunction {
        VertexFunction(self.0.iter().map(Scalar::to_f64_lossy).collect())
    }

    /// Pointwise `self <= other`, with slack `tol` (use zero for exact types).
    pub fn le_pointwise(&self, other: &Self, tol: &T) -> bool {
        self.0.len() == other.0.len()
            && self.0.iter().zip(&other.0).all(|(a, b)| a.clone() <= b.clone() + tol.clone())
    }
}

/// `(Σ |x|^p)^{1/p}`; `p = ∞` gives the maximum.
pub fn lp_norm(values: &[f64], p: f64) -> f64 {
    if p.is_infinite() {
        return values.iter().fold(0.0, |m, x| m.max(x.abs()));
    }
    values.iter().map(|x| x.abs().powf(p)).sum::<f64>().powf(1.0 / p)
}

impl FloatFunction {
    pub fn lp_norm(&self, p: f64) -> f64 {
        lp_norm(&self.0, p)
    }
}

impl ExactFunction {
    /// Parses one value per line, each a decimal or `p/q` literal.
    pub fn parse_text(text: &str) -> Result<ExactFunction> {
        let values = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Ok(VertexFunction::new(values))
    }

    pub fn to_text(&self) -> String {
        self.0.iter().map(|x| format_ratio(x) + "\n").collect()
    }

    pub fn l1_norm(&self) -> BigRational {
        self.sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.0.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()
    }
}
