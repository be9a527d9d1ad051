//! Exact operator norms: the delta reduction for `0 < p <= 1`, restricted-type norms,
//! weak quasinorms and the closed-form constants for complete graphs, stars and paths.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::{ExactFunction, FloatFunction, VertexFunction};
use crate::graph::{Family, Graph};
use crate::maximal::{delta_response, eval_isoclass_maximal, maximal_at};
use crate::number::{rational, Exponent, Number, FLOAT_TOL};
use crate::numeric::{k2_norm, OptimizerMeta};

/// Largest `n` for the `2^n` subset scan in [`restricted_norm`].
pub const RESTRICTED_CAP: usize = 20;

/// How a reported value relates to the true operator norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormKind {
    Exact,
    LowerBound,
    UpperBound,
    Estimate,
}

impl fmt::Display for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NormKind::Exact => "exact",
            NormKind::LowerBound => "lower_bound",
            NormKind::UpperBound => "upper_bound",
            NormKind::Estimate => "estimate",
        })
    }
}

/// Which operator norm is asked for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorNorm {
    /// `ℓ^p → ℓ^p`.
    Strong,
    /// `ℓ^p → ℓ^{p,∞}`.
    Weak,
    /// `ℓ^p → ℓ^p` over characteristic functions.
    Restricted,
    /// Strong norm of `M_[G]`.
    Isoclass,
}

impl OperatorNorm {
    pub fn name(self) -> &'static str {
        match self {
            OperatorNorm::Strong => "strong",
            OperatorNorm::Weak => "weak",
            OperatorNorm::Restricted => "restricted",
            OperatorNorm::Isoclass => "isoclass",
        }
    }
}

impl fmt::Display for OperatorNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OperatorNorm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [OperatorNorm::Strong, OperatorNorm::Weak, OperatorNorm::Restricted, OperatorNorm::Isoclass]
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown norm kind {s:?}")))
    }
}

/// A function attaining (or approaching) a reported norm.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    Exact(ExactFunction),
    Float(FloatFunction),
}

impl Witness {
    pub fn to_float(&self) -> FloatFunction {
        match self {
            Witness::Exact(f) => f.to_float(),
            Witness::Float(f) => f.clone(),
        }
    }

    pub fn to_strings(&self) -> Vec<String> {
        match self {
            Witness::Exact(f) => f.values().iter().map(|x| Number::Rational(x.clone()).to_string()).collect(),
            Witness::Float(f) => f.values().iter().map(|x| x.to_string()).collect(),
        }
    }
}

/// A computed norm value together with its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct NormResult {
    pub value: Number,
    pub kind: NormKind,
    pub norm: OperatorNorm,
    pub p: Exponent,
    pub witness: Option<Witness>,
    /// Known `(lower, upper)` bracket for the true norm, when one exists.
    pub bounds: Option<(f64, f64)>,
    pub optimizer: Option<OptimizerMeta>,
    pub notes: Vec<String>,
}

impl NormResult {
    pub(crate) fn new(value: Number, kind: NormKind, norm: OperatorNorm, p: &Exponent) -> Self {
        NormResult { value, kind, norm, p: p.clone(), witness: None, bounds: None, optimizer: None, notes: Vec::new() }
    }

    fn with_witness(mut self, w: Witness) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }
}

/// Counts of ball sizes in column `k`: `counts[s]` vertices `j` have `|B(j, d(j,k))| = s`.
fn column_size_counts(g: &Graph, k: usize) -> Vec<usize> {
    let mut counts = vec![0; g.n() + 1];
    for j in 0..g.n() {
        counts[g.ball_size(j, g.dist(j, k))] += 1;
    }
    counts
}

/// `‖M_G δ_k‖_1` in exact arithmetic.
pub fn delta_l1_norm(g: &Graph, k: usize) -> BigRational {
    column_size_counts(g, k)
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .fold(BigRational::zero(), |acc, (s, &c)| acc + rational(c as i64, s as i64))
}

/// `‖M_G δ_k‖_p` in floating point.
pub fn delta_lp_norm(g: &Graph, k: usize, p: f64) -> f64 {
    column_size_counts(g, k)
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(s, &c)| c as f64 * (s as f64).powf(-p))
        .sum::<f64>()
        .powf(1.0 / p)
}

/// `‖M_G‖_p` for `0 < p <= 1` (and `p = ∞`), attained at a Kronecker delta.
pub fn strong_norm_exact(g: &Graph, p: &Exponent) -> Result<NormResult> {
    let n = g.n();
    if p.is_infinite() {
        return Ok(NormResult::new(Number::Rational(BigRational::one()), NormKind::Exact, OperatorNorm::Strong, p)
            .with_witness(Witness::Exact(ExactFunction::constant(n, BigRational::one()))));
    }
    p.require_at_most_one()?;
    let (best, value) = if p.is_one() {
        let (k, v) = argmax((0..n).map(|k| delta_l1_norm(g, k)));
        (k, Number::Rational(v))
    } else {
        let (k, v) = argmax_f64((0..n).map(|k| delta_lp_norm(g, k, p.value())));
        (k, Number::Float(v))
    };
    Ok(NormResult::new(value, NormKind::Exact, OperatorNorm::Strong, p)
        .with_witness(Witness::Exact(ExactFunction::delta(n, best))))
}

/// `‖M_[G]‖_p` for `0 < p <= 1`, attained at a Kronecker delta.
pub fn isoclass_norm_exact(g: &Graph, p: &Exponent) -> Result<NormResult> {
    p.require_finite()?;
    p.require_at_most_one()?;
    let n = g.n();
    let mut columns = Vec::with_capacity(n);
    for k in 0..n {
        columns.push(eval_isoclass_maximal(g, &ExactFunction::delta(n, k))?);
    }
    let (best, value) = if p.is_one() {
        let (k, v) = argmax(columns.iter().map(ExactFunction::l1_norm));
        (k, Number::Rational(v))
    } else {
        let (k, v) = argmax_f64(columns.iter().map(|c| c.to_float().lp_norm(p.value())));
        (k, Number::Float(v))
    };
    Ok(NormResult::new(value, NormKind::Exact, OperatorNorm::Isoclass, p)
        .with_witness(Witness::Exact(ExactFunction::delta(n, best))))
}

fn argmax<T: Ord>(values: impl Iterator<Item = T>) -> (usize, T) {
    values
        .enumerate()
        .reduce(|best, cur| if cur.1 > best.1 { cur } else { best })
        .expect("graphs have at least one vertex")
}

fn argmax_f64(values: impl Iterator<Item = f64>) -> (usize, f64) {
    values
        .enumerate()
        .reduce(|best, cur| if cur.1 > best.1 { cur } else { best })
        .expect("graphs have at least one vertex")
}

/// `max_{∅ ≠ A ⊆ V} ‖M_G χ_A‖_p / |A|^{1/p}` by scanning all subsets.
///
/// At `p = 1` the maximizing subsets are re-evaluated in exact arithmetic.
pub fn restricted_norm(g: &Graph, p: &Exponent) -> Result<NormResult> {
    p.require_finite()?;
    let n = g.n();
    if n > RESTRICTED_CAP {
        return Err(Error::CapExceeded { what: "restricted-type subset scan", n, cap: RESTRICTED_CAP });
    }
    let pv = p.value();
    let mut f = vec![0.0; n];
    let mut ratios = Vec::with_capacity((1usize << n) - 1);
    for mask in 1u32..(1u32 << n) {
        for (v, slot) in f.iter_mut().enumerate() {
            *slot = f64::from(mask >> v & 1);
        }
        let size = mask.count_ones() as f64;
        let ratio = if p.is_one() {
            (0..n).map(|v| maximal_at(g, &f, v)).sum::<f64>() / size
        } else {
            ((0..n).map(|v| maximal_at(g, &f, v).powf(pv)).sum::<f64>() / size).powf(1.0 / pv)
        };
        ratios.push((mask, ratio));
    }
    let top = ratios.iter().map(|r| r.1).fold(f64::NEG_INFINITY, f64::max);
    let members = |mask: u32| (0..n).filter(move |v| mask >> v & 1 == 1);
    if p.is_one() {
        let mut best: Option<(u32, BigRational)> = None;
        for &(mask, ratio) in &ratios {
            if ratio < top - FLOAT_TOL {
                continue;
            }
            let chi = ExactFunction::indicator(n, members(mask));
            let total: BigRational =
                (0..n).fold(BigRational::zero(), |acc, v| acc + maximal_at(g, chi.values(), v));
            let exact = total / BigRational::from_integer(BigInt::from(mask.count_ones()));
            if best.as_ref().is_none_or(|b| exact > b.1) {
                best = Some((mask, exact));
            }
        }
        let (mask, value) = best.expect("at least one subset");
        return Ok(NormResult::new(Number::Rational(value), NormKind::Exact, OperatorNorm::Restricted, p)
            .with_witness(Witness::Exact(ExactFunction::indicator(n, members(mask)))));
    }
    let &(mask, value) = ratios.iter().find(|r| r.1 == top).expect("maximum is attained");
    Ok(NormResult::new(Number::Float(value), NormKind::Exact, OperatorNorm::Restricted, p)
        .with_witness(Witness::Exact(ExactFunction::indicator(n, members(mask)))))
}

/// Where `k ↦ (n - k) k^{p-1}` peaks on `{1, …, n-1}` for `K_n`, `p > 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RestrictedCase {
    /// `n <= p'`: singletons are optimal.
    Singleton,
    /// `n <= p`: complements of singletons are optimal.
    CoSingleton,
    /// `n / p'` is an integer and is the optimal subset size.
    IntegralCritical,
    /// The optimum is at `⌊n/p'⌋` or `⌊n/p'⌋ + 1`.
    RoundedCritical { floor: usize },
}

/// Closed-form restricted-type norm of `K_n` for `p > 1`.
pub fn restricted_norm_complete_closed_form(n: usize, p: &Exponent) -> Result<(NormResult, RestrictedCase)> {
    p.require_above_one()?;
    if n < 2 {
        return Err(Error::UnsupportedSize { family: Family::Complete.name(), n });
    }
    let pv = p.value();
    let conj = p.conjugate().expect("p > 1 has a conjugate");
    let nf = n as f64;
    let mut notes = Vec::new();
    let case = match (p.exact(), conj.exact()) {
        (Some(pe), Some(ce)) => {
            let nr = num_rational::Ratio::from_integer(n as i64);
            if nr <= ce {
                RestrictedCase::Singleton
            } else if nr <= pe {
                RestrictedCase::CoSingleton
            } else {
                let critical = nr / ce;
                if critical.is_integer() {
                    RestrictedCase::IntegralCritical
                } else {
                    RestrictedCase::RoundedCritical { floor: critical.floor().to_integer() as usize }
                }
            }
        }
        _ => {
            notes.push("case selection compared floating values within 1e-9".to_string());
            let critical = nf / conj.value();
            if nf <= conj.value() + FLOAT_TOL {
                RestrictedCase::Singleton
            } else if nf <= pv + FLOAT_TOL {
                RestrictedCase::CoSingleton
            } else if (critical - critical.round()).abs() < FLOAT_TOL {
                RestrictedCase::IntegralCritical
            } else {
                RestrictedCase::RoundedCritical { floor: critical.floor() as usize }
            }
        }
    };
    let inner = match case {
        RestrictedCase::Singleton => 1.0 + (nf - 1.0) / nf.powf(pv),
        RestrictedCase::CoSingleton => 1.0 + (nf - 1.0).powf(pv - 1.0) / nf.powf(pv),
        RestrictedCase::IntegralCritical => 1.0 + (pv - 1.0).powf(pv - 1.0) / pv.powf(pv),
        RestrictedCase::RoundedCritical { floor } => {
            let m = floor as f64;
            let a = (nf - m) * m.powf(pv - 1.0);
            let b = (nf - 1.0 - m) * (m + 1.0).powf(pv - 1.0);
            1.0 + a.max(b) / nf.powf(pv)
        }
    };
    let mut result = NormResult::new(Number::Float(inner.powf(1.0 / pv)), NormKind::Exact, OperatorNorm::Restricted, p);
    result.notes = notes;
    Ok((result, case))
}

/// `‖f‖_{p,∞} = max_j j^{1/p} f*_j`.
pub fn weak_quasinorm(f: &FloatFunction, p: &Exponent) -> Result<f64> {
    p.require_finite()?;
    Ok(weak_quasinorm_raw(f.values(), p.value()))
}

pub(crate) fn weak_quasinorm_raw(values: &[f64], p: f64) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    weak_from_sorted(&sorted, p)
}

pub(crate) fn weak_from_sorted(sorted: &[f64], p: f64) -> f64 {
    let inv = 1.0 / p;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| if p == 1.0 { (i + 1) as f64 * x } else { ((i + 1) as f64).powf(inv) * x })
        .fold(0.0, f64::max)
}

/// `sup_{t > 0} t |{f > t}|^{1/p}`, evaluated at the level sets: just below each
/// positive value `v` the supremum approaches `v |{f >= v}|^{1/p}`.
pub fn weak_quasinorm_level_sets(f: &FloatFunction, p: &Exponent) -> Result<f64> {
    p.require_finite()?;
    let values = f.values();
    Ok(values
        .iter()
        .filter(|&&v| v > 0.0)
        .map(|&v| v * (values.iter().filter(|&&w| w >= v).count() as f64).powf(1.0 / p.value()))
        .fold(0.0, f64::max))
}

/// `‖f‖_{1,∞}` in exact arithmetic.
pub fn weak_l1_quasinorm_exact(f: &ExactFunction) -> BigRational {
    f.decreasing()
        .into_iter()
        .enumerate()
        .map(|(i, x)| x * BigRational::from_integer(BigInt::from(i + 1)))
        .max()
        .unwrap_or_else(BigRational::zero)
}

/// `max_k ‖M_G δ_k‖_{p,∞}`, a lower bound for `‖M_G‖_{p,∞}` (exact rational at `p = 1`).
pub fn weak_norm_delta_lower(g: &Graph, p: &Exponent) -> Result<NormResult> {
    p.require_finite()?;
    let n = g.n();
    let (best, value) = if p.is_one() {
        let (k, v) = argmax((0..n).map(|k| weak_l1_quasinorm_exact(&VertexFunction::new(delta_response(g, k)))));
        (k, Number::Rational(v))
    } else {
        let (k, v) = argmax_f64((0..n).map(|k| {
            let col: Vec<f64> = delta_response(g, k).iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
            weak_quasinorm_raw(&col, p.value())
        }));
        (k, Number::Float(v))
    };
    Ok(NormResult::new(value, NormKind::LowerBound, OperatorNorm::Weak, p)
        .with_witness(Witness::Exact(ExactFunction::delta(n, best))))
}

/// `(1 + (n-1)/n^p)^{1/p}`: `‖M_{K_n}‖_p` for `p <= 1`, the smallest norm on `n` vertices.
pub fn complete_strong_value(n: usize, p: f64) -> f64 {
    let nf = n as f64;
    (1.0 + (nf - 1.0) / nf.powf(p)).powf(1.0 / p)
}

/// `(1 + (n-1)/2^p)^{1/p}`: `‖M_{S_n}‖_p` for `p <= 1`, the largest norm on `n` vertices.
pub fn star_strong_value(n: usize, p: f64) -> f64 {
    (1.0 + (n as f64 - 1.0) / 2f64.powf(p)).powf(1.0 / p)
}

/// A closed-form constant, a bracket, or an asymptotic comparator.
#[derive(Debug, Clone, PartialEq)]
pub enum ClosedForm {
    Exact(Number),
    Bounds { lower: f64, upper: f64 },
    /// Same order of growth as the norm, up to absolute constants.
    Comparator(f64),
}

impl ClosedForm {
    pub fn lower(&self) -> Option<f64> {
        match self {
            ClosedForm::Exact(v) => Some(v.to_f64()),
            ClosedForm::Bounds { lower, .. } => Some(*lower),
            ClosedForm::Comparator(_) => None,
        }
    }

    pub fn upper(&self) -> Option<f64> {
        match self {
            ClosedForm::Exact(v) => Some(v.to_f64()),
            ClosedForm::Bounds { upper, .. } => Some(*upper),
            ClosedForm::Comparator(_) => None,
        }
    }
}

/// Known constants for `K_n`, `S_n` and `L_n`:
///
/// | family   | strong                                   | weak                                  |
/// |----------|------------------------------------------|---------------------------------------|
/// | complete | exact for `p <= 1` and `n = 2`, else bounds | exact                              |
/// | star     | exact for `p <= 1`, else bounds          | bounds                                |
/// | path     | comparator for `p <= 1`                  | bounds for `p >= 1`, comparator below |
///
/// Every family has strong norm exactly 1 at `p = ∞`. Other combinations return
/// [`Error::UnsupportedCombination`].
pub fn closed_form_constants(family: Family, n: usize, p: &Exponent, norm: OperatorNorm) -> Result<ClosedForm> {
    let min = if family == Family::Cycle { 3 } else { 2 };
    if n < min {
        return Err(Error::UnsupportedSize { family: family.name(), n });
    }
    let unsupported = || Error::UnsupportedCombination(format!("{family} graph, {norm} norm, p = {p}"));
    if p.is_infinite() {
        return match norm {
            OperatorNorm::Strong => Ok(ClosedForm::Exact(Number::Rational(BigRational::one()))),
            _ => Err(unsupported()),
        };
    }
    let pv = p.value();
    let nf = n as f64;
    let small = !(pv > 1.0 && !p.is_one());
    match (family, norm) {
        (Family::Complete, OperatorNorm::Strong) if small => Ok(ClosedForm::Exact(if p.is_one() {
            Number::Rational(BigRational::one() + rational(n as i64 - 1, n as i64))
        } else {
            Number::Float(complete_strong_value(n, pv))
        })),
        (Family::Complete, OperatorNorm::Strong) if n == 2 => Ok(ClosedForm::Exact(Number::Float(k2_norm(p)?))),
        (Family::Complete, OperatorNorm::Strong) => Ok(ClosedForm::Bounds {
            lower: complete_strong_value(n, pv),
            upper: (1.0 + (nf - 1.0) / nf).powf(1.0 / pv),
        }),
        (Family::Complete, OperatorNorm::Weak) => Ok(ClosedForm::Exact(if p.is_one() || !small {
            Number::Rational(BigRational::one())
        } else {
            Number::Float(nf.powf(1.0 / pv - 1.0))
        })),
        (Family::Star, OperatorNorm::Strong) if small => Ok(ClosedForm::Exact(if p.is_one() {
            Number::Rational(rational(n as i64 + 1, 2))
        } else {
            Number::Float(star_strong_value(n, pv))
        })),
        (Family::Star, OperatorNorm::Strong) => Ok(ClosedForm::Bounds {
            lower: star_strong_value(n, pv),
            upper: ((nf + 5.0) / 2.0).powf(1.0 / pv),
        }),
        (Family::Star, OperatorNorm::Weak) => {
            let top = nf.powf(1.0 / pv);
            Ok(ClosedForm::Bounds { lower: (top / 2.0).max(1.0), upper: top })
        }
        (Family::Path, OperatorNorm::Strong) if p.is_one() => Ok(ClosedForm::Comparator(nf.ln())),
        (Family::Path, OperatorNorm::Strong) if small => {
            Ok(ClosedForm::Comparator(((nf.powf(1.0 - pv) - 1.0) / (1.0 - pv)).powf(1.0 / pv)))
        }
        (Family::Path, OperatorNorm::Weak) if small && !p.is_one() => {
            Ok(ClosedForm::Comparator(nf.powf(1.0 / pv - 1.0)))
        }
        (Family::Path, OperatorNorm::Weak) => Ok(ClosedForm::Bounds { lower: 1.0, upper: path_weak_upper(p) }),
        _ => Err(unsupported()),
    }
}

/// `min(3, (p')^{1/p'} (2p)^{1/p})` for `p >= 1`; equals 2 at `p = 1`.
fn path_weak_upper(p: &Exponent) -> f64 {
    let pv = p.value();
    let conj_term = match p.conjugate() {
        Some(c) => c.value().powf(1.0 / c.value()),
        None => 1.0,
    };
    (conj_term * (2.0 * pv).powf(1.0 / pv)).min(3.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enumerate_connected, named_graph};
    use crate::maximal::eval_maximal;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> Exponent {
        s.parse().unwrap()
    }

    fn r(a: i64, b: i64) -> BigRational {
        rational(a, b)
    }

    fn four_vertex(name: &str) -> Graph {
        let edges: &[(usize, usize)] = match name {
            "L4" => &[(1, 2), (2, 3), (3, 4)],
            "C4" => &[(1, 2), (2, 3), (3, 4), (4, 1)],
            "S4" => &[(1, 2), (1, 3), (1, 4)],
            "K4" => &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)],
            "D4" => &[(1, 2), (2, 3), (3, 4), (4, 1), (2, 4)],
            "P4" => &[(1, 2), (2, 3), (2, 4), (3, 4)],
            _ => unreachable!(),
        };
        Graph::from_edges_one_based(4, edges).unwrap()
    }

    #[test]
    fn four_vertex_table() {
        for (name, value) in [("L4", r(13, 6)), ("K4", r(7, 4)), ("S4", r(5, 2)), ("C4", r(23, 12)), ("D4", r(23, 12)), ("P4", r(13, 6))] {
            let res = strong_norm_exact(&four_vertex(name), &p("1")).unwrap();
            assert_eq!(res.value, Number::Rational(value), "{name}");
            assert_eq!(res.kind, NormKind::Exact);
        }
    }

    #[test]
    fn exponent_checks() {
        let g = four_vertex("L4");
        assert!(matches!(strong_norm_exact(&g, &p("3/2")), Err(Error::InvalidExponent { .. })));
        assert!(matches!(isoclass_norm_exact(&g, &p("2")), Err(Error::InvalidExponent { .. })));
        assert!(matches!(restricted_norm_complete_closed_form(4, &p("1")), Err(Error::InvalidExponent { .. })));
        assert_eq!(strong_norm_exact(&g, &Exponent::infinity()).unwrap().value, Number::Rational(r(1, 1)));
    }

    #[test]
    fn families_for_small_p() {
        for n in 2..=8 {
            for ps in ["1/4", "1/2", "3/4", "1"] {
                let e = p(ps);
                let kn = strong_norm_exact(&named_graph(Family::Complete, n).unwrap(), &e).unwrap().to_f64();
                let sn = strong_norm_exact(&named_graph(Family::Star, n).unwrap(), &e).unwrap().to_f64();
                let ck = complete_strong_value(n, e.value());
                let cs = star_strong_value(n, e.value());
                assert!((kn - ck).abs() <= 1e-12 * ck);
                assert!((sn - cs).abs() <= 1e-12 * cs);
            }
        }
    }

    #[test]
    fn delta_reduction_dominates_random_functions() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for n in 2..=5 {
            for g in enumerate_connected(n, true).unwrap() {
                for ps in ["1/4", "1/2", "3/4", "1"] {
                    let e = p(ps);
                    let norm = strong_norm_exact(&g, &e).unwrap().to_f64();
                    for _ in 0..30 {
                        let f = FloatFunction::new((0..n).map(|_| if rng.gen_bool(0.5) { 0.0 } else { rng.gen() }).collect());
                        if f.values().iter().all(|&x| x == 0.0) {
                            continue;
                        }
                        let mf = eval_maximal(&g, &f).unwrap();
                        assert!(mf.lp_norm(e.value()) / f.lp_norm(e.value()) <= norm + 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn isoclass_norms() {
        for n in 3..=7 {
            let half = r(n as i64 + 1, 2);
            for family in [Family::Path, Family::Star] {
                let g = named_graph(family, n).unwrap();
                assert_eq!(isoclass_norm_exact(&g, &p("1")).unwrap().value, Number::Rational(half.clone()));
            }
            let k = named_graph(Family::Complete, n).unwrap();
            assert_eq!(
                isoclass_norm_exact(&k, &p("1")).unwrap().value,
                Number::Rational(r(1, 1) + r(n as i64 - 1, n as i64))
            );
        }
        let c5 = named_graph(Family::Cycle, 5).unwrap();
        let iso = isoclass_norm_exact(&c5, &p("1")).unwrap().to_f64();
        let plain = strong_norm_exact(&c5, &p("1")).unwrap().to_f64();
        assert!(iso >= plain);
    }

    /// Direct sum over `A` of sizes `1..n` for `K_n`: `(1 + max_k (n-k) k^{p-1} / n^p)^{1/p}`.
    fn complete_restricted_by_size(n: usize, pv: f64) -> f64 {
        let nf = n as f64;
        let best = (1..n).map(|k| (nf - k as f64) * (k as f64).powf(pv - 1.0)).fold(0.0, f64::max);
        (1.0 + best / nf.powf(pv)).powf(1.0 / pv)
    }

    #[test]
    fn restricted_complete_graph_formula() {
        for n in 2..=8 {
            let g = named_graph(Family::Complete, n).unwrap();
            for ps in ["1/2", "3/2", "2", "3"] {
                let e = p(ps);
                let brute = restricted_norm(&g, &e).unwrap().to_f64();
                assert!((brute - complete_restricted_by_size(n, e.value()).max(1.0)).abs() < 1e-9, "n={n} p={ps}");
            }
        }
    }

    #[test]
    fn restricted_small_cases() {
        // K_3 at p = 2: n/p' = 3/2 is not an integer
        let (res, case) = restricted_norm_complete_closed_form(3, &p("2")).unwrap();
        assert_eq!(case, RestrictedCase::RoundedCritical { floor: 1 });
        let brute = restricted_norm(&named_graph(Family::Complete, 3).unwrap(), &p("2")).unwrap();
        assert!((res.to_f64() - brute.to_f64()).abs() < 1e-9);
        let (res, case) = restricted_norm_complete_closed_form(2, &p("3")).unwrap();
        assert_eq!(case, RestrictedCase::CoSingleton);
        assert!((res.to_f64() - (1.0f64 + 1.0 / 8.0).powf(1.0 / 3.0)).abs() < 1e-12);
        let (res, case) = restricted_norm_complete_closed_form(4, &p("2")).unwrap();
        assert_eq!(case, RestrictedCase::IntegralCritical);
        assert!((res.to_f64() - 1.25f64.sqrt()).abs() < 1e-12);
        // p given as a float: integrality within tolerance, flagged
        let (res, case) = restricted_norm_complete_closed_form(4, &Exponent::new(2.0).unwrap()).unwrap();
        assert_eq!(case, RestrictedCase::IntegralCritical);
        assert!(!res.notes.is_empty());
    }

    #[test]
    fn restricted_is_at_least_one_and_exact_at_p1() {
        for g in enumerate_connected(4, true).unwrap() {
            let res = restricted_norm(&g, &p("1")).unwrap();
            assert!(res.value.is_exact());
            assert!(res.to_f64() >= 1.0);
            let strong = strong_norm_exact(&g, &p("1")).unwrap();
            assert!(res.value <= strong.value);
        }
    }

    #[test]
    fn restricted_cap() {
        let g = named_graph(Family::Path, RESTRICTED_CAP + 1).unwrap();
        assert!(matches!(restricted_norm(&g, &p("2")), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn weak_quasinorm_examples() {
        let one = p("1");
        assert_eq!(weak_quasinorm(&FloatFunction::delta(5, 2), &p("1/3")).unwrap(), 1.0);
        let h = FloatFunction::new(vec![1.0, 0.5, 1.0 / 3.0, 0.25]);
        assert!((weak_quasinorm(&h, &one).unwrap() - 1.0).abs() < 1e-15);
        let h = ExactFunction::new(vec![r(1, 1), r(1, 2), r(1, 3), r(1, 4)]);
        assert_eq!(weak_l1_quasinorm_exact(&h), r(1, 1));
        for n in 2..=8 {
            let m = eval_maximal(&named_graph(Family::Complete, n).unwrap(), &FloatFunction::delta(n, 0)).unwrap();
            assert!((weak_quasinorm(&m, &p("1/2")).unwrap() - n as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn weak_formulas_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let n = rng.gen_range(1..8);
            let f = FloatFunction::new((0..n).map(|_| if rng.gen_bool(0.3) { 0.0 } else { rng.gen() }).collect());
            for ps in ["1/3", "1", "2", "7/2"] {
                let e = p(ps);
                let a = weak_quasinorm(&f, &e).unwrap();
                let b = weak_quasinorm_level_sets(&f, &e).unwrap();
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn weak_delta_lower_examples() {
        for n in 2..=10 {
            let k = weak_norm_delta_lower(&named_graph(Family::Complete, n).unwrap(), &p("1/2")).unwrap();
            assert!((k.to_f64() - n as f64).abs() < 1e-12);
            let s = weak_norm_delta_lower(&named_graph(Family::Star, n).unwrap(), &p("1")).unwrap();
            assert_eq!(s.value, Number::Rational(r(n as i64, 2).max(r(1, 1))));
            assert_eq!(s.kind, NormKind::LowerBound);
        }
        for n in [3, 5, 7, 9, 11] {
            let l = weak_norm_delta_lower(&named_graph(Family::Path, n).unwrap(), &p("1")).unwrap();
            // midpoint delta of the odd path
            assert_eq!(l.value, Number::Rational(r(2 * n as i64, n as i64 + 1)));
        }
    }

    #[test]
    fn weak_bounded_by_strong_and_trivial_bound() {
        for n in 2..=6 {
            for g in enumerate_connected(n, true).unwrap() {
                for ps in ["1/4", "1/2", "1"] {
                    let e = p(ps);
                    let weak = weak_norm_delta_lower(&g, &e).unwrap().to_f64();
                    let strong = strong_norm_exact(&g, &e).unwrap().to_f64();
                    assert!(weak <= strong + 1e-12);
                    assert!(weak <= (n as f64).powf(1.0 / e.value()) + 1e-12);
                }
            }
        }
    }

    #[test]
    fn ordering_of_four_vertex_norms() {
        let v = |name| strong_norm_exact(&four_vertex(name), &p("1")).unwrap().value;
        assert!(v("S4") > v("P4"));
        assert_eq!(v("P4"), v("L4"));
        assert!(v("L4") > v("D4"));
        assert_eq!(v("D4"), v("C4"));
        assert!(v("C4") > v("K4"));
    }

    #[test]
    fn closed_form_table() {
        let k2 = closed_form_constants(Family::Complete, 2, &p("2"), OperatorNorm::Strong).unwrap();
        let expected = (3.0 + 5f64.sqrt()).sqrt() / 2.0;
        assert!((k2.lower().unwrap() - expected).abs() < 1e-10);
        for n in 2..=6 {
            for ps in ["1", "3/2", "4"] {
                let w = closed_form_constants(Family::Complete, n, &p(ps), OperatorNorm::Weak).unwrap();
                assert_eq!(w.lower(), Some(1.0));
            }
        }
        assert_eq!(
            closed_form_constants(Family::Star, 5, &p("1"), OperatorNorm::Strong).unwrap(),
            ClosedForm::Exact(Number::Rational(r(3, 1)))
        );
        assert_eq!(
            closed_form_constants(Family::Path, 5, &p("1"), OperatorNorm::Weak).unwrap(),
            ClosedForm::Bounds { lower: 1.0, upper: 2.0 }
        );
        assert!(matches!(
            closed_form_constants(Family::Cycle, 5, &p("1"), OperatorNorm::Strong),
            Err(Error::UnsupportedCombination(_))
        ));
        assert!(matches!(
            closed_form_constants(Family::Path, 5, &p("2"), OperatorNorm::Strong),
            Err(Error::UnsupportedCombination(_))
        ));
        let ClosedForm::Bounds { upper, .. } = closed_form_constants(Family::Path, 5, &p("2"), OperatorNorm::Weak).unwrap()
        else {
            panic!()
        };
        assert!((upper - 2.0 * 2f64.sqrt()).abs() < 1e-12);
    }
}
