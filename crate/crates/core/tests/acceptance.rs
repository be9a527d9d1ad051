//! Acceptance criteria, one line each. Runs without the libtest harness so every
//! criterion reports even when an earlier one fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use graphmax::covering::{dilation_index, overlapping_index, vitali_select, weak11_upper_bound, OVERLAP_CAP};
use graphmax::exact::{restricted_norm, restricted_norm_complete_closed_form, strong_norm_exact, weak_norm_delta_lower};
use graphmax::function::FloatFunction;
use graphmax::graph::enumerate_connected;
use graphmax::maximal::{delta_response_matrix, eval_maximal, reconstruct_from_deltas};
use graphmax::numeric::{k2_alpha_root, strong_norm_estimate, weak_norm_estimate, OptimizerConfig};
use graphmax::{named_graph, Ball, Exponent, Family, Graph, Number};

type Outcome = Result<(), String>;

fn r(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn exp(s: &str) -> Exponent {
    s.parse().unwrap()
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn four(edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges_one_based(4, edges).unwrap()
}

fn c1_four_vertex_table() -> Outcome {
    let table = [
        ("L4", four(&[(1, 2), (2, 3), (3, 4)]), r(13, 6)),
        ("C4", four(&[(1, 2), (2, 3), (3, 4), (4, 1)]), r(23, 12)),
        ("S4", four(&[(1, 2), (1, 3), (1, 4)]), r(5, 2)),
        ("K4", four(&[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]), r(7, 4)),
        ("D4", four(&[(1, 2), (2, 3), (3, 4), (4, 1), (2, 4)]), r(23, 12)),
        ("P4", four(&[(1, 2), (2, 3), (2, 4), (3, 4)]), r(13, 6)),
    ];
    for (name, g, want) in table {
        let got = strong_norm_exact(&g, &Exponent::one()).map_err(|e| e.to_string())?.value;
        ensure(got == Number::Rational(want.clone()), || format!("{name}: {got} != {want}"))?;
    }
    Ok(())
}

fn c2_closed_forms() -> Outcome {
    for n in 2..=10usize {
        let nf = n as f64;
        for ps in ["1/4", "1/2", "3/4", "1"] {
            let p = exp(ps);
            let pv = p.value();
            let k = strong_norm_exact(&named_graph(Family::Complete, n).unwrap(), &p).unwrap().value;
            let s = strong_norm_exact(&named_graph(Family::Star, n).unwrap(), &p).unwrap().value;
            if p.is_one() {
                let kw = Number::Rational(r(1, 1) + r(n as i64 - 1, n as i64));
                let sw = Number::Rational(r(n as i64 + 1, 2));
                ensure(k == kw, || format!("K_{n} p=1: {k} != {kw}"))?;
                ensure(s == sw, || format!("S_{n} p=1: {s} != {sw}"))?;
            } else {
                let kw = (1.0 + (nf - 1.0) / nf.powf(pv)).powf(1.0 / pv);
                let sw = (1.0 + (nf - 1.0) / 2f64.powf(pv)).powf(1.0 / pv);
                ensure(rel_close(k.to_f64(), kw, 1e-12), || format!("K_{n} p={ps}: {k} vs {kw}"))?;
                ensure(rel_close(s.to_f64(), sw, 1e-12), || format!("S_{n} p={ps}: {s} vs {sw}"))?;
            }
        }
    }
    Ok(())
}

fn c3_extremal() -> Outcome {
    for n in 2..=6usize {
        let nf = n as f64;
        for ps in ["1/2", "1"] {
            let p = exp(ps);
            for g in enumerate_connected(n, true).unwrap() {
                let v = strong_norm_exact(&g, &p).unwrap().value;
                let (eq_lo, eq_hi, above, below) = if p.is_one() {
                    let lo = Number::Rational(r(1, 1) + r(n as i64 - 1, n as i64));
                    let hi = Number::Rational(r(n as i64 + 1, 2));
                    (v == lo, v == hi, v > lo, v < hi)
                } else {
                    let x = v.to_f64();
                    let lo = (1.0 + (nf - 1.0) / nf.sqrt()).powi(2);
                    let hi = (1.0 + (nf - 1.0) / 2f64.sqrt()).powi(2);
                    (rel_close(x, lo, 1e-12), rel_close(x, hi, 1e-12), x > lo, x < hi)
                };
                ensure(eq_lo == g.is_complete(), || format!("lower equality mismatch for {g:?} p={ps}"))?;
                ensure(eq_hi == g.is_star(), || format!("upper equality mismatch for {g:?} p={ps}"))?;
                ensure(eq_lo || above, || format!("{g:?} below the lower bound at p={ps}"))?;
                ensure(eq_hi || below, || format!("{g:?} above the upper bound at p={ps}"))?;
            }
        }
    }
    Ok(())
}

fn c4_k2() -> Outcome {
    let g = named_graph(Family::Complete, 2).unwrap();
    let p = exp("2");
    let est = strong_norm_estimate(&g, &p, &OptimizerConfig::for_size(2)).unwrap().to_f64();
    let want = (3.0 + 5f64.sqrt()).sqrt() / 2.0;
    ensure((est - want).abs() < 1e-6, || format!("estimate {est} vs {want}"))?;
    let alpha = k2_alpha_root(&p).unwrap();
    ensure((alpha - (5f64.sqrt() - 2.0)).abs() < 1e-10, || format!("alpha {alpha}"))
}

fn c5_restricted() -> Outcome {
    let mut failures = Vec::new();
    for n in 2..=10usize {
        let nf = n as f64;
        let g = named_graph(Family::Complete, n).unwrap();
        for ps in ["3/2", "2", "5/2", "3"] {
            let p = exp(ps);
            let pv = p.value();
            let (closed, _) = restricted_norm_complete_closed_form(n, &p).unwrap();
            let brute = restricted_norm(&g, &p).unwrap().to_f64();
            if (closed.to_f64() - brute).abs() >= 1e-9 {
                failures.push(format!("n={n} p={ps}: closed form {} vs scan {brute}", closed.to_f64()));
            }
            let conj = pv / (pv - 1.0);
            let base = (1.0 + (nf - 1.0) / nf.powf(pv)).powf(1.0 / pv);
            if nf > conj && closed.to_f64() <= base {
                failures.push(format!("n={n} p={ps}: {} is not above {base}", closed.to_f64()));
            }
        }
    }
    ensure(failures.is_empty(), || failures.join("; "))
}

fn c6_weak() -> Outcome {
    let mut failures = Vec::new();
    for n in 2..=15usize {
        let nf = n as f64;
        let k = named_graph(Family::Complete, n).unwrap();
        for ps in ["1/4", "1/2", "3/4", "1"] {
            let p = exp(ps);
            let got = weak_norm_delta_lower(&k, &p).unwrap().value;
            let ok = if p.is_one() {
                got == Number::Rational(r(1, 1))
            } else {
                rel_close(got.to_f64(), nf.powf(1.0 / p.value() - 1.0), 1e-12)
            };
            if !ok {
                failures.push(format!("K_{n} p={ps} delta bound {got}"));
            }
        }
        for ps in ["1", "3/2", "2", "3"] {
            let est = weak_norm_estimate(&k, &exp(ps), &OptimizerConfig::for_size(n)).unwrap().to_f64();
            if !(1.0..=1.0 + 1e-6).contains(&est) {
                failures.push(format!("K_{n} p={ps} weak estimate {est}"));
            }
        }
        let s = named_graph(Family::Star, n).unwrap();
        for ps in ["1/2", "1", "2"] {
            let p = exp(ps);
            let got = weak_norm_delta_lower(&s, &p).unwrap().value;
            let ok = if p.is_one() {
                got == Number::Rational(r(n as i64, 2).max(r(1, 1)))
            } else {
                rel_close(got.to_f64(), (nf.powf(1.0 / p.value()) / 2.0).max(1.0), 1e-12)
            };
            if !ok {
                failures.push(format!("S_{n} p={ps} delta bound {got}"));
            }
        }
    }
    for n in (3..=15usize).step_by(2) {
        let got = weak_norm_delta_lower(&named_graph(Family::Path, n).unwrap(), &Exponent::one()).unwrap().value;
        let want = r(2 * n as i64, n as i64 - 1);
        if got != Number::Rational(want.clone()) {
            failures.push(format!("L_{n} delta bound {got} != {want}"));
        }
    }
    ensure(failures.is_empty(), || failures.join("; "))
}

fn c7_indices() -> Outcome {
    for n in 2..=7usize {
        let k = named_graph(Family::Complete, n).unwrap();
        let s = named_graph(Family::Star, n).unwrap();
        ensure(dilation_index(&k).value == r(1, 1), || format!("D(K_{n})"))?;
        ensure(dilation_index(&s).value == r(n as i64, 2).max(r(1, 1)), || format!("D(S_{n})"))?;
        ensure(overlapping_index(&k).unwrap().value == 1, || format!("O(K_{n})"))?;
        ensure(overlapping_index(&s).unwrap().value == n - 1, || format!("O(S_{n})"))?;
    }
    for (n, want) in (3..=7).zip([r(3, 2), r(2, 1), r(2, 1), r(2, 1), r(7, 3)]) {
        let got = dilation_index(&named_graph(Family::Path, n).unwrap()).value;
        ensure(got == want, || format!("D(L_{n}) = {got}"))?;
    }
    for n in 3..=7 {
        ensure(overlapping_index(&named_graph(Family::Path, n).unwrap()).unwrap().value == 2, || format!("O(L_{n})"))?;
    }
    for n in 4..=7 {
        ensure(overlapping_index(&named_graph(Family::Cycle, n).unwrap()).unwrap().value == 2, || format!("O(C_{n})"))?;
    }
    Ok(())
}

fn distinct_balls(g: &Graph) -> Vec<Ball> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for x in 0..g.n() {
        for radius in 0..=g.eccentricity(x) {
            let b = g.ball(x, radius);
            if seen.insert(b.members.clone()) {
                out.push(b);
            }
        }
    }
    out
}

fn c8_index_bound() -> Outcome {
    let one = Exponent::one();
    for n in 1..=6usize {
        for g in enumerate_connected(n, true).unwrap() {
            let bound = weak11_upper_bound(&g, false, OVERLAP_CAP).unwrap().weak11_upper;
            let delta = weak_norm_delta_lower(&g, &one).unwrap().value;
            ensure(delta <= Number::Rational(bound.clone()), || format!("{g:?}: delta {delta} > {bound}"))?;
            let est = weak_norm_estimate(&g, &one, &OptimizerConfig::for_size(n)).unwrap().to_f64();
            let b = Number::Rational(bound.clone()).to_f64();
            ensure(est <= b + 1e-9, || format!("{g:?}: estimate {est} > {bound}"))?;
        }
    }
    for n in 1..=5usize {
        for g in enumerate_connected(n, true).unwrap() {
            let d = dilation_index(&g).value;
            let balls = distinct_balls(&g);
            for mask in 1u64..(1 << balls.len()) {
                let family: Vec<Ball> = (0..balls.len()).filter(|i| mask >> i & 1 == 1).map(|i| balls[i].clone()).collect();
                let union: BTreeSet<usize> = family.iter().flat_map(|b| b.members.iter().copied()).collect();
                let chosen = vitali_select(&family);
                let total: usize = chosen.iter().map(Ball::len).sum();
                let disjoint = chosen.iter().enumerate().all(|(i, a)| chosen[i + 1..].iter().all(|b| !a.intersects(b)));
                let lhs = BigRational::from_integer(BigInt::from(union.len()));
                let rhs = &d * BigRational::from_integer(BigInt::from(total));
                ensure(disjoint && lhs <= rhs, || format!("{g:?}: Vitali fails for {family:?}"))?;
            }
        }
    }
    Ok(())
}

fn c9_reconstruction() -> Outcome {
    for n in 1..=6usize {
        for g in enumerate_connected(n, false).unwrap() {
            let h = reconstruct_from_deltas(&delta_response_matrix(&g)).map_err(|e| format!("{g:?}: {e}"))?;
            ensure(h.edges() == g.edges(), || format!("{g:?} came back as {h:?}"))?;
        }
    }
    Ok(())
}

/// `‖M_{L_n}‖₁` from the path's ball sizes, independent of BFS and the delta matrix.
fn path_l1_norm(n: usize) -> f64 {
    let size = |j: usize, r: usize| j.min(r) + (n - 1 - j).min(r) + 1;
    (0..n)
        .map(|k| (0..n).map(|j| 1.0 / size(j, j.abs_diff(k)) as f64).sum::<f64>())
        .fold(0.0, f64::max)
}

fn c10_properties() -> Outcome {
    let one = Exponent::one();
    let mut prev_norm = 0.0;
    let mut prev_ratio = f64::INFINITY;
    let mut prev_d = r(0, 1);
    for n in 3..=64usize {
        let g = named_graph(Family::Path, n).unwrap();
        let norm = strong_norm_exact(&g, &one).unwrap().to_f64();
        ensure((norm - path_l1_norm(n)).abs() < 1e-9, || format!("L_{n}: {norm} vs {}", path_l1_norm(n)))?;
        let ratio = norm / (n as f64).ln();
        ensure(norm >= prev_norm, || format!("‖M_L{n}‖₁ decreased"))?;
        ensure(ratio < prev_ratio, || format!("ratio to log n rose at n={n}"))?;
        ensure((1.14..=1.83).contains(&ratio), || format!("L_{n}: ratio {ratio} outside [1.14, 1.83]"))?;
        let d = dilation_index(&g).value;
        ensure(d >= prev_d && d < r(3, 1), || format!("D(L_{n}) = {d}"))?;
        prev_norm = norm;
        prev_ratio = ratio;
        prev_d = d;
    }
    ensure(prev_d == r(32, 11), || format!("D(L_64) = {prev_d}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for n in 1..=6usize {
        for g in enumerate_connected(n, true).unwrap() {
            for ps in ["1/4", "1/2", "3/4", "1"] {
                let p = exp(ps);
                let norm = strong_norm_exact(&g, &p).unwrap().to_f64();
                for _ in 0..200 {
                    let f = FloatFunction::new(
                        (0..n).map(|_| if rng.gen_bool(0.5) { 0.0 } else { rng.gen::<f64>() }).collect(),
                    );
                    let fp = f.lp_norm(p.value());
                    if fp == 0.0 {
                        continue;
                    }
                    let ratio = eval_maximal(&g, &f).unwrap().lp_norm(p.value()) / fp;
                    ensure(ratio <= norm + 1e-12, || format!("{g:?} p={ps}: ratio {ratio} > {norm}"))?;
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Outcome); 10] = [
        ("1 four-vertex table", Duration::from_secs(1), c1_four_vertex_table),
        ("2 closed forms for K_n and S_n", Duration::from_secs(5), c2_closed_forms),
        ("3 extremal characterization", Duration::from_secs(60), c3_extremal),
        ("4 K_2 at p=2", Duration::from_secs(1), c4_k2),
        ("5 restricted-type norms", Duration::from_secs(10), c5_restricted),
        ("6 weak norms", Duration::from_secs(30), c6_weak),
        ("7 covering indices", Duration::from_secs(300), c7_indices),
        ("8 index bound and Vitali", Duration::from_secs(600), c8_index_bound),
        ("9 reconstruction", Duration::from_secs(60), c9_reconstruction),
        ("10 property suites", Duration::from_secs(300), c10_properties),
    ];
    let mut failed = 0;
    for (name, budget, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(elapsed <= budget, || format!("took {elapsed:.2?}, budget {budget:?}"))
        });
        match outcome {
            Ok(()) => println!("PASS criterion {name} ({elapsed:.2?})"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name} ({elapsed:.2?}): {msg}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
