use std::fmt::Write;
use std::time::Instant;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{count_points_fq, hom_dim_matrix};
use crate::coeff_quiver::{
    arrange, cell_dim_elim, cell_dim_tangent, enumerate_fixed_points, grading, poincare_polynomial,
};
use crate::cyclic_rep::{glue_step, glue_to_fixpoint, hom_dim, DimVector, IndecNilp, NilpRep, Vertex};
use crate::dellac::{enumerate, enumerate_c_degenerate, AffineDellacConfig, CorankTuple, DellacRow};
use crate::flag::{
    build_degenerate_flag_rep, build_partial_degeneration, count_grand_motzkin, flag_dimension,
    irreducible_components,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyLevel {
    Smoke,
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub level: VerifyLevel,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain struct")
    }

    pub fn to_text(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.checks {
            writeln!(
                out,
                "{:<width$}  {}  {:>7} ms  {}",
                c.name,
                if c.passed { "PASS" } else { "FAIL" },
                c.millis,
                c.detail
            )
            .unwrap();
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        writeln!(out, "{} checks, {} failed", self.checks.len(), failed).unwrap();
        out
    }
}

type Outcome = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run(name: &str, check: impl FnOnce() -> Outcome) -> CheckResult {
    let start = Instant::now();
    let outcome = check();
    let millis = start.elapsed().as_millis();
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CheckResult {
        name: name.to_string(),
        passed,
        detail,
        millis,
    }
}

fn us(n: usize, start: usize, len: usize) -> IndecNilp {
    IndecNilp::from_start(Vertex::new(n, start).expect("label in range"), len)
}

fn hom_counterexample() -> Outcome {
    let u = NilpRep::from_summands(4, [us(4, 2, 4), us(4, 2, 4), us(4, 3, 2)]);
    let x = NilpRep::from_summands(4, [us(4, 3, 5), us(4, 4, 5)]);
    let words = (hom_dim(&u, &u), hom_dim(&x, &x));
    let matrices = (
        hom_dim_matrix(&u, &u).map_err(|e| e.to_string())?,
        hom_dim_matrix(&x, &x).map_err(|e| e.to_string())?,
    );
    ensure(words == (5, 6) && matrices == (5, 6), || {
        format!("words {words:?}, matrices {matrices:?}")
    })?;
    Ok("[U,U] = 5, [X,X] = 6".into())
}

fn hom_oracle() -> Outcome {
    let mut pairs = 0;
    for n in 1..=4 {
        for a in 1..=n {
            for b in 1..=n {
                for la in 1..=10 {
                    for lb in 1..=10 {
                        let x = NilpRep::from_summands(n, [us(n, a, la)]);
                        let y = NilpRep::from_summands(n, [us(n, b, lb)]);
                        let m = hom_dim_matrix(&x, &y).map_err(|e| e.to_string())?;
                        let w = hom_dim(&x, &y);
                        ensure(m == w, || format!("[{x}, {y}]: matrix {m}, words {w}"))?;
                        pairs += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{pairs} pairs agree"))
}

fn flag_cells(n: usize, omega: usize) -> std::result::Result<(Vec<usize>, usize), String> {
    let flag = build_degenerate_flag_rep(n, omega);
    let cq = arrange(&flag.rep);
    let g = grading(&cq);
    let mut dims = Vec::new();
    for fp in enumerate_fixed_points(&cq, &flag.e) {
        dims.push(cell_dim_elim(&cq, &g, &fp).map_err(|e| e.to_string())?);
    }
    let count = dims.len();
    Ok((dims, count))
}

fn dimension_theorem(instances: &[(usize, usize)]) -> Outcome {
    for &(n, omega) in instances {
        let (dims, _) = flag_cells(n, omega)?;
        let max = dims.iter().copied().max().unwrap_or(0);
        ensure(max == flag_dimension(n, omega), || {
            format!("({n},{omega}): max cell dimension {max}")
        })?;
    }
    Ok(format!("{} instances", instances.len()))
}

/// Grand Motzkin paths of length `n` by walking all step sequences.
fn motzkin_paths_brute(n: usize) -> usize {
    let mut count = 0;
    for code in 0..3usize.pow(n as u32) {
        let mut c = code;
        let mut height = 0i64;
        for _ in 0..n {
            height += (c % 3) as i64 - 1;
            c /= 3;
        }
        count += (height == 0) as usize;
    }
    count
}

fn binomial(n: usize, k: usize) -> BigUint {
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * BigUint::from(n - i) / BigUint::from(i + 1))
}

fn components() -> Outcome {
    for n in 1..=4 {
        let labels = irreducible_components(&vec![1; n], &vec![1; n], 1).map_err(|e| e.to_string())?;
        let brute = motzkin_paths_brute(n);
        ensure(
            labels.len() == brute && BigUint::from(brute) == count_grand_motzkin(n),
            || format!("n = {n}: {} components, {brute} paths", labels.len()),
        )?;
        ensure(BigUint::from(labels.len()) <= binomial(2 * n - 1, n), || {
            format!("n = {n}: binomial bound violated")
        })?;
    }
    Ok("1, 3, 7, 19".into())
}

fn paper_config() -> AffineDellacConfig {
    let rows = [(3, 2), (2, 2), (4, 3), (1, 1), (2, 2), (3, 0), (4, 3), (1, 2)]
        .map(|(col, k)| DellacRow { col, k })
        .to_vec();
    AffineDellacConfig { n: 4, omega: 3, rows }
}

fn dellac_bijection() -> Outcome {
    for (n, omega) in [(2, 1), (2, 2), (3, 1)] {
        let flag = build_degenerate_flag_rep(n, omega);
        let cq = arrange(&flag.rep);
        let mut cells = 0;
        for fp in enumerate_fixed_points(&cq, &flag.e) {
            let config = AffineDellacConfig::from_fixed_point(n, omega, &fp).map_err(|e| e.to_string())?;
            let back = config.to_fixed_point().map_err(|e| e.to_string())?;
            ensure(back == fp, || format!("({n},{omega}): {fp:?} does not round trip"))?;
            cells += 1;
        }
        let configs = enumerate(n, omega).count();
        ensure(configs == cells, || {
            format!("({n},{omega}): {configs} configurations, {cells} cells")
        })?;
    }
    let paper = paper_config();
    let v = paper.validate().map_err(|e| e.to_string())?;
    ensure(v.is_valid() && v.sum == 48, || format!("paper example: {:?}", v.violation))?;
    ensure(paper.row_fill_dim_vector() == DimVector::constant(4, 12), || {
        "paper example is not homogeneous".into()
    })?;
    Ok("round trips and counts agree".into())
}

fn euler_poincare(instances: &[(usize, usize)]) -> Outcome {
    for &(n, omega) in instances {
        let flag = build_degenerate_flag_rep(n, omega);
        let cq = arrange(&flag.rep);
        let p = poincare_polynomial(&cq, &flag.e).map_err(|e| e.to_string())?;
        let count = enumerate_fixed_points(&cq, &flag.e).count();
        ensure(p.cell_count() == BigUint::from(count), || {
            format!("({n},{omega}): P(1) = {}, {count} fixed points", p.cell_count())
        })?;
        ensure(p.degree() == Some(flag_dimension(n, omega)), || {
            format!("({n},{omega}): degree {:?}", p.degree())
        })?;
    }
    Ok(format!("{} instances", instances.len()))
}

fn point_counts() -> Outcome {
    for (n, omega, q) in [(1, 1, 2), (1, 1, 3), (2, 1, 2)] {
        let flag = build_degenerate_flag_rep(n, omega);
        let cq = arrange(&flag.rep);
        let p = poincare_polynomial(&cq, &flag.e).map_err(|e| e.to_string())?;
        let points = count_points_fq(&flag.rep, &flag.e, q).map_err(|e| e.to_string())?;
        ensure(points == p.eval_u64(q as u64), || {
            format!("({n},{omega}) q = {q}: {points} points, P(q) = {}", p.eval_u64(q as u64))
        })?;
    }
    Ok("|X(F_q)| = P(q)".into())
}

fn all_coranks(n: usize) -> Vec<CorankTuple> {
    (0..1usize << n)
        .map(|mask| CorankTuple::new((0..n).map(|i| 1 + (mask >> i & 1) as u8).collect()).expect("entries in {1,2}"))
        .collect()
}

fn methods_agree() -> Outcome {
    let mut reps = Vec::new();
    for (n, omega) in [(2, 1), (2, 2), (3, 1)] {
        let f = build_degenerate_flag_rep(n, omega);
        reps.push((f.rep, f.e));
    }
    for n in 1..=2 {
        for omega in 1..=2 {
            for c in all_coranks(n) {
                let f = build_partial_degeneration(n, omega, &c).map_err(|e| e.to_string())?;
                reps.push((f.rep, f.e));
            }
        }
    }
    let mut cells = 0;
    for (rep, e) in &reps {
        let cq = arrange(rep);
        let g = grading(&cq);
        for fp in enumerate_fixed_points(&cq, e) {
            let a = cell_dim_elim(&cq, &g, &fp).map_err(|e| e.to_string())?;
            let b = cell_dim_tangent(&cq, &g, &fp);
            ensure(a == b, || format!("{rep}: {fp:?} elim {a}, tangent {b}"))?;
            cells += 1;
        }
    }
    Ok(format!("{cells} cells"))
}

fn partial_degenerations() -> Outcome {
    let mut cases = 0;
    for n in 1..=3 {
        for omega in 1..=2 {
            let full: std::collections::HashSet<_> = enumerate(n, omega).collect();
            for c in all_coranks(n) {
                let f = build_partial_degeneration(n, omega, &c).map_err(|e| e.to_string())?;
                let cq = arrange(&f.rep);
                let fixed = enumerate_fixed_points(&cq, &f.e).count();
                let configs: Vec<_> = enumerate_c_degenerate(n, omega, &c).collect();
                ensure(configs.len() == fixed, || {
                    format!("n={n} ω={omega} c={c}: {} configurations, {fixed} fixed points", configs.len())
                })?;
                ensure(configs.iter().all(|x| full.contains(x)), || "subset property".into())?;
                cases += 1;
            }
            let full_rep = build_partial_degeneration(n, omega, &CorankTuple::full(n)).map_err(|e| e.to_string())?;
            ensure(full_rep == build_degenerate_flag_rep(n, omega), || "full endpoint".into())?;
        }
    }
    Ok(format!("{cases} corank tuples"))
}

/// Homogeneous representation with lengths `≤ ωn`: full-length summands cut
/// at random places.
pub fn random_homogeneous_rep<R: Rng>(rng: &mut R, n: usize, omega: usize, summands: usize) -> NilpRep {
    let bound = omega * n;
    let mut parts: Vec<IndecNilp> = (0..summands)
        .map(|_| IndecNilp::new(Vertex::from_residue(n, rng.random_range(0..n)), bound))
        .collect();
    let cuts = rng.random_range(1..=2 * summands);
    for _ in 0..cuts {
        let idx = rng.random_range(0..parts.len());
        let u = parts[idx];
        if u.len < 2 {
            continue;
        }
        let a = rng.random_range(1..u.len);
        parts[idx] = IndecNilp::from_start(u.start(), a);
        parts.push(IndecNilp::from_start(u.start().offset(a as i64), u.len - a));
    }
    NilpRep::from_summands(n, parts)
}

/// Arbitrary non-empty representation with `n ≤ max_n`, lengths `≤ max_len`.
pub fn random_nilp_rep<R: Rng>(rng: &mut R, max_n: usize, max_len: usize) -> NilpRep {
    let n = rng.random_range(1..=max_n);
    let count = rng.random_range(1..=6);
    NilpRep::from_summands(
        n,
        (0..count).map(|_| {
            IndecNilp::new(Vertex::from_residue(n, rng.random_range(0..n)), rng.random_range(1..=max_len))
        }),
    )
}

fn glue_property(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..100 {
        let n = rng.random_range(1..=4);
        let omega = rng.random_range(1..=2);
        let k = rng.random_range(1..=4);
        let u = random_homogeneous_rep(&mut rng, n, omega, k);
        let bound = omega * n;
        let mut cur = u.clone();
        while cur.iter().any(|(s, _)| s.len < bound) {
            let next = glue_step(&cur, bound).map_err(|e| format!("{cur}: {e}"))?;
            ensure(next.dim_vector() == cur.dim_vector(), || format!("{cur}: dimension changed"))?;
            ensure(hom_dim(&next, &next) < hom_dim(&cur, &cur), || {
                format!("{cur}: self-Hom did not drop")
            })?;
            cur = next;
        }
        let (last, steps) = glue_to_fixpoint(&u, bound).map_err(|e| e.to_string())?;
        let s = u.num_summands();
        ensure(steps <= s * s, || format!("{u}: {steps} steps"))?;
        let m = last.num_summands();
        ensure(hom_dim(&last, &last) == omega * m * m, || format!("{u}: final self-Hom"))?;
    }
    Ok("100 inputs".into())
}

fn grading_property(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..100 {
        let rep = random_nilp_rep(&mut rng, 4, 8);
        let cq = arrange(&rep);
        let g = grading(&cq);
        for v in Vertex::all(rep.n()) {
            for row in 1..cq.point_count(v) {
                ensure(g.weight_at(&cq, v, row - 1) < g.weight_at(&cq, v, row), || {
                    format!("{rep}: column {v} not increasing")
                })?;
            }
            for row in 0..cq.point_count(v) {
                if let Some(r2) = cq.succ_row(v, row) {
                    let step = g.weight_at(&cq, v.succ(), r2) - g.weight_at(&cq, v, row);
                    ensure(step == cq.end_count(v) as i64, || format!("{rep}: arrow out of {v}"))?;
                }
            }
        }
    }
    Ok("100 representations".into())
}

const FLAG_INSTANCES: [(usize, usize); 5] = [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1)];

/// Runs the cross-checks. `smoke` covers the fastest three; `full` all eleven.
pub fn verify_suite(level: VerifyLevel, seed: u64) -> VerifyReport {
    let mut checks = vec![run("AC1 hom counterexample", hom_counterexample)];
    match level {
        VerifyLevel::Smoke => {
            checks.push(run("AC3 dimension (1,1)", || dimension_theorem(&[(1, 1)])));
            checks.push(run("AC6 euler/poincare (1,1)", || euler_poincare(&[(1, 1)])));
        }
        VerifyLevel::Full => {
            checks.push(run("AC2 hom oracle", hom_oracle));
            checks.push(run("AC3 dimension", || dimension_theorem(&FLAG_INSTANCES)));
            checks.push(run("AC4 components", components));
            checks.push(run("AC5 dellac bijection", dellac_bijection));
            checks.push(run("AC6 euler/poincare", || euler_poincare(&FLAG_INSTANCES)));
            checks.push(run("AC7 point counts", point_counts));
            checks.push(run("AC8 cell methods", methods_agree));
            checks.push(run("AC9 partial degenerations", partial_degenerations));
            checks.push(run("AC10 glue step", || glue_property(seed)));
            checks.push(run("AC11 grading", || grading_property(seed)));
        }
    }
    VerifyReport { level, checks }
}
