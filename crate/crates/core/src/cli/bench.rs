//! Timing and accuracy of radical versus iterative solves.
//!
//! Instances are drawn with ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`),
//! each parameter component uniform in `[-2, 2)`, model one then model two
//! per trial. The instance stream and every accuracy figure are fully
//! determined by the seed; only the timings vary between runs.

use std::hint::black_box;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::Result;
use crate::oracle::{oracle_roots, OracleConfig};
use crate::poly::{evaluate, match_roots, residual_scale, ComplexScalar, MonicPolynomial, RootMultiset};
use crate::sextic::{MonicSextic, SexticRoots};
use crate::{model_one, model_two};

use super::wire::SCHEMA_VERSION;

pub const DEFAULT_REPETITIONS: usize = 1000;

pub const RNG_DESCRIPTION: &str =
    "ChaCha8 (rand_chacha 0.9, seed_from_u64); components uniform in [-2, 2)";

pub fn random_complex(rng: &mut impl Rng) -> ComplexScalar {
    ComplexScalar::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0))
}

pub fn random_params(rng: &mut impl Rng) -> [ComplexScalar; 5] {
    std::array::from_fn(|_| random_complex(rng))
}

#[derive(Default)]
struct MethodStats {
    per_solve_ns: Vec<f64>,
    max_scaled_residual: f64,
}

impl MethodStats {
    fn record(&mut self, ns: f64, poly: &MonicPolynomial, roots: &RootMultiset) {
        self.per_solve_ns.push(ns);
        for &z in roots.as_slice() {
            let r = evaluate(poly, z).norm() / residual_scale(poly, z);
            self.max_scaled_residual = self.max_scaled_residual.max(r);
        }
    }

    fn to_json(&self, name: &str) -> Value {
        let mut sorted = self.per_solve_ns.clone();
        sorted.sort_by(f64::total_cmp);
        json!({
            "name": name,
            "median_ns": percentile(&sorted, 0.5),
            "p95_ns": percentile(&sorted, 0.95),
            "max_scaled_residual": self.max_scaled_residual,
        })
    }
}

/// Nearest-rank percentile of sorted data.
fn percentile(sorted: &[f64], q: f64) -> f64 {
    if sorted.is_empty() {
        return f64::NAN;
    }
    let rank = (q * sorted.len() as f64).ceil() as usize;
    sorted[rank.clamp(1, sorted.len()) - 1]
}

fn time_per_call<T>(repetitions: usize, mut f: impl FnMut() -> T) -> f64 {
    let start = Instant::now();
    for _ in 0..repetitions {
        black_box(f());
    }
    start.elapsed().as_nanos() as f64 / repetitions as f64
}

struct ModelBench {
    radical: MethodStats,
    oracle: MethodStats,
    max_matched_distance: f64,
}

impl ModelBench {
    fn new() -> Self {
        Self {
            radical: MethodStats::default(),
            oracle: MethodStats::default(),
            max_matched_distance: 0.0,
        }
    }

    fn trial(
        &mut self,
        c: &MonicSextic,
        repetitions: usize,
        radical: impl Fn() -> SexticRoots,
    ) -> Result<()> {
        let poly = c.to_polynomial();
        let cfg = OracleConfig::default();
        let radical_roots = radical().values();
        let oracle_result = oracle_roots(&poly, &cfg)?;

        let radical_ns = time_per_call(repetitions, &radical);
        let oracle_ns = time_per_call(repetitions, || oracle_roots(&poly, &cfg));

        self.radical.record(radical_ns, &poly, &radical_roots);
        self.oracle.record(oracle_ns, &poly, &oracle_result);
        let m = match_roots(&radical_roots, &oracle_result)?;
        self.max_matched_distance = self.max_matched_distance.max(m.max_distance);
        Ok(())
    }

    fn to_json(&self, model: u8) -> Value {
        json!({
            "model": model,
            "radical": self.radical.to_json("radical"),
            "oracle": self.oracle.to_json("oracle"),
            "max_matched_distance": self.max_matched_distance,
        })
    }
}

pub fn run(trials: usize, seed: u64, repetitions: usize) -> Result<Value> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut one = ModelBench::new();
    let mut two = ModelBench::new();
    for _ in 0..trials {
        let p1 = model_one::ModelOneParams::from_array(random_params(&mut rng))?;
        let p2 = model_two::ModelTwoParams::from_array(random_params(&mut rng))?;
        one.trial(&model_one::coefficients_from_params(&p1), repetitions, || model_one::solve(&p1))?;
        two.trial(&model_two::coefficients_from_params(&p2), repetitions, || model_two::solve(&p2))?;
    }
    Ok(json!({
        "schema": SCHEMA_VERSION,
        "command": "bench",
        "trials": trials,
        "seed": seed,
        "repetitions": repetitions,
        "rng": RNG_DESCRIPTION,
        "models": [one.to_json(1), two.to_json(2)],
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nearest_rank_percentile() {
        let data: Vec<f64> = (1..=20).map(f64::from).collect();
        assert_eq!(percentile(&data, 0.5), 10.0);
        assert_eq!(percentile(&data, 0.95), 19.0);
        assert_eq!(percentile(&[3.0], 0.95), 3.0);
    }

    #[test]
    fn seeded_draws_repeat() {
        let a = random_params(&mut ChaCha8Rng::seed_from_u64(7));
        let b = random_params(&mut ChaCha8Rng::seed_from_u64(7));
        assert_eq!(a, b);
        assert!(a.iter().all(|z| z.re.abs() <= 2.0 && z.im.abs() <= 2.0));
    }
}
