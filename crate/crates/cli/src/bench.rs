use std::time::Instant;

use anyhow::Result;
use clap::Args;
use irred::strategy::{Registry, Request};
use irred::{Error, SeededRng};
use rand::{RngCore, SeedableRng};

use crate::{prime, SeedArgs};

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Characteristics in the grid (repeatable).
    #[arg(short = 'p', default_values_t = ["2147483647".to_string()])]
    p: Vec<String>,
    /// Degrees in the grid (repeatable).
    #[arg(short = 'd', default_values_t = [8usize, 16])]
    d: Vec<usize>,
    /// Timed runs per point; the median is reported.
    #[arg(long, default_value_t = 5)]
    runs: usize,
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    seed: SeedArgs,
}

struct Row {
    method: &'static str,
    p: String,
    d: usize,
    median_ms: f64,
    /// `time(d) / time(d / 2)` when `d / 2` is also in the grid.
    growth: Option<f64>,
}

pub fn cmd_bench(args: BenchArgs) -> Result<u8> {
    if args.runs < 5 {
        return Err(Error::InvalidInput("bench needs at least 5 runs per point".into()).into());
    }
    if args.d.contains(&0) {
        return Err(Error::InvalidInput("degrees must be at least 1".into()).into());
    }
    let primes = args.p.iter().map(|s| prime(s)).collect::<Result<Vec<_>>>()?;
    let mut master = args.seed.rng();
    let registry = Registry::builtin();
    let mut rows: Vec<Row> = Vec::new();
    for method in registry.iter() {
        for p in &primes {
            for &d in &args.d {
                let req = Request {
                    p: p.clone(),
                    k: 1,
                    d,
                    modulus: None,
                };
                let mut times = Vec::with_capacity(args.runs);
                for _ in 0..args.runs {
                    let mut rng = SeededRng::seed_from_u64(master.next_u64());
                    let start = Instant::now();
                    method.construct(&req, &mut rng)?;
                    times.push(start.elapsed().as_secs_f64() * 1e3);
                }
                rows.push(Row {
                    method: method.name(),
                    p: p.value().to_string(),
                    d,
                    median_ms: median(&mut times),
                    growth: None,
                });
            }
        }
    }
    for i in 0..rows.len() {
        let r = &rows[i];
        let half = rows
            .iter()
            .find(|h| h.method == r.method && h.p == r.p && 2 * h.d == r.d)
            .map(|h| h.median_ms);
        rows[i].growth = half.map(|h| rows[i].median_ms / h.max(1e-9));
    }

    if args.json {
        let out: Vec<_> = rows
            .iter()
            .map(|r| {
                serde_json::json!({
                    "method": r.method,
                    "p": r.p,
                    "d": r.d,
                    "median_ms": r.median_ms,
                    "growth": r.growth,
                })
            })
            .collect();
        println!("{}", serde_json::Value::Array(out));
    } else {
        println!("{:<10} {:>20} {:>5} {:>12} {:>8}", "method", "p", "d", "median_ms", "growth");
        for r in &rows {
            let growth = r.growth.map_or("-".to_string(), |g| format!("{g:.2}"));
            println!("{:<10} {:>20} {:>5} {:>12.3} {:>8}", r.method, r.p, r.d, r.median_ms, growth);
        }
    }
    Ok(0)
}

fn median(xs: &mut [f64]) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) / 2.0
    }
}
