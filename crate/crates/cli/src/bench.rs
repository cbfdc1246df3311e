//! Wall-time grid over (r, n): fixed-point enumeration with reduction, and exact versus
//! randomized equality on the result.

use std::time::Instant;

use nekrasov_core::exactalg::{json, rand_eq_sums, EvalConfig, FactoredRat};
use nekrasov_core::partitions::enumerate_tuples;
use nekrasov_core::InstantonContext;
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct Cell {
    pub rank: usize,
    pub n: u32,
    pub fixed_points: usize,
    pub enumerate_reduce_ms: f64,
    pub exact_eq_ms: f64,
    pub randomized_eq_ms: f64,
    /// The canonical JSON of Z_n is the same for every thread count in the sweep.
    pub threads_identical: bool,
}

fn ms(t: Instant) -> f64 {
    (t.elapsed().as_secs_f64() * 1e5).round() / 100.0
}

fn canonical(ctx: &InstantonContext, n: u32, threads: usize) -> String {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    pool.install(|| json::frac_json(&ctx.z_coeff(n)).to_string())
}

pub fn grid(ranks: &[usize], max_n: u32, sweep: &[usize], cfg: &EvalConfig) -> Vec<Cell> {
    let mut out = Vec::new();
    for &r in ranks {
        let ctx = InstantonContext::new(r);
        for n in 1..=max_n {
            let t = Instant::now();
            let z = ctx.z_coeff(n);
            let enumerate_reduce_ms = ms(t);
            let terms: Vec<FactoredRat> = ctx.terms(n).into_iter().map(|(_, t)| t).collect();
            let mut rev = terms.clone();
            rev.reverse();

            let t = Instant::now();
            let exact = FactoredRat::sum(&rev).exact_eq(&z);
            let exact_eq_ms = ms(t);
            let t = Instant::now();
            let randomized = rand_eq_sums(&terms, std::slice::from_ref(&z), cfg).unwrap_or(false);
            let randomized_eq_ms = ms(t);
            assert!(exact && randomized, "Z_{n} disagrees with its own terms at r = {r}");

            let reference = canonical(&ctx, n, 1);
            let threads_identical = sweep.iter().all(|&th| canonical(&ctx, n, th) == reference);
            out.push(Cell {
                rank: r,
                n,
                fixed_points: enumerate_tuples(r, n).len(),
                enumerate_reduce_ms,
                exact_eq_ms,
                randomized_eq_ms,
                threads_identical,
            });
        }
    }
    out
}

pub fn to_csv(cells: &[Cell]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for c in cells {
        w.serialize(c).expect("csv row");
    }
    String::from_utf8(w.into_inner().expect("csv flush")).expect("utf-8 csv")
}
