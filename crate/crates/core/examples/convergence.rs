//! Success rate of each optimizer on the standard benchmarks.
//!
//! cargo run --release -p neoplasm-opt-core --example convergence -- [dims] [pop] [iters] [seeds]

use neoplasm_opt::metaheuristics::{run_optimizer, Algorithm};
use neoplasm_opt::search::{Benchmark, RunConfig};

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).map(|a| a.parse().expect("integer")).collect();
    let dims = args.first().copied().unwrap_or(10);
    let pop = args.get(1).copied().unwrap_or(30);
    let iters = args.get(2).copied().unwrap_or(500);
    let seeds = args.get(3).copied().unwrap_or(20) as u64;

    println!("{:<11} {:<4} {:>12} {:>12} {:>8}", "objective", "alg", "median", "worst", "<1e-3");
    for bench in Benchmark::ALL {
        let space = bench.default_space(dims).unwrap();
        for name in Algorithm::NAMES {
            let alg: Algorithm = name.parse().unwrap();
            let mut best: Vec<f64> = (0..seeds)
                .map(|s| {
                    let cfg = RunConfig::new(s, pop, iters);
                    run_optimizer(&alg, &bench, &space, &cfg).unwrap().best.fitness
                })
                .collect();
            best.sort_by(f64::total_cmp);
            let hits = best.iter().filter(|f| **f < 1e-3).count();
            println!(
                "{:<11} {:<4} {:>12.3e} {:>12.3e} {:>5}/{}",
                bench.name(),
                name,
                best[best.len() / 2],
                best[best.len() - 1],
                hits,
                seeds
            );
        }
    }
}
