//! Counts the graphs with no induced regular subgraph of order (at least)
//! k, one order at a time, reproducing the known count columns.
//!
//! Usage: cargo run --release --example count_families [k] [exact|atleast] [nmax]

use regulus::genpath::{generate, GenOptions};
use regulus::Mode;
use std::time::Instant;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let k: usize = args.get(1).map_or(4, |s| s.parse().expect("k"));
    let mode: Mode = args.get(2).map_or(Mode::Exact, |s| s.parse().expect("mode"));
    let n_max: usize = args.get(3).map_or(8, |s| s.parse().expect("nmax"));

    println!("counting graphs with no induced regular subgraph of order {mode} {k}");
    let start = Instant::now();
    let counts = generate(k, mode, n_max, &GenOptions::default(), None).expect("generation");
    print!("{}", counts.to_tsv());
    println!("elapsed: {:?}", start.elapsed());

    let empty_at = counts.rows().find(|&(_, row)| row.count == 0).map(|(n, _)| n);
    if let Some(n) = empty_at {
        println!("family is empty at order {n}: every graph on {n} vertices has such a subgraph");
    }
}
