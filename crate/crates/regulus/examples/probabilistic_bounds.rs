//! Numeric validation of the probabilistic lower-bound machinery: the
//! exponential base below one, the log-ratio inequality on a grid, the
//! cube moment bound by Monte Carlo, and sampling from the heterogeneous
//! model.

use regulus::randmodel::*;

fn main() {
    let base = bound_base(0.191, 0.0001).unwrap();
    println!("exponential base at alpha=0.191, eps=0.0001: {base:.6} (< 1)");
    let worse = bound_base(0.2, 0.0001).unwrap();
    println!("at alpha=0.2 the base is {worse:.6} (>= 1, bound fails)");

    let violation = log_ratio_violation(0.191, 2000).unwrap();
    println!("log-ratio inequality max violation on a 2000x2000 grid: {violation:e}");

    for (k, beta) in [(3, 1.0), (5, 5.0), (8, 1.0)] {
        let c = mc_cube_moment_bound(k, 0.191, beta, 200_000, 0).unwrap();
        println!(
            "cube moment bound k={k} beta={beta}: estimate {:.4} <= bound {:.4} (stderr {:.1e}, holds: {})",
            c.estimate, c.bound, c.stderr, c.holds()
        );
    }

    for d in 0..=5 {
        println!("labelled {d}-regular graphs on 6 vertices: {}", count_regular(6, d).unwrap());
    }

    let rate = empirical_regular_rate(12, 5, 0.191, 200, 1).unwrap();
    println!("fraction of 12-vertex heterogeneous samples with an induced regular \
              subgraph of order >= 5: {rate}");
}
