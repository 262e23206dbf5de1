//! Hill search from the one-vertex seed: exhaustive extension while
//! possible, back-extension and edge perturbation when stuck.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use regulus::graph::g6_encode;
use regulus::search::{back_extend, certify_unextendable, hill_search, Pool};
use regulus::{Graph, Mode};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let seeds = Pool::seed_k1(4, Mode::Exact);
    let pool = hill_search(4, Mode::Exact, seeds, 1_000_000, &mut rng).unwrap();
    println!(
        "hill search for k=4 reached order {} with {} graph(s):",
        pool.order(),
        pool.len()
    );
    for g in pool.iter() {
        println!(
            "  {} (unextendable: {})",
            g6_encode(g),
            certify_unextendable(g, 4, Mode::Exact).unwrap()
        );
    }

    // back-extension enumerates the order-5 family members reachable from
    // the 5-cycle by one deletion and re-extension
    let mates = back_extend(&Graph::cycle(5), 4, Mode::Exact, 1, 0, &mut rng).unwrap();
    println!("back-extension of C5 within the k=4 family finds {} graphs:", mates.len());
    for g in &mates {
        println!("  {}", g6_encode(g));
    }
}
