//! Canonical labelling in isolation: isomorphism-invariant forms,
//! automorphism generators, group orders and vertex orbits.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use regulus::canon::{aut_order, canon_bytes, canonical, relabel, vertex_orbits, OrderedPartition};
use regulus::Graph;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);

    // the canonical form does not move under relabelling
    let petersen_like = Graph::cycle(9).lex_product(&Graph::complete(2)).unwrap();
    let reference = canon_bytes(&petersen_like);
    let mut perm: Vec<u16> = (0..18).collect();
    perm.shuffle(&mut rng);
    assert_eq!(canon_bytes(&relabel(&petersen_like, &perm)), reference);
    println!("C9[K2]: canonical form invariant under a random relabelling");

    for (name, g) in [
        ("P4", Graph::path(4)),
        ("C5", Graph::cycle(5)),
        ("K4", Graph::complete(4)),
        ("C9[K2]", petersen_like),
    ] {
        let res = canonical(&g, &OrderedPartition::unit(g.order()));
        let order = aut_order(&res.aut_gens, g.order()).unwrap();
        let orbits = vertex_orbits(&res.aut_gens, g.order());
        println!(
            "{name}: |Aut| = {order}, {} vertex orbit(s), {} generator(s)",
            orbits.len(),
            res.aut_gens.len()
        );
    }
}
