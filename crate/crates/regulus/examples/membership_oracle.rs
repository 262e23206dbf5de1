//! Membership oracles at work: witnesses, negative certificates, and the
//! path-product extremal example on 16 vertices.

use regulus::graph::{g6_encode, Graph};
use regulus::regcheck::{find_induced_regular, in_rge, regular_degree};
use regulus::Mode;

fn main() {
    // K5 is itself regular, so it leaves the at-least-3 family
    let k5 = Graph::complete(5);
    let witness = find_induced_regular(&k5, 3, Mode::AtLeast).unwrap().unwrap();
    println!("K5 witness for order >= 3: {witness} (degree {})",
        regular_degree(&k5.induced(witness).unwrap()).unwrap());

    // the path P3 has degrees 1,2,1: no regular subgraph of order exactly 3
    let p3 = Graph::path(3);
    assert_eq!(find_induced_regular(&p3, 3, Mode::Exact).unwrap(), None);
    println!("P3 has no induced regular subgraph of order 3");

    // P4[P4] is an extremal member: 16 vertices, no induced regular
    // subgraph of order five or more
    let p4 = Graph::path(4);
    let product = p4.lex_product(&p4).unwrap();
    assert!(in_rge(&product, 5));
    println!(
        "P4[P4] ({} vertices, graph6 {}) has no induced regular subgraph of order >= 5",
        product.order(),
        g6_encode(&product)
    );
}
