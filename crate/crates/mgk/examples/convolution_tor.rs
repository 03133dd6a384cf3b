//! Convolution as tensor product over `ℚ[v]`: Tor of Kummer modules follows
//! the Koszul binomials, distinct cosets annihilate each other, and
//! isomorphism search distinguishes a Jordan block from a semisimple module
//! by a symbolic-determinant certificate.
//!
//! ```sh
//! cargo run --example convolution_tor
//! ```

use mgk::checks::point;
use mgk::mellin::{
    iso_search, kummer_module, tensor, tor, unipotent_module, IsoSearchResult,
};

fn main() {
    println!("self-Tor of kummer(0) in rank n:");
    for n in 1..=3usize {
        let xi = point(&vec!["0"; n]);
        let k = kummer_module(&xi);
        println!("  rank {n}: {:?} (binomials C(n, i))", tor(&k, &k));
    }

    let k0 = kummer_module(&point(&["0"]));
    let k12 = kummer_module(&point(&["1/2"]));
    println!("\ndistinct cosets: tor(kummer(0), kummer(1/2)) = {:?}", tor(&k0, &k12));

    let u2 = unipotent_module(&point(&["0"]), 2);
    let t = tensor(&u2, &k0);
    println!("tensor(unipotent(0,2), kummer(0)): dim {}", t.dim);

    println!("\nisomorphism search:");
    match iso_search(&u2, &u2) {
        IsoSearchResult::Found(_) => println!("  unipotent(0,2) vs itself: isomorphism found"),
        other => println!("  unexpected: {other:?}"),
    }
    match iso_search(&k0, &k12) {
        IsoSearchResult::NoneCertified { reason } => {
            println!("  kummer(0) vs kummer(1/2): none (certified): {reason}")
        }
        other => println!("  unexpected: {other:?}"),
    }
    let ss = k0.direct_sum(&k0).unwrap();
    match iso_search(&u2, &ss) {
        IsoSearchResult::NoCertificate {
            space_dim,
            singular_certified,
        } => println!(
            "  unipotent(0,2) vs kummer(0)^2: no certificate; intertwiner space dim {space_dim}, all-singular proof by symbolic determinant: {singular_certified}"
        ),
        other => println!("  unexpected: {other:?}"),
    }
}
