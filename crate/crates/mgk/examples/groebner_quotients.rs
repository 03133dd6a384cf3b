//! The exact-algebra substrate: Buchberger over ℚ in grevlex, normal forms,
//! and standard-monomial bases of finite quotients.
//!
//! ```sh
//! cargo run --example groebner_quotients
//! ```

use mgk::groebner::{buchberger, standard_monomials, StandardMonomials};
use mgk::poly::Polynomial;

fn main() {
    let n = 2;
    let v = |i: usize| Polynomial::var(n, i);

    let gens = vec![v(0).add(&v(1)), v(0).pow(2)];
    println!(
        "input ideal: ({})",
        gens.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
    );
    let gb = buchberger(&gens).unwrap();
    println!(
        "reduced grevlex basis: {{{}}}",
        gb.generators()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    );

    for p in [v(0).pow(2), v(1), v(0).pow(3).add(&v(1).scale(&mgk::rat::rat_int(5)))] {
        println!("normal form of {p} = {}", gb.normal_form(&p));
    }

    match standard_monomials(&gb) {
        StandardMonomials::Finite(ms) => println!(
            "standard monomials: {{{}}} (quotient dimension {})",
            ms.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
            ms.len()
        ),
        StandardMonomials::Infinite => println!("quotient is infinite dimensional"),
    }

    // a quotient that is not finite: no pure power of v2 among the leads
    let gb = buchberger(&[v(0).pow(2)]).unwrap();
    match standard_monomials(&gb) {
        StandardMonomials::Infinite => {
            println!("ideal (v1^2): quotient is infinite dimensional, as detected")
        }
        StandardMonomials::Finite(_) => unreachable!(),
    }
}
