//! The gamma multiplier `V_{λ̲,ξ} = H⁰_dR(Ψ_{λ̲,c} ⊗ L_ξ⁻¹)` is one
//! dimensional: windowed de Rham cohomology of the rank-1 factors, assembled
//! multiplicatively, with the two-variable Koszul complex cross-checking the
//! multiplicativity.
//!
//! ```sh
//! cargo run --example gamma_multiplier
//! ```

use mgk::checks::{gamma_for, point, std_family, workspace};
use mgk::derham::{gm2_koszul_check, gm_exp_kummer_cohomology, multiplier_dimension};
use mgk::rat::{fmt_rat, parse_rat};
use mgk::rootdata::RootDatumSpec;

fn main() {
    println!("single factors (c, s) -> (ker, coker):");
    for c in ["1", "-1", "2", "1/3"] {
        for s in ["0", "1/2", "-3/4", "5"] {
            let r = gm_exp_kummer_cohomology(&parse_rat(c).unwrap(), &parse_rat(s).unwrap(), 24)
                .unwrap();
            println!(
                "  c = {c:>4}, s = {s:>4}: ({}, {}) at window {}, stabilized {}",
                r.dim_ker, r.dim_coker, r.window, r.stabilized
            );
        }
    }

    println!("\ntwo-variable Koszul cross-check:");
    let two = gm2_koszul_check(
        &parse_rat("1").unwrap(),
        &parse_rat("1/2").unwrap(),
        &parse_rat("1/3").unwrap(),
        8,
    )
    .unwrap();
    println!(
        "  (c, s1, s2) = (1, 1/2, 1/3): windowed homology dims {:?}",
        two.dims
    );

    println!("\nmultiplier dimensions on the standard families:");
    for (n, xi_parts) in [
        (2usize, vec!["1/2", "1/2"]),
        (2, vec!["1/3", "2/3"]),
        (3, vec!["0", "0", "1/2"]),
    ] {
        let ws = workspace(&RootDatumSpec::gl(n));
        let gamma = gamma_for(&ws, std_family(n), "1");
        let xi = point(&xi_parts);
        let r = multiplier_dimension(&gamma, &xi, 24).unwrap();
        println!(
            "  GL({n}), xi = ({}): dim V = {}",
            xi_parts.join(", "),
            r.product
        );
        for f in &r.factors {
            println!(
                "    factor lambda = {:?}, s = {}: coker dim {}",
                f.lambda,
                fmt_rat(&f.s),
                f.report.dim_coker
            );
        }
    }
}
