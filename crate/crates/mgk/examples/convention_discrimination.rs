//! Empirically discriminating the two sign conventions for the Mellin-side
//! Weyl action: with repeated cocharacters the signed variant depends on the
//! chosen lift through `W′`, while the unsigned action is lift-independent.
//!
//! ```sh
//! cargo run --example convention_discrimination
//! ```

use mgk::checks::{gamma_for, point, workspace};
use mgk::gamma::{check_key_prop, Convention};
use mgk::rootdata::RootDatumSpec;

fn main() {
    let ws = workspace(&RootDatumSpec::gl(2));
    let families: [(&str, Vec<Vec<i64>>); 2] = [
        ("multiplicity-free {e1, e2}", vec![vec![1, 0], vec![0, 1]]),
        (
            "doubled {e1, e1, e2, e2}",
            vec![vec![1, 0], vec![1, 0], vec![0, 1], vec![0, 1]],
        ),
    ];
    let xi = point(&["0", "0"]);
    for (name, lambdas) in families {
        println!("family {name}:");
        for convention in [Convention::Unsigned, Convention::Signed] {
            let gamma = gamma_for(&ws, lambdas.clone(), "1");
            let report = check_key_prop(&gamma, &xi, convention).unwrap();
            println!(
                "  {:?}: lift-independent {}, equivariant {} (lift counts {:?})",
                convention,
                report.convolution.flags.eta_independent,
                report.convolution.flags.equivariance_ok,
                report
                    .convolution
                    .per_element
                    .iter()
                    .map(|d| d.lift_count)
                    .collect::<Vec<_>>()
            );
        }
    }
    println!("\nwith multiplicities, odd block-preserving permutations flip the sign of the");
    println!("signed action, so only the unsigned convention defines the action of w alone.");
}
