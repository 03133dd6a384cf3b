//! The extension `0 → S_λ̲ → W′ → W → 0` of a Weyl-stable cocharacter
//! family: block decomposition, lift enumeration, and the image of the
//! induced map to the symmetric group on blocks.
//!
//! ```sh
//! cargo run --example wprime_lifts
//! ```

use mgk::checks::workspace;
use mgk::rootdata::{check_lambda_family, RootDatumSpec, WPrime, LIFT_CAP};

fn main() {
    let families: [(&str, Vec<Vec<i64>>); 3] = [
        ("standard basis", vec![vec![1, 0], vec![0, 1]]),
        (
            "doubled basis",
            vec![vec![1, 0], vec![1, 0], vec![0, 1], vec![0, 1]],
        ),
        (
            "asymmetric multiplicities",
            vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 1], vec![1, 1]],
        ),
    ];
    let ws = workspace(&RootDatumSpec::gl(2));
    for (name, lambdas) in families {
        let report = check_lambda_family(&ws.rd, &lambdas, &ws.rd.sigma_default());
        println!(
            "{name}: W-stable {}, sigma-positive {}, pr onto {}",
            report.w_stable, report.all_sigma_positive, report.pr_onto
        );
        if !report.w_stable {
            continue;
        }
        let wp = WPrime::new(&lambdas);
        println!(
            "  blocks {:?}, multiplicities {:?}, |S_λ| = {}, |W'| = {}",
            wp.blocks,
            wp.multiplicities,
            wp.s_lambda_order(),
            wp.wprime_order(ws.weyl.order())
        );
        for (k, w) in ws.weyl.elements.iter().enumerate() {
            let lifts = wp.all_lifts(w, LIFT_CAP).unwrap();
            println!("  element {k} lifts to {} permutation(s):", lifts.len());
            for eta in lifts.iter().take(4) {
                println!("    {:?} (valid: {})", eta, wp.is_lift(w, eta));
            }
        }
        println!(
            "  image of W -> S_k equals the multiplicity-preserving subgroup: {:?}",
            wp.image_check(&ws.weyl)
        );
    }
}
