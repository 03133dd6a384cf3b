//! Verify the gamma-convolution fixed point `Ψ_{λ̲,c} * E_ξ ≅ E_ξ` with full
//! equivariance bookkeeping, for GL(2) and GL(3) with the standard
//! cocharacter family.
//!
//! ```sh
//! cargo run --example key_prop
//! ```

use mgk::checks::{gamma_for, point, std_family, workspace};
use mgk::gamma::{check_key_prop, Convention};
use mgk::rootdata::RootDatumSpec;

fn main() {
    let cases = [
        (2usize, vec!["0", "0"]),
        (2, vec!["1/2", "1/2"]),
        (2, vec!["1/3", "2/3"]),
        (3, vec!["0", "0", "0"]),
        (3, vec!["0", "0", "1/2"]),
    ];
    for (n, xi_parts) in cases {
        let ws = workspace(&RootDatumSpec::gl(n));
        let gamma = gamma_for(&ws, std_family(n), "1");
        let xi = point(&xi_parts);
        let report = check_key_prop(&gamma, &xi, Convention::Unsigned).unwrap();
        println!(
            "GL({n}), xi = ({}): fiber dim {}, stabilizer order {}, iso {}, equivariant {}, lift-independent {} => {}",
            xi_parts.join(", "),
            report.fiber_dim,
            report.stabilizer_order,
            report.convolution.flags.iso_ok,
            report.convolution.flags.equivariance_ok,
            report.convolution.flags.eta_independent,
            if report.passed() { "PASS" } else { "FAIL" }
        );
        for d in &report.convolution.per_element {
            println!(
                "  element {:>2} (word {:?}): {} lift(s), transported matrix matches: {}",
                d.element, d.word, d.lift_count, d.matches_original
            );
        }
    }
}
