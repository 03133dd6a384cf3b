//! The blockwise identity `Ψ_{λ̲,c} * E_θ ≅ E_θ` over a full Weyl orbit of
//! cosets, including the permutation blocks for elements outside the
//! stabilizer.
//!
//! ```sh
//! cargo run --example e_theta_orbit
//! ```

use mgk::checks::{gamma_for, point, std_family, workspace};
use mgk::gamma::{check_e_theta, Convention};
use mgk::mellin::e_theta_module;
use mgk::rootdata::RootDatumSpec;

fn main() {
    let cases = [
        (2usize, vec!["0", "0"]),
        (2, vec!["1/3", "2/3"]),
        (3, vec!["0", "0", "1/2"]),
    ];
    for (n, xi_parts) in cases {
        let ws = workspace(&RootDatumSpec::gl(n));
        let gamma = gamma_for(&ws, std_family(n), "1");
        let xi = point(&xi_parts);
        let module = e_theta_module(&ws.weyl, &xi).unwrap();
        println!(
            "GL({n}), theta = orbit of ({}): {} component(s), total dim {}",
            xi_parts.join(", "),
            module.components.len(),
            module.total_dim()
        );
        for (k, map) in module.maps.iter().enumerate() {
            println!(
                "  element {:>2} permutes components as {:?}",
                k, map.perm
            );
        }
        let report = check_e_theta(&gamma, &xi, Convention::Unsigned).unwrap();
        println!(
            "  convolution: iso {}, equivariant {}, lift-independent {} => {}",
            report.flags.iso_ok,
            report.flags.equivariance_ok,
            report.flags.eta_independent,
            if report.passed() { "PASS" } else { "FAIL" }
        );
    }
}
