//! The projective system `Ψ_{λ̲,c} * L_ξⁿ ≅ L_ξⁿ`: every level of the
//! unipotent tower passes and the identifications commute with the tower
//! projections.
//!
//! ```sh
//! cargo run --example unipotent_tower
//! ```

use mgk::checks::{gamma_for, point, std_family, workspace};
use mgk::gamma::{check_unipotent_tower, Convention};
use mgk::rootdata::RootDatumSpec;

fn main() {
    let ws = workspace(&RootDatumSpec::gl(2));
    let gamma = gamma_for(&ws, std_family(2), "1");
    for xi_parts in [["0", "0"], ["1/2", "1/2"], ["1/3", "2/3"]] {
        let xi = point(&xi_parts);
        let report = check_unipotent_tower(&gamma, &xi, 4, Convention::Unsigned).unwrap();
        println!(
            "GL(2), xi = ({}): {}",
            xi_parts.join(", "),
            if report.passed() { "PASS" } else { "FAIL" }
        );
        for level in &report.levels {
            println!(
                "  level {}: dim {:>2}, flags ok {}, projection compatible: {}",
                level.level,
                level.dim,
                level.flags.all(),
                level
                    .projection_compatible
                    .map_or("n/a (bottom)".to_string(), |b| b.to_string()),
            );
        }
    }
}
