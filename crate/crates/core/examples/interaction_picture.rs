// SPDX-License-Identifier: Apache-2.0

//! Fidelity as a product of perturbations rotated by powers of the shift.

use bakershift::fidelity::interaction_picture_check;
use bakershift::{Pauli, PerturbationSpec};

fn main() -> bakershift::Result<()> {
    for (n, pauli) in [(8, Pauli::Y), (64, Pauli::Z), (252, Pauli::Y)] {
        let spec = PerturbationSpec::new(0.1, 0.0, pauli)?;
        let check = interaction_picture_check(n, &spec, &[1, 3, 10, 25, 40])?;
        let worst = check.deviations.iter().map(|d| d.1).fold(0.0, f64::max);
        println!(
            "N={n:>3} {pauli}: max |f_product - f_trace| = {worst:.1e}, |V_k0 - V| = {:.1e}, half period: {:?}",
            check.period_deviation, check.half_period_deviation
        );
    }
    Ok(())
}
