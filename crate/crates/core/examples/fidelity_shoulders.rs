// SPDX-License-Identifier: Apache-2.0

//! Fidelity decay under a sigma_y perturbation for four neighbouring
//! dimensions. The decay steepens at the order of 2 modulo N-1, or at half
//! of it when the half-order power is -1.

use bakershift::fidelity::{detect_shoulders, fidelity_trace, ShoulderOptions};
use bakershift::{Pauli, PerturbationSpec};

fn main() -> bakershift::Result<()> {
    let spec = PerturbationSpec::new(0.05, 0.0, Pauli::Y)?;
    for n in [250, 252, 254, 256] {
        let trace = fidelity_trace(n, &spec, 340)?;
        let report = detect_shoulders(&trace.f, ShoulderOptions::default());
        println!(
            "N={n}  k0={:>3}  predicted={:>3}  detected={:?}",
            trace.order.order,
            trace.predicted_shoulder,
            report.times()
        );
        let samples: Vec<String> = (0..=340)
            .step_by(20)
            .map(|t| format!("{:.3}", trace.f[t]))
            .collect();
        println!("    f(0, 20, ..., 340) = {}", samples.join(" "));
    }
    Ok(())
}
