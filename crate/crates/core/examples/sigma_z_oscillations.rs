// SPDX-License-Identifier: Apache-2.0

//! Under sigma_z the fidelity does not keep decaying: it swings between
//! minima and recoveries locked to the order of 2 modulo N-1.

use bakershift::fidelity::{autocorrelation, fidelity_trace, turning_points, Extremum};
use bakershift::numtheory::multiplicative_order;
use bakershift::{Pauli, PerturbationSpec};

fn main() -> bakershift::Result<()> {
    let spec = PerturbationSpec::new(0.05, 0.0, Pauli::Z)?;
    for n in [250, 252] {
        let k0 = multiplicative_order(2, n as u64 - 1)?.order as usize;
        let trace = fidelity_trace(n, &spec, 6 * k0)?;
        let extrema = turning_points(&trace.f, 5);
        let minima: Vec<usize> = extrema
            .iter()
            .filter(|e| e.1 == Extremum::Min)
            .map(|e| e.0)
            .collect();
        let maxima: Vec<usize> = extrema
            .iter()
            .filter(|e| e.1 == Extremum::Max)
            .map(|e| e.0)
            .collect();
        let ac = autocorrelation(&trace.f[k0 / 2..], k0);
        println!("N={n}  k0={k0}");
        println!("    minima {minima:?}");
        println!("    maxima {maxima:?}");
        println!(
            "    autocorrelation at k0/2 {:.3}, at k0 {:.3}",
            ac[k0 / 2],
            ac[k0]
        );
    }
    Ok(())
}
