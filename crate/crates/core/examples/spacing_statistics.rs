// SPDX-License-Identifier: Apache-2.0

//! Even-parity eigenphase spacings of the perturbed shift compared with the
//! Wigner surmise and the Poisson law.

use bakershift::operators::build_parity;
use bakershift::spectral::{desymmetrize, histogram, spacing_sample, Sector};
use bakershift::{build_perturbed, Pauli, PerturbationSpec};

fn main() -> bakershift::Result<()> {
    let n = 510;
    let parity = build_parity(n)?;
    for theta in [0.0, 0.02, 0.3] {
        let u = build_perturbed(n, &PerturbationSpec::new(theta, 0.5, Pauli::X)?)?;
        let sample = spacing_sample(&desymmetrize(&u, &parity, Sector::Even)?)?;
        println!(
            "theta={theta:<5} spacings={} ks_goe={:.3} ks_poisson={:.3} P(s<0.1)={:.3}",
            sample.spacings.len(),
            sample.ks_goe,
            sample.ks_poisson,
            sample.fraction_below(0.1)
        );
        let h = histogram(&sample.spacings, 12, 3.0)?;
        for b in 0..h.centers.len() {
            let bar = "#".repeat((h.density[b] * 10.0).round() as usize);
            println!(
                "    {:>5.2} {:>6.3} goe {:>5.3} | {bar}",
                h.centers[b], h.density[b], h.goe[b]
            );
        }
    }
    Ok(())
}
