// SPDX-License-Identifier: Apache-2.0

//! Fourier conjugation of a Pauli on the top qubit. sigma_x lands exactly on
//! sigma_z of the bottom qubit; the other two do not.

use bakershift::operators::pauli_fourier_conjugate;
use bakershift::Pauli;

fn main() -> bakershift::Result<()> {
    println!("{:>5} {:>10} {:>10} {:>10}", "L", "x", "y", "z");
    for l in [1, 2, 4, 8, 32, 128] {
        let dev = |p| pauli_fourier_conjugate(p, l, 0.0).map(|r| r.1);
        println!(
            "{l:>5} {:>10.2e} {:>10.4} {:>10.4}",
            dev(Pauli::X)?,
            dev(Pauli::Y)?,
            dev(Pauli::Z)?
        );
    }
    println!("2/pi = {:.4}", 2.0 / std::f64::consts::PI);
    Ok(())
}
