// SPDX-License-Identifier: Apache-2.0

//! Fast factored application of the perturbed shift against the dense matrix.

use std::time::Instant;

use bakershift::linalg::C64;
use bakershift::operators::perturbed_factored;
use bakershift::{build_perturbed, Pauli, PerturbationSpec, StateVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> bakershift::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let spec = PerturbationSpec::new(0.2, 0.5, Pauli::Y)?;
    for n in [64, 256, 1024] {
        let amps: Vec<C64> = (0..n)
            .map(|_| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
            .collect();
        let v = StateVector::new(amps)?;

        let fast = perturbed_factored(n, &spec)?;
        let t0 = Instant::now();
        let out_fast = fast.apply(&v)?;
        let fast_time = t0.elapsed();

        let dense = build_perturbed(n, &spec)?;
        let t1 = Instant::now();
        let out_dense = dense.apply(&v)?;
        let dense_time = t1.elapsed();

        println!(
            "N={n:>5}  factors={}  deviation={:.1e}  factored {:?}  dense {:?}",
            fast.factors().len(),
            out_fast.max_abs_diff(&out_dense),
            fast_time,
            dense_time
        );
    }
    Ok(())
}
