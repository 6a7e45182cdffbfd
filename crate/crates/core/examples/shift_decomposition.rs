// SPDX-License-Identifier: Apache-2.0

//! The shift operator as the normalized sum of two quantum bakers.

use std::f64::consts::FRAC_1_SQRT_2;

use bakershift::linalg::C64;
use bakershift::{build_baker, build_shift, BakerKind};

fn main() -> bakershift::Result<()> {
    println!(
        "{:>5} {:>6} {:>12} {:>12}",
        "N", "alpha", "|S - sum|", "|B - B'|"
    );
    for n in [4, 6, 10, 64, 250, 256] {
        let s = build_shift(n)?.to_dense()?;
        for alpha in [0.0, 0.25, 0.5, 0.37] {
            let b = build_baker(BakerKind::Standard, n / 2, alpha)?;
            let b_rev = build_baker(BakerKind::Reverse, n / 2, alpha)?;
            let sum = b.add(&b_rev)?.scale(C64::new(FRAC_1_SQRT_2, 0.0));
            println!(
                "{n:>5} {alpha:>6} {:>12.2e} {:>12.3}",
                sum.max_abs_diff(&s),
                b.max_abs_diff(&b_rev)
            );
        }
    }
    Ok(())
}
