// SPDX-License-Identifier: Apache-2.0

//! The classical baker shifts binary digits from q into p.

use bakershift::operators::classical_baker_step;
use bakershift::BakerKind;

fn bits(x: f64, n: usize) -> String {
    let mut x = x;
    (0..n)
        .map(|_| {
            x *= 2.0;
            let b = x >= 1.0;
            if b {
                x -= 1.0;
            }
            if b {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

fn main() -> bakershift::Result<()> {
    let (mut q, mut p) = (0.8125, 0.25);
    for step in 0..6 {
        println!("{step}  q=0.{}  p=0.{}", bits(q, 8), bits(p, 8));
        (q, p) = classical_baker_step(q, p, BakerKind::Standard)?;
    }
    let (q, p) = classical_baker_step(0.5, 0.3, BakerKind::Reverse)?;
    println!("reverse map sends (0.5, 0.3) to ({q}, {p})");
    Ok(())
}
