// SPDX-License-Identifier: Apache-2.0

use bakershift::numtheory::multiplicative_order;

fn main() -> bakershift::Result<()> {
    println!("{:>5} {:>5} {:>6} {:>9}", "N", "k0", "-1?", "shoulder");
    for n in (240..=260).step_by(2) {
        let info = multiplicative_order(2, n as u64 - 1)?;
        println!(
            "{n:>5} {:>5} {:>6} {:>9}",
            info.order,
            info.half_order_is_minus_one,
            info.predicted_shoulder()
        );
    }
    Ok(())
}
