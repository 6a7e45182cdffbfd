// SPDX-License-Identifier: Apache-2.0

//! Multiplicative order of 2 and the half-order condition that decide where
//! the fidelity shoulder sits.

use serde::Serialize;

use crate::error::{Error, Result};

/// `base^exp mod modulus` by square-and-multiply.
pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> Result<u64> {
    if modulus < 2 {
        return Err(Error::InvalidModulus(modulus));
    }
    let m = modulus as u128;
    let mut acc: u128 = 1;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    Ok(acc as u64)
}

/// Multiplicative order of 2 modulo an odd `M`, plus whether the half-order
/// power is `−1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OrderInfo {
    pub modulus: u64,
    pub order: u64,
    /// `2^{k₀/2} ≡ −1 (mod M)`. Only possible for even `k₀`.
    pub half_order_is_minus_one: bool,
}

impl OrderInfo {
    /// First time at which the fidelity decay is expected to steepen:
    /// `k₀/2` when the half-order power is `−1`, otherwise `k₀`.
    pub fn predicted_shoulder(&self) -> u64 {
        if self.half_order_is_minus_one {
            self.order / 2
        } else {
            self.order
        }
    }
}

/// Order of `base` modulo odd `modulus ≥ 3` by a doubling scan.
///
/// Only base 2 is used by the rest of the crate; any base coprime to the
/// modulus works.
pub fn multiplicative_order(base: u64, modulus: u64) -> Result<OrderInfo> {
    if modulus < 3 || modulus.is_multiple_of(2) {
        return Err(Error::InvalidModulus(modulus));
    }
    let m = modulus as u128;
    let b = base as u128 % m;
    if gcd(base % modulus, modulus) != 1 {
        return Err(Error::Invalid(format!(
            "base {base} is not coprime to {modulus}"
        )));
    }
    let mut x = b;
    let mut k = 1u64;
    while x != 1 {
        x = x * b % m;
        k += 1;
    }
    let half_order_is_minus_one =
        k.is_multiple_of(2) && mod_pow(base, k / 2, modulus)? == modulus - 1;
    Ok(OrderInfo {
        modulus,
        order: k,
        half_order_is_minus_one,
    })
}

/// Predicted shoulder time for the shift operator on an even dimension `N`.
pub fn predict_shoulder(dim: usize) -> Result<u64> {
    if !dim.is_multiple_of(2) || dim < 4 {
        return Err(Error::InvalidDimension {
            dim,
            reason: "the shift operator needs an even dimension ≥ 4",
        });
    }
    Ok(multiplicative_order(2, dim as u64 - 1)?.predicted_shoulder())
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: repeated doubling with no exponent tricks.
    fn doubling(exp: u64, m: u64) -> u64 {
        (0..exp).fold(1 % m, |acc, _| acc * 2 % m)
    }

    #[test]
    fn mod_pow_examples() {
        assert_eq!(mod_pow(2, 8, 255).unwrap(), 1);
        assert_eq!(mod_pow(2, 0, 7).unwrap(), 1);
        assert_eq!(doubling(25, 251), 250);
        assert_eq!(mod_pow(2, 25, 251).unwrap(), 250);
        assert!(mod_pow(2, 3, 1).is_err());
    }

    #[test]
    fn mod_pow_agrees_with_doubling() {
        for m in 2..200u64 {
            for e in 0..70u64 {
                assert_eq!(mod_pow(2, e, m).unwrap(), doubling(e, m), "2^{e} mod {m}");
            }
        }
    }

    #[test]
    fn order_table() {
        assert_eq!(multiplicative_order(2, 253).unwrap().order, 110);
        assert_eq!(multiplicative_order(2, 255).unwrap().order, 8);
        assert_eq!(multiplicative_order(2, 249).unwrap().order, 82);
        let o251 = multiplicative_order(2, 251).unwrap();
        assert_eq!(o251.order, 50);
        assert!(o251.half_order_is_minus_one);
        let o9 = multiplicative_order(2, 9).unwrap();
        assert_eq!(o9.order, 6);
        // 2³ = 8 ≡ −1 (mod 9).
        assert!(o9.half_order_is_minus_one);
    }

    #[test]
    fn shoulder_predictions() {
        assert_eq!(predict_shoulder(254).unwrap(), 110);
        assert_eq!(predict_shoulder(256).unwrap(), 8);
        assert_eq!(predict_shoulder(252).unwrap(), 25);
        // 2^41 ≡ −1 (mod 249), checked by doubling.
        assert_eq!(doubling(41, 249), 248);
        assert_eq!(predict_shoulder(250).unwrap(), 41);
        assert!(predict_shoulder(7).is_err());
    }

    #[test]
    fn even_modulus_refused() {
        assert!(matches!(
            multiplicative_order(2, 250),
            Err(Error::InvalidModulus(250))
        ));
        assert!(multiplicative_order(2, 1).is_err());
    }

    #[test]
    fn powers_of_two_never_hit_minus_one_at_half_order() {
        for bits in 2..20u32 {
            let info = multiplicative_order(2, (1u64 << bits) - 1).unwrap();
            assert_eq!(info.order, bits as u64);
            assert!(!info.half_order_is_minus_one || bits == 2);
        }
    }
}
