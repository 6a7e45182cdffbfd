// SPDX-License-Identifier: Apache-2.0

use super::BakerKind;
use crate::error::{Error, Result};

/// One step of the classical baker on the unit square.
///
/// Standard: `(2q, p/2)` for `q < ½`, else `(2q−1, (p+1)/2)`.
/// Reverse: `(2q, (p+1)/2)` for `q ≤ ½`, else `(2q−1, p/2)`.
pub fn classical_baker_step(q: f64, p: f64, kind: BakerKind) -> Result<(f64, f64)> {
    for v in [q, p] {
        if !(0.0..1.0).contains(&v) {
            return Err(Error::OutOfDomain {
                value: v,
                domain: "[0, 1)",
            });
        }
    }
    let left = match kind {
        BakerKind::Standard => q < 0.5,
        BakerKind::Reverse => q <= 0.5,
    };
    let out = match (kind, left) {
        (BakerKind::Standard, true) => (2.0 * q, p / 2.0),
        (BakerKind::Standard, false) => (2.0 * q - 1.0, (p + 1.0) / 2.0),
        (BakerKind::Reverse, true) => (2.0 * q, (p + 1.0) / 2.0),
        (BakerKind::Reverse, false) => (2.0 * q - 1.0, p / 2.0),
    };
    // q = ½ on the reverse map lands on the right edge; wrap it.
    Ok((out.0.rem_euclid(1.0), out.1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direct_formula_examples() {
        assert_eq!(
            classical_baker_step(0.25, 0.5, BakerKind::Standard).unwrap(),
            (0.5, 0.25)
        );
        assert_eq!(
            classical_baker_step(0.75, 0.2, BakerKind::Reverse).unwrap(),
            (0.5, 0.1)
        );
        assert_eq!(
            classical_baker_step(0.5, 0.0, BakerKind::Standard).unwrap(),
            (0.0, 0.5)
        );
    }

    #[test]
    fn binary_shift_on_dyadics() {
        // q = 0.a0 a1 a2 ..., p = 0.a-1 a-2 ...; q loses a0, p gains it.
        let bits_q = [1u8, 0, 1, 1, 0, 1];
        let bits_p = [0u8, 1, 1, 0, 1];
        let to_f = |bits: &[u8]| {
            bits.iter()
                .enumerate()
                .map(|(i, &b)| b as f64 / 2f64.powi(i as i32 + 1))
                .sum::<f64>()
        };
        let (q1, p1) =
            classical_baker_step(to_f(&bits_q), to_f(&bits_p), BakerKind::Standard).unwrap();
        let mut shifted_p = vec![bits_q[0]];
        shifted_p.extend_from_slice(&bits_p);
        assert_eq!(q1, to_f(&bits_q[1..]));
        assert_eq!(p1, to_f(&shifted_p));
    }

    #[test]
    fn reverse_boundary_goes_to_first_branch() {
        let (q, p) = classical_baker_step(0.5, 0.2, BakerKind::Reverse).unwrap();
        assert_eq!((q, p), (0.0, 0.6));
    }

    #[test]
    fn rejects_points_outside_the_square() {
        assert!(classical_baker_step(1.0, 0.2, BakerKind::Standard).is_err());
        assert!(classical_baker_step(0.2, -0.1, BakerKind::Reverse).is_err());
    }

    #[test]
    fn branches_preserve_area() {
        // Finite-difference Jacobian away from the discontinuity.
        let h = 1e-6;
        for kind in [BakerKind::Standard, BakerKind::Reverse] {
            for &(q, p) in &[(0.1, 0.3), (0.3, 0.9), (0.7, 0.2), (0.9, 0.6)] {
                let f = |q: f64, p: f64| classical_baker_step(q, p, kind).unwrap();
                let (a, b) = (f(q + h, p), f(q - h, p));
                let (c, d) = (f(q, p + h), f(q, p - h));
                let j = [
                    [(a.0 - b.0) / (2.0 * h), (c.0 - d.0) / (2.0 * h)],
                    [(a.1 - b.1) / (2.0 * h), (c.1 - d.1) / (2.0 * h)],
                ];
                let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
                assert!((det - 1.0).abs() <= 1e-8, "{kind:?} at ({q}, {p}): {det}");
            }
        }
    }
}
