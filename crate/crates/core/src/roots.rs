//! Exact root-of-unity arithmetic on exponents, and detection of near-exact
//! roots in floating-point values.

use num_complex::Complex64;
use std::f64::consts::TAU;

/// e^{2 pi i k / m}
pub fn root_of_unity(k: i64, m: u64) -> Complex64 {
    debug_assert!(m >= 1);
    let k = k.rem_euclid(m as i64);
    Complex64::from_polar(1.0, TAU * k as f64 / m as f64)
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    let g = gcd_u64(a, b);
    a / g * b
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Smallest m <= max_order with z approximately e^{2 pi i k / m}.
pub fn detect_root_of_unity(z: Complex64, max_order: u64, tol: f64) -> Option<(u64, u64)> {
    if (z.norm() - 1.0).abs() > tol {
        return None;
    }
    let turns = (z.arg() / TAU).rem_euclid(1.0);
    for m in 1..=max_order {
        let k = (turns * m as f64).round() as i64;
        if (z - root_of_unity(k, m)).norm() <= tol {
            return Some((k.rem_euclid(m as i64) as u64, m));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detects_exact_roots_with_minimal_order() {
        let z = root_of_unity(3, 8);
        assert_eq!(detect_root_of_unity(z, 16, 1e-9), Some((3, 8)));
        let z = root_of_unity(2, 8); // = e^{2 pi i / 4}
        assert_eq!(detect_root_of_unity(z, 16, 1e-9), Some((1, 4)));
        assert_eq!(detect_root_of_unity(Complex64::new(1.0, 0.0), 16, 1e-9), Some((0, 1)));
    }

    #[test]
    fn rejects_non_roots() {
        assert_eq!(detect_root_of_unity(Complex64::new(0.5, 0.0), 16, 1e-9), None);
        let z = Complex64::from_polar(1.0, 0.123456);
        assert_eq!(detect_root_of_unity(z, 16, 1e-9), None);
    }
}
