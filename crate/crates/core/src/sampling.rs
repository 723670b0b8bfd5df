//! Deterministic low-discrepancy sequences and a golden-section minimizer.
//!
//! Every sampled check in the crate draws from these sequences, so repeated
//! runs see identical samples. Prefixes are nested: the first `k` points of a
//! sequence do not depend on how many are drawn afterwards.

use crate::scalar::Real;

/// Radical inverse of `i` in base `b`.
pub fn radical_inverse<T: Real>(mut i: u64, b: u64) -> T {
    let inv = T::one() / T::from_u64(b).unwrap();
    let mut f = inv;
    let mut r = T::zero();
    while i > 0 {
        r = r + f * T::from_u64(i % b).unwrap();
        i /= b;
        f = f * inv;
    }
    r
}

/// Unit-interval sequence that starts with both endpoints: `0, 1, 1/2, 1/4, 3/4, ...`.
pub fn closed_unit<T: Real>(i: usize) -> T {
    match i {
        0 => T::zero(),
        1 => T::one(),
        _ => radical_inverse(i as u64 - 1, 2),
    }
}

/// Halton point in `[0, 1)^d`, `d <= 4`, skipping the origin.
pub fn halton<T: Real>(i: usize, d: usize) -> Vec<T> {
    const PRIMES: [u64; 4] = [2, 3, 5, 7];
    (0..d).map(|k| radical_inverse(i as u64 + 1, PRIMES[k])).collect()
}

/// Midpoint-rule parameters `(i + 1/2) / k`, `i < k`.
pub fn midpoints<T: Real>(k: usize) -> Vec<T> {
    let kk = T::from_usize_lossy(k);
    (0..k).map(|i| (T::from_usize_lossy(i) + T::lit(0.5)) / kk).collect()
}

/// Golden-section search for a minimum of `f` on `[a, b]`. Returns `(x, f(x))`.
pub fn golden_section<T: Real>(mut a: T, mut b: T, iters: usize, f: impl Fn(T) -> T) -> (T, T) {
    let r = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..iters {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    if fc <= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_unit_starts_with_endpoints() {
        let v: Vec<f64> = (0..5).map(closed_unit).collect();
        assert_eq!(v, vec![0.0, 1.0, 0.5, 0.25, 0.75]);
    }

    #[test]
    fn halton_is_in_unit_cube() {
        for i in 0..100 {
            let p = halton::<f64>(i, 3);
            assert!(p.iter().all(|&x| (0.0..1.0).contains(&x)));
        }
    }

    #[test]
    fn golden_finds_parabola_minimum() {
        let (x, fx) = golden_section(-1.0, 3.0, 80, |x: f64| (x - 0.3).powi(2) + 2.0);
        assert!((x - 0.3).abs() < 1e-7);
        assert!((fx - 2.0).abs() < 1e-12);
    }
}
