//! Exponents and parameter choices.

/// Hop budget exponent of the basic recursive solver, `(2*sqrt(3) - 3) / 3`.
pub fn exp_classic() -> f64 {
    (2.0 * 3f64.sqrt() - 3.0) / 3.0
}

/// Hop budget exponent of the improved recursive solver, `(sqrt(2) - 1) / (sqrt(2) + 1)`.
pub fn exp_improved() -> f64 {
    (2f64.sqrt() - 1.0) / (2f64.sqrt() + 1.0)
}

/// `(sqrt(17) - 3) / 4`
pub fn exp_dense_h() -> f64 {
    (17f64.sqrt() - 3.0) / 4.0
}

/// `sqrt(17) - 4`
pub fn exp_dense_h0() -> f64 {
    17f64.sqrt() - 4.0
}

/// Density threshold exponent `(33 - 7*sqrt(17)) / 4`: instances with
/// `m >= k^this` go to the dense solver.
pub fn exp_dense_threshold() -> f64 {
    (33.0 - 7.0 * 17f64.sqrt()) / 4.0
}

/// `33 - 7*sqrt(17)`
pub fn sparse_numerator() -> f64 {
    33.0 - 7.0 * 17f64.sqrt()
}

/// `37 - 7*sqrt(17)`
pub fn sparse_denominator() -> f64 {
    37.0 - 7.0 * 17f64.sqrt()
}

/// The real root of `x^3 + 2x^2 + x - 2`, by bisection on `[0, 1]`.
pub fn alpha() -> f64 {
    let p = |x: f64| x * x * x + 2.0 * x * x + x - 2.0;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > 1e-15 {
        let mid = 0.5 * (lo + hi);
        if p(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `1 + a^2 (1 - a) / (2 (2 + a))` for `a = alpha()`.
pub fn gamma() -> f64 {
    let a = alpha();
    1.0 + a * a * (1.0 - a) / (2.0 * (2.0 + a))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Variant {
    Classic,
    Improved,
}

pub fn choose_h_recursive(k: usize, variant: Variant) -> usize {
    let e = match variant {
        Variant::Classic => exp_classic(),
        Variant::Improved => exp_improved(),
    };
    ((k.max(1) as f64).powf(e).round() as usize).max(1)
}

/// Nearest power of two, ties going down.
pub fn nearest_power_of_two(x: f64) -> usize {
    if x <= 1.0 {
        return 1;
    }
    let lo = 2f64.powi(x.log2().floor() as i32);
    let hi = 2.0 * lo;
    if x - lo <= hi - x {
        lo as usize
    } else {
        hi as usize
    }
}

/// `(h, h0)` for the dense solver. `h0` is a power of two, at least 2, and
/// `h` is large enough that the bootstrap has at least one level above the
/// seeded ones.
pub fn dense_params(k: usize) -> (usize, usize) {
    let kf = k.max(1) as f64;
    let h0 = nearest_power_of_two(kf.powf(exp_dense_h0())).max(2);
    let h = (kf.powf(exp_dense_h()).round() as usize).max(2).max(h0 * h0 / 2 + 1);
    (h, h0)
}

/// Layer count for the sparse wrapper of the dense solver.
pub fn sparse_h(k: usize, m: usize) -> usize {
    let (kf, mf) = (k.max(1) as f64, m.max(1) as f64);
    let h = (kf.powf(sparse_numerator()) / mf.powi(4)).powf(1.0 / sparse_denominator());
    (h.round() as usize).clamp(1, k.max(1))
}

/// `(h, b)` for one twice-recursive iteration.
pub fn twice_params(k: usize) -> (usize, usize) {
    let a = alpha();
    let kf = k.max(1) as f64;
    let h = (kf.powf(a * a / (2.0 + a)).round() as usize).max(2);
    let b = (kf.powf((1.0 - a) / 2.0).round() as usize).clamp(1, h);
    (h, b)
}

/// Layer count for the sparse wrapper of the twice-recursive solver.
pub fn twice_sparse_h(k: usize, m: usize) -> usize {
    let g = gamma();
    let (kf, mf) = (k.max(1) as f64, m.max(1) as f64);
    let h = (kf.powf(g) / mf).powf(1.0 / (1.0 + g));
    (h.round() as usize).clamp(1, k.max(1))
}

/// `ceil(c * x * ln n / d)` with `ln` clamped below at 1.
pub(crate) fn sample_size(c: f64, x: usize, n: usize, d: usize) -> usize {
    let ln = (n.max(2) as f64).ln().max(1.0);
    (c * x as f64 * ln / d.max(1) as f64).ceil() as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_values() {
        assert!((exp_classic() - 0.154700538379).abs() < 1e-11);
        assert!((exp_improved() - 0.171572875254).abs() < 1e-11);
        assert!((exp_dense_h() - 0.280776406404).abs() < 1e-11);
        assert!((exp_dense_h0() - 0.123105625617).abs() < 1e-11);
    }

    #[test]
    fn worked_parameters() {
        assert_eq!(choose_h_recursive(1, Variant::Classic), 1);
        assert_eq!(choose_h_recursive(1_000_000, Variant::Classic), 8);
        assert_eq!(dense_params(1_000_000), (48, 4));
    }

    #[test]
    fn powers_of_two() {
        assert_eq!(nearest_power_of_two(5.48), 4);
        assert_eq!(nearest_power_of_two(6.0), 4);
        assert_eq!(nearest_power_of_two(6.1), 8);
        assert_eq!(nearest_power_of_two(0.3), 1);
    }

    #[test]
    fn dense_levels_are_consistent() {
        for k in 1..5000 {
            let (h, h0) = dense_params(k);
            let i0 = h0.trailing_zeros() as usize;
            let levels = (h as f64).log2().ceil() as usize + 1;
            assert!(h0.is_power_of_two() && h >= h0 && 2 * i0 < levels, "k = {k}");
        }
    }

    #[test]
    fn twice_b_never_exceeds_h() {
        for k in [1, 10, 100, 10_000, 1_000_000] {
            let (h, b) = twice_params(k);
            assert!(1 <= b && b <= h);
        }
    }
}
