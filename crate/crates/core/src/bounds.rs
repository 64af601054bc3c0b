//! Closed-form bounds the experiments are checked against.

use crate::rational::Rational;

/// Lightness bound for greedy `(1+ε)`-spanners of genus-`g` graphs:
/// `(1 + 2/ε)(1 + 2g/(1+ε))`. For `g = 0` this is `1 + 2/ε`.
pub fn spanner_lightness_bound(genus: u32, epsilon: Rational) -> Rational {
    let one = Rational::one();
    let two = Rational::integer(2);
    (one + two / epsilon) * (one + two * Rational::integer(genus as i128) / (one + epsilon))
}

/// Competitive bound of `Blocking_δ` on genus-`g` graphs:
/// `2(δ+2) · (1 + 2/δ)(1 + 2g/(1+δ))`, which is `16(1 + 2g/3)` at `δ = 2`.
pub fn blocking_competitive_bound(genus: u32, delta: Rational) -> Rational {
    Rational::integer(2) * (delta + Rational::integer(2)) * spanner_lightness_bound(genus, delta)
}

/// `k² / (2(k²/(1+δ) + 3k − 1))`: the comb's lower bound on `W / 2w(G)`.
pub fn comb_ratio_lower_bound(k: usize, delta: Rational) -> Rational {
    let k = Rational::integer(k as i128);
    let k2 = k * k;
    k2 / (Rational::integer(2) * (k2 / (Rational::one() + delta) + Rational::integer(3) * k - Rational::one()))
}

/// `2(2k − 1 + k + k²/(1+δ))`, the tour-length formula quoted with the
/// comb. It drops the `k/(1+δ)` part of the heavy leaves' total weight, so
/// it sits slightly below the true `2w(G)`.
pub fn comb_tour_formula(k: usize, delta: Rational) -> Rational {
    let k = Rational::integer(k as i128);
    Rational::integer(2) * (Rational::integer(3) * k - Rational::one() + k * k / (Rational::one() + delta))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(blocking_competitive_bound(0, Rational::integer(2)), Rational::integer(16));
        assert_eq!(blocking_competitive_bound(1, Rational::integer(2)), Rational::new(80, 3));
        assert_eq!(spanner_lightness_bound(0, Rational::one()), Rational::integer(3));
        assert_eq!(spanner_lightness_bound(1, Rational::one()), Rational::integer(6));
        assert_eq!(spanner_lightness_bound(1, Rational::new(1, 2)), Rational::new(35, 3));
    }

    #[test]
    fn comb_bound_tends_to_half_delta_plus_one() {
        let d = Rational::integer(3);
        let r25 = comb_ratio_lower_bound(25, d);
        assert_eq!(r25, Rational::new(1250, 921));
        let r = comb_ratio_lower_bound(100_000, d).to_f64();
        assert!((r - 2.0).abs() < 1e-3);
    }
}
