//! Interestingness measures over a contingency quad: confidence, lift,
//! leverage, and the phi correlation coefficient.

use crate::error::{Error, Result};
use crate::supports::ContingencyQuad;

/// Measure values for one rule; `lift` and `phi` are `None` where the
/// defining ratio has a zero denominator.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct MeasureValues {
    pub confidence: f64,
    pub lift: Option<f64>,
    pub leverage: f64,
    pub phi: Option<f64>,
}

impl MeasureValues {
    pub fn from_quad(q: &ContingencyQuad) -> Result<MeasureValues> {
        Ok(MeasureValues {
            confidence: confidence(q)?,
            lift: lift(q),
            leverage: leverage(q),
            phi: phi(q),
        })
    }
}

/// count(X and Y) / count(X); an error when X never occurs.
pub fn confidence(q: &ContingencyQuad) -> Result<f64> {
    let cx = q.antecedent_count();
    if cx == 0 {
        return Err(Error::UndefinedConfidence);
    }
    Ok(q.n11 as f64 / cx as f64)
}

/// Observed-to-expected joint frequency ratio; `None` when either marginal
/// is zero (the independence expectation collapses).
pub fn lift(q: &ContingencyQuad) -> Option<f64> {
    let (cx, cy) = (q.antecedent_count(), q.consequent_count());
    if cx == 0 || cy == 0 {
        return None;
    }
    Some(q.n11 as f64 * q.n as f64 / (cx as f64 * cy as f64))
}

/// Observed-minus-expected joint frequency, in [-0.25, 0.25].
pub fn leverage(q: &ContingencyQuad) -> f64 {
    debug_assert!(q.n > 0, "leverage needs a nonempty database");
    let n = q.n as f64;
    q.n11 as f64 / n - (q.antecedent_count() as f64 / n) * (q.consequent_count() as f64 / n)
}

/// Pearson correlation of the two binary indicators, in [-1, 1]; `None`
/// when any of the four marginals is zero.
pub fn phi(q: &ContingencyQuad) -> Option<f64> {
    let x1 = q.n11 + q.n10;
    let x0 = q.n01 + q.n00;
    let y1 = q.n11 + q.n01;
    let y0 = q.n10 + q.n00;
    if x1 == 0 || x0 == 0 || y1 == 0 || y0 == 0 {
        return None;
    }
    let numerator = q.n11 as i128 * q.n00 as i128 - q.n10 as i128 * q.n01 as i128;
    let denominator = (x1 as f64 * x0 as f64 * y1 as f64 * y0 as f64).sqrt();
    Some(numerator as f64 / denominator)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad(n11: usize, n10: usize, n01: usize, n00: usize) -> ContingencyQuad {
        ContingencyQuad::new(n11, n10, n01, n00)
    }

    #[test]
    fn confidence_is_the_conditional_frequency() {
        assert!((confidence(&quad(74, 1, 9, 17)).unwrap() - 74.0 / 75.0).abs() < 1e-15);
        assert_eq!(confidence(&quad(71, 0, 10, 20)).unwrap(), 1.0);
        assert_eq!(confidence(&quad(0, 5, 0, 0)).unwrap(), 0.0);
        let err = confidence(&quad(0, 0, 3, 4)).unwrap_err();
        assert!(matches!(err, Error::UndefinedConfidence));
    }

    #[test]
    fn phi_hits_the_extremes_on_perfect_quads() {
        assert_eq!(phi(&quad(50, 0, 0, 50)), Some(1.0));
        assert_eq!(phi(&quad(0, 50, 50, 0)), Some(-1.0));
    }

    #[test]
    fn phi_is_zero_on_exact_independence() {
        assert_eq!(phi(&quad(25, 25, 25, 25)), Some(0.0));
        assert_eq!(phi(&quad(4, 4, 2, 2)), Some(0.0));
    }

    #[test]
    fn phi_is_undefined_on_zero_marginals() {
        assert_eq!(phi(&quad(0, 0, 5, 5)), None); // X never occurs
        assert_eq!(phi(&quad(5, 5, 0, 0)), None); // X always occurs
        assert_eq!(phi(&quad(0, 5, 0, 5)), None); // Y never occurs
        assert_eq!(phi(&quad(5, 0, 5, 0)), None); // Y always occurs
    }

    #[test]
    fn phi_matches_a_direct_formula_evaluation() {
        let q = quad(74, 1, 9, 17);
        let direct = (74.0 * 17.0 - 1.0 * 9.0) / (75f64 * 26.0 * 83.0 * 18.0).sqrt();
        assert!((phi(&q).unwrap() - direct).abs() < 1e-12);
    }

    #[test]
    fn lift_and_leverage_on_reference_quads() {
        let independent = quad(25, 25, 25, 25);
        assert_eq!(lift(&independent), Some(1.0));
        assert_eq!(leverage(&independent), 0.0);

        let q = quad(74, 1, 9, 17);
        assert!((lift(&q).unwrap() - 74.0 * 101.0 / (75.0 * 83.0)).abs() < 1e-15);

        let subset = quad(71, 0, 0, 30);
        assert!((lift(&subset).unwrap() - 101.0 / 71.0).abs() < 1e-15);
        assert_eq!(lift(&quad(0, 0, 5, 5)), None);
    }

    #[test]
    fn sign_equivalence_of_lift_and_leverage() {
        for q in [quad(74, 1, 9, 17), quad(1, 30, 30, 1), quad(25, 25, 25, 25)] {
            let lev = leverage(&q);
            let lift = lift(&q).unwrap();
            let raw = (q.n11 * q.n) as i128
                - (q.antecedent_count() as i128) * (q.consequent_count() as i128);
            assert_eq!(lev > 0.0, lift > 1.0);
            assert_eq!(lev > 0.0, raw > 0);
            assert_eq!(lev < 0.0, lift < 1.0);
        }
    }

    #[test]
    fn symmetric_measures_survive_argument_swap() {
        let q = quad(30, 10, 5, 55);
        let swapped = quad(30, 5, 10, 55);
        assert_eq!(phi(&q), phi(&swapped));
        assert!((leverage(&q) - leverage(&swapped)).abs() < 1e-15);
        assert_ne!(
            confidence(&q).unwrap(),
            confidence(&swapped).unwrap(),
            "confidence is asymmetric"
        );
    }

    #[test]
    fn bundle_collects_all_four() {
        let m = MeasureValues::from_quad(&quad(4, 1, 1, 4)).unwrap();
        assert!((m.confidence - 0.8).abs() < 1e-15);
        assert_eq!(m.phi, Some(0.6));
        assert!((m.lift.unwrap() - 1.6).abs() < 1e-15);
        assert!((m.leverage - (0.4 - 0.25)).abs() < 1e-15);
    }
}
