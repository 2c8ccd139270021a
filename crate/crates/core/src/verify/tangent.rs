use crate::error::{Error, Result};
use crate::measure::equilibrium_measure;
use crate::numeric::ExactSum;
use crate::potential::{indicator_potential, Potential};
use crate::pressure::{brute_partition, finite_pressure};
use crate::shift::{is_allowed, SoficPresentation, Sym};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentReport {
    /// `(P_n(Φ + tΨ) − P_n(Φ − tΨ)) / 2t`.
    pub finite_diff: f64,
    /// `Σ_j Σ_x Ψ_{Λ_m+j}(x) e^{U(x)} / (|Λ_n| Z_n)`.
    pub formula: f64,
    /// `ν(B_m)` for the cylinder of `ū` under the equilibrium measure of `Φ`.
    pub cylinder_value: f64,
}

/// Compares the derivative of `P_n` along the indicator of `ū` with its
/// closed form and with the cylinder probability of `ū`.
pub fn tangent_derivative_check(
    presentation: &SoficPresentation,
    potential: &Potential,
    u_bar: &[Sym],
    n: usize,
    t_step: f64,
) -> Result<TangentReport> {
    if t_step.is_nan() || t_step <= 0.0 {
        return Err(Error::invalid("t_step must be positive"));
    }
    if u_bar.len().is_multiple_of(2) {
        return Err(Error::invalid("the word must have odd length 2m+1"));
    }
    if !is_allowed(presentation, u_bar) {
        return Err(Error::DisallowedWord(presentation.alphabet().format(u_bar)));
    }
    let psi = indicator_potential(potential.alphabet_size(), u_bar)?;
    let plus = finite_pressure(presentation, &potential.add_scaled(&psi, t_step)?, n)?;
    let minus = finite_pressure(presentation, &potential.add_scaled(&psi, -t_step)?, n)?;
    let finite_diff = (plus - minus) / (2.0 * t_step);

    let brute = brute_partition(presentation, potential, n)?;
    let top = brute.max_energy();
    let mut num = ExactSum::new();
    let mut den = ExactSum::new();
    for (w, &e) in brute.words.iter().zip(&brute.energies) {
        let weight = (e - top).exp();
        let hits = w.windows(u_bar.len()).filter(|s| *s == u_bar).count();
        num.add_times(weight, hits);
        den.add(weight);
    }
    let formula = num.value() / den.value() / (2 * n + 1) as f64;

    let cylinder_value = equilibrium_measure(presentation, potential)?.word_prob(u_bar);
    Ok(TangentReport {
        finite_diff,
        formula,
        cylinder_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;

    #[test]
    fn full_shift_symmetric_case() {
        let r = tangent_derivative_check(&bundled::full_shift(), &Potential::zero(2), &[1], 3, 1e-3).unwrap();
        assert_eq!(r.formula, 0.5);
        assert!((r.finite_diff - 0.5).abs() <= 1e-6);
        assert!((r.cylinder_value - 0.5).abs() <= 1e-13);
    }

    #[test]
    fn golden_mean_approaches_parry() {
        let r = tangent_derivative_check(&bundled::golden_mean(), &Potential::zero(2), &[1], 5, 1e-3).unwrap();
        assert!((r.formula - r.cylinder_value).abs() <= 0.05);
        assert!((r.finite_diff - r.formula).abs() <= 1e-5);
    }

    #[test]
    fn word_that_never_fits() {
        // a 5-letter word in a 3-letter volume never occurs
        let r = tangent_derivative_check(&bundled::full_shift(), &Potential::zero(2), &[1, 0, 1, 0, 1], 1, 1e-3).unwrap();
        assert_eq!(r.formula, 0.0);
        assert!(tangent_derivative_check(&bundled::golden_mean(), &Potential::zero(2), &[1, 1, 0], 3, 1e-3).is_err());
    }
}
