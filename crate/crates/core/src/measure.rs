//! Equilibrium measures as stationary Markov chains on the transfer cover.

use crate::error::Result;
use crate::numeric::CompensatedSum;
use crate::potential::Potential;
use crate::pressure::{build_transfer, perron, Perron, TransferSystem};
use crate::shift::{Cylinder, Interval, Point, SoficPresentation, Sym};

/// Markov chain with `p_u = ν_u h_u` and `Q[u,v] = M[u,v] h_v / (λ h_u)`;
/// the symbol process is read through the state labels.
#[derive(Debug, Clone)]
pub struct RPFMeasure {
    transfer: TransferSystem,
    perron: Perron,
    p: Vec<f64>,
    q: Vec<Vec<f64>>,
}

pub fn equilibrium_measure(presentation: &SoficPresentation, potential: &Potential) -> Result<RPFMeasure> {
    let transfer = build_transfer(presentation, potential)?;
    let perron = perron(&transfer)?;
    let n = transfer.len();
    let p: Vec<f64> = (0..n).map(|u| perron.nu[u] * perron.h[u]).collect();
    let mut q = vec![vec![0.0; n]; n];
    for (u, row) in q.iter_mut().enumerate() {
        for &v in transfer.successors(u) {
            row[v] = transfer.weights()[u][v] * perron.h[v] / (perron.lambda * perron.h[u]);
        }
    }
    Ok(RPFMeasure {
        transfer,
        perron,
        p,
        q,
    })
}

impl RPFMeasure {
    pub fn transfer(&self) -> &TransferSystem {
        &self.transfer
    }

    pub fn perron(&self) -> &Perron {
        &self.perron
    }

    pub fn lambda(&self) -> f64 {
        self.perron.lambda
    }

    pub fn log_lambda(&self) -> f64 {
        self.perron.log_lambda
    }

    pub fn stationary(&self) -> &[f64] {
        &self.p
    }

    pub fn transition(&self) -> &[Vec<f64>] {
        &self.q
    }

    pub fn num_states(&self) -> usize {
        self.p.len()
    }

    /// Forward vector after reading one symbol.
    pub fn forward_start(&self, sym: Sym) -> Vec<f64> {
        self.p
            .iter()
            .enumerate()
            .map(|(u, &pu)| if self.transfer.label(u) == sym { pu } else { 0.0 })
            .collect()
    }

    /// Advances a forward vector by one symbol.
    pub fn forward_step(&self, alpha: &[f64], sym: Sym, out: &mut Vec<f64>) {
        out.clear();
        out.resize(alpha.len(), 0.0);
        for (u, &a) in alpha.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for &v in self.transfer.successors(u) {
                if self.transfer.label(v) == sym {
                    out[v] += a * self.q[u][v];
                }
            }
        }
    }

    /// Probability that the symbol process reads `letters` on consecutive
    /// sites (any window: the chain is stationary). Zero for disallowed words.
    pub fn word_prob(&self, letters: &[Sym]) -> f64 {
        let Some((&first, rest)) = letters.split_first() else {
            return 1.0;
        };
        let mut alpha = self.forward_start(first);
        let mut next = Vec::with_capacity(alpha.len());
        for &s in rest {
            self.forward_step(&alpha, s, &mut next);
            std::mem::swap(&mut alpha, &mut next);
        }
        let total: crate::numeric::ExactSum = alpha.iter().copied().collect();
        total.value()
    }

    /// `ν(B_m(x))`; zero when the center word is not allowed.
    pub fn cylinder_prob(&self, c: &Cylinder) -> f64 {
        self.word_prob(c.center_word().letters())
    }

    /// `max_u |Σ_v Q[u,v] − 1|`.
    pub fn stochasticity_error(&self) -> f64 {
        self.q
            .iter()
            .map(|row| (row.iter().sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// `max_v |(pQ)_v − p_v|`.
    pub fn stationarity_error(&self) -> f64 {
        let n = self.p.len();
        (0..n)
            .map(|v| {
                let s: f64 = (0..n).map(|u| self.p[u] * self.q[u][v]).sum();
                (s - self.p[v]).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// `⟨E_m(x), φ_Φ⟩` for a point.
#[derive(Debug, Clone)]
pub struct EmpiricalPairing {
    pub point: Point,
    pub m: usize,
    pub value: f64,
}

pub fn empirical_pairing(potential: &Potential, point: &Point, m: usize) -> EmpiricalPairing {
    let mut sum = CompensatedSum::default();
    let m_i = m as i64;
    for k in -m_i..=m_i {
        sum.add(potential.phi_function(point, k));
    }
    EmpiricalPairing {
        point: point.clone(),
        m,
        value: sum.value() / (2 * m + 1) as f64,
    }
}

/// `|⟨E_m(z), φ_Φ⟩ − U_{Λ_m}(z)/(2m+1)|`.
pub fn energy_density_gap(potential: &Potential, point: &Point, m: usize) -> f64 {
    let pairing = empirical_pairing(potential, point, m).value;
    let u = potential
        .energy_in(point, Interval::centered(m))
        .expect("points are defined everywhere");
    (pairing - u / (2 * m + 1) as f64).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;
    use crate::shift::{enumerate_words, Word};
    use approx::assert_abs_diff_eq;

    const GAMMA: f64 = 1.618_033_988_749_895;

    #[test]
    fn bernoulli_from_site_potential() {
        let mu = equilibrium_measure(&bundled::full_shift(), &bundled::site_potential()).unwrap();
        let e = bundled::SITE_A.exp();
        let q = e / (1.0 + e);
        assert_abs_diff_eq!(mu.word_prob(&[1]), q, epsilon = 1e-13);
        assert_abs_diff_eq!(mu.word_prob(&[1, 0, 1]), q * q * (1.0 - q), epsilon = 1e-13);
    }

    #[test]
    fn uniform_on_full_shift() {
        let mu = equilibrium_measure(&bundled::full_shift(), &Potential::zero(2)).unwrap();
        for w in enumerate_words(&bundled::full_shift(), 2).unwrap() {
            assert_abs_diff_eq!(mu.word_prob(w.letters()), 1.0 / 32.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn parry_measure() {
        let mu = equilibrium_measure(&bundled::golden_mean(), &Potential::zero(2)).unwrap();
        // states are the blocks "0" and "1"
        let q = mu.transition();
        assert_abs_diff_eq!(q[0][0], 1.0 / GAMMA, epsilon = 1e-13);
        assert_abs_diff_eq!(q[0][1], 1.0 / (GAMMA * GAMMA), epsilon = 1e-13);
        assert_abs_diff_eq!(q[1][0], 1.0, epsilon = 1e-13);
        let p1 = 1.0 / (1.0 + GAMMA * GAMMA);
        assert_abs_diff_eq!(mu.stationary()[1], p1, epsilon = 1e-13);
        // the 2-block marginal of the stationary chain
        let p0 = 1.0 - p1;
        assert_abs_diff_eq!(mu.word_prob(&[0, 0]), p0 / GAMMA, epsilon = 1e-13);
        assert_eq!(mu.word_prob(&[1, 1]), 0.0);
    }

    #[test]
    fn chain_invariants() {
        for (_, s) in bundled::irreducible_shifts() {
            for (_, pot) in bundled::potentials() {
                let mu = equilibrium_measure(&s, &pot).unwrap();
                assert!(mu.stochasticity_error() <= 1e-12);
                assert!(mu.stationarity_error() <= 1e-12);
                assert!(mu.stationary().iter().all(|&x| x > 0.0));
            }
        }
    }

    #[test]
    fn pairing_examples() {
        let g = bundled::full_shift();
        let ones = Point::from_symbols(&g, &[1], &Word::new(0, vec![]), &[1]).unwrap();
        let alt = Point::from_symbols(&g, &[0, 1], &Word::new(0, vec![]), &[0, 1]).unwrap();
        assert_abs_diff_eq!(empirical_pairing(&bundled::site_potential(), &ones, 4).value, 0.7, epsilon = 1e-15);
        assert_eq!(empirical_pairing(&bundled::pair_potential(), &alt, 1).value, 0.0);
        assert_eq!(empirical_pairing(&Potential::zero(2), &alt, 3).value, 0.0);
        assert_eq!(energy_density_gap(&bundled::site_potential(), &alt, 5), 0.0);
        let zeros = Point::from_symbols(&g, &[0], &Word::new(0, vec![]), &[0]).unwrap();
        let gap = energy_density_gap(&bundled::pair_potential(), &zeros, 5);
        assert!(gap <= 2.0 * 0.3 / 11.0 + 1e-15);
        assert!(gap > 0.0);
    }
}
