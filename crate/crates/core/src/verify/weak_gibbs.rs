use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::measure::RPFMeasure;
use crate::potential::Potential;
use crate::shift::{check_volume, Sym};

#[derive(Debug, Clone, PartialEq)]
pub struct WeakGibbsRow {
    pub m: usize,
    /// `max_u |ln ν([u])/(2m+1) − (U(u)/(2m+1) − P)|` over allowed `u` on `[-m, m]`.
    pub d_m: f64,
    pub analytic_bound: f64,
    /// A maximizing word (lexicographically first among ties).
    pub argmax: Vec<Sym>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeakGibbsReport {
    pub rows: Vec<WeakGibbsRow>,
    /// For each requested δ, the smallest scanned `m` from which every scanned `D` is `≤ δ`.
    pub delta_to_n: Vec<(f64, Option<usize>)>,
    /// Bound on `|ln ν([u]) − U(u) + (2m+1)P|` valid for every `m`.
    pub gibbs_constant: f64,
}

/// Bound `G` on `|ln ν([u]) − U(u) + |u|·ln λ|` for the cover chain.
///
/// `ν([u]) = λ^{1−|u|} Σ_paths ν_{s_0} e^{increments} h_{s_end}` with at most
/// `#states` paths per word, and the increments differ from `U(u)` only by
/// shapes cut by the left end of the word.
pub fn gibbs_constant(measure: &RPFMeasure, potential: &Potential) -> f64 {
    let pf = measure.perron();
    let fold = |v: &[f64], f: fn(f64, f64) -> f64, init: f64| v.iter().copied().fold(init, f);
    let (nu_min, nu_max) = (fold(&pf.nu, f64::min, f64::INFINITY), fold(&pf.nu, f64::max, 0.0));
    let (h_min, h_max) = (fold(&pf.h, f64::min, f64::INFINITY), fold(&pf.h, f64::max, 0.0));
    let cut: f64 = potential
        .shapes()
        .iter()
        .map(|s| s.sup_norm() * (s.diameter() + 1) as f64)
        .sum();
    let ll = pf.log_lambda;
    let lower = ll + (nu_min * h_min).ln() - cut;
    let upper = ll + (measure.num_states() as f64).ln() + (nu_max * h_max).ln() + cut;
    lower.abs().max(upper.abs())
}

struct Scan<'a> {
    measure: &'a RPFMeasure,
    potential: &'a Potential,
    pressure: f64,
    range: usize,
    /// `want[L]` is the row index for word length `L`, if scanned.
    want: Vec<Option<usize>>,
}

type Best = Vec<(f64, Vec<Sym>)>;

impl Scan<'_> {
    fn record(&self, best: &mut Best, word: &[Sym], alpha: &[f64], energy: f64) {
        if let Some(row) = self.want[word.len()] {
            let l = word.len() as f64;
            let prob: f64 = alpha.iter().sum();
            let d = (prob.ln() / l - (energy / l - self.pressure)).abs();
            let slot = &mut best[row];
            if d > slot.0 || (d == slot.0 && word < slot.1.as_slice()) || slot.1.is_empty() {
                *slot = (d, word.to_vec());
            }
        }
    }

    fn increment(&self, word: &[Sym]) -> f64 {
        let from = word.len().saturating_sub(self.range + 1);
        self.potential.increment(&word[from..])
    }

    fn dfs(&self, word: &mut Vec<Sym>, alpha: &[f64], energy: f64, max_len: usize, best: &mut Best) {
        if word.len() == max_len {
            return;
        }
        let k = self.potential.alphabet_size() as Sym;
        let mut next = Vec::with_capacity(alpha.len());
        for a in 0..k {
            self.measure.forward_step(alpha, a, &mut next);
            if next.iter().all(|&x| x == 0.0) {
                continue;
            }
            word.push(a);
            let e = energy + self.increment(word);
            self.record(best, word, &next, e);
            self.dfs(word, &next, e, max_len, best);
            word.pop();
        }
    }
}

fn merge(into: &mut Best, from: Best) {
    for (slot, cand) in into.iter_mut().zip(from) {
        if cand.1.is_empty() {
            continue;
        }
        if slot.1.is_empty() || cand.0 > slot.0 || (cand.0 == slot.0 && cand.1 < slot.1) {
            *slot = cand;
        }
    }
}

/// Scans every allowed center word for each `m` in `m_list` and reports `D_m`.
///
/// One depth-first walk carries the forward vector and the running energy,
/// so all requested `m` are served by a single pass over words of the
/// largest length. The walk is split over fixed-depth prefixes and merged in
/// prefix order, which keeps the result independent of the thread count.
pub fn weak_gibbs_scan(
    measure: &RPFMeasure,
    potential: &Potential,
    pressure: f64,
    m_list: &[usize],
    deltas: &[f64],
) -> Result<WeakGibbsReport> {
    if m_list.is_empty() {
        return Err(Error::invalid("empty list of m"));
    }
    let mut ms = m_list.to_vec();
    ms.sort_unstable();
    ms.dedup();
    let max_len = 2 * ms.last().unwrap() + 1;
    let k = potential.alphabet_size();
    check_volume(k, max_len)?;
    let mut want = vec![None; max_len + 1];
    for (i, &m) in ms.iter().enumerate() {
        want[2 * m + 1] = Some(i);
    }
    let scan = Scan {
        measure,
        potential,
        pressure,
        range: potential.range(),
        want,
    };
    let mut best: Best = vec![(0.0, Vec::new()); ms.len()];

    // prefixes, recorded on the way
    let depth = max_len.min(10);
    let mut prefixes: Vec<(Vec<Sym>, Vec<f64>, f64)> = Vec::new();
    for a in 0..k as Sym {
        let alpha = measure.forward_start(a);
        if alpha.iter().all(|&x| x == 0.0) {
            continue;
        }
        let e = potential.increment(&[a]);
        scan.record(&mut best, &[a], &alpha, e);
        prefixes.push((vec![a], alpha, e));
    }
    for _ in 1..depth {
        let mut next_layer = Vec::new();
        for (w, alpha, e) in &prefixes {
            let mut next = Vec::new();
            for a in 0..k as Sym {
                measure.forward_step(alpha, a, &mut next);
                if next.iter().all(|&x| x == 0.0) {
                    continue;
                }
                let mut w2 = w.clone();
                w2.push(a);
                let e2 = e + scan.increment(&w2);
                scan.record(&mut best, &w2, &next, e2);
                next_layer.push((w2, next.clone(), e2));
            }
        }
        prefixes = next_layer;
    }
    let parts: Vec<Best> = prefixes
        .par_iter()
        .map(|(w, alpha, e)| {
            let mut local: Best = vec![(0.0, Vec::new()); ms.len()];
            let mut word = w.clone();
            scan.dfs(&mut word, alpha, *e, max_len, &mut local);
            local
        })
        .collect();
    for part in parts {
        merge(&mut best, part);
    }

    let g = gibbs_constant(measure, potential);
    let rows: Vec<WeakGibbsRow> = ms
        .iter()
        .zip(best)
        .map(|(&m, (d, w))| WeakGibbsRow {
            m,
            d_m: d,
            analytic_bound: (g + potential.boundary_norm_bound(m)) / (2 * m + 1) as f64,
            argmax: w,
        })
        .collect();
    let delta_to_n = deltas
        .iter()
        .map(|&delta| {
            let mut n = None;
            for row in rows.iter().rev() {
                if row.d_m <= delta {
                    n = Some(row.m);
                } else {
                    break;
                }
            }
            (delta, n)
        })
        .collect();
    Ok(WeakGibbsReport {
        rows,
        delta_to_n,
        gibbs_constant: g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;
    use crate::measure::equilibrium_measure;
    use crate::shift::enumerate_words;

    fn brute_d(measure: &RPFMeasure, pot: &Potential, p: &crate::shift::SoficPresentation, m: usize) -> f64 {
        let l = (2 * m + 1) as f64;
        enumerate_words(p, m)
            .unwrap()
            .iter()
            .map(|w| {
                let nu = measure.word_prob(w.letters());
                (nu.ln() / l - (pot.energy(w) / l - measure.log_lambda())).abs()
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn scan_matches_direct_evaluation() {
        let s = bundled::even_shift();
        let pot = bundled::pair_potential();
        let mu = equilibrium_measure(&s, &pot).unwrap();
        let r = weak_gibbs_scan(&mu, &pot, mu.log_lambda(), &[1, 2, 3, 6], &[0.5]).unwrap();
        for row in &r.rows {
            let d = brute_d(&mu, &pot, &s, row.m);
            assert!((row.d_m - d).abs() < 1e-13, "m={} {} vs {}", row.m, row.d_m, d);
            assert!(row.d_m <= row.analytic_bound);
        }
    }

    #[test]
    fn bernoulli_deviation_vanishes() {
        let pot = bundled::site_potential();
        let mu = equilibrium_measure(&bundled::full_shift(), &pot).unwrap();
        let r = weak_gibbs_scan(&mu, &pot, mu.log_lambda(), &[1, 2, 3, 4, 5], &[1e-10]).unwrap();
        assert!(r.rows.iter().all(|row| row.d_m <= 1e-12));
        assert_eq!(r.delta_to_n, vec![(1e-10, Some(1))]);
    }

    #[test]
    fn golden_deviation_decays() {
        let pot = Potential::zero(2);
        let mu = equilibrium_measure(&bundled::golden_mean(), &pot).unwrap();
        let r = weak_gibbs_scan(&mu, &pot, mu.log_lambda(), &[2, 8], &[]).unwrap();
        assert!(r.rows[1].d_m < r.rows[0].d_m);
        assert!(r.rows[1].d_m <= 0.2);
    }

    #[test]
    fn thread_count_does_not_matter() {
        let pot = bundled::pair_potential();
        let mu = equilibrium_measure(&bundled::golden_mean(), &pot).unwrap();
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| weak_gibbs_scan(&mu, &pot, mu.log_lambda(), &[3, 6], &[0.1]).unwrap())
        };
        assert_eq!(run(1), run(4));
    }
}
