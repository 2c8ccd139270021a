//! Finite-volume pressure by enumeration and by an exact word recursion,
//! transfer matrices on the history cover, and Perron data by power iteration.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::{log_sum_exp, ExactSum};
use crate::potential::Potential;
use crate::shift::presentation::{period, strongly_connected};
use crate::shift::{allowed_blocks, SoficPresentation, Sym};

fn check_alphabet(p: &SoficPresentation, pot: &Potential) -> Result<()> {
    if p.alphabet().len() != pot.alphabet_size() {
        return Err(Error::invalid(format!(
            "potential is over {} symbols, presentation over {}",
            pot.alphabet_size(),
            p.alphabet().len()
        )));
    }
    Ok(())
}

/// Every allowed word on `[-n, n]` with its energy.
#[derive(Debug, Clone)]
pub struct BrutePartition {
    pub n: usize,
    /// `ln Z_n`.
    pub log_z: f64,
    /// Letters of the allowed words, lexicographic.
    pub words: Vec<Vec<Sym>>,
    /// `U_{Λ_n}` of each word.
    pub energies: Vec<f64>,
}

impl BrutePartition {
    pub fn max_energy(&self) -> f64 {
        self.energies.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// `Z_n = Σ_{x∈X_n} exp U_{Λ_n}(x)` by enumeration.
pub fn brute_partition(p: &SoficPresentation, pot: &Potential, n: usize) -> Result<BrutePartition> {
    check_alphabet(p, pot)?;
    let words = allowed_blocks(p, 2 * n + 1)?;
    let energies: Vec<f64> = words.par_iter().map(|w| pot.energy_of_letters(w)).collect();
    Ok(BrutePartition {
        n,
        log_z: log_sum_exp(&energies),
        words,
        energies,
    })
}

/// `ln Σ_w exp U(w)` over allowed words of length `len`, without enumerating them.
///
/// The recursion runs on pairs (set of vertices a prefix can end in, last `r`
/// symbols); every allowed word corresponds to exactly one sequence of such
/// pairs, so the result equals the enumerated sum.
pub fn word_log_partition(p: &SoficPresentation, pot: &Potential, len: usize) -> Result<f64> {
    check_alphabet(p, pot)?;
    if len == 0 {
        return Ok(0.0);
    }
    let r = pot.range();
    let k = p.alphabet().len() as Sym;
    let mut layer: BTreeMap<(Vec<usize>, Vec<Sym>), f64> = BTreeMap::new();
    layer.insert(((0..p.num_vertices()).collect(), Vec::new()), 1.0);
    let mut log_scale = 0.0;
    let mut window = Vec::with_capacity(r + 1);
    for _ in 0..len {
        let mut next: BTreeMap<(Vec<usize>, Vec<Sym>), f64> = BTreeMap::new();
        for ((set, hist), &w) in &layer {
            for a in 0..k {
                let succ = p.successors(set, a);
                if succ.is_empty() {
                    continue;
                }
                window.clear();
                window.extend_from_slice(hist);
                window.push(a);
                let inc = pot.increment(&window);
                let keep = window.len().min(r);
                let h = window[window.len() - keep..].to_vec();
                *next.entry((succ, h)).or_insert(0.0) += w * inc.exp();
            }
        }
        let max = next.values().copied().fold(0.0, f64::max);
        if max > 1e100 || (max < 1e-100 && max > 0.0) {
            for v in next.values_mut() {
                *v /= max;
            }
            log_scale += max.ln();
        }
        layer = next;
    }
    let total: ExactSum = layer.values().copied().collect();
    Ok(log_scale + total.value().ln())
}

/// `P_n = ln Z_n / (2n+1)`.
pub fn finite_pressure(p: &SoficPresentation, pot: &Potential, n: usize) -> Result<f64> {
    Ok(word_log_partition(p, pot, 2 * n + 1)? / (2 * n + 1) as f64)
}

/// Weighted transfer matrix on the cover whose states are (vertex, last `h`
/// symbols), `h = max(range, 1)`.
///
/// The transition `(v, w) -> (v', w')` exists when an edge `v -> v'` carries
/// the last symbol of `w'` and `w'` is `w` shifted by that symbol. Its weight
/// is `exp` of the shapes ending at the new position inside the `h+1` symbols
/// seen; the first `h` symbols of a word contribute through `start`.
#[derive(Debug, Clone)]
pub struct TransferSystem {
    history: usize,
    states: Vec<(usize, Vec<Sym>)>,
    weights: Vec<Vec<f64>>,
    labels: Vec<Sym>,
    start: Vec<f64>,
    successors: Vec<Vec<usize>>,
}

impl TransferSystem {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn history(&self) -> usize {
        self.history
    }

    pub fn states(&self) -> &[(usize, Vec<Sym>)] {
        &self.states
    }

    pub fn weights(&self) -> &[Vec<f64>] {
        &self.weights
    }

    /// Symbol read when entering a state (its last history symbol).
    pub fn label(&self, state: usize) -> Sym {
        self.labels[state]
    }

    pub fn labels(&self) -> &[Sym] {
        &self.labels
    }

    /// `exp U` of the history word of each state.
    pub fn start_weights(&self) -> &[f64] {
        &self.start
    }

    pub fn successors(&self, state: usize) -> &[usize] {
        &self.successors[state]
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        self.successors.clone()
    }
}

pub fn build_transfer(p: &SoficPresentation, pot: &Potential) -> Result<TransferSystem> {
    check_alphabet(p, pot)?;
    if !p.is_right_resolving() {
        return Err(Error::NotRightResolving);
    }
    let h = pot.range().max(1);
    let mut layer: Vec<(usize, Vec<Sym>)> = p.edges().iter().map(|e| (e.dst, vec![e.label])).collect();
    layer.sort();
    layer.dedup();
    for _ in 1..h {
        let mut next = Vec::new();
        for (v, w) in &layer {
            for &k in p.out_edges(*v) {
                let e = p.edge(k);
                let mut w2 = w.clone();
                w2.push(e.label);
                next.push((e.dst, w2));
            }
        }
        next.sort();
        next.dedup();
        if next.len() > 1 << 16 {
            return Err(Error::VolumeTooLarge {
                size: next.len() as f64,
                cap: 1 << 16,
            });
        }
        layer = next;
    }
    let states = layer;
    let index: BTreeMap<&(usize, Vec<Sym>), usize> = states.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let n = states.len();
    let mut weights = vec![vec![0.0; n]; n];
    let mut successors = vec![Vec::new(); n];
    for (i, (v, w)) in states.iter().enumerate() {
        for &k in p.out_edges(*v) {
            let e = p.edge(k);
            let mut window = w.clone();
            window.push(e.label);
            let j = index[&(e.dst, window[1..].to_vec())];
            weights[i][j] = pot.increment(&window).exp();
            successors[i].push(j);
        }
        successors[i].sort_unstable();
    }
    let labels = states.iter().map(|(_, w)| *w.last().expect("h >= 1")).collect();
    let start = states.iter().map(|(_, w)| pot.energy_of_letters(w).exp()).collect();
    Ok(TransferSystem {
        history: h,
        states,
        weights,
        labels,
        start,
        successors,
    })
}

/// Perron root and eigenvectors, normalized so that `Σν = 1` and `Σ ν h = 1`.
#[derive(Debug, Clone)]
pub struct Perron {
    pub lambda: f64,
    pub log_lambda: f64,
    pub h: Vec<f64>,
    pub nu: Vec<f64>,
    /// `max(‖Mh − λh‖_∞/‖h‖_∞, ‖νM − λν‖_∞/‖ν‖_∞)`.
    pub residual: f64,
    pub iterations: usize,
}

const MAX_ITERATIONS: usize = 200_000;

pub fn perron(t: &TransferSystem) -> Result<Perron> {
    perron_matrix(&t.weights, &t.adjacency())
}

/// Perron data of a nonnegative matrix given with its positive pattern.
pub fn perron_matrix(m: &[Vec<f64>], adj: &[Vec<usize>]) -> Result<Perron> {
    if !strongly_connected(adj) {
        return Err(Error::ReducibleTransfer);
    }
    match period(adj) {
        Some(1) => {}
        Some(d) => return Err(Error::PeriodicTransfer { period: d }),
        None => return Err(Error::ReducibleTransfer),
    }
    let mt: Vec<Vec<f64>> = (0..m.len()).map(|j| m.iter().map(|row| row[j]).collect()).collect();
    let (lambda, h, r1, it1) = power_iterate(m)?;
    let (_, nu, r2, it2) = power_iterate(&mt)?;
    let s: f64 = nu.iter().sum();
    let nu: Vec<f64> = nu.iter().map(|x| x / s).collect();
    let dot: ExactSum = nu.iter().zip(&h).map(|(a, b)| a * b).collect();
    let dot = dot.value();
    let h: Vec<f64> = h.iter().map(|x| x / dot).collect();
    Ok(Perron {
        lambda,
        log_lambda: lambda.ln(),
        h,
        nu,
        residual: r1.max(r2),
        iterations: it1.max(it2),
    })
}

fn mat_vec(m: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    m.iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}

fn residual(m: &[Vec<f64>], x: &[f64], lambda: f64) -> f64 {
    let y = mat_vec(m, x);
    let norm = x.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    y.iter()
        .zip(x)
        .fold(0.0f64, |a, (yi, xi)| a.max((yi - lambda * xi).abs()))
        / norm
}

/// Keeps iterating while the residual still drops, for at most 200 steps.
fn polish(m: &[Vec<f64>], mut x: Vec<f64>, mut rq: f64, mut res: f64, mut it: usize) -> (f64, Vec<f64>, f64, usize) {
    for _ in 0..200 {
        let y = mat_vec(m, &x);
        let num: f64 = y.iter().zip(&x).map(|(a, b)| a * b).sum();
        let den: f64 = x.iter().map(|b| b * b).sum();
        let s: f64 = y.iter().sum();
        let next: Vec<f64> = y.into_iter().map(|v| v / s).collect();
        let next_rq = num / den;
        let next_res = residual(m, &next, next_rq);
        if next_res >= res {
            break;
        }
        (x, rq, res, it) = (next, next_rq, next_res, it + 1);
    }
    (rq, x, res, it)
}

/// Power iteration from the all-ones vector; stops once successive Rayleigh
/// quotients agree to `1e-13` relative and the residual is below `1e-12`.
fn power_iterate(m: &[Vec<f64>]) -> Result<(f64, Vec<f64>, f64, usize)> {
    let n = m.len();
    let mut x = vec![1.0 / n as f64; n];
    let mut prev = f64::NAN;
    let mut res = f64::INFINITY;
    for it in 1..=MAX_ITERATIONS {
        let y = mat_vec(m, &x);
        let num: f64 = y.iter().zip(&x).map(|(a, b)| a * b).sum();
        let den: f64 = x.iter().map(|b| b * b).sum();
        let rq = num / den;
        let s: f64 = y.iter().sum();
        x = y.into_iter().map(|v| v / s).collect();
        if (rq - prev).abs() < 1e-13 * rq.abs() {
            res = residual(m, &x, rq);
            if res <= 1e-12 {
                return Ok(polish(m, x, rq, res, it));
            }
        }
        prev = rq;
    }
    Err(Error::NoConvergence {
        iterations: MAX_ITERATIONS,
        residual: res,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct FiniteVolume {
    pub n: usize,
    pub p_n: f64,
    pub envelope: f64,
}

impl FiniteVolume {
    pub fn within_envelope(&self, log_lambda: f64) -> bool {
        (self.p_n - log_lambda).abs() <= self.envelope
    }
}

#[derive(Debug, Clone)]
pub struct PressureEstimate {
    pub log_lambda: f64,
    pub finite_volume: Vec<FiniteVolume>,
    pub residual: f64,
    pub states: usize,
}

impl PressureEstimate {
    pub fn all_within_envelope(&self) -> bool {
        self.finite_volume.iter().all(|r| r.within_envelope(self.log_lambda))
    }
}

/// `ln λ` for the transfer system, with `P_n` and the envelope
/// `(2·bnb(n) + 2 ln(max h / min h) + ln #states)/(2n+1)` along `ladder`.
pub fn pressure_limit(p: &SoficPresentation, pot: &Potential, ladder: &[usize]) -> Result<PressureEstimate> {
    let t = build_transfer(p, pot)?;
    let pf = perron(&t)?;
    let hmax = pf.h.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let hmin = pf.h.iter().copied().fold(f64::INFINITY, f64::min);
    let fixed = 2.0 * (hmax / hmin).ln() + (t.len() as f64).ln();
    let finite_volume = ladder
        .iter()
        .map(|&n| {
            Ok(FiniteVolume {
                n,
                p_n: finite_pressure(p, pot, n)?,
                envelope: (2.0 * pot.boundary_norm_bound(n) + fixed) / (2 * n + 1) as f64,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PressureEstimate {
        log_lambda: pf.log_lambda,
        finite_volume,
        residual: pf.residual,
        states: t.len(),
    })
}
