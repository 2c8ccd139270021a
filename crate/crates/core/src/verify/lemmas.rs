//! Brute-force checks of the partition-function inequalities.
//!
//! Constants that the asymptotic argument bounds by `ε|Λ_m|` are replaced by
//! the exact interaction bound `W = boundary_norm_bound(m)`, so every
//! inequality below is unconditional and is checked as stated.
//!
//! Sums of Boltzmann weights are taken in the linear domain after shifting by
//! the largest energy, with correctly rounded accumulation: a sum over a
//! subset of terms can then never exceed the sum over a superset, and the
//! comparisons that hold exactly are reported as holding.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::numeric::{log_sum_exp, ExactSum};
use crate::potential::Potential;
use crate::pressure::brute_partition;
use crate::shift::{
    allowed_blocks, enumerate_words, is_allowed, GapVariant, Interval, SoficPresentation, Sym, Word,
};

#[derive(Debug, Clone, PartialEq)]
pub struct InequalityCheck {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs ≤ rhs`, decided before rounding to the reported values when the
    /// sides are sums of weights.
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LemmaContext {
    pub n: usize,
    pub m: usize,
    pub j: i64,
    pub q: usize,
    pub u_bar: Option<Vec<Sym>>,
    /// Number of center words `v` ranged over.
    pub v_range: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LemmaReport {
    pub context: LemmaContext,
    /// Named constants; `ln_*` entries are logarithms.
    pub constants: Vec<(String, f64)>,
    pub checks: Vec<InequalityCheck>,
}

impl LemmaReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn check(&self, prefix: &str) -> Option<&InequalityCheck> {
        self.checks.iter().find(|c| c.name.starts_with(prefix))
    }

    pub fn constant(&self, name: &str) -> Option<f64> {
        self.constants.iter().find(|c| c.0 == name).map(|c| c.1)
    }
}

/// Keeps the instance of a family of inequalities with the least slack,
/// preferring a failing one.
struct Worst {
    name: &'static str,
    pick: Option<(bool, f64, String, f64, f64)>,
}

impl Worst {
    fn new(name: &'static str) -> Self {
        Self { name, pick: None }
    }

    fn offer(&mut self, tag: impl FnOnce() -> String, lhs: f64, rhs: f64, holds: bool) {
        let slack = rhs - lhs;
        let better = match &self.pick {
            None => true,
            Some((h, s, ..)) => (*h && !holds) || (*h == holds && slack < *s),
        };
        if better {
            self.pick = Some((holds, slack, tag(), lhs, rhs));
        }
    }

    fn offer_plain(&mut self, tag: impl FnOnce() -> String, lhs: f64, rhs: f64) {
        self.offer(tag, lhs, rhs, lhs <= rhs)
    }

    fn finish(self, out: &mut Vec<InequalityCheck>) {
        if let Some((holds, _, tag, lhs, rhs)) = self.pick {
            let name = if tag.is_empty() {
                self.name.to_string()
            } else {
                format!("{}[{}]", self.name, tag)
            };
            out.push(InequalityCheck { name, lhs, rhs, holds });
        }
    }
}

/// Shifted Boltzmann weights of all allowed words on `[-n, n]`.
struct Ensemble {
    words: Vec<Vec<Sym>>,
    energies: Vec<f64>,
    weights: Vec<f64>,
    top: f64,
}

impl Ensemble {
    fn new(p: &SoficPresentation, pot: &Potential, n: usize) -> Result<Self> {
        let b = brute_partition(p, pot, n)?;
        let top = b.max_energy();
        let weights = b.energies.iter().map(|e| (e - top).exp()).collect();
        Ok(Self {
            words: b.words,
            energies: b.energies,
            weights,
            top,
        })
    }

    fn log(&self, s: &ExactSum) -> f64 {
        self.top + s.value().ln()
    }
}

/// Letters of a `[-n,n]` word on `window`.
fn slice(word: &[Sym], n: usize, window: Interval) -> &[Sym] {
    let a = (window.lo + n as i64) as usize;
    let b = (window.hi + n as i64) as usize;
    &word[a..=b]
}

fn center(m: usize, j: i64) -> Interval {
    Interval::centered(m).shifted(j)
}

fn check_word(p: &SoficPresentation, letters: &[Sym]) -> Result<()> {
    if is_allowed(p, letters) {
        Ok(())
    } else {
        Err(Error::DisallowedWord(p.alphabet().format(letters)))
    }
}

/// `ln Z^j_{n,ℓ}(v)`: log of the weight of words on `[-n,n]` reading `v` on `Λ_m + j + ℓ`.
pub fn constrained_partition(
    p: &SoficPresentation,
    pot: &Potential,
    n: usize,
    j: i64,
    l: i64,
    v: &[Sym],
) -> Result<f64> {
    if v.len().is_multiple_of(2) {
        return Err(Error::WindowsInconsistent("v must have odd length".into()));
    }
    let m = v.len() / 2;
    let window = center(m, j + l);
    if !Interval::centered(n).contains_interval(&window) {
        return Err(Error::WindowsInconsistent(format!(
            "window [{}, {}] leaves [-{n}, {n}]",
            window.lo, window.hi
        )));
    }
    let b = brute_partition(p, pot, n)?;
    let selected: Vec<f64> = b
        .words
        .iter()
        .zip(&b.energies)
        .filter(|(w, _)| slice(w, n, window) == v)
        .map(|(_, &e)| e)
        .collect();
    Ok(log_sum_exp(&selected))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lemma211Params {
    pub n: usize,
    pub m: usize,
    pub q: usize,
    pub j: i64,
    pub l: i64,
    pub l_prime: i64,
}

/// Sandwich of `U_{Λ_n}(x) − U_{Λ_n}(y)` around `U_{Λ_m+j+ℓ}(x) − U_{Λ_m+j+ℓ'}(y)`
/// for words agreeing outside `Λ_{m+q} + j`, with
/// `ln C = 2·2q·‖Φ‖ + 2W`.
pub fn lemma_211_check(
    p: &SoficPresentation,
    pot: &Potential,
    params: &Lemma211Params,
    x: &Word,
    y: &Word,
) -> Result<LemmaReport> {
    let Lemma211Params { n, m, q, j, l, l_prime } = *params;
    let full = Interval::centered(n);
    let inner = center(m + q, j);
    if x.window() != full || y.window() != full {
        return Err(Error::WindowsInconsistent("x and y must live on [-n, n]".into()));
    }
    if !full.contains_interval(&inner) {
        return Err(Error::WindowsInconsistent("Λ_{m+q} + j must lie inside Λ_n".into()));
    }
    if l.unsigned_abs() as usize > q || l_prime.unsigned_abs() as usize > q {
        return Err(Error::WindowsInconsistent("|ℓ|, |ℓ'| must not exceed q".into()));
    }
    check_word(p, x.letters())?;
    check_word(p, y.letters())?;
    if full.iter().any(|i| !inner.contains(i) && x.get(i) != y.get(i)) {
        return Err(Error::WindowsInconsistent("x and y differ outside Λ_{m+q} + j".into()));
    }
    let d_full = pot.energy(x) - pot.energy(y);
    let d_small = pot.energy(&x.restrict(center(m, j + l))?) - pot.energy(&y.restrict(center(m, j + l_prime))?);
    let norm = pot.norms().norm;
    let w = pot.boundary_norm_bound(m);
    let ln_c = 2.0 * (2 * q) as f64 * norm + 2.0 * w;
    let checks = vec![
        InequalityCheck {
            name: "sandwich.lower".into(),
            lhs: d_small - ln_c,
            rhs: d_full,
            holds: d_small - ln_c <= d_full,
        },
        InequalityCheck {
            name: "sandwich.upper".into(),
            lhs: d_full,
            rhs: d_small + ln_c,
            holds: d_full <= d_small + ln_c,
        },
    ];
    Ok(LemmaReport {
        context: LemmaContext {
            n,
            m,
            j,
            q,
            u_bar: None,
            v_range: 0,
        },
        constants: vec![
            ("q".into(), q as f64),
            ("W".into(), w),
            ("norm".into(), norm),
            ("ln_C".into(), ln_c),
        ],
        checks,
    })
}

fn tag_v(p: &SoficPresentation, v: &[Sym]) -> String {
    format!("v={}", p.alphabet().format(v))
}

fn merged<'a>(sums: impl Iterator<Item = &'a ExactSum>) -> ExactSum {
    let mut out = ExactSum::new();
    for s in sums {
        out.merge(s);
    }
    out
}

/// Linear-domain comparison of two exact sums, reported as logarithms.
fn offer_sums(worst: &mut Worst, e: &Ensemble, tag: impl FnOnce() -> String, lhs: &ExactSum, rhs: &ExactSum) {
    let (a, b) = (lhs.value(), rhs.value());
    worst.offer(tag, e.log(lhs), e.log(rhs), a <= b);
}

/// Bounds on `Z^j_{n,0}(ū)/Z_n` and `Σ_ℓ Z^j_{n,ℓ}(ū)/Z_n` for the exact-length
/// gap `q`, together with the intermediate relations between `Z_{n,ℓ}(v)`,
/// the union sums `Z̄_n(v)` and `Z_n`.
pub fn lemma_212_check(
    p: &SoficPresentation,
    pot: &Potential,
    n: usize,
    m: usize,
    j: i64,
    u_bar: &[Sym],
) -> Result<LemmaReport> {
    let q = p.decoupling_gap(GapVariant::ExactLength)?.gap;
    if n <= m + q {
        return Err(Error::WindowsInconsistent(format!("need n > m + q = {}", m + q)));
    }
    if j.unsigned_abs() as usize > n - m - q {
        return Err(Error::WindowsInconsistent(format!("need |j| <= n - (m + q) = {}", n - m - q)));
    }
    if u_bar.len() != 2 * m + 1 {
        return Err(Error::WindowsInconsistent("ū must have length 2m+1".into()));
    }
    check_word(p, u_bar)?;

    let e = Ensemble::new(p, pot, n)?;
    let vs: Vec<Vec<Sym>> = enumerate_words(p, m)?.into_iter().map(Word::into_letters).collect();
    let v_index: HashMap<&[Sym], usize> = vs.iter().enumerate().map(|(i, v)| (v.as_slice(), i)).collect();
    let u = v_index[u_bar];
    let ls: Vec<i64> = (-(q as i64)..=q as i64).collect();
    let inner = center(m + q, j);
    let lo = (inner.lo + n as i64) as usize;
    let hi = (inner.hi + n as i64) as usize;

    let mut z_l = vec![vec![ExactSum::new(); vs.len()]; ls.len()];
    let mut ebar: BTreeMap<(usize, Vec<Sym>), Vec<usize>> = BTreeMap::new();
    let mut outsides: BTreeSet<Vec<Sym>> = BTreeSet::new();
    let mut z_n = ExactSum::new();
    for (xi, x) in e.words.iter().enumerate() {
        let wx = e.weights[xi];
        z_n.add(wx);
        let mut outside = x[..lo].to_vec();
        outside.extend_from_slice(&x[hi + 1..]);
        let mut seen = BTreeSet::new();
        for (li, &l) in ls.iter().enumerate() {
            let v = v_index[slice(x, n, center(m, j + l))];
            z_l[li][v].add(wx);
            seen.insert(v);
        }
        for v in seen {
            ebar.entry((v, outside.clone())).or_default().push(xi);
        }
        outsides.insert(outside);
    }
    let mut zbar = vec![ExactSum::new(); vs.len()];
    for ((v, _), xs) in &ebar {
        for &xi in xs {
            zbar[*v].add(e.weights[xi]);
        }
    }

    let k = p.alphabet().len() as f64;
    let norm = pot.norms().norm;
    let w = pot.boundary_norm_bound(m);
    let ln_c = 2.0 * (2 * q) as f64 * norm + 2.0 * w;
    let card_bound = (2 * q + 1) as f64 * k.powi(2 * q as i32);
    let ln_k = card_bound.ln() + ln_c;
    let u_energy: Vec<f64> = vs.iter().map(|v| pot.energy_of_letters(v)).collect();
    let ln_zm = log_sum_exp(&u_energy);
    let mut checks = Vec::new();

    let mut nonempty = Worst::new("nonempty");
    let mut card = Worst::new("cardinality");
    for (v, word) in vs.iter().enumerate() {
        for out in &outsides {
            let size = ebar.get(&(v, out.clone())).map_or(0, Vec::len) as f64;
            nonempty.offer_plain(|| format!("{},w={}", tag_v(p, word), p.alphabet().format(out)), 1.0, size);
            card.offer_plain(|| tag_v(p, word), size, card_bound);
        }
    }
    nonempty.finish(&mut checks);
    card.finish(&mut checks);

    let ln_zn = e.log(&z_n);
    let mut eqell = Worst::new("eqell");
    for (li, &l) in ls.iter().enumerate() {
        let total = merged(z_l[li].iter());
        let diff = (e.log(&total) - ln_zn).abs();
        eqell.offer_plain(|| format!("l={l}"), diff, 1e-12 * ln_zn.abs().max(1.0));
    }
    eqell.finish(&mut checks);

    let mut ell1_lo = Worst::new("eqineqell1.lower");
    let mut ell1_hi = Worst::new("eqineqell1.upper");
    for v in 0..vs.len() {
        for (li, &l) in ls.iter().enumerate() {
            offer_sums(&mut ell1_lo, &e, || format!("{},l={l}", tag_v(p, &vs[v])), &z_l[li][v], &zbar[v]);
        }
        let all_l = merged(z_l.iter().map(|row| &row[v]));
        offer_sums(&mut ell1_hi, &e, || tag_v(p, &vs[v]), &zbar[v], &all_l);
    }
    ell1_lo.finish(&mut checks);
    ell1_hi.finish(&mut checks);

    let sum_bar = merged(zbar.iter());
    let mut scaled = ExactSum::new();
    for &wx in &e.weights {
        scaled.add_times(wx, ls.len());
    }
    let mut ell2_lo = Worst::new("eqineqell2.lower");
    offer_sums(&mut ell2_lo, &e, String::new, &z_n, &sum_bar);
    ell2_lo.finish(&mut checks);
    let mut ell2_hi = Worst::new("eqineqell2.upper");
    offer_sums(&mut ell2_hi, &e, String::new, &sum_bar, &scaled);
    ell2_hi.finish(&mut checks);

    let ln_zbar: Vec<f64> = zbar.iter().map(|s| e.log(s)).collect();
    let mut cmp_lo = Worst::new("comparison.lower");
    let mut cmp_hi = Worst::new("comparison.upper");
    for v in 0..vs.len() {
        let base = u_energy[v] - u_energy[u] + ln_zbar[u];
        cmp_lo.offer_plain(|| tag_v(p, &vs[v]), base - ln_k, ln_zbar[v]);
        cmp_hi.offer_plain(|| tag_v(p, &vs[v]), ln_zbar[v], base + ln_k);
    }
    cmp_lo.finish(&mut checks);
    cmp_hi.finish(&mut checks);

    let l0 = ls.iter().position(|&l| l == 0).unwrap();
    let upper_lhs = e.log(&z_l[l0][u]) - ln_zn;
    let upper_rhs = (ls.len() as f64).ln() + ln_k + u_energy[u] - ln_zm;
    let lower_lhs = u_energy[u] - ln_k - ln_zm;
    let lower_rhs = e.log(&merged(z_l.iter().map(|row| &row[u]))) - ln_zn;
    let mut up = Worst::new("ratio.upper");
    up.offer_plain(String::new, upper_lhs, upper_rhs);
    up.finish(&mut checks);
    let mut lowc = Worst::new("ratio.lower");
    lowc.offer_plain(String::new, lower_lhs, lower_rhs);
    lowc.finish(&mut checks);

    Ok(LemmaReport {
        context: LemmaContext {
            n,
            m,
            j,
            q,
            u_bar: Some(u_bar.to_vec()),
            v_range: vs.len(),
        },
        constants: vec![
            ("q".into(), q as f64),
            ("W".into(), w),
            ("norm".into(), norm),
            ("ln_C".into(), ln_c),
            ("ln_K".into(), ln_k),
            ("ln_Z_n".into(), ln_zn),
            ("ln_Z_m".into(), ln_zm),
        ],
        checks,
    })
}

/// `(v, w⁻, w⁺)`: center index and the two far blocks.
type Triple = (usize, Vec<Sym>, Vec<Sym>);

/// The one-sided-shift variant with the bounded-length gap `q̄`: memberships of
/// `Ē(v, w⁻, w⁺)`, their cardinality, `Z ≤ Z̄ ≤ (2q̄+1)² Z`, the energy
/// sandwich with `ln C' = 2(W + ‖Φ‖' + 6q̄‖Φ‖)` and the final ratio bounds.
///
/// `|j| = n − (m + 3q̄)` is accepted; the far blocks `Λ^±` may then be empty.
pub fn decoupling_1d_check(
    p: &SoficPresentation,
    pot: &Potential,
    n: usize,
    m: usize,
    j: i64,
    u_bar: &[Sym],
) -> Result<LemmaReport> {
    let q = p.decoupling_gap(GapVariant::BoundedLength)?.gap;
    if n <= m + 2 * q {
        return Err(Error::WindowsInconsistent(format!("need n > m + 2q = {}", m + 2 * q)));
    }
    if n < m + 3 * q || j.unsigned_abs() as usize > n - m - 3 * q {
        return Err(Error::WindowsInconsistent(format!(
            "need |j| <= n - (m + 3q) with q = {q}"
        )));
    }
    if u_bar.len() != 2 * m + 1 {
        return Err(Error::WindowsInconsistent("ū must have length 2m+1".into()));
    }
    check_word(p, u_bar)?;
    let (ni, mi, qi) = (n as i64, m as i64, q as i64);
    let lam_minus = Interval::new(-ni + qi, -(mi + 2 * qi) + j - 1);
    let lam_plus = Interval::new(mi + 2 * qi + j + 1, ni - qi);

    let e = Ensemble::new(p, pot, n)?;
    let vs: Vec<Vec<Sym>> = enumerate_words(p, m)?.into_iter().map(Word::into_letters).collect();
    let v_index: HashMap<&[Sym], usize> = vs.iter().enumerate().map(|(i, v)| (v.as_slice(), i)).collect();
    let u = v_index[u_bar];
    let read = |x: &[Sym], window: Interval, shift: i64| -> Vec<Sym> {
        if window.is_empty() {
            Vec::new()
        } else {
            slice(x, n, window.shifted(shift)).to_vec()
        }
    };

    let mut ebar: BTreeMap<Triple, Vec<usize>> = BTreeMap::new();
    let mut z_v = vec![ExactSum::new(); vs.len()];
    let mut z_n = ExactSum::new();
    for (xi, x) in e.words.iter().enumerate() {
        let v = v_index[slice(x, n, center(m, j))];
        z_v[v].add(e.weights[xi]);
        z_n.add(e.weights[xi]);
        let minus: BTreeSet<Vec<Sym>> = (-qi..=qi).map(|l| read(x, lam_minus, l)).collect();
        let plus: BTreeSet<Vec<Sym>> = (-qi..=qi).map(|l| read(x, lam_plus, l)).collect();
        for a in &minus {
            for b in &plus {
                ebar.entry((v, a.clone(), b.clone())).or_default().push(xi);
            }
        }
    }

    let k = p.alphabet().len() as f64;
    let norms = pot.norms();
    let w = pot.boundary_norm_bound(m);
    let ln_cp = 2.0 * (w + norms.cross_norm + 6.0 * q as f64 * norms.norm);
    let pairs = ((2 * q + 1) * (2 * q + 1)) as f64;
    let card_bound = pairs * k.powi(6 * q as i32);
    let ln_kbar = card_bound.ln() + ln_cp;
    let u_energy: Vec<f64> = vs.iter().map(|v| pot.energy_of_letters(v)).collect();
    let ln_zm = log_sum_exp(&u_energy);
    let mut checks = Vec::new();

    let x_minus = allowed_blocks(p, lam_minus.len())?;
    let x_plus = allowed_blocks(p, lam_plus.len())?;
    let fmt = |s: &[Sym]| p.alphabet().format(s);
    let mut nonempty = Worst::new("nonempty");
    for (v, word) in vs.iter().enumerate() {
        for a in &x_minus {
            for b in &x_plus {
                let size = ebar.get(&(v, a.clone(), b.clone())).map_or(0, Vec::len) as f64;
                nonempty.offer_plain(|| format!("{},w-={},w+={}", tag_v(p, word), fmt(a), fmt(b)), 1.0, size);
            }
        }
    }
    nonempty.finish(&mut checks);
    let mut card = Worst::new("cardinality");
    for ((v, a, b), xs) in &ebar {
        card.offer_plain(
            || format!("{},w-={},w+={}", tag_v(p, &vs[*v]), fmt(a), fmt(b)),
            xs.len() as f64,
            card_bound,
        );
    }
    card.finish(&mut checks);

    let mut zbar = vec![ExactSum::new(); vs.len()];
    for ((v, _, _), xs) in &ebar {
        for &xi in xs {
            zbar[*v].add(e.weights[xi]);
        }
    }
    let mut trick_lo = Worst::new("trick.lower");
    let mut trick_hi = Worst::new("trick.upper");
    for v in 0..vs.len() {
        let mut scaled = ExactSum::new();
        for (xi, x) in e.words.iter().enumerate() {
            if v_index[slice(x, n, center(m, j))] == v {
                scaled.add_times(e.weights[xi], pairs as usize);
            }
        }
        offer_sums(&mut trick_lo, &e, || tag_v(p, &vs[v]), &z_v[v], &zbar[v]);
        offer_sums(&mut trick_hi, &e, || tag_v(p, &vs[v]), &zbar[v], &scaled);
    }
    trick_lo.finish(&mut checks);
    trick_hi.finish(&mut checks);

    // extremes of U_{Λ_n} over each Ē
    let extremes: BTreeMap<&Triple, (f64, f64)> = ebar
        .iter()
        .map(|(key, xs)| {
            let lo = xs.iter().map(|&i| e.energies[i]).fold(f64::INFINITY, f64::min);
            let hi = xs.iter().map(|&i| e.energies[i]).fold(f64::NEG_INFINITY, f64::max);
            (key, (lo, hi))
        })
        .collect();
    let mut est_lo = Worst::new("est.lower");
    let mut est_hi = Worst::new("est.upper");
    for (key, &(x_lo, x_hi)) in &extremes {
        let (v, a, b) = key;
        let Some(&(y_lo, y_hi)) = extremes.get(&(u, a.clone(), b.clone())) else {
            continue;
        };
        let du = u_energy[*v] - u_energy[u];
        let tag = || format!("{},w-={},w+={}", tag_v(p, &vs[*v]), fmt(a), fmt(b));
        est_lo.offer_plain(tag, du - ln_cp, x_lo - y_hi);
        est_hi.offer_plain(tag, x_hi - y_lo, du + ln_cp);
    }
    est_lo.finish(&mut checks);
    est_hi.finish(&mut checks);

    let ln_zbar: Vec<f64> = zbar.iter().map(|s| e.log(s)).collect();
    let mut cmp_lo = Worst::new("comparison.lower");
    let mut cmp_hi = Worst::new("comparison.upper");
    for v in 0..vs.len() {
        let base = u_energy[v] - u_energy[u] + ln_zbar[u];
        cmp_lo.offer_plain(|| tag_v(p, &vs[v]), base - ln_kbar, ln_zbar[v]);
        cmp_hi.offer_plain(|| tag_v(p, &vs[v]), ln_zbar[v], base + ln_kbar);
    }
    cmp_lo.finish(&mut checks);
    cmp_hi.finish(&mut checks);

    let ln_zn = e.log(&z_n);
    let ratio = e.log(&z_v[u]) - ln_zn;
    let slack = pairs.ln() + ln_kbar;
    let mut up = Worst::new("ratio.upper");
    up.offer_plain(String::new, ratio, slack + u_energy[u] - ln_zm);
    up.finish(&mut checks);
    let mut lowc = Worst::new("ratio.lower");
    lowc.offer_plain(String::new, u_energy[u] - slack - ln_zm, ratio);
    lowc.finish(&mut checks);

    Ok(LemmaReport {
        context: LemmaContext {
            n,
            m,
            j,
            q,
            u_bar: Some(u_bar.to_vec()),
            v_range: vs.len(),
        },
        constants: vec![
            ("q".into(), q as f64),
            ("W".into(), w),
            ("norm".into(), norms.norm),
            ("cross_norm".into(), norms.cross_norm),
            ("ln_C'".into(), ln_cp),
            ("ln_Kbar".into(), ln_kbar),
            ("ln_Z_n".into(), ln_zn),
            ("ln_Z_m".into(), ln_zm),
        ],
        checks,
    })
}
