use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use shiftkit::bundled;
use shiftkit::numeric::log_sum_exp;
use shiftkit::pressure::word_log_partition;
use shiftkit::shift::{
    apply_block_code, check_splice, enumerate_words, factor_gap_bound, factor_presentation, splice,
    Alphabet, BlockCode, GapVariant, Interval, Point, SoficPresentation, Sym, Word,
};
use shiftkit::verify::{constrained_partition, weak_gibbs_scan};
use shiftkit::{brute_partition, energy_density_gap, equilibrium_measure, finite_pressure, Potential};

fn pair_potential(a: f64, b: f64, c: f64) -> Potential {
    ranged_pair(1, a, b, c)
}

fn ranged_pair(range: usize, a: f64, b: f64, c: f64) -> Potential {
    let mut p = Potential::new(2, range);
    let s = p.add_shape(&[0]).unwrap();
    p.set_value(s, &[1], a).unwrap();
    let s = p.add_shape(&[0, 1]).unwrap();
    p.set_value(s, &[0, 0], b).unwrap();
    p.set_value(s, &[1, 1], c).unwrap();
    p
}

fn all_presentations() -> Vec<(&'static str, SoficPresentation)> {
    let mut v = bundled::irreducible_shifts();
    v.push(("periodic", bundled::periodic()));
    v
}

fn letters(words: Vec<Word>) -> BTreeSet<Vec<Sym>> {
    words.into_iter().map(Word::into_letters).collect()
}

#[test]
fn language_is_factorial_and_extendable() {
    for (_, p) in all_presentations() {
        for n in 0..5 {
            let short = letters(enumerate_words(&p, n).unwrap());
            let long = letters(enumerate_words(&p, n + 1).unwrap());
            let centers: BTreeSet<Vec<Sym>> = long.iter().map(|w| w[1..w.len() - 1].to_vec()).collect();
            assert_eq!(centers, short);
        }
    }
}

/// Pairs joined by a positive-length path of length at most `r`.
fn reach_within(p: &SoficPresentation, r: usize) -> BTreeSet<(usize, usize)> {
    let n = p.num_vertices();
    let mut out = BTreeSet::new();
    let mut frontier: Vec<BTreeSet<usize>> = (0..n).map(|v| [v].into_iter().collect()).collect();
    for _ in 0..r {
        for (v, f) in frontier.iter_mut().enumerate() {
            let next: BTreeSet<usize> = f.iter().flat_map(|&u| p.out_edges(u).iter().map(|&k| p.edge(k).dst)).collect();
            for &w in &next {
                out.insert((v, w));
            }
            *f = next;
        }
    }
    out
}

#[test]
fn bounded_gap_is_minimal() {
    for (name, p) in all_presentations() {
        let r = p.decoupling_gap(GapVariant::BoundedLength).unwrap().gap;
        let n = p.num_vertices();
        assert_eq!(reach_within(&p, r).len(), n * n, "{name}");
        assert!(reach_within(&p, r - 1).len() < n * n, "{name}");
    }
}

fn splice_cases(p: &SoficPresentation, seed: u64, cases: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..cases {
        let xm = Point::random(p, &mut rng).unwrap();
        let y = Point::random(p, &mut rng).unwrap();
        let xp = Point::random(p, &mut rng).unwrap();
        let m = case % 7;
        let s = splice(p, &xm, &y, &xp, m).unwrap();
        assert!(s.z.is_presented_by(p));
        assert!(check_splice(&xm, &y, &xp, m, &s, 30).all(), "case {case}");
    }
}

#[test]
fn splice_realizes_decoupling() {
    for (i, (_, p)) in all_presentations().into_iter().enumerate() {
        splice_cases(&p, 100 + i as u64, 1000);
    }
}

fn random_code(source: &SoficPresentation, bits: u32) -> BlockCode {
    BlockCode::from_fn(source, Alphabet::digits(2), 1, |w| {
        let idx = w.iter().fold(0usize, |a, &s| 2 * a + s as usize);
        ((bits >> idx) & 1) as Sym
    })
    .unwrap()
}

fn check_factor(source: &SoficPresentation, code: &BlockCode) {
    let image = factor_presentation(source, code).unwrap();
    let k = code.radius();
    for n in 0..=5 {
        let direct: BTreeSet<Vec<Sym>> = enumerate_words(source, n + k)
            .unwrap()
            .iter()
            .map(|w| apply_block_code(code, w).unwrap().into_letters())
            .collect();
        // image symbols are relabelled to the used part of the target alphabet
        let names = |w: &[Sym], a: &Alphabet| w.iter().map(|&s| a.name(s).to_string()).collect::<Vec<_>>();
        let direct: BTreeSet<Vec<String>> = direct.iter().map(|w| names(w, code.target())).collect();
        let presented: BTreeSet<Vec<String>> = enumerate_words(&image, n)
            .unwrap()
            .iter()
            .map(|w| names(w.letters(), image.alphabet()))
            .collect();
        assert_eq!(direct, presented, "n = {n}");
    }
    if image.is_irreducible() {
        let src = source.decoupling_gap(GapVariant::BoundedLength).unwrap();
        let q = image.decoupling_gap(GapVariant::BoundedLength).unwrap().gap;
        assert!(q <= factor_gap_bound(&src, k));
    }
}

#[test]
fn bundled_factor_matches_images() {
    let g = bundled::golden_mean();
    check_factor(&g, &bundled::ten_detector(&g));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_factor_matches_images(bits in any::<u8>(), which in 0usize..3) {
        let (_, src) = bundled::irreducible_shifts().swap_remove(which);
        check_factor(&src, &random_code(&src, bits as u32));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn energy_is_translation_covariant(
        word in proptest::collection::vec(0u8..2, 1..20),
        start in -30i64..30,
        by in -30i64..30,
        a in -2.0f64..2.0, b in -2.0f64..2.0, c in -2.0f64..2.0,
    ) {
        let pot = ranged_pair(2, a, b, c).with_shape(&[0, 2], |w| if w[0] == w[1] { a * b } else { c }).unwrap();
        let w = Word::new(start, word);
        prop_assert_eq!(pot.energy(&w), pot.energy(&w.shifted(by)));
    }

    #[test]
    fn energy_is_additive(
        word in proptest::collection::vec(0u8..2, 2..24),
        cut in 1usize..23,
        a in -2.0f64..2.0, b in -2.0f64..2.0, c in -2.0f64..2.0,
    ) {
        prop_assume!(cut < word.len());
        let pot = ranged_pair(3, a, b, c).with_shape(&[0, 3], |w| (w[0] as f64) * c - (w[1] as f64) * a).unwrap();
        let w = Word::new(-5, word);
        let hi = w.window().hi;
        let left = Interval::new(-5, -5 + cut as i64 - 1);
        let right = Interval::new(-5 + cut as i64, hi);
        let whole = pot.energy_in(&w, w.window()).unwrap();
        let parts = pot.energy_in(&w, left).unwrap()
            + pot.energy_in(&w, right).unwrap()
            + pot.interaction(left, &[right], &w).unwrap();
        prop_assert!((whole - parts).abs() <= 1e-12);
    }

    #[test]
    fn pressure_matches_brute_force(
        which in 0usize..3,
        n in 0usize..6,
        a in -1.5f64..1.5, b in -1.5f64..1.5, c in -1.5f64..1.5,
    ) {
        let (_, p) = bundled::irreducible_shifts().swap_remove(which);
        let pot = pair_potential(a, b, c);
        let fast = finite_pressure(&p, &pot, n).unwrap();
        let brute = brute_partition(&p, &pot, n).unwrap().log_z / (2 * n + 1) as f64;
        prop_assert!((fast - brute).abs() <= 1e-10 * brute.abs().max(1.0));
        let direct = word_log_partition(&p, &pot, 2 * n + 1).unwrap();
        prop_assert!((direct / (2 * n + 1) as f64 - brute).abs() <= 1e-10 * brute.abs().max(1.0));
    }

    #[test]
    fn constant_shifts_pressure(which in 0usize..3, shift in -3.0f64..3.0, n in 0usize..12) {
        let (_, p) = bundled::irreducible_shifts().swap_remove(which);
        let pot = bundled::pair_potential();
        let moved = pot.add_scaled(&Potential::constant(2, shift), 1.0).unwrap();
        let d = finite_pressure(&p, &moved, n).unwrap() - finite_pressure(&p, &pot, n).unwrap();
        prop_assert!((d - shift).abs() <= 1e-12);
        let mu = equilibrium_measure(&p, &pot).unwrap();
        let mv = equilibrium_measure(&p, &moved).unwrap();
        prop_assert!((mv.log_lambda() - mu.log_lambda() - shift).abs() <= 1e-12);
    }

    #[test]
    fn partition_identity(which in 0usize..3, j in -1i64..=1, l in -1i64..=1) {
        let (_, p) = bundled::irreducible_shifts().swap_remove(which);
        let pot = bundled::pair_potential();
        let n = 4;
        let parts: Vec<f64> = enumerate_words(&p, 1)
            .unwrap()
            .iter()
            .map(|v| constrained_partition(&p, &pot, n, j, l, v.letters()).unwrap())
            .collect();
        let z = brute_partition(&p, &pot, n).unwrap().log_z;
        prop_assert!((log_sum_exp(&parts) - z).abs() <= 1e-10 * z.abs());
    }
}

#[test]
fn boundary_ratio_decreases() {
    for (_, pot) in bundled::potentials() {
        if pot.is_zero() {
            continue;
        }
        let ratio = |m: usize| pot.boundary_norm_bound(m) / (2 * m + 1) as f64;
        if ratio(10) > 0.0 {
            assert!(ratio(100) < ratio(10));
        }
    }
    let pair = bundled::pair_potential();
    assert!(pair.boundary_norm_bound(100) / 201.0 < pair.boundary_norm_bound(10) / 21.0);
}

#[test]
fn energy_density_gap_within_boundary_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (_, p) in bundled::irreducible_shifts() {
        for _ in 0..20 {
            let z = Point::random(&p, &mut rng).unwrap();
            for (_, pot) in bundled::potentials() {
                for m in 0..=12 {
                    let bound = pot.boundary_norm_bound(m) / (2 * m + 1) as f64;
                    assert!(energy_density_gap(&pot, &z, m) <= bound + 1e-12);
                }
            }
        }
    }
}

#[test]
fn perron_residuals() {
    for (_, p) in bundled::irreducible_shifts() {
        for (_, pot) in bundled::potentials() {
            let mu = equilibrium_measure(&p, &pot).unwrap();
            assert!(mu.perron().residual <= 1e-11);
            let t = mu.transfer();
            let pf = mu.perron();
            let nmax = pf.nu.iter().fold(0.0f64, |a, &b| a.max(b));
            for v in 0..t.len() {
                let left: f64 = (0..t.len()).map(|u| pf.nu[u] * t.weights()[u][v]).sum();
                assert!((left - pf.lambda * pf.nu[v]).abs() / nmax <= 1e-11);
            }
        }
    }
}

#[test]
fn cylinder_kolmogorov_and_normalization() {
    for (_, p) in bundled::irreducible_shifts() {
        for (_, pot) in bundled::potentials() {
            let mu = equilibrium_measure(&p, &pot).unwrap();
            for m in 0..=6 {
                let words = enumerate_words(&p, m).unwrap();
                let total: f64 = words.iter().map(|w| mu.word_prob(w.letters())).sum();
                assert!((total - 1.0).abs() <= 1e-10);
                if m > 3 {
                    continue;
                }
                for w in &words {
                    let base = mu.word_prob(w.letters());
                    let (mut right, mut left) = (0.0, 0.0);
                    for a in 0..2 {
                        let mut r = w.letters().to_vec();
                        r.push(a);
                        right += mu.word_prob(&r);
                        let mut l = vec![a];
                        l.extend_from_slice(w.letters());
                        left += mu.word_prob(&l);
                    }
                    assert!((right - base).abs() <= 1e-12);
                    assert!((left - base).abs() <= 1e-12);
                    let c = shiftkit::shift::Cylinder::new(w.shifted(7)).ok();
                    if let Some(c) = c {
                        assert!((mu.cylinder_prob(&c) - base).abs() <= 1e-12);
                    }
                }
            }
        }
    }
}

/// Word marginals by summing the chain over every state path.
fn path_marginals(mu: &shiftkit::RPFMeasure, len: usize) -> BTreeMap<Vec<Sym>, f64> {
    fn walk(
        mu: &shiftkit::RPFMeasure,
        state: usize,
        prob: f64,
        word: &mut Vec<Sym>,
        len: usize,
        out: &mut BTreeMap<Vec<Sym>, f64>,
    ) {
        if word.len() == len {
            *out.entry(word.clone()).or_default() += prob;
            return;
        }
        for &v in mu.transfer().successors(state) {
            word.push(mu.transfer().label(v));
            walk(mu, v, prob * mu.transition()[state][v], word, len, out);
            word.pop();
        }
    }
    let mut out = BTreeMap::new();
    for s in 0..mu.num_states() {
        let mut word = vec![mu.transfer().label(s)];
        walk(mu, s, mu.stationary()[s], &mut word, len, &mut out);
    }
    out
}

#[test]
fn cylinders_match_state_path_oracle() {
    for p in [bundled::golden_mean(), bundled::even_shift()] {
        let pot = bundled::pair_potential();
        let mu = equilibrium_measure(&p, &pot).unwrap();
        for m in 0..=4 {
            let oracle = path_marginals(&mu, 2 * m + 1);
            for w in enumerate_words(&p, m).unwrap() {
                let want = oracle.get(w.letters()).copied().unwrap_or(0.0);
                assert!((mu.word_prob(w.letters()) - want).abs() <= 1e-10);
            }
        }
    }
}

#[test]
fn strong_gibbs_constant_does_not_grow() {
    // the volume guard counts |A|^(2m+1), not allowed words
    shiftkit::shift::set_enumeration_cap(1 << 22);
    for p in [bundled::golden_mean(), bundled::even_shift()] {
        for (_, pot) in bundled::potentials() {
            let mu = equilibrium_measure(&p, &pot).unwrap();
            let r = weak_gibbs_scan(&mu, &pot, mu.log_lambda(), &[3, 10], &[]).unwrap();
            let g = |i: usize| r.rows[i].d_m * (2 * r.rows[i].m + 1) as f64;
            assert!(g(1) <= g(0) + 1e-9, "{} vs {}", g(1), g(0));
        }
    }
}

#[test]
fn even_shift_entropy_from_word_counts() {
    let p = bundled::even_shift();
    let gamma = (1.0 + 5f64.sqrt()) / 2.0;
    let count = |len: usize| word_log_partition(&p, &Potential::zero(2), len).unwrap();
    let growth = count(25) - count(24);
    assert!((growth - gamma.ln()).abs() < 1e-3);
    let mu = equilibrium_measure(&p, &Potential::zero(2)).unwrap();
    assert!((mu.log_lambda() - gamma.ln()).abs() <= 1e-9);
}
