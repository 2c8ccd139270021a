use std::sync::atomic::{AtomicU64, Ordering};

use super::alphabet::Sym;
use super::presentation::SoficPresentation;
use super::word::Word;
use crate::error::{Error, Result};

pub const DEFAULT_ENUMERATION_CAP: u64 = 2_000_000;

static ENUMERATION_CAP: AtomicU64 = AtomicU64::new(DEFAULT_ENUMERATION_CAP);

/// Current cap on `|A|^len` for brute-force enumeration.
pub fn enumeration_cap() -> u64 {
    ENUMERATION_CAP.load(Ordering::Relaxed)
}

/// Overrides the process-wide enumeration cap.
pub fn set_enumeration_cap(cap: u64) {
    ENUMERATION_CAP.store(cap, Ordering::Relaxed);
}

/// Refuses volumes whose naive size `|A|^len` exceeds the cap.
pub fn check_volume(alphabet_size: usize, len: usize) -> Result<()> {
    let cap = enumeration_cap();
    let size = (alphabet_size as f64).powi(len as i32);
    if size > cap as f64 {
        return Err(Error::VolumeTooLarge { size, cap });
    }
    Ok(())
}

/// All allowed words on `[-n, n]`, each once, in lexicographic order.
pub fn enumerate_words(presentation: &SoficPresentation, n: usize) -> Result<Vec<Word>> {
    let len = 2 * n + 1;
    let mut out = Vec::new();
    for_each_word(presentation, len, |letters| {
        out.push(Word::new(-(n as i64), letters.to_vec()))
    })?;
    Ok(out)
}

/// Allowed words of length `len` as bare letter vectors, in lexicographic order.
pub fn allowed_blocks(presentation: &SoficPresentation, len: usize) -> Result<Vec<Vec<Sym>>> {
    let mut out = Vec::new();
    for_each_word(presentation, len, |letters| out.push(letters.to_vec()))?;
    Ok(out)
}

/// Depth-first walk over the allowed words of length `len` in lexicographic
/// order. Words are label sequences of paths; the walk tracks the set of
/// vertices in which a prefix can end, so every word is visited exactly once.
pub fn for_each_word<F: FnMut(&[Sym])>(
    presentation: &SoficPresentation,
    len: usize,
    mut visit: F,
) -> Result<()> {
    let k = presentation.alphabet().len();
    check_volume(k, len)?;
    if len == 0 {
        visit(&[]);
        return Ok(());
    }
    let all: Vec<usize> = (0..presentation.num_vertices()).collect();
    let mut sets: Vec<Vec<usize>> = vec![all];
    let mut word: Vec<Sym> = Vec::with_capacity(len);
    // next symbol to try at each depth
    let mut next: Vec<usize> = vec![0];
    while let Some(&sym) = next.last() {
        let depth = next.len() - 1;
        if sym >= k {
            next.pop();
            sets.pop();
            word.pop();
            continue;
        }
        *next.last_mut().expect("nonempty") += 1;
        let succ = presentation.successors(&sets[depth], sym as Sym);
        if succ.is_empty() {
            continue;
        }
        word.push(sym as Sym);
        if depth + 1 == len {
            visit(&word);
            word.pop();
        } else {
            sets.push(succ);
            next.push(0);
        }
    }
    Ok(())
}

/// Whether the letters label some path in the presentation.
pub fn is_allowed(presentation: &SoficPresentation, letters: &[Sym]) -> bool {
    let mut set: Vec<usize> = (0..presentation.num_vertices()).collect();
    for &s in letters {
        set = presentation.successors(&set, s);
        if set.is_empty() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;

    fn fmt(p: &SoficPresentation, ws: &[Word]) -> Vec<String> {
        ws.iter().map(|w| p.alphabet().format(w.letters())).collect()
    }

    #[test]
    fn full_shift_three_words() {
        let p = bundled::full_shift();
        let ws = enumerate_words(&p, 1).unwrap();
        assert_eq!(
            fmt(&p, &ws),
            ["000", "001", "010", "011", "100", "101", "110", "111"]
        );
        assert!(ws.iter().all(|w| w.start() == -1));
    }

    #[test]
    fn golden_mean_filter_oracle() {
        let p = bundled::golden_mean();
        let oracle: Vec<String> = (0..8u32)
            .map(|i| format!("{:03b}", i))
            .filter(|s| !s.contains("11"))
            .collect();
        assert_eq!(fmt(&p, &enumerate_words(&p, 1).unwrap()), oracle);
        assert_eq!(oracle, ["000", "001", "010", "100", "101"]);
    }

    #[test]
    fn even_shift_single_letters() {
        let p = bundled::even_shift();
        assert_eq!(fmt(&p, &enumerate_words(&p, 0).unwrap()), ["0", "1"]);
    }

    #[test]
    fn even_shift_counts_no_duplicates() {
        // 1 appears in even runs between zeros: 010 is forbidden, 0110 allowed.
        let p = bundled::even_shift();
        let ws = fmt(&p, &enumerate_words(&p, 2).unwrap());
        assert!(!ws.iter().any(|w| w.contains("010")));
        assert!(ws.contains(&"01100".to_string()));
        let mut d = ws.clone();
        d.dedup();
        assert_eq!(d.len(), ws.len());
    }

    #[test]
    fn volume_guard() {
        let p = bundled::full_shift();
        assert!(matches!(
            enumerate_words(&p, 40),
            Err(Error::VolumeTooLarge { .. })
        ));
    }

    #[test]
    fn factoriality_and_extendability() {
        for p in [bundled::golden_mean(), bundled::even_shift(), bundled::full_shift()] {
            for n in 0..4 {
                let small: std::collections::BTreeSet<Vec<Sym>> = enumerate_words(&p, n)
                    .unwrap()
                    .into_iter()
                    .map(Word::into_letters)
                    .collect();
                let big = enumerate_words(&p, n + 1).unwrap();
                let centers: std::collections::BTreeSet<Vec<Sym>> = big
                    .iter()
                    .map(|w| w.letters()[1..w.len() - 1].to_vec())
                    .collect();
                assert_eq!(small, centers);
            }
        }
    }
}
