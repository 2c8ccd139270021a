use super::alphabet::Sym;
use crate::error::{Error, Result};

/// Closed integer interval `[lo, hi]`; empty when `lo > hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: i64,
    pub hi: i64,
}

impl Interval {
    pub fn new(lo: i64, hi: i64) -> Self {
        Self { lo, hi }
    }

    /// `Λ_m = [-m, m]`.
    pub fn centered(m: usize) -> Self {
        Self::new(-(m as i64), m as i64)
    }

    pub fn len(&self) -> usize {
        if self.hi < self.lo {
            0
        } else {
            (self.hi - self.lo + 1) as usize
        }
    }

    pub fn is_empty(&self) -> bool {
        self.hi < self.lo
    }

    pub fn contains(&self, i: i64) -> bool {
        self.lo <= i && i <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        other.is_empty() || (self.lo <= other.lo && other.hi <= self.hi)
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        !self.is_empty() && !other.is_empty() && self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn shifted(&self, by: i64) -> Self {
        Self::new(self.lo + by, self.hi + by)
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

/// Anything that assigns symbols to (some) integer sites.
pub trait Configuration {
    fn symbol_at(&self, i: i64) -> Option<Sym>;
}

/// Finite pattern on a window `[a, b]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    start: i64,
    letters: Vec<Sym>,
}

impl Word {
    pub fn new(start: i64, letters: Vec<Sym>) -> Self {
        Self { start, letters }
    }

    /// Word on `[-m, m]`; the length must be odd.
    pub fn centered(letters: Vec<Sym>) -> Result<Self> {
        if letters.len().is_multiple_of(2) {
            return Err(Error::invalid(format!(
                "centered word needs odd length, got {}",
                letters.len()
            )));
        }
        let m = (letters.len() / 2) as i64;
        Ok(Self::new(-m, letters))
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn window(&self) -> Interval {
        Interval::new(self.start, self.start + self.letters.len() as i64 - 1)
    }

    pub fn letters(&self) -> &[Sym] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Sym> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn get(&self, i: i64) -> Option<Sym> {
        let k = i - self.start;
        if k < 0 {
            return None;
        }
        self.letters.get(k as usize).copied()
    }

    /// Same letters on the window moved by `by`.
    pub fn shifted(&self, by: i64) -> Self {
        Self::new(self.start + by, self.letters.clone())
    }

    pub fn restrict(&self, window: Interval) -> Result<Word> {
        if !self.window().contains_interval(&window) {
            return Err(Error::WindowsInconsistent(format!(
                "[{}, {}] not inside [{}, {}]",
                window.lo,
                window.hi,
                self.window().lo,
                self.window().hi
            )));
        }
        let a = (window.lo - self.start) as usize;
        Ok(Self::new(window.lo, self.letters[a..a + window.len()].to_vec()))
    }
}

impl Configuration for Word {
    fn symbol_at(&self, i: i64) -> Option<Sym> {
        self.get(i)
    }
}

/// Cylinder `B_m(x)`: all points agreeing with the center word on `[-m, m]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cylinder {
    center: Word,
}

impl Cylinder {
    pub fn new(center: Word) -> Result<Self> {
        let w = center.window();
        if w.lo != -w.hi {
            return Err(Error::invalid(format!(
                "cylinder window [{}, {}] is not symmetric about 0",
                w.lo, w.hi
            )));
        }
        Ok(Self { center })
    }

    pub fn from_letters(letters: Vec<Sym>) -> Result<Self> {
        Self::new(Word::centered(letters)?)
    }

    pub fn m(&self) -> usize {
        self.center.window().hi as usize
    }

    pub fn center_word(&self) -> &Word {
        &self.center
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_basics() {
        let l = Interval::centered(3);
        assert_eq!(l.len(), 7);
        assert!(l.contains_interval(&Interval::new(-1, 2)));
        assert!(!l.contains_interval(&Interval::new(-4, 0)));
        assert!(Interval::new(2, 1).is_empty());
    }

    #[test]
    fn word_restrict_and_get() {
        let w = Word::new(-2, vec![0, 1, 1, 0, 1]);
        assert_eq!(w.get(0), Some(1));
        assert_eq!(w.get(3), None);
        let r = w.restrict(Interval::new(-1, 0)).unwrap();
        assert_eq!(r.letters(), &[1, 1]);
        assert!(w.restrict(Interval::new(0, 5)).is_err());
    }

    #[test]
    fn cylinder_requires_symmetry() {
        assert!(Cylinder::new(Word::new(0, vec![1, 0])).is_err());
        let c = Cylinder::from_letters(vec![1, 0, 1]).unwrap();
        assert_eq!(c.m(), 1);
        assert!(Word::centered(vec![0, 1]).is_err());
    }
}
