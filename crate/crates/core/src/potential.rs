//! Finite-range translation-covariant potentials.
//!
//! A potential is a list of canonical shapes `S` (offsets with `min S = 0`),
//! each carrying a table `Φ_S` indexed by the symbols seen at the offsets.
//! `Φ_{S+a}(x) = Φ_S(T^a x)`, so one table serves every translate.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;
use crate::shift::{Configuration, Interval, Point, Sym, Word};

const DENSE_LIMIT: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq)]
enum Table {
    Dense(Vec<f64>),
    Sparse(BTreeMap<u64, f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Shape {
    offsets: Vec<usize>,
    table: Table,
}

impl Shape {
    fn new(offsets: Vec<usize>, alphabet_size: usize) -> Self {
        let size = (alphabet_size as u64).checked_pow(offsets.len() as u32);
        let table = match size {
            Some(s) if s <= DENSE_LIMIT => Table::Dense(vec![0.0; s as usize]),
            _ => Table::Sparse(BTreeMap::new()),
        };
        Self { offsets, table }
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    /// `max S`.
    pub fn diameter(&self) -> usize {
        *self.offsets.last().expect("shapes are nonempty")
    }

    pub fn value(&self, pattern: &[Sym], alphabet_size: usize) -> f64 {
        let key = pattern_key(pattern, alphabet_size);
        match &self.table {
            Table::Dense(v) => v[key as usize],
            Table::Sparse(m) => m.get(&key).copied().unwrap_or(0.0),
        }
    }

    fn set(&mut self, pattern: &[Sym], alphabet_size: usize, value: f64) {
        let key = pattern_key(pattern, alphabet_size);
        match &mut self.table {
            Table::Dense(v) => v[key as usize] = value,
            Table::Sparse(m) => {
                if value == 0.0 {
                    m.remove(&key);
                } else {
                    m.insert(key, value);
                }
            }
        }
    }

    /// `‖Φ_S‖_∞` over all patterns (allowed or not).
    pub fn sup_norm(&self) -> f64 {
        let it: Box<dyn Iterator<Item = &f64>> = match &self.table {
            Table::Dense(v) => Box::new(v.iter()),
            Table::Sparse(m) => Box::new(m.values()),
        };
        it.fold(0.0, |acc, v| acc.max(v.abs()))
    }

    /// Nonzero entries as (pattern, value), in pattern order.
    pub fn entries(&self, alphabet_size: usize) -> Vec<(Vec<Sym>, f64)> {
        let decode = |key: u64| {
            let mut p = vec![0; self.len()];
            let mut k = key;
            for slot in p.iter_mut().rev() {
                *slot = (k % alphabet_size as u64) as Sym;
                k /= alphabet_size as u64;
            }
            p
        };
        match &self.table {
            Table::Dense(v) => v
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0.0)
                .map(|(k, &x)| (decode(k as u64), x))
                .collect(),
            Table::Sparse(m) => m.iter().map(|(&k, &x)| (decode(k), x)).collect(),
        }
    }
}

fn pattern_key(pattern: &[Sym], alphabet_size: usize) -> u64 {
    pattern
        .iter()
        .fold(0u64, |acc, &s| acc * alphabet_size as u64 + s as u64)
}

/// Norms of a potential.
#[derive(Debug, Clone, PartialEq)]
pub struct NormReport {
    /// `Σ_S |S|·‖Φ_S‖_∞`.
    pub norm: f64,
    /// Sum of `‖Φ_A‖_∞` over translates avoiding `[-1, 1]` with points on both sides of it.
    pub cross_norm: f64,
    pub per_shape: Vec<(Vec<usize>, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Potential {
    alphabet_size: usize,
    range: usize,
    shapes: Vec<Shape>,
}

impl Potential {
    pub fn new(alphabet_size: usize, range: usize) -> Self {
        Self {
            alphabet_size,
            range,
            shapes: Vec::new(),
        }
    }

    pub fn zero(alphabet_size: usize) -> Self {
        Self::new(alphabet_size, 0)
    }

    /// Registers a canonical shape (sorted, distinct, starting at 0) and returns its index.
    /// An already present shape is returned as is.
    pub fn add_shape(&mut self, offsets: &[usize]) -> Result<usize> {
        if offsets.is_empty() || offsets[0] != 0 || offsets.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid(format!(
                "shape {offsets:?} must be strictly increasing and start at 0"
            )));
        }
        let d = *offsets.last().unwrap();
        if d > self.range {
            return Err(Error::invalid(format!(
                "shape {offsets:?} exceeds the declared range {}",
                self.range
            )));
        }
        if let Some(i) = self.shapes.iter().position(|s| s.offsets == offsets) {
            return Ok(i);
        }
        self.shapes.push(Shape::new(offsets.to_vec(), self.alphabet_size));
        Ok(self.shapes.len() - 1)
    }

    pub fn set_value(&mut self, shape: usize, pattern: &[Sym], value: f64) -> Result<()> {
        let k = self.alphabet_size;
        let s = self
            .shapes
            .get_mut(shape)
            .ok_or_else(|| Error::invalid("no such shape"))?;
        if pattern.len() != s.len() || pattern.iter().any(|&p| p as usize >= k) {
            return Err(Error::invalid("pattern does not fit the shape"));
        }
        if !value.is_finite() {
            return Err(Error::invalid("potential values must be finite"));
        }
        s.set(pattern, k, value);
        Ok(())
    }

    /// Adds a shape whose table is filled from `f` on every pattern.
    pub fn with_shape(mut self, offsets: &[usize], f: impl Fn(&[Sym]) -> f64) -> Result<Self> {
        let idx = self.add_shape(offsets)?;
        let k = self.alphabet_size;
        let len = offsets.len();
        let mut pattern = vec![0 as Sym; len];
        let total = (k as u64)
            .checked_pow(len as u32)
            .filter(|&t| t <= DENSE_LIMIT)
            .ok_or_else(|| Error::invalid("shape too large to tabulate exhaustively"))?;
        for _ in 0..total {
            let v = f(&pattern);
            self.set_value(idx, &pattern, v)?;
            for slot in pattern.iter_mut().rev() {
                *slot += 1;
                if (*slot as usize) < k {
                    break;
                }
                *slot = 0;
            }
        }
        Ok(self)
    }

    /// Single-site potential `c` on every symbol.
    pub fn constant(alphabet_size: usize, c: f64) -> Self {
        Self::zero(alphabet_size)
            .with_shape(&[0], |_| c)
            .expect("single-site shape")
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn range(&self) -> usize {
        self.range
    }

    pub fn shapes(&self) -> &[Shape] {
        &self.shapes
    }

    pub fn is_zero(&self) -> bool {
        self.shapes.iter().all(|s| s.sup_norm() == 0.0)
    }

    /// `Φ_{S+a}` read from a configuration, if defined there.
    fn eval<C: Configuration + ?Sized>(&self, shape: &Shape, cfg: &C, a: i64) -> Option<f64> {
        let mut key = 0u64;
        for &o in &shape.offsets {
            let s = cfg.symbol_at(a + o as i64)?;
            key = key * self.alphabet_size as u64 + s as u64;
        }
        Some(match &shape.table {
            Table::Dense(v) => v[key as usize],
            Table::Sparse(m) => m.get(&key).copied().unwrap_or(0.0),
        })
    }

    /// `U_Λ(w)` with `Λ` the window of `w`.
    pub fn energy(&self, w: &Word) -> f64 {
        self.energy_of_letters(w.letters())
    }

    /// Energy of a bare letter sequence (translation covariance makes the start irrelevant).
    pub fn energy_of_letters(&self, letters: &[Sym]) -> f64 {
        let mut sum = CompensatedSum::default();
        let n = letters.len();
        for shape in &self.shapes {
            let d = shape.diameter();
            if d >= n {
                continue;
            }
            for a in 0..n - d {
                let key = shape
                    .offsets
                    .iter()
                    .fold(0u64, |acc, &o| acc * self.alphabet_size as u64 + letters[a + o] as u64);
                sum.add(match &shape.table {
                    Table::Dense(v) => v[key as usize],
                    Table::Sparse(m) => m.get(&key).copied().unwrap_or(0.0),
                });
            }
        }
        sum.value()
    }

    /// `U_Λ` of a configuration on an interval.
    pub fn energy_in<C: Configuration + ?Sized>(&self, cfg: &C, window: Interval) -> Result<f64> {
        let mut sum = CompensatedSum::default();
        for shape in &self.shapes {
            let d = shape.diameter() as i64;
            let mut a = window.lo;
            while a + d <= window.hi {
                sum.add(self.eval(shape, cfg, a).ok_or_else(|| undefined(a))?);
                a += 1;
            }
        }
        Ok(sum.value())
    }

    /// Sum over the last position of `window` of all shapes ending there and
    /// lying inside `window`: the per-step increment of the transfer recursion.
    pub fn increment(&self, window: &[Sym]) -> f64 {
        let n = window.len();
        let mut total = 0.0;
        for shape in &self.shapes {
            let d = shape.diameter();
            if d >= n {
                continue;
            }
            let a = n - 1 - d;
            let key = shape
                .offsets
                .iter()
                .fold(0u64, |acc, &o| acc * self.alphabet_size as u64 + window[a + o] as u64);
            total += match &shape.table {
                Table::Dense(v) => v[key as usize],
                Table::Sparse(m) => m.get(&key).copied().unwrap_or(0.0),
            };
        }
        total
    }

    /// `W_{Λ,M}`: sum of `Φ_A` over `A ⊂ Λ ∪ M` meeting both parts.
    pub fn interaction<C: Configuration + ?Sized>(
        &self,
        lambda: Interval,
        m: &[Interval],
        cfg: &C,
    ) -> Result<f64> {
        if m.iter().any(|i| i.intersects(&lambda)) {
            return Err(Error::NotDisjoint);
        }
        let in_m = |i: i64| m.iter().any(|iv| iv.contains(i));
        let lo = m.iter().map(|i| i.lo).fold(lambda.lo, i64::min);
        let hi = m.iter().map(|i| i.hi).fold(lambda.hi, i64::max);
        let mut sum = CompensatedSum::default();
        for shape in &self.shapes {
            for a in lo..=hi {
                let mut meets_l = false;
                let mut meets_m = false;
                let mut inside = true;
                for &o in &shape.offsets {
                    let p = a + o as i64;
                    if lambda.contains(p) {
                        meets_l = true;
                    } else if in_m(p) {
                        meets_m = true;
                    } else {
                        inside = false;
                        break;
                    }
                }
                if inside && meets_l && meets_m {
                    sum.add(self.eval(shape, cfg, a).ok_or_else(|| undefined(a))?);
                }
            }
        }
        Ok(sum.value())
    }

    pub fn norms(&self) -> NormReport {
        let mut norm = 0.0;
        let mut cross = 0.0;
        let mut per_shape = Vec::with_capacity(self.shapes.len());
        for shape in &self.shapes {
            let sup = shape.sup_norm();
            norm += shape.len() as f64 * sup;
            cross += crossing_translates(&shape.offsets) as f64 * sup;
            per_shape.push((shape.offsets.clone(), sup));
        }
        NormReport {
            norm,
            cross_norm: cross,
            per_shape,
        }
    }

    /// `φ_Φ(T^k x) = Σ_{A ∋ k} Φ_A(x)/|A|`.
    pub fn phi_function(&self, x: &Point, k: i64) -> f64 {
        let mut sum = CompensatedSum::default();
        for shape in &self.shapes {
            let w = 1.0 / shape.len() as f64;
            for &s in &shape.offsets {
                let v = self.eval(shape, x, k - s as i64).expect("points are total");
                sum.add(v * w);
            }
        }
        sum.value()
    }

    /// `Σ_{A∋0} |∂_A Λ_m|·‖Φ_A‖_∞`, an upper bound on `‖W_{Λ_m, Λ_m^c}‖_∞`.
    ///
    /// Each of the `|S|` translates of `S` through 0 overhangs `Λ_m` at
    /// `min(diam S, 2m+1)` positions.
    pub fn boundary_norm_bound(&self, m: usize) -> f64 {
        self.shapes
            .iter()
            .map(|s| s.sup_norm() * s.len() as f64 * s.diameter().min(2 * m + 1) as f64)
            .sum()
    }

    /// `self + t·other`.
    pub fn add_scaled(&self, other: &Potential, t: f64) -> Result<Potential> {
        if other.alphabet_size != self.alphabet_size {
            return Err(Error::invalid("potentials over different alphabets"));
        }
        let mut out = self.clone();
        out.range = self.range.max(other.range);
        for shape in &other.shapes {
            let idx = out.add_shape(&shape.offsets)?;
            for (pattern, v) in shape.entries(self.alphabet_size) {
                let old = out.shapes[idx].value(&pattern, self.alphabet_size);
                out.set_value(idx, &pattern, old + t * v)?;
            }
        }
        Ok(out)
    }
}

fn undefined(a: i64) -> Error {
    Error::invalid(format!("configuration undefined near coordinate {a}"))
}

/// Translates `S+t` with `(S+t) ∩ [-1,1] = ∅` that meet both `(-∞,-2]` and `[2,∞)`.
fn crossing_translates(offsets: &[usize]) -> usize {
    let d = *offsets.last().expect("nonempty") as i64;
    (-d - 2..=2)
        .filter(|&t| {
            let pts = offsets.iter().map(|&o| o as i64 + t);
            let mut left = false;
            let mut right = false;
            for p in pts {
                if (-1..=1).contains(&p) {
                    return false;
                }
                left |= p <= -2;
                right |= p >= 2;
            }
            left && right
        })
        .count()
}

/// `Ψ` with the single shape `[0, 2m]` and value 1 exactly on `ū`.
pub fn indicator_potential(alphabet_size: usize, u_bar: &[Sym]) -> Result<Potential> {
    if u_bar.is_empty() {
        return Err(Error::invalid("indicator of an empty word"));
    }
    let len = u_bar.len();
    let mut p = Potential::new(alphabet_size, len - 1);
    let offsets: Vec<usize> = (0..len).collect();
    let idx = p.add_shape(&offsets)?;
    p.set_value(idx, u_bar, 1.0)?;
    Ok(p)
}
