//! Eventually periodic bi-infinite points with presenting paths, and the
//! splice construction realizing the 1-decoupling condition on a presentation.

use rand::Rng;

use super::alphabet::Sym;
use super::presentation::{GapVariant, SoficPresentation};
use super::word::{Configuration, Interval, Word};
use crate::error::{Error, Result};

/// Bi-infinite eventually periodic point `... L L L core R R R ...`, stored
/// together with a presenting path of the same three-part shape.
///
/// `left` ends at `core_start - 1`; `right` starts right after the core.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point {
    left: Vec<usize>,
    core_start: i64,
    core: Vec<usize>,
    right: Vec<usize>,
    left_syms: Vec<Sym>,
    core_syms: Vec<Sym>,
    right_syms: Vec<Sym>,
}

impl Point {
    /// Builds a point from a presenting path given as edge indices.
    pub fn from_path(
        presentation: &SoficPresentation,
        left: Vec<usize>,
        core_start: i64,
        core: Vec<usize>,
        right: Vec<usize>,
    ) -> Result<Self> {
        let ne = presentation.edges().len();
        if left.is_empty() || right.is_empty() {
            return Err(Error::ForeignPoint("tail cycles must be nonempty".into()));
        }
        if left.iter().chain(&core).chain(&right).any(|&k| k >= ne) {
            return Err(Error::ForeignPoint("edge index outside presentation".into()));
        }
        let e = |k: usize| presentation.edge(k);
        let chained = |seq: &[usize]| seq.windows(2).all(|w| e(w[0]).dst == e(w[1]).src);
        if !chained(&left) || e(*left.last().unwrap()).dst != e(left[0]).src {
            return Err(Error::ForeignPoint("left tail is not a cycle".into()));
        }
        if !chained(&right) || e(*right.last().unwrap()).dst != e(right[0]).src {
            return Err(Error::ForeignPoint("right tail is not a cycle".into()));
        }
        if !chained(&core) {
            return Err(Error::ForeignPoint("core path is broken".into()));
        }
        let into_core = core.first().copied().unwrap_or(right[0]);
        if e(*left.last().unwrap()).dst != e(into_core).src {
            return Err(Error::ForeignPoint("left tail does not meet the core".into()));
        }
        if let Some(&last) = core.last() {
            if e(last).dst != e(right[0]).src {
                return Err(Error::ForeignPoint("core does not meet the right tail".into()));
            }
        }
        let labels = |seq: &[usize]| seq.iter().map(|&k| e(k).label).collect::<Vec<_>>();
        Ok(Self {
            left_syms: labels(&left),
            core_syms: labels(&core),
            right_syms: labels(&right),
            left,
            core_start,
            core,
            right,
        })
    }

    /// Finds a presenting path for `...LLL core RRR...` by a bounded search.
    ///
    /// The stored cycles may be powers of the given ones and the core may be
    /// extended by copies of them; the symbol sequence is unchanged.
    pub fn from_symbols(
        presentation: &SoficPresentation,
        left_cycle: &[Sym],
        core: &Word,
        right_cycle: &[Sym],
    ) -> Result<Self> {
        if left_cycle.is_empty() || right_cycle.is_empty() {
            return Err(Error::invalid("tail cycles must be nonempty"));
        }
        let n = presentation.num_vertices();
        let right_good = greatest_fixed_point(n, |v, set| {
            read_path(presentation, &[v], right_cycle, set).is_some()
        });
        let left_good = greatest_fixed_point(n, |v, set| {
            read_path(presentation, &as_list(set), left_cycle, &indicator(n, &[v])).is_some()
        });
        let start_set = as_list(&left_good);
        let (a, core_path) = read_path(presentation, &start_set, core.letters(), &right_good)
            .ok_or_else(|| Error::ForeignPoint("symbol sequence is not presented".into()))?;
        let b = core_path
            .last()
            .map(|&k| presentation.edge(k).dst)
            .unwrap_or(a);

        // forward chain of right-cycle readings from b
        let mut visited: Vec<usize> = vec![b];
        let mut pieces: Vec<Vec<usize>> = Vec::new();
        let (r_transient, r_cycle) = loop {
            let cur = *visited.last().unwrap();
            let (_, path) = read_path(presentation, &[cur], right_cycle, &right_good)
                .expect("vertex in fixed point has a successor");
            let end = presentation.edge(*path.last().unwrap()).dst;
            pieces.push(path);
            if let Some(s) = visited.iter().position(|&v| v == end) {
                break (pieces[..s].concat(), pieces[s..].concat());
            }
            visited.push(end);
        };

        // backward chain of left-cycle readings ending at a
        let mut visited: Vec<usize> = vec![a];
        let mut pieces: Vec<Vec<usize>> = Vec::new();
        let (l_transient, l_cycle, l_copies) = loop {
            let cur = *visited.last().unwrap();
            let (start, path) =
                read_path(presentation, &start_set, left_cycle, &indicator(n, &[cur]))
                    .expect("vertex in fixed point has a predecessor");
            pieces.push(path);
            if let Some(s) = visited.iter().position(|&v| v == start) {
                let transient: Vec<usize> = pieces[..s].iter().rev().flatten().copied().collect();
                let cycle: Vec<usize> = pieces[s..].iter().rev().flatten().copied().collect();
                break (transient, cycle, s);
            }
            visited.push(start);
        };

        let start = core.start() - (l_copies * left_cycle.len()) as i64;
        let mut full_core = l_transient;
        full_core.extend(core_path);
        full_core.extend(r_transient);
        Self::from_path(presentation, l_cycle, start, full_core, r_cycle)
    }

    /// Random point: short random cycles joined by a random core path.
    pub fn random<R: Rng + ?Sized>(presentation: &SoficPresentation, rng: &mut R) -> Result<Self> {
        if !presentation.is_irreducible() {
            return Err(Error::Reducible);
        }
        let nv = presentation.num_vertices();
        let walk = |rng: &mut R, from: usize, len: usize| -> (Vec<usize>, usize) {
            let mut v = from;
            let mut path = Vec::with_capacity(len);
            for _ in 0..len {
                let outs = presentation.out_edges(v);
                let k = outs[rng.gen_range(0..outs.len())];
                path.push(k);
                v = presentation.edge(k).dst;
            }
            (path, v)
        };
        let cycle_at = |rng: &mut R, v: usize| -> Vec<usize> {
            let len = rng.gen_range(1..=4);
            let (mut path, end) = walk(rng, v, len);
            path.extend(presentation.shortest_path(end, v).expect("irreducible"));
            path
        };
        let v = rng.gen_range(0..nv);
        let left = cycle_at(rng, v);
        let core_len = rng.gen_range(0..=8);
        let (core, u) = walk(rng, v, core_len);
        let right = cycle_at(rng, u);
        let core_start = rng.gen_range(-8..=8);
        Self::from_path(presentation, left, core_start, core, right)
    }

    pub fn core_window(&self) -> Interval {
        Interval::new(self.core_start, self.core_start + self.core.len() as i64 - 1)
    }

    pub fn left_cycle(&self) -> &[Sym] {
        &self.left_syms
    }

    pub fn right_cycle(&self) -> &[Sym] {
        &self.right_syms
    }

    pub fn core_word(&self) -> Word {
        Word::new(self.core_start, self.core_syms.clone())
    }

    /// Edge index of the presenting path at coordinate `i`.
    pub fn edge_at(&self, i: i64) -> usize {
        pick(&self.left, &self.core, &self.right, self.core_start, i)
    }

    pub fn symbol(&self, i: i64) -> Sym {
        pick(&self.left_syms, &self.core_syms, &self.right_syms, self.core_start, i)
    }

    /// `T^{-l} x`, i.e. the point `k -> x(k - l)`.
    pub fn translate(&self, l: i64) -> Self {
        let mut p = self.clone();
        p.core_start += l;
        p
    }

    /// `T^k x`, i.e. the point `i -> x(i + k)`.
    pub fn shift(&self, k: i64) -> Self {
        self.translate(-k)
    }

    pub fn word(&self, window: Interval) -> Word {
        Word::new(window.lo, window.iter().map(|i| self.symbol(i)).collect())
    }

    /// Checks that every edge label agrees with the stored symbols in `presentation`.
    pub fn is_presented_by(&self, presentation: &SoficPresentation) -> bool {
        Self::from_path(
            presentation,
            self.left.clone(),
            self.core_start,
            self.core.clone(),
            self.right.clone(),
        )
        .map(|p| p == *self)
        .unwrap_or(false)
    }
}

impl Configuration for Point {
    fn symbol_at(&self, i: i64) -> Option<Sym> {
        Some(self.symbol(i))
    }
}

fn pick<T: Copy>(left: &[T], core: &[T], right: &[T], start: i64, i: i64) -> T {
    let end = start + core.len() as i64;
    if i < start {
        let p = left.len() as i64;
        left[(p - 1 - (start - 1 - i).rem_euclid(p)) as usize]
    } else if i < end {
        core[(i - start) as usize]
    } else {
        right[(i - end).rem_euclid(right.len() as i64) as usize]
    }
}

fn indicator(n: usize, members: &[usize]) -> Vec<bool> {
    let mut v = vec![false; n];
    for &m in members {
        v[m] = true;
    }
    v
}

fn as_list(set: &[bool]) -> Vec<usize> {
    set.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
}

fn greatest_fixed_point(n: usize, keep: impl Fn(usize, &[bool]) -> bool) -> Vec<bool> {
    let mut set = vec![true; n];
    loop {
        let next: Vec<bool> = (0..n).map(|v| set[v] && keep(v, &set)).collect();
        if next == set {
            return set;
        }
        set = next;
    }
}

/// A path reading `word` from a vertex in `from` to a vertex in `to`.
/// Returns the start vertex and edge list (smallest indices first).
fn read_path(
    presentation: &SoficPresentation,
    from: &[usize],
    word: &[Sym],
    to: &[bool],
) -> Option<(usize, Vec<usize>)> {
    let n = presentation.num_vertices();
    let mut layers: Vec<Vec<bool>> = vec![indicator(n, from)];
    for &s in word {
        let prev = layers.last().unwrap();
        let mut next = vec![false; n];
        for e in presentation.edges() {
            if e.label == s && prev[e.src] {
                next[e.dst] = true;
            }
        }
        layers.push(next);
    }
    let last = layers.last().unwrap();
    let mut cur = (0..n).find(|&v| last[v] && to[v])?;
    let mut path = Vec::with_capacity(word.len());
    for (i, &s) in word.iter().enumerate().rev() {
        let k = presentation
            .in_edges(cur)
            .iter()
            .copied()
            .filter(|&k| {
                let e = presentation.edge(k);
                e.label == s && layers[i][e.src]
            })
            .min()
            .expect("layered reachability");
        path.push(k);
        cur = presentation.edge(k).src;
    }
    path.reverse();
    Some((cur, path))
}

/// Output of [`splice`]: the glued point and the tail translations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Splice {
    pub z: Point,
    pub l_minus: i64,
    pub l_plus: i64,
    pub gap: usize,
}

/// Glues the center of `y` on `[-m, m]` to the left tail of `x_minus` and the
/// right tail of `x_plus` through connecting paths of length at most the
/// bounded-length gap `q`.
///
/// The result satisfies `z = y` on `[-m, m]`, `z = T^{-l_minus} x_minus` on
/// `(-inf, -m-q)` and `z = T^{-l_plus} x_plus` on `(m+q, inf)`, with
/// `|l_minus|, |l_plus| <= q`.
pub fn splice(
    presentation: &SoficPresentation,
    x_minus: &Point,
    y: &Point,
    x_plus: &Point,
    m: usize,
) -> Result<Splice> {
    for (name, p) in [("x-", x_minus), ("y", y), ("x+", x_plus)] {
        if !p.is_presented_by(presentation) {
            return Err(Error::ForeignPoint(format!("{name} is not presented here")));
        }
    }
    let q = presentation.decoupling_gap(GapVariant::BoundedLength)?.gap;
    let m_i = m as i64;
    let q_i = q as i64;
    let e = |k: usize| presentation.edge(k);

    let p_vertex = e(x_minus.edge_at(-m_i - q_i - 1)).dst;
    let q_vertex = e(y.edge_at(-m_i)).src;
    let r_vertex = e(y.edge_at(m_i)).dst;
    let s_vertex = e(x_plus.edge_at(m_i + q_i + 1)).src;
    let left_link = presentation.shortest_path(p_vertex, q_vertex).ok_or(Error::Reducible)?;
    let right_link = presentation.shortest_path(r_vertex, s_vertex).ok_or(Error::Reducible)?;
    let q_minus = left_link.len() as i64;
    let q_plus = right_link.len() as i64;
    debug_assert!(q_minus <= q_i && q_plus <= q_i);
    let l_minus = q_i - q_minus;
    let l_plus = q_plus - q_i;

    let xm = x_minus.translate(l_minus);
    let xp = x_plus.translate(l_plus);
    let lo = xm.core_window().lo.min(-m_i - q_minus);
    let hi = xp.core_window().hi.max(m_i + q_plus);
    let edge_at = |i: i64| -> usize {
        if i < -m_i - q_minus {
            xm.edge_at(i)
        } else if i < -m_i {
            left_link[(i + m_i + q_minus) as usize]
        } else if i <= m_i {
            y.edge_at(i)
        } else if i <= m_i + q_plus {
            right_link[(i - m_i - 1) as usize]
        } else {
            xp.edge_at(i)
        }
    };
    let left: Vec<usize> = (lo - xm.left.len() as i64..lo).map(edge_at).collect();
    let core: Vec<usize> = (lo..=hi).map(edge_at).collect();
    let right: Vec<usize> = (hi + 1..=hi + xp.right.len() as i64).map(edge_at).collect();
    let z = Point::from_path(presentation, left, lo, core, right)?;
    Ok(Splice {
        z,
        l_minus,
        l_plus,
        gap: q,
    })
}

/// Per-region outcome of [`check_splice`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpliceCheck {
    pub center: bool,
    pub left: bool,
    pub right: bool,
    pub shifts_bounded: bool,
}

impl SpliceCheck {
    pub fn all(&self) -> bool {
        self.center && self.left && self.right && self.shifts_bounded
    }
}

/// Verifies the three defining equalities of the 1-decoupling condition on
/// every coordinate: explicitly on `[-(m+q)-margin, (m+q)+margin]` and beyond
/// the cores, and on the tails through one common period of both cycles.
pub fn check_splice(
    x_minus: &Point,
    y: &Point,
    x_plus: &Point,
    m: usize,
    s: &Splice,
    margin: usize,
) -> SpliceCheck {
    let (m_i, q_i, mg) = (m as i64, s.gap as i64, margin as i64);
    let z = &s.z;
    let center = (-m_i..=m_i).all(|i| z.symbol(i) == y.symbol(i));

    let xm = x_minus.translate(s.l_minus);
    let period_l = lcm(z.left.len(), xm.left.len()) as i64;
    let from = z.core_window().lo.min(xm.core_window().lo).min(-m_i - q_i - mg) - period_l;
    let left = (from..-m_i - q_i).all(|i| z.symbol(i) == xm.symbol(i));

    let xp = x_plus.translate(s.l_plus);
    let period_r = lcm(z.right.len(), xp.right.len()) as i64;
    let to = z.core_window().hi.max(xp.core_window().hi).max(m_i + q_i + mg) + period_r;
    let right = (m_i + q_i + 1..=to).all(|i| z.symbol(i) == xp.symbol(i));

    SpliceCheck {
        center,
        left,
        right,
        shifts_bounded: s.l_minus.abs() <= q_i && s.l_plus.abs() <= q_i,
    }
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}
