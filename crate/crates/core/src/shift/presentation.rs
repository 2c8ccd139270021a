use std::collections::{BTreeSet, HashMap, VecDeque};

use super::alphabet::{Alphabet, Sym};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub label: Sym,
}

/// Labeled directed graph presenting a shift space: the points are the label
/// sequences of bi-infinite paths.
#[derive(Debug, Clone, PartialEq)]
pub struct SoficPresentation {
    alphabet: Alphabet,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
    irreducible: bool,
    aperiodic: bool,
    right_resolving: bool,
}

/// Which form of the decoupling gap a certificate refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapVariant {
    /// A path of length exactly `q` joins every ordered vertex pair (no translation).
    ExactLength,
    /// A path of length at most `q` joins every ordered vertex pair (1-decoupling).
    BoundedLength,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecouplingCertificate {
    pub gap: usize,
    pub variant: GapVariant,
}

impl SoficPresentation {
    /// Builds a presentation; every vertex must have an incoming and an outgoing edge.
    pub fn new(alphabet: Alphabet, vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::invalid("presentation has no vertices"));
        }
        let mut seen = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if seen.insert(v.as_str(), i).is_some() {
                return Err(Error::invalid(format!("duplicate vertex {v:?}")));
            }
        }
        let nv = vertices.len();
        let mut out_edges = vec![Vec::new(); nv];
        let mut in_edges = vec![Vec::new(); nv];
        for (k, e) in edges.iter().enumerate() {
            if e.src >= nv || e.dst >= nv {
                return Err(Error::invalid(format!("edge {k} references a missing vertex")));
            }
            if e.label as usize >= alphabet.len() {
                return Err(Error::invalid(format!("edge {k} has a label outside the alphabet")));
            }
            out_edges[e.src].push(k);
            in_edges[e.dst].push(k);
        }
        for v in 0..nv {
            if out_edges[v].is_empty() || in_edges[v].is_empty() {
                return Err(Error::invalid(format!(
                    "vertex {:?} is not essential (needs incoming and outgoing edges)",
                    vertices[v]
                )));
            }
        }
        let adj = adjacency(nv, &edges);
        let irreducible = strongly_connected(&adj);
        let aperiodic = irreducible && period(&adj) == Some(1);
        let right_resolving = (0..nv).all(|v| {
            let mut labels = BTreeSet::new();
            out_edges[v].iter().all(|&k| labels.insert(edges[k].label))
        });
        Ok(Self {
            alphabet,
            vertices,
            edges,
            out_edges,
            in_edges,
            irreducible,
            aperiodic,
            right_resolving,
        })
    }

    /// Vertex-shift presentation of the SFT with the given forbidden words.
    ///
    /// Vertices are the allowed `(L-1)`-blocks (`L` the longest forbidden word,
    /// at least 1-blocks); the edge `u -> u'` carries the last symbol of `u'`.
    /// Blocks that cannot occur in a bi-infinite sequence are pruned.
    pub fn from_sft(alphabet: Alphabet, forbidden: &[Vec<Sym>]) -> Result<Self> {
        if forbidden.iter().any(|w| w.is_empty()) {
            return Err(Error::invalid("empty forbidden word"));
        }
        let longest = forbidden.iter().map(Vec::len).max().unwrap_or(1);
        let block = longest.saturating_sub(1).max(1);
        let k = alphabet.len();
        let contains_forbidden = |w: &[Sym]| {
            forbidden
                .iter()
                .any(|f| f.len() <= w.len() && w.windows(f.len()).any(|s| s == f.as_slice()))
        };
        let mut blocks: Vec<Vec<Sym>> = Vec::new();
        let total = (k as u64).checked_pow(block as u32).filter(|&t| t <= 1 << 20);
        let total = total.ok_or_else(|| Error::invalid("forbidden words too long for block conversion"))?;
        for idx in 0..total {
            let mut w = vec![0 as Sym; block];
            let mut r = idx;
            for pos in (0..block).rev() {
                w[pos] = (r % k as u64) as Sym;
                r /= k as u64;
            }
            if !contains_forbidden(&w) {
                blocks.push(w);
            }
        }
        let pos: HashMap<Vec<Sym>, usize> =
            blocks.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect();
        let mut edges = Vec::new();
        for (i, b) in blocks.iter().enumerate() {
            for a in 0..k as Sym {
                let mut ext = b.clone();
                ext.push(a);
                if contains_forbidden(&ext) {
                    continue;
                }
                if let Some(&j) = pos.get(&ext[1..]) {
                    edges.push(Edge { src: i, dst: j, label: a });
                }
            }
        }
        let names: Vec<String> = blocks.iter().map(|b| alphabet.format(b)).collect();
        let (names, edges) = prune_to_essential(names, edges);
        if names.is_empty() {
            return Err(Error::invalid("forbidden words leave an empty shift"));
        }
        Self::new(alphabet, names, edges)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, k: usize) -> Edge {
        self.edges[k]
    }

    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out_edges[v]
    }

    pub fn in_edges(&self, v: usize) -> &[usize] {
        &self.in_edges[v]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn is_irreducible(&self) -> bool {
        self.irreducible
    }

    /// True iff the gcd of cycle lengths is 1.
    pub fn is_aperiodic(&self) -> Result<bool> {
        if !self.irreducible {
            return Err(Error::AperiodicityUndefined);
        }
        Ok(self.aperiodic)
    }

    pub fn is_right_resolving(&self) -> bool {
        self.right_resolving
    }

    pub fn period(&self) -> Option<usize> {
        period(&self.adjacency())
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        adjacency(self.num_vertices(), &self.edges)
    }

    /// Vertices reached from `set` by one edge labelled `sym`, sorted.
    pub fn successors(&self, set: &[usize], sym: Sym) -> Vec<usize> {
        let mut out: Vec<usize> = set
            .iter()
            .flat_map(|&v| self.out_edges[v].iter().map(|&k| self.edges[k]))
            .filter(|e| e.label == sym)
            .map(|e| e.dst)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Minimal decoupling gap of the given variant.
    pub fn decoupling_gap(&self, variant: GapVariant) -> Result<DecouplingCertificate> {
        if !self.irreducible {
            return Err(Error::Reducible);
        }
        let adj = self.adjacency();
        let n = adj.len();
        let gap = match variant {
            GapVariant::BoundedLength => {
                let mut worst = 0;
                for p in 0..n {
                    let dist = positive_distances(&adj, p);
                    for d in dist {
                        worst = worst.max(d.expect("strongly connected"));
                    }
                }
                worst
            }
            GapVariant::ExactLength => {
                let per = period(&adj).expect("strongly connected");
                if per != 1 {
                    return Err(Error::ExactGapMissing { period: per });
                }
                // Wielandt: A^q > 0 for some q <= (n-1)^2 + 1.
                let bound = (n - 1) * (n - 1) + 1;
                let mut reach: Vec<Vec<bool>> = (0..n)
                    .map(|p| {
                        let mut row = vec![false; n];
                        for &q in &adj[p] {
                            row[q] = true;
                        }
                        row
                    })
                    .collect();
                let mut q = 1;
                while !reach.iter().all(|r| r.iter().all(|&b| b)) {
                    if q >= bound {
                        unreachable!("primitive matrix exceeded Wielandt bound");
                    }
                    reach = reach
                        .iter()
                        .map(|row| {
                            let mut next = vec![false; n];
                            for (u, &on) in row.iter().enumerate() {
                                if on {
                                    for &w in &adj[u] {
                                        next[w] = true;
                                    }
                                }
                            }
                            next
                        })
                        .collect();
                    q += 1;
                }
                q
            }
        };
        Ok(DecouplingCertificate { gap, variant })
    }

    /// A shortest path (edge indices) from `from` to `to`; empty when equal.
    pub fn shortest_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        if from == to {
            return Some(Vec::new());
        }
        let n = self.num_vertices();
        let mut parent: Vec<Option<usize>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            for &k in &self.out_edges[v] {
                let w = self.edges[k].dst;
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(k);
                    if w == to {
                        let mut path = Vec::new();
                        let mut cur = to;
                        while cur != from {
                            let e = parent[cur].expect("parent");
                            path.push(e);
                            cur = self.edges[e].src;
                        }
                        path.reverse();
                        return Some(path);
                    }
                    queue.push_back(w);
                }
            }
        }
        None
    }
}

fn prune_to_essential(names: Vec<String>, edges: Vec<Edge>) -> (Vec<String>, Vec<Edge>) {
    let n = names.len();
    let mut alive = vec![true; n];
    loop {
        let mut has_out = vec![false; n];
        let mut has_in = vec![false; n];
        for e in &edges {
            if alive[e.src] && alive[e.dst] {
                has_out[e.src] = true;
                has_in[e.dst] = true;
            }
        }
        let mut changed = false;
        for v in 0..n {
            if alive[v] && !(has_out[v] && has_in[v]) {
                alive[v] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut remap = vec![usize::MAX; n];
    let mut kept = Vec::new();
    for v in 0..n {
        if alive[v] {
            remap[v] = kept.len();
            kept.push(names[v].clone());
        }
    }
    let edges = edges
        .into_iter()
        .filter(|e| alive[e.src] && alive[e.dst])
        .map(|e| Edge {
            src: remap[e.src],
            dst: remap[e.dst],
            label: e.label,
        })
        .collect();
    (kept, edges)
}

pub(crate) fn adjacency(n: usize, edges: &[Edge]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for e in edges {
        adj[e.src].push(e.dst);
    }
    for row in &mut adj {
        row.sort_unstable();
        row.dedup();
    }
    adj
}

fn reach_from(adj: &[Vec<usize>], start: usize, reverse: bool) -> Vec<bool> {
    let n = adj.len();
    let rev: Vec<Vec<usize>>;
    let graph = if reverse {
        let mut r = vec![Vec::new(); n];
        for (u, row) in adj.iter().enumerate() {
            for &v in row {
                r[v].push(u);
            }
        }
        rev = r;
        &rev
    } else {
        adj
    };
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in &graph[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// Strong connectivity of a digraph given by adjacency lists.
pub(crate) fn strongly_connected(adj: &[Vec<usize>]) -> bool {
    if adj.is_empty() {
        return false;
    }
    reach_from(adj, 0, false).iter().all(|&b| b) && reach_from(adj, 0, true).iter().all(|&b| b)
}

/// Period (gcd of cycle lengths) of a strongly connected digraph; `None` otherwise.
pub(crate) fn period(adj: &[Vec<usize>]) -> Option<usize> {
    if !strongly_connected(adj) {
        return None;
    }
    let n = adj.len();
    let mut level: Vec<Option<i64>> = vec![None; n];
    level[0] = Some(0);
    let mut queue = VecDeque::from([0usize]);
    let mut g: i64 = 0;
    while let Some(u) = queue.pop_front() {
        let lu = level[u].expect("visited");
        for &v in &adj[u] {
            match level[v] {
                None => {
                    level[v] = Some(lu + 1);
                    queue.push_back(v);
                }
                Some(lv) => g = gcd(g, (lu + 1 - lv).abs()),
            }
        }
    }
    Some(g.max(1) as usize)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Lengths of the shortest paths of positive length from `p` to every vertex.
fn positive_distances(adj: &[Vec<usize>], p: usize) -> Vec<Option<usize>> {
    let n = adj.len();
    let mut dist: Vec<Option<usize>> = vec![None; n];
    let mut queue = VecDeque::new();
    for &w in &adj[p] {
        if dist[w].is_none() {
            dist[w] = Some(1);
            queue.push_back(w);
        }
    }
    while let Some(v) = queue.pop_front() {
        let d = dist[v].expect("queued");
        for &w in &adj[v] {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;

    fn two_loops() -> SoficPresentation {
        let a = Alphabet::digits(2);
        SoficPresentation::new(
            a,
            vec!["P".into(), "Q".into()],
            vec![
                Edge { src: 0, dst: 0, label: 0 },
                Edge { src: 1, dst: 1, label: 1 },
            ],
        )
        .unwrap()
    }

    #[test]
    fn irreducibility() {
        assert!(bundled::even_shift().is_irreducible());
        assert!(!two_loops().is_irreducible());
        assert!(bundled::full_shift().is_irreducible());
    }

    #[test]
    fn aperiodicity() {
        assert!(bundled::even_shift().is_aperiodic().unwrap());
        assert!(!bundled::periodic().is_aperiodic().unwrap());
        assert!(bundled::full_shift().is_aperiodic().unwrap());
        assert_eq!(two_loops().is_aperiodic(), Err(Error::AperiodicityUndefined));
    }

    #[test]
    fn gaps() {
        let even = bundled::even_shift();
        assert_eq!(even.decoupling_gap(GapVariant::BoundedLength).unwrap().gap, 2);
        let full = bundled::full_shift();
        assert_eq!(full.decoupling_gap(GapVariant::BoundedLength).unwrap().gap, 1);
        assert_eq!(full.decoupling_gap(GapVariant::ExactLength).unwrap().gap, 1);
        // [[1,1],[1,0]] squared is already positive.
        let golden = bundled::golden_mean();
        assert_eq!(golden.decoupling_gap(GapVariant::ExactLength).unwrap().gap, 2);
        assert_eq!(two_loops().decoupling_gap(GapVariant::BoundedLength), Err(Error::Reducible));
        assert_eq!(
            bundled::periodic().decoupling_gap(GapVariant::ExactLength),
            Err(Error::ExactGapMissing { period: 2 })
        );
    }

    #[test]
    fn non_essential_vertex_rejected() {
        let a = Alphabet::digits(2);
        let r = SoficPresentation::new(
            a,
            vec!["P".into(), "Q".into()],
            vec![Edge { src: 0, dst: 0, label: 0 }, Edge { src: 0, dst: 1, label: 1 }],
        );
        assert!(r.is_err());
    }

    #[test]
    fn sft_conversion_golden_mean() {
        let g = bundled::golden_mean();
        assert_eq!(g.num_vertices(), 2);
        assert_eq!(g.edges().len(), 3);
        assert!(g.is_right_resolving());
        assert_eq!(g.vertices(), &["0".to_string(), "1".to_string()]);
    }

    #[test]
    fn sft_pruning_removes_dead_blocks() {
        // forbid 01 and 11: only 0^∞ and 1 0^∞ ... ; the bi-infinite shift is {0^∞}.
        let a = Alphabet::digits(2);
        let p = SoficPresentation::from_sft(a, &[vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(p.vertices(), &["0".to_string()]);
    }

    #[test]
    fn shortest_paths() {
        let even = bundled::even_shift();
        assert_eq!(even.shortest_path(0, 0), Some(vec![]));
        let p = even.shortest_path(1, 0).unwrap();
        assert_eq!(p.len(), 1);
    }
}
