use std::collections::{BTreeMap, BTreeSet};

use super::alphabet::{Alphabet, Sym};
use super::enumerate::allowed_blocks;
use super::presentation::{DecouplingCertificate, Edge, SoficPresentation};
use super::word::Word;
use crate::error::{Error, Result};

/// Sliding block code of radius `k`: the image symbol at `l` depends on the
/// source word on `[l-k, l+k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockCode {
    radius: usize,
    target: Alphabet,
    table: BTreeMap<Vec<Sym>, Sym>,
}

impl BlockCode {
    /// Tabulates `map` on every allowed `(2k+1)`-word of the source.
    pub fn from_fn(
        source: &SoficPresentation,
        target: Alphabet,
        radius: usize,
        map: impl Fn(&[Sym]) -> Sym,
    ) -> Result<Self> {
        let mut table = BTreeMap::new();
        for w in allowed_blocks(source, 2 * radius + 1)? {
            let s = map(&w);
            if s as usize >= target.len() {
                return Err(Error::invalid("block map value outside the target alphabet"));
            }
            table.insert(w, s);
        }
        Ok(Self {
            radius,
            target,
            table,
        })
    }

    /// Builds a code from an explicit table; it must cover every allowed source block.
    pub fn from_table(
        source: &SoficPresentation,
        target: Alphabet,
        radius: usize,
        table: BTreeMap<Vec<Sym>, Sym>,
    ) -> Result<Self> {
        for w in allowed_blocks(source, 2 * radius + 1)? {
            match table.get(&w) {
                None => {
                    return Err(Error::invalid(format!(
                        "block map undefined on allowed word {}",
                        source.alphabet().format(&w)
                    )))
                }
                Some(&s) if s as usize >= target.len() => {
                    return Err(Error::invalid("block map value outside the target alphabet"))
                }
                _ => {}
            }
        }
        Ok(Self {
            radius,
            target,
            table,
        })
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    pub fn image_of_block(&self, block: &[Sym]) -> Option<Sym> {
        self.table.get(block).copied()
    }

    pub fn table(&self) -> &BTreeMap<Vec<Sym>, Sym> {
        &self.table
    }
}

/// Applies the code to a word on `[a-k, b+k]`, producing the image on `[a, b]`.
pub fn apply_block_code(code: &BlockCode, w: &Word) -> Result<Word> {
    let k = code.radius;
    let needed = 2 * k + 1;
    if w.len() < needed {
        return Err(Error::InsufficientContext {
            radius: k,
            needed,
            got: w.len(),
        });
    }
    let letters = w
        .letters()
        .windows(needed)
        .map(|b| {
            code.image_of_block(b)
                .ok_or_else(|| Error::DisallowedWord(format!("{b:?} is not a source block")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Word::new(w.start() + k as i64, letters))
}

/// Presentation of the image shift.
///
/// Vertices are the paths of `2k` edges in the source presentation (the source
/// vertices themselves when `k = 0`); each `(2k+1)`-edge path becomes an edge
/// from its prefix to its suffix labelled by the block map of its labels.
/// The output alphabet keeps only the target symbols that occur.
pub fn factor_presentation(source: &SoficPresentation, code: &BlockCode) -> Result<SoficPresentation> {
    let k = code.radius;
    let paths = edge_paths(source, 2 * k)?;
    let index: BTreeMap<&[usize], usize> =
        paths.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let mut raw: BTreeSet<(usize, usize, Sym)> = BTreeSet::new();
    for (i, p) in paths.iter().enumerate() {
        let end = match p.last() {
            Some(&e) => source.edge(e).dst,
            None => i,
        };
        for &e in source.out_edges(end) {
            let mut ext = p.clone();
            ext.push(e);
            let labels: Vec<Sym> = ext.iter().map(|&x| source.edge(x).label).collect();
            let image = code
                .image_of_block(&labels)
                .ok_or_else(|| Error::invalid("block code is not total on the source"))?;
            let j = if k == 0 {
                source.edge(e).dst
            } else {
                index[&ext[1..]]
            };
            raw.insert((i, j, image));
        }
    }
    let used: BTreeSet<Sym> = raw.iter().map(|&(_, _, s)| s).collect();
    let used: Vec<Sym> = used.into_iter().collect();
    let names: Vec<&str> = used.iter().map(|&s| code.target.name(s)).collect();
    let alphabet = Alphabet::new(&names)?;
    let relabel: BTreeMap<Sym, Sym> = used.iter().enumerate().map(|(i, &s)| (s, i as Sym)).collect();
    let edges = raw
        .into_iter()
        .map(|(src, dst, s)| Edge {
            src,
            dst,
            label: relabel[&s],
        })
        .collect();
    let names = if k == 0 {
        source.vertices().to_vec()
    } else {
        paths
            .iter()
            .map(|p| p.iter().map(|e| format!("e{e}")).collect::<Vec<_>>().join("."))
            .collect()
    };
    SoficPresentation::new(alphabet, names, edges)
}

/// All paths of `len` edges; for `len = 0`, one empty path per vertex.
fn edge_paths(source: &SoficPresentation, len: usize) -> Result<Vec<Vec<usize>>> {
    if len == 0 {
        return Ok(vec![Vec::new(); source.num_vertices()]);
    }
    let mut paths: Vec<Vec<usize>> = (0..source.edges().len()).map(|e| vec![e]).collect();
    for _ in 1..len {
        let mut next = Vec::new();
        for p in &paths {
            let end = source.edge(*p.last().unwrap()).dst;
            for &e in source.out_edges(end) {
                let mut q = p.clone();
                q.push(e);
                next.push(q);
            }
        }
        if next.len() > 1 << 20 {
            return Err(Error::VolumeTooLarge {
                size: next.len() as f64,
                cap: 1 << 20,
            });
        }
        paths = next;
    }
    Ok(paths)
}

/// Gap bound for the image of a radius-`k` code: `q + 2k`.
pub fn factor_gap_bound(source: &DecouplingCertificate, k: usize) -> usize {
    source.gap + 2 * k
}
