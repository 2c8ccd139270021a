use std::collections::HashMap;

use crate::error::{Error, Result};

/// Index of a symbol in its [`Alphabet`].
pub type Sym = u8;

/// Finite ordered set of symbol tokens. The order is the iteration and
/// lexicographic order used everywhere else.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: HashMap<String, Sym>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(symbols: &[S]) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::invalid("alphabet must be nonempty"));
        }
        if symbols.len() > Sym::MAX as usize + 1 {
            return Err(Error::invalid("alphabet larger than 256 symbols"));
        }
        let mut index = HashMap::new();
        let mut out = Vec::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            let s = s.as_ref();
            if s.is_empty() || s.chars().any(|c| c.is_whitespace() || c == ',' || c == '.' || c == '#') {
                return Err(Error::invalid(format!("bad symbol token {s:?}")));
            }
            if index.insert(s.to_string(), i as Sym).is_some() {
                return Err(Error::invalid(format!("duplicate symbol {s:?}")));
            }
            out.push(s.to_string());
        }
        Ok(Self { symbols: out, index })
    }

    /// The alphabet `{0, 1, ..., k-1}`.
    pub fn digits(k: usize) -> Self {
        let names: Vec<String> = (0..k).map(|i| i.to_string()).collect();
        Self::new(&names).expect("digit alphabet")
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn name(&self, s: Sym) -> &str {
        &self.symbols[s as usize]
    }

    pub fn lookup(&self, token: &str) -> Option<Sym> {
        self.index.get(token).copied()
    }

    fn single_char(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Renders a symbol sequence: concatenated when every token is one
    /// character, `.`-separated otherwise.
    pub fn format(&self, letters: &[Sym]) -> String {
        let sep = if self.single_char() { "" } else { "." };
        letters
            .iter()
            .map(|&s| self.name(s))
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Parses a symbol sequence. Tokens may be separated by `.`, `,` or
    /// whitespace; without separators each character is one token.
    pub fn parse(&self, text: &str) -> Result<Vec<Sym>> {
        let text = text.trim();
        let tokens: Vec<&str> = if text.contains(['.', ',', ' ', '\t']) {
            text.split(['.', ',', ' ', '\t']).filter(|t| !t.is_empty()).collect()
        } else {
            text.char_indices()
                .map(|(i, c)| &text[i..i + c.len_utf8()])
                .collect()
        };
        tokens
            .into_iter()
            .map(|t| {
                self.lookup(t)
                    .ok_or_else(|| Error::invalid(format!("unknown symbol {t:?}")))
            })
            .collect()
    }
}
