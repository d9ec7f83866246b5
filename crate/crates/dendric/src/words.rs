//! Alphabets, finite words and morphisms.
//!
//! Symbols are atomic tokens rather than single characters, so derived
//! alphabets (block alphabets, decoding alphabets) can use synthesized names
//! like `aa` or `u0` without colliding with the base alphabet.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A single symbol: a short printable token.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Symbol(String);

impl Symbol {
    pub fn new(token: impl Into<String>) -> Self {
        Symbol(token.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "'{}'", self.0)
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol::new(s)
    }
}

impl From<char> for Symbol {
    fn from(c: char) -> Self {
        Symbol::new(c.to_string())
    }
}

/// An ordered finite set of distinct symbols.
///
/// The declaration order is total and fixed; it drives canonical output
/// ordering everywhere.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Alphabet {
    symbols: Vec<Symbol>,
}

impl Alphabet {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::BadAlphabet(String::new()));
        }
        for (i, s) in symbols.iter().enumerate() {
            if s.as_str().is_empty() || symbols[..i].contains(s) {
                return Err(Error::BadAlphabet(s.as_str().to_owned()));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// Builds an alphabet of single-character symbols, e.g. `Alphabet::from_chars("abc")`.
    pub fn from_chars(chars: &str) -> Result<Self> {
        Alphabet::new(chars.chars().map(Symbol::from).collect())
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn contains(&self, s: &Symbol) -> bool {
        self.symbols.contains(s)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn iter(&self) -> impl Iterator<Item = &Symbol> {
        self.symbols.iter()
    }

    /// Tokenizes `text` into a word over this alphabet.
    ///
    /// If the text contains `.` it is treated as a symbol separator;
    /// otherwise greedy longest-match tokenization is used (which for
    /// single-character alphabets is just a per-character split).
    /// An empty string denotes the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        if text.is_empty() {
            return Ok(Word::empty());
        }
        if text.contains('.') {
            let mut out = Vec::new();
            for tok in text.split('.') {
                let s = Symbol::new(tok);
                if !self.contains(&s) {
                    return Err(Error::SymbolNotInAlphabet(tok.to_owned()));
                }
                out.push(s);
            }
            return Ok(Word::new(out));
        }
        let mut out = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let best = self
                .symbols
                .iter()
                .filter(|s| rest.starts_with(s.as_str()))
                .max_by_key(|s| s.as_str().len());
            match best {
                Some(s) => {
                    out.push(s.clone());
                    rest = &rest[s.as_str().len()..];
                }
                None => return Err(Error::Unparseable(text.to_owned())),
            }
        }
        Ok(Word::new(out))
    }
}

/// A finite word over an alphabet; the empty word is `Word::empty()`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn single(s: Symbol) -> Self {
        Word(vec![s])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn first(&self) -> Option<&Symbol> {
        self.0.first()
    }

    pub fn last(&self) -> Option<&Symbol> {
        self.0.last()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&self, s: Symbol) -> Word {
        let mut v = self.0.clone();
        v.push(s);
        Word(v)
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    pub fn ends_with(&self, suffix: &Word) -> bool {
        self.0.ends_with(&suffix.0)
    }

    pub fn is_proper_prefix_of(&self, other: &Word) -> bool {
        self.len() < other.len() && other.starts_with(self)
    }

    pub fn is_proper_suffix_of(&self, other: &Word) -> bool {
        self.len() < other.len() && other.ends_with(self)
    }

    /// Number of (possibly overlapping) occurrences of `pat` in `self`.
    pub fn count_occurrences(&self, pat: &Word) -> usize {
        if pat.is_empty() || pat.len() > self.len() {
            return 0;
        }
        (0..=self.len() - pat.len())
            .filter(|&i| self.0[i..i + pat.len()] == pat.0[..])
            .count()
    }

    /// All distinct factors of length `n`.
    pub fn factors_of_len(&self, n: usize) -> impl Iterator<Item = Word> + '_ {
        let end = self.len().saturating_sub(n.saturating_sub(1));
        let take = if n == 0 || n > self.len() { 0 } else { end };
        (0..take).map(move |i| self.slice(i..i + n))
    }

    /// Left-rotation by one symbol (for period normalization).
    pub fn rotate_left(&self) -> Word {
        if self.0.len() < 2 {
            return self.clone();
        }
        let mut v = self.0[1..].to_vec();
        v.push(self.0[0].clone());
        Word(v)
    }

    pub fn rotate_right(&self) -> Word {
        if self.0.len() < 2 {
            return self.clone();
        }
        let mut v = vec![self.0[self.0.len() - 1].clone()];
        v.extend_from_slice(&self.0[..self.0.len() - 1]);
        Word(v)
    }

    /// The shortest word `p` with `self = p^k`.
    pub fn primitive_root(&self) -> Word {
        let n = self.len();
        for d in 1..=n {
            if n % d == 0 {
                let root = self.slice(0..d);
                if (0..n).all(|i| self.0[i] == root.0[i % d]) {
                    return root;
                }
            }
        }
        self.clone()
    }

    /// Canonical comparison: length first, then symbol-wise lexicographic.
    pub fn canonical_cmp(&self, other: &Word) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.canonical_cmp(other)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|s| s.as_str().chars().count() == 1) {
            for s in &self.0 {
                f.write_str(s.as_str())?;
            }
            Ok(())
        } else {
            let toks: Vec<&str> = self.0.iter().map(|s| s.as_str()).collect();
            f.write_str(&toks.join("."))
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<T: IntoIterator<Item = Symbol>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// A non-erasing morphism between free monoids, given by the images of the
/// source symbols.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Morphism {
    source: Alphabet,
    target: Alphabet,
    images: BTreeMap<Symbol, Word>,
}

impl Morphism {
    pub fn new(source: Alphabet, target: Alphabet, images: BTreeMap<Symbol, Word>) -> Result<Self> {
        for s in source.iter() {
            match images.get(s) {
                None => return Err(Error::IncompleteMorphism(s.as_str().to_owned())),
                Some(w) if w.is_empty() => return Err(Error::ErasingMorphism(s.as_str().to_owned())),
                Some(w) => {
                    for t in w.symbols() {
                        if !target.contains(t) {
                            return Err(Error::SymbolNotInAlphabet(t.as_str().to_owned()));
                        }
                    }
                }
            }
        }
        Ok(Morphism { source, target, images })
    }

    /// Parses the text form, one line per source symbol: `a -> ab`.
    ///
    /// The source alphabet is the left-hand sides in order of appearance.
    /// If every image symbol occurs on a left-hand side the morphism is an
    /// endomorphism; otherwise the target alphabet is the set of image
    /// symbols in order of first appearance.
    pub fn parse(text: &str) -> Result<Self> {
        let mut source_syms = Vec::new();
        let mut raw: Vec<(Symbol, String)> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| Error::Invalid(format!("bad morphism line `{line}`")))?;
            let sym = Symbol::new(lhs.trim());
            source_syms.push(sym.clone());
            raw.push((sym, rhs.trim().to_owned()));
        }
        let source = Alphabet::new(source_syms)?;
        // Tentatively parse each image over the source alphabet; fall back to
        // a fresh target alphabet of single-character tokens.
        let endo = raw.iter().all(|(_, rhs)| source.parse_word(rhs).is_ok());
        let target = if endo {
            source.clone()
        } else {
            let mut ts: Vec<Symbol> = Vec::new();
            for (_, rhs) in &raw {
                for c in rhs.chars().filter(|c| *c != '.') {
                    let s = Symbol::from(c);
                    if !ts.contains(&s) {
                        ts.push(s);
                    }
                }
            }
            Alphabet::new(ts)?
        };
        let mut images = BTreeMap::new();
        for (sym, rhs) in raw {
            images.insert(sym, target.parse_word(&rhs)?);
        }
        Morphism::new(source, target, images)
    }

    pub fn source(&self) -> &Alphabet {
        &self.source
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    pub fn image(&self, s: &Symbol) -> Option<&Word> {
        self.images.get(s)
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }

    /// `true` iff every image is a single symbol.
    pub fn is_alphabetic(&self) -> bool {
        self.images.values().all(|w| w.len() == 1)
    }

    /// Concatenation of the images of the symbols of `w`, in order.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        let mut out = Vec::new();
        for s in w.symbols() {
            let img = self
                .images
                .get(s)
                .ok_or_else(|| Error::SymbolNotInSource(s.as_str().to_owned()))?;
            out.extend_from_slice(img.symbols());
        }
        Ok(Word::new(out))
    }

    /// `n`-fold application to a single seed symbol.
    pub fn iterate(&self, seed: &Symbol, n: usize) -> Result<Word> {
        if !self.is_endomorphism() {
            return Err(Error::NotAnEndomorphism);
        }
        if !self.source.contains(seed) {
            return Err(Error::SymbolNotInSource(seed.as_str().to_owned()));
        }
        let mut w = Word::single(seed.clone());
        for _ in 0..n {
            w = self.apply(&w)?;
        }
        Ok(w)
    }

    /// Text form, one line per source symbol.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in self.source.iter() {
            out.push_str(&format!("{} -> {}\n", s, self.images[s]));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fibonacci() -> Morphism {
        Morphism::parse("a -> ab\nb -> a").unwrap()
    }

    #[test]
    fn apply_concatenates_images() {
        let m = fibonacci();
        let a = m.source().clone();
        let w = a.parse_word("ab").unwrap();
        assert_eq!(m.apply(&w).unwrap(), a.parse_word("aba").unwrap());
        assert_eq!(m.apply(&Word::empty()).unwrap(), Word::empty());
    }

    #[test]
    fn apply_rejects_foreign_symbol() {
        let m = fibonacci();
        let w = Word::single(Symbol::from("z"));
        assert_eq!(
            m.apply(&w),
            Err(Error::SymbolNotInSource("z".to_owned()))
        );
    }

    #[test]
    fn iterate_tribonacci_cube() {
        let m = Morphism::parse("a -> ab\nb -> ac\nc -> a").unwrap();
        let got = m.iterate(&Symbol::from("a"), 3).unwrap();
        assert_eq!(got.to_string(), "abacaba");
    }

    #[test]
    fn iterate_fibonacci_lengths() {
        let m = fibonacci();
        assert_eq!(m.iterate(&Symbol::from("a"), 0).unwrap().to_string(), "a");
        assert_eq!(m.iterate(&Symbol::from("a"), 1).unwrap().to_string(), "ab");
        let w = m.iterate(&Symbol::from("a"), 4).unwrap();
        assert_eq!(w.to_string(), "abaababa");
        assert_eq!(w.len(), 8);
    }

    #[test]
    fn iterate_chacon() {
        let m = Morphism::parse("a -> aabc\nb -> bc\nc -> abc").unwrap();
        let got = m.iterate(&Symbol::from("a"), 2).unwrap();
        assert_eq!(got.to_string(), "aabcaabcbcabc");
    }

    #[test]
    fn iterate_rejects_non_endomorphism() {
        let m = Morphism::parse("a -> xy\nb -> x").unwrap();
        assert!(!m.is_endomorphism());
        assert_eq!(m.iterate(&Symbol::from("a"), 1), Err(Error::NotAnEndomorphism));
    }

    #[test]
    fn alphabetic_preserves_length() {
        let m = Morphism::parse("a -> a\nb -> a\nc -> c").unwrap();
        assert!(m.is_alphabetic());
        let w = m.source().parse_word("abcab").unwrap();
        assert_eq!(m.apply(&w).unwrap().len(), w.len());
    }

    #[test]
    fn morphism_rejects_erasing() {
        assert!(matches!(
            Morphism::parse("a -> ab\nb -> "),
            Err(Error::Invalid(_)) | Err(Error::ErasingMorphism(_))
        ));
    }

    #[test]
    fn multi_char_symbols_display_with_dots() {
        let a = Alphabet::new(vec![Symbol::from("aa"), Symbol::from("b")]).unwrap();
        let w = a.parse_word("aa.b.aa").unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w.to_string(), "aa.b.aa");
        // greedy longest match without separators
        let w2 = a.parse_word("aab").unwrap();
        assert_eq!(w2.len(), 2);
    }

    #[test]
    fn canonical_order_is_length_first() {
        let a = Alphabet::from_chars("ab").unwrap();
        let mut ws = vec![
            a.parse_word("b").unwrap(),
            a.parse_word("aa").unwrap(),
            a.parse_word("a").unwrap(),
        ];
        ws.sort();
        let shown: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
        assert_eq!(shown, vec!["a", "b", "aa"]);
    }

    #[test]
    fn primitive_root_and_rotations() {
        let a = Alphabet::from_chars("ab").unwrap();
        let w = a.parse_word("abab").unwrap();
        assert_eq!(w.primitive_root(), a.parse_word("ab").unwrap());
        assert_eq!(w.rotate_left(), a.parse_word("baba").unwrap());
        assert_eq!(w.rotate_right(), a.parse_word("baba").unwrap());
    }

    #[test]
    fn occurrence_counting() {
        let a = Alphabet::from_chars("ab").unwrap();
        let w = a.parse_word("aaa").unwrap();
        assert_eq!(w.count_occurrences(&a.parse_word("aa").unwrap()), 2);
        assert_eq!(w.count_occurrences(&a.parse_word("b").unwrap()), 0);
    }
}
