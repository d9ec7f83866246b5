//! Prefix/suffix/bifix codes, completeness, return words and the
//! group-coset construction of bifix codes.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::seq::IteratorRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::language::FactorLanguage;
use crate::words::{Symbol, Word};

/// A finite set of nonempty words with cached code flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSet {
    words: BTreeSet<Word>,
    prefix_witness: Option<(Word, Word)>,
    suffix_witness: Option<(Word, Word)>,
}

impl CodeSet {
    pub fn new(words: BTreeSet<Word>) -> Result<Self> {
        if words.iter().any(Word::is_empty) {
            return Err(Error::EmptyWordInCode);
        }
        let mut prefix_witness = None;
        let mut suffix_witness = None;
        for a in &words {
            for b in &words {
                if a.is_proper_prefix_of(b) && prefix_witness.is_none() {
                    prefix_witness = Some((a.clone(), b.clone()));
                }
                if a.is_proper_suffix_of(b) && suffix_witness.is_none() {
                    suffix_witness = Some((a.clone(), b.clone()));
                }
            }
        }
        Ok(CodeSet { words, prefix_witness, suffix_witness })
    }

    /// Parses one word per line; `#` starts a comment line.
    pub fn parse(alphabet: &crate::words::Alphabet, text: &str) -> Result<Self> {
        let mut words = BTreeSet::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            words.insert(alphabet.parse_word(line)?);
        }
        CodeSet::new(words)
    }

    pub fn words(&self) -> &BTreeSet<Word> {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn max_len(&self) -> usize {
        self.words.iter().map(Word::len).max().unwrap_or(0)
    }

    pub fn is_prefix_code(&self) -> bool {
        self.prefix_witness.is_none()
    }

    pub fn is_suffix_code(&self) -> bool {
        self.suffix_witness.is_none()
    }

    pub fn is_bifix_code(&self) -> bool {
        self.is_prefix_code() && self.is_suffix_code()
    }

    /// A pair `(a, b)` with `a` a proper prefix of `b`, if any.
    pub fn prefix_witness(&self) -> Option<(&Word, &Word)> {
        self.prefix_witness.as_ref().map(|(a, b)| (a, b))
    }

    pub fn suffix_witness(&self) -> Option<(&Word, &Word)> {
        self.suffix_witness.as_ref().map(|(a, b)| (a, b))
    }
}

/// Whether every long-enough factor meets the code on the appropriate side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completeness {
    pub right_complete: bool,
    pub left_complete: bool,
    /// A factor of length `max|U|` witnessing a failure, if any.
    pub witness: Option<Word>,
}

/// Checks two-sided X-completeness of `code` within the horizon.
pub fn completeness(lang: &FactorLanguage, code: &CodeSet) -> Result<Completeness> {
    let n = code.max_len();
    let mut right_complete = true;
    let mut left_complete = true;
    let mut witness = None;
    for w in lang.factors(n)? {
        if !code.words().iter().any(|u| w.starts_with(u)) {
            right_complete = false;
            witness.get_or_insert_with(|| w.clone());
        }
        if !code.words().iter().any(|u| w.ends_with(u)) {
            left_complete = false;
            witness.get_or_insert_with(|| w.clone());
        }
    }
    Ok(Completeness { right_complete, left_complete, witness })
}

/// `ρ_X(W) = Σ_{w∈W} (r_1(w) − 1)`.
pub fn rho<'a>(lang: &FactorLanguage, words: impl IntoIterator<Item = &'a Word>) -> Result<i64> {
    let mut sum = 0i64;
    for w in words {
        sum += lang.r1(w)? as i64 - 1;
    }
    Ok(sum)
}

/// Return words of a single base word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReturnWordReport {
    pub base: Word,
    /// Words with exactly two occurrences of the base, one as a proper
    /// prefix and one as a proper suffix.
    pub complete_returns: BTreeSet<Word>,
    /// `R_X(w) = { u : wu is a complete return word }`.
    pub returns: BTreeSet<Word>,
    /// False if some branch of the enumeration was cut by the horizon.
    pub complete_within_horizon: bool,
}

/// Enumerates complete return words to `w` by breadth-first right extension.
pub fn return_words(lang: &FactorLanguage, w: &Word) -> Result<ReturnWordReport> {
    if !lang.contains(w) {
        return Err(Error::NotInLanguage(w.to_string()));
    }
    if w.is_empty() {
        // Complete returns to ε are exactly the letters.
        let letters: BTreeSet<Word> = lang.factors(1)?.iter().cloned().collect();
        return Ok(ReturnWordReport {
            base: w.clone(),
            complete_returns: letters.clone(),
            returns: letters,
            complete_within_horizon: true,
        });
    }
    let mut complete_returns = BTreeSet::new();
    let mut complete_within_horizon = true;
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(cur) = queue.pop_front() {
        if cur.len() >= lang.horizon() {
            complete_within_horizon = false;
            continue;
        }
        let mut extended = false;
        for a in lang.alphabet().iter() {
            let next = cur.push(a.clone());
            if !lang.contains(&next) {
                continue;
            }
            extended = true;
            if next.slice(next.len() - w.len()..next.len()) == *w {
                complete_returns.insert(next);
            } else {
                queue.push_back(next);
            }
        }
        if !extended {
            // A dead end inside the horizon: the language window is not
            // right-extendable here, so the enumeration is inconclusive.
            complete_within_horizon = false;
        }
    }
    let returns = complete_returns.iter().map(|z| z.slice(w.len()..z.len())).collect();
    Ok(ReturnWordReport { base: w.clone(), complete_returns, returns, complete_within_horizon })
}

/// One line of a return-count check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReturnCountLine {
    pub word: Word,
    pub count: usize,
    pub expected: usize,
    pub pass: bool,
}

/// Checks `Card R_X(w) = 1 + ρ_X(L_m)` for each word.
pub fn check_return_count_theorem(
    lang: &FactorLanguage,
    m: usize,
    words: &[Word],
) -> Result<Vec<ReturnCountLine>> {
    let expected = (1 + rho(lang, lang.factors(m)?)?) as usize;
    let mut out = Vec::new();
    for w in words {
        if w.len() < m {
            return Err(Error::Invalid(format!(
                "word `{w}` is shorter than the threshold {m}"
            )));
        }
        let report = return_words(lang, w)?;
        if !report.complete_within_horizon {
            return Err(Error::IncompleteReturns(w.to_string()));
        }
        let count = report.returns.len();
        out.push(ReturnCountLine { word: w.clone(), count, expected, pass: count == expected });
    }
    Ok(out)
}

/// A permutation of a finite point set, by explicit mapping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    map: BTreeMap<String, String>,
}

impl Permutation {
    pub fn identity(points: &[String]) -> Self {
        Permutation { map: points.iter().map(|p| (p.clone(), p.clone())).collect() }
    }

    /// Parses cycle notation like `(1 2)(3 4 5)` over the given point set;
    /// `id` denotes the identity. Fixed points may be omitted.
    pub fn parse(points: &[String], text: &str) -> Result<Self> {
        let mut perm = Permutation::identity(points);
        let text = text.trim();
        if text == "id" || text.is_empty() || text == "()" {
            return Ok(perm);
        }
        let mut moved: BTreeSet<String> = BTreeSet::new();
        let mut rest = text;
        while !rest.is_empty() {
            let rest2 = rest.trim_start();
            if !rest2.starts_with('(') {
                return Err(Error::Invalid(format!("bad cycle notation `{text}`")));
            }
            let close = rest2
                .find(')')
                .ok_or_else(|| Error::Invalid(format!("unclosed cycle in `{text}`")))?;
            let cycle: Vec<&str> = rest2[1..close].split_whitespace().collect();
            for p in &cycle {
                if !points.iter().any(|q| q == p) {
                    return Err(Error::Invalid(format!("point `{p}` not in the point set")));
                }
            }
            for i in 0..cycle.len() {
                let from = cycle[i].to_owned();
                let to = cycle[(i + 1) % cycle.len()].to_owned();
                if !moved.insert(from.clone()) {
                    return Err(Error::Invalid(format!("point `{from}` repeated in `{text}`")));
                }
                perm.map.insert(from, to);
            }
            rest = &rest2[close + 1..];
        }
        // A total map built from disjoint cycles is automatically injective.
        Ok(perm)
    }

    pub fn apply(&self, point: &str) -> Result<&str> {
        self.map
            .get(point)
            .map(String::as_str)
            .ok_or_else(|| Error::Invalid(format!("point `{point}` not in the point set")))
    }
}

/// A letter-indexed permutation action `A → Sym(Q)` parsed from lines
/// `a: (1 2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationAction {
    pub points: Vec<String>,
    pub per_letter: BTreeMap<Symbol, Permutation>,
}

impl PermutationAction {
    pub fn parse(text: &str) -> Result<Self> {
        // First pass: collect the point set from all cycles.
        let mut points: Vec<String> = Vec::new();
        let mut lines: Vec<(Symbol, String)> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (lhs, rhs) = line
                .split_once(':')
                .ok_or_else(|| Error::Invalid(format!("bad permutation line `{line}`")))?;
            for tok in rhs.split(|c| c == '(' || c == ')').flat_map(str::split_whitespace) {
                if tok != "id" && !points.iter().any(|p| p == tok) {
                    points.push(tok.to_owned());
                }
            }
            lines.push((Symbol::new(lhs.trim()), rhs.trim().to_owned()));
        }
        points.sort();
        let mut per_letter = BTreeMap::new();
        for (sym, rhs) in lines {
            per_letter.insert(sym, Permutation::parse(&points, &rhs)?);
        }
        Ok(PermutationAction { points, per_letter })
    }

    pub fn act(&self, point: &str, w: &Word) -> Result<String> {
        let mut cur = point.to_owned();
        for s in w.symbols() {
            let p = self
                .per_letter
                .get(s)
                .ok_or_else(|| Error::SymbolNotInSource(s.as_str().to_owned()))?;
            cur = p.apply(&cur)?.to_owned();
        }
        Ok(cur)
    }
}

/// The bifix code generating the stabilizer submonoid of `i` inside `L(X)`:
/// words `w` with `i·w = i` and no proper nonempty prefix stabilizing `i`.
pub fn group_bifix_code(
    lang: &FactorLanguage,
    action: &PermutationAction,
    point: &str,
) -> Result<CodeSet> {
    if !action.points.iter().any(|p| p == point) {
        return Err(Error::Invalid(format!("point `{point}` not in the point set")));
    }
    let mut code = BTreeSet::new();
    let mut queue: VecDeque<(Word, String)> = VecDeque::from([(Word::empty(), point.to_owned())]);
    while let Some((w, at)) = queue.pop_front() {
        if w.len() >= lang.horizon() {
            return Err(Error::InsufficientHorizon {
                required: lang.horizon() + 1,
                available: lang.horizon(),
            });
        }
        for a in lang.alphabet().iter() {
            let next = w.push(a.clone());
            if !lang.contains(&next) {
                continue;
            }
            let p = action
                .per_letter
                .get(a)
                .ok_or_else(|| Error::SymbolNotInSource(a.as_str().to_owned()))?;
            let to = p.apply(&at)?.to_owned();
            if to == point {
                code.insert(next);
            } else {
                queue.push_back((next, to));
            }
        }
    }
    let code = CodeSet::new(code)?;
    if !code.is_bifix_code() {
        return Err(Error::NotBifix);
    }
    Ok(code)
}

/// Grows a random X-maximal suffix code by leaf expansion: starting from
/// `L_m(X)` (or `L_1` when `m = 0`), repeatedly replaces a random word `u`
/// by `{au : au ∈ L(X)}`. Word lengths stay below the horizon so that
/// `ρ` remains computable on the result.
pub fn random_maximal_suffix_code(
    lang: &FactorLanguage,
    m: usize,
    steps: usize,
    rng: &mut impl Rng,
) -> Result<CodeSet> {
    let base = m.max(1);
    let mut words: BTreeSet<Word> = lang.factors(base)?.iter().cloned().collect();
    for _ in 0..steps {
        let candidates = words.iter().filter(|u| u.len() + 2 <= lang.horizon());
        let Some(u) = candidates.choose(rng).cloned() else {
            break;
        };
        words.remove(&u);
        for a in lang.alphabet().iter() {
            let au = Word::single(a.clone()).concat(&u);
            if lang.contains(&au) {
                words.insert(au);
            }
        }
    }
    CodeSet::new(words)
}
