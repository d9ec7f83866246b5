//! Factor languages of shift spaces, exact up to a declared horizon.
//!
//! A [`FactorLanguage`] stores, for each `n <= horizon`, the full set of
//! factors of length `n`. Every query that would need factors beyond the
//! horizon fails loudly with [`Error::InsufficientHorizon`] instead of
//! silently truncating.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{Alphabet, Morphism, Symbol, Word};

/// Iteration cap for substitution stabilization; overridable per call.
pub const DEFAULT_ITERATION_CAP: usize = 50;

/// Guard against runaway iterate growth before the cap is reached.
const MAX_ITERATE_LEN: usize = 4_000_000;

/// A bi-infinite eventually periodic word `^w(u) m (v)^w`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Template {
    pub left_period: Word,
    pub middle: Word,
    pub right_period: Word,
}

impl Template {
    pub fn new(left_period: Word, middle: Word, right_period: Word) -> Result<Self> {
        if left_period.is_empty() || right_period.is_empty() {
            return Err(Error::Invalid("template periods must be nonempty".into()));
        }
        Ok(Template { left_period, middle, right_period })
    }

    /// Parses the line form `u | m | v` (middle may be empty).
    pub fn parse(alphabet: &Alphabet, line: &str) -> Result<Self> {
        let parts: Vec<&str> = line.split('|').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::Invalid(format!("bad template line `{line}`")));
        }
        Template::new(
            alphabet.parse_word(parts[0])?,
            alphabet.parse_word(parts[1])?,
            alphabet.parse_word(parts[2])?,
        )
    }

    /// The symbol at position `i` of the bi-infinite word, with the middle
    /// occupying positions `0..middle.len()`.
    pub fn symbol_at(&self, i: i64) -> &Symbol {
        let m = self.middle.len() as i64;
        if i < 0 {
            let p = self.left_period.len() as i64;
            let idx = ((i % p) + p) % p;
            &self.left_period.symbols()[idx as usize]
        } else if i < m {
            &self.middle.symbols()[i as usize]
        } else {
            let p = self.right_period.len() as i64;
            &self.right_period.symbols()[((i - m) % p) as usize]
        }
    }

    /// A finite window `[from, to)` of the bi-infinite word.
    pub fn window(&self, from: i64, to: i64) -> Word {
        (from..to).map(|i| self.symbol_at(i).clone()).collect()
    }
}

/// How a language was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Generated by a substitution; carries the iteration count at which the
    /// factor sets stabilized.
    Substitution { morphism: Morphism, stabilized_at: usize },
    Templates(Vec<Template>),
    Explicit,
}

/// The factor language of a shift space, exactly known up to `horizon`.
#[derive(Clone, Debug)]
pub struct FactorLanguage {
    alphabet: Alphabet,
    horizon: usize,
    by_len: Vec<BTreeSet<Word>>,
    all: HashSet<Word>,
    provenance: Provenance,
}

impl FactorLanguage {
    fn from_parts(
        alphabet: Alphabet,
        horizon: usize,
        by_len: Vec<BTreeSet<Word>>,
        provenance: Provenance,
    ) -> Result<Self> {
        let all = by_len.iter().flatten().cloned().collect();
        let lang = FactorLanguage { alphabet, horizon, by_len, all, provenance };
        lang.validate()?;
        Ok(lang)
    }

    /// The language of the substitution `m`: all factors of all `m^n(a)`.
    ///
    /// Iteration stops once the factor sets of length `<= horizon` are
    /// identical over two successive iterations and the shortest iterate is
    /// longer than `2 * horizon`. This stabilization rule is a pragmatic
    /// test, sound for primitive substitutions.
    pub fn from_substitution(m: &Morphism, horizon: usize, cap: usize) -> Result<Self> {
        if !m.is_endomorphism() {
            return Err(Error::NotAnEndomorphism);
        }
        if horizon < 1 {
            return Err(Error::InsufficientHorizon { required: 1, available: horizon });
        }
        let alphabet = m.source().clone();
        // Some power must map some letter to a word starting with that
        // letter; follow the first-letter map up to |A| * horizon steps.
        let bound = alphabet.len() * horizon.max(1);
        let mut ok = false;
        'outer: for a in alphabet.iter() {
            let mut cur = a.clone();
            for _ in 0..bound {
                cur = m.image(&cur).unwrap().first().unwrap().clone();
                if &cur == a {
                    ok = true;
                    break 'outer;
                }
            }
        }
        if !ok {
            return Err(Error::NoPeriodicLetter(bound));
        }

        let mut by_len: Vec<BTreeSet<Word>> = vec![BTreeSet::new(); horizon + 1];
        by_len[0].insert(Word::empty());
        let mut iterates: Vec<Word> =
            alphabet.iter().map(|a| Word::single(a.clone())).collect();
        let mut prev_counts: Option<Vec<usize>> = None;
        for step in 1..=cap {
            for w in iterates.iter_mut() {
                *w = m.apply(w)?;
                if w.len() > MAX_ITERATE_LEN {
                    return Err(Error::NoStabilization(step));
                }
            }
            for w in &iterates {
                for n in 1..=horizon.min(w.len()) {
                    for f in w.factors_of_len(n) {
                        by_len[n].insert(f);
                    }
                }
            }
            let counts: Vec<usize> = by_len.iter().map(BTreeSet::len).collect();
            let min_len = iterates.iter().map(Word::len).min().unwrap_or(0);
            if prev_counts.as_deref() == Some(&counts) && min_len > 2 * horizon {
                return FactorLanguage::from_parts(
                    alphabet,
                    horizon,
                    by_len,
                    Provenance::Substitution { morphism: m.clone(), stabilized_at: step },
                );
            }
            prev_counts = Some(counts);
        }
        Err(Error::NoStabilization(cap))
    }

    /// The language of the shift-closure of the given templates: all factors
    /// of each `^w(u) m (v)^w` plus the two purely periodic orbits `^w(u)(u)^w`
    /// and `^w(v)(v)^w` of every template.
    pub fn from_templates(templates: &[Template], horizon: usize) -> Result<Self> {
        if templates.is_empty() {
            return Err(Error::Invalid("template list must be nonempty".into()));
        }
        if horizon < 1 {
            return Err(Error::InsufficientHorizon { required: 1, available: horizon });
        }
        let mut symbols: Vec<Symbol> = Vec::new();
        for t in templates {
            for w in [&t.left_period, &t.middle, &t.right_period] {
                for s in w.symbols() {
                    if !symbols.contains(s) {
                        symbols.push(s.clone());
                    }
                }
            }
        }
        symbols.sort();
        let alphabet = Alphabet::new(symbols)?;

        let mut by_len: Vec<BTreeSet<Word>> = vec![BTreeSet::new(); horizon + 1];
        by_len[0].insert(Word::empty());
        let mut windows: Vec<Word> = Vec::new();
        for t in templates {
            let reach = horizon as i64 + 1;
            let lp = t.left_period.len() as i64;
            let rp = t.right_period.len() as i64;
            let m = t.middle.len() as i64;
            windows.push(t.window(-(reach / lp + 2) * lp, m + (reach / rp + 2) * rp));
            let periodic_l =
                Template::new(t.left_period.clone(), Word::empty(), t.left_period.clone())?;
            let periodic_r =
                Template::new(t.right_period.clone(), Word::empty(), t.right_period.clone())?;
            windows.push(periodic_l.window(-(reach / lp + 2) * lp, (reach / lp + 2) * lp));
            windows.push(periodic_r.window(-(reach / rp + 2) * rp, (reach / rp + 2) * rp));
        }
        for w in &windows {
            for n in 1..=horizon.min(w.len()) {
                for f in w.factors_of_len(n) {
                    by_len[n].insert(f);
                }
            }
        }
        FactorLanguage::from_parts(
            alphabet,
            horizon,
            by_len,
            Provenance::Templates(templates.to_vec()),
        )
    }

    /// The set of all factors of length `<= horizon` of the given words.
    ///
    /// The result must itself be a valid factor language (factorial and
    /// extendable within the horizon); otherwise construction fails.
    pub fn from_words(alphabet: Alphabet, words: &[Word], horizon: usize) -> Result<Self> {
        if horizon < 1 {
            return Err(Error::InsufficientHorizon { required: 1, available: horizon });
        }
        let mut by_len: Vec<BTreeSet<Word>> = vec![BTreeSet::new(); horizon + 1];
        by_len[0].insert(Word::empty());
        for w in words {
            for s in w.symbols() {
                if !alphabet.contains(s) {
                    return Err(Error::SymbolNotInAlphabet(s.as_str().to_owned()));
                }
            }
            for n in 1..=horizon.min(w.len()) {
                for f in w.factors_of_len(n) {
                    by_len[n].insert(f);
                }
            }
        }
        FactorLanguage::from_parts(alphabet, horizon, by_len, Provenance::Explicit)
    }

    /// Checks the factorial and extendability invariants within the horizon.
    pub fn validate(&self) -> Result<()> {
        for n in 1..=self.horizon {
            for w in &self.by_len[n] {
                let head = w.slice(0..n - 1);
                let tail = w.slice(1..n);
                if !self.contains(&head) {
                    return Err(Error::NotFactorial(w.to_string(), head.to_string()));
                }
                if !self.contains(&tail) {
                    return Err(Error::NotFactorial(w.to_string(), tail.to_string()));
                }
            }
        }
        for n in 0..self.horizon.saturating_sub(1) {
            for w in &self.by_len[n] {
                let extendable = self.by_len[n + 2]
                    .iter()
                    .any(|z| z.slice(1..n + 1) == *w);
                if !extendable {
                    return Err(Error::NotExtendable(w.to_string()));
                }
            }
        }
        Ok(())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Membership test; words longer than the horizon are reported absent.
    pub fn contains(&self, w: &Word) -> bool {
        self.all.contains(w)
    }

    /// The set `L_n(X)`; panics if `n > horizon` is requested via index, so
    /// callers go through this checked accessor.
    pub fn factors(&self, n: usize) -> Result<&BTreeSet<Word>> {
        self.by_len.get(n).ok_or(Error::InsufficientHorizon {
            required: n,
            available: self.horizon,
        })
    }

    /// `p_n = |L_n|`.
    pub fn count(&self, n: usize) -> Result<usize> {
        Ok(self.factors(n)?.len())
    }

    fn require_horizon(&self, required: usize) -> Result<()> {
        if required > self.horizon {
            return Err(Error::InsufficientHorizon { required, available: self.horizon });
        }
        Ok(())
    }

    fn require_member(&self, w: &Word) -> Result<()> {
        if !self.contains(w) {
            return Err(Error::NotInLanguage(w.to_string()));
        }
        Ok(())
    }

    /// `L_k(w) = { u in L_k : uw in L }`.
    pub fn left_ext(&self, w: &Word, k: usize) -> Result<BTreeSet<Word>> {
        self.require_member(w)?;
        self.require_horizon(w.len() + k)?;
        Ok(self.by_len[k]
            .iter()
            .filter(|u| self.contains(&u.concat(w)))
            .cloned()
            .collect())
    }

    /// `R_k(w) = { v in L_k : wv in L }`.
    pub fn right_ext(&self, w: &Word, k: usize) -> Result<BTreeSet<Word>> {
        self.require_member(w)?;
        self.require_horizon(w.len() + k)?;
        Ok(self.by_len[k]
            .iter()
            .filter(|v| self.contains(&w.concat(v)))
            .cloned()
            .collect())
    }

    /// `E_k(w) = { (u, v) : uwv in L }`.
    pub fn biext(&self, w: &Word, k: usize) -> Result<BTreeSet<(Word, Word)>> {
        self.require_member(w)?;
        self.require_horizon(w.len() + 2 * k)?;
        let left = self.left_ext(w, k)?;
        let right = self.right_ext(w, k)?;
        let mut out = BTreeSet::new();
        for u in &left {
            let uw = u.concat(w);
            for v in &right {
                if self.contains(&uw.concat(v)) {
                    out.insert((u.clone(), v.clone()));
                }
            }
        }
        Ok(out)
    }

    /// `l_1(w)`, needs `|w| + 1 <= horizon`.
    pub fn l1(&self, w: &Word) -> Result<usize> {
        Ok(self.left_ext(w, 1)?.len())
    }

    pub fn r1(&self, w: &Word) -> Result<usize> {
        Ok(self.right_ext(w, 1)?.len())
    }

    pub fn is_left_special(&self, w: &Word) -> Result<bool> {
        Ok(self.l1(w)? > 1)
    }

    pub fn is_right_special(&self, w: &Word) -> Result<bool> {
        Ok(self.r1(w)? > 1)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&LanguageJson::from(self)).expect("serialization")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: LanguageJson =
            serde_json::from_str(text).map_err(|e| Error::Invalid(e.to_string()))?;
        let alphabet = Alphabet::new(raw.alphabet.iter().map(|s| Symbol::new(s.clone())).collect())?;
        let mut by_len: Vec<BTreeSet<Word>> = vec![BTreeSet::new(); raw.horizon + 1];
        by_len[0].insert(Word::empty());
        for (k, words) in &raw.factors {
            let n: usize = k.parse().map_err(|_| Error::Invalid(format!("bad length key `{k}`")))?;
            if n == 0 || n > raw.horizon {
                return Err(Error::Invalid(format!("length key `{k}` out of range")));
            }
            for text in words {
                by_len[n].insert(alphabet.parse_word(text)?);
            }
        }
        FactorLanguage::from_parts(alphabet, raw.horizon, by_len, Provenance::Explicit)
    }
}

#[derive(Serialize, Deserialize)]
struct LanguageJson {
    alphabet: Vec<String>,
    horizon: usize,
    factors: BTreeMap<String, Vec<String>>,
}

impl From<&FactorLanguage> for LanguageJson {
    fn from(lang: &FactorLanguage) -> Self {
        let mut factors = BTreeMap::new();
        for n in 1..=lang.horizon {
            factors.insert(
                n.to_string(),
                lang.by_len[n].iter().map(|w| w.to_string()).collect(),
            );
        }
        LanguageJson {
            alphabet: lang.alphabet.iter().map(|s| s.as_str().to_owned()).collect(),
            horizon: lang.horizon,
            factors,
        }
    }
}
