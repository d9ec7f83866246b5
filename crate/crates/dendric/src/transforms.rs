//! Language transformations: higher block codes, alphabetic images,
//! complete bifix decoding and sliding block images.
//!
//! Each transformation returns a new [`FactorLanguage`] whose horizon is
//! shrunk conservatively, so the "exact up to the horizon" contract
//! survives composition.

use std::collections::{BTreeMap, BTreeSet};

use crate::codes::{completeness, CodeSet};
use crate::error::{Error, Result};
use crate::language::FactorLanguage;
use crate::words::{Alphabet, Morphism, Symbol, Word};

/// The bijection `L_k(X) → A_k` underlying a higher block code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockCoding {
    pub k: usize,
    /// Blocks in canonical order with their assigned symbols.
    pub dictionary: Vec<(Word, Symbol)>,
}

impl BlockCoding {
    /// Symbol of one block.
    pub fn encode_block(&self, block: &Word) -> Result<&Symbol> {
        self.dictionary
            .iter()
            .find(|(b, _)| b == block)
            .map(|(_, s)| s)
            .ok_or_else(|| Error::NotInLanguage(block.to_string()))
    }

    /// Image of a factor of length `>= k`: the word of block symbols read
    /// through a sliding window of width `k`.
    pub fn encode(&self, w: &Word) -> Result<Word> {
        if w.len() < self.k {
            return Err(Error::InsufficientHorizon { required: self.k, available: w.len() });
        }
        (0..=w.len() - self.k)
            .map(|i| self.encode_block(&w.slice(i..i + self.k)).cloned())
            .collect()
    }

    /// Text form, one `block -> symbol` line per entry.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (block, symbol) in &self.dictionary {
            out.push_str(&format!("{block} -> {symbol}\n"));
        }
        out
    }
}

/// The `k`-th higher block language, with its block dictionary.
///
/// `names`, when given, renames the blocks in canonical order; by default
/// each block is its own symbol name. The new horizon is `L − k + 1`.
pub fn higher_block(
    lang: &FactorLanguage,
    k: usize,
    names: Option<&[&str]>,
) -> Result<(FactorLanguage, BlockCoding)> {
    if k < 1 || k > lang.horizon() {
        return Err(Error::InsufficientHorizon { required: k.max(1), available: lang.horizon() });
    }
    let blocks: Vec<Word> = lang.factors(k)?.iter().cloned().collect();
    let dictionary: Vec<(Word, Symbol)> = match names {
        Some(names) => {
            if names.len() != blocks.len() {
                return Err(Error::Invalid(format!(
                    "{} names given for {} blocks",
                    names.len(),
                    blocks.len()
                )));
            }
            blocks.into_iter().zip(names.iter().map(|n| Symbol::new(*n))).collect()
        }
        None => blocks
            .into_iter()
            .map(|b| {
                let name = Symbol::new(b.to_string());
                (b, name)
            })
            .collect(),
    };
    let coding = BlockCoding { k, dictionary };
    let alphabet = Alphabet::new(coding.dictionary.iter().map(|(_, s)| s.clone()).collect())?;
    let new_horizon = lang.horizon() - k + 1;
    let mut images = Vec::new();
    for n in 1..=new_horizon {
        for w in lang.factors(n + k - 1)? {
            images.push(coding.encode(w)?);
        }
    }
    let image = FactorLanguage::from_words(alphabet, &images, new_horizon)?;
    Ok((image, coding))
}

/// The image language under a letter-to-letter morphism; same horizon.
///
/// The alphabet of the result is restricted to the letters that actually
/// occur in the image.
pub fn alphabetic_image(lang: &FactorLanguage, alpha: &Morphism) -> Result<FactorLanguage> {
    if !alpha.is_alphabetic() {
        let bad = lang
            .alphabet()
            .iter()
            .find(|s| alpha.image(s).map(|w| w.len() != 1).unwrap_or(true));
        return Err(Error::NotAlphabetic(
            bad.map(|s| s.as_str().to_owned()).unwrap_or_default(),
        ));
    }
    let mut used: Vec<Symbol> = Vec::new();
    for a in lang.alphabet().iter() {
        let img = alpha
            .image(a)
            .ok_or_else(|| Error::SymbolNotInSource(a.as_str().to_owned()))?;
        let s = img.symbols()[0].clone();
        if !used.contains(&s) {
            used.push(s);
        }
    }
    used.sort();
    let alphabet = Alphabet::new(used)?;
    let mut images = Vec::new();
    for n in 1..=lang.horizon() {
        for w in lang.factors(n)? {
            images.push(alpha.apply(w)?);
        }
    }
    FactorLanguage::from_words(alphabet, &images, lang.horizon())
}

/// The complete bifix decoding of `lang` by the code `U`, through the
/// coding morphism `phi` (a bijection from fresh letters onto `U`).
///
/// New horizon: `⌊L / max|U|⌋`.
pub fn bifix_decode(
    lang: &FactorLanguage,
    code: &CodeSet,
    phi: &Morphism,
) -> Result<FactorLanguage> {
    if !code.is_bifix_code() {
        return Err(Error::NotBifix);
    }
    let c = completeness(lang, code)?;
    if !c.right_complete || !c.left_complete {
        return Err(Error::NotComplete(
            c.witness.map(|w| w.to_string()).unwrap_or_default(),
        ));
    }
    // phi must map its source letters bijectively onto the code.
    let images: BTreeSet<Word> = phi
        .source()
        .iter()
        .map(|s| phi.image(s).cloned().ok_or_else(|| Error::IncompleteMorphism(s.as_str().to_owned())))
        .collect::<Result<_>>()?;
    if images != *code.words() || phi.source().len() != code.len() {
        return Err(Error::Invalid(
            "coding morphism is not a bijection onto the code".to_owned(),
        ));
    }
    let new_horizon = lang.horizon() / code.max_len();
    if new_horizon < 1 {
        return Err(Error::InsufficientHorizon {
            required: code.max_len(),
            available: lang.horizon(),
        });
    }
    // Enumerate phi^{-1}(L(X)) breadth-first.
    let mut words: Vec<Word> = Vec::new();
    let mut frontier = vec![Word::empty()];
    for _ in 1..=new_horizon {
        let mut next = Vec::new();
        for x in &frontier {
            for b in phi.source().iter() {
                let xb = x.push(b.clone());
                if lang.contains(&phi.apply(&xb)?) {
                    next.push(xb);
                }
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    FactorLanguage::from_words(phi.source().clone(), &words, new_horizon)
}

/// The image under a sliding block code of memory `m_left` and
/// anticipation `n_right`; the horizon shrinks by `m_left + n_right`.
pub fn sliding_block_image(
    lang: &FactorLanguage,
    m_left: usize,
    n_right: usize,
    f: &BTreeMap<Word, Symbol>,
) -> Result<FactorLanguage> {
    let window = m_left + n_right + 1;
    if window > lang.horizon() {
        return Err(Error::InsufficientHorizon { required: window, available: lang.horizon() });
    }
    for w in lang.factors(window)? {
        if !f.contains_key(w) {
            return Err(Error::PartialMap(w.to_string()));
        }
    }
    let mut used: Vec<Symbol> = f.values().cloned().collect();
    used.sort();
    used.dedup();
    let alphabet = Alphabet::new(used)?;
    let new_horizon = lang.horizon() - m_left - n_right;
    let mut images = Vec::new();
    for n in window..=lang.horizon() {
        for w in lang.factors(n)? {
            let image: Word = (0..=n - window)
                .map(|i| f[&w.slice(i..i + window)].clone())
                .collect();
            images.push(image);
        }
    }
    FactorLanguage::from_words(alphabet, &images, new_horizon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dendricity::{dendricity_scan, DendricityStatus};
    use crate::extension::ExtensionGraph;
    use crate::language::{FactorLanguage, Template, DEFAULT_ITERATION_CAP};

    fn lang(rules: &str, horizon: usize) -> FactorLanguage {
        let m = Morphism::parse(rules).unwrap();
        FactorLanguage::from_substitution(&m, horizon, DEFAULT_ITERATION_CAP).unwrap()
    }

    fn edge_strings(g: &ExtensionGraph) -> Vec<(String, String)> {
        g.edges().iter().map(|(u, v)| (u.to_string(), v.to_string())).collect()
    }

    fn pair(a: &str, b: &str) -> (String, String) {
        (a.to_owned(), b.to_owned())
    }

    #[test]
    fn fibonacci_second_higher_block() {
        let fib = lang("a -> ab\nb -> a", 16);
        let (y, coding) = higher_block(&fib, 2, Some(&["u", "v", "w"])).unwrap();
        assert_eq!(y.horizon(), 15);
        let shown: Vec<String> =
            coding.dictionary.iter().map(|(b, s)| format!("{b}->{s}")).collect();
        assert_eq!(shown, vec!["aa->u", "ab->v", "ba->w"]);

        let g = ExtensionGraph::uniform(&y, &Word::empty(), 1).unwrap();
        assert_eq!(
            edge_strings(&g),
            vec![pair("u", "v"), pair("v", "w"), pair("w", "u"), pair("w", "v")]
        );
        let vw = y.alphabet().parse_word("vw").unwrap();
        let g = ExtensionGraph::uniform(&y, &vw, 1).unwrap();
        assert_eq!(
            edge_strings(&g),
            vec![pair("u", "u"), pair("u", "v"), pair("w", "u")]
        );
        let verdict = dendricity_scan(&y, 8).unwrap();
        assert_eq!(verdict.status, DendricityStatus::EventuallyDendricWithinHorizon(1));
    }

    #[test]
    fn higher_block_graph_isomorphism() {
        let fib = lang("a -> ab\nb -> a", 16);
        let k = 2;
        let (y, coding) = higher_block(&fib, k, None).unwrap();
        for n in k..=8 {
            for w in fib.factors(n).unwrap() {
                let gx = ExtensionGraph::uniform(&fib, w, 1).unwrap();
                let fw = coding.encode(w).unwrap();
                let gy = ExtensionGraph::uniform(&y, &fw, 1).unwrap();
                // explicit vertex maps: a -> f(a·prefix), b -> f(suffix·b)
                let prefix = w.slice(0..k - 1);
                let suffix = w.slice(w.len() - (k - 1)..w.len());
                let lmap = |a: &Word| {
                    Word::single(coding.encode_block(&a.concat(&prefix)).unwrap().clone())
                };
                let rmap = |b: &Word| {
                    Word::single(coding.encode_block(&suffix.concat(b)).unwrap().clone())
                };
                let mapped: BTreeSet<(Word, Word)> =
                    gx.edges().iter().map(|(a, b)| (lmap(a), rmap(b))).collect();
                assert_eq!(&mapped, gy.edges(), "word {w}");
                assert_eq!(gx.left_vertices().len(), gy.left_vertices().len());
                assert_eq!(gx.right_vertices().len(), gy.right_vertices().len());
            }
        }
    }

    #[test]
    fn first_higher_block_is_renaming() {
        let fib = lang("a -> ab\nb -> a", 10);
        let (y, _) = higher_block(&fib, 1, None).unwrap();
        assert_eq!(y.horizon(), fib.horizon());
        for n in 0..=y.horizon() {
            assert_eq!(y.count(n).unwrap(), fib.count(n).unwrap());
        }
    }

    #[test]
    fn periodic_template_higher_block() {
        let a = Alphabet::from_chars("ab").unwrap();
        let t = Template::parse(&a, "ab | | ab").unwrap();
        let x = FactorLanguage::from_templates(&[t], 8).unwrap();
        let (y, _) = higher_block(&x, 3, None).unwrap();
        assert_eq!(y.alphabet().len(), 2);
        for n in 1..=y.horizon() {
            assert_eq!(y.count(n).unwrap(), 2);
        }
    }

    #[test]
    fn tribonacci_alphabetic_image() {
        let trib = lang("a -> ab\nb -> ac\nc -> a", 12);
        let alpha = Morphism::parse("a -> a\nb -> a\nc -> c").unwrap();
        let y = alphabetic_image(&trib, &alpha).unwrap();
        assert_eq!(y.alphabet().len(), 2);
        assert_eq!(y.horizon(), 12);
        // the three complete c-to-c factors map to their images
        for (src, dst) in [
            ("cabac", "caaac"),
            ("cababac", "caaaaac"),
            ("cabaabac", "caaaaaac"),
        ] {
            assert!(trib.contains(&trib.alphabet().parse_word(src).unwrap()));
            assert!(y.contains(&y.alphabet().parse_word(dst).unwrap()));
        }
        // complexity drops to 2 per length from length 4
        for n in 4..=10 {
            assert_eq!(y.count(n + 1).unwrap() - y.count(n).unwrap(), 2);
        }
    }

    #[test]
    fn collapsing_image_gives_single_periodic_word() {
        let fib = lang("a -> ab\nb -> a", 10);
        let alpha = Morphism::parse("a -> a\nb -> a").unwrap();
        let y = alphabetic_image(&fib, &alpha).unwrap();
        for n in 1..=10 {
            assert_eq!(y.count(n).unwrap(), 1);
        }
    }

    #[test]
    fn identity_image_is_identity() {
        let fib = lang("a -> ab\nb -> a", 10);
        let alpha = Morphism::parse("a -> a\nb -> b").unwrap();
        let y = alphabetic_image(&fib, &alpha).unwrap();
        for n in 0..=10 {
            assert_eq!(y.factors(n).unwrap(), fib.factors(n).unwrap());
        }
    }

    #[test]
    fn fibonacci_bifix_decoding() {
        let fib = lang("a -> ab\nb -> a", 24);
        let code = CodeSet::parse(fib.alphabet(), "aa\naba\nb\n").unwrap();
        let phi = Morphism::parse("u -> aa\nv -> aba\nw -> b").unwrap();
        let y = bifix_decode(&fib, &code, &phi).unwrap();
        assert_eq!(y.horizon(), 8);

        let g = ExtensionGraph::uniform(&y, &Word::empty(), 1).unwrap();
        assert_eq!(
            edge_strings(&g),
            vec![pair("u", "w"), pair("v", "v"), pair("v", "w"), pair("w", "u"), pair("w", "v")]
        );
        let w = y.alphabet().parse_word("w").unwrap();
        let g = ExtensionGraph::uniform(&y, &w, 1).unwrap();
        assert_eq!(
            edge_strings(&g),
            vec![pair("u", "u"), pair("u", "v"), pair("v", "u")]
        );
        let verdict = dendricity_scan(&y, 6).unwrap();
        assert_eq!(verdict.status, DendricityStatus::DendricWithinHorizon);
    }

    #[test]
    fn unit_decoding_is_renaming() {
        let fib = lang("a -> ab\nb -> a", 10);
        let code = CodeSet::parse(fib.alphabet(), "a\nb\n").unwrap();
        let phi = Morphism::parse("x -> a\ny -> b").unwrap();
        let y = bifix_decode(&fib, &code, &phi).unwrap();
        assert_eq!(y.horizon(), 10);
        for n in 0..=10 {
            assert_eq!(y.count(n).unwrap(), fib.count(n).unwrap());
        }
    }

    #[test]
    fn decode_rejects_incomplete_codes() {
        let fib = lang("a -> ab\nb -> a", 12);
        // {aa, b} is bifix but not right X-complete on Fibonacci.
        let code = CodeSet::parse(fib.alphabet(), "aa\nb\n").unwrap();
        let phi = Morphism::parse("u -> aa\nw -> b").unwrap();
        assert!(matches!(bifix_decode(&fib, &code, &phi), Err(Error::NotComplete(_))));
        // {a, ab} is not bifix.
        let code = CodeSet::parse(fib.alphabet(), "a\nab\n").unwrap();
        let phi = Morphism::parse("u -> a\nv -> ab").unwrap();
        assert!(matches!(bifix_decode(&fib, &code, &phi), Err(Error::NotBifix)));
    }

    #[test]
    fn sliding_block_generalizes_the_other_transforms() {
        let fib = lang("a -> ab\nb -> a", 12);
        // window (0,0) with an alphabetic map equals alphabetic_image
        let alpha = Morphism::parse("a -> a\nb -> a").unwrap();
        let f: BTreeMap<Word, Symbol> = fib
            .factors(1)
            .unwrap()
            .iter()
            .map(|w| (w.clone(), alpha.apply(w).unwrap().symbols()[0].clone()))
            .collect();
        let y1 = sliding_block_image(&fib, 0, 0, &f).unwrap();
        let y2 = alphabetic_image(&fib, &alpha).unwrap();
        for n in 0..=12 {
            assert_eq!(y1.factors(n).unwrap(), y2.factors(n).unwrap());
        }

        // window (0,1) with the block dictionary equals higher_block(2)
        let (y3, coding) = higher_block(&fib, 2, None).unwrap();
        let f: BTreeMap<Word, Symbol> = coding
            .dictionary
            .iter()
            .map(|(b, s)| (b.clone(), s.clone()))
            .collect();
        let y4 = sliding_block_image(&fib, 0, 1, &f).unwrap();
        assert_eq!(y4.horizon(), y3.horizon());
        for n in 0..=y3.horizon() {
            assert_eq!(y3.factors(n).unwrap(), y4.factors(n).unwrap());
        }
    }

    #[test]
    fn sliding_block_equality_detector() {
        let fib = lang("a -> ab\nb -> a", 12);
        let f: BTreeMap<Word, Symbol> = fib
            .factors(2)
            .unwrap()
            .iter()
            .map(|w| {
                let eq = w.symbols()[0] == w.symbols()[1];
                (w.clone(), Symbol::new(if eq { "1" } else { "0" }))
            })
            .collect();
        let y = sliding_block_image(&fib, 1, 0, &f).unwrap();
        assert_eq!(y.horizon(), 11);
        // aa -> 1, ab/ba -> 0; Fibonacci never has bb, so 11 never occurs.
        assert!(!y.contains(&y.alphabet().parse_word("11").unwrap()));
        assert!(y.contains(&y.alphabet().parse_word("010").unwrap()));
    }

    #[test]
    fn sliding_block_requires_total_map() {
        let fib = lang("a -> ab\nb -> a", 12);
        let f: BTreeMap<Word, Symbol> = BTreeMap::new();
        assert!(matches!(sliding_block_image(&fib, 0, 0, &f), Err(Error::PartialMap(_))));
    }
}
