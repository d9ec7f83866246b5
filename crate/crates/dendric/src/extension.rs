//! Extension graphs and generalized extension graphs.
//!
//! The extension graph of order `k` of a word `w` is the undirected
//! bipartite graph on `L_k(w) ⊔ R_k(w)` with an edge `(u, v)` whenever
//! `uwv` is in the language. The generalized variant replaces the uniform
//! vertex sets by `L_U(w)` and `R_V(w)` for a suffix code `U` and a prefix
//! code `V`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::codes::CodeSet;
use crate::error::{Error, Result};
use crate::language::FactorLanguage;
use crate::words::Word;

/// Which family of vertex sets an [`ExtensionGraph`] was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphKind {
    Uniform { k: usize },
    Generalized,
}

/// The sign class of the multiplicity `m(w)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Neutrality {
    Strong,
    Weak,
    Neutral,
}

impl std::fmt::Display for Neutrality {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Neutrality::Strong => "strong",
            Neutrality::Weak => "weak",
            Neutrality::Neutral => "neutral",
        })
    }
}

/// An immutable bipartite extension graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionGraph {
    word: Word,
    left: Vec<Word>,
    right: Vec<Word>,
    edges: BTreeSet<(Word, Word)>,
    kind: GraphKind,
}

impl ExtensionGraph {
    /// The uniform extension graph `E_k(w)`.
    pub fn uniform(lang: &FactorLanguage, w: &Word, k: usize) -> Result<Self> {
        let left: Vec<Word> = lang.left_ext(w, k)?.into_iter().collect();
        let right: Vec<Word> = lang.right_ext(w, k)?.into_iter().collect();
        let edges = lang.biext(w, k)?;
        Ok(ExtensionGraph { word: w.clone(), left, right, edges, kind: GraphKind::Uniform { k } })
    }

    /// The generalized extension graph `E_{U,V}(w)`.
    ///
    /// `U` must be a suffix code left-complete at `w` (every left extension
    /// of `w` by `max|U|` symbols has a suffix in `U`), and dually `V` a
    /// right-complete prefix code.
    pub fn generalized(lang: &FactorLanguage, w: &Word, u: &CodeSet, v: &CodeSet) -> Result<Self> {
        if !u.is_suffix_code() {
            let (a, b) = u.suffix_witness().expect("non-suffix-code has a witness");
            return Err(Error::NotASuffixCode(a.to_string(), b.to_string()));
        }
        if !v.is_prefix_code() {
            let (a, b) = v.prefix_witness().expect("non-prefix-code has a witness");
            return Err(Error::NotAPrefixCode(a.to_string(), b.to_string()));
        }
        let max_u = u.max_len();
        let max_v = v.max_len();
        // Completeness at w, checked within the horizon.
        for z in lang.left_ext(w, max_u)? {
            if !u.words().iter().any(|x| z.ends_with(x)) {
                return Err(Error::NotComplete(z.to_string()));
            }
        }
        for z in lang.right_ext(w, max_v)? {
            if !v.words().iter().any(|x| z.starts_with(x)) {
                return Err(Error::NotComplete(z.to_string()));
            }
        }
        let left: Vec<Word> = u
            .words()
            .iter()
            .filter(|x| lang.contains(&x.concat(w)))
            .cloned()
            .collect();
        let right: Vec<Word> = v
            .words()
            .iter()
            .filter(|x| lang.contains(&w.concat(x)))
            .cloned()
            .collect();
        let mut edges = BTreeSet::new();
        for lu in &left {
            let luw = lu.concat(w);
            for rv in &right {
                if lang.contains(&luw.concat(rv)) {
                    edges.insert((lu.clone(), rv.clone()));
                }
            }
        }
        Ok(ExtensionGraph { word: w.clone(), left, right, edges, kind: GraphKind::Generalized })
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn kind(&self) -> &GraphKind {
        &self.kind
    }

    pub fn left_vertices(&self) -> &[Word] {
        &self.left
    }

    pub fn right_vertices(&self) -> &[Word] {
        &self.right
    }

    pub fn edges(&self) -> &BTreeSet<(Word, Word)> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.left.len() + self.right.len()
    }

    fn adjacency(&self) -> BTreeMap<usize, Vec<usize>> {
        // Flat ids: left i -> i, right j -> left.len()+j.
        let offset = self.left.len();
        let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for id in 0..self.vertex_count() {
            adj.insert(id, Vec::new());
        }
        for (u, v) in &self.edges {
            let i = self.left.binary_search(u).expect("edge endpoint in vertex list");
            let j = self.right.binary_search(v).expect("edge endpoint in vertex list");
            adj.get_mut(&i).unwrap().push(offset + j);
            adj.get_mut(&(offset + j)).unwrap().push(i);
        }
        adj
    }

    /// Number of connected components (isolated vertices count).
    fn component_count(&self) -> usize {
        let adj = self.adjacency();
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut components = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            components += 1;
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(x) = queue.pop_front() {
                for &y in &adj[&x] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() > 0 && self.component_count() == 1
    }

    /// Acyclic iff `e = v − c` (forest condition).
    pub fn is_acyclic(&self) -> bool {
        self.edge_count() + self.component_count() == self.vertex_count()
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.is_acyclic()
    }

    /// Longest shortest path between any two vertices.
    pub fn diameter(&self) -> Result<usize> {
        if !self.is_connected() {
            return Err(Error::DiameterOfDisconnected);
        }
        let adj = self.adjacency();
        let n = self.vertex_count();
        let mut best = 0;
        for start in 0..n {
            let mut dist = vec![usize::MAX; n];
            dist[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[&x] {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        queue.push_back(y);
                    }
                }
            }
            best = best.max(dist.into_iter().max().unwrap_or(0));
        }
        Ok(best)
    }

    /// A tree of diameter at most 3.
    pub fn is_simple_tree(&self) -> bool {
        self.is_tree() && self.diameter().map(|d| d <= 3).unwrap_or(false)
    }

    /// `m(w) = e − ℓ − r + 1`; defined for letter extensions only.
    pub fn multiplicity(&self) -> Result<i64> {
        if self.kind != (GraphKind::Uniform { k: 1 }) {
            return Err(Error::NotOrderOne);
        }
        Ok(self.edge_count() as i64 - self.left.len() as i64 - self.right.len() as i64 + 1)
    }

    pub fn neutrality_class(&self) -> Result<Neutrality> {
        Ok(match self.multiplicity()? {
            m if m > 0 => Neutrality::Strong,
            m if m < 0 => Neutrality::Weak,
            _ => Neutrality::Neutral,
        })
    }

    /// DOT text with `L_`/`R_` vertex prefixes and canonical ordering.
    pub fn to_dot(&self) -> String {
        let name = match &self.kind {
            GraphKind::Uniform { k } => format!("ext_{}_{}", self.word_label(), k),
            GraphKind::Generalized => format!("ext_{}_UV", self.word_label()),
        };
        let mut out = String::new();
        writeln!(out, "graph \"{name}\" {{").unwrap();
        for u in &self.left {
            writeln!(out, "  \"L_{u}\";").unwrap();
        }
        for v in &self.right {
            writeln!(out, "  \"R_{v}\";").unwrap();
        }
        for (u, v) in &self.edges {
            writeln!(out, "  \"L_{u}\" -- \"R_{v}\";").unwrap();
        }
        out.push_str("}\n");
        out
    }

    fn word_label(&self) -> String {
        if self.word.is_empty() {
            "eps".to_owned()
        } else {
            self.word.to_string()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::language::{FactorLanguage, DEFAULT_ITERATION_CAP};
    use crate::words::Morphism;

    fn lang(rules: &str, horizon: usize) -> FactorLanguage {
        let m = Morphism::parse(rules).unwrap();
        FactorLanguage::from_substitution(&m, horizon, DEFAULT_ITERATION_CAP).unwrap()
    }

    fn graph(lang: &FactorLanguage, w: &str, k: usize) -> ExtensionGraph {
        let word = lang.alphabet().parse_word(w).unwrap();
        ExtensionGraph::uniform(lang, &word, k).unwrap()
    }

    fn edge_strings(g: &ExtensionGraph) -> Vec<(String, String)> {
        g.edges().iter().map(|(u, v)| (u.to_string(), v.to_string())).collect()
    }

    fn pair(a: &str, b: &str) -> (String, String) {
        (a.to_owned(), b.to_owned())
    }

    #[test]
    fn fibonacci_e1_of_a_is_a_simple_tree() {
        let fib = lang("a -> ab\nb -> a", 8);
        let g = graph(&fib, "a", 1);
        assert_eq!(
            edge_strings(&g),
            vec![pair("a", "b"), pair("b", "a"), pair("b", "b")]
        );
        assert!(g.is_tree());
        assert_eq!(g.diameter().unwrap(), 3);
        assert!(g.is_simple_tree());
        assert_eq!(g.multiplicity().unwrap(), 0);
        assert_eq!(g.neutrality_class().unwrap(), Neutrality::Neutral);
    }

    #[test]
    fn fibonacci_e3_of_a_is_a_tree_but_not_simple() {
        let fib = lang("a -> ab\nb -> a", 12);
        let g = graph(&fib, "a", 3);
        assert_eq!(
            edge_strings(&g),
            vec![
                pair("aab", "aba"),
                pair("aab", "baa"),
                pair("aba", "baa"),
                pair("aba", "bab"),
                pair("bab", "aba"),
            ]
        );
        assert!(g.is_tree());
        assert_eq!(g.diameter().unwrap(), 5);
        assert!(!g.is_simple_tree());
        assert_eq!(g.multiplicity(), Err(Error::NotOrderOne));
    }

    #[test]
    fn chacon_strong_and_weak_words() {
        let chacon = lang("a -> aabc\nb -> bc\nc -> abc", 10);
        let strong = graph(&chacon, "abc", 1);
        assert_eq!(
            edge_strings(&strong),
            vec![pair("a", "a"), pair("a", "b"), pair("c", "a"), pair("c", "b")]
        );
        assert!(strong.is_connected());
        assert!(!strong.is_acyclic());
        assert!(!strong.is_tree());
        assert_eq!(strong.multiplicity().unwrap(), 1);
        assert_eq!(strong.neutrality_class().unwrap(), Neutrality::Strong);

        let weak = graph(&chacon, "bca", 1);
        assert_eq!(edge_strings(&weak), vec![pair("a", "a"), pair("c", "b")]);
        assert!(!weak.is_connected());
        assert!(weak.is_acyclic());
        assert_eq!(weak.multiplicity().unwrap(), -1);
        assert_eq!(weak.neutrality_class().unwrap(), Neutrality::Weak);
    }

    #[test]
    fn specular_empty_word_graph_is_disconnected() {
        let spec = lang("a -> ab\nb -> cda\nc -> cd\nd -> abc", 8);
        let g = graph(&spec, "", 1);
        assert_eq!(
            edge_strings(&g),
            vec![
                pair("a", "b"),
                pair("a", "c"),
                pair("b", "c"),
                pair("c", "a"),
                pair("c", "d"),
                pair("d", "a"),
            ]
        );
        assert!(!g.is_connected());
        assert!(g.is_acyclic());
        assert!(!g.is_tree());
        assert_eq!(g.diameter(), Err(Error::DiameterOfDisconnected));
    }

    #[test]
    fn generalized_matches_uniform_for_letter_codes() {
        let fib = lang("a -> ab\nb -> a", 10);
        let letters = CodeSet::new(
            fib.factors(1).unwrap().iter().cloned().collect(),
        )
        .unwrap();
        for w in ["", "a", "ab", "aba"] {
            let word = fib.alphabet().parse_word(w).unwrap();
            let g1 = ExtensionGraph::uniform(&fib, &word, 1).unwrap();
            let g2 = ExtensionGraph::generalized(&fib, &word, &letters, &letters).unwrap();
            assert_eq!(g1.edges(), g2.edges());
        }
    }

    #[test]
    fn generalized_fibonacci_examples() {
        let fib = lang("a -> ab\nb -> a", 10);
        let a = fib.alphabet().clone();
        let parse_code = |words: &[&str]| {
            CodeSet::new(words.iter().map(|w| a.parse_word(w).unwrap()).collect()).unwrap()
        };
        let letters = parse_code(&["a", "b"]);

        let v = parse_code(&["aa", "ab", "b"]);
        let g = ExtensionGraph::generalized(&fib, &Word::empty(), &letters, &v).unwrap();
        assert_eq!(
            edge_strings(&g),
            vec![pair("a", "b"), pair("a", "ab"), pair("b", "aa"), pair("b", "ab")]
        );
        assert!(g.is_tree());

        let u = parse_code(&["aa", "ba", "b"]);
        let w = a.parse_word("a").unwrap();
        let g = ExtensionGraph::generalized(&fib, &w, &u, &letters).unwrap();
        assert_eq!(
            edge_strings(&g),
            vec![pair("b", "a"), pair("b", "b"), pair("ba", "b")]
        );
        assert!(g.is_tree());
    }

    #[test]
    fn generalized_rejects_bad_codes() {
        let fib = lang("a -> ab\nb -> a", 10);
        let a = fib.alphabet().clone();
        let parse_code = |words: &[&str]| {
            CodeSet::new(words.iter().map(|w| a.parse_word(w).unwrap()).collect()).unwrap()
        };
        let letters = parse_code(&["a", "b"]);
        let not_suffix = parse_code(&["a", "ba"]);
        let w = Word::empty();
        assert!(matches!(
            ExtensionGraph::generalized(&fib, &w, &not_suffix, &letters),
            Err(Error::NotASuffixCode(_, _))
        ));
        // {aa, b} is bifix but not right-complete: ab has no prefix in it.
        let incomplete = parse_code(&["aa", "b"]);
        assert!(matches!(
            ExtensionGraph::generalized(&fib, &w, &letters, &incomplete),
            Err(Error::NotComplete(_))
        ));
    }

    #[test]
    fn dot_output_is_stable() {
        let fib = lang("a -> ab\nb -> a", 8);
        let g = graph(&fib, "a", 1);
        assert_eq!(
            g.to_dot(),
            "graph \"ext_a_1\" {\n  \"L_a\";\n  \"L_b\";\n  \"R_a\";\n  \"R_b\";\n  \
             \"L_a\" -- \"R_b\";\n  \"L_b\" -- \"R_a\";\n  \"L_b\" -- \"R_b\";\n}\n"
        );
    }

    #[test]
    fn trees_are_neutral() {
        let fib = lang("a -> ab\nb -> a", 12);
        for n in 0..=8 {
            for w in fib.factors(n).unwrap() {
                let g = ExtensionGraph::uniform(&fib, w, 1).unwrap();
                if g.is_tree() {
                    assert_eq!(g.multiplicity().unwrap(), 0, "word {w}");
                }
                // connectivity/acyclicity sign constraints
                let m = g.multiplicity().unwrap();
                if g.is_acyclic() {
                    assert!(m <= 0);
                }
                if g.is_connected() {
                    assert!(m >= 0);
                }
            }
        }
    }

    #[test]
    fn no_isolated_vertices_in_uniform_graphs() {
        let chacon = lang("a -> aabc\nb -> bc\nc -> abc", 12);
        for n in 0..=8 {
            for w in chacon.factors(n).unwrap() {
                let g = ExtensionGraph::uniform(&chacon, w, 1).unwrap();
                for u in g.left_vertices() {
                    assert!(
                        g.edges().iter().any(|(x, _)| x == u),
                        "isolated left vertex {u} at {w}"
                    );
                }
                for v in g.right_vertices() {
                    assert!(
                        g.edges().iter().any(|(_, y)| y == v),
                        "isolated right vertex {v} at {w}"
                    );
                }
            }
        }
    }
}
