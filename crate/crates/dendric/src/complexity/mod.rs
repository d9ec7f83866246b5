//! Complexity sequences, special-word inventories and related diagnostics.

mod asymptotic;

pub use asymptotic::{asymptotic_classes, AsymptoticClass, AsymptoticClassReport, ClassStructure};

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::extension::ExtensionGraph;
use crate::language::FactorLanguage;
use crate::words::Word;

/// Complexity and special-word data up to the horizon.
///
/// `p` holds `p_0..p_L`; `s` holds `s_n = p_{n+1} − p_n` for `n < L`;
/// `b` holds `b_n = s_{n+1} − s_n` for `n < L − 1`. Special sets are
/// computed for `n ≤ L − 1` (they need one extra symbol of context).
#[derive(Clone, Debug)]
pub struct ComplexityProfile {
    pub p: Vec<usize>,
    pub s: Vec<i64>,
    pub b: Vec<i64>,
    pub left_special: Vec<BTreeSet<Word>>,
    pub right_special: Vec<BTreeSet<Word>>,
    pub bispecial: Vec<BTreeSet<Word>>,
}

pub fn complexity_profile(lang: &FactorLanguage) -> Result<ComplexityProfile> {
    let horizon = lang.horizon();
    if horizon < 2 {
        return Err(Error::InsufficientHorizon { required: 2, available: horizon });
    }
    let p: Vec<usize> = (0..=horizon).map(|n| lang.count(n).unwrap()).collect();
    let s: Vec<i64> = (0..horizon).map(|n| p[n + 1] as i64 - p[n] as i64).collect();
    let b: Vec<i64> = (0..horizon - 1).map(|n| s[n + 1] - s[n]).collect();
    let mut left_special = Vec::new();
    let mut right_special = Vec::new();
    let mut bispecial = Vec::new();
    for n in 0..horizon {
        let mut ls = BTreeSet::new();
        let mut rs = BTreeSet::new();
        let mut bs = BTreeSet::new();
        for w in lang.factors(n)? {
            let l = lang.l1(w)?;
            let r = lang.r1(w)?;
            if l > 1 {
                ls.insert(w.clone());
            }
            if r > 1 {
                rs.insert(w.clone());
            }
            if l > 1 && r > 1 {
                bs.insert(w.clone());
            }
        }
        left_special.push(ls);
        right_special.push(rs);
        bispecial.push(bs);
    }
    Ok(ComplexityProfile { p, s, b, left_special, right_special, bispecial })
}

/// Both sides of the first-difference identities at one length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CassaigneReport {
    pub n: usize,
    pub s_n: i64,
    pub sum_left_minus_one: i64,
    pub sum_right_minus_one: i64,
    pub b_n: i64,
    pub sum_multiplicity: i64,
    pub pass: bool,
}

/// Verifies `s_n = Σ(ℓ(w)−1) = Σ(r(w)−1)` and `b_n = Σ m(w)` over `L_n`.
pub fn check_cassaigne(lang: &FactorLanguage, n: usize) -> Result<CassaigneReport> {
    if n + 2 > lang.horizon() {
        return Err(Error::InsufficientHorizon { required: n + 2, available: lang.horizon() });
    }
    let s_n = lang.count(n + 1)? as i64 - lang.count(n)? as i64;
    let b_n = lang.count(n + 2)? as i64 - 2 * lang.count(n + 1)? as i64 + lang.count(n)? as i64;
    let mut sum_left_minus_one = 0i64;
    let mut sum_right_minus_one = 0i64;
    let mut sum_multiplicity = 0i64;
    for w in lang.factors(n)? {
        sum_left_minus_one += lang.l1(w)? as i64 - 1;
        sum_right_minus_one += lang.r1(w)? as i64 - 1;
        sum_multiplicity += ExtensionGraph::uniform(lang, w, 1)?.multiplicity()?;
    }
    let pass =
        s_n == sum_left_minus_one && s_n == sum_right_minus_one && b_n == sum_multiplicity;
    Ok(CassaigneReport { n, s_n, sum_left_minus_one, sum_right_minus_one, b_n, sum_multiplicity, pass })
}

/// A node of the left-special prefix forest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LsNode {
    pub word: Word,
    /// `ℓ_1` of the word.
    pub l: usize,
    /// Index of the longest proper left-special prefix inside the range.
    pub parent: Option<usize>,
    /// More than one left-special child, or a child with a different `ℓ`.
    pub flagged: bool,
}

/// Left-special words of lengths `from..=to`, linked by longest proper
/// left-special prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LsForest {
    pub from: usize,
    pub to: usize,
    pub nodes: Vec<LsNode>,
}

impl LsForest {
    pub fn level(&self, n: usize) -> impl Iterator<Item = &LsNode> {
        self.nodes.iter().filter(move |node| node.word.len() == n)
    }

    pub fn roots(&self) -> impl Iterator<Item = &LsNode> {
        self.nodes.iter().filter(|node| node.parent.is_none())
    }

    pub fn to_json(&self) -> String {
        let items: Vec<serde_json::Value> = self
            .nodes
            .iter()
            .map(|node| {
                serde_json::json!({
                    "word": node.word.to_string(),
                    "l": node.l,
                    "parent": node.parent,
                    "flagged": node.flagged,
                })
            })
            .collect();
        serde_json::to_string_pretty(&serde_json::json!({
            "from": self.from,
            "to": self.to,
            "nodes": items,
        }))
        .expect("serialization")
    }
}

pub fn ls_forest(lang: &FactorLanguage, from: usize, to: usize) -> Result<LsForest> {
    if to + 1 > lang.horizon() {
        return Err(Error::InsufficientHorizon { required: to + 1, available: lang.horizon() });
    }
    if from > to {
        return Err(Error::Invalid(format!("empty length range {from}..{to}")));
    }
    let mut nodes: Vec<LsNode> = Vec::new();
    for n in from..=to {
        for w in lang.factors(n)? {
            if lang.l1(w)? > 1 {
                // Longest proper left-special prefix with length >= from.
                let parent = (from..n)
                    .rev()
                    .find_map(|k| {
                        let prefix = w.slice(0..k);
                        nodes.iter().position(|node| node.word == prefix)
                    });
                nodes.push(LsNode { word: w.clone(), l: lang.l1(w)?, parent, flagged: false });
            }
        }
    }
    // Flag branching and ℓ-changing nodes.
    for i in 0..nodes.len() {
        let children: Vec<usize> = (0..nodes.len())
            .filter(|&j| nodes[j].parent == Some(i) && nodes[j].word.len() == nodes[i].word.len() + 1)
            .collect();
        let branching = children.len() > 1;
        let l_change = children.iter().any(|&j| nodes[j].l != nodes[i].l);
        if branching || l_change {
            nodes[i].flagged = true;
        }
    }
    Ok(LsForest { from, to, nodes })
}

/// Outcome of the finite-horizon `ω(X)` diagnostic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OmegaEstimate {
    /// `s_n` was not constant over the last three observable lengths.
    Unstable,
    Stable {
        s_limit: i64,
        /// Number of left-special words at the deepest observable length.
        chain_count: usize,
        /// `Σ (ℓ(u) − 1)` over those words.
        chain_sum: i64,
        /// Left-special branching persists into the upper half of the
        /// observable range, so the `s_limit` candidate should not be
        /// read as `ω(X)` (the Chacon failure mode).
        persistent_branching: bool,
    },
}

pub fn omega_estimate(lang: &FactorLanguage) -> Result<OmegaEstimate> {
    let horizon = lang.horizon();
    if horizon < 5 {
        return Ok(OmegaEstimate::Unstable);
    }
    let top = horizon - 1; // deepest length with observable l_1
    let s = |n: usize| -> Result<i64> {
        Ok(lang.count(n + 1)? as i64 - lang.count(n)? as i64)
    };
    let s_limit = s(top - 1)?;
    if s(top - 2)? != s_limit || s(top - 3)? != s_limit {
        return Ok(OmegaEstimate::Unstable);
    }
    let mut chain_count = 0;
    let mut chain_sum = 0i64;
    for w in lang.factors(top)? {
        let l = lang.l1(w)?;
        if l > 1 {
            chain_count += 1;
            chain_sum += l as i64 - 1;
        }
    }
    // Prop-4-style check over the upper half of the observable range.
    let persistent_branching =
        !crate::dendricity::check_left_special_criterion(lang, top / 2, horizon - 2)?
            .violations
            .is_empty();
    Ok(OmegaEstimate::Stable { s_limit, chain_count, chain_sum, persistent_branching })
}

/// CSV rows `(n, p_n, s_n, b_n, |LS_n|, |RS_n|)`.
pub fn profile_csv(profile: &ComplexityProfile) -> String {
    let mut out = String::from("n,p,s,b,ls,rs\n");
    for n in 0..profile.p.len() {
        let s = profile.s.get(n).map(|v| v.to_string()).unwrap_or_default();
        let b = profile.b.get(n).map(|v| v.to_string()).unwrap_or_default();
        let ls = profile
            .left_special
            .get(n)
            .map(|set| set.len().to_string())
            .unwrap_or_default();
        let rs = profile
            .right_special
            .get(n)
            .map(|set| set.len().to_string())
            .unwrap_or_default();
        out.push_str(&format!("{n},{},{s},{b},{ls},{rs}\n", profile.p[n]));
    }
    out
}
