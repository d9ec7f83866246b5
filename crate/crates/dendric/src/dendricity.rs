//! Horizon-qualified dendricity verdicts and related scans.
//!
//! Every verdict here is a certificate about the scanned lengths only;
//! nothing is claimed about the infinite shift.

use crate::error::{Error, Result};
use crate::extension::ExtensionGraph;
use crate::language::FactorLanguage;
use crate::words::Word;

/// Why an extension graph failed to be a tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailureReason {
    Cyclic,
    Disconnected,
}

impl std::fmt::Display for FailureReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FailureReason::Cyclic => "cyclic",
            FailureReason::Disconnected => "disconnected",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub word: Word,
    pub reason: FailureReason,
    pub multiplicity: i64,
}

/// Status of a dendricity scan, qualified by the scanned length range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DendricityStatus {
    DendricWithinHorizon,
    EventuallyDendricWithinHorizon(usize),
    RejectedWithinHorizon,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DendricityVerdict {
    pub scanned_max_length: usize,
    pub failures: Vec<Failure>,
    /// Smallest `m` such that every scanned word of length `>= m` has a
    /// tree extension graph; `None` when the longest scanned length fails.
    pub threshold_estimate: Option<usize>,
    pub status: DendricityStatus,
}

impl DendricityVerdict {
    pub fn to_json(&self) -> String {
        let failures: Vec<serde_json::Value> = self
            .failures
            .iter()
            .map(|f| {
                serde_json::json!({
                    "word": f.word.to_string(),
                    "reason": f.reason.to_string(),
                    "multiplicity": f.multiplicity,
                })
            })
            .collect();
        let status = match &self.status {
            DendricityStatus::DendricWithinHorizon => "dendric_within_horizon".to_owned(),
            DendricityStatus::EventuallyDendricWithinHorizon(m) => {
                format!("eventually_dendric_within_horizon({m})")
            }
            DendricityStatus::RejectedWithinHorizon => "rejected_within_horizon".to_owned(),
        };
        serde_json::to_string_pretty(&serde_json::json!({
            "status": status,
            "threshold": self.threshold_estimate,
            "failures": failures,
            "scanned_max_length": self.scanned_max_length,
        }))
        .expect("serialization")
    }
}

/// Builds `E_1(w)` for every word with `|w| <= max_len` and records the
/// non-tree words.
pub fn dendricity_scan(lang: &FactorLanguage, max_len: usize) -> Result<DendricityVerdict> {
    if max_len + 2 > lang.horizon() {
        return Err(Error::InsufficientHorizon {
            required: max_len + 2,
            available: lang.horizon(),
        });
    }
    let mut failures = Vec::new();
    for n in 0..=max_len {
        for w in lang.factors(n)? {
            let g = ExtensionGraph::uniform(lang, w, 1)?;
            if !g.is_tree() {
                let reason = if g.is_connected() {
                    FailureReason::Cyclic
                } else {
                    FailureReason::Disconnected
                };
                failures.push(Failure { word: w.clone(), reason, multiplicity: g.multiplicity()? });
            }
        }
    }
    let max_fail = failures.iter().map(|f| f.word.len()).max();
    let (threshold_estimate, status) = match max_fail {
        None => (Some(0), DendricityStatus::DendricWithinHorizon),
        Some(l) if l < max_len => (
            Some(l + 1),
            DendricityStatus::EventuallyDendricWithinHorizon(l + 1),
        ),
        Some(_) => (None, DendricityStatus::RejectedWithinHorizon),
    };
    Ok(DendricityVerdict { scanned_max_length: max_len, failures, threshold_estimate, status })
}

/// One violation of the unique-left-special-extension criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LsCriterionViolation {
    pub word: Word,
    /// The right extensions `wb` that are left-special.
    pub ls_extensions: Vec<Word>,
    pub l_word: usize,
    pub l_extensions: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LsCriterionReport {
    pub n: usize,
    pub max_len: usize,
    pub violations: Vec<LsCriterionViolation>,
}

/// For each left-special `w` with `n <= |w| < max_len`: checks that exactly
/// one `wb` is left-special and that `ℓ(wb) = ℓ(w)`.
pub fn check_left_special_criterion(
    lang: &FactorLanguage,
    n: usize,
    max_len: usize,
) -> Result<LsCriterionReport> {
    if max_len + 2 > lang.horizon() {
        return Err(Error::InsufficientHorizon {
            required: max_len + 2,
            available: lang.horizon(),
        });
    }
    let mut violations = Vec::new();
    for len in n..max_len {
        for w in lang.factors(len)? {
            let l_word = lang.l1(w)?;
            if l_word <= 1 {
                continue;
            }
            let mut ls_extensions = Vec::new();
            let mut l_extensions = Vec::new();
            for b in lang.right_ext(w, 1)? {
                let wb = w.concat(&b);
                let l = lang.l1(&wb)?;
                if l > 1 {
                    ls_extensions.push(wb);
                    l_extensions.push(l);
                }
            }
            let ok = ls_extensions.len() == 1 && l_extensions[0] == l_word;
            if !ok {
                violations.push(LsCriterionViolation { word: w.clone(), ls_extensions, l_word, l_extensions });
            }
        }
    }
    Ok(LsCriterionReport { n, max_len, violations })
}

/// Least `n*` such that every scanned word of length `>= n*` has a simple
/// tree `E_k`; `None` if the longest scanned length already fails.
pub fn check_simple_tree_horizon(
    lang: &FactorLanguage,
    k: usize,
    max_len: usize,
) -> Result<Option<usize>> {
    if max_len + 2 * k > lang.horizon() {
        return Err(Error::InsufficientHorizon {
            required: max_len + 2 * k,
            available: lang.horizon(),
        });
    }
    let mut max_fail = None;
    for n in 0..=max_len {
        for w in lang.factors(n)? {
            let g = ExtensionGraph::uniform(lang, w, k)?;
            if !g.is_simple_tree() {
                max_fail = Some(n);
            }
        }
    }
    Ok(match max_fail {
        None => Some(0),
        Some(l) if l < max_len => Some(l + 1),
        Some(_) => None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderEquivalenceReport {
    pub n: usize,
    pub m: usize,
    pub max_len: usize,
    /// Words where `is_tree(E_n)` and `is_tree(E_{n+1})` disagree.
    pub discrepancies: Vec<Word>,
    /// Whether every scanned `E_n` was a tree.
    pub all_trees_low: bool,
    /// Whether every scanned `E_{n+1}` was a tree.
    pub all_trees_high: bool,
}

impl OrderEquivalenceReport {
    /// Whether every scanned graph of both orders was a tree.
    pub fn all_trees(&self) -> bool {
        self.all_trees_low && self.all_trees_high
    }

    /// The universally quantified equivalence: "every scanned `E_n` is a
    /// tree" holds exactly when "every scanned `E_{n+1}` is a tree" does.
    /// This can hold even when individual words disagree.
    pub fn universal_equivalent(&self) -> bool {
        self.all_trees_low == self.all_trees_high
    }
}

/// Checks `is_tree(E_n(w)) == is_tree(E_{n+1}(w))` for every scanned word
/// of length in `m..=max_len`.
pub fn check_order_equivalence(
    lang: &FactorLanguage,
    n: usize,
    m: usize,
    max_len: usize,
) -> Result<OrderEquivalenceReport> {
    if max_len + 2 * (n + 1) > lang.horizon() {
        return Err(Error::InsufficientHorizon {
            required: max_len + 2 * (n + 1),
            available: lang.horizon(),
        });
    }
    let mut discrepancies = Vec::new();
    let mut all_trees_low = true;
    let mut all_trees_high = true;
    for len in m..=max_len {
        for w in lang.factors(len)? {
            let t1 = ExtensionGraph::uniform(lang, w, n)?.is_tree();
            let t2 = ExtensionGraph::uniform(lang, w, n + 1)?.is_tree();
            if t1 != t2 {
                discrepancies.push(w.clone());
            }
            all_trees_low &= t1;
            all_trees_high &= t2;
        }
    }
    Ok(OrderEquivalenceReport { n, m, max_len, discrepancies, all_trees_low, all_trees_high })
}

/// Least scanned `m` from which every word is neutral, or `None` when the
/// longest scanned length still has non-neutral words.
pub fn eventually_neutral_scan(lang: &FactorLanguage, max_len: usize) -> Result<Option<usize>> {
    if max_len + 2 > lang.horizon() {
        return Err(Error::InsufficientHorizon {
            required: max_len + 2,
            available: lang.horizon(),
        });
    }
    let mut max_fail = None;
    for n in 0..=max_len {
        for w in lang.factors(n)? {
            if ExtensionGraph::uniform(lang, w, 1)?.multiplicity()? != 0 {
                max_fail = Some(n);
            }
        }
    }
    Ok(match max_fail {
        None => Some(0),
        Some(l) if l < max_len => Some(l + 1),
        Some(_) => None,
    })
}
