//! Asymptotic classes of template-defined shifts.
//!
//! A template `^w(u) m (v)^w` describes one orbit; its shift closure also
//! contains the periodic orbits `^w(u)(u)^w` and `^w(v)(v)^w`. Orbits are
//! asymptotically equivalent when their right tails eventually coincide,
//! which for eventually periodic points means equal right-period necklaces.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::Result;
use crate::language::Template;
use crate::words::Word;

/// Shape of the tree `T(C)` attached to a class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassStructure {
    Tree,
    ClusterOfTrees,
}

/// A right-infinite left-special tail of a class, as preperiod + period.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LsTail {
    pub preperiod: Word,
    pub period: Word,
    /// `ℓ_C`: number of distinct letters preceding this tail in the class.
    pub l: usize,
}

/// One asymptotic class with at least two orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymptoticClass {
    pub orbit_count: usize,
    pub omega: usize,
    pub ls_tails: Vec<LsTail>,
    pub structure: ClassStructure,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymptoticClassReport {
    /// Non-trivial classes only (two or more orbits).
    pub classes: Vec<AsymptoticClass>,
    /// Total number of distinct orbits, including singleton classes.
    pub total_orbits: usize,
    /// `Σ ω(C)` over all classes.
    pub omega_total: usize,
}

/// A normalized eventually periodic orbit `^w(lp) mid (rp)^w`.
///
/// Normal form: both periods primitive, the middle maximally absorbed into
/// the periods, and periodic orbits rotated to the minimal representative.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Orbit {
    lp: Word,
    mid: Word,
    rp: Word,
}

fn min_rotation(w: &Word) -> Word {
    let mut best = w.clone();
    let mut cur = w.clone();
    for _ in 1..w.len() {
        cur = cur.rotate_left();
        if cur.symbols() < best.symbols() {
            best = cur.clone();
        }
    }
    best
}

impl Orbit {
    fn normalize(lp: &Word, mid: &Word, rp: &Word) -> Orbit {
        let mut lp = lp.primitive_root();
        let mut rp = rp.primitive_root();
        let mut mid = mid.clone();
        loop {
            if !mid.is_empty() && mid.symbols().last() == rp.symbols().last() {
                rp = rp.rotate_right();
                mid = mid.slice(0..mid.len() - 1);
                continue;
            }
            if !mid.is_empty() && mid.symbols().first() == lp.symbols().first() {
                lp = lp.rotate_left();
                mid = mid.slice(1..mid.len());
                continue;
            }
            break;
        }
        if mid.is_empty() && lp == rp {
            // Purely periodic: pick the minimal rotation as representative.
            let v = min_rotation(&lp);
            return Orbit { lp: v.clone(), mid, rp: v };
        }
        Orbit { lp, mid, rp }
    }

    fn is_periodic(&self) -> bool {
        self.mid.is_empty() && self.lp == self.rp
    }
}

/// The orbits of the shift closure: one per template plus the two periodic
/// orbits of each template, deduplicated.
fn orbits_of(templates: &[Template]) -> BTreeSet<Orbit> {
    let mut out = BTreeSet::new();
    for t in templates {
        out.insert(Orbit::normalize(&t.left_period, &t.middle, &t.right_period));
        out.insert(Orbit::normalize(&t.left_period, &Word::empty(), &t.left_period));
        out.insert(Orbit::normalize(&t.right_period, &Word::empty(), &t.right_period));
    }
    out
}

/// Right-infinite tail in normal form: (finite preperiod, primitive period).
fn normalize_tail(preperiod: &Word, period: &Word) -> (Word, Word) {
    let mut p = preperiod.clone();
    let mut v = period.primitive_root();
    while !p.is_empty() && p.symbols().last() == v.symbols().last() {
        v = v.rotate_right();
        p = p.slice(0..p.len() - 1);
    }
    (p, v)
}

/// Enumerates `(tail, preceding letter)` pairs of one orbit over a window
/// wide enough to see every branch point of its class.
fn tails_with_predecessors(orbit: &Orbit, reach: i64) -> Vec<((Word, Word), Word)> {
    let t = Template {
        left_period: orbit.lp.clone(),
        middle: orbit.mid.clone(),
        right_period: orbit.rp.clone(),
    };
    let m = orbit.mid.len() as i64;
    let p = orbit.rp.len() as i64;
    let mut out = Vec::new();
    for i in -reach..=m + reach {
        // Cut at the first period boundary at or after i, so the suffix from
        // the cut is exactly (rp)^w.
        let cut = if i > m { m + (i - m + p - 1) / p * p } else { m };
        let finite = t.window(i, cut);
        let tail = normalize_tail(&finite, &orbit.rp);
        let pred = Word::single(t.symbol_at(i - 1).clone());
        out.push((tail, pred));
    }
    out
}

/// Groups the orbits of a template-defined shift into asymptotic classes
/// and computes `ω(C)` and the left-special tails of each class.
pub fn asymptotic_classes(templates: &[Template]) -> Result<AsymptoticClassReport> {
    let orbits = orbits_of(templates);
    let total_orbits = orbits.len();
    // Group by right-period necklace (the eventual right tail up to shift).
    let mut by_tail: BTreeMap<Word, Vec<&Orbit>> = BTreeMap::new();
    for orbit in &orbits {
        by_tail.entry(min_rotation(&orbit.rp)).or_default().push(orbit);
    }
    let mut classes = Vec::new();
    let mut omega_total = 0;
    for group in by_tail.values() {
        let orbit_count = group.len();
        if orbit_count < 2 {
            continue;
        }
        let omega = orbit_count - 1;
        omega_total += omega;
        let reach = group
            .iter()
            .map(|o| 2 * (o.lp.len() + o.rp.len() + o.mid.len()) as i64 + 2)
            .max()
            .unwrap();
        let mut preds: BTreeMap<(Word, Word), BTreeSet<Word>> = BTreeMap::new();
        for orbit in group {
            for (tail, pred) in tails_with_predecessors(orbit, reach) {
                preds.entry(tail).or_default().insert(pred);
            }
        }
        let ls_tails: Vec<LsTail> = preds
            .into_iter()
            .filter(|(_, set)| set.len() >= 2)
            .map(|((preperiod, period), set)| LsTail { preperiod, period, l: set.len() })
            .collect();
        let structure = if group.iter().any(|o| o.is_periodic()) {
            ClassStructure::ClusterOfTrees
        } else {
            ClassStructure::Tree
        };
        classes.push(AsymptoticClass { orbit_count, omega, ls_tails, structure });
    }
    Ok(AsymptoticClassReport { classes, total_orbits, omega_total })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::language::Template;
    use crate::words::Alphabet;

    fn templates(alpha: &str, lines: &[&str]) -> Vec<Template> {
        let a = Alphabet::from_chars(alpha).unwrap();
        lines.iter().map(|l| Template::parse(&a, l).unwrap()).collect()
    }

    #[test]
    fn three_template_example() {
        let ts = templates("abcd", &["c | | ab", "d | | ab", "ab | | ab"]);
        let report = asymptotic_classes(&ts).unwrap();
        // orbits: the two heteroclinic ones, (ab)^w, c^w, d^w
        assert_eq!(report.total_orbits, 5);
        assert_eq!(report.classes.len(), 1);
        let c = &report.classes[0];
        assert_eq!(c.orbit_count, 3);
        assert_eq!(c.omega, 2);
        assert_eq!(c.structure, ClassStructure::ClusterOfTrees);
        assert_eq!(c.ls_tails.len(), 1);
        let tail = &c.ls_tails[0];
        assert!(tail.preperiod.is_empty());
        assert_eq!(tail.period.to_string(), "ab");
        assert_eq!(tail.l, 3);
        // Eq: omega = sum (l - 1)
        let sum: usize = c.ls_tails.iter().map(|t| t.l - 1).sum();
        assert_eq!(sum, c.omega);
        assert_eq!(report.omega_total, 2);
    }

    #[test]
    fn single_periodic_orbit() {
        let ts = templates("a", &["a | | a"]);
        let report = asymptotic_classes(&ts).unwrap();
        assert_eq!(report.total_orbits, 1);
        assert!(report.classes.is_empty());
        assert_eq!(report.omega_total, 0);
    }

    #[test]
    fn two_template_example() {
        let ts = templates("abc", &["c | | ab", "ab | | ab"]);
        let report = asymptotic_classes(&ts).unwrap();
        // orbits: heteroclinic, (ab)^w, c^w
        assert_eq!(report.total_orbits, 3);
        assert_eq!(report.classes.len(), 1);
        let c = &report.classes[0];
        assert_eq!(c.orbit_count, 2);
        assert_eq!(c.omega, 1);
        let sum: usize = c.ls_tails.iter().map(|t| t.l - 1).sum();
        assert_eq!(sum, 1);
    }

    #[test]
    fn orbit_normalization_deduplicates() {
        // ^w(ab).(ab)^w and ^w(ba).(ba)^w are the same periodic orbit.
        let ts = templates("ab", &["ab | | ab", "ba | | ba"]);
        let report = asymptotic_classes(&ts).unwrap();
        assert_eq!(report.total_orbits, 1);
        // seam representations of the same orbit collapse too
        let ts = templates("abc", &["c | | ab", "c | a | ba", "c | ab | ab"]);
        let report = asymptotic_classes(&ts).unwrap();
        assert_eq!(report.total_orbits, 3);
        assert_eq!(report.classes[0].orbit_count, 2);
    }
}
