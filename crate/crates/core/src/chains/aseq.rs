//! The sequences `n_r.k_m.….k_1` that linear chains can realize, and their continued fractions.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::Q;
use crate::error::{Error, Result};

/// One step of a derivation from `1.1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rule {
    /// `a_0.a_t.….a_1 → (a_0+1).1.(a_t+1).a_{t−1}.….a_1`
    Head,
    /// Insert `1` between `a_{j+1}` and `a_j`, incrementing both.
    Insert(usize),
}

/// `a_0.a_t.….a_1`, stored head first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ASequence {
    pub entries: Vec<u64>,
    pub derivation: Vec<Rule>,
}

impl ASequence {
    pub fn seed() -> Self {
        ASequence { entries: vec![1, 1], derivation: Vec::new() }
    }

    pub fn head(&self) -> u64 {
        self.entries[0]
    }

    /// `a_t, …, a_1`.
    pub fn tail(&self) -> &[u64] {
        &self.entries[1..]
    }

    /// `t`, the number of entries after the head.
    pub fn len(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `a_i` for `1 ≤ i ≤ t`.
    pub fn a(&self, i: usize) -> u64 {
        self.entries[self.len() + 1 - i]
    }

    pub fn apply(&self, rule: Rule) -> Option<Self> {
        let t = self.len();
        let mut e = self.entries.clone();
        match rule {
            Rule::Head => {
                e[0] += 1;
                e[1] += 1;
                e.insert(1, 1);
            }
            Rule::Insert(j) => {
                if j == 0 || j >= t {
                    return None;
                }
                // a_{j+1} sits at t + 1 − (j + 1) = t − j
                let pos = t - j;
                e[pos] += 1;
                e[pos + 1] += 1;
                e.insert(pos + 1, 1);
            }
        }
        let mut derivation = self.derivation.clone();
        derivation.push(rule);
        Some(ASequence { entries: e, derivation })
    }

    /// `a_0 = [a_t, …, a_1]`.
    pub fn satisfies_head_identity(&self) -> bool {
        continued_fraction(self.tail()).is_ok_and(|v| v == Q::from_integer(self.head().into()))
    }
}

impl fmt::Display for ASequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join("."))
    }
}

/// `[a_t, …, a_1] = 1/(a_t − 1/(a_{t−1} − ⋯ − 1/a_1))`, with `seq = [a_t, …, a_1]`.
pub fn continued_fraction(seq: &[u64]) -> Result<Q> {
    let Some((&last, rest)) = seq.split_last() else {
        return Err(Error::DivisionByZero("empty continued fraction".into()));
    };
    let mut x = Q::from_integer(last.into());
    for &a in rest.iter().rev() {
        if x.is_zero() {
            return Err(Error::DivisionByZero(format!("vanishing tail in {seq:?}")));
        }
        x = Q::from_integer(a.into()) - x.recip();
    }
    if x.is_zero() {
        return Err(Error::DivisionByZero(format!("vanishing tail in {seq:?}")));
    }
    Ok(x.recip())
}

/// Every sequence reachable from `1.1` in at most `depth` rule applications,
/// each with a shortest derivation, ordered by length and then lexicographically.
#[allow(non_snake_case)]
pub fn generate_A(depth: usize) -> Vec<ASequence> {
    let mut seen: BTreeMap<Vec<u64>, ASequence> = BTreeMap::new();
    let mut queue = VecDeque::from([(ASequence::seed(), 0usize)]);
    seen.insert(vec![1, 1], ASequence::seed());
    while let Some((s, d)) = queue.pop_front() {
        if d == depth {
            continue;
        }
        let rules = std::iter::once(Rule::Head).chain((1..s.len()).map(Rule::Insert));
        for r in rules {
            if let Some(n) = s.apply(r) {
                if !seen.contains_key(&n.entries) {
                    seen.insert(n.entries.clone(), n.clone());
                    queue.push_back((n, d + 1));
                }
            }
        }
    }
    let mut out: Vec<ASequence> = seen.into_values().collect();
    out.sort_by(|a, b| a.entries.len().cmp(&b.entries.len()).then_with(|| a.entries.cmp(&b.entries)));
    out
}

/// First violated inequality of the positivity and monotonicity bounds on
/// sub-continued-fractions, or `None` if all hold.
pub fn lemma2_violation(seq: &ASequence) -> Option<String> {
    let t = seq.len();
    let sub = |l: usize, h: usize| -> Result<Q> {
        let v: Vec<u64> = (h..=l).rev().map(|i| seq.a(i)).collect();
        continued_fraction(&v)
    };
    if t >= 2 {
        for l in 1..=t {
            for h in 1..=l {
                match sub(l, h) {
                    Ok(v) if v.is_positive() => {}
                    Ok(v) => return Some(format!("[a_{l}..a_{h}] = {v} is not positive")),
                    Err(e) => return Some(format!("[a_{l}..a_{h}]: {e}")),
                }
            }
        }
    }
    let full = match sub(t, 1) {
        Ok(v) => v,
        Err(e) => return Some(format!("[a_{t}..a_1]: {e}")),
    };
    for i in 0..t.saturating_sub(1) {
        match sub(t, t - i) {
            Ok(v) if v.is_positive() && v < full => {}
            Ok(v) => return Some(format!("[a_{t}..a_{}] = {v} is outside (0, {full})", t - i)),
            Err(e) => return Some(format!("[a_{t}..a_{}]: {e}", t - i)),
        }
    }
    None
}

pub fn check_lemma2(seq: &ASequence) -> bool {
    lemma2_violation(seq).is_none()
}

impl ASequence {
    /// Wraps an arbitrary sequence without a derivation, for checks on
    /// candidates that may not be members.
    pub fn unchecked(entries: Vec<u64>) -> Self {
        assert!(entries.len() >= 2, "a head and at least one entry");
        ASequence { entries, derivation: Vec::new() }
    }
}
