//! Partial deterministic automata for the factor languages of `S_β` and
//! `S'_β`.
//!
//! A missing transition rejects. Completion with a sink happens only inside
//! [`Dfa::minimize`].

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numsys::NumSys;
use crate::realbase::{RealBase, DEFAULT_DEPTH};
use crate::words::{Digit, DigitWord, EPWord};
use crate::Variant;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    transitions: Vec<BTreeMap<Digit, usize>>,
    initial: usize,
    finals: BTreeSet<usize>,
}

/// JSON form: `{"initial":0,"finals":[...],"edges":[[from,digit,to],...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DfaFile {
    pub initial: usize,
    pub finals: Vec<usize>,
    pub edges: Vec<(usize, Digit, usize)>,
}

impl Dfa {
    /// An automaton with `states` states and the given edges. Fails on a
    /// state index out of range or two edges with the same source and label.
    pub fn new(
        states: usize,
        initial: usize,
        finals: impl IntoIterator<Item = usize>,
        edges: impl IntoIterator<Item = (usize, Digit, usize)>,
    ) -> Result<Self> {
        if initial >= states {
            return Err(Error::InvalidArgument(format!("initial state {initial} out of range")));
        }
        let mut transitions = vec![BTreeMap::new(); states];
        for (from, d, to) in edges {
            if from >= states || to >= states {
                return Err(Error::InvalidArgument(format!("edge {from} -{d}-> {to} out of range")));
            }
            if let Some(old) = transitions[from].insert(d, to) {
                if old != to {
                    return Err(Error::InvalidArgument(format!(
                        "state {from} has two edges labelled {d}"
                    )));
                }
            }
        }
        let finals: BTreeSet<usize> = finals.into_iter().collect();
        if let Some(&f) = finals.iter().find(|&&f| f >= states) {
            return Err(Error::InvalidArgument(format!("final state {f} out of range")));
        }
        Ok(Dfa {
            transitions,
            initial,
            finals,
        })
    }

    pub fn num_states(&self) -> usize {
        self.transitions.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn finals(&self) -> &BTreeSet<usize> {
        &self.finals
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals.contains(&q)
    }

    pub fn step(&self, q: usize, d: Digit) -> Option<usize> {
        self.transitions[q].get(&d).copied()
    }

    /// Edges `(from, digit, to)` sorted by source then digit.
    pub fn edges(&self) -> Vec<(usize, Digit, usize)> {
        self.transitions
            .iter()
            .enumerate()
            .flat_map(|(q, m)| m.iter().map(move |(&d, &t)| (q, d, t)))
            .collect()
    }

    /// Largest digit on any edge.
    pub fn max_digit(&self) -> Option<Digit> {
        self.transitions
            .iter()
            .filter_map(|m| m.keys().next_back().copied())
            .max()
    }

    pub fn accepts(&self, w: &DigitWord) -> bool {
        let mut q = self.initial;
        for &d in w.digits() {
            match self.step(q, d) {
                Some(t) => q = t,
                None => return false,
            }
        }
        self.is_final(q)
    }

    /// Number of accepted words of length `i`, by powering the transition
    /// matrix.
    pub fn count_accepted(&self, i: usize) -> BigUint {
        let k = self.num_states();
        let mut m = vec![vec![BigUint::zero(); k]; k];
        for (q, map) in self.transitions.iter().enumerate() {
            for &t in map.values() {
                m[q][t] += 1u32;
            }
        }
        let p = mat_pow(&m, i);
        self.finals.iter().map(|&f| p[self.initial][f].clone()).sum()
    }

    /// Renumbers states in breadth-first order from the initial state,
    /// following digits in increasing order, and drops unreachable states.
    pub fn bfs_normalized(&self) -> Dfa {
        let mut order = vec![usize::MAX; self.num_states()];
        let mut seen = Vec::new();
        let mut queue = VecDeque::from([self.initial]);
        order[self.initial] = 0;
        seen.push(self.initial);
        while let Some(q) = queue.pop_front() {
            for &t in self.transitions[q].values() {
                if order[t] == usize::MAX {
                    order[t] = seen.len();
                    seen.push(t);
                    queue.push_back(t);
                }
            }
        }
        let transitions = seen
            .iter()
            .map(|&q| self.transitions[q].iter().map(|(&d, &t)| (d, order[t])).collect())
            .collect();
        let finals = self
            .finals
            .iter()
            .filter(|&&f| order[f] != usize::MAX)
            .map(|&f| order[f])
            .collect();
        Dfa {
            transitions,
            initial: 0,
            finals,
        }
    }

    /// Removes states that are unreachable or from which no final state can
    /// be reached, then renumbers breadth-first. The initial state is kept
    /// even if the language is empty.
    pub fn trim(&self) -> Dfa {
        let k = self.num_states();
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); k];
        for (q, m) in self.transitions.iter().enumerate() {
            for &t in m.values() {
                rev[t].push(q);
            }
        }
        let mut live = vec![false; k];
        let mut stack: Vec<usize> = self.finals.iter().copied().collect();
        for &f in &stack {
            live[f] = true;
        }
        while let Some(q) = stack.pop() {
            for &p in &rev[q] {
                if !live[p] {
                    live[p] = true;
                    stack.push(p);
                }
            }
        }
        let transitions = self
            .transitions
            .iter()
            .map(|m| m.iter().filter(|(_, &t)| live[t]).map(|(&d, &t)| (d, t)).collect())
            .collect();
        Dfa {
            transitions,
            initial: self.initial,
            finals: self.finals.clone(),
        }
        .bfs_normalized()
    }

    /// The minimal partial automaton of the same language (Moore partition
    /// refinement on the completed automaton, then the sink is removed).
    pub fn minimize(&self) -> Dfa {
        let t = self.trim();
        let alphabet: Vec<Digit> = match t.max_digit() {
            Some(m) => (0..=m).collect(),
            None => Vec::new(),
        };
        let k = t.num_states();
        let sink = k;
        let next = |q: usize, d: Digit| -> usize {
            if q == sink {
                sink
            } else {
                t.step(q, d).unwrap_or(sink)
            }
        };
        let mut class: Vec<usize> = (0..=k).map(|q| usize::from(t.is_final(q))).collect();
        loop {
            let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let refined: Vec<usize> = (0..=k)
                .map(|q| {
                    let sig = (class[q], alphabet.iter().map(|&d| class[next(q, d)]).collect());
                    let n = ids.len();
                    *ids.entry(sig).or_insert(n)
                })
                .collect();
            let stable = ids.len() == count_distinct(&class);
            class = refined;
            if stable {
                break;
            }
        }
        let sink_class = class[sink];
        let blocks = count_distinct(&class);
        let mut transitions = vec![BTreeMap::new(); blocks];
        let mut finals = BTreeSet::new();
        for q in 0..k {
            let c = class[q];
            if t.is_final(q) {
                finals.insert(c);
            }
            for &d in &alphabet {
                let to = class[next(q, d)];
                if to != sink_class {
                    transitions[c].insert(d, to);
                }
            }
        }
        Dfa {
            transitions,
            initial: class[t.initial],
            finals,
        }
        .trim()
    }

    /// Same automaton up to renaming of states.
    pub fn is_isomorphic(&self, other: &Dfa) -> bool {
        self.trim() == other.trim()
    }

    pub fn to_file(&self) -> DfaFile {
        DfaFile {
            initial: self.initial,
            finals: self.finals.iter().copied().collect(),
            edges: self.edges(),
        }
    }

    pub fn from_file(f: &DfaFile) -> Result<Dfa> {
        let states = f
            .edges
            .iter()
            .flat_map(|&(a, _, b)| [a, b])
            .chain(f.finals.iter().copied())
            .chain([f.initial])
            .max()
            .unwrap_or(0)
            + 1;
        Dfa::new(states, f.initial, f.finals.iter().copied(), f.edges.iter().copied())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("automaton serializes")
    }

    pub fn from_json(s: &str) -> Result<Dfa> {
        Dfa::from_file(&serde_json::from_str(s)?)
    }

    /// Graphviz rendering with states numbered breadth-first; parallel edges
    /// are merged into one labelled with the sorted digit list.
    pub fn to_dot(&self) -> String {
        let d = self.bfs_normalized();
        let mut out = String::new();
        out.push_str("digraph dfa {\n");
        out.push_str("  rankdir=LR;\n");
        out.push_str("  init [shape=point];\n");
        for q in 0..d.num_states() {
            let shape = if d.is_final(q) { "doublecircle" } else { "circle" };
            writeln!(out, "  q{q} [shape={shape}];").unwrap();
        }
        writeln!(out, "  init -> q0;").unwrap();
        for (q, m) in d.transitions.iter().enumerate() {
            let mut by_target: BTreeMap<usize, Vec<Digit>> = BTreeMap::new();
            for (&digit, &t) in m {
                by_target.entry(t).or_default().push(digit);
            }
            for (t, digits) in by_target {
                let label: Vec<String> = digits.iter().map(|x| x.to_string()).collect();
                writeln!(out, "  q{q} -> q{t} [label=\"{}\"];", label.join(",")).unwrap();
            }
        }
        out.push_str("}\n");
        out
    }
}

fn count_distinct(v: &[usize]) -> usize {
    v.iter().collect::<BTreeSet<_>>().len()
}

fn mat_mul(a: &[Vec<BigUint>], b: &[Vec<BigUint>]) -> Vec<Vec<BigUint>> {
    let k = a.len();
    let mut c = vec![vec![BigUint::zero(); k]; k];
    for i in 0..k {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..k {
                if !b[l][j].is_zero() {
                    c[i][j] += &a[i][l] * &b[l][j];
                }
            }
        }
    }
    c
}

fn mat_pow(m: &[Vec<BigUint>], mut e: usize) -> Vec<Vec<BigUint>> {
    let k = m.len();
    let mut result: Vec<Vec<BigUint>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| if i == j { BigUint::one() } else { BigUint::zero() })
                .collect()
        })
        .collect();
    let mut base = m.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            result = mat_mul(&result, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul(&base, &base);
        }
    }
    result
}

/// An automaton for `Fac(S_β)` or `Fac(S'_β)`.
#[derive(Debug, Clone)]
pub struct ShiftAutomaton {
    pub dfa: Dfa,
    pub variant: Variant,
    /// Set when the non-canonical automaton was requested for a base that
    /// is not simple Parry; the canonical one is returned.
    pub coincides_with_canonical: bool,
}

/// The automaton on `d*_β(1) = d_1 ... d_m (d_{m+1} ... d_{m+n})^ω`: states
/// `q_1 ... q_{m+n}` (numbered from 0 here), edges `q_i -d_i-> q_{i+1}`
/// closing the period with `q_{m+n} -d_{m+n}-> q_{m+1}`, and
/// `q_i -c-> q_1` for `c < d_i`. Every state is final.
pub fn canonical_dfa(d_star: &EPWord) -> Dfa {
    let m = d_star.preperiod().len();
    let n = d_star.period().len();
    let k = m + n;
    let mut edges = Vec::new();
    for i in 0..k {
        let di = d_star.at(i);
        let next = if i + 1 < k { i + 1 } else { m };
        edges.push((i, di, next));
        for c in 0..di {
            edges.push((i, c, 0));
        }
    }
    Dfa::new(k, 0, 0..k, edges).expect("construction is deterministic")
}

/// The canonical automaton of the simple Parry base with
/// `d_β(1) = t_1 ... t_n`, plus a final state `q'` entered from `q_n` by
/// `t_n` and carrying a loop labelled 0.
pub fn noncanonical_dfa(t: &[Digit]) -> Dfa {
    let n = t.len();
    let mut star = t.to_vec();
    star[n - 1] -= 1;
    let c = canonical_dfa(&EPWord::new(Vec::new(), star).expect("nonempty"));
    let k = c.num_states();
    let mut edges = c.edges();
    edges.push((k - 1, t[n - 1], k));
    edges.push((k, 0, k));
    Dfa::new(k + 1, 0, 0..=k, edges).expect("construction is deterministic")
}

pub fn build_shift_dfa(base: &RealBase, variant: Variant) -> Result<ShiftAutomaton> {
    let d = base.d_beta_one(DEFAULT_DEPTH)?;
    let d = d.require_word()?.clone();
    let star = base.coefficient_word(Variant::Canonical, DEFAULT_DEPTH)?;
    match (variant, d.finite_part()) {
        (Variant::NonCanonical, Some(t)) => Ok(ShiftAutomaton {
            dfa: noncanonical_dfa(t),
            variant,
            coincides_with_canonical: false,
        }),
        (Variant::NonCanonical, None) => Ok(ShiftAutomaton {
            dfa: canonical_dfa(&star),
            variant,
            coincides_with_canonical: true,
        }),
        (Variant::Canonical, _) => Ok(ShiftAutomaton {
            dfa: canonical_dfa(&star),
            variant,
            coincides_with_canonical: false,
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub word: DigitWord,
    pub accepted: bool,
    pub member: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivReport {
    pub max_len: usize,
    pub alphabet_max: Digit,
    pub words_checked: u64,
    pub first_disagreement: Option<Disagreement>,
}

impl EquivReport {
    pub fn agree(&self) -> bool {
        self.first_disagreement.is_none()
    }
}

/// Compares acceptance by `d` with membership in `N_U` on every word of
/// length at most `max_len` over `0..=max(alphabets)`; the first
/// disagreement in (length, lexicographic) order is reported.
pub fn dfa_equiv_language(d: &Dfa, s: &NumSys, max_len: usize) -> EquivReport {
    let amax = d.max_digit().unwrap_or(0).max(s.alphabet_max());
    let k = u64::from(amax) + 1;
    let mut checked = 0u64;
    for len in 0..=max_len {
        let total = k.checked_pow(len as u32).expect("word count fits in u64");
        let word_at = |mut idx: u64| {
            let mut digits = vec![0; len];
            for slot in digits.iter_mut().rev() {
                *slot = (idx % k) as Digit;
                idx /= k;
            }
            DigitWord::new(digits)
        };
        let found = (0..total).into_par_iter().find_first(|&idx| {
            let w = word_at(idx);
            d.accepts(&w) != s.member(&w)
        });
        if let Some(idx) = found {
            let w = word_at(idx);
            return EquivReport {
                max_len,
                alphabet_max: amax,
                words_checked: checked + idx + 1,
                first_disagreement: Some(Disagreement {
                    accepted: d.accepts(&w),
                    member: s.member(&w),
                    word: w,
                }),
            };
        }
        checked += total;
    }
    EquivReport {
        max_len,
        alphabet_max: amax,
        words_checked: checked,
        first_disagreement: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> DigitWord {
        s.parse().unwrap()
    }

    fn phi_noncanonical() -> Dfa {
        Dfa::new(3, 0, [0, 1, 2], [(0, 0, 0), (0, 1, 1), (1, 0, 0), (1, 1, 2), (2, 0, 2)]).unwrap()
    }

    #[test]
    fn base3_automata() {
        let three = RealBase::integer(3).unwrap();
        let a = build_shift_dfa(&three, Variant::Canonical).unwrap().dfa;
        assert_eq!(a.num_states(), 1);
        assert_eq!(a.edges(), vec![(0, 0, 0), (0, 1, 0), (0, 2, 0)]);
        let b = build_shift_dfa(&three, Variant::NonCanonical).unwrap().dfa;
        assert_eq!(b.num_states(), 2);
        assert!(b.accepts(&w("230")));
        assert!(!b.accepts(&w("32")));
        assert!(b.accepts(&DigitWord::empty()));
        assert_eq!(b.count_accepted(2), BigUint::from(13u32));
        assert_eq!(b.count_accepted(0), BigUint::one());
    }

    #[test]
    fn phi_automata() {
        let phi = RealBase::algebraic(&[1, -1, -1], (1, 1), (2, 1)).unwrap();
        let b = build_shift_dfa(&phi, Variant::NonCanonical).unwrap().dfa;
        assert!(b.is_isomorphic(&phi_noncanonical()));
        assert_eq!(b.minimize(), phi_noncanonical().bfs_normalized());
        assert_eq!(b.count_accepted(3), BigUint::from(7u32));
        for k in 0..=10 {
            let mut digits = vec![1, 1];
            digits.extend(std::iter::repeat_n(0, k));
            digits.push(1);
            assert!(!b.accepts(&DigitWord::new(digits)));
        }
    }

    #[test]
    fn minimize_merges_duplicates() {
        let d = Dfa::new(2, 0, [0, 1], [(0, 0, 1), (1, 0, 0)]).unwrap();
        let m = d.minimize();
        assert_eq!(m.num_states(), 1);
        assert_eq!(m.edges(), vec![(0, 0, 0)]);
        let phi2 = RealBase::algebraic(&[1, -3, 1], (2, 1), (3, 1)).unwrap();
        let c = build_shift_dfa(&phi2, Variant::Canonical).unwrap().dfa;
        assert_eq!(c.minimize().num_states(), 2);
    }

    #[test]
    fn json_round_trip() {
        let d = phi_noncanonical();
        assert_eq!(Dfa::from_json(&d.to_json()).unwrap(), d);
        assert_eq!(
            d.to_json(),
            r#"{"initial":0,"finals":[0,1,2],"edges":[[0,0,0],[0,1,1],[1,0,0],[1,1,2],[2,0,2]]}"#
        );
    }

    #[test]
    fn equivalence_oracle() {
        let ncphi = NumSys::recurrence_i64(&[1, 2], &[1, 1], 1).unwrap();
        assert!(dfa_equiv_language(&phi_noncanonical(), &ncphi, 8).agree());
        let zeck = NumSys::recurrence_i64(&[1, 2], &[1, 1], 0).unwrap();
        let phi_canonical = Dfa::new(2, 0, [0, 1], [(0, 0, 0), (0, 1, 1), (1, 0, 0)]).unwrap();
        assert!(dfa_equiv_language(&phi_canonical, &zeck, 8).agree());
        let r = dfa_equiv_language(&phi_canonical, &ncphi, 8);
        assert_eq!(r.first_disagreement.unwrap().word, w("11"));
    }
}
