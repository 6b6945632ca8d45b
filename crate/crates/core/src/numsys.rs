//! Positional numeration systems.
//!
//! A system is an increasing sequence `U(0) = 1 < U(1) < ...` with bounded
//! consecutive quotients. Terms are produced lazily from a generator and
//! cached; the cache only grows. Digits of greedy representations lie in
//! `0..=alphabet_max`, where `alphabet_max = sup ⌈U(i+1)/U(i)⌉ - 1`.
//!
//! The numeration language `N_U = 0* rep_U(ℕ)` is handled through its
//! lexicographically greatest words: a word belongs to `N_U` iff each of its
//! suffixes is at most `rep_U(U(i) - 1)` of the same length.

use std::fmt;
use std::sync::RwLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{is_parry_valid, Digit, DigitWord, EPWord};

/// Terms materialized (and checked) when a system is constructed.
pub const VALIDATION_TERMS: usize = 64;

/// Violations kept in a [`BertrandReport`].
pub const MAX_REPORTED_VIOLATIONS: usize = 256;

/// How the terms of a system are produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    /// `U(i) = initial[i]` for `i < initial.len()`, then
    /// `U(i) = coeffs[0] U(i-1) + ... + coeffs[k-1] U(i-k) + addend`.
    Recurrence {
        initial: Vec<BigUint>,
        coeffs: Vec<BigInt>,
        addend: BigInt,
    },
    /// `U(i) = a_1 U(i-1) + ... + a_i U(0) + 1` for all `i >= 0`.
    Bertrand { word: EPWord },
}

#[derive(Debug)]
pub struct NumSys {
    generator: Generator,
    alphabet_max: Digit,
    values: RwLock<Vec<BigUint>>,
    lex_max: RwLock<Vec<DigitWord>>,
}

impl Clone for NumSys {
    fn clone(&self) -> Self {
        NumSys {
            generator: self.generator.clone(),
            alphabet_max: self.alphabet_max,
            values: RwLock::new(self.values.read().unwrap().clone()),
            lex_max: RwLock::new(self.lex_max.read().unwrap().clone()),
        }
    }
}

impl PartialEq for NumSys {
    fn eq(&self, other: &Self) -> bool {
        self.generator == other.generator && self.alphabet_max == other.alphabet_max
    }
}

/// Which half of `w ∈ N_U ⟺ w0 ∈ N_U` failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    /// `w0 ∈ N_U` but `w ∉ N_U`.
    PrefixClosure,
    /// `w ∈ N_U` but `w0 ∉ N_U`.
    Prolongability,
    /// `rep_U(U(i) - 1)` is not a prefix of `rep_U(U(i+1) - 1)`.
    LexMaxChain,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::PrefixClosure => "prefix-closure",
            Direction::Prolongability => "prolongability",
            Direction::LexMaxChain => "lex-max chain",
        })
    }
}

/// A failure of the Bertrand condition. `word` is the word `w0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub word: DigitWord,
    pub direction: Direction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BertrandReport {
    pub max_len: usize,
    /// Largest length `L <= max_len` such that the condition holds for all
    /// words of length at most `L`.
    pub holds_up_to: usize,
    pub first_violation: Option<Violation>,
    /// Violations in (length, lexicographic) order, at most
    /// [`MAX_REPORTED_VIOLATIONS`] of them.
    pub violations: Vec<Violation>,
    pub violation_count: usize,
}

impl BertrandReport {
    pub fn holds(&self) -> bool {
        self.first_violation.is_none()
    }
}

impl NumSys {
    /// A system given by initial terms and a linear recurrence with an
    /// optional constant addend. `alphabet_max`, when given, must agree with
    /// the value computed on the first [`VALIDATION_TERMS`] terms.
    pub fn recurrence(
        initial: Vec<BigUint>,
        coeffs: Vec<BigInt>,
        addend: BigInt,
        alphabet_max: Option<Digit>,
    ) -> Result<Self> {
        if initial.is_empty() || !initial[0].is_one() {
            return Err(Error::InvalidSystem("U(0) must be 1".into()));
        }
        if coeffs.is_empty() {
            return Err(Error::InvalidSystem("recurrence needs at least one coefficient".into()));
        }
        if initial.len() < coeffs.len() {
            return Err(Error::InvalidSystem(format!(
                "{} initial values do not cover a recurrence of order {}",
                initial.len(),
                coeffs.len()
            )));
        }
        Self::build(
            Generator::Recurrence {
                initial,
                coeffs,
                addend,
            },
            alphabet_max,
        )
    }

    /// Shorthand for small literal systems.
    pub fn recurrence_i64(initial: &[u64], coeffs: &[i64], addend: i64) -> Result<Self> {
        Self::recurrence(
            initial.iter().map(|&x| BigUint::from(x)).collect(),
            coeffs.iter().map(|&x| BigInt::from(x)).collect(),
            BigInt::from(addend),
            None,
        )
    }

    /// The system `U(i) = a_1 U(i-1) + ... + a_i U(0) + 1`. The word must
    /// dominate all its shifts and start with a nonzero digit.
    pub fn bertrand(word: EPWord) -> Result<Self> {
        if word.at(0) == 0 {
            return Err(Error::InvalidSystem(format!(
                "coefficient word {word} must start with a nonzero digit"
            )));
        }
        if !is_parry_valid(&word, false) {
            return Err(Error::NotParryValid {
                word: word.to_string(),
                kind: "non-strict",
            });
        }
        Self::build(Generator::Bertrand { word }, None)
    }

    fn build(generator: Generator, alphabet_max: Option<Digit>) -> Result<Self> {
        let mut s = NumSys {
            generator,
            alphabet_max: 0,
            values: RwLock::new(Vec::new()),
            lex_max: RwLock::new(Vec::new()),
        };
        let mut vals: Vec<BigUint> = Vec::with_capacity(VALIDATION_TERMS + 1);
        for i in 0..=VALIDATION_TERMS {
            let v = s.next_term(&vals)?;
            if i == 0 && !v.is_one() {
                return Err(Error::InvalidSystem("U(0) must be 1".into()));
            }
            if let Some(prev) = vals.last() {
                if &v <= prev {
                    return Err(Error::InvalidSystem(format!("sequence is not increasing at index {i}")));
                }
            }
            vals.push(v);
        }
        let computed = vals
            .windows(2)
            .map(|w| w[1].div_ceil(&w[0]) - BigUint::one())
            .max()
            .unwrap();
        let computed = computed
            .to_u32()
            .ok_or_else(|| Error::InvalidSystem("quotients too large".into()))?;
        if let Some(a) = alphabet_max {
            if a != computed {
                return Err(Error::InvalidSystem(format!(
                    "alphabet_max {a} disagrees with {computed} computed on the first {} terms",
                    VALIDATION_TERMS + 1
                )));
            }
        }
        s.alphabet_max = computed;
        *s.values.get_mut().unwrap() = vals;
        Ok(s)
    }

    fn next_term(&self, vals: &[BigUint]) -> Result<BigUint> {
        let i = vals.len();
        match &self.generator {
            Generator::Recurrence {
                initial,
                coeffs,
                addend,
            } => {
                if i < initial.len() {
                    return Ok(initial[i].clone());
                }
                let mut acc = addend.clone();
                for (j, c) in coeffs.iter().enumerate() {
                    acc += c * BigInt::from(vals[i - 1 - j].clone());
                }
                acc.to_biguint()
                    .ok_or_else(|| Error::InvalidSystem(format!("U({i}) = {acc} is negative")))
            }
            Generator::Bertrand { word } => {
                let mut acc = BigUint::one();
                for j in 1..=i {
                    let a = word.at(j - 1);
                    if a != 0 {
                        acc += &vals[i - j] * a;
                    }
                }
                Ok(acc)
            }
        }
    }

    pub fn generator(&self) -> &Generator {
        &self.generator
    }

    /// Largest digit of `A_U`.
    pub fn alphabet_max(&self) -> Digit {
        self.alphabet_max
    }

    /// `U(i)`.
    ///
    /// # Panics
    /// If the generator stops producing an increasing sequence beyond the
    /// validated range.
    pub fn u(&self, i: usize) -> BigUint {
        if let Some(v) = self.values.read().unwrap().get(i) {
            return v.clone();
        }
        let mut vals = self.values.write().unwrap();
        while vals.len() <= i {
            let v = self
                .next_term(&vals)
                .unwrap_or_else(|e| panic!("numeration system broke down: {e}"));
            assert!(
                &v > vals.last().unwrap(),
                "numeration system stops increasing at index {}",
                vals.len()
            );
            vals.push(v);
        }
        vals[i].clone()
    }

    /// `U(0), ..., U(n-1)`.
    pub fn values(&self, n: usize) -> Vec<BigUint> {
        if n > 0 {
            self.u(n - 1);
        }
        self.values.read().unwrap()[..n].to_vec()
    }

    /// The greedy representation of `n` (empty for 0).
    pub fn rep(&self, n: &BigUint) -> DigitWord {
        if n.is_zero() {
            return DigitWord::empty();
        }
        let mut k = 0;
        while &self.u(k + 1) <= n {
            k += 1;
        }
        let mut rest = n.clone();
        let mut out = Vec::with_capacity(k + 1);
        for j in (0..=k).rev() {
            let (q, r) = rest.div_rem(&self.u(j));
            out.push(q.to_u32().expect("greedy digit fits in u32"));
            rest = r;
        }
        DigitWord::new(out)
    }

    pub fn rep_u64(&self, n: u64) -> DigitWord {
        self.rep(&BigUint::from(n))
    }

    /// `Σ w_i U(|w| - i)`, defined for every digit word.
    pub fn val(&self, w: &DigitWord) -> BigUint {
        let n = w.len();
        w.digits()
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != 0)
            .map(|(i, &d)| self.u(n - 1 - i) * d)
            .sum()
    }

    /// `rep_U(U(i) - 1)` padded with zeros to length `i`: the
    /// lexicographically greatest word of length `i` in `N_U`.
    pub fn lex_max(&self, i: usize) -> DigitWord {
        if let Some(w) = self.lex_max.read().unwrap().get(i) {
            return w.clone();
        }
        let mut cache = self.lex_max.write().unwrap();
        while cache.len() <= i {
            let j = cache.len();
            let w = self.rep(&(self.u(j) - BigUint::one())).left_pad(j);
            cache.push(w);
        }
        cache[i].clone()
    }

    fn in_alphabet(&self, w: &DigitWord) -> bool {
        w.digits().iter().all(|&d| d <= self.alphabet_max)
    }

    /// Membership in `N_U` by the suffix criterion.
    pub fn member(&self, w: &DigitWord) -> bool {
        if !self.in_alphabet(w) {
            return false;
        }
        let d = w.digits();
        let n = d.len();
        (1..=n).all(|i| d[n - i..] <= *self.lex_max(i).digits())
    }

    /// Membership in `N_U` straight from the definition: after removing
    /// leading zeros the word must be the greedy representation of its value.
    pub fn member_direct(&self, w: &DigitWord) -> bool {
        self.in_alphabet(w) && w.strip_leading_zeros() == self.rep(&self.val(w))
    }

    /// Checks `w ∈ N_U ⟺ w0 ∈ N_U` for every word `w` over the alphabet of
    /// length at most `max_len`.
    ///
    /// Only words `w` with `w ∈ N_U` or `w0 ∈ N_U` can violate the
    /// condition, and that set is closed under taking suffixes, so it is
    /// grown one letter at a time on the left.
    pub fn check_bertrand(&self, max_len: usize) -> Result<BertrandReport> {
        if max_len == 0 {
            return Err(Error::InvalidArgument("max_len must be positive".into()));
        }
        let mut report = BertrandReport {
            max_len,
            holds_up_to: max_len,
            first_violation: None,
            violations: Vec::new(),
            violation_count: 0,
        };
        let bounds: Vec<DigitWord> = (0..=max_len + 1).map(|i| self.lex_max(i)).collect();
        // Each entry is (w, w ∈ N_U, w0 ∈ N_U). Both flags follow from those
        // of the word with its first letter removed and one comparison.
        let mut level: Vec<(Vec<Digit>, bool, bool)> = vec![(Vec::new(), true, self.member(&DigitWord::zeros(1)))];
        for len in 0..=max_len {
            let mut next = Vec::new();
            for (w, in_w, in_w0) in &level {
                if in_w != in_w0 {
                    let mut w0 = w.clone();
                    w0.push(0);
                    let v = Violation {
                        word: DigitWord::new(w0),
                        direction: if *in_w {
                            Direction::Prolongability
                        } else {
                            Direction::PrefixClosure
                        },
                    };
                    if report.first_violation.is_none() {
                        report.first_violation = Some(v.clone());
                        report.holds_up_to = len.saturating_sub(1);
                    }
                    report.violation_count += 1;
                    if report.violations.len() < MAX_REPORTED_VIOLATIONS {
                        report.violations.push(v);
                    }
                }
                if len < max_len {
                    for c in 0..=self.alphabet_max {
                        let mut cw = Vec::with_capacity(w.len() + 2);
                        cw.push(c);
                        cw.extend_from_slice(w);
                        let in_cw = *in_w && cw.as_slice() <= bounds[len + 1].digits();
                        cw.push(0);
                        let in_cw0 = *in_w0 && cw.as_slice() <= bounds[len + 2].digits();
                        cw.pop();
                        if in_cw || in_cw0 {
                            next.push((cw, in_cw, in_cw0));
                        }
                    }
                }
            }
            next.sort();
            level = next;
        }
        Ok(report)
    }

    /// Number of words of length `i` in `N_U`, counted digit by digit
    /// against the lexicographically greatest words (no use of `U(i)`).
    pub fn count_words(&self, i: usize) -> BigUint {
        // sizes[j] = |N_U ∩ A^j|
        let mut sizes: Vec<BigUint> = vec![BigUint::one()];
        for j in 1..=i {
            let c = self.count_at_most(j, &self.lex_max(j), &sizes);
            sizes.push(c);
        }
        sizes.pop().unwrap()
    }

    /// `#{v ∈ N_U ∩ A^j : v <= x}` for `x <= lex_max(j)`, given the sizes of
    /// all shorter levels.
    fn count_at_most(&self, j: usize, x: &DigitWord, sizes: &[BigUint]) -> BigUint {
        let mut total = BigUint::zero();
        let mut x = x.digits().to_vec();
        for len in (1..=j).rev() {
            // x has length `len` and is at most lex_max(len)
            total += &sizes[len - 1] * x[0];
            let tail = x[1..].to_vec();
            let bound = self.lex_max(len - 1);
            x = if tail.as_slice() > bound.digits() {
                bound.into_digits()
            } else {
                tail
            };
        }
        total + BigUint::one()
    }

    /// The smallest-order linear recurrence (as characteristic polynomial,
    /// highest degree first, and the index from which it holds) that the
    /// generator guarantees.
    pub fn homogeneous_recurrence(&self) -> (crate::poly::IntPoly, usize) {
        use crate::poly::IntPoly;
        match &self.generator {
            Generator::Recurrence {
                initial,
                coeffs,
                addend,
            } => {
                let k = coeffs.len();
                let mut c = vec![BigInt::zero(); k + 1];
                c[k] = BigInt::one();
                for (j, cj) in coeffs.iter().enumerate() {
                    c[k - 1 - j] = -cj;
                }
                let p = IntPoly::from_low_first(c);
                if addend.is_zero() {
                    (p, initial.len())
                } else {
                    (p.mul(&IntPoly::from_i64s(&[1, -1])), initial.len() + 1)
                }
            }
            Generator::Bertrand { word } => {
                let p = crate::realbase::periodic_polynomial(word);
                let from = word.preperiod().len() + word.period().len();
                (p, from)
            }
        }
    }

    pub fn to_file(&self) -> SystemFile {
        match &self.generator {
            Generator::Recurrence {
                initial,
                coeffs,
                addend,
            } => SystemFile::Recurrence {
                name: None,
                initial: initial
                    .iter()
                    .map(|v| NumLit::from_big(&BigInt::from(v.clone())))
                    .collect(),
                recurrence: RecurrenceFile {
                    coeffs: coeffs.iter().map(NumLit::from_big).collect(),
                    addend: NumLit::from_big(addend),
                },
                alphabet_max: Some(self.alphabet_max),
            },
            Generator::Bertrand { word } => SystemFile::Bertrand {
                name: None,
                bertrand: BertrandFile { word: word.clone() },
            },
        }
    }

    pub fn from_file(f: SystemFile) -> Result<Self> {
        match f {
            SystemFile::Recurrence {
                initial,
                recurrence,
                alphabet_max,
                ..
            } => {
                let initial = initial
                    .iter()
                    .map(|x| {
                        x.to_big()?
                            .to_biguint()
                            .ok_or_else(|| Error::InvalidSystem("initial values must be positive".into()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let coeffs = recurrence
                    .coeffs
                    .iter()
                    .map(NumLit::to_big)
                    .collect::<Result<Vec<_>>>()?;
                NumSys::recurrence(initial, coeffs, recurrence.addend.to_big()?, alphabet_max)
            }
            SystemFile::Bertrand { bertrand, .. } => NumSys::bertrand(bertrand.word),
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_file(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("system serializes")
    }
}

/// JSON form of a system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SystemFile {
    Recurrence {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        initial: Vec<NumLit>,
        recurrence: RecurrenceFile,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        alphabet_max: Option<Digit>,
    },
    Bertrand {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        bertrand: BertrandFile,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecurrenceFile {
    pub coeffs: Vec<NumLit>,
    #[serde(default = "NumLit::zero")]
    pub addend: NumLit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BertrandFile {
    pub word: EPWord,
}

/// An integer written either as a JSON number or, when large, as a decimal
/// string.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NumLit {
    Int(i64),
    Text(String),
}

impl NumLit {
    fn zero() -> Self {
        NumLit::Int(0)
    }

    fn from_big(x: &BigInt) -> Self {
        match x.to_i64() {
            Some(v) => NumLit::Int(v),
            None => NumLit::Text(x.to_string()),
        }
    }

    fn to_big(&self) -> Result<BigInt> {
        match self {
            NumLit::Int(v) => Ok(BigInt::from(*v)),
            NumLit::Text(s) => s.trim().parse().map_err(|_| Error::parse(s.clone(), "not an integer")),
        }
    }
}

impl fmt::Display for NumSys {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.generator {
            Generator::Recurrence {
                initial,
                coeffs,
                addend,
            } => {
                let init: Vec<String> = initial.iter().map(|v| v.to_string()).collect();
                write!(f, "U = ({}, ...), U(i) =", init.join(", "))?;
                let mut first = true;
                for (j, c) in coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let sign = if c.is_negative() { "-" } else { "+" };
                    if first {
                        if c.is_negative() {
                            write!(f, " -")?;
                        }
                        write!(f, " ")?;
                    } else {
                        write!(f, " {sign} ")?;
                    }
                    first = false;
                    let m = c.abs();
                    if !m.is_one() {
                        write!(f, "{m}")?;
                    }
                    write!(f, "U(i-{})", j + 1)?;
                }
                if !addend.is_zero() {
                    let sign = if addend.is_negative() { "-" } else { "+" };
                    write!(f, " {sign} {}", addend.abs())?;
                }
                Ok(())
            }
            Generator::Bertrand { word } => {
                write!(f, "U(i) = a_1 U(i-1) + ... + a_i U(0) + 1 with a = {word}")
            }
        }
    }
}
