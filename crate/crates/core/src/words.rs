//! Finite and eventually periodic words over digit alphabets.
//!
//! Digits are plain `u32` values. A [`DigitWord`] is a finite word; an
//! [`EPWord`] is an infinite word `u v v v ...` stored in canonical form, so
//! that two eventually periodic words are equal exactly when their
//! preperiods and periods are equal.
//!
//! Text syntax: when every digit is at most 9 a word is written as a string
//! of decimal characters, with the period in parentheses (`110(0)` is
//! `1 1 0 0 0 ...`). Larger digits use brackets: `[10,0,1]([2])`.
//!
//! Comparing a finite word with an infinite one pads the finite word with
//! `0^ω`. Two finite words are only comparable when they have equal length.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Digit = u32;

/// A finite word over the digits `0..=max`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DigitWord(Vec<Digit>);

impl DigitWord {
    pub fn new(digits: Vec<Digit>) -> Self {
        DigitWord(digits)
    }

    pub fn empty() -> Self {
        DigitWord(Vec::new())
    }

    pub fn zeros(len: usize) -> Self {
        DigitWord(vec![0; len])
    }

    pub fn digits(&self) -> &[Digit] {
        &self.0
    }

    pub fn into_digits(self) -> Vec<Digit> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest digit, 0 for the empty word.
    pub fn max_digit(&self) -> Digit {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// `Pref_n(w)`; panics if `n > |w|`.
    pub fn prefix(&self, n: usize) -> DigitWord {
        DigitWord(self.0[..n].to_vec())
    }

    /// `Suff_n(w)`; panics if `n > |w|`.
    pub fn suffix(&self, n: usize) -> DigitWord {
        DigitWord(self.0[self.0.len() - n..].to_vec())
    }

    pub fn push(&mut self, d: Digit) {
        self.0.push(d);
    }

    pub fn concat(&self, other: &DigitWord) -> DigitWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        DigitWord(v)
    }

    /// Drops leading zeros.
    pub fn strip_leading_zeros(&self) -> DigitWord {
        let start = self.0.iter().position(|&d| d != 0).unwrap_or(self.0.len());
        DigitWord(self.0[start..].to_vec())
    }

    /// Left-pads with zeros up to `len` (no-op when already that long).
    pub fn left_pad(&self, len: usize) -> DigitWord {
        if self.0.len() >= len {
            return self.clone();
        }
        let mut v = vec![0; len - self.0.len()];
        v.extend_from_slice(&self.0);
        DigitWord(v)
    }

    /// Lexicographic comparison of two words of the same length.
    pub fn lex_cmp(&self, other: &DigitWord) -> Result<Ordering> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(self.0.cmp(&other.0))
    }

    /// Whether `self` is a prefix of `other`.
    pub fn is_prefix_of(&self, other: &DigitWord) -> bool {
        other.0.starts_with(&self.0)
    }
}

impl From<Vec<Digit>> for DigitWord {
    fn from(v: Vec<Digit>) -> Self {
        DigitWord(v)
    }
}

impl From<&[Digit]> for DigitWord {
    fn from(v: &[Digit]) -> Self {
        DigitWord(v.to_vec())
    }
}

fn write_digits(f: &mut fmt::Formatter<'_>, digits: &[Digit], compact: bool) -> fmt::Result {
    if compact {
        for d in digits {
            write!(f, "{d}")?;
        }
        Ok(())
    } else {
        write!(f, "[")?;
        for (i, d) in digits.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for DigitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "ε");
        }
        write_digits(f, &self.0, self.max_digit() <= 9)
    }
}

fn parse_digit_block(s: &str, whole: &str) -> Result<Vec<Digit>> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('[') {
        let inner = inner
            .strip_suffix(']')
            .ok_or_else(|| Error::parse(whole, "unterminated '['"))?;
        if inner.trim().is_empty() {
            return Ok(Vec::new());
        }
        inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<Digit>()
                    .map_err(|_| Error::parse(whole, format!("bad digit {:?}", t.trim())))
            })
            .collect()
    } else {
        s.chars()
            .map(|c| {
                c.to_digit(10)
                    .ok_or_else(|| Error::parse(whole, format!("bad digit {c:?}")))
            })
            .collect()
    }
}

impl FromStr for DigitWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t == "ε" {
            return Ok(DigitWord::empty());
        }
        if t.contains('(') {
            return Err(Error::parse(s, "finite word expected, found a period"));
        }
        Ok(DigitWord(parse_digit_block(t, s)?))
    }
}

/// An eventually periodic infinite word `preperiod · period^ω` in canonical
/// form: the period is primitive and the preperiod is as short as possible.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EPWord {
    preperiod: Vec<Digit>,
    period: Vec<Digit>,
}

impl EPWord {
    /// Builds and canonicalizes `preperiod · period^ω`. The period must be
    /// nonempty.
    pub fn new(preperiod: Vec<Digit>, period: Vec<Digit>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidArgument("empty period".into()));
        }
        Ok(Self::canonical(preperiod, period))
    }

    /// `w 0^ω`.
    pub fn finite(w: &DigitWord) -> Self {
        Self::canonical(w.digits().to_vec(), vec![0])
    }

    /// `w^ω`.
    pub fn periodic(w: &DigitWord) -> Result<Self> {
        Self::new(Vec::new(), w.digits().to_vec())
    }

    fn canonical(mut pre: Vec<Digit>, per: Vec<Digit>) -> Self {
        let mut per = primitive_root(&per).to_vec();
        while let (Some(&a), Some(&b)) = (pre.last(), per.last()) {
            if a != b {
                break;
            }
            pre.pop();
            per.rotate_right(1);
        }
        EPWord {
            preperiod: pre,
            period: per,
        }
    }

    pub fn preperiod(&self) -> &[Digit] {
        &self.preperiod
    }

    pub fn period(&self) -> &[Digit] {
        &self.period
    }

    /// The i-th letter, 0-based.
    pub fn at(&self, i: usize) -> Digit {
        if i < self.preperiod.len() {
            self.preperiod[i]
        } else {
            self.period[(i - self.preperiod.len()) % self.period.len()]
        }
    }

    /// `Pref_n(w)`.
    pub fn prefix(&self, n: usize) -> DigitWord {
        DigitWord((0..n).map(|i| self.at(i)).collect())
    }

    /// True for words ending in `0^ω`.
    pub fn is_finite(&self) -> bool {
        self.period == [0]
    }

    /// For a word `t_1 ... t_n 0^ω` with `t_n != 0`, returns `t_1 ... t_n`.
    pub fn finite_part(&self) -> Option<&[Digit]> {
        self.is_finite().then_some(self.preperiod.as_slice())
    }

    /// No preperiod.
    pub fn is_purely_periodic(&self) -> bool {
        self.preperiod.is_empty()
    }

    pub fn max_digit(&self) -> Digit {
        self.preperiod
            .iter()
            .chain(self.period.iter())
            .copied()
            .max()
            .unwrap_or(0)
    }

    /// `σ^i(w)`.
    pub fn shift(&self, i: usize) -> EPWord {
        if i <= self.preperiod.len() {
            Self::canonical(self.preperiod[i..].to_vec(), self.period.clone())
        } else {
            let mut per = self.period.clone();
            per.rotate_left((i - self.preperiod.len()) % self.period.len());
            EPWord {
                preperiod: Vec::new(),
                period: per,
            }
        }
    }

    fn is_compact(&self) -> bool {
        self.max_digit() <= 9
    }
}

fn primitive_root(w: &[Digit]) -> &[Digit] {
    let n = w.len();
    for p in 1..n {
        if n.is_multiple_of(p) && (p..n).all(|i| w[i] == w[i - p]) {
            return &w[..p];
        }
    }
    w
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Ord for EPWord {
    fn cmp(&self, other: &Self) -> Ordering {
        let (p, q) = (self.period.len(), other.period.len());
        let horizon = self.preperiod.len().max(other.preperiod.len()) + p / gcd(p, q) * q;
        (0..horizon)
            .map(|i| self.at(i).cmp(&other.at(i)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

impl PartialOrd for EPWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for EPWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = self.is_compact();
        if self.is_finite() && !self.preperiod.is_empty() {
            // t 0^ω is written t0(0)
            let mut t = self.preperiod.clone();
            t.push(0);
            write_digits(f, &t, compact)?;
        } else if !self.preperiod.is_empty() {
            write_digits(f, &self.preperiod, compact)?;
        }
        write!(f, "(")?;
        write_digits(f, &self.period, compact)?;
        write!(f, ")")
    }
}

impl FromStr for EPWord {
    type Err = Error;

    /// Accepts `pre(per)`; a word with no parenthesized period gets `0^ω`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.find('(') {
            None => Ok(EPWord::finite(&t.parse()?)),
            Some(open) => {
                let rest = &t[open + 1..];
                let close = rest.rfind(')').ok_or_else(|| Error::parse(s, "unterminated '('"))?;
                if !rest[close + 1..].trim().is_empty() {
                    return Err(Error::parse(s, "trailing characters after period"));
                }
                let pre = parse_digit_block(&t[..open], s)?;
                let per = parse_digit_block(&rest[..close], s)?;
                if per.is_empty() {
                    return Err(Error::parse(s, "empty period"));
                }
                EPWord::new(pre, per)
            }
        }
    }
}

impl Serialize for EPWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for EPWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Either kind of word, for [`lex_cmp`].
#[derive(Debug, Clone, Copy)]
pub enum WordRef<'a> {
    Finite(&'a DigitWord),
    Infinite(&'a EPWord),
}

impl<'a> From<&'a DigitWord> for WordRef<'a> {
    fn from(w: &'a DigitWord) -> Self {
        WordRef::Finite(w)
    }
}

impl<'a> From<&'a EPWord> for WordRef<'a> {
    fn from(w: &'a EPWord) -> Self {
        WordRef::Infinite(w)
    }
}

/// Lexicographic order. Finite words must have equal length; a finite word
/// compared against an infinite one is padded with `0^ω`.
pub fn lex_cmp<'a, 'b>(u: impl Into<WordRef<'a>>, v: impl Into<WordRef<'b>>) -> Result<Ordering> {
    match (u.into(), v.into()) {
        (WordRef::Finite(a), WordRef::Finite(b)) => a.lex_cmp(b),
        (WordRef::Finite(a), WordRef::Infinite(b)) => Ok(EPWord::finite(a).cmp(b)),
        (WordRef::Infinite(a), WordRef::Finite(b)) => Ok(a.cmp(&EPWord::finite(b))),
        (WordRef::Infinite(a), WordRef::Infinite(b)) => Ok(a.cmp(b)),
    }
}

/// Whether `σ^i(d) < d` (strict) or `σ^i(d) <= d` (non-strict) for every
/// `i >= 1`.
///
/// Shifts by more than `|preperiod| + |period|` repeat earlier ones, and each
/// comparison is exact, so the check is finite.
pub fn is_parry_valid(d: &EPWord, strict: bool) -> bool {
    let horizon = d.preperiod().len() + d.period().len();
    (1..=horizon).all(|i| {
        let o = d.shift(i).cmp(d);
        if strict {
            o.is_lt()
        } else {
            o.is_le()
        }
    })
}

/// Turns a self-bounded word `a` (every shift `<=` a) into one whose shifts
/// are all strictly smaller: a word with a preperiod is returned unchanged,
/// and `(a_1 ... a_n)^ω` with `n` minimal becomes `a_1 ... a_{n-1} (a_n + 1) 0^ω`.
pub fn d_from_a(a: &EPWord) -> Result<EPWord> {
    if !is_parry_valid(a, false) {
        return Err(Error::NotParryValid {
            word: a.to_string(),
            kind: "non-strict",
        });
    }
    if !a.is_purely_periodic() {
        return Ok(a.clone());
    }
    let mut t = a.period().to_vec();
    *t.last_mut().expect("period is nonempty") += 1;
    Ok(EPWord::finite(&DigitWord(t)))
}
