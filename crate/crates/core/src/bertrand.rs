//! Bertrand systems attached to a real base, and the reverse direction:
//! recognizing which base (if any) a given system comes from.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numsys::{Direction, Generator, NumSys, Violation};
use crate::poly::IntPoly;
use crate::realbase::{beta_from_expansion, companion_like, periodic_polynomial, RealBase, DEFAULT_DEPTH};
use crate::words::{d_from_a, is_parry_valid, Digit, DigitWord, EPWord};
use crate::Variant;

/// A Bertrand system built from a base.
#[derive(Debug, Clone)]
pub struct Built {
    pub system: NumSys,
    /// The coefficient word `a` of `U(i) = a_1 U(i-1) + ... + a_i U(0) + 1`.
    pub word: EPWord,
    pub variant: Variant,
    /// Set for the non-canonical variant of a base that is not simple
    /// Parry, where both variants give the same system.
    pub coincides_with_canonical: bool,
}

/// The canonical (coefficients `d*_β(1)`) or non-canonical (coefficients
/// `d_β(1)`) Bertrand system of `base`.
pub fn build_bertrand(base: &RealBase, variant: Variant) -> Result<Built> {
    build_bertrand_with_depth(base, variant, DEFAULT_DEPTH)
}

pub fn build_bertrand_with_depth(base: &RealBase, variant: Variant, depth: usize) -> Result<Built> {
    let d = base.d_beta_one(depth)?;
    let d_word = d.require_word()?.clone();
    let word = base.coefficient_word(variant, depth)?;
    let system = NumSys::bertrand(word.clone())?;
    Ok(Built {
        system,
        word,
        variant,
        coincides_with_canonical: variant == Variant::NonCanonical && !d_word.is_finite(),
    })
}

/// How much of a classification was proven.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    /// The system equals the Bertrand system of the recovered word; the
    /// two were compared on every index up to `checked_to` (exclusive),
    /// beyond which both obey a common linear recurrence.
    Certified { checked_to: usize },
    /// The lexicographically greatest words agree with the recovered word
    /// up to `probe_len`, but the sequences differ at `mismatch_at`.
    ConsistentUpTo {
        probe_len: usize,
        mismatch_at: Option<usize>,
    },
}

impl Evidence {
    pub fn is_certified(&self) -> bool {
        matches!(self, Evidence::Certified { .. })
    }
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evidence::Certified { checked_to } => {
                write!(f, "certified (checked U(i) for i < {checked_to})")
            }
            Evidence::ConsistentUpTo {
                probe_len,
                mismatch_at: Some(j),
            } => write!(f, "consistent up to length {probe_len}, sequences differ at U({j})"),
            Evidence::ConsistentUpTo { probe_len, .. } => {
                write!(f, "consistent up to length {probe_len}")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub enum Verdict {
    /// `U(i) = i + 1`.
    Case1 {
        evidence: Evidence,
    },
    /// `N_U = Fac(S_β)`; `a = d*_β(1)` is purely periodic.
    Case2 {
        base: RealBase,
        a: EPWord,
        evidence: Evidence,
    },
    /// `N_U = Fac(S'_β)`; `a = d_β(1)`. When `a` is infinite the two
    /// shifts of β coincide and the system is also the canonical one.
    Case3 {
        base: RealBase,
        a: EPWord,
        coincides_with_canonical: bool,
        evidence: Evidence,
    },
    NotBertrand {
        witness: Violation,
    },
    /// The system passed every finite check but no eventually periodic
    /// word fits the lexicographically greatest word of length `probe_len`
    /// with its period seen twice.
    Undetermined {
        lex_max: DigitWord,
    },
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Case1 { .. } => "case1",
            Verdict::Case2 { .. } => "case2",
            Verdict::Case3 { .. } => "case3",
            Verdict::NotBertrand { .. } => "not-bertrand",
            Verdict::Undetermined { .. } => "undetermined",
        }
    }

    pub fn base(&self) -> Option<&RealBase> {
        match self {
            Verdict::Case2 { base, .. } | Verdict::Case3 { base, .. } => Some(base),
            _ => None,
        }
    }

    pub fn evidence(&self) -> Option<&Evidence> {
        match self {
            Verdict::Case1 { evidence } | Verdict::Case2 { evidence, .. } | Verdict::Case3 { evidence, .. } => {
                Some(evidence)
            }
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Case1 { evidence } => write!(f, "case 1: U(i) = i + 1; {evidence}"),
            Verdict::Case2 { base, a, evidence } => {
                write!(f, "case 2: canonical system of β = {base}, a = {a}; {evidence}")
            }
            Verdict::Case3 {
                base,
                a,
                coincides_with_canonical,
                evidence,
            } => {
                write!(f, "case 3: non-canonical system of β = {base}, a = {a}")?;
                if *coincides_with_canonical {
                    write!(f, " (same as canonical)")?;
                }
                write!(f, "; {evidence}")
            }
            Verdict::NotBertrand { witness } => {
                write!(f, "not Bertrand: {} fails {}", witness.word, witness.direction)
            }
            Verdict::Undetermined { lex_max } => {
                write!(f, "undetermined: no eventual period visible in {lex_max}")
            }
        }
    }
}

/// Decides which of the three Bertrand cases `s` falls in, using words of
/// length at most `probe_len`.
///
/// The Bertrand condition and the prefix chain of the lexicographically
/// greatest words are checked up to `probe_len`. The coefficient word is
/// then guessed from the longest of those words, trying eventually periodic
/// candidates with the shortest preperiod plus period first, and each
/// candidate is compared against `s` on enough terms to prove equality.
pub fn classify_bertrand(s: &NumSys, probe_len: usize) -> Result<Verdict> {
    if probe_len < 2 {
        return Err(Error::InvalidArgument("probe length must be at least 2".into()));
    }
    let report = s.check_bertrand(probe_len)?;
    if let Some(witness) = report.first_violation {
        return Ok(Verdict::NotBertrand { witness });
    }
    for i in 1..probe_len {
        let (short, long) = (s.lex_max(i), s.lex_max(i + 1));
        if !short.is_prefix_of(&long) {
            return Ok(Verdict::NotBertrand {
                witness: Violation {
                    word: long,
                    direction: Direction::LexMaxChain,
                },
            });
        }
    }
    let p = s.lex_max(probe_len);
    let candidates = periodic_candidates(p.digits());
    let Some(first) = candidates.first().cloned() else {
        return Ok(Verdict::Undetermined { lex_max: p });
    };
    let mut chosen = None;
    for a in &candidates {
        if let Ok(v) = NumSys::bertrand(a.clone()) {
            if let Some(checked_to) = certify_equal(s, &v) {
                chosen = Some((a.clone(), Evidence::Certified { checked_to }));
                break;
            }
        }
    }
    let (a, evidence) = match chosen {
        Some(c) => c,
        None => {
            let mismatch_at = NumSys::bertrand(first.clone())
                .ok()
                .and_then(|v| first_difference(s, &v, 4 * probe_len + 64));
            (first, Evidence::ConsistentUpTo { probe_len, mismatch_at })
        }
    };
    if a == EPWord::finite(&DigitWord::new(vec![1])) {
        return Ok(Verdict::Case1 { evidence });
    }
    let d = d_from_a(&a)?;
    let base = beta_from_expansion(&d)?;
    if a.is_purely_periodic() {
        Ok(Verdict::Case2 { base, a, evidence })
    } else {
        Ok(Verdict::Case3 {
            base,
            coincides_with_canonical: !a.is_finite(),
            a,
            evidence,
        })
    }
}

/// Eventually periodic words `x y^ω` compatible with the finite word `p`,
/// where `y` occurs at least twice in `p` (`|x| + 2|y| <= |p|`), ordered by
/// `|x| + |y|` then `|y|`. Only words starting with a nonzero digit and
/// dominating their shifts are kept.
fn periodic_candidates(p: &[Digit]) -> Vec<EPWord> {
    let len = p.len();
    let mut out: Vec<EPWord> = Vec::new();
    for total in 1..=len {
        for n in 1..=total {
            let m = total - n;
            if m + 2 * n > len {
                continue;
            }
            if !(m + n..len).all(|i| p[i] == p[i - n]) {
                continue;
            }
            let Ok(a) = EPWord::new(p[..m].to_vec(), p[m..m + n].to_vec()) else {
                continue;
            };
            if a.at(0) == 0 || !is_parry_valid(&a, false) || out.contains(&a) {
                continue;
            }
            out.push(a);
        }
    }
    out
}

/// If `u` and `v` agree on all indices below the point from which a common
/// recurrence determines both, returns that point.
fn certify_equal(u: &NumSys, v: &NumSys) -> Option<usize> {
    let (pa, fa) = u.homogeneous_recurrence();
    let (pb, fb) = v.homogeneous_recurrence();
    let (da, db) = (pa.degree().unwrap_or(0), pb.degree().unwrap_or(0));
    let bound = (fa + db).max(fb + da).max(da + db);
    (0..bound).all(|i| u.u(i) == v.u(i)).then_some(bound)
}

fn first_difference(u: &NumSys, v: &NumSys, limit: usize) -> Option<usize> {
    (0..limit).find(|&i| u.u(i) != v.u(i))
}

/// The characteristic polynomial of the linear recurrence satisfied by the
/// canonical or non-canonical Bertrand system.
///
/// Canonical: `d` is `d*_β(1) = d_1 ... d_m (d_{m+1} ... d_{m+n})^ω` and the
/// result is
/// `(X^{m+n} - Σ_{j≤m+n} d_j X^{m+n-j}) - (X^m - Σ_{j≤m} d_j X^{m-j})`. A
/// purely periodic `d*` (or a finite `d_β(1) = t_1 ... t_n` given directly)
/// reduces to `X^n - Σ t_j X^{n-j}`.
///
/// Non-canonical: `d` must be a finite `d_β(1) = t_1 ... t_n`, and the
/// result is `(X - 1)(X^n - Σ t_j X^{n-j})`.
pub fn char_poly(d: &EPWord, variant: Variant) -> Result<IntPoly> {
    match variant {
        Variant::Canonical => {
            if let Some(t) = d.finite_part() {
                Ok(companion_like(t))
            } else if d.is_purely_periodic() {
                let t = d_from_a(d)?;
                Ok(companion_like(
                    t.finite_part().expect("d_from_a of a periodic word is finite"),
                ))
            } else {
                Ok(periodic_polynomial(d))
            }
        }
        Variant::NonCanonical => {
            let t = d.finite_part().ok_or_else(|| {
                Error::VariantMismatch(format!("non-canonical polynomial needs a finite expansion, got {d}"))
            })?;
            Ok(companion_like(t).mul(&IntPoly::from_i64s(&[1, -1])))
        }
    }
}

/// First index `i` in `deg..=upto` where the recurrence with characteristic
/// polynomial `p` (monic) fails on `s`.
pub fn recurrence_failure(s: &NumSys, p: &IntPoly, upto: usize) -> Option<usize> {
    let c = p.coeffs_low_first();
    let k = c.len() - 1;
    let vals: Vec<BigInt> = s.values(upto + 1).into_iter().map(BigInt::from).collect();
    (k..=upto).find(|&i| {
        let sum: BigInt = c.iter().enumerate().map(|(j, cj)| cj * &vals[i - k + j]).sum();
        !sum.is_zero()
    })
}

/// `U(i) - Σ_{j≤i} a_j U(i-j)` for `i = 0..=upto`; every entry is 1 for the
/// Bertrand system of `a`.
pub fn residuals(s: &NumSys, a: &EPWord, upto: usize) -> Vec<BigInt> {
    let vals = s.values(upto + 1);
    (0..=upto)
        .map(|i| {
            let sum: BigUint = (1..=i).map(|j| &vals[i - j] * a.at(j - 1)).sum();
            BigInt::from(vals[i].clone()) - BigInt::from(sum)
        })
        .collect()
}

/// Outcome of checking `U'(i+n) = U(i+n) + U'(i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountingReport {
    /// Length of `d_β(1) = t_1 ... t_n`.
    pub n: usize,
    pub range_max: usize,
    /// Rows `(i, U'(i+n), U(i+n), U'(i))`.
    pub rows: Vec<(usize, BigUint, BigUint, BigUint)>,
    pub first_failure: Option<usize>,
}

impl CountingReport {
    pub fn holds(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Checks `U'(i+n) = U(i+n) + U'(i)` for `0 <= i <= range_max`, where `U`
/// and `U'` are the canonical and non-canonical systems of a simple Parry
/// base with `d_β(1)` of length `n`.
pub fn counting_identity_check(base: &RealBase, range_max: usize) -> Result<CountingReport> {
    let d = base.d_beta_one(DEFAULT_DEPTH)?;
    let word = d.require_word()?;
    let n = word
        .finite_part()
        .ok_or_else(|| Error::NotSimpleParry(format!("d_β(1) = {word} is infinite")))?
        .len();
    let canon = build_bertrand(base, Variant::Canonical)?.system;
    let nc = build_bertrand(base, Variant::NonCanonical)?.system;
    let mut rows = Vec::with_capacity(range_max + 1);
    let mut first_failure = None;
    for i in 0..=range_max {
        let (lhs, u, r) = (nc.u(i + n), canon.u(i + n), nc.u(i));
        if first_failure.is_none() && lhs != &u + &r {
            first_failure = Some(i);
        }
        rows.push((i, lhs, u, r));
    }
    Ok(CountingReport {
        n,
        range_max,
        rows,
        first_failure,
    })
}

/// True when `s` is generated by `U(i) = i + 1` up to index `upto`.
pub fn is_case1_prefix(s: &NumSys, upto: usize) -> bool {
    s.values(upto + 1)
        .iter()
        .enumerate()
        .all(|(i, v)| v == &BigUint::from(i + 1))
}

/// The coefficient word of a system built directly from a word.
pub fn generator_word(s: &NumSys) -> Option<&EPWord> {
    match s.generator() {
        Generator::Bertrand { word } => Some(word),
        Generator::Recurrence { .. } => None,
    }
}

/// `U(i)` of the Bertrand system of `a`, computed naively; used as an
/// independent reference in tests.
pub fn naive_values(a: &EPWord, count: usize) -> Vec<BigUint> {
    let mut out: Vec<BigUint> = Vec::with_capacity(count);
    for i in 0..count {
        let mut v = BigUint::one();
        for j in 1..=i {
            v += &out[i - j] * a.at(j - 1);
        }
        out.push(v);
    }
    out
}
