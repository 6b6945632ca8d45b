//! Exact real bases β > 1 and the greedy expansions of 1.
//!
//! Every base is held as an [`AlgebraicReal`]. The greedy remainders
//! `r_i = β r_{i-1} - ⌊β r_{i-1}⌋` live in `ℚ[X]/(P)` and are compared
//! structurally, so a repeated remainder is a proof that the expansion is
//! eventually periodic. When no remainder repeats within the requested depth
//! the expansion is reported as unresolved; nothing here ever claims that a
//! base is not a Parry number.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebraic::AlgebraicReal;
use crate::error::{Error, Result};
use crate::poly::{IntPoly, QPoly};
use crate::words::{is_parry_valid, Digit, DigitWord, EPWord};
use crate::Variant;

/// Default number of digits computed before giving up on periodicity.
pub const DEFAULT_DEPTH: usize = 64;

/// How a base was specified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseSpec {
    Integer(BigInt),
    Rational(BigRational),
    /// Integer polynomial and an open interval isolating its root.
    Algebraic {
        poly: IntPoly,
        lo: BigRational,
        hi: BigRational,
    },
    /// The base whose greedy expansion of 1 is this word.
    Parry(EPWord),
}

/// What the computed expansion of 1 says about the base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParryClass {
    /// `d_β(1) = t_1 ... t_n 0^ω` with `t_n != 0`.
    SimpleParry { n: usize },
    /// `d_β(1)` eventually periodic with preperiod length `m` and period
    /// length `n`, not ending in `0^ω`.
    NonSimpleParry { m: usize, n: usize },
    /// No repetition found within `depth` digits.
    Unresolved { depth: usize },
}

impl ParryClass {
    pub fn is_resolved(&self) -> bool {
        !matches!(self, ParryClass::Unresolved { .. })
    }

    pub fn is_simple(&self) -> bool {
        matches!(self, ParryClass::SimpleParry { .. })
    }
}

impl fmt::Display for ParryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParryClass::SimpleParry { n } => write!(f, "simple Parry, n={n}"),
            ParryClass::NonSimpleParry { m, n } => write!(f, "non-simple Parry, m={m}, n={n}"),
            ParryClass::Unresolved { depth } => write!(f, "unresolved at depth {depth}"),
        }
    }
}

/// Digits of an expansion: the whole word when periodicity was proven,
/// otherwise the computed prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expansion {
    Exact(EPWord),
    Prefix(DigitWord),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaExpansion {
    pub class: ParryClass,
    pub digits: Expansion,
}

impl BetaExpansion {
    pub fn word(&self) -> Option<&EPWord> {
        match &self.digits {
            Expansion::Exact(w) => Some(w),
            Expansion::Prefix(_) => None,
        }
    }

    /// First `n` digits, if known.
    pub fn prefix(&self, n: usize) -> Option<DigitWord> {
        match &self.digits {
            Expansion::Exact(w) => Some(w.prefix(n)),
            Expansion::Prefix(p) if p.len() >= n => Some(p.prefix(n)),
            Expansion::Prefix(_) => None,
        }
    }

    /// The exact word, or an error naming the depth reached.
    pub fn require_word(&self) -> Result<&EPWord> {
        match (&self.digits, self.class) {
            (Expansion::Exact(w), _) => Ok(w),
            (_, ParryClass::Unresolved { depth }) => Err(Error::Unresolved { depth }),
            (Expansion::Prefix(p), _) => Err(Error::Unresolved { depth: p.len() }),
        }
    }

    fn truncated(&self, depth: usize) -> BetaExpansion {
        match &self.digits {
            Expansion::Exact(_) => self.clone(),
            Expansion::Prefix(p) => BetaExpansion {
                class: ParryClass::Unresolved { depth },
                digits: Expansion::Prefix(p.prefix(depth.min(p.len()))),
            },
        }
    }
}

impl fmt::Display for BetaExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.digits {
            Expansion::Exact(w) => write!(f, "{w} [{}]", self.class),
            Expansion::Prefix(p) => write!(f, "{p}... [{}]", self.class),
        }
    }
}

/// A real base β > 1 known exactly.
///
/// The expansion of 1 is cached. Readers share the cache; a deeper
/// computation replaces it under the write lock.
#[derive(Debug)]
pub struct RealBase {
    spec: BaseSpec,
    value: AlgebraicReal,
    cache: RwLock<Option<BetaExpansion>>,
}

impl Clone for RealBase {
    fn clone(&self) -> Self {
        RealBase {
            spec: self.spec.clone(),
            value: self.value.clone(),
            cache: RwLock::new(self.cache.read().unwrap().clone()),
        }
    }
}

impl PartialEq for RealBase {
    fn eq(&self, other: &Self) -> bool {
        self.value.same_value(&other.value)
    }
}

impl RealBase {
    pub fn integer(b: i64) -> Result<Self> {
        Self::from_spec(BaseSpec::Integer(BigInt::from(b)))
    }

    pub fn rational(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidBase("zero denominator".into()));
        }
        Self::from_spec(BaseSpec::Rational(BigRational::new(p.into(), q.into())))
    }

    /// Root of `poly` (highest degree first) in `(lo, hi)`.
    pub fn algebraic(poly_high_first: &[i64], lo: (i64, i64), hi: (i64, i64)) -> Result<Self> {
        Self::from_spec(BaseSpec::Algebraic {
            poly: IntPoly::from_i64s(poly_high_first),
            lo: BigRational::new(lo.0.into(), lo.1.into()),
            hi: BigRational::new(hi.0.into(), hi.1.into()),
        })
    }

    pub fn parry(word: &EPWord) -> Result<Self> {
        Self::from_spec(BaseSpec::Parry(word.clone()))
    }

    pub fn from_spec(spec: BaseSpec) -> Result<Self> {
        let value = match &spec {
            BaseSpec::Integer(b) => {
                if b < &BigInt::from(2) {
                    return Err(Error::InvalidBase(format!("integer base {b} < 2")));
                }
                AlgebraicReal::rational(BigRational::from_integer(b.clone()))
            }
            BaseSpec::Rational(r) => {
                if r <= &BigRational::one() {
                    return Err(Error::InvalidBase(format!("rational base {r} <= 1")));
                }
                AlgebraicReal::rational(r.clone())
            }
            BaseSpec::Algebraic { poly, lo, hi } => AlgebraicReal::from_isolating(poly, lo.clone(), hi.clone())?,
            BaseSpec::Parry(d) => beta_from_expansion(d)?.value,
        };
        let cache = match &spec {
            BaseSpec::Parry(d) => Some(BetaExpansion {
                class: class_of(d),
                digits: Expansion::Exact(d.clone()),
            }),
            _ => None,
        };
        Ok(RealBase {
            spec,
            value,
            cache: RwLock::new(cache),
        })
    }

    pub fn spec(&self) -> &BaseSpec {
        &self.spec
    }

    pub fn value(&self) -> &AlgebraicReal {
        &self.value
    }

    /// Sets the bisection budget used by every sign and floor decision.
    pub fn with_budget(mut self, budget: usize) -> Self {
        self.value = self.value.with_budget(budget);
        self
    }

    /// `⌊β⌋`.
    pub fn floor(&self) -> Result<BigInt> {
        self.value.floor()
    }

    /// `⌈β⌉`.
    pub fn ceil(&self) -> Result<BigInt> {
        self.value.ceil()
    }

    /// Largest digit of the alphabet of `S_β` (canonical) or `S'_β`
    /// (non-canonical): `⌈β⌉ - 1` resp. `⌊β⌋`.
    pub fn alphabet_max(&self, variant: Variant) -> Result<Digit> {
        let v = match variant {
            Variant::Canonical => self.ceil()? - 1,
            Variant::NonCanonical => self.floor()?,
        };
        v.to_u32()
            .ok_or_else(|| Error::InvalidBase("base too large for u32 digits".into()))
    }

    /// `d_β(1)` computed by the greedy algorithm to at most `depth` digits.
    pub fn d_beta_one(&self, depth: usize) -> Result<BetaExpansion> {
        if depth == 0 {
            return Err(Error::InvalidArgument("depth must be positive".into()));
        }
        if let Some(e) = self.cache.read().unwrap().as_ref() {
            let usable = match &e.digits {
                Expansion::Exact(_) => true,
                Expansion::Prefix(p) => p.len() >= depth,
            };
            if usable {
                return Ok(e.truncated(depth));
            }
        }
        let e = greedy_expansion_of_one(&self.value, depth)?;
        let mut slot = self.cache.write().unwrap();
        let replace = match slot.as_ref() {
            None => true,
            Some(old) => match (&old.digits, &e.digits) {
                (Expansion::Exact(_), _) => false,
                (Expansion::Prefix(_), Expansion::Exact(_)) => true,
                (Expansion::Prefix(a), Expansion::Prefix(b)) => b.len() > a.len(),
            },
        };
        if replace {
            *slot = Some(e.clone());
        }
        Ok(e)
    }

    /// The quasi-greedy expansion `d*_β(1)`.
    pub fn d_beta_star(&self, depth: usize) -> Result<BetaExpansion> {
        let d = self.d_beta_one(depth)?;
        Ok(quasi_greedy(&d))
    }

    /// The exact coefficient word for the given variant: `d*_β(1)`
    /// (canonical) or `d_β(1)` (non-canonical).
    pub fn coefficient_word(&self, variant: Variant, depth: usize) -> Result<EPWord> {
        let e = match variant {
            Variant::Canonical => self.d_beta_star(depth)?,
            Variant::NonCanonical => self.d_beta_one(depth)?,
        };
        e.require_word().cloned()
    }

    /// Whether `w` is a factor of `S_β` (canonical) or `S'_β`
    /// (non-canonical): every suffix of `w` is lexicographically at most
    /// the prefix of the same length of `d*_β(1)` resp. `d_β(1)`.
    pub fn shift_member(&self, w: &DigitWord, variant: Variant) -> Result<bool> {
        let depth = DEFAULT_DEPTH.max(w.len());
        let e = match variant {
            Variant::Canonical => self.d_beta_star(depth)?,
            Variant::NonCanonical => self.d_beta_one(depth)?,
        };
        let a = e.prefix(w.len()).ok_or(Error::Unresolved { depth })?;
        Ok(suffixes_bounded(w.digits(), a.digits()))
    }
}

/// `Suff_i(w) <= Pref_i(a)` for every `i <= |w|`; `a` must be at least as
/// long as `w`.
pub(crate) fn suffixes_bounded(w: &[Digit], a: &[Digit]) -> bool {
    let n = w.len();
    (1..=n).all(|i| w[n - i..] <= a[..i])
}

fn class_of(d: &EPWord) -> ParryClass {
    match d.finite_part() {
        Some(t) => ParryClass::SimpleParry { n: t.len() },
        None => ParryClass::NonSimpleParry {
            m: d.preperiod().len(),
            n: d.period().len(),
        },
    }
}

fn quasi_greedy(d: &BetaExpansion) -> BetaExpansion {
    match (&d.digits, d.class) {
        (Expansion::Exact(w), ParryClass::SimpleParry { .. }) => {
            let mut t = w.finite_part().expect("simple Parry word is finite").to_vec();
            *t.last_mut().unwrap() -= 1;
            BetaExpansion {
                class: d.class,
                digits: Expansion::Exact(EPWord::new(Vec::new(), t).expect("nonempty period")),
            }
        }
        _ => d.clone(),
    }
}

fn digit_of(e: &BigInt) -> Result<Digit> {
    e.to_u32()
        .ok_or_else(|| Error::InvalidBase(format!("digit {e} out of range")))
}

fn greedy_expansion_of_one(value: &AlgebraicReal, depth: usize) -> Result<BetaExpansion> {
    let mut beta = value.clone();
    let mut r = QPoly::one();
    let mut seen: HashMap<QPoly, usize> = HashMap::new();
    seen.insert(r.clone(), 0);
    let mut digits: Vec<Digit> = Vec::with_capacity(depth);
    for i in 1..=depth {
        let deg_before = beta.modulus_degree();
        let q = beta.reduce(&QPoly::x().mul(&r));
        let e = beta.floor_at(&q)?;
        if e.is_negative() {
            return Err(Error::InvalidBase("negative digit".into()));
        }
        digits.push(digit_of(&e)?);
        r = q.sub(&QPoly::constant(BigRational::from_integer(e)));
        if beta.is_zero_at(&r) {
            let w = EPWord::finite(&DigitWord::new(digits));
            return Ok(BetaExpansion {
                class: class_of(&w),
                digits: Expansion::Exact(w),
            });
        }
        if beta.modulus_degree() != deg_before {
            seen = seen.into_iter().map(|(k, v)| (beta.reduce(&k), v)).collect();
        }
        r = beta.reduce(&r);
        if let Some(&j) = seen.get(&r) {
            let w = EPWord::new(digits[..j].to_vec(), digits[j..].to_vec())?;
            return Ok(BetaExpansion {
                class: class_of(&w),
                digits: Expansion::Exact(w),
            });
        }
        seen.insert(r.clone(), i);
    }
    Ok(BetaExpansion {
        class: ParryClass::Unresolved { depth },
        digits: Expansion::Prefix(DigitWord::new(digits)),
    })
}

/// The polynomial whose root greater than 1 is the base with greedy
/// expansion of 1 equal to `d`: `X^n - Σ t_j X^{n-j}` for a finite word
/// `t_1 ... t_n`, and
/// `(X^{m+n} - Σ_{j≤m+n} d_j X^{m+n-j}) - (X^m - Σ_{j≤m} d_j X^{m-j})`
/// for a preperiod of length `m` and a period of length `n`.
pub fn expansion_polynomial(d: &EPWord) -> IntPoly {
    match d.finite_part() {
        Some(t) => companion_like(t),
        None => periodic_polynomial(d),
    }
}

/// `(X^{m+n} - Σ_{j≤m+n} d_j X^{m+n-j}) - (X^m - Σ_{j≤m} d_j X^{m-j})` for
/// the stored preperiod (length `m`) and period (length `n`) of `d`, even
/// when the period is `0`.
pub fn periodic_polynomial(d: &EPWord) -> IntPoly {
    let m = d.preperiod().len();
    let n = d.period().len();
    let full: Vec<Digit> = (0..m + n).map(|i| d.at(i)).collect();
    let a = companion_like(&full);
    let b = companion_like(&full[..m]);
    sub_int(&a, &b)
}

/// `X^k - Σ_{j=1}^k w_j X^{k-j}` for `w` of length `k`.
pub(crate) fn companion_like(w: &[Digit]) -> IntPoly {
    let k = w.len();
    let mut c = vec![BigInt::zero(); k + 1];
    c[k] = BigInt::one();
    for (j, &wj) in w.iter().enumerate() {
        c[k - 1 - j] -= BigInt::from(wj);
    }
    IntPoly::from_low_first(c)
}

pub(crate) fn sub_int(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let (x, y) = (a.coeffs_low_first(), b.coeffs_low_first());
    let n = x.len().max(y.len());
    let z = BigInt::zero();
    IntPoly::from_low_first(
        (0..n)
            .map(|i| x.get(i).unwrap_or(&z) - y.get(i).unwrap_or(&z))
            .collect(),
    )
}

/// The unique β > 1 with `d_β(1) = d`, as an algebraic base.
pub fn beta_from_expansion(d: &EPWord) -> Result<RealBase> {
    if d.at(0) == 0 {
        return Err(Error::NotParryValid {
            word: d.to_string(),
            kind: "leading digit",
        });
    }
    if d == &EPWord::finite(&DigitWord::new(vec![1])) {
        return Err(Error::DegenerateBase);
    }
    if !is_parry_valid(d, true) {
        return Err(Error::NotParryValid {
            word: d.to_string(),
            kind: "strict",
        });
    }
    let poly = expansion_polynomial(d);
    let lo = BigRational::one();
    let hi = BigRational::from_integer(BigInt::from(d.at(0)) + 1);
    let spec = BaseSpec::Algebraic {
        poly: poly.clone(),
        lo: lo.clone(),
        hi: hi.clone(),
    };
    let value = AlgebraicReal::from_isolating(&poly, lo, hi)?;
    Ok(RealBase {
        spec,
        value,
        cache: RwLock::new(None),
    })
}

fn parse_rational(s: &str, whole: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::parse(whole, format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl FromStr for BaseSpec {
    type Err = Error;

    /// `int:3`, `rat:5/2`, `poly:1,-1,-1@(1,2)`, `parry:110(0)`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, body) = s
            .split_once(':')
            .ok_or_else(|| Error::parse(s, "expected int:, rat:, poly: or parry:"))?;
        match kind.trim() {
            "int" => Ok(BaseSpec::Integer(
                body.trim().parse().map_err(|_| Error::parse(s, "bad integer"))?,
            )),
            "rat" => Ok(BaseSpec::Rational(parse_rational(body, s)?)),
            "poly" => {
                let (coeffs, iv) = body
                    .split_once('@')
                    .ok_or_else(|| Error::parse(s, "missing '@(lo,hi)'"))?;
                let coeffs: Vec<BigInt> = coeffs
                    .split(',')
                    .map(|c| {
                        c.trim()
                            .parse()
                            .map_err(|_| Error::parse(s, format!("bad coefficient {:?}", c.trim())))
                    })
                    .collect::<Result<_>>()?;
                let iv = iv.trim();
                let inner = iv
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(|| Error::parse(s, "interval must be written (lo,hi)"))?;
                let (lo, hi) = inner
                    .split_once(',')
                    .ok_or_else(|| Error::parse(s, "interval must be written (lo,hi)"))?;
                Ok(BaseSpec::Algebraic {
                    poly: IntPoly::from_high_first(coeffs),
                    lo: parse_rational(lo, s)?,
                    hi: parse_rational(hi, s)?,
                })
            }
            "parry" => Ok(BaseSpec::Parry(body.parse()?)),
            other => Err(Error::parse(s, format!("unknown base kind {other:?}"))),
        }
    }
}

impl fmt::Display for BaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseSpec::Integer(b) => write!(f, "int:{b}"),
            BaseSpec::Rational(r) => write!(f, "rat:{r}"),
            BaseSpec::Algebraic { poly, lo, hi } => {
                let c: Vec<String> = poly.coeffs_high_first().iter().map(|c| c.to_string()).collect();
                write!(f, "poly:{}@({lo},{hi})", c.join(","))
            }
            BaseSpec::Parry(d) => write!(f, "parry:{d}"),
        }
    }
}

impl FromStr for RealBase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RealBase::from_spec(s.parse()?)
    }
}

impl fmt::Display for RealBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ep(s: &str) -> EPWord {
        s.parse().unwrap()
    }

    fn base(s: &str) -> RealBase {
        s.parse().unwrap()
    }

    #[test]
    fn expansions_of_one() {
        let e = base("int:3").d_beta_one(5).unwrap();
        assert_eq!(e.word(), Some(&ep("3(0)")));
        assert_eq!(e.class, ParryClass::SimpleParry { n: 1 });

        let e = base("poly:1,-1,-1@(1,2)").d_beta_one(5).unwrap();
        assert_eq!(e.word(), Some(&ep("11(0)")));
        assert_eq!(e.class, ParryClass::SimpleParry { n: 2 });

        let e = base("poly:1,-3,1@(2,3)").d_beta_one(5).unwrap();
        assert_eq!(e.word(), Some(&ep("2(1)")));
        assert_eq!(e.class, ParryClass::NonSimpleParry { m: 1, n: 1 });
    }

    #[test]
    fn quasi_greedy_expansions() {
        assert_eq!(base("int:3").d_beta_star(5).unwrap().word(), Some(&ep("(2)")));
        assert_eq!(
            base("poly:1,-1,-1@(1,2)").d_beta_star(5).unwrap().word(),
            Some(&ep("(10)"))
        );
        assert_eq!(
            base("poly:1,-3,1@(2,3)").d_beta_star(5).unwrap().word(),
            Some(&ep("2(1)"))
        );
    }

    #[test]
    fn rational_base_is_unresolved() {
        let b = base("rat:5/2");
        let e = b.d_beta_one(20).unwrap();
        assert_eq!(e.class, ParryClass::Unresolved { depth: 20 });
        // 5/2 = 2 + 1/2, (1/2)(5/2) = 5/4, (1/4)(5/2) = 5/8, (5/8)(5/2) = 25/16
        assert_eq!(e.prefix(4).unwrap(), DigitWord::new(vec![2, 1, 0, 1]));
        assert!(matches!(e.require_word(), Err(Error::Unresolved { depth: 20 })));
        let star = b.d_beta_star(20).unwrap();
        assert_eq!(star.prefix(4), e.prefix(4));
        // cached deeper prefix is reused for shallower requests
        assert_eq!(b.d_beta_one(3).unwrap().prefix(3), e.prefix(3));
    }

    #[test]
    fn recovered_bases() {
        let b = beta_from_expansion(&ep("3(0)")).unwrap();
        assert_eq!(b.value().as_rational(), Some(&BigRational::from_integer(3.into())));
        let b = beta_from_expansion(&ep("11(0)")).unwrap();
        assert_eq!(expansion_polynomial(&ep("11(0)")), IntPoly::from_i64s(&[1, -1, -1]));
        assert_eq!(b.d_beta_one(10).unwrap().word(), Some(&ep("11(0)")));
        let b = beta_from_expansion(&ep("2(1)")).unwrap();
        assert_eq!(expansion_polynomial(&ep("2(1)")), IntPoly::from_i64s(&[1, -3, 1]));
        assert_eq!(b.d_beta_one(10).unwrap().word(), Some(&ep("2(1)")));
    }

    #[test]
    fn recovery_rejects_invalid_words() {
        assert_eq!(beta_from_expansion(&ep("1(0)")).unwrap_err(), Error::DegenerateBase);
        assert!(beta_from_expansion(&ep("(2)")).is_err());
        assert!(beta_from_expansion(&ep("0(1)")).is_err());
        assert!(beta_from_expansion(&ep("10(1)")).is_err());
    }

    #[test]
    fn shift_membership() {
        let three = base("int:3");
        let w = |s: &str| s.parse::<DigitWord>().unwrap();
        assert!(!three.shift_member(&w("23"), Variant::Canonical).unwrap());
        assert!(three.shift_member(&w("22"), Variant::Canonical).unwrap());
        assert!(three.shift_member(&w("30"), Variant::NonCanonical).unwrap());
        assert!(!three.shift_member(&w("30"), Variant::Canonical).unwrap());
        let phi = base("poly:1,-1,-1@(1,2)");
        assert!(!phi.shift_member(&w("11"), Variant::Canonical).unwrap());
        assert!(phi.shift_member(&w("11"), Variant::NonCanonical).unwrap());
    }

    #[test]
    fn base_syntax_round_trip() {
        for s in [
            "int:3",
            "rat:5/2",
            "poly:1,-1,-1@(1,2)",
            "parry:110(0)",
            "poly:1,-1,-1@(3/2,2)",
        ] {
            assert_eq!(s.parse::<BaseSpec>().unwrap().to_string(), s);
        }
        assert!("foo:3".parse::<BaseSpec>().is_err());
        assert!("poly:1,-1,-1".parse::<BaseSpec>().is_err());
        assert!("int:1".parse::<RealBase>().is_err());
        assert!("rat:1/1".parse::<RealBase>().is_err());
    }

    #[test]
    fn alphabet_bounds() {
        let phi = base("poly:1,-1,-1@(1,2)");
        assert_eq!(phi.alphabet_max(Variant::Canonical).unwrap(), 1);
        assert_eq!(phi.alphabet_max(Variant::NonCanonical).unwrap(), 1);
        let three = base("int:3");
        assert_eq!(three.alphabet_max(Variant::Canonical).unwrap(), 2);
        assert_eq!(three.alphabet_max(Variant::NonCanonical).unwrap(), 3);
    }
}
