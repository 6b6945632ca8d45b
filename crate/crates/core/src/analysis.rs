//! Asymptotic checks: dominant root, renewal limit, entropy, and the
//! behavior of the lexicographically greatest words.
//!
//! Pass/fail decisions are made on exact rationals and interval enclosures
//! of β; floating point values are carried only for display.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::numsys::NumSys;
use crate::poly::{to_f64, Interval};
use crate::realbase::{RealBase, DEFAULT_DEPTH};
use crate::words::{DigitWord, EPWord};
use crate::Variant;

fn big(x: &BigUint) -> BigRational {
    BigRational::from_integer(x.clone().into())
}

fn int(n: usize) -> BigRational {
    BigRational::from_integer(n.into())
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootEstimate {
    /// `U(i+1)/U(i)` for `i = 0..i_max`.
    pub ratios: Vec<BigRational>,
    pub estimate: BigRational,
}

/// The quotients `U(i+1)/U(i)`, `0 <= i < i_max`.
pub fn dominant_root_estimate(s: &NumSys, i_max: usize) -> Result<RootEstimate> {
    if i_max < 2 {
        return Err(Error::InvalidArgument("i_max must be at least 2".into()));
    }
    let vals = s.values(i_max + 1);
    let ratios: Vec<BigRational> = vals
        .windows(2)
        .map(|w| BigRational::new(w[1].clone().into(), w[0].clone().into()))
        .collect();
    let estimate = ratios.last().unwrap().clone();
    Ok(RootEstimate { ratios, estimate })
}

/// Whether `|x - β| <= tol` is certain, using an enclosure of β narrower
/// than `tol`.
pub fn within_of_base(x: &BigRational, base: &RealBase, tol: &BigRational) -> Result<bool> {
    let b = base.value().enclosure(tol)?;
    Ok((x - tol) <= b.lo && b.hi <= (x + tol))
}

/// `Σ_{i≥1} i a_i z^i` for `a = x y^ω`, `|x| = m`, `|y| = n`, in closed form:
/// `Σ_{i≤m} i x_i z^i + Σ_{j≤n} y_j z^{m+j} ((m+j)/(1-z^n) + n z^n/(1-z^n)^2)`.
fn weighted_series(a: &EPWord, z: &Interval) -> Interval {
    let m = a.preperiod().len();
    let n = a.period().len();
    let one = Interval::point(BigRational::one());
    let mut acc = Interval::point(BigRational::zero());
    for (i, &x) in a.preperiod().iter().enumerate() {
        if x != 0 {
            let term = z.pow(i + 1).mul(&Interval::point(int((i + 1) * x as usize)));
            acc = acc.add(&term);
        }
    }
    let zn = z.pow(n);
    let q = one.sub(&zn);
    let q2 = q.mul(&q);
    let tail = zn.mul(&Interval::point(int(n))).div(&q2);
    for (j, &y) in a.period().iter().enumerate() {
        if y == 0 {
            continue;
        }
        let k = m + j + 1;
        let inner = Interval::point(int(k)).div(&q).add(&tail);
        let term = z.pow(k).mul(&inner).mul(&Interval::point(int(y as usize)));
        acc = acc.add(&term);
    }
    acc
}

/// `β / ((β - 1) Σ_{i≥1} i a_i β^{-i})` over an enclosure of β.
fn renewal_expr(a: &EPWord, beta: &Interval) -> Interval {
    let one = Interval::point(BigRational::one());
    let z = one.div(beta);
    let s = weighted_series(a, &z);
    beta.div(&beta.sub(&one).mul(&s))
}

/// An enclosure of width below `width` of
/// `β / ((β - 1) Σ_{i≥1} i a_i β^{-i})`, where `a` is the coefficient word
/// of the given variant. The series is summed in closed form from the
/// preperiod and period of `a`, so only Parry bases are accepted.
pub fn renewal_limit_target(base: &RealBase, variant: Variant, width: &BigRational) -> Result<Interval> {
    let a = base.coefficient_word(variant, DEFAULT_DEPTH)?;
    let mut value = base.value().clone();
    let mut w = width.clone();
    loop {
        let b = value.refine_to_width(&w)?;
        let t = renewal_expr(&a, &b);
        if &t.width() < width {
            return Ok(t);
        }
        w = &w / int(1 << 16);
    }
}

/// Enclosures of `U(i)/β^i` for `i = 0..=i_max`, each narrower than
/// `width`.
pub fn renewal_limit_empirical(
    s: &NumSys,
    base: &RealBase,
    i_max: usize,
    width: &BigRational,
) -> Result<Vec<Interval>> {
    if i_max < 1 {
        return Err(Error::InvalidArgument("i_max must be at least 1".into()));
    }
    let vals = s.values(i_max + 1);
    let mut value = base.value().clone();
    let mut w = width / int(i_max + 1);
    loop {
        let b = value.refine_to_width(&w)?;
        let one = Interval::point(BigRational::one());
        let inv = one.div(&b);
        let mut p = one;
        let mut out = Vec::with_capacity(i_max + 1);
        for v in &vals {
            out.push(p.mul(&Interval::point(big(v))));
            p = p.mul(&inv);
        }
        if out.iter().all(|iv| &iv.width() < width) {
            return Ok(out);
        }
        w = &w / int(1 << 16);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyEstimate {
    pub i_max: usize,
    /// `(1/i) log count(i)` at `i = i_max`.
    pub per_length: f64,
    /// `log(count(i_max) / count(i_max - 1))`.
    pub ratio: f64,
    #[serde(skip)]
    pub ratio_exact: BigRational,
}

/// Where word counts come from.
#[derive(Debug, Clone, Copy)]
pub enum CountSource<'a> {
    Automaton(&'a Dfa),
    /// Words of each length in `N_U`.
    System(&'a NumSys),
}

impl CountSource<'_> {
    pub fn count(&self, i: usize) -> BigUint {
        match self {
            CountSource::Automaton(d) => d.count_accepted(i),
            CountSource::System(s) => s.count_words(i),
        }
    }
}

fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        x.to_f64().unwrap().ln()
    } else {
        let shift = bits - 900;
        (x >> shift).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// Entropy estimates from the number of words of length `i_max`.
///
/// The ratio form converges geometrically when the counts satisfy a linear
/// recurrence with a simple dominant root, while the per-length form has an
/// error of order `1/i`; both tend to the same limit.
pub fn entropy_estimate(src: CountSource<'_>, i_max: usize) -> Result<EntropyEstimate> {
    if i_max < 2 {
        return Err(Error::InvalidArgument("i_max must be at least 2".into()));
    }
    let c = src.count(i_max);
    let p = src.count(i_max - 1);
    if c.is_zero() || p.is_zero() {
        return Err(Error::InvalidArgument("no words of the probed length".into()));
    }
    Ok(EntropyEstimate {
        i_max,
        per_length: ln_big(&c) / i_max as f64,
        ratio: ln_big(&c) - ln_big(&p),
        ratio_exact: BigRational::new(c.into(), p.into()),
    })
}

/// An upper bound on `|log r - log β|` from `|log r - log β| <= |r - β| /
/// min(r, β)`, using an enclosure of β of width below `width`.
pub fn log_error_bound(r: &BigRational, base: &RealBase, width: &BigRational) -> Result<BigRational> {
    let b = base.value().enclosure(width)?;
    let diff = (r - &b.lo).abs().max((r - &b.hi).abs());
    let low = r.clone().min(b.lo.clone());
    if !low.is_positive() {
        return Err(Error::InvalidArgument("ratio must be positive".into()));
    }
    Ok(diff / low)
}

/// Which of the two expansions a stable prefix agrees with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LimitMatch {
    DStar,
    D,
    Both,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HollanderRow {
    pub i: usize,
    /// `Pref_ell(rep_U(U(i) - 1))`.
    pub prefix: DigitWord,
    /// Smallest `k` with `Pref_ell(lex_max(i)) = Pref_ell(w_k 0^ω)`, where
    /// `w_k = (t_1 ... t_{n-1} (t_n - 1))^k t_1 ... t_n`; simple Parry
    /// bases only.
    pub k: Option<usize>,
    /// Length of the common prefix of `lex_max(i)` and `d_β(1)`.
    pub common_with_d: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stabilization {
    /// The prefix is constant for `from_i <= i <= i_max`.
    pub from_i: usize,
    pub prefix: DigitWord,
    pub matches: LimitMatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HollanderReport {
    pub ell: usize,
    pub i_min: usize,
    pub i_max: usize,
    pub simple_parry: bool,
    pub rows: Vec<HollanderRow>,
    /// Smallest `p <= (i_max - i_min + 1) / 2` with `k(i + p) = k(i)` on the
    /// whole probed range (simple Parry bases only).
    pub k_period: Option<usize>,
    /// Set when `Pref_ell(lex_max(i))` is constant on a tail covering at
    /// least the second half of the probed range.
    pub stabilization: Option<Stabilization>,
}

/// Compares `Pref_ell(rep_U(U(i) - 1))` for `ell <= i <= i_max` with the
/// prefixes predicted from `base`. Nothing is claimed past `i_max`.
pub fn hollander_probe(s: &NumSys, base: &RealBase, ell: usize, i_max: usize) -> Result<HollanderReport> {
    if ell == 0 {
        return Err(Error::InvalidArgument("ell must be positive".into()));
    }
    if ell > i_max {
        return Err(Error::InvalidArgument(format!("ell = {ell} exceeds i_max = {i_max}")));
    }
    let d = base.coefficient_word(Variant::NonCanonical, DEFAULT_DEPTH)?;
    let d_star = base.coefficient_word(Variant::Canonical, DEFAULT_DEPTH)?;
    let t = d.finite_part().map(|t| t.to_vec());
    let w_prefixes: Vec<DigitWord> = match &t {
        Some(t) => {
            let n = t.len();
            let mut block = t.clone();
            block[n - 1] -= 1;
            (0..=ell.div_ceil(n) + 1)
                .map(|k| {
                    let mut w: Vec<_> = block.iter().copied().cycle().take(k * n).collect();
                    w.extend_from_slice(t);
                    EPWord::finite(&DigitWord::new(w)).prefix(ell)
                })
                .collect()
        }
        None => Vec::new(),
    };
    let rows: Vec<HollanderRow> = (ell..=i_max)
        .map(|i| {
            let lm = s.lex_max(i);
            let prefix = lm.prefix(ell);
            let k = w_prefixes.iter().position(|p| p == &prefix);
            let common_with_d = (0..i).take_while(|&j| lm.digits()[j] == d.at(j)).count();
            HollanderRow {
                i,
                prefix,
                k,
                common_with_d,
            }
        })
        .collect();
    let len = rows.len();
    let k_period = if t.is_some() {
        (1..=len / 2).find(|&p| (0..len - p).all(|j| rows[j].k == rows[j + p].k))
    } else {
        None
    };
    let last = &rows[len - 1].prefix;
    let tail = rows.iter().rev().take_while(|r| &r.prefix == last).count();
    let stabilization = (tail * 2 >= len && len >= 2).then(|| {
        let matches = match (last == &d_star.prefix(ell), last == &d.prefix(ell)) {
            (true, true) => LimitMatch::Both,
            (true, false) => LimitMatch::DStar,
            (false, true) => LimitMatch::D,
            (false, false) => LimitMatch::Neither,
        };
        Stabilization {
            from_i: rows[len - tail].i,
            prefix: last.clone(),
            matches,
        }
    });
    Ok(HollanderReport {
        ell,
        i_min: ell,
        i_max,
        simple_parry: t.is_some(),
        rows,
        k_period,
        stabilization,
    })
}

/// First `i <= upto` with `rep_U(U(i) - 1) != Pref_i(a)`.
pub fn lex_max_prefix_failure(s: &NumSys, a: &EPWord, upto: usize) -> Option<usize> {
    (0..=upto).find(|&i| s.lex_max(i) != a.prefix(i))
}

/// Everything the `analyze` command reports for one system and base.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub i_max: usize,
    pub ratios: Vec<f64>,
    pub ratio_within_1e_8: bool,
    pub target_interval: Option<[f64; 2]>,
    pub empirical_interval: [f64; 2],
    pub renewal_distance: Option<f64>,
    pub entropy: EntropyEstimate,
    pub entropy_error_bound: f64,
    pub hollander: Option<HollanderReport>,
}

/// Runs the analyses at `i_max` for a system believed to be attached to
/// `base`. When `variant` is given the renewal target of that variant is
/// included; `ell` enables the prefix probe.
pub fn analyze(
    s: &NumSys,
    base: &RealBase,
    variant: Option<Variant>,
    i_max: usize,
    ell: Option<usize>,
) -> Result<AnalysisReport> {
    let width = crate::poly::ten_pow_neg(10);
    let roots = dominant_root_estimate(s, i_max)?;
    let ratio_ok = within_of_base(&roots.estimate, base, &crate::poly::ten_pow_neg(8))?;
    let emp = renewal_limit_empirical(s, base, i_max, &width)?;
    let last = emp.last().unwrap().clone();
    let target = match variant {
        Some(v) => Some(renewal_limit_target(base, v, &width)?),
        None => None,
    };
    let entropy = entropy_estimate(CountSource::System(s), i_max)?;
    let bound = log_error_bound(&entropy.ratio_exact, base, &width)?;
    let hollander = match ell {
        Some(l) => Some(hollander_probe(s, base, l, i_max)?),
        None => None,
    };
    Ok(AnalysisReport {
        i_max,
        ratios: roots.ratios.iter().map(to_f64).collect(),
        ratio_within_1e_8: ratio_ok,
        target_interval: target.as_ref().map(|t| [t.lo_f64(), t.hi_f64()]),
        empirical_interval: [last.lo_f64(), last.hi_f64()],
        renewal_distance: target.as_ref().map(|t| to_f64(&t.distance(&last))),
        entropy,
        entropy_error_bound: to_f64(&bound),
        hollander,
    })
}
