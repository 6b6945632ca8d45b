//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines are always printed; the
//! process exits nonzero if any criterion fails.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bertrand_core::analysis::{
    dominant_root_estimate, entropy_estimate, hollander_probe, lex_max_prefix_failure, log_error_bound,
    renewal_limit_empirical, renewal_limit_target, within_of_base, CountSource, LimitMatch,
};
use bertrand_core::automata::{build_shift_dfa, dfa_equiv_language};
use bertrand_core::bertrand::{
    build_bertrand, char_poly, classify_bertrand, counting_identity_check, naive_values, recurrence_failure, residuals,
    Verdict,
};
use bertrand_core::numsys::Direction;
use bertrand_core::poly::{ten_pow_neg, Interval, QPoly};
use bertrand_core::{Dfa, DigitWord, EPWord, IntPoly, NumSys, RealBase, Variant};
use num_rational::BigRational;
use num_traits::One;

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixture(name: &str) -> NumSys {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name]
        .iter()
        .collect();
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    NumSys::from_json(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn ep(s: &str) -> EPWord {
    s.parse().unwrap()
}

fn w(s: &str) -> DigitWord {
    s.parse().unwrap()
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

struct Fixture {
    name: &'static str,
    base: RealBase,
    poly: IntPoly,
    simple: bool,
}

fn fixtures() -> Vec<Fixture> {
    let alg = |name, p: &[i64], lo: i64, hi: i64, simple| Fixture {
        name,
        base: RealBase::algebraic(p, (lo, 1), (hi, 1)).unwrap(),
        poly: IntPoly::from_i64s(p),
        simple,
    };
    vec![
        alg("2", &[1, -2], 1, 3, true),
        alg("3", &[1, -3], 2, 4, true),
        alg("phi", &[1, -1, -1], 1, 2, true),
        alg("phi^2", &[1, -3, 1], 2, 3, false),
        alg("tribonacci", &[1, -1, -1, -1], 1, 2, true),
    ]
}

/// Every word of length `len` over `0..=amax`.
fn all_words(amax: u32, len: usize) -> impl Iterator<Item = DigitWord> {
    let k = u64::from(amax) + 1;
    (0..k.pow(len as u32)).map(move |mut idx| {
        let mut d = vec![0; len];
        for slot in d.iter_mut().rev() {
            *slot = (idx % k) as u32;
            idx /= k;
        }
        DigitWord::new(d)
    })
}

/// Positions of `w` reachable from 0 by reading blocks from `blocks`.
fn star_reach(w: &[u32], blocks: &[&[u32]]) -> Vec<usize> {
    let mut seen = vec![false; w.len() + 1];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(p) = stack.pop() {
        for b in blocks {
            let e = p + b.len();
            if e <= w.len() && &w[p..e] == *b && !seen[e] {
                seen[e] = true;
                stack.push(e);
            }
        }
    }
    (0..=w.len()).filter(|&p| seen[p]).collect()
}

/// `{0,1,2}* ∪ {0,1,2}* 3 0*`.
fn lang_nc3(w: &[u32]) -> bool {
    match w.iter().position(|&d| d == 3) {
        None => w.iter().all(|&d| d <= 2),
        Some(p) => w[..p].iter().all(|&d| d <= 2) && w[p + 1..].iter().all(|&d| d == 0),
    }
}

/// `{0,10}* ∪ {0,10}* 1 ∪ {0,10}* 1 1 0*`.
fn lang_ncphi(w: &[u32]) -> bool {
    star_reach(w, &[&[0], &[1, 0]]).into_iter().any(|p| {
        let r = &w[p..];
        r.is_empty() || r == [1] || (r.len() >= 2 && r[..2] == [1, 1] && r[2..].iter().all(|&d| d == 0))
    })
}

fn criterion_1() -> Check {
    let three = RealBase::integer(3).unwrap();
    let phi = RealBase::algebraic(&[1, -1, -1], (1, 1), (2, 1)).unwrap();
    let phi2 = RealBase::algebraic(&[1, -3, 1], (2, 1), (3, 1)).unwrap();
    let cases = [
        ("d_3(1)", three.d_beta_one(64).unwrap(), "30(0)"),
        ("d*_3(1)", three.d_beta_star(64).unwrap(), "(2)"),
        ("d_phi(1)", phi.d_beta_one(64).unwrap(), "110(0)"),
        ("d_phi2(1)", phi2.d_beta_one(64).unwrap(), "2(1)"),
    ];
    for (label, got, want) in cases {
        ensure(got.word() == Some(&ep(want)), || {
            format!("{label} = {got}, expected {want}")
        })?;
    }
    let nc3 = fixture("ncbase3.json");
    for len in 0..=8 {
        for x in all_words(3, len) {
            ensure(nc3.member(&x) == lang_nc3(x.digits()), || {
                format!("3U+1 system disagrees on {x}")
            })?;
        }
    }
    let ncphi = fixture("ncphi.json");
    for len in 0..=8 {
        for x in all_words(1, len) {
            ensure(ncphi.member(&x) == lang_ncphi(x.digits()), || {
                format!("non-canonical phi disagrees on {x}")
            })?;
        }
    }
    let prolong = fixture("not_prolongable.json").check_bertrand(6).unwrap();
    let v = prolong
        .first_violation
        .clone()
        .ok_or("no violation for U=(1,3,4,7,...)")?;
    ensure(v.word == w("20") && v.direction == Direction::Prolongability, || {
        format!("first violation {} ({})", v.word, v.direction)
    })?;
    let prefix_sys = fixture("not_prefix_closed.json");
    ensure(!prefix_sys.member(&w("5")) && prefix_sys.member(&w("50")), || {
        "5/50 membership".into()
    })?;
    let r = prefix_sys.check_bertrand(4).unwrap();
    ensure(
        r.violations
            .iter()
            .any(|v| v.word == w("50") && v.direction == Direction::PrefixClosure),
        || "50 not reported as a prefix-closure violation".into(),
    )
}

fn criterion_2() -> Check {
    for f in fixtures() {
        for variant in [Variant::Canonical, Variant::NonCanonical] {
            let built = build_bertrand(&f.base, variant).map_err(|e| e.to_string())?;
            let s = &built.system;
            let tag = format!("{} {variant}", f.name);
            let want_max = f.base.alphabet_max(variant).unwrap();
            ensure(s.alphabet_max() == want_max, || {
                format!("{tag}: alphabet max {} != {want_max}", s.alphabet_max())
            })?;
            ensure(residuals(s, &built.word, 30).iter().all(|r| r.is_one()), || {
                format!("{tag}: coefficient residual is not 1")
            })?;
            ensure(naive_values(&built.word, 31) == s.values(31), || {
                format!("{tag}: values differ from direct sum")
            })?;
            let verdict = classify_bertrand(s, 10).map_err(|e| e.to_string())?;
            let base = match (&verdict, variant, f.simple) {
                (Verdict::Case2 { base, evidence, .. }, Variant::Canonical, true)
                | (Verdict::Case3 { base, evidence, .. }, Variant::NonCanonical, true)
                    if evidence.is_certified() =>
                {
                    base
                }
                (
                    Verdict::Case3 {
                        base,
                        coincides_with_canonical: true,
                        evidence,
                        ..
                    },
                    _,
                    false,
                ) if evidence.is_certified() => base,
                _ => return Err(format!("{tag}: classified as {verdict}")),
            };
            ensure(base == &f.base, || format!("{tag}: recovered {base}"))?;
            let input = QPoly::from_int(&f.poly);
            let g = input.gcd(base.value().modulus());
            ensure(
                g.degree().unwrap_or(0) >= 1 && base.value().modulus().rem(&g).is_zero(),
                || format!("{tag}: recovered polynomial shares no factor with {}", f.poly),
            )?;
        }
    }
    Ok(())
}

fn three_canonical() -> Dfa {
    Dfa::new(1, 0, [0], [(0, 0, 0), (0, 1, 0), (0, 2, 0)]).unwrap()
}

fn three_noncanonical() -> Dfa {
    Dfa::new(2, 0, [0, 1], [(0, 0, 0), (0, 1, 0), (0, 2, 0), (0, 3, 1), (1, 0, 1)]).unwrap()
}

fn phi_canonical() -> Dfa {
    Dfa::new(2, 0, [0, 1], [(0, 0, 0), (0, 1, 1), (1, 0, 0)]).unwrap()
}

fn phi_noncanonical() -> Dfa {
    Dfa::new(3, 0, [0, 1, 2], [(0, 0, 0), (0, 1, 1), (1, 0, 0), (1, 1, 2), (2, 0, 2)]).unwrap()
}

fn criterion_3() -> Check {
    let three = RealBase::integer(3).unwrap();
    let phi = RealBase::algebraic(&[1, -1, -1], (1, 1), (2, 1)).unwrap();
    let golden = [
        (
            "3 canonical",
            &three,
            Variant::Canonical,
            three_canonical(),
            1,
            "base3.json",
        ),
        (
            "3 noncanonical",
            &three,
            Variant::NonCanonical,
            three_noncanonical(),
            2,
            "ncbase3.json",
        ),
        (
            "phi canonical",
            &phi,
            Variant::Canonical,
            phi_canonical(),
            2,
            "zeckendorf.json",
        ),
        (
            "phi noncanonical",
            &phi,
            Variant::NonCanonical,
            phi_noncanonical(),
            3,
            "ncphi.json",
        ),
    ];
    for (tag, base, variant, reference, states, file) in golden {
        let d = build_shift_dfa(base, variant).unwrap().dfa;
        ensure(d.num_states() == states && d.minimize().num_states() == states, || {
            format!("{tag}: {} states", d.num_states())
        })?;
        ensure(d.is_isomorphic(&reference), || {
            format!("{tag}: not isomorphic to the reference automaton")
        })?;
        let r = dfa_equiv_language(&d, &fixture(file), 8);
        ensure(r.agree(), || format!("{tag}: disagreement {:?}", r.first_disagreement))?;
    }
    for f in fixtures() {
        for variant in [Variant::Canonical, Variant::NonCanonical] {
            let d = build_shift_dfa(&f.base, variant).unwrap().dfa;
            let s = build_bertrand(&f.base, variant).unwrap().system;
            let r = dfa_equiv_language(&d, &s, 8);
            ensure(r.agree(), || {
                format!("{} {variant}: disagreement {:?}", f.name, r.first_disagreement)
            })?;
            for i in 0..=25 {
                ensure(d.count_accepted(i) == s.u(i), || {
                    format!("{} {variant}: count at {i}", f.name)
                })?;
            }
        }
    }
    Ok(())
}

fn criterion_4() -> Check {
    let cases = [
        ("(10)", Variant::Canonical, "X^2 - X - 1", "zeckendorf.json"),
        ("110(0)", Variant::NonCanonical, "X^3 - 2X^2 + 1", "ncphi.json"),
        ("30(0)", Variant::NonCanonical, "X^2 - 4X + 3", "ncbase3.json"),
        ("2(1)", Variant::Canonical, "X^2 - 3X + 1", "phi2.json"),
    ];
    for (word, variant, want, file) in cases {
        let p = char_poly(&ep(word), variant).map_err(|e| e.to_string())?;
        ensure(p.to_string() == want, || format!("{word} {variant}: {p}"))?;
        let s = fixture(file);
        ensure(recurrence_failure(&s, &p, 30).is_none(), || {
            format!("{p} fails on {file}")
        })?;
        let built = NumSys::bertrand(ep(word)).unwrap();
        ensure(built.values(31) == s.values(31), || {
            format!("{file} is not the system of {word}")
        })?;
    }
    Ok(())
}

fn criterion_5() -> Check {
    for f in fixtures().into_iter().filter(|f| f.simple) {
        let r = counting_identity_check(&f.base, 20).map_err(|e| e.to_string())?;
        ensure(r.holds(), || format!("{}: fails at i = {:?}", f.name, r.first_failure))?;
    }
    Ok(())
}

/// `φ²/√5` from a rational enclosure of `√5`.
fn binet_target() -> Interval {
    let lo = q(2_236_067_977, 1_000_000_000);
    let hi = q(2_236_067_978, 1_000_000_000);
    assert!(&lo * &lo < q(5, 1) && q(5, 1) < &hi * &hi);
    let s = Interval::new(lo, hi);
    let three = Interval::point(q(3, 1));
    let two = Interval::point(q(2, 1));
    // φ² / √5 = (3 + √5) / (2√5)
    three.add(&s).div(&two.mul(&s))
}

fn criterion_6() -> Check {
    let tol = ten_pow_neg(6);
    let width = ten_pow_neg(7);
    for f in fixtures() {
        for variant in [Variant::Canonical, Variant::NonCanonical] {
            let tag = format!("{} {variant}", f.name);
            let s = build_bertrand(&f.base, variant).unwrap().system;
            let est = dominant_root_estimate(&s, 60).unwrap();
            ensure(within_of_base(&est.estimate, &f.base, &ten_pow_neg(8)).unwrap(), || {
                format!("{tag}: ratio not within 1e-8")
            })?;
            let target = renewal_limit_target(&f.base, variant, &width).map_err(|e| e.to_string())?;
            let emp = renewal_limit_empirical(&s, &f.base, 60, &width).map_err(|e| e.to_string())?;
            let last = emp.last().unwrap();
            ensure(target.width() < tol && last.width() < tol, || {
                format!("{tag}: enclosures too wide")
            })?;
            ensure(target.distance(last) <= tol, || {
                format!(
                    "{tag}: U(60)/β^60 = [{}, {}] vs target [{}, {}]",
                    last.lo_f64(),
                    last.hi_f64(),
                    target.lo_f64(),
                    target.hi_f64()
                )
            })?;
            if f.simple {
                let e = entropy_estimate(CountSource::System(&s), 60).unwrap();
                let bound = log_error_bound(&e.ratio_exact, &f.base, &ten_pow_neg(10)).unwrap();
                ensure(bound < tol, || format!("{tag}: entropy error bound {bound}"))?;
                let d = build_shift_dfa(&f.base, variant).unwrap().dfa;
                let e = entropy_estimate(CountSource::Automaton(&d), 60).unwrap();
                let bound = log_error_bound(&e.ratio_exact, &f.base, &ten_pow_neg(10)).unwrap();
                ensure(bound < tol, || format!("{tag}: automaton entropy error bound {bound}"))?;
            }
        }
    }
    let w = ten_pow_neg(10);
    for b in 2..=5 {
        let t = renewal_limit_target(&RealBase::integer(b).unwrap(), Variant::Canonical, &w).unwrap();
        ensure(t.contains(&BigRational::one()), || {
            format!("base {b} target excludes 1")
        })?;
    }
    let t = renewal_limit_target(&RealBase::integer(3).unwrap(), Variant::NonCanonical, &w).unwrap();
    ensure(t.contains(&q(3, 2)), || {
        "non-canonical base 3 target excludes 3/2".into()
    })?;
    let phi = RealBase::algebraic(&[1, -1, -1], (1, 1), (2, 1)).unwrap();
    let t = renewal_limit_target(&phi, Variant::Canonical, &w).unwrap();
    ensure(t.overlaps(&binet_target()), || {
        "Zeckendorf target misses the Binet value".into()
    })?;
    let zeck = fixture("zeckendorf.json");
    let emp = renewal_limit_empirical(&zeck, &phi, 60, &ten_pow_neg(7)).unwrap();
    ensure(emp.last().unwrap().distance(&binet_target()) <= tol, || {
        "Zeckendorf U(60)/φ^60 far from Binet value".into()
    })
}

fn criterion_7() -> Check {
    let phi = RealBase::algebraic(&[1, -1, -1], (1, 1), (2, 1)).unwrap();
    let alternating = fixture("alternating.json");
    let r = hollander_probe(&alternating, &phi, 4, 40).map_err(|e| e.to_string())?;
    for row in &r.rows {
        let want = if row.i % 4 < 2 { 0 } else { 1 };
        ensure(row.k == Some(want), || format!("i = {}: k = {:?}", row.i, row.k))?;
    }
    ensure(r.rows.first().map(|x| x.i) == Some(4), || {
        "probe does not start at 4".into()
    })?;
    ensure(r.k_period == Some(4), || format!("k period {:?}", r.k_period))?;
    ensure(r.stabilization.is_none(), || {
        "alternating system reported as stable".into()
    })?;

    let zeck = fixture("zeckendorf.json");
    let r = hollander_probe(&zeck, &phi, 6, 40).map_err(|e| e.to_string())?;
    ensure(r.rows.iter().all(|x| x.k == Some(3)), || {
        "Zeckendorf k is not constantly 3".into()
    })?;
    let st = r.stabilization.ok_or("Zeckendorf not stable")?;
    ensure(st.matches == LimitMatch::DStar, || {
        format!("Zeckendorf limit {:?}", st.matches)
    })?;

    let mut bertrand: Vec<(String, NumSys)> = Vec::new();
    for name in [
        "base3.json",
        "ncbase3.json",
        "zeckendorf.json",
        "ncphi.json",
        "phi2.json",
        "ncphi_bertrand.json",
    ] {
        bertrand.push((name.to_string(), fixture(name)));
    }
    for f in fixtures() {
        for variant in [Variant::Canonical, Variant::NonCanonical] {
            bertrand.push((
                format!("{} {variant}", f.name),
                build_bertrand(&f.base, variant).unwrap().system,
            ));
        }
    }
    bertrand.push(("U(i)=i+1".into(), NumSys::recurrence_i64(&[1, 2], &[2, -1], 0).unwrap()));
    for (name, s) in &bertrand {
        let a = match classify_bertrand(s, 12).map_err(|e| e.to_string())? {
            Verdict::Case1 { .. } => ep("10(0)"),
            Verdict::Case2 { a, .. } | Verdict::Case3 { a, .. } => a,
            v => return Err(format!("{name}: {v}")),
        };
        ensure(lex_max_prefix_failure(s, &a, 30).is_none(), || {
            format!("{name}: lex-max words leave {a}")
        })?;
    }
    for name in ["not_prolongable.json", "not_prefix_closed.json"] {
        let s = fixture(name);
        let broken = (0..30).any(|i| !s.lex_max(i).is_prefix_of(&s.lex_max(i + 1)));
        ensure(broken, || format!("{name}: lex-max words form a prefix chain"))?;
    }
    Ok(())
}

fn criterion_8() -> Check {
    let phi = RealBase::algebraic(&[1, -1, -1], (1, 1), (2, 1)).unwrap();
    let d = build_shift_dfa(&phi, Variant::NonCanonical).unwrap().dfa;
    for k in 0..=10 {
        let mut digits = vec![1, 1];
        digits.extend(std::iter::repeat_n(0, k));
        digits.push(1);
        let x = DigitWord::new(digits);
        ensure(!d.accepts(&x), || format!("{x} accepted"))?;
        let mut prefix = x.digits().to_vec();
        prefix.pop();
        ensure(d.accepts(&DigitWord::new(prefix)), || format!("prefix of {x} rejected"))?;
    }
    Ok(())
}

type Criterion = (&'static str, fn() -> Check, Option<Duration>);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("worked examples", criterion_1, Some(Duration::from_secs(1))),
        (
            "round trip through classification",
            criterion_2,
            Some(Duration::from_secs(5)),
        ),
        ("reference automata", criterion_3, None),
        ("recurrence extraction", criterion_4, None),
        ("counting identity", criterion_5, None),
        ("asymptotics", criterion_6, Some(Duration::from_secs(10))),
        ("lex-max convergence", criterion_7, None),
        ("forbidden factors 110^k1", criterion_8, None),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if let (Ok(()), Some(limit)) = (&outcome, limit) {
            if elapsed > *limit {
                outcome = Err(format!("took {elapsed:?}, limit {limit:?}"));
            }
        }
        match outcome {
            Ok(()) => println!("PASS {}. {name} ({elapsed:.2?})", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {}. {name} ({elapsed:.2?}): {e}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
