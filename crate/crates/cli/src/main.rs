use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bertrand_core::analysis::{self, HollanderReport};
use bertrand_core::automata::{build_shift_dfa, dfa_equiv_language};
use bertrand_core::bertrand::{build_bertrand, char_poly, classify_bertrand, counting_identity_check, Verdict};
use bertrand_core::realbase::{beta_from_expansion, BetaExpansion, DEFAULT_DEPTH};
use bertrand_core::{BaseSpec, DigitWord, EPWord, Error, NumSys, RealBase, Variant};
use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "bertrand",
    version,
    about = "Real-base expansions and Bertrand numeration systems"
)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct BaseArg {
    /// Base: int:3, rat:5/2, poly:1,-1,-1@(1,2) or parry:110(0).
    #[arg(long, alias = "beta")]
    base: BaseSpec,
    /// Bisection budget for sign and floor decisions.
    #[arg(long)]
    budget: Option<usize>,
}

impl BaseArg {
    fn load(&self) -> Result<RealBase, Error> {
        let b = RealBase::from_spec(self.base.clone())?;
        Ok(match self.budget {
            Some(n) => b.with_budget(n),
            None => b,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Greedy expansion d_β(1).
    Dbeta {
        #[command(flatten)]
        base: BaseArg,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
    },
    /// Quasi-greedy expansion d*_β(1).
    Dstar {
        #[command(flatten)]
        base: BaseArg,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
    },
    /// The base whose greedy expansion of 1 is the given word.
    BetaOf {
        #[arg(long)]
        word: EPWord,
    },
    /// First terms of the canonical or non-canonical Bertrand system.
    Build {
        #[command(flatten)]
        base: BaseArg,
        #[arg(long)]
        variant: Variant,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Also write the system as JSON to this file.
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Greedy representation of an integer.
    Rep {
        #[arg(long)]
        system: String,
        #[arg(long)]
        n: BigUint,
    },
    /// Value of a digit word.
    Val {
        #[arg(long)]
        system: String,
        #[arg(long)]
        word: DigitWord,
    },
    /// Membership in the numeration language.
    Member {
        #[arg(long)]
        system: String,
        #[arg(long)]
        word: DigitWord,
    },
    /// Tests w ∈ N_U ⟺ w0 ∈ N_U on all words up to a length.
    CheckBertrand {
        #[arg(long)]
        system: String,
        #[arg(long, default_value_t = 10)]
        max_len: usize,
    },
    /// Which base and variant a Bertrand system comes from.
    Classify {
        #[arg(long)]
        system: String,
        #[arg(long, default_value_t = 12)]
        probe: usize,
    },
    /// Characteristic polynomial of the recurrence of a Bertrand system.
    Charpoly {
        #[arg(long)]
        word: EPWord,
        #[arg(long)]
        variant: Variant,
    },
    /// Automaton for the factors of S_β or S'_β.
    Automaton {
        #[command(flatten)]
        base: BaseArg,
        #[arg(long)]
        variant: Variant,
        #[arg(long)]
        minimize: bool,
        /// Write Graphviz output to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Compare with membership in this system on all words up to --max-len.
        #[arg(long)]
        verify: Option<String>,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        /// Print accepted-word counts for lengths 0..=N.
        #[arg(long)]
        counts: Option<usize>,
    },
    /// Dominant root, renewal limit, entropy and lex-max prefixes.
    Analyze {
        #[arg(long)]
        system: String,
        #[command(flatten)]
        base: BaseArg,
        /// Include the renewal target of this variant.
        #[arg(long)]
        variant: Option<Variant>,
        #[arg(long, default_value_t = 60)]
        i_max: usize,
        /// Prefix length for the lex-max probe.
        #[arg(long)]
        ell: Option<usize>,
        /// Write per-index data as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Checks U'(i+n) = U(i+n) + U'(i) for a simple Parry base.
    CountingIdentity {
        #[command(flatten)]
        base: BaseArg,
        #[arg(long, default_value_t = 20)]
        range: usize,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

/// A system given as a JSON file, or inline as `bertrand:W`,
/// `bertrand:parry:W`, `canonical:<base>` or `noncanonical:<base>`.
fn load_system(arg: &str) -> Result<NumSys, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
        return NumSys::from_json(&text).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())));
    }
    if let Some(w) = arg.strip_prefix("bertrand:") {
        let w = w.strip_prefix("parry:").unwrap_or(w);
        return Ok(NumSys::bertrand(w.parse()?)?);
    }
    for (prefix, variant) in [
        ("canonical:", Variant::Canonical),
        ("noncanonical:", Variant::NonCanonical),
    ] {
        if let Some(b) = arg.strip_prefix(prefix) {
            let base = RealBase::from_spec(b.parse()?)?;
            return Ok(build_bertrand(&base, variant)?.system);
        }
    }
    Err(Failure::Usage(format!(
        "{arg:?} is neither a file nor bertrand:W, canonical:<base>, noncanonical:<base>"
    )))
}

fn expansion_json(e: &BetaExpansion) -> Value {
    json!({
        "word": e.word().map(|w| w.to_string()),
        "prefix": e.prefix(e.word().map_or(0, |w| w.preperiod().len() + w.period().len())).map(|p| p.to_string()),
        "class": e.class.to_string(),
        "resolved": e.class.is_resolved(),
    })
}

fn verdict_json(v: &Verdict) -> Value {
    let mut out = json!({ "verdict": v.name(), "text": v.to_string() });
    if let Some(b) = v.base() {
        out["base"] = json!(b.to_string());
        out["approx"] = json!(b.value().approx());
    }
    if let Some(e) = v.evidence() {
        out["certified"] = json!(e.is_certified());
        out["evidence"] = json!(e.to_string());
    }
    match v {
        Verdict::Case2 { a, .. } | Verdict::Case3 { a, .. } => out["a"] = json!(a.to_string()),
        Verdict::Case1 { .. } => out["a"] = json!("10(0)"),
        Verdict::NotBertrand { witness } => out["witness"] = json!(witness),
        Verdict::Undetermined { lex_max } => out["lex_max"] = json!(lex_max.to_string()),
    }
    out
}

fn write_csv(path: &Path, s: &NumSys, report: &analysis::AnalysisReport) -> std::io::Result<()> {
    // ratio is U(i)/U(i-1)
    let mut out = String::from("i,U,ratio,k,prefix\n");
    let rows = report.hollander.as_ref().map(|h: &HollanderReport| &h.rows);
    for i in 0..=report.i_max {
        let ratio = i
            .checked_sub(1)
            .and_then(|j| report.ratios.get(j))
            .map(|r| r.to_string())
            .unwrap_or_default();
        let row = rows.and_then(|r| r.iter().find(|x| x.i == i));
        let k = row.and_then(|x| x.k).map(|k| k.to_string()).unwrap_or_default();
        let prefix = row.map(|x| x.prefix.to_string()).unwrap_or_default();
        out.push_str(&format!("{i},{},{ratio},{k},{prefix}\n", s.u(i)));
    }
    std::fs::write(path, out)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let json_out = cli.json;
    let emit = |text: String, value: Value| {
        if json_out {
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        } else {
            println!("{text}");
        }
    };
    match cli.command {
        Command::Dbeta { base, depth } => {
            let e = base.load()?.d_beta_one(depth)?;
            emit(e.to_string(), expansion_json(&e));
        }
        Command::Dstar { base, depth } => {
            let e = base.load()?.d_beta_star(depth)?;
            emit(e.to_string(), expansion_json(&e));
        }
        Command::BetaOf { word } => {
            let b = beta_from_expansion(&word)?;
            emit(
                format!("{b} ≈ {:.12}", b.value().approx()),
                json!({ "base": b.to_string(), "approx": b.value().approx() }),
            );
        }
        Command::Build {
            base,
            variant,
            count,
            save,
        } => {
            let built = build_bertrand(&base.load()?, variant)?;
            let vals: Vec<String> = built.system.values(count).iter().map(|v| v.to_string()).collect();
            if let Some(path) = save {
                std::fs::write(&path, built.system.to_json())
                    .map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
            }
            let mut text = vals.join(" ");
            if built.coincides_with_canonical {
                text.push_str("\n(same as the canonical system: the base is not simple Parry)");
            }
            emit(
                text,
                json!({
                    "variant": variant,
                    "word": built.word.to_string(),
                    "alphabet_max": built.system.alphabet_max(),
                    "values": vals,
                    "coincides_with_canonical": built.coincides_with_canonical,
                }),
            );
        }
        Command::Rep { system, n } => {
            let r = load_system(&system)?.rep(&n);
            emit(r.to_string(), json!({ "n": n.to_string(), "rep": r.to_string() }));
        }
        Command::Val { system, word } => {
            let v = load_system(&system)?.val(&word);
            emit(
                v.to_string(),
                json!({ "word": word.to_string(), "value": v.to_string() }),
            );
        }
        Command::Member { system, word } => {
            let m = load_system(&system)?.member(&word);
            emit(m.to_string(), json!({ "word": word.to_string(), "member": m }));
        }
        Command::CheckBertrand { system, max_len } => {
            let r = load_system(&system)?.check_bertrand(max_len)?;
            let text = match &r.first_violation {
                None => format!("holds for all words up to length {max_len}"),
                Some(v) => format!(
                    "violation: {} ({}); holds up to length {}; {} violations found",
                    v.word, v.direction, r.holds_up_to, r.violation_count
                ),
            };
            emit(text, serde_json::to_value(&r).unwrap());
        }
        Command::Classify { system, probe } => {
            let v = classify_bertrand(&load_system(&system)?, probe)?;
            emit(v.to_string(), verdict_json(&v));
        }
        Command::Charpoly { word, variant } => {
            let p = char_poly(&word, variant)?;
            let coeffs: Vec<String> = p.coeffs_high_first().iter().map(|c| c.to_string()).collect();
            emit(
                p.to_string(),
                json!({ "poly": p.to_string(), "coeffs_high_first": coeffs }),
            );
        }
        Command::Automaton {
            base,
            variant,
            minimize,
            dot,
            verify,
            max_len,
            counts,
        } => {
            let built = build_shift_dfa(&base.load()?, variant)?;
            let dfa = if minimize {
                built.dfa.minimize()
            } else {
                built.dfa.bfs_normalized()
            };
            if let Some(path) = &dot {
                std::fs::write(path, dfa.to_dot()).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
            }
            let mut text = format!("states: {}\n", dfa.num_states());
            for (a, d, b) in dfa.edges() {
                text.push_str(&format!("q{a} -{d}-> q{b}\n"));
            }
            let mut value = serde_json::to_value(dfa.to_file()).unwrap();
            value["coincides_with_canonical"] = json!(built.coincides_with_canonical);
            if let Some(n) = counts {
                let c: Vec<String> = (0..=n).map(|i| dfa.count_accepted(i).to_string()).collect();
                text.push_str(&format!("counts: {}\n", c.join(" ")));
                value["counts"] = json!(c);
            }
            if let Some(sys) = verify {
                let r = dfa_equiv_language(&dfa, &load_system(&sys)?, max_len);
                match &r.first_disagreement {
                    None => text.push_str(&format!("agrees with the system on all words up to length {max_len}\n")),
                    Some(d) => text.push_str(&format!(
                        "disagrees on {}: automaton {}, system {}\n",
                        d.word,
                        if d.accepted { "accepts" } else { "rejects" },
                        if d.member { "contains it" } else { "does not" }
                    )),
                }
                value["verify"] = serde_json::to_value(&r).unwrap();
            }
            emit(text.trim_end().to_string(), value);
        }
        Command::Analyze {
            system,
            base,
            variant,
            i_max,
            ell,
            csv,
        } => {
            let s = load_system(&system)?;
            let b = base.load()?;
            let report = analysis::analyze(&s, &b, variant, i_max, ell)?;
            if let Some(path) = csv {
                write_csv(&path, &s, &report).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
            }
            let mut text = format!(
                "U({i_max})/U({}) = {:.12} (within 1e-8 of β: {})\n",
                i_max - 1,
                report.ratios.last().unwrap(),
                report.ratio_within_1e_8
            );
            text.push_str(&format!(
                "U({i_max})/β^{i_max} ∈ [{:.10}, {:.10}]\n",
                report.empirical_interval[0], report.empirical_interval[1]
            ));
            if let Some(t) = report.target_interval {
                text.push_str(&format!("renewal target ∈ [{:.10}, {:.10}]\n", t[0], t[1]));
            }
            text.push_str(&format!(
                "entropy: ratio {:.10}, per-length {:.10} (ratio error ≤ {:.3e})\n",
                report.entropy.ratio, report.entropy.per_length, report.entropy_error_bound
            ));
            if let Some(h) = &report.hollander {
                let ks: Vec<String> = h
                    .rows
                    .iter()
                    .map(|r| r.k.map_or("-".to_string(), |k| k.to_string()))
                    .collect();
                let prefixes: Vec<String> = h.rows.iter().map(|r| r.prefix.to_string()).collect();
                text.push_str(&format!(
                    "prefixes for i = {}..={}: {}\n",
                    h.i_min,
                    h.i_max,
                    prefixes.join(" ")
                ));
                text.push_str(&format!("k for i = {}..={}: {}\n", h.i_min, h.i_max, ks.join(" ")));
                match &h.stabilization {
                    Some(st) => text.push_str(&format!(
                        "stable from i = {}: {} ({:?})\n",
                        st.from_i, st.prefix, st.matches
                    )),
                    None => text.push_str("no stabilization on the probed range\n"),
                }
            }
            emit(text.trim_end().to_string(), serde_json::to_value(&report).unwrap());
        }
        Command::CountingIdentity { base, range } => {
            let r = counting_identity_check(&base.load()?, range)?;
            let mut text = String::new();
            for (i, lhs, u, r2) in &r.rows {
                let mark = if lhs == &(u + r2) { "ok" } else { "FAIL" };
                text.push_str(&format!("i={i}: U'({}) = {lhs} = {u} + {r2} {mark}\n", i + r.n));
            }
            text.push_str(if r.holds() { "identity holds" } else { "identity fails" });
            let rows: Vec<Value> = r
                .rows
                .iter()
                .map(|(i, a, b, c)| json!([i, a.to_string(), b.to_string(), c.to_string()]))
                .collect();
            emit(
                text,
                json!({ "n": r.n, "range_max": r.range_max, "holds": r.holds(), "first_failure": r.first_failure, "rows": rows }),
            );
            if !r.holds() {
                return Err(Failure::Domain("counting identity fails".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
