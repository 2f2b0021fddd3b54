//! Command-line driver. [`run`] is the whole program; `main` only forwards
//! the exit code.
//!
//! Exit codes: 0 success, 1 bad input or usage, 2 the computation produced
//! an internal inconsistency (routes disagree, or a check that should hold
//! did not).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use neron_trace::campaign::{run_campaign, FiberCheck};
use neron_trace::corpus::{self, coprime_characteristic, verify_entry};
use neron_trace::{
    check_q_part_identity, parse_fiber, verify_trace, zeta_tame, Error, FiberDocument, JsonReport,
    Profile, QPartReport, SpecialFiber, TraceReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INCONSISTENT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "neron-trace",
    version,
    about = "Monodromy and component groups from sncd dual graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute zeta function, P_phi, component groups and the trace check for one fiber.
    Compute {
        #[command(flatten)]
        input: Input,
        /// Also compute the tame zeta function (full multiplicities). The
        /// caller vouches that the curve is cohomologically tame.
        #[arg(long)]
        assert_tame: bool,
        /// Also run the companion-matrix cokernel check.
        #[arg(long)]
        qcheck: bool,
        #[arg(long)]
        json: bool,
    },
    /// Replay the built-in Kodaira corpus.
    Corpus {
        /// List entry names.
        #[arg(long, conflicts_with_all = ["show", "verify"])]
        list: bool,
        /// Print the full report for one entry.
        #[arg(long, value_name = "NAME", conflicts_with = "verify")]
        show: Option<String>,
        /// Check every entry against its frozen values.
        #[arg(long)]
        verify: bool,
        /// Residue characteristic exponent (default: smallest coprime prime).
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Generate random fibers, optionally checking every identity on each.
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "purely-additive-tree")]
        profile: Profile,
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long)]
        check: bool,
        #[arg(long)]
        json: bool,
    },
    /// Cokernel of Id - C(P_phi) against phi'_A for a purely additive fiber.
    Qcheck {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
struct Input {
    /// Fiber document (JSON), or `-` for stdin.
    #[arg(long, short)]
    input: PathBuf,
    /// Override the residue characteristic exponent in the document.
    #[arg(long)]
    p: Option<u64>,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Inconsistent(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_inconsistency() {
            Failure::Inconsistent(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type Outcome = Result<Output, Failure>;

/// Text for stdout, plus whether a check in it failed.
struct Output {
    text: String,
    inconsistent: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            inconsistent: false,
        }
    }
}

/// Runs the program on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_INPUT
                }
            };
        }
    };
    let outcome = match cli.command {
        Command::Compute {
            input,
            assert_tame,
            qcheck,
            json,
        } => compute(&input, assert_tame, qcheck, json),
        Command::Corpus {
            list,
            show,
            verify,
            p,
            json,
        } => corpus_cmd(list, show, verify, p, json),
        Command::Random {
            seed,
            profile,
            count,
            check,
            json,
        } => random(seed, profile, count, check, json),
        Command::Qcheck { input, json } => qcheck(&input, json),
    };
    match outcome {
        Ok(o) => {
            let _ = out.write_all(o.text.as_bytes());
            if o.inconsistent {
                EXIT_INCONSISTENT
            } else {
                EXIT_OK
            }
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Inconsistent(msg)) => {
            let _ = writeln!(err, "inconsistency: {msg}");
            EXIT_INCONSISTENT
        }
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut s = String::new();
    let res = if path == Path::new("-") {
        io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| s = t)
    };
    res.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(s)
}

fn load(input: &Input) -> Result<SpecialFiber, Failure> {
    let f = parse_fiber(&read_input(&input.input)?)?;
    Ok(match input.p {
        Some(p) => f.with_p(p)?,
        None => f,
    })
}

fn json_line<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn full_report(
    f: &SpecialFiber,
    assert_tame: bool,
    qcheck: bool,
) -> Result<(TraceReport, JsonReport), Failure> {
    let r = verify_trace(f)?;
    let mut j = JsonReport::new(f.to_document(), &r);
    if assert_tame {
        j.zeta_tame = Some((&zeta_tame(f, true)?).into());
    }
    if qcheck {
        j.qcheck = Some(check_q_part_identity(f)?);
    }
    Ok((r, j))
}

fn report_is_inconsistent(j: &JsonReport) -> bool {
    j.inconsistency.is_some() || j.qcheck.as_ref().is_some_and(|q| !q.holds)
}

fn compute(input: &Input, assert_tame: bool, qcheck: bool, json: bool) -> Outcome {
    let f = load(input)?;
    let (r, j) = full_report(&f, assert_tame, qcheck)?;
    let text = if json {
        json_line(&j)
    } else {
        human_report(&f, &r, &j)
    };
    Ok(Output {
        text,
        inconsistent: report_is_inconsistent(&j),
    })
}

fn opt(v: &Option<impl ToString>) -> String {
    v.as_ref().map_or_else(|| "n/a".into(), ToString::to_string)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn human_report(f: &SpecialFiber, r: &TraceReport, j: &JsonReport) -> String {
    let s = &r.stats;
    let mut o = String::new();
    let _ = writeln!(
        o,
        "components      {} ({} edges), p = {}",
        f.components().len(),
        f.edges().len(),
        f.p()
    );
    let _ = writeln!(o, "a, t            {}, {}", s.a, s.t);
    let _ = writeln!(o, "delta, delta'   {}, {}", s.delta, s.delta_prime);
    let _ = writeln!(o, "zeta_C          {}", r.zeta);
    if let Some(z) = &j.zeta_tame {
        let _ = writeln!(o, "zeta_C (tame)   {}", z.text);
    }
    let _ = writeln!(o, "P_phi           {}", r.p_phi);
    let _ = writeln!(o, "P_phi(T)        {}", opt(&r.p_phi_poly));
    let _ = writeln!(o, "P_phi(1)        {}", r.trace_value);
    let _ = writeln!(o, "phi_A           {}", opt(&r.phi_a));
    let _ = writeln!(o, "phi'_A          {}", opt(&r.phi_a_prime));
    let _ = writeln!(o, "chi(A_s)        {}", r.euler_char_neron);
    let _ = writeln!(o, "purely additive {}", yes_no(r.purely_additive));
    let _ = writeln!(o, "tame-compatible {}", yes_no(r.tame_compatible));
    let _ = writeln!(
        o,
        "trace formula   {}",
        if r.trace_formula_holds {
            "holds"
        } else {
            "fails"
        }
    );
    if let Some(h) = r.prime_to_p_identity_holds {
        let _ = writeln!(o, "P_phi(1)=phi'_A {}", yes_no(h));
    }
    for v in &r.tame_violations {
        let _ = writeln!(o, "tame violation  {v}");
    }
    for v in &r.realizability_violations {
        let _ = writeln!(o, "not realizable  {v}");
    }
    if let Some(q) = &j.qcheck {
        o.push_str(&human_qcheck(q));
    }
    if let Some(msg) = &r.inconsistency {
        let _ = writeln!(o, "INCONSISTENCY   {msg}");
    }
    o
}

fn human_qcheck(q: &QPartReport) -> String {
    let mut o = String::new();
    let factors: Vec<String> = q
        .invariant_factors
        .iter()
        .map(ToString::to_string)
        .collect();
    let _ = writeln!(o, "invariants      [{}]", factors.join(", "));
    let _ = writeln!(o, "coker order     {:?}", q.coker_order);
    for c in &q.per_prime {
        let _ = writeln!(
            o,
            "  q = {:<4} v(coker) = {}, v(phi'_A) = {}{}",
            c.q,
            c.coker_valuation,
            c.phi_valuation,
            if c.agrees { "" } else { "  MISMATCH" }
        );
    }
    let _ = writeln!(
        o,
        "q-part identity {}",
        if q.holds { "holds" } else { "fails" }
    );
    o
}

fn qcheck(input: &Input, json: bool) -> Outcome {
    let f = load(input)?;
    let q = check_q_part_identity(&f)?;
    let text = if json {
        json_line(&q)
    } else {
        human_qcheck(&q)
    };
    Ok(Output {
        text,
        inconsistent: !q.holds,
    })
}

#[derive(Serialize)]
struct EntryLine {
    name: String,
    p: u64,
    passed: bool,
    mismatches: Vec<String>,
}

fn corpus_cmd(
    list: bool,
    show: Option<String>,
    verify: bool,
    p: Option<u64>,
    json: bool,
) -> Outcome {
    if let Some(name) = show {
        let e = corpus::entry(&name)?;
        let f = e
            .fiber
            .with_p(p.unwrap_or_else(|| coprime_characteristic(&e.fiber)))?;
        let (r, j) = full_report(&f, false, e.expected.phi.is_some())?;
        let text = if json {
            json_line(&j)
        } else {
            human_report(&f, &r, &j)
        };
        return Ok(Output {
            text,
            inconsistent: report_is_inconsistent(&j),
        });
    }
    let entries = corpus::corpus();
    if list || !verify {
        let names: Vec<&str> = entries.iter().map(|e| e.name.as_str()).collect();
        let text = if json {
            json_line(&names)
        } else {
            names.join("\n") + "\n"
        };
        return Ok(Output::ok(text));
    }
    let mut lines = Vec::new();
    for e in &entries {
        let c = verify_entry(e, p.unwrap_or_else(|| coprime_characteristic(&e.fiber)))?;
        lines.push(EntryLine {
            passed: c.passed(),
            name: c.name,
            p: c.p,
            mismatches: c.mismatches,
        });
    }
    let failed = lines.iter().filter(|l| !l.passed).count();
    let text = if json {
        json_line(&lines)
    } else {
        let mut o = String::new();
        for l in &lines {
            let _ = writeln!(
                o,
                "{} {:<6} p = {}",
                if l.passed { "ok  " } else { "FAIL" },
                l.name,
                l.p
            );
            for m in &l.mismatches {
                let _ = writeln!(o, "       {m}");
            }
        }
        let _ = writeln!(o, "{} entries, {failed} failed", lines.len());
        o
    };
    Ok(Output {
        text,
        inconsistent: failed > 0,
    })
}

#[derive(Serialize)]
struct CheckLine {
    seed: u64,
    profile: String,
    passed: bool,
    problems: Vec<String>,
    fiber: FiberDocument,
}

fn random(seed: u64, profile: Profile, count: u64, check: bool, json: bool) -> Outcome {
    let seed_end = seed
        .checked_add(count)
        .ok_or_else(|| Failure::Input("seed + count overflows".into()))?;
    if !check {
        let docs: Vec<FiberDocument> = (seed..seed_end)
            .map(|s| neron_trace::random_fiber(s, profile).to_document())
            .collect();
        let text = if json || count != 1 {
            json_line(&docs)
        } else {
            json_line(&docs[0])
        };
        return Ok(Output::ok(text));
    }
    let checks: Vec<FiberCheck> = run_campaign(seed, profile, count);
    let failed = checks.iter().filter(|c| !c.passed()).count();
    let text = if json {
        let lines: Vec<CheckLine> = checks
            .into_iter()
            .map(|c| CheckLine {
                seed: c.seed.unwrap_or_default(),
                profile: profile.to_string(),
                passed: c.problems.is_empty(),
                problems: c.problems,
                fiber: c.fiber.to_document(),
            })
            .collect();
        json_line(&lines)
    } else {
        let mut o = String::new();
        for c in checks.iter().filter(|c| !c.passed()) {
            let _ = writeln!(
                o,
                "FAIL seed {}: {}",
                c.seed.unwrap_or_default(),
                c.problems.join("; ")
            );
        }
        let _ = writeln!(o, "{profile}: {count} fibers, {failed} failed");
        o
    };
    Ok(Output {
        text,
        inconsistent: failed > 0,
    })
}
