use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use biliaison::poly::{MonomialOrder, PolyRing, DEFAULT_PRIME};

mod commands;
mod modspec;

#[derive(Parser, Debug)]
#[command(name = "biliaison", version, about = "Exact graded-module and liaison computations over F_p[X,Y,Z,T]")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Characteristic of the coefficient field.
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME)]
    pub p: u32,
    /// Monomial order: grevlex or deglex.
    #[arg(long, global = true, default_value = "grevlex")]
    pub order: String,
    /// Degree window lo..hi (default: derived from the regularity).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub window: Option<String>,
    /// Seed for randomized steps; echoed in every report header.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Emit JSON instead of tables.
    #[arg(long, global = true)]
    pub json: bool,
    /// Read the primary input from a file.
    #[arg(long, global = true)]
    pub file: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Reduced Gröbner basis of an ideal or of the relations of a module.
    Groebner {
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long)]
        module: Option<String>,
        /// Polynomials (or vectors, for modules) to reduce.
        #[arg(long)]
        reduce: Option<String>,
    },
    /// Minimal graded free resolution and Betti table.
    Resolve {
        #[arg(long)]
        module: Option<String>,
    },
    /// Hilbert series, polynomial and function table.
    Hilbert {
        #[arg(long)]
        module: Option<String>,
    },
    /// Sheaf cohomology table of the sheafified module.
    Cohomology {
        #[arg(long)]
        module: Option<String>,
    },
    /// Rao module of a curve.
    Rao {
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Link a curve by a complete intersection of two forms in its ideal.
    Link {
        #[arg(long)]
        ideal: Option<String>,
        /// The two linking forms, comma separated.
        #[arg(long)]
        forms: String,
    },
    /// Liaison addition P2·I1 + P1·I2.
    LiaisonAdd {
        #[arg(long)]
        c1: Option<String>,
        #[arg(long)]
        c2: String,
        #[arg(long)]
        p1: String,
        #[arg(long)]
        p2: String,
    },
    /// Second syzygy bundle of a finite-length module.
    Syzygy2 {
        #[arg(long)]
        module: Option<String>,
    },
    /// Horrocks extension killing H^2_* of a sheaf of projective dimension ≤ 1.
    Horrocks {
        #[arg(long)]
        module: Option<String>,
    },
    /// Pseudo-isomorphism test for a map of presented modules.
    PsiCheck {
        #[arg(long)]
        source: Option<String>,
        #[arg(long)]
        target: String,
        /// Map matrix as JSON rows, e.g. [["X","Y"]].
        #[arg(long)]
        matrix: String,
        /// Also build the cone 0 -> L' -> F ⊕ L -> F' -> 0.
        #[arg(long)]
        cone: bool,
    },
    /// Stable equivalence of two bundles with H^2_* = 0.
    StableEq {
        #[arg(long)]
        first: Option<String>,
        #[arg(long)]
        second: String,
    },
    /// Biliaison equivalence of two curves.
    BiliaisonEq {
        #[arg(long)]
        c1: Option<String>,
        #[arg(long)]
        c2: String,
    },
    /// Primitive f♯ of a finitely supported function.
    Sharp {
        #[arg(long)]
        f: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        eval: Vec<i32>,
        /// Compare against another function: f♯ ≤ q♯ and pointwise f ≤ q.
        #[arg(long)]
        against: Option<String>,
    },
    /// Rank and Chern classes from a minimal free resolution.
    Chern {
        #[arg(long)]
        module: Option<String>,
        /// q' for the bound c1 + Σ n·q'(n).
        #[arg(long)]
        q_prime: Option<String>,
    },
    /// Run a worked scenario end to end.
    Scenario {
        /// Scenario name; only ex39 is available.
        name: String,
        #[arg(long, default_value_t = 1)]
        n1: i32,
        #[arg(long, default_value_t = 2)]
        n3: i32,
    },
}

impl Verb {
    fn name(&self) -> &'static str {
        match self {
            Verb::Groebner { .. } => "groebner",
            Verb::Resolve { .. } => "resolve",
            Verb::Hilbert { .. } => "hilbert",
            Verb::Cohomology { .. } => "cohomology",
            Verb::Rao { .. } => "rao",
            Verb::Link { .. } => "link",
            Verb::LiaisonAdd { .. } => "liaison-add",
            Verb::Syzygy2 { .. } => "syzygy2",
            Verb::Horrocks { .. } => "horrocks",
            Verb::PsiCheck { .. } => "psi-check",
            Verb::StableEq { .. } => "stable-eq",
            Verb::BiliaisonEq { .. } => "biliaison-eq",
            Verb::Sharp { .. } => "sharp",
            Verb::Chern { .. } => "chern",
            Verb::Scenario { .. } => "scenario",
        }
    }
}

pub enum CliError {
    Usage(String),
    Domain(biliaison::Error),
}

impl From<biliaison::Error> for CliError {
    fn from(e: biliaison::Error) -> Self {
        match e {
            // malformed input text is a usage problem, not a mathematical one
            biliaison::Error::Parse { .. } => CliError::Usage(e.to_string()),
            other => CliError::Domain(other),
        }
    }
}

/// Result of one verb: a human table, its JSON form, and whether every
/// labelled check passed.
pub struct Report {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

pub struct Context {
    pub ring: PolyRing,
    pub window: Option<(i32, i32)>,
    pub seed: Option<u64>,
    pub file: Option<String>,
}

fn parse_window(s: &str) -> Result<(i32, i32), CliError> {
    let bad = || CliError::Usage(format!("window must look like lo..hi, got {s:?}"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let lo: i32 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i32 = hi.trim().parse().map_err(|_| bad())?;
    if hi < lo {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn build_context(g: &Global) -> Result<Context, CliError> {
    let order = MonomialOrder::parse(&g.order)
        .ok_or_else(|| CliError::Usage(format!("unknown monomial order {:?}", g.order)))?;
    let ring = PolyRing::new(g.p, order).map_err(|e| CliError::Usage(e.to_string()))?;
    let window = g.window.as_deref().map(parse_window).transpose()?;
    let file = match &g.file {
        Some(path) => Some(
            std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?,
        ),
        None => None,
    };
    Ok(Context {
        ring,
        window,
        seed: g.seed,
        file,
    })
}

fn header(verb: &str, g: &Global) -> Value {
    json!({
        "verb": verb,
        "p": g.p,
        "order": g.order,
        "seed": g.seed,
        "window": g.window,
    })
}

fn header_line(verb: &str, g: &Global) -> String {
    let seed = g.seed.map_or("none".to_string(), |s| s.to_string());
    let mut line = format!("# biliaison {verb} | p = {} | order = {} | seed = {seed}", g.p, g.order);
    if let Some(w) = &g.window {
        line.push_str(&format!(" | window = {w}"));
    }
    line
}

/// Writes to stdout, tolerating a closed pipe (e.g. `| head`).
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn fail(code: u8, kind: &str, message: &str, verb: Option<&str>, g: Option<&Global>, json_mode: bool) -> ExitCode {
    if json_mode {
        let mut body = json!({ "error": { "kind": kind, "message": message } });
        if let (Some(v), Some(g)) = (verb, g) {
            body["header"] = header(v, g);
        }
        emit(&serde_json::to_string_pretty(&body).unwrap());
    } else {
        eprintln!("error ({kind}): {message}");
    }
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let json_mode = std::env::args().any(|a| a == "--json");
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            if json_mode {
                return fail(2, "usage", e.to_string().trim(), None, None, true);
            }
            let _ = e.print();
            return ExitCode::from(2);
        }
    };
    let verb = cli.verb.name();
    let g = &cli.global;
    let outcome = build_context(g).and_then(|ctx| commands::run(&ctx, &cli.verb));
    match outcome {
        Ok(report) => {
            if g.json {
                let body = json!({ "header": header(verb, g), "result": report.json, "ok": report.ok });
                emit(&serde_json::to_string_pretty(&body).unwrap());
            } else {
                emit(&format!("{}\n{}", header_line(verb, g), report.text.trim_end()));
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Usage(m)) => fail(2, "usage", &m, Some(verb), Some(g), g.json),
        Err(CliError::Domain(e)) => fail(1, "domain", &e.to_string(), Some(verb), Some(g), g.json),
    }
}
