//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on a domain error, 2 on a usage error
//! (bad flags or an expression that does not parse).

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::algebra::{self, parse_expr, parse_rational, BosonPolynomial, Rational};
use crate::coherent::{self, ComplexAmplitude};
use crate::combinatorics::{self, StirlingTable};
use crate::phasespace::{self, PhaseGrid, ThermalParams};
use crate::wick;
use crate::Error;

pub const GRAMMAR_HELP: &str = "\
Expression grammar:
  expr   := ('+'|'-')? term (('+'|'-') term)*
  term   := coeff? factor+        (juxtaposition or '*' multiplies)
  factor := base ('^' uint)? | '(' expr ')' ('^' uint)?
  base   := 'a' | 'ad'            ('a†' and 'a^+' also mean a†)
  coeff  := int | int '/' uint
Example: normord normal-order \"a ad a a ad a\"";

#[derive(Debug, Parser)]
#[command(name = "normord", version, about = "Normal ordering of boson operators")]
pub struct Cli {
    /// Write the primary output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    /// Emit JSON where the command supports it.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal-order an expression using [a, a†] = 1.
    NormalOrder { expr: String },
    /// Move a† left of a ignoring the commutator.
    DoubleDot { expr: String },
    /// List Wick contractions of each word and the resulting normal form.
    Wick { expr: String },
    /// Enumerate set partitions of {1..n}.
    Partitions {
        n: usize,
        /// Keep only partitions with exactly K blocks.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Stirling numbers of the second kind.
    Stirling {
        n: Option<usize>,
        k: Option<usize>,
        /// Print the triangle for rows 1..=N as TSV.
        #[arg(long, value_name = "N")]
        table: Option<usize>,
    },
    /// Bell number B(n).
    Bell { n: usize },
    /// Bell polynomial B(n, x).
    BellPoly { n: usize },
    /// B(n, x) through the Dobinski series.
    Dobinski {
        n: u32,
        /// Nonnegative rational ("3/2") or decimal ("1.5").
        x: String,
        #[arg(long, default_value_t = 1e-10)]
        eps: f64,
    },
    /// Check a normal-ordering identity as a λ-series.
    Verify {
        /// number-exp, bch-linear, excited-21 or kerr
        name: String,
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// Coherent-state expectation value <z|F|z>.
    Expect {
        expr: String,
        #[arg(long, value_name = "RE,IM")]
        z: ComplexAmplitude,
    },
    /// Husimi and classical thermal distributions.
    Husimi {
        #[arg(long)]
        beta: f64,
        /// Grid "qmin:qmax:nq,pmin:pmax:np" (CSV output).
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "p")]
        q: Option<f64>,
        #[arg(long, allow_hyphen_values = true, requires = "q")]
        p: Option<f64>,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(p) => Failure::Usage(p.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

fn parse(text: &str) -> Result<BosonPolynomial, Failure> {
    parse_expr(text).map_err(|e| Failure::Usage(e.to_string()))
}

fn parse_nonneg(text: &str) -> Result<Rational, Failure> {
    let value = if text.contains(['.', 'e', 'E']) {
        let f: f64 = text
            .parse()
            .map_err(|_| Failure::Usage(format!("bad number '{text}'")))?;
        Rational::from_float(f).ok_or_else(|| Failure::Domain(format!("'{text}' is not finite")))?
    } else {
        parse_rational(text).map_err(Failure::Usage)?
    };
    Ok(value)
}

fn execute(cli: &Cli) -> Result<String, Failure> {
    let json = cli.json;
    let out = match &cli.command {
        Command::NormalOrder { expr } => {
            let nf = algebra::normal_order(&parse(expr)?);
            if json { serde_json::to_string(&nf).expect("normal form serializes") } else { nf.to_string() }
        }
        Command::DoubleDot { expr } => {
            let nf = algebra::double_dot(&parse(expr)?);
            if json { serde_json::to_string(&nf).expect("normal form serializes") } else { nf.to_string() }
        }
        Command::Wick { expr } => {
            let p = parse(expr)?;
            let mut total = algebra::NormalForm::zero();
            let mut words = Vec::new();
            let mut text = String::new();
            for (w, c) in p.terms() {
                let cs = wick::enumerate_contractions(w);
                total.add_assign(&wick::wick_normal_order(w).scale(c));
                text.push_str(&format!("{w}: {} contractions\n", cs.len()));
                for ctr in &cs {
                    let rest = ctr.remainder(w).counts();
                    let residue = algebra::NormalForm::monomial(rest.0, rest.1, Rational::from_integer(1.into()));
                    text.push_str(&format!("  {ctr} -> {residue}\n"));
                }
                words.push(json!({
                    "word": w.to_string(),
                    "coefficient": c.to_string(),
                    "contractions": cs.iter().map(|c| c.pairs().to_vec()).collect::<Vec<_>>(),
                }));
            }
            if json {
                json!({"words": words, "normal_form": total.to_json()}).to_string()
            } else {
                text.push_str(&format!("normal form: {total}"));
                text
            }
        }
        Command::Partitions { n, k } => {
            let ps = match k {
                Some(k) => wick::enumerate_partitions_with_blocks(*n, *k)?,
                None => wick::enumerate_partitions(*n)?,
            };
            if json {
                serde_json::to_string(&ps).expect("partitions serialize")
            } else {
                ps.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n")
            }
        }
        Command::Stirling { n, k, table } => match (table, n, k) {
            (Some(rows), None, None) => {
                let tsv = StirlingTable::new(*rows).to_tsv();
                tsv.trim_end_matches('\n').to_string()
            }
            (None, Some(n), Some(k)) => combinatorics::stirling_rec(*n, *k).to_string(),
            (None, Some(n), None) => combinatorics::falling_factorial_expand(*n)
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("\t"),
            _ => {
                return Err(Failure::Usage(
                    "use `stirling N K`, `stirling N` or `stirling --table N`".into(),
                ))
            }
        },
        Command::Bell { n } => combinatorics::bell_number(*n).to_string(),
        Command::BellPoly { n } => {
            let p = combinatorics::bell_polynomial(*n);
            if json { p.to_json().to_string() } else { p.to_string() }
        }
        Command::Dobinski { n, x, eps } => {
            let x = parse_nonneg(x)?;
            let v = combinatorics::dobinski(*n, &x, *eps)?;
            if json {
                let exact = combinatorics::bell_polynomial(*n as usize).eval(&x);
                json!({"n": n, "x": x.to_string(), "eps": eps, "value": v,
                       "exact": exact.to_string()})
                .to_string()
            } else {
                format!("{v}")
            }
        }
        Command::Verify { name, order } => {
            let r = coherent::verify_identity(name, *order)?;
            if json {
                r.to_json()
            } else if let Some((m, diff)) = &r.first_mismatch {
                format!("{} order {}: mismatch at λ^{m}: {diff}", r.identity, r.order)
            } else {
                format!("{} order {}: equal", r.identity, r.order)
            }
        }
        Command::Expect { expr, z } => {
            let nf = algebra::normal_order(&parse(expr)?);
            let v = coherent::expectation(&nf, *z);
            if json {
                json!({"re": v.re, "im": v.im}).to_string()
            } else {
                format!("{},{}", v.re, v.im)
            }
        }
        Command::Husimi { beta, grid, q, p } => {
            let params = ThermalParams::new(*beta)?;
            match (grid, q, p) {
                (None, Some(q), Some(p)) => {
                    let hq = phasespace::husimi_thermal(*q, *p, params);
                    let cl = phasespace::classical_thermal(*q, *p, params);
                    if json {
                        json!({"q": q, "p": p, "Q": hq, "Pcl": cl}).to_string()
                    } else {
                        format!("q,p,Q,Pcl\n{q},{p},{hq:e},{cl:e}")
                    }
                }
                (g, None, None) => {
                    let g: PhaseGrid = g.as_deref().unwrap_or("-3:3:7,-3:3:7").parse()?;
                    phasespace::grid_csv(&g, params).trim_end().to_string()
                }
                _ => return Err(Failure::Usage("--grid cannot be combined with --q/--p".into())),
            }
        }
    };
    Ok(out)
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let _ = writeln!(stderr, "{e}\n{GRAMMAR_HELP}");
            return 2;
        }
    };
    match execute(&cli) {
        Ok(text) => {
            let result = match &cli.out {
                Some(path) => std::fs::write(path, format!("{text}\n")),
                None => writeln!(stdout, "{text}"),
            };
            match result {
                Ok(()) => 0,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    1
                }
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}\n\n{GRAMMAR_HELP}");
            2
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
    }
}

/// Convenience for tests: returns (exit code, stdout, stderr).
pub fn run_captured<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(args, &mut out, &mut err);
    (
        code,
        String::from_utf8_lossy(&out).into_owned(),
        String::from_utf8_lossy(&err).into_owned(),
    )
}
