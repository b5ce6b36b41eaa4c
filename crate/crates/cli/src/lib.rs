//! The `alfkit` command-line tool.
//!
//! Exit codes: `0` success, `1` input error, `2` internal inconsistency.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use alfkit::alf::{make_alf, Alf, AlfSpec, H1Report};
use alfkit::clean::{apply_word_mod2, clean_class, DEFAULT_MAX_LEN};
use alfkit::embedding::{classify, report_render, Format};
use alfkit::spin::{spin_status, DEFAULT_BRUTE_BOUND};
use alfkit::surface::{humphreys_system, SurfaceFiber};
use alfkit::word::{parse_word, TwistWord};
use alfkit::{Error, Gf2Vec};
use clap::{ArgGroup, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

pub const BRUTE_BOUND_ENV: &str = "ALFKIT_BRUTE_BOUND";

#[derive(Debug, Parser)]
#[command(
    name = "alfkit",
    version,
    about = "Achiral Lefschetz fibration toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Embedding verdicts for LF(Σ_{G,1}, W).
    Classify {
        #[arg(long)]
        genus: usize,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// Stipsicz spin criterion on a closed fiber.
    #[command(group(ArgGroup::new("fiber").required(true).args(["double", "closed"])))]
    Spin {
        #[arg(long)]
        genus: usize,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Read W over Σ_{G,1} and test its double on Σ_{2G}.
        #[arg(long)]
        double: bool,
        /// Read W directly over the closed Σ_G.
        #[arg(long)]
        closed: bool,
    },
    /// Euler characteristic, H1 of the total space and of the boundary.
    Invariants {
        #[arg(long)]
        genus: usize,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Matrix of the monodromy on H1(Σ_{G,1}).
    Action {
        #[arg(long)]
        genus: usize,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Shortest word moving a mod-2 class into span(α).
    Clean {
        #[arg(long)]
        genus: usize,
        /// Comma-separated coordinates in the order α1,β1,α2,β2,...
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
        max_len: usize,
    },
    /// Classify one JSON ALF per line, writing one report per line.
    Batch {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type CmdResult<T> = std::result::Result<T, Failure>;

fn parse_word_arg(text: &str) -> CmdResult<TwistWord> {
    parse_word(text).map(|p| p.into_word()).map_err(|e| {
        let Error::Parse { message, span } = &e else {
            return e.into();
        };
        let caret = format!(
            "{}{}",
            " ".repeat(text[..span.start].chars().count()),
            "^".repeat(text[span.clone()].chars().count().max(1))
        );
        Failure::Input(format!(
            "{message} at {}..{}\n  {text}\n  {caret}",
            span.start, span.end
        ))
    })
}

fn bounded_alf(genus: usize, word: &str) -> CmdResult<Alf> {
    Ok(make_alf(
        SurfaceFiber::standard(genus, 1),
        parse_word_arg(word)?,
    )?)
}

fn brute_bound() -> CmdResult<usize> {
    match std::env::var(BRUTE_BOUND_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            Failure::Input(format!(
                "{BRUTE_BOUND_ENV} must be a non-negative integer, got '{v}'"
            ))
        }),
        Err(_) => Ok(DEFAULT_BRUTE_BOUND),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("output serializes")
}

#[derive(Serialize)]
struct Invariants {
    genus: usize,
    boundary: usize,
    word: String,
    k: usize,
    euler_characteristic: i64,
    total_space_h1: H1Report,
    total_space_h1_group: String,
    boundary_h1: H1Report,
    boundary_h1_group: String,
}

#[derive(Serialize)]
struct ActionOutput {
    genus: usize,
    word: String,
    matrix: alfkit::ActionMatrix,
    symplectic: bool,
}

#[derive(Serialize)]
struct CleanOutput {
    genus: usize,
    class: Vec<u8>,
    word: String,
    image: Vec<u8>,
}

#[derive(Serialize)]
struct BatchError {
    line: usize,
    error: String,
}

fn parse_class(genus: usize, csv: &str) -> CmdResult<Gf2Vec> {
    let coords = csv
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Failure::Input(format!("malformed class coordinate '{}'", t.trim())))
        })
        .collect::<CmdResult<Vec<_>>>()?;
    if coords.len() != 2 * genus {
        return Err(Error::LengthMismatch {
            expected: 2 * genus,
            got: coords.len(),
        }
        .into());
    }
    Ok(Gf2Vec::from_bits(
        coords.iter().map(|c| c.rem_euclid(2) == 1),
    ))
}

/// Classifies one batch line; any failure becomes an error object.
fn batch_line(number: usize, line: &str, bound: usize) -> (String, bool) {
    let result = serde_json::from_str::<AlfSpec>(line)
        .map_err(|e| Failure::Input(format!("invalid ALF JSON: {e}")))
        .and_then(|spec| Ok(Alf::from_spec(&spec)?))
        .and_then(|alf| Ok(classify(&alf, bound)?));
    match result {
        Ok(report) => (report_render(&report, Format::Json), false),
        Err(f) => {
            let (error, internal) = match f {
                Failure::Input(m) => (m, false),
                Failure::Internal(m) => (format!("internal inconsistency: {m}"), true),
            };
            (
                to_json(&BatchError {
                    line: number,
                    error,
                }),
                internal,
            )
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> CmdResult<i32> {
    let mut emit = |s: &str| {
        writeln!(out, "{s}").map_err(|e| Failure::Input(format!("cannot write output: {e}")))
    };
    match command {
        Command::Classify { genus, word, json } => {
            let report = classify(&bounded_alf(genus, &word)?, brute_bound()?)?;
            let format = if json { Format::Json } else { Format::Text };
            emit(report_render(&report, format).trim_end())?;
        }
        Command::Spin {
            genus,
            word,
            double,
            closed,
        } => {
            debug_assert!(double ^ closed);
            let word = parse_word_arg(&word)?;
            let alf = if double {
                make_alf(SurfaceFiber::standard(genus, 1), word)?.double()?
            } else {
                make_alf(SurfaceFiber::standard(genus, 0), word)?
            };
            emit(&to_json(&spin_status(&alf, brute_bound()?)?))?;
        }
        Command::Invariants { genus, word } => {
            let alf = bounded_alf(genus, &word)?;
            let total = alf.total_space_h1()?;
            let boundary = alf.boundary_open_book()?.h1()?;
            emit(&to_json(&Invariants {
                genus,
                boundary: 1,
                word: alf.word().to_string(),
                k: alf.k(),
                euler_characteristic: alf.euler_characteristic(),
                total_space_h1_group: total.to_string(),
                total_space_h1: total,
                boundary_h1_group: boundary.to_string(),
                boundary_h1: boundary,
            }))?;
        }
        Command::Action { genus, word } => {
            let alf = bounded_alf(genus, &word)?;
            let matrix = alf.monodromy_action()?;
            emit(&to_json(&ActionOutput {
                genus,
                word: alf.word().to_string(),
                symplectic: matrix.preserves_form()?,
                matrix,
            }))?;
        }
        Command::Clean {
            genus,
            class,
            max_len,
        } => {
            let system = humphreys_system(SurfaceFiber::standard(genus, 1))?;
            let v = parse_class(genus, &class)?;
            let word = clean_class(&v, &system, max_len)?;
            let image = apply_word_mod2(&system, &word, &v)?;
            emit(&to_json(&CleanOutput {
                genus,
                class: v.to_bits(),
                word: word.to_string(),
                image: image.to_bits(),
            }))?;
        }
        Command::Batch { file, jobs } => {
            let bound = brute_bound()?;
            let content = std::fs::read_to_string(&file)
                .map_err(|e| Failure::Input(format!("cannot read {}: {e}", file.display())))?;
            let lines: Vec<&str> = content.lines().collect();
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.max(1))
                .build()
                .map_err(|e| Failure::Internal(format!("cannot start worker pool: {e}")))?;
            let results: Vec<(String, bool)> = pool.install(|| {
                lines
                    .par_iter()
                    .enumerate()
                    .map(|(i, line)| batch_line(i + 1, line, bound))
                    .collect()
            });
            let mut trapped = false;
            for (line, internal) in results {
                trapped |= internal;
                emit(&line)?;
            }
            if trapped {
                return Ok(2);
            }
        }
    }
    Ok(0)
}

/// Runs the tool on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Input(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
        Err(Failure::Internal(m)) => {
            let _ = writeln!(err, "error: internal inconsistency: {m}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(
            std::iter::once("alfkit").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn classify_json_and_help() {
        let (code, out, _) =
            run_capture(&["classify", "--genus", "2", "--word", "a1 c1 b1", "--json"]);
        assert_eq!(code, 0);
        assert!(out.contains(r#""d6":"embeds""#));
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("classify"));
    }

    #[test]
    fn parse_errors_point_at_the_token() {
        let (code, _, err) = run_capture(&["action", "--genus", "2", "--word", "a1 x7 b1"]);
        assert_eq!(code, 1);
        assert!(err.starts_with("error: unknown curve label 'x7' at 3..5"));
        assert!(err.contains("\n     ^^\n"));
    }

    #[test]
    fn class_parsing() {
        assert_eq!(parse_class(1, "3, -2").unwrap().to_bits(), vec![1, 0]);
        assert!(parse_class(1, "1,x").is_err());
        assert!(parse_class(2, "1,0").is_err());
    }

    #[test]
    fn batch_line_errors_are_objects() {
        let (line, internal) = batch_line(7, "{}", DEFAULT_BRUTE_BOUND);
        assert!(!internal);
        assert!(line.starts_with(r#"{"line":7,"error":"#));
    }
}
