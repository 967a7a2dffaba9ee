use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use abelian_core::analysis::{self, PositionSet};
use abelian_core::constructions::pvhh::{pvhh_check, pvhh_violations, search_pvhh_word, tau_block_boundaries, tau_encode};
use abelian_core::constructions::{scan_prefix_pattern, PatternKind};
use abelian_core::verify::Suite;
use abelian_core::IntegerWord;
use anyhow::{bail, ensure, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::Value;

mod output;
mod spec;

use output::{Format, Table};
use spec::Word;

#[derive(Parser)]
#[command(name = "abelian", version, about = "Abelian complexity, balance and Abelian power scans on infinite words")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value = "csv", global = true)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print a prefix of a word.
    Generate {
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 64)]
        len: usize,
        /// Print the prefix as a bare string instead of a table.
        #[arg(long)]
        raw: bool,
    },
    /// Abelian complexity for window lengths 1..=n-max.
    Complexity {
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 64)]
        n_max: usize,
        #[arg(long, default_value_t = 65536)]
        prefix: usize,
    },
    /// Least C such that the prefix is C-balanced on windows up to n-max.
    Balance {
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 64)]
        n_max: usize,
        #[arg(long, default_value_t = 65536)]
        prefix: usize,
    },
    /// Abelian k-powers starting at a position.
    Powers {
        #[arg(long)]
        word: String,
        #[arg(long)]
        pos: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 1000)]
        max_period: usize,
        /// List every period, not just the least.
        #[arg(long)]
        all: bool,
    },
    /// Certify positions as Abelian-square-avoiding up to a period bound.
    /// Exits 1 if any scanned position begins a square.
    ScanSquares {
        #[arg(long)]
        word: String,
        /// A single position; otherwise the range `from..to` is scanned.
        #[arg(long, conflicts_with_all = ["from", "to"])]
        pos: Option<usize>,
        #[arg(long, default_value_t = 0)]
        from: usize,
        #[arg(long)]
        to: Option<usize>,
        #[arg(long, default_value_t = 1000)]
        max_period: usize,
    },
    /// Look for a prefix `0x0y0` (optionally after a fixed lead) with |x| = |y|.
    /// Exits 1 if one is found.
    ScanPrefixPattern {
        #[arg(long)]
        word: String,
        /// `0x0y0`, `010x0y0` or `hn01:<n>`.
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 100_000)]
        bound: usize,
    },
    /// Whether every length-n factor begins with an Abelian k-power.
    /// Exits 1 if not.
    Repetitive {
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 65536)]
        prefix: usize,
    },
    /// Largest gap between consecutive occurrences of length-n factors.
    Recurrence {
        #[arg(long)]
        word: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 65536)]
        prefix: usize,
    },
    /// Check an integer word for adjacent equal-length blocks with equal
    /// sums, or search for a word without them. Exits 1 on a violation.
    Pvhh {
        /// Integer word spec such as `v:3`.
        #[arg(long, conflicts_with_all = ["values", "search"])]
        word: Option<String>,
        /// Comma-separated integers.
        #[arg(long, conflicts_with = "search")]
        values: Option<String>,
        /// Comma-separated alphabet to search over.
        #[arg(long)]
        search: Option<String>,
        #[arg(long, default_value_t = 40)]
        target: usize,
        #[arg(long, default_value_t = 64)]
        prefix: usize,
        /// Largest block length checked; defaults to half the word length.
        #[arg(long)]
        max_block: Option<usize>,
        /// Report every violation, not just the first.
        #[arg(long)]
        all: bool,
    },
    /// Encode odd positive integers as `0 1^a 0` blocks.
    Tau {
        #[arg(long)]
        values: String,
    },
    /// Density of square-avoiding positions below a horizon.
    Density {
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 100_000)]
        horizon: usize,
        #[arg(long, default_value_t = 1000)]
        max_period: usize,
    },
    /// Run acceptance suites (by number or name; default all).
    /// Exits 1 if any row fails or a suite exceeds its time limit.
    Verify {
        suites: Vec<String>,
    },
}

/// Outcome of a command: the table to print and whether the checked
/// property held.
struct Report {
    table: Table,
    holds: bool,
    raw: Option<String>,
}

impl Report {
    fn ok(table: Table) -> Self {
        Report {
            table,
            holds: true,
            raw: None,
        }
    }
}

fn letters(word: &str) -> Result<abelian_core::PrefixStream> {
    spec::parse(word)?.letters()
}

fn parse_values(text: &str) -> Result<IntegerWord> {
    let values = text
        .split(',')
        .map(|v| v.trim().parse::<i64>().with_context(|| format!("bad integer {v:?}")))
        .collect::<Result<Vec<_>>>()?;
    Ok(IntegerWord::new(values))
}

fn opt<T: Into<Value>>(v: Option<T>) -> Value {
    v.map_or(Value::Null, Into::into)
}

fn run(command: Command) -> Result<Report> {
    Ok(match command {
        Command::Generate { word, len, raw } => {
            let mut table = Table::new(&["n", "value"]);
            let text = match spec::parse(&word)? {
                Word::Letters(mut s) => {
                    let alphabet = s.alphabet().clone();
                    for (n, &a) in s.prefix(len).iter().enumerate() {
                        table.push(row![n, alphabet.symbol(a).to_string()]);
                    }
                    s.prefix_string(len)
                }
                Word::Integers(mut s) => {
                    let w = s.prefix(len);
                    for (n, &v) in w.values().iter().enumerate() {
                        table.push(row![n, v]);
                    }
                    w.to_string()
                }
            };
            Report {
                table,
                holds: true,
                raw: raw.then_some(text),
            }
        }
        Command::Complexity { word, n_max, prefix } => {
            ensure!(n_max >= 1 && n_max <= prefix, "need 1 <= n-max <= prefix");
            let idx = letters(&word)?.factor_index(prefix);
            let profile = analysis::complexity_profile(&idx, n_max)?;
            let mut table = Table::new(&["n", "value"]);
            for n in 1..=n_max {
                table.push(row![n, profile.values[n]]);
            }
            Report::ok(table)
        }
        Command::Balance { word, n_max, prefix } => {
            ensure!(n_max >= 1 && n_max <= prefix, "need 1 <= n-max <= prefix");
            let idx = letters(&word)?.factor_index(prefix);
            let r = analysis::balance(&idx, n_max)?;
            let w = r.witness.as_ref();
            let mut table = Table::new(&["c", "length", "letter", "low", "high"]);
            table.push(row![
                r.c,
                opt(w.map(|w| w.length)),
                opt(w.map(|w| w.letter)),
                opt(w.map(|w| w.low)),
                opt(w.map(|w| w.high)),
            ]);
            Report::ok(table)
        }
        Command::Powers { word, pos, k, max_period, all } => {
            ensure!(k >= 1 && max_period >= 1, "need k >= 1 and max-period >= 1");
            let idx = letters(&word)?.factor_index(pos + k * max_period);
            let found = if all {
                analysis::abelian_powers_at(&idx, pos, k, max_period)?
            } else {
                analysis::shortest_abelian_power_at(&idx, pos, k, max_period)?
                    .into_iter()
                    .collect()
            };
            let mut table = Table::new(&["pos", "result", "period"]);
            if found.is_empty() {
                table.push(row![pos, "none", Value::Null]);
            }
            for w in found {
                table.push(row![pos, format!("power{k}"), w.period]);
            }
            Report::ok(table)
        }
        Command::ScanSquares { word, pos, from, to, max_period } => {
            let range = match pos {
                Some(p) => p..p + 1,
                None => from..to.context("give --pos or --to")?,
            };
            ensure!(!range.is_empty() && max_period >= 1, "empty scan");
            let idx = letters(&word)?.factor_index(range.end - 1 + 2 * max_period);
            let periods = analysis::minimal_power_periods(&idx, range.clone(), 2, max_period)?;
            let mut table = Table::new(&["pos", "result", "period"]);
            for (p, period) in range.zip(&periods) {
                match period {
                    None => table.push(row![p, "avoids", Value::Null]),
                    Some(q) => table.push(row![p, "square", q]),
                }
            }
            Report {
                table,
                holds: periods.iter().all(Option::is_none),
                raw: None,
            }
        }
        Command::ScanPrefixPattern { word, kind, bound } => {
            let kind: PatternKind = kind.parse()?;
            let r = scan_prefix_pattern(&mut letters(&word)?, kind, bound);
            let render = |w: &[u8]| w.iter().map(|a| char::from(b'0' + a)).collect::<String>();
            let mut table = Table::new(&["kind", "bound", "lead_matches", "found", "x", "y"]);
            table.push(row![
                kind.to_string(),
                bound,
                r.lead_matches,
                r.found.is_some(),
                opt(r.found.as_ref().map(|(x, _)| render(x))),
                opt(r.found.as_ref().map(|(_, y)| render(y))),
            ]);
            Report {
                table,
                holds: r.found.is_none(),
                raw: None,
            }
        }
        Command::Repetitive { word, k, n, prefix } => {
            ensure!(n >= 1 && n <= prefix, "need 1 <= n <= prefix");
            let idx = letters(&word)?.factor_index(prefix);
            let r = analysis::everywhere_k_repetitive(&idx, k, n)?;
            let mut table = Table::new(&["k", "n", "holds", "witness"]);
            table.push(row![k, n, r.holds, opt(r.witness)]);
            Report {
                table,
                holds: r.holds,
                raw: None,
            }
        }
        Command::Recurrence { word, n, prefix } => {
            ensure!(n >= 1 && n <= prefix, "need 1 <= n <= prefix");
            let idx = letters(&word)?.factor_index(prefix);
            let r = analysis::recurrence_gap(&idx, n)?;
            let mut table = Table::new(&["n", "max_gap", "at", "single_occurrences"]);
            table.push(row![n, opt(r.max_gap), opt(r.at), r.single_occurrences]);
            Report::ok(table)
        }
        Command::Pvhh { word, values, search, target, prefix, max_block, all } => {
            if let Some(alphabet) = search {
                let alphabet = parse_values(&alphabet)?;
                ensure!(!alphabet.is_empty(), "empty alphabet");
                let block = max_block.unwrap_or(target);
                let x = search_pvhh_word(alphabet.values(), target, block);
                let mut table = Table::new(&["word", "length", "target"]);
                table.push(row![x.to_string(), x.len(), target]);
                return Ok(Report::ok(table));
            }
            let x = match (word, values) {
                (Some(w), None) => match spec::parse(&w)? {
                    Word::Integers(mut s) => s.prefix(prefix),
                    Word::Letters(_) => bail!("{w:?} is not an integer word"),
                },
                (None, Some(v)) => parse_values(&v)?,
                _ => bail!("give one of --word, --values or --search"),
            };
            let block = max_block.unwrap_or(x.len() / 2);
            let found = if all {
                pvhh_violations(&x, block)
            } else {
                pvhh_check(&x, block).into_iter().collect()
            };
            let sums = x.sum_index();
            let mut table = Table::new(&["i", "length", "sum"]);
            for &(i, l) in &found {
                table.push(row![i, l, sums.sum(i, i + l)]);
            }
            Report {
                table,
                holds: found.is_empty(),
                raw: None,
            }
        }
        Command::Tau { values } => {
            let x = parse_values(&values)?;
            let encoded = tau_encode(&x)?;
            let boundaries = tau_block_boundaries(&x)
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(" ");
            let mut table = Table::new(&["input", "encoded", "boundaries"]);
            table.push(row![x.to_string(), encoded.to_string(), boundaries]);
            Report::ok(table)
        }
        Command::Density { word, horizon, max_period } => {
            ensure!(horizon >= 1 && max_period >= 1, "need positive horizon and max-period");
            let idx = letters(&word)?.factor_index(horizon - 1 + 2 * max_period);
            let set: PositionSet = analysis::square_avoiding_positions(&idx, horizon, max_period)?;
            let d = analysis::density(&set)?;
            let mut table = Table::new(&["horizon", "max_period", "count", "density"]);
            table.push(row![horizon, max_period, set.len(), *d.numer() as f64 / *d.denom() as f64]);
            Report::ok(table)
        }
        Command::Verify { suites } => {
            let suites = if suites.is_empty() || suites.iter().any(|s| s == "all") {
                Suite::ALL.to_vec()
            } else {
                suites
                    .iter()
                    .map(|s| s.parse::<Suite>().map_err(anyhow::Error::msg))
                    .collect::<Result<Vec<_>>>()?
            };
            let mut table = Table::new(&["suite", "statement", "horizon", "expected", "observed", "pass"]);
            let mut holds = true;
            for suite in suites {
                let report = suite.run();
                eprintln!("{}", report.summary());
                holds &= report.passed();
                for r in report.rows {
                    table.push(row![r.suite, r.statement, r.horizon, r.expected, r.observed, r.pass]);
                }
            }
            Report {
                table,
                holds,
                raw: None,
            }
        }
    })
}

fn emit(report: &Report, format: Format, output: Option<&PathBuf>) -> Result<()> {
    let mut out: Box<dyn Write> = match output {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    match &report.raw {
        Some(text) => writeln!(out, "{text}")?,
        None => report.table.write(format, &mut out)?,
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli.command).and_then(|report| {
        emit(&report, cli.format, cli.output.as_ref())?;
        Ok(report.holds)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
