//! The `sos` command line. Everything is routed through [`cli_main`] so the
//! same code path is testable without spawning a process.

use std::fmt::Write;

use clap::{Parser, Subcommand, ValueEnum};

use crate::exact::UnitRational;
use crate::farey::{farey_sequence, FareyInterval};
use crate::geometry::{domain_of, partition, refine, strip_regions};
use crate::io::record::{to_json, GapRecord, PartitionRecord, RegionRecord, StripRecord, VerifyRecord};
use crate::io::svg::render_svg;
use crate::sosperm::{count_sos, gap_profile, sos_orbit, sos_permutation, sos_recurrence, SosPerm};
use crate::verify::{oracle_bijection_check, oracle_partition_check, oracle_three_gaps};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ORACLE_FAILED: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Parser)]
#[command(name = "sos", version, about = "Sós permutations, Farey strips and their domains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Svg,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// The permutation sorting {αi + β} for i = 0..n
    Perm {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long)]
        n: usize,
    },
    /// All n + 1 permutations for a fixed α, one per line
    Orbit {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        n: usize,
    },
    /// The Farey sequence of order n, one term per line
    Farey {
        #[arg(long)]
        n: u64,
    },
    /// The β = 0 permutation of a Farey interval, built by the recurrence
    Recurrence {
        /// Adjacent terms written `a/b,c/d`
        #[arg(long)]
        interval: String,
        #[arg(long)]
        n: usize,
    },
    /// The domain of a Sós permutation as JSON
    Domain {
        #[arg(long)]
        perm: String,
    },
    /// The full partition of the unit square
    Partition {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, default_value_t = 800)]
        width: u32,
        /// Label domains only if there are at most this many
        #[arg(long, default_value_t = 64)]
        label_threshold: usize,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Areas and shapes of the domains over one strip
    Strip {
        #[arg(long)]
        interval: String,
        #[arg(long)]
        n: usize,
    },
    /// Sorted values and circular gaps of {αi + β}
    Gaps {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long)]
        n: usize,
    },
    /// Permutations of size n + 1 whose domains tile the given one
    Refine {
        #[arg(long)]
        perm: String,
    },
    /// Number of Sós permutations of size n
    Count {
        #[arg(long)]
        n: u64,
    },
    /// Run the partition, bijection and three-gaps oracles
    Verify {
        #[arg(long)]
        n: usize,
        /// Defaults to max(2n², 16)
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

struct Failed(i32, String);

fn bad(msg: impl std::fmt::Display) -> Failed {
    Failed(EXIT_BAD_INPUT, format!("error: {msg}"))
}

fn unit(name: &str, s: &str) -> Result<UnitRational, Failed> {
    s.parse().map_err(|e| bad(format!("--{name}: {e}")))
}

fn positive<T: PartialOrd + From<u8>>(n: T) -> Result<T, Failed> {
    if n < T::from(1) {
        Err(bad("--n must be at least 1"))
    } else {
        Ok(n)
    }
}

fn interval(s: &str, n: usize) -> Result<FareyInterval, Failed> {
    FareyInterval::parse(s, n as u64).map_err(bad)
}

fn perm(s: &str) -> Result<SosPerm, Failed> {
    s.parse().map_err(bad)
}

fn json<T: serde::Serialize>(v: &T) -> Result<String, Failed> {
    to_json(v).map(|mut s| {
        s.push('\n');
        s
    })
    .map_err(|e| Failed(EXIT_BAD_INPUT, format!("error: {e}")))
}

fn run(cmd: Command) -> Result<(i32, String), Failed> {
    let out = match cmd {
        Command::Perm { alpha, beta, n } => {
            let (alpha, beta) = (unit("alpha", &alpha)?, unit("beta", &beta)?);
            format!("{}\n", sos_permutation(&alpha, &beta, positive(n)?))
        }
        Command::Orbit { alpha, n } => {
            let alpha = unit("alpha", &alpha)?;
            let mut s = String::new();
            for p in sos_orbit(&alpha, positive(n)?) {
                let _ = writeln!(s, "{p}");
            }
            s
        }
        Command::Farey { n } => {
            let mut s = String::new();
            for f in farey_sequence(positive(n)?) {
                let _ = writeln!(s, "{f}");
            }
            s
        }
        Command::Recurrence { interval: iv, n } => {
            let iv = interval(&iv, positive(n)?)?;
            format!("{}\n", sos_recurrence(&iv, n).map_err(bad)?)
        }
        Command::Domain { perm: p } => {
            let d = domain_of(&perm(&p)?).map_err(bad)?;
            json(&RegionRecord::from(&d))?
        }
        Command::Partition { n, format, width, label_threshold, out } => {
            let part = partition(positive(n)?);
            let body = match format {
                Format::Json => json(&PartitionRecord::from(&part))?,
                Format::Svg => {
                    if width == 0 {
                        return Err(bad("--width must be positive"));
                    }
                    render_svg(&part, width, label_threshold)
                }
            };
            match out {
                Some(path) => {
                    std::fs::write(&path, body)
                        .map_err(|e| bad(format!("cannot write {}: {e}", path.display())))?;
                    String::new()
                }
                None => body,
            }
        }
        Command::Strip { interval: iv, n } => {
            let iv = interval(&iv, positive(n)?)?;
            let domains = strip_regions(&iv, n).map_err(bad)?;
            json(&StripRecord::new(&iv, n, &domains))?
        }
        Command::Gaps { alpha, beta, n } => {
            let (alpha, beta) = (unit("alpha", &alpha)?, unit("beta", &beta)?);
            let g = gap_profile(&alpha, &beta, positive(n)?);
            json(&GapRecord::new(&alpha, &beta, &g))?
        }
        Command::Refine { perm: p } => {
            let mut s = String::new();
            for q in refine(&perm(&p)?).map_err(bad)? {
                let _ = writeln!(s, "{q}");
            }
            s
        }
        Command::Count { n } => format!("{}\n", count_sos(positive(n)?)),
        Command::Verify { n, grid, trials, seed } => {
            let n = positive(n)?;
            let grid = grid.unwrap_or((2 * n * n).max(16));
            let reports = vec![
                oracle_partition_check(n, grid),
                oracle_bijection_check(n),
                oracle_three_gaps(n, trials, seed),
            ];
            let passed = reports.iter().all(|r| r.passed());
            let body = json(&VerifyRecord { passed, reports })?;
            return Ok((if passed { EXIT_OK } else { EXIT_ORACLE_FAILED }, body));
        }
    };
    Ok((EXIT_OK, out))
}

/// Parses `argv` (including the program name) and runs one subcommand.
pub fn cli_main<I, T>(argv: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutput { code: EXIT_BAD_INPUT, stdout: String::new(), stderr: text }
            } else {
                // --help and --version
                CliOutput { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    match run(cli.command) {
        Ok((code, stdout)) => CliOutput { code, stdout, stderr: String::new() },
        Err(Failed(code, msg)) => CliOutput { code, stdout: String::new(), stderr: format!("{msg}\n") },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sos(args: &[&str]) -> CliOutput {
        cli_main(std::iter::once("sos").chain(args.iter().copied()))
    }

    #[test]
    fn perm_and_count() {
        let o = sos(&["perm", "--alpha", ".44", "--beta", ".32", "--n", "7"]);
        assert_eq!((o.code, o.stdout.as_str()), (0, "42075316\n"));
        assert_eq!(sos(&["count", "--n", "4"]).stdout, "30\n");
    }

    #[test]
    fn bad_input_exits_two() {
        for args in [
            &["perm", "--alpha", "1/0", "--beta", "0", "--n", "3"][..],
            &["perm", "--alpha", "1", "--beta", "0", "--n", "3"],
            &["perm", "--alpha", "1/3", "--beta", "0", "--n", "0"],
            &["recurrence", "--interval", "1/4,1/2", "--n", "4"],
            &["domain", "--perm", "0231"],
            &["domain", "--perm", "0011"],
            &["frobnicate"],
        ] {
            let o = sos(args);
            assert_eq!(o.code, 2, "{args:?}");
            assert!(!o.stderr.is_empty());
            assert!(o.stdout.is_empty());
        }
    }

    #[test]
    fn help_is_not_an_error() {
        let o = sos(&["--help"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("partition"));
    }
}
