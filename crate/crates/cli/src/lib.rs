//! The `permgraph` command.
//!
//! Exit codes: 0 success, 1 parse or usage error, 2 structural/oracle
//! disagreement or a failed verification, 3 a brute-force path refused.

pub mod config;
pub mod input;
pub mod survey;
pub mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use permgraph::classify::{
    classify_permutational, classify_sequence, coset_check, count_minimal_factorizations,
    minimal_factorization_length, Agreement, ClassificationReport, Paths, Question,
    DEFAULT_PHI_SUPPORT,
};
use permgraph::construct::{
    bike_product_sequence, circuit_realizer, named_sequence, Named, NumberSeq,
};
use permgraph::enumeration::{
    enumerate_prod, enumerate_prod_general, find_rearrangement, Rearrangement,
};
use permgraph::multigraph::Multigraph;
use permgraph::perm::Permutation;
use permgraph::sequence::Sequence;

use crate::config::Settings;
use crate::input::{resolve, Input};

#[derive(Debug, Parser)]
#[command(
    name = "permgraph",
    version,
    about = "Products of rearranged transposition sequences"
)]
pub struct Cli {
    #[command(flatten)]
    pub settings: Settings,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuestionArg {
    /// Is Prod(s) a full coset of Alt(n)?
    Pc,
    /// Do all products share one cycle type?
    Ci,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SurveyFormat {
    Csv,
    Jsonl,
}

/// Where a command reads its sequence from.
#[derive(Debug, Clone, clap::Args)]
pub struct Source {
    /// Catalog name (`rect`, `bike:3`, ...), a file, or `-` for stdin.
    pub input: String,

    /// Degree for sequence files without an `n` line.
    #[arg(long)]
    pub degree: Option<usize>,

    /// Read the file as a multigraph (`n N` then `a b [m]` lines).
    #[arg(long)]
    pub graph: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide perm-completeness or conjugacy invariance.
    Classify {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "pc")]
        question: QuestionArg,
        /// Only the structural rules.
        #[arg(long, conflicts_with_all = ["oracle", "both"])]
        structural: bool,
        /// Only the brute-force oracle.
        #[arg(long, conflicts_with = "both")]
        oracle: bool,
        /// Both paths, compared (the default).
        #[arg(long)]
        both: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List Prod(s).
    Prod {
        #[command(flatten)]
        source: Source,
        /// Print at most this many members.
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Find a rearrangement with a given product.
    Find {
        #[command(flatten)]
        source: Source,
        /// Target product in cycle notation, e.g. `(0 2)(1 3)`.
        #[arg(long)]
        target: String,
    },
    /// Print a constructed sequence.
    Construct {
        #[command(subcommand)]
        what: Construction,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: verify::Suite,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Tabulate every small connected multigraph.
    Survey {
        #[arg(long)]
        max_n: Option<usize>,
        /// Bound on total multiplicity.
        #[arg(long)]
        max_edges: Option<usize>,
        /// Only simple graphs.
        #[arg(long)]
        simple: bool,
        /// Allow more than 6 vertices.
        #[arg(long)]
        force: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: SurveyFormat,
        /// Output file; stdout if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count minimal-length transposition factorizations of a permutation.
    CountPhi {
        /// Cycle notation, e.g. `(0 1 2)(3 4)`.
        permutation: String,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        max_support: Option<usize>,
    },
    /// Check whether Prod(s) is a right coset of a subgroup.
    Coset {
        #[command(flatten)]
        source: Source,
    },
}

#[derive(Debug, Subcommand)]
pub enum Construction {
    /// A catalog entry such as `tau:5`, `wheel:4` or `e`.
    Named {
        name: String,
        /// Print the multigraph instead of the sequence.
        #[arg(long)]
        graph: bool,
    },
    /// The rearrangement of the circuit sequence with product (h)(rest)⁻.
    Realizer {
        #[arg(long)]
        n: usize,
        /// Increasing points of h, comma separated.
        #[arg(long, value_delimiter = ',')]
        h: Vec<usize>,
    },
    /// The bike sequence with product (0 1)(x₁ .. x₂ₜ).
    BikeProduct {
        #[arg(long, value_delimiter = ',')]
        x: Vec<usize>,
    },
}

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Usage(String),
}

impl CliError {
    pub(crate) fn io(e: std::io::Error) -> Self {
        CliError::Usage(format!("write failed: {e}"))
    }

    pub(crate) fn csv(e: csv::Error) -> Self {
        CliError::Usage(format!("csv: {e}"))
    }
}

impl From<permgraph::error::Error> for CliError {
    fn from(e: permgraph::error::Error) -> Self {
        match e {
            permgraph::error::Error::Parse { .. } => CliError::Parse(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(m) | CliError::Usage(m) => f.write_str(m),
        }
    }
}

pub const EXIT_DISAGREE: u8 = 2;
pub const EXIT_REFUSED: u8 = 3;

pub fn main_with(cli: Cli) -> ExitCode {
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn out(text: &str) -> Result<(), CliError> {
    let mut stdout = std::io::stdout().lock();
    writeln!(stdout, "{text}").map_err(CliError::io)
}

pub fn run(cli: Cli) -> Result<u8, CliError> {
    let resolved = cli.settings.resolve()?;
    let budget = resolved.budget;
    match cli.command {
        Command::Classify {
            source,
            question,
            structural,
            oracle,
            both: _,
            format,
        } => {
            let question = match question {
                QuestionArg::Pc => Question::PermComplete,
                QuestionArg::Ci => Question::ConjugacyInvariant,
            };
            let paths = match (structural, oracle) {
                (true, _) => Paths {
                    structural: true,
                    oracle: false,
                },
                (_, true) => Paths {
                    structural: false,
                    oracle: true,
                },
                _ => Paths::BOTH,
            };
            let report = match resolve(&source.input, source.degree, source.graph)? {
                Input::Transpositional(s) => classify_sequence(&s, question, paths, &budget),
                Input::Permutational(s) => {
                    if !paths.oracle {
                        return Err(CliError::Usage(
                            "structural rules apply to transpositions only; use --oracle".into(),
                        ));
                    }
                    classify_permutational(&s, question, &budget)
                }
            };
            match format {
                Format::Json => out(&report.to_json())?,
                Format::Text => out(&report_text(&report))?,
            }
            Ok(if report.agreement == Agreement::Disagree {
                EXIT_DISAGREE
            } else if report.is_refused() {
                EXIT_REFUSED
            } else {
                0
            })
        }
        Command::Prod {
            source,
            limit,
            format,
        } => {
            let prod = match resolve(&source.input, source.degree, source.graph)? {
                Input::Transpositional(s) => enumerate_prod(&s, &budget),
                Input::Permutational(s) => enumerate_prod_general(&s, &budget),
            };
            let prod = match prod {
                Ok(p) => p,
                Err(r) => {
                    eprintln!("refused: {r}");
                    return Ok(EXIT_REFUSED);
                }
            };
            let shown = &prod.members()[..limit.unwrap_or(usize::MAX).min(prod.len())];
            match format {
                Format::Json if limit.is_none() => out(&prod.to_json())?,
                Format::Json => {
                    let members: Vec<String> = shown.iter().map(|p| p.to_string()).collect();
                    let v = serde_json::json!({
                        "degree": prod.degree(),
                        "parity": prod.parity(),
                        "size": prod.len(),
                        "members": members,
                    });
                    out(&v.to_string())?
                }
                Format::Text => {
                    out(&format!(
                        "# degree {} parity {} size {}",
                        prod.degree(),
                        prod.parity(),
                        prod.len()
                    ))?;
                    for p in shown {
                        out(&p.to_string())?;
                    }
                }
            }
            Ok(0)
        }
        Command::Find { source, target } => {
            let s = resolve(&source.input, source.degree, source.graph)?.transpositional("find")?;
            let f = Permutation::parse_cycles(&target, s.degree())?;
            match find_rearrangement(&s, &f, &budget)? {
                Rearrangement::Found(r) => {
                    out(&r.to_string())?;
                    Ok(0)
                }
                Rearrangement::Absent => {
                    out(&format!(
                        "absent: {f} is not a product of any rearrangement"
                    ))?;
                    Ok(0)
                }
                Rearrangement::Refused(r) => {
                    eprintln!("refused: {r}");
                    Ok(EXIT_REFUSED)
                }
            }
        }
        Command::Construct { what } => {
            match what {
                Construction::Named { name, graph } => match named_sequence(&name)? {
                    Named::Transpositional(s) if graph => {
                        out(Multigraph::from_sequence(&s).to_text().trim_end())?
                    }
                    Named::Transpositional(s) => out(s.to_text().trim_end())?,
                    Named::Permutational(s) => {
                        out(&format!("n {}", s.degree()))?;
                        for t in s.terms() {
                            out(&t.to_string())?;
                        }
                    }
                    Named::Numbers(x) => out(&x.to_string())?,
                },
                Construction::Realizer { n, h } => {
                    let f = circuit_realizer(&NumberSeq::new(h)?, n)?;
                    out(f.to_text().trim_end())?;
                    out(&format!("# product {}", f.product()))?;
                }
                Construction::BikeProduct { x } => {
                    let r = bike_product_sequence(&NumberSeq::new(x)?)?;
                    out(r.to_text().trim_end())?;
                    out(&format!("# product {}", r.product()))?;
                }
            }
            Ok(0)
        }
        Command::Verify {
            suite,
            max_n,
            format,
        } => {
            let max_n = max_n.or(resolved.file.max_n).unwrap_or(match suite {
                verify::Suite::Bikes => 3,
                verify::Suite::Wheels => 5,
                _ => 5,
            });
            let report = verify::run(suite, max_n, &budget);
            match format {
                Format::Json => out(&serde_json::to_string_pretty(&report).expect("plain data"))?,
                Format::Text => {
                    for i in &report.items {
                        let status = serde_json::to_value(i.status).expect("plain data");
                        out(&format!(
                            "{:<8} {:<18} {}",
                            status.as_str().unwrap_or(""),
                            i.name,
                            i.detail
                        ))?;
                    }
                    out(&format!(
                        "passed {} failed {} refused {}",
                        report.passed, report.failed, report.refused
                    ))?;
                }
            }
            Ok(if report.failed > 0 {
                EXIT_DISAGREE
            } else if report.refused > 0 {
                EXIT_REFUSED
            } else {
                0
            })
        }
        Command::Survey {
            max_n,
            max_edges,
            simple,
            force,
            format,
            out: path,
        } => {
            let max_n = max_n.or(resolved.file.max_n).unwrap_or(5);
            let max_edges = max_edges.or(resolved.file.max_edges).unwrap_or(8);
            if max_n > 6 && !force {
                return Err(CliError::Usage(format!(
                    "--max-n {max_n} is above the guard of 6; pass --force to run anyway"
                )));
            }
            let rows = survey::survey(max_n, max_edges, simple, &budget)?;
            if let Some(bad) = rows.iter().find(|r| r.disagrees()) {
                eprintln!(
                    "disagreement on {}: pc {} vs {}, ci {} vs {}",
                    bad.id, bad.pc_structural, bad.pc_oracle, bad.ci_structural, bad.ci_oracle
                );
                return Ok(EXIT_DISAGREE);
            }
            let mut sink: Box<dyn Write> = match &path {
                Some(p) => Box::new(std::io::BufWriter::new(std::fs::File::create(p).map_err(
                    |e| CliError::Usage(format!("cannot create {}: {e}", p.display())),
                )?)),
                None => Box::new(std::io::stdout().lock()),
            };
            match format {
                SurveyFormat::Csv => survey::write_csv(&rows, &mut sink)?,
                SurveyFormat::Jsonl => survey::write_jsonl(&rows, &mut sink)?,
            }
            sink.flush().map_err(CliError::io)?;
            let refused = rows.iter().filter(|r| r.pc_oracle == "refused").count();
            if refused > 0 {
                eprintln!("{refused} rows refused by the oracle budget");
            }
            Ok(0)
        }
        Command::CountPhi {
            permutation,
            degree,
            max_support,
        } => {
            let f = Permutation::parse_cycles(&permutation, degree)?;
            let limit = max_support
                .or(resolved.file.max_support)
                .unwrap_or(DEFAULT_PHI_SUPPORT);
            match count_minimal_factorizations(&f, limit) {
                Ok(c) => {
                    out(&format!(
                        "{f}: {c} factorizations of length {}",
                        minimal_factorization_length(&f)
                    ))?;
                    Ok(0)
                }
                Err(r) => {
                    eprintln!("refused: {r}");
                    Ok(EXIT_REFUSED)
                }
            }
        }
        Command::Coset { source } => {
            let s =
                resolve(&source.input, source.degree, source.graph)?.transpositional("coset")?;
            match coset_check(&s, &budget) {
                Ok(Some(order)) => {
                    out(&format!("coset of a subgroup of order {order}"))?;
                    Ok(0)
                }
                Ok(None) => {
                    out("not a coset of any subgroup")?;
                    Ok(0)
                }
                Err(r) => {
                    eprintln!("refused: {r}");
                    Ok(EXIT_REFUSED)
                }
            }
        }
    }
}

fn report_text(r: &ClassificationReport) -> String {
    let question = match r.question {
        Question::PermComplete => "perm-complete",
        Question::ConjugacyInvariant => "conjugacy invariant",
    };
    let mut lines = vec![
        format!("input       {}", r.input),
        format!("question    {question}"),
    ];
    if let Some(s) = &r.structural {
        let witness = serde_json::to_string(&s.witness).expect("plain data");
        lines.push(format!("structural  {} ({}) {witness}", s.answer, s.rule));
    }
    if let Some(o) = &r.oracle {
        let mut line = format!("oracle      {}", o.verdict);
        if let (Some(size), Some(parity)) = (o.prod_size, o.parity) {
            line.push_str(&format!(", |Prod| = {size}, {parity}"));
        }
        lines.push(line);
        if !o.spectrum.is_empty() {
            let spectrum: Vec<String> = o
                .spectrum
                .iter()
                .map(|(t, c)| format!("{t}: {c}"))
                .collect();
            lines.push(format!("spectrum    {}", spectrum.join(", ")));
        }
    }
    let agreement = serde_json::to_value(r.agreement).expect("plain data");
    lines.push(format!("agreement   {}", agreement.as_str().unwrap_or("")));
    lines.join("\n")
}
