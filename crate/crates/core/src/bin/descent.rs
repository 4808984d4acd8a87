//! Command-line front end: multiplication, template inspection, full
//! tables, the generator-subset bijection and the verification suites.
//!
//! Exit codes: 0 on success (all checks passed), 1 on verification failure,
//! 2 on usage errors. Results go to stdout, diagnostics to stderr.

// Doc comments double as clap help text; composition literals like "[4]"
// are not intra-doc links.
#![allow(rustdoc::broken_intra_doc_links)]

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use descent_core::algebra_b::multiply_basis_b;
use descent_core::algebra_d::multiply_basis;
use descent_core::composition::{parse_composition_text, BasisIndex};
use descent_core::error::Error;
use descent_core::oracle::GroupKind;
use descent_core::render;
use descent_core::verify::{run_suite, Suite, VerifyConfig};

#[derive(Parser)]
#[command(name = "descent", version, about = "Exact products in the descent algebras of Coxeter types B and D")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgebraType {
    D,
    B,
}

impl AlgebraType {
    fn kind(self) -> GroupKind {
        match self {
            AlgebraType::D => GroupKind::D,
            AlgebraType::B => GroupKind::B,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct CommonArgs {
    /// Algebra type.
    #[arg(
        long = "type",
        value_enum,
        default_value = "d",
        ignore_case = true,
        env = "DESCENT_TYPE"
    )]
    algebra: AlgebraType,

    /// Rank, always explicit; verify also accepts a range `A..B`.
    #[arg(long, env = "DESCENT_N")]
    n: String,

    /// Output format.
    #[arg(
        long,
        value_enum,
        default_value = "text",
        ignore_case = true,
        env = "DESCENT_FORMAT"
    )]
    format: Format,

    /// Worker threads for verification (0 = all cores). Reports are merged
    /// in canonical order either way.
    #[arg(long, default_value_t = 0, env = "DESCENT_JOBS")]
    jobs: usize,

    /// Override the desk-scale rank cap of the group oracle.
    #[arg(long, env = "DESCENT_MAX_RANK")]
    max_rank: Option<usize>,

    /// Disable the on-disk group-table cache.
    #[arg(long, default_value_t = false, env = "DESCENT_NO_CACHE")]
    no_cache: bool,
}

impl CommonArgs {
    fn single_rank(&self) -> Result<usize, Error> {
        self.n
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("expected a single rank, got {:?}", self.n)))
    }

    fn rank_range(&self) -> Result<(usize, usize), Error> {
        if let Some((lo, hi)) = self.n.split_once("..") {
            let lo = lo
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad range start {lo:?}")))?;
            let hi = hi
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad range end {hi:?}")))?;
            if lo > hi {
                return Err(Error::Parse(format!("empty range {:?}", self.n)));
            }
            Ok((lo, hi))
        } else {
            let n = self.single_rank()?;
            Ok((n, n))
        }
    }

    fn cap(&self) -> usize {
        self.max_rank
            .unwrap_or_else(|| self.algebra.kind().default_cap())
    }

    fn cache_dir(&self) -> Option<PathBuf> {
        if self.no_cache {
            return None;
        }
        Some(
            std::env::var_os("DESCENT_CACHE_DIR")
                .map(PathBuf::from)
                .unwrap_or_else(|| std::env::temp_dir().join("descent-tables")),
        )
    }

    fn verify_config(&self) -> VerifyConfig {
        VerifyConfig {
            kind: self.algebra.kind(),
            cap: self.cap(),
            cache_dir: self.cache_dir(),
        }
    }

    fn check_rank_cap(&self, n: usize) -> Result<(), Error> {
        let cap = self.cap();
        if n > cap {
            return Err(Error::RankCap { requested: n, cap });
        }
        Ok(())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Multiply two basis elements.
    Multiply {
        #[command(flatten)]
        common: CommonArgs,
        /// Left operand, e.g. "[4]" or "[3,1]'".
        p: String,
        /// Right operand.
        q: String,
    },
    /// List the admissible templates of a product.
    Templates {
        #[command(flatten)]
        common: CommonArgs,
        p: String,
        q: String,
    },
    /// Print the full multiplication table in canonical order.
    Table {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run a verification suite; exits 1 on failure.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// One of: rule, ideal, quotient, associativity, relations, all.
        suite: String,
    },
    /// Show the generator subset of a basis index and its complement.
    Bijection {
        #[command(flatten)]
        common: CommonArgs,
        index: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Multiply { common, p, q } => {
            let n = common.single_rank()?;
            common.check_rank_cap(n)?;
            match common.algebra {
                AlgebraType::D => {
                    let p = BasisIndex::parse(&p, n)?;
                    let q = BasisIndex::parse(&q, n)?;
                    let product = multiply_basis(&p, &q)?;
                    match common.format {
                        Format::Text => println!("{}", product.to_text()),
                        Format::Json => println!("{}", product.to_json_value()),
                    }
                }
                AlgebraType::B => {
                    let p = parse_b_composition(&p)?;
                    let q = parse_b_composition(&q)?;
                    let product = multiply_basis_b(&p, &q, n)?;
                    match common.format {
                        Format::Text => println!("{}", product.to_text()),
                        Format::Json => println!("{}", product.to_json_value()),
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Templates { common, p, q } => {
            let n = common.single_rank()?;
            common.check_rank_cap(n)?;
            match common.algebra {
                AlgebraType::D => {
                    let p = BasisIndex::parse(&p, n)?;
                    let q = BasisIndex::parse(&q, n)?;
                    match common.format {
                        Format::Text => print!("{}", render::templates_text(&p, &q)?),
                        Format::Json => println!("{}", render::templates_json(&p, &q)?),
                    }
                }
                AlgebraType::B => {
                    let p = parse_b_composition(&p)?;
                    let q = parse_b_composition(&q)?;
                    match common.format {
                        Format::Text => print!("{}", render::templates_text_b(&p, &q, n)?),
                        Format::Json => println!("{}", render::templates_json_b(&p, &q, n)?),
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Table { common } => {
            let n = common.single_rank()?;
            common.check_rank_cap(n)?;
            let kind = common.algebra.kind();
            if n < kind.min_rank() {
                return Err(Error::InvalidRank {
                    min: kind.min_rank(),
                    got: n,
                });
            }
            match common.format {
                Format::Text => print!("{}", render::table_text(kind, n)?),
                Format::Json => println!("{}", render::table_json(kind, n)?),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { common, suite } => {
            let suite = Suite::parse(&suite)?;
            let ranks = common.rank_range()?;
            let config = common.verify_config();
            let min = config.kind.min_rank().max(if matches!(suite, Suite::Quotient) {
                3
            } else {
                config.kind.min_rank()
            });
            if ranks.0 < min {
                return Err(Error::InvalidRank {
                    min,
                    got: ranks.0,
                });
            }
            if matches!(suite, Suite::Ideal | Suite::Quotient) && config.kind == GroupKind::B {
                return Err(Error::Parse(
                    "the ideal and quotient suites are defined for type D".into(),
                ));
            }
            let reports = with_thread_pool(common.jobs, || run_suite(suite, ranks, &config))?;
            let pass = reports.iter().all(|r| r.pass);
            match common.format {
                Format::Text => {
                    for r in &reports {
                        println!("{}", r.summary_line());
                        if let Some(findings) = &r.findings {
                            for f in findings {
                                println!(
                                    "  note: {} * {}: rule = {}, oracle = {}, published = {} \
                                     (rule{}oracle, rule{}published)",
                                    f.p,
                                    f.q,
                                    f.rule,
                                    f.oracle,
                                    f.published,
                                    if f.rule_equals_oracle { "==" } else { "!=" },
                                    if f.rule_equals_published { "==" } else { "!=" },
                                );
                            }
                        }
                        for c in &r.counterexamples {
                            println!("  counterexample: {} * {}: {}", c.p, c.q, c.detail);
                        }
                    }
                }
                Format::Json => {
                    println!("{}", serde_json::to_string(&reports).expect("serializable"));
                }
            }
            Ok(if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Bijection { common, index } => {
            let n = common.single_rank()?;
            if common.algebra == AlgebraType::B {
                return Err(Error::Parse(
                    "the bijection command displays the type-D correspondence".into(),
                ));
            }
            let b = BasisIndex::parse(&index, n)?;
            match common.format {
                Format::Text => println!("{}", render::bijection_text(&b)),
                Format::Json => println!("{}", render::bijection_json(&b)),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_b_composition(text: &str) -> Result<descent_core::Composition, Error> {
    let (q, primed) = parse_composition_text(text)?;
    if primed {
        return Err(Error::Parse(
            "type-B basis elements are never primed".into(),
        ));
    }
    Ok(q)
}

fn with_thread_pool<T>(
    jobs: usize,
    body: impl FnOnce() -> Result<T, Error> + Send,
) -> Result<T, Error>
where
    T: Send,
{
    if jobs == 0 {
        return body();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    pool.install(body)
}
