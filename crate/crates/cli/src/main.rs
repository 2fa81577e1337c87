use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use matroid_tor::closed_forms;
use matroid_tor::corpus::{self, CorpusEntry};
use matroid_tor::fan::BergmanFan;
use matroid_tor::hochster;
use matroid_tor::io;
use matroid_tor::koszul;
use matroid_tor::squarefree;
use matroid_tor::verify::{self, Suite, VerifyOptions};
use matroid_tor::{BigradedSeries, FlatLattice, Matroid, OrderFilter, RingChoice, Strategy};
use serde_json::json;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

/// Bigraded Tor of Stanley-Reisner rings of matroid Bergman fans.
#[derive(Parser, Debug)]
#[command(name = "matroid-tor", version)]
struct Cli {
    /// Worker threads (default: available parallelism). MATROID_TOR_JOBS takes precedence.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Ring {
    Sm,
    Smo,
}

impl From<Ring> for RingChoice {
    fn from(r: Ring) -> Self {
        match r {
            Ring::Sm => RingChoice::OverSM,
            Ring::Smo => RingChoice::OverSMcirc,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Oracle {
    /// Ranks of the Koszul complex.
    Koszul,
    /// Closed-form series where one applies.
    Closed,
    /// The finite square-free subcomplex (empty filter over S°).
    Squarefree,
    /// Hochster's formula (empty filter over S).
    Hochster,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Auto,
    Direct,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Auto => Strategy::Auto,
            StrategyArg::Direct => Strategy::Direct,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum FilterChoice {
    Empty,
    Full,
    Prefix(usize),
}

fn parse_filter(s: &str) -> std::result::Result<FilterChoice, String> {
    match s {
        "empty" => Ok(FilterChoice::Empty),
        "full" => Ok(FilterChoice::Full),
        _ => s
            .strip_prefix("prefix:")
            .and_then(|k| k.parse().ok())
            .map(FilterChoice::Prefix)
            .ok_or_else(|| format!("expected empty, full or prefix:K, got {s:?}")),
    }
}

impl FilterChoice {
    fn build(&self, lattice: &FlatLattice) -> Result<OrderFilter> {
        Ok(match self {
            FilterChoice::Empty => OrderFilter::empty(),
            FilterChoice::Full => OrderFilter::full(lattice),
            FilterChoice::Prefix(k) => {
                let seq = lattice.flip_sequence();
                if *k > seq.len() {
                    bail!("prefix:{k} exceeds the {} flats of the flip sequence", seq.len());
                }
                seq.prefix(*k)
            }
        })
    }

    fn label(&self) -> String {
        match self {
            FilterChoice::Empty => "empty".into(),
            FilterChoice::Full => "full".into(),
            FilterChoice::Prefix(k) => format!("prefix:{k}"),
        }
    }
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
struct Source {
    /// Uniform matroid U_{r,n}.
    #[arg(long, num_args = 2, value_names = ["R", "N"])]
    uniform: Option<Vec<usize>>,

    /// JSON file {"n": .., "bases": [[..], ..]} with 1-indexed elements.
    #[arg(long, value_name = "FILE")]
    bases: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct Input {
    #[command(flatten)]
    source: Source,

    /// Also write the parsed matroid as JSON to FILE.
    #[arg(long, value_name = "FILE")]
    write_matroid: Option<PathBuf>,
}

impl Input {
    fn load(&self) -> Result<CorpusEntry> {
        let entry = match (&self.source.uniform, &self.source.bases) {
            (Some(rn), None) => CorpusEntry {
                name: format!("U{},{}", rn[0], rn[1]),
                matroid: Matroid::uniform(rn[0], rn[1])?,
            },
            (None, Some(path)) => CorpusEntry {
                name: path.display().to_string(),
                matroid: io::read_matroid(path)?,
            },
            _ => bail!("give exactly one of --uniform R N or --bases FILE"),
        };
        if let Some(out) = &self.write_matroid {
            io::write_matroid(out, &entry.matroid)?;
        }
        Ok(entry)
    }
}

#[derive(Args, Debug, Clone)]
struct Window {
    /// Largest Tor degree (default: number of ring variables).
    #[arg(long)]
    t_max: Option<usize>,
    /// Largest internal degree (default: r + 1).
    #[arg(long)]
    s_max: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tutte polynomial from internal and external activities.
    Tutte {
        #[command(flatten)]
        input: Input,
    },
    /// No-broken-circuit bases.
    Nbc {
        #[command(flatten)]
        input: Input,
    },
    /// Flats by rank and the flip sequence.
    Flats {
        #[command(flatten)]
        input: Input,
    },
    /// Rays, face counts and graded dimensions of a Bergman fan.
    Fan {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = parse_filter, default_value = "full")]
        filter: FilterChoice,
        /// Largest degree for graded dimensions.
        #[arg(long, default_value_t = 3)]
        dims: usize,
    },
    /// Bigraded Tor series of a Bergman fan ring.
    Hilb {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Ring::Smo)]
        ring: Ring,
        #[arg(long, value_parser = parse_filter, default_value = "full")]
        filter: FilterChoice,
        #[command(flatten)]
        window: Window,
        #[arg(long, value_enum, default_value_t = Oracle::Koszul)]
        oracle: Oracle,
        #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
        strategy: StrategyArg,
    },
    /// Tor series of the full fan of U_{r,r+k} from the rank recursion.
    UniformSeries { r: usize, k: usize },
    /// Betti numbers of the non-spanning complex by Hochster's formula.
    Hochster {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        window: Window,
    },
    /// Run identity suites on the built-in corpus or on one matroid.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Corpus matroids with at most this many elements.
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Check a single matroid instead of the corpus.
        #[arg(long, num_args = 2, value_names = ["R", "N"], conflicts_with = "bases")]
        uniform: Option<Vec<usize>>,
        #[arg(long, value_name = "FILE")]
        bases: Option<PathBuf>,
        /// Random relabelings per matroid in the structure suite.
        #[arg(long, default_value_t = 10)]
        permutations: usize,
        #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
        strategy: StrategyArg,
    },
}

fn series_json(p: &BigradedSeries) -> serde_json::Value {
    json!({ "series": p.to_string(), "terms": p.to_json().terms })
}

fn print(format: Format, text: impl FnOnce() -> String, value: impl FnOnce() -> serde_json::Value) {
    let out = match format {
        Format::Text => text(),
        Format::Json => serde_json::to_string_pretty(&value()).expect("json"),
    };
    // a closed pipe (e.g. `| head`) is not an error
    let _ = writeln!(std::io::stdout().lock(), "{out}");
}

fn configure_jobs(flag: Option<usize>) -> Result<()> {
    let env = std::env::var("MATROID_TOR_JOBS").ok();
    let jobs = match env {
        Some(v) => Some(
            v.parse::<usize>()
                .with_context(|| format!("MATROID_TOR_JOBS={v:?} is not a number"))?,
        ),
        None => flag,
    };
    if let Some(j) = jobs.filter(|&j| j > 0) {
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global()?;
    }
    Ok(())
}

fn hilb(
    m: &Matroid,
    ring: RingChoice,
    filter: &FilterChoice,
    window: &Window,
    oracle: Oracle,
    strategy: Strategy,
) -> Result<(BigradedSeries, usize, usize)> {
    let lattice = FlatLattice::new(m)?;
    let fan = BergmanFan::new(m, &filter.build(&lattice)?)?;
    let (t_def, s_def) = koszul::default_window(&fan, ring);
    let (t_max, s_max) = (window.t_max.unwrap_or(t_def), window.s_max.unwrap_or(s_def));
    let r = m.rank_total();
    if s_max + 1 < r {
        eprintln!("warning: s_max = {s_max} is below r - 1 = {}; the table may be cut off", r - 1);
    }
    let empty = *filter == FilterChoice::Empty || lattice.proper_flats().is_empty();
    let full = fan.is_full_filter();
    let series = match oracle {
        Oracle::Koszul => koszul::tor_table_strategy(&fan, ring, t_max, s_max, strategy)?,
        Oracle::Closed => match ring {
            RingChoice::OverSM if empty => closed_forms::hilb_sm_empty(m)?,
            RingChoice::OverSMcirc if empty => closed_forms::hilb_smo_empty(m)?,
            RingChoice::OverSMcirc if full && r == 2 && is_simple(m) => closed_forms::hilb_rank2(m)?,
            RingChoice::OverSMcirc if full && m.bases().len() as u64 == binomial(m.n(), r) => {
                closed_forms::hilb_uniform(r, m.n() - r)?
            }
            _ => bail!("no closed form for this ring and filter"),
        },
        Oracle::Squarefree if ring == RingChoice::OverSMcirc && empty => squarefree::squarefree_tor_table(m)?,
        Oracle::Hochster if ring == RingChoice::OverSM && empty => hochster::hochster_table(m, t_max, s_max)?,
        Oracle::Squarefree => bail!("the square-free oracle needs --ring smo --filter empty"),
        Oracle::Hochster => bail!("the Hochster oracle needs --ring sm --filter empty"),
    };
    let clipped = series.truncate(t_max, s_max);
    if clipped != series {
        eprintln!("warning: the series has terms outside t <= {t_max}, s <= {s_max}; they are omitted");
    }
    Ok((clipped, t_max, s_max))
}

/// No two elements are parallel.
fn is_simple(m: &Matroid) -> bool {
    let lattice = FlatLattice::new(m).expect("loopless");
    lattice.flats_of_rank(1).iter().all(|f| f.len() == 1)
}

fn binomial(n: usize, k: usize) -> u64 {
    matroid_tor::complex::binomial(n, k)
}

fn run(cli: Cli) -> Result<ExitCode> {
    configure_jobs(cli.jobs)?;
    let format = cli.format;
    match cli.command {
        Command::Tutte { input } => {
            let m = input.load()?.matroid;
            let t = m.tutte();
            print(format, || t.to_string(), || json!({ "tutte": t.to_string(), "terms": t.to_json()["terms"] }));
        }
        Command::Nbc { input } => {
            let m = input.load()?.matroid;
            let nbc = m.nbc_bases();
            print(
                format,
                || {
                    let mut s: Vec<String> = nbc.iter().map(|b| b.to_string()).collect();
                    s.push(format!("count: {}", nbc.len()));
                    s.join("\n")
                },
                || json!({ "count": nbc.len(), "bases": nbc }),
            );
        }
        Command::Flats { input } => {
            let m = input.load()?.matroid;
            let lattice = FlatLattice::new(&m)?;
            let seq = lattice.flip_sequence();
            print(
                format,
                || {
                    let mut lines: Vec<String> = lattice
                        .flats_by_rank()
                        .iter()
                        .enumerate()
                        .map(|(k, l)| {
                            let v: Vec<String> = l.iter().map(|f| f.to_string()).collect();
                            format!("rank {k}: {}", v.join(" "))
                        })
                        .collect();
                    let c: Vec<String> = seq.centers.iter().map(|f| f.to_string()).collect();
                    lines.push(format!("flip sequence: {}", c.join(" ")));
                    lines.join("\n")
                },
                || {
                    json!({
                        "rank": lattice.rank(),
                        "flats_by_rank": lattice.flats_by_rank(),
                        "flip_sequence": seq.centers,
                    })
                },
            );
        }
        Command::Fan { input, filter, dims } => {
            let m = input.load()?.matroid;
            let lattice = FlatLattice::new(&m)?;
            let fan = BergmanFan::new(&m, &filter.build(&lattice)?)?;
            let rays: Vec<String> = fan.rays().iter().map(|r| r.to_string()).collect();
            let graded: Vec<u64> = (0..=dims).map(|s| fan.graded_dimension(s)).collect();
            let c = fan.complex();
            print(
                format,
                || {
                    format!(
                        "rays: {}\nf-vector: {:?}\nh-vector: {:?}\nfacets: {}\ngraded dimensions: {graded:?}",
                        rays.join(" "),
                        c.f_vector(),
                        c.h_vector(),
                        c.facets().len()
                    )
                },
                || {
                    json!({
                        "filter": filter.label(),
                        "rays": rays,
                        "f_vector": c.f_vector(),
                        "h_vector": c.h_vector(),
                        "facets": c.facets().len(),
                        "graded_dimensions": graded,
                    })
                },
            );
        }
        Command::Hilb {
            input,
            ring,
            filter,
            window,
            oracle,
            strategy,
        } => {
            let m = input.load()?.matroid;
            let (series, t_max, s_max) = hilb(&m, ring.into(), &filter, &window, oracle, strategy.into())?;
            print(
                format,
                || series.to_string(),
                || {
                    let mut v = series_json(&series);
                    v["ring"] = json!(format!("{ring:?}").to_lowercase());
                    v["filter"] = json!(filter.label());
                    v["window"] = json!({ "t_max": t_max, "s_max": s_max });
                    v
                },
            );
        }
        Command::UniformSeries { r, k } => {
            let p = closed_forms::hilb_uniform(r, k)?;
            print(format, || p.to_string(), || series_json(&p));
        }
        Command::Hochster { input, window } => {
            let m = input.load()?.matroid;
            let t_max = window.t_max.unwrap_or(m.n());
            let s_max = window.s_max.unwrap_or(m.rank_total() + 1);
            let p = hochster::hochster_table(&m, t_max, s_max)?;
            let ns = hochster::ns_cohomology_check(&m)?;
            print(
                format,
                || p.to_string(),
                || {
                    let mut v = series_json(&p);
                    v["ns_cohomology_concentrated"] = json!(ns);
                    v
                },
            );
        }
        Command::Verify {
            suite,
            max_n,
            uniform,
            bases,
            permutations,
            strategy,
        } => {
            let suite: Suite = suite.parse()?;
            let subjects = match (uniform, bases) {
                (Some(rn), _) => vec![CorpusEntry {
                    name: format!("U{},{}", rn[0], rn[1]),
                    matroid: Matroid::uniform(rn[0], rn[1])?,
                }],
                (None, Some(path)) => vec![CorpusEntry {
                    name: path.display().to_string(),
                    matroid: io::read_matroid(&path)?,
                }],
                (None, None) => corpus::corpus_up_to(max_n),
            };
            let opts = VerifyOptions {
                strategy: strategy.into(),
                permutations,
                uniform_max_n: max_n.max(subjects.iter().map(|e| e.matroid.n()).max().unwrap_or(0)),
                ..VerifyOptions::default()
            };
            let report = verify::run(suite, &subjects, &opts);
            let failed = report.failures().count();
            print(
                format,
                || format!("{report}{} checks, {failed} failed", report.checks.len()),
                || json!({ "suite": suite.name(), "passed": report.passed(), "checks": report.checks }),
            );
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", anyhow!(e));
            ExitCode::from(2)
        }
    }
}
