use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use misere_core::classify::classify;
use misere_core::fixtures::FIXTURE_NAMES;
use misere_core::game::{enumerate_subgame, EnumerateOptions, GameDef, Position, DEFAULT_NODE_CAP};
use misere_core::grundy::{sg_labels, sg_table_csv, sg_table_json, Convention};
use misere_core::suites::{run_suite, SuiteConfig};
use misere_core::sums::sum_graph;
use misere_core::zoo::oracles::{wyt_ab_sequence, wythoff_p};
use misere_core::zoo::{FamilySpec, GameSource, GameSpec};
use misere_core::{ClassReport, Error};

const CACHE_FORMAT: &str = "grundy-sg-table v1";

#[derive(Parser)]
#[command(
    name = "grundy",
    version,
    about = "Normal and misère Sprague-Grundy analysis of impartial games"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate a game, label it and classify it.
    Analyze {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Emit an SG table or a P-position sequence.
    Table {
        #[command(flatten)]
        game: GameArgs,
        /// Emit the P-position sequence of wythoff, wyt_a or wyt_ab.
        #[arg(long, conflicts_with = "sg")]
        p_sequence: bool,
        /// Emit the (g, g_minus) table of every enumerated position.
        #[arg(long)]
        sg: bool,
        /// Initial position for --sg; alias of a single --roots.
        #[arg(long)]
        piles: Option<String>,
        #[arg(long, value_enum, default_value_t = ConventionArg::Normal)]
        convention: ConventionArg,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        #[arg(long)]
        no_cache: bool,
    },
    /// Run a battery of theorem checks.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 12)]
        max_nodes: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Classify the disjunctive sum of games given as spec files.
    Sum {
        #[arg(long = "game", required = true, num_args = 1)]
        games: Vec<PathBuf>,
        /// Also write the SG table of the sum as CSV to this file.
        #[arg(long)]
        sg_table: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
        node_cap: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// List the bundled figure fixtures.
    Fixtures,
}

#[derive(Args, Clone)]
struct GameArgs {
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    fixture: Option<String>,
    /// Game spec JSON file.
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    a: Option<u64>,
    #[arg(long)]
    b: Option<u64>,
    /// Subtraction set, comma separated.
    #[arg(long)]
    set: Option<String>,
    #[arg(long)]
    shape: Option<String>,
    /// Root position, comma or dash separated; repeatable.
    #[arg(long = "roots")]
    roots: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
    node_cap: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    Normal,
    Misere,
    Both,
}

impl ConventionArg {
    fn conventions(self) -> Vec<Convention> {
        match self {
            ConventionArg::Normal => vec![Convention::Normal],
            ConventionArg::Misere => vec![Convention::Misere],
            ConventionArg::Both => vec![Convention::Normal, Convention::Misere],
        }
    }
}

enum Failure {
    Property,
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type CliResult<T = ()> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze { game, format } => analyze(&game, format),
        Command::Table {
            game,
            p_sequence,
            sg,
            piles,
            convention,
            format,
            cache_dir,
            no_cache,
        } => table(
            &game, p_sequence, sg, piles, convention, format, cache_dir, no_cache,
        ),
        Command::Verify {
            suite,
            seed,
            samples,
            max_nodes,
            format,
        } => verify(
            &suite,
            SuiteConfig {
                seed,
                samples,
                max_nodes,
            },
            format,
        ),
        Command::Sum {
            games,
            sg_table,
            node_cap,
            format,
        } => sum(&games, sg_table.as_deref(), node_cap, format),
        Command::Fixtures => {
            for name in FIXTURE_NAMES {
                println!("{name}");
            }
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Property) => ExitCode::from(1),
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn parse_position(s: &str) -> CliResult<Position> {
    Ok(s.parse::<Position>()?)
}

impl GameArgs {
    fn spec(&self) -> CliResult<GameSpec> {
        let sources = [
            self.family.is_some(),
            self.fixture.is_some(),
            self.spec.is_some(),
        ];
        if sources.iter().filter(|&&s| s).count() != 1 {
            return Err(Failure::Runtime(
                "give exactly one of --family, --fixture or --spec".into(),
            ));
        }
        let mut spec = if let Some(path) = &self.spec {
            GameSpec::parse(&fs::read_to_string(path)?)?
        } else if let Some(name) = &self.fixture {
            GameSpec {
                source: GameSource::Fixture(name.clone()),
                roots: Vec::new(),
            }
        } else {
            let family = self.family.as_deref().unwrap();
            let mut params = serde_json::Map::new();
            for (key, v) in [("n", self.n), ("k", self.k), ("a", self.a), ("b", self.b)] {
                if let Some(v) = v {
                    params.insert(key.into(), json!(v));
                }
            }
            if let Some(set) = &self.set {
                let values = set
                    .split(',')
                    .map(|v| {
                        v.trim()
                            .parse::<u32>()
                            .map_err(|_| Failure::Runtime(format!("bad --set entry `{v}`")))
                    })
                    .collect::<CliResult<Vec<u32>>>()?;
                params.insert("set".into(), json!(values));
            }
            if let Some(shape) = &self.shape {
                params.insert("shape".into(), json!(shape));
            }
            if family == "nim" && !params.contains_key("n") {
                if let Some(first) = self.roots.first() {
                    params.insert("n".into(), json!(parse_position(first)?.len()));
                }
            }
            GameSpec {
                source: GameSource::Family(FamilySpec::from_json(family, &Value::Object(params))?),
                roots: Vec::new(),
            }
        };
        if !self.roots.is_empty() {
            spec.roots = self
                .roots
                .iter()
                .map(|r| parse_position(r))
                .collect::<CliResult<_>>()?;
        }
        Ok(spec)
    }

    fn options(&self, exact: bool) -> EnumerateOptions {
        let base = if exact {
            EnumerateOptions::exact()
        } else {
            EnumerateOptions::default()
        };
        base.with_cap(self.node_cap)
    }
}

fn print_report(report: &ClassReport, format: Format) -> CliResult {
    match format {
        Format::Text => {
            println!("bound: {}", report.bound);
            for (pred, holds) in &report.verdicts {
                match report.witness(*pred) {
                    Some(w) if !holds => println!(
                        "{pred}: false (witness {} {}: {})",
                        w.name, w.label, w.reason
                    ),
                    _ => println!("{pred}: {holds}"),
                }
            }
        }
        _ => println!(
            "{}",
            serde_json::to_string_pretty(report).expect("report serializes")
        ),
    }
    Ok(())
}

fn analyze(args: &GameArgs, format: Format) -> CliResult {
    let spec = args.spec()?;
    let (game, roots) = spec.build()?;
    let graph = enumerate_subgame(&game, &roots, &args.options(false))?;
    print_report(&classify(&sg_labels(&graph)), format)
}

#[allow(clippy::too_many_arguments)]
fn table(
    args: &GameArgs,
    p_sequence: bool,
    sg: bool,
    piles: Option<String>,
    convention: ConventionArg,
    format: Format,
    cache_dir: Option<PathBuf>,
    no_cache: bool,
) -> CliResult {
    if !p_sequence && !sg {
        return Err(Failure::Runtime("table needs --sg or --p-sequence".into()));
    }
    let mut args = args.clone();
    if let Some(p) = piles {
        args.roots.push(p);
    }
    let spec = args.spec()?;
    let roots_text: Vec<String> = spec.roots.iter().map(Position::to_string).collect();
    let kind = if p_sequence {
        format!(
            "p-sequence n={} convention={}",
            args.n.unwrap_or(0),
            convention_name(convention)
        )
    } else {
        "sg".to_string()
    };
    let header = format!(
        "# {CACHE_FORMAT} family={} params={} roots=[{}] table={kind} format={}",
        spec.family_name(),
        spec.params_json(),
        roots_text.join(" "),
        format_name(format)
    );

    let cache = (!no_cache).then(|| cache_path(cache_dir.as_deref(), &header));
    if let Some(path) = &cache {
        if let Some(body) = read_cache(path, &header, format) {
            print!("{body}");
            return Ok(());
        }
    }
    let body = if p_sequence {
        p_sequence_table(&spec, args.n, convention, format)?
    } else {
        sg_table(&spec, &args, format)?
    };
    if let Some(path) = &cache {
        if let Err(e) = write_cache(path, &header, &body) {
            eprintln!("warning: could not write cache {}: {e}", path.display());
        }
    }
    print!("{body}");
    Ok(())
}

fn convention_name(c: ConventionArg) -> &'static str {
    match c {
        ConventionArg::Normal => "normal",
        ConventionArg::Misere => "misere",
        ConventionArg::Both => "both",
    }
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Text => "text",
    }
}

fn sg_table(spec: &GameSpec, args: &GameArgs, format: Format) -> CliResult<String> {
    let (game, roots) = spec.build()?;
    let lg = sg_labels(&enumerate_subgame(&game, &roots, &args.options(true))?);
    Ok(match format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&sg_table_json(&lg)).expect("table serializes")
        ),
        _ => sg_table_csv(&lg),
    })
}

fn p_sequence_table(
    spec: &GameSpec,
    n: Option<u64>,
    convention: ConventionArg,
    format: Format,
) -> CliResult<String> {
    let n = n.ok_or_else(|| Failure::Runtime("--p-sequence needs --n".into()))? as usize;
    let family = match &spec.source {
        GameSource::Family(f) => f.clone(),
        GameSource::Fixture(_) => {
            return Err(Failure::Runtime(
                "fixtures have no P-position sequence".into(),
            ))
        }
    };
    let mut rows = Vec::new();
    for c in convention.conventions() {
        let seq: Vec<(u64, u64)> = match family {
            FamilySpec::Wythoff => (0..n as u64).map(|i| wythoff_p(i, c)).collect(),
            FamilySpec::WytA { a } => wyt_ab_sequence(a as u64, 1, c, n)?[..n].to_vec(),
            FamilySpec::WytAb { a, b } => wyt_ab_sequence(a as u64, b as u64, c, n)?[..n].to_vec(),
            _ => {
                return Err(Failure::Runtime(format!(
                    "{} has no P-position sequence; use wythoff, wyt_a or wyt_ab",
                    family.family()
                )))
            }
        };
        rows.extend(seq.into_iter().enumerate().map(|(i, (x, y))| (i, x, y, c)));
    }
    Ok(match format {
        Format::Json => {
            let v: Vec<Value> = rows
                .iter()
                .map(|(i, x, y, c)| json!({"n": i, "x": x, "y": y, "convention": c.to_string()}))
                .collect();
            format!(
                "{}\n",
                serde_json::to_string_pretty(&v).expect("rows serialize")
            )
        }
        _ => {
            let mut out = String::from("n,x,y,convention\n");
            for (i, x, y, c) in rows {
                out.push_str(&format!("{i},{x},{y},{c}\n"));
            }
            out
        }
    })
}

fn cache_path(flag: Option<&Path>, header: &str) -> PathBuf {
    let dir = flag
        .map(Path::to_path_buf)
        .or_else(|| std::env::var_os("GRUNDY_CACHE_DIR").map(PathBuf::from))
        .unwrap_or_else(|| std::env::temp_dir().join("grundy-cache"));
    let digest = Sha256::digest(header.as_bytes());
    let name: String = digest.iter().take(16).map(|b| format!("{b:02x}")).collect();
    dir.join(format!("{name}.table"))
}

/// Cached body if the entry exists and is intact; a damaged entry is
/// reported and ignored so the caller rebuilds it.
fn read_cache(path: &Path, header: &str, format: Format) -> Option<String> {
    let text = fs::read_to_string(path).ok()?;
    let intact = text.split_once('\n').and_then(|(first, body)| {
        (first == header && body_is_well_formed(body, format)).then(|| body.to_string())
    });
    if intact.is_none() {
        eprintln!(
            "warning: cache entry {} is corrupt; rebuilding",
            path.display()
        );
    }
    intact
}

fn body_is_well_formed(body: &str, format: Format) -> bool {
    if format == Format::Json {
        return serde_json::from_str::<Value>(body).is_ok();
    }
    let mut lines = body.lines();
    let Some(columns) = lines.next().map(|h| h.split(',').count()) else {
        return false;
    };
    body.ends_with('\n') && lines.all(|l| l.split(',').count() == columns && !l.is_empty())
}

fn write_cache(path: &Path, header: &str, body: &str) -> std::io::Result<()> {
    let dir = path.parent().expect("cache files live in a directory");
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(
        ".{}.{}.tmp",
        path.file_name().unwrap().to_string_lossy(),
        std::process::id()
    ));
    {
        let mut f = fs::File::create(&tmp)?;
        writeln!(f, "{header}")?;
        f.write_all(body.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}

fn verify(suite: &str, cfg: SuiteConfig, format: Format) -> CliResult {
    let reports = run_suite(suite, &cfg)?;
    let passed = reports.iter().all(|r| r.passed());
    match format {
        Format::Text => {
            println!(
                "seed {} samples {} max-nodes {}",
                cfg.seed, cfg.samples, cfg.max_nodes
            );
            for r in &reports {
                for c in &r.checks {
                    println!(
                        "[{}] {} / {}: {}",
                        if c.passed { "pass" } else { "FAIL" },
                        r.suite,
                        c.name,
                        c.detail
                    );
                }
            }
            println!(
                "{}",
                if passed {
                    "all checks passed"
                } else {
                    "some checks failed"
                }
            );
        }
        _ => {
            let suites: Vec<Value> = reports
                .iter()
                .map(|r| {
                    json!({
                        "suite": r.suite,
                        "passed": r.passed(),
                        "checks": r.checks,
                        "elapsed_ms": r.elapsed_ms as u64,
                    })
                })
                .collect();
            let summary = json!({
                "seed": cfg.seed,
                "samples": cfg.samples,
                "max_nodes": cfg.max_nodes,
                "passed": passed,
                "suites": suites,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&summary).expect("summary serializes")
            );
        }
    }
    if passed {
        Ok(())
    } else {
        Err(Failure::Property)
    }
}

fn sum(paths: &[PathBuf], sg_table: Option<&Path>, node_cap: usize, format: Format) -> CliResult {
    let mut games: Vec<GameDef> = Vec::new();
    let mut root_lists: Vec<Vec<Position>> = Vec::new();
    for path in paths {
        let spec = GameSpec::parse(&fs::read_to_string(path)?)?;
        let (game, roots) = spec.build()?;
        games.push(game);
        root_lists.push(roots);
    }
    let mut roots: Vec<Vec<Position>> = vec![Vec::new()];
    for list in &root_lists {
        roots = roots
            .into_iter()
            .flat_map(|prefix| {
                list.iter().map(move |p| {
                    let mut next = prefix.clone();
                    next.push(p.clone());
                    next
                })
            })
            .collect();
    }
    let graph = sum_graph(
        &games,
        &roots,
        &EnumerateOptions::exact().with_cap(node_cap),
    )?;
    let lg = sg_labels(&graph);
    if let Some(path) = sg_table {
        fs::write(path, sg_table_csv(&lg))?;
    }
    print_report(&classify(&lg), format)
}
