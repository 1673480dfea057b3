//! `qblocks` command-line frontend.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use qblocks_core::abengine::{nested_character_mform_with, nested_character_with_table, EngineLimits};
use qblocks_core::blocks::BlockLabel;
use qblocks_core::checks::{run_suite, Report, Suite};
use qblocks_core::qser::parse_rat;
use qblocks_core::repdata::PartitionTable;
use qblocks_core::rootsys::{weyl_group_bounded, weyl_table_from_text, weyl_table_to_text, RootSystem, Weight, WeylElement};
use qblocks_core::sl2closed::example3_series;
use qblocks_core::zhatref::{match_linear_combination, seifert_to_plumbing, zhat_series, PlumbingGraph, SeifertData};
use qblocks_core::{Error, QSeries, Rat};

pub const CACHE_ENV: &str = "QBLOCKS_CACHE_DIR";

#[derive(Parser, Debug)]
#[command(name = "qblocks", version, about = "Homological block q-series and their reference oracles")]
pub struct Cli {
    /// Flat key=value file; keys are long flag names, command-line flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads for internal map-reduce.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Form {
    Conv,
    Mult,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Nested character of a label.
    Blocks(BlocksArgs),
    /// Closed-form sl2 series.
    Example3(Example3Args),
    /// Reference block of a plumbed homology sphere.
    Zhat(ZhatArgs),
    /// Express a target series as a combination of candidates.
    Match(MatchArgs),
    /// Run property suites.
    Check(CheckArgs),
    /// Manage cached Weyl-group and partition tables.
    Cache(CacheArgs),
}

#[derive(Args, Debug)]
struct BlocksArgs {
    /// Root system, e.g. A1, A2, D4.
    #[arg(long)]
    g: String,
    /// Comma-separated pairwise coprime levels.
    #[arg(long)]
    p: String,
    /// One row per level, rows separated by ';', coordinates by ','.
    #[arg(long)]
    r: String,
    /// sl2 shorthand for lhat = (s - 1) varpi.
    #[arg(long, conflicts_with = "lhat")]
    s: Option<i64>,
    /// `s=<n>` or comma-separated fundamental-weight coordinates.
    #[arg(long)]
    lhat: Option<String>,
    #[arg(long)]
    trunc: String,
    #[arg(long, value_enum, default_value_t = Form::Conv)]
    form: Form,
    #[arg(long)]
    expand_eta: bool,
}

#[derive(Args, Debug)]
struct Example3Args {
    #[arg(long)]
    p: String,
    #[arg(long)]
    r: String,
    #[arg(long)]
    s: i64,
    #[arg(long)]
    trunc: String,
    #[arg(long)]
    expand_eta: bool,
}

#[derive(Args, Debug)]
struct ZhatArgs {
    /// Fiber orders, e.g. 2,3,5.
    #[arg(long, conflicts_with = "graph", required_unless_present = "graph")]
    seifert: Option<String>,
    /// Plumbing graph JSON file.
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long)]
    trunc: String,
    /// Print the plumbing graph instead of the series.
    #[arg(long)]
    emit_graph: bool,
}

#[derive(Args, Debug)]
struct MatchArgs {
    #[arg(long)]
    target: PathBuf,
    #[arg(long, num_args = 1.., required = true)]
    candidates: Vec<PathBuf>,
    /// Fit window above the target's leading exponent.
    #[arg(long)]
    fit: String,
    /// Verify window above the target's leading exponent.
    #[arg(long)]
    verify: String,
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// sl2, n1, forms, zhat, mult, ab, conv, cond1, smoke or all.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Exponent window above the leading term, where the suite has one.
    #[arg(long)]
    trunc: Option<String>,
}

#[derive(Args, Debug)]
struct CacheArgs {
    #[command(subcommand)]
    action: CacheAction,
}

#[derive(Subcommand, Debug)]
enum CacheAction {
    /// Precompute the Weyl group and a partition table.
    Warm {
        #[arg(long)]
        g: String,
        /// Box bound of the partition table.
        #[arg(long, default_value_t = 40)]
        bound: usize,
    },
    /// Remove every cached file.
    Clear,
    /// Print the cache directory.
    Path,
}

/// Failure inside a subcommand: exit code 1, or 2 for bad input values.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Parse(_)) { 2 } else { 1 };
        Failure { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: 1, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

/// Parses `args` (including the program name), runs, returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match parse_with_config(argv) {
        Ok(c) => c,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("{}", f.message.trim_end());
            }
            return f.code;
        }
    };
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(Failure { code: 1, message: e.to_string() }),
        },
        None => execute(&cli),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn clap_failure(e: clap::Error) -> Failure {
    let code = e.exit_code();
    let message = e.render().to_string();
    if code == 0 {
        print!("{message}");
        return Failure { code, message: String::new() };
    }
    Failure { code: 2, message }
}

fn config_path(argv: &[OsString]) -> Option<PathBuf> {
    let words: Vec<String> = argv.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    words.iter().enumerate().skip(1).find_map(|(i, w)| match w.strip_prefix("--config=") {
        Some(v) => Some(PathBuf::from(v)),
        None if w == "--config" => words.get(i + 1).map(PathBuf::from),
        None => None,
    })
}

fn parse_with_config(argv: Vec<OsString>) -> Result<Cli, Failure> {
    let argv = match config_path(&argv) {
        Some(path) => {
            let text =
                fs::read_to_string(&path).map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
            apply_config(&argv, &parse_config(&text)?)?
        }
        None => argv,
    };
    Cli::try_parse_from(argv).map_err(clap_failure)
}

/// `key = value` lines; `#` starts a comment.
fn parse_config(text: &str) -> Result<BTreeMap<String, String>, Failure> {
    let mut out = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| usage(format!("config line {}: expected key=value", n + 1)))?;
        out.insert(k.trim().replace('_', "-"), v.trim().to_string());
    }
    Ok(out)
}

/// Appends `--key value` for config keys the chosen subcommand accepts and
/// the command line did not set.
fn apply_config(argv: &[OsString], config: &BTreeMap<String, String>) -> Result<Vec<OsString>, Failure> {
    let mut root = Cli::command();
    root.build();
    let words: Vec<String> = argv.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let mut cmd = &root;
    let mut path = Vec::new();
    for w in words.iter().skip(1) {
        if let Some(sub) = cmd.find_subcommand(w) {
            cmd = sub;
            path.push(w.clone());
        }
    }
    let mut known: BTreeMap<String, bool> = BTreeMap::new();
    for arg in root.get_arguments().chain(cmd.get_arguments()) {
        if let Some(long) = arg.get_long() {
            known.insert(long.to_string(), arg.get_action().takes_values());
        }
    }
    let mut out = argv.to_vec();
    for (k, v) in config {
        if k == "config" {
            continue;
        }
        let Some(&takes_value) = known.get(k) else {
            return Err(usage(format!("config key '{k}' is not a flag of '{}'", path.join(" "))));
        };
        let flag = format!("--{k}");
        let set = words.iter().any(|w| w == &flag || w.starts_with(&format!("{flag}=")));
        if set {
            continue;
        }
        if takes_value {
            out.push(flag.into());
            out.push(v.into());
        } else {
            match v.as_str() {
                "true" | "1" | "yes" => out.push(flag.into()),
                "false" | "0" | "no" => {}
                _ => return Err(usage(format!("config key '{k}' expects true or false"))),
            }
        }
    }
    Ok(out)
}

fn parse_list(s: &str) -> Result<Vec<i64>, Failure> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| usage(format!("expected integers, got '{s}'"))))
        .collect()
}

fn parse_rows(s: &str) -> Result<Vec<Vec<i64>>, Failure> {
    s.split(';').map(parse_list).collect()
}

fn parse_rat_arg(s: &str) -> Result<Rat, Failure> {
    parse_rat(s.trim()).map_err(|_| usage(format!("expected a rational number, got '{s}'")))
}

fn parse_lhat(rank: usize, s: Option<i64>, lhat: Option<&str>) -> Result<Weight, Failure> {
    let s_val = match lhat {
        Some(text) => match text.strip_prefix("s=") {
            Some(v) => Some(v.trim().parse::<i64>().map_err(|_| usage(format!("bad lhat '{text}'")))?),
            None => return Ok(Weight::from_ints(&parse_list(text)?)),
        },
        None => s,
    };
    match s_val {
        None => Ok(Weight::zero(rank)),
        Some(v) if rank == 1 && (1..=2).contains(&v) => Ok(Weight::from_ints(&[v - 1])),
        Some(v) if rank == 1 => Err(usage(format!("s must be 1 or 2, got {v}"))),
        Some(_) => Err(usage("s is only defined for A1; pass lhat coordinates")),
    }
}

pub fn cache_dir() -> PathBuf {
    std::env::var_os(CACHE_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("qblocks-cache"))
}

fn weyl_path(dir: &Path, rs: &RootSystem) -> PathBuf {
    dir.join(format!("weyl-{}.txt", rs.name()))
}

fn table_path(dir: &Path, rs: &RootSystem, bound: usize) -> PathBuf {
    dir.join(format!("partition-{}-{bound}.txt", rs.name()))
}

/// Cached group if present and readable, else computed.
fn load_group(rs: &RootSystem) -> Result<Vec<WeylElement>, Failure> {
    let path = weyl_path(&cache_dir(), rs);
    if let Ok(text) = fs::read_to_string(&path) {
        match weyl_table_from_text(rs, &text) {
            Ok(g) => return Ok(g),
            Err(e) => eprintln!("warning: ignoring cache file {}: {e}", path.display()),
        }
    }
    Ok(weyl_group_bounded(rs, EngineLimits::default().weyl_bound)?)
}

/// Largest cached partition table for `rs`, if any.
fn load_table(rs: &RootSystem) -> Option<PartitionTable> {
    let prefix = format!("partition-{}-", rs.name());
    let best = fs::read_dir(cache_dir())
        .ok()?
        .filter_map(|e| e.ok())
        .filter_map(|e| {
            let name = e.file_name().to_string_lossy().into_owned();
            let bound = name.strip_prefix(&prefix)?.strip_suffix(".txt")?.parse::<usize>().ok()?;
            Some((bound, e.path()))
        })
        .max_by_key(|(b, _)| *b)?;
    let text = fs::read_to_string(&best.1).ok()?;
    PartitionTable::from_text(rs, &text).ok()
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => fs::write(path, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn emit_series(cli: &Cli, s: &QSeries, expand: bool) -> Result<(), Failure> {
    let s = if expand { s.expand_eta() } else { s.clone() };
    let text = match cli.format {
        Format::Json => s.to_json() + "\n",
        Format::Csv => s.to_csv(),
    };
    emit(cli, &text)
}

fn execute(cli: &Cli) -> Result<i32, Failure> {
    match &cli.command {
        Command::Blocks(a) => {
            let rs: RootSystem = a.g.parse()?;
            let lhat = parse_lhat(rs.rank, a.s, a.lhat.as_deref())?;
            let label = BlockLabel::new(rs, parse_list(&a.p)?, parse_rows(&a.r)?, lhat)?;
            let trunc = parse_rat_arg(&a.trunc)?;
            let group = load_group(&label.rs)?;
            let limits = EngineLimits::default();
            let s = match a.form {
                Form::Conv => {
                    let table = load_table(&label.rs);
                    nested_character_with_table(&label, trunc, &group, &limits, table.as_ref())?
                }
                Form::Mult => nested_character_mform_with(&label, trunc, &group, &limits)?,
            };
            emit_series(cli, &s, a.expand_eta)?;
            Ok(0)
        }
        Command::Example3(a) => {
            let s = example3_series(&parse_list(&a.p)?, &parse_list(&a.r)?, a.s, parse_rat_arg(&a.trunc)?)?;
            emit_series(cli, &s, a.expand_eta)?;
            Ok(0)
        }
        Command::Zhat(a) => {
            let g = match (&a.seifert, &a.graph) {
                (Some(f), _) => seifert_to_plumbing(&SeifertData::new(parse_list(f)?)?)?,
                (None, Some(path)) => PlumbingGraph::from_json(&fs::read_to_string(path)?)?,
                (None, None) => return Err(usage("need --seifert or --graph")),
            };
            if a.emit_graph {
                emit(cli, &(g.to_json() + "\n"))?;
            } else {
                emit_series(cli, &zhat_series(&g, parse_rat_arg(&a.trunc)?)?, false)?;
            }
            Ok(0)
        }
        Command::Match(a) => {
            let read = |p: &PathBuf| -> Result<QSeries, Failure> { Ok(QSeries::from_json(&fs::read_to_string(p)?)?) };
            let target = read(&a.target)?;
            let cands = a.candidates.iter().map(read).collect::<Result<Vec<_>, _>>()?;
            let outcome = match_linear_combination(&cands, &target, parse_rat_arg(&a.fit)?, parse_rat_arg(&a.verify)?)?;
            let mut json = outcome.to_json();
            json["candidates"] = a.candidates.iter().map(|p| p.display().to_string()).collect();
            emit(cli, &(serde_json::to_string_pretty(&json).expect("json") + "\n"))?;
            Ok(0)
        }
        Command::Check(a) => {
            let suite: Suite = a.suite.parse()?;
            let window = a.trunc.as_deref().map(parse_rat_arg).transpose()?;
            let reports = run_suite(suite, window);
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&reports.iter().map(report_json).collect::<Vec<_>>())
                    .expect("json")
                    + "\n",
                Format::Csv => {
                    let mut t = String::from("suite,cases,failures,passed\n");
                    for r in &reports {
                        t += &format!("\"{}\",{},{},{}\n", r.name, r.cases, r.failures, r.passed());
                    }
                    t
                }
            };
            emit(cli, &text)?;
            for r in &reports {
                eprintln!("{r}");
            }
            Ok(if reports.iter().all(Report::passed) { 0 } else { 1 })
        }
        Command::Cache(a) => {
            let dir = cache_dir();
            match &a.action {
                CacheAction::Warm { g, bound } => {
                    let rs: RootSystem = g.parse()?;
                    fs::create_dir_all(&dir)?;
                    let group = weyl_group_bounded(&rs, EngineLimits::default().weyl_bound)?;
                    fs::write(weyl_path(&dir, &rs), weyl_table_to_text(&group))?;
                    let table = PartitionTable::build(&rs, *bound)?;
                    let tp = table_path(&dir, &rs, *bound);
                    fs::write(&tp, table.to_text(&rs))?;
                    emit(cli, &format!("{}\n{}\n", weyl_path(&dir, &rs).display(), tp.display()))?;
                }
                CacheAction::Clear => {
                    if dir.exists() {
                        for e in fs::read_dir(&dir)? {
                            let p = e?.path();
                            let name = p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
                            if (name.starts_with("weyl-") || name.starts_with("partition-")) && name.ends_with(".txt") {
                                fs::remove_file(p)?;
                            }
                        }
                    }
                }
                CacheAction::Path => emit(cli, &format!("{}\n", dir.display()))?,
            }
            Ok(0)
        }
    }
}

fn report_json(r: &Report) -> serde_json::Value {
    serde_json::json!({
        "name": r.name,
        "cases": r.cases,
        "failures": r.failures,
        "passed": r.passed(),
        "notes": r.notes,
        "sub": r.sub.iter().map(report_json).collect::<Vec<_>>(),
    })
}
