//! The `pathasm` command-line tool.
//!
//! Results go to stdout as JSON (CSV for tables), diagnostics to stderr.
//! Exit codes: 0 success, 1 other errors, 2 parse errors, 3 bound or
//! budget exceeded, 4 malformed stream, 5 I/O.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::chains::{optimal_chain_with_budget, scholz_brauer_gap, DEFAULT_CHAIN_BUDGET};
use crate::compress::{
    compare_compression, lzw_compress, lzw_decompress, pa_decompress, pa_encode, CodeStream, CodecError, LZW_MAGIC,
    PA_MAGIC,
};
use crate::error::{AssemblyError, ParseError};
use crate::graphs::format::{parse_graph, parse_image};
use crate::graphs::grid::grid_tree_upper_bound;
use crate::graphs::{canonical_form, CanonicalGraph, GraphSystem};
use crate::groups::{FiniteGroup, GroupFile, GroupSystem};
use crate::numbers::{parse_number, AdditionSystem};
use crate::pathway::PathwayDoc;
use crate::schonhage_lower_bound;
use crate::search::{co_assembly_index, Algorithm, IndexResult, SearchConfig, DEFAULT_NODE_BUDGET};
use crate::strings::{render_str, str_from, TextSystem};
use crate::system::AssemblySystem;

pub const EXIT_OTHER: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_BOUND: i32 = 3;
pub const EXIT_MALFORMED: i32 = 4;
pub const EXIT_IO: i32 = 5;

/// Environment variable overriding the default search budget.
pub const BUDGET_ENV: &str = "PA_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "pathasm", version, about = "Pathway assembly indices and pathway compression")]
pub struct Cli {
    /// Write a JSON run report to this path.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Assembly index of one object.
    Index(IndexArgs),
    /// Co-assembly index of several objects (or of a whole group).
    Coindex(CoindexArgs),
    /// Optimal addition chain for n, or a table of chain lengths.
    Chain(ChainArgs),
    /// Compress a file.
    Compress(CompressArgs),
    /// Decompress a file written by `compress`.
    Decompress(DecompressArgs),
    /// Compare the pathway codec with LZW on one file.
    Compare(CompareArgs),
    /// CSV table of indices over a family of objects.
    Table(TableArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    Number,
    String,
    Graph,
    Group,
    Image,
}

#[derive(Args, Debug, Clone)]
pub struct SearchArgs {
    /// exhaustive, tree or sampled.
    #[arg(long)]
    pub algorithm: Option<Algorithm>,
    /// Fail once the index is known to exceed this.
    #[arg(long)]
    pub max_index: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Pathways drawn by the sampled algorithm.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Search node budget (default from PA_BUDGET, else built in).
    #[arg(long)]
    pub budget: Option<u64>,
    /// Disable duplicate-state pruning.
    #[arg(long)]
    pub no_dedup: bool,
}

#[derive(Args, Debug, Clone)]
pub struct DomainArgs {
    /// Strings: allow reversed parts.
    #[arg(long)]
    pub reversal: bool,
    /// Images: distinguish horizontal from vertical neighbours.
    #[arg(long)]
    pub orientation_locked: bool,
    /// Groups: generators by index or name (overrides the file).
    #[arg(long, num_args = 1..)]
    pub generators: Option<Vec<String>>,
    /// Strings: read the text from this file instead of the argument.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct IndexArgs {
    pub domain: Domain,
    /// A number, a string, or a path to a graph, group or image file.
    pub input: Option<String>,
    /// Groups: the element, by index or name.
    #[arg(long)]
    pub element: Option<String>,
    #[command(flatten)]
    pub search: SearchArgs,
    #[command(flatten)]
    pub domain_args: DomainArgs,
}

#[derive(Args, Debug)]
pub struct CoindexArgs {
    pub domain: Domain,
    /// Objects as for `index`. A group file alone means every element.
    pub inputs: Vec<String>,
    /// Groups: restrict to these elements, by index or name.
    #[arg(long, num_args = 1..)]
    pub elements: Option<Vec<String>>,
    #[command(flatten)]
    pub search: SearchArgs,
    #[command(flatten)]
    pub domain_args: DomainArgs,
}

#[derive(Args, Debug)]
pub struct ChainArgs {
    pub n: Option<u64>,
    /// Print `n,l,schonhage` for 1..=N as CSV instead.
    #[arg(long)]
    pub table: Option<u64>,
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Codec {
    Pa,
    Lzw,
}

#[derive(Args, Debug)]
pub struct CompressArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: PathBuf,
    #[arg(long, value_enum, default_value_t = Codec::Pa)]
    pub codec: Codec,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Args, Debug)]
pub struct DecompressArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableDomain {
    Number,
    String,
    Group,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    pub domain: TableDomain,
    /// Numbers: largest n.
    #[arg(long, default_value_t = 64)]
    pub max: u64,
    /// Strings: the alphabet.
    #[arg(long, default_value = "ab")]
    pub alphabet: String,
    /// Strings: the length.
    #[arg(long, default_value_t = 4)]
    pub length: usize,
    /// Groups: the group file.
    #[arg(long)]
    pub group: Option<PathBuf>,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub search: SearchArgs,
    #[command(flatten)]
    pub domain_args: DomainArgs,
}

/// Everything needed to reproduce a run.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub version: &'static str,
    pub command: Vec<String>,
    pub input_sha256: Option<String>,
    pub config: Option<SearchConfig>,
    pub result: Value,
    pub output_path: Option<PathBuf>,
    pub exit_code: i32,
    pub wall_time_ms: f64,
}

/// A failure with its exit code and a JSON description for stdout.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub json: Value,
    pub message: String,
}

impl CliError {
    fn new(code: i32, kind: &str, message: String) -> Self {
        Self {
            code,
            json: json!({ "error": kind, "message": message }),
            message,
        }
    }

    fn parse(message: impl Into<String>) -> Self {
        Self::new(EXIT_PARSE, "parse", message.into())
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        Self::new(EXIT_IO, "io", format!("{}: {e}", path.display()))
    }
}

impl From<AssemblyError> for CliError {
    fn from(e: AssemblyError) -> Self {
        let message = e.to_string();
        match e {
            AssemblyError::BoundExceeded {
                lower_bound,
                upper_bound,
            } => Self {
                code: EXIT_BOUND,
                json: json!({
                    "error": "bound_exceeded",
                    "message": message,
                    "lower_bound": lower_bound,
                    "upper_bound": upper_bound,
                }),
                message,
            },
            AssemblyError::SearchIncomplete {
                lower_bound,
                upper_bound,
            } => Self {
                code: EXIT_BOUND,
                json: json!({
                    "error": "budget_exceeded",
                    "message": message,
                    "lower_bound": lower_bound,
                    "upper_bound": upper_bound,
                }),
                message,
            },
            AssemblyError::BudgetExceeded(_) => Self::new(EXIT_BOUND, "budget_exceeded", message),
            AssemblyError::UnreachableElement(_) => Self::new(EXIT_OTHER, "unreachable_element", message),
            _ => Self::new(EXIT_OTHER, "invalid", message),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        let mut err = Self::parse(e.to_string());
        err.json["line"] = json!(e.line);
        err.json["column"] = json!(e.column);
        err
    }
}

impl From<CodecError> for CliError {
    fn from(e: CodecError) -> Self {
        match e {
            CodecError::Assembly(a) => a.into(),
            CodecError::Malformed { .. } | CodecError::BadMagic { .. } => {
                Self::new(EXIT_MALFORMED, "malformed_stream", e.to_string())
            }
            _ => Self::new(EXIT_OTHER, "codec", e.to_string()),
        }
    }
}

/// Output of a successful command.
struct Outcome {
    stdout: String,
    result: Value,
    output_path: Option<PathBuf>,
}

impl Outcome {
    fn json(v: Value) -> Self {
        Self {
            stdout: v.to_string(),
            result: v,
            output_path: None,
        }
    }
}

#[derive(Default)]
struct Context {
    digest: Option<Sha256>,
    config: Option<SearchConfig>,
}

impl Context {
    fn absorb(&mut self, bytes: &[u8]) {
        self.digest.get_or_insert_with(Sha256::new).update(bytes);
    }

    fn read(&mut self, path: &Path) -> Result<Vec<u8>, CliError> {
        let bytes = std::fs::read(path).map_err(|e| CliError::io(path, e))?;
        self.absorb(&bytes);
        Ok(bytes)
    }

    fn read_text(&mut self, path: &Path) -> Result<String, CliError> {
        let bytes = self.read(path)?;
        String::from_utf8(bytes).map_err(|_| CliError::parse(format!("{}: not UTF-8 text", path.display())))
    }

    fn search(&mut self, a: &SearchArgs, default: Algorithm) -> SearchConfig {
        let budget = a.budget.or_else(env_budget).unwrap_or(DEFAULT_NODE_BUDGET);
        let base = SearchConfig::default();
        let cfg = SearchConfig {
            algorithm: a.algorithm.unwrap_or(default),
            max_index: a.max_index,
            dedup: !a.no_dedup,
            seed: a.seed.unwrap_or(base.seed),
            sample_count: a.samples.unwrap_or(base.sample_count),
            node_budget: budget,
        };
        self.config = Some(cfg.clone());
        cfg
    }
}

fn env_budget() -> Option<u64> {
    std::env::var(BUDGET_ENV).ok()?.trim().parse().ok()
}

fn index_json<O: Clone + PartialEq>(r: &IndexResult<O>, algorithm: Algorithm, render: impl Fn(&O) -> String) -> Value {
    json!({
        "index": r.index,
        "lower_bound": r.lower_bound,
        "upper_bound": r.upper_bound,
        "exact": r.exact,
        "algorithm": algorithm,
        "witness": PathwayDoc::from_pathway(&r.witness, render),
    })
}

fn run_system<S: AssemblySystem>(sys: &S, targets: &[S::Object], cfg: &SearchConfig) -> Result<Value, CliError> {
    let r = co_assembly_index(sys, targets, cfg)?;
    Ok(index_json(&r, cfg.algorithm, |x| sys.render(x)))
}

fn load_string(ctx: &mut Context, input: Option<&str>, d: &DomainArgs) -> Result<Vec<u32>, CliError> {
    match (&d.file, input) {
        (Some(path), _) => Ok(str_from(&ctx.read_text(path)?)),
        (None, Some(s)) => {
            ctx.absorb(s.as_bytes());
            Ok(str_from(s))
        }
        (None, None) => Err(CliError::parse("no string given")),
    }
}

fn load_number(ctx: &mut Context, s: &str) -> Result<u64, CliError> {
    ctx.absorb(s.as_bytes());
    parse_number(s).map_err(|e| CliError::parse(e.to_string()))
}

fn load_group(ctx: &mut Context, path: &Path, d: &DomainArgs) -> Result<(FiniteGroup, Vec<usize>), CliError> {
    let text = ctx.read_text(path)?;
    let file: GroupFile = serde_json::from_str(&text).map_err(|e| {
        let mut err = CliError::parse(format!("{}: {e}", path.display()));
        err.json["line"] = json!(e.line());
        err.json["column"] = json!(e.column());
        err
    })?;
    let g = file.build()?;
    let gens = match &d.generators {
        Some(names) => names.iter().map(|n| element(&g, n)).collect::<Result<_, _>>()?,
        None => file.generators.clone(),
    };
    Ok((g, gens))
}

fn element(g: &FiniteGroup, s: &str) -> Result<usize, CliError> {
    if let Some(k) = g.index_of(s) {
        return Ok(k);
    }
    match s.trim().parse::<usize>() {
        Ok(k) if k < g.order() => Ok(k),
        _ => Err(CliError::parse(format!("{s:?} is not an element"))),
    }
}

fn graph_system(palette_len: usize, graphs: &[crate::graphs::ColouredGraph]) -> Result<GraphSystem, CliError> {
    let labels: Vec<u8> = graphs.iter().flat_map(|g| g.edges().map(|e| e.2).collect::<Vec<_>>()).collect();
    Ok(GraphSystem::new(0..palette_len as u32, labels)?)
}

fn one_input<'a>(inputs: &'a Option<String>, what: &str) -> Result<&'a str, CliError> {
    inputs.as_deref().ok_or_else(|| CliError::parse(format!("missing {what}")))
}

fn cmd_index(ctx: &mut Context, a: &IndexArgs) -> Result<Outcome, CliError> {
    let d = &a.domain_args;
    let cfg = ctx.search(&a.search, Algorithm::Exhaustive);
    let v = match a.domain {
        Domain::Number => {
            let n = load_number(ctx, one_input(&a.input, "number")?)?;
            run_system(&AdditionSystem, &[n], &cfg)?
        }
        Domain::String => {
            let s = load_string(ctx, a.input.as_deref(), d)?;
            let sys = TextSystem::for_text(&s, d.reversal)?;
            let r = crate::strings::string_assembly_index(&sys, &s, &cfg)?;
            index_json(&r, cfg.algorithm, |x| render_str(x))
        }
        Domain::Graph => {
            let path = PathBuf::from(one_input(&a.input, "graph file")?);
            let f = parse_graph(&ctx.read_text(&path)?)?;
            let sys = graph_system(f.palette.len(), std::slice::from_ref(&f.graph))?;
            run_system(&sys, &[canonical_form(&f.graph)], &cfg)?
        }
        Domain::Group => {
            let path = PathBuf::from(one_input(&a.input, "group file")?);
            let (g, gens) = load_group(ctx, &path, d)?;
            let x = element(&g, a.element.as_deref().ok_or_else(|| CliError::parse("--element is required"))?)?;
            let sys = GroupSystem::new(&g, &gens)?;
            run_system(&sys, &[x], &cfg)?
        }
        Domain::Image => {
            let path = PathBuf::from(one_input(&a.input, "image file")?);
            let img = parse_image(&ctx.read_text(&path)?, d.orientation_locked)?;
            if cfg.algorithm == Algorithm::Tree {
                let r = grid_tree_upper_bound(&img, &cfg)?;
                index_json(&r, cfg.algorithm, CanonicalGraph::to_string)
            } else {
                let g = crate::graphs::grid::grid_to_graph(&img)?;
                run_system(&img.system()?, &[canonical_form(&g)], &cfg)?
            }
        }
    };
    Ok(Outcome::json(v))
}

fn cmd_coindex(ctx: &mut Context, a: &CoindexArgs) -> Result<Outcome, CliError> {
    let d = &a.domain_args;
    let cfg = ctx.search(&a.search, Algorithm::Exhaustive);
    if a.inputs.is_empty() {
        return Err(CliError::parse("no inputs given"));
    }
    let v = match a.domain {
        Domain::Number => {
            let ns = a.inputs.iter().map(|s| load_number(ctx, s)).collect::<Result<Vec<_>, _>>()?;
            run_system(&AdditionSystem, &ns, &cfg)?
        }
        Domain::String => {
            let ss: Vec<Vec<u32>> = a.inputs.iter().map(|s| load_string(ctx, Some(s), &DomainArgs { file: None, ..d.clone() })).collect::<Result<_, _>>()?;
            let sys = TextSystem::new(ss.iter().flatten().copied(), d.reversal)?;
            for s in &ss {
                sys.check(s)?;
            }
            run_system(&sys, &ss, &cfg)?
        }
        Domain::Graph => {
            let mut files = Vec::new();
            for p in &a.inputs {
                files.push(parse_graph(&ctx.read_text(Path::new(p))?)?);
            }
            let palette = files.iter().map(|f| f.palette.len()).max().unwrap_or(1);
            let graphs: Vec<_> = files.iter().map(|f| f.graph.clone()).collect();
            let sys = graph_system(palette, &graphs)?;
            let targets: Vec<CanonicalGraph> = graphs.iter().map(canonical_form).collect();
            run_system(&sys, &targets, &cfg)?
        }
        Domain::Group => {
            let (g, gens) = load_group(ctx, Path::new(&a.inputs[0]), d)?;
            let targets: Vec<usize> = match &a.elements {
                Some(es) => es.iter().map(|e| element(&g, e)).collect::<Result<_, _>>()?,
                None => (0..g.order()).collect(),
            };
            let sys = GroupSystem::new(&g, &gens)?;
            run_system(&sys, &targets, &cfg)?
        }
        Domain::Image => {
            let mut imgs = Vec::new();
            for p in &a.inputs {
                imgs.push(parse_image(&ctx.read_text(Path::new(p))?, d.orientation_locked)?);
            }
            let mut palette = Vec::new();
            let mut targets = Vec::new();
            for img in &imgs {
                palette.extend_from_slice(&img.pixels);
                targets.push(canonical_form(&crate::graphs::grid::grid_to_graph(img)?));
            }
            let labels = if d.orientation_locked { vec![0, 1] } else { vec![0] };
            let sys = GraphSystem::new(palette, labels)?;
            run_system(&sys, &targets, &cfg)?
        }
    };
    Ok(Outcome::json(v))
}

fn cmd_chain(a: &ChainArgs) -> Result<Outcome, CliError> {
    let budget = a.budget.or_else(env_budget).unwrap_or(DEFAULT_CHAIN_BUDGET);
    if let Some(max) = a.table {
        let mut csv = String::from("n,l,schonhage\n");
        let mut rows = Vec::new();
        for n in 1..=max {
            let r = optimal_chain_with_budget(n, budget)?;
            let b = schonhage_lower_bound(n);
            csv.push_str(&format!("{n},{},{b}\n", r.length));
            rows.push(json!([n, r.length, b]));
        }
        return Ok(Outcome {
            stdout: csv.trim_end().to_string(),
            result: json!({ "table": rows }),
            output_path: None,
        });
    }
    let n = a.n.ok_or_else(|| CliError::parse("give n or --table N"))?;
    let r = optimal_chain_with_budget(n, budget)?;
    let mut v = json!({
        "n": n,
        "l": r.length,
        "witness": r.chain.values,
        "schonhage": schonhage_lower_bound(n),
    });
    // l(2^k - 1) against l(k) + k - 1 when n has that form.
    if n >= 1 && (n + 1).is_power_of_two() {
        let k = (n + 1).trailing_zeros();
        if let Ok(sb) = scholz_brauer_gap(k) {
            v["scholz_brauer"] = json!(sb);
        }
    }
    Ok(Outcome::json(v))
}

fn cmd_compress(ctx: &mut Context, a: &CompressArgs) -> Result<Outcome, CliError> {
    let text = ctx.read(&a.input)?;
    let cfg = ctx.search(&a.search, Algorithm::Tree);
    let (bytes, extra) = match a.codec {
        Codec::Pa => {
            let e = pa_encode(&text, &cfg)?;
            let extra = json!({ "pathway_length": e.pathway_length, "blocks": e.blocks });
            (e.stream.to_file(PA_MAGIC), extra)
        }
        Codec::Lzw => (lzw_compress(&text).to_file(LZW_MAGIC), json!({})),
    };
    std::fs::write(&a.output, &bytes).map_err(|e| CliError::io(&a.output, e))?;
    let mut v = json!({
        "codec": format!("{:?}", a.codec).to_lowercase(),
        "input_bytes": text.len(),
        "output_bytes": bytes.len(),
        "output": a.output,
    });
    if let (Value::Object(m), Value::Object(x)) = (&mut v, extra) {
        m.extend(x);
    }
    Ok(Outcome {
        stdout: v.to_string(),
        result: v,
        output_path: Some(a.output.clone()),
    })
}

fn cmd_decompress(ctx: &mut Context, a: &DecompressArgs) -> Result<Outcome, CliError> {
    let data = ctx.read(&a.input)?;
    let (codec, text) = if data.starts_with(PA_MAGIC) {
        ("pa", pa_decompress(&CodeStream::from_file(&data, PA_MAGIC)?)?)
    } else if data.starts_with(LZW_MAGIC) {
        ("lzw", lzw_decompress(&CodeStream::from_file(&data, LZW_MAGIC)?)?)
    } else {
        return Err(CodecError::BadMagic {
            expected: "PA01 or LZ16".into(),
        }
        .into());
    };
    std::fs::write(&a.output, &text).map_err(|e| CliError::io(&a.output, e))?;
    let v = json!({ "codec": codec, "input_bytes": data.len(), "output_bytes": text.len(), "output": a.output });
    Ok(Outcome {
        stdout: v.to_string(),
        result: v,
        output_path: Some(a.output.clone()),
    })
}

fn cmd_compare(ctx: &mut Context, a: &CompareArgs) -> Result<Outcome, CliError> {
    let text = ctx.read(&a.input)?;
    let cfg = ctx.search(&a.search, Algorithm::Tree);
    let stats = compare_compression(&text, &cfg)?;
    Ok(Outcome::json(json!(stats)))
}

fn cmd_table(ctx: &mut Context, a: &TableArgs) -> Result<Outcome, CliError> {
    let cfg = ctx.search(&a.search, Algorithm::Exhaustive);
    let mut csv = String::new();
    let row = |csv: &mut String, name: String, r: &IndexResult<()>| {
        csv.push_str(&format!("{name},{},{},{},{}\n", r.index, r.lower_bound, r.upper_bound, r.exact));
    };
    match a.domain {
        TableDomain::Number => {
            csv.push_str("n,index,lower_bound,upper_bound,exact\n");
            for n in 1..=a.max {
                let r = co_assembly_index(&AdditionSystem, &[n], &cfg)?;
                row(&mut csv, n.to_string(), &strip(r));
            }
        }
        TableDomain::String => {
            let alphabet: Vec<u32> = str_from(&a.alphabet);
            ctx.absorb(a.alphabet.as_bytes());
            let sys = TextSystem::new(alphabet.iter().copied(), a.domain_args.reversal)?;
            let alphabet = sys.alphabet().to_vec();
            let k = alphabet.len();
            let total = k
                .checked_pow(a.length as u32)
                .filter(|&t| t <= 1 << 20)
                .ok_or_else(|| CliError::new(EXIT_BOUND, "budget_exceeded", "too many strings".into()))?;
            csv.push_str("string,index,lower_bound,upper_bound,exact\n");
            for mut code in 0..total {
                let mut s = vec![0u32; a.length];
                for c in s.iter_mut().rev() {
                    *c = alphabet[code % k];
                    code /= k;
                }
                if s.is_empty() {
                    continue;
                }
                let r = crate::strings::string_assembly_index(&sys, &s, &cfg)?;
                row(&mut csv, render_str(&s), &strip(r));
            }
        }
        TableDomain::Group => {
            let path = a.group.clone().ok_or_else(|| CliError::parse("--group is required"))?;
            let (g, gens) = load_group(ctx, &path, &a.domain_args)?;
            let sys = GroupSystem::new(&g, &gens)?;
            csv.push_str("element,index,lower_bound,upper_bound,exact\n");
            for x in 0..g.order() {
                let r = co_assembly_index(&sys, &[x], &cfg)?;
                row(&mut csv, csv_field(g.name(x)), &strip(r));
            }
        }
    }
    match &a.output {
        Some(path) => {
            std::fs::write(path, &csv).map_err(|e| CliError::io(path, e))?;
            let v = json!({ "table": path, "rows": csv.lines().count() - 1 });
            Ok(Outcome {
                stdout: v.to_string(),
                result: v,
                output_path: Some(path.clone()),
            })
        }
        None => Ok(Outcome {
            stdout: csv.trim_end().to_string(),
            result: json!({ "rows": csv.lines().count() - 1 }),
            output_path: None,
        }),
    }
}

fn strip<O>(r: IndexResult<O>) -> IndexResult<()> {
    IndexResult {
        index: r.index,
        witness: Default::default(),
        lower_bound: r.lower_bound,
        upper_bound: r.upper_bound,
        exact: r.exact,
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

// A closed stdout (say `| head`) is not an error worth a panic.
fn emit(s: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout().lock(), "{s}");
}

/// Runs a parsed command. Returns the exit code; output is printed.
pub fn run(cli: &Cli, argv: Vec<String>) -> i32 {
    let start = Instant::now();
    let mut ctx = Context::default();
    let outcome = match &cli.command {
        Command::Index(a) => cmd_index(&mut ctx, a),
        Command::Coindex(a) => cmd_coindex(&mut ctx, a),
        Command::Chain(a) => cmd_chain(a),
        Command::Compress(a) => cmd_compress(&mut ctx, a),
        Command::Decompress(a) => cmd_decompress(&mut ctx, a),
        Command::Compare(a) => cmd_compare(&mut ctx, a),
        Command::Table(a) => cmd_table(&mut ctx, a),
    };
    let (code, result, output_path) = match outcome {
        Ok(o) => {
            emit(&o.stdout);
            (0, o.result, o.output_path)
        }
        Err(e) => {
            emit(&e.json.to_string());
            eprintln!("pathasm: {}", e.message);
            (e.code, e.json, None)
        }
    };
    if let Some(path) = &cli.report {
        let report = RunReport {
            version: env!("CARGO_PKG_VERSION"),
            command: argv,
            input_sha256: ctx.digest.map(|d| hex::encode(d.finalize())),
            config: ctx.config,
            result,
            output_path,
            exit_code: code,
            wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
        };
        let text = serde_json::to_string_pretty(&report).expect("report serializes");
        if let Err(e) = std::fs::write(path, text) {
            eprintln!("pathasm: {}: {e}", path.display());
            return EXIT_IO;
        }
    }
    code
}

pub fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse_from(&argv);
    std::process::exit(run(&cli, argv));
}
