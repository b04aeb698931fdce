//! Command dispatch for the `homometric` binary, kept separate from `main` so
//! tests can drive it in-process.

use std::ffi::OsString;
use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use homometric::format::{parse_graph, parse_tree, parse_tree_document, write_edge_list, PairRecord, TreeDocument};
use homometric::haircomb::{build_haircomb, haircomb_search, recognize_haircomb, HaircombMethod};
use homometric::oracle::{generate, oracle_max_homometric, GeneratorKind, GeneratorSpec, DEFAULT_ORACLE_LIMIT};
use homometric::pairing::tree_search;
use homometric::profile::{compare_sets, distance_profile, HomometricPair, Profile};
use homometric::{Error, Graph, Tree};

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(name = "homometric", version, about = "Disjoint homometric vertex sets in trees")]
struct Cli {
    /// Print one machine-readable line per result.
    #[arg(long, global = true)]
    porcelain: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Find a large homometric pair in a tree (edge list).
    Find(Input),
    /// Find a homometric pair in a haircomb (haircomb or edge-list file).
    Haircomb(Input),
    /// Check whether two vertex sets are homometric.
    Verify(VerifyArgs),
    /// Print the distance profile of a vertex set.
    Profile(ProfileArgs),
    /// Exact maximum homometric pair size by exhaustive search.
    Oracle(OracleArgs),
    /// Generate a tree as an edge list.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
struct Input {
    /// Input file; stdin when omitted or "-".
    file: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: Input,
    /// First set, comma-separated ids.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// Second set, comma-separated ids.
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    /// File with the first set on one line and the second on the next.
    #[arg(long, conflicts_with_all = ["a", "b"])]
    sets: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ProfileArgs {
    #[command(flatten)]
    input: Input,
    /// Comma-separated ids.
    #[arg(long, allow_hyphen_values = true)]
    set: String,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[command(flatten)]
    input: Input,
    /// Largest tree to search.
    #[arg(long, default_value_t = DEFAULT_ORACLE_LIMIT)]
    limit: usize,
}

#[derive(Debug, Args)]
struct GenArgs {
    /// One of random-tree, random-binary-tree, random-haircomb, path, star, family-R, family-H.
    #[arg(long)]
    kind: String,
    /// Vertex count (all kinds but the families).
    #[arg(long)]
    n: Option<usize>,
    /// Family index (family-R, family-H).
    #[arg(long)]
    index: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    /// The input is fine but the answer is negative.
    Domain(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::OracleLimit { .. }
            | Error::InvalidGenerator(_)
            | Error::VertexOutOfRange { .. }
            | Error::DuplicateVertex(_) => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

type Run = Result<String, (Failure, String)>;

/// Runs one command line. `args` includes the program name.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli, stdin) {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err((Failure::Domain(msg), stdout)) => Outcome { code: 1, stdout, stderr: format!("{msg}\n") },
        Err((Failure::Usage(msg), stdout)) => Outcome { code: 2, stdout, stderr: format!("error: {msg}\n") },
    }
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read) -> Run {
    let p = cli.porcelain;
    match &cli.command {
        Command::Find(input) => find(&read_input(input, stdin)?, p),
        Command::Haircomb(input) => haircomb(&read_input(input, stdin)?, p),
        Command::Verify(args) => verify(args, &read_input(&args.input, stdin)?, p),
        Command::Profile(args) => profile(args, &read_input(&args.input, stdin)?, p),
        Command::Oracle(args) => oracle(&read_input(&args.input, stdin)?, args.limit, p),
        Command::Gen(args) => gen(args),
    }
}

fn usage(msg: impl Into<String>) -> (Failure, String) {
    (Failure::Usage(msg.into()), String::new())
}

fn fail(e: Error) -> (Failure, String) {
    (Failure::from(e), String::new())
}

fn read_input(input: &Input, stdin: &mut dyn Read) -> Result<String, (Failure, String)> {
    match input.file.as_deref() {
        Some(path) if path.as_os_str() != "-" => {
            fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
        }
        _ => {
            let mut text = String::new();
            stdin.read_to_string(&mut text).map_err(|e| usage(format!("cannot read stdin: {e}")))?;
            Ok(text)
        }
    }
}

fn parse_ids(text: &str) -> Result<Vec<usize>, (Failure, String)> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| usage(format!("bad vertex id {t:?}"))))
        .collect()
}

fn tree_from(text: &str) -> Result<Tree, (Failure, String)> {
    parse_tree(text).map_err(|e| fail(e.into()))
}

fn graph_from(text: &str) -> Result<Graph, (Failure, String)> {
    parse_graph(text).map_err(|e| fail(e.into()))
}

fn record(pair: &HomometricPair, porcelain: bool) -> String {
    let r = PairRecord::from(pair);
    if porcelain {
        r.to_porcelain()
    } else {
        r.to_text()
    }
}

/// Re-checks a constructed pair from scratch before it is printed.
fn recheck(g: &Graph, pair: &HomometricPair) -> Result<(), (Failure, String)> {
    HomometricPair::verify(g, pair.a().to_vec(), pair.b().to_vec()).map_err(fail)?;
    Ok(())
}

fn find(text: &str, porcelain: bool) -> Run {
    let t = tree_from(text)?;
    let search = tree_search(&t).map_err(fail)?;
    recheck(t.graph(), &search.pair)?;
    let (n, k) = (t.n(), search.pair.size());
    let lhs = (2 * k + 1) * (2 * k + 1);
    let holds = lhs >= 2 * n;
    Ok(if porcelain {
        format!(
            "{} n={n} path_candidate={} pairing_candidate={} guarantee={lhs}>={} holds={holds}\n",
            record(&search.pair, true),
            search.path_candidate,
            search.pairing_candidate,
            2 * n
        )
    } else {
        format!(
            "{}n={n} longest_path={} path_candidate={} pairing_candidate={}\nguarantee: (2k+1)^2 >= 2n: {lhs} >= {}\n",
            record(&search.pair, false),
            search.longest_path,
            search.path_candidate,
            search.pairing_candidate,
            2 * n
        )
    })
}

fn haircomb(text: &str, porcelain: bool) -> Run {
    let doc = parse_tree_document(text).map_err(|e| fail(e.into()))?;
    let h = match doc {
        TreeDocument::Haircomb(lengths) => build_haircomb(&lengths).map_err(fail)?,
        TreeDocument::EdgeList(t) => {
            recognize_haircomb(&t).ok_or_else(|| (Failure::Domain("not a haircomb".into()), String::new()))?
        }
    };
    let search = haircomb_search(&h).map_err(fail)?;
    recheck(h.tree().graph(), &search.pair)?;
    let method = match search.method {
        HaircombMethod::Overlap { shift } => format!("overlap shift={shift}"),
        HaircombMethod::SpineHalves => "spine-halves".into(),
        HaircombMethod::LegHalves => "leg-halves".into(),
    };
    let k = search.pair.size() as u64;
    let stats = format!(
        "n={} s={} l={} best_overlap={} method={}",
        h.n(),
        search.s,
        search.l,
        search.best_overlap,
        method
    );
    Ok(if porcelain {
        format!(
            "{} {stats} guarantee={} holds={}\n",
            record(&search.pair, true),
            search.guarantee,
            k >= search.guarantee
        )
    } else {
        format!(
            "{}{stats}\nguarantee: k >= max(s/2, l/2, n^2/(32ls)): {k} >= {}\n",
            record(&search.pair, false),
            search.guarantee
        )
    })
}

fn read_sets(args: &VerifyArgs) -> Result<(Vec<usize>, Vec<usize>), (Failure, String)> {
    if let Some(path) = &args.sets {
        let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
        let lines: Vec<&str> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        if lines.len() != 2 {
            return Err(usage(format!("{} must hold exactly two set lines", path.display())));
        }
        return Ok((parse_ids(lines[0])?, parse_ids(lines[1])?));
    }
    match (&args.a, &args.b) {
        (Some(a), Some(b)) => Ok((parse_ids(a)?, parse_ids(b)?)),
        _ => Err(usage("verify needs --a and --b, or --sets FILE")),
    }
}

fn verify(args: &VerifyArgs, text: &str, porcelain: bool) -> Run {
    let g = graph_from(text)?;
    let (a, b) = read_sets(args)?;
    let (verdict, pa, pb) = compare_sets(&g, &a, &b).map_err(fail)?;
    let homometric = verdict.is_homometric();
    let out = if porcelain {
        format!(
            "homometric={homometric} size_a={} size_b={} profile_a={} profile_b={}\n",
            a.len(),
            b.len(),
            pa.digest(),
            pb.digest()
        )
    } else {
        format!("verdict: {verdict}\nA profile: {pa}\nB profile: {pb}\n")
    };
    if homometric {
        Ok(out)
    } else {
        Err((Failure::Domain(verdict.to_string()), out))
    }
}

fn profile_line(p: &Profile) -> String {
    p.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
}

fn profile(args: &ProfileArgs, text: &str, porcelain: bool) -> Run {
    let g = graph_from(text)?;
    let set = parse_ids(&args.set)?;
    let p = distance_profile(&g, &set).map_err(fail)?;
    Ok(if porcelain {
        format!(
            "size={} distances={} profile={} profile_sha={}\n",
            set.len(),
            p.len(),
            profile_line(&p),
            p.digest()
        )
    } else {
        format!(
            "size={} distances={}\nprofile: {p}\nprofile_sha: {}\n",
            set.len(),
            p.len(),
            p.digest()
        )
    })
}

fn oracle(text: &str, limit: usize, porcelain: bool) -> Run {
    let t = tree_from(text)?;
    let result = oracle_max_homometric(&t, limit).map_err(fail)?;
    let mut out = format!("max_size={}", result.max_size);
    match (&result.witness, porcelain) {
        (Some(w), true) => out.push_str(&format!(" {}\n", record(w, true))),
        (Some(w), false) => out.push_str(&format!("\n{}", record(w, false))),
        (None, _) => out.push('\n'),
    }
    Ok(out)
}

fn gen(args: &GenArgs) -> Run {
    let kind: GeneratorKind = args.kind.parse().map_err(fail)?;
    let size = if kind.is_family() {
        if args.n.is_some() {
            return Err(usage(format!("{kind} takes --index, not --n")));
        }
        args.index.ok_or_else(|| usage(format!("{kind} needs --index")))?
    } else {
        if args.index.is_some() {
            return Err(usage(format!("{kind} takes --n, not --index")));
        }
        args.n.ok_or_else(|| usage(format!("{kind} needs --n")))?
    };
    let instance = generate(&GeneratorSpec { kind, size, seed: args.seed }).map_err(fail)?;
    Ok(write_edge_list(instance.tree.graph()))
}
