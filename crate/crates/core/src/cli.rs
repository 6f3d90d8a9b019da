//! Command-line front end. Every command prints one JSON document (or CSV)
//! and exits with 0 on success, 2 on invalid input and 3 when a size cap is
//! exceeded.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::montecarlo::{self, McConfig, Report};
use crate::noncrossing::{enumerate_nc, enumerate_snc, s_epsilon, EpsilonVector};
use crate::perm::Permutation;
use crate::second_order::{
    ds_covariance, exact_cumulant, exact_mixed_moment, limit_k2, ExactMatrix, HaarUnitarySpace, Letter, ReducedWord,
    SquareMatrix, TraceWordSpec, UnitSpace,
};
use crate::weingarten::{mu, mu2, series, weingarten};
use crate::Limits;

/// Version of the JSON documents written by the CLI.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug, Serialize)]
#[command(
    name = "unifluct",
    version,
    about = "Exact Weingarten calculus and second-order fluctuations of Haar unitary matrices"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Also write the output to this file.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Worker threads for sampling (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(flatten)]
    pub caps: Caps,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Serialize)]
pub struct Caps {
    /// Largest n for Weingarten tables.
    #[arg(long, env = "UNIFLUCT_MAX_WG_N", default_value_t = Limits::default().weingarten_n, global = true)]
    pub max_wg_n: usize,
    /// Largest n for filtering S_n.
    #[arg(long, env = "UNIFLUCT_MAX_ENUM_N", default_value_t = Limits::default().enumerate_n, global = true)]
    pub max_enum_n: usize,
    /// Largest n for set partition enumeration.
    #[arg(long, env = "UNIFLUCT_MAX_PARTITIONS_N", default_value_t = Limits::default().partitions_n, global = true)]
    pub max_partitions_n: usize,
    /// Largest half-length l for S^(ε) enumeration.
    #[arg(long, env = "UNIFLUCT_MAX_EPS_L", default_value_t = Limits::default().epsilon_l, global = true)]
    pub max_eps_l: usize,
    /// Largest number of observables in a joint cumulant.
    #[arg(long, env = "UNIFLUCT_MAX_CUMULANT_R", default_value_t = Limits::default().cumulant_r, global = true)]
    pub max_cumulant_r: usize,
}

impl Caps {
    fn limits(&self) -> Result<Limits> {
        let l = Limits {
            weingarten_n: self.max_wg_n,
            enumerate_n: self.max_enum_n,
            partitions_n: self.max_partitions_n,
            epsilon_l: self.max_eps_l,
            cumulant_r: self.max_cumulant_r,
        };
        if [l.weingarten_n, l.enumerate_n, l.partitions_n, l.epsilon_l, l.cumulant_r].contains(&0) {
            return Err(Error::invalid("caps must be positive"));
        }
        Ok(l)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Pretty,
    Csv,
}

#[derive(Subcommand, Debug, Serialize)]
pub enum Command {
    /// List or count NC(n), S_NC(m, n) or S^(ε).
    #[command(subcommand)]
    Enumerate(EnumerateCmd),
    /// Wg(N, σ) as a rational function of N: the inverse of the Gram matrix
    /// (N^{#(σ⁻¹τ)})_{σ,τ ∈ S_n}.
    Wg(WgArgs),
    /// μ(σ): the coefficient of N^{−(|σ|+n)} in Wg(N, σ).
    Mu(TypeArgs),
    /// μ₂(σ₁, σ₂): leading coefficient of Wg(σ₁×σ₂) − Wg(σ₁)Wg(σ₂).
    Mu2(Mu2Args),
    /// Exact E(∏ Tr(D U^ε ⋯)) = Σ_{π ∈ S^(ε)} Wg(N, π̃) Tr_{γπ⁻¹}(D).
    Moment(SpecArgs),
    /// Exact joint cumulant of the traces, one observable per group.
    Cumulant(SpecArgs),
    /// Limit of k₂ of two traces: the annular sum with μ plus the planar
    /// double sums with μ₂ and φ₂.
    #[command(name = "k2-limit")]
    K2Limit(K2Args),
    /// lim k₂(Tr U^r, Tr U^s) = |r| δ(r, −s).
    Ds(DsArgs),
    /// Monte Carlo experiments.
    #[command(subcommand)]
    Mc(McCmd),
}

#[derive(Subcommand, Debug, Serialize)]
pub enum EnumerateCmd {
    /// Non-crossing permutations of [n].
    Nc {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count_only: bool,
    },
    /// Annular non-crossing permutations of [m + n].
    Snc {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count_only: bool,
    },
    /// ε-alternating permutations, ε given as e.g. "+-+-" or "1,-1".
    #[command(name = "s-eps")]
    SEps {
        #[arg(long, allow_hyphen_values = true)]
        eps: String,
        #[arg(long)]
        count_only: bool,
    },
}

#[derive(Args, Debug, Serialize)]
pub struct TypeArgs {
    /// Size of the symmetric group.
    #[arg(long)]
    pub n: usize,
    /// Cycle type such as "2,1"; padded with fixed points up to n.
    #[arg(long, conflicts_with = "perm")]
    pub cycle_type: Option<String>,
    /// Permutation in 1-based cycle notation such as "(1 2)(3)".
    #[arg(long)]
    pub perm: Option<String>,
}

impl TypeArgs {
    fn permutation(&self) -> Result<Permutation> {
        match (&self.cycle_type, &self.perm) {
            (Some(t), None) => permutation_of_type(t, self.n),
            (None, Some(p)) => Permutation::parse(p, self.n),
            _ => Err(Error::invalid("give exactly one of --cycle-type or --perm")),
        }
    }
}

fn permutation_of_type(text: &str, n: usize) -> Result<Permutation> {
    let mut t = parse_list::<usize>(text)?;
    let total: usize = t.iter().sum();
    if total > n {
        return Err(Error::invalid(format!("cycle type {text} does not fit in S_{n}")));
    }
    t.extend(std::iter::repeat_n(1, n - total));
    Permutation::from_cycle_type(&t)
}

#[derive(Args, Debug, Serialize)]
pub struct WgArgs {
    #[command(flatten)]
    pub which: TypeArgs,
    /// Also evaluate exactly at this N.
    #[arg(long)]
    pub at: Option<u64>,
    /// Also expand in 1/N with this many coefficients.
    #[arg(long)]
    pub series: Option<i64>,
}

#[derive(Args, Debug, Serialize)]
pub struct Mu2Args {
    #[arg(long)]
    pub n1: usize,
    #[arg(long)]
    pub cycle_type1: String,
    #[arg(long)]
    pub n2: usize,
    #[arg(long)]
    pub cycle_type2: String,
}

#[derive(Args, Debug, Serialize)]
pub struct SpecArgs {
    /// JSON file: {"version": 1, "groups": [[{"d": 0, "eps": 1}, …], …],
    /// "matrices": [[["1", "0"], ["0", "1/2"]], …]}; without matrices every
    /// D is the identity.
    #[arg(long)]
    pub spec: PathBuf,
    /// Matrix size; defaults to the size of the given matrices.
    #[arg(long = "N")]
    pub big_n: Option<u64>,
}

#[derive(Args, Debug, Serialize)]
pub struct K2Args {
    /// Left word as signs ("++") or letters ("U,U*").
    #[arg(long, allow_hyphen_values = true)]
    pub left: String,
    /// Right word, same syntax.
    #[arg(long, allow_hyphen_values = true)]
    pub right: String,
    /// Deterministic letters: `unit` (all D = 1) or `haar` (D_i = v^{k_i}
    /// for an independent Haar unitary v).
    #[arg(long, value_enum, default_value_t = SpaceKind::Unit)]
    pub space: SpaceKind,
    /// Exponents k_i for the left word (haar space).
    #[arg(long, allow_hyphen_values = true)]
    pub left_d: Option<String>,
    /// Exponents k_i for the right word (haar space).
    #[arg(long, allow_hyphen_values = true)]
    pub right_d: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceKind {
    Unit,
    Haar,
}

#[derive(Args, Debug, Serialize)]
pub struct DsArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub r: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub s: i64,
}

#[derive(Args, Debug, Serialize, Clone)]
pub struct McArgs {
    /// Matrix size.
    #[arg(long = "N")]
    pub big_n: usize,
    #[arg(long)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the report to this file.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

impl McArgs {
    fn config(&self) -> McConfig {
        McConfig::new(self.big_n, self.samples, self.seed)
    }
}

#[derive(Subcommand, Debug, Serialize)]
pub enum McCmd {
    /// k₂(Tr U^r, Tr U^s) against |r| δ(r, −s).
    Ds {
        #[command(flatten)]
        common: McArgs,
        #[arg(long, default_value_t = 3)]
        max_power: usize,
    },
    /// Covariances of traces of reduced words in independent Haar unitaries.
    Words {
        #[command(flatten)]
        common: McArgs,
        /// Words separated by ';', letters "id:exp" separated by ',', ids
        /// 1-based, e.g. "1:1,2:1;1:1,2:-1".
        #[arg(long, allow_hyphen_values = true)]
        words: String,
        #[arg(long, default_value_t = 0.1)]
        skew_bound: f64,
    },
    /// GUE covariances of Chebyshev traces against n δ(n, m).
    Chebyshev {
        #[command(flatten)]
        common: McArgs,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        /// Absolute tolerance floor.
        #[arg(long, default_value_t = 0.15)]
        floor: f64,
    },
    /// E(U11 U22 conj(U1π(1)) conj(U2π(2))) against Wg(N, π).
    Wg {
        #[command(flatten)]
        common: McArgs,
    },
}

/// Spec file for `moment` and `cumulant`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub version: u32,
    pub groups: Vec<Vec<Letter>>,
    #[serde(default)]
    pub matrices: Vec<Vec<Vec<String>>>,
}

fn parse_list<T: std::str::FromStr>(text: &str) -> Result<Vec<T>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<T>()
                .map_err(|_| Error::invalid(format!("cannot parse {s:?}")))
        })
        .collect()
}

fn rational(q: &BigRational) -> String {
    q.to_string()
}

#[derive(Serialize)]
struct Count {
    count: usize,
}

#[derive(Serialize)]
struct Listing {
    count: usize,
    items: Vec<String>,
}

#[derive(Serialize)]
struct Exact {
    value: String,
}

#[derive(Serialize)]
struct Integer {
    value: i64,
}

#[derive(Serialize)]
struct WgOut {
    num: Value,
    den: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    series: Option<Value>,
}

#[derive(Serialize)]
struct McOut<'a> {
    schema_version: u32,
    run_config: &'a Cli,
    #[serde(flatten)]
    report: Report,
}

fn listing(items: impl Iterator<Item = Permutation>, count_only: bool) -> Result<String> {
    if count_only {
        to_json(&Count { count: items.count() })
    } else {
        let items: Vec<String> = items.map(|p| p.to_string()).collect();
        to_json(&Listing {
            count: items.len(),
            items,
        })
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string(v).map_err(|e| Error::Io(e.to_string()))
}

fn read_spec(path: &Path, big_n: Option<u64>) -> Result<(TraceWordSpec, Vec<ExactMatrix>, u64)> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let file: SpecFile =
        serde_json::from_str(&text).map_err(|e| Error::invalid(format!("malformed spec file: {e}")))?;
    if file.version != SCHEMA_VERSION {
        return Err(Error::invalid(format!("unsupported spec version {}", file.version)));
    }
    let spec = TraceWordSpec::from_groups(file.groups)?;
    let mats = file
        .matrices
        .iter()
        .map(|rows| ExactMatrix::from_str_rows(rows))
        .collect::<Result<Vec<_>>>()?;
    let n = match (big_n, mats.first()) {
        (Some(n), _) => n,
        (None, Some(m)) => m.dim() as u64,
        (None, None) => return Err(Error::invalid("--N is required when no matrices are given")),
    };
    let mats = if mats.is_empty() {
        let count = spec.max_d_index().map_or(1, |d| d + 1);
        vec![ExactMatrix::identity(n as usize); count]
    } else {
        mats
    };
    Ok((spec, mats, n))
}

fn parse_words(text: &str) -> Result<Vec<ReducedWord>> {
    text.split(';')
        .filter(|w| !w.trim().is_empty())
        .map(|w| {
            let letters = w
                .split(',')
                .map(|l| {
                    let (i, k) = l
                        .trim()
                        .split_once(':')
                        .ok_or_else(|| Error::invalid(format!("letter {l:?} is not id:exp")))?;
                    let i: usize = i.parse().map_err(|_| Error::invalid(format!("bad id {i:?}")))?;
                    let k: i64 = k.parse().map_err(|_| Error::invalid(format!("bad exponent {k:?}")))?;
                    if i == 0 {
                        return Err(Error::invalid("matrix ids are 1-based"));
                    }
                    Ok((i - 1, k))
                })
                .collect::<Result<Vec<_>>>()?;
            ReducedWord::new(letters)
        })
        .collect()
}

/// `"++-"` or `"U,U,U*"`.
fn signs_word(eps: &str, offset: usize) -> Result<TraceWordSpec> {
    let e: EpsilonVector = if eps.contains('U') {
        let signs = eps
            .split(',')
            .map(|t| match t.trim() {
                "U" => Ok(1),
                "U*" => Ok(-1),
                other => Err(Error::invalid(format!("expected U or U*, got {other:?}"))),
            })
            .collect::<Result<Vec<i8>>>()?;
        EpsilonVector::new(signs)?
    } else {
        eps.parse()?
    };
    let letters: Vec<(usize, i8)> = e.signs().iter().enumerate().map(|(i, &s)| (offset + i, s)).collect();
    TraceWordSpec::single(&letters)
}

fn k2_limit(args: &K2Args, limits: &Limits) -> Result<BigRational> {
    match args.space {
        SpaceKind::Unit => {
            if args.left_d.is_some() || args.right_d.is_some() {
                return Err(Error::invalid("--left-d/--right-d need --space haar"));
            }
            let left = signs_word(&args.left, 0)?;
            let right = signs_word(&args.right, 0)?;
            let zero =
                |w: &TraceWordSpec| TraceWordSpec::single(&w.letters().iter().map(|l| (0, l.eps)).collect::<Vec<_>>());
            limit_k2(&zero(&left)?, &zero(&right)?, &[()], &UnitSpace, limits)
        }
        SpaceKind::Haar => {
            let left = signs_word(&args.left, 0)?;
            let right = signs_word(&args.right, left.len())?;
            let exps = |d: &Option<String>, len: usize| -> Result<Vec<i64>> {
                let v = match d {
                    Some(t) => parse_list::<i64>(t)?,
                    None => vec![0; len],
                };
                if v.len() != len {
                    return Err(Error::invalid(format!("expected {len} exponents, got {}", v.len())));
                }
                Ok(v)
            };
            let mut d = exps(&args.left_d, left.len())?;
            d.extend(exps(&args.right_d, right.len())?);
            limit_k2(&left, &right, &d, &HaarUnitarySpace, limits)
        }
    }
}

fn execute(cli: &Cli) -> Result<String> {
    let limits = cli.caps.limits()?;
    match &cli.command {
        Command::Enumerate(EnumerateCmd::Nc { n, count_only }) => listing(enumerate_nc(*n, &limits)?, *count_only),
        Command::Enumerate(EnumerateCmd::Snc { m, n, count_only }) => {
            listing(enumerate_snc(*m, *n, &limits)?, *count_only)
        }
        Command::Enumerate(EnumerateCmd::SEps { eps, count_only }) => {
            listing(s_epsilon(&eps.parse()?, &limits)?, *count_only)
        }
        Command::Wg(a) => {
            let p = a.which.permutation()?;
            let f = weingarten(&p, &limits)?;
            let raw = serde_json::to_value(&f).map_err(|e| Error::Io(e.to_string()))?;
            let value =
                a.at.map(|x| -> Result<String> {
                    if (x as usize) < p.size() {
                        return Err(Error::invalid(format!("N = {x} is smaller than n = {}", p.size())));
                    }
                    Ok(rational(&f.eval(&BigRational::from_integer(x.into()))?))
                })
                .transpose()?;
            let series = a
                .series
                .map(|k| series(&f, k).and_then(|s| serde_json::to_value(&s).map_err(|e| Error::Io(e.to_string()))))
                .transpose()?;
            to_json(&WgOut {
                num: raw["num"].clone(),
                den: raw["den"].clone(),
                value,
                series,
            })
        }
        Command::Mu(a) => to_json(&Integer {
            value: mu(&a.permutation()?, &limits)?,
        }),
        Command::Mu2(a) => {
            let p1 = permutation_of_type(&a.cycle_type1, a.n1)?;
            let p2 = permutation_of_type(&a.cycle_type2, a.n2)?;
            to_json(&Exact {
                value: rational(&mu2(&p1, &p2, &limits)?),
            })
        }
        Command::Moment(a) => {
            let (spec, d, n) = read_spec(&a.spec, a.big_n)?;
            to_json(&Exact {
                value: rational(&exact_mixed_moment(&spec, &d, n, &limits)?),
            })
        }
        Command::Cumulant(a) => {
            let (spec, d, n) = read_spec(&a.spec, a.big_n)?;
            let parts: Vec<TraceWordSpec> = (0..spec.num_groups()).map(|i| spec.group(i)).collect();
            to_json(&Exact {
                value: rational(&exact_cumulant(&parts, &d, n, &limits)?),
            })
        }
        Command::K2Limit(a) => to_json(&Exact {
            value: rational(&k2_limit(a, &limits)?),
        }),
        Command::Ds(a) => to_json(&Integer {
            value: ds_covariance(a.r, a.s)?,
        }),
        Command::Mc(mc) => {
            let (report, json) = match mc {
                McCmd::Ds { common, max_power } => {
                    (montecarlo::experiment_ds(*max_power, &common.config())?, &common.json)
                }
                McCmd::Words {
                    common,
                    words,
                    skew_bound,
                } => (
                    montecarlo::experiment_reduced_words(&parse_words(words)?, &common.config(), *skew_bound)?,
                    &common.json,
                ),
                McCmd::Chebyshev {
                    common,
                    max_degree,
                    floor,
                } => (
                    montecarlo::experiment_chebyshev(*max_degree, &common.config(), *floor)?,
                    &common.json,
                ),
                McCmd::Wg { common } => (montecarlo::experiment_weingarten(&common.config())?, &common.json),
            };
            let out = McOut {
                schema_version: SCHEMA_VERSION,
                run_config: cli,
                report,
            };
            let text = to_json(&out)?;
            if let Some(path) = json {
                fs::write(path, &text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            }
            Ok(text)
        }
    }
}

fn csv_field(v: &Value) -> String {
    let s = match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    };
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

/// Rows of objects become a table, a list of items one line each, and
/// anything else `key,value` lines.
fn to_csv(json: &str) -> Result<String> {
    let v: Value = serde_json::from_str(json).map_err(|e| Error::Io(e.to_string()))?;
    let mut out = String::new();
    if let Some(rows) = v.get("rows").and_then(Value::as_array) {
        if let Some(Value::Object(first)) = rows.first() {
            let keys: Vec<&String> = first.keys().collect();
            out += &keys.iter().map(|k| k.as_str()).collect::<Vec<_>>().join(",");
            out.push('\n');
            for r in rows {
                let line: Vec<String> = keys.iter().map(|k| csv_field(&r[k.as_str()])).collect();
                out += &line.join(",");
                out.push('\n');
            }
        }
    } else if let Some(items) = v.get("items").and_then(Value::as_array) {
        out += "item\n";
        for i in items {
            out += &csv_field(i);
            out.push('\n');
        }
    } else if let Value::Object(map) = &v {
        out += "key,value\n";
        for (k, x) in map {
            out += &format!("{},{}\n", k, csv_field(x));
        }
    }
    Ok(out)
}

fn render(cli: &Cli, json: String) -> Result<String> {
    match cli.format {
        Format::Json => Ok(json),
        Format::Pretty => {
            let v: Value = serde_json::from_str(&json).map_err(|e| Error::Io(e.to_string()))?;
            serde_json::to_string_pretty(&v).map_err(|e| Error::Io(e.to_string()))
        }
        Format::Csv => to_csv(&json),
    }
}

/// Exit status for an error.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_cap_exceeded() {
        3
    } else {
        2
    }
}

/// Runs a parsed command, returning the rendered output.
pub fn run(cli: &Cli) -> Result<String> {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(Error::invalid("--threads must be positive"));
        }
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let text = render(cli, execute(cli)?)?;
    if let Some(path) = &cli.output {
        fs::write(path, &text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(text)
}

/// Parses `std::env::args`, runs, prints and returns the exit status.
pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(text) => {
            use std::io::Write;
            // a closed pipe downstream is not an error
            let _ = writeln!(std::io::stdout().lock(), "{}", text.trim_end());
            0
        }
        Err(e) => {
            eprintln!("{}", serde_json::json!({ "error": e.to_string() }));
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<String> {
        let cli = Cli::try_parse_from(std::iter::once("unifluct").chain(args.iter().copied())).unwrap();
        run(&cli)
    }

    #[test]
    fn documented_outputs() {
        assert_eq!(run_args(&["ds", "--r", "2", "--s", "-2"]).unwrap(), r#"{"value":2}"#);
        assert_eq!(
            run_args(&["enumerate", "nc", "--n", "4", "--count-only"]).unwrap(),
            r#"{"count":14}"#
        );
        assert_eq!(
            run_args(&["wg", "--n", "2", "--cycle-type", "2"]).unwrap(),
            r#"{"num":[-1],"den":[0,-1,0,1]}"#
        );
    }

    #[test]
    fn other_commands() {
        assert_eq!(
            run_args(&["wg", "--n", "2", "--perm", "(1 2)", "--at", "3"]).unwrap(),
            r#"{"num":[-1],"den":[0,-1,0,1],"value":"-1/24"}"#
        );
        assert_eq!(
            run_args(&["mu", "--n", "3", "--cycle-type", "3"]).unwrap(),
            r#"{"value":2}"#
        );
        assert_eq!(
            run_args(&["k2-limit", "--left", "++", "--right", "--"]).unwrap(),
            r#"{"value":"2"}"#
        );
        assert_eq!(
            run_args(&["k2-limit", "--left", "U,U", "--right", "U*,U*"]).unwrap(),
            r#"{"value":"2"}"#
        );
        assert!(run_args(&["k2-limit", "--left", "U,V", "--right", "U*"]).is_err());
        assert_eq!(
            run_args(&[
                "k2-limit",
                "--left",
                "+",
                "--right",
                "-",
                "--space",
                "haar",
                "--left-d",
                "1",
                "--right-d",
                "-1"
            ])
            .unwrap(),
            r#"{"value":"1"}"#
        );
        assert_eq!(
            run_args(&["enumerate", "s-eps", "--eps", "+-+-", "--count-only"]).unwrap(),
            r#"{"count":4}"#
        );
        assert_eq!(
            run_args(&["enumerate", "snc", "--m", "2", "--n", "2", "--count-only"]).unwrap(),
            r#"{"count":18}"#
        );
        let listed = run_args(&["enumerate", "nc", "--n", "2"]).unwrap();
        assert!(listed.starts_with(r#"{"count":2,"items":["#));
    }

    #[test]
    fn error_codes() {
        let e = run_args(&["enumerate", "nc", "--n", "11"]).unwrap_err();
        assert_eq!(exit_code(&e), 3);
        let e = run_args(&["ds", "--r", "0", "--s", "1"]).unwrap_err();
        assert_eq!(exit_code(&e), 2);
        let e = run_args(&["wg", "--n", "2", "--cycle-type", "3"]).unwrap_err();
        assert_eq!(exit_code(&e), 2);
    }

    #[test]
    fn csv_output() {
        let out = run_args(&["--format", "csv", "ds", "--r", "1", "--s", "-1"]).unwrap();
        assert_eq!(out, "key,value\nvalue,1\n");
    }

    #[test]
    fn word_parsing() {
        let w = parse_words("1:1,2:1;1:2,2:-1").unwrap();
        assert_eq!(w[0].letters(), &[(0, 1), (1, 1)]);
        assert!(parse_words("1:1,1:1").is_err());
        assert!(parse_words("0:1").is_err());
    }
}
