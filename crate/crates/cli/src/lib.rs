//! The `kbound` command line: bound comparison, lattice minima, weight
//! construction, generalized decomposition matrix verification, `k0` of
//! `Z_q ⋊ 𝒩` and the fixture library.
//!
//! Exit status is 0 on success, 1 when a mathematical check fails and 2 on
//! bad input.

use std::ffi::OsString;
use std::fmt::Display;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kbound::bounds::{compare_all, k0_semidirect, SubsectionSpec};
use kbound::gendec::{verify_all, GendecError};
use kbound::io::{
    comparison_record, comparison_table, fixture, fixture_names, lattice_record, lattice_table, parse_json, to_json,
    verification_record, verification_table, weight_record, weight_table, BundleRecord, FormRecord, GendecInput,
    GendecRecord, GramRecord, FIXTURES,
};
use kbound::lattice::{form_minimum, GramForm};
use kbound::weights::{blowup_wm, from_quadratic_form, u_matrix, weight_candidates, Permutation, PermutationAction, WeightMatrix};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// What a command printed and how it exited.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "kbound", version, about = "Exact bounds on k(B) and k0(B) from local block invariants")]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Records,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bounds on k(B) and k0(B).
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Minima of positive definite quadratic forms.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Weight matrices W with x W x^t >= 1 on nonzero integer vectors.
    #[command(subcommand)]
    Weights(WeightsCmd),
    /// Generalized decomposition matrices.
    #[command(subcommand)]
    Gendec(GendecCmd),
    /// k0 of the semidirect product Z_q x| N.
    K0(K0Args),
    /// Built-in block bundles.
    #[command(subcommand)]
    Fixtures(FixturesCmd),
}

#[derive(Subcommand, Debug)]
enum BoundsCmd {
    /// Evaluate every applicable bound for a bundle.
    Compare(InputArg),
}

#[derive(Subcommand, Debug)]
enum LatticeCmd {
    /// Exact minimum and a minimal vector of a Gram matrix.
    Min(InputArg),
}

#[derive(Subcommand, Debug)]
enum GendecCmd {
    /// Check the orthogonality, indicator, rank and valuation identities.
    Verify(InputArg),
}

#[derive(Args, Debug)]
struct InputArg {
    #[arg(long)]
    input: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum WeightKind {
    /// U_n: 1 on the diagonal, -1/2 next to it.
    Un,
    /// Block matrix of m copies of a weight twisted by a permutation.
    Blowup,
    /// The matrix of an integral quadratic form.
    Form,
    /// All candidate weights for a bundle, by increasing tr(W C̄).
    Candidates,
}

#[derive(Subcommand, Debug)]
enum WeightsCmd {
    Build(BuildArgs),
}

#[derive(Args, Debug)]
struct BuildArgs {
    #[arg(long, value_enum)]
    kind: WeightKind,
    /// Size for `un`.
    #[arg(long)]
    n: Option<usize>,
    /// Gram file for `blowup`, form file for `form`, bundle for `candidates`.
    #[arg(long)]
    input: Option<PathBuf>,
    /// 1-based images of the permutation for `blowup`, comma separated.
    #[arg(long, value_delimiter = ',')]
    perm: Option<Vec<usize>>,
    /// Number of blocks for `blowup`.
    #[arg(long)]
    m: Option<usize>,
}

#[derive(Args, Debug)]
struct K0Args {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    q: u64,
    /// Generators of N as residues mod q; repeat or separate by commas.
    #[arg(long = "n-gen", value_delimiter = ',', allow_negative_numbers = true)]
    n_gen: Vec<i64>,
}

#[derive(Subcommand, Debug)]
enum FixturesCmd {
    /// Names and descriptions.
    List,
    /// Write fixtures as `<name>.bundle.json`.
    Emit {
        names: Vec<String>,
        #[arg(long)]
        all: bool,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

struct Failure {
    code: i32,
    message: String,
}

fn input_error(e: impl Display) -> Failure {
    Failure { code: EXIT_INPUT, message: e.to_string() }
}

type CmdResult = Result<(String, bool), Failure>;

pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    let f = cli.format;
    let result = match cli.command {
        Command::Bounds(BoundsCmd::Compare(a)) => bounds_compare(&a.input, f),
        Command::Lattice(LatticeCmd::Min(a)) => lattice_min(&a.input, f),
        Command::Weights(WeightsCmd::Build(a)) => weights_build(&a, f),
        Command::Gendec(GendecCmd::Verify(a)) => gendec_verify(&a.input, f),
        Command::K0(a) => k0(&a, f),
        Command::Fixtures(FixturesCmd::List) => Ok((fixtures_list(f), true)),
        Command::Fixtures(FixturesCmd::Emit { names, all, out }) => fixtures_emit(&names, all, &out, f),
    };
    match result {
        Ok((stdout, ok)) => {
            Outcome { code: if ok { EXIT_OK } else { EXIT_CHECK_FAILED }, stdout, stderr: String::new() }
        }
        Err(fail) => Outcome { code: fail.code, stdout: String::new(), stderr: format!("error: {}\n", fail.message) },
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))
}

fn load<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    parse_json(&read(path)?).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn records(v: &Value) -> String {
    to_json(v)
}

fn bounds_compare(path: &Path, f: Format) -> CmdResult {
    let bundle: BundleRecord = load(path)?;
    let loaded = bundle.load().map_err(input_error)?;
    let c = compare_all(&loaded.block).map_err(input_error)?;
    let ok = c.violations.is_empty();
    let out = match f {
        Format::Table => comparison_table(&c),
        Format::Records => records(&comparison_record(&c)),
    };
    Ok((out, ok))
}

fn lattice_min(path: &Path, f: Format) -> CmdResult {
    let g: GramRecord = load(path)?;
    let form = GramForm::new(g.to_matrix().map_err(input_error)?).map_err(input_error)?;
    let m = form_minimum(&form).map_err(input_error)?;
    Ok((
        match f {
            Format::Table => lattice_table(&m),
            Format::Records => records(&lattice_record(&m)),
        },
        true,
    ))
}

fn need<T: Clone>(v: &Option<T>, flag: &str, kind: &str) -> Result<T, Failure> {
    v.clone().ok_or_else(|| input_error(format!("--kind {kind} needs --{flag}")))
}

fn weights_build(a: &BuildArgs, f: Format) -> CmdResult {
    let render = |w: &WeightMatrix, t: Option<&kbound::Rational>| match f {
        Format::Table => weight_table(w, t),
        Format::Records => records(&weight_record(w, t)),
    };
    let out = match a.kind {
        WeightKind::Un => render(&u_matrix(need(&a.n, "n", "un")?).map_err(input_error)?, None),
        WeightKind::Blowup => {
            let g: GramRecord = load(&need(&a.input, "input", "blowup")?)?;
            let w = WeightMatrix::certified(g.to_matrix().map_err(input_error)?, "input").map_err(input_error)?;
            let perm = Permutation::from_one_based(&need(&a.perm, "perm", "blowup")?).map_err(input_error)?;
            render(&blowup_wm(&w, &perm, need(&a.m, "m", "blowup")?).map_err(input_error)?, None)
        }
        WeightKind::Form => {
            let r: FormRecord = load(&need(&a.input, "input", "form")?)?;
            render(&from_quadratic_form(&r.to_form().map_err(input_error)?).map_err(input_error)?, None)
        }
        WeightKind::Candidates => {
            let b: BundleRecord = load(&need(&a.input, "input", "candidates")?)?;
            let block = b.load().map_err(input_error)?.block;
            let trivial = PermutationAction::trivial(block.l());
            let action = block.spec.ibr_action().unwrap_or(&trivial);
            let cands = weight_candidates(block.cartan_b_bar(), action).map_err(input_error)?;
            match f {
                Format::Table => cands.iter().map(|c| weight_table(&c.weight, Some(&c.trace))).collect::<Vec<_>>().join("\n"),
                Format::Records => records(&Value::Array(
                    cands.iter().map(|c| weight_record(&c.weight, Some(&c.trace))).collect(),
                )),
            }
        }
    };
    Ok((out, true))
}

fn gendec_input(path: &Path) -> Result<GendecInput, Failure> {
    let value: Value = load(path)?;
    let loaded = if value.get("q_matrix").is_some() {
        let rec: GendecRecord = serde_json::from_value(value).map_err(input_error)?;
        rec.load()
    } else if value.get("gendec").is_some() {
        let rec: BundleRecord = serde_json::from_value(value).map_err(input_error)?;
        rec.load().map(|b| b.gendec.expect("checked above"))
    } else {
        return Err(input_error(format!("{}: neither a gendec record nor a bundle with one", path.display())));
    };
    loaded.map_err(input_error)
}

fn gendec_verify(path: &Path, f: Format) -> CmdResult {
    let g = gendec_input(path)?;
    let report = verify_all(&g.data, &g.c_bar, g.heights.as_deref()).map_err(|e: GendecError| input_error(e))?;
    let out = match f {
        Format::Table => verification_table(&report),
        Format::Records => records(&verification_record(&report)),
    };
    Ok((out, report.all_passed()))
}

fn k0(a: &K0Args, f: Format) -> CmdResult {
    let spec = SubsectionSpec::new(a.p, a.q, &a.n_gen).map_err(input_error)?;
    let k = k0_semidirect(&spec);
    let out = match f {
        Format::Table => format!("k0 = {k}  (p = {}, q = {}, |N| = {})\n", a.p, a.q, spec.n()),
        Format::Records => records(&json!({
            "p": a.p,
            "q": a.q,
            "n_generators": a.n_gen,
            "n": spec.n(),
            "n_p": spec.n_p(),
            "n_p_prime": spec.n_p_prime(),
            "k0": k,
        })),
    };
    Ok((out, true))
}

fn fixtures_list(f: Format) -> String {
    match f {
        Format::Table => {
            let w = fixture_names().map(str::len).max().unwrap_or(0);
            FIXTURES.iter().map(|(n, d)| format!("{n:<w$}  {d}\n")).collect()
        }
        Format::Records => records(&Value::Array(
            FIXTURES.iter().map(|(n, d)| json!({ "name": n, "description": d })).collect(),
        )),
    }
}

fn fixtures_emit(names: &[String], all: bool, out: &Path, f: Format) -> CmdResult {
    let names: Vec<String> = if all { fixture_names().map(String::from).collect() } else { names.to_vec() };
    if names.is_empty() {
        return Err(input_error("name at least one fixture or pass --all"));
    }
    std::fs::create_dir_all(out).map_err(|e| input_error(format!("cannot create {}: {e}", out.display())))?;
    let mut written = Vec::new();
    for name in &names {
        let bundle = fixture(name).map_err(input_error)?;
        let path = out.join(format!("{name}.bundle.json"));
        std::fs::write(&path, to_json(&bundle))
            .map_err(|e| input_error(format!("cannot write {}: {e}", path.display())))?;
        let back: BundleRecord = load(&path)?;
        if back != bundle {
            return Err(Failure { code: EXIT_CHECK_FAILED, message: format!("{} did not round-trip", path.display()) });
        }
        back.load().map_err(|e| Failure { code: EXIT_CHECK_FAILED, message: format!("{}: {e}", path.display()) })?;
        written.push(path);
    }
    let out = match f {
        Format::Table => written.iter().map(|p| format!("wrote {}\n", p.display())).collect(),
        Format::Records => records(&Value::Array(written.iter().map(|p| json!(p.display().to_string())).collect())),
    };
    Ok((out, true))
}
