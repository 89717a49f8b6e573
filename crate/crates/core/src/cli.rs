//! The `sqfree` command line.
//!
//! Exit codes: 0 success, 2 unreadable or unparseable input, 3 input that
//! parses but is not a valid object, 4 failed internal check.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::boolcomb::{SimplicialComplex, Subset};
use crate::dualities::{alexander, alexander_cx};
use crate::error::{Error, Result};
use crate::exactla::{Field, FieldTag, PrimeField, Rationals};
use crate::invariants::{char_cycle, ext, ext_table, hochster, hochster_table, local_cohomology_hilbert, strand_theorem_sides};
use crate::io::{
    char_cycle_to_json, complex_from_json, complex_to_json, doc_field, doc_kind, facets_to_text, module_from_json, module_to_json,
    parse_facets_text, parse_json, render_table, simplicial_from_json, simplicial_to_json, summand_complex_from_json,
    summand_complex_to_json, DocKind, Format,
};
use crate::sqcomplex::{betti_table, minimal_injective_resolution, minimal_projective_resolution, SqComplex};
use crate::sqmod::SqModule;
use crate::suite::{run_checks, CheckConfig};

#[derive(Debug, Parser)]
#[command(name = "sqfree", version, about = "Squarefree modules, Alexander duality and the dualizing functor")]
pub struct Cli {
    /// Coefficient field: q or fp:<prime>. Defaults to the input's field, else q.
    #[arg(long, global = true)]
    pub field: Option<FieldTag>,

    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: OutputFormat,

    /// Write subsets as bitmask integers instead of vertex lists.
    #[arg(long, global = true)]
    pub compact: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Pretty,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Format {
        match f {
            OutputFormat::Json => Format::Json,
            OutputFormat::Csv => Format::Csv,
            OutputFormat::Pretty => Format::Pretty,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SrModule {
    /// S/I_Δ
    Ring,
    /// I_Δ
    Ideal,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Input file: JSON (module, complex, free/injective complex or
    /// simplicial complex) or a facet list, one facet per line.
    pub path: Option<PathBuf>,

    /// Facet list file (text or JSON).
    #[arg(long, conflicts_with_all = ["path", "module", "complex"])]
    pub facets: Option<PathBuf>,

    /// Module JSON file.
    #[arg(long, conflicts_with_all = ["path", "facets", "complex"])]
    pub module: Option<PathBuf>,

    /// Complex JSON file.
    #[arg(long, conflicts_with_all = ["path", "facets", "module"])]
    pub complex: Option<PathBuf>,

    /// Module attached to a simplicial complex.
    #[arg(long, value_enum, default_value = "ring")]
    pub sr: SrModule,

    /// Number of vertices for facet lists without a header.
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Betti numbers β_i(F) of a module or complex.
    Betti(Input),
    /// Ext^i(M, ω_S): the table of dimensions, or one module with --i.
    Ext {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        i: Option<i64>,
    },
    /// Alexander dual of a simplicial complex, module or complex.
    Dual(Input),
    /// Link of a face.
    Link {
        #[command(flatten)]
        input: Input,
        /// Face as comma-separated 1-based vertices; empty for ∅.
        #[arg(long, default_value = "")]
        face: String,
    },
    /// Minimal projective (default) or injective resolution of a module.
    Resolve {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        injective: bool,
    },
    /// The i-linear strand of the minimal resolution next to F(Ext^i(A(M), ω_S))[n-i].
    Strand {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        i: i64,
    },
    /// dim H^i_m(S/I_Δ)_{-F}: the table, or one value with --i and --face.
    Hochster {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        i: Option<i64>,
        #[arg(long)]
        face: Option<String>,
    },
    /// dim H^i_{I_Δ}(S)_a for a ∈ Z^n.
    LcHilbert {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        i: i64,
        /// Degree as comma-separated integers.
        #[arg(long, allow_hyphen_values = true)]
        degree: String,
    },
    /// Characteristic cycle of H^i_{I_Δ}(S).
    Charcycle {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        i: i64,
    },
    /// Run the property suite on a seeded random corpus.
    Check {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        /// Random modules, complexes and simplicial complexes per kind.
        #[arg(long, default_value_t = 24)]
        cases: usize,
        /// Where to write the first counterexample.
        #[arg(long, default_value = "counterexample.json")]
        counterexample: PathBuf,
        /// Use a deliberately wrong DADADA sign rule.
        #[arg(long, hide = true)]
        mutate_sign: bool,
    },
}

/// Parsed input before a field is fixed.
enum Loaded {
    Simplicial(SimplicialComplex),
    Json(Value, DocKind),
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        Error::Invalid(m) => Error::Invalid(format!("{}: {m}", path.display())),
        e => e,
    })
}

fn load(input: &Input) -> Result<Loaded> {
    let (path, forced) = match (&input.path, &input.facets, &input.module, &input.complex) {
        (Some(p), ..) => (p, None),
        (_, Some(p), ..) => (p, Some(DocKind::Simplicial)),
        (_, _, Some(p), _) => (p, Some(DocKind::Module)),
        (_, _, _, Some(p)) => (p, Some(DocKind::Complex)),
        _ => return Err(Error::Parse("no input: give a file or one of --facets, --module, --complex".into())),
    };
    let text = read(path)?;
    let looks_json = text.trim_start().starts_with('{');
    if !looks_json {
        if forced.is_some_and(|k| k != DocKind::Simplicial) {
            return Err(Error::Parse(format!("{}: expected JSON", path.display())));
        }
        return with_path(path, parse_facets_text(&text, input.n)).map(Loaded::Simplicial);
    }
    let v = with_path(path, parse_json(&text))?;
    let kind = with_path(path, doc_kind(&v))?;
    if let Some(f) = forced {
        if f != kind && !(f == DocKind::Complex && kind == DocKind::SummandComplex) {
            return Err(Error::Parse(format!("{}: expected a {f:?} document, found {kind:?}", path.display())));
        }
    }
    if kind == DocKind::Simplicial {
        return with_path(path, simplicial_from_json(&v)).map(Loaded::Simplicial);
    }
    Ok(Loaded::Json(v, kind))
}

fn resolve_field(flag: Option<FieldTag>, loaded: Option<&Loaded>) -> Result<FieldTag> {
    if let Some(f) = flag {
        return Ok(f);
    }
    match loaded {
        Some(Loaded::Json(v, _)) => Ok(doc_field(v)?.unwrap_or(FieldTag::Rational)),
        _ => Ok(FieldTag::Rational),
    }
}

fn as_complex<K: Field>(k: &K, loaded: &Loaded, sr: SrModule) -> Result<SqComplex<K>> {
    match loaded {
        Loaded::Simplicial(d) => {
            let m = match sr {
                SrModule::Ring => SqModule::stanley_reisner_ring(k, d),
                SrModule::Ideal => SqModule::stanley_reisner_ideal(k, d),
            };
            Ok(SqComplex::from_module(&m, 0))
        }
        Loaded::Json(v, DocKind::Module) => Ok(SqComplex::from_module(&module_from_json(k, v)?, 0)),
        Loaded::Json(v, DocKind::Complex) => complex_from_json(k, v),
        Loaded::Json(v, DocKind::SummandComplex) => Ok(summand_complex_from_json(k, v)?.to_complex()),
        Loaded::Json(_, DocKind::Simplicial) => unreachable!("loaded as a simplicial complex"),
    }
}

fn as_module<K: Field>(k: &K, loaded: &Loaded, sr: SrModule) -> Result<SqModule<K>> {
    let c = as_complex(k, loaded, sr)?;
    match c.degree_range() {
        None => Ok(SqModule::zero(k, c.n())),
        Some((0, 0)) => Ok(c.term(0).clone()),
        Some(_) => Err(Error::Invalid("this command needs a single module, not a complex".into())),
    }
}

fn as_simplicial(loaded: &Loaded) -> Result<&SimplicialComplex> {
    match loaded {
        Loaded::Simplicial(d) => Ok(d),
        Loaded::Json(..) => Err(Error::Invalid("this command needs a simplicial complex (facet list)".into())),
    }
}

fn parse_face(s: &str, n: usize) -> Result<Subset> {
    let mut vs = Vec::new();
    for tok in s.split([',', ' ']).filter(|t| !t.is_empty()) {
        let v: usize = tok.parse().map_err(|_| Error::Parse(format!("face: `{tok}` is not a vertex")))?;
        if v == 0 || v > n {
            return Err(Error::Invalid(format!("face: vertex {v} outside 1..={n}")));
        }
        vs.push(v);
    }
    Ok(Subset::from_vertices(&vs))
}

fn parse_degree(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("degree: `{t}` is not an integer"))))
        .collect()
}

fn pretty_json(v: &Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(v).expect("serializable"))
}

/// Non-table objects are always written as JSON, except facet lists under
/// `--format pretty`.
fn render_simplicial(d: &SimplicialComplex, format: OutputFormat) -> String {
    match format {
        OutputFormat::Pretty | OutputFormat::Csv => facets_to_text(d),
        OutputFormat::Json => pretty_json(&simplicial_to_json(d)),
    }
}

fn value_out(v: usize, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => pretty_json(&json!({"value": v})),
        _ => format!("{v}\n"),
    }
}

/// What a command produced: text for stdout and a process exit code.
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

fn run_with<K: Field>(k: &K, cli: &Cli, loaded: Option<&Loaded>) -> Result<Outcome> {
    let (format, compact) = (cli.format, cli.compact);
    let table = |t: &crate::sqcomplex::GradedTable, index: &str| render_table(t, index, format.into(), compact);
    let loaded_ref = || loaded.ok_or_else(|| Error::Parse("missing input".into()));
    let out = match &cli.command {
        Command::Betti(input) => table(&betti_table(&as_complex(k, loaded_ref()?, input.sr)?), "i"),
        Command::Ext { input, i } => {
            let c = as_complex(k, loaded_ref()?, input.sr)?;
            match i {
                Some(i) => pretty_json(&module_to_json(&ext(&c, *i), compact)),
                None => table(&ext_table(&c), "i"),
            }
        }
        Command::Dual(input) => match loaded_ref()? {
            Loaded::Simplicial(d) => render_simplicial(&d.alexander_dual()?, format),
            Loaded::Json(_, DocKind::Module) => pretty_json(&module_to_json(&alexander(&as_module(k, loaded_ref()?, input.sr)?), compact)),
            l => pretty_json(&complex_to_json(&alexander_cx(&as_complex(k, l, input.sr)?), compact)),
        },
        Command::Link { face, .. } => {
            let d = as_simplicial(loaded_ref()?)?;
            render_simplicial(&d.link(parse_face(face, d.n())?), format)
        }
        Command::Resolve { input, injective } => {
            let m = as_module(k, loaded_ref()?, input.sr)?;
            let r = if *injective { minimal_injective_resolution(&m).0 } else { minimal_projective_resolution(&m).0 };
            match format {
                OutputFormat::Json => pretty_json(&summand_complex_to_json(&r, compact)),
                _ => table(&r.summand_table(), "degree"),
            }
        }
        Command::Strand { input, i } => {
            let m = as_module(k, loaded_ref()?, input.sr)?;
            let (strand, rhs) = strand_theorem_sides(&m, *i);
            let agree = strand.summand_table() == rhs.summand_table() && strand.cohomology_dims() == rhs.cohomology_dims();
            match format {
                OutputFormat::Json => pretty_json(&json!({
                    "i": i,
                    "strand": summand_complex_to_json(&strand, compact),
                    "ext_side": summand_complex_to_json(&rhs, compact),
                    "agree": agree,
                })),
                _ => format!("{}agree: {agree}\n", table(&strand.summand_table(), "degree")),
            }
        }
        Command::Hochster { i, face, .. } => {
            let d = as_simplicial(loaded_ref()?)?;
            match (i, face) {
                (Some(i), Some(face)) => value_out(hochster(k, d, *i, parse_face(face, d.n())?), format),
                (None, None) => table(&hochster_table(k, d), "i"),
                (Some(i), None) => {
                    let t: crate::sqcomplex::GradedTable = hochster_table(k, d).iter().filter(|e| e.0 == *i).collect();
                    table(&t, "i")
                }
                (None, Some(_)) => return Err(Error::Parse("--face needs --i".into())),
            }
        }
        Command::LcHilbert { i, degree, .. } => {
            let d = as_simplicial(loaded_ref()?)?;
            value_out(local_cohomology_hilbert(k, d, *i, &parse_degree(degree)?)?, format)
        }
        Command::Charcycle { i, .. } => {
            let d = as_simplicial(loaded_ref()?)?;
            let c = char_cycle(k, d, *i);
            let mut out = match format {
                OutputFormat::Json => pretty_json(&char_cycle_to_json(&c, *i, compact)),
                _ => {
                    let t = c.multiplicities.iter().map(|(&f, &v)| (*i, f, v)).collect();
                    table(&t, "i")
                }
            };
            if let (Some(w), false) = (&c.warning, format == OutputFormat::Json) {
                out.push_str(&format!("warning: {w}\n"));
            }
            out
        }
        Command::Check { seed, max_n, cases, counterexample, mutate_sign } => {
            let config = CheckConfig {
                seed: *seed,
                max_n: *max_n,
                modules: *cases,
                complexes: (*cases / 3).max(1),
                simplicial: *cases,
                mutate_sign: *mutate_sign,
            };
            let report = run_checks(k, &config);
            let mut out = match format {
                OutputFormat::Json => pretty_json(&serde_json::to_value(&report).expect("serializable")),
                _ => report
                    .properties
                    .iter()
                    .map(|p| format!("{} {} ({} cases)\n", if p.failure.is_none() { "PASS" } else { "FAIL" }, p.property, p.cases))
                    .collect(),
            };
            if let Some(f) = report.first_failure() {
                std::fs::write(counterexample, pretty_json(&serde_json::to_value(f).expect("serializable")))?;
                if format != OutputFormat::Json {
                    out.push_str(&format!("counterexample written to {}\n", counterexample.display()));
                }
                return Ok(Outcome { stdout: out, code: 4 });
            }
            out
        }
    };
    Ok(Outcome::ok(out))
}

fn input_of(cmd: &Command) -> Option<&Input> {
    match cmd {
        Command::Betti(i) | Command::Dual(i) => Some(i),
        Command::Ext { input, .. }
        | Command::Link { input, .. }
        | Command::Resolve { input, .. }
        | Command::Strand { input, .. }
        | Command::Hochster { input, .. }
        | Command::LcHilbert { input, .. }
        | Command::Charcycle { input, .. } => Some(input),
        Command::Check { .. } => None,
    }
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome> {
    let loaded = input_of(&cli.command).map(load).transpose()?;
    match resolve_field(cli.field, loaded.as_ref())? {
        FieldTag::Rational => run_with(&Rationals, cli, loaded.as_ref()),
        FieldTag::Prime(p) => run_with(&PrimeField::new(p)?, cli, loaded.as_ref()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("sqfree").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn parses_flags() {
        let c = cli(&["--field", "fp:101", "--format", "csv", "betti", "--facets", "x.txt", "--sr", "ideal"]);
        assert_eq!(c.field, Some(FieldTag::Prime(101)));
        assert_eq!(c.format, OutputFormat::Csv);
        assert!(matches!(c.command, Command::Betti(ref i) if i.sr == SrModule::Ideal));
        assert!(Cli::try_parse_from(["sqfree", "--field", "fp:4", "betti", "x"]).is_err());
        let c = cli(&["lc-hilbert", "x.txt", "--i", "1", "--degree", "-3,-5"]);
        assert!(matches!(c.command, Command::LcHilbert { ref degree, .. } if degree == "-3,-5"));
    }

    #[test]
    fn face_and_degree_parsing() {
        assert_eq!(parse_face("1,3", 3).unwrap(), Subset::from_vertices(&[1, 3]));
        assert_eq!(parse_face("", 3).unwrap(), Subset::EMPTY);
        assert_eq!(parse_face("4", 3).unwrap_err().exit_code(), 3);
        assert_eq!(parse_degree("-3, 5").unwrap(), vec![-3, 5]);
        assert_eq!(parse_degree("a").unwrap_err().exit_code(), 2);
    }

    #[test]
    fn missing_file_is_a_parse_error() {
        let c = cli(&["betti", "/nonexistent/file.json"]);
        assert_eq!(run(&c).err().unwrap().exit_code(), 2);
    }
}
