//! Command-line front end.
//!
//! Exit codes: 0 success, 1 domain or validation failure, 2 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::Algebra;
use crate::bidual::{dual_basis_certificate, embedding_rank, reflexivity_report, second_dual};
use crate::derivations::{derivations, z_closure, VModule};
use crate::duality::{dual, star_dual};
use crate::error::{Error, Result};
use crate::io::{self, ErrorDoc, InputDoc, MatrixDoc, ReportDocument};
use crate::linalg::Matrix;
use crate::presets::{self, Preset};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "ncvec",
    version,
    about = "Vectors, covectors and reflexivity for finite-dimensional algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and validate an algebra
    Validate(InputArgs),
    /// Basis of the center Z
    Center(InputArgs),
    /// Basis of V (Der(A), or the Z-closure of --submodule)
    Derivations(InputArgs),
    /// Basis of the covector bimodule hom_Z(V, A)
    Dual(InputArgs),
    /// Basis of the Z-valued dual hom_Z(V, Z)
    StarDual(InputArgs),
    /// Basis of the second dual hom_A(V†, A) and the embedding rank
    Bidual(InputArgs),
    /// Dual-basis certificate of projectivity, if one exists
    Certificate(InputArgs),
    /// Covectors not generated by differentials and second-dual elements outside V
    Ghosts(InputArgs),
    /// Full reflexivity report
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Algebra definition (JSON)
    #[arg(
        long,
        value_name = "PATH",
        conflicts_with = "preset",
        required_unless_present = "preset"
    )]
    algebra: Option<PathBuf>,

    /// Built-in algebra: matrix, dual-numbers, triangular, group-algebra-cyclic, quaternions
    #[arg(long, value_name = "NAME")]
    preset: Option<String>,

    /// Preset parameter (matrix size, group order)
    #[arg(
        long,
        value_name = "INT",
        requires = "preset",
        conflicts_with = "algebra",
        allow_negative_numbers = true
    )]
    param: Option<i64>,

    /// JSON list of n×n derivation matrices generating V as a Z-module
    #[arg(long, value_name = "PATH")]
    submodule: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "json")]
    format: Format,

    /// Write output here instead of stdout
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ReportArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Include bases of Z, V, V*, V† and V†† in the report
    #[arg(long)]
    bases: bool,
}

struct Loaded {
    alg: Algebra,
    source: String,
    generators: Option<Vec<Matrix>>,
}

impl Loaded {
    fn module(&self) -> Result<VModule> {
        match &self.generators {
            Some(g) => z_closure(&self.alg, g),
            None => Ok(derivations(&self.alg)),
        }
    }
}

fn load(args: &InputArgs) -> Result<Loaded> {
    let (alg, source) = match (&args.algebra, &args.preset) {
        (Some(path), _) => (io::read_algebra_file(path)?, format!("file:{}", file_name(path))),
        (None, Some(name)) => {
            let preset = Preset::parse(name, args.param)?;
            (presets::build(preset)?, format!("preset:{preset}"))
        }
        (None, None) => unreachable!("clap requires one of --algebra/--preset"),
    };
    let generators = match &args.submodule {
        Some(path) => Some(io::read_submodule_file(path, alg.dim())?),
        None => None,
    };
    Ok(Loaded {
        alg,
        source,
        generators,
    })
}

fn file_name(p: &std::path::Path) -> String {
    p.file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| p.display().to_string())
}

/// Serialized result plus its text rendering.
struct Output {
    json: String,
    text: String,
}

fn output<T: Serialize>(doc: &T, text: String) -> Output {
    let mut json = serde_json::to_string_pretty(doc).expect("serializable");
    json.push('\n');
    Output { json, text }
}

#[derive(Serialize)]
struct ValidateDoc {
    valid: bool,
    dim: usize,
    basis: Vec<String>,
    commutative: bool,
}

#[derive(Serialize)]
struct BasisDoc<T> {
    dim: usize,
    basis: Vec<T>,
}

#[derive(Serialize)]
struct BidualDoc {
    dim: usize,
    embedding_rank: usize,
    basis: Vec<MatrixDoc>,
}

#[derive(Serialize)]
struct CertificateOut {
    projective: bool,
    note: &'static str,
    certificate: Option<io::CertificateDoc>,
}

#[derive(Serialize)]
struct GhostsOut {
    covector_dim: usize,
    bidual_dim: usize,
    covector_representatives: Vec<MatrixDoc>,
    bidual_representatives: Vec<MatrixDoc>,
}

fn render_matrices(title: &str, ms: &[MatrixDoc]) -> String {
    let mut s = format!("{title}: dim {}\n", ms.len());
    for (i, m) in ms.iter().enumerate() {
        let rows: Vec<String> = m.iter().map(|r| format!("[{}]", r.join(", "))).collect();
        s.push_str(&format!("  [{i}] {}\n", rows.join(" ")));
    }
    s
}

fn execute(command: &Command) -> Result<Output> {
    match command {
        Command::Validate(args) => {
            let l = load(args)?;
            if let Some(g) = &l.generators {
                z_closure(&l.alg, g)?;
            }
            let doc = ValidateDoc {
                valid: true,
                dim: l.alg.dim(),
                basis: l.alg.labels().to_vec(),
                commutative: l.alg.is_commutative(),
            };
            let text = format!("valid algebra of dimension {} ({})\n", doc.dim, doc.basis.join(", "));
            Ok(output(&doc, text))
        }
        Command::Center(args) => {
            let l = load(args)?;
            let center = l.alg.center();
            let doc = BasisDoc {
                dim: center.dim(),
                basis: io::center_basis(&l.alg),
            };
            let mut text = format!("center: dim {}\n", center.dim());
            for z in center.basis() {
                text.push_str(&format!("  {}\n", l.alg.format_element(&z)));
            }
            Ok(output(&doc, text))
        }
        Command::Derivations(args) => {
            let l = load(args)?;
            let v = l.module()?;
            let basis = io::module_basis(&v);
            let text = render_matrices("V", &basis);
            Ok(output(&BasisDoc { dim: v.dim(), basis }, text))
        }
        Command::Dual(args) | Command::StarDual(args) => {
            let l = load(args)?;
            let v = l.module()?;
            let (space, title) = match command {
                Command::Dual(_) => (dual(&l.alg, &v)?, "V† = hom_Z(V, A)"),
                _ => (star_dual(&l.alg, &v)?, "V* = hom_Z(V, Z)"),
            };
            let basis = io::covector_basis(&space);
            let text = render_matrices(title, &basis);
            Ok(output(
                &BasisDoc {
                    dim: space.dim(),
                    basis,
                },
                text,
            ))
        }
        Command::Bidual(args) => {
            let l = load(args)?;
            let v = l.module()?;
            let vdag = dual(&l.alg, &v)?;
            let vdd = second_dual(&l.alg, &vdag)?;
            let doc = BidualDoc {
                dim: vdd.dim(),
                embedding_rank: embedding_rank(&v, &vdag)?,
                basis: io::bidual_basis(&vdd),
            };
            let text = format!(
                "{}embedding rank {}\n",
                render_matrices("V†† = hom_A(V†, A)", &doc.basis),
                doc.embedding_rank
            );
            Ok(output(&doc, text))
        }
        Command::Certificate(args) => {
            let l = load(args)?;
            let v = l.module()?;
            let cert = dual_basis_certificate(&l.alg, &v)?;
            let doc = CertificateOut {
                projective: cert.is_some(),
                note: io::PROJECTIVITY_NOTE,
                certificate: cert.as_ref().map(io::CertificateDoc::from),
            };
            let text = match &doc.certificate {
                Some(c) => format!(
                    "projective: dual-basis certificate found\n{}",
                    render_matrices("cogenerators", &c.cogenerators)
                ),
                None => "not projective: the dual-basis system is inconsistent\n".to_string(),
            };
            Ok(output(&doc, text))
        }
        Command::Ghosts(args) => {
            let l = load(args)?;
            let v = l.module()?;
            let rep = reflexivity_report(&l.alg, &v)?;
            let doc = GhostsOut {
                covector_dim: rep.ghost_covector_dim,
                bidual_dim: rep.ghost_bidual_dim,
                covector_representatives: rep.ghost_covectors.iter().map(|c| c.values().to_strings()).collect(),
                bidual_representatives: rep.ghost_bidual.iter().map(|w| w.values().to_strings()).collect(),
            };
            let text = format!(
                "covectors outside the bimodule generated by differentials: {}\nsecond-dual elements outside V: {}\n",
                doc.covector_dim, doc.bidual_dim
            );
            Ok(output(&doc, text))
        }
        Command::Report(ReportArgs { input, bases }) => {
            let l = load(input)?;
            let v = l.module()?;
            let rep = reflexivity_report(&l.alg, &v)?;
            let input_doc = InputDoc::new(&l.alg, l.source.clone(), l.generators.as_deref());
            let doc = ReportDocument::new(&l.alg, &rep, input_doc, *bases);
            let text = report_text(&doc);
            Ok(output(&doc, text))
        }
    }
}

fn report_text(doc: &ReportDocument) -> String {
    let d = &doc.dims;
    let yes = |b: bool| if b { "yes" } else { "no" };
    format!(
        "source         {}\n\
         dims           A={} Z={} V={} V*={} V†={} V††={}\n\
         embedding      rank {} (injective: {})\n\
         reflexive      {}\n\
         projective     {}\n\
         nondegenerate  {}\n\
         ghosts         covectors {}, second dual {}\n",
        doc.input.source,
        d.algebra,
        d.center,
        d.module,
        d.star_dual,
        d.dual,
        d.bidual,
        doc.embedding_rank,
        yes(doc.injective),
        yes(doc.reflexive),
        yes(doc.projective),
        yes(doc.nondegenerate),
        doc.ghosts.covector_dim,
        doc.ghosts.bidual_dim,
    )
}

fn format_and_output(command: &Command) -> (Format, Option<&PathBuf>) {
    let a = match command {
        Command::Validate(a)
        | Command::Center(a)
        | Command::Derivations(a)
        | Command::Dual(a)
        | Command::StarDual(a)
        | Command::Bidual(a)
        | Command::Certificate(a)
        | Command::Ghosts(a) => a,
        Command::Report(r) => &r.input,
    };
    (a.format, a.output.as_ref())
}

/// Runs the CLI with explicit arguments and streams; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let (format, out_path) = format_and_output(&cli.command);
    match execute(&cli.command) {
        Ok(out) => {
            let body = match format {
                Format::Json => out.json,
                Format::Text => out.text,
            };
            let written = match out_path {
                Some(p) => std::fs::write(p, body.as_bytes()).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
                None => stdout.write_all(body.as_bytes()).map_err(|e| Error::Io(e.to_string())),
            };
            match written {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    EXIT_FAILURE
                }
            }
        }
        Err(e) => {
            let code = match e {
                Error::UnknownPreset(_) | Error::BadParams(_) => EXIT_USAGE,
                _ => EXIT_FAILURE,
            };
            match format {
                Format::Json => {
                    let doc = ErrorDoc::from(&e);
                    let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&doc).expect("serializable"));
                }
                Format::Text => {
                    let _ = writeln!(stderr, "error: {e}");
                }
            }
            code
        }
    }
}
