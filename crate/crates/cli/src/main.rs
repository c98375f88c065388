//! Command-line front end: verify designs, check and enumerate parameters,
//! run the constructions, transform designs, and search for colourings.
//!
//! Exit codes: 0 success/verified; 1 verification failed; 2 usage or
//! parameter error; 3 parse error; 4 search budget exhausted.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::io::IsTerminal;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use ulse_core::io::{
    emit_design, emit_enumeration_json, parse_design, Document, EmitFormat, Structure,
};
use ulse_core::{
    check_admissible, enumerate_admissible, general_construction, prefilter, search_t_ulse_jobs,
    symmetric_construction, verify_bibd, verify_resolution, verify_t_ulse, verify_td, Error,
    ResolvableStructure, SearchMode, SearchSpec, TransversalDesign, VerificationReport,
};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_PARSE: u8 = 3;
const EXIT_BUDGET: u8 = 4;

#[derive(Parser)]
#[command(name = "ulse", version, about = "Coloured block design toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a design file: balance, resolution or transversality, and
    /// optionally a t-ULSE colouring.
    Verify(VerifyArgs),
    /// Evaluate the necessary conditions for one parameter set.
    CheckParams(CheckParamsArgs),
    /// List admissible symmetric parameter rows for a range of ell.
    Enumerate(EnumerateArgs),
    /// Build a coloured design from one of the ingredient families.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Complement a design, optionally carrying its colouring across.
    Complement(ComplementArgs),
    /// Transpose incidence; optionally assemble the dual as a TD.
    Dual(DualArgs),
    /// Repeat every block m times.
    Duplicate(DuplicateArgs),
    /// Search for a t-ULSE ell-colouring of the design in a file.
    Search(SearchArgs),
}

#[derive(Args)]
struct VerifyArgs {
    file: PathBuf,
    /// Expected index; the discovered one must match.
    #[arg(long)]
    lambda: Option<u64>,
    /// Verify the file's colouring as a t-ULSE ell-colouring: L T.
    #[arg(long, num_args = 2, value_names = ["L", "T"])]
    ulse: Option<Vec<usize>>,
}

#[derive(Args)]
struct CheckParamsArgs {
    #[arg(long)]
    v: u64,
    #[arg(long)]
    k: u64,
    #[arg(long)]
    lambda: u64,
    #[arg(long)]
    ell: u64,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    ell_min: u64,
    #[arg(long)]
    ell_max: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Hadamard pipeline: H(ell) supplies both ingredients.
    Hadamard {
        #[arg(long)]
        ell: usize,
    },
    /// Affine pipeline: the plane of order ell−2 supplies both ingredients.
    Affine {
        #[arg(long)]
        ell: usize,
    },
    /// Twin-prime-power pipeline over F_{ell−2} × F_ell.
    Tpp {
        #[arg(long)]
        ell: u64,
    },
    /// The explicit (40,13,4) seed and its 0-ULSE 10-coloured complement.
    Pg40,
    /// General construction from explicit TD and RBIBD files.
    General {
        #[arg(long)]
        td: PathBuf,
        #[arg(long)]
        rbibd: PathBuf,
        #[arg(long)]
        ell: usize,
    },
    /// Symmetric construction: the TD is the dual of the RBIBD.
    Symmetric {
        #[arg(long)]
        rbibd: PathBuf,
        #[arg(long)]
        ell: usize,
        #[arg(short, default_value_t = 1)]
        m: u64,
    },
}

#[derive(Args)]
struct ComplementArgs {
    file: PathBuf,
    /// Carry the file's colouring across the complement.
    #[arg(long)]
    coloured: bool,
    /// The colouring's t parameter (defaults to the file's t field).
    #[arg(long)]
    t: Option<usize>,
}

#[derive(Args)]
struct DualArgs {
    file: PathBuf,
    /// Assemble the dual of an affine-resolvable input as a TD.
    #[arg(long)]
    as_td: bool,
}

#[derive(Args)]
struct DuplicateArgs {
    file: PathBuf,
    #[arg(short)]
    m: u64,
}

#[derive(Args)]
struct SearchArgs {
    file: PathBuf,
    #[arg(long)]
    ell: usize,
    #[arg(long, default_value_t = 0)]
    t: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::First)]
    mode: ModeArg,
    /// Disable symmetry breaking (count raw assignments).
    #[arg(long)]
    no_symmetry: bool,
    /// Node budget; exceeding it exits with code 4.
    #[arg(long)]
    budget: Option<u64>,
    /// Worker count; node counts are bit-reproducible at 1.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    First,
    All,
    Count,
}

/// PASS/FAIL markers, coloured per ULSE_COLOR (never|auto; default auto).
struct Paint {
    enabled: bool,
}

impl Paint {
    fn from_env() -> Paint {
        let setting = std::env::var("ULSE_COLOR").unwrap_or_else(|_| "auto".into());
        let enabled = match setting.as_str() {
            "never" => false,
            _ => std::io::stdout().is_terminal(),
        };
        Paint { enabled }
    }

    fn ok(&self) -> &'static str {
        if self.enabled {
            "\x1b[32mok\x1b[0m"
        } else {
            "ok"
        }
    }

    fn fail(&self) -> &'static str {
        if self.enabled {
            "\x1b[31mFAIL\x1b[0m"
        } else {
            "FAIL"
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err {
                Error::Parse { .. } => EXIT_PARSE,
                _ => EXIT_USAGE,
            };
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::CheckParams(args) => cmd_check_params(args),
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::Construct(cmd) => cmd_construct(cmd),
        Command::Complement(args) => cmd_complement(args),
        Command::Dual(args) => cmd_dual(args),
        Command::Duplicate(args) => cmd_duplicate(args),
        Command::Search(args) => cmd_search(args),
    }
}

fn read_document(path: &Path) -> Result<Document, Error> {
    let bytes =
        std::fs::read(path).map_err(|e| Error::parse(path.display().to_string(), e.to_string()))?;
    parse_design(&bytes)
}

fn print_report(paint: &Paint, what: &str, report: &VerificationReport) -> bool {
    if report.ok() {
        match report.discovered_lambda {
            Some(l) => println!("{what}: {} (lambda={l})", paint.ok()),
            None => println!("{what}: {}", paint.ok()),
        }
        if report.degenerate {
            println!("{what}: degenerate profile (t equals the uniform count)");
        }
        true
    } else {
        println!("{what}: {}", paint.fail());
        for v in &report.violations {
            println!("  {v}");
        }
        false
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, Error> {
    let paint = Paint::from_env();
    let doc = read_document(&args.file)?;
    let mut all_ok = true;

    match &doc.structure {
        Structure::Plain(design) => {
            all_ok &= print_report(&paint, "bibd", &verify_bibd(design, args.lambda));
        }
        Structure::Resolvable(rs) => {
            all_ok &= print_report(&paint, "bibd", &verify_bibd(rs.design(), args.lambda));
            all_ok &= print_report(&paint, "resolution", &verify_resolution(rs));
        }
        Structure::Transversal(td) => {
            all_ok &= print_report(&paint, "transversal", &verify_td(td));
            if let Some(expected) = args.lambda {
                if td.mu() != expected {
                    println!(
                        "index: {} (mu={}, expected {expected})",
                        paint.fail(),
                        td.mu()
                    );
                    all_ok = false;
                }
            }
        }
    }

    if let Some(ulse) = &args.ulse {
        let (ell, t) = (ulse[0], ulse[1]);
        let design = doc
            .structure
            .design()
            .ok_or_else(|| Error::parameter("--ulse applies to designs, not TDs"))?;
        let colouring = doc
            .colouring
            .as_ref()
            .ok_or_else(|| Error::parameter("--ulse needs a colouring in the file"))?;
        let report = verify_t_ulse(design, colouring, t, ell)?;
        all_ok &= print_report(&paint, &format!("{t}-ulse {ell}-colouring"), &report);
    }

    Ok(if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY_FAILED)
    })
}

fn cmd_check_params(args: CheckParamsArgs) -> Result<ExitCode, Error> {
    let paint = Paint::from_env();
    let findings = check_admissible(args.v, args.k, args.lambda, args.ell);
    let mut all_ok = true;
    for f in &findings {
        let marker = if f.satisfied {
            paint.ok()
        } else {
            paint.fail()
        };
        println!("{marker:4} {}: {}", f.condition.name(), f.detail);
        all_ok &= f.satisfied;
    }
    Ok(if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY_FAILED)
    })
}

fn cmd_enumerate(args: EnumerateArgs) -> Result<ExitCode, Error> {
    let rows = enumerate_admissible(args.ell_min, args.ell_max)?;
    if args.json {
        print!("{}", emit_enumeration_json(&rows));
    } else {
        println!(
            "{:>4} {:>6} {:>6} {:>5} {:>10}",
            "ell", "|C_i|", "v", "k", "lambda_min"
        );
        for row in &rows {
            println!(
                "{:>4} {:>6} {:>6} {:>5} {:>10}",
                row.ell,
                row.class_size().expect("rows satisfy ell | v"),
                row.v,
                row.k,
                row.lambda
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn emit_coloured(built: ulse_core::ColouredDesign) -> Result<ExitCode, Error> {
    let (design, colouring, t) = built.into_parts();
    let doc = Document::coloured(design, colouring, t);
    let bytes = emit_design(&doc, EmitFormat::Structured)?;
    print_bytes(&bytes);
    Ok(ExitCode::SUCCESS)
}

fn cmd_construct(cmd: ConstructCmd) -> Result<ExitCode, Error> {
    match cmd {
        ConstructCmd::Hadamard { ell } => {
            let h = ulse_core::ingredients::hadamard(ell)?;
            let td = ulse_core::ingredients::td_from_hadamard(&h)?;
            let rbibd = ulse_core::ingredients::rbibd_from_hadamard(&h)?;
            emit_coloured(general_construction(&td, &rbibd, ell)?)
        }
        ConstructCmd::Affine { ell } => {
            if ell < 4 {
                return Err(Error::parameter("affine pipeline needs ell >= 4"));
            }
            let plane = ulse_core::ingredients::affine_plane(ell as u64 - 2)?;
            let td = ulse_core::ingredients::td_from_affine(&plane)?;
            emit_coloured(general_construction(&td, &plane, ell)?)
        }
        ConstructCmd::Tpp { ell } => {
            emit_coloured(ulse_core::ingredients::tpp_coloured_design(ell)?)
        }
        ConstructCmd::Pg40 => emit_coloured(ulse_core::ingredients::pg40_coloured_design()?),
        ConstructCmd::General { td, rbibd, ell } => {
            let td = read_td(&td)?;
            let rbibd = read_rbibd(&rbibd)?;
            emit_coloured(general_construction(&td, &rbibd, ell)?)
        }
        ConstructCmd::Symmetric { rbibd, ell, m } => {
            let rbibd = read_rbibd(&rbibd)?;
            emit_coloured(symmetric_construction(&rbibd, ell, m)?)
        }
    }
}

fn read_td(path: &Path) -> Result<TransversalDesign, Error> {
    match read_document(path)?.structure {
        Structure::Transversal(td) => Ok(td),
        _ => Err(Error::parameter(format!(
            "{} does not describe a transversal design (no groups field)",
            path.display()
        ))),
    }
}

fn read_rbibd(path: &Path) -> Result<ResolvableStructure, Error> {
    match read_document(path)?.structure {
        Structure::Resolvable(rs) => Ok(rs),
        _ => Err(Error::parameter(format!(
            "{} does not describe a resolvable design (no resolution_classes field)",
            path.display()
        ))),
    }
}

fn cmd_complement(args: ComplementArgs) -> Result<ExitCode, Error> {
    let doc = read_document(&args.file)?;
    let design = doc
        .structure
        .design()
        .ok_or_else(|| Error::parameter("complement applies to designs, not TDs"))?;
    if args.coloured {
        let colouring = doc
            .colouring
            .as_ref()
            .ok_or_else(|| Error::parameter("--coloured needs a colouring in the file"))?;
        let t = args
            .t
            .or(doc.t)
            .ok_or_else(|| Error::parameter("--coloured needs --t or a t field in the file"))?;
        let (comp, col, t2) = ulse_core::complement_coloured(design, colouring, t)?;
        let bytes = emit_design(&Document::coloured(comp, col, t2), EmitFormat::Structured)?;
        print_bytes(&bytes);
    } else {
        let comp = ulse_core::complement(design)?;
        let bytes = emit_design(&Document::plain(comp), EmitFormat::Structured)?;
        print_bytes(&bytes);
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_dual(args: DualArgs) -> Result<ExitCode, Error> {
    let doc = read_document(&args.file)?;
    if args.as_td {
        let Structure::Resolvable(rs) = &doc.structure else {
            return Err(Error::parameter(
                "--as-td needs a resolvable input (resolution_classes field)",
            ));
        };
        let td = ulse_core::dual_as_td(rs)?;
        let bytes = emit_design(&Document::transversal(td), EmitFormat::Structured)?;
        print_bytes(&bytes);
    } else {
        let design = doc
            .structure
            .design()
            .ok_or_else(|| Error::parameter("dual applies to designs; use --as-td for TDs"))?;
        let d = ulse_core::dual(design)?;
        let bytes = emit_design(&Document::plain(d), EmitFormat::Structured)?;
        print_bytes(&bytes);
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_duplicate(args: DuplicateArgs) -> Result<ExitCode, Error> {
    let doc = read_document(&args.file)?;
    let design = doc
        .structure
        .design()
        .ok_or_else(|| Error::parameter("duplicate applies to designs, not TDs"))?;
    let duplicated = ulse_core::duplicate(design, args.m)?;
    let out = match (&doc.colouring, doc.t) {
        (Some(col), Some(t)) => Document::coloured(duplicated, col.clone(), t),
        (Some(col), None) => {
            let mut d = Document::plain(duplicated);
            d.colouring = Some(col.clone());
            d
        }
        _ => Document::plain(duplicated),
    };
    let bytes = emit_design(&out, EmitFormat::Structured)?;
    print_bytes(&bytes);
    Ok(ExitCode::SUCCESS)
}

fn cmd_search(args: SearchArgs) -> Result<ExitCode, Error> {
    let paint = Paint::from_env();
    let doc = read_document(&args.file)?;
    let design = doc
        .structure
        .design()
        .ok_or_else(|| Error::parameter("search applies to designs, not TDs"))?;

    let report = verify_bibd(design, None);
    if !report.ok() {
        println!("bibd: {}", paint.fail());
        for v in &report.violations {
            println!("  {v}");
        }
        return Ok(ExitCode::from(EXIT_VERIFY_FAILED));
    }
    let design = design.with_lambda(report.discovered_lambda);

    let mut spec = SearchSpec::new(args.ell, args.t);
    spec.mode = match args.mode {
        ModeArg::First => SearchMode::First,
        ModeArg::All => SearchMode::All,
        ModeArg::Count => SearchMode::Count,
    };
    spec.symmetry_breaking = !args.no_symmetry;
    spec.node_budget = args.budget;

    let violated = prefilter(&design, &spec);
    if violated.is_empty() {
        println!("prefilter: {}", paint.ok());
    } else {
        println!("prefilter: {} condition(s) violated", violated.len());
        for f in &violated {
            println!("  {}: {}", f.condition.name(), f.detail);
        }
    }

    let outcome = search_t_ulse_jobs(&design, &spec, args.jobs)?;
    println!("found: {}", outcome.count);
    println!("nodes: {}", outcome.nodes);
    println!("exhausted: {}", outcome.exhausted);
    for colouring in &outcome.colourings {
        let words: Vec<String> = colouring
            .assignment()
            .iter()
            .map(|c| c.to_string())
            .collect();
        println!("colouring: {}", words.join(" "));
    }
    Ok(if outcome.exhausted {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_BUDGET)
    })
}

fn print_bytes(bytes: &[u8]) {
    use std::io::Write;
    std::io::stdout().write_all(bytes).expect("stdout");
}
