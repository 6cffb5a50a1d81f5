//! Command-line front end.
//!
//! Exit codes: 0 on success (all checked identities hold, or the requested
//! document was produced), 1 when a validated identity is violated, 2 on
//! malformed input or flags. Reports are deterministic: identical inputs
//! and seeds produce byte-identical output.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mrbld::algebra::{MrbPair, Report, Representation};
use mrbld::claims::{run_claims, Verdict};
use mrbld::cohomology::{cohomology, ComplexKind};
use mrbld::deformation::{check_all_orders, check_order, OrderReport};
use mrbld::extension::{build_extension, classify, ClassifyOutcome, ExtensionError};
use mrbld::json;
use mrbld::operators::PhiVariant;

#[derive(Parser)]
#[command(
    name = "mrbld",
    about = "Exact validators, cohomology, deformations and abelian extensions \
             for modified Rota-Baxter Lie algebras with derivations",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Clone, Copy)]
struct FormatArg {
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ComplexArg {
    Ce,
    Mrbo,
    Mrbla,
    Mrbld,
}

impl From<ComplexArg> for ComplexKind {
    fn from(c: ComplexArg) -> ComplexKind {
        match c {
            ComplexArg::Ce => ComplexKind::Ce,
            ComplexArg::Mrbo => ComplexKind::Mrbo,
            ComplexArg::Mrbla => ComplexKind::Mrbla,
            ComplexArg::Mrbld => ComplexKind::Mrbld,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate a pair or representation document against every defining
    /// identity.
    Verify {
        /// Path to a pair or representation document.
        document: PathBuf,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Compute cocycles, coboundaries and the cohomology group of one of
    /// the four complexes.
    Cohomology {
        /// Path to the pair document.
        pair: PathBuf,
        /// Path to a representation document, or the literal `adjoint`.
        representation: String,
        /// Which complex to use.
        #[arg(long, value_enum)]
        complex: ComplexArg,
        /// Cohomological degree (>= 1).
        #[arg(long)]
        degree: usize,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Deformation-jet operations.
    #[command(subcommand)]
    Deform(DeformCommand),
    /// Abelian-extension operations.
    #[command(subcommand)]
    Extend(ExtendCommand),
    /// Emit the induced pair (twisted bracket, same operators and weight).
    Induce {
        pair: PathBuf,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Emit the semidirect product of a representation document.
    Semidirect {
        representation: PathBuf,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Run the full claim battery and print one verdict line per claim.
    PaperCheck {
        /// Seed for the randomized evidence.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample-count multiplier (>= 1).
        #[arg(long, default_value_t = 4)]
        trials: usize,
        #[command(flatten)]
        format: FormatArg,
    },
}

#[derive(Subcommand)]
enum DeformCommand {
    /// Check the order-n equations of a jet over a base pair.
    Check {
        pair: PathBuf,
        jet: PathBuf,
        /// Check a single order instead of all orders up to the jet's.
        #[arg(long)]
        order: Option<usize>,
        #[command(flatten)]
        format: FormatArg,
    },
}

#[derive(Subcommand)]
enum ExtendCommand {
    /// Build the extension classified by a cocycle triple and emit its
    /// total pair document.
    Build {
        pair: PathBuf,
        fiber: PathBuf,
        cocycle: PathBuf,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Decide whether two cocycle triples build equivalent extensions.
    Classify {
        pair: PathBuf,
        fiber: PathBuf,
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        format: FormatArg,
    },
}

/// Failure that maps to exit code 2: malformed input, unreadable files,
/// out-of-range degrees.
struct InputError(String);

/// Failure that maps to exit code 1: some identity is violated. Carries
/// the already-rendered report.
struct IdentityFailure(String);

enum CmdError {
    Input(InputError),
    Identity(IdentityFailure),
}

impl From<InputError> for CmdError {
    fn from(e: InputError) -> Self {
        CmdError::Input(e)
    }
}

impl From<IdentityFailure> for CmdError {
    fn from(e: IdentityFailure) -> Self {
        CmdError::Identity(e)
    }
}

fn read_file(path: &PathBuf) -> Result<String, InputError> {
    std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T, InputError> {
    serde_json::from_str(text).map_err(|e| InputError(format!("malformed {what}: {e}")))
}

fn load_pair(path: &PathBuf) -> Result<MrbPair, InputError> {
    let text = read_file(path)?;
    let doc: json::PairDoc = parse_json(&text, "pair document")?;
    json::pair_from_doc(&doc).map_err(|e| InputError(format!("pair document: {e}")))
}

fn load_representation(path: &PathBuf) -> Result<Representation, InputError> {
    let text = read_file(path)?;
    let doc: json::RepresentationDoc = parse_json(&text, "representation document")?;
    json::representation_from_doc(&doc)
        .map_err(|e| InputError(format!("representation document: {e}")))
}

fn render_report(header: &str, report: &Report) -> String {
    let mut out = String::new();
    if report.is_valid() {
        let _ = writeln!(out, "{header}: VALID");
    } else {
        let _ = writeln!(out, "{header}: INVALID");
        for v in &report.violations {
            let _ = writeln!(out, "  violation {v}");
        }
    }
    out
}

fn require_valid_pair(pair: &MrbPair, what: &str) -> Result<(), IdentityFailure> {
    let report = pair.validate();
    if report.is_valid() {
        Ok(())
    } else {
        Err(IdentityFailure(render_report(what, &report)))
    }
}

fn cmd_verify(document: &PathBuf, format: Format) -> Result<String, CmdError> {
    let text = read_file(document)?;
    let value: serde_json::Value = parse_json(&text, "document")?;
    let is_representation = value.get("dimV").is_some();
    let report = if is_representation {
        let doc: json::RepresentationDoc = parse_json(&text, "representation document")?;
        let rep = json::representation_from_doc(&doc)
            .map_err(|e| InputError(format!("representation document: {e}")))?;
        let mut report = rep.pair.validate();
        report.merge(rep.validate_data());
        report
    } else {
        let doc: json::PairDoc = parse_json(&text, "pair document")?;
        let pair =
            json::pair_from_doc(&doc).map_err(|e| InputError(format!("pair document: {e}")))?;
        pair.validate()
    };
    let rendered = match format {
        Format::Text => render_report("verify", &report),
        Format::Json => {
            let violations: Vec<serde_json::Value> = report
                .violations
                .iter()
                .map(|v| {
                    serde_json::json!({
                        "law": v.law.to_string(),
                        "indices": v.indices,
                        "lhs": v.lhs.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                        "rhs": v.rhs.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            format!(
                "{}\n",
                serde_json::to_string_pretty(&serde_json::json!({
                    "valid": report.is_valid(),
                    "violations": violations,
                }))
                .expect("report serializes")
            )
        }
    };
    if report.is_valid() {
        Ok(rendered)
    } else {
        Err(IdentityFailure(rendered).into())
    }
}

fn cmd_cohomology(
    pair_path: &PathBuf,
    representation: &str,
    kind: ComplexKind,
    degree: usize,
    format: Format,
) -> Result<String, CmdError> {
    let pair = load_pair(pair_path)?;
    require_valid_pair(&pair, "pair")?;
    let rep = if representation == "adjoint" {
        Representation::adjoint(&pair)
    } else {
        let rep = load_representation(&PathBuf::from(representation))?;
        if rep.pair != pair {
            return Err(InputError(
                "representation document embeds a different pair than the one supplied".into(),
            )
            .into());
        }
        rep
    };
    let rep_report = rep.validate_data();
    if !rep_report.is_valid() {
        return Err(IdentityFailure(render_report("representation", &rep_report)).into());
    }
    let result = cohomology(&rep, kind, degree, PhiVariant::Corrected)
        .map_err(|e| InputError(format!("{e}")))?;
    let doc = json::cohomology_to_doc(&rep, &result);
    let rendered = match format {
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "cohomology complex={} degree={}", result.kind.name(), degree);
            let _ = writeln!(out, "  dim space        = {}", result.dim_space);
            let _ = writeln!(out, "  dim cocycles     = {}", result.dim_cocycles);
            let _ = writeln!(out, "  dim coboundaries = {}", result.dim_coboundaries);
            let _ = writeln!(out, "  dim cohomology   = {}", result.dim_cohomology);
            for (i, r) in doc.representatives.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "  representative[{i}] = {}",
                    serde_json::to_string(r).expect("element serializes")
                );
            }
            out
        }
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&doc).expect("result serializes")
        ),
    };
    Ok(rendered)
}

fn render_order_report(report: &OrderReport) -> String {
    let mut out = String::new();
    if report.is_valid() {
        let _ = writeln!(out, "order {}: PASS", report.order);
    } else {
        let _ = writeln!(out, "order {}: FAIL", report.order);
        for v in &report.violations {
            let idx: Vec<String> = v.indices.iter().map(|i| i.to_string()).collect();
            let res: Vec<String> = v.residual.iter().map(|r| r.to_string()).collect();
            let _ = writeln!(
                out,
                "  residual {} at ({}): [{}]",
                v.law,
                idx.join(","),
                res.join(", ")
            );
        }
    }
    out
}

fn cmd_deform_check(
    pair_path: &PathBuf,
    jet_path: &PathBuf,
    order: Option<usize>,
    format: Format,
) -> Result<String, CmdError> {
    let pair = load_pair(pair_path)?;
    require_valid_pair(&pair, "pair")?;
    let text = read_file(jet_path)?;
    let doc: json::JetDoc = parse_json(&text, "jet document")?;
    let jet = json::jet_from_doc(&doc, &pair)
        .map_err(|e| InputError(format!("jet document: {e}")))?;
    if let Some(n) = order {
        if n < 1 || n > jet.order {
            return Err(InputError(format!(
                "flag --order: {n} is outside 1..={}",
                jet.order
            ))
            .into());
        }
    }
    let reports = match order {
        Some(n) => vec![check_order(&jet, n)],
        None => check_all_orders(&jet),
    };
    let all_ok = reports.iter().all(OrderReport::is_valid);
    let rendered = match format {
        Format::Text => {
            let mut out = String::from("deform check\n");
            for r in &reports {
                out.push_str(&render_order_report(r));
            }
            let _ = writeln!(out, "result: {}", if all_ok { "PASS" } else { "FAIL" });
            out
        }
        Format::Json => {
            let orders: Vec<serde_json::Value> = reports
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "order": r.order,
                        "pass": r.is_valid(),
                        "violations": r.violations.iter().map(|v| serde_json::json!({
                            "law": v.law.to_string(),
                            "indices": v.indices,
                            "residual": v.residual.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect();
            format!(
                "{}\n",
                serde_json::to_string_pretty(&serde_json::json!({
                    "pass": all_ok,
                    "orders": orders,
                }))
                .expect("report serializes")
            )
        }
    };
    if all_ok {
        Ok(rendered)
    } else {
        Err(IdentityFailure(rendered).into())
    }
}

fn load_fiber(path: &PathBuf) -> Result<mrbld::extension::AbelianFiber, InputError> {
    let text = read_file(path)?;
    let doc: json::FiberDoc = parse_json(&text, "fiber document")?;
    json::fiber_from_doc(&doc).map_err(|e| InputError(format!("fiber document: {e}")))
}

fn load_triple(
    path: &PathBuf,
    base_dim: usize,
    fiber_dim: usize,
) -> Result<mrbld::extension::CocycleTriple, InputError> {
    let text = read_file(path)?;
    let doc: json::TripleDoc = parse_json(&text, "cocycle document")?;
    json::triple_from_doc(&doc, base_dim, fiber_dim)
        .map_err(|e| InputError(format!("cocycle document: {e}")))
}

fn render_extension_error(e: &ExtensionError) -> CmdError {
    match e {
        ExtensionError::NotCocycle { .. } | ExtensionError::InvalidFiber(_)
        | ExtensionError::InvalidPair(_) | ExtensionError::InvalidExtension(_) => {
            CmdError::Identity(IdentityFailure(format!("extend: {e}\n")))
        }
    }
}

fn cmd_extend_build(
    pair_path: &PathBuf,
    fiber_path: &PathBuf,
    cocycle_path: &PathBuf,
    _format: Format,
) -> Result<String, CmdError> {
    let pair = load_pair(pair_path)?;
    let fiber = load_fiber(fiber_path)?;
    let triple = load_triple(cocycle_path, pair.dim(), fiber.dim)?;
    let ext = build_extension(&pair, &fiber, &triple).map_err(|e| render_extension_error(&e))?;
    let doc = json::pair_to_doc(&ext.total);
    Ok(format!(
        "{}\n",
        serde_json::to_string_pretty(&doc).expect("pair document serializes")
    ))
}

fn cmd_extend_classify(
    pair_path: &PathBuf,
    fiber_path: &PathBuf,
    first: &PathBuf,
    second: &PathBuf,
    format: Format,
) -> Result<String, CmdError> {
    let pair = load_pair(pair_path)?;
    let fiber = load_fiber(fiber_path)?;
    let t1 = load_triple(first, pair.dim(), fiber.dim)?;
    let t2 = load_triple(second, pair.dim(), fiber.dim)?;
    let outcome = classify(&pair, &fiber, &t1, &t2).map_err(|e| render_extension_error(&e))?;
    let rendered = match (&outcome, format) {
        (ClassifyOutcome::Equivalent { witness, morphism_report }, Format::Text) => {
            let mut out = String::from("classify: EQUIVALENT\n");
            let _ = writeln!(out, "  morphism: {}", if morphism_report.is_valid() { "VALID" } else { "INVALID" });
            let rows: Vec<Vec<String>> = (0..witness.rows())
                .map(|i| (0..witness.cols()).map(|j| witness[(i, j)].to_string()).collect())
                .collect();
            let _ = writeln!(
                out,
                "  witness = {}",
                serde_json::to_string(&rows).expect("matrix serializes")
            );
            out
        }
        (ClassifyOutcome::Inequivalent, Format::Text) => "classify: INEQUIVALENT\n".into(),
        (outcome, Format::Json) => {
            let value = match outcome {
                ClassifyOutcome::Equivalent { witness, morphism_report } => {
                    let rows: Vec<Vec<String>> = (0..witness.rows())
                        .map(|i| {
                            (0..witness.cols()).map(|j| witness[(i, j)].to_string()).collect()
                        })
                        .collect();
                    serde_json::json!({
                        "equivalent": true,
                        "witness": rows,
                        "morphismValid": morphism_report.is_valid(),
                    })
                }
                ClassifyOutcome::Inequivalent => serde_json::json!({ "equivalent": false }),
            };
            format!("{}\n", serde_json::to_string_pretty(&value).expect("serializes"))
        }
    };
    Ok(rendered)
}

fn cmd_induce(pair_path: &PathBuf, _format: Format) -> Result<String, CmdError> {
    let pair = load_pair(pair_path)?;
    let induced = pair
        .induced_pair()
        .map_err(|e| IdentityFailure(format!("induce: {e}\n")))?;
    let doc = json::pair_to_doc(&induced);
    Ok(format!(
        "{}\n",
        serde_json::to_string_pretty(&doc).expect("pair document serializes")
    ))
}

fn cmd_semidirect(rep_path: &PathBuf, _format: Format) -> Result<String, CmdError> {
    let rep = load_representation(rep_path)?;
    let total = mrbld::algebra::semidirect_product(&rep)
        .map_err(|e| IdentityFailure(format!("semidirect: {e}\n")))?;
    let doc = json::pair_to_doc(&total);
    Ok(format!(
        "{}\n",
        serde_json::to_string_pretty(&doc).expect("pair document serializes")
    ))
}

fn cmd_paper_check(seed: u64, trials: usize, format: Format) -> Result<String, CmdError> {
    if trials < 1 {
        return Err(InputError("flag --trials: must be at least 1".into()).into());
    }
    let report = run_claims(seed, trials);
    let rendered = match format {
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "paper-check seed={} trials={}", report.seed, report.trials);
            for line in &report.lines {
                let _ = writeln!(out, "{:<8} {}: {}", line.verdict.to_string(), line.name, line.detail);
            }
            let findings = report
                .lines
                .iter()
                .filter(|l| l.verdict == Verdict::Finding)
                .count();
            let _ = writeln!(
                out,
                "result: {} ({} finding{})",
                if report.all_pass() { "PASS" } else { "FAIL" },
                findings,
                if findings == 1 { "" } else { "s" }
            );
            out
        }
        Format::Json => {
            let lines: Vec<serde_json::Value> = report
                .lines
                .iter()
                .map(|l| {
                    serde_json::json!({
                        "name": l.name,
                        "verdict": l.verdict.to_string(),
                        "detail": l.detail,
                    })
                })
                .collect();
            format!(
                "{}\n",
                serde_json::to_string_pretty(&serde_json::json!({
                    "seed": report.seed,
                    "trials": report.trials,
                    "pass": report.all_pass(),
                    "lines": lines,
                }))
                .expect("report serializes")
            )
        }
    };
    if report.all_pass() {
        Ok(rendered)
    } else {
        Err(IdentityFailure(rendered).into())
    }
}

fn dispatch(cli: Cli) -> Result<String, CmdError> {
    match cli.command {
        Command::Verify { document, format } => cmd_verify(&document, format.format),
        Command::Cohomology {
            pair,
            representation,
            complex,
            degree,
            format,
        } => cmd_cohomology(&pair, &representation, complex.into(), degree, format.format),
        Command::Deform(DeformCommand::Check {
            pair,
            jet,
            order,
            format,
        }) => cmd_deform_check(&pair, &jet, order, format.format),
        Command::Extend(ExtendCommand::Build {
            pair,
            fiber,
            cocycle,
            format,
        }) => cmd_extend_build(&pair, &fiber, &cocycle, format.format),
        Command::Extend(ExtendCommand::Classify {
            pair,
            fiber,
            first,
            second,
            format,
        }) => cmd_extend_classify(&pair, &fiber, &first, &second, format.format),
        Command::Induce { pair, format } => cmd_induce(&pair, format.format),
        Command::Semidirect {
            representation,
            format,
        } => cmd_semidirect(&representation, format.format),
        Command::PaperCheck {
            seed,
            trials,
            format,
        } => cmd_paper_check(seed, trials, format.format),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints its own help/version output on stdout with code 0
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match dispatch(cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(CmdError::Identity(IdentityFailure(output))) => {
            print!("{output}");
            ExitCode::from(1)
        }
        Err(CmdError::Input(InputError(message))) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
