//! `sdr`: exact cohomology, de Rham, and bar-construction checks from JSON fixtures.
//!
//! Exit codes: 0 pass, 1 failure (including invalid input), 2 usage error,
//! 3 inconclusive or warning.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sdr_core::bar::{emss_check, reduced_bar, Bigraded, EmssStatus, FiniteDGA};
use sdr_core::cochain::{cochain_complex, cup_vectors};
use sdr_core::derham::{derham_check, DerhamReport, Verdict};
use sdr_core::forms::{integrate, FormJson, SimplicialForm};
use sdr_core::homalg::{cohomology, CohomologyReport, Window};
use sdr_core::rational::format_q;
use sdr_core::sset::FiniteSimplicialSet;

#[derive(Parser)]
#[command(name = "sdr", version, about = "Exact simplicial de Rham and bar-construction checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Degree window, `A..B` (inclusive).
    #[arg(long, default_value = "0..6")]
    window: Window,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Cohomology and cup products of a simplicial set.
    Cohomology {
        input: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Compare polynomial forms with simplicial cochains.
    DerhamCheck {
        input: PathBuf,
        /// Escalation limit for the truncation bound.
        #[arg(long, default_value_t = 8)]
        max_poly_degree: u32,
        /// Also validate and integrate this form fixture.
        #[arg(long)]
        form: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Cohomology of the reduced bar complex of a DGA.
    Bar {
        input: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Bar-length spectral sequence against Tor of the cohomology.
    Emss {
        input: PathBuf,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    fn code(self) -> ExitCode {
        match self {
            Status::Pass => ExitCode::SUCCESS,
            Status::Fail => ExitCode::from(1),
            Status::Inconclusive => ExitCode::from(3),
        }
    }
}

struct Rendered {
    status: Status,
    json: Value,
    table: String,
}

/// File name only, so reports do not depend on where fixtures live.
fn shown(path: &Path) -> String {
    path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned())
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", shown(path)))
}

fn load_set(path: &Path) -> Result<Arc<FiniteSimplicialSet>, String> {
    let text = read(path)?;
    FiniteSimplicialSet::from_json_str(&text)
        .map(Arc::new)
        .map_err(|e| format!("{}: {e}", shown(path)))
}

fn load_dga(path: &Path) -> Result<FiniteDGA, String> {
    let text = read(path)?;
    FiniteDGA::from_json_str(&text).map_err(|e| format!("{}: {e}", shown(path)))
}

fn report_json(k: &FiniteSimplicialSet, r: &CohomologyReport) -> Value {
    let label = |deg: usize, i: usize| k.name(k.generators_in_dim(deg)[i]).to_string();
    r.to_json(&label)
}

fn dims_row(window: Window, dims: &[usize]) -> String {
    window
        .degrees()
        .zip(dims)
        .map(|(k, d)| format!("H^{k}={d}"))
        .collect::<Vec<_>>()
        .join("  ")
}

fn run_cohomology(input: &Path, window: Window) -> Result<Rendered, String> {
    let k = load_set(input)?;
    let c = cochain_complex(&k);
    let r = cohomology(&c, window)
        .with_products(|p, a, q, b| cup_vectors(&k, p, a, q, b))
        .map_err(|e| e.to_string())?;
    let mut table = format!("cohomology of {k}\nwindow {window}\n{}\n", dims_row(window, &r.dims()));
    for s in r.ring.iter().flatten().filter(|s| !s.coefficients.is_empty()) {
        let terms: Vec<String> = s.coefficients.iter().map(|(i, c)| format!("{c}·[{}:{i}]", s.degree)).collect();
        let _ = writeln!(
            table,
            "[{}:{}] ⌣ [{}:{}] = {}",
            s.left.0,
            s.left.1,
            s.right.0,
            s.right.1,
            terms.join(" + ")
        );
    }
    Ok(Rendered {
        status: Status::Pass,
        json: json!({ "command": "cohomology", "report": report_json(&k, &r) }),
        table,
    })
}

fn derham_table(r: &DerhamReport) -> String {
    let mut t = format!("verdict {}\nwindow {}\n", r.verdict, r.window);
    let _ = writeln!(t, "cochains       {}", dims_row(r.window, &r.cochain_dims));
    for s in &r.history {
        let _ = writeln!(t, "weight ≤ {:<5} {}", s.max_weight, dims_row(r.window, &s.dims));
    }
    if let Some(d) = r.stabilized_at {
        let _ = writeln!(t, "stabilized at {d}");
    }
    if let Some(w) = &r.integration {
        let dets: Vec<String> = w.determinants.iter().map(|(k, d)| format!("{k}:{d}")).collect();
        let _ = writeln!(t, "integration quasi-iso {} (determinants {})", w.holds, dets.join(" "));
    }
    if let Some(b) = r.whitney_round_trip {
        let _ = writeln!(t, "whitney round trip {b}");
    }
    for p in &r.products {
        let _ = writeln!(
            t,
            "product [{}:{}]·[{}:{}] {}{}",
            p.left.0,
            p.left.1,
            p.right.0,
            p.right.1,
            if p.holds { "agrees" } else { "DISAGREES" },
            if p.nonzero { " (nonzero)" } else { "" }
        );
    }
    for m in &r.messages {
        let _ = writeln!(t, "note: {m}");
    }
    t
}

fn form_section(k: &Arc<FiniteSimplicialSet>, path: &Path) -> Result<(bool, Value, String), String> {
    let json: FormJson = serde_json::from_str(&read(path)?).map_err(|e| format!("{}: {e}", shown(path)))?;
    let f = SimplicialForm::from_json(k.clone(), &json).map_err(|e| format!("{}: {e}", shown(path)))?;
    if let Err(v) = f.validate() {
        let pairs: Vec<Value> = v.iter().map(|x| json!({"generator": x.generator, "face": x.face})).collect();
        let text = v.iter().map(|x| format!("({}, {})", x.generator, x.face)).collect::<Vec<_>>().join(" ");
        return Ok((
            false,
            json!({"valid": false, "violations": pairs}),
            format!("form INVALID, failing (generator, face): {text}\n"),
        ));
    }
    let int = integrate(&f).map_err(|e| e.to_string())?;
    let dint = integrate(&f.d()).map_err(|e| e.to_string())?;
    let stokes = dint == int.coboundary();
    let p = f.degree();
    let values: serde_json::Map<String, Value> = int
        .values()
        .iter()
        .map(|(i, c)| (k.name(k.generators_in_dim(p)[i]).to_string(), Value::String(format_q(c))))
        .collect();
    let text = format!(
        "form degree {p} valid; ∫ω = {}; stokes {}\n",
        values.iter().map(|(n, v)| format!("{n}:{}", v.as_str().unwrap_or(""))).collect::<Vec<_>>().join(" "),
        stokes
    );
    Ok((stokes, json!({"valid": true, "degree": p, "integral": values, "stokes": stokes}), text))
}

fn run_derham(input: &Path, window: Window, limit: u32, form: Option<&Path>) -> Result<Rendered, String> {
    let k = match load_set(input) {
        Ok(k) => k,
        Err(e) => {
            return Ok(Rendered {
                status: Status::Fail,
                json: json!({ "command": "derham-check", "verdict": "FAIL", "stage": "validation", "error": e }),
                table: format!("verdict FAIL (validation)\n{e}\n"),
            })
        }
    };
    let r = derham_check(k.clone(), window, limit).map_err(|e| e.to_string())?;
    let mut status = match r.verdict {
        Verdict::Pass => Status::Pass,
        Verdict::Fail => Status::Fail,
        Verdict::Inconclusive => Status::Inconclusive,
    };
    let mut json = json!({ "command": "derham-check", "verdict": r.verdict, "report": r });
    let mut table = derham_table(&r);
    if let Some(path) = form {
        let (ok, v, text) = form_section(&k, path)?;
        if !ok {
            status = Status::Fail;
            json["verdict"] = json!(Verdict::Fail);
        }
        json["form"] = v;
        table.push_str(&text);
    }
    Ok(Rendered { status, json, table })
}

fn run_bar(input: &Path, window: Window) -> Result<Rendered, String> {
    let a = load_dga(input)?;
    let b = reduced_bar(&a, window.hi).map_err(|e| e.to_string())?;
    let r = b.cohomology(window).map_err(|e| e.to_string())?;
    let label = |deg: usize, i: usize| b.label(&b.words(deg)[i]);
    let table = format!("reduced bar complex\nwindow {window}\n{}\n", dims_row(window, &r.dims()));
    Ok(Rendered {
        status: Status::Pass,
        json: json!({ "command": "bar", "report": r.to_json(&label) }),
        table,
    })
}

fn bigraded_line(entries: &[Bigraded]) -> String {
    if entries.is_empty() {
        return "0".into();
    }
    entries
        .iter()
        .map(|e| format!("({},{}):{}", e.p, e.q, e.dim))
        .collect::<Vec<_>>()
        .join(" ")
}

fn run_emss(input: &Path, window: Window) -> Result<Rendered, String> {
    let a = load_dga(input)?;
    let r = emss_check(&a, window).map_err(|e| e.to_string())?;
    let status = match r.status {
        EmssStatus::Pass => Status::Pass,
        EmssStatus::Fail => Status::Fail,
        EmssStatus::Warning => Status::Inconclusive,
    };
    let mut table = format!("status {}\nwindow {window}\n", r.status);
    let _ = writeln!(table, "bar        {}", dims_row(window, &r.bar_dims));
    let _ = writeln!(table, "E_2        {}", bigraded_line(&r.e2));
    let _ = writeln!(table, "Tor        {}", bigraded_line(&r.tor));
    let _ = writeln!(table, "E_∞ totals {}", dims_row(window, &r.e_infinity_totals));
    let _ = writeln!(
        table,
        "E_2 = Tor {}  E_∞ = H {}  page turn {}  B(A,A,k) acyclic {}",
        r.e2_matches_tor, r.e_infinity_matches, r.page_turn_holds, r.two_sided_acyclic
    );
    for m in &r.messages {
        let _ = writeln!(table, "note: {m}");
    }
    Ok(Rendered {
        status,
        json: json!({ "command": "emss", "status": r.status, "report": r }),
        table,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, output) = match &cli.command {
        Command::Cohomology { input, output } => (run_cohomology(input, output.window), output),
        Command::DerhamCheck {
            input,
            max_poly_degree,
            form,
            output,
        } => (run_derham(input, output.window, *max_poly_degree, form.as_deref()), output),
        Command::Bar { input, output } => (run_bar(input, output.window), output),
        Command::Emss { input, output } => (run_emss(input, output.window), output),
    };
    let rendered = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let text = match output.format {
        Format::Json => serde_json::to_string_pretty(&rendered.json).expect("reports serialize") + "\n",
        Format::Table => rendered.table,
    };
    match &output.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    rendered.status.code()
}
