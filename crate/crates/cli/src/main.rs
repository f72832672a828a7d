//! `frobsub` command-line interface.
//!
//! Exit codes: 0 when every requested check passes, 1 when a mathematical
//! verdict fails (the residual or mismatch is printed), 2 for usage and
//! input errors. Machine output goes to stdout; diagnostics to stderr.

use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use frobsub_core::coxeter::{
    builtin_natural_points, naturality_conditions, nested_chain_check, verify_natural_points,
    Catalog,
};
use frobsub_core::frobenius::{euler_check, wdvv_check, FrobeniusSpec};
use frobsub_core::gwcounts::{
    build_cp2_spec, build_p1p1_spec, contract, contracted_recursion_report, contracted_reference,
    cp2_counts, cp2_phi_ode_check, cp2_radius_probe, quadric_counts, quadric_cross_check,
};
use frobsub_core::poly::{parse_terms, PuiseuxPoly, VarSet};
use frobsub_core::scalar::Rational;
use frobsub_core::submanifold::{
    gauss_codazzi_check, induce, second_fundamental_form, SubmanifoldMap,
};
use frobsub_core::Error as CoreError;

#[derive(Parser)]
#[command(name = "frobsub", version, about = "Exact checks for Frobenius structures, submanifolds and curve counts")]
struct Cli {
    /// Output format. TSV is accepted only for purely tabular reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Catalog inspection.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Structural checks on a named spec.
    Check {
        #[command(subcommand)]
        action: CheckAction,
    },
    /// Induced-structure analysis of a parametrized submanifold.
    Submanifold {
        #[command(subcommand)]
        action: SubmanifoldAction,
    },
    /// Naturality conditions of a group's two-dimensional family.
    NaturalRoots {
        group: String,
        /// Also substitute the known rational points and report each.
        #[arg(long)]
        verify_points: bool,
    },
    /// Rational curve counting tables.
    Gw {
        #[command(subcommand)]
        action: GwAction,
    },
    /// Verify the nested sequence of natural submanifolds.
    NestedChain,
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List the embedded (or overridden) catalog entries.
    List,
}

#[derive(Subcommand)]
enum CheckAction {
    /// Associativity as exact polynomial identities.
    Wdvv(CheckTarget),
    /// Quasihomogeneity; prints the scaling weight.
    Euler(CheckTarget),
}

#[derive(Args)]
struct CheckTarget {
    /// Catalog name, or CP2 / P1xP1 for the truncated quantum specs.
    name: String,
    /// Truncation order for CP2 / P1xP1.
    #[arg(long, default_value_t = 6)]
    max_n: u32,
}

#[derive(Subcommand)]
enum SubmanifoldAction {
    /// Compute every induced structure and verdict for a map file.
    Analyze {
        /// Spec JSON (variables, terms, weights, shifts).
        #[arg(long)]
        spec: String,
        /// Map JSON (variable lists and component term lists).
        #[arg(long)]
        map: String,
    },
}

#[derive(Subcommand)]
enum GwAction {
    /// Plane counts via the degree recursion.
    Cp2 {
        #[arg(long)]
        max_n: u32,
        /// Verify the third-order series equation coefficient-wise.
        #[arg(long)]
        check_ode: bool,
        /// Floating-point boundary probe (needs max-n >= 8).
        #[arg(long)]
        radius_probe: bool,
    },
    /// Quadric counts via the bidegree recursion.
    P1p1 {
        #[arg(long)]
        max_n: u32,
        /// Verify all four recursion relations on the table.
        #[arg(long)]
        cross_check: bool,
        /// Emit contracted row sums and compare with the reference table.
        #[arg(long)]
        contract: bool,
        /// Evaluate the closed-form candidate recursion (diagnostic).
        #[arg(long)]
        report_contracted_recursion: bool,
    },
}

enum Failure {
    /// A mathematical verdict failed; exit 1.
    Check(String),
    /// Bad usage or input; exit 2.
    Usage(String),
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Input(_)
            | CoreError::UnknownVariable(_)
            | CoreError::VariableMismatch(_) => Failure::Usage(e.to_string()),
            other => Failure::Check(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let human = cli.format == Format::Human;
    let code = match run(cli) {
        Ok(()) => 0,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    };
    if human {
        eprintln!("# elapsed: {} ms", started.elapsed().as_millis());
    }
    ExitCode::from(code)
}

fn load_catalog() -> Result<Catalog, Failure> {
    match std::env::var_os("FROBSUB_CATALOG") {
        Some(path) => {
            let text = fs::read_to_string(&path).map_err(|e| {
                Failure::Usage(format!("cannot read catalog {}: {e}", path.to_string_lossy()))
            })?;
            Ok(Catalog::from_json(&text)?)
        }
        None => Ok(Catalog::builtin()),
    }
}

fn named_spec(catalog: &Catalog, name: &str, max_n: u32) -> Result<FrobeniusSpec, Failure> {
    match name.to_ascii_uppercase().as_str() {
        "CP2" => Ok(build_cp2_spec(&cp2_counts(max_n)?)?),
        "P1XP1" | "P1P1" => Ok(build_p1p1_spec(&quadric_counts(max_n)?)?),
        _ => Ok(catalog.get(name)?.spec.clone()),
    }
}

fn emit_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable report"));
}

fn human_poly(p: &PuiseuxPoly) -> String {
    if p.term_count() <= 10 {
        p.to_string()
    } else {
        format!("<{} terms>", p.term_count())
    }
}

fn reject_tsv(format: Format) -> Result<(), Failure> {
    if format == Format::Tsv {
        return Err(Failure::Usage("TSV output is only available for tables".into()));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Catalog { action: CatalogAction::List } => catalog_list(cli.format),
        Command::Check { action } => match action {
            CheckAction::Wdvv(t) => check_wdvv(cli.format, &t),
            CheckAction::Euler(t) => check_euler(cli.format, &t),
        },
        Command::Submanifold { action: SubmanifoldAction::Analyze { spec, map } } => {
            analyze(cli.format, &spec, &map)
        }
        Command::NaturalRoots { group, verify_points } => {
            natural_roots(cli.format, &group, verify_points)
        }
        Command::Gw { action } => match action {
            GwAction::Cp2 { max_n, check_ode, radius_probe } => {
                gw_cp2(cli.format, max_n, check_ode, radius_probe)
            }
            GwAction::P1p1 { max_n, cross_check, contract, report_contracted_recursion } => {
                gw_p1p1(cli.format, max_n, cross_check, contract, report_contracted_recursion)
            }
        },
        Command::NestedChain => nested_chain(cli.format),
    }
}

#[derive(Serialize)]
struct CatalogRow {
    name: String,
    exponents: Vec<u32>,
    coxeter_number: u32,
    dimension: usize,
}

fn catalog_list(format: Format) -> Result<(), Failure> {
    let catalog = load_catalog()?;
    let rows: Vec<CatalogRow> = catalog
        .entries()
        .iter()
        .map(|e| CatalogRow {
            name: e.name.clone(),
            exponents: e.exponents.clone(),
            coxeter_number: e.coxeter_number(),
            dimension: e.spec.dim(),
        })
        .collect();
    match format {
        Format::Human => {
            for r in &rows {
                println!(
                    "{}  h={}  dim={}  exponents={:?}",
                    r.name, r.coxeter_number, r.dimension, r.exponents
                );
            }
        }
        Format::Json => emit_json(&rows),
        Format::Tsv => {
            for r in &rows {
                println!("{}\t{}\t{}", r.name, r.coxeter_number, r.dimension);
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct CheckReport {
    name: String,
    check: String,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    scaling_weight: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
}

fn check_wdvv(format: Format, target: &CheckTarget) -> Result<(), Failure> {
    reject_tsv(format)?;
    let catalog = load_catalog()?;
    let spec = named_spec(&catalog, &target.name, target.max_n)?;
    let verdict = wdvv_check(&spec)?;
    let report = CheckReport {
        name: target.name.clone(),
        check: "wdvv".into(),
        pass: verdict.pass,
        scaling_weight: None,
        witness: verdict
            .witness
            .as_ref()
            .map(|w| format!("indices {:?}: {}", w.indices, w.residual)),
    };
    match format {
        Format::Human => {
            println!("wdvv {}: {}", report.name, if report.pass { "PASS" } else { "FAIL" });
            if let Some(w) = &report.witness {
                println!("residual {w}");
            }
        }
        Format::Json => emit_json(&report),
        Format::Tsv => unreachable!(),
    }
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Check(format!("wdvv fails for {}", report.name)))
    }
}

fn check_euler(format: Format, target: &CheckTarget) -> Result<(), Failure> {
    reject_tsv(format)?;
    let catalog = load_catalog()?;
    let spec = named_spec(&catalog, &target.name, target.max_n)?;
    let d_f = euler_check(&spec)?;
    let report = CheckReport {
        name: target.name.clone(),
        check: "euler".into(),
        pass: true,
        scaling_weight: Some(d_f.clone()),
        witness: None,
    };
    match format {
        Format::Human => println!("euler {}: PASS (scaling weight {d_f})", report.name),
        Format::Json => emit_json(&report),
        Format::Tsv => unreachable!(),
    }
    Ok(())
}

#[derive(serde::Deserialize)]
struct MapFile {
    ambient_variables: Vec<String>,
    #[serde(default)]
    ambient_exponential: Vec<(String, String)>,
    tau_variables: Vec<String>,
    #[serde(default)]
    tau_exponential: Vec<(String, String)>,
    n: usize,
    components: Vec<String>,
}

fn load_map(text: &str) -> Result<SubmanifoldMap, Failure> {
    let file: MapFile =
        serde_json::from_str(text).map_err(|e| Failure::Usage(format!("bad map file: {e}")))?;
    let mut ambient = VarSet::ordinary(&file.ambient_variables);
    for (name, base) in &file.ambient_exponential {
        ambient = ambient.with_exponential(name, base)?;
    }
    let mut target = VarSet::ordinary(&file.tau_variables);
    for (name, base) in &file.tau_exponential {
        target = target.with_exponential(name, base)?;
    }
    let components = file
        .components
        .iter()
        .map(|c| parse_terms(&target, c))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SubmanifoldMap::new(ambient, target, file.n, components)?)
}

#[derive(Serialize)]
struct TensorEntry {
    indices: Vec<usize>,
    value: PuiseuxPoly,
}

#[derive(Serialize)]
struct ResidualEntry {
    alpha: usize,
    beta: usize,
    components: Vec<PuiseuxPoly>,
}

#[derive(Serialize)]
struct AnalyzeReport {
    induced_metric: Vec<Vec<Rational>>,
    induced_structure: Vec<TensorEntry>,
    euler: Vec<PuiseuxPoly>,
    euler_tangent: bool,
    natural: bool,
    residuals: Vec<ResidualEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    gauss_codazzi: Option<frobsub_core::submanifold::GaussCodazziVerdict>,
}

fn analyze(format: Format, spec_path: &str, map_path: &str) -> Result<(), Failure> {
    reject_tsv(format)?;
    let spec_text = fs::read_to_string(spec_path)
        .map_err(|e| Failure::Usage(format!("cannot read {spec_path}: {e}")))?;
    let map_text = fs::read_to_string(map_path)
        .map_err(|e| Failure::Usage(format!("cannot read {map_path}: {e}")))?;
    let spec = FrobeniusSpec::from_file_json(&spec_text)?;
    let map = load_map(&map_text)?;
    let ind = induce(&map, &spec)?;

    let n = map.n();
    let m = spec.dim();
    let mut c_entries = Vec::new();
    for a in 0..n {
        for b in a..n {
            for g in b..n {
                c_entries.push(TensorEntry {
                    indices: vec![a + 1, b + 1, g + 1],
                    value: ind.c_n.get(a, b, g).clone(),
                });
            }
        }
    }
    let gc = if m == n + 1 {
        let sff = second_fundamental_form(&map, &spec)?;
        Some(gauss_codazzi_check(&sff, &ind.eta_n, map.target_vars()))
    } else {
        None
    };
    let report = AnalyzeReport {
        induced_metric: (0..n)
            .map(|a| (0..n).map(|b| ind.eta_n.get(a, b).clone()).collect())
            .collect(),
        induced_structure: c_entries,
        euler: ind.euler_n.clone(),
        euler_tangent: ind.euler_tangent,
        natural: ind.natural,
        residuals: ind
            .residuals
            .iter()
            .map(|r| ResidualEntry {
                alpha: r.alpha + 1,
                beta: r.beta + 1,
                components: r.components.clone(),
            })
            .collect(),
        gauss_codazzi: gc,
    };
    match format {
        Format::Human => {
            println!("induced metric:");
            for row in &report.induced_metric {
                let cells: Vec<String> = row.iter().map(Rational::to_string).collect();
                println!("  [{}]", cells.join(", "));
            }
            println!("induced structure functions:");
            for e in &report.induced_structure {
                println!("  c_{:?} = {}", e.indices, human_poly(&e.value));
            }
            println!("projected Euler field:");
            for (a, e) in report.euler.iter().enumerate() {
                println!("  E^{} = {}", a + 1, human_poly(e));
            }
            println!("euler tangent: {}", report.euler_tangent);
            println!("natural: {}", report.natural);
            for r in &report.residuals {
                for (k, c) in r.components.iter().enumerate() {
                    if !c.is_zero() {
                        println!(
                            "  residual ({},{}) component {}: {}",
                            r.alpha,
                            r.beta,
                            k + 1,
                            human_poly(c)
                        );
                    }
                }
            }
            if let Some(gc) = &report.gauss_codazzi {
                println!(
                    "gauss: {}  ricci: {}  codazzi: {}",
                    gc.gauss,
                    gc.ricci,
                    gc.codazzi.map(|b| b.to_string()).unwrap_or_else(|| "n/a".into())
                );
            }
        }
        Format::Json => emit_json(&report),
        Format::Tsv => unreachable!(),
    }
    let verdicts_pass = report.natural
        && report
            .gauss_codazzi
            .as_ref()
            .map(|g| g.all_pass())
            .unwrap_or(true);
    if verdicts_pass {
        Ok(())
    } else {
        Err(Failure::Check("submanifold verdicts failed (see report)".into()))
    }
}

#[derive(Serialize)]
struct NaturalRootsReport {
    group: String,
    coxeter_number: u32,
    conditions: Vec<PuiseuxPoly>,
    points: Vec<PointVerdict>,
}

#[derive(Serialize)]
struct PointVerdict {
    point: Vec<Rational>,
    vanishes: bool,
}

fn natural_roots(format: Format, group: &str, verify_points: bool) -> Result<(), Failure> {
    reject_tsv(format)?;
    let catalog = load_catalog()?;
    let entry = catalog.get(group)?;
    let conditions = naturality_conditions(entry)?;
    let points = if verify_points {
        let pts = builtin_natural_points(&entry.name);
        let verdicts = verify_natural_points(entry, &pts)?;
        pts.into_iter()
            .zip(verdicts)
            .map(|(point, vanishes)| PointVerdict { point, vanishes })
            .collect()
    } else {
        Vec::new()
    };
    let report = NaturalRootsReport {
        group: entry.name.clone(),
        coxeter_number: entry.coxeter_number(),
        conditions,
        points,
    };
    match format {
        Format::Human => {
            println!("group {} (h = {})", report.group, report.coxeter_number);
            if report.conditions.is_empty() {
                println!("no constraints: the family is unconditionally natural");
            }
            for c in &report.conditions {
                println!("condition: {c}");
            }
            for p in &report.points {
                let coords: Vec<String> = p.point.iter().map(Rational::to_string).collect();
                println!(
                    "point ({}): {}",
                    coords.join(", "),
                    if p.vanishes { "zero" } else { "nonzero" }
                );
            }
        }
        Format::Json => emit_json(&report),
        Format::Tsv => unreachable!(),
    }
    if report.points.iter().all(|p| p.vanishes) {
        Ok(())
    } else {
        Err(Failure::Check("a listed point does not satisfy the conditions".into()))
    }
}

#[derive(Serialize)]
struct Cp2Report {
    counts: Vec<(u32, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ode: Option<frobsub_core::gwcounts::OdeVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    radius_probe: Option<frobsub_core::gwcounts::RadiusProbe>,
}

fn gw_cp2(format: Format, max_n: u32, check_ode: bool, radius_probe: bool) -> Result<(), Failure> {
    if format == Format::Tsv && (check_ode || radius_probe) {
        return Err(Failure::Usage(
            "TSV output is only available for the plain table".into(),
        ));
    }
    let table = cp2_counts(max_n)?;
    let counts: Vec<(u32, String)> = (1..=max_n).map(|n| (n, table.get(n).to_string())).collect();
    let ode = check_ode.then(|| cp2_phi_ode_check(&table));
    let probe = if radius_probe { Some(cp2_radius_probe(&table)?) } else { None };
    let report = Cp2Report { counts, ode, radius_probe: probe };
    match format {
        Format::Human => {
            for (n, v) in &report.counts {
                println!("{n}  {v}");
            }
            if let Some(o) = &report.ode {
                println!(
                    "series equation through order {max_n}: {}",
                    if o.pass { "PASS" } else { "FAIL" }
                );
            }
            if let Some(p) = &report.radius_probe {
                println!(
                    "boundary estimate x0 = {:.6}, obstruction residual = {:.6e}, section coefficient = {:.6}",
                    p.x0_estimate, p.obstruction_residual, p.section_coefficient
                );
            }
        }
        Format::Json => emit_json(&report),
        Format::Tsv => {
            for (n, v) in &report.counts {
                println!("{n}\t{v}");
            }
        }
    }
    match &report.ode {
        Some(o) if !o.pass => Err(Failure::Check(format!(
            "series equation fails at order {:?}",
            o.first_mismatch
        ))),
        _ => Ok(()),
    }
}

#[derive(Serialize)]
struct P1p1Report {
    #[serde(skip_serializing_if = "Option::is_none")]
    counts: Option<Vec<(u32, u32, String)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cross_check: Option<frobsub_core::gwcounts::CrossCheckVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    contracted: Option<Vec<(u32, String)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    contracted_matches_reference: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    recursion_report: Option<frobsub_core::gwcounts::ContractedRecursionReport>,
}

fn gw_p1p1(
    format: Format,
    max_n: u32,
    cross: bool,
    contracted: bool,
    recursion: bool,
) -> Result<(), Failure> {
    if format == Format::Tsv && (cross || recursion) {
        return Err(Failure::Usage(
            "TSV output is only available for the count tables".into(),
        ));
    }
    let table = quadric_counts(max_n)?;
    let cross_verdict = cross.then(|| quadric_cross_check(&table));
    let contracted_table = contract(&table);
    let (contracted_rows, matches_reference) = if contracted {
        let rows: Vec<(u32, String)> = (1..=max_n)
            .map(|n| (n, contracted_table.get(n).to_string()))
            .collect();
        let reference = contracted_reference();
        let matches = (1..=max_n.min(reference.len() as u32))
            .all(|n| *contracted_table.get(n) == reference[(n - 1) as usize]);
        (Some(rows), Some(matches))
    } else {
        (None, None)
    };
    let recursion_report = recursion.then(|| contracted_recursion_report(&contracted_table));
    let counts = if !contracted {
        Some(
            table
                .iter()
                .map(|((a, b), v)| (*a, *b, v.to_string()))
                .collect::<Vec<_>>(),
        )
    } else {
        None
    };
    let report = P1p1Report {
        counts,
        cross_check: cross_verdict,
        contracted: contracted_rows,
        contracted_matches_reference: matches_reference,
        recursion_report,
    };
    match format {
        Format::Human => {
            if let Some(counts) = &report.counts {
                for (a, b, v) in counts {
                    println!("{a},{b}  {v}");
                }
            }
            if let Some(rows) = &report.contracted {
                for (n, v) in rows {
                    println!("{n}  {v}");
                }
            }
            if let Some(m) = report.contracted_matches_reference {
                println!("contracted counts match the reference: {}", if m { "yes" } else { "NO" });
            }
            if let Some(c) = &report.cross_check {
                println!(
                    "all four recursions: {}",
                    if c.pass { "PASS" } else { "FAIL" }
                );
            }
            if let Some(r) = &report.recursion_report {
                println!(
                    "closed-form recursion (claims N_2 = {}; table has {}):",
                    r.claimed_n2, r.table_n2
                );
                for row in &r.rows {
                    println!(
                        "  n={}: table {} vs recursion {}{}",
                        row.n,
                        row.table_value,
                        row.recursion_value,
                        row.ratio
                            .as_ref()
                            .map(|q| format!(" (ratio {q})"))
                            .unwrap_or_default()
                    );
                }
                println!("consistent: {}", r.consistent);
            }
        }
        Format::Json => emit_json(&report),
        Format::Tsv => {
            if let Some(rows) = &report.contracted {
                for (n, v) in rows {
                    println!("{n}\t{v}");
                }
            }
            if let Some(counts) = &report.counts {
                for (a, b, v) in counts {
                    println!("{a}\t{b}\t{v}");
                }
            }
        }
    }
    if let Some(c) = &report.cross_check {
        if !c.pass {
            return Err(Failure::Check(format!(
                "recursion relation fails at {:?}",
                c.first_failure
            )));
        }
    }
    if report.contracted_matches_reference == Some(false) {
        return Err(Failure::Check(
            "contracted counts differ from the reference table".into(),
        ));
    }
    Ok(())
}

fn nested_chain(format: Format) -> Result<(), Failure> {
    reject_tsv(format)?;
    let catalog = load_catalog()?;
    let report = nested_chain_check(&catalog)?;
    match format {
        Format::Human => {
            for (k, p, natural) in &report.b3_instances {
                println!("B3 instance k = {k}: p = {p}, natural = {natural}");
            }
            println!("dihedral exponent: {}", report.dihedral_exponent);
            println!(
                "unity-line verdicts: {:?}",
                report.unity_line
            );
            println!("nested chain: {}", if report.pass { "PASS" } else { "FAIL" });
        }
        Format::Json => emit_json(&report),
        Format::Tsv => unreachable!(),
    }
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Check("nested chain verification failed".into()))
    }
}
