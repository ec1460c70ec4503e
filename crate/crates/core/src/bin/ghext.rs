//! Command-line front end: axiom verification, tensor solving, extension
//! search and classification, and the census reports.

use clap::{Args, Parser, Subcommand};
use ghext_core::abelian::{FiniteAbelianGroup, GroupElem};
use ghext_core::ah4;
use ghext_core::asolve::{solve_tensor, SolveConfig};
use ghext_core::category::{verify_axioms, CategoryData};
use ghext_core::equiv::classify;
use ghext_core::extdata::{check_extension_data, search_extension_data, ExtensionParams};
use ghext_core::jsonio::{load_category, load_tensor, save_category};
use ghext_core::klein;
use ghext_core::manifest::RunManifest;
use ghext_core::presets;
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "ghext",
    version,
    about = "Structure constants and graded extension censuses for generalized Haagerup categories"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the structure-constant axioms of a category file.
    Verify(VerifyArgs),
    /// Solve the polynomial system for the tensor given (group, ε, η).
    SolveA(SolveArgs),
    /// Enumerate all extension data for a twist (p, z).
    Extensions(ExtensionsArgs),
    /// Enumerate extension data and partition them into equivalence classes.
    Classify(ClassifyArgs),
    /// Klein-four censuses for the Z2xZ2 category.
    Klein(KleinArgs),
    /// A4 quasi-trivial extension census for the Z2xZ2 category.
    A4(A4Args),
    /// Checks for the degenerate Z4xZ2 scenario.
    Ah4(Ah4Args),
    /// Run every census and pipeline check; fail on any count mismatch.
    CensusAll(CensusAllArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Category JSON file (must contain an "A" tensor).
    #[arg(long)]
    category: PathBuf,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Optional JSON report output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    /// Group spec, e.g. Z2, Z4, Z2xZ2, Z4xZ2.
    #[arg(long)]
    group: String,
    /// ε input: a category JSON file or "builtin:<name>" with name one of
    /// z2z2-paper, z2n-nontrivial, ah4, trivial.
    #[arg(long)]
    eps: String,
    /// η input; only "trivial" is built in.
    #[arg(long, default_value = "trivial")]
    eta: String,
    #[arg(long, default_value_t = 64)]
    restarts: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Output file for the best solution (category JSON with tensor).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ExtensionsArgs {
    #[arg(long)]
    category: PathBuf,
    /// Twist element p as comma-separated residues, e.g. "1,0".
    #[arg(long)]
    p: String,
    /// Torsion element z as comma-separated residues.
    #[arg(long)]
    z: String,
    /// Skip the tensor filter even when the file has a tensor.
    #[arg(long)]
    no_a_filter: bool,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    category: PathBuf,
    #[arg(long)]
    p: String,
    #[arg(long)]
    z: String,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Use the full character group even for degenerate categories.
    #[arg(long)]
    all_zetas: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct KleinArgs {
    /// Run the full census over admissible z-triples.
    #[arg(long)]
    census: bool,
    /// Inspect a single z-triple given as labels, e.g. "p,q,r".
    #[arg(long)]
    triple: Option<String>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct A4Args {
    #[arg(long)]
    census: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct Ah4Args {
    /// Run the scenario checks (data sets, compatibility scalar).
    #[arg(long)]
    check: bool,
    /// Optional tensor file enabling the tensor-dependent checks.
    #[arg(long)]
    a_file: Option<PathBuf>,
    /// Report which square roots of i satisfy the compatibility identity.
    #[arg(long)]
    solve_c: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CensusAllArgs {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 64)]
    restarts: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn parse_elem(group: &FiniteAbelianGroup, s: &str) -> Result<usize, String> {
    let residues: Result<Vec<u32>, _> = s.split(',').map(|t| t.trim().parse::<u32>()).collect();
    let residues = residues.map_err(|e| format!("bad element {s:?}: {e}"))?;
    group
        .index_of(&GroupElem(residues))
        .map_err(|e| e.to_string())
}

fn write_output(
    path: &Option<PathBuf>,
    payload: &serde_json::Value,
    manifest: RunManifest,
    started: Instant,
) -> Result<(), String> {
    if let Some(path) = path {
        let manifest = manifest.finish(payload, started.elapsed().as_millis() as u64);
        let doc = json!({ "manifest": manifest, "result": payload });
        std::fs::write(path, serde_json::to_string_pretty(&doc).unwrap())
            .map_err(|e| format!("writing {}: {e}", path.display()))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn load_category_arg(path: &Path) -> Result<CategoryData, String> {
    load_category(path).map_err(|e| format!("loading {}: {e}", path.display()))
}

fn cmd_verify(args: &VerifyArgs) -> Result<bool, String> {
    let started = Instant::now();
    let c = load_category_arg(&args.category)?;
    let report = verify_axioms(&c, args.tol).map_err(|e| e.to_string())?;
    println!(
        "group {}  d = {:.12}  tol = {:.1e}",
        c.group.spec_string(),
        c.dim,
        args.tol
    );
    for row in &report.rows {
        let status = if row.pass { "ok " } else { "FAIL" };
        if row.exact {
            println!("  {:14} {}  (exact)", row.name, status);
        } else {
            println!(
                "  {:14} {}  max residual {:.3e}",
                row.name, status, row.residual
            );
        }
    }
    println!("overall: {}", if report.pass { "pass" } else { "FAIL" });
    let payload = json!({
        "pass": report.pass,
        "rows": report.rows.iter().map(|r| json!({
            "equation": r.name, "residual": r.residual, "exact": r.exact, "pass": r.pass,
        })).collect::<Vec<_>>(),
    });
    let manifest = RunManifest::new("verify")
        .with_group(c.group.spec_string())
        .with_input(args.category.display().to_string())
        .with_tolerance("axioms", args.tol);
    write_output(&args.output, &payload, manifest, started)?;
    Ok(report.pass)
}

fn cmd_solve(args: &SolveArgs) -> Result<bool, String> {
    let started = Instant::now();
    let group = FiniteAbelianGroup::parse(&args.group).map_err(|e| e.to_string())?;
    let (eps, eta) = if let Some(name) = args.eps.strip_prefix("builtin:") {
        let eps = presets::builtin_epsilon(name, &group).map_err(|e| e.to_string())?;
        if args.eta != "trivial" {
            return Err("only --eta trivial is built in".into());
        }
        (eps, ghext_core::category::EtaTable::trivial(group.order()))
    } else {
        let c = load_category_arg(&PathBuf::from(&args.eps))?;
        if c.group != group {
            return Err(format!(
                "ε file is for {}, requested group {}",
                c.group.spec_string(),
                group.spec_string()
            ));
        }
        (c.eps, c.eta)
    };

    let cfg = SolveConfig {
        restarts: args.restarts,
        convergence_tol: args.tol,
        seed: args.seed,
        ..SolveConfig::default()
    };
    let out = solve_tensor(&group, &eps, &eta, &cfg).map_err(|e| e.to_string())?;
    println!(
        "orbits {} variables {} restarts {} converged {} distinct {} best residual {:.3e} (η trivial: {})",
        out.diagnostics.orbit_count,
        out.diagnostics.variables,
        out.diagnostics.restarts,
        out.diagnostics.converged,
        out.diagnostics.distinct,
        out.diagnostics.best_residual,
        out.diagnostics.eta_trivial,
    );
    if out.solutions.is_empty() {
        println!("no solution reached the convergence tolerance");
        return Ok(false);
    }
    for (i, s) in out.solutions.iter().enumerate() {
        println!("  solution {i}: max residual {:.3e}", s.residual);
    }
    if let Some(path) = &args.output {
        let best = &out.solutions[0];
        let c = CategoryData::new(group.clone(), eps, eta, Some(best.tensor.clone()))
            .map_err(|e| e.to_string())?;
        let payload = json!({
            "residual": best.residual,
            "alternates": out.solutions.len() - 1,
        });
        let manifest = RunManifest::new("solve-a")
            .with_group(group.spec_string())
            .with_input(args.eps.clone())
            .with_seed(args.seed)
            .with_tolerance("convergence", args.tol)
            .finish(&payload, started.elapsed().as_millis() as u64);
        save_category(path, &c, Some(manifest)).map_err(|e| e.to_string())?;
        println!("wrote {}", path.display());
    }
    Ok(true)
}

fn search_from_args(
    category: &Path,
    p: &str,
    z: &str,
    tol: f64,
    strip_tensor: bool,
) -> Result<
    (
        CategoryData,
        ExtensionParams,
        ghext_core::extdata::SearchResult,
    ),
    String,
> {
    let mut c = load_category_arg(category)?;
    if strip_tensor {
        c.tensor = None;
    }
    let p = parse_elem(&c.group, p)?;
    let z = parse_elem(&c.group, z)?;
    let params = ExtensionParams::new(&c.group, p, z).map_err(|e| e.to_string())?;
    let result = search_extension_data(&c, params, tol);
    Ok((c, params, result))
}

fn solution_json(
    c: &CategoryData,
    d: &ghext_core::extdata::ExtensionData,
    tol: f64,
) -> serde_json::Value {
    let report = check_extension_data(c, d, tol);
    json!({
        "data": d,
        "report": report,
    })
}

fn cmd_extensions(args: &ExtensionsArgs) -> Result<bool, String> {
    let started = Instant::now();
    let (c, params, result) =
        search_from_args(&args.category, &args.p, &args.z, args.tol, args.no_a_filter)?;
    println!(
        "group {}  p = {}  z = {}  tensor filter: {}{}",
        c.group.spec_string(),
        c.group.elem(params.p),
        c.group.elem(params.z),
        if result.tensor_filtered {
            "on"
        } else {
            "off (unfiltered)"
        },
        if result.vacuous_filter {
            " [vacuous: tensor is zero]"
        } else {
            ""
        },
    );
    println!(
        "{} solution(s); scalars enumerated in μ_{}",
        result.solutions.len(),
        result.scalar_order
    );
    for (i, d) in result.solutions.iter().enumerate() {
        let a: Vec<String> = d.a.iter().map(|r| r.to_string()).collect();
        println!("  #{i}: ξ={} ν={} a=({})", d.xi, d.nu, a.join(","));
    }
    let payload = json!({
        "count": result.solutions.len(),
        "tensor_filtered": result.tensor_filtered,
        "scalar_order": result.scalar_order,
        "solutions": result.solutions.iter().map(|d| solution_json(&c, d, args.tol)).collect::<Vec<_>>(),
    });
    let manifest = RunManifest::new("extensions")
        .with_group(c.group.spec_string())
        .with_input(args.category.display().to_string())
        .with_tolerance("eq22", args.tol);
    write_output(&args.output, &payload, manifest, started)?;
    Ok(true)
}

fn cmd_classify(args: &ClassifyArgs) -> Result<bool, String> {
    let started = Instant::now();
    let (c, params, result) = search_from_args(&args.category, &args.p, &args.z, args.tol, false)?;
    // Degenerate categories: restrict ζ to characters trivial on the
    // trivially-acting elements unless told otherwise.
    let degenerate = c.degenerate_elements();
    let allowed = if degenerate.is_empty() || args.all_zetas {
        None
    } else {
        let keep: Vec<_> = c
            .group
            .characters()
            .into_iter()
            .filter(|ch| {
                degenerate
                    .iter()
                    .all(|&h| ch.eval_idx(&c.group, h).is_one())
            })
            .collect();
        Some(keep)
    };
    let classification = classify(&result.solutions, &c.eps, &c.group, allowed.as_deref())
        .map_err(|e| e.to_string())?;
    println!(
        "group {}  p = {}  z = {}  solutions {}  classes {}",
        c.group.spec_string(),
        c.group.elem(params.p),
        c.group.elem(params.z),
        result.solutions.len(),
        classification.class_count()
    );
    if !degenerate.is_empty() {
        println!(
            "degenerate elements present; ζ restricted: {}",
            !args.all_zetas
        );
    }
    for (i, orbit) in classification.orbits.iter().enumerate() {
        let d = &orbit.representative;
        let a: Vec<String> = d.a.iter().map(|r| r.to_string()).collect();
        println!(
            "  class {i}: size {}  rep ξ={} ν={} a=({})",
            orbit.members.len(),
            d.xi,
            d.nu,
            a.join(",")
        );
    }
    let payload = json!({
        "classes": classification.class_count(),
        "orbits": classification.orbits.iter().map(|o| json!({
            "size": o.members.len(),
            "representative": o.representative,
        })).collect::<Vec<_>>(),
    });
    let manifest = RunManifest::new("classify")
        .with_group(c.group.spec_string())
        .with_input(args.category.display().to_string())
        .with_tolerance("eq22", args.tol);
    write_output(&args.output, &payload, manifest, started)?;
    Ok(true)
}

fn cmd_klein(args: &KleinArgs) -> Result<bool, String> {
    let started = Instant::now();
    if let Some(triple) = &args.triple {
        let parts: Vec<&str> = triple.split(',').collect();
        if parts.len() != 3 {
            return Err("--triple expects three labels, e.g. p,q,r".into());
        }
        let mut idx = [0usize; 3];
        for (i, part) in parts.iter().enumerate() {
            idx[i] = klein::parse_label(part)
                .ok_or_else(|| format!("unknown label {part:?}; use 0, p, q or r"))?;
        }
        let zt = klein::ZTriple(idx);
        let eps = presets::epsilon_z2z2_paper();
        let admissible = klein::is_admissible(&zt);
        println!("triple ({}) admissible: {admissible}", zt.labels().join(","));
        if admissible {
            let count = klein::nu_orbit_count(&zt, &eps);
            println!("extensions: {count}");
            let nus = [
                klein::allowed_nu(zt.0[0])[0],
                klein::allowed_nu(zt.0[1])[0],
                klein::allowed_nu(zt.0[2])[0],
            ];
            let kd = klein::KleinData::new(zt, nus).map_err(|e| e.to_string())?;
            let rep = klein::check_scalar_identities(&kd);
            println!(
                "scalars: six-product {} eight-product {} identities {:?}",
                rep.six_product, rep.eight_product, rep.admissibility_identities
            );
            println!("product relation holds: {}", kd.product_relation_holds());
        }
        return Ok(true);
    }
    if !args.census {
        return Err("use --census or --triple".into());
    }
    let census = klein::klein_census().map_err(|e| e.to_string())?;
    println!("admissible z-triples: {}", census.admissible_triples);
    for (case, count, per) in &census.case_summary {
        println!("  {case:22} {count:2} triple(s) x {per} extension(s)");
    }
    println!("total = {}", census.total);
    let payload = serde_json::to_value(&census).unwrap();
    let manifest = RunManifest::new("klein --census").with_group("Z2xZ2");
    write_output(&args.output, &payload, manifest, started)?;
    Ok(census.total == 74 && census.admissible_triples == 28)
}

fn cmd_a4(args: &A4Args) -> Result<bool, String> {
    let started = Instant::now();
    if !args.census {
        return Err("use --census".into());
    }
    let census = klein::a4_census().map_err(|e| e.to_string())?;
    println!("compatible z-triples: {}", census.compatible_z_triples.len());
    for t in &census.compatible_z_triples {
        println!("  ({})", t.join(","));
    }
    for (case, base, mult) in &census.cases {
        println!("  {case:22} {base} choice(s) x {mult} associator(s)");
    }
    println!("total = {}", census.total);
    let payload = serde_json::to_value(&census).unwrap();
    let manifest = RunManifest::new("a4 --census").with_group("Z2xZ2");
    write_output(&args.output, &payload, manifest, started)?;
    Ok(census.total == 15)
}

fn cmd_ah4(args: &Ah4Args) -> Result<bool, String> {
    let started = Instant::now();
    if !args.check && !args.solve_c {
        return Err("use --check and/or --solve-c".into());
    }
    let mut s = ah4::build_scenario();
    let mut ok = true;
    if let Some(path) = &args.a_file {
        let tensor = load_tensor(path).map_err(|e| e.to_string())?;
        if tensor.size() != 8 {
            return Err("tensor file must be for Z4xZ2".into());
        }
        s.category.tensor = Some(tensor);
        println!("loaded tensor from {}", path.display());
    }
    let mut results = serde_json::Map::new();
    if args.check {
        let (r10, r01) = ah4::check_data_sets(&s);
        let l11 = ah4::check_l11(&s);
        println!(
            "data p=(1,0): exact checks {}",
            if r10.pass_exact() { "pass" } else { "FAIL" }
        );
        println!(
            "data p=(0,1): exact checks {}",
            if r01.pass_exact() { "pass" } else { "FAIL" }
        );
        match (&r10.eq22, &r01.eq22) {
            (
                ghext_core::extdata::Eq22Status::Checked {
                    max_residual: a,
                    pass: pa,
                },
                ghext_core::extdata::Eq22Status::Checked {
                    max_residual: b,
                    pass: pb,
                },
            ) => {
                println!("tensor checks: p10 {a:.3e} ({pa}), p01 {b:.3e} ({pb})");
                ok &= pa & pb;
            }
            _ => println!("tensor checks: skipped (no tensor supplied)"),
        }
        println!(
            "compatibility identity with c = {}: {}",
            s.c,
            if l11 { "pass" } else { "FAIL" }
        );
        ok &= r10.pass_exact() && r01.pass_exact() && l11;
        results.insert("p10_exact".into(), json!(r10.pass_exact()));
        results.insert("p01_exact".into(), json!(r01.pass_exact()));
        results.insert("l11".into(), json!(l11));
    }
    if args.solve_c {
        let cs = ah4::solve_c(&s);
        let list: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
        println!(
            "compatibility scalars among square roots of i: [{}]",
            list.join(", ")
        );
        ok &= !cs.is_empty();
        results.insert("solve_c".into(), json!(list));
    }
    let payload = serde_json::Value::Object(results);
    let manifest = RunManifest::new("ah4").with_group("Z4xZ2");
    write_output(&args.output, &payload, manifest, started)?;
    Ok(ok)
}

fn cmd_census_all(args: &CensusAllArgs) -> Result<bool, String> {
    let started = Instant::now();
    let mut ok = true;
    let mut lines: Vec<(String, bool)> = Vec::new();
    fn record(name: &str, pass: bool, lines: &mut Vec<(String, bool)>) -> bool {
        println!("[{}] {}", if pass { "ok " } else { "FAIL" }, name);
        lines.push((name.to_string(), pass));
        pass
    }

    let klein_census = klein::klein_census().map_err(|e| e.to_string())?;
    ok &= record(
        "klein census: 28 admissible triples",
        klein_census.admissible_triples == 28,
        &mut lines,
    );
    ok &= record(
        "klein census: total 74",
        klein_census.total == 74,
        &mut lines,
    );
    let a4 = klein::a4_census().map_err(|e| e.to_string())?;
    ok &= record("a4 census: total 15", a4.total == 15, &mut lines);
    ok &= record(
        "a4 census: 4 compatible triples",
        a4.compatible_z_triples.len() == 4,
        &mut lines,
    );

    let s = ah4::build_scenario();
    let (r10, r01) = ah4::check_data_sets(&s);
    ok &= record(
        "ah4: both data sets pass exact checks",
        r10.pass_exact() && r01.pass_exact(),
        &mut lines,
    );
    ok &= record(
        "ah4: compatibility identity",
        ah4::check_l11(&s),
        &mut lines,
    );

    // cyclic + Klein pipelines at desk scale
    for (spec, preset) in [
        ("Z2", "z2n-nontrivial"),
        ("Z4", "z2n-nontrivial"),
        ("Z2xZ2", "z2z2-paper"),
    ] {
        let group = FiniteAbelianGroup::parse(spec).unwrap();
        let eps = presets::builtin_epsilon(preset, &group).map_err(|e| e.to_string())?;
        let eta = ghext_core::category::EtaTable::trivial(group.order());
        let cfg = SolveConfig {
            restarts: args.restarts,
            seed: args.seed,
            convergence_tol: 1e-9,
            ..SolveConfig::default()
        };
        let out = solve_tensor(&group, &eps, &eta, &cfg).map_err(|e| e.to_string())?;
        ok &= record(
            &format!("{spec}: solver converged"),
            !out.solutions.is_empty(),
            &mut lines,
        );
        let Some(best) = out.solutions.first() else {
            continue;
        };
        let c = CategoryData::new(group.clone(), eps, eta, Some(best.tensor.clone()))
            .map_err(|e| e.to_string())?;
        let mut counts_ok = true;
        for p in group.odd_part() {
            for z in group.two_torsion() {
                let params = ExtensionParams::new(&group, p, z).unwrap();
                let found = search_extension_data(&c, params, 1e-8);
                let classes = classify(&found.solutions, &c.eps, &group, None)
                    .map_err(|e| e.to_string())?
                    .class_count();
                let want = if spec == "Z2xZ2" && z != 0 { 1 } else { 2 };
                counts_ok &= classes == want;
            }
        }
        ok &= record(&format!("{spec}: class counts"), counts_ok, &mut lines);
    }

    println!(
        "census-all: {}",
        if ok { "all checks passed" } else { "FAILURES" }
    );
    let payload = json!({
        "checks": lines.iter().map(|(n, p)| json!({"name": n, "pass": p})).collect::<Vec<_>>(),
        "pass": ok,
    });
    let manifest = RunManifest::new("census-all").with_seed(args.seed);
    write_output(&args.output, &payload, manifest, started)?;
    Ok(ok)
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("GHEXT_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::SolveA(a) => cmd_solve(a),
        Command::Extensions(a) => cmd_extensions(a),
        Command::Classify(a) => cmd_classify(a),
        Command::Klein(a) => cmd_klein(a),
        Command::A4(a) => cmd_a4(a),
        Command::Ah4(a) => cmd_ah4(a),
        Command::CensusAll(a) => cmd_census_all(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
