//! `weingarten`: radial solvers and checks for the relation `2aH + bK = phi(nu)`.

mod config;
mod failure;
mod fileio;
mod report;

use std::collections::HashMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use weingarten_core::{
    circle_profile, classify_arc, classify_at, classify_global, continue_ode, cylinder_profile,
    cylinder_relation_lhs, estimate_contraction, fixed_point_solve, functional_residual_2d,
    initial_curvature, normalize_parabolic, ode_residual, profile_residual, revolve_polyline,
    revolve_to_mesh, sign_report, solve_dirichlet_disk, stitch_arcs, weingarten_residual, ArcClass,
    ArcSign, Branch, CircleSolution, ContinuationStatus, Error, Phi, RadialSolution, SolverConfig,
    WeingartenParams,
};

use config::{read_config, require, resolve};
use failure::{bad_input, CliFailure};
use report::*;

#[derive(Parser)]
#[command(
    name = "weingarten",
    version,
    about = "Radial solutions of the linear Weingarten relation 2aH + bK = phi(nu)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the relation as elliptic, parabolic, hyperbolic or mixed.
    Classify(ClassifyArgs),
    /// Solve the radial initial value problem on [0, R].
    Solve(SolveArgs),
    /// Closed-form circle family of the parabolic case.
    Parabolic(ParabolicArgs),
    /// Zero-boundary Dirichlet solution on a disk, with sign verdict.
    Dirichlet(DirichletArgs),
    /// Revolve a profile CSV into a triangle mesh (OBJ).
    Mesh(MeshArgs),
    /// Residuals of a stored profile against the relation.
    Verify(VerifyArgs),
    /// Solve over an (a, b) grid concurrently and tabulate outcomes.
    Sweep(SweepArgs),
}

/// Flags shared by the solver-style subcommands. Any of them may instead come
/// from a `key=value` config file via `--config`.
#[derive(Args, Clone)]
struct CommonArgs {
    /// Mean curvature coefficient `a`.
    #[arg(long)]
    a: Option<f64>,
    /// Gauss curvature coefficient `b`.
    #[arg(long)]
    b: Option<f64>,
    /// Prescribed function: `const:<c>`, `identity`, or `poly:<c0>,<c1>,...`.
    #[arg(long)]
    phi: Option<String>,
    /// Radius of the solve interval.
    #[arg(long = "R")]
    radius: Option<f64>,
    /// Number of grid intervals.
    #[arg(long)]
    n: Option<usize>,
    /// Picard convergence tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Axis curvature branch: `plus` or `minus`.
    #[arg(long)]
    branch: Option<String>,
    /// Config file of `key=value` defaults (a, b, phi, R, n, tol, branch).
    #[arg(long)]
    config: Option<PathBuf>,
}

struct Resolved {
    a: Option<f64>,
    b: Option<f64>,
    phi: Option<String>,
    radius: Option<f64>,
    n: usize,
    tol: f64,
    branch: Branch,
}

impl CommonArgs {
    fn resolve(&self) -> Result<Resolved, CliFailure> {
        let cfg: HashMap<String, String> = match &self.config {
            Some(path) => read_config(path)?,
            None => HashMap::new(),
        };
        let branch = match resolve(self.branch.clone(), &cfg, "branch")?.as_deref() {
            None | Some("plus") => Branch::Plus,
            Some("minus") => Branch::Minus,
            Some(other) => {
                return Err(bad_input(format!("branch must be 'plus' or 'minus', got '{other}'")))
            }
        };
        Ok(Resolved {
            a: resolve(self.a, &cfg, "a")?,
            b: resolve(self.b, &cfg, "b")?,
            phi: resolve(self.phi.clone(), &cfg, "phi")?,
            radius: resolve(self.radius, &cfg, "R")?,
            n: resolve(self.n, &cfg, "n")?.unwrap_or(512),
            tol: resolve(self.tol, &cfg, "tol")?.unwrap_or(1e-10),
            branch,
        })
    }
}

impl Resolved {
    fn params(&self) -> Result<WeingartenParams, CliFailure> {
        let a = require(self.a, "a")?;
        let b = require(self.b, "b")?;
        Ok(WeingartenParams::new(a, b)?)
    }

    fn phi(&self) -> Result<Phi, CliFailure> {
        let spec = require(self.phi.clone(), "phi")?;
        Ok(spec.parse::<Phi>()?)
    }

    fn solver_config(&self) -> Result<SolverConfig, CliFailure> {
        let radius = require(self.radius, "R")?;
        Ok(SolverConfig::new(radius, self.n).with_tol(self.tol))
    }
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct ClassifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Number of samples of the angle interval [-1, 1].
    #[arg(long, default_value_t = 201)]
    samples: usize,
    /// Also write the JSON report to this path.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct SolveArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Halve the radius (up to 8 times) on non-convergence and extend the
    /// profile back to R by explicit continuation.
    #[arg(long)]
    auto_shrink: bool,
    /// Write the profile as CSV (columns r,u,du).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the JSON report to this path.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Also revolve the profile and write an OBJ mesh.
    #[arg(long)]
    obj: Option<PathBuf>,
    /// Angular resolution of the revolved mesh.
    #[arg(long, default_value_t = 64)]
    ntheta: usize,
    /// Print the empirical contraction ratio of the fixed-point operator.
    #[arg(long)]
    probe_contraction: bool,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct ParabolicArgs {
    /// Raw coefficient `a` of the parabolic triple.
    #[arg(long)]
    a0: f64,
    /// Raw coefficient `b` of the parabolic triple.
    #[arg(long)]
    b0: f64,
    /// Raw constant right-hand side `c` with `a0^2 + b0*c = 0`.
    #[arg(long)]
    c: f64,
    /// Shift parameter of the circle family.
    #[arg(long, default_value_t = 0.0)]
    k: f64,
    /// Vertical translation of the circle family.
    #[arg(long, default_value_t = 0.0)]
    m: f64,
    /// Arc sign: `plus` (upper) or `minus` (lower, convex).
    #[arg(long, default_value = "minus")]
    sign: String,
    /// Number of profile samples.
    #[arg(long, default_value_t = 512)]
    n: usize,
    /// Report the cylinder member `r = 1/a` instead of a circle arc.
    #[arg(long)]
    cylinder: bool,
    /// Height of the cylinder profile.
    #[arg(long, default_value_t = 1.0)]
    height: f64,
    /// Write the sampled graph profile as CSV.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Revolve the stitched arc family (or cylinder) and write an OBJ mesh.
    #[arg(long)]
    obj: Option<PathBuf>,
    /// Angular resolution of the revolved mesh.
    #[arg(long, default_value_t = 64)]
    ntheta: usize,
    /// Also write the JSON report to this path.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct DirichletArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Cartesian grid resolution of the 2D functional check.
    #[arg(long, default_value_t = 24)]
    grid: usize,
    /// Stencil width of the 2D functional check (default R/1000).
    #[arg(long)]
    h: Option<f64>,
    /// Write the profile as CSV.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the JSON report to this path.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct MeshArgs {
    /// Profile CSV (columns r,u,du) to revolve.
    #[arg(long)]
    input: PathBuf,
    /// Output OBJ path.
    #[arg(long)]
    obj: PathBuf,
    /// Angular resolution.
    #[arg(long, default_value_t = 64)]
    ntheta: usize,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Profile CSV (columns r,u,du) to verify.
    #[arg(long)]
    input: PathBuf,
    /// Also write the JSON report to this path.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long)]
    a_min: f64,
    #[arg(long)]
    a_max: f64,
    #[arg(long, default_value_t = 5)]
    a_steps: usize,
    #[arg(long)]
    b_min: f64,
    #[arg(long)]
    b_max: f64,
    #[arg(long, default_value_t = 5)]
    b_steps: usize,
    /// Worker thread count (defaults to the available parallelism).
    #[arg(long)]
    jobs: Option<usize>,
    /// Also write the JSON rows to this path.
    #[arg(long)]
    report: Option<PathBuf>,
}

fn main() -> ExitCode {
    // Usage errors exit with 5 (clap's default of 2 is taken by NoSolution).
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 5 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", serde_json::to_string(&f).expect("failure serializes"));
            ExitCode::from(f.code as u8)
        }
    }
}

fn run(command: Command) -> Result<(), CliFailure> {
    match command {
        Command::Classify(args) => run_classify(args),
        Command::Solve(args) => run_solve(args),
        Command::Parabolic(args) => run_parabolic(args),
        Command::Dirichlet(args) => run_dirichlet(args),
        Command::Mesh(args) => run_mesh(args),
        Command::Verify(args) => run_verify(args),
        Command::Sweep(args) => run_sweep(args),
    }
}

fn emit<T: serde::Serialize>(value: &T, path: Option<&PathBuf>) -> Result<(), CliFailure> {
    let text = serde_json::to_string_pretty(value).expect("report serializes");
    println!("{text}");
    if let Some(path) = path {
        fileio::write_atomic(path, &(text + "\n"))?;
    }
    Ok(())
}

fn params_json(p: &WeingartenParams) -> ParamsJson {
    ParamsJson { a: p.a, b: p.b }
}

fn branch_str(branch: Branch) -> &'static str {
    match branch {
        Branch::Plus => "plus",
        Branch::Minus => "minus",
    }
}

fn run_classify(args: ClassifyArgs) -> Result<(), CliFailure> {
    let res = args.common.resolve()?;
    let params = res.params()?;
    let phi = res.phi()?;
    let global = classify_global(&params, &phi, args.samples.max(2))?;
    let axis = classify_at(&params, &phi, 1.0, params.class_tol())?;
    let rep = ClassifyReport {
        params: params_json(&params),
        phi: phi.to_string(),
        kind: global_kind_str(global.kind).into(),
        discriminant: DiscriminantJson {
            min: global.min_discriminant,
            max: global.max_discriminant,
        },
        at_axis: AxisClassJson {
            kind: kind_str(axis.kind).into(),
            discriminant: axis.discriminant,
        },
    };
    emit(&rep, args.report.as_ref())
}

/// Fixed-point solve with optional radius shrink + continuation back to `R`.
fn solve_profile(
    params: &WeingartenParams,
    phi: &Phi,
    branch: Branch,
    cfg: &SolverConfig,
    auto_shrink: bool,
) -> Result<(RadialSolution, usize, String), Error> {
    match fixed_point_solve(params, phi, branch, cfg) {
        Ok(run) => Ok((run.solution, run.iterations, "ok".into())),
        Err(e @ (Error::NonConvergence { .. } | Error::SlopeBlowup { .. })) if auto_shrink => {
            let mut shrunk = *cfg;
            let mut last = e;
            for _ in 0..8 {
                shrunk.radius *= 0.5;
                match fixed_point_solve(params, phi, branch, &shrunk) {
                    Ok(run) => {
                        let step = shrunk.radius / shrunk.n as f64;
                        let cont =
                            continue_ode(&run.solution, cfg.radius, step, cfg.slope_cap)?;
                        let status = match cont.status {
                            ContinuationStatus::ReachedTarget => "continued",
                            ContinuationStatus::StoppedVertical => {
                                return Err(Error::StoppedVertical {
                                    r: *cont.solution.r.last().unwrap(),
                                })
                            }
                        };
                        return Ok((cont.solution, run.iterations, status.into()));
                    }
                    Err(e @ (Error::NonConvergence { .. } | Error::SlopeBlowup { .. })) => {
                        last = e;
                    }
                    Err(e) => return Err(e),
                }
            }
            Err(last)
        }
        Err(e) => Err(e),
    }
}

fn run_solve(args: SolveArgs) -> Result<(), CliFailure> {
    let res = args.common.resolve()?;
    let params = res.params()?;
    let phi = res.phi()?;
    let cfg = res.solver_config()?;
    let branch = res.branch;

    let (sol, iterations, status) =
        solve_profile(&params, &phi, branch, &cfg, args.auto_shrink)?;
    let residual = ode_residual(&params, &phi, &sol)?;
    let global = classify_global(&params, &phi, 201)?;

    let rep = SolveReport {
        params: params_json(&params),
        phi: phi.to_string(),
        branch: branch_str(branch).into(),
        classification: global_kind_str(global.kind).into(),
        grid: GridJson { radius: cfg.radius, n: cfg.n },
        iterations,
        residual: ResidualJson::from(&residual),
        initial_curvature: initial_curvature(&params, &phi, branch)?,
        status,
    };

    if args.probe_contraction {
        let ratio =
            estimate_contraction(&params, &phi, branch, cfg.radius, cfg.n.min(256), 32, 2024)?;
        eprintln!("contraction ratio estimate: {ratio}");
    }
    if let Some(path) = &args.out {
        fileio::write_profile_csv(path, &sol)?;
    }
    if let Some(path) = &args.obj {
        let mesh = revolve_to_mesh(&sol, args.ntheta)?;
        let mut buf = Vec::new();
        mesh.write_obj(&mut buf).map_err(|e| bad_input(format!("cannot encode OBJ: {e}")))?;
        fileio::write_atomic(path, &String::from_utf8(buf).expect("OBJ is ASCII"))?;
    }
    emit(&rep, args.report.as_ref())
}

fn run_parabolic(args: ParabolicArgs) -> Result<(), CliFailure> {
    let (a, b, c) = normalize_parabolic(args.a0, args.b0, args.c)?;
    let normalized = NormalizedJson { a, b, c };

    if args.cylinder {
        let profile = cylinder_profile(a, args.height, args.n.max(2))?;
        let rep = CylinderReport {
            r0: profile.r0,
            mean_curvature: profile.mean_curvature,
            gauss_curvature: profile.gauss_curvature,
            relation_lhs: cylinder_relation_lhs(a, &profile),
            normalized,
            status: "ok".into(),
        };
        if let Some(path) = &args.obj {
            write_polyline_obj(path, &profile.polyline, args.ntheta)?;
        }
        return emit(&rep, args.report.as_ref());
    }

    let sign = match args.sign.as_str() {
        "plus" => ArcSign::Plus,
        "minus" => ArcSign::Minus,
        other => return Err(bad_input(format!("sign must be 'plus' or 'minus', got '{other}'"))),
    };
    let arc_class = classify_arc(a, args.k)?;
    if arc_class == ArcClass::Empty {
        let rep = ParabolicReport {
            normalized,
            k: args.k,
            m: args.m,
            sign: args.sign.clone(),
            arc_class: arc_class_str(arc_class).into(),
            domain: None,
            residual: None,
            status: "empty".into(),
        };
        return emit(&rep, args.report.as_ref());
    }

    let csol = CircleSolution::new(a, args.k, args.m, sign)?;
    let sol = circle_profile(&csol, args.n.max(2))?;
    let residual = profile_residual(&csol, &sol)?;
    let (lo, hi) = csol.domain();

    if let Some(path) = &args.out {
        fileio::write_profile_csv(path, &sol)?;
    }
    if let Some(path) = &args.obj {
        let polyline = stitch_arcs(a, args.k, args.m, args.n.max(4))?;
        write_polyline_obj(path, &polyline, args.ntheta)?;
    }
    let rep = ParabolicReport {
        normalized,
        k: args.k,
        m: args.m,
        sign: args.sign.clone(),
        arc_class: arc_class_str(arc_class).into(),
        domain: Some(DomainJson { lo, hi }),
        residual: Some(ResidualJson::from(&residual)),
        status: "ok".into(),
    };
    emit(&rep, args.report.as_ref())
}

fn arc_class_str(c: ArcClass) -> &'static str {
    match c {
        ArcClass::MinorArc => "minor_arc",
        ArcClass::HalfCircle => "half_circle",
        ArcClass::MajorArc => "major_arc",
        ArcClass::TangentCircle => "tangent_circle",
        ArcClass::TorusCircle => "torus_circle",
        ArcClass::CylinderLine => "cylinder_line",
        ArcClass::Empty => "empty",
    }
}

fn write_polyline_obj(
    path: &PathBuf,
    polyline: &weingarten_core::ProfilePolyline,
    n_theta: usize,
) -> Result<(), CliFailure> {
    let mesh = revolve_polyline(polyline, n_theta)?;
    let mut buf = Vec::new();
    mesh.write_obj(&mut buf).map_err(|e| bad_input(format!("cannot encode OBJ: {e}")))?;
    fileio::write_atomic(path, &String::from_utf8(buf).expect("OBJ is ASCII"))
}

fn run_dirichlet(args: DirichletArgs) -> Result<(), CliFailure> {
    let res = args.common.resolve()?;
    let params = res.params()?;
    let phi = res.phi()?;
    let cfg = res.solver_config()?;
    let branch = res.branch;

    let sol = solve_dirichlet_disk(&params, &phi, branch, cfg.radius, &cfg)?;
    let sign = sign_report(&sol)?;
    let h = args.h.unwrap_or(cfg.radius * 1e-3);
    let residual = functional_residual_2d(&params, &phi, &sol, args.grid, h)?;

    if let Some(path) = &args.out {
        fileio::write_profile_csv(path, &sol)?;
    }
    let rep = DirichletReport {
        params: params_json(&params),
        phi: phi.to_string(),
        branch: branch_str(branch).into(),
        grid: GridJson { radius: cfg.radius, n: cfg.n },
        sign: SignJson::from(&sign),
        residual: ResidualJson::from(&residual),
        boundary_value: *sol.u.last().unwrap(),
        status: "ok".into(),
    };
    emit(&rep, args.report.as_ref())
}

fn placeholder_profile_context() -> (WeingartenParams, Phi, Branch) {
    (WeingartenParams { a: 1.0, b: 0.0 }, Phi::constant(0.0), Branch::Plus)
}

fn run_mesh(args: MeshArgs) -> Result<(), CliFailure> {
    let (params, phi, branch) = placeholder_profile_context();
    let sol = fileio::read_profile_csv(&args.input, params, phi, branch)?;
    let mesh = revolve_to_mesh(&sol, args.ntheta)?;
    let mut buf = Vec::new();
    mesh.write_obj(&mut buf).map_err(|e| bad_input(format!("cannot encode OBJ: {e}")))?;
    fileio::write_atomic(&args.obj, &String::from_utf8(buf).expect("OBJ is ASCII"))?;
    println!(
        "{}",
        serde_json::json!({
            "vertices": mesh.vertices.len(),
            "faces": mesh.faces.len(),
            "euler_characteristic": mesh.euler_characteristic(),
            "watertight": mesh.is_watertight(),
            "status": "ok",
        })
    );
    Ok(())
}

fn run_verify(args: VerifyArgs) -> Result<(), CliFailure> {
    let res = args.common.resolve()?;
    let params = res.params()?;
    let phi = res.phi()?;
    let sol = fileio::read_profile_csv(&args.input, params, phi.clone(), res.branch)?;
    let ode = ode_residual(&params, &phi, &sol)?;
    let weingarten = weingarten_residual(&params, &phi, &sol)?;
    let rep = VerifyReport {
        params: params_json(&params),
        phi: phi.to_string(),
        nodes: sol.len(),
        ode_residual: ResidualJson::from(&ode),
        weingarten_residual: ResidualJson::from(&weingarten),
    };
    emit(&rep, args.report.as_ref())
}

fn run_sweep(args: SweepArgs) -> Result<(), CliFailure> {
    let res = args.common.resolve()?;
    let phi = res.phi()?;
    let cfg = res.solver_config()?;
    let branch = res.branch;
    if args.a_steps < 1 || args.b_steps < 1 {
        return Err(bad_input("a_steps and b_steps must be >= 1".into()));
    }

    let grid_value = |lo: f64, hi: f64, steps: usize, i: usize| {
        if steps == 1 { lo } else { lo + (hi - lo) * i as f64 / (steps - 1) as f64 }
    };
    let tasks: Vec<(f64, f64)> = (0..args.a_steps)
        .flat_map(|i| {
            (0..args.b_steps).map(move |j| {
                (
                    grid_value(args.a_min, args.a_max, args.a_steps, i),
                    grid_value(args.b_min, args.b_max, args.b_steps, j),
                )
            })
        })
        .collect();

    let jobs = args
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(4, |p| p.get()))
        .max(1);

    let mut rows: Vec<Option<SweepRow>> = (0..tasks.len()).map(|_| None).collect();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for worker in 0..jobs.min(tasks.len()) {
            let tasks = &tasks;
            let phi = &phi;
            handles.push(scope.spawn(move || {
                let mut out = Vec::new();
                for idx in (worker..tasks.len()).step_by(jobs) {
                    let (a, b) = tasks[idx];
                    out.push((idx, sweep_one(a, b, phi, branch, &cfg)));
                }
                out
            }));
        }
        for handle in handles {
            for (idx, row) in handle.join().expect("sweep worker panicked") {
                rows[idx] = Some(row);
            }
        }
    });
    let rows: Vec<SweepRow> = rows.into_iter().map(|r| r.expect("all rows filled")).collect();
    emit(&rows, args.report.as_ref())
}

fn sweep_one(a: f64, b: f64, phi: &Phi, branch: Branch, cfg: &SolverConfig) -> SweepRow {
    let attempt = WeingartenParams::new(a, b)
        .and_then(|params| {
            let run = fixed_point_solve(&params, phi, branch, cfg)?;
            let residual = ode_residual(&params, phi, &run.solution)?;
            let kappa0 = initial_curvature(&params, phi, branch)?;
            Ok((run, residual, kappa0))
        });
    match attempt {
        Ok((run, residual, kappa0)) => SweepRow {
            a,
            b,
            status: "ok".into(),
            error: None,
            residual_max_abs: Some(residual.max_abs),
            initial_curvature: Some(kappa0),
            iterations: Some(run.iterations),
        },
        Err(e) => {
            let failure = CliFailure::from(e);
            SweepRow {
                a,
                b,
                status: "error".into(),
                error: Some(failure.error),
                residual_max_abs: None,
                initial_curvature: None,
                iterations: None,
            }
        }
    }
}
