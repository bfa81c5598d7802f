//! Command-line front end for the physical-billiards kernel.
//!
//! Subcommands: `classify` (corner report), `reduce` (offset table as
//! JSON/SVG), `simulate` (event-driven trajectory as CSV/SVG) and
//! `spectrum` (collision-map eigenvalues).
//!
//! Exit codes: 0 success, 2 input or parse error, 3 geometric
//! infeasibility, 4 internal contract violation. The env var
//! `CORNER_BILLIARDS_LOG` controls log verbosity.

mod svg;

use clap::{Args, Parser, Subcommand, ValueEnum};
use corner_billiards::dynamics::fmt17;
use corner_billiards::{
    classify_corners, collision_matrix, eigenstructure, simulate_reduced, BallSpec, BallState,
    CollisionContext, CornerClass, Error, StopCondition, Surface, Table, Termination, Trajectory,
    Vec2, Vec3,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "corner-billiards",
    about = "Physical billiards: corner classification, reduced tables, and event-driven simulation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SurfaceArg {
    Smooth,
    Rough,
}

impl From<SurfaceArg> for Surface {
    fn from(s: SurfaceArg) -> Surface {
        match s {
            SurfaceArg::Smooth => Surface::Smooth,
            SurfaceArg::Rough => Surface::Rough,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify every boundary junction of a table.
    Classify {
        #[arg(long)]
        table: PathBuf,
    },
    /// Offset the table inward by the ball radius and emit the reduced
    /// table.
    Reduce {
        #[arg(long)]
        table: PathBuf,
        #[arg(long)]
        radius: f64,
        /// Output JSON path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Optional SVG overlay of original and reduced boundaries.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Run the event-driven simulation and emit a trajectory CSV.
    Simulate(SimulateArgs),
    /// Eigenvalues of the collision map for a canonical contact.
    Spectrum {
        #[arg(long)]
        surface: SurfaceArg,
        #[arg(long)]
        radius: f64,
        /// Moment of inertia (defaults to a uniform disk, r^2/2).
        #[arg(long)]
        inertia: Option<f64>,
    },
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    table: PathBuf,
    #[arg(long)]
    radius: f64,
    #[arg(long, value_enum)]
    surface: SurfaceArg,
    /// Moment of inertia (defaults to a uniform disk, r^2/2).
    #[arg(long)]
    inertia: Option<f64>,
    /// Initial center position "x,y".
    #[arg(long, value_parser = parse_vec2, allow_hyphen_values = true, required_unless_present = "samples")]
    pos: Option<Vec2>,
    /// Initial velocity "vx,vy".
    #[arg(long, value_parser = parse_vec2, allow_hyphen_values = true, required_unless_present = "samples")]
    vel: Option<Vec2>,
    /// Initial angular velocity (z-axis).
    #[arg(long, default_value_t = 0.0)]
    omega: f64,
    /// Stop after this many collisions.
    #[arg(long, conflicts_with = "horizon")]
    collisions: Option<usize>,
    /// Stop at this time horizon.
    #[arg(long)]
    horizon: Option<f64>,
    /// Output CSV path (stdout when omitted). With --samples, one file
    /// per run: "<out>.<k>.csv".
    #[arg(long)]
    out: Option<PathBuf>,
    /// Optional SVG of the reduced table and the center's polyline.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Run this many sampled initial conditions in parallel instead of
    /// a single --pos/--vel run.
    #[arg(long, requires = "seed")]
    samples: Option<usize>,
    /// RNG seed; required when sampling is requested.
    #[arg(long)]
    seed: Option<u64>,
}

fn parse_vec2(s: &str) -> Result<Vec2, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected \"x,y\", got {s:?}"));
    }
    let x: f64 = parts[0].trim().parse().map_err(|e| format!("{e}"))?;
    let y: f64 = parts[1].trim().parse().map_err(|e| format!("{e}"))?;
    Ok(Vec2::new(x, y))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("CORNER_BILLIARDS_LOG")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidTable(_) | Error::Parse(_) | Error::InvalidArgument(_) => 2,
        Error::RadiusTooLarge { .. }
        | Error::OutsideTable(_)
        | Error::NoEvent(_)
        | Error::PinnedInCorner => 3,
        Error::ContractViolation(_) => 4,
    }
}

fn load_table(path: &Path) -> Result<Table, Error> {
    let json = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    Table::from_json(&json)
}

fn run(cmd: Command) -> Result<(), Error> {
    match cmd {
        Command::Classify { table } => cmd_classify(&table),
        Command::Reduce {
            table,
            radius,
            out,
            svg,
        } => cmd_reduce(&table, radius, out.as_deref(), svg.as_deref()),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Spectrum {
            surface,
            radius,
            inertia,
        } => cmd_spectrum(surface.into(), radius, inertia),
    }
}

fn cmd_classify(path: &Path) -> Result<(), Error> {
    let table = load_table(path)?;
    let corners = classify_corners(&table)?;
    for c in &corners {
        let class = match c.class {
            CornerClass::Regular => "Regular",
            CornerClass::VisibleSingular => "VisibleSingular",
            CornerClass::InvisibleSingular => "InvisibleSingular",
        };
        println!(
            "corner {} loop {} at ({}, {}) interior_angle {} {}",
            c.id,
            c.loop_id,
            fmt17(c.position.x),
            fmt17(c.position.y),
            fmt17(c.interior_angle),
            class
        );
    }
    Ok(())
}

fn cmd_reduce(
    path: &Path,
    radius: f64,
    out: Option<&Path>,
    svg_path: Option<&Path>,
) -> Result<(), Error> {
    let table = load_table(path)?;
    let rt = table.reduce(radius)?;
    let doc = corner_billiards::geometry::TableDoc {
        loops: rt
            .loops()
            .iter()
            .map(|&(s, e)| {
                rt.components()[s..e]
                    .iter()
                    .map(|rc| {
                        let tag = match rc.source {
                            corner_billiards::ReducedSource::Offset { component } => {
                                format!("component:{component}")
                            }
                            corner_billiards::ReducedSource::Corner { corner } => {
                                format!("corner:{corner}")
                            }
                        };
                        rc.geom.to_doc(Some(tag))
                    })
                    .collect()
            })
            .collect(),
    };
    let json = serde_json::to_string_pretty(&doc).expect("serialization cannot fail") + "\n";
    write_output(out, &json)?;

    if let Some(p) = svg_path {
        let mut canvas = svg::Svg::new();
        canvas.table(&table, svg::TABLE_STYLE);
        canvas.reduced(&rt, svg::REDUCED_STYLE);
        std::fs::write(p, canvas.finish())
            .map_err(|e| Error::InvalidArgument(format!("cannot write SVG: {e}")))?;
    }
    Ok(())
}

fn stop_condition(collisions: Option<usize>, horizon: Option<f64>) -> Result<StopCondition, Error> {
    match (collisions, horizon) {
        (Some(n), None) if n > 0 => Ok(StopCondition::Collisions(n)),
        (None, Some(t)) if t > 0.0 => Ok(StopCondition::TimeHorizon(t)),
        _ => Err(Error::InvalidArgument(
            "exactly one of --collisions N (> 0) or --horizon T (> 0) is required".into(),
        )),
    }
}

fn cmd_simulate(args: SimulateArgs) -> Result<(), Error> {
    let table = load_table(&args.table)?;
    let surface: Surface = args.surface.into();
    let spec = match args.inertia {
        Some(i) => BallSpec::new(args.radius, i, surface)?,
        None => BallSpec::disk(args.radius, surface)?,
    };
    let stop = stop_condition(args.collisions, args.horizon)?;
    let rt = table.reduce(spec.radius)?;

    if let Some(n) = args.samples {
        let seed = args.seed.ok_or_else(|| {
            Error::InvalidArgument("--seed is required when sampling initial conditions".into())
        })?;
        let out = args.out.as_deref().ok_or_else(|| {
            Error::InvalidArgument("--out is required when sampling initial conditions".into())
        })?;
        let initials = sample_initial_states(&rt, args.omega, n, seed)?;
        let results: Vec<Result<Trajectory, Error>> = std::thread::scope(|scope| {
            let handles: Vec<_> = initials
                .iter()
                .map(|initial| {
                    let (rt, spec, stop) = (&rt, &spec, &stop);
                    scope.spawn(move || simulate_reduced(rt, spec, initial, stop))
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        for (k, res) in results.into_iter().enumerate() {
            let traj = res?;
            report_termination(&traj);
            let path = PathBuf::from(format!("{}.{k}.csv", out.display()));
            std::fs::write(&path, traj.to_csv())
                .map_err(|e| Error::InvalidArgument(format!("cannot write CSV: {e}")))?;
        }
        return Ok(());
    }

    let pos = args.pos.expect("clap enforces --pos without --samples");
    let vel = args.vel.expect("clap enforces --vel without --samples");
    let initial = BallState::new(pos.to_3d(), vel.to_3d(), Vec3::new(0.0, 0.0, args.omega))?;
    let traj = simulate_reduced(&rt, &spec, &initial, &stop)?;
    report_termination(&traj);
    write_output(args.out.as_deref(), &traj.to_csv())?;

    if let Some(p) = args.svg {
        let mut canvas = svg::Svg::new();
        canvas.table(&table, svg::TABLE_STYLE);
        canvas.reduced(&rt, svg::REDUCED_STYLE);
        let mut pts = vec![initial.center.xy()];
        pts.extend(traj.events.iter().map(|e| e.state.center.xy()));
        pts.push(traj.final_state.center.xy());
        canvas.polyline(&pts, svg::TRAJECTORY_STYLE);
        std::fs::write(p, canvas.finish())
            .map_err(|e| Error::InvalidArgument(format!("cannot write SVG: {e}")))?;
    }
    Ok(())
}

fn report_termination(traj: &Trajectory) {
    let grazing = traj.events.iter().filter(|e| e.grazing).count();
    if grazing > 0 {
        log::warn!("{grazing} grazing events");
    }
    log::info!(
        "{} events, total time {}, max energy drift {:e}",
        traj.events.len(),
        fmt17(traj.total_time),
        traj.max_energy_drift()
    );
    if let Termination::Failed(msg) = &traj.termination {
        log::error!("simulation stopped early: {msg}");
    }
}

fn sample_initial_states(
    rt: &corner_billiards::ReducedTable,
    omega: f64,
    n: usize,
    seed: u64,
) -> Result<Vec<BallState>, Error> {
    // bounding box of the reduced boundary for rejection sampling
    let (mut lo, mut hi) = (Vec2::new(f64::MAX, f64::MAX), Vec2::new(f64::MIN, f64::MIN));
    for rc in rt.components() {
        for k in 0..=16 {
            let p = rc.geom.point_at(k as f64 / 16.0);
            lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    let mut attempts = 0;
    while out.len() < n {
        attempts += 1;
        if attempts > 100_000 {
            return Err(Error::InvalidArgument(
                "could not sample initial positions inside the reduced table".into(),
            ));
        }
        let p = Vec2::new(rng.gen_range(lo.x..hi.x), rng.gen_range(lo.y..hi.y));
        if !rt.contains_center(p) {
            continue;
        }
        let dir = Vec2::from_angle(rng.gen_range(0.0..std::f64::consts::TAU));
        out.push(BallState::new(
            p.to_3d(),
            dir.to_3d(),
            Vec3::new(0.0, 0.0, omega),
        )?);
    }
    Ok(out)
}

fn cmd_spectrum(surface: Surface, radius: f64, inertia: Option<f64>) -> Result<(), Error> {
    let spec = match inertia {
        Some(i) => BallSpec::new(radius, i, surface)?,
        None => BallSpec::disk(radius, surface)?,
    };
    // canonical contact: boundary point at the origin, normal +y
    let ctx = CollisionContext::new(Vec3::ZERO, Vec3::new(0.0, 1.0, 0.0), radius)?;
    let m = collision_matrix(&ctx, &spec);
    let spectrum = eigenstructure(&m)?;
    let line = spectrum
        .iter()
        .map(|(ev, mult)| format!("{} x{}", if *ev > 0.0 { "+1" } else { "-1" }, mult))
        .collect::<Vec<_>>()
        .join(", ");
    println!("{line}");
    Ok(())
}

fn write_output(path: Option<&Path>, content: &str) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
