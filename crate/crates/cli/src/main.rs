use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use hft_core::chain::{build_complex, is_del_complete, local_floer_homology, prune, ScanOrder};
use hft_core::dynamics::{
    builtin_example, example_manifest, grow_tangle, GrowthParams, MapSpec, BUILTIN_NAMES,
};
use hft_core::geometry::classify::classify_points;
use hft_core::geometry::maslov::maslov_rel;
use hft_core::limits::{
    build_homology_system, check_chain_compatible, check_poset_directed, restriction_is_chain_map,
    SystemFile,
};
use hft_core::tangle_io::{diagram_svg, validate_tangle, TangleFile};
use hft_core::{
    Coefficients, GeneratorSet, HftError, OrientationChoice, Result, TangleDiagram, TangleGeometry,
};

#[derive(Parser, Debug)]
#[command(
    name = "hft",
    version,
    about = "Exact homoclinic Floer homology of planar tangles"
)]
struct Cli {
    /// Write the report to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Omit the timing field so reports are byte-identical across runs.
    #[arg(long, global = true)]
    no_timing: bool,
    /// Worker threads for data-parallel stages.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    /// Coefficient ring.
    #[arg(long, global = true, default_value = "z", value_name = "z|z2")]
    coeff: Coefficients,
    /// Orientation of the unstable manifold.
    #[arg(long, global = true, default_value = "u+", value_name = "u+|u-")]
    orient: OrientationChoice,
    /// Also write an SVG drawing of the diagram.
    #[arg(long, global = true, value_name = "FILE")]
    svg: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Tangle {
    /// Tangle file, or the name of a built-in example.
    tangle: String,
}

#[derive(Args, Debug)]
struct WithSet {
    #[command(flatten)]
    tangle: Tangle,
    /// Comma-separated point ids, or @FILE.
    #[arg(long)]
    set: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a tangle file and list violated invariants.
    Validate(Tangle),
    /// List the homoclinic points with parameters and crossing signs.
    Intersect(Tangle),
    /// Maslov indices, absolute or for one pair.
    Mu {
        #[command(flatten)]
        tangle: Tangle,
        /// Two ids `p,q`: report mu(p,q).
        #[arg(long)]
        pair: Option<String>,
    },
    /// The sign function on all index-gap-one pairs.
    Signs {
        #[command(flatten)]
        tangle: Tangle,
        #[arg(long)]
        set: Option<String>,
    },
    /// Primary and semiprimary classification.
    Classify(Tangle),
    /// Whether a set is boundary-complete.
    Complete(WithSet),
    /// Delete middle points of hearts lacking cutting partners.
    Prune {
        #[command(flatten)]
        with: WithSet,
        /// Shuffle the scan order with this seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Local Floer homology of a set.
    Homology {
        #[command(flatten)]
        with: WithSet,
        /// Use the set as given; fails when it is not boundary-complete.
        #[arg(long)]
        no_prune: bool,
    },
    /// Direct systems over finite families of sets.
    #[command(subcommand)]
    System(SystemCommand),
    /// Grow the manifolds of a planar map into a tangle file.
    Grow(GrowArgs),
    /// Emit a built-in example as a tangle file.
    Example {
        name: String,
        /// Emit the expected-value manifest instead.
        #[arg(long)]
        manifest: bool,
    },
}

#[derive(Subcommand, Debug)]
enum SystemCommand {
    /// Directedness and chain compatibility of every inclusion.
    Check(SystemArgs),
    /// Homology direct system and its direct limit.
    Limit(SystemArgs),
}

#[derive(Args, Debug)]
struct SystemArgs {
    #[command(flatten)]
    tangle: Tangle,
    /// JSON list of sets, bare or under the key `sets`.
    #[arg(long)]
    system: PathBuf,
}

#[derive(Args, Debug)]
struct GrowArgs {
    /// JSON map description; defaults to the built-in quadratic map.
    #[arg(long)]
    map: Option<PathBuf>,
    /// Saddle coordinate c of the quadratic map with a = c² + 2c.
    #[arg(long, allow_hyphen_values = true)]
    saddle: Option<String>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    length: Option<f64>,
    #[arg(long)]
    max_points: Option<usize>,
    #[arg(long)]
    max_turn: Option<f64>,
    #[arg(long)]
    max_spacing: Option<f64>,
    #[arg(long)]
    snap_bits: Option<u32>,
}

struct Run {
    inputs: Vec<Value>,
    /// Raw output replacing the report on success.
    raw: Option<String>,
    /// Result to report alongside an error.
    partial: Option<Value>,
}

impl Run {
    fn digest(&mut self, label: &str, bytes: &[u8]) {
        let hash = hex::encode(Sha256::digest(bytes));
        self.inputs.push(json!({"input": label, "sha256": hash}));
    }

    fn load(&mut self, spec: &str) -> Result<TangleDiagram> {
        let path = Path::new(spec);
        if path.exists() {
            let text = read(path)?;
            self.digest(spec, text.as_bytes());
            return TangleFile::parse(&text)?.into_diagram();
        }
        if BUILTIN_NAMES.contains(&spec) {
            let d = builtin_example(spec)?;
            self.digest(spec, TangleFile::from_diagram(&d).to_json().as_bytes());
            return Ok(d);
        }
        Err(HftError::Io(format!(
            "{spec}: no such file or built-in example"
        )))
    }

    fn set(&mut self, d: &TangleDiagram, arg: &str) -> Result<GeneratorSet> {
        let ids: Vec<String> = match arg.strip_prefix('@') {
            Some(file) => {
                let text = read(Path::new(file))?;
                self.digest(file, text.as_bytes());
                match serde_json::from_str::<Vec<String>>(&text) {
                    Ok(v) => v,
                    Err(_) => split_ids(&text),
                }
            }
            None => split_ids(arg),
        };
        GeneratorSet::new(d, &ids)
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| HftError::Io(format!("{}: {e}", path.display())))
}

fn split_ids(s: &str) -> Vec<String> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(String::from)
        .collect()
}

fn to_value<T: serde::Serialize>(v: &T) -> Result<Value> {
    Ok(serde_json::to_value(v)?)
}

fn homology_value(h: &std::collections::BTreeMap<i64, hft_core::zmod::FgAbelianGroup>) -> Value {
    let m: Map<String, Value> = h
        .iter()
        .map(|(k, g)| (k.to_string(), json!(g.to_string())))
        .collect();
    Value::Object(m)
}

fn execute(cli: &Cli, run: &mut Run) -> Result<Value> {
    let (o, z) = (cli.orient, cli.coeff);
    let svg = |d: &TangleDiagram| -> Result<()> {
        if let Some(path) = &cli.svg {
            std::fs::write(path, diagram_svg(d))?;
        }
        Ok(())
    };
    match &cli.command {
        Command::Validate(t) => {
            let path = Path::new(&t.tangle);
            let file = if path.exists() {
                let text = read(path)?;
                run.digest(&t.tangle, text.as_bytes());
                TangleFile::parse(&text)?
            } else {
                TangleFile::from_diagram(&run.load(&t.tangle)?)
            };
            let report = validate_tangle(&file);
            if report.is_valid() {
                svg(&file.clone().into_diagram()?)?;
            }
            let v = json!({"valid": report.is_valid(), "report": report});
            if !report.is_valid() {
                let first = &report.errors[0];
                run.partial = Some(v);
                return Err(HftError::Structural(format!(
                    "{} problem(s); first: {}: {}",
                    report.errors.len(),
                    first.kind,
                    first.message
                )));
            }
            Ok(v)
        }
        Command::Intersect(t) => {
            let d = run.load(&t.tangle)?;
            svg(&d)?;
            let pts: Vec<Value> = d
                .points
                .iter()
                .map(|p| {
                    json!({"id": p.id, "position": p.position, "u_param": p.u_param,
                        "s_param": p.s_param, "crossing_sign": p.crossing_sign,
                        "fixed_point": p.is_fixed_point})
                })
                .collect();
            Ok(json!({"points": pts, "strongly_intersecting": d.strongly_intersecting()}))
        }
        Command::Mu { tangle, pair } => {
            let d = run.load(&tangle.tangle)?;
            let mu: Map<String, Value> = d
                .points
                .iter()
                .map(|p| (p.id.clone(), json!(p.maslov)))
                .collect();
            let mut v = json!({"mu": mu});
            if let Some(pair) = pair {
                let ids = split_ids(pair);
                let [p, q] = ids.as_slice() else {
                    return Err(HftError::Parse("--pair takes two ids".into()));
                };
                v["pair"] = json!({"p": p, "q": q, "mu": maslov_rel(&d, p, q)?});
            }
            Ok(v)
        }
        Command::Signs { tangle, set } => {
            let d = run.load(&tangle.tangle)?;
            let g = TangleGeometry::new(&d);
            let ids = match set {
                Some(s) => Some(run.set(&d, s)?.members().to_vec()),
                None => None,
            };
            to_value(&g.sign_table(ids.as_deref(), o, z)?)
        }
        Command::Classify(t) => {
            let d = run.load(&t.tangle)?;
            let classes = classify_points(&d);
            let primary: Vec<&str> = classes
                .iter()
                .filter(|c| c.primary)
                .map(|c| c.id.as_str())
                .collect();
            Ok(json!({"points": classes, "primary": primary}))
        }
        Command::Complete(w) => {
            let d = run.load(&w.tangle.tangle)?;
            let set = run.set(&d, &w.set)?;
            let g = TangleGeometry::new(&d);
            let c = build_complex(&g, &set, o, z)?;
            let verdict = is_del_complete(&g, &c)?;
            Ok(json!({"set": set.members(), "completeness": verdict}))
        }
        Command::Prune { with, seed } => {
            let d = run.load(&with.tangle.tangle)?;
            let set = run.set(&d, &with.set)?;
            let g = TangleGeometry::new(&d);
            let order = seed.map_or(ScanOrder::ById, ScanOrder::Seeded);
            let (out, log) = prune(&g, &set, order)?;
            Ok(
                json!({"input": set.members(), "pruned": out.members(), "deleted": log.deleted(), "log": log}),
            )
        }
        Command::Homology { with, no_prune } => {
            let d = run.load(&with.tangle.tangle)?;
            let set = run.set(&d, &with.set)?;
            let g = TangleGeometry::new(&d);
            if *no_prune {
                let c = build_complex(&g, &set, o, z)?;
                if let Some((p, terms)) = c.del_squared_witness() {
                    let t: Vec<String> = terms.iter().map(|(q, n)| format!("{n}·{q}")).collect();
                    return Err(HftError::NotAComplex(format!(
                        "{set} is not boundary-complete: ∂∂{p} = {}",
                        t.join(" + ")
                    )));
                }
                return Ok(
                    json!({"set": set.members(), "homology": homology_value(&c.homology()?)}),
                );
            }
            let h = local_floer_homology(&g, &set, o, z)?;
            Ok(
                json!({"set": h.input, "pruned": h.pruned, "prune_log": h.prune_log,
                "homology": homology_value(&h.homology)}),
            )
        }
        Command::System(cmd) => {
            let args = match cmd {
                SystemCommand::Check(a) | SystemCommand::Limit(a) => a,
            };
            let d = run.load(&args.tangle.tangle)?;
            let text = read(&args.system)?;
            run.digest(&args.system.display().to_string(), text.as_bytes());
            let family = SystemFile::parse(&text)?.family(&d)?;
            let g = TangleGeometry::new(&d);
            match cmd {
                SystemCommand::Check(_) => {
                    let directed = check_poset_directed(&family)?;
                    let mut inclusions = Vec::new();
                    for (i, a) in family.iter().enumerate() {
                        for (j, b) in family.iter().enumerate() {
                            if i != j && a.is_subset_of(b) {
                                let inc = check_chain_compatible(&g, a, b, o, z)?;
                                let res = restriction_is_chain_map(&g, b, a, o, z)?;
                                inclusions.push(json!({"from": i, "to": j,
                                    "chain_compatible": inc, "restriction": res}));
                            }
                        }
                    }
                    Ok(
                        json!({"sets": family.iter().map(|s| s.members()).collect::<Vec<_>>(),
                        "directedness": directed, "inclusions": inclusions}),
                    )
                }
                SystemCommand::Limit(_) => to_value(&build_homology_system(&g, &family, o, z)?),
            }
        }
        Command::Grow(a) => {
            let spec = match (&a.map, &a.saddle) {
                (Some(path), _) => {
                    let text = read(path)?;
                    run.digest(&path.display().to_string(), text.as_bytes());
                    serde_json::from_str::<MapSpec>(&text)?.validated()?
                }
                (None, Some(c)) => {
                    MapSpec::henon_with_saddle(hft_core::rational::parse_rational(c)?)?
                }
                (None, None) => MapSpec::default_henon(),
            };
            let mut p = GrowthParams::default();
            p.delta = a.delta.unwrap_or(p.delta);
            p.max_arc_length = a.length.unwrap_or(p.max_arc_length);
            p.max_points = a.max_points.unwrap_or(p.max_points);
            p.max_turn_degrees = a.max_turn.unwrap_or(p.max_turn_degrees);
            p.max_spacing = a.max_spacing.unwrap_or(p.max_spacing);
            p.snap_bits = a.snap_bits.unwrap_or(p.snap_bits);
            let d = grow_tangle(&spec, &p)?;
            svg(&d)?;
            run.raw = Some(TangleFile::from_diagram(&d).to_json());
            Ok(Value::Null)
        }
        Command::Example { name, manifest } => {
            let d = builtin_example(name)?;
            svg(&d)?;
            run.raw = Some(if *manifest {
                serde_json::to_string_pretty(&example_manifest(name)?)? + "\n"
            } else {
                TangleFile::from_diagram(&d).to_json()
            });
            Ok(Value::Null)
        }
    }
}

fn emit(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("HFT_LOG", "warn")).init();
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let report = json!({
                "command": argv[1..],
                "version": hft_core::VERSION,
                "inputs": [],
                "result": null,
                "error": {"kind": "usage", "message": e.to_string()},
            });
            let text = serde_json::to_string_pretty(&report).expect("serializable") + "\n";
            let _ = std::io::Write::write_all(&mut std::io::stdout(), text.as_bytes());
            return ExitCode::from(2);
        }
    };
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            log::warn!("could not size the thread pool: {e}");
        }
    }
    let started = Instant::now();
    let mut run = Run {
        inputs: Vec::new(),
        raw: None,
        partial: None,
    };
    let outcome = execute(&cli, &mut run);
    let code = match &outcome {
        Ok(_) => 0,
        Err(e) if e.is_input_error() => 2,
        Err(_) => 1,
    };
    if let (Ok(_), Some(raw)) = (&outcome, &run.raw) {
        return match emit(&cli, raw) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                log::error!("writing output: {e}");
                ExitCode::from(2)
            }
        };
    }
    let (result, error) = match outcome {
        Ok(v) => (v, Value::Null),
        Err(e) => {
            log::error!("{e}");
            let kind = format!("{e:?}");
            let kind = kind.split('(').next().unwrap_or("Error").to_string();
            (
                run.partial.take().unwrap_or(Value::Null),
                json!({"kind": kind, "message": e.to_string()}),
            )
        }
    };
    let mut report = Map::new();
    report.insert("command".into(), json!(argv[1..]));
    report.insert("version".into(), json!(hft_core::VERSION));
    report.insert("coefficients".into(), json!(cli.coeff));
    report.insert("orientation".into(), json!(cli.orient));
    report.insert("inputs".into(), Value::Array(run.inputs));
    report.insert("result".into(), result);
    report.insert("error".into(), error);
    if !cli.no_timing {
        report.insert(
            "timing_ms".into(),
            json!(started.elapsed().as_secs_f64() * 1e3),
        );
    }
    let text = serde_json::to_string_pretty(&Value::Object(report)).expect("serializable") + "\n";
    if let Err(e) = emit(&cli, &text) {
        log::error!("writing report: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
