//! `mdd`: solve, verify, generate and benchmark MDD(min)/MDD(max) instances.
//!
//! Exit codes: 0 success, 2 infeasible or inapplicable, 3 resource limit,
//! 4 bad input, 1 internal error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mdd_core::approx::{default_l_cap, mdd_max_logn};
use mdd_core::cubic::mdd_max_cubic;
use mdd_core::exact::{brute_force_optimum, OracleConfig, WeightMode};
use mdd_core::harness::{gnp, random_regular, random_set_system, run_experiment, Algorithm, ExperimentConfig};
use mdd_core::io::{
    parse_graph, parse_instance, parse_set_system, parse_solution, write_instance, write_roles, write_set_system,
    write_solution,
};
use mdd_core::reductions::{
    mindom_cubic_to_mddmax_cubic, mindom_to_mddmin, setcover_to_mddmax_bip, setcover_to_mddmin_bip, ReductionArtifact,
};
use mdd_core::subroutines::{dissociation_delete, dominating_set_approx, f_dependent_delete, FDepProblem};
use mdd_core::{is_feasible, is_feasible_set, DeletionSet, Error, Instance, Objective, Weight};
use serde_json::json;

#[derive(Parser)]
#[command(name = "mdd", version, about = "Unique min/max degree vertex deletion toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance file.
    Solve {
        instance: PathBuf,
        #[arg(long, default_value = "oracle")]
        algo: String,
        /// Maximum |L| for the logn algorithms (default ceil(log2 n) + 2).
        #[arg(long = "max-L")]
        max_l: Option<usize>,
        /// Oracle budget in examined subsets.
        #[arg(long)]
        budget: Option<u64>,
        /// Also write the solution to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Check a solution file against an instance file.
    Verify { instance: PathBuf, solution: PathBuf },
    /// Build an MDD instance from a MinDom graph or a Set Cover system.
    Reduce {
        #[arg(long, value_enum)]
        from: SourceKind,
        #[arg(long, value_enum)]
        to: TargetKind,
        input: PathBuf,
        /// Instance output file (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write `<id> <role>` lines here.
        #[arg(long)]
        roles: Option<PathBuf>,
    },
    /// Generate a random instance or set system.
    Gen {
        #[arg(value_enum)]
        family: GenFamily,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 0.5)]
        q: f64,
        /// Number of sets for `setsystem`.
        #[arg(long, default_value_t = 5)]
        t: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        p: usize,
        #[arg(long, default_value = "max")]
        objective: Objective,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a benchmark described by a JSON config.
    Bench {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run one of the degree-constrained subroutines on a graph file.
    Subroutine {
        #[command(subcommand)]
        which: SubroutineCmd,
    },
}

#[derive(Subcommand)]
enum SubroutineCmd {
    /// Delete vertices until every degree is at most `cap`.
    Fdep {
        graph: PathBuf,
        #[arg(long)]
        cap: usize,
    },
    /// Greedy dominating set.
    Domset { graph: PathBuf },
    /// Delete vertices until every degree is at most 1.
    Dissociation { graph: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum SourceKind {
    Mindom,
    Setcover,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetKind {
    Mddmin,
    Mddmax,
    MddminBip,
    MddmaxBip,
    Cubic,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenFamily {
    Regular,
    Cubic,
    Gnp,
    Setsystem,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Infeasible(_) | Error::Inapplicable(_) => 2,
        Error::Budget { .. } => 3,
        Error::InvalidVertex { .. }
        | Error::SelfLoop(_)
        | Error::DuplicateEdge(..)
        | Error::Precondition(_)
        | Error::Parse { .. }
        | Error::Config(_)
        | Error::Io(_) => 4,
        Error::Internal(_) => 1,
    }
}

fn read(path: &Path) -> mdd_core::Result<String> {
    fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
    })
}

fn emit(out: Option<&Path>, text: &str) -> mdd_core::Result<()> {
    match out {
        Some(path) => Ok(fs::write(path, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn ids(vs: &[usize]) -> String {
    vs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn logn_cap(inst: &Instance, max_l: Option<usize>) -> usize {
    max_l.unwrap_or_else(|| default_l_cap(inst.n()))
}

fn solve(
    path: &Path,
    algo: &str,
    max_l: Option<usize>,
    budget: Option<u64>,
    out: Option<&Path>,
    as_json: bool,
) -> mdd_core::Result<()> {
    let inst = parse_instance(&read(path)?)?;
    let algorithm: Algorithm = algo.parse()?;
    let (solution, lines, details) = run_algorithm(&inst, algorithm, max_l, budget).map_err(|e| match e {
        Error::Precondition(msg) => Error::Inapplicable(msg),
        other => other,
    })?;
    if !is_feasible(&inst, &solution) {
        return Err(Error::Internal(format!("{algorithm} produced infeasible {solution}")));
    }
    if let Some(path) = out {
        fs::write(path, write_solution(&solution))?;
    }
    if as_json {
        let mut obj = json!({
            "algorithm": algorithm.name(),
            "feasible": true,
            "size": solution.len(),
            "weight": solution.total_weight().to_string(),
            "solution": solution.vertices(),
        });
        obj.as_object_mut().expect("object").extend(details);
        println!("{}", serde_json::to_string_pretty(&obj).expect("serializable"));
    } else {
        println!("algorithm: {algorithm}");
        for l in lines {
            println!("{l}");
        }
        println!("size: {}", solution.len());
        println!("weight: {}", solution.total_weight());
        println!("solution: {}", ids(solution.vertices()));
    }
    Ok(())
}

type Details = serde_json::Map<String, serde_json::Value>;

/// The solution plus human-readable and JSON details of how it was found.
fn run_algorithm(
    inst: &Instance,
    algorithm: Algorithm,
    max_l: Option<usize>,
    budget: Option<u64>,
) -> mdd_core::Result<(DeletionSet, Vec<String>, Details)> {
    let mut details = serde_json::Map::new();
    let mut lines = Vec::new();
    let solution = match algorithm {
        Algorithm::Oracle => {
            let cfg = OracleConfig {
                weight_mode: WeightMode::Weighted,
                budget: budget.unwrap_or(OracleConfig::default().budget),
                ..Default::default()
            };
            brute_force_optimum(inst, &cfg)?
        }
        Algorithm::Logn => {
            let outcome = mdd_max_logn(inst, logn_cap(inst, max_l))?;
            lines.push(format!("L: {}", ids(&outcome.l.members)));
            lines.push(format!(
                "branches: {} ({} feasible)",
                outcome.branches, outcome.feasible_branches
            ));
            details.insert("logn".into(), serde_json::to_value(&outcome).expect("serializable"));
            outcome.solution
        }
        Algorithm::DualLogn => {
            if inst.objective() != Objective::Min {
                return Err(Error::Inapplicable("dual-logn solves objective min".into()));
            }
            let dual = inst.dualize();
            let outcome = mdd_max_logn(&dual, logn_cap(&dual, max_l))?;
            lines.push(format!("L (complement): {}", ids(&outcome.l.members)));
            DeletionSet::new(inst, outcome.solution.into_vertices())?
        }
        Algorithm::Cubic => {
            let outcome = mdd_max_cubic(inst)?;
            for c in &outcome.candidates {
                let what = match &c.solution {
                    Some(s) => format!("size {}", s.len()),
                    None => format!("skipped ({})", c.skipped.as_deref().unwrap_or("")),
                };
                lines.push(format!("candidate {}: {what}", c.case));
            }
            lines.push(format!("winner: {}", outcome.winner));
            details.insert("cubic".into(), serde_json::to_value(&outcome).expect("serializable"));
            outcome.solution
        }
        Algorithm::KregExact => mdd_core::exact::kregular_min_exact(inst)?,
    };
    Ok((solution, lines, details))
}

fn verify(instance: &Path, solution: &Path) -> mdd_core::Result<()> {
    let inst = parse_instance(&read(instance)?)?;
    let s = parse_solution(&read(solution)?)?;
    for &v in &s {
        inst.graph().check_vertex(v)?;
    }
    if s.contains(&inst.p()) {
        return Err(Error::Infeasible(format!("solution deletes p = {}", inst.p())));
    }
    let weight = inst.weight_of(&s);
    if is_feasible_set(&inst, &s) {
        println!("feasible (size {}, weight {weight})", s.len());
        Ok(())
    } else {
        Err(Error::Infeasible(format!("p is not the unique {} degree vertex", match inst.objective() {
            Objective::Min => "minimum",
            Objective::Max => "maximum",
        })))
    }
}

fn reduce(from: SourceKind, to: TargetKind, input: &Path, out: Option<&Path>, roles: Option<&Path>) -> mdd_core::Result<()> {
    let text = read(input)?;
    let (instance, art): (Instance, Option<ReductionArtifact>) = match (from, to) {
        (SourceKind::Mindom, TargetKind::Mddmin) => {
            let art = mindom_to_mddmin(&parse_graph(&text)?)?;
            (art.instance.clone(), Some(art))
        }
        (SourceKind::Mindom, TargetKind::Mddmax) => {
            let art = mindom_to_mddmin(&parse_graph(&text)?)?;
            (art.instance.dualize(), Some(art))
        }
        (SourceKind::Mindom, TargetKind::Cubic) => {
            let art = mindom_cubic_to_mddmax_cubic(&parse_graph(&text)?)?;
            (art.instance.clone(), Some(art))
        }
        (SourceKind::Setcover, TargetKind::MddminBip) => {
            let art = setcover_to_mddmin_bip(&parse_set_system(&text)?)?;
            (art.instance.clone(), Some(art))
        }
        (SourceKind::Setcover, TargetKind::MddmaxBip) => {
            let art = setcover_to_mddmax_bip(&parse_set_system(&text)?)?;
            (art.instance.clone(), Some(art))
        }
        _ => {
            return Err(Error::Config(
                "supported: mindom -> mddmin|mddmax|cubic, setcover -> mddmin-bip|mddmax-bip".into(),
            ))
        }
    };
    emit(out, &write_instance(&instance))?;
    if let (Some(path), Some(art)) = (roles, art) {
        fs::write(path, write_roles(&art))?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn gen(
    family: GenFamily,
    n: usize,
    k: usize,
    q: f64,
    t: usize,
    seed: u64,
    p: usize,
    objective: Objective,
    out: Option<&Path>,
) -> mdd_core::Result<()> {
    let g = match family {
        GenFamily::Regular => random_regular(n, k, seed)?,
        GenFamily::Cubic => random_regular(n, 3, seed)?,
        GenFamily::Gnp => gnp(n, q, seed)?,
        GenFamily::Setsystem => return emit(out, &write_set_system(&random_set_system(n, t, q, seed)?)),
    };
    emit(out, &write_instance(&Instance::new(g, p, objective)?))
}

fn bench(config: &Path, csv: Option<&Path>, json_out: Option<&Path>) -> mdd_core::Result<()> {
    let cfg: ExperimentConfig =
        serde_json::from_str(&read(config)?).map_err(|e| Error::Config(format!("{}: {e}", config.display())))?;
    let report = run_experiment(&cfg)?;
    if let Some(path) = json_out {
        fs::write(path, report.to_json()?)?;
    }
    match csv {
        Some(path) => fs::write(path, report.to_csv()?)?,
        None if json_out.is_none() => print!("{}", report.to_csv()?),
        None => {}
    }
    for a in &report.aggregates {
        let fmt = |x: Option<f64>| x.map_or("-".to_string(), |v| format!("{v:.3}"));
        eprintln!(
            "{}: {}/{} ok, ratio mean {} median {} max {}",
            a.algorithm,
            a.ok,
            a.rows,
            fmt(a.mean_ratio),
            fmt(a.median_ratio),
            fmt(a.max_ratio)
        );
    }
    Ok(())
}

fn subroutine(which: SubroutineCmd) -> mdd_core::Result<()> {
    let (name, set) = match which {
        SubroutineCmd::Fdep { graph, cap } => {
            let prob = FDepProblem::uniform(parse_graph(&read(&graph)?)?, cap);
            let s = f_dependent_delete(&prob)?;
            if !prob.is_solution(&s) {
                return Err(Error::Internal("f-dependent output violates a cap".into()));
            }
            ("fdep", s)
        }
        SubroutineCmd::Domset { graph } => {
            let g = parse_graph(&read(&graph)?)?;
            let s = dominating_set_approx(&g, &[], &vec![Weight::ONE; g.n()])?;
            if !g.is_dominating(&s) {
                return Err(Error::Internal("dominating set output does not dominate".into()));
            }
            ("domset", s)
        }
        SubroutineCmd::Dissociation { graph } => {
            let g = parse_graph(&read(&graph)?)?;
            let s = dissociation_delete(&g, &vec![Weight::ONE; g.n()])?;
            ("dissociation", s)
        }
    };
    println!("{name}: size {}", set.len());
    println!("{}", ids(&set));
    Ok(())
}

fn run(cli: Cli) -> mdd_core::Result<()> {
    match cli.command {
        Command::Solve {
            instance,
            algo,
            max_l,
            budget,
            out,
            json,
        } => solve(&instance, &algo, max_l, budget, out.as_deref(), json),
        Command::Verify { instance, solution } => verify(&instance, &solution),
        Command::Reduce {
            from,
            to,
            input,
            out,
            roles,
        } => reduce(from, to, &input, out.as_deref(), roles.as_deref()),
        Command::Gen {
            family,
            n,
            k,
            q,
            t,
            seed,
            p,
            objective,
            out,
        } => gen(family, n, k, q, t, seed, p, objective, out.as_deref()),
        Command::Bench { config, csv, json } => bench(&config, csv.as_deref(), json.as_deref()),
        Command::Subroutine { which } => subroutine(which),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
