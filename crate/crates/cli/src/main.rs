//! `grouplab`: command-line surface over the group-algebra toolkit.
//!
//! Groups are given in the spec grammar (`C6`, `D8`, `Q8`, `C2xC4`, or a
//! JSON `{"name":.., "table":[[..]]}` object). Involutions and
//! orientations are selected by enumeration index or by the named forms
//! `classical`, `canonical`, `trivial`, and `kernel:<elements>`. All
//! output is JSON with a top-level `"schema": 1`, except `--format
//! markdown` on verification runs.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use grouplab_core::algebra::AlgebraContext;
use grouplab_core::group::{build_group, FiniteGroup};
use grouplab_core::identity::{enumerate_units, satisfies_identity, WordIdentity};
use grouplab_core::involution::{
    enumerate_involutions, enumerate_orientations, make_pair, slc_canonical_involution,
    AntiAutomorphism, Orientation, OrientedPair,
};
use grouplab_core::predicates::{classify_modular, classify_oriented};
use grouplab_core::verify::{
    emit_pipeline_report, emit_report, run_modular_pipeline, verify_oriented, verify_unoriented,
    Bounds, ReportFormat,
};

#[derive(Parser)]
#[command(
    name = "grouplab",
    version,
    about = "Group algebras with oriented involutions"
)]
struct Cli {
    /// Primes for the algebra side (comma separated). Sweeps use all of
    /// them; single-context commands take exactly one (default 3).
    #[arg(short = 'p', long = "primes", global = true, value_delimiter = ',')]
    primes: Vec<u64>,
    /// Largest group order included in verification sweeps.
    #[arg(long, global = true, default_value_t = 16)]
    max_order: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyMode {
    Lemma5,
    Lemma8,
}

#[derive(Subcommand)]
enum Command {
    /// List all involutions of a group as permutation vectors.
    Involutions { spec: String },
    /// List the orientations of a group as sign vectors.
    Orientations {
        spec: String,
        #[arg(long)]
        include_trivial: bool,
    },
    /// Evaluate the structural classification for one oriented pair.
    Classify {
        spec: String,
        #[arg(long, default_value = "classical")]
        involution: String,
        #[arg(long)]
        orientation: String,
    },
    /// Algebra-side computations for one context.
    Algebra {
        spec: String,
        #[arg(long, default_value = "classical")]
        involution: String,
        #[arg(long, default_value = "trivial")]
        orientation: String,
        #[command(subcommand)]
        op: AlgebraOp,
    },
    /// Enumerate the units (or symmetric units) of a context.
    Units {
        spec: String,
        #[arg(long, default_value = "classical")]
        involution: String,
        #[arg(long, default_value = "trivial")]
        orientation: String,
        #[arg(long)]
        symmetric: bool,
    },
    /// Check a word identity over the units of a context.
    Identity {
        spec: String,
        #[arg(long, default_value = "classical")]
        involution: String,
        #[arg(long, default_value = "trivial")]
        orientation: String,
        /// Word grammar: x<i>, w^<k>, juxtaposition, (w1,w2) commutators.
        #[arg(long)]
        word: String,
        #[arg(long)]
        symmetric: bool,
    },
    /// Run a corpus-wide oracle verification sweep.
    Verify {
        #[arg(value_enum)]
        mode: VerifyMode,
    },
    /// Run the modular pipeline for one context.
    Pipeline {
        spec: String,
        #[arg(long, default_value = "classical")]
        involution: String,
        #[arg(long)]
        orientation: String,
    },
}

#[derive(Subcommand)]
enum AlgebraOp {
    /// Dimension of the symmetric (involution-fixed) subspace.
    SymmetricDim,
    /// Whether the symmetric subspace is a commutative subring.
    SymmetricCommutes,
    /// Whether the symmetric subspace sits inside the center.
    SymmetricCentral,
    /// The delta ideal of a normal subgroup.
    Delta {
        /// `trivial`, `all`, `p` (the p-elements), or `gens:<i,j,...>`.
        subgroup: String,
        /// Also compute the nilpotency index.
        #[arg(long)]
        nilpotency: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let bounds = Bounds::default();
    match &cli.command {
        Command::Involutions { spec } => {
            let g = group(spec)?;
            let involutions = enumerate_involutions(&g, bounds.involution_order_bound)?;
            let doc = json!({
                "schema": 1,
                "group": g.name(),
                "order": g.order(),
                "count": involutions.len(),
                "involutions": involutions.iter().map(|t| t.image().to_vec()).collect::<Vec<_>>(),
            });
            emit(&cli, serde_json::to_string_pretty(&doc)? + "\n")?;
        }
        Command::Orientations {
            spec,
            include_trivial,
        } => {
            let g = group(spec)?;
            let orientations = enumerate_orientations(&g, *include_trivial);
            let doc = json!({
                "schema": 1,
                "group": g.name(),
                "order": g.order(),
                "count": orientations.len(),
                "orientations": orientations
                    .iter()
                    .map(|o| o.signs().iter().map(|&s| s as i64).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            });
            emit(&cli, serde_json::to_string_pretty(&doc)? + "\n")?;
        }
        Command::Classify {
            spec,
            involution,
            orientation,
        } => {
            let g = group(spec)?;
            let pair = pair(&g, involution, orientation)?;
            let doc = if cli.primes.is_empty() {
                let report = classify_oriented(&g, &pair)?;
                json!({ "schema": 1, "report": report })
            } else {
                let p = single_prime(&cli)?;
                let m = classify_modular(&g, &pair, p)?;
                json!({
                    "schema": 1,
                    "p": p,
                    "p_subgroup_order": m.p_members.len(),
                    "quotient_abelian": m.quotient_abelian,
                    "report": m.report,
                })
            };
            emit(&cli, serde_json::to_string_pretty(&doc)? + "\n")?;
        }
        Command::Algebra {
            spec,
            involution,
            orientation,
            op,
        } => {
            let g = group(spec)?;
            let ctx = AlgebraContext::new(
                g.clone(),
                single_prime(&cli)?,
                pair(&g, involution, orientation)?,
            )?;
            let doc = match op {
                AlgebraOp::SymmetricDim => json!({
                    "schema": 1,
                    "dim": ctx.symmetric_dim(),
                    "flags": { "regular": ctx.is_regular() },
                    "witnesses": [],
                }),
                AlgebraOp::SymmetricCommutes => json!({
                    "schema": 1,
                    "dim": ctx.symmetric_dim(),
                    "flags": { "symmetric_commutes": ctx.symmetric_is_commutative() },
                    "witnesses": [],
                }),
                AlgebraOp::SymmetricCentral => json!({
                    "schema": 1,
                    "dim": ctx.symmetric_dim(),
                    "flags": { "symmetric_central": ctx.symmetric_is_central() },
                    "witnesses": [],
                }),
                AlgebraOp::Delta {
                    subgroup,
                    nilpotency,
                } => {
                    let h = subgroup_arg(&g, subgroup, &cli)?;
                    let ideal = ctx.delta_ideal(&h)?;
                    let index = if *nilpotency {
                        ctx.nilpotency_index(&ideal, ctx.dim() + 1)?
                    } else {
                        None
                    };
                    json!({
                        "schema": 1,
                        "dim": ideal.dim(),
                        "flags": {
                            "subgroup_order": h.len(),
                            "nilpotency": index,
                        },
                        "witnesses": [],
                    })
                }
            };
            emit(&cli, serde_json::to_string_pretty(&doc)? + "\n")?;
        }
        Command::Units {
            spec,
            involution,
            orientation,
            symmetric,
        } => {
            let g = group(spec)?;
            let ctx = AlgebraContext::new(
                g.clone(),
                single_prime(&cli)?,
                pair(&g, involution, orientation)?,
            )?;
            let set = enumerate_units(&ctx, *symmetric, bounds.unit_space_cap as u128)?;
            let doc = json!({
                "schema": 1,
                "group": g.name(),
                "p": ctx.prime(),
                "symmetric_only": symmetric,
                "count": set.len(),
                "units": set.units().iter().map(|u| u.coeffs().to_vec()).collect::<Vec<_>>(),
            });
            emit(&cli, serde_json::to_string_pretty(&doc)? + "\n")?;
        }
        Command::Identity {
            spec,
            involution,
            orientation,
            word,
            symmetric,
        } => {
            let g = group(spec)?;
            let ctx = AlgebraContext::new(
                g.clone(),
                single_prime(&cli)?,
                pair(&g, involution, orientation)?,
            )?;
            let w = WordIdentity::parse(word)?;
            let set = enumerate_units(&ctx, *symmetric, bounds.unit_space_cap as u128)?;
            let verdict = satisfies_identity(&set, &w, bounds.tuple_cap as u128)?;
            let doc = json!({
                "schema": 1,
                "group": g.name(),
                "p": ctx.prime(),
                "word": w.to_string(),
                "symmetric_only": symmetric,
                "unit_count": set.len(),
                "holds": verdict.holds,
                "witness": verdict
                    .witness
                    .map(|args| args.iter().map(|a| a.coeffs().to_vec()).collect::<Vec<_>>()),
            });
            emit(&cli, serde_json::to_string_pretty(&doc)? + "\n")?;
        }
        Command::Verify { mode } => {
            let primes = if cli.primes.is_empty() {
                vec![3, 5]
            } else {
                cli.primes.clone()
            };
            let run = match mode {
                VerifyMode::Lemma5 => verify_unoriented(&primes, cli.max_order, &bounds),
                VerifyMode::Lemma8 => verify_oriented(&primes, cli.max_order, &bounds),
            };
            let format = match cli.format {
                Format::Json => ReportFormat::Json,
                Format::Markdown => ReportFormat::Markdown,
            };
            emit(&cli, emit_report(&run, format))?;
            if run.summary.disagreements > 0 {
                eprintln!(
                    "{} disagreements over {} processed triples",
                    run.summary.disagreements, run.summary.processed
                );
                return Ok(ExitCode::from(1));
            }
        }
        Command::Pipeline {
            spec,
            involution,
            orientation,
        } => {
            let g = group(spec)?;
            let pair = pair(&g, involution, orientation)?;
            let report = run_modular_pipeline(&g, &pair, single_prime(&cli)?, &bounds)?;
            emit(&cli, emit_pipeline_report(&report))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn group(spec: &str) -> Result<Arc<FiniteGroup>, grouplab_core::Error> {
    Ok(Arc::new(build_group(spec)?))
}

fn single_prime(cli: &Cli) -> Result<u64, Box<dyn std::error::Error>> {
    match cli.primes.len() {
        0 => Ok(3),
        1 => Ok(cli.primes[0]),
        _ => Err("this command takes exactly one prime".into()),
    }
}

fn pair(
    g: &Arc<FiniteGroup>,
    involution: &str,
    orientation: &str,
) -> Result<OrientedPair, Box<dyn std::error::Error>> {
    let star = resolve_involution(g, involution)?;
    let sigma = resolve_orientation(g, orientation)?;
    Ok(make_pair(star, sigma)?)
}

fn resolve_involution(
    g: &Arc<FiniteGroup>,
    arg: &str,
) -> Result<AntiAutomorphism, Box<dyn std::error::Error>> {
    match arg {
        "classical" => Ok(AntiAutomorphism::classical(g.clone())),
        "canonical" => slc_canonical_involution(g)
            .ok_or_else(|| format!("{} carries no canonical involution", g.name()).into()),
        index => {
            let i: usize = index
                .parse()
                .map_err(|_| format!("bad involution selector {index:?}"))?;
            let mut all = enumerate_involutions(g, 16)?;
            if i >= all.len() {
                return Err(format!("{} has {} involutions", g.name(), all.len()).into());
            }
            Ok(all.swap_remove(i))
        }
    }
}

fn resolve_orientation(
    g: &Arc<FiniteGroup>,
    arg: &str,
) -> Result<Orientation, Box<dyn std::error::Error>> {
    if arg == "trivial" {
        return Ok(Orientation::trivial(g.clone()));
    }
    if let Some(gens) = arg.strip_prefix("kernel:") {
        let gens = parse_elements(g, gens)?;
        let kernel = g.subgroup_generated(&gens);
        return Ok(Orientation::from_kernel(g.clone(), kernel)?);
    }
    let i: usize = arg
        .parse()
        .map_err(|_| format!("bad orientation selector {arg:?}"))?;
    let mut all = enumerate_orientations(g, false);
    if i >= all.len() {
        return Err(format!("{} has {} non-trivial orientations", g.name(), all.len()).into());
    }
    Ok(all.swap_remove(i))
}

fn parse_elements(g: &FiniteGroup, list: &str) -> Result<Vec<usize>, Box<dyn std::error::Error>> {
    let mut out = Vec::new();
    for part in list.split(',') {
        let x: usize = part
            .trim()
            .parse()
            .map_err(|_| format!("bad element index {part:?}"))?;
        if x >= g.order() {
            return Err(format!("element {x} out of range for {}", g.name()).into());
        }
        out.push(x);
    }
    Ok(out)
}

fn subgroup_arg(
    g: &Arc<FiniteGroup>,
    arg: &str,
    cli: &Cli,
) -> Result<grouplab_core::SubgroupSet, Box<dyn std::error::Error>> {
    match arg {
        "trivial" => Ok(g.trivial_subgroup()),
        "all" => Ok(g.full_subgroup()),
        "p" => {
            let p = single_prime(cli)?;
            let set = g.p_elements(p)?;
            set.as_subgroup(g)
                .ok_or_else(|| grouplab_core::Error::PNotSubgroup { p }.into())
        }
        other => {
            let gens = parse_elements(g, other.strip_prefix("gens:").unwrap_or(other))?;
            Ok(g.subgroup_generated(&gens))
        }
    }
}

fn emit(cli: &Cli, text: String) -> std::io::Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
