//! `mcm`: batch front-end for the MCM module engine.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use mcm_core::catalog::Catalog;
use mcm_core::ci::{
    eisenbud_operators, eisenbud_operators_perturbed, support_annihilator_window, CIPresentation,
};
use mcm_core::functors::{dual, link, mcm_approx, mcm_approx_ext, syzygy_signed, transpose};
use mcm_core::io::{self, Overrides};
use mcm_core::iso::SearchBudget;
use mcm_core::mf::from_resolution_tail;
use mcm_core::module::GradedModule;
use mcm_core::quiver::{component_classify, ARQuiver, Property};
use mcm_core::resolution::{detect_period, growth_report, resolve, DEFAULT_HOM_BOUND};
use mcm_core::suites::{overall, run_suite, Status, Suite};
use mcm_core::{Error, Result};

#[derive(Parser)]
#[command(name = "mcm", version, about = "Exact computations with MCM modules over graded Gorenstein rings")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Characteristic of the coefficient field (overrides input files).
    #[arg(long, global = true)]
    modulus: Option<u32>,
    /// Weighted degree cap for all graded pieces.
    #[arg(long, global = true)]
    degree_bound: Option<i32>,
    /// Homological bound H.
    #[arg(long, short = 'H', global = true, default_value_t = DEFAULT_HOM_BOUND)]
    hom_bound: usize,
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads for independent catalog items.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Dot,
    Json,
}

#[derive(Args, Clone)]
struct ModuleInput {
    /// Module JSON file.
    #[arg(long)]
    module: Option<PathBuf>,
    /// Catalog id such as ade:A3:dim1, used with --entry.
    #[arg(long)]
    catalog: Option<String>,
    #[arg(long)]
    entry: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Minimal free resolution; Betti CSV by default.
    Resolve(ModuleInput),
    Betti(ModuleInput),
    Syzygy {
        #[command(flatten)]
        input: ModuleInput,
        #[arg(short, default_value_t = 1)]
        n: usize,
    },
    Cosyzygy {
        #[command(flatten)]
        input: ModuleInput,
        #[arg(short, default_value_t = 1)]
        n: usize,
    },
    Dual(ModuleInput),
    Transpose(ModuleInput),
    Link(ModuleInput),
    /// MCM approximation.
    Approx {
        #[command(flatten)]
        input: ModuleInput,
        /// stable: Syz_-d Syz_d; ext: through Ext^c(M, A).
        #[arg(long, default_value = "stable")]
        method: String,
    },
    Period {
        #[command(flatten)]
        input: ModuleInput,
        #[arg(long, default_value_t = 2)]
        p_max: usize,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
    },
    Growth(ModuleInput),
    MfValidate {
        #[arg(long)]
        mf: PathBuf,
    },
    /// Matrix factorization from the periodic tail of a resolution.
    MfExtract(ModuleInput),
    Quiver {
        #[arg(long, required = true, num_args = 1..)]
        catalog: Vec<String>,
    },
    Classify {
        #[arg(long, required = true, num_args = 1..)]
        catalog: Vec<String>,
        #[arg(long)]
        property: String,
    },
    CiOperators {
        #[command(flatten)]
        input: ModuleInput,
        /// Recompute with this many randomly perturbed lifts.
        #[arg(long, default_value_t = 0)]
        perturb: u64,
    },
    Support {
        #[command(flatten)]
        input: ModuleInput,
        #[arg(long, default_value_t = mcm_core::ci::DEFAULT_TDEG)]
        tdeg: usize,
    },
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, required = true, num_args = 1..)]
        catalog: Vec<String>,
    },
}

struct Ctx {
    ov: Overrides,
    h: usize,
    seed: u64,
    budget: SearchBudget,
    command: &'static str,
}

impl Ctx {
    fn module(&self, input: &ModuleInput) -> Result<GradedModule> {
        match (&input.module, &input.catalog) {
            (Some(p), None) => io::load_module(p, self.ov),
            (None, Some(id)) => io::build_module(
                &io::ModuleSpec {
                    catalog: Some(id.clone()),
                    entry: input.entry.clone(),
                    ..Default::default()
                },
                self.ov,
            ),
            _ => Err(Error::Input("give either --module or --catalog".into())),
        }
    }

    fn catalog(&self, id: &str) -> Result<Catalog> {
        io::load_catalog_with(id, self.ov)
    }

    fn header(&self, comment: &str) -> String {
        let cap = self.ov.degree_cap.map_or("default".to_string(), |c| c.to_string());
        format!("{comment} mcm {} seed={} H={} degree_bound={cap}\n", self.command, self.seed, self.h)
    }

    fn wrap(&self, result: Value) -> String {
        let v = json!({
            "command": self.command,
            "seed": self.seed,
            "hom_bound": self.h,
            "degree_bound": self.ov.degree_cap,
            "result": result,
        });
        serde_json::to_string_pretty(&v).unwrap() + "\n"
    }
}

/// Output text plus the exit code it implies.
struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn module_json(m: &GradedModule) -> Value {
    serde_json::to_value(io::module_spec(m)).unwrap()
}

fn pick(f: Option<Format>, default: Format, allowed: &[Format]) -> Result<Format> {
    let f = f.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Error::Input("this command does not support the requested format".into()))
    }
}

fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool")
        .install(f)
}

fn run(cli: &Cli, ctx: &Ctx) -> Result<Output> {
    use Format::*;
    let fmt = cli.format;
    let module_out = |m: GradedModule| -> Result<Output> {
        pick(fmt, Json, &[Json])?;
        Ok(Output::ok(ctx.wrap(module_json(&m))))
    };
    match &cli.cmd {
        Cmd::Resolve(input) => {
            let res = resolve(&ctx.module(input)?, ctx.h)?;
            match pick(fmt, Csv, &[Csv, Json])? {
                Csv => Ok(Output::ok(ctx.header("#") + &res.betti_csv())),
                _ => {
                    let diffs: Vec<Value> = (1..=res.length())
                        .map(|i| json!(res.differential(i).format_entries()))
                        .collect();
                    let degs: Vec<&[i32]> = (0..=res.length()).map(|i| res.generator_degrees(i)).collect();
                    Ok(Output::ok(ctx.wrap(json!({
                        "betti": res.betti(),
                        "generator_degrees": degs,
                        "differentials": diffs,
                        "projective_dimension": res.projective_dimension(),
                    }))))
                }
            }
        }
        Cmd::Betti(input) => {
            let b = resolve(&ctx.module(input)?, ctx.h)?.betti();
            match pick(fmt, Csv, &[Csv, Json])? {
                Csv => {
                    let mut s = ctx.header("#") + "i,beta\n";
                    for (i, x) in b.iter().enumerate() {
                        s += &format!("{i},{x}\n");
                    }
                    Ok(Output::ok(s))
                }
                _ => Ok(Output::ok(ctx.wrap(json!({ "betti": b })))),
            }
        }
        Cmd::Syzygy { input, n } => module_out(syzygy_signed(&ctx.module(input)?, *n as i32)?),
        Cmd::Cosyzygy { input, n } => module_out(syzygy_signed(&ctx.module(input)?, -(*n as i32))?),
        Cmd::Dual(input) => module_out(dual(&ctx.module(input)?)?),
        Cmd::Transpose(input) => module_out(transpose(&ctx.module(input)?)?),
        Cmd::Link(input) => module_out(link(&ctx.module(input)?)?),
        Cmd::Approx { input, method } => {
            let m = ctx.module(input)?;
            match method.as_str() {
                "stable" => module_out(mcm_approx(&m)?),
                "ext" => module_out(mcm_approx_ext(&m)?),
                _ => Err(Error::Input(format!("unknown approximation method '{method}'"))),
            }
        }
        Cmd::Period { input, p_max, n_max } => {
            pick(fmt, Json, &[Json])?;
            match detect_period(&ctx.module(input)?, *p_max, *n_max, &ctx.budget)? {
                Some((n0, p)) => Ok(Output::ok(ctx.wrap(json!({ "n0": n0, "period": p })))),
                None => Ok(Output {
                    text: ctx.wrap(json!({ "n0": null, "period": null, "verdict": "none within bounds" })),
                    code: 2,
                }),
            }
        }
        Cmd::Growth(input) => {
            pick(fmt, Json, &[Json])?;
            let g = growth_report(&ctx.module(input)?, ctx.h)?;
            Ok(Output::ok(ctx.wrap(serde_json::to_value(g).unwrap())))
        }
        Cmd::MfValidate { mf } => {
            let mf = io::load_mf(mf, ctx.ov)?;
            let valid = mf.validate()?;
            let reduced = mf.is_reduced();
            let code = if valid { 0 } else { 1 };
            match pick(fmt, Json, &[Csv, Json])? {
                Csv => Ok(Output {
                    text: ctx.header("#") + &format!("check,value\nvalid,{valid}\nreduced,{reduced}\nsize,{}\n", mf.size()),
                    code,
                }),
                _ => Ok(Output {
                    text: ctx.wrap(json!({ "valid": valid, "reduced": reduced, "size": mf.size() })),
                    code,
                }),
            }
        }
        Cmd::MfExtract(input) => {
            pick(fmt, Json, &[Json])?;
            let (n, mf) = from_resolution_tail(&ctx.module(input)?, ctx.h)?;
            let spec = serde_json::to_value(io::mf_spec(&mf)).unwrap();
            Ok(Output::ok(ctx.wrap(json!({ "from_step": n, "factorization": spec }))))
        }
        Cmd::Quiver { catalog } => {
            let f = pick(fmt, Dot, &[Dot, Json])?;
            let built: Vec<Result<ARQuiver>> = with_pool(cli.jobs, || {
                catalog
                    .par_iter()
                    .map(|id| ARQuiver::build(ctx.catalog(id)?.vertices()?, &ctx.budget))
                    .collect()
            });
            let qs = built.into_iter().collect::<Result<Vec<_>>>()?;
            if f == Dot {
                let mut s = ctx.header("//");
                for (id, q) in catalog.iter().zip(&qs) {
                    s += &format!("// {id}\n");
                    s += &q.to_dot();
                }
                Ok(Output::ok(s))
            } else {
                let v: Vec<Value> = catalog
                    .iter()
                    .zip(&qs)
                    .map(|(id, q)| json!({ "catalog": id, "quiver": q.report() }))
                    .collect();
                Ok(Output::ok(ctx.wrap(json!(v))))
            }
        }
        Cmd::Classify { catalog, property } => {
            pick(fmt, Json, &[Json])?;
            let p = Property::parse(property)?;
            let reps: Vec<Result<Value>> = with_pool(cli.jobs, || {
                catalog
                    .par_iter()
                    .map(|id| {
                        let q = ARQuiver::build(ctx.catalog(id)?.vertices()?, &ctx.budget)?;
                        let r = component_classify(&q, p, ctx.h, &ctx.budget)?;
                        Ok(json!({ "catalog": id, "report": r }))
                    })
                    .collect()
            });
            let reps = reps.into_iter().collect::<Result<Vec<_>>>()?;
            let violated = reps.iter().any(|r| {
                r["report"]["components"].as_array().unwrap().iter().any(|c| c["status"] == "violation")
            });
            Ok(Output { text: ctx.wrap(json!(reps)), code: if violated { 1 } else { 0 } })
        }
        Cmd::CiOperators { input, perturb } => {
            pick(fmt, Json, &[Json])?;
            let m = ctx.module(input)?;
            let ci = CIPresentation::new(m.ring())?;
            let e = eisenbud_operators(&ci, &m, ctx.h)?;
            let mut stable = true;
            for k in 0..*perturb {
                let p = eisenbud_operators_perturbed(&ci, &m, ctx.h, ctx.seed.wrapping_add(k))?;
                stable &= p.operators == e.operators;
            }
            let ops: Vec<Vec<Vec<Vec<u32>>>> = e
                .operators
                .iter()
                .map(|per_n| per_n.iter().map(|a| (0..a.rows()).map(|r| a.row(r).to_vec()).collect()).collect())
                .collect();
            let commute = e.operators_commute();
            Ok(Output {
                text: ctx.wrap(json!({
                    "codim": e.codim,
                    "ext_dims": e.dims,
                    "operators": ops,
                    "operators_commute": commute,
                    "perturbations": perturb,
                    "lift_independent": stable,
                })),
                code: if commute && stable { 0 } else { 1 },
            })
        }
        Cmd::Support { input, tdeg } => {
            pick(fmt, Json, &[Json])?;
            let m = ctx.module(input)?;
            let ci = CIPresentation::new(m.ring())?;
            let e = eisenbud_operators(&ci, &m, ctx.h)?;
            let label = input
                .entry
                .clone()
                .or_else(|| input.module.as_ref().map(|p| p.display().to_string()))
                .unwrap_or_default();
            let r = support_annihilator_window(&e, *tdeg, &label);
            Ok(Output::ok(ctx.wrap(serde_json::to_value(r).unwrap())))
        }
        Cmd::Verify { suite, catalog } => {
            let s = Suite::parse(suite)?;
            let per: Vec<Result<Vec<mcm_core::suites::CheckLine>>> = with_pool(cli.jobs, || {
                catalog.par_iter().map(|id| run_suite(&ctx.catalog(id)?, s, ctx.h, &ctx.budget)).collect()
            });
            let mut lines = Vec::new();
            for r in per {
                lines.extend(r?);
            }
            let code = match overall(&lines) {
                Status::Pass => 0,
                Status::Fail => 1,
                Status::Inconclusive => 2,
            };
            let text = match pick(fmt, Csv, &[Csv, Json])? {
                Csv => {
                    let mut t = ctx.header("#") + "catalog,check,subject,status,detail\n";
                    for l in &lines {
                        t += &format!(
                            "{},{},{},{},\"{}\"\n",
                            l.catalog,
                            l.check,
                            l.subject,
                            l.status.as_str(),
                            l.detail.replace('"', "'")
                        );
                    }
                    t
                }
                _ => ctx.wrap(serde_json::to_value(&lines).unwrap()),
            };
            Ok(Output { text, code })
        }
    }
}

fn command_name(c: &Cmd) -> &'static str {
    match c {
        Cmd::Resolve(_) => "resolve",
        Cmd::Betti(_) => "betti",
        Cmd::Syzygy { .. } => "syzygy",
        Cmd::Cosyzygy { .. } => "cosyzygy",
        Cmd::Dual(_) => "dual",
        Cmd::Transpose(_) => "transpose",
        Cmd::Link(_) => "link",
        Cmd::Approx { .. } => "approx",
        Cmd::Period { .. } => "period",
        Cmd::Growth(_) => "growth",
        Cmd::MfValidate { .. } => "mf-validate",
        Cmd::MfExtract(_) => "mf-extract",
        Cmd::Quiver { .. } => "quiver",
        Cmd::Classify { .. } => "classify",
        Cmd::CiOperators { .. } => "ci-operators",
        Cmd::Support { .. } => "support",
        Cmd::Verify { .. } => "verify",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.hom_bound == 0 || cli.jobs == 0 || cli.degree_bound.is_some_and(|d| d <= 0) {
        eprintln!("error: bounds must be positive");
        return ExitCode::from(1);
    }
    let ctx = Ctx {
        ov: Overrides { modulus: cli.modulus, degree_cap: cli.degree_bound },
        h: cli.hom_bound,
        seed: cli.seed,
        budget: SearchBudget::with_seed(cli.seed),
        command: command_name(&cli.cmd),
    };
    match run(&cli, &ctx) {
        Ok(out) => {
            let written = match &cli.out {
                Some(p) => std::fs::write(p, out.text.as_bytes()),
                None => std::io::stdout().write_all(out.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_inconclusive() { 2 } else { 1 })
        }
    }
}
