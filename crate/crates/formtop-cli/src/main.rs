mod dot;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use formtop::construct::{
    construction_lazy, construction_theory, degroot, lawson_models, lower_theory, model_translations, patch_models,
    saturated_subsets, scott_site, vietoris_theory, LowerForm, PatchKind, LAZY_BASE_BOUND,
};
use formtop::core::{classify, site_from_json, site_to_json, FinSubset, FiniteSite};
use formtop::examples::{self, cantor_oracle, upper_reals_oracle};
use formtop::core::OracleSite;
use formtop::located::{
    enumerate_cuts, enumerate_located, enumerate_located_points, enumerate_points, enumerate_splitting,
    ENUMERATION_BOUND,
};
use formtop::subtop::{closed_sub, kfit, open_sub, perfect_search, psub_patch_iso};
use formtop::theory::{enumerate_models, GeometricTheory, MODEL_ENUMERATION_BOUND};
use formtop::verify::{run_all, run_suite, suite_id, VerifyOptions};
use formtop::Error;

#[derive(Parser)]
#[command(name = "formtop", version, about = "Finite formal topologies: sites, located subsets, constructions, checks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a named fixture as site JSON, or an oracle descriptor. `list` names them.
    Example { name: String },
    /// Saturate a subset of a site.
    Saturate {
        #[arg(long)]
        site: String,
        /// Element names.
        elems: Vec<String>,
    },
    /// Classify a site (compact, regular, stably locally compact, spectral, ...).
    Classify {
        #[arg(long)]
        site: String,
    },
    /// List the models of a construction's theory.
    Models {
        #[arg(long, value_enum)]
        theory: TheoryKind,
        #[arg(long)]
        site: String,
        /// Base bound for subset enumeration.
        #[arg(long, default_value_t = ENUMERATION_BOUND)]
        max_base: usize,
        /// Generator bound for direct model enumeration; larger theories use the located route.
        #[arg(long, default_value_t = MODEL_ENUMERATION_BOUND)]
        max_generators: usize,
    },
    /// Enumerate splitting subsets, points, located subsets, located points or cuts.
    Located {
        #[arg(long)]
        site: String,
        #[arg(long, value_enum, default_value_t = LocatedKind::Located)]
        kind: LocatedKind,
        #[arg(long, default_value_t = ENUMERATION_BOUND)]
        max_base: usize,
    },
    /// Build a construction and report its size.
    Construct {
        #[arg(value_enum)]
        kind: ConstructKind,
        #[arg(long)]
        site: String,
        /// Print generator and axiom counts per family.
        #[arg(long)]
        stats: bool,
        /// Use the lazy presentation instead of expanding the theory.
        #[arg(long)]
        lazy: bool,
        /// Print the theory as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Subtopologies: closed, open, kfit, the PSub/Patch check and the perfect search.
    Subtop {
        #[arg(value_enum)]
        op: SubtopOp,
        #[arg(long)]
        site: String,
        /// Element names, comma separated.
        #[arg(long, default_value = "")]
        set: String,
    },
    /// Run one verification suite by number or name, or `all`.
    Verify {
        suite: String,
        /// Caps the sizes that vary within suites.
        #[arg(long)]
        max_base: Option<usize>,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Export a site, theory or lattice as JSON or DOT.
    Export {
        #[arg(value_enum)]
        object: ExportObject,
        #[arg(long)]
        site: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoryKind {
    Patch,
    Lawson,
    Vietoris,
    Lower,
}

#[derive(Clone, Copy, ValueEnum)]
enum LocatedKind {
    Splitting,
    Points,
    Located,
    LocatedPoints,
    Cuts,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructKind {
    Patch,
    Lawson,
    Vietoris,
    Lower,
    Scott,
    Degroot,
}

#[derive(Clone, Copy, ValueEnum)]
enum SubtopOp {
    Closed,
    Open,
    Kfit,
    PsubIso,
    PerfectSearch,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportObject {
    Site,
    Located,
    Saturated,
    PatchTheory,
    LawsonTheory,
    VietorisTheory,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

/// Exit 1: a check ran and failed. Exit 2: bad input or a bound.
enum Failure {
    Check(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Out = Result<String, Failure>;

fn load_site(spec: &str) -> Result<FiniteSite, Failure> {
    if let Ok(s) = examples::fixture(spec) {
        return Ok(s);
    }
    let text = fs::read_to_string(spec)
        .map_err(|e| Failure::Usage(format!("`{spec}` is neither a fixture nor a readable file: {e}")))?;
    Ok(site_from_json(&text)?)
}

fn parse_set(site: &FiniteSite, list: &str) -> Result<FinSubset, Failure> {
    let names: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    Ok(site.subset(&names)?)
}

fn pretty<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serialisable")
}

fn example(name: &str) -> Out {
    match name {
        "list" => Ok(examples::FIXTURES
            .iter()
            .chain(["cantor", "ureal"].iter())
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join("\n")),
        "cantor" => Ok(pretty(&json!({"oracle": cantor_oracle().label(), "elements": "binary strings", "order": "extension"}))),
        "ureal" => Ok(pretty(&json!({"oracle": upper_reals_oracle().label(), "elements": "rationals p/q", "order": "≤"}))),
        _ => Ok(site_to_json(&examples::fixture(name)?)),
    }
}

fn theory_of(kind: TheoryKind, site: &FiniteSite) -> Result<GeometricTheory, Failure> {
    Ok(match kind {
        TheoryKind::Patch => construction_theory(site, PatchKind::Patch)?,
        TheoryKind::Lawson => construction_theory(site, PatchKind::Lawson)?,
        TheoryKind::Vietoris => vietoris_theory(site)?,
        TheoryKind::Lower => lower_theory(site, LowerForm::Axioms)?,
    })
}

fn models(kind: TheoryKind, site: &FiniteSite, max_base: usize, max_generators: usize) -> Out {
    let theory = theory_of(kind, site)?;
    let (route, list) = if theory.generator_count() <= max_generators {
        ("direct", enumerate_models(&theory, max_generators)?)
    } else {
        let list = match kind {
            TheoryKind::Patch => patch_models(site, max_base)?,
            TheoryKind::Lawson => lawson_models(site, max_base)?,
            TheoryKind::Vietoris => model_translations(site)?.vietoris_models(max_base)?,
            TheoryKind::Lower => enumerate_splitting(site, max_base)?,
        };
        ("located", list)
    };
    let mut out = format!("{} models ({route})\n", list.len());
    for m in &list {
        out.push_str(&theory.format_set(m.as_slice()));
        out.push('\n');
    }
    Ok(out.trim_end().to_string())
}

fn located(site: &FiniteSite, kind: LocatedKind, max_base: usize) -> Out {
    let sets = match kind {
        LocatedKind::Splitting => enumerate_splitting(site, max_base)?,
        LocatedKind::Points => enumerate_points(site, max_base)?,
        LocatedKind::Located => enumerate_located(site, max_base)?,
        LocatedKind::LocatedPoints => enumerate_located_points(site, max_base)?,
        LocatedKind::Cuts => {
            let cuts = enumerate_cuts(site, max_base)?;
            let mut out = format!("{} cuts\n", cuts.len());
            for c in &cuts {
                out.push_str(&format!("L={} U={}\n", site.format_subset(&c.lower), site.format_subset(&c.upper)));
            }
            return Ok(out.trim_end().to_string());
        }
    };
    let mut out = format!("{} subsets\n", sets.len());
    for s in &sets {
        out.push_str(&site.format_subset(s));
        out.push('\n');
    }
    Ok(out.trim_end().to_string())
}

fn construct(kind: ConstructKind, site: &FiniteSite, stats: bool, lazy: bool, as_json: bool) -> Out {
    let pk = match kind {
        ConstructKind::Patch => Some(PatchKind::Patch),
        ConstructKind::Lawson => Some(PatchKind::Lawson),
        _ => None,
    };
    if lazy {
        let Some(pk) = pk else {
            return Err(Failure::Usage("--lazy applies to patch and lawson".into()));
        };
        let l = construction_lazy(site, pk)?;
        return Ok(format!(
            "{} (lazy, base ≤ {LAZY_BASE_BOUND})\ngenerators: {}",
            pk.label(),
            l.generator_count()
        ));
    }
    let theory = match kind {
        ConstructKind::Patch | ConstructKind::Lawson => construction_theory(site, pk.expect("set above"))?,
        ConstructKind::Vietoris => vietoris_theory(site)?,
        ConstructKind::Lower => lower_theory(site, LowerForm::Axioms)?,
        ConstructKind::Degroot => degroot(site)?.theory,
        ConstructKind::Scott => {
            let s = scott_site(site)?;
            return Ok(if as_json {
                site_to_json(&s)
            } else {
                format!("scott site\nbase: {}\naxioms: {}", s.size(), s.axioms().len())
            });
        }
    };
    if as_json {
        return Ok(theory.to_json());
    }
    let st = theory.stats();
    let mut out = format!("{}\ngenerators: {}\naxioms: {}", theory.provenance(), st.generators, st.axioms);
    if stats {
        out.push_str(&format!("\ndisjunct entries: {}", st.disjunct_entries));
        for (fam, count) in &st.expansions {
            out.push_str(&format!("\n  {fam}: {count}"));
        }
    }
    Ok(out)
}

fn subtop(op: SubtopOp, site: FiniteSite, set: &str, label: &str) -> Out {
    let parsed = parse_set(&site, set)?;
    let site = Arc::new(site);
    let sub = match op {
        SubtopOp::Closed => closed_sub(&site, &parsed)?,
        SubtopOp::Open => open_sub(&site, &parsed)?,
        SubtopOp::Kfit => kfit(&site, &parsed)?,
        SubtopOp::PsubIso => {
            let r = psub_patch_iso(&site, label)?;
            let text = pretty(&r);
            return if r.passed() { Ok(text) } else { Err(Failure::Check(text)) };
        }
        SubtopOp::PerfectSearch => {
            let r = perfect_search(&site)?;
            let text = pretty(&r);
            return if r.passed() { Ok(text) } else { Err(Failure::Check(text)) };
        }
    };
    Ok(pretty(&sub.to_doc()))
}

fn verify(suite: &str, opts: &VerifyOptions, as_json: bool) -> Out {
    let reports = if suite == "all" {
        run_all(opts)
    } else {
        let id = suite_id(suite).ok_or_else(|| Failure::Usage(format!("unknown suite `{suite}`")))?;
        vec![run_suite(id, opts)?]
    };
    let text = if as_json {
        pretty(&reports)
    } else {
        let mut lines = Vec::new();
        for r in &reports {
            lines.push(r.line());
            lines.extend(r.failures.iter().map(|f| format!("    {f}")));
        }
        lines.join("\n")
    };
    if reports.iter().all(|r| r.passed) {
        Ok(text)
    } else {
        Err(Failure::Check(text))
    }
}

fn export(object: ExportObject, site: &FiniteSite, name: &str, format: Format) -> Out {
    let dot = format == Format::Dot;
    match object {
        ExportObject::Site if dot => Ok(dot::site_order(name, site)),
        ExportObject::Site => Ok(site_to_json(site)),
        ExportObject::Located | ExportObject::Saturated => {
            let sets = if matches!(object, ExportObject::Located) {
                enumerate_located(site, ENUMERATION_BOUND)?
            } else {
                saturated_subsets(site, ENUMERATION_BOUND)?
            };
            if dot {
                Ok(dot::subset_lattice(name, site, &sets))
            } else {
                let named: Vec<Vec<&str>> = sets.iter().map(|s| s.iter().map(|e| site.name(e)).collect()).collect();
                Ok(pretty(&named))
            }
        }
        _ if dot => Err(Failure::Usage("theories export as json only".into())),
        ExportObject::PatchTheory => Ok(theory_of(TheoryKind::Patch, site)?.to_json()),
        ExportObject::LawsonTheory => Ok(theory_of(TheoryKind::Lawson, site)?.to_json()),
        ExportObject::VietorisTheory => Ok(theory_of(TheoryKind::Vietoris, site)?.to_json()),
    }
}

fn run(cli: Cli) -> Out {
    match cli.cmd {
        Cmd::Example { name } => example(&name),
        Cmd::Saturate { site, elems } => {
            let s = load_site(&site)?;
            let names: Vec<&str> = elems.iter().map(String::as_str).collect();
            let u = s.subset(&names)?;
            Ok(s.format_subset(&s.saturate(&u)))
        }
        Cmd::Classify { site } => Ok(pretty(&classify(&load_site(&site)?))),
        Cmd::Models {
            theory,
            site,
            max_base,
            max_generators,
        } => models(theory, &load_site(&site)?, max_base, max_generators),
        Cmd::Located { site, kind, max_base } => located(&load_site(&site)?, kind, max_base),
        Cmd::Construct {
            kind,
            site,
            stats,
            lazy,
            json,
        } => construct(kind, &load_site(&site)?, stats, lazy, json),
        Cmd::Subtop { op, site, set } => subtop(op, load_site(&site)?, &set, &site),
        Cmd::Verify {
            suite,
            max_base,
            seed,
            json,
        } => {
            let opts = VerifyOptions {
                max_base,
                seed,
                ..VerifyOptions::default()
            };
            verify(&suite, &opts, json)
        }
        Cmd::Export {
            object,
            site,
            format,
            output,
        } => {
            let text = export(object, &load_site(&site)?, &site, format)?;
            match output {
                Some(path) => {
                    fs::write(&path, &text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                    Ok(format!("wrote {}", path.display()))
                }
                None => Ok(text),
            }
        }
    }
}

fn init_workers() -> Result<(), String> {
    let Ok(v) = std::env::var("FORMTOP_WORKERS") else {
        return Ok(());
    };
    let n: usize = v.parse().map_err(|_| format!("FORMTOP_WORKERS must be a number, got `{v}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = init_workers() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(cli) {
        Ok(text) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Check(text)) => {
            println!("{text}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
