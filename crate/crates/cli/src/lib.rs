//! Front end shared by the `jdlength` binary and its tests.

use std::collections::BTreeMap;
use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use jdlength::algebra::{
    default_window, family_length_report, hom_complex_dims, is_exceptional_complexes, minimal_projective_resolution,
    profile_of, Family, FDModule, MonomialAlgebra, ProjComplex, DEFAULT_MAX_PATHS,
};
use jdlength::error::Error;
use jdlength::hereditary::{verify_jd_theorem, DynkinCategory, DynkinType, Quiver};
use jdlength::lattice::{
    downset_lattice, dual_numbers_report, ring_length_report, FinPoset, LengthReport, RingKind, DEFAULT_MAX_POSET,
};
use jdlength::linalg::FieldKind;
use jdlength::toric::{hille_dot, random_fan, toric_length_report, Fan2D, Preset};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "jdlength", version, about = "Lengths and Jordan–Dedekind data of triangulated categories")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// `rational` or `fp:<p>` for an odd prime `p`.
    #[arg(long, global = true, default_value = "rational", value_parser = parse_field)]
    pub field: FieldKind,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    pub out: Output,
    /// Input document; stdin when omitted and the command needs one.
    #[arg(long = "in", global = true)]
    pub input: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_POSET)]
    pub max_poset: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_PATHS)]
    pub max_paths: usize,
    /// Widest hom window allowed for user-supplied algebras.
    #[arg(long, global = true, default_value_t = 64)]
    pub max_window: usize,
    #[arg(long, global = true, default_value_t = 16)]
    pub max_rays: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Down-set lattice of a finite poset (`{"elements": [...], "lt": [[a, b], ...]}`, `a < b`).
    Poset {
        #[arg(long, conflicts_with = "antichain")]
        chain: Option<usize>,
        #[arg(long)]
        antichain: Option<usize>,
    },
    /// Perfect complexes over a ring with finite spectrum, or a singularity category.
    Ring {
        /// Artinian ring whose spectrum has this many points.
        #[arg(long)]
        artinian: Option<usize>,
        /// Singularity category with this many isolated singular points.
        #[arg(long)]
        singular: Option<usize>,
        /// `k[x]/(x^2)`.
        #[arg(long)]
        dual_numbers: bool,
    },
    /// Derived category of a Dynkin quiver.
    Quiver {
        /// `A<n>`, `D<n>`, `E6`, `E7` or `E8` in the standard orientation.
        #[arg(long)]
        dynkin: Option<String>,
    },
    /// Finite-dimensional monomial algebras.
    Algebra {
        /// `lambda:r,n,m`, `kronecker:d`, `gradedkronecker:m,q` or `ap:p`.
        #[arg(long)]
        family: Option<String>,
    },
    /// Smooth complete toric surfaces.
    Toric {
        /// `p2`, `f0`, `f1`, `f2` or `f3`.
        #[arg(long)]
        preset: Option<String>,
        /// Random fan with this many rays, drawn from `--seed`.
        #[arg(long)]
        random: Option<usize>,
    },
}

fn parse_field(s: &str) -> Result<FieldKind, String> {
    match s.trim().to_ascii_lowercase().as_str() {
        "rational" | "q" => Ok(FieldKind::Rational),
        other => {
            let p = other
                .strip_prefix("fp:")
                .ok_or_else(|| format!("unknown field '{s}' (rational | fp:<p>)"))?
                .parse::<u64>()
                .map_err(|e| e.to_string())?;
            FieldKind::prime(p).map_err(|e| e.to_string())
        }
    }
}

/// Rendered output and process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Body of a successful run: report, extra fields for JSON and text, and a DOT rendering.
struct Payload {
    report: LengthReport,
    extra: BTreeMap<String, Value>,
    dot: String,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn read_input(global: &Global, stdin: &mut dyn Read) -> Result<String, Error> {
    match &global.input {
        Some(p) => fs::read_to_string(p).map_err(|e| Error::InvalidInput(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| Error::InvalidInput(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn poset_cmd(g: &Global, chain: Option<usize>, antichain: Option<usize>, stdin: &mut dyn Read) -> Result<Payload, Error> {
    let poset = match (chain, antichain) {
        (Some(n), _) => FinPoset::chain(n),
        (_, Some(n)) => FinPoset::antichain(n),
        _ => FinPoset::from_json(&read_input(g, stdin)?)?,
    };
    let lattice = downset_lattice(&poset, g.max_poset)?;
    let n = poset.len();
    let mut report = LengthReport::of_lattice(&lattice);
    report.push_verified(
        format!("the down-set lattice has {} nodes and every maximal chain is enumerated", lattice.len()),
        "down-set lattice enumeration",
    );
    let mut extra = BTreeMap::new();
    extra.insert("elements".into(), json!(n));
    extra.insert("lattice_size".into(), json!(lattice.len()));
    extra.insert("chains".into(), json!(lattice.chain_count().to_string()));
    extra.insert("lattice".into(), to_value(&lattice.to_doc()));
    Ok(Payload { report, extra, dot: lattice.to_dot("downsets") })
}

fn ring_cmd(
    g: &Global,
    artinian: Option<usize>,
    singular: Option<usize>,
    dual_numbers: bool,
    stdin: &mut dyn Read,
) -> Result<Payload, Error> {
    let chosen = artinian.is_some() as u8 + singular.is_some() as u8 + dual_numbers as u8;
    if chosen > 1 {
        return Err(Error::InvalidInput("use at most one of --artinian, --singular, --dual-numbers".into()));
    }
    let (report, poset) = if dual_numbers {
        (dual_numbers_report()?, FinPoset::antichain(1))
    } else if let Some(points) = singular {
        (ring_length_report(None, RingKind::SingularityPoints(points))?, FinPoset::antichain(points))
    } else {
        let poset = match artinian {
            Some(n) => FinPoset::antichain(n),
            None => FinPoset::from_json(&read_input(g, stdin)?)?,
        };
        if poset.len() > g.max_poset {
            return Err(Error::TooLarge { what: format!("spectrum with {} points", poset.len()), limit: g.max_poset });
        }
        (ring_length_report(Some(&poset), RingKind::Perf)?, poset)
    };
    let lattice = downset_lattice(&poset, g.max_poset.max(poset.len()))?;
    let mut extra = BTreeMap::new();
    extra.insert("spectrum_points".into(), json!(poset.len()));
    Ok(Payload { report, extra, dot: lattice.to_dot("support") })
}

fn quiver_cmd(g: &Global, dynkin: Option<String>, stdin: &mut dyn Read) -> Result<Payload, Error> {
    let q = match dynkin {
        Some(name) => Quiver::dynkin(name.parse::<DynkinType>()?)?,
        None => Quiver::from_json(&read_input(g, stdin)?)?,
    };
    let cat = DynkinCategory::new(&q, g.field, g.seed)?;
    let jd = verify_jd_theorem(&cat)?;
    if jd.exceptional_chains != jd.chains {
        return Err(Error::Inconsistency(format!(
            "only {}/{} composition series matched exceptional sequences",
            jd.exceptional_chains, jd.chains
        )));
    }
    let dot = cat.thick_lattice()?.lattice.to_dot("thick");
    let mut extra = BTreeMap::new();
    extra.insert("dynkin_types".into(), to_value(&jd.dynkin_types));
    extra.insert("indecomposables".into(), json!(jd.indecomposables));
    extra.insert("thick_subcategories".into(), json!(jd.thick_subcategories));
    extra.insert("chains".into(), json!(jd.chains));
    extra.insert("exceptional_chains".into(), json!(jd.exceptional_chains));
    Ok(Payload { report: jd.report, extra, dot })
}

fn algebra_dot(alg: &MonomialAlgebra) -> String {
    let mut s = String::from("digraph algebra {\n");
    for v in 0..alg.vertex_count() {
        s.push_str(&format!("  v{v} [label=\"{v}\"];\n"));
    }
    for (a, &(x, y)) in alg.arrows().iter().enumerate() {
        s.push_str(&format!("  v{x} -> v{y} [label=\"a{a}\"];\n"));
    }
    s.push_str("}\n");
    s
}

/// Resolutions of the simples of a user-supplied algebra, their
/// endomorphism profiles and whether they form an exceptional sequence.
fn algebra_doc_cmd(g: &Global, stdin: &mut dyn Read) -> Result<Payload, Error> {
    let alg = MonomialAlgebra::from_json(&read_input(g, stdin)?, g.max_paths)?;
    let n = alg.vertex_count();
    let mut simples = Vec::new();
    let mut complexes: Vec<ProjComplex> = Vec::new();
    for v in 0..n {
        let s = FDModule::simple(&alg, g.field, v);
        let res = minimal_projective_resolution(&alg, &s, 2 * alg.dim() + 2)?;
        let mut entry = json!({ "vertex": v, "resolution_complete": res.complete, "length": res.length() });
        if res.complete {
            let w = default_window(&alg, &res.complex, &res.complex);
            if (w.1 - w.0) as usize > g.max_window {
                return Err(Error::TooLarge { what: format!("hom window {w:?}"), limit: g.max_window });
            }
            let end = hom_complex_dims(&alg, &res.complex, &res.complex, w)?;
            entry["end_dims"] = to_value(&end);
            entry["sphere_like"] = to_value(&profile_of(&end));
            complexes.push(res.complex);
        }
        simples.push(entry);
    }
    let all_finite = complexes.len() == n;
    let exceptional = all_finite && is_exceptional_complexes(&alg, &complexes)?;
    if !exceptional {
        return Err(Error::Parameter(
            "no composition series certified: simples in vertex order are not an exceptional sequence of perfect complexes"
                .into(),
        ));
    }
    let mut report = LengthReport::witnessed([n].into());
    report.push_verified(format!("algebra has {n} vertices and dimension {}", alg.dim()), "path basis enumeration");
    report.push_verified(
        format!("the simples in vertex order form an exceptional sequence of length {n}"),
        "hom complexes of minimal projective resolutions",
    );
    report.push_asserted(
        "an exceptional sequence of simples of a finite global dimension algebra is full",
        "simples generate the bounded derived category",
    );
    let mut extra = BTreeMap::new();
    extra.insert("dimension".into(), json!(alg.dim()));
    extra.insert("simples".into(), Value::Array(simples));
    extra.insert("simples_exceptional".into(), json!(exceptional));
    Ok(Payload { report, extra, dot: algebra_dot(&alg) })
}

fn algebra_cmd(g: &Global, family: Option<String>, stdin: &mut dyn Read) -> Result<Payload, Error> {
    let Some(spec) = family else {
        return algebra_doc_cmd(g, stdin);
    };
    let fam: Family = spec.parse()?;
    let report = family_length_report(fam, g.field)?;
    let mut extra = BTreeMap::new();
    extra.insert("family".into(), json!(fam.to_string()));
    let dot = match fam {
        Family::Lambda { r, n, m } => algebra_dot(&jdlength::algebra::lambda_rnm(r, n, m)?.algebra),
        Family::Kronecker { d } => algebra_dot(&jdlength::algebra::b_d(d, g.field)?.1.algebra),
        Family::GradedKronecker { m, q } => algebra_dot(&jdlength::algebra::graded_kronecker(m, q)?),
        Family::Ap { p } => algebra_dot(&jdlength::algebra::a_p(p)?),
    };
    Ok(Payload { report, extra, dot })
}

fn toric_cmd(g: &Global, preset: Option<String>, random: Option<usize>, stdin: &mut dyn Read) -> Result<Payload, Error> {
    let fan = match (preset, random) {
        (Some(_), Some(_)) => return Err(Error::InvalidInput("use one of --preset and --random".into())),
        (Some(p), None) => p.parse::<Preset>()?.fan(),
        (None, Some(n)) => {
            if n > g.max_rays {
                return Err(Error::TooLarge { what: format!("fan with {n} rays"), limit: g.max_rays });
            }
            random_fan(n, g.seed)
        }
        (None, None) => Fan2D::from_json(&read_input(g, stdin)?)?,
    };
    if fan.len() > g.max_rays {
        return Err(Error::TooLarge { what: format!("fan with {} rays", fan.len()), limit: g.max_rays });
    }
    let tr = toric_length_report(&fan, g.field)?;
    let mut extra = BTreeMap::new();
    extra.insert("geometry".into(), to_value(&tr.geometry));
    extra.insert("reoriented".into(), json!(fan.reoriented()));
    Ok(Payload { report: tr.report, extra, dot: hille_dot(&fan)? })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Poset { .. } => "poset",
        Command::Ring { .. } => "ring",
        Command::Quiver { .. } => "quiver",
        Command::Algebra { .. } => "algebra",
        Command::Toric { .. } => "toric",
    }
}

fn render(cli: &Cli, p: Payload) -> String {
    let g = &cli.global;
    match g.out {
        Output::Dot => p.dot,
        Output::Json => {
            let mut doc = serde_json::Map::new();
            doc.insert("schema_version".into(), json!(SCHEMA_VERSION));
            doc.insert("command".into(), json!(command_name(&cli.command)));
            doc.insert("field".into(), json!(g.field.to_string()));
            doc.insert("seed".into(), json!(g.seed));
            doc.insert("report".into(), to_value(&p.report));
            for (k, v) in p.extra {
                doc.insert(k, v);
            }
            let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("json");
            s.push('\n');
            s
        }
        Output::Text => {
            let mut s = format!("{} (field {})\n", command_name(&cli.command), g.field);
            s.push_str(&p.report.to_text());
            if !s.ends_with('\n') {
                s.push('\n');
            }
            for (k, v) in p.extra {
                if v.is_number() || v.is_boolean() || v.is_string() {
                    s.push_str(&format!("{k}: {v}\n"));
                }
            }
            s
        }
    }
}

/// Runs a parsed command. Exit code 0 on success, 2 on rejected input,
/// 3 when two computations disagree.
pub fn run(cli: &Cli, stdin: &mut dyn Read) -> Outcome {
    let g = &cli.global;
    let result = match &cli.command {
        Command::Poset { chain, antichain } => poset_cmd(g, *chain, *antichain, stdin),
        Command::Ring { artinian, singular, dual_numbers } => ring_cmd(g, *artinian, *singular, *dual_numbers, stdin),
        Command::Quiver { dynkin } => quiver_cmd(g, dynkin.clone(), stdin),
        Command::Algebra { family } => algebra_cmd(g, family.clone(), stdin),
        Command::Toric { preset, random } => toric_cmd(g, preset.clone(), *random, stdin),
    };
    match result.and_then(|p| {
        p.report.validate()?;
        Ok(p)
    }) {
        Ok(p) => Outcome { stdout: render(cli, p), stderr: String::new(), code: 0 },
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: if e.is_internal() { 3 } else { 2 },
        },
    }
}
