//! `hocalc`: command-line front end for the simplicial operator calculus,
//! the Whitehead bracket engine and the cycle verifier.
//!
//! Exit status: 0 on success or a verified certificate, 1 when a check
//! finds a nonzero residue, 2 on invalid input.

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use hocalc_core::cubes::{
    boundary_split, vertex_stats, wedge_identity_failures, wedge_levels, CubeVertex,
};
use hocalc_core::polyhedra::build_face_polyhedron;
use hocalc_core::resolution::chains::ChainRegistry;
use hocalc_core::resolution::pushforward::{pushforward_report, MapTable};
use hocalc_core::resolution::search::hilton_basis;
use hocalc_core::resolution::verify::{faces_mod_p, gamma_face};
use hocalc_core::resolution::{
    certificate, gamma, ChainElement, FaceResidue, Resolution, ResolutionRegistry, ENGINE_VERSION,
};
use hocalc_core::sign::{sgn, IndexSet};
use hocalc_core::simplicial::{enumerate_classes, FaceWord};
use hocalc_core::steenrod::{e0_generators, em_generators, poincare_series, Generator, Word};
use hocalc_core::whitehead::rewrite::RelationTable;
use hocalc_core::whitehead::{parse_base, parse_expression};
use hocalc_core::Error;

#[derive(Parser)]
#[command(
    name = "hocalc",
    version,
    about = "Exact calculus of simplicial operators and Whitehead brackets"
)]
struct Cli {
    /// Emit JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for face verification.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Report elapsed wall time (omitted by default so output is reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sign of the shuffle of I and J after removing their intersection.
    Sgn {
        #[arg(long, value_delimiter = ',')]
        i: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        j: Vec<usize>,
    },
    /// Deletion order and permutation label of a face word.
    Perm {
        /// Indices, outermost first, e.g. 2,1,0.
        #[arg(long, value_delimiter = ',')]
        word: Vec<usize>,
        /// Also export the face-map polyhedron: `json` or `off`.
        #[arg(long)]
        complex: Option<String>,
    },
    /// Canonical representatives of the classes of D(k, n).
    DClasses {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// The cycle γ_n.
    Gamma {
        #[arg(long)]
        n: usize,
    },
    /// Checks that every face of a chain vanishes.
    VerifyCycle(VerifyArgs),
    /// Faces of an expression in a resolution.
    Faces {
        #[arg(long)]
        expr: String,
        #[arg(long)]
        resolution: String,
        /// Simplicial level; inferred from the leaves when omitted.
        #[arg(long)]
        level: Option<usize>,
        /// Reduce faces mod p under the relation table (HF_RELATIONS).
        #[arg(long)]
        mod_p: Option<u64>,
    },
    /// The two-term cycle w2 on spheres of dimensions p and q.
    W2 {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
    },
    /// The six-term level-3 cycle on spheres of dimensions p and q.
    W3 {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
    },
    /// Basic products on letters of the given π-degrees.
    Hilton {
        #[arg(long, value_delimiter = ',')]
        degrees: Vec<u32>,
        #[arg(long)]
        weight: usize,
    },
    /// ℓ, λ and the remainder of a cube vertex.
    CubeStats {
        #[arg(long)]
        j: String,
        /// Also list the boundary pieces of L(R(J)).
        #[arg(long)]
        boundary: bool,
    },
    /// Summands and face maps of the wedge assembly for the n-cube.
    WedgeLevels {
        #[arg(long)]
        n: usize,
    },
    /// Generators of the mod p cohomology of K(Z_(p), k), or of E0 with --e0.
    EmBasis(BasisArgs),
    /// Poincaré series of the free graded-commutative algebra on those generators.
    Poincare(BasisArgs),
    /// Image of a chain under a map given on generators, e.g. --map "i4=[i3, s0 i2]".
    Push {
        #[arg(long = "map", required = true)]
        maps: Vec<String>,
        #[arg(long)]
        expr: String,
        #[arg(long)]
        level: usize,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Shorthand for --chain gamma:N in cpn:N.
    #[arg(long, conflicts_with_all = ["chain", "expr"])]
    gamma: Option<usize>,
    /// A registered chain family, e.g. gamma:8, w2:2,3, theta:1.
    #[arg(long)]
    chain: Option<String>,
    /// An explicit expression; needs --level.
    #[arg(long, conflicts_with = "chain", requires = "level")]
    expr: Option<String>,
    #[arg(long)]
    level: Option<usize>,
    /// A registered resolution, e.g. cpn:9, susp:s2,s3.
    #[arg(long)]
    resolution: Option<String>,
}

#[derive(Args)]
struct BasisArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    maxdeg: u32,
    #[arg(long)]
    e0: bool,
}

/// What a subcommand produced.
struct Outcome {
    value: Value,
    text: String,
    failed: bool,
}

impl Outcome {
    fn ok(value: Value, text: impl Into<String>) -> Self {
        Self {
            value,
            text: text.into(),
            failed: false,
        }
    }
}

#[derive(Serialize)]
struct CliCertificate<'a> {
    command: &'a str,
    chain: String,
    resolution: String,
    level: usize,
    pi_degree: Option<u32>,
    faces: Vec<FaceResidue>,
    verdict: String,
    engine_version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u128>,
}

struct Context {
    echo: String,
    jobs: usize,
    timing: bool,
    started: Instant,
}

fn main() -> ExitCode {
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let ctx = Context {
        echo,
        jobs: cli.jobs.max(1),
        timing: cli.timing,
        started: Instant::now(),
    };
    match run(&cli.command, &ctx) {
        Ok(out) => {
            let body = if cli.json {
                serde_json::to_string_pretty(&out.value).expect("serializable")
            } else {
                out.text
            };
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            if ctx.timing && !cli.json {
                eprintln!("elapsed: {} ms", ctx.started.elapsed().as_millis());
            }
            ExitCode::from(if out.failed { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: &Command, ctx: &Context) -> Result<Outcome, Error> {
    let resolutions = ResolutionRegistry::default();
    match command {
        Command::Sgn { i, j } => {
            let s = sgn(
                &IndexSet::new(i.iter().copied()),
                &IndexSet::new(j.iter().copied()),
            );
            Ok(Outcome::ok(json!({ "sgn": s }), s.to_string()))
        }
        Command::Perm { word, complex } => perm(word, complex.as_deref()),
        Command::DClasses { k, n } => {
            let classes = enumerate_classes(*k, *n)?;
            let rows: Vec<Value> = classes
                .iter()
                .map(|w| json!({ "representative": w, "size": w.class_members().len() }))
                .collect();
            let text = classes
                .iter()
                .map(|w| format!("{w}  {} words", w.class_members().len()))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Outcome::ok(
                json!({ "k": k, "n": n, "count": classes.len(), "classes": rows }),
                format!("{} classes\n{text}", classes.len()),
            ))
        }
        Command::Gamma { n } => {
            let g = gamma(*n)?;
            Ok(Outcome::ok(
                json!({
                    "n": n,
                    "level": g.level,
                    "pi_degree": g.pi_degree(),
                    "terms": g.expr.len(),
                    "expr": g.expr.to_string(),
                }),
                g.expr.to_string(),
            ))
        }
        Command::VerifyCycle(args) => {
            let (chain, resolution) = chain_and_resolution(args, &resolutions)?;
            verify(&chain, &resolution, ctx)
        }
        Command::Faces {
            expr,
            resolution,
            level,
            mod_p,
        } => {
            let r = resolutions.build(resolution)?;
            let e = parse_expression(expr)?;
            let level = match level {
                Some(l) => *l,
                None => infer_level(&e, &r)?,
            };
            let chain = ChainElement::new(level, e);
            match mod_p {
                None => verify(&chain, &r, ctx),
                Some(p) => faces_mod(&chain, &r, *p),
            }
        }
        Command::W2 { p, q } => {
            let named = ChainRegistry::default().build(&format!("w2:{p},{q}"))?;
            verify(&named.chain, &resolutions.build(&named.resolution)?, ctx)
        }
        Command::W3 { p, q } => {
            let named = ChainRegistry::default().build(&format!("w3:{p},{q}"))?;
            verify(&named.chain, &resolutions.build(&named.resolution)?, ctx)
        }
        Command::Hilton { degrees, weight } => {
            let basis = hilton_basis(degrees, *weight);
            let text = basis
                .iter()
                .map(|b| format!("w{} deg {}  {}", b.weight, b.pi_degree, b.word))
                .collect::<Vec<_>>()
                .join("\n");
            let rows: Vec<Value> = basis
                .iter()
                .map(|b| json!({ "word": b.word.to_string(), "weight": b.weight, "pi_degree": b.pi_degree }))
                .collect();
            Ok(Outcome::ok(json!(rows), text))
        }
        Command::CubeStats { j, boundary } => {
            let v: CubeVertex = j.parse()?;
            let s = vertex_stats(&v);
            let mut value = json!({
                "ell": s.ell,
                "lambda": s.lambda,
                "remainder": s.remainder.to_string(),
            });
            let mut text = format!(
                "ell={} lambda={} remainder={}",
                s.ell, s.lambda, s.remainder
            );
            if s.flagged {
                value["flagged"] = json!(true);
                text.push_str(" (all ones: remainder taken empty)");
            }
            if *boundary {
                let region = boundary_split(&s.remainder);
                let show = |cs: &[hocalc_core::cubes::CubeCell]| {
                    cs.iter().map(|c| c.to_string()).collect::<Vec<_>>()
                };
                value["subcube"] = json!(region.cube.to_string());
                value["minus"] = json!(show(&region.minus_facets));
                value["plus"] = json!(show(&region.plus_facets));
                text.push_str(&format!(
                    "\nL = {}\nminus = {}\nplus = {}",
                    region.cube,
                    show(&region.minus_facets).join(" ∪ "),
                    show(&region.plus_facets).join(" ∪ ")
                ));
            }
            Ok(Outcome::ok(value, text))
        }
        Command::WedgeLevels { n } => {
            let levels = wedge_levels(*n)?;
            let failures = wedge_identity_failures(*n)?;
            let mut text = String::new();
            for l in &levels {
                let names: Vec<String> = l.summands.iter().map(|j| j.to_string()).collect();
                let marker = if l.cofiber { "C ∨ " } else { "" };
                text.push_str(&format!("X_{}: {marker}{}\n", l.level, names.join(" ∨ ")));
            }
            text.push_str(&format!(
                "simplicial identities: {} failures",
                failures.len()
            ));
            let bad: Vec<Value> = failures
                .iter()
                .map(|(j, a, b)| json!({ "summand": j, "i": a, "j": b }))
                .collect();
            Ok(Outcome {
                value: json!({ "n": n, "levels": levels, "identity_failures": bad }),
                text,
                failed: !failures.is_empty(),
            })
        }
        Command::EmBasis(a) => {
            let gens = basis(a)?;
            let rows: Vec<Value> = gens.iter().map(generator_json).collect();
            let text = gens
                .iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Outcome::ok(json!(rows), text))
        }
        Command::Poincare(a) => {
            let gens = basis(a)?;
            let series = poincare_series(&gens, a.maxdeg);
            let text = series
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            Ok(Outcome::ok(json!(series), text))
        }
        Command::Push { maps, expr, level } => {
            let mut table = MapTable::new();
            for m in maps {
                let (g, image) = m.split_once('=').ok_or_else(|| {
                    Error::Domain(format!("map entry {m:?} must look like GEN=EXPR"))
                })?;
                table.insert(parse_base(g.trim())?, parse_expression(image)?)?;
            }
            let c = ChainElement::new(*level, parse_expression(expr)?);
            let rep = pushforward_report(&table, &c)?;
            Ok(Outcome::ok(
                json!({
                    "image": rep.image.expr.to_string(),
                    "left_normed": rep.left_normed.to_string(),
                    "level": level,
                }),
                format!("{}\n= {}", rep.image.expr, rep.left_normed),
            ))
        }
    }
}

fn perm(word: &[usize], complex: Option<&str>) -> Result<Outcome, Error> {
    let w = FaceWord::from_entries(word.to_vec())?;
    let label = w.permutation_label();
    let deleted = w.deletion_order();
    let mut value = json!({
        "word": w,
        "normal_form": w.normalize(),
        "deletion_order": deleted,
        "permutation": label,
    });
    let mut text = format!(
        "word {w}  normal form {}  deleted {:?}  permutation {:?}",
        w.normalize(),
        deleted,
        label
    );
    match complex {
        None => {}
        Some("json") => {
            let c = build_face_polyhedron(&w)?;
            value["complex"] = serde_json::to_value(&c).expect("serializable");
            text.push_str(&format!("\nf-vector {:?}", c.f_vector()));
        }
        Some("off") => {
            let c = build_face_polyhedron(&w)?;
            let off = c.to_off()?;
            value["off"] = json!(off);
            text = off;
        }
        Some(other) => {
            return Err(Error::Domain(format!(
                "unknown complex format {other:?}; use json or off"
            )))
        }
    }
    Ok(Outcome::ok(value, text))
}

fn chain_and_resolution(
    args: &VerifyArgs,
    resolutions: &ResolutionRegistry,
) -> Result<(ChainElement, Resolution), Error> {
    let chains = ChainRegistry::default();
    let (chain, natural) = if let Some(n) = args.gamma {
        let named = chains.build(&format!("gamma:{n}"))?;
        (named.chain, Some(named.resolution))
    } else if let Some(selector) = &args.chain {
        let named = chains.build(selector)?;
        (named.chain, Some(named.resolution))
    } else if let Some(e) = &args.expr {
        let level = args.level.expect("required by clap");
        (ChainElement::new(level, parse_expression(e)?), None)
    } else {
        return Err(Error::Domain(
            "give one of --gamma, --chain or --expr".into(),
        ));
    };
    let name = args
        .resolution
        .clone()
        .or(natural)
        .ok_or_else(|| Error::Domain("--expr needs --resolution".into()))?;
    let r = resolutions.build(&name)?;
    chain.validate(&r)?;
    Ok((chain, r))
}

fn infer_level(e: &hocalc_core::whitehead::Expression, r: &Resolution) -> Result<usize, Error> {
    let mut levels = e.leaves().map(|l| r.leaf_level(l));
    match levels.next() {
        None => Err(Error::Domain(
            "cannot infer the level of 0; pass --level".into(),
        )),
        Some(first) => {
            let first = first?;
            for l in levels {
                if l? != first {
                    return Err(Error::Structural("leaves sit at different levels".into()));
                }
            }
            Ok(first)
        }
    }
}

fn verify(chain: &ChainElement, r: &Resolution, ctx: &Context) -> Result<Outcome, Error> {
    chain.validate(r)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(ctx.jobs)
        .build()
        .map_err(|e| Error::Domain(format!("thread pool: {e}")))?;
    let faces = pool.install(|| {
        (0..=chain.level)
            .into_par_iter()
            .map(|i| gamma_face(r, chain, i))
            .collect::<Result<Vec<_>, _>>()
    })?;
    let cert = certificate(chain, r, faces);
    let failed = !cert.verified();
    let mut text = format!(
        "{} in {} (level {})\n",
        cert.chain, cert.resolution, cert.level
    );
    for f in &cert.faces {
        text.push_str(&format!("d{} = {}\n", f.index, f.residue));
    }
    text.push_str(&cert.verdict.to_string());
    let out = CliCertificate {
        command: &ctx.echo,
        chain: cert.chain,
        resolution: cert.resolution,
        level: cert.level,
        pi_degree: cert.pi_degree,
        faces: cert.faces,
        verdict: cert.verdict.to_string(),
        engine_version: ENGINE_VERSION,
        elapsed_ms: ctx.timing.then(|| ctx.started.elapsed().as_millis()),
    };
    Ok(Outcome {
        value: serde_json::to_value(&out).expect("serializable"),
        text,
        failed,
    })
}

fn faces_mod(chain: &ChainElement, r: &Resolution, p: u64) -> Result<Outcome, Error> {
    let table = RelationTable::from_env()?;
    let faces = chain.faces(r)?;
    let reduced = faces_mod_p(chain, r, p, &table)?;
    let mut rows = Vec::new();
    let mut text = String::new();
    for (i, (f, m)) in faces.iter().zip(&reduced).enumerate() {
        rows.push(json!({ "index": i, "face": f.expr.to_string(), "mod_p": m.to_string() }));
        text.push_str(&format!("d{i} = {}  ≡ {m} (mod {p})\n", f.expr));
    }
    Ok(Outcome::ok(
        json!({ "chain": chain.expr.to_string(), "p": p, "faces": rows }),
        text.trim_end().to_string(),
    ))
}

fn basis(a: &BasisArgs) -> Result<Vec<Generator>, Error> {
    if a.e0 {
        e0_generators(a.p, a.k, a.maxdeg)
    } else {
        em_generators(a.p, a.k, a.maxdeg)
    }
}

fn generator_json(g: &Generator) -> Value {
    let word = match &g.word {
        Word::Sq(m) => json!(m.0),
        Word::P(m) => json!({ "bocksteins": m.bocksteins, "powers": m.powers }),
        Word::Power(e) => json!({ "power": e }),
    };
    json!({ "word": word, "degree": g.degree, "exterior": g.exterior, "name": g.to_string() })
}
