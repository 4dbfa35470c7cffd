//! `gcover`: exact computations on moduli of S3-covers of curves.

mod config;

use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use config::{Config, OutputFormat, Threads, DEFAULT_CUTOFF};
use gcover_core::boundary::catalog;
use gcover_core::characters::{age, eigen_multiplicities, irreducible_by_name, irreducibles, junior_check};
use gcover_core::divisor::{canonical_class, kappa1_pullback, pullback_delta, pullback_lambda};
use gcover_core::elliptic_tail::{
    all_cover_classes, aut_orbits, branch_data_rn, classes_with_image, genus_by_riemann_hurwitz, AutAction,
};
use gcover_core::group::FiniteGroup;
use gcover_core::grr::{bernoulli_poly, ch1_pushforward, ch1_twisted, koszul_class, pullback_brill_noether, rank_e};
use gcover_core::kodaira::verdict;
use gcover_core::monodromy::{
    count_auto, count_homs_brute, count_homs_frobenius, count_transfer, count_with_image_class, find_witness,
    gluing_factors, CoverCountQuery, HandleSearch,
};
use gcover_core::pencil::{pencil_check, pencil_numbers, Pencil};
use gcover_core::rational::{parse_pq, to_pq};
use gcover_core::selftest;
use gcover_core::{Error, Result};

#[derive(Parser)]
#[command(name = "gcover", version, about = "Exact invariants of moduli spaces of S3-covers of curves")]
struct Cli {
    /// Largest |G|^(2g+n) searched by brute force.
    #[arg(long, global = true, env = "GCOVER_CUTOFF", default_value_t = DEFAULT_CUTOFF,
          value_parser = clap::value_parser!(u64).range(1..))]
    cutoff: u64,
    /// Worker threads, or "auto".
    #[arg(long, global = true, default_value = "auto")]
    threads: Threads,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    output: OutputFormat,
    /// Report wall time on stderr.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GroupArg {
    /// Built-in name (S3, mu<n>, trivial) or a Cayley-table file.
    #[arg(long, default_value = "S3")]
    group: String,
}

#[derive(Subcommand)]
enum Command {
    /// Group structure, characters and ages.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Counting and witnessing monodromy representations.
    #[command(subcommand)]
    Covers(CoversCmd),
    /// Covers of elliptic tails and the N-component over M_{1,1}.
    #[command(subcommand, name = "elliptic-tail")]
    EllipticTail(EllipticCmd),
    /// Boundary divisors of the moduli of G-covers.
    #[command(subcommand)]
    Boundary(BoundaryCmd),
    /// Canonical class of the moduli of S3-covers.
    Canonical {
        #[arg(long)]
        genus: u32,
    },
    /// Pullbacks of classes from M_g.
    Pullback(PullbackArgs),
    /// Test pencils and the coefficient bounds they force.
    #[command(subcommand)]
    Pencil(PencilCmd),
    /// Grothendieck-Riemann-Roch for representation bundles.
    #[command(subcommand)]
    Grr(GrrCmd),
    /// The Koszul divisor class and bundle ranks.
    #[command(subcommand)]
    Koszul(KoszulCmd),
    /// Slope decomposition and the general-type verdict.
    Kodaira {
        #[arg(long)]
        genus: u32,
    },
    /// Runs the acceptance suite.
    Selftest {
        /// Run a single criterion.
        #[arg(long)]
        criterion: Option<u32>,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Elements, conjugacy classes, subgroup classes and irreducibles.
    Info(GroupArg),
    /// Eigenvalue multiplicities of an element in a representation.
    Eigen {
        #[command(flatten)]
        g: GroupArg,
        #[arg(long)]
        rep: String,
        #[arg(long)]
        element: String,
    },
    /// Ages of all elements and the junior test.
    Age {
        #[command(flatten)]
        g: GroupArg,
        #[arg(long)]
        rep: String,
    },
}

#[derive(Args)]
struct CoverArgs {
    #[command(flatten)]
    g: GroupArg,
    #[arg(long)]
    genus: u32,
    /// Comma-separated conjugacy classes of the marked points.
    #[arg(long, value_delimiter = ',')]
    marks: Vec<String>,
    /// Subgroup class of the image, e.g. N or full.
    #[arg(long)]
    image: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    BruteForce,
    Frobenius,
    Moebius,
    Transfer,
}

#[derive(Subcommand)]
enum CoversCmd {
    /// Number of tuples satisfying the surface relation.
    Count {
        #[command(flatten)]
        c: CoverArgs,
        #[arg(long = "up-to-conj")]
        up_to_conj: bool,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// A replayable tuple, or a proof that none exists.
    Witness(CoverArgs),
    /// Gluing choices at a node of the given type.
    Gluing {
        #[command(flatten)]
        g: GroupArg,
        #[arg(long)]
        node: String,
    },
}

#[derive(Subcommand)]
enum EllipticCmd {
    /// Conjugacy classes of commuting pairs, optionally with a given image.
    Classes {
        #[command(flatten)]
        g: GroupArg,
        #[arg(long)]
        image: Option<String>,
    },
    /// Orbits of the order 4 or order 6 automorphism.
    Orbits {
        #[command(flatten)]
        g: GroupArg,
        #[arg(long)]
        image: Option<String>,
        #[arg(long)]
        order: u32,
    },
    /// Branch data of the N-component over M_{1,1} and its genus.
    Branch,
}

#[derive(Subcommand)]
enum BoundaryCmd {
    /// Every boundary label with its verdict and witness.
    List {
        #[command(flatten)]
        g: GroupArg,
        #[arg(long)]
        genus: u32,
        /// Restrict to covers whose component class is this one.
        #[arg(long)]
        component: Option<String>,
    },
}

#[derive(Args)]
#[command(group(ArgGroup::new("class").required(true).args(["delta", "lambda", "kappa1"])))]
struct PullbackArgs {
    #[arg(long)]
    genus: u32,
    #[arg(long)]
    delta: Option<u32>,
    #[arg(long)]
    lambda: bool,
    #[arg(long)]
    kappa1: bool,
}

#[derive(Subcommand)]
enum PencilCmd {
    /// Intersection numbers of a test pencil.
    Numbers {
        /// B_i, A_i_TN or A_i_c3.
        #[arg(long)]
        pencil: String,
        #[arg(long)]
        i: u32,
    },
    /// Lower bounds on boundary coefficients.
    Check {
        #[arg(long)]
        i: u32,
        #[arg(long, default_value = "13")]
        a: String,
        #[arg(long, default_value = "2")]
        b0p: String,
        #[arg(long, default_value = "3")]
        b0c2: String,
    },
}

#[derive(Subcommand)]
enum GrrCmd {
    /// ch_d of the pushforward of a representation bundle.
    Ch1 {
        #[command(flatten)]
        g: GroupArg,
        #[arg(long)]
        rep: String,
        #[arg(long)]
        genus: u32,
        #[arg(long, default_value_t = 1)]
        degree: u32,
        /// Twist by omega^b.
        #[arg(long)]
        twist: Option<u32>,
    },
    /// Bernoulli polynomial coefficients.
    Bernoulli {
        #[arg(long)]
        d: u32,
    },
}

#[derive(Subcommand)]
enum KoszulCmd {
    /// The Koszul divisor class for genus 2i+1.
    Class {
        #[arg(long)]
        i: u32,
    },
    /// Euler characteristic of E_{j,b}.
    Rank {
        #[arg(long)]
        i: u32,
        #[arg(long)]
        j: u32,
        #[arg(long)]
        b: u32,
    },
    /// Pullback of the Brill-Noether divisor.
    BrillNoether {
        #[arg(long)]
        i: u32,
    },
}

fn load_group(arg: &GroupArg) -> Result<FiniteGroup> {
    let p = Path::new(&arg.group);
    if p.is_file() {
        let text = std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
        FiniteGroup::parse_cayley(&text)
    } else {
        FiniteGroup::builtin(&arg.group)
    }
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn query(g: &FiniteGroup, c: &CoverArgs) -> Result<CoverCountQuery> {
    let marks = c.marks.iter().map(|m| g.resolve_conj_class(m)).collect::<Result<Vec<_>>>()?;
    let mut q = CoverCountQuery::new(c.genus).marks(marks);
    if let Some(h) = &c.image {
        q = q.image(g.resolve_subgroup_class(h)?);
    }
    Ok(q)
}

fn group_info(g: &FiniteGroup) -> Result<Value> {
    let classes: Vec<Value> = (0..g.num_classes())
        .map(|c| {
            let c = gcover_core::group::ConjClassId(c);
            json!({
                "name": g.class_name(c),
                "members": g.class_members(c).iter().map(|&x| g.name(x)).collect::<Vec<_>>(),
                "inverse": g.class_name(g.inverse_class(c)),
            })
        })
        .collect();
    let subgroups: Vec<Value> = g
        .subgroup_classes()
        .iter()
        .map(|s| json!({"name": s.name, "order": s.order, "conjugates": s.members.len()}))
        .collect();
    let characters = match irreducibles(g) {
        Ok(irr) => Value::Array(
            irr.iter()
                .map(|r| {
                    json!({
                        "name": r.name,
                        "dim": r.dim,
                        "values": r.character.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect(),
        ),
        Err(Error::UnsupportedGroup(_)) => Value::Null,
        Err(e) => return Err(e),
    };
    Ok(json!({
        "group": g.label(),
        "order": g.order(),
        "exponent": g.exponent(),
        "elements": g.names(),
        "conjugacy_classes": classes,
        "subgroup_classes": subgroups,
        "irreducibles": characters,
    }))
}

fn run_group(cmd: &GroupCmd) -> Result<Value> {
    match cmd {
        GroupCmd::Info(a) => group_info(&load_group(a)?),
        GroupCmd::Eigen { g, rep, element } => {
            let g = load_group(g)?;
            let r = irreducible_by_name(&g, rep)?;
            let h = g.resolve_element(element)?;
            let m = eigen_multiplicities(&g, &r, h)?;
            Ok(json!({
                "element": g.name(h),
                "rep": r.name,
                "multiplicities": to_json(&m),
                "age": to_pq(&age(&m)),
                "quasireflection": m.is_quasireflection(),
            }))
        }
        GroupCmd::Age { g, rep } => {
            let g = load_group(g)?;
            let r = irreducible_by_name(&g, rep)?;
            let mut rows = Vec::new();
            let mut mults = Vec::new();
            for h in 0..g.order() {
                let m = eigen_multiplicities(&g, &r, h)?;
                rows.push(json!({
                    "element": g.name(h),
                    "age": to_pq(&age(&m)),
                    "quasireflection": m.is_quasireflection(),
                }));
                if !m.is_quasireflection() {
                    mults.push((h, m));
                }
            }
            let list: Vec<_> = mults.iter().map(|(_, m)| m.clone()).collect();
            let v = junior_check(&list);
            let witness = v.witness.map(|(k, a)| json!({"element": g.name(mults[k].0), "age": a}));
            Ok(json!({"rep": r.name, "elements": rows, "junior": v.junior, "witness": witness}))
        }
    }
}

fn run_covers(cmd: &CoversCmd, cfg: &Config) -> Result<Value> {
    match cmd {
        CoversCmd::Count { c, up_to_conj, method } => {
            let g = load_group(&c.g)?;
            let q = query(&g, c)?.up_to_conjugation(*up_to_conj);
            let r = match method {
                MethodArg::Auto => count_auto(&g, &q, cfg.brute_force_cutoff),
                MethodArg::BruteForce => count_homs_brute(&g, &q, cfg.brute_force_cutoff),
                MethodArg::Frobenius => count_homs_frobenius(&g, &q),
                MethodArg::Moebius => count_with_image_class(&g, &q),
                MethodArg::Transfer => count_transfer(&g, &q),
            }?;
            let mut v = to_json(&r);
            v["group"] = json!(g.label());
            v["genus"] = json!(c.genus);
            v["marks"] = json!(q.marks.iter().map(|&m| g.class_name(m)).collect::<Vec<_>>());
            v["image"] = json!(q.image.map(|h| g.subgroup_class_name(h)));
            v["up_to_conjugation"] = json!(up_to_conj);
            Ok(v)
        }
        CoversCmd::Witness(c) => {
            let g = load_group(&c.g)?;
            let q = query(&g, c)?;
            let search = HandleSearch::run(&g, c.genus);
            let w = find_witness(&g, &search, &q.marks, q.image);
            let verified = w.as_ref().map(|w| w.verify(&g, &q.marks, q.image));
            Ok(json!({
                "found": w.is_some(),
                "witness": w.as_ref().map(to_json),
                "names": w.as_ref().map(|w| w.flatten().iter().map(|&x| g.name(x).to_string()).collect::<Vec<_>>()),
                "verified": verified,
                "exhausted_states": w.is_none().then(|| search.states().len()),
            }))
        }
        CoversCmd::Gluing { g, node } => {
            let g = load_group(g)?;
            let c = g.resolve_conj_class(node)?;
            let f = gluing_factors(&g, c)?;
            let mut v = to_json(&f);
            v["node_name"] = json!(g.class_name(c));
            Ok(v)
        }
    }
}

fn run_elliptic(cmd: &EllipticCmd) -> Result<Value> {
    let pick = |g: &FiniteGroup, image: &Option<String>| -> Result<_> {
        Ok(match image {
            Some(h) => classes_with_image(g, g.resolve_subgroup_class(h)?),
            None => all_cover_classes(g),
        })
    };
    match cmd {
        EllipticCmd::Classes { g, image } => {
            let g = load_group(g)?;
            let classes = pick(&g, image)?;
            Ok(json!({"count": classes.len(), "classes": to_json(&classes)}))
        }
        EllipticCmd::Orbits { g, image, order } => {
            let g = load_group(g)?;
            let classes = pick(&g, image)?;
            let o = aut_orbits(&g, &classes, AutAction::from_order(*order)?)?;
            let mut v = to_json(&o);
            v["orbit_sizes"] = json!(o.orbit_sizes());
            v["labels"] = json!(classes.iter().map(|c| c.label.clone()).collect::<Vec<_>>());
            Ok(v)
        }
        EllipticCmd::Branch => {
            let r = branch_data_rn()?;
            let genus = genus_by_riemann_hurwitz(r.degree, 0, &r.data)?;
            let mut v = to_json(&r);
            v["total_ramification"] = json!(r.data.iter().map(|b| b.ramification()).sum::<u32>());
            v["genus"] = json!(genus);
            Ok(v)
        }
    }
}

fn run(cli: &Cli, cfg: &Config) -> Result<(Value, bool)> {
    let v = match &cli.command {
        Command::Group(c) => run_group(c)?,
        Command::Covers(c) => run_covers(c, cfg)?,
        Command::EllipticTail(c) => run_elliptic(c)?,
        Command::Boundary(BoundaryCmd::List { g, genus, component }) => {
            let g = load_group(g)?;
            let restrict = component.as_deref().map(|h| g.resolve_subgroup_class(h)).transpose()?;
            to_json(&catalog(&g, *genus, restrict)?)
        }
        Command::Canonical { genus } => canonical_class(*genus)?.to_json(),
        Command::Pullback(p) => {
            let c = if let Some(i) = p.delta {
                pullback_delta(i, p.genus)?
            } else if p.lambda {
                pullback_lambda(p.genus)
            } else {
                kappa1_pullback(p.genus)
            };
            c.to_json()
        }
        Command::Pencil(PencilCmd::Numbers { pencil, i }) => to_json(&pencil_numbers(Pencil::parse(pencil)?, *i)?),
        Command::Pencil(PencilCmd::Check { i, a, b0p, b0c2 }) => {
            to_json(&pencil_check(*i, &parse_pq(a)?, &parse_pq(b0p)?, &parse_pq(b0c2)?)?)
        }
        Command::Grr(GrrCmd::Ch1 { g, rep, genus, degree, twist }) => {
            let g = load_group(g)?;
            let r = irreducible_by_name(&g, rep)?;
            let c = match twist {
                Some(b) if *degree == 1 => ch1_twisted(*genus, &g, &r, *b)?,
                _ => ch1_pushforward(*genus, &g, &r, *degree)?,
            };
            json!({"rep": r.name, "degree": degree, "twist": twist, "class": c.to_json(),
                   "lambda_form": c.kappa1_substitution().to_json()})
        }
        Command::Grr(GrrCmd::Bernoulli { d }) => {
            let b = bernoulli_poly(*d);
            json!({"d": d, "coeffs": b.coeffs.iter().map(to_pq).collect::<Vec<_>>()})
        }
        Command::Koszul(KoszulCmd::Class { i }) => to_json(&koszul_class(*i)?),
        Command::Koszul(KoszulCmd::Rank { i, j, b }) => {
            json!({"i": i, "j": j, "b": b, "rank": rank_e(*i, *j, *b)?.to_string()})
        }
        Command::Koszul(KoszulCmd::BrillNoether { i }) => pullback_brill_noether(*i)?.to_json(),
        Command::Kodaira { genus } => to_json(&verdict(*genus)?),
        Command::Selftest { criterion } => {
            let reports = match criterion {
                Some(id) => vec![selftest::run_criterion(*id, cfg.brute_force_cutoff)],
                None => selftest::run_all(cfg.brute_force_cutoff),
            };
            let ok = reports.iter().all(|r| r.passed);
            return Ok((json!({"passed": ok, "criteria": to_json(&reports)}), ok));
        }
    };
    Ok((v, true))
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| flatten(&join(k), x, out)),
        Value::Array(a) => a.iter().enumerate().for_each(|(k, x)| flatten(&join(&k.to_string()), x, out)),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        x => out.push((prefix.to_string(), x.to_string())),
    }
}

fn render(v: &Value, fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Json => serde_json::to_string_pretty(v).expect("json"),
        OutputFormat::Table => {
            let mut rows = Vec::new();
            flatten("", v, &mut rows);
            let w = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            rows.iter().map(|(k, x)| format!("{k:<w$}  {x}")).collect::<Vec<_>>().join("\n")
        }
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = Config { brute_force_cutoff: cli.cutoff, threads: cli.threads, output: cli.output };
    cfg.install_threads();
    let start = Instant::now();
    let result = run(&cli, &cfg);
    if cli.timing {
        eprintln!("elapsed_ms {}", start.elapsed().as_millis());
    }
    match result {
        Ok((v, ok)) => {
            emit(&render(&v, cfg.output));
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let mut v = json!({"code": e.code(), "message": e.to_string()});
            if let Some(w) = e.witness() {
                v["witness"] = json!(w);
            }
            emit(&render(&v, cfg.output));
            ExitCode::from(1)
        }
    }
}
