use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use floerkit::chain_complex::{fraction_field_homology_ranks, koszul_complex, Region};
use floerkit::circle_bundle::{
    hf_minus, hf_plus_large_negative, hf_plus_large_positive, spinc_enumerate,
    GradedModuleDescription,
};
use floerkit::fraction_rank::{RankEvaluator, DEFAULT_SEED};
use floerkit::grading::{
    blowup_degree_profile, blowup_lattice, reduced_degree, relative_invariant_degree, tau,
};
use floerkit::knot_floer::{delta_for_genus_one, e1_page, validate_zseq, DeltaData};
use floerkit::rational::format as fmt_q;
use floerkit::skein::{
    alexander_from_diagram, conway_from_tree, knot_by_name, knot_report, resolution_tree,
    theta_from_tree, PlanarDiagram, DEFAULT_TREE_BUDGET,
};
use floerkit::surgery::{
    log_transform_combination, rim_surgery_verdict, t3_theta_image, FormalInvariant,
};
use floerkit::{CoefficientRing, Error, LaurentPolynomial};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "floerkit",
    version,
    about = "Floer homology of circle bundles, Alexander polynomials and rim-surgery invariants"
)]
struct Cli {
    /// Emit versioned JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for random evaluation points in fraction-field rank checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// HF⁺ or HF⁻ of the circle bundle of degree n over a genus-g surface.
    Hf(HfArgs),
    /// Grading arithmetic: degree shifts, relative-invariant degrees, lattices.
    Grading(GradingArgs),
    /// Alexander polynomial of a knot from a PD code, braid or table name.
    Alexander(KnotArgs),
    /// Conway resolution tree of a knot and the polynomial it carries.
    SkeinTree(SkeinTreeArgs),
    /// Logarithmic-transform combination of three basis invariants.
    LogTransform(LogTransformArgs),
    /// Decide which rim surgeries are told apart by mod-2 Alexander polynomials.
    RimDistinguish(RimArgs),
    /// Koszul complex of H¹ of a genus-g surface, E₁ pages and δ checks.
    Koszul(KoszulArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Flavor {
    Plus,
    Minus,
}

#[derive(Clone, Copy, ValueEnum)]
enum Ring {
    Z,
    F2,
}

impl From<Ring> for CoefficientRing {
    fn from(r: Ring) -> Self {
        match r {
            Ring::Z => CoefficientRing::Integers,
            Ring::F2 => CoefficientRing::Mod2,
        }
    }
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct HfArgs {
    /// Degree n of the circle bundle.
    #[arg(long)]
    degree: i64,
    /// Genus of the base surface.
    #[arg(long)]
    genus: i64,
    /// Spin^c label k (reduced mod n); omit to list every spin^c structure.
    #[arg(long)]
    spinc: Option<i64>,
    #[arg(long, value_enum, default_value_t = Flavor::Plus)]
    flavor: Flavor,
    /// JSON file with the maps δ (genus, ring, matrices) used to resolve
    /// syzygy quotients and kernels.
    #[arg(long)]
    delta: Option<std::path::PathBuf>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
#[command(group(ArgGroup::new("quantity").required(true).args(["dminus", "dplus", "tau", "reduced", "profile", "lattice"])))]
struct GradingArgs {
    /// Degree d⁻ of the relative invariant of the surface neighbourhood.
    #[arg(long)]
    dminus: bool,
    /// Degree d⁺ = −d⁻ − 2.
    #[arg(long)]
    dplus: bool,
    /// Degree shift τ_{n,k}.
    #[arg(long)]
    tau: bool,
    /// Degree D(k) of the reduced part for n = 1 − 2g.
    #[arg(long)]
    reduced: bool,
    /// Degree profile of the blown-up spin^c family.
    #[arg(long)]
    profile: bool,
    /// Intersection lattice of the blowup of the surface neighbourhood.
    #[arg(long)]
    lattice: bool,
    /// Degree n of the bundle (self-intersection of the surface).
    #[arg(long)]
    n: Option<i64>,
    /// Genus of the base surface.
    #[arg(long)]
    genus: Option<i64>,
    /// Spin^c label k.
    #[arg(long)]
    k: Option<i64>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("input").required(true).args(["pd", "knot", "braid"])))]
struct KnotArgs {
    /// PD code `X(a,b,c,d);...`, counterclockwise from the incoming under-strand.
    #[arg(long)]
    pd: Option<String>,
    /// Name from the bundled table (e.g. 3_1, figure-eight, T(2,7), unknot).
    #[arg(long)]
    knot: Option<String>,
    /// Braid closure `STRANDS: w1 w2 ...` with signed generators.
    #[arg(long, allow_hyphen_values = true)]
    braid: Option<String>,
}

#[derive(Args)]
struct SkeinTreeArgs {
    #[command(flatten)]
    knot: KnotArgs,
    /// Maximum number of tree nodes.
    #[arg(long, default_value_t = DEFAULT_TREE_BUDGET)]
    budget: usize,
    /// Include the full tree in JSON output.
    #[arg(long)]
    full: bool,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct LogTransformArgs {
    #[arg(long)]
    p: i64,
    #[arg(long)]
    q: i64,
    #[arg(long)]
    r: i64,
    /// Three polynomials in t: the invariants for (1,0,0), (0,1,0), (0,0,1).
    #[arg(long, num_args = 3, allow_hyphen_values = true)]
    basis: Option<Vec<String>>,
    /// Coefficient ring for the combination.
    #[arg(long, value_enum, default_value_t = Ring::F2)]
    ring: Ring,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct RimArgs {
    /// Genus of the surface.
    #[arg(long)]
    genus: i64,
    /// Self-intersection of the surface.
    #[arg(long)]
    n: i64,
    /// Comma-separated knot names.
    #[arg(long, value_delimiter = ',', required = true)]
    knots: Vec<String>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct KoszulArgs {
    /// Genus of the surface.
    #[arg(long)]
    genus: i64,
    /// Coefficient ring of the group ring.
    #[arg(long, value_enum, default_value_t = Ring::Z)]
    ring: Ring,
    /// Validate the maps δ (built in at genus one, or read from --delta).
    #[arg(long)]
    zseq: bool,
    /// JSON file with the maps δ to validate (required for genus two or more).
    #[arg(long)]
    delta: Option<std::path::PathBuf>,
    /// Region for an E₁ page, e.g. `quotient-and:-1` or `sub-and:1`.
    #[arg(long)]
    region: Option<String>,
    /// Column range `LO:HI` for the E₁ page.
    #[arg(long, default_value = "-2:2", allow_hyphen_values = true)]
    columns: String,
}

struct Output {
    json: Value,
    text: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                let mut v = out.json;
                if let Value::Object(m) = &mut v {
                    m.insert("schema_version".into(), json!(SCHEMA_VERSION));
                }
                println!(
                    "{}",
                    serde_json::to_string_pretty(&v).expect("serialisable")
                );
            } else {
                print!("{}", out.text);
                if !out.text.ends_with('\n') {
                    println!();
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let code = if e.is_parse_error() { 2 } else { 1 };
            if cli.json {
                let v = json!({
                    "schema_version": SCHEMA_VERSION,
                    "error": e.to_string(),
                    "kind": if code == 2 { "parse" } else { "domain" },
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&v).expect("serialisable")
                );
            }
            eprintln!("error: {e}");
            ExitCode::from(code)
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Error> {
    match &cli.command {
        Command::Hf(a) => hf(a),
        Command::Grading(a) => grading(a),
        Command::Alexander(a) => alexander(a),
        Command::SkeinTree(a) => skein_tree(a),
        Command::LogTransform(a) => log_transform(a),
        Command::RimDistinguish(a) => rim(a),
        Command::Koszul(a) => koszul(a, cli.seed),
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serialisable")
}

fn read_delta(path: &std::path::Path) -> Result<DeltaData, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    DeltaData::from_json(&text)
}

fn describe(
    a: &HfArgs,
    k: i64,
    delta: Option<&DeltaData>,
) -> Result<GradedModuleDescription, Error> {
    let (n, g) = (a.degree, a.genus);
    match a.flavor {
        Flavor::Minus => hf_minus(n, g, k),
        Flavor::Plus if n <= 1 - 2 * g => hf_plus_large_negative(n, g, k, delta),
        Flavor::Plus if n >= 2 * g - 1 => hf_plus_large_positive(n, g, k, delta),
        Flavor::Plus => Err(Error::OutOfRange {
            what: "n",
            value: n.to_string(),
            expected: format!("|n| >= 2g - 1 = {}", 2 * g - 1),
        }),
    }
}

fn hf(a: &HfArgs) -> Result<Output, Error> {
    let delta = a.delta.as_deref().map(read_delta).transpose()?;
    let ks: Vec<i64> = match a.spinc {
        Some(k) => vec![k],
        None => spinc_enumerate(a.degree)?.iter().map(|s| s.k).collect(),
    };
    let descs = ks
        .iter()
        .map(|&k| describe(a, k, delta.as_ref()))
        .collect::<Result<Vec<_>, _>>()?;
    let text = descs.iter().map(|d| d.to_string()).collect::<String>();
    let json = if descs.len() == 1 {
        to_value(&descs[0])
    } else {
        json!({ "modules": descs })
    };
    Ok(Output { json, text })
}

fn need(v: Option<i64>, name: &'static str) -> Result<i64, Error> {
    v.ok_or_else(|| Error::Parse(format!("--{name} is required for this quantity")))
}

fn grading(a: &GradingArgs) -> Result<Output, Error> {
    if a.dminus || a.dplus {
        let (n, g) = (need(a.n, "n")?, need(a.genus, "genus")?);
        let d = relative_invariant_degree(n, g)?;
        let (name, v) = if a.dminus {
            ("dminus", &d.d_minus)
        } else {
            ("dplus", &d.d_plus)
        };
        return Ok(Output {
            json: json!({ "quantity": name, "n": n, "genus": g, "value": fmt_q(v), "limit": d.limit }),
            text: fmt_q(v),
        });
    }
    if a.tau {
        let (n, k) = (need(a.n, "n")?, need(a.k, "k")?);
        let v = tau(n, k)?;
        return Ok(Output {
            json: json!({ "quantity": "tau", "n": n, "k": k, "value": fmt_q(&v) }),
            text: fmt_q(&v),
        });
    }
    if a.reduced {
        let (g, k) = (need(a.genus, "genus")?, need(a.k, "k")?);
        let v = reduced_degree(g, k)?;
        return Ok(Output {
            json: json!({ "quantity": "reduced", "genus": g, "k": k, "value": fmt_q(&v) }),
            text: fmt_q(&v),
        });
    }
    if a.profile {
        let g = need(a.genus, "genus")?;
        let p = blowup_degree_profile(g)?;
        let mut text = String::new();
        for e in &p.entries {
            text.push_str(&format!("{}\n", to_value(e)));
        }
        text.push_str(&format!(
            "max {} at l = {:?}\n",
            fmt_q(&p.max_value),
            p.argmax
        ));
        text.push_str(&format!("{}\n", p.discrepancy.message));
        return Ok(Output {
            json: to_value(&p),
            text,
        });
    }
    let n = need(a.n, "n")?;
    let l = blowup_lattice(n);
    Ok(Output {
        text: format!(
            "intersection form: {:?}\nB = {:?}\na = {:?}, a.a = {}, B(a) = 0: {}\nC = {:?}\nC^T(s*) = {:?}\n",
            l.intersection_form, l.b, l.a, l.a_square, l.a_in_kernel, l.c, l.restriction_of_s_dual
        ),
        json: to_value(&l),
    })
}

fn parse_braid(s: &str) -> Result<PlanarDiagram, Error> {
    let (strands, word) = s
        .split_once(':')
        .ok_or_else(|| Error::Parse("braid must look like `STRANDS: w1 w2 ...`".into()))?;
    let strands: usize = strands
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad strand count `{strands}`")))?;
    let word = word
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| Error::Parse(format!("bad generator `{t}`")))
        })
        .collect::<Result<Vec<i64>, _>>()?;
    PlanarDiagram::from_braid(strands, &word)
}

fn load_knot(a: &KnotArgs) -> Result<(String, PlanarDiagram), Error> {
    if let Some(pd) = &a.pd {
        Ok(("pd".into(), PlanarDiagram::parse_pd(pd)?))
    } else if let Some(name) = &a.knot {
        Ok((name.clone(), knot_by_name(name)?))
    } else {
        let b = a.braid.as_deref().unwrap_or_default();
        Ok((format!("braid {b}"), parse_braid(b)?))
    }
}

fn alexander(a: &KnotArgs) -> Result<Output, Error> {
    let (name, d) = load_knot(a)?;
    let alex = alexander_from_diagram(&d)?;
    let report = knot_report(&name, &d)?;
    Ok(Output {
        json: to_value(&report),
        text: alex.to_string(),
    })
}

fn skein_tree(a: &SkeinTreeArgs) -> Result<Output, Error> {
    let (name, d) = load_knot(&a.knot)?;
    let tree = resolution_tree(&d, a.budget)?;
    let conway = conway_from_tree(&tree)?;
    let theta = if d.is_knot() {
        Some(theta_from_tree(&tree)?)
    } else {
        None
    };
    let mut json = json!({
        "name": name,
        "nodes": tree.node_count(),
        "depth": tree.depth(),
        "max_components": tree.max_components(),
        "conway": conway.to_string_with(&["z"]),
        "theta": theta.as_ref().map(|t| t.to_string()),
    });
    if a.full {
        json["tree"] = to_value(&tree);
    }
    let mut text = format!(
        "nodes: {}\ndepth: {}\nconway: {}\n",
        tree.node_count(),
        tree.depth(),
        conway.to_string_with(&["z"])
    );
    if let Some(t) = theta {
        text.push_str(&format!("theta: {t}\n"));
    }
    Ok(Output { json, text })
}

fn log_transform(a: &LogTransformArgs) -> Result<Output, Error> {
    let image = t3_theta_image([a.p, a.q, a.r])?;
    let mut sum = String::new();
    for (c, e) in image
        .lambda2_part
        .iter()
        .zip(["c*_100", "c*_010", "c*_001"])
    {
        let term = match c.abs() {
            0 => continue,
            1 => e.to_string(),
            m => format!("{m}*{e}"),
        };
        match (sum.is_empty(), *c < 0) {
            (true, false) => {}
            (true, true) => sum.push('-'),
            (false, false) => sum.push_str(" + "),
            (false, true) => sum.push_str(" - "),
        }
        sum.push_str(&term);
    }
    if sum.is_empty() {
        sum.push('0');
    }
    let mut text = format!("theta image: {sum} in degree {}\n", fmt_q(&image.degree));
    let mut json = json!({ "p": a.p, "q": a.q, "r": a.r, "theta_image": to_value(&image) });
    if let Some(basis) = &a.basis {
        let ring: CoefficientRing = a.ring.into();
        let invs = basis
            .iter()
            .map(|s| {
                let p = LaurentPolynomial::parse_univariate(s, ring)?;
                let mut inv = FormalInvariant::new(ring, &["t"]);
                inv.insert("s", image.degree.clone(), vec![p])?;
                Ok(inv)
            })
            .collect::<Result<Vec<_>, Error>>()?;
        let out = log_transform_combination(a.p, a.q, a.r, [&invs[0], &invs[1], &invs[2]])?;
        let value = out.component("s").expect("present").value[0].to_string();
        text.push_str(&format!("combination: {value}\n"));
        json["combination"] = json!(value);
    }
    Ok(Output { json, text })
}

fn rim(a: &RimArgs) -> Result<Output, Error> {
    let knots = a
        .knots
        .iter()
        .map(|n| Ok((n.trim().to_string(), knot_by_name(n)?)))
        .collect::<Result<Vec<_>, Error>>()?;
    let report = rim_surgery_verdict(a.genus, a.n, &knots)?;
    let mut text = format!(
        "blowups applied: {} ({:?})\ntop of HF-: {}\n",
        report.blowups_applied, report.blowup_path, report.hf_top_structure
    );
    for k in &report.knots {
        text.push_str(&format!(
            "{}: {}  [mod 2: {}]\n",
            k.name, k.alexander, k.mod2_class
        ));
    }
    for p in &report.pairs {
        text.push_str(&format!("{} vs {}: {}\n", p.pair[0], p.pair[1], p.verdict));
    }
    Ok(Output {
        json: to_value(&report),
        text,
    })
}

fn koszul(a: &KoszulArgs, seed: u64) -> Result<Output, Error> {
    let ring: CoefficientRing = a.ring.into();
    let c = koszul_complex(a.genus, ring)?;
    let mut ev = RankEvaluator::seeded(seed);
    let ranks = fraction_field_homology_ranks(&c, &mut ev)?;
    let mut text = format!("{c}");
    text.push_str(&format!("fraction-field homology ranks: {ranks:?}\n"));
    let mut json = json!({
        "genus": a.genus,
        "ring": ring,
        "complex": to_value(&c),
        "fraction_field_homology_ranks": ranks,
    });
    if a.zseq {
        let delta = match &a.delta {
            Some(p) => read_delta(p)?,
            None if a.genus == 1 => delta_for_genus_one(),
            None => {
                return Err(Error::HypothesisViolation(
                    "delta maps are only built in at genus one; pass --delta".into(),
                ))
            }
        };
        let report = validate_zseq(a.genus, &delta, &mut ev)?;
        text.push_str(&format!(
            "zseq: {} (failing positions {:?})\n",
            if report.passed { "passed" } else { "failed" },
            report.failing_positions()
        ));
        json["zseq"] = to_value(&report);
    }
    if let Some(r) = &a.region {
        let region: Region = r.parse()?;
        let (lo, hi) = a
            .columns
            .split_once(':')
            .and_then(|(l, h)| Some((l.trim().parse().ok()?, h.trim().parse().ok()?)))
            .ok_or_else(|| Error::Parse(format!("bad column range `{}`", a.columns)))?;
        let page = e1_page(a.genus, region, lo..=hi)?;
        for e in &page {
            text.push_str(&format!(
                "column {}: {} in degree {} (Koszul position {})\n",
                e.column, e.label, e.degree, e.koszul_position
            ));
        }
        json["e1_page"] = to_value(&page);
    }
    Ok(Output { json, text })
}
