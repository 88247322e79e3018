use std::path::PathBuf;
use std::process::ExitCode;

use camring::arrangement::{Arrangement, FlatId, IntersectionPoset};
use camring::exactlin::format_rational;
use camring::higgs::{Convention, HiggsModel, RootDatum};
use camring::json::{ArrangementDoc, DatumDoc, GroupDoc, InputDoc, RingElementDoc, WeylSpec};
use camring::monoid::MonoidElement;
use camring::partitions::{multiply_partitions, weighted_partitions, WeightedPartition};
use camring::reflection::{GroupAction, ReflectionGroup, DEFAULT_MAX_GROUP};
use camring::strata::{Coefficients, CohomologyRing};
use camring::Error;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

const MAX_DEGREE_CAP: u32 = 40;

#[derive(Parser, Debug)]
#[command(name = "camring", version, about = "Exact cohomology of cameral-cover and Higgs stacks")]
struct Cli {
    /// Arrangement, group or root-datum JSON document
    #[arg(long, global = true, conflicts_with = "weyl")]
    input: Option<PathBuf>,
    /// Built-in Weyl group, e.g. A:2, B:3, D:4
    #[arg(long, global = true)]
    weyl: Option<String>,
    /// Largest cohomological degree (even, at most 40)
    #[arg(long, global = true, default_value_t = 8)]
    max_degree: u32,
    #[arg(long, global = true, value_enum, default_value_t = Coeff::Q)]
    coeff: Coeff,
    #[arg(long, global = true, value_enum, default_value_t = ConventionName::Default)]
    convention: ConventionName,
    /// Write the JSON result here instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Coeff {
    #[value(name = "Q")]
    Q,
    #[value(name = "Z")]
    Z,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConventionName {
    Default,
    PaperSl2,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Space {
    #[value(name = "C")]
    C,
    #[value(name = "M")]
    M,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum HiggsSpace {
    #[value(name = "HC")]
    Hc,
    #[value(name = "H")]
    H,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Flats of the intersection poset with order and components
    Poset,
    /// Irreducible components of the arrangement
    Components,
    /// Torus rank and component group of each stratum
    Strata,
    /// Betti numbers of the cover stack (C) or the coarse stack (M)
    Betti {
        #[arg(long, value_enum)]
        space: Space,
    },
    /// Product of two ring elements given as JSON files
    Mul {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Basis of W-invariants in one degree
    Invariants {
        #[arg(long)]
        degree: u32,
    },
    /// Restriction to the cover induced from a flat
    Induce {
        #[arg(long)]
        flat: FlatId,
    },
    /// Whitney product formula for a splitting Y ∩ Z
    Whitney {
        #[arg(long, num_args = 2, value_names = ["Y", "Z"])]
        check: Vec<FlatId>,
    },
    /// Weighted partitions of n up to the degree bound
    Partitions {
        #[arg(long)]
        n: usize,
    },
    /// Structure constants N for a product of weighted partitions
    StructureConstants {
        #[arg(long)]
        n: usize,
        /// JSON list of [size, weight] pairs
        #[arg(long)]
        lambda1: String,
        #[arg(long)]
        lambda2: String,
    },
    /// Classification of strata up to the group action
    PointClassification,
    /// Graded dimensions of the Higgs stacks
    HiggsBetti {
        /// sl2, sl3 or a root-datum JSON file
        #[arg(long)]
        datum: Option<String>,
        #[arg(long, value_enum)]
        space: HiggsSpace,
    },
    /// Diagnostics for the input document
    Validate,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Poset => "poset",
            Command::Components => "components",
            Command::Strata => "strata",
            Command::Betti { .. } => "betti",
            Command::Mul { .. } => "mul",
            Command::Invariants { .. } => "invariants",
            Command::Induce { .. } => "induce",
            Command::Whitney { .. } => "whitney",
            Command::Partitions { .. } => "partitions",
            Command::StructureConstants { .. } => "structure-constants",
            Command::PointClassification => "point-classification",
            Command::HiggsBetti { .. } => "higgs-betti",
            Command::Validate => "validate",
        }
    }
}

enum Failure {
    Validation(String),
    Bound(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_bound() {
            Failure::Bound(e.to_string())
        } else {
            Failure::Validation(e.to_string())
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn invalid(msg: impl Into<String>) -> Failure {
    Failure::Validation(msg.into())
}

fn read_file(path: &PathBuf) -> Outcome<Vec<u8>> {
    std::fs::read(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))
}

fn parse_doc<T: serde::de::DeserializeOwned>(bytes: &[u8], what: &str) -> Outcome<T> {
    let de = &mut serde_json::Deserializer::from_slice(bytes);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        invalid(format!(
            "{what}: at field `{path}` (line {}, column {}): {inner}",
            inner.line(),
            inner.column()
        ))
    })
}

fn max_group() -> Outcome<usize> {
    match std::env::var("CAMRING_MAX_GROUP") {
        Ok(s) => s.trim().parse().map_err(|_| invalid(format!("CAMRING_MAX_GROUP must be a positive integer, got {s:?}"))),
        Err(_) => Ok(DEFAULT_MAX_GROUP),
    }
}

fn convention(name: ConventionName) -> Convention {
    match name {
        ConventionName::Default => Convention::default(),
        ConventionName::PaperSl2 => Convention::paper_sl2(),
    }
}

/// What the input flags resolved to.
struct Input {
    group: Option<ReflectionGroup>,
    arrangement: Option<Arrangement>,
    datum: Option<DatumDoc>,
}

fn load_input(cli: &Cli, bound: usize) -> Outcome<Option<Input>> {
    if let Some(w) = &cli.weyl {
        let group = WeylSpec::parse(w)?.build(bound)?;
        return Ok(Some(Input { group: Some(group), arrangement: None, datum: None }));
    }
    let Some(path) = &cli.input else { return Ok(None) };
    let bytes = read_file(path)?;
    let value: Value = serde_json::from_slice(&bytes)
        .map_err(|e| invalid(format!("{}: line {}, column {}: {e}", path.display(), e.line(), e.column())))?;
    let mut input = Input { group: None, arrangement: None, datum: None };
    match InputDoc::kind(&value) {
        Some("arrangement") => input.arrangement = Some(parse_doc::<ArrangementDoc>(&bytes, "arrangement")?.build()?),
        Some("group") => {
            let (g, a) = parse_doc::<GroupDoc>(&bytes, "group")?.build(bound)?;
            input.group = Some(g);
            input.arrangement = a;
        }
        Some(_) => input.datum = Some(parse_doc::<DatumDoc>(&bytes, "root datum")?),
        None => return Err(invalid("input is not an arrangement, group or root-datum document")),
    }
    Ok(Some(input))
}

fn rat_rows(rows: &[Vec<camring::exactlin::Rational>]) -> Value {
    rows.iter().map(|r| r.iter().map(format_rational).collect::<Vec<_>>()).collect::<Vec<_>>().into()
}

fn monoid_json(e: &MonoidElement) -> Value {
    serde_json::to_value(e.letters()).expect("letters serialize")
}

fn labels(p: &IntersectionPoset, hs: &[usize]) -> Vec<String> {
    hs.iter().map(|&h| p.arrangement().label(h).to_string()).collect()
}

fn poset_json(p: &IntersectionPoset) -> Value {
    let flats: Vec<Value> = p
        .flats()
        .iter()
        .enumerate()
        .map(|(i, f)| {
            json!({
                "id": i,
                "codim": f.codim(),
                "basis": rat_rows(&f.subspace.basis_vectors()),
                "hyperplanes": labels(p, &f.hyperplanes),
                "components": f.components.iter().map(|c| labels(p, c)).collect::<Vec<_>>(),
                "irreducible": f.is_irreducible(),
            })
        })
        .collect();
    // covering relations of the order
    let mut covers = Vec::new();
    for x in 0..p.len() {
        for y in 0..p.len() {
            if x != y && p.leq(x, y) && !(0..p.len()).any(|z| z != x && z != y && p.leq(x, z) && p.leq(z, y)) {
                covers.push(json!([x, y]));
            }
        }
    }
    json!({"flats": flats, "covers": covers})
}

fn max_weight(cli: &Cli) -> Outcome<u32> {
    let d = cli.max_degree;
    if d % 2 != 0 {
        return Err(invalid(format!("--max-degree must be even, got {d}")));
    }
    if d > MAX_DEGREE_CAP {
        return Err(invalid(format!("--max-degree must be at most {MAX_DEGREE_CAP}, got {d}")));
    }
    Ok(d / 2)
}

fn parse_partition(s: &str) -> Outcome<WeightedPartition> {
    let parts: Vec<(usize, u32)> =
        serde_json::from_str(s).map_err(|e| invalid(format!("partition {s:?}: expected [[size, weight], ...]: {e}")))?;
    Ok(WeightedPartition::from_parts(parts)?)
}

fn partition_json(l: &WeightedPartition) -> Value {
    l.parts().iter().map(|&(s, w)| json!([s, w])).collect::<Vec<_>>().into()
}

fn run(cli: &Cli) -> Outcome<Value> {
    let bound = max_group()?;
    let conv = convention(cli.convention);
    let coeff = match cli.coeff {
        Coeff::Q => Coefficients::Q,
        Coeff::Z => Coefficients::Z,
    };
    let mw = max_weight(cli)?;

    // commands that need no arrangement
    match &cli.command {
        Command::Partitions { n } => {
            let levels: Vec<Value> = (0..=mw)
                .map(|d| json!({"weight": d, "partitions": weighted_partitions(*n, d).iter().map(partition_json).collect::<Vec<_>>()}))
                .collect();
            return Ok(json!({"n": n, "levels": levels}));
        }
        Command::StructureConstants { n, lambda1, lambda2 } => {
            let (l1, l2) = (parse_partition(lambda1)?, parse_partition(lambda2)?);
            let terms: Vec<Value> = multiply_partitions(&l1, &l2, *n)?
                .iter()
                .map(|(l, k)| json!({"lambda": partition_json(l), "N": k}))
                .collect();
            return Ok(json!({"lambda1": partition_json(&l1), "lambda2": partition_json(&l2), "terms": terms}));
        }
        Command::HiggsBetti { datum, space } => {
            let root = match datum.as_deref() {
                Some("sl2") => RootDatum::sl2(conv),
                Some("sl3") => RootDatum::sl3(conv),
                Some(path) => parse_doc::<DatumDoc>(&read_file(&PathBuf::from(path))?, "root datum")?.build(conv)?,
                None => match load_input(cli, bound)?.and_then(|i| i.datum) {
                    Some(d) => d.build(conv)?,
                    None => return Err(invalid("higgs-betti needs --datum or a root-datum --input")),
                },
            };
            let model = HiggsModel::new(&root)?;
            let (name, dims) = match space {
                HiggsSpace::Hc => ("HC", model.hc_betti(mw)),
                HiggsSpace::H => ("H", model.h_betti(mw)?),
            };
            return Ok(json!({"space": name, "dims": dims}));
        }
        _ => {}
    }

    let input = match load_input(cli, bound) {
        Ok(Some(i)) => i,
        Ok(None) => return Err(invalid("give --input FILE or --weyl TYPE:RANK")),
        Err(e) if matches!(cli.command, Command::Validate) => return Ok(diagnostics(Some(e), None)),
        Err(e) => return Err(e),
    };
    if input.datum.is_some() {
        return Err(invalid(format!("{} needs an arrangement or group document, not a root datum", cli.command.name())));
    }
    let arrangement = match (&input.arrangement, &input.group) {
        (Some(a), _) => a.clone(),
        (None, Some(g)) => g.mirror_arrangement().clone(),
        (None, None) => unreachable!("input documents carry one or the other"),
    };
    let poset = IntersectionPoset::new(arrangement);
    let action = match &input.group {
        Some(g) => match GroupAction::new(g, &poset) {
            Ok(a) => Some(a),
            Err(e) if matches!(cli.command, Command::Validate) => return Ok(diagnostics(Some(e.into()), input.group.as_ref())),
            Err(e) => return Err(e.into()),
        },
        None => None,
    };
    let ring = match &action {
        Some(a) => CohomologyRing::with_group(a, coeff),
        None => CohomologyRing::new(&poset, coeff),
    };

    Ok(match &cli.command {
        Command::Poset => poset_json(&poset),
        Command::Components => {
            let a = poset.arrangement();
            json!({
                "components": a.components().iter().map(|c| labels(&poset, c)).collect::<Vec<_>>(),
                "rank": a.rank(),
                "irreducible": a.is_irreducible(),
            })
        }
        Command::Strata => {
            let infos: Vec<_> = (0..poset.len()).map(|x| ring.stratum_info(x)).collect::<camring::Result<_>>()?;
            json!({"strata": infos})
        }
        Command::Betti { space } => match space {
            Space::C => json!({"space": "C", "dims": ring.betti_c(mw)}),
            Space::M => json!({"space": "M", "dims": ring.betti_m(mw)?}),
        },
        Command::Mul { left, right } => {
            let x = parse_doc::<RingElementDoc>(&read_file(left)?, "left")?.build(&ring)?;
            let y = parse_doc::<RingElementDoc>(&read_file(right)?, "right")?.build(&ring)?;
            json!({"product": RingElementDoc::from_element(&ring.multiply(&x, &y)?)})
        }
        Command::Invariants { degree } => {
            if degree % 2 != 0 {
                return Err(invalid(format!("--degree must be even, got {degree}")));
            }
            let basis = ring.invariant_basis(degree / 2, false)?;
            json!({"degree": degree, "basis": basis.iter().map(RingElementDoc::from_element).collect::<Vec<_>>()})
        }
        Command::Induce { flat } => {
            let ind = ring.restriction_to_induced(*flat)?;
            let mut kernel = Vec::new();
            let mut images = Vec::new();
            for level in ring.monoid().enumerate(mw) {
                for e in level {
                    match ind.map_element(&e) {
                        Some(f) => images.push(json!({"source": monoid_json(&e), "target": monoid_json(&f)})),
                        None => kernel.push(monoid_json(&e)),
                    }
                }
            }
            json!({
                "flat": flat,
                "target": poset_json(&ind.target),
                "embedding": ind.embedding,
                "kernel": kernel,
                "images": images,
            })
        }
        Command::Whitney { check } => {
            let (y, z) = (check[0], check[1]);
            let x = ring.splitting(y, z)?;
            json!({"y": y, "z": z, "meet": x, "holds": ring.whitney_check(y, z)?})
        }
        Command::PointClassification => {
            let infos = ring.point_classification()?;
            json!({"classes": infos.len(), "strata": infos})
        }
        Command::Validate => diagnostics(None, input.group.as_ref()),
        Command::Partitions { .. } | Command::StructureConstants { .. } | Command::HiggsBetti { .. } => unreachable!(),
    })
}

fn diagnostics(error: Option<Failure>, group: Option<&ReflectionGroup>) -> Value {
    let errors: Vec<Value> = error
        .into_iter()
        .map(|f| match f {
            Failure::Validation(m) => json!({"kind": "validation", "message": m}),
            Failure::Bound(m) => json!({"kind": "bound-exceeded", "message": m}),
        })
        .collect();
    let mut warnings = Vec::new();
    if let Some(g) = group {
        if !g.generated_by_reflections() {
            warnings.push(json!("group is not generated by reflections"));
        }
    }
    json!({"valid": errors.is_empty(), "errors": errors, "warnings": warnings})
}

fn manifest(cli: &Cli) -> Value {
    let mut hasher = Sha256::new();
    if let Some(p) = &cli.input {
        hasher.update(std::fs::read(p).unwrap_or_default());
    } else if let Some(w) = &cli.weyl {
        hasher.update(w.as_bytes());
    }
    if let Command::HiggsBetti { datum: Some(d), .. } = &cli.command {
        match d.as_str() {
            "sl2" | "sl3" => hasher.update(d.as_bytes()),
            path => hasher.update(std::fs::read(path).unwrap_or_default()),
        }
    }
    let conv = convention(cli.convention);
    json!({
        "version": env!("CARGO_PKG_VERSION"),
        "command": cli.command.name(),
        "input_sha256": format!("{:x}", hasher.finalize()),
        "max_degree": cli.max_degree,
        "coefficients": format!("{:?}", cli.coeff),
        "convention": {
            "name": match cli.convention { ConventionName::Default => "default", ConventionName::PaperSl2 => "paper-sl2" },
            "pairing_scale": format_rational(&conv.pairing_scale),
            "sign": conv.sign.symbol(),
        },
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(t) = std::env::var("CAMRING_THREADS") {
        match t.trim().parse::<usize>() {
            Ok(n) if n > 0 => {
                rayon::ThreadPoolBuilder::new().num_threads(n).build_global().expect("thread pool is configured once");
            }
            _ => {
                eprintln!("{}", json!({"error": "validation", "message": format!("CAMRING_THREADS must be a positive integer, got {t:?}")}));
                return ExitCode::from(2);
            }
        }
    }
    match run(&cli) {
        Ok(mut v) => {
            v.as_object_mut().expect("results are objects").insert("manifest".into(), manifest(&cli));
            let text = serde_json::to_string_pretty(&v).expect("values serialize") + "\n";
            match &cli.out {
                Some(p) => {
                    if let Err(e) = std::fs::write(p, text) {
                        eprintln!("{}", json!({"error": "io", "message": format!("cannot write {}: {e}", p.display())}));
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Validation(m)) => {
            eprintln!("{}", json!({"error": "validation", "message": m}));
            ExitCode::from(2)
        }
        Err(Failure::Bound(m)) => {
            eprintln!("{}", json!({"error": "bound-exceeded", "message": m}));
            ExitCode::from(3)
        }
    }
}
