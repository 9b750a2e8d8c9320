use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rootfold::action::{action_from_json_value, named_action, stable_positive_system, ActionGroup, ActionJson, DatumAutomorphism};
use rootfold::bds::bds;
use rootfold::catalog::{catalog, summarize};
use rootfold::checks::{registry, run_named_check, CheckReport};
use rootfold::coxfix::{build_complex, compare_with_folded, complex_action, fixed_subcomplex};
use rootfold::folding::{folded_simple_and_dynkin, restricted_systems, two_stage, CharacteristicRule, FoldingView};
use rootfold::formlab::{char2_report, FormData};
use rootfold::induce::{induce_datum, induction_quotient_compat, AbstractGroup, InducedView};
use rootfold::rootdata::{irreducible_components, named_datum, simple_system, type_label, validate, LatticeForm, RootDatum};

#[derive(Parser)]
#[command(name = "rootfold", version, about = "Quotients of root data by finite group actions", arg_required_else_help = true)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Form {
    Adjoint,
    Sc,
}

#[derive(Args, Clone)]
struct DatumArgs {
    /// Named type such as E6, A2xA2 or BC2.
    #[arg(long = "type", conflicts_with = "datum")]
    type_: Option<String>,
    #[arg(long, value_enum, default_value_t = Form::Adjoint)]
    form: Form,
    /// Root datum JSON file.
    #[arg(long)]
    datum: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct ActionArgs {
    /// trivial, minus-one, swap, flip, triality, s3, block-swap or block-cycle.
    #[arg(long, conflicts_with = "action_file")]
    action: Option<String>,
    /// Action JSON file.
    #[arg(long)]
    action_file: Option<PathBuf>,
    /// Generator indices acting only in the second stage.
    #[arg(long, value_delimiter = ',')]
    galois: Vec<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Checks the root datum axioms.
    Validate(DatumArgs),
    /// Quotient datum and restricted root systems.
    Fold {
        #[command(flatten)]
        datum: DatumArgs,
        #[command(flatten)]
        action: ActionArgs,
        /// Characteristic exponent (1 or a prime); repeatable.
        #[arg(long = "characteristic", default_values_t = [1u64])]
        characteristic: Vec<u64>,
    },
    /// Type of the root system.
    Classify(DatumArgs),
    /// Borel-de Siebenthal subsystem for a node of the Dynkin diagram.
    Bds {
        #[command(flatten)]
        datum: DatumArgs,
        /// One-based Bourbaki node.
        #[arg(long)]
        node: usize,
    },
    /// Induced root datum along a subgroup.
    Induce {
        /// Root datum JSON file.
        #[arg(long)]
        datum: PathBuf,
        /// Group table, subgroup and subgroup action JSON file.
        #[arg(long)]
        induction: PathBuf,
    },
    /// Fixed subcomplex of the Coxeter complex.
    Building {
        #[command(flatten)]
        datum: DatumArgs,
        #[command(flatten)]
        action: ActionArgs,
        #[arg(long, default_value_t = 1)]
        characteristic: u64,
    },
    /// Fixed group of a symmetric bilinear form in characteristic 2.
    Char2 {
        /// JSON matrix of entries such as "(t+1)/t".
        #[arg(long)]
        gram: PathBuf,
        /// Adjoin square roots, e.g. sqrt:t; all variables when omitted.
        #[arg(long)]
        extend: Vec<String>,
    },
    /// Runs the named reproducibility checks.
    VerifyPaper {
        #[arg(long)]
        only: Option<String>,
    },
    /// Folds every catalog entry.
    Catalog,
}

enum Failure {
    Input(String),
    Check(Value),
}

type Outcome = Result<Value, Failure>;

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_datum(a: &DatumArgs) -> Result<RootDatum, Failure> {
    match (&a.type_, &a.datum) {
        (Some(t), _) => {
            let form = if a.form == Form::Sc { LatticeForm::SimplyConnected } else { LatticeForm::Adjoint };
            named_datum(t, form).map_err(input)
        }
        (None, Some(p)) => RootDatum::from_json_value(&read_json(p)?).map_err(input),
        (None, None) => Err(Failure::Input("either --type or --datum is required".into())),
    }
}

fn load_action(d: &RootDatum, a: &ActionArgs) -> Result<ActionGroup, Failure> {
    let g = match (&a.action, &a.action_file) {
        (Some(name), _) => {
            let g = named_action(d, name).map_err(input)?;
            let all: Vec<usize> = (0..g.order()).collect();
            g.with_geometric(&all).map_err(input)?
        }
        (None, Some(p)) => action_from_json_value(d, &read_json(p)?).map_err(input)?,
        (None, None) => Err(Failure::Input("either --action or --action-file is required".into()))?,
    };
    if a.galois.is_empty() {
        return Ok(g);
    }
    if let Some(&bad) = a.galois.iter().find(|&&i| i >= g.generators.len()) {
        return Err(Failure::Input(format!("no generator {bad}; the action has {}", g.generators.len())));
    }
    let geo: Vec<usize> =
        (0..g.generators.len()).filter(|i| !a.galois.contains(i)).map(|i| g.generators[i]).collect();
    g.with_geometric(&geo).map_err(input)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable output")
}

fn cmd_validate(a: &DatumArgs) -> Outcome {
    let d = load_datum(a)?;
    let r = validate(&d);
    let v = json!({ "datum": d.to_json(), "report": r });
    if r.ok {
        Ok(v)
    } else {
        Err(Failure::Check(v))
    }
}

fn cmd_classify(a: &DatumArgs) -> Outcome {
    let d = load_datum(a)?;
    let r = validate(&d);
    if !r.ok {
        return Err(Failure::Check(to_value(&r)));
    }
    let label = type_label(&d).map_err(input)?;
    let comps: Vec<Value> = irreducible_components(&d)
        .map_err(input)?
        .iter()
        .map(|c| json!({ "type": c.kind.to_string(), "roots": c.roots.len(), "simple": c.simple.iter().map(|&i| d.root(i)).collect::<Vec<_>>() }))
        .collect();
    Ok(json!({ "type": label.to_string(), "rank": d.rank(), "roots": d.len(), "reduced": d.is_reduced(), "components": comps }))
}

fn cmd_fold(da: &DatumArgs, aa: &ActionArgs, ps: &[u64]) -> Outcome {
    let d = load_datum(da)?;
    let g = load_action(&d, aa)?;
    let rules: Vec<CharacteristicRule> = ps.iter().map(|&p| CharacteristicRule::new(p)).collect::<Result<_, _>>().map_err(input)?;
    let pos = stable_positive_system(&d, &g).map_err(input)?.ok_or_else(|| input("no positive system is stable under the action"))?;
    let t = two_stage(&d, &g, &pos).map_err(input)?;
    let simple = simple_system(&d, &pos);
    let (_, diagram) = folded_simple_and_dynkin(&t.total, &simple).map_err(input)?;
    let restricted: Vec<Value> = rules.iter().map(|&p| to_value(&restricted_systems(&t, p))).collect();
    let total = FoldingView::from(&t.total);
    let ok = total.coroot_lattice_identity;
    let v = json!({
        "action": ActionJson::from_group(&g),
        "group_order": g.order(),
        "geometric_order": g.geometric.as_ref().map_or(g.order(), |x| x.len()),
        "source_type": type_label(&d).map_err(input)?.to_string(),
        "stage1": FoldingView::from(&t.stage1),
        "stage2": FoldingView::from(&t.stage2),
        "total": total,
        "dynkin": diagram,
        "restricted": restricted,
    });
    if ok {
        Ok(v)
    } else {
        Err(Failure::Check(v))
    }
}

fn cmd_bds(da: &DatumArgs, node: usize) -> Outcome {
    let d = load_datum(da)?;
    let comps = irreducible_components(&d).map_err(input)?;
    if comps.len() != 1 {
        return Err(input("bds needs an irreducible datum"));
    }
    let simple = comps[0].simple.clone();
    let alpha = *node
        .checked_sub(1)
        .and_then(|k| simple.get(k))
        .ok_or_else(|| Failure::Input(format!("node {node} out of range 1..={}", simple.len())))?;
    let b = bds(&d, &simple, alpha).map_err(input)?;
    Ok(to_value(&b.view(&d)))
}

fn cmd_induce(datum: &Path, induction: &Path) -> Outcome {
    let d = RootDatum::from_json_value(&read_json(datum)?).map_err(input)?;
    let spec = read_json(induction)?;
    let group = match (spec.get("table"), spec.get("cyclic")) {
        (Some(t), _) => AbstractGroup::new(serde_json::from_value(t.clone()).map_err(input)?).map_err(input)?,
        (None, Some(m)) => AbstractGroup::cyclic(m.as_u64().ok_or_else(|| input("cyclic order must be a number"))? as usize),
        (None, None) => return Err(input("induction JSON needs \"table\" or \"cyclic\"")),
    };
    let sub: Vec<usize> =
        serde_json::from_value(spec.get("subgroup").cloned().unwrap_or(json!([0]))).map_err(input)?;
    let action = match spec.get("action") {
        None => vec![DatumAutomorphism::identity(&d); sub.len()],
        Some(a) => {
            let ms: Vec<Vec<Vec<i64>>> = serde_json::from_value(a.clone()).map_err(input)?;
            ms.into_iter().map(|m| DatumAutomorphism::new(&d, m)).collect::<Result<_, _>>().map_err(input)?
        }
    };
    let ind = induce_datum(&d, &group, &sub, &action).map_err(input)?;
    let compat = induction_quotient_compat(&d, &group, &sub, &action).map_err(input)?;
    let v = json!({ "induced": InducedView::from(&ind), "quotient_compatible": compat });
    if compat {
        Ok(v)
    } else {
        Err(Failure::Check(v))
    }
}

fn cmd_building(da: &DatumArgs, aa: &ActionArgs, p: u64) -> Outcome {
    let d = load_datum(da)?;
    let g = load_action(&d, aa)?;
    let rule = CharacteristicRule::new(p).map_err(input)?;
    let pos = stable_positive_system(&d, &g).map_err(input)?.ok_or_else(|| input("no positive system is stable under the action"))?;
    let simple = simple_system(&d, &pos);
    let c = build_complex(&d, &simple).map_err(input)?;
    let a = complex_action(&c, &g).map_err(input)?;
    let fixed = fixed_subcomplex(&c, &a);
    let t = two_stage(&d, &g, &pos).map_err(input)?;
    let verdict = compare_with_folded(&c, &a, &t, rule).map_err(input)?;
    let listing: Vec<Value> = fixed
        .iter()
        .map(|&s| {
            let x = c.simplices[s];
            let cotype: Vec<usize> = (0..simple.len()).filter(|k| x.mask >> k & 1 == 1).map(|k| k + 1).collect();
            json!({ "dimension": c.dimension(s), "cotype": cotype, "word": c.weyl.word(x.rep), "chamber": x.mask == 0 })
        })
        .collect();
    let ok = verdict.ok;
    let v = json!({ "simplices": c.simplices.len(), "fixed": listing, "comparison": verdict });
    if ok {
        Ok(v)
    } else {
        Err(Failure::Check(v))
    }
}

fn cmd_char2(gram: &Path, extend: &[String]) -> Outcome {
    let rows: Vec<Vec<String>> = serde_json::from_value(read_json(gram)?).map_err(input)?;
    let f = FormData::from_strings(&rows).map_err(input)?;
    let e = if extend.is_empty() {
        f.field.extend_all()
    } else {
        let mut e = f.field.clone();
        for x in extend {
            let name = x.strip_prefix("sqrt:").ok_or_else(|| Failure::Input(format!("--extend expects sqrt:NAME, got {x}")))?;
            e = e.extend_sqrt(name).map_err(input)?;
        }
        e
    };
    Ok(to_value(&char2_report(&f, &e).map_err(input)?))
}

fn cmd_verify(only: Option<&str>) -> Outcome {
    let reports: Vec<CheckReport> = match only {
        Some(n) => vec![run_named_check(n).map_err(input)?],
        None => registry().iter().map(|c| c.run()).collect(),
    };
    for r in &reports {
        eprintln!("{} {}", if r.passed { "pass" } else { "FAIL" }, r.name);
    }
    let v = to_value(&reports);
    if reports.iter().all(|r| r.passed) {
        Ok(v)
    } else {
        Err(Failure::Check(v))
    }
}

fn cmd_catalog() -> Outcome {
    let mut out = Vec::new();
    let mut ok = true;
    for e in catalog() {
        let s = summarize(&e).map_err(|err| Failure::Input(format!("{}: {err}", e.name)))?;
        ok &= s.coroot_lattice_identity;
        out.push(to_value(&s));
    }
    if ok {
        Ok(Value::Array(out))
    } else {
        Err(Failure::Check(Value::Array(out)))
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn render_table(v: &Value) -> String {
    match v {
        Value::Array(rows) if rows.iter().all(|r| r.is_object()) && !rows.is_empty() => {
            let cols: Vec<String> = rows[0]
                .as_object()
                .unwrap()
                .iter()
                .filter(|(_, x)| !x.is_array() && !x.is_object())
                .map(|(k, _)| k.clone())
                .collect();
            let body: Vec<Vec<String>> = rows.iter().map(|r| cols.iter().map(|c| cell(&r[c])).collect()).collect();
            let widths: Vec<usize> = (0..cols.len())
                .map(|i| body.iter().map(|r| r[i].len()).chain([cols[i].len()]).max().unwrap())
                .collect();
            let line = |cells: &[String]| -> String {
                cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
            };
            let mut out = vec![line(&cols)];
            out.extend(body.iter().map(|r| line(r)));
            out.join("\n")
        }
        Value::Object(m) => {
            let w = m.keys().map(|k| k.len()).max().unwrap_or(0);
            m.iter().map(|(k, x)| format!("{k:<w$}  {}", cell(x))).collect::<Vec<_>>().join("\n")
        }
        other => cell(other),
    }
}

fn emit(v: &Value, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(v).expect("serializable output")),
        Format::Table => println!("{}", render_table(v)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(if code == 0 { 0 } else { 2 });
        }
    };
    let outcome = match &cli.command {
        Command::Validate(a) => cmd_validate(a),
        Command::Fold { datum, action, characteristic } => cmd_fold(datum, action, characteristic),
        Command::Classify(a) => cmd_classify(a),
        Command::Bds { datum, node } => cmd_bds(datum, *node),
        Command::Induce { datum, induction } => cmd_induce(datum, induction),
        Command::Building { datum, action, characteristic } => cmd_building(datum, action, *characteristic),
        Command::Char2 { gram, extend } => cmd_char2(gram, extend),
        Command::VerifyPaper { only } => cmd_verify(only.as_deref()),
        Command::Catalog => cmd_catalog(),
    };
    match outcome {
        Ok(v) => {
            emit(&v, cli.format);
            ExitCode::SUCCESS
        }
        Err(Failure::Check(v)) => {
            emit(&v, cli.format);
            eprintln!("check failed");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
