use std::collections::BTreeMap;
use std::io::Read;
use std::path::PathBuf;

use k3_lattice::algebra::json::{int_to_json, int_vec_from_json, parse_rational, rational_from_json, rational_to_json, rows_from_json};
use k3_lattice::algebra::{snf, IntMatrix};
use k3_lattice::dataset::{self, ParametricFamily, PrintedGram, PERIOD_ENTRIES, SURFACE_ENTRIES};
use k3_lattice::elliptic::{build_ns_gram, shioda_tate_rank, verify_torsion_relation, FibrationSpec};
use k3_lattice::families::{algebraic_vector, keum_options, singular_transcendental, Family, TauEquation};
use k3_lattice::lattice::{
    check_transcendental, enumerate_even_forms, transcendental_candidates, BinaryQuadraticForm, Lattice,
    TranscendentalCheck,
};
use k3_lattice::verify::{verify_paper, VerifyOptions};
use k3_lattice::weierstrass::{analyze_fibration, ratfn_from_json, WeierstrassModel};
use k3_lattice::Error;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::Command;

pub enum CliError {
    /// Bad arguments or malformed input; exit status 2.
    Usage(String),
    /// The input is well formed but the computation failed; exit status 1.
    Math(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(msg) => CliError::Usage(msg),
            other => CliError::Math(other),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// A command's result in both renderings; `ok = false` exits with status 1.
pub struct Output {
    pub json: Value,
    pub text: String,
    pub ok: bool,
}

impl Output {
    fn new(json: Value, text: impl Into<String>) -> Self {
        Output { json, text: text.into(), ok: true }
    }

    fn failing_if(mut self, failed: bool) -> Self {
        self.ok = !failed;
        self
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn read_json(input: &Option<PathBuf>) -> Result<Value> {
    let text = match input {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))?
        }
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| usage(format!("stdin: {e}")))?;
            s
        }
    };
    serde_json::from_str(&text).map_err(|e| usage(format!("malformed JSON: {e}")))
}

/// `{"gram": [[..]]}` or `{"rows", "cols", "entries"}`.
fn matrix_from_json(v: &Value) -> Result<IntMatrix> {
    Ok(match v.get("gram") {
        Some(g) => IntMatrix::from_rows(&rows_from_json(g)?)?,
        None => IntMatrix::from_json(v)?,
    })
}

fn form_text(f: &BinaryQuadraticForm) -> String {
    f.to_string()
}

fn dataset_spec(name: &str) -> Result<FibrationSpec> {
    if let Some(g) = PrintedGram::ALL.into_iter().find(|g| g.name() == name) {
        return Ok(g.spec());
    }
    dataset::rank0_spec(name).ok_or_else(|| usage(format!("no built-in fibration named {name:?}")))
}

fn spec_input(input: &Option<PathBuf>, name: &Option<String>) -> Result<(FibrationSpec, Value)> {
    match name {
        Some(n) => Ok((dataset_spec(n)?, Value::Null)),
        None => {
            let v = read_json(input)?;
            let spec = serde_json::from_value(v.clone()).map_err(|e| usage(format!("invalid fibration spec: {e}")))?;
            Ok((spec, v))
        }
    }
}

fn model_named(name: &str) -> Result<WeierstrassModel> {
    dataset::model_case(name).map(|c| c.model).ok_or_else(|| usage(format!("no built-in model named {name:?}")))
}

pub fn run(cmd: &Command) -> Result<Output> {
    match cmd {
        Command::Snf { input } => cmd_snf(&read_json(input)?),
        Command::Det { input } => {
            let m = matrix_from_json(&read_json(input)?)?;
            let d = m.det()?;
            Ok(Output::new(json!({"det": int_to_json(&d)}), d.to_string()))
        }
        Command::Discform { input } => cmd_discform(&read_json(input)?),
        Command::Reduce { abc, input } => cmd_reduce(abc, input),
        Command::Enumerate { det } => {
            let forms = enumerate_even_forms(*det);
            let text: Vec<String> = forms.iter().map(form_text).collect();
            Ok(Output::new(json!({"det": det, "count": forms.len(), "forms": forms}), text.join("\n")))
        }
        Command::Complement { input } => cmd_complement(&read_json(input)?),
        Command::Match { input } => cmd_match(&read_json(input)?),
        Command::NsBuild { input, dataset } => cmd_ns_build(input, dataset),
        Command::NsVerifyTorsion { input, dataset, section } => cmd_torsion(input, dataset, section),
        Command::Fibers { input, dataset } => {
            let model = match dataset {
                Some(n) => model_named(n)?,
                None => WeierstrassModel::from_json(&read_json(input)?)?,
            };
            let r = analyze_fibration(&model)?;
            Ok(Output::new(r.to_json(), format!("{r}\nEuler sum {}", r.euler_sum)))
        }
        Command::Specialize { family, k, u } => {
            let fam = ParametricFamily::from_name(family).ok_or_else(|| usage(format!("unknown family {family:?}")))?;
            let mut m = fam.model().specialize(&parse_rational(k)?);
            if let Some(u) = u {
                m = m.rescale(&parse_rational(u)?)?;
            }
            let mut j = m.to_json();
            j["family"] = json!(fam.name());
            j["k"] = json!(k);
            Ok(Output::new(j, m.to_string()))
        }
        Command::VerifyPoint { input, dataset } => cmd_verify_point(input, dataset),
        Command::Period { family, tau } => cmd_period(family, tau),
        Command::Keum { det } => {
            let k = keum_options(*det)?;
            let lines: Vec<String> = k.options.iter().map(|(l, d)| format!("l = {l}: det_J = {d}")).collect();
            let head = if k.squarefree { "squarefree, l = 1 forced" } else { "not squarefree" };
            Ok(Output::new(k.to_json(), format!("det {}: {head}\n{}", k.det, lines.join("\n"))))
        }
        Command::Dataset => Ok(Output::new(dataset::dataset_json(), dataset_text())),
        Command::VerifyPaper { only, fail_fast, sequential } => {
            let opts = VerifyOptions {
                only: only.clone(),
                fail_fast: *fail_fast,
                sequential: *sequential,
                ..Default::default()
            };
            let report = verify_paper(&opts);
            let ok = report.ok();
            Ok(Output::new(report.to_json(), report.to_text()).failing_if(!ok))
        }
    }
}

fn cmd_snf(v: &Value) -> Result<Output> {
    let m = matrix_from_json(v)?;
    let r = snf(&m);
    let factors = r.invariant_factors();
    let json = json!({
        "d": r.d.to_json(),
        "u": r.u.to_json(),
        "v": r.v.to_json(),
        "invariant_factors": factors.iter().map(int_to_json).collect::<Vec<_>>(),
        "rank": r.rank(),
    });
    let listed: Vec<String> = factors.iter().map(ToString::to_string).collect();
    let text = format!("invariant factors: {}\nD =\n{}\nU =\n{}\nV =\n{}", listed.join(" "), r.d, r.u, r.v);
    Ok(Output::new(json, text))
}

fn cmd_discform(v: &Value) -> Result<Output> {
    let l = Lattice::from_json(v)?;
    let f = l.discriminant_form()?;
    let mut json = f.to_json();
    json["group_order"] = int_to_json(&f.group_order());
    let group: Vec<String> = f.orders().iter().map(|o| format!("Z/{o}")).collect();
    let q: Vec<String> = f.q_values().iter().map(ToString::to_string).collect();
    let group = if group.is_empty() { "0".to_string() } else { group.join(" x ") };
    Ok(Output::new(json, format!("{group}\nq = [{}]", q.join(", "))))
}

fn cmd_reduce(abc: &[i64], input: &Option<PathBuf>) -> Result<Output> {
    let f = match abc {
        [a, b, c] => BinaryQuadraticForm::new(*a, *b, *c),
        [] => serde_json::from_value(read_json(input)?).map_err(|e| usage(format!("invalid form: {e}")))?,
        _ => return Err(usage("reduce takes exactly three coefficients A B C")),
    };
    let r = f.reduce()?;
    Ok(Output::new(json!(r), form_text(&r)))
}

fn cmd_complement(v: &Value) -> Result<Output> {
    let l = Lattice::from_json(v)?;
    let vec = int_vec_from_json(v.get("v").ok_or_else(|| usage("complement input needs a \"v\" vector"))?)?;
    let (c, basis) = l.orthogonal_complement_with_basis(&vec)?;
    let mut json = c.to_json();
    json["basis"] = basis.to_json();
    json["det"] = int_to_json(&c.det());
    let mut text = format!("{}", c.gram());
    if c.rank() == 2 {
        let f = BinaryQuadraticForm::from_lattice(&c)?;
        if f.is_positive_definite() {
            let r = f.reduce()?;
            json["form"] = json!(r);
            text = format!("{text}\nreduced {}", form_text(&r));
        }
    }
    Ok(Output::new(json, text))
}

fn cmd_match(v: &Value) -> Result<Output> {
    let ns = Lattice::from_json(v)?;
    if let Some(t) = v.get("t") {
        let t = Lattice::from_json(t)?;
        let check = check_transcendental(&ns, &t)?;
        let (name, text) = match &check {
            TranscendentalCheck::Match => ("match", "match".to_string()),
            TranscendentalCheck::DeterminantMismatch { ns, t } => {
                ("determinant-mismatch", format!("determinant mismatch: NS {ns}, T {t}"))
            }
            TranscendentalCheck::DiscFormMismatch => ("disc-form-mismatch", "discriminant forms differ".to_string()),
        };
        return Ok(Output::new(json!({"check": name}), text).failing_if(!check.is_match()));
    }
    let found = transcendental_candidates(&ns)?;
    let text: Vec<String> = found.iter().map(form_text).collect();
    let json = json!({"det": int_to_json(&ns.det()), "candidates": found, "unique": found.len() == 1});
    Ok(Output::new(json, text.join("\n")))
}

fn cmd_ns_build(input: &Option<PathBuf>, name: &Option<String>) -> Result<Output> {
    let (spec, _) = spec_input(input, name)?;
    let ns = build_ns_gram(&spec)?;
    let det = ns.gram.det()?;
    let rows: Vec<Value> = ns.gram.to_rows().iter().map(|r| r.iter().map(int_to_json).collect()).collect();
    let json = json!({
        "labels": ns.labels,
        "gram": rows,
        "det": int_to_json(&det),
        "rank": ns.gram.rows(),
        "shioda_tate_rank": shioda_tate_rank(&spec)?,
        "euler_sum": spec.euler_sum(),
    });
    let text = format!("basis: {}\n{}\ndet {det}", ns.labels.join(" "), ns.gram);
    Ok(Output::new(json, text))
}

fn cmd_torsion(input: &Option<PathBuf>, name: &Option<String>, section: &str) -> Result<Output> {
    let (spec, raw) = spec_input(input, name)?;
    let coeffs = match raw.get("coefficients") {
        Some(Value::Object(m)) => {
            let mut out = BTreeMap::new();
            for (k, v) in m {
                out.insert(k.clone(), rational_from_json(v)?);
            }
            Some(out)
        }
        Some(_) => return Err(usage("\"coefficients\" must map component names to rationals")),
        None if name.as_deref() == Some("Z_k") => Some(dataset::generic_torsion_coefficients()),
        None => None,
    };
    let rel = verify_torsion_relation(&spec, section, coeffs.as_ref())?;
    let cmap: serde_json::Map<String, Value> =
        rel.coefficients.iter().map(|(n, c)| (n.clone(), rational_to_json(c))).collect();
    let relation: serde_json::Map<String, Value> =
        rel.relation.iter().map(|(n, c)| (n.clone(), int_to_json(c))).collect();
    let json = json!({
        "section": rel.section,
        "order": rel.order,
        "holds": rel.holds,
        "height_zero": rel.height_zero,
        "recoverable": rel.recoverable,
        "coefficients": cmap,
        "relation": relation,
    });
    let mut terms = String::new();
    for (n, c) in rel.relation.iter().filter(|(_, c)| !c.is_zero()) {
        let sign = if c.is_negative() { "-" } else if terms.is_empty() { "" } else { "+" };
        let mag = c.abs();
        let coeff = if mag.is_one() { String::new() } else { format!("{mag}") };
        terms.push_str(&format!("{}{sign}{coeff}{n}", if terms.is_empty() { "" } else { " " }));
    }
    let text = format!(
        "{}: order {}, relation {}, height zero {}, recoverable {}\n{} = 0",
        rel.section,
        rel.order,
        if rel.holds { "holds" } else { "fails" },
        rel.height_zero,
        rel.recoverable,
        terms
    );
    let ok = rel.holds && rel.height_zero;
    Ok(Output::new(json, text).failing_if(!ok))
}

fn cmd_verify_point(input: &Option<PathBuf>, name: &Option<String>) -> Result<Output> {
    let (label, model, x, y) = match name {
        Some(n) => {
            let p = dataset::point_cases()
                .into_iter()
                .find(|p| p.name == n)
                .ok_or_else(|| usage(format!("no built-in point named {n:?}")))?;
            (p.name.to_string(), model_named(p.model)?, p.x, p.y)
        }
        None => {
            let v = read_json(input)?;
            let d = v.get("d").and_then(Value::as_i64).unwrap_or(0);
            let model = match v.get("model") {
                Some(Value::String(s)) => model_named(s)?,
                Some(m) => WeierstrassModel::from_json(m)?,
                None => return Err(usage("point input needs a \"model\"")),
            };
            let field = |key: &str| -> Result<_> {
                let f = v.get(key).ok_or_else(|| usage(format!("point input needs \"{key}\"")))?;
                Ok(ratfn_from_json(f, d)?)
            };
            ("point".to_string(), model, field("x")?, field("y")?)
        }
    };
    let on = model.verify_point(&x, &y);
    let json = json!({"point": label, "on_curve": on});
    let text = format!("{label}: {}", if on { "lies on the model" } else { "does NOT lie on the model" });
    Ok(Output::new(json, text).failing_if(!on))
}

fn cmd_period(family: &str, tau: &[i64]) -> Result<Output> {
    let fam: Family = family.parse()?;
    let [a, b, c] = tau else { return Err(usage("--tau takes three integers A B C")) };
    let tau = TauEquation::new(*a, *b, *c).map_err(CliError::Math)?;
    let spec = fam.spec();
    let pqr = algebraic_vector(&spec, &tau)?;
    let form = singular_transcendental(&spec, &tau)?;
    let json = json!({"pqr": pqr, "form": form});
    let text = format!("{tau} = 0: (p, q, r) = ({}, {}, {}), T = {}", pqr[0], pqr[1], pqr[2], form_text(&form));
    Ok(Output::new(json, text))
}

fn dataset_text() -> String {
    let mut out = String::from("name      family        tau-equation        T\n");
    for e in &PERIOD_ENTRIES {
        let tau = TauEquation { a: e.tau[0], b: e.tau[1], c: e.tau[2] };
        out.push_str(&format!("{:<9} {:<13} {:<19} {}\n", e.name, e.family.name(), tau.to_string(), e.expected));
    }
    out.push('\n');
    for e in &SURFACE_ENTRIES {
        let t = match &e.expected {
            dataset::Expected::Form(f) => f.to_string(),
            dataset::Expected::Conjectural(m) => format!("{m} (conjectural)"),
        };
        out.push_str(&format!("{:<9} {t}\n", e.name));
    }
    out
}
