use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use altcomm::algebra::{direct_sum, is_alternative, Algebra, Element};
use altcomm::commuting::{
    decompose, decompose_oracle, exhaustive_commuting_check, is_anti_commuting, is_commuting,
    random_commuting_map, random_linear_map, CommutingError, LinearMap, PairWitness,
};
use altcomm::constructions::{
    cayley_dickson, ground_field, matrix_algebra, split_idempotent, zorn, CayleyDicksonParams,
};
use altcomm::field::FieldSpec;
use altcomm::format::{
    load_algebra, load_element, load_map, to_json, AlgebraFile, DecompositionFile,
};
use altcomm::lemmas::{run_all, LemmaStatus};
use altcomm::peirce::{
    center, check_peirce_relations, hypothesis_check, nucleus, peirce_decompose,
    prime_check_exhaustive, verify_idempotent, Component, PeirceError, Side, DEFAULT_BUDGET,
};

#[derive(Parser)]
#[command(
    name = "altcomm",
    version,
    about = "Exact checks on finite-dimensional alternative algebras"
)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for `--map random` and `--map random-linear`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cap on p^dim for exhaustive finite-field scans.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET,
          value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    /// Omit the timestamp from JSON reports.
    #[arg(long, global = true)]
    deterministic: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Write a builtin algebra and its canonical idempotent.
    Gen(GenArgs),
    /// Alternativity and unit.
    Verify(AlgebraArg),
    /// Basis of the commutative center.
    Center(AlgebraArg),
    /// Basis of the nucleus.
    Nucleus(AlgebraArg),
    /// Peirce components and their multiplication rules.
    Peirce(IdempotentArgs),
    /// The annihilator hypothesis x𝔯·e_i = 0 => x = 0.
    Hypothesis(IdempotentArgs),
    /// Exhaustive primeness test over a finite field.
    Prime(AlgebraArg),
    /// Commuting and anti-commuting tests for a linear map.
    CheckMap(MapArgs),
    /// Split a commuting map as x -> z·x + Ξ(x).
    Decompose(FullArgs),
    /// Run the nine-lemma suite.
    Lemmas(FullArgs),
    /// Compare the basis test with brute force over a finite field.
    Oracle(MapArgs),
}

#[derive(Args)]
struct AlgebraArg {
    /// Algebra file.
    algebra: PathBuf,
}

#[derive(Args)]
struct IdempotentArgs {
    /// Algebra file.
    algebra: PathBuf,
    /// Basis label, comma-separated coordinates, or element file.
    #[arg(short = 'e', long = "idempotent")]
    idempotent: String,
}

#[derive(Args)]
struct MapArgs {
    /// Algebra file.
    algebra: PathBuf,
    /// Map file, or one of identity, zero, random, random-linear.
    #[arg(long)]
    map: String,
}

#[derive(Args)]
struct FullArgs {
    /// Algebra file.
    algebra: PathBuf,
    /// Basis label, comma-separated coordinates, or element file.
    #[arg(short = 'e', long = "idempotent")]
    idempotent: String,
    /// Map file, or one of identity, zero, random, random-linear.
    #[arg(long)]
    map: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Builtin {
    Matrix,
    Zorn,
    CayleyDickson,
    DirectSum,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    builtin: Builtin,
    /// q for the rationals, pN for the prime field of order N.
    #[arg(long, default_value = "q")]
    field: String,
    /// Matrix size.
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Cayley-Dickson doubling steps.
    #[arg(long, default_value_t = 3)]
    steps: usize,
    /// Comma-separated doubling parameters; all 1 when omitted.
    #[arg(long, allow_hyphen_values = true)]
    gammas: Option<String>,
    /// First direct-sum operand: a file, or field, matrix:N, zorn, cd:G1,G2,...
    #[arg(long)]
    left: Option<String>,
    /// Second direct-sum operand, same forms as --left.
    #[arg(long)]
    right: Option<String>,
    /// Output path; `-` prints the algebra to stdout.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

/// Input and usage problems; mapped to exit code 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type CliResult<T> = Result<T, InputError>;

struct Check {
    name: String,
    pass: bool,
    /// Text rendering of the witness, in the element input syntax.
    text: Option<String>,
    json: Option<Value>,
    /// Skipped because a precondition failed; counts as not passing.
    not_applicable: bool,
}

impl Check {
    fn pass(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass: true,
            text: None,
            json: None,
            not_applicable: false,
        }
    }

    fn outcome(name: impl Into<String>, witness: Option<(String, Value)>) -> Self {
        match witness {
            None => Check::pass(name),
            Some((text, json)) => Check {
                name: name.into(),
                pass: false,
                text: Some(text),
                json: Some(json),
                not_applicable: false,
            },
        }
    }

    fn not_applicable(name: impl Into<String>, reason: &str) -> Self {
        Check {
            name: name.into(),
            pass: false,
            text: Some(reason.to_string()),
            json: Some(json!({"reason": reason})),
            not_applicable: true,
        }
    }
}

struct Report {
    command: &'static str,
    algebra: Option<(String, FieldSpec)>,
    checks: Vec<Check>,
    /// Extra fields, rendered as `key: value` lines in text mode unless the
    /// text is empty.
    data: Vec<(String, Value, String)>,
}

impl Report {
    fn new(command: &'static str, a: Option<&Algebra>) -> Self {
        Report {
            command,
            algebra: a.map(|a| (a.name().to_string(), a.field())),
            checks: Vec::new(),
            data: Vec::new(),
        }
    }

    fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    fn put(&mut self, key: &str, json: Value, text: impl Into<String>) {
        self.data.push((key.to_string(), json, text.into()));
    }

    fn put_element(&mut self, key: &str, x: &Element) {
        self.put(key, json!(x.to_strings()), x.to_string());
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn render(&self, format: Format, deterministic: bool) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Json => {
                let mut obj = Map::new();
                obj.insert("command".into(), json!(self.command));
                if let Some((name, field)) = &self.algebra {
                    obj.insert("algebra".into(), json!(name));
                    obj.insert("field".into(), json!(field));
                }
                let checks: Vec<Value> = self
                    .checks
                    .iter()
                    .map(|c| {
                        let mut o = Map::new();
                        o.insert("check".into(), json!(c.name));
                        o.insert("pass".into(), json!(c.pass));
                        if c.not_applicable {
                            o.insert("status".into(), json!("n/a"));
                        }
                        if let Some(w) = &c.json {
                            o.insert("witness".into(), w.clone());
                        }
                        Value::Object(o)
                    })
                    .collect();
                obj.insert("checks".into(), Value::Array(checks));
                for (k, v, _) in &self.data {
                    obj.insert(k.clone(), v.clone());
                }
                obj.insert("pass".into(), json!(self.passed()));
                if !deterministic {
                    let now = SystemTime::now()
                        .duration_since(UNIX_EPOCH)
                        .map(|d| d.as_secs())
                        .unwrap_or(0);
                    obj.insert("generated_at".into(), json!(now));
                }
                let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("json");
                s.push('\n');
                s
            }
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        match &self.algebra {
            Some((name, field)) => {
                out.push_str(&format!("{}: {} over {}\n", self.command, name, field))
            }
            None => out.push_str(&format!("{}\n", self.command)),
        }
        for (k, _, text) in &self.data {
            if text.is_empty() {
                continue;
            }
            if text.contains('\n') {
                out.push_str(&format!("  {k}:\n"));
                for line in text.lines() {
                    out.push_str(&format!("    {line}\n"));
                }
            } else {
                out.push_str(&format!("  {k}: {text}\n"));
            }
        }
        for c in &self.checks {
            let mark = if c.pass { "✓" } else { "✗" };
            if c.not_applicable {
                let reason = c.text.as_deref().unwrap_or_default();
                out.push_str(&format!("  n-a {}  ({reason})\n", c.name));
                continue;
            }
            match &c.text {
                Some(w) => out.push_str(&format!("  {mark} {}  witness: {w}\n", c.name)),
                None => out.push_str(&format!("  {mark} {}\n", c.name)),
            }
        }
        out
    }
}

fn element_witness(x: &Element) -> (String, Value) {
    (x.to_string(), json!(x.to_strings()))
}

fn pair_witness(a: &Algebra, w: &PairWitness) -> (String, Value) {
    let (x, y) = (a.basis(w.i), a.basis(w.j));
    (
        format!("x = {x}; y = {y}; value = {}", w.value),
        json!({"x": x.to_strings(), "y": y.to_strings(), "value": w.value.to_strings()}),
    )
}

fn basis_listing(basis: &[Element]) -> (Value, String) {
    let json = json!(basis.iter().map(Element::to_strings).collect::<Vec<_>>());
    let text = if basis.is_empty() {
        "(none)".to_string()
    } else {
        basis
            .iter()
            .map(Element::to_string)
            .collect::<Vec<_>>()
            .join("\n")
    };
    (json, text)
}

fn resolve_element(a: &Algebra, text: &str) -> CliResult<Element> {
    if let Some(i) = a.label_index(text) {
        return Ok(a.basis(i));
    }
    let path = Path::new(text);
    let x = if path.is_file() {
        load_element(path, a.field())?
    } else {
        let items: Vec<&str> = text.split(',').map(str::trim).collect();
        Element::parse_strings(a.field(), &items)
            .map_err(|e| InputError(format!("cannot read element {text:?}: {e}")))?
    };
    a.check_element(&x)?;
    Ok(x)
}

fn resolve_map(a: &Algebra, spec: &str, seed: u64) -> CliResult<LinearMap> {
    let phi = match spec {
        "identity" => LinearMap::identity(a),
        "zero" => LinearMap::zero(a),
        "random" => random_commuting_map(a, &center(a), seed),
        "random-linear" => random_linear_map(a, seed),
        path => load_map(Path::new(path), a.field())?,
    };
    phi.check_against(a)?;
    Ok(phi)
}

fn parse_gammas(field: FieldSpec, text: &str) -> CliResult<Vec<altcomm::field::Scalar>> {
    text.split(',')
        .map(|s| field.parse_scalar(s.trim()).map_err(InputError::from))
        .collect()
}

/// An algebra and its canonical idempotent, when it has one.
fn builtin_operand(field: FieldSpec, spec: &str) -> CliResult<(Algebra, Option<Element>)> {
    if spec == "field" {
        let f = ground_field(field).algebra;
        return Ok((f, None));
    }
    if spec == "zorn" {
        let (z, e) = zorn(field);
        return Ok((z, Some(e)));
    }
    if let Some(n) = spec.strip_prefix("matrix:") {
        let n: usize = n
            .parse()
            .map_err(|_| InputError(format!("bad matrix size in {spec:?}")))?;
        let (m, e) = matrix_algebra(field, n)?;
        return Ok((m, Some(e)));
    }
    if let Some(g) = spec.strip_prefix("cd:") {
        let params = CayleyDicksonParams::new(parse_gammas(field, g)?)?;
        let cd = cayley_dickson(field, &params)?.algebra;
        let e = split_idempotent(&cd);
        return Ok((cd, e));
    }
    let a = load_algebra(Path::new(spec))?;
    if a.field() != field {
        return Err(InputError(format!(
            "{spec} is over {}, expected {field}",
            a.field()
        )));
    }
    Ok((a, None))
}

fn cmd_gen(args: &GenArgs) -> CliResult<Option<Report>> {
    let field = FieldSpec::from_short_name(&args.field)?;
    let tag = field.short_name().to_lowercase();
    let (algebra, idem, stem) = match args.builtin {
        Builtin::Matrix => {
            let (m, e) = matrix_algebra(field, args.n)?;
            (m, Some(e), format!("m{}{tag}", args.n))
        }
        Builtin::Zorn => {
            let (z, e) = zorn(field);
            (z, Some(e), format!("zorn{tag}"))
        }
        Builtin::CayleyDickson => {
            let gammas = match &args.gammas {
                Some(g) => parse_gammas(field, g)?,
                None => vec![field.one(); args.steps],
            };
            if gammas.len() != args.steps {
                return Err(InputError(format!(
                    "--steps {} but {} gammas given",
                    args.steps,
                    gammas.len()
                )));
            }
            let cd = cayley_dickson(field, &CayleyDicksonParams::new(gammas)?)?.algebra;
            let e = split_idempotent(&cd);
            (cd, e, format!("cd{}{tag}", args.steps))
        }
        Builtin::DirectSum => {
            let (Some(l), Some(r)) = (&args.left, &args.right) else {
                return Err(InputError("direct-sum needs --left and --right".into()));
            };
            let (la, le) = builtin_operand(field, l)?;
            let (ra, _) = builtin_operand(field, r)?;
            let sum = direct_sum(&la, &ra)?.with_comment(format!("direct sum of {l} and {r}"));
            // a nontrivial idempotent: the left unit, or the left canonical idempotent
            let left_part = la.unit().cloned().or(le);
            let e = left_part.map(|x| {
                let mut coords = x.into_coords();
                coords.resize(sum.dim(), field.zero());
                Element::new(coords)
            });
            (sum, e, format!("sum{tag}"))
        }
    };
    let text = to_json(&AlgebraFile::from_algebra(&algebra)) + "\n";
    let out = args
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{stem}.json")));
    let mut report = Report::new("gen", Some(&algebra));
    if out.as_os_str() == "-" {
        print!("{text}");
        return Ok(None);
    }
    std::fs::write(&out, &text).map_err(|e| InputError(format!("{}: {e}", out.display())))?;
    report.put("dim", json!(algebra.dim()), algebra.dim().to_string());
    report.put(
        "algebra_file",
        json!(out.display().to_string()),
        out.display().to_string(),
    );
    if let Some(e) = idem {
        let e_path = out.with_extension("e1.json");
        std::fs::write(&e_path, to_json(&e.to_strings()) + "\n")
            .map_err(|err| InputError(format!("{}: {err}", e_path.display())))?;
        report.put(
            "idempotent_file",
            json!(e_path.display().to_string()),
            e_path.display().to_string(),
        );
        report.put_element("idempotent", &e);
    }
    Ok(Some(report))
}

fn cmd_verify(a: &Algebra) -> Report {
    let mut r = Report::new("verify", Some(a));
    r.put("dim", json!(a.dim()), a.dim().to_string());
    let alt = is_alternative(a);
    r.check(Check::outcome(
        "alternative",
        alt.witness.map(|w| {
            let (i, j, k) = w.indices;
            let l = a.labels();
            (
                format!(
                    "{} fails at (x, y, w) = ({}, {}, {}); value = {}",
                    w.law, l[i], l[j], l[k], w.value
                ),
                json!({
                    "law": w.law.to_string(),
                    "x": a.basis(i).to_strings(),
                    "y": a.basis(j).to_strings(),
                    "w": a.basis(k).to_strings(),
                    "value": w.value.to_strings(),
                }),
            )
        }),
    ));
    match a.unit() {
        Some(u) => {
            r.put_element("unit", u);
            r.check(Check::pass("unit"));
        }
        None => r.check(Check::outcome(
            "unit",
            Some(("no solution to u·b = b·u = b".into(), Value::Null)),
        )),
    }
    r.put(
        "associative",
        json!(a.is_associative()),
        a.is_associative().to_string(),
    );
    if let Some(((i, j, k), v)) = a.associator_witness() {
        let l = a.labels();
        r.put(
            "associator_witness",
            json!({"x": a.basis(i).to_strings(), "y": a.basis(j).to_strings(),
                   "w": a.basis(k).to_strings(), "value": v.to_strings()}),
            format!("({}, {}, {}) = {v}", l[i], l[j], l[k]),
        );
    }
    r.put(
        "commutative",
        json!(a.is_commutative()),
        a.is_commutative().to_string(),
    );
    r
}

fn cmd_center(a: &Algebra) -> Report {
    let mut r = Report::new("center", Some(a));
    let c = center(a);
    let (json, text) = basis_listing(c.subspace().basis());
    r.put("dim", json!(c.dim()), c.dim().to_string());
    r.put("basis", json, text);
    r
}

fn cmd_nucleus(a: &Algebra) -> Report {
    let mut r = Report::new("nucleus", Some(a));
    let nu = nucleus(a);
    let (json, text) = basis_listing(nu.subspace().basis());
    r.put(
        "dim",
        json!(nu.subspace().dim()),
        nu.subspace().dim().to_string(),
    );
    r.put("basis", json, text);
    let outside = center(a).subspace().first_outside(nu.subspace());
    r.check(Check::outcome(
        "center ⊆ nucleus",
        outside.as_ref().map(element_witness),
    ));
    r
}

/// Adds the idempotent check; returns false when it failed.
fn idempotent_check(r: &mut Report, a: &Algebra, e: &Element) -> CliResult<bool> {
    let ok = verify_idempotent(a, e)?;
    let square = a.multiply(e, e);
    r.check(Check::outcome(
        "nontrivial idempotent",
        (!ok).then(|| {
            (
                format!("e = {e}; e·e = {square}"),
                json!({"e": e.to_strings(), "square": square.to_strings()}),
            )
        }),
    ));
    Ok(ok)
}

fn cmd_peirce(a: &Algebra, e: &Element) -> CliResult<Report> {
    let mut r = Report::new("peirce", Some(a));
    if !idempotent_check(&mut r, a, e)? {
        return Ok(r);
    }
    let pd = match peirce_decompose(a, e) {
        Ok(pd) => pd,
        Err(PeirceError::MixedIdentity { i, j, label }) => {
            let b = a.basis(a.label_index(&label).expect("own label"));
            r.check(Check::outcome(
                format!("e{i}x·e{j} = e{i}·xe{j}"),
                Some(element_witness(&b)),
            ));
            return Ok(r);
        }
        Err(other) => return Err(other.into()),
    };
    let dims = pd.dims();
    r.put(
        "dims",
        json!(dims),
        format!("({}, {}, {}, {})", dims[0], dims[1], dims[2], dims[3]),
    );
    for c in Component::ALL {
        let (json, text) = basis_listing(pd.component(c).basis());
        r.put(&c.to_string(), json, text);
    }
    let sum = Component::ALL
        .iter()
        .map(|c| pd.projector(*c).clone())
        .reduce(|x, y| x.add(&y))
        .expect("four projectors");
    let complete = sum == altcomm::linalg::Matrix::identity(a.field(), a.dim());
    r.check(Check::outcome(
        "P11 + P12 + P21 + P22 = I",
        (!complete).then(|| {
            (
                "projector sum differs from the identity".into(),
                Value::Null,
            )
        }),
    ));
    for rel in check_peirce_relations(&pd) {
        let name = format!("({}) {}", rel.relation.numeral(), rel.relation.statement());
        r.check(Check::outcome(
            name,
            rel.witness.map(|w| {
                (
                    format!(
                        "x = {} in {}; y = {} in {}; value = {}",
                        w.left.1, w.left.0, w.right.1, w.right.0, w.value
                    ),
                    json!({
                        "x": w.left.1.to_strings(), "x_component": w.left.0.to_string(),
                        "y": w.right.1.to_strings(), "y_component": w.right.0.to_string(),
                        "value": w.value.to_strings(),
                    }),
                )
            }),
        ));
    }
    Ok(r)
}

fn cmd_hypothesis(a: &Algebra, e: &Element) -> CliResult<Report> {
    let mut r = Report::new("hypothesis", Some(a));
    if !idempotent_check(&mut r, a, e)? {
        return Ok(r);
    }
    let h = hypothesis_check(a, e)?;
    for side in Side::BOTH {
        let i = side.number();
        r.check(Check::outcome(
            format!("x𝔯·e{i} = 0 => x = 0"),
            h.witness(side).map(element_witness),
        ));
    }
    Ok(r)
}

fn cmd_prime(a: &Algebra, budget: u64) -> CliResult<Report> {
    let mut r = Report::new("prime", Some(a));
    let p = prime_check_exhaustive(a, budget)?;
    r.put("scanned", json!(p.scanned), p.scanned.to_string());
    r.check(Check::outcome(
        "a𝔯·b = 0 => a = 0 or b = 0",
        p.witness.map(|(x, y)| {
            (
                format!("a = {x}; b = {y}"),
                json!({"a": x.to_strings(), "b": y.to_strings()}),
            )
        }),
    ));
    Ok(r)
}

fn cmd_check_map(a: &Algebra, phi: &LinearMap) -> CliResult<Report> {
    let mut r = Report::new("check-map", Some(a));
    let c = is_commuting(a, phi)?;
    r.check(Check::outcome(
        "commuting",
        c.witness.map(|w| pair_witness(a, &w)),
    ));
    let ac = is_anti_commuting(a, phi)?;
    r.put("anti_commuting", json!(ac.holds), ac.holds.to_string());
    if let Some(w) = ac.witness {
        let (text, json) = pair_witness(a, &w);
        r.put("anti_commuting_witness", json, text);
    }
    Ok(r)
}

fn cmd_decompose(a: &Algebra, e: &Element, phi: &LinearMap) -> CliResult<Report> {
    let mut r = Report::new("decompose", Some(a));
    if !idempotent_check(&mut r, a, e)? {
        return Ok(r);
    }
    let pd = peirce_decompose(a, e)?;
    let d = match decompose(&pd, phi) {
        Ok(d) => d,
        Err(CommutingError::NotCommuting { i, j, value }) => {
            let w = PairWitness { i, j, value };
            r.check(Check::outcome("commuting", Some(pair_witness(a, &w))));
            return Ok(r);
        }
        Err(CommutingError::Peirce(PeirceError::HypothesisFailed { side, witness })) => {
            r.check(Check::outcome(
                format!("x𝔯·e{side} = 0 => x = 0"),
                Some(element_witness(&witness)),
            ));
            return Ok(r);
        }
        Err(CommutingError::LiftFailed { side, element }) => {
            r.check(Check::outcome(
                format!("central lift along e{side}"),
                Some(element_witness(&element)),
            ));
            return Ok(r);
        }
        Err(other) => return Err(other.into()),
    };
    r.check(Check::pass("commuting"));
    let file = DecompositionFile::from_decomposition(&d);
    r.put_element("z", &d.z);
    for (key, v) in [("z1", &d.z1), ("z2", &d.z2)] {
        match v {
            Some(x) => r.put_element(key, x),
            None => r.put(key, Value::Null, "-"),
        }
    }
    r.put(
        "xi",
        json!(file.xi),
        d.xi.matrix().to_string().trim_end().to_string(),
    );
    r.put("verified", json!(d.verified), d.verified.to_string());
    r.check(Check::outcome(
        "verified",
        d.failure.as_ref().map(|f| {
            let b = a.basis(f.basis_index);
            (
                format!("{} ({b})", f.reason),
                json!({"reason": f.reason, "basis": b.to_strings()}),
            )
        }),
    ));
    let oracle = decompose_oracle(a, pd.center(), phi)?;
    let agrees = oracle
        .as_ref()
        .is_some_and(|o| o.verified && o.images(a) == d.images(a));
    r.check(Check::outcome(
        "oracle agrees",
        (!agrees).then(|| {
            (
                "oracle decomposition missing or different".into(),
                Value::Null,
            )
        }),
    ));
    Ok(r)
}

fn cmd_lemmas(a: &Algebra, e: &Element, phi: &LinearMap) -> CliResult<Report> {
    let mut r = Report::new("lemmas", Some(a));
    if !idempotent_check(&mut r, a, e)? {
        return Ok(r);
    }
    let pd = peirce_decompose(a, e)?;
    let reports = run_all(&pd, phi);
    let mut rows = Vec::new();
    for rep in &reports {
        let mut row = json!({
            "lemma": rep.lemma.to_string(),
            "instances": rep.instances,
            "notes": rep.notes,
        });
        let name = format!("{} {}", rep.lemma, rep.lemma.statement());
        let check = match &rep.status {
            LemmaStatus::Pass => {
                row["status"] = json!("pass");
                Check::pass(name)
            }
            LemmaStatus::Fail(w) => {
                row["status"] = json!("fail");
                let text = w
                    .elements
                    .iter()
                    .map(|(n, x)| format!("{n} = {x}"))
                    .collect::<Vec<_>>()
                    .join("; ");
                let elements: Vec<Value> = w
                    .elements
                    .iter()
                    .map(|(n, x)| json!({"name": n, "value": x.to_strings()}))
                    .collect();
                Check::outcome(
                    name,
                    Some((
                        format!("{}: {text}", w.equation),
                        json!({"equation": w.equation, "elements": elements}),
                    )),
                )
            }
            LemmaStatus::NotApplicable(why) => {
                row["status"] = json!("n/a");
                row["reason"] = json!(why);
                Check::not_applicable(name, why)
            }
        };
        rows.push(row);
        r.check(check);
    }
    let passed = reports.iter().filter(|x| x.passed()).count();
    r.put("lemmas", Value::Array(rows), "");
    r.put(
        "passed",
        json!(passed),
        format!("{passed}/{}", reports.len()),
    );
    Ok(r)
}

fn cmd_oracle(a: &Algebra, phi: &LinearMap, budget: u64) -> CliResult<Report> {
    if !a.field().is_finite() {
        return Err(InputError(
            "oracle needs an algebra over a prime field".into(),
        ));
    }
    let mut r = Report::new("oracle", Some(a));
    let ex = exhaustive_commuting_check(a, phi, budget)?;
    let pol = is_commuting(a, phi)?;
    r.put("scanned", json!(ex.scanned), ex.scanned.to_string());
    r.put("polarized", json!(pol.holds), pol.holds.to_string());
    r.check(Check::outcome(
        "[φ(x), x] = 0 for every x",
        ex.witness.as_ref().map(element_witness),
    ));
    r.check(Check::outcome(
        "basis test agrees with enumeration",
        (ex.commuting != pol.holds).then(|| {
            (
                format!("enumeration {} / basis test {}", ex.commuting, pol.holds),
                json!({"exhaustive": ex.commuting, "polarized": pol.holds}),
            )
        }),
    ));
    match decompose_oracle(a, &center(a), phi)? {
        Some(d) => {
            r.put(
                "decomposition",
                json!(DecompositionFile::from_decomposition(&d)),
                format!("z = {}", d.z),
            );
        }
        None => r.put("decomposition", Value::Null, "none"),
    }
    Ok(r)
}

fn run(cli: &Cli) -> CliResult<Option<Report>> {
    if let Command::Gen(args) = &cli.command {
        return cmd_gen(args);
    }
    let algebra = |p: &Path| load_algebra(p).map_err(InputError::from);
    let report = match &cli.command {
        Command::Gen(_) => unreachable!("handled above"),
        Command::Verify(x) => Ok(cmd_verify(&algebra(&x.algebra)?)),
        Command::Center(x) => Ok(cmd_center(&algebra(&x.algebra)?)),
        Command::Nucleus(x) => Ok(cmd_nucleus(&algebra(&x.algebra)?)),
        Command::Peirce(x) => {
            let a = algebra(&x.algebra)?;
            cmd_peirce(&a, &resolve_element(&a, &x.idempotent)?)
        }
        Command::Hypothesis(x) => {
            let a = algebra(&x.algebra)?;
            cmd_hypothesis(&a, &resolve_element(&a, &x.idempotent)?)
        }
        Command::Prime(x) => cmd_prime(&algebra(&x.algebra)?, cli.budget),
        Command::CheckMap(x) => {
            let a = algebra(&x.algebra)?;
            cmd_check_map(&a, &resolve_map(&a, &x.map, cli.seed)?)
        }
        Command::Decompose(x) => {
            let a = algebra(&x.algebra)?;
            let e = resolve_element(&a, &x.idempotent)?;
            cmd_decompose(&a, &e, &resolve_map(&a, &x.map, cli.seed)?)
        }
        Command::Lemmas(x) => {
            let a = algebra(&x.algebra)?;
            let e = resolve_element(&a, &x.idempotent)?;
            cmd_lemmas(&a, &e, &resolve_map(&a, &x.map, cli.seed)?)
        }
        Command::Oracle(x) => {
            let a = algebra(&x.algebra)?;
            cmd_oracle(&a, &resolve_map(&a, &x.map, cli.seed)?, cli.budget)
        }
    }?;
    Ok(Some(report))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(report)) => {
            print!("{}", report.render(cli.format, cli.deterministic));
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
