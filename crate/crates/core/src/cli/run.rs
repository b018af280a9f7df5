//! Command dispatch and report assembly.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use super::document::{DefinitionDocument, Kind};
use crate::absolute::{
    absolute_envelope, convolution_absolute, f_in_w, filtration_completion, monad_laws, res_abs_round_trip,
    restriction, twisting_check, AlgebraTower,
};
use crate::assoc::{dualize_algebra, dualize_coalgebra, DgAssocAlgebra, DgCoassocCoalgebra};
use crate::barcobar::{bar, cobar, complete_bar_conil, complete_cobar, universal_twisting};
use crate::contra::{
    cocontra_duality_check, comodule_to_contramodule, contra_filtration_completion, free_contramodule,
    validate_contramodule, Chirality,
};
use crate::duality::{dual_conilpotent_to_tower, duality_square_check, topological_dual, Input, SquareMode};
use crate::error::{Error, Result};
use crate::exactlin::{ChainComplex, GradedMap, GradedSpace, Rational, Vector, WordSpace};
use crate::lie::{envelope_invariants, universal_envelope};

pub const DEFAULT_MAX_WEIGHT: usize = 6;

/// Seeds used by the monad-law samples in `abs` and `convolution`.
const MONAD_SEEDS: std::ops::Range<u64> = 0..20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Homology,
    Bar,
    Cobar,
    CompleteCobar,
    CompleteBar,
    Dual,
    TopologicalDual,
    Envelope,
    Abs,
    Res,
    Convolution,
    TwistingCheck,
    SquareCheck(SquareMode),
    ContraCheck,
    Invariants,
}

impl Command {
    pub const NAMES: [&'static str; 16] = [
        "validate",
        "homology",
        "bar",
        "cobar",
        "complete-cobar",
        "complete-bar",
        "dual",
        "topological-dual",
        "envelope",
        "abs",
        "res",
        "convolution",
        "twisting-check",
        "square-check",
        "contra-check",
        "invariants",
    ];

    pub fn parse(name: &str, mode: Option<&str>) -> Result<Command> {
        let c = match name {
            "validate" => Command::Validate,
            "homology" => Command::Homology,
            "bar" => Command::Bar,
            "cobar" => Command::Cobar,
            "complete-cobar" => Command::CompleteCobar,
            "complete-bar" => Command::CompleteBar,
            "dual" => Command::Dual,
            "topological-dual" => Command::TopologicalDual,
            "envelope" => Command::Envelope,
            "abs" => Command::Abs,
            "res" => Command::Res,
            "convolution" => Command::Convolution,
            "twisting-check" => Command::TwistingCheck,
            "square-check" => Command::SquareCheck(match mode {
                Some("mate") => SquareMode::Mate,
                Some("fd") => SquareMode::Fd,
                Some("conil-core") => SquareMode::ConilCore,
                other => {
                    return Err(Error::Usage(format!(
                        "square-check needs a mode in {{mate, fd, conil-core}}, got {other:?}"
                    )))
                }
            }),
            "contra-check" => Command::ContraCheck,
            "invariants" => Command::Invariants,
            _ => return Err(Error::Usage(format!("unknown command `{name}`"))),
        };
        if mode.is_some() && !matches!(c, Command::SquareCheck(_)) {
            return Err(Error::Usage(format!("`{name}` takes no mode")));
        }
        Ok(c)
    }

    pub fn name(self) -> String {
        let base = match self {
            Command::Validate => "validate",
            Command::Homology => "homology",
            Command::Bar => "bar",
            Command::Cobar => "cobar",
            Command::CompleteCobar => "complete-cobar",
            Command::CompleteBar => "complete-bar",
            Command::Dual => "dual",
            Command::TopologicalDual => "topological-dual",
            Command::Envelope => "envelope",
            Command::Abs => "abs",
            Command::Res => "res",
            Command::Convolution => "convolution",
            Command::TwistingCheck => "twisting-check",
            Command::SquareCheck(m) => return format!("square-check {}", m.name()),
            Command::ContraCheck => "contra-check",
            Command::Invariants => "invariants",
        };
        base.to_string()
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub max_weight: usize,
    /// A degree −1 map for `twisting-check`, as `{"c": [["b", "p/q"], …], …}`.
    pub nu: Option<String>,
}

/// The report every command emits. Object keys are sorted and lists follow
/// input basis order, so the JSON is byte-identical across runs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<String>,
    pub max_weight: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub result: Value,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// One `path: value` line per leaf.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let v = serde_json::to_value(self).expect("reports serialize");
        flatten("", &v, &mut out);
        out
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&p, x, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        other => {
            out.push_str(prefix);
            out.push_str(": ");
            out.push_str(&other.to_string());
            out.push('\n');
        }
    }
}

/// Run a command. `Err` means a usage problem (exit code 2); mathematical
/// failures come back as a report with `passed = false`.
pub fn run(command: Command, docs: &[DefinitionDocument], opts: &Options) -> Result<Report> {
    let n = opts.max_weight;
    let inputs = docs.iter().map(|d| d.name.clone()).collect();
    let outcome = dispatch(command, docs, opts, n);
    let (passed, error, result) = match outcome {
        Ok((p, v)) => (p, None, v),
        Err(e) if e.is_usage() => return Err(e),
        Err(e) => (false, Some(e.to_string()), Value::Null),
    };
    Ok(Report {
        command: command.name(),
        inputs,
        max_weight: n,
        passed,
        error,
        result,
    })
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn arity(docs: &[DefinitionDocument], k: usize, what: &str) -> Result<()> {
    if docs.len() != k {
        return Err(Error::Usage(format!("expected {k} input file(s): {what}")));
    }
    Ok(())
}

fn want(doc: &DefinitionDocument, kinds: &[Kind], command: &str) -> Result<()> {
    if !kinds.contains(&doc.kind) {
        return Err(Error::Usage(format!(
            "`{command}` does not accept a {:?} (`{}`)",
            doc.kind, doc.name
        )));
    }
    Ok(())
}

fn space_dims(sp: &GradedSpace) -> BTreeMap<i64, usize> {
    sp.dims_by_degree()
}

/// Dimensions by word length and degree.
fn word_dims(ws: &WordSpace, sp: &GradedSpace) -> BTreeMap<usize, BTreeMap<i64, usize>> {
    let mut t: BTreeMap<usize, BTreeMap<i64, usize>> = BTreeMap::new();
    for i in 0..ws.dim() {
        *t.entry(ws.weight(i)).or_default().entry(sp.degree(i)).or_default() += 1;
    }
    t
}

fn homology_rows(c: &ChainComplex) -> Value {
    let rows: Vec<Value> = c
        .homology()
        .into_values()
        .map(|h| json!({"degree": h.degree, "dim": h.dim, "representatives": h.representative_labels}))
        .collect();
    Value::Array(rows)
}

fn tower_of(doc: &DefinitionDocument, n: usize) -> Result<AlgebraTower> {
    match doc.kind {
        Kind::Tower => doc.tower(n),
        Kind::DgAlgebra => absolute_envelope(&doc.algebra()?, n),
        _ => Err(Error::Usage(format!("`{}` does not describe a tower", doc.name))),
    }
}

/// Full tower validation is cubic in the top layer; above this size it is skipped.
const DEFECT_CHECK_LIMIT: usize = 120;

/// Tower defects, or `None` when the tower is too large to check.
fn tower_defects(t: &AlgebraTower) -> Option<Vec<crate::absolute::TowerDefect>> {
    (t.top().dim() <= DEFECT_CHECK_LIMIT).then(|| t.defects())
}

fn tower_ok(t: &AlgebraTower) -> bool {
    tower_defects(t).is_none_or(|d| d.is_empty())
}

fn tower_summary(t: &AlgebraTower) -> Value {
    let defects = match tower_defects(t) {
        Some(d) => to_value(&d),
        None => json!(format!("skipped: top layer dimension {} exceeds {DEFECT_CHECK_LIMIT}", t.top().dim())),
    };
    json!({
        "name": t.name(),
        "layer_dims": t.layer_dims(),
        "top_dims_by_degree": space_dims(t.top().space()),
        "defects": defects,
    })
}

fn dispatch(command: Command, docs: &[DefinitionDocument], opts: &Options, n: usize) -> Result<(bool, Value)> {
    let name = command.name();
    match command {
        Command::Validate => {
            arity(docs, 1, "the object to validate")?;
            validate(&docs[0], n)
        }
        Command::Homology => {
            arity(docs, 1, "the complex")?;
            let d = &docs[0];
            let complex = match d.kind {
                Kind::DgAlgebra => d.algebra()?.complex().clone(),
                Kind::DgCoalgebra => d.coalgebra()?.complex().clone(),
                Kind::DgLie => d.lie()?.complex().clone(),
                Kind::Comodule => ChainComplex::new(d.comodule()?.differential)?,
                Kind::Contramodule => d.contramodule()?.module().clone(),
                Kind::Tower => d.tower(n)?.top().complex().clone(),
            };
            let complex = ChainComplex::new(complex.differential().clone())?;
            Ok((true, json!({"object": d.name, "dims_by_degree": space_dims(complex.space()), "homology": homology_rows(&complex)})))
        }
        Command::Bar => {
            arity(docs, 1, "an algebra")?;
            want(&docs[0], &[Kind::DgAlgebra], &name)?;
            let b = bar(&docs[0].algebra()?, n)?;
            let sp = b.coalgebra.space();
            Ok((true, json!({
                "construction": format!("Bar({})", docs[0].name),
                "dims": word_dims(&b.words, sp),
                "d_squared_zero": true,
                "betti": b.coalgebra.complex().betti(),
            })))
        }
        Command::Cobar => {
            arity(docs, 1, "a conilpotent coalgebra")?;
            want(&docs[0], &[Kind::DgCoalgebra], &name)?;
            let c = cobar(&docs[0].coalgebra()?, n)?;
            let sp = c.algebra.space();
            Ok((true, json!({
                "construction": format!("Ω({})", docs[0].name),
                "dims": word_dims(&c.words, sp),
                "d_squared_zero": true,
                "betti": c.algebra.complex().betti(),
            })))
        }
        Command::CompleteCobar => {
            arity(docs, 1, "a coalgebra")?;
            want(&docs[0], &[Kind::DgCoalgebra], &name)?;
            let t = complete_cobar(&docs[0].coalgebra()?, n)?;
            Ok((tower_ok(&t), json!({"tower": tower_summary(&t)})))
        }
        Command::CompleteBar => {
            arity(docs, 1, "a tower or an algebra")?;
            want(&docs[0], &[Kind::Tower, Kind::DgAlgebra], &name)?;
            let t = tower_of(&docs[0], n)?;
            let b = complete_bar_conil(&t, n)?;
            Ok((true, json!({
                "construction": format!("B̂({})", t.name()),
                "dims": word_dims(&b.words, b.coalgebra.space()),
                "d_squared_zero": true,
                "betti": b.coalgebra.complex().betti(),
            })))
        }
        Command::Dual => {
            arity(docs, 1, "an algebra or coalgebra")?;
            let d = &docs[0];
            match d.kind {
                Kind::DgCoalgebra => {
                    let c = d.coalgebra()?;
                    let a = dualize_coalgebra(&c)?;
                    let report = a.validate();
                    let tower = match dual_conilpotent_to_tower(&c, n) {
                        Ok(t) => tower_summary(&t),
                        Err(Error::NotConilpotent { witness, .. }) => json!({"not_conilpotent": witness}),
                        Err(e) => return Err(e),
                    };
                    Ok((report.passed(), json!({
                        "dual": a.name(),
                        "dims_by_degree": space_dims(a.space()),
                        "validation": report,
                        "tower": tower,
                    })))
                }
                Kind::DgAlgebra => {
                    let c = dualize_algebra(&d.algebra()?)?;
                    let report = c.validate();
                    Ok((report.passed(), json!({
                        "dual": c.name(),
                        "dims_by_degree": space_dims(c.space()),
                        "validation": report,
                    })))
                }
                _ => Err(Error::Usage(format!("`dual` does not accept a {:?}", d.kind))),
            }
        }
        Command::TopologicalDual => {
            arity(docs, 1, "a tower, algebra or coalgebra")?;
            let d = &docs[0];
            let t = match d.kind {
                Kind::DgCoalgebra => complete_cobar(&d.coalgebra()?, n)?,
                _ => tower_of(d, n)?,
            };
            let c = topological_dual(&t)?;
            let report = c.validate();
            Ok((report.passed(), json!({
                "tower": tower_summary(&t),
                "dual": c.name(),
                "dims_by_degree": space_dims(c.space()),
                "validation": report,
            })))
        }
        Command::Envelope => {
            arity(docs, 1, "a Lie algebra")?;
            want(&docs[0], &[Kind::DgLie], &name)?;
            let env = universal_envelope(&docs[0].lie()?, n)?;
            Ok((tower_ok(&env.tower), json!({
                "layer_dims": env.tower.layer_dims(),
                "pbw": {
                    "generators": env.pbw.generators,
                    "weights": env.pbw.weights,
                    "infinitely_deep": env.pbw.infinitely_deep,
                    "monomials": env.pbw.monomials.len(),
                    "steps": env.pbw.steps,
                },
                "tower": tower_summary(&env.tower),
            })))
        }
        Command::Abs => {
            arity(docs, 1, "an algebra or a tower")?;
            want(&docs[0], &[Kind::DgAlgebra, Kind::Tower], &name)?;
            let d = &docs[0];
            let (t, extra) = if d.kind == Kind::DgAlgebra {
                let c = filtration_completion(&d.algebra()?, n)?;
                let filt: Vec<usize> = (0..=n).map(|w| c.filtration.dim(w.max(c.filtration.first_index()).min(c.filtration.last_index()))).collect();
                (c.tower, json!({"filtration_dims": filt, "complete": c.complete}))
            } else {
                (d.tower(n)?, json!({}))
            };
            let laws = monad_laws(&t, MONAD_SEEDS)?;
            let ok = laws.passed() && tower_ok(&t);
            Ok((ok, json!({"tower": tower_summary(&t), "monad_laws": laws, "completion": extra})))
        }
        Command::Res => {
            arity(docs, 1, "an algebra or a tower")?;
            want(&docs[0], &[Kind::DgAlgebra, Kind::Tower], &name)?;
            let d = &docs[0];
            let t = tower_of(d, n)?;
            let r = restriction(&t);
            let inclusions = f_in_w(&t);
            let mut ok = inclusions.iter().all(|c| c.holds);
            let round_trip = if d.kind == Kind::DgAlgebra {
                let rt = res_abs_round_trip(&d.algebra()?, n)?;
                ok &= rt.passed();
                to_value(&rt)
            } else {
                Value::Null
            };
            Ok((ok, json!({
                "restriction": r.name(),
                "dims_by_degree": space_dims(r.space()),
                "f_in_w": inclusions,
                "round_trip": round_trip,
            })))
        }
        Command::Convolution => {
            arity(docs, 2, "a conilpotent coalgebra and an algebra")?;
            want(&docs[0], &[Kind::DgCoalgebra], &name)?;
            want(&docs[1], &[Kind::DgAlgebra], &name)?;
            let conv = convolution_absolute(&docs[0].coalgebra()?, &docs[1].algebra()?, n)?;
            let laws = monad_laws(&conv.tower, MONAD_SEEDS)?;
            let ok = laws.passed() && tower_ok(&conv.tower) && conv.hom.validate().passed();
            Ok((ok, json!({
                "hom": conv.hom.name(),
                "hom_dims_by_degree": space_dims(conv.hom.space()),
                "conilpotency": conv.conilpotency,
                "tower": tower_summary(&conv.tower),
                "monad_laws": laws,
            })))
        }
        Command::TwistingCheck => twisting(docs, opts, n),
        Command::SquareCheck(mode) => {
            arity(docs, 1, "the square's input")?;
            let d = &docs[0];
            let input = match (mode, d.kind) {
                (SquareMode::Fd, Kind::DgAlgebra) => Input::Algebra(d.algebra()?),
                (SquareMode::Mate | SquareMode::ConilCore, Kind::DgCoalgebra) => Input::Coalgebra(d.coalgebra()?),
                _ => {
                    return Err(Error::Usage(format!(
                        "square-check {} does not accept a {:?}",
                        mode.name(),
                        d.kind
                    )))
                }
            };
            let r = duality_square_check(mode, &input, n)?;
            Ok((r.passed(), to_value(&r)))
        }
        Command::ContraCheck => {
            arity(docs, 1, "a coalgebra, comodule or contramodule")?;
            contra_check(&docs[0], n)
        }
        Command::Invariants => {
            arity(docs, 2, "two Lie algebras")?;
            want(&docs[0], &[Kind::DgLie], &name)?;
            want(&docs[1], &[Kind::DgLie], &name)?;
            let r = envelope_invariants(&docs[0].lie()?, &docs[1].lie()?, n)?;
            Ok((true, to_value(&r)))
        }
    }
}

fn validate(d: &DefinitionDocument, n: usize) -> Result<(bool, Value)> {
    Ok(match d.kind {
        Kind::DgAlgebra => {
            let r = d.algebra()?.validate();
            (r.passed(), to_value(&r))
        }
        Kind::DgCoalgebra => {
            let r = d.coalgebra()?.validate();
            (r.passed(), to_value(&r))
        }
        Kind::DgLie => {
            let r = d.lie()?.validate();
            (r.passed(), to_value(&r))
        }
        Kind::Comodule => {
            let v = d.comodule()?;
            let mut checks = v.validate();
            checks.extend(v.coalgebra.validate().checks);
            (checks.iter().all(|c| c.passed), json!({"object": d.name, "kind": "comodule", "checks": checks}))
        }
        Kind::Contramodule => {
            let r = validate_contramodule(&d.contramodule()?);
            (r.passed(), to_value(&r))
        }
        Kind::Tower => {
            let t = d.tower(n)?;
            (tower_ok(&t), tower_summary(&t))
        }
    })
}

fn ground(labels: &[&str]) -> ChainComplex {
    let pairs: Vec<(&str, i64)> = labels.iter().map(|l| (*l, 0)).collect();
    ChainComplex::zero(Arc::new(GradedSpace::from_pairs(&pairs).expect("distinct labels")))
}

fn contra_check(d: &DefinitionDocument, n: usize) -> Result<(bool, Value)> {
    match d.kind {
        Kind::DgCoalgebra => {
            let c = d.coalgebra()?;
            let k = ground(&["1"]);
            let mut ok = true;
            let mut free = Vec::new();
            for ch in Chirality::BOTH {
                let x = free_contramodule(&c, &k, ch)?;
                let r = validate_contramodule(&x);
                ok &= r.passed();
                free.push(r);
            }
            let left = free_contramodule(&c, &k, Chirality::Left)?;
            let right = free_contramodule(&c, &k, Chirality::Right)?;
            let witness = (0..left.action().len())
                .find(|&i| left.action()[i] != right.action()[i])
                .map(|i| left.hom().label(i).to_string());
            let mut cocontra = Vec::new();
            for m in [ground(&["1"]), ground(&["u", "v"])] {
                let r = cocontra_duality_check(&c, &m)?;
                ok &= r.passed();
                cocontra.push(r);
            }
            Ok((ok, json!({
                "free": free,
                "chiralities_coincide": witness.is_none(),
                "chirality_witness": witness,
                "cocontra": cocontra,
            })))
        }
        Kind::Contramodule => {
            let x = d.contramodule()?;
            let r = validate_contramodule(&x);
            let filtration = match contra_filtration_completion(&x, n) {
                Ok(f) => to_value(&f),
                Err(Error::NotConilpotent { witness, .. }) => json!({"not_conilpotent": witness}),
                Err(e) => return Err(e),
            };
            Ok((r.passed(), json!({"validation": r, "filtration": filtration})))
        }
        Kind::Comodule => {
            let v = d.comodule()?;
            let checks = v.validate();
            let x = comodule_to_contramodule(&v, &ground(&["1"]))?;
            let r = validate_contramodule(&x);
            let ok = checks.iter().all(|c| c.passed) && r.passed();
            Ok((ok, json!({"comodule": checks, "induced": r})))
        }
        _ => Err(Error::Usage(format!("`contra-check` does not accept a {:?}", d.kind))),
    }
}

/// `ν` from `{"c": [["b", "p/q"], …]}`; unlisted basis elements map to zero.
pub fn parse_nu(text: &str, d: &DgCoassocCoalgebra, b: &DgAssocAlgebra) -> Result<GradedMap> {
    let raw: BTreeMap<String, Vec<(String, Rational)>> = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let mut cols = vec![Vector::new(); d.dim()];
    for (c, terms) in raw {
        let i = d.space().require(&c)?;
        for (l, x) in terms {
            cols[i].add_term(b.space().require(&l)?, x);
        }
    }
    GradedMap::new(d.space().clone(), b.space().clone(), -1, cols)
}

fn twisting(docs: &[DefinitionDocument], opts: &Options, n: usize) -> Result<(bool, Value)> {
    match docs {
        [a] if a.kind == Kind::DgAlgebra => {
            // the universal twisting morphism π: Bar B → B̄; its double is reported
            // alongside (it is still twisting when the product vanishes)
            let b = a.algebra()?;
            let bbar = b.augmentation_ideal()?;
            let bar_b = bar(&b, n)?;
            let pi = universal_twisting(&bar_b, &bbar);
            let r = twisting_check(&pi, &bar_b.coalgebra, &bbar)?;
            let doubled = pi.scaled(&Rational::from_integer(2));
            let rp = twisting_check(&doubled, &bar_b.coalgebra, &bbar)?;
            Ok((
                r.is_twisting,
                json!({"pi": r, "perturbed": {"map": "2π", "report": rp}}),
            ))
        }
        [c, a] if c.kind == Kind::DgCoalgebra && a.kind == Kind::DgAlgebra => {
            let d = c.coalgebra()?;
            let b = a.algebra()?;
            let nu = match &opts.nu {
                Some(t) => parse_nu(t, &d, &b)?,
                None => GradedMap::zero(d.space().clone(), b.space().clone(), -1),
            };
            let r = twisting_check(&nu, &d, &b)?;
            Ok((r.is_twisting, to_value(&r)))
        }
        _ => Err(Error::Usage(
            "twisting-check takes an algebra (checks π) or a coalgebra and an algebra with --nu".into(),
        )),
    }
}
