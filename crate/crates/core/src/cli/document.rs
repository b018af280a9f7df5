//! Definition documents: the JSON input format.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::absolute::{presented_tower, AlgebraTower};
use crate::assoc::{Bilinear, DgAssocAlgebra, DgCoassocCoalgebra, DgLieAlgebra, PairTerms};
use crate::error::{Error, Result};
use crate::contra::{Chirality, Contramodule, RightComodule};
use crate::exactlin::{BasisElement, ChainComplex, GradedMap, GradedSpace, Rational, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    DgAlgebra,
    DgCoalgebra,
    DgLie,
    Comodule,
    Contramodule,
    Tower,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisEntry {
    pub label: String,
    pub degree: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<u32>,
}

/// One or several labels: `"a"` or `["a", "b"]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Labels {
    One(String),
    Many(Vec<String>),
}

impl Labels {
    pub fn as_vec(&self) -> Vec<&str> {
        match self {
            Labels::One(s) => vec![s.as_str()],
            Labels::Many(v) => v.iter().map(String::as_str).collect(),
        }
    }
}

/// `[labels, "p/q"]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term(pub Labels, pub Rational);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DifferentialEntry {
    pub input: String,
    pub output: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureEntry {
    pub inputs: Vec<String>,
    pub output: Vec<Term>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Flags {
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub unital: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub counital: bool,
    /// Counit values on basis elements; absent elements map to zero.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counit: Option<Vec<Term>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coaugmentation: Option<String>,
    /// A claim, checked against the coradical filtration.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conilpotent: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DefinitionDocument {
    pub kind: Kind,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub basis: Vec<BasisEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub differential: Vec<DifferentialEntry>,
    /// Products, coproducts, brackets, coactions or contraactions, by kind.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub structure: Vec<StructureEntry>,
    #[serde(default, skip_serializing_if = "is_default_flags")]
    pub flags: Flags,
    /// The coalgebra a comodule or contramodule lives over.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coalgebra: Option<Box<DefinitionDocument>>,
    /// Comodule side or contramodule chirality.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side: Option<Side>,
    /// Tower relations: elements of the tensor algebra on the basis.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<Vec<Term>>,
}

fn is_default_flags(f: &Flags) -> bool {
    *f == Flags::default()
}

/// Line and column (1-based) of the first occurrence of `needle` in `text`.
fn locate(text: &str, needle: &str) -> (usize, usize) {
    match text.find(needle) {
        Some(off) => {
            let before = &text[..off];
            let line = before.matches('\n').count() + 1;
            let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
            (line, col)
        }
        None => (0, 0),
    }
}

fn located(text: &str, e: Error) -> Error {
    let needle = match &e {
        Error::UnknownLabel(l) | Error::DuplicateLabel(l) => format!("\"{l}\""),
        Error::DegreeMismatch { source_label, .. } => {
            format!("\"{}\"", source_label.split('⊗').next().unwrap_or(source_label))
        }
        Error::InvalidStructure(m) if m.contains('`') => {
            let l = m.split('`').nth(1).unwrap_or_default();
            format!("\"{l}\"")
        }
        Error::Parse { .. } => return e,
        _ => String::new(),
    };
    let (line, column) = if needle.is_empty() { (0, 0) } else { locate(text, &needle) };
    Error::Parse {
        line,
        column,
        message: e.to_string(),
    }
}

/// Parse and check a document: syntax, unknown fields, label resolution,
/// duplicate entries. Structural laws are not checked here.
pub fn parse_definition(text: &str) -> Result<DefinitionDocument> {
    let doc: DefinitionDocument = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    doc.check().map_err(|e| located(text, e))?;
    Ok(doc)
}

pub fn serialize_definition(doc: &DefinitionDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

impl DefinitionDocument {
    pub fn space(&self) -> Result<Arc<GradedSpace>> {
        let elements = self
            .basis
            .iter()
            .map(|b| BasisElement {
                label: b.label.clone(),
                degree: b.degree,
                weight: b.weight,
            })
            .collect();
        Ok(Arc::new(GradedSpace::new(elements)?))
    }

    fn check(&self) -> Result<()> {
        let space = self.space()?;
        self.differential_map(&space)?;
        let arity = match self.kind {
            Kind::DgAlgebra | Kind::DgLie | Kind::Contramodule => 2,
            Kind::DgCoalgebra | Kind::Comodule => 1,
            Kind::Tower => 0,
        };
        let mut seen = HashSet::new();
        for s in &self.structure {
            if arity == 0 {
                return Err(Error::InvalidStructure(
                    "towers are presented by relations, not structure constants".into(),
                ));
            }
            if s.inputs.len() != arity {
                return Err(Error::InvalidStructure(format!(
                    "structure entry `{}` has {} inputs, expected {arity}",
                    s.inputs.join(","),
                    s.inputs.len()
                )));
            }
            if !seen.insert(s.inputs.clone()) {
                return Err(Error::InvalidStructure(format!(
                    "duplicate structure entry for `{}`",
                    s.inputs.join(",")
                )));
            }
        }
        match self.kind {
            Kind::DgAlgebra => {
                self.algebra()?;
            }
            Kind::DgCoalgebra => {
                self.coalgebra()?;
            }
            Kind::DgLie => {
                self.lie()?;
            }
            Kind::Comodule | Kind::Contramodule => {
                let Some(c) = &self.coalgebra else {
                    return Err(Error::InvalidStructure(format!(
                        "a {:?} needs a nested `coalgebra` document",
                        self.kind
                    )));
                };
                c.check()?;
                if self.kind == Kind::Comodule {
                    self.comodule()?;
                } else {
                    self.contramodule()?;
                }
                if c.kind != Kind::DgCoalgebra {
                    return Err(Error::InvalidStructure("nested document must be a dg_coalgebra".into()));
                }
                if self.side.is_none() {
                    return Err(Error::InvalidStructure("`side` is required".into()));
                }
            }
            Kind::Tower => {
                for r in &self.relations {
                    for t in r {
                        for l in t.0.as_vec() {
                            space.require(l)?;
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub(crate) fn vector(space: &GradedSpace, terms: &[Term]) -> Result<Vector> {
        let mut v = Vector::new();
        for Term(l, c) in terms {
            let ls = l.as_vec();
            if ls.len() != 1 {
                return Err(Error::InvalidStructure(format!(
                    "expected a single label, got `{}`",
                    ls.join(",")
                )));
            }
            v.add_term(space.require(ls[0])?, c.clone());
        }
        Ok(v)
    }

    pub(crate) fn pairs(space: &GradedSpace, terms: &[Term]) -> Result<PairTerms> {
        let mut p = PairTerms::new();
        for Term(l, c) in terms {
            let ls = l.as_vec();
            if ls.len() != 2 {
                return Err(Error::InvalidStructure(format!(
                    "expected a pair of labels, got `{}`",
                    ls.join(",")
                )));
            }
            let k = (space.require(ls[0])?, space.require(ls[1])?);
            *p.entry(k).or_insert_with(Rational::zero) += c;
        }
        p.retain(|_, x| !x.is_zero());
        Ok(p)
    }

    pub(crate) fn differential_map(&self, space: &Arc<GradedSpace>) -> Result<GradedMap> {
        let mut cols = vec![Vector::new(); space.dim()];
        let mut seen = HashSet::new();
        for e in &self.differential {
            let i = space.require(&e.input)?;
            if !seen.insert(i) {
                return Err(Error::InvalidStructure(format!(
                    "duplicate differential entry for `{}`",
                    e.input
                )));
            }
            cols[i] = Self::vector(space, &e.output)?;
        }
        GradedMap::new(space.clone(), space.clone(), -1, cols)
    }

    pub(crate) fn bilinear(&self, space: &GradedSpace) -> Result<Bilinear> {
        let mut t = Bilinear::new();
        for s in &self.structure {
            let k = (space.require(&s.inputs[0])?, space.require(&s.inputs[1])?);
            t.insert(k, Self::vector(space, &s.output)?);
        }
        Ok(t)
    }

    fn expect_kind(&self, k: Kind) -> Result<()> {
        if self.kind != k {
            return Err(Error::InvalidStructure(format!(
                "document `{}` is a {:?}, expected {k:?}",
                self.name, self.kind
            )));
        }
        Ok(())
    }

    /// Build the algebra; `d² = 0` is reported by validation, not here.
    pub fn algebra(&self) -> Result<DgAssocAlgebra> {
        self.expect_kind(Kind::DgAlgebra)?;
        let space = self.space()?;
        let d = self.differential_map(&space)?;
        let product = self.bilinear(&space)?;
        let unit = match (&self.flags.unital, &self.flags.unit) {
            (true, Some(u)) => Some(Vector::basis(space.require(u)?)),
            (false, None) => None,
            _ => {
                return Err(Error::InvalidStructure(
                    "`unital` and `unit` must be given together".into(),
                ))
            }
        };
        DgAssocAlgebra::new_unchecked(self.name.clone(), d, product, unit)
    }

    pub fn coalgebra(&self) -> Result<DgCoassocCoalgebra> {
        self.expect_kind(Kind::DgCoalgebra)?;
        let space = self.space()?;
        let d = self.differential_map(&space)?;
        let mut coproduct = vec![PairTerms::new(); space.dim()];
        for s in &self.structure {
            coproduct[space.require(&s.inputs[0])?] = Self::pairs(&space, &s.output)?;
        }
        let counit = match (&self.flags.counital, &self.flags.counit) {
            (true, Some(terms)) => {
                let v = Self::vector(&space, terms)?;
                Some((0..space.dim()).map(|i| v.get(i)).collect())
            }
            (false, None) => None,
            _ => {
                return Err(Error::InvalidStructure(
                    "`counital` and `counit` must be given together".into(),
                ))
            }
        };
        let coaug = self
            .flags
            .coaugmentation
            .as_deref()
            .map(|l| space.require(l))
            .transpose()?;
        DgCoassocCoalgebra::new_unchecked(self.name.clone(), d, coproduct, counit, coaug)
    }

    pub fn lie(&self) -> Result<DgLieAlgebra> {
        self.expect_kind(Kind::DgLie)?;
        let space = self.space()?;
        let d = self.differential_map(&space)?;
        let bracket = self.bilinear(&space)?;
        DgLieAlgebra::new_unchecked(self.name.clone(), d, bracket)
    }

    fn nested_coalgebra(&self) -> Result<DgCoassocCoalgebra> {
        self.coalgebra
            .as_ref()
            .ok_or_else(|| Error::InvalidStructure("missing nested `coalgebra`".into()))?
            .coalgebra()
    }

    /// A right comodule; entries read `v ↦ [[v', c], coefficient]`.
    pub fn comodule(&self) -> Result<RightComodule> {
        self.expect_kind(Kind::Comodule)?;
        if self.side != Some(Side::Right) {
            return Err(Error::InvalidStructure("only right comodules are supported".into()));
        }
        let c = self.nested_coalgebra()?;
        let space = self.space()?;
        let differential = self.differential_map(&space)?;
        let mut coaction = vec![PairTerms::new(); space.dim()];
        for s in &self.structure {
            let v = space.require(&s.inputs[0])?;
            for Term(l, x) in &s.output {
                let ls = l.as_vec();
                if ls.len() != 2 {
                    return Err(Error::InvalidStructure(format!(
                        "expected `[comodule, coalgebra]` labels, got `{}`",
                        ls.join(",")
                    )));
                }
                let k = (space.require(ls[0])?, c.space().require(ls[1])?);
                *coaction[v].entry(k).or_insert_with(Rational::zero) += x;
            }
            coaction[v].retain(|_, x| !x.is_zero());
        }
        Ok(RightComodule {
            name: self.name.clone(),
            coalgebra: c,
            space,
            differential,
            coaction,
        })
    }

    /// A contramodule; entries read `[c, m] ↦ γ([c→m])`.
    pub fn contramodule(&self) -> Result<Contramodule> {
        self.expect_kind(Kind::Contramodule)?;
        let c = self.nested_coalgebra()?;
        let space = self.space()?;
        let d = self.differential_map(&space)?;
        let md = space.dim();
        let mut action = vec![Vector::new(); c.dim() * md];
        for s in &self.structure {
            let k = c.space().require(&s.inputs[0])? * md + space.require(&s.inputs[1])?;
            action[k] = Self::vector(&space, &s.output)?;
        }
        let chirality = match self.side {
            Some(Side::Left) => Chirality::Left,
            Some(Side::Right) => Chirality::Right,
            None => return Err(Error::InvalidStructure("`side` is required".into())),
        };
        Contramodule::new(self.name.clone(), c, ChainComplex::new_unchecked(d), action, chirality)
    }

    /// The tower presented by the generators and relations, truncated at `n`.
    pub fn tower(&self, n: usize) -> Result<AlgebraTower> {
        self.expect_kind(Kind::Tower)?;
        let space = self.space()?;
        let gens = ChainComplex::new(self.differential_map(&space)?)?;
        presented_tower(self.name.clone(), &gens, &self.relation_tensors()?, n)
    }

    /// Relations of a tower document as tensor-word coefficients.
    pub fn relation_tensors(&self) -> Result<Vec<BTreeMap<Vec<usize>, Rational>>> {
        let space = self.space()?;
        self.relations
            .iter()
            .map(|r| {
                let mut t = BTreeMap::new();
                for Term(l, c) in r {
                    let w = l
                        .as_vec()
                        .iter()
                        .map(|x| space.require(x))
                        .collect::<Result<Vec<_>>>()?;
                    crate::assoc::add_tensor_term(&mut t, w, c.clone());
                }
                Ok(t)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
  "kind": "dg_algebra",
  "name": "point",
  "basis": [{"label": "a", "degree": 0}]
}"#;

    #[test]
    fn minimal_algebra_parses_and_validates() {
        let doc = parse_definition(MINIMAL).unwrap();
        assert!(doc.algebra().unwrap().validate().passed());
    }

    #[test]
    fn fractions_round_trip() {
        let text = r#"{"kind":"dg_algebra","name":"x","basis":[{"label":"a","degree":0}],
            "structure":[{"inputs":["a","a"],"output":[["a","1/3"]]}]}"#;
        let doc = parse_definition(text).unwrap();
        assert_eq!(doc.structure[0].output[0].1, Rational::new(1, 3));
        let again = parse_definition(&serialize_definition(&doc)).unwrap();
        assert_eq!(doc, again);
    }

    #[test]
    fn floats_are_rejected() {
        let text = r#"{"kind":"dg_algebra","name":"x","basis":[{"label":"a","degree":0}],
            "structure":[{"inputs":["a","a"],"output":[["a","0.5"]]}]}"#;
        match parse_definition(text) {
            Err(Error::Parse { message, line, .. }) => {
                assert!(message.contains("floats forbidden"), "{message}");
                assert_eq!(line, 2);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_fields_and_labels_are_rejected() {
        let text = r#"{"kind":"dg_algebra","name":"x","basis":[],"extra":1}"#;
        assert!(matches!(parse_definition(text), Err(Error::Parse { .. })));
        let text = "{\"kind\":\"dg_algebra\",\"name\":\"x\",\"basis\":[{\"label\":\"a\",\"degree\":0}],\n\"structure\":[{\"inputs\":[\"a\",\"b\"],\"output\":[]}]}";
        match parse_definition(text) {
            Err(Error::Parse { line, column, message }) => {
                assert!(message.contains("`b`"));
                assert_eq!((line, column), (2, 29));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn duplicate_entries_are_rejected() {
        let text = r#"{"kind":"dg_algebra","name":"x","basis":[{"label":"a","degree":0}],
            "structure":[{"inputs":["a","a"],"output":[]},{"inputs":["a","a"],"output":[]}]}"#;
        assert!(parse_definition(text).is_err());
    }
}
