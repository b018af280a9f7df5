//! The bundled definition files.

use super::document::{parse_definition, DefinitionDocument};
use crate::absolute::AlgebraTower;
use crate::assoc::{DgAssocAlgebra, DgCoassocCoalgebra, DgLieAlgebra};
use crate::contra::{Contramodule, RightComodule};
use crate::error::{Error, Result};

pub const FILES: &[(&str, &str)] = &[
    ("abelian3", include_str!("../../corpus/abelian3.json")),
    ("acyclic_cone", include_str!("../../corpus/acyclic_cone.json")),
    ("dual_numbers", include_str!("../../corpus/dual_numbers.json")),
    ("filiform4", include_str!("../../corpus/filiform4.json")),
    ("free_tower", include_str!("../../corpus/free_tower.json")),
    ("grouplike", include_str!("../../corpus/grouplike.json")),
    ("heisenberg", include_str!("../../corpus/heisenberg.json")),
    ("idempotent", include_str!("../../corpus/idempotent.json")),
    ("kt", include_str!("../../corpus/kt.json")),
    ("matrix2", include_str!("../../corpus/matrix2.json")),
    ("path", include_str!("../../corpus/path.json")),
    ("path_comodule", include_str!("../../corpus/path_comodule.json")),
    ("power_series", include_str!("../../corpus/power_series.json")),
    ("primitive", include_str!("../../corpus/primitive.json")),
    ("quotient_tower", include_str!("../../corpus/quotient_tower.json")),
    ("triangular_dg", include_str!("../../corpus/triangular_dg.json")),
    ("triangular_dg_dual", include_str!("../../corpus/triangular_dg_dual.json")),
    ("unital_dual_numbers", include_str!("../../corpus/unital_dual_numbers.json")),
    ("upper3", include_str!("../../corpus/upper3.json")),
    ("xy_coalgebra", include_str!("../../corpus/xy_coalgebra.json")),
];

pub fn text(name: &str) -> Result<&'static str> {
    FILES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::Io(format!("no bundled definition `{name}`")))
}

pub fn document(name: &str) -> Result<DefinitionDocument> {
    parse_definition(text(name)?)
}

pub fn algebra(name: &str) -> Result<DgAssocAlgebra> {
    document(name)?.algebra()
}

pub fn coalgebra(name: &str) -> Result<DgCoassocCoalgebra> {
    document(name)?.coalgebra()
}

pub fn lie(name: &str) -> Result<DgLieAlgebra> {
    document(name)?.lie()
}

pub fn comodule(name: &str) -> Result<RightComodule> {
    document(name)?.comodule()
}

pub fn contramodule(name: &str) -> Result<Contramodule> {
    document(name)?.contramodule()
}

pub fn tower(name: &str, n: usize) -> Result<AlgebraTower> {
    document(name)?.tower(n)
}
