use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::dsl::{evaluate_bindings, parse_with, Value};
use crate::group::{BoundaryData, Presentation, Word};

use super::{ConstructionError, GluingMap, KnotRecord};

/// Data files in load order; later files may refer to earlier items.
const DATA: &[(&str, &str)] = &[
    ("knots.exo", include_str!("../../data/knots.exo")),
    ("fibration.exo", include_str!("../../data/fibration.exo")),
    ("blocks.exo", include_str!("../../data/blocks.exo")),
    ("gluings.exo", include_str!("../../data/gluings.exo")),
];

pub const BUNDLED_NAMES: &[&str] = &[
    "trefoil",
    "trefoil_uv",
    "figure8",
    "matsumoto_curves",
    "Z_complement",
    "C_B",
    "C_F",
    "Y_K",
    "X_K_complement",
    "psi",
    "phi",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BundledValue {
    Presentation(Presentation),
    Boundary(BoundaryData),
    Gluing(GluingMap),
    Words(Vec<Word>),
    Knot(KnotRecord),
}

impl BundledValue {
    pub fn kind(&self) -> &'static str {
        match self {
            BundledValue::Presentation(_) => "presentation",
            BundledValue::Boundary(_) => "boundary",
            BundledValue::Gluing(_) => "gluing map",
            BundledValue::Words(_) => "word list",
            BundledValue::Knot(_) => "knot",
        }
    }

    fn from_value(name: &str, v: Value) -> Result<Self, ConstructionError> {
        Ok(match v {
            Value::Presentation(p) => BundledValue::Presentation(p),
            Value::Boundary(b) => BundledValue::Boundary(b),
            Value::Glue(g) => BundledValue::Gluing(g),
            Value::Knot(k) => BundledValue::Knot(k),
            Value::List(items) => BundledValue::Words(
                items
                    .into_iter()
                    .map(|x| match x {
                        Value::Word(w) => Ok(w),
                        other => Err(ConstructionError::Data(format!("{name}: list holds a {}", other.type_name()))),
                    })
                    .collect::<Result<_, _>>()?,
            ),
            other => return Err(ConstructionError::Data(format!("{name} evaluates to a {}", other.type_name()))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundledItem {
    pub name: String,
    pub value: BundledValue,
    pub citation: Option<String>,
    /// Data file the item was read from.
    pub source: String,
}

type Registry = BTreeMap<String, BundledItem>;

fn load() -> Result<Registry, ConstructionError> {
    let mut reg = Registry::new();
    for (file, text) in DATA {
        let script = parse_with(text, &|n| reg.contains_key(n))
            .map_err(|e| ConstructionError::Data(format!("{file}: {e}")))?;
        let lookup = |n: &str| reg.get(n).map(|item| Value::from(item.value.clone()));
        let bindings =
            evaluate_bindings(&script, &lookup).map_err(|e| ConstructionError::Data(format!("{file}: {e}")))?;
        for (name, value, citation) in bindings {
            let value = BundledValue::from_value(&name, value)?;
            reg.insert(name.clone(), BundledItem { name, value, citation, source: file.to_string() });
        }
    }
    Ok(reg)
}

fn registry() -> Result<&'static Registry, ConstructionError> {
    static REG: OnceLock<Result<Registry, ConstructionError>> = OnceLock::new();
    REG.get_or_init(load).as_ref().map_err(Clone::clone)
}

pub fn bundled(name: &str) -> Result<&'static BundledItem, ConstructionError> {
    registry()?.get(name).ok_or_else(|| ConstructionError::UnknownBundled(name.to_string()))
}

pub fn bundled_names() -> &'static [&'static str] {
    BUNDLED_NAMES
}
