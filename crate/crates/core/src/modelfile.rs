//! Model files: the single JSON input format of the CLI, bundling a root
//! datum, a component-group action, cocycle assignments, an ideal
//! specification, field data, and optionally a finite-group fixture for the
//! oracle checks.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::clifford::FactorSetSpec;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::finite_model::{FiniteModel, FiniteModelSpec};
use crate::fixtures;
use crate::hw::CocycleAssignment;
use crate::rootdata::{ComponentAction, ComponentActionSpec, RootDatum, RootDatumSpec, Weight};

/// Root datum reference: a preset name or an inline spec.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RootDatumRef {
    Preset { preset: String },
    Inline(RootDatumSpec),
}

/// Cocycle table attached to one orbit representative.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrbitCocycle {
    pub orbit_rep: Vec<i64>,
    pub values: Vec<Vec<String>>,
}

/// Cocycle assignment: `"trivial"` or explicit per-orbit tables.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CocyclesSpec {
    Keyword(String),
    PerOrbit { per_orbit: Vec<OrbitCocycle> },
}

impl Default for CocyclesSpec {
    fn default() -> Self {
        CocyclesSpec::Keyword("trivial".into())
    }
}

/// Ideal specification: explicit weights plus an optional height-bounded
/// box enumeration. Every listed weight must be dominant.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub height_bound: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_abs_coord: Option<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub weights: Vec<Vec<i64>>,
}

impl IdealSpec {
    /// The dominant weights of the ideal, sorted and deduplicated.
    pub fn generate(&self, datum: &RootDatum) -> Result<Vec<Weight>> {
        let mut out: Vec<Weight> = Vec::new();
        for w in &self.weights {
            let w = Weight(w.clone());
            if !datum.is_dominant(&w)? {
                return Err(Error::invalid(format!("ideal weight {w} is not dominant")));
            }
            out.push(w);
        }
        if let Some(bound) = self.height_bound {
            if bound < 0 {
                return Err(Error::invalid("height bound must be nonnegative"));
            }
            let box_bound = self.max_abs_coord.unwrap_or(bound);
            let rank = datum.rank();
            let mut coords = vec![-box_bound; rank];
            loop {
                let w = Weight(coords.clone());
                if datum.is_dominant(&w)? && datum.height(&w) <= bound {
                    out.push(w);
                }
                let mut i = 0;
                loop {
                    if i == rank {
                        coords.clear();
                        break;
                    }
                    coords[i] += 1;
                    if coords[i] > box_bound {
                        coords[i] = -box_bound;
                        i += 1;
                    } else {
                        break;
                    }
                }
                if coords.is_empty() {
                    break;
                }
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

/// Fixture reference: a builtin name or an inline spec.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FixtureRef {
    Builtin(String),
    Inline(FiniteModelSpec),
}

/// The on-disk model file.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
    pub field: FieldSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root_datum: Option<RootDatumRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component_action: Option<ComponentActionSpec>,
    #[serde(default)]
    pub cocycles: CocyclesSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<IdealSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixture: Option<FixtureRef>,
}

/// A model file with all cross-references resolved and validated.
pub struct ResolvedModel {
    pub name: String,
    pub field: FieldSpec,
    pub combinatorial: Option<CombinatorialModel>,
    pub fixture: Option<FiniteModel>,
}

pub struct CombinatorialModel {
    pub datum: RootDatum,
    pub action: ComponentAction,
    pub cocycles: CocycleAssignment,
    /// Raw cocycle tables, for the cross-characteristic path which needs
    /// abstract values rather than field elements.
    pub raw_cocycles: BTreeMap<Weight, Vec<Vec<String>>>,
    pub ideal_weights: Vec<Weight>,
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<ModelFile> {
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("model file: {e}")))
    }

    pub fn resolve(&self) -> Result<ResolvedModel> {
        self.field.validate()?;
        let fixture = match &self.fixture {
            None => None,
            Some(FixtureRef::Builtin(name)) => Some(fixtures::builtin(name)?),
            Some(FixtureRef::Inline(spec)) => Some(FiniteModel::from_spec(spec)?),
        };
        let combinatorial = match (&self.root_datum, &self.component_action) {
            (None, None) => None,
            (Some(_), None) => {
                return Err(Error::invalid("a root datum requires a component_action"))
            }
            (None, Some(_)) => {
                return Err(Error::invalid("a component_action requires a root_datum"))
            }
            (Some(datum_ref), Some(action_spec)) => {
                let datum = match datum_ref {
                    RootDatumRef::Preset { preset } => crate::presets::root_datum(preset)?,
                    RootDatumRef::Inline(spec) => RootDatum::from_spec(spec)?,
                };
                let action = ComponentAction::from_spec(action_spec, &datum)?;
                let (cocycles, raw_cocycles) = match &self.cocycles {
                    CocyclesSpec::Keyword(k) if k == "trivial" => {
                        (CocycleAssignment::Trivial, BTreeMap::new())
                    }
                    CocyclesSpec::Keyword(k) => {
                        return Err(Error::invalid(format!(
                            "unknown cocycle keyword {k:?}; use \"trivial\" or per_orbit tables"
                        )))
                    }
                    CocyclesSpec::PerOrbit { per_orbit } => {
                        let mut map = BTreeMap::new();
                        let mut raw = BTreeMap::new();
                        for entry in per_orbit {
                            let rep = Weight(entry.orbit_rep.clone());
                            if !datum.is_dominant(&rep)? {
                                return Err(Error::invalid(format!(
                                    "cocycle orbit representative {rep} is not dominant"
                                )));
                            }
                            raw.insert(rep.clone(), entry.values.clone());
                            map.insert(
                                rep,
                                FactorSetSpec {
                                    values: entry.values.clone(),
                                },
                            );
                        }
                        (CocycleAssignment::PerOrbit(map), raw)
                    }
                };
                let ideal_weights = self
                    .ideal
                    .as_ref()
                    .map(|i| i.generate(&datum))
                    .transpose()?
                    .unwrap_or_default();
                Some(CombinatorialModel {
                    datum,
                    action,
                    cocycles,
                    raw_cocycles,
                    ideal_weights,
                })
            }
        };
        if combinatorial.is_none() && fixture.is_none() {
            return Err(Error::invalid(
                "model file provides neither a root datum nor a fixture",
            ));
        }
        Ok(ResolvedModel {
            name: self.name.clone(),
            field: self.field,
            combinatorial,
            fixture,
        })
    }
}

pub const MODEL_NAMES: &[&str] = &["o2", "a1xa1_swap", "s3"];

/// Load a builtin model by name.
pub fn builtin_model(name: &str) -> Result<ModelFile> {
    let text = match name {
        "o2" => include_str!("../models/o2.json"),
        "a1xa1_swap" => include_str!("../models/a1xa1_swap.json"),
        "s3" => include_str!("../models/s3.json"),
        _ => {
            return Err(Error::invalid(format!(
                "unknown builtin model {name:?} (available: {MODEL_NAMES:?})"
            )))
        }
    };
    ModelFile::parse(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_models_resolve() {
        for name in MODEL_NAMES {
            let model = builtin_model(name).unwrap();
            let resolved = model.resolve().unwrap();
            assert_eq!(&resolved.name, name);
        }
    }

    #[test]
    fn o2_ideal_is_the_listed_weights() {
        let model = builtin_model("o2").unwrap().resolve().unwrap();
        let comb = model.combinatorial.unwrap();
        assert_eq!(
            comb.ideal_weights,
            (0..=5).map(|m| Weight(vec![m])).collect::<Vec<_>>()
        );
    }

    #[test]
    fn a1xa1_ideal_is_height_bounded() {
        let model = builtin_model("a1xa1_swap").unwrap().resolve().unwrap();
        let comb = model.combinatorial.unwrap();
        assert!(!comb.ideal_weights.is_empty());
        for w in &comb.ideal_weights {
            assert!(comb.datum.is_dominant(w).unwrap());
            assert!(comb.datum.height(w) <= 8);
        }
        // (2,2) and both members of the (2,1)-orbit are present.
        assert!(comb.ideal_weights.contains(&Weight(vec![2, 2])));
        assert!(comb.ideal_weights.contains(&Weight(vec![2, 1])));
        assert!(comb.ideal_weights.contains(&Weight(vec![1, 2])));
    }

    #[test]
    fn malformed_model_files_are_rejected() {
        assert!(ModelFile::parse("{").is_err());
        assert!(ModelFile::parse("{\"name\":\"x\"}").is_err());
        // Unknown fields are rejected.
        let bad = r#"{"name":"x","field":{"kind":"finite","p":5,"k":1},"bogus":1}"#;
        assert!(ModelFile::parse(bad).is_err());
        // A root datum without an action is rejected at resolution.
        let half = r#"{
            "name": "x",
            "field": {"kind": "finite", "p": 5, "k": 1},
            "root_datum": {"preset": "a1"}
        }"#;
        assert!(ModelFile::parse(half).unwrap().resolve().is_err());
        // Neither datum nor fixture.
        let empty = r#"{"name":"x","field":{"kind":"finite","p":5,"k":1}}"#;
        assert!(ModelFile::parse(empty).unwrap().resolve().is_err());
    }

    #[test]
    fn nondominant_ideal_weights_are_rejected() {
        let text = r#"{
            "name": "bad",
            "field": {"kind": "finite", "p": 5, "k": 1},
            "root_datum": {"preset": "a1"},
            "component_action": {
                "group_table": [[0]],
                "matrices": [[[1]]]
            },
            "ideal": {"weights": [[-1]]}
        }"#;
        let model = ModelFile::parse(text).unwrap();
        assert!(model.resolve().is_err());
    }
}
