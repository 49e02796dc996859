//! Small library of root-datum presets shipped as JSON files, used by the
//! test suite and available to model files by name.

use crate::error::{Error, Result};
use crate::rootdata::{RootDatum, RootDatumSpec};

pub const PRESET_NAMES: &[&str] = &["a1", "a1xa1", "a2", "torus1", "torus2"];

/// Load a preset root datum by name.
pub fn root_datum(name: &str) -> Result<RootDatum> {
    let text = match name {
        "a1" => include_str!("../presets/a1.json"),
        "a1xa1" => include_str!("../presets/a1xa1.json"),
        "a2" => include_str!("../presets/a2.json"),
        "torus1" => include_str!("../presets/torus1.json"),
        "torus2" => include_str!("../presets/torus2.json"),
        _ => {
            return Err(Error::invalid(format!(
                "unknown root datum preset {name:?} (available: {PRESET_NAMES:?})"
            )))
        }
    };
    let spec: RootDatumSpec =
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("preset {name}: {e}")))?;
    RootDatum::from_spec(&spec)
}
