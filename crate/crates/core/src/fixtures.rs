//! The shipped finite-group fixtures, embedded so that verification suites
//! run without external files. The JSON sources live in `fixtures/` and
//! document the element orderings.

use crate::error::{Error, Result};
use crate::finite_model::{FiniteModel, FiniteModelSpec};

pub const FIXTURE_NAMES: &[&str] = &["s3_a3", "d4_center", "q8_z4", "z4_z2", "z3z3_z2"];

pub fn builtin(name: &str) -> Result<FiniteModel> {
    let text = fixture_json(name)?;
    let spec: FiniteModelSpec =
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("fixture {name}: {e}")))?;
    FiniteModel::from_spec(&spec)
}

pub fn fixture_json(name: &str) -> Result<&'static str> {
    Ok(match name {
        "s3_a3" => include_str!("../fixtures/s3_a3.json"),
        "d4_center" => include_str!("../fixtures/d4_center.json"),
        "q8_z4" => include_str!("../fixtures/q8_z4.json"),
        "z4_z2" => include_str!("../fixtures/z4_z2.json"),
        "z3z3_z2" => include_str!("../fixtures/z3z3_z2.json"),
        _ => {
            return Err(Error::invalid(format!(
                "unknown fixture {name:?} (available: {FIXTURE_NAMES:?})"
            )))
        }
    })
}

/// All builtin fixtures, loaded and validated.
pub fn all_builtin() -> Result<Vec<FiniteModel>> {
    FIXTURE_NAMES.iter().map(|n| builtin(n)).collect()
}
