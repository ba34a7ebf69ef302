use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use herman_core::geometry::{Region, RegionRecord};
use herman_core::herman::{HermanParams, ParamsRecord};
use herman_core::ratmap::{MapRecord, RationalMap};

use crate::CliError;

/// Input of `verify-siegel`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SiegelInput {
    pub map: MapRecord,
    pub disks: Vec<RegionRecord>,
}

/// Input of `construct-herman`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstructInput {
    pub map: MapRecord,
    pub disks: Vec<RegionRecord>,
    pub params: ParamsRecord,
}

/// Input of `verify-herman`: the constructed map, its rings, and the
/// parameters that place the extra pole.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HermanInput {
    pub map: MapRecord,
    pub rings: Vec<RegionRecord>,
    pub params: ParamsRecord,
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Schema {
        path: path.display().to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn invalid(path: &Path, what: &str, e: impl std::fmt::Display) -> CliError {
    CliError::Invalid {
        path: path.display().to_string(),
        message: format!("{what}: {e}"),
    }
}

pub fn load_map(path: &Path, record: &MapRecord) -> Result<RationalMap, CliError> {
    RationalMap::from_record(record).map_err(|e| invalid(path, "map", e))
}

pub fn load_regions(path: &Path, field: &str, map: &RationalMap, records: &[RegionRecord]) -> Result<Vec<Region>, CliError> {
    records
        .iter()
        .enumerate()
        .map(|(i, r)| Region::from_record(r, map.ctx()).map_err(|e| invalid(path, &format!("{field}[{i}]"), e)))
        .collect()
}

pub fn load_params(path: &Path, map: &RationalMap, record: &ParamsRecord) -> Result<HermanParams, CliError> {
    HermanParams::from_record(record, map.ctx()).map_err(|e| invalid(path, "params", e))
}
