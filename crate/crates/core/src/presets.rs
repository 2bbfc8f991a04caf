//! Built-in tiling configurations.

use std::path::Path;

use serde::Serialize;

use crate::config::{load_config, LatticeType, TilingConfig};
use crate::error::{Error, Result};

const SOURCES: [(&str, &str); 4] = [
    ("ammann-kramer", include_str!("../presets/ammann-kramer.toml")),
    ("canonical-d6", include_str!("../presets/canonical-d6.toml")),
    ("danzer", include_str!("../presets/danzer.toml")),
    ("dual-canonical-d6", include_str!("../presets/dual-canonical-d6.toml")),
];

#[derive(Clone, Debug, Serialize)]
pub struct PresetInfo {
    pub name: String,
    pub lattice_type: LatticeType,
    pub planes: String,
    pub description: String,
}

pub fn preset_names() -> impl Iterator<Item = &'static str> {
    SOURCES.iter().map(|(n, _)| *n)
}

/// TOML text of a preset.
pub fn preset_source(name: &str) -> Result<&'static str> {
    SOURCES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, s)| *s)
        .ok_or_else(|| Error::UnknownPreset(name.to_string()))
}

pub fn preset_config(name: &str) -> Result<TilingConfig> {
    TilingConfig::from_toml_str(preset_source(name)?)
}

pub fn list_presets() -> Vec<PresetInfo> {
    preset_names()
        .map(|n| {
            let c = preset_config(n).expect("built-in preset parses");
            PresetInfo {
                name: c.name,
                lattice_type: c.lattice_type,
                planes: c.planes.unwrap_or_default(),
                description: c.description.unwrap_or_default(),
            }
        })
        .collect()
}

/// Loads `target` as a file if it exists, otherwise as a preset name.
pub fn load_target(target: &str) -> Result<TilingConfig> {
    let path = Path::new(target);
    if path.exists() {
        load_config(path)
    } else if target.ends_with(".toml") {
        Err(Error::Config(format!("{target}: no such file")))
    } else {
        preset_config(target)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_presets_parse() {
        let infos = list_presets();
        assert_eq!(infos.len(), 4);
        for i in &infos {
            assert!(!i.planes.is_empty() && !i.description.is_empty());
            let c = preset_config(&i.name).unwrap();
            assert!(!c.seed_tori.is_empty());
            assert_eq!(c.symmetry_generators.len(), 3);
        }
    }

    #[test]
    fn unknown_preset() {
        assert!(matches!(preset_config("penrose"), Err(Error::UnknownPreset(_))));
        assert!(matches!(load_target("penrose"), Err(Error::UnknownPreset(_))));
    }
}
