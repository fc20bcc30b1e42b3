//! Palette configuration: maps pixel colors to proposition names and picks
//! the adjacency relation for ingestion.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Adjacency {
    /// 4-neighbourhood: pixels sharing an edge.
    Orthogonal4,
    /// 8-neighbourhood: pixels sharing an edge or a vertex.
    Chebyshev8,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PaletteFile {
    adjacency: Adjacency,
    /// Keys are `#rrggbb` hex colors or decimal 8-bit gray values.
    colors: BTreeMap<String, String>,
}

#[derive(Debug, Clone)]
pub struct PaletteConfig {
    pub adjacency: Adjacency,
    /// Normalized: every entry keyed by its RGB triple.
    pub colors: BTreeMap<[u8; 3], String>,
}

impl PaletteConfig {
    pub fn new(adjacency: Adjacency, colors: BTreeMap<[u8; 3], String>) -> Result<Self> {
        if colors.is_empty() {
            return Err(Error::Format("palette must map at least one color".into()));
        }
        Ok(PaletteConfig { adjacency, colors })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: PaletteFile = serde_json::from_str(text)
            .map_err(|e| Error::Format(format!("palette file: {e}")))?;
        let mut colors = BTreeMap::new();
        for (key, prop) in &file.colors {
            let rgb = parse_color(key)?;
            if colors.insert(rgb, prop.clone()).is_some() {
                return Err(Error::Format(format!(
                    "palette maps color {key:?} twice (hex and gray forms collide)"
                )));
            }
        }
        Self::new(file.adjacency, colors)
    }

    pub fn to_json(&self) -> String {
        let file = PaletteFile {
            adjacency: self.adjacency,
            colors: self
                .colors
                .iter()
                .map(|(rgb, prop)| (format_color(*rgb), prop.clone()))
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("palette serializes")
    }

    pub fn prop_of(&self, rgb: [u8; 3]) -> Option<&str> {
        self.colors.get(&rgb).map(|s| s.as_str())
    }
}

pub(crate) fn parse_color(key: &str) -> Result<[u8; 3]> {
    if let Some(hex) = key.strip_prefix('#') {
        if hex.len() != 6 || !hex.bytes().all(|b| b.is_ascii_hexdigit()) {
            return Err(Error::Format(format!(
                "bad color key {key:?}: expected #rrggbb"
            )));
        }
        let v = u32::from_str_radix(hex, 16).expect("validated hex");
        return Ok([(v >> 16) as u8, (v >> 8) as u8, v as u8]);
    }
    match key.parse::<u16>() {
        Ok(g) if g <= 255 => Ok([g as u8, g as u8, g as u8]),
        _ => Err(Error::Format(format!(
            "bad color key {key:?}: expected #rrggbb or a gray value 0..=255"
        ))),
    }
}

pub(crate) fn format_color(rgb: [u8; 3]) -> String {
    format!("#{:02x}{:02x}{:02x}", rgb[0], rgb[1], rgb[2])
}
