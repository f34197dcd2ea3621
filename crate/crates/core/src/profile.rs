//! Named constant profiles.
//!
//! The proofs quantify over constants that make every statement vacuous on
//! desk-sized graphs, so each constant is scaled independently and every
//! report echoes the profile it ran under.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Rational;

#[derive(Debug, Error)]
pub enum ProfileError {
    #[error("unknown profile `{0}` (known: paper, desk-small, desk-medium, or a JSON file in the profile directory)")]
    Unknown(String),
    #[error("unknown profile key `{0}`")]
    UnknownKey(String),
    #[error("bad value `{value}` for `{key}`: {reason}")]
    BadValue { key: String, value: String, reason: String },
    #[error("profile `{name}` keeps the scale constant symbolic; numeric gates need a profile with `global_c` set")]
    Symbolic { name: String },
    #[error("cannot read profile file: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot parse profile file: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantsProfile {
    pub name: String,
    #[serde(with = "crate::rational_serde")]
    pub density_factor: Rational,
    #[serde(with = "crate::rational_serde")]
    pub duchet_factor: Rational,
    pub largechi_need: u64,
    pub largechi_loss: u64,
    #[serde(with = "crate::rational_serde")]
    pub edge_loss_frac: Rational,
    #[serde(with = "crate::rational_serde")]
    pub y_frac: Rational,
    #[serde(with = "crate::rational_serde")]
    pub z_degree_factor: Rational,
    #[serde(with = "crate::rational_serde")]
    pub component_size_factor: Rational,
    #[serde(with = "crate::rational_serde")]
    pub peel_r: Rational,
    #[serde(with = "crate::rational_serde")]
    pub peel_delta_frac: Rational,
    #[serde(with = "crate::rational_serde")]
    pub molloy_factor: Rational,
    #[serde(with = "crate::rational_serde")]
    pub small_clique_c: Rational,
    /// Kostochka's `t >= 0.064 d / sqrt(log d)`; diagnostic only.
    pub kostochka_factor: f64,
    /// Scale constant of the small-dense-subgraph process; `None` keeps it
    /// symbolic and refuses every numeric gate.
    #[serde(with = "crate::rational_serde::option")]
    pub global_c: Option<Rational>,
    /// Constants that exist but are never given a value; stored as set by
    /// the user (`None` when unset).
    pub opaque: BTreeMap<String, Option<String>>,
}

const OPAQUE_KEYS: [&str; 6] = ["linked", "knitted", "rooted3", "inseparable", "rooted2", "tech"];

impl ConstantsProfile {
    pub fn paper() -> Self {
        let mut opaque: BTreeMap<String, Option<String>> = OPAQUE_KEYS.iter().map(|k| (k.to_string(), None)).collect();
        // stated to suffice via Thomas and Wollan
        opaque.insert("linked".into(), Some("10".into()));
        Self {
            name: "paper".into(),
            density_factor: Rational::from_integer(30),
            duchet_factor: Rational::from_integer(2),
            largechi_need: 7,
            largechi_loss: 6,
            edge_loss_frac: Rational::new(1, 10),
            y_frac: Rational::new(1, 20),
            z_degree_factor: Rational::from_integer(20),
            component_size_factor: Rational::from_integer(10),
            peel_r: Rational::from_integer(3),
            peel_delta_frac: Rational::new(2, 5),
            molloy_factor: Rational::from_integer(200),
            small_clique_c: Rational::from_integer(192_000),
            kostochka_factor: 0.064,
            global_c: None,
            opaque,
        }
    }

    pub fn desk_small() -> Self {
        Self { name: "desk-small".into(), global_c: Some(Rational::from_integer(2)), ..Self::paper() }
    }

    pub fn desk_medium() -> Self {
        Self { name: "desk-medium".into(), global_c: Some(Rational::from_integer(3)), ..Self::paper() }
    }

    /// Built-in presets, then `<dir>/<name>.json` when a directory is given.
    pub fn named(name: &str, dir: Option<&Path>) -> Result<Self, ProfileError> {
        match name {
            "paper" => Ok(Self::paper()),
            "desk-small" => Ok(Self::desk_small()),
            "desk-medium" => Ok(Self::desk_medium()),
            other => {
                let Some(dir) = dir else { return Err(ProfileError::Unknown(other.into())) };
                let path = dir.join(format!("{other}.json"));
                if !path.is_file() {
                    return Err(ProfileError::Unknown(other.into()));
                }
                let p: Self = serde_json::from_str(&std::fs::read_to_string(path)?)?;
                p.validate()?;
                Ok(p)
            }
        }
    }

    pub fn global_c(&self) -> Result<Rational, ProfileError> {
        self.global_c.ok_or_else(|| ProfileError::Symbolic { name: self.name.clone() })
    }

    /// Applies one `key=value` override; the profile name gains a `+key`
    /// suffix so reports show it was modified.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ProfileError> {
        let bad = |reason: &str| ProfileError::BadValue { key: key.into(), value: value.into(), reason: reason.into() };
        let rational = || crate::rational_serde::parse(value).ok_or_else(|| bad("expected p/q or an integer"));
        match key {
            "density_factor" => self.density_factor = rational()?,
            "duchet_factor" => self.duchet_factor = rational()?,
            "largechi_need" => self.largechi_need = value.parse().map_err(|_| bad("expected an integer"))?,
            "largechi_loss" => self.largechi_loss = value.parse().map_err(|_| bad("expected an integer"))?,
            "edge_loss_frac" => self.edge_loss_frac = rational()?,
            "y_frac" => self.y_frac = rational()?,
            "z_degree_factor" => self.z_degree_factor = rational()?,
            "component_size_factor" => self.component_size_factor = rational()?,
            "peel_r" => self.peel_r = rational()?,
            "peel_delta_frac" => self.peel_delta_frac = rational()?,
            "molloy_factor" => self.molloy_factor = rational()?,
            "small_clique_c" => self.small_clique_c = rational()?,
            "kostochka_factor" => self.kostochka_factor = value.parse().map_err(|_| bad("expected a number"))?,
            "global_c" => {
                self.global_c = if value == "symbolic" { None } else { Some(rational()?) };
            }
            k if OPAQUE_KEYS.contains(&k) => {
                rational()?;
                self.opaque.insert(k.into(), Some(value.into()));
            }
            _ => return Err(ProfileError::UnknownKey(key.into())),
        }
        self.validate()?;
        self.name = format!("{}+{key}", self.name);
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ProfileError> {
        let zero = Rational::from_integer(0);
        let one = Rational::from_integer(1);
        let fail = |key: &str, reason: &str| {
            Err(ProfileError::BadValue { key: key.into(), value: String::new(), reason: reason.into() })
        };
        for (key, frac) in [
            ("edge_loss_frac", self.edge_loss_frac),
            ("y_frac", self.y_frac),
            ("peel_delta_frac", self.peel_delta_frac),
        ] {
            if frac <= zero || frac >= one {
                return fail(key, "must lie strictly between 0 and 1");
            }
        }
        for (key, f) in [
            ("density_factor", self.density_factor),
            ("duchet_factor", self.duchet_factor),
            ("z_degree_factor", self.z_degree_factor),
            ("component_size_factor", self.component_size_factor),
            ("molloy_factor", self.molloy_factor),
            ("small_clique_c", self.small_clique_c),
        ] {
            if f <= zero {
                return fail(key, "must be positive");
            }
        }
        if self.peel_r <= Rational::from_integer(2) {
            return fail("peel_r", "must exceed 2");
        }
        if self.global_c.is_some_and(|c| c <= zero) {
            return fail("global_c", "must be positive");
        }
        if self.largechi_need == 0 || !(self.kostochka_factor > 0.0) {
            return fail("largechi_need", "factors must be positive");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_and_overrides() {
        let mut p = ConstantsProfile::named("desk-small", None).unwrap();
        assert_eq!(p.global_c().unwrap(), Rational::from_integer(2));
        assert!(matches!(ConstantsProfile::paper().global_c(), Err(ProfileError::Symbolic { .. })));
        p.set("peel_r", "7/2").unwrap();
        assert_eq!(p.peel_r, Rational::new(7, 2));
        assert_eq!(p.name, "desk-small+peel_r");
        assert!(p.set("peel_r", "2").is_err());
        assert!(p.set("y_frac", "3/2").is_err());
        assert!(p.set("nonsense", "1").is_err());
        assert!(ConstantsProfile::named("huge", None).is_err());
    }

    #[test]
    fn json_round_trip_and_directory() {
        let dir = tempfile::tempdir().unwrap();
        let mut p = ConstantsProfile::desk_medium();
        p.name = "mine".into();
        std::fs::write(dir.path().join("mine.json"), serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(ConstantsProfile::named("mine", Some(dir.path())).unwrap(), p);
    }
}
