//! Constructive graph-minor and coloring toolkit.
//!
//! The crate pairs every structural procedure (peeling, contraction,
//! connectivity extraction, linkage rerouting) with a brute-force oracle and
//! an independent certificate checker, so that each output can be verified
//! without trusting the code that produced it.

pub mod bounds;
pub mod catalog;
pub mod certificate;
pub mod cli;
pub mod extract;
pub mod graph;
pub mod linkage;
pub mod model;
pub mod oracles;
pub mod profile;
pub mod verify;

pub use graph::{Graph, GraphError, Subgraph, Vertex};

/// Exact rational used for densities, Hall ratios and thresholds.
pub type Rational = num_rational::Ratio<i64>;

/// Serializes a [`Rational`] as the string `"p/q"` (or `"p"` when integral).
pub mod rational_serde {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use crate::Rational;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse(&text).ok_or_else(|| D::Error::custom(format!("bad rational `{text}`")))
    }

    pub fn parse(text: &str) -> Option<Rational> {
        match text.split_once('/') {
            Some((p, q)) => {
                let p: i64 = p.trim().parse().ok()?;
                let q: i64 = q.trim().parse().ok()?;
                (q != 0).then(|| Rational::new(p, q))
            }
            None => Some(Rational::from_integer(text.trim().parse().ok()?)),
        }
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match r {
                Some(r) => s.serialize_some(&r.to_string()),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|t| parse(&t).ok_or_else(|| D::Error::custom(format!("bad rational `{t}`"))))
                .transpose()
        }
    }
}
