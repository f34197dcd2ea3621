//! Serialized certificates and their host-bound verification.
//!
//! ```json
//! {"kind": "coloring", "host_hash": "<sha256 of graph6>", "host_graph6": "D~{", "payload": {...}}
//! ```
//!
//! The host hash is the SHA-256 of the graph6 encoding of the labelled host,
//! so a certificate can only be checked against the graph whose vertex
//! labels it refers to. `host_graph6` is optional; when present it is used
//! if no host is supplied, after its own hash is checked.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::graph::{graph6, Graph, Vertex};
use crate::model::{CoredModel, Linkage, MinorModel};
use crate::oracles::chromatic_number;
use crate::verify;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "snake_case")]
pub enum Payload {
    /// `colors[v]` for every vertex; `claimed` is the advertised count.
    Coloring {
        colors: Vec<usize>,
        claimed: Option<usize>,
    },
    IndependentSet {
        vertices: Vec<Vertex>,
    },
    MinorModel {
        model: MinorModel,
    },
    CoredModel {
        cored: CoredModel,
    },
    /// Without `sides`, `separator` must disconnect the host; with them it
    /// must separate the two sets.
    Separator {
        separator: Vec<Vertex>,
        sides: Option<(Vec<Vertex>, Vec<Vertex>)>,
    },
    PathSystem {
        linkage: Linkage,
    },
    /// Disjoint sets whose induced subgraphs both have chromatic number at
    /// least `χ(G) - s`.
    SeparabilityWitness {
        first: Vec<Vertex>,
        second: Vec<Vertex>,
        s: usize,
    },
    /// `G[vertices]` is `k`-connected.
    Connectivity {
        vertices: Vec<Vertex>,
        k: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub host_hash: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub host_graph6: Option<String>,
    #[serde(flatten)]
    pub payload: Payload,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Valid,
    Invalid { reasons: Vec<String> },
    WrongHost { expected: String, found: Option<String> },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("cannot parse certificate: {0}")]
    Json(#[from] serde_json::Error),
}

pub fn host_hash(g: &Graph) -> String {
    hex::encode(Sha256::digest(graph6::encode(g).as_bytes()))
}

impl Certificate {
    pub fn new(host: &Graph, payload: Payload, embed_host: bool) -> Self {
        Self { host_hash: host_hash(host), host_graph6: embed_host.then(|| graph6::encode(host)), payload }
    }

    pub fn parse(text: &str) -> Result<Self, CertificateError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Checks the certificate against `host`, or against the embedded host
    /// when none is given.
    pub fn verify(&self, host: Option<&Graph>) -> Verdict {
        let embedded;
        let g = match host {
            Some(g) => g,
            None => match self.host_graph6.as_deref().map(graph6::decode_str) {
                Some(Ok(g)) => {
                    embedded = g;
                    &embedded
                }
                Some(Err(e)) => return Verdict::Invalid { reasons: vec![format!("embedded host: {e}")] },
                None => return Verdict::WrongHost { expected: self.host_hash.clone(), found: None },
            },
        };
        let found = host_hash(g);
        if found != self.host_hash {
            return Verdict::WrongHost { expected: self.host_hash.clone(), found: Some(found) };
        }
        let reasons = self.payload.problems(g);
        if reasons.is_empty() {
            Verdict::Valid
        } else {
            Verdict::Invalid { reasons }
        }
    }
}

fn out_of_range(g: &Graph, vs: &[Vertex]) -> Option<String> {
    vs.iter().find(|&&v| v >= g.vertex_count()).map(|v| format!("vertex {v} is not in the host"))
}

fn debug_all<T: std::fmt::Debug>(items: Vec<T>) -> Vec<String> {
    items.into_iter().map(|x| format!("{x:?}")).collect()
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Coloring { .. } => "coloring",
            Payload::IndependentSet { .. } => "independent_set",
            Payload::MinorModel { .. } => "minor_model",
            Payload::CoredModel { .. } => "cored_model",
            Payload::Separator { .. } => "separator",
            Payload::PathSystem { .. } => "path_system",
            Payload::SeparabilityWitness { .. } => "separability_witness",
            Payload::Connectivity { .. } => "connectivity",
        }
    }

    /// Every reason the payload fails on `g`; empty when it holds.
    pub fn problems(&self, g: &Graph) -> Vec<String> {
        match self {
            Payload::Coloring { colors, claimed } => match verify::check_coloring(g, colors) {
                Err(v) => vec![v.to_string()],
                Ok(used) => match claimed {
                    Some(c) if *c != used => vec![format!("claims {c} colors but uses {used}")],
                    _ => vec![],
                },
            },
            Payload::IndependentSet { vertices } => {
                if let Some(r) = out_of_range(g, vertices) {
                    return vec![r];
                }
                let mut out = Vec::new();
                for (i, &u) in vertices.iter().enumerate() {
                    for &v in &vertices[i + 1..] {
                        if u == v {
                            out.push(format!("vertex {u} listed twice"));
                        } else if g.has_edge(u, v) {
                            out.push(format!("edge {u}-{v} inside the set"));
                        }
                    }
                }
                out
            }
            Payload::MinorModel { model } => debug_all(verify::check_minor_model(g, model)),
            Payload::CoredModel { cored } => {
                let mut out = debug_all(verify::check_minor_model(g, &cored.model));
                if let Some(r) = out_of_range(g, &cored.core).or_else(|| out_of_range(g, &cored.tangent)) {
                    out.push(r);
                    return out;
                }
                let v = verify::check_core_tangent(g, cored);
                for ((i, j), w) in &v.witnesses {
                    if w.is_none() {
                        out.push(format!("no core edge between parts {i} and {j}"));
                    }
                }
                for (i, &hits) in v.tangent_hits.iter().enumerate() {
                    if hits != 1 {
                        out.push(format!("tangent meets part {i} in {hits} vertices"));
                    }
                }
                out
            }
            Payload::Separator { separator, sides } => {
                let mut all = separator.clone();
                if let Some((a, b)) = sides {
                    all.extend(a);
                    all.extend(b);
                }
                if let Some(r) = out_of_range(g, &all) {
                    return vec![r];
                }
                let ok = match sides {
                    Some((a, b)) => verify::separates_sets(g, a, b, separator),
                    None => verify::separates(g, separator),
                };
                if ok {
                    vec![]
                } else {
                    vec!["the separator leaves the sides connected".into()]
                }
            }
            Payload::PathSystem { linkage } => debug_all(verify::check_linkage(g, linkage)),
            Payload::SeparabilityWitness { first, second, s } => {
                let mut both = first.clone();
                both.extend(second);
                if let Some(r) = out_of_range(g, &both) {
                    return vec![r];
                }
                if first.iter().any(|v| second.contains(v)) {
                    return vec!["the two sides overlap".into()];
                }
                let chi = |set: &[Vertex]| -> Result<usize, String> {
                    let sub = g.induced(set).map_err(|e| e.to_string())?;
                    chromatic_number(&sub.graph).map(|c| c.chi).map_err(|e| e.to_string())
                };
                let all: Vec<Vertex> = g.vertices().collect();
                match (chi(&all), chi(first), chi(second)) {
                    (Ok(c), Ok(c1), Ok(c2)) => {
                        let need = c as i64 - *s as i64;
                        let mut out = Vec::new();
                        for (name, got) in [("first", c1), ("second", c2)] {
                            if (got as i64) < need {
                                out.push(format!("{name} side has chromatic number {got} < {need}"));
                            }
                        }
                        out
                    }
                    (a, b, c) => [a, b, c].into_iter().filter_map(Result::err).collect(),
                }
            }
            Payload::Connectivity { vertices, k } => {
                if let Some(r) = out_of_range(g, vertices) {
                    return vec![r];
                }
                let sub = g.induced(vertices).expect("range checked");
                if verify::is_k_connected(&sub.graph, *k) {
                    vec![]
                } else {
                    vec![format!("the induced subgraph is not {k}-connected")]
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn json_shape() {
        let k5 = complete(5);
        let c = Certificate::new(&k5, Payload::IndependentSet { vertices: vec![0] }, true);
        let json = serde_json::to_value(&c).unwrap();
        assert_eq!(json["kind"], "independent_set");
        assert_eq!(json["host_graph6"], "D~{");
        assert_eq!(json["payload"]["vertices"], serde_json::json!([0]));
        assert_eq!(json["host_hash"].as_str().unwrap().len(), 64);
        let back = Certificate::parse(&json.to_string()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn petersen_model_is_valid() {
        let p = petersen();
        let model = MinorModel::new((0..5).map(|i| vec![i, i + 5]).collect());
        let c = Certificate::new(&p, Payload::MinorModel { model }, false);
        assert_eq!(c.verify(Some(&p)), Verdict::Valid);
    }

    #[test]
    fn conflicting_coloring_names_the_edge() {
        let g = cycle(4);
        let c = Certificate::new(&g, Payload::Coloring { colors: vec![0, 1, 1, 0], claimed: None }, true);
        match c.verify(None) {
            Verdict::Invalid { reasons } => assert!(reasons[0].contains("edge (0, 3)"), "{reasons:?}"),
            other => panic!("{other:?}"),
        }
        let ok = Certificate::new(&g, Payload::Coloring { colors: vec![0, 1, 0, 1], claimed: Some(2) }, true);
        assert!(ok.verify(None).is_valid());
    }

    #[test]
    fn wrong_or_absent_host() {
        let c = Certificate::new(&complete(5), Payload::IndependentSet { vertices: vec![0] }, false);
        assert!(matches!(c.verify(None), Verdict::WrongHost { found: None, .. }));
        assert!(matches!(c.verify(Some(&cycle(5))), Verdict::WrongHost { found: Some(_), .. }));
        let mut tampered = Certificate::new(&complete(5), Payload::IndependentSet { vertices: vec![0] }, true);
        tampered.host_graph6 = Some("Dhc".into());
        assert!(matches!(tampered.verify(None), Verdict::WrongHost { .. }));
    }

    #[test]
    fn other_kinds() {
        let p = petersen();
        let cases = [
            (Payload::IndependentSet { vertices: vec![0, 2, 8, 9] }, true),
            (Payload::IndependentSet { vertices: vec![0, 1] }, false),
            (Payload::Separator { separator: vec![1, 4, 5], sides: None }, true),
            (Payload::Separator { separator: vec![1, 4], sides: None }, false),
            (Payload::Separator { separator: vec![1, 4], sides: Some((vec![0], vec![2])) }, false),
            (Payload::Connectivity { vertices: (0..10).collect(), k: 3 }, true),
            (Payload::Connectivity { vertices: (0..10).collect(), k: 4 }, false),
            (Payload::SeparabilityWitness { first: vec![0, 1, 2, 3, 4], second: vec![5, 6, 7, 8, 9], s: 0 }, true),
            (Payload::SeparabilityWitness { first: vec![0, 1], second: vec![5, 7], s: 0 }, false),
            (Payload::PathSystem { linkage: Linkage { pairs: vec![(0, 2)], paths: vec![vec![0, 1, 2]] } }, true),
            (Payload::IndependentSet { vertices: vec![11] }, false),
        ];
        for (payload, valid) in cases {
            let c = Certificate::new(&p, payload.clone(), false);
            assert_eq!(c.verify(Some(&p)).is_valid(), valid, "{payload:?}");
        }
        let k6 = complete(6);
        let cored = CoredModel {
            model: MinorModel::new(vec![vec![0, 1], vec![2, 3], vec![4, 5]]),
            core: (0..6).collect(),
            tangent: vec![0, 2, 4],
        };
        assert!(Certificate::new(&k6, Payload::CoredModel { cored }, true).verify(None).is_valid());
    }
}
