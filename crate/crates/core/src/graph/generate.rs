//! Seeded instance generators.
//!
//! Random families draw from a ChaCha8 stream seeded with the caller's seed.
//! `gnp(n, p)` visits pairs `(u, v)`, `u < v`, in lexicographic order and
//! keeps each one when the next uniform draw in `[0, 1)` is below `p`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{named, Graph};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenerateError {
    #[error("probability {0} is outside [0, 1]")]
    InvalidProbability(f64),
    #[error("{family} needs {requirement}")]
    InvalidSize { family: &'static str, requirement: &'static str },
    #[error("cannot parse generator spec `{0}`")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Complete(usize),
    Cycle(usize),
    Path(usize),
    Petersen,
    Gnp {
        n: usize,
        p: f64,
    },
    DisjointUnion(Vec<Family>),
    /// Cliques of the given sizes sharing one common vertex.
    SharedVertexCliques(Vec<usize>),
    /// Consecutive blocks of `pocket_size` vertices (as many as fit) are
    /// pockets with internal edge probability `pocket_p`; every other pair
    /// is an edge with probability `ambient_p`.
    PlantedDense {
        n: usize,
        pocket_size: usize,
        pocket_p: f64,
        ambient_p: f64,
    },
}

fn check_p(p: f64) -> Result<(), GenerateError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(GenerateError::InvalidProbability(p))
    }
}

impl Family {
    /// Builds the instance. Deterministic for a fixed seed; each member of a
    /// disjoint union gets seed `seed + index`.
    pub fn generate(&self, seed: u64) -> Result<Graph, GenerateError> {
        match self {
            Family::Complete(n) => Ok(named::complete(*n)),
            Family::Cycle(n) => {
                if *n < 3 {
                    return Err(GenerateError::InvalidSize { family: "cycle", requirement: "n >= 3" });
                }
                Ok(named::cycle(*n))
            }
            Family::Path(n) => Ok(named::path(*n)),
            Family::Petersen => Ok(named::petersen()),
            Family::Gnp { n, p } => {
                check_p(*p)?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                Ok(gnp_with(*n, |_, _| *p, &mut rng))
            }
            Family::DisjointUnion(parts) => {
                let graphs = parts
                    .iter()
                    .enumerate()
                    .map(|(i, f)| f.generate(seed.wrapping_add(i as u64)))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Graph::disjoint_union(&graphs))
            }
            Family::SharedVertexCliques(sizes) => {
                if sizes.is_empty() || sizes.contains(&0) {
                    return Err(GenerateError::InvalidSize {
                        family: "shared_vertex_cliques",
                        requirement: "at least one clique, all of positive size",
                    });
                }
                Ok(named::shared_vertex_cliques(sizes))
            }
            Family::PlantedDense { n, pocket_size, pocket_p, ambient_p } => {
                check_p(*pocket_p)?;
                check_p(*ambient_p)?;
                if *n == 0 || *pocket_size == 0 {
                    return Err(GenerateError::InvalidSize {
                        family: "planted_dense",
                        requirement: "n >= 1 and pocket_size >= 1",
                    });
                }
                let pockets = n / pocket_size;
                let pocket_of = |v: usize| {
                    let b = v / pocket_size;
                    (b < pockets).then_some(b)
                };
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                Ok(gnp_with(
                    *n,
                    |u, v| match (pocket_of(u), pocket_of(v)) {
                        (Some(a), Some(b)) if a == b => *pocket_p,
                        _ => *ambient_p,
                    },
                    &mut rng,
                ))
            }
        }
    }
}

fn gnp_with(n: usize, p: impl Fn(usize, usize) -> f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p(u, v) {
                edges.push((u, v));
            }
        }
    }
    Graph::build(n, &edges).expect("generated pairs are in range")
}

/// Spec syntax: `complete:N`, `cycle:N`, `path:N`, `petersen`, `gnp:N:P`,
/// `shared:A,B,...`, `planted:N:POCKET:POCKET_P:AMBIENT_P`, and
/// `union:SPEC+SPEC+...`.
impl FromStr for Family {
    type Err = GenerateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || GenerateError::Parse(s.to_string());
        let (head, rest) = s.split_once(':').unwrap_or((s, ""));
        let args: Vec<&str> = if rest.is_empty() { Vec::new() } else { rest.split(':').collect() };
        let int =
            |i: usize| -> Result<usize, GenerateError> { args.get(i).and_then(|a| a.parse().ok()).ok_or_else(err) };
        let float =
            |i: usize| -> Result<f64, GenerateError> { args.get(i).and_then(|a| a.parse().ok()).ok_or_else(err) };
        let arity = |k: usize| if args.len() == k { Ok(()) } else { Err(err()) };
        match head {
            "complete" => arity(1).and(Ok(Family::Complete(int(0)?))),
            "cycle" => arity(1).and(Ok(Family::Cycle(int(0)?))),
            "path" => arity(1).and(Ok(Family::Path(int(0)?))),
            "petersen" => arity(0).and(Ok(Family::Petersen)),
            "gnp" => arity(2).and(Ok(Family::Gnp { n: int(0)?, p: float(1)? })),
            "shared" => {
                let sizes = rest.split(',').map(|a| a.parse().map_err(|_| err())).collect::<Result<Vec<usize>, _>>()?;
                Ok(Family::SharedVertexCliques(sizes))
            }
            "planted" => arity(4).and(Ok(Family::PlantedDense {
                n: int(0)?,
                pocket_size: int(1)?,
                pocket_p: float(2)?,
                ambient_p: float(3)?,
            })),
            "union" => {
                let parts = rest.split('+').map(str::parse).collect::<Result<Vec<_>, _>>()?;
                if parts.is_empty() {
                    return Err(err());
                }
                Ok(Family::DisjointUnion(parts))
            }
            _ => Err(err()),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Complete(n) => write!(f, "complete:{n}"),
            Family::Cycle(n) => write!(f, "cycle:{n}"),
            Family::Path(n) => write!(f, "path:{n}"),
            Family::Petersen => write!(f, "petersen"),
            Family::Gnp { n, p } => write!(f, "gnp:{n}:{p}"),
            Family::SharedVertexCliques(s) => {
                let list: Vec<String> = s.iter().map(ToString::to_string).collect();
                write!(f, "shared:{}", list.join(","))
            }
            Family::PlantedDense { n, pocket_size, pocket_p, ambient_p } => {
                write!(f, "planted:{n}:{pocket_size}:{pocket_p}:{ambient_p}")
            }
            Family::DisjointUnion(parts) => {
                let list: Vec<String> = parts.iter().map(ToString::to_string).collect();
                write!(f, "union:{}", list.join("+"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(Family::Complete(5).generate(0).unwrap(), named::complete(5));
        let u = Family::DisjointUnion(vec![Family::Complete(5); 3]).generate(0).unwrap();
        assert_eq!((u.vertex_count(), u.edge_count()), (15, 30));
        let a = Family::Gnp { n: 40, p: 0.5 }.generate(7).unwrap();
        let b = Family::Gnp { n: 40, p: 0.5 }.generate(7).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, Family::Gnp { n: 40, p: 0.5 }.generate(8).unwrap());
    }

    #[test]
    fn invalid_parameters() {
        assert_eq!(Family::Gnp { n: 4, p: 1.5 }.generate(0), Err(GenerateError::InvalidProbability(1.5)));
        assert!(Family::Cycle(2).generate(0).is_err());
        assert!(Family::SharedVertexCliques(vec![]).generate(0).is_err());
        assert!("gnp:4".parse::<Family>().is_err());
        assert!("hypercube:3".parse::<Family>().is_err());
    }

    #[test]
    fn parse_display_round_trip() {
        for s in
            ["complete:5", "gnp:40:0.5", "union:complete:5+cycle:5", "planted:80:20:0.9:0.05", "shared:4,4", "petersen"]
        {
            let f: Family = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
    }

    #[test]
    fn planted_pockets_are_denser() {
        let g = Family::PlantedDense { n: 80, pocket_size: 20, pocket_p: 0.9, ambient_p: 0.05 }.generate(1).unwrap();
        let pocket = g.induced(&(0..20).collect::<Vec<_>>()).unwrap();
        assert!(pocket.graph.edge_count() > 150);
        assert!(g.check_invariants());
    }
}
