//! DIMACS `.col` reader (`p edge n m` header, `e u v` lines, 1-indexed).

use thiserror::Error;

use super::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimacsError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `p edge` header")]
    MissingHeader,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub fn parse(text: &str) -> Result<Graph, DimacsError> {
    let mut n = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let syntax = |message: &str| DimacsError::Syntax { line, message: message.to_string() };
        let mut fields = raw.split_whitespace();
        match fields.next() {
            None | Some("c") => {}
            Some("p") => {
                let _format = fields.next().ok_or_else(|| syntax("incomplete p line"))?;
                let count: usize =
                    fields.next().and_then(|f| f.parse().ok()).ok_or_else(|| syntax("bad vertex count"))?;
                n = Some(count);
            }
            Some("e") => {
                let count = n.ok_or(DimacsError::MissingHeader)?;
                let mut endpoint = || -> Result<usize, DimacsError> {
                    let v: usize =
                        fields.next().and_then(|f| f.parse().ok()).ok_or_else(|| syntax("bad edge endpoint"))?;
                    if v == 0 || v > count {
                        return Err(syntax("edge endpoint out of range"));
                    }
                    Ok(v - 1)
                };
                let u = endpoint()?;
                let v = endpoint()?;
                edges.push((u, v));
            }
            Some(_) => return Err(syntax("unrecognised line")),
        }
    }
    let n = n.ok_or(DimacsError::MissingHeader)?;
    Ok(Graph::build(n, &edges)?)
}
