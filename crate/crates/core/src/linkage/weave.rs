//! Weaving a rooted complete minor into a woven subgraph without losing a
//! linkage of the host.
//!
//! Every path of the linkage that meets `H` is cut at its first and last
//! vertex in `H` (read along the path from `s_i` to `t_i`). Inside `H` the
//! woven property supplies a rooted `K_a` model together with a linkage of
//! those entry and exit points that meets the model only in roots; the
//! outer pieces of the original paths are then glued back on.

use serde::{Deserialize, Serialize};

use super::{in_range, LinkageError};
use crate::graph::{graph6, Graph, Vertex};
use crate::model::{Linkage, MinorModel};
use crate::oracles::{is_woven, woven_instance, OracleError, WeaveOutcome, WovenMode, WovenVerdict};
use crate::verify::{check_linkage, check_minor_model};

/// Evidence that `G[vertices]` is `(a, b')`-woven for every `b' ≤ b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WovenCertificate {
    pub a: usize,
    pub b: usize,
    /// Host vertices of `H`, sorted.
    pub vertices: Vec<Vertex>,
    /// graph6 of `G[vertices]`, binding the certificate to the subgraph.
    pub graph6: String,
    /// Instances checked for each `b' = 0..=b`.
    pub instances: Vec<u64>,
}

impl WovenCertificate {
    /// Certifies by exhaustive search; fails with the first verdict that is
    /// not a proof of wovenness.
    pub fn exhaustive(g: &Graph, vertices: &[Vertex], a: usize, b: usize, budget: u64) -> Result<Self, LinkageError> {
        in_range(g, vertices)?;
        let sub = g.induced(vertices).expect("range checked");
        let mut instances = Vec::new();
        for bb in 0..=b {
            match is_woven(&sub.graph, a, bb, &WovenMode::Exhaustive, budget)? {
                WovenVerdict::Woven { instances: k } => instances.push(k),
                other => return Err(LinkageError::Certificate(format!("({a},{bb}): {other:?}"))),
            }
        }
        Ok(Self { a, b, vertices: sub.to_host, graph6: graph6::encode(&sub.graph), instances })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Weave {
    pub linkage: Linkage,
    pub model: MinorModel,
    /// Indices of the paths that met `H` and were rerouted.
    pub rerouted: Vec<usize>,
    /// `(s'_i, t'_i)` for each rerouted path.
    pub cut_points: Vec<(Vertex, Vertex)>,
}

pub fn weave(
    g: &Graph,
    certificate: &WovenCertificate,
    roots: &[Vertex],
    linkage: &Linkage,
    budget: u64,
) -> Result<Weave, LinkageError> {
    in_range(g, certificate.vertices.iter().chain(roots))?;
    let sub = g.induced(&certificate.vertices).expect("range checked");
    if graph6::encode(&sub.graph) != certificate.graph6 || sub.to_host != certificate.vertices {
        return Err(LinkageError::Certificate("certificate does not match the induced subgraph".into()));
    }
    let violations = check_linkage(g, linkage);
    if !violations.is_empty() {
        return Err(LinkageError::InvalidLinkage(violations));
    }
    let n = g.vertex_count();
    let mut local = vec![usize::MAX; n];
    for (i, &v) in sub.to_host.iter().enumerate() {
        local[v] = i;
    }
    let mut distinct = roots.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if roots.len() != certificate.a || distinct.len() != roots.len() || roots.iter().any(|&r| local[r] == usize::MAX) {
        return Err(LinkageError::BadRoots { expected: certificate.a });
    }

    let mut rerouted = Vec::new();
    let mut cuts = Vec::new();
    for (i, path) in linkage.paths.iter().enumerate() {
        let first = path.iter().position(|&v| local[v] != usize::MAX);
        let last = path.iter().rposition(|&v| local[v] != usize::MAX);
        if let (Some(f), Some(l)) = (first, last) {
            rerouted.push(i);
            cuts.push((f, l));
        }
    }
    if rerouted.len() > certificate.b {
        return Err(LinkageError::Certificate(format!(
            "{} paths meet the subgraph but the certificate covers {}",
            rerouted.len(),
            certificate.b
        )));
    }
    let cut_points: Vec<(Vertex, Vertex)> =
        rerouted.iter().zip(&cuts).map(|(&i, &(f, l))| (linkage.paths[i][f], linkage.paths[i][l])).collect();
    let inner_pairs: Vec<(Vertex, Vertex)> = cut_points.iter().map(|&(s, t)| (local[s], local[t])).collect();
    let inner_roots: Vec<Vertex> = roots.iter().map(|&r| local[r]).collect();

    let (model, inner) = match woven_instance(&sub.graph, &inner_roots, &inner_pairs, budget) {
        WeaveOutcome::Found { model, linkage } => (model, linkage),
        WeaveOutcome::Absent { linkages_tried } => {
            return Err(LinkageError::Counterexample(format!(
                "certified woven subgraph has no rooted model for roots {roots:?} and pairs {cut_points:?} \
                 ({linkages_tried} linkages tried)"
            )))
        }
        WeaveOutcome::Unknown => {
            return Err(OracleError::BudgetExhausted { oracle: "woven_instance".into(), budget }.into())
        }
    };
    let model = model.map_vertices(|v| sub.to_host[v]);

    let mut paths = linkage.paths.clone();
    for ((&i, &(f, l)), inner_path) in rerouted.iter().zip(&cuts).zip(&inner.paths) {
        let old = &linkage.paths[i];
        let mut p = old[..f].to_vec();
        p.extend(inner_path.iter().map(|&v| sub.to_host[v]));
        p.extend_from_slice(&old[l + 1..]);
        paths[i] = p;
    }
    let out = Weave { linkage: Linkage { pairs: linkage.pairs.clone(), paths }, model, rerouted, cut_points };
    let problems = out.violations(g, &certificate.vertices, roots, linkage);
    if !problems.is_empty() {
        return Err(LinkageError::Counterexample(format!("spliced output fails re-verification: {problems:?}")));
    }
    Ok(out)
}

impl Weave {
    /// Re-checks the output against the host: a valid linkage on the same
    /// pairs, a valid `K_a` model rooted at `roots` inside `H`,
    /// `V(P') ∩ V(M) ⊆ R ∩ V(P)` and `V(P') ⊆ V(H) ∪ V(P)`.
    pub fn violations(&self, g: &Graph, h: &[Vertex], roots: &[Vertex], original: &Linkage) -> Vec<String> {
        let mut out = Vec::new();
        if self.linkage.pairs != original.pairs {
            out.push("terminal pairs changed".to_string());
        }
        out.extend(check_linkage(g, &self.linkage).iter().map(|v| format!("linkage: {v:?}")));
        out.extend(check_minor_model(g, &self.model).iter().map(|v| format!("model: {v:?}")));
        if self.model.order() != roots.len() || self.model.roots.as_deref() != Some(roots) {
            out.push("model is not rooted at the requested roots".to_string());
        }
        let old = original.vertices();
        let new = self.linkage.vertices();
        let model = self.model.vertices();
        if let Some(v) = model.iter().find(|v| !h.contains(v)) {
            out.push(format!("model vertex {v} outside the woven subgraph"));
        }
        for v in new.iter().filter(|v| model.binary_search(v).is_ok()) {
            if !(roots.contains(v) && old.binary_search(v).is_ok()) {
                out.push(format!("vertex {v} shared by model and linkage is not a root on the original linkage"));
            }
        }
        if let Some(v) = new.iter().find(|v| !h.contains(v) && old.binary_search(v).is_err()) {
            out.push(format!("new linkage uses vertex {v} outside H and the original linkage"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    const BUDGET: u64 = 1_000_000;

    /// `K6` on 0..6 plus an outside path 6-7-0 ... 3-8-9 and a stray path.
    fn host() -> Graph {
        let mut edges: Vec<(usize, usize)> = complete(6).edges().collect();
        edges.extend([(6, 7), (7, 0), (3, 8), (8, 9), (10, 11), (11, 12), (1, 13), (13, 14)]);
        Graph::build(15, &edges).unwrap()
    }

    #[test]
    fn disjoint_linkage_is_kept() {
        let g = host();
        let cert = WovenCertificate::exhaustive(&g, &(0..6).collect::<Vec<_>>(), 2, 2, BUDGET).unwrap();
        let p = Linkage { pairs: vec![(10, 12)], paths: vec![vec![10, 11, 12]] };
        let w = weave(&g, &cert, &[4, 5], &p, BUDGET).unwrap();
        assert_eq!(w.linkage, p);
        assert!(w.rerouted.is_empty());
        assert!(w.violations(&g, &cert.vertices, &[4, 5], &p).is_empty());
    }

    #[test]
    fn crossing_path_is_rerouted() {
        let g = host();
        let cert = WovenCertificate::exhaustive(&g, &(0..6).collect::<Vec<_>>(), 2, 2, BUDGET).unwrap();
        let p = Linkage { pairs: vec![(6, 9)], paths: vec![vec![6, 7, 0, 1, 2, 3, 8, 9]] };
        let w = weave(&g, &cert, &[1, 4], &p, BUDGET).unwrap();
        assert_eq!(w.cut_points, vec![(0, 3)]);
        assert_eq!(&w.linkage.paths[0][..3], &[6, 7, 0]);
        assert_eq!(&w.linkage.paths[0][w.linkage.paths[0].len() - 3..], &[3, 8, 9]);
        assert!(w.violations(&g, &cert.vertices, &[1, 4], &p).is_empty());
    }

    #[test]
    fn root_on_a_terminal() {
        let g = host();
        let cert = WovenCertificate::exhaustive(&g, &(0..6).collect::<Vec<_>>(), 2, 2, BUDGET).unwrap();
        let p = Linkage { pairs: vec![(6, 9), (14, 2)], paths: vec![vec![6, 7, 0, 3, 8, 9], vec![14, 13, 1, 2]] };
        let w = weave(&g, &cert, &[0, 5], &p, BUDGET).unwrap();
        let shared: Vec<_> = w.linkage.vertices().into_iter().filter(|v| w.model.vertices().contains(v)).collect();
        assert_eq!(shared, vec![0]);
        assert!(w.violations(&g, &cert.vertices, &[0, 5], &p).is_empty());
    }

    #[test]
    fn rejections() {
        let g = host();
        assert!(matches!(
            WovenCertificate::exhaustive(&g, &[6, 7, 0, 1], 2, 1, BUDGET),
            Err(LinkageError::Certificate(_))
        ));
        let cert = WovenCertificate::exhaustive(&g, &(0..6).collect::<Vec<_>>(), 2, 1, BUDGET).unwrap();
        let p = Linkage { pairs: vec![(6, 9)], paths: vec![vec![6, 7, 0, 3, 8, 9]] };
        assert!(matches!(weave(&g, &cert, &[0, 9], &p, BUDGET), Err(LinkageError::BadRoots { expected: 2 })));
        assert!(matches!(weave(&g, &cert, &[0], &p, BUDGET), Err(LinkageError::BadRoots { .. })));
        let two = Linkage { pairs: vec![(6, 9), (14, 2)], paths: vec![vec![6, 7, 0, 3, 8, 9], vec![14, 13, 1, 2]] };
        assert!(matches!(weave(&g, &cert, &[4, 5], &two, BUDGET), Err(LinkageError::Certificate(_))));
        let broken = Linkage { pairs: vec![(6, 9)], paths: vec![vec![6, 0, 3, 8, 9]] };
        assert!(matches!(weave(&g, &cert, &[4, 5], &broken, BUDGET), Err(LinkageError::InvalidLinkage(_))));
        let mut forged = cert.clone();
        forged.vertices = vec![0, 1, 2, 3, 4, 6];
        assert!(matches!(weave(&g, &forged, &[0, 1], &p, BUDGET), Err(LinkageError::Certificate(_))));
    }
}
