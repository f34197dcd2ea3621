//! Coloring by repeated removal of maximum independent sets, and evaluators
//! for the closed-form chromatic and density bounds.
//!
//! All logarithms are natural. Values that involve a logarithm are computed
//! in double precision and rounded outward (upward) whenever they are
//! compared with an integer.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::oracles::{
    self, full_mask, hadwiger_number, hall_ratio, hall_ratio_lower_bound, max_independent_set_within, OracleError,
    INDEPENDENCE_LIMIT,
};
use crate::profile::ConstantsProfile;
use crate::Rational;

/// Relative error allowed for a double-precision bound before it is
/// rounded; a handful of ulps covers one `ln`, one `sqrt` and a few products.
pub const FLOAT_REL_ERROR: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum BoundError {
    #[error("{bound}: {reason}")]
    Domain { bound: &'static str, reason: String },
    #[error("input `{0}` must be positive")]
    NonPositive(&'static str),
    #[error("hint {hint} is below the certified lower bound {lower} on the Hall ratio")]
    HintTooSmall { hint: Rational, lower: Rational },
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `⌈x⌉` after widening `x` by [`FLOAT_REL_ERROR`], so never below the
/// ceiling of the true value.
pub fn ceil_outward(x: f64) -> u64 {
    (x + x.abs() * FLOAT_REL_ERROR).ceil().max(0.0) as u64
}

/// `⌊x⌋` after widening `x` upward, so never below the floor of the true
/// value.
pub fn floor_outward(x: f64) -> u64 {
    (x + x.abs() * FLOAT_REL_ERROR).floor().max(0.0) as u64
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundValue {
    Exact {
        #[serde(with = "crate::rational_serde")]
        value: Rational,
    },
    Approx {
        value: f64,
        rel_error: f64,
    },
    /// `coefficient × symbol`, where `symbol` names a constant the profile
    /// leaves unspecified.
    Symbolic {
        coefficient: f64,
        rel_error: f64,
        symbol: String,
    },
    /// An integer power of two, reported by its exponent.
    PowerOfTwo {
        exponent: u64,
    },
}

impl BoundValue {
    fn approx(value: f64) -> Self {
        BoundValue::Approx { value, rel_error: FLOAT_REL_ERROR }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            BoundValue::Exact { value } => Some(to_f64(*value)),
            BoundValue::Approx { value, .. } => Some(*value),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub bound: String,
    pub profile: String,
    /// Inputs and the constants actually used, as display strings.
    pub inputs: BTreeMap<String, String>,
    pub value: BoundValue,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub satisfied: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl BoundReport {
    fn new(bound: &str, profile: &ConstantsProfile, value: BoundValue) -> Self {
        Self {
            bound: bound.into(),
            profile: profile.name.clone(),
            inputs: BTreeMap::new(),
            value,
            satisfied: None,
            notes: Vec::new(),
        }
    }

    fn input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.insert(key.into(), value.to_string());
        self
    }

    fn note(mut self, text: &str) -> Self {
        self.notes.push(text.into());
        self
    }
}

// ---------------------------------------------------------------- coloring

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HallColoring {
    /// `colors[v]` for every vertex, colours numbered from 0 in removal order.
    pub colors: Vec<usize>,
    pub classes: Vec<Vec<Vertex>>,
    #[serde(with = "crate::rational_serde")]
    pub rho: Rational,
    /// Whether `rho` was computed exactly rather than supplied.
    pub rho_exact: bool,
    /// `(2 + ln(v/ρ))·ρ`.
    pub bound_value: f64,
    /// Largest integer not exceeding `bound_value`, rounded outward: the
    /// colour count is an integer, so it is at most this.
    pub bound: u64,
}

impl HallColoring {
    pub fn color_count(&self) -> usize {
        self.classes.len()
    }
}

/// `(2 + ln(v/ρ))·ρ` and its integer part. Exact when `v = ρ`; otherwise
/// the value is irrational and its floor is taken after an upward nudge.
pub fn small_graph_bound(v: usize, rho: Rational) -> (f64, u64) {
    let ratio = Rational::from_integer(v as i64) / rho;
    if ratio == Rational::from_integer(1) {
        return (to_f64(rho * 2), (rho * 2).floor().to_integer() as u64);
    }
    let x = (2.0 + to_f64(ratio).ln()) * to_f64(rho);
    (x, floor_outward(x))
}

/// Colours `G` by removing, while at least `ρ` vertices remain, the
/// lexicographically smallest maximum independent set; the fewer than `ρ`
/// vertices left over get one colour each.
///
/// Without a hint `ρ` is computed exactly. A hint is checked against the
/// best certified lower bound available and against every removal step.
pub fn hall_ratio_coloring(g: &Graph, rho_hint: Option<Rational>) -> Result<HallColoring, BoundError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(OracleError::InvalidArgument("colouring the empty graph".into()).into());
    }
    if n > INDEPENDENCE_LIMIT {
        return Err(oracles::too_large("hall_ratio_coloring", n, INDEPENDENCE_LIMIT).into());
    }
    let (rho, rho_exact) = match rho_hint {
        None => (hall_ratio(g)?.rho, true),
        Some(hint) => {
            let lower = hall_ratio_lower_bound(g, 64, 0)?.rho;
            if hint < lower {
                return Err(BoundError::HintTooSmall { hint, lower });
            }
            (hint, false)
        }
    };
    let adj = g.masks().expect("within mask width");
    let mut colors = vec![usize::MAX; n];
    let mut classes: Vec<Vec<Vertex>> = Vec::new();
    let mut alive = full_mask(n);
    while Rational::from_integer(i64::from(alive.count_ones())) >= rho {
        let set = max_independent_set_within(&adj, alive);
        let size = Rational::from_integer(i64::from(set.count_ones()));
        // α(H) ≥ v(H)/ρ for every induced H; a failure certifies ρ(G) > hint
        if size * rho < Rational::from_integer(i64::from(alive.count_ones())) {
            return Err(BoundError::HintTooSmall {
                hint: rho,
                lower: Rational::new(i64::from(alive.count_ones()), i64::from(set.count_ones())),
            });
        }
        let class = oracles::mask_vertices(set);
        for &v in &class {
            colors[v] = classes.len();
        }
        classes.push(class);
        alive &= !set;
    }
    for v in oracles::mask_vertices(alive) {
        colors[v] = classes.len();
        classes.push(vec![v]);
    }
    let (bound_value, bound) = small_graph_bound(n, rho);
    Ok(HallColoring { colors, classes, rho, rho_exact, bound_value, bound })
}

// ---------------------------------------------------------------- formulas

/// Inputs for [`evaluate_bounds`]; each formula is reported when all of its
/// inputs are present.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BoundInputs {
    pub t: Option<u64>,
    /// Clique bound for Molloy's formula (`K_r`-free).
    pub r: Option<u64>,
    pub delta: Option<u64>,
    pub omega: Option<u64>,
    pub k: Option<u64>,
    /// A chromatic number to test against the large-χ threshold.
    pub chi: Option<u64>,
    /// User-supplied value of the small-subgraph ratio `f(G, t)`.
    pub f: Option<f64>,
    /// Argument of the per-subgraph instantiation `14·C·a·ln ln a`.
    pub a: Option<u64>,
    /// Clique bound for the `K_r`-free threshold search.
    pub kr_free_r: Option<u64>,
}

fn loglog_domain(bound: &'static str, name: &str, x: u64) -> Result<(), BoundError> {
    if x < 3 {
        return Err(BoundError::Domain { bound, reason: format!("{name} = {x} < 3 makes ln ln {name} non-positive") });
    }
    Ok(())
}

/// `density_factor · t · √(ln t)`; above this density a `K_t` minor exists.
pub fn density_threshold(t: u64, profile: &ConstantsProfile) -> f64 {
    to_f64(profile.density_factor) * t as f64 * (t as f64).ln().sqrt()
}

/// `duchet_factor · (t − 1)`.
pub fn duchet_meyniel_bound(t: u64, profile: &ConstantsProfile) -> Rational {
    profile.duchet_factor * Rational::from_integer(t as i64 - 1)
}

/// `molloy_factor · r · Δ · ln ln Δ / ln Δ`.
pub fn molloy_bound(r: u64, delta: u64, profile: &ConstantsProfile) -> f64 {
    let d = delta as f64;
    to_f64(profile.molloy_factor) * r as f64 * d * d.ln().ln() / d.ln()
}

/// `C · ω · t · ln ln t / √(ln t)`.
pub fn small_clique_rho_bound(omega: u64, t: u64, profile: &ConstantsProfile) -> f64 {
    let lt = (t as f64).ln();
    to_f64(profile.small_clique_c) * omega as f64 * t as f64 * lt.ln() / lt.sqrt()
}

/// `√(ln t) / (ln ln t)²` as a function of `x = ln t`.
fn kr_threshold_at(x: f64) -> f64 {
    x.sqrt() / (x.ln() * x.ln())
}

/// Least exponent `e` with `t = 2^e` satisfying `r ≤ √(ln t)/(ln ln t)²`,
/// searched where that function is increasing (`ln t ≥ e⁴`).
pub fn kr_free_threshold_exponent(r: u64) -> u64 {
    let ln2 = std::f64::consts::LN_2;
    let floor = ((4.0f64).exp() / ln2).ceil() as u64;
    let ok = |e: u64| kr_threshold_at(e as f64 * ln2) >= r as f64;
    if ok(floor) {
        return floor;
    }
    let mut lo = floor;
    let mut hi = floor * 2;
    while !ok(hi) {
        lo = hi;
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

fn positive(name: &'static str, v: Option<u64>) -> Result<Option<u64>, BoundError> {
    match v {
        Some(0) => Err(BoundError::NonPositive(name)),
        other => Ok(other),
    }
}

/// One report per formula whose inputs are present.
pub fn evaluate_bounds(inputs: &BoundInputs, profile: &ConstantsProfile) -> Result<Vec<BoundReport>, BoundError> {
    let t = positive("t", inputs.t)?;
    let r = positive("r", inputs.r)?;
    let delta = positive("delta", inputs.delta)?;
    let omega = positive("omega", inputs.omega)?;
    let k = positive("k", inputs.k)?;
    let chi = positive("chi", inputs.chi)?;
    let a = positive("a", inputs.a)?;
    let kr = positive("kr_free_r", inputs.kr_free_r)?;
    if inputs.f.is_some_and(|f| !(f >= 0.0) || !f.is_finite()) {
        return Err(BoundError::NonPositive("f"));
    }
    let tech_c = profile.opaque.get("tech").cloned().flatten().and_then(|c| crate::rational_serde::parse(&c));
    let with_c = |bound: &str, coefficient: f64, power: i32| -> BoundReport {
        match tech_c {
            Some(c) => BoundReport::new(bound, profile, BoundValue::approx(coefficient * to_f64(c).powi(power)))
                .input("tech", c),
            None => BoundReport::new(
                bound,
                profile,
                BoundValue::Symbolic {
                    coefficient,
                    rel_error: FLOAT_REL_ERROR,
                    symbol: if power == 1 { "C".into() } else { format!("C^{power}") },
                },
            )
            .note("scale constant is symbolic in this profile"),
        }
    };

    let mut out = Vec::new();
    if let Some(t) = t {
        out.push(
            BoundReport::new("density_threshold", profile, BoundValue::approx(density_threshold(t, profile)))
                .input("t", t)
                .input("density_factor", profile.density_factor),
        );
        out.push(
            BoundReport::new("duchet_meyniel", profile, BoundValue::Exact { value: duchet_meyniel_bound(t, profile) })
                .input("t", t)
                .input("duchet_factor", profile.duchet_factor),
        );
        loglog_domain("hadwiger_coloring", "t", t)?;
        let tf = t as f64;
        out.push(with_c("hadwiger_coloring", 15.0 * tf * tf.ln().ln(), 2).input("t", t));
        if let Some(f) = inputs.f {
            out.push(with_c("tech", tf * (1.0 + f), 1).input("t", t).input("f", f));
        }
        if let Some(omega) = omega {
            loglog_domain("small_clique_rho", "t", t)?;
            out.push(
                BoundReport::new(
                    "small_clique_rho",
                    profile,
                    BoundValue::approx(small_clique_rho_bound(omega, t, profile)),
                )
                .input("t", t)
                .input("omega", omega)
                .input("small_clique_c", profile.small_clique_c),
            );
        }
    }
    if let (Some(r), Some(delta)) = (r, delta) {
        loglog_domain("molloy", "delta", delta)?;
        if r < 4 {
            return Err(BoundError::Domain { bound: "molloy", reason: format!("r = {r} < 4") });
        }
        out.push(
            BoundReport::new("molloy", profile, BoundValue::approx(molloy_bound(r, delta, profile)))
                .input("r", r)
                .input("delta", delta)
                .input("molloy_factor", profile.molloy_factor),
        );
    }
    if let Some(k) = k {
        let need = Rational::from_integer((profile.largechi_need * k) as i64);
        let mut rep = BoundReport::new("large_chi_threshold", profile, BoundValue::Exact { value: need })
            .input("k", k)
            .input("largechi_need", profile.largechi_need);
        if let Some(chi) = chi {
            rep = rep.input("chi", chi);
            rep.satisfied = Some(chi >= profile.largechi_need * k);
            if chi >= profile.largechi_need * k {
                let kept = chi as i64 - (profile.largechi_loss * k) as i64;
                out.push(rep);
                rep = BoundReport::new(
                    "large_chi_guarantee",
                    profile,
                    BoundValue::Exact { value: Rational::from_integer(kept) },
                )
                .input("k", k)
                .input("chi", chi)
                .input("largechi_loss", profile.largechi_loss);
            }
        }
        out.push(rep);
    }
    if let Some(a) = a {
        loglog_domain("small_subgraph_chi", "a", a)?;
        let af = a as f64;
        out.push(with_c("small_subgraph_chi", 14.0 * af * af.ln().ln(), 1).input("a", a));
    }
    if let Some(r) = kr {
        out.push(
            BoundReport::new(
                "kr_free_threshold",
                profile,
                BoundValue::PowerOfTwo { exponent: kr_free_threshold_exponent(r) },
            )
            .input("r", r)
            .note("least power of two on the increasing branch ln t >= e^4"),
        );
    }
    Ok(out)
}

// ---------------------------------------------------------------- checkers

/// `ρ(G) ≤ 2h` with `h` the Hadwiger number, so `G` has no `K_{h+1}` minor.
pub fn check_duchet_meyniel(g: &Graph, profile: &ConstantsProfile) -> Result<BoundReport, BoundError> {
    let rho = hall_ratio(g)?.rho;
    let h = hadwiger_number(g)?.h as u64;
    let bound = duchet_meyniel_bound(h + 1, profile);
    let mut rep = BoundReport::new("duchet_meyniel", profile, BoundValue::Exact { value: bound })
        .input("rho", rho)
        .input("h", h)
        .input("t", h + 1)
        .input("duchet_factor", profile.duchet_factor);
    rep.satisfied = Some(rho <= bound);
    Ok(rep)
}

/// `e ≤ C·t·√(ln t)·√(|S||T|) + (t−2)·v` on the bipartite graph `G(S,T)`,
/// with `t = max(h(G(S,T)) + 1, 3)`. Also reports the least `C` that works.
pub fn check_bipartite_minor_bound(
    g: &Graph,
    s: &[Vertex],
    t_side: &[Vertex],
    c: Rational,
    profile: &ConstantsProfile,
) -> Result<BoundReport, BoundError> {
    if c < Rational::from_integer(0) {
        return Err(BoundError::NonPositive("C"));
    }
    let sub = g.bipartite(s, t_side).map_err(|e| OracleError::InvalidArgument(e.to_string()))?;
    let bip = &sub.graph;
    let v = bip.vertex_count() as u64;
    let e = bip.edge_count() as u64;
    let h = if v == 0 { 0 } else { hadwiger_number(bip)?.h as u64 };
    let t = (h + 1).max(3);
    let linear = (t - 2) * v;
    let scale = t as f64 * (t as f64).ln().sqrt() * ((s.len() * t_side.len()) as f64).sqrt();
    let bound = to_f64(c) * scale + linear as f64;
    let (satisfied, c_min) = if e <= linear {
        (true, 0.0)
    } else {
        let need = (e - linear) as f64;
        (to_f64(c) * scale * (1.0 + FLOAT_REL_ERROR) >= need, need / scale)
    };
    let mut rep = BoundReport::new("bipartite_minor", profile, BoundValue::approx(bound))
        .input("C", c)
        .input("e", e)
        .input("v", v)
        .input("h", h)
        .input("t", t)
        .input("s", s.len())
        .input("t_side", t_side.len())
        .input("c_min", c_min);
    rep.satisfied = Some(satisfied);
    if h + 1 < 3 {
        rep = rep.note("t raised to 3, the smallest value the inequality is stated for");
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::verify::check_coloring;

    fn desk() -> ConstantsProfile {
        ConstantsProfile::desk_small()
    }

    #[test]
    fn coloring_examples() {
        let k5 = hall_ratio_coloring(&complete(5), None).unwrap();
        assert_eq!((k5.color_count(), k5.bound), (5, 10));
        let c5 = hall_ratio_coloring(&cycle(5), None).unwrap();
        assert_eq!((c5.color_count(), c5.bound), (3, 6));
        assert_eq!(check_coloring(&cycle(5), &c5.colors), Ok(3));
        let p = hall_ratio_coloring(&petersen(), None).unwrap();
        assert_eq!(p.rho, Rational::new(5, 2));
        assert_eq!(p.bound, 8);
        assert!(p.color_count() <= 4);
        assert!(check_coloring(&petersen(), &p.colors).is_ok());
    }

    #[test]
    fn hints() {
        let ok = hall_ratio_coloring(&cycle(5), Some(Rational::from_integer(3))).unwrap();
        assert!(!ok.rho_exact);
        assert!(matches!(
            hall_ratio_coloring(&complete(5), Some(Rational::from_integer(2))),
            Err(BoundError::HintTooSmall { .. })
        ));
    }

    #[test]
    fn coloring_bound_on_random_graphs() {
        use crate::graph::generate::Family;
        use crate::oracles::chromatic_number;
        for seed in 0..60 {
            let g = Family::Gnp { n: 4 + seed as usize % 9, p: 0.5 }.generate(seed).unwrap();
            let c = hall_ratio_coloring(&g, None).unwrap();
            assert!(check_coloring(&g, &c.colors).is_ok());
            assert!(c.color_count() as u64 <= c.bound);
            assert!(chromatic_number(&g).unwrap().chi <= c.color_count());
        }
    }

    #[test]
    fn formula_examples() {
        let p = ConstantsProfile::paper();
        assert!((density_threshold(5, &p) - 190.29).abs() < 0.01);
        assert_eq!(duchet_meyniel_bound(6, &p), Rational::from_integer(10));
        let m = molloy_bound(4, 1000, &p);
        let direct = 200.0 * 4.0 * 1000.0 * (1000f64).ln().ln() / (1000f64).ln();
        assert_eq!(m, direct);
        let reps =
            evaluate_bounds(&BoundInputs { t: Some(6), k: Some(2), chi: Some(20), ..Default::default() }, &p).unwrap();
        let dm = reps.iter().find(|r| r.bound == "duchet_meyniel").unwrap();
        assert_eq!(dm.value, BoundValue::Exact { value: Rational::from_integer(10) });
        let g = reps.iter().find(|r| r.bound == "large_chi_guarantee").unwrap();
        assert_eq!(g.value, BoundValue::Exact { value: Rational::from_integer(8) });
        assert!(reps.iter().all(|r| r.profile == "paper"));
        assert!(matches!(
            evaluate_bounds(&BoundInputs { t: Some(2), ..Default::default() }, &p),
            Err(BoundError::Domain { .. })
        ));
        assert!(matches!(
            evaluate_bounds(&BoundInputs { t: Some(0), ..Default::default() }, &p),
            Err(BoundError::NonPositive("t"))
        ));
    }

    #[test]
    fn density_threshold_is_monotone() {
        let p = ConstantsProfile::paper();
        for t in 2..2000 {
            assert!(density_threshold(t + 1, &p) > density_threshold(t, &p));
        }
    }

    #[test]
    fn kr_threshold_is_least_on_branch() {
        for r in 1..4 {
            let e = kr_free_threshold_exponent(r);
            let ln2 = std::f64::consts::LN_2;
            assert!(kr_threshold_at(e as f64 * ln2) >= r as f64);
            let floor = ((4.0f64).exp() / ln2).ceil() as u64;
            assert!(e == floor || kr_threshold_at((e - 1) as f64 * ln2) < r as f64);
        }
    }

    #[test]
    fn duchet_meyniel_examples() {
        for g in [complete(5), petersen(), cycle(7)] {
            assert_eq!(check_duchet_meyniel(&g, &desk()).unwrap().satisfied, Some(true));
        }
        let c7 = check_duchet_meyniel(&cycle(7), &desk()).unwrap();
        assert_eq!(c7.inputs["rho"], "7/3");
        assert_eq!(c7.value, BoundValue::Exact { value: Rational::from_integer(6) });
    }

    #[test]
    fn bipartite_examples() {
        let zero = Rational::from_integer(0);
        let k33 = complete_bipartite(3, 3);
        let rep = check_bipartite_minor_bound(&k33, &[0, 1, 2], &[3, 4, 5], zero, &desk()).unwrap();
        assert_eq!((rep.inputs["h"].as_str(), rep.inputs["t"].as_str()), ("4", "5"));
        assert_eq!(rep.satisfied, Some(true));
        let star = complete_bipartite(1, 5);
        let rep = check_bipartite_minor_bound(&star, &[0], &[1, 2, 3, 4, 5], zero, &desk()).unwrap();
        assert_eq!((rep.inputs["t"].as_str(), rep.satisfied), ("3", Some(true)));
        let empty = Graph::empty(4);
        let rep = check_bipartite_minor_bound(&empty, &[0, 1], &[2, 3], zero, &desk()).unwrap();
        assert_eq!(rep.satisfied, Some(true));
        // K_{6,6} at C = 0: h = 7 ⇒ t = 8, e = 36 ≤ 6·12 holds; a dense
        // bipartite graph with few vertices needs C > 0 only when e > (t-2)v
        let k66 = complete_bipartite(6, 6);
        let s: Vec<usize> = (0..6).collect();
        let t: Vec<usize> = (6..12).collect();
        assert_eq!(check_bipartite_minor_bound(&k66, &s, &t, zero, &desk()).unwrap().satisfied, Some(true));
    }
}
