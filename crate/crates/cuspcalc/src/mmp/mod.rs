//! The almost minimal model program for `(X₀, ½D₀)`: boundary
//! classification into `Δ`, `Υ`, `Δ±`, `Υ⁰`, `R` and `D♭`, verification of
//! almost log exceptional curves, `ψ`-steps, peeling, the cusp contributions
//! `λ_j`, and scripted replays for the seven families.

mod replay;

pub use replay::{
    emit_dot, replay, script_for, Attachment, Piece, ReplayOutcome, ReplayScript, Role, Stage, TwigRole, Variant,
};

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::birational::{self, BirationalError, ContractionTrace};
use crate::cusp::{CurveConfiguration, CuspError};
use crate::graphcore::{
    self, bark, discriminant, intersection_form, pair, structure_unchecked, DivisorGraph, FormalClass, GraphError,
    RationalDivisor, VId,
};
use crate::linalg;

#[derive(Debug, Error)]
pub enum MmpError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Birational(#[from] BirationalError),
    #[error(transparent)]
    Cusp(#[from] CuspError),
    #[error("curve does not satisfy A² = −1, A·D = 2 in two components: {0}")]
    Precondition(String),
    #[error("not almost log exceptional: {0}")]
    NotAlmostLogExceptional(String),
    #[error("invariant violated after step {0}: {1}")]
    Invariant(usize, String),
    #[error("replay mismatch: {0}")]
    Script(String),
    #[error("peeling failed: {0}")]
    Peel(String),
}

/// The decomposition `D_i = R_i + Υ_i + Δ_i` with its refinements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    /// Maximal (−2)-twigs, each ordered from its tip.
    pub delta: Vec<Vec<VId>>,
    pub upsilon: Vec<VId>,
    pub delta_plus: Vec<Vec<VId>>,
    pub delta_minus: Vec<Vec<VId>>,
    pub upsilon0: Vec<VId>,
    pub r: Vec<VId>,
    /// `D♭ = D − Υ − Δ⁺ − Bk(Δ⁻)`.
    #[serde(skip)]
    pub dflat: RationalDivisor,
}

impl Classification {
    pub fn delta_set(&self) -> BTreeSet<VId> {
        self.delta.iter().flatten().copied().collect()
    }

    pub fn delta_plus_set(&self) -> BTreeSet<VId> {
        self.delta_plus.iter().flatten().copied().collect()
    }

    pub fn delta_minus_set(&self) -> BTreeSet<VId> {
        self.delta_minus.iter().flatten().copied().collect()
    }

    pub fn upsilon_set(&self) -> BTreeSet<VId> {
        self.upsilon.iter().copied().collect()
    }
}

/// Classifies the boundary `d` (a vertex subset of `g`).  Branching numbers
/// are weighted, so the tangency of `E₀` with `C_j` counts `τ_j` times.
pub fn classify_boundary(g: &DivisorGraph, d: &BTreeSet<VId>) -> Result<Classification, MmpError> {
    let ids: Vec<VId> = d.iter().copied().collect();
    let h = g.induced(&ids)?;
    let rep = structure_unchecked(&h);
    let delta = rep.maximal_neg2_twigs;
    let dset: BTreeSet<VId> = delta.iter().flatten().copied().collect();
    let upsilon: Vec<VId> = h
        .ids()
        .into_iter()
        .filter(|&v| {
            if h.self_int(v) != -1 {
                return false;
            }
            let to_delta: i64 = dset.iter().map(|&u| h.weight(v, u)).sum();
            match h.beta(v) {
                3 => to_delta == 1,
                2 => h.neighbors(v).len() == 1,
                _ => false,
            }
        })
        .collect();
    let meets = |piece: &[VId], set: &[VId]| piece.iter().any(|&a| set.iter().any(|&b| h.weight(a, b) > 0));
    let (delta_plus, delta_minus): (Vec<Vec<VId>>, Vec<Vec<VId>>) =
        delta.iter().cloned().partition(|p| meets(p, &upsilon));
    let plus_flat: Vec<VId> = delta_plus.concat();
    let upsilon0: Vec<VId> = upsilon.iter().copied().filter(|&u| !meets(&[u], &plus_flat)).collect();
    let r: Vec<VId> = ids.iter().copied().filter(|v| !dset.contains(v) && !upsilon.contains(v)).collect();

    let mut dflat = RationalDivisor::reduced(&r);
    let minus_flat: Vec<VId> = delta_minus.concat();
    if !minus_flat.is_empty() {
        let bk = bark(&h, &minus_flat)?;
        for &v in &minus_flat {
            dflat.add(v, BigRational::one() - bk.coeff(v));
        }
    }
    Ok(Classification { delta, upsilon, delta_plus, delta_minus, upsilon0, r, dflat })
}

/// A snapshot `(X_i, D_i)` of the program.  `graph` is the boundary `D_i`.
#[derive(Clone, Debug, Serialize)]
pub struct MmpState {
    pub graph: DivisorGraph,
    pub e: VId,
    pub class: Classification,
    /// Index `i` of the snapshot.
    pub i: usize,
    /// Number of non-boundary curves contracted so far.
    pub n: usize,
    /// `ρ(X_i)`.
    pub rho: i64,
}

impl MmpState {
    /// `(X₀, D₀)` of a curve; `ρ(X₀) = #D₀`.
    pub fn initial(cfg: &CurveConfiguration) -> Result<Self, MmpError> {
        let graph = cfg.weak.clone();
        let d: BTreeSet<VId> = graph.ids().into_iter().collect();
        let class = classify_boundary(&graph, &d)?;
        Ok(Self { rho: graph.len() as i64, graph, e: cfg.e, class, i: 0, n: 0 })
    }

    pub fn boundary(&self) -> BTreeSet<VId> {
        self.graph.ids().into_iter().collect()
    }

    /// The boundary with an extra (−1)-curve meeting `meets` once each.
    pub fn with_curve(&self, name: &str, meets: &[VId]) -> Result<(DivisorGraph, VId), MmpError> {
        let mut g = self.graph.clone();
        let a = g.add_vertex(Some(name.to_string()), -1)?;
        for &v in meets {
            g.add_edge(a, v, 1)?;
        }
        Ok((g, a))
    }
}

fn check_bubble(state: &MmpState, meets: &[VId]) -> Result<(), MmpError> {
    let distinct: BTreeSet<VId> = meets.iter().copied().collect();
    if meets.len() != 2 || distinct.len() != 2 {
        return Err(MmpError::Precondition(format!("meets {meets:?}")));
    }
    for &v in meets {
        if !state.graph.contains(v) {
            return Err(MmpError::Precondition(format!("vertex {v} is not in the boundary")));
        }
    }
    Ok(())
}

/// Whether a (−1)-curve meeting the boundary once in each of `meets`
/// satisfies `A·Δ = 1` at a tip of `Δ` and `A·(Υ + Δ⁺) = 0`.
pub fn is_almost_log_exceptional(state: &MmpState, meets: &[VId]) -> Result<bool, MmpError> {
    check_bubble(state, meets)?;
    Ok(ale_failure(state, meets).is_none())
}

fn ale_failure(state: &MmpState, meets: &[VId]) -> Option<String> {
    let g = &state.graph;
    let delta = state.class.delta_set();
    let in_delta: Vec<VId> = meets.iter().copied().filter(|v| delta.contains(v)).collect();
    let [v] = in_delta[..] else {
        return Some(format!("A·Δ = {}", in_delta.len()));
    };
    if g.beta_in(v, &delta) > 1 {
        return Some(format!("{} is not a tip of Δ", g.label(v)));
    }
    let bad: BTreeSet<VId> = state.class.upsilon_set().union(&state.class.delta_plus_set()).copied().collect();
    if let Some(&b) = meets.iter().find(|v| bad.contains(v)) {
        return Some(format!("A meets {} in Υ + Δ⁺", g.label(b)));
    }
    None
}

/// One executed `ψ_i = ψ_{A_i}`.
#[derive(Clone, Debug, Serialize)]
pub struct StepRecord {
    pub index: usize,
    pub a_name: String,
    pub meets: Vec<String>,
    /// `Exc ψ_i` as a chain.
    pub exc_chain: Vec<String>,
    pub exc_ids: Vec<VId>,
    /// The id `A_i` had in the graph the step was run on.
    pub a_id: VId,
    pub trace: ContractionTrace,
}

/// Runs `ψ_A` for the almost log exceptional curve `A` (named `name`,
/// meeting `meets`), reclassifies, and checks the structural properties
/// every step must have.
pub fn mmp_step(state: &MmpState, name: &str, meets: &[VId]) -> Result<(MmpState, StepRecord), MmpError> {
    check_bubble(state, meets)?;
    if let Some(why) = ale_failure(state, meets) {
        return Err(MmpError::NotAlmostLogExceptional(format!("{name}: {why}")));
    }
    let step = state.i + 1;
    let inv = |why: String| MmpError::Invariant(step, why);
    let (g, a) = state.with_curve(name, meets)?;
    let d = state.boundary();
    let (h, trace) = birational::psi_a(&g, &d, a)?;

    let exc = trace.vertices();
    let exc_chain = g.order_chain(&exc, None).ok_or_else(|| inv(format!("Exc is not a chain: {:?}", trace.names())))?;
    let old_rep = structure_unchecked(&state.graph);
    let rest: Vec<VId> = exc.iter().copied().filter(|&v| v != a).collect();
    let mut used = BTreeSet::new();
    for piece in state.graph.components_of(&rest) {
        let hit = old_rep
            .maximal_twigs
            .iter()
            .position(|t| piece.iter().all(|v| t.contains(v)))
            .ok_or_else(|| inv(format!("Exc − A piece {piece:?} is not inside a maximal twig")))?;
        let set: BTreeSet<VId> = old_rep.maximal_twigs[hit].iter().copied().collect();
        used.insert(set.into_iter().collect::<Vec<_>>());
    }
    if used.len() > 2 {
        return Err(inv("Exc − A meets more than two maximal twigs".into()));
    }
    let last = trace.steps.last().expect("A itself is contracted");
    if last.absorbed.len() != 2 || last.absorbed.iter().any(|&(_, w)| w != 1) {
        return Err(inv(format!("image point is not a normal crossing: {:?}", last.absorbed)));
    }

    let new_d: BTreeSet<VId> = h.ids().into_iter().collect();
    let class = classify_boundary(&h, &new_d)?;
    let subset = |a: &BTreeSet<VId>, b: &BTreeSet<VId>| a.is_subset(b);
    if !subset(&state.class.upsilon_set(), &class.upsilon_set()) {
        return Err(inv("Υ is not carried into Υ".into()));
    }
    if !subset(&state.class.delta_plus_set(), &class.delta_plus_set()) {
        return Err(inv("Δ⁺ is not carried into Δ⁺".into()));
    }
    if !subset(&class.delta_set(), &state.class.delta_set()) {
        return Err(inv("Δ has a component that was not in Δ before".into()));
    }
    if !subset(&class.delta_minus_set(), &state.class.delta_minus_set()) {
        return Err(inv("Δ⁻ has a component that was not in Δ⁻ before".into()));
    }
    let r_new: BTreeSet<VId> = class.r.iter().copied().collect();
    let r_old: BTreeSet<VId> = state.class.r.iter().copied().collect();
    if !subset(&r_new, &r_old) {
        return Err(inv("R has a component that was not in R before".into()));
    }
    if class.upsilon.iter().any(|&u| class.upsilon.iter().any(|&w| h.weight(u, w) > 0)) {
        return Err(inv("two components of Υ meet".into()));
    }
    if !r_new.contains(&state.e) {
        return Err(inv("E is not in R".into()));
    }

    let record = StepRecord {
        index: step,
        a_name: name.to_string(),
        meets: meets.iter().map(|&v| state.graph.label(v)).collect(),
        exc_chain: exc_chain.iter().map(|&v| g.label(v)).collect(),
        exc_ids: exc_chain,
        a_id: a,
        trace,
    };
    let next = MmpState { graph: h, e: state.e, class, i: step, n: state.n + 1, rho: state.rho - exc.len() as i64 };
    Ok((next, record))
}

/// `λ_j = τ_j − s_j + #(ψ_*Q_j − ψ_*Q_j ∧ Υ⁰) − b₀(ψ_*Q_j ∧ Δ)` on the
/// final snapshot.  Partial overlaps with `Δ` count connected components of
/// the literal intersection.
pub fn lambda(state: &MmpState, cfg: &CurveConfiguration, j: usize) -> i64 {
    let r = &cfg.cusps[j];
    let q: Vec<VId> = cfg.weak_q(j).into_iter().filter(|&v| state.graph.contains(v)).collect();
    let ups0: BTreeSet<VId> = state.class.upsilon0.iter().copied().collect();
    let delta = state.class.delta_set();
    let outside = q.iter().filter(|v| !ups0.contains(v)).count() as i64;
    let in_delta: Vec<VId> = q.iter().copied().filter(|v| delta.contains(v)).collect();
    let b0 = state.graph.components_of(&in_delta).len() as i64;
    r.tau - r.s + outside - b0
}

/// The value of `λ_j` for an ordinary (1) or semi-ordinary (`1 + t_j`) cusp.
pub fn lambda_semi_ordinary(cfg: &CurveConfiguration, j: usize) -> Option<i64> {
    let r = &cfg.cusps[j];
    r.is_semi_ordinary().then(|| 1 + r.t_count() as i64)
}

/// `τ_j − s_j + #Q_j − b₀(Q_j ∧ Δ₀)`: the value of `λ_j` for a cusp whose
/// exceptional divisor is not touched by `ψ`.
pub fn lambda_untouched(initial: &MmpState, cfg: &CurveConfiguration, j: usize) -> i64 {
    let r = &cfg.cusps[j];
    let q = cfg.weak_q(j);
    let delta = initial.class.delta_set();
    let in_delta: Vec<VId> = q.iter().copied().filter(|v| delta.contains(v)).collect();
    r.tau - r.s + q.len() as i64 - initial.graph.components_of(&in_delta).len() as i64
}

/// Whether every vertex of `ids` survives from `before` to `after` with the
/// same self-intersection and the same incidences.
pub fn untouched(before: &DivisorGraph, after: &DivisorGraph, ids: &[VId]) -> bool {
    ids.iter().all(|&v| {
        after.contains(v) && before.self_int(v) == after.self_int(v) && before.neighbors(v) == after.neighbors(v)
    })
}

/// One entry of an integral pairing table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pairing {
    pub a: String,
    pub b: String,
    pub value: i64,
}

/// One entry of a rational pairing table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalPairing {
    pub a: String,
    pub b: String,
    #[serde(with = "crate::linalg::rational_string")]
    pub value: BigRational,
}

/// Outcome of peeling an almost minimal model.
#[derive(Clone, Debug, Serialize)]
pub struct MinimalModelReport {
    pub n: usize,
    /// `ρ(X_n)`.
    pub rho_n: i64,
    /// Picard rank of the smooth surface `Z` obtained by contracting `Υ + Δ⁺`.
    pub rho_z: i64,
    /// `ρ(X_min)`.
    pub rho_min: i64,
    pub d_min: Vec<String>,
    pub d_min_ids: Vec<VId>,
    /// `Δ⁻` chains (singular points of `X_min`) with their types.
    pub singular_points: Vec<Vec<String>>,
    pub singular_point_types: Vec<Vec<i64>>,
    /// Boundary of `Z`.
    pub z_graph: DivisorGraph,
    /// `K_Z·V` for boundary components of `Z`.
    pub z_k_dot: BTreeMap<VId, i64>,
    pub z_k_squared: i64,
    pub z_pairings: Vec<Pairing>,
    /// Pairings of `D_min` components on `X_min`.
    pub min_pairings: Vec<RationalPairing>,
    pub lambdas: Vec<i64>,
    pub sum_lambda: i64,
    /// `(2K + D♭)²` on `X_n` by direct expansion.
    #[serde(with = "crate::linalg::rational_string")]
    pub two_k_plus_dflat_sq_direct: BigRational,
    /// `7 − Σλ − Σ_T 1/d(T)` over the `Δ⁻` chains.
    #[serde(with = "crate::linalg::rational_string")]
    pub two_k_plus_dflat_sq_formula: BigRational,
}

impl MinimalModelReport {
    /// Intersection number on `Z` of two boundary components.
    pub fn z_dot(&self, a: VId, b: VId) -> i64 {
        self.z_graph.dot(a, b)
    }

    /// Intersection number on `X_min` of two `D_min` components.
    pub fn min_dot(&self, a: VId, b: VId) -> Option<BigRational> {
        let (na, nb) = (self.z_graph.label(a), self.z_graph.label(b));
        self.min_pairings.iter().find(|p| (p.a == na && p.b == nb) || (p.a == nb && p.b == na)).map(|p| p.value.clone())
    }

    /// `#D_min = n + 1` and distinct components of `D_min` meet.
    pub fn d_min_checks(&self) -> bool {
        self.d_min.len() == self.n + 1 && self.min_pairings.iter().filter(|p| p.a != p.b).all(|p| p.value.is_positive())
    }
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `(2K + D♭)²` on `X_n`, expanded with `K² = 10 − ρ(X_n)` and
/// `K·V = −2 − V²` (all boundary components are smooth rational curves).
pub fn two_k_plus_dflat_squared(state: &MmpState) -> BigRational {
    let c = FormalClass { k: int(2), d: state.class.dflat.clone() };
    pair(&state.graph, state.rho, &c, &c)
}

/// Peels `(X_n, D_n)`: contracts `Υ + Δ⁺` to reach `Z`, keeps the `Δ⁻`
/// chains as the singular points of `X_min`, and evaluates the pairings and
/// `(2K + D♭)²` two ways.  The caller asserts that `(X_n, ½D_n)` carries no
/// further almost log exceptional curve.
pub fn peel(state: &MmpState, cfg: &CurveConfiguration) -> Result<MinimalModelReport, MmpError> {
    let mut g = state.graph.clone();
    let mut k_dot: BTreeMap<VId, i64> = g.ids().into_iter().map(|v| (v, -2 - g.self_int(v))).collect();
    let mut k2 = 10 - state.rho;
    let mut pending: BTreeSet<VId> = state.class.upsilon_set().union(&state.class.delta_plus_set()).copied().collect();
    while !pending.is_empty() {
        let v = pending
            .iter()
            .copied()
            .find(|&v| g.self_int(v) == -1)
            .ok_or_else(|| MmpError::Peel(format!("no (−1)-curve among {pending:?}")))?;
        for (u, w) in g.neighbors(v) {
            *k_dot.get_mut(&u).expect("boundary vertex") -= w;
        }
        k2 += 1;
        k_dot.remove(&v);
        g = birational::contract_curve(&g, v)?;
        pending.remove(&v);
    }
    let contracted = state.class.upsilon.len() + state.class.delta_plus_set().len();
    let rho_z = state.rho - contracted as i64;

    let ids = g.ids();
    let mut z_pairings = Vec::new();
    for (i, &a) in ids.iter().enumerate() {
        for &b in &ids[i..] {
            z_pairings.push(Pairing { a: g.label(a), b: g.label(b), value: g.dot(a, b) });
        }
    }

    let minus = state.class.delta_minus.clone();
    let minus_flat: Vec<VId> = minus.concat();
    let r: Vec<VId> = state.class.r.clone();
    let m = linalg::to_rational(&intersection_form(&g, &minus_flat)?);
    let column = |v: VId| -> Vec<BigRational> { minus_flat.iter().map(|&u| int(g.dot(u, v))).collect() };
    let mut min_pairings = Vec::new();
    for (i, &a) in r.iter().enumerate() {
        let ra = column(a);
        let y = if minus_flat.is_empty() {
            Vec::new()
        } else {
            linalg::solve(&m, &ra).ok_or_else(|| MmpError::Peel("Δ⁻ form is singular".into()))?
        };
        for &b in &r[i..] {
            let rb = column(b);
            let corr: BigRational = y.iter().zip(&rb).map(|(p, q)| p * q).sum();
            min_pairings.push(RationalPairing { a: g.label(a), b: g.label(b), value: int(g.dot(a, b)) - corr });
        }
    }

    let lambdas: Vec<i64> = (0..cfg.c()).map(|j| lambda(state, cfg, j)).collect();
    let sum_lambda: i64 = lambdas.iter().sum();
    let mut formula = int(7 - sum_lambda);
    for t in &minus {
        formula -= BigRational::new(BigInt::one(), discriminant(&state.graph, t)?);
    }

    Ok(MinimalModelReport {
        n: state.n,
        rho_n: state.rho,
        rho_z,
        rho_min: rho_z - minus_flat.len() as i64,
        d_min: r.iter().map(|&v| g.label(v)).collect(),
        d_min_ids: r,
        singular_points: minus.iter().map(|t| t.iter().map(|&v| g.label(v)).collect()).collect(),
        singular_point_types: minus.iter().map(|t| g.chain_type(t)).collect(),
        z_k_dot: k_dot,
        z_k_squared: k2,
        z_pairings,
        z_graph: g,
        min_pairings,
        lambdas,
        sum_lambda,
        two_k_plus_dflat_sq_direct: two_k_plus_dflat_squared(state),
        two_k_plus_dflat_sq_formula: formula,
    })
}

/// `K·(K + D)` on the minimal log resolution of a curve.
pub fn log_resolution_k_k_plus_d(cfg: &CurveConfiguration) -> i64 {
    let zero = RationalDivisor::new();
    graphcore::canonical_pairings(&cfg.log, &zero).expect("log resolution ids are valid").k_k_plus_d
}

/// Numerical evidence that `Z` is the Hirzebruch surface `𝔽₂` with the
/// `Δ⁻` component as its negative section.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct F2Certificate {
    pub section: String,
    /// Coefficients of the fiber class `F` on boundary components of `Z`.
    pub fiber_class: Vec<RationalPairing>,
    /// `F·V` for every boundary component `V` of `Z`.
    pub fiber_dot: Vec<Pairing>,
    pub d_z_dot_fiber: i64,
    /// `E·S`, zero when the section misses the image of the curve.
    pub e_dot_section: i64,
}

/// Looks for the fiber class of a ruling of `Z` in the span of `D_Z`: it
/// needs `ρ(Z) = 2`, a single (−2)-curve `S` in `Δ⁻`, a boundary Gram matrix
/// of rank 2, and `F` with `F·S = 1`, `K·F = −2`, `F² = 0` and integral
/// pairings with every boundary component.
pub fn f2_certificate(report: &MinimalModelReport, e: VId) -> Option<F2Certificate> {
    let g = &report.z_graph;
    if report.rho_z != 2 || report.singular_point_types != [vec![2]] {
        return None;
    }
    let s = g.find(&report.singular_points[0][0])?;
    let ids = g.ids();
    let gram = linalg::to_rational(&intersection_form(g, &ids).ok()?);
    if ids.len() - linalg::kernel(&gram, ids.len()).len() != 2 {
        return None;
    }
    let (b1, b2) = ids.iter().enumerate().find_map(|(i, &a)| {
        ids[i + 1..].iter().find(|&&b| g.dot(a, a) * g.dot(b, b) != g.dot(a, b) * g.dot(a, b)).map(|&b| (a, b))
    })?;
    let k = |v: VId| int(report.z_k_dot[&v]);
    let m = vec![vec![int(g.dot(b1, s)), int(g.dot(b2, s))], vec![k(b1), k(b2)]];
    let x = linalg::solve(&m, &[int(1), int(-2)])?;
    let f_dot = |v: VId| &x[0] * int(g.dot(b1, v)) + &x[1] * int(g.dot(b2, v));
    let f_sq = &x[0] * f_dot(b1) + &x[1] * f_dot(b2);
    if !f_sq.is_zero() {
        return None;
    }
    let mut fiber_dot = Vec::new();
    for &v in &ids {
        let d = f_dot(v);
        if !d.is_integer() {
            return None;
        }
        fiber_dot.push(Pairing { a: "F".into(), b: g.label(v), value: i64::try_from(d.to_integer()).ok()? });
    }
    let d_z_dot_fiber = fiber_dot.iter().map(|p| p.value).sum();
    Some(F2Certificate {
        section: g.label(s),
        fiber_class: vec![
            RationalPairing { a: "F".into(), b: g.label(b1), value: x[0].clone() },
            RationalPairing { a: "F".into(), b: g.label(b2), value: x[1].clone() },
        ],
        fiber_dot,
        d_z_dot_fiber,
        e_dot_section: g.dot(e, s),
    })
}
