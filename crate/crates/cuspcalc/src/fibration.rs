//! ℙ¹-fibration arithmetic on divisor graphs: solving fiber multiplicities,
//! the `κ(K + ½D) = −∞` witnesses of the seven families, and the counting
//! identity for fibrations of a surface with boundary.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::cusp::{assemble_curve, CurveConfiguration, CuspError, Family, TypeSpec};
use crate::graphcore::{intersection_form, structure_unchecked, DivisorGraph, GraphError, VId};
use crate::linalg;

#[derive(Debug, Error)]
pub enum FibrationError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Cusp(#[from] CuspError),
    /// A named clause of the witness check failed.
    #[error("{clause}: {detail}")]
    Clause { clause: &'static str, detail: String },
}

fn fail(clause: &'static str, detail: impl Into<String>) -> FibrationError {
    FibrationError::Clause { clause, detail: detail.into() }
}

/// Primitive positive multiplicities `μ` with `(Σ μ_V V)·W = 0` for every `W`
/// in `support`, provided the restricted form has a one-dimensional kernel
/// spanned by a positive vector.  `F² = 0` holds by construction and is
/// checked anyway.
pub fn fiber_solve(g: &DivisorGraph, support: &[VId]) -> Option<BTreeMap<VId, u64>> {
    if support.is_empty() || g.components_of(support).len() != 1 {
        return None;
    }
    let m = intersection_form(g, support).ok()?;
    let kernel = linalg::kernel(&linalg::to_rational(&m), support.len());
    let [v] = &kernel[..] else { return None };
    let mut p = linalg::primitive_integer(v);
    if p.iter().all(|x| !x.is_positive()) {
        p.iter_mut().for_each(|x| *x = -x.clone());
    }
    if !p.iter().all(|x| x.is_positive()) {
        return None;
    }
    let q: Vec<BigRational> = p.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    if !linalg::bilinear(&m, &q, &q).is_zero() {
        return None;
    }
    Some(support.iter().zip(&p).map(|(&s, x)| (s, x.to_u64().expect("small multiplicity"))).collect())
}

/// A fiber class certifying the hypothesis of the `κ(K + ½D) = −∞`
/// criterion: `F·D = 4` and a horizontal (−2)-twig of `D`.
#[derive(Clone, Debug, Serialize)]
pub struct FiberWitness {
    pub spec: TypeSpec,
    /// Fiber components in chain order; curves outside `D` are included.
    pub support: Vec<String>,
    /// `−V²` along `support`.
    pub support_types: Vec<i64>,
    /// Curves of `support` not in `D`.
    pub added_curves: Vec<String>,
    pub multiplicities: BTreeMap<String, u64>,
    /// `(horizontal component, fiber component, contribution to F·H)`.
    pub horizontal_meeting: Vec<(String, String, i64)>,
    pub f_dot_d: i64,
    pub f_squared: i64,
    pub horizontal_neg2_twig: Vec<String>,
}

impl FiberWitness {
    pub fn multiplicity(&self, name: &str) -> Option<u64> {
        self.multiplicities.get(name).copied()
    }
}

/// The log-resolution component of cusp `j` adjacent to `C′_j` that is a tip.
fn tip_at_c_prime(cfg: &CurveConfiguration, j: usize) -> Option<VId> {
    let cp = *cfg.log_ids[j].last()?;
    let own: BTreeSet<VId> = cfg.log_ids[j].iter().copied().collect();
    cfg.log.neighbors(cp).into_iter().map(|(u, _)| u).find(|u| own.contains(u) && cfg.log.beta(*u) == 1)
}

/// Shortest path from `a` to `b` inside `within`.
fn path(g: &DivisorGraph, within: &BTreeSet<VId>, a: VId, b: VId) -> Option<Vec<VId>> {
    let mut prev: BTreeMap<VId, VId> = BTreeMap::new();
    let mut queue = VecDeque::from([a]);
    let mut seen = BTreeSet::from([a]);
    while let Some(v) = queue.pop_front() {
        if v == b {
            let mut out = vec![b];
            while let Some(&p) = prev.get(out.last().expect("nonempty")) {
                out.push(p);
            }
            out.reverse();
            return Some(out);
        }
        for (u, _) in g.neighbors(v) {
            if within.contains(&u) && seen.insert(u) {
                prev.insert(u, v);
                queue.push_back(u);
            }
        }
    }
    None
}

/// The chain `−V²` of the support the witness is built on.
pub fn expected_support_types(spec: &TypeSpec) -> Option<Vec<i64>> {
    let g = spec.param.unwrap_or(0) as i64;
    let twos = |n: i64| vec![2; n.max(0) as usize];
    Some(match spec.family {
        Family::Q3 | Family::Q4 => vec![0],
        Family::FE => [vec![2, 1, 3, 3], twos(g - 4), vec![1, g - 2]].concat(),
        Family::H => [vec![2, 1, 3, 2, 3], twos(g - 2), vec![1, g]].concat(),
        Family::FZ2 => [vec![1, 4], twos(g - 3), vec![1, g - 1, 3], twos(g - 3), vec![1]].concat(),
        Family::I | Family::J => vec![2, 1, 3, 1],
    })
}

/// Builds the support on the log resolution (adding the curves the
/// construction needs) and returns the augmented graph with the chain.
fn build_support(
    cfg: &CurveConfiguration,
    family: Family,
) -> Result<(DivisorGraph, Vec<VId>, Vec<VId>), FibrationError> {
    let mut g = cfg.log.clone();
    let first = |j: usize| cfg.log_id(j, 0);
    let c_prime = |j: usize| *cfg.log_ids[j].last().expect("cusp has components");
    let own = |j: usize| -> BTreeSet<VId> { cfg.log_ids[j].iter().copied().collect() };
    let no = |what: &str| fail("support", what.to_string());
    match family {
        Family::Q3 | Family::Q4 => {
            // Proper transform of a generic line through the cusp of
            // multiplicity 2 listed first: it meets the first exceptional
            // curve once and the curve in the remaining `deg − 2` points.
            let mult = cfg.cusps[0].seq.multiplicity();
            let l = g.add_vertex(Some("L".into()), 0)?;
            g.add_edge(l, first(0), 1)?;
            g.add_edge(l, cfg.e, cfg.deg as i64 - mult as i64)?;
            Ok((g, vec![l], vec![l]))
        }
        Family::FE | Family::H => {
            let a = g.add_vertex(Some("A".into()), -1)?;
            g.add_edge(a, first(1), 1)?;
            g.add_edge(a, first(0), 1)?;
            let tip = tip_at_c_prime(cfg, 1).ok_or_else(|| no("no tip at C′ of the second cusp"))?;
            let p = path(&g, &own(1), c_prime(1), first(1)).ok_or_else(|| no("no path to the first component"))?;
            let chain = [vec![tip], p, vec![a, first(0)]].concat();
            Ok((g, chain, vec![a]))
        }
        Family::FZ2 => {
            let a = g.add_vertex(Some("A".into()), -1)?;
            g.add_edge(a, first(0), 1)?;
            g.add_edge(a, first(1), 1)?;
            let c0 = cfg.log_id(0, cfg.cusps[0].c);
            let p1 = path(&g, &own(1), c_prime(1), first(1)).ok_or_else(|| no("no path in the second cusp"))?;
            let p0 = path(&g, &own(0), first(0), c0).ok_or_else(|| no("no path in the first cusp"))?;
            // The twig of Q₀ hanging off C₀ away from the first component.
            let rest: BTreeSet<VId> = own(0).into_iter().filter(|v| !p0.contains(v) && *v != c_prime(0)).collect();
            let twig_start = g
                .neighbors(c0)
                .into_iter()
                .map(|(u, _)| u)
                .find(|u| rest.contains(u))
                .ok_or_else(|| no("no twig off C of the first cusp"))?;
            let comp: Vec<VId> = rest.iter().copied().collect();
            let piece =
                g.components_of(&comp).into_iter().find(|c| c.contains(&twig_start)).expect("start lies in rest");
            let twig = g.order_chain(&piece, Some(twig_start)).ok_or_else(|| no("twig is not a chain"))?;
            let tip = *twig.last().expect("nonempty");
            let a2 = g.add_vertex(Some("A'".into()), -1)?;
            g.add_edge(a2, tip, 1)?;
            g.add_edge(a2, cfg.e, 1)?;
            let chain = [p1, vec![a], p0, twig, vec![a2]].concat();
            Ok((g, chain, vec![a, a2]))
        }
        Family::I | Family::J => {
            let v2 = tip_at_c_prime(cfg, 1).ok_or_else(|| no("no tip at C′ of the second cusp"))?;
            Ok((g, vec![v2, c_prime(1), cfg.e, c_prime(0)], vec![]))
        }
    }
}

/// The fiber witness of a family member.
pub fn cstst_witness(spec: TypeSpec) -> Result<FiberWitness, FibrationError> {
    let cfg = assemble_curve(&spec)?;
    witness_on(&cfg, spec)
}

/// The fiber witness on an assembled configuration of type `spec`.
pub fn witness_on(cfg: &CurveConfiguration, spec: TypeSpec) -> Result<FiberWitness, FibrationError> {
    let (g, chain, added) = build_support(cfg, spec.family)?;
    let types: Vec<i64> = chain.iter().map(|&v| -g.self_int(v)).collect();
    if chain.len() > 1 && g.order_chain(&chain, Some(chain[0])).as_deref() != Some(&chain[..]) {
        return Err(fail("support is a chain", format!("{:?}", names(&g, &chain))));
    }
    let want = expected_support_types(&spec).expect("every family has a support");
    if types != want {
        return Err(fail("support types", format!("got {types:?}, expected {want:?}")));
    }
    let mu = fiber_solve(&g, &chain).ok_or_else(|| fail("fiber_solve", "no positive fiber on the support"))?;
    let f_dot = |w: VId| -> i64 { mu.iter().map(|(&v, &m)| m as i64 * g.dot(v, w)).sum() };
    let f_squared: i64 = mu.iter().map(|(&v, &m)| m as i64 * f_dot(v)).sum();
    if f_squared != 0 || chain.iter().any(|&v| f_dot(v) != 0) {
        return Err(fail("F·V = 0 on the support", format!("F² = {f_squared}")));
    }
    let support_set: BTreeSet<VId> = chain.iter().copied().collect();
    let boundary: Vec<VId> = cfg.log.ids();
    let horizontal: Vec<VId> =
        boundary.iter().copied().filter(|&v| !support_set.contains(&v) && f_dot(v) > 0).collect();
    let f_dot_d: i64 = boundary.iter().map(|&v| f_dot(v)).sum();
    if f_dot_d != 4 {
        return Err(fail("F·D = 4", format!("F·D = {f_dot_d}")));
    }
    let mut horizontal_meeting = Vec::new();
    for &h in &horizontal {
        for (&v, &m) in &mu {
            let w = g.dot(v, h);
            if w > 0 {
                horizontal_meeting.push((g.label(h), g.label(v), m as i64 * w));
            }
        }
    }
    let rep = structure_unchecked(&cfg.log);
    let twig = rep
        .maximal_neg2_twigs
        .iter()
        .find(|t| t.iter().any(|v| horizontal.contains(v)))
        .ok_or_else(|| fail("horizontal (−2)-twig", "no maximal (−2)-twig has a horizontal component"))?;
    Ok(FiberWitness {
        spec,
        support: names(&g, &chain),
        support_types: types,
        added_curves: names(&g, &added),
        multiplicities: mu.iter().map(|(&v, &m)| (g.label(v), m)).collect(),
        horizontal_meeting,
        f_dot_d,
        f_squared,
        horizontal_neg2_twig: names(&g, twig),
    })
}

fn names(g: &DivisorGraph, v: &[VId]) -> Vec<String> {
    v.iter().map(|&x| g.label(x)).collect()
}

/// `#D_hor + ν + ρ = #D + 2 + Σ(σ − 1)`, where `ν` counts fibers inside
/// `D` and `σ` counts the components off `D` of each remaining fiber.
pub fn fiber_count_identity(dhor: i64, nu: i64, rho: i64, total: i64, sigmas: &[i64]) -> bool {
    let excess: i64 = sigmas.iter().map(|s| s - 1).sum();
    dhor + nu + rho == total + 2 + excess
}
