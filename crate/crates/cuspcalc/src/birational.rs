//! Blowups and blowdowns on divisor graphs.
//!
//! Contractions follow the pushforward rules for a (−1)-curve `L`: every
//! neighbour `A` gains `(A·L)²` in self-intersection and every pair of
//! neighbours `A, B` gains `(A·L)(B·L)` in mutual intersection.  Tangencies
//! and cycles created this way are kept as edge weights.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphcore::{self, DivisorGraph, GraphError, VId};
use crate::linalg;

/// Errors of the birational calculus.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BirationalError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("vertex {0} is not a (-1)-curve")]
    NotMinusOne(String),
    #[error("node center {0}-{1} has no connecting edge")]
    NoNode(VId, VId),
    #[error("chain {0:?} is not contractible to a smooth point with a unique (-1)-curve: {1}")]
    NotContractibleChain(Vec<i64>, String),
    #[error("chain {0:?} must be negative definite with entries >= 2")]
    BadAdjointInput(Vec<i64>),
    #[error("curve {0} is part of the boundary")]
    InBoundary(String),
    #[error("curve {0} must meet the boundary in two distinct components transversally, found {1:?}")]
    BadMeeting(String, Vec<(String, i64)>),
    #[error("fibration obstruction: superfluous curves {0:?} pass through the same point")]
    FibrationObstruction(Vec<String>),
}

/// Where a blowup is centered.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BlowupCenter {
    /// A general point of one curve.
    FreeOnCurve(VId),
    /// An intersection point of two curves.
    Node(VId, VId),
    /// A point off the graph.
    Initial,
}

/// Blows up `c`; the new (−1)-vertex gets the optional name.  Returns the
/// new graph and the new vertex id.
pub fn blow_up_named(
    g: &DivisorGraph,
    c: &BlowupCenter,
    name: Option<String>,
) -> Result<(DivisorGraph, VId), BirationalError> {
    let mut h = g.clone();
    let new = h.add_vertex(name, -1)?;
    match *c {
        BlowupCenter::Initial => {}
        BlowupCenter::FreeOnCurve(v) => {
            if !g.contains(v) {
                return Err(GraphError::UnknownVertex(v).into());
            }
            h.set_self_int(v, g.self_int(v) - 1)?;
            h.add_edge(new, v, 1)?;
        }
        BlowupCenter::Node(v, w) => {
            let cur = g.weight(v, w);
            if v == w || cur < 1 {
                return Err(BirationalError::NoNode(v, w));
            }
            h.set_self_int(v, g.self_int(v) - 1)?;
            h.set_self_int(w, g.self_int(w) - 1)?;
            h.set_weight(v, w, cur - 1)?;
            h.add_edge(new, v, 1)?;
            h.add_edge(new, w, 1)?;
        }
    }
    Ok((h, new))
}

/// Blows up `c` with an unnamed exceptional curve.
pub fn blow_up(g: &DivisorGraph, c: &BlowupCenter) -> Result<(DivisorGraph, VId), BirationalError> {
    blow_up_named(g, c, None)
}

/// One contraction with the incidences it absorbed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionStep {
    pub vertex: VId,
    pub name: String,
    /// Neighbours at contraction time with their intersection numbers.
    pub absorbed: Vec<(String, i64)>,
}

/// Ordered record of contracted (−1)-curves.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionTrace {
    pub steps: Vec<ContractionStep>,
}

impl ContractionTrace {
    /// Number of contracted curves, i.e. the rank of the morphism.
    pub fn rank(&self) -> usize {
        self.steps.len()
    }

    pub fn vertices(&self) -> Vec<VId> {
        self.steps.iter().map(|s| s.vertex).collect()
    }

    pub fn names(&self) -> Vec<String> {
        self.steps.iter().map(|s| s.name.clone()).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("trace serialization is infallible")
    }
}

/// Contracts the (−1)-curve `v`.
pub fn contract_curve(g: &DivisorGraph, v: VId) -> Result<DivisorGraph, BirationalError> {
    contract_recording(g, v).map(|(h, _)| h)
}

fn contract_recording(g: &DivisorGraph, v: VId) -> Result<(DivisorGraph, ContractionStep), BirationalError> {
    if !g.contains(v) {
        return Err(GraphError::UnknownVertex(v).into());
    }
    if g.self_int(v) != -1 {
        return Err(BirationalError::NotMinusOne(g.label(v)));
    }
    let nb = g.neighbors(v);
    let mut h = g.clone();
    h.remove_vertex(v)?;
    for (i, &(a, wa)) in nb.iter().enumerate() {
        h.set_self_int(a, h.self_int(a) + wa * wa)?;
        for &(b, wb) in &nb[i + 1..] {
            h.add_edge(a, b, wa * wb)?;
        }
    }
    let step =
        ContractionStep { vertex: v, name: g.label(v), absorbed: nb.iter().map(|&(a, w)| (g.label(a), w)).collect() };
    Ok((h, step))
}

/// Result of a failed smooth-point contraction test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stuck {
    pub trace: ContractionTrace,
    /// Vertices of the subconfiguration left when no (−1)-curve remained.
    pub residue: Vec<VId>,
}

/// Greedily contracts (−1)-curves inside `s` (and their images).  Succeeds
/// iff all of `s` is consumed.
pub fn contracts_to_smooth_point(g: &DivisorGraph, s: &[VId]) -> Result<ContractionTrace, Stuck> {
    let mut h = match g.induced(s) {
        Ok(h) => h,
        Err(_) => {
            return Err(Stuck { trace: ContractionTrace::default(), residue: s.to_vec() });
        }
    };
    let mut trace = ContractionTrace::default();
    while !h.is_empty() {
        let Some(v) = h.ids().into_iter().find(|&v| h.self_int(v) == -1) else {
            return Err(Stuck { trace, residue: h.ids() });
        };
        let (next, step) = contract_recording(&h, v).expect("v is a (-1)-curve of h");
        trace.steps.push(step);
        h = next;
    }
    Ok(trace)
}

/// Parameters `(l, m, x)` of a contractible chain with a unique (−1)-curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainParams {
    pub l: usize,
    pub m: Vec<usize>,
    pub x: usize,
}

fn twos(n: usize) -> Vec<i64> {
    vec![2; n]
}

/// The two sides of the (−1)-curve, each read outward from it.
///
/// Side "A" starts `m₁+3, (2)_{m₂}, m₃+3, …`; side "B" starts
/// `(2)_{m₁+1}, m₂+3, (2)_{m₃}, …`.  Both stop at index `l`.
fn chain_sides(m: &[usize]) -> (Vec<i64>, Vec<i64>) {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (k, &mi) in m.iter().enumerate() {
        let i = k + 1;
        if i % 2 == 1 {
            a.push(mi as i64 + 3);
            if i == 1 {
                b.extend(twos(mi + 1));
            } else {
                b.extend(twos(mi));
            }
        } else {
            a.extend(twos(mi));
            b.push(mi as i64 + 3);
        }
    }
    (a, b)
}

/// Generates the chain type attached to `(l, m, x)`.
///
/// For odd `l` the side beginning with `m₁+3` lies after the (−1)-curve, for
/// even `l` the side beginning with `(2)_{m₁+1}` does; `(2)_x` closes the
/// chain on that side.
pub fn contractible_chain_form(l: usize, m: &[usize], x: usize) -> Result<Vec<i64>, BirationalError> {
    if m.len() != l {
        return Err(BirationalError::NotContractibleChain(vec![], format!("m has length {} but l = {l}", m.len())));
    }
    let (a, b) = chain_sides(m);
    let (mut right, left) = if l % 2 == 1 { (a, b) } else { (b, a) };
    right.extend(twos(x));
    let mut out: Vec<i64> = left.into_iter().rev().collect();
    out.push(1);
    out.extend(right);
    Ok(out)
}

/// Recovers the unique `(l, m, x)` with `contractible_chain_form(l, m, x)`
/// equal to `chain` read in one of its two orientations.  Returns the
/// parameters and whether the chain had to be reversed.
pub fn recognize_contractible_chain(chain: &[i64]) -> Result<(ChainParams, bool), BirationalError> {
    let fail = |why: &str| BirationalError::NotContractibleChain(chain.to_vec(), why.to_string());
    if chain.iter().filter(|&&c| c == 1).count() != 1 {
        return Err(fail("expected exactly one (-1)-curve"));
    }
    if chain.iter().any(|&c| c < 1) {
        return Err(fail("entries must be positive"));
    }
    let l = chain.iter().filter(|&&c| c >= 3).count();
    let mut found: Vec<(ChainParams, bool)> = Vec::new();
    for reversed in [false, true] {
        let seq: Vec<i64> = if reversed { chain.iter().rev().copied().collect() } else { chain.to_vec() };
        let pos = seq.iter().position(|&c| c == 1).expect("one (-1)-curve");
        let right: Vec<i64> = seq[pos + 1..].to_vec();
        let left: Vec<i64> = seq[..pos].iter().rev().copied().collect();
        let (a_side, b_side) = if l % 2 == 1 { (&right, &left) } else { (&left, &right) };
        let a_big: Vec<usize> = a_side.iter().filter(|&&c| c >= 3).map(|&c| (c - 3) as usize).collect();
        let b_big: Vec<usize> = b_side.iter().filter(|&&c| c >= 3).map(|&c| (c - 3) as usize).collect();
        let mut m = Vec::with_capacity(l);
        let (mut ia, mut ib) = (0, 0);
        let mut ok = true;
        for i in 1..=l {
            let v = if i % 2 == 1 {
                ia += 1;
                a_big.get(ia - 1)
            } else {
                ib += 1;
                b_big.get(ib - 1)
            };
            match v {
                Some(&v) => m.push(v),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let trailing = right.iter().rev().take_while(|&&c| c == 2).count();
        let gen_right_len = {
            let g0 = contractible_chain_form(l, &m, 0).expect("m has length l");
            g0.len() - g0.iter().position(|&c| c == 1).expect("one (-1)") - 1
        };
        if right.len() < gen_right_len || trailing < right.len() - gen_right_len {
            continue;
        }
        let x = right.len() - gen_right_len;
        if contractible_chain_form(l, &m, x).ok().as_deref() == Some(&seq[..]) {
            let p = ChainParams { l, m, x };
            if !found.iter().any(|(q, _)| *q == p) {
                found.push((p, reversed));
            }
        }
    }
    match found.len() {
        1 => Ok(found.pop().expect("one element")),
        0 => Err(fail("no ordering matches the contractible chain patterns")),
        _ => Err(fail("ambiguous recognition")),
    }
}

/// The adjoint chain `U*`: `U + [1] + U*` (with `ltip U` and `ftip U*`
/// adjacent to the (−1)-curve) supports a ℙ¹-fiber.
pub fn adjoint_chain(u: &[i64]) -> Result<Vec<i64>, BirationalError> {
    if u.is_empty() || u.iter().any(|&a| a < 2) {
        return Err(BirationalError::BadAdjointInput(u.to_vec()));
    }
    let out = adjoint_rec(u);
    let mut full = u.to_vec();
    full.push(1);
    full.extend(&out);
    if !supports_fiber(&full) {
        return Err(BirationalError::BadAdjointInput(u.to_vec()));
    }
    Ok(out)
}

fn adjoint_rec(u: &[i64]) -> Vec<i64> {
    // An empty `U` pairs with the pseudo-chain [1] so that [1] + [1] is a fiber.
    let Some((&last, rest)) = u.split_last() else {
        return vec![1];
    };
    if last == 2 {
        let mut v = adjoint_rec(rest);
        v[0] += 1;
        v
    } else {
        let mut shorter = u.to_vec();
        *shorter.last_mut().expect("nonempty") -= 1;
        let mut v = vec![2];
        v.extend(adjoint_rec(&shorter));
        v
    }
}

/// True iff the chain's intersection form has a one-dimensional kernel
/// spanned by a positive vector and the chain contracts to a 0-curve.
pub fn supports_fiber(chain: &[i64]) -> bool {
    let (g, ids) = DivisorGraph::chain(chain, "F");
    let m = linalg::to_rational(&graphcore::intersection_form(&g, &ids).expect("chain ids"));
    let k = linalg::kernel(&m, ids.len());
    if k.len() != 1 {
        return false;
    }
    let p = linalg::primitive_integer(&k[0]);
    if !p.iter().all(|x| x > &num_bigint::BigInt::from(0)) {
        return false;
    }
    let mut h = g;
    while h.len() > 1 {
        let Some(v) = h.ids().into_iter().find(|&v| h.self_int(v) == -1 && h.beta(v) <= 2) else {
            return false;
        };
        h = contract_curve(&h, v).expect("(-1)-curve");
    }
    h.ids().first().map(|&v| h.self_int(v) == 0).unwrap_or(false)
}

/// `ψ_A`: contracts the (−1)-curve `a ∉ D` and then, repeatedly, the unique
/// superfluous (−1)-curve of the image of `D` through the image point.
///
/// `d` is the boundary; other vertices of `g` outside `d` are carried along.
pub fn psi_a(g: &DivisorGraph, d: &BTreeSet<VId>, a: VId) -> Result<(DivisorGraph, ContractionTrace), BirationalError> {
    if !g.contains(a) {
        return Err(GraphError::UnknownVertex(a).into());
    }
    if d.contains(&a) {
        return Err(BirationalError::InBoundary(g.label(a)));
    }
    if g.self_int(a) != -1 {
        return Err(BirationalError::NotMinusOne(g.label(a)));
    }
    let meet: Vec<(VId, i64)> = g.neighbors(a).into_iter().filter(|(k, _)| d.contains(k)).collect();
    if meet.len() != 2 || meet.iter().any(|&(_, w)| w != 1) {
        return Err(BirationalError::BadMeeting(g.label(a), meet.iter().map(|&(k, w)| (g.label(k), w)).collect()));
    }
    let mut dset = d.clone();
    let (mut h, step) = contract_recording(g, a)?;
    let mut trace = ContractionTrace { steps: vec![step] };
    let mut through: BTreeSet<VId> = meet.iter().map(|&(k, _)| k).collect();
    loop {
        let cands: Vec<VId> = through.iter().copied().filter(|&v| superfluous_in(&h, &dset, v)).collect();
        match cands[..] {
            [] => break,
            [v] => {
                let nb: BTreeSet<VId> =
                    h.neighbors(v).into_iter().map(|(k, _)| k).filter(|k| dset.contains(k)).collect();
                let (next, step) = contract_recording(&h, v)?;
                trace.steps.push(step);
                h = next;
                dset.remove(&v);
                through = nb;
            }
            _ => return Err(BirationalError::FibrationObstruction(cands.iter().map(|&v| h.label(v)).collect())),
        }
    }
    Ok((h, trace))
}

/// Superfluous test relative to the boundary `d` inside a larger graph.
pub fn superfluous_in(g: &DivisorGraph, d: &BTreeSet<VId>, v: VId) -> bool {
    if !d.contains(&v) || g.self_int(v) != -1 {
        return false;
    }
    let nb: Vec<(VId, i64)> = g.neighbors(v).into_iter().filter(|(k, _)| d.contains(k)).collect();
    let beta: i64 = nb.iter().map(|(_, w)| w).sum();
    match beta {
        1 => true,
        2 => nb.len() == 2 && nb.iter().all(|&(_, w)| w == 1),
        _ => false,
    }
}
