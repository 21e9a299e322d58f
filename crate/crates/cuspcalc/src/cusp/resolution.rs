//! Minimal weak and minimal log resolution graphs of a single cusp, built by
//! simulating the blowups prescribed by the proximity relations of its
//! multiplicity sequence.
//!
//! The branch of the curve through the cusp is tracked as a pseudo-curve
//! (the "germ"): blowing up a point of multiplicity `μ` on the germ lowers
//! the germ's intersection with every curve through that point by `μ` and
//! gives the new exceptional curve intersection `μ` with it.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{proximity_run, CuspError, MultiplicitySequence};
use crate::birational::{self, BlowupCenter};
use crate::graphcore::{DivisorGraph, VId};

/// The exceptional divisor `Q` of the minimal weak resolution of a cusp
/// together with its markers.
///
/// `Q` has vertex ids `0..K` with id `i − 1` the proper transform of the
/// `i`-th exceptional curve, named `E{i}`.  Ordered markers (`t`, `delta_t`,
/// `t_prime`) are listed from their first tip inward.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspResolution {
    pub seq: MultiplicitySequence,
    pub q: DivisorGraph,
    /// The unique (−1)-curve, i.e. the last exceptional curve.
    pub c: VId,
    /// The component of `Q − C` meeting the proper transform of the curve.
    pub c_tilde: Option<VId>,
    /// `C·E₀`.
    pub tau: i64,
    /// 1 iff `C̃` is absent.
    pub s: i64,
    /// Last exceptional curve after which the exceptional divisor was still a chain.
    pub b: VId,
    /// Twig of `Q` meeting `B` and containing the first component.
    pub t: Vec<VId>,
    /// Maximal (−2)-twig of the weak-resolution boundary inside `T`.
    pub delta_t: Vec<VId>,
    /// The `(t+1)`-st exceptional curve.
    pub t0: VId,
    /// The second twig of `Q` meeting `B` (not containing `C`), from its tip.
    pub t_prime: Vec<VId>,
    /// Intersection numbers of the proper transform `E₀` with components of `Q`.
    pub germ: BTreeMap<VId, i64>,
    /// The log-resolution continuation.
    pub log: LogResolution,
}

/// Exceptional divisor of the minimal log resolution of one cusp.
///
/// Vertex ids are `0..N` in blowup order, named `E{i}`; the first `K` agree
/// with the weak resolution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogResolution {
    pub graph: DivisorGraph,
    /// Intersection numbers of the proper transform `E` with the components.
    pub germ: BTreeMap<VId, i64>,
    /// Number of blowups beyond the weak resolution (equals `τ`).
    pub extra_blowups: usize,
}

impl CuspResolution {
    /// `t = #Δ_T`.
    pub fn t_count(&self) -> usize {
        self.delta_t.len()
    }

    /// Number of components of `Q`.
    pub fn len(&self) -> usize {
        self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }

    /// First exceptional curve (`ftip T` when `#Q > 1`).
    pub fn first(&self) -> VId {
        0
    }

    /// `Σ_{i ≤ K} m_i²`, the drop from `Ē²` to `E₀²` caused by this cusp.
    pub fn weak_square_drop(&self) -> i64 {
        self.seq.entries()[..self.q.len()].iter().map(|&m| (m * m) as i64).sum()
    }

    /// The exceptional divisor is a chain `[(2)_t, 1]` with `C̃` absent.
    pub fn is_two_chain(&self) -> bool {
        self.c_tilde.is_none()
            && self.q.ids().into_iter().all(|v| v == self.c || self.q.self_int(v) == -2)
            && self.q.order_chain(&self.q.ids(), None).is_some()
    }

    /// Multiplicity sequence `(2)_{t+1}`: a two-chain with `τ = 2`.
    pub fn is_semi_ordinary(&self) -> bool {
        self.tau == 2 && self.is_two_chain()
    }
}

struct Simulation {
    graph: DivisorGraph,
    germ: Vec<i64>,
    /// `chain_after[i]`: exceptional divisor is a chain after `i + 1` blowups.
    chain_after: Vec<bool>,
}

fn simulate(m: &[u64], upto: usize) -> Result<Simulation, CuspError> {
    let err = |why: String| CuspError::Resolution(why);
    let n = m.len();
    let mut prox: Vec<Vec<usize>> = vec![Vec::new(); n];
    for j in 0..n {
        for i in proximity_run(m, j) {
            prox[i].push(j);
        }
    }
    let mut g = DivisorGraph::new();
    let mut germ: Vec<i64> = Vec::new();
    let mut chain_after = Vec::new();
    for i in 0..upto {
        let through = &prox[i];
        if through.len() > 2 {
            return Err(err(format!("point {} is proximate to more than two points", i + 1)));
        }
        if i > 0 && !through.contains(&(i - 1)) {
            return Err(err(format!("point {} does not lie on the previous exceptional curve", i + 1)));
        }
        let ids: Vec<VId> = through.iter().map(|&j| j as VId).collect();
        let center = match ids[..] {
            [] => BlowupCenter::Initial,
            [a] => BlowupCenter::FreeOnCurve(a),
            [a, b] => BlowupCenter::Node(a, b),
            _ => unreachable!("checked above"),
        };
        let (h, new) = birational::blow_up_named(&g, &center, Some(format!("E{}", i + 1)))
            .map_err(|e| err(format!("blowup {} failed: {e}", i + 1)))?;
        debug_assert_eq!(new as usize, i);
        g = h;
        let mu = m[i] as i64;
        for &j in through {
            germ[j] -= mu;
            if germ[j] < 0 {
                return Err(err(format!("germ intersection with E{} became negative", j + 1)));
            }
        }
        germ.push(mu);
        let ids = g.ids();
        chain_after.push(g.order_chain(&ids, None).is_some());
    }
    Ok(Simulation { graph: g, germ, chain_after })
}

/// Minimal weak resolution of the cusp with all markers.
pub fn weak_resolution(m: &MultiplicitySequence) -> Result<CuspResolution, CuspError> {
    let v = m.entries();
    let k = m.singular_len();
    if k == 0 {
        return Err(CuspError::Resolution("a smooth point has no weak resolution".into()));
    }
    let weak = simulate(v, k)?;
    let log = simulate(v, v.len())?;
    let q = weak.graph;
    let c = (k - 1) as VId;
    let germ: BTreeMap<VId, i64> =
        weak.germ.iter().enumerate().filter(|(_, &w)| w > 0).map(|(i, &w)| (i as VId, w)).collect();
    let tau = germ.get(&c).copied().unwrap_or(0);
    if tau < 2 {
        return Err(CuspError::Resolution(format!("tau = {tau} < 2")));
    }
    let others: Vec<VId> = germ.keys().copied().filter(|&x| x != c).collect();
    let c_tilde = match others[..] {
        [] => None,
        [x] => Some(x),
        _ => return Err(CuspError::Resolution("curve meets three exceptional curves".into())),
    };
    let s = i64::from(c_tilde.is_none());

    let b_index = weak.chain_after.iter().rposition(|&x| x).expect("one curve is a chain");
    let b = b_index as VId;

    let rest: Vec<VId> = q.ids().into_iter().filter(|&x| x != b).collect();
    let comps = q.components_of(&rest);
    let t: Vec<VId> = if b == 0 {
        Vec::new()
    } else {
        let comp = comps.iter().find(|cmp| cmp.contains(&0)).expect("E1 lies in Q − B");
        q.order_chain(comp, Some(0)).ok_or_else(|| CuspError::Resolution("T is not a chain starting at E1".into()))?
    };
    // β in the weak-resolution boundary: Q plus the curve's proper transform.
    let beta0 = |x: VId| q.beta(x) + germ.get(&x).copied().unwrap_or(0);
    let mut delta_t = Vec::new();
    if !t.is_empty() && beta0(t[0]) <= 1 {
        for &x in &t {
            if q.self_int(x) == -2 && beta0(x) <= 2 {
                delta_t.push(x);
            } else {
                break;
            }
        }
    }
    let t0 = delta_t.len() as VId;
    let t_prime: Vec<VId> = comps
        .iter()
        .find(|cmp| !cmp.contains(&0) && !cmp.contains(&c))
        .and_then(|cmp| {
            let tip = cmp
                .iter()
                .copied()
                .find(|&x| q.beta(x) <= 1 && q.weight(x, b) == 0)
                .or_else(|| cmp.iter().copied().find(|&x| q.beta(x) <= 1))?;
            q.order_chain(cmp, Some(tip))
        })
        .unwrap_or_default();

    let log_germ: BTreeMap<VId, i64> =
        log.germ.iter().enumerate().filter(|(_, &w)| w > 0).map(|(i, &w)| (i as VId, w)).collect();
    let log = LogResolution { graph: log.graph, germ: log_germ, extra_blowups: v.len() - k };
    Ok(CuspResolution { seq: m.clone(), q, c, c_tilde, tau, s, b, t, delta_t, t0, t_prime, germ, log })
}

/// Reverse-contraction oracle: contracts `Q` back to a point while tracking
/// the curve's branch as a pseudo-vertex meeting `C` with multiplicity `τ`
/// and `C̃` once; the multiplicities read off are the sequence (reversed).
pub fn multseq_from_resolution(r: &CuspResolution) -> Result<MultiplicitySequence, CuspError> {
    let mut g = r.q.clone();
    let germ = g.add_vertex(Some("germ".into()), 0).map_err(|e| CuspError::Resolution(e.to_string()))?;
    for (&x, &w) in &r.germ {
        g.add_edge(germ, x, w).map_err(|e| CuspError::Resolution(e.to_string()))?;
    }
    let mut mults = Vec::new();
    while g.len() > 1 {
        let Some(v) = g.ids().into_iter().find(|&v| v != germ && g.self_int(v) == -1) else {
            return Err(CuspError::Resolution("Q does not contract to a smooth point".into()));
        };
        mults.push(g.weight(v, germ) as u64);
        g = birational::contract_curve(&g, v).map_err(|e| CuspError::Resolution(e.to_string()))?;
    }
    mults.reverse();
    MultiplicitySequence::from_display(&mults)
}
