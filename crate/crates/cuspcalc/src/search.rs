//! Necessary-condition enumeration of cusp profiles.
//!
//! A profile is a multiset of cusp types. It survives when every filter
//! below holds, so the survivor list is a superset of the profiles that
//! actually occur:
//! - the degree equations have an integral solution `d ≤ max_degree` and
//!   `d² − E² = Σ I` also holds;
//! - no cusp has multiplicity `≥ d − 2`, since the pencil of lines through
//!   such a point would fiber the complement by `ℂ¹`, `ℂ*` or `ℂ**`;
//! - the upper bounds on `E²` of the log resolution hold;
//! - the per-cusp lower bounds for `λ_j` add up to at most 6.

use std::collections::BTreeSet;

use num_integer::{Integer, Roots};
use serde::{Deserialize, Serialize};

use crate::cusp::{
    assemble_from_cusps, cusp_invariants, hn_to_multseq, solve_plane_constraints, tono_bounds_check, weak_resolution,
    CuspError, HnPairs, MultiplicitySequence,
};

/// Printed at the top of every search report.
pub const SUPERSET_BANNER: &str = "SUPERSET: every filter is a necessary condition only; \
survivors need not be realized by any plane curve, and the list is not a classification.";

/// Bounds of the enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    pub max_degree: u64,
    /// Upper bound on every entry of every HN pair.
    pub max_hn: u64,
    /// Restrict to cusps with multiplicity sequence `(2)_{t+1}`.
    pub semi_ordinary_only: bool,
}

/// One cusp type admitted by the bounds.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CuspCandidate {
    pub seq: MultiplicitySequence,
    pub hn: HnPairs,
    /// `I − M = Σ m(m − 1)`, twice the delta invariant.
    pub twice_delta: u64,
    /// Lower bound for `λ_j`: exact for semi-ordinary cusps, `τ − s + 1` otherwise.
    pub lambda_lower: u64,
}

impl CuspCandidate {
    fn new(hn: HnPairs) -> Result<Self, CuspError> {
        let seq = hn_to_multseq(&hn)?;
        let inv = cusp_invariants(&seq);
        let res = weak_resolution(&seq)?;
        let lambda_lower = if res.is_semi_ordinary() { 1 + res.t_count() as u64 } else { (res.tau - res.s + 1) as u64 };
        Ok(Self { seq, hn, twice_delta: inv.i - inv.m, lambda_lower })
    }

    pub fn is_semi_ordinary(&self) -> bool {
        self.seq.display_form().iter().all(|&m| m == 2)
    }
}

/// A surviving profile.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Survivor {
    pub deg: u64,
    /// `E²` on the minimal log resolution.
    pub e_self_log: i64,
    /// Display forms, sorted.
    pub cusps: Vec<Vec<u64>>,
    pub hn: Vec<HnPairs>,
    pub lambda_lower: Vec<u64>,
    pub lambda_lower_sum: u64,
}

impl Survivor {
    /// Whether the profile equals the multiset `seqs`.
    pub fn matches(&self, seqs: &[MultiplicitySequence]) -> bool {
        let mut want: Vec<Vec<u64>> = seqs.iter().map(MultiplicitySequence::display_form).collect();
        want.sort();
        want == self.cusps
    }
}

/// The full report of one search run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub banner: String,
    pub bounds: SearchBounds,
    pub cusp_types: usize,
    pub profiles_examined: u64,
    pub survivors: Vec<Survivor>,
}

/// Every standard HN pair list with entries in `1..=max_hn` describing a
/// singular point (first pair `(c, p)` with `c > p ≥ 2`).
pub fn enumerate_hn(max_hn: u64) -> Vec<HnPairs> {
    fn extend(prefix: &mut Vec<(u64, u64)>, max_hn: u64, out: &mut Vec<HnPairs>) {
        let &(c, p) = prefix.last().expect("nonempty prefix");
        let g = c.gcd(&p);
        if g == 1 {
            if let Ok(h) = HnPairs::new(prefix.clone()) {
                if h.is_standard() {
                    out.push(h);
                }
            }
            return;
        }
        for q in 1..=max_hn {
            if g.gcd(&q) < g {
                prefix.push((g, q));
                extend(prefix, max_hn, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    for c in 2..=max_hn {
        for p in 2..c {
            let mut prefix = vec![(c, p)];
            extend(&mut prefix, max_hn, &mut out);
        }
    }
    out
}

/// Cusp types compatible with the bounds, one per multiplicity sequence,
/// sorted by sequence.
pub fn cusp_types(bounds: &SearchBounds) -> Result<Vec<CuspCandidate>, CuspError> {
    let d = bounds.max_degree;
    if d < 3 {
        return Ok(Vec::new());
    }
    let delta_cap = (d - 1) * (d - 2);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for hn in enumerate_hn(bounds.max_hn) {
        // The first HN entry is the multiplicity, which must stay below d − 2.
        if hn.pairs()[0].1 + 3 > d {
            continue;
        }
        let seq = hn_to_multseq(&hn)?;
        let inv = cusp_invariants(&seq);
        if inv.i - inv.m > delta_cap || seen.contains(&seq) {
            continue;
        }
        let cand = CuspCandidate::new(hn)?;
        if bounds.semi_ordinary_only && !cand.is_semi_ordinary() {
            continue;
        }
        seen.insert(seq);
        out.push(cand);
    }
    out.sort();
    Ok(out)
}

/// The degree `d ≤ max_degree` with `(d − 1)(d − 2) = s`, if any.
fn degree_for(s: u64, max_degree: u64) -> Option<u64> {
    let disc = 1 + 4 * s;
    let r = disc.sqrt();
    (r * r == disc && (3 + r).is_multiple_of(2) && (3 + r) / 2 <= max_degree).then_some((3 + r) / 2)
}

/// Checks the profile given by indices into `types`.
fn check_profile(types: &[CuspCandidate], pick: &[usize], max_degree: u64) -> Result<Option<Survivor>, CuspError> {
    let s: u64 = pick.iter().map(|&i| types[i].twice_delta).sum();
    let Some(deg) = degree_for(s, max_degree) else {
        return Ok(None);
    };
    if pick.iter().any(|&i| types[i].seq.multiplicity() + 2 >= deg) {
        return Ok(None);
    }
    let seqs: Vec<MultiplicitySequence> = pick.iter().map(|&i| types[i].seq.clone()).collect();
    let sol = solve_plane_constraints(&seqs)?;
    if !sol.consistent {
        return Ok(None);
    }
    let cfg = assemble_from_cusps(&seqs)?;
    if !tono_bounds_check(&cfg) {
        return Ok(None);
    }
    let mut rows: Vec<(Vec<u64>, HnPairs, u64)> =
        pick.iter().map(|&i| (types[i].seq.display_form(), types[i].hn.clone(), types[i].lambda_lower)).collect();
    rows.sort();
    Ok(Some(Survivor {
        deg,
        e_self_log: cfg.e_self_log,
        cusps: rows.iter().map(|r| r.0.clone()).collect(),
        hn: rows.iter().map(|r| r.1.clone()).collect(),
        lambda_lower: rows.iter().map(|r| r.2).collect(),
        lambda_lower_sum: rows.iter().map(|r| r.2).sum(),
    }))
}

/// Runs the enumeration. Survivors are sorted by degree, then by profile.
pub fn search(bounds: &SearchBounds) -> Result<SearchReport, CuspError> {
    let types = cusp_types(bounds)?;
    let cap = if bounds.max_degree >= 3 { (bounds.max_degree - 1) * (bounds.max_degree - 2) } else { 0 };
    let mut survivors = Vec::new();
    let mut examined = 0u64;
    // Depth-first over multisets (nondecreasing indices) with running sums.
    let mut stack: Vec<(Vec<usize>, u64, u64)> = vec![(Vec::new(), 0, 0)];
    while let Some((pick, delta, lambda)) = stack.pop() {
        if !pick.is_empty() {
            examined += 1;
            if let Some(s) = check_profile(&types, &pick, bounds.max_degree)? {
                survivors.push(s);
            }
        }
        let from = pick.last().copied().unwrap_or(0);
        for (i, t) in types.iter().enumerate().skip(from) {
            let (nd, nl) = (delta + t.twice_delta, lambda + t.lambda_lower);
            if nd <= cap && nl <= 6 {
                let mut next = pick.clone();
                next.push(i);
                stack.push((next, nd, nl));
            }
        }
    }
    survivors.sort_by(|a, b| (a.deg, &a.cusps).cmp(&(b.deg, &b.cusps)));
    Ok(SearchReport {
        banner: SUPERSET_BANNER.to_string(),
        bounds: *bounds,
        cusp_types: types.len(),
        profiles_examined: examined,
        survivors,
    })
}

/// Solutions of `Σ (t_j + 1) = 6` as sorted profiles of `(2)_{t+1}` display forms.
pub fn semi_ordinary_quintic_profiles() -> Vec<Vec<Vec<u64>>> {
    fn parts(rest: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            parts(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut partitions = Vec::new();
    parts(6, 6, &mut Vec::new(), &mut partitions);
    let mut out: Vec<Vec<Vec<u64>>> = partitions
        .into_iter()
        .map(|p| {
            let mut prof: Vec<Vec<u64>> = p.iter().map(|&k| vec![2; k as usize]).collect();
            prof.sort();
            prof
        })
        .collect();
    out.sort();
    out
}
