//! Cusp data: multiplicity sequences, Hamburger–Noether pairs, the numerical
//! invariants `M` and `I`, the plane degree equations, resolution graphs and
//! the seven curve families.

mod family;
mod resolution;

pub use family::{
    assemble_curve, assemble_from_cusps, tono_bounds_check, CurveConfiguration, Family, TableRow, TypeSpec,
};
pub use resolution::{multseq_from_resolution, weak_resolution, CuspResolution, LogResolution};

use std::fmt;

use num_integer::{Integer, Roots};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors for cusp data.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CuspError {
    #[error("invalid multiplicity sequence {0:?}: {1}")]
    InvalidSequence(Vec<u64>, String),
    #[error("invalid HN pairs {0:?}: {1}")]
    InvalidHn(Vec<(u64, u64)>, String),
    #[error("no planar realization at these invariants: {0}")]
    NoPlanarRealization(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("resolution failure: {0}")]
    Resolution(String),
}

/// A proximity-closed multiplicity sequence (trailing 1's included).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct MultiplicitySequence(Vec<u64>);

impl TryFrom<Vec<u64>> for MultiplicitySequence {
    type Error = CuspError;
    fn try_from(v: Vec<u64>) -> Result<Self, CuspError> {
        Self::closed(v)
    }
}

impl From<MultiplicitySequence> for Vec<u64> {
    fn from(m: MultiplicitySequence) -> Self {
        m.0
    }
}

/// Indices `i+1..i+r` of the maximal run after `i` whose partial sums stay
/// at most `m[i]`.
pub fn proximity_run(m: &[u64], i: usize) -> Vec<usize> {
    let mut s = 0;
    let mut out = Vec::new();
    for (j, &x) in m.iter().enumerate().skip(i + 1) {
        if s + x > m[i] {
            break;
        }
        s += x;
        out.push(j);
    }
    out
}

impl MultiplicitySequence {
    /// Validates a proximity-closed sequence.
    pub fn closed(v: Vec<u64>) -> Result<Self, CuspError> {
        let bad = |why: &str| CuspError::InvalidSequence(v.clone(), why.to_string());
        if v.is_empty() {
            return Err(bad("empty"));
        }
        if v.contains(&0) {
            return Err(bad("entries must be positive"));
        }
        if v.windows(2).any(|w| w[1] > w[0]) {
            return Err(bad("not non-increasing"));
        }
        if v[0] >= 2 {
            if *v.last().expect("nonempty") != 1 {
                return Err(bad("last entry must be 1"));
            }
            if v.iter().rev().take_while(|&&x| x == 1).count() < 2 {
                return Err(bad("needs at least two trailing 1's"));
            }
            for i in 0..v.len() {
                if v[i] >= 2 {
                    let s: u64 = proximity_run(&v, i).iter().map(|&j| v[j]).sum();
                    if s != v[i] {
                        return Err(bad(&format!("entry {} at position {} has proximate sum {s}", v[i], i + 1)));
                    }
                }
            }
        }
        Ok(Self(v))
    }

    /// Closes a display form (trailing 1's elided or partial) by appending
    /// the 1's demanded by the last entry ≥ 2, then validates.
    pub fn from_display(v: &[u64]) -> Result<Self, CuspError> {
        let mut w = v.to_vec();
        if let Some(k) = w.iter().rposition(|&x| x >= 2) {
            let have = w.len() - k - 1;
            let need = w[k] as usize;
            if have < need {
                w.extend(std::iter::repeat_n(1, need - have));
            }
        }
        Self::closed(w)
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The display form: entries ≥ 2 only.
    pub fn display_form(&self) -> Vec<u64> {
        self.0.iter().copied().filter(|&x| x >= 2).collect()
    }

    /// Number of entries ≥ 2, i.e. the length of the minimal weak resolution.
    pub fn singular_len(&self) -> usize {
        self.0.iter().take_while(|&&x| x >= 2).count()
    }

    /// Multiplicity of the cusp (first entry).
    pub fn multiplicity(&self) -> u64 {
        self.0[0]
    }
}

impl fmt::Display for MultiplicitySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.display_form().iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Hamburger–Noether pairs `(c_i, p_i)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<(u64, u64)>", into = "Vec<(u64, u64)>")]
pub struct HnPairs(Vec<(u64, u64)>);

impl TryFrom<Vec<(u64, u64)>> for HnPairs {
    type Error = CuspError;
    fn try_from(v: Vec<(u64, u64)>) -> Result<Self, CuspError> {
        Self::new(v)
    }
}

impl From<HnPairs> for Vec<(u64, u64)> {
    fn from(h: HnPairs) -> Self {
        h.0
    }
}

impl HnPairs {
    /// Validates `c₁ > p₁ ≥ 1`, `c_i = gcd(c_{i−1}, p_{i−1})`,
    /// `gcd(c_i, p_i) < c_i` and a final gcd of 1.
    pub fn new(v: Vec<(u64, u64)>) -> Result<Self, CuspError> {
        let bad = |why: &str| CuspError::InvalidHn(v.clone(), why.to_string());
        let Some(&(c1, p1)) = v.first() else {
            return Err(bad("empty"));
        };
        if !(c1 > p1 && p1 >= 1) {
            return Err(bad("first pair needs c > p >= 1"));
        }
        for (i, &(c, p)) in v.iter().enumerate() {
            if p == 0 {
                return Err(bad("p must be positive"));
            }
            if i > 0 {
                let (pc, pp) = v[i - 1];
                if c != pc.gcd(&pp) {
                    return Err(bad(&format!("pair {} must start with gcd of the previous pair", i + 1)));
                }
            }
            if c.gcd(&p) >= c {
                return Err(bad(&format!("pair {} has gcd(c, p) = c", i + 1)));
            }
        }
        let &(cl, pl) = v.last().expect("nonempty");
        if cl.gcd(&pl) != 1 {
            return Err(bad("final gcd must be 1"));
        }
        Ok(Self(v))
    }

    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.0
    }

    /// Standard form: a first pair `(c, p)` with `p | c` may not be
    /// followed by another one, since `(c, p), (p, q)` expands like
    /// `(c + q, p)`.  Later pairs cannot merge: `gcd(c_i, p_i) < c_i`.
    pub fn is_standard(&self) -> bool {
        let (c1, p1) = self.0[0];
        self.0.len() == 1 || c1 % p1 != 0
    }
}

impl fmt::Display for HnPairs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(c, p)| format!("({c},{p})")).collect();
        write!(f, "{}", parts.join(""))
    }
}

/// Euclidean remainder runs of `(max(c,p), min(c,p))`.
fn euclid_runs(c: u64, p: u64) -> Vec<u64> {
    let (mut a, mut b) = if c >= p { (c, p) } else { (p, c) };
    let mut out = Vec::new();
    loop {
        let q = a / b;
        let r = a % b;
        out.extend(std::iter::repeat_n(b, q as usize));
        if r == 0 {
            break;
        }
        a = b;
        b = r;
    }
    out
}

/// HN pairs to the proximity-closed multiplicity sequence.
pub fn hn_to_multseq(h: &HnPairs) -> Result<MultiplicitySequence, CuspError> {
    let mut out = Vec::new();
    for &(c, p) in h.pairs() {
        out.extend(euclid_runs(c, p));
    }
    MultiplicitySequence::closed(out)
}

/// Multiplicity sequence to standard-form HN pairs (inverse of
/// [`hn_to_multseq`] by reverse Euclidean grouping).
///
/// Each pair's leading run takes every consecutive equal entry, except when
/// it starts strictly below the running gcd, where the Euclidean quotient
/// fixes its length.
pub fn multseq_to_hn(m: &MultiplicitySequence) -> Result<HnPairs, CuspError> {
    let v = m.entries();
    let n = v.len();
    let bad = |why: &str| CuspError::InvalidSequence(v.to_vec(), why.to_string());
    let run_len = |from: usize| v[from..].iter().take_while(|&&x| x == v[from]).count();
    // Consumes the Euclidean runs of (prev, cur) starting at index j;
    // returns the end index and the final (gcd) run value.
    let consume = |mut prev: u64, mut cur: u64, mut j: usize| -> Result<(usize, u64), CuspError> {
        loop {
            let q = (prev / cur) as usize;
            if q == 0 || j + q > n || v[j..j + q].iter().any(|&x| x != cur) {
                return Err(bad("Euclidean run mismatch"));
            }
            j += q;
            let r = prev % cur;
            if r == 0 {
                return Ok((j, cur));
            }
            if j >= n || v[j] != r {
                return Err(bad("Euclidean remainder mismatch"));
            }
            prev = cur;
            cur = r;
        }
    };
    let mut pairs: Vec<(u64, u64)> = Vec::new();
    let mut i = 0;
    let mut g: Option<u64> = None;
    while i < n {
        let v1 = v[i];
        let (pair, end, last) = match g {
            None => {
                let q1 = run_len(i);
                let j = i + q1;
                if j < n {
                    let r = v[j];
                    let (end, last) = consume(v1, r, j)?;
                    ((q1 as u64 * v1 + r, v1), end, last)
                } else {
                    ((q1 as u64 * v1, v1), j, v1)
                }
            }
            Some(gc) if v1 < gc => {
                let (end, last) = consume(gc, v1, i)?;
                ((gc, v1), end, last)
            }
            Some(gc) if v1 == gc => {
                let q1 = run_len(i);
                let j = i + q1;
                if j < n {
                    let r = v[j];
                    let (end, last) = consume(gc, r, j)?;
                    ((gc, q1 as u64 * gc + r), end, last)
                } else {
                    ((gc, q1 as u64 * gc), j, gc)
                }
            }
            Some(_) => return Err(bad("entry exceeds the running gcd")),
        };
        pairs.push(pair);
        g = Some(last);
        i = end;
        if last == 1 {
            break;
        }
    }
    if i != n {
        return Err(bad("trailing entries after the final pair"));
    }
    let h = HnPairs::new(pairs)?;
    if hn_to_multseq(&h)?.entries() != v {
        return Err(bad("not reproduced by its HN pairs"));
    }
    Ok(h)
}

/// `M = Σ m_i` and `I = Σ m_i²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspInvariants {
    pub m: u64,
    pub i: u64,
}

pub fn cusp_invariants(m: &MultiplicitySequence) -> CuspInvariants {
    CuspInvariants { m: m.entries().iter().sum(), i: m.entries().iter().map(|x| x * x).sum() }
}

/// Degree and proper-transform self-intersection forced by the cusps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneSolution {
    pub deg: u64,
    /// `E²` on the minimal log resolution.
    pub e_self: i64,
    /// Whether `d² − E² = Σ I` also holds.
    pub consistent: bool,
}

/// Solves `(d−1)(d−2) = Σ(I − M)` for an integer `d ≥ 3`, then
/// `E² = 3d − 2 − Σ M`.
pub fn solve_plane_constraints(cusps: &[MultiplicitySequence]) -> Result<PlaneSolution, CuspError> {
    if cusps.is_empty() {
        return Err(CuspError::NoPlanarRealization("no cusps".into()));
    }
    let (sm, si) = cusps.iter().map(cusp_invariants).fold((0u64, 0u64), |a, c| (a.0 + c.m, a.1 + c.i));
    let s = si - sm;
    // d² − 3d + 2 − s = 0  ⇒  d = (3 + √(1 + 4s)) / 2.
    let disc = 1 + 4 * s;
    let r = disc.sqrt();
    if r * r != disc || (3 + r) % 2 != 0 {
        return Err(CuspError::NoPlanarRealization(format!("1 + 4·{s} is not an odd square")));
    }
    let deg = (3 + r) / 2;
    if deg < 3 {
        return Err(CuspError::NoPlanarRealization(format!("degree {deg} < 3")));
    }
    let e_self = 3 * deg as i64 - 2 - sm as i64;
    let consistent = (deg * deg) as i64 - e_self == si as i64;
    Ok(PlaneSolution { deg, e_self, consistent })
}

/// The single-cusp sequence `(k₁d₁,(d₁)_{2k₁}, …, k_s d_s,(d_s)_{2k_s}, k_{s+1},(1)_{k_{s+1}})`
/// with `d_i = Π_{j>i}(k_j + 1)`; returns it with `d₀`.
pub fn ams_sequence(k: &[u64]) -> Result<(MultiplicitySequence, u64), CuspError> {
    if k.is_empty() || k.contains(&0) {
        return Err(CuspError::OutOfRange("need k_1..k_{s+1} >= 1".into()));
    }
    let s = k.len() - 1;
    // d[i] for i in 0..=s.
    let d: Vec<u64> = (0..=s).map(|i| k[i..].iter().map(|x| x + 1).product()).collect();
    let mut seq = Vec::new();
    for i in 1..=s {
        seq.push(k[i - 1] * d[i]);
        seq.extend(std::iter::repeat_n(d[i], 2 * k[i - 1] as usize));
    }
    seq.push(k[s]);
    seq.extend(std::iter::repeat_n(1, k[s] as usize));
    Ok((MultiplicitySequence::closed(seq)?, d[0]))
}

/// `3d₀ − 2 − M` for a single cusp at degree `d₀`: the self-intersection of
/// the proper transform after resolving that cusp.
pub fn single_cusp_self_intersection(m: &MultiplicitySequence, d0: u64) -> i64 {
    3 * d0 as i64 - 2 - cusp_invariants(m).m as i64
}
