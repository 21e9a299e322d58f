//! The seven curve families, their tabulated numerical data, and assembly of
//! the weak and log resolution boundaries of a whole curve.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{
    hn_to_multseq, solve_plane_constraints, weak_resolution, CuspError, CuspResolution, HnPairs, MultiplicitySequence,
};
use crate::graphcore::{DivisorGraph, VId};

/// The classified families of rational cuspidal curves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    Q3,
    Q4,
    FE,
    FZ2,
    H,
    I,
    J,
}

impl Family {
    pub const ALL: [Family; 7] = [Family::Q3, Family::Q4, Family::FE, Family::FZ2, Family::H, Family::I, Family::J];

    /// Smallest admissible parameter, or `None` for families without one.
    pub fn min_param(self) -> Option<u64> {
        match self {
            Family::FE => Some(5),
            Family::FZ2 => Some(4),
            Family::H => Some(3),
            Family::J => Some(2),
            Family::Q3 | Family::Q4 | Family::I => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Q3 => "Q3",
            Family::Q4 => "Q4",
            Family::FE => "FE",
            Family::FZ2 => "FZ2",
            Family::H => "H",
            Family::I => "I",
            Family::J => "J",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = CuspError;
    fn from_str(s: &str) -> Result<Self, CuspError> {
        Family::ALL
            .into_iter()
            .find(|f| f.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| CuspError::OutOfRange(format!("unknown family {s:?}")))
    }
}

/// A family together with its parameter (`γ` or `k`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TypeSpec {
    pub family: Family,
    pub param: Option<u64>,
}

/// Tabulated numerical data of a family member.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    /// Number of cusps.
    pub c: usize,
    pub deg: u64,
    /// `−E²` on the minimal log resolution.
    pub neg_e_self: i64,
}

impl TypeSpec {
    pub fn new(family: Family, param: Option<u64>) -> Result<Self, CuspError> {
        match (family.min_param(), param) {
            (None, None) => Ok(Self { family, param }),
            (None, Some(p)) => Err(CuspError::OutOfRange(format!("{family} takes no parameter, got {p}"))),
            (Some(lo), Some(p)) if p >= lo => Ok(Self { family, param }),
            (Some(lo), Some(p)) => Err(CuspError::OutOfRange(format!("{family} needs parameter >= {lo}, got {p}"))),
            (Some(lo), None) => Err(CuspError::OutOfRange(format!("{family} needs a parameter >= {lo}"))),
        }
    }

    /// Every family member with `γ ∈ gammas` and `k ∈ ks` that is in range,
    /// plus the three parameterless types.
    pub fn sweep(gammas: &[u64], ks: &[u64]) -> Vec<TypeSpec> {
        let mut out = Vec::new();
        for family in Family::ALL {
            let params = match family {
                Family::Q3 | Family::Q4 | Family::I => {
                    out.push(TypeSpec { family, param: None });
                    continue;
                }
                Family::J => ks,
                _ => gammas,
            };
            out.extend(params.iter().filter_map(|&p| TypeSpec::new(family, Some(p)).ok()));
        }
        out
    }

    fn p(&self) -> u64 {
        self.param.unwrap_or(0)
    }

    /// The standard HN pairs of each cusp, in the family's listed order.
    pub fn hn_pairs(&self) -> Vec<HnPairs> {
        let p = self.p();
        let raw: Vec<Vec<(u64, u64)>> = match self.family {
            Family::Q3 => vec![vec![(5, 2)]; 3],
            Family::Q4 => vec![vec![(7, 2)], vec![(3, 2)], vec![(3, 2)], vec![(3, 2)]],
            Family::FE => vec![vec![(3 * p - 6, 3 * p - 9), (3, 1)], vec![(4 * p - 10, 4), (2, 1)], vec![(3, 2)]],
            Family::FZ2 => vec![vec![(2 * p - 2, 2 * p - 4), (2, 1)], vec![(3 * p - 5, 3)], vec![(3, 2)]],
            Family::H => vec![vec![(3 * p, 3 * p - 3), (3, 1)], vec![(4 * p - 2, 4), (2, 3)]],
            Family::I => vec![vec![(15, 6), (3, 1)], vec![(12, 8), (4, 2), (2, 1)]],
            Family::J => vec![vec![(6 * p + 2, 2 * p), (2, 1)], vec![(2 * p + 2, 2 * p), (2, 1)]],
        };
        raw.into_iter().map(|v| HnPairs::new(v).expect("family HN data is valid")).collect()
    }

    /// The tabulated number of cusps, degree and `−E²`.
    pub fn table_row(&self) -> TableRow {
        let p = self.p();
        let (c, deg, neg_e_self) = match self.family {
            Family::Q3 => (3, 5, 5),
            Family::Q4 => (4, 5, 7),
            Family::FE => (3, 3 * p - 5, p as i64),
            Family::FZ2 => (3, 2 * p - 1, p as i64),
            Family::H => (2, 3 * p + 1, p as i64),
            Family::I => (2, 14, 3),
            Family::J => (2, 4 * p + 1, 3),
        };
        TableRow { c, deg, neg_e_self }
    }

    /// Multiplicity sequences of the cusps, converted from the HN pairs.
    pub fn multseqs(&self) -> Vec<MultiplicitySequence> {
        self.hn_pairs().iter().map(|h| hn_to_multseq(h).expect("family HN data converts")).collect()
    }
}

impl fmt::Display for TypeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.param {
            Some(p) => write!(f, "{}({p})", self.family),
            None => write!(f, "{}", self.family),
        }
    }
}

/// A rational cuspidal curve given by its cusps, with the boundaries of its
/// minimal weak resolution (`D₀`) and minimal log resolution (`D`).
///
/// In both graphs the proper transform of the curve is vertex `e`; component
/// `i` (0-based, blowup order) over cusp `j` is named `q{j+1}.E{i+1}` and
/// sits at `weak_ids[j][i]` resp. `log_ids[j][i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveConfiguration {
    pub spec: Option<TypeSpec>,
    pub cusps: Vec<CuspResolution>,
    pub deg: u64,
    /// `E₀²`.
    pub e_self_weak: i64,
    /// `E²`.
    pub e_self_log: i64,
    pub weak: DivisorGraph,
    pub log: DivisorGraph,
    pub e: VId,
    pub weak_ids: Vec<Vec<VId>>,
    pub log_ids: Vec<Vec<VId>>,
}

impl CurveConfiguration {
    /// Number of cusps.
    pub fn c(&self) -> usize {
        self.cusps.len()
    }

    /// Global weak-resolution id of local component `i` over cusp `j`.
    pub fn weak_id(&self, j: usize, i: VId) -> VId {
        self.weak_ids[j][i as usize]
    }

    /// Global log-resolution id of local component `i` over cusp `j`.
    pub fn log_id(&self, j: usize, i: VId) -> VId {
        self.log_ids[j][i as usize]
    }

    /// All weak-resolution vertices over cusp `j`.
    pub fn weak_q(&self, j: usize) -> Vec<VId> {
        self.weak_ids[j].clone()
    }

    /// All log-resolution vertices over cusp `j`.
    pub fn log_q(&self, j: usize) -> Vec<VId> {
        self.log_ids[j].clone()
    }
}

/// Assembles a curve from its cusps; the degree and `E²` are forced by the
/// degree equations.
pub fn assemble_from_cusps(cusps: &[MultiplicitySequence]) -> Result<CurveConfiguration, CuspError> {
    let sol = solve_plane_constraints(cusps)?;
    if !sol.consistent {
        return Err(CuspError::NoPlanarRealization("degree equations inconsistent".into()));
    }
    let res: Vec<CuspResolution> = cusps.iter().map(weak_resolution).collect::<Result<_, _>>()?;
    let d = sol.deg as i64;
    let e_self_weak = d * d - res.iter().map(CuspResolution::weak_square_drop).sum::<i64>();
    let e_self_log = e_self_weak - res.iter().map(|r| r.tau).sum::<i64>();
    if e_self_log != sol.e_self {
        return Err(CuspError::Resolution(format!(
            "E² from the resolutions ({e_self_log}) differs from the degree equations ({})",
            sol.e_self
        )));
    }

    let build = |log: bool| -> Result<(DivisorGraph, Vec<Vec<VId>>), CuspError> {
        let graph_err = |e: crate::graphcore::GraphError| CuspError::Resolution(e.to_string());
        let mut g = DivisorGraph::new();
        let e = g.add_vertex(Some("E".into()), if log { e_self_log } else { e_self_weak }).map_err(graph_err)?;
        let mut ids = Vec::new();
        for (j, r) in res.iter().enumerate() {
            let (local, germ) = if log { (&r.log.graph, &r.log.germ) } else { (&r.q, &r.germ) };
            let mut map = Vec::new();
            for v in local.ids() {
                debug_assert_eq!(v as usize, map.len());
                let id = g.add_vertex(Some(format!("q{}.E{}", j + 1, v + 1)), local.self_int(v)).map_err(graph_err)?;
                map.push(id);
            }
            for (a, b, w) in local.edges() {
                g.add_edge(map[a as usize], map[b as usize], w).map_err(graph_err)?;
            }
            for (&v, &w) in germ {
                g.add_edge(e, map[v as usize], w).map_err(graph_err)?;
            }
            ids.push(map);
        }
        Ok((g, ids))
    };
    let (weak, weak_ids) = build(false)?;
    let (log, log_ids) = build(true)?;
    Ok(CurveConfiguration {
        spec: None,
        cusps: res,
        deg: sol.deg,
        e_self_weak,
        e_self_log,
        weak,
        log,
        e: 0,
        weak_ids,
        log_ids,
    })
}

/// Assembles a family member.
pub fn assemble_curve(t: &TypeSpec) -> Result<CurveConfiguration, CuspError> {
    let t = TypeSpec::new(t.family, t.param)?;
    let mut cfg = assemble_from_cusps(&t.multseqs())?;
    cfg.spec = Some(t);
    Ok(cfg)
}

/// Upper bounds on `E²` that every curve of log general type satisfies:
/// one cusp forces `E² ≤ −3`; two cusps force `E² ≤ −2`, and `E² ≤ −3` if
/// some cusp has `(τ, s) = (2, 1)`.
pub fn tono_bounds_check(config: &CurveConfiguration) -> bool {
    let e2 = config.e_self_log;
    match config.c() {
        1 => e2 <= -3,
        2 if config.cusps.iter().any(|r| (r.tau, r.s) == (2, 1)) => e2 <= -3,
        2 => e2 <= -2,
        _ => true,
    }
}
