//! Scripted runs of the almost minimal model program on the seven families.
//!
//! Each script lists the almost log exceptional curves to attach (by the
//! roles of the boundary components they meet on `D₀`), the expected
//! exceptional chain of every step, the expected size of the run, and
//! intersection numbers expected on the surface `Z` reached by peeling.

use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use super::{is_almost_log_exceptional, mmp_step, peel, MinimalModelReport, MmpError, MmpState, StepRecord};
use crate::cusp::{assemble_curve, CurveConfiguration, Family, TypeSpec};
use crate::graphcore::{structure_unchecked, VId};

/// Which of the two possible runs to replay.  Only `J` has an alternate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Variant {
    Default,
    Alternate,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Default => "default",
            Variant::Alternate => "alternate",
        })
    }
}

impl FromStr for Variant {
    type Err = MmpError;
    fn from_str(s: &str) -> Result<Self, MmpError> {
        match s.to_ascii_lowercase().as_str() {
            "default" => Ok(Variant::Default),
            "alternate" => Ok(Variant::Alternate),
            _ => Err(MmpError::Script(format!("unknown variant {s:?}"))),
        }
    }
}

/// A boundary component of `D₀` named by its role.  Cusp indices are
/// 0-based in the family's listed order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Role {
    /// The proper transform of the curve.
    E,
    /// The first exceptional curve over cusp `j`.
    First(usize),
    /// The last exceptional curve `C_j` of the weak resolution.
    C(usize),
    /// The component of `T_j` adjacent to `B_j`.
    LastOfT(usize),
    /// The component of `Δ_{T_j}` farthest from the tip.
    LastOfDeltaT(usize),
    /// The tip of the twig of `Q_j` hanging off `C_j` on the side away from `T_j`.
    TipOfCTwig(usize),
}

/// Named twigs used to spell out expected exceptional chains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TwigRole {
    /// `T_j` from its tip.
    T(usize),
    /// The twig hanging off `C_j`, from its tip.
    CTwig(usize),
}

/// One piece of an expected exceptional chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Piece {
    /// The attached curve itself.
    A,
    Forward(TwigRole),
    Reversed(TwigRole),
}

/// One scripted almost log exceptional curve.
#[derive(Clone, Debug, Serialize)]
pub struct Attachment {
    pub name: String,
    pub meets: [Role; 2],
    pub exc: Vec<Piece>,
}

/// Full description of one run.
#[derive(Clone, Debug, Serialize)]
pub struct ReplayScript {
    pub spec: TypeSpec,
    pub variant: Variant,
    pub steps: Vec<Attachment>,
    /// Curves that must not be almost log exceptional on the final snapshot.
    pub not_ale_after: Vec<Attachment>,
    pub n: usize,
    pub rho_n: i64,
    /// Expected intersection numbers of boundary components on `Z`.
    pub z_pairings: Vec<(Role, Role, i64)>,
}

fn step(name: &str, a: Role, b: Role, exc: Vec<Piece>) -> Attachment {
    Attachment { name: name.to_string(), meets: [a, b], exc }
}

/// The script of a family member.
pub fn script_for(spec: TypeSpec, variant: Variant) -> Result<ReplayScript, MmpError> {
    use Piece::{Forward as Fw, Reversed as Rv, A};
    use Role::*;
    use TwigRole::{CTwig, T};
    if variant == Variant::Alternate && spec.family != Family::J {
        return Err(MmpError::Script(format!("{spec} has no alternate run")));
    }
    let (steps, not_ale_after, n, rho_n, z_pairings) = match spec.family {
        Family::Q3 => (vec![], vec![], 0, 7, vec![(E, E, 25)]),
        Family::Q4 => (vec![], vec![], 0, 7, vec![(E, E, 25)]),
        Family::FE => (
            vec![
                step("A", First(1), First(0), vec![Rv(T(1)), A, Fw(T(0))]),
                step("A'", TipOfCTwig(0), E, vec![A, Fw(CTwig(0))]),
            ],
            vec![],
            2,
            3,
            vec![(E, E, 8)],
        ),
        Family::FZ2 => (
            vec![
                step("A", First(0), First(1), vec![Rv(T(0)), A, Fw(T(1))]),
                step("A'", TipOfCTwig(0), E, vec![A, Fw(CTwig(0))]),
            ],
            vec![],
            2,
            2,
            vec![(E, E, 9), (C(0), C(0), 1), (C(1), C(1), 1), (E, C(0), 3), (E, C(1), 3), (C(0), C(1), 1)],
        ),
        Family::H => (
            vec![
                step("A", First(0), First(1), vec![Rv(T(0)), A, Fw(T(1))]),
                step("A'", TipOfCTwig(0), E, vec![A, Fw(CTwig(0))]),
            ],
            vec![],
            2,
            3,
            vec![(E, E, 4), (C(0), C(0), 4), (C(1), C(1), 1), (C(0), C(1), 2)],
        ),
        Family::I => (
            vec![
                step("A", First(0), First(1), vec![Rv(T(0)), A, Fw(T(1))]),
                step("A'", C(0), TipOfCTwig(1), vec![A, Fw(CTwig(1))]),
            ],
            vec![],
            2,
            4,
            vec![(C(0), C(0), 4), (C(0), C(1), 3), (C(0), E, 3), (C(1), E, 2), (E, E, 2)],
        ),
        Family::J => {
            let l1 = step("L1", TipOfCTwig(0), First(1), vec![Rv(CTwig(0)), A, Fw(T(1))]);
            let l2 = step("L2", TipOfCTwig(1), LastOfT(0), vec![A, Fw(CTwig(1))]);
            let l = |exc| step("L", LastOfDeltaT(0), E, exc);
            match variant {
                Variant::Default => (
                    vec![l1, l2],
                    vec![l(vec![A])],
                    2,
                    4,
                    vec![(E, E, 1), (C(0), C(0), 4), (C(1), C(1), 4), (C(0), C(1), 4), (E, C(0), 2), (E, C(1), 2)],
                ),
                Variant::Alternate => (
                    vec![l1, l(vec![A]), l2],
                    vec![],
                    3,
                    3,
                    vec![(E, E, 4), (LastOfT(0), LastOfT(0), 1), (C(0), C(0), 1), (C(1), C(1), 1)],
                ),
            }
        }
    };
    Ok(ReplayScript { spec, variant, steps, not_ale_after, n, rho_n, z_pairings })
}

/// Resolves roles against `D₀`.
struct Roles<'a> {
    cfg: &'a CurveConfiguration,
    c_twigs: Vec<Option<Vec<VId>>>,
}

impl<'a> Roles<'a> {
    fn new(cfg: &'a CurveConfiguration) -> Self {
        let rep = structure_unchecked(&cfg.weak);
        let c_twigs = (0..cfg.c())
            .map(|j| {
                let q: BTreeSet<VId> = cfg.weak_q(j).into_iter().collect();
                let c = cfg.weak_id(j, cfg.cusps[j].c);
                let first = cfg.weak_id(j, 0);
                rep.maximal_twigs
                    .iter()
                    .find(|t| {
                        let last = *t.last().expect("twigs are nonempty");
                        cfg.weak.weight(last, c) > 0 && t.iter().all(|v| q.contains(v)) && !t.contains(&first)
                    })
                    .cloned()
            })
            .collect();
        Self { cfg, c_twigs }
    }

    fn cusp(&self, j: usize) -> Result<(), MmpError> {
        if j < self.cfg.c() {
            Ok(())
        } else {
            Err(MmpError::Script(format!("cusp index {j} out of range")))
        }
    }

    fn twig(&self, t: TwigRole) -> Result<Vec<VId>, MmpError> {
        match t {
            TwigRole::T(j) => {
                self.cusp(j)?;
                Ok(self.cfg.cusps[j].t.iter().map(|&v| self.cfg.weak_id(j, v)).collect())
            }
            TwigRole::CTwig(j) => {
                self.cusp(j)?;
                self.c_twigs[j].clone().ok_or_else(|| MmpError::Script(format!("cusp {j} has no twig off C")))
            }
        }
    }

    fn role(&self, r: Role) -> Result<VId, MmpError> {
        let missing = |what: &str, j: usize| MmpError::Script(format!("cusp {j} has empty {what}"));
        match r {
            Role::E => Ok(self.cfg.e),
            Role::First(j) => {
                self.cusp(j)?;
                Ok(self.cfg.weak_id(j, 0))
            }
            Role::C(j) => {
                self.cusp(j)?;
                Ok(self.cfg.weak_id(j, self.cfg.cusps[j].c))
            }
            Role::LastOfT(j) => {
                self.cusp(j)?;
                let v = *self.cfg.cusps[j].t.last().ok_or_else(|| missing("T", j))?;
                Ok(self.cfg.weak_id(j, v))
            }
            Role::LastOfDeltaT(j) => {
                self.cusp(j)?;
                let v = *self.cfg.cusps[j].delta_t.last().ok_or_else(|| missing("Δ_T", j))?;
                Ok(self.cfg.weak_id(j, v))
            }
            Role::TipOfCTwig(j) => Ok(self.twig(TwigRole::CTwig(j))?[0]),
        }
    }
}

/// Result of a replay: all snapshots, the step records and the peeled model.
#[derive(Clone, Debug, Serialize)]
pub struct ReplayOutcome {
    pub spec: TypeSpec,
    pub variant: Variant,
    #[serde(skip)]
    pub config: CurveConfiguration,
    pub states: Vec<MmpState>,
    pub steps: Vec<StepRecord>,
    pub report: MinimalModelReport,
    /// Names of scripted curves confirmed not almost log exceptional at the end.
    pub confirmed_not_ale: Vec<String>,
}

impl ReplayOutcome {
    /// Resolves a role on `D₀` (ids are stable through the run).
    pub fn role(&self, r: Role) -> Result<VId, MmpError> {
        Roles::new(&self.config).role(r)
    }

    /// Whether every value of `(2K + D♭)²` agrees and is positive.
    pub fn two_k_plus_dflat_ok(&self) -> bool {
        let r = &self.report;
        r.two_k_plus_dflat_sq_direct == r.two_k_plus_dflat_sq_formula
            && r.two_k_plus_dflat_sq_direct > num_rational::BigRational::from_integer(0.into())
    }
}

/// Stages of a run written as DOT files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Stage {
    /// The snapshot `(X_i, D_i)`.
    X(usize),
    /// The surface reached by peeling.
    Z,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stage::X(i) => write!(f, "x{i}"),
            Stage::Z => f.write_str("z"),
        }
    }
}

/// Assembles the curve and executes the script of `(spec, variant)`.
pub fn replay(spec: TypeSpec, variant: Variant) -> Result<ReplayOutcome, MmpError> {
    let script = script_for(spec, variant)?;
    let cfg = assemble_curve(&spec)?;
    run_script(&script, cfg)
}

fn expected_chain(roles: &Roles<'_>, pieces: &[Piece], a: VId) -> Result<Vec<VId>, MmpError> {
    let mut out = Vec::new();
    for p in pieces {
        match *p {
            Piece::A => out.push(a),
            Piece::Forward(t) => out.extend(roles.twig(t)?),
            Piece::Reversed(t) => out.extend(roles.twig(t)?.into_iter().rev()),
        }
    }
    Ok(out)
}

fn run_script(script: &ReplayScript, cfg: CurveConfiguration) -> Result<ReplayOutcome, MmpError> {
    let roles = Roles::new(&cfg);
    let mut states = vec![MmpState::initial(&cfg)?];
    let mut steps = Vec::new();
    for att in &script.steps {
        let state = states.last().expect("initial state");
        let meets = [roles.role(att.meets[0])?, roles.role(att.meets[1])?];
        let (next, rec) = mmp_step(state, &att.name, &meets)?;
        let expected = expected_chain(&roles, &att.exc, rec.a_id)?;
        let got: BTreeSet<VId> = rec.exc_ids.iter().copied().collect();
        let want: BTreeSet<VId> = expected.iter().copied().collect();
        let (g, _) = state.with_curve(&att.name, &meets)?;
        let adjacent = expected.windows(2).all(|w| g.weight(w[0], w[1]) > 0);
        if got != want || want.len() != expected.len() || !adjacent {
            let names = |v: &[VId]| v.iter().map(|&x| g.label(x)).collect::<Vec<_>>();
            return Err(MmpError::Script(format!(
                "{} step {}: Exc = {:?}, expected chain {:?}",
                script.spec,
                att.name,
                rec.exc_chain,
                names(&expected)
            )));
        }
        states.push(next);
        steps.push(rec);
    }
    let last = states.last().expect("initial state");
    let mut confirmed_not_ale = Vec::new();
    for att in &script.not_ale_after {
        let meets = [roles.role(att.meets[0])?, roles.role(att.meets[1])?];
        if is_almost_log_exceptional(last, &meets)? {
            return Err(MmpError::Script(format!("{} is still almost log exceptional", att.name)));
        }
        confirmed_not_ale.push(att.name.clone());
    }
    if (last.n, last.rho) != (script.n, script.rho_n) {
        return Err(MmpError::Script(format!(
            "{}: (n, ρ) = ({}, {}), expected ({}, {})",
            script.spec, last.n, last.rho, script.n, script.rho_n
        )));
    }
    let report = peel(last, &cfg)?;
    for &(a, b, want) in &script.z_pairings {
        let (va, vb) = (roles.role(a)?, roles.role(b)?);
        if !report.z_graph.contains(va) || !report.z_graph.contains(vb) {
            return Err(MmpError::Script(format!("{a:?} or {b:?} does not survive to Z")));
        }
        let got = report.z_dot(va, vb);
        if got != want {
            return Err(MmpError::Script(format!("{}: on Z, {a:?}·{b:?} = {got}, expected {want}", script.spec)));
        }
    }
    if !report.d_min_checks() {
        return Err(MmpError::Script(format!("{}: D_min fails #D_min = n + 1 or meeting", script.spec)));
    }
    Ok(ReplayOutcome {
        spec: script.spec,
        variant: script.variant,
        config: cfg,
        states,
        steps,
        report,
        confirmed_not_ale,
    })
}

/// Writes one DOT file per stage, named `<family>_<param>_<stage>.dot`;
/// alternate runs prefix the stage with `alt-`.
pub fn emit_dot(outcome: &ReplayOutcome, dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let param = outcome.spec.param.map(|p| p.to_string()).unwrap_or_else(|| "none".into());
    let prefix = match outcome.variant {
        Variant::Default => "",
        Variant::Alternate => "alt-",
    };
    let mut stages: Vec<(Stage, &crate::graphcore::DivisorGraph)> =
        outcome.states.iter().map(|s| (Stage::X(s.i), &s.graph)).collect();
    stages.push((Stage::Z, &outcome.report.z_graph));
    let mut written = Vec::new();
    for (stage, g) in stages {
        let file = dir.join(format!("{}_{}_{}{}.dot", outcome.spec.family, param, prefix, stage));
        let title = format!("{} {} {}{}", outcome.spec, outcome.variant, prefix, stage);
        std::fs::write(&file, g.to_dot(&title))?;
        written.push(file);
    }
    Ok(written)
}
