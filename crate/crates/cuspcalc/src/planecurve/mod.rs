//! Exact checks on parameterized plane curves `ν = [F₀ : F₁ : F₂]` over
//! number fields: degree, singular parameters, cusp multiplicity sequences
//! by blowing up parameterized germs, line pullbacks, special lines and
//! projective automorphisms.

mod field;
mod forms;

pub use field::{Elem, NumberField, Poly};
pub use forms::{BinaryForm, Param, Series};

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::cusp::{CuspError, MultiplicitySequence};

#[derive(Debug, Error)]
pub enum PlaneCurveError {
    #[error("field: {0}")]
    Field(String),
    #[error("degenerate parameterization: {0}")]
    Degenerate(String),
    #[error("the line contains the curve")]
    LineContainsCurve,
    #[error("power series truncation exhausted at order {0}")]
    Truncation(usize),
    #[error(transparent)]
    Cusp(#[from] CuspError),
    #[error("expectation failed: {0}")]
    Mismatch(String),
}

/// Three binary forms of a common degree over one field.
#[derive(Clone, Debug)]
pub struct ParamCurve {
    pub name: String,
    pub field: Arc<NumberField>,
    pub forms: [BinaryForm; 3],
}

impl ParamCurve {
    pub fn new(name: &str, forms: [BinaryForm; 3]) -> Result<Self, PlaneCurveError> {
        let d = forms[0].degree();
        if forms.iter().any(|f| f.degree() != d) {
            return Err(PlaneCurveError::Degenerate("forms of different degree".into()));
        }
        if d == 0 || forms.iter().all(BinaryForm::is_zero) {
            return Err(PlaneCurveError::Degenerate("constant map".into()));
        }
        let field = forms[0].field().clone();
        Ok(Self { name: name.to_string(), field, forms })
    }

    pub fn form_degree(&self) -> usize {
        self.forms[0].degree()
    }

    pub fn point(&self, p: &Param) -> [Elem; 3] {
        [self.forms[0].eval(p), self.forms[1].eval(p), self.forms[2].eval(p)]
    }

    /// `a F₀ + b F₁ + c F₂`.
    pub fn pullback(&self, line: &[Elem; 3]) -> BinaryForm {
        self.forms[0].scale(&line[0]).add(&self.forms[1].scale(&line[1])).add(&self.forms[2].scale(&line[2]))
    }

    /// Line coefficients from integers.
    pub fn line(&self, l: [i64; 3]) -> [Elem; 3] {
        l.map(|c| Elem::from_int(&self.field, c))
    }
}

/// Degree of the image: the form degree minus the degree of the common factor.
pub fn curve_degree(c: &ParamCurve) -> Result<usize, PlaneCurveError> {
    let g = c.forms[0].gcd(&c.forms[1]).gcd(&c.forms[2]);
    Ok(c.form_degree() - g.degree())
}

/// Pullback of a line: vanishing orders at the given parameters and the
/// degree left after removing those roots.
#[derive(Clone, Debug, Serialize)]
pub struct LinePullback {
    pub orders: Vec<usize>,
    pub residual_degree: usize,
    /// The residual form has no repeated root.
    pub residual_squarefree: bool,
}

pub fn line_pullback_orders(
    c: &ParamCurve,
    line: &[Elem; 3],
    params: &[Param],
) -> Result<LinePullback, PlaneCurveError> {
    let mut f = c.pullback(line);
    if f.is_zero() {
        return Err(PlaneCurveError::LineContainsCurve);
    }
    let mut orders = Vec::new();
    for p in params {
        let mut k = 0;
        while let Some(g) = f.divide_at(p) {
            f = g;
            k += 1;
        }
        orders.push(k);
    }
    // A repeated linear factor divides both partials, and conversely by Euler's identity.
    let residual_squarefree = f.degree() <= 1 || f.du().gcd(&f.dv()).degree() == 0;
    Ok(LinePullback { orders, residual_degree: f.degree(), residual_squarefree })
}

/// The gcd of the 2×2 minors of the Jacobian `(∂F/∂u, ∂F/∂v)`: it vanishes
/// exactly at parameters where `ν` fails to be an immersion.
#[derive(Clone, Debug)]
pub struct SingularLedger {
    pub gcd: BinaryForm,
}

impl SingularLedger {
    pub fn degree(&self) -> usize {
        self.gcd.degree()
    }

    pub fn order_at(&self, p: &Param) -> usize {
        self.gcd.order_at(p)
    }

    pub fn is_empty(&self) -> bool {
        self.gcd.degree() == 0
    }
}

pub fn singular_params(c: &ParamCurve) -> Result<SingularLedger, PlaneCurveError> {
    let du: Vec<BinaryForm> = c.forms.iter().map(BinaryForm::du).collect();
    let dv: Vec<BinaryForm> = c.forms.iter().map(BinaryForm::dv).collect();
    let minor = |i: usize, j: usize| du[i].mul(&dv[j]).sub(&du[j].mul(&dv[i]));
    let g = minor(0, 1).gcd(&minor(0, 2)).gcd(&minor(1, 2));
    if g.is_zero() {
        return Err(PlaneCurveError::Degenerate("all Jacobian minors vanish".into()));
    }
    Ok(SingularLedger { gcd: g })
}

/// Multiplicity sequence of the branch of `c` at parameter `p`, computed
/// from power series truncated at order `n`; `None` if `n` was too small.
pub fn germ_multseq_at_order(
    c: &ParamCurve,
    p: &Param,
    n: usize,
) -> Result<Option<MultiplicitySequence>, PlaneCurveError> {
    let pt = c.point(p);
    let k = pt
        .iter()
        .position(|x| !x.is_zero())
        .ok_or_else(|| PlaneCurveError::Degenerate(format!("base point at {p}")))?;
    let inv_k = pt[k].inv().expect("nonzero");
    let local: Vec<Series> = c.forms.iter().map(|f| Series::from_poly(&f.local_poly(p), n)).collect();
    let mut coords = Vec::new();
    for i in (0..3).filter(|&i| i != k) {
        let Some(r) = local[i].div(&local[k]) else { return Ok(None) };
        coords.push(r.sub_constant(&(&pt[i] * &inv_k)));
    }
    let (mut x, mut y) = (coords[0].clone(), coords[1].clone());
    let mut mults = Vec::new();
    loop {
        let (Some(ox), Some(oy)) = (x.ord(), y.ord()) else { return Ok(None) };
        let m = ox.min(oy);
        if m == 0 {
            return Err(PlaneCurveError::Degenerate("germ does not pass through the point".into()));
        }
        if m == 1 {
            break;
        }
        mults.push(m as u64);
        let (a, b) = if ox <= oy { (&x, &y) } else { (&y, &x) };
        let Some(ratio) = b.div(a) else { return Ok(None) };
        if ratio.c.is_empty() {
            return Ok(None);
        }
        let shifted = ratio.sub_constant(&ratio.c[0].clone());
        if ox <= oy {
            y = shifted;
        } else {
            x = shifted;
        }
    }
    if mults.is_empty() {
        return Err(PlaneCurveError::Mismatch(format!("{p} is a smooth point of {}", c.name)));
    }
    Ok(Some(MultiplicitySequence::from_display(&mults)?))
}

const START_ORDER: usize = 16;
const MAX_ORDER: usize = 1024;

/// Multiplicity sequence of the branch at `p`, doubling the truncation
/// order until the computation completes.
pub fn germ_multseq(c: &ParamCurve, p: &Param) -> Result<MultiplicitySequence, PlaneCurveError> {
    let mut n = START_ORDER;
    loop {
        if let Some(m) = germ_multseq_at_order(c, p, n)? {
            return Ok(m);
        }
        n *= 2;
        if n > MAX_ORDER {
            return Err(PlaneCurveError::Truncation(MAX_ORDER));
        }
    }
}

fn cross(a: &[Elem; 3], b: &[Elem; 3]) -> [Elem; 3] {
    [&a[1] * &b[2] - &a[2] * &b[1], &a[2] * &b[0] - &a[0] * &b[2], &a[0] * &b[1] - &a[1] * &b[0]]
}

/// The line through two distinct points.
pub fn line_through(a: &[Elem; 3], b: &[Elem; 3]) -> Option<[Elem; 3]> {
    let l = cross(a, b);
    (!l.iter().all(Elem::is_zero)).then_some(l)
}

/// Tangent line at the point `ν(p)`: spanned by the point and the first
/// derivative of the local parameterization not proportional to it.
pub fn tangent_line(c: &ParamCurve, p: &Param) -> Option<[Elem; 3]> {
    let local: Vec<Vec<Elem>> = c.forms.iter().map(|f| f.local_poly(p)).collect();
    let coeff = |i: usize, j: usize| local[i].get(j).cloned().unwrap_or_else(|| Elem::zero(&c.field));
    let pt = [coeff(0, 0), coeff(1, 0), coeff(2, 0)];
    (1..=c.form_degree()).find_map(|j| line_through(&pt, &[coeff(0, j), coeff(1, j), coeff(2, j)]))
}

/// One cusp with the number of its Galois conjugates.
#[derive(Clone, Debug)]
pub struct CuspSite {
    pub param: Param,
    /// Number of conjugate cusps represented by this one.
    pub orbit: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CuspCertificate {
    pub param: String,
    pub orbit: usize,
    pub multseq: Vec<u64>,
    /// `Σ m(m − 1)` over the sequence.
    pub genus_drop: u64,
    /// Order of the Jacobian-minor gcd at the parameter.
    pub ledger_order: usize,
}

/// Certificate that the listed cusps are all singular points: their genus
/// drops, counted with orbits, add up to `(d − 1)(d − 2)`.
#[derive(Clone, Debug, Serialize)]
pub struct ExhaustivenessCertificate {
    pub curve: String,
    pub degree: usize,
    pub cusps: Vec<CuspCertificate>,
    pub sum: u64,
    pub target: u64,
    pub exhaustive: bool,
}

pub fn certify_cusps(c: &ParamCurve, sites: &[CuspSite]) -> Result<ExhaustivenessCertificate, PlaneCurveError> {
    let d = curve_degree(c)?;
    let ledger = singular_params(c)?;
    let mut cusps = Vec::new();
    for s in sites {
        let m = germ_multseq(c, &s.param)?;
        let genus_drop = m.entries().iter().map(|&x| x * (x - 1)).sum();
        cusps.push(CuspCertificate {
            param: s.param.to_string(),
            orbit: s.orbit,
            multseq: m.entries().to_vec(),
            genus_drop,
            ledger_order: ledger.order_at(&s.param),
        });
    }
    let sum = cusps.iter().map(|x| x.genus_drop * x.orbit as u64).sum();
    let target = ((d - 1) * (d - 2)) as u64;
    Ok(ExhaustivenessCertificate { curve: c.name.clone(), degree: d, cusps, sum, target, exhaustive: sum == target })
}

/// Orders of a special line at the named parameters.
#[derive(Clone, Debug, Serialize)]
pub struct SpecialLineReport {
    pub curve: String,
    pub kind: String,
    pub line: Vec<String>,
    pub params: Vec<String>,
    pub orders: Vec<usize>,
    pub residual_degree: usize,
    pub residual_squarefree: bool,
}

/// The line through `ν(p)` and `ν(q)`; expects orders `mu_p`, `mu_q` and no
/// further intersection.
pub fn check_secant(
    c: &ParamCurve,
    p: &Param,
    q: &Param,
    mu: [usize; 2],
) -> Result<SpecialLineReport, PlaneCurveError> {
    let line =
        line_through(&c.point(p), &c.point(q)).ok_or_else(|| PlaneCurveError::Mismatch("points coincide".into()))?;
    let pb = line_pullback_orders(c, &line, &[p.clone(), q.clone()])?;
    if pb.orders != mu || pb.residual_degree != 0 {
        return Err(PlaneCurveError::Mismatch(format!(
            "secant orders {:?} residual {}",
            pb.orders, pb.residual_degree
        )));
    }
    Ok(report(c, "secant", &line, &[p.clone(), q.clone()], pb))
}

/// The tangent line at `ν(p)`; expects order `order` and one further
/// transversal intersection.
pub fn check_tangent(c: &ParamCurve, p: &Param, order: usize) -> Result<SpecialLineReport, PlaneCurveError> {
    let line = tangent_line(c, p).ok_or_else(|| PlaneCurveError::Mismatch("no tangent direction".into()))?;
    let pb = line_pullback_orders(c, &line, std::slice::from_ref(p))?;
    if pb.orders != [order] || pb.residual_degree != 1 {
        return Err(PlaneCurveError::Mismatch(format!(
            "tangent order {:?} residual {}",
            pb.orders, pb.residual_degree
        )));
    }
    Ok(report(c, "tangent", &line, std::slice::from_ref(p), pb))
}

fn report(c: &ParamCurve, kind: &str, line: &[Elem; 3], params: &[Param], pb: LinePullback) -> SpecialLineReport {
    SpecialLineReport {
        curve: c.name.clone(),
        kind: kind.into(),
        line: line.iter().map(Elem::to_string).collect(),
        params: params.iter().map(Param::to_string).collect(),
        orders: pb.orders,
        residual_degree: pb.residual_degree,
        residual_squarefree: pb.residual_squarefree,
    }
}

/// A 2×2 matrix acting by `[u:v] ↦ [a u + b v : c u + d v]`.
pub type Mobius = [[Elem; 2]; 2];

fn apply_mobius(m: &Mobius, p: &Param) -> Param {
    Param::new(&(&m[0][0] * &p.u) + &(&m[0][1] * &p.v), &(&m[1][0] * &p.u) + &(&m[1][1] * &p.v))
}

fn proportional(a: &[Elem], b: &[Elem]) -> bool {
    (0..a.len()).all(|i| (i + 1..a.len()).all(|j| (&a[i] * &b[j] - &a[j] * &b[i]).is_zero()))
}

/// Kernel vector of a small matrix over a number field, if the kernel is a line.
fn kernel_line(mut m: Vec<Vec<Elem>>, ncols: usize) -> Option<Vec<Elem>> {
    let field = m.first()?.first()?.field().clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(r) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, r);
        let inv = m[row][col].inv().expect("nonzero");
        m[row] = m[row].iter().map(|x| x * &inv).collect();
        for r2 in 0..m.len() {
            if r2 != row && !m[r2][col].is_zero() {
                let f = m[r2][col].clone();
                m[r2] = m[r2].iter().zip(&m[row]).map(|(a, b)| a - &(&f * b)).collect();
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let [f] = free[..] else { return None };
    let mut v = vec![Elem::zero(&field); ncols];
    v[f] = Elem::one(&field);
    for (r, &pc) in pivots.iter().enumerate() {
        v[pc] = -&m[r][f];
    }
    Some(v)
}

/// The Möbius map sending `from[i]` to `to[i]` for three distinct points.
pub fn mobius_through(from: &[Param; 3], to: &[Param; 3]) -> Option<Mobius> {
    let rows: Vec<Vec<Elem>> =
        from.iter().zip(to).map(|(p, w)| vec![&p.u * &w.v, &p.v * &w.v, -&(&p.u * &w.u), -&(&p.v * &w.u)]).collect();
    let k = kernel_line(rows, 4)?;
    let m = [[k[0].clone(), k[1].clone()], [k[2].clone(), k[3].clone()]];
    (!(&m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]).is_zero()).then_some(m)
}

/// Checks `ε ∘ ν = ν ∘ ρ` up to a scalar.  Without `rho`, the cusp
/// parameters `sites` (three of them) are matched through `ε` to determine
/// `ρ`.  Returns the `ρ` that was verified.
pub fn verify_automorphism(
    c: &ParamCurve,
    eps: &[[Elem; 3]; 3],
    rho: Option<Mobius>,
    sites: &[Param],
) -> Result<Option<Mobius>, PlaneCurveError> {
    let rho = match rho {
        Some(r) => r,
        None => {
            let [a, b, cc] = sites else {
                return Err(PlaneCurveError::Mismatch("three parameters are needed to find ρ".into()));
            };
            let from = [a.clone(), b.clone(), cc.clone()];
            let image = |p: &Param| -> [Elem; 3] {
                let x = c.point(p);
                [0, 1, 2].map(|i| (0..3).fold(Elem::zero(&c.field), |acc, j| &acc + &(&eps[i][j] * &x[j])))
            };
            let mut to = Vec::new();
            for p in &from {
                let img = image(p);
                let hit = from
                    .iter()
                    .find(|q| proportional(&img, &c.point(q)))
                    .ok_or_else(|| PlaneCurveError::Mismatch(format!("ε does not map the cusp at {p} to a cusp")))?;
                to.push(hit.clone());
            }
            let to: [Param; 3] = to.try_into().expect("three images");
            match mobius_through(&from, &to) {
                Some(m) => m,
                None => return Ok(None),
            }
        }
    };
    let g: Vec<BinaryForm> = (0..3)
        .map(|i| {
            (0..3).fold(BinaryForm::zero(&c.field, c.form_degree()), |acc, j| acc.add(&c.forms[j].scale(&eps[i][j])))
        })
        .collect();
    let h: Vec<BinaryForm> = c.forms.iter().map(|f| f.substitute(&rho)).collect();
    if g.iter().all(BinaryForm::is_zero) {
        return Ok(None);
    }
    let ok = (0..3).all(|i| (i + 1..3).all(|j| g[i].mul(&h[j]).sub(&g[j].mul(&h[i])).is_zero()));
    Ok(ok.then_some(rho))
}

/// Sanity check used by callers: `ρ` maps each site to a site.
pub fn permutes(rho: &Mobius, sites: &[Param]) -> bool {
    sites.iter().all(|p| {
        let q = apply_mobius(rho, p);
        sites.iter().any(|s| s.same_point(&q))
    })
}

/// The three built-in parameterizations.
pub mod fixtures {
    use super::*;

    fn lin(a: Elem, b: Elem) -> BinaryForm {
        BinaryForm::linear(a, b)
    }

    fn u(k: &Arc<NumberField>) -> BinaryForm {
        BinaryForm::linear(Elem::one(k), Elem::zero(k))
    }

    fn v(k: &Arc<NumberField>) -> BinaryForm {
        BinaryForm::linear(Elem::zero(k), Elem::one(k))
    }

    fn int(k: &Arc<NumberField>, n: i64) -> Elem {
        Elem::from_int(k, n)
    }

    /// `[u²v² : v²(u − v)² : u²(u − v)²]`, the quartic with three ordinary cusps.
    pub fn quartic(k: &Arc<NumberField>) -> ParamCurve {
        let (u, v) = (u(k), v(k));
        let umv = lin(int(k, 1), int(k, -1)).pow(2);
        let u2 = u.pow(2);
        let v2 = v.pow(2);
        ParamCurve::new("quartic", [u2.mul(&v2), v2.mul(&umv), u2.mul(&umv)]).expect("valid forms")
    }

    /// `[u v⁴ : v²(u³ − v³) : u²(u³ + 2v³)]`, of type `Q₄`.
    pub fn q4(k: &Arc<NumberField>) -> ParamCurve {
        // Coefficients of u^i v^{5−i}.
        let f0 = BinaryForm::from_ints(k, &[0, 1, 0, 0, 0, 0]);
        let f1 = BinaryForm::from_ints(k, &[-1, 0, 0, 1, 0, 0]);
        let f2 = BinaryForm::from_ints(k, &[0, 0, 2, 0, 0, 1]);
        ParamCurve::new("Q4", [f0, f1, f2]).expect("valid forms")
    }

    /// The field `ℚ(α)` with `α² − 3α + 1 = 0`.
    pub fn alpha_field() -> Arc<NumberField> {
        NumberField::new("Q(alpha)", &[1, -3, 1]).expect("monic")
    }

    /// `ℚ(∛2)`.
    pub fn cube_root_two_field() -> Arc<NumberField> {
        NumberField::new("Q(cbrt2)", &[-2, 0, 0, 1]).expect("monic")
    }

    /// `ℚ(ζ)` with `ζ² + ζ + 1 = 0`.
    pub fn zeta3_field() -> Arc<NumberField> {
        NumberField::new("Q(zeta3)", &[1, 1, 1]).expect("monic")
    }

    /// `[u²v²(u − αv) : v²(u − v)²((1 − α)u + v) : u²(u − v)²((α − 1)u + v)]`
    /// over `ℚ(α)`, of type `Q₃`.
    pub fn q3() -> ParamCurve {
        let k = alpha_field();
        let a = Elem::generator(&k);
        let one = Elem::one(&k);
        let (u, v) = (u(&k), v(&k));
        let umv2 = lin(one.clone(), -&one).pow(2);
        let u2 = u.pow(2);
        let v2 = v.pow(2);
        let f0 = u2.mul(&v2).mul(&lin(one.clone(), -&a));
        let f1 = v2.mul(&umv2).mul(&lin(&one - &a, one.clone()));
        let f2 = u2.mul(&umv2).mul(&lin(&a - &one, one.clone()));
        ParamCurve::new("Q3", [f0, f1, f2]).expect("valid forms")
    }

    /// `ε[x:y:z] = [αy : z : (α − 1)x]` over `ℚ(α)`.
    pub fn q3_automorphism(k: &Arc<NumberField>) -> [[Elem; 3]; 3] {
        let a = Elem::generator(k);
        let (z, o) = (Elem::zero(k), Elem::one(k));
        [[z.clone(), a.clone(), z.clone()], [z.clone(), z.clone(), o], [&a - &Elem::one(k), z.clone(), z]]
    }

    /// `ε = diag(ζ, 1, ζ²)` and `ρ[u:v] = [ζu : v]` over `ℚ(ζ)`.
    pub fn q4_automorphism(k: &Arc<NumberField>) -> ([[Elem; 3]; 3], Mobius) {
        let zeta = Elem::generator(k);
        let (z, o) = (Elem::zero(k), Elem::one(k));
        let eps = [
            [zeta.clone(), z.clone(), z.clone()],
            [z.clone(), o.clone(), z.clone()],
            [z.clone(), z.clone(), zeta.pow(2)],
        ];
        (eps, [[zeta, z.clone()], [z, o]])
    }

    /// Cusp sites of the quartic: `[1:0]`, `[0:1]`, `[1:1]`.
    pub fn quartic_sites(k: &Arc<NumberField>) -> Vec<CuspSite> {
        [(1, 0), (0, 1), (1, 1)]
            .into_iter()
            .map(|(a, b)| CuspSite { param: Param::rational(k, a, b), orbit: 1 })
            .collect()
    }

    /// Cusp sites of `Q₄` over `ℚ(∛2)`: `[1:0]` and one of the three
    /// conjugate roots of `2u³ + v³`, namely `[−1 : ∛2]`.
    pub fn q4_sites(k: &Arc<NumberField>) -> Vec<CuspSite> {
        vec![
            CuspSite { param: Param::rational(k, 1, 0), orbit: 1 },
            CuspSite { param: Param::new(int(k, -1), Elem::generator(k)), orbit: 3 },
        ]
    }

    /// Cusp sites of `Q₃`: `[1:1]`, `[0:1]`, `[1:0]`.
    pub fn q3_sites(k: &Arc<NumberField>) -> Vec<CuspSite> {
        [(1, 1), (0, 1), (1, 0)]
            .into_iter()
            .map(|(a, b)| CuspSite { param: Param::rational(k, a, b), orbit: 1 })
            .collect()
    }
}
