//! Scripted almost-minimalization replays: the contracted chains, the number
//! of steps, `λ`, `(2K + D♭)²` and the intersection lattice of the final
//! surface, each against an oracle computed here.

use std::collections::BTreeMap;

use super::{continuant, sweep};
use cuspcalc::cusp::{weak_resolution, CuspResolution, Family, TypeSpec};
use cuspcalc::mmp::{replay, ReplayOutcome, Variant};
use num_bigint::BigInt;
use num_rational::BigRational;

fn spec(family: Family, param: Option<u64>) -> TypeSpec {
    TypeSpec::new(family, param).unwrap()
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn frac(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn runs() -> Vec<(TypeSpec, Variant)> {
    let mut out: Vec<(TypeSpec, Variant)> = sweep().into_iter().map(|t| (t, Variant::Default)).collect();
    out.extend(sweep().into_iter().filter(|t| t.family == Family::J).map(|t| (t, Variant::Alternate)));
    out
}

fn name(j: usize, v: u32) -> String {
    format!("q{}.E{}", j + 1, v + 1)
}

/// Cusp markers recomputed from the weak resolution of each cusp.
struct Markers {
    res: Vec<CuspResolution>,
}

impl Markers {
    fn new(t: TypeSpec) -> Self {
        Markers { res: t.multseqs().iter().map(|m| weak_resolution(m).unwrap()).collect() }
    }

    /// `T_j`, from its first tip.
    fn t(&self, j: usize) -> Vec<String> {
        self.res[j].t.iter().map(|&v| name(j, v)).collect()
    }

    /// The twig of `Q_j` hanging off `C_j` away from the first curve, from
    /// its tip.
    fn c_twig(&self, j: usize) -> Vec<String> {
        let r = &self.res[j];
        let g = &r.q;
        let reaches_first = |start: u32| {
            let mut seen = vec![r.c, start];
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                if v == r.first() {
                    return true;
                }
                for (u, _) in g.neighbors(v) {
                    if !seen.contains(&u) {
                        seen.push(u);
                        stack.push(u);
                    }
                }
            }
            false
        };
        let start = g.neighbors(r.c).into_iter().map(|(u, _)| u).find(|&u| !reaches_first(u)).unwrap();
        let mut walk = vec![r.c, start];
        loop {
            let cur = *walk.last().unwrap();
            let next: Vec<u32> = g.neighbors(cur).into_iter().map(|(u, _)| u).filter(|u| !walk.contains(u)).collect();
            match next[..] {
                [] => break,
                [u] => walk.push(u),
                _ => panic!("twig off C branches"),
            }
        }
        walk.remove(0);
        walk.reverse();
        walk.iter().map(|&v| name(j, v)).collect()
    }
}

fn rev(v: Vec<String>) -> Vec<String> {
    v.into_iter().rev().collect()
}

fn a(s: &str) -> Vec<String> {
    vec![s.to_string()]
}

/// Expected `(curve name, Exc ψ)` per step, described through the cusp markers.
fn expected_exc(t: TypeSpec, v: Variant) -> Vec<(String, Vec<String>)> {
    let m = Markers::new(t);
    let two = |first: Vec<String>, mid: &str, last: Vec<String>| [first, a(mid), last].concat();
    let steps: Vec<(&str, Vec<String>)> = match (t.family, v) {
        (Family::Q3 | Family::Q4, _) => vec![],
        (Family::FE, _) => vec![("A", two(rev(m.t(1)), "A", m.t(0))), ("A'", two(vec![], "A'", m.c_twig(0)))],
        (Family::FZ2 | Family::H, _) => {
            vec![("A", two(rev(m.t(0)), "A", m.t(1))), ("A'", two(vec![], "A'", m.c_twig(0)))]
        }
        (Family::I, _) => vec![("A", two(rev(m.t(0)), "A", m.t(1))), ("A'", two(vec![], "A'", m.c_twig(1)))],
        (Family::J, Variant::Default) => {
            vec![("L1", two(rev(m.c_twig(0)), "L1", m.t(1))), ("L2", two(vec![], "L2", m.c_twig(1)))]
        }
        (Family::J, Variant::Alternate) => {
            vec![("L1", two(rev(m.c_twig(0)), "L1", m.t(1))), ("L", a("L")), ("L2", two(vec![], "L2", m.c_twig(1)))]
        }
    };
    steps.into_iter().map(|(n, e)| (n.to_string(), e)).collect()
}

fn same_chain(a: &[String], b: &[String]) -> bool {
    a == b || a.iter().rev().eq(b.iter())
}

fn expected_n(t: TypeSpec, v: Variant) -> usize {
    match (t.family, v) {
        (Family::Q3 | Family::Q4, _) => 0,
        (Family::J, Variant::Alternate) => 3,
        _ => 2,
    }
}

pub fn exc_chains_follow_the_marker_description() {
    for (t, v) in runs() {
        let o = replay(t, v).unwrap();
        let want = expected_exc(t, v);
        assert_eq!(o.steps.len(), want.len(), "{t} {v:?}");
        for (s, (a_name, exc)) in o.steps.iter().zip(&want) {
            assert_eq!(&s.a_name, a_name, "{t} {v:?}");
            assert!(same_chain(&s.exc_chain, exc), "{t} {v:?} {a_name}: {:?} vs {exc:?}", s.exc_chain);
        }
    }
}

pub fn frozen_exc_chains() {
    let cases: Vec<(TypeSpec, Variant, Vec<Vec<&str>>)> = vec![
        (spec(Family::FE, Some(5)), Variant::Default, vec![vec!["q1.E1", "A", "q2.E1", "q2.E2"], vec!["q1.E2", "A'"]]),
        (
            spec(Family::FZ2, Some(5)),
            Variant::Default,
            vec![vec!["q1.E1", "A", "q2.E1", "q2.E2"], vec!["q1.E3", "q1.E2", "A'"]],
        ),
        (
            spec(Family::H, Some(5)),
            Variant::Default,
            vec![vec!["q1.E1", "A", "q2.E1", "q2.E2", "q2.E3", "q2.E4"], vec!["q1.E4", "q1.E3", "q1.E2", "A'"]],
        ),
        (spec(Family::I, None), Variant::Default, vec![vec!["q1.E2", "q1.E1", "A", "q2.E1"], vec!["q2.E4", "A'"]]),
        (spec(Family::J, Some(2)), Variant::Default, vec![vec!["q1.E4", "L1", "q2.E1"], vec!["q2.E2", "L2"]]),
        (
            spec(Family::J, Some(3)),
            Variant::Alternate,
            vec![vec!["q1.E5", "q1.E4", "L1", "q2.E1"], vec!["L"], vec!["q2.E3", "q2.E2", "L2"]],
        ),
    ];
    for (t, v, want) in cases {
        let o = replay(t, v).unwrap();
        let got: Vec<Vec<String>> = o.steps.iter().map(|s| s.exc_chain.clone()).collect();
        assert_eq!(got, want, "{t} {v:?}");
    }
}

pub fn j_default_leaves_l_not_almost_log_exceptional() {
    for k in 2..=6 {
        let o = replay(spec(Family::J, Some(k)), Variant::Default).unwrap();
        assert_eq!(o.confirmed_not_ale, vec!["L".to_string()]);
    }
}

/// `ρ` drops by the length of each contracted chain, starting from
/// `1 + #Q` on the weak resolution.
pub fn step_counts_and_picard_ranks() {
    for (t, v) in runs() {
        let o = replay(t, v).unwrap();
        let r = &o.report;
        assert_eq!(r.n, expected_n(t, v), "{t} {v:?}");
        assert_eq!(r.d_min.len(), r.n + 1, "{t} {v:?}");
        let start: usize = 1 + t.multseqs().iter().map(|m| m.singular_len()).sum::<usize>();
        let contracted: usize = o.steps.iter().map(|s| s.exc_chain.len()).sum();
        assert_eq!(r.rho_n, (start - contracted) as i64, "{t} {v:?}");
    }
}

pub fn frozen_ranks_and_lambdas() {
    let rows: Vec<(TypeSpec, Variant, i64, i64, Vec<i64>)> = vec![
        (spec(Family::Q3, None), Variant::Default, 7, 1, vec![2, 2, 2]),
        (spec(Family::Q4, None), Variant::Default, 7, 1, vec![3, 1, 1, 1]),
        (spec(Family::FE, Some(6)), Variant::Default, 3, 2, vec![3, 2, 1]),
        (spec(Family::FZ2, Some(6)), Variant::Default, 2, 1, vec![2, 3, 1]),
        (spec(Family::H, Some(4)), Variant::Default, 3, 1, vec![3, 3]),
        (spec(Family::I, None), Variant::Default, 4, 2, vec![3, 3]),
        (spec(Family::J, Some(4)), Variant::Default, 4, 1, vec![4, 2]),
        (spec(Family::J, Some(4)), Variant::Alternate, 3, 1, vec![4, 2]),
    ];
    for (t, v, rho_n, rho_z, lambdas) in rows {
        let r = replay(t, v).unwrap().report;
        assert_eq!((r.rho_n, r.rho_z, r.lambdas.clone()), (rho_n, rho_z, lambdas), "{t} {v:?}");
    }
}

/// A semi-ordinary cusp `(2)_{t+1}` has `λ = t + 1`.
pub fn lambda_of_semi_ordinary_cusps() {
    for (t, v) in runs() {
        let o = replay(t, v).unwrap();
        for (j, m) in t.multseqs().iter().enumerate() {
            let d = m.display_form();
            if d.iter().all(|&x| x == 2) {
                assert_eq!(o.report.lambdas[j], d.len() as i64, "{t} cusp {}", j + 1);
            }
        }
    }
}

/// `(2K + D♭)² = 7 − Σλ − Σ 1/d(T)` over the singular points of the minimal
/// model, with `d` the continuant of each point's chain.
pub fn basic_inequality_and_closed_formula() {
    for (t, v) in runs() {
        let o = replay(t, v).unwrap();
        let r = &o.report;
        assert!(r.sum_lambda <= 6, "{t} {v:?}");
        assert_eq!(r.sum_lambda, r.lambdas.iter().sum::<i64>());
        if matches!(t.family, Family::Q3 | Family::Q4) {
            assert_eq!(r.sum_lambda, 6, "{t}");
        }
        let mut oracle = q(7 - r.sum_lambda);
        for types in &r.singular_point_types {
            oracle -= frac(1, continuant(types) as i64);
        }
        assert_eq!(r.two_k_plus_dflat_sq_direct, oracle, "{t} {v:?}");
        assert_eq!(r.two_k_plus_dflat_sq_formula, oracle, "{t} {v:?}");
        assert!(oracle > q(0), "{t} {v:?}");
        assert!(o.two_k_plus_dflat_ok());
    }
}

fn pairing_map(o: &ReplayOutcome) -> BTreeMap<(String, String), i64> {
    let mut m = BTreeMap::new();
    for p in &o.report.z_pairings {
        m.insert((p.a.clone(), p.b.clone()), p.value);
        m.insert((p.b.clone(), p.a.clone()), p.value);
    }
    m
}

fn isqrt(n: i64) -> Option<i64> {
    (0..=n).find(|&r| r * r == n)
}

/// On `Z = ℙ²` all pairings are products of degrees, the degrees add up
/// to 5, and `(2K + D)² = (5 − 6)²`.
fn check_plane(t: TypeSpec, v: Variant, o: &ReplayOutcome) {
    let p = pairing_map(o);
    let names = &o.report.d_min;
    let deg: Vec<i64> = names.iter().map(|n| isqrt(p[&(n.clone(), n.clone())]).unwrap()).collect();
    for (i, a) in names.iter().enumerate() {
        for (j, b) in names.iter().enumerate() {
            assert_eq!(p[&(a.clone(), b.clone())], deg[i] * deg[j], "{t} {v:?}: {a}.{b}");
        }
    }
    assert_eq!(deg.iter().sum::<i64>(), 5, "{t} {v:?}");
    assert_eq!(o.report.two_k_plus_dflat_sq_direct, q((5 - 6) * (5 - 6)), "{t} {v:?}");
}

/// On `Z = 𝔽₂` with negative section `S`, each curve is `aS + bF` with
/// `C·S = b − 2a` and `C² = 2a² + 2a·C·S`.  The classes must reproduce every
/// pairing, and the pushforward to the quadric cone gives
/// `(2K + D♭)² = (Σb − 8)²/2`.
fn check_f2(t: TypeSpec, o: &ReplayOutcome) {
    let p = pairing_map(o);
    assert_eq!(o.report.singular_point_types, vec![vec![2]], "{t}");
    let s = o.report.singular_points[0][0].clone();
    assert_eq!(p[&(s.clone(), s.clone())], -2);
    let names = &o.report.d_min;
    let class: Vec<(i64, i64)> = names
        .iter()
        .map(|n| {
            let cs = p[&(n.clone(), s.clone())];
            let c2 = p[&(n.clone(), n.clone())];
            let a = (0..=10).find(|&a| 2 * a * a + 2 * a * cs == c2).unwrap();
            (a, cs + 2 * a)
        })
        .collect();
    let dot = |x: (i64, i64), y: (i64, i64)| -2 * x.0 * y.0 + x.0 * y.1 + x.1 * y.0;
    for (i, a) in names.iter().enumerate() {
        for (j, b) in names.iter().enumerate() {
            assert_eq!(p[&(a.clone(), b.clone())], dot(class[i], class[j]), "{t}: {a}.{b}");
        }
    }
    let sum_b: i64 = class.iter().map(|c| c.1).sum();
    assert_eq!(o.report.two_k_plus_dflat_sq_direct, frac((sum_b - 8) * (sum_b - 8), 2), "{t}");
}

pub fn final_surface_lattice() {
    for (t, v) in runs() {
        let o = replay(t, v).unwrap();
        match o.report.rho_z {
            1 => check_plane(t, v, &o),
            2 => check_f2(t, &o),
            r => panic!("{t}: unexpected rank {r}"),
        }
        let expect_rank = if matches!(t.family, Family::FE | Family::I) { 2 } else { 1 };
        assert_eq!(o.report.rho_z, expect_rank, "{t} {v:?}");
    }
}

pub fn frozen_i_pairings() {
    let o = replay(spec(Family::I, None), Variant::Default).unwrap();
    assert_eq!(o.report.d_min, ["E", "q1.E4", "q2.E5"]);
    assert_eq!(o.report.singular_points, vec![vec!["q1.E3".to_string()]]);
    let p = pairing_map(&o);
    let get = |a: &str, b: &str| p[&(a.to_string(), b.to_string())];
    assert_eq!(get("E", "E"), 2);
    assert_eq!(get("E", "q1.E3"), 0);
    assert_eq!(get("E", "q1.E4"), 3);
    assert_eq!(get("E", "q2.E5"), 2);
    assert_eq!(get("q1.E3", "q1.E4"), 1);
    assert_eq!(get("q1.E3", "q2.E5"), 0);
    assert_eq!(get("q1.E4", "q1.E4"), 4);
    assert_eq!(get("q1.E4", "q2.E5"), 3);
    assert_eq!(get("q2.E5", "q2.E5"), 2);
}

pub fn frozen_fe_pairings() {
    let o = replay(spec(Family::FE, Some(5)), Variant::Default).unwrap();
    assert_eq!(o.report.d_min, ["E", "q1.E3", "q2.E4"]);
    assert_eq!(o.report.singular_points, vec![vec!["q2.E3".to_string()]]);
    let p = pairing_map(&o);
    let get = |a: &str, b: &str| p[&(a.to_string(), b.to_string())];
    assert_eq!(get("E", "E"), 8);
    assert_eq!(get("E", "q1.E3"), 4);
    assert_eq!(get("E", "q2.E3"), 0);
    assert_eq!(get("E", "q2.E4"), 2);
    assert_eq!(get("q1.E3", "q1.E3"), 2);
    assert_eq!(get("q2.E3", "q2.E3"), -2);
    assert_eq!(get("q2.E3", "q2.E4"), 1);
    assert_eq!(get("q2.E4", "q2.E4"), 0);
}

pub fn alternate_run_only_for_j() {
    assert!(replay(spec(Family::H, Some(3)), Variant::Alternate).is_err());
}
