//! The explicit parameterizations: cusp certificates, the Jacobian ledger,
//! generic and special lines, and the projective automorphisms.

use cuspcalc::planecurve::fixtures::{
    cube_root_two_field, q3, q3_automorphism, q3_sites, q4, q4_automorphism, q4_sites, quartic, quartic_sites,
    zeta3_field,
};
use cuspcalc::planecurve::{
    certify_cusps, check_secant, check_tangent, curve_degree, permutes, singular_params, verify_automorphism,
    BinaryForm, CuspSite, Elem, NumberField, Param, ParamCurve,
};

/// Vanishing order at `p` of `l₀F₀ + l₁F₁ + l₂F₂`, by repeated division.
fn pullback_order(c: &ParamCurve, line: &[Elem; 3], p: &Param) -> usize {
    let mut f: BinaryForm = c.pullback(line);
    let mut k = 0;
    while let Some(g) = f.divide_at(p) {
        f = g;
        k += 1;
    }
    k
}

/// The line through two points, as the cross product.
fn cross(a: &[Elem; 3], b: &[Elem; 3]) -> [Elem; 3] {
    [&(&a[1] * &b[2]) - &(&a[2] * &b[1]), &(&a[2] * &b[0]) - &(&a[0] * &b[2]), &(&a[0] * &b[1]) - &(&a[1] * &b[0])]
}

/// Multiplicity of the germ at `p`: the least order of a line through
/// `ν(p)`, taken over lines joining `ν(p)` to a few other curve points.
fn generic_line_order(c: &ParamCurve, p: &Param) -> usize {
    let pt = c.point(p);
    [(2, 3), (5, 7), (-3, 11), (13, -4)]
        .into_iter()
        .map(|(a, b)| cross(&pt, &c.point(&Param::rational(&c.field, a, b))))
        .filter(|l| l.iter().any(|x| !x.is_zero()))
        .map(|l| pullback_order(c, &l, p))
        .min()
        .unwrap()
}

fn genus_drop(m: &[u64]) -> u64 {
    m.iter().map(|&x| x * (x - 1)).sum()
}

struct Expect {
    degree: usize,
    /// Display multiplicity sequence per site.
    seqs: Vec<Vec<u64>>,
}

fn check_certificate(c: &ParamCurve, sites: &[CuspSite], want: &Expect) {
    let cert = certify_cusps(c, sites).unwrap();
    assert_eq!(cert.degree, want.degree, "{}", c.name);
    assert_eq!(curve_degree(c).unwrap(), want.degree);
    let seqs: Vec<Vec<u64>> =
        cert.cusps.iter().map(|x| x.multseq.iter().copied().filter(|&m| m > 1).collect()).collect();
    assert_eq!(seqs, want.seqs, "{}", c.name);
    let d = want.degree as u64;
    let sum: u64 = want.seqs.iter().zip(sites).map(|(m, s)| genus_drop(m) * s.orbit as u64).sum();
    assert_eq!(sum, (d - 1) * (d - 2), "{}: oracle sum", c.name);
    assert_eq!((cert.sum, cert.target), (sum, (d - 1) * (d - 2)));
    assert!(cert.exhaustive);
    // The Jacobian minors vanish to order m − 1 at a cusp of multiplicity m.
    let ledger = singular_params(c).unwrap();
    let expect_ledger: usize = want.seqs.iter().zip(sites).map(|(m, s)| (m[0] as usize - 1) * s.orbit).sum();
    assert_eq!(ledger.degree(), expect_ledger, "{}", c.name);
    for (m, s) in want.seqs.iter().zip(sites) {
        assert_eq!(ledger.order_at(&s.param), m[0] as usize - 1, "{} at {}", c.name, s.param);
        assert_eq!(generic_line_order(c, &s.param), m[0] as usize, "{} at {}", c.name, s.param);
    }
}

pub fn quartic_has_three_ordinary_cusps() {
    let k = NumberField::rationals();
    let c = quartic(&k);
    let sites = quartic_sites(&k);
    let params: Vec<String> = sites.iter().map(|s| s.param.to_string()).collect();
    assert_eq!(params, ["[1:0]", "[0:1]", "[1:1]"]);
    check_certificate(&c, &sites, &Expect { degree: 4, seqs: vec![vec![2]; 3] });
}

/// A line through two ordinary cusps of a quartic meets it only there
/// (Bezout: 2 + 2 = 4).
pub fn quartic_secants() {
    let k = NumberField::rationals();
    let c = quartic(&k);
    let s = quartic_sites(&k);
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let r = check_secant(&c, &s[i].param, &s[j].param, [2, 2]).unwrap();
        assert_eq!(r.orders.iter().sum::<usize>() + r.residual_degree, 4);
        let line = cross(&c.point(&s[i].param), &c.point(&s[j].param));
        assert_eq!(pullback_order(&c, &line, &s[i].param), 2);
        assert_eq!(pullback_order(&c, &line, &s[j].param), 2);
    }
}

pub fn q4_cusps_over_the_cubic_field() {
    let k = cube_root_two_field();
    let c = q4(&k);
    let sites = q4_sites(&k);
    assert_eq!(sites[1].orbit, 3);
    check_certificate(&c, &sites, &Expect { degree: 5, seqs: vec![vec![2, 2, 2], vec![2]] });
}

/// Over ℚ the ledger still sees all four cusps: one rational root and the
/// irreducible cubic factor.
pub fn q4_ledger_over_the_rationals() {
    let k = NumberField::rationals();
    let c = q4(&k);
    let ledger = singular_params(&c).unwrap();
    assert_eq!(ledger.degree(), 4);
    assert_eq!(ledger.order_at(&Param::rational(&k, 1, 0)), 1);
}

/// The tangent at a cusp with sequence `(m₁, m₂, …)` has order `m₁ + m₂`,
/// leaving one transversal point on a quintic.
pub fn tangent_lines_at_the_quintic_cusps() {
    let k = cube_root_two_field();
    let c = q4(&k);
    let t = check_tangent(&c, &q4_sites(&k)[0].param, 2 + 2).unwrap();
    assert_eq!((t.orders.clone(), t.residual_degree), (vec![4], 5 - 4));
    assert!(t.residual_squarefree);

    let c3 = q3();
    for s in q3_sites(&c3.field) {
        let t = check_tangent(&c3, &s.param, 2 + 2).unwrap();
        assert_eq!((t.orders.clone(), t.residual_degree), (vec![4], 1), "Q3 at {}", s.param);
    }
    // A wrong expected order is reported as a mismatch.
    assert!(check_tangent(&c3, &q3_sites(&c3.field)[0].param, 5).is_err());
}

pub fn q3_has_three_a4_cusps() {
    let c = q3();
    let sites = q3_sites(&c.field);
    check_certificate(&c, &sites, &Expect { degree: 5, seqs: vec![vec![2, 2]; 3] });
}

pub fn q3_automorphism_permutes_the_cusps() {
    let c = q3();
    let k = c.field.clone();
    let params: Vec<Param> = q3_sites(&k).into_iter().map(|s| s.param).collect();
    let rho = verify_automorphism(&c, &q3_automorphism(&k), None, &params).unwrap().unwrap();
    assert!(permutes(&rho, &params));
    // The order-3 map has no fixed cusp.
    let moved = params.iter().all(|p| {
        let q = Param::new(&(&rho[0][0] * &p.u) + &(&rho[0][1] * &p.v), &(&rho[1][0] * &p.u) + &(&rho[1][1] * &p.v));
        !q.same_point(p)
    });
    assert!(moved);
}

pub fn q4_automorphism_over_zeta3() {
    let k = zeta3_field();
    let c = q4(&k);
    let (eps, rho) = q4_automorphism(&k);
    assert!(verify_automorphism(&c, &eps, Some(rho), &[]).unwrap().is_some());
    // The identity on the plane with a nontrivial ρ is rejected.
    let (z, o) = (Elem::zero(&k), Elem::one(&k));
    let id = [[o.clone(), z.clone(), z.clone()], [z.clone(), o.clone(), z.clone()], [z.clone(), z.clone(), o.clone()]];
    let (_, rho) = q4_automorphism(&k);
    assert!(verify_automorphism(&c, &id, Some(rho), &[]).unwrap().is_none());
}
