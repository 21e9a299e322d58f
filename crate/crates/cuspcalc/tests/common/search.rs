//! The necessary-condition profile search.

use super::{degree_from_genus, neg_e_self_oracle, twice_delta};
use cuspcalc::cusp::{Family, TypeSpec};
use cuspcalc::search::{search, SearchBounds, SearchReport, SUPERSET_BANNER};

/// Display multiplicity sequences, one per cusp.
type Profile = Vec<Vec<u64>>;

fn run(max_degree: u64, max_hn: u64, semi_ordinary_only: bool) -> SearchReport {
    search(&SearchBounds { max_degree, max_hn, semi_ordinary_only }).unwrap()
}

fn profile(t: TypeSpec) -> Vec<Vec<u64>> {
    let mut p: Vec<Vec<u64>> = t.multseqs().iter().map(|m| m.display_form()).collect();
    p.sort();
    p
}

/// Partitions of `n` into positive parts, largest first.
fn partitions(n: u64, max: u64) -> Vec<Vec<u64>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Semi-ordinary quintic profiles `(2)_{t_j+1}` with `Σ(t_j + 1) = 6` that
/// also meet the `E²` bounds: `E² = 25 − Σ(4(t_j + 1) + 2) = 1 − 2c` must be
/// at most −3 for one cusp and −2 for two (all have `τ = 2, s = 1`).
fn semi_ordinary_oracle() -> (Vec<Profile>, Vec<Profile>) {
    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    for p in partitions(6, 6) {
        let mut prof: Vec<Vec<u64>> = p.iter().map(|&k| vec![2; k as usize]).collect();
        prof.sort();
        let c = prof.len() as i64;
        let e2 = 1 - 2 * c;
        if c > 2 || e2 <= -3 {
            kept.push(prof);
        } else {
            dropped.push(prof);
        }
    }
    kept.sort();
    (kept, dropped)
}

pub fn eleven_solutions_of_the_quintic_equation() {
    let all = partitions(6, 6);
    assert_eq!(all.len(), 11);
    let (kept, dropped) = semi_ordinary_oracle();
    assert_eq!(kept.len(), 10);
    assert_eq!(dropped, vec![vec![vec![2; 6]]]);
}

pub fn semi_ordinary_quintics() {
    let r = run(5, 40, true);
    let mut got: Vec<Vec<Vec<u64>>> = r.survivors.iter().map(|s| s.cusps.clone()).collect();
    got.sort();
    let (kept, _) = semi_ordinary_oracle();
    assert_eq!(got, kept);
    let q3 = profile(TypeSpec::new(Family::Q3, None).unwrap());
    let q4 = profile(TypeSpec::new(Family::Q4, None).unwrap());
    assert!(got.contains(&q3) && got.contains(&q4));
    assert!(r.survivors.iter().all(|s| s.deg == 5));
}

pub fn degree_nine_contains_every_classified_type_up_to_nine() {
    let r = run(9, 40, false);
    assert_eq!(r.banner, SUPERSET_BANNER);
    assert!(r.banner.starts_with("SUPERSET"));
    let wanted = [
        TypeSpec::new(Family::Q3, None).unwrap(),
        TypeSpec::new(Family::Q4, None).unwrap(),
        TypeSpec::new(Family::FZ2, Some(4)).unwrap(),
        TypeSpec::new(Family::FZ2, Some(5)).unwrap(),
        TypeSpec::new(Family::J, Some(2)).unwrap(),
    ];
    for t in wanted {
        let p = profile(t);
        assert!(r.survivors.iter().any(|s| s.cusps == p), "{t} missing");
        assert!(r.survivors.iter().any(|s| s.matches(&t.multseqs())), "{t} missing");
    }
    assert!(r.survivors.len() > wanted.len());
}

/// Every survivor passes the filters when they are recomputed here.
pub fn survivors_satisfy_the_filters() {
    let r = run(9, 40, false);
    for s in &r.survivors {
        let delta: u64 = s.cusps.iter().map(|m| twice_delta(m)).sum();
        assert_eq!(degree_from_genus(delta), Some(s.deg), "{:?}", s.cusps);
        assert!(s.deg <= 9);
        assert!(s.cusps.iter().all(|m| m[0] + 2 < s.deg), "{:?}", s.cusps);
        assert_eq!(-s.e_self_log, neg_e_self_oracle(s.deg, &s.cusps), "{:?}", s.cusps);
        match s.cusps.len() {
            1 => assert!(s.e_self_log <= -3),
            2 => assert!(s.e_self_log <= -2),
            _ => {}
        }
        assert_eq!(s.lambda_lower.iter().sum::<u64>(), s.lambda_lower_sum);
        assert!(s.lambda_lower_sum <= 6);
        let mut sorted = s.cusps.clone();
        sorted.sort();
        assert_eq!(sorted, s.cusps);
    }
}

pub fn low_degrees_have_no_survivors() {
    assert!(run(3, 40, false).survivors.is_empty());
    // The tricuspidal quartic is excluded: the lines through a cusp give a
    // pencil fibering the complement.
    assert!(run(4, 40, false).survivors.is_empty());
}

pub fn search_is_deterministic() {
    let a = run(7, 30, false);
    let b = run(7, 30, false);
    assert_eq!(a, b);
    assert!(a.profiles_examined >= a.survivors.len() as u64);
}
