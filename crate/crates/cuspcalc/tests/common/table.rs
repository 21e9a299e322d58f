//! Table reproduction: degrees, `−E²`, HN pairs against multiplicity
//! sequences, the per-cusp resolution graphs and `K·(K + D)`.

use super::marked::Marked;
use super::{degree_from_genus, literal_row, neg_e_self_oracle, sweep, twice_delta};
use cuspcalc::cusp::{assemble_curve, hn_to_multseq, multseq_to_hn, Family, HnPairs, MultiplicitySequence, TypeSpec};
use cuspcalc::graphcore::{bark, classify_structure, ind};
use cuspcalc::mmp::log_resolution_k_k_plus_d;
use num_bigint::BigInt;
use num_rational::BigRational;

fn spec(family: Family, param: Option<u64>) -> TypeSpec {
    TypeSpec::new(family, param).unwrap()
}

pub fn sweep_covers_the_parameter_ranges() {
    let ours = sweep();
    assert_eq!(ours.len(), 23);
    assert_eq!(TypeSpec::sweep(&super::GAMMAS, &super::KS), ours);
}

pub fn degree_and_self_intersection_match_the_table() {
    for t in sweep() {
        let lit = literal_row(t);
        let cfg = assemble_curve(&t).unwrap();
        assert_eq!(cfg.c(), lit.c, "{t}: cusp count");
        assert_eq!(cfg.deg, lit.deg, "{t}: degree");
        assert_eq!(-cfg.e_self_log, lit.neg_e_self, "{t}: -E^2");
        let row = t.table_row();
        assert_eq!((row.c, row.deg, row.neg_e_self), (lit.c, lit.deg, lit.neg_e_self), "{t}: table row");
    }
}

pub fn frozen_rows() {
    let fe5 = assemble_curve(&spec(Family::FE, Some(5))).unwrap();
    assert_eq!((fe5.deg, -fe5.e_self_log), (10, 5));
    let j3 = assemble_curve(&spec(Family::J, Some(3))).unwrap();
    assert_eq!((j3.deg, -j3.e_self_log), (13, 3));
    let i = assemble_curve(&spec(Family::I, None)).unwrap();
    assert_eq!((i.deg, -i.e_self_log), (14, 3));
}

/// The literal multiplicity sequences satisfy the genus formula for the
/// literal degree, and the blowup count gives the literal `−E²`.
pub fn literal_rows_are_self_consistent() {
    for t in sweep() {
        let lit = literal_row(t);
        let s: u64 = lit.multseqs.iter().map(|m| twice_delta(m)).sum();
        assert_eq!(degree_from_genus(s), Some(lit.deg), "{t}");
        assert_eq!(neg_e_self_oracle(lit.deg, &lit.multseqs), lit.neg_e_self, "{t}");
    }
}

pub fn hn_pairs_convert_to_the_tabulated_sequences() {
    for t in sweep() {
        let lit = literal_row(t);
        let hn: Vec<Vec<(u64, u64)>> = t.hn_pairs().iter().map(|h| h.pairs().to_vec()).collect();
        assert_eq!(hn, lit.hn, "{t}: HN pairs");
        for (h, m) in lit.hn.iter().zip(&lit.multseqs) {
            let h = HnPairs::new(h.clone()).unwrap();
            let seq = hn_to_multseq(&h).unwrap();
            assert_eq!(&seq.display_form(), m, "{t}: {h:?} to multiplicities");
            let back = multseq_to_hn(&MultiplicitySequence::from_display(m).unwrap()).unwrap();
            assert_eq!(back, h, "{t}: {m:?} to HN pairs");
        }
    }
}

pub fn isomorphism_check_sees_markers() {
    // Same weighted chain, different position of the first curve.
    let a = Marked::chain(&[2, 3, 1, 2]);
    let mut b = Marked::chain(&[2, 3, 1, 2]);
    b.first = 3;
    assert!(a.isomorphic(&a));
    assert!(!a.isomorphic(&b));
    assert!(!a.isomorphic(&Marked::chain(&[3, 2, 1, 2])));
}

/// `K·(K + D)` from adjunction: `K² = 9 − N` after `N` blowups of ℙ² and
/// `K·V = −V² − 2` for every rational component `V` of `D`.
pub fn log_euler_characteristic_vanishes() {
    for t in sweep() {
        let cfg = assemble_curve(&t).unwrap();
        let g = &cfg.log;
        let blowups = g.len() as i64 - 1;
        let k_dot_d: i64 = g.ids().iter().map(|&v| -g.self_int(v) - 2).sum();
        let oracle = 9 - blowups + k_dot_d;
        assert_eq!(oracle, 0, "{t}: adjunction oracle");
        assert_eq!(log_resolution_k_k_plus_d(&cfg), 0, "{t}");
    }
}

/// `ind` on the log boundary of Q₄: three ordinary cusps give twigs `[3]`
/// and `[2]` each, and the (2,2,2) cusp gives `[2]` and `[2, 2, 3]` (tip
/// first), so `ind = 3·(1/3 + 1/2) + 1/2 + 5/7`.  It also equals `−Bk²` for
/// the bark of all maximal twigs.
pub fn ind_of_the_q4_boundary() {
    let r = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
    let cfg = assemble_curve(&spec(Family::Q4, None)).unwrap();
    let g = &cfg.log;
    let twigs = classify_structure(g).unwrap().maximal_twigs;
    let mut types: Vec<Vec<i64>> = twigs.iter().map(|w| w.iter().map(|&v| -g.self_int(v)).collect()).collect();
    types.sort();
    assert_eq!(types, [vec![2], vec![2], vec![2], vec![2], vec![2, 2, 3], vec![3], vec![3], vec![3]]);
    let want = r(3, 1) * (r(1, 3) + r(1, 2)) + r(1, 2) + r(5, 7);
    assert_eq!(ind(g).unwrap(), want);
    let all: Vec<u32> = twigs.concat();
    let b = bark(g, &all).unwrap();
    let sq: BigRational = all
        .iter()
        .flat_map(|&v| all.iter().map(move |&w| (v, w)))
        .map(|(v, w)| b.coeff(v) * b.coeff(w) * r(if v == w { g.self_int(v) } else { g.weight(v, w) }, 1))
        .sum();
    assert_eq!(-sq, want);
}
