//! Fiber witnesses: supports, multiplicities, `F·D` and the horizontal
//! (−2)-twig, against a chain recursion computed here.

use super::{chain_multiplicities, sweep};
use cuspcalc::cusp::{assemble_curve, Family, TypeSpec};
use cuspcalc::fibration::{cstst_witness, expected_support_types, fiber_solve};
use cuspcalc::DivisorGraph;

fn twos(n: u64) -> Vec<i64> {
    vec![2; n as usize]
}

/// The fiber supports written out as chains of types.
fn literal_support(t: TypeSpec) -> Vec<i64> {
    let g = t.param.unwrap_or(0);
    let gi = g as i64;
    match t.family {
        Family::Q3 | Family::Q4 => vec![0],
        Family::FE => [vec![2, 1, 3, 3], twos(g - 4), vec![1, gi - 2]].concat(),
        Family::H => [vec![2, 1, 3, 2, 3], twos(g - 2), vec![1, gi]].concat(),
        Family::FZ2 => [vec![1, 4], twos(g - 3), vec![1, gi - 1, 3], twos(g - 3), vec![1]].concat(),
        Family::I | Family::J => vec![2, 1, 3, 1],
    }
}

pub fn recursion_oracle_on_small_chains() {
    assert_eq!(chain_multiplicities(&[2, 1, 3, 1]), Some(vec![1, 2, 1, 1]));
    assert_eq!(chain_multiplicities(&[2, 1, 2]), Some(vec![1, 2, 1]));
    assert_eq!(chain_multiplicities(&[0]), Some(vec![1]));
    assert_eq!(chain_multiplicities(&[2, 2]), None);
}

pub fn supports_match_the_literal_chains() {
    for t in sweep() {
        let w = cstst_witness(t).unwrap();
        let lit = literal_support(t);
        assert_eq!(w.support_types, lit, "{t}");
        assert_eq!(expected_support_types(&t), Some(lit), "{t}");
    }
}

pub fn multiplicities_follow_the_chain_recursion() {
    for t in sweep() {
        let w = cstst_witness(t).unwrap();
        let mu = chain_multiplicities(&w.support_types).unwrap_or_else(|| panic!("{t}: support is not a fiber"));
        let got: Vec<i64> = w.support.iter().map(|n| w.multiplicity(n).unwrap() as i64).collect();
        assert_eq!(got, mu, "{t}");
        assert_eq!(w.f_squared, 0, "{t}");
        assert_eq!(w.f_dot_d, 4, "{t}");
        let horizontal: i64 = w.horizontal_meeting.iter().map(|h| h.2).sum();
        assert_eq!(horizontal, 4, "{t}");
    }
}

pub fn frozen_multiplicities() {
    for t in [TypeSpec::new(Family::I, None).unwrap(), TypeSpec::new(Family::J, Some(2)).unwrap()] {
        let w = cstst_witness(t).unwrap();
        let got: Vec<u64> = w.support.iter().map(|n| w.multiplicity(n).unwrap()).collect();
        assert_eq!(got, [1, 2, 1, 1], "{t}");
    }
    let fe5 = cstst_witness(TypeSpec::new(Family::FE, Some(5)).unwrap()).unwrap();
    assert_eq!(fe5.support, ["q2.E5", "q2.E6", "q2.E4", "q2.E2", "q2.E1", "A", "q1.E1"]);
    assert_eq!(fe5.added_curves, ["A"]);
}

pub fn multiplicity_of_the_added_curve() {
    for t in sweep() {
        let g = t.param.unwrap_or(0);
        let want = match t.family {
            Family::FE => g - 2,
            Family::FZ2 => 2 * g - 3,
            Family::H => g,
            _ => continue,
        };
        let w = cstst_witness(t).unwrap();
        assert_eq!(w.multiplicity("A"), Some(want), "{t}");
    }
}

/// The library's kernel solver agrees with the recursion on the literal
/// supports rebuilt as bare chains.
pub fn fiber_solver_on_bare_supports() {
    for t in sweep() {
        let types = literal_support(t);
        if types == [0] {
            continue;
        }
        let (g, ids) = DivisorGraph::chain(&types, "V");
        let mu = fiber_solve(&g, &ids).unwrap();
        let got: Vec<i64> = ids.iter().map(|v| mu[v] as i64).collect();
        assert_eq!(Some(got), chain_multiplicities(&types), "{t}");
    }
}

pub fn horizontal_twig_is_a_neg2_twig_of_the_boundary() {
    for t in sweep() {
        let w = cstst_witness(t).unwrap();
        let cfg = assemble_curve(&t).unwrap();
        let g = &cfg.log;
        assert!(!w.horizontal_neg2_twig.is_empty(), "{t}");
        let ids: Vec<u32> = w.horizontal_neg2_twig.iter().map(|n| g.find(n).unwrap()).collect();
        assert!(ids.iter().all(|&v| g.self_int(v) == -2), "{t}");
        let order = g.order_chain(&ids, None).unwrap();
        assert!(order.iter().all(|&v| g.beta(v) <= 2), "{t}");
        assert!(g.beta(order[0]) == 1 || g.beta(*order.last().unwrap()) == 1, "{t}: no tip");
        assert!(ids.iter().all(|v| !w.support.contains(&g.label(*v))), "{t}: twig is vertical");
        let meets: Vec<&String> = w.horizontal_meeting.iter().map(|h| &h.0).collect();
        assert!(w.horizontal_neg2_twig.iter().any(|n| meets.contains(&n)), "{t}: twig misses the fiber");
    }
}
