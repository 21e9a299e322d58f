//! Literal classification-table rows, written out independently of the library's
//! family definitions.
#![allow(dead_code)]

pub mod fibrations;
pub mod marked;
pub mod plane_curves;
pub mod replays;
pub mod search;
pub mod table;

use cuspcalc::cusp::{Family, TypeSpec};

pub const GAMMAS: [u64; 6] = [3, 4, 5, 6, 7, 8];
pub const KS: [u64; 5] = [2, 3, 4, 5, 6];

/// HN pairs, one list per cusp.
pub type HnColumn = Vec<Vec<(u64, u64)>>;

/// One row of the table for a concrete parameter value.
#[derive(Clone, Debug)]
pub struct LiteralRow {
    pub spec: TypeSpec,
    pub c: usize,
    pub deg: u64,
    pub neg_e_self: i64,
    pub hn: HnColumn,
    pub multseqs: Vec<Vec<u64>>,
}

fn rep(value: u64, times: u64) -> Vec<u64> {
    vec![value; times as usize]
}

fn cat(parts: &[&[u64]]) -> Vec<u64> {
    parts.concat()
}

/// The row of `spec`, from the table's closed forms.
pub fn literal_row(spec: TypeSpec) -> LiteralRow {
    let p = spec.param.unwrap_or(0);
    let (c, deg, neg_e_self, hn, multseqs): (usize, u64, i64, HnColumn, Vec<Vec<u64>>) = match spec.family {
        Family::Q3 => (3, 5, 5, vec![vec![(5, 2)]; 3], vec![vec![2, 2]; 3]),
        Family::Q4 => (
            4,
            5,
            7,
            vec![vec![(7, 2)], vec![(3, 2)], vec![(3, 2)], vec![(3, 2)]],
            vec![vec![2, 2, 2], vec![2], vec![2], vec![2]],
        ),
        Family::FE => (
            3,
            3 * p - 5,
            p as i64,
            vec![vec![(3 * p - 6, 3 * p - 9), (3, 1)], vec![(4 * p - 10, 4), (2, 1)], vec![(3, 2)]],
            vec![cat(&[&[3 * (p - 3)], &rep(3, p - 3)]), cat(&[&rep(4, p - 3), &[2, 2]]), vec![2]],
        ),
        Family::FZ2 => (
            3,
            2 * p - 1,
            p as i64,
            vec![vec![(2 * p - 2, 2 * p - 4), (2, 1)], vec![(3 * p - 5, 3)], vec![(3, 2)]],
            vec![cat(&[&[2 * (p - 2)], &rep(2, p - 2)]), rep(3, p - 2), vec![2]],
        ),
        Family::H => (
            2,
            3 * p + 1,
            p as i64,
            vec![vec![(3 * p, 3 * p - 3), (3, 1)], vec![(4 * p - 2, 4), (2, 3)]],
            vec![cat(&[&[3 * (p - 1)], &rep(3, p - 1)]), cat(&[&rep(4, p - 1), &[2, 2, 2]])],
        ),
        Family::I => (
            2,
            14,
            3,
            vec![vec![(15, 6), (3, 1)], vec![(12, 8), (4, 2), (2, 1)]],
            vec![vec![6, 6, 3, 3], vec![8, 4, 4, 2, 2]],
        ),
        Family::J => (
            2,
            4 * p + 1,
            3,
            vec![vec![(6 * p + 2, 2 * p), (2, 1)], vec![(2 * p + 2, 2 * p), (2, 1)]],
            vec![cat(&[&rep(2 * p, 3), &rep(2, p)]), cat(&[&[2 * p], &rep(2, p)])],
        ),
    };
    LiteralRow { spec, c, deg, neg_e_self, hn, multseqs }
}

/// Every in-range member with `γ ∈ 3..=8` and `k ∈ 2..=6`, built without
/// the library's sweep helper.
pub fn sweep() -> Vec<TypeSpec> {
    let mut out = Vec::new();
    for family in Family::ALL {
        let params: Vec<u64> = match family {
            Family::Q3 | Family::Q4 | Family::I => {
                out.push(TypeSpec { family, param: None });
                continue;
            }
            Family::FE => GAMMAS.iter().copied().filter(|&g| g >= 5).collect(),
            Family::FZ2 => GAMMAS.iter().copied().filter(|&g| g >= 4).collect(),
            Family::H => GAMMAS.to_vec(),
            Family::J => KS.to_vec(),
        };
        out.extend(params.into_iter().map(|p| TypeSpec { family, param: Some(p) }));
    }
    out
}

/// `Σ m(m − 1)` over a multiplicity sequence.
pub fn twice_delta(m: &[u64]) -> u64 {
    m.iter().map(|&x| x * (x - 1)).sum()
}

/// The degree `d` with `(d − 1)(d − 2) = s`, by direct search.
pub fn degree_from_genus(s: u64) -> Option<u64> {
    (2..=200u64).find(|&d| (d - 1) * (d - 2) == s)
}

/// `−E²` on the minimal log resolution: every multiplicity lowers `E²` by
/// its square, and the separating blowups lower it once per unit of the last
/// multiplicity.
pub fn neg_e_self_oracle(deg: u64, multseqs: &[Vec<u64>]) -> i64 {
    let drop: u64 =
        multseqs.iter().map(|m| m.iter().map(|&x| x * x).sum::<u64>() + m.last().copied().unwrap_or(0)).sum();
    drop as i64 - (deg * deg) as i64
}

/// Determinant of the continuant `[a_1, …, a_n]` (discriminant of a chain);
/// the empty continuant is 1.
pub fn continuant(a: &[i64]) -> i128 {
    let (mut prev, mut cur) = (0i128, 1i128);
    for &x in a {
        (prev, cur) = (cur, x as i128 * cur - prev);
    }
    cur
}

/// Multiplicities of a fiber supported on a chain: `F·V_i = 0` gives
/// `μ_{i+1} = t_i μ_i − μ_{i−1}` from `μ_0 = 1`; the chain closes when the
/// step past the end is 0.  Returns the primitive solution.
pub fn chain_multiplicities(types: &[i64]) -> Option<Vec<i64>> {
    let mut mu = vec![1i64];
    let mut prev = 0;
    for (i, &t) in types.iter().enumerate() {
        let next = t * mu[i] - prev;
        prev = mu[i];
        if i + 1 == types.len() {
            return (next == 0).then_some(mu);
        }
        if next <= 0 {
            return None;
        }
        mu.push(next);
    }
    None
}
