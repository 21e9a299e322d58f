//! Marked weighted-graph isomorphism and the per-cusp resolution fixtures.

use std::collections::BTreeMap;

use cuspcalc::cusp::{weak_resolution, CuspResolution, Family, TypeSpec};

fn spec(family: Family, param: Option<u64>) -> TypeSpec {
    TypeSpec::new(family, param).unwrap()
}

/// A weighted graph with two marked vertices, for isomorphism tests.
pub struct Marked {
    self_int: Vec<i64>,
    edges: BTreeMap<(usize, usize), i64>,
    /// The first exceptional curve and the (−1)-curve.
    pub first: usize,
    pub minus_one: usize,
}

impl Marked {
    fn weight(&self, a: usize, b: usize) -> i64 {
        self.edges.get(&(a.min(b), a.max(b))).copied().unwrap_or(0)
    }

    pub fn from_resolution(r: &CuspResolution) -> Self {
        let ids = r.q.ids();
        let pos = |v| ids.iter().position(|&x| x == v).unwrap();
        let mut edges = BTreeMap::new();
        for (a, b, w) in r.q.edges() {
            let (a, b) = (pos(a), pos(b));
            edges.insert((a.min(b), a.max(b)), w);
        }
        Marked {
            self_int: ids.iter().map(|&v| r.q.self_int(v)).collect(),
            edges,
            first: pos(r.first()),
            minus_one: pos(r.c),
        }
    }

    /// A chain `[a_1, …]` whose first entry is the first exceptional curve.
    pub fn chain(types: &[i64]) -> Self {
        let mut edges = BTreeMap::new();
        for i in 1..types.len() {
            edges.insert((i - 1, i), 1);
        }
        Marked {
            self_int: types.iter().map(|t| -t).collect(),
            edges,
            first: 0,
            minus_one: types.iter().position(|&t| t == 1).unwrap(),
        }
    }

    /// A fork with branch `−branch` and twigs listed from their tips; the
    /// first twig's tip is the first exceptional curve.
    pub fn fork(branch: i64, twigs: &[Vec<i64>]) -> Self {
        let mut self_int = vec![-branch];
        let mut edges = BTreeMap::new();
        let mut minus_one = None;
        for t in twigs {
            let start = self_int.len();
            for (i, &a) in t.iter().enumerate() {
                if a == 1 {
                    minus_one = Some(self_int.len());
                }
                self_int.push(-a);
                if i > 0 {
                    edges.insert((start + i - 1, start + i), 1);
                }
            }
            edges.insert((0, start + t.len() - 1), 1);
        }
        Marked { self_int, edges, first: 1, minus_one: minus_one.unwrap() }
    }

    pub fn isomorphic(&self, o: &Marked) -> bool {
        let n = self.self_int.len();
        if n != o.self_int.len() || self.edges.len() != o.edges.len() {
            return false;
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.extend(o, 0, &mut map, &mut used)
    }

    fn extend(&self, o: &Marked, i: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        let n = map.len();
        if i == n {
            return map[self.first] == o.first && map[self.minus_one] == o.minus_one;
        }
        for j in 0..n {
            if used[j] || self.self_int[i] != o.self_int[j] {
                continue;
            }
            if (i == self.first) != (j == o.first) || (i == self.minus_one) != (j == o.minus_one) {
                continue;
            }
            if (0..i).any(|k| self.weight(i, k) != o.weight(j, map[k])) {
                continue;
            }
            map[i] = j;
            used[j] = true;
            if self.extend(o, i + 1, map, used) {
                return true;
            }
            used[j] = false;
        }
        map[i] = usize::MAX;
        false
    }
}

fn resolution_of(t: TypeSpec, j: usize) -> CuspResolution {
    weak_resolution(&t.multseqs()[j]).unwrap()
}

fn twos(n: u64) -> Vec<i64> {
    vec![2; n as usize]
}

fn assert_fixture(t: TypeSpec, j: usize, want: &Marked, tau: i64) {
    let r = resolution_of(t, j);
    assert!(Marked::from_resolution(&r).isomorphic(want), "{t} cusp {}: graph differs", j + 1);
    // The curve passes through the (−1)-curve only, with multiplicity τ.
    assert_eq!(r.germ.len(), 1, "{t} cusp {}", j + 1);
    assert_eq!(r.germ.get(&r.c), Some(&tau), "{t} cusp {}", j + 1);
    assert_eq!(r.tau, tau);
}

/// FE: `Q₁ = [(2)_t, 3, 1, 2]` and `Q₂ = [t + 2, 1, (2)_t]` with `t = γ − 4`.
pub fn fe_resolution_chains() {
    for g in 5..=8u64 {
        let t = spec(Family::FE, Some(g));
        let tt = (g - 4) as i64;
        let q1 = Marked::chain(&[twos(g - 4), vec![3, 1, 2]].concat());
        let q2 = Marked::chain(&[vec![tt + 2, 1], twos(g - 4)].concat());
        assert_fixture(t, 1, &q1, 2);
        assert_fixture(t, 0, &q2, 3);
    }
}

/// H: a (−2)-branch with twigs `[(2)_{γ−2}, 3]`, `[2]` and `[1]`.
pub fn h_resolution_fork() {
    for g in 3..=8u64 {
        let t = spec(Family::H, Some(g));
        let fork = Marked::fork(2, &[[twos(g - 2), vec![3]].concat(), vec![2], vec![1]]);
        assert_fixture(t, 1, &fork, 2);
        let r = resolution_of(t, 1);
        let branching: Vec<_> = r.q.ids().into_iter().filter(|&v| r.q.beta(v) == 3).collect();
        assert_eq!(branching.len(), 1);
        assert_eq!(r.q.self_int(branching[0]), -2);
    }
}

/// J: `[2, 2, k + 1, 1, (2)_{k−1}]` and `[k + 1, 1, (2)_{k−1}]`.
pub fn j_resolution_chains() {
    for k in 2..=6u64 {
        let t = spec(Family::J, Some(k));
        let kk = k as i64;
        let q1 = Marked::chain(&[vec![2, 2, kk + 1, 1], twos(k - 1)].concat());
        let q2 = Marked::chain(&[vec![kk + 1, 1], twos(k - 1)].concat());
        assert_fixture(t, 0, &q1, 2);
        assert_fixture(t, 1, &q2, 2);
    }
}
