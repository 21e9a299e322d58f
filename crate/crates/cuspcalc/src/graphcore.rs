//! Weighted intersection graphs of reduced divisors on smooth rational surfaces.
//!
//! A [`DivisorGraph`] stores one vertex per irreducible component (with its
//! self-intersection) and one edge per unordered pair of meeting components,
//! carrying the *total* intersection number of the pair.  A weight above one
//! therefore stands for a tangency or for several intersection points; either
//! way the divisor is not snc there.
//!
//! All arithmetic is exact.  Structural vocabulary (tips, twigs, forks,
//! superfluous curves) follows the usual conventions: the branching number
//! `β_D(V)` of a component is `V·(D − V)`, a tip has `β ≤ 1` and a branching
//! component has `β ≥ 3`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg;

/// Vertex identifier inside a [`DivisorGraph`].
pub type VId = u32;

/// Errors raised by graph construction and graph queries.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown vertex id {0}")]
    UnknownVertex(VId),
    #[error("duplicate vertex id {0}")]
    DuplicateId(VId),
    #[error("duplicate vertex name {0:?}")]
    DuplicateName(String),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VId),
    #[error("edge weight must be positive, got {0}")]
    BadWeight(i64),
    #[error("graph is not snc: edge {0}-{1} has weight {2}")]
    NotSnc(VId, VId, i64),
    #[error("subconfiguration is not negative definite")]
    NotNegativeDefinite,
    #[error("not a union of twigs: {0}")]
    NotTwigUnion(String),
    #[error("invalid graph JSON: {0}")]
    Json(String),
}

/// One irreducible component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: VId,
    #[serde(default)]
    pub name: Option<String>,
    pub self_int: i64,
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    a: VId,
    b: VId,
    w: i64,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<Vertex>,
    edges: Vec<EdgeJson>,
}

/// Weighted intersection graph of a reduced divisor.
///
/// Invariants: ids and names are unique, there are no self-loops, and every
/// stored edge weight is positive.  The adjacency is kept symmetric.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct DivisorGraph {
    verts: BTreeMap<VId, Vertex>,
    adj: BTreeMap<VId, BTreeMap<VId, i64>>,
    next: VId,
}

impl TryFrom<GraphJson> for DivisorGraph {
    type Error = GraphError;

    fn try_from(j: GraphJson) -> Result<Self, GraphError> {
        let mut g = DivisorGraph::new();
        for v in j.vertices {
            g.insert_vertex(v)?;
        }
        for e in j.edges {
            g.add_edge(e.a, e.b, e.w)?;
        }
        Ok(g)
    }
}

impl From<DivisorGraph> for GraphJson {
    fn from(g: DivisorGraph) -> Self {
        let edges = g.edges().into_iter().map(|(a, b, w)| EdgeJson { a, b, w }).collect();
        GraphJson { vertices: g.verts.into_values().collect(), edges }
    }
}

impl DivisorGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a chain from its type `[-T_1², …, -T_m²]`; returns the graph and
    /// the ordered vertex ids.  Vertices are named `{prefix}{i}` from 1.
    pub fn chain(types: &[i64], prefix: &str) -> (Self, Vec<VId>) {
        let mut g = Self::new();
        let ids = g.add_chain(types, prefix);
        (g, ids)
    }

    /// Appends a chain to `self`; see [`DivisorGraph::chain`].
    pub fn add_chain(&mut self, types: &[i64], prefix: &str) -> Vec<VId> {
        let ids: Vec<VId> =
            types.iter().enumerate().map(|(i, &t)| self.add(&format!("{prefix}{}", i + 1), -t)).collect();
        for w in ids.windows(2) {
            self.add_edge(w[0], w[1], 1).expect("fresh chain vertices");
        }
        ids
    }

    fn insert_vertex(&mut self, v: Vertex) -> Result<VId, GraphError> {
        if self.verts.contains_key(&v.id) {
            return Err(GraphError::DuplicateId(v.id));
        }
        if let Some(n) = &v.name {
            if self.find(n).is_some() {
                return Err(GraphError::DuplicateName(n.clone()));
            }
        }
        let id = v.id;
        self.next = self.next.max(id + 1);
        self.adj.insert(id, BTreeMap::new());
        self.verts.insert(id, v);
        Ok(id)
    }

    /// Adds a vertex with an optional unique name.
    pub fn add_vertex(&mut self, name: Option<String>, self_int: i64) -> Result<VId, GraphError> {
        let id = self.next;
        self.insert_vertex(Vertex { id, name, self_int })
    }

    /// Adds a named vertex.
    ///
    /// # Panics
    /// If the name is already taken; use [`DivisorGraph::add_vertex`] to
    /// handle that case.
    pub fn add(&mut self, name: &str, self_int: i64) -> VId {
        self.add_vertex(Some(name.to_string()), self_int).unwrap_or_else(|e| panic!("{e}"))
    }

    /// Adds `w` to the intersection number of `a` and `b`.
    pub fn add_edge(&mut self, a: VId, b: VId, w: i64) -> Result<(), GraphError> {
        if w <= 0 {
            return Err(GraphError::BadWeight(w));
        }
        let cur = self.weight_checked(a, b)?;
        self.set_weight(a, b, cur + w)
    }

    /// Sets the intersection number of `a` and `b`; zero removes the edge.
    pub fn set_weight(&mut self, a: VId, b: VId, w: i64) -> Result<(), GraphError> {
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        if w < 0 {
            return Err(GraphError::BadWeight(w));
        }
        self.check(a)?;
        self.check(b)?;
        for (x, y) in [(a, b), (b, a)] {
            let row = self.adj.get_mut(&x).expect("checked");
            if w == 0 {
                row.remove(&y);
            } else {
                row.insert(y, w);
            }
        }
        Ok(())
    }

    fn check(&self, v: VId) -> Result<(), GraphError> {
        if self.verts.contains_key(&v) {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v))
        }
    }

    fn weight_checked(&self, a: VId, b: VId) -> Result<i64, GraphError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.weight(a, b))
    }

    /// Intersection number of two distinct vertices (0 when they do not meet).
    pub fn weight(&self, a: VId, b: VId) -> i64 {
        self.adj.get(&a).and_then(|r| r.get(&b)).copied().unwrap_or(0)
    }

    /// Intersection number, with `V·V` the self-intersection.
    pub fn dot(&self, a: VId, b: VId) -> i64 {
        if a == b {
            self.self_int(a)
        } else {
            self.weight(a, b)
        }
    }

    pub fn contains(&self, v: VId) -> bool {
        self.verts.contains_key(&v)
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn ids(&self) -> Vec<VId> {
        self.verts.keys().copied().collect()
    }

    pub fn vertex(&self, v: VId) -> Option<&Vertex> {
        self.verts.get(&v)
    }

    /// # Panics
    /// On an unknown id.
    pub fn self_int(&self, v: VId) -> i64 {
        self.verts[&v].self_int
    }

    pub fn set_self_int(&mut self, v: VId, s: i64) -> Result<(), GraphError> {
        self.verts.get_mut(&v).ok_or(GraphError::UnknownVertex(v))?.self_int = s;
        Ok(())
    }

    pub fn name(&self, v: VId) -> Option<&str> {
        self.verts.get(&v).and_then(|x| x.name.as_deref())
    }

    /// The name, or `#id` for unnamed vertices.
    pub fn label(&self, v: VId) -> String {
        self.name(v).map(str::to_string).unwrap_or_else(|| format!("#{v}"))
    }

    pub fn rename(&mut self, v: VId, name: &str) -> Result<(), GraphError> {
        if let Some(o) = self.find(name) {
            if o != v {
                return Err(GraphError::DuplicateName(name.to_string()));
            }
        }
        self.verts.get_mut(&v).ok_or(GraphError::UnknownVertex(v))?.name = Some(name.to_string());
        Ok(())
    }

    pub fn find(&self, name: &str) -> Option<VId> {
        self.verts.values().find(|v| v.name.as_deref() == Some(name)).map(|v| v.id)
    }

    /// Neighbours with intersection numbers, in id order.
    pub fn neighbors(&self, v: VId) -> Vec<(VId, i64)> {
        self.adj.get(&v).map(|r| r.iter().map(|(&k, &w)| (k, w)).collect()).unwrap_or_default()
    }

    /// All edges `(a, b, w)` with `a < b`.
    pub fn edges(&self) -> Vec<(VId, VId, i64)> {
        let mut out = Vec::new();
        for (&a, row) in &self.adj {
            for (&b, &w) in row {
                if a < b {
                    out.push((a, b, w));
                }
            }
        }
        out
    }

    /// Branching number `β_D(v)`: the sum of edge weights at `v`.
    pub fn beta(&self, v: VId) -> i64 {
        self.adj.get(&v).map(|r| r.values().sum()).unwrap_or(0)
    }

    /// Branching number of `v` in the subdivisor spanned by `within`.
    pub fn beta_in(&self, v: VId, within: &BTreeSet<VId>) -> i64 {
        self.adj.get(&v).map(|r| r.iter().filter(|(k, _)| within.contains(k)).map(|(_, w)| w).sum()).unwrap_or(0)
    }

    pub fn remove_vertex(&mut self, v: VId) -> Result<Vertex, GraphError> {
        let vert = self.verts.remove(&v).ok_or(GraphError::UnknownVertex(v))?;
        if let Some(row) = self.adj.remove(&v) {
            for k in row.keys() {
                if let Some(r) = self.adj.get_mut(k) {
                    r.remove(&v);
                }
            }
        }
        Ok(vert)
    }

    /// The induced subgraph on `s`, keeping ids and names.
    pub fn induced(&self, s: &[VId]) -> Result<DivisorGraph, GraphError> {
        let set: BTreeSet<VId> = s.iter().copied().collect();
        let mut g = DivisorGraph::new();
        for &v in &set {
            self.check(v)?;
            g.insert_vertex(self.verts[&v].clone())?;
        }
        for (a, b, w) in self.edges() {
            if set.contains(&a) && set.contains(&b) {
                g.set_weight(a, b, w)?;
            }
        }
        g.next = g.next.max(self.next);
        Ok(g)
    }

    /// True iff every edge weight is one.
    pub fn is_snc(&self) -> bool {
        self.edges().iter().all(|&(_, _, w)| w == 1)
    }

    fn first_non_snc(&self) -> Option<(VId, VId, i64)> {
        self.edges().into_iter().find(|&(_, _, w)| w != 1)
    }

    /// Connected components of the subgraph induced on `s`, each sorted.
    pub fn components_of(&self, s: &[VId]) -> Vec<Vec<VId>> {
        let set: BTreeSet<VId> = s.iter().copied().filter(|v| self.contains(*v)).collect();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &set {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = vec![start];
            let mut q = VecDeque::from([start]);
            while let Some(x) = q.pop_front() {
                for (y, _) in self.neighbors(x) {
                    if set.contains(&y) && seen.insert(y) {
                        comp.push(y);
                        q.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Orders a connected chain subconfiguration from one end to the other,
    /// starting at `start` when given.  Returns `None` if `s` is not a chain
    /// with unit edge weights.
    pub fn order_chain(&self, s: &[VId], start: Option<VId>) -> Option<Vec<VId>> {
        let set: BTreeSet<VId> = s.iter().copied().collect();
        if set.is_empty() || set.iter().any(|v| !self.contains(*v)) {
            return None;
        }
        let inner =
            |v: VId| -> Vec<(VId, i64)> { self.neighbors(v).into_iter().filter(|(k, _)| set.contains(k)).collect() };
        if set.iter().any(|&v| {
            let n = inner(v);
            n.len() > 2 || n.iter().any(|&(_, w)| w != 1)
        }) {
            return None;
        }
        let ends: Vec<VId> = set.iter().copied().filter(|&v| inner(v).len() <= 1).collect();
        let first = match start {
            Some(s0) if ends.contains(&s0) => s0,
            Some(_) => return None,
            None => *ends.first()?,
        };
        let mut order = vec![first];
        let mut prev: Option<VId> = None;
        let mut cur = first;
        loop {
            let next = inner(cur).into_iter().map(|(k, _)| k).find(|&k| Some(k) != prev);
            match next {
                Some(n) if !order.contains(&n) => {
                    order.push(n);
                    prev = Some(cur);
                    cur = n;
                }
                _ => break,
            }
        }
        (order.len() == set.len()).then_some(order)
    }

    /// Chain type `[-V_1², …]` of an ordered list of vertices.
    pub fn chain_type(&self, order: &[VId]) -> Vec<i64> {
        order.iter().map(|&v| -self.self_int(v)).collect()
    }

    /// Serializes to the `{vertices:[{id,name,self_int}], edges:[{a,b,w}]}` format.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("graph serialization is infallible")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, GraphError> {
        serde_json::from_value(v.clone()).map_err(|e| GraphError::Json(e.to_string()))
    }

    /// Graphviz export: label `name\n(self_int)`, edge label = weight when > 1.
    pub fn to_dot(&self, title: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graph \"{}\" {{", title.replace('"', "'"));
        for v in self.verts.values() {
            let _ = writeln!(s, "  v{} [label=\"{}\\n({})\"];", v.id, self.label(v.id).replace('"', "'"), v.self_int);
        }
        for (a, b, w) in self.edges() {
            if w > 1 {
                let _ = writeln!(s, "  v{a} -- v{b} [label=\"{w}\"];");
            } else {
                let _ = writeln!(s, "  v{a} -- v{b};");
            }
        }
        s.push_str("}\n");
        s
    }
}

/// A rational divisor: exact coefficients on graph vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalDivisor {
    pub coefficients: BTreeMap<VId, BigRational>,
}

impl RationalDivisor {
    pub fn new() -> Self {
        Self::default()
    }

    /// The reduced divisor `Σ_{v∈s} v`.
    pub fn reduced(s: &[VId]) -> Self {
        let mut d = Self::new();
        for &v in s {
            d.add(v, BigRational::one());
        }
        d
    }

    pub fn coeff(&self, v: VId) -> BigRational {
        self.coefficients.get(&v).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Adds `c·v`, dropping zero coefficients.
    pub fn add(&mut self, v: VId, c: BigRational) {
        let e = self.coefficients.entry(v).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.coefficients.remove(&v);
        }
    }

    /// `self + f·other`.
    pub fn add_scaled(&mut self, other: &RationalDivisor, f: &BigRational) {
        for (&v, c) in &other.coefficients {
            self.add(v, c * f);
        }
    }

    pub fn support(&self) -> Vec<VId> {
        self.coefficients.keys().copied().collect()
    }
}

/// Intersection matrix restricted to `s`, in the order given.
pub fn intersection_form(g: &DivisorGraph, s: &[VId]) -> Result<Vec<Vec<i64>>, GraphError> {
    for &v in s {
        g.check(v)?;
    }
    Ok(s.iter().map(|&a| s.iter().map(|&b| g.dot(a, b)).collect()).collect())
}

/// Discriminant `d(S) = det[−S_i·S_j]`, with `d(0) = 1`.
pub fn discriminant(g: &DivisorGraph, s: &[VId]) -> Result<BigInt, GraphError> {
    let m = intersection_form(g, s)?;
    let neg: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
    Ok(linalg::det(&neg))
}

/// Discriminant of a chain given by its type.
pub fn chain_discriminant(types: &[i64]) -> BigInt {
    let (g, ids) = DivisorGraph::chain(types, "T");
    discriminant(&g, &ids).expect("chain ids are valid")
}

/// True iff the restricted intersection form is negative definite.
pub fn negative_definite(g: &DivisorGraph, s: &[VId]) -> Result<bool, GraphError> {
    Ok(linalg::is_negative_definite(&intersection_form(g, s)?))
}

/// Shape of one connected component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComponentKind {
    Chain,
    Circular,
    Fork,
    Tree,
    /// Contains a cycle and a branching component.
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentShape {
    pub vertices: Vec<VId>,
    pub kind: ComponentKind,
}

/// Structural summary of a divisor graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub tips: Vec<VId>,
    pub branching: Vec<VId>,
    /// Maximal twigs, each ordered from its first tip inward.  A chain
    /// component contributes both of its orientations.
    pub maximal_twigs: Vec<Vec<VId>>,
    /// Maximal (−2)-twigs, ordered from the tip inward.
    pub maximal_neg2_twigs: Vec<Vec<VId>>,
    pub components: Vec<ComponentShape>,
    /// (−1)-curves `L` with `0 < β(L) ≤ 2` meeting two distinct components
    /// when `β(L) = 2`.
    pub superfluous: Vec<VId>,
}

/// Structural report; refuses non-snc graphs.
pub fn classify_structure(g: &DivisorGraph) -> Result<StructureReport, GraphError> {
    if let Some((a, b, w)) = g.first_non_snc() {
        return Err(GraphError::NotSnc(a, b, w));
    }
    Ok(structure_unchecked(g))
}

/// Walks the twig that starts at tip `tip` and continues through
/// non-branching components along unit-weight edges.  `accept` further
/// restricts which components may be appended.
fn walk_twig(g: &DivisorGraph, tip: VId, accept: &dyn Fn(VId) -> bool) -> Vec<VId> {
    let mut order = vec![tip];
    let mut prev: Option<VId> = None;
    let mut cur = tip;
    loop {
        let nb: Vec<(VId, i64)> = g.neighbors(cur).into_iter().filter(|&(k, _)| Some(k) != prev).collect();
        let [(next, w)] = nb[..] else { break };
        if w != 1 || order.contains(&next) || g.beta(next) > 2 || !accept(next) {
            break;
        }
        order.push(next);
        prev = Some(cur);
        cur = next;
        if g.beta(next) <= 1 {
            break;
        }
    }
    order
}

/// Structural report computed with weighted branching numbers and no snc
/// check.  Used on weak-resolution graphs where only the curve itself meets
/// the exceptional divisor non-transversally.
pub fn structure_unchecked(g: &DivisorGraph) -> StructureReport {
    let ids = g.ids();
    let tips: Vec<VId> = ids.iter().copied().filter(|&v| g.beta(v) <= 1).collect();
    let branching: Vec<VId> = ids.iter().copied().filter(|&v| g.beta(v) >= 3).collect();

    let mut maximal_twigs = Vec::new();
    let mut maximal_neg2_twigs: Vec<Vec<VId>> = Vec::new();
    for &t in &tips {
        maximal_twigs.push(walk_twig(g, t, &|_| true));
        if g.self_int(t) == -2 {
            let tw = walk_twig(g, t, &|v| g.self_int(v) == -2);
            let set: BTreeSet<VId> = tw.iter().copied().collect();
            let dup = maximal_neg2_twigs.iter().any(|o| o.iter().copied().collect::<BTreeSet<_>>() == set);
            if !dup {
                maximal_neg2_twigs.push(tw);
            }
        }
    }

    let components = g
        .components_of(&ids)
        .into_iter()
        .map(|c| {
            let set: BTreeSet<VId> = c.iter().copied().collect();
            let nedges = g.edges().iter().filter(|(a, b, _)| set.contains(a) && set.contains(b)).count();
            let unit = g.edges().iter().filter(|(a, b, _)| set.contains(a) && set.contains(b)).all(|e| e.2 == 1);
            let betas: Vec<i64> = c.iter().map(|&v| g.beta(v)).collect();
            let acyclic = unit && nedges + 1 == c.len();
            let kind = if betas.iter().all(|&b| b <= 2) {
                if betas.iter().any(|&b| b <= 1) {
                    ComponentKind::Chain
                } else {
                    ComponentKind::Circular
                }
            } else if acyclic {
                let nb = betas.iter().filter(|&&b| b >= 3).count();
                if nb == 1 && betas.contains(&3) && betas.iter().all(|&b| b <= 3) {
                    ComponentKind::Fork
                } else {
                    ComponentKind::Tree
                }
            } else {
                ComponentKind::Other
            };
            ComponentShape { vertices: c, kind }
        })
        .collect();

    let superfluous = ids.iter().copied().filter(|&v| is_superfluous(g, v)).collect();

    StructureReport { tips, branching, maximal_twigs, maximal_neg2_twigs, components, superfluous }
}

/// A (−1)-curve `v` is superfluous if `0 < β(v) ≤ 2` and, when `β(v) = 2`,
/// it meets two distinct components transversally.
pub fn is_superfluous(g: &DivisorGraph, v: VId) -> bool {
    if !g.contains(v) || g.self_int(v) != -1 {
        return false;
    }
    let b = g.beta(v);
    match b {
        1 => true,
        2 => {
            let n = g.neighbors(v);
            n.len() == 2 && n.iter().all(|&(_, w)| w == 1)
        }
        _ => false,
    }
}

/// Checks that `t` is a disjoint union of twigs of `g`.  Returns each
/// connected piece ordered from its first tip.
pub fn twig_pieces(g: &DivisorGraph, t: &[VId]) -> Result<Vec<Vec<VId>>, GraphError> {
    for &v in t {
        g.check(v)?;
    }
    let mut out = Vec::new();
    for comp in g.components_of(t) {
        if let Some(&v) = comp.iter().find(|&&v| g.beta(v) > 2) {
            return Err(GraphError::NotTwigUnion(format!("component {} is branching", g.label(v))));
        }
        let tip = comp.iter().copied().find(|&v| g.beta(v) <= 1 && g.order_chain(&comp, Some(v)).is_some());
        let Some(tip) = tip else {
            return Err(GraphError::NotTwigUnion(format!(
                "piece containing {} is not a chain starting at a tip",
                g.label(comp[0])
            )));
        };
        let order = g.order_chain(&comp, Some(tip)).expect("checked above");
        // Edges leaving the piece must also be transversal.
        for &v in &order {
            if g.neighbors(v).iter().any(|&(_, w)| w != 1) {
                return Err(GraphError::NotTwigUnion(format!(
                    "component {} meets the divisor non-transversally",
                    g.label(v)
                )));
            }
        }
        out.push(order);
    }
    Ok(out)
}

/// Bark of a union of negative definite twigs: the unique rational divisor
/// `B` supported on `t` with `T_0·B = β(T_0) − 2` for every component `T_0`.
pub fn bark(g: &DivisorGraph, t: &[VId]) -> Result<RationalDivisor, GraphError> {
    let pieces = twig_pieces(g, t)?;
    let all: Vec<VId> = pieces.concat();
    if !negative_definite(g, &all)? {
        return Err(GraphError::NotNegativeDefinite);
    }
    let m = linalg::to_rational(&intersection_form(g, &all)?);
    let rhs: Vec<BigRational> = all.iter().map(|&v| BigRational::from_integer(BigInt::from(g.beta(v) - 2))).collect();
    let x = linalg::solve(&m, &rhs).ok_or(GraphError::NotNegativeDefinite)?;
    let mut d = RationalDivisor::new();
    for (v, c) in all.into_iter().zip(x) {
        d.add(v, c);
    }
    Ok(d)
}

/// `ind(D) = Σ_W d(W − ftip W) / d(W)` over the maximal twigs `W`.
pub fn ind(g: &DivisorGraph) -> Result<BigRational, GraphError> {
    let rep = structure_unchecked(g);
    let mut acc = BigRational::zero();
    for w in &rep.maximal_twigs {
        if !negative_definite(g, w)? {
            return Err(GraphError::NotNegativeDefinite);
        }
        let num = discriminant(g, &w[1..])?;
        let den = discriminant(g, w)?;
        acc += BigRational::new(num, den);
    }
    Ok(acc)
}

/// Pairing data of the canonical class with the boundary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalPairings {
    /// `K·V = −2 − V²` per component.
    pub k_dot: BTreeMap<VId, i64>,
    pub k_squared: i64,
    pub k_dot_d: i64,
    /// `K·(K + D)`.
    pub k_k_plus_d: i64,
    pub z_squared: BigRational,
    /// `(2K + Z)²`.
    pub two_k_plus_z_squared: BigRational,
}

/// A rational class `k·K + Σ c_V V` on a surface whose boundary is `g` and
/// whose Picard rank is `rho`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalClass {
    pub k: BigRational,
    pub d: RationalDivisor,
}

impl FormalClass {
    pub fn boundary(d: RationalDivisor) -> Self {
        Self { k: BigRational::zero(), d }
    }

    pub fn canonical() -> Self {
        Self { k: BigRational::one(), d: RationalDivisor::new() }
    }

    pub fn plus(mut self, other: &FormalClass, f: &BigRational) -> Self {
        self.k += &other.k * f;
        self.d.add_scaled(&other.d, f);
        self
    }
}

/// Intersection of two formal classes using `K² = 10 − ρ`, `K·V = −2 − V²`.
pub fn pair(g: &DivisorGraph, rho: i64, x: &FormalClass, y: &FormalClass) -> BigRational {
    let int = |n: i64| BigRational::from_integer(BigInt::from(n));
    let mut acc = &x.k * &y.k * int(10 - rho);
    for (&v, c) in &x.d.coefficients {
        acc += c * &y.k * int(-2 - g.self_int(v));
    }
    for (&v, c) in &y.d.coefficients {
        acc += c * &x.k * int(-2 - g.self_int(v));
    }
    for (&a, ca) in &x.d.coefficients {
        for (&b, cb) in &y.d.coefficients {
            let w = g.dot(a, b);
            if w != 0 {
                acc += ca * cb * int(w);
            }
        }
    }
    acc
}

/// Canonical pairings on a surface whose Picard group is freely generated by
/// the components of `g` (so `ρ = #D`).
pub fn canonical_pairings(g: &DivisorGraph, z: &RationalDivisor) -> Result<CanonicalPairings, GraphError> {
    canonical_pairings_at_rank(g, g.len() as i64, z)
}

/// Canonical pairings with an explicit Picard rank `rho` (used on surfaces
/// where the boundary components satisfy linear relations).
pub fn canonical_pairings_at_rank(
    g: &DivisorGraph,
    rho: i64,
    z: &RationalDivisor,
) -> Result<CanonicalPairings, GraphError> {
    for v in z.support() {
        g.check(v)?;
    }
    let k_dot: BTreeMap<VId, i64> = g.ids().into_iter().map(|v| (v, -2 - g.self_int(v))).collect();
    let k_squared = 10 - rho;
    let k_dot_d: i64 = k_dot.values().sum();
    let zc = FormalClass::boundary(z.clone());
    let z_squared = pair(g, rho, &zc, &zc);
    let two_k_z = FormalClass { k: BigRational::from_integer(2.into()), d: z.clone() };
    let two_k_plus_z_squared = pair(g, rho, &two_k_z, &two_k_z);
    Ok(CanonicalPairings {
        k_dot,
        k_squared,
        k_dot_d,
        k_k_plus_d: k_squared + k_dot_d,
        z_squared,
        two_k_plus_z_squared,
    })
}

/// `−B²` for a rational divisor, convenient for `ind` cross-checks.
pub fn neg_square(g: &DivisorGraph, b: &RationalDivisor) -> BigRational {
    let c = FormalClass::boundary(b.clone());
    -pair(g, g.len() as i64, &c, &c)
}

/// True iff every coefficient lies strictly between 0 and 1.
pub fn coefficients_in_unit_interval(b: &RationalDivisor) -> bool {
    b.coefficients.values().all(|c| c.is_positive() && c < &BigRational::one())
}
