//! Number fields `ℚ[x]/(f)` with exact arithmetic, and dense univariate
//! polynomials over them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::PlaneCurveError;

type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn trim(mut p: Vec<Q>) -> Vec<Q> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn qmul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn qsub(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().max(b.len());
    let z = Q::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

/// Quotient and remainder of rational polynomials (coefficients low to high).
fn qdivrem(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let b = trim(b.to_vec());
    let lead = b.last().expect("nonzero divisor").clone();
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut quo = vec![Q::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().expect("nonempty") / &lead;
        for (i, y) in b.iter().enumerate() {
            r[shift + i] -= &c * y;
        }
        quo[shift] = c;
        r = trim(r);
    }
    (trim(quo), r)
}

/// The field `ℚ[x]/(f)` for a monic `f`, irreducible by contract.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberField {
    pub name: String,
    /// Coefficients of `f`, low to high; the last one is 1.
    pub min_poly: Vec<Q>,
}

impl NumberField {
    /// `ℚ[x]/(f)` with integer coefficients of `f` given low to high.
    pub fn new(name: &str, min_poly: &[i64]) -> Result<Arc<Self>, PlaneCurveError> {
        let f = trim(min_poly.iter().map(|&c| q(c)).collect());
        if f.len() < 2 || !f.last().expect("nonempty").is_one() {
            return Err(PlaneCurveError::Field(format!("{name}: minimal polynomial must be monic of degree >= 1")));
        }
        Ok(Arc::new(Self { name: name.to_string(), min_poly: f }))
    }

    /// `ℚ` itself, as `ℚ[x]/(x)`.
    pub fn rationals() -> Arc<Self> {
        Self::new("Q", &[0, 1]).expect("x is monic")
    }

    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }
}

/// An element of a number field, stored as its reduced representative.
#[derive(Clone, Debug)]
pub struct Elem {
    field: Arc<NumberField>,
    c: Vec<Q>,
}

impl PartialEq for Elem {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c
    }
}

impl Eq for Elem {}

impl Elem {
    fn reduced(field: &Arc<NumberField>, p: Vec<Q>) -> Self {
        let (_, r) = qdivrem(&p, &field.min_poly);
        Self { field: field.clone(), c: r }
    }

    pub fn from_rational(field: &Arc<NumberField>, r: Q) -> Self {
        Self::reduced(field, vec![r])
    }

    pub fn from_int(field: &Arc<NumberField>, n: i64) -> Self {
        Self::from_rational(field, q(n))
    }

    /// Polynomial in the generator, coefficients low to high.
    pub fn from_poly(field: &Arc<NumberField>, p: &[i64]) -> Self {
        Self::reduced(field, p.iter().map(|&c| q(c)).collect())
    }

    /// The class of `x`.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::from_poly(field, &[0, 1])
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        Self { field: field.clone(), c: Vec::new() }
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_int(field, 1)
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// The rational value, if the element lies in `ℚ`.
    pub fn as_rational(&self) -> Option<Q> {
        match self.c.len() {
            0 => Some(Q::zero()),
            1 => Some(self.c[0].clone()),
            _ => None,
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inv(&self) -> Option<Elem> {
        if self.is_zero() {
            return None;
        }
        let (mut r0, mut r1) = (self.field.min_poly.clone(), self.c.clone());
        let (mut s0, mut s1): (Vec<Q>, Vec<Q>) = (Vec::new(), vec![Q::one()]);
        while !r1.is_empty() {
            let (quo, rem) = qdivrem(&r0, &r1);
            let s2 = qsub(&s0, &qmul(&quo, &s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        if r0.len() != 1 {
            return None;
        }
        let k = r0[0].clone();
        Some(Self::reduced(&self.field, s0.into_iter().map(|c| c / &k).collect()))
    }

    pub fn pow(&self, e: u32) -> Elem {
        (0..e).fold(Elem::one(&self.field), |acc, _| &acc * self)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{a}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{a}*x^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl Add for &Elem {
    type Output = Elem;
    fn add(self, o: &Elem) -> Elem {
        let n = self.c.len().max(o.c.len());
        let z = Q::zero();
        let c = trim((0..n).map(|i| self.c.get(i).unwrap_or(&z) + o.c.get(i).unwrap_or(&z)).collect());
        Elem { field: self.field.clone(), c }
    }
}

impl Sub for &Elem {
    type Output = Elem;
    fn sub(self, o: &Elem) -> Elem {
        Elem { field: self.field.clone(), c: qsub(&self.c, &o.c) }
    }
}

impl Mul for &Elem {
    type Output = Elem;
    fn mul(self, o: &Elem) -> Elem {
        Elem::reduced(&self.field, qmul(&self.c, &o.c))
    }
}

impl Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        Elem { field: self.field.clone(), c: self.c.iter().map(|x| -x).collect() }
    }
}

macro_rules! by_value {
    ($tr:ident, $m:ident) => {
        impl $tr for Elem {
            type Output = Elem;
            fn $m(self, o: Elem) -> Elem {
                (&self).$m(&o)
            }
        }
    };
}
by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);

/// Dense univariate polynomial over a number field, coefficients low to high,
/// with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(pub Vec<Elem>);

impl Poly {
    pub fn trimmed(mut v: Vec<Elem>) -> Self {
        while v.last().is_some_and(Elem::is_zero) {
            v.pop();
        }
        Poly(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn divrem(&self, b: &Poly) -> (Poly, Poly) {
        let lead_inv = b.0.last().expect("nonzero divisor").inv().expect("nonzero leading coefficient");
        let field = lead_inv.field().clone();
        let mut r = self.0.clone();
        if r.len() < b.0.len() {
            return (Poly(Vec::new()), self.clone());
        }
        let mut quo = vec![Elem::zero(&field); r.len() - b.0.len() + 1];
        while r.len() >= b.0.len() && !r.is_empty() {
            let shift = r.len() - b.0.len();
            let c = r.last().expect("nonempty") * &lead_inv;
            for (i, y) in b.0.iter().enumerate() {
                r[shift + i] = &r[shift + i] - &(&c * y);
            }
            quo[shift] = c;
            r = Poly::trimmed(r).0;
        }
        (Poly::trimmed(quo), Poly(r))
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }

    pub fn monic(&self) -> Poly {
        match self.0.last() {
            None => self.clone(),
            Some(l) => {
                let li = l.inv().expect("nonzero");
                Poly(self.0.iter().map(|c| c * &li).collect())
            }
        }
    }
}
