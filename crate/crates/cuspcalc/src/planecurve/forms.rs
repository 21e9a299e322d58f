//! Binary forms, points of the parameter line, and truncated power series.

use std::fmt;
use std::sync::Arc;

use super::field::{Elem, NumberField, Poly};

/// A homogeneous form `Σ c_i u^i v^{d−i}` of degree `d = coeffs.len() − 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    pub coeffs: Vec<Elem>,
}

/// A point `[u : v]` of the parameter line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Param {
    pub u: Elem,
    pub v: Elem,
}

impl Param {
    pub fn new(u: Elem, v: Elem) -> Self {
        assert!(!(u.is_zero() && v.is_zero()), "[0:0] is not a point");
        Self { u, v }
    }

    pub fn rational(field: &Arc<NumberField>, u: i64, v: i64) -> Self {
        Self::new(Elem::from_int(field, u), Elem::from_int(field, v))
    }

    pub fn same_point(&self, o: &Param) -> bool {
        (&self.u * &o.v - &self.v * &o.u).is_zero()
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", self.u, self.v)
    }
}

impl BinaryForm {
    pub fn new(coeffs: Vec<Elem>) -> Self {
        assert!(!coeffs.is_empty(), "a form has a degree");
        Self { coeffs }
    }

    /// Form from integer coefficients of `u^i v^{d−i}`, `i = 0..=d`.
    pub fn from_ints(field: &Arc<NumberField>, c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| Elem::from_int(field, x)).collect())
    }

    pub fn zero(field: &Arc<NumberField>, d: usize) -> Self {
        Self::new(vec![Elem::zero(field); d + 1])
    }

    /// `a u + b v`.
    pub fn linear(a: Elem, b: Elem) -> Self {
        Self::new(vec![b, a])
    }

    pub fn constant(c: Elem) -> Self {
        Self::new(vec![c])
    }

    pub fn field(&self) -> &Arc<NumberField> {
        self.coeffs[0].field()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Elem::is_zero)
    }

    pub fn mul(&self, o: &BinaryForm) -> BinaryForm {
        let mut out = BinaryForm::zero(self.field(), self.degree() + o.degree());
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out.coeffs[i + j] = &out.coeffs[i + j] + &(a * b);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> BinaryForm {
        (0..e).fold(BinaryForm::constant(Elem::one(self.field())), |acc, _| acc.mul(self))
    }

    pub fn add(&self, o: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree(), o.degree(), "forms of different degree");
        BinaryForm::new(self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree(), o.degree(), "forms of different degree");
        BinaryForm::new(self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Elem) -> BinaryForm {
        BinaryForm::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, p: &Param) -> Elem {
        let d = self.degree() as u32;
        self.coeffs
            .iter()
            .enumerate()
            .fold(Elem::zero(self.field()), |acc, (i, c)| &acc + &(c * &(&p.u.pow(i as u32) * &p.v.pow(d - i as u32))))
    }

    /// `∂/∂u`.
    pub fn du(&self) -> BinaryForm {
        if self.degree() == 0 {
            return BinaryForm::zero(self.field(), 0);
        }
        let k = self.field().clone();
        BinaryForm::new((1..self.coeffs.len()).map(|i| &self.coeffs[i] * &Elem::from_int(&k, i as i64)).collect())
    }

    /// `∂/∂v`.
    pub fn dv(&self) -> BinaryForm {
        let d = self.degree();
        if d == 0 {
            return BinaryForm::zero(self.field(), 0);
        }
        let k = self.field().clone();
        BinaryForm::new((0..d).map(|i| &self.coeffs[i] * &Elem::from_int(&k, (d - i) as i64)).collect())
    }

    /// `F(a u + b v, c u + d v)`.
    pub fn substitute(&self, m: &[[Elem; 2]; 2]) -> BinaryForm {
        let d = self.degree() as u32;
        let lu = BinaryForm::linear(m[0][0].clone(), m[0][1].clone());
        let lv = BinaryForm::linear(m[1][0].clone(), m[1][1].clone());
        let mut out = BinaryForm::zero(self.field(), d as usize);
        for (i, c) in self.coeffs.iter().enumerate() {
            let term = lu.pow(i as u32).mul(&lv.pow(d - i as u32)).scale(c);
            out = out.add(&term);
        }
        out
    }

    /// Exact division by the linear form vanishing at `p`, if it divides.
    pub fn divide_at(&self, p: &Param) -> Option<BinaryForm> {
        if self.degree() == 0 || !self.eval(p).is_zero() {
            return None;
        }
        // Linear factor ℓ = v_p u − u_p v, i.e. coefficients [−u_p, v_p].
        let l0 = -&p.u;
        let l1 = p.v.clone();
        let d = self.degree();
        let mut q = vec![Elem::zero(self.field()); d];
        let mut r = self.coeffs.clone();
        if !l1.is_zero() {
            let inv = l1.inv().expect("nonzero");
            for i in (0..d).rev() {
                let c = &r[i + 1] * &inv;
                r[i] = &r[i] - &(&c * &l0);
                r[i + 1] = Elem::zero(self.field());
                q[i] = c;
            }
        } else {
            let inv = l0.inv().expect("nonzero");
            for i in 0..d {
                let c = &r[i] * &inv;
                r[i + 1] = &r[i + 1] - &(&c * &l1);
                r[i] = Elem::zero(self.field());
                q[i] = c;
            }
        }
        r.iter().all(Elem::is_zero).then(|| BinaryForm::new(q))
    }

    /// Vanishing order at `p` (the form must be nonzero).
    pub fn order_at(&self, p: &Param) -> usize {
        assert!(!self.is_zero(), "the zero form vanishes to every order");
        let mut f = self.clone();
        let mut k = 0;
        while let Some(g) = f.divide_at(p) {
            f = g;
            k += 1;
        }
        k
    }

    /// Power of `v` dividing the form.
    fn v_order(&self) -> usize {
        self.coeffs.iter().rev().take_while(|c| c.is_zero()).count()
    }

    /// Greatest common divisor: the monic gcd of the dehomogenizations times
    /// the common power of `v`.  Zero if both forms are zero.
    pub fn gcd(&self, o: &BinaryForm) -> BinaryForm {
        let k = self.field().clone();
        let g = Poly::trimmed(self.coeffs.clone()).gcd(&Poly::trimmed(o.coeffs.clone()));
        if g.is_zero() {
            return BinaryForm::zero(&k, 0);
        }
        let v = BinaryForm::linear(Elem::zero(&k), Elem::one(&k));
        let vo = self.v_order().min(o.v_order());
        BinaryForm::new(g.0).mul(&v.pow(vo as u32))
    }

    /// Taylor data at `p` in a local parameter `s`: `F(t₀ + s, 1)` when
    /// `p = [t₀ : 1]`, `F(1, s)` when `p = [1 : 0]`, scaled to the chart.
    pub fn local_poly(&self, p: &Param) -> Vec<Elem> {
        let k = self.field().clone();
        let d = self.degree();
        if p.v.is_zero() {
            return (0..=d).map(|j| self.coeffs[d - j].clone()).collect();
        }
        let t0 = &p.u * &p.v.inv().expect("nonzero");
        // Horner in the variable t = t₀ + s.
        let mut acc: Vec<Elem> = vec![Elem::zero(&k)];
        for c in self.coeffs.iter().rev() {
            let mut next = vec![Elem::zero(&k); acc.len() + 1];
            for (i, a) in acc.iter().enumerate() {
                next[i] = &next[i] + &(a * &t0);
                next[i + 1] = &next[i + 1] + a;
            }
            next[0] = &next[0] + c;
            acc = next;
        }
        acc.truncate(d + 1);
        acc
    }
}

/// A power series `Σ c_i s^i` known up to (excluding) `prec`.
#[derive(Clone, Debug)]
pub struct Series {
    pub c: Vec<Elem>,
    pub prec: usize,
}

impl Series {
    pub fn from_poly(p: &[Elem], prec: usize) -> Self {
        let k = p[0].field().clone();
        let c = (0..prec).map(|i| p.get(i).cloned().unwrap_or_else(|| Elem::zero(&k))).collect();
        Self { c, prec }
    }

    /// Order of vanishing, or `None` if all known coefficients are zero.
    pub fn ord(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn sub_constant(&self, a: &Elem) -> Series {
        let mut c = self.c.clone();
        if let Some(x) = c.first_mut() {
            *x = &*x - a;
        }
        Series { c, prec: self.prec }
    }

    /// `self / o`; needs `ord(o) ≤ ord(self)`.  Precision drops by `ord(o)`.
    pub fn div(&self, o: &Series) -> Option<Series> {
        let k = o.ord()?;
        if self.ord().is_some_and(|a| a < k) {
            return None;
        }
        let prec = self.prec.min(o.prec).checked_sub(k)?;
        let a: Vec<Elem> = self.c[k.min(self.c.len())..].to_vec();
        let b: Vec<Elem> = o.c[k..].to_vec();
        let inv = b[0].inv().expect("nonzero");
        let field = inv.field().clone();
        let mut q: Vec<Elem> = Vec::with_capacity(prec);
        for i in 0..prec {
            let mut acc = a.get(i).cloned().unwrap_or_else(|| Elem::zero(&field));
            for j in 1..=i.min(b.len() - 1) {
                acc = &acc - &(&b[j] * &q[i - j]);
            }
            q.push(&acc * &inv);
        }
        Some(Series { c: q, prec })
    }
}
