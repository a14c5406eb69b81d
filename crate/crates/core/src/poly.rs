//! Coefficient rings for jets: rationals, commutative polynomials over the
//! rationals, and first-order dual numbers.

use std::fmt;

use num_traits::{One, Zero};

use crate::linalg::Rational;
use crate::symbolic::LinComb;

/// Variable type of a polynomial.
pub trait Var: Ord + Clone + fmt::Debug + Send + Sync {}
impl<T: Ord + Clone + fmt::Debug + Send + Sync> Var for T {}

pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rat(q: Rational) -> Self;
    /// Multiplicative inverse when it exists in the ring.
    fn recip(&self) -> Option<Self>;
}

impl Coeff for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn from_rat(q: Rational) -> Self {
        q
    }
    fn recip(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(Rational::recip(self))
        }
    }
}

/// Monomial as a sorted list of `(variable, exponent)` pairs.
pub type PMono<V> = Vec<(V, u16)>;

pub fn pmono_mul<V: Ord + Clone>(a: &PMono<V>, b: &PMono<V>) -> PMono<V> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push(b[j].clone());
            j += 1;
        } else {
            out.push((a[i].0.clone(), a[i].1 + b[j].1));
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn pmono_degree<V>(m: &PMono<V>) -> usize {
    m.iter().map(|(_, e)| *e as usize).sum()
}

/// Commutative polynomial with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<V: Ord + Clone>(pub LinComb<PMono<V>>);

impl<V: Var> fmt::Debug for Poly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl<V: Var> Poly<V> {
    pub fn var(v: V) -> Self {
        Poly(LinComb::basis(vec![(v, 1)]))
    }

    pub fn constant(q: Rational) -> Self {
        Poly(LinComb::term(Vec::new(), q))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PMono<V>, &Rational)> {
        self.0.iter()
    }

    pub fn constant_term(&self) -> Rational {
        self.0.coeff(&Vec::new())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Poly(self.0.scaled(q))
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut out = Self::constant(<Rational as One>::one());
        for _ in 0..e {
            out = Coeff::mul(&out, self);
        }
        out
    }

    /// Substitutes each variable by a polynomial in other variables.
    pub fn substitute<W: Var>(&self, f: &impl Fn(&V) -> Poly<W>) -> Poly<W> {
        let mut out = Poly::<W>(LinComb::zero());
        for (m, c) in self.0.iter() {
            let mut t = Poly::<W>::constant(c.clone());
            for (v, e) in m {
                t = Coeff::mul(&t, &f(v).pow(*e as usize));
            }
            out = Coeff::add(&out, &t);
        }
        out
    }
}

impl<V: Var> Coeff for Poly<V> {
    fn zero() -> Self {
        Poly(LinComb::zero())
    }
    fn one() -> Self {
        Self::constant(<Rational as One>::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        let mut s = self.0.clone();
        s.add(&o.0);
        Poly(s)
    }
    fn sub(&self, o: &Self) -> Self {
        let mut s = self.0.clone();
        s.sub(&o.0);
        Poly(s)
    }
    fn mul(&self, o: &Self) -> Self {
        let mut out = LinComb::zero();
        for (a, x) in self.0.iter() {
            for (b, y) in o.0.iter() {
                out.add_term(pmono_mul(a, b), x * y);
            }
        }
        Poly(out)
    }
    fn neg(&self) -> Self {
        Poly(self.0.neg())
    }
    fn from_rat(q: Rational) -> Self {
        Self::constant(q)
    }
    fn recip(&self) -> Option<Self> {
        if self.0.len() == 1 {
            let c = self.constant_term();
            if !Zero::is_zero(&c) {
                return Some(Self::constant(num_traits::Inv::inv(c)));
            }
        }
        None
    }
}

/// `re + t·eps` with `t² = 0`.
#[derive(Clone, PartialEq, Debug)]
pub struct Dual<C> {
    pub re: C,
    pub eps: C,
}

impl<C: Coeff> Dual<C> {
    pub fn new(re: C, eps: C) -> Self {
        Dual { re, eps }
    }

    pub fn t() -> Self {
        Dual { re: C::zero(), eps: C::one() }
    }

    pub fn real(re: C) -> Self {
        Dual { re, eps: C::zero() }
    }
}

impl<C: Coeff> Coeff for Dual<C> {
    fn zero() -> Self {
        Dual { re: C::zero(), eps: C::zero() }
    }
    fn one() -> Self {
        Dual { re: C::one(), eps: C::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.eps.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        Dual { re: self.re.add(&o.re), eps: self.eps.add(&o.eps) }
    }
    fn sub(&self, o: &Self) -> Self {
        Dual { re: self.re.sub(&o.re), eps: self.eps.sub(&o.eps) }
    }
    fn mul(&self, o: &Self) -> Self {
        Dual { re: self.re.mul(&o.re), eps: self.re.mul(&o.eps).add(&self.eps.mul(&o.re)) }
    }
    fn neg(&self) -> Self {
        Dual { re: self.re.neg(), eps: self.eps.neg() }
    }
    fn from_rat(q: Rational) -> Self {
        Dual::real(C::from_rat(q))
    }
    fn recip(&self) -> Option<Self> {
        let r = self.re.recip()?;
        let eps = self.eps.mul(&r).mul(&r).neg();
        Some(Dual { re: r, eps })
    }
}
