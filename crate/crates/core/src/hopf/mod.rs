//! The Hopf algebra `H_n` from its presentation: PBW normal forms by
//! commutator rewriting, coproduct, counit, characters and antipodes.

mod words;
pub mod verify;

pub use words::{parse_word, random_word, Strategy};

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::linalg::{rat, Rational};
use crate::symbolic::{Gen, LinComb, Memo, Mono, Sym};

pub type HElem = LinComb<Mono>;
pub type H2 = LinComb<(Mono, Mono)>;

/// Normal δ symbols of weight `w` (lower multiset of size `w + 1`).
pub fn normal_syms(n: usize, w: usize) -> Vec<Sym> {
    let mut out = Vec::new();
    for up in 0..n as u8 {
        for low in multisets(n, w + 1) {
            out.push(Sym { up, low });
        }
    }
    out
}

/// Sorted multisets of size `k` over `0..n`.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<u8>> {
    fn rec(n: u8, k: usize, start: u8, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n as u8, k, 0, &mut Vec::new(), &mut out);
    out
}

/// All generators of weight at most `w_max`, in PBW order.
pub fn generators(n: usize, w_max: usize) -> Vec<Gen> {
    let mut g: Vec<Gen> = Vec::new();
    for w in 1..=w_max {
        g.extend(normal_syms(n, w).into_iter().map(Gen::D));
    }
    g.sort();
    if w_max >= 1 {
        g.extend((0..n as u8).map(Gen::X));
    }
    for i in 0..n as u8 {
        for j in 0..n as u8 {
            g.push(Gen::Y(i, j));
        }
    }
    g
}

/// PBW monomials of weight at most `w_max` and degree at most `d_max`.
pub fn basis_monomials(n: usize, w_max: usize, d_max: usize) -> Vec<Mono> {
    let gens = generators(n, w_max);
    let mut out = Vec::new();
    fn rec(gens: &[Gen], start: usize, m: &mut Mono, w_left: i64, d_left: usize, out: &mut Vec<Mono>) {
        out.push(m.clone());
        if d_left == 0 {
            return;
        }
        for (i, g) in gens.iter().enumerate().skip(start) {
            if g.weight() <= w_left {
                let saved = m.clone();
                m.push_unchecked(g);
                rec(gens, i, m, w_left - g.weight(), d_left - 1, out);
                *m = saved;
            }
        }
    }
    rec(&gens, 0, &mut Mono::one(n), w_max as i64, d_max, &mut out);
    out.sort();
    out
}

/// Context for `H_n` with memo tables for the recursive operations.
pub struct Hn {
    n: usize,
    norm: Memo<Sym, HElem>,
    mul_gen_memo: Memo<(Mono, Gen), HElem>,
    cop_sym: Memo<Sym, H2>,
    cop_mono: Memo<Mono, H2>,
    tw_sym: Memo<Sym, HElem>,
    tw_mono: Memo<Mono, HElem>,
}

impl Hn {
    pub fn new(n: usize) -> Arc<Hn> {
        assert!((1..=9).contains(&n), "n must lie in 1..=9");
        Arc::new(Hn {
            n,
            norm: Memo::default(),
            mul_gen_memo: Memo::default(),
            cop_sym: Memo::default(),
            cop_mono: Memo::default(),
            tw_sym: Memo::default(),
            tw_mono: Memo::default(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn one(&self) -> HElem {
        HElem::basis(Mono::one(self.n))
    }

    pub fn mono(&self, g: &Gen) -> Mono {
        Mono::from_gen(self.n, g)
    }

    /// A generator as an element; δ labels in any arrangement are normalized.
    pub fn gen(&self, g: &Gen) -> HElem {
        match g {
            Gen::D(s) if !s.is_normal() => (*self.normalize(s)).clone(),
            _ => HElem::basis(self.mono(g)),
        }
    }

    /// Normal form of a δ label in canonical arrangement, as a polynomial in
    /// normal labels. Uses the flatness identity to move a trailing index
    /// smaller than the pair into the pair.
    pub fn normalize(&self, s: &Sym) -> Arc<HElem> {
        let s = Sym::arrangement(s.up, s.low[0], s.low[1], &s.low[2..]);
        if s.is_normal() {
            return Arc::new(HElem::basis(Mono::from_syms(self.n, vec![s])));
        }
        self.norm.get_or(&s.clone(), || {
            let (j, k) = (s.low[0], s.low[1]);
            let trail = &s.low[2..];
            let mx = *trail.last().unwrap();
            if mx >= k {
                let base = Sym::arrangement(s.up, j, k, &trail[..trail.len() - 1]);
                self.ad_x(mx, &self.normalize(&base))
            } else {
                let l1 = trail[0];
                let rest = &trail[1..];
                let mut t: Vec<u8> = rest.to_vec();
                t.push(k);
                let mut out = (*self.normalize(&Sym::arrangement(s.up, j, l1, &t))).clone();
                let mut q = HElem::zero();
                for r in 0..self.n as u8 {
                    let a = Mono::from_syms(self.n, vec![Sym::normal(r, vec![j, k]), Sym::normal(s.up, vec![r, l1])]);
                    let b = Mono::from_syms(self.n, vec![Sym::normal(r, vec![j, l1]), Sym::normal(s.up, vec![r, k])]);
                    q.add_term(a, Rational::one());
                    q.add_term(b, -Rational::one());
                }
                for &r in rest {
                    q = self.ad_x(r, &q);
                }
                out.sub(&q);
                out
            }
        })
    }

    /// Applies a derivation of the δ algebra given on labels.
    fn derive(&self, e: &HElem, f: &impl Fn(&Sym) -> HElem) -> HElem {
        let mut out = HElem::zero();
        for (m, c) in e.iter() {
            debug_assert!(m.is_pure_d());
            for idx in 0..m.d.len() {
                let mut rest = m.clone();
                let s = rest.d.remove(idx);
                for (t, c2) in f(&s).iter() {
                    out.add_term(rest.mul_d(t), c * c2);
                }
            }
        }
        out
    }

    /// `[X_m, ·]` on a δ polynomial.
    pub fn ad_x(&self, m: u8, e: &HElem) -> HElem {
        self.derive(e, &|s: &Sym| {
            let mut t = s.low[2..].to_vec();
            t.push(m);
            (*self.normalize(&Sym::arrangement(s.up, s.low[0], s.low[1], &t))).clone()
        })
    }

    /// `[Y_i^j, ·]` on a δ polynomial.
    pub fn ad_y(&self, i: u8, j: u8, e: &HElem) -> HElem {
        self.derive(e, &|s: &Sym| {
            let mut out = HElem::zero();
            for pos in 0..s.low.len() {
                if s.low[pos] == j {
                    let mut low = s.low.clone();
                    low[pos] = i;
                    out.add(&self.normalize(&Sym::arrangement(s.up, low[0], low[1], &low[2..])));
                }
            }
            if s.up == i {
                out.add_term(Mono::from_syms(self.n, vec![Sym { up: j, low: s.low.clone() }]), -Rational::one());
            }
            out
        })
    }

    /// `[a, b]` for normal generators with `a > b` in PBW order.
    pub fn bracket(&self, a: &Gen, b: &Gen) -> HElem {
        let n = self.n;
        match (a, b) {
            (Gen::D(_), Gen::D(_)) | (Gen::X(_), Gen::X(_)) => HElem::zero(),
            (Gen::X(m), Gen::D(s)) => self.ad_x(*m, &HElem::basis(Mono::from_syms(n, vec![s.clone()]))),
            (Gen::Y(i, j), Gen::D(s)) => self.ad_y(*i, *j, &HElem::basis(Mono::from_syms(n, vec![s.clone()]))),
            (Gen::Y(i, j), Gen::X(k)) => {
                if k == j {
                    HElem::basis(self.mono(&Gen::X(*i)))
                } else {
                    HElem::zero()
                }
            }
            (Gen::Y(i, j), Gen::Y(k, l)) => {
                let mut out = HElem::zero();
                if k == j {
                    out.add_term(self.mono(&Gen::Y(*i, *l)), Rational::one());
                }
                if i == l {
                    out.add_term(self.mono(&Gen::Y(*k, *j)), -Rational::one());
                }
                out
            }
            _ => unreachable!("bracket expects a > b in PBW order"),
        }
    }

    /// `m · g` for a normal generator `g`.
    pub fn mul_gen(&self, m: &Mono, g: &Gen) -> Arc<HElem> {
        if let Gen::D(s) = g {
            if !s.is_normal() {
                let p = self.normalize(s);
                return Arc::new(self.mul_mono_elem(m, &p));
            }
        }
        let Some((prefix, last)) = m.split_last() else {
            return Arc::new(HElem::basis(self.mono(g)));
        };
        let commuting = matches!((&last, g), (Gen::D(_), Gen::D(_)) | (Gen::X(_), Gen::X(_)));
        if last <= *g || commuting {
            let mut out = m.clone();
            out.push_unchecked(g);
            return Arc::new(HElem::basis(out));
        }
        self.mul_gen_memo.get_or(&(m.clone(), g.clone()), || {
            let mut out = HElem::zero();
            for (t, c) in self.mul_gen(&prefix, g).iter() {
                out.add_scaled(&self.mul_gen(t, &last), c);
            }
            out.add(&self.mul_mono_elem(&prefix, &self.bracket(&last, g)));
            out
        })
    }

    pub fn mul_mono(&self, a: &Mono, b: &Mono) -> HElem {
        let mut cur = HElem::basis(a.clone());
        for g in b.gens() {
            let mut next = HElem::zero();
            for (t, c) in cur.iter() {
                next.add_scaled(&self.mul_gen(t, &g), c);
            }
            cur = next;
        }
        cur
    }

    fn mul_mono_elem(&self, a: &Mono, e: &HElem) -> HElem {
        let mut out = HElem::zero();
        for (t, c) in e.iter() {
            out.add_scaled(&self.mul_mono(a, t), c);
        }
        out
    }

    pub fn mul(&self, a: &HElem, b: &HElem) -> HElem {
        let mut out = HElem::zero();
        for (x, c) in a.iter() {
            for (y, d) in b.iter() {
                out.add_scaled(&self.mul_mono(x, y), &(c * d));
            }
        }
        out
    }

    /// Product of a sequence of generators (any arrangement of δ labels).
    pub fn word_product(&self, word: &[Gen]) -> HElem {
        let mut cur = self.one();
        for g in word {
            cur = self.mul(&cur, &self.gen(g));
        }
        cur
    }

    pub fn mul2(&self, a: &H2, b: &H2) -> H2 {
        let mut out = H2::zero();
        for ((a1, a2), c) in a.iter() {
            for ((b1, b2), d) in b.iter() {
                let l = self.mul_mono(a1, b1);
                let r = self.mul_mono(a2, b2);
                let cd = c * d;
                for (x, e) in l.iter() {
                    for (y, f) in r.iter() {
                        out.add_term((x.clone(), y.clone()), &cd * e * f);
                    }
                }
            }
        }
        out
    }

    fn prim(&self, m: Mono) -> H2 {
        let one = Mono::one(self.n);
        let mut out = H2::zero();
        out.add_term((m.clone(), one.clone()), Rational::one());
        out.add_term((one, m), Rational::one());
        out
    }

    fn cop_gen(&self, g: &Gen) -> Arc<H2> {
        let n = self.n;
        match g {
            Gen::Y(..) => Arc::new(self.prim(self.mono(g))),
            Gen::X(k) => {
                let mut out = self.prim(self.mono(g));
                for i in 0..n as u8 {
                    for j in 0..n as u8 {
                        let d = Mono::from_syms(n, vec![Sym::normal(i, vec![j, *k])]);
                        out.add_term((d, self.mono(&Gen::Y(i, j))), Rational::one());
                    }
                }
                Arc::new(out)
            }
            Gen::D(s) => self.cop_sym.get_or(s, || {
                if s.weight() == 1 {
                    return self.prim(self.mono(g));
                }
                let m = *s.low.last().unwrap();
                let base = Sym { up: s.up, low: s.low[..s.low.len() - 1].to_vec() };
                let dx = self.cop_gen(&Gen::X(m));
                let db = self.cop_gen(&Gen::D(base));
                let mut out = self.mul2(&dx, &db);
                out.sub(&self.mul2(&db, &dx));
                out
            }),
        }
    }

    pub fn coproduct_mono(&self, m: &Mono) -> Arc<H2> {
        self.cop_mono.get_or(m, || {
            let one = Mono::one(self.n);
            let mut cur = H2::basis((one.clone(), one));
            for g in m.gens() {
                cur = self.mul2(&cur, &self.cop_gen(&g));
            }
            cur
        })
    }

    pub fn coproduct(&self, e: &HElem) -> H2 {
        let mut out = H2::zero();
        for (m, c) in e.iter() {
            out.add_scaled(&self.coproduct_mono(m), c);
        }
        out
    }

    pub fn counit(&self, e: &HElem) -> Rational {
        e.coeff(&Mono::one(self.n))
    }

    /// The character δ: one on monomials built from diagonal `Y_i^i`, zero otherwise.
    pub fn delta_char(&self, m: &Mono) -> Rational {
        let n = self.n;
        let diag = m.d.is_empty()
            && m.x.iter().all(|&e| e == 0)
            && m.y.iter().enumerate().all(|(ij, &e)| e == 0 || ij / n == ij % n);
        if diag {
            Rational::one()
        } else {
            Rational::zero()
        }
    }

    /// The convolution inverse `δ ∘ S` of δ, with `Y_i^i ↦ -1`.
    pub fn delta_inv_char(&self, m: &Mono) -> Rational {
        let c = self.delta_char(m);
        if m.degree() % 2 == 1 {
            -c
        } else {
            c
        }
    }

    pub fn delta_elem(&self, e: &HElem) -> Rational {
        e.iter().fold(Rational::zero(), |acc, (m, c)| acc + c * self.delta_char(m))
    }

    fn twisted_gen(&self, g: &Gen) -> Arc<HElem> {
        let n = self.n;
        match g {
            Gen::Y(i, j) => {
                let mut out = HElem::term(self.mono(g), -Rational::one());
                if i == j {
                    out.add_term(Mono::one(n), Rational::one());
                }
                Arc::new(out)
            }
            Gen::X(k) => {
                let mut out = HElem::term(self.mono(g), -Rational::one());
                for i in 0..n as u8 {
                    for j in 0..n as u8 {
                        let mut m = Mono::from_syms(n, vec![Sym::normal(i, vec![j, *k])]);
                        m.push_unchecked(&Gen::Y(i, j));
                        out.add_term(m, Rational::one());
                    }
                }
                Arc::new(out)
            }
            Gen::D(s) => self.tw_sym.get_or(s, || {
                if s.weight() == 1 {
                    return HElem::term(self.mono(g), -Rational::one());
                }
                let m = *s.low.last().unwrap();
                let base = Sym { up: s.up, low: s.low[..s.low.len() - 1].to_vec() };
                let sx = self.twisted_gen(&Gen::X(m));
                let sb = self.twisted_gen(&Gen::D(base));
                let mut out = self.mul(&sb, &sx);
                out.sub(&self.mul(&sx, &sb));
                out
            }),
        }
    }

    /// Twisted antipode `S̃ = δ ∗ S`, an anti-homomorphism with `S̃² = id`.
    pub fn twisted_antipode_mono(&self, m: &Mono) -> Arc<HElem> {
        self.tw_mono.get_or(m, || {
            let mut cur = self.one();
            for g in m.gens() {
                cur = self.mul(&self.twisted_gen(&g), &cur);
            }
            cur
        })
    }

    pub fn twisted_antipode(&self, e: &HElem) -> HElem {
        e.map_linear(|m| (*self.twisted_antipode_mono(m)).clone())
    }

    /// `S(h) = δ̌(h₍₁₎) S̃(h₍₂₎)`.
    pub fn antipode(&self, e: &HElem) -> HElem {
        let mut out = HElem::zero();
        for ((a, b), c) in self.coproduct(e).iter() {
            let w = self.delta_inv_char(a);
            if !w.is_zero() {
                out.add_scaled(&self.twisted_antipode_mono(b), &(c * w));
            }
        }
        out
    }

    /// `m ∘ (f ⊗ g)` for linear maps given on monomials.
    pub fn convolve(&self, t: &H2, f: impl Fn(&Mono) -> HElem, g: impl Fn(&Mono) -> HElem) -> HElem {
        let mut out = HElem::zero();
        for ((a, b), c) in t.iter() {
            out.add_scaled(&self.mul(&f(a), &g(b)), c);
        }
        out
    }

    pub fn scalar(&self, q: Rational) -> HElem {
        HElem::term(Mono::one(self.n), q)
    }

    pub fn int(&self, k: i64) -> HElem {
        self.scalar(rat(k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(h: &Hn, k: u8) -> HElem {
        h.gen(&Gen::X(k))
    }
    fn y(h: &Hn, i: u8, j: u8) -> HElem {
        h.gen(&Gen::Y(i, j))
    }
    fn d(h: &Hn, up: u8, low: &[u8]) -> HElem {
        h.gen(&Gen::D(Sym::arrangement(up, low[0], low[1], &low[2..])))
    }
    fn comm(h: &Hn, a: &HElem, b: &HElem) -> HElem {
        let mut o = h.mul(a, b);
        o.sub(&h.mul(b, a));
        o
    }

    #[test]
    fn affine_relations_n1() {
        let h = Hn::new(1);
        let (xx, yy) = (x(&h, 0), y(&h, 0, 0));
        assert_eq!(comm(&h, &yy, &xx), xx);
        let mut want = h.mul(&xx, &yy);
        want.add(&xx);
        assert_eq!(h.mul(&yy, &xx), want);
        assert_eq!(comm(&h, &xx, &d(&h, 0, &[0, 0])), d(&h, 0, &[0, 0, 0]));
        assert_eq!(comm(&h, &yy, &d(&h, 0, &[0, 0, 0])), d(&h, 0, &[0, 0, 0]).scaled(&rat(2)));
    }

    #[test]
    fn flatness_n2() {
        let h = Hn::new(2);
        let lhs = d(&h, 0, &[0, 1, 0]);
        let mut rhs = d(&h, 0, &[0, 0, 1]);
        for s in 0..2u8 {
            rhs.add(&h.mul(&d(&h, s, &[0, 0]), &d(&h, 0, &[s, 1])));
            rhs.sub(&h.mul(&d(&h, s, &[0, 1]), &d(&h, 0, &[s, 0])));
        }
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn coproduct_samples() {
        let h = Hn::new(1);
        let one = Mono::one(1);
        let m = |g: Gen| h.mono(&g);
        let d1 = Sym::normal(0, vec![0, 0]);
        let d2 = Sym::normal(0, vec![0, 0, 0]);
        let mut want = H2::zero();
        want.add_term((m(Gen::D(d2.clone())), one.clone()), rat(1));
        want.add_term((one.clone(), m(Gen::D(d2.clone()))), rat(1));
        want.add_term((m(Gen::D(d1.clone())), m(Gen::D(d1.clone()))), rat(1));
        assert_eq!(*h.coproduct_mono(&m(Gen::D(d2))), want);
        let mut e = h.int(3);
        e.add_scaled(&h.mul(&x(&h, 0), &y(&h, 0, 0)), &rat(2));
        assert_eq!(h.counit(&e), rat(3));
    }

    #[test]
    fn antipode_samples() {
        let h = Hn::new(1);
        let (xx, yy, d1) = (x(&h, 0), y(&h, 0, 0), d(&h, 0, &[0, 0]));
        let mut want = xx.neg();
        want.add(&h.mul(&d1, &yy));
        assert_eq!(h.twisted_antipode(&xx), want);
        assert_eq!(h.antipode(&xx), want);
        assert_eq!(h.antipode(&yy), yy.neg());
        assert_eq!(h.antipode(&d1), d1.neg());
    }
}
