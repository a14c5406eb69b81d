//! The commutative Hopf algebra `F` of functions on jets tangent to the
//! identity, in the η coordinates, with its coproduct and antipode read off
//! symbolic jet composition and inversion; the `U(g)` action on `F`, the
//! coaction of `F` on `U(g)`, and the bicrossed product `F ⋈ U(g)`.

mod bicrossed;
pub mod matched;

pub use bicrossed::bicrossed_crosscheck;

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::hopf::{multisets, normal_syms, Hn};
use crate::jet::{series_add, series_mul, series_partial, symbolic_njet, JetAction, Series};
use crate::linalg::{rat, Rational};
use crate::poly::{pmono_degree, Coeff, PMono, Poly};
use crate::symbolic::{GSym, Gen, LinComb, Memo, Mono, Sym};

/// Polynomial in η coordinates.
pub type FPoly = Poly<Sym>;
/// Polynomial in α coordinates (jet derivatives at the origin).
pub type APoly = Poly<Sym>;
/// Element of `F ⊗ F`, as a polynomial in two tagged families of η's.
pub type F2 = Poly<(u8, Sym)>;
/// `U ⊗ F` or `F ⊗ F` with monomial tensor factors.
pub type Pair = LinComb<(Mono, Mono)>;

pub fn pmono_of(m: &Mono) -> PMono<Sym> {
    let mut out: PMono<Sym> = Vec::new();
    for s in &m.d {
        match out.last_mut() {
            Some((t, e)) if t == s => *e += 1,
            _ => out.push((s.clone(), 1)),
        }
    }
    out
}

pub fn mono_of(n: usize, p: &PMono<Sym>) -> Mono {
    let mut d = Vec::new();
    for (s, e) in p {
        for _ in 0..*e {
            d.push(s.clone());
        }
    }
    Mono::from_syms(n, d)
}

pub fn fpoly_of(m: &Mono) -> FPoly {
    Poly(LinComb::basis(pmono_of(m)))
}

pub fn elem_of(n: usize, p: &FPoly) -> LinComb<Mono> {
    p.terms().map(|(m, c)| (mono_of(n, m), c.clone())).collect()
}

pub fn fpoly_of_elem(e: &LinComb<Mono>) -> FPoly {
    let mut out = FPoly::zero();
    for (m, c) in e.iter() {
        out = out.add(&fpoly_of(m).scale(c));
    }
    out
}

/// Swaps the tensor factors; used only where `H` (whose coalgebra is
/// co-opposite to that of `F ⋈ U`) is compared with the jet side.
pub fn flip(t: &Pair) -> Pair {
    t.map_keys(|(a, b)| (b.clone(), a.clone()))
}

fn split_f2(n: usize, p: &F2) -> Pair {
    let mut out = Pair::zero();
    for (m, c) in p.terms() {
        let left: PMono<Sym> = m.iter().filter(|(v, _)| v.0 == 0).map(|(v, e)| (v.1.clone(), *e)).collect();
        let right: PMono<Sym> = m.iter().filter(|(v, _)| v.0 == 1).map(|(v, e)| (v.1.clone(), *e)).collect();
        out.add_term((mono_of(n, &left), mono_of(n, &right)), c.clone());
    }
    out
}

fn tag(f: u8, p: &FPoly) -> F2 {
    p.substitute(&|s: &Sym| F2::var((f, s.clone())))
}

/// `F` truncated at jet order `J`: η coordinates of weight up to `J - 1`.
pub struct FContext {
    n: usize,
    order: usize,
    hn: Arc<Hn>,
    action: JetAction,
    eta_alpha: HashMap<Sym, APoly>,
    alpha_eta: Memo<Sym, FPoly>,
    cop_alpha: HashMap<Sym, Poly<(u8, Sym)>>,
    inv_alpha: HashMap<Sym, APoly>,
    cop_eta: Memo<Sym, F2>,
    anti_eta: Memo<Sym, FPoly>,
    act_eta: Memo<(GSym, Sym), Result<FPoly>>,
    coaction_memo: Memo<Mono, Result<Pair>>,
}

fn matrix_mul<C: Coeff>(a: &[Vec<Series<C>>], b: &[Vec<Series<C>>], order: usize) -> Vec<Vec<Series<C>>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = Series::new();
                    for r in 0..n {
                        for (k, c) in series_mul(&a[i][r], &b[r][j], order) {
                            series_add(&mut acc, &k, &c);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

impl FContext {
    pub fn new(hn: Arc<Hn>, order: usize) -> Result<Arc<FContext>> {
        let n = hn.n();
        if order < 2 {
            return Err(Error::InvalidConfig("jet order must be at least 2".into()));
        }
        let psi = symbolic_njet(n, order, |s| s);

        // η^i_{jk,L} = ∂_L((ψ'^{-1})^i_ν ∂_j ∂_k ψ^ν) at the origin.
        let mut eta_alpha = HashMap::new();
        let d: Vec<Vec<Series<APoly>>> = (0..n)
            .map(|i| (0..n).map(|p| series_partial(psi.component(i), p as u8)).collect())
            .collect();
        let mut neg_nil = d.clone();
        for (i, row) in neg_nil.iter_mut().enumerate() {
            for (p, s) in row.iter_mut().enumerate() {
                if i == p {
                    series_add(s, &Vec::new(), &APoly::one().neg());
                }
                for c in s.values_mut() {
                    *c = c.neg();
                }
            }
        }
        let ident: Vec<Vec<Series<APoly>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut s = Series::new();
                        if i == j {
                            s.insert(Vec::new(), APoly::one());
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        let mut inv = ident.clone();
        let mut power = ident;
        for _ in 0..order {
            power = matrix_mul(&power, &neg_nil, order);
            for i in 0..n {
                for j in 0..n {
                    for (k, c) in power[i][j].clone() {
                        series_add(&mut inv[i][j], &k, &c);
                    }
                }
            }
        }
        for j in 0..n as u8 {
            for k in j..n as u8 {
                let hess: Vec<Series<APoly>> = (0..n).map(|nu| series_partial(&d[nu][k as usize], j)).collect();
                for i in 0..n {
                    let mut t = Series::new();
                    for nu in 0..n {
                        for (key, c) in series_mul(&inv[i][nu], &hess[nu], order) {
                            series_add(&mut t, &key, &c);
                        }
                    }
                    for len in 0..=order - 2 {
                        for l in multisets(n, len) {
                            if l.first().is_some_and(|&x| x < k) {
                                continue;
                            }
                            let c = t.get(&l).cloned().unwrap_or_else(APoly::zero);
                            let mut low = vec![j, k];
                            low.extend(&l);
                            eta_alpha.insert(Sym { up: i as u8, low }, c.scale(&crate::jet::multi_factorial(&l)));
                        }
                    }
                }
            }
        }

        let two = symbolic_njet(n, order, |s| (0u8, s)).compose(&symbolic_njet(n, order, |s| (1u8, s)))?;
        let inverse = psi.invert()?;
        let mut cop_alpha = HashMap::new();
        let mut inv_alpha = HashMap::new();
        for len in 2..=order {
            for l in multisets(n, len) {
                for i in 0..n {
                    let a = Sym { up: i as u8, low: l.clone() };
                    cop_alpha.insert(a.clone(), two.alpha(i, &l));
                    inv_alpha.insert(a, inverse.alpha(i, &l));
                }
            }
        }
        Ok(Arc::new(FContext {
            n,
            order,
            action: JetAction::new(n, order),
            hn,
            eta_alpha,
            alpha_eta: Memo::default(),
            cop_alpha,
            inv_alpha,
            cop_eta: Memo::default(),
            anti_eta: Memo::default(),
            act_eta: Memo::default(),
            coaction_memo: Memo::default(),
        }))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn hn(&self) -> &Arc<Hn> {
        &self.hn
    }

    /// Largest η weight whose coproduct and antipode are available.
    pub fn max_weight(&self) -> usize {
        self.order - 1
    }

    fn check_weight(&self, s: &Sym) -> Result<()> {
        if s.low.len() > self.order {
            return Err(Error::TruncationOverflow(format!("{s} needs jet order {} > {}", s.low.len(), self.order)));
        }
        Ok(())
    }

    /// η coordinate as a polynomial in α coordinates.
    pub fn eta_to_alpha(&self, s: &Sym) -> Result<APoly> {
        self.check_weight(s)?;
        Ok(self.eta_alpha[s].clone())
    }

    /// α coordinate as a polynomial in η coordinates, by inverting the
    /// triangular change of variables.
    pub fn alpha_to_eta(&self, a: &Sym) -> Result<FPoly> {
        self.check_weight(a)?;
        Ok((*self.alpha_eta.get_or(a, || {
            let lead = APoly::var(a.clone());
            let tail = self.eta_alpha[a].sub(&lead);
            let lower = tail.substitute(&|b: &Sym| self.alpha_to_eta(b).expect("lower order"));
            FPoly::var(a.clone()).sub(&lower)
        }))
        .clone())
    }

    pub fn poly_eta_to_alpha(&self, p: &FPoly) -> Result<APoly> {
        for (m, _) in p.terms() {
            for (s, _) in m {
                self.check_weight(s)?;
            }
        }
        Ok(p.substitute(&|s: &Sym| self.eta_alpha[s].clone()))
    }

    pub fn poly_alpha_to_eta(&self, p: &APoly) -> Result<FPoly> {
        for (m, _) in p.terms() {
            for (s, _) in m {
                self.check_weight(s)?;
            }
        }
        Ok(p.substitute(&|s: &Sym| self.alpha_to_eta(s).expect("checked")))
    }

    /// `Δ(α)` from `α(ψ₁ ∘ ψ₂)`, in α coordinates of the two factors.
    pub fn coproduct_alpha(&self, a: &Sym) -> Result<Poly<(u8, Sym)>> {
        self.check_weight(a)?;
        Ok(self.cop_alpha[a].clone())
    }

    fn cop_eta_sym(&self, s: &Sym) -> Result<F2> {
        self.check_weight(s)?;
        Ok((*self.cop_eta.get_or(s, || {
            let a = self.eta_alpha[s].substitute(&|b: &Sym| self.cop_alpha[b].clone());
            a.substitute(&|(f, b): &(u8, Sym)| tag(*f, &self.alpha_to_eta(b).expect("checked")))
        }))
        .clone())
    }

    pub fn coproduct_poly(&self, p: &FPoly) -> Result<F2> {
        let mut out = F2::zero();
        for (m, c) in p.terms() {
            let mut t = F2::constant(c.clone());
            for (s, e) in m {
                t = t.mul(&self.cop_eta_sym(s)?.pow(*e as usize));
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// `Δ_F` on an η monomial, as a sum of tensors of η monomials.
    pub fn coproduct(&self, m: &Mono) -> Result<Pair> {
        Ok(split_f2(self.n, &self.coproduct_poly(&fpoly_of(m))?))
    }

    pub fn coproduct_elem(&self, e: &LinComb<Mono>) -> Result<Pair> {
        Ok(split_f2(self.n, &self.coproduct_poly(&fpoly_of_elem(e))?))
    }

    pub fn counit_poly(&self, p: &FPoly) -> Rational {
        p.constant_term()
    }

    fn antipode_sym(&self, s: &Sym) -> Result<FPoly> {
        self.check_weight(s)?;
        Ok((*self.anti_eta.get_or(s, || {
            let a = self.eta_alpha[s].substitute(&|b: &Sym| self.inv_alpha[b].clone());
            self.poly_alpha_to_eta(&a).expect("checked")
        }))
        .clone())
    }

    /// `S(f)(ψ) = f(ψ^{-1})`.
    pub fn antipode_poly(&self, p: &FPoly) -> Result<FPoly> {
        let mut out = FPoly::zero();
        for (m, c) in p.terms() {
            let mut t = FPoly::constant(c.clone());
            for (s, e) in m {
                t = t.mul(&self.antipode_sym(s)?.pow(*e as usize));
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    fn act_sym(&self, g: GSym, s: &Sym) -> Result<FPoly> {
        (*self.act_eta.get_or(&(g, s.clone()), || {
            let a = self.eta_to_alpha(s)?;
            let moved = self.action.on_poly(g, &a)?;
            self.poly_alpha_to_eta(&moved)
        }))
        .clone()
    }

    /// `g ▷ f` for a Lie algebra generator, a derivation of `F`.
    pub fn act_gen(&self, g: GSym, p: &FPoly) -> Result<FPoly> {
        let mut out = FPoly::zero();
        for (m, c) in p.terms() {
            for (idx, (s, e)) in m.iter().enumerate() {
                let mut rest = m.clone();
                if *e == 1 {
                    rest.remove(idx);
                } else {
                    rest[idx].1 -= 1;
                }
                let d = self.act_sym(g, s)?;
                out = out.add(&d.mul(&Poly(LinComb::basis(rest))).scale(&(c * rat(*e as i64))));
            }
        }
        Ok(out)
    }

    /// `u ▷ f` for a PBW monomial `u` of `U(g)`.
    pub fn act(&self, u: &Mono, p: &FPoly) -> Result<FPoly> {
        debug_assert!(u.d.is_empty());
        let mut cur = p.clone();
        for g in u.gens().iter().rev() {
            let gs = match g {
                Gen::X(k) => GSym::X(*k),
                Gen::Y(i, j) => GSym::Y(*i, *j),
                Gen::D(_) => unreachable!("U(g) monomials carry no δ"),
            };
            cur = self.act_gen(gs, &cur)?;
        }
        Ok(cur)
    }

    pub fn act_elem(&self, u: &LinComb<Mono>, p: &FPoly) -> Result<FPoly> {
        let mut out = FPoly::zero();
        for (m, c) in u.iter() {
            out = out.add(&self.act(m, p)?.scale(c));
        }
        Ok(out)
    }

    /// Coaction `∇: U → U ⊗ F`, built from `∇Y = Y ⊗ 1`,
    /// `∇X_k = X_k ⊗ 1 + Y_i^j ⊗ η^i_{jk}` and multiplicativity in the form
    /// `∇(g u) = g u⁽⁰⁾ ⊗ u⁽¹⁾ + [g = X_k] Y_i^j u⁽⁰⁾ ⊗ η^i_{jk} u⁽¹⁾ + u⁽⁰⁾ ⊗ g ▷ u⁽¹⁾`.
    pub fn coaction(&self, u: &Mono) -> Result<Pair> {
        let n = self.n;
        (*self.coaction_memo.get_or(u, || {
            let gens = u.gens();
            let Some(first) = gens.first() else {
                return Ok(Pair::basis((Mono::one(n), Mono::one(n))));
            };
            let mut rest = Mono::one(n);
            for g in &gens[1..] {
                rest.push_unchecked(g);
            }
            let first_elem = self.hn.gen(first);
            let gsym = match first {
                Gen::X(k) => GSym::X(*k),
                Gen::Y(i, j) => GSym::Y(*i, *j),
                Gen::D(_) => return Err(Error::InvalidConfig("coaction is defined on U(g) only".into())),
            };
            let mut out = Pair::zero();
            for ((u0, f1), c) in self.coaction(&rest)?.iter() {
                for (t, c2) in self.hn.mul(&first_elem, &LinComb::basis(u0.clone())).iter() {
                    out.add_term((t.clone(), f1.clone()), c * c2);
                }
                if let Gen::X(k) = first {
                    for i in 0..n as u8 {
                        for j in 0..n as u8 {
                            let y = self.hn.gen(&Gen::Y(i, j));
                            let eta = Mono::from_syms(n, vec![Sym::normal(i, vec![j, *k])]);
                            let f = eta.mul_d(f1);
                            for (t, c2) in self.hn.mul(&y, &LinComb::basis(u0.clone())).iter() {
                                out.add_term((t.clone(), f.clone()), c * c2);
                            }
                        }
                    }
                }
                for (m, c2) in self.act_gen(gsym, &fpoly_of(f1))?.terms() {
                    out.add_term((u0.clone(), mono_of(n, m)), c * c2);
                }
            }
            Ok(out)
        }))
        .clone()
    }

    /// `Δ` of `U(g)` on a PBW monomial: generators are primitive.
    pub fn u_coproduct(&self, u: &Mono) -> Pair {
        let mut out = Pair::zero();
        let exps: Vec<u16> = u.x.iter().chain(u.y.iter()).copied().collect();
        let mut cur = vec![0u16; exps.len()];
        loop {
            let mut coef = <Rational as One>::one();
            for (e, c) in exps.iter().zip(&cur) {
                coef *= binom(*e, *c);
            }
            let nx = u.x.len();
            let left = Mono { d: Vec::new(), x: cur[..nx].to_vec(), y: cur[nx..].to_vec() };
            let rc: Vec<u16> = exps.iter().zip(&cur).map(|(e, c)| e - c).collect();
            let right = Mono { d: Vec::new(), x: rc[..nx].to_vec(), y: rc[nx..].to_vec() };
            out.add_term((left, right), coef);
            let mut i = 0;
            loop {
                if i == cur.len() {
                    return out;
                }
                if cur[i] < exps[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
        }
    }

    /// Antipode of `U(g)`: reversed word with sign `(-1)^degree`.
    pub fn u_antipode(&self, u: &Mono) -> LinComb<Mono> {
        let mut gens = u.gens();
        gens.reverse();
        let e = self.hn.word_product(&gens);
        if gens.len() % 2 == 1 {
            e.neg()
        } else {
            e
        }
    }

    /// Normal η symbols of weight `w` within the jet cut.
    pub fn etas(&self, w: usize) -> Vec<Sym> {
        normal_syms(self.n, w)
    }

    /// η monomials (excluding 1) of exact weight `w`.
    pub fn monomials(&self, w: usize) -> Vec<Mono> {
        let syms: Vec<Sym> = (1..=w).flat_map(|k| normal_syms(self.n, k)).collect();
        let mut out = Vec::new();
        fn rec(n: usize, syms: &[Sym], start: usize, left: i64, cur: &mut Vec<Sym>, out: &mut Vec<Mono>) {
            if left == 0 {
                if !cur.is_empty() {
                    out.push(Mono::from_syms(n, cur.clone()));
                }
                return;
            }
            for i in start..syms.len() {
                if syms[i].weight() <= left {
                    cur.push(syms[i].clone());
                    rec(n, syms, i, left - syms[i].weight(), cur, out);
                    cur.pop();
                }
            }
        }
        rec(self.n, &syms, 0, w as i64, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    pub fn degree_of(p: &PMono<Sym>) -> usize {
        pmono_degree(p)
    }
}

fn binom(n: u16, k: u16) -> Rational {
    let mut r = <Rational as One>::one();
    for i in 0..k {
        r = r * rat((n - i) as i64) / rat((i + 1) as i64);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eta(low: &[u8]) -> Sym {
        Sym::normal(0, low.to_vec())
    }

    #[test]
    fn change_of_variables_n1() {
        let f = FContext::new(Hn::new(1), 4).unwrap();
        assert_eq!(f.eta_to_alpha(&eta(&[0, 0])).unwrap(), APoly::var(eta(&[0, 0])));
        let want = APoly::var(eta(&[0, 0, 0])).sub(&APoly::var(eta(&[0, 0])).pow(2));
        assert_eq!(f.eta_to_alpha(&eta(&[0, 0, 0])).unwrap(), want);
        let back = f.poly_alpha_to_eta(&f.eta_to_alpha(&eta(&[0, 0, 0, 0])).unwrap()).unwrap();
        assert_eq!(back, FPoly::var(eta(&[0, 0, 0, 0])));
    }

    #[test]
    fn coproduct_and_antipode_n1() {
        let f = FContext::new(Hn::new(1), 4).unwrap();
        let e1 = FPoly::var(eta(&[0, 0]));
        let e2 = FPoly::var(eta(&[0, 0, 0]));
        let d = f.coproduct_poly(&e2).unwrap();
        let want = tag(0, &e2).add(&tag(1, &e2)).add(&tag(0, &e1).mul(&tag(1, &e1)));
        assert_eq!(d, want);
        assert_eq!(f.antipode_poly(&e1).unwrap(), e1.neg());
        assert_eq!(f.antipode_poly(&e2).unwrap(), e2.neg().add(&e1.pow(2)));
    }

    #[test]
    fn action_and_coaction_n1() {
        let f = FContext::new(Hn::new(1), 4).unwrap();
        let e1 = FPoly::var(eta(&[0, 0]));
        assert_eq!(f.act_gen(GSym::X(0), &e1).unwrap(), FPoly::var(eta(&[0, 0, 0])));
        assert_eq!(f.act_gen(GSym::Y(0, 0), &e1).unwrap(), e1);
        let x = Mono::from_gen(1, &Gen::X(0));
        let y = Mono::from_gen(1, &Gen::Y(0, 0));
        let mut want = Pair::zero();
        want.add_term((x.clone(), Mono::one(1)), rat(1));
        want.add_term((y, Mono::from_syms(1, vec![eta(&[0, 0])])), rat(1));
        assert_eq!(f.coaction(&x).unwrap(), want);
    }
}
