//! The Chevalley-Eilenberg type bicomplex `C_δ ⊗ F̄^{⊗p} ⊗ Λ^q g` with the
//! coalgebra coboundary `β` of `F` (horizontal) and the Lie algebra boundary
//! `∂` (vertical), in the absolute form and relative to `gl_n`, where `g` is
//! replaced by `V = g/gl_n` and spots by their `gl_n`-coinvariants.

mod total;

pub use total::*;

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::faa::{fpoly_of, mono_of, FContext, Pair};
use crate::linalg::{rat, Quotient, Rational, SparseMatrix, SparseVec};
use crate::poly::Coeff;
use crate::symbolic::{wedge, GSym, LinComb, Memo, Mono, SpotWord, WedgeWord};

pub type Cochain = LinComb<SpotWord>;
type Tensor = LinComb<Vec<Mono>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Absolute,
    Relative,
}

/// Jet order needed for spots of weight up to `w_max`: acting on an η of
/// weight `w` reads jet coordinates of order `w + 2`.
pub fn required_order(w_max: usize) -> usize {
    w_max + 2
}

pub struct Bicomplex {
    f: Arc<FContext>,
    kind: Kind,
    lie: Vec<GSym>,
    kcop: Memo<Mono, Result<Pair>>,
    acts: Memo<(Mono, Vec<Mono>), Result<Tensor>>,
}

/// A spot `(p, q)` at fixed weight with its word basis and, in the relative
/// case, the coinvariant quotient.
pub struct Spot {
    pub p: usize,
    pub q: usize,
    pub weight: usize,
    pub words: Vec<SpotWord>,
    index: HashMap<SpotWord, usize>,
    quotient: Option<Quotient>,
}

impl Spot {
    /// Dimension of the spot (of the coinvariant quotient when relative).
    pub fn dim(&self) -> usize {
        match &self.quotient {
            Some(q) => q.dim(),
            None => self.words.len(),
        }
    }

    /// Coordinates of a cochain in the spot (projected to the quotient when
    /// relative).
    pub fn coords(&self, c: &Cochain) -> Result<SparseVec> {
        let mut v = SparseVec::new();
        for (w, x) in c.iter() {
            let i = *self.index.get(w).ok_or_else(|| {
                Error::InfeasibleCut(format!("{w:?} falls outside spot ({}, {}) at weight {}", self.p, self.q, self.weight))
            })?;
            v.insert(i, x.clone());
        }
        Ok(match &self.quotient {
            Some(q) => q.project(&v),
            None => v,
        })
    }

    /// Word used as the representative of basis vector `i`.
    pub fn representative(&self, i: usize) -> &SpotWord {
        match &self.quotient {
            Some(q) => &self.words[q.basis()[i]],
            None => &self.words[i],
        }
    }

    /// A cochain from coordinates in this spot.
    pub fn cochain(&self, v: &SparseVec) -> Cochain {
        v.iter().map(|(i, x)| (self.representative(*i).clone(), x.clone())).collect()
    }
}

fn sign(i: usize) -> Rational {
    if i % 2 == 0 {
        rat(1)
    } else {
        rat(-1)
    }
}

fn gsym_of(m: &Mono) -> Option<GSym> {
    match m.gens().as_slice() {
        [g] => GSym::of_gen(g),
        _ => None,
    }
}

impl Bicomplex {
    pub fn new(f: Arc<FContext>, kind: Kind) -> Bicomplex {
        let n = f.n();
        let lie = match kind {
            Kind::Absolute => GSym::basis(n),
            Kind::Relative => (0..n as u8).map(GSym::X).collect(),
        };
        Bicomplex { f, kind, lie, kcop: Memo::default(), acts: Memo::default() }
    }

    pub fn n(&self) -> usize {
        self.f.n()
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn faa(&self) -> &Arc<FContext> {
        &self.f
    }

    pub fn lie_basis(&self) -> &[GSym] {
        &self.lie
    }

    fn in_lie(&self, g: &GSym) -> bool {
        self.lie.contains(g)
    }

    /// Tensors of `p` non-unit η monomials of total weight `w`.
    pub fn f_words(&self, p: usize, w: usize) -> Vec<Vec<Mono>> {
        if p == 0 {
            return if w == 0 { vec![Vec::new()] } else { Vec::new() };
        }
        let mut out = Vec::new();
        for first in 1..=w.saturating_sub(p - 1) {
            let rest = self.f_words(p - 1, w - first);
            for m in self.f.monomials(first) {
                for r in &rest {
                    let mut v = vec![m.clone()];
                    v.extend(r.iter().cloned());
                    out.push(v);
                }
            }
        }
        out
    }

    fn words(&self, p: usize, q: usize, w: usize) -> Vec<SpotWord> {
        let mut out = Vec::new();
        for ww in WedgeWord::all(&self.lie, q) {
            let ew = ww.weight() as usize;
            if ew > w {
                continue;
            }
            for f in self.f_words(p, w - ew) {
                out.push(SpotWord { f, w: ww.clone() });
            }
        }
        out.sort();
        out
    }

    pub fn spot(&self, p: usize, q: usize, w: usize) -> Result<Spot> {
        if w + 1 >= self.f.order() {
            return Err(Error::InfeasibleCut(format!(
                "weight {w} needs jet order {}, have {}",
                required_order(w),
                self.f.order()
            )));
        }
        let words = self.words(p, q, w);
        let index: HashMap<SpotWord, usize> = words.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        let mut spot = Spot { p, q, weight: w, words, index, quotient: None };
        if self.kind == Kind::Relative {
            let mut rels = Vec::new();
            for y in self.h_basis() {
                for x in &spot.words {
                    let r = self.coinvariant_relation(y, x)?;
                    let mut v = SparseVec::new();
                    for (wd, c) in r.iter() {
                        v.insert(spot.index[wd], c.clone());
                    }
                    rels.push(v);
                }
            }
            spot.quotient = Some(Quotient::new(spot.words.len(), rels));
        }
        Ok(spot)
    }

    /// Basis of `gl_n`.
    pub fn h_basis(&self) -> Vec<GSym> {
        let n = self.n() as u8;
        (0..n).flat_map(|i| (0..n).map(move |j| GSym::Y(i, j))).collect()
    }

    fn kcop(&self, m: &Mono) -> Result<Pair> {
        (*self.kcop.get_or(m, || self.f.k_coproduct_mono(m))).clone()
    }

    /// `k ▷ (f₁ ⊗ … ⊗ f_p)` for a monomial `k` of `F ⋈ U`, through the
    /// iterated coproduct of `F ⋈ U`.
    fn act_mono(&self, k: &Mono, f: &[Mono]) -> Result<Tensor> {
        (*self.acts.get_or(&(k.clone(), f.to_vec()), || {
            let n = self.n();
            match f {
                [] => Ok(if k.is_one() { Tensor::basis(Vec::new()) } else { Tensor::zero() }),
                [single] => Ok(self
                    .f
                    .k_act_mono(k, &fpoly_of(single))?
                    .terms()
                    .map(|(m, c)| (vec![mono_of(n, m)], c.clone()))
                    .collect()),
                [first, rest @ ..] => {
                    let mut out = Tensor::zero();
                    for ((a, b), c) in self.kcop(k)?.iter() {
                        let left = self.f.k_act_mono(a, &fpoly_of(first))?;
                        if left.is_zero() {
                            continue;
                        }
                        let right = self.act_mono(b, rest)?;
                        for (lm, c1) in left.terms() {
                            let lm = mono_of(n, lm);
                            for (rw, c2) in right.iter() {
                                let mut v = vec![lm.clone()];
                                v.extend(rw.iter().cloned());
                                out.add_term(v, c * c1 * c2);
                            }
                        }
                    }
                    Ok(out)
                }
            }
        }))
        .clone()
    }

    /// `(1 ⋈ g) ▷ f̃`, with words containing a unit factor dropped.
    pub fn act(&self, g: GSym, f: &[Mono]) -> Result<Tensor> {
        let k = Mono::from_gen(self.n(), &g.to_gen());
        Ok(self.act_mono(&k, f)?.filter(|w| w.iter().all(|m| !m.is_one())))
    }

    /// `f̃ ◁ g = δ(g) f̃ - (1 ⋈ g) ▷ f̃`.
    pub fn right_act(&self, g: GSym, f: &[Mono]) -> Result<Tensor> {
        let mut out = self.act(g, f)?.neg();
        let d = self.f.hn().delta_char(&Mono::from_gen(self.n(), &g.to_gen()));
        if !d.is_zero() {
            out.add_term(f.to_vec(), d);
        }
        Ok(out)
    }

    fn bracket(&self, a: GSym, b: GSym) -> LinComb<GSym> {
        let h = self.f.hn();
        let (ea, eb) = (h.gen(&a.to_gen()), h.gen(&b.to_gen()));
        let mut c = h.mul(&ea, &eb);
        c.sub(&h.mul(&eb, &ea));
        let mut out = LinComb::zero();
        for (m, x) in c.iter() {
            let g = gsym_of(m).expect("g is closed under brackets");
            if self.in_lie(&g) {
                out.add_term(g, x.clone());
            }
        }
        out
    }

    /// Normalized coalgebra coboundary:
    /// `β(f̃ ⊗ w) = Σ_{i=1}^p (-1)^i Δ̄_i(f̃) ⊗ w + (-1)^{p+1} f̃ ⊗ ∇̄(w)`,
    /// `Δ̄` the reduced coproduct at slot `i` and `∇̄` the coaction of `F` on
    /// the wedge with its unit component dropped.
    pub fn beta(&self, x: &SpotWord) -> Result<Cochain> {
        let p = x.f.len();
        let mut out = Cochain::zero();
        for i in 0..p {
            for ((a, b), c) in self.f.coproduct(&x.f[i])?.iter() {
                if a.is_one() || b.is_one() {
                    continue;
                }
                let mut f = x.f[..i].to_vec();
                f.push(a.clone());
                f.push(b.clone());
                f.extend(x.f[i + 1..].iter().cloned());
                out.add_term(SpotWord { f, w: x.w.clone() }, c * sign(i + 1));
            }
        }
        let s = sign(p + 1);
        for (gs, phi, c) in self.wedge_coaction(&x.w)? {
            let sphi = self.f.antipode_poly(&phi)?;
            for (m, c1) in sphi.terms() {
                if m.is_empty() {
                    continue;
                }
                for (ww, c2) in wedge(&gs).iter() {
                    let mut f = x.f.clone();
                    f.push(mono_of(self.n(), m));
                    out.add_term(SpotWord { f, w: ww.clone() }, &s * &c * c1 * c2);
                }
            }
        }
        Ok(out)
    }

    /// `X¹⁽⁰⁾ ∧ … ∧ X^q⁽⁰⁾` with `X¹⁽¹⁾ ⋯ X^q⁽¹⁾`, terms outside the Lie basis
    /// (the `gl_n` part in the relative case) projected away.
    fn wedge_coaction(&self, w: &WedgeWord) -> Result<Vec<(Vec<GSym>, crate::faa::FPoly, Rational)>> {
        let n = self.n();
        let mut acc: Vec<(Vec<GSym>, crate::faa::FPoly, Rational)> =
            vec![(Vec::new(), <crate::faa::FPoly as Coeff>::one(), rat(1))];
        for g in &w.0 {
            let co = self.f.coaction(&Mono::from_gen(n, &g.to_gen()))?;
            let mut next = Vec::new();
            for (gs, phi, c) in &acc {
                for ((u, m), c1) in co.iter() {
                    let h = gsym_of(u).expect("coaction of a generator");
                    if !self.in_lie(&h) {
                        continue;
                    }
                    let mut g2 = gs.clone();
                    g2.push(h);
                    next.push((g2, phi.mul(&fpoly_of(m)), c * c1));
                }
            }
            acc = next;
        }
        Ok(acc)
    }

    /// Lie algebra boundary with coefficients in `C_δ ⊗ F̄^{⊗p}`:
    /// `Σ_i (-1)^i f̃ ◁ X^i ⊗ …X̂^i… + Σ_{i<j} (-1)^{i+j} f̃ ⊗ [X^i, X^j] ∧ …`.
    pub fn del(&self, x: &SpotWord) -> Result<Cochain> {
        let q = x.w.0.len();
        let mut out = Cochain::zero();
        for i in 0..q {
            let mut rest = x.w.0.clone();
            let g = rest.remove(i);
            for (f, c) in self.right_act(g, &x.f)?.iter() {
                for (ww, c1) in wedge(&rest).iter() {
                    out.add_term(SpotWord { f: f.clone(), w: ww.clone() }, &sign(i) * c * c1);
                }
            }
        }
        for i in 0..q {
            for j in i + 1..q {
                let (a, b) = (x.w.0[i], x.w.0[j]);
                let rest: Vec<GSym> =
                    x.w.0.iter().enumerate().filter(|(k, _)| *k != i && *k != j).map(|(_, g)| *g).collect();
                for (h, c) in self.bracket(a, b).iter() {
                    let mut raw = vec![*h];
                    raw.extend(rest.iter().copied());
                    for (ww, c1) in wedge(&raw).iter() {
                        out.add_term(SpotWord { f: x.f.clone(), w: ww.clone() }, &sign(i + j) * c * c1);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `δ(Y) x - Y·x` with `Y` acting on `F̄^{⊗p}` through the diagonal and on
    /// the wedge by the adjoint action; these span the coinvariant relations.
    pub fn coinvariant_relation(&self, y: GSym, x: &SpotWord) -> Result<Cochain> {
        let mut out = Cochain::zero();
        for (f, c) in self.right_act(y, &x.f)?.iter() {
            out.add_term(SpotWord { f: f.clone(), w: x.w.clone() }, c.clone());
        }
        for i in 0..x.w.0.len() {
            for (h, c) in self.bracket(y, x.w.0[i]).iter() {
                let mut raw = x.w.0.clone();
                raw[i] = *h;
                for (ww, c1) in wedge(&raw).iter() {
                    out.add_term(SpotWord { f: x.f.clone(), w: ww.clone() }, -(c * c1));
                }
            }
        }
        Ok(out)
    }

    pub fn beta_chain(&self, c: &Cochain) -> Result<Cochain> {
        self.lift(c, |x| self.beta(x))
    }

    pub fn del_chain(&self, c: &Cochain) -> Result<Cochain> {
        self.lift(c, |x| self.del(x))
    }

    fn lift(&self, c: &Cochain, op: impl Fn(&SpotWord) -> Result<Cochain>) -> Result<Cochain> {
        let mut out = Cochain::zero();
        for (x, k) in c.iter() {
            out.add_scaled(&op(x)?, k);
        }
        Ok(out)
    }

    /// Matrix of `op` between spots, columns indexed by the domain basis.
    pub fn matrix(
        &self,
        from: &Spot,
        to: &Spot,
        op: impl Fn(&SpotWord) -> Result<Cochain> + Sync,
    ) -> Result<SparseMatrix> {
        let idx: Vec<usize> = (0..from.dim()).collect();
        let cols: Vec<Result<SparseVec>> = crate::par::map(&idx, |&i| to.coords(&op(from.representative(i))?));
        let cols: Result<Vec<SparseVec>> = cols.into_iter().collect();
        Ok(SparseMatrix::from_columns(to.dim(), &cols?))
    }

    pub fn beta_matrix(&self, from: &Spot, to: &Spot) -> Result<SparseMatrix> {
        self.matrix(from, to, |x| self.beta(x))
    }

    pub fn del_matrix(&self, from: &Spot, to: &Spot) -> Result<SparseMatrix> {
        self.matrix(from, to, |x| self.del(x))
    }

    /// Relations of `from` are carried into relations of `to` by `op`, so
    /// that `op` descends to coinvariants.
    pub fn descends(&self, from: &Spot, to: &Spot, op: impl Fn(&SpotWord) -> Result<Cochain>) -> Result<bool> {
        for y in self.h_basis() {
            for x in &from.words {
                let r = self.coinvariant_relation(y, x)?;
                let image = self.lift(&r, &op)?;
                if !to.coords(&image)?.is_empty() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// `α(X¹ ∧ … ∧ X^q) = (1/q!) Σ_σ (-1)^σ X^{σ(1)} ⊗ … ⊗ X^{σ(q)}`.
pub fn antisymmetrize(w: &WedgeWord) -> LinComb<Vec<GSym>> {
    let q = w.0.len();
    let mut out = LinComb::zero();
    let mut fact = rat(1);
    for k in 2..=q {
        fact *= rat(k as i64);
    }
    for perm in permutations(q) {
        let s = perm_sign(&perm);
        out.add_term(perm.iter().map(|&i| w.0[i]).collect(), rat(s) / &fact);
    }
    out
}

/// Left inverse of [`antisymmetrize`]: a tensor of generators goes to their
/// wedge.
pub fn wedge_tensor(t: &LinComb<Vec<GSym>>) -> LinComb<WedgeWord> {
    let mut out = LinComb::zero();
    for (v, c) in t.iter() {
        out.add_scaled(&wedge(v), c);
    }
    out
}

pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

pub fn perm_sign(p: &[usize]) -> i64 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::Hn;
    use crate::symbolic::Sym;

    fn setup(n: usize, kind: Kind) -> Bicomplex {
        Bicomplex::new(FContext::new(Hn::new(n), required_order(3)).unwrap(), kind)
    }

    fn eta(low: &[u8]) -> Mono {
        Mono::from_syms(1, vec![Sym::normal(0, low.to_vec())])
    }

    fn word(f: Vec<Mono>, w: Vec<GSym>) -> SpotWord {
        SpotWord { f, w: WedgeWord(w) }
    }

    fn one(x: SpotWord, c: i64) -> Cochain {
        Cochain::term(x, rat(c))
    }

    const X: GSym = GSym::X(0);
    const Y: GSym = GSym::Y(0, 0);

    #[test]
    fn beta_samples() {
        let bc = setup(1, Kind::Absolute);
        let e1 = eta(&[0, 0]);
        let e2 = eta(&[0, 0, 0]);
        assert!(bc.beta(&word(vec![e1.clone()], vec![])).unwrap().is_zero());
        assert_eq!(bc.beta(&word(vec![e2], vec![])).unwrap(), one(word(vec![e1.clone(), e1.clone()], vec![]), -1));
        assert_eq!(bc.beta(&word(vec![], vec![X])).unwrap(), one(word(vec![e1], vec![Y]), 1));
    }

    #[test]
    fn del_samples() {
        let bc = setup(1, Kind::Absolute);
        let e1 = eta(&[0, 0]);
        let e2 = eta(&[0, 0, 0]);
        assert_eq!(bc.del(&word(vec![], vec![Y])).unwrap(), one(word(vec![], vec![]), 1));
        assert_eq!(bc.del(&word(vec![e1], vec![X])).unwrap(), one(word(vec![e2], vec![]), -1));
        assert!(bc.del(&word(vec![], vec![X, Y])).unwrap().is_zero());
    }

    #[test]
    fn spot_sizes_n1() {
        let bc = Bicomplex::new(FContext::new(Hn::new(1), required_order(5)).unwrap(), Kind::Absolute);
        assert_eq!(bc.spot(0, 0, 0).unwrap().dim(), 1);
        assert_eq!(bc.spot(1, 0, 2).unwrap().dim(), 2);
        // normalized: only η₁ ⊗ η₁ ⊗ Y survives
        assert_eq!(bc.spot(2, 1, 2).unwrap().dim(), 1);
        // words of F̄^{⊗p} at weight w are compositions of w into p parts,
        // each part filled by a partition
        let parts = [1usize, 1, 2, 3, 5, 7];
        for w in 1..=5 {
            let mut want = 0;
            for a in 1..w {
                want += parts[a] * parts[w - a];
            }
            assert_eq!(bc.spot(2, 0, w).unwrap().dim(), want, "weight {w}");
        }
    }

    #[test]
    fn relative_coinvariants_n2() {
        let bc = setup(2, Kind::Relative);
        let dims: Vec<usize> = [(1, 0), (2, 0), (1, 1), (0, 2)].iter().map(|&(p, q)| bc.spot(p, q, 2).unwrap().dim()).collect();
        assert_eq!(dims, vec![0, 2, 1, 1]);
        assert_eq!(bc.spot(0, 0, 0).unwrap().dim(), 0);
        assert_eq!(bc.spot(2, 1, 3).unwrap().dim(), 0);
    }

    #[test]
    fn antisymmetrization_inverts() {
        let w = WedgeWord(vec![X, Y]);
        let t = antisymmetrize(&w);
        assert_eq!(t.len(), 2);
        assert_eq!(wedge_tensor(&t), LinComb::basis(w));
        assert_eq!(perm_sign(&[1, 0, 2]), -1);
        assert_eq!(permutations(3).len(), 6);
    }
}
