//! Cocyclic modules: faces, degeneracies and the cyclic operator given on
//! basis words, the derived `b` and `B`, and an identity checker. The
//! instance here is the standard module `H^{⊗m}` with the modular pair
//! `(δ, 1)`.

use std::sync::Arc;

use num_traits::One;

use crate::hopf::{basis_monomials, Hn};
use crate::linalg::{membership, rat, Rational, SparseVec};
use crate::par;
use crate::report::Check;
use crate::symbolic::{render_hword, Gen, HWord, LinComb, Memo, Mono, Sym};

/// Operators of a cocyclic module on basis words of degree `m`.
pub trait CocyclicModule: Sync {
    type Word: Ord + Clone + Send + Sync;

    /// `∂_i: C^m → C^{m+1}`, `0 ≤ i ≤ m + 1`.
    fn face(&self, m: usize, i: usize, w: &Self::Word) -> LinComb<Self::Word>;
    /// `σ_i: C^m → C^{m-1}`, `0 ≤ i ≤ m - 1`.
    fn degeneracy(&self, m: usize, i: usize, w: &Self::Word) -> LinComb<Self::Word>;
    /// `τ_m: C^m → C^m`.
    fn cyclic(&self, m: usize, w: &Self::Word) -> LinComb<Self::Word>;
    fn render(&self, w: &Self::Word) -> String;
}

fn lift<W: Ord + Clone>(x: &LinComb<W>, f: impl Fn(&W) -> LinComb<W>) -> LinComb<W> {
    x.map_linear(|w| f(w))
}

pub fn face<M: CocyclicModule>(md: &M, m: usize, i: usize, x: &LinComb<M::Word>) -> LinComb<M::Word> {
    lift(x, |w| md.face(m, i, w))
}

pub fn degeneracy<M: CocyclicModule>(md: &M, m: usize, i: usize, x: &LinComb<M::Word>) -> LinComb<M::Word> {
    lift(x, |w| md.degeneracy(m, i, w))
}

pub fn cyclic<M: CocyclicModule>(md: &M, m: usize, x: &LinComb<M::Word>) -> LinComb<M::Word> {
    lift(x, |w| md.cyclic(m, w))
}

fn cyclic_pow<M: CocyclicModule>(md: &M, m: usize, k: usize, x: &LinComb<M::Word>) -> LinComb<M::Word> {
    (0..k).fold(x.clone(), |acc, _| cyclic(md, m, &acc))
}

/// `b = Σ_{i=0}^{m+1} (-1)^i ∂_i`.
pub fn b_op<M: CocyclicModule>(md: &M, m: usize, x: &LinComb<M::Word>) -> LinComb<M::Word> {
    let mut out = LinComb::zero();
    for i in 0..=m + 1 {
        out.add_scaled(&face(md, m, i, x), &sign(i));
    }
    out
}

/// `B = A ∘ B₀` with `B₀ = σ_{m-1} τ_m (1 - (-1)^m τ_m)` on `C^m` and
/// `A = Σ_{k<m} λ^k`, `λ = (-1)^{m-1} τ_{m-1}` on `C^{m-1}`.
pub fn big_b<M: CocyclicModule>(md: &M, m: usize, x: &LinComb<M::Word>) -> LinComb<M::Word> {
    if m == 0 {
        return LinComb::zero();
    }
    let mut y = x.clone();
    y.add_scaled(&cyclic(md, m, x), &sign(m + 1));
    let b0 = degeneracy(md, m, m - 1, &cyclic(md, m, &y));
    let mut out = LinComb::zero();
    let mut cur = b0;
    let lam = sign(m - 1);
    for _ in 0..m {
        out.add(&cur);
        cur = cyclic(md, m - 1, &cur).scaled(&lam);
    }
    out
}

fn sign(i: usize) -> Rational {
    if i % 2 == 0 {
        rat(1)
    } else {
        rat(-1)
    }
}

/// The simplicial and cyclic identities, and `b² = B² = bB + Bb = 0`, on the
/// given words of each degree `m` (`words[m]`).
pub fn check_cocyclic_identities<M: CocyclicModule>(md: &M, words: &[Vec<M::Word>]) -> Vec<Check> {
    type Outcome = Option<String>;
    let items: Vec<(usize, M::Word)> =
        words.iter().enumerate().flat_map(|(m, ws)| ws.iter().map(move |w| (m, w.clone()))).collect();
    let cmp = |what: String, l: LinComb<M::Word>, r: LinComb<M::Word>| -> Outcome {
        (l != r).then_some(what)
    };
    let run = |name: &str, f: &(dyn Fn(usize, &LinComb<M::Word>, &str) -> Outcome + Sync)| {
        Check::collect(
            name,
            par::map(&items, |(m, w)| f(*m, &LinComb::basis(w.clone()), &md.render(w))),
        )
    };
    vec![
        run("face face", &|m, x, r| {
            for j in 1..=m + 2 {
                for i in 0..j {
                    let l = face(md, m + 1, j, &face(md, m, i, x));
                    let rr = face(md, m + 1, i, &face(md, m, j - 1, x));
                    if let Some(e) = cmp(format!("d{j} d{i} on {r}"), l, rr) {
                        return Some(e);
                    }
                }
            }
            None
        }),
        run("degeneracy degeneracy", &|m, x, r| {
            if m < 2 {
                return None;
            }
            for j in 0..m - 1 {
                for i in 0..=j {
                    let l = degeneracy(md, m - 1, j, &degeneracy(md, m, i, x));
                    let rr = degeneracy(md, m - 1, i, &degeneracy(md, m, j + 1, x));
                    if let Some(e) = cmp(format!("s{j} s{i} on {r}"), l, rr) {
                        return Some(e);
                    }
                }
            }
            None
        }),
        run("degeneracy face", &|m, x, r| {
            for j in 0..=m {
                for i in 0..=m + 1 {
                    let l = degeneracy(md, m + 1, j, &face(md, m, i, x));
                    let rr = if i < j {
                        face(md, m - 1, i, &degeneracy(md, m, j - 1, x))
                    } else if i == j || i == j + 1 {
                        x.clone()
                    } else {
                        face(md, m - 1, i - 1, &degeneracy(md, m, j, x))
                    };
                    if let Some(e) = cmp(format!("s{j} d{i} on {r}"), l, rr) {
                        return Some(e);
                    }
                }
            }
            None
        }),
        run("cyclic face", &|m, x, r| {
            let n = m + 1;
            for i in 0..=n {
                let l = cyclic(md, n, &face(md, m, i, x));
                let rr = if i == 0 { face(md, m, n, x) } else { face(md, m, i - 1, &cyclic(md, m, x)) };
                if let Some(e) = cmp(format!("t d{i} on {r}"), l, rr) {
                    return Some(e);
                }
            }
            None
        }),
        run("cyclic degeneracy", &|m, x, r| {
            if m == 0 {
                return None;
            }
            let n = m - 1;
            for i in 0..=n {
                let l = cyclic(md, n, &degeneracy(md, m, i, x));
                let rr = if i == 0 {
                    degeneracy(md, m, n, &cyclic_pow(md, m, 2, x))
                } else {
                    degeneracy(md, m, i - 1, &cyclic(md, m, x))
                };
                if let Some(e) = cmp(format!("t s{i} on {r}"), l, rr) {
                    return Some(e);
                }
            }
            None
        }),
        run("cyclic order", &|m, x, r| cmp(format!("t^{} on {r}", m + 1), cyclic_pow(md, m, m + 1, x), x.clone())),
        run("b squared", &|m, x, r| {
            let y = b_op(md, m + 1, &b_op(md, m, x));
            (!y.is_zero()).then(|| format!("b b on {r}"))
        }),
        run("B squared", &|m, x, r| {
            if m < 2 {
                return None;
            }
            let y = big_b(md, m - 1, &big_b(md, m, x));
            (!y.is_zero()).then(|| format!("B B on {r}"))
        }),
        run("bB + Bb", &|m, x, r| {
            let mut y = big_b(md, m + 1, &b_op(md, m, x));
            if m > 0 {
                y.add(&b_op(md, m - 1, &big_b(md, m, x)));
            }
            (!y.is_zero()).then(|| format!("bB + Bb on {r}"))
        }),
    ]
}

/// `C^m = H^{⊗m}` with the operators of the modular pair `(δ, 1)`.
pub struct StandardModule {
    h: Arc<Hn>,
    faces: Memo<(usize, usize, HWord), LinComb<HWord>>,
    cyclics: Memo<(usize, HWord), LinComb<HWord>>,
}

impl StandardModule {
    pub fn new(h: Arc<Hn>) -> StandardModule {
        StandardModule { h, faces: Memo::default(), cyclics: Memo::default() }
    }

    /// Words of degree `m`, total weight at most `w_max`, each factor of PBW
    /// degree at most `d_max`.
    pub fn words(&self, m: usize, w_max: usize, d_max: usize) -> Vec<HWord> {
        let basis = basis_monomials(self.h.n(), w_max, d_max);
        let mut out = Vec::new();
        fn rec(basis: &[Mono], m: usize, left: i64, cur: &mut HWord, out: &mut Vec<HWord>) {
            if cur.len() == m {
                out.push(cur.clone());
                return;
            }
            for b in basis {
                if b.weight() <= left {
                    cur.push(b.clone());
                    rec(basis, m, left - b.weight(), cur, out);
                    cur.pop();
                }
            }
        }
        rec(&basis, m, w_max as i64, &mut Vec::new(), &mut out);
        out
    }

    /// Words of exact weight `w`.
    pub fn words_of_weight(&self, m: usize, w: usize, d_max: usize) -> Vec<HWord> {
        self.words(m, w, d_max).into_iter().filter(|x| x.iter().map(Mono::weight).sum::<i64>() == w as i64).collect()
    }

    /// `Δ^{k-1}` into `k` tensor factors.
    fn iterated_coproduct(&self, x: &LinComb<Mono>, k: usize) -> LinComb<HWord> {
        let mut cur: LinComb<HWord> = x.iter().map(|(m, c)| (vec![m.clone()], c.clone())).collect();
        for _ in 1..k {
            let mut next = LinComb::zero();
            for (w, c) in cur.iter() {
                let (last, rest) = w.split_last().expect("nonempty");
                for ((a, b), d) in self.h.coproduct_mono(last).iter() {
                    let mut v = rest.to_vec();
                    v.push(a.clone());
                    v.push(b.clone());
                    next.add_term(v, c * d);
                }
            }
            cur = next;
        }
        cur
    }
}

impl CocyclicModule for StandardModule {
    type Word = HWord;

    fn face(&self, m: usize, i: usize, w: &HWord) -> LinComb<HWord> {
        (*self.faces.get_or(&(m, i, w.clone()), || self.face_raw(m, i, w))).clone()
    }

    fn degeneracy(&self, _m: usize, i: usize, w: &HWord) -> LinComb<HWord> {
        if !w[i].is_one() {
            return LinComb::zero();
        }
        let mut v = w.clone();
        v.remove(i);
        LinComb::basis(v)
    }

    fn cyclic(&self, m: usize, w: &HWord) -> LinComb<HWord> {
        (*self.cyclics.get_or(&(m, w.clone()), || self.cyclic_raw(m, w))).clone()
    }

    fn render(&self, w: &HWord) -> String {
        render_hword(w)
    }
}

impl StandardModule {
    fn face_raw(&self, m: usize, i: usize, w: &HWord) -> LinComb<HWord> {
        let one = Mono::one(self.h.n());
        if i == 0 {
            let mut v = vec![one];
            v.extend(w.iter().cloned());
            return LinComb::basis(v);
        }
        if i == m + 1 {
            let mut v = w.clone();
            v.push(one);
            return LinComb::basis(v);
        }
        let mut out = LinComb::zero();
        for ((a, b), c) in self.h.coproduct_mono(&w[i - 1]).iter() {
            let mut v = w[..i - 1].to_vec();
            v.push(a.clone());
            v.push(b.clone());
            v.extend(w[i..].iter().cloned());
            out.add_term(v, c.clone());
        }
        out
    }

    fn cyclic_raw(&self, m: usize, w: &HWord) -> LinComb<HWord> {
        if m == 0 {
            return LinComb::basis(w.clone());
        }
        let st = self.h.twisted_antipode_mono(&w[0]);
        let spread = self.iterated_coproduct(&st, m);
        let mut tail: Vec<LinComb<Mono>> = w[1..].iter().map(|x| LinComb::basis(x.clone())).collect();
        tail.push(LinComb::term(Mono::one(self.h.n()), <Rational as One>::one()));
        let mut out = LinComb::zero();
        for (v, c) in spread.iter() {
            let mut acc: LinComb<HWord> = LinComb::term(Vec::new(), c.clone());
            for (a, t) in v.iter().zip(&tail) {
                let prod = self.h.mul(&LinComb::basis(a.clone()), t);
                let mut next = LinComb::zero();
                for (pre, c1) in acc.iter() {
                    for (p, c2) in prod.iter() {
                        let mut u = pre.clone();
                        u.push(p.clone());
                        next.add_term(u, c1 * c2);
                    }
                }
                acc = next;
            }
            out.add(&acc);
        }
        out
    }
}

/// `δ₁` is a cyclic 1-cocycle of the standard `H_1` module: `b δ₁ = 0`,
/// `λ δ₁ = δ₁`, `B δ₁ = 0`, and `δ₁` is not `b` of a weight-1 0-cochain.
pub fn check_delta1_class(md: &StandardModule) -> Vec<Check> {
    let n = md.h.n();
    let d1 = Mono::from_gen(n, &Gen::D(Sym::normal(0, vec![0, 0])));
    let x = LinComb::basis(vec![d1]);
    let b = b_op(md, 1, &x);
    let tau = cyclic(md, 1, &x);
    let bb = big_b(md, 1, &x);
    let images: Vec<LinComb<HWord>> =
        md.words_of_weight(0, 1, 1).into_iter().map(|w| b_op(md, 0, &LinComb::basis(w))).collect();
    let mut index = std::collections::BTreeMap::new();
    for k in images.iter().flat_map(|c| c.keys()).chain(x.keys()) {
        let next = index.len();
        index.entry(k.clone()).or_insert(next);
    }
    let vec_of = |c: &LinComb<HWord>| -> SparseVec { c.iter().map(|(k, v)| (index[k], v.clone())).collect() };
    let span: Vec<SparseVec> = images.iter().map(vec_of).collect();
    let exact = membership(&vec_of(&x), &span).is_some();
    vec![
        Check::single("b of delta1", b.is_zero(), || format!("{b:?}")),
        Check::single("lambda of delta1", tau == x.neg(), || format!("{tau:?}")),
        Check::single("B of delta1", bb.is_zero(), || format!("{bb:?}")),
        Check::single("delta1 not exact", !exact, || "weight-1 block of C^0 reaches delta1".into()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::parse_word;
    use crate::report::all_passed;

    fn word(h: &Hn, parts: &[&str]) -> HWord {
        parts
            .iter()
            .map(|p| {
                let w = if *p == "1" { Vec::new() } else { parse_word(h.n(), p).unwrap() };
                h.word_product(&w).keys().next().unwrap().clone()
            })
            .collect()
    }

    #[test]
    fn samples() {
        let h = Hn::new(1);
        let md = StandardModule::new(h.clone());
        let d1 = word(&h, &["d[1;1,1|]"]);
        let x = LinComb::basis(d1.clone());
        assert_eq!(face(&md, 1, 0, &x), LinComb::basis(word(&h, &["1", "d[1;1,1|]"])));
        assert_eq!(cyclic(&md, 1, &x), x.neg());
        assert!(b_op(&md, 1, &x).is_zero());
        assert!(big_b(&md, 0, &LinComb::basis(Vec::new())).is_zero());
        assert_eq!(cyclic_pow(&md, 1, 2, &LinComb::basis(word(&h, &["X"]))), LinComb::basis(word(&h, &["X"])));
    }

    #[test]
    fn identities_small() {
        let h = Hn::new(1);
        let md = StandardModule::new(h);
        let words: Vec<Vec<HWord>> = (0..=2).map(|m| md.words(m, 2, 2)).collect();
        let checks = check_cocyclic_identities(&md, &words);
        assert!(all_passed(&checks), "{checks:?}");
    }

    #[test]
    fn delta1_is_cyclic() {
        let md = StandardModule::new(Hn::new(1));
        let checks = check_delta1_class(&md);
        assert!(all_passed(&checks), "{checks:?}");
    }
}
