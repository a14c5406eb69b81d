//! Hopf algebra axioms of `H_n` checked exactly on a finite cut of the PBW basis.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{basis_monomials, random_word, HElem, Hn, Strategy, H2};
use crate::par;
use crate::report::Check;
use crate::symbolic::{Gen, LinComb, Mono, Sym};

type H3 = LinComb<Vec<Mono>>;

fn left_assoc(h: &Hn, t: &H2) -> H3 {
    let mut out = H3::zero();
    for ((a, b), c) in t.iter() {
        for ((a1, a2), d) in h.coproduct_mono(a).iter() {
            out.add_term(vec![a1.clone(), a2.clone(), b.clone()], c * d);
        }
    }
    out
}

fn right_assoc(h: &Hn, t: &H2) -> H3 {
    let mut out = H3::zero();
    for ((a, b), c) in t.iter() {
        for ((b1, b2), d) in h.coproduct_mono(b).iter() {
            out.add_term(vec![a.clone(), b1.clone(), b2.clone()], c * d);
        }
    }
    out
}

fn mismatch<T: std::fmt::Debug + PartialEq>(input: &str, l: &T, r: &T) -> Option<String> {
    if l == r {
        None
    } else {
        Some(format!("{input}: {l:?} != {r:?}"))
    }
}

/// Every instance of the flatness identity
/// `δ^i_{jℓ,k} - δ^i_{jk,ℓ} = δ^s_{jk} δ^i_{sℓ} - δ^s_{jℓ} δ^i_{sk}`, with
/// `δ^i_{jℓ,k} = X_k δ^i_{jℓ} - δ^i_{jℓ} X_k`, rewritten to normal form
/// from words in the generators.
pub fn verify_bianchi(h: &Hn) -> Check {
    let n = h.n() as u8;
    let d = |i: u8, j: u8, k: u8| Gen::D(Sym::normal(i, vec![j, k]));
    let mut quads = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    quads.push((i, j, k, l));
                }
            }
        }
    }
    Check::collect(
        "bianchi",
        par::map(&quads, |&(i, j, k, l)| {
            let mut words: Vec<(Vec<Gen>, i64)> = vec![
                (vec![Gen::X(k), d(i, j, l)], 1),
                (vec![d(i, j, l), Gen::X(k)], -1),
                (vec![Gen::X(l), d(i, j, k)], -1),
                (vec![d(i, j, k), Gen::X(l)], 1),
            ];
            for s in 0..n {
                words.push((vec![d(s, j, k), d(i, s, l)], -1));
                words.push((vec![d(s, j, l), d(i, s, k)], 1));
            }
            let mut total = HElem::zero();
            for (w, c) in &words {
                total.add_scaled(&h.normal_form(w, Strategy::Leftmost), &crate::linalg::rat(*c));
            }
            (!total.is_zero()).then(|| format!("i={} j={} k={} l={}: {total:?}", i + 1, j + 1, k + 1, l + 1))
        }),
    )
}

/// Random words reduced under leftmost, rightmost and random redex choice
/// agree with each other and with the memoized product.
pub fn confluence_smoke(h: &Hn, count: usize, max_len: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let words: Vec<(u64, Vec<Gen>)> = (0..count)
        .map(|i| (seed.wrapping_add(i as u64), random_word(h.n(), 2 + i % max_len.saturating_sub(1).max(1), &mut rng)))
        .collect();
    Check::collect(
        "confluence",
        par::map(&words, |(s, w)| {
            let a = h.normal_form(w, Strategy::Leftmost);
            let ok = a == h.normal_form(w, Strategy::Rightmost)
                && a == h.normal_form(w, Strategy::Random(*s))
                && a == h.word_product(w);
            (!ok).then(|| format!("{w:?}"))
        }),
    )
}

/// Pairs of cut monomials whose product stays inside the cut.
pub fn product_pairs(basis: &[Mono], w_max: usize, d_max: usize) -> Vec<(Mono, Mono)> {
    let mut out = Vec::new();
    for a in basis.iter().filter(|m| !m.is_one()) {
        for b in basis.iter().filter(|m| !m.is_one()) {
            if a.weight() + b.weight() <= w_max as i64 && a.degree() + b.degree() <= d_max {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

/// Coalgebra, bialgebra, antipode, character and twisted antipode identities.
/// The twisted antipode is checked in the forms `S̃(h₍₁₎)h₍₂₎ = δ(h)1` and
/// `S̃(h₍₂₎)h₍₁₎ = δ(h)1`.
pub fn verify_hopf_axioms(h: &Hn, w_max: usize, d_max: usize) -> Vec<Check> {
    let basis = basis_monomials(h.n(), w_max, d_max);
    let pairs = product_pairs(&basis, w_max, d_max);
    let one = h.one();

    let per_mono = |name: &str, f: &(dyn Fn(&Mono) -> Option<String> + Sync)| {
        Check::collect(name, par::map(&basis, |m| f(m)))
    };
    let per_pair = |name: &str, f: &(dyn Fn(&Mono, &Mono) -> Option<String> + Sync)| {
        Check::collect(name, par::map(&pairs, |(a, b)| f(a, b)))
    };

    let mut checks = Vec::new();
    checks.push(per_mono("coassociativity", &|m| {
        let d = h.coproduct_mono(m);
        mismatch(&m.render(), &left_assoc(h, &d), &right_assoc(h, &d))
    }));
    checks.push(per_mono("counit", &|m| {
        let d = h.coproduct_mono(m);
        let mut l = HElem::zero();
        let mut r = HElem::zero();
        for ((a, b), c) in d.iter() {
            if a.is_one() {
                l.add_term(b.clone(), c.clone());
            }
            if b.is_one() {
                r.add_term(a.clone(), c.clone());
            }
        }
        let me = HElem::basis(m.clone());
        mismatch(&m.render(), &l, &me).or_else(|| mismatch(&m.render(), &r, &me))
    }));
    checks.push(per_pair("coproduct multiplicative", &|a, b| {
        let ab = h.mul_mono(a, b);
        let l = h.coproduct(&ab);
        let r = h.mul2(&h.coproduct_mono(a), &h.coproduct_mono(b));
        mismatch(&format!("{a} * {b}"), &l, &r)
    }));
    checks.push(per_pair("counit multiplicative", &|a, b| {
        let ab = h.mul_mono(a, b);
        let want = h.counit(&HElem::basis(a.clone())) * h.counit(&HElem::basis(b.clone()));
        mismatch(&format!("{a} * {b}"), &h.counit(&ab), &want)
    }));
    checks.push(per_mono("antipode", &|m| {
        let d = h.coproduct_mono(m);
        let eps = one.scaled(&h.counit(&HElem::basis(m.clone())));
        let l = h.convolve(&d, |a| h.antipode(&HElem::basis(a.clone())), |b| HElem::basis(b.clone()));
        let r = h.convolve(&d, |a| HElem::basis(a.clone()), |b| h.antipode(&HElem::basis(b.clone())));
        mismatch(&m.render(), &l, &eps).or_else(|| mismatch(&m.render(), &r, &eps))
    }));
    checks.push(per_pair("antipode anti-multiplicative", &|a, b| {
        let l = h.antipode(&h.mul_mono(a, b));
        let r = h.mul(&h.antipode(&HElem::basis(b.clone())), &h.antipode(&HElem::basis(a.clone())));
        mismatch(&format!("{a} * {b}"), &l, &r)
    }));
    checks.push(per_pair("delta character", &|a, b| {
        let l = h.delta_elem(&h.mul_mono(a, b));
        mismatch(&format!("{a} * {b}"), &l, &(h.delta_char(a) * h.delta_char(b)))
    }));
    checks.push(per_pair("twisted antipode anti-multiplicative", &|a, b| {
        let l = h.twisted_antipode(&h.mul_mono(a, b));
        let r = h.mul(&h.twisted_antipode_mono(b), &h.twisted_antipode_mono(a));
        mismatch(&format!("{a} * {b}"), &l, &r)
    }));
    checks.push(per_mono("twisted antipode involution", &|m| {
        let l = h.twisted_antipode(&h.twisted_antipode_mono(m));
        mismatch(&m.render(), &l, &HElem::basis(m.clone()))
    }));
    checks.push(per_mono("twisted antipode left identity", &|m| {
        let d = h.coproduct_mono(m);
        let l = h.convolve(&d, |a| (*h.twisted_antipode_mono(a)).clone(), |b| HElem::basis(b.clone()));
        mismatch(&m.render(), &l, &one.scaled(&h.delta_char(m)))
    }));
    checks.push(per_mono("twisted antipode flipped identity", &|m| {
        let d = h.coproduct_mono(m);
        let flipped = {
            let mut out = HElem::zero();
            for ((a, b), c) in d.iter() {
                out.add_scaled(&h.mul(&h.twisted_antipode_mono(b), &HElem::basis(a.clone())), c);
            }
            out
        };
        mismatch(&m.render(), &flipped, &one.scaled(&h.delta_char(m)))
    }));
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bianchi_and_confluence_n2() {
        let h = Hn::new(2);
        assert!(verify_bianchi(&h).passed);
        assert!(confluence_smoke(&h, 50, 4, 3).passed);
    }

    #[test]
    fn small_cut_passes() {
        let h = Hn::new(1);
        for c in verify_hopf_axioms(&h, 2, 2) {
            assert!(c.passed, "{c:?}");
        }
    }

    #[test]
    fn right_sided_twisted_identity_fails_on_x() {
        let h = Hn::new(1);
        let x = h.mono(&Gen::X(0));
        let d = h.coproduct_mono(&x);
        let l = h.convolve(&d, |a| HElem::basis(a.clone()), |b| (*h.twisted_antipode_mono(b)).clone());
        let d1 = h.gen(&Gen::D(crate::symbolic::Sym::normal(0, vec![0, 0])));
        assert_eq!(l, d1);
    }
}
