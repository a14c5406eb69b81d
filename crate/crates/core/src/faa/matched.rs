//! The matched-pair axioms relating the action of `U(g)` on `F` and the
//! coaction of `F` on `U(g)`, plus the comparisons of `F` with the abelian
//! part of `H_n`.

use super::{fpoly_of, fpoly_of_elem, mono_of, tag, F2, FContext, FPoly, Pair};
use crate::error::Result;
use crate::linalg::Rational;
use crate::par;
use crate::poly::Coeff;
use crate::report::Check;
use crate::symbolic::{GSym, LinComb, Mono};

type Triple = LinComb<(Mono, Mono, Mono)>;

/// Lie algebra generators as monomials of `U(g)`.
pub fn u_generators(n: usize) -> Vec<Mono> {
    GSym::basis(n).iter().map(|g| Mono::from_gen(n, &g.to_gen())).collect()
}

/// PBW monomials of `U(g)` of degree 1 and 2.
pub fn u_degree_le2(n: usize) -> Vec<Mono> {
    let gens = u_generators(n);
    let mut out = gens.clone();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i..] {
            let mut m = a.clone();
            for g in b.gens() {
                m.push_unchecked(&g);
            }
            out.push(m);
        }
    }
    out
}

fn u_weight(u: &Mono) -> usize {
    u.weight().max(0) as usize
}

impl FContext {
    /// η monomials (including 1) of weight at most `w`.
    pub fn monomials_le(&self, w: usize) -> Vec<Mono> {
        let mut out = vec![Mono::one(self.n)];
        for k in 1..=w {
            out.extend(self.monomials(k));
        }
        out
    }

    /// η monomials `f` for which `u ▷ f` and its coproduct stay inside the cut.
    fn test_functions(&self, u: &Mono) -> Vec<Mono> {
        let w = (self.order - 2).min((self.order - 1).saturating_sub(u_weight(u)));
        self.monomials_le(w)
    }

    pub fn coaction_elem(&self, u: &LinComb<Mono>) -> Result<Pair> {
        let mut out = Pair::zero();
        for (m, c) in u.iter() {
            out.add_scaled(&self.coaction(m)?, c);
        }
        Ok(out)
    }

    fn pair_to_f2(&self, left: &FPoly, right: &FPoly) -> F2 {
        tag(0, left).mul(&tag(1, right))
    }

    fn check_mp1(&self, u: &Mono, f: &Mono) -> Result<Option<String>> {
        let lhs = self.act(u, &fpoly_of(f))?.constant_term();
        let eu = if u.is_one() { 1 } else { 0 };
        let ef = if f.is_one() { 1 } else { 0 };
        let rhs = Rational::from_integer((eu * ef).into());
        Ok((lhs != rhs).then(|| format!("u={} f={}: {lhs} != {rhs}", u.render(), f.render())))
    }

    fn check_mp2(&self, u: &Mono, f: &Mono) -> Result<Option<String>> {
        let lhs = self.coproduct_poly(&self.act(u, &fpoly_of(f))?)?;
        let df = self.coproduct(f)?;
        let mut rhs = F2::zero();
        for ((u1, u2), c) in self.u_coproduct(u).iter() {
            for ((u10, u11), c1) in self.coaction(u1)?.iter() {
                for ((f1, f2), c2) in df.iter() {
                    let left = self.act(u10, &fpoly_of(f1))?;
                    let right = fpoly_of(u11).mul(&self.act(u2, &fpoly_of(f2))?);
                    rhs = rhs.add(&self.pair_to_f2(&left, &right).scale(&(c * c1 * c2)));
                }
            }
        }
        Ok((lhs != rhs).then(|| format!("u={} f={}", u.render(), f.render())))
    }

    fn u_times_f(&self, u: &Mono, p: &FPoly, c: &Rational, out: &mut Pair) {
        for (m, d) in p.terms() {
            out.add_term((u.clone(), mono_of(self.n, m)), c * d);
        }
    }

    fn check_mp4(&self, u: &Mono, v: &Mono) -> Result<Option<String>> {
        let lhs = self.coaction_elem(&self.hn.mul_mono(u, v))?;
        let cv = self.coaction(v)?;
        let mut rhs = Pair::zero();
        for ((u1, u2), c) in self.u_coproduct(u).iter() {
            for ((a, b), c1) in self.coaction(u1)?.iter() {
                for ((v0, v1), c2) in cv.iter() {
                    let f = fpoly_of(b).mul(&self.act(u2, &fpoly_of(v1))?);
                    for (w, c3) in self.hn.mul_mono(a, v0).iter() {
                        self.u_times_f(w, &f, &(c * c1 * c2 * c3), &mut rhs);
                    }
                }
            }
        }
        Ok((lhs != rhs).then(|| format!("u={} v={}", u.render(), v.render())))
    }

    fn check_mp5(&self, u: &Mono, f: &Mono) -> Result<Option<String>> {
        let mut lhs = Pair::zero();
        let mut rhs = Pair::zero();
        for ((u1, u2), c) in self.u_coproduct(u).iter() {
            let a = self.act(u1, &fpoly_of(f))?;
            for ((u20, u21), c1) in self.coaction(u2)?.iter() {
                self.u_times_f(u20, &a.mul(&fpoly_of(u21)), &(c * c1), &mut lhs);
            }
            let b = self.act(u2, &fpoly_of(f))?;
            for ((u10, u11), c1) in self.coaction(u1)?.iter() {
                self.u_times_f(u10, &fpoly_of(u11).mul(&b), &(c * c1), &mut rhs);
            }
        }
        Ok((lhs != rhs).then(|| format!("u={} f={}", u.render(), f.render())))
    }

    /// `u ▷ (fg) = (u₍₁₎ ▷ f)(u₍₂₎ ▷ g)`.
    fn check_module_algebra(&self, u: &Mono, f: &Mono, g: &Mono) -> Result<Option<String>> {
        let lhs = self.act(u, &fpoly_of(&f.mul_d(g)))?;
        let mut rhs = FPoly::zero();
        for ((u1, u2), c) in self.u_coproduct(u).iter() {
            rhs = rhs.add(&self.act(u1, &fpoly_of(f))?.mul(&self.act(u2, &fpoly_of(g))?).scale(c));
        }
        Ok((lhs != rhs).then(|| format!("u={} f={} g={}", u.render(), f.render(), g.render())))
    }

    /// `(uv) ▷ f = u ▷ (v ▷ f)` with `uv` reduced in `U(g)`.
    fn check_module(&self, u: &Mono, v: &Mono, f: &Mono) -> Result<Option<String>> {
        let lhs = self.act_elem(&self.hn.mul_mono(u, v), &fpoly_of(f))?;
        let rhs = self.act(u, &self.act(v, &fpoly_of(f))?)?;
        Ok((lhs != rhs).then(|| format!("u={} v={} f={}", u.render(), v.render(), f.render())))
    }

    /// `(∇ ⊗ id)∇ = (id ⊗ Δ)∇` and `(id ⊗ ε)∇ = id`.
    fn check_comodule(&self, u: &Mono) -> Result<Option<String>> {
        let cu = self.coaction(u)?;
        let mut lhs = Triple::zero();
        let mut rhs = Triple::zero();
        let mut counit = LinComb::<Mono>::zero();
        for ((u0, f), c) in cu.iter() {
            for ((a, b), c1) in self.coaction(u0)?.iter() {
                lhs.add_term((a.clone(), b.clone(), f.clone()), c * c1);
            }
            for ((f1, f2), c1) in self.coproduct(f)?.iter() {
                rhs.add_term((u0.clone(), f1.clone(), f2.clone()), c * c1);
            }
            if f.is_one() {
                counit.add_term(u0.clone(), c.clone());
            }
        }
        if lhs != rhs {
            return Ok(Some(format!("coassociativity at u={}", u.render())));
        }
        Ok((counit != LinComb::basis(u.clone())).then(|| format!("counit at u={}", u.render())))
    }
}

fn run<T: Sync>(name: &str, items: &[T], f: impl Fn(&T) -> Result<Option<String>> + Sync) -> Check {
    Check::collect(
        name,
        par::map(items, |x| match f(x) {
            Ok(o) => o,
            Err(e) => Some(e.to_string()),
        }),
    )
}

/// Axioms mp1-mp5 with module, module-algebra and comodule axioms, on
/// generators and degree-2 PBW monomials of `U(g)` against all η monomials
/// that fit inside the jet cut.
pub fn check_matched_pair(f: &FContext) -> Vec<Check> {
    let n = f.n();
    let gens = u_generators(n);
    let us = u_degree_le2(n);
    let uf: Vec<(Mono, Mono)> =
        us.iter().flat_map(|u| f.test_functions(u).into_iter().map(move |m| (u.clone(), m))).collect();
    let gen_pairs: Vec<(Mono, Mono)> =
        gens.iter().flat_map(|a| gens.iter().map(move |b| (a.clone(), b.clone()))).collect();
    let mut one_fs = vec![Mono::one(n)];
    one_fs.extend(f.monomials_le(f.order() - 2));
    let triples: Vec<(Mono, Mono, Mono)> = gen_pairs
        .iter()
        .flat_map(|(a, b)| {
            let w = (f.order() - 2 - u_weight(b)).min((f.order() - 1).saturating_sub(u_weight(a) + u_weight(b)));
            f.monomials_le(w).into_iter().map(move |m| (a.clone(), b.clone(), m))
        })
        .collect();
    let mut alg: Vec<(Mono, Mono, Mono)> = Vec::new();
    for u in &gens {
        let fs = f.test_functions(u);
        for (i, a) in fs.iter().enumerate() {
            for b in &fs[i..] {
                if a.weight() + b.weight() + u.weight() < f.order() as i64 {
                    alg.push((u.clone(), a.clone(), b.clone()));
                }
            }
        }
    }
    let with_one: Vec<Mono> = std::iter::once(Mono::one(n)).chain(us.iter().cloned()).collect();
    vec![
        run("mp1", &uf, |(u, m)| f.check_mp1(u, m)),
        run("mp2", &uf, |(u, m)| f.check_mp2(u, m)),
        Check::single("mp3", f.coaction(&Mono::one(n)).ok() == Some(Pair::basis((Mono::one(n), Mono::one(n)))), || {
            "coaction of 1".into()
        }),
        run("mp4", &gen_pairs, |(u, v)| f.check_mp4(u, v)),
        run("mp5", &uf, |(u, m)| f.check_mp5(u, m)),
        run("module", &triples, |(u, v, m)| f.check_module(u, v, m)),
        run("module algebra", &alg, |(u, a, b)| f.check_module_algebra(u, a, b)),
        run("comodule", &with_one, |u| f.check_comodule(u)),
    ]
}

/// `Δ_F` from jet composition against the commutator recursion for `Δ_H`
/// on δ monomials, after the tensor flip.
pub fn check_two_route_coproduct(f: &FContext, w_max: usize) -> Vec<Check> {
    let ms = f.monomials_le(w_max.min(f.max_weight()));
    vec![run("two-route coproduct", &ms, |m| {
        let jet = f.coproduct(m)?;
        let rec = super::flip(&f.hn().coproduct_mono(m));
        Ok((jet != rec).then(|| format!("{}: {jet:?} != {rec:?}", m.render())))
    })]
}

/// The jet action of `g` on η agrees with the bracket `[g, δ]` in `H_n`.
pub fn check_action_intertwines(f: &FContext, w_max: usize) -> Vec<Check> {
    let n = f.n();
    let h = f.hn();
    let items: Vec<(GSym, Mono)> = GSym::basis(n)
        .into_iter()
        .flat_map(|g| {
            (1..=w_max.min(f.order() - 2))
                .flat_map(|w| f.etas(w))
                .map(move |s| (g, Mono::from_syms(n, vec![s])))
        })
        .collect();
    vec![run("action intertwines", &items, |(g, m)| {
        let jet = f.act_gen(*g, &fpoly_of(m))?;
        let ge = h.gen(&g.to_gen());
        let me = LinComb::basis(m.clone());
        let mut br = h.mul(&ge, &me);
        br.sub(&h.mul(&me, &ge));
        let br = fpoly_of_elem(&br);
        Ok((jet != br).then(|| format!("{} on {}", g.render(n), m.render())))
    })]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::Hn;
    use crate::report::all_passed;

    #[test]
    fn matched_pair_n1_small() {
        let f = FContext::new(Hn::new(1), 4).unwrap();
        let checks = check_matched_pair(&f);
        assert!(all_passed(&checks), "{checks:?}");
    }

    #[test]
    fn two_routes_n1() {
        let f = FContext::new(Hn::new(1), 5).unwrap();
        let checks = check_two_route_coproduct(&f, 4);
        assert!(all_passed(&checks), "{checks:?}");
        assert!(all_passed(&check_action_intertwines(&f, 3)));
    }
}
