use num_traits::One;

use super::{flip, fpoly_of, mono_of, FContext, Pair};
use crate::error::Result;
use crate::hopf::{basis_monomials, verify::product_pairs, HElem};
use crate::linalg::Rational;
use crate::poly::Coeff;
use crate::par;
use crate::report::Check;
use crate::symbolic::{LinComb, Mono};

impl FContext {
    /// Product in `F ⋈ U`: `(f ⋈ u)(g ⋈ v) = f (u₍₁₎ ▷ g) ⋈ u₍₂₎ v`.
    pub fn k_mul_mono(&self, a: &Mono, b: &Mono) -> Result<HElem> {
        let (f, u) = a.split_du();
        let (g, v) = b.split_du();
        let mut out = HElem::zero();
        for ((u1, u2), c) in self.u_coproduct(&u).iter() {
            let fg = fpoly_of(&f).mul(&self.act(u1, &fpoly_of(&g))?);
            let uv = self.hn.mul_mono(u2, &v);
            for (fm, c1) in fg.terms() {
                let fm = mono_of(self.n, fm);
                for (w, c2) in uv.iter() {
                    out.add_term(Mono::join_du(&fm, w), c * c1 * c2);
                }
            }
        }
        Ok(out)
    }

    pub fn k_mul(&self, a: &HElem, b: &HElem) -> Result<HElem> {
        let mut out = HElem::zero();
        for (x, c) in a.iter() {
            for (y, d) in b.iter() {
                out.add_scaled(&self.k_mul_mono(x, y)?, &(c * d));
            }
        }
        Ok(out)
    }

    /// Coproduct of `F ⋈ U`: `f₍₁₎ ⋈ u₍₁₎⁽⁰⁾ ⊗ f₍₂₎ u₍₁₎⁽¹⁾ ⋈ u₍₂₎`.
    pub fn k_coproduct_mono(&self, m: &Mono) -> Result<Pair> {
        let (f, u) = m.split_du();
        let df = self.coproduct(&f)?;
        let mut out = Pair::zero();
        for ((u1, u2), c) in self.u_coproduct(&u).iter() {
            for ((u10, u11), c1) in self.coaction(u1)?.iter() {
                for ((f1, f2), c2) in df.iter() {
                    let left = Mono::join_du(f1, u10);
                    let right = Mono::join_du(&f2.mul_d(u11), u2);
                    out.add_term((left, right), c * c1 * c2);
                }
            }
        }
        Ok(out)
    }

    pub fn k_coproduct(&self, e: &HElem) -> Result<Pair> {
        let mut out = Pair::zero();
        for (m, c) in e.iter() {
            out.add_scaled(&self.k_coproduct_mono(m)?, c);
        }
        Ok(out)
    }

    /// Antipode of `F ⋈ U`: `(1 ⋈ S(u⁽⁰⁾)) (S(f u⁽¹⁾) ⋈ 1)`.
    pub fn k_antipode_mono(&self, m: &Mono) -> Result<HElem> {
        let (f, u) = m.split_du();
        let mut out = HElem::zero();
        for ((u0, u1), c) in self.coaction(&u)?.iter() {
            let su = self.u_antipode(u0);
            let sf = self.antipode_poly(&fpoly_of(&f.mul_d(u1)))?;
            let sf: HElem = sf.terms().map(|(p, x)| (mono_of(self.n, p), x.clone())).collect();
            out.add_scaled(&self.k_mul(&su, &sf)?, c);
        }
        Ok(out)
    }

    pub fn k_antipode(&self, e: &HElem) -> Result<HElem> {
        let mut out = HElem::zero();
        for (m, c) in e.iter() {
            out.add_scaled(&self.k_antipode_mono(m)?, c);
        }
        Ok(out)
    }

    pub fn k_counit(&self, e: &HElem) -> Rational {
        e.coeff(&Mono::one(self.n))
    }

    /// `(f ⋈ u) ▷ g = f (u ▷ g)`, the action of `F ⋈ U` on `F`.
    pub fn k_act_mono(&self, m: &Mono, g: &super::FPoly) -> Result<super::FPoly> {
        let (f, u) = m.split_du();
        Ok(fpoly_of(&f).mul(&self.act(&u, g)?))
    }
}

fn diff<T: std::fmt::Debug + PartialEq>(input: &str, l: &T, r: &T) -> Option<String> {
    (l != r).then(|| format!("{input}: {l:?} != {r:?}"))
}

/// Compares `H_n` with `F ⋈ U` under `δ_K Z_I ↦ η_K ⋈ Z_I`: products, the
/// coproduct of `H` after the flip, and `S_{F⋈U} ∘ S_H = id`.
pub fn bicrossed_crosscheck(f: &FContext, w_max: usize, d_max: usize) -> Vec<Check> {
    let h = f.hn().clone();
    let basis = basis_monomials(f.n(), w_max, d_max);
    let pairs = product_pairs(&basis, w_max, d_max);
    let err = |e: crate::Error| Some(e.to_string());
    vec![
        Check::collect(
            "bicrossed product",
            par::map(&pairs, |(a, b)| match f.k_mul_mono(a, b) {
                Ok(k) => diff(&format!("{a} * {b}"), &k, &h.mul_mono(a, b)),
                Err(e) => err(e),
            }),
        ),
        Check::collect(
            "bicrossed coproduct",
            par::map(&basis, |m| match f.k_coproduct_mono(m) {
                Ok(k) => diff(&m.render(), &k, &flip(&h.coproduct_mono(m))),
                Err(e) => err(e),
            }),
        ),
        Check::collect(
            "bicrossed antipode",
            par::map(&basis, |m| match f.k_antipode(&h.antipode(&LinComb::basis(m.clone()))) {
                Ok(k) => diff(&m.render(), &k, &LinComb::term(m.clone(), <Rational as One>::one())),
                Err(e) => err(e),
            }),
        ),
    ]
}
