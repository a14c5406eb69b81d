//! Truncated formal diffeomorphisms of `R^n`: composition, inversion, Kac
//! factorization into an affine part and a part tangent to the identity, the
//! right action of affine maps, and the induced infinitesimal action on jet
//! coordinates.

use std::collections::{BTreeMap, HashMap};

use num_traits::One;

use crate::error::{Error, Result};
use crate::hopf::multisets;
use crate::linalg::{rat, Rational};
use crate::poly::{pmono_mul, Coeff, Dual, PMono, Poly};
use crate::symbolic::{GSym, Sym};

/// Sorted multiset of variable indices.
pub type Multi = Vec<u8>;

/// Product of the factorials of the multiplicities.
pub fn multi_factorial(m: &[u8]) -> Rational {
    let mut out = <Rational as One>::one();
    let mut run = 0;
    for i in 0..m.len() {
        run = if i > 0 && m[i] == m[i - 1] { run + 1 } else { 1 };
        out *= rat(run);
    }
    out
}

/// Truncated power series keyed by sorted multi-index.
pub type Series<C> = BTreeMap<Multi, C>;

pub fn series_add<C: Coeff>(acc: &mut Series<C>, k: &Multi, c: &C) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(k.clone()).or_insert_with(C::zero);
    *e = e.add(c);
    if e.is_zero() {
        acc.remove(k);
    }
}

pub fn series_mul<C: Coeff>(a: &Series<C>, b: &Series<C>, order: usize) -> Series<C> {
    let mut out = Series::new();
    for (ka, x) in a {
        for (kb, y) in b {
            if ka.len() + kb.len() > order {
                continue;
            }
            let mut k = ka.clone();
            k.extend_from_slice(kb);
            k.sort_unstable();
            series_add(&mut out, &k, &x.mul(y));
        }
    }
    out
}

/// `∂_p` of a series.
pub fn series_partial<C: Coeff>(s: &Series<C>, p: u8) -> Series<C> {
    let mut out = Series::new();
    for (k, c) in s {
        let mult = k.iter().filter(|&&v| v == p).count();
        if mult > 0 {
            let mut k2 = k.clone();
            let pos = k2.iter().position(|&v| v == p).unwrap();
            k2.remove(pos);
            series_add(&mut out, &k2, &c.mul(&C::from_rat(rat(mult as i64))));
        }
    }
    out
}

/// Jet of order `order` of a map `R^n -> R^n`: Taylor coefficients keyed by
/// component and sorted multi-index, constant term under the empty key.
#[derive(Clone, PartialEq, Debug)]
pub struct Jet<C = Rational> {
    n: usize,
    order: usize,
    comps: Vec<Series<C>>,
}

impl<C: Coeff> Jet<C> {
    pub fn zero(n: usize, order: usize) -> Self {
        Jet { n, order, comps: vec![Series::new(); n] }
    }

    pub fn identity(n: usize, order: usize) -> Self {
        let mut j = Self::zero(n, order);
        for i in 0..n {
            j.set(i, vec![i as u8], C::one());
        }
        j
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Taylor coefficient of `x^m` in component `i`.
    pub fn coeff(&self, i: usize, m: &[u8]) -> C {
        self.comps[i].get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn set(&mut self, i: usize, mut m: Multi, c: C) {
        m.sort_unstable();
        if m.len() > self.order {
            return;
        }
        if c.is_zero() {
            self.comps[i].remove(&m);
        } else {
            self.comps[i].insert(m, c);
        }
    }

    pub fn terms(&self, i: usize) -> impl Iterator<Item = (&Multi, &C)> {
        self.comps[i].iter()
    }

    pub fn component(&self, i: usize) -> &Series<C> {
        &self.comps[i]
    }

    /// Jet coordinate `α^i_m`: the partial derivative at the origin.
    pub fn alpha(&self, i: usize, m: &[u8]) -> C {
        self.coeff(i, m).mul(&C::from_rat(multi_factorial(m)))
    }

    pub fn constant(&self) -> Vec<C> {
        (0..self.n).map(|i| self.coeff(i, &[])).collect()
    }

    /// `linear()[i][j]` is the coefficient of `x_j` in component `i`.
    pub fn linear(&self) -> Vec<Vec<C>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.coeff(i, &[j as u8])).collect()).collect()
    }

    pub fn is_unipotent(&self) -> bool {
        let lin = self.linear();
        self.constant().iter().all(C::is_zero)
            && (0..self.n).all(|i| (0..self.n).all(|j| lin[i][j] == if i == j { C::one() } else { C::zero() }))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Jet<D> {
        let comps = self
            .comps
            .iter()
            .map(|s| s.iter().map(|(k, c)| (k.clone(), f(c))).filter(|(_, c)| !c.is_zero()).collect())
            .collect();
        Jet { n: self.n, order: self.order, comps }
    }

    fn check_shape(&self, g: &Self) -> Result<()> {
        if self.n != g.n || self.order != g.order {
            return Err(Error::DimensionMismatch(format!(
                "jets of shape (n={}, J={}) and (n={}, J={})",
                self.n, self.order, g.n, g.order
            )));
        }
        Ok(())
    }

    pub fn sub(&self, g: &Self) -> Result<Self> {
        self.check_shape(g)?;
        let mut out = self.clone();
        for i in 0..self.n {
            for (k, c) in &g.comps[i] {
                series_add(&mut out.comps[i], k, &c.neg());
            }
        }
        Ok(out)
    }

    /// `f ∘ g`, treating `f` as a polynomial map and truncating at order `J`.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        self.check_shape(g)?;
        let mut powers: HashMap<Multi, Series<C>> = HashMap::new();
        let mut one = Series::new();
        one.insert(Vec::new(), C::one());
        powers.insert(Vec::new(), one);
        let mut out = Self::zero(self.n, self.order);
        for i in 0..self.n {
            for (k, c) in &self.comps[i] {
                for len in 1..=k.len() {
                    if !powers.contains_key(&k[..len]) {
                        let p = series_mul(&powers[&k[..len - 1]], &g.comps[k[len - 1] as usize], self.order);
                        powers.insert(k[..len].to_vec(), p);
                    }
                }
                for (m, x) in &powers[k] {
                    series_add(&mut out.comps[i], m, &c.mul(x));
                }
            }
        }
        Ok(out)
    }

    /// Inverse of a jet tangent to the identity, by fixed point iteration
    /// `g = x - (f - x) ∘ g`.
    pub fn invert(&self) -> Result<Self> {
        if !self.is_unipotent() {
            return Err(Error::NotUnipotent("constant term or linear part differs from the identity".into()));
        }
        let id = Self::identity(self.n, self.order);
        let tail = self.sub(&id)?;
        let mut g = id.clone();
        for _ in 0..self.order {
            g = id.sub(&tail.compose(&g)?)?;
        }
        Ok(g)
    }

    /// `a·f + b` for a matrix `a` and vector `b`.
    pub fn affine_apply(&self, a: &[Vec<C>], b: &[C]) -> Self {
        let mut out = Self::zero(self.n, self.order);
        for i in 0..self.n {
            for r in 0..self.n {
                if a[i][r].is_zero() {
                    continue;
                }
                for (k, c) in &self.comps[r] {
                    series_add(&mut out.comps[i], k, &a[i][r].mul(c));
                }
            }
            series_add(&mut out.comps[i], &Vec::new(), &b[i]);
        }
        out
    }

    /// Splits `φ` as `φ(x) = a·ψ(x) + b` with `a = φ'(0)`, `b = φ(0)` and `ψ`
    /// tangent to the identity.
    pub fn kac_parts(&self) -> Result<(Vec<Vec<C>>, Vec<C>, Self)> {
        let b = self.constant();
        let a = self.linear();
        let ainv = invert_matrix(&a).ok_or(Error::SingularLinearPart)?;
        let neg_b: Vec<C> = b.iter().map(C::neg).collect();
        let shifted = self.affine_apply(&identity_matrix(self.n), &neg_b);
        let zero = vec![C::zero(); self.n];
        Ok((a, b, shifted.affine_apply(&ainv, &zero)))
    }
}

pub fn identity_matrix<C: Coeff>(n: usize) -> Vec<Vec<C>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { C::one() } else { C::zero() }).collect()).collect()
}

/// Gauss-Jordan inverse using pivots that are units of the ring.
pub fn invert_matrix<C: Coeff>(a: &[Vec<C>]) -> Option<Vec<Vec<C>>> {
    let n = a.len();
    let mut m: Vec<Vec<C>> = a.to_vec();
    let mut inv = identity_matrix::<C>(n);
    for col in 0..n {
        let (piv, r) = (col..n).find_map(|r| m[r][col].recip().map(|x| (r, x)))?;
        m.swap(col, piv);
        inv.swap(col, piv);
        for j in 0..n {
            m[col][j] = m[col][j].mul(&r);
            inv[col][j] = inv[col][j].mul(&r);
        }
        for row in 0..n {
            if row != col && !m[row][col].is_zero() {
                let f = m[row][col].clone();
                for j in 0..n {
                    m[row][j] = m[row][j].sub(&f.mul(&m[col][j]));
                    inv[row][j] = inv[row][j].sub(&f.mul(&inv[col][j]));
                }
            }
        }
    }
    Some(inv)
}

/// Affine motion `x ↦ a·x + b` with invertible `a`.
#[derive(Clone, PartialEq, Debug)]
pub struct AffineMap {
    pub a: Vec<Vec<Rational>>,
    pub b: Vec<Rational>,
}

impl AffineMap {
    pub fn new(a: Vec<Vec<Rational>>, b: Vec<Rational>) -> Result<Self> {
        if invert_matrix(&a).is_none() {
            return Err(Error::SingularLinearPart);
        }
        Ok(AffineMap { a, b })
    }

    pub fn identity(n: usize) -> Self {
        AffineMap { a: identity_matrix(n), b: vec![rat(0); n] }
    }

    pub fn translation(b: Vec<Rational>) -> Self {
        AffineMap { a: identity_matrix(b.len()), b }
    }

    pub fn to_jet(&self, order: usize) -> Jet {
        Jet::identity(self.a.len(), order).affine_apply(&self.a, &self.b)
    }

    pub fn compose(&self, o: &AffineMap) -> AffineMap {
        let n = self.a.len();
        let a = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|r| &self.a[i][r] * &o.a[r][j]).sum()).collect())
            .collect();
        let b = (0..n).map(|i| (0..n).map(|r| &self.a[i][r] * &o.b[r]).sum::<Rational>() + &self.b[i]).collect();
        AffineMap { a, b }
    }
}

/// Kac factorization `φ = a ∘ ψ` of a rational jet.
pub fn kac_factorize(phi: &Jet) -> Result<(AffineMap, Jet)> {
    let (a, b, psi) = phi.kac_parts()?;
    Ok((AffineMap { a, b }, psi))
}

/// `ψ ◁ φ`: the part of `ψ ∘ φ` tangent to the identity.
pub fn right_action(psi: &Jet, phi: &AffineMap) -> Result<Jet> {
    Ok(psi.compose(&phi.to_jet(psi.order()))?.kac_parts()?.2)
}

/// Jet tangent to the identity whose coordinates `α^i_L` (`2 ≤ |L| ≤ J`) are
/// the polynomial variables `var(α^i_L)`.
pub fn symbolic_njet<V: crate::poly::Var>(
    n: usize,
    order: usize,
    var: impl Fn(Sym) -> V,
) -> Jet<Poly<V>> {
    let mut j = Jet::identity(n, order);
    for i in 0..n {
        for len in 2..=order {
            for m in multisets(n, len) {
                let c = Poly::var(var(Sym { up: i as u8, low: m.clone() })).scale(&multi_factorial(&m).recip());
                j.set(i, m, c);
            }
        }
    }
    j
}

/// First-order flow of a Lie algebra generator: `x + t e_k` for `X_k`, and
/// `x + t x_j e_i` for `Y_i^j`.
pub fn flow<C: Coeff>(n: usize, order: usize, g: GSym) -> Jet<Dual<C>> {
    let mut j = Jet::<Dual<C>>::identity(n, order);
    match g {
        GSym::X(k) => j.set(k as usize, Vec::new(), Dual::t()),
        GSym::Y(i, jj) => {
            let cur = j.coeff(i as usize, &[jj]);
            j.set(i as usize, vec![jj], cur.add(&Dual::t()));
        }
    }
    j
}

pub type APoly = Poly<Sym>;

/// Infinitesimal action of the Lie algebra on polynomials in the jet
/// coordinates, tabulated from the first-order flows at order `J`.
pub struct JetAction {
    n: usize,
    order: usize,
    table: HashMap<(GSym, Sym), APoly>,
}

impl JetAction {
    pub fn new(n: usize, order: usize) -> Self {
        let psi: Jet<Dual<APoly>> = symbolic_njet(n, order, |s| s).map_coeffs(|c| Dual::real(c.clone()));
        let mut table = HashMap::new();
        for g in GSym::basis(n) {
            let moved = psi.compose(&flow(n, order, g)).expect("same shape");
            let (_, _, new) = moved.kac_parts().expect("unipotent linear part");
            for len in 2..order {
                for m in multisets(n, len) {
                    for i in 0..n {
                        table.insert((g, Sym { up: i as u8, low: m.clone() }), new.alpha(i, &m).eps);
                    }
                }
            }
        }
        JetAction { n, order, table }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `g ▷ α`; errors when `α` has top order, whose image is not determined.
    pub fn on_coordinate(&self, g: GSym, a: &Sym) -> Result<&APoly> {
        self.table.get(&(g, a.clone())).ok_or_else(|| {
            Error::TruncationOverflow(format!("action on a coordinate of order {} needs order above {}", a.low.len(), self.order))
        })
    }

    /// Extends `on_coordinate` to monomials as a derivation.
    pub fn on_monomial(&self, g: GSym, m: &PMono<Sym>) -> Result<APoly> {
        let mut out = APoly::zero();
        for (idx, (v, e)) in m.iter().enumerate() {
            let mut rest = m.clone();
            if *e == 1 {
                rest.remove(idx);
            } else {
                rest[idx].1 -= 1;
            }
            let d = self.on_coordinate(g, v)?;
            let scaled = d.scale(&rat(*e as i64));
            for (t, c) in scaled.terms() {
                out = out.add(&Poly(crate::symbolic::LinComb::term(pmono_mul(t, &rest), c.clone())));
            }
        }
        Ok(out)
    }

    pub fn on_poly(&self, g: GSym, p: &APoly) -> Result<APoly> {
        let mut out = APoly::zero();
        for (m, c) in p.terms() {
            out = out.add(&self.on_monomial(g, m)?.scale(c));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ratio;

    fn jet1(order: usize, coeffs: &[(usize, i64, i64)]) -> Jet {
        let mut j = Jet::zero(1, order);
        for &(p, a, b) in coeffs {
            j.set(0, vec![0; p], ratio(a, b));
        }
        j
    }

    #[test]
    fn compose_samples() {
        let f = jet1(3, &[(1, 1, 1), (2, 1, 1)]);
        let g = jet1(3, &[(1, 1, 1), (3, 1, 1)]);
        assert_eq!(f.compose(&g).unwrap(), jet1(3, &[(1, 1, 1), (2, 1, 1), (3, 1, 1)]));
        let a = ratio(3, 7);
        let mut h = Jet::zero(1, 3);
        h.set(0, vec![0], rat(1));
        h.set(0, vec![0, 0], a.clone());
        let mut want = Jet::zero(1, 3);
        want.set(0, vec![0], rat(1));
        want.set(0, vec![0, 0], rat(2) * &a);
        want.set(0, vec![0, 0, 0], rat(2) * &a * &a);
        assert_eq!(h.compose(&h).unwrap(), want);
        assert!(matches!(h.compose(&Jet::identity(1, 2)), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn invert_sample() {
        let f = jet1(3, &[(1, 1, 1), (2, 1, 1)]);
        assert_eq!(f.invert().unwrap(), jet1(3, &[(1, 1, 1), (2, -1, 1), (3, 2, 1)]));
        assert!(matches!(jet1(3, &[(1, 2, 1)]).invert(), Err(Error::NotUnipotent(_))));
    }

    #[test]
    fn kac_sample() {
        let phi = jet1(2, &[(0, 1, 1), (1, 2, 1), (2, 1, 1)]);
        let (a, psi) = kac_factorize(&phi).unwrap();
        assert_eq!(a.a, vec![vec![rat(2)]]);
        assert_eq!(a.b, vec![rat(1)]);
        assert_eq!(psi, jet1(2, &[(1, 1, 1), (2, 1, 2)]));
        assert_eq!(kac_factorize(&jet1(2, &[(2, 1, 1)])), Err(Error::SingularLinearPart));
    }

    #[test]
    fn translation_action_sample() {
        let (a, t) = (ratio(2, 3), ratio(1, 5));
        let mut psi = Jet::identity(1, 4);
        psi.set(0, vec![0, 0], a.clone());
        let moved = right_action(&psi, &AffineMap::translation(vec![t.clone()])).unwrap();
        assert_eq!(moved.coeff(0, &[0, 0]), &a / (rat(1) + rat(2) * &a * &t));
    }

    #[test]
    fn infinitesimal_samples_n1() {
        let act = JetAction::new(1, 3);
        let a2 = Sym { up: 0, low: vec![0, 0] };
        let a3 = Sym { up: 0, low: vec![0, 0, 0] };
        assert_eq!(act.on_coordinate(GSym::Y(0, 0), &a2).unwrap(), &APoly::var(a2.clone()));
        let want = APoly::var(a3.clone()).sub(&APoly::var(a2.clone()).pow(2));
        assert_eq!(act.on_coordinate(GSym::X(0), &a2).unwrap(), &want);
        assert!(matches!(act.on_coordinate(GSym::X(0), &a3), Err(Error::TruncationOverflow(_))));
    }
}
