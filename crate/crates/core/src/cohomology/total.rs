//! Total complexes assembled from spots at a fixed weight, their cohomology
//! and class certificates.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::{Bicomplex, Cochain, Kind, Spot};
use crate::error::{Error, Result};
use crate::linalg::{fmt_rat, rank_and_kernel, SparseMatrix, SparseVec, Subspace};
use crate::report::Check;
use crate::symbolic::SpotWord;

/// Which total complex to build from the spots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// `TC^m = ⊕_k ⊕_{p+q=m-2k} C^{p,q}`, `∂` moving to the next copy.
    Cyclic,
    /// `⊕_{p+q=m} C^{p,q}` with `β` only.
    Hochschild,
    /// `⊕_{p+q≡m (2)} C^{p,q}` with `β + (-1)^p ∂`.
    Periodic,
    /// The row `q = 0` with `β` only.
    Row,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Part {
    k: usize,
    p: usize,
    q: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Term {
    pub copy: usize,
    pub word: String,
    pub coeff: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub label: String,
    pub degree: usize,
    pub weight: usize,
    pub cocycle: bool,
    pub not_coboundary: bool,
    pub representative: Vec<Term>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Block {
    pub degree: usize,
    pub weight: usize,
    pub dim: usize,
    pub certificates: Vec<Certificate>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table {
    pub n: usize,
    pub kind: Kind,
    pub jet_cut: usize,
    pub w_max: usize,
    pub blocks: Vec<Block>,
}

impl Table {
    /// Total dimension in a degree over all weights.
    pub fn dim(&self, degree: usize) -> usize {
        self.blocks.iter().filter(|b| b.degree == degree).map(|b| b.dim).sum()
    }

    /// Weights of the classes in a degree, one entry per dimension.
    pub fn class_weights(&self, degree: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .blocks
            .iter()
            .filter(|b| b.degree == degree)
            .flat_map(|b| std::iter::repeat_n(b.weight, b.dim))
            .collect();
        v.sort();
        v
    }

    pub fn certificates_ok(&self) -> bool {
        self.blocks.iter().all(|b| b.certificates.len() == b.dim && b.certificates.iter().all(|c| c.cocycle && c.not_coboundary))
    }
}

/// Spots and differentials at one weight, cached by bidegree.
pub struct WeightBlock<'a> {
    bc: &'a Bicomplex,
    pub weight: usize,
    shape: Shape,
    spots: HashMap<(usize, usize), Arc<Spot>>,
    betas: HashMap<(usize, usize), Arc<SparseMatrix>>,
    dels: HashMap<(usize, usize), Arc<SparseMatrix>>,
}

fn sign(p: usize) -> crate::linalg::Rational {
    crate::linalg::rat(if p % 2 == 0 { 1 } else { -1 })
}

impl<'a> WeightBlock<'a> {
    pub fn new(bc: &'a Bicomplex, weight: usize, shape: Shape) -> Self {
        WeightBlock { bc, weight, shape, spots: HashMap::new(), betas: HashMap::new(), dels: HashMap::new() }
    }

    fn q_max(&self) -> usize {
        match self.shape {
            Shape::Row => 0,
            _ => self.bc.lie_basis().len(),
        }
    }

    pub fn spot(&mut self, p: usize, q: usize) -> Result<Arc<Spot>> {
        if let Some(s) = self.spots.get(&(p, q)) {
            return Ok(s.clone());
        }
        let s = Arc::new(self.bc.spot(p, q, self.weight)?);
        self.spots.insert((p, q), s.clone());
        Ok(s)
    }

    pub fn beta(&mut self, p: usize, q: usize) -> Result<Arc<SparseMatrix>> {
        if let Some(m) = self.betas.get(&(p, q)) {
            return Ok(m.clone());
        }
        let (a, b) = (self.spot(p, q)?, self.spot(p + 1, q)?);
        let m = Arc::new(self.bc.beta_matrix(&a, &b)?);
        self.betas.insert((p, q), m.clone());
        Ok(m)
    }

    pub fn del(&mut self, p: usize, q: usize) -> Result<Arc<SparseMatrix>> {
        if let Some(m) = self.dels.get(&(p, q)) {
            return Ok(m.clone());
        }
        let (a, b) = (self.spot(p, q)?, self.spot(p, q - 1)?);
        let m = Arc::new(self.bc.del_matrix(&a, &b)?);
        self.dels.insert((p, q), m.clone());
        Ok(m)
    }

    fn parts(&self, m: usize) -> Vec<Part> {
        let w = self.weight;
        let qm = self.q_max();
        let mut out = Vec::new();
        match self.shape {
            Shape::Cyclic => {
                for k in 0..=m / 2 {
                    for q in 0..=qm.min(m - 2 * k) {
                        let p = m - 2 * k - q;
                        if p <= w + 1 {
                            out.push(Part { k, p, q });
                        }
                    }
                }
            }
            Shape::Hochschild | Shape::Row => {
                for q in 0..=qm.min(m) {
                    if m - q <= w + 1 {
                        out.push(Part { k: 0, p: m - q, q });
                    }
                }
            }
            Shape::Periodic => {
                for q in 0..=qm {
                    for p in 0..=w + 1 {
                        if (p + q) % 2 == m % 2 {
                            out.push(Part { k: 0, p, q });
                        }
                    }
                }
            }
        }
        out
    }

    fn layout(&mut self, m: usize) -> Result<(Vec<Part>, Vec<usize>, usize)> {
        let parts = self.parts(m);
        let mut offsets = Vec::new();
        let mut dim = 0;
        for pt in &parts {
            offsets.push(dim);
            dim += self.spot(pt.p, pt.q)?.dim();
        }
        Ok((parts, offsets, dim))
    }

    pub fn layout_dim(&mut self, m: usize) -> Result<usize> {
        Ok(self.layout(m)?.2)
    }

    /// The total differential out of degree `m`.
    pub fn differential(&mut self, m: usize) -> Result<SparseMatrix> {
        let (src, src_off, src_dim) = self.layout(m)?;
        let (dst, dst_off, dst_dim) = self.layout(m + 1)?;
        let index: HashMap<Part, usize> = dst.iter().enumerate().map(|(i, p)| (*p, dst_off[i])).collect();
        let mut cols = vec![SparseVec::new(); src_dim];
        let with_del = matches!(self.shape, Shape::Cyclic | Shape::Periodic);
        for (i, pt) in src.iter().enumerate() {
            let mut pieces: Vec<(usize, Arc<SparseMatrix>, crate::linalg::Rational)> = Vec::new();
            if let Some(&off) = index.get(&Part { p: pt.p + 1, ..*pt }) {
                pieces.push((off, self.beta(pt.p, pt.q)?, sign(0)));
            }
            if with_del && pt.q > 0 {
                let k = if self.shape == Shape::Cyclic { pt.k + 1 } else { pt.k };
                if let Some(&off) = index.get(&Part { k, p: pt.p, q: pt.q - 1 }) {
                    pieces.push((off, self.del(pt.p, pt.q)?, sign(pt.p)));
                }
            }
            for (off, mat, s) in pieces {
                for (j, col) in mat.columns().into_iter().enumerate() {
                    let target = &mut cols[src_off[i] + j];
                    for (r, x) in col {
                        let e = target.entry(off + r).or_insert_with(|| crate::linalg::rat(0));
                        *e += x * &s;
                        if num_traits::Zero::is_zero(e) {
                            target.remove(&(off + r));
                        }
                    }
                }
            }
        }
        Ok(SparseMatrix::from_columns(dst_dim, &cols))
    }

    /// The differential into degree `m`; in the periodic shape degrees are
    /// parities, so degree 0 is reached from degree 1.
    pub fn incoming(&mut self, m: usize, dim: usize) -> Result<SparseMatrix> {
        match (self.shape, m) {
            (Shape::Periodic, 0) => self.differential(1),
            (_, 0) => Ok(SparseMatrix::zeros(dim, 0)),
            _ => self.differential(m - 1),
        }
    }

    /// Cohomology in degree `m` with certified representatives.
    pub fn cohomology(&mut self, m: usize) -> Result<Block> {
        let d_out = self.differential(m)?;
        let d_in = self.incoming(m, d_out.cols())?;
        if d_in.rows() != d_out.cols() {
            return Err(Error::ShapeMismatch(format!("degree {m}: {} vs {}", d_in.rows(), d_out.cols())));
        }
        if !d_out.mul(&d_in)?.is_zero() {
            return Err(Error::CompositionNonzero);
        }
        let (_, kernel) = rank_and_kernel(&d_out);
        let mut image = Subspace::new();
        for c in d_in.columns() {
            image.insert(c);
        }
        let boundaries = image.clone();
        let (parts, offsets, _) = self.layout(m)?;
        let mut certs = Vec::new();
        for v in kernel {
            if !image.insert(v.clone()) {
                continue;
            }
            let cocycle = d_out.apply(&v).is_empty();
            let not_coboundary = !boundaries.contains(&v);
            let representative = self.render(&parts, &offsets, &v)?;
            certs.push(Certificate {
                label: format!("[{m},{}]#{}", self.weight, certs.len()),
                degree: m,
                weight: self.weight,
                cocycle,
                not_coboundary,
                representative,
            });
        }
        Ok(Block { degree: m, weight: self.weight, dim: certs.len(), certificates: certs })
    }

    fn render(&mut self, parts: &[Part], offsets: &[usize], v: &SparseVec) -> Result<Vec<Term>> {
        let n = self.bc.n();
        let mut out = Vec::new();
        for (i, pt) in parts.iter().enumerate() {
            let spot = self.spot(pt.p, pt.q)?;
            let lo = offsets[i];
            let sub: SparseVec = v.range(lo..lo + spot.dim()).map(|(j, x)| (j - lo, x.clone())).collect();
            for (word, c) in spot.cochain(&sub).iter() {
                out.push(Term { copy: pt.k, word: word.render(n), coeff: fmt_rat(c) });
            }
        }
        Ok(out)
    }

    /// Coordinates of a cochain placed in one part of degree `m`.
    pub fn embed(&mut self, m: usize, k: usize, c: &Cochain) -> Result<SparseVec> {
        let (parts, offsets, _) = self.layout(m)?;
        let mut out = SparseVec::new();
        for (x, coeff) in c.iter() {
            let q = x.w.0.len();
            let p = x.f.len();
            let i = parts
                .iter()
                .position(|pt| *pt == Part { k, p, q })
                .ok_or_else(|| Error::InfeasibleCut(format!("no part ({k},{p},{q}) in degree {m}")))?;
            let spot = self.spot(p, q)?;
            let single: Cochain = Cochain::term(x.clone(), coeff.clone());
            for (j, y) in spot.coords(&single)? {
                *out.entry(offsets[i] + j).or_insert_with(|| crate::linalg::rat(0)) += y;
            }
        }
        out.retain(|_, x| !num_traits::Zero::is_zero(x));
        Ok(out)
    }

    /// Whether a cochain in degree `m` is a cocycle that is not a coboundary.
    pub fn certify(&mut self, m: usize, k: usize, c: &Cochain) -> Result<(bool, bool)> {
        let v = self.embed(m, k, c)?;
        let cocycle = self.differential(m)?.apply(&v).is_empty();
        let dim = self.layout(m)?.2;
        let mut image = Subspace::new();
        for col in self.incoming(m, dim)?.columns() {
            image.insert(col);
        }
        Ok((cocycle, !image.contains(&v)))
    }

    /// `D_{m+1} D_m = 0`.
    pub fn square_zero(&mut self, m: usize) -> Result<bool> {
        let a = self.differential(m)?;
        let b = self.differential(m + 1)?;
        Ok(b.mul(&a)?.is_zero())
    }
}

fn table(bc: &Bicomplex, w_range: impl Iterator<Item = usize>, degrees: &[usize], shape: Shape, w_max: usize) -> Result<Table> {
    let ws: Vec<usize> = w_range.collect();
    let per_weight: Vec<Result<Vec<Block>>> = crate::par::map(&ws, |&w| {
        let mut wb = WeightBlock::new(bc, w, shape);
        degrees.iter().map(|&m| wb.cohomology(m)).collect()
    });
    let mut blocks = Vec::new();
    for r in per_weight {
        blocks.extend(r?.into_iter().filter(|b| b.dim > 0));
    }
    blocks.sort_by_key(|b| (b.degree, b.weight));
    Ok(Table { n: bc.n(), kind: bc.kind(), jet_cut: bc.faa().order(), w_max, blocks })
}

fn check_order(bc: &Bicomplex, w_max: usize) -> Result<()> {
    if w_max + 1 >= bc.faa().order() {
        return Err(Error::InfeasibleCut(format!(
            "weight cut {w_max} needs jet order at least {}, have {}",
            super::required_order(w_max),
            bc.faa().order()
        )));
    }
    Ok(())
}

/// Cyclic cohomology `HC^m` of the absolute total complex, weights `0..=w_max`.
pub fn cyclic_cohomology(bc: &Bicomplex, degrees: &[usize], w_max: usize) -> Result<Table> {
    check_order(bc, w_max)?;
    table(bc, 0..=w_max, degrees, Shape::Cyclic, w_max)
}

/// Hochschild cohomology: `β`-cohomology summed along total degree.
pub fn hochschild_cohomology(bc: &Bicomplex, degrees: &[usize], w_max: usize) -> Result<Table> {
    check_order(bc, w_max)?;
    table(bc, 0..=w_max, degrees, Shape::Hochschild, w_max)
}

/// Coalgebra cohomology of `F` with trivial coefficients (the row `q = 0`).
pub fn row_cohomology(bc: &Bicomplex, degrees: &[usize], w_max: usize) -> Result<Table> {
    check_order(bc, w_max)?;
    table(bc, 0..=w_max, degrees, Shape::Row, w_max)
}

/// Periodic cohomology of the relative complex; degrees are parities. Only
/// weight `n` carries nonzero coinvariants, but all weights up to `w_max`
/// are computed.
pub fn periodic_cohomology(bc: &Bicomplex, w_max: usize) -> Result<Table> {
    check_order(bc, w_max)?;
    table(bc, 0..=w_max, &[0, 1], Shape::Periodic, w_max)
}

/// `β² = 0`, `∂² = 0`, `β∂ = ∂β` and `D² = 0` on every spot of weight
/// `≤ w_max` with `p ≤ p_max`.
pub fn check_differentials(bc: &Bicomplex, p_max: usize, w_max: usize) -> Result<Vec<Check>> {
    check_order(bc, w_max)?;
    let qm = bc.lie_basis().len();
    let ws: Vec<usize> = (0..=w_max).collect();
    let outcomes: Vec<Result<[Vec<Option<String>>; 4]>> = crate::par::map(&ws, |&w| {
        let mut wb = WeightBlock::new(bc, w, Shape::Cyclic);
        let mut res: [Vec<Option<String>>; 4] = Default::default();
        let fail = |ok: bool, what: String| if ok { None } else { Some(what) };
        for q in 0..=qm {
            for p in 0..=p_max {
                let b1 = wb.beta(p, q)?;
                let b2 = wb.beta(p + 1, q)?;
                res[0].push(fail(b2.mul(&b1)?.is_zero(), format!("β² at ({p},{q}) weight {w}")));
                if q >= 2 {
                    let d1 = wb.del(p, q)?;
                    let d2 = wb.del(p, q - 1)?;
                    res[1].push(fail(d2.mul(&d1)?.is_zero(), format!("∂² at ({p},{q}) weight {w}")));
                }
                if q >= 1 {
                    let lhs = wb.del(p + 1, q)?.mul(&*wb.beta(p, q)?)?;
                    let rhs = wb.beta(p, q - 1)?.mul(&*wb.del(p, q)?)?;
                    res[2].push(fail(lhs == rhs, format!("β∂ = ∂β at ({p},{q}) weight {w}")));
                }
            }
        }
        let mut pm = WeightBlock::new(bc, w, Shape::Cyclic);
        for m in 0..=p_max {
            res[3].push(fail(pm.square_zero(m)?, format!("D² in degree {m} weight {w}")));
        }
        Ok(res)
    });
    let mut acc: [Vec<Option<String>>; 4] = Default::default();
    for o in outcomes {
        for (a, v) in acc.iter_mut().zip(o?) {
            a.extend(v);
        }
    }
    let names = ["beta squared", "del squared", "beta del commute", "total squared"];
    Ok(names.iter().zip(acc).map(|(n, v)| Check::collect(*n, v)).collect())
}

/// For every `β`-cocycle `f̃ ∈ F̄^{⊗p}` of weight `w ≥ 1` with `p ≤ p_max`:
/// `β(X ▷ f̃) = (-1)^p w · f̃ ⊗ η₁`, so `f̃ ⊗ η₁` is a coboundary.
pub fn check_homotopy(bc: &Bicomplex, p_max: usize, w_max: usize) -> Result<Check> {
    if bc.n() != 1 || bc.kind() != Kind::Absolute {
        return Err(Error::InvalidConfig("the homotopy check is for n = 1, absolute".into()));
    }
    check_order(bc, w_max + 1)?;
    let eta1 = bc.faa().monomials(1).into_iter().next().expect("η₁");
    let x = crate::symbolic::GSym::X(0);
    let mut outcomes = Vec::new();
    for w in 1..=w_max {
        let mut wb = WeightBlock::new(bc, w, Shape::Row);
        for p in 1..=p_max {
            let spot = wb.spot(p, 0)?;
            let (_, kernel) = rank_and_kernel(&*wb.beta(p, 0)?);
            for v in kernel {
                let f = spot.cochain(&v);
                let mut moved = Cochain::zero();
                let mut expected = Cochain::zero();
                for (word, c) in f.iter() {
                    for (g, c1) in bc.act(x, &word.f)?.iter() {
                        moved.add_term(SpotWord { f: g.clone(), w: word.w.clone() }, c * c1);
                    }
                    let mut g = word.f.clone();
                    g.push(eta1.clone());
                    expected.add_term(SpotWord { f: g, w: word.w.clone() }, c * crate::linalg::rat(if p % 2 == 0 { w as i64 } else { -(w as i64) }));
                }
                let got = bc.beta_chain(&moved)?;
                let mut diff = got.clone();
                diff.sub(&expected);
                outcomes.push(if diff.is_zero() { None } else { Some(format!("{f:?} at weight {w}: got {got:?}, expected {expected:?}")) });
            }
        }
    }
    Ok(Check::collect("homotopy", outcomes))
}

/// In the relative complex, `β` and `∂` carry coinvariant relations into
/// coinvariant relations at every spot of weight `w`.
pub fn check_descends(bc: &Bicomplex, w: usize) -> Result<Vec<Check>> {
    if bc.kind() != Kind::Relative {
        return Err(Error::InvalidConfig("descent is a relative check".into()));
    }
    check_order(bc, w)?;
    let qm = bc.lie_basis().len();
    let mut beta = Vec::new();
    let mut del = Vec::new();
    for q in 0..=qm {
        for p in 0..=w {
            let from = bc.spot(p, q, w)?;
            let to = bc.spot(p + 1, q, w)?;
            let ok = bc.descends(&from, &to, |x| bc.beta(x))?;
            beta.push(if ok { None } else { Some(format!("β at ({p},{q})")) });
            if q > 0 {
                let to = bc.spot(p, q - 1, w)?;
                let ok = bc.descends(&from, &to, |x| bc.del(x))?;
                del.push(if ok { None } else { Some(format!("∂ at ({p},{q})")) });
            }
        }
    }
    Ok(vec![Check::collect("beta descends", beta), Check::collect("del descends", del)])
}
