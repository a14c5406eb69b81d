//! Exact sparse linear algebra over the rationals.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type SparseVec = BTreeMap<usize, Rational>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Renders as `p/q`, or `p` when the denominator is one.
pub fn fmt_rat(q: &Rational) -> String {
    q.to_string()
}

pub fn parse_rat(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("not a rational: {s}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

/// `acc += c * v`, dropping entries that cancel.
pub fn axpy(acc: &mut SparseVec, c: &Rational, v: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (&k, x) in v {
        let e = acc.entry(k).or_insert_with(Rational::zero);
        *e += c * x;
        if e.is_zero() {
            acc.remove(&k);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![SparseVec::new(); rows] }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, rat(x));
            }
        }
        m
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (&i, x) in col {
                assert!(i < rows, "column entry out of range");
                if !x.is_zero() {
                    m.data[i].insert(j, x.clone());
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.data[i].get(&j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        assert!(i < self.rows && j < self.cols);
        if x.is_zero() {
            self.data[i].remove(&j);
        } else {
            self.data[i].insert(j, x);
        }
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, r) in self.data.iter().enumerate() {
            let mut s = Rational::zero();
            for (j, x) in r {
                if let Some(y) = v.get(j) {
                    s += x * y;
                }
            }
            if !s.is_zero() {
                out.insert(i, s);
            }
        }
        out
    }

    pub fn mul(&self, rhs: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = SparseMatrix::zeros(self.rows, rhs.cols);
        for (i, r) in self.data.iter().enumerate() {
            let mut acc = SparseVec::new();
            for (k, x) in r {
                axpy(&mut acc, x, &rhs.data[*k]);
            }
            out.data[i] = acc;
        }
        Ok(out)
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        let mut cols = vec![SparseVec::new(); self.cols];
        for (i, r) in self.data.iter().enumerate() {
            for (&j, x) in r {
                cols[j].insert(i, x.clone());
            }
        }
        cols
    }
}

/// Reduced row echelon form with leftmost-lowest pivoting: the next pivot is
/// the leftmost column still carrying a nonzero entry, taken from the lowest
/// indexed row that has it. Returns `(pivot column, normalized row)` pairs.
fn rref(mut rows: Vec<SparseVec>) -> Vec<(usize, SparseVec)> {
    rows.retain(|r| !r.is_empty());
    let mut pivots: Vec<(usize, SparseVec)> = Vec::new();
    while !rows.is_empty() {
        let (pos, col) = rows
            .iter()
            .enumerate()
            .map(|(i, r)| (i, *r.keys().next().unwrap()))
            .min_by_key(|&(i, c)| (c, i))
            .unwrap();
        let mut p = rows.remove(pos);
        let inv = p[&col].recip();
        for x in p.values_mut() {
            *x *= &inv;
        }
        for r in rows.iter_mut() {
            if let Some(c) = r.get(&col).cloned() {
                axpy(r, &-c, &p);
            }
        }
        rows.retain(|r| !r.is_empty());
        for (_, q) in pivots.iter_mut() {
            if let Some(c) = q.get(&col).cloned() {
                axpy(q, &-c, &p);
            }
        }
        pivots.push((col, p));
    }
    pivots
}

/// Rank and an echelon-normal kernel basis: one vector per free column `f`,
/// with a one in slot `f` and zeros in every other free slot.
pub fn rank_and_kernel(m: &SparseMatrix) -> (usize, Vec<SparseVec>) {
    let piv = rref(m.data.clone());
    let pivot_cols: Vec<usize> = piv.iter().map(|(c, _)| *c).collect();
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivot_cols {
        is_pivot[c] = true;
    }
    let mut kernel = Vec::new();
    for f in (0..m.cols).filter(|&f| !is_pivot[f]) {
        let mut v = SparseVec::new();
        v.insert(f, Rational::one());
        for (c, row) in &piv {
            if let Some(x) = row.get(&f) {
                v.insert(*c, -x.clone());
            }
        }
        kernel.push(v);
    }
    (piv.len(), kernel)
}

pub fn rank(m: &SparseMatrix) -> usize {
    let mut s = Subspace::new();
    for r in &m.data {
        s.insert(r.clone());
    }
    s.dim()
}

/// `dim ker(d_out) - rank(d_in)`, after checking that `d_out * d_in = 0`.
pub fn cohomology_dim(d_in: &SparseMatrix, d_out: &SparseMatrix) -> Result<usize> {
    if d_in.rows != d_out.cols {
        return Err(Error::ShapeMismatch(format!(
            "d_in lands in dimension {} but d_out starts from {}",
            d_in.rows, d_out.cols
        )));
    }
    if !d_out.mul(d_in)?.is_zero() {
        return Err(Error::CompositionNonzero);
    }
    let kernel = d_out.cols - rank(d_out);
    Ok(kernel - rank(d_in))
}

/// Coefficients expressing `v` in terms of `span`, if `v` lies in it.
pub fn membership(v: &SparseVec, span: &[SparseVec]) -> Option<Vec<Rational>> {
    let mut s = Subspace::new();
    for (i, w) in span.iter().enumerate() {
        s.insert_tracked(w.clone(), i);
    }
    let (res, combo) = s.reduce_tracked(v);
    if !res.is_empty() {
        return None;
    }
    let mut out = vec![Rational::zero(); span.len()];
    for (i, x) in combo {
        out[i] = x;
    }
    Some(out)
}

/// Incrementally built echelon basis of a subspace.
#[derive(Clone, Debug, Default)]
pub struct Subspace {
    rows: BTreeMap<usize, (SparseVec, SparseVec)>,
}

impl Subspace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Residual of `v` after clearing every pivot coordinate.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.reduce_impl(v, false).0
    }

    fn reduce_tracked(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        self.reduce_impl(v, true)
    }

    fn reduce_impl(&self, v: &SparseVec, track: bool) -> (SparseVec, SparseVec) {
        let mut v = v.clone();
        let mut combo = SparseVec::new();
        let mut cursor = 0usize;
        loop {
            let next = v.range(cursor..).find(|(k, _)| self.rows.contains_key(k)).map(|(k, x)| (*k, x.clone()));
            let Some((k, c)) = next else { break };
            let (row, rc) = &self.rows[&k];
            axpy(&mut v, &-c.clone(), row);
            if track {
                axpy(&mut combo, &c, rc);
            }
            cursor = k + 1;
        }
        (v, combo)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        self.insert_with(v, SparseVec::new())
    }

    fn insert_tracked(&mut self, v: SparseVec, label: usize) -> bool {
        let mut c = SparseVec::new();
        c.insert(label, Rational::one());
        self.insert_with(v, c)
    }

    fn insert_with(&mut self, v: SparseVec, combo: SparseVec) -> bool {
        let track = !combo.is_empty();
        let (mut r, red) = self.reduce_impl(&v, track);
        if r.is_empty() {
            return false;
        }
        let mut combo = combo;
        axpy(&mut combo, &-Rational::one(), &red);
        let (&lead, x) = r.iter().next().unwrap();
        let inv = x.recip();
        for y in r.values_mut() {
            *y *= &inv;
        }
        for y in combo.values_mut() {
            *y *= &inv;
        }
        self.rows.insert(lead, (r, combo));
        true
    }
}

/// The quotient of a coordinate space by a subspace, with the non-pivot
/// coordinates as quotient basis.
#[derive(Clone, Debug)]
pub struct Quotient {
    sub: Subspace,
    basis: Vec<usize>,
    index: BTreeMap<usize, usize>,
}

impl Quotient {
    pub fn new(ambient_dim: usize, relations: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut sub = Subspace::new();
        for r in relations {
            sub.insert(r);
        }
        let basis: Vec<usize> = (0..ambient_dim).filter(|i| !sub.rows.contains_key(i)).collect();
        let index = basis.iter().enumerate().map(|(q, &i)| (i, q)).collect();
        Quotient { sub, basis, index }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Ambient coordinates chosen as representatives of the quotient basis.
    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn project(&self, v: &SparseVec) -> SparseVec {
        self.sub.reduce(v).into_iter().map(|(k, x)| (self.index[&k], x)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(pairs: &[(usize, i64)]) -> SparseVec {
        pairs.iter().map(|&(k, x)| (k, rat(x))).collect()
    }

    #[test]
    fn rank_one_kernel() {
        let m = SparseMatrix::from_dense(&[vec![1, 2], vec![2, 4]]);
        let (r, k) = rank_and_kernel(&m);
        assert_eq!(r, 1);
        assert_eq!(k, vec![sv(&[(0, -2), (1, 1)])]);
    }

    #[test]
    fn empty_rows_give_standard_basis() {
        let m = SparseMatrix::zeros(0, 3);
        let (r, k) = rank_and_kernel(&m);
        assert_eq!(r, 0);
        assert_eq!(k, vec![sv(&[(0, 1)]), sv(&[(1, 1)]), sv(&[(2, 1)])]);
    }

    #[test]
    fn composition_must_vanish() {
        let a = SparseMatrix::from_dense(&[vec![1], vec![0]]);
        let b = SparseMatrix::from_dense(&[vec![1, 0]]);
        assert_eq!(cohomology_dim(&a, &b), Err(Error::CompositionNonzero));
        let b = SparseMatrix::from_dense(&[vec![0, 1]]);
        assert_eq!(cohomology_dim(&a, &b), Ok(0));
        let c = SparseMatrix::from_dense(&[vec![0, 0, 1]]);
        assert!(matches!(cohomology_dim(&a, &c), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn membership_coefficients() {
        let span = vec![sv(&[(0, 1), (1, 1)]), sv(&[(1, 1), (2, 1)])];
        let c = membership(&sv(&[(0, 1), (1, 2), (2, 1)]), &span).unwrap();
        assert_eq!(c, vec![rat(1), rat(1)]);
        assert!(membership(&sv(&[(0, 1)]), &span).is_none());
    }

    #[test]
    fn quotient_projection() {
        let q = Quotient::new(3, vec![sv(&[(0, 1), (1, -1)])]);
        assert_eq!(q.dim(), 2);
        assert_eq!(q.project(&sv(&[(0, 1)])), q.project(&sv(&[(1, 1)])));
    }

    #[test]
    fn rational_text() {
        assert_eq!(fmt_rat(&ratio(-6, 4)), "-3/2");
        assert_eq!(fmt_rat(&rat(5)), "5");
        assert_eq!(parse_rat("-3/2").unwrap(), ratio(-3, 2));
        assert!(parse_rat("1/0").is_err());
    }
}
