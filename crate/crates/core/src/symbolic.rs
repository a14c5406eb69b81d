//! Shared symbolic data: linear combinations, generator symbols, PBW monomials,
//! wedge words and tensor words, with their canonical text forms.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use num_traits::{One, Zero};
use parking_lot::RwLock;

use crate::linalg::{rat, Rational};

/// Finite formal sum with exact coefficients, keyed by a totally ordered basis.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LinComb<K: Ord>(BTreeMap<K, Rational>);

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        LinComb(BTreeMap::new())
    }

    pub fn basis(k: K) -> Self {
        Self::term(k, Rational::one())
    }

    pub fn term(k: K, c: Rational) -> Self {
        let mut s = Self::zero();
        s.add_term(k, c);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, k: &K) -> Rational {
        self.0.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.0.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.0.keys()
    }

    pub fn into_map(self) -> BTreeMap<K, Rational> {
        self.0
    }

    pub fn add_term(&mut self, k: K, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (k, x) in &other.0 {
            self.add_term(k.clone(), x * c);
        }
    }

    pub fn add(&mut self, other: &Self) {
        for (k, x) in &other.0 {
            self.add_term(k.clone(), x.clone());
        }
    }

    pub fn sub(&mut self, other: &Self) {
        for (k, x) in &other.0 {
            self.add_term(k.clone(), -x.clone());
        }
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinComb(self.0.iter().map(|(k, x)| (k.clone(), x * c)).collect())
    }

    pub fn neg(&self) -> Self {
        LinComb(self.0.iter().map(|(k, x)| (k.clone(), -x.clone())).collect())
    }

    /// Applies a linear map given on basis elements.
    pub fn map_linear<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> LinComb<L>) -> LinComb<L> {
        let mut out = LinComb::zero();
        for (k, c) in &self.0 {
            out.add_scaled(&f(k), c);
        }
        out
    }

    pub fn map_keys<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> L) -> LinComb<L> {
        let mut out = LinComb::zero();
        for (k, c) in &self.0 {
            out.add_term(f(k), c.clone());
        }
        out
    }

    pub fn filter(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        LinComb(self.0.iter().filter(|(k, _)| keep(k)).map(|(k, x)| (k.clone(), x.clone())).collect())
    }
}

impl<K: Ord + Clone> FromIterator<(K, Rational)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, Rational)>>(it: I) -> Self {
        let mut s = Self::zero();
        for (k, c) in it {
            s.add_term(k, c);
        }
        s
    }
}

impl<K: Ord + fmt::Display> fmt::Display for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{k}")?;
        }
        Ok(())
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{k:?}")?;
        }
        Ok(())
    }
}

/// Label `s^up_{low}` shared by the δ generators, the η coordinates and the
/// jet coordinates α. Indices are zero based. For δ and η the first two lower
/// entries form the symmetric pair and the rest the trailing derivative
/// indices; a label is normal when `low` is sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sym {
    pub up: u8,
    pub low: Vec<u8>,
}

impl Sym {
    /// Canonical arrangement: sorts the pair and the trailing indices.
    pub fn arrangement(up: u8, j: u8, k: u8, trail: &[u8]) -> Sym {
        let mut low = vec![j.min(k), j.max(k)];
        let mut t = trail.to_vec();
        t.sort_unstable();
        low.extend(t);
        Sym { up, low }
    }

    pub fn normal(up: u8, mut low: Vec<u8>) -> Sym {
        low.sort_unstable();
        Sym { up, low }
    }

    pub fn is_normal(&self) -> bool {
        self.low.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn weight(&self) -> i64 {
        self.low.len() as i64 - 1
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l: Vec<String> = self.low.iter().map(|x| (x + 1).to_string()).collect();
        write!(f, "d[{};{},{}|{}]", self.up + 1, l[0], l[1], l[2..].join(","))
    }
}

impl fmt::Debug for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Basis symbols of the Lie algebra spanned by `X_k` and `Y_i^j`, in the
/// global order `X_1 < .. < X_n < Y` (the `Y_i^j` lexicographic in `(i, j)`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum GSym {
    X(u8),
    Y(u8, u8),
}

impl GSym {
    pub fn weight(&self) -> i64 {
        match self {
            GSym::X(_) => 1,
            GSym::Y(..) => 0,
        }
    }

    pub fn basis(n: usize) -> Vec<GSym> {
        let mut v: Vec<GSym> = (0..n as u8).map(GSym::X).collect();
        for i in 0..n as u8 {
            for j in 0..n as u8 {
                v.push(GSym::Y(i, j));
            }
        }
        v
    }

    pub fn to_gen(self) -> Gen {
        match self {
            GSym::X(k) => Gen::X(k),
            GSym::Y(i, j) => Gen::Y(i, j),
        }
    }

    pub fn of_gen(g: &Gen) -> Option<GSym> {
        match g {
            Gen::X(k) => Some(GSym::X(*k)),
            Gen::Y(i, j) => Some(GSym::Y(*i, *j)),
            Gen::D(_) => None,
        }
    }

    pub fn render(&self, n: usize) -> String {
        match (self, n) {
            (GSym::X(_), 1) => "X".into(),
            (GSym::Y(..), 1) => "Y".into(),
            (GSym::X(k), _) => format!("X{}", k + 1),
            (GSym::Y(i, j), _) => format!("Y{}{}", i + 1, j + 1),
        }
    }
}

/// Generators of `H_n` in PBW order: δ's, then X's, then Y's.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Gen {
    D(Sym),
    X(u8),
    Y(u8, u8),
}

impl Gen {
    pub fn weight(&self) -> i64 {
        match self {
            Gen::D(s) => s.weight(),
            Gen::X(_) => 1,
            Gen::Y(..) => 0,
        }
    }

    pub fn render(&self, n: usize) -> String {
        match self {
            Gen::D(s) => s.to_string(),
            Gen::X(k) => GSym::X(*k).render(n),
            Gen::Y(i, j) => GSym::Y(*i, *j).render(n),
        }
    }
}

impl From<GSym> for Gen {
    fn from(g: GSym) -> Gen {
        match g {
            GSym::X(k) => Gen::X(k),
            GSym::Y(i, j) => Gen::Y(i, j),
        }
    }
}

/// PBW monomial `δ_K X^a Y^b`. The δ part is a sorted multiset of normal
/// symbols, `x` has `n` exponents and `y` has `n*n` exponents indexed `i*n+j`.
/// Elements of the commutative algebra of η coordinates use the same type with
/// `x` and `y` zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    pub d: Vec<Sym>,
    pub x: Vec<u16>,
    pub y: Vec<u16>,
}

impl Mono {
    pub fn one(n: usize) -> Mono {
        Mono { d: Vec::new(), x: vec![0; n], y: vec![0; n * n] }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn is_one(&self) -> bool {
        self.d.is_empty() && self.x.iter().all(|&e| e == 0) && self.y.iter().all(|&e| e == 0)
    }

    pub fn is_pure_d(&self) -> bool {
        self.x.iter().all(|&e| e == 0) && self.y.iter().all(|&e| e == 0)
    }

    pub fn has_d(&self) -> bool {
        !self.d.is_empty()
    }

    pub fn from_gen(n: usize, g: &Gen) -> Mono {
        let mut m = Mono::one(n);
        m.push_unchecked(g);
        m
    }

    pub fn from_syms(n: usize, mut d: Vec<Sym>) -> Mono {
        d.sort();
        Mono { d, x: vec![0; n], y: vec![0; n * n] }
    }

    pub fn weight(&self) -> i64 {
        self.d.iter().map(Sym::weight).sum::<i64>() + self.x.iter().map(|&e| e as i64).sum::<i64>()
    }

    pub fn degree(&self) -> usize {
        self.d.len() + self.x.iter().map(|&e| e as usize).sum::<usize>() + self.y.iter().map(|&e| e as usize).sum::<usize>()
    }

    /// Adds a generator without reordering checks; δ's are kept sorted.
    pub fn push_unchecked(&mut self, g: &Gen) {
        let n = self.n();
        match g {
            Gen::D(s) => {
                let pos = self.d.partition_point(|t| t <= s);
                self.d.insert(pos, s.clone());
            }
            Gen::X(k) => self.x[*k as usize] += 1,
            Gen::Y(i, j) => self.y[*i as usize * n + *j as usize] += 1,
        }
    }

    /// The generator sequence of this monomial in PBW order.
    pub fn gens(&self) -> Vec<Gen> {
        let n = self.n();
        let mut v: Vec<Gen> = self.d.iter().cloned().map(Gen::D).collect();
        for (k, &e) in self.x.iter().enumerate() {
            for _ in 0..e {
                v.push(Gen::X(k as u8));
            }
        }
        for (ij, &e) in self.y.iter().enumerate() {
            for _ in 0..e {
                v.push(Gen::Y((ij / n) as u8, (ij % n) as u8));
            }
        }
        v
    }

    /// The last generator in PBW order together with the remaining prefix.
    pub fn split_last(&self) -> Option<(Mono, Gen)> {
        let n = self.n();
        let mut m = self.clone();
        if let Some(ij) = m.y.iter().rposition(|&e| e > 0) {
            m.y[ij] -= 1;
            return Some((m, Gen::Y((ij / n) as u8, (ij % n) as u8)));
        }
        if let Some(k) = m.x.iter().rposition(|&e| e > 0) {
            m.x[k] -= 1;
            return Some((m, Gen::X(k as u8)));
        }
        let s = m.d.pop()?;
        Some((m, Gen::D(s)))
    }

    /// The `Y`-free, `X`-free part and the remaining `U(g)` part.
    pub fn split_du(&self) -> (Mono, Mono) {
        let n = self.n();
        let f = Mono { d: self.d.clone(), x: vec![0; n], y: vec![0; n * n] };
        let u = Mono { d: Vec::new(), x: self.x.clone(), y: self.y.clone() };
        (f, u)
    }

    pub fn join_du(f: &Mono, u: &Mono) -> Mono {
        Mono { d: f.d.clone(), x: u.x.clone(), y: u.y.clone() }
    }

    /// Product in the commutative δ (or η) part; both factors must be pure.
    pub fn mul_d(&self, other: &Mono) -> Mono {
        let mut d = self.d.clone();
        d.extend(other.d.iter().cloned());
        d.sort();
        Mono { d, x: self.x.clone(), y: self.y.clone() }
    }

    pub fn render(&self) -> String {
        let n = self.n();
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.d.len() {
            let mut j = i;
            while j < self.d.len() && self.d[j] == self.d[i] {
                j += 1;
            }
            parts.push(pow(self.d[i].to_string(), j - i));
            i = j;
        }
        for (k, &e) in self.x.iter().enumerate() {
            if e > 0 {
                parts.push(pow(GSym::X(k as u8).render(n), e as usize));
            }
        }
        for (ij, &e) in self.y.iter().enumerate() {
            if e > 0 {
                parts.push(pow(GSym::Y((ij / n) as u8, (ij % n) as u8).render(n), e as usize));
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("·")
        }
    }
}

fn pow(s: String, e: usize) -> String {
    if e == 1 {
        s
    } else {
        format!("{s}^{e}")
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Strictly increasing list of Lie algebra symbols, read as their wedge.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct WedgeWord(pub Vec<GSym>);

impl WedgeWord {
    pub fn weight(&self) -> i64 {
        self.0.iter().map(GSym::weight).sum()
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn render(&self, n: usize) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0.iter().map(|g| g.render(n)).collect::<Vec<_>>().join("∧")
    }

    /// All wedge words of degree `q` over `basis`.
    pub fn all(basis: &[GSym], q: usize) -> Vec<WedgeWord> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(b: &[GSym], q: usize, start: usize, cur: &mut Vec<GSym>, out: &mut Vec<WedgeWord>) {
            if cur.len() == q {
                out.push(WedgeWord(cur.clone()));
                return;
            }
            for i in start..b.len() {
                cur.push(b[i]);
                rec(b, q, i + 1, cur, out);
                cur.pop();
            }
        }
        let mut b = basis.to_vec();
        b.sort();
        rec(&b, q, 0, &mut cur, &mut out);
        out
    }
}

/// Sorts a raw wedge product, returning the permutation sign, or `None` when a
/// symbol repeats.
pub fn wedge_normalize(raw: &[GSym]) -> Option<(i64, WedgeWord)> {
    let mut v = raw.to_vec();
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, WedgeWord(v)))
}

/// Wedge as a linear combination (zero on repeats).
pub fn wedge(raw: &[GSym]) -> LinComb<WedgeWord> {
    match wedge_normalize(raw) {
        Some((s, w)) => LinComb::term(w, rat(s)),
        None => LinComb::zero(),
    }
}

/// `C_δ ⊗ F̄^{⊗p} ⊗ Λ^q`: a tensor of `p` non-unit η-monomials followed by a
/// wedge word; the one dimensional `C_δ` factor is implicit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SpotWord {
    pub f: Vec<Mono>,
    pub w: WedgeWord,
}

impl SpotWord {
    pub fn weight(&self) -> i64 {
        self.f.iter().map(Mono::weight).sum::<i64>() + self.w.weight()
    }

    pub fn render(&self, n: usize) -> String {
        let mut s = String::from("1");
        for m in &self.f {
            s.push('⊗');
            s.push_str(&m.render());
        }
        s.push('⊗');
        s.push_str(&self.w.render(n));
        s
    }
}

/// Tensor of `H_n` monomials, the basis of `H_n^{⊗m}`.
pub type HWord = Vec<Mono>;

pub fn render_hword(w: &HWord) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(Mono::render).collect::<Vec<_>>().join("⊗")
}

/// Tensor product of linear combinations of tensor words.
pub fn tensor<A: Ord + Clone, B: Ord + Clone>(a: &LinComb<A>, b: &LinComb<B>) -> LinComb<(A, B)> {
    let mut out = LinComb::zero();
    for (x, c) in a.iter() {
        for (y, d) in b.iter() {
            out.add_term((x.clone(), y.clone()), c * d);
        }
    }
    out
}

/// Concatenating tensor product of words.
pub fn tensor_words<T: Ord + Clone>(a: &LinComb<Vec<T>>, b: &LinComb<Vec<T>>) -> LinComb<Vec<T>> {
    let mut out = LinComb::zero();
    for (x, c) in a.iter() {
        for (y, d) in b.iter() {
            let mut w = x.clone();
            w.extend(y.iter().cloned());
            out.add_term(w, c * d);
        }
    }
    out
}

/// Thread-safe memo table. Values are computed outside the lock, so
/// recursive lookups never deadlock.
pub struct Memo<K, V> {
    table: RwLock<HashMap<K, Arc<V>>>,
}

impl<K: Eq + Hash + Clone, V> Default for Memo<K, V> {
    fn default() -> Self {
        Memo { table: RwLock::new(HashMap::new()) }
    }
}

impl<K: Eq + Hash + Clone, V> Memo<K, V> {
    pub fn get_or(&self, k: &K, f: impl FnOnce() -> V) -> Arc<V> {
        if let Some(v) = self.table.read().get(k) {
            return v.clone();
        }
        let v = Arc::new(f());
        self.table.write().entry(k.clone()).or_insert(v).clone()
    }

    pub fn len(&self) -> usize {
        self.table.read().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_signs() {
        let (s, w) = wedge_normalize(&[GSym::Y(0, 0), GSym::X(0)]).unwrap();
        assert_eq!(s, -1);
        assert_eq!(w, WedgeWord(vec![GSym::X(0), GSym::Y(0, 0)]));
        assert!(wedge_normalize(&[GSym::X(0), GSym::X(0)]).is_none());
    }

    #[test]
    fn generator_order() {
        assert!(GSym::X(0) < GSym::X(1));
        assert!(GSym::X(1) < GSym::Y(0, 0));
        assert!(Gen::D(Sym::normal(1, vec![1, 1, 1])) < Gen::X(0));
    }

    #[test]
    fn rendering() {
        let mut m = Mono::one(1);
        m.push_unchecked(&Gen::D(Sym::normal(0, vec![0, 0])));
        m.push_unchecked(&Gen::X(0));
        m.push_unchecked(&Gen::X(0));
        m.push_unchecked(&Gen::Y(0, 0));
        assert_eq!(m.render(), "d[1;1,1|]·X^2·Y");
        assert_eq!(Sym::arrangement(0, 1, 0, &[1, 0]).to_string(), "d[1;1,2|1,2]");
    }

    #[test]
    fn spot_weight() {
        let e1 = Mono::from_syms(1, vec![Sym::normal(0, vec![0, 0])]);
        let e2 = Mono::from_syms(1, vec![Sym::normal(0, vec![0, 0, 0])]);
        let w = SpotWord { f: vec![e1, e2], w: WedgeWord(vec![GSym::X(0), GSym::Y(0, 0)]) };
        assert_eq!(w.weight(), 4);
        assert_eq!(w.render(1), "1⊗d[1;1,1|]⊗d[1;1,1|1]⊗X∧Y");
    }
}
