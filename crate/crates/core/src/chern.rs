//! The cocycles `C_{p,λ}` spanning the relative periodic cohomology of `H_n`
//! modulo `gl_n`, and the invariant cochains `θ(σ, π)`.

use serde::Serialize;

use crate::cohomology::{
    permutations, perm_sign, Bicomplex, Cochain, Kind, Shape, WeightBlock,
};
use crate::error::{Error, Result};
use crate::linalg::{rat, Rational, Subspace};
use crate::report::Check;
use crate::symbolic::{wedge, GSym, Mono, SpotWord, Sym};

/// Partitions of `p` in decreasing lexicographic order.
pub fn partitions(p: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, cap: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(acc.clone());
            return;
        }
        for k in (1..=rest.min(cap)).rev() {
            acc.push(k);
            go(rest - k, k, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(p, p, &mut Vec::new(), &mut out);
    out
}

/// The permutation `(1 … λ₁)(λ₁+1 …)…` of `0..p`, zero based.
pub fn cycle_permutation(lambda: &[usize]) -> Vec<usize> {
    let mut sigma = Vec::new();
    let mut start = 0;
    for &len in lambda {
        for i in 0..len {
            sigma.push(start + (i + 1) % len);
        }
        start += len;
    }
    sigma
}

/// Cycle lengths of a permutation, decreasing.
pub fn cycle_type(sigma: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; sigma.len()];
    let mut out = Vec::new();
    for s in 0..sigma.len() {
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = sigma[i];
            len += 1;
        }
        if len > 0 {
            out.push(len);
        }
    }
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Compositions of `m` into `p` positive parts.
pub fn compositions(m: usize, p: usize) -> Vec<Vec<usize>> {
    if p == 0 {
        return if m == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..=m.saturating_sub(p - 1) {
        for mut rest in compositions(m - first, p - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn tuples(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out.into_iter().flat_map(|t| (0..n).map(move |j| [t.clone(), vec![j]].concat())).collect();
    }
    out
}

fn eta(n: usize, up: usize, a: usize, b: usize) -> Mono {
    Mono::from_syms(n, vec![Sym::normal(up as u8, vec![a as u8, b as u8])])
}

/// The raw sum `Σ_μ Σ_j (-1)^μ π(η^{j₁}_{μ(1), j_{σ(1)}} ⊗ … ⊗ η^{j_m}_{μ(m), j_{σ(m)}}) ⊗ X_{μ(m+1)} ∧ … ∧ X_{μ(n)}`
/// with `m = σ.len()`, where `π` multiplies consecutive groups of the sizes
/// given and `antisym` antisymmetrizes the `η` factors (weight `1/m!`).
fn invariant_sum(n: usize, sigma: &[usize], groups: &[usize], antisym: bool) -> Cochain {
    let m = sigma.len();
    let inner: Vec<(Vec<usize>, Rational)> = if antisym {
        let mut fact = rat(1);
        for k in 2..=m {
            fact *= rat(k as i64);
        }
        permutations(m).into_iter().map(|p| {
            let s = rat(perm_sign(&p)) / &fact;
            (p, s)
        }).collect()
    } else {
        vec![((0..m).collect(), rat(1))]
    };
    let mut out = Cochain::zero();
    for mu in permutations(n) {
        let smu = rat(perm_sign(&mu));
        let xs: Vec<GSym> = mu[m..].iter().map(|&k| GSym::X(k as u8)).collect();
        let xw = wedge(&xs);
        for j in tuples(n, m) {
            let factors: Vec<Mono> = (0..m).map(|k| eta(n, j[k], mu[k], j[sigma[k]])).collect();
            for (order, c) in &inner {
                let mut f = Vec::new();
                let mut it = order.iter();
                for &g in groups {
                    let mut prod = Mono::one(n);
                    for _ in 0..g {
                        prod = prod.mul_d(&factors[*it.next().unwrap()]);
                    }
                    f.push(prod);
                }
                for (w, c1) in xw.iter() {
                    out.add_term(SpotWord { f: f.clone(), w: w.clone() }, &smu * c * c1);
                }
            }
        }
    }
    out
}

/// `C_{p,σ}` for `σ ∈ S_p` (zero based), in bidegree `(p, n - p)`.
pub fn chern_cochain(n: usize, sigma: &[usize]) -> Cochain {
    invariant_sum(n, sigma, &vec![1; sigma.len()], true)
}

/// `θ(σ, π)` for `σ ∈ S_{n-q}` and `π` the grouping of the `η` factors into
/// consecutive blocks of the given sizes; lies in bidegree `(groups.len(), q)`.
pub fn theta(n: usize, sigma: &[usize], groups: &[usize]) -> Cochain {
    invariant_sum(n, sigma, groups, false)
}

/// All `θ(σ, π)` in bidegree `(p, q)`.
pub fn theta_family(n: usize, p: usize, q: usize) -> Vec<Cochain> {
    if q > n {
        return Vec::new();
    }
    let m = n - q;
    let mut out = Vec::new();
    for groups in compositions(m, p) {
        for sigma in permutations(m) {
            out.push(theta(n, &sigma, &groups));
        }
    }
    out
}

pub fn label(p: usize, lambda: &[usize]) -> String {
    let parts: Vec<String> = lambda.iter().map(|k| k.to_string()).collect();
    format!("C[{p};{}]", parts.join(","))
}

/// For each `σ ∈ S_p`, `p ≤ p_max ≤ n`, `C_{p,σ} = ± C_{p,λ}` with `λ` the
/// canonical permutation of the cycle type of `σ`.
pub fn check_sign_invariance(n: usize, p_max: usize) -> Check {
    let mut outcomes = Vec::new();
    for p in 1..=p_max.min(n) {
        let reps: Vec<(Vec<usize>, Cochain)> =
            partitions(p).into_iter().map(|l| (l.clone(), chern_cochain(n, &cycle_permutation(&l)))).collect();
        for sigma in permutations(p) {
            let c = chern_cochain(n, &sigma);
            let ty = cycle_type(&sigma);
            let rep = &reps.iter().find(|(l, _)| *l == ty).expect("cycle type").1;
            let ok = c == *rep || c == rep.neg();
            outcomes.push(if ok { None } else { Some(format!("σ = {sigma:?} in S_{p}, n = {n}")) });
        }
    }
    Check::collect("sign invariance", outcomes)
}

#[derive(Clone, Debug, Serialize)]
pub struct ChernCertificate {
    pub label: String,
    pub p: usize,
    pub partition: Vec<usize>,
    pub beta_closed: bool,
    pub del_closed: bool,
    pub cocycle: bool,
    pub not_coboundary: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChernReport {
    pub n: usize,
    pub parity: usize,
    pub expected_count: usize,
    pub classes: Vec<ChernCertificate>,
    pub independent: bool,
    pub hp_same_parity: usize,
    pub hp_opposite_parity: usize,
    pub checks: Vec<Check>,
}

/// Builds every `C_{p,λ}`, `0 ≤ p ≤ n`, in the relative complex and
/// certifies them against the periodic cohomology at weight `n`.
pub fn verify_classes(bc: &Bicomplex) -> Result<ChernReport> {
    if bc.kind() != Kind::Relative {
        return Err(Error::InvalidConfig("Chern classes live in the relative complex".into()));
    }
    let n = bc.n();
    let eps = n % 2;
    let mut wb = WeightBlock::new(bc, n, Shape::Periodic);
    let mut classes = Vec::new();
    let mut vectors = Vec::new();
    for p in 0..=n {
        for lambda in partitions(p) {
            let c = chern_cochain(n, &cycle_permutation(&lambda));
            let beta = bc.beta_chain(&c)?;
            let del = bc.del_chain(&c)?;
            let beta_closed = wb.spot(p + 1, n - p)?.coords(&beta)?.is_empty();
            let del_closed = p == n || wb.spot(p, n - p - 1)?.coords(&del)?.is_empty();
            let (cocycle, not_coboundary) = wb.certify(eps, 0, &c)?;
            vectors.push(wb.embed(eps, 0, &c)?);
            classes.push(ChernCertificate {
                label: label(p, &lambda),
                p,
                partition: lambda,
                beta_closed,
                del_closed,
                cocycle,
                not_coboundary,
            });
        }
    }
    let dim = wb.layout_dim(eps)?;
    let mut span = Subspace::new();
    for col in wb.incoming(eps, dim)?.columns() {
        span.insert(col);
    }
    let base = span.dim();
    for v in &vectors {
        span.insert(v.clone());
    }
    let independent = span.dim() - base == vectors.len();
    let hp_same_parity = wb.cohomology(eps)?.dim;
    let hp_opposite_parity = wb.cohomology(1 - eps)?.dim;
    let expected_count: usize = (0..=n).map(|k| partitions(k).len()).sum();
    let checks = vec![
        Check::collect(
            "Chern cocycles",
            classes.iter().map(|c| {
                (!(c.beta_closed && c.del_closed && c.cocycle && c.not_coboundary)).then(|| c.label.clone())
            }),
        ),
        Check::single("Chern independence", independent, || "classes are dependent modulo coboundaries".into()),
        Check::single("Chern count", classes.len() == expected_count && hp_same_parity == expected_count, || {
            format!("{} classes, HP dimension {hp_same_parity}, expected {expected_count}", classes.len())
        }),
        Check::single("opposite parity vanishes", hp_opposite_parity == 0, || format!("dimension {hp_opposite_parity}")),
    ];
    Ok(ChernReport { n, parity: eps, expected_count, classes, independent, hp_same_parity, hp_opposite_parity, checks })
}

/// `θ(σ, π)` is `gl_n`-invariant, and at weight `n` the images of all
/// `θ(σ, π)` span the coinvariants of every spot `(p, q)`, `p ≤ p_max`,
/// `q ≤ q_max`.
pub fn check_theta(bc: &Bicomplex, p_max: usize, q_max: usize) -> Result<Vec<Check>> {
    if bc.kind() != Kind::Relative {
        return Err(Error::InvalidConfig("θ spans relative coinvariants".into()));
    }
    let n = bc.n();
    let mut inv = Vec::new();
    let mut span = Vec::new();
    for p in 0..=p_max {
        for q in 0..=q_max.min(n) {
            let spot = bc.spot(p, q, n)?;
            let family = theta_family(n, p, q);
            let mut s = Subspace::new();
            for t in &family {
                for y in bc.h_basis() {
                    let mut r = Cochain::zero();
                    for (x, c) in t.iter() {
                        r.add_scaled(&bc.coinvariant_relation(y, x)?, c);
                    }
                    inv.push((!r.is_zero()).then(|| format!("θ in ({p},{q}) moved by {}", y.render(n))));
                }
                s.insert(spot.coords(t)?);
            }
            span.push((s.dim() != spot.dim()).then(|| format!("({p},{q}): θ span {} vs coinvariants {}", s.dim(), spot.dim())));
        }
    }
    Ok(vec![Check::collect("theta invariance", inv), Check::collect("theta spans coinvariants", span)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=6).map(|p| partitions(p).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11]);
        assert_eq!(partitions(2), vec![vec![2], vec![1, 1]]);
        assert_eq!(cycle_permutation(&[2, 1]), vec![1, 0, 2]);
        assert_eq!(cycle_type(&[1, 2, 0, 3]), vec![3, 1]);
        assert_eq!(compositions(3, 2), vec![vec![1, 2], vec![2, 1]]);
    }

    #[test]
    fn godbillon_vey_n1() {
        let c = chern_cochain(1, &[0]);
        let want = Cochain::basis(SpotWord { f: vec![eta(1, 0, 0, 0)], w: crate::symbolic::WedgeWord(vec![]) });
        assert_eq!(c, want);
    }

    #[test]
    fn first_class_n2_has_four_terms() {
        let c = chern_cochain(2, &[0]);
        // Σ_μ Σ_j (-1)^μ η^j_{μ(1) j} ⊗ X_{μ(2)}
        let mut want = Cochain::zero();
        for (mu, s) in [([0usize, 1usize], 1i64), ([1, 0], -1)] {
            for j in 0..2 {
                let w = crate::symbolic::WedgeWord(vec![GSym::X(mu[1] as u8)]);
                want.add_term(SpotWord { f: vec![eta(2, j, mu[0], j)], w }, rat(s));
            }
        }
        assert_eq!(c.len(), 4);
        assert_eq!(c, want);
        let a = chern_cochain(2, &cycle_permutation(&[2]));
        let b = chern_cochain(2, &cycle_permutation(&[1, 1]));
        assert!(!a.is_zero() && !b.is_zero() && a != b && a != b.neg());
    }
}
