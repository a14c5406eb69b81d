use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{HElem, Hn};
use crate::error::{Error, Result};
use crate::symbolic::{Gen, LinComb, Mono, Sym};

/// Which redex the word rewriter contracts next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
    Random(u64),
}

/// Parses `X1·Y12·d[1;1,2|2]`; `·` or `*` separate factors, `^k` repeats one.
/// For `n = 1` the bare letters `X` and `Y` are accepted.
pub fn parse_word(n: usize, s: &str) -> Result<Vec<Gen>> {
    let bad = |m: &str| Error::Parse(format!("{m} in word {s:?}"));
    let idx = |c: char| -> Result<u8> {
        let v = c.to_digit(10).ok_or_else(|| bad("expected an index digit"))? as usize;
        if v == 0 || v > n {
            return Err(bad("index out of range"));
        }
        Ok((v - 1) as u8)
    };
    let mut out = Vec::new();
    let s = s.trim();
    if s == "1" || s.is_empty() {
        return Ok(out);
    }
    for factor in s.split(['·', '*']) {
        let factor = factor.trim();
        let (atom, power) = match factor.rsplit_once('^') {
            Some((a, p)) if !a.ends_with('[') => (a, p.parse::<usize>().map_err(|_| bad("bad exponent"))?),
            _ => (factor, 1),
        };
        let g = if let Some(body) = atom.strip_prefix("d[").and_then(|b| b.strip_suffix(']')) {
            let (up, rest) = body.split_once(';').ok_or_else(|| bad("missing ';'"))?;
            let (pair, trail) = rest.split_once('|').ok_or_else(|| bad("missing '|'"))?;
            let pair: Vec<&str> = pair.split(',').collect();
            if pair.len() != 2 {
                return Err(bad("pair needs two indices"));
            }
            let one = |t: &str| -> Result<u8> {
                let mut c = t.trim().chars();
                match (c.next(), c.next()) {
                    (Some(ch), None) => idx(ch),
                    _ => Err(bad("indices are single digits")),
                }
            };
            let trail: Vec<u8> = trail.split(',').filter(|t| !t.trim().is_empty()).map(one).collect::<Result<_>>()?;
            Gen::D(Sym::arrangement(one(up)?, one(pair[0])?, one(pair[1])?, &trail))
        } else {
            let mut c = atom.chars();
            match (c.next(), c.next(), c.next(), c.next()) {
                (Some('X'), None, _, _) if n == 1 => Gen::X(0),
                (Some('Y'), None, _, _) if n == 1 => Gen::Y(0, 0),
                (Some('X'), Some(k), None, _) => Gen::X(idx(k)?),
                (Some('Y'), Some(i), Some(j), None) => Gen::Y(idx(i)?, idx(j)?),
                _ => return Err(bad("unknown generator")),
            }
        };
        for _ in 0..power {
            out.push(g.clone());
        }
    }
    Ok(out)
}

/// A random word of the given length over `X`'s, `Y`'s and δ labels of weight
/// at most two in random (possibly non-normal) arrangement.
pub fn random_word(n: usize, len: usize, rng: &mut ChaCha8Rng) -> Vec<Gen> {
    let nn = n as u8;
    (0..len)
        .map(|_| match rng.gen_range(0..3) {
            0 => Gen::X(rng.gen_range(0..nn)),
            1 => Gen::Y(rng.gen_range(0..nn), rng.gen_range(0..nn)),
            _ => {
                let trail: Vec<u8> = (0..rng.gen_range(0..2)).map(|_| rng.gen_range(0..nn)).collect();
                Gen::D(Sym::arrangement(rng.gen_range(0..nn), rng.gen_range(0..nn), rng.gen_range(0..nn), &trail))
            }
        })
        .collect()
}

enum Redex {
    Label(usize),
    Swap(usize),
}

fn redexes(w: &[Gen]) -> Vec<Redex> {
    let mut out = Vec::new();
    for (p, g) in w.iter().enumerate() {
        if let Gen::D(s) = g {
            if !s.is_normal() {
                out.push(Redex::Label(p));
            }
        }
    }
    for p in 0..w.len().saturating_sub(1) {
        let clean = |g: &Gen| !matches!(g, Gen::D(s) if !s.is_normal());
        if clean(&w[p]) && clean(&w[p + 1]) && w[p] > w[p + 1] {
            out.push(Redex::Swap(p));
        }
    }
    out.sort_by_key(|r| match r {
        Redex::Label(p) => 2 * p,
        Redex::Swap(p) => 2 * p + 1,
    });
    out
}

fn splice(w: &[Gen], at: usize, width: usize, e: &HElem, c: &num_rational::BigRational, out: &mut LinComb<Vec<Gen>>) {
    for (m, d) in e.iter() {
        let mut v = w[..at].to_vec();
        v.extend(m.gens());
        v.extend_from_slice(&w[at + width..]);
        out.add_term(v, c * d);
    }
}

impl Hn {
    /// Normal form of a word by one-step rewriting with the chosen strategy:
    /// a δ label is replaced by its normal polynomial, and an adjacent pair
    /// `a b` with `a > b` becomes `b a + [a, b]`.
    pub fn normal_form(&self, word: &[Gen], strategy: Strategy) -> HElem {
        let mut rng = ChaCha8Rng::seed_from_u64(match strategy {
            Strategy::Random(s) => s,
            _ => 0,
        });
        let mut pending: LinComb<Vec<Gen>> = LinComb::basis(word.to_vec());
        let mut done = HElem::zero();
        loop {
            let Some(w) = pending.keys().next().cloned() else { break };
            let c = pending.coeff(&w);
            let mut next = pending.filter(|k| *k != w);
            let rs = redexes(&w);
            if rs.is_empty() {
                let mut m = Mono::one(self.n());
                for g in &w {
                    m.push_unchecked(g);
                }
                done.add_term(m, c);
                pending = next;
                continue;
            }
            let r = match strategy {
                Strategy::Leftmost => &rs[0],
                Strategy::Rightmost => &rs[rs.len() - 1],
                Strategy::Random(_) => &rs[rng.gen_range(0..rs.len())],
            };
            match *r {
                Redex::Label(p) => {
                    let Gen::D(s) = &w[p] else { unreachable!() };
                    splice(&w, p, 1, &self.normalize(s), &c, &mut next);
                }
                Redex::Swap(p) => {
                    let mut swapped = w.clone();
                    swapped.swap(p, p + 1);
                    next.add_term(swapped, c.clone());
                    let br = self.bracket(&w[p], &w[p + 1]);
                    splice(&w, p, 2, &br, &c, &mut next);
                }
            }
            pending = next;
        }
        done
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        let w = parse_word(1, "d[1;1,1|]·X^2·Y").unwrap();
        assert_eq!(w.len(), 4);
        let h = Hn::new(1);
        let e = h.word_product(&w);
        assert_eq!(e.len(), 1);
        assert_eq!(e.keys().next().unwrap().render(), "d[1;1,1|]·X^2·Y");
        assert!(parse_word(2, "X3").is_err());
        assert!(parse_word(2, "Z1").is_err());
        assert_eq!(parse_word(2, "Y12").unwrap(), vec![Gen::Y(0, 1)]);
    }

    #[test]
    fn strategies_agree_small() {
        let h = Hn::new(2);
        let w = parse_word(2, "Y21·d[1;2,2|1]·X1·Y12").unwrap();
        let a = h.normal_form(&w, Strategy::Leftmost);
        assert_eq!(a, h.normal_form(&w, Strategy::Rightmost));
        assert_eq!(a, h.normal_form(&w, Strategy::Random(7)));
        assert_eq!(a, h.word_product(&w));
    }
}
