use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hopfcyc::chern;
use hopfcyc::cohomology::{self, antisymmetrize, wedge_tensor, Bicomplex, Kind};
use hopfcyc::faa::FContext;
use hopfcyc::hopf::{random_word, Hn, Strategy};
use hopfcyc::linalg::{rank_and_kernel, rat, Quotient, SparseMatrix, SparseVec};
use hopfcyc::symbolic::{GSym, LinComb, WedgeWord};

fn matrix(entries: &[Vec<i64>]) -> SparseMatrix {
    SparseMatrix::from_dense(entries)
}

/// Euler's pentagonal recurrence, independent of the enumerator.
fn partition_count(m: usize) -> usize {
    let mut p = vec![0i64; m + 1];
    p[0] = 1;
    for k in 1..=m {
        let mut s = 0i64;
        for j in 1.. {
            let g1 = j * (3 * j - 1) / 2;
            if g1 > k {
                break;
            }
            let sign = if j % 2 == 1 { 1 } else { -1 };
            s += sign * p[k - g1];
            let g2 = j * (3 * j + 1) / 2;
            if g2 <= k {
                s += sign * p[k - g2];
            }
        }
        p[k] = s;
    }
    p[m] as usize
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wedge_inverts_antisymmetrization(mask in 1u8..64) {
        let basis = GSym::basis(2);
        let gens: Vec<GSym> = basis.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, g)| *g).collect();
        let w = WedgeWord(gens);
        prop_assert_eq!(wedge_tensor(&antisymmetrize(&w)), LinComb::basis(w));
    }

    #[test]
    fn rewriting_is_strategy_independent(seed in any::<u64>(), n in 1usize..=2, len in 1usize..=5) {
        let h = Hn::new(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_word(n, len, &mut rng);
        let left = h.normal_form(&w, Strategy::Leftmost);
        prop_assert_eq!(&left, &h.normal_form(&w, Strategy::Rightmost));
        prop_assert_eq!(&left, &h.normal_form(&w, Strategy::Random(seed)));
    }

    #[test]
    fn rank_nullity(entries in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 5), 1..6)) {
        let m = matrix(&entries);
        let (r, kernel) = rank_and_kernel(&m);
        prop_assert_eq!(r + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(m.apply(v).is_empty());
        }
    }

    #[test]
    fn quotient_kills_relations(entries in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 6), 0..4)) {
        let rels: Vec<SparseVec> = entries
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, x)| **x != 0).map(|(i, x)| (i, rat(*x))).collect())
            .collect();
        let q = Quotient::new(6, rels.clone());
        let (r, _) = rank_and_kernel(&matrix(&entries.clone().into_iter().chain(std::iter::once(vec![0; 6])).collect::<Vec<_>>()));
        prop_assert_eq!(q.dim(), 6 - r);
        for v in &rels {
            prop_assert!(q.project(v).is_empty());
        }
        for (k, &i) in q.basis().iter().enumerate() {
            let unit: SparseVec = [(i, rat(1))].into_iter().collect();
            let want: SparseVec = [(k, rat(1))].into_iter().collect();
            prop_assert_eq!(q.project(&unit), want);
        }
    }

    #[test]
    fn partitions_match_pentagonal_recurrence(m in 0usize..=18) {
        prop_assert_eq!(chern::partitions(m).len(), partition_count(m));
        for l in chern::partitions(m) {
            prop_assert_eq!(chern::cycle_type(&chern::cycle_permutation(&l)), l);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn beta_squares_to_zero_on_words(w in 1usize..=4, p in 0usize..=2, q in 0usize..=2, pick in any::<proptest::sample::Index>()) {
        let f = FContext::new(Hn::new(1), cohomology::required_order(4)).unwrap();
        let bc = Bicomplex::new(f, Kind::Absolute);
        let spot = bc.spot(p, q, w).unwrap();
        prop_assume!(!spot.words.is_empty());
        let x = pick.get(&spot.words);
        let bb = bc.beta_chain(&bc.beta(x).unwrap()).unwrap();
        prop_assert!(bb.is_zero());
        let dd = bc.del_chain(&bc.del(x).unwrap()).unwrap();
        prop_assert!(dd.is_zero());
        let lhs = bc.del_chain(&bc.beta(x).unwrap()).unwrap();
        let rhs = bc.beta_chain(&bc.del(x).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
