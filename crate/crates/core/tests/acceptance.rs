//! Acceptance suite: one PASS/FAIL line per criterion. All comparisons are
//! exact over the rationals; the only tolerances are the runtime budgets.

use std::time::{Duration, Instant};

use hopfcyc::chern;
use hopfcyc::cohomology::{self, Bicomplex, Cochain, Kind, Shape, WeightBlock};
use hopfcyc::cyclic::{self, StandardModule};
use hopfcyc::faa::{self, matched, FContext};
use hopfcyc::hopf::{verify, Hn};
use hopfcyc::report::{all_passed, Check};
use hopfcyc::symbolic::SpotWord;

/// Exact arithmetic throughout: numerical tolerance is zero.
const NUMERIC_TOLERANCE: u32 = 0;

const BUDGET_HOPF: Duration = Duration::from_secs(60);
const BUDGET_BIANCHI: Duration = Duration::from_secs(60);
const BUDGET_MATCHED: Duration = Duration::from_secs(120);
const BUDGET_CYCLIC: Duration = Duration::from_secs(600);
const BUDGET_CHERN: Duration = Duration::from_secs(600);

struct Outcome {
    ok: bool,
    detail: String,
}

fn from_checks(checks: &[Check]) -> Outcome {
    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{}: {}", c.name, c.counterexample.clone().unwrap_or_default()))
        .collect();
    let total: usize = checks.iter().map(|c| c.checked).sum();
    Outcome {
        ok: all_passed(checks) && total > 0,
        detail: if failed.is_empty() { format!("{} checks over {total} cases", checks.len()) } else { failed.join("; ") },
    }
}

fn hopf_axioms() -> Outcome {
    let mut checks = verify::verify_hopf_axioms(&Hn::new(1), 4, 3);
    checks.extend(verify::verify_hopf_axioms(&Hn::new(2), 2, 2));
    from_checks(&checks)
}

fn bianchi() -> Outcome {
    let h = Hn::new(2);
    let b = verify::verify_bianchi(&h);
    let c = verify::confluence_smoke(&h, 1000, 6, 7);
    let ok = b.checked == 16 && c.checked == 1000;
    let mut o = from_checks(&[b, c]);
    o.ok &= ok;
    o
}

fn matched_pair() -> Outcome {
    let mut checks = Vec::new();
    for (n, jet) in [(1, 5), (2, 3)] {
        checks.extend(matched::check_matched_pair(&FContext::new(Hn::new(n), jet).unwrap()));
    }
    for n in [1, 2] {
        let f = FContext::new(Hn::new(n), 5).unwrap();
        checks.extend(faa::bicrossed_crosscheck(&f, 3, 2));
    }
    from_checks(&checks)
}

fn two_routes() -> Outcome {
    let mut checks = matched::check_two_route_coproduct(&FContext::new(Hn::new(1), 5).unwrap(), 4);
    checks.extend(matched::check_two_route_coproduct(&FContext::new(Hn::new(2), 3).unwrap(), 2));
    from_checks(&checks)
}

fn cocyclic_identities() -> Outcome {
    let md = StandardModule::new(Hn::new(1));
    let words: Vec<_> = (0..=3).map(|m| md.words(m, 4, 2)).collect();
    let mut checks = cyclic::check_cocyclic_identities(&md, &words);
    checks.extend(cyclic::check_delta1_class(&md));
    from_checks(&checks)
}

fn hc_h1() -> Outcome {
    let w_max = 7;
    let bc = Bicomplex::new(FContext::new(Hn::new(1), cohomology::required_order(w_max)).unwrap(), Kind::Absolute);
    let t = cohomology::cyclic_cohomology(&bc, &[0, 1, 2], w_max).unwrap();
    let dims = [t.dim(0), t.dim(1), t.dim(2)];
    let eta1 = bc.faa().monomials(1).remove(0);
    let gv = Cochain::basis(SpotWord { f: vec![eta1], w: Default::default() });
    let (cocycle, fresh) = WeightBlock::new(&bc, 1, Shape::Cyclic).certify(1, 0, &gv).unwrap();
    let ok = dims == [1, 2, 5] && t.class_weights(1) == vec![1, 2] && cocycle && fresh && t.certificates_ok();
    Outcome { ok, detail: format!("dims {dims:?}, HC^1 weights {:?}, GV cocycle {cocycle} non-coboundary {fresh}", t.class_weights(1)) }
}

fn hh_h1() -> Outcome {
    let w_max = 7;
    let bc = Bicomplex::new(FContext::new(Hn::new(1), cohomology::required_order(w_max)).unwrap(), Kind::Absolute);
    let t = cohomology::hochschild_cohomology(&bc, &[0, 1, 2], w_max).unwrap();
    let dims = [t.dim(0), t.dim(1), t.dim(2)];
    // H^1: ξ₁ (1), ξ₁' (2), Y (0); H^2: ξ₂ (5), ξ₂' (7), ξ₁'⊗Y (2), X∧Y (1), σ (2), σ' (3)
    let w1 = t.class_weights(1);
    let w2 = t.class_weights(2);
    let homotopy = cohomology::check_homotopy(&bc, 2, 6).unwrap();
    let ok = dims == [1, 3, 6] && w1 == vec![0, 1, 2] && w2 == vec![1, 2, 2, 3, 5, 7] && t.certificates_ok() && homotopy.passed;
    Outcome { ok, detail: format!("dims {dims:?}, H^1 weights {w1:?}, H^2 weights {w2:?}, homotopy {}", homotopy.passed) }
}

fn goncarova() -> Outcome {
    let w_max = 8;
    let bc = Bicomplex::new(FContext::new(Hn::new(1), cohomology::required_order(w_max)).unwrap(), Kind::Absolute);
    let t = cohomology::row_cohomology(&bc, &[1, 2], w_max).unwrap();
    let (w1, w2) = (t.class_weights(1), t.class_weights(2));
    let ok = w1 == vec![1, 2] && w2 == vec![5, 7] && t.certificates_ok();
    Outcome { ok, detail: format!("H^1 weights {w1:?}, H^2 weights {w2:?}") }
}

fn theorem_d() -> Outcome {
    let bc = Bicomplex::new(FContext::new(Hn::new(2), cohomology::required_order(2)).unwrap(), Kind::Relative);
    let r = chern::verify_classes(&bc).unwrap();
    let mut checks = r.checks.clone();
    checks.extend(cohomology::check_descends(&bc, 2).unwrap());
    checks.push(chern::check_sign_invariance(3, 3));
    let mut o = from_checks(&checks);
    o.ok &= r.classes.len() == 4 && r.hp_opposite_parity == 0;
    o.detail = format!("{} classes, HP {}/{}; {}", r.classes.len(), r.hp_same_parity, r.hp_opposite_parity, o.detail);
    o
}

fn coinvariants() -> Outcome {
    let bc = Bicomplex::new(FContext::new(Hn::new(2), cohomology::required_order(2)).unwrap(), Kind::Relative);
    from_checks(&chern::check_theta(&bc, 2, 2).unwrap())
}

fn main() {
    assert_eq!(NUMERIC_TOLERANCE, 0);
    let criteria: [(&str, fn() -> Outcome, Option<Duration>); 10] = [
        ("1 Hopf axioms n=1 (W4,D3), n=2 (W2,D2)", hopf_axioms, Some(BUDGET_HOPF)),
        ("2 Bianchi n=2 and 1000-word confluence", bianchi, Some(BUDGET_BIANCHI)),
        ("3 matched pair and bicrossed crosscheck", matched_pair, Some(BUDGET_MATCHED)),
        ("4 two-route coproduct on F", two_routes, None),
        ("5 cocyclic identities H_1, degree<=3, weight<=4", cocyclic_identities, None),
        ("6 HC of H_1 at w_max=7", hc_h1, Some(BUDGET_CYCLIC)),
        ("7 Hochschild of H_1 at w_max=7", hh_h1, None),
        ("8 Goncarova classes within w_max=8", goncarova, None),
        ("9 Chern classes at n=2", theorem_d, Some(BUDGET_CHERN)),
        ("10 theta span equals coinvariants n=2", coinvariants, None),
    ];
    let mut failures = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let mut o = run();
        let took = start.elapsed();
        if let Some(b) = budget {
            if took > b {
                o.ok = false;
                o.detail = format!("{} (over budget {:?})", o.detail, b);
            }
        }
        println!("{} criterion {name} [{:.1}s]: {}", if o.ok { "PASS" } else { "FAIL" }, took.as_secs_f64(), o.detail);
        failures += usize::from(!o.ok);
    }
    if failures > 0 {
        eprintln!("{failures} criteria failed");
        std::process::exit(1);
    }
}
