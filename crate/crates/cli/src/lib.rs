//! Command line driver: runs the verification suites and cohomology
//! computations of `hopfcyc` and renders JSON and text reports.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use hopfcyc::chern::{self, ChernReport};
use hopfcyc::cohomology::{self, Bicomplex, Kind, Table};
use hopfcyc::cyclic::{self, StandardModule};
use hopfcyc::faa::{self, matched, FContext};
use hopfcyc::hopf::{verify, Hn};
use hopfcyc::report::{all_passed, Check, SCHEMA};
use hopfcyc::{par, Error, Result};

#[derive(Parser, Debug)]
#[command(name = "hopfcyc", version, about = "Exact Hopf cyclic cohomology of H_n")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Write the JSON report to this path.
    #[arg(long, global = true)]
    pub output: Option<std::path::PathBuf>,
    /// Print the JSON report instead of the text summary.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads; 1 runs sequentially.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Hopf algebra axioms, Bianchi identities and rewriting confluence.
    VerifyHopf {
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        weight: usize,
        #[arg(long, default_value_t = 3)]
        pbw: usize,
    },
    /// Matched pair axioms, two-route coproduct and the bicrossed product.
    VerifyMatchedPair {
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        jet: usize,
        #[arg(long, default_value_t = 3)]
        weight: usize,
        #[arg(long, default_value_t = 2)]
        pbw: usize,
    },
    /// Cocyclic identities of the standard module and the δ₁ class.
    VerifyCocyclic {
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        degree_max: usize,
        #[arg(long, default_value_t = 4)]
        weight: usize,
        #[arg(long, default_value_t = 2)]
        pbw: usize,
    },
    /// Hochschild cohomology from the bicomplex.
    Hochschild(Cohom),
    /// Cyclic cohomology from the bicomplex.
    Cyclic(Cohom),
    /// Coalgebra cohomology of F with trivial coefficients.
    Goncarova {
        #[arg(long, default_value_t = 2)]
        degree_max: usize,
        #[arg(long, default_value_t = 8)]
        weight_max: usize,
        #[arg(long)]
        jet: Option<usize>,
    },
    /// Chern classes of the relative periodic cohomology.
    Chern {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        jet: Option<usize>,
    },
    /// Every suite at its default cuts.
    All,
}

#[derive(Args, Debug, Clone)]
pub struct Cohom {
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub degree_max: usize,
    #[arg(long, default_value_t = 7)]
    pub weight_max: usize,
    #[arg(long)]
    pub jet: Option<usize>,
}

#[derive(Serialize, Debug, Clone, Default)]
pub struct Section {
    pub command: String,
    pub params: Vec<(String, usize)>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chern: Option<ChernReport>,
}

#[derive(Serialize, Debug, Clone)]
pub struct Report {
    pub schema: u32,
    pub passed: bool,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn text(&self) -> String {
        let mut s = String::new();
        for sec in &self.sections {
            let params: Vec<String> = sec.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(s, "== {} ({})", sec.command, params.join(", "));
            for c in &sec.checks {
                let _ = writeln!(s, "  {} {} [{}]", if c.passed { "ok  " } else { "FAIL" }, c.name, c.checked);
                if let Some(ce) = &c.counterexample {
                    let _ = writeln!(s, "       first counterexample: {ce}");
                }
            }
            if let Some(t) = &sec.table {
                let degrees: std::collections::BTreeSet<usize> = t.blocks.iter().map(|b| b.degree).collect();
                for d in degrees {
                    let ws: Vec<String> = t.class_weights(d).iter().map(|w| w.to_string()).collect();
                    let _ = writeln!(s, "  degree {d}: dim {} at weights [{}]", t.dim(d), ws.join(", "));
                }
            }
            if let Some(c) = &sec.chern {
                for cl in &c.classes {
                    let ok = cl.cocycle && cl.not_coboundary && cl.beta_closed && cl.del_closed;
                    let _ = writeln!(s, "  {} {}", cl.label, if ok { "certified" } else { "NOT certified" });
                }
                let _ = writeln!(s, "  HP same parity {}, opposite parity {}", c.hp_same_parity, c.hp_opposite_parity);
            }
        }
        let _ = writeln!(s, "{}", if self.passed { "PASS" } else { "FAIL" });
        s
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidConfig(msg()))
    }
}

fn check_n(n: usize) -> Result<()> {
    ensure((1..=3).contains(&n), || format!("n must be 1, 2 or 3, got {n}"))
}

fn jet_for(jet: Option<usize>, w_max: usize) -> Result<usize> {
    let need = cohomology::required_order(w_max);
    match jet {
        None => Ok(need),
        Some(j) => {
            ensure(j >= 2, || format!("jet order must be at least 2, got {j}"))?;
            ensure(j >= need, || format!("weight {w_max} needs jet order {need}, got {j}"))?;
            Ok(j)
        }
    }
}

fn params(items: &[(&str, usize)]) -> Vec<(String, usize)> {
    items.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

pub fn verify_hopf(n: usize, weight: usize, pbw: usize) -> Result<Section> {
    check_n(n)?;
    ensure(weight >= 1 && pbw >= 1, || "weight and pbw cuts must be at least 1".into())?;
    let h = Hn::new(n);
    let mut checks = verify::verify_hopf_axioms(&h, weight, pbw);
    checks.push(verify::verify_bianchi(&h));
    checks.push(verify::confluence_smoke(&h, 1000, 6, 7));
    Ok(Section {
        command: "verify-hopf".into(),
        params: params(&[("n", n), ("weight", weight), ("pbw", pbw)]),
        checks,
        ..Default::default()
    })
}

pub fn verify_matched_pair(n: usize, jet: usize, weight: usize, pbw: usize) -> Result<Section> {
    check_n(n)?;
    ensure(jet >= 2 && weight >= 1 && pbw >= 1, || "need jet ≥ 2, weight ≥ 1, pbw ≥ 1".into())?;
    let h = Hn::new(n);
    let f = FContext::new(h.clone(), jet)?;
    let mut checks = matched::check_matched_pair(&f);
    // the weight-w crosscheck reads jet coordinates of order w + 2
    let cross_jet = jet.max(weight + 2);
    let g = if cross_jet == jet { f } else { FContext::new(h, cross_jet)? };
    checks.extend(matched::check_two_route_coproduct(&g, weight + 1));
    checks.extend(matched::check_action_intertwines(&g, weight));
    checks.extend(faa::bicrossed_crosscheck(&g, weight, pbw));
    Ok(Section {
        command: "verify-matched-pair".into(),
        params: params(&[("n", n), ("jet", jet), ("crosscheck_jet", cross_jet), ("weight", weight), ("pbw", pbw)]),
        checks,
        ..Default::default()
    })
}

pub fn verify_cocyclic(n: usize, degree_max: usize, weight: usize, pbw: usize) -> Result<Section> {
    check_n(n)?;
    ensure(weight >= 1 && pbw >= 1, || "weight and pbw cuts must be at least 1".into())?;
    let md = StandardModule::new(Hn::new(n));
    let words: Vec<_> = (0..=degree_max).map(|m| md.words(m, weight, pbw)).collect();
    let mut checks = cyclic::check_cocyclic_identities(&md, &words);
    if n == 1 {
        checks.extend(cyclic::check_delta1_class(&md));
    }
    Ok(Section {
        command: "verify-cocyclic".into(),
        params: params(&[("n", n), ("degree_max", degree_max), ("weight", weight), ("pbw", pbw)]),
        checks,
        ..Default::default()
    })
}

fn absolute(n: usize, jet: usize) -> Result<Bicomplex> {
    Ok(Bicomplex::new(FContext::new(Hn::new(n), jet)?, Kind::Absolute))
}

fn table_check(t: &Table) -> Check {
    Check::single("certificates", t.certificates_ok(), || "a class representative failed certification".into())
}

pub fn hochschild(c: &Cohom) -> Result<Section> {
    check_n(c.n)?;
    let jet = jet_for(c.jet, c.weight_max)?;
    let bc = absolute(c.n, jet)?;
    let degrees: Vec<usize> = (0..=c.degree_max).collect();
    let t = cohomology::hochschild_cohomology(&bc, &degrees, c.weight_max)?;
    let mut checks = vec![table_check(&t)];
    if c.n == 1 {
        checks.push(cohomology::check_homotopy(&bc, c.degree_max.max(1), c.weight_max.saturating_sub(1).max(1))?);
    }
    Ok(Section {
        command: "hochschild".into(),
        params: params(&[("n", c.n), ("jet", jet), ("degree_max", c.degree_max), ("weight_max", c.weight_max)]),
        checks,
        table: Some(t),
        ..Default::default()
    })
}

/// `1 ⊗ η₁` in total degree 1 at weight 1, for `n = 1`.
pub fn godbillon_vey_check(bc: &Bicomplex) -> Result<Check> {
    let eta1 = bc.faa().monomials(1).into_iter().next().expect("η₁");
    let c = cohomology::Cochain::basis(hopfcyc::symbolic::SpotWord { f: vec![eta1], w: Default::default() });
    let mut wb = cohomology::WeightBlock::new(bc, 1, cohomology::Shape::Cyclic);
    let (cocycle, fresh) = wb.certify(1, 0, &c)?;
    Ok(Check::single("Godbillon-Vey class", cocycle && fresh, || format!("cocycle {cocycle}, not a coboundary {fresh}")))
}

pub fn cyclic_cmd(c: &Cohom) -> Result<Section> {
    check_n(c.n)?;
    let jet = jet_for(c.jet, c.weight_max)?;
    let bc = absolute(c.n, jet)?;
    let degrees: Vec<usize> = (0..=c.degree_max).collect();
    let t = cohomology::cyclic_cohomology(&bc, &degrees, c.weight_max)?;
    let mut checks = vec![table_check(&t)];
    checks.extend(cohomology::check_differentials(&bc, c.degree_max, c.weight_max.min(3))?);
    if c.n == 1 && c.weight_max >= 1 {
        checks.push(godbillon_vey_check(&bc)?);
    }
    Ok(Section {
        command: "cyclic".into(),
        params: params(&[("n", c.n), ("jet", jet), ("degree_max", c.degree_max), ("weight_max", c.weight_max)]),
        checks,
        table: Some(t),
        ..Default::default()
    })
}

/// Weights `k + 3k(k-1)/2` and `2k + 3k(k-1)/2` carrying the two classes in
/// degree `k ≥ 1`.
pub fn goncarova_weights(k: usize) -> [usize; 2] {
    let shift = 3 * k * (k - 1) / 2;
    [k + shift, 2 * k + shift]
}

pub fn goncarova(degree_max: usize, weight_max: usize, jet: Option<usize>) -> Result<Section> {
    ensure(weight_max >= 1, || "weight cut must be at least 1".into())?;
    let jet = jet_for(jet, weight_max)?;
    let bc = absolute(1, jet)?;
    let degrees: Vec<usize> = (0..=degree_max).collect();
    let t = cohomology::row_cohomology(&bc, &degrees, weight_max)?;
    let mut checks = vec![table_check(&t)];
    for k in 1..=degree_max {
        let want: Vec<usize> = goncarova_weights(k).into_iter().filter(|&w| w <= weight_max).collect();
        let got = t.class_weights(k);
        checks.push(Check::single(format!("degree {k} classes"), got == want, || format!("weights {got:?}, expected {want:?}")));
    }
    Ok(Section {
        command: "goncarova".into(),
        params: params(&[("n", 1), ("jet", jet), ("degree_max", degree_max), ("weight_max", weight_max)]),
        checks,
        table: Some(t),
        ..Default::default()
    })
}

pub fn chern_cmd(n: usize, jet: Option<usize>) -> Result<Section> {
    check_n(n)?;
    let jet = jet_for(jet, n)?;
    let bc = Bicomplex::new(FContext::new(Hn::new(n), jet)?, Kind::Relative);
    let report = chern::verify_classes(&bc)?;
    let mut checks = report.checks.clone();
    checks.extend(cohomology::check_descends(&bc, n)?);
    checks.extend(chern::check_theta(&bc, n, n)?);
    checks.push(chern::check_sign_invariance(n.max(3), 3));
    Ok(Section {
        command: "chern".into(),
        params: params(&[("n", n), ("jet", jet), ("weight", n)]),
        checks,
        chern: Some(report),
        ..Default::default()
    })
}

fn sections(cmd: &Command) -> Result<Vec<Section>> {
    let one = |n: usize| Cohom { n, degree_max: 2, weight_max: 7, jet: None };
    Ok(match cmd {
        Command::VerifyHopf { n, weight, pbw } => vec![verify_hopf(*n, *weight, *pbw)?],
        Command::VerifyMatchedPair { n, jet, weight, pbw } => vec![verify_matched_pair(*n, *jet, *weight, *pbw)?],
        Command::VerifyCocyclic { n, degree_max, weight, pbw } => {
            vec![verify_cocyclic(*n, *degree_max, *weight, *pbw)?]
        }
        Command::Hochschild(c) => vec![hochschild(c)?],
        Command::Cyclic(c) => vec![cyclic_cmd(c)?],
        Command::Goncarova { degree_max, weight_max, jet } => vec![goncarova(*degree_max, *weight_max, *jet)?],
        Command::Chern { n, jet } => vec![chern_cmd(*n, *jet)?],
        Command::All => vec![
            verify_hopf(1, 4, 3)?,
            verify_hopf(2, 2, 2)?,
            verify_matched_pair(1, 5, 3, 2)?,
            verify_matched_pair(2, 3, 3, 2)?,
            verify_cocyclic(1, 3, 4, 2)?,
            hochschild(&one(1))?,
            cyclic_cmd(&one(1))?,
            goncarova(2, 8, None)?,
            chern_cmd(2, None)?,
        ],
    })
}

/// Runs a command; configuration problems are errors, failed checks are not.
pub fn run(cli: &Cli) -> Result<Report> {
    if let Some(t) = cli.common.threads {
        ensure(t >= 1, || "threads must be at least 1".into())?;
    }
    let threads = cli.common.threads.unwrap_or_else(par::available_threads);
    let sections = par::with_threads(threads, || sections(&cli.command))?;
    let passed = sections.iter().all(|s| all_passed(&s.checks));
    Ok(Report { schema: SCHEMA, passed, sections })
}

pub fn to_json(r: &Report) -> String {
    serde_json::to_string_pretty(r).expect("report serializes")
}

/// Exit status: 0 pass, 1 failed check, 2 invalid configuration.
pub fn exit_code(r: &Result<Report>) -> i32 {
    match r {
        Ok(r) if r.passed => 0,
        Ok(_) | Err(Error::CheckFailed(_)) => 1,
        Err(_) => 2,
    }
}
