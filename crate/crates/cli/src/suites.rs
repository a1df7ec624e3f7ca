//! Verification suites behind `convkit verify`, `enumerate`, `typewriter`
//! and `roundtrip`.

use std::fmt;
use std::time::Instant;

use convkit_core::convspace::theorems::{
    verify_bas, verify_roundtrip, Bounds, IteratedLimitPool, MixingPool, NetAxiomPool,
};
use convkit_core::convspace::{enumerate_structures, EnumerationSummary};
use convkit_core::order_net::enumerate_nets;
use convkit_core::report::CheckReport;
use convkit_core::vlattice::decide::{mackey_limit, o_limit, o_limit_limsup, ru_limit};
use convkit_core::vlattice::operator::{check_interval_image, is_order_bounded_operator, ru_continuity_check};
use convkit_core::vlattice::rational::{format as fmt_q, q, qf, Q};
use convkit_core::vlattice::region::order_topology_equiv_check;
use convkit_core::vlattice::structure::{
    archimedean_witness, check_lex_witness_symbolic, check_witness_upto, strong_unit_check,
};
use convkit_core::vlattice::tagged_line::tagged_line_demo;
use convkit_core::vlattice::typewriter::{ae_sample_report, grid_samples, typewriter_set, SubseqRule};
use convkit_core::vlattice::vector::Carrier;
use convkit_core::vlattice::{LatticeVector, SeqTerm};
use convkit_core::{ConvSpace, Net, PointMap, PointSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::corpus::{random_map, random_matrix, random_positive, random_space, random_term};

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("invalid option: {0}")]
    Option(String),
    #[error(transparent)]
    Core(#[from] convkit_core::Error),
}

pub type SuiteResult<T> = std::result::Result<T, SuiteError>;

#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    /// What the suite checks.
    pub header: Vec<String>,
    pub seed: Option<u64>,
    pub pass: u64,
    pub fail: u64,
    pub skip: u64,
    /// Descriptions of the first failing inputs.
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    pub duration_ms: u128,
}

const MAX_FAILURES: usize = 20;

impl SuiteReport {
    fn new(suite: &str, header: &[&str]) -> Self {
        SuiteReport { suite: suite.into(), header: header.iter().map(|s| s.to_string()).collect(), ..Default::default() }
    }

    pub fn total(&self) -> u64 {
        self.pass + self.fail + self.skip
    }

    pub fn passed(&self) -> bool {
        self.fail == 0
    }

    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        if ok {
            self.pass += 1;
        } else {
            self.fail += 1;
            if self.failures.len() < MAX_FAILURES {
                self.failures.push(describe());
            }
        }
    }

    /// Folds a core check report in as a single case.
    fn record_report(&mut self, r: &CheckReport, what: impl FnOnce() -> String) {
        self.record(r.passed(), || format!("{}: {}", what(), r.failures.join("; ")));
    }

    pub fn skip(&mut self, why: impl Into<String>) {
        self.skip += 1;
        let why = why.into();
        if !self.notes.contains(&why) {
            self.notes.push(why);
        }
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite: {}", self.suite)?;
        for h in &self.header {
            writeln!(f, "  checks: {h}")?;
        }
        if let Some(seed) = self.seed {
            writeln!(f, "  seed: {seed}")?;
        }
        for n in &self.notes {
            writeln!(f, "  {n}")?;
        }
        for x in &self.failures {
            writeln!(f, "  FAIL {x}")?;
        }
        write!(
            f,
            "  {} total: {} pass, {} fail, {} skip ({} ms)",
            self.total(),
            self.pass,
            self.fail,
            self.skip,
            self.duration_ms
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Axioms,
    Bas,
    Roundtrip,
    Mixing,
    IteratedLimit,
    VlCorpus,
    Lex,
    Typewriter,
    TaggedLine,
    Operators,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Axioms,
        Suite::Bas,
        Suite::Roundtrip,
        Suite::Mixing,
        Suite::IteratedLimit,
        Suite::VlCorpus,
        Suite::Lex,
        Suite::Typewriter,
        Suite::TaggedLine,
        Suite::Operators,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Bas => "bas",
            Suite::Roundtrip => "roundtrip",
            Suite::Mixing => "mixing",
            Suite::IteratedLimit => "iterated-limit",
            Suite::VlCorpus => "vl-corpus",
            Suite::Lex => "lex",
            Suite::Typewriter => "typewriter",
            Suite::TaggedLine => "tagged-line",
            Suite::Operators => "operators",
        }
    }

    pub fn parse(name: &str) -> SuiteResult<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name).ok_or_else(|| SuiteError::UnknownSuite(name.into()))
    }
}

/// Flags shared by the commands; `None` means the suite's default.
#[derive(Clone, Debug, Default)]
pub struct Options {
    pub size: Option<usize>,
    pub seed: u64,
    pub bounds_index: Option<usize>,
    pub bounds_family: Option<usize>,
    pub terms: Option<u64>,
    pub samples: Option<u64>,
}

impl Options {
    fn bounds(&self, index: usize, family: usize) -> Bounds {
        Bounds { index: self.bounds_index.unwrap_or(index), family: self.bounds_family.unwrap_or(family) }
    }
}

fn timed(f: impl FnOnce() -> SuiteResult<SuiteReport>) -> SuiteResult<SuiteReport> {
    let start = Instant::now();
    let mut r = f()?;
    r.duration_ms = start.elapsed().as_millis();
    Ok(r)
}

pub fn run(suite: Suite, o: &Options) -> SuiteResult<SuiteReport> {
    timed(|| match suite {
        Suite::Axioms => axioms(o),
        Suite::Bas => bas(o),
        Suite::Roundtrip => roundtrip_suite(o),
        Suite::Mixing => mixing(o),
        Suite::IteratedLimit => iterated_limit(o),
        Suite::VlCorpus => vl_corpus(o),
        Suite::Lex => lex(),
        Suite::Typewriter => typewriter(o),
        Suite::TaggedLine => tagged_line(),
        Suite::Operators => operators(o),
    })
}

pub fn enumerate(n: usize, classify: bool) -> SuiteResult<SuiteReport> {
    timed(|| {
        let mut r = SuiteReport::new("enumerate", &["structures on n points, topological and Hausdorff counts"]);
        let mut summary = EnumerationSummary::default();
        for s in enumerate_structures(n)? {
            summary.add(&s);
            if classify {
                let tag = match (s.is_topological(), s.is_hausdorff()) {
                    (true, true) => "topological, hausdorff",
                    (true, false) => "topological",
                    (false, true) => "hausdorff",
                    (false, false) => "-",
                };
                r.note(format!("{s:?}: {tag}"));
            }
        }
        let expected = (1u64 << (n.max(1) - 1)).pow(n as u32);
        r.record(summary.total == expected, || format!("total {} differs from (2^(n-1))^n = {expected}", summary.total));
        r.note(format!(
            "n = {n}: total {}, topological {}, hausdorff {}",
            summary.total, summary.topological, summary.hausdorff
        ));
        Ok(r)
    })
}

fn spaces(n: usize) -> SuiteResult<Vec<ConvSpace>> {
    Ok(enumerate_structures(n)?.collect())
}

fn axioms(o: &Options) -> SuiteResult<SuiteReport> {
    let n = o.size.unwrap_or(3);
    let index = o.bounds_index.unwrap_or(3);
    let mut r = SuiteReport::new(
        "axioms",
        &["constant nets converge", "quasi-subnets keep limits", "braids of co-convergent nets converge"],
    );
    let pool = NetAxiomPool::new(n, index);
    for s in spaces(n)? {
        r.record_report(&pool.check(&s), || format!("{s:?}"));
    }
    r.note(format!("all {} spaces on {n} points, nets with index size <= {index}", r.total()));
    Ok(r)
}

fn bas(o: &Options) -> SuiteResult<SuiteReport> {
    let max_n = o.size.unwrap_or(6);
    let count = 200;
    let mut r = SuiteReport::new(
        "bas",
        &[
            "composites of continuous maps are continuous",
            "closure is extensive; open iff complement closed",
            "closed sets and open sets are lattices containing the trivial sets",
        ],
    );
    r.seed = Some(o.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
    for _ in 0..count {
        let n = rng.gen_range(1..=max_n);
        let s = random_space(&mut rng, n);
        let (tn, un) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let t = random_space(&mut rng, tn);
        let u = random_space(&mut rng, un);
        let mut fs: Vec<PointMap> = (0..6).map(|_| random_map(&mut rng, n, tn)).collect();
        let mut gs: Vec<PointMap> = (0..6).map(|_| random_map(&mut rng, tn, un)).collect();
        fs.push(PointMap::constant(n, rng.gen_range(0..tn), tn)?);
        gs.push(PointMap::constant(tn, rng.gen_range(0..un), un)?);
        r.record_report(&verify_bas(&s, &t, &u, &fs, &gs), || format!("{s:?} with {t:?}, {u:?}"));
    }
    r.note(format!("{count} random spaces with at most {max_n} points"));
    Ok(r)
}

fn roundtrip_suite(o: &Options) -> SuiteResult<SuiteReport> {
    let max_n = o.size.unwrap_or(3);
    let index = o.bounds_index.unwrap_or(3);
    let mut r = SuiteReport::new("roundtrip", &["net convergence and filter convergence determine each other"]);
    for n in 1..=max_n {
        let nets: Vec<Net> = enumerate_nets(index, n);
        for s in spaces(n)? {
            r.record_report(&verify_roundtrip(&s, &nets), || format!("{s:?}"));
        }
        r.note(format!("n = {n}: {} nets with index size <= {index}", nets.len()));
    }
    Ok(r)
}

fn mixing(o: &Options) -> SuiteResult<SuiteReport> {
    let n = o.size.unwrap_or(3);
    let bounds = o.bounds(2, 3);
    let mut r = SuiteReport::new(
        "mixing",
        &["the mixing of co-convergent nets converges", "the mixing's tail filter is the meet of the members'"],
    );
    let pool = MixingPool::new(n, bounds);
    r.record_report(pool.lemma_report(), || "tail-filter lemma".into());
    for s in spaces(n)? {
        r.record_report(&pool.check(&s), || format!("{s:?}"));
    }
    r.note(format!(
        "{} families of at most {} nets with index size <= {}; {} lemma cases",
        pool.families(),
        bounds.family,
        bounds.index,
        pool.lemma_report().cases
    ));
    Ok(r)
}

/// `V_a = {a}`, `V_b = {a, b}`, `V_c = {b, c}`.
pub fn chain_space() -> ConvSpace {
    ConvSpace::new(vec![
        PointSet::from_points([0]),
        PointSet::from_points([0, 1]),
        PointSet::from_points([1, 2]),
    ])
    .expect("valid kernels")
}

fn iterated_limit(o: &Options) -> SuiteResult<SuiteReport> {
    let n = o.size.unwrap_or(3);
    let bounds = o.bounds(3, 3);
    let mut r = SuiteReport::new(
        "iterated-limit",
        &["nets of nets converge along reactions exactly on topological spaces"],
    );
    let pool = IteratedLimitPool::new(n, bounds);
    let mut topological = 0;
    for s in spaces(n)? {
        let rep = pool.check(&s);
        topological += s.is_topological() as u64;
        r.record(rep.holds() == s.is_topological(), || {
            format!("{s:?}: iterated limit {} but topological {}", rep.holds(), s.is_topological())
        });
    }
    r.note(format!("{topological} topological spaces among {} (bounds: index {}, family {})", r.total(), bounds.index, bounds.family));
    if n == 3 {
        let s = chain_space();
        let rep = pool.check(&s);
        let ok = match &rep.witness {
            Some(w) => {
                let members_ok = w
                    .members
                    .iter()
                    .zip(&w.inner_limits)
                    .all(|(m, &x)| s.converges_net(m, x).unwrap_or(false));
                let outer = Net::new(w.outer_index.clone(), w.inner_limits.clone(), n)?;
                let outer_ok = s.converges_net(&outer, w.limit)?;
                let reaction_fails = !s.converges_net(&w.reaction, w.limit)?;
                r.note(format!(
                    "witness on {s:?}: inner limits {:?} -> {}, reaction kernel {:?}",
                    w.inner_limits,
                    w.limit,
                    w.reaction.kernel()
                ));
                members_ok && outer_ok && reaction_fails
            }
            None => false,
        };
        r.record(ok, || format!("no verified reaction witness on {s:?}"));
    }
    Ok(r)
}

/// Agreement of every decider on a term in `Q^n`, plus certificate checks.
pub fn check_qvec_term(t: &SeqTerm, horizon: u64) -> SuiteResult<Result<bool, String>> {
    let o = o_limit(t)?;
    let ru = ru_limit(t)?;
    let mk = mackey_limit(t)?;
    let ls = o_limit_limsup(t)?;
    let coord = order_topology_equiv_check(std::slice::from_ref(t))?;
    if !coord.passed() {
        return Ok(Err(coord.failures.join("; ")));
    }
    let ol = o.as_yes().map(|x| x.limit.clone());
    let rl = ru.as_yes().map(|x| x.limit.clone());
    let ml = mk.as_yes().map(|x| x.limit.clone());
    if ol != rl || ol != ml || ol != ls {
        return Ok(Err(format!("{t:?}: order {ol:?}, ru {rl:?}, mackey {ml:?}, limsup {ls:?}")));
    }
    let eps = [qf(1, 2), qf(1, 10), qf(1, 100)];
    if let (Some(o), Some(ru), Some(mk)) = (o.as_yes(), ru.as_yes(), mk.as_yes()) {
        if !o.verify(t, horizon)? {
            return Ok(Err(format!("{t:?}: dominating sequence fails")));
        }
        if !ru.verify(t, &eps, 20)? {
            return Ok(Err(format!("{t:?}: relative uniform thresholds fail")));
        }
        if !mk.verify(t, 50, &eps, 20)? {
            return Ok(Err(format!("{t:?}: Mackey thresholds fail")));
        }
    }
    Ok(Ok(ol.is_some()))
}

fn vl_corpus(o: &Options) -> SuiteResult<SuiteReport> {
    let count = o.terms.unwrap_or(120);
    let max_n = o.size.unwrap_or(6);
    let mut r = SuiteReport::new(
        "vl-corpus",
        &["in Q^n: order limit, coordinatewise limit, relative uniform limit and Mackey limit agree"],
    );
    r.seed = Some(o.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
    let mut convergent = 0;
    for _ in 0..count {
        let n = rng.gen_range(1..=max_n);
        let t = random_term(&mut rng, n, 3);
        match check_qvec_term(&t, 1000)? {
            Ok(c) => {
                convergent += c as u64;
                r.record(true, String::new);
            }
            Err(why) => r.record(false, || why),
        }
    }
    r.note(format!("{count} terms, {convergent} convergent; dominating sequences checked for k <= 1000"));
    Ok(r)
}

fn lex() -> SuiteResult<SuiteReport> {
    let mut r = SuiteReport::new("lex", &["order convergence on the lexicographic plane"]);
    let h10 = SeqTerm::Harmonic(LatticeVector::lex(q(1), q(0)));
    let h01 = SeqTerm::Harmonic(LatticeVector::lex(q(0), q(1)));
    r.record(o_limit(&h10)?.is_no(), || "(1/k, 0) has an order limit".into());
    r.record(ru_limit(&h10)?.is_yes(), || "(1/k, 0) lacks a relative uniform limit".into());
    let o = o_limit(&h01)?;
    let ok = match o.as_yes() {
        Some(l) => l.limit == LatticeVector::lex(q(0), q(0)) && l.verify(&h01, 1000)?,
        None => false,
    };
    r.record(ok, || "(0, 1/k) does not order converge to (0, 0)".into());
    let w = archimedean_witness(Carrier::LexR2);
    let ok = match &w {
        Some((x, u)) => {
            *x == LatticeVector::lex(q(0), q(1))
                && *u == LatticeVector::lex(q(1), q(0))
                && check_witness_upto(x, u, 1000)
                && check_lex_witness_symbolic(x, u)
        }
        None => false,
    };
    r.record(ok, || format!("Archimedean witness {w:?}"));
    let unit = strong_unit_check(Carrier::LexR2);
    r.record(unit.as_ref().is_some_and(|u| !u.archimedean), || "strong unit flag".into());
    r.note("(1/k, 0): no order limit, relative uniform limit (0, 0)".to_string());
    r.note("0 < (0, 1) <= (1, 0)/n for every n".to_string());
    Ok(r)
}

fn pow2_below(n: u64) -> u32 {
    63 - n.max(1).leading_zeros()
}

/// Sample horizon below which recurrence and exit checks are skipped.
const EVIDENCE_HORIZON: u64 = 1000;

fn typewriter(o: &Options) -> SuiteResult<SuiteReport> {
    let horizon = o.terms.unwrap_or(10_000);
    let m = o.samples.unwrap_or(100);
    if horizon == 0 {
        return Err(SuiteError::Option("--terms must be positive".into()));
    }
    let mut r = SuiteReport::new(
        "typewriter",
        &[
            "A_n has measure exactly 1/n",
            "every sample keeps returning to the sets A_n",
            "the subsequence n_k = 2^k has finite mass and every sample leaves it",
        ],
    );
    let rule = SubseqRule::Pow2 { max_k: pow2_below(horizon) };
    let rep = ae_sample_report(&grid_samples(m), horizon, rule)?;
    for n in 1..=horizon {
        r.record(!rep.measure_failures.contains(&n), || format!("A_{n} has the wrong measure"));
    }
    for n in 1..=horizon.min(8) {
        let set = typewriter_set(n)?;
        let pieces: Vec<String> = set.pieces.iter().map(|(a, b)| format!("[{}, {})", fmt_q(a), fmt_q(b))).collect();
        r.note(format!("A_{n} = {} measure {}", pieces.join(" ∪ "), fmt_q(&set.measure())));
    }
    r.record(rep.subseq_mass < q(2), || format!("subsequence mass {}", fmt_q(&rep.subseq_mass)));
    r.note(format!("subsequence {:?}: mass {}", rep.subseq, fmt_q(&rep.subseq_mass)));
    for s in &rep.samples {
        if horizon < EVIDENCE_HORIZON {
            r.skip(format!("recurrence and exit checks need a horizon of at least {EVIDENCE_HORIZON}"));
            continue;
        }
        r.record(s.hits() >= 5 && s.hits_from_100 >= 1, || {
            format!("sample {} hits {} sets, {} from n = 100 on", fmt_q(&s.sample), s.hits(), s.hits_from_100)
        });
        r.record(s.exit_position < rep.subseq.len(), || {
            format!("sample {} is still in the last subsequence set", fmt_q(&s.sample))
        });
    }
    if let (Some(lo), Some(hi)) =
        (rep.samples.iter().map(|s| s.hits()).min(), rep.samples.iter().map(|s| s.hits()).max())
    {
        r.note(format!("{m} samples, horizon {horizon}: between {lo} and {hi} hits each"));
    }
    Ok(r)
}

fn tagged_line() -> SuiteResult<SuiteReport> {
    let mut r = SuiteReport::new(
        "tagged-line",
        &["a convergence on Q(√2) where constants converge and subsequences keep limits but braids fail"],
    );
    let d = tagged_line_demo()?;
    r.record_report(&d.n1, || "constant sequences".into());
    r.record_report(&d.n2, || "subsequences".into());
    r.record(d.members_converge, || "the rational and irrational null sequences should converge".into());
    r.record(!d.braid_converges && d.braid_mixes_tails, || "the braid should not converge".into());
    r.note(format!("{} constants, {} subsequence cases", d.n1.cases, d.n2.cases));
    Ok(r)
}

fn operators(o: &Options) -> SuiteResult<SuiteReport> {
    let matrices = 20;
    let per = o.terms.unwrap_or(50) as usize;
    let max_n = o.size.unwrap_or(4);
    let mut r = SuiteReport::new(
        "operators",
        &["|T|e bounds the image of [-e, e]", "T maps relatively uniformly null sequences to null sequences"],
    );
    r.seed = Some(o.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
    let eps: [Q; 2] = [qf(1, 2), qf(1, 20)];
    for _ in 0..matrices {
        let n = rng.gen_range(1..=max_n);
        let t = random_matrix(&mut rng, n);
        let e = random_positive(&mut rng, n);
        let b = is_order_bounded_operator(&t, &e)?;
        r.record(check_interval_image(&t, &e, &b)?, || format!("{t:?} maps [-e, e] outside [-|T|e, |T|e]"));
        let corpus: Vec<SeqTerm> = (0..per).map(|_| random_term(&mut rng, n, 3)).collect();
        let rep = ru_continuity_check(&t, &corpus, &eps, 10)?;
        r.record_report(&rep, || format!("continuity of {t:?}"));
    }
    r.note(format!("{matrices} matrices, {per} terms each"));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_roundtrip() {
        for s in Suite::ALL {
            assert_eq!(Suite::parse(s.name()).unwrap(), s);
        }
        assert!(matches!(Suite::parse("nope"), Err(SuiteError::UnknownSuite(_))));
    }

    #[test]
    fn enumerate_small() {
        let r = enumerate(2, false).unwrap();
        assert!(r.passed());
        assert!(r.notes[0].contains("total 4, topological 4"));
        assert!(enumerate(6, false).is_err());
        assert_eq!(enumerate(1, true).unwrap().notes.len(), 2);
    }

    #[test]
    fn quick_suites() {
        for s in [Suite::Lex, Suite::TaggedLine] {
            let r = run(s, &Options::default()).unwrap();
            assert!(r.passed(), "{r}");
        }
        let o = Options { size: Some(2), ..Default::default() };
        assert!(run(Suite::Roundtrip, &o).unwrap().passed());
        assert!(run(Suite::Axioms, &o).unwrap().passed());
    }

    #[test]
    fn short_typewriter() {
        let o = Options { terms: Some(1), samples: Some(3), ..Default::default() };
        let r = run(Suite::Typewriter, &o).unwrap();
        assert!(r.passed());
        assert_eq!(r.skip, 3);
        assert!(r.notes.iter().any(|n| n.contains("A_1 = [0, 1) measure 1")));
        let none = run(Suite::Typewriter, &Options { terms: Some(50), samples: Some(0), ..Default::default() }).unwrap();
        assert_eq!(none.pass, 51);
    }
}
