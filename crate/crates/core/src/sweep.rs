//! Exhaustive cross-validation over every Nakayama algebra of small rank.
//!
//! Each generated algebra is pushed through every enabled check. Checks whose ground
//! truth rests on an interpretation (the induced-path reading of the vertex-deletion
//! ordering, S-connectedness when some projective dimension is infinite, the
//! hook/denouement pd shortcuts on cyclic quivers) report disagreements in a separate
//! bucket instead of failing the sweep.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Generator, NakayamaAlgebra, QuiverKind, QuiverSpec};
use crate::counting::{
    addable_generators, closed_form_one_generator, count_formula, count_with_maximum, factorial,
    ideal_minus, Decider, Reduced,
};
use crate::error::{Error, Result};
use crate::format::write_algebra;
use crate::homology::{
    gld_ge3_criterion, global_dimension, pd2_or_hereditary, pd_simple_criterion, resolve,
    s_connected, simple_proj_dims, syzygy, ProjDim,
};
use crate::qh::{
    all_orderings, gs_ordering_exists, is_q_ordering_criterion, is_quasi_hereditary, oracle_verdict,
    q_set_partition,
};

/// Largest rank a sweep will enumerate all orderings for.
pub const MAX_SWEEP_N: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// Hood criterion agrees with the Weyl-module oracle on every ordering.
    CriterionOracle,
    /// Nonempty Q-set iff some ordering passes the oracle.
    QSet,
    /// Hereditary or a simple of pd 2, iff quasi-hereditary.
    Pd2,
    /// S-connected iff quasi-hereditary.
    SConnected,
    /// A vertex-deletion ordering exists iff quasi-hereditary.
    Gs,
    /// Iteration formula equals enumeration; closed form for principal ideals.
    Formula,
    /// `3q ≤ 2·n!`, equality exactly for one relation of length 3.
    Bound,
    /// Adding a relation strictly lowers `q`.
    Monotone,
    /// Hook/denouement pd classes agree with resolutions; syzygy length bookkeeping.
    PdCriterion,
    /// Hood/interior overlap decides `gld ≥ 3`.
    GldCriterion,
    /// `n · q_x(A) = q(I_x̂)` for every vertex.
    FixedMax,
}

impl Check {
    pub const ALL: [Check; 11] = [
        Check::CriterionOracle,
        Check::QSet,
        Check::Pd2,
        Check::SConnected,
        Check::Gs,
        Check::Formula,
        Check::Bound,
        Check::Monotone,
        Check::PdCriterion,
        Check::GldCriterion,
        Check::FixedMax,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::CriterionOracle => "criterion-oracle",
            Check::QSet => "qset",
            Check::Pd2 => "pd2",
            Check::SConnected => "s-connected",
            Check::Gs => "gs",
            Check::Formula => "formula",
            Check::Bound => "bound",
            Check::Monotone => "monotone",
            Check::PdCriterion => "pd-criterion",
            Check::GldCriterion => "gld-criterion",
            Check::FixedMax => "fixed-max",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        let alias = match s {
            "a" => Some(Check::CriterionOracle),
            "b" => Some(Check::QSet),
            "c" => Some(Check::Pd2),
            "d" => Some(Check::SConnected),
            "e" => Some(Check::Gs),
            "f" => Some(Check::Formula),
            "g" => Some(Check::Bound),
            "h" => Some(Check::Monotone),
            _ => None,
        };
        alias
            .or_else(|| Check::ALL.into_iter().find(|c| c.name() == s))
            .ok_or_else(|| format!("unknown check {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepKind {
    Linear,
    Cyclic,
    Both,
}

impl SweepKind {
    fn kinds(self) -> Vec<QuiverKind> {
        match self {
            SweepKind::Linear => vec![QuiverKind::Linear],
            SweepKind::Cyclic => vec![QuiverKind::Cyclic],
            SweepKind::Both => vec![QuiverKind::Linear, QuiverKind::Cyclic],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub kind: SweepKind,
    pub n_min: usize,
    pub n_max: usize,
    /// Longest cyclic relation generated; `None` means `n + 2`.
    pub max_len_cyclic: Option<usize>,
    pub checks: BTreeSet<Check>,
    pub fail_fast: bool,
}

impl SweepConfig {
    pub fn new(kind: SweepKind, n_min: usize, n_max: usize) -> Self {
        SweepConfig {
            kind,
            n_min,
            n_max,
            max_len_cyclic: None,
            checks: Check::ALL.into_iter().collect(),
            fail_fast: false,
        }
    }

    pub fn with_checks(mut self, checks: impl IntoIterator<Item = Check>) -> Self {
        self.checks = checks.into_iter().collect();
        self
    }

    fn validate(&self) -> Result<()> {
        if self.n_min < 2 || self.n_max > MAX_SWEEP_N || self.n_min > self.n_max {
            return Err(Error::TooLarge { n: self.n_max.max(self.n_min), cap: MAX_SWEEP_N });
        }
        Ok(())
    }

    fn max_len(&self, n: usize) -> usize {
        self.max_len_cyclic.unwrap_or(n + 2)
    }
}

/// A disagreement, with everything needed to reproduce it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Failure {
    pub algebra: String,
    pub check: Check,
    pub ordering: Option<String>,
    pub expected: String,
    pub got: String,
}

/// One line of the per-algebra table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgebraRow {
    pub kind: QuiverKind,
    pub n: usize,
    pub generators: String,
    pub x0: usize,
    pub x1: usize,
    pub x2: usize,
    pub quasi_hereditary: bool,
    pub q: String,
    pub ratio: String,
    pub gld: String,
    pub checks_passed: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckTally {
    pub agreed: usize,
    pub total: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SweepResult {
    pub algebras_checked: usize,
    pub orderings_checked: u64,
    pub failures: Vec<Failure>,
    /// Disagreements on checks that rest on an interpretation.
    pub interpretive: Vec<Failure>,
    /// Per check: instances that agreed out of those evaluated.
    pub tallies: BTreeMap<Check, CheckTally>,
    /// `q/n!` in lowest terms -> number of algebras.
    pub histogram: BTreeMap<String, usize>,
    pub rows: Vec<AlgebraRow>,
}

impl SweepResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failures_for(&self, check: Check) -> usize {
        self.failures.iter().filter(|f| f.check == check).count()
    }

    pub fn interpretive_for(&self, check: Check) -> usize {
        self.interpretive.iter().filter(|f| f.check == check).count()
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("kind\tn\tgenerators\tx0\tx1\tx2\tqh\tq\tq/n!\tgld\tchecks-passed\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                r.kind,
                r.n,
                r.generators,
                r.x0,
                r.x1,
                r.x2,
                r.quasi_hereditary,
                r.q,
                r.ratio,
                r.gld,
                r.checks_passed
            ));
        }
        out
    }

    fn merge(&mut self, part: AlgebraOutcome) {
        self.algebras_checked += 1;
        self.orderings_checked += part.orderings;
        self.failures.extend(part.failures);
        self.interpretive.extend(part.interpretive);
        for (check, agreed) in part.evaluated {
            let t = self.tallies.entry(check).or_default();
            t.total += 1;
            t.agreed += agreed as usize;
        }
        *self.histogram.entry(part.row.ratio.clone()).or_default() += 1;
        self.rows.push(part.row);
    }
}

/// Every minimal relation set on the given quiver, in canonical order: linear quivers
/// include the empty set, cyclic ones use relation lengths `3..=max_len`.
pub fn enumerate_algebras(kind: QuiverKind, n: usize, max_len: usize) -> Result<Vec<NakayamaAlgebra>> {
    let quiver = QuiverSpec::new(kind, n)?;
    let windows: Vec<Generator> = match kind {
        QuiverKind::Linear => (1..=n)
            .flat_map(|h| (3..=n + 1 - h).map(move |l| Generator::new(h, l)))
            .collect(),
        QuiverKind::Cyclic => (1..=n)
            .flat_map(|h| (3..=max_len).map(move |l| Generator::new(h, l)))
            .collect(),
    };

    fn extend(
        quiver: QuiverSpec,
        windows: &[Generator],
        start: usize,
        chosen: &mut Vec<Generator>,
        out: &mut Vec<NakayamaAlgebra>,
    ) {
        if !(quiver.is_cyclic() && chosen.is_empty()) {
            out.push(NakayamaAlgebra::new(quiver, chosen.clone()).expect("antichains are minimal"));
        }
        for i in start..windows.len() {
            let w = windows[i];
            if chosen.iter().any(|c| c.contains(&w, quiver) || w.contains(c, quiver)) {
                continue;
            }
            chosen.push(w);
            extend(quiver, windows, i + 1, chosen, out);
            chosen.pop();
        }
    }

    let mut out = Vec::new();
    extend(quiver, &windows, 0, &mut Vec::new(), &mut out);
    Ok(out)
}

struct AlgebraOutcome {
    orderings: u64,
    failures: Vec<Failure>,
    interpretive: Vec<Failure>,
    evaluated: Vec<(Check, bool)>,
    row: AlgebraRow,
}

struct Recorder<'a> {
    text: String,
    checks: &'a BTreeSet<Check>,
    failures: Vec<Failure>,
    interpretive: Vec<Failure>,
    evaluated: Vec<(Check, bool)>,
}

impl Recorder<'_> {
    fn enabled(&self, c: Check) -> bool {
        self.checks.contains(&c)
    }

    fn record(&mut self, check: Check, interpretive: bool, ordering: Option<String>, expected: String, got: String) {
        let ok = expected == got;
        self.evaluated.push((check, ok));
        if !ok {
            let f = Failure { algebra: self.text.clone(), check, ordering, expected, got };
            if interpretive {
                self.interpretive.push(f);
            } else {
                self.failures.push(f);
            }
        }
    }

    fn agree(&mut self, check: Check, interpretive: bool, expected: impl ToString, got: impl ToString) {
        self.record(check, interpretive, None, expected.to_string(), got.to_string());
    }
}

fn ratio(q: &BigUint, n_factorial: &BigUint) -> String {
    let g = q.gcd(n_factorial);
    if q == &BigUint::from(0u32) {
        return "0".into();
    }
    format!("{}/{}", q / &g, n_factorial / &g)
}

fn check_algebra(a: &NakayamaAlgebra, checks: &BTreeSet<Check>) -> AlgebraOutcome {
    let n = a.n();
    let mut rec = Recorder {
        text: write_algebra(a),
        checks,
        failures: Vec::new(),
        interpretive: Vec::new(),
        evaluated: Vec::new(),
    };
    let part = q_set_partition(a);
    let qh = !part.x.is_empty();
    let cyclic = a.quiver().is_cyclic();

    let mut q_enum: u64 = 0;
    let mut any_oracle_pass = false;
    let mut ordering_mismatches = 0usize;
    for ord in all_orderings(n) {
        let criterion = is_q_ordering_criterion(a, &ord);
        let verdict = oracle_verdict(a, &ord);
        q_enum += criterion as u64;
        any_oracle_pass |= verdict.is_q_ordering();
        if rec.enabled(Check::CriterionOracle) && criterion != verdict.is_q_ordering() {
            ordering_mismatches += 1;
            rec.failures.push(Failure {
                algebra: rec.text.clone(),
                check: Check::CriterionOracle,
                ordering: Some(ord.to_string()),
                expected: format!("oracle: {verdict}"),
                got: format!("criterion: {criterion}"),
            });
        }
    }
    if rec.enabled(Check::CriterionOracle) {
        rec.evaluated.push((Check::CriterionOracle, ordering_mismatches == 0));
    }
    let q = BigUint::from(q_enum);
    let n_factorial = factorial(n);

    if rec.enabled(Check::QSet) {
        rec.agree(Check::QSet, false, any_oracle_pass, qh);
    }

    let pds = simple_proj_dims(a);
    let gld = global_dimension(a);
    if rec.enabled(Check::Pd2) {
        rec.agree(Check::Pd2, false, qh, pd2_or_hereditary(a));
    }
    if rec.enabled(Check::SConnected) {
        rec.agree(Check::SConnected, gld.is_none(), qh, s_connected(a));
    }
    if rec.enabled(Check::Gs) {
        rec.agree(Check::Gs, true, qh, gs_ordering_exists(a));
    }

    if rec.enabled(Check::Formula) {
        let formula = count_formula(a).map(|q| q.to_string()).unwrap_or_else(|e| e.to_string());
        rec.agree(Check::Formula, false, &q, formula);
        if let [g] = a.generators() {
            rec.agree(Check::Formula, false, &q, closed_form_one_generator(a.quiver(), *g));
        }
    }

    if rec.enabled(Check::Bound) {
        if a.is_hereditary() {
            rec.agree(Check::Bound, false, &n_factorial, &q);
        } else {
            let three_q = &q * 3u32;
            let two_nf = &n_factorial * 2u32;
            rec.agree(Check::Bound, false, true, three_q <= two_nf);
            let principal3 = matches!(a.generators(), [g] if g.length == 3);
            rec.agree(Check::Bound, false, principal3, three_q == two_nf);
        }
    }

    if rec.enabled(Check::Monotone) && qh {
        for g in addable_generators(a) {
            let enlarged = a.with_generator(g).expect("addable");
            let q_big: u64 = (1..=n).map(|x| count_with_maximum(&enlarged, x, Decider::Criterion)).sum();
            let absorbed: Vec<String> = a
                .generators()
                .iter()
                .filter(|old| !enlarged.generators().contains(old))
                .map(|old| old.to_string())
                .collect();
            let note = if absorbed.is_empty() { String::new() } else { format!(" (absorbs {})", absorbed.join(",")) };
            rec.record(
                Check::Monotone,
                false,
                None,
                format!("q drops below {q_enum} after adding {g}"),
                if q_big < q_enum {
                    format!("q drops below {q_enum} after adding {g}")
                } else {
                    format!("q = {q_big} after adding {g}{note}")
                },
            );
        }
    }

    if rec.enabled(Check::PdCriterion) {
        for s in a.vertices() {
            let class = pd_simple_criterion(a, s);
            let pd = pds[s - 1];
            rec.record(
                Check::PdCriterion,
                cyclic,
                None,
                format!("pd({s}) = {pd}"),
                if class.matches(pd) { format!("pd({s}) = {pd}") } else { format!("pd({s}) class {class}") },
            );
            let trace = resolve(a, a.simple(s)).expect("simples are modules").expect("nonzero");
            for m in trace.steps.iter().filter(|m| !a.is_projective(**m)) {
                let omega = syzygy(a, *m).expect("nonzero module");
                rec.agree(Check::PdCriterion, false, a.projective_len(m.top), m.len + omega.len);
            }
        }
    }

    if rec.enabled(Check::GldCriterion) {
        let big = gld.is_none_or(|d| d >= 3);
        rec.agree(Check::GldCriterion, cyclic, big, gld_ge3_criterion(a));
    }

    if rec.enabled(Check::FixedMax) {
        for x in a.vertices() {
            let with_max = count_with_maximum(a, x, Decider::Criterion);
            let expected = match ideal_minus(a, x) {
                Err(_) => 0,
                Ok(Reduced::FreeLinear { n }) => factorial(n).to_u64().unwrap(),
                Ok(Reduced::Algebra(b)) => {
                    (1..=n).map(|y| count_with_maximum(&b, y, Decider::Criterion)).sum()
                }
            };
            rec.record(
                Check::FixedMax,
                false,
                None,
                format!("n*q_{x} = {expected}"),
                format!("n*q_{x} = {}", n as u64 * with_max),
            );
        }
    }

    let gens: Vec<String> = a.generators().iter().map(|g| g.to_string()).collect();
    let row = AlgebraRow {
        kind: a.kind(),
        n,
        generators: if gens.is_empty() { "-".into() } else { gens.join(",") },
        x0: part.x0.len(),
        x1: part.x1.len(),
        x2: part.x2.len(),
        quasi_hereditary: qh,
        ratio: ratio(&q, &n_factorial),
        q: q.to_string(),
        gld: gld.map_or_else(|| ProjDim::Infinite.to_string(), |d| d.to_string()),
        checks_passed: rec.failures.is_empty(),
    };
    debug_assert_eq!(is_quasi_hereditary(a), qh);
    AlgebraOutcome {
        orderings: n_factorial.to_u64().unwrap(),
        failures: rec.failures,
        interpretive: rec.interpretive,
        evaluated: rec.evaluated,
        row,
    }
}

/// Runs every enabled check over every algebra in the configured range. The result is
/// identical to a sequential run: algebras are processed in parallel and merged in
/// canonical order.
pub fn cross_validate(config: &SweepConfig) -> Result<SweepResult> {
    config.validate()?;
    let mut result = SweepResult::default();
    for kind in config.kind.kinds() {
        for n in config.n_min..=config.n_max {
            let algebras = enumerate_algebras(kind, n, config.max_len(n))?;
            let outcomes: Vec<AlgebraOutcome> =
                algebras.par_iter().map(|a| check_algebra(a, &config.checks)).collect();
            for outcome in outcomes {
                let failed = !outcome.failures.is_empty();
                result.merge(outcome);
                if failed && config.fail_fast {
                    return Ok(result);
                }
            }
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent count: all subsets of windows, filtered to antichains.
    fn brute_count(kind: QuiverKind, n: usize, max_len: usize) -> usize {
        let quiver = QuiverSpec::new(kind, n).unwrap();
        let mut windows = Vec::new();
        for h in 1..=n {
            for l in 3..=max_len {
                if kind == QuiverKind::Cyclic || h + l - 1 <= n {
                    windows.push(Generator::new(h, l));
                }
            }
        }
        (0u64..1 << windows.len())
            .filter(|mask| {
                let chosen: Vec<_> = (0..windows.len()).filter(|i| mask & (1 << i) != 0).map(|i| windows[i]).collect();
                if kind == QuiverKind::Cyclic && chosen.is_empty() {
                    return false;
                }
                chosen.iter().enumerate().all(|(i, a)| {
                    chosen.iter().enumerate().all(|(j, b)| i == j || !a.contains(b, quiver))
                })
            })
            .count()
    }

    #[test]
    fn enumeration_examples() {
        let l3 = enumerate_algebras(QuiverKind::Linear, 3, 0).unwrap();
        assert_eq!(l3.len(), 2);
        assert!(l3[0].generators().is_empty());
        assert_eq!(l3[1].generators(), &[Generator::new(1, 3)]);
        assert_eq!(enumerate_algebras(QuiverKind::Linear, 4, 0).unwrap().len(), 5);
        let c2: Vec<Vec<Generator>> = enumerate_algebras(QuiverKind::Cyclic, 2, 3)
            .unwrap()
            .iter()
            .map(|a| a.generators().to_vec())
            .collect();
        assert_eq!(
            c2,
            vec![
                vec![Generator::new(1, 3)],
                vec![Generator::new(1, 3), Generator::new(2, 3)],
                vec![Generator::new(2, 3)],
            ]
        );
    }

    #[test]
    fn enumeration_matches_subset_brute_force() {
        for n in 2..=6 {
            let got = enumerate_algebras(QuiverKind::Linear, n, 0).unwrap();
            assert_eq!(got.len(), brute_count(QuiverKind::Linear, n, n), "linear {n}");
        }
        for (n, max_len) in [(2, 4), (3, 5), (4, 5)] {
            let got = enumerate_algebras(QuiverKind::Cyclic, n, max_len).unwrap();
            assert_eq!(got.len(), brute_count(QuiverKind::Cyclic, n, max_len), "cyclic {n}");
        }
        let all = enumerate_algebras(QuiverKind::Cyclic, 4, 6).unwrap();
        let distinct: BTreeSet<Vec<Generator>> = all.iter().map(|a| a.generators().to_vec()).collect();
        assert_eq!(distinct.len(), all.len());
    }

    #[test]
    fn check_names_round_trip() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>(), Ok(c));
        }
        assert_eq!("a".parse::<Check>(), Ok(Check::CriterionOracle));
        assert!("zz".parse::<Check>().is_err());
    }

    #[test]
    fn config_limits() {
        assert!(cross_validate(&SweepConfig::new(SweepKind::Linear, 2, 9)).is_err());
        assert!(cross_validate(&SweepConfig::new(SweepKind::Linear, 1, 3)).is_err());
    }

    #[test]
    fn small_linear_sweep_is_deterministic() {
        let config = SweepConfig::new(SweepKind::Linear, 2, 4);
        let first = cross_validate(&config).unwrap();
        // The only failures at this size come from adding a path that absorbs 1:4.
        assert!(first.failures.iter().all(|f| f.check == Check::Monotone), "{:?}", first.failures);
        let monotone: Vec<&str> = first.failures.iter().map(|f| f.got.as_str()).collect();
        assert_eq!(monotone, ["q = 16 after adding 1:3 (absorbs 1:4)", "q = 16 after adding 2:3 (absorbs 1:4)"]);
        assert_eq!(first.orderings_checked, 2 + 2 * 6 + 5 * 24);
        assert_eq!(first, cross_validate(&config).unwrap());
        assert_eq!(first.rows.len(), first.algebras_checked);
        assert!(first.to_tsv().lines().count() == first.rows.len() + 1);
    }

    #[test]
    fn histogram_has_two_thirds_for_principal_length_three() {
        let r = cross_validate(&SweepConfig::new(SweepKind::Linear, 5, 5).with_checks([Check::Bound])).unwrap();
        let principal3 = r.rows.iter().filter(|row| row.generators.split(',').count() == 1 && row.generators.ends_with(":3")).count();
        assert_eq!(principal3, 3);
        assert!(r.histogram["2/3"] >= principal3);
        assert!(r.rows.iter().filter(|row| row.ratio == "2/3").all(|row| row.generators.ends_with(":3") && !row.generators.contains(',')));
    }
}
