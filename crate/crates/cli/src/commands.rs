//! Batch drivers. Each command maps a selection of groups to a
//! [`RunReport`]; groups run in parallel and results are sorted by id.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use commcrit::arith::prime_divisors;
use commcrit::criterion::{gamma_theorem_check, probe_insoluble, theorem_check};
use commcrit::permcore::DEFAULT_CAP;
use commcrit::structure::{
    derived_series, fitting_subgroup, is_metanilpotent, lower_central_series,
    lower_fitting_series, normal_subgroups, sylow_subgroups,
};
use commcrit::verification::{
    check_bbb, check_foca, check_foca_xclo, check_from_lemma, check_intersection_lemma,
    check_meta, p_element_sets, LemmaId, LemmaReport,
};
use commcrit::words::{
    construct_xclo, derived_from_closed_set, random_closed_generating_set, WordKind, XcloTrace,
};
use commcrit::{GroupError, PermGroup};

use crate::corpus::{corpus_hash, select, Selection};
use crate::descriptor::{LoadedGroup, Tag};
use crate::error::CliError;
use crate::report::{Entry, GroupResult, LemmaTally, RunReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Theorem,
    Focal,
    Lemmas,
    Xclo,
    Probe,
    Series,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Theorem => "theorem",
            Command::Focal => "focal",
            Command::Lemmas => "lemmas",
            Command::Xclo => "xclo",
            Command::Probe => "probe",
            Command::Series => "series",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Inclusive depth range, written `2`, `1..3` or `1..=3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KRange {
    pub lo: usize,
    pub hi: usize,
}

impl KRange {
    pub fn iter(self) -> RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

impl FromStr for KRange {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let bad = || CliError::Usage(format!("invalid depth range `{s}`"));
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let k = num(s)?;
                (k, k)
            }
        };
        if lo > hi {
            return Err(bad());
        }
        Ok(KRange { lo, hi })
    }
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub k: KRange,
    pub kind: WordKind,
    pub cap: usize,
    pub seed: u64,
    pub strict: bool,
    pub closed_set_trials: usize,
    /// Worker threads; 0 uses the rayon default.
    pub jobs: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            k: KRange { lo: 1, hi: 3 },
            kind: WordKind::Delta,
            cap: DEFAULT_CAP,
            seed: 0,
            strict: false,
            closed_set_trials: 50,
            jobs: 0,
        }
    }
}

/// Loads the selection and runs `cmd` over it.
pub fn run(cmd: Command, selection: &Selection, opts: &RunOptions) -> Result<RunReport, CliError> {
    if opts.kind == WordKind::Gamma && opts.k.lo == 0 {
        return Err(CliError::Usage("gamma words start at k = 1".into()));
    }
    let mut selection = selection.clone();
    if cmd == Command::Probe && selection.tag.is_none() {
        selection.tag = Some(Tag::Insoluble);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    pool.install(|| {
        let groups = select(&selection)?;
        Ok(run_on(cmd, &groups, opts))
    })
}

/// Runs `cmd` over already loaded groups.
pub fn run_on(cmd: Command, groups: &[LoadedGroup], opts: &RunOptions) -> RunReport {
    let mut results: Vec<GroupResult> = groups
        .par_iter()
        .map(|g| {
            let entries = group_entries(cmd, g, opts);
            GroupResult {
                id: g.id().to_string(),
                order: g.group.order(),
                degree: g.group.degree(),
                soluble: g.soluble,
                consistent: entries.iter().all(|e| e.ok(opts.strict)),
                entries,
            }
        })
        .collect();
    results.sort_by(|a, b| a.id.cmp(&b.id));
    RunReport {
        tool: "commcrit".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: cmd.name().into(),
        corpus_hash: corpus_hash(groups),
        seed: opts.seed,
        cap: opts.cap,
        kind: opts.kind,
        k_range: [opts.k.lo, opts.k.hi],
        strict: opts.strict,
        aggregate: RunReport::aggregate(&results),
        groups: results,
    }
}

fn group_entries(cmd: Command, g: &LoadedGroup, opts: &RunOptions) -> Vec<Entry> {
    let mut out = Vec::new();
    let res = match cmd {
        Command::Theorem => theorem_entries(g, opts, &mut out),
        Command::Focal => focal_entries(g, opts, &mut out),
        Command::Lemmas => lemma_entries(g, opts, &mut out),
        Command::Xclo => xclo_entries(g, opts, &mut out),
        Command::Probe => probe_entries(g, opts, &mut out),
        Command::Series => series_entries(g, &mut out),
    };
    if let Err(e) = res {
        out.push(Entry::Error {
            message: format!("{}: {e}", g.id()),
        });
    }
    out
}

type Step = Result<(), GroupError>;

fn theorem_entries(g: &LoadedGroup, opts: &RunOptions, out: &mut Vec<Entry>) -> Step {
    for k in opts.k.iter() {
        match opts.kind {
            WordKind::Gamma => out.push(Entry::Theorem {
                k,
                kind: WordKind::Gamma,
                result: gamma_theorem_check(&g.group, k, opts.cap)?,
            }),
            WordKind::Delta if g.soluble => out.push(Entry::Theorem {
                k,
                kind: WordKind::Delta,
                result: theorem_check(&g.group, k, opts.cap)?,
            }),
            WordKind::Delta => {
                let result = probe_insoluble(&g.group, k, opts.cap)?;
                out.push(Entry::Necessity {
                    k,
                    consistent: !result.derived_term_nilpotent || result.report.holds,
                    result,
                });
            }
        }
    }
    Ok(())
}

fn focal_entries(g: &LoadedGroup, opts: &RunOptions, out: &mut Vec<Entry>) -> Step {
    if !g.soluble {
        out.push(Entry::Skipped {
            reason: "insoluble".into(),
        });
        return Ok(());
    }
    let trace = construct_xclo(&g.group, opts.seed, opts.cap)?;
    for i in opts.k.iter() {
        for p in prime_divisors(g.group.order()) {
            out.push(Entry::Lemma {
                result: check_foca(&g.group, i, p, opts.cap)?,
            });
            out.push(Entry::Lemma {
                result: check_foca_xclo(&g.group, &trace, i, p, opts.cap)?,
            });
        }
    }
    Ok(())
}

/// Files an outcome: inadmissible instances are counted, other errors
/// propagate.
fn tally(t: &mut LemmaTally, r: Result<LemmaReport, GroupError>) -> Step {
    match r {
        Ok(r) => t.record(r),
        Err(GroupError::HypothesisNotSatisfied(_)) => t.inadmissible += 1,
        Err(e) => return Err(e),
    }
    Ok(())
}

/// All five lemma checks over generated instances: every normal subgroup
/// `N` (and pair `N ≤ L`), every prime, and the `p`-element normal subsets
/// from [`p_element_sets`].
pub fn lemma_tallies(g: &PermGroup, soluble: bool, opts: &RunOptions) -> Result<Vec<LemmaTally>, GroupError> {
    let cap = opts.cap;
    let primes = prime_divisors(g.order());
    let trace: Option<XcloTrace> = if soluble {
        Some(construct_xclo(g, opts.seed, cap)?)
    } else {
        None
    };
    let normals = normal_subgroups(g, cap)?;
    let mut inter = LemmaTally::new(LemmaId::Intersection);
    let mut from = LemmaTally::new(LemmaId::From);
    let mut foca = LemmaTally::new(LemmaId::Foca);
    let mut meta = LemmaTally::new(LemmaId::Meta);
    let mut bbb = LemmaTally::new(LemmaId::Bbb);

    for &p in &primes {
        let sets = p_element_sets(g, p, opts.k.hi, trace.as_ref(), cap)?;
        for (_, x) in &sets {
            for n in &normals {
                tally(&mut inter, check_intersection_lemma(g, n, p, x, cap))?;
                for l in normals.iter().filter(|l| n.is_subgroup_of(l)) {
                    tally(&mut from, check_from_lemma(g, n, l, p, x, cap))?;
                }
            }
        }
    }
    if let Some(trace) = &trace {
        for i in opts.k.iter() {
            for &p in &primes {
                tally(&mut foca, check_foca(g, i, p, cap))?;
                tally(&mut foca, check_foca_xclo(g, trace, i, p, cap))?;
            }
        }
    }
    if is_metanilpotent(g)? {
        for &p in &primes {
            tally(&mut meta, check_meta(g, p, cap))?;
        }
    }
    for k in opts.k.iter() {
        tally(&mut bbb, check_bbb(g, k, cap))?;
    }
    Ok(vec![inter, from, foca, meta, bbb])
}

fn lemma_entries(g: &LoadedGroup, opts: &RunOptions, out: &mut Vec<Entry>) -> Step {
    for result in lemma_tallies(&g.group, g.soluble, opts)? {
        out.push(Entry::LemmaTally { result });
    }
    Ok(())
}

/// Seeds `first..first + trials` of random commutator-closed generating
/// sets, returning those for which `⟨[x_1, x_2]⟩ ≠ G'`.
pub fn closed_set_failures(g: &PermGroup, first: u64, trials: usize, cap: usize) -> Result<Vec<u64>, GroupError> {
    let derived = derived_series(g)?.term(1).clone();
    let mut failed = Vec::new();
    for seed in (first..).take(trials) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_closed_generating_set(g, &mut rng, cap)?;
        match derived_from_closed_set(g, &x) {
            Ok(h) if h == derived => {}
            Ok(_) | Err(GroupError::InvariantViolated(_)) => failed.push(seed),
            Err(e) => return Err(e),
        }
    }
    Ok(failed)
}

fn xclo_entries(g: &LoadedGroup, opts: &RunOptions, out: &mut Vec<Entry>) -> Step {
    if g.soluble {
        out.push(Entry::Xclo {
            summary: construct_xclo(&g.group, opts.seed, opts.cap)?.summary(),
        });
    } else {
        out.push(Entry::Skipped {
            reason: "insoluble: no Sylow basis".into(),
        });
    }
    out.push(Entry::ClosedSets {
        trials: opts.closed_set_trials,
        first_seed: opts.seed,
        failed_seeds: closed_set_failures(&g.group, opts.seed, opts.closed_set_trials, opts.cap)?,
    });
    Ok(())
}

fn probe_entries(g: &LoadedGroup, opts: &RunOptions, out: &mut Vec<Entry>) -> Step {
    for k in opts.k.iter() {
        out.push(Entry::Probe {
            k,
            result: probe_insoluble(&g.group, k, opts.cap)?,
        });
    }
    Ok(())
}

fn series_entries(g: &LoadedGroup, out: &mut Vec<Entry>) -> Step {
    let sylow_orders: BTreeMap<u64, u64> = sylow_subgroups(&g.group, DEFAULT_CAP)?
        .into_iter()
        .map(|(p, s)| (p, s.order()))
        .collect();
    out.push(Entry::Series {
        derived: derived_series(&g.group)?.summary(),
        lower_central: lower_central_series(&g.group)?.summary(),
        lower_fitting: lower_fitting_series(&g.group)?.summary(),
        fitting_order: fitting_subgroup(&g.group, DEFAULT_CAP)?.order(),
        sylow_orders,
    });
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sel(ids: &[&str]) -> Selection {
        Selection {
            ids: ids.iter().map(|s| s.to_string()).collect(),
            ..Default::default()
        }
    }

    #[test]
    fn k_range_syntax() {
        assert_eq!("2".parse::<KRange>().unwrap(), KRange { lo: 2, hi: 2 });
        assert_eq!("1..3".parse::<KRange>().unwrap(), KRange { lo: 1, hi: 3 });
        assert_eq!("1..=4".parse::<KRange>().unwrap(), KRange { lo: 1, hi: 4 });
        assert!("3..1".parse::<KRange>().is_err());
        assert!("x".parse::<KRange>().is_err());
    }

    #[test]
    fn series_on_s4() {
        let r = run(Command::Series, &sel(&["S4"]), &RunOptions::default()).unwrap();
        match &r.groups[0].entries[0] {
            Entry::Series { derived, fitting_order, .. } => {
                assert_eq!(derived.orders, vec![24, 12, 4, 1]);
                assert_eq!(*fitting_order, 4);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn theorem_mixed_selection() {
        let r = run(Command::Theorem, &sel(&["S4", "A5", "D8"]), &RunOptions::default()).unwrap();
        assert!(r.aggregate.consistent);
        let a5 = r.groups.iter().find(|g| g.id == "A5").unwrap();
        assert!(matches!(a5.entries[0], Entry::Necessity { .. }));
        let gamma = RunOptions {
            kind: WordKind::Gamma,
            ..Default::default()
        };
        assert!(run(Command::Theorem, &sel(&["S4", "A5"]), &gamma).unwrap().aggregate.consistent);
        let bad = RunOptions {
            kind: WordKind::Gamma,
            k: KRange { lo: 0, hi: 1 },
            ..Default::default()
        };
        assert!(matches!(run(Command::Theorem, &sel(&["S4"]), &bad), Err(CliError::Usage(_))));
    }

    #[test]
    fn probe_defaults_to_insoluble() {
        let r = run(Command::Probe, &Selection::default(), &RunOptions { k: KRange { lo: 1, hi: 1 }, ..Default::default() }).unwrap();
        assert!(r.groups.iter().all(|g| !g.soluble));
        assert_eq!(r.groups.len(), 5);
    }

    #[test]
    fn lemmas_on_s4() {
        let r = run(Command::Lemmas, &sel(&["S4"]), &RunOptions::default()).unwrap();
        assert!(r.aggregate.consistent);
        let strict = RunOptions {
            strict: true,
            ..Default::default()
        };
        // some generated pairs fail the quotient hypothesis
        let s = run(Command::Lemmas, &sel(&["S4"]), &strict).unwrap();
        assert_eq!(s.exit_code(), 1);
    }
}
