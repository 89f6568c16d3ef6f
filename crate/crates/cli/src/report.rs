//! Run reports: per-group entries, aggregate verdicts and rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use commcrit::criterion::{ProbeReport, TheoremCheck};
use commcrit::structure::SeriesSummary;
use commcrit::verification::{LemmaId, LemmaReport};
use commcrit::words::{WordKind, XcloSummary};

/// Outcome counts for one lemma over all generated instances of a group.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaTally {
    pub lemma: LemmaId,
    pub checked: u64,
    pub held: u64,
    /// Instances rejected by the lemma's hypotheses.
    pub inadmissible: u64,
    /// Reports with `holds = false`; each names a defect.
    pub failures: Vec<LemmaReport>,
}

impl LemmaTally {
    pub fn new(lemma: LemmaId) -> Self {
        LemmaTally {
            lemma,
            checked: 0,
            held: 0,
            inadmissible: 0,
            failures: Vec::new(),
        }
    }

    pub fn record(&mut self, r: LemmaReport) {
        self.checked += 1;
        if r.holds {
            self.held += 1;
        } else {
            self.failures.push(r);
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum Entry {
    Theorem {
        k: usize,
        kind: WordKind,
        result: TheoremCheck,
    },
    /// Insoluble group under the δ-theorem command: only
    /// "`G^(k)` nilpotent ⟹ condition holds" is required.
    Necessity {
        k: usize,
        result: ProbeReport,
        consistent: bool,
    },
    Probe {
        k: usize,
        result: ProbeReport,
    },
    Lemma {
        result: LemmaReport,
    },
    LemmaTally {
        result: LemmaTally,
    },
    Xclo {
        summary: XcloSummary,
    },
    ClosedSets {
        trials: usize,
        first_seed: u64,
        failed_seeds: Vec<u64>,
    },
    Series {
        derived: SeriesSummary,
        lower_central: SeriesSummary,
        lower_fitting: SeriesSummary,
        fitting_order: u64,
        sylow_orders: BTreeMap<u64, u64>,
    },
    Skipped {
        reason: String,
    },
    Error {
        message: String,
    },
}

impl Entry {
    /// Whether this entry is consistent with what the theory predicts.
    pub fn ok(&self, strict: bool) -> bool {
        match self {
            Entry::Theorem { result, .. } => result.consistent,
            Entry::Necessity { consistent, .. } => *consistent,
            Entry::Probe { .. } | Entry::Xclo { .. } | Entry::Series { .. } | Entry::Skipped { .. } => true,
            Entry::Lemma { result } => result.holds,
            Entry::LemmaTally { result } => {
                result.failures.is_empty() && (!strict || result.inadmissible == 0)
            }
            Entry::ClosedSets { failed_seeds, .. } => failed_seeds.is_empty(),
            Entry::Error { .. } => false,
        }
    }

    fn describe(&self) -> String {
        match self {
            Entry::Theorem { k, kind, result } => format!(
                "{kind}_{k}: condition {} | subgroup order {} nilpotent {} | {}",
                yes_no(result.report.holds),
                result.subgroup_order,
                yes_no(result.nilpotent),
                if result.consistent { "consistent" } else { "INCONSISTENT" }
            ),
            Entry::Necessity { k, result, consistent } => format!(
                "delta_{k} (insoluble): condition {} | G^({k}) nilpotent {} | {}",
                yes_no(result.report.holds),
                yes_no(result.derived_term_nilpotent),
                if *consistent { "consistent" } else { "INCONSISTENT" }
            ),
            Entry::Probe { k, result } => format!(
                "delta_{k}: condition {} over {} values{}",
                yes_no(result.report.holds),
                result.report.value_count,
                if result.is_candidate_counterexample {
                    " | CANDIDATE: insoluble group satisfying the condition"
                } else {
                    ""
                }
            ),
            Entry::Lemma { result } => format!(
                "{} p={} i={}: {}",
                result.lemma,
                opt(result.params.p),
                opt(result.params.k),
                if result.holds { "holds" } else { "FAILS" }
            ),
            Entry::LemmaTally { result } => format!(
                "{}: {} checked, {} held, {} inadmissible{}",
                result.lemma,
                result.checked,
                result.held,
                result.inadmissible,
                if result.failures.is_empty() {
                    String::new()
                } else {
                    format!(", {} FAILED", result.failures.len())
                }
            ),
            Entry::Xclo { summary } => format!(
                "xclo seed {}: h={} |T_i|={:?} |X|={}",
                summary.seed, summary.fitting_height, summary.normalizer_orders, summary.x_size
            ),
            Entry::ClosedSets {
                trials,
                failed_seeds,
                ..
            } => format!("closed sets: {trials} random closed sets, {} failed", failed_seeds.len()),
            Entry::Series {
                derived,
                lower_central,
                lower_fitting,
                fitting_order,
                ..
            } => format!(
                "derived {:?} | lower central {:?} | lower Fitting {:?} | |F| = {}",
                derived.orders, lower_central.orders, lower_fitting.orders, fitting_order
            ),
            Entry::Skipped { reason } => format!("skipped: {reason}"),
            Entry::Error { message } => format!("ERROR: {message}"),
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn opt<T: std::fmt::Display>(x: Option<T>) -> String {
    x.map_or_else(|| "-".to_string(), |v| v.to_string())
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupResult {
    pub id: String,
    pub order: u64,
    pub degree: usize,
    pub soluble: bool,
    pub consistent: bool,
    pub entries: Vec<Entry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Aggregate {
    pub groups: usize,
    pub entries: usize,
    pub consistent: bool,
    pub inconsistent_groups: Vec<String>,
    pub candidate_counterexamples: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub corpus_hash: String,
    pub seed: u64,
    pub cap: usize,
    pub kind: WordKind,
    pub k_range: [usize; 2],
    pub strict: bool,
    pub groups: Vec<GroupResult>,
    pub aggregate: Aggregate,
}

impl RunReport {
    pub fn aggregate(groups: &[GroupResult]) -> Aggregate {
        let mut candidates = Vec::new();
        for g in groups {
            for e in &g.entries {
                if let Entry::Probe { k, result } = e {
                    if result.is_candidate_counterexample {
                        candidates.push(format!("{} k={k}", g.id));
                    }
                }
            }
        }
        let inconsistent: Vec<String> = groups
            .iter()
            .filter(|g| !g.consistent)
            .map(|g| g.id.clone())
            .collect();
        Aggregate {
            groups: groups.len(),
            entries: groups.iter().map(|g| g.entries.len()).sum(),
            consistent: inconsistent.is_empty(),
            inconsistent_groups: inconsistent,
            candidate_counterexamples: candidates,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// 0 when every group is consistent, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.aggregate.consistent {
            0
        } else {
            1
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} {} | corpus {} | seed {}",
            self.command,
            self.version,
            &self.corpus_hash[..12],
            self.seed
        );
        for g in &self.groups {
            let _ = writeln!(
                out,
                "{:<8} order {:<4} {:<9} {}",
                g.id,
                g.order,
                if g.soluble { "soluble" } else { "insoluble" },
                if g.consistent { "ok" } else { "INCONSISTENT" }
            );
            for e in &g.entries {
                let _ = writeln!(out, "    {}", e.describe());
            }
        }
        let a = &self.aggregate;
        let _ = writeln!(
            out,
            "{} groups, {} entries: {}",
            a.groups,
            a.entries,
            if a.consistent { "all consistent" } else { "INCONSISTENCIES FOUND" }
        );
        if !a.inconsistent_groups.is_empty() {
            let _ = writeln!(out, "inconsistent: {}", a.inconsistent_groups.join(", "));
        }
        if !a.candidate_counterexamples.is_empty() {
            let _ = writeln!(
                out,
                "CANDIDATE COUNTEREXAMPLES: {}",
                a.candidate_counterexamples.join(", ")
            );
        }
        out
    }
}
