//! Verification sweeps over the corpus, their serialized reports, and the
//! modular (p-elements) pipeline.
//!
//! The two sweeps pit the structural predicates against brute-force
//! computation in the algebra: `mode = "lemma5"` runs every involution with
//! the trivial orientation and compares symmetric commutativity against
//! "abelian or SLC with the canonical involution"; `mode = "lemma8"` runs
//! every compatible non-trivially oriented pair and compares against the
//! two-condition disjunction. Both are expected to report zero
//! disagreements, and the harness exit code is wired to that.
//!
//! Every (group, involution, orientation) triple produces exactly one
//! record: processed, out-of-statement, or skipped with a reason. Runs are
//! deterministic byte for byte, except for the timestamp field.

use std::sync::Arc;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraContext, AlgebraElement};
use crate::corpus::corpus_up_to;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::identity::{commutator_p_power, enumerate_units, UnitSet};
use crate::involution::{enumerate_involutions, enumerate_orientations, make_pair, OrientedPair};
use crate::predicates::{
    classify_modular, classify_oriented, is_slc_canonical, ClassificationReport,
};

pub const SCHEMA_VERSION: u32 = 1;

/// Enumeration caps for a verification run. Oversize work is skipped and
/// logged, never silently dropped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    /// Largest group order for which involutions are enumerated.
    pub involution_order_bound: usize,
    /// Most involutions per group before the group is skipped.
    pub involution_cap: usize,
    /// Most points swept when enumerating units.
    pub unit_space_cap: u64,
    /// Most argument tuples evaluated in an identity check.
    pub tuple_cap: u64,
    /// Most points swept when enumerating symmetric idempotents.
    pub idempotent_cap: u64,
    /// Largest exponent n tried in the p-power commutator check.
    pub p_power_max: u32,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            involution_order_bound: 16,
            involution_cap: 512,
            unit_space_cap: 10_000_000,
            tuple_cap: 100_000_000,
            idempotent_cap: 1_000_000,
            p_power_max: 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleVerdict {
    pub p: u64,
    pub symmetric_commutes: bool,
}

/// The structural side of a record, depending on the sweep mode.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum PredicateVerdicts {
    Unoriented {
        is_abelian: bool,
        slc_canonical: bool,
    },
    Oriented {
        cond_abelian_kernel: bool,
        cond_lc_split: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status")]
pub enum RecordStatus {
    Processed {
        predicate: PredicateVerdicts,
        predicted: bool,
        oracle: Vec<OracleVerdict>,
        agree: bool,
    },
    OutOfStatement {
        reason: String,
    },
    Skipped {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub group: String,
    /// Index into the group's involution enumeration; absent for
    /// group-level skips.
    pub involution: Option<usize>,
    /// Index into the group's non-trivial orientation enumeration; absent
    /// in trivial-orientation mode.
    pub orientation: Option<usize>,
    pub status: RecordStatus,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub records: usize,
    pub processed: usize,
    pub agreements: usize,
    pub disagreements: usize,
    pub out_of_statement: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRun {
    pub schema: u32,
    pub mode: String,
    pub timestamp: String,
    pub primes: Vec<u64>,
    pub max_order: usize,
    pub bounds: Bounds,
    pub records: Vec<Record>,
    pub summary: Summary,
}

fn timestamp_now() -> String {
    let secs = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    format!("unix:{secs}")
}

fn summarize(records: &[Record]) -> Summary {
    let mut s = Summary {
        records: records.len(),
        ..Summary::default()
    };
    for r in records {
        match &r.status {
            RecordStatus::Processed { agree, .. } => {
                s.processed += 1;
                if *agree {
                    s.agreements += 1;
                } else {
                    s.disagreements += 1;
                }
            }
            RecordStatus::OutOfStatement { .. } => s.out_of_statement += 1,
            RecordStatus::Skipped { .. } => s.skipped += 1,
        }
    }
    s
}

fn oracle_for_pair(
    group: &Arc<FiniteGroup>,
    pair: &OrientedPair,
    primes: &[u64],
) -> Vec<OracleVerdict> {
    primes
        .iter()
        .map(|&p| {
            let ctx = AlgebraContext::new(group.clone(), p, pair.clone())
                .expect("compatible pair and odd prime");
            OracleVerdict {
                p,
                symmetric_commutes: ctx.symmetric_is_commutative(),
            }
        })
        .collect()
}

/// Trivial-orientation sweep: for every corpus group within `max_order`,
/// every involution, every prime, compare symmetric commutativity against
/// "abelian or SLC-canonical".
pub fn verify_unoriented(primes: &[u64], max_order: usize, bounds: &Bounds) -> VerificationRun {
    let mut records = Vec::new();
    for entry in corpus_up_to(max_order) {
        let g = entry.group.clone();
        let involutions = match enumerate_involutions(&g, bounds.involution_order_bound) {
            Ok(list) => list,
            Err(e) => {
                records.push(Record {
                    group: entry.spec.clone(),
                    involution: None,
                    orientation: None,
                    status: RecordStatus::Skipped {
                        reason: e.to_string(),
                    },
                });
                continue;
            }
        };
        if involutions.len() > bounds.involution_cap {
            records.push(Record {
                group: entry.spec.clone(),
                involution: None,
                orientation: None,
                status: RecordStatus::Skipped {
                    reason: format!(
                        "{} involutions exceed the cap {}",
                        involutions.len(),
                        bounds.involution_cap
                    ),
                },
            });
            continue;
        }
        let is_abelian = g.is_abelian();
        for (ti, tau) in involutions.iter().enumerate() {
            let slc = is_slc_canonical(&g, tau);
            let predicted = is_abelian || slc;
            let pair = make_pair(
                tau.clone(),
                crate::involution::Orientation::trivial(g.clone()),
            )
            .expect("same parent");
            let oracle = oracle_for_pair(&g, &pair, primes);
            let agree = oracle.iter().all(|o| o.symmetric_commutes == predicted);
            records.push(Record {
                group: entry.spec.clone(),
                involution: Some(ti),
                orientation: None,
                status: RecordStatus::Processed {
                    predicate: PredicateVerdicts::Unoriented {
                        is_abelian,
                        slc_canonical: slc,
                    },
                    predicted,
                    oracle,
                    agree,
                },
            });
        }
    }
    let summary = summarize(&records);
    VerificationRun {
        schema: SCHEMA_VERSION,
        mode: "lemma5".into(),
        timestamp: timestamp_now(),
        primes: primes.to_vec(),
        max_order,
        bounds: bounds.clone(),
        records,
        summary,
    }
}

/// Oriented sweep: every involution against every non-trivial orientation.
/// Abelian groups and incompatible pairs are out of statement; the rest
/// compare symmetric commutativity against the two-condition disjunction.
pub fn verify_oriented(primes: &[u64], max_order: usize, bounds: &Bounds) -> VerificationRun {
    let mut records = Vec::new();
    for entry in corpus_up_to(max_order) {
        let g = entry.group.clone();
        let involutions = match enumerate_involutions(&g, bounds.involution_order_bound) {
            Ok(list) => list,
            Err(e) => {
                records.push(Record {
                    group: entry.spec.clone(),
                    involution: None,
                    orientation: None,
                    status: RecordStatus::Skipped {
                        reason: e.to_string(),
                    },
                });
                continue;
            }
        };
        if involutions.len() > bounds.involution_cap {
            records.push(Record {
                group: entry.spec.clone(),
                involution: None,
                orientation: None,
                status: RecordStatus::Skipped {
                    reason: format!(
                        "{} involutions exceed the cap {}",
                        involutions.len(),
                        bounds.involution_cap
                    ),
                },
            });
            continue;
        }
        let orientations = enumerate_orientations(&g, false);
        let is_abelian = g.is_abelian();
        for (ti, tau) in involutions.iter().enumerate() {
            for (oi, sigma) in orientations.iter().enumerate() {
                let pair = make_pair(tau.clone(), sigma.clone()).expect("same parent");
                if is_abelian {
                    records.push(Record {
                        group: entry.spec.clone(),
                        involution: Some(ti),
                        orientation: Some(oi),
                        status: RecordStatus::OutOfStatement {
                            reason: "abelian group".into(),
                        },
                    });
                    continue;
                }
                if !pair.compatible {
                    records.push(Record {
                        group: entry.spec.clone(),
                        involution: Some(ti),
                        orientation: Some(oi),
                        status: RecordStatus::OutOfStatement {
                            reason: "incompatible pair".into(),
                        },
                    });
                    continue;
                }
                let report = classify_oriented(&g, &pair)
                    .expect("non-abelian, compatible, non-trivial orientation");
                let oracle = oracle_for_pair(&g, &pair, primes);
                let agree = oracle
                    .iter()
                    .all(|o| o.symmetric_commutes == report.symmetric_commutes_predicted);
                records.push(Record {
                    group: entry.spec.clone(),
                    involution: Some(ti),
                    orientation: Some(oi),
                    status: RecordStatus::Processed {
                        predicate: PredicateVerdicts::Oriented {
                            cond_abelian_kernel: report.cond_abelian_kernel,
                            cond_lc_split: report.cond_lc_split,
                        },
                        predicted: report.symmetric_commutes_predicted,
                        oracle,
                        agree,
                    },
                });
            }
        }
    }
    let summary = summarize(&records);
    VerificationRun {
        schema: SCHEMA_VERSION,
        mode: "lemma8".into(),
        timestamp: timestamp_now(),
        primes: primes.to_vec(),
        max_order,
        bounds: bounds.clone(),
        records,
        summary,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Markdown,
}

/// Serialize a run. JSON is the machine format and round-trips through
/// `parse_report_json`; markdown is a summary table per group.
pub fn emit_report(run: &VerificationRun, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(run).expect("run serializes");
            s.push('\n');
            s
        }
        ReportFormat::Markdown => emit_markdown(run),
    }
}

pub fn parse_report_json(s: &str) -> Result<VerificationRun> {
    serde_json::from_str(s).map_err(|e| Error::ReportParse(e.to_string()))
}

fn emit_markdown(run: &VerificationRun) -> String {
    use std::collections::BTreeMap;
    let mut out = String::new();
    out.push_str(&format!("# Verification run: {}\n\n", run.mode));
    out.push_str(&format!(
        "- primes: {:?}\n- max order: {}\n- timestamp: {}\n\n",
        run.primes, run.max_order, run.timestamp
    ));
    out.push_str(
        "| group | records | processed | agree | disagree | out-of-statement | skipped |\n",
    );
    out.push_str("|---|---:|---:|---:|---:|---:|---:|\n");
    let mut groups: BTreeMap<&str, Summary> = BTreeMap::new();
    for r in &run.records {
        let s = groups.entry(r.group.as_str()).or_default();
        s.records += 1;
        match &r.status {
            RecordStatus::Processed { agree, .. } => {
                s.processed += 1;
                if *agree {
                    s.agreements += 1;
                } else {
                    s.disagreements += 1;
                }
            }
            RecordStatus::OutOfStatement { .. } => s.out_of_statement += 1,
            RecordStatus::Skipped { .. } => s.skipped += 1,
        }
    }
    for (group, s) in groups {
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} | {} |\n",
            group,
            s.records,
            s.processed,
            s.agreements,
            s.disagreements,
            s.out_of_statement,
            s.skipped
        ));
    }
    out.push_str(&format!(
        "\ntotal: {} records, {} processed, {} agreements, {} disagreements, {} out of statement, {} skipped\n",
        run.summary.records,
        run.summary.processed,
        run.summary.agreements,
        run.summary.disagreements,
        run.summary.out_of_statement,
        run.summary.skipped
    ));
    out
}

/// Outcome of the p-power commutator check inside a pipeline run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status")]
pub enum PPowerOutcome {
    /// Least exponent, established over every pair.
    Exact {
        exponent: u32,
    },
    /// Some pair escapes every exponent up to n_max; the witness pair is
    /// replayable from its coefficient vectors.
    NoneWithin {
        n_max: u32,
        witness: Vec<Vec<u64>>,
    },
    /// Upper bound certified through the nilpotency of the symmetric
    /// commutator ideal; minimality not established.
    CertifiedAtMost {
        exponent: u32,
    },
    Skipped {
        reason: String,
    },
}

/// Full report of one modular pipeline run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub schema: u32,
    pub group: String,
    pub order: usize,
    pub p: u64,
    /// Structural finding that stopped the pipeline, if any.
    pub finding: Option<String>,
    pub regular: bool,
    pub p_subgroup_order: Option<usize>,
    pub p_subgroup_normal: Option<bool>,
    pub delta_dim: Option<usize>,
    pub delta_nilpotency: Option<usize>,
    pub radical_note: Option<String>,
    pub quotient_group: Option<String>,
    pub quotient_order: Option<usize>,
    pub quotient_abelian: Option<bool>,
    pub quotient_report: Option<ClassificationReport>,
    /// Whether the quotient conditions predict commuting symmetric units.
    pub gi_predicted: Option<bool>,
    pub symmetric_unit_count: Option<usize>,
    pub p_power: PPowerOutcome,
    pub notes: Vec<String>,
}

fn least_p_power_at_least(p: u64, t: usize) -> u32 {
    let mut n = 0u32;
    let mut pow = 1u128;
    while pow < t as u128 {
        pow *= p as u128;
        n += 1;
    }
    n
}

/// Search for a symmetric-unit pair whose commutator survives p^n-th
/// powering. Tries cheap candidates built from the symmetric basis first,
/// then a budgeted prefix of the full pair sweep. Any returned witness is
/// verified by direct computation.
fn hunt_escaping_pair(
    ctx: &Arc<AlgebraContext>,
    set: &UnitSet,
    n_max: u32,
    budget: u128,
) -> Option<(AlgebraElement, AlgebraElement)> {
    let one = ctx.one();
    let p = ctx.prime() as i64;
    let escapes = |u: &AlgebraElement, v: &AlgebraElement| {
        let ui = ctx.inverse(u).ok()?;
        let vi = ctx.inverse(v).ok()?;
        let mut w = ctx
            .mul(&ctx.mul(&ctx.mul(&ui, &vi).ok()?, u).ok()?, v)
            .ok()?;
        let mut n = 0u32;
        while w != one {
            if n == n_max {
                return Some(());
            }
            w = ctx.pow(&w, p).ok()?;
            n += 1;
        }
        None
    };
    // Candidates 1 + c*b over the symmetric basis: symmetric by
    // construction, often units, and non-commuting whenever the basis is.
    let mut candidates = Vec::new();
    for b in ctx.symmetric_basis() {
        for c in 1..ctx.prime() {
            let scaled = ctx.scalar_mul(c, &b).expect("same context");
            let cand = ctx.add(&one, &scaled).expect("same context");
            if ctx.is_unit(&cand) {
                candidates.push(cand);
            }
        }
    }
    for u in &candidates {
        for v in &candidates {
            if escapes(u, v).is_some() {
                return Some((u.clone(), v.clone()));
            }
        }
    }
    let mut scanned: u128 = 0;
    for u in set.units() {
        for v in set.units() {
            scanned += 1;
            if scanned > budget {
                return None;
            }
            if escapes(u, v).is_some() {
                return Some((u.clone(), v.clone()));
            }
        }
    }
    None
}

/// Run the whole modular pipeline: p-elements, their closure and
/// normality, the delta ideal and its nilpotency, the induced quotient
/// classification, and the p-power commutator check on the symmetric
/// units.
pub fn run_modular_pipeline(
    group: &Arc<FiniteGroup>,
    pair: &OrientedPair,
    p: u64,
    bounds: &Bounds,
) -> Result<PipelineReport> {
    if p == 2 || !crate::group::is_prime(p) {
        return Err(Error::InvalidPrime(p));
    }
    if !pair.compatible {
        return Err(Error::Incompatible);
    }
    let mut report = PipelineReport {
        schema: SCHEMA_VERSION,
        group: group.name().to_string(),
        order: group.order(),
        p,
        finding: None,
        regular: !(group.order() as u64).is_multiple_of(p),
        p_subgroup_order: None,
        p_subgroup_normal: None,
        delta_dim: None,
        delta_nilpotency: None,
        radical_note: None,
        quotient_group: None,
        quotient_order: None,
        quotient_abelian: None,
        quotient_report: None,
        gi_predicted: None,
        symmetric_unit_count: None,
        p_power: PPowerOutcome::Skipped {
            reason: "not reached".into(),
        },
        notes: vec!["finite group: finite-conjugacy hypotheses hold automatically".into()],
    };

    let modular = match classify_modular(group, pair, p) {
        Ok(m) => m,
        Err(Error::PNotSubgroup { p }) => {
            report.finding = Some(format!(
                "the {p}-elements are not closed under multiplication"
            ));
            report.p_power = PPowerOutcome::Skipped {
                reason: "p-elements are not a subgroup".into(),
            };
            return Ok(report);
        }
        Err(Error::NotNormal) => {
            report.finding = Some(format!("the subgroup of {p}-elements is not normal"));
            report.p_power = PPowerOutcome::Skipped {
                reason: "p-subgroup not normal".into(),
            };
            return Ok(report);
        }
        Err(e) => return Err(e),
    };

    let pset = group.p_elements(p)?;
    let h = pset.as_subgroup(group).expect("closure already checked");
    // Odd-order elements always sit inside the orientation kernel.
    assert!(
        h.members().iter().all(|&x| pair.sigma.kernel().contains(x)),
        "p-elements must lie in the orientation kernel for odd p"
    );
    report.p_subgroup_order = Some(h.len());
    report.p_subgroup_normal = Some(true);

    let ctx = AlgebraContext::new(group.clone(), p, pair.clone())?;
    let delta = ctx.delta_ideal(&h)?;
    report.delta_dim = Some(delta.dim());
    report.delta_nilpotency = ctx.nilpotency_index(&delta, ctx.dim() + 1)?;
    if report.regular {
        report.radical_note = Some("p does not divide |G|: the algebra is semisimple".into());
    } else if !((group.order() / h.len()) as u64).is_multiple_of(p) {
        report.radical_note =
            Some("prime radical = Jacobson radical = delta ideal of the p-part (nilpotent)".into());
    }

    report.quotient_group = Some(modular.induced.quotient.quotient.name().to_string());
    report.quotient_order = Some(modular.induced.quotient.quotient.order());
    report.quotient_abelian = Some(modular.quotient_abelian);
    let gi = modular.quotient_abelian || modular.report.symmetric_commutes_predicted;
    report.gi_predicted = Some(gi);
    report.quotient_report = Some(modular.report.clone());
    if gi {
        report
            .notes
            .push("polynomial-identity status: informational only, not asserted".into());
    }

    // p-power commutator check over the symmetric units.
    let d = ctx.symmetric_basis().len() as u32;
    let points = (p as u128).checked_pow(d).unwrap_or(u128::MAX);
    if points > bounds.unit_space_cap as u128 {
        report.p_power = PPowerOutcome::Skipped {
            reason: format!(
                "symmetric unit space needs {points} points, above the cap {}",
                bounds.unit_space_cap
            ),
        };
        return Ok(report);
    }
    let set = enumerate_units(&ctx, true, bounds.unit_space_cap as u128)?;
    report.symmetric_unit_count = Some(set.len());
    let pairs = (set.len() as u128).pow(2);
    if pairs <= bounds.tuple_cap as u128 {
        let check = commutator_p_power(&set, bounds.p_power_max, bounds.tuple_cap as u128)?;
        report.p_power = match check.exponent {
            Some(n) => PPowerOutcome::Exact { exponent: n },
            None => {
                let (u, v) = check.witness.expect("no exponent implies a witness");
                PPowerOutcome::NoneWithin {
                    n_max: bounds.p_power_max,
                    witness: vec![u.coeffs().to_vec(), v.coeffs().to_vec()],
                }
            }
        };
        return Ok(report);
    }
    // Too many pairs for the literal sweep. If the two-sided ideal
    // generated by symmetric Lie brackets is nilpotent of index t, then
    // every commutator (u,v) lies in 1 + I and (u,v)^(p^n) = 1 + gamma^(p^n)
    // vanishes once p^n >= t: a certificate covering all pairs at once.
    if ctx.symmetric_is_commutative() {
        report.p_power = PPowerOutcome::Exact { exponent: 0 };
        return Ok(report);
    }
    let ideal = ctx.symmetric_commutator_ideal();
    match ctx.nilpotency_index(&ideal, ctx.dim() + 1)? {
        Some(t) => {
            let n = least_p_power_at_least(p, t);
            if n > bounds.p_power_max {
                report.p_power = PPowerOutcome::Skipped {
                    reason: format!(
                        "certified exponent {n} exceeds n_max {}",
                        bounds.p_power_max
                    ),
                };
            } else if n > 0 && hunt_escaping_pair(&ctx, &set, n - 1, 1_000_000).is_some() {
                // A pair defeats n-1, so the certified n is also least.
                report.p_power = PPowerOutcome::Exact { exponent: n };
            } else {
                report.p_power = PPowerOutcome::CertifiedAtMost { exponent: n };
            }
        }
        None => {
            // No certificate; look for a pair that escapes outright.
            match hunt_escaping_pair(&ctx, &set, bounds.p_power_max, 1_000_000) {
                Some((u, v)) => {
                    report.p_power = PPowerOutcome::NoneWithin {
                        n_max: bounds.p_power_max,
                        witness: vec![u.coeffs().to_vec(), v.coeffs().to_vec()],
                    };
                }
                None => {
                    report.p_power = PPowerOutcome::Skipped {
                        reason: format!(
                            "{pairs} pairs exceed the tuple cap and no certificate applies"
                        ),
                    };
                }
            }
        }
    }
    Ok(report)
}

/// Serialize a pipeline report as pretty JSON.
pub fn emit_pipeline_report(report: &PipelineReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}
