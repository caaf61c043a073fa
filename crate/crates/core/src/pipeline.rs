//! Classification driver: per-matroid verdicts with certificates, and
//! catalog-level reports.
//!
//! Stages, in order: reduction to a simple connected core, low rank or
//! corank, excluded-minor scan, single-element minors (recursively,
//! memoized), one SOS Rayleigh difference, `{0,1}` hyperbolicity sampling,
//! negative-point search.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{self, CatalogEntry};
use crate::certificate::Certificate;
use crate::matroid::{self, Matroid, MinorWitness};
use crate::negsearch::{self, SearchBudget};
use crate::poly::Poly;
use crate::realroot::{self, HyperbolicityOutcome, PairConvention};
use crate::sos::{self, PairOutcome, SosOptions};
use crate::subset::{self, Subset};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Hpp,
    NotHpp,
    CandidateHpp,
    Undetected,
}

impl Status {
    pub fn is_decided(self) -> bool {
        matches!(self, Status::Hpp | Status::NotHpp)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Reduction,
    LowRank,
    ForbiddenMinor,
    Minors,
    Sos,
    Hyperbolicity,
    NegativePoint,
    Exhausted,
}

/// The matroid a verdict's certificates refer to, relative to the parent
/// verdict's matroid: delete and contract the listed (1-based) elements,
/// relabel the rest in order, then dualize if `dual` is set.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subject {
    pub deleted: Vec<usize>,
    pub contracted: Vec<usize>,
    pub dual: bool,
}

impl Subject {
    fn deleting(elements: Subset) -> Subject {
        Subject { deleted: subset::to_elements(elements), ..Subject::default() }
    }

    pub fn apply(&self, m: &Matroid) -> Option<Matroid> {
        let d = subset::from_elements(&self.deleted);
        let c = subset::from_elements(&self.contracted);
        if d & c != 0 || (d | c) & !m.ground_set() != 0 {
            return None;
        }
        let mut r = m.clone();
        if c != 0 {
            r = r.contract(c).ok()?;
        }
        if d != 0 {
            r = r.delete(subset::compress(d, c)).ok()?;
        }
        Some(if self.dual { r.dual() } else { r })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Verdict {
    pub id: String,
    pub status: Status,
    pub decided_by: Stage,
    pub subject: Subject,
    pub certificates: Vec<Certificate>,
    /// One line per stage that ran.
    pub notes: Vec<String>,
    /// Verdicts for components or for the core after a reduction.
    pub parts: Vec<Verdict>,
}

impl Verdict {
    fn new(id: &str, status: Status, decided_by: Stage) -> Verdict {
        Verdict {
            id: id.to_string(),
            status,
            decided_by,
            subject: Subject::default(),
            certificates: Vec::new(),
            notes: Vec::new(),
            parts: Vec::new(),
        }
    }

    /// Re-verifies every certificate exactly, descending into parts.
    pub fn verify_certificates(&self, m: &Matroid) -> Result<usize, String> {
        let own = self.subject.apply(m).ok_or("subject does not apply")?;
        let mut count = 0;
        for c in &self.certificates {
            c.verify(&own).map_err(|e| format!("{}: {e}", c.kind()))?;
            count += 1;
        }
        for p in &self.parts {
            count += p.verify_certificates(&own)?;
        }
        Ok(count)
    }

    /// All certificates, including those of parts.
    pub fn all_certificates(&self) -> Vec<&Certificate> {
        let mut out: Vec<&Certificate> = self.certificates.iter().collect();
        for p in &self.parts {
            out.extend(p.all_certificates());
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct Config {
    pub forbidden: Vec<CatalogEntry>,
    /// Options for the stage that needs one SOS difference; dual certificates
    /// are not needed there.
    pub sos: SosOptions,
    pub negative: SearchBudget,
    pub convention: PairConvention,
    /// Run the stage-5 negative-point search.
    pub negative_search: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            forbidden: catalog::forbidden_seeds(),
            sos: SosOptions { dual: false, ..SosOptions::default() },
            negative: SearchBudget {
                grid_radius: 3,
                max_grid_points: 200_000,
                multistarts: 64,
                descent_iterations: 300,
                seed: 7,
            },
            convention: PairConvention::NonzeroDirection,
            negative_search: true,
        }
    }
}

type MemoKey = (usize, usize, usize, Vec<usize>);

fn memo_key(m: &Matroid) -> MemoKey {
    let mut degrees = vec![0usize; m.n()];
    for &b in m.bases() {
        for e in subset::bits(b) {
            degrees[e] += 1;
        }
    }
    degrees.sort_unstable();
    (m.n(), m.rank(), m.bases().len(), degrees)
}

/// Classifier with a shared memo of statuses of already classified
/// matroids (and their duals).
pub struct Classifier {
    config: Config,
    memo: Mutex<HashMap<MemoKey, Vec<(Matroid, Status)>>>,
}

fn pairs_of(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

impl Classifier {
    pub fn new(config: Config) -> Classifier {
        Classifier { config, memo: Mutex::new(HashMap::new()) }
    }

    pub fn config(&self) -> &Config {
        &self.config
    }

    fn lookup(&self, m: &Matroid) -> Option<Status> {
        let memo = self.memo.lock().expect("memo lock");
        memo.get(&memo_key(m))?.iter().find(|(k, _)| matroid::is_isomorphic(k, m)).map(|(_, s)| *s)
    }

    fn remember(&self, m: &Matroid, status: Status) {
        let mut memo = self.memo.lock().expect("memo lock");
        for x in [m.clone(), m.dual()] {
            let bucket = memo.entry(memo_key(&x)).or_default();
            if !bucket.iter().any(|(k, _)| matroid::is_isomorphic(k, &x)) {
                bucket.push((x, status));
            }
        }
    }

    /// Memoized status, used for minors.
    pub fn status_of(&self, m: &Matroid) -> Status {
        if let Some(s) = self.lookup(m) {
            return s;
        }
        let v = self.classify("minor", m);
        v.status
    }

    pub fn classify(&self, id: &str, m: &Matroid) -> Verdict {
        let v = self.classify_inner(id, m);
        self.remember(m, v.status);
        v
    }

    fn classify_inner(&self, id: &str, m: &Matroid) -> Verdict {
        let n = m.n();
        let r = m.rank();
        if r <= 2 || n - r <= 2 {
            let mut v = Verdict::new(id, Status::Hpp, Stage::LowRank);
            v.notes.push(format!("rank {r}, corank {}: every such matroid has the half-plane property", n - r));
            return v;
        }
        let (simple, kept) = m.simplification();
        if kept.len() < n {
            let mut inner = self.classify(id, &simple);
            inner.subject = Subject::deleting(m.ground_set() & !kept.iter().fold(0, |s, &e| s | 1 << e));
            let mut v = Verdict::new(id, inner.status, Stage::Reduction);
            v.notes.push(format!("removed {} loops or parallel elements", n - kept.len()));
            v.parts.push(inner);
            return v;
        }
        let components = m.components();
        if components.len() > 1 {
            let parts: Vec<Verdict> = components
                .iter()
                .map(|&c| {
                    let sub = m.restrict(c).expect("nonempty component");
                    let mut p = self.classify(id, &sub);
                    p.subject = Subject::deleting(m.ground_set() & !c);
                    p
                })
                .collect();
            let status = if parts.iter().any(|p| p.status == Status::NotHpp) {
                Status::NotHpp
            } else if parts.iter().all(|p| p.status == Status::Hpp) {
                Status::Hpp
            } else if parts.iter().any(|p| p.status == Status::Undetected) {
                Status::Undetected
            } else {
                Status::CandidateHpp
            };
            let mut v = Verdict::new(id, status, Stage::Reduction);
            v.notes.push(format!("direct sum of {} components", parts.len()));
            v.parts = parts;
            return v;
        }
        if 2 * r > n {
            let mut inner = self.classify_core(id, &m.dual());
            inner.subject = Subject { dual: true, ..Subject::default() };
            let mut v = Verdict::new(id, inner.status, Stage::Reduction);
            v.notes.push("rank exceeds half the size: classified the dual".into());
            v.parts.push(inner);
            return v;
        }
        self.classify_core(id, m)
    }

    fn forbidden_minor(&self, m: &Matroid) -> Option<(String, Matroid, MinorWitness)> {
        self.config
            .forbidden
            .par_iter()
            .filter(|f| f.matroid.n() < m.n() && f.matroid.rank() <= m.rank())
            .find_map_first(|f| matroid::has_minor(m, &f.matroid).map(|w| (f.name.clone(), f.matroid.clone(), w)))
    }

    /// Simple, connected, `3 ≤ r ≤ n/2`.
    fn classify_core(&self, id: &str, m: &Matroid) -> Verdict {
        let n = m.n();
        let mut v = Verdict::new(id, Status::Undetected, Stage::Exhausted);

        if let Some((name, minor, w)) = self.forbidden_minor(m) {
            v.status = Status::NotHpp;
            v.decided_by = Stage::ForbiddenMinor;
            v.notes.push(format!("has the excluded minor {name}"));
            v.certificates.push(Certificate::from_minor(&name, &minor, &w));
            return v;
        }
        v.notes.push(format!("no excluded minor among {} known ones", self.config.forbidden.len()));

        let mut minors_ok = true;
        for e in 0..n {
            for (kind, minor) in [("deletion", m.delete(1 << e)), ("contraction", m.contract(1 << e))] {
                let minor = minor.expect("proper minor of a nonempty matroid");
                match self.status_of(&minor) {
                    Status::Hpp => {}
                    Status::NotHpp => {
                        let mut part = self.classify(&format!("{id} {kind} of {}", e + 1), &minor);
                        part.subject = if kind == "deletion" {
                            Subject::deleting(1 << e)
                        } else {
                            Subject { contracted: vec![e + 1], ..Subject::default() }
                        };
                        v.status = Status::NotHpp;
                        v.decided_by = Stage::Minors;
                        v.notes.push(format!("{kind} of element {} lacks the half-plane property", e + 1));
                        v.parts.push(part);
                        return v;
                    }
                    other => {
                        minors_ok = false;
                        v.notes.push(format!("{kind} of element {} is {other:?}", e + 1));
                    }
                }
            }
        }
        if minors_ok {
            v.notes.push("all single-element minors have the half-plane property".into());
        }

        let h = Poly::basis_polynomial(m);
        let mut numeric_only = false;
        let mut sos_found = None;
        let mut order: Vec<((usize, usize), Poly)> = pairs_of(n)
            .into_iter()
            .map(|(i, j)| ((i, j), h.rayleigh_difference(i, j).expect("distinct indices")))
            .collect();
        order.sort_by_key(|((i, j), d)| (d.len(), *i, *j));
        let chunk = rayon::current_num_threads().max(1);
        'pairs: for group in order.chunks(chunk) {
            let outcomes: Vec<PairOutcome> =
                group.par_iter().map(|((i, j), d)| sos::certify_delta(d, *i, *j, &self.config.sos)).collect();
            for o in outcomes {
                match o {
                    PairOutcome::Sos(c) => {
                        sos_found = Some(c);
                        break 'pairs;
                    }
                    PairOutcome::NumericOnly { .. } => numeric_only = true,
                    _ => {}
                }
            }
        }
        if let Some(c) = sos_found {
            v.notes.push(format!("Δ_{},{} is a sum of squares (exact Gram matrix)", c.i + 1, c.j + 1));
            v.certificates.push(Certificate::from_sos(&c));
            if minors_ok {
                v.status = Status::Hpp;
                v.decided_by = Stage::Sos;
                return v;
            }
            v.notes.push("minor precondition unverifiable: the SOS difference does not decide".into());
        } else if numeric_only {
            v.notes.push("some Rayleigh difference has only a numeric Gram matrix".into());
        } else {
            v.notes.push("no Rayleigh difference certified as a sum of squares".into());
        }

        match realroot::hyperbolicity_test(&h, self.config.convention) {
            HyperbolicityOutcome::Fail(w) => {
                v.status = Status::NotHpp;
                v.decided_by = Stage::Hyperbolicity;
                v.notes.push("a {0,1} line restriction has non-real roots".into());
                v.certificates.retain(|c| !matches!(c, Certificate::Sos { .. }));
                v.certificates.push(Certificate::from_nonreal(&w));
                return v;
            }
            HyperbolicityOutcome::Pass { tested } => {
                v.notes.push(format!("{tested} line restrictions are real-rooted"));
            }
        }

        if self.config.negative_search {
            if let Some(c) = negsearch::search_all_pairs(&h, &self.config.negative) {
                v.status = Status::NotHpp;
                v.decided_by = Stage::NegativePoint;
                v.notes.push(format!("Δ_{},{} takes a negative value", c.i + 1, c.j + 1));
                v.certificates.retain(|c| !matches!(c, Certificate::Sos { .. }));
                v.certificates.push(Certificate::from_negative(&c));
                return v;
            }
            v.notes.push("no negative Rayleigh value found".into());
        }

        if numeric_only && minors_ok {
            v.status = Status::CandidateHpp;
        }
        v
    }
}

pub fn classify_one(m: &Matroid, config: &Config) -> Verdict {
    Classifier::new(config.clone()).classify("M", m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SosRayleighStatus {
    SosRayleigh,
    NotSosRayleigh,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairReport {
    pub i: usize,
    pub j: usize,
    /// `sos`, `not_sos`, `numeric_only` or `inconclusive`.
    pub outcome: String,
    pub certificate: Option<Certificate>,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SosRayleighReport {
    pub status: SosRayleighStatus,
    pub pairs: Vec<PairReport>,
}

/// SOS certification of every Rayleigh difference.
pub fn sos_rayleigh_status(m: &Matroid, opts: &SosOptions) -> SosRayleighReport {
    let h = Poly::basis_polynomial(m);
    let pairs: Vec<PairReport> = sos::certify_all_pairs(&h, opts)
        .into_iter()
        .map(|((i, j), o)| {
            let (outcome, certificate, detail) = match o {
                PairOutcome::Sos(c) => ("sos", Some(Certificate::from_sos(&c)), None),
                PairOutcome::NotSos(c) => ("not_sos", Some(Certificate::from_dual(&c)), None),
                PairOutcome::NumericOnly { min_eigenvalue } => {
                    ("numeric_only", None, Some(format!("smallest eigenvalue {min_eigenvalue:e}")))
                }
                PairOutcome::Inconclusive { reason } => ("inconclusive", None, Some(reason)),
            };
            PairReport { i: i + 1, j: j + 1, outcome: outcome.into(), certificate, detail }
        })
        .collect();
    let status = if pairs.iter().all(|p| p.outcome == "sos") {
        SosRayleighStatus::SosRayleigh
    } else if pairs.iter().any(|p| p.outcome == "not_sos") {
        SosRayleighStatus::NotSosRayleigh
    } else {
        SosRayleighStatus::Inconclusive
    };
    SosRayleighReport { status, pairs }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub counts: BTreeMap<Status, usize>,
    pub verdicts: Vec<Verdict>,
}

/// Classifies entries in parallel with a shared memo; verdicts come back in
/// entry order.
pub fn classify_catalog(entries: &[CatalogEntry], config: &Config) -> Report {
    let classifier = Classifier::new(config.clone());
    let verdicts: Vec<Verdict> = entries.par_iter().map(|e| classifier.classify(&e.name, &e.matroid)).collect();
    let mut counts = BTreeMap::new();
    for v in &verdicts {
        *counts.entry(v.status).or_insert(0) += 1;
    }
    Report { schema_version: SCHEMA_VERSION, counts, verdicts }
}
