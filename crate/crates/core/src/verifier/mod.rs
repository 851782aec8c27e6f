//! Brute force against closed forms over parameter grids, with structured
//! reports.

mod cache;

pub use cache::{Cache, CACHE_ENV};

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::closed_forms::{
    closed_form, signed_identity, coset_factor, reiner_distribution, reiner_substitution, unfolding_closed_form,
    unfolding_via_reiner, FormulaId, FormulaParams, Reading,
};
use crate::coxeter::{length_histogram, CoxeterSystem, EnumOptions, SystemType, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::folding::{
    folding_factorization_check, reiner_stats_bruteforce, shifted_c2n_plus1_labels, standard_folding,
    unfolding_series_bruteforce, FamilyId, FamilyKind, Folding, ReinerKind,
};
use crate::qseries::{QSeries, StatSeries};

/// What a job compares.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    /// Brute-force unfolding series against the family's product formula
    /// and, where one exists, the statistics route.
    Family(FamilyKind),
    Formula(FormulaId, Reading),
    /// `C̃_n → C̃_{2n+1}` with the `s_i s_{2n+i}` pairing, against the
    /// same formula as the registered pairing.
    PrintedC2nPlus1,
}

const PRINTED_C2N1: &str = "affC-affC2n+1-printed";

impl FromStr for Target {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == PRINTED_C2N1 {
            return Ok(Target::PrintedC2nPlus1);
        }
        if let Ok(k) = s.parse::<FamilyKind>() {
            return Ok(Target::Family(k));
        }
        let (id, reading) = FormulaId::parse_with_reading(s)
            .map_err(|_| Error::InvalidParameters(format!("{s:?} is neither a family nor a formula tag")))?;
        Ok(Target::Formula(id, reading))
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Family(k) => write!(f, "{k}"),
            Target::Formula(id, Reading::Corrected) => write!(f, "{id}"),
            Target::Formula(id, Reading::Literal) => write!(f, "{id}-literal"),
            Target::PrintedC2nPlus1 => f.write_str(PRINTED_C2N1),
        }
    }
}

impl Serialize for Target {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct GridPoint {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
}

impl GridPoint {
    pub fn n(n: usize) -> Self {
        GridPoint { n, m: None }
    }

    pub fn nm(n: usize, m: usize) -> Self {
        GridPoint { n, m: Some(m) }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationJob {
    pub target: Target,
    pub grid: Vec<GridPoint>,
    /// Truncation for every point; `None` uses the default rule (exact for
    /// finite groups, 14 for `n ≤ 3`, 10 above).
    pub max_len: Option<usize>,
    pub budget: usize,
    #[serde(skip)]
    pub workers: usize,
    /// Re-run each brute-force oracle with this many enumeration workers
    /// and fail the case if the result changes.
    #[serde(skip)]
    pub recheck_workers: Option<usize>,
    #[serde(skip)]
    pub cache: Option<Cache>,
}

impl VerificationJob {
    pub fn new(target: Target, grid: Vec<GridPoint>) -> Self {
        VerificationJob { target, grid, max_len: None, budget: DEFAULT_BUDGET, workers: 1, recheck_workers: None, cache: None }
    }

    pub fn with_max_len(mut self, l: usize) -> Self {
        self.max_len = Some(l);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Mismatch,
    ResourceLimit,
    Error,
}

/// The compared objects: univariate series, or trivariate for the
/// end-generator statistics.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum SeriesValue {
    Q(QSeries),
    Stat(StatSeries),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    /// Which right-hand side disagreed: `formula` or `statistics`.
    pub route: String,
    pub degree: usize,
    /// `(a, b)` exponents for trivariate comparisons.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ab: Option<(u32, u32)>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Case {
    pub params: GridPoint,
    pub status: Status,
    #[serde(rename = "L")]
    pub max_len: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<SeriesValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<SeriesValue>,
    /// Second right-hand side (statistics route) when the target has one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs_alt: Option<SeriesValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<Mismatch>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub elements_enumerated: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub job: VerificationJob,
    pub cases: Vec<Case>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.status == Status::Pass)
    }

    /// Pretty JSON. Timings are left out unless asked for, so the output is
    /// a pure function of the job.
    pub fn to_json(&self, timings: bool) -> Result<String> {
        if timings {
            return Ok(serde_json::to_string_pretty(self)?);
        }
        let mut r = self.clone();
        for c in &mut r.cases {
            c.millis = None;
        }
        Ok(serde_json::to_string_pretty(&r)?)
    }
}

fn default_len(affine: bool, n: usize) -> Option<usize> {
    match (affine, n) {
        (false, _) => None,
        (true, n) if n <= 3 => Some(14),
        (true, _) => Some(10),
    }
}

fn target_is_series(t: Target) -> bool {
    match t {
        Target::Family(k) => k.is_affine(),
        Target::Formula(id, _) => id.is_series(),
        Target::PrintedC2nPlus1 => true,
    }
}

/// Runs every grid point (in parallel over `job.workers` threads) and
/// collects the cases sorted by parameters. Failures are recorded in the
/// report, never returned as errors.
pub fn run_job(job: &VerificationJob) -> Result<VerificationReport> {
    if job.grid.is_empty() {
        return Err(Error::InvalidParameters("empty parameter grid".into()));
    }
    let mut grid = job.grid.clone();
    grid.sort();
    grid.dedup();
    let run = || grid.par_iter().map(|&p| run_case(job, p)).collect::<Vec<_>>();
    let cases = if job.workers > 1 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(job.workers)
            .build()
            .map_err(|e| Error::InvalidParameters(e.to_string()))?
            .install(run)
    } else {
        grid.iter().map(|&p| run_case(job, p)).collect()
    };
    Ok(VerificationReport { job: job.clone(), cases })
}

struct Outcome {
    lhs: SeriesValue,
    rhs: std::result::Result<SeriesValue, Error>,
    alt: Option<std::result::Result<SeriesValue, Error>>,
    elements: usize,
}

fn run_case(job: &VerificationJob, p: GridPoint) -> Case {
    let l = job.max_len.or_else(|| default_len(target_is_series(job.target), p.n));
    let l = match job.target {
        Target::Formula(FormulaId::ReinerAffB | FormulaId::ReinerAffC, _) => Some(job.max_len.unwrap_or(8)),
        _ => l,
    };
    let start = Instant::now();
    let outcome = compute(job, p, l);
    let millis = Some(start.elapsed().as_millis() as u64);
    let mut case = Case {
        params: p,
        status: Status::Pass,
        max_len: l,
        lhs: None,
        rhs: None,
        rhs_alt: None,
        first_mismatch: None,
        error: None,
        elements_enumerated: 0,
        millis,
    };
    let o = match outcome {
        Ok(o) => o,
        Err(e) => {
            case.status = if matches!(e, Error::ResourceLimit { .. }) { Status::ResourceLimit } else { Status::Error };
            case.error = Some(e.to_string());
            return case;
        }
    };
    case.elements_enumerated = o.elements;
    let mut routes = vec![("formula", o.rhs)];
    if let Some(alt) = o.alt {
        routes.push(("statistics", alt));
    }
    for (route, rhs) in routes {
        let value = match rhs {
            Ok(v) => v,
            Err(e) => {
                if case.status == Status::Pass {
                    case.status = Status::Error;
                    case.error = Some(format!("{route}: {e}"));
                }
                continue;
            }
        };
        if case.status == Status::Pass {
            if let Some(m) = compare(&o.lhs, &value, route) {
                case.status = Status::Mismatch;
                case.first_mismatch = Some(m);
            }
        }
        if route == "formula" {
            case.rhs = Some(value);
        } else {
            case.rhs_alt = Some(value);
        }
    }
    case.lhs = Some(o.lhs);
    case
}

fn compare(lhs: &SeriesValue, rhs: &SeriesValue, route: &str) -> Option<Mismatch> {
    match (lhs, rhs) {
        (SeriesValue::Q(a), SeriesValue::Q(b)) => a.first_mismatch(b).map(|k| Mismatch {
            route: route.into(),
            degree: k,
            ab: None,
            lhs: a.coeff(k).to_string(),
            rhs: b.coeff(k).to_string(),
        }),
        (SeriesValue::Stat(a), SeriesValue::Stat(b)) => {
            let order = a.q_order().min(b.q_order());
            let (a, b) = (a.truncate(order), b.truncate(order));
            let mut keys: Vec<_> = a.terms().map(|(e, _)| e).chain(b.terms().map(|(e, _)| e)).collect();
            keys.sort_by_key(|&(x, y, q)| (q, x, y));
            keys.into_iter().find(|&(x, y, q)| a.coeff(x, y, q) != b.coeff(x, y, q)).map(|(x, y, q)| Mismatch {
                route: route.into(),
                degree: q as usize,
                ab: Some((x, y)),
                lhs: a.coeff(x, y, q).to_string(),
                rhs: b.coeff(x, y, q).to_string(),
            })
        }
        _ => Some(Mismatch {
            route: route.into(),
            degree: 0,
            ab: None,
            lhs: "univariate".into(),
            rhs: "trivariate".into(),
        }),
    }
}

fn opts(job: &VerificationJob, workers: usize) -> EnumOptions {
    EnumOptions { budget: job.budget, workers }
}

/// Brute-force unfolding series, through the cache when one is configured.
fn brute(job: &VerificationJob, f: &Folding, key: &str, l: Option<usize>) -> Result<(QSeries, usize)> {
    if let Some(c) = &job.cache {
        match c.get(key) {
            Ok(Some(s)) => return Ok((s, 0)),
            Ok(None) | Err(Error::CorruptCache(_)) => {}
            Err(e) => return Err(e),
        }
    }
    let u = unfolding_series_bruteforce(f, l, opts(job, 1))?;
    if let Some(w) = job.recheck_workers {
        let again = unfolding_series_bruteforce(f, l, opts(job, w))?;
        if again.series.coeffs() != u.series.coeffs() || again.elements != u.elements {
            return Err(Error::InvalidParameters(format!("oracle changed with {w} workers")));
        }
    }
    if let Some(c) = &job.cache {
        c.put(key, &u.series)?;
    }
    Ok((u.series, u.elements))
}

fn family_brute(job: &VerificationJob, fam: FamilyId, l: Option<usize>) -> Result<(QSeries, usize)> {
    let f = standard_folding(fam)?;
    brute(job, &f, &format!("unfold|{fam}|L={l:?}"), l)
}

fn histogram(job: &VerificationJob, ty: SystemType, l: Option<usize>) -> Result<(QSeries, usize)> {
    let sys = CoxeterSystem::from_type(ty)?;
    let h = length_histogram(&sys, l, opts(job, job.recheck_workers.unwrap_or(1)))?;
    let total = h.iter().sum::<u64>() as usize;
    Ok((QSeries::from_counts(&h, l), total))
}

/// Family whose unfolding series a formula describes.
fn family_of(id: FormulaId, p: GridPoint) -> Option<Result<FamilyId>> {
    use FormulaId::*;
    let kind = match id {
        BnInA2nMinus1 => FamilyKind::BnA2nMinus1,
        BnInA2n => FamilyKind::BnA2n,
        BnInDnPlus1 => FamilyKind::BnDnPlus1,
        DihedralEven | DihedralOdd => FamilyKind::I2An,
        AffAInAffA => FamilyKind::AffAAffA,
        AffBInAffDnPlus1 => FamilyKind::AffBAffDnPlus1,
        AffBInAffD2n => FamilyKind::AffBAffD2n,
        AffBInAffD2nPlus1 => FamilyKind::AffBAffD2nPlus1,
        AffCInAffA2nPlus1 => FamilyKind::AffCAffA2nPlus1,
        AffCInAffA2n => FamilyKind::AffCAffA2n,
        AffCInAffA2nMinus1 => FamilyKind::AffCAffA2nMinus1,
        AffCInAffBnPlus1 => FamilyKind::AffCAffBnPlus1,
        AffCInAffDnPlus2 => FamilyKind::AffCAffDnPlus2,
        AffCInAffC2nPlus1 => FamilyKind::AffCAffC2nPlus1,
        AffCInAffC2n => FamilyKind::AffCAffC2n,
        _ => return None,
    };
    Some(FamilyId::new(kind, p.n, p.m))
}

fn compute(job: &VerificationJob, p: GridPoint, l: Option<usize>) -> Result<Outcome> {
    let q = SeriesValue::Q;
    match job.target {
        Target::Family(kind) => {
            let fam = FamilyId::new(kind, p.n, p.m)?;
            let (lhs, elements) = family_brute(job, fam, l)?;
            let has_alt = reiner_substitution(fam).is_some()
                || matches!(kind, FamilyKind::BnA2nMinus1 | FamilyKind::BnA2n | FamilyKind::BnDnPlus1);
            Ok(Outcome {
                lhs: q(lhs),
                rhs: unfolding_closed_form(fam, l).map(q),
                alt: has_alt.then(|| unfolding_via_reiner(fam, l).map(q)),
                elements,
            })
        }
        Target::PrintedC2nPlus1 => {
            let fam = FamilyId::new(FamilyKind::AffCAffC2nPlus1, p.n, None)?;
            let (src, tgt) = fam.systems();
            let target = CoxeterSystem::from_type(tgt)?;
            let words = shifted_c2n_plus1_labels(p.n)
                .iter()
                .map(|w| target.word_from_labels(w))
                .collect::<Result<Vec<_>>>()?;
            let f = Folding::new(CoxeterSystem::from_type(src)?, target, words)?;
            let (lhs, elements) = brute(job, &f, &format!("unfold|{PRINTED_C2N1}|{}|L={l:?}", p.n), l)?;
            Ok(Outcome { lhs: q(lhs), rhs: unfolding_closed_form(fam, l).map(q), alt: None, elements })
        }
        Target::Formula(id, reading) => {
            let params = FormulaParams { n: p.n, m: p.m };
            if let Some(fam) = family_of(id, p) {
                let fam = fam?;
                let (lhs, elements) = family_brute(job, fam, l)?;
                return Ok(Outcome { lhs: q(lhs), rhs: closed_form(id, params, l, reading).map(q), alt: None, elements });
            }
            use FormulaId::*;
            match id {
                SignedPairing => {
                    let s = signed_identity(p.n);
                    let m = p.n.div_ceil(2);
                    let kind = if p.n % 2 == 1 { FamilyKind::BnA2nMinus1 } else { FamilyKind::BnA2n };
                    let (u, eu) = family_brute(job, FamilyId::new(kind, m, None)?, None)?;
                    let (b, eb) = histogram(job, SystemType::B(m), None)?;
                    let (a, ea) = histogram(job, SystemType::A(p.n), None)?;
                    let lhs = b.substitute_power(-1, 1).mul(&u);
                    let rhs = a.substitute_power(-1, 1).mul(&b);
                    Ok(Outcome {
                        lhs: q(lhs),
                        rhs: Ok(q(rhs)),
                        alt: Some(s.map(|s| q(s.lhs))),
                        elements: eu + ea + eb,
                    })
                }
                BottAffA => {
                    let (lhs, e) = histogram(job, SystemType::AffineA(p.n - 1), l)?;
                    Ok(Outcome { lhs: q(lhs), rhs: closed_form(id, params, l, reading).map(q), alt: None, elements: e })
                }
                PoincareA | PoincareB => {
                    let ty = if id == PoincareA { SystemType::A(p.n) } else { SystemType::B(p.n) };
                    let (lhs, e) = histogram(job, ty, None)?;
                    Ok(Outcome { lhs: q(lhs), rhs: closed_form(id, params, l, reading).map(q), alt: None, elements: e })
                }
                ReinerAffB | ReinerAffC => {
                    let (kind, ty) = if id == ReinerAffB {
                        (ReinerKind::AffB, SystemType::AffineB(p.n))
                    } else {
                        (ReinerKind::AffC, SystemType::AffineC(p.n))
                    };
                    let l = l.unwrap_or(8);
                    let sys = CoxeterSystem::from_type(ty)?;
                    let lhs = reiner_stats_bruteforce(&sys, l, opts(job, 1))?;
                    let elements = lhs.terms().map(|(_, c)| c).sum::<num_bigint::BigInt>();
                    Ok(Outcome {
                        lhs: SeriesValue::Stat(lhs),
                        rhs: reiner_distribution(kind, p.n, l).map(SeriesValue::Stat),
                        alt: None,
                        elements: elements.try_into().unwrap_or(usize::MAX),
                    })
                }
                CosetFactor => {
                    let part = p.m.ok_or_else(|| Error::InvalidParameters("coset factor needs m = part".into()))?;
                    let kind = match part {
                        1 => FamilyKind::BnA2nMinus1,
                        2 => FamilyKind::BnA2n,
                        3 => FamilyKind::BnDnPlus1,
                        _ => return Err(Error::InvalidParameters(format!("coset factor part {part}"))),
                    };
                    let f = standard_folding(FamilyId::new(kind, p.n, None)?)?;
                    let j_hat: Vec<usize> = (1..f.source().rank()).collect();
                    let r = folding_factorization_check(&f, &j_hat, None, opts(job, 1))?;
                    Ok(Outcome { lhs: q(r.coset), rhs: coset_factor(part, p.n).map(q), alt: None, elements: r.elements })
                }
                _ => unreachable!("family formulas handled above"),
            }
        }
    }
}

/// The grids every registered family and formula must pass.
pub fn default_jobs() -> Vec<VerificationJob> {
    let ns = |r: std::ops::RangeInclusive<usize>| r.map(GridPoint::n).collect::<Vec<_>>();
    let mut jobs = Vec::new();
    for kind in FamilyKind::ALL {
        let grid = match kind {
            FamilyKind::BnA2nMinus1 | FamilyKind::BnA2n | FamilyKind::BnDnPlus1 => ns(2..=4),
            FamilyKind::I2An => ns(2..=8),
            FamilyKind::AffAAffA => vec![GridPoint::nm(2, 2), GridPoint::nm(2, 3), GridPoint::nm(3, 2)],
            FamilyKind::AffBAffDnPlus1 | FamilyKind::AffBAffD2n | FamilyKind::AffBAffD2nPlus1 => ns(3..=4),
            _ => ns(2..=3),
        };
        jobs.push(VerificationJob::new(Target::Family(kind), grid));
    }
    let f = |id| Target::Formula(id, Reading::Corrected);
    jobs.push(VerificationJob::new(f(FormulaId::SignedPairing), ns(3..=5)));
    jobs.push(VerificationJob::new(f(FormulaId::BottAffA), ns(2..=4)));
    jobs.push(VerificationJob::new(f(FormulaId::ReinerAffB), ns(3..=3)));
    jobs.push(VerificationJob::new(f(FormulaId::ReinerAffC), ns(2..=2)));
    jobs.push(VerificationJob::new(f(FormulaId::PoincareA), ns(1..=4)));
    jobs.push(VerificationJob::new(f(FormulaId::PoincareB), ns(2..=3)));
    let parts = [(2, 1), (2, 2), (3, 1), (3, 2), (3, 3)];
    jobs.push(VerificationJob::new(f(FormulaId::CosetFactor), parts.map(|(n, m)| GridPoint::nm(n, m)).to_vec()));
    jobs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_job() {
        let job = VerificationJob::new("Bn-A2n-1".parse().unwrap(), vec![GridPoint::n(2)]);
        let r = run_job(&job).unwrap();
        assert!(r.passed());
        let c = &r.cases[0];
        assert_eq!(c.max_len, None);
        assert_eq!(c.lhs, Some(SeriesValue::Q(QSeries::from_i64s(&[1, 1, 1, 2, 1, 1, 1], None))));
        assert_eq!(c.elements_enumerated, 8);
    }

    #[test]
    fn zero_truncation_is_trivial() {
        for kind in FamilyKind::ALL {
            let m = kind.needs_m().then_some(2);
            let n = if kind.name().starts_with("affB") { 3 } else { 2 };
            let job = VerificationJob::new(Target::Family(kind), vec![GridPoint { n, m }]).with_max_len(0);
            let r = run_job(&job).unwrap();
            assert!(r.passed(), "{kind}: {:?}", r.cases[0]);
        }
    }

    #[test]
    fn literal_reading_is_reported() {
        let job = VerificationJob::new("Thm1.5-literal".parse().unwrap(), vec![GridPoint::nm(2, 2)]);
        let r = run_job(&job).unwrap();
        assert!(!r.passed());
        assert_eq!(r.cases[0].status, Status::Error);
        assert!(r.cases[0].error.as_deref().unwrap().contains("not a unit"));
    }

    #[test]
    fn mismatch_details() {
        let job = VerificationJob::new("Poincare-An-literal".parse().unwrap(), vec![GridPoint::n(2)]);
        let r = run_job(&job).unwrap();
        let m = r.cases[0].first_mismatch.clone().unwrap();
        assert_eq!(r.cases[0].status, Status::Mismatch);
        assert_eq!((m.degree, m.lhs.as_str(), m.rhs.as_str()), (1, "2", "1"));
    }

    #[test]
    fn empty_grid() {
        let job = VerificationJob::new(Target::Family(FamilyKind::BnA2n), vec![]);
        assert!(matches!(run_job(&job), Err(Error::InvalidParameters(_))));
    }

    #[test]
    fn cache_is_used_and_repaired() {
        let dir = tempfile::tempdir().unwrap();
        let mut job = VerificationJob::new(Target::Family(FamilyKind::AffCAffA2n), vec![GridPoint::n(2)]).with_max_len(12);
        job.cache = Some(Cache::new(dir.path()));
        let first = run_job(&job).unwrap();
        assert!(first.passed());
        let second = run_job(&job).unwrap();
        assert_eq!(second.cases[0].elements_enumerated, 0);
        assert_eq!(first.cases[0].lhs, second.cases[0].lhs);
        for e in std::fs::read_dir(dir.path()).unwrap() {
            std::fs::write(e.unwrap().path(), b"garbage").unwrap();
        }
        let third = run_job(&job).unwrap();
        assert!(third.passed());
        assert!(third.cases[0].elements_enumerated > 0);
    }
}
