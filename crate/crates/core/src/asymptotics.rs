//! Eventual-linearity fits over a window of ranks `n` and the verdicts built
//! on them. A verdict is `pass`, `fail` or `inconclusive`; truncation
//! artifacts (uncertified γ, unstabilized strands, inexact fits) only ever
//! produce `inconclusive`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::families::{FamilyError, FamilySpec};
use crate::poly::ResourceLimits;
use crate::resolution::{self, extract_strands, koszul_tor, ResolutionError, StrandFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LinearFitResult {
    pub slope: i64,
    pub intercept: i64,
    /// First `n` of the longest suffix lying on the line.
    pub n0: u32,
    /// At least three agreeing increments.
    pub exact: bool,
    pub samples_used: usize,
}

impl LinearFitResult {
    pub fn at(&self, n: u32) -> i64 {
        self.slope * n as i64 + self.intercept
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FitError {
    #[error("need at least 4 samples, got {0}")]
    InsufficientData(usize),
    #[error("samples must be at consecutive n; gap after n = {0}")]
    NotConsecutive(u32),
    #[error("the fit is not exact (only {samples_used} samples from n = {n0} agree)")]
    Inexact { n0: u32, samples_used: usize },
}

/// Finds the longest suffix of consecutive samples on one line.
pub fn fit_eventually_linear(samples: &BTreeMap<u32, i64>) -> Result<LinearFitResult, FitError> {
    if samples.len() < 4 {
        return Err(FitError::InsufficientData(samples.len()));
    }
    let pts: Vec<(u32, i64)> = samples.iter().map(|(&n, &v)| (n, v)).collect();
    if let Some(w) = pts.windows(2).find(|w| w[1].0 != w[0].0 + 1) {
        return Err(FitError::NotConsecutive(w[0].0));
    }
    let (n_last, v_last) = pts[pts.len() - 1];
    let slope = v_last - pts[pts.len() - 2].1;
    let intercept = v_last - slope * n_last as i64;
    let used = pts.iter().rev().take_while(|&&(n, v)| v == slope * n as i64 + intercept).count();
    Ok(LinearFitResult { slope, intercept, n0: pts[pts.len() - used].0, exact: used >= 4, samples_used: used })
}

/// The slope of an exact γ fit, read as the smallest `r` such that the
/// module is supported on the rank `≤ r` locus.
pub fn support_rank_from_slope(fit: &LinearFitResult) -> Result<u32, FitError> {
    if !fit.exact {
        return Err(FitError::Inexact { n0: fit.n0, samples_used: fit.samples_used });
    }
    u32::try_from(fit.slope).map_err(|_| FitError::Inexact { n0: fit.n0, samples_used: fit.samples_used })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrandError {
    #[error("strands extracted at n0 = {n0} have not been confirmed against n0 - 1")]
    Unstabilized { n0: u32 },
    #[error("strands extracted at n0 = {n0} only determine n < n0, asked for n = {n}")]
    OutOfRange { n0: u32, n: u32 },
}

/// `max_k (γ(F_k; n) − k)` over strands with a partition of at most `n`
/// columns.
pub fn pdim_from_strands(strands: &StrandFamily, n: u32) -> Result<u32, StrandError> {
    if !strands.is_stable() {
        return Err(StrandError::Unstabilized { n0: strands.n0 });
    }
    if n >= strands.n0 {
        return Err(StrandError::OutOfRange { n0: strands.n0, n });
    }
    let best = strands
        .iter()
        .filter_map(|(k, f)| {
            let g = f.gamma(n, 0).ok()?;
            g.witness.map(|_| g.value - k)
        })
        .max();
    Ok(best.unwrap_or(0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Inconclusive,
    Fail,
}

/// One theorem-level check on one family over a window of ranks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub check: &'static str,
    pub family: String,
    pub n_range: (u32, u32),
    /// Ranks whose samples were computed.
    pub completed: Vec<u32>,
    pub samples: BTreeMap<&'static str, BTreeMap<u32, i64>>,
    pub fits: BTreeMap<&'static str, LinearFitResult>,
    pub outcome: Outcome,
    /// First sampled `n` violating the checked law, on failure.
    pub witness: Option<u32>,
    pub resource_limited: bool,
    pub notes: Vec<String>,
}

impl Verdict {
    fn new(check: &'static str, spec: &FamilySpec, n_range: (u32, u32)) -> Self {
        Verdict {
            check,
            family: spec.label(),
            n_range,
            completed: Vec::new(),
            samples: BTreeMap::new(),
            fits: BTreeMap::new(),
            outcome: Outcome::Pass,
            witness: None,
            resource_limited: false,
            notes: Vec::new(),
        }
    }

    fn inconclusive(&mut self, note: impl Into<String>) {
        self.outcome = self.outcome.max(Outcome::Inconclusive);
        self.notes.push(note.into());
    }

    fn fail(&mut self, witness: Option<u32>, note: impl Into<String>) {
        self.outcome = Outcome::Fail;
        if self.witness.is_none() {
            self.witness = witness;
        }
        self.notes.push(note.into());
    }

    /// Fits a series; records it and returns it when exact.
    fn fit(&mut self, name: &'static str) -> Option<LinearFitResult> {
        let series = self.samples.get(name)?;
        match fit_eventually_linear(series) {
            Ok(fit) => {
                self.fits.insert(name, fit);
                if fit.exact {
                    Some(fit)
                } else {
                    self.inconclusive(format!("{name}: no exact linear suffix of length 4 (agreement from n = {})", fit.n0));
                    None
                }
            }
            Err(e) => {
                self.inconclusive(format!("{name}: {e}"));
                None
            }
        }
    }

    /// Compares a series with expected values where the closed forms apply.
    fn compare(&mut self, name: &'static str, expected: impl Fn(u32) -> Option<i64>) {
        let Some(series) = self.samples.get(name) else { return };
        let bad = series.iter().find(|(&n, &v)| expected(n).is_some_and(|e| e != v)).map(|(&n, &v)| (n, v));
        if let Some((n, v)) = bad {
            self.fail(Some(n), format!("{name}({n}) = {v}, closed form gives {}", expected(n).unwrap()));
        }
    }

    /// Fails when the slope is outside `[0, d]`; the witness is the first
    /// increment outside that band.
    fn slope_band(&mut self, name: &'static str, fit: &LinearFitResult, d: u32) {
        if fit.slope < 0 || fit.slope > d as i64 {
            let series = &self.samples[name];
            let witness = series
                .iter()
                .zip(series.iter().skip(1))
                .find(|((_, a), (_, b))| *b - *a < 0 || *b - *a > d as i64)
                .map(|(_, (&n, _))| n);
            self.fail(witness, format!("{name} slope {} outside [0, {d}]", fit.slope));
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("empty or descending n range {0}..{1}")]
    BadRange(u32, u32),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

fn range(n_min: u32, n_max: u32) -> Result<Vec<u32>, CheckError> {
    if n_min == 0 || n_min > n_max {
        return Err(CheckError::BadRange(n_min, n_max));
    }
    Ok((n_min..=n_max).collect())
}

fn is_resource(e: &FamilyError) -> bool {
    match e {
        FamilyError::Resolution(r) => r.is_resource_limit(),
        _ => false,
    }
}

/// Computes one sample per rank in parallel. Resource-limit failures are
/// recorded on the verdict; other errors abort.
fn sample<T: Send>(
    v: &mut Verdict,
    ns: &[u32],
    f: impl Fn(u32) -> Result<T, FamilyError> + Sync,
) -> Result<Vec<(u32, T)>, CheckError> {
    let results: Vec<(u32, Result<T, FamilyError>)> = ns.par_iter().map(|&n| (n, f(n))).collect();
    let mut out = Vec::new();
    for (n, r) in results {
        match r {
            Ok(x) => {
                v.completed.push(n);
                out.push((n, x));
            }
            Err(e) if is_resource(&e) => {
                v.resource_limited = true;
                v.inconclusive(format!("n = {n}: {e}"));
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(out)
}

/// γ is eventually linear with slope at most `d`; for `A/𝔞_r` the slope is
/// `r` and `γ(n) = rn`. `truncation` defaults to the certification bound at
/// `n_max`.
pub fn check_gamma_theorem(
    spec: &FamilySpec,
    n_min: u32,
    n_max: u32,
    truncation: Option<u32>,
    limits: &ResourceLimits,
) -> Result<Verdict, CheckError> {
    let ns = range(n_min, n_max)?;
    let mut v = Verdict::new("gamma-linear", spec, (n_min, n_max));
    let truncation = truncation.unwrap_or_else(|| spec.gamma_bound(n_max));
    let theta = match spec.character(truncation, limits) {
        Ok(t) => t,
        Err(e) if is_resource(&e) => {
            v.resource_limited = true;
            v.inconclusive(e.to_string());
            return Ok(v);
        }
        Err(FamilyError::Resolution(e)) => {
            v.inconclusive(format!("no character available: {e}"));
            return Ok(v);
        }
        Err(e) => return Err(e.into()),
    };
    let mut series = BTreeMap::new();
    for &n in &ns {
        let g = theta.gamma(n, spec.gamma_bound(n)).map_err(FamilyError::from)?;
        if !g.certified {
            v.inconclusive(format!(
                "γ({n}) uncertified: truncation {truncation} below the bound {}",
                spec.gamma_bound(n)
            ));
        }
        v.completed.push(n);
        series.insert(n, g.value as i64);
    }
    v.samples.insert("gamma", series);
    if v.outcome == Outcome::Inconclusive {
        return Ok(v);
    }
    let Some(fit) = v.fit("gamma") else { return Ok(v) };
    let d = spec.d();
    v.slope_band("gamma", &fit, d);
    if let FamilySpec::Determinantal { r, .. } = *spec {
        if fit.slope != r as i64 {
            v.fail(Some(fit.n0), format!("gamma slope {} differs from r = {r}", fit.slope));
        }
    }
    v.compare("gamma", |n| {
        let e = spec.expected_invariants(n);
        e.valid.then_some(e.gamma as i64)
    });
    Ok(v)
}

/// pdim and depth are eventually linear, slopes at most `d` summing to `d`.
pub fn check_pdim_depth_theorem(
    spec: &FamilySpec,
    n_min: u32,
    n_max: u32,
    limits: &ResourceLimits,
) -> Result<Verdict, CheckError> {
    let ns = range(n_min, n_max)?;
    let mut v = Verdict::new("pdim-depth-linear", spec, (n_min, n_max));
    let rows = sample(&mut v, &ns, |n| {
        let ideal = spec.instantiate(n)?;
        let p = resolution::pdim(&ideal, limits)?;
        Ok((p, ideal.num_vars() as u32 - p))
    })?;
    v.samples.insert("pdim", rows.iter().map(|&(n, (p, _))| (n, p as i64)).collect());
    v.samples.insert("depth", rows.iter().map(|&(n, (_, dp))| (n, dp as i64)).collect());
    let d = spec.d();
    for &(n, (p, dp)) in &rows {
        if p + dp != d * n {
            v.fail(Some(n), format!("depth + pdim = {} at n = {n}, expected {}", p + dp, d * n));
        }
    }
    v.compare("pdim", |n| {
        let e = spec.expected_invariants(n);
        e.valid.then_some(e.pdim as i64)
    });
    v.compare("depth", |n| {
        let e = spec.expected_invariants(n);
        e.valid.then_some(e.depth as i64)
    });
    let pf = v.fit("pdim");
    let df = v.fit("depth");
    if let (Some(pf), Some(df)) = (pf, df) {
        v.slope_band("pdim", &pf, d);
        v.slope_band("depth", &df, d);
        if pf.slope + df.slope != d as i64 {
            v.fail(Some(pf.n0.max(df.n0)), format!("slopes {} + {} do not sum to d = {d}", pf.slope, df.slope));
        }
        if let FamilySpec::Determinantal { r, .. } = *spec {
            if pf.slope != (d - r) as i64 || df.slope != r as i64 {
                v.fail(Some(pf.n0), format!("slopes ({}, {}) differ from (d - r, r) = ({}, {r})", pf.slope, df.slope, d - r));
            }
        }
    }
    Ok(v)
}

/// Krull dimension `δ(n) = an + b` eventually, with `0 ≤ a ≤ d` and
/// `0 ≤ b ≤ (d − a)a`; determinantal families attain `b = (d − a)a`, linear
/// quotients `b = 0`.
pub fn check_krull_theorem(spec: &FamilySpec, n_min: u32, n_max: u32, limits: &ResourceLimits) -> Result<Verdict, CheckError> {
    let ns = range(n_min, n_max)?;
    let mut v = Verdict::new("krull-intercept", spec, (n_min, n_max));
    let rows = sample(&mut v, &ns, |n| {
        let ideal = spec.instantiate(n)?;
        Ok(ideal.krull_dimension(limits)?)
    })?;
    v.samples.insert("krull", rows.iter().map(|&(n, k)| (n, k as i64)).collect());
    v.compare("krull", |n| {
        let e = spec.expected_invariants(n);
        e.valid.then_some(e.krull as i64)
    });
    let Some(fit) = v.fit("krull") else { return Ok(v) };
    let d = spec.d() as i64;
    let (a, b) = (fit.slope, fit.intercept);
    v.slope_band("krull", &fit, d as u32);
    if (0..=d).contains(&a) {
        let top = (d - a) * a;
        if !(0..=top).contains(&b) {
            let witness = v.samples["krull"].iter().find(|(&n, &k)| k < a * n as i64 || k > a * n as i64 + top).map(|(&n, _)| n);
            v.fail(witness, format!("intercept {b} outside [0, {top}] for slope {a}"));
        }
        let required = match *spec {
            FamilySpec::Determinantal { r, .. } => Some((r as i64, (d - r as i64) * r as i64)),
            FamilySpec::LinearQuotient { c, .. } => Some((d - c as i64, 0)),
            FamilySpec::FullRing { .. } => Some((d, 0)),
            FamilySpec::UserIdeal { .. } => None,
        };
        if let Some((ra, rb)) = required {
            if (a, b) != (ra, rb) {
                v.fail(Some(fit.n0), format!("(a, b) = ({a}, {b}), expected ({ra}, {rb})"));
            }
        }
    }
    Ok(v)
}

/// Strand formula: strands read off Tor at `n0`, confirmed
/// against `n0 − 1`, must give `pdim(n) = max_k (γ(F_k; n) − k)` for every
/// `n < n0`.
pub fn check_strand_formula(spec: &FamilySpec, n0: u32, limits: &ResourceLimits) -> Result<Verdict, CheckError> {
    Ok(strand_report(spec, n0, limits)?.0)
}

/// The strand verdict together with the strands extracted at `n0`, when
/// they could be computed.
pub fn strand_report(
    spec: &FamilySpec,
    n0: u32,
    limits: &ResourceLimits,
) -> Result<(Verdict, Option<StrandFamily>), CheckError> {
    if n0 < 2 {
        return Err(CheckError::BadRange(1, n0));
    }
    let mut v = Verdict::new("strand-formula", spec, (1, n0 - 1));
    v.notes.push(format!(
        "strands taken at n0 = {n0} and trusted below it only if the extraction at n0 - 1 agrees; this stabilization rule is a finite-rank criterion, not a proof"
    ));
    let tor = |n: u32| -> Result<StrandFamily, FamilyError> {
        let ideal = spec.instantiate(n)?;
        Ok(extract_strands(&koszul_tor(&ideal, limits)?))
    };
    let (hi, lo) = rayon::join(|| tor(n0), || tor(n0 - 1));
    let (mut hi, lo) = match (hi, lo) {
        (Ok(h), Ok(l)) => (h, l),
        (Err(e), _) | (_, Err(e)) => {
            v.resource_limited = is_resource(&e);
            match e {
                FamilyError::Resolution(ResolutionError::TorusUnstable { .. } | ResolutionError::NotGlStable { .. }) => {
                    v.inconclusive(format!("strands need a GL-stable ideal: {e}"));
                    return Ok((v, None));
                }
                e if is_resource(&e) => {
                    v.inconclusive(e.to_string());
                    return Ok((v, None));
                }
                e => return Err(e.into()),
            }
        }
    };
    if !hi.confirm_with(&lo) {
        v.inconclusive(format!("strands at n0 = {n0} disagree with n0 - 1 after restriction"));
        return Ok((v, Some(hi)));
    }
    let ns: Vec<u32> = (1..n0).collect();
    let rows = sample(&mut v, &ns, |n| Ok(resolution::pdim(&spec.instantiate(n)?, limits)?))?;
    let mut direct = BTreeMap::new();
    let mut formula = BTreeMap::new();
    for (n, p) in rows {
        let f = pdim_from_strands(&hi, n).expect("stable and in range");
        direct.insert(n, p as i64);
        formula.insert(n, f as i64);
        if f != p {
            v.fail(Some(n), format!("n = {n}: strand formula gives {f}, resolution gives {p}"));
        }
    }
    v.samples.insert("pdim", direct);
    v.samples.insert("strand_pdim", formula);
    Ok((v, Some(hi)))
}

/// The worst outcome over a suite.
pub fn overall(verdicts: &[Verdict]) -> Outcome {
    verdicts.iter().map(|v| v.outcome).max().unwrap_or(Outcome::Pass)
}
