//! The built-in verification suite: every built-in family with `d ≤ 3` on a
//! window of four ranks, plus the two strand-formula fixtures.

use rayon::prelude::*;
use tca_core::asymptotics::{
    check_gamma_theorem, check_krull_theorem, check_pdim_depth_theorem, check_strand_formula, CheckError, Verdict,
};
use tca_core::families::FamilySpec;
use tca_core::poly::ResourceLimits;

use crate::Failure;

fn families() -> Vec<(FamilySpec, u32)> {
    let mut out = Vec::new();
    for d in 1..=3 {
        for r in 1..=d {
            out.push((FamilySpec::Determinantal { d, r }, r));
        }
        out.push((FamilySpec::FullRing { d }, 1));
        for c in 1..=d {
            out.push((FamilySpec::LinearQuotient { d, c }, 1));
        }
    }
    out
}

enum Job {
    Gamma(FamilySpec, u32),
    PdimDepth(FamilySpec, u32),
    Krull(FamilySpec, u32),
    Strands(FamilySpec, u32),
}

/// Runs the suite; `degree` overrides the character truncation of every γ
/// check.
pub fn builtin(degree: Option<u32>, limits: &ResourceLimits) -> Result<Vec<Verdict>, Failure> {
    let mut jobs = Vec::new();
    for (spec, lo) in families() {
        jobs.push(Job::Gamma(spec.clone(), lo));
        jobs.push(Job::PdimDepth(spec.clone(), lo));
        jobs.push(Job::Krull(spec, lo));
    }
    jobs.push(Job::Strands(FamilySpec::LinearQuotient { d: 1, c: 1 }, 5));
    jobs.push(Job::Strands(FamilySpec::Determinantal { d: 2, r: 1 }, 4));
    let verdicts = jobs
        .par_iter()
        .map(|job| match job {
            Job::Gamma(s, lo) => check_gamma_theorem(s, *lo, lo + 3, degree, limits),
            Job::PdimDepth(s, lo) => check_pdim_depth_theorem(s, *lo, lo + 3, limits),
            Job::Krull(s, lo) => check_krull_theorem(s, *lo, lo + 3, limits),
            Job::Strands(s, n0) => check_strand_formula(s, *n0, limits),
        })
        .collect::<Result<Vec<_>, CheckError>>()?;
    Ok(verdicts)
}
