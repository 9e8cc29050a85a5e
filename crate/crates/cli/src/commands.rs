use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use tca_core::asymptotics::{
    check_gamma_theorem, check_krull_theorem, check_pdim_depth_theorem, strand_report, LinearFitResult, Outcome, Verdict,
};
use tca_core::families::{ExpectedInvariants, FamilyError, FamilySpec};
use tca_core::resolution::{minimal_free_resolution, BettiEntry, BettiTable};
use tca_core::{Partition, SchurCharacter};

use crate::output::{emit, json, table, text_table};
use crate::{suite, Failure, Format, RunArgs, FAIL, INCONCLUSIVE, PASS, RESOURCE};

pub fn character(args: &RunArgs) -> Result<u8, Failure> {
    let spec = args.spec()?;
    let degree = args.degree.ok_or_else(|| Failure::Config("--degree is required".into()))?;
    let theta = spec.character(degree, &args.limits())?;
    #[derive(Serialize)]
    struct Term<'a> {
        partition: &'a Partition,
        size: u32,
        multiplicity: i64,
    }
    let terms: Vec<Term> =
        theta.terms().map(|(p, m)| Term { partition: p, size: p.size(), multiplicity: m }).collect();
    let body = match args.format {
        Format::Text => format!("{spec} through degree {degree}\n{theta}\n"),
        Format::Csv => table(Format::Csv, &terms),
        Format::Json => {
            #[derive(Serialize)]
            struct Report<'a> {
                family: &'a FamilySpec,
                character: &'a SchurCharacter,
            }
            json(&Report { family: &spec, character: &theta })
        }
    };
    emit(args, &body)?;
    Ok(PASS)
}

#[derive(Serialize)]
struct GammaRow {
    n: u32,
    gamma: u32,
    certified: bool,
    witness: String,
    expected: Option<u32>,
    matches: Option<bool>,
}

pub fn gamma_table(args: &RunArgs) -> Result<u8, Failure> {
    let spec = args.spec()?;
    let (lo, hi) = args.range()?;
    let degree = args.degree.unwrap_or_else(|| spec.gamma_bound(hi));
    let theta = spec.character(degree, &args.limits())?;
    let mut rows = Vec::new();
    for n in lo..=hi {
        let g = theta.gamma(n, spec.gamma_bound(n))?;
        let e = spec.expected_invariants(n);
        let expected = e.valid.then_some(e.gamma);
        rows.push(GammaRow {
            n,
            gamma: g.value,
            certified: g.certified,
            witness: g.witness.map(|w| w.to_string()).unwrap_or_default(),
            expected,
            matches: expected.filter(|_| g.certified).map(|x| x == g.value),
        });
    }
    emit(args, &table(args.format, &rows))?;
    Ok(if rows.iter().any(|r| r.matches == Some(false)) {
        FAIL
    } else if rows.iter().any(|r| !r.certified) {
        INCONCLUSIVE
    } else {
        PASS
    })
}

pub fn betti(args: &RunArgs) -> Result<u8, Failure> {
    let spec = args.spec()?;
    let (lo, hi) = args.range()?;
    let limits = args.limits();
    let tables: Vec<(u32, BettiTable)> = (lo..=hi)
        .into_par_iter()
        .map(|n| Ok((n, minimal_free_resolution(&spec.instantiate(n)?, &limits)?)))
        .collect::<Result<_, FamilyError>>()?;
    let body = match args.format {
        Format::Text => tables.iter().map(|(n, t)| format!("n = {n}\n{t}\n")).collect::<String>(),
        Format::Json => {
            #[derive(Serialize)]
            struct Entry<'a> {
                n: u32,
                betti: &'a BettiTable,
            }
            json(&tables.iter().map(|(n, t)| Entry { n: *n, betti: t }).collect::<Vec<_>>())
        }
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                n: u32,
                p: u32,
                j: u32,
                beta: u64,
            }
            let rows: Vec<Row> = tables
                .iter()
                .flat_map(|(n, t)| t.entries().map(move |e: BettiEntry| Row { n: *n, p: e.p, j: e.j, beta: e.beta }))
                .collect();
            crate::output::csv(&rows)
        }
    };
    emit(args, &body)?;
    Ok(PASS)
}

struct Measured {
    n: u32,
    gamma: Option<(u32, bool)>,
    pdim: u32,
    depth: u32,
    krull: u32,
    expected: ExpectedInvariants,
}

#[derive(Serialize)]
struct InvariantRow {
    n: u32,
    gamma: Option<u32>,
    gamma_certified: Option<bool>,
    pdim: u32,
    depth: u32,
    krull: u32,
    valid: bool,
    expected_gamma: Option<u32>,
    expected_pdim: Option<u32>,
    expected_depth: Option<u32>,
    expected_krull: Option<u32>,
    gamma_match: Option<bool>,
    pdim_match: Option<bool>,
    depth_match: Option<bool>,
    krull_match: Option<bool>,
}

impl From<&Measured> for InvariantRow {
    fn from(m: &Measured) -> Self {
        let e = m.expected;
        let exp = |x: u32| e.valid.then_some(x);
        let gamma = m.gamma.map(|g| g.0);
        let certified = m.gamma.map(|g| g.1);
        InvariantRow {
            n: m.n,
            gamma,
            gamma_certified: certified,
            pdim: m.pdim,
            depth: m.depth,
            krull: m.krull,
            valid: e.valid,
            expected_gamma: exp(e.gamma),
            expected_pdim: exp(e.pdim),
            expected_depth: exp(e.depth),
            expected_krull: exp(e.krull),
            gamma_match: match (gamma, certified) {
                (Some(g), Some(true)) => exp(e.gamma).map(|x| x == g),
                _ => None,
            },
            pdim_match: exp(e.pdim).map(|x| x == m.pdim),
            depth_match: exp(e.depth).map(|x| x == m.depth),
            krull_match: exp(e.krull).map(|x| x == m.krull),
        }
    }
}

pub fn invariants_table(args: &RunArgs) -> Result<u8, Failure> {
    let spec = args.spec()?;
    let (lo, hi) = args.range()?;
    let limits = args.limits();
    let degree = args.degree.unwrap_or_else(|| spec.gamma_bound(hi));
    // user ideals that are not GL-stable have no character; leave γ blank
    let theta = match spec.character(degree, &limits) {
        Ok(t) => Some(t),
        Err(FamilyError::Resolution(e)) if !e.is_resource_limit() => None,
        Err(e) => return Err(e.into()),
    };
    let measured: Vec<Measured> = (lo..=hi)
        .into_par_iter()
        .map(|n| -> Result<Measured, Failure> {
            let ideal = spec.instantiate(n)?;
            let pdim = minimal_free_resolution(&ideal, &limits)?.pdim().unwrap_or(0);
            let krull = ideal.krull_dimension(&limits).map_err(tca_core::resolution::ResolutionError::from)?;
            let gamma = match &theta {
                Some(t) => {
                    let g = t.gamma(n, spec.gamma_bound(n))?;
                    Some((g.value, g.certified))
                }
                None => None,
            };
            Ok(Measured { n, gamma, pdim, depth: ideal.num_vars() as u32 - pdim, krull, expected: spec.expected_invariants(n) })
        })
        .collect::<Result<_, _>>()?;
    let rows: Vec<InvariantRow> = measured.iter().map(InvariantRow::from).collect();
    emit(args, &table(args.format, &rows))?;
    let flags = rows.iter().flat_map(|r| [r.gamma_match, r.pdim_match, r.depth_match, r.krull_match]);
    Ok(if flags.into_iter().any(|f| f == Some(false)) {
        FAIL
    } else if rows.iter().any(|r| r.gamma_certified == Some(false)) {
        INCONCLUSIVE
    } else {
        PASS
    })
}

pub fn strands(args: &RunArgs) -> Result<u8, Failure> {
    let spec = args.spec()?;
    let (_, n0) = args.range()?;
    let (verdict, strands) = strand_report(&spec, n0, &args.limits())?;
    #[derive(Serialize)]
    struct Row {
        n: u32,
        pdim: i64,
        strand_pdim: i64,
        matches: bool,
    }
    let rows: Vec<Row> = match (verdict.samples.get("pdim"), verdict.samples.get("strand_pdim")) {
        (Some(p), Some(s)) => p.iter().map(|(&n, &pd)| Row { n, pdim: pd, strand_pdim: s[&n], matches: pd == s[&n] }).collect(),
        _ => Vec::new(),
    };
    let body = match args.format {
        Format::Csv => table(Format::Csv, &rows),
        Format::Json => {
            #[derive(Serialize)]
            struct Report<'a> {
                family: &'a FamilySpec,
                n0: u32,
                stable: bool,
                strands: BTreeMap<u32, &'a SchurCharacter>,
                rows: &'a [Row],
                verdict: &'a Verdict,
            }
            json(&Report {
                family: &spec,
                n0,
                stable: strands.as_ref().is_some_and(|s| s.is_stable()),
                strands: strands.iter().flat_map(|s| s.iter()).collect(),
                rows: &rows,
                verdict: &verdict,
            })
        }
        Format::Text => {
            let mut s = format!("strands of {spec} at n0 = {n0}\n");
            if let Some(st) = &strands {
                s += &format!("stable: {}\n", st.is_stable());
                for (k, f) in st.iter() {
                    s += &format!("F_{k} = {f}\n");
                }
            }
            s.push('\n');
            if !rows.is_empty() {
                s += &text_table(&rows);
                s.push('\n');
            }
            s += &verdict_text(std::slice::from_ref(&verdict));
            s
        }
    };
    emit(args, &body)?;
    Ok(exit_code(std::slice::from_ref(&verdict)))
}

pub fn fit(args: &RunArgs) -> Result<u8, Failure> {
    let spec = args.spec()?;
    let verdicts = family_checks(&spec, args)?;
    #[derive(Serialize)]
    struct Row<'a> {
        family: &'a str,
        series: &'a str,
        slope: i64,
        intercept: i64,
        n0: u32,
        exact: bool,
        samples_used: usize,
    }
    let rows: Vec<Row> = verdicts
        .iter()
        .flat_map(|v| {
            v.fits.iter().map(|(series, f)| Row {
                family: &v.family,
                series,
                slope: f.slope,
                intercept: f.intercept,
                n0: f.n0,
                exact: f.exact,
                samples_used: f.samples_used,
            })
        })
        .collect();
    let body = match args.format {
        Format::Json => json(&verdicts),
        Format::Csv => table(Format::Csv, &rows),
        Format::Text => format!("{}\n{}", text_table(&rows), verdict_text(&verdicts)),
    };
    emit(args, &body)?;
    Ok(exit_code(&verdicts))
}

pub fn verify(args: &RunArgs) -> Result<u8, Failure> {
    let verdicts = if args.has_family() {
        family_checks(&args.spec()?, args)?
    } else {
        suite::builtin(args.degree, &args.limits())?
    };
    let body = match args.format {
        Format::Json => json(&verdicts),
        Format::Csv => table(Format::Csv, &verdicts.iter().map(VerdictRow::from).collect::<Vec<_>>()),
        Format::Text => verdict_text(&verdicts),
    };
    emit(args, &body)?;
    Ok(exit_code(&verdicts))
}

fn family_checks(spec: &FamilySpec, args: &RunArgs) -> Result<Vec<Verdict>, Failure> {
    let (lo, hi) = args.range()?;
    let limits = args.limits();
    Ok(vec![
        check_gamma_theorem(spec, lo, hi, args.degree, &limits)?,
        check_pdim_depth_theorem(spec, lo, hi, &limits)?,
        check_krull_theorem(spec, lo, hi, &limits)?,
    ])
}

/// Fail beats a resource ceiling, which beats inconclusive.
pub fn exit_code(verdicts: &[Verdict]) -> u8 {
    if verdicts.iter().any(|v| v.outcome == Outcome::Fail) {
        FAIL
    } else if verdicts.iter().any(|v| v.resource_limited) {
        RESOURCE
    } else if verdicts.iter().any(|v| v.outcome == Outcome::Inconclusive) {
        INCONCLUSIVE
    } else {
        PASS
    }
}

fn describe_fit(name: &str, f: &LinearFitResult) -> String {
    let sign = if f.intercept < 0 { '-' } else { '+' };
    format!(
        "{name}={}n{sign}{} (n>={}{})",
        f.slope,
        f.intercept.abs(),
        f.n0,
        if f.exact { "" } else { ", inexact" }
    )
}

#[derive(Serialize)]
struct VerdictRow<'a> {
    outcome: Outcome,
    check: &'a str,
    family: &'a str,
    n_min: u32,
    n_max: u32,
    witness: Option<u32>,
    resource_limited: bool,
    fits: String,
    notes: String,
}

impl<'a> From<&'a Verdict> for VerdictRow<'a> {
    fn from(v: &'a Verdict) -> Self {
        VerdictRow {
            outcome: v.outcome,
            check: v.check,
            family: &v.family,
            n_min: v.n_range.0,
            n_max: v.n_range.1,
            witness: v.witness,
            resource_limited: v.resource_limited,
            fits: v.fits.iter().map(|(k, f)| describe_fit(k, f)).collect::<Vec<_>>().join("; "),
            notes: v.notes.join("; "),
        }
    }
}

fn verdict_text(verdicts: &[Verdict]) -> String {
    let mut out = String::new();
    for v in verdicts {
        let outcome = match v.outcome {
            Outcome::Pass => "pass",
            Outcome::Fail => "FAIL",
            Outcome::Inconclusive => "inconclusive",
        };
        out += &format!("{outcome:<12} {:<17} {:<28} n={}..{}", v.check, v.family, v.n_range.0, v.n_range.1);
        if let Some(w) = v.witness {
            out += &format!("  witness n={w}");
        }
        out.push('\n');
        for (k, f) in &v.fits {
            out += &format!("    {}\n", describe_fit(k, f));
        }
        for note in &v.notes {
            out += &format!("    note: {note}\n");
        }
    }
    out
}
