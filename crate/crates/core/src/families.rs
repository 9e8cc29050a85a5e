//! The module families under study, their finite-rank ideals, closed-form
//! characters and expected invariants, and the JSON config format.
//!
//! ```json
//! { "variant": "determinantal", "d": 2, "r": 1 }
//! { "variant": "full", "d": 3 }
//! { "variant": "linear", "d": 3, "c": 2 }
//! { "variant": "user", "d": 2, "generators": ["for j in 1..n: x[1,j]*x[2,j]"] }
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::character::{cauchy_character, weights_to_schur, CharacterError, SchurCharacter, WeightMultiplicity};
use crate::poly::{
    standard_monomials, Ideal, IdealError, MonomialOrder, ParseError, Polynomial, ResourceLimits, Template, VariableGrid,
};
use crate::resolution::{check_gl_stable, ResolutionError};

const ORDER: MonomialOrder = MonomialOrder::GRevLex;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "lowercase", deny_unknown_fields)]
pub enum FamilySpec {
    /// `A/𝔞_r`, the quotient by the `(r+1)`-minors.
    Determinantal { d: u32, r: u32 },
    /// `A` itself.
    #[serde(rename = "full")]
    FullRing { d: u32 },
    /// `A` modulo the variables of the first `c` rows.
    #[serde(rename = "linear")]
    LinearQuotient { d: u32, c: u32 },
    /// Generators given by templates in `n`.
    #[serde(rename = "user")]
    UserIdeal { d: u32, generators: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid field `{field}`: {message}")]
    Invalid { field: &'static str, message: String },
    #[error("generators[{index}]: {error}")]
    Template { index: usize, error: ParseError },
    #[error("n must be at least 1")]
    ZeroRank,
    #[error("user-defined families have no closed-form character")]
    NoClosedForm,
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
}

impl From<IdealError> for FamilyError {
    fn from(e: IdealError) -> Self {
        FamilyError::Resolution(e.into())
    }
}

/// Closed-form invariants at one `n`. Outside the formulas' hypotheses
/// `valid` is false and the numbers carry no meaning.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExpectedInvariants {
    pub gamma: u32,
    pub pdim: u32,
    pub depth: u32,
    pub krull: u32,
    pub valid: bool,
}

impl FamilySpec {
    pub fn d(&self) -> u32 {
        match *self {
            FamilySpec::Determinantal { d, .. }
            | FamilySpec::FullRing { d }
            | FamilySpec::LinearQuotient { d, .. }
            | FamilySpec::UserIdeal { d, .. } => d,
        }
    }

    /// Checks parameter ranges and that every template parses and
    /// instantiates at small `n`.
    pub fn validate(&self) -> Result<(), FamilyError> {
        let d = self.d();
        if d == 0 {
            return Err(FamilyError::Invalid { field: "d", message: "must be at least 1".into() });
        }
        match *self {
            FamilySpec::Determinantal { r, .. } if r > d => {
                Err(FamilyError::Invalid { field: "r", message: format!("{r} exceeds d = {d}") })
            }
            FamilySpec::LinearQuotient { c, .. } if c > d => {
                Err(FamilyError::Invalid { field: "c", message: format!("{c} exceeds d = {d}") })
            }
            FamilySpec::UserIdeal { ref generators, .. } => {
                for n in 1..=3 {
                    self.user_generators(generators, n)?;
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    fn user_generators(&self, generators: &[String], n: u32) -> Result<Vec<Polynomial>, FamilyError> {
        let grid = VariableGrid::new(self.d(), n);
        let mut out = Vec::new();
        for (index, src) in generators.iter().enumerate() {
            let t = Template::parse(src).map_err(|error| FamilyError::Template { index, error })?;
            out.extend(t.instantiate(grid, ORDER).map_err(|error| FamilyError::Template { index, error })?);
        }
        Ok(out)
    }

    /// The ideal whose quotient is `M(ℂⁿ)`.
    pub fn instantiate(&self, n: u32) -> Result<Ideal, FamilyError> {
        if n == 0 {
            return Err(FamilyError::ZeroRank);
        }
        self.validate_params()?;
        let d = self.d();
        let grid = VariableGrid::new(d, n);
        let gens = match *self {
            FamilySpec::Determinantal { r, .. } => minors(grid, r + 1),
            FamilySpec::FullRing { .. } => Vec::new(),
            FamilySpec::LinearQuotient { c, .. } => {
                (1..=c).flat_map(|i| (1..=n).map(move |j| Polynomial::var(grid, ORDER, i, j))).collect()
            }
            FamilySpec::UserIdeal { ref generators, .. } => self.user_generators(generators, n)?,
        };
        Ok(Ideal::new(grid, gens)?)
    }

    fn validate_params(&self) -> Result<(), FamilyError> {
        match self {
            FamilySpec::UserIdeal { .. } if self.d() == 0 => {
                Err(FamilyError::Invalid { field: "d", message: "must be at least 1".into() })
            }
            FamilySpec::UserIdeal { .. } => Ok(()),
            _ => self.validate(),
        }
    }

    /// `Θ_M` through degree `truncation`, from the Cauchy identity.
    pub fn closed_form_character(&self, truncation: u32) -> Result<SchurCharacter, FamilyError> {
        self.validate_params()?;
        match *self {
            FamilySpec::Determinantal { d, r } => Ok(cauchy_character(d, r, truncation)?),
            FamilySpec::FullRing { d } => Ok(cauchy_character(d, d, truncation)?),
            FamilySpec::LinearQuotient { d, c } => Ok(cauchy_character(d - c, d - c, truncation)?),
            FamilySpec::UserIdeal { .. } => Err(FamilyError::NoClosedForm),
        }
    }

    /// `Θ_M` through degree `truncation`: the closed form when there is one,
    /// otherwise decomposed from the torus weights of standard monomials at
    /// rank `d` (every partition of a quotient of `A` has at most `d` rows,
    /// so rank `d` sees all of them).
    pub fn character(&self, truncation: u32, limits: &ResourceLimits) -> Result<SchurCharacter, FamilyError> {
        match self {
            FamilySpec::UserIdeal { .. } => quotient_character(&self.instantiate(self.d())?, truncation, limits),
            _ => self.closed_form_character(truncation),
        }
    }

    /// A proven upper bound for `γ(n)`. Quotients of `A` only contain
    /// partitions with at most `d` rows (at most `r` for `A/𝔞_r`), so a
    /// partition with at most `n` columns has size at most `dn`.
    pub fn gamma_bound(&self, n: u32) -> u32 {
        match *self {
            FamilySpec::Determinantal { r, .. } => r * n,
            FamilySpec::LinearQuotient { d, c } => (d - c) * n,
            FamilySpec::FullRing { d } | FamilySpec::UserIdeal { d, .. } => d * n,
        }
    }

    pub fn expected_invariants(&self, n: u32) -> ExpectedInvariants {
        let d = self.d();
        match *self {
            FamilySpec::Determinantal { r, .. } if n.min(d) >= r => ExpectedInvariants {
                gamma: r * n,
                pdim: (d - r) * n - (d - r) * r,
                depth: r * n + r * (d - r),
                krull: r * n + r * (d - r),
                valid: true,
            },
            FamilySpec::FullRing { d } => ExpectedInvariants { gamma: d * n, pdim: 0, depth: d * n, krull: d * n, valid: true },
            FamilySpec::LinearQuotient { d, c } if c <= d => ExpectedInvariants {
                gamma: (d - c) * n,
                pdim: c * n,
                depth: (d - c) * n,
                krull: (d - c) * n,
                valid: true,
            },
            _ => ExpectedInvariants { gamma: 0, pdim: 0, depth: 0, krull: 0, valid: false },
        }
    }

    /// Short label such as `determinantal(d=2,r=1)`.
    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Determinantal { d, r } => write!(f, "determinantal(d={d},r={r})"),
            FamilySpec::FullRing { d } => write!(f, "full(d={d})"),
            FamilySpec::LinearQuotient { d, c } => write!(f, "linear(d={d},c={c})"),
            FamilySpec::UserIdeal { d, generators } => write!(f, "user(d={d},{} templates)", generators.len()),
        }
    }
}

/// All `k × k` minors of the generic matrix on `grid`.
pub fn minors(grid: VariableGrid, k: u32) -> Vec<Polynomial> {
    let mut out = Vec::new();
    if k == 0 || k > grid.d || k > grid.n {
        return out;
    }
    for rows in subsets(grid.d, k) {
        for cols in subsets(grid.n, k) {
            out.push(determinant(grid, &rows, &cols));
        }
    }
    out
}

fn subsets(max: u32, k: u32) -> Vec<Vec<u32>> {
    fn rec(start: u32, max: u32, k: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() as u32 == k {
            out.push(cur.clone());
            return;
        }
        for v in start..=max {
            cur.push(v);
            rec(v + 1, max, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, max, k, &mut Vec::new(), &mut out);
    out
}

// Laplace expansion along the first row.
fn determinant(grid: VariableGrid, rows: &[u32], cols: &[u32]) -> Polynomial {
    if rows.len() == 1 {
        return Polynomial::var(grid, ORDER, rows[0], cols[0]);
    }
    let mut acc = Polynomial::zero(grid, ORDER);
    for (k, &c) in cols.iter().enumerate() {
        let rest: Vec<u32> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = Polynomial::var(grid, ORDER, rows[0], c).mul(&determinant(grid, &rows[1..], &rest));
        acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Character of `A(ℂᵈ)/I` through degree `truncation`, by Kostka inversion of
/// the torus weights of standard monomials. Requires `I` to be
/// `GL`-stable.
pub fn quotient_character(ideal: &Ideal, truncation: u32, limits: &ResourceLimits) -> Result<SchurCharacter, FamilyError> {
    ideal.check_homogeneous()?;
    let gb = ideal.groebner_basis(ORDER, limits)?;
    if gb.is_unit_ideal() {
        return Ok(SchurCharacter::zero(truncation));
    }
    check_gl_stable(ideal, &gb)?;
    let grid = ideal.grid();
    let mut weights = WeightMultiplicity::new(grid.n as usize);
    for k in 0..=truncation {
        for m in standard_monomials(&gb, k) {
            weights.add(m.column_weight(&grid), 1)?;
        }
    }
    Ok(weights_to_schur(&weights)?.with_truncation(truncation))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}{message}", position.map(|(l, c)| format!("line {l}, column {c}: ")).unwrap_or_default())]
pub struct ConfigError {
    /// 1-based line and column in the config text, when known.
    pub position: Option<(usize, usize)>,
    pub message: String,
}

/// Parses and validates a family config. Syntax and schema errors carry the
/// position reported by the JSON reader; template errors are located inside
/// the offending string.
pub fn parse_config(src: &str) -> Result<FamilySpec, ConfigError> {
    let spec: FamilySpec = serde_json::from_str(src).map_err(|e| ConfigError {
        position: (e.line() > 0).then(|| (e.line(), e.column())),
        message: e.to_string().split(" at line ").next().unwrap_or_default().to_string(),
    })?;
    spec.validate().map_err(|e| {
        let position = match (&e, &spec) {
            (FamilyError::Template { index, error }, FamilySpec::UserIdeal { generators, .. }) => {
                locate_in_string(src, &generators[*index], error.column)
            }
            (FamilyError::Invalid { field, .. }, _) => locate_field(src, field),
            _ => None,
        };
        ConfigError { position, message: e.to_string() }
    })?;
    Ok(spec)
}

fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset];
    let line = before.matches('\n').count() + 1;
    let col = before.rfind('\n').map_or(before.chars().count(), |p| before[p + 1..].chars().count()) + 1;
    (line, col)
}

fn locate_field(src: &str, field: &str) -> Option<(usize, usize)> {
    src.find(&format!("\"{field}\"")).map(|off| line_col(src, off))
}

// Finds the JSON literal of `value` after the "generators" key; exact when
// the string has no escapes before the error column.
fn locate_in_string(src: &str, value: &str, column: usize) -> Option<(usize, usize)> {
    let start = src.find("\"generators\"")?;
    let literal = serde_json::to_string(value).ok()?;
    let off = start + src[start..].find(&literal)?;
    let inner: usize = value.chars().take(column.saturating_sub(1)).map(char::len_utf8).sum();
    Some(line_col(src, off + 1 + inner))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{hilbert_function, is_groebner_basis};

    #[test]
    fn instantiation_examples() {
        let det = FamilySpec::Determinantal { d: 2, r: 1 }.instantiate(2).unwrap();
        assert_eq!(det.generators().len(), 1);
        assert_eq!(det.generators()[0].to_string(), "-x[1,2]*x[2,1] + x[1,1]*x[2,2]");
        assert!(FamilySpec::Determinantal { d: 2, r: 2 }.instantiate(3).unwrap().generators().is_empty());
        let nine = FamilySpec::Determinantal { d: 3, r: 1 }.instantiate(3).unwrap();
        assert_eq!(nine.generators().len(), 9);
        assert!(is_groebner_basis(&nine.generators().iter().map(Polynomial::monic).collect::<Vec<_>>()));
        let lin = FamilySpec::LinearQuotient { d: 3, c: 2 }.instantiate(2).unwrap();
        assert_eq!(lin.generators().len(), 4);
        assert_eq!(FamilySpec::FullRing { d: 2 }.instantiate(0), Err(FamilyError::ZeroRank));
    }

    #[test]
    fn closed_forms() {
        let full = FamilySpec::FullRing { d: 1 }.closed_form_character(3).unwrap();
        assert_eq!(full.to_string(), "s[] + s[1] + s[2] + s[3]");
        let trivial = FamilySpec::Determinantal { d: 3, r: 0 }.closed_form_character(5).unwrap();
        assert_eq!(trivial.to_string(), "s[]");
        let user = FamilySpec::UserIdeal { d: 1, generators: vec![] };
        assert_eq!(user.closed_form_character(2), Err(FamilyError::NoClosedForm));
    }

    #[test]
    fn expected_examples() {
        let e = FamilySpec::Determinantal { d: 2, r: 1 }.expected_invariants(3);
        assert_eq!((e.gamma, e.pdim, e.depth, e.krull, e.valid), (3, 2, 4, 4, true));
        let e = FamilySpec::Determinantal { d: 3, r: 2 }.expected_invariants(4);
        assert_eq!((e.gamma, e.pdim, e.depth, e.krull), (8, 2, 10, 10));
        let e = FamilySpec::Determinantal { d: 3, r: 3 }.expected_invariants(2);
        assert!(!e.valid);
        let e = FamilySpec::Determinantal { d: 3, r: 3 }.expected_invariants(4);
        assert_eq!((e.pdim, e.depth), (0, 12));
        assert!(!FamilySpec::Determinantal { d: 3, r: 2 }.expected_invariants(1).valid);
    }

    #[test]
    fn closed_form_matches_standard_monomials() {
        let limits = ResourceLimits::default();
        for spec in [
            FamilySpec::Determinantal { d: 2, r: 1 },
            FamilySpec::Determinantal { d: 3, r: 1 },
            FamilySpec::LinearQuotient { d: 3, c: 1 },
            FamilySpec::FullRing { d: 2 },
        ] {
            let theta = spec.closed_form_character(5).unwrap();
            for n in 1..=3 {
                let gb = spec.instantiate(n).unwrap().groebner_basis(ORDER, &limits).unwrap();
                for k in 0..=5 {
                    assert_eq!(hilbert_function(&gb, k), theta.specialize_hilbert(n, k).unwrap(), "{spec} n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn user_character_matches_closed_form() {
        let limits = ResourceLimits::default();
        let user = FamilySpec::UserIdeal {
            d: 2,
            generators: vec!["for j in 1..n: for_each_pair".into()],
        };
        assert!(user.validate().is_err());
        let minors_template = FamilySpec::UserIdeal {
            d: 2,
            generators: vec!["x[1,1]*x[2,2] - x[1,2]*x[2,1]".into()],
        };
        let theta = minors_template.character(6, &limits).unwrap();
        assert_eq!(theta, FamilySpec::Determinantal { d: 2, r: 1 }.closed_form_character(6).unwrap());
    }

    #[test]
    fn config_parsing() {
        assert_eq!(parse_config(r#"{"variant":"determinantal","d":2,"r":1}"#).unwrap(), FamilySpec::Determinantal { d: 2, r: 1 });
        assert_eq!(parse_config(r#"{"variant":"full","d":3}"#).unwrap(), FamilySpec::FullRing { d: 3 });
        let err = parse_config("{\"variant\":\"determinantal\",\n \"d\":2, \"r\":3}").unwrap_err();
        assert_eq!(err.position, Some((2, 9)));
        assert!(err.message.contains("`r`"));
        let err = parse_config("{\"variant\":\"full\",\n  \"d\": }").unwrap_err();
        assert_eq!(err.position.map(|p| p.0), Some(2));
        let err = parse_config(r#"{"variant":"full","d":2,"extra":1}"#).unwrap_err();
        assert!(err.message.contains("extra"), "{}", err.message);
        let src = "{\"variant\":\"user\",\"d\":2,\n\"generators\":[\"x[1,1]\", \"x[1,1]*y[2,2]\"]}";
        let err = parse_config(src).unwrap_err();
        assert!(err.message.starts_with("generators[1]"), "{}", err.message);
        assert_eq!(err.position, Some((2, 33)));
    }
}
