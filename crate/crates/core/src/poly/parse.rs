//! Text syntax for polynomials and `n`-parameterized generator templates.
//!
//! ```text
//! 3/2*x[1,2]^2*x[2,1] - x[1,1]
//! for j in 1..n: x[1,j]*x[2,j]
//! for j in 2..n: x[1,j-1]*x[2,j] - x[1,j]*x[2,j-1]
//! ```
//!
//! Indices are 1-based. Loop ranges are inclusive; an empty range yields no
//! generators. Index expressions are an integer, `n`, or the loop variable,
//! optionally followed by `+ k` / `- k`.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::monomial::{Monomial, MonomialOrder, VariableGrid};
use super::polynomial::{Coeff, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {message}")]
pub struct ParseError {
    /// 1-based character column in the source text.
    pub column: usize,
    pub message: String,
}

fn err<T>(column: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { column, message: message.into() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    DotDot,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push((Tok::Num(text.parse().expect("digits")), col));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if c == '.' && chars.get(i + 1) == Some(&'.') {
            out.push((Tok::DotDot, col));
            i += 2;
        } else if "+-*/^[],:".contains(c) {
            out.push((Tok::Sym(c), col));
            i += 1;
        } else {
            return err(col, format!("unexpected character '{c}'"));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct IndexExpr {
    base: IndexBase,
    offset: i64,
    column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum IndexBase {
    Literal(i64),
    Name(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct VarFactor {
    row: IndexExpr,
    col: IndexExpr,
    power: u16,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct TermAst {
    coeff: Coeff,
    vars: Vec<VarFactor>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct LoopAst {
    var: String,
    from: IndexExpr,
    to: IndexExpr,
}

/// A parsed generator template, instantiable for any grid width `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Template {
    source: String,
    looping: Option<LoopAst>,
    terms: Vec<TermAst>,
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn next(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        let col = self.col();
        match self.next() {
            Some((Tok::Sym(s), _)) if s == c => Ok(()),
            _ => err(col, format!("expected '{c}'")),
        }
    }

    fn number(&mut self) -> Result<BigInt, ParseError> {
        let col = self.col();
        match self.next() {
            Some((Tok::Num(v), _)) => Ok(v),
            _ => err(col, "expected a number"),
        }
    }

    fn small_number(&mut self) -> Result<i64, ParseError> {
        let col = self.col();
        let v = self.number()?;
        i64::try_from(v).or_else(|_| err(col, "number too large"))
    }

    fn index(&mut self) -> Result<IndexExpr, ParseError> {
        let column = self.col();
        let base = match self.next() {
            Some((Tok::Num(v), _)) => IndexBase::Literal(i64::try_from(v).or_else(|_| err(column, "index too large"))?),
            Some((Tok::Ident(name), _)) => IndexBase::Name(name),
            _ => return err(column, "expected an index"),
        };
        let mut offset = 0i64;
        while let Some(Tok::Sym(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let k = self.small_number()?;
            offset += if c == '+' { k } else { -k };
        }
        Ok(IndexExpr { base, offset, column })
    }

    fn factor(&mut self, term: &mut TermAst) -> Result<(), ParseError> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Num(_)) => {
                let num = self.number()?;
                let mut c = Coeff::from_integer(num);
                if self.peek() == Some(&Tok::Sym('/')) {
                    self.pos += 1;
                    let dcol = self.col();
                    let den = self.number()?;
                    if den.is_zero() {
                        return err(dcol, "division by zero");
                    }
                    c /= Coeff::from_integer(den);
                }
                term.coeff *= c;
                Ok(())
            }
            Some(Tok::Ident(name)) if name == "x" => {
                self.pos += 1;
                self.expect_sym('[')?;
                let row = self.index()?;
                self.expect_sym(',')?;
                let col_idx = self.index()?;
                self.expect_sym(']')?;
                let mut power = 1u16;
                if self.peek() == Some(&Tok::Sym('^')) {
                    self.pos += 1;
                    let pcol = self.col();
                    power = u16::try_from(self.small_number()?).or_else(|_| err(pcol, "exponent out of range"))?;
                }
                term.vars.push(VarFactor { row, col: col_idx, power });
                Ok(())
            }
            Some(Tok::Ident(name)) => err(col, format!("unknown symbol '{name}' (variables are written x[i,j])")),
            _ => err(col, "expected a coefficient or a variable x[i,j]"),
        }
    }

    fn term(&mut self, sign: i32) -> Result<TermAst, ParseError> {
        let mut term = TermAst { coeff: Coeff::from_integer(sign.into()), vars: Vec::new() };
        self.factor(&mut term)?;
        while self.peek() == Some(&Tok::Sym('*')) {
            self.pos += 1;
            self.factor(&mut term)?;
        }
        Ok(term)
    }

    fn polynomial(&mut self) -> Result<Vec<TermAst>, ParseError> {
        let mut terms = Vec::new();
        let mut sign = 1;
        match self.peek() {
            Some(Tok::Sym('-')) => {
                sign = -1;
                self.pos += 1;
            }
            Some(Tok::Sym('+')) => self.pos += 1,
            _ => {}
        }
        terms.push(self.term(sign)?);
        while let Some(Tok::Sym(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            terms.push(self.term(if c == '-' { -1 } else { 1 })?);
        }
        if self.pos < self.toks.len() {
            return err(self.col(), "unexpected trailing input");
        }
        Ok(terms)
    }
}

impl Template {
    pub fn parse(src: &str) -> Result<Template, ParseError> {
        let toks = lex(src)?;
        if toks.is_empty() {
            return err(1, "empty polynomial");
        }
        let mut p = Parser { toks, pos: 0, end_col: src.chars().count() + 1 };
        let mut looping = None;
        if p.peek() == Some(&Tok::Ident("for".into())) {
            p.pos += 1;
            let vcol = p.col();
            let var = match p.next() {
                Some((Tok::Ident(v), _)) if v != "n" && v != "x" => v,
                _ => return err(vcol, "expected a loop variable name"),
            };
            let icol = p.col();
            if p.next().map(|t| t.0) != Some(Tok::Ident("in".into())) {
                return err(icol, "expected 'in'");
            }
            let from = p.index()?;
            let dcol = p.col();
            if p.next().map(|t| t.0) != Some(Tok::DotDot) {
                return err(dcol, "expected '..'");
            }
            let to = p.index()?;
            p.expect_sym(':')?;
            looping = Some(LoopAst { var, from, to });
        }
        let terms = p.polynomial()?;
        let template = Template { source: src.to_string(), looping, terms };
        template.check_names()?;
        Ok(template)
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn is_loop(&self) -> bool {
        self.looping.is_some()
    }

    fn check_names(&self) -> Result<(), ParseError> {
        let loop_var = self.looping.as_ref().map(|l| l.var.as_str());
        let check = |e: &IndexExpr, allow_loop: bool| match &e.base {
            IndexBase::Name(name) if name == "n" => Ok(()),
            IndexBase::Name(name) if allow_loop && Some(name.as_str()) == loop_var => Ok(()),
            IndexBase::Name(name) => err(e.column, format!("unknown index name '{name}'")),
            IndexBase::Literal(_) => Ok(()),
        };
        if let Some(l) = &self.looping {
            check(&l.from, false)?;
            check(&l.to, false)?;
        }
        for t in &self.terms {
            for v in &t.vars {
                check(&v.row, true)?;
                check(&v.col, true)?;
            }
        }
        Ok(())
    }

    /// Generators at grid width `grid.n`: one per loop value, or exactly one
    /// without a loop.
    pub fn instantiate(&self, grid: VariableGrid, order: MonomialOrder) -> Result<Vec<Polynomial>, ParseError> {
        let n = grid.n as i64;
        match &self.looping {
            None => Ok(vec![self.build(grid, order, n, None)?]),
            Some(l) => {
                let from = eval(&l.from, n, None);
                let to = eval(&l.to, n, None);
                (from..=to).map(|v| self.build(grid, order, n, Some((&l.var, v)))).collect()
            }
        }
    }

    fn build(&self, grid: VariableGrid, order: MonomialOrder, n: i64, binding: Option<(&str, i64)>) -> Result<Polynomial, ParseError> {
        let nv = grid.num_vars();
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let mut exps = vec![0u16; nv];
            for v in &t.vars {
                let i = eval(&v.row, n, binding);
                let j = eval(&v.col, n, binding);
                let idx = (i >= 1 && j >= 1)
                    .then(|| grid.index(i as u32, j as u32))
                    .flatten()
                    .ok_or_else(|| ParseError {
                        column: v.row.column,
                        message: format!("x[{i},{j}] lies outside the {}×{} grid", grid.d, grid.n),
                    })?;
                exps[idx] += v.power;
            }
            terms.push((Monomial::from_exponents(exps), t.coeff.clone()));
        }
        Ok(Polynomial::from_terms(grid, order, terms))
    }
}

fn eval(e: &IndexExpr, n: i64, binding: Option<(&str, i64)>) -> i64 {
    let base = match &e.base {
        IndexBase::Literal(v) => *v,
        IndexBase::Name(name) if name == "n" => n,
        IndexBase::Name(name) => match binding {
            Some((var, value)) if var == name => value,
            _ => unreachable!("names are validated at parse time"),
        },
    };
    base + e.offset
}

impl Polynomial {
    /// Parses a single polynomial (no loop; `n` is the grid width).
    pub fn parse(src: &str, grid: VariableGrid, order: MonomialOrder) -> Result<Polynomial, ParseError> {
        let t = Template::parse(src)?;
        if t.is_loop() {
            return err(1, "a loop template describes several polynomials");
        }
        Ok(t.instantiate(grid, order)?.pop().expect("one generator"))
    }
}
