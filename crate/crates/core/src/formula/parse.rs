//! Recursive descent parser for the formula language and the normalizer to
//! matrix form.
//!
//! ```text
//! formula  = conj
//! conj     = unit { "&" unit }
//! unit     = "(" formula ")" | quant | atom
//! quant    = "E" ident { ident } ( "(" formula ")" | formula )
//! atom     = linear "=" linear | coeff { "," coeff } "|" linear
//! linear   = [ "-" ] term { ("+" | "-") term }
//! term     = factor { "*" factor }        (at most one variable factor)
//! factor   = integer | "e" index | ident
//! ```
//!
//! Free variables are `x1 … xm`. `∃` and `≐` are accepted for `E` and `=`.
//! A coefficient acts from the formula's side wherever it is written, so
//! `2*y` and `y*2` denote the same term.

use num_bigint::BigInt;

use super::{PpMatrixForm, Side};
use crate::error::{Error, Result};
use crate::matrix::RingMatrix;
use crate::ring::{Ring, RingElem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Var {
    /// Zero-based index of a free variable (`x1` is 0).
    Free(usize),
    /// Identifier of a bound variable, an index into
    /// [`ParsedFormula::bound_names`].
    Bound(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: RingElem,
    pub var: Var,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearExpr {
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PpAst {
    Exists { vars: Vec<usize>, body: Box<PpAst> },
    And(Vec<PpAst>),
    Eq(LinearExpr, LinearExpr),
    Divides { divisors: Vec<RingElem>, target: LinearExpr },
}

/// A parsed formula with its variables resolved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedFormula {
    pub ring: Ring,
    pub side: Side,
    pub arity: usize,
    pub ast: PpAst,
    pub bound_names: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Exists,
    LParen,
    RParen,
    Eq,
    Plus,
    Minus,
    Star,
    Bar,
    Comma,
    Amp,
    Eof,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
            continue;
        }
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '=' | '≐' => Some(Tok::Eq),
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' | '·' => Some(Tok::Star),
            '|' => Some(Tok::Bar),
            ',' => Some(Tok::Comma),
            '&' | '∧' => Some(Tok::Amp),
            '∃' => Some(Tok::Exists),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, pos));
            it.next();
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, d)) = it.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                s.push(d);
                it.next();
            }
            out.push((Tok::Int(s.parse().expect("digits")), pos));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&(_, d)) = it.peek() {
                if !(d.is_alphanumeric() || d == '_') {
                    break;
                }
                s.push(d);
                it.next();
            }
            out.push((if s == "E" { Tok::Exists } else { Tok::Ident(s) }, pos));
            continue;
        }
        return Err(Error::Syntax { pos, msg: format!("unexpected character `{c}`") });
    }
    out.push((Tok::Eof, text.len()));
    Ok(out)
}

fn is_basis_name(s: &str) -> bool {
    s.len() > 1 && s.starts_with('e') && s[1..].chars().all(|c| c.is_ascii_digit())
}

fn free_index(s: &str) -> Option<usize> {
    let rest = s.strip_prefix('x')?;
    if rest.is_empty() || !rest.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    rest.parse().ok()
}

enum Factor {
    Coeff(RingElem),
    Var(Var),
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    ring: &'a Ring,
    arity: usize,
    scopes: Vec<Vec<(String, usize)>>,
    bound_names: Vec<String>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn here(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(self.syntax(format!("expected {what}")))
        }
    }

    fn syntax(&self, msg: String) -> Error {
        Error::Syntax { pos: self.here(), msg }
    }

    fn formula(&mut self) -> Result<PpAst> {
        self.conj()
    }

    /// A parenthesized body ends the quantifier's scope; otherwise the scope
    /// extends over the rest of the conjunction.
    fn quantified(&mut self) -> Result<PpAst> {
        self.bump();
        let mut vars = Vec::new();
        let mut scope = Vec::new();
        loop {
            let Tok::Ident(name) = self.peek().clone() else { break };
            // An identifier followed by an operator starts the body.
            if !vars.is_empty()
                && matches!(
                    self.peek_at(1),
                    Tok::Eq | Tok::Plus | Tok::Minus | Tok::Star | Tok::Bar | Tok::Comma | Tok::Amp | Tok::RParen | Tok::Eof
                )
            {
                break;
            }
            if free_index(&name).is_some() || is_basis_name(&name) {
                return Err(self.syntax(format!("`{name}` is reserved and cannot be quantified")));
            }
            if scope.iter().any(|(n, _)| n == &name) || self.lookup(&name).is_some() {
                return Err(self.syntax(format!("variable `{name}` is already bound")));
            }
            let id = self.bound_names.len();
            self.bound_names.push(name.clone());
            scope.push((name, id));
            vars.push(id);
            self.bump();
        }
        if vars.is_empty() {
            return Err(self.syntax("expected a variable after the quantifier".into()));
        }
        self.scopes.push(scope);
        let inner = if *self.peek() == Tok::LParen { self.unit() } else { self.formula() };
        self.scopes.pop();
        Ok(PpAst::Exists { vars, body: Box::new(inner?) })
    }

    fn conj(&mut self) -> Result<PpAst> {
        let mut parts = vec![self.unit()?];
        while *self.peek() == Tok::Amp {
            self.bump();
            parts.push(self.unit()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { PpAst::And(parts) })
    }

    fn unit(&mut self) -> Result<PpAst> {
        match self.peek() {
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Exists => self.quantified(),
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<PpAst> {
        let start = self.here();
        let (lhs, constant) = self.linear()?;
        if matches!(self.peek(), Tok::Comma | Tok::Bar) {
            if !lhs.terms.is_empty() {
                return Err(Error::Syntax { pos: start, msg: "divisors must be coefficients".into() });
            }
            let mut divisors = vec![constant];
            while *self.peek() == Tok::Comma {
                self.bump();
                let pos = self.here();
                let (t, c) = self.linear()?;
                if !t.terms.is_empty() {
                    return Err(Error::Syntax { pos, msg: "divisors must be coefficients".into() });
                }
                divisors.push(c);
            }
            self.expect(Tok::Bar, "`|`")?;
            let pos = self.here();
            let (target, c) = self.linear()?;
            if !c.is_zero() {
                return Err(Error::Syntax { pos, msg: "constant terms must vanish".into() });
            }
            return Ok(PpAst::Divides { divisors, target });
        }
        if !constant.is_zero() {
            return Err(Error::Syntax { pos: start, msg: "constant terms must vanish".into() });
        }
        self.expect(Tok::Eq, "`=` or `|`")?;
        let pos = self.here();
        let (rhs, c) = self.linear()?;
        if !c.is_zero() {
            return Err(Error::Syntax { pos, msg: "constant terms must vanish".into() });
        }
        Ok(PpAst::Eq(lhs, rhs))
    }

    /// A linear expression plus the sum of its variable-free terms.
    fn linear(&mut self) -> Result<(LinearExpr, RingElem)> {
        let mut expr = LinearExpr::default();
        let mut constant = self.ring.zero();
        let mut negate = false;
        if *self.peek() == Tok::Minus {
            self.bump();
            negate = true;
        }
        loop {
            let (coeff, var) = self.term()?;
            let coeff = if negate { self.ring.neg(&coeff) } else { coeff };
            match var {
                Some(var) => expr.terms.push(Term { coeff, var }),
                None => constant = self.ring.add(&constant, &coeff),
            }
            match self.peek() {
                Tok::Plus => negate = false,
                Tok::Minus => negate = true,
                _ => break,
            }
            self.bump();
        }
        Ok((expr, constant))
    }

    fn term(&mut self) -> Result<(RingElem, Option<Var>)> {
        let mut coeff = self.ring.one();
        let mut var = None;
        loop {
            let pos = self.here();
            match self.factor()? {
                Factor::Coeff(c) => coeff = self.ring.mul(&coeff, &c),
                Factor::Var(v) => {
                    if var.is_some() {
                        return Err(Error::Syntax { pos, msg: "a term may contain only one variable".into() });
                    }
                    var = Some(v);
                }
            }
            if *self.peek() != Tok::Star {
                break;
            }
            self.bump();
        }
        Ok((coeff, var))
    }

    fn factor(&mut self) -> Result<Factor> {
        let pos = self.here();
        match self.bump() {
            Tok::Int(n) => Ok(Factor::Coeff(self.ring.from_int(&n))),
            Tok::Ident(name) => {
                if is_basis_name(&name) {
                    return self
                        .ring
                        .parse_scalar(&name)
                        .map(Factor::Coeff)
                        .map_err(|_| Error::Coefficient(format!("`{name}` at byte {pos}: ring has basis e1..e{}", self.ring.dim())));
                }
                if let Some(i) = free_index(&name) {
                    if i >= 1 && i <= self.arity {
                        return Ok(Factor::Var(Var::Free(i - 1)));
                    }
                    return Err(Error::UnknownIdentifier { name, pos });
                }
                match self.lookup(&name) {
                    Some(id) => Ok(Factor::Var(Var::Bound(id))),
                    None => Err(Error::UnknownIdentifier { name, pos }),
                }
            }
            Tok::Eof => Err(Error::Syntax { pos, msg: "unexpected end of input".into() }),
            t => Err(Error::Syntax { pos, msg: format!("unexpected token {t:?}") }),
        }
    }

    fn lookup(&self, name: &str) -> Option<usize> {
        self.scopes.iter().rev().flat_map(|s| s.iter()).find(|(n, _)| n == name).map(|&(_, id)| id)
    }
}

pub fn parse_formula(text: &str, ring: &Ring, side: Side, arity: usize) -> Result<ParsedFormula> {
    let mut p = Parser { toks: lex(text)?, pos: 0, ring, arity, scopes: Vec::new(), bound_names: Vec::new() };
    let ast = p.formula()?;
    if *p.peek() != Tok::Eof {
        return Err(p.syntax("unexpected trailing input".into()));
    }
    Ok(ParsedFormula { ring: ring.clone(), side, arity, ast, bound_names: p.bound_names })
}

/// Row of coefficients over witness columns and free variables.
struct Row {
    witness: Vec<RingElem>,
    free: Vec<RingElem>,
}

fn collect_atoms<'a>(ast: &'a PpAst, out: &mut Vec<&'a PpAst>) {
    match ast {
        PpAst::Exists { body, .. } => collect_atoms(body, out),
        PpAst::And(parts) => parts.iter().for_each(|p| collect_atoms(p, out)),
        atom => out.push(atom),
    }
}

/// Matrix normal form: quantifiers pulled out, one fresh witness per
/// divisor, one equation per atom. Zero equations and unused witnesses are
/// dropped.
pub fn normalize(f: &ParsedFormula) -> PpMatrixForm {
    let ring = &f.ring;
    let mut atoms = Vec::new();
    collect_atoms(&f.ast, &mut atoms);
    let fresh: usize = atoms
        .iter()
        .map(|a| match a {
            PpAst::Divides { divisors, .. } => divisors.len(),
            _ => 0,
        })
        .sum();
    let l = f.bound_names.len() + fresh;
    let m = f.arity;
    let mut next_fresh = f.bound_names.len();
    let mut rows = Vec::new();
    for atom in atoms {
        let mut row = Row { witness: vec![ring.zero(); l], free: vec![ring.zero(); m] };
        // Each row reads `Σ (rhs − lhs) = 0`.
        let add = |row: &mut Row, t: &Term, sign_plus: bool| {
            let c = if sign_plus { t.coeff.clone() } else { ring.neg(&t.coeff) };
            let slot = match t.var {
                Var::Free(i) => &mut row.free[i],
                Var::Bound(i) => &mut row.witness[i],
            };
            *slot = ring.add(slot, &c);
        };
        match atom {
            PpAst::Eq(lhs, rhs) => {
                lhs.terms.iter().for_each(|t| add(&mut row, t, false));
                rhs.terms.iter().for_each(|t| add(&mut row, t, true));
            }
            PpAst::Divides { divisors, target } => {
                target.terms.iter().for_each(|t| add(&mut row, t, false));
                for s in divisors {
                    row.witness[next_fresh] = s.clone();
                    next_fresh += 1;
                }
            }
            _ => unreachable!("atoms only"),
        }
        if row.witness.iter().chain(&row.free).any(|c| !c.is_zero()) {
            rows.push(row);
        }
    }
    let used: Vec<usize> = (0..l).filter(|&j| rows.iter().any(|r| !r.witness[j].is_zero())).collect();
    let k = rows.len();
    let mut a_entries = Vec::with_capacity(k * used.len());
    let mut b_entries = Vec::with_capacity(k * m);
    for r in &rows {
        a_entries.extend(used.iter().map(|&j| r.witness[j].clone()));
        // A·ȳ = B·x̄ with the free part moved across.
        b_entries.extend(r.free.iter().map(|c| ring.neg(c)));
    }
    let a = RingMatrix::new(ring, k, used.len(), a_entries).expect("shape");
    let b = RingMatrix::new(ring, k, m, b_entries).expect("shape");
    PpMatrixForm::from_left_view(ring.clone(), f.side, m, a, b).expect("normal form is well formed")
}
