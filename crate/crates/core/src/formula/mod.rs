//! Positive primitive formulas: matrix normal form, lattice operations and
//! elementary duality.
//!
//! A left formula of arity `m` with `l` witnesses is stored as `(A, B)` with
//! `A: k×l`, `B: k×m`, meaning `∃ȳ (A·ȳ = B·x̄)` with coefficients acting on
//! the left. A right formula stores `A: l×k`, `B: m×k` and means
//! `∃ȳ (ȳ·A = x̄·B)` with row vectors and coefficients on the right.
//!
//! A right formula over `R` is literally a left formula over `R^op` with the
//! matrices transposed. [`PpMatrixForm::left_view`] exposes that reading so
//! that evaluation and the decision procedures only implement the left case.

mod enumerate;
mod parse;
mod print;

pub use enumerate::{coefficient_list, enumerate_formulas, enumerate_shape, FormulaBound};
pub use parse::{normalize, parse_formula, LinearExpr, ParsedFormula, PpAst, Term, Var};
pub use print::{print_ast, print_formula};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::RingMatrix;
use crate::ring::{Ring, RingElem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    /// The ring whose left modules are this side's modules over `ring`.
    pub fn acting_ring(self, ring: &Ring) -> Ring {
        match self {
            Side::Left => ring.clone(),
            Side::Right => ring.opposite(),
        }
    }
}

impl std::str::FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Side> {
        match s.to_ascii_lowercase().as_str() {
            "left" | "l" => Ok(Side::Left),
            "right" | "r" => Ok(Side::Right),
            _ => Err(Error::Malformed(format!("side must be `left` or `right`, got `{s}`"))),
        }
    }
}

/// A pp formula in matrix normal form. Equality is syntactic; use
/// [`crate::decide::equivalent`] for logical equivalence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PpMatrixForm {
    ring: Ring,
    side: Side,
    arity: usize,
    witnesses: usize,
    a: RingMatrix,
    b: RingMatrix,
}

/// The left reading of a formula: `∃ȳ (A·ȳ = B·x̄)` over `ring`
/// (the opposite ring for right formulas).
#[derive(Clone, Debug)]
pub struct LeftView {
    pub ring: Ring,
    pub a: RingMatrix,
    pub b: RingMatrix,
}

impl PpMatrixForm {
    pub fn new(ring: Ring, side: Side, arity: usize, a: RingMatrix, b: RingMatrix) -> Result<Self> {
        let (witnesses, ok) = match side {
            Side::Left => (a.cols(), a.rows() == b.rows() && b.cols() == arity),
            Side::Right => (a.rows(), a.cols() == b.cols() && b.rows() == arity),
        };
        if !ok {
            return Err(Error::Dimension(format!(
                "{side:?} formula of arity {arity}: A is {}×{}, B is {}×{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        for e in a.entries().iter().chain(b.entries()) {
            ring.check(e)?;
        }
        Ok(PpMatrixForm { ring, side, arity, witnesses, a, b })
    }

    /// Builds a formula from its left reading over `side.acting_ring(ring)`.
    pub fn from_left_view(ring: Ring, side: Side, arity: usize, a: RingMatrix, b: RingMatrix) -> Result<Self> {
        match side {
            Side::Left => Self::new(ring, side, arity, a, b),
            Side::Right => Self::new(ring, side, arity, a.transpose(), b.transpose()),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn witnesses(&self) -> usize {
        self.witnesses
    }

    /// Number of equations.
    pub fn constraints(&self) -> usize {
        match self.side {
            Side::Left => self.a.rows(),
            Side::Right => self.a.cols(),
        }
    }

    pub fn a(&self) -> &RingMatrix {
        &self.a
    }

    pub fn b(&self) -> &RingMatrix {
        &self.b
    }

    pub fn left_view(&self) -> LeftView {
        match self.side {
            Side::Left => LeftView { ring: self.ring.clone(), a: self.a.clone(), b: self.b.clone() },
            Side::Right => LeftView { ring: self.ring.opposite(), a: self.a.transpose(), b: self.b.transpose() },
        }
    }

    /// `x̄ = x̄`, the largest formula.
    pub fn top(ring: &Ring, side: Side, arity: usize) -> Self {
        Self::from_left_view(ring.clone(), side, arity, RingMatrix::zeros(ring, 0, 0), RingMatrix::zeros(ring, 0, arity))
            .expect("top is well formed")
    }

    /// `x̄ = 0`, the smallest formula.
    pub fn bottom(ring: &Ring, side: Side, arity: usize) -> Self {
        Self::from_left_view(
            ring.clone(),
            side,
            arity,
            RingMatrix::zeros(ring, arity, 0),
            RingMatrix::identity(ring, arity),
        )
        .expect("bottom is well formed")
    }

    /// Unary `r | x`: `∃y (x = r·y)` on the left, `∃y (x = y·r)` on the right.
    pub fn divides(ring: &Ring, side: Side, r: &RingElem) -> Self {
        Self::divides_tuple(ring, side, std::slice::from_ref(r))
    }

    /// Unary `s̄ | x`: `∃ȳ (x = Σ sᵢ·yᵢ)`.
    pub fn divides_tuple(ring: &Ring, side: Side, s: &[RingElem]) -> Self {
        let a = RingMatrix::new(ring, 1, s.len(), s.to_vec()).expect("divisor tuple");
        Self::from_left_view(ring.clone(), side, 1, a, RingMatrix::identity(ring, 1)).expect("well formed")
    }

    /// Unary `r·x = 0` (`x·r = 0` on the right).
    pub fn annihilated(ring: &Ring, side: Side, r: &RingElem) -> Self {
        let b = RingMatrix::new(ring, 1, 1, vec![r.clone()]).expect("scalar");
        Self::from_left_view(ring.clone(), side, 1, RingMatrix::zeros(ring, 1, 0), b).expect("well formed")
    }

    fn check_compatible(&self, other: &PpMatrixForm) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::Mismatch(format!("rings differ: {} vs {}", self.ring, other.ring)));
        }
        if self.side != other.side {
            return Err(Error::Mismatch("formulas are on different sides".into()));
        }
        if self.arity != other.arity {
            return Err(Error::Mismatch(format!("arities differ: {} vs {}", self.arity, other.arity)));
        }
        Ok(())
    }

    /// Conjunction: block-diagonal witnesses, stacked equations.
    pub fn meet(&self, other: &PpMatrixForm) -> Result<Self> {
        self.check_compatible(other)?;
        let (p, q) = (self.left_view(), other.left_view());
        let a = p.a.block_diag(&p.ring, &q.a);
        let b = p.b.vstack(&q.b);
        Self::from_left_view(self.ring.clone(), self.side, self.arity, a, b)
    }

    /// Sum: `∃ȳ z̄ (x̄ = ȳ + z̄ ∧ φ(ȳ) ∧ ψ(z̄))` with the quantifiers pulled out.
    /// Witness order is `ȳ, z̄`, then the witnesses of φ, then those of ψ.
    pub fn join(&self, other: &PpMatrixForm) -> Result<Self> {
        self.check_compatible(other)?;
        let (p, q) = (self.left_view(), other.left_view());
        let s = &p.ring;
        let m = self.arity;
        let (lp, lq) = (p.a.cols(), q.a.cols());
        let (kp, kq) = (p.a.rows(), q.a.rows());
        let id = RingMatrix::identity(s, m);
        // x̄ = ȳ + z̄
        let sum_rows = id
            .hstack(&id)
            .hstack(&RingMatrix::zeros(s, m, lp + lq));
        // A_φ w̄ - B_φ ȳ = 0
        let phi_rows = p
            .b
            .neg(s)
            .hstack(&RingMatrix::zeros(s, kp, m))
            .hstack(&p.a)
            .hstack(&RingMatrix::zeros(s, kp, lq));
        // A_ψ w̄' - B_ψ z̄ = 0
        let psi_rows = RingMatrix::zeros(s, kq, m)
            .hstack(&q.b.neg(s))
            .hstack(&RingMatrix::zeros(s, kq, lp))
            .hstack(&q.a);
        let a = sum_rows.vstack(&phi_rows).vstack(&psi_rows);
        let b = id.vstack(&RingMatrix::zeros(s, kp + kq, m));
        Self::from_left_view(self.ring.clone(), self.side, m, a, b)
    }

    /// Elementary dual on the opposite side. For a left `∃ȳ (A·ȳ = B·x̄)`
    /// this is the right formula `∃z̄ (x̄ = z̄·B ∧ z̄·A = 0)`, and mirrored for
    /// right input.
    pub fn dual(&self) -> Self {
        let v = self.left_view();
        let s = &v.ring;
        let m = self.arity;
        let l = v.a.cols();
        // Right-convention matrices over the acting ring: witnesses z̄ (one per
        // equation of φ), equations x̄ - z̄B = 0 (m of them) and z̄A = 0 (l).
        let a_right = v.b.hstack(&v.a);
        let b_right = RingMatrix::identity(s, m).hstack(&RingMatrix::zeros(s, m, l));
        match self.side {
            Side::Left => Self::new(self.ring.clone(), Side::Right, m, a_right, b_right),
            // Right over R^op is left over R with transposed matrices.
            Side::Right => Self::new(self.ring.clone(), Side::Left, m, a_right.transpose(), b_right.transpose()),
        }
        .expect("dual is well formed")
    }

    /// Fold of [`meet`](Self::meet) over a nonempty list.
    pub fn meet_all(formulas: &[PpMatrixForm]) -> Result<PpMatrixForm> {
        let (first, rest) = formulas.split_first().ok_or_else(|| Error::Mismatch("empty conjunction".into()))?;
        rest.iter().try_fold(first.clone(), |acc, f| acc.meet(f))
    }

    /// Fold of [`join`](Self::join) over a nonempty list.
    pub fn join_all(formulas: &[PpMatrixForm]) -> Result<PpMatrixForm> {
        let (first, rest) = formulas.split_first().ok_or_else(|| Error::Mismatch("empty sum".into()))?;
        rest.iter().try_fold(first.clone(), |acc, f| acc.join(f))
    }
}

/// `⋀Φ → ΣΨ` with finite Φ and nonempty finite Ψ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricSentence {
    antecedent: Vec<PpMatrixForm>,
    consequent: Vec<PpMatrixForm>,
}

impl SymmetricSentence {
    pub fn new(antecedent: Vec<PpMatrixForm>, consequent: Vec<PpMatrixForm>) -> Result<Self> {
        let Some(first) = consequent.first() else {
            return Err(Error::Mismatch("symmetric sentence needs a nonempty consequent".into()));
        };
        for f in antecedent.iter().chain(&consequent) {
            first.check_compatible(f)?;
        }
        Ok(SymmetricSentence { antecedent, consequent })
    }

    /// The pp implication `φ → ψ`.
    pub fn implication(phi: PpMatrixForm, psi: PpMatrixForm) -> Result<Self> {
        Self::new(vec![phi], vec![psi])
    }

    pub fn antecedent(&self) -> &[PpMatrixForm] {
        &self.antecedent
    }

    pub fn consequent(&self) -> &[PpMatrixForm] {
        &self.consequent
    }

    pub fn ring(&self) -> &Ring {
        self.consequent[0].ring()
    }

    pub fn side(&self) -> Side {
        self.consequent[0].side()
    }

    pub fn arity(&self) -> usize {
        self.consequent[0].arity()
    }

    /// The conjunction of the antecedent (`x̄ = x̄` when empty).
    pub fn antecedent_formula(&self) -> PpMatrixForm {
        if self.antecedent.is_empty() {
            return PpMatrixForm::top(self.ring(), self.side(), self.arity());
        }
        PpMatrixForm::meet_all(&self.antecedent).expect("checked compatible")
    }

    /// The sum of the consequent.
    pub fn consequent_formula(&self) -> PpMatrixForm {
        PpMatrixForm::join_all(&self.consequent).expect("checked compatible")
    }

    /// `⋀DΨ → ΣDΦ`; an empty Φ dualizes to the single consequent `x̄ = 0`.
    pub fn dual(&self) -> SymmetricSentence {
        let antecedent = self.consequent.iter().map(PpMatrixForm::dual).collect();
        let mut consequent: Vec<_> = self.antecedent.iter().map(PpMatrixForm::dual).collect();
        if consequent.is_empty() {
            consequent.push(PpMatrixForm::top(self.ring(), self.side(), self.arity()).dual());
        }
        SymmetricSentence { antecedent, consequent }
    }
}
