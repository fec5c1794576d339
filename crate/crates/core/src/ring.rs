//! Computable rings: ℤ, ℤ/n and finite rings given by structure constants.
//!
//! Every supported ring has a finite additive basis `e₁ … e_k` with
//! `R ≅ ⊕ ℤ/dᵢ` additively (`dᵢ = 0` meaning ℤ) and a multiplication table
//! `eᵢ·eⱼ`. ℤ and ℤ/n are the one-dimensional instances, so all ring
//! arithmetic is ℤ-bilinear in coordinates and every linear problem over
//! the ring becomes a system of integer congruences.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, reduce_mod, Int, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingKind {
    Integers,
    Modular(u64),
    Table,
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct RingData {
    kind: RingKind,
    orders: Vec<Int>,
    /// `mul[i][j]` holds the coordinates of `eᵢ·eⱼ`.
    mul: Vec<Vec<Vec<Int>>>,
    one: Vec<Int>,
    commutative: bool,
    opposite: bool,
}

/// A ring handle. Cloning is cheap.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ring(Arc<RingData>);

/// An element as reduced additive coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElem {
    coords: Vec<Int>,
}

impl RingElem {
    pub fn coords(&self) -> &[Int] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            RingKind::Integers => write!(f, "Z"),
            RingKind::Modular(n) => write!(f, "Z/{n}"),
            RingKind::Table => {
                let orders: Vec<String> = self.0.orders.iter().map(|d| d.to_string()).collect();
                write!(f, "table[{}]{}", orders.join(","), if self.0.opposite { "^op" } else { "" })
            }
        }
    }
}

impl Ring {
    pub fn integers() -> Ring {
        Ring(Arc::new(RingData {
            kind: RingKind::Integers,
            orders: vec![Int::zero()],
            mul: vec![vec![vec![Int::one()]]],
            one: vec![Int::one()],
            commutative: true,
            opposite: false,
        }))
    }

    pub fn modular(n: u64) -> Result<Ring> {
        if n == 0 {
            return Err(Error::InvalidRing("modulus must be at least 1".into()));
        }
        let one = Int::one().mod_floor(&Int::from(n));
        Ok(Ring(Arc::new(RingData {
            kind: RingKind::Modular(n),
            orders: vec![Int::from(n)],
            mul: vec![vec![vec![one.clone()]]],
            one: vec![one],
            commutative: true,
            opposite: false,
        })))
    }

    /// A finite ring with additive group `⊕ ℤ/orders[i]` and the given
    /// structure constants. Validates well-definedness, associativity and the
    /// unit laws on the basis.
    pub fn table(orders: Vec<u64>, mul: Vec<Vec<Vec<i64>>>, one: Vec<i64>) -> Result<Ring> {
        let orders: Vec<Int> = orders.into_iter().map(Int::from).collect();
        let mul = mul
            .into_iter()
            .map(|row| row.into_iter().map(|v| v.into_iter().map(Int::from).collect()).collect())
            .collect();
        Self::table_big(orders, mul, one.into_iter().map(Int::from).collect())
    }

    pub fn table_big(orders: Vec<Int>, mul: Vec<Vec<Vec<Int>>>, one: Vec<Int>) -> Result<Ring> {
        let k = orders.len();
        if k == 0 {
            return Err(Error::InvalidRing("a table ring needs at least one basis element".into()));
        }
        if orders.iter().any(|d| !d.is_positive()) {
            return Err(Error::InvalidRing("table ring orders must be positive".into()));
        }
        if mul.len() != k || mul.iter().any(|r| r.len() != k || r.iter().any(|v| v.len() != k)) {
            return Err(Error::InvalidRing(format!("multiplication table must be {k}×{k} vectors of length {k}")));
        }
        if one.len() != k {
            return Err(Error::InvalidRing(format!("unit must have {k} coordinates")));
        }
        let mut mul = mul;
        for row in mul.iter_mut() {
            for v in row.iter_mut() {
                reduce_mod(&orders, v);
            }
        }
        let mut one = one;
        reduce_mod(&orders, &mut one);
        let commutative = (0..k).all(|i| (0..k).all(|j| mul[i][j] == mul[j][i]));
        let ring = Ring(Arc::new(RingData { kind: RingKind::Table, orders, mul, one, commutative, opposite: false }));
        ring.validate_table()?;
        Ok(ring)
    }

    fn validate_table(&self) -> Result<()> {
        let k = self.dim();
        let d = &self.0.orders;
        let basis: Vec<RingElem> = (0..k).map(|i| self.basis(i)).collect();
        // dᵢ·eᵢ = 0 must be respected by multiplication on both sides.
        for i in 0..k {
            for j in 0..k {
                let scaled: Vec<Int> = self.0.mul[i][j].iter().map(|c| c * &d[i]).collect();
                let l = self.reduce(scaled);
                let scaled: Vec<Int> = self.0.mul[j][i].iter().map(|c| c * &d[i]).collect();
                let r = self.reduce(scaled);
                if !l.is_zero() || !r.is_zero() {
                    return Err(Error::InvalidRing(format!(
                        "multiplication is not well defined: order of e{} does not kill e{}·e{} or e{}·e{}",
                        i + 1, i + 1, j + 1, j + 1, i + 1
                    )));
                }
            }
        }
        for a in &basis {
            for b in &basis {
                for c in &basis {
                    if self.mul(&self.mul(a, b), c) != self.mul(a, &self.mul(b, c)) {
                        return Err(Error::InvalidRing("multiplication is not associative".into()));
                    }
                }
            }
        }
        let one = self.one();
        for b in &basis {
            if &self.mul(&one, b) != b || &self.mul(b, &one) != b {
                return Err(Error::InvalidRing("the given unit is not a two-sided identity".into()));
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> &RingKind {
        &self.0.kind
    }

    /// Number of additive basis elements.
    pub fn dim(&self) -> usize {
        self.0.orders.len()
    }

    /// Additive orders of the basis elements (0 for ℤ).
    pub fn orders(&self) -> &[Int] {
        &self.0.orders
    }

    pub fn is_commutative(&self) -> bool {
        self.0.commutative
    }

    pub fn is_finite(&self) -> bool {
        self.0.orders.iter().all(|d| !d.is_zero())
    }

    /// Number of elements, if finite.
    pub fn size(&self) -> Option<u64> {
        if !self.is_finite() {
            return None;
        }
        self.0.orders.iter().try_fold(1u64, |acc, d| acc.checked_mul(d.to_u64()?))
    }

    pub fn structure_constants(&self) -> &[Vec<Vec<Int>>] {
        &self.0.mul
    }

    /// The opposite ring `R^op` (multiplication reversed). Same ring when
    /// commutative.
    pub fn opposite(&self) -> Ring {
        if self.0.commutative {
            return self.clone();
        }
        let k = self.dim();
        let mul = (0..k).map(|i| (0..k).map(|j| self.0.mul[j][i].clone()).collect()).collect();
        Ring(Arc::new(RingData {
            kind: self.0.kind.clone(),
            orders: self.0.orders.clone(),
            mul,
            one: self.0.one.clone(),
            commutative: false,
            opposite: !self.0.opposite,
        }))
    }

    pub fn reduce(&self, mut coords: Vec<Int>) -> RingElem {
        reduce_mod(&self.0.orders, &mut coords);
        RingElem { coords }
    }

    /// Builds an element from coordinates, checking the length.
    pub fn elem(&self, coords: Vec<Int>) -> Result<RingElem> {
        if coords.len() != self.dim() {
            return Err(Error::CoordinateLength { expected: self.dim(), got: coords.len() });
        }
        Ok(self.reduce(coords))
    }

    pub fn elem_i64(&self, coords: &[i64]) -> Result<RingElem> {
        self.elem(coords.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn zero(&self) -> RingElem {
        RingElem { coords: vec![Int::zero(); self.dim()] }
    }

    pub fn one(&self) -> RingElem {
        RingElem { coords: self.0.one.clone() }
    }

    /// The integer `n` as `n·1`.
    pub fn from_int(&self, n: &Int) -> RingElem {
        self.reduce(self.0.one.iter().map(|c| c * n).collect())
    }

    pub fn int(&self, n: i64) -> RingElem {
        self.from_int(&Int::from(n))
    }

    pub fn basis(&self, i: usize) -> RingElem {
        let mut coords = vec![Int::zero(); self.dim()];
        coords[i] = Int::one();
        self.reduce(coords)
    }

    pub fn check(&self, a: &RingElem) -> Result<()> {
        if a.coords.len() != self.dim() {
            return Err(Error::CoordinateLength { expected: self.dim(), got: a.coords.len() });
        }
        Ok(())
    }

    pub fn add(&self, a: &RingElem, b: &RingElem) -> RingElem {
        self.reduce(a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &RingElem, b: &RingElem) -> RingElem {
        self.reduce(a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &RingElem) -> RingElem {
        self.reduce(a.coords.iter().map(|x| -x).collect())
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        let k = self.dim();
        let mut out = vec![Int::zero(); k];
        for (i, ai) in a.coords.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coords.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let c = ai * bj;
                for (o, t) in out.iter_mut().zip(&self.0.mul[i][j]) {
                    if !t.is_zero() {
                        *o += &c * t;
                    }
                }
            }
        }
        self.reduce(out)
    }

    /// Checked arithmetic on raw operands.
    pub fn arith(&self, op: ArithOp, a: &RingElem, b: &RingElem) -> Result<RingElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Neg => self.neg(a),
        })
    }

    /// Integer matrix of `s ↦ r·s` acting on coordinate column vectors.
    pub fn left_mul_matrix(&self, r: &RingElem) -> IntMatrix {
        self.mul_matrix(|b| self.mul(r, b))
    }

    /// Integer matrix of `s ↦ s·r` acting on coordinate column vectors.
    pub fn right_mul_matrix(&self, r: &RingElem) -> IntMatrix {
        self.mul_matrix(|b| self.mul(b, r))
    }

    fn mul_matrix(&self, f: impl Fn(&RingElem) -> RingElem) -> IntMatrix {
        let k = self.dim();
        let mut m = IntMatrix::zeros(k, k);
        for b in 0..k {
            let img = f(&self.basis(b));
            for a in 0..k {
                m[(a, b)] = img.coords[a].clone();
            }
        }
        m
    }

    /// All elements of a finite ring, in lexicographic coordinate order.
    pub fn elements(&self) -> Option<Vec<RingElem>> {
        let sizes: Vec<u64> = self.0.orders.iter().map(|d| d.to_u64()).collect::<Option<_>>()?;
        if sizes.contains(&0) {
            return None;
        }
        let mut out = vec![self.zero()];
        for (i, &d) in sizes.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for e in &out {
                for c in 0..d {
                    let mut e = e.clone();
                    e.coords[i] = Int::from(c);
                    next.push(e);
                }
            }
            out = next;
        }
        Some(out)
    }

    /// Additive generators of the kernel of a ℤ-linear self map of `R`.
    fn kernel_generators(&self, m: &IntMatrix) -> Vec<RingElem> {
        let sol = linalg::solve_congruences(m, &vec![Int::zero(); self.dim()], &self.0.orders);
        let mut gens: Vec<RingElem> =
            linalg::subgroup_canonicalize(&self.0.orders, &sol.homogeneous).into_iter().map(|g| self.reduce(g)).collect();
        gens.retain(|g| !g.is_zero());
        gens
    }

    fn annihilator(&self, m: &IntMatrix) -> Annihilator {
        let gens = self.kernel_generators(m);
        match &self.0.kind {
            RingKind::Integers | RingKind::Modular(_) => {
                let g = gens.first().map(|g| g.coords[0].clone()).unwrap_or_else(|| self.0.orders[0].clone());
                Annihilator::Principal(g)
            }
            RingKind::Table => {
                let all = self.elements().expect("table rings are finite");
                let lat = linalg::subgroup_canonicalize(&self.0.orders, &gens.iter().map(|g| g.coords.clone()).collect::<Vec<_>>());
                let elems = all
                    .into_iter()
                    .filter(|e| linalg::hermite_reduce(&lat, &e.coords).iter().all(Zero::is_zero))
                    .collect();
                Annihilator::Elements(elems)
            }
        }
    }

    /// `𝔯(r) = {s : r·s = 0}`.
    pub fn right_annihilator(&self, r: &RingElem) -> Annihilator {
        self.annihilator(&self.left_mul_matrix(r))
    }

    /// `𝔩(r) = {s : s·r = 0}`.
    pub fn left_annihilator(&self, r: &RingElem) -> Annihilator {
        self.annihilator(&self.right_mul_matrix(r))
    }

    /// Elements with trivial left and right annihilators.
    pub fn regular_elements(&self) -> RegularElements {
        match self.elements() {
            None => RegularElements::NonzeroIntegers,
            Some(all) => {
                let regular = all
                    .iter()
                    .filter(|r| {
                        self.right_annihilator(r).is_zero(self) && self.left_annihilator(r).is_zero(self)
                    })
                    .cloned()
                    .collect();
                RegularElements::Finite(regular)
            }
        }
    }

    pub fn is_regular(&self, r: &RingElem) -> bool {
        self.right_annihilator(r).is_zero(self) && self.left_annihilator(r).is_zero(self)
    }

    /// Parses a scalar literal: an integer or `e<i>` (1-based basis element).
    pub fn parse_scalar(&self, s: &str) -> Result<RingElem> {
        let s = s.trim();
        if let Some(idx) = s.strip_prefix('e') {
            let i: usize = idx.parse().map_err(|_| Error::Coefficient(s.to_string()))?;
            if i == 0 || i > self.dim() {
                return Err(Error::Coefficient(format!("{s}: ring has basis e1..e{}", self.dim())));
            }
            return Ok(self.basis(i - 1));
        }
        let n: Int = s.parse().map_err(|_| Error::Coefficient(s.to_string()))?;
        Ok(self.from_int(&n))
    }

    /// Human form of an element: the residue for ℤ and ℤ/n, and a sum of
    /// multiples of basis elements for table rings.
    pub fn format_elem(&self, a: &RingElem) -> String {
        match self.0.kind {
            RingKind::Integers | RingKind::Modular(_) => a.coords[0].to_string(),
            RingKind::Table => {
                let parts: Vec<String> = a
                    .coords
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| if c.is_one() { format!("e{}", i + 1) } else { format!("{c}*e{}", i + 1) })
                    .collect();
                if parts.is_empty() {
                    "0".into()
                } else {
                    parts.join(" + ")
                }
            }
        }
    }
}

/// The ideal `𝔯(r)` or `𝔩(r)`: a single generator over ℤ and ℤ/n, the full
/// element list over table rings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Annihilator {
    Principal(Int),
    Elements(Vec<RingElem>),
}

impl Annihilator {
    /// Additive generators of the ideal as ring elements.
    pub fn generators(&self, ring: &Ring) -> Vec<RingElem> {
        match self {
            Annihilator::Principal(g) => vec![ring.from_int(g)],
            Annihilator::Elements(es) => es.clone(),
        }
    }

    pub fn contains(&self, ring: &Ring, s: &RingElem) -> bool {
        match self {
            Annihilator::Principal(g) => {
                let d = &ring.orders()[0];
                let g = if d.is_zero() { g.clone() } else { g.gcd(d) };
                if g.is_zero() {
                    s.coords[0].is_zero()
                } else {
                    s.coords[0].is_multiple_of(&g)
                }
            }
            Annihilator::Elements(es) => es.contains(s),
        }
    }

    pub fn is_zero(&self, ring: &Ring) -> bool {
        match self {
            Annihilator::Principal(g) => ring.from_int(g).is_zero(),
            Annihilator::Elements(es) => es.iter().all(RingElem::is_zero),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegularElements {
    Finite(Vec<RingElem>),
    /// Over ℤ the regular elements are exactly the nonzero integers.
    NonzeroIntegers,
}
