use serde::{Deserialize, Serialize};

use super::{PpMatrixForm, Side};
use crate::matrix::RingMatrix;
use crate::ring::{Ring, RingElem};

/// Bounds on the formulas visited by enumeration-based checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaBound {
    pub max_rows: usize,
    pub max_witnesses: usize,
    /// Largest absolute value of an integer coefficient. Ignored for finite
    /// rings, where every element is used.
    pub coeff_bound: u64,
}

impl Default for FormulaBound {
    fn default() -> Self {
        FormulaBound { max_rows: 1, max_witnesses: 1, coeff_bound: 8 }
    }
}

impl FormulaBound {
    pub fn new(max_rows: usize, max_witnesses: usize, coeff_bound: u64) -> Self {
        FormulaBound { max_rows, max_witnesses, coeff_bound }
    }

    /// Number of formulas [`enumerate_formulas`] yields, if it fits.
    pub fn count(&self, ring: &Ring, arity: usize) -> Option<u128> {
        let c = coefficient_list(ring, self.coeff_bound).len() as u128;
        let mut total: u128 = 1;
        for r in 1..=self.max_rows {
            for w in 0..=self.max_witnesses {
                let exp = u32::try_from(r * (w + arity)).ok()?;
                total = total.checked_add(c.checked_pow(exp)?)?;
            }
        }
        Some(total)
    }
}

/// Coefficients used for enumeration: `0, 1, −1, 2, −2, …, ±bound` over ℤ,
/// every element (in canonical order) over a finite ring.
pub fn coefficient_list(ring: &Ring, coeff_bound: u64) -> Vec<RingElem> {
    if let Some(all) = ring.elements() {
        return all;
    }
    let mut out = vec![ring.zero()];
    for v in 1..=coeff_bound as i64 {
        out.push(ring.int(v));
        out.push(ring.int(-v));
    }
    out
}

/// Every formula with exactly `rows` equations and `witnesses` witnesses,
/// entries drawn from `coeffs`. Entries are listed row by row, witness
/// coefficients before free ones, and the first entry varies slowest.
pub fn enumerate_shape(
    ring: &Ring,
    side: Side,
    arity: usize,
    rows: usize,
    witnesses: usize,
    coeffs: &[RingElem],
) -> ShapeIter {
    let n = rows * (witnesses + arity);
    ShapeIter {
        ring: ring.clone(),
        side,
        arity,
        rows,
        witnesses,
        coeffs: coeffs.to_vec(),
        digits: vec![0; n],
        done: coeffs.is_empty() && n > 0,
    }
}

pub struct ShapeIter {
    ring: Ring,
    side: Side,
    arity: usize,
    rows: usize,
    witnesses: usize,
    coeffs: Vec<RingElem>,
    digits: Vec<usize>,
    done: bool,
}

impl Iterator for ShapeIter {
    type Item = PpMatrixForm;

    fn next(&mut self) -> Option<PpMatrixForm> {
        if self.done {
            return None;
        }
        let width = self.witnesses + self.arity;
        let mut a = Vec::with_capacity(self.rows * self.witnesses);
        let mut b = Vec::with_capacity(self.rows * self.arity);
        for i in 0..self.rows {
            let row = &self.digits[i * width..(i + 1) * width];
            a.extend(row[..self.witnesses].iter().map(|&d| self.coeffs[d].clone()));
            b.extend(row[self.witnesses..].iter().map(|&d| self.coeffs[d].clone()));
        }
        let a = RingMatrix::new(&self.ring, self.rows, self.witnesses, a).expect("shape");
        let b = RingMatrix::new(&self.ring, self.rows, self.arity, b).expect("shape");
        let f = PpMatrixForm::from_left_view(self.ring.clone(), self.side, self.arity, a, b).expect("shape");
        // Odometer step, last entry fastest.
        self.done = true;
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.coeffs.len() {
                self.done = false;
                break;
            }
            *d = 0;
        }
        Some(f)
    }
}

/// `x̄ = x̄` first, then every shape with `1..=max_rows` equations and
/// `0..=max_witnesses` witnesses, rows outermost.
pub fn enumerate_formulas(
    ring: &Ring,
    side: Side,
    arity: usize,
    bound: &FormulaBound,
) -> impl Iterator<Item = PpMatrixForm> {
    let coeffs = coefficient_list(ring, bound.coeff_bound);
    let ring = ring.clone();
    let top = PpMatrixForm::top(&ring, side, arity);
    let max_w = bound.max_witnesses;
    std::iter::once(top).chain(
        (1..=bound.max_rows)
            .flat_map(move |r| (0..=max_w).map(move |w| (r, w)))
            .flat_map(move |(r, w)| enumerate_shape(&ring, side, arity, r, w, &coeffs)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_order() {
        let z = Ring::integers();
        let c: Vec<String> = coefficient_list(&z, 2).iter().map(|e| z.format_elem(e)).collect();
        assert_eq!(c, ["0", "1", "-1", "2", "-2"]);
        assert_eq!(coefficient_list(&Ring::modular(4).unwrap(), 99).len(), 4);
    }

    #[test]
    fn shape_counts() {
        let z2 = Ring::modular(2).unwrap();
        let c = coefficient_list(&z2, 0);
        assert_eq!(enumerate_shape(&z2, Side::Left, 1, 1, 1, &c).count(), 4);
        let z4 = Ring::modular(4).unwrap();
        let bound = FormulaBound::new(2, 2, 0);
        let all: Vec<_> = enumerate_formulas(&z4, Side::Left, 1, &bound).collect();
        assert_eq!(all.len() as u128, bound.count(&z4, 1).unwrap());
        assert_eq!(all.len(), 1 + 4 + 16 + 64 + 16 + 256 + 4096);
    }

    #[test]
    fn first_entry_varies_slowest() {
        let z = Ring::integers();
        let c = coefficient_list(&z, 1);
        let v: Vec<_> = enumerate_shape(&z, Side::Left, 1, 1, 1, &c).collect();
        assert_eq!(v.len(), 9);
        assert_eq!(v[1].a(), &RingMatrix::from_ints(&z, &[&[0]]));
        assert_eq!(v[1].b(), &RingMatrix::from_ints(&z, &[&[1]]));
        assert_eq!(v[3].a(), &RingMatrix::from_ints(&z, &[&[1]]));
        assert_eq!(v[3].b(), &RingMatrix::from_ints(&z, &[&[0]]));
    }
}
