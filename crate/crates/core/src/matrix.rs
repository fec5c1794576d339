use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{Ring, RingElem};

/// Dense matrix of ring elements. The ring itself is carried by whoever owns
/// the matrix; operations take it explicitly.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<RingElem>,
}

impl fmt::Debug for RingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<Vec<String>>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|e| e.coords().iter().map(|c| c.to_string()).collect()).collect())
            .collect();
        write!(f, "RingMatrix{}x{}{:?}", self.rows, self.cols, rows)
    }
}

impl RingMatrix {
    pub fn new(ring: &Ring, rows: usize, cols: usize, entries: Vec<RingElem>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!("{rows}×{cols} matrix needs {} entries, got {}", rows * cols, entries.len())));
        }
        for e in &entries {
            ring.check(e)?;
        }
        Ok(RingMatrix { rows, cols, entries })
    }

    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Self {
        RingMatrix { rows, cols, entries: vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    /// Matrix of integer multiples of the unit.
    pub fn from_ints(ring: &Ring, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_ints_shaped(ring, rows.len(), cols, &rows.concat())
    }

    pub fn from_ints_shaped(ring: &Ring, rows: usize, cols: usize, values: &[i64]) -> Self {
        assert_eq!(values.len(), rows * cols);
        RingMatrix { rows, cols, entries: values.iter().map(|&v| ring.int(v)).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RingElem) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[RingElem] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[RingElem] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RingElem::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        RingMatrix { rows: self.cols, cols: self.rows, entries }
    }

    pub fn mul(&self, ring: &Ring, other: &RingMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}×{} by {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = ring.zero();
                for p in 0..self.cols {
                    acc = ring.add(&acc, &ring.mul(self.get(i, p), other.get(p, j)));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn add(&self, ring: &Ring, other: &RingMatrix) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension(format!(
                "cannot add {}×{} and {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| ring.add(a, b)).collect();
        Ok(RingMatrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn neg(&self, ring: &Ring) -> Self {
        RingMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|a| ring.neg(a)).collect() }
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &RingMatrix) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut entries = Vec::with_capacity(self.entries.len() + other.entries.len());
        for i in 0..self.rows {
            entries.extend_from_slice(self.row(i));
            entries.extend_from_slice(other.row(i));
        }
        RingMatrix { rows: self.rows, cols: self.cols + other.cols, entries }
    }

    /// `[self ; other]`
    pub fn vstack(&self, other: &RingMatrix) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        RingMatrix { rows: self.rows + other.rows, cols: self.cols, entries }
    }

    /// `diag(self, other)`
    pub fn block_diag(&self, ring: &Ring, other: &RingMatrix) -> Self {
        let top = self.hstack(&Self::zeros(ring, self.rows, other.cols));
        let bottom = Self::zeros(ring, other.rows, self.cols).hstack(other);
        top.vstack(&bottom)
    }

    pub fn select_rows(&self, keep: &[usize]) -> Self {
        let mut entries = Vec::new();
        for &i in keep {
            entries.extend_from_slice(self.row(i));
        }
        RingMatrix { rows: keep.len(), cols: self.cols, entries }
    }

    pub fn select_cols(&self, keep: &[usize]) -> Self {
        self.transpose().select_rows(keep).transpose()
    }
}
