//! Deciding `φ ≤ ψ` (every module satisfies `φ → ψ`).
//!
//! Two independent procedures are provided. The certificate procedure
//! solves for ring matrices `X, Y, Z` with `X·A = C·Z` and
//! `X·B + C·Y = D`, where `φ = ∃ȳ (A·ȳ = B·x̄)` and `ψ = ∃z̄ (C·z̄ = D·x̄)`.
//! Such matrices turn any witness `ȳ` for `φ` into the witness `Z·ȳ + Y·x̄`
//! for `ψ`. The semantic procedure evaluates `ψ` on the generic tuple of the
//! free realization of `φ`. The two always agree.
//!
//! For right formulas (stored as `ȳ·A = x̄·B`) the certificate is stored in
//! the mirrored orientation: `A·X = Z·C` and `B·X + Y·C = D`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::eval;
use crate::formula::{PpMatrixForm, Side};
use crate::linalg::{self, Int, IntMatrix};
use crate::matrix::RingMatrix;
use crate::module::{free_realization, FpModule, ModElem};
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub side: Side,
    pub x: RingMatrix,
    pub y: RingMatrix,
    pub z: RingMatrix,
}

impl Certificate {
    /// Re-checks both matrix identities by direct multiplication over the
    /// base ring.
    pub fn verify(&self, phi: &PpMatrixForm, psi: &PpMatrixForm) -> bool {
        let r = phi.ring();
        let (a, b, c, d) = (phi.a(), phi.b(), psi.a(), psi.b());
        let check = || -> Result<bool> {
            Ok(match self.side {
                Side::Left => {
                    self.x.mul(r, a)? == c.mul(r, &self.z)?
                        && self.x.mul(r, b)?.add(r, &c.mul(r, &self.y)?)? == *d
                }
                Side::Right => {
                    a.mul(r, &self.x)? == self.z.mul(r, c)?
                        && b.mul(r, &self.x)?.add(r, &self.y.mul(r, c)?)? == *d
                }
            })
        };
        self.side == phi.side() && check().unwrap_or(false)
    }
}

#[derive(Clone, Debug)]
pub enum Evidence {
    Certificate(Certificate),
    /// A module and a tuple satisfying `φ` but not `ψ`.
    Countermodel { module: FpModule, witness: Vec<ModElem> },
}

#[derive(Clone, Debug)]
pub struct Decision {
    pub verdict: bool,
    pub evidence: Option<Evidence>,
}

impl Decision {
    pub fn certificate(&self) -> Option<&Certificate> {
        match &self.evidence {
            Some(Evidence::Certificate(c)) => Some(c),
            _ => None,
        }
    }

    pub fn countermodel(&self) -> Option<(&FpModule, &[ModElem])> {
        match &self.evidence {
            Some(Evidence::Countermodel { module, witness }) => Some((module, witness)),
            _ => None,
        }
    }
}

fn check_pair(phi: &PpMatrixForm, psi: &PpMatrixForm) -> Result<()> {
    if phi.ring() != psi.ring() {
        return Err(Error::Mismatch(format!("rings differ: {} vs {}", phi.ring(), psi.ring())));
    }
    if phi.side() != psi.side() {
        return Err(Error::Mismatch("formulas are on different sides".into()));
    }
    if phi.arity() != psi.arity() {
        return Err(Error::Mismatch(format!("arities differ: {} vs {}", phi.arity(), psi.arity())));
    }
    Ok(())
}

/// Unknown ring-matrix entries laid out as integer variables, one per
/// coordinate. Blocks are `(offset, rows, cols)`; `z` is the last block.
struct Unknowns {
    dim: usize,
    z: (usize, usize, usize),
}

impl Unknowns {
    fn var(&self, block: (usize, usize, usize), i: usize, j: usize, b: usize) -> usize {
        block.0 + (i * block.2 + j) * self.dim + b
    }

    fn total(&self) -> usize {
        self.z.0 + self.z.1 * self.z.2 * self.dim
    }

    fn read(&self, s: &Ring, block: (usize, usize, usize), sol: &[Int]) -> RingMatrix {
        let entries = (0..block.1 * block.2)
            .map(|e| {
                let start = block.0 + e * self.dim;
                s.reduce(sol[start..start + self.dim].to_vec())
            })
            .collect();
        RingMatrix::new(s, block.1, block.2, entries).expect("shape")
    }
}

/// Procedure A: solve for a certificate.
pub fn leq_certificate(phi: &PpMatrixForm, psi: &PpMatrixForm) -> Result<Decision> {
    check_pair(phi, psi)?;
    let p = phi.left_view();
    let q = psi.left_view();
    let s = &p.ring;
    let dim = s.dim();
    let (k, l) = (p.a.rows(), p.a.cols());
    let (kc, lc) = (q.a.rows(), q.a.cols());
    let m = phi.arity();
    let x = (0, kc, k);
    let y = (kc * k * dim, lc, m);
    let z = (y.0 + lc * m * dim, lc, l);
    let u = Unknowns { dim, z };
    let n = u.total();
    let eqs = (kc * l + kc * m) * dim;
    let mut h = IntMatrix::zeros(eqs, n);
    let mut rhs = vec![Int::zero(); eqs];
    let mut moduli = Vec::with_capacity(eqs);
    let basis: Vec<_> = (0..dim).map(|b| s.basis(b)).collect();
    let mut row = 0;
    // X·A − C·Z = 0
    for i in 0..kc {
        for j in 0..l {
            for a in 0..dim {
                for pp in 0..k {
                    for (b, eb) in basis.iter().enumerate() {
                        h[(row + a, u.var(x, i, pp, b))] += &s.mul(eb, p.a.get(pp, j)).coords()[a];
                    }
                }
                for pp in 0..lc {
                    for (b, eb) in basis.iter().enumerate() {
                        h[(row + a, u.var(z, pp, j, b))] -= &s.mul(q.a.get(i, pp), eb).coords()[a];
                    }
                }
                moduli.push(s.orders()[a].clone());
            }
            row += dim;
        }
    }
    // X·B + C·Y = D
    for i in 0..kc {
        for j in 0..m {
            for a in 0..dim {
                for pp in 0..k {
                    for (b, eb) in basis.iter().enumerate() {
                        h[(row + a, u.var(x, i, pp, b))] += &s.mul(eb, p.b.get(pp, j)).coords()[a];
                    }
                }
                for pp in 0..lc {
                    for (b, eb) in basis.iter().enumerate() {
                        h[(row + a, u.var(y, pp, j, b))] += &s.mul(q.a.get(i, pp), eb).coords()[a];
                    }
                }
                rhs[row + a] = q.b.get(i, j).coords()[a].clone();
                moduli.push(s.orders()[a].clone());
            }
            row += dim;
        }
    }
    let sol = linalg::solve_congruences(&h, &rhs, &moduli);
    let Some(z_sol) = sol.particular else {
        return Ok(Decision { verdict: false, evidence: None });
    };
    // Reduce against the homogeneous lattice for a small, deterministic answer.
    let z_sol = linalg::hermite_reduce(&linalg::hermite_rows(&sol.homogeneous, n), &z_sol);
    let (xm, ym, zm) = (u.read(s, x, &z_sol), u.read(s, y, &z_sol), u.read(s, z, &z_sol));
    let cert = match phi.side() {
        Side::Left => Certificate { side: Side::Left, x: xm, y: ym, z: zm },
        Side::Right => Certificate { side: Side::Right, x: xm.transpose(), y: ym.transpose(), z: zm.transpose() },
    };
    if !cert.verify(phi, psi) {
        return Err(Error::Internal("certificate failed verification".into()));
    }
    Ok(Decision { verdict: true, evidence: Some(Evidence::Certificate(cert)) })
}

/// Procedure B: evaluate `ψ` at the generic tuple of `φ`'s free realization.
pub fn leq_semantic(phi: &PpMatrixForm, psi: &PpMatrixForm) -> Result<Decision> {
    check_pair(phi, psi)?;
    let (module, b) = free_realization(phi)?;
    if eval::satisfies(&module, psi, &b)? {
        Ok(Decision { verdict: true, evidence: None })
    } else {
        Ok(Decision { verdict: false, evidence: Some(Evidence::Countermodel { module, witness: b }) })
    }
}

/// Decides `φ ≤ ψ` with a certificate, attaching a countermodel on failure.
pub fn leq(phi: &PpMatrixForm, psi: &PpMatrixForm) -> Result<Decision> {
    let a = leq_certificate(phi, psi)?;
    if a.verdict {
        return Ok(a);
    }
    match leq_semantic(phi, psi) {
        Ok(b) if b.verdict => Err(Error::Internal("certificate and free realization disagree".into())),
        Ok(b) => Ok(b),
        Err(Error::SizeCap { .. }) => Ok(a),
        Err(e) => Err(e),
    }
}

pub fn equivalent(phi: &PpMatrixForm, psi: &PpMatrixForm) -> Result<bool> {
    Ok(leq_certificate(phi, psi)?.verdict && leq_certificate(psi, phi)?.verdict)
}

/// Index of the first `ψ ∈ Ψ` with `⋀Φ ≤ ψ`.
pub fn mckinsey_reduce(antecedent: &[PpMatrixForm], consequent: &[PpMatrixForm]) -> Result<Option<usize>> {
    let first = consequent.first().ok_or_else(|| Error::Mismatch("empty consequent".into()))?;
    let phi = if antecedent.is_empty() {
        PpMatrixForm::top(first.ring(), first.side(), first.arity())
    } else {
        PpMatrixForm::meet_all(antecedent)?
    };
    for (i, psi) in consequent.iter().enumerate() {
        if leq_certificate(&phi, psi)?.verdict {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Keeps the first formula of each equivalence class.
pub fn dedupe(formulas: &[PpMatrixForm]) -> Result<Vec<PpMatrixForm>> {
    let mut out: Vec<PpMatrixForm> = Vec::new();
    for f in formulas {
        let mut seen = false;
        for g in &out {
            if equivalent(f, g)? {
                seen = true;
                break;
            }
        }
        if !seen {
            out.push(f.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
