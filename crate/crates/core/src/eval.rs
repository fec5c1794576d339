//! Evaluation of pp formulas in finitely presented modules.
//!
//! A formula `∃ȳ (A·ȳ = B·x̄)` over a module `M` with canonical form
//! `⊕ ℤ/d_q` becomes a system of integer congruences in the coordinates of
//! `x̄` and `ȳ`; `φ(M)` is the projection of its solutions onto `x̄`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::formula::{PpMatrixForm, SymmetricSentence};
use crate::linalg::{self, Int, IntMatrix};
use crate::module::{FpModule, ModElem, Subgroup};
use crate::ring::RingElem;

fn check_formula(m: &FpModule, phi: &PpMatrixForm) -> Result<()> {
    if m.ring() != phi.ring() {
        return Err(Error::Mismatch(format!("module over {}, formula over {}", m.ring(), phi.ring())));
    }
    if m.side() != phi.side() {
        return Err(Error::Mismatch("module and formula are on different sides".into()));
    }
    Ok(())
}

fn check_tuple(m: &FpModule, phi: &PpMatrixForm, x: &[ModElem]) -> Result<()> {
    if x.len() != phi.arity() {
        return Err(Error::Dimension(format!("tuple of length {} for a formula of arity {}", x.len(), phi.arity())));
    }
    x.iter().try_for_each(|e| m.check(e))
}

/// Places `ρ(r)` transposed into `h` so that column block `col` times the
/// coordinates of a variable gives the coordinates of `r·variable`.
fn place(h: &mut IntMatrix, row: usize, col: usize, rho: &IntMatrix, sign: i32) {
    let t = rho.rows();
    for q in 0..t {
        for p in 0..t {
            let v = &rho[(p, q)];
            if !v.is_zero() {
                h[(row + q, col + p)] = if sign < 0 { -v } else { v.clone() };
            }
        }
    }
}

/// System `Σ A·ȳ − Σ B·x̄ ≡ 0` with variables ordered `x̄` then `ȳ`.
fn system(m: &FpModule, phi: &PpMatrixForm) -> (IntMatrix, Vec<Int>) {
    let v = phi.left_view();
    let t = m.width();
    let (k, l, ar) = (v.a.rows(), v.a.cols(), phi.arity());
    let mut h = IntMatrix::zeros(k * t, (ar + l) * t);
    for i in 0..k {
        for j in 0..ar {
            place(&mut h, i * t, j * t, &m.action_matrix(v.b.get(i, j)), -1);
        }
        for j in 0..l {
            place(&mut h, i * t, (ar + j) * t, &m.action_matrix(v.a.get(i, j)), 1);
        }
    }
    let moduli = (0..k).flat_map(|_| m.invariants().iter().cloned()).collect();
    (h, moduli)
}

/// `φ(M) ⊆ M^arity`.
pub fn solution_subgroup(m: &FpModule, phi: &PpMatrixForm) -> Result<Subgroup> {
    check_formula(m, phi)?;
    let (h, moduli) = system(m, phi);
    let t = m.width();
    let n = phi.arity() * t;
    let sol = linalg::solve_congruences(&h, &vec![Int::zero(); h.rows()], &moduli);
    let gens: Vec<Vec<Int>> = sol.homogeneous.iter().map(|z| z[..n].to_vec()).collect();
    Ok(Subgroup::from_flat(m, phi.arity(), &gens))
}

/// Witnesses `ȳ` with `A·ȳ = B·x̄`, if any.
pub fn find_witness(m: &FpModule, phi: &PpMatrixForm, x: &[ModElem]) -> Result<Option<Vec<ModElem>>> {
    check_formula(m, phi)?;
    check_tuple(m, phi, x)?;
    let v = phi.left_view();
    let t = m.width();
    let (k, l, ar) = (v.a.rows(), v.a.cols(), phi.arity());
    let mut h = IntMatrix::zeros(k * t, l * t);
    let mut rhs = vec![Int::zero(); k * t];
    for i in 0..k {
        for j in 0..l {
            place(&mut h, i * t, j * t, &m.action_matrix(v.a.get(i, j)), 1);
        }
        let mut acc = m.zero();
        for j in 0..ar {
            acc = m.add(&acc, &m.act(v.b.get(i, j), &x[j]));
        }
        rhs[i * t..(i + 1) * t].clone_from_slice(acc.coords());
    }
    let moduli: Vec<Int> = (0..k).flat_map(|_| m.invariants().iter().cloned()).collect();
    let sol = linalg::solve_congruences(&h, &rhs, &moduli);
    match sol.particular {
        None => Ok(None),
        Some(z) => Ok(Some((0..l).map(|j| m.elem(z[j * t..(j + 1) * t].to_vec())).collect::<Result<_>>()?)),
    }
}

/// Whether `M ⊨ φ(x̄)`.
pub fn satisfies(m: &FpModule, phi: &PpMatrixForm, x: &[ModElem]) -> Result<bool> {
    Ok(find_witness(m, phi, x)?.is_some())
}

/// The subgroup generated by `s·m` for `s` in `ideal` and `m ∈ M`
/// (`m·s` for right modules).
pub fn ideal_times_module(ideal: &[RingElem], m: &FpModule) -> Result<Subgroup> {
    let t = m.width();
    let mut gens = Vec::new();
    for s in ideal {
        m.ring().check(s)?;
        for p in 0..t {
            let mut u = vec![Int::zero(); t];
            u[p] = Int::from(1);
            gens.push(m.act(s, &m.elem(u)?));
        }
    }
    Ok(Subgroup::from_elems(m, &gens))
}

/// `ann_M X = {m : r·m = 0 for all r ∈ X}` (`m·r` for right modules).
pub fn annihilator_in_module(m: &FpModule, xs: &[RingElem]) -> Result<Subgroup> {
    let t = m.width();
    let mut h = IntMatrix::zeros(xs.len() * t, t);
    for (i, r) in xs.iter().enumerate() {
        m.ring().check(r)?;
        place(&mut h, i * t, 0, &m.action_matrix(r), 1);
    }
    let moduli: Vec<Int> = (0..xs.len()).flat_map(|_| m.invariants().iter().cloned()).collect();
    let sol = linalg::solve_congruences(&h, &vec![Int::zero(); h.rows()], &moduli);
    Ok(Subgroup::from_flat(m, 1, &sol.homogeneous))
}

/// `⋂ φ(M)` over the antecedent, all of `M^arity` when it is empty.
pub fn antecedent_subgroup(m: &FpModule, s: &SymmetricSentence) -> Result<Subgroup> {
    let mut acc: Option<Subgroup> = None;
    for phi in s.antecedent() {
        let g = solution_subgroup(m, phi)?;
        acc = Some(match acc {
            None => g,
            Some(a) => a.intersection(&g)?,
        });
    }
    match acc {
        Some(a) => Ok(a),
        None => solution_subgroup(m, &PpMatrixForm::top(s.ring(), s.side(), s.arity())),
    }
}

/// `Σ ψ(M)` over the consequent.
pub fn consequent_subgroup(m: &FpModule, s: &SymmetricSentence) -> Result<Subgroup> {
    let mut acc: Option<Subgroup> = None;
    for psi in s.consequent() {
        let g = solution_subgroup(m, psi)?;
        acc = Some(match acc {
            None => g,
            Some(a) => a.sum(&g)?,
        });
    }
    Ok(acc.expect("consequent is nonempty"))
}

/// Whether `M ⊨ ⋀Φ → ΣΨ`.
pub fn symmetric_holds(m: &FpModule, s: &SymmetricSentence) -> Result<bool> {
    antecedent_subgroup(m, s)?.is_subset(&consequent_subgroup(m, s)?)
}

/// A tuple satisfying the antecedent but not the consequent, if any.
pub fn symmetric_failure(m: &FpModule, s: &SymmetricSentence) -> Result<Option<Vec<ModElem>>> {
    let ante = antecedent_subgroup(m, s)?;
    let cons = consequent_subgroup(m, s)?;
    Ok(ante.generators().into_iter().find(|g| !cons.contains(g)))
}
