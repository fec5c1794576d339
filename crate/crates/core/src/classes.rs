//! Module classes defined by pp implications: classical and Hattori
//! torsion-freeness and divisibility, flatness, absolute purity, pp-torsion
//! radicals, purity of submodules and epimorphisms, and the tensor criterion.
//!
//! Where an axiom schema ranges over all pp formulas the check runs over an
//! enumerated family and says so in its report.

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::eval::{annihilator_in_module, ideal_times_module, satisfies, solution_subgroup};
use crate::formula::{enumerate_formulas, FormulaBound, PpMatrixForm, Side};
use crate::linalg::Int;
use crate::module::{tensor_product, FpModule, Hom, ModElem, Subgroup};
use crate::ring::{Ring, RingElem, RingKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    HoldsAtBound,
}

impl Verdict {
    pub fn holds(self) -> bool {
        self != Verdict::Fails
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    Exact,
    Bounded(FormulaBound),
}

/// What a failed check points at: the axiom instance (formula and/or
/// scalar) and an element violating it.
#[derive(Clone, Debug, Default)]
pub struct ClassWitness {
    pub formula: Option<PpMatrixForm>,
    pub scalar: Option<RingElem>,
    pub element: Option<ModElem>,
}

/// An exact characterization consulted alongside a bounded check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub name: &'static str,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct ClassReport {
    pub verdict: Verdict,
    pub witness: Option<ClassWitness>,
    pub scope: Scope,
    pub oracle: Option<OracleReport>,
}

impl ClassReport {
    fn exact(witness: Option<ClassWitness>) -> Self {
        let verdict = if witness.is_some() { Verdict::Fails } else { Verdict::Holds };
        ClassReport { verdict, witness, scope: Scope::Exact, oracle: None }
    }

    fn bounded(bound: FormulaBound, witness: Option<ClassWitness>) -> Self {
        let verdict = if witness.is_some() { Verdict::Fails } else { Verdict::HoldsAtBound };
        ClassReport { verdict, witness, scope: Scope::Bounded(bound), oracle: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassicalKind {
    Torsionfree,
    Torsion,
    Divisible,
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn prime_factors(n: &Int) -> Vec<Int> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut p = Int::from(2);
    while &p * &p <= n {
        if n.is_multiple_of(&p) {
            out.push(p.clone());
            while n.is_multiple_of(&p) {
                n /= &p;
            }
        }
        p += 1;
    }
    if n > Int::one() {
        out.push(n);
    }
    out
}

fn divisors(n: &Int) -> Vec<Int> {
    let n = n.to_u64().expect("invariant factor fits in u64");
    (1..=n).filter(|d| n % d == 0).map(Int::from).collect()
}

fn unit_vector(m: &FpModule, i: usize) -> ModElem {
    let mut v = vec![Int::zero(); m.width()];
    v[i] = Int::one();
    m.elem(v).expect("width")
}

fn first_outside(a: &Subgroup, b: &Subgroup) -> Option<ModElem> {
    a.generators().into_iter().find(|g| !b.contains(g)).map(|mut g| g.remove(0))
}

/// Torsion-freeness, torsion and divisibility over a domain (ℤ or a prime
/// field ℤ/p).
pub fn check_classical(m: &FpModule, kind: ClassicalKind) -> Result<ClassReport> {
    let ring = m.ring();
    let field = match ring.kind() {
        RingKind::Integers => false,
        RingKind::Modular(p) if is_prime(*p) => true,
        _ => return Err(Error::Unsupported(format!("{ring} is not a domain"))),
    };
    let side = m.side();
    let inv = m.invariants();
    let witness = match kind {
        ClassicalKind::Torsionfree => inv.iter().position(|d| !d.is_zero()).filter(|_| !field).map(|i| {
            let r = ring.from_int(&inv[i]);
            ClassWitness {
                formula: Some(PpMatrixForm::annihilated(ring, side, &r)),
                scalar: Some(r),
                element: Some(unit_vector(m, i)),
            }
        }),
        ClassicalKind::Torsion => {
            // Over a field every nonzero element is torsion-free.
            let free = if field { (!m.is_zero_module()).then_some(0) } else { inv.iter().position(Zero::is_zero) };
            free.map(|i| ClassWitness { formula: None, scalar: None, element: Some(unit_vector(m, i)) })
        }
        ClassicalKind::Divisible => {
            if field || m.is_zero_module() {
                None
            } else {
                let i = inv.iter().position(|d| !d.is_zero()).unwrap_or(0);
                let p = if inv[i].is_zero() { Int::from(2) } else { prime_factors(&inv[i])[0].clone() };
                let r = ring.from_int(&p);
                Some(ClassWitness {
                    formula: Some(PpMatrixForm::divides(ring, side, &r)),
                    scalar: Some(r),
                    element: Some(unit_vector(m, i)),
                })
            }
        }
    };
    Ok(ClassReport::exact(witness))
}

/// Scalars that suffice for the Hattori checks: every element of a finite
/// ring; over ℤ, zero together with the given extra values.
fn scalar_range(ring: &Ring, integer_set: impl FnOnce() -> Vec<Int>) -> Vec<RingElem> {
    match ring.elements() {
        Some(all) => all,
        None => {
            let mut v = integer_set();
            v.sort();
            v.dedup();
            v.iter().map(|n| ring.from_int(n)).collect()
        }
    }
}

/// `rx = 0 → x ∈ 𝔯(r)M` for every `r` (`xr = 0 → x ∈ M𝔩(r)` on the right).
pub fn is_h_torsionfree(m: &FpModule) -> Result<ClassReport> {
    let acting = m.acting_ring().clone();
    let scalars = scalar_range(m.ring(), || {
        let mut v = vec![Int::zero()];
        for d in m.torsion_invariants() {
            v.extend(divisors(&d));
        }
        v
    });
    for r in scalars {
        let ann = annihilator_in_module(m, std::slice::from_ref(&r))?;
        let ideal = acting.right_annihilator(&r).generators(&acting);
        let prod = ideal_times_module(&ideal, m)?;
        if let Some(e) = first_outside(&ann, &prod) {
            return Ok(ClassReport::exact(Some(ClassWitness {
                formula: Some(PpMatrixForm::annihilated(m.ring(), m.side(), &r)),
                scalar: Some(r),
                element: Some(e),
            })));
        }
    }
    Ok(ClassReport::exact(None))
}

/// `(⋀_{s ∈ 𝔩(r)} sx = 0) → r | x` for every `r`, mirrored on the right.
pub fn is_h_divisible(m: &FpModule) -> Result<ClassReport> {
    let acting = m.acting_ring().clone();
    let scalars = scalar_range(m.ring(), || {
        let mut v = vec![Int::zero(), Int::from(2)];
        for d in m.torsion_invariants() {
            v.extend(prime_factors(&d));
        }
        v
    });
    for r in scalars {
        let ann_ideal = acting.left_annihilator(&r).generators(&acting);
        let ann = annihilator_in_module(m, &ann_ideal)?;
        let rm = ideal_times_module(std::slice::from_ref(&r), m)?;
        if let Some(e) = first_outside(&ann, &rm) {
            return Ok(ClassReport::exact(Some(ClassWitness {
                formula: Some(PpMatrixForm::divides(m.ring(), m.side(), &r)),
                scalar: Some(r),
                element: Some(e),
            })));
        }
    }
    Ok(ClassReport::exact(None))
}

/// `φ(R)` for the regular module on the given side, as ring elements.
pub fn regular_solutions(ring: &Ring, side: Side, phi: &PpMatrixForm) -> Result<Vec<RingElem>> {
    let r = FpModule::free(ring, side, 1)?;
    let s = solution_subgroup(&r, phi)?;
    Ok(s.generators().iter().map(|g| r.express(&g[0]).remove(0)).collect())
}

/// Exact flatness for finitely generated modules where it is known:
/// torsion-freeness over ℤ, freeness over ℤ/pᵏ. Returns the oracle verdict
/// and, on failure, a formula `dx = 0` with an element violating the flat
/// axiom for it.
fn flat_oracle(m: &FpModule) -> Option<(OracleReport, Option<ClassWitness>)> {
    let ring = m.ring();
    let (name, bad) = match ring.kind() {
        RingKind::Integers => ("torsionfree over Z", m.invariants().iter().position(|d| !d.is_zero())),
        RingKind::Modular(n) => {
            let n = Int::from(*n);
            if prime_factors(&n).len() > 1 || n.is_one() {
                return None;
            }
            ("free over Z/p^k", m.invariants().iter().position(|d| *d != n))
        }
        RingKind::Table => return None,
    };
    let witness = bad.map(|i| {
        let r = ring.from_int(&m.invariants()[i]);
        ClassWitness {
            formula: Some(PpMatrixForm::annihilated(ring, m.side(), &r)),
            scalar: Some(r),
            element: Some(unit_vector(m, i)),
        }
    });
    Some((OracleReport { name, holds: witness.is_none() }, witness))
}

/// `φ(M) ⊆ φ(R)·M` for a single formula; returns an offending element.
pub fn flat_failure(m: &FpModule, phi: &PpMatrixForm) -> Result<Option<ModElem>> {
    let sol = solution_subgroup(m, phi)?;
    let ideal = regular_solutions(m.ring(), m.side(), phi)?;
    let prod = ideal_times_module(&ideal, m)?;
    Ok(first_outside(&sol, &prod))
}

/// Flatness via `φ(M) ⊆ φ(R)·M` over enumerated unary formulas, combined
/// with the exact oracle when one applies.
pub fn is_flat_bounded(m: &FpModule, bound: &FormulaBound) -> Result<ClassReport> {
    let mut failure = None;
    for phi in enumerate_formulas(m.ring(), m.side(), 1, bound) {
        if let Some(e) = flat_failure(m, &phi)? {
            failure = Some(ClassWitness { formula: Some(phi), scalar: None, element: Some(e) });
            break;
        }
    }
    let mut report = ClassReport::bounded(*bound, failure);
    if let Some((oracle, oracle_witness)) = flat_oracle(m) {
        if oracle.holds && report.verdict == Verdict::Fails {
            return Err(Error::Internal(format!("bounded flatness check contradicts `{}`", oracle.name)));
        }
        if oracle.holds {
            report.verdict = Verdict::Holds;
            report.scope = Scope::Exact;
        } else if report.verdict != Verdict::Fails {
            report.verdict = Verdict::Fails;
            report.witness = oracle_witness;
        }
        report.oracle = Some(oracle);
    }
    Ok(report)
}

/// `ann_M Dφ(R)` for a formula on `M`'s side.
pub fn dual_annihilator(m: &FpModule, phi: &PpMatrixForm) -> Result<Subgroup> {
    let d = phi.dual();
    let xs = regular_solutions(m.ring(), d.side(), &d)?;
    annihilator_in_module(m, &xs)
}

/// Absolute purity via `φ(M) = ann_M Dφ(R)` over enumerated unary formulas.
pub fn is_abs_pure_bounded(m: &FpModule, bound: &FormulaBound) -> Result<ClassReport> {
    for phi in enumerate_formulas(m.ring(), m.side(), 1, bound) {
        let sol = solution_subgroup(m, &phi)?;
        let ann = dual_annihilator(m, &phi)?;
        if !sol.is_subset(&ann)? {
            return Err(Error::Internal(format!(
                "φ(M) ⊄ ann_M Dφ(R) for φ = {}",
                crate::formula::print_formula(&phi)
            )));
        }
        if let Some(e) = first_outside(&ann, &sol) {
            return Ok(ClassReport::bounded(
                *bound,
                Some(ClassWitness { formula: Some(phi), scalar: None, element: Some(e) }),
            ));
        }
    }
    Ok(ClassReport::bounded(*bound, None))
}

/// `Σ ψ(M)` over enumerated unary `ψ` vanishing on every module in `wrt`;
/// with `wrt = [R]` this approximates the radical `𝔰(M)`.
pub fn s_radical_bounded(m: &FpModule, wrt: &[FpModule], bound: &FormulaBound) -> Result<Subgroup> {
    if wrt.is_empty() {
        return Err(Error::Mismatch("reference class is empty".into()));
    }
    let mut acc = m.trivial();
    'formulas: for psi in enumerate_formulas(m.ring(), m.side(), 1, bound) {
        for n in wrt {
            if !solution_subgroup(n, &psi)?.is_trivial() {
                continue 'formulas;
            }
        }
        acc = acc.sum(&solution_subgroup(m, &psi)?)?;
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PurityMode {
    /// `S ∩ nM = nS` for every `n` (rings ℤ and ℤ/n only).
    ExactZ,
    Bounded(FormulaBound),
}

fn check_submodule(m: &FpModule, s: &Subgroup) -> Result<()> {
    if s.module() != m || s.power() != 1 {
        return Err(Error::Mismatch("subgroup does not lie in this module".into()));
    }
    if !s.is_submodule() {
        return Err(Error::NotSubmodule);
    }
    Ok(())
}

fn integer_ring(ring: &Ring) -> bool {
    !matches!(ring.kind(), RingKind::Table)
}

/// Whether `S` is a pure submodule of `M`.
pub fn is_pure_submodule(m: &FpModule, s: &Subgroup, mode: PurityMode) -> Result<ClassReport> {
    check_submodule(m, s)?;
    match mode {
        PurityMode::ExactZ => {
            if !integer_ring(m.ring()) {
                return Err(Error::Unsupported("exact purity needs the ring Z or Z/n".into()));
            }
            // A failure at n gives one at the order of m + S in M/S, which
            // divides the torsion exponent of M/S.
            let (q, _) = m.quotient(s)?;
            let e = q.torsion_exponent();
            let (sub, incl) = m.submodule(s)?;
            for n in divisors(&e).into_iter().skip(1) {
                let r = m.ring().from_int(&n);
                let nm = ideal_times_module(std::slice::from_ref(&r), m)?;
                let ns = incl.image_of(&ideal_times_module(std::slice::from_ref(&r), &sub)?)?;
                let meet = s.intersection(&nm)?;
                if let Some(x) = first_outside(&meet, &ns) {
                    return Ok(ClassReport::exact(Some(ClassWitness {
                        formula: Some(PpMatrixForm::divides(m.ring(), m.side(), &r)),
                        scalar: Some(r),
                        element: Some(x),
                    })));
                }
            }
            Ok(ClassReport::exact(None))
        }
        PurityMode::Bounded(bound) => {
            let (sub, incl) = m.submodule(s)?;
            for phi in enumerate_formulas(m.ring(), m.side(), 1, &bound) {
                let meet = s.intersection(&solution_subgroup(m, &phi)?)?;
                let inner = incl.image_of(&solution_subgroup(&sub, &phi)?)?;
                if let Some(x) = first_outside(&meet, &inner) {
                    return Ok(ClassReport::bounded(
                        bound,
                        Some(ClassWitness { formula: Some(phi), scalar: None, element: Some(x) }),
                    ));
                }
            }
            Ok(ClassReport::bounded(bound, None))
        }
    }
}

/// Whether a surjection `f: B → C` is a pure epimorphism: every tuple in
/// `φ(C)` lifts into `φ(B)`. Over ℤ and ℤ/n this is decided exactly through
/// purity of the kernel; otherwise over enumerated unary formulas.
pub fn is_pure_epimorphism(f: &Hom, bound: &FormulaBound) -> Result<ClassReport> {
    if !f.is_surjective() {
        return Err(Error::NotSurjective);
    }
    let b = f.source();
    let ring = b.ring();
    if integer_ring(ring) {
        let ker = f.kernel();
        let report = is_pure_submodule(b, &ker, PurityMode::ExactZ)?;
        let Some(w) = report.witness else {
            return Ok(ClassReport::exact(None));
        };
        // s = n·y lies in the kernel but not in n·ker: f(y) satisfies
        // n·x = 0 in C and no preimage of it does in B.
        let n = w.scalar.expect("purity witness carries n");
        let s = w.element.expect("purity witness carries an element");
        let y = crate::eval::find_witness(b, &PpMatrixForm::divides(ring, b.side(), &n), &[s])?
            .ok_or_else(|| Error::Internal("purity witness is not divisible".into()))?;
        return Ok(ClassReport::exact(Some(ClassWitness {
            formula: Some(PpMatrixForm::annihilated(ring, b.side(), &n)),
            scalar: Some(n),
            element: Some(f.apply(&y[0])?),
        })));
    }
    for phi in enumerate_formulas(ring, b.side(), 1, bound) {
        let target = solution_subgroup(f.target(), &phi)?;
        let lifted = f.image_of(&solution_subgroup(b, &phi)?)?;
        if let Some(x) = first_outside(&target, &lifted) {
            return Ok(ClassReport::bounded(
                *bound,
                Some(ClassWitness { formula: Some(phi), scalar: None, element: Some(x) }),
            ));
        }
    }
    Ok(ClassReport::bounded(*bound, None))
}

/// The classes with a single-module failure witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassName {
    Torsionfree,
    Torsion,
    Divisible,
    HTorsionfree,
    HDivisible,
    Flat,
    AbsPure,
}

impl std::str::FromStr for ClassName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_value(serde_json::Value::String(s.to_string()))
            .map_err(|_| Error::Malformed(format!("unknown class `{s}`")))
    }
}

impl ClassName {
    pub fn as_str(self) -> &'static str {
        match self {
            ClassName::Torsionfree => "torsionfree",
            ClassName::Torsion => "torsion",
            ClassName::Divisible => "divisible",
            ClassName::HTorsionfree => "h-torsionfree",
            ClassName::HDivisible => "h-divisible",
            ClassName::Flat => "flat",
            ClassName::AbsPure => "abs-pure",
        }
    }
}

/// Runs the checker for `class` with `bound` where the check is bounded.
pub fn check_class(m: &FpModule, class: ClassName, bound: &FormulaBound) -> Result<ClassReport> {
    match class {
        ClassName::Torsionfree => check_classical(m, ClassicalKind::Torsionfree),
        ClassName::Torsion => check_classical(m, ClassicalKind::Torsion),
        ClassName::Divisible => check_classical(m, ClassicalKind::Divisible),
        ClassName::HTorsionfree => is_h_torsionfree(m),
        ClassName::HDivisible => is_h_divisible(m),
        ClassName::Flat => is_flat_bounded(m, bound),
        ClassName::AbsPure => is_abs_pure_bounded(m, bound),
    }
}

/// Re-checks a failure witness for `class` from scratch.
pub fn witness_is_valid(m: &FpModule, class: ClassName, w: &ClassWitness) -> Result<bool> {
    let Some(e) = &w.element else { return Ok(false) };
    m.check(e)?;
    let acting = m.acting_ring().clone();
    let in_span = |ideal: &[RingElem]| -> Result<bool> { Ok(ideal_times_module(ideal, m)?.contains(std::slice::from_ref(e))) };
    Ok(match (class, &w.scalar, &w.formula) {
        (ClassName::Torsionfree, Some(r), _) => !r.is_zero() && !e.is_zero() && m.act(r, e).is_zero(),
        (ClassName::Torsion, _, _) => m.order(e).is_zero(),
        (ClassName::Divisible, Some(r), _) => !r.is_zero() && !in_span(std::slice::from_ref(r))?,
        (ClassName::HTorsionfree, Some(r), _) => {
            m.act(r, e).is_zero() && !in_span(&acting.right_annihilator(r).generators(&acting))?
        }
        (ClassName::HDivisible, Some(r), _) => {
            let ann = acting.left_annihilator(r).generators(&acting);
            ann.iter().all(|s| m.act(s, e).is_zero()) && !in_span(std::slice::from_ref(r))?
        }
        (ClassName::Flat, _, Some(phi)) => {
            satisfies(m, phi, std::slice::from_ref(e))? && !in_span(&regular_solutions(m.ring(), m.side(), phi)?)?
        }
        (ClassName::AbsPure, _, Some(phi)) => {
            dual_annihilator(m, phi)?.contains(std::slice::from_ref(e)) && !satisfies(m, phi, std::slice::from_ref(e))?
        }
        _ => false,
    })
}

/// Re-checks a purity failure: `e ∈ S ∩ φ(M)` but `e ∉ φ(S)`, with `φ`
/// the witness formula (or `n | x` for a scalar witness).
pub fn purity_witness_is_valid(m: &FpModule, s: &Subgroup, w: &ClassWitness) -> Result<bool> {
    check_submodule(m, s)?;
    let Some(e) = &w.element else { return Ok(false) };
    let phi = match (&w.formula, &w.scalar) {
        (Some(phi), _) => phi.clone(),
        (None, Some(n)) => PpMatrixForm::divides(m.ring(), m.side(), n),
        (None, None) => return Ok(false),
    };
    let (sub, incl) = m.submodule(s)?;
    let inner = incl.image_of(&solution_subgroup(&sub, &phi)?)?;
    let e = std::slice::from_ref(e);
    Ok(s.contains(e) && satisfies(m, &phi, e)? && !inner.contains(e))
}

/// Outcome of the tensor criterion.
#[derive(Clone, Debug)]
pub enum TensorZero {
    /// `ā ⊗ b̄ = 0`, witnessed by `φ` with `b̄ ∈ φ(B)` and `ā ∈ Dφ(A)`.
    ZeroWithWitness(PpMatrixForm),
    /// `ā ⊗ b̄ = 0` by direct computation; no witness among the formulas tried.
    ZeroNoWitness,
    Nonzero,
}

impl TensorZero {
    pub fn is_zero(&self) -> bool {
        !matches!(self, TensorZero::Nonzero)
    }
}

/// First formula `φ` among `candidates` with `b̄ ∈ φ(B)` and `ā ∈ Dφ(A)`.
pub fn tensor_witness(
    a: &FpModule,
    abar: &[ModElem],
    b: &FpModule,
    bbar: &[ModElem],
    candidates: impl IntoIterator<Item = PpMatrixForm>,
) -> Result<Option<PpMatrixForm>> {
    for phi in candidates {
        if satisfies(b, &phi, bbar)? && satisfies(a, &phi.dual(), abar)? {
            return Ok(Some(phi));
        }
    }
    Ok(None)
}

/// Decides `ā ⊗ b̄ = 0` in `A ⊗_R B` directly and searches `candidates`
/// (left formulas of arity `|ā|`) for a witness.
pub fn herzog_tensor_zero_with(
    a: &FpModule,
    abar: &[ModElem],
    b: &FpModule,
    bbar: &[ModElem],
    candidates: impl IntoIterator<Item = PpMatrixForm>,
) -> Result<TensorZero> {
    let t = tensor_product(a, b)?;
    let zero = t.simple_tensor(abar, bbar)?.is_zero();
    let witness = tensor_witness(a, abar, b, bbar, candidates)?;
    match (witness, zero) {
        (Some(_), false) => Err(Error::Internal("tensor witness found for a nonzero tensor".into())),
        (Some(phi), true) => Ok(TensorZero::ZeroWithWitness(phi)),
        (None, true) => Ok(TensorZero::ZeroNoWitness),
        (None, false) => Ok(TensorZero::Nonzero),
    }
}

/// [`herzog_tensor_zero_with`] over the enumerated formulas at `bound`.
pub fn herzog_tensor_zero(
    a: &FpModule,
    abar: &[ModElem],
    b: &FpModule,
    bbar: &[ModElem],
    bound: &FormulaBound,
) -> Result<TensorZero> {
    let candidates = enumerate_formulas(b.ring(), Side::Left, bbar.len(), bound);
    herzog_tensor_zero_with(a, abar, b, bbar, candidates)
}
