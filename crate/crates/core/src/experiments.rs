//! Finite-scale experiments on preservation of pp implications: A-sentences
//! in products, symmetric sentences in pure submodules, F-sentences in
//! direct sums, and McKinsey reduction of disjunctive sentences.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use serde::Serialize;

use crate::classes::{is_pure_submodule, regular_solutions, PurityMode};
use crate::decide::{equivalent, mckinsey_reduce};
use crate::error::{Error, Result};
use crate::eval::{solution_subgroup, symmetric_failure};
use crate::formula::{enumerate_formulas, print_formula, FormulaBound, PpMatrixForm, Side, SymmetricSentence};
use crate::linalg::Int;
use crate::module::{direct_sum, FpModule, ModElem, Subgroup};
use crate::ring::Ring;

/// Every `ℤ^a ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_k` with `a ≤ max_rank`, `k ≤ max_torsion`,
/// `d₁ | d₂ | …` and `2 ≤ dᵢ ≤ max_factor`.
pub fn abelian_corpus(max_factor: u64, max_rank: usize, max_torsion: usize) -> Vec<FpModule> {
    let mut chains: Vec<Vec<u64>> = vec![vec![]];
    let mut frontier = chains.clone();
    for _ in 0..max_torsion {
        let mut next = Vec::new();
        for c in &frontier {
            let start = c.last().copied().unwrap_or(1);
            for d in 2..=max_factor {
                if d % start == 0 {
                    let mut e = c.clone();
                    e.push(d);
                    next.push(e);
                }
            }
        }
        chains.extend(next.iter().cloned());
        frontier = next;
    }
    let z = Ring::integers();
    let mut out = Vec::new();
    for rank in 0..=max_rank {
        for c in &chains {
            let inv: Vec<u64> = std::iter::repeat(0).take(rank).chain(c.iter().copied()).collect();
            out.push(abelian_group(&z, Side::Left, &inv));
        }
    }
    out
}

/// `⊕ R/dᵢR` for integers `dᵢ` (0 gives a free summand).
pub fn abelian_group(ring: &Ring, side: Side, invariants: &[u64]) -> FpModule {
    if invariants.is_empty() {
        return FpModule::zero_module(ring, side);
    }
    let parts: Vec<FpModule> = invariants
        .iter()
        .map(|&d| FpModule::cyclic(ring, side, &ring.from_int(&Int::from(d))).expect("cyclic"))
        .collect();
    direct_sum(&parts).expect("same ring").module
}

/// The cyclic modules `ℤ/n / dℤ/n` for `d | n`, `2 ≤ n ≤ max_n`.
pub fn cyclic_modular_corpus(max_n: u64) -> Vec<FpModule> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        let r = Ring::modular(n).expect("n ≥ 2");
        for d in (1..=n).filter(|d| n % d == 0) {
            out.push(FpModule::cyclic(&r, Side::Left, &r.from_int(&Int::from(d))).expect("cyclic"));
        }
    }
    out
}

/// Abelian groups with at most two free and two torsion invariants bounded
/// by 8, and the cyclic modules over `ℤ/n` for `n ≤ 12`.
pub fn standard_corpus() -> Vec<FpModule> {
    let mut c = abelian_corpus(8, 2, 2);
    c.extend(cyclic_modular_corpus(12));
    c
}

/// `rx = 0 → x = 0` for `2 ≤ r ≤ max_r`.
pub fn torsionfree_axioms(ring: &Ring, side: Side, max_r: u64) -> Vec<SymmetricSentence> {
    (2..=max_r)
        .map(|r| {
            let r = ring.from_int(&Int::from(r));
            SymmetricSentence::implication(
                PpMatrixForm::annihilated(ring, side, &r),
                PpMatrixForm::bottom(ring, side, 1),
            )
            .expect("compatible")
        })
        .collect()
}

/// `φ → Σ_{s ∈ φ(R)} s | x`, one summand per generator of `φ(R)`.
pub fn flat_axiom(phi: &PpMatrixForm) -> Result<SymmetricSentence> {
    if phi.arity() != 1 {
        return Err(Error::Dimension(format!("flat axioms are unary, got arity {}", phi.arity())));
    }
    let (ring, side) = (phi.ring(), phi.side());
    let mut cons: Vec<PpMatrixForm> = regular_solutions(ring, side, phi)?
        .iter()
        .map(|s| PpMatrixForm::divides(ring, side, s))
        .collect();
    if cons.is_empty() {
        cons.push(PpMatrixForm::bottom(ring, side, 1));
    }
    SymmetricSentence::new(vec![phi.clone()], cons)
}

pub fn flat_axioms(ring: &Ring, side: Side, bound: &FormulaBound) -> Result<Vec<SymmetricSentence>> {
    enumerate_formulas(ring, side, 1, bound).map(|phi| flat_axiom(&phi)).collect()
}

/// `{φ₁; φ₂} -> {ψ₁; ψ₂}` with formulas printed in the input syntax.
pub fn describe_sentence(s: &SymmetricSentence) -> String {
    let list = |fs: &[PpMatrixForm]| fs.iter().map(print_formula).join("; ");
    format!("{{{}}} -> {{{}}}", list(s.antecedent()), list(s.consequent()))
}

/// Every submodule of a finite module, smallest first. Fails with
/// `SizeCap` when the module is infinite or has more than `limit` elements.
pub fn all_submodules(m: &FpModule, limit: u64) -> Result<Vec<Subgroup>> {
    let elems = m.elements(limit).ok_or_else(|| Error::SizeCap {
        size: m.size().map_or("infinite".into(), |s| s.to_string()),
        cap: limit,
    })?;
    let acting = m.acting_ring().clone();
    let cyclic: Vec<Subgroup> = elems
        .iter()
        .map(|e| {
            let gens: Vec<ModElem> = (0..acting.dim()).map(|b| m.act(&acting.basis(b), e)).collect();
            Subgroup::from_elems(m, &gens)
        })
        .collect();
    let mut out = vec![m.trivial()];
    let mut seen: std::collections::BTreeSet<Vec<Vec<Int>>> = [m.trivial().basis().to_vec()].into();
    let mut i = 0;
    while i < out.len() {
        for c in &cyclic {
            let s = out[i].sum(c)?;
            if seen.insert(s.basis().to_vec()) {
                out.push(s);
            }
        }
        i += 1;
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Products,
    PureSub,
    DirectSum,
    McKinsey,
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub sentence: String,
    pub modules: Vec<String>,
    pub tuple: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub kind: ExperimentKind,
    pub sentences: usize,
    /// (sentence, construction) pairs covered by an evaluation.
    pub checked: usize,
    /// Constructions skipped because they exceeded the size cap.
    pub skipped: usize,
    pub violations: Vec<Violation>,
}

fn tuple_strings(t: &[ModElem]) -> Vec<Vec<String>> {
    t.iter().map(|e| e.coords().iter().map(Int::to_string).collect()).collect()
}

fn group_by_ring(corpus: &[FpModule]) -> Vec<Vec<FpModule>> {
    let mut groups: BTreeMap<String, Vec<FpModule>> = BTreeMap::new();
    for m in corpus {
        groups.entry(format!("{} {:?}", m.ring(), m.side())).or_default().push(m.clone());
    }
    groups.into_values().collect()
}

/// Free rank and elementary divisors, which determine a module over ℤ or ℤ/n
/// up to isomorphism. `None` over table rings.
fn abelian_key(m: &FpModule) -> Option<Vec<u64>> {
    if *m.ring().kind() == crate::ring::RingKind::Table {
        return None;
    }
    let mut key = vec![0; m.free_rank()];
    for d in m.torsion_invariants() {
        let mut d = u64::try_from(&d).ok()?;
        let mut p = 2;
        while d > 1 {
            if p * p > d {
                key.push(d);
                break;
            }
            let mut q = 1;
            while d % p == 0 {
                d /= p;
                q *= p;
            }
            if q > 1 {
                key.push(q);
            }
            p += 1;
        }
    }
    key.sort_unstable();
    Some(key)
}

/// For each sentence, the index of the first sentence logically equivalent
/// to it. `holds[m][j]` records whether sentence `j` holds in module `m`,
/// which equivalent sentences share.
fn equivalence_representatives(sentences: &[&SymmetricSentence], holds: &[Vec<bool>]) -> Result<Vec<usize>> {
    let forms: Vec<(PpMatrixForm, PpMatrixForm)> =
        sentences.iter().map(|s| (s.antecedent_formula(), s.consequent_formula())).collect();
    let mut buckets: HashMap<Vec<bool>, Vec<usize>> = HashMap::new();
    let mut rep = Vec::with_capacity(sentences.len());
    for j in 0..sentences.len() {
        let profile: Vec<bool> = holds.iter().map(|h| h[j]).collect();
        let reps = buckets.entry(profile).or_default();
        let mut found = j;
        for &r in reps.iter() {
            if equivalent(&forms[r].0, &forms[j].0)? && equivalent(&forms[r].1, &forms[j].1)? {
                found = r;
                break;
            }
        }
        if found == j {
            reps.push(j);
        }
        rep.push(found);
    }
    Ok(rep)
}

/// [`symmetric_failure`] with solution sets memoized per formula.
fn cached_failure<'a>(
    m: &FpModule,
    s: &'a SymmetricSentence,
    cache: &mut HashMap<&'a PpMatrixForm, Subgroup>,
) -> Result<Option<Vec<ModElem>>> {
    let mut solve = |phi: &'a PpMatrixForm| -> Result<Subgroup> {
        if let Some(g) = cache.get(phi) {
            return Ok(g.clone());
        }
        let g = solution_subgroup(m, phi)?;
        cache.insert(phi, g.clone());
        Ok(g)
    };
    let mut ante: Option<Subgroup> = None;
    for phi in s.antecedent() {
        let g = solve(phi)?;
        ante = Some(match ante {
            None => g,
            Some(a) => a.intersection(&g)?,
        });
    }
    let ante = match ante {
        Some(a) => a,
        None => return symmetric_failure(m, s),
    };
    let mut cons: Option<Subgroup> = None;
    for psi in s.consequent() {
        let g = solve(psi)?;
        cons = Some(match cons {
            None => g,
            Some(c) => c.sum(&g)?,
        });
    }
    let cons = cons.expect("consequent is nonempty");
    Ok(ante.generators().into_iter().find(|g| !cons.contains(g)))
}

/// Direct sums of `2..=max_factors` modules from each ring group, checked
/// against every sentence holding in all summands. Isomorphic sums over ℤ and
/// ℤ/n are evaluated once.
fn sum_closure(
    kind: ExperimentKind,
    sentences: &[SymmetricSentence],
    corpus: &[FpModule],
    max_factors: usize,
) -> Result<ExperimentReport> {
    let mut report = ExperimentReport { kind, sentences: sentences.len(), checked: 0, skipped: 0, violations: vec![] };
    for group in group_by_ring(corpus) {
        let relevant: Vec<&SymmetricSentence> =
            sentences.iter().filter(|s| s.ring() == group[0].ring() && s.side() == group[0].side()).collect();
        if relevant.is_empty() {
            continue;
        }
        let holds: Vec<Vec<bool>> = group
            .iter()
            .map(|m| relevant.iter().map(|s| Ok(symmetric_failure(m, s)?.is_none())).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        let rep = equivalence_representatives(&relevant, &holds)?;
        let keys: Vec<Option<Vec<u64>>> = group.iter().map(abelian_key).collect();
        // iso class (or index multiset) -> representative and sentences to check
        let mut classes: BTreeMap<Vec<u64>, (Vec<usize>, Vec<bool>)> = BTreeMap::new();
        for k in 2..=max_factors {
            for combo in (0..group.len()).combinations_with_replacement(k) {
                let common: Vec<bool> =
                    (0..relevant.len()).map(|j| combo.iter().all(|&i| holds[i][j])).collect();
                let count = common.iter().filter(|&&b| b).count();
                if count == 0 {
                    continue;
                }
                report.checked += count;
                let key = match combo.iter().map(|&i| keys[i].clone()).collect::<Option<Vec<_>>>() {
                    Some(parts) => {
                        let mut key: Vec<u64> = parts.concat();
                        key.sort_unstable();
                        key
                    }
                    None => combo.iter().map(|&i| i as u64).collect(),
                };
                let entry = classes.entry(key).or_insert_with(|| (combo.clone(), vec![false; relevant.len()]));
                for (e, c) in entry.1.iter_mut().zip(&common) {
                    *e |= *c;
                }
            }
        }
        for (combo, todo) in classes.into_values() {
            let factors: Vec<FpModule> = combo.iter().map(|&i| group[i].clone()).collect();
            let sum = match direct_sum(&factors) {
                Ok(d) => d.module,
                Err(Error::SizeCap { .. }) => {
                    report.skipped += 1;
                    continue;
                }
                Err(e) => return Err(e),
            };
            let mut cache = HashMap::new();
            let mut verdicts: HashMap<usize, Option<Vec<ModElem>>> = HashMap::new();
            for (j, s) in relevant.iter().enumerate().filter(|&(j, _)| todo[j]) {
                let failure = match verdicts.get(&rep[j]) {
                    Some(v) => v.clone(),
                    None => {
                        let v = cached_failure(&sum, relevant[rep[j]], &mut cache)?;
                        verdicts.insert(rep[j], v.clone());
                        v
                    }
                };
                if let Some(t) = failure {
                    report.violations.push(Violation {
                        sentence: describe_sentence(s),
                        modules: factors.iter().map(FpModule::describe).collect(),
                        tuple: tuple_strings(&t),
                    });
                }
            }
        }
    }
    Ok(report)
}

/// A-sentences (single consequent) holding in every factor hold in the
/// product, for products of `2..=max_factors` corpus modules over a common
/// ring.
pub fn products_experiment(
    sentences: &[SymmetricSentence],
    corpus: &[FpModule],
    max_factors: usize,
) -> Result<ExperimentReport> {
    if let Some(s) = sentences.iter().find(|s| s.consequent().len() != 1) {
        return Err(Error::Mismatch(format!("not an A-sentence: {}", describe_sentence(s))));
    }
    sum_closure(ExperimentKind::Products, sentences, corpus, max_factors)
}

/// F-sentences (single antecedent) holding in every summand hold in the
/// direct sum.
pub fn direct_sum_experiment(
    sentences: &[SymmetricSentence],
    corpus: &[FpModule],
    max_summands: usize,
) -> Result<ExperimentReport> {
    if let Some(s) = sentences.iter().find(|s| s.antecedent().len() != 1) {
        return Err(Error::Mismatch(format!("not an F-sentence: {}", describe_sentence(s))));
    }
    sum_closure(ExperimentKind::DirectSum, sentences, corpus, max_summands)
}

/// Submodules examined in a corpus module: all of them when the module is
/// finite, otherwise those generated by one element with canonical
/// coordinates in `[-2, 2]`.
fn candidate_submodules(m: &FpModule) -> Result<Vec<Subgroup>> {
    if m.is_finite() {
        return all_submodules(m, 1 << 12);
    }
    let acting = m.acting_ring().clone();
    let mut out: Vec<Subgroup> = Vec::new();
    for coords in (0..m.width()).map(|_| -2i64..=2).multi_cartesian_product() {
        let e = m.elem(coords.into_iter().map(Int::from).collect())?;
        let gens: Vec<ModElem> = (0..acting.dim()).map(|b| m.act(&acting.basis(b), &e)).collect();
        let s = Subgroup::from_elems(m, &gens);
        if !out.iter().any(|t| t.basis() == s.basis()) {
            out.push(s);
        }
    }
    Ok(out)
}

/// Symmetric sentences holding in `M` hold in every pure submodule of `M`.
/// Purity is decided exactly over ℤ and ℤ/n, at `bound` otherwise.
pub fn pure_sub_experiment(
    sentences: &[SymmetricSentence],
    corpus: &[FpModule],
    bound: &FormulaBound,
) -> Result<ExperimentReport> {
    let mut report =
        ExperimentReport { kind: ExperimentKind::PureSub, sentences: sentences.len(), checked: 0, skipped: 0, violations: vec![] };
    for m in corpus {
        let relevant: Vec<&SymmetricSentence> = sentences.iter().filter(|s| s.ring() == m.ring() && s.side() == m.side()).collect();
        let mut holding = Vec::new();
        for s in relevant {
            if symmetric_failure(m, s)?.is_none() {
                holding.push(s);
            }
        }
        if holding.is_empty() {
            continue;
        }
        let mode = match m.ring().kind() {
            crate::ring::RingKind::Table => PurityMode::Bounded(*bound),
            _ => PurityMode::ExactZ,
        };
        for sub in candidate_submodules(m)? {
            if !is_pure_submodule(m, &sub, mode)?.verdict.holds() {
                continue;
            }
            let (n, incl) = m.submodule(&sub)?;
            for s in &holding {
                report.checked += 1;
                if let Some(t) = symmetric_failure(&n, s)? {
                    let image: Vec<ModElem> = t.iter().map(|x| incl.apply(x)).collect::<Result<_>>()?;
                    report.violations.push(Violation {
                        sentence: describe_sentence(s),
                        modules: vec![m.describe(), n.describe()],
                        tuple: tuple_strings(&image),
                    });
                }
            }
        }
    }
    Ok(report)
}

/// Whether every tuple of `⋀Φ(M)` lies in some `ψ(M)`, `ψ ∈ Ψ` (a union,
/// not a sum). Needs a finite module.
pub fn disjunction_holds(m: &FpModule, antecedent: &PpMatrixForm, consequent: &[PpMatrixForm]) -> Result<bool> {
    let ante = solution_subgroup(m, antecedent)?;
    let tuples = ante.elements(1 << 14).ok_or_else(|| Error::SizeCap {
        size: ante.size().map_or("infinite".into(), |s| s.to_string()),
        cap: 1 << 14,
    })?;
    let cons: Vec<Subgroup> = consequent.iter().map(|psi| solution_subgroup(m, psi)).collect::<Result<_>>()?;
    Ok(tuples.iter().all(|t| cons.iter().any(|c| c.contains(t))))
}

#[derive(Clone, Debug, Serialize)]
pub struct McKinseyReport {
    /// Index of a consequent `ψ` with `⋀Φ ≤ ψ` in every module.
    pub valid_single: Option<usize>,
    /// Whether `⋀Φ → ⋁Ψ` survived every product of corpus models.
    pub preserved_on_corpus: bool,
    /// Index of the first `ψ` for which `⋀Φ → ψ` and `⋀Φ → ⋁Ψ` have the
    /// same models among the corpus and its products.
    pub reduced: Option<usize>,
    pub structures: usize,
}

/// McKinsey reduction of `⋀Φ → ⋁Ψ`, checked exactly against pp validity and
/// semantically on finite corpus modules together with their direct sums of
/// up to `max_factors` summands.
pub fn mckinsey_experiment(
    antecedent: &[PpMatrixForm],
    consequent: &[PpMatrixForm],
    corpus: &[FpModule],
    max_factors: usize,
) -> Result<McKinseyReport> {
    let valid_single = mckinsey_reduce(antecedent, consequent)?;
    let first = &consequent[0];
    let phi = if antecedent.is_empty() {
        PpMatrixForm::top(first.ring(), first.side(), first.arity())
    } else {
        PpMatrixForm::meet_all(antecedent)?
    };
    let base: Vec<FpModule> = corpus
        .iter()
        .filter(|m| m.ring() == phi.ring() && m.side() == phi.side() && m.is_finite())
        .cloned()
        .collect();
    let mut preserved = true;
    let mut structures: Vec<FpModule> = base.clone();
    let models: Vec<usize> = (0..base.len())
        .filter_map(|i| match disjunction_holds(&base[i], &phi, consequent) {
            Ok(true) => Some(Ok(i)),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        })
        .collect::<Result<_>>()?;
    for k in 2..=max_factors {
        for combo in models.iter().copied().combinations_with_replacement(k) {
            let factors: Vec<FpModule> = combo.iter().map(|&i| base[i].clone()).collect();
            let sum = direct_sum(&factors)?.module;
            if !disjunction_holds(&sum, &phi, consequent)? {
                preserved = false;
            }
            structures.push(sum);
        }
    }
    let mut reduced = None;
    'candidates: for (i, psi) in consequent.iter().enumerate() {
        for m in &structures {
            let whole = disjunction_holds(m, &phi, consequent)?;
            let single = disjunction_holds(m, &phi, std::slice::from_ref(psi))?;
            if whole != single {
                continue 'candidates;
            }
        }
        reduced = Some(i);
        break;
    }
    Ok(McKinseyReport { valid_single, preserved_on_corpus: preserved, reduced, structures: structures.len() })
}

#[cfg(test)]
mod tests;
