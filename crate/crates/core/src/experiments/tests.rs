use super::*;
use crate::formula::{normalize, parse_formula};

fn z() -> Ring {
    Ring::integers()
}

fn f(text: &str, ring: &Ring) -> PpMatrixForm {
    normalize(&parse_formula(text, ring, Side::Left, 1).unwrap())
}

#[test]
fn corpus_sizes() {
    assert_eq!(abelian_corpus(8, 2, 2).len(), 3 * (1 + 7 + 12));
    assert_eq!(cyclic_modular_corpus(12).len(), 34);
    let descr: Vec<String> = abelian_corpus(4, 1, 2).iter().map(FpModule::describe).collect();
    assert!(descr.contains(&"Z/2 + Z/4 + Z".to_string()), "{descr:?}");
}

#[test]
fn submodule_counts() {
    let z = z();
    let count = |inv: &[u64]| all_submodules(&abelian_group(&z, Side::Left, inv), 1 << 10).unwrap().len();
    assert_eq!(count(&[12]), 6);
    assert_eq!(count(&[2, 2]), 5);
    assert_eq!(count(&[3, 3]), 6);
    assert_eq!(count(&[2, 4]), 8);
    assert_eq!(count(&[]), 1);
    assert!(matches!(all_submodules(&abelian_group(&z, Side::Left, &[0]), 64), Err(Error::SizeCap { .. })));
    // Over ℤ/2 × ℤ/2 the regular module has four submodules, all ideals.
    let r = crate::ring::tests::product_ring();
    assert_eq!(all_submodules(&FpModule::free(&r, Side::Left, 1).unwrap(), 64).unwrap().len(), 4);
    let ut = crate::ring::tests::upper_triangular();
    let subs = all_submodules(&FpModule::free(&ut, Side::Left, 1).unwrap(), 64).unwrap();
    assert!(subs.iter().all(Subgroup::is_submodule));
}

#[test]
fn torsionfree_axioms_in_products() {
    let z = z();
    let corpus: Vec<FpModule> = [vec![0], vec![2], vec![3], vec![4]].iter().map(|i| abelian_group(&z, Side::Left, i)).collect();
    let report = products_experiment(&torsionfree_axioms(&z, Side::Left, 8), &corpus, 4).unwrap();
    assert!(report.violations.is_empty());
    // rx = 0 → x = 0 holds in ℤ/d iff gcd(r, d) = 1; count multisets of models.
    let multisets = |k: u64| (2..=4u64).map(|s| (1..=s).map(|i| k + i - 1).product::<u64>() / (1..=s).product::<u64>()).sum::<u64>();
    let expected: u64 = (2..=8u64).map(|r| multisets(1 + [2u64, 3, 4].iter().filter(|&&d| num_integer::gcd(r, d) == 1).count() as u64)).sum();
    assert_eq!(report.checked as u64, expected);
    let bad = SymmetricSentence::new(vec![], vec![f("2 | x1", &z), f("3 | x1", &z)]).unwrap();
    assert!(products_experiment(&[bad], &corpus, 2).is_err());
}

#[test]
fn flat_axioms_in_direct_sums() {
    let z6 = Ring::modular(6).unwrap();
    let axioms = flat_axioms(&z6, Side::Left, &FormulaBound::default()).unwrap();
    assert_eq!(axioms.len(), 1 + 6 + 36);
    let corpus = cyclic_modular_corpus(6);
    let report = direct_sum_experiment(&axioms, &corpus, 3).unwrap();
    assert!(report.violations.is_empty());
    assert!(report.checked > 0);
    // ℤ/4 as a ℤ/4-module is flat, ℤ/2 is not.
    let z4 = Ring::modular(4).unwrap();
    let two = abelian_group(&z4, Side::Left, &[2]);
    let ax = flat_axiom(&f("2*x1 = 0", &z4)).unwrap();
    assert!(symmetric_failure(&two, &ax).unwrap().is_some());
    assert!(symmetric_failure(&FpModule::free(&z4, Side::Left, 1).unwrap(), &ax).unwrap().is_none());
}

#[test]
fn symmetric_sentences_in_pure_submodules() {
    let z = z();
    let s = SymmetricSentence::implication(f("2*x1 = 0", &z), f("x1 = 0", &z)).unwrap();
    let z6 = abelian_group(&z, Side::Left, &[6]);
    assert!(symmetric_failure(&z6, &s).unwrap().is_some());
    let report = pure_sub_experiment(&[s.clone()], &abelian_corpus(8, 2, 2), &FormulaBound::default()).unwrap();
    assert!(report.violations.is_empty());
    assert!(report.checked > 0);
    let r = crate::ring::tests::upper_triangular();
    let t = SymmetricSentence::implication(
        PpMatrixForm::annihilated(&r, Side::Left, &r.basis(0)),
        PpMatrixForm::divides(&r, Side::Left, &r.basis(2)),
    )
    .unwrap();
    let corpus: Vec<FpModule> = r.elements().unwrap().iter().map(|e| FpModule::cyclic(&r, Side::Left, e).unwrap()).collect();
    assert!(pure_sub_experiment(&[t], &corpus, &FormulaBound::default()).unwrap().violations.is_empty());
}

#[test]
fn mckinsey_examples() {
    let z = z();
    let corpus = abelian_corpus(6, 0, 1);
    let top = PpMatrixForm::top(&z, Side::Left, 1);
    let r = mckinsey_experiment(&[top.clone()], &[f("2 | x1", &z), f("3 | x1", &z)], &corpus, 2).unwrap();
    assert_eq!(r.valid_single, None);
    assert_eq!(r.reduced, None);
    // ℤ/2 and ℤ/3 are models, ℤ/6 is not.
    assert!(!r.preserved_on_corpus);
    let r = mckinsey_experiment(&[f("4 | x1", &z)], &[f("3 | x1", &z), f("2 | x1", &z)], &corpus, 2).unwrap();
    assert_eq!(r.valid_single, Some(1));
    assert_eq!(r.reduced, Some(1));
    assert!(r.preserved_on_corpus);
    let tf = [f("2*x1 = 0", &z)];
    let r = mckinsey_experiment(&tf, &[f("x1 = 0", &z), f("E y1 (x1 = 2*y1 & x1 = 3*y1)", &z)], &corpus, 3).unwrap();
    assert_eq!(r.valid_single, None);
    assert!(r.preserved_on_corpus);
    assert_eq!(r.reduced, Some(0));
}

#[test]
fn disjunction_is_a_union() {
    let z = z();
    let z6 = abelian_group(&z, Side::Left, &[6]);
    let top = PpMatrixForm::top(&z, Side::Left, 1);
    assert!(!disjunction_holds(&z6, &top, &[f("2 | x1", &z), f("3 | x1", &z)]).unwrap());
    let s = SymmetricSentence::new(vec![top], vec![f("2 | x1", &z), f("3 | x1", &z)]).unwrap();
    assert!(symmetric_failure(&z6, &s).unwrap().is_none());
    assert_eq!(describe_sentence(&s), "{x1 = x1} -> {E y1 (2*y1 = x1); E y1 (3*y1 = x1)}");
}
