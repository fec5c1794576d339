use proptest::prelude::*;

use super::*;
use crate::formula::{normalize, parse_formula};
use crate::module::Subgroup;
use crate::ring::tests::{product_ring, upper_triangular};

fn f(text: &str, ring: &Ring) -> PpMatrixForm {
    normalize(&parse_formula(text, ring, Side::Left, 1).unwrap())
}

fn z() -> Ring {
    Ring::integers()
}

#[test]
fn certificate_examples() {
    let zr = z();
    let d = leq_certificate(&f("4 | x1", &zr), &f("2 | x1", &zr)).unwrap();
    assert!(d.verdict);
    let c = d.certificate().unwrap();
    assert!(c.verify(&f("4 | x1", &zr), &f("2 | x1", &zr)));
    assert_eq!((c.x.get(0, 0), c.y.get(0, 0), c.z.get(0, 0)), (&zr.int(1), &zr.int(0), &zr.int(2)));
    let phi = f("E y (x1 = 3*y) & 5*x1 = 0", &zr);
    let refl = leq_certificate(&phi, &phi).unwrap();
    assert!(refl.certificate().unwrap().verify(&phi, &phi));
    let bottom = PpMatrixForm::bottom(&zr, Side::Left, 1);
    for psi in ["2 | x1", "7*x1 = 0", "x1 = x1", "E y (x1 = 6*y) & 4*x1 = 0"] {
        assert!(leq_certificate(&bottom, &f(psi, &zr)).unwrap().verdict, "{psi}");
    }
}

#[test]
fn semantic_examples() {
    let zr = z();
    let d = leq_semantic(&f("2 | x1", &zr), &f("4 | x1", &zr)).unwrap();
    assert!(!d.verdict);
    let (m, w) = d.countermodel().unwrap();
    assert_eq!(m.describe(), "Z");
    assert!(eval::satisfies(m, &f("2 | x1", &zr), w).unwrap());
    assert!(!eval::satisfies(m, &f("4 | x1", &zr), w).unwrap());
    let d = leq_semantic(&f("2*x1 = 0", &zr), &f("x1 = 0", &zr)).unwrap();
    let (m, w) = d.countermodel().unwrap();
    assert_eq!(m.describe(), "Z/2");
    assert!(!w[0].is_zero());
    assert!(leq_semantic(&f("4 | x1", &zr), &f("2 | x1", &zr)).unwrap().verdict);
}

#[test]
fn equivalence_examples() {
    let zr = z();
    assert!(equivalent(&f("2 | x1 & x1 = x1", &zr), &f("2 | x1", &zr)).unwrap());
    assert!(!equivalent(&f("x1 = 0", &zr), &f("x1 = x1", &zr)).unwrap());
    assert!(equivalent(&f("1 | x1", &zr), &f("x1 = x1", &zr)).unwrap());
}

#[test]
fn mckinsey_examples() {
    let zr = z();
    let top = f("x1 = x1", &zr);
    assert_eq!(mckinsey_reduce(&[top.clone()], &[f("2 | x1", &zr), top.clone()]).unwrap(), Some(1));
    assert_eq!(mckinsey_reduce(&[f("4 | x1", &zr)], &[f("2 | x1", &zr), f("3 | x1", &zr)]).unwrap(), Some(0));
    assert_eq!(mckinsey_reduce(&[top], &[f("2 | x1", &zr), f("3 | x1", &zr)]).unwrap(), None);
    assert!(mckinsey_reduce(&[], &[]).is_err());
}

#[test]
fn mismatched_formulas_are_rejected() {
    let z6 = Ring::modular(6).unwrap();
    assert!(matches!(leq_certificate(&f("2 | x1", &z()), &f("2 | x1", &z6)), Err(Error::Mismatch(_))));
    let two = normalize(&parse_formula("x1 = x2", &z(), Side::Left, 2).unwrap());
    assert!(matches!(leq(&f("2 | x1", &z()), &two), Err(Error::Mismatch(_))));
}

#[test]
fn dedupe_keeps_representatives() {
    let zr = z();
    let list = [f("2 | x1", &zr), f("E y (x1 = -2*y)", &zr), f("x1 = x1", &zr), f("1 | x1", &zr)];
    let d = dedupe(&list).unwrap();
    assert_eq!(d.len(), 2);
    assert_eq!(d[0], list[0]);
}

fn arb_formula(ring: Ring, side: Side, arity: usize, max: usize) -> impl Strategy<Value = PpMatrixForm> {
    let coeffs: Vec<_> = match ring.elements() {
        Some(all) => all,
        None => (-3..=3).map(|v| ring.int(v)).collect(),
    };
    (0usize..=max, 0usize..=max).prop_flat_map(move |(k, l)| {
        let ring = ring.clone();
        proptest::collection::vec(proptest::sample::select(coeffs.clone()), k * (l + arity)).prop_map(move |es| {
            let (mut a, mut b) = (Vec::new(), Vec::new());
            for i in 0..k {
                let row = &es[i * (l + arity)..(i + 1) * (l + arity)];
                a.extend_from_slice(&row[..l]);
                b.extend_from_slice(&row[l..]);
            }
            let a = RingMatrix::new(&ring, k, l, a).unwrap();
            let b = RingMatrix::new(&ring, k, arity, b).unwrap();
            PpMatrixForm::from_left_view(ring.clone(), side, arity, a, b).unwrap()
        })
    })
}

fn rings() -> Vec<Ring> {
    vec![z(), Ring::modular(6).unwrap(), Ring::modular(4).unwrap(), upper_triangular(), product_ring()]
}

fn arb_pair() -> impl Strategy<Value = (PpMatrixForm, PpMatrixForm)> {
    (0usize..5, prop_oneof![Just(Side::Left), Just(Side::Right)], 1usize..=2).prop_flat_map(|(r, side, arity)| {
        let ring = rings()[r].clone();
        (arb_formula(ring.clone(), side, arity, 2), arb_formula(ring, side, arity, 2))
    })
}

fn arb_triple() -> impl Strategy<Value = (PpMatrixForm, PpMatrixForm, PpMatrixForm)> {
    (0usize..3, prop_oneof![Just(Side::Left), Just(Side::Right)]).prop_flat_map(|(r, side)| {
        let ring = rings()[r].clone();
        (
            arb_formula(ring.clone(), side, 1, 2),
            arb_formula(ring.clone(), side, 1, 2),
            arb_formula(ring, side, 1, 2),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn procedures_agree((phi, psi) in arb_pair()) {
        let a = leq_certificate(&phi, &psi).unwrap();
        let b = leq_semantic(&phi, &psi).unwrap();
        prop_assert_eq!(a.verdict, b.verdict);
        if let Some(c) = a.certificate() {
            prop_assert!(c.verify(&phi, &psi));
        }
        if let Some((m, w)) = b.countermodel() {
            prop_assert!(eval::satisfies(m, &phi, w).unwrap());
            prop_assert!(!eval::satisfies(m, &psi, w).unwrap());
        }
    }

    #[test]
    fn duality_reverses_order((phi, psi) in arb_pair()) {
        let fwd = leq_certificate(&phi, &psi).unwrap().verdict;
        let back = leq_certificate(&psi.dual(), &phi.dual()).unwrap().verdict;
        prop_assert_eq!(fwd, back);
        prop_assert!(equivalent(&phi.dual().dual(), &phi).unwrap());
    }

    #[test]
    fn order_axioms((p, q, r) in arb_triple()) {
        prop_assert!(leq_certificate(&p, &p).unwrap().verdict);
        if leq_certificate(&p, &q).unwrap().verdict && leq_certificate(&q, &r).unwrap().verdict {
            prop_assert!(leq_certificate(&p, &r).unwrap().verdict);
        }
        let top = PpMatrixForm::top(p.ring(), p.side(), 1);
        let bottom = PpMatrixForm::bottom(p.ring(), p.side(), 1);
        prop_assert!(leq_certificate(&p, &top).unwrap().verdict);
        prop_assert!(leq_certificate(&bottom, &p).unwrap().verdict);
        // meet and join are the lattice operations.
        let meet = p.meet(&q).unwrap();
        let join = p.join(&q).unwrap();
        prop_assert!(leq_certificate(&meet, &p).unwrap().verdict && leq_certificate(&meet, &q).unwrap().verdict);
        prop_assert!(leq_certificate(&p, &join).unwrap().verdict && leq_certificate(&q, &join).unwrap().verdict);
        if leq_certificate(&r, &p).unwrap().verdict && leq_certificate(&r, &q).unwrap().verdict {
            prop_assert!(leq_certificate(&r, &meet).unwrap().verdict);
        }
        if leq_certificate(&p, &r).unwrap().verdict && leq_certificate(&q, &r).unwrap().verdict {
            prop_assert!(leq_certificate(&join, &r).unwrap().verdict);
        }
    }

    #[test]
    fn valid_implications_hold_in_modules((phi, psi) in arb_pair()) {
        prop_assume!(phi.arity() == 1);
        let ring = phi.ring().clone();
        let module = match ring.elements() {
            Some(_) => FpModule::free(&ring, phi.side(), 1).unwrap(),
            None => FpModule::new(&ring, phi.side(), 2, RingMatrix::from_ints(&ring, &[&[0, 12]])).unwrap(),
        };
        let valid = leq_certificate(&phi, &psi).unwrap().verdict;
        let inside: Subgroup = eval::solution_subgroup(&module, &phi).unwrap();
        let holds = inside.is_subset(&eval::solution_subgroup(&module, &psi).unwrap()).unwrap();
        if valid {
            prop_assert!(holds);
        }
    }

    #[test]
    fn free_realization_generates_the_type((phi, psi) in arb_pair()) {
        let (m, b) = crate::module::free_realization(&phi).unwrap();
        prop_assert!(eval::satisfies(&m, &phi, &b).unwrap());
        prop_assert_eq!(eval::satisfies(&m, &psi, &b).unwrap(), leq_certificate(&phi, &psi).unwrap().verdict);
    }
}
