use super::*;
use crate::ring::tests::{product_ring, upper_triangular};

fn z() -> Ring {
    Ring::integers()
}

fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

fn zmod(ring: &Ring, side: Side, rels: &[&[i64]], gens: usize) -> FpModule {
    let rel = if rels.is_empty() { RingMatrix::zeros(ring, 0, gens) } else { RingMatrix::from_ints(ring, rels) };
    FpModule::new(ring, side, gens, rel).unwrap()
}

#[test]
fn constructor_examples() {
    let m = zmod(&z(), Side::Left, &[&[4]], 1);
    assert_eq!(m.invariants(), ints(&[4]).as_slice());
    let m = zmod(&z(), Side::Left, &[&[2, -1]], 2);
    assert_eq!(m.invariants(), ints(&[0]).as_slice());
    // g₂ = 2·g₁ and g₁ generates.
    let g1 = m.generator(0);
    assert_eq!(m.generator(1), m.scale_int(&Int::from(2), &g1));
    assert_eq!(m.order(&g1), Int::zero());
    let m = FpModule::free(&z(), Side::Left, 1).unwrap();
    assert_eq!(m.describe(), "Z");
}

#[test]
fn modular_ring_modules() {
    let z6 = Ring::modular(6).unwrap();
    let m = FpModule::free(&z6, Side::Left, 1).unwrap();
    assert_eq!(m.describe(), "Z/6");
    let m = zmod(&z6, Side::Left, &[&[2]], 1);
    assert_eq!(m.describe(), "Z/2");
    let m = zmod(&z6, Side::Left, &[&[4]], 1);
    assert_eq!(m.describe(), "Z/2");
    let m = zmod(&z6, Side::Right, &[&[3]], 1);
    assert_eq!(m.describe(), "Z/3");
}

#[test]
fn direct_sum_examples() {
    let z2 = zmod(&z(), Side::Left, &[&[2]], 1);
    let z3 = zmod(&z(), Side::Left, &[&[3]], 1);
    let s = direct_sum(&[z2.clone(), z3.clone()]).unwrap();
    assert_eq!(s.module.describe(), "Z/6");
    let zero = FpModule::zero_module(&z(), Side::Left);
    assert_eq!(direct_sum(&[z2.clone(), zero]).unwrap().module.describe(), "Z/2");
    assert_eq!(direct_sum(&[z2.clone(), z2.clone()]).unwrap().module.describe(), "Z/2 + Z/2");
    let a = s.injections[0].apply(&z2.generator(0)).unwrap();
    let b = s.injections[1].apply(&z3.generator(0)).unwrap();
    let ab = s.module.add(&a, &b);
    assert_eq!(s.module.order(&ab), Int::from(6));
    assert_eq!(s.projections[0].apply(&ab).unwrap(), z2.generator(0));
    assert_eq!(s.projections[1].apply(&ab).unwrap(), z3.generator(0));
    let z6r = Ring::modular(6).unwrap();
    let other = FpModule::free(&z6r, Side::Left, 1).unwrap();
    assert!(matches!(direct_sum(&[z2, other]), Err(Error::Mismatch(_))));
}

#[test]
fn quotient_examples() {
    let m = zmod(&z(), Side::Left, &[&[4]], 1);
    let two = m.combination_ints(&[2]).unwrap();
    let s = Subgroup::from_elems(&m, &[two]);
    let (q, proj) = m.quotient(&s).unwrap();
    assert_eq!(q.describe(), "Z/2");
    assert_eq!(proj.apply(&m.combination_ints(&[3]).unwrap()).unwrap(), q.generator(0));
    assert!(m.quotient(&m.whole()).unwrap().0.is_zero_module());
    assert_eq!(m.quotient(&m.trivial()).unwrap().0.describe(), "Z/4");
}

#[test]
fn quotient_rejects_non_submodule() {
    // In R² over upper triangular matrices the subgroup generated by E12·g
    // is a submodule, while the one generated by E22·g is not (E12·E22 = E12).
    let r = upper_triangular();
    let m = FpModule::free(&r, Side::Left, 1).unwrap();
    let e22 = m.act(&r.basis(2), &m.generator(0));
    let s = Subgroup::from_elems(&m, &[e22]);
    assert!(!s.is_submodule());
    assert!(matches!(m.quotient(&s), Err(Error::NotSubmodule)));
    let e12 = m.act(&r.basis(1), &m.generator(0));
    let s = Subgroup::from_elems(&m, &[e12]);
    assert!(s.is_submodule());
    assert_eq!(m.quotient(&s).unwrap().0.size(), Some(Int::from(4)));
}

#[test]
fn free_realization_examples() {
    let zr = z();
    let f = PpMatrixForm::divides(&zr, Side::Left, &zr.int(2));
    let (m, b) = free_realization(&f).unwrap();
    assert_eq!(m.describe(), "Z");
    // b is twice a generator of ℤ.
    let a = m.generator(0);
    assert_eq!(b[0], m.scale_int(&Int::from(2), &a));
    let f = PpMatrixForm::annihilated(&zr, Side::Left, &zr.int(2));
    let (m, b) = free_realization(&f).unwrap();
    assert_eq!(m.describe(), "Z/2");
    assert!(!b[0].is_zero());
    let (m, b) = free_realization(&PpMatrixForm::top(&zr, Side::Left, 1)).unwrap();
    assert_eq!(m.describe(), "Z");
    assert_eq!(m.order(&b[0]), Int::zero());
    assert!(Subgroup::from_elems(&m, &b).is_whole());
}

#[test]
fn tensor_examples() {
    let zr = z();
    let t = tensor_product(&zmod(&zr, Side::Right, &[&[2]], 1), &zmod(&zr, Side::Left, &[&[3]], 1)).unwrap();
    assert!(t.module.is_zero_module());
    let a = zmod(&zr, Side::Right, &[&[4]], 1);
    let b = zmod(&zr, Side::Left, &[&[6]], 1);
    let t = tensor_product(&a, &b).unwrap();
    assert_eq!(t.module.describe(), "Z/2");
    let x = t.simple_tensor(&[a.generator(0)], &[b.generator(0)]).unwrap();
    assert!(!x.is_zero());
    let z4 = Ring::modular(4).unwrap();
    let t = tensor_product(&FpModule::free(&z4, Side::Right, 1).unwrap(), &FpModule::free(&z4, Side::Left, 1).unwrap())
        .unwrap();
    assert_eq!(t.module.describe(), "Z/4");
    assert!(matches!(tensor_product(&b, &a), Err(Error::Mismatch(_))));
}

#[test]
fn tensor_over_noncommutative_ring() {
    // R_R ⊗ M ≅ M for a simple module over the upper triangular ring.
    let r = upper_triangular();
    let m = zmod_table(&r);
    let rr = FpModule::free(&r, Side::Right, 1).unwrap();
    let t = tensor_product(&rr, &m).unwrap();
    assert_eq!(t.module.size(), m.size());
}

fn zmod_table(r: &Ring) -> FpModule {
    // ⟨g | E22·g = 0, E12·g = 0⟩ is R·E11 ≅ the simple module ℤ/2.
    let rel = RingMatrix::new(r, 2, 1, vec![r.basis(2), r.basis(1)]).unwrap();
    FpModule::new(r, Side::Left, 1, rel).unwrap()
}

#[test]
fn apply_hom_examples() {
    let zr = z();
    let z4 = zmod(&zr, Side::Left, &[&[4]], 1);
    let z2 = zmod(&zr, Side::Left, &[&[2]], 1);
    let x = z4.combination_ints(&[3]).unwrap();
    assert_eq!(apply_hom(vec![z2.generator(0)], &z4, &z2, &x).unwrap(), z2.generator(0));
    assert_eq!(Hom::identity(&z4).apply(&x).unwrap(), x);
    let zz = FpModule::free(&zr, Side::Left, 1).unwrap();
    let six = zz.combination_ints(&[6]).unwrap();
    assert_eq!(apply_hom(vec![z4.generator(0)], &zz, &z4, &six).unwrap(), z4.combination_ints(&[2]).unwrap());
    assert!(matches!(Hom::new(&z2, &zz, vec![zz.generator(0)]), Err(Error::NotHomomorphism(_))));
}

#[test]
fn hom_kernel_and_image() {
    let zr = z();
    let zz = FpModule::free(&zr, Side::Left, 1).unwrap();
    let z4 = zmod(&zr, Side::Left, &[&[4]], 1);
    let f = Hom::new(&zz, &z4, vec![z4.combination_ints(&[2]).unwrap()]).unwrap();
    let k = f.kernel();
    assert!(k.contains(&[zz.combination_ints(&[2]).unwrap()]));
    assert!(!k.contains(&[zz.combination_ints(&[1]).unwrap()]));
    assert_eq!(f.image().size(), Some(Int::from(2)));
    assert!(!f.is_surjective());
    assert!(!f.is_injective());
}

#[test]
fn subgroup_relations() {
    let zr = z();
    let m = zmod(&zr, Side::Left, &[&[4]], 1);
    let s = Subgroup::from_elems(&m, &[m.combination_ints(&[2]).unwrap()]);
    assert_eq!(s.relate(&s.clone()).unwrap(), SubgroupRelation::Equal);
    let zz = FpModule::free(&zr, Side::Left, 1).unwrap();
    let two = Subgroup::from_elems(&zz, &[zz.combination_ints(&[2]).unwrap()]);
    let six = Subgroup::from_elems(&zz, &[zz.combination_ints(&[6]).unwrap()]);
    assert_eq!(six.relate(&two).unwrap(), SubgroupRelation::Subset);
    assert_eq!(two.sum(&six).unwrap(), two);
    assert_eq!(two.intersection(&six).unwrap(), six);
    let z6 = zmod(&zr, Side::Left, &[&[6]], 1);
    let a = Subgroup::from_elems(&z6, &[z6.combination_ints(&[3]).unwrap()]);
    let b = Subgroup::from_elems(&z6, &[z6.combination_ints(&[2]).unwrap()]);
    assert_eq!(a.relate(&b).unwrap(), SubgroupRelation::Incomparable);
    assert!(a.sum(&b).unwrap().is_whole());
    assert!(a.intersection(&b).unwrap().is_trivial());
    assert_eq!(a.size(), Some(Int::from(2)));
    assert_eq!(two.size(), None);
}

#[test]
fn submodule_presentation() {
    let zr = z();
    let m = zmod(&zr, Side::Left, &[&[12]], 1);
    let s = Subgroup::from_elems(&m, &[m.combination_ints(&[3]).unwrap()]);
    let (sub, incl) = m.submodule(&s).unwrap();
    assert_eq!(sub.describe(), "Z/4");
    assert!(incl.is_injective());
    assert_eq!(incl.image(), s);
    let r = upper_triangular();
    let f = FpModule::free(&r, Side::Left, 1).unwrap();
    let s = Subgroup::from_elems(&f, &[f.act(&r.basis(1), &f.generator(0))]);
    let (sub, incl) = f.submodule(&s).unwrap();
    assert_eq!(sub.size(), Some(Int::from(2)));
    assert!(incl.is_injective());
}

/// Brute-force module axioms on the canonical form.
fn check_axioms(m: &FpModule) {
    let elems = m.elements(64).unwrap();
    let ring = m.ring();
    let scalars = ring.elements().unwrap();
    assert_eq!(m.act(&ring.one(), &elems[elems.len() - 1]), elems[elems.len() - 1]);
    for x in &elems {
        assert_eq!(m.act(&ring.one(), x), *x);
        for y in &elems {
            assert_eq!(m.add(x, y), m.add(y, x));
            for r in &scalars {
                assert_eq!(m.act(r, &m.add(x, y)), m.add(&m.act(r, x), &m.act(r, y)));
            }
        }
        for r in &scalars {
            for s in &scalars {
                assert_eq!(m.act(&ring.add(r, s), x), m.add(&m.act(r, x), &m.act(s, x)));
                // Left: (rs)·x = r·(s·x). Right: x·(rs) = (x·r)·s.
                let lhs = m.act(&ring.mul(r, s), x);
                let rhs = match m.side() {
                    Side::Left => m.act(r, &m.act(s, x)),
                    Side::Right => m.act(s, &m.act(r, x)),
                };
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn canonical_forms_satisfy_module_axioms() {
    let r = upper_triangular();
    let p = product_ring();
    let z6 = Ring::modular(6).unwrap();
    let modules = [
        FpModule::free(&r, Side::Left, 1).unwrap(),
        FpModule::free(&r, Side::Right, 1).unwrap(),
        zmod_table(&r),
        FpModule::new(&r, Side::Right, 1, RingMatrix::new(&r, 1, 1, vec![r.basis(0)]).unwrap()).unwrap(),
        FpModule::free(&p, Side::Left, 2).unwrap(),
        zmod(&z6, Side::Left, &[&[2, 3]], 2),
    ];
    for m in &modules {
        check_axioms(m);
    }
}

#[test]
fn table_cap_is_enforced() {
    let r = upper_triangular();
    assert!(matches!(FpModule::with_cap(&r, Side::Left, 2, RingMatrix::zeros(&r, 0, 2), 63), Err(Error::SizeCap { .. })));
    assert!(FpModule::with_cap(&r, Side::Left, 2, RingMatrix::zeros(&r, 0, 2), 64).is_ok());
}

#[test]
fn express_round_trips() {
    let r = upper_triangular();
    let m = FpModule::free(&r, Side::Right, 2).unwrap();
    for x in m.elements(64).unwrap() {
        let c = m.express(&x);
        assert_eq!(m.combination(&c).unwrap(), x);
    }
}
