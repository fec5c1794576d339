//! Finitely presented modules in canonical additive form.
//!
//! A module over `R` is presented by generators `g₁ … g_n` and relation rows
//! `Σⱼ Gᵢⱼ·gⱼ = 0`. Right modules are handled as left modules over the
//! opposite ring, so the relation matrix is read the same way on both sides.
//!
//! Internally the module is an abelian group generated by the products
//! `e_b·gⱼ` of ring basis elements with generators. Its Smith form gives
//! `⊕ ℤ/dᵢ ⊕ ℤʳ`, the canonical coordinates in which elements are stored.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::formula::{PpMatrixForm, Side};
use crate::linalg::{self, Int, IntMatrix};
use crate::matrix::RingMatrix;
use crate::ring::{Ring, RingElem, RingKind};

/// Default limit on the number of elements of a module over a table ring.
pub const DEFAULT_TABLE_CAP: u64 = 4096;

/// An element of a module, in reduced canonical coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModElem {
    coords: Vec<Int>,
}

impl ModElem {
    pub fn coords(&self) -> &[Int] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl fmt::Debug for ModElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", c.join(","))
    }
}

#[derive(Debug)]
struct ModuleData {
    ring: Ring,
    side: Side,
    acting: Ring,
    gens: usize,
    relations: RingMatrix,
    invariants: Vec<Int>,
    /// `n × t`: group coordinates over the `e_b·gⱼ` to canonical ones.
    to_canon: IntMatrix,
    /// `t × n`: canonical basis vectors written over the `e_b·gⱼ`.
    from_canon: IntMatrix,
    /// For each basis element `e_c` of the acting ring, the `t × t` matrix
    /// of `m ↦ e_c·m` acting on canonical row vectors.
    action: Vec<IntMatrix>,
}

/// A finitely presented module. Cloning is cheap.
#[derive(Clone)]
pub struct FpModule(Arc<ModuleData>);

impl fmt::Debug for FpModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpModule({} {:?}, {})", self.0.ring, self.0.side, self.describe())
    }
}

impl PartialEq for FpModule {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.ring == other.0.ring
                && self.0.side == other.0.side
                && self.0.gens == other.0.gens
                && self.0.relations == other.0.relations)
    }
}

impl FpModule {
    /// Builds `⟨g₁ … g_n | G⟩` with the default size cap for table rings.
    pub fn new(ring: &Ring, side: Side, gens: usize, relations: RingMatrix) -> Result<FpModule> {
        Self::with_cap(ring, side, gens, relations, DEFAULT_TABLE_CAP)
    }

    /// As [`new`](Self::new), failing with [`Error::SizeCap`] when a module
    /// over a table ring has more than `cap` elements.
    pub fn with_cap(ring: &Ring, side: Side, gens: usize, relations: RingMatrix, cap: u64) -> Result<FpModule> {
        if relations.cols() != gens {
            return Err(Error::Dimension(format!(
                "relation rows have {} entries for {gens} generators",
                relations.cols()
            )));
        }
        for e in relations.entries() {
            ring.check(e)?;
        }
        let acting = side.acting_ring(ring);
        let k = acting.dim();
        let n = gens * k;
        let idx = |j: usize, b: usize| j * k + b;
        let mut rel_rows: Vec<Vec<Int>> = Vec::new();
        for j in 0..gens {
            for (b, d) in acting.orders().iter().enumerate() {
                if !d.is_zero() {
                    let mut row = vec![Int::zero(); n];
                    row[idx(j, b)] = d.clone();
                    rel_rows.push(row);
                }
            }
        }
        for i in 0..relations.rows() {
            for c in 0..k {
                let ec = acting.basis(c);
                let mut row = vec![Int::zero(); n];
                for j in 0..gens {
                    let p = acting.mul(&ec, relations.get(i, j));
                    for (b, v) in p.coords().iter().enumerate() {
                        row[idx(j, b)] += v;
                    }
                }
                if row.iter().any(|v| !v.is_zero()) {
                    rel_rows.push(row);
                }
            }
        }
        let rel = IntMatrix::from_rows(rel_rows, n);
        let snf = linalg::smith_normal_form(&rel);
        let diag = snf.diagonal();
        let mut kept = Vec::new();
        let mut invariants = Vec::new();
        for i in 0..n {
            let d = diag.get(i).cloned().unwrap_or_else(Int::zero);
            if !d.is_one() {
                kept.push(i);
                invariants.push(d.abs());
            }
        }
        if matches!(ring.kind(), RingKind::Table) {
            let size: Int = invariants.iter().product();
            if invariants.iter().any(Zero::is_zero) || size > Int::from(cap) {
                return Err(Error::SizeCap { size: size.to_string(), cap });
            }
        }
        let t = kept.len();
        let mut to_canon = IntMatrix::zeros(n, t);
        let mut from_canon = IntMatrix::zeros(t, n);
        for (p, &i) in kept.iter().enumerate() {
            for x in 0..n {
                to_canon[(x, p)] = snf.v[(x, i)].clone();
                from_canon[(p, x)] = snf.v_inv[(i, x)].clone();
            }
        }
        let mut action = Vec::with_capacity(k);
        for c in 0..k {
            let ec = acting.basis(c);
            let mut act = IntMatrix::zeros(n, n);
            for j in 0..gens {
                for b in 0..k {
                    let p = acting.mul(&ec, &acting.basis(b));
                    for (a, v) in p.coords().iter().enumerate() {
                        act[(idx(j, b), idx(j, a))] = v.clone();
                    }
                }
            }
            let mut rho = from_canon.mul(&act).mul(&to_canon);
            for p in 0..t {
                for q in 0..t {
                    if !invariants[q].is_zero() {
                        rho[(p, q)] = rho[(p, q)].mod_floor(&invariants[q]);
                    }
                }
            }
            action.push(rho);
        }
        Ok(FpModule(Arc::new(ModuleData {
            ring: ring.clone(),
            side,
            acting,
            gens,
            relations,
            invariants,
            to_canon,
            from_canon,
            action,
        })))
    }

    /// Free module of rank `n`.
    pub fn free(ring: &Ring, side: Side, n: usize) -> Result<FpModule> {
        Self::new(ring, side, n, RingMatrix::zeros(ring, 0, n))
    }

    /// The zero module.
    pub fn zero_module(ring: &Ring, side: Side) -> FpModule {
        Self::free(ring, side, 0).expect("zero module")
    }

    /// `R/(r)` on the given side: one generator `g` with `r·g = 0`
    /// (`g·r = 0` on the right).
    pub fn cyclic(ring: &Ring, side: Side, r: &RingElem) -> Result<FpModule> {
        Self::new(ring, side, 1, RingMatrix::new(ring, 1, 1, vec![r.clone()])?)
    }

    pub fn ring(&self) -> &Ring {
        &self.0.ring
    }

    pub fn side(&self) -> Side {
        self.0.side
    }

    /// The ring whose left modules these are (`R` or `Rᵒᵖ`).
    pub fn acting_ring(&self) -> &Ring {
        &self.0.acting
    }

    pub fn generator_count(&self) -> usize {
        self.0.gens
    }

    pub fn relations(&self) -> &RingMatrix {
        &self.0.relations
    }

    /// Orders of the canonical cyclic summands (0 for ℤ), in Smith order:
    /// finite factors form a divisibility chain, infinite ones come last.
    pub fn invariants(&self) -> &[Int] {
        &self.0.invariants
    }

    /// Number of canonical coordinates.
    pub fn width(&self) -> usize {
        self.0.invariants.len()
    }

    pub fn is_zero_module(&self) -> bool {
        self.0.invariants.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.0.invariants.iter().all(|d| !d.is_zero())
    }

    pub fn size(&self) -> Option<Int> {
        self.is_finite().then(|| self.0.invariants.iter().product())
    }

    /// Number of infinite cyclic summands.
    pub fn free_rank(&self) -> usize {
        self.0.invariants.iter().filter(|d| d.is_zero()).count()
    }

    /// Finite invariant factors (the torsion subgroup's structure).
    pub fn torsion_invariants(&self) -> Vec<Int> {
        self.0.invariants.iter().filter(|d| !d.is_zero()).cloned().collect()
    }

    /// Exponent of the torsion subgroup (1 if torsion-free).
    pub fn torsion_exponent(&self) -> Int {
        linalg::lcm_all(self.0.invariants.iter().filter(|d| !d.is_zero()))
    }

    /// Structure as an abelian group, e.g. `Z/2 + Z/6 + Z`.
    pub fn describe(&self) -> String {
        if self.is_zero_module() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .0
            .invariants
            .iter()
            .map(|d| if d.is_zero() { "Z".to_string() } else { format!("Z/{d}") })
            .collect();
        parts.join(" + ")
    }

    fn reduce(&self, mut coords: Vec<Int>) -> ModElem {
        linalg::reduce_mod(&self.0.invariants, &mut coords);
        ModElem { coords }
    }

    /// Element from canonical coordinates (reduced on the way in).
    pub fn elem(&self, coords: Vec<Int>) -> Result<ModElem> {
        if coords.len() != self.width() {
            return Err(Error::CoordinateLength { expected: self.width(), got: coords.len() });
        }
        Ok(self.reduce(coords))
    }

    pub fn elem_i64(&self, coords: &[i64]) -> Result<ModElem> {
        self.elem(coords.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn check(&self, m: &ModElem) -> Result<()> {
        if m.coords.len() != self.width() {
            return Err(Error::CoordinateLength { expected: self.width(), got: m.coords.len() });
        }
        Ok(())
    }

    pub fn zero(&self) -> ModElem {
        ModElem { coords: vec![Int::zero(); self.width()] }
    }

    /// Element from coordinates over the group generators `e_b·gⱼ`.
    fn from_group_coords(&self, x: &[Int]) -> ModElem {
        self.reduce(self.0.to_canon.apply_row(x))
    }

    /// `Σⱼ rⱼ·gⱼ` (`Σ gⱼ·rⱼ` on the right).
    pub fn combination(&self, coeffs: &[RingElem]) -> Result<ModElem> {
        if coeffs.len() != self.0.gens {
            return Err(Error::CoordinateLength { expected: self.0.gens, got: coeffs.len() });
        }
        let k = self.0.acting.dim();
        let mut x = vec![Int::zero(); self.0.gens * k];
        for (j, r) in coeffs.iter().enumerate() {
            self.0.ring.check(r)?;
            for (b, v) in r.coords().iter().enumerate() {
                x[j * k + b] = v.clone();
            }
        }
        Ok(self.from_group_coords(&x))
    }

    /// Element from integer multiples of the generators.
    pub fn combination_ints(&self, coeffs: &[i64]) -> Result<ModElem> {
        let c: Vec<RingElem> = coeffs.iter().map(|&v| self.0.ring.int(v)).collect();
        self.combination(&c)
    }

    /// The `j`-th generator.
    pub fn generator(&self, j: usize) -> ModElem {
        let mut c = vec![self.0.ring.zero(); self.0.gens];
        c[j] = self.0.ring.one();
        self.combination(&c).expect("generator index in range")
    }

    /// Writes `m` as `Σⱼ rⱼ·gⱼ`.
    pub fn express(&self, m: &ModElem) -> Vec<RingElem> {
        let x = self.0.from_canon.apply_row(&m.coords);
        let k = self.0.acting.dim();
        (0..self.0.gens).map(|j| self.0.ring.reduce(x[j * k..(j + 1) * k].to_vec())).collect()
    }

    pub fn add(&self, a: &ModElem, b: &ModElem) -> ModElem {
        self.reduce(a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &ModElem, b: &ModElem) -> ModElem {
        self.reduce(a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &ModElem) -> ModElem {
        self.reduce(a.coords.iter().map(|x| -x).collect())
    }

    pub fn scale_int(&self, n: &Int, a: &ModElem) -> ModElem {
        self.reduce(a.coords.iter().map(|x| n * x).collect())
    }

    /// The integer matrix of `m ↦ r·m` (`m ↦ m·r` on the right) on canonical
    /// row vectors.
    pub fn action_matrix(&self, r: &RingElem) -> IntMatrix {
        let t = self.width();
        let mut out = IntMatrix::zeros(t, t);
        for (c, rc) in r.coords().iter().enumerate() {
            if rc.is_zero() {
                continue;
            }
            for p in 0..t {
                for q in 0..t {
                    out[(p, q)] += rc * &self.0.action[c][(p, q)];
                }
            }
        }
        out
    }

    /// `r·m` for left modules, `m·r` for right modules.
    pub fn act(&self, r: &RingElem, m: &ModElem) -> ModElem {
        let mut out = vec![Int::zero(); self.width()];
        for (c, rc) in r.coords().iter().enumerate() {
            if rc.is_zero() {
                continue;
            }
            let img = self.0.action[c].apply_row(&m.coords);
            for (o, v) in out.iter_mut().zip(img) {
                *o += rc * v;
            }
        }
        self.reduce(out)
    }

    /// Every element, in lexicographic coordinate order. `None` for
    /// infinite modules or more than `limit` elements.
    pub fn elements(&self, limit: u64) -> Option<Vec<ModElem>> {
        let size = self.size()?;
        if size > Int::from(limit) {
            return None;
        }
        let mut out = vec![self.zero()];
        for (i, d) in self.0.invariants.iter().enumerate() {
            let d = d.to_u64()?;
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

    /// Additive order of `m` (0 if infinite).
    pub fn order(&self, m: &ModElem) -> Int {
        let mut o = Int::one();
        for (c, d) in m.coords.iter().zip(&self.0.invariants) {
            if c.is_zero() {
                continue;
            }
            if d.is_zero() {
                return Int::zero();
            }
            o = o.lcm(&(d / c.gcd(d)));
        }
        o
    }

    fn check_same(&self, other: &FpModule) -> Result<()> {
        if self.0.ring != other.0.ring {
            return Err(Error::Mismatch(format!("rings differ: {} vs {}", self.0.ring, other.0.ring)));
        }
        if self.0.side != other.0.side {
            return Err(Error::Mismatch("modules are on different sides".into()));
        }
        Ok(())
    }

    /// The whole module as a subgroup of itself.
    pub fn whole(&self) -> Subgroup {
        let gens = (0..self.width())
            .map(|i| {
                let mut v = vec![Int::zero(); self.width()];
                v[i] = Int::one();
                v
            })
            .collect::<Vec<_>>();
        Subgroup::from_flat(self, 1, &gens)
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup::from_flat(self, 1, &[])
    }

    /// Quotient by a submodule, with the projection.
    pub fn quotient(&self, s: &Subgroup) -> Result<(FpModule, Hom)> {
        if s.module() != self || s.power() != 1 {
            return Err(Error::Mismatch("subgroup does not lie in this module".into()));
        }
        if !s.is_submodule() {
            return Err(Error::NotSubmodule);
        }
        let ring = &self.0.ring;
        let mut rel = self.0.relations.clone();
        for g in s.generators() {
            let row = self.express(&g[0]);
            rel = rel.vstack(&RingMatrix::new(ring, 1, self.0.gens, row)?);
        }
        let q = FpModule::new(ring, self.0.side, self.0.gens, rel)?;
        let images = (0..self.0.gens).map(|j| q.generator(j)).collect();
        let proj = Hom::new(self, &q, images)?;
        Ok((q, proj))
    }

    /// A submodule as a module in its own right, with the inclusion.
    pub fn submodule(&self, s: &Subgroup) -> Result<(FpModule, Hom)> {
        if s.module() != self || s.power() != 1 {
            return Err(Error::Mismatch("subgroup does not lie in this module".into()));
        }
        if !s.is_submodule() {
            return Err(Error::NotSubmodule);
        }
        let ring = &self.0.ring;
        let gens: Vec<ModElem> = s.generators().into_iter().map(|mut g| g.remove(0)).collect();
        let n = gens.len();
        let t = self.width();
        let mut rows: Vec<Vec<RingElem>> = Vec::new();
        // Integer relations among the generators.
        let mut h = IntMatrix::zeros(t, n);
        for (j, g) in gens.iter().enumerate() {
            for p in 0..t {
                h[(p, j)] = g.coords[p].clone();
            }
        }
        let sol = linalg::solve_congruences(&h, &vec![Int::zero(); t], &self.0.invariants);
        for lam in sol.homogeneous {
            rows.push(lam.iter().map(|v| ring.from_int(v)).collect());
        }
        // Ring action on each generator, rewritten over the generators.
        let basis = self.0.acting.dim();
        for (i, g) in gens.iter().enumerate() {
            for c in 0..basis {
                let ec = self.0.acting.basis(c);
                let img = self.act(&ec, g);
                let mu = s.integer_coordinates(&img).ok_or_else(|| Error::Internal("closure lost".into()))?;
                let mut row: Vec<RingElem> = mu.iter().map(|v| ring.neg(&ring.from_int(v))).collect();
                row[i] = ring.add(&row[i], &ec);
                rows.push(row);
            }
        }
        let entries: Vec<RingElem> = rows.concat();
        let rel = RingMatrix::new(ring, rows.len(), n, entries)?;
        let sub = FpModule::new(ring, self.0.side, n, rel)?;
        let incl = Hom::new(&sub, self, gens)?;
        Ok((sub, incl))
    }
}

/// `⊕ Mᵢ` with its injections and projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: FpModule,
    pub injections: Vec<Hom>,
    pub projections: Vec<Hom>,
}

pub fn direct_sum(ms: &[FpModule]) -> Result<DirectSum> {
    let first = ms.first().ok_or_else(|| Error::Mismatch("empty direct sum".into()))?;
    for m in ms {
        first.check_same(m)?;
    }
    let ring = first.ring();
    let mut rel = RingMatrix::zeros(ring, 0, 0);
    for m in ms {
        rel = rel.block_diag(ring, m.relations());
    }
    let total: usize = ms.iter().map(FpModule::generator_count).sum();
    let sum = FpModule::new(ring, first.side(), total, rel)?;
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    let mut offset = 0;
    for m in ms {
        let n = m.generator_count();
        let inj = (0..n).map(|j| sum.generator(offset + j)).collect();
        injections.push(Hom::new(m, &sum, inj)?);
        let proj = (0..total)
            .map(|j| if (offset..offset + n).contains(&j) { m.generator(j - offset) } else { m.zero() })
            .collect();
        projections.push(Hom::new(&sum, m, proj)?);
        offset += n;
    }
    Ok(DirectSum { module: sum, injections, projections })
}

/// The module `⟨ȳ, x̄ | A·ȳ = B·x̄⟩` of a formula, with the tuple `x̄`,
/// which satisfies the formula and generates its pp type.
pub fn free_realization(phi: &PpMatrixForm) -> Result<(FpModule, Vec<ModElem>)> {
    free_realization_capped(phi, DEFAULT_TABLE_CAP)
}

pub fn free_realization_capped(phi: &PpMatrixForm, cap: u64) -> Result<(FpModule, Vec<ModElem>)> {
    let v = phi.left_view();
    let ring = phi.ring();
    let l = v.a.cols();
    let m = phi.arity();
    let rel = v.a.hstack(&v.b.neg(&v.ring));
    let module = FpModule::with_cap(ring, phi.side(), l + m, rel, cap)?;
    let b = (l..l + m).map(|j| module.generator(j)).collect();
    Ok((module, b))
}

/// A homomorphism given by generator images.
#[derive(Clone, Debug)]
pub struct Hom {
    source: FpModule,
    target: FpModule,
    images: Vec<ModElem>,
    /// `t_source × t_target` matrix on canonical row vectors.
    matrix: IntMatrix,
}

impl Hom {
    /// Checks that the images satisfy the source relations.
    pub fn new(source: &FpModule, target: &FpModule, images: Vec<ModElem>) -> Result<Hom> {
        source.check_same(target)?;
        if images.len() != source.generator_count() {
            return Err(Error::NotHomomorphism(format!(
                "{} images for {} generators",
                images.len(),
                source.generator_count()
            )));
        }
        for img in &images {
            target.check(img)?;
        }
        let rel = source.relations();
        for i in 0..rel.rows() {
            let mut acc = target.zero();
            for (j, img) in images.iter().enumerate() {
                acc = target.add(&acc, &target.act(rel.get(i, j), img));
            }
            if !acc.is_zero() {
                return Err(Error::NotHomomorphism(format!("relation {} is not respected", i + 1)));
            }
        }
        let k = source.acting_ring().dim();
        let n = source.generator_count() * k;
        // Image of each group generator e_b·gⱼ.
        let mut group_images = Vec::with_capacity(n);
        for img in &images {
            for b in 0..k {
                group_images.push(target.act(&source.acting_ring().basis(b), img));
            }
        }
        let ts = source.width();
        let tt = target.width();
        let mut matrix = IntMatrix::zeros(ts, tt);
        for p in 0..ts {
            let mut acc = vec![Int::zero(); tt];
            for (x, gi) in group_images.iter().enumerate() {
                let c = &source.0.from_canon[(p, x)];
                if c.is_zero() {
                    continue;
                }
                for (a, v) in acc.iter_mut().zip(&gi.coords) {
                    *a += c * v;
                }
            }
            let row = target.reduce(acc);
            for q in 0..tt {
                matrix[(p, q)] = row.coords[q].clone();
            }
        }
        Ok(Hom { source: source.clone(), target: target.clone(), images, matrix })
    }

    pub fn identity(m: &FpModule) -> Hom {
        let images = (0..m.generator_count()).map(|j| m.generator(j)).collect();
        Hom::new(m, m, images).expect("identity")
    }

    pub fn source(&self) -> &FpModule {
        &self.source
    }

    pub fn target(&self) -> &FpModule {
        &self.target
    }

    pub fn images(&self) -> &[ModElem] {
        &self.images
    }

    pub fn apply(&self, m: &ModElem) -> Result<ModElem> {
        self.source.check(m)?;
        Ok(self.target.reduce(self.matrix.apply_row(&m.coords)))
    }

    pub fn kernel(&self) -> Subgroup {
        let ts = self.source.width();
        let tt = self.target.width();
        // m·F ≡ 0 (mod target invariants) for m ranging over ℤ^ts.
        let h = self.matrix.transpose();
        let sol = linalg::solve_congruences(&h, &vec![Int::zero(); tt], &self.target.0.invariants);
        debug_assert!(sol.homogeneous.iter().all(|v| v.len() == ts));
        Subgroup::from_flat(&self.source, 1, &sol.homogeneous)
    }

    pub fn image(&self) -> Subgroup {
        let rows: Vec<Vec<Int>> = (0..self.matrix.rows()).map(|p| self.matrix.row(p).to_vec()).collect();
        Subgroup::from_flat(&self.target, 1, &rows)
    }

    pub fn is_surjective(&self) -> bool {
        self.image().is_whole()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    /// `f(S)` for a subgroup of `source^m`.
    pub fn image_of(&self, s: &Subgroup) -> Result<Subgroup> {
        if s.module() != &self.source {
            return Err(Error::Mismatch("subgroup is not in the source".into()));
        }
        let imgs: Vec<Vec<ModElem>> = s
            .generators()
            .iter()
            .map(|tuple| tuple.iter().map(|m| self.apply(m)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        Ok(Subgroup::from_tuples(&self.target, s.power(), &imgs))
    }
}

/// `f(x)` for a homomorphism given by generator images.
pub fn apply_hom(images: Vec<ModElem>, source: &FpModule, target: &FpModule, x: &ModElem) -> Result<ModElem> {
    Hom::new(source, target, images)?.apply(x)
}

/// An additive subgroup of `M^power`, stored as the Hermite basis of its
/// preimage lattice in canonical coordinates.
#[derive(Clone, Debug)]
pub struct Subgroup {
    module: FpModule,
    power: usize,
    orders: Vec<Int>,
    basis: Vec<Vec<Int>>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.module == other.module && self.power == other.power && self.basis == other.basis
    }
}

impl Eq for Subgroup {}

/// How two subgroups of the same ambient group compare.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubgroupRelation {
    Equal,
    Subset,
    Superset,
    Incomparable,
}

impl Subgroup {
    /// Subgroup of `M^power` generated by flat coordinate vectors.
    pub fn from_flat(module: &FpModule, power: usize, gens: &[Vec<Int>]) -> Subgroup {
        let orders: Vec<Int> = (0..power).flat_map(|_| module.invariants().iter().cloned()).collect();
        let basis = linalg::subgroup_canonicalize(&orders, gens);
        Subgroup { module: module.clone(), power, orders, basis }
    }

    /// Subgroup of `M^power` generated by tuples.
    pub fn from_tuples(module: &FpModule, power: usize, gens: &[Vec<ModElem>]) -> Subgroup {
        let flat: Vec<Vec<Int>> = gens.iter().map(|t| t.iter().flat_map(|m| m.coords.iter().cloned()).collect()).collect();
        Self::from_flat(module, power, &flat)
    }

    /// Subgroup of `M` generated by elements.
    pub fn from_elems(module: &FpModule, gens: &[ModElem]) -> Subgroup {
        let flat: Vec<Vec<Int>> = gens.iter().map(|m| m.coords.clone()).collect();
        Self::from_flat(module, 1, &flat)
    }

    pub fn module(&self) -> &FpModule {
        &self.module
    }

    pub fn power(&self) -> usize {
        self.power
    }

    /// Canonical lattice basis (includes the ambient order relations).
    pub fn basis(&self) -> &[Vec<Int>] {
        &self.basis
    }

    fn split(&self, flat: &[Int]) -> Vec<ModElem> {
        let t = self.module.width();
        (0..self.power).map(|i| self.module.reduce(flat[i * t..(i + 1) * t].to_vec())).collect()
    }

    /// Nonzero generating tuples.
    pub fn generators(&self) -> Vec<Vec<ModElem>> {
        self.basis
            .iter()
            .map(|v| self.split(v))
            .filter(|t| t.iter().any(|m| !m.is_zero()))
            .collect()
    }

    pub fn contains_flat(&self, v: &[Int]) -> bool {
        linalg::hermite_reduce(&self.basis, v).iter().all(Zero::is_zero)
    }

    pub fn contains(&self, tuple: &[ModElem]) -> bool {
        if tuple.len() != self.power {
            return false;
        }
        let flat: Vec<Int> = tuple.iter().flat_map(|m| m.coords.iter().cloned()).collect();
        self.contains_flat(&flat)
    }

    /// Integer coefficients writing `m` over [`generators`](Self::generators)
    /// (power 1 only).
    pub fn integer_coordinates(&self, m: &ModElem) -> Option<Vec<Int>> {
        let gens = self.generators();
        let t = self.module.width();
        let mut h = IntMatrix::zeros(t, gens.len());
        for (j, g) in gens.iter().enumerate() {
            for p in 0..t {
                h[(p, j)] = g[0].coords[p].clone();
            }
        }
        linalg::solve_congruences(&h, &m.coords, self.module.invariants()).particular
    }

    pub fn is_trivial(&self) -> bool {
        self.generators().is_empty()
    }

    pub fn is_whole(&self) -> bool {
        let n = self.orders.len();
        (0..n).all(|i| {
            let mut e = vec![Int::zero(); n];
            e[i] = Int::one();
            self.contains_flat(&e)
        })
    }

    /// Number of elements, when finite.
    pub fn size(&self) -> Option<Int> {
        // Any element with a nonzero free coordinate has infinite order.
        let free: Vec<usize> = (0..self.orders.len()).filter(|&i| self.orders[i].is_zero()).collect();
        if self.basis.iter().any(|row| free.iter().any(|&i| !row[i].is_zero())) {
            return None;
        }
        let ambient: Int = self.orders.iter().filter(|d| !d.is_zero()).product();
        let index: Int = self
            .basis
            .iter()
            .map(|row| row.iter().find(|x| !x.is_zero()).cloned().expect("nonzero row"))
            .product();
        Some(ambient / index)
    }

    fn check_same(&self, other: &Subgroup) -> Result<()> {
        if self.module != other.module || self.power != other.power {
            return Err(Error::Mismatch("subgroups live in different groups".into()));
        }
        Ok(())
    }

    pub fn is_subset(&self, other: &Subgroup) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.basis.iter().all(|v| other.contains_flat(v)))
    }

    pub fn relate(&self, other: &Subgroup) -> Result<SubgroupRelation> {
        let a = self.is_subset(other)?;
        let b = other.is_subset(self)?;
        Ok(match (a, b) {
            (true, true) => SubgroupRelation::Equal,
            (true, false) => SubgroupRelation::Subset,
            (false, true) => SubgroupRelation::Superset,
            (false, false) => SubgroupRelation::Incomparable,
        })
    }

    pub fn sum(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_same(other)?;
        let gens: Vec<Vec<Int>> = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Subgroup::from_flat(&self.module, self.power, &gens))
    }

    pub fn intersection(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_same(other)?;
        let n = self.orders.len();
        let (p, q) = (self.basis.len(), other.basis.len());
        // a·B₁ = b·B₂ over ℤ; both bases contain the order lattice.
        let mut h = IntMatrix::zeros(n, p + q);
        for (j, row) in self.basis.iter().enumerate() {
            for i in 0..n {
                h[(i, j)] = row[i].clone();
            }
        }
        for (j, row) in other.basis.iter().enumerate() {
            for i in 0..n {
                h[(i, p + j)] = -&row[i];
            }
        }
        let kernel = linalg::integer_kernel(&h);
        let gens: Vec<Vec<Int>> = kernel
            .iter()
            .map(|z| {
                let mut v = vec![Int::zero(); n];
                for (j, row) in self.basis.iter().enumerate() {
                    for i in 0..n {
                        v[i] += &z[j] * &row[i];
                    }
                }
                v
            })
            .collect();
        Ok(Subgroup::from_flat(&self.module, self.power, &gens))
    }

    /// Whether the subgroup of `M` is closed under the ring action.
    pub fn is_submodule(&self) -> bool {
        let acting = self.module.acting_ring();
        self.generators().iter().all(|t| {
            (0..acting.dim()).all(|c| {
                let ec = acting.basis(c);
                let img: Vec<ModElem> = t.iter().map(|m| self.module.act(&ec, m)).collect();
                self.contains(&img)
            })
        })
    }

    /// Every element, for finite subgroups of at most `limit` elements.
    pub fn elements(&self, limit: u64) -> Option<Vec<Vec<ModElem>>> {
        let size = self.size()?;
        if size > Int::from(limit) {
            return None;
        }
        let ambient = direct_power_elements(&self.module, self.power, limit.saturating_mul(limit))?;
        Some(ambient.into_iter().filter(|t| self.contains(t)).collect())
    }
}

/// All tuples in `M^power` when there are at most `limit` of them.
pub fn direct_power_elements(m: &FpModule, power: usize, limit: u64) -> Option<Vec<Vec<ModElem>>> {
    let size = m.size()?;
    let total = num_traits::pow::pow(size, power);
    if total > Int::from(limit) {
        return None;
    }
    let elems = m.elements(limit)?;
    let mut out: Vec<Vec<ModElem>> = vec![vec![]];
    for _ in 0..power {
        out = out
            .into_iter()
            .flat_map(|t| {
                elems.iter().map(move |e| {
                    let mut t = t.clone();
                    t.push(e.clone());
                    t
                })
            })
            .collect();
    }
    Some(out)
}

/// `A ⊗_R B` as an abelian group, with the simple-tensor map.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    pub module: FpModule,
    left: FpModule,
    right: FpModule,
}

impl TensorProduct {
    /// `Σᵢ aᵢ ⊗ bᵢ`.
    pub fn simple_tensor(&self, a: &[ModElem], b: &[ModElem]) -> Result<ModElem> {
        if a.len() != b.len() {
            return Err(Error::Dimension(format!("tuples of length {} and {}", a.len(), b.len())));
        }
        let tb = self.right.width();
        let mut gens = vec![Int::zero(); self.left.width() * tb];
        for (x, y) in a.iter().zip(b) {
            self.left.check(x)?;
            self.right.check(y)?;
            for (p, xp) in x.coords.iter().enumerate() {
                for (q, yq) in y.coords.iter().enumerate() {
                    gens[p * tb + q] += xp * yq;
                }
            }
        }
        let ints: Vec<RingElem> = gens.iter().map(|v| self.module.ring().from_int(v)).collect();
        self.module.combination(&ints)
    }
}

/// Tensor product of a right module with a left module over the same ring.
pub fn tensor_product(a: &FpModule, b: &FpModule) -> Result<TensorProduct> {
    if a.ring() != b.ring() {
        return Err(Error::Mismatch(format!("rings differ: {} vs {}", a.ring(), b.ring())));
    }
    if a.side() != Side::Right || b.side() != Side::Left {
        return Err(Error::Mismatch("tensor product needs a right module and a left module".into()));
    }
    let ring = a.ring();
    let (ta, tb) = (a.width(), b.width());
    let z = Ring::integers();
    let n = ta * tb;
    let gen = |p: usize, q: usize| p * tb + q;
    let mut rows: Vec<Vec<Int>> = Vec::new();
    for p in 0..ta {
        for q in 0..tb {
            for d in [&a.invariants()[p], &b.invariants()[q]] {
                if !d.is_zero() {
                    let mut row = vec![Int::zero(); n];
                    row[gen(p, q)] = d.clone();
                    rows.push(row);
                }
            }
        }
    }
    for c in 0..ring.dim() {
        let rho_a = &a.0.action[c];
        let rho_b = &b.0.action[c];
        for p in 0..ta {
            for q in 0..tb {
                // (α_p·e_c) ⊗ β_q − α_p ⊗ (e_c·β_q)
                let mut row = vec![Int::zero(); n];
                for p2 in 0..ta {
                    row[gen(p2, q)] += &rho_a[(p, p2)];
                }
                for q2 in 0..tb {
                    row[gen(p, q2)] -= &rho_b[(q, q2)];
                }
                if row.iter().any(|v| !v.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let entries: Vec<RingElem> = rows.iter().flatten().map(|v| z.from_int(v)).collect();
    let rel = RingMatrix::new(&z, rows.len(), n, entries)?;
    let module = FpModule::new(&z, Side::Left, n, rel)?;
    Ok(TensorProduct { module, left: a.clone(), right: b.clone() })
}

#[cfg(test)]
mod tests;
