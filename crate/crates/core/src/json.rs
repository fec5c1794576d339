//! JSON forms of rings, modules, formulas, elements and the artifacts that
//! `verify` re-checks: certificates, countermodels and witnesses.
//!
//! Ring elements are integers over ℤ and ℤ/n and coordinate arrays over
//! table rings (an integer `n` there means `n·1`). Module elements are given
//! by their coefficients on the generators.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::classes::{purity_witness_is_valid, tensor_witness, witness_is_valid, ClassName, ClassWitness};
use crate::decide::Certificate;
use crate::error::{Error, Result};
use crate::eval::satisfies;
use crate::formula::{print_formula, PpMatrixForm, Side};
use crate::linalg::Int;
use crate::matrix::RingMatrix;
use crate::module::{FpModule, ModElem, Subgroup, DEFAULT_TABLE_CAP};
use crate::ring::{Ring, RingElem, RingKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum RingJson {
    Z,
    Zn { n: u64 },
    #[serde(rename = "table")]
    Table { orders: Vec<u64>, mul: Vec<Vec<Vec<i64>>>, one: Vec<i64> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemJson {
    Int(i64),
    Coords(Vec<i64>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub ring: RingJson,
    pub side: Side,
    pub generators: usize,
    #[serde(default)]
    pub relations: Vec<Vec<ElemJson>>,
}

/// A formula in stored orientation with explicit shape, so that empty
/// matrices survive the round trip.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaJson {
    pub side: Side,
    pub arity: usize,
    pub witnesses: usize,
    pub constraints: usize,
    pub a: Vec<Vec<ElemJson>>,
    pub b: Vec<Vec<ElemJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub formula: Option<FormulaJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scalar: Option<ElemJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub element: Option<Vec<ElemJson>>,
}

/// Everything `verify` accepts.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Artifact {
    Certificate {
        ring: RingJson,
        phi: FormulaJson,
        psi: FormulaJson,
        x: Vec<Vec<ElemJson>>,
        y: Vec<Vec<ElemJson>>,
        z: Vec<Vec<ElemJson>>,
    },
    Countermodel {
        ring: RingJson,
        phi: FormulaJson,
        psi: FormulaJson,
        module: ModuleJson,
        witness: Vec<Vec<ElemJson>>,
    },
    ClassWitness {
        class: ClassName,
        module: ModuleJson,
        witness: WitnessJson,
    },
    PurityWitness {
        module: ModuleJson,
        sub: Vec<Vec<ElemJson>>,
        witness: WitnessJson,
    },
    TensorWitness {
        left: ModuleJson,
        right: ModuleJson,
        lelem: Vec<Vec<ElemJson>>,
        relem: Vec<Vec<ElemJson>>,
        formula: FormulaJson,
    },
}

fn small(n: &Int) -> Result<i64> {
    n.to_i64().ok_or_else(|| Error::Malformed(format!("integer {n} does not fit in 64 bits")))
}

pub fn ring_to_json(ring: &Ring) -> Result<RingJson> {
    Ok(match ring.kind() {
        RingKind::Integers => RingJson::Z,
        RingKind::Modular(n) => RingJson::Zn { n: *n },
        RingKind::Table => RingJson::Table {
            orders: ring.orders().iter().map(|d| d.to_u64().ok_or_else(|| Error::Malformed("order".into()))).collect::<Result<_>>()?,
            mul: ring
                .structure_constants()
                .iter()
                .map(|row| row.iter().map(|c| c.iter().map(small).collect()).collect())
                .collect::<Result<_>>()?,
            one: ring.one().coords().iter().map(small).collect::<Result<_>>()?,
        },
    })
}

pub fn ring_from_json(j: &RingJson) -> Result<Ring> {
    match j {
        RingJson::Z => Ok(Ring::integers()),
        RingJson::Zn { n } => Ring::modular(*n),
        RingJson::Table { orders, mul, one } => Ring::table(orders.clone(), mul.clone(), one.clone()),
    }
}

pub fn elem_to_json(ring: &Ring, e: &RingElem) -> Result<ElemJson> {
    Ok(match ring.kind() {
        RingKind::Table => ElemJson::Coords(e.coords().iter().map(small).collect::<Result<_>>()?),
        _ => ElemJson::Int(small(&e.coords()[0])?),
    })
}

pub fn elem_from_json(ring: &Ring, j: &ElemJson) -> Result<RingElem> {
    match j {
        ElemJson::Int(n) => Ok(ring.int(*n)),
        ElemJson::Coords(c) => ring.elem_i64(c),
    }
}

fn rows_to_json(ring: &Ring, m: &RingMatrix) -> Result<Vec<Vec<ElemJson>>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|e| elem_to_json(ring, e)).collect()).collect()
}

fn rows_from_json(ring: &Ring, rows: &[Vec<ElemJson>], n_rows: usize, n_cols: usize) -> Result<RingMatrix> {
    if rows.len() != n_rows || rows.iter().any(|r| r.len() != n_cols) {
        return Err(Error::Dimension(format!("expected a {n_rows}×{n_cols} matrix")));
    }
    let entries = rows.iter().flatten().map(|e| elem_from_json(ring, e)).collect::<Result<_>>()?;
    RingMatrix::new(ring, n_rows, n_cols, entries)
}

pub fn module_to_json(m: &FpModule) -> Result<ModuleJson> {
    Ok(ModuleJson {
        ring: ring_to_json(m.ring())?,
        side: m.side(),
        generators: m.generator_count(),
        relations: rows_to_json(m.ring(), m.relations())?,
    })
}

pub fn module_from_json(j: &ModuleJson, cap: Option<u64>) -> Result<FpModule> {
    let ring = ring_from_json(&j.ring)?;
    let rel = rows_from_json(&ring, &j.relations, j.relations.len(), j.generators)?;
    FpModule::with_cap(&ring, j.side, j.generators, rel, cap.unwrap_or(DEFAULT_TABLE_CAP))
}

pub fn formula_to_json(f: &PpMatrixForm) -> Result<FormulaJson> {
    Ok(FormulaJson {
        side: f.side(),
        arity: f.arity(),
        witnesses: f.witnesses(),
        constraints: f.constraints(),
        a: rows_to_json(f.ring(), f.a())?,
        b: rows_to_json(f.ring(), f.b())?,
        text: Some(print_formula(f)),
    })
}

pub fn formula_from_json(ring: &Ring, j: &FormulaJson) -> Result<PpMatrixForm> {
    let (k, l, m) = (j.constraints, j.witnesses, j.arity);
    let (a, b) = match j.side {
        Side::Left => (rows_from_json(ring, &j.a, k, l)?, rows_from_json(ring, &j.b, k, m)?),
        Side::Right => (rows_from_json(ring, &j.a, l, k)?, rows_from_json(ring, &j.b, m, k)?),
    };
    PpMatrixForm::new(ring.clone(), j.side, m, a, b)
}

pub fn melem_to_json(m: &FpModule, e: &ModElem) -> Result<Vec<ElemJson>> {
    m.express(e).iter().map(|r| elem_to_json(m.ring(), r)).collect()
}

pub fn melem_from_json(m: &FpModule, j: &[ElemJson]) -> Result<ModElem> {
    if j.len() != m.generator_count() {
        return Err(Error::CoordinateLength { expected: m.generator_count(), got: j.len() });
    }
    let coeffs: Vec<RingElem> = j.iter().map(|e| elem_from_json(m.ring(), e)).collect::<Result<_>>()?;
    m.combination(&coeffs)
}

fn tuple_from_json(m: &FpModule, j: &[Vec<ElemJson>]) -> Result<Vec<ModElem>> {
    j.iter().map(|e| melem_from_json(m, e)).collect()
}

pub fn witness_to_json(m: &FpModule, w: &ClassWitness) -> Result<WitnessJson> {
    Ok(WitnessJson {
        formula: w.formula.as_ref().map(formula_to_json).transpose()?,
        scalar: w.scalar.as_ref().map(|r| elem_to_json(m.ring(), r)).transpose()?,
        element: w.element.as_ref().map(|e| melem_to_json(m, e)).transpose()?,
    })
}

pub fn witness_from_json(m: &FpModule, j: &WitnessJson) -> Result<ClassWitness> {
    Ok(ClassWitness {
        formula: j.formula.as_ref().map(|f| formula_from_json(m.ring(), f)).transpose()?,
        scalar: j.scalar.as_ref().map(|r| elem_from_json(m.ring(), r)).transpose()?,
        element: j.element.as_ref().map(|e| melem_from_json(m, e)).transpose()?,
    })
}

pub fn certificate_artifact(phi: &PpMatrixForm, psi: &PpMatrixForm, c: &Certificate) -> Result<Artifact> {
    let r = phi.ring();
    Ok(Artifact::Certificate {
        ring: ring_to_json(r)?,
        phi: formula_to_json(phi)?,
        psi: formula_to_json(psi)?,
        x: rows_to_json(r, &c.x)?,
        y: rows_to_json(r, &c.y)?,
        z: rows_to_json(r, &c.z)?,
    })
}

pub fn countermodel_artifact(phi: &PpMatrixForm, psi: &PpMatrixForm, m: &FpModule, w: &[ModElem]) -> Result<Artifact> {
    Ok(Artifact::Countermodel {
        ring: ring_to_json(phi.ring())?,
        phi: formula_to_json(phi)?,
        psi: formula_to_json(psi)?,
        module: module_to_json(m)?,
        witness: w.iter().map(|e| melem_to_json(m, e)).collect::<Result<_>>()?,
    })
}

fn shape(rows: &[Vec<ElemJson>]) -> (usize, usize) {
    (rows.len(), rows.first().map_or(0, Vec::len))
}

/// Re-checks an artifact using only its own contents.
pub fn verify(a: &Artifact) -> Result<bool> {
    match a {
        Artifact::Certificate { ring, phi, psi, x, y, z } => {
            let r = ring_from_json(ring)?;
            let (phi, psi) = (formula_from_json(&r, phi)?, formula_from_json(&r, psi)?);
            let (k, l, m) = (phi.constraints(), phi.witnesses(), phi.arity());
            let (kc, lc) = (psi.constraints(), psi.witnesses());
            let ((xr, xc), (yr, yc), (zr, zc)) = match phi.side() {
                Side::Left => ((kc, k), (lc, m), (lc, l)),
                Side::Right => ((k, kc), (m, lc), (l, lc)),
            };
            let fits = |rows: &[Vec<ElemJson>], r: usize, c: usize| rows.len() == r && (r == 0 || shape(rows).1 == c);
            if !(fits(x, xr, xc) && fits(y, yr, yc) && fits(z, zr, zc)) {
                return Ok(false);
            }
            let cert = Certificate {
                side: phi.side(),
                x: rows_from_json(&r, x, xr, xc)?,
                y: rows_from_json(&r, y, yr, yc)?,
                z: rows_from_json(&r, z, zr, zc)?,
            };
            Ok(cert.verify(&phi, &psi))
        }
        Artifact::Countermodel { ring, phi, psi, module, witness } => {
            let r = ring_from_json(ring)?;
            let (phi, psi) = (formula_from_json(&r, phi)?, formula_from_json(&r, psi)?);
            let m = module_from_json(module, None)?;
            let w = tuple_from_json(&m, witness)?;
            Ok(satisfies(&m, &phi, &w)? && !satisfies(&m, &psi, &w)?)
        }
        Artifact::ClassWitness { class, module, witness } => {
            let m = module_from_json(module, None)?;
            witness_is_valid(&m, *class, &witness_from_json(&m, witness)?)
        }
        Artifact::PurityWitness { module, sub, witness } => {
            let m = module_from_json(module, None)?;
            let s = Subgroup::from_elems(&m, &tuple_from_json(&m, sub)?);
            purity_witness_is_valid(&m, &s, &witness_from_json(&m, witness)?)
        }
        Artifact::TensorWitness { left, right, lelem, relem, formula } => {
            let a = module_from_json(left, None)?;
            let b = module_from_json(right, None)?;
            let phi = formula_from_json(b.ring(), formula)?;
            let (x, y) = (tuple_from_json(&a, lelem)?, tuple_from_json(&b, relem)?);
            Ok(tensor_witness(&a, &x, &b, &y, [phi])?.is_some())
        }
    }
}

pub fn parse_artifact(text: &str) -> Result<Artifact> {
    serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
}

pub fn parse_ring(text: &str) -> Result<Ring> {
    ring_from_json(&serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?)
}

pub fn parse_module(text: &str, cap: Option<u64>) -> Result<FpModule> {
    module_from_json(&serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?, cap)
}
