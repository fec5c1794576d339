//! Human-readable rendering. JSON output goes through `ppcalc_core::json`.

use ppcalc_core::formula::{print_formula, PpMatrixForm};
use ppcalc_core::matrix::RingMatrix;
use ppcalc_core::module::{FpModule, ModElem, Subgroup};
use ppcalc_core::ring::Ring;

/// Largest subgroup listed element by element.
const LIST_LIMIT: u64 = 256;

/// Generator coefficients, parenthesized when there are several.
pub fn elem(m: &FpModule, e: &ModElem) -> String {
    let cs: Vec<String> = m.express(e).iter().map(|c| m.ring().format_elem(c)).collect();
    if cs.len() == 1 {
        cs[0].clone()
    } else {
        format!("({})", cs.join(","))
    }
}

pub fn tuple(m: &FpModule, t: &[ModElem]) -> String {
    if t.len() == 1 {
        return elem(m, &t[0]);
    }
    format!("[{}]", t.iter().map(|e| elem(m, e)).collect::<Vec<_>>().join("; "))
}

/// `{0, 2}` when small enough to list, otherwise its generators.
pub fn subgroup(s: &Subgroup) -> String {
    let m = s.module();
    match s.elements(LIST_LIMIT) {
        Some(mut all) => {
            all.sort();
            format!("{{{}}}", all.iter().map(|t| tuple(m, t)).collect::<Vec<_>>().join(", "))
        }
        None => {
            let gens = s.generators();
            format!(
                "generated by {{{}}}",
                gens.iter().map(|t| tuple(m, t)).collect::<Vec<_>>().join(", ")
            )
        }
    }
}

/// Rows separated by `;`, e.g. `[1, 0; 0, 2]`.
pub fn matrix(ring: &Ring, m: &RingMatrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| ring.format_elem(m.get(i, j))).collect::<Vec<_>>().join(", "))
        .collect();
    format!("[{}]", rows.join("; "))
}

pub fn formula(f: &PpMatrixForm, raw: bool) -> String {
    if raw {
        format!(
            "{:?} arity {}: A = {}, B = {}",
            f.side(),
            f.arity(),
            matrix(f.ring(), f.a()),
            matrix(f.ring(), f.b())
        )
    } else {
        print_formula(f)
    }
}
