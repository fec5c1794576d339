//! Reading rings, modules, elements, bounds and sentences from the command line.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use ppcalc_core::formula::{normalize, parse_formula, FormulaBound, PpMatrixForm, Side, SymmetricSentence};
use ppcalc_core::json::{module_from_json, parse_ring, ModuleJson};
use ppcalc_core::module::{FpModule, ModElem};
use ppcalc_core::ring::{Ring, RingElem};

/// `Z`, `Zn:<n>` or `table:<path>`.
pub fn ring(spec: &str) -> Result<Ring> {
    if spec == "Z" || spec == "z" {
        return Ok(Ring::integers());
    }
    if let Some(n) = spec.strip_prefix("Zn:") {
        let n: u64 = n.parse().with_context(|| format!("bad modulus in `{spec}`"))?;
        return Ok(Ring::modular(n)?);
    }
    if let Some(path) = spec.strip_prefix("table:") {
        return Ok(parse_ring(&read(path)?)?);
    }
    bail!("ring must be `Z`, `Zn:<n>` or `table:<path>`, got `{spec}`")
}

pub fn read(path: impl AsRef<Path>) -> Result<String> {
    let path = path.as_ref();
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn module_json(path: &str) -> Result<ModuleJson> {
    serde_json::from_str(&read(path)?).with_context(|| format!("malformed module file {path}"))
}

/// Loads a module file, checking it against `--ring` when that was given.
pub fn module(path: &str, ring: Option<&Ring>, cap: Option<u64>) -> Result<FpModule> {
    let m = module_from_json(&module_json(path)?, cap).with_context(|| format!("in module file {path}"))?;
    if let Some(r) = ring {
        if m.ring() != r {
            bail!("module {path} is over {}, but --ring is {r}", m.ring());
        }
    }
    Ok(m)
}

/// Like [`module`], but reads the module as a `side` module when the file
/// declares the other side over a commutative ring.
pub fn module_on_side(path: &str, side: Side, cap: Option<u64>) -> Result<FpModule> {
    let mut j = module_json(path)?;
    if j.side != side {
        let r = ppcalc_core::json::ring_from_json(&j.ring)?;
        if !r.is_commutative() {
            bail!("module {path} must be a {side:?} module");
        }
        j.side = side;
    }
    Ok(module_from_json(&j, cap).with_context(|| format!("in module file {path}"))?)
}

/// A module element given by comma-separated generator coefficients.
pub fn element(m: &FpModule, text: &str) -> Result<ModElem> {
    let coeffs: Vec<RingElem> =
        text.split(',').map(|c| m.ring().parse_scalar(c)).collect::<std::result::Result<_, _>>()?;
    Ok(m.combination(&coeffs).with_context(|| format!("element `{text}`"))?)
}

/// Elements separated by `;`.
pub fn elements(m: &FpModule, text: &str) -> Result<Vec<ModElem>> {
    text.split(';').filter(|t| !t.trim().is_empty()).map(|t| element(m, t)).collect()
}

pub fn formula(text: &str, ring: &Ring, side: Side, arity: usize) -> Result<PpMatrixForm> {
    let parsed = parse_formula(text, ring, side, arity).with_context(|| format!("formula `{text}`"))?;
    Ok(normalize(&parsed))
}

/// `k` (meaning `k` rows, `k` witnesses and coefficients up to 8) or
/// `rows,witnesses,coeff`.
pub fn bound(text: Option<&str>) -> Result<FormulaBound> {
    let Some(text) = text else { return Ok(FormulaBound::default()) };
    let parts: Vec<usize> = text
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| anyhow!("bad bound `{text}`")))
        .collect::<Result<_>>()?;
    match parts[..] {
        [k] => Ok(FormulaBound::new(k, k, FormulaBound::default().coeff_bound)),
        [r, w, c] => Ok(FormulaBound::new(r, w, c as u64)),
        _ => bail!("bound must be `k` or `rows,witnesses,coeff`, got `{text}`"),
    }
}

/// `{φ₁; φ₂} -> {ψ₁; ψ₂}`, braces optional. An empty antecedent is allowed.
pub fn sentence(text: &str, ring: &Ring, side: Side, arity: usize) -> Result<SymmetricSentence> {
    let (ante, cons) = text.split_once("->").ok_or_else(|| anyhow!("sentence `{text}` lacks `->`"))?;
    let list = |s: &str| -> Result<Vec<PpMatrixForm>> {
        let s = s.trim();
        let s = s.strip_prefix('{').and_then(|s| s.strip_suffix('}')).unwrap_or(s);
        s.split(';').map(str::trim).filter(|t| !t.is_empty()).map(|t| formula(t, ring, side, arity)).collect()
    };
    Ok(SymmetricSentence::new(list(ante)?, list(cons)?)?)
}
