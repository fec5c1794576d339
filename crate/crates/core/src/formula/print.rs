use num_traits::{One, Signed, Zero};

use super::{LinearExpr, ParsedFormula, PpAst, PpMatrixForm, Side, Var};
use crate::linalg::Int;
use crate::ring::{Ring, RingElem, RingKind};

/// Signed integer multiples of basis elements making up a coefficient.
/// Over ℤ this is the value itself; over ℤ/n the least residue.
fn coefficient_parts(ring: &Ring, c: &RingElem) -> Vec<(Int, Option<usize>)> {
    if *c == ring.one() {
        return vec![(Int::one(), None)];
    }
    match ring.kind() {
        RingKind::Integers | RingKind::Modular(_) => {
            if c.is_zero() {
                vec![]
            } else {
                vec![(c.coords()[0].clone(), None)]
            }
        }
        RingKind::Table => c
            .coords()
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (v.clone(), Some(i)))
            .collect(),
    }
}

fn term_text(side: Side, mag: &Int, basis: Option<usize>, var: &str) -> String {
    let mut factors = Vec::new();
    if !mag.is_one() {
        factors.push(mag.to_string());
    }
    if let Some(i) = basis {
        factors.push(format!("e{}", i + 1));
    }
    match side {
        Side::Left => {
            factors.push(var.to_string());
        }
        Side::Right => factors.insert(0, var.to_string()),
    }
    factors.join("*")
}

fn linear_text(ring: &Ring, side: Side, terms: &[(RingElem, String)]) -> String {
    let mut out = String::new();
    for (c, var) in terms {
        for (v, basis) in coefficient_parts(ring, c) {
            let text = term_text(side, &v.abs(), basis, var);
            if out.is_empty() {
                if v.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if v.is_negative() { " - " } else { " + " });
            }
            out.push_str(&text);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Renders a formula in the concrete syntax accepted by
/// [`parse_formula`](super::parse_formula). Witnesses are named `y1 … yl`.
pub fn print_formula(f: &PpMatrixForm) -> String {
    let v = f.left_view();
    let ring = f.ring();
    let k = v.a.rows();
    if k == 0 {
        return if f.arity() == 0 { "0 = 0".into() } else { "x1 = x1".into() };
    }
    let rows: Vec<String> = (0..k)
        .map(|i| {
            let lhs: Vec<_> = v.a.row(i).iter().enumerate().map(|(j, c)| (c.clone(), format!("y{}", j + 1))).collect();
            let rhs: Vec<_> = v.b.row(i).iter().enumerate().map(|(j, c)| (c.clone(), format!("x{}", j + 1))).collect();
            // annihilation constraints read `2*x1 = 0`, not `0 = 2*x1`
            if lhs.iter().all(|(c, _)| c.is_zero()) && rhs.iter().any(|(c, _)| !c.is_zero()) {
                format!("{} = 0", linear_text(ring, f.side(), &rhs))
            } else {
                format!("{} = {}", linear_text(ring, f.side(), &lhs), linear_text(ring, f.side(), &rhs))
            }
        })
        .collect();
    let body = rows.join(" & ");
    let l = v.a.cols();
    if l == 0 {
        return body;
    }
    let names: Vec<String> = (1..=l).map(|j| format!("y{j}")).collect();
    format!("E {} ({})", names.join(" "), body)
}

fn expr_text(p: &ParsedFormula, e: &LinearExpr) -> String {
    let terms: Vec<_> = e
        .terms
        .iter()
        .map(|t| {
            let name = match t.var {
                Var::Free(i) => format!("x{}", i + 1),
                Var::Bound(i) => p.bound_names[i].clone(),
            };
            (t.coeff.clone(), name)
        })
        .collect();
    linear_text(&p.ring, p.side, &terms)
}

fn ast_text(p: &ParsedFormula, ast: &PpAst) -> String {
    match ast {
        PpAst::Exists { vars, body } => {
            let names: Vec<&str> = vars.iter().map(|&i| p.bound_names[i].as_str()).collect();
            format!("E {} ({})", names.join(" "), ast_text(p, body))
        }
        PpAst::And(parts) => parts
            .iter()
            .map(|a| match a {
                PpAst::And(_) => format!("({})", ast_text(p, a)),
                _ => ast_text(p, a),
            })
            .collect::<Vec<_>>()
            .join(" & "),
        PpAst::Eq(l, r) => format!("{} = {}", expr_text(p, l), expr_text(p, r)),
        PpAst::Divides { divisors, target } => {
            let ds: Vec<String> = divisors.iter().map(|d| p.ring.format_elem(d)).collect();
            format!("{} | {}", ds.join(", "), expr_text(p, target))
        }
    }
}

/// Renders a parsed formula, keeping its quantifier structure.
pub fn print_ast(p: &ParsedFormula) -> String {
    ast_text(p, &p.ast)
}
