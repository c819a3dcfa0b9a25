use std::f64::consts::PI;

use super::HActionOnPaths;
use crate::error::{Error, Result};
use crate::fusion::cocycle::Cocycle3;
use crate::report::{Check, Report};
use crate::scalar::{RootOfUnity, Scalar, Tolerance};
use crate::wha::BasisLabels;

/// E(a,b,c,d; g) sends the edge c→b to coeff·(edge a→d).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointedCoefficient {
    pub g: usize,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub coeff: Scalar,
}

/// Degree-one coefficients of an action built over a pointed regular module.
pub fn pointed_coefficients(action: &HActionOnPaths) -> Result<Vec<PointedCoefficient>> {
    let BasisLabels::Picture(basis) = &action.h.basis else {
        return Err(Error::Unsupported("picture basis required".into()));
    };
    let paths = &action.paths;
    let mut out = Vec::new();
    for (i, el) in basis.iter().enumerate() {
        for p in paths.degree_range(1) {
            let path = paths.path(p);
            if path.source != el.c || path.target != el.b {
                continue;
            }
            for &(k, coeff) in action.act_basis(i, p) {
                let img = paths.path(k);
                if img.source != el.a || img.target != el.d {
                    return Err(Error::Verification(format!(
                        "image of {p} under {i} has wrong endpoints"
                    )));
                }
                out.push(PointedCoefficient {
                    g: el.x,
                    a: el.a,
                    b: el.b,
                    c: el.c,
                    d: el.d,
                    coeff,
                });
            }
        }
    }
    Ok(out)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Exponent of a scalar as an `order`-th root of unity, if it is one.
fn as_root(x: Scalar, order: u64, tol: Tolerance) -> Option<RootOfUnity> {
    let k = (x.arg() * order as f64 / (2.0 * PI)).round() as i64;
    let r = RootOfUnity::new(order, k).ok()?;
    ((r.to_scalar() - x).norm() <= tol.eps()).then_some(r)
}

/// Compares the coefficients with ω(g, d⁻¹, g⁻¹a) (`cocycle_coefficients`) and with
/// ω(g, g⁻¹d, d⁻¹a)⁻¹ (`cocycle_coefficients_associator`), at the exponent level.
pub fn verify_pointed_coefficients(action: &HActionOnPaths, omega: &Cocycle3, tol: Tolerance) -> Result<Report> {
    let coeffs = pointed_coefficients(action)?;
    let g = &omega.group;
    let order = omega.entries().iter().fold(1u64, |acc, e| {
        let o = e.3.reduced().order();
        acc / gcd(acc, o) * o
    });
    let mut literal = Vec::new();
    let mut assoc = Vec::new();
    for c in &coeffs {
        let got = as_root(c.coeff, order, tol);
        let want_lit = omega.value(c.g, g.inv(c.d), g.mul(g.inv(c.g), c.a));
        let want_assoc = omega.value(c.g, g.mul(g.inv(c.g), c.d), g.mul(g.inv(c.d), c.a)).inv();
        let tag = format!("g={} a={} d={} coeff={:.6}", c.g, c.a, c.d, c.coeff);
        if got != Some(want_lit) {
            literal.push(format!(
                "{tag} expected exp {}/{}",
                want_lit.reduced().exponent(),
                want_lit.reduced().order()
            ));
        }
        if got != Some(want_assoc) {
            assoc.push(tag);
        }
    }
    let mut rep = Report::new();
    rep.push(Check::exact("cocycle_coefficients", coeffs.len(), literal));
    rep.push(Check::exact("cocycle_coefficients_associator", coeffs.len(), assoc));
    Ok(rep)
}
