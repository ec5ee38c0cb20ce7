//! JSON encodings. Exact values carry their cyclotomic conductor, numeric
//! values carry an error estimate.

use serde_json::{json, Value};
use shintani_core::analytic::Approx;
use shintani_core::arithmetic_data::HeckeCharacter;
use shintani_core::cyclotomic::Cyc;
use shintani_core::hecke::Report;
use shintani_core::ideals::FractionalIdeal;
use shintani_core::numberfield::{FieldElement, NumberField};
use shintani_core::torsion::TorsionPoint;
use shintani_core::Rat;

pub fn rat(q: &Rat) -> Value {
    Value::String(q.to_string())
}

pub fn exact(v: &Cyc) -> Value {
    let m = v.minimal();
    json!({
        "exact": m.to_text(),
        "conductor": m.m(),
        "rational": m.as_rational().map(|q| q.to_string()),
    })
}

pub fn real(x: f64, err: f64) -> Value {
    json!({ "value": x, "err": err })
}

pub fn approx(a: &Approx) -> Value {
    json!({ "re": a.value.re, "im": a.value.im, "err": a.err })
}

pub fn element(nf: &NumberField, x: &FieldElement) -> Value {
    Value::Array(nf.to_power(x).iter().map(rat).collect())
}

pub fn ideal(nf: &NumberField, a: &FractionalIdeal) -> Value {
    json!({
        "norm": a.norm().to_string(),
        "basis": a.basis().iter().map(|b| element(nf, b)).collect::<Vec<_>>(),
    })
}

pub fn point(nf: &NumberField, p: &TorsionPoint) -> Value {
    json!({
        "ideal": ideal(nf, &p.ideal),
        "modulus_norm": p.modulus.norm().to_string(),
        "r": p.r.iter().map(rat).collect::<Vec<_>>(),
        "order": p.order(),
    })
}

pub fn character(index: usize, c: &HeckeCharacter) -> Value {
    json!({
        "index": index,
        "label": c.label,
        "order": c.order,
        "u": c.u,
        "conductor_norm": c.conductor.norm().to_string(),
    })
}

/// Error estimate of one side of a report.
fn side(z: num_complex::Complex64, err: f64) -> Value {
    json!({ "re": z.re, "im": z.im, "err": err })
}

pub fn report(r: &Report, tol: f64) -> Value {
    let lerr = if r.exact { 0.0 } else { r.tolerance * r.lhs.norm() };
    let rerr = if r.exact { 0.0 } else { r.tolerance * r.rhs.norm() };
    json!({
        "lhs": side(r.lhs, lerr),
        "rhs": side(r.rhs, rerr),
        "lhs_provenance": r.lhs_provenance,
        "rhs_provenance": r.rhs_provenance,
        "abs_err": r.abs_err,
        "rel_err": r.rel_err,
        "error_budget": r.tolerance,
        "exact": r.exact,
        "tolerance": tol,
        "holds": r.holds(tol),
    })
}

/// Conventions echoed in every document.
pub fn conventions() -> Value {
    json!({
        "tau_ordering": "real embeddings τ_1 < … < τ_g ordered by the real roots of the minimal polynomial",
        "breve_rule": "boundary faces of cones and parallelepipeds are included by a one-sided perturbation in the last embedding coordinate",
        "q_xi_normalization": "H^{g-1}(ξΔ/Δ, O) ≅ Q(ξ) normalized so that g = 1 is evaluation at ξ; exact values are written in the power basis of z_m = exp(2πi/m)",
        "torsion_points": "ξ(α) = exp(2πi⟨r, coords(α)⟩) against the HNF basis of the ideal",
        "artin": "Art_F([a]) η = η^{[a^{-1}]}",
        "elements": "power-basis coordinates [c_0, c_1, …] meaning Σ c_i θ^i",
    })
}
