//! Browser demo. Each exported function takes plain text and returns a
//! text block, so the page needs no bindings beyond strings and numbers.
//! The `*_text` functions hold the logic and are callable natively.

use num_complex::Complex64;
use twisted_alexander::algebra::CoeffRing;
use twisted_alexander::applications::{conway_numerator, conway_polynomial, free_genus_lower_bound, genus_lower_bound};
use twisted_alexander::catalog;
use twisted_alexander::presentation::{wirtinger_from_pd, PdCode, Presentation};
use twisted_alexander::twisted::{evaluate, normalized_invariant, Representation};
use wasm_bindgen::prelude::*;

fn presentation_from_text(text: &str) -> Result<Presentation, String> {
    let first = text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).find(|l| !l.is_empty());
    let parsed = if first.is_some_and(|l| l.starts_with('X')) {
        PdCode::parse(text).and_then(|pd| wirtinger_from_pd(&pd))
    } else {
        Presentation::parse(text)
    };
    parsed.map_err(|e| format!("presentation: {e}"))
}

fn representation_from_text(text: &str, p: &Presentation) -> Result<Representation, String> {
    let rho = if text.trim().is_empty() {
        Representation::trivial(p, CoeffRing::Rationals)
    } else {
        Representation::parse(text).map_err(|e| format!("representation: {e}"))?
    };
    rho.verify(p).map_err(|e| format!("representation: {e}"))?;
    Ok(rho)
}

/// Normalized invariant of a presentation (or PD code) and a
/// representation; a blank representation means the trivial one over Q.
pub fn compute_text(presentation: &str, representation: &str) -> Result<String, String> {
    let p = presentation_from_text(presentation)?;
    let rho = representation_from_text(representation, &p)?;
    let e = evaluate(&p, &rho).map_err(|e| e.to_string())?;
    let inv = &e.invariant;
    let mut out = format!(
        "invariant: {}\nepsilon: {}\neps-power: {}\ncolumn: {}\ndelta: {}\nd: {}\n",
        inv.value(),
        inv.eps(),
        inv.eps_power(),
        e.data.k + 1,
        e.data.delta,
        e.data.d
    );
    if let Ok(d) = inv.value().degrees() {
        out.push_str(&format!("deg: {}\nhdeg: {}\n", d.deg, d.hdeg));
    }
    if let (Ok(gf), Ok(g)) = (free_genus_lower_bound(inv), genus_lower_bound(inv)) {
        out.push_str(&format!("g_f >= {gf}\ng >= {g}\n"));
    }
    Ok(out)
}

/// Conway polynomial and symmetrized Alexander polynomial.
pub fn conway_text(presentation: &str) -> Result<String, String> {
    let p = presentation_from_text(presentation)?;
    let inv = normalized_invariant(&p, &Representation::trivial(&p, CoeffRing::Rationals)).map_err(|e| e.to_string())?;
    let alexander = conway_numerator(&inv).map_err(|e| e.to_string())?;
    let conway = conway_polynomial(&p).map_err(|e| e.to_string())?;
    Ok(format!("alexander: {alexander}\nconway: {conway}\n"))
}

/// The SU(2) torus-knot invariant beside its closed form, at `samples`
/// points `z = t^(1/2)` on a circle of radius 1.2.
pub fn torus_text(p: i64, q: i64, a: i64, b: i64, s: f64, samples: usize) -> Result<String, String> {
    let pres = catalog::torus_knot(p, q).map_err(|e| e.to_string())?;
    let rho = catalog::torus_su2(p, q, a, b, s).map_err(|e| e.to_string())?;
    let inv = normalized_invariant(&pres, &rho).map_err(|e| e.to_string())?;
    let mut out = format!("invariant: {}\n", inv.value());
    let mut worst: f64 = 0.0;
    out.push_str("z\tcomputed\tclosed form\n");
    for i in 0..samples.max(1) {
        let z = Complex64::from_polar(1.2, 0.1 + 3.0 * i as f64 / samples.max(1) as f64);
        let computed = inv.value().eval_sqrt(z).ok_or("pole at sample point")?;
        let closed = catalog::torus_su2_closed_form(p, q, a, b, z);
        worst = worst.max((computed - closed).norm());
        out.push_str(&format!("{z:.4}\t{computed:.6}\t{closed:.6}\n"));
    }
    out.push_str(&format!("max deviation: {worst:.3e}\n"));
    Ok(out)
}

/// Admissible `(a, b)` pairs for the torus knot, as `a,b` lines.
pub fn torus_pairs_text(p: i64, q: i64) -> String {
    catalog::torus_admissible(p, q).iter().map(|(a, b)| format!("{a},{b}\n")).collect()
}

/// Bundled input text by name, for the page's presets.
pub fn example_text(name: &str) -> Option<&'static str> {
    Some(match name {
        "trefoil" => catalog::TREFOIL_PD,
        "figure8" => catalog::FIGURE_EIGHT_PD,
        "11n73" => catalog::KNOT_11N73,
        "11n73-rep" => catalog::KNOT_11N73_F2_REP,
        "trefoil-rep" => catalog::TREFOIL_SL2_F7_REP,
        "figure8-rep" => catalog::FIGURE_EIGHT_SL2_F7_REP,
        "torus23" => catalog::TREFOIL_TORUS,
        _ => return None,
    })
}

#[wasm_bindgen]
pub fn compute(presentation: &str, representation: &str) -> Result<String, JsError> {
    compute_text(presentation, representation).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn conway(presentation: &str) -> Result<String, JsError> {
    conway_text(presentation).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn torus(p: i32, q: i32, a: i32, b: i32, s: f64, samples: u32) -> Result<String, JsError> {
    torus_text(p.into(), q.into(), a.into(), b.into(), s, samples as usize).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn torus_pairs(p: i32, q: i32) -> String {
    torus_pairs_text(p.into(), q.into())
}

#[wasm_bindgen]
pub fn example(name: &str) -> String {
    example_text(name).unwrap_or_default().to_string()
}
