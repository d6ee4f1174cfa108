//! Text and record renderings of computed invariants.

use twisted_alexander::applications::{free_genus_lower_bound, genus_lower_bound, FiberedReport};
use twisted_alexander::twisted::Evaluation;

/// Key/value lines shared by the text output and cache records.
pub fn summary(e: &Evaluation, ring: &str) -> Vec<(&'static str, String)> {
    let inv = &e.invariant;
    let mut out = vec![
        ("invariant", inv.value().to_string()),
        ("epsilon", inv.eps().to_string()),
        ("eps-power", inv.eps_power().to_string()),
        ("k", (e.data.k + 1).to_string()),
        ("delta", e.data.delta.to_string()),
        ("d", e.data.d.to_string()),
        ("n", inv.dim().to_string()),
        ("ring", ring.to_string()),
    ];
    match inv.value().degrees() {
        Ok(d) => {
            out.push(("deg", d.deg.to_string()));
            out.push(("hdeg", d.hdeg.to_string()));
            out.push(("ldeg", d.ldeg.to_string()));
            out.push(("c", d.c.to_string()));
        }
        Err(_) => out.push(("deg", "undefined (zero invariant)".into())),
    }
    out
}

pub fn key_values(lines: &[(&str, String)]) -> String {
    lines.iter().map(|(k, v)| format!("{k}: {v}\n")).collect()
}

/// Fibering verdict plus both genus bounds. `None` for the report means
/// no candidate genus was supplied.
pub fn report_lines(e: &Evaluation, fibered: Option<Result<FiberedReport, String>>) -> Vec<String> {
    let mut out = Vec::new();
    match fibered {
        None => out.push("fibered: skipped".to_string()),
        Some(Err(msg)) => out.push(format!("fibered: error ({msg})")),
        Some(Ok(r)) => {
            out.push(format!("fibered: {}", r.verdict()));
            out.push(format!("  genus {} expects deg {} and 2 hdeg {}", r.genus, r.expected, r.expected));
            out.push(format!("  deg check: {}", ok(r.deg_ok)));
            out.push(format!("  hdeg check: {}", ok(r.hdeg_ok)));
            out.push(format!("  leading coefficient, eps^(g-1/2): {}", ok(r.coeff_ok)));
            out.push(format!("  leading coefficient, eps^(2g-1): {}", ok(r.coeff_ok_alt)));
        }
    }
    match free_genus_lower_bound(&e.invariant) {
        Ok(b) => out.push(format!("g_f >= {b}")),
        Err(err) => out.push(format!("g_f: {err}")),
    }
    match genus_lower_bound(&e.invariant) {
        Ok(b) => out.push(format!("g >= {b}")),
        Err(err) => out.push(format!("g: {err}")),
    }
    out
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAIL"
    }
}
