//! Browser entry points. Each binding wraps a plain function returning
//! `Result<String, String>` so the logic is testable off the browser.

use modhyp::analysis::{coverage_check, dominance_scan};
use modhyp::hyperbola::{planar_points, HyperbolaSpec};
use modhyp::report::format_rational;
use modhyp::svg::render_svg;
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Enumeration cap for anything the page asks for.
pub const BROWSER_BUDGET: u64 = 4_000_000;
/// Largest modulus the dominance curve will scan.
pub const MAX_CURVE_N: u64 = 200_000;

pub fn plot(a: i64, n: u64) -> Result<String, String> {
    let points = planar_points(a, n, BROWSER_BUDGET).map_err(|e| e.to_string())?;
    Ok(render_svg(&points, n))
}

#[derive(Serialize)]
struct CurvePoint {
    n: u64,
    c2: String,
    value: f64,
}

/// `[{n, c2, value}]` for every `n <= n_max` coprime to `a`.
pub fn ratio_curve(a: i64, n_max: u64) -> Result<String, String> {
    if n_max > MAX_CURVE_N {
        return Err(format!("n_max is capped at {MAX_CURVE_N}"));
    }
    let scan = dominance_scan(a, n_max, None).map_err(|e| e.to_string())?;
    let curve: Vec<CurvePoint> = scan
        .reports
        .iter()
        .map(|r| CurvePoint {
            n: r.n,
            c2: format_rational(&r.c2),
            value: r.c2_decimal,
        })
        .collect();
    serde_json::to_string(&curve).map_err(|e| e.to_string())
}

/// Coverage report for `S_d(m; a; n)` as JSON.
pub fn coverage(d: u32, m: u32, a: i64, n: u64) -> Result<String, String> {
    let spec = HyperbolaSpec::new(d, m, a, n).map_err(|e| e.to_string())?;
    let report = coverage_check(spec, BROWSER_BUDGET).map_err(|e| e.to_string())?;
    serde_json::to_string(&report).map_err(|e| e.to_string())
}

#[wasm_bindgen(js_name = plotSvg)]
pub fn plot_svg(a: i64, n: u64) -> Result<String, JsValue> {
    plot(a, n).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = ratioCurve)]
pub fn ratio_curve_js(a: i64, n_max: u64) -> Result<String, JsValue> {
    ratio_curve(a, n_max).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = coverageReport)]
pub fn coverage_js(d: u32, m: u32, a: i64, n: u64) -> Result<String, JsValue> {
    coverage(d, m, a, n).map_err(|e| JsValue::from_str(&e))
}
