//! wasm-bindgen entry points for `www/index.html`. Each export wraps a plain
//! function returning `Result<String, String>` so the logic is testable on
//! the host.

use wasm_bindgen::prelude::*;

use hzlag_core::exact::parse_rational;
use hzlag_core::recursion::do_norbury_table;
use hzlag_core::residue::fab;
use hzlag_core::wick::{complex_wishart_moment, connected_moments, Dim, TracePattern, WISHART_LIMIT};

/// Largest row length served to the page.
const ROW_LIMIT: usize = 60;

pub fn moment(mu: &str, cols: &str, connected: bool) -> Result<String, String> {
    let pattern: TracePattern = mu.parse().map_err(|e| format!("{e}"))?;
    let cols: Dim = cols.parse().map_err(|e| format!("{e}"))?;
    let p = if connected {
        connected_moments(&pattern, Dim::N, cols, WISHART_LIMIT)
    } else {
        complex_wishart_moment(&pattern, Dim::N, cols, WISHART_LIMIT)
    };
    p.map(|p| p.to_string()).map_err(|e| e.to_string())
}

pub fn genus_row(g: usize, nmax: usize) -> Result<String, String> {
    if nmax > ROW_LIMIT || g > ROW_LIMIT {
        return Err(format!("g and nmax are limited to {ROW_LIMIT}"));
    }
    let t = do_norbury_table(g, nmax);
    Ok(t.row(g).iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", "))
}

pub fn fab_at(a: u32, b: u32, at: &str) -> Result<String, String> {
    let f = fab(a, b).value;
    if at.trim().is_empty() {
        return Ok(f.to_string());
    }
    let u = parse_rational(at).map_err(|e| e.to_string())?;
    f.eval(&u).map(|v| v.to_string()).ok_or_else(|| format!("pole at u = {at}"))
}

#[wasm_bindgen(js_name = wickMoment)]
pub fn wick_moment(mu: &str, cols: &str, connected: bool) -> Result<String, JsError> {
    moment(mu, cols, connected).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = laguerreRow)]
pub fn laguerre_row(g: usize, nmax: usize) -> Result<String, JsError> {
    genus_row(g, nmax).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = evalFab)]
pub fn eval_fab(a: u32, b: u32, at: &str) -> Result<String, JsError> {
    fab_at(a, b, at).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moments() {
        assert_eq!(moment("4", "N", false).unwrap(), "14*N + 10*N^-1");
        assert_eq!(moment("2", "N+1", false).unwrap(), "2*N + 3 + N^-1");
        assert_eq!(moment("1,1,1", "N", true).unwrap(), "2*N^-1");
        assert!(moment("9", "N", false).is_err());
    }

    #[test]
    fn rows() {
        assert_eq!(genus_row(1, 4).unwrap(), "0, 1, 10, 70, 420");
        assert!(genus_row(1, 61).is_err());
    }

    #[test]
    fn fab_values() {
        assert_eq!(fab_at(2, 3, "1/2").unwrap(), "-11");
        assert!(fab_at(2, 3, "1").is_err());
        assert!(fab_at(2, 1, "").unwrap().contains('u'));
    }
}
