//! Browser bindings: analyze a pasted origami, draw it, and build a Hurwitz
//! translation surface for a chosen genus.
//!
//! Every export returns a JSON or SVG string, or throws the error message.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use origami_core::format::{parse_origami, write_certificate, write_origami};
use origami_core::hurwitz::{hurwitz_genus_witness, Limits};
use origami_core::render::{render_svg as svg, MAX_RENDER_DEGREE};

/// Largest genus the page will construct.
pub const MAX_GENUS: usize = 1000;

#[derive(Serialize)]
struct Constructed {
    genus: usize,
    realizable: bool,
    reason: Option<String>,
    group_name: Option<String>,
    a: Option<String>,
    b: Option<String>,
    commutator: Option<String>,
    analyzed: bool,
    certificate: Option<String>,
    origami: Option<String>,
    svg: Option<String>,
}

pub fn analyze_json(text: &str) -> Result<String, String> {
    let o = parse_origami(text).map_err(|e| e.to_string())?;
    serde_json::to_string(&o.analyze()).map_err(|e| e.to_string())
}

pub fn svg_of(text: &str) -> Result<String, String> {
    let o = parse_origami(text).map_err(|e| e.to_string())?;
    svg(&o).map_err(|e| e.to_string())
}

pub fn construct_json(genus: usize) -> Result<String, String> {
    if !(2..=MAX_GENUS).contains(&genus) {
        return Err(format!("genus must be between 2 and {MAX_GENUS}"));
    }
    let verdict = hurwitz_genus_witness(genus, Limits::default()).map_err(|e| e.to_string())?;
    let result = match verdict.certificate {
        None => Constructed {
            genus,
            realizable: false,
            reason: Some(format!(
                "{genus} is even and 3 does not divide {}, so 4g - 4 = {} is divisible by neither 8 nor 12",
                genus - 1,
                4 * genus - 4
            )),
            group_name: None,
            a: None,
            b: None,
            commutator: None,
            analyzed: false,
            certificate: None,
            origami: None,
            svg: None,
        },
        Some(cert) => {
            let w = cert.witness();
            let g = w.group();
            let o = cert.origami();
            Constructed {
                genus,
                realizable: true,
                reason: None,
                group_name: Some(g.name().to_string()),
                a: Some(g.label(w.a())),
                b: Some(g.label(w.b())),
                commutator: Some(g.label(w.commutator())),
                analyzed: cert.analyzed(),
                certificate: Some(write_certificate(&cert)),
                origami: Some(write_origami(o)),
                svg: (o.degree() <= MAX_RENDER_DEGREE).then(|| svg(o).expect("degree checked")),
            }
        }
    };
    serde_json::to_string(&result).map_err(|e| e.to_string())
}

/// Genus, stratum, translation count and canonical form as JSON.
#[wasm_bindgen]
pub fn analyze_origami(text: &str) -> Result<String, JsError> {
    analyze_json(text).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn render_svg(text: &str) -> Result<String, JsError> {
    svg_of(text).map_err(|e| JsError::new(&e))
}

/// A certificate and its drawing, or the reason the genus is impossible.
#[wasm_bindgen]
pub fn construct_genus(genus: usize) -> Result<String, JsError> {
    construct_json(genus).map_err(|e| JsError::new(&e))
}
