//! Rendering of polynomials and series in the three output formats.

use clap::ValueEnum;
use serde_json::{json, Value};
use sjk_core::poly::{CoeffSeries, Poly};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Latex,
}

pub fn poly(p: &Poly, format: Format) -> String {
    match format {
        Format::Text => p.to_text(),
        Format::Json => p.to_json(),
        Format::Latex => p.to_latex(),
    }
}

fn poly_value(p: &Poly) -> Value {
    serde_json::to_value(p.to_json_value()).expect("polynomial JSON is serializable")
}

/// A truncated series in `param`, one coefficient per line in text and LaTeX.
pub fn series(s: &CoeffSeries, param: &str, format: Format) -> String {
    match format {
        Format::Text => s
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| format!("{param}^{k}: {}", c.to_text()))
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Latex => {
            let tex_param = if param == "lambda" { r"\lambda" } else { param };
            s.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| format!(r"[{tex_param}^{{{k}}}] & {} \\", c.to_latex()))
                .collect::<Vec<_>>()
                .join("\n")
        }
        Format::Json => json!({
            "parameter": param,
            "order": s.order(),
            "coefficients": s.coeffs().iter().map(poly_value).collect::<Vec<_>>(),
        })
        .to_string(),
    }
}

/// Indexed rows `(index, polynomial)`, e.g. a table over n or a connection row.
pub fn rows(label: &str, rows: &[(u32, Poly)], format: Format) -> String {
    match format {
        Format::Text => rows
            .iter()
            .map(|(i, p)| format!("{label}={i}: {}", p.to_text()))
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Latex => rows
            .iter()
            .map(|(i, p)| format!(r"{i} & {} \\", p.to_latex()))
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Json => Value::Array(
            rows.iter()
                .map(|(i, p)| json!({ label: i, "poly": poly_value(p) }))
                .collect(),
        )
        .to_string(),
    }
}
