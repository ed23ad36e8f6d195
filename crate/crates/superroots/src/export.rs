//! Stable wire encodings: JSON for root systems, parabolic reports and
//! censuses; DOT for diagrams; plain-text q-series for characters.

use crate::affine::AffineRootSystem;
use crate::characters::GradedCharacter;
use crate::diagram::DynkinDiagram;
use crate::error::{Error, Result};
use crate::finite::FiniteRootSystem;
use crate::levi::LeviReport;
use crate::parabolic::{Decomposition, ParabolicKind, ParabolicSubset};
use crate::root::{Parity, Root};
use serde_json::{json, Value};

pub fn root_json(r: &Root) -> Value {
    json!({ "coeffs": r.coeffs, "delta": r.delta })
}

fn parity_str(p: Parity) -> &'static str {
    match p {
        Parity::Even => "even",
        Parity::Odd => "odd",
    }
}

/// FiniteRootSystem JSON: rationals as "p/q" strings, roots as
/// {"coeffs": [...], "delta": k}.
pub fn finite_json(sys: &FiniteRootSystem) -> Value {
    let gram: Vec<Vec<String>> = sys
        .gram
        .iter()
        .map(|row| row.iter().map(|s| s.display_string()).collect())
        .collect();
    json!({
        "type": sys.type_tag.to_string(),
        "rank": sys.rank,
        "parities": sys.parities.iter().map(|p| parity_str(*p)).collect::<Vec<_>>(),
        "gram": gram,
        "positive_roots": sys.positive_roots.iter().map(root_json).collect::<Vec<_>>(),
        "alpha0_expansion": sys.alpha0_expansion,
        "ambient_only": sys.ambient_only,
    })
}

pub fn affine_json(aff: &AffineRootSystem) -> Value {
    let base = aff.distinguished_base();
    json!({
        "finite": finite_json(&aff.finite),
        "imaginary_multiplicity": aff.imaginary_multiplicity,
        "distinguished_base": base.roots.iter().map(root_json).collect::<Vec<_>>(),
        "base_parities": base.parities.iter().map(|p| parity_str(*p)).collect::<Vec<_>>(),
    })
}

pub fn finite_diagram(sys: &FiniteRootSystem) -> DynkinDiagram {
    let labels: Vec<String> = (1..=sys.rank).map(|i| format!("a{i}")).collect();
    DynkinDiagram::from_gram(&sys.gram, &sys.parities, &labels)
}

/// Affine diagram: includes the α₀ node (extended gram).
pub fn affine_diagram(aff: &AffineRootSystem) -> DynkinDiagram {
    let base = aff.distinguished_base();
    let n = base.roots.len();
    let mut gram = vec![vec![crate::scalar::Scalar::ZERO; n]; n];
    for i in 0..n {
        for j in 0..n {
            gram[i][j] = aff
                .form(&base.roots[i], &base.roots[j])
                .expect("base vectors have matching rank");
        }
    }
    let mut labels = vec!["a0".to_string()];
    labels.extend((1..=aff.rank()).map(|i| format!("a{i}")));
    DynkinDiagram::from_gram(&gram, &base.parities, &labels)
}

/// JSON report of a parabolic subset: kind, generators, P⁰ generator list,
/// validation depth, witness on failure.
pub fn parabolic_json(
    aff: &AffineRootSystem,
    p: &ParabolicSubset,
    depth: i64,
) -> Value {
    let kind = match &p.kind {
        ParabolicKind::Standard { s } => json!({
            "kind": "standard",
            "s": s.iter().map(root_json).collect::<Vec<_>>(),
        }),
        ParabolicKind::Functional { chain } => json!({
            "kind": "functional",
            "chain_len": chain.len(),
        }),
        ParabolicKind::Explicit { y, z } => json!({
            "kind": "explicit",
            "y": y.iter().map(root_json).collect::<Vec<_>>(),
            "z": z.iter().map(root_json).collect::<Vec<_>>(),
        }),
    };
    let d = p.decompose(aff, depth);
    let witness = match p.validate(aff, depth) {
        Ok(()) => Value::Null,
        Err(w) => Value::String(w.to_string()),
    };
    json!({
        "parabolic": kind,
        "depth": depth,
        "p_zero": d.zero.iter().map(root_json).collect::<Vec<_>>(),
        "p_plus_count": d.plus.len(),
        "witness": witness,
    })
}

pub fn decomposition_json(d: &Decomposition) -> Value {
    json!({
        "plus": d.plus.iter().map(root_json).collect::<Vec<_>>(),
        "zero": d.zero.iter().map(root_json).collect::<Vec<_>>(),
        "minus": d.minus.iter().map(root_json).collect::<Vec<_>>(),
    })
}

/// Census entry as one JSON object (newline-delimited stream upstream).
pub fn levi_report_json(r: &LeviReport) -> Value {
    json!({
        "source": r.source,
        "components": r.components.iter().map(|t| t.label()).collect::<Vec<_>>(),
        "cuspidal": r.cuspidal,
        "parabolic_ok": r.parabolic_ok,
        "depth": r.depth,
        "notes": r.notes,
    })
}

pub fn character_json(ch: &GradedCharacter) -> Value {
    json!({
        "level": crate::scalar::rat_string(ch.level),
        "dims": ch.dims,
    })
}

/// "1 + q + 2q^2 + …" rendering of a graded character.
pub fn character_ascii(ch: &GradedCharacter) -> String {
    let mut terms = Vec::new();
    for (k, &d) in ch.dims.iter().enumerate() {
        if d == 0 {
            continue;
        }
        let t = match (k, d) {
            (0, d) => format!("{d}"),
            (1, 1) => "q".to_string(),
            (1, d) => format!("{d}q"),
            (k, 1) => format!("q^{k}"),
            (k, d) => format!("{d}q^{k}"),
        };
        terms.push(t);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
    Ascii,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "dot" => Ok(Format::Dot),
            "ascii" => Ok(Format::Ascii),
            other => Err(Error::UnsupportedFormat {
                format: other.to_string(),
                kind: "any".to_string(),
            }),
        }
    }
}
