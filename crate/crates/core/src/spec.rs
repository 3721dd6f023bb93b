//! Domain description files.
//!
//! A spec is a JSON document
//!
//! ```json
//! { "name": "ellipse", "kind": "ellipse", "params": { "a": 2, "b": 1 }, "base_point": [0, 0] }
//! ```
//!
//! with `kind` one of `disk` (`params.radius`, default 1), `ellipse`
//! (`params.a`, `params.b`) or `fourier` (`params.cos`, `params.sin`, giving
//! `ρ(θ) = cos[0] + Σ_k cos[k] cos kθ + sin[k] sin kθ`). `name` is optional and
//! `base_point` defaults to the natural centre. Unknown keys are rejected.

use std::path::Path;

use nalgebra::Vector2;
use serde_json::{Map, Value};

use crate::domain::{BoundaryCurve, Shape};
use crate::error::{Result, SpecError};

#[derive(Clone, Debug, PartialEq)]
pub struct DomainSpec {
    pub name: String,
    pub shape: Shape,
    pub base_point: Vector2<f64>,
}

/// Line of the first occurrence of `"key"` in `text`, if any.
fn line_of(text: &str, key: &str) -> Option<usize> {
    let quoted = format!("\"{key}\"");
    text.lines().position(|l| l.contains(&quoted)).map(|i| i + 1)
}

struct Ctx<'a> {
    text: &'a str,
}

impl Ctx<'_> {
    /// Error at the line of the innermost key of `field` present in the text.
    fn err(&self, field: &str, message: impl Into<String>) -> SpecError {
        SpecError {
            line: field.rsplit('.').find_map(|key| line_of(self.text, key)),
            field: field.to_string(),
            message: message.into(),
        }
    }

    fn number(&self, v: &Value, field: &str) -> Result<f64, SpecError> {
        v.as_f64()
            .filter(|x| x.is_finite())
            .ok_or_else(|| self.err(field, "expected a finite number"))
    }

    fn numbers(&self, v: &Value, field: &str) -> Result<Vec<f64>, SpecError> {
        let arr = v.as_array().ok_or_else(|| self.err(field, "expected an array of numbers"))?;
        arr.iter()
            .enumerate()
            .map(|(i, x)| self.number(x, &format!("{field}[{i}]")).map_err(|e| SpecError { field: field.into(), ..e }))
            .collect()
    }

    fn only(&self, obj: &Map<String, Value>, allowed: &[&str], prefix: &str) -> Result<(), SpecError> {
        match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(self.err(&format!("{prefix}{k}"), format!("unknown key (expected one of {})", allowed.join(", ")))),
            None => Ok(()),
        }
    }
}

impl DomainSpec {
    pub fn parse(text: &str) -> Result<Self, SpecError> {
        let root: Value = serde_json::from_str(text).map_err(|e| SpecError {
            line: Some(e.line()),
            field: "document".into(),
            message: e.to_string(),
        })?;
        let cx = Ctx { text };
        let obj = root
            .as_object()
            .ok_or_else(|| SpecError::field("document", "expected an object"))?;
        cx.only(obj, &["name", "kind", "params", "base_point"], "")?;

        let kind = obj
            .get("kind")
            .ok_or_else(|| cx.err("kind", "missing"))?
            .as_str()
            .ok_or_else(|| cx.err("kind", "expected a string"))?;
        let empty = Map::new();
        let params = match obj.get("params") {
            None => &empty,
            Some(p) => p.as_object().ok_or_else(|| cx.err("params", "expected an object"))?,
        };
        let get = |k: &str| params.get(k).ok_or_else(|| cx.err(&format!("params.{k}"), "missing"));
        let shape = match kind {
            "disk" => {
                cx.only(params, &["radius"], "params.")?;
                let radius = match params.get("radius") {
                    Some(v) => cx.number(v, "params.radius")?,
                    None => 1.0,
                };
                if radius <= 0.0 {
                    return Err(cx.err("params.radius", "must be positive"));
                }
                Shape::Disk { radius }
            }
            "ellipse" => {
                cx.only(params, &["a", "b"], "params.")?;
                let a = cx.number(get("a")?, "params.a")?;
                let b = cx.number(get("b")?, "params.b")?;
                for (v, f) in [(a, "params.a"), (b, "params.b")] {
                    if v <= 0.0 {
                        return Err(cx.err(f, "must be positive"));
                    }
                }
                Shape::Ellipse { a, b }
            }
            "fourier" => {
                cx.only(params, &["cos", "sin"], "params.")?;
                let cos = cx.numbers(get("cos")?, "params.cos")?;
                let sin = match params.get("sin") {
                    Some(v) => cx.numbers(v, "params.sin")?,
                    None => Vec::new(),
                };
                if cos.is_empty() {
                    return Err(cx.err("params.cos", "needs at least the constant term"));
                }
                Shape::FourierRadial { cos, sin }
            }
            other => return Err(cx.err("kind", format!("unknown kind {other:?} (expected disk, ellipse or fourier)"))),
        };
        let base_point = match obj.get("base_point") {
            None => Vector2::zeros(),
            Some(v) => {
                let xs = cx.numbers(v, "base_point")?;
                if xs.len() != 2 {
                    return Err(cx.err("base_point", "expected two numbers"));
                }
                Vector2::new(xs[0], xs[1])
            }
        };
        let name = match obj.get("name") {
            None => kind.to_string(),
            Some(v) => v.as_str().ok_or_else(|| cx.err("name", "expected a string"))?.to_string(),
        };
        Ok(Self { name, shape, base_point })
    }

    pub fn load(path: &Path) -> Result<Self, SpecError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| SpecError::field("file", format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// The domain; fails with `NonConvex` or `NotInterior` as appropriate.
    pub fn build(&self) -> Result<BoundaryCurve> {
        BoundaryCurve::new(self.shape.clone(), self.base_point)
    }

    pub fn to_json(&self) -> String {
        let (kind, params) = match &self.shape {
            Shape::Disk { radius } => ("disk", serde_json::json!({ "radius": radius })),
            Shape::Ellipse { a, b } => ("ellipse", serde_json::json!({ "a": a, "b": b })),
            Shape::FourierRadial { cos, sin } => ("fourier", serde_json::json!({ "cos": cos, "sin": sin })),
        };
        let doc = serde_json::json!({
            "name": self.name,
            "kind": kind,
            "params": params,
            "base_point": [self.base_point.x, self.base_point.y],
        });
        serde_json::to_string_pretty(&doc).expect("plain values serialize")
    }
}

const SHIPPED: [&str; 4] = [
    include_str!("../../../domains/disk.json"),
    include_str!("../../../domains/disk-offset.json"),
    include_str!("../../../domains/ellipse.json"),
    include_str!("../../../domains/fourier.json"),
];

/// The default domain set: centred unit disk, unit disk seen from
/// `(0.5, 0)`, the ellipse `a = 2, b = 1` and the radial function
/// `1 + 0.05 cos 3θ + 0.03 sin 2θ`.
pub fn shipped_specs() -> Vec<DomainSpec> {
    SHIPPED
        .iter()
        .map(|t| DomainSpec::parse(t).expect("shipped specs are valid"))
        .collect()
}
