//! Bundles: a presentation plus named ideals, functors and an optional triangle table.
//!
//! Ideals are declared in an `[ideals]` section, one per line:
//!
//! ```text
//! [ideals]
//! eps = ε            # generated by a comma-separated list of expressions
//! J = jacobson
//! D = [P1, S3]       # morphisms factoring through the listed objects
//! ```
//!
//! The option `triangles = FILE` names a JSON triangle table next to the bundle. Each
//! entry has a `label`, an optional `ideal`, the object lists `x`, `y`, `z` and the
//! matrices `u`, `v`, `w` (rows indexed by target summands). A matrix cell is either an
//! expression string or an array of coordinate strings in the basis of the Hom space.

use std::collections::BTreeSet;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use thiserror::Error;

use crate::catcore::{FormalObject, FunctorData, Morphism, ObjId, PresentedCategory};
use crate::exactla::Scalar;
use crate::ideals::Ideal;
use crate::mutation::TriangleRecord;
use crate::quiverpres::{build_category, parse_presentation, BuiltCategory, Presentation, PresentationError};

#[derive(Debug, Error)]
pub enum BundleError {
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("line {line}: ideal `{name}`: {msg}")]
    Ideal { line: usize, name: String, msg: String },
    #[error("duplicate ideal name `{0}`")]
    DuplicateIdeal(String),
    #[error("unknown ideal `{0}`")]
    UnknownIdeal(String),
    #[error("missing functor `{0}`")]
    MissingFunctor(String),
    #[error("cannot read `{path}`: {msg}")]
    Io { path: String, msg: String },
    #[error("triangle table: {0}")]
    TriangleJson(String),
    #[error("triangle `{label}`, {field}: {msg}")]
    TriangleCell { label: String, field: String, msg: String },
}

#[derive(Clone, Debug)]
pub struct NamedTriangle {
    pub ideal: Option<String>,
    pub record: TriangleRecord,
}

#[derive(Clone, Debug)]
pub struct Bundle {
    pub presentation: Presentation,
    pub built: BuiltCategory,
    pub category: Arc<PresentedCategory>,
    /// Ideals in declaration order.
    pub ideals: Vec<(String, Ideal)>,
    pub triangles: Vec<NamedTriangle>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTriangle {
    label: String,
    #[serde(default)]
    ideal: Option<String>,
    x: Vec<String>,
    y: Vec<String>,
    z: Vec<String>,
    u: Vec<Vec<RawCell>>,
    v: Vec<Vec<RawCell>>,
    w: Vec<Vec<RawCell>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawCell {
    Expr(String),
    Coords(Vec<String>),
}

impl Bundle {
    /// Parses a bundle; `resolve` supplies the text of files the bundle refers to.
    pub fn from_text(text: &str, resolve: impl Fn(&str) -> Result<String, BundleError>) -> Result<Bundle, BundleError> {
        let presentation = parse_presentation(text)?;
        let built = build_category(&presentation)?;
        let category = Arc::new(built.category.clone());
        let mut bundle = Bundle { presentation, built, category, ideals: Vec::new(), triangles: Vec::new() };
        let decls = bundle.presentation.ideals.clone();
        for (line, name, def) in decls {
            if bundle.ideals.iter().any(|(n, _)| *n == name) {
                return Err(BundleError::DuplicateIdeal(name));
            }
            let ideal = bundle.parse_ideal(&def).map_err(|msg| BundleError::Ideal { line, name: name.clone(), msg })?;
            bundle.ideals.push((name, ideal));
        }
        if let Some(file) = bundle.presentation.options.get("triangles").cloned() {
            let json = resolve(&file)?;
            bundle.triangles = bundle.parse_triangles(&json)?;
        }
        Ok(bundle)
    }

    /// Reads a bundle from disk, resolving referenced files relative to it.
    pub fn from_path(path: &Path) -> Result<Bundle, BundleError> {
        let read = |p: &Path| {
            std::fs::read_to_string(p).map_err(|e| BundleError::Io { path: p.display().to_string(), msg: e.to_string() })
        };
        let text = read(path)?;
        let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Bundle::from_text(&text, |name| read(&dir.join(name)))
    }

    /// Generated by expressions, `jacobson`, `zero`, `full`, or an object list `[A, B]`.
    pub fn parse_ideal(&self, def: &str) -> Result<Ideal, String> {
        let cat = &self.category;
        let def = def.trim();
        match def {
            "jacobson" => return Ok(Ideal::jacobson(cat)),
            "zero" => return Ok(Ideal::zero(cat)),
            "full" => return Ok(Ideal::full(cat)),
            _ => {}
        }
        if let Some(inner) = def.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let objects = inner
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|n| cat.object_id(n).map_err(|e| e.to_string()))
                .collect::<Result<BTreeSet<ObjId>, _>>()?;
            return Ok(Ideal::object_ideal(cat, &objects));
        }
        let gens = def
            .split(',')
            .map(|g| self.built.morphism(g.trim()).map_err(|e| format!("`{}`: {e}", g.trim())))
            .collect::<Result<Vec<Morphism>, _>>()?;
        Ok(Ideal::generate(cat, &gens))
    }

    pub fn ideal(&self, name: &str) -> Result<&Ideal, BundleError> {
        self.ideals
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, i)| i)
            .ok_or_else(|| BundleError::UnknownIdeal(name.into()))
    }

    pub fn functor(&self, name: &str) -> Result<&FunctorData, BundleError> {
        self.category.functor(name).ok_or_else(|| BundleError::MissingFunctor(name.into()))
    }

    /// Triangles tagged with `ideal`, plus untagged ones.
    pub fn triangles_for(&self, ideal: &str) -> Vec<TriangleRecord> {
        self.triangles
            .iter()
            .filter(|t| t.ideal.as_deref().is_none_or(|n| n == ideal))
            .map(|t| t.record.clone())
            .collect()
    }

    pub fn parse_triangles(&self, json: &str) -> Result<Vec<NamedTriangle>, BundleError> {
        let raw: Vec<RawTriangle> = serde_json::from_str(json).map_err(|e| BundleError::TriangleJson(e.to_string()))?;
        let shift = self.functor("shift")?;
        raw.into_iter()
            .map(|t| {
                let err = |field: &str, msg: String| BundleError::TriangleCell { label: t.label.clone(), field: field.into(), msg };
                let obj = |field: &str, names: &[String]| {
                    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
                    self.category.formal(&refs).map_err(|e| err(field, e.to_string()))
                };
                if let Some(n) = &t.ideal {
                    self.ideal(n)?;
                }
                let (x, y, z) = (obj("x", &t.x)?, obj("y", &t.y)?, obj("z", &t.z)?);
                let x1 = shift.map_formal(&x);
                let u = self.matrix(&x, &y, &t.u).map_err(|m| err("u", m))?;
                let v = self.matrix(&y, &z, &t.v).map_err(|m| err("v", m))?;
                let w = self.matrix(&z, &x1, &t.w).map_err(|m| err("w", m))?;
                Ok(NamedTriangle {
                    ideal: t.ideal,
                    record: TriangleRecord { label: t.label, x, y, z, u, v, w },
                })
            })
            .collect()
    }

    fn matrix(&self, source: &FormalObject, target: &FormalObject, rows: &[Vec<RawCell>]) -> Result<Morphism, String> {
        if rows.len() != target.len() || rows.iter().any(|r| r.len() != source.len()) {
            return Err(format!("expected a {}×{} matrix", target.len(), source.len()));
        }
        let cat = &self.category;
        let entries = rows
            .iter()
            .zip(target.slots())
            .map(|(row, &b)| {
                row.iter()
                    .zip(source.slots())
                    .map(|(cell, &a)| self.cell(a, b, cell))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        cat.morphism(source.clone(), target.clone(), entries).map_err(|e| e.to_string())
    }

    fn cell(&self, a: ObjId, b: ObjId, cell: &RawCell) -> Result<Vec<Scalar>, String> {
        let cat = &self.category;
        let dim = cat.hom_dim_ind(a, b);
        match cell {
            RawCell::Coords(c) => {
                if c.len() != dim {
                    return Err(format!("expected {dim} coordinates, got {}", c.len()));
                }
                c.iter().map(|s| cat.field().parse_scalar(s).map_err(|e| e.to_string())).collect()
            }
            RawCell::Expr(text) => {
                let expr = self
                    .built
                    .quiver
                    .parse_expr(cat.field(), text)
                    .map_err(|e| format!("`{text}`: {e}"))?;
                match self.built.evaluate(&expr) {
                    None => Ok(vec![cat.field().zero(); dim]),
                    Some((s, t, coords)) if s == a && t == b => Ok(coords),
                    Some((s, t, _)) => Err(format!(
                        "`{text}` runs {} -> {}, expected {} -> {}",
                        cat.object_name(s),
                        cat.object_name(t),
                        cat.object_name(a),
                        cat.object_name(b)
                    )),
                }
            }
        }
    }
}

/// Bundles shipped with the crate.
pub mod fixtures {
    use super::{Bundle, BundleError};

    const FILES: &[(&str, &str)] = &[
        ("lhat2.bundle", include_str!("../../../fixtures/lhat2.bundle")),
        ("lhat2.triangles.json", include_str!("../../../fixtures/lhat2.triangles.json")),
        ("lhat3.bundle", include_str!("../../../fixtures/lhat3.bundle")),
        ("lhat3.triangles.json", include_str!("../../../fixtures/lhat3.triangles.json")),
        ("clusterA4.bundle", include_str!("../../../fixtures/clusterA4.bundle")),
    ];

    pub const NAMES: &[&str] = &["lhat2", "lhat3", "clusterA4"];

    fn file(name: &str) -> Result<String, BundleError> {
        FILES
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, text)| text.to_string())
            .ok_or_else(|| BundleError::Io { path: name.into(), msg: "not a bundled fixture".into() })
    }

    /// Loads a fixture by short name, e.g. `lhat2`.
    pub fn load(name: &str) -> Result<Bundle, BundleError> {
        Bundle::from_text(&file(&format!("{name}.bundle"))?, file)
    }

    pub fn all() -> Vec<(&'static str, Bundle)> {
        NAMES.iter().map(|n| (*n, load(n).expect("shipped fixture loads"))).collect()
    }
}
