//! Presented categories: finitely many indecomposables, Hom bases, bilinear composition
//! tables, formal direct sums and matrix morphisms, plus functor data.
//!
//! Composition follows the applicative convention: `compose(g, f)` is "first `f`, then `g`".

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::exactla::{axpy, is_zero_vec, unit, FieldSpec, LinAlgError, LinMap, Scalar};

/// Index of an indecomposable object.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjId(pub usize);

#[derive(Debug, Error)]
pub enum CategoryError {
    #[error("category failed validation:\n{0}")]
    Invalid(ValidationReport),
    #[error("object mismatch: {0}")]
    ObjectMismatch(String),
    #[error("malformed morphism: {0}")]
    Shape(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("invalid functor `{name}`: {reason}")]
    Functor { name: String, reason: String },
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// Raw structure constants of a category, before validation.
#[derive(Clone, Debug)]
pub struct CategoryTables {
    pub field: FieldSpec,
    pub objects: Vec<String>,
    /// Basis labels of `Hom(x, y)`, indexed by `x * n + y`.
    pub hom_basis: Vec<Vec<String>>,
    /// Position of `id_x` inside the basis of `Hom(x, x)`.
    pub identity_index: Vec<usize>,
    /// `comp[(x * n + y) * n + z][c * dim(x, y) + b]` holds the coordinates of
    /// `c ∘ b` in the basis of `Hom(x, z)`, for `b: x -> y` and `c: y -> z`.
    pub comp: Vec<Vec<Vec<Scalar>>>,
}

impl CategoryTables {
    fn n(&self) -> usize {
        self.objects.len()
    }

    fn dim(&self, x: usize, y: usize) -> usize {
        self.hom_basis[x * self.n() + y].len()
    }

    fn cell(&self, x: usize, y: usize, z: usize) -> &[Vec<Scalar>] {
        let n = self.n();
        &self.comp[(x * n + y) * n + z]
    }

    fn basis_product(&self, x: usize, y: usize, z: usize, c: usize, b: usize) -> &[Scalar] {
        &self.cell(x, y, z)[c * self.dim(x, y) + b]
    }

    fn compose_coords(&self, x: usize, y: usize, z: usize, c: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim(x, z)];
        for (ci, cv) in c.iter().enumerate() {
            if cv.is_zero() {
                continue;
            }
            for (bi, bv) in b.iter().enumerate() {
                if bv.is_zero() {
                    continue;
                }
                axpy(&mut out, &(cv * bv), self.basis_product(x, y, z, ci, bi));
            }
        }
        out
    }

    fn check_shape(&self) -> Vec<Violation> {
        let n = self.n();
        let mut out = Vec::new();
        if self.hom_basis.len() != n * n || self.identity_index.len() != n || self.comp.len() != n * n * n {
            out.push(Violation::Shape("table sizes do not match the object count".into()));
            return out;
        }
        for x in 0..n {
            if self.identity_index[x] >= self.dim(x, x) {
                out.push(Violation::Shape(format!("identity index out of range at {}", self.objects[x])));
            }
            for y in 0..n {
                for z in 0..n {
                    let cell = self.cell(x, y, z);
                    if cell.len() != self.dim(x, y) * self.dim(y, z)
                        || cell.iter().any(|v| v.len() != self.dim(x, z))
                    {
                        out.push(Violation::Shape(format!(
                            "composition cell ({}, {}, {}) has the wrong size",
                            self.objects[x], self.objects[y], self.objects[z]
                        )));
                    }
                }
            }
        }
        out
    }
}

/// A single failed structural check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Shape(String),
    UnitLaw { object: String, morphism: String, side: &'static str },
    Associativity { a: String, b: String, c: String },
    NotSplitLocal { object: String, reason: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape(s) => write!(f, "shape: {s}"),
            Violation::UnitLaw { object, morphism, side } => {
                write!(f, "unit law: id_{object} fails as {side} unit on {morphism}")
            }
            Violation::Associativity { a, b, c } => {
                write!(f, "associativity: ({c} ∘ {b}) ∘ {a} != {c} ∘ ({b} ∘ {a})")
            }
            Violation::NotSplitLocal { object, reason } => {
                write!(f, "End({object}) is not split-local: {reason}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

/// Checks associativity on basis triples, both unit laws, and that each endomorphism
/// ring is `K·id ⊕ N` with `N` (spanned by the non-identity basis elements) a nilpotent ideal.
pub fn validate_category(t: &CategoryTables) -> ValidationReport {
    let mut violations = t.check_shape();
    if !violations.is_empty() {
        return ValidationReport { violations };
    }
    let n = t.n();
    let label = |x: usize, y: usize, k: usize| t.hom_basis[x * n + y][k].clone();

    for x in 0..n {
        for y in 0..n {
            let id_x = t.identity_index[x];
            let id_y = t.identity_index[y];
            for b in 0..t.dim(x, y) {
                let e = unit(t.field, t.dim(x, y), b);
                if t.basis_product(x, x, y, b, id_x) != e.as_slice() {
                    violations.push(Violation::UnitLaw {
                        object: t.objects[x].clone(),
                        morphism: label(x, y, b),
                        side: "right",
                    });
                }
                if t.basis_product(x, y, y, id_y, b) != e.as_slice() {
                    violations.push(Violation::UnitLaw {
                        object: t.objects[y].clone(),
                        morphism: label(x, y, b),
                        side: "left",
                    });
                }
            }
        }
    }

    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for w in 0..n {
                    for a in 0..t.dim(x, y) {
                        for b in 0..t.dim(y, z) {
                            let ba = t.basis_product(x, y, z, b, a);
                            for c in 0..t.dim(z, w) {
                                let cb = t.basis_product(y, z, w, c, b);
                                let left = t.compose_coords(x, y, w, cb, &unit(t.field, t.dim(x, y), a));
                                let right = t.compose_coords(x, z, w, &unit(t.field, t.dim(z, w), c), ba);
                                if left != right {
                                    violations.push(Violation::Associativity {
                                        a: label(x, y, a),
                                        b: label(y, z, b),
                                        c: label(z, w, c),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    for x in 0..n {
        if let Some(reason) = split_local_failure(t, x) {
            violations.push(Violation::NotSplitLocal { object: t.objects[x].clone(), reason });
        }
    }
    ValidationReport { violations }
}

fn split_local_failure(t: &CategoryTables, x: usize) -> Option<String> {
    let d = t.dim(x, x);
    let id = t.identity_index[x];
    let radical: Vec<Vec<Scalar>> = (0..d).filter(|&k| k != id).map(|k| unit(t.field, d, k)).collect();
    let n = t.n();
    for a in (0..d).filter(|&k| k != id) {
        for b in (0..d).filter(|&k| k != id) {
            if !t.basis_product(x, x, x, b, a)[id].is_zero() {
                return Some(format!(
                    "{} ∘ {} has an identity component",
                    t.hom_basis[x * n + x][b],
                    t.hom_basis[x * n + x][a]
                ));
            }
        }
    }
    // powers of the radical must reach zero within dim steps
    let mut power = radical.clone();
    for _ in 0..=d {
        if power.iter().all(|v| is_zero_vec(v)) {
            return None;
        }
        let mut next = Vec::new();
        for p in &power {
            for r in &radical {
                next.push(t.compose_coords(x, x, x, r, p));
            }
        }
        let sub = crate::exactla::Subspace::canonicalize(t.field, next, d).expect("endomorphism length");
        power = sub.basis().to_vec();
    }
    Some("the non-identity basis endomorphisms do not span a nilpotent ideal".into())
}

/// A formal direct sum of indecomposables, one slot per summand.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FormalObject {
    slots: Vec<ObjId>,
}

impl FormalObject {
    pub fn new(slots: Vec<ObjId>) -> Self {
        FormalObject { slots }
    }

    pub fn zero() -> Self {
        FormalObject { slots: Vec::new() }
    }

    pub fn single(x: ObjId) -> Self {
        FormalObject { slots: vec![x] }
    }

    pub fn slots(&self) -> &[ObjId] {
        &self.slots
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn as_indecomposable(&self) -> Option<ObjId> {
        match self.slots.as_slice() {
            [x] => Some(*x),
            _ => None,
        }
    }

    /// Summand multiplicities.
    pub fn multiset(&self) -> BTreeMap<ObjId, usize> {
        let mut m = BTreeMap::new();
        for &x in &self.slots {
            *m.entry(x).or_insert(0) += 1;
        }
        m
    }

    pub fn without_slot(&self, slot: usize) -> FormalObject {
        let mut slots = self.slots.clone();
        slots.remove(slot);
        FormalObject { slots }
    }

    pub fn permuted(&self, order: &[usize]) -> FormalObject {
        FormalObject { slots: order.iter().map(|&i| self.slots[i]).collect() }
    }
}

/// A matrix morphism between formal objects. `entries[j][i]` holds the coordinates of the
/// component from source slot `i` to target slot `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    source: FormalObject,
    target: FormalObject,
    entries: Vec<Vec<Vec<Scalar>>>,
}

impl Morphism {
    pub fn source(&self) -> &FormalObject {
        &self.source
    }

    pub fn target(&self) -> &FormalObject {
        &self.target
    }

    pub fn entry(&self, j: usize, i: usize) -> &[Scalar] {
        &self.entries[j][i]
    }

    pub fn entries(&self) -> &[Vec<Vec<Scalar>>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|v| is_zero_vec(v))
    }

    /// Drops one source slot (one column).
    pub fn without_source_slot(&self, slot: usize) -> Morphism {
        let mut entries = self.entries.clone();
        for row in entries.iter_mut() {
            row.remove(slot);
        }
        Morphism { source: self.source.without_slot(slot), target: self.target.clone(), entries }
    }

    /// Drops one target slot (one row).
    pub fn without_target_slot(&self, slot: usize) -> Morphism {
        let mut entries = self.entries.clone();
        entries.remove(slot);
        Morphism { source: self.source.clone(), target: self.target.without_slot(slot), entries }
    }

    /// Reorders source slots: new slot `k` is old slot `order[k]`.
    pub fn permute_source(&self, order: &[usize]) -> Morphism {
        let entries = self
            .entries
            .iter()
            .map(|row| order.iter().map(|&i| row[i].clone()).collect())
            .collect();
        Morphism { source: self.source.permuted(order), target: self.target.clone(), entries }
    }

    /// Reorders target slots: new slot `k` is old slot `order[k]`.
    pub fn permute_target(&self, order: &[usize]) -> Morphism {
        let entries = order.iter().map(|&j| self.entries[j].clone()).collect();
        Morphism { source: self.source.clone(), target: self.target.permuted(order), entries }
    }

    /// Component between two slots, as a morphism of indecomposables.
    pub fn component(&self, j: usize, i: usize) -> Morphism {
        Morphism {
            source: FormalObject::single(self.source.slots[i]),
            target: FormalObject::single(self.target.slots[j]),
            entries: vec![vec![self.entries[j][i].clone()]],
        }
    }
}

/// A K-linear autoequivalence given by an object permutation and its action on Hom bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorData {
    pub name: String,
    pub object_map: Vec<ObjId>,
    /// `hom_maps[x * n + y]`: coordinates in `Hom(x, y)` to coordinates in `Hom(Fx, Fy)`.
    pub hom_maps: Vec<LinMap>,
}

impl FunctorData {
    pub fn identity(cat: &PresentedCategory, name: &str) -> FunctorData {
        let n = cat.object_count();
        FunctorData {
            name: name.to_string(),
            object_map: (0..n).map(ObjId).collect(),
            hom_maps: (0..n * n)
                .map(|k| LinMap::identity(cat.field(), cat.hom_dim_ind(ObjId(k / n), ObjId(k % n))))
                .collect(),
        }
    }

    pub fn map_object(&self, x: ObjId) -> ObjId {
        self.object_map[x.0]
    }

    pub fn map_formal(&self, obj: &FormalObject) -> FormalObject {
        FormalObject::new(obj.slots().iter().map(|&x| self.map_object(x)).collect())
    }

    pub fn hom_map(&self, x: ObjId, y: ObjId) -> &LinMap {
        &self.hom_maps[x.0 * self.object_map.len() + y.0]
    }

    /// The quasi-inverse, which for these strict data is an honest inverse.
    pub fn inverse(&self) -> FunctorData {
        let n = self.object_map.len();
        let mut object_map = vec![ObjId(0); n];
        for (x, &fx) in self.object_map.iter().enumerate() {
            object_map[fx.0] = ObjId(x);
        }
        let mut hom_maps = vec![None; n * n];
        for x in 0..n {
            for y in 0..n {
                let (fx, fy) = (self.object_map[x].0, self.object_map[y].0);
                hom_maps[fx * n + fy] = Some(
                    inverse_matrix(&self.hom_maps[x * n + y]).expect("validated functor has invertible hom maps"),
                );
            }
        }
        FunctorData {
            name: format!("{}^-1", self.name),
            object_map,
            hom_maps: hom_maps.into_iter().map(|m| m.expect("object map is a permutation")).collect(),
        }
    }
}

fn inverse_matrix(m: &LinMap) -> Option<LinMap> {
    if !m.is_invertible() {
        return None;
    }
    let n = m.rows();
    let cols = (0..n)
        .map(|i| m.solve(&unit(m.field(), n, i)).ok().flatten())
        .collect::<Option<Vec<_>>>()?;
    LinMap::from_columns(m.field(), n, &cols).ok()
}

/// A validated presented category, optionally carrying named functors (`shift`, `tau`, ...).
#[derive(Clone, Debug)]
pub struct PresentedCategory {
    tables: CategoryTables,
    functors: Vec<FunctorData>,
}

impl PresentedCategory {
    /// Validates the tables and refuses them if any structural check fails.
    pub fn new(tables: CategoryTables) -> Result<Self, CategoryError> {
        let report = validate_category(&tables);
        if !report.is_valid() {
            return Err(CategoryError::Invalid(report));
        }
        Ok(PresentedCategory { tables, functors: Vec::new() })
    }

    pub fn tables(&self) -> &CategoryTables {
        &self.tables
    }

    pub fn field(&self) -> FieldSpec {
        self.tables.field
    }

    pub fn object_count(&self) -> usize {
        self.tables.n()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> {
        (0..self.object_count()).map(ObjId)
    }

    pub fn object_name(&self, x: ObjId) -> &str {
        &self.tables.objects[x.0]
    }

    pub fn object_id(&self, name: &str) -> Result<ObjId, CategoryError> {
        self.tables
            .objects
            .iter()
            .position(|o| o == name)
            .map(ObjId)
            .ok_or_else(|| CategoryError::UnknownObject(name.to_string()))
    }

    pub fn hom_dim_ind(&self, x: ObjId, y: ObjId) -> usize {
        self.tables.dim(x.0, y.0)
    }

    pub fn basis_labels(&self, x: ObjId, y: ObjId) -> &[String] {
        &self.tables.hom_basis[x.0 * self.object_count() + y.0]
    }

    pub fn identity_index(&self, x: ObjId) -> usize {
        self.tables.identity_index[x.0]
    }

    pub fn identity_coords(&self, x: ObjId) -> Vec<Scalar> {
        unit(self.field(), self.hom_dim_ind(x, x), self.identity_index(x))
    }

    /// Coordinates of `c ∘ b` for `b ∈ Hom(x, y)`, `c ∈ Hom(y, z)`.
    pub fn compose_coords(&self, x: ObjId, y: ObjId, z: ObjId, c: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.tables.compose_coords(x.0, y.0, z.0, c, b)
    }

    /// Coordinates of `basis_k ∘ b`.
    fn basis_after(&self, x: ObjId, y: ObjId, z: ObjId, k: usize, b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field().zero(); self.hom_dim_ind(x, z)];
        for (bi, bv) in b.iter().enumerate() {
            axpy(&mut out, bv, self.tables.basis_product(x.0, y.0, z.0, k, bi));
        }
        out
    }

    /// Coordinates of `c ∘ basis_k`.
    fn basis_before(&self, x: ObjId, y: ObjId, z: ObjId, c: &[Scalar], k: usize) -> Vec<Scalar> {
        let mut out = vec![self.field().zero(); self.hom_dim_ind(x, z)];
        for (ci, cv) in c.iter().enumerate() {
            axpy(&mut out, cv, self.tables.basis_product(x.0, y.0, z.0, ci, k));
        }
        out
    }

    /// Linear map `Hom(x, y) -> Hom(w, y)`, `s ↦ s ∘ b` for a fixed `b: w -> x`.
    pub fn precompose_ind(&self, w: ObjId, x: ObjId, y: ObjId, b: &[Scalar]) -> LinMap {
        let cols: Vec<Vec<Scalar>> = (0..self.hom_dim_ind(x, y))
            .map(|k| self.basis_after(w, x, y, k, b))
            .collect();
        LinMap::from_columns(self.field(), self.hom_dim_ind(w, y), &cols).expect("consistent dims")
    }

    /// Linear map `Hom(x, y) -> Hom(x, z)`, `s ↦ c ∘ s` for a fixed `c: y -> z`.
    pub fn postcompose_ind(&self, x: ObjId, y: ObjId, z: ObjId, c: &[Scalar]) -> LinMap {
        let cols: Vec<Vec<Scalar>> = (0..self.hom_dim_ind(x, y))
            .map(|k| self.basis_before(x, y, z, c, k))
            .collect();
        LinMap::from_columns(self.field(), self.hom_dim_ind(x, z), &cols).expect("consistent dims")
    }

    pub fn functors(&self) -> &[FunctorData] {
        &self.functors
    }

    pub fn functor(&self, name: &str) -> Option<&FunctorData> {
        self.functors.iter().find(|f| f.name == name)
    }

    /// Validates and attaches a functor, replacing any functor with the same name.
    pub fn with_functor(mut self, functor: FunctorData) -> Result<Self, CategoryError> {
        self.check_functor(&functor)?;
        self.functors.retain(|f| f.name != functor.name);
        self.functors.push(functor);
        Ok(self)
    }

    pub fn check_functor(&self, f: &FunctorData) -> Result<(), CategoryError> {
        let n = self.object_count();
        let err = |reason: String| CategoryError::Functor { name: f.name.clone(), reason };
        let mut seen = vec![false; n];
        if f.object_map.len() != n || f.hom_maps.len() != n * n {
            return Err(err("wrong number of object or hom maps".into()));
        }
        for y in &f.object_map {
            if y.0 >= n || std::mem::replace(&mut seen[y.0], true) {
                return Err(err("object map is not a permutation".into()));
            }
        }
        for x in self.objects() {
            for y in self.objects() {
                let m = f.hom_map(x, y);
                let (fx, fy) = (f.map_object(x), f.map_object(y));
                if m.cols() != self.hom_dim_ind(x, y) || m.rows() != self.hom_dim_ind(fx, fy) {
                    return Err(err(format!(
                        "hom map {} -> {} has the wrong shape",
                        self.object_name(x),
                        self.object_name(y)
                    )));
                }
                if !m.is_invertible() {
                    return Err(err(format!(
                        "hom map {} -> {} is not invertible",
                        self.object_name(x),
                        self.object_name(y)
                    )));
                }
            }
            let image = f.hom_map(x, x).apply(&self.identity_coords(x))?;
            if image != self.identity_coords(f.map_object(x)) {
                return Err(err(format!("does not preserve id_{}", self.object_name(x))));
            }
        }
        for x in self.objects() {
            for y in self.objects() {
                for z in self.objects() {
                    for b in 0..self.hom_dim_ind(x, y) {
                        let bv = unit(self.field(), self.hom_dim_ind(x, y), b);
                        let fb = f.hom_map(x, y).apply(&bv)?;
                        for c in 0..self.hom_dim_ind(y, z) {
                            let cv = unit(self.field(), self.hom_dim_ind(y, z), c);
                            let fc = f.hom_map(y, z).apply(&cv)?;
                            let lhs = f.hom_map(x, z).apply(&self.compose_coords(x, y, z, &cv, &bv))?;
                            let (fx, fy, fz) = (f.map_object(x), f.map_object(y), f.map_object(z));
                            let rhs = self.compose_coords(fx, fy, fz, &fc, &fb);
                            if lhs != rhs {
                                return Err(err(format!(
                                    "F({} ∘ {}) != F({}) ∘ F({})",
                                    self.basis_labels(y, z)[c],
                                    self.basis_labels(x, y)[b],
                                    self.basis_labels(y, z)[c],
                                    self.basis_labels(x, y)[b]
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    // ---- formal objects and morphisms ----

    pub fn formal(&self, names: &[&str]) -> Result<FormalObject, CategoryError> {
        Ok(FormalObject::new(
            names.iter().map(|n| self.object_id(n)).collect::<Result<_, _>>()?,
        ))
    }

    /// `dim Hom(A, B)` as the sum over summand pairs.
    pub fn hom_dim(&self, a: &FormalObject, b: &FormalObject) -> usize {
        a.slots()
            .iter()
            .map(|&x| b.slots().iter().map(|&y| self.hom_dim_ind(x, y)).sum::<usize>())
            .sum()
    }

    pub fn morphism(
        &self,
        source: FormalObject,
        target: FormalObject,
        entries: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<Morphism, CategoryError> {
        if entries.len() != target.len() {
            return Err(CategoryError::Shape(format!(
                "expected {} rows, found {}",
                target.len(),
                entries.len()
            )));
        }
        for (j, row) in entries.iter().enumerate() {
            if row.len() != source.len() {
                return Err(CategoryError::Shape(format!(
                    "row {j} has {} cells, expected {}",
                    row.len(),
                    source.len()
                )));
            }
            for (i, cell) in row.iter().enumerate() {
                let d = self.hom_dim_ind(source.slots()[i], target.slots()[j]);
                if cell.len() != d {
                    return Err(CategoryError::Shape(format!(
                        "cell ({j}, {i}) has {} coordinates, expected {d}",
                        cell.len()
                    )));
                }
                if cell.iter().any(|s| s.field() != self.field()) {
                    return Err(CategoryError::Shape(format!("cell ({j}, {i}) is over another field")));
                }
            }
        }
        Ok(Morphism { source, target, entries })
    }

    /// A morphism between two indecomposables.
    pub fn basic(&self, x: ObjId, y: ObjId, coords: Vec<Scalar>) -> Result<Morphism, CategoryError> {
        self.morphism(FormalObject::single(x), FormalObject::single(y), vec![vec![coords]])
    }

    pub fn zero_morphism(&self, source: &FormalObject, target: &FormalObject) -> Morphism {
        let entries = target
            .slots()
            .iter()
            .map(|&y| {
                source
                    .slots()
                    .iter()
                    .map(|&x| vec![self.field().zero(); self.hom_dim_ind(x, y)])
                    .collect()
            })
            .collect();
        Morphism { source: source.clone(), target: target.clone(), entries }
    }

    pub fn identity(&self, obj: &FormalObject) -> Morphism {
        let mut m = self.zero_morphism(obj, obj);
        for (i, &x) in obj.slots().iter().enumerate() {
            m.entries[i][i] = self.identity_coords(x);
        }
        m
    }

    /// `g ∘ f`: first `f`, then `g`.
    pub fn compose(&self, g: &Morphism, f: &Morphism) -> Result<Morphism, CategoryError> {
        if f.target != g.source {
            return Err(CategoryError::ObjectMismatch(
                "target of the first morphism differs from source of the second".into(),
            ));
        }
        let mid = f.target.slots();
        let mut out = self.zero_morphism(&f.source, &g.target);
        for (k, &z) in g.target.slots().iter().enumerate() {
            for (i, &x) in f.source.slots().iter().enumerate() {
                for (j, &y) in mid.iter().enumerate() {
                    let c = self.compose_coords(x, y, z, &g.entries[k][j], &f.entries[j][i]);
                    let cell = &mut out.entries[k][i];
                    for (a, b) in cell.iter_mut().zip(&c) {
                        *a = &*a + b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, f: &Morphism, g: &Morphism) -> Result<Morphism, CategoryError> {
        if f.source != g.source || f.target != g.target {
            return Err(CategoryError::ObjectMismatch("summands have different endpoints".into()));
        }
        let mut out = f.clone();
        for (row, grow) in out.entries.iter_mut().zip(&g.entries) {
            for (cell, gcell) in row.iter_mut().zip(grow) {
                for (a, b) in cell.iter_mut().zip(gcell) {
                    *a = &*a + b;
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar, f: &Morphism) -> Morphism {
        let mut out = f.clone();
        for x in out.entries.iter_mut().flatten().flatten() {
            *x = s * &*x;
        }
        out
    }

    /// Flattens a morphism into coordinates of `Hom(A, B)`: target slot major, source slot minor.
    pub fn flatten(&self, f: &Morphism) -> Vec<Scalar> {
        f.entries.iter().flatten().flatten().cloned().collect()
    }

    pub fn unflatten(&self, source: &FormalObject, target: &FormalObject, coords: &[Scalar]) -> Morphism {
        let mut m = self.zero_morphism(source, target);
        let mut pos = 0;
        for row in m.entries.iter_mut() {
            for cell in row.iter_mut() {
                let d = cell.len();
                cell.clone_from_slice(&coords[pos..pos + d]);
                pos += d;
            }
        }
        debug_assert_eq!(pos, coords.len());
        m
    }

    /// `Hom(M, A) -> Hom(M, B)`, `h ↦ f ∘ h`, in flattened coordinates.
    pub fn postcompose_map(&self, f: &Morphism, m: &FormalObject) -> LinMap {
        let (a, b) = (&f.source, &f.target);
        let mut columns = Vec::with_capacity(self.hom_dim(m, a));
        for i in 0..a.len() {
            for (s, &ms) in m.slots().iter().enumerate() {
                let ai = a.slots()[i];
                for k in 0..self.hom_dim_ind(ms, ai) {
                    // f ∘ (basis_k placed at entry (i, s))
                    let mut out = self.zero_morphism(m, b);
                    for (j, &bj) in b.slots().iter().enumerate() {
                        out.entries[j][s] = self.basis_before(ms, ai, bj, &f.entries[j][i], k);
                    }
                    columns.push(self.flatten(&out));
                }
            }
        }
        LinMap::from_columns(self.field(), self.hom_dim(m, b), &columns).expect("consistent dims")
    }

    /// `Hom(B, M) -> Hom(A, M)`, `h ↦ h ∘ f`, in flattened coordinates.
    pub fn precompose_map(&self, f: &Morphism, m: &FormalObject) -> LinMap {
        let (a, b) = (&f.source, &f.target);
        let mut columns = Vec::with_capacity(self.hom_dim(b, m));
        for (s, &ms) in m.slots().iter().enumerate() {
            for (j, &bj) in b.slots().iter().enumerate() {
                for k in 0..self.hom_dim_ind(bj, ms) {
                    // (basis_k placed at entry (s, j)) ∘ f
                    let mut out = self.zero_morphism(a, m);
                    for (i, &ai) in a.slots().iter().enumerate() {
                        out.entries[s][i] = self.basis_after(ai, bj, ms, k, &f.entries[j][i]);
                    }
                    columns.push(self.flatten(&out));
                }
            }
        }
        LinMap::from_columns(self.field(), self.hom_dim(a, m), &columns).expect("consistent dims")
    }

    /// A two-sided inverse, if one exists.
    pub fn inverse(&self, f: &Morphism) -> Option<Morphism> {
        if f.source.multiset() != f.target.multiset() {
            return None;
        }
        let (a, b) = (&f.source, &f.target);
        let left = self.precompose_map(f, a).solve(&self.flatten(&self.identity(a))).ok()??;
        let right = self.postcompose_map(f, b).solve(&self.flatten(&self.identity(b))).ok()??;
        // a left inverse and a right inverse of the same map coincide
        let g = self.unflatten(b, a, &left);
        debug_assert_eq!(g, self.unflatten(b, a, &right));
        Some(g)
    }

    pub fn is_isomorphism(&self, f: &Morphism) -> bool {
        self.inverse(f).is_some()
    }

    pub fn apply_functor(&self, functor: &FunctorData, f: &Morphism) -> Morphism {
        let source = functor.map_formal(&f.source);
        let target = functor.map_formal(&f.target);
        let entries = f
            .entries
            .iter()
            .zip(f.target.slots())
            .map(|(row, &y)| {
                row.iter()
                    .zip(f.source.slots())
                    .map(|(cell, &x)| functor.hom_map(x, y).apply(cell).expect("validated functor shape"))
                    .collect()
            })
            .collect();
        Morphism { source, target, entries }
    }

    // ---- printing ----

    /// Renders a coordinate vector of `Hom(x, y)` as a linear combination of basis labels.
    pub fn format_coords(&self, x: ObjId, y: ObjId, coords: &[Scalar]) -> String {
        let labels = self.basis_labels(x, y);
        let mut out = String::new();
        for (c, label) in coords.iter().zip(labels) {
            if c.is_zero() {
                continue;
            }
            let (neg, abs) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if abs.is_one() {
                out.push_str(label);
            } else {
                out.push_str(&format!("{abs}*{label}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn format_object(&self, obj: &FormalObject) -> String {
        if obj.is_zero() {
            return "0".into();
        }
        obj.slots().iter().map(|&x| self.object_name(x)).collect::<Vec<_>>().join(" ⊕ ")
    }

    pub fn format_morphism(&self, f: &Morphism) -> String {
        if f.source.len() == 1 && f.target.len() == 1 {
            return self.format_coords(f.source.slots[0], f.target.slots[0], &f.entries[0][0]);
        }
        let rows: Vec<String> = f
            .entries
            .iter()
            .zip(f.target.slots())
            .map(|(row, &y)| {
                row.iter()
                    .zip(f.source.slots())
                    .map(|(cell, &x)| self.format_coords(x, y, cell))
                    .collect::<Vec<_>>()
                    .join(", ")
            })
            .collect();
        format!("[{}]", rows.join("; "))
    }
}
