//! Ideal approximations, their minimization, minimality tests and the
//! irreducibility spaces `I/JI` and `I/IJ`.

use std::fmt;

use serde_json::{json, Value};

use crate::catcore::{FormalObject, Morphism, ObjId, PresentedCategory};
use crate::exactla::{Scalar, Subspace};
use crate::ideals::Ideal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// A right approximation ends at `anchor`; a left one starts there.
#[derive(Clone, Debug)]
pub struct Approximation {
    pub side: Side,
    pub anchor: FormalObject,
    pub map: Morphism,
    pub minimal: bool,
}

impl Approximation {
    /// The object other than the anchor.
    pub fn other_end(&self) -> &FormalObject {
        match self.side {
            Side::Right => self.map.source(),
            Side::Left => self.map.target(),
        }
    }

    pub fn to_json(&self, cat: &PresentedCategory) -> Value {
        let names = |o: &FormalObject| -> Vec<String> { o.slots().iter().map(|&x| cat.object_name(x).to_string()).collect() };
        let matrix: Vec<Vec<String>> = (0..self.map.target().len())
            .map(|j| {
                (0..self.map.source().len())
                    .map(|i| {
                        cat.format_coords(self.map.source().slots()[i], self.map.target().slots()[j], self.map.entry(j, i))
                    })
                    .collect()
            })
            .collect();
        json!({
            "side": self.side.to_string(),
            "anchor": names(&self.anchor),
            "object": names(self.other_end()),
            "minimal": self.minimal,
            "map": matrix,
        })
    }
}

/// `⊕_M M^{dim I(M,T)} → T`, one column per basis element of each `I(M, T)`.
pub fn right_approximation(ideal: &Ideal, anchor: &FormalObject) -> Approximation {
    let cat = ideal.category();
    let mut slots = Vec::new();
    let mut columns: Vec<Vec<Vec<Scalar>>> = Vec::new();
    for m in cat.objects() {
        for v in ideal.formal_subspace(&FormalObject::single(m), anchor).basis() {
            slots.push(m);
            columns.push(split_blocks(cat, std::slice::from_ref(&m), anchor.slots(), v).into_iter().map(|mut r| r.remove(0)).collect());
        }
    }
    let entries = (0..anchor.len())
        .map(|j| columns.iter().map(|col| col[j].clone()).collect())
        .collect();
    let map = cat.morphism(FormalObject::new(slots), anchor.clone(), entries).expect("column shapes");
    Approximation { side: Side::Right, anchor: anchor.clone(), map, minimal: false }
}

/// `T → ⊕_M M^{dim I(T,M)}`, one row per basis element of each `I(T, M)`.
pub fn left_approximation(ideal: &Ideal, anchor: &FormalObject) -> Approximation {
    let cat = ideal.category();
    let mut slots = Vec::new();
    let mut rows: Vec<Vec<Vec<Scalar>>> = Vec::new();
    for m in cat.objects() {
        for v in ideal.formal_subspace(anchor, &FormalObject::single(m)).basis() {
            slots.push(m);
            rows.push(split_blocks(cat, anchor.slots(), std::slice::from_ref(&m), v).remove(0));
        }
    }
    let map = cat.morphism(anchor.clone(), FormalObject::new(slots), rows).expect("row shapes");
    Approximation { side: Side::Left, anchor: anchor.clone(), map, minimal: false }
}

/// Cuts a flattened `Hom(A, B)` vector into `entries[j][i]`.
fn split_blocks(cat: &PresentedCategory, a: &[ObjId], b: &[ObjId], v: &[Scalar]) -> Vec<Vec<Vec<Scalar>>> {
    let mut pos = 0;
    b.iter()
        .map(|&y| {
            a.iter()
                .map(|&x| {
                    let d = cat.hom_dim_ind(x, y);
                    let cell = v[pos..pos + d].to_vec();
                    pos += d;
                    cell
                })
                .collect()
        })
        .collect()
}

/// Endomorphisms `h` of the non-anchor end with `f ∘ h = 0` (right) or `h ∘ f = 0` (left).
fn annihilator(cat: &PresentedCategory, f: &Morphism, side: Side) -> Subspace {
    match side {
        Side::Right => cat.postcompose_map(f, f.source()).kernel(),
        Side::Left => cat.precompose_map(f, f.target()).kernel(),
    }
}

/// First block `(b, a)` of a flattened endomorphism of `obj` with an invertible entry.
fn invertible_block(cat: &PresentedCategory, obj: &FormalObject, h: &[Scalar]) -> Option<(usize, usize)> {
    let blocks = split_blocks(cat, obj.slots(), obj.slots(), h);
    for (b, row) in blocks.iter().enumerate() {
        for (a, cell) in row.iter().enumerate() {
            let (sa, sb) = (obj.slots()[a], obj.slots()[b]);
            if sa == sb && !cell[cat.identity_index(sa)].is_zero() {
                return Some((b, a));
            }
        }
    }
    None
}

fn radical_witness(cat: &PresentedCategory, obj: &FormalObject, kernel: &Subspace) -> Option<(usize, usize)> {
    kernel.basis().iter().find_map(|h| invertible_block(cat, obj, h))
}

/// Right minimal: the annihilator of `f` in `End(source)` lies in the radical.
pub fn is_right_minimal(cat: &PresentedCategory, f: &Morphism) -> bool {
    radical_witness(cat, f.source(), &annihilator(cat, f, Side::Right)).is_none()
}

/// Left minimal: the annihilator of `f` in `End(target)` lies in the radical.
pub fn is_left_minimal(cat: &PresentedCategory, f: &Morphism) -> bool {
    radical_witness(cat, f.target(), &annihilator(cat, f, Side::Left)).is_none()
}

/// Removes redundant summands until the map is minimal.
///
/// If `f ∘ h = 0` and `h_{ba}` is invertible then `f_b = -Σ_{c≠b} f_c h_{ca} h_{ba}⁻¹`, so
/// column `b` is recovered from the others and can be dropped without losing the
/// factorization property. The left case drops rows.
pub fn minimize(cat: &PresentedCategory, approx: &Approximation) -> Approximation {
    let mut map = approx.map.clone();
    loop {
        let kernel = annihilator(cat, &map, approx.side);
        let end = match approx.side {
            Side::Right => map.source().clone(),
            Side::Left => map.target().clone(),
        };
        match radical_witness(cat, &end, &kernel) {
            None => break,
            Some((b, a)) => {
                map = match approx.side {
                    Side::Right => map.without_source_slot(b),
                    Side::Left => map.without_target_slot(a),
                };
            }
        }
    }
    Approximation { side: approx.side, anchor: approx.anchor.clone(), map, minimal: true }
}

/// Minimal right approximation (the `I`-sink map) of `anchor`.
pub fn sink_map(ideal: &Ideal, anchor: &FormalObject) -> Approximation {
    minimize(ideal.category(), &right_approximation(ideal, anchor))
}

/// Minimal left approximation (the `I`-source map) of `anchor`.
pub fn source_map(ideal: &Ideal, anchor: &FormalObject) -> Approximation {
    minimize(ideal.category(), &left_approximation(ideal, anchor))
}

/// `h` with `f ∘ h = g`, if any.
pub fn factor_through_right(cat: &PresentedCategory, f: &Morphism, g: &Morphism) -> Option<Morphism> {
    if g.target() != f.target() {
        return None;
    }
    let sol = cat.postcompose_map(f, g.source()).solve(&cat.flatten(g)).ok()??;
    Some(cat.unflatten(g.source(), f.source(), &sol))
}

/// `h` with `h ∘ f = g`, if any.
pub fn factor_through_left(cat: &PresentedCategory, f: &Morphism, g: &Morphism) -> Option<Morphism> {
    if g.source() != f.source() {
        return None;
    }
    let sol = cat.precompose_map(f, g.target()).solve(&cat.flatten(g)).ok()??;
    Some(cat.unflatten(f.target(), g.target(), &sol))
}

/// A basis morphism of `I(M, target f)` that does not factor through `f`.
pub fn epic_witness(ideal: &Ideal, f: &Morphism) -> Option<Morphism> {
    let cat = ideal.category();
    for m in cat.objects() {
        let single = FormalObject::single(m);
        let post = cat.postcompose_map(f, &single);
        for v in ideal.formal_subspace(&single, f.target()).basis() {
            if post.solve(v).expect("dims agree").is_none() {
                return Some(cat.unflatten(&single, f.target(), v));
            }
        }
    }
    None
}

/// A basis morphism of `I(source f, M)` that does not factor through `f`.
pub fn monic_witness(ideal: &Ideal, f: &Morphism) -> Option<Morphism> {
    let cat = ideal.category();
    for m in cat.objects() {
        let single = FormalObject::single(m);
        let pre = cat.precompose_map(f, &single);
        for v in ideal.formal_subspace(f.source(), &single).basis() {
            if pre.solve(v).expect("dims agree").is_none() {
                return Some(cat.unflatten(f.source(), &single, v));
            }
        }
    }
    None
}

pub fn is_i_epic(ideal: &Ideal, f: &Morphism) -> bool {
    epic_witness(ideal, f).is_none()
}

pub fn is_i_monic(ideal: &Ideal, f: &Morphism) -> bool {
    monic_witness(ideal, f).is_none()
}

pub fn is_right_approximation(ideal: &Ideal, f: &Morphism) -> bool {
    ideal.contains(f) && is_i_epic(ideal, f)
}

pub fn is_left_approximation(ideal: &Ideal, f: &Morphism) -> bool {
    ideal.contains(f) && is_i_monic(ideal, f)
}

/// For minimal approximations `f`, `f2` of the same anchor: an isomorphism `g` between
/// their non-anchor ends with `f = f2 ∘ g` (right) or `f2 = g ∘ f` (left).
pub fn comparison_isomorphism(cat: &PresentedCategory, f: &Morphism, f2: &Morphism, side: Side) -> Option<Morphism> {
    let g = match side {
        Side::Right => factor_through_right(cat, f2, f)?,
        Side::Left => factor_through_left(cat, f, f2)?,
    };
    cat.is_isomorphism(&g).then_some(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IrrClass {
    Left,
    Right,
    Both,
    Neither,
    NotInIdeal,
}

impl fmt::Display for IrrClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IrrClass::Left => "left",
            IrrClass::Right => "right",
            IrrClass::Both => "both",
            IrrClass::Neither => "none",
            IrrClass::NotInIdeal => "not-in-ideal",
        })
    }
}

/// `I` together with `JI` and `IJ`, which measure irreducibility on either side.
#[derive(Clone, Debug)]
pub struct IrreducibleSpaces {
    pub ideal: Ideal,
    /// `JI`: composites `h ∘ g` with `g ∈ I`, `h ∈ J`.
    pub radical_after: Ideal,
    /// `IJ`: composites `g ∘ h` with `h ∈ J`, `g ∈ I`.
    pub radical_before: Ideal,
}

impl IrreducibleSpaces {
    pub fn new(ideal: &Ideal) -> Self {
        let j = Ideal::jacobson(ideal.category());
        IrreducibleSpaces {
            ideal: ideal.clone(),
            radical_after: Ideal::product(ideal, &j).expect("same category"),
            radical_before: Ideal::product(&j, ideal).expect("same category"),
        }
    }

    /// `dim (I/JI)(x, y)`.
    pub fn irr_minus(&self, x: ObjId, y: ObjId) -> usize {
        self.ideal.dim_at(x, y) - self.radical_after.dim_at(x, y)
    }

    /// `dim (I/IJ)(x, y)`.
    pub fn irr_plus(&self, x: ObjId, y: ObjId) -> usize {
        self.ideal.dim_at(x, y) - self.radical_before.dim_at(x, y)
    }

    /// Classifies a morphism between indecomposables; `None` for decomposable endpoints.
    pub fn classify(&self, f: &Morphism) -> Option<IrrClass> {
        let x = f.source().as_indecomposable()?;
        let y = f.target().as_indecomposable()?;
        let v = f.entry(0, 0);
        if !self.ideal.contains_coords(x, y, v) {
            return Some(IrrClass::NotInIdeal);
        }
        let left = !self.radical_after.contains_coords(x, y, v);
        let right = !self.radical_before.contains_coords(x, y, v);
        Some(match (left, right) {
            (true, true) => IrrClass::Both,
            (true, false) => IrrClass::Left,
            (false, true) => IrrClass::Right,
            (false, false) => IrrClass::Neither,
        })
    }

    /// Whether the given morphisms `x -> y` stay linearly independent modulo `JI`.
    pub fn independent_mod_radical_after(&self, x: ObjId, y: ObjId, vectors: &[Vec<Scalar>]) -> bool {
        let base = self.radical_after.component(x, y);
        let grown = base.extend(vectors.iter().cloned()).expect("dims agree");
        grown.dim() == base.dim() + vectors.len()
    }

    /// Whether the given morphisms `x -> y` stay linearly independent modulo `IJ`.
    pub fn independent_mod_radical_before(&self, x: ObjId, y: ObjId, vectors: &[Vec<Scalar>]) -> bool {
        let base = self.radical_before.component(x, y);
        let grown = base.extend(vectors.iter().cloned()).expect("dims agree");
        grown.dim() == base.dim() + vectors.len()
    }
}

pub fn classify_irreducible(ideal: &Ideal, f: &Morphism) -> Option<IrrClass> {
    IrreducibleSpaces::new(ideal).classify(f)
}

pub fn irr_minus_dim(ideal: &Ideal, x: ObjId, y: ObjId) -> usize {
    IrreducibleSpaces::new(ideal).irr_minus(x, y)
}

pub fn irr_plus_dim(ideal: &Ideal, x: ObjId, y: ObjId) -> usize {
    IrreducibleSpaces::new(ideal).irr_plus(x, y)
}
