//! Two-sided ideals of a presented category, stored as one canonical subspace per
//! ordered pair of indecomposables.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde_json::{Map, Value};
use thiserror::Error;

use crate::catcore::{FormalObject, FunctorData, Morphism, ObjId, PresentedCategory};
use crate::exactla::{is_zero_vec, unit, Scalar, Subspace};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IdealError {
    #[error("ideals belong to different categories")]
    CategoryMismatch,
    #[error("not closed: {0}")]
    NotClosed(ClosureViolation),
    #[error("component ({0}, {1}) has the wrong ambient dimension")]
    Shape(String, String),
}

/// A composite that escapes the family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureViolation {
    pub element: String,
    pub with: String,
    pub side: &'static str,
}

impl fmt::Display for ClosureViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            "pre" => write!(f, "{} ∘ {} leaves the family", self.element, self.with),
            _ => write!(f, "{} ∘ {} leaves the family", self.with, self.element),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Ideal {
    cat: Arc<PresentedCategory>,
    comps: Vec<Subspace>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.comps == other.comps
    }
}

impl Eq for Ideal {}

fn all_pairs(n: usize) -> impl Iterator<Item = (ObjId, ObjId)> {
    (0..n).flat_map(move |x| (0..n).map(move |y| (ObjId(x), ObjId(y))))
}

impl Ideal {
    fn idx(&self, x: ObjId, y: ObjId) -> usize {
        x.0 * self.cat.object_count() + y.0
    }

    pub fn category(&self) -> &Arc<PresentedCategory> {
        &self.cat
    }

    pub fn zero(cat: &Arc<PresentedCategory>) -> Ideal {
        let n = cat.object_count();
        let comps = all_pairs(n).map(|(x, y)| Subspace::zero(cat.field(), cat.hom_dim_ind(x, y))).collect();
        Ideal { cat: cat.clone(), comps }
    }

    /// The ideal of all morphisms.
    pub fn full(cat: &Arc<PresentedCategory>) -> Ideal {
        let n = cat.object_count();
        let comps = all_pairs(n).map(|(x, y)| Subspace::full(cat.field(), cat.hom_dim_ind(x, y))).collect();
        Ideal { cat: cat.clone(), comps }
    }

    /// Wraps explicit components after checking two-sided closure.
    pub fn from_components(cat: &Arc<PresentedCategory>, comps: Vec<Subspace>) -> Result<Ideal, IdealError> {
        let n = cat.object_count();
        for (k, (x, y)) in all_pairs(n).enumerate() {
            if comps.get(k).map(Subspace::ambient_dim) != Some(cat.hom_dim_ind(x, y)) {
                return Err(IdealError::Shape(cat.object_name(x).into(), cat.object_name(y).into()));
            }
        }
        let ideal = Ideal { cat: cat.clone(), comps };
        match ideal.closure_violation() {
            Some(v) => Err(IdealError::NotClosed(v)),
            None => Ok(ideal),
        }
    }

    /// The least ideal containing every component of the given morphisms.
    pub fn generate(cat: &Arc<PresentedCategory>, gens: &[Morphism]) -> Ideal {
        let mut seeds = Vec::new();
        for g in gens {
            for (j, &y) in g.target().slots().iter().enumerate() {
                for (i, &x) in g.source().slots().iter().enumerate() {
                    seeds.push((x, y, g.entry(j, i).to_vec()));
                }
            }
        }
        Ideal::zero(cat).saturate(seeds)
    }

    /// Adds the seeds and closes under composition with basis morphisms on both sides.
    fn saturate(mut self, seeds: Vec<(ObjId, ObjId, Vec<Scalar>)>) -> Ideal {
        let cat = self.cat.clone();
        let field = cat.field();
        let mut queue: VecDeque<(ObjId, ObjId, Vec<Scalar>)> = VecDeque::new();
        let add = |ideal: &mut Ideal, queue: &mut VecDeque<_>, x: ObjId, y: ObjId, v: Vec<Scalar>| {
            if is_zero_vec(&v) {
                return;
            }
            let k = ideal.idx(x, y);
            if !ideal.comps[k].contains(&v).expect("component length") {
                ideal.comps[k] = ideal.comps[k].extend([v.clone()]).expect("component length");
                queue.push_back((x, y, v));
            }
        };
        for (x, y, v) in seeds {
            add(&mut self, &mut queue, x, y, v);
        }
        while let Some((x, y, v)) = queue.pop_front() {
            for w in cat.objects() {
                for b in 0..cat.hom_dim_ind(w, x) {
                    let bv = unit(field, cat.hom_dim_ind(w, x), b);
                    let c = cat.compose_coords(w, x, y, &v, &bv);
                    add(&mut self, &mut queue, w, y, c);
                }
            }
            for z in cat.objects() {
                for c in 0..cat.hom_dim_ind(y, z) {
                    let cv = unit(field, cat.hom_dim_ind(y, z), c);
                    let comp = cat.compose_coords(x, y, z, &cv, &v);
                    add(&mut self, &mut queue, x, z, comp);
                }
            }
        }
        self
    }

    /// Non-isomorphisms: full Hom between distinct indecomposables, the non-identity basis
    /// span on endomorphism rings.
    pub fn jacobson(cat: &Arc<PresentedCategory>) -> Ideal {
        let n = cat.object_count();
        let field = cat.field();
        let comps = all_pairs(n)
            .map(|(x, y)| {
                let d = cat.hom_dim_ind(x, y);
                if x == y {
                    let id = cat.identity_index(x);
                    let basis = (0..d).filter(|&k| k != id).map(|k| unit(field, d, k)).collect();
                    Subspace::canonicalize(field, basis, d).expect("unit vectors")
                } else {
                    Subspace::full(field, d)
                }
            })
            .collect();
        Ideal { cat: cat.clone(), comps }
    }

    /// `[D]`: morphisms factoring through sums of objects of `objects`.
    pub fn object_ideal(cat: &Arc<PresentedCategory>, objects: &BTreeSet<ObjId>) -> Ideal {
        let gens: Vec<Morphism> = objects.iter().map(|&x| cat.identity(&FormalObject::single(x))).collect();
        Ideal::generate(cat, &gens)
    }

    fn check_same(&self, other: &Ideal) -> Result<(), IdealError> {
        if Arc::ptr_eq(&self.cat, &other.cat) || self.cat.tables().comp == other.cat.tables().comp {
            Ok(())
        } else {
            Err(IdealError::CategoryMismatch)
        }
    }

    /// Span of `h ∘ g` with `g` in `first` and `h` in `second`, through every indecomposable.
    /// With `first = I` and `second = J` this is `JI`.
    pub fn product(first: &Ideal, second: &Ideal) -> Result<Ideal, IdealError> {
        first.check_same(second)?;
        let cat = &first.cat;
        let n = cat.object_count();
        let comps = all_pairs(n)
            .map(|(x, y)| {
                let mut vs = Vec::new();
                for m in cat.objects() {
                    for g in first.component(x, m).basis() {
                        for h in second.component(m, y).basis() {
                            vs.push(cat.compose_coords(x, m, y, h, g));
                        }
                    }
                }
                Subspace::canonicalize(cat.field(), vs, cat.hom_dim_ind(x, y)).expect("composite length")
            })
            .collect();
        Ok(Ideal { cat: cat.clone(), comps })
    }

    /// `I^n` for `n ≥ 1`.
    pub fn power(&self, n: usize) -> Ideal {
        assert!(n >= 1, "ideal powers start at 1");
        let mut acc = self.clone();
        for _ in 1..n {
            acc = Ideal::product(&acc, self).expect("same category");
        }
        acc
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal, IdealError> {
        self.check_same(other)?;
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.sum(b).expect("same ambient")).collect();
        Ok(Ideal { cat: self.cat.clone(), comps })
    }

    pub fn intersect(&self, other: &Ideal) -> Result<Ideal, IdealError> {
        self.check_same(other)?;
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a.intersect(b).expect("same ambient"))
            .collect();
        Ok(Ideal { cat: self.cat.clone(), comps })
    }

    /// `{F(f) | f ∈ I}`.
    pub fn shift_by(&self, functor: &FunctorData) -> Ideal {
        let cat = &self.cat;
        let mut comps = vec![None; self.comps.len()];
        for (x, y) in all_pairs(cat.object_count()) {
            let (fx, fy) = (functor.map_object(x), functor.map_object(y));
            let image = self.component(x, y).map(functor.hom_map(x, y)).expect("validated functor");
            comps[self.idx(fx, fy)] = Some(image);
        }
        Ideal { cat: cat.clone(), comps: comps.into_iter().map(|c| c.expect("permutation")).collect() }
    }

    pub fn component(&self, x: ObjId, y: ObjId) -> &Subspace {
        &self.comps[self.idx(x, y)]
    }

    pub fn dim_at(&self, x: ObjId, y: ObjId) -> usize {
        self.component(x, y).dim()
    }

    pub fn total_dim(&self) -> usize {
        self.comps.iter().map(Subspace::dim).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Subspace::is_zero)
    }

    /// Per-pair dimensions keyed by object names.
    pub fn dims(&self) -> BTreeMap<(String, String), usize> {
        all_pairs(self.cat.object_count())
            .map(|(x, y)| {
                (
                    (self.cat.object_name(x).to_string(), self.cat.object_name(y).to_string()),
                    self.dim_at(x, y),
                )
            })
            .collect()
    }

    pub fn contains_coords(&self, x: ObjId, y: ObjId, v: &[Scalar]) -> bool {
        self.component(x, y).contains(v).expect("coordinate length")
    }

    /// Every component of `f` lies in the ideal.
    pub fn contains(&self, f: &Morphism) -> bool {
        f.target().slots().iter().enumerate().all(|(j, &y)| {
            f.source()
                .slots()
                .iter()
                .enumerate()
                .all(|(i, &x)| self.contains_coords(x, y, f.entry(j, i)))
        })
    }

    pub fn is_subideal_of(&self, other: &Ideal) -> bool {
        self.comps
            .iter()
            .zip(&other.comps)
            .all(|(a, b)| b.contains_subspace(a).expect("same ambient"))
    }

    /// `Ob(I) = {X : id_X ∈ I}`.
    pub fn objects(&self) -> BTreeSet<ObjId> {
        self.cat
            .objects()
            .filter(|&x| self.contains_coords(x, x, &self.cat.identity_coords(x)))
            .collect()
    }

    pub fn is_object_ideal(&self) -> bool {
        *self == Ideal::object_ideal(&self.cat, &self.objects())
    }

    /// `I(A, B)` for formal sums, in the flattened coordinates of `Hom(A, B)`.
    pub fn formal_subspace(&self, a: &FormalObject, b: &FormalObject) -> Subspace {
        let cat = &self.cat;
        let total = cat.hom_dim(a, b);
        let mut vs = Vec::new();
        let mut offset = 0;
        for &y in b.slots() {
            for &x in a.slots() {
                let d = cat.hom_dim_ind(x, y);
                for v in self.component(x, y).basis() {
                    let mut full = vec![cat.field().zero(); total];
                    full[offset..offset + d].clone_from_slice(v);
                    vs.push(full);
                }
                offset += d;
            }
        }
        Subspace::canonicalize(cat.field(), vs, total).expect("block lengths")
    }

    /// Looks for a basis element whose composite with a basis morphism escapes the family.
    pub fn closure_violation(&self) -> Option<ClosureViolation> {
        let cat = &self.cat;
        let field = cat.field();
        for (x, y) in all_pairs(cat.object_count()) {
            for s in self.component(x, y).basis() {
                for w in cat.objects() {
                    for b in 0..cat.hom_dim_ind(w, x) {
                        let c = cat.compose_coords(w, x, y, s, &unit(field, cat.hom_dim_ind(w, x), b));
                        if !self.contains_coords(w, y, &c) {
                            return Some(ClosureViolation {
                                element: cat.format_coords(x, y, s),
                                with: cat.basis_labels(w, x)[b].clone(),
                                side: "pre",
                            });
                        }
                    }
                }
                for z in cat.objects() {
                    for c in 0..cat.hom_dim_ind(y, z) {
                        let comp = cat.compose_coords(x, y, z, &unit(field, cat.hom_dim_ind(y, z), c), s);
                        if !self.contains_coords(x, z, &comp) {
                            return Some(ClosureViolation {
                                element: cat.format_coords(x, y, s),
                                with: cat.basis_labels(y, z)[c].clone(),
                                side: "post",
                            });
                        }
                    }
                }
            }
        }
        None
    }

    /// Readable basis: `(source, target, [expression, ...])` for nonzero components.
    pub fn basis_expressions(&self) -> Vec<(String, String, Vec<String>)> {
        all_pairs(self.cat.object_count())
            .filter(|&(x, y)| self.dim_at(x, y) > 0)
            .map(|(x, y)| {
                (
                    self.cat.object_name(x).to_string(),
                    self.cat.object_name(y).to_string(),
                    self.component(x, y).basis().iter().map(|v| self.cat.format_coords(x, y, v)).collect(),
                )
            })
            .collect()
    }

    /// `{"X->Y": [[coordinate, ...], ...]}` with canonical bases; coordinates as strings.
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (x, y) in all_pairs(self.cat.object_count()) {
            let key = format!("{}->{}", self.cat.object_name(x), self.cat.object_name(y));
            let vectors = self
                .component(x, y)
                .basis()
                .iter()
                .map(|v| Value::Array(v.iter().map(|s| Value::String(s.to_string())).collect()))
                .collect();
            map.insert(key, Value::Array(vectors));
        }
        Value::Object(map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiverpres::{load_bundle_category, BuiltCategory};

    const LHAT2: &str = "[vertices]\nX Y\n[arrows]\nε: X -> X\nα: X -> Y\nβ: Y -> X\n\
        [relations]\nα*β\nε*ε + β*α\n[options]\nmax_path_length = 5\n";

    fn setup() -> (BuiltCategory, Arc<PresentedCategory>) {
        let (_, b) = load_bundle_category(LHAT2).unwrap();
        let cat = Arc::new(b.category.clone());
        (b, cat)
    }

    fn profile(i: &Ideal) -> Vec<usize> {
        i.dims().values().copied().collect()
    }

    #[test]
    fn generated_by_epsilon() {
        let (b, cat) = setup();
        let i = Ideal::generate(&cat, &[b.morphism("ε").unwrap()]);
        assert_eq!(profile(&i), vec![3, 1, 1, 1]);
        assert!(i.contains(&b.morphism("α*ε").unwrap()));
        assert!(i.objects().is_empty());
        assert!(!i.is_object_ideal());
        assert!(i.closure_violation().is_none());
    }

    #[test]
    fn generated_by_epsilon_squared() {
        let (b, cat) = setup();
        let i = Ideal::generate(&cat, &[b.morphism("ε*ε").unwrap()]);
        assert_eq!(profile(&i), vec![2, 0, 0, 0]);
        assert!(!i.contains(&b.morphism("ε").unwrap()));
    }

    #[test]
    fn empty_generators_give_zero() {
        let (_, cat) = setup();
        let i = Ideal::generate(&cat, &[]);
        assert!(i.is_zero());
        assert!(i.is_object_ideal());
    }

    #[test]
    fn radical_and_products() {
        let (b, cat) = setup();
        let j = Ideal::jacobson(&cat);
        assert_eq!(j.total_dim(), 8);
        assert!(j.objects().is_empty());
        assert!(!j.contains(&b.morphism("id_X").unwrap()));
        let i = Ideal::generate(&cat, &[b.morphism("ε").unwrap()]);
        let (x, y) = (cat.object_id("X").unwrap(), cat.object_id("Y").unwrap());
        let ji = Ideal::product(&i, &j).unwrap();
        let ij = Ideal::product(&j, &i).unwrap();
        assert_eq!(ji.dim_at(x, x), 2);
        assert_eq!(ij.dim_at(x, y), 0);
        assert!(ji.contains(&b.morphism("α*ε").unwrap()));
        assert!(ji.closure_violation().is_none());
        assert_eq!(i.power(2).dim_at(x, x), 2);
        assert_eq!(i.power(1), i);
        assert!(i.power(8).is_zero());
        assert!(Ideal::product(&i, &Ideal::zero(&cat)).unwrap().is_zero());
    }

    #[test]
    fn full_ideal_has_every_object() {
        let (_, cat) = setup();
        let full = Ideal::full(&cat);
        assert_eq!(full.objects().len(), 2);
        assert!(full.is_object_ideal());
    }

    #[test]
    fn from_components_rejects_non_ideals() {
        let (_, cat) = setup();
        let mut comps: Vec<Subspace> = Ideal::zero(&cat).comps.clone();
        // span{ε} alone is not closed: ε ∘ ε escapes
        comps[0] = Subspace::canonicalize(cat.field(), vec![unit(cat.field(), 4, 1)], 4).unwrap();
        assert!(matches!(Ideal::from_components(&cat, comps), Err(IdealError::NotClosed(_))));
    }

    #[test]
    fn json_shape() {
        let (b, cat) = setup();
        let i = Ideal::generate(&cat, &[b.morphism("ε*ε").unwrap()]);
        let v = i.to_json();
        assert_eq!(v["X->X"].as_array().unwrap().len(), 2);
        assert_eq!(v["Y->Y"].as_array().unwrap().len(), 0);
    }
}
