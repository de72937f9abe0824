//! Shared generators and property checks over ideals of the shipped fixtures.

#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::OnceLock;

use idealmut::approx::{
    comparison_isomorphism, is_left_approximation, is_left_minimal, is_right_approximation, is_right_minimal,
    left_approximation, minimize, right_approximation, sink_map, source_map, IrrClass, IrreducibleSpaces, Side,
};
use idealmut::bundle::{fixtures, Bundle};
use idealmut::catcore::{FormalObject, Morphism, ObjId};
use idealmut::ghost::{coghost_ideal, ghost_ideal};
use idealmut::ideals::Ideal;
use idealmut::mutation::{check_condition1, detect_ar_ideal, tau_stable, verify_factorization};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub fn bundles() -> &'static [Bundle] {
    static CELL: OnceLock<Vec<Bundle>> = OnceLock::new();
    CELL.get_or_init(|| fixtures::all().into_iter().map(|(_, b)| b).collect())
}

/// A generator: an ordered object pair (by index) and small integer coordinates.
pub type RawGen = (usize, usize, Vec<i64>);

pub fn raw_gen() -> impl Strategy<Value = RawGen> {
    (0usize..16, 0usize..16, prop::collection::vec(-2i64..=2, 8))
}

pub fn raw_gens() -> impl Strategy<Value = Vec<RawGen>> {
    prop::collection::vec(raw_gen(), 1..=3)
}

/// Fixture index; the cluster category is the largest, so it is drawn less often.
pub fn fixture() -> impl Strategy<Value = usize> {
    prop_oneof![3 => Just(0usize), 3 => Just(1usize), 1 => Just(2usize)]
}

pub fn morphism(b: &Bundle, (x, y, coeffs): &RawGen) -> Morphism {
    let cat = &b.category;
    let n = cat.object_count();
    let (x, y) = (ObjId(x % n), ObjId(y % n));
    let field = cat.field();
    let coords = (0..cat.hom_dim_ind(x, y)).map(|k| field.from_i64(coeffs[k % coeffs.len()])).collect();
    cat.basic(x, y, coords).unwrap()
}

pub fn ideal(b: &Bundle, gens: &[RawGen]) -> Ideal {
    let ms: Vec<Morphism> = gens.iter().map(|g| morphism(b, g)).collect();
    Ideal::generate(&b.category, &ms)
}

pub fn closure(f: usize, a: &[RawGen], c: &[RawGen]) -> Result<(), TestCaseError> {
    let b = &bundles()[f];
    let (i, k) = (ideal(b, a), ideal(b, c));
    let shift = b.functor("shift").unwrap();
    for out in [
        i.clone(),
        i.sum(&k).unwrap(),
        i.intersect(&k).unwrap(),
        Ideal::product(&i, &k).unwrap(),
        i.power(2),
        i.shift_by(shift),
        ghost_ideal(&i),
        coghost_ideal(&i),
    ] {
        prop_assert!(out.closure_violation().is_none());
    }
    prop_assert!(i.intersect(&k).unwrap().is_subideal_of(&i));
    prop_assert!(i.is_subideal_of(&i.sum(&k).unwrap()));
    prop_assert!(Ideal::product(&i, &k).unwrap().is_subideal_of(&i.intersect(&k).unwrap()));
    Ok(())
}

pub fn ghosts(f: usize, a: &[RawGen], c: &[RawGen]) -> Result<(), TestCaseError> {
    let b = &bundles()[f];
    let small = ideal(b, a);
    let big = small.sum(&ideal(b, c)).unwrap();
    prop_assert!(ghost_ideal(&big).is_subideal_of(&ghost_ideal(&small)));
    prop_assert!(coghost_ideal(&big).is_subideal_of(&coghost_ideal(&small)));
    prop_assert!(small.is_subideal_of(&coghost_ideal(&ghost_ideal(&small))));
    prop_assert!(small.is_subideal_of(&ghost_ideal(&coghost_ideal(&small))));
    Ok(())
}

pub fn rank_nullity(f: usize, g: &RawGen, m: usize) -> Result<(), TestCaseError> {
    let b = &bundles()[f];
    let cat = &b.category;
    let h = morphism(b, g);
    let obj = FormalObject::single(ObjId(m % cat.object_count()));
    for map in [cat.postcompose_map(&h, &obj), cat.precompose_map(&h, &obj)] {
        prop_assert_eq!(map.rank() + map.kernel().dim(), map.cols());
    }
    Ok(())
}

pub fn minimal_approximations(f: usize, a: &[RawGen], m: usize, rotation: usize) -> Result<(), TestCaseError> {
    let b = &bundles()[f];
    let cat = &b.category;
    let i = ideal(b, a);
    let anchor = FormalObject::single(ObjId(m % cat.object_count()));
    for side in [Side::Right, Side::Left] {
        let raw = match side {
            Side::Right => right_approximation(&i, &anchor),
            Side::Left => left_approximation(&i, &anchor),
        };
        let min = minimize(cat, &raw);
        let (approx_ok, minimal_ok) = match side {
            Side::Right => (is_right_approximation(&i, &min.map), is_right_minimal(cat, &min.map)),
            Side::Left => (is_left_approximation(&i, &min.map), is_left_minimal(cat, &min.map)),
        };
        prop_assert!(approx_ok && minimal_ok);

        // minimizing a reordered approximation gives an isomorphic result
        let n = raw.other_end().len();
        let mut order: Vec<usize> = (0..n).collect();
        if n > 1 {
            order.rotate_left(rotation % n);
        }
        let mut shuffled = raw.clone();
        shuffled.map = match side {
            Side::Right => raw.map.permute_source(&order),
            Side::Left => raw.map.permute_target(&order),
        };
        let other = minimize(cat, &shuffled);
        prop_assert!(comparison_isomorphism(cat, &min.map, &other.map, side).is_some());
    }
    Ok(())
}

pub fn irreducible_components(f: usize, a: &[RawGen]) -> Result<(), TestCaseError> {
    let b = &bundles()[f];
    let cat = &b.category;
    let i = ideal(b, a);
    let spaces = IrreducibleSpaces::new(&i);
    let inside = i.objects();
    for x in cat.objects() {
        let one = FormalObject::single(x);
        let src = source_map(&i, &one).map;
        let snk = sink_map(&i, &one).map;
        for w in cat.objects() {
            let into: Vec<usize> = (0..src.target().len()).filter(|&k| src.target().slots()[k] == w).collect();
            let out_of: Vec<usize> = (0..snk.source().len()).filter(|&k| snk.source().slots()[k] == w).collect();
            prop_assert_eq!(into.len(), spaces.irr_minus(x, w));
            prop_assert_eq!(out_of.len(), spaces.irr_plus(w, x));
            let u: Vec<_> = into.iter().map(|&k| src.entry(k, 0).to_vec()).collect();
            let v: Vec<_> = out_of.iter().map(|&k| snk.entry(0, k).to_vec()).collect();
            prop_assert!(spaces.independent_mod_radical_after(x, w, &u));
            prop_assert!(spaces.independent_mod_radical_before(w, x, &v));
            if inside.contains(&x) {
                continue;
            }
            for &k in &into {
                let class = spaces.classify(&src.component(k, 0)).unwrap();
                prop_assert!(matches!(class, IrrClass::Left | IrrClass::Both));
            }
            for &k in &out_of {
                let class = spaces.classify(&snk.component(0, k)).unwrap();
                prop_assert!(matches!(class, IrrClass::Right | IrrClass::Both));
            }
        }
    }
    Ok(())
}

pub fn tau_stability(f: usize, a: &[RawGen]) -> Result<(), TestCaseError> {
    let b = &bundles()[f];
    let i = ideal(b, a);
    let tau = b.functor("tau").unwrap();
    let shift = b.functor("shift").unwrap();
    prop_assert_eq!(tau_stable(&i, tau), check_condition1(&i, shift));
    Ok(())
}

pub fn factorization(f: usize, a: &[RawGen]) -> Result<(), TestCaseError> {
    let b = &bundles()[f];
    let i = ideal(b, a);
    if detect_ar_ideal(&i, b.functor("shift").unwrap()).is_ar_ideal {
        prop_assert!(verify_factorization(&i, 2).is_empty());
        prop_assert!(verify_factorization(&i, 3).is_empty());
    }
    Ok(())
}

/// `Irr⁻ = Irr⁺` for the radical of every fixture.
pub fn radical_two_sided() -> Result<(), TestCaseError> {
    for b in bundles() {
        let spaces = IrreducibleSpaces::new(&Ideal::jacobson(&b.category));
        for x in b.category.objects() {
            for y in b.category.objects() {
                prop_assert_eq!(spaces.irr_minus(x, y), spaces.irr_plus(x, y));
            }
        }
    }
    Ok(())
}

/// The named AR ideals of every fixture factor through their sink and source maps.
pub fn shipped_factorization() -> Result<(), TestCaseError> {
    for (b, names) in bundles().iter().zip([&["eps", "J"][..], &["eps", "J"][..], &["D", "J"][..]]) {
        for n in names {
            let i = b.ideal(n).unwrap();
            prop_assert!(detect_ar_ideal(i, b.functor("shift").unwrap()).is_ar_ideal, "{}", n);
            prop_assert!(verify_factorization(i, 2).is_empty(), "{}", n);
            prop_assert!(verify_factorization(i, 3).is_empty(), "{}", n);
        }
    }
    Ok(())
}

/// Fundamental domain of ZA4 under F(r, c) = (5 - r, c + 7).
pub const DOMAIN: &[((i64, i64), &str)] = &[
    ((4, 0), "P4"),
    ((4, 2), "S3"),
    ((4, 4), "S2"),
    ((4, 6), "S1"),
    ((3, 1), "P3"),
    ((3, 3), "M23"),
    ((3, 5), "I2"),
    ((2, 0), "P2_1"),
    ((2, 2), "P2"),
    ((2, 4), "I3"),
    ((2, 6), "P3_1"),
    ((1, 1), "P1_1"),
    ((1, 3), "P1"),
    ((1, 5), "P4_1"),
];

pub fn orbit_name(r: i64, c: i64) -> &'static str {
    let c = c.rem_euclid(14);
    let key = if c >= 7 { (5 - r, c - 7) } else { (r, c) };
    DOMAIN.iter().find(|(k, _)| *k == key).map(|(_, n)| *n).expect("vertex of ZA4")
}

/// `dim Hom(x, y)` in the mesh category of ZA4 for every `y` reachable from `x`, by the
/// additive knitting recursion `h(y) = max(0, Σ_{m → y} h(m) - h(τ y))`.
pub fn hammock(start: (i64, i64), span: i64) -> HashMap<(i64, i64), i64> {
    let mut h: HashMap<(i64, i64), i64> = HashMap::new();
    h.insert(start, 1);
    for c in start.1 + 1..=start.1 + span {
        for r in 1..=4i64 {
            if (r + c) % 2 != (start.0 + start.1) % 2 {
                continue;
            }
            let incoming: i64 = [r - 1, r + 1]
                .iter()
                .filter(|&&m| (1..=4).contains(&m))
                .map(|&m| h.get(&(m, c - 1)).copied().unwrap_or(0))
                .sum();
            let translate = h.get(&(r, c - 2)).copied().unwrap_or(0);
            let v = (incoming - translate).max(0);
            if v > 0 {
                h.insert((r, c), v);
            }
        }
    }
    h
}
