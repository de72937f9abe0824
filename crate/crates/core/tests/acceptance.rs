//! Acceptance gate: one PASS/FAIL line per criterion, then a nonzero exit on any failure.
//!
//! Arithmetic is exact, so every comparison is equality; the only tolerances are the
//! wall-clock budgets below.

mod common;

use std::collections::{BTreeMap, HashMap};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use idealmut::approx::{comparison_isomorphism, Side};
use idealmut::bundle::fixtures;
use idealmut::ghost::{coghost_ideal, ghost_ideal};
use idealmut::ideals::Ideal;
use idealmut::mutation::{
    detect_ar_ideal, mutation_quiver, tau_of, tau_stable, verify_multiplicity, verify_mutation_triangle, Clause,
    MultiplicityRow,
};
use proptest::test_runner::{Config, TestError, TestRunner};

const BUDGET_LHAT2: Duration = Duration::from_secs(1);
const BUDGET_LHAT3: Duration = Duration::from_secs(2);
const BUDGET_CLUSTER: Duration = Duration::from_secs(10);
const BUDGET_PROPERTIES: Duration = Duration::from_secs(60);
const PROPERTY_CASES: u32 = 100;

/// Named sub-checks of one criterion; a failing check carries its observation.
struct Outcome {
    checks: Vec<(&'static str, Result<(), String>)>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { checks: Vec::new() }
    }

    fn check(&mut self, name: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        self.checks.push((name, if ok { Ok(()) } else { Err(detail()) }));
    }

    fn within(&mut self, budget: Duration, elapsed: Duration) {
        self.check("runtime", elapsed < budget, || format!("{elapsed:?} over {budget:?}"));
    }

    fn property<T: std::fmt::Debug>(&mut self, name: &'static str, r: Result<(), TestError<T>>) {
        self.checks.push((name, r.map_err(|e| e.to_string())));
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(|(_, r)| r.is_ok())
    }
}

fn dims(pairs: &[(&str, &str, usize)]) -> BTreeMap<(String, String), usize> {
    pairs.iter().map(|&(x, y, d)| ((x.into(), y.into()), d)).collect()
}

fn lhat2_epsilon() -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    let b = fixtures::load("lhat2").unwrap();
    let i = b.ideal("eps").unwrap();
    let shift = b.functor("shift").unwrap();
    let want = dims(&[("X", "X", 3), ("X", "Y", 1), ("Y", "X", 1), ("Y", "Y", 1)]);
    out.check("ideal dimensions", i.dims() == want, || format!("{:?}", i.dims()));

    let listed: Vec<_> = ["ε*ε*ε", "α*ε", "ε*β", "α*ε*β"].iter().map(|e| b.built.morphism(e).unwrap()).collect();
    let expected = Ideal::generate(&b.category, &listed);
    let (gh, cogh) = (ghost_ideal(i), coghost_ideal(i));
    out.check("ghost ideal", gh == expected && gh.total_dim() == 4, || format!("{:?}", gh.basis_expressions()));
    out.check("coghost ideal", cogh == expected, || format!("{:?}", cogh.basis_expressions()));
    out.check("verdict", detect_ar_ideal(i, shift).is_ar_ideal, || "NO".into());

    let tris = b.triangles_for("eps");
    let verified = tris.iter().all(|t| {
        verify_mutation_triangle(i, shift, t).is_ok_and(|c| c.is_nontrivial())
            && verify_multiplicity(i, shift, t).is_ok_and(|rows| rows.iter().all(MultiplicityRow::holds))
    });
    out.check("two triangles with multiplicities", tris.len() == 2 && verified, || format!("{} triangles", tris.len()));

    let q = mutation_quiver(i);
    let arrows: Vec<_> = q.arrows.iter().map(|a| (a.from.as_str(), a.to.as_str(), a.minus, a.plus)).collect();
    let want = vec![("X", "X", 1, 1), ("X", "Y", 0, 1), ("Y", "X", 1, 0)];
    out.check("valued quiver", arrows == want, || format!("{arrows:?}"));
    out.within(BUDGET_LHAT2, start.elapsed());
    out
}

fn lhat2_epsilon_squared() -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    let b = fixtures::load("lhat2").unwrap();
    let cat = &b.category;
    let i = b.ideal("eps2").unwrap();
    let shift = b.functor("shift").unwrap();
    let verdict = detect_ar_ideal(i, shift);
    out.check("condition (1) holds", verdict.condition1, || "fails".into());
    out.check("condition (2) fails", !verdict.condition2_failures.is_empty(), || "holds".into());

    let y = cat.object_id("Y").unwrap();
    let alpha = b.built.morphism("α").unwrap();
    let found = verdict.condition2_failures.iter().any(|f| {
        f.anchor == y
            && f.clause == Clause::SinkNotSource
            && f.witness.source() == alpha.source()
            && comparison_isomorphism(cat, &f.witness, &alpha, Side::Right).is_some()
    });
    out.check("witness α at Y (sink not source)", found, || {
        let seen: Vec<String> = verdict.condition2_failures.iter().map(|f| f.describe(cat)).collect();
        let id_y = cat.identity(&cat.formal(&["Y"]).unwrap());
        format!("id_Y in ghost ideal: {}; failures found: {}", ghost_ideal(i).contains(&id_y), seen.join(" | "))
    });
    out.check("tau-stable", tau_stable(i, b.functor("tau").unwrap()), || "not stable".into());
    out.check("verdict NO", !verdict.is_ar_ideal, || "YES".into());
    out.within(BUDGET_LHAT2, start.elapsed());
    out
}

fn lhat3_epsilon() -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    let b = fixtures::load("lhat3").unwrap();
    let cat = &b.category;
    let i = b.ideal("eps").unwrap();
    let shift = b.functor("shift").unwrap();
    out.check("verdict", detect_ar_ideal(i, shift).is_ar_ideal, || "NO".into());
    let (gh, cogh) = (ghost_ideal(i), coghost_ideal(i));
    out.check("ghost equals coghost", gh == cogh, || "differ".into());

    // the ten listed ghosts without αε³β: one per ordered pair
    let profile: BTreeMap<(String, String), usize> = cat
        .objects()
        .flat_map(|x| cat.objects().map(move |y| (x, y)))
        .map(|(x, y)| ((cat.object_name(x).to_string(), cat.object_name(y).to_string()), 1))
        .collect();
    out.check("ghost dimension profile", gh.dims() == profile, || {
        let extra = b.built.morphism("α*ε*ε*ε*β").unwrap();
        format!(
            "computed {:?}; αε³β is {} and lies in the ghost ideal: {}",
            gh.dims().iter().filter(|(_, &d)| d != 1).collect::<Vec<_>>(),
            if extra.is_zero() { "zero" } else { "nonzero" },
            gh.contains(&extra)
        )
    });

    let tris = b.triangles_for("eps");
    let all_ok = tris.iter().all(|t| verify_mutation_triangle(i, shift, t).is_ok_and(|c| c.is_nontrivial()));
    out.check("three triangles", tris.len() == 3 && all_ok, || format!("{} triangles", tris.len()));
    let id = |n: &str| cat.object_id(n).unwrap();
    let tau: Vec<_> = ["X", "Y", "Z"].iter().map(|n| tau_of(i, shift, id(n), &tris).ok().flatten()).collect();
    out.check("tau_I", tau == vec![Some(id("Z")), Some(id("Y")), Some(id("X"))], || format!("{tau:?}"));
    out.within(BUDGET_LHAT3, start.elapsed());
    out
}

fn cluster_object_ideal() -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    let b = fixtures::load("clusterA4").unwrap();
    let cat = &b.category;
    let d = b.ideal("D").unwrap();
    out.check("object ideal", d.is_object_ideal(), || "not generated by identities".into());
    out.check("tau-stable", tau_stable(d, b.functor("tau").unwrap()), || "not stable".into());
    out.check("verdict", detect_ar_ideal(d, b.functor("shift").unwrap()).is_ar_ideal, || "NO".into());
    let q = mutation_quiver(d);
    let bad: Vec<_> = q.arrows.iter().filter(|a| !matches!((a.minus, a.plus), (1, 0) | (0, 1))).collect();
    out.check("arrow values", bad.is_empty(), || format!("{bad:?}"));

    let sample: [(&str, &[(&str, (usize, usize))]); 5] = [
        ("P3", &[("P1", (1, 0)), ("S3", (1, 0))]),
        ("I3", &[("P4_1", (1, 0)), ("S1", (1, 0))]),
        ("M23", &[("P4_1", (1, 0)), ("S2", (1, 0))]),
        ("P1", &[("I2", (0, 1)), ("I3", (0, 1))]),
        ("S2", &[("I2", (0, 1)), ("P3_1", (0, 1))]),
    ];
    for (v, want) in sample {
        let got = q.outgoing(v);
        let want: Vec<(String, (usize, usize))> = want.iter().map(|(t, val)| (t.to_string(), *val)).collect();
        out.check("sampled vertex", got == want, || format!("{v}: {got:?}"));
    }

    let mut mismatches = Vec::new();
    for &((r, c), name) in common::DOMAIN {
        let mut knit: HashMap<&str, i64> = HashMap::new();
        for ((r2, c2), v) in common::hammock((r, c), 28) {
            *knit.entry(common::orbit_name(r2, c2)).or_insert(0) += v;
        }
        for &(_, other) in common::DOMAIN {
            let got = cat.hom_dim_ind(cat.object_id(name).unwrap(), cat.object_id(other).unwrap()) as i64;
            if knit.get(other).copied().unwrap_or(0) != got {
                mismatches.push((name, other));
            }
        }
    }
    out.check("mesh oracle", mismatches.is_empty() && cat.object_count() == 14, || format!("{mismatches:?}"));
    out.within(BUDGET_CLUSTER, start.elapsed());
    out
}

fn property_suite() -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    let runner = || TestRunner::new(Config { cases: PROPERTY_CASES, failure_persistence: None, ..Config::default() });
    let strat2 = (common::fixture(), common::raw_gens(), common::raw_gens());
    let strat1 = (common::fixture(), common::raw_gens());

    let r = runner().run(&strat2, |(f, a, c)| common::closure(f, &a, &c));
    out.property("closure", r);
    let r = runner().run(&strat2, |(f, a, c)| common::ghosts(f, &a, &c));
    out.property("ghost antitone and galois", r);
    let r = runner().run(&(common::fixture(), common::raw_gen(), 0usize..16), |(f, g, m)| common::rank_nullity(f, &g, m));
    out.property("rank-nullity", r);
    let r = runner().run(&(common::fixture(), common::raw_gens(), 0usize..16, 0usize..100), |(f, a, m, k)| {
        common::minimal_approximations(f, &a, m, k)
    });
    out.property("minimal approximations", r);
    let r = runner().run(&strat1, |(f, a)| common::irreducible_components(f, &a));
    out.property("irreducible components and multiplicities", r);
    let r = runner().run(&strat1, |(f, a)| common::tau_stability(f, &a));
    out.property("tau-stable iff condition (1)", r);
    let r = runner().run(&strat1, |(f, a)| common::factorization(f, &a));
    out.property("factorization", r);
    let r = common::radical_two_sided();
    out.check("radical Irr- = Irr+", r.is_ok(), || format!("{r:?}"));
    let r = common::shipped_factorization();
    out.check("shipped AR ideals factor", r.is_ok(), || format!("{r:?}"));
    out.within(BUDGET_PROPERTIES, start.elapsed());
    out
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 5] = [
        ("1 L̂₂ ideal ⟨ε⟩", lhat2_epsilon),
        ("2 L̂₂ ideal ⟨ε²⟩", lhat2_epsilon_squared),
        ("3 L̂₃ ideal ⟨ε⟩", lhat3_epsilon),
        ("4 cluster A4 object ideal [D]", cluster_object_ideal),
        ("5 property suite", property_suite),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let outcome = run();
        let passed = outcome.passed();
        println!("{} criterion {name} ({} checks)", if passed { "PASS" } else { "FAIL" }, outcome.checks.len());
        for (check, result) in &outcome.checks {
            if let Err(detail) = result {
                println!("    failed check `{check}`: {detail}");
            }
        }
        failed += usize::from(!passed);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
