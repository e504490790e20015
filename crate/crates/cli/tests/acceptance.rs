//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::time::Instant;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twinned::ehrhart::{property_bundle, count_from_delta, delta_vector, ehrhart_counts};
use twinned::geometry::{build_omega, Polytope};
use twinned::groebner::{
    buchberger_scheduled, ideal_equality, random_ranking, verify_theorem2_with, MonomialOrder, PairSchedule,
};
use twinned::poset::{common_linear_extension, enumerate_ideals, random_poset, random_poset_pair, Poset};
use twinned::toric::{build_variables, family_g, pi_eval, quadratic_part, toric_ideal_generators, Binomial, VariableSet};
use twinned_cli::commands::{cmd_delta, cubic_membership, example_pair, ExtensionVerdicts};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn all_posets(d: usize) -> Vec<Poset> {
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (0..d).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let rels: Vec<_> = pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &r)| r).collect();
        if let Ok(p) = Poset::from_relations(d, &rels) {
            if seen.insert(p.relations()) {
                out.push(p);
            }
        }
    }
    out
}

/// Seeded pairs that have a common linear extension, `d` drawn from `dims`.
fn extension_pairs(count: usize, dims: std::ops::RangeInclusive<usize>, seed: u64) -> Vec<(Poset, Poset)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let d = rng.gen_range(dims.clone());
        let num = rng.gen_range(1..=3u32);
        let (p, q) = random_poset_pair(d, Ratio::new(num, 4), rng.gen(), true);
        if common_linear_extension(&p, &q).unwrap().is_some() {
            out.push((p, q));
        }
    }
    out
}

fn sound(vs: &VariableSet, b: &Binomial) -> bool {
    pi_eval(vs, &b.first).unwrap() == pi_eval(vs, &b.second).unwrap()
}

fn delta_table() -> Outcome {
    let expected: [&[&str]; 5] = [
        &["1", "3", "1"],
        &["1", "7", "7", "1"],
        &["1", "15", "33", "15", "1"],
        &["1", "31", "131", "131", "31", "1"],
        &["1", "63", "473", "883", "473", "63", "1"],
    ];
    let mut bad = Vec::new();
    for (k, want) in expected.iter().enumerate() {
        let d = k + 2;
        let report = cmd_delta(&Poset::chain(d), &Poset::antichain(d), d as u32 + 1).unwrap();
        let got: Vec<String> = report.json["report"]["delta"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_str().unwrap().to_string())
            .collect();
        if got != *want || !report.passed {
            bad.push(format!("d={d}: got ({})", got.join(",")));
        }
    }
    Outcome {
        passed: bad.is_empty(),
        detail: if bad.is_empty() { "5/5 rows exact".into() } else { bad.join("; ") },
    }
}

fn extension_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut disagreements = 0;
    let mut positive = 0;
    for _ in 0..500 {
        let d = rng.gen_range(2..=6);
        let num = rng.gen_range(0..=4u32);
        let (p, q) = random_poset_pair(d, Ratio::new(num, 4), rng.gen(), true);
        let v = ExtensionVerdicts::compute(&p, &q).unwrap();
        positive += usize::from(v.extension.is_some());
        disagreements += usize::from(!v.agree());
    }
    let mut exhaustive = 0;
    for d in 2..=3 {
        let all = all_posets(d);
        for p in &all {
            for q in &all {
                exhaustive += 1;
                disagreements += usize::from(!ExtensionVerdicts::compute(p, q).unwrap().agree());
            }
        }
    }
    Outcome {
        passed: disagreements == 0,
        detail: format!(
            "500 random pairs ({positive} with an extension) + {exhaustive} exhaustive pairs, {disagreements} disagreements"
        ),
    }
}

fn quadratic_bases() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut failures = Vec::new();
    let pairs = extension_pairs(100, 2..=5, 7);
    for (i, (p, q)) in pairs.iter().enumerate() {
        let vs = build_variables(p, q).unwrap();
        let gens = toric_ideal_generators(&vs);
        let mut orders = vec![MonomialOrder::default_for(&vs)];
        orders.extend((0..3).map(|_| random_ranking(&vs, &mut rng)));
        for order in &orders {
            let r = verify_theorem2_with(&vs, order, &gens).unwrap();
            if !r.passed {
                failures.push(format!("pair {i} ({} / {})", p.to_text(), q.to_text()));
            }
        }
    }
    Outcome {
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            "100 pairs x 4 orders: family is a Gröbner basis, reduced basis quadratic, initials from family".into()
        } else {
            failures.join("; ")
        },
    }
}

fn counterexample() -> Outcome {
    let (p, q) = example_pair();
    let v = ExtensionVerdicts::compute(&p, &q).unwrap();
    let no_ext = v.extension.is_none() && v.certificate.is_none();
    let sampled = cubic_membership(11, 25);
    let found = sampled.iter().filter(|(_, f)| *f).count();
    let vs = build_variables(&p, &q).unwrap();
    let quad = quadratic_part(&vs);
    let generated = ideal_equality(&quad, &toric_ideal_generators(&vs), &MonomialOrder::default_for(&vs));
    Outcome {
        passed: no_ext && found == 26 && generated,
        detail: format!(
            "no extension: {no_ext}; cubic in reduced basis under {found}/26 orders; degree-2 part generates: {generated}"
        ),
    }
}

fn polytope_bundle() -> Outcome {
    let mut pairs: Vec<(Poset, Poset)> = (1..=4).map(|d| (Poset::chain(d), Poset::antichain(d))).collect();
    pairs.extend(extension_pairs(20, 1..=4, 31));
    let mut failures = Vec::new();
    for (p, q) in &pairs {
        let cfg = build_omega(p, q).unwrap();
        let poly = Polytope::twinned(&cfg);
        let hrep = poly.hull_halfspaces().unwrap();
        let r = property_bundle(&cfg.points, hrep, cfg.d, cfg.d as u32 + 1).unwrap();
        if !(r.fano && r.reflexive && r.normal && r.symmetric && r.unimodal) {
            failures.push(format!("{} / {}: {r:?}", p.to_text(), q.to_text()));
        }
    }
    Outcome {
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{} pairs: Fano, reflexive, normal up to t = d+1, δ symmetric and unimodal", pairs.len())
        } else {
            failures.join("; ")
        },
    }
}

fn property_suite() -> Outcome {
    let mut problems = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(5);

    // Reduced bases agree across pair schedules; every emitted binomial is in the kernel.
    let mut emitted = 0;
    for _ in 0..30 {
        let d = rng.gen_range(1..=3);
        let (p, q) = random_poset_pair(d, Ratio::new(rng.gen_range(0..=4), 4), rng.gen(), true);
        let vs = build_variables(&p, &q).unwrap();
        let gens = toric_ideal_generators(&vs);
        let order = random_ranking(&vs, &mut rng);
        let a = buchberger_scheduled(&gens, &order, PairSchedule::Degree);
        let b = buchberger_scheduled(&gens, &order, PairSchedule::Fifo);
        if a.elements != b.elements {
            problems.push(format!("schedules differ on {} / {}", p.to_text(), q.to_text()));
        }
        for bin in family_g(&vs).iter().chain(&gens).chain(&a.elements).chain(&b.elements) {
            emitted += 1;
            if !sound(&vs, bin) {
                problems.push(format!("unsound {}", vs.render(bin)));
            }
        }
    }

    // δ round trip.
    for _ in 0..30 {
        let d = rng.gen_range(1..=5);
        let (p, q) = random_poset_pair(d, Ratio::new(rng.gen_range(0..=4), 4), rng.gen(), true);
        let cfg = build_omega(&p, &q).unwrap();
        let poly = Polytope::twinned(&cfg);
        let counts = ehrhart_counts(poly.hull_halfspaces().unwrap(), d as u32);
        let dv = delta_vector(&counts, d).unwrap();
        if (0..=d).any(|t| count_from_delta(&dv, t as u32) != counts.0[t]) {
            problems.push(format!("round trip fails on {} / {}", p.to_text(), q.to_text()));
        }
    }

    // Lattice closure of every ideal family.
    let mut families = 0;
    let mut posets: Vec<Poset> = (1..=4).flat_map(all_posets).collect();
    posets.extend((0..40).map(|s| random_poset(8, Ratio::new((s % 5) as u32, 4), s)));
    for p in &posets {
        families += 1;
        let fam = enumerate_ideals(p);
        let closed = fam
            .ideals()
            .iter()
            .all(|&a| fam.ideals().iter().all(|&b| fam.contains(a.union(b)) && fam.contains(a.intersection(b))));
        if !closed {
            problems.push(format!("ideal family of {} not a lattice", p.to_text()));
        }
    }
    Outcome {
        passed: problems.is_empty(),
        detail: if problems.is_empty() {
            format!("schedules agree on 30 pairs, {emitted} binomials sound, 30 round trips, {families} lattices closed")
        } else {
            problems.join("; ")
        },
    }
}

fn main() {
    let criteria: [Criterion; 6] = [
        ("1 δ-vector table, chain/antichain d = 2..6", delta_table),
        ("2 common extension ⇔ interior origin", extension_equivalence),
        ("3 quadratic Gröbner bases with a common extension", quadratic_bases),
        ("4 counterexample pair: cubic in reduced basis, quadratic generation", counterexample),
        ("5 Fano / reflexive / normal / symmetric unimodal bundle", polytope_bundle),
        ("6 property suite", property_suite),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let tag = if outcome.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] criterion {name}: {} ({:.1?})", outcome.detail, start.elapsed());
        failed += usize::from(!outcome.passed);
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
