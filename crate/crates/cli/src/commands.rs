use std::path::PathBuf;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use twinned::ehrhart::property_bundle;
use twinned::geometry::{build_omega, origin_in_interior, InteriorCertificate, Polytope};
use twinned::groebner::{
    buchberger, ideal_equality, max_degree, parse_ranking, random_ranking, verify_theorem2_with, MonomialOrder,
};
use twinned::poset::{common_linear_extension, enumerate_ideals, random_poset_pair, union_cycle, LinearExtension, Poset};
use twinned::toric::{build_variables, family_g, quadratic_part, toric_ideal_generators, VariableSet};

use crate::golden;
use crate::{push_line, yn, InputError, Report};

/// The pair from the non-extension counterexample.
pub const EXAMPLE_P: &str = "5; 1<3 2<3 2<4 3<5 4<5";
pub const EXAMPLE_Q: &str = "5; 4<3 3<2 2<1 4<5";
pub const EXAMPLE_CUBIC: &str = "x{2}*x{1,2,3,4}*y{1,2,3,4,5} - x{2,4}*y{4,5}*z";

pub fn example_pair() -> (Poset, Poset) {
    (Poset::parse(EXAMPLE_P).expect("valid"), Poset::parse(EXAMPLE_Q).expect("valid"))
}

fn render_cycle(cycle: &[usize]) -> String {
    cycle.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join("→")
}

/// Both answers to "does the pair have a common linear extension", by two
/// unrelated methods.
#[derive(Debug, Clone)]
pub struct ExtensionVerdicts {
    pub extension: Option<LinearExtension>,
    pub cycle: Option<Vec<usize>>,
    pub certificate: Option<InteriorCertificate>,
}

impl ExtensionVerdicts {
    pub fn compute(p: &Poset, q: &Poset) -> Result<Self, InputError> {
        let cfg = build_omega(p, q)?;
        Ok(ExtensionVerdicts {
            extension: common_linear_extension(p, q)?,
            cycle: union_cycle(p, q)?,
            certificate: origin_in_interior(&cfg),
        })
    }

    /// Verdicts match and any certificate re-verifies.
    pub fn agree(&self) -> bool {
        self.extension.is_some() == self.certificate.is_some() && self.certificate.as_ref().is_none_or(|c| c.verify())
    }

    pub fn summary(&self) -> String {
        let ext = match &self.extension {
            Some(e) => format!("common extension {e}"),
            None => "no common extension".to_string(),
        };
        let interior = if self.certificate.is_some() { "origin interior" } else { "origin not interior" };
        format!("{ext}; {interior}")
    }
}

pub fn cmd_analyze(p: &Poset, q: &Poset) -> Result<Report, InputError> {
    let v = ExtensionVerdicts::compute(p, q)?;
    let (jp, jq) = (enumerate_ideals(p).len(), enumerate_ideals(q).len());
    let omega = jp + jq - 1;
    let agree = v.agree();
    let mut text = String::new();
    push_line(&mut text, format!("P: {}", p.to_text()));
    push_line(&mut text, format!("Q: {}", q.to_text()));
    push_line(&mut text, format!("ideals: |J(P)| = {jp}, |J(Q)| = {jq}, |Ω| = {omega}"));
    match (&v.extension, &v.cycle) {
        (Some(e), _) => push_line(&mut text, format!("linear extension of both: {e}")),
        (None, Some(c)) => push_line(&mut text, format!("union of the two orders has the cycle {}", render_cycle(c))),
        (None, None) => {}
    }
    match &v.certificate {
        Some(c) => push_line(
            &mut text,
            format!("interior certificate: {} positive weights, smallest {}", c.weights.len(), c.min_weight()),
        ),
        None => push_line(&mut text, "no strictly positive combination of Ω ∖ {0} reaches the origin"),
    }
    let relabeled = v.extension.as_ref().map(|e| (p.relabeled(&e.perm), q.relabeled(&e.perm)));
    if let (Some(e), Some((rp, rq))) = (&v.extension, &relabeled) {
        push_line(&mut text, format!("relabeled along {e}: P: {} | Q: {}", rp.to_text(), rq.to_text()));
    }
    push_line(&mut text, v.summary());
    if !agree {
        push_line(&mut text, "BUG: the extension and interior tests disagree");
    }
    let json = json!({
        "command": "analyze",
        "p": p.to_json(),
        "q": q.to_json(),
        "ideals_p": jp,
        "ideals_q": jq,
        "omega_size": omega,
        "common_extension": v.extension.as_ref().map(|e| e.labels()),
        "union_cycle": v.cycle.as_ref().map(|c| c.iter().map(|i| i + 1).collect::<Vec<_>>()),
        "origin_interior": v.certificate.is_some(),
        "certificate_weights": v.certificate.as_ref().map(|c| c.weights.iter().map(ToString::to_string).collect::<Vec<_>>()),
        "relabeled": relabeled.as_ref().map(|(rp, rq)| json!({ "p": rp.to_json(), "q": rq.to_json() })),
        "verdicts_agree": agree,
        "summary": v.summary(),
    });
    Ok(Report { passed: agree, text, json, csv: None })
}

/// Reads a ranking file: variable names smallest first, `#` starts a comment.
pub fn order_from_text(vs: &VariableSet, path: &str, text: &str) -> Result<MonomialOrder, InputError> {
    let cleaned: String = text.lines().map(|l| l.split('#').next().unwrap_or("")).collect::<Vec<_>>().join(" ");
    parse_ranking(vs, &cleaned).map_err(|source| InputError::Order { path: path.to_string(), source })
}

pub fn cmd_groebner(p: &Poset, q: &Poset, ranking: Option<(&str, &str)>) -> Result<Report, InputError> {
    let has_ext = common_linear_extension(p, q)?.is_some();
    let vs = build_variables(p, q).expect("sizes agree");
    let order = match ranking {
        None => MonomialOrder::default_for(&vs),
        Some((path, text)) => order_from_text(&vs, path, text)?,
    };
    let family: Vec<_> = family_g(&vs).into_iter().filter_map(|b| b.oriented(&order)).collect();
    let gens = toric_ideal_generators(&vs);
    let gb = buchberger(&gens, &order);
    let degree = max_degree(&gb);
    let high: Vec<String> = gb.elements.iter().filter(|b| b.degree() > 2).map(|b| vs.render(b)).collect();
    let check = if has_ext {
        Some(verify_theorem2_with(&vs, &order, &gens).expect("common extension checked above"))
    } else {
        None
    };

    let mut text = String::new();
    push_line(&mut text, format!("order (smallest first): {}", order.ranking_names(&vs).join(" ")));
    push_line(&mut text, format!("# family G: {} binomials", family.len()));
    for b in &family {
        push_line(&mut text, vs.render(b));
    }
    push_line(&mut text, format!("# reduced Gröbner basis: {} elements, max degree {degree}", gb.elements.len()));
    text.push_str(&gb.dump(&vs));
    if !high.is_empty() {
        push_line(&mut text, format!("# elements of degree above 2: {}", high.len()));
        for h in &high {
            push_line(&mut text, format!("flagged: {h}"));
        }
    }
    match &check {
        Some(r) => {
            push_line(&mut text, "# quadratic Gröbner basis checks (pair has a common extension)");
            push_line(&mut text, format!("G is a Gröbner basis: {}", yn(r.family_is_groebner)));
            push_line(&mut text, format!("reduced basis is quadratic: {}", yn(r.reduced_basis_max_degree == 2)));
            push_line(&mut text, format!("initial monomials come from G: {}", yn(r.initials_from_family)));
            push_line(&mut text, format!("G equals the reduced basis: {}", yn(r.family_is_reduced_basis)));
            push_line(&mut text, format!("passed: {}", yn(r.passed)));
        }
        None => push_line(&mut text, "no common extension: quadratic basis checks do not apply"),
    }
    let json = json!({
        "command": "groebner",
        "ranking": order.ranking_names(&vs),
        "family": family.iter().map(|b| vs.binomial_json(b)).collect::<Vec<_>>(),
        "reduced_basis": gb.elements.iter().map(|b| vs.binomial_json(b)).collect::<Vec<_>>(),
        "max_degree": degree,
        "flagged": high,
        "checks": check,
    });
    Ok(Report { passed: check.as_ref().is_none_or(|r| r.passed), text, json, csv: None })
}

pub fn cmd_delta(p: &Poset, q: &Poset, t_max: u32) -> Result<Report, InputError> {
    let cfg = build_omega(p, q)?;
    let d = cfg.d;
    let poly = Polytope::twinned(&cfg);
    let hrep = poly.hull_halfspaces().expect("Ω spans R^d");
    let r = property_bundle(&cfg.points, hrep, d, t_max).expect("counts of a lattice polytope");
    let has_ext = common_linear_extension(p, q)?.is_some();
    let passed = !has_ext || r.passed;

    let mut text = String::new();
    push_line(&mut text, format!("d = {d}, |Ω| = {}, facets = {}", r.omega_size, hrep.len()));
    push_line(&mut text, format!("L(t), t = 0..{d}: {}", r.counts.join(" ")));
    push_line(&mut text, format!("delta: ({})", r.delta.join(", ")));
    let extra = if r.lattice_points == r.omega_size.to_string() { "equal" } else { "Δ has extra lattice points" };
    push_line(&mut text, format!("L(1) = {} vs |Ω| = {} ({extra})", r.lattice_points, r.omega_size));
    push_line(&mut text, format!("symmetric: {}  unimodal: {}", yn(r.symmetric), yn(r.unimodal)));
    push_line(&mut text, format!("reflexive: {}  fano: {}", yn(r.reflexive), yn(r.fano)));
    push_line(&mut text, format!("normal (dilates t <= {t_max} only): {}", yn(r.normal)));
    if has_ext {
        push_line(&mut text, format!("common extension: all properties required, passed: {}", yn(r.passed)));
    } else {
        push_line(&mut text, "no common extension: properties reported, not required");
    }

    let mut csv = String::from("t,L(t)\n");
    for (t, l) in r.counts.iter().enumerate() {
        csv.push_str(&format!("{t},{l}\n"));
    }
    csv.push_str("\ni,delta_i\n");
    for (i, v) in r.delta.iter().enumerate() {
        csv.push_str(&format!("{i},{v}\n"));
    }
    let json = json!({
        "command": "delta",
        "common_extension": has_ext,
        "facets": hrep.len(),
        "report": r,
    });
    Ok(Report { passed, text, json, csv: Some(csv) })
}

/// For each sampled order (default first), whether the cubic is in the reduced basis.
pub fn cubic_membership(seed: u64, trials: u32) -> Vec<(Vec<String>, bool)> {
    let (p, q) = example_pair();
    let vs = build_variables(&p, &q).expect("same size");
    let cubic = vs.parse_binomial(EXAMPLE_CUBIC).expect("cubic parses");
    let gens = toric_ideal_generators(&vs);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut orders = vec![MonomialOrder::default_for(&vs)];
    orders.extend((0..trials).map(|_| random_ranking(&vs, &mut rng)));
    orders
        .iter()
        .map(|order| {
            let gb = buchberger(&gens, order);
            let found = cubic.clone().oriented(order).is_some_and(|c| gb.contains(&c));
            (order.ranking_names(&vs), found)
        })
        .collect()
}

/// The recomputed counterpart of the golden file.
pub fn reproduce_values(seed: u64, trials: u32) -> (golden::Values, Vec<(Vec<String>, bool)>) {
    let mut v = golden::Values::new();
    let (p, q) = example_pair();
    let verdicts = ExtensionVerdicts::compute(&p, &q).expect("same size");
    v.insert(
        "example.common_extension".into(),
        verdicts.extension.as_ref().map_or("none".into(), ToString::to_string),
    );
    v.insert("example.origin_interior".into(), yn(verdicts.certificate.is_some()).into());
    v.insert("example.cubic".into(), EXAMPLE_CUBIC.into());
    let sampled = cubic_membership(seed, trials);
    v.insert("example.cubic_in_reduced_basis".into(), yn(sampled.iter().all(|(_, f)| *f)).into());
    let vs = build_variables(&p, &q).expect("same size");
    let quad = quadratic_part(&vs);
    let generated = ideal_equality(&quad, &toric_ideal_generators(&vs), &MonomialOrder::default_for(&vs));
    v.insert("example.quadratic_generation".into(), yn(generated).into());
    for d in 2..=6 {
        let cfg = build_omega(&Poset::chain(d), &Poset::antichain(d)).expect("same size");
        let poly = Polytope::twinned(&cfg);
        let hrep = poly.hull_halfspaces().expect("full-dimensional");
        let counts = twinned::ehrhart::ehrhart_counts(hrep, d as u32);
        let dv = twinned::ehrhart::delta_vector(&counts, d).expect("nonnegative");
        let s: Vec<String> = dv.0.iter().map(ToString::to_string).collect();
        v.insert(format!("delta.d{d}"), s.join(" "));
    }
    (v, sampled)
}

pub fn cmd_reproduce(seed: u64, trials: u32, golden_text: Option<(&str, &str)>) -> Result<Report, InputError> {
    let (path, source) = golden_text.unwrap_or(("<built-in>", golden::BUILTIN));
    let expected = golden::parse(source).map_err(|msg| InputError::Golden { path: path.to_string(), msg })?;
    let (actual, sampled) = reproduce_values(seed, trials);
    let diff = golden::diff(&expected, &actual);
    let passed = diff.is_empty();

    let mut text = String::new();
    push_line(&mut text, format!("golden: {path}"));
    push_line(
        &mut text,
        format!(
            "cubic found under {} of {} orders (default + {trials} random, seed {seed})",
            sampled.iter().filter(|(_, f)| *f).count(),
            sampled.len()
        ),
    );
    for (ranking, found) in sampled.iter().filter(|(_, f)| !*f) {
        push_line(&mut text, format!("  missing under: {} ({})", ranking.join(" "), yn(*found)));
    }
    text.push_str(&golden::render(&actual));
    if passed {
        push_line(&mut text, "all values match");
    } else {
        push_line(&mut text, "mismatch against golden values:");
        for line in &diff {
            push_line(&mut text, line);
        }
    }
    let json = json!({
        "command": "reproduce",
        "golden": path,
        "seed": seed,
        "trials": trials,
        "values": actual,
        "orders_with_cubic": sampled.iter().filter(|(_, f)| *f).count(),
        "orders_sampled": sampled.len(),
        "diff": diff,
        "passed": passed,
    });
    Ok(Report { passed, text, json, csv: None })
}

pub struct FuzzConfig {
    pub seed: u64,
    pub trials: u32,
    pub max_d: usize,
    pub forced: Option<(Poset, Poset)>,
    pub dump: Option<PathBuf>,
}

/// One sampled pair and how to regenerate it.
#[derive(Debug, Clone)]
pub struct FuzzCase {
    pub trial: u32,
    pub p: Poset,
    pub q: Poset,
    /// `None` for a forced pair.
    pub recipe: Option<(usize, u32, u64)>,
}

impl FuzzCase {
    pub fn reproducer(&self) -> String {
        match self.recipe {
            Some((d, num, seed)) => format!("random_poset_pair(d = {d}, edge_prob = {num}/4, seed = {seed}, shuffled)"),
            None => "forced pair".to_string(),
        }
    }
}

/// The pairs a fuzz run visits, in order.
pub fn fuzz_cases(cfg: &FuzzConfig) -> Vec<FuzzCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    (0..cfg.trials)
        .map(|trial| {
            if trial == 0 {
                if let Some((p, q)) = &cfg.forced {
                    return FuzzCase { trial, p: p.clone(), q: q.clone(), recipe: None };
                }
            }
            let d = rng.gen_range(2.min(cfg.max_d)..=cfg.max_d);
            let num = rng.gen_range(0..=4u32);
            let seed: u64 = rng.gen();
            let (p, q) = random_poset_pair(d, Ratio::new(num, 4), seed, true);
            FuzzCase { trial, p, q, recipe: Some((d, num, seed)) }
        })
        .collect()
}

pub fn cmd_fuzz(cfg: &FuzzConfig) -> Result<Report, InputError> {
    let mut violations = Vec::new();
    let mut with_ext = 0;
    for case in fuzz_cases(cfg) {
        let verdicts = ExtensionVerdicts::compute(&case.p, &case.q)?;
        let vs = build_variables(&case.p, &case.q).expect("same size");
        let gens = toric_ideal_generators(&vs);
        let order = MonomialOrder::default_for(&vs);
        let mut kinds = Vec::new();
        if !verdicts.agree() {
            kinds.push("extension/interior disagreement");
        }
        if verdicts.extension.is_some() {
            with_ext += 1;
            let r = verify_theorem2_with(&vs, &order, &gens).expect("extension exists");
            if !r.passed {
                kinds.push("quadratic Gröbner basis check failed");
            }
        }
        if !ideal_equality(&quadratic_part(&vs), &gens, &order) {
            kinds.push("toric ideal not generated in degree 2");
        }
        for kind in kinds {
            violations.push((case.clone(), kind));
        }
    }
    if let Some(dir) = &cfg.dump {
        std::fs::create_dir_all(dir).map_err(|source| InputError::Write { path: dir.display().to_string(), source })?;
        for (case, _) in &violations {
            for (tag, poset) in [("p", &case.p), ("q", &case.q)] {
                let path = dir.join(format!("violation-{}-{tag}.txt", case.trial));
                std::fs::write(&path, poset.to_text() + "\n")
                    .map_err(|source| InputError::Write { path: path.display().to_string(), source })?;
            }
        }
    }

    let mut text = String::new();
    push_line(
        &mut text,
        format!("{} trials (seed {}, d <= {}), {with_ext} with a common extension", cfg.trials, cfg.seed, cfg.max_d),
    );
    push_line(&mut text, format!("violations: {}", violations.len()));
    for (case, kind) in &violations {
        push_line(
            &mut text,
            format!("trial {}: {kind}; P: {} | Q: {} | {}", case.trial, case.p.to_text(), case.q.to_text(), case.reproducer()),
        );
    }
    let json = json!({
        "command": "fuzz",
        "seed": cfg.seed,
        "trials": cfg.trials,
        "max_d": cfg.max_d,
        "with_common_extension": with_ext,
        "violations": violations.iter().map(|(c, kind)| json!({
            "trial": c.trial,
            "kind": kind,
            "p": c.p.to_text(),
            "q": c.q.to_text(),
            "reproducer": c.reproducer(),
        })).collect::<Vec<Value>>(),
    });
    Ok(Report { passed: violations.is_empty(), text, json, csv: None })
}
