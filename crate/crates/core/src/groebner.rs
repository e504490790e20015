//! Buchberger's algorithm specialised to pure difference binomials.
//!
//! Every polynomial handled here has the form `u − v` with `u > v`, so
//! S-polynomials and reduction steps are exponent-vector rewrites: a binomial
//! either stays a binomial or vanishes. Pair selection uses the
//! Gebauer–Möller update, which subsumes the coprime-leading-monomial criterion.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::poset::{common_linear_extension, union_cycle};
use crate::toric::{self, in_toric_ideal, Binomial, Monomial, Variable, VariableSet};

pub trait TermOrder {
    fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering;
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("ranking is not a permutation of the {0} variables")]
    NotPermutation(usize),
    #[error("z must be the smallest variable, but {0} is ranked below it")]
    ZNotLowest(String),
    #[error("{lower} must rank below {upper} (its ideal is a proper subset)")]
    InclusionViolated { lower: String, upper: String },
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroebnerError {
    #[error("candidate binomial {0} is not in the toric ideal")]
    NotInIdeal(String),
    #[error(
        "P and Q have no common linear extension (cycle {0} in the union of their orders), \
         so the origin is not interior and the quadratic basis statement does not apply"
    )]
    NoCommonExtension(String),
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// Degree-reverse-lexicographic order along a ranking of the variables.
///
/// Total degree decides first; on a tie the lowest-ranked variable whose
/// exponents differ decides, and the monomial with the smaller exponent there
/// is the larger one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    /// Variables from smallest to largest.
    ranking: Vec<usize>,
}

impl MonomialOrder {
    /// `z` lowest, then the Y block, then the X block, each block in canonical
    /// ideal order.
    pub fn default_for(vs: &VariableSet) -> Self {
        MonomialOrder { ranking: default_ranking(vs) }
    }

    /// Any revlex order, with no compatibility checks.
    pub fn revlex_unchecked(ranking: Vec<usize>) -> Self {
        MonomialOrder { ranking }
    }

    pub fn ranking(&self) -> &[usize] {
        &self.ranking
    }

    /// Variable names from smallest to largest.
    pub fn ranking_names(&self, vs: &VariableSet) -> Vec<String> {
        self.ranking.iter().map(|&k| vs.var(k).to_string()).collect()
    }
}

impl TermOrder for MonomialOrder {
    fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exps(), b.exps());
        let n = self.ranking.len();
        let da: u32 = ea[..n].iter().sum();
        let db: u32 = eb[..n].iter().sum();
        da.cmp(&db).then_with(|| {
            for &v in &self.ranking {
                if ea[v] != eb[v] {
                    return eb[v].cmp(&ea[v]);
                }
            }
            Ordering::Equal
        })
    }
}

pub fn default_ranking(vs: &VariableSet) -> Vec<usize> {
    let mut ranking = vec![vs.z()];
    let (xs, ys): (Vec<usize>, Vec<usize>) = (0..vs.z()).partition(|&k| matches!(vs.var(k), Variable::X(_)));
    ranking.extend(ys);
    ranking.extend(xs);
    ranking
}

/// `(smaller, larger)` pairs every valid ranking must respect.
fn ranking_constraints(vs: &VariableSet) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for k in 0..vs.z() {
        out.push((vs.z(), k));
        for l in 0..vs.z() {
            let proper = match (vs.var(l), vs.var(k)) {
                (Variable::X(a), Variable::X(b)) | (Variable::Y(a), Variable::Y(b)) => a != b && a.is_subset(b),
                _ => false,
            };
            if proper {
                out.push((l, k));
            }
        }
    }
    out
}

/// Validates a ranking (smallest first) against the three constraints.
pub fn make_order(vs: &VariableSet, ranking: Vec<usize>) -> Result<MonomialOrder, OrderError> {
    let n = vs.len();
    let mut seen = vec![false; n];
    if ranking.len() != n || ranking.iter().any(|&k| k >= n || std::mem::replace(&mut seen[k], true)) {
        return Err(OrderError::NotPermutation(n));
    }
    let mut pos = vec![0; n];
    for (r, &k) in ranking.iter().enumerate() {
        pos[k] = r;
    }
    for (lo, hi) in ranking_constraints(vs) {
        if pos[lo] > pos[hi] {
            return Err(if lo == vs.z() {
                OrderError::ZNotLowest(vs.var(hi).to_string())
            } else {
                OrderError::InclusionViolated {
                    lower: vs.var(lo).to_string(),
                    upper: vs.var(hi).to_string(),
                }
            });
        }
    }
    Ok(MonomialOrder { ranking })
}

/// Parses whitespace-separated variable names, smallest first.
pub fn parse_ranking(vs: &VariableSet, text: &str) -> Result<MonomialOrder, OrderError> {
    let ranking = text
        .split_whitespace()
        .map(|name| vs.parse_variable(name).ok_or_else(|| OrderError::UnknownVariable(name.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    make_order(vs, ranking)
}

/// A random valid ranking: a random topological sort of the constraint poset.
pub fn random_ranking<R: Rng>(vs: &VariableSet, rng: &mut R) -> MonomialOrder {
    let n = vs.len();
    let mut below: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (lo, hi) in ranking_constraints(vs) {
        below[hi].push(lo);
    }
    let mut placed = vec![false; n];
    let mut ranking = Vec::with_capacity(n);
    while ranking.len() < n {
        let ready: Vec<usize> = (0..n)
            .filter(|&k| !placed[k] && below[k].iter().all(|&l| placed[l]))
            .collect();
        let &k = ready.choose(rng).expect("constraints are acyclic");
        placed[k] = true;
        ranking.push(k);
    }
    MonomialOrder { ranking }
}

/// S-pair processing order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PairSchedule {
    /// Smallest lcm degree first, ties by pair indices.
    #[default]
    Degree,
    /// Creation order.
    Fifo,
}

#[derive(Clone, Debug)]
struct Element {
    lead: Monomial,
    tail: Monomial,
    mask: u64,
}

impl Element {
    fn new(b: Binomial) -> Self {
        Element { mask: b.first.mask(), lead: b.first, tail: b.second }
    }

    fn binomial(&self) -> Binomial {
        Binomial::new(self.lead.clone(), self.tail.clone())
    }
}

fn find_divisor<'a>(elems: impl Iterator<Item = &'a Element>, m: &Monomial) -> Option<&'a Element> {
    let mask = m.mask();
    elems.into_iter().find(|g| g.mask & !mask == 0 && g.lead.divides(m))
}

fn rewrite_step<O: TermOrder + ?Sized>(order: &O, m: &Monomial, g: &Element) -> Monomial {
    let next = m.rewrite(&g.lead, &g.tail);
    assert_eq!(
        order.cmp(&next, m),
        Ordering::Less,
        "rewriting must strictly decrease a monomial; basis element is misoriented"
    );
    next
}

/// Rewrites the leading monomial until no leading monomial of `basis` divides it.
fn lead_reduce<'a, O, I>(order: &O, basis: I, mut f: Binomial) -> Option<Binomial>
where
    O: TermOrder + ?Sized,
    I: Iterator<Item = &'a Element> + Clone,
{
    while let Some(g) = find_divisor(basis.clone(), &f.first) {
        let first = rewrite_step(order, &f.first, g);
        f = Binomial::new(first, f.second).oriented(order)?;
    }
    Some(f)
}

fn normal_form<'a, O, I>(order: &O, basis: I, f: Binomial) -> Option<Binomial>
where
    O: TermOrder + ?Sized,
    I: Iterator<Item = &'a Element> + Clone,
{
    let mut f = lead_reduce(order, basis.clone(), f)?;
    while let Some(g) = find_divisor(basis.clone(), &f.second) {
        f.second = rewrite_step(order, &f.second, g);
    }
    debug_assert_eq!(order.cmp(&f.first, &f.second), Ordering::Greater);
    Some(f)
}

/// Normal form of `f` modulo `basis` (each element oriented under `order`);
/// `None` means `f` reduces to zero.
pub fn reduce<O: TermOrder + ?Sized>(f: &Binomial, basis: &[Binomial], order: &O) -> Option<Binomial> {
    let elems: Vec<Element> = basis.iter().cloned().map(Element::new).collect();
    let f = f.clone().oriented(order)?;
    normal_form(order, elems.iter(), f)
}

/// `(L/in f)·tail f − (L/in g)·tail g` with `L = lcm(in f, in g)`, oriented.
pub fn s_polynomial<O: TermOrder + ?Sized>(f: &Binomial, g: &Binomial, order: &O) -> Option<Binomial> {
    let l = f.first.lcm(&g.first);
    Binomial::new(l.rewrite(&f.first, &f.second), l.rewrite(&g.first, &g.second)).oriented(order)
}

struct Engine<'a, O: TermOrder + ?Sized> {
    order: &'a O,
    schedule: PairSchedule,
    polys: Vec<Element>,
    active: Vec<usize>,
    pairs: BTreeMap<(u64, u64, u64), (usize, usize, Monomial)>,
    seq: u64,
}

impl<O: TermOrder + ?Sized> Engine<'_, O> {
    fn key(&mut self, i: usize, j: usize, lcm: &Monomial) -> (u64, u64, u64) {
        self.seq += 1;
        match self.schedule {
            PairSchedule::Degree => (lcm.degree() as u64, i as u64, j as u64),
            PairSchedule::Fifo => (self.seq, 0, 0),
        }
    }

    /// Gebauer–Möller update with the new element `h`.
    fn update(&mut self, h: Element) {
        let hi = self.polys.len();
        let candidates: Vec<(usize, Monomial, bool)> = self
            .active
            .iter()
            .map(|&g| {
                let lead = &self.polys[g].lead;
                (g, h.lead.lcm(lead), h.lead.is_coprime(lead))
            })
            .collect();
        let mut kept: Vec<usize> = Vec::new();
        for idx in 0..candidates.len() {
            let (_, l1, coprime) = &candidates[idx];
            let dominated = !coprime
                && (candidates[idx + 1..].iter().any(|(_, l2, _)| l2.divides(l1))
                    || kept.iter().any(|&k| candidates[k].1.divides(l1)));
            if !dominated {
                kept.push(idx);
            }
        }

        let polys = &self.polys;
        self.pairs.retain(|_, (a, b, l)| {
            !(h.lead.divides(l) && polys[*a].lead.lcm(&h.lead) != *l && polys[*b].lead.lcm(&h.lead) != *l)
        });

        for idx in kept {
            let (g, lcm, coprime) = candidates[idx].clone();
            if !coprime {
                let key = self.key(g, hi, &lcm);
                self.pairs.insert(key, (g, hi, lcm));
            }
        }
        let polys = &self.polys;
        self.active.retain(|&g| !h.lead.divides(&polys[g].lead));
        self.active.push(hi);
        self.polys.push(h);
    }

    fn reduce_against_active(&self, f: Binomial) -> Option<Binomial> {
        lead_reduce(self.order, self.active.iter().map(|&k| &self.polys[k]), f)
    }

    fn run(mut self, gens: &[Binomial]) -> Vec<Binomial> {
        for g in gens {
            let Some(f) = g.clone().oriented(self.order) else { continue };
            if let Some(h) = self.reduce_against_active(f) {
                self.update(Element::new(h));
            }
        }
        while let Some((_, (i, j, _))) = self.pairs.pop_first() {
            let s = s_polynomial(&self.polys[i].binomial(), &self.polys[j].binomial(), self.order);
            if let Some(h) = s.and_then(|s| self.reduce_against_active(s)) {
                self.update(Element::new(h));
            }
        }
        // The active leads are already minimal; reduce the tails.
        let minimal: Vec<Element> = self.active.iter().map(|&k| self.polys[k].clone()).collect();
        let mut out: Vec<Binomial> = minimal
            .iter()
            .map(|e| {
                let mut tail = e.tail.clone();
                while let Some(g) = find_divisor(minimal.iter(), &tail) {
                    tail = rewrite_step(self.order, &tail, g);
                }
                Binomial::new(e.lead.clone(), tail)
            })
            .collect();
        let order = self.order;
        out.sort_by(|a, b| order.cmp(&a.first, &b.first));
        out
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`, sorted by
/// increasing leading monomial.
pub fn buchberger_with<O: TermOrder + ?Sized>(gens: &[Binomial], order: &O, schedule: PairSchedule) -> Vec<Binomial> {
    Engine {
        order,
        schedule,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: BTreeMap::new(),
        seq: 0,
    }
    .run(gens)
}

/// A Gröbner basis with every element oriented initial-monomial first.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub elements: Vec<Binomial>,
    pub order: MonomialOrder,
    pub reduced: bool,
}

impl GroebnerBasis {
    pub fn initial_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.elements.iter().map(|b| &b.first)
    }

    pub fn reduce(&self, f: &Binomial) -> Option<Binomial> {
        reduce(f, &self.elements, &self.order)
    }

    pub fn contains(&self, b: &Binomial) -> bool {
        self.elements.contains(b)
    }

    /// One binomial per line, initial monomial first.
    pub fn dump(&self, vs: &VariableSet) -> String {
        self.elements.iter().map(|b| vs.render(b) + "\n").collect()
    }
}

pub fn buchberger(gens: &[Binomial], order: &MonomialOrder) -> GroebnerBasis {
    buchberger_scheduled(gens, order, PairSchedule::Degree)
}

pub fn buchberger_scheduled(gens: &[Binomial], order: &MonomialOrder, schedule: PairSchedule) -> GroebnerBasis {
    GroebnerBasis {
        elements: buchberger_with(gens, order, schedule),
        order: order.clone(),
        reduced: true,
    }
}

/// Largest total degree of an element, 0 for the empty basis.
pub fn max_degree(gb: &GroebnerBasis) -> u32 {
    gb.elements.iter().map(Binomial::degree).max().unwrap_or(0)
}

/// `true` iff every S-pair of `candidate` and every generator of the ideal
/// reduce to zero modulo `candidate`. Each candidate must lie in `I_Ω`.
pub fn is_groebner(
    vs: &VariableSet,
    candidate: &[Binomial],
    ideal_gens: &[Binomial],
    order: &MonomialOrder,
) -> Result<bool, GroebnerError> {
    let mut elems = Vec::with_capacity(candidate.len());
    for b in candidate {
        if !in_toric_ideal(vs, b).unwrap_or(false) {
            return Err(GroebnerError::NotInIdeal(vs.render(b)));
        }
        if let Some(o) = b.clone().oriented(order) {
            elems.push(Element::new(o));
        }
    }
    let zero = |f: Option<Binomial>| f.and_then(|f| lead_reduce(order, elems.iter(), f)).is_none();
    for (a, f) in elems.iter().enumerate() {
        for g in &elems[a + 1..] {
            if !zero(s_polynomial(&f.binomial(), &g.binomial(), order)) {
                return Ok(false);
            }
        }
    }
    Ok(ideal_gens.iter().all(|g| zero(g.clone().oriented(order))))
}

/// `true` iff each side's generators reduce to zero modulo the other side's
/// reduced Gröbner basis.
pub fn ideal_equality(gens_a: &[Binomial], gens_b: &[Binomial], order: &MonomialOrder) -> bool {
    let gb_a = buchberger(gens_a, order);
    let gb_b = buchberger(gens_b, order);
    gens_b.iter().all(|g| gb_a.reduce(g).is_none()) && gens_a.iter().all(|g| gb_b.reduce(g).is_none())
}

/// Outcome of checking the quadratic Gröbner basis statement for one order.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct QuadraticBasisReport {
    /// Variable names from smallest to largest.
    pub ranking: Vec<String>,
    pub family_size: usize,
    pub toric_generators: usize,
    /// (a) every S-pair of the family and every toric generator reduces to zero.
    pub family_is_groebner: bool,
    pub reduced_basis_size: usize,
    /// (b) must be 2.
    pub reduced_basis_max_degree: u32,
    /// (c) every initial monomial of the reduced basis is a first monomial of the family.
    pub initials_from_family: bool,
    /// Informational: the family coincides with the reduced basis as a set.
    pub family_is_reduced_basis: bool,
    pub passed: bool,
}

pub fn verify_theorem2(vs: &VariableSet, order: &MonomialOrder) -> Result<QuadraticBasisReport, GroebnerError> {
    require_common_extension(vs)?;
    let gens = toric::toric_ideal_generators(vs);
    verify_theorem2_with(vs, order, &gens)
}

fn require_common_extension(vs: &VariableSet) -> Result<(), GroebnerError> {
    let (p, q) = vs.posets();
    if common_linear_extension(p, q).expect("same size").is_none() {
        let cycle = union_cycle(p, q)
            .expect("same size")
            .map(|c| c.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join("→"))
            .unwrap_or_default();
        return Err(GroebnerError::NoCommonExtension(cycle));
    }
    Ok(())
}

/// As [`verify_theorem2`], reusing precomputed generators of `I_Ω`.
pub fn verify_theorem2_with(
    vs: &VariableSet,
    order: &MonomialOrder,
    toric_gens: &[Binomial],
) -> Result<QuadraticBasisReport, GroebnerError> {
    require_common_extension(vs)?;
    let family = toric::family_g(vs);
    let family_is_groebner = is_groebner(vs, &family, toric_gens, order)?;
    let gb = buchberger(toric_gens, order);
    let degree = max_degree(&gb);
    let oriented: HashSet<Binomial> = family.iter().filter_map(|b| b.clone().oriented(order)).collect();
    let firsts: HashSet<&Monomial> = oriented.iter().map(|b| &b.first).collect();
    let initials_from_family = gb.initial_monomials().all(|m| firsts.contains(m));
    let family_is_reduced_basis = oriented.len() == gb.elements.len() && gb.elements.iter().all(|b| oriented.contains(b));
    Ok(QuadraticBasisReport {
        ranking: order.ranking_names(vs),
        family_size: family.len(),
        toric_generators: toric_gens.len(),
        family_is_groebner,
        reduced_basis_size: gb.elements.len(),
        reduced_basis_max_degree: degree,
        initials_from_family,
        family_is_reduced_basis,
        passed: family_is_groebner && degree == 2 && initials_from_family,
    })
}

/// Counts, per `π`-fibre of monomials of degree `k`, how many monomials are
/// standard (divisible by no initial monomial). A Gröbner basis of `I_Ω`
/// leaves exactly one standard monomial in every fibre.
pub fn standard_monomials_per_fibre(vs: &VariableSet, gb: &GroebnerBasis, k: u32) -> Vec<usize> {
    let initials: Vec<&Monomial> = gb.initial_monomials().collect();
    toric::fibres_of_degree(vs, k)
        .iter()
        .map(|fibre| fibre.iter().filter(|m| !initials.iter().any(|i| i.divides(m))).count())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Poset;
    use crate::toric::{build_variables, family_g, toric_ideal_generators};

    fn singleton() -> VariableSet {
        let one = Poset::chain(1);
        build_variables(&one, &one).unwrap()
    }

    fn example_pair() -> VariableSet {
        let p = Poset::parse("5; 1<3 2<3 2<4 3<5 4<5").unwrap();
        let q = Poset::parse("5; 4<3 3<2 2<1 4<5").unwrap();
        build_variables(&p, &q).unwrap()
    }

    #[test]
    fn default_order_is_valid() {
        let vs = example_pair();
        let def = default_ranking(&vs);
        assert!(make_order(&vs, def).is_ok());
    }

    #[test]
    fn order_rejections() {
        let vs = build_variables(&Poset::chain(2), &Poset::chain(2)).unwrap();
        // vars: x{1} x{1,2} y{1} y{1,2} z
        let err = make_order(&vs, vec![0, 4, 2, 1, 3]).unwrap_err();
        assert_eq!(err, OrderError::ZNotLowest("x{1}".into()));
        let err = make_order(&vs, vec![4, 1, 0, 2, 3]).unwrap_err();
        assert_eq!(
            err,
            OrderError::InclusionViolated { lower: "x{1}".into(), upper: "x{1,2}".into() }
        );
        assert_eq!(make_order(&vs, vec![4, 0, 1, 2]), Err(OrderError::NotPermutation(5)));
        assert_eq!(make_order(&vs, vec![4, 0, 0, 2, 3]), Err(OrderError::NotPermutation(5)));
    }

    #[test]
    fn revlex_comparisons() {
        let vs = build_variables(&Poset::chain(2), &Poset::chain(2)).unwrap();
        let ord = MonomialOrder::default_for(&vs);
        let (x1, x12, z) = (0, 1, 4);
        assert_eq!(ord.cmp(&vs.monomial(&[z, z]), &vs.monomial(&[x1, z])), Ordering::Less);
        assert_eq!(ord.cmp(&vs.monomial(&[x1, x12]), &vs.monomial(&[x1, x12])), Ordering::Equal);
        assert_eq!(ord.cmp(&vs.monomial(&[x1, x12]), &vs.monomial(&[x12, x12])), Ordering::Less);
        assert_eq!(ord.cmp(&vs.monomial(&[z]), &vs.monomial(&[z, z])), Ordering::Less);
    }

    #[test]
    fn reduce_basics() {
        let vs = singleton();
        let ord = MonomialOrder::default_for(&vs);
        let g = vs.parse_binomial("x{1}*y{1} - z^2").unwrap();
        assert!(reduce(&g, std::slice::from_ref(&g), &ord).is_none());
        let f = vs.parse_binomial("x{1}^2 - z^2").unwrap();
        assert_eq!(reduce(&f, std::slice::from_ref(&g), &ord), Some(f.clone()));
        let h = vs.parse_binomial("x{1}^2*y{1} - x{1}*z^2").unwrap();
        assert!(reduce(&h, &[g], &ord).is_none());
    }

    #[test]
    fn buchberger_trivial_inputs() {
        let vs = singleton();
        let ord = MonomialOrder::default_for(&vs);
        assert!(buchberger(&[], &ord).elements.is_empty());
        assert_eq!(max_degree(&buchberger(&[], &ord)), 0);
        let g = vs.parse_binomial("x{1}*y{1} - z^2").unwrap();
        let gb = buchberger(std::slice::from_ref(&g), &ord);
        assert_eq!(gb.elements, vec![g]);
    }

    #[test]
    fn example_s_polynomial_is_the_cubic() {
        let vs = example_pair();
        let ord = MonomialOrder::default_for(&vs);
        let f = vs.parse_binomial("x{2,4}*x{1,2,3} - x{2}*x{1,2,3,4}").unwrap();
        let g = vs.parse_binomial("x{1,2,3}*y{1,2,3,4,5} - y{4,5}*z").unwrap();
        assert!(in_toric_ideal(&vs, &f).unwrap() && in_toric_ideal(&vs, &g).unwrap());
        let s = s_polynomial(&f, &g, &ord).unwrap();
        assert_eq!(vs.render(&s), "x{2}*x{1,2,3,4}*y{1,2,3,4,5} - x{2,4}*y{4,5}*z");
    }

    #[test]
    fn example_reduced_basis_has_cubic() {
        let vs = example_pair();
        let ord = MonomialOrder::default_for(&vs);
        let gens = toric_ideal_generators(&vs);
        let gb = buchberger(&gens, &ord);
        let cubic = vs.parse_binomial("x{2}*x{1,2,3,4}*y{1,2,3,4,5} - x{2,4}*y{4,5}*z").unwrap();
        assert!(gb.contains(&cubic), "{}", gb.dump(&vs));
        assert_eq!(max_degree(&gb), 3);
        assert!(!is_groebner(&vs, &family_g(&vs), &gens, &ord).unwrap());
    }

    #[test]
    fn is_groebner_rejects_foreign_candidate() {
        let vs = singleton();
        let ord = MonomialOrder::default_for(&vs);
        let bad = vs.parse_binomial("x{1}^2 - z^2").unwrap();
        assert!(matches!(is_groebner(&vs, &[bad], &[], &ord), Err(GroebnerError::NotInIdeal(_))));
    }

    #[test]
    fn quadratic_basis_requires_common_extension() {
        let vs = example_pair();
        let err = verify_theorem2(&vs, &MonomialOrder::default_for(&vs)).unwrap_err();
        assert!(matches!(err, GroebnerError::NoCommonExtension(_)));
    }

    #[test]
    fn quadratic_basis_chain_antichain() {
        let vs = build_variables(&Poset::chain(3), &Poset::antichain(3)).unwrap();
        let report = verify_theorem2(&vs, &MonomialOrder::default_for(&vs)).unwrap();
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn ideal_equality_cases() {
        let vs = singleton();
        let ord = MonomialOrder::default_for(&vs);
        let g = vs.parse_binomial("x{1}*y{1} - z^2").unwrap();
        assert!(ideal_equality(std::slice::from_ref(&g), std::slice::from_ref(&g), &ord));
        assert!(!ideal_equality(&[], &[g], &ord));
    }

    #[test]
    fn parse_ranking_names() {
        let vs = build_variables(&Poset::chain(2), &Poset::chain(2)).unwrap();
        let ord = parse_ranking(&vs, "z y{1} x{1} y{1,2} x{1,2}").unwrap();
        assert_eq!(ord.ranking_names(&vs), ["z", "y{1}", "x{1}", "y{1,2}", "x{1,2}"]);
        assert!(matches!(parse_ranking(&vs, "z q"), Err(OrderError::UnknownVariable(_))));
    }

    #[test]
    fn random_rankings_are_valid() {
        use rand::SeedableRng;
        let vs = example_pair();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let ord = random_ranking(&vs, &mut rng);
            assert!(make_order(&vs, ord.ranking().to_vec()).is_ok());
        }
    }
}
