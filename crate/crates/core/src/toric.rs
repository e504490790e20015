//! The polynomial ring `K[x, y, z]` attached to `Ω(P,−Q)`, the monomial map
//! `π`, the quadratic binomial family, and generators of the toric ideal.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groebner::{self, MonomialOrder, PairSchedule, TermOrder};
use crate::poset::{enumerate_ideals, Ideal, IdealFamily, Poset, PosetError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ToricError {
    #[error("monomial has {got} exponents but the variable set has {expected} variables")]
    ForeignMonomial { expected: usize, got: usize },
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// Dense exponent vector over a fixed list of variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    /// Product of the listed variables (repeats allowed).
    pub fn product(nvars: usize, vars: &[usize]) -> Self {
        let mut e = vec![0; nvars];
        for &v in vars {
            e[v] += 1;
        }
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Variables present, folded onto 64 bits. `a | b` needs `mask(a) ⊆ mask(b)`.
    pub fn mask(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0, |m, (i, _)| m | 1 << (i % 64))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`; the caller guarantees divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// `self / divisor * factor` without the intermediate allocation.
    pub fn rewrite(&self, divisor: &Monomial, factor: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&divisor.0)
                .zip(&factor.0)
                .map(|((a, b), c)| a - b + c)
                .collect(),
        )
    }

    /// Keeps the first `n` exponents.
    pub fn truncate(&self, n: usize) -> Monomial {
        Monomial(self.0[..n].to_vec())
    }

    /// `(variable, exponent)` for every variable present.
    pub fn support(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().copied().enumerate().filter(|&(_, e)| e > 0)
    }
}

/// The binomial `first − second`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Binomial {
    pub first: Monomial,
    pub second: Monomial,
}

impl Binomial {
    pub fn new(first: Monomial, second: Monomial) -> Self {
        Binomial { first, second }
    }

    pub fn degree(&self) -> u32 {
        self.first.degree().max(self.second.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.first.degree() == self.second.degree()
    }

    /// Reoriented so that `first` is the larger monomial; `None` when the
    /// binomial is zero.
    pub fn oriented<O: TermOrder + ?Sized>(self, order: &O) -> Option<Binomial> {
        match order.cmp(&self.first, &self.second) {
            std::cmp::Ordering::Greater => Some(self),
            std::cmp::Ordering::Less => Some(Binomial { first: self.second, second: self.first }),
            std::cmp::Ordering::Equal => None,
        }
    }
}

/// A variable of `K[x, y, z]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variable {
    /// `x_I` for a nonempty ideal `I` of `P`.
    X(Ideal),
    /// `y_J` for a nonempty ideal `J` of `Q`.
    Y(Ideal),
    Z,
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::X(i) => write!(f, "x{i}"),
            Variable::Y(j) => write!(f, "y{j}"),
            Variable::Z => f.write_str("z"),
        }
    }
}

/// Exponents of `t₁ … t_d` followed by the exponent of `s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LaurentVector(pub Vec<i64>);

impl LaurentVector {
    pub fn s_exponent(&self) -> i64 {
        *self.0.last().expect("nonempty")
    }
}

/// Variables in canonical order (X block, Y block, `z` last) with their images under `π`.
#[derive(Clone, Debug)]
pub struct VariableSet {
    d: usize,
    p: Poset,
    q: Poset,
    ideals_p: IdealFamily,
    ideals_q: IdealFamily,
    vars: Vec<Variable>,
    images: Vec<LaurentVector>,
    index: HashMap<Variable, usize>,
}

pub fn build_variables(p: &Poset, q: &Poset) -> Result<VariableSet, ToricError> {
    if p.size() != q.size() {
        return Err(PosetError::DimensionMismatch(p.size(), q.size()).into());
    }
    let d = p.size();
    let ideals_p = enumerate_ideals(p);
    let ideals_q = enumerate_ideals(q);
    let mut vars = Vec::new();
    let mut images = Vec::new();
    let image = |ideal: Ideal, sign: i64| {
        let mut e: Vec<i64> = (0..d).map(|i| sign * ideal.contains(i) as i64).collect();
        e.push(1);
        LaurentVector(e)
    };
    for i in ideals_p.nonempty() {
        vars.push(Variable::X(i));
        images.push(image(i, 1));
    }
    for j in ideals_q.nonempty() {
        vars.push(Variable::Y(j));
        images.push(image(j, -1));
    }
    vars.push(Variable::Z);
    images.push(image(Ideal::EMPTY, 0));
    let index = vars.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    Ok(VariableSet {
        d,
        p: p.clone(),
        q: q.clone(),
        ideals_p,
        ideals_q,
        vars,
        images,
        index,
    })
}

impl VariableSet {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn posets(&self) -> (&Poset, &Poset) {
        (&self.p, &self.q)
    }

    pub fn ideals_p(&self) -> &IdealFamily {
        &self.ideals_p
    }

    pub fn ideals_q(&self) -> &IdealFamily {
        &self.ideals_q
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn var(&self, k: usize) -> Variable {
        self.vars[k]
    }

    pub fn image(&self, k: usize) -> &LaurentVector {
        &self.images[k]
    }

    pub fn index_of(&self, v: Variable) -> Option<usize> {
        self.index.get(&v).copied()
    }

    pub fn z(&self) -> usize {
        self.vars.len() - 1
    }

    /// `x_I`, with `x_∅ = z`.
    pub fn x(&self, ideal: Ideal) -> usize {
        if ideal.is_empty() {
            self.z()
        } else {
            self.index[&Variable::X(ideal)]
        }
    }

    /// `y_J`, with `y_∅ = z`.
    pub fn y(&self, ideal: Ideal) -> usize {
        if ideal.is_empty() {
            self.z()
        } else {
            self.index[&Variable::Y(ideal)]
        }
    }

    pub fn monomial(&self, vars: &[usize]) -> Monomial {
        Monomial::product(self.len(), vars)
    }

    /// Parses a variable name such as `x{1,2}`, `y{3}` or `z`.
    pub fn parse_variable(&self, name: &str) -> Option<usize> {
        let name = name.trim();
        if name == "z" {
            return Some(self.z());
        }
        let (tag, rest) = name.split_at_checked(1)?;
        let inner = rest.strip_prefix('{')?.strip_suffix('}')?;
        let labels = inner
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.trim().parse::<usize>().ok().filter(|&l| l >= 1 && l <= self.d))
            .collect::<Option<Vec<_>>>()?;
        let ideal = Ideal::from_labels(&labels);
        match tag {
            "x" => self.index_of(Variable::X(ideal)),
            "y" => self.index_of(Variable::Y(ideal)),
            _ => None,
        }
    }

    /// Parses `x{2}*x{1,2,3,4}^2*z`; `1` is the unit monomial.
    pub fn parse_monomial(&self, text: &str) -> Option<Monomial> {
        let text = text.trim();
        let mut m = Monomial::one(self.len());
        if text == "1" {
            return Some(m);
        }
        for factor in text.split('*') {
            let (name, power) = match factor.split_once('^') {
                Some((n, e)) => (n, e.trim().parse::<u32>().ok()?),
                None => (factor, 1),
            };
            m.0[self.parse_variable(name)?] += power;
        }
        Some(m)
    }

    /// Parses `first - second`.
    pub fn parse_binomial(&self, text: &str) -> Option<Binomial> {
        let (a, b) = text.split_once(" - ")?;
        Some(Binomial::new(self.parse_monomial(a)?, self.parse_monomial(b)?))
    }

    pub fn render_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".to_string();
        }
        m.support()
            .map(|(k, e)| {
                if e == 1 {
                    self.vars[k].to_string()
                } else {
                    format!("{}^{e}", self.vars[k])
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn render(&self, b: &Binomial) -> String {
        format!("{} - {}", self.render_monomial(&b.first), self.render_monomial(&b.second))
    }

    pub fn binomial_json(&self, b: &Binomial) -> BinomialJson {
        let side = |m: &Monomial| {
            m.support()
                .map(|(k, exp)| {
                    let (tag, ideal) = match self.vars[k] {
                        Variable::X(i) => ("x", i.labels()),
                        Variable::Y(j) => ("y", j.labels()),
                        Variable::Z => ("z", Vec::new()),
                    };
                    FactorJson { tag: tag.to_string(), ideal, exp }
                })
                .collect()
        };
        BinomialJson {
            text: self.render(b),
            first: side(&b.first),
            second: side(&b.second),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub tag: String,
    pub ideal: Vec<usize>,
    pub exp: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinomialJson {
    pub text: String,
    pub first: Vec<FactorJson>,
    pub second: Vec<FactorJson>,
}

/// `π(m)` as the exponent vector of a Laurent monomial in `t₁ … t_d, s`.
pub fn pi_eval(vs: &VariableSet, m: &Monomial) -> Result<LaurentVector, ToricError> {
    if m.nvars() != vs.len() {
        return Err(ToricError::ForeignMonomial { expected: vs.len(), got: m.nvars() });
    }
    let mut out = vec![0i64; vs.d + 1];
    for (k, e) in m.support() {
        for (o, x) in out.iter_mut().zip(&vs.images[k].0) {
            *o += e as i64 * x;
        }
    }
    Ok(LaurentVector(out))
}

/// `true` iff both monomials have the same image under `π`.
pub fn in_toric_ideal(vs: &VariableSet, b: &Binomial) -> Result<bool, ToricError> {
    Ok(pi_eval(vs, &b.first)? == pi_eval(vs, &b.second)?)
}

/// The quadratic binomials of types (i), (ii) and (iii), each oriented with
/// its initial monomial first under the default order and deduplicated.
pub fn family_g(vs: &VariableSet) -> Vec<Binomial> {
    let order = MonomialOrder::default_for(vs);
    let mut out: BTreeMap<(Monomial, Monomial), Binomial> = BTreeMap::new();
    let mut push = |first: Monomial, second: Monomial| {
        let b = Binomial::new(first, second)
            .oriented(&order)
            .expect("family binomials are nonzero");
        out.entry((b.first.clone(), b.second.clone())).or_insert(b);
    };

    for (ideals, var) in [
        (vs.ideals_p.ideals(), &VariableSet::x as &dyn Fn(&VariableSet, Ideal) -> usize),
        (vs.ideals_q.ideals(), &VariableSet::y),
    ] {
        for (a, &i) in ideals.iter().enumerate() {
            for &j in &ideals[a + 1..] {
                if i.is_subset(j) || j.is_subset(i) {
                    continue;
                }
                push(
                    vs.monomial(&[var(vs, i), var(vs, j)]),
                    vs.monomial(&[var(vs, i.intersection(j)), var(vs, i.union(j))]),
                );
            }
        }
    }

    for i in vs.ideals_p.nonempty() {
        for j in vs.ideals_q.nonempty() {
            let shared: Vec<usize> = vs.p.maximal_in(i).filter(|&k| vs.q.maximal_in(j).any(|l| l == k)).collect();
            for k in shared {
                push(
                    vs.monomial(&[vs.x(i), vs.y(j)]),
                    vs.monomial(&[vs.x(i.remove(k)), vs.y(j.remove(k))]),
                );
            }
        }
    }
    out.into_values().collect()
}

/// Block order for elimination: ambient variables (after the first `n`) are
/// compared first by degree-reverse-lexicographic order along `ambient_ranking`,
/// ties go to the inner order on the first `n` variables.
#[derive(Clone, Debug)]
pub struct EliminationOrder {
    n: usize,
    /// Ambient offsets (0-based, relative to `n`), lowest first.
    ambient_ranking: Vec<usize>,
    inner: MonomialOrder,
}

impl EliminationOrder {
    pub fn new(n: usize, ambient_ranking: Vec<usize>, inner: MonomialOrder) -> Self {
        EliminationOrder { n, ambient_ranking, inner }
    }
}

impl TermOrder for EliminationOrder {
    fn cmp(&self, a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
        let (ea, eb) = (&a.exps()[self.n..], &b.exps()[self.n..]);
        let da: u32 = ea.iter().sum();
        let db: u32 = eb.iter().sum();
        da.cmp(&db)
            .then_with(|| {
                for &k in &self.ambient_ranking {
                    if ea[k] != eb[k] {
                        return eb[k].cmp(&ea[k]);
                    }
                }
                std::cmp::Ordering::Equal
            })
            .then_with(|| self.inner.cmp(a, b))
    }
}

/// Default ambient ranking over `t₁ … t_d, s, w`, lowest first: `w, s, t_d, …, t₁`.
pub fn default_ambient_ranking(d: usize) -> Vec<usize> {
    let mut r = vec![d + 1, d];
    r.extend((0..d).rev());
    r
}

/// Generators of the toric ideal by elimination with the default ambient ranking.
///
/// The result is the reduced Gröbner basis of `I_Ω` for the default order.
pub fn toric_ideal_generators(vs: &VariableSet) -> Vec<Binomial> {
    toric_ideal_generators_with(vs, &default_ambient_ranking(vs.d), &MonomialOrder::default_for(vs))
}

/// Eliminates `t₁ … t_d, s, w` from the ideal generated by `v − π(v)` for every
/// variable `v` (negative exponents cleared with `w = (t₁⋯t_d)⁻¹`) together with
/// `t₁⋯t_d·w − 1`. The surviving elements are a Gröbner basis of `I_Ω` for `inner`.
pub fn toric_ideal_generators_with(vs: &VariableSet, ambient_ranking: &[usize], inner: &MonomialOrder) -> Vec<Binomial> {
    let n = vs.len();
    let d = vs.d;
    let total = n + d + 2;
    let (s, w) = (n + d, n + d + 1);
    let lift = |m: &Monomial| {
        let mut e = m.exps().to_vec();
        e.resize(total, 0);
        Monomial::from_exps(e)
    };
    let mut gens = Vec::with_capacity(n + 1);
    for k in 0..n {
        let mut image = vec![0u32; total];
        let laurent = &vs.images[k].0;
        let negative = laurent[..d].iter().any(|&x| x < 0);
        for i in 0..d {
            // t^{-ρ(J)} = w · t^{ρ([d] ∖ J)}
            image[n + i] = if negative { (laurent[i] + 1) as u32 } else { laurent[i] as u32 };
        }
        if negative {
            image[w] = 1;
        }
        image[s] = laurent[d] as u32;
        gens.push(Binomial::new(lift(&Monomial::var(n, k)), Monomial::from_exps(image)));
    }
    let mut inverse = vec![0u32; total];
    for e in &mut inverse[n..n + d] {
        *e = 1;
    }
    inverse[w] = 1;
    gens.push(Binomial::new(Monomial::from_exps(inverse), Monomial::one(total)));

    let order = EliminationOrder::new(n, ambient_ranking.to_vec(), inner.clone());
    let basis = groebner::buchberger_with(&gens, &order, PairSchedule::Degree);
    let eliminated = |m: &Monomial| m.exps()[n..].iter().all(|&e| e == 0);
    basis
        .into_iter()
        .filter(|b| eliminated(&b.first) && eliminated(&b.second))
        .map(|b| Binomial::new(b.first.truncate(n), b.second.truncate(n)))
        .collect()
}

/// All monomials of total degree `k` in `n` variables, in lexicographic order of exponents.
pub fn monomials_of_degree(n: usize, k: u32) -> Vec<Monomial> {
    fn rec(n: usize, pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos == n - 1 {
            cur[pos] = left;
            out.push(Monomial::from_exps(cur.clone()));
            cur[pos] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e;
            rec(n, pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, 0, k, &mut vec![0; n], &mut out);
    }
    out
}

/// Monomials of degree `k` grouped into fibres of `π`, in first-seen order.
pub fn fibres_of_degree(vs: &VariableSet, k: u32) -> Vec<Vec<Monomial>> {
    let mut groups: Vec<Vec<Monomial>> = Vec::new();
    let mut where_: HashMap<LaurentVector, usize> = HashMap::new();
    for m in monomials_of_degree(vs.len(), k) {
        let img = pi_eval(vs, &m).expect("monomial over vs");
        match where_.get(&img) {
            Some(&g) => groups[g].push(m),
            None => {
                where_.insert(img, groups.len());
                groups.push(vec![m]);
            }
        }
    }
    groups
}

/// A spanning set of the degree-2 component of `I_Ω`: within each fibre of
/// `π` on quadratic monomials, every monomial is joined to the fibre's first.
pub fn quadratic_part(vs: &VariableSet) -> Vec<Binomial> {
    fibres_of_degree(vs, 2)
        .into_iter()
        .flat_map(|fibre| {
            let head = fibre[0].clone();
            fibre
                .into_iter()
                .skip(1)
                .map(move |m| Binomial::new(head.clone(), m))
        })
        .collect()
}
