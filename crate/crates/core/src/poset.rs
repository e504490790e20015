//! Finite posets on the labels `1..=d`, their poset ideals and linear extensions.
//!
//! Labels are 1-based in every textual form and 0-based in the API. The strict
//! order is kept as its transitive closure, one bitset row per element, so a
//! comparability query is a single mask test.

use std::collections::HashMap;
use std::fmt;

use num_rational::Ratio;
use rand::{seq::SliceRandom, Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported number of elements (ideals are `u32` bitsets).
pub const MAX_ELEMENTS: usize = 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("malformed poset text: {0}")]
    Parse(String),
    #[error("label {label} out of range 1..={d}")]
    LabelOutOfRange { label: usize, d: usize },
    #[error("relations contain a cycle: {}", render_cycle(.0))]
    Cycle(Vec<usize>),
    #[error("a poset needs between 1 and {MAX_ELEMENTS} elements, got {0}")]
    Size(usize),
    #[error("posets have different sizes ({0} vs {1})")]
    DimensionMismatch(usize, usize),
}

fn render_cycle(cycle: &[usize]) -> String {
    cycle
        .iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join("→")
}

/// A subset of `[d]` stored as a bitset; bit `i` is label `i + 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ideal(u32);

impl Ideal {
    pub const EMPTY: Ideal = Ideal(0);

    pub fn from_bits(bits: u32) -> Self {
        Ideal(bits)
    }

    pub fn full(d: usize) -> Self {
        if d >= 32 {
            Ideal(u32::MAX)
        } else {
            Ideal((1u32 << d) - 1)
        }
    }

    /// Builds a set from 0-based indices.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        Ideal(indices.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    /// Builds a set from 1-based labels.
    pub fn from_labels(labels: &[usize]) -> Self {
        Self::from_indices(labels.iter().map(|l| l - 1))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(self, i: usize) -> Self {
        Ideal(self.0 | 1 << i)
    }

    pub fn remove(self, i: usize) -> Self {
        Ideal(self.0 & !(1 << i))
    }

    pub fn union(self, other: Ideal) -> Self {
        Ideal(self.0 | other.0)
    }

    pub fn intersection(self, other: Ideal) -> Self {
        Ideal(self.0 & other.0)
    }

    pub fn is_subset(self, other: Ideal) -> bool {
        self.0 & !other.0 == 0
    }

    /// 0-based members in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |i| bits >> i & 1 == 1)
    }

    /// 1-based labels in increasing order.
    pub fn labels(self) -> Vec<usize> {
        self.indices().map(|i| i + 1).collect()
    }

    /// Canonical order: cardinality first, then lexicographic on the sorted labels.
    pub fn canonical_cmp(&self, other: &Ideal) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.labels().cmp(&other.labels()))
    }
}

impl fmt::Display for Ideal {
    /// Renders as `{1,2,3}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.labels().iter().map(|l| l.to_string()).collect();
        write!(f, "{{{}}}", labels.join(","))
    }
}

/// A strict partial order on `d` elements, stored transitively closed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    d: usize,
    /// `above[i]` holds every `j` with `i < j`.
    above: Vec<u32>,
    /// `below[j]` holds every `i` with `i < j`.
    below: Vec<u32>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poset({})", self.to_text())
    }
}

impl fmt::Display for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Poset {
    /// Transitive closure of the 0-based relations `a < b`.
    pub fn from_relations(d: usize, relations: &[(usize, usize)]) -> Result<Self, PosetError> {
        if d == 0 || d > MAX_ELEMENTS {
            return Err(PosetError::Size(d));
        }
        let mut above = vec![0u32; d];
        for &(a, b) in relations {
            for x in [a, b] {
                if x >= d {
                    return Err(PosetError::LabelOutOfRange { label: x + 1, d });
                }
            }
            above[a] |= 1 << b;
        }
        if let Some(cycle) = find_cycle(&above) {
            return Err(PosetError::Cycle(cycle));
        }
        // Boolean squaring R <- R ∪ R·R until stable.
        loop {
            let next: Vec<u32> = (0..d)
                .map(|i| {
                    Ideal(above[i])
                        .indices()
                        .fold(above[i], |acc, j| acc | above[j])
                })
                .collect();
            if next == above {
                break;
            }
            above = next;
        }
        let mut below = vec![0u32; d];
        for (i, row) in above.iter().enumerate() {
            for j in Ideal(*row).indices() {
                below[j] |= 1 << i;
            }
        }
        Ok(Poset { d, above, below })
    }

    pub fn antichain(d: usize) -> Self {
        Self::from_relations(d, &[]).expect("valid size")
    }

    /// The chain `1 < 2 < … < d`.
    pub fn chain(d: usize) -> Self {
        let rels: Vec<_> = (1..d).map(|i| (i - 1, i)).collect();
        Self::from_relations(d, &rels).expect("valid size")
    }

    /// Parses `"d; a<b c<d …"` with 1-based labels; chains like `1<2<3` are accepted.
    pub fn parse(text: &str) -> Result<Self, PosetError> {
        let (head, rest) = text
            .split_once(';')
            .ok_or_else(|| PosetError::Parse("missing ';' after the element count".into()))?;
        let d: usize = head
            .trim()
            .parse()
            .map_err(|_| PosetError::Parse(format!("bad element count {:?}", head.trim())))?;
        if d == 0 || d > MAX_ELEMENTS {
            return Err(PosetError::Size(d));
        }
        let mut rels = Vec::new();
        for token in rest.split(|c: char| c.is_whitespace() || c == ',') {
            if token.is_empty() {
                continue;
            }
            let labels = token
                .split('<')
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| PosetError::Parse(format!("bad relation {token:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if labels.len() < 2 {
                return Err(PosetError::Parse(format!("bad relation {token:?}")));
            }
            for &l in &labels {
                if l == 0 || l > d {
                    return Err(PosetError::LabelOutOfRange { label: l, d });
                }
            }
            rels.extend(labels.windows(2).map(|w| (w[0] - 1, w[1] - 1)));
        }
        Self::from_relations(d, &rels)
    }

    pub fn size(&self) -> usize {
        self.d
    }

    /// `i < j` (0-based).
    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.above[i] >> j & 1 == 1
    }

    pub fn below(&self, j: usize) -> Ideal {
        Ideal(self.below[j])
    }

    pub fn above(&self, i: usize) -> Ideal {
        Ideal(self.above[i])
    }

    /// All strict relations `(i, j)` with `i < j`, 0-based.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        (0..self.d)
            .flat_map(|i| Ideal(self.above[i]).indices().map(move |j| (i, j)))
            .collect()
    }

    /// Cover relations `i ⋖ j`, 0-based, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.relations()
            .into_iter()
            .filter(|&(i, j)| self.above[i] & self.below[j] == 0)
            .collect()
    }

    /// Canonical text form listing cover relations only.
    pub fn to_text(&self) -> String {
        let mut s = format!("{};", self.d);
        for (i, j) in self.covers() {
            s.push_str(&format!(" {}<{}", i + 1, j + 1));
        }
        s
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            d: self.d,
            covers: self.covers().iter().map(|&(i, j)| [i + 1, j + 1]).collect(),
        }
    }

    pub fn from_json(json: &PosetJson) -> Result<Self, PosetError> {
        for &[a, b] in &json.covers {
            for l in [a, b] {
                if l == 0 || l > json.d {
                    return Err(PosetError::LabelOutOfRange { label: l, d: json.d });
                }
            }
        }
        let rels: Vec<_> = json.covers.iter().map(|&[a, b]| (a - 1, b - 1)).collect();
        Self::from_relations(json.d, &rels)
    }

    /// `true` iff `members` is down-closed.
    pub fn is_ideal(&self, members: Ideal) -> bool {
        members.indices().all(|j| self.below(j).is_subset(members))
    }

    /// Maximal elements of `ideal` with respect to this order.
    pub fn maximal_in(&self, ideal: Ideal) -> impl Iterator<Item = usize> + '_ {
        ideal
            .indices()
            .filter(move |&i| self.above(i).intersection(ideal).is_empty())
    }

    /// The poset whose label `k` is this poset's label `order[k]`.
    ///
    /// Relabelling along a linear extension makes the identity an extension.
    pub fn relabeled(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.d, "relabeling must be a permutation");
        let mut rels = Vec::new();
        for a in 0..self.d {
            for b in 0..self.d {
                if self.lt(order[a], order[b]) {
                    rels.push((a, b));
                }
            }
        }
        Self::from_relations(self.d, &rels).expect("relabeling preserves acyclicity")
    }
}

/// JSON echo of a poset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub d: usize,
    pub covers: Vec<[usize; 2]>,
}

/// Returns one directed cycle of the relation graph, closed (first = last).
fn find_cycle(above: &[u32]) -> Option<Vec<usize>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    fn visit(v: usize, above: &[u32], marks: &mut [Mark], stack: &mut Vec<usize>) -> Option<Vec<usize>> {
        marks[v] = Mark::Active;
        stack.push(v);
        for w in Ideal(above[v]).indices() {
            match marks[w] {
                Mark::Active => {
                    let start = stack.iter().position(|&x| x == w).unwrap();
                    let mut cycle = stack[start..].to_vec();
                    cycle.push(w);
                    return Some(cycle);
                }
                Mark::New => {
                    if let Some(c) = visit(w, above, marks, stack) {
                        return Some(c);
                    }
                }
                Mark::Done => {}
            }
        }
        stack.pop();
        marks[v] = Mark::Done;
        None
    }
    let mut marks = vec![Mark::New; above.len()];
    let mut stack = Vec::new();
    (0..above.len()).find_map(|v| {
        if marks[v] == Mark::New {
            visit(v, above, &mut marks, &mut stack)
        } else {
            None
        }
    })
}

/// The distributive lattice of poset ideals, in canonical order.
#[derive(Clone, Debug)]
pub struct IdealFamily {
    owner: Poset,
    ideals: Vec<Ideal>,
    index: HashMap<Ideal, usize>,
}

impl IdealFamily {
    pub fn owner(&self) -> &Poset {
        &self.owner
    }

    pub fn ideals(&self) -> &[Ideal] {
        &self.ideals
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn contains(&self, ideal: Ideal) -> bool {
        self.index.contains_key(&ideal)
    }

    pub fn position(&self, ideal: Ideal) -> Option<usize> {
        self.index.get(&ideal).copied()
    }

    /// Nonempty ideals in canonical order.
    pub fn nonempty(&self) -> impl Iterator<Item = Ideal> + '_ {
        self.ideals.iter().copied().filter(|i| !i.is_empty())
    }
}

/// All down-closed subsets of `p`, including `∅` and `[d]`.
pub fn enumerate_ideals(p: &Poset) -> IdealFamily {
    // Walk the elements along a linear extension; an element may join only
    // once everything below it is in.
    let order = topological_order(&p.above, &p.below).expect("posets are acyclic");
    let mut ideals = Vec::new();
    fn grow(p: &Poset, order: &[usize], k: usize, current: Ideal, out: &mut Vec<Ideal>) {
        if k == order.len() {
            out.push(current);
            return;
        }
        let e = order[k];
        grow(p, order, k + 1, current, out);
        if p.below(e).is_subset(current) {
            grow(p, order, k + 1, current.insert(e), out);
        }
    }
    grow(p, &order, 0, Ideal::EMPTY, &mut ideals);
    ideals.sort_by(Ideal::canonical_cmp);
    let index = ideals.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    IdealFamily {
        owner: p.clone(),
        ideals,
        index,
    }
}

/// Kahn's algorithm, always taking the smallest available label.
fn topological_order(above: &[u32], below: &[u32]) -> Option<Vec<usize>> {
    let d = above.len();
    let mut placed = 0u32;
    let mut order = Vec::with_capacity(d);
    while order.len() < d {
        let next = (0..d).find(|&i| placed >> i & 1 == 0 && below[i] & !placed == 0)?;
        placed |= 1 << next;
        order.push(next);
    }
    Some(order)
}

/// A permutation `i₁ i₂ … i_d` of the (0-based) elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearExtension {
    pub perm: Vec<usize>,
}

impl LinearExtension {
    /// 1-based labels.
    pub fn labels(&self) -> Vec<usize> {
        self.perm.iter().map(|i| i + 1).collect()
    }
}

impl fmt::Display for LinearExtension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.perm.len() >= 10 { " " } else { "" };
        let labels: Vec<String> = self.labels().iter().map(|l| l.to_string()).collect();
        f.write_str(&labels.join(sep))
    }
}

/// `true` iff `perm` is a permutation of `0..d` listing every `i < j` with `i` first.
pub fn is_linear_extension(p: &Poset, perm: &[usize]) -> bool {
    if perm.len() != p.d {
        return false;
    }
    let mut pos = vec![usize::MAX; p.d];
    for (k, &i) in perm.iter().enumerate() {
        if i >= p.d || pos[i] != usize::MAX {
            return false;
        }
        pos[i] = k;
    }
    p.relations().iter().all(|&(i, j)| pos[i] < pos[j])
}

fn union_relation(p: &Poset, q: &Poset) -> Result<(Vec<u32>, Vec<u32>), PosetError> {
    if p.d != q.d {
        return Err(PosetError::DimensionMismatch(p.d, q.d));
    }
    let above = p.above.iter().zip(&q.above).map(|(a, b)| a | b).collect();
    let below = p.below.iter().zip(&q.below).map(|(a, b)| a | b).collect();
    Ok((above, below))
}

/// A permutation extending both `p` and `q`, from a topological sort of
/// `lt_p ∪ lt_q`; `None` when that union has a cycle.
pub fn common_linear_extension(p: &Poset, q: &Poset) -> Result<Option<LinearExtension>, PosetError> {
    let (above, below) = union_relation(p, q)?;
    Ok(topological_order(&above, &below).map(|perm| LinearExtension { perm }))
}

/// A directed cycle in `lt_p ∪ lt_q`, if one exists (0-based, closed).
pub fn union_cycle(p: &Poset, q: &Poset) -> Result<Option<Vec<usize>>, PosetError> {
    let (above, _) = union_relation(p, q)?;
    Ok(find_cycle(&above))
}

/// Seeded random poset: each `i < j` with `i < j` as integers is drawn with
/// probability `edge_prob`, then closed transitively.
pub fn random_poset(d: usize, edge_prob: Ratio<u32>, seed: u64) -> Poset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_poset_with(d, edge_prob, &mut rng)
}

pub fn random_poset_with<R: Rng>(d: usize, edge_prob: Ratio<u32>, rng: &mut R) -> Poset {
    let (num, den) = (*edge_prob.numer(), *edge_prob.denom());
    assert!(num <= den, "edge probability must lie in [0, 1]");
    let mut rels = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            if rng.gen_range(0..den) < num {
                rels.push((i, j));
            }
        }
    }
    Poset::from_relations(d, &rels).expect("label-increasing relations are acyclic")
}

/// Seeded pair `(P, Q)` of random posets. With `shuffle_q` the labels of `Q`
/// are permuted at random, so the pair may lack a common extension.
pub fn random_poset_pair(d: usize, edge_prob: Ratio<u32>, seed: u64, shuffle_q: bool) -> (Poset, Poset) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = random_poset_with(d, edge_prob, &mut rng);
    let mut q = random_poset_with(d, edge_prob, &mut rng);
    if shuffle_q {
        let mut perm: Vec<usize> = (0..d).collect();
        perm.shuffle(&mut rng);
        q = q.relabeled(&perm);
    }
    (p, q)
}
