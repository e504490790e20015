//! The point configuration `Ω(P,−Q)`, the polytope `Δ(P,−Q)` it spans, and
//! the interior-origin test.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::hull::{self, HullError};
use crate::lp::{self, LpOutcome};
use crate::poset::{enumerate_ideals, Ideal, LinearExtension, Poset, PosetError};

/// An integer point of `Z^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(pub Vec<BigInt>);

impl LatticeVector {
    pub fn zero(d: usize) -> Self {
        LatticeVector(vec![BigInt::zero(); d])
    }

    pub fn from_i64(v: &[i64]) -> Self {
        LatticeVector(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn neg(&self) -> Self {
        LatticeVector(self.0.iter().map(|x| -x).collect())
    }

    pub fn to_i64(&self) -> Vec<i64> {
        self.0.iter().map(|x| x.to_i64().expect("coordinate fits in i64")).collect()
    }

    pub fn to_rational(&self) -> Vec<BigRational> {
        self.0.iter().map(|x| BigRational::from_integer(x.clone())).collect()
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Indicator vector of `subset` in `Z^d`.
pub fn rho(subset: Ideal, d: usize) -> LatticeVector {
    LatticeVector((0..d).map(|i| BigInt::from(subset.contains(i) as i64)).collect())
}

/// Where a point of `Ω` came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PointSource {
    /// `ρ(I)` for a nonempty ideal of `P`.
    Positive(Ideal),
    /// `−ρ(J)` for a nonempty ideal of `Q`.
    Negative(Ideal),
    Origin,
}

#[derive(Clone, Debug)]
pub struct PointConfiguration {
    pub d: usize,
    pub points: Vec<LatticeVector>,
    pub sources: Vec<PointSource>,
    pub origin_index: usize,
}

impl PointConfiguration {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `Ω ∖ {0}`, in configuration order.
    pub fn nonzero_points(&self) -> Vec<LatticeVector> {
        self.points
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != self.origin_index)
            .map(|(_, p)| p.clone())
            .collect()
    }

    pub fn contains_point(&self, v: &LatticeVector) -> bool {
        self.points.contains(v)
    }
}

/// `Ω(P,−Q)`: `ρ(I)` for nonempty `I ∈ J(P)`, then `−ρ(J)` for nonempty
/// `J ∈ J(Q)`, then the origin. Each block follows the canonical ideal order.
pub fn build_omega(p: &Poset, q: &Poset) -> Result<PointConfiguration, PosetError> {
    if p.size() != q.size() {
        return Err(PosetError::DimensionMismatch(p.size(), q.size()));
    }
    let d = p.size();
    let mut points = Vec::new();
    let mut sources = Vec::new();
    for ideal in enumerate_ideals(p).nonempty() {
        points.push(rho(ideal, d));
        sources.push(PointSource::Positive(ideal));
    }
    for ideal in enumerate_ideals(q).nonempty() {
        points.push(rho(ideal, d).neg());
        sources.push(PointSource::Negative(ideal));
    }
    points.push(LatticeVector::zero(d));
    sources.push(PointSource::Origin);
    let origin_index = points.len() - 1;
    debug_assert_eq!(points.iter().collect::<HashSet<_>>().len(), points.len());
    Ok(PointConfiguration { d, points, sources, origin_index })
}

/// The `2d` points `±(e_{i₁} + ⋯ + e_{i_k})` built from a linear extension.
pub fn extension_flag_points(ext: &LinearExtension, d: usize) -> Vec<LatticeVector> {
    let mut out = Vec::with_capacity(2 * d);
    let mut prefix = Ideal::EMPTY;
    for &i in &ext.perm {
        prefix = prefix.insert(i);
        let v = rho(prefix, d);
        out.push(v.neg());
        out.push(v);
    }
    out
}

/// Strictly positive barycentric weights on `Ω ∖ {0}` that sum to 1 and
/// combine to the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct InteriorCertificate {
    pub points: Vec<LatticeVector>,
    pub weights: Vec<BigRational>,
}

impl InteriorCertificate {
    /// Re-evaluates both identities and positivity exactly.
    pub fn verify(&self) -> bool {
        if self.points.len() != self.weights.len() || self.points.is_empty() {
            return false;
        }
        if !self.weights.iter().all(Signed::is_positive) {
            return false;
        }
        if self.weights.iter().sum::<BigRational>() != BigRational::one() {
            return false;
        }
        let d = self.points[0].dim();
        (0..d).all(|k| {
            self.points
                .iter()
                .zip(&self.weights)
                .map(|(p, w)| w * BigRational::from_integer(p.0[k].clone()))
                .sum::<BigRational>()
                .is_zero()
        })
    }

    pub fn min_weight(&self) -> BigRational {
        self.weights.iter().min().cloned().unwrap_or_else(BigRational::zero)
    }
}

/// Solves `max t` subject to `Σ λ_v v = 0`, `Σ λ_v = 1`, `λ_v ≥ t` over the
/// nonzero points, writing `λ_v = μ_v + t` with `μ, t ≥ 0`. The origin of
/// `Ω` is dropped. A certificate exists iff the optimum is positive.
pub fn origin_in_interior(cfg: &PointConfiguration) -> Option<InteriorCertificate> {
    let points = cfg.nonzero_points();
    let n = points.len();
    if n == 0 {
        return None;
    }
    let d = cfg.d;
    let q = |x: &BigInt| BigRational::from_integer(x.clone());
    let mut a = Vec::with_capacity(d + 1);
    for k in 0..d {
        let mut row: Vec<BigRational> = points.iter().map(|p| q(&p.0[k])).collect();
        row.push(row.iter().sum());
        a.push(row);
    }
    let mut total = vec![BigRational::one(); n];
    total.push(BigRational::from_integer(BigInt::from(n)));
    a.push(total);
    let mut b = vec![BigRational::zero(); d];
    b.push(BigRational::one());
    let mut c = vec![BigRational::zero(); n];
    c.push(BigRational::one());

    match lp::maximize(&c, &a, &b) {
        LpOutcome::Optimal { x, value } if value.is_positive() => {
            let weights = x[..n].iter().map(|mu| mu + &value).collect();
            Some(InteriorCertificate { points, weights })
        }
        _ => None,
    }
}

/// The inequality `normal·x ≤ offset` with a primitive integer normal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfSpace {
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
}

impl HalfSpace {
    pub fn eval(&self, pt: &[BigRational]) -> BigRational {
        self.normal
            .iter()
            .zip(pt)
            .map(|(a, x)| BigRational::from_integer(a.clone()) * x)
            .sum()
    }

    pub fn satisfied_by(&self, pt: &[BigRational]) -> bool {
        self.eval(pt) <= BigRational::from_integer(self.offset.clone())
    }

    pub fn is_tight_at(&self, pt: &LatticeVector) -> bool {
        self.normal.iter().zip(&pt.0).map(|(a, x)| a * x).sum::<BigInt>() == self.offset
    }
}

impl fmt::Display for HalfSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.normal.iter().map(|x| x.to_string()).collect();
        write!(f, "({})·x <= {}", parts.join(","), self.offset)
    }
}

/// `true` iff `pt` satisfies every inequality.
pub fn contains(hrep: &[HalfSpace], pt: &[BigRational]) -> bool {
    hrep.iter().all(|h| h.satisfied_by(pt))
}

/// A full-dimensional lattice polytope given by vertices; facets are computed
/// on first request and cached.
#[derive(Debug)]
pub struct Polytope {
    d: usize,
    vertices: Vec<LatticeVector>,
    hrep: OnceLock<Result<Vec<HalfSpace>, HullError>>,
}

impl Polytope {
    /// `Δ(P,−Q)`, with vertex list `Ω ∖ {0}`.
    pub fn twinned(cfg: &PointConfiguration) -> Self {
        Self::from_vertices(cfg.d, cfg.nonzero_points())
    }

    pub fn from_vertices(d: usize, vertices: Vec<LatticeVector>) -> Self {
        assert!(vertices.iter().all(|v| v.dim() == d), "vertex dimension mismatch");
        Polytope { d, vertices, hrep: OnceLock::new() }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn vertices(&self) -> &[LatticeVector] {
        &self.vertices
    }

    /// Irredundant facets, primitive normals, sorted lexicographically.
    pub fn hull_halfspaces(&self) -> Result<&[HalfSpace], HullError> {
        self.hrep
            .get_or_init(|| {
                let pts: Vec<Vec<BigInt>> = self.vertices.iter().map(|v| v.0.clone()).collect();
                let mut hs: Vec<HalfSpace> = hull::facets(&pts)?
                    .into_iter()
                    .map(|(normal, offset)| HalfSpace { normal, offset })
                    .collect();
                hs.sort();
                Ok(hs)
            })
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(Clone::clone)
    }

    pub fn to_json(&self) -> Result<PolytopeJson, HullError> {
        let facets = self
            .hull_halfspaces()?
            .iter()
            .map(|h| FacetJson {
                normal: h.normal.iter().map(|x| x.to_i64().expect("small normal")).collect(),
                offset: h.offset.to_i64().expect("small offset"),
            })
            .collect();
        Ok(PolytopeJson {
            d: self.d,
            vertices: self.vertices.iter().map(LatticeVector::to_i64).collect(),
            facets,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetJson {
    pub normal: Vec<i64>,
    pub offset: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub d: usize,
    pub vertices: Vec<Vec<i64>>,
    pub facets: Vec<FacetJson>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::common_linear_extension;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rho_examples() {
        assert!(rho(Ideal::EMPTY, 4).is_zero());
        assert_eq!(rho(Ideal::full(3), 3), LatticeVector::from_i64(&[1, 1, 1]));
        assert_eq!(rho(Ideal::from_labels(&[2, 4]), 5), LatticeVector::from_i64(&[0, 1, 0, 1, 0]));
    }

    #[test]
    fn omega_small_cases() {
        let one = Poset::chain(1);
        let cfg = build_omega(&one, &one).unwrap();
        let pts: Vec<_> = cfg.points.iter().map(LatticeVector::to_i64).collect();
        assert_eq!(pts, vec![vec![1], vec![-1], vec![0]]);
        assert_eq!(cfg.origin_index, 2);

        let c2 = Poset::chain(2);
        let cfg = build_omega(&c2, &c2).unwrap();
        let pts: Vec<_> = cfg.points.iter().map(LatticeVector::to_i64).collect();
        assert_eq!(pts, vec![vec![1, 0], vec![1, 1], vec![-1, 0], vec![-1, -1], vec![0, 0]]);

        let cfg = build_omega(&c2, &Poset::antichain(2)).unwrap();
        assert_eq!(cfg.len(), 6);
        assert!(cfg.contains_point(&LatticeVector::from_i64(&[0, -1])));
    }

    #[test]
    fn omega_dimension_mismatch() {
        assert!(build_omega(&Poset::chain(2), &Poset::chain(3)).is_err());
    }

    #[test]
    fn segment_certificate() {
        let one = Poset::chain(1);
        let cert = origin_in_interior(&build_omega(&one, &one).unwrap()).unwrap();
        assert_eq!(cert.weights, vec![q(1, 2), q(1, 2)]);
        assert!(cert.verify());
    }

    #[test]
    fn chain_antichain_interior() {
        for d in 1..=5 {
            let cfg = build_omega(&Poset::chain(d), &Poset::antichain(d)).unwrap();
            let cert = origin_in_interior(&cfg).expect("identity is a common extension");
            assert!(cert.verify());
        }
    }

    #[test]
    fn example_pair_not_interior() {
        let p = Poset::parse("5; 1<3 2<3 2<4 3<5 4<5").unwrap();
        let qp = Poset::parse("5; 4<3 3<2 2<1 4<5").unwrap();
        assert!(origin_in_interior(&build_omega(&p, &qp).unwrap()).is_none());
    }

    #[test]
    fn tampered_certificate_fails() {
        let one = Poset::chain(1);
        let mut cert = origin_in_interior(&build_omega(&one, &one).unwrap()).unwrap();
        cert.weights[0] = q(2, 3);
        cert.weights[1] = q(1, 3);
        assert!(!cert.verify());
    }

    #[test]
    fn segment_and_square_facets() {
        let seg = Polytope::from_vertices(1, vec![LatticeVector::from_i64(&[1]), LatticeVector::from_i64(&[-1])]);
        let h = seg.hull_halfspaces().unwrap();
        assert_eq!(h.len(), 2);
        assert!(contains(h, &[q(0, 1)]));
        assert!(!contains(h, &[q(2, 1)]));

        let square = Polytope::from_vertices(
            2,
            [[0, 0], [1, 0], [0, 1], [1, 1]].iter().map(|v| LatticeVector::from_i64(v)).collect(),
        );
        let rendered: Vec<String> = square.hull_halfspaces().unwrap().iter().map(|h| h.to_string()).collect();
        assert_eq!(rendered, ["(-1,0)·x <= 0", "(0,-1)·x <= 0", "(0,1)·x <= 1", "(1,0)·x <= 1"]);
    }

    #[test]
    fn chain_chain_facets() {
        let c2 = Poset::chain(2);
        let cfg = build_omega(&c2, &c2).unwrap();
        let poly = Polytope::twinned(&cfg);
        let h = poly.hull_halfspaces().unwrap();
        assert_eq!(h.len(), 4);
        for f in h {
            assert!(poly.vertices().iter().filter(|v| f.is_tight_at(v)).count() >= 2);
        }
        for v in &cfg.points {
            assert!(contains(h, &v.to_rational()));
        }
    }

    #[test]
    fn flag_points_lie_in_omega() {
        let p = Poset::parse("4; 1<3 2<4").unwrap();
        let qp = Poset::parse("4; 1<2 3<4").unwrap();
        let ext = common_linear_extension(&p, &qp).unwrap().unwrap();
        let cfg = build_omega(&p, &qp).unwrap();
        for v in extension_flag_points(&ext, 4) {
            assert!(cfg.contains_point(&v));
        }
    }

    #[test]
    fn json_export_shape() {
        let one = Poset::chain(1);
        let poly = Polytope::twinned(&build_omega(&one, &one).unwrap());
        let json = poly.to_json().unwrap();
        assert_eq!(json.vertices, vec![vec![1], vec![-1]]);
        assert_eq!(json.facets, vec![FacetJson { normal: vec![-1], offset: 1 }, FacetJson { normal: vec![1], offset: 1 }]);
    }
}
