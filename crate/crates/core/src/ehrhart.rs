//! Lattice-point counts of dilates, δ-vectors, and the reflexive / Fano /
//! normality checks.
//!
//! Counting walks the box `[−t·b, t·b]^d` coordinate by coordinate, carrying
//! the partial facet sums and pruning a branch as soon as some facet is
//! violated whatever the remaining coordinates are. For `Δ(P,−Q)` the bound
//! `b` is 1 since every vertex is a 0/±1 vector.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::geometry::{HalfSpace, LatticeVector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EhrhartError {
    #[error("δ-vector entry {index} is negative ({value})")]
    NegativeEntry { index: usize, value: BigInt },
    #[error("need L(0..={need}) but only {got} counts were given")]
    TooFewCounts { need: usize, got: usize },
}

/// `L(0), …, L(t_max)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhrhartCounts(pub Vec<BigInt>);

/// `δ₀, …, δ_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaVector(pub Vec<BigInt>);

impl DeltaVector {
    pub fn from_i64(v: &[i64]) -> Self {
        DeltaVector(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Sum of the entries, the normalized volume.
    pub fn volume(&self) -> BigInt {
        self.0.iter().sum()
    }

    pub fn to_i64(&self) -> Vec<i64> {
        self.0.iter().map(|x| x.to_i64().expect("entry fits in i64")).collect()
    }
}

struct Facets {
    normals: Vec<Vec<i64>>,
    offsets: Vec<i64>,
    /// `suffix[f][k]` = Σ_{j ≥ k} |normal_f[j]|.
    suffix: Vec<Vec<i64>>,
}

impl Facets {
    fn new(hrep: &[HalfSpace]) -> Self {
        let normals: Vec<Vec<i64>> = hrep
            .iter()
            .map(|h| h.normal.iter().map(|x| x.to_i64().expect("small normal")).collect())
            .collect();
        let offsets = hrep.iter().map(|h| h.offset.to_i64().expect("small offset")).collect();
        let suffix = normals
            .iter()
            .map(|n| {
                let mut s = vec![0; n.len() + 1];
                for k in (0..n.len()).rev() {
                    s[k] = s[k + 1] + n[k].abs();
                }
                s
            })
            .collect();
        Facets { normals, offsets, suffix }
    }

    fn dim(&self) -> usize {
        self.normals.first().map_or(0, Vec::len)
    }

    /// Visits every lattice point of `t·P` inside `[−r, r]^d`.
    fn walk(&self, t: i64, r: i64, first: i64, visit: &mut dyn FnMut(&[i64])) {
        let d = self.dim();
        let mut point = vec![0i64; d];
        let mut partial = vec![0i64; self.normals.len()];
        point[0] = first;
        for (p, n) in partial.iter_mut().zip(&self.normals) {
            *p = n[0] * first;
        }
        if self.feasible(&partial, 1, t, r) {
            self.descend(1, t, r, &mut point, &mut partial, visit);
        }
    }

    fn feasible(&self, partial: &[i64], k: usize, t: i64, r: i64) -> bool {
        partial
            .iter()
            .zip(&self.offsets)
            .zip(&self.suffix)
            .all(|((&p, &o), s)| p - r * s[k] <= t * o)
    }

    fn descend(&self, k: usize, t: i64, r: i64, point: &mut [i64], partial: &mut [i64], visit: &mut dyn FnMut(&[i64])) {
        if k == point.len() {
            visit(point);
            return;
        }
        for x in -r..=r {
            point[k] = x;
            for (p, n) in partial.iter_mut().zip(&self.normals) {
                *p += n[k] * x;
            }
            if self.feasible(partial, k + 1, t, r) {
                self.descend(k + 1, t, r, point, partial, visit);
            }
            for (p, n) in partial.iter_mut().zip(&self.normals) {
                *p -= n[k] * x;
            }
        }
    }
}

/// Number of lattice points of the `t`-th dilate, scanning `[−t·bound, t·bound]^d`.
pub fn count_dilate_in_box(hrep: &[HalfSpace], t: u32, bound: i64) -> BigInt {
    let facets = Facets::new(hrep);
    if facets.dim() == 0 {
        return BigInt::from(1);
    }
    let r = t as i64 * bound;
    let total: u64 = (-r..=r)
        .into_par_iter()
        .map(|first| {
            let mut n = 0u64;
            facets.walk(t as i64, r, first, &mut |_| n += 1);
            n
        })
        .sum();
    BigInt::from(total)
}

/// `#(tΔ ∩ Z^d)` for a polytope inside `[−1, 1]^d`.
pub fn count_dilate(hrep: &[HalfSpace], t: u32) -> BigInt {
    count_dilate_in_box(hrep, t, 1)
}

/// Lattice points of the `t`-th dilate inside `[−t·bound, t·bound]^d`.
pub fn dilate_points(hrep: &[HalfSpace], t: u32, bound: i64) -> Vec<Vec<i64>> {
    let facets = Facets::new(hrep);
    let r = t as i64 * bound;
    let mut out = Vec::new();
    for first in -r..=r {
        facets.walk(t as i64, r, first, &mut |p| out.push(p.to_vec()));
    }
    out
}

pub fn ehrhart_counts(hrep: &[HalfSpace], t_max: u32) -> EhrhartCounts {
    EhrhartCounts((0..=t_max).map(|t| count_dilate(hrep, t)).collect())
}

fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < k {
        return BigInt::zero();
    }
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `δ_i = Σ_{j=0}^{i} (−1)^j C(d+1, j) L(i−j)` for `0 ≤ i ≤ d`.
pub fn delta_vector(counts: &EhrhartCounts, d: usize) -> Result<DeltaVector, EhrhartError> {
    if counts.0.len() < d + 1 {
        return Err(EhrhartError::TooFewCounts { need: d, got: counts.0.len() });
    }
    let mut out = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let mut v = BigInt::zero();
        for j in 0..=i {
            let term = binomial(d as i64 + 1, j as i64) * &counts.0[i - j];
            if j % 2 == 0 {
                v += term;
            } else {
                v -= term;
            }
        }
        if v.is_negative() {
            return Err(EhrhartError::NegativeEntry { index: i, value: v });
        }
        out.push(v);
    }
    Ok(DeltaVector(out))
}

/// `L(t) = Σ_i δ_i · C(t + d − i, d)`.
pub fn count_from_delta(dv: &DeltaVector, t: u32) -> BigInt {
    let d = dv.0.len() as i64 - 1;
    dv.0.iter()
        .enumerate()
        .map(|(i, di)| di * binomial(t as i64 + d - i as i64, d))
        .sum()
}

/// `(symmetric, unimodal)`; unimodal means weakly rising then weakly falling.
pub fn is_symmetric_unimodal(dv: &DeltaVector) -> (bool, bool) {
    let v = &dv.0;
    let symmetric = v.iter().eq(v.iter().rev());
    let peak = v
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .map_or(0, |(k, _)| k);
    let unimodal = v[..=peak.min(v.len().saturating_sub(1))].windows(2).all(|w| w[0] <= w[1])
        && v[peak..].windows(2).all(|w| w[0] >= w[1]);
    (symmetric, unimodal)
}

/// Every facet, scaled to offset 1, has an integer normal. Requires the
/// origin in the interior (all offsets positive), else `false`.
pub fn check_reflexive(hrep: &[HalfSpace]) -> bool {
    !hrep.is_empty()
        && hrep.iter().all(|h| h.offset.is_positive())
        && hrep.iter().all(|h| h.normal.iter().all(|a| (a % &h.offset).is_zero()))
}

/// The origin is the only lattice point of `[−1, 1]^d` strictly inside.
pub fn check_fano(hrep: &[HalfSpace], d: usize) -> bool {
    let mut interior = Vec::new();
    let mut point = vec![-1i64; d];
    loop {
        let strict = hrep.iter().all(|h| {
            let v: BigInt = h.normal.iter().zip(&point).map(|(a, &x)| a * x).sum();
            v < h.offset
        });
        if strict {
            interior.push(point.clone());
        }
        // Odometer over {−1, 0, 1}^d.
        let Some(k) = point.iter().rposition(|&x| x < 1) else { break };
        point[k] += 1;
        for x in &mut point[k + 1..] {
            *x = -1;
        }
    }
    interior.len() == 1 && interior[0].iter().all(|&x| x == 0)
}

/// For `2 ≤ t ≤ t_max`, every lattice point of `tΔ` is a sum of `t` points of
/// `omega`. Sumsets are built incrementally, one Minkowski step per dilate.
pub fn check_normal(omega: &[LatticeVector], hrep: &[HalfSpace], t_max: u32) -> bool {
    let pts: Vec<Vec<i64>> = omega.iter().map(LatticeVector::to_i64).collect();
    let bound = pts.iter().flatten().map(|x| x.abs()).max().unwrap_or(0).max(1);
    let mut sums: HashSet<Vec<i64>> = pts.iter().cloned().collect();
    for t in 2..=t_max {
        sums = sums
            .iter()
            .flat_map(|a| pts.iter().map(move |w| a.iter().zip(w).map(|(x, y)| x + y).collect()))
            .collect();
        if !dilate_points(hrep, t, bound).iter().all(|p| sums.contains(p)) {
            return false;
        }
    }
    true
}

/// The normal-Gorenstein-Fano bundle for one polytope.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PropertyReport {
    pub d: usize,
    pub counts: Vec<String>,
    pub delta: Vec<String>,
    pub omega_size: usize,
    /// `L(1)`; equals `|Ω|` when `Δ` has no extra lattice points.
    pub lattice_points: String,
    pub symmetric: bool,
    pub unimodal: bool,
    pub reflexive: bool,
    pub fano: bool,
    /// Normality is only checked for dilates up to this bound.
    pub normal_checked_up_to: u32,
    pub normal: bool,
    pub passed: bool,
}

pub fn property_bundle(
    omega: &[LatticeVector],
    hrep: &[HalfSpace],
    d: usize,
    t_max: u32,
) -> Result<PropertyReport, EhrhartError> {
    let counts = ehrhart_counts(hrep, d as u32);
    let delta = delta_vector(&counts, d)?;
    let (symmetric, unimodal) = is_symmetric_unimodal(&delta);
    let reflexive = check_reflexive(hrep);
    let fano = check_fano(hrep, d);
    let normal = check_normal(omega, hrep, t_max);
    Ok(PropertyReport {
        d,
        counts: counts.0.iter().map(ToString::to_string).collect(),
        delta: delta.0.iter().map(ToString::to_string).collect(),
        omega_size: omega.len(),
        lattice_points: counts.0[1.min(d)].to_string(),
        symmetric,
        unimodal,
        reflexive,
        fano,
        normal_checked_up_to: t_max,
        normal,
        passed: symmetric && unimodal && reflexive && fano && normal,
    })
}
