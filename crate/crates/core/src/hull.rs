//! Facet enumeration for full-dimensional lattice polytopes by the double
//! description method.
//!
//! A facet `a·x ≤ b` of `conv(V)` is an extreme ray `y = (b, −a)` of the cone
//! `{ y : y·(1, v) ≥ 0 for all v ∈ V }`. The cone is pointed because `V` is
//! full-dimensional, so we start from `d + 1` independent rows and insert the
//! remaining rows one at a time, using the combinatorial adjacency test.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HullError {
    #[error("point set spans only dimension {rank} of {d}")]
    RankDeficient { rank: usize, d: usize },
    #[error("empty point set")]
    Empty,
}

/// Bitset over the input rows.
#[derive(Clone, Debug, PartialEq, Eq)]
struct RowSet(Vec<u64>);

impl RowSet {
    fn new(n: usize) -> Self {
        RowSet(vec![0; n.div_ceil(64)])
    }
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, other: &RowSet) -> RowSet {
        RowSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
    fn is_subset(&self, other: &RowSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

struct Ray {
    coords: Vec<BigInt>,
    zeros: RowSet,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Divides out the gcd of the entries.
pub fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g.is_one() {
        v
    } else {
        v.into_iter().map(|x| x / &g).collect()
    }
}

/// Rank of an integer matrix, by fraction-free elimination over the rationals.
pub fn rank(rows: &[Vec<BigInt>]) -> usize {
    independent_rows(rows).len()
}

/// Greedy choice of a maximal linearly independent subset of rows.
fn independent_rows(rows: &[Vec<BigInt>]) -> Vec<usize> {
    let mut basis: Vec<Vec<BigRational>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut v: Vec<BigRational> = row.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        for (b, &p) in basis.iter().zip(&pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone() / &b[p];
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= &f * bi;
                }
            }
        }
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            basis.push(v);
            pivots.push(p);
            chosen.push(idx);
        }
    }
    chosen
}

/// Inverse of a square rational matrix, or `None` if singular.
fn inverse(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        let prow = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, p) in row.iter_mut().zip(&prow) {
                    *v -= &f * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Facets of `conv(points)` as pairs `(normal, offset)` meaning `normal·x ≤ offset`,
/// each in primitive integer form. The output is irredundant; ordering is unspecified.
pub fn facets(points: &[Vec<BigInt>]) -> Result<Vec<(Vec<BigInt>, BigInt)>, HullError> {
    let Some(first) = points.first() else {
        return Err(HullError::Empty);
    };
    let d = first.len();
    let rows: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| std::iter::once(BigInt::one()).chain(p.iter().cloned()).collect())
        .collect();
    let n = rows.len();
    let init = independent_rows(&rows);
    if init.len() < d + 1 {
        return Err(HullError::RankDeficient { rank: init.len().saturating_sub(1), d });
    }

    // Simplicial start: the rays are the columns of the inverse of the chosen rows.
    let square: Vec<Vec<BigRational>> = init
        .iter()
        .map(|&i| rows[i].iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let inv = inverse(&square).expect("independent rows form an invertible matrix");
    let mut rays: Vec<Ray> = (0..=d)
        .map(|col| {
            let column: Vec<BigRational> = (0..=d).map(|r| inv[r][col].clone()).collect();
            let lcm = column.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            let coords = primitive(column.iter().map(|x| (x * &lcm).to_integer()).collect());
            Ray { coords, zeros: RowSet::new(n) }
        })
        .collect();
    let add_row = |rays: &mut Vec<Ray>, r: usize| {
        let vals: Vec<BigInt> = rays.iter().map(|ray| dot(&ray.coords, &rows[r])).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();
        let mut fresh = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zeros.and(&rays[q].zeros);
                if common.count() + 1 < d {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .all(|k| k == p || k == q || !common.is_subset(&rays[k].zeros));
                if !adjacent {
                    continue;
                }
                let coords: Vec<BigInt> = rays[q]
                    .coords
                    .iter()
                    .zip(&rays[p].coords)
                    .map(|(yq, yp)| &vals[p] * yq - &vals[q] * yp)
                    .collect();
                let mut zeros = common;
                zeros.insert(r);
                fresh.push(Ray { coords: primitive(coords), zeros });
            }
        }
        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
        for (k, mut ray) in std::mem::take(rays).into_iter().enumerate() {
            if vals[k].is_zero() {
                ray.zeros.insert(r);
            }
            if !vals[k].is_negative() {
                kept.push(ray);
            }
        }
        kept.extend(fresh);
        *rays = kept;
    };
    // Rows of the initial simplex: the ray for column j is tight on every chosen row but j.
    for (j, ray) in rays.iter_mut().enumerate() {
        for (k, &row) in init.iter().enumerate() {
            if k != j {
                ray.zeros.insert(row);
            }
        }
    }
    for r in 0..n {
        if !init.contains(&r) {
            add_row(&mut rays, r);
        }
    }

    Ok(rays
        .into_iter()
        .map(|ray| {
            let offset = ray.coords[0].clone();
            let normal = ray.coords[1..].iter().map(|x| -x).collect();
            (normal, offset)
        })
        .collect())
}
