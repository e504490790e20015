//! Brute-force oracles shared by the integration tests. None of them call the
//! routine they are used to check.

#![allow(dead_code)]

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use twinned::geometry::LatticeVector;
use twinned::lp::{maximize, LpOutcome};
use twinned::poset::Poset;

/// Every subset of `[d]` that is down-closed, found by scanning all `2^d` bitmasks.
pub fn ideals_by_filter(p: &Poset) -> Vec<Vec<usize>> {
    let d = p.size();
    let mut out: Vec<Vec<usize>> = (0u32..1 << d)
        .filter(|&mask| {
            (0..d).all(|j| mask & (1 << j) == 0 || (0..d).all(|i| !p.lt(i, j) || mask & (1 << i) != 0))
        })
        .map(|mask| (0..d).filter(|&i| mask & (1 << i) != 0).collect())
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// All linear extensions, by testing each of the `d!` permutations directly.
pub fn extensions_by_scan(p: &Poset) -> Vec<Vec<usize>> {
    let d = p.size();
    (0..d)
        .permutations(d)
        .filter(|perm| {
            let mut pos = vec![0; d];
            for (a, &i) in perm.iter().enumerate() {
                pos[i] = a;
            }
            (0..d).all(|i| (0..d).all(|j| !p.lt(i, j) || pos[i] < pos[j]))
        })
        .collect()
}

/// Every poset on `[d]`, one per distinct strict order.
pub fn all_posets(d: usize) -> Vec<Poset> {
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (0..d).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let rels: Vec<(usize, usize)> = pairs.iter().enumerate().filter(|(k, _)| mask & (1 << k) != 0).map(|(_, &r)| r).collect();
        if let Ok(p) = Poset::from_relations(d, &rels) {
            if seen.insert(p.relations()) {
                out.push(p);
            }
        }
    }
    out
}

/// Facets of `conv(points)` for `d ≤ 3`: every hyperplane through `d` affinely
/// independent points that leaves all points on one side, in primitive form.
pub fn facets_by_scan(points: &[Vec<i64>]) -> BTreeSet<(Vec<i64>, i64)> {
    let d = points[0].len();
    let mut out = BTreeSet::new();
    for combo in points.iter().combinations(d) {
        let normal = match d {
            1 => vec![1],
            2 => {
                let (a, b) = (combo[0], combo[1]);
                vec![b[1] - a[1], a[0] - b[0]]
            }
            3 => {
                let u: Vec<i64> = (0..3).map(|k| combo[1][k] - combo[0][k]).collect();
                let v: Vec<i64> = (0..3).map(|k| combo[2][k] - combo[0][k]).collect();
                vec![u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]
            }
            _ => panic!("scan oracle only handles d ≤ 3"),
        };
        if normal.iter().all(|&x| x == 0) {
            continue;
        }
        let dot = |p: &Vec<i64>| normal.iter().zip(p).map(|(a, b)| a * b).sum::<i64>();
        let level = dot(combo[0]);
        for sign in [1, -1] {
            if points.iter().all(|p| sign * dot(p) <= sign * level) {
                let n: Vec<i64> = normal.iter().map(|x| sign * x).collect();
                let g = n.iter().fold(0i64, |g, &x| gcd(g, x.abs()));
                out.insert((n.iter().map(|x| x / g).collect(), sign * level / g));
            }
        }
    }
    out
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Whether `x / t` is a convex combination of `points`, decided by an LP
/// feasibility problem rather than any facet description.
pub fn in_dilate_by_lp(points: &[LatticeVector], x: &[i64], t: i64) -> bool {
    if t == 0 {
        return x.iter().all(|&v| v == 0);
    }
    let n = points.len();
    let mut a = Vec::with_capacity(x.len() + 1);
    let mut b = Vec::with_capacity(x.len() + 1);
    for (k, &xk) in x.iter().enumerate() {
        a.push(points.iter().map(|p| BigRational::from_integer(p.0[k].clone() * t)).collect());
        b.push(BigRational::from_integer(BigInt::from(xk)));
    }
    a.push(vec![BigRational::from_integer(1.into()); n]);
    b.push(BigRational::from_integer(1.into()));
    // Row signs must allow a nonnegative right-hand side.
    for (row, rhs) in a.iter_mut().zip(b.iter_mut()) {
        if rhs.is_negative() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
            *rhs = -rhs.clone();
        }
    }
    let c = vec![BigRational::zero(); n];
    matches!(maximize(&c, &a, &b), LpOutcome::Optimal { .. })
}

/// `#(tΔ ∩ Z^d)` by testing every point of `[−t, t]^d` with the LP oracle.
pub fn count_by_lp(points: &[LatticeVector], d: usize, t: i64) -> usize {
    (0..d)
        .map(|_| -t..=t)
        .multi_cartesian_product()
        .filter(|x| in_dilate_by_lp(points, x, t))
        .count()
        .max(usize::from(d == 0))
}
