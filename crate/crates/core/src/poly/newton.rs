//! Newton polytopes and the half-Newton support of a polynomial.
//!
//! If `p = sum h_i^2` then every exponent of every `h_i` lies in half the
//! Newton polytope of `p`. Membership of a lattice point in a convex hull is
//! decided exactly: by Carathéodory, `q` is in `conv(S)` iff it is a convex
//! combination of some affinely independent subset of `S`, and each subset
//! is checked by Gaussian elimination over `Q`.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use super::{Monomial, Poly, PolyError};
use crate::rat::Rat;

/// A finite set of exponent vectors of a fixed arity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentSet {
    pub arity: usize,
    pub points: BTreeSet<Monomial>,
}

impl ExponentSet {
    pub fn new(arity: usize) -> Self {
        Self { arity, points: BTreeSet::new() }
    }

    pub fn support(p: &Poly) -> Self {
        Self { arity: p.arity(), points: p.terms().map(|(m, _)| m.clone()).collect() }
    }

    pub fn insert(&mut self, m: Monomial) {
        assert_eq!(m.arity(), self.arity);
        self.points.insert(m);
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.points.contains(m)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Monomial> {
        self.points.iter()
    }

    pub fn to_vecs(&self) -> Vec<Vec<u32>> {
        self.points.iter().map(|m| m.exps().to_vec()).collect()
    }
}

/// Solves `sum lambda_j * cols[j] = rhs` exactly. Returns the unique solution
/// when the columns are linearly independent and the system is consistent.
fn solve_unique(cols: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let rows = rhs.len();
    let k = cols.len();
    // augmented matrix, row-major
    let mut a: Vec<Vec<Rat>> =
        (0..rows).map(|r| cols.iter().map(|c| c[r].clone()).chain(std::iter::once(rhs[r].clone())).collect()).collect();
    let mut pivot_row = 0;
    for col in 0..k {
        let found = (pivot_row..rows).find(|&r| !a[r][col].is_zero())?;
        a.swap(pivot_row, found);
        let inv = a[pivot_row][col].recip();
        for v in a[pivot_row].iter_mut() {
            *v *= &inv;
        }
        for r in 0..rows {
            if r != pivot_row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in col..=k {
                    let delta = &factor * &a[pivot_row][c];
                    a[r][c] -= delta;
                }
            }
        }
        pivot_row += 1;
    }
    if a[pivot_row..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    Some((0..k).map(|i| a[i][k].clone()).collect())
}

fn combinations(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            if rec(i + 1, n, k, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    rec(0, n, k, &mut Vec::with_capacity(k), &mut f)
}

/// Exact test of `q` in the convex hull of `pts` (all of one arity).
pub fn in_convex_hull(q: &[Rat], pts: &[Vec<Rat>]) -> bool {
    if pts.is_empty() {
        return false;
    }
    let d = q.len();
    for i in 0..d {
        let lo = pts.iter().map(|p| &p[i]).min().unwrap();
        let hi = pts.iter().map(|p| &p[i]).max().unwrap();
        if q[i] < *lo || q[i] > *hi {
            return false;
        }
    }
    if pts.iter().any(|p| p.as_slice() == q) {
        return true;
    }
    let lifted: Vec<Vec<Rat>> =
        pts.iter().map(|p| p.iter().cloned().chain(std::iter::once(Rat::from_integer(1.into()))).collect()).collect();
    let rhs: Vec<Rat> = q.iter().cloned().chain(std::iter::once(Rat::from_integer(1.into()))).collect();
    for k in 2..=(d + 1).min(pts.len()) {
        let hit = combinations(pts.len(), k, |idx| {
            let cols: Vec<Vec<Rat>> = idx.iter().map(|&i| lifted[i].clone()).collect();
            matches!(solve_unique(&cols, &rhs), Some(l) if l.iter().all(|x| !x.is_negative()))
        });
        if hit {
            return true;
        }
    }
    false
}

/// All lattice points `b` with `2b` in the Newton polytope of `p`.
pub fn newton_half_support(p: &Poly) -> Result<ExponentSet, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let n = p.arity();
    let support: Vec<Vec<Rat>> =
        p.terms().map(|(m, _)| m.exps().iter().map(|&e| Rat::from_integer(e.into())).collect()).collect();
    let lo: Vec<u32> = (0..n).map(|i| p.terms().map(|(m, _)| m.exp(i)).min().unwrap().div_ceil(2)).collect();
    let hi: Vec<u32> = (0..n).map(|i| p.terms().map(|(m, _)| m.exp(i)).max().unwrap() / 2).collect();
    let mut out = ExponentSet::new(n);
    let mut cur = lo.clone();
    if lo.iter().zip(&hi).any(|(a, b)| a > b) {
        return Ok(out);
    }
    loop {
        let doubled: Vec<Rat> = cur.iter().map(|&e| Rat::from_integer((2 * e).into())).collect();
        if in_convex_hull(&doubled, &support) {
            out.insert(Monomial::from_exps(&cur));
        }
        // odometer over the box
        let mut i = 0;
        loop {
            if i == n {
                return Ok(out);
            }
            if cur[i] < hi[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = lo[i];
            i += 1;
        }
    }
}
