//! Exact falsification sampling. A clean run is evidence, not proof.

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::CertError;
use crate::poly::Poly;
use crate::rat::{int, Rat};

pub(crate) const MAX_GRID_POINTS: u128 = 50_000_000;

/// The points `lo_i + k * step <= hi_i` of a box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub lo: Vec<Rat>,
    pub hi: Vec<Rat>,
    pub step: Rat,
}

impl Grid {
    pub fn cube(arity: usize, lo: Rat, hi: Rat, step: Rat) -> Self {
        Self { lo: vec![lo; arity], hi: vec![hi; arity], step }
    }

    /// Grid values of one axis, nearest to the box centre first and the
    /// larger of two equidistant values first.
    fn axis(&self, i: usize) -> Vec<Rat> {
        let mut vals = Vec::new();
        let mut v = self.lo[i].clone();
        while v <= self.hi[i] {
            vals.push(v.clone());
            v += &self.step;
        }
        let centre = (&self.lo[i] + &self.hi[i]) / int(2);
        vals.sort_by(|a, b| (a - &centre).abs().cmp(&(b - &centre).abs()).then_with(|| b.cmp(a)));
        vals
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SampleOutcome {
    NoCounterexample { points: u64 },
    Counterexample { point: Vec<Rat>, value: Rat },
}

/// Evaluates `p` exactly on every grid point. Points are visited centre-out,
/// first coordinate slowest, and the first negative value in that order is
/// returned regardless of thread count.
pub fn sample_nonnegativity(p: &Poly, grid: &Grid) -> Result<SampleOutcome, CertError> {
    let n = p.arity();
    if grid.lo.len() != n || grid.hi.len() != n {
        return Err(CertError::Malformed(format!("box has {} coordinates, polynomial has {n}", grid.lo.len())));
    }
    if !grid.step.is_positive() {
        return Err(CertError::EmptyBox(format!("step {} is not positive", grid.step)));
    }
    if let Some(i) = (0..n).find(|&i| grid.lo[i] > grid.hi[i]) {
        return Err(CertError::EmptyBox(format!("lower bound {} above upper bound {}", grid.lo[i], grid.hi[i])));
    }
    let mut total: u128 = 1;
    for i in 0..n {
        let count = ((&grid.hi[i] - &grid.lo[i]) / &grid.step).floor().to_integer() + 1;
        total = total.saturating_mul(u128::try_from(count).unwrap_or(u128::MAX));
        if total > MAX_GRID_POINTS {
            return Err(CertError::GridTooLarge(total));
        }
    }
    let axes: Vec<Vec<Rat>> = (0..n).map(|i| grid.axis(i)).collect();
    let point_at = |mut idx: u64| -> Vec<Rat> {
        let mut pt = vec![Rat::zero(); n];
        for i in (0..n).rev() {
            let len = axes[i].len() as u64;
            pt[i] = axes[i][(idx % len) as usize].clone();
            idx /= len;
        }
        pt
    };
    let hit = (0..total as u64).into_par_iter().find_first(|&idx| {
        let v = p.eval_rat(&point_at(idx)).expect("arity checked");
        v.is_negative()
    });
    Ok(match hit {
        Some(idx) => {
            let point = point_at(idx);
            let value = p.eval_rat(&point)?;
            SampleOutcome::Counterexample { point, value }
        }
        None => SampleOutcome::NoCounterexample { points: total as u64 },
    })
}
