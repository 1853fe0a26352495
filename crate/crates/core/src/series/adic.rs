//! Square completion in truncated series rings.
//!
//! Given `sum_i alpha_i x_{p_i}^2 + g` with `g` of order at least 3, the
//! iteration below finds `a_i` (order >= 2) and `b` free of the pivot
//! variables with `sum_i alpha_i (x_{p_i} + a_i)^2 + b` equal to the input
//! through degree `N`. Layer `d` of the remainder is split as
//! `sum_i x_{p_i} u_i + v`; then `a_i += u_i / (2 alpha_i)`, `b += v`, and the
//! remainder loses `v + sum_i ((x_{p_i} + a_i) u_i + u_i^2 / (4 alpha_i))`.

use num_traits::{Signed, Zero};

use super::{SeriesError, TruncSeries};
use crate::poly::{Monomial, Poly};
use crate::rat::{int, Rat};

/// `sum_i scales[i] * (x_{pivots[i]} + a[i])^2 + b`, valid through `verified_to`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdicResult {
    pub pivots: Vec<usize>,
    pub scales: Vec<Rat>,
    pub a: Vec<TruncSeries>,
    pub b: TruncSeries,
    pub verified_to: u32,
}

impl AdicResult {
    pub fn reconstruct(&self) -> TruncSeries {
        let vars = self.b.vars().clone();
        let mut acc = self.b.clone();
        for ((&p, s), a) in self.pivots.iter().zip(&self.scales).zip(&self.a) {
            let root = &TruncSeries::var_at(&vars, p, self.verified_to) + a;
            acc = &acc + &(&root * &root).scale(s);
        }
        acc
    }
}

/// Square completion with unit weights on the first `r` variables.
pub fn adic_decompose(g: &TruncSeries, r: usize, n: u32) -> Result<AdicResult, SeriesError> {
    if r > g.arity() {
        return Err(SeriesError::RankOutOfRange { r, arity: g.arity() });
    }
    let pivots: Vec<usize> = (0..r).collect();
    adic_decompose_weighted(g, &pivots, &vec![int(1); r], n)
}

/// Square completion of `sum_i scales[i] x_{pivots[i]}^2 + g`. A monomial of
/// a layer goes to the first listed pivot variable dividing it, and to `v`
/// if there is none.
pub fn adic_decompose_weighted(
    g: &TruncSeries,
    pivots: &[usize],
    scales: &[Rat],
    n: u32,
) -> Result<AdicResult, SeriesError> {
    let arity = g.arity();
    if pivots.len() != scales.len() || pivots.iter().any(|&p| p >= arity) {
        return Err(SeriesError::RankOutOfRange { r: pivots.len(), arity });
    }
    if let Some(d) = g.body().order() {
        if d < 3 {
            return Err(SeriesError::OrderTooLow { found: d, required: 3 });
        }
    }
    if g.trunc() < n {
        return Err(SeriesError::TruncationTooSmall { have: g.trunc(), need: n });
    }
    let vars = g.vars().clone();
    let xs: Vec<Poly> = pivots.iter().map(|&p| Poly::var_at(&vars, p)).collect();
    let mut a: Vec<Poly> = vec![Poly::zero(&vars); pivots.len()];
    let mut b = Poly::zero(&vars);
    let mut c = g.body().truncate(n);
    for d in 3..=n {
        let layer = c.homogeneous_part(d);
        if layer.is_zero() {
            continue;
        }
        let mut us: Vec<Poly> = vec![Poly::zero(&vars); pivots.len()];
        let mut v = Poly::zero(&vars);
        for (m, coef) in layer.terms() {
            match pivots.iter().position(|&p| m.exp(p) > 0) {
                Some(i) => {
                    let q = m.div(&Monomial::var(arity, pivots[i])).expect("divisible");
                    us[i] = &us[i] + &Poly::term(&vars, q, coef.clone());
                }
                None => v = &v + &Poly::term(&vars, m.clone(), coef.clone()),
            }
        }
        let mut delta = v.clone();
        for (i, u) in us.iter().enumerate() {
            if u.is_zero() {
                continue;
            }
            let shifted = &xs[i] + &a[i];
            delta = &delta + &shifted.mul_bounded(u, Some(n));
            let quarter = (int(4) * &scales[i]).recip();
            delta = &delta + &u.mul_bounded(u, Some(n)).scale(&quarter);
            a[i] = &a[i] + &u.scale(&(int(2) * &scales[i]).recip());
        }
        b = &b + &v;
        c = (&c - &delta).truncate(n);
    }
    debug_assert!(c.is_zero());
    Ok(AdicResult {
        pivots: pivots.to_vec(),
        scales: scales.to_vec(),
        a: a.iter().map(|p| TruncSeries::new(p, n)).collect(),
        b: TruncSeries::new(&b, n),
        verified_to: n,
    })
}

/// Outcome of [`complete_squares`].
#[derive(Clone, Debug, PartialEq)]
pub enum SquareCompletion {
    /// `f = sum_k scales[k] * roots[k]^2 + residual` through `verified_to`,
    /// where `roots[k] = linear[k] + shifts[k]` and the residual involves only
    /// `residual_vars`.
    Decomposition {
        scales: Vec<Rat>,
        linear: Vec<Poly>,
        shifts: Vec<TruncSeries>,
        roots: Vec<TruncSeries>,
        residual: TruncSeries,
        residual_vars: Vec<String>,
        verified_to: u32,
    },
    NotApplicable(String),
}

impl SquareCompletion {
    pub fn reconstruct(&self) -> Option<TruncSeries> {
        match self {
            SquareCompletion::Decomposition { scales, roots, residual, .. } => {
                let mut acc = residual.clone();
                for (s, r) in scales.iter().zip(roots) {
                    acc = &acc + &(r * r).scale(s);
                }
                Some(acc)
            }
            SquareCompletion::NotApplicable(_) => None,
        }
    }
}

/// Diagonalizes the quadratic part of `f` by symmetric elimination over `Q`
/// (congruence, no square roots), then completes squares through degree `n`.
pub fn complete_squares(f: &TruncSeries, n: u32) -> Result<SquareCompletion, SeriesError> {
    let n = n.min(f.trunc());
    let vars = f.vars().clone();
    let k = vars.len();
    match f.body().order() {
        Some(2) => {}
        other => {
            return Err(SeriesError::NotOrderTwo(other.map_or_else(|| "undefined".into(), |d| d.to_string())));
        }
    }
    // Gram matrix of the quadratic part
    let quad = f.body().homogeneous_part(2);
    let mut m = vec![vec![Rat::zero(); k]; k];
    for (mono, c) in quad.terms() {
        let idx: Vec<usize> = (0..k).filter(|&i| mono.exp(i) > 0).collect();
        match idx.as_slice() {
            [i] => m[*i][*i] = c.clone(),
            [i, j] => {
                let half = c / int(2);
                m[*i][*j] = half.clone();
                m[*j][*i] = half;
            }
            _ => unreachable!("degree-two monomial"),
        }
    }
    // transform[row] = coefficients of x'_row in terms of x
    let mut transform = vec![vec![Rat::zero(); k]; k];
    let mut pivots = Vec::new();
    let mut scales = Vec::new();
    for p in 0..k {
        transform[p][p] = int(1);
        let d = m[p][p].clone();
        if d.is_negative() {
            return Ok(SquareCompletion::NotApplicable(format!("negative pivot {} at {}", d, vars.names()[p])));
        }
        if d.is_zero() {
            if let Some(j) = (p + 1..k).find(|&j| !m[p][j].is_zero()) {
                return Ok(SquareCompletion::NotApplicable(format!(
                    "zero pivot at {} with nonzero coupling to {}: form is indefinite",
                    vars.names()[p],
                    vars.names()[j]
                )));
            }
            continue;
        }
        for j in p + 1..k {
            transform[p][j] = &m[p][j] / &d;
        }
        for i in p + 1..k {
            for j in p + 1..k {
                let t = &m[i][p] * &m[p][j] / &d;
                m[i][j] -= t;
            }
        }
        for j in p..k {
            m[p][j] = Rat::zero();
            m[j][p] = Rat::zero();
        }
        pivots.push(p);
        scales.push(d);
    }
    if pivots.len() + 2 < k {
        return Ok(SquareCompletion::NotApplicable(format!("quadratic part has rank {} < {} - 2", pivots.len(), k)));
    }
    let forward: Vec<Poly> = transform
        .iter()
        .map(|row| Poly::from_terms(&vars, row.iter().enumerate().map(|(j, c)| (Monomial::var(k, j), c.clone()))))
        .collect();
    // back-substitution for x in terms of x' (transform is unit upper triangular)
    let mut inverse: Vec<Poly> = vec![Poly::zero(&vars); k];
    for j in (0..k).rev() {
        let mut xj = Poly::var_at(&vars, j);
        for i in j + 1..k {
            xj = &xj - &inverse[i].scale(&transform[j][i]);
        }
        inverse[j] = xj;
    }
    let as_series = |ps: &[Poly]| -> Vec<TruncSeries> { ps.iter().map(|p| TruncSeries::new(p, n)).collect() };
    let f_new = TruncSeries::compose_poly(&f.with_trunc(n).body().clone(), &as_series(&inverse))?;
    let mut g = f_new.clone();
    for (&p, s) in pivots.iter().zip(&scales) {
        let xp = TruncSeries::var_at(&vars, p, n);
        g = &g - &(&xp * &xp).scale(s);
    }
    let res = adic_decompose_weighted(&g, &pivots, &scales, n)?;
    let fwd = as_series(&forward);
    let mut shifts = Vec::new();
    let mut roots = Vec::new();
    let mut linear = Vec::new();
    for (i, &p) in pivots.iter().enumerate() {
        let shift = res.a[i].compose(&fwd)?.with_trunc(n);
        roots.push(&TruncSeries::new(&forward[p], n) + &shift);
        shifts.push(shift);
        linear.push(forward[p].clone());
    }
    let residual_vars = (0..k).filter(|i| !pivots.contains(i)).map(|i| vars.names()[i].clone()).collect();
    Ok(SquareCompletion::Decomposition {
        scales,
        linear,
        shifts,
        roots,
        residual: res.b,
        residual_vars,
        verified_to: n,
    })
}
