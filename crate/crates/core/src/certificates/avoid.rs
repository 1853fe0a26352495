//! Birational endomorphisms of affine space that miss chosen points.
//!
//! One step, in coordinates `y = A x + s`, is
//! `(y_1, ..., y_n) -> (y_1, ..., y_{n-1}, P(y_1) y_n)` with `P` the minimal
//! polynomial over `Q` of the avoided point's first coordinate. It is an
//! isomorphism over `P(y_1) != 0` and misses the avoided point as long as
//! that point's last coordinate is nonzero. Several points are handled one at
//! a time, pulling the remaining points back through each step.

use num_traits::{One, Zero};

use super::CertError;
use crate::poly::{Poly, Vars};
use crate::rat::{int, GaussRat, Rat};

/// Largest absolute value of a search coefficient.
const SEARCH_HEIGHT: i64 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AvoidStep {
    /// `y = matrix * x + shift`; integer entries, determinant one.
    pub matrix: Vec<Vec<Rat>>,
    pub shift: Vec<Rat>,
    pub inverse: Vec<Vec<Rat>>,
    /// Minimal polynomial in the variable `t`.
    pub min_poly: Poly,
    /// The point this step misses, in the source coordinates of the step.
    pub avoided: Vec<GaussRat>,
}

/// The composite `pi_1 ∘ pi_2 ∘ ... ∘ pi_r` of `steps`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AvoidMap {
    pub arity: usize,
    pub steps: Vec<AvoidStep>,
}

/// Minimal polynomial over `Q` of an element of `Q(i)`, in the variable `t`.
pub fn minimal_polynomial(z: &GaussRat) -> Poly {
    let v = Vars::new(&["t"]);
    let t = Poly::var_at(&v, 0);
    if z.im.is_zero() {
        &t - &Poly::constant(&v, z.re.clone())
    } else {
        let lin = t.scale(&(int(-2) * &z.re));
        &(&(&t * &t) + &lin) + &Poly::constant(&v, z.norm_sq())
    }
}

fn eval_t(p: &Poly, z: &GaussRat) -> GaussRat {
    p.evaluate(std::slice::from_ref(z)).expect("one variable")
}

fn apply_affine(m: &[Vec<Rat>], s: &[Rat], x: &[GaussRat]) -> Vec<GaussRat> {
    m.iter()
        .zip(s)
        .map(|(row, si)| {
            row.iter().zip(x).fold(GaussRat::real(si.clone()), |acc, (a, xi)| &acc + &(&GaussRat::real(a.clone()) * xi))
        })
        .collect()
}

impl AvoidStep {
    fn to_y(&self, x: &[GaussRat]) -> Vec<GaussRat> {
        apply_affine(&self.matrix, &self.shift, x)
    }

    fn x_of_y(&self, y: &[GaussRat]) -> Vec<GaussRat> {
        let centred: Vec<GaussRat> = y.iter().zip(&self.shift).map(|(a, s)| a - &GaussRat::real(s.clone())).collect();
        apply_affine(&self.inverse, &vec![Rat::zero(); y.len()], &centred)
    }

    pub fn apply(&self, x: &[GaussRat]) -> Vec<GaussRat> {
        let mut y = self.to_y(x);
        let n = y.len();
        y[n - 1] = &eval_t(&self.min_poly, &y[0]) * &y[n - 1];
        self.x_of_y(&y)
    }

    /// The unique preimage, or `None` where the step is not an isomorphism.
    pub fn preimage(&self, q: &[GaussRat]) -> Option<Vec<GaussRat>> {
        let mut y = self.to_y(q);
        let n = y.len();
        let p = eval_t(&self.min_poly, &y[0]);
        y[n - 1] = &y[n - 1] * &p.inv()?;
        Some(self.x_of_y(&y))
    }

    /// Coordinates of the step as polynomials in `vars`.
    pub fn components(&self, vars: &Vars) -> Vec<Poly> {
        let n = self.matrix.len();
        let affine = |m: &[Vec<Rat>], s: &[Rat], xs: &[Poly]| -> Vec<Poly> {
            m.iter()
                .zip(s)
                .map(|(row, si)| {
                    row.iter().zip(xs).fold(Poly::constant(vars, si.clone()), |acc, (a, x)| &acc + &x.scale(a))
                })
                .collect()
        };
        let xs: Vec<Poly> = (0..n).map(|i| Poly::var_at(vars, i)).collect();
        let mut y = affine(&self.matrix, &self.shift, &xs);
        let p_of_y1 = self.min_poly.compose(std::slice::from_ref(&y[0])).expect("one variable");
        y[n - 1] = &p_of_y1 * &y[n - 1];
        let centred: Vec<Poly> = y.iter().zip(&self.shift).map(|(a, s)| a - &Poly::constant(vars, s.clone())).collect();
        affine(&self.inverse, &vec![Rat::zero(); n], &centred)
    }
}

impl AvoidMap {
    pub fn apply(&self, x: &[GaussRat]) -> Vec<GaussRat> {
        self.steps.iter().rev().fold(x.to_vec(), |acc, s| s.apply(&acc))
    }

    pub fn preimage(&self, q: &[GaussRat]) -> Option<Vec<GaussRat>> {
        self.steps.iter().try_fold(q.to_vec(), |acc, s| s.preimage(&acc))
    }

    /// The composite map as polynomials in `vars`.
    pub fn components(&self, vars: &Vars) -> Vec<Poly> {
        let mut comps: Vec<Poly> = (0..self.arity).map(|i| Poly::var_at(vars, i)).collect();
        for s in &self.steps {
            let inner = s.components(vars);
            comps = comps.iter().map(|c| c.compose(&inner).expect("same arity")).collect();
        }
        comps
    }
}

fn same_closed_point(a: &[GaussRat], b: &[GaussRat]) -> bool {
    a == b || a.iter().zip(b).all(|(x, y)| *x == y.conj())
}

/// Small integers in the order 0, 1, -1, 2, -2, ...
fn small(k: i64) -> i64 {
    if k % 2 == 1 {
        (k + 1) / 2
    } else {
        -(k / 2)
    }
}

/// Coefficient tuples `(e, d, c_n, ..., c_2)` of height exactly `h`.
fn tuples(len: usize, h: i64) -> Vec<Vec<i64>> {
    let range: Vec<i64> = (0..=2 * h).map(small).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out.into_iter().flat_map(|t| range.iter().map(move |&v| [t.clone(), vec![v]].concat())).collect();
    }
    out.retain(|t| t.iter().map(|v| v.abs()).max().unwrap_or(0) == h);
    out
}

/// `y_1 = x_1 + sum_{i>=2} c_i x'_i`, `y_n = x'_n + e` with `x'_n = x_n + d x_1`.
fn candidate(n: usize, t: &[i64]) -> (Vec<Vec<Rat>>, Vec<Rat>, Vec<Vec<Rat>>) {
    let (e, d) = (t[0], t[1]);
    let c: Vec<i64> = t[2..].iter().rev().copied().collect(); // c[0] = c_2
    let mut m = vec![vec![Rat::zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rat::one();
    }
    let cn = c[n - 2];
    m[0][0] = int(1 + cn * d);
    for i in 1..n {
        m[0][i] = int(c[i - 1]);
    }
    m[n - 1][0] = int(d);
    let mut shift = vec![Rat::zero(); n];
    shift[n - 1] = int(e);
    // inverse: undo F then E
    let mut inv_f = vec![vec![Rat::zero(); n]; n];
    for (i, row) in inv_f.iter_mut().enumerate() {
        row[i] = Rat::one();
    }
    for i in 1..n {
        inv_f[0][i] = int(-c[i - 1]);
    }
    let mut inv_e = vec![vec![Rat::zero(); n]; n];
    for (i, row) in inv_e.iter_mut().enumerate() {
        row[i] = Rat::one();
    }
    inv_e[n - 1][0] = int(-d);
    let inverse = matmul(&inv_e, &inv_f);
    (m, shift, inverse)
}

fn matmul(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).fold(Rat::zero(), |acc, k| acc + &a[i][k] * &b[k][j])).collect()).collect()
}

fn find_step(a: &[GaussRat], others: &[Vec<GaussRat>]) -> Option<AvoidStep> {
    let n = a.len();
    for h in 0..=SEARCH_HEIGHT {
        for t in tuples(n + 1, h) {
            let (matrix, shift, inverse) = candidate(n, &t);
            let ya = apply_affine(&matrix, &shift, a);
            if ya[n - 1].is_zero() {
                continue;
            }
            let min_poly = minimal_polynomial(&ya[0]);
            let clear = others.iter().all(|b| !eval_t(&min_poly, &apply_affine(&matrix, &shift, b)[0]).is_zero());
            if clear {
                return Some(AvoidStep { matrix, shift, inverse, min_poly, avoided: a.to_vec() });
            }
        }
    }
    None
}

/// Builds a birational morphism whose image misses every point of `avoid`
/// and which is an isomorphism over every point of `keep`. Points with
/// conjugate coordinates are the same closed point and are rejected.
pub fn birational_avoid(avoid: &[Vec<GaussRat>], keep: &[Vec<GaussRat>]) -> Result<AvoidMap, CertError> {
    let all: Vec<&Vec<GaussRat>> = avoid.iter().chain(keep).collect();
    let n = all.first().map_or(0, |p| p.len());
    if n < 2 {
        return Err(CertError::DimensionTooSmall(n));
    }
    if let Some(p) = all.iter().find(|p| p.len() != n) {
        return Err(CertError::Malformed(format!("point with {} coordinates among points with {n}", p.len())));
    }
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            if same_closed_point(all[i], all[j]) {
                return Err(CertError::CoincidentPoints(i, j));
            }
        }
    }
    let mut pending: Vec<Vec<GaussRat>> = avoid.to_vec();
    let mut kept: Vec<Vec<GaussRat>> = keep.to_vec();
    let mut steps = Vec::new();
    for k in 0..pending.len() {
        let others: Vec<Vec<GaussRat>> = pending[k + 1..].iter().chain(&kept).cloned().collect();
        let step = find_step(&pending[k], &others).ok_or(CertError::NoCoordinateChange)?;
        for p in pending[k + 1..].iter_mut().chain(kept.iter_mut()) {
            *p = step.preimage(p).expect("step is an isomorphism over the other points");
        }
        steps.push(step);
    }
    Ok(AvoidMap { arity: n, steps })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AvoidReport {
    pub lines: Vec<(String, bool)>,
}

impl AvoidReport {
    pub fn is_ok(&self) -> bool {
        self.lines.iter().all(|(_, ok)| *ok)
    }
}

/// Checks the map by direct evaluation: every kept point has a preimage over
/// which all steps are isomorphisms and the polynomial map sends it back; every
/// avoided point is reached by the isomorphic part of the earlier steps and then
/// missed by its own step.
pub fn verify_avoid_map(map: &AvoidMap, avoid: &[Vec<GaussRat>], keep: &[Vec<GaussRat>]) -> AvoidReport {
    let mut lines = Vec::new();
    let vars = Vars::new(&(0..map.arity).map(|i| format!("x{}", i + 1)).collect::<Vec<_>>());
    let comps = map.components(&vars);
    let n = map.arity;
    for (k, s) in map.steps.iter().enumerate() {
        let identity = matmul(&s.matrix, &s.inverse)
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, v)| *v == if i == j { Rat::one() } else { Rat::zero() }));
        lines.push((format!("step {}: coordinate change is invertible", k + 1), identity));
    }
    for (idx, q) in keep.iter().enumerate() {
        let ok = match map.preimage(q) {
            Some(x) => {
                let by_steps = map.apply(&x) == *q;
                let by_polys = comps.iter().zip(q).all(|(c, qi)| c.evaluate(&x).map(|v| v == *qi).unwrap_or(false));
                by_steps && by_polys
            }
            None => false,
        };
        lines.push((format!("kept point {}: isomorphic preimage maps back", idx + 1), ok));
    }
    if avoid.len() != map.steps.len() {
        lines.push(("one step per avoided point".into(), false));
        return AvoidReport { lines };
    }
    for (idx, a) in avoid.iter().enumerate() {
        let pulled = map.steps[..idx].iter().try_fold(a.clone(), |acc, s| s.preimage(&acc));
        let ok = match pulled {
            Some(x) => {
                let s = &map.steps[idx];
                let y = s.to_y(&x);
                x == s.avoided && eval_t(&s.min_poly, &y[0]).is_zero() && !y[n - 1].is_zero()
            }
            None => false,
        };
        lines.push((format!("avoided point {}: outside the image", idx + 1), ok));
    }
    AvoidReport { lines }
}
