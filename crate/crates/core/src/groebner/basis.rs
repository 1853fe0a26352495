//! Buchberger's algorithm with the normal selection strategy.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use super::{GbError, MonOrder};
use crate::poly::{Monomial, Poly, Vars};
use crate::rat::Rat;

/// Options for a basis computation.
#[derive(Clone, Copy, Debug)]
pub struct GbOptions {
    /// Maximum number of S-polynomial reductions.
    pub step_budget: u64,
    /// Skip pairs covered by Buchberger's chain criterion.
    pub chain_criterion: bool,
}

pub const DEFAULT_STEP_BUDGET: u64 = 1_000_000;

impl Default for GbOptions {
    fn default() -> Self {
        Self { step_budget: DEFAULT_STEP_BUDGET, chain_criterion: true }
    }
}

/// Monomial wrapped with an order so it can key a `BTreeMap`.
#[derive(Clone, Debug)]
struct Keyed {
    order: MonOrder,
    mono: Monomial,
}

impl PartialEq for Keyed {
    fn eq(&self, other: &Self) -> bool {
        self.mono == other.mono
    }
}
impl Eq for Keyed {}
impl PartialOrd for Keyed {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Keyed {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order.cmp(&self.mono, &other.mono)
    }
}

/// Terms sorted by decreasing monomial under a fixed order.
#[derive(Clone, Debug)]
pub(crate) struct SortedPoly {
    pub terms: Vec<(Monomial, Rat)>,
}

impl SortedPoly {
    pub fn new(p: &Poly, order: MonOrder) -> Self {
        let mut terms: Vec<(Monomial, Rat)> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Self { terms }
    }

    fn from_map(map: BTreeMap<Keyed, Rat>) -> Self {
        Self { terms: map.into_iter().rev().map(|(k, c)| (k.mono, c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn lc(&self) -> &Rat {
        &self.terms[0].1
    }

    fn monic(mut self) -> Self {
        if let Some(inv) = self.terms.first().map(|t| t.1.recip()) {
            for t in &mut self.terms {
                t.1 *= &inv;
            }
        }
        self
    }

    pub fn to_poly(&self, vars: &Vars) -> Poly {
        Poly::from_terms(vars, self.terms.iter().cloned())
    }
}

fn add_into(map: &mut BTreeMap<Keyed, Rat>, order: MonOrder, mono: Monomial, c: Rat) {
    let key = Keyed { order, mono };
    match map.get_mut(&key) {
        Some(v) => {
            *v += c;
            if v.is_zero() {
                map.remove(&key);
            }
        }
        None => {
            if !c.is_zero() {
                map.insert(key, c);
            }
        }
    }
}

/// Result of a full reduction: remainder plus, optionally, one cofactor per divisor.
pub(crate) struct Reduction {
    pub remainder: SortedPoly,
    pub cofactors: Option<Vec<Vec<(Monomial, Rat)>>>,
}

/// Fully reduces `f` by `divisors` (first divisor whose leading monomial
/// divides the current term wins).
pub(crate) fn reduce(f: &SortedPoly, divisors: &[SortedPoly], order: MonOrder, track: bool) -> Reduction {
    let mut work: BTreeMap<Keyed, Rat> = BTreeMap::new();
    for (m, c) in &f.terms {
        add_into(&mut work, order, m.clone(), c.clone());
    }
    let mut rem: BTreeMap<Keyed, Rat> = BTreeMap::new();
    let mut cof: Option<Vec<Vec<(Monomial, Rat)>>> = track.then(|| vec![Vec::new(); divisors.len()]);
    while let Some((key, c)) = work.pop_last() {
        let hit = divisors.iter().enumerate().find_map(|(i, g)| key.mono.div(g.lm()).map(|q| (i, q)));
        match hit {
            Some((i, q)) => {
                let g = &divisors[i];
                let k = &c / g.lc();
                for (m, a) in &g.terms[1..] {
                    add_into(&mut work, order, m.mul(&q), -(&k * a));
                }
                if let Some(cof) = cof.as_mut() {
                    cof[i].push((q, k));
                }
            }
            None => {
                rem.insert(key, c);
            }
        }
    }
    Reduction { remainder: SortedPoly::from_map(rem), cofactors: cof }
}

fn s_poly(f: &SortedPoly, g: &SortedPoly, order: MonOrder) -> SortedPoly {
    let l = f.lm().lcm(g.lm());
    let qf = l.div(f.lm()).expect("lcm");
    let qg = l.div(g.lm()).expect("lcm");
    let mut map = BTreeMap::new();
    let cf = f.lc().recip();
    let cg = g.lc().recip();
    for (m, c) in &f.terms[1..] {
        add_into(&mut map, order, m.mul(&qf), c * &cf);
    }
    for (m, c) in &g.terms[1..] {
        add_into(&mut map, order, m.mul(&qg), -(c * &cg));
    }
    SortedPoly::from_map(map)
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Pair {
    lcm: Monomial,
    i: usize,
    j: usize,
}

/// Computes the reduced, monic Gröbner basis of `gens`, sorted by
/// decreasing leading monomial.
pub fn buchberger(gens: &[Poly], vars: &Vars, order: MonOrder, opts: GbOptions) -> Result<Vec<Poly>, GbError> {
    let mut basis: Vec<SortedPoly> = Vec::new();
    let mut pending: Vec<Pair> = Vec::new();
    let mut steps: u64 = 0;

    let insert = |h: SortedPoly, basis: &mut Vec<SortedPoly>, pending: &mut Vec<Pair>| {
        let j = basis.len();
        for (i, g) in basis.iter().enumerate() {
            pending.push(Pair { lcm: g.lm().lcm(h.lm()), i, j });
        }
        basis.push(h);
    };

    // seed with inter-reduced inputs so trivially redundant generators vanish early
    for g in gens {
        let s = SortedPoly::new(g, order);
        let r = reduce(&s, &basis, order, false).remainder;
        if !r.is_zero() {
            insert(r.monic(), &mut basis, &mut pending);
        }
    }

    let select = |pending: &[Pair]| -> usize {
        let mut best = 0;
        for k in 1..pending.len() {
            let (a, b) = (&pending[k], &pending[best]);
            let ord = a
                .lcm
                .degree()
                .cmp(&b.lcm.degree())
                .then_with(|| order.cmp(&a.lcm, &b.lcm))
                .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)));
            if ord == Ordering::Less {
                best = k;
            }
        }
        best
    };

    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    while !pending.is_empty() {
        let pair = pending.swap_remove(select(&pending));
        let (i, j) = (pair.i, pair.j);
        done.insert((i, j));
        if basis[i].lm().coprime(basis[j].lm()) {
            continue;
        }
        if opts.chain_criterion {
            let key = |a: usize, b: usize| (a.min(b), a.max(b));
            let covered = (0..basis.len()).any(|k| {
                k != i
                    && k != j
                    && basis[k].lm().divides(&pair.lcm)
                    && done.contains(&key(i, k))
                    && done.contains(&key(j, k))
            });
            if covered {
                continue;
            }
        }
        steps += 1;
        if steps > opts.step_budget {
            return Err(GbError::BudgetExceeded { steps: opts.step_budget });
        }
        let s = s_poly(&basis[i], &basis[j], order);
        let r = reduce(&s, &basis, order, false).remainder;
        if !r.is_zero() {
            insert(r.monic(), &mut basis, &mut pending);
        }
    }
    Ok(interreduce(basis, order).iter().map(|g| g.to_poly(vars)).collect())
}

fn interreduce(mut basis: Vec<SortedPoly>, order: MonOrder) -> Vec<SortedPoly> {
    basis.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    let mut minimal: Vec<SortedPoly> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|h| h.lm().divides(g.lm())) {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<SortedPoly> =
            minimal.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, g)| g.clone()).collect();
        let g = &minimal[k];
        let tail = SortedPoly { terms: g.terms[1..].to_vec() };
        let mut r = reduce(&tail, &others, order, false).remainder;
        r.terms.insert(0, g.terms[0].clone());
        out.push(r.monic());
    }
    out.sort_by(|a, b| order.cmp(b.lm(), a.lm()));
    out
}

/// S-polynomial of two basis elements, for auditing.
pub fn s_polynomial(f: &Poly, g: &Poly, order: MonOrder) -> Poly {
    s_poly(&SortedPoly::new(f, order), &SortedPoly::new(g, order), order).to_poly(f.vars())
}

/// Leading monomial under `order`, or `None` for zero.
pub fn leading_monomial(p: &Poly, order: MonOrder) -> Option<Monomial> {
    p.terms().map(|(m, _)| m).max_by(|a, b| order.cmp(a, b)).cloned()
}

pub(crate) fn is_one(p: &Poly) -> bool {
    p.is_constant() && p.constant_term().is_one()
}
