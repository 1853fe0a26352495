use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::poly::{grevlex_slices, Monomial};

/// Monomial order on exponent vectors, first variable largest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonOrder {
    #[default]
    Grevlex,
    Lex,
    /// Block order: grevlex on the first `k` variables, ties broken by
    /// grevlex on the rest. Eliminates the first block.
    Elimination(usize),
}

impl MonOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonOrder::Grevlex => a.grevlex_cmp(b),
            MonOrder::Lex => a.lex_cmp(b),
            MonOrder::Elimination(k) => {
                let (a1, a2) = a.exps().split_at(k.min(a.arity()));
                let (b1, b2) = b.exps().split_at(k.min(b.arity()));
                grevlex_slices(a1, b1).then_with(|| grevlex_slices(a2, b2))
            }
        }
    }

    /// True if the order ranks monomials by total degree first.
    pub fn is_graded(&self) -> bool {
        matches!(self, MonOrder::Grevlex)
    }
}

impl fmt::Display for MonOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonOrder::Grevlex => write!(f, "grevlex"),
            MonOrder::Lex => write!(f, "lex"),
            MonOrder::Elimination(k) => write!(f, "elim:{k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown monomial order `{0}` (expected grevlex, lex or elim:K)")]
pub struct ParseOrderError(pub String);

impl FromStr for MonOrder {
    type Err = ParseOrderError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "grevlex" => Ok(MonOrder::Grevlex),
            "lex" => Ok(MonOrder::Lex),
            other => other
                .strip_prefix("elim:")
                .and_then(|k| k.parse().ok())
                .map(MonOrder::Elimination)
                .ok_or_else(|| ParseOrderError(s.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono(e: Vec<u32>) -> Monomial {
        Monomial::from_exps(&e)
    }

    fn orders() -> Vec<MonOrder> {
        vec![MonOrder::Grevlex, MonOrder::Lex, MonOrder::Elimination(1), MonOrder::Elimination(2)]
    }

    proptest! {
        #[test]
        fn orders_are_multiplicative_total_and_well_founded(
            a in proptest::collection::vec(0u32..5, 3),
            b in proptest::collection::vec(0u32..5, 3),
            c in proptest::collection::vec(0u32..5, 3),
        ) {
            let (a, b, c) = (mono(a), mono(b), mono(c));
            for o in orders() {
                prop_assert_eq!(o.cmp(&a, &b), o.cmp(&b, &a).reverse());
                prop_assert_eq!(o.cmp(&a, &b) == Ordering::Equal, a == b);
                prop_assert_eq!(o.cmp(&a, &b), o.cmp(&a.mul(&c), &b.mul(&c)));
                prop_assert_ne!(o.cmp(&Monomial::one(3), &a), Ordering::Greater);
                if o.cmp(&a, &b) == Ordering::Less && o.cmp(&b, &c) == Ordering::Less {
                    prop_assert_eq!(o.cmp(&a, &c), Ordering::Less);
                }
            }
        }
    }

    #[test]
    fn elimination_prefers_first_block() {
        let o = MonOrder::Elimination(1);
        assert_eq!(o.cmp(&mono(vec![1, 0, 0]), &mono(vec![0, 5, 5])), Ordering::Greater);
        assert_eq!("elim:2".parse::<MonOrder>().unwrap(), MonOrder::Elimination(2));
        assert!("deglex".parse::<MonOrder>().is_err());
    }
}
