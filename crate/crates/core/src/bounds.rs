//! Bounding polynomials `p(n) = a·n^k + a`.
//!
//! One polynomial governs a program's running time (through the counter
//! budget) and its input balance `|x| ≤ p(|y|)`. Everything is exact
//! arbitrary-precision arithmetic: composed bounds grow doubly fast.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("coefficient must be at least 1")]
    ZeroCoefficient,
    #[error("the counted machine needs a coefficient of at least 12, got {0}")]
    CoefficientBelow12(BigUint),
    #[error("co is undefined on padding depth 0")]
    NoPadding,
}

/// `a·n^k + a` with `k ≥ 1`, `a ≥ 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyBound {
    k: u32,
    a: BigUint,
}

/// Cost model of the counted machine for one input length.
///
/// The counter is prepared in `prep` steps, the program gets `exec` steps and
/// the balance check `balance_check`; the three add up to `p_prime`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BudgetReport {
    pub p_prime: BigUint,
    pub prep: BigUint,
    pub exec: BigUint,
    pub balance_check: BigUint,
    pub cp_upper: BigUint,
}

/// Constant of the counter-preparation cost model used by [`PolyBound::counter_budget`].
pub const DEFAULT_COST_CONSTANT: u32 = 4;

impl PolyBound {
    pub fn new(k: u32, a: impl Into<BigUint>) -> Result<Self, BoundError> {
        let a = a.into();
        if k == 0 {
            return Err(BoundError::ZeroDegree);
        }
        if a.is_zero() {
            return Err(BoundError::ZeroCoefficient);
        }
        Ok(PolyBound { k, a })
    }

    /// `12·n + 12`, the bound every ex-iteration converges to.
    pub fn linear12() -> Self {
        PolyBound { k: 1, a: 12u32.into() }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn a(&self) -> &BigUint {
        &self.a
    }

    /// `a·n^k + a`.
    pub fn eval(&self, n: &BigUint) -> BigUint {
        &self.a * (n.pow(self.k) + 1u32)
    }

    pub fn eval_usize(&self, n: usize) -> BigUint {
        self.eval(&BigUint::from(n))
    }

    /// The coefficient-wise order: `k1 ≤ k2` and `a1 ≤ a2`.
    pub fn leq(&self, other: &PolyBound) -> bool {
        self.k <= other.k && self.a <= other.a
    }

    /// Bound for running `inner` then `outer`: `(k1·k2, a1 + a2 + a2·a1^k2·2^k2)`.
    ///
    /// # Panics
    /// When the degree product leaves `u32`.
    pub fn compose(inner: &PolyBound, outer: &PolyBound) -> PolyBound {
        let k = inner.k.checked_mul(outer.k).expect("bound degree overflow");
        let a = &inner.a + &outer.a + &outer.a * inner.a.pow(outer.k) * (BigUint::one() << outer.k);
        PolyBound { k, a }
    }

    /// Counter budget at input length `n`, cost constant 4.
    pub fn counter_budget(&self, n: &BigUint) -> Result<BudgetReport, BoundError> {
        self.counter_budget_with(n, DEFAULT_COST_CONSTANT)
    }

    pub fn counter_budget_with(&self, n: &BigUint, c: u32) -> Result<BudgetReport, BoundError> {
        let twelve = BigUint::from(12u32);
        if self.a < twelve {
            return Err(BoundError::CoefficientBelow12(self.a.clone()));
        }
        let base = &self.a - (&self.a % &twelve);
        let p_prime = base * (n.pow(self.k) + 1u32);
        let twelfth = &p_prime / &twelve;
        Ok(BudgetReport {
            prep: &twelfth * 7u32,
            exec: twelfth.clone(),
            balance_check: &twelfth * 4u32,
            cp_upper: self.cp_upper(c),
            p_prime,
        })
    }

    /// `max(256, c²·k⁴·⌈log₂ a⌉², ⌈a^(1/k)⌉)`.
    pub fn cp_upper(&self, c: u32) -> BigUint {
        let log2a = ceil_log2(&self.a);
        let poly = BigUint::from(c).pow(2) * BigUint::from(self.k).pow(4) * BigUint::from(log2a).pow(2);
        let root = {
            let r = self.a.nth_root(self.k);
            if r.pow(self.k) == self.a {
                r
            } else {
                r + 1u32
            }
        };
        BigUint::from(256u32).max(poly).max(root)
    }

    /// The ex transform: `(⌈k/2⌉, max(12, ⌈a/2^k⌉ + 1))`.
    pub fn ex(&self) -> PolyBound {
        let k = self.k.div_ceil(2);
        let two_k = BigUint::one() << self.k;
        let q = (&self.a + &two_k - 1u32) / &two_k + 1u32;
        PolyBound { k, a: q.max(12u32.into()) }
    }

    /// The co transform: `(2k, (a−1)·2^(2k))`.
    ///
    /// # Panics
    /// When `2k` leaves `u32`.
    pub fn co(&self) -> PolyBound {
        let k2 = self.k.checked_mul(2).expect("bound degree overflow");
        let a = (&self.a - 1u32) << k2;
        PolyBound { k: k2, a: a.max(BigUint::one()) }
    }

    /// Right inverse of [`PolyBound::co`] (`co(co_inverse(b)) = b`), when `b` is in its image.
    pub fn co_inverse(&self) -> Option<PolyBound> {
        if self.k % 2 == 1 {
            return None;
        }
        let k = self.k / 2;
        let unit = BigUint::one() << self.k;
        ((&self.a % &unit).is_zero() && self.a > BigUint::zero())
            .then(|| PolyBound { k, a: &self.a / unit + 1u32 })
    }

    /// `bitlength(a + k)`, the padding count used by the generator pipeline.
    pub fn padding_rounds(&self) -> u64 {
        (&self.a + self.k).bits()
    }
}

fn ceil_log2(a: &BigUint) -> u64 {
    if a <= &BigUint::one() {
        0
    } else {
        (a - 1u32).bits()
    }
}

impl fmt::Display for PolyBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{a}*n^{k}+{a}", a = self.a, k = self.k)
    }
}

/// `(k, a)` shorthand for small literals.
///
/// # Panics
/// On `k = 0` or `a = 0`.
pub fn bound(k: u32, a: u64) -> PolyBound {
    PolyBound::new(k, a).expect("positive bound literal")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn evaluation() {
        assert_eq!(bound(2, 12).eval(&n(3)), n(120));
        assert_eq!(bound(1, 12).eval(&n(0)), n(12));
        assert_eq!(bound(3, 13).eval(&n(2)), n(117));
    }

    #[test]
    fn comparison() {
        assert!(bound(2, 13).leq(&bound(3, 14)));
        assert!(!bound(2, 15).leq(&bound(3, 14)));
        assert!(bound(1, 12).leq(&bound(1, 12)));
    }

    #[test]
    fn composition() {
        assert_eq!(PolyBound::compose(&bound(1, 12), &bound(1, 12)), bound(1, 312));
        assert_eq!(PolyBound::compose(&bound(2, 12), &bound(1, 12)), bound(2, 312));
        let inner = bound(1, 12).eval(&n(5));
        assert_eq!(inner, n(72));
        assert_eq!(bound(1, 12).eval(&inner) + &inner, n(948));
        assert_eq!(bound(1, 312).eval(&n(5)), n(1872));
    }

    #[test]
    fn budgets() {
        let r = bound(1, 12).counter_budget(&n(4)).unwrap();
        assert_eq!((r.p_prime, r.exec), (n(60), n(5)));
        assert_eq!(bound(2, 13).counter_budget(&n(2)).unwrap().p_prime, n(60));
        assert_eq!(bound(1, 12).cp_upper(4), n(256));
        assert!(bound(1, 11).counter_budget(&n(1)).is_err());
    }

    #[test]
    fn ex_and_co() {
        assert_eq!(bound(2, 12).ex(), bound(1, 12));
        assert_eq!(bound(1, 100).ex(), bound(1, 51));
        assert_eq!(bound(1, 12).ex(), bound(1, 12));
        assert_eq!(bound(1, 12).co(), bound(2, 44));
        assert_eq!(bound(2, 13).co(), bound(4, 192));
        assert_eq!(bound(2, 44).co_inverse(), Some(bound(1, 12)));
        assert_eq!(bound(1, 44).co_inverse(), None);
        assert_eq!(bound(1, 12).to_string(), "12*n^1+12");
    }
}
