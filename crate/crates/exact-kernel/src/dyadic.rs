use std::cmp::Ordering;

use crate::{KernelError, Result};

/// Denominator exponent ceiling. Compositions needing finer resolution must
/// fall back to floating point.
pub const MAX_LOG2_DEN: u32 = 120;

/// An exact probability `num / 2^log2_den`, kept in lowest terms.
///
/// Only values in `[0, 1]` are representable; that is all a stochastic row
/// needs, and it keeps alignment shifts overflow-free.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: u128,
    log2_den: u32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { num: 0, log2_den: 0 };
    pub const ONE: Dyadic = Dyadic { num: 1, log2_den: 0 };

    /// `num / 2^log2_den`; panics if the value exceeds one or the
    /// denominator exceeds [`MAX_LOG2_DEN`].
    pub fn new(num: u128, log2_den: u32) -> Dyadic {
        assert!(log2_den <= MAX_LOG2_DEN, "denominator 2^{log2_den} too fine");
        assert!(num <= 1u128 << log2_den, "dyadic value above one");
        Dyadic { num, log2_den }.reduced()
    }

    /// `1 / 2^l`.
    pub fn half_pow(l: u32) -> Dyadic {
        Dyadic::new(1, l)
    }

    fn reduced(mut self) -> Dyadic {
        if self.num == 0 {
            return Dyadic::ZERO;
        }
        while self.num & 1 == 0 && self.log2_den > 0 {
            self.num >>= 1;
            self.log2_den -= 1;
        }
        self
    }

    pub fn numerator(&self) -> u128 {
        self.num
    }

    pub fn log2_denominator(&self) -> u32 {
        self.log2_den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_one(&self) -> bool {
        *self == Dyadic::ONE
    }

    /// Numerator after rescaling to denominator `2^log2_den`.
    pub fn numerator_at(&self, log2_den: u32) -> Result<u128> {
        if log2_den < self.log2_den {
            return Err(KernelError::DyadicPrecision { max: MAX_LOG2_DEN });
        }
        self.num
            .checked_shl(log2_den - self.log2_den)
            .ok_or(KernelError::DyadicPrecision { max: MAX_LOG2_DEN })
    }

    pub fn checked_add(&self, other: &Dyadic) -> Result<Dyadic> {
        let l = self.log2_den.max(other.log2_den);
        let sum = self
            .numerator_at(l)?
            .checked_add(other.numerator_at(l)?)
            .ok_or(KernelError::DyadicPrecision { max: MAX_LOG2_DEN })?;
        if sum > 1u128 << l {
            return Err(KernelError::NotDoublyStochastic {
                detail: "probability sum above one".into(),
            });
        }
        Ok(Dyadic { num: sum, log2_den: l }.reduced())
    }

    /// `self - other`; errors when negative.
    pub fn checked_sub(&self, other: &Dyadic) -> Result<Dyadic> {
        let l = self.log2_den.max(other.log2_den);
        let diff = self
            .numerator_at(l)?
            .checked_sub(other.numerator_at(l)?)
            .ok_or(KernelError::NotDoublyStochastic {
                detail: "negative dyadic difference".into(),
            })?;
        Ok(Dyadic { num: diff, log2_den: l }.reduced())
    }

    pub fn checked_mul(&self, other: &Dyadic) -> Result<Dyadic> {
        let l = self
            .log2_den
            .checked_add(other.log2_den)
            .filter(|&l| l <= MAX_LOG2_DEN)
            .ok_or(KernelError::DyadicPrecision { max: MAX_LOG2_DEN })?;
        let num = self
            .num
            .checked_mul(other.num)
            .ok_or(KernelError::DyadicPrecision { max: MAX_LOG2_DEN })?;
        Ok(Dyadic { num, log2_den: l }.reduced())
    }

    /// Exact when the reduced numerator fits in 53 bits, which holds for
    /// every single-step or single-round probability used here.
    pub fn to_f64(&self) -> f64 {
        self.num as f64 * (-(self.log2_den as f64)).exp2()
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let l = self.log2_den.max(other.log2_den);
        // values are <= 1, so aligned numerators are <= 2^MAX_LOG2_DEN
        let a = self.num << (l - self.log2_den);
        let b = other.num << (l - other.log2_den);
        a.cmp(&b)
    }
}
