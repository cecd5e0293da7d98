//! Rational vectors over one shared denominator.
//!
//! Long three-term recurrences in `BigRational` spend nearly all their time in
//! the gcd that normalizes every intermediate result. Keeping whole vectors
//! (node values or polynomial coefficients) as integers over a common
//! denominator needs one reduction per step instead.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct ScaledVec {
    pub num: Vec<BigInt>,
    /// Always positive.
    pub den: BigInt,
}

impl ScaledVec {
    pub fn constant(len: usize, value: i64) -> Self {
        Self {
            num: vec![BigInt::from(value); len],
            den: BigInt::one(),
        }
    }

    pub fn from_rationals(values: &[Rational]) -> Self {
        let mut den = BigInt::one();
        for v in values {
            if !den.is_multiple_of(v.denom()) {
                den = den.lcm(v.denom());
            }
        }
        let num = values
            .iter()
            .map(|v| v.numer() * (&den / v.denom()))
            .collect();
        Self { num, den }
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|n| Rational::new(n.clone(), self.den.clone()))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.num.len()
    }

    /// Divides out the common content of the numerators and the denominator.
    pub fn reduce(&mut self) {
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.clone();
        for n in &self.num {
            if g.is_one() {
                return;
            }
            if !n.is_multiple_of(&g) {
                g = g.gcd(n);
            }
        }
        if !g.is_one() {
            for n in &mut self.num {
                *n = &*n / &g;
            }
            self.den = &self.den / &g;
        }
    }

    /// `Σ c_i · v_i` over vectors of equal length, reduced.
    pub fn lincomb(terms: &[(&ScaledVec, &Rational)]) -> Self {
        let len = terms.iter().map(|(v, _)| v.len()).max().unwrap_or(0);
        let dens: Vec<BigInt> = terms.iter().map(|(v, c)| &v.den * c.denom()).collect();
        let mut den = BigInt::one();
        for d in &dens {
            if !den.is_multiple_of(d) {
                den *= d;
            }
        }
        let mut num = vec![BigInt::zero(); len];
        for ((v, c), d) in terms.iter().zip(&dens) {
            if c.is_zero() {
                continue;
            }
            let factor = c.numer() * (&den / d);
            for (acc, x) in num.iter_mut().zip(&v.num) {
                *acc += &factor * x;
            }
        }
        let mut out = Self { num, den };
        out.reduce();
        out
    }

    /// Elementwise product.
    pub fn hadamard(&self, other: &ScaledVec) -> Self {
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| a * b)
            .collect();
        Self {
            num,
            den: &self.den * &other.den,
        }
    }

    /// Coefficient vector of `x · p`.
    pub fn shift(&self) -> Self {
        let mut num = Vec::with_capacity(self.num.len() + 1);
        num.push(BigInt::zero());
        num.extend(self.num.iter().cloned());
        Self {
            num,
            den: self.den.clone(),
        }
    }
}

/// `Σ_j w_j a_j b_j` on numerators only; the caller owns the denominators.
pub(crate) fn weighted_dot(w: &[BigInt], a: &[BigInt], b: &[BigInt]) -> BigInt {
    w.iter().zip(a).zip(b).map(|((w, a), b)| w * a * b).sum()
}
