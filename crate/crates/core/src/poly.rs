use std::fmt;

use crate::scalar::{Field, Real};

/// Dense polynomial with ascending coefficients: `coeffs[i]` multiplies `x^i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Field> Polynomial<T> {
    /// Builds from ascending coefficients, dropping exact-zero leading terms.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(T::zero());
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self {
            coeffs: vec![T::zero()],
        }
    }

    pub fn one() -> Self {
        Self {
            coeffs: vec![T::one()],
        }
    }

    /// `∏ (x - r)` expanded.
    pub fn from_roots<'a, I>(roots: I) -> Self
    where
        I: IntoIterator<Item = &'a T>,
        T: 'a,
    {
        let mut coeffs = vec![T::one()];
        for r in roots {
            let mut next = vec![T::zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] = next[i + 1].clone() + c.clone();
                next[i] = next[i].clone() - r.clone() * c.clone();
            }
            coeffs = next;
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &T {
        self.coeffs
            .last()
            .expect("polynomial has at least one coefficient")
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// `x · p(x)`.
    pub fn shift(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(T::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                let b = other.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                a + b
            })
            .collect();
        Self::new(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-T::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut coeffs = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(coeffs)
    }

    /// `z^deg · conj(p(1/conj(z)))`: reversed, conjugated coefficients at fixed degree.
    pub fn reversed(&self, degree: usize) -> Self {
        let coeffs = (0..=degree)
            .map(|i| {
                self.coeffs
                    .get(degree - i)
                    .map(|c| c.conj())
                    .unwrap_or_else(T::zero)
            })
            .collect();
        Self::new(coeffs)
    }

    /// Largest coefficientwise deviation `|a_i - b_i|`, padding with zeros.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                let b = other.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                (a - b).magnitude()
            })
            .fold(0.0, f64::max)
    }

    /// Coefficientwise deviation from `target` measured against `scale`,
    /// i.e. `max_i |a_i - b_i| / scale_i`. `scale` is usually the expansion of
    /// `∏ (x + |r|)`, the cancellation-free magnitude of each target coefficient.
    pub fn scaled_diff(&self, target: &Self, scale: &[f64]) -> f64 {
        let len = self.coeffs.len().max(target.coeffs.len());
        (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                let b = target.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                let d = (a - b).magnitude();
                match scale.get(i) {
                    Some(&s) if s > 0.0 => d / s,
                    _ => d,
                }
            })
            .fold(0.0, f64::max)
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> Polynomial<U> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }
}

/// Coefficients of `∏ (x + m_i)` for nonnegative magnitudes `m_i`.
pub fn magnitude_envelope(magnitudes: impl IntoIterator<Item = f64>) -> Vec<f64> {
    let mut coeffs = vec![1.0];
    for m in magnitudes {
        let mut next = vec![0.0; coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] += c;
            next[i] += m * c;
        }
        coeffs = next;
    }
    coeffs
}

/// Per-coefficient scale `E_i + R (i+1) E_{i+1}` with `E` the magnitude envelope and
/// `R` the largest magnitude. The second term is the first-order coefficient change
/// under root shifts of size `R`, so the scale stays positive when a root is zero.
pub fn perturbation_scale(magnitudes: impl IntoIterator<Item = f64>) -> Vec<f64> {
    let mags: Vec<f64> = magnitudes.into_iter().collect();
    let r = mags.iter().copied().fold(0.0, f64::max);
    let env = magnitude_envelope(mags);
    (0..env.len())
        .map(|i| env[i] + env.get(i + 1).map_or(0.0, |e| r * (i + 1) as f64 * e))
        .collect()
}

/// Value and derivative at `t` of an ascending coefficient vector.
pub fn envelope_at(env: &[f64], t: f64) -> (f64, f64) {
    env.iter()
        .rev()
        .fold((0.0, 0.0), |(v, d), c| (v * t + c, d * t + v))
}

impl<T: Real> fmt::Display for Polynomial<T> {
    /// Ascending-order rendering, e.g. `21/4 - 5 t + t^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() && self.coeffs.len() > 1 {
                continue;
            }
            let neg = c.signum_i() < 0;
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag} ")?;
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
