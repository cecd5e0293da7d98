//! Discrete measures on the real line: moments, the Stieltjes procedure, and
//! the monic Jacobi matrix.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{weighted_dot, ScaledVec};
use crate::matrix::Matrix;
use crate::poly::Polynomial;
use crate::scalar::{Rational, Real};

/// In floating point, `h_k <= ZERO_NORM_RATIO · h_0` aborts the recursion.
pub const ZERO_NORM_RATIO: f64 = 1e-13;

/// `μ_k = Σ_j ω_j x_j^k` for `k = 0..count`.
pub fn moments_real<T: Real>(xs: &[T], weights: &[T], count: usize) -> Result<Vec<T>> {
    if xs.len() != weights.len() {
        return Err(Error::LengthMismatch {
            left: xs.len(),
            right: weights.len(),
        });
    }
    let mut powers: Vec<T> = weights.to_vec();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push(powers.iter().fold(T::zero(), |acc, p| acc + p.clone()));
        for (p, x) in powers.iter_mut().zip(xs) {
            *p = p.clone() * x.clone();
        }
    }
    Ok(out)
}

/// Output of the Stieltjes procedure on `n` nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiData<T> {
    /// `β_0 … β_{n-1}`
    pub beta: Vec<T>,
    /// `γ_1 … γ_{n-1}`, stored zero-based: `gamma[k - 1] = γ_k`.
    pub gamma: Vec<T>,
    /// `P_0 … P_n`
    pub polys: Vec<Polynomial<T>>,
}

impl<T: Real> JacobiData<T> {
    pub fn n(&self) -> usize {
        self.beta.len()
    }

    pub fn gamma_positive(&self) -> bool {
        self.gamma.iter().all(|g| g.signum_i() > 0)
    }

    pub fn matrix(&self) -> Matrix<T> {
        jacobi_matrix(self)
    }
}

/// Discrete Gram–Schmidt against `⟨p, q⟩ = Σ_j ω_j p(x_j) q(x_j)`:
/// `h_k = ⟨P_k, P_k⟩`, `β_k = ⟨x P_k, P_k⟩ / h_k`, `γ_k = h_k / h_{k-1}`,
/// `P_{k+1} = (x - β_k) P_k - γ_k P_{k-1}`.
///
/// Inner products run on the vectors of values `P_k(x_j)`; the coefficient
/// sequences are carried along by the same recurrence.
pub fn stieltjes<T: Real>(xs: &[T], weights: &[T]) -> Result<JacobiData<T>> {
    let n = xs.len();
    if n != weights.len() {
        return Err(Error::LengthMismatch {
            left: n,
            right: weights.len(),
        });
    }
    if let Some(j) = weights.iter().position(|w| w.signum_i() <= 0) {
        return Err(Error::NonPositiveWeight { index: j });
    }

    if let (Some(xq), Some(wq)) = (rationals(xs), rationals(weights)) {
        let d = stieltjes_exact(&xq, &wq)?;
        return Ok(JacobiData {
            beta: d.beta.into_iter().map(T::from_rational).collect(),
            gamma: d.gamma.into_iter().map(T::from_rational).collect(),
            polys: d
                .polys
                .into_iter()
                .map(|p| p.map(|c| T::from_rational(c.clone())))
                .collect(),
        });
    }
    stieltjes_values(xs, weights)
}

/// The recursion on plain scalars, with reorthogonalization of each new value
/// vector against all earlier ones.
fn stieltjes_values<T: Real>(xs: &[T], weights: &[T]) -> Result<JacobiData<T>> {
    let n = xs.len();
    let inner = |a: &[T], b: &[T], x_weighted: bool| -> T {
        let mut acc = T::zero();
        for j in 0..n {
            let mut t = weights[j].clone() * a[j].clone() * b[j].clone();
            if x_weighted {
                t = t * xs[j].clone();
            }
            acc = acc + t;
        }
        acc
    };

    let mut beta = Vec::with_capacity(n);
    let mut gamma = Vec::with_capacity(n.saturating_sub(1));
    let mut polys = vec![Polynomial::one()];
    let mut prev_vals = vec![T::zero(); n];
    let mut vals = vec![T::one(); n];
    let mut h_prev = T::zero();
    let mut h0 = 0.0;
    let mut history: Vec<(Vec<T>, T)> = Vec::new();

    for k in 0..n {
        let h = inner(&vals, &vals, false);
        if k == 0 {
            h0 = h.to_f64();
        }
        let degenerate = if T::EXACT {
            h.signum_i() <= 0
        } else {
            h.to_f64() <= ZERO_NORM_RATIO * h0
        };
        if degenerate {
            return Err(Error::ZeroNorm { k });
        }
        let b = inner(&vals, &vals, true) / h.clone();
        let g = if k == 0 {
            T::zero()
        } else {
            h.clone() / h_prev.clone()
        };

        let pk = &polys[k];
        let mut next = pk.shift().sub(&pk.scale(&b));
        if k > 0 {
            next = next.sub(&polys[k - 1].scale(&g));
            gamma.push(g.clone());
        }
        beta.push(b.clone());
        polys.push(next);

        let mut next_vals: Vec<T> = (0..n)
            .map(|j| {
                (xs[j].clone() - b.clone()) * vals[j].clone() - g.clone() * prev_vals[j].clone()
            })
            .collect();
        history.push((vals.clone(), h.clone()));
        reorthogonalize(&mut next_vals, &history, &inner);
        prev_vals = std::mem::replace(&mut vals, next_vals);
        h_prev = h;
    }

    Ok(JacobiData { beta, gamma, polys })
}

fn rationals<T: Real>(v: &[T]) -> Option<Vec<Rational>> {
    v.iter().map(Real::to_rational).collect()
}

/// The same recursion in exact arithmetic, on integer vectors over a shared
/// denominator. Every ratio below is taken between quantities carrying the
/// same weight and node denominators, so those cancel.
fn stieltjes_exact(xs: &[Rational], weights: &[Rational]) -> Result<JacobiData<Rational>> {
    let n = xs.len();
    let x = ScaledVec::from_rationals(xs);
    let w = ScaledVec::from_rationals(weights).num;
    let one = Rational::one();

    let mut beta = Vec::with_capacity(n);
    let mut gamma = Vec::with_capacity(n.saturating_sub(1));
    let mut polys = vec![Polynomial::one()];
    let mut vals = ScaledVec::constant(n, 1);
    let mut prev_vals = ScaledVec::constant(n, 0);
    let mut coeffs = ScaledVec::constant(1, 1);
    let mut prev_coeffs = ScaledVec::constant(0, 0);
    // numerator-level norm H and denominator d of the previous step:
    // h = H / (d² · weight denominator)
    let mut prev_norm: Option<(BigInt, BigInt)> = None;

    for k in 0..n {
        let h = weighted_dot(&w, &vals.num, &vals.num);
        if h.is_zero() {
            return Err(Error::ZeroNorm { k });
        }
        let xv = x.hadamard(&vals);
        let b = Rational::new(weighted_dot(&w, &xv.num, &vals.num), &h * &x.den);
        let g = match &prev_norm {
            None => Rational::zero(),
            Some((hp, dp)) => Rational::new(&h * dp * dp, hp * &vals.den * &vals.den),
        };
        let (nb, ng) = (-b.clone(), -g.clone());

        let next_coeffs =
            ScaledVec::lincomb(&[(&coeffs.shift(), &one), (&coeffs, &nb), (&prev_coeffs, &ng)]);
        polys.push(Polynomial::new(next_coeffs.to_rationals()));
        prev_coeffs = std::mem::replace(&mut coeffs, next_coeffs);

        let next_vals = ScaledVec::lincomb(&[(&xv, &one), (&vals, &nb), (&prev_vals, &ng)]);
        prev_norm = Some((h, vals.den.clone()));
        prev_vals = std::mem::replace(&mut vals, next_vals);

        if k > 0 {
            gamma.push(g);
        }
        beta.push(b);
    }
    Ok(JacobiData { beta, gamma, polys })
}

/// Two passes of classical Gram–Schmidt of `v` against the stored value
/// vectors. In exact arithmetic the corrections vanish; in floating point they
/// restore the orthogonality the three-term recurrence loses once the weights
/// span many orders of magnitude.
fn reorthogonalize<T: Real>(
    v: &mut [T],
    history: &[(Vec<T>, T)],
    inner: &impl Fn(&[T], &[T], bool) -> T,
) {
    for _ in 0..2 {
        for (p, h) in history {
            let c = inner(v, p, false) / h.clone();
            for (vj, pj) in v.iter_mut().zip(p) {
                *vj = vj.clone() - c.clone() * pj.clone();
            }
        }
    }
}

/// β on the diagonal, ones above it, γ below it.
pub fn jacobi_matrix<T: Real>(data: &JacobiData<T>) -> Matrix<T> {
    let n = data.n();
    Matrix::from_fn(n, n, |i, j| {
        if i == j {
            data.beta[i].clone()
        } else if j == i + 1 {
            T::one()
        } else if i == j + 1 {
            data.gamma[j].clone()
        } else {
            T::zero()
        }
    })
}

/// `P_k(x) = det(x I_k - J_k)` by running the three-term recurrence at `x`.
pub fn eval_charpoly<T: Real>(data: &JacobiData<T>, k: usize, x: &T) -> T {
    assert!(k <= data.n(), "order {k} exceeds matrix size {}", data.n());
    let mut prev = T::zero();
    let mut cur = T::one();
    for i in 0..k {
        let g = if i == 0 {
            T::zero()
        } else {
            data.gamma[i - 1].clone()
        };
        let next = (x.clone() - data.beta[i].clone()) * cur.clone() - g * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// [`eval_charpoly`] at many points at once. In exact arithmetic the values
/// share one denominator, which keeps the recurrence cheap.
pub fn eval_charpoly_many<T: Real>(data: &JacobiData<T>, k: usize, points: &[T]) -> Vec<T> {
    assert!(k <= data.n(), "order {k} exceeds matrix size {}", data.n());
    let Some(xq) = rationals(points) else {
        return points.iter().map(|x| eval_charpoly(data, k, x)).collect();
    };
    let coeff = |v: &T| v.to_rational().expect("exact recurrence data");
    let x = ScaledVec::from_rationals(&xq);
    let one = Rational::one();
    let mut prev = ScaledVec::constant(points.len(), 0);
    let mut cur = ScaledVec::constant(points.len(), 1);
    for i in 0..k {
        let nb = -coeff(&data.beta[i]);
        let ng = if i == 0 {
            Rational::zero()
        } else {
            -coeff(&data.gamma[i - 1])
        };
        let next = ScaledVec::lincomb(&[(&x.hadamard(&cur), &one), (&cur, &nb), (&prev, &ng)]);
        prev = std::mem::replace(&mut cur, next);
    }
    cur.to_rationals()
        .into_iter()
        .map(T::from_rational)
        .collect()
}
