//! Discrete measures on the unit circle: trigonometric moments, Verblunsky
//! coefficients, paraorthogonal polynomials and the unitary pentadiagonal
//! matrix.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::Polynomial;
use crate::scalar::C64;

/// `|α_k| >= 1 - DISK_MARGIN` is reported as leaving the disk.
pub const DISK_MARGIN: f64 = 1e-12;

/// `μ_k = Σ_j ω_j ζ_j^k` for `k = 0..n-1`; negative indices by conjugation.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigMoments {
    mu: Vec<C64>,
}

impl TrigMoments {
    pub fn from_nonnegative(mu: Vec<C64>) -> Self {
        Self { mu }
    }

    /// `μ_k` for `|k| < len`.
    pub fn get(&self, k: i64) -> C64 {
        let v = self.mu[k.unsigned_abs() as usize];
        if k < 0 {
            v.conj()
        } else {
            v
        }
    }

    pub fn nonnegative(&self) -> &[C64] {
        &self.mu
    }

    pub fn len(&self) -> usize {
        self.mu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mu.is_empty()
    }

    /// Value of the moment functional on a polynomial: `L(z^i) = μ_i`.
    fn apply(&self, p: &Polynomial<C64>, shift: usize) -> C64 {
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| c * self.mu[i + shift])
            .sum()
    }
}

pub fn trig_moments(zetas: &[C64], weights: &[f64]) -> Result<TrigMoments> {
    if zetas.len() != weights.len() {
        return Err(Error::LengthMismatch {
            left: zetas.len(),
            right: weights.len(),
        });
    }
    let n = zetas.len();
    let mu = (0..n)
        .map(|k| {
            zetas
                .iter()
                .zip(weights)
                .map(|(z, &w)| z.powi(k as i32) * w)
                .sum()
        })
        .collect();
    Ok(TrigMoments { mu })
}

/// Verblunsky coefficients with the monic OPUC and their reversals.
#[derive(Debug, Clone, PartialEq)]
pub struct VerblunskyData {
    /// `α_0 … α_{n-2}`
    pub alpha: Vec<C64>,
    /// `ρ_k = sqrt(1 - |α_k|²)`
    pub rho: Vec<f64>,
    /// `Φ_0 … Φ_{n-1}`
    pub phis: Vec<Polynomial<C64>>,
    /// `Φ*_0 … Φ*_{n-1}`
    pub phis_rev: Vec<Polynomial<C64>>,
}

fn szego_step(
    phi: &Polynomial<C64>,
    rev: &Polynomial<C64>,
    alpha: C64,
) -> (Polynomial<C64>, Polynomial<C64>) {
    let zphi = phi.shift();
    let next = zphi.sub(&rev.scale(&alpha.conj()));
    let next_rev = rev.sub(&zphi.scale(&alpha));
    (next, next_rev)
}

fn check_alpha(k: usize, a: C64) -> Result<()> {
    let modulus = a.norm();
    if !(modulus < 1.0 - DISK_MARGIN) {
        return Err(Error::AlphaOutOfDisk { k, modulus });
    }
    Ok(())
}

/// Recovers `α_0 … α_{n-2}` from `μ_0 … μ_{n-1}`: with `L(z^i) = μ_i`,
/// `conj(α_k) = L(z Φ_k) / L(Φ*_k)`, then both Szegő recurrences advance.
/// `L(Φ*_k)` is `‖Φ_k‖²`.
pub fn verblunsky_from_moments(mu: &TrigMoments) -> Result<VerblunskyData> {
    let n = mu.len();
    if n == 0 || !(mu.mu[0].re > 0.0) {
        return Err(Error::ZeroDenominator { k: 0 });
    }
    let mu0 = mu.mu[0].re;
    let mut phis = vec![Polynomial::one()];
    let mut phis_rev = vec![Polynomial::one()];
    let mut alpha = Vec::with_capacity(n.saturating_sub(1));
    let mut rho = Vec::with_capacity(n.saturating_sub(1));
    for k in 0..n.saturating_sub(1) {
        let norm = mu.apply(&phis_rev[k], 0);
        if !(norm.re > 1e-13 * mu0) {
            return Err(Error::ZeroDenominator { k });
        }
        let a = (mu.apply(&phis[k], 1) / norm).conj();
        check_alpha(k, a)?;
        let (next, next_rev) = szego_step(&phis[k], &phis_rev[k], a);
        alpha.push(a);
        rho.push((1.0 - a.norm_sqr()).sqrt());
        phis.push(next);
        phis_rev.push(next_rev);
    }
    Ok(VerblunskyData {
        alpha,
        rho,
        phis,
        phis_rev,
    })
}

/// [`verblunsky_from_moments`] with the functional applied as the node sum
/// `L(p) = Σ_j ω_j p(ζ_j)` on vectors of values.
///
/// Each new pair of value vectors is reorthogonalized: `Φ_{k+1}` against
/// `Φ_0 … Φ_k` and `Φ*_{k+1}` against `zΦ_0 … zΦ_k`. Without this, clustered
/// nodes cost up to eight digits in the spectrum of the resulting matrix.
pub fn verblunsky_from_measure(zetas: &[C64], weights: &[f64]) -> Result<VerblunskyData> {
    if zetas.len() != weights.len() {
        return Err(Error::LengthMismatch {
            left: zetas.len(),
            right: weights.len(),
        });
    }
    let n = zetas.len();
    let mass: f64 = weights.iter().sum();
    if n == 0 || !(mass > 0.0) {
        return Err(Error::ZeroDenominator { k: 0 });
    }
    let apply = |v: &[C64]| -> C64 { v.iter().zip(weights).map(|(p, &w)| p * w).sum() };
    let inner = |f: &[C64], g: &[C64]| -> C64 {
        f.iter()
            .zip(g)
            .zip(weights)
            .map(|((a, b), &w)| a * b.conj() * w)
            .sum()
    };
    let mut history: Vec<(Vec<C64>, Vec<C64>, f64)> = Vec::new();
    let mut vals = vec![C64::new(1.0, 0.0); n];
    let mut rev_vals = vals.clone();
    let mut phis = vec![Polynomial::one()];
    let mut phis_rev = vec![Polynomial::one()];
    let mut alpha = Vec::with_capacity(n.saturating_sub(1));
    let mut rho = Vec::with_capacity(n.saturating_sub(1));
    for k in 0..n.saturating_sub(1) {
        let z_vals: Vec<C64> = vals.iter().zip(zetas).map(|(p, z)| p * z).collect();
        let norm = apply(&rev_vals);
        if !(norm.re > 1e-13 * mass) {
            return Err(Error::ZeroDenominator { k });
        }
        let a = (apply(&z_vals) / norm).conj();
        check_alpha(k, a)?;
        let vals_prev = vals.clone();
        for j in 0..n {
            let (zp, r) = (z_vals[j], rev_vals[j]);
            vals[j] = zp - a.conj() * r;
            rev_vals[j] = r - a * zp;
        }
        history.push((vals_prev, z_vals, norm.re));
        // Φ_{k+1} ⟂ Φ_0 … Φ_k and Φ*_{k+1} ⟂ zΦ_0 … zΦ_k
        for _ in 0..2 {
            for (p, zp, h) in &history {
                let c = inner(&vals, p) / *h;
                let d = inner(&rev_vals, zp) / *h;
                for j in 0..n {
                    vals[j] -= c * p[j];
                    rev_vals[j] -= d * zp[j];
                }
            }
        }
        let (next, next_rev) = szego_step(&phis[k], &phis_rev[k], a);
        alpha.push(a);
        rho.push((1.0 - a.norm_sqr()).sqrt());
        phis.push(next);
        phis_rev.push(next_rev);
    }
    Ok(VerblunskyData {
        alpha,
        rho,
        phis,
        phis_rev,
    })
}

/// `b = -conj(Ψ(0))` for `Ψ(z) = ∏ (z - ζ)`, i.e. `(-1)^{|Z|+1} ∏ conj(ζ)`.
pub fn boundary_param(zeros: &[C64]) -> C64 {
    let psi0: C64 = zeros.iter().map(|z| -z).product();
    -psi0.conj()
}

/// `Ψ_ℓ(z) = z Φ_{ℓ-1}(z) - conj(b) Φ*_{ℓ-1}(z)`, running the Szegő recurrence
/// on `α_0 … α_{ℓ-2}`.
pub fn szego_popuc(alpha: &[C64], b: C64, degree: usize) -> Result<Polynomial<C64>> {
    assert!(degree >= 1, "paraorthogonal degree must be positive");
    assert!(
        degree - 1 <= alpha.len(),
        "need {} coefficients, got {}",
        degree - 1,
        alpha.len()
    );
    let mut phi = Polynomial::one();
    let mut rev = Polynomial::one();
    for (k, &a) in alpha.iter().take(degree - 1).enumerate() {
        check_alpha(k, a)?;
        (phi, rev) = szego_step(&phi, &rev, a);
    }
    Ok(phi.shift().sub(&rev.scale(&b.conj())))
}

/// `C = L · M` for the parameter sequence `(α_0, …, α_{n-2}, b)`: with
/// `Θ_k = [[conj(a_k), ρ_k], [ρ_k, -a_k]]`, `L = Θ_0 ⊕ Θ_2 ⊕ …` and
/// `M = [1] ⊕ Θ_1 ⊕ Θ_3 ⊕ …`. The block for the last parameter is cut to
/// its top-left entry `conj(b)`.
pub fn cmv_matrix(alpha: &[C64], b: C64) -> Result<Matrix<C64>> {
    for (k, &a) in alpha.iter().enumerate() {
        check_alpha(k, a)?;
    }
    let n = alpha.len() + 1;
    let mut l = Matrix::zeros(n, n);
    let mut m = Matrix::zeros(n, n);
    m[(0, 0)] = C64::new(1.0, 0.0);
    for k in 0..n {
        let target = if k % 2 == 0 { &mut l } else { &mut m };
        if k == n - 1 {
            target[(k, k)] = b.conj();
        } else {
            let a = alpha[k];
            let r = C64::new((1.0 - a.norm_sqr()).sqrt(), 0.0);
            target[(k, k)] = a.conj();
            target[(k, k + 1)] = r;
            target[(k + 1, k)] = r;
            target[(k + 1, k + 1)] = -a;
        }
    }
    Ok(l.mul(&m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn cis(t: f64) -> C64 {
        C64::from_polar(1.0, t)
    }

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    fn example_nodes() -> Vec<C64> {
        vec![cis(PI / 2.0), cis(4.0 * PI / 3.0), cis(5.0 * PI / 3.0)]
    }

    fn example_weights() -> Vec<f64> {
        let a = 2.0 * (6f64.sqrt() - 2f64.sqrt());
        let c = 4.0 / 3.0 * (3.0 * 2f64.sqrt() - 6f64.sqrt());
        vec![2.0 * a, c, c]
    }

    #[test]
    fn example_moments() {
        let mu = trig_moments(&example_nodes(), &example_weights()).unwrap();
        let s2 = 2f64.sqrt();
        let s6 = 6f64.sqrt();
        assert!(close(
            mu.get(0),
            C64::new(4.0 * s2 + 4.0 * s6 / 3.0, 0.0),
            1e-10
        ));
        assert!(close(mu.get(1), C64::new(0.0, 0.0), 1e-10));
        assert!(close(mu.get(2), C64::new(-8.0 * s6 / 3.0, 0.0), 1e-10));
        assert_eq!(mu.get(-2), mu.get(2).conj());
    }

    #[test]
    fn example_verblunsky() {
        let mu = trig_moments(&example_nodes(), &example_weights()).unwrap();
        let v = verblunsky_from_moments(&mu).unwrap();
        assert_eq!(v.alpha.len(), 2);
        assert!(close(v.alpha[0], C64::new(0.0, 0.0), 1e-10));
        assert!(close(v.alpha[1], C64::new(1.0 - 3f64.sqrt(), 0.0), 1e-10));
        assert!((v.rho[1] - (2.0 * 3f64.sqrt() - 3.0).sqrt()).abs() < 1e-10);
        // α_k = -conj(Φ_{k+1}(0))
        for k in 0..2 {
            assert!(close(v.alpha[k], -v.phis[k + 1].coeffs()[0].conj(), 1e-14));
        }
    }

    #[test]
    fn measure_and_moment_recursions_agree() {
        let v1 = verblunsky_from_measure(&example_nodes(), &example_weights()).unwrap();
        let mu = trig_moments(&example_nodes(), &example_weights()).unwrap();
        let v2 = verblunsky_from_moments(&mu).unwrap();
        for (a, b) in v1.alpha.iter().zip(&v2.alpha) {
            assert!(close(*a, *b, 1e-12));
        }
        let zs: Vec<C64> = [0.3, 1.2, 2.0, 2.9, 4.1, 5.5]
            .iter()
            .map(|&t| cis(t))
            .collect();
        let w = [0.7, 1.3, 0.2, 2.5, 1.1, 0.9];
        let v1 = verblunsky_from_measure(&zs, &w).unwrap();
        let v2 = verblunsky_from_moments(&trig_moments(&zs, &w).unwrap()).unwrap();
        for (a, b) in v1.alpha.iter().zip(&v2.alpha) {
            assert!(close(*a, *b, 1e-10));
        }
    }

    #[test]
    fn symmetric_two_point_measure() {
        let mu = trig_moments(&[C64::new(1.0, 0.0), C64::new(-1.0, 0.0)], &[1.0, 1.0]).unwrap();
        let v = verblunsky_from_moments(&mu).unwrap();
        assert!(v.alpha[0].norm() < 1e-15);
    }

    #[test]
    fn single_point_moments() {
        let mu = trig_moments(&[C64::new(1.0, 0.0)], &[1.0]).unwrap();
        assert_eq!(mu.nonnegative(), &[C64::new(1.0, 0.0)]);
        assert!(verblunsky_from_moments(&mu).unwrap().alpha.is_empty());
    }

    #[test]
    fn boundary_params() {
        assert!(close(
            boundary_param(&example_nodes()),
            C64::new(0.0, 1.0),
            1e-12
        ));
        assert!(close(
            boundary_param(&[C64::new(1.0, 0.0), C64::new(-1.0, 0.0)]),
            C64::new(1.0, 0.0),
            1e-15
        ));
        let z = cis(0.7);
        assert!(close(boundary_param(&[z]), z.conj(), 1e-15));
    }

    #[test]
    fn popuc_low_degrees() {
        let b = cis(1.1);
        let p = szego_popuc(&[], b, 1).unwrap();
        assert_eq!(p.coeffs(), &[-b.conj(), C64::new(1.0, 0.0)]);
        let p = szego_popuc(&[C64::new(0.0, 0.0)], C64::new(1.0, 0.0), 2).unwrap();
        let want = [C64::new(-1.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)];
        assert!(p
            .coeffs()
            .iter()
            .zip(want)
            .all(|(a, b)| close(*a, b, 1e-15)));
    }

    #[test]
    fn popuc_example_cubic() {
        let alpha = [C64::new(0.0, 0.0), C64::new(1.0 - 3f64.sqrt(), 0.0)];
        let p = szego_popuc(&alpha, C64::new(0.0, 1.0), 3).unwrap();
        let target = Polynomial::from_roots(&example_nodes());
        assert!(p.max_abs_diff(&target) < 1e-10);
    }

    #[test]
    fn cmv_examples() {
        let c2 = cmv_matrix(&[C64::new(0.0, 0.0)], C64::new(1.0, 0.0)).unwrap();
        let o = C64::new(0.0, 0.0);
        let one = C64::new(1.0, 0.0);
        assert_eq!(c2.to_rows(), vec![vec![o, one], vec![one, o]]);

        let a1 = 1.0 - 3f64.sqrt();
        let r1 = (2.0 * 3f64.sqrt() - 3.0).sqrt();
        let c3 = cmv_matrix(&[o, C64::new(a1, 0.0)], C64::new(0.0, 1.0)).unwrap();
        let want = [
            [o, C64::new(a1, 0.0), C64::new(r1, 0.0)],
            [one, o, o],
            [o, C64::new(0.0, -r1), C64::new(0.0, a1)],
        ];
        for i in 0..3 {
            for j in 0..3 {
                assert!(close(c3[(i, j)], want[i][j], 1e-12), "({i},{j})");
            }
        }
        assert!(c3.mul(&c3.adjoint()).identity_defect() < 1e-12);

        let b = cis(0.3);
        assert_eq!(cmv_matrix(&[], b).unwrap().to_rows(), vec![vec![b.conj()]]);
    }

    #[test]
    fn alpha_outside_disk_is_rejected() {
        assert_eq!(
            cmv_matrix(&[C64::new(1.0, 0.0)], C64::new(1.0, 0.0))
                .unwrap_err()
                .code(),
            "ALPHA_OUT_OF_DISK"
        );
        assert_eq!(
            szego_popuc(&[C64::new(0.0, 2.0)], C64::new(1.0, 0.0), 2)
                .unwrap_err()
                .code(),
            "ALPHA_OUT_OF_DISK"
        );
    }
}
