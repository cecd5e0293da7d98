//! Independent certification of a reconstruction.
//!
//! Spectra are checked through characteristic-polynomial residuals at the
//! prescribed points, never with an eigensolver. In exact arithmetic every
//! residual must vanish; in floating point each residual is made relative to a
//! cancellation-free magnitude and compared against the profile tolerance.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interlacing::{CircleSpectrumPair, RealSpectrumPair};
use crate::kernel::{assemble_circle, assemble_real};
use crate::matrix::{self, Matrix};
use crate::oprl::{eval_charpoly_many, JacobiData};
use crate::poly::{envelope_at, magnitude_envelope, perturbation_scale, Polynomial};
use crate::popuc::{szego_popuc, VerblunskyData};
use crate::scalar::{Field, Real, C64};

/// LU pivots below this magnitude count as near-singular.
pub const PIVOT_WARN: f64 = 1e-12;

/// Largest matrix accepted by [`brute_charpoly`].
pub const EXPANSION_LIMIT: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Profile {
    /// 1e-10, for the worked examples.
    Strict,
    /// 1e-8, for random instances.
    #[default]
    Standard,
    Custom(f64),
}

impl Profile {
    pub fn tolerance(self) -> f64 {
        match self {
            Profile::Strict => 1e-10,
            Profile::Standard => 1e-8,
            Profile::Custom(t) => t,
        }
    }
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "strict" => Ok(Profile::Strict),
            "standard" => Ok(Profile::Standard),
            other => match other.parse::<f64>() {
                Ok(t) if t.is_finite() && t >= 0.0 => Ok(Profile::Custom(t)),
                _ => Err(Error::Parse {
                    what: "tolerance profile",
                    input: s.to_string(),
                }),
            },
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Profile::Strict => f.write_str("strict"),
            Profile::Standard => f.write_str("standard"),
            Profile::Custom(t) => write!(f, "{t}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    /// Residuals had to be exactly zero.
    pub exact: bool,
    /// Threshold every residual was compared against (0 in exact mode).
    pub tolerance: f64,
    /// `max_k |(Aω)_k| / Σ_j |A_kj ω_j|`.
    pub kernel_residual: f64,
    /// Coefficientwise deviation of `P_n` (or `Ψ_n`) from `∏(z - z_j)`. Coefficient
    /// `i` is divided by `E_i + R (i+1) E_{i+1}`, where `E = ∏(z + |z_j|)` and
    /// `R = max |z_j|`; the second term keeps the scale positive at a zero root.
    pub poly_match_n: f64,
    pub poly_match_m: f64,
    /// Real line: `|P_k(x)| / (E(|x|) + R E'(|x|))` at the prescribed points,
    /// with `E` and `R` as above.
    /// Circle: `|det(ζ I - C)|`.
    pub spectrum_residual_n: f64,
    pub spectrum_residual_m: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unitarity_defect: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_positive: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_in_disk: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary_unimodular: Option<bool>,
    /// Names of the failed checks.
    pub failures: Vec<String>,
    pub warnings: Vec<String>,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    fn new(exact: bool, tolerance: f64) -> Self {
        Self {
            exact,
            tolerance,
            kernel_residual: 0.0,
            poly_match_n: 0.0,
            poly_match_m: 0.0,
            spectrum_residual_n: 0.0,
            spectrum_residual_m: 0.0,
            unitarity_defect: None,
            gamma_positive: None,
            alpha_in_disk: None,
            boundary_unimodular: None,
            failures: Vec::new(),
            warnings: Vec::new(),
            verdict: Verdict::Pass,
        }
    }

    fn finish(mut self) -> Self {
        let tol = self.tolerance;
        let mut residuals = vec![
            ("kernel_residual", self.kernel_residual),
            ("poly_match_n", self.poly_match_n),
            ("poly_match_m", self.poly_match_m),
            ("spectrum_residual_n", self.spectrum_residual_n),
            ("spectrum_residual_m", self.spectrum_residual_m),
        ];
        if let Some(u) = self.unitarity_defect {
            residuals.push(("unitarity_defect", u));
        }
        for (name, r) in residuals {
            if !(r <= tol) {
                self.failures.push(name.to_string());
            }
        }
        for (name, flag) in [
            ("gamma_positive", self.gamma_positive),
            ("alpha_in_disk", self.alpha_in_disk),
            ("boundary_unimodular", self.boundary_unimodular),
        ] {
            if flag == Some(false) {
                self.failures.push(name.to_string());
            }
        }
        self.verdict = if self.failures.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        self
    }
}

fn row_residual<T: Field>(a: &Matrix<T>, omega: &[T]) -> f64 {
    (0..a.rows())
        .map(|k| {
            let row = a.row(k);
            let value: T = row
                .iter()
                .zip(omega)
                .fold(T::zero(), |acc, (x, w)| acc + x.clone() * w.clone());
            let scale: f64 = row
                .iter()
                .zip(omega)
                .map(|(x, w)| (x.clone() * w.clone()).magnitude())
                .sum();
            relative(value.magnitude(), scale, T::EXACT)
        })
        .fold(0.0, f64::max)
}

fn relative(d: f64, scale: f64, exact: bool) -> f64 {
    if exact || d == 0.0 || !(scale > 0.0) {
        d
    } else {
        d / scale
    }
}

fn poly_match<T: Field>(got: &Polynomial<T>, roots: &[T]) -> f64 {
    let target = Polynomial::from_roots(roots);
    if T::EXACT {
        got.max_abs_diff(&target)
    } else {
        got.scaled_diff(
            &target,
            &perturbation_scale(roots.iter().map(Field::magnitude)),
        )
    }
}

fn charpoly_residual<T: Real>(data: &JacobiData<T>, k: usize, points: &[T]) -> f64 {
    let env = magnitude_envelope(points.iter().map(Field::magnitude));
    let r = points.iter().map(Field::magnitude).fold(0.0, f64::max);
    eval_charpoly_many(data, k, points)
        .iter()
        .zip(points)
        .map(|(v, x)| {
            let (e, de) = envelope_at(&env, x.magnitude());
            relative(v.magnitude(), e + r * de, T::EXACT)
        })
        .fold(0.0, f64::max)
}

/// Certifies `J_n`, `J_m` against the prescribed zero sets.
pub fn verify_oprl<T: Real>(
    pair: &RealSpectrumPair<T>,
    omega: &[T],
    data: &JacobiData<T>,
    profile: Profile,
) -> VerificationReport {
    let tol = if T::EXACT { 0.0 } else { profile.tolerance() };
    let mut report = VerificationReport::new(T::EXACT, tol);
    let (n, m) = (pair.n(), pair.m());
    if omega.len() != n || data.n() != n {
        report.failures.push("dimension_mismatch".into());
        report.verdict = Verdict::Fail;
        return report;
    }
    report.kernel_residual = match assemble_real(pair) {
        Ok(a) => row_residual(&a, omega),
        Err(_) => f64::INFINITY,
    };
    report.poly_match_n = poly_match(&data.polys[n], pair.xs());
    report.poly_match_m = poly_match(&data.polys[m], pair.ys());
    report.spectrum_residual_n = charpoly_residual(data, n, pair.xs());
    report.spectrum_residual_m = charpoly_residual(data, m, pair.ys());
    report.gamma_positive = Some(data.gamma_positive());
    report.finish()
}

/// `|det(z I - C)|` at every point, plus a warning when elimination meets more
/// than one tiny pivot (one is expected at an eigenvalue).
fn det_residual(c: &Matrix<C64>, points: &[C64], label: &str, warnings: &mut Vec<String>) -> f64 {
    let mut worst = 0.0f64;
    for (j, &z) in points.iter().enumerate() {
        let shifted = shifted_identity(c, z);
        let small = matrix::lu_pivots(&shifted)
            .into_iter()
            .filter(|&p| p < PIVOT_WARN)
            .count();
        if small > 1 {
            warnings.push(format!(
                "{label}: {small} pivots below {PIVOT_WARN:e} at point {}",
                j + 1
            ));
        }
        worst = worst.max(matrix::determinant(&shifted).0.norm());
    }
    worst
}

fn shifted_identity<T: Field>(c: &Matrix<T>, z: T) -> Matrix<T> {
    Matrix::from_fn(c.rows(), c.cols(), |i, j| {
        let d = if i == j { z.clone() } else { T::zero() };
        d - c[(i, j)].clone()
    })
}

/// Certifies `C_n`, `C_m` built from `data` and the boundary parameters
/// `b = [b_n, b_m]`.
pub fn verify_popuc(
    pair: &CircleSpectrumPair,
    omega: &[f64],
    data: &VerblunskyData,
    b: [C64; 2],
    c: [&Matrix<C64>; 2],
    profile: Profile,
) -> VerificationReport {
    let tol = profile.tolerance();
    let mut report = VerificationReport::new(false, tol);
    let (n, m) = (pair.n(), pair.m());
    if omega.len() != n || data.alpha.len() + 1 != n || c[0].rows() != n || c[1].rows() != m {
        report.failures.push("dimension_mismatch".into());
        report.verdict = Verdict::Fail;
        return report;
    }
    let w: Vec<C64> = omega.iter().map(|&x| C64::new(x, 0.0)).collect();
    report.kernel_residual = match assemble_circle(pair) {
        Ok(a) => row_residual(&a, &w),
        Err(_) => f64::INFINITY,
    };
    report.poly_match_n = szego_popuc(&data.alpha, b[0], n)
        .map(|p| poly_match(&p, pair.zetas()))
        .unwrap_or(f64::INFINITY);
    report.poly_match_m = szego_popuc(&data.alpha[..m - 1], b[1], m)
        .map(|p| poly_match(&p, pair.xis()))
        .unwrap_or(f64::INFINITY);
    let mut warnings = Vec::new();
    report.spectrum_residual_n = det_residual(c[0], pair.zetas(), "C_n", &mut warnings);
    report.spectrum_residual_m = det_residual(c[1], pair.xis(), "C_m", &mut warnings);
    report.warnings = warnings;
    let defect = |u: &Matrix<C64>| u.mul(&u.adjoint()).identity_defect();
    report.unitarity_defect = Some(defect(c[0]).max(defect(c[1])));
    report.alpha_in_disk = Some(data.alpha.iter().all(|a| a.norm() < 1.0));
    report.boundary_unimodular = Some(b.iter().all(|z| (z.norm() - 1.0).abs() <= tol.max(1e-14)));
    report.finish()
}

/// Nullspace basis by plain row reduction.
pub fn brute_nullspace<T: Field>(a: &Matrix<T>) -> Vec<Vec<T>> {
    matrix::nullspace(a, matrix::FLOAT_PIVOT_TOL)
}

/// `det(x I_k - M_k)` for the leading `k × k` block, by expansion over all
/// permutations.
pub fn brute_charpoly<T: Field>(m: &Matrix<T>, k: usize) -> Result<Polynomial<T>> {
    if k > EXPANSION_LIMIT {
        return Err(Error::DimensionTooLarge {
            dim: k,
            limit: EXPANSION_LIMIT,
        });
    }
    assert!(
        k <= m.rows() && k <= m.cols(),
        "block {k} exceeds the matrix"
    );
    let mut total = Polynomial::zero();
    let mut used = vec![false; k];
    leibniz(m, 0, &mut used, Polynomial::one(), false, &mut total);
    Ok(total)
}

/// Row-by-row Leibniz expansion of `det(x I - M)`, skipping branches whose
/// every term contains a zero off-diagonal entry.
fn leibniz<T: Field>(
    m: &Matrix<T>,
    row: usize,
    used: &mut [bool],
    acc: Polynomial<T>,
    odd: bool,
    total: &mut Polynomial<T>,
) {
    let k = used.len();
    if row == k {
        *total = if odd {
            total.sub(&acc)
        } else {
            total.add(&acc)
        };
        return;
    }
    // a column that no remaining row can fill makes every completion vanish
    let reachable = |c: usize| (row..k).any(|i| i == c || !m[(i, c)].is_zero());
    if (0..k).any(|c| !used[c] && !reachable(c)) {
        return;
    }
    for col in 0..k {
        if used[col] || (col != row && m[(row, col)].is_zero()) {
            continue;
        }
        let c = -m[(row, col)].clone();
        let entry = if col == row {
            Polynomial::new(vec![c, T::one()])
        } else {
            Polynomial::new(vec![c])
        };
        // sign of the partial permutation: columns already used to the right of `col`
        let inversions = used[col + 1..].iter().filter(|&&u| u).count();
        used[col] = true;
        leibniz(
            m,
            row + 1,
            used,
            acc.mul(&entry),
            odd ^ (inversions % 2 == 1),
            total,
        );
        used[col] = false;
    }
}

/// `det(z I - M)` by fraction-free elimination (exact) or pivoted LU (float).
pub fn brute_det<T: Field>(m: &Matrix<T>, z: T) -> T {
    matrix::determinant(&shifted_identity(m, z)).0
}
