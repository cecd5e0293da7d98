//! End-to-end drivers: interlacing check, positive weights, recurrence data,
//! matrices, and a verification report.

use crate::error::Result;
use crate::interlacing::{
    bands_real, check_interlace_circle, check_interlace_real, BandDecomposition,
    CircleSpectrumPair, InterlacingIndices, RealSpectrumPair,
};
use crate::kernel::{positive_weight, WeightChoice, WeightSelection};
use crate::matrix::Matrix;
use crate::oprl::{moments_real, stieltjes, JacobiData};
use crate::popuc::{
    boundary_param, cmv_matrix, trig_moments, verblunsky_from_measure, TrigMoments, VerblunskyData,
};
use crate::scalar::{Real, C64};
use crate::verify::{verify_oprl, verify_popuc, Profile, VerificationReport};

#[derive(Debug, Clone)]
pub struct RealSolution<T> {
    pub indices: InterlacingIndices,
    pub bands: BandDecomposition,
    pub weights: WeightChoice<T>,
    /// `μ_0 … μ_{2n-1}`
    pub moments: Vec<T>,
    pub jacobi: JacobiData<T>,
    pub j_n: Matrix<T>,
    pub j_m: Matrix<T>,
    pub report: VerificationReport,
}

impl<T: Real> RealSolution<T> {
    pub fn omega(&self) -> &[T] {
        &self.weights.omega
    }

    pub fn omega_display(&self) -> Vec<String> {
        self.weights.omega.iter().map(ToString::to_string).collect()
    }
}

/// Reconstructs `J_n` with `σ(J_n) = Z_n` and `σ(J_m) = Z_m`.
///
/// Interlacing and weight errors are returned as `Err`; a failed verification
/// is reported in [`RealSolution::report`].
pub fn reconstruct_real<T: Real>(
    pair: &RealSpectrumPair<T>,
    selection: &WeightSelection<T>,
    profile: Profile,
) -> Result<RealSolution<T>> {
    let indices = check_interlace_real(pair)?;
    let bands = bands_real(pair, &indices);
    let weights = positive_weight(pair, &bands, selection)?;
    let moments = moments_real(pair.xs(), &weights.omega, 2 * pair.n())?;
    let jacobi = stieltjes(pair.xs(), &weights.omega)?;
    let j_n = jacobi.matrix();
    let j_m = j_n.leading(pair.m());
    let report = verify_oprl(pair, &weights.omega, &jacobi, profile);
    Ok(RealSolution {
        indices,
        bands,
        weights,
        moments,
        jacobi,
        j_n,
        j_m,
        report,
    })
}

#[derive(Debug, Clone)]
pub struct CircleSolution {
    pub bands: BandDecomposition,
    pub weights: WeightChoice<f64>,
    pub moments: TrigMoments,
    pub verblunsky: VerblunskyData,
    pub b_n: C64,
    pub b_m: C64,
    pub c_n: Matrix<C64>,
    pub c_m: Matrix<C64>,
    pub report: VerificationReport,
}

impl CircleSolution {
    pub fn omega(&self) -> &[f64] {
        &self.weights.omega
    }
}

/// Reconstructs `C_n = C(α_0, …, α_{n-2}, b_n)` and `C_m = C(α_0, …, α_{m-2}, b_m)`
/// with spectra `Z_n` and `Z_m`.
pub fn reconstruct_circle(
    pair: &CircleSpectrumPair,
    selection: &WeightSelection<f64>,
    profile: Profile,
) -> Result<CircleSolution> {
    let bands = check_interlace_circle(pair)?;
    let weights = positive_weight(pair, &bands, selection)?;
    let moments = trig_moments(pair.zetas(), &weights.omega)?;
    let verblunsky = verblunsky_from_measure(pair.zetas(), &weights.omega)?;
    let b_n = boundary_param(pair.zetas());
    let b_m = boundary_param(pair.xis());
    let c_n = cmv_matrix(&verblunsky.alpha, b_n)?;
    let c_m = cmv_matrix(&verblunsky.alpha[..pair.m() - 1], b_m)?;
    let report = verify_popuc(
        pair,
        &weights.omega,
        &verblunsky,
        [b_n, b_m],
        [&c_n, &c_m],
        profile,
    );
    Ok(CircleSolution {
        bands,
        weights,
        moments,
        verblunsky,
        b_n,
        b_m,
        c_n,
        c_m,
        report,
    })
}
