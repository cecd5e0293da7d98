//! Reconstruction of finite orthogonal-polynomial families from two prescribed
//! zero sets of non-consecutive degrees.
//!
//! On the real line the output is a Jacobi matrix `J_n` whose leading principal
//! submatrix `J_m` has the second prescribed spectrum. On the unit circle the
//! output is a pair of unitary pentadiagonal (CMV-type) matrices `C_n`, `C_m`
//! built from Verblunsky coefficients and boundary parameters.
//!
//! The pipeline in both settings is the same:
//!
//! 1. validate strict interlacing and split the nodes of `Z_n` into bands
//!    ([`interlacing`]);
//! 2. build sparse nonnegative kernel vectors of the Vandermonde-type moment
//!    system, one per choice of a single index in every band ([`kernel`]);
//! 3. combine them into a strictly positive weight vector;
//! 4. treat the weights as a discrete measure and recover the recurrence data
//!    ([`oprl`] via Stieltjes, [`popuc`] via the Szegő recursion);
//! 5. certify the result against the prescribed spectra ([`verify`]).
//!
//! [`reconstruct`] chains these steps; [`cli`] wraps them behind JSON problem and
//! solution files.
//!
//! ```
//! use twospectra::prelude::*;
//!
//! let pair = RealSpectrumPair::<Rational>::parse(&["1", "2", "3", "4"], &["3/2", "7/2"])?;
//! let sol = reconstruct_real(&pair, &WeightSelection::SumAll, Profile::Strict)?;
//! assert_eq!(sol.omega_display(), vec!["2/5", "2/3", "2/3", "2/5"]);
//! assert!(sol.report.passed());
//! # Ok::<(), twospectra::Error>(())
//! ```

// `!(a < b)` is how NaN gets rejected throughout.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
mod exact;
pub mod fuzz;
pub mod interlacing;
pub mod kernel;
pub mod matrix;
pub mod oprl;
pub mod poly;
pub mod popuc;
pub mod reconstruct;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::error::{Error, Result};
    pub use crate::interlacing::{
        bands_real, check_interlace_circle, check_interlace_real, normalize_circle,
        BandDecomposition, CircleInput, CircleSpectrumPair, InterlacingIndices, RealSpectrumPair,
    };
    pub use crate::kernel::{
        admissible_family, assemble_circle, assemble_real, circuit_circle, circuit_real,
        positive_weight, CircuitSource, CircuitVector, WeightSelection,
    };
    pub use crate::matrix::Matrix;
    pub use crate::oprl::{eval_charpoly, jacobi_matrix, moments_real, stieltjes, JacobiData};
    pub use crate::poly::Polynomial;
    pub use crate::popuc::{
        boundary_param, cmv_matrix, szego_popuc, trig_moments, verblunsky_from_measure,
        verblunsky_from_moments, TrigMoments, VerblunskyData,
    };
    pub use crate::reconstruct::{
        reconstruct_circle, reconstruct_real, CircleSolution, RealSolution,
    };
    pub use crate::scalar::{Field, Rational, Real, C64};
    pub use crate::verify::{verify_oprl, verify_popuc, Profile, VerificationReport};
}
