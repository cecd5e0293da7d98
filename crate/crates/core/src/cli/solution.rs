//! JSON documents written by the commands.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::fuzz::{Arithmetic, Setting};
use crate::interlacing::BandDecomposition;
use crate::kernel::{CircuitVector, WeightChoice};
use crate::matrix::Matrix;
use crate::poly::Polynomial;
use crate::popuc::szego_popuc;
use crate::reconstruct::{CircleSolution, RealSolution};
use crate::scalar::{Real, C64};
use crate::verify::VerificationReport;

use super::problem::{Resolved, Strategy, SCHEMA};

/// Exact values travel as `"p/q"` strings, floats as shortest round-trip
/// numbers, complex values as `{"re", "im"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Complex { re: f64, im: f64 },
    Float(f64),
    Exact(String),
}

impl Num {
    pub fn real<T: Real>(v: &T) -> Self {
        match v.to_rational() {
            Some(q) => Num::Exact(q.to_string()),
            None => Num::Float(v.to_f64()),
        }
    }

    pub fn complex(z: &C64) -> Self {
        Num::Complex { re: z.re, im: z.im }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Num::Float(v) => Some(*v),
            Num::Exact(s) => crate::scalar::parse_rational(s).ok().map(|q| q.to_f64()),
            Num::Complex { .. } => None,
        }
    }
}

fn reals<T: Real>(v: &[T]) -> Vec<Num> {
    v.iter().map(Num::real).collect()
}

fn complexes(v: &[C64]) -> Vec<Num> {
    v.iter().map(Num::complex).collect()
}

fn real_matrix<T: Real>(m: &Matrix<T>) -> Vec<Vec<Num>> {
    m.to_rows().iter().map(|r| reals(r)).collect()
}

fn complex_matrix(m: &Matrix<C64>) -> Vec<Vec<Num>> {
    m.to_rows().iter().map(|r| complexes(r)).collect()
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|j| j + 1).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircuitTerm {
    /// One-based node positions.
    pub support: Vec<usize>,
    /// The full kernel vector, zero off the support.
    pub weights: Vec<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficient: Option<Num>,
}

impl CircuitTerm {
    pub fn real<T: Real>(c: &CircuitVector<T>, coefficient: Option<&T>) -> Self {
        CircuitTerm {
            support: one_based(&c.support),
            weights: reals(&c.weights),
            coefficient: coefficient.map(Num::real),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Recurrence {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<Num>>,
    /// `γ_1 … γ_{n-1}`
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Vec<Num>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<Num>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<Vec<Num>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_n: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_m: Option<Num>,
}

/// Coefficient lists, constant term first.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Polynomials {
    /// `P_0 … P_n`
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub p: Vec<Vec<Num>>,
    /// `Φ_0 … Φ_{n-1}`
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub phi: Vec<Vec<Num>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi_n: Option<Vec<Num>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi_m: Option<Vec<Num>>,
}

/// Normalized arguments in radians.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Angles {
    pub theta: Vec<f64>,
    pub phi: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionFile {
    pub schema: String,
    pub command: String,
    pub setting: Setting,
    pub arithmetic: Arithmetic,
    pub strategy: Strategy,
    pub profile: String,
    pub n: usize,
    pub m: usize,
    /// `i_0 = 0 ≤ i_1 ≤ … ≤ i_{m+1} = n`, real setting only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub indices: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angles: Option<Angles>,
    pub bands: Vec<Vec<usize>>,
    /// Decimal string: the family size can exceed 2^64.
    pub family_size: String,
    /// Empty when the family was too large to record.
    pub circuits: Vec<CircuitTerm>,
    pub omega: Vec<Num>,
    pub moments: Vec<Num>,
    pub recurrence: Recurrence,
    pub polynomials: Polynomials,
    pub matrices: BTreeMap<String, Vec<Vec<Num>>>,
    pub verification: VerificationReport,
}

fn header(
    r: &Resolved,
    n: usize,
    m: usize,
    bands: &BandDecomposition,
    w_family: u128,
    report: &VerificationReport,
) -> SolutionFile {
    SolutionFile {
        schema: SCHEMA.into(),
        command: "reconstruct".into(),
        setting: r.setting(),
        arithmetic: r.arithmetic,
        strategy: r.strategy,
        profile: r.profile.to_string(),
        n,
        m,
        indices: None,
        angles: None,
        bands: bands.one_based(),
        family_size: w_family.to_string(),
        circuits: Vec::new(),
        omega: Vec::new(),
        moments: Vec::new(),
        recurrence: Recurrence::default(),
        polynomials: Polynomials::default(),
        matrices: BTreeMap::new(),
        verification: report.clone(),
    }
}

fn terms<T: Real>(w: &WeightChoice<T>) -> Vec<CircuitTerm> {
    w.terms
        .iter()
        .map(|(c, s)| CircuitTerm::real(c, Some(s)))
        .collect()
}

impl SolutionFile {
    pub fn from_real<T: Real>(sol: &RealSolution<T>, r: &Resolved) -> Self {
        let n = sol.jacobi.n();
        let m = sol.j_m.rows();
        let mut out = header(r, n, m, &sol.bands, sol.weights.family_size, &sol.report);
        out.indices = Some(sol.indices.as_slice().to_vec());
        out.circuits = terms(&sol.weights);
        out.omega = reals(&sol.weights.omega);
        out.moments = reals(&sol.moments);
        out.recurrence.beta = Some(reals(&sol.jacobi.beta));
        out.recurrence.gamma = Some(reals(&sol.jacobi.gamma));
        out.polynomials.p = sol.jacobi.polys.iter().map(|p| reals(p.coeffs())).collect();
        out.matrices.insert("j_n".into(), real_matrix(&sol.j_n));
        out.matrices.insert("j_m".into(), real_matrix(&sol.j_m));
        out
    }

    pub fn from_circle(sol: &CircleSolution, r: &Resolved, angles: Angles) -> Self {
        let n = sol.c_n.rows();
        let m = sol.c_m.rows();
        let mut out = header(r, n, m, &sol.bands, sol.weights.family_size, &sol.report);
        out.angles = Some(angles);
        out.circuits = terms(&sol.weights);
        out.omega = reals(&sol.weights.omega);
        out.moments = complexes(sol.moments.nonnegative());
        let v = &sol.verblunsky;
        out.recurrence.alpha = Some(complexes(&v.alpha));
        out.recurrence.rho = Some(reals(&v.rho));
        out.recurrence.b_n = Some(Num::complex(&sol.b_n));
        out.recurrence.b_m = Some(Num::complex(&sol.b_m));
        let poly = |p: &Polynomial<C64>| complexes(p.coeffs());
        out.polynomials.phi = v.phis.iter().map(poly).collect();
        out.polynomials.psi_n = szego_popuc(&v.alpha, sol.b_n, n).ok().as_ref().map(poly);
        out.polynomials.psi_m = szego_popuc(&v.alpha, sol.b_m, m).ok().as_ref().map(poly);
        out.matrices.insert("c_n".into(), complex_matrix(&sol.c_n));
        out.matrices.insert("c_m".into(), complex_matrix(&sol.c_m));
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorInfo {
    pub code: String,
    pub message: String,
}

impl From<&crate::error::Error> for ErrorInfo {
    fn from(e: &crate::error::Error) -> Self {
        ErrorInfo {
            code: e.code().into(),
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub schema: String,
    pub command: String,
    pub setting: Setting,
    pub accepted: bool,
    pub n: usize,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub indices: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bands: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family_size: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircuitListing {
    pub schema: String,
    pub command: String,
    pub setting: Setting,
    pub bands: Vec<Vec<usize>>,
    pub family_size: String,
    /// True when only the first [`crate::kernel::RECORD_LIMIT`] members are listed.
    pub truncated: bool,
    pub circuits: Vec<CircuitTerm>,
}

/// Output of any command that failed before producing its document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorFile {
    pub schema: String,
    pub command: String,
    pub error: ErrorInfo,
}
