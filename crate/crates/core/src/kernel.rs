//! Vandermonde-type moment systems, their sparse circuit generators, and the
//! strictly positive weight cone.
//!
//! Real case: `A` is `m × n` with `A[k][j] = x_j^k · P_m(x_j)`; its kernel has
//! dimension `n - m` and is spanned by circuits supported on `m + 1` nodes.
//! Circle case: `A` is `(m-1) × n` with `A[k][j] = ζ_j^k · P_m(ζ_j) / ζ_j^{m-1}`;
//! the kernel has dimension `n - m + 1` and is spanned by real circuits on `m`
//! nodes. A circuit taking one node from every band is entrywise nonnegative,
//! and the cone of such circuits is exactly the set of admissible weights.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::interlacing::{BandDecomposition, CircleSpectrumPair, RealSpectrumPair};
use crate::matrix::{self, Matrix};
use crate::scalar::{Field, Real, C64};

/// Product of band sizes above which callers should stream instead of
/// materializing the admissible family.
pub const MATERIALIZE_LIMIT: u128 = 1_000_000;

fn monic_at<T: Field>(roots: &[T], x: &T) -> T {
    roots
        .iter()
        .fold(T::one(), |acc, r| acc * (x.clone() - r.clone()))
}

pub fn assemble_real<T: Real>(pair: &RealSpectrumPair<T>) -> Result<Matrix<T>> {
    let (n, m) = (pair.n(), pair.m());
    let mut p_at = Vec::with_capacity(n);
    for (j, x) in pair.xs().iter().enumerate() {
        let v = monic_at(pair.ys(), x);
        if v.is_zero() {
            let k = pair.ys().iter().position(|y| y == x).unwrap_or(0);
            return Err(Error::SharedPoint {
                y_index: k,
                x_index: j,
            });
        }
        p_at.push(v);
    }
    let mut a = Matrix::zeros(m, n);
    for j in 0..n {
        let mut v = p_at[j].clone();
        for k in 0..m {
            a[(k, j)] = v.clone();
            v = v * pair.xs()[j].clone();
        }
    }
    Ok(a)
}

pub fn assemble_circle(pair: &CircleSpectrumPair) -> Result<Matrix<C64>> {
    let (n, m) = (pair.n(), pair.m());
    let mut d = Vec::with_capacity(n);
    for (j, z) in pair.zetas().iter().enumerate() {
        let p = monic_at(pair.xis(), z);
        if p.norm() == 0.0 {
            return Err(Error::SharedPoint {
                y_index: 0,
                x_index: j,
            });
        }
        d.push(p / z.powi(m as i32 - 1));
    }
    Ok(Matrix::from_fn(m - 1, n, |k, j| {
        pair.zetas()[j].powi(k as i32) * d[j]
    }))
}

/// Sparse kernel generator: nonzero exactly on `support` (sorted, zero-based).
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitVector<T> {
    pub support: Vec<usize>,
    pub weights: Vec<T>,
}

impl<T: Real> CircuitVector<T> {
    /// Flip the global sign when the signs on the support sum to a negative
    /// number. Circuits that take one node per band come out entrywise
    /// nonnegative.
    fn normalize_sign(mut self) -> Self {
        let s: i32 = self
            .support
            .iter()
            .map(|&j| self.weights[j].signum_i())
            .sum();
        if s < 0 {
            for w in &mut self.weights {
                *w = -w.clone();
            }
        }
        self
    }

    pub fn is_nonnegative(&self) -> bool {
        self.weights.iter().all(|w| w.signum_i() >= 0)
    }

    /// Both signs occur on the support.
    pub fn has_mixed_signs(&self) -> bool {
        let signs: Vec<i32> = self
            .support
            .iter()
            .map(|&j| self.weights[j].signum_i())
            .collect();
        signs.contains(&1) && signs.contains(&-1)
    }
}

fn check_support(support: &[usize], n: usize, size: usize) -> Result<()> {
    let bad = |reason: String| {
        Err(Error::InvalidSupport {
            support: support.to_vec(),
            reason,
        })
    };
    if support.len() != size {
        return bad(format!("expected {size} indices"));
    }
    if support.windows(2).any(|w| w[0] >= w[1]) {
        return bad("indices must be strictly increasing".into());
    }
    if support.last().is_some_and(|&j| j >= n) {
        return bad(format!("index out of range for n = {n}"));
    }
    Ok(())
}

/// `ω_j = 1 / (P_m(x_j) · Q_J'(x_j))` on the support, with
/// `Q_J(x) = ∏_{i ∈ J} (x - x_i)`; support size `m + 1`.
pub fn circuit_real<T: Real>(
    pair: &RealSpectrumPair<T>,
    support: &[usize],
) -> Result<CircuitVector<T>> {
    let (n, m) = (pair.n(), pair.m());
    check_support(support, n, m + 1)?;
    let xs = pair.xs();
    let mut weights = vec![T::zero(); n];
    for &j in support {
        let p = monic_at(pair.ys(), &xs[j]);
        if p.is_zero() {
            let k = pair.ys().iter().position(|y| *y == xs[j]).unwrap_or(0);
            return Err(Error::SharedPoint {
                y_index: k,
                x_index: j,
            });
        }
        let dq = support
            .iter()
            .filter(|&&i| i != j)
            .fold(T::one(), |acc, &i| acc * (xs[j].clone() - xs[i].clone()));
        if dq.is_zero() {
            return Err(Error::InvalidSupport {
                support: support.to_vec(),
                reason: "repeated node".into(),
            });
        }
        weights[j] = T::one() / (p * dq);
    }
    Ok(CircuitVector {
        support: support.to_vec(),
        weights,
    }
    .normalize_sign())
}

/// Half-angle sine form of the circle circuit on `m` nodes:
/// `ω_j = 1 / (∏_k sin((θ_j - φ_k)/2) · ∏_{i ∈ J, i ≠ j} sin((θ_j - θ_i)/2))`.
/// Real by construction; the complex system annihilates it.
pub fn circuit_circle(pair: &CircleSpectrumPair, support: &[usize]) -> Result<CircuitVector<f64>> {
    let (n, m) = (pair.n(), pair.m());
    check_support(support, n, m)?;
    let th = pair.thetas();
    let mut weights = vec![0.0; n];
    for &j in support {
        let p: f64 = pair
            .phis()
            .iter()
            .map(|&ph| ((th[j] - ph) / 2.0).sin())
            .product();
        if p == 0.0 {
            return Err(Error::SharedPoint {
                y_index: 0,
                x_index: j,
            });
        }
        let q: f64 = support
            .iter()
            .filter(|&&i| i != j)
            .map(|&i| ((th[j] - th[i]) / 2.0).sin())
            .product();
        if q == 0.0 {
            return Err(Error::DegenerateAngle {
                set: "zn",
                first: j,
                second: j,
            });
        }
        weights[j] = 1.0 / (p * q);
    }
    Ok(CircuitVector {
        support: support.to_vec(),
        weights,
    }
    .normalize_sign())
}

/// Anything that can produce the circuit supported on a given index set.
pub trait CircuitSource {
    type Scalar: Real;

    fn node_count(&self) -> usize;
    fn circuit(&self, support: &[usize]) -> Result<CircuitVector<Self::Scalar>>;
}

impl<T: Real> CircuitSource for RealSpectrumPair<T> {
    type Scalar = T;

    fn node_count(&self) -> usize {
        self.n()
    }
    fn circuit(&self, support: &[usize]) -> Result<CircuitVector<T>> {
        circuit_real(self, support)
    }
}

impl CircuitSource for CircleSpectrumPair {
    type Scalar = f64;

    fn node_count(&self) -> usize {
        self.n()
    }
    fn circuit(&self, support: &[usize]) -> Result<CircuitVector<f64>> {
        circuit_circle(self, support)
    }
}

/// `|J_+| = ∏ |I_r|`, or `None` on overflow.
pub fn admissible_count(bands: &BandDecomposition) -> Option<u128> {
    bands
        .bands()
        .iter()
        .try_fold(1u128, |acc, b| acc.checked_mul(b.len() as u128))
}

/// The `k`-th admissible set in lexicographic order (mixed-radix decode, the
/// last band varying fastest).
pub fn admissible_nth(bands: &BandDecomposition, mut k: u128) -> Option<Vec<usize>> {
    if k >= admissible_count(bands)? {
        return None;
    }
    let mut out = vec![0; bands.len()];
    for (r, band) in bands.bands().iter().enumerate().rev() {
        let size = band.len() as u128;
        out[r] = band[(k % size) as usize];
        k /= size;
    }
    Some(out)
}

/// Lazy lexicographic enumeration of `J_+`: one index from every band.
pub struct AdmissibleSets<'a> {
    bands: &'a [Vec<usize>],
    cursor: Option<Vec<usize>>,
}

impl Iterator for AdmissibleSets<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cursor = self.cursor.as_mut()?;
        let out: Vec<usize> = cursor.iter().zip(self.bands).map(|(&c, b)| b[c]).collect();
        // odometer step
        let mut r = self.bands.len();
        loop {
            if r == 0 {
                self.cursor = None;
                break;
            }
            r -= 1;
            cursor[r] += 1;
            if cursor[r] < self.bands[r].len() {
                break;
            }
            cursor[r] = 0;
        }
        Some(out)
    }
}

pub fn admissible_family(bands: &BandDecomposition) -> AdmissibleSets<'_> {
    let cursor = if bands.bands().iter().any(Vec::is_empty) {
        None
    } else {
        Some(vec![0; bands.len()])
    };
    AdmissibleSets {
        bands: bands.bands(),
        cursor,
    }
}

/// How to pick a point of the strictly positive cone.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightSelection<T> {
    /// Sum of every admissible circuit.
    SumAll,
    /// `ω^(J_1) + Σ_{k≥1} s_k · ω^(J_{k+1})` over the lexicographic family;
    /// keys are the one-based parameter numbers `k`, missing keys mean 0.
    Coefficients(BTreeMap<usize, T>),
    /// `Σ_j ω^(J_j)` with `J_j` the admissible set holding node `j` and the
    /// first node of every other band.
    Cover,
}

/// A strictly positive kernel vector together with the circuits it combines.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightChoice<T> {
    pub omega: Vec<T>,
    /// `(circuit, coefficient)` pairs; empty when the family was streamed
    /// past [`RECORD_LIMIT`] terms.
    pub terms: Vec<(CircuitVector<T>, T)>,
    pub family_size: u128,
}

/// Terms beyond this count are summed but not recorded.
pub const RECORD_LIMIT: usize = 1000;

pub fn positive_weight<S: CircuitSource>(
    source: &S,
    bands: &BandDecomposition,
    selection: &WeightSelection<S::Scalar>,
) -> Result<WeightChoice<S::Scalar>> {
    let n = source.node_count();
    let family_size = admissible_count(bands).ok_or_else(|| Error::FamilyTooLarge {
        reason: "band-size product overflows u128".into(),
    })?;
    if family_size == 0 {
        return Err(Error::EmptyBand {
            band: bands.bands().iter().position(Vec::is_empty).unwrap_or(0),
        });
    }

    let plan: Box<dyn Iterator<Item = (Vec<usize>, S::Scalar)> + '_> = match selection {
        WeightSelection::SumAll => {
            Box::new(admissible_family(bands).map(|j| (j, S::Scalar::one())))
        }
        WeightSelection::Cover => {
            let sets: Vec<(Vec<usize>, S::Scalar)> = (0..n)
                .map(|j| {
                    let set = bands
                        .bands()
                        .iter()
                        .map(|b| if b.contains(&j) { j } else { b[0] })
                        .collect();
                    (set, S::Scalar::one())
                })
                .collect();
            Box::new(sets.into_iter())
        }
        WeightSelection::Coefficients(params) => {
            let mut terms = vec![(
                admissible_nth(bands, 0).expect("nonempty family"),
                S::Scalar::one(),
            )];
            for (&k, t) in params {
                if k == 0 || (k as u128) >= family_size {
                    return Err(Error::UnknownParameter {
                        param: k,
                        family: family_size,
                    });
                }
                match t.signum_i() {
                    -1 => return Err(Error::NegativeCoefficient { param: k }),
                    0 => continue,
                    _ => {}
                }
                terms.push((
                    admissible_nth(bands, k as u128).expect("index checked"),
                    t.clone(),
                ));
            }
            let mut covered = vec![false; n];
            for (set, _) in &terms {
                for &j in set {
                    covered[j] = true;
                }
            }
            if let Some(j) = covered.iter().position(|c| !c) {
                return Err(Error::NotCovered { index: j });
            }
            Box::new(terms.into_iter())
        }
    };

    let mut omega = vec![S::Scalar::zero(); n];
    let mut recorded = Vec::new();
    let mut overflowed = false;
    for (set, coeff) in plan {
        let c = source.circuit(&set)?;
        for &j in &c.support {
            omega[j] = omega[j].clone() + coeff.clone() * c.weights[j].clone();
        }
        if !overflowed {
            if recorded.len() < RECORD_LIMIT {
                recorded.push((c, coeff));
            } else {
                overflowed = true;
                recorded.clear();
            }
        }
    }
    if let Some(j) = omega.iter().position(|w| w.signum_i() <= 0) {
        return Err(Error::NonPositiveWeight { index: j });
    }
    Ok(WeightChoice {
        omega,
        terms: recorded,
        family_size,
    })
}

/// Combine explicit circuits with explicit coefficients, checking coverage and
/// strict positivity of the result.
pub fn combine_circuits<T: Real>(n: usize, terms: &[(CircuitVector<T>, T)]) -> Result<Vec<T>> {
    let mut omega = vec![T::zero(); n];
    let mut covered = vec![false; n];
    for (k, (c, t)) in terms.iter().enumerate() {
        if c.weights.len() != n {
            return Err(Error::LengthMismatch {
                left: c.weights.len(),
                right: n,
            });
        }
        match t.signum_i() {
            -1 => return Err(Error::NegativeCoefficient { param: k }),
            0 => continue,
            _ => {}
        }
        for &j in &c.support {
            covered[j] = true;
            omega[j] = omega[j].clone() + t.clone() * c.weights[j].clone();
        }
    }
    if let Some(j) = covered.iter().position(|c| !c) {
        return Err(Error::NotCovered { index: j });
    }
    if let Some(j) = omega.iter().position(|w| w.signum_i() <= 0) {
        return Err(Error::NonPositiveWeight { index: j });
    }
    Ok(omega)
}

/// Nullspace of `A` by generic row reduction, required to have dimension
/// `expected_dim` (`n - m` on the line, `n - m + 1` on the circle).
pub fn kernel_basis_oracle<T: Field>(a: &Matrix<T>, expected_dim: usize) -> Result<Vec<Vec<T>>> {
    let basis = matrix::nullspace(a, matrix::FLOAT_PIVOT_TOL);
    if basis.len() != expected_dim {
        return Err(Error::RankDeficient {
            expected: expected_dim,
            found: basis.len(),
        });
    }
    Ok(basis)
}
