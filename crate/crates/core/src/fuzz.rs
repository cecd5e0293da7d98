//! Seeded random instances and the batch driver behind `twospectra fuzz`.
//!
//! Every instance is drawn from its own ChaCha stream derived from the batch
//! seed and the instance number, so any single failure can be regenerated
//! without rerunning the batch. All coordinates lie on rational grids and can
//! be written out exactly.

use num_bigint::BigInt;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interlacing::{normalize_circle_angles, CircleSpectrumPair, RealSpectrumPair};
use crate::kernel::WeightSelection;
use crate::reconstruct::{reconstruct_circle, reconstruct_real};
use crate::scalar::{Rational, Real};
use crate::verify::{Profile, VerificationReport};

/// Real nodes live on `k / REAL_GRID` inside `[-10, 10]`.
pub const REAL_GRID: i64 = 10;
/// Circle points live on `2π k / CIRCLE_GRID`; neighbours are ≈ 0.0105 rad apart.
pub const CIRCLE_GRID: i64 = 600;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Setting {
    Real,
    Circle,
}

/// Real instance with exact coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct RealCase {
    pub xs: Vec<Rational>,
    pub ys: Vec<Rational>,
}

impl RealCase {
    pub fn pair<T: Real>(&self) -> Result<RealSpectrumPair<T>> {
        let conv = |v: &[Rational]| v.iter().cloned().map(T::from_rational).collect::<Vec<_>>();
        RealSpectrumPair::from_unsorted(conv(&self.xs), conv(&self.ys))
    }
}

/// Circle instance; angles are stored as multiples of π.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleCase {
    pub thetas_over_pi: Vec<Rational>,
    pub phis_over_pi: Vec<Rational>,
}

impl CircleCase {
    pub fn pair(&self) -> Result<CircleSpectrumPair> {
        let rad = |v: &[Rational]| {
            v.iter()
                .map(|t| t.to_f64() * std::f64::consts::PI)
                .collect::<Vec<_>>()
        };
        normalize_circle_angles(&rad(&self.thetas_over_pi), &rad(&self.phis_over_pi))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Case {
    Real(RealCase),
    Circle(CircleCase),
}

/// Seed of instance `index` within a batch.
pub fn instance_seed(batch_seed: u64, index: u64) -> u64 {
    // splitmix64 finalizer over the pair
    let mut z = batch_seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn sorted_sample(rng: &mut impl Rng, len: usize, amount: usize) -> Vec<usize> {
    let mut v = sample(rng, len, amount).into_vec();
    v.sort_unstable();
    v
}

fn real_nodes(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    let span = (20 * REAL_GRID + 1) as usize;
    sorted_sample(rng, span, n)
        .into_iter()
        .map(|k| q(k as i64 - 10 * REAL_GRID, REAL_GRID))
        .collect()
}

/// A point strictly inside `(a, b)` at a fraction drawn from `{0.10, 0.11, …, 0.90}`.
fn inside(rng: &mut impl Rng, a: &Rational, b: &Rational) -> Rational {
    let u = q(rng.gen_range(10..=90), 100);
    a + (b - a) * u
}

/// `n` nodes on the grid and one point of `Z_m` in each of `m` distinct gaps.
pub fn interlacing_real(rng: &mut impl Rng, n: usize, m: usize) -> RealCase {
    assert!(1 <= m && m < n, "need 1 <= m < n");
    let xs = real_nodes(rng, n);
    let ys = sorted_sample(rng, n - 1, m)
        .into_iter()
        .map(|g| inside(rng, &xs[g], &xs[g + 1]))
        .collect();
    RealCase { xs, ys }
}

/// Places `n` nodes and `m` zeros on the circle grid so that no two zeros are
/// cyclically adjacent.
pub fn interlacing_circle(rng: &mut impl Rng, n: usize, m: usize) -> CircleCase {
    assert!(1 <= m && m < n, "need 1 <= m < n");
    let slots = sorted_sample(rng, CIRCLE_GRID as usize, n + m);
    let arcs = sorted_sample(rng, n, m);
    let mut thetas = Vec::with_capacity(n);
    let mut phis = Vec::with_capacity(m);
    let mut it = slots.into_iter().map(|k| q(2 * k as i64, CIRCLE_GRID));
    let mut next_arc = arcs.iter().peekable();
    for i in 0..n {
        thetas.push(it.next().expect("enough slots"));
        if next_arc.peek() == Some(&&i) {
            next_arc.next();
            phis.push(it.next().expect("enough slots"));
        }
    }
    CircleCase {
        thetas_over_pi: thetas,
        phis_over_pi: phis,
    }
}

/// The ways an instance can fail strict interlacing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    /// Two points of `Z_m` in one gap of `Z_n`.
    GapOverfull,
    /// A point of `Z_m` outside `(x_1, x_n)`.
    OutOfRange,
    /// Two points of `Z_m` in one arc, leaving a band empty.
    EmptyBand,
}

impl Violation {
    pub const ALL: [Violation; 3] = [
        Violation::GapOverfull,
        Violation::OutOfRange,
        Violation::EmptyBand,
    ];

    pub fn code(self) -> &'static str {
        match self {
            Violation::GapOverfull => "GAP_OVERFULL",
            Violation::OutOfRange => "OUT_OF_RANGE",
            Violation::EmptyBand => "EMPTY_BAND",
        }
    }
}

/// A non-interlacing instance of the given kind with `3 <= n <= max_n`.
pub fn violating_case(rng: &mut impl Rng, kind: Violation, max_n: usize) -> Case {
    let max_n = max_n.max(3);
    match kind {
        Violation::GapOverfull => {
            let n = rng.gen_range(3..=max_n);
            let xs = real_nodes(rng, n);
            let g = rng.gen_range(0..n - 1);
            let (mut a, mut b) = (rng.gen_range(10..=90), rng.gen_range(10..=90));
            while a == b {
                b = rng.gen_range(10..=90);
            }
            if a > b {
                std::mem::swap(&mut a, &mut b);
            }
            let at = |u: i64| &xs[g] + (&xs[g + 1] - &xs[g]) * q(u, 100);
            let mut ys = vec![at(a), at(b)];
            // other gaps may hold a point too, keeping m < n
            for h in (0..n - 1).filter(|&h| h != g) {
                if ys.len() + 1 < n && rng.gen_bool(0.3) {
                    ys.push(inside(rng, &xs[h], &xs[h + 1]));
                }
            }
            ys.sort();
            Case::Real(RealCase { xs, ys })
        }
        Violation::OutOfRange => {
            let n = rng.gen_range(2..=max_n);
            let xs = real_nodes(rng, n);
            let offset = q(rng.gen_range(1..=50), 10);
            let outside = if rng.gen_bool(0.5) {
                &xs[0] - offset
            } else {
                &xs[n - 1] + offset
            };
            let mut ys = vec![outside];
            let extra = rng.gen_range(0..n - 1);
            for g in sorted_sample(rng, n - 1, extra) {
                ys.push(inside(rng, &xs[g], &xs[g + 1]));
            }
            ys.sort();
            Case::Real(RealCase { xs, ys })
        }
        Violation::EmptyBand => {
            let n = rng.gen_range(3..=max_n);
            let m = rng.gen_range(2..n);
            let slots = sorted_sample(rng, CIRCLE_GRID as usize, n + m);
            // a zero-run of length 2 somewhere in the cyclic pattern
            let mut pattern = vec![false; n + m];
            let start = rng.gen_range(0..n + m);
            pattern[start] = true;
            pattern[(start + 1) % (n + m)] = true;
            let rest: Vec<usize> = (0..n + m).filter(|&i| !pattern[i]).collect();
            for i in sample(rng, rest.len(), m - 2).into_iter() {
                pattern[rest[i]] = true;
            }
            let (mut thetas, mut phis) = (Vec::new(), Vec::new());
            for (k, is_zero) in slots.into_iter().zip(pattern) {
                let angle = q(2 * k as i64, CIRCLE_GRID);
                if is_zero {
                    phis.push(angle);
                } else {
                    thetas.push(angle);
                }
            }
            Case::Circle(CircleCase {
                thetas_over_pi: thetas,
                phis_over_pi: phis,
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Arithmetic {
    Rational,
    Float64,
}

#[derive(Debug, Clone)]
pub struct FuzzConfig {
    pub setting: Setting,
    /// Fixed size, or a random size in `2..=max_n`.
    pub n: Option<usize>,
    /// Fixed `m`, or random in `1..n`.
    pub m: Option<usize>,
    pub max_n: usize,
    pub count: usize,
    pub seed: u64,
    pub profile: Profile,
    pub arithmetic: Arithmetic,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        Self {
            setting: Setting::Real,
            n: None,
            m: None,
            max_n: 12,
            count: 100,
            seed: 0,
            profile: Profile::Standard,
            arithmetic: Arithmetic::Float64,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FuzzOutcome {
    pub index: usize,
    pub instance_seed: u64,
    pub n: usize,
    pub m: usize,
    pub family_size: Option<String>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip)]
    pub report: Option<VerificationReport>,
    #[serde(skip)]
    pub case: Option<Case>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FuzzSummary {
    pub setting: Setting,
    pub count: usize,
    pub passed: usize,
    pub seed: u64,
    pub max_kernel_residual: f64,
    pub max_spectrum_residual: f64,
    pub max_poly_match: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_unitarity_defect: Option<f64>,
    pub failures: Vec<FuzzOutcome>,
    #[serde(skip)]
    pub outcomes: Vec<FuzzOutcome>,
}

impl FuzzSummary {
    pub fn all_passed(&self) -> bool {
        self.passed == self.count
    }
}

/// Draws the sizes and the instance for one batch member.
pub fn fuzz_case(cfg: &FuzzConfig, instance_seed: u64) -> Case {
    let mut rng = rng_for(instance_seed);
    let n = cfg.n.unwrap_or_else(|| rng.gen_range(2..=cfg.max_n.max(2)));
    let m = cfg.m.unwrap_or_else(|| rng.gen_range(1..n));
    match cfg.setting {
        Setting::Real => Case::Real(interlacing_real(&mut rng, n, m)),
        Setting::Circle => Case::Circle(interlacing_circle(&mut rng, n, m)),
    }
}

fn run_one(cfg: &FuzzConfig, index: usize) -> FuzzOutcome {
    let seed = instance_seed(cfg.seed, index as u64);
    let case = fuzz_case(cfg, seed);
    let (n, m) = match &case {
        Case::Real(c) => (c.xs.len(), c.ys.len()),
        Case::Circle(c) => (c.thetas_over_pi.len(), c.phis_over_pi.len()),
    };
    let result: Result<(VerificationReport, u128)> = match (&case, cfg.arithmetic) {
        (Case::Real(c), Arithmetic::Rational) => c
            .pair::<Rational>()
            .and_then(|p| reconstruct_real(&p, &WeightSelection::SumAll, cfg.profile))
            .map(|s| (s.report, s.weights.family_size)),
        (Case::Real(c), Arithmetic::Float64) => c
            .pair::<f64>()
            .and_then(|p| reconstruct_real(&p, &WeightSelection::SumAll, cfg.profile))
            .map(|s| (s.report, s.weights.family_size)),
        (Case::Circle(c), Arithmetic::Float64) => c
            .pair()
            .and_then(|p| reconstruct_circle(&p, &WeightSelection::SumAll, cfg.profile))
            .map(|s| (s.report, s.weights.family_size)),
        (Case::Circle(_), Arithmetic::Rational) => Err(Error::Unsupported(
            "circle instances need float64 arithmetic".into(),
        )),
    };
    let (passed, error, report, family_size) = match result {
        Ok((r, fam)) => (
            r.passed(),
            (!r.passed()).then(|| r.failures.join(",")),
            Some(r),
            Some(fam.to_string()),
        ),
        Err(e) => (false, Some(format!("{}: {e}", e.code())), None, None),
    };
    FuzzOutcome {
        index,
        instance_seed: seed,
        n,
        m,
        family_size,
        passed,
        error,
        report,
        case: Some(case),
    }
}

/// Runs the batch in parallel; outcomes come back in instance order.
pub fn run_fuzz(cfg: &FuzzConfig) -> FuzzSummary {
    let outcomes: Vec<FuzzOutcome> = (0..cfg.count)
        .into_par_iter()
        .map(|i| run_one(cfg, i))
        .collect();
    let reports = || outcomes.iter().filter_map(|o| o.report.as_ref());
    let max = |f: fn(&VerificationReport) -> f64| reports().map(f).fold(0.0, f64::max);
    let unitarity = reports()
        .filter_map(|r| r.unitarity_defect)
        .reduce(f64::max);
    FuzzSummary {
        setting: cfg.setting,
        count: cfg.count,
        passed: outcomes.iter().filter(|o| o.passed).count(),
        seed: cfg.seed,
        max_kernel_residual: max(|r| r.kernel_residual),
        max_spectrum_residual: max(|r| r.spectrum_residual_n.max(r.spectrum_residual_m)),
        max_poly_match: max(|r| r.poly_match_n.max(r.poly_match_m)),
        max_unitarity_defect: unitarity,
        failures: outcomes.iter().filter(|o| !o.passed).cloned().collect(),
        outcomes,
    }
}
