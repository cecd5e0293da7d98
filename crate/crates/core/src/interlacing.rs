//! Strict interlacing of two zero sets and the induced band decomposition.
//!
//! Indices in this module are zero-based: node `j` is `xs[j]`. Interlacing
//! indices `i_k` are counts ("number of nodes below `y_k`"), so they read the
//! same in either convention.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::scalar::{Real, C64};

/// Two prescribed real zero sets, `xs` of size `n` and `ys` of size `m < n`,
/// each strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct RealSpectrumPair<T> {
    xs: Vec<T>,
    ys: Vec<T>,
}

impl<T: Real> RealSpectrumPair<T> {
    pub fn new(xs: Vec<T>, ys: Vec<T>) -> Result<Self> {
        check_sizes(xs.len(), ys.len())?;
        check_increasing(&xs, "xs")?;
        check_increasing(&ys, "ys")?;
        Ok(Self { xs, ys })
    }

    /// Sorts both sets first; repeated values still fail with `NOT_SORTED`.
    pub fn from_unsorted(mut xs: Vec<T>, mut ys: Vec<T>) -> Result<Self> {
        let cmp = |a: &T, b: &T| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal);
        xs.sort_by(cmp);
        ys.sort_by(cmp);
        Self::new(xs, ys)
    }

    /// Parses both sets from strings (`p/q`, integers, decimals) and sorts them.
    pub fn parse(xs: &[&str], ys: &[&str]) -> Result<Self> {
        let xs = xs
            .iter()
            .map(|s| T::parse_str(s))
            .collect::<Result<Vec<_>>>()?;
        let ys = ys
            .iter()
            .map(|s| T::parse_str(s))
            .collect::<Result<Vec<_>>>()?;
        Self::from_unsorted(xs, ys)
    }

    pub fn xs(&self) -> &[T] {
        &self.xs
    }

    pub fn ys(&self) -> &[T] {
        &self.ys
    }

    pub fn n(&self) -> usize {
        self.xs.len()
    }

    pub fn m(&self) -> usize {
        self.ys.len()
    }

    pub fn map<U: Real>(&self, f: impl Fn(&T) -> U) -> RealSpectrumPair<U> {
        RealSpectrumPair {
            xs: self.xs.iter().map(&f).collect(),
            ys: self.ys.iter().map(&f).collect(),
        }
    }
}

fn check_sizes(n: usize, m: usize) -> Result<()> {
    if m == 0 || m >= n {
        return Err(Error::InvalidSize { n, m });
    }
    Ok(())
}

fn check_increasing<T: PartialOrd>(v: &[T], set: &'static str) -> Result<()> {
    match v.windows(2).position(|w| !(w[0] < w[1])) {
        Some(i) => Err(Error::NotSorted { set, index: i + 1 }),
        None => Ok(()),
    }
}

/// `i_0 = 0 < i_1 < … < i_m < i_{m+1} = n`, with `y_k ∈ (x_{i_k}, x_{i_k + 1})`
/// in one-based node numbering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterlacingIndices(Vec<usize>);

impl InterlacingIndices {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// Accepts iff every `y` sits strictly inside `(x_1, x_n)`, collides with no
/// `x`, and no open gap `(x_i, x_{i+1})` holds two `y`s. On rejection, reports
/// the first offending `y`.
pub fn check_interlace_real<T: Real>(pair: &RealSpectrumPair<T>) -> Result<InterlacingIndices> {
    let xs = pair.xs();
    let n = xs.len();
    let mut indices = Vec::with_capacity(pair.m() + 2);
    indices.push(0);
    let mut prev_gap: Option<(usize, usize)> = None;
    for (k, y) in pair.ys().iter().enumerate() {
        // number of nodes strictly below y
        let below = xs.partition_point(|x| x < y);
        if below < n && xs[below] == *y {
            return Err(Error::SharedPoint {
                y_index: k,
                x_index: below,
            });
        }
        if below == 0 || below == n {
            return Err(Error::OutOfRange { y_index: k });
        }
        if let Some((gap, first)) = prev_gap {
            if gap == below {
                return Err(Error::GapOverfull {
                    gap: below,
                    first,
                    second: k,
                });
            }
        }
        prev_gap = Some((below, k));
        indices.push(below);
    }
    indices.push(n);
    Ok(InterlacingIndices(indices))
}

/// Partition of node indices into bands. Real case: `m + 1` consecutive runs
/// `I_r = {i_r, …, i_{r+1} - 1}` (zero-based). Circle case: `m` arcs between
/// consecutive points of the smaller set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandDecomposition {
    indices: Option<Vec<usize>>,
    bands: Vec<Vec<usize>>,
}

impl BandDecomposition {
    pub fn from_bands(bands: Vec<Vec<usize>>) -> Self {
        Self {
            indices: None,
            bands,
        }
    }

    pub fn indices(&self) -> Option<&[usize]> {
        self.indices.as_deref()
    }

    pub fn bands(&self) -> &[Vec<usize>] {
        &self.bands
    }

    pub fn len(&self) -> usize {
        self.bands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bands.is_empty()
    }

    pub fn node_count(&self) -> usize {
        self.bands.iter().map(Vec::len).sum()
    }

    /// Band holding node `j`.
    pub fn band_of(&self, j: usize) -> Option<usize> {
        self.bands.iter().position(|b| b.contains(&j))
    }

    /// Bands as one-based index lists, the way they are usually printed.
    pub fn one_based(&self) -> Vec<Vec<usize>> {
        self.bands
            .iter()
            .map(|b| b.iter().map(|j| j + 1).collect())
            .collect()
    }

    /// Every band nonempty, pairwise disjoint, union `{0, …, n-1}`.
    pub fn is_partition_of(&self, n: usize) -> bool {
        let mut seen = vec![false; n];
        for band in &self.bands {
            if band.is_empty() {
                return false;
            }
            for &j in band {
                if j >= n || seen[j] {
                    return false;
                }
                seen[j] = true;
            }
        }
        seen.into_iter().all(|s| s)
    }
}

pub fn bands_real<T: Real>(
    pair: &RealSpectrumPair<T>,
    indices: &InterlacingIndices,
) -> BandDecomposition {
    let idx = indices.as_slice();
    debug_assert_eq!(idx.len(), pair.m() + 2);
    let bands = idx.windows(2).map(|w| (w[0]..w[1]).collect()).collect();
    BandDecomposition {
        indices: Some(idx.to_vec()),
        bands,
    }
}

/// Two unit-circle points are the same when they differ by at most this much.
pub const CIRCLE_POINT_TOL: f64 = 1e-12;
/// Accepted deviation of `|z|` from 1 for points given in Cartesian form.
pub const UNIT_MODULUS_TOL: f64 = 1e-10;

/// A prescribed unit-circle point, either by angle (radians) or by value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CircleInput {
    Angle(f64),
    Point(C64),
}

/// Normalized unit-circle zero sets: `phis[0] < thetas[0] < … < thetas[n-1] <
/// phis[0] + 2π` and `phis` increasing within the same window.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleSpectrumPair {
    thetas: Vec<f64>,
    phis: Vec<f64>,
    zetas: Vec<C64>,
    xis: Vec<C64>,
}

impl CircleSpectrumPair {
    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn phis(&self) -> &[f64] {
        &self.phis
    }

    pub fn zetas(&self) -> &[C64] {
        &self.zetas
    }

    pub fn xis(&self) -> &[C64] {
        &self.xis
    }

    pub fn n(&self) -> usize {
        self.thetas.len()
    }

    pub fn m(&self) -> usize {
        self.phis.len()
    }
}

fn input_angle(input: &CircleInput, set: &'static str, index: usize) -> Result<f64> {
    match *input {
        CircleInput::Angle(a) if a.is_finite() => Ok(a),
        CircleInput::Angle(_) => Err(Error::Parse {
            what: "angle",
            input: format!("{input:?}"),
        }),
        CircleInput::Point(z) => {
            let modulus = z.norm();
            if !modulus.is_finite() || (modulus - 1.0).abs() > UNIT_MODULUS_TOL {
                return Err(Error::NotUnitModulus {
                    set,
                    index,
                    modulus,
                });
            }
            Ok(z.arg())
        }
    }
}

/// Shift into `[base, base + 2π)`.
fn wrap_from(angle: f64, base: f64) -> f64 {
    let mut a = base + (angle - base).rem_euclid(TAU);
    if a >= base + TAU {
        a -= TAU;
    }
    a
}

/// Canonical normalization: the base point `φ_1` is the point of `Z_m` with the
/// smallest principal argument in `[0, 2π)`; every other argument is moved into
/// `[φ_1, φ_1 + 2π)` and both sets are relabelled by increasing argument.
pub fn normalize_circle(zn: &[CircleInput], zm: &[CircleInput]) -> Result<CircleSpectrumPair> {
    check_sizes(zn.len(), zm.len())?;
    let raw_n = zn
        .iter()
        .enumerate()
        .map(|(j, z)| input_angle(z, "zn", j))
        .collect::<Result<Vec<_>>>()?;
    let raw_m = zm
        .iter()
        .enumerate()
        .map(|(k, z)| input_angle(z, "zm", k))
        .collect::<Result<Vec<_>>>()?;

    let cis = |a: f64| C64::from_polar(1.0, a);
    let same = |a: f64, b: f64| (cis(a) - cis(b)).norm() <= CIRCLE_POINT_TOL;
    for (k, &phi) in raw_m.iter().enumerate() {
        if let Some(j) = raw_n.iter().position(|&th| same(th, phi)) {
            return Err(Error::SharedPoint {
                y_index: k,
                x_index: j,
            });
        }
    }
    for (set, raw) in [("zn", &raw_n), ("zm", &raw_m)] {
        for a in 0..raw.len() {
            for b in a + 1..raw.len() {
                if same(raw[a], raw[b]) {
                    return Err(Error::DegenerateAngle {
                        set,
                        first: a,
                        second: b,
                    });
                }
            }
        }
    }

    let base = raw_m
        .iter()
        .map(|&p| p.rem_euclid(TAU))
        .map(|p| if p >= TAU { p - TAU } else { p })
        .fold(f64::INFINITY, f64::min);
    let sort = |v: &mut Vec<f64>| v.sort_by(f64::total_cmp);
    let mut phis: Vec<f64> = raw_m.iter().map(|&p| wrap_from(p, base)).collect();
    let mut thetas: Vec<f64> = raw_n.iter().map(|&t| wrap_from(t, base)).collect();
    sort(&mut phis);
    sort(&mut thetas);
    phis[0] = base;

    let zetas = thetas.iter().map(|&t| cis(t)).collect();
    let xis = phis.iter().map(|&p| cis(p)).collect();
    Ok(CircleSpectrumPair {
        thetas,
        phis,
        zetas,
        xis,
    })
}

/// Convenience wrapper over [`normalize_circle`] for angle-only input.
pub fn normalize_circle_angles(thetas: &[f64], phis: &[f64]) -> Result<CircleSpectrumPair> {
    let zn: Vec<_> = thetas.iter().map(|&a| CircleInput::Angle(a)).collect();
    let zm: Vec<_> = phis.iter().map(|&a| CircleInput::Angle(a)).collect();
    normalize_circle(&zn, &zm)
}

/// Bands `I_r = {j : φ_r < θ_j < φ_{r+1}}`, `r = 1..m`, with `φ_{m+1} = φ_1 + 2π`.
/// Interlacing holds iff every band is nonempty, which is the same as every
/// open arc between consecutive points of `Z_n` holding at most one point of
/// `Z_m`.
pub fn check_interlace_circle(pair: &CircleSpectrumPair) -> Result<BandDecomposition> {
    let m = pair.m();
    let upper = |r: usize| {
        if r + 1 < m {
            pair.phis[r + 1]
        } else {
            pair.phis[0] + TAU
        }
    };
    let mut bands = Vec::with_capacity(m);
    for r in 0..m {
        let (lo, hi) = (pair.phis[r], upper(r));
        let band: Vec<usize> = (0..pair.n())
            .filter(|&j| pair.thetas[j] > lo && pair.thetas[j] < hi)
            .collect();
        if band.is_empty() {
            return Err(Error::EmptyBand { band: r });
        }
        bands.push(band);
    }
    Ok(BandDecomposition {
        indices: None,
        bands,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use std::f64::consts::PI;

    fn pair(xs: &[&str], ys: &[&str]) -> RealSpectrumPair<Rational> {
        RealSpectrumPair::parse(xs, ys).unwrap()
    }

    #[test]
    fn example_four_nodes_two_zeros() {
        let p = pair(&["1", "2", "3", "4"], &["3/2", "7/2"]);
        let idx = check_interlace_real(&p).unwrap();
        assert_eq!(idx.as_slice(), &[0, 1, 3, 4]);
        let bands = bands_real(&p, &idx);
        assert_eq!(bands.one_based(), vec![vec![1], vec![2, 3], vec![4]]);
    }

    #[test]
    fn single_gap_single_zero() {
        let p = pair(&["0", "1"], &["1/2"]);
        assert_eq!(check_interlace_real(&p).unwrap().as_slice(), &[0, 1, 2]);
    }

    #[test]
    fn seven_nodes_three_zeros() {
        let p = pair(&["0", "1", "2", "3", "4", "5", "6"], &["1/2", "5/2", "9/2"]);
        let idx = check_interlace_real(&p).unwrap();
        assert_eq!(idx.as_slice(), &[0, 1, 3, 5, 7]);
        assert_eq!(
            bands_real(&p, &idx).one_based(),
            vec![vec![1], vec![2, 3], vec![4, 5], vec![6, 7]]
        );
    }

    #[test]
    fn rejections_carry_codes() {
        let out = check_interlace_real(&pair(&["1", "2", "3"], &["1/4"])).unwrap_err();
        assert_eq!(out.code(), "OUT_OF_RANGE");
        let out = check_interlace_real(&pair(&["1", "2", "3"], &["2"])).unwrap_err();
        assert_eq!(out.code(), "SHARED_POINT");
        let out = check_interlace_real(&pair(&["1", "2", "3", "4"], &["5/4", "7/4"])).unwrap_err();
        assert_eq!(
            out,
            Error::GapOverfull {
                gap: 1,
                first: 0,
                second: 1
            }
        );
        let out = RealSpectrumPair::<Rational>::parse(&["1", "1", "3"], &["2"]).unwrap_err();
        assert_eq!(out.code(), "NOT_SORTED");
        let out = RealSpectrumPair::<Rational>::parse(&["1", "2"], &["0", "3"]).unwrap_err();
        assert_eq!(out.code(), "INVALID_SIZE");
    }

    #[test]
    fn consecutive_degrees_give_singleton_bands() {
        let p = pair(&["0", "1", "2", "3"], &["1/2", "3/2", "5/2"]);
        let idx = check_interlace_real(&p).unwrap();
        let bands = bands_real(&p, &idx);
        assert!(bands.bands().iter().all(|b| b.len() == 1));
        assert!(bands.is_partition_of(4));
    }

    #[test]
    fn circle_example_three_two() {
        let zn = [
            CircleInput::Point(C64::new(0.0, 1.0)),
            CircleInput::Angle(4.0 * PI / 3.0),
            CircleInput::Angle(5.0 * PI / 3.0),
        ];
        let zm = [
            CircleInput::Point(C64::new(1.0, 0.0)),
            CircleInput::Point(C64::new(-1.0, 0.0)),
        ];
        let p = normalize_circle(&zn, &zm).unwrap();
        let want = [PI / 2.0, 4.0 * PI / 3.0, 5.0 * PI / 3.0];
        for (a, b) in p.thetas().iter().zip(want) {
            assert!((a - b).abs() < 1e-14);
        }
        assert_eq!(p.phis()[0], 0.0);
        assert!((p.phis()[1] - PI).abs() < 1e-15);
        let bands = check_interlace_circle(&p).unwrap();
        assert_eq!(bands.one_based(), vec![vec![1], vec![2, 3]]);
        assert!(bands.indices().is_none());
    }

    #[test]
    fn circle_example_seven_three() {
        let th: Vec<f64> = [
            1.0 / 6.0,
            1.0 / 3.0,
            0.5,
            2.0 / 3.0,
            5.0 / 6.0,
            7.0 / 6.0,
            1.5,
        ]
        .iter()
        .map(|t| t * PI)
        .collect();
        let ph: Vec<f64> = [1.0 / 12.0, 7.0 / 12.0, 5.0 / 4.0]
            .iter()
            .map(|t| t * PI)
            .collect();
        let p = normalize_circle_angles(&th, &ph).unwrap();
        let bands = check_interlace_circle(&p).unwrap();
        assert_eq!(
            bands.one_based(),
            vec![vec![1, 2, 3], vec![4, 5, 6], vec![7]]
        );
    }

    #[test]
    fn circle_already_ordered() {
        let p = normalize_circle_angles(&[PI / 4.0, 3.0 * PI / 4.0], &[0.0]).unwrap();
        assert_eq!(p.phis(), &[0.0]);
        assert_eq!(p.thetas(), &[PI / 4.0, 3.0 * PI / 4.0]);
        let bands = check_interlace_circle(&p).unwrap();
        assert_eq!(bands.bands(), &[vec![0, 1]]);
    }

    #[test]
    fn circle_rejections() {
        let e = normalize_circle_angles(&[0.0, 1.0], &[2.0 * PI]).unwrap_err();
        assert_eq!(e.code(), "SHARED_POINT");
        let e = normalize_circle(
            &[
                CircleInput::Point(C64::new(2.0, 0.0)),
                CircleInput::Angle(1.0),
            ],
            &[CircleInput::Angle(2.0)],
        )
        .unwrap_err();
        assert_eq!(e.code(), "NOT_UNIT_MODULUS");
        // two points of Z_m inside one arc of Z_n
        let p = normalize_circle_angles(&[0.5, 3.0, 5.0], &[1.0, 2.0]).unwrap();
        assert_eq!(check_interlace_circle(&p).unwrap_err().code(), "EMPTY_BAND");
        let e = normalize_circle_angles(&[0.5, 0.5 + TAU, 3.0], &[1.0]).unwrap_err();
        assert_eq!(e.code(), "DEGENERATE_ANGLE");
    }

    #[test]
    fn circle_normalization_wraps_negative_angles() {
        // φ = -π/2 ≡ 3π/2 is the only base candidate
        let p = normalize_circle_angles(&[0.0, PI], &[-PI / 2.0]).unwrap();
        assert!((p.phis()[0] - 1.5 * PI).abs() < 1e-15);
        assert!((p.thetas()[0] - 2.0 * PI).abs() < 1e-15);
        assert!((p.thetas()[1] - 3.0 * PI).abs() < 1e-15);
    }
}
