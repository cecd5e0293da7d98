//! Acceptance driver: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Runs without the libtest harness so the lines always show.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use twospectra::cli::{cmd_check, Exit, Overrides, ProblemFile};
use twospectra::fuzz::{
    interlacing_circle, interlacing_real, rng_for, run_fuzz, violating_case, Arithmetic, Case,
    FuzzConfig, Setting, Violation,
};
use twospectra::kernel::WeightChoice;
use twospectra::prelude::*;
use twospectra::verify::{brute_charpoly, brute_det, brute_nullspace};

const CIRCLE_GOLDEN_TOL: f64 = 1e-10;
const CIRCLE_GOLDEN_DET_TOL: f64 = 1e-9;
const LARGE_FLOAT_TOL: f64 = 1e-6;
const REAL_PROPERTY_TOL: f64 = 1e-9;
const UNITARITY_TOL: f64 = 1e-10;
const CIRCLE_SPECTRUM_TOL: f64 = 1e-8;
const SPAN_TOL: f64 = 1e-9;

const SMALL_EXACT_LIMIT: Duration = Duration::from_millis(100);
const CIRCLE_GOLDEN_LIMIT: Duration = Duration::from_millis(100);
const LARGE_FLOAT_LIMIT: Duration = Duration::from_secs(10);
const LARGE_EXACT_LIMIT: Duration = Duration::from_secs(120);

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn qs(v: &[(i64, i64)]) -> Vec<Rational> {
    v.iter().map(|&(n, d)| q(n, d)).collect()
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&n| q(n, 1)).collect()
}

fn poly_is(p: &Polynomial<Rational>, coeffs: &[Rational], name: &str) -> Result<(), String> {
    ensure(p.coeffs() == coeffs, || {
        format!(
            "{name} = {:?}, expected {:?}",
            show(p.coeffs()),
            show(coeffs)
        )
    })
}

fn show(v: &[Rational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("{what} took {elapsed:?}, limit {limit:?}")
    })
}

fn four_nodes() -> RealSpectrumPair<Rational> {
    RealSpectrumPair::new(ints(&[1, 2, 3, 4]), qs(&[(3, 2), (7, 2)])).unwrap()
}

fn exact_four_node_golden() -> Outcome {
    let start = Instant::now();
    let sol = reconstruct_real(&four_nodes(), &WeightSelection::SumAll, Profile::Strict)
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(
        sol.bands.one_based() == vec![vec![1], vec![2, 3], vec![4]],
        || format!("bands {:?}", sol.bands.one_based()),
    )?;
    let family: Vec<Vec<usize>> = sol
        .weights
        .terms
        .iter()
        .map(|(c, _)| c.support.iter().map(|j| j + 1).collect())
        .collect();
    ensure(family == vec![vec![1, 2, 4], vec![1, 3, 4]], || {
        format!("admissible family {family:?}")
    })?;
    ensure(sol.omega() == qs(&[(2, 5), (2, 3), (2, 3), (2, 5)]), || {
        format!("omega {:?}", sol.omega_display())
    })?;
    let p = &sol.jacobi.polys;
    poly_is(&p[1], &qs(&[(-5, 2), (1, 1)]), "P1")?;
    poly_is(&p[2], &qs(&[(21, 4), (-5, 1), (1, 1)]), "P2")?;
    poly_is(&p[3], &qs(&[(-345, 32), (269, 16), (-15, 2), (1, 1)]), "P3")?;
    poly_is(&p[4], &ints(&[24, -50, 35, -10, 1]), "P4")?;
    ensure(sol.report.passed(), || {
        format!("verification {:?}", sol.report.failures)
    })?;
    within(elapsed, SMALL_EXACT_LIMIT, "reconstruction")?;
    Ok(format!("{elapsed:.2?}"))
}

fn with_s1(s: Rational) -> Result<RealSolution<Rational>, String> {
    let sel = WeightSelection::Coefficients([(1, s)].into_iter().collect());
    reconstruct_real(&four_nodes(), &sel, Profile::Strict).map_err(|e| e.to_string())
}

fn parametric_golden() -> Outcome {
    let sol = with_s1(q(3, 1))?;
    ensure(
        sol.omega() == qs(&[(2, 3), (2, 3), (2, 1), (14, 15)]),
        || format!("omega {:?}", sol.omega_display()),
    )?;
    let p = &sol.jacobi.polys;
    poly_is(&p[1], &qs(&[(-11, 4), (1, 1)]), "P1")?;
    poly_is(&p[3], &qs(&[(-187, 16), (18, 1), (-31, 4), (1, 1)]), "P3")?;
    for s in 1..=3i64 {
        let sol = with_s1(q(s, 1))?;
        let sr = q(s, 1);
        let one = q(1, 1);
        let sp1 = &sr + &one;
        let quad = q(3 * s * s + 10 * s + 3, 1);
        let b02 = q(3 * s + 2, 1) / &sp1;
        let b13 = q(2 * s + 3, 1) / &sp1;
        let beta = vec![b02.clone(), b13.clone(), b02, b13];
        let gamma = vec![
            quad.clone() / (q(4, 1) * &sp1 * &sp1),
            q(15, 1) * &sp1 * &sp1 / (q(4, 1) * &quad),
            q(4 * s * (2 * s * s + 5 * s + 2), 1)
                / (&sp1 * q(3 * s * s * s + 13 * s * s + 13 * s + 3, 1)),
        ];
        ensure(sol.jacobi.beta == beta, || {
            format!(
                "s1={s}: beta {:?}, closed form {:?}",
                show(&sol.jacobi.beta),
                show(&beta)
            )
        })?;
        ensure(sol.jacobi.gamma == gamma, || {
            format!(
                "s1={s}: gamma {:?}, closed form {:?}",
                show(&sol.jacobi.gamma),
                show(&gamma)
            )
        })?;
    }
    Ok("s1 in {1,2,3}".into())
}

fn seven_node_bands() -> Outcome {
    let pair =
        RealSpectrumPair::new(ints(&[0, 1, 2, 3, 4, 5, 6]), qs(&[(1, 2), (5, 2), (9, 2)])).unwrap();
    let idx = check_interlace_real(&pair).map_err(|e| e.to_string())?;
    ensure(idx.as_slice() == [0, 1, 3, 5, 7], || {
        format!("indices {:?}", idx.as_slice())
    })?;
    let bands = bands_real(&pair, &idx);
    let expected = vec![vec![1], vec![2, 3], vec![4, 5], vec![6, 7]];
    ensure(bands.one_based() == expected, || {
        format!("bands {:?}", bands.one_based())
    })?;
    let sol = reconstruct_real(&pair, &WeightSelection::SumAll, Profile::Strict)
        .map_err(|e| e.to_string())?;
    let p3 = &sol.jacobi.polys[3];
    let product = Polynomial::from_roots(pair.ys().iter());
    poly_is(p3, product.coeffs(), "P3")?;
    let want = [-1, 1, -1, 1];
    for (r, band) in bands.bands().iter().enumerate() {
        for &j in band {
            let sign = p3.eval(&pair.xs()[j]).signum_i();
            ensure(sign == want[r], || {
                format!("P3(x{}) has sign {sign} in band {r}", j + 1)
            })?;
        }
    }
    Ok("signs (-,+,-,+)".into())
}

fn cis_pi(t: f64) -> C64 {
    C64::from_polar(1.0, t * std::f64::consts::PI)
}

fn close(a: C64, b: C64) -> bool {
    (a - b).norm() <= CIRCLE_GOLDEN_TOL
}

fn circle_golden() -> Outcome {
    let start = Instant::now();
    let zn: Vec<CircleInput> = [0.5, 4.0 / 3.0, 5.0 / 3.0]
        .iter()
        .map(|&t| CircleInput::Point(cis_pi(t)))
        .collect();
    let zm = [
        CircleInput::Angle(0.0),
        CircleInput::Angle(std::f64::consts::PI),
    ];
    let pair = normalize_circle(&zn, &zm).map_err(|e| e.to_string())?;
    let sol = reconstruct_circle(&pair, &WeightSelection::SumAll, Profile::Standard)
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();

    let (s2, s3, s6) = (2f64.sqrt(), 3f64.sqrt(), 6f64.sqrt());
    let a = 2.0 * (s6 - s2);
    let c = 4.0 / 3.0 * (3.0 * s2 - s6);
    let expected = [[a, c, 0.0], [a, 0.0, c]];
    ensure(sol.weights.terms.len() == 2, || {
        format!("{} circuits", sol.weights.terms.len())
    })?;
    for ((circuit, _), want) in sol.weights.terms.iter().zip(expected) {
        let ok = circuit
            .weights
            .iter()
            .zip(want)
            .all(|(g, w)| (g - w).abs() <= CIRCLE_GOLDEN_TOL);
        ensure(ok, || {
            format!("circuit {:?}, expected {want:?}", circuit.weights)
        })?;
    }
    let mu = &sol.moments;
    let r = |v: f64| C64::new(v, 0.0);
    ensure(close(mu.get(0), r(4.0 * s2 + 4.0 * s6 / 3.0)), || {
        format!("mu0 {}", mu.get(0))
    })?;
    ensure(close(mu.get(1), r(0.0)), || format!("mu1 {}", mu.get(1)))?;
    ensure(close(mu.get(2), r(-8.0 * s6 / 3.0)), || {
        format!("mu2 {}", mu.get(2))
    })?;
    let v = &sol.verblunsky;
    ensure(close(v.alpha[0], r(0.0)), || {
        format!("alpha0 {}", v.alpha[0])
    })?;
    ensure(close(v.alpha[1], r(1.0 - s3)), || {
        format!("alpha1 {}", v.alpha[1])
    })?;
    let rho1 = (2.0 * s3 - 3.0).sqrt();
    ensure((v.rho[1] - rho1).abs() <= CIRCLE_GOLDEN_TOL, || {
        format!("rho1 {}", v.rho[1])
    })?;
    ensure(close(sol.b_n, C64::new(0.0, 1.0)), || {
        format!("b3 {}", sol.b_n)
    })?;
    ensure(close(sol.b_m, r(1.0)), || format!("b2 {}", sol.b_m))?;

    let matrix_is = |got: &Matrix<C64>, want: Vec<Vec<C64>>, name: &str| {
        let want = Matrix::from_rows(want);
        let ok = got.rows() == want.rows()
            && (0..got.rows()).all(|i| (0..got.cols()).all(|j| close(got[(i, j)], want[(i, j)])));
        ensure(ok, || format!("{name} = {:?}", got.to_rows()))
    };
    let (o, l) = (r(0.0), r(1.0));
    matrix_is(&sol.c_m, vec![vec![o, l], vec![l, o]], "C2")?;
    // L = Θ_0 ⊕ [conj b], M = [1] ⊕ Θ_1 with α_0 = 0, α_1 = 1 - √3 real, b = i
    let a1 = 1.0 - s3;
    let i = C64::new(0.0, 1.0);
    let c3 = vec![
        vec![o, r(a1), r(rho1)],
        vec![l, o, o],
        vec![o, -i * rho1, i * a1],
    ];
    matrix_is(&sol.c_n, c3, "C3")?;
    let worst = pair
        .zetas()
        .iter()
        .map(|&z| brute_det(&sol.c_n, z).norm())
        .fold(0.0, f64::max);
    ensure(worst <= CIRCLE_GOLDEN_DET_TOL, || {
        format!("|det(zI - C3)| = {worst:e}")
    })?;
    within(elapsed, CIRCLE_GOLDEN_LIMIT, "reconstruction")?;
    Ok(format!("det residual {worst:.1e}, {elapsed:.2?}"))
}

fn large_pair() -> RealSpectrumPair<Rational> {
    let xs: Vec<i64> = (0..60).map(|k| 2 * k + 1).collect();
    let ys: Vec<i64> = (1..=35).map(|k| 2 * k).collect();
    RealSpectrumPair::new(ints(&xs), ints(&ys)).unwrap()
}

fn large_shape<T: Real>(w: &WeightChoice<T>, bands: &BandDecomposition) -> Result<(), String> {
    ensure(w.family_size == 25, || {
        format!("family size {}", w.family_size)
    })?;
    let sizes: Vec<usize> = bands.bands().iter().map(Vec::len).collect();
    let mut want = vec![1; 35];
    want.push(25);
    ensure(sizes == want, || format!("band sizes {sizes:?}"))
}

fn large_instance() -> Outcome {
    let exact = large_pair();
    let float = exact.map(|x| x.to_f64());

    let start = Instant::now();
    let sol = reconstruct_real(
        &float,
        &WeightSelection::SumAll,
        Profile::Custom(LARGE_FLOAT_TOL),
    )
    .map_err(|e| e.to_string())?;
    let float_time = start.elapsed();
    large_shape(&sol.weights, &sol.bands)?;
    let rep = &sol.report;
    let worst = [
        rep.kernel_residual,
        rep.poly_match_n,
        rep.poly_match_m,
        rep.spectrum_residual_n,
        rep.spectrum_residual_m,
    ]
    .into_iter()
    .fold(0.0, f64::max);
    ensure(rep.passed() && worst <= LARGE_FLOAT_TOL, || {
        format!("float residual {worst:e}, failures {:?}", rep.failures)
    })?;
    within(float_time, LARGE_FLOAT_LIMIT, "float reconstruction")?;

    let start = Instant::now();
    let sol = reconstruct_real(&exact, &WeightSelection::SumAll, Profile::Strict)
        .map_err(|e| e.to_string())?;
    let exact_time = start.elapsed();
    large_shape(&sol.weights, &sol.bands)?;
    let rep = &sol.report;
    let zero = rep.exact
        && rep.kernel_residual == 0.0
        && rep.poly_match_n == 0.0
        && rep.poly_match_m == 0.0
        && rep.spectrum_residual_n == 0.0
        && rep.spectrum_residual_m == 0.0;
    ensure(zero && rep.passed(), || format!("exact report {rep:?}"))?;
    ensure(sol.jacobi.gamma_positive(), || "gamma not positive".into())?;
    within(exact_time, LARGE_EXACT_LIMIT, "exact reconstruction")?;
    Ok(format!(
        "float worst {worst:.1e} in {float_time:.2?}, exact zero residuals in {exact_time:.2?}"
    ))
}

fn real_property_suite() -> Outcome {
    let cfg = FuzzConfig {
        setting: Setting::Real,
        max_n: 12,
        count: 200,
        seed: 0x5eed,
        profile: Profile::Custom(REAL_PROPERTY_TOL),
        arithmetic: Arithmetic::Float64,
        ..FuzzConfig::default()
    };
    let summary = run_fuzz(&cfg);
    ensure(summary.all_passed(), || {
        format!(
            "{} of {} failed: {:?}",
            summary.count - summary.passed,
            summary.count,
            summary.failures
        )
    })?;
    let mut rng = rng_for(0xc0de);
    for _ in 0..100 {
        let n = rng.gen_range(2..=12);
        let case = interlacing_real(&mut rng, n, n - 1);
        let pair = case.pair::<f64>().map_err(|e| e.to_string())?;
        let sol = reconstruct_real(
            &pair,
            &WeightSelection::SumAll,
            Profile::Custom(REAL_PROPERTY_TOL),
        )
        .map_err(|e| e.to_string())?;
        ensure(sol.weights.family_size == 1, || {
            format!(
                "m = n - 1 = {} gave family size {}",
                n - 1,
                sol.weights.family_size
            )
        })?;
        ensure(sol.report.passed(), || {
            format!("consecutive case failed: {:?}", sol.report.failures)
        })?;
    }
    Ok(format!(
        "200/200, worst kernel {:.1e}, spectrum {:.1e}; 100 consecutive-degree cases",
        summary.max_kernel_residual, summary.max_spectrum_residual
    ))
}

fn circle_property_suite() -> Outcome {
    let cfg = FuzzConfig {
        setting: Setting::Circle,
        max_n: 10,
        count: 100,
        seed: 0xc1c1e,
        profile: Profile::Standard,
        arithmetic: Arithmetic::Float64,
        ..FuzzConfig::default()
    };
    let summary = run_fuzz(&cfg);
    let (mut unit, mut spec) = (0.0f64, 0.0f64);
    for o in &summary.outcomes {
        let rep = o
            .report
            .as_ref()
            .ok_or_else(|| format!("instance {}: {:?}", o.index, o.error))?;
        let u = rep.unitarity_defect.unwrap_or(f64::INFINITY);
        let s = rep.spectrum_residual_n.max(rep.spectrum_residual_m);
        unit = unit.max(u);
        spec = spec.max(s);
        ensure(u <= UNITARITY_TOL, || {
            format!("instance {}: unitarity defect {u:e}", o.index)
        })?;
        ensure(s <= CIRCLE_SPECTRUM_TOL, || {
            format!("instance {}: spectrum residual {s:e}", o.index)
        })?;
        ensure(rep.alpha_in_disk == Some(true), || {
            format!("instance {}: alpha outside the disk", o.index)
        })?;
    }
    Ok(format!(
        "100 instances, worst unitarity {unit:.1e}, spectrum {spec:.1e}"
    ))
}

fn to_c64_rows<T: Real>(vs: &[Vec<T>]) -> Vec<Vec<C64>> {
    vs.iter()
        .map(|v| v.iter().map(|x| C64::new(x.to_f64(), 0.0)).collect())
        .collect()
}

fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Orthonormal basis of the span, two Gram–Schmidt passes per vector.
fn orthonormal(vs: &[Vec<C64>]) -> Vec<Vec<C64>> {
    let mut basis: Vec<Vec<C64>> = Vec::new();
    for v in vs {
        let mut w: Vec<C64> = v.iter().map(|z| z / norm(v)).collect();
        for _ in 0..2 {
            for b in &basis {
                let d: C64 = b.iter().zip(&w).map(|(x, y)| x.conj() * y).sum();
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= d * bi;
                }
            }
        }
        let r = norm(&w);
        if r > SPAN_TOL {
            basis.push(w.iter().map(|z| z / r).collect());
        }
    }
    basis
}

fn distance_to_span(v: &[C64], basis: &[Vec<C64>]) -> f64 {
    let mut w: Vec<C64> = v.iter().map(|z| z / norm(v)).collect();
    for b in basis {
        let d: C64 = b.iter().zip(&w).map(|(x, y)| x.conj() * y).sum();
        for (wi, bi) in w.iter_mut().zip(b) {
            *wi -= d * bi;
        }
    }
    norm(&w)
}

fn spans_agree(circuits: &[Vec<C64>], kernel: &[Vec<C64>], dim: usize) -> Result<f64, String> {
    let cb = orthonormal(circuits);
    let kb = orthonormal(kernel);
    ensure(cb.len() == dim && kb.len() == dim, || {
        format!(
            "circuit span has dimension {}, nullspace {}, expected {dim}",
            cb.len(),
            kb.len()
        )
    })?;
    let worst = kernel
        .iter()
        .map(|v| distance_to_span(v, &cb))
        .chain(circuits.iter().map(|v| distance_to_span(v, &kb)))
        .fold(0.0, f64::max);
    ensure(worst <= SPAN_TOL, || {
        format!("containment defect {worst:e}")
    })?;
    Ok(worst)
}

/// A support with two indices from one band and no index from another.
fn non_admissible(
    rng: &mut impl Rng,
    bands: &BandDecomposition,
    size: usize,
) -> Option<Vec<usize>> {
    let wide: Vec<usize> = (0..bands.len())
        .filter(|&r| bands.bands()[r].len() >= 2)
        .collect();
    let &doubled = wide.choose(rng)?;
    let others: Vec<usize> = (0..bands.len()).filter(|&r| r != doubled).collect();
    let skipped = others.choose(rng).copied();
    let mut support: Vec<usize> = bands.bands()[doubled]
        .choose_multiple(rng, 2)
        .copied()
        .collect();
    for r in others {
        if Some(r) != skipped {
            support.push(*bands.bands()[r].choose(rng).unwrap());
        }
    }
    support.sort_unstable();
    (support.len() == size).then_some(support)
}

fn oracle_equivalence() -> Outcome {
    let mut rng = rng_for(0x0ac1e);
    let (mut worst, mut sampled, mut mixed, mut charpolys) = (0.0f64, 0usize, 0usize, 0usize);
    for _ in 0..50 {
        let n = rng.gen_range(2..=9);
        let m = rng.gen_range(1..n);

        let case = interlacing_real(&mut rng, n, m);
        let pair = case.pair::<Rational>().map_err(|e| e.to_string())?;
        let a = assemble_real(&pair).map_err(|e| e.to_string())?;
        let idx = check_interlace_real(&pair).map_err(|e| e.to_string())?;
        let bands = bands_real(&pair, &idx);
        let mut circuits = Vec::new();
        for support in admissible_family(&bands) {
            let c = circuit_real(&pair, &support).map_err(|e| e.to_string())?;
            ensure(
                a.mul_vec(&c.weights).iter().all(|v| v.signum_i() == 0),
                || format!("circuit {support:?} is not in the kernel"),
            )?;
            circuits.push(c.weights);
        }
        let kernel = brute_nullspace(&a);
        worst = worst.max(spans_agree(
            &to_c64_rows(&circuits),
            &to_c64_rows(&kernel),
            n - m,
        )?);

        let sol = reconstruct_real(&pair, &WeightSelection::SumAll, Profile::Strict)
            .map_err(|e| e.to_string())?;
        let j = sol.jacobi.matrix();
        let mut points: Vec<Rational> = pair.xs().iter().chain(pair.ys()).cloned().collect();
        points.push(q(rng.gen_range(-200..200), 7));
        for k in 1..=n.min(5) {
            let brute = brute_charpoly(&j, k).map_err(|e| e.to_string())?;
            for x in &points {
                ensure(eval_charpoly(&sol.jacobi, k, x) == brute.eval(x), || {
                    format!("P_{k}({x}) disagrees with the permutation expansion")
                })?;
            }
            charpolys += 1;
        }
        for _ in 0..3 {
            if let Some(support) = non_admissible(&mut rng, &bands, m + 1) {
                let c = circuit_real(&pair, &support).map_err(|e| e.to_string())?;
                sampled += 1;
                mixed += usize::from(c.has_mixed_signs());
            }
        }

        let case = interlacing_circle(&mut rng, n, m);
        let pair = case.pair().map_err(|e| e.to_string())?;
        let a = assemble_circle(&pair).map_err(|e| e.to_string())?;
        let bands = check_interlace_circle(&pair).map_err(|e| e.to_string())?;
        let circuits: Vec<Vec<f64>> = admissible_family(&bands)
            .map(|s| circuit_circle(&pair, &s).map(|c| c.weights))
            .collect::<Result<_>>()
            .map_err(|e| e.to_string())?;
        let kernel = brute_nullspace(&a);
        worst = worst.max(spans_agree(&to_c64_rows(&circuits), &kernel, n - m + 1)?);
        for _ in 0..3 {
            if let Some(support) = non_admissible(&mut rng, &bands, m) {
                let c = circuit_circle(&pair, &support).map_err(|e| e.to_string())?;
                sampled += 1;
                mixed += usize::from(c.has_mixed_signs());
            }
        }
    }
    ensure(sampled > 0, || {
        "no non-admissible support was sampled".into()
    })?;
    ensure(mixed == sampled, || {
        format!("only {mixed} of {sampled} non-admissible circuits had mixed signs")
    })?;
    Ok(format!(
        "50 real + 50 circle spans (defect {worst:.1e}), {charpolys} charpolys, {mixed}/{sampled} mixed"
    ))
}

fn necessity() -> Outcome {
    let mut rng = rng_for(0x9ec);
    let mut counts = [0usize; 3];
    for i in 0..50 {
        let kind = Violation::ALL[i % Violation::ALL.len()];
        let problem = match violating_case(&mut rng, kind, 9) {
            Case::Real(c) => ProblemFile::from_real_case(&c),
            Case::Circle(c) => ProblemFile::from_circle_case(&c),
        };
        let out = cmd_check(&problem, &Overrides::default());
        let code = out.document["error"]["code"].as_str().unwrap_or("");
        ensure(out.exit == Exit::Rejected && code == kind.code(), || {
            format!(
                "instance {i}: expected {} rejection, got exit {:?} code {code:?}",
                kind.code(),
                out.exit
            )
        })?;
        counts[i % 3] += 1;
    }
    Ok(format!(
        "rejected {} gap-overfull, {} out-of-range, {} empty-band",
        counts[0], counts[1], counts[2]
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("exact four-node golden", exact_four_node_golden),
        ("parametric golden", parametric_golden),
        ("seven-node bands and signs", seven_node_bands),
        ("three-node circle golden", circle_golden),
        ("sixty-node instance", large_instance),
        ("real property suite", real_property_suite),
        ("circle property suite", circle_property_suite),
        ("oracle equivalence", oracle_equivalence),
        ("necessity of interlacing", necessity),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(format!(
                "panicked: {:?}",
                p.downcast_ref::<String>()
                    .map(String::as_str)
                    .or(p.downcast_ref::<&str>().copied())
            ))
        });
        let t = start.elapsed();
        match result {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}; {t:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
