//! A 60-node problem with one wide band, solved in float64 and in exact
//! rational arithmetic.

use std::time::Instant;

use twospectra::prelude::*;

fn main() -> Result<()> {
    let xs: Vec<Rational> = (0..60)
        .map(|k| Rational::from_integer((2 * k + 1).into()))
        .collect();
    let ys: Vec<Rational> = (1..=35)
        .map(|k| Rational::from_integer((2 * k).into()))
        .collect();
    let exact = RealSpectrumPair::new(xs, ys)?;
    let float = exact.map(|x| x.to_f64());

    let t = Instant::now();
    let sol = reconstruct_real(&float, &WeightSelection::SumAll, Profile::Custom(1e-6))?;
    let sizes: Vec<usize> = sol.bands.bands().iter().map(Vec::len).collect();
    println!(
        "bands: {} of size 1, widest {}",
        sizes.iter().filter(|&&s| s == 1).count(),
        sizes.iter().max().unwrap()
    );
    println!("admissible family: {}", sol.weights.family_size);
    println!(
        "float64 in {:.2?}: kernel {:.1e}, P_n {:.1e}, P_m {:.1e}, gamma > 0: {:?}",
        t.elapsed(),
        sol.report.kernel_residual,
        sol.report.poly_match_n,
        sol.report.poly_match_m,
        sol.report.gamma_positive
    );

    let t = Instant::now();
    let sol = reconstruct_real(&exact, &WeightSelection::SumAll, Profile::Strict)?;
    println!(
        "exact in {:.2?}: verdict {:?}",
        t.elapsed(),
        sol.report.verdict
    );
    Ok(())
}
