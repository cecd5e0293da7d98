//! Unit-circle version: Verblunsky coefficients and CMV matrices whose
//! eigenvalues are two prescribed interlacing sets of points.

use std::f64::consts::PI;

use twospectra::interlacing::normalize_circle_angles;
use twospectra::prelude::*;

fn main() -> Result<()> {
    let pair = normalize_circle_angles(&[PI / 2.0, 4.0 * PI / 3.0, 5.0 * PI / 3.0], &[0.0, PI])?;
    let sol = reconstruct_circle(&pair, &WeightSelection::SumAll, Profile::Standard)?;

    println!("bands  {:?}", sol.bands.one_based());
    println!("omega  {:?}", sol.omega());
    for (k, a) in sol.verblunsky.alpha.iter().enumerate() {
        println!("alpha_{k} = {a:.6}  |alpha| = {:.6}", a.norm());
    }
    println!("b_n = {:.6}, b_m = {:.6}", sol.b_n, sol.b_m);
    println!("C_3 =\n{:.6}", sol.c_n);
    println!(
        "unitarity {:.1e}, spectrum {:.1e}, verdict {:?}",
        sol.report.unitarity_defect.unwrap_or(0.0),
        sol.report.spectrum_residual_n,
        sol.report.verdict
    );
    Ok(())
}
