//! Exact reconstruction of a 4x4 Jacobi matrix from its spectrum and the
//! spectrum of its leading 2x2 block.

use twospectra::prelude::*;

fn main() -> Result<()> {
    let pair = RealSpectrumPair::<Rational>::parse(&["1", "2", "3", "4"], &["3/2", "7/2"])?;
    let sol = reconstruct_real(&pair, &WeightSelection::SumAll, Profile::Strict)?;

    println!("indices  {:?}", sol.indices.as_slice());
    println!("bands    {:?}", sol.bands.one_based());
    println!("omega    {:?}", sol.omega_display());
    for k in 0..pair.n() {
        println!("beta_{k}   {}", sol.jacobi.beta[k]);
    }
    for (k, g) in sol.jacobi.gamma.iter().enumerate() {
        println!("gamma_{}  {g}", k + 1);
    }
    println!("J_4 =\n{}", sol.j_n);
    println!("verdict  {:?}", sol.report.verdict);

    // Same problem in floating point.
    let float = pair.map(|x| x.to_f64());
    let sol = reconstruct_real(&float, &WeightSelection::SumAll, Profile::Strict)?;
    println!(
        "float64  kernel {:.1e}, spectrum {:.1e}",
        sol.report.kernel_residual, sol.report.spectrum_residual_n
    );
    Ok(())
}
