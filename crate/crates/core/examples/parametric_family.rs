//! The admissible family spans a cone of positive weights. Sweeping the free
//! coefficient walks through different Jacobi matrices with the same two spectra.

use std::collections::BTreeMap;

use twospectra::prelude::*;

fn main() -> Result<()> {
    let pair = RealSpectrumPair::<Rational>::parse(&["1", "2", "3", "4"], &["3/2", "7/2"])?;
    for s in ["1/2", "1", "2", "3"] {
        let s1 = twospectra::scalar::parse_rational(s)?;
        let selection = WeightSelection::Coefficients(BTreeMap::from([(1, s1)]));
        let sol = reconstruct_real(&pair, &selection, Profile::Strict)?;
        let beta: Vec<String> = sol.jacobi.beta.iter().map(ToString::to_string).collect();
        println!("s1 = {s:>3}  omega {:?}", sol.omega_display());
        println!("          beta  {beta:?}");
        assert!(sol.report.passed());
    }
    Ok(())
}
