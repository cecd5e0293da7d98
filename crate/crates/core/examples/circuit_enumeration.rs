//! Lists the admissible supports (one node per band) and their sign-normalized
//! kernel vectors, then shows that a support breaking the band rule gives a
//! vector with mixed signs.

use twospectra::prelude::*;

fn main() -> Result<()> {
    let pair = RealSpectrumPair::<Rational>::parse(
        &["1", "2", "3", "4", "5", "6", "7"],
        &["5/2", "11/2"],
    )?;
    let indices = check_interlace_real(&pair)?;
    let bands = bands_real(&pair, &indices);
    println!("bands {:?}", bands.one_based());

    for support in admissible_family(&bands) {
        let c = circuit_real(&pair, &support)?;
        let shown: Vec<String> = c.weights.iter().map(ToString::to_string).collect();
        let one_based: Vec<usize> = support.iter().map(|j| j + 1).collect();
        println!("J = {one_based:?}  omega = {shown:?}");
        assert!(c.is_nonnegative());
    }

    // Two nodes from the first band.
    let c = circuit_real(&pair, &[0, 1, 4])?;
    println!("J = [1, 2, 5] mixed signs: {}", c.has_mixed_signs());
    Ok(())
}
