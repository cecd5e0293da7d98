//! Interlacing diagnostics: accepted inputs report their indices, rejected ones
//! say which condition failed.

use twospectra::prelude::*;

fn report(xs: &[&str], ys: &[&str]) -> Result<()> {
    let pair = RealSpectrumPair::<Rational>::parse(xs, ys)?;
    match check_interlace_real(&pair) {
        Ok(ix) => {
            let bands = bands_real(&pair, &ix);
            println!(
                "{xs:?} / {ys:?}: indices {:?}, bands {:?}",
                ix.as_slice(),
                bands.one_based()
            );
        }
        Err(e) => println!("{xs:?} / {ys:?}: rejected ({e})"),
    }
    Ok(())
}

fn main() -> Result<()> {
    report(&["1", "2", "3", "4"], &["3/2", "7/2"])?;
    report(&["1", "2", "3"], &["1/4"])?;
    report(&["1", "2", "3", "4"], &["5/4", "7/4"])?;
    report(&["1", "2", "3", "4"], &["2", "7/2"])?;
    Ok(())
}
