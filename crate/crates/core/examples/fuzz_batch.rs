//! Seeded batches of random interlacing instances in both settings.

use twospectra::fuzz::{run_fuzz, FuzzConfig, Setting};

fn main() {
    for setting in [Setting::Real, Setting::Circle] {
        let cfg = FuzzConfig {
            setting,
            count: 200,
            seed: 7,
            ..FuzzConfig::default()
        };
        let s = run_fuzz(&cfg);
        println!(
            "{setting:?}: {}/{} passed, worst kernel {:.1e}, spectrum {:.1e}, polynomial {:.1e}",
            s.passed, s.count, s.max_kernel_residual, s.max_spectrum_residual, s.max_poly_match
        );
        for f in &s.failures {
            println!("  failure: {f:?}");
        }
    }
}
