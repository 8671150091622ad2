//! Calibration script for the residual caps. Sweeps both counting
//! problems over integer X, prints the running suprema, and shows they
//! stabilize (the divisor residual climbs toward 1/6, the circle residual
//! toward 5/4). The shipped caps 0.17 and 1.26 sit just above the limits;
//! rerun this after touching anything in the lattice module.

use expsum::lattice::{residual_sweep, RESIDUAL_CAP_CIRCLE, RESIDUAL_CAP_DIVISOR};

fn main() {
    println!("{:>8} {:>12} {:>10} {:>12} {:>10}", "xmax", "div sup", "argmax", "circ sup", "argmax");
    let mut prev: Option<(f64, f64)> = None;
    for xmax in [5_000u64, 20_000, 50_000, 100_000, 200_000] {
        let s = residual_sweep(xmax).unwrap();
        println!(
            "{:>8} {:>12.8} {:>10} {:>12.8} {:>10}",
            s.xmax, s.divisor_sup, s.divisor_argmax, s.circle_sup, s.circle_argmax
        );
        assert!(s.divisor_sup <= RESIDUAL_CAP_DIVISOR);
        assert!(s.circle_sup <= RESIDUAL_CAP_CIRCLE);
        if let Some((d, c)) = prev {
            assert!(s.divisor_sup <= 1.1 * d, "divisor residual grew by more than 10%");
            assert!(s.circle_sup <= 1.1 * c, "circle residual grew by more than 10%");
        }
        prev = Some((s.divisor_sup, s.circle_sup));
    }
    println!("\nlimits: 1/6 = {:.8}, 5/4 = {:.8}", 1.0 / 6.0, 1.25);
    println!("caps:   {RESIDUAL_CAP_DIVISOR} and {RESIDUAL_CAP_CIRCLE} (shipped constants)");
}
