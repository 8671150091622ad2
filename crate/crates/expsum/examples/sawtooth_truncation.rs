//! The truncated sawtooth series and its certified pointwise cap, plus the
//! Fourier route to a sawtooth block sum.

use expsum::sums::{eval_sum, psi, psi_truncated, SumJob, PSI_TRUNCATION_C};

fn main() {
    println!("psi(y) = y - floor(y) - 1/2, approximated by K rotating terms\n");
    for k in [10.0, 100.0, 1000.0] {
        let mut worst: f64 = 0.0;
        let mut y = 0.0005;
        while y < 1.0 {
            let t = psi_truncated(y, k).unwrap();
            worst = worst.max((t.approx - psi(y)).abs() / t.bound);
            y += 0.001;
        }
        println!("K = {k:>5}: worst |error|/bound on a 1000-point grid = {worst:.4}");
        assert!(worst <= 1.0);
    }
    println!("\ncap constant C = {PSI_TRUNCATION_C} in bound C/(1 + K ||y||)");

    // Summing the truncated series over a block reproduces the exact
    // sawtooth block sum within the accumulated per-term caps.
    let exact = expsum::lattice::r_sum(5, 1000, 1, 0).unwrap();
    let k = 4000u64;
    let fourier = eval_sum(&SumJob::PsiFourier { k, m: 5, m2: 10, t: 1000, a: 1, b: 0 }).unwrap();
    let approx = -fourier.value.im;
    let cap: f64 = (5..=10u64)
        .map(|m| psi_truncated(4000.0 / (4.0 * m as f64 + 1.0), k as f64).unwrap().bound)
        .sum();
    println!(
        "\nblock sum at M = 5, T = 1000: exact {exact:+.9}, Fourier side {approx:+.9}, cap {cap:.3e}"
    );
    // The m = 6 argument is 4000/25 = 160, an exact integer: the series
    // lands on the jump midpoint, half a unit from the sawtooth value, and
    // the cap absorbs exactly that.
    assert!((exact - approx).abs() <= cap);
}
