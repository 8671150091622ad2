//! Count how often 16T/m' falls near an integer for m' in [3M, 9M], level
//! by dyadic level, against the divisor-sum bound that dominates it. Also
//! evaluates the exact sawtooth block sum at the same shape.

use expsum::lattice::{divisor_short_interval_count, r_sum};

fn main() {
    let (t, m) = (10_000u64, 100u64);
    let deltas = [1.0 / 64.0, 1.0 / 16.0, 1.0 / 4.0, 1.0, 0.5];
    let levels = divisor_short_interval_count(t, m, &deltas).unwrap();
    println!("T = {t}, M = {m}, m' in [{}, {}]", 3 * m, 9 * m);
    println!("{:>10} {:>8} {:>14} {:>10}", "delta", "count", "divisor side", "dominated");
    for l in &levels {
        println!(
            "{:>10} {:>8} {:>14} {:>10}",
            l.delta,
            l.count,
            l.divisor_side,
            l.count <= l.divisor_side
        );
        assert!(l.count <= l.divisor_side);
    }

    let r = r_sum(100, 40_000, 1, 0).unwrap();
    println!("\nsawtooth block sum at M = 100, T = 40000, a = 1: {r:+.6}");
    println!("trivial bound (M + 1)/2 = {:.1}", 101.0 / 2.0);
    assert!(r.abs() <= 101.0 / 2.0);
}
