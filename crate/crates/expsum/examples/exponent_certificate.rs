//! Certify on a rational grid that every admissible (h, m) point admits
//! some catalog bound with exponent at most 517/1648, and that the maximum
//! is attained exactly on the balance line.

use expsum::bounds::replay::replay_section7;
use expsum::rational::fmt_rat;

fn main() {
    for grid in [8, 16, 64] {
        let cert = replay_section7(grid).unwrap();
        println!(
            "grid {:>3}: {:>6} points, max-min exponent = {}, on balance line = {}, all pass = {}",
            grid,
            cert.points_checked,
            fmt_rat(&cert.max_min_exponent),
            cert.balance_line_attained,
            cert.all_points_pass
        );
        assert!(cert.all_points_pass);
        assert!(cert.failures.is_empty());
    }

    let cert = replay_section7(64).unwrap();
    println!("\nwitnesses attaining the maximum (h, m):");
    for (h, m) in &cert.witnesses {
        println!("  ({}, {})  with m - h = {}", fmt_rat(h), fmt_rat(m), fmt_rat(&(m - h)));
    }
}
