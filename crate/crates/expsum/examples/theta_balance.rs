//! Derive the headline exponent from the two-bound crossing, then show it
//! is exactly the recorded constant and sits on the recorded balance line.

use expsum::bounds::replay::{derive_theta, derive_theta_with_offset};
use expsum::rational::{fmt_rat, rat};
use expsum::tables::{BALANCE_X, THETA};

fn main() {
    let sol = derive_theta().unwrap();
    println!("crossing exponent  theta = {} = {:.10}", fmt_rat(&sol.theta), 517.0 / 1648.0);
    println!("balance aspect     m - h = {}", fmt_rat(&sol.balance));
    assert_eq!(sol.theta, *THETA);
    assert_eq!(sol.balance, *BALANCE_X);

    // Perturbing one line moves the crossing off the anchors, which is what
    // the verify-all fault hook exploits.
    let off = derive_theta_with_offset(&rat(1, 1000)).unwrap();
    println!(
        "with a 1/1000 offset the crossing drifts to ({}, {})",
        fmt_rat(&off.theta),
        fmt_rat(&off.balance)
    );
    assert_ne!(off.theta, *THETA);
}
