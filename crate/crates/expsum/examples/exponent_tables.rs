//! The exact constant tables for each working order, and the window the
//! spacing exponent q moves through.

use expsum::rational::fmt_rat;
use expsum::tables::{exponent_table, q_of_nu};

fn main() {
    for nu in 3..=8 {
        let t = exponent_table(nu).unwrap();
        println!("nu = {nu}");
        println!("  q         = {}", fmt_rat(&t.q));
        println!("  rho       = {}", fmt_rat(&t.rho));
        println!("  alpha     = ({}, {})", fmt_rat(&t.alpha.0), fmt_rat(&t.alpha.1));
        println!(
            "  beta      = ({}, {}, {})",
            fmt_rat(&t.beta.0),
            fmt_rat(&t.beta.1),
            fmt_rat(&t.beta.2)
        );
        println!("  beta*     = ({}, {})", fmt_rat(&t.beta_star.0), fmt_rat(&t.beta_star.1));
    }

    // q climbs strictly from 30/7 toward 9/2 and never reaches it.
    let q3 = q_of_nu(3);
    let q64 = q_of_nu(64);
    println!(
        "\nq(3) = {} = {:.6},  q(64) = {} = {:.6},  limit 9/2",
        fmt_rat(&q3),
        rat_f(&q3),
        fmt_rat(&q64),
        rat_f(&q64)
    );
}

fn rat_f(r: &expsum::rational::Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap()
}
