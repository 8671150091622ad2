//! Replay the constant bookkeeping behind the mean-square exponent
//! 7159/22824: the six-constant tuple, the two quotient identities, and
//! the margins that keep the error term shrinking.

use expsum::bounds::replay::replay_section8;
use expsum::rational::fmt_rat;

fn main() {
    let cert = replay_section8().unwrap();
    println!("constant tuple (nu = 7):");
    for c in &cert.tuple {
        println!("  {}", fmt_rat(c));
    }
    println!("merged lead        = ({}, {})", fmt_rat(&cert.merged_lead.0), fmt_rat(&cert.merged_lead.1));
    println!("lead quotient      = {}", fmt_rat(&cert.lead_quotient));
    println!("merged quotient    = {}  <- the mean-square exponent", fmt_rat(&cert.merged_quotient));
    println!("shrink quotient    = {}", fmt_rat(&cert.shrink_quotient));
    println!("aspect floor       = {}", fmt_rat(&cert.aspect_floor));
    println!("shrink margin      = {}", fmt_rat(&cert.shrink_margin));
    println!(
        "eps margins        = ({}, {}), usable phi = {}",
        fmt_rat(&cert.eps_margins.0),
        fmt_rat(&cert.eps_margins.1),
        fmt_rat(&cert.phi)
    );
    assert!(cert.ok, "{:?}", cert.failures);
}
