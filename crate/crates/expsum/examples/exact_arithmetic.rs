//! The three numeric layers: exact rationals, double-double floats with
//! about 32 digits, and piecewise-linear exponent expressions evaluated in
//! max-plus form.

use expsum::dd::{parse_dd, Dd, PI};
use expsum::pwl::{LinForm, PwlExpr};
use expsum::rational::{ceil_sqrt, fmt_rat, parse_rat, pow_int, rat};

fn main() {
    // Rationals never round: 131/400 - (1/25)(71/206) has an exact answer.
    let theta = rat(131, 400) - rat(1, 25) * rat(71, 206);
    println!("131/400 - (1/25)(71/206) = {}", fmt_rat(&theta));
    println!("parse_rat round trip: {}", fmt_rat(&parse_rat("517/1648").unwrap()));
    println!("(7/3)^5 = {}", fmt_rat(&pow_int(&rat(7, 3), 5).unwrap()));
    println!("ceil sqrt of 10^13 = {}", ceil_sqrt(&rat(10_000_000_000_000, 1)).unwrap());

    // Double-double carries two machine words of mantissa.
    let x = Dd::from_i64(2).sqrt();
    println!("\nsqrt(2)        = {}", x.to_decimal(32));
    println!("sqrt(2)^2 - 2  = {}", (x.sqr() - Dd::from_i64(2)).to_decimal(3));
    println!("pi             = {}", PI.to_decimal(32));
    let parsed = parse_dd("0.57721566490153286060651209008240");
    println!("parsed gamma   = {}", parsed.to_decimal(32));

    // Exponent bounds are affine in (h, m) with max/sum/one-plus nodes.
    let expr = PwlExpr::one_plus(vec![
        PwlExpr::lin(rat(-1, 2), rat(1, 1), rat(0, 1)),
        PwlExpr::lin(rat(0, 1), rat(0, 1), rat(1, 1)),
    ]);
    let lead = LinForm::new(rat(1, 4), rat(1, 2), rat(-1, 2));
    for (h, m) in [(rat(1, 10), rat(2, 5)), (rat(3, 10), rat(1, 2))] {
        println!(
            "\nat (h, m) = ({}, {}): lead = {}, one-plus part = {}",
            fmt_rat(&h),
            fmt_rat(&m),
            fmt_rat(&lead.eval(&h, &m)),
            fmt_rat(&expr.eval(&h, &m))
        );
    }
}
