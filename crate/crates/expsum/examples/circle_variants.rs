//! The circle sawtooth display has two sign choices that a misprint could
//! flip. Scanning all four variants shows only one keeps the residual
//! bounded as the range doubles: that is the formula the library ships.

use expsum::lattice::scan_circle_variants;

fn main() {
    let verdicts = scan_circle_variants(100_000).unwrap();
    println!(
        "{:>14} {:>14} {:>12} {:>12} {:>9}",
        "quarter shift", "denom shift", "sup half", "sup full", "bounded"
    );
    for v in &verdicts {
        println!(
            "{:>14} {:>14} {:>12.6} {:>12.6} {:>9}",
            if v.variant.swap_quarter_shift { "swapped" } else { "as shipped" },
            if v.variant.swap_denominator_shift { "swapped" } else { "as shipped" },
            v.sup_half,
            v.sup_full,
            v.bounded
        );
    }
    let bounded: Vec<_> = verdicts.iter().filter(|v| v.bounded).collect();
    assert_eq!(bounded.len(), 1);
    assert_eq!(bounded[0].variant, Default::default());
    println!("\nexactly one variant is bounded, and it is the shipped one");
}
