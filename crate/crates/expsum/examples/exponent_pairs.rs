//! Walk exponent-pair words letter by letter from the trivial pair.

use expsum::bounds::exppair::{exponent_pair, process_a, process_b};
use expsum::rational::{fmt_rat, rat};

fn main() {
    let mut pair = (rat(0, 1), rat(1, 1));
    println!("start   ({}, {})", fmt_rat(&pair.0), fmt_rat(&pair.1));
    // Words apply right to left, so BAAB means B, then A, A, then B.
    for step in ["B", "A", "A", "B"] {
        pair = match step {
            "A" => process_a(&pair.0, &pair.1),
            _ => process_b(&pair.0, &pair.1),
        };
        println!("after {step} ({}, {})", fmt_rat(&pair.0), fmt_rat(&pair.1));
    }
    assert_eq!(pair, exponent_pair("BAAB", (rat(0, 1), rat(1, 1))).unwrap());
    assert_eq!(pair, (rat(2, 7), rat(4, 7)));

    for word in ["B", "AB", "BAB", "ABAB", "BAAB"] {
        let p = exponent_pair(word, (rat(0, 1), rat(1, 1))).unwrap();
        println!("{word:<5} -> ({}, {})", fmt_rat(&p.0), fmt_rat(&p.1));
    }
}
