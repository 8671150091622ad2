//! Print the rational identity suite and verify every record exactly.

use expsum::rational::fmt_rat;
use expsum::tables::identity_suite;

fn main() {
    let suite = identity_suite();
    for r in &suite {
        println!(
            "{:<28} {:<21} {} vs {} -> {}",
            r.name,
            r.kind.as_str(),
            fmt_rat(&r.lhs),
            fmt_rat(&r.rhs),
            if r.holds { "holds" } else { "BROKEN" }
        );
    }
    assert!(suite.iter().all(|r| r.holds));
    println!("\n{} records, all exact", suite.len());
}
