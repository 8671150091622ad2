//! Sample the admissible region and check that both scaled bound ratios
//! stay inside the window (67/100, 28/25] at every working order.

use expsum::bounds::remark::{remark_ratios, sample_remark_points};
use expsum::rational::fmt_rat;
use num_traits::ToPrimitive;

fn main() {
    let points = sample_remark_points(200, 7);
    for nu in 3..=8 {
        let r = remark_ratios(nu, &points).unwrap();
        let span = |samples: &[((_, _), expsum::rational::Rat)]| {
            let lo = samples.iter().map(|s| &s.1).min().unwrap();
            let hi = samples.iter().map(|s| &s.1).max().unwrap();
            (lo.to_f64().unwrap(), hi.to_f64().unwrap())
        };
        let (ulo, uhi) = span(&r.upsilon_samples);
        let (zlo, zhi) = span(&r.zeta_samples);
        println!(
            "nu = {nu}: 24 upsilon in [{ulo:.4}, {uhi:.4}], 612 zeta in [{zlo:.4}, {zhi:.4}], all in window = {}",
            r.all_in_window
        );
        assert!(r.all_in_window);
    }
    let r = remark_ratios(3, &points).unwrap();
    println!(
        "\nwindow is ({}, {}], {} samples per order, {} degenerate points skipped",
        fmt_rat(&r.window.0),
        fmt_rat(&r.window.1),
        r.upsilon_samples.len(),
        r.skipped.len()
    );
}
