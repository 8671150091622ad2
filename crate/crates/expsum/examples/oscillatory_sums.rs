//! Evaluate the three double-sum shapes and show the two phase paths agree
//! far below the reporting tolerance.

use expsum::sums::{eval_sum, SumJob, SumMethod};

fn main() {
    // Rational phases reduce exactly; T here is far beyond f64 phase range.
    let job = SumJob::s7(3, 1000, 1_000_000_007, 1, 0);
    let exact = eval_sum(&job).unwrap();
    let float = eval_sum(&job.clone().with_method(SumMethod::FloatDoubleDouble)).unwrap();
    println!("rational-phase sum, {} terms", exact.term_count);
    println!("  exact path  {:+.15} {:+.15}i", exact.value.re, exact.value.im);
    println!("  dd path     {:+.15} {:+.15}i", float.value.re, float.value.im);
    println!("  |difference| = {:.3e}", (exact.value - float.value).norm());
    println!("  phase error bounds: {:.3e} vs {:.3e}", exact.phase_error_bound, float.phase_error_bound);
    assert!((exact.value - float.value).norm() < 1e-9 * exact.weight_sum);

    let star = eval_sum(&SumJob::star(1e6, 20, 40, 150, 280)).unwrap();
    println!(
        "\nlog-phase sum over h in [20, 40], m in [150, 280]: {:+.12} {:+.12}i ({} terms)",
        star.value.re, star.value.im, star.term_count
    );

    let weighted = eval_sum(&SumJob::general(
        expsum::sums::PhaseFamilyId::InverseShift,
        1,
        0,
        3.0,
        1000.0,
        1_000_000_007.0,
    ))
    .unwrap();
    println!(
        "\nweighted model sum (g = 1/x, G = 1): {:+.12} {:+.12}i, weight mass {:.6}",
        weighted.value.re, weighted.value.im, weighted.weight_sum
    );
}
