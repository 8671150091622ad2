//! Count divisor sums and disk lattice points by two independent routes
//! each, then print the error-term reports at X = 10^6.

use expsum::lattice::{
    circle_count, circle_report, delta_report, divisor_sum, CircleMethod, DivisorMethod,
};

fn main() {
    for x in [10.0, 100.0, 10_000.0, 1_000_000.0] {
        let sieve_ok = x <= 100_000.0;
        let d_hyp = divisor_sum(x, DivisorMethod::Hyperbola).unwrap();
        let n_brute = circle_count(x, CircleMethod::Brute).unwrap();
        let n_gauss = circle_count(x, CircleMethod::Gauss).unwrap();
        assert_eq!(n_brute, n_gauss);
        if sieve_ok {
            assert_eq!(divisor_sum(x, DivisorMethod::Sieve).unwrap(), d_hyp);
        }
        println!("X = {x:>9}: D(X) = {d_hyp:>10}, N(X) = {n_brute:>10}");
    }

    let d = delta_report(1e6).unwrap();
    println!("\ndivisor problem at X = 10^6:");
    println!("  count      {}", d.count);
    println!("  main term  {:.6}", d.main_term);
    println!("  error      {:+.12}", d.error_term);
    println!("  psi side   {:+.12}", d.psi_side);
    println!("  residual   {:+.12}  (error/2 + psi side, stays O(1))", d.residual);

    let c = circle_report(1e6).unwrap();
    println!("circle problem at X = 10^6:");
    println!("  count      {}", c.count);
    println!("  main term  {:.6}", c.main_term);
    println!("  error      {:+.12}", c.error_term);
    println!("  psi side   {:+.12}", c.psi_side);
    println!("  residual   {:+.12}  (error/4 - psi side)", c.residual);
}
