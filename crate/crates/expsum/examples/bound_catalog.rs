//! Walk the bound catalog at one point of the (h, m) window: the exponent
//! each bound gives, whether its region conditions admit the point, and
//! the instantiated constant tuples.

use expsum::bounds::{build_bound, closure_tuple, eval_exponent, region_check, BoundId};
use expsum::rational::{fmt_rat, rat};

fn main() {
    let h = rat(1, 10);
    let m = rat(2, 5);
    println!("point: h = {}, m = {} (log_T scale)\n", fmt_rat(&h), fmt_rat(&m));
    for id in BoundId::ALL {
        let b = match build_bound(id, 7) {
            Ok(b) => b,
            Err(_) => continue,
        };
        let e = eval_exponent(&b, &h, &m);
        let v = region_check(&b, &h, &m, Some(1e10f64.ln()));
        println!(
            "{:<6} target {:<3} exponent {:<12} region ok = {:<5} ({})",
            b.id.as_str(),
            b.target.as_str(),
            fmt_rat(&e),
            v.pure_exponent_ok,
            if v.failed_conditions.is_empty() {
                "no failed conditions".to_string()
            } else {
                v.failed_conditions.join("; ")
            }
        );
    }

    println!("\nconstant tuples from the closure of the core bound:");
    for nu in [3u32, 6, 7] {
        let tuple = closure_tuple(nu).unwrap();
        let parts: Vec<String> = tuple.iter().map(|c| fmt_rat(c)).collect();
        println!("  nu = {nu}: ({})", parts.join(", "));
    }
}
