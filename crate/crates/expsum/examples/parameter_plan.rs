//! Pick block lengths and spacing moduli for one (H, M, T) in each case,
//! and print every side condition with both of its sides.

use expsum::planner::{nstar_fallback, plan, Constants, PlanCase, PlannerInput};

fn show(input: &PlannerInput) {
    let rep = plan(input).unwrap();
    println!(
        "case {} at H = {:.0e}, M = {:.0e}, T = {:.0e}:",
        rep.case.as_str(),
        input.h,
        input.m,
        input.t
    );
    println!("  N  = {}", rep.n.to_decimal(22));
    println!("  R  = {}", rep.r);
    println!("  Q2..Q5 = {}, {}, {}, {}",
        rep.q2.to_decimal(8), rep.q3.to_decimal(8), rep.q4.to_decimal(8), rep.q5.to_decimal(8));
    println!("  V0 = {}, V0* = {}, V1 = {}, V2 = {}",
        rep.v0.to_decimal(8), rep.v0star.to_decimal(8), rep.v1.to_decimal(8), rep.v2.to_decimal(8));
    println!("  eta = {}, Q' = {}", rep.eta.to_decimal(8), rep.qprime.to_decimal(8));
    for c in &rep.checks {
        println!(
            "  [{}] {:<12} {}   ({} vs {})",
            if c.ok { "ok" } else { "  " },
            c.name,
            c.formula,
            c.lhs.to_decimal(6),
            c.rhs.to_decimal(6)
        );
    }
    println!("  case-i gate = {}, all ok = {}\n", rep.case_i_gate, rep.all_ok);
}

fn main() {
    let consts = Constants::default();
    show(&PlannerInput { case: PlanCase::A, nu: 7, h: 1e2, m: 1e5, t: 1e10, consts });
    show(&PlannerInput { case: PlanCase::B, nu: 7, h: 1e2, m: 1e5, t: 1e10, consts });

    // Near M = sqrt(T) the main block length degenerates and the fallback
    // window takes over.
    let f = nstar_fallback(1e2, 1e5, 1e10).unwrap();
    println!(
        "fallback: N* = {}, window = ({}, {}), M in window = {}, triggers = {}",
        f.nstar.to_decimal(12),
        f.window.0.to_decimal(12),
        f.window.1.to_decimal(12),
        f.m_in_window,
        f.triggers
    );
}
