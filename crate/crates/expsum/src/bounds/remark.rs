//! Ratio bookkeeping between the three product bounds X46, Y49, Z410 on the
//! region where all three apply. The quotients Y/X and Z/X are powers of
//! H M^9 T^{-4} and T^53 H^{-92} M^{-108} respectively; after the fixed
//! scalings by 24 and 612 both powers land in the window (0.67, 1.12].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{build_bound, eval_exponent, BoundId, BoundSpec};
use crate::error::Result;
use crate::rational::{rat, rat_int, Rat};

#[derive(Debug, Clone, PartialEq)]
pub struct RemarkSample {
    pub h: Rat,
    pub m: Rat,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RemarkRatios {
    pub nu: u32,
    /// ((h, m), scaled ratio 24 * upsilon) per usable sample.
    pub upsilon_samples: Vec<((Rat, Rat), Rat)>,
    /// ((h, m), scaled ratio 612 * zeta) per usable sample.
    pub zeta_samples: Vec<((Rat, Rat), Rat)>,
    /// Points skipped because a quotient degenerates (denominator zero).
    pub skipped: Vec<(Rat, Rat)>,
    /// The window both scaled ratios must land in: lower exclusive, upper
    /// inclusive.
    pub window: (Rat, Rat),
    pub all_in_window: bool,
}

fn window() -> (Rat, Rat) {
    (rat(67, 100), rat(28, 25))
}

/// Lower edge of the admissible h-range at this m (largest of the floors).
pub fn h_lower(m: &Rat) -> Rat {
    let mut lo = rat_int(0);
    let window_floor = rat(53, 92) - rat(27, 23) * m;
    if window_floor > lo {
        lo = window_floor;
    }
    if *m < rat(7, 16) {
        let gate_floor = rat_int(4) - rat_int(9) * m;
        if gate_floor > lo {
            lo = gate_floor;
        }
    }
    lo
}

/// Upper edge of the admissible h-range at this m (smallest of the caps).
pub fn h_upper(m: &Rat) -> Rat {
    let a = m - rat(49, 164);
    let b = rat(35, 69) * m - rat(2, 23);
    let c = rat(3, 2) * m - rat(1, 2);
    a.min(b).min(c)
}

/// Whether (h, m) satisfies every side condition shared by X46, Y49, Z410
/// plus the strict window floor. The conditional gate is non-strict, so the
/// pinch corner passes here and gets flagged later instead.
pub fn remark_region_ok(h: &Rat, m: &Rat) -> bool {
    if *m > rat(1, 2) || *h < rat_int(0) {
        return false;
    }
    let strict_floor = rat(53, 92) - rat(27, 23) * m;
    if *h <= strict_floor {
        return false;
    }
    if *m < rat(7, 16) && *h < rat_int(4) - rat_int(9) * m {
        return false;
    }
    *h <= h_upper(m)
}

/// Draw exact rational points from the interior of the admissible region,
/// deterministically from the seed.
pub fn sample_remark_points(count: usize, seed: u64) -> Vec<RemarkSample> {
    const GRID: i64 = 8192;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m_lo = rat(141, 328);
    let m_span = rat(23, 328);
    let mut out = Vec::with_capacity(count);
    let mut guard = 0usize;
    while out.len() < count && guard < 200 * (count + 1) {
        guard += 1;
        let j = rng.gen_range(1..=GRID);
        let m = &m_lo + &m_span * rat(j, GRID);
        let lo = h_lower(&m);
        let hi = h_upper(&m);
        if lo >= hi {
            continue;
        }
        let k = rng.gen_range(1..=GRID);
        let h = &lo + (&hi - &lo) * rat(k, GRID + 1);
        debug_assert!(remark_region_ok(&h, &m));
        out.push(RemarkSample { h, m });
    }
    out
}

/// The two ratio powers at one point, or None when the first quotient
/// degenerates (h + 9m - 4 = 0, where Y/X carries no power information).
pub fn upsilon_zeta(
    x: &BoundSpec,
    y: &BoundSpec,
    z: &BoundSpec,
    h: &Rat,
    m: &Rat,
) -> Option<(Rat, Rat)> {
    let denom_u = h + rat_int(9) * m - rat_int(4);
    let denom_z = rat_int(53) - rat_int(92) * h - rat_int(108) * m;
    if denom_u == rat_int(0) || denom_z == rat_int(0) {
        return None;
    }
    let ex = eval_exponent(x, h, m);
    let upsilon = (eval_exponent(y, h, m) - &ex) / denom_u;
    let zeta = (eval_exponent(z, h, m) - &ex) / denom_z;
    Some((upsilon, zeta))
}

pub fn remark_ratios(nu: u32, points: &[RemarkSample]) -> Result<RemarkRatios> {
    let x = build_bound(BoundId::X46, nu)?;
    let y = build_bound(BoundId::Y49, nu)?;
    let z = build_bound(BoundId::Z410, nu)?;
    let window = window();
    let mut upsilon_samples = Vec::new();
    let mut zeta_samples = Vec::new();
    let mut skipped = Vec::new();
    let mut all_in_window = true;
    for pt in points {
        match upsilon_zeta(&x, &y, &z, &pt.h, &pt.m) {
            None => skipped.push((pt.h.clone(), pt.m.clone())),
            Some((u, zeta)) => {
                let su = rat_int(24) * u;
                let sz = rat_int(612) * zeta;
                if !(su > window.0 && su <= window.1) || !(sz > window.0 && sz <= window.1) {
                    all_in_window = false;
                }
                upsilon_samples.push(((pt.h.clone(), pt.m.clone()), su));
                zeta_samples.push(((pt.h.clone(), pt.m.clone()), sz));
            }
        }
    }
    Ok(RemarkRatios { nu, upsilon_samples, zeta_samples, skipped, window, all_in_window })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_rat;

    fn p(s: &str) -> Rat {
        parse_rat(s).unwrap()
    }

    fn scaled_at(nu: u32, h: &Rat, m: &Rat) -> (Rat, Rat) {
        let x = build_bound(BoundId::X46, nu).unwrap();
        let y = build_bound(BoundId::Y49, nu).unwrap();
        let z = build_bound(BoundId::Z410, nu).unwrap();
        let (u, zeta) = upsilon_zeta(&x, &y, &z, h, m).unwrap();
        (rat_int(24) * u, rat_int(612) * zeta)
    }

    #[test]
    fn pinned_ratio_values() {
        let h = rat(1, 10);
        let m = rat(12, 25);
        let (u3, z3) = scaled_at(3, &h, &m);
        assert_eq!(u3, p("373/500"));
        assert_eq!(z3, p("373/500"));
        let (u7, z7) = scaled_at(7, &h, &m);
        assert_eq!(u7, p("1177/1700"));
        assert_eq!(z7, p("1177/1700"));

        let zero = rat_int(0);
        let (u3o, z3o) = scaled_at(3, &zero, &zero);
        assert_eq!(u3o, p("28/25"));
        assert_eq!(z3o, p("28/25"));
        let (u8o, z8o) = scaled_at(8, &zero, &zero);
        assert_eq!(u8o, p("199/200"));
        assert_eq!(z8o, p("199/200"));
    }

    #[test]
    fn pinch_corner_is_in_region_but_degenerate() {
        let h = rat(43, 328);
        let m = rat(141, 328);
        assert!(remark_region_ok(&h, &m));
        assert_eq!(&h + rat_int(9) * &m - rat_int(4), rat_int(0));
        let x = build_bound(BoundId::X46, 3).unwrap();
        let y = build_bound(BoundId::Y49, 3).unwrap();
        let z = build_bound(BoundId::Z410, 3).unwrap();
        assert!(upsilon_zeta(&x, &y, &z, &h, &m).is_none());

        let pts = vec![RemarkSample { h, m }];
        let rr = remark_ratios(3, &pts).unwrap();
        assert_eq!(rr.skipped.len(), 1);
        assert!(rr.upsilon_samples.is_empty());
        assert!(rr.all_in_window);
    }

    #[test]
    fn strict_floor_boundary_is_excluded() {
        let m = rat(12, 25);
        let h = rat(53, 92) - rat(27, 23) * &m;
        assert!(!remark_region_ok(&h, &m));
        assert!(remark_region_ok(&(&h + rat(1, 1000)), &m));
    }

    #[test]
    fn sampling_is_deterministic_and_in_region() {
        let a = sample_remark_points(50, 7);
        let b = sample_remark_points(50, 7);
        assert_eq!(a, b);
        assert_eq!(a.len(), 50);
        for pt in &a {
            assert!(remark_region_ok(&pt.h, &pt.m), "({}, {})", pt.h, pt.m);
            // Interior sampling keeps both quotient denominators nonzero.
            assert!(&pt.h + rat_int(9) * &pt.m - rat_int(4) > rat_int(0));
            assert!(rat_int(53) - rat_int(92) * &pt.h - rat_int(108) * &pt.m < rat_int(0));
        }
        let c = sample_remark_points(50, 8);
        assert_ne!(a, c);
    }

    #[test]
    fn scaled_ratios_stay_in_window_for_all_indices() {
        let pts = sample_remark_points(120, 42);
        for nu in 3..=8u32 {
            let rr = remark_ratios(nu, &pts).unwrap();
            assert!(rr.skipped.is_empty());
            assert_eq!(rr.upsilon_samples.len(), 120);
            assert!(rr.all_in_window, "nu = {nu} left the window");
            for ((h, m), v) in rr.upsilon_samples.iter().chain(&rr.zeta_samples) {
                assert!(
                    *v > p("67/100") && *v <= p("28/25"),
                    "nu = {nu} at ({h}, {m}): {v}"
                );
            }
        }
    }
}
