//! The two van der Corput processes on exponent pairs. Words are applied
//! right to left, so "BAAB" means: start from the seed, apply B, then A
//! twice, then B again.

use crate::error::{Error, Result};
use crate::rational::{rat, rat_int, Rat};

/// Whether (k, l) is an admissible pair: 0 <= k <= 1/2 <= l <= 1.
pub fn pair_ok(k: &Rat, l: &Rat) -> bool {
    *k >= rat_int(0) && *k <= rat(1, 2) && *l >= rat(1, 2) && *l <= rat_int(1)
}

/// A-process: (k, l) -> (k/(2k+2), (k+l+1)/(2k+2)).
pub fn process_a(k: &Rat, l: &Rat) -> (Rat, Rat) {
    let denom = rat_int(2) * k + rat_int(2);
    (k / &denom, (k + l + rat_int(1)) / &denom)
}

/// B-process: (k, l) -> (l - 1/2, k + 1/2).
pub fn process_b(k: &Rat, l: &Rat) -> (Rat, Rat) {
    (l - rat(1, 2), k + rat(1, 2))
}

/// Apply a word of A/B steps to a seed pair, right to left. Errors on
/// letters outside {A, B} and on inadmissible seeds; every intermediate
/// pair is checked to stay admissible.
pub fn exponent_pair(word: &str, seed: (Rat, Rat)) -> Result<(Rat, Rat)> {
    let (mut k, mut l) = seed;
    if !pair_ok(&k, &l) {
        return Err(Error::BadPair(k.to_string(), l.to_string()));
    }
    for ch in word.chars().rev() {
        (k, l) = match ch {
            'A' | 'a' => process_a(&k, &l),
            'B' | 'b' => process_b(&k, &l),
            _ => return Err(Error::BadWord(word.to_string())),
        };
        if !pair_ok(&k, &l) {
            return Err(Error::BadPair(k.to_string(), l.to_string()));
        }
    }
    Ok((k, l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn the_two_seven_pair_comes_from_baab() {
        let got = exponent_pair("BAAB", (rat_int(0), rat_int(1))).unwrap();
        assert_eq!(got, (rat(2, 7), rat(4, 7)));
    }

    #[test]
    fn single_steps_from_the_trivial_pair() {
        let trivial = (rat_int(0), rat_int(1));
        assert_eq!(exponent_pair("B", trivial.clone()).unwrap(), (rat(1, 2), rat(1, 2)));
        assert_eq!(exponent_pair("A", trivial.clone()).unwrap(), (rat_int(0), rat_int(1)));
        assert_eq!(exponent_pair("", trivial.clone()).unwrap(), trivial);
    }

    #[test]
    fn baab_intermediate_pairs() {
        let trivial = (rat_int(0), rat_int(1));
        let b = exponent_pair("B", trivial).unwrap();
        let ab = process_a(&b.0, &b.1);
        assert_eq!(ab, (rat(1, 6), rat(2, 3)));
        let aab = process_a(&ab.0, &ab.1);
        assert_eq!(aab, (rat(1, 14), rat(11, 14)));
        let baab = process_b(&aab.0, &aab.1);
        assert_eq!(baab, (rat(2, 7), rat(4, 7)));
    }

    #[test]
    fn rejects_bad_words_and_bad_seeds() {
        assert!(matches!(
            exponent_pair("BXB", (rat_int(0), rat_int(1))),
            Err(Error::BadWord(_))
        ));
        assert!(matches!(
            exponent_pair("A", (rat(2, 3), rat(1, 2))),
            Err(Error::BadPair(_, _))
        ));
        assert!(exponent_pair("B", (rat(1, 4), rat(9, 8))).is_err());
    }

    proptest! {
        #[test]
        fn processes_preserve_admissibility(
            kn in 0i64..=100,
            ln in 0i64..=100,
            word_bits in 0u32..256,
            len in 0usize..8,
        ) {
            let k = rat(kn, 200);
            let l = rat(1, 2) + rat(ln, 200);
            let word: String = (0..len)
                .map(|i| if word_bits >> i & 1 == 0 { 'A' } else { 'B' })
                .collect();
            let out = exponent_pair(&word, (k, l)).unwrap();
            prop_assert!(pair_ok(&out.0, &out.1));
        }
    }
}
