//! The extension-closed family of extremal AC-free systems.
//!
//! For even `n` the members arise from an apex-over-bipartite base on
//! `n - 2k` vertices followed by any sequence of 2- and 4-extensions; for
//! odd `n >= 5` the base is the five-ring.  Members are generated
//! mechanically and deduplicated by canonical form, so the Fibonacci counts
//! checked in the test suites are an output of the generator, not an input.

use crate::canon::{canonical_form_with_limit, canonical_relabel, DEFAULT_CANON_LIMIT};
use crate::constructions::{five_ring, four_extension, turan_star_unchecked, two_extension};
use crate::error::{Error, Result};
use crate::system::TripleSystem;

/// Fibonacci numbers with `f(1) = f(2) = 1`.
pub fn fibonacci(k: usize) -> u64 {
    match k {
        0 => 0,
        1 | 2 => 1,
        _ => {
            let (mut a, mut b) = (1u64, 1u64);
            for _ in 2..k {
                let c = a + b;
                a = b;
                b = c;
            }
            b
        }
    }
}

fn extension_sequences(total: usize) -> Vec<Vec<usize>> {
    if total == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for step in [2usize, 4] {
        if step <= total {
            for mut tail in extension_sequences(total - step) {
                tail.insert(0, step);
                out.push(tail);
            }
        }
    }
    out
}

fn base_for_even(m: usize) -> TripleSystem {
    if m == 2 {
        TripleSystem::empty(2)
    } else {
        turan_star_unchecked(m)
    }
}

/// All members of the class on `n` vertices, one representative per
/// isomorphism class, in canonical order.
pub fn enumerate_class_f(n: usize) -> Result<Vec<TripleSystem>> {
    let bases: Vec<TripleSystem> = match n {
        0 | 1 | 3 => {
            return Err(Error::InvalidParameter(format!(
                "the class is defined for even n >= 2 and odd n >= 5, got {n}"
            )))
        }
        _ if n % 2 == 0 => (1..=n / 2).map(|h| base_for_even(2 * h)).collect(),
        _ => vec![five_ring()],
    };

    let limit = n.max(DEFAULT_CANON_LIMIT);
    let mut seen = std::collections::BTreeMap::new();
    for base in bases {
        for seq in extension_sequences(n - base.n()) {
            let mut f = base.clone();
            for step in seq {
                f = match step {
                    2 => two_extension(&f),
                    _ => four_extension(&f),
                };
            }
            debug_assert_eq!(f.n(), n);
            let key = canonical_form_with_limit(&f, limit)?;
            seen.entry(key).or_insert_with(|| {
                canonical_relabel(&f, limit).expect("within limit")
            });
        }
    }
    Ok(seen.into_values().collect())
}

/// The size every member of the class has: `floor((n-1)^2/4)` for even `n`,
/// one more for odd `n >= 5`.
pub fn class_f_size(n: usize) -> usize {
    if n % 2 == 0 {
        (n - 1) * (n - 1) / 4
    } else {
        (n - 1) * (n - 1) / 4 + 1
    }
}

/// The expected number of isomorphism classes.
pub fn class_f_count(n: usize) -> Result<u64> {
    match n {
        0 | 1 | 3 => Err(Error::InvalidParameter(format!("class undefined for n = {n}"))),
        _ if n % 2 == 0 => Ok(2 * fibonacci(n / 2) - 1),
        _ => Ok(fibonacci((n - 3) / 2)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{is_free, Config};

    #[test]
    fn fibonacci_values() {
        assert_eq!(fibonacci(1), 1);
        assert_eq!(fibonacci(2), 1);
        assert_eq!(fibonacci(5), 5);
        assert_eq!(fibonacci(10), 55);
    }

    #[test]
    fn small_class_counts() {
        assert_eq!(enumerate_class_f(5).unwrap().len(), 1);
        assert_eq!(enumerate_class_f(6).unwrap().len(), 3);
        assert_eq!(enumerate_class_f(9).unwrap().len(), 2);
        assert!(enumerate_class_f(3).is_err());
    }

    #[test]
    fn members_have_the_right_size_and_freeness() {
        for n in [4usize, 5, 6, 7, 8, 9] {
            for f in enumerate_class_f(n).unwrap() {
                assert_eq!(f.len(), class_f_size(n), "n={n}");
                assert!(is_free(&f, &[Config::A, Config::C]), "n={n}");
            }
        }
    }
}
