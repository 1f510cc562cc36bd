//! Mixed families of 4-, 3- and 2-element edges with pairwise intersections
//! of at most one vertex and no 3-cycle, together with their weight
//! statistic `8|Q| + 7/2 |T| + |E|`.

use num_rational::Rational64;

use crate::config::mixed_family_has_triangle;
use crate::system::Triple;

/// A family of quadruples, triples and pairs on `[n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Q4Family {
    pub n: usize,
    pub quads: Vec<[usize; 4]>,
    pub triples: Vec<Triple>,
    pub pairs: Vec<(usize, usize)>,
}

impl Q4Family {
    pub fn new(
        n: usize,
        quads: Vec<[usize; 4]>,
        triples: Vec<Triple>,
        pairs: Vec<(usize, usize)>,
    ) -> Self {
        Q4Family { n, quads, triples, pairs }
    }

    fn member_masks(&self) -> Vec<u128> {
        let mut masks = Vec::new();
        for q in &self.quads {
            masks.push(q.iter().fold(0u128, |m, &v| m | 1 << v));
        }
        for t in &self.triples {
            masks.push(t.mask());
        }
        for &(a, b) in &self.pairs {
            masks.push(1u128 << a | 1 << b);
        }
        masks
    }
}

/// Check the three defining conditions: well-formed member sizes within
/// range, no 3-cycle across the whole family, and pairwise intersections of
/// at most one vertex.
pub fn validate_q4(family: &Q4Family) -> bool {
    for q in &family.quads {
        let mask = q.iter().fold(0u128, |m, &v| m | 1 << v);
        if mask.count_ones() != 4 || q.iter().any(|&v| v >= family.n) {
            return false;
        }
    }
    if family
        .triples
        .iter()
        .any(|t| t.vertices()[2] >= family.n)
    {
        return false;
    }
    for &(a, b) in &family.pairs {
        if a == b || a >= family.n || b >= family.n {
            return false;
        }
    }
    let masks = family.member_masks();
    for i in 0..masks.len() {
        for j in i + 1..masks.len() {
            if masks[i] == masks[j] || (masks[i] & masks[j]).count_ones() > 1 {
                return false;
            }
        }
    }
    !mixed_family_has_triangle(&masks)
}

/// The exact rational statistic `8|Q| + 7/2 |T| + |E|`.
pub fn q4_sigma(family: &Q4Family) -> Rational64 {
    Rational64::new(
        16 * family.quads.len() as i64
            + 7 * family.triples.len() as i64
            + 2 * family.pairs.len() as i64,
        2,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_rows_and_columns_are_valid() {
        let mut quads = Vec::new();
        for i in 0..4 {
            quads.push([4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3]);
            quads.push([i, i + 4, i + 8, i + 12]);
        }
        let fam = Q4Family::new(16, quads, vec![], vec![]);
        assert!(validate_q4(&fam));
        assert_eq!(q4_sigma(&fam), Rational64::from_integer(64));
    }

    #[test]
    fn sigma_arithmetic() {
        let fam = Q4Family::new(
            6,
            vec![[0, 1, 2, 3]],
            vec![Triple::new(0, 4, 5).unwrap()],
            vec![],
        );
        assert!(validate_q4(&fam));
        assert_eq!(q4_sigma(&fam), Rational64::new(23, 2));
    }

    #[test]
    fn overlapping_quads_are_invalid() {
        let fam = Q4Family::new(5, vec![[0, 1, 2, 3], [0, 1, 2, 4]], vec![], vec![]);
        assert!(!validate_q4(&fam));
    }

    #[test]
    fn triangles_are_invalid() {
        // three pairs cyclically sharing three vertices
        let fam = Q4Family::new(3, vec![], vec![], vec![(0, 1), (1, 2), (2, 0)]);
        assert!(!validate_q4(&fam));
    }
}
