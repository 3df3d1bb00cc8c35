//! Clustering agreement scores.

use std::collections::HashMap;
use std::hash::Hash;

fn pairs(n: u64) -> f64 {
    (n * n.saturating_sub(1) / 2) as f64
}

/// Adjusted Rand index between two labelings of the same points.
///
/// Every distinct label (including `-1`) is treated as its own class. When
/// both labelings are trivial (one class each, or all singletons) the index
/// is defined as 1.0.
///
/// # Panics
///
/// If the slices differ in length.
pub fn adjusted_rand_index<A, B>(a: &[A], b: &[B]) -> f64
where
    A: Eq + Hash,
    B: Eq + Hash,
{
    assert_eq!(a.len(), b.len(), "labelings must cover the same points");
    let n = a.len() as u64;
    if n < 2 {
        return 1.0;
    }
    let mut table: HashMap<(&A, &B), u64> = HashMap::new();
    let mut rows: HashMap<&A, u64> = HashMap::new();
    let mut cols: HashMap<&B, u64> = HashMap::new();
    for (x, y) in a.iter().zip(b) {
        *table.entry((x, y)).or_default() += 1;
        *rows.entry(x).or_default() += 1;
        *cols.entry(y).or_default() += 1;
    }
    let index: f64 = table.values().map(|&c| pairs(c)).sum();
    let sum_a: f64 = rows.values().map(|&c| pairs(c)).sum();
    let sum_b: f64 = cols.values().map(|&c| pairs(c)).sum();
    let expected = sum_a * sum_b / pairs(n);
    let max = 0.5 * (sum_a + sum_b);
    if max == expected {
        return 1.0;
    }
    (index - expected) / (max - expected)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_up_to_renaming() {
        assert_eq!(
            adjusted_rand_index(&[0, 0, 1, 1, 2], &[5, 5, 9, 9, -1]),
            1.0
        );
    }

    #[test]
    fn known_value() {
        // sklearn: adjusted_rand_score([0,0,1,1], [0,0,1,2]) == 4/7
        let v = adjusted_rand_index(&[0, 0, 1, 1], &[0, 0, 1, 2]);
        assert!((v - 4.0 / 7.0).abs() < 1e-12);
        // sklearn: adjusted_rand_score([0,0,0,1,1,1], [0,1,0,1,0,1]) == -1/9
        let v = adjusted_rand_index(&[0, 0, 0, 1, 1, 1], &[0, 1, 0, 1, 0, 1]);
        assert!((v + 1.0 / 9.0).abs() < 1e-12, "{v}");
    }

    #[test]
    fn trivial_cases() {
        assert_eq!(adjusted_rand_index(&[1, 1, 1], &[0, 0, 0]), 1.0);
        assert_eq!(adjusted_rand_index(&[0, 1, 2], &[3, 4, 5]), 1.0);
        assert_eq!(adjusted_rand_index::<i32, i32>(&[], &[]), 1.0);
    }
}
