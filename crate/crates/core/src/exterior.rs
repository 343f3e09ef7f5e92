//! Strictly increasing index tuples: the basis labels of exterior powers.

use std::collections::BTreeMap;

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance the rightmost index that still has room
        let Some(pos) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[pos] += 1;
        for i in pos + 1..k {
            cur[i] = cur[i - 1] + 1;
        }
    }
}

/// Position lookup for [`subsets`].
pub fn subset_index(n: usize, k: usize) -> BTreeMap<Vec<usize>, usize> {
    subsets(n, k)
        .into_iter()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Sorts an index list, returning the sign of the sorting permutation, or
/// `None` when an index repeats (the wedge vanishes).
pub fn sort_with_sign(mut idx: Vec<usize>) -> Option<(Vec<usize>, i64)> {
    let mut sign = 1;
    // insertion sort counts transpositions directly; tuples are short
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((idx, sign))
}

/// Concatenates two increasing tuples into the wedge of their basis elements.
pub fn wedge_indices(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, i64)> {
    sort_with_sign(a.iter().chain(b).copied().collect())
}

pub fn is_strictly_increasing(idx: &[usize]) -> bool {
    idx.windows(2).all(|w| w[0] < w[1])
}
