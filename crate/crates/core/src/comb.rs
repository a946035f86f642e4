//! Small combinatorial helpers shared by the verifier and the subset
//! enumerators.

/// Binomial coefficient `C(n, k)`, saturating at `u64::MAX`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = match acc.checked_mul((n - i) as u64) {
            Some(v) => v / (i + 1) as u64,
            None => return u64::MAX,
        };
    }
    acc
}

/// Advances `idx` to the next k-combination of `0..n` in lexicographic
/// order; returns false once the last combination has been passed.
///
/// `idx` must hold a strictly increasing combination on entry. The caller
/// seeds it with `[0, 1, .., k-1]` and owns the buffer, so enumeration is
/// resumable and allocation-free.
pub fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    if k == 0 || k > n {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Runs `f` on every k-combination of `0..n` in lexicographic order until
/// `f` returns false.
pub fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return;
        }
        if !next_combination(&mut idx, n) {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(12, 3), 220);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(24, 2), 276);
    }

    #[test]
    fn enumeration_is_lexicographic_and_complete() {
        let mut seen = Vec::new();
        for_each_combination(4, 2, |c| {
            seen.push(c.to_vec());
            true
        });
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(seen.len() as u64, binomial(4, 2));
    }

    #[test]
    fn singleton_and_full_combinations() {
        let mut count = 0;
        for_each_combination(5, 1, |_| {
            count += 1;
            true
        });
        assert_eq!(count, 5);
        let mut full = Vec::new();
        for_each_combination(3, 3, |c| {
            full.push(c.to_vec());
            true
        });
        assert_eq!(full, vec![vec![0, 1, 2]]);
    }
}
