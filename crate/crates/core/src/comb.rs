//! Small combinatorics helpers: binomials, subset ranking, combinations.

pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Colexicographic rank of a strictly increasing set.
pub fn colex_rank(set: &[u32]) -> u64 {
    set.iter().enumerate().map(|(i, &v)| binom(v as u64, i as u64 + 1)).sum()
}

/// Inverse of [`colex_rank`] for sets of size `k`.
pub fn colex_unrank(mut rank: u64, k: usize) -> Vec<u32> {
    let mut out = vec![0u32; k];
    for i in (0..k).rev() {
        let mut v = i as u64;
        while binom(v + 1, i as u64 + 1) <= rank {
            v += 1;
        }
        rank -= binom(v, i as u64 + 1);
        out[i] = v as u32;
    }
    out
}

/// Calls `f` with every `k`-subset of `items` (in lexicographic position order).
pub fn for_each_combination<T: Copy>(items: &[T], k: usize, mut f: impl FnMut(&[T])) {
    let n = items.len();
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut buf: Vec<T> = idx.iter().map(|&i| items[i]).collect();
    loop {
        f(&buf);
        let mut i = k;
        while i > 0 && idx[i - 1] == i - 1 + n - k {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        i -= 1;
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
        for j in i..k {
            buf[j] = items[idx[j]];
        }
    }
}

pub fn combinations<T: Copy>(items: &[T], k: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    for_each_combination(items, k, |c| out.push(c.to_vec()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binom(5, 2), 10);
        assert_eq!(binom(30, 0), 1);
        assert_eq!(binom(3, 4), 0);
        assert_eq!(binom(60, 30), 118264581564861424);
    }

    #[test]
    fn rank_roundtrip() {
        for k in 1..4usize {
            let all = combinations(&(0..9u32).collect::<Vec<_>>(), k);
            let mut ranks: Vec<u64> = all.iter().map(|s| colex_rank(s)).collect();
            for s in &all {
                assert_eq!(&colex_unrank(colex_rank(s), k), s);
            }
            ranks.sort();
            assert_eq!(ranks, (0..binom(9, k as u64)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn combination_counts() {
        let items = [1, 2, 3, 4, 5];
        assert_eq!(combinations(&items, 0), vec![Vec::<i32>::new()]);
        assert_eq!(combinations(&items, 2).len(), 10);
        assert_eq!(combinations(&items, 5), vec![items.to_vec()]);
        assert!(combinations(&items, 6).is_empty());
    }
}
