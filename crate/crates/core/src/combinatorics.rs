//! Small enumeration helpers shared by the engines.

/// All `p`-element subsets of `0..n` in lexicographic (subset-rank) order.
pub fn combinations(n: usize, p: usize) -> Combinations {
    Combinations {
        n,
        current: if p <= n { Some((0..p).collect()) } else { None },
    }
}

pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let p = out.len();
        let mut next = out.clone();
        // Find the rightmost position that can still move right.
        let mut i = p;
        while i > 0 {
            i -= 1;
            if next[i] < self.n - p + i {
                next[i] += 1;
                for j in i + 1..p {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                return Some(out);
            }
        }
        Some(out)
    }
}

/// Set partitions of `0..k` as restricted-growth strings, in lexicographic
/// order. Block ids are `0..blocks`.
pub fn set_partitions(k: usize) -> SetPartitions {
    SetPartitions {
        current: Some(vec![0; k]),
    }
}

pub struct SetPartitions {
    current: Option<Vec<usize>>,
}

impl Iterator for SetPartitions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        let k = next.len();
        // prefix_max[i] = max(next[0..i]); a position may grow up to prefix_max + 1.
        let mut prefix_max = vec![0usize; k];
        for i in 1..k {
            prefix_max[i] = prefix_max[i - 1].max(next[i - 1]);
        }
        let mut i = k;
        while i > 1 {
            i -= 1;
            if next[i] <= prefix_max[i] {
                next[i] += 1;
                for slot in next.iter_mut().skip(i + 1) {
                    *slot = 0;
                }
                self.current = Some(next);
                return Some(out);
            }
        }
        Some(out)
    }
}

/// Number of blocks encoded by a restricted-growth string.
pub fn block_count(rgs: &[usize]) -> usize {
    rgs.iter().max().map_or(0, |&b| b + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_in_rank_order() {
        let all: Vec<_> = combinations(4, 2).collect();
        assert_eq!(
            all,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(combinations(3, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(2, 3).count(), 0);
        assert_eq!(combinations(3, 3).count(), 1);
    }

    #[test]
    fn bell_numbers() {
        let bell = [1, 1, 2, 5, 15, 52, 203];
        for (k, &b) in bell.iter().enumerate() {
            assert_eq!(set_partitions(k).count(), b, "k = {k}");
        }
    }

    #[test]
    fn partitions_are_restricted_growth_and_ordered() {
        let all: Vec<_> = set_partitions(4).collect();
        for w in all.windows(2) {
            assert!(w[0] < w[1]);
        }
        for rgs in &all {
            let mut max = 0;
            for (i, &b) in rgs.iter().enumerate() {
                if i == 0 {
                    assert_eq!(b, 0);
                } else {
                    assert!(b <= max + 1);
                }
                max = max.max(b);
            }
        }
    }
}
