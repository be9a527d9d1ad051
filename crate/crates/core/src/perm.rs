/// Calls `f` on every permutation of `0..n` in lexicographic order.
pub(crate) fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        f(&perm);
        if !next_permutation(&mut perm) {
            return;
        }
    }
}

pub(crate) fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_factorial() {
        for (n, expected) in [(0, 1), (1, 1), (3, 6), (5, 120)] {
            let mut count = 0;
            for_each_permutation(n, |_| count += 1);
            assert_eq!(count, expected);
        }
    }
}
