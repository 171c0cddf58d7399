//! Binomial coefficients and colexicographic subset enumeration.

use std::cmp::Ordering;

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        let num = (n - i) as u128;
        match acc.checked_mul(num) {
            Some(v) => acc = v / (i as u128 + 1),
            None => {
                let g = gcd(acc, i as u128 + 1);
                let (a, d) = (acc / g, (i as u128 + 1) / g);
                match a.checked_mul(num / d) {
                    Some(v) => acc = v,
                    None => return u128::MAX,
                }
            }
        }
    }
    acc
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Compares two sorted tuples colexicographically: the larger maximum comes
/// last, ties broken on the next-largest element, and so on.
pub fn colex_cmp(a: &[usize], b: &[usize]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

/// Iterator over the `k`-subsets of `ground` in colexicographic order of their
/// positions in `ground`. Each item lists the chosen ground elements in the
/// order they appear in `ground`.
#[derive(Debug, Clone)]
pub struct ColexSubsets<'a> {
    ground: &'a [usize],
    positions: Vec<usize>,
    done: bool,
}

impl<'a> ColexSubsets<'a> {
    pub fn new(ground: &'a [usize], k: usize) -> Self {
        ColexSubsets {
            ground,
            positions: (0..k).collect(),
            done: k > ground.len(),
        }
    }
}

impl Iterator for ColexSubsets<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.positions.iter().map(|&p| self.ground[p]).collect();
        let k = self.positions.len();
        // Advance: bump the lowest position that has room, reset everything below it.
        let mut j = 0;
        loop {
            if j == k {
                self.done = true;
                break;
            }
            let limit = if j + 1 < k {
                self.positions[j + 1]
            } else {
                self.ground.len()
            };
            if self.positions[j] + 1 < limit {
                self.positions[j] += 1;
                for (i, p) in self.positions[..j].iter_mut().enumerate() {
                    *p = i;
                }
                break;
            }
            j += 1;
        }
        Some(out)
    }
}

/// `k`-subsets of `{0, .., n-1}` in colex order.
pub fn colex_subsets_of_range(n: usize, k: usize) -> Vec<Vec<usize>> {
    let ground: Vec<usize> = (0..n).collect();
    ColexSubsets::new(&ground, k).collect()
}
