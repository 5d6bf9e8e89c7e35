use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Permutation of `{0, …, n−1}` stored as its value list `i ↦ self[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn new(values: Vec<usize>) -> Result<Self, Error> {
        let n = values.len();
        let mut seen = vec![false; n];
        for &v in &values {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::NotBijective);
            }
        }
        Ok(Self(values))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    /// Transposition of `i` and `j`.
    pub fn swap(n: usize, i: usize, j: usize) -> Self {
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(i, j);
        Self(v)
    }

    /// The cycle `0 → 1 → … → n−1 → 0`.
    pub fn cycle(n: usize) -> Self {
        Self((0..n).map(|i| (i + 1) % n).collect())
    }

    /// All permutations of `n` points, lexicographic in the value list.
    pub fn all(n: usize) -> impl Iterator<Item = Perm> {
        (0..n).permutations(n).map(Perm)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    /// `(self ∘ other)(i) = self(other(i))`
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.len(), other.len(), "permutation size mismatch");
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v] = i;
        }
        Perm(inv)
    }

    pub fn sign(&self) -> i64 {
        let mut seen = vec![false; self.len()];
        let mut sign = 1;
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    /// `self ⊞ other`: `other` acts on the points after `self.len()`.
    pub fn boxplus(&self, other: &Perm) -> Perm {
        let n = self.len();
        Perm(self.0.iter().copied().chain(other.0.iter().map(|&v| v + n)).collect())
    }
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Lexicographic rank of a permutation of a sorted label set, given the
/// permuted sequence. `seq` must be a rearrangement of `sorted`.
pub fn lex_rank<T: Ord>(seq: &[T]) -> usize {
    let n = seq.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = seq[i + 1..].iter().filter(|x| **x < seq[i]).count();
        rank += smaller * factorial(n - 1 - i);
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_and_inverse() {
        assert_eq!(Perm::identity(4).sign(), 1);
        assert_eq!(Perm::swap(4, 1, 3).sign(), -1);
        assert_eq!(Perm::cycle(3).sign(), 1);
        let p = Perm::new(vec![2, 0, 3, 1]).unwrap();
        assert_eq!(p.compose(&p.inverse()), Perm::identity(4));
        assert!(Perm::new(vec![0, 0]).is_err());
    }

    #[test]
    fn lex_rank_enumerates() {
        for (r, p) in Perm::all(4).enumerate() {
            assert_eq!(lex_rank(p.values()), r);
        }
    }
}
