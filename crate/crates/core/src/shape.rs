//! Young-subgroup shapes and block contents.
//!
//! Quotienting the partition lattice by `S_λ` is the same as partitioning the
//! multiset `{1^λ_1, …, k^λ_k}`. Elements are identified only by their letter,
//! so a block of a partition is fully described by how many copies of each
//! letter it holds.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest ground-set size supported; blocks are stored as `u32` bitmasks.
pub const MAX_N: usize = 24;

/// A weakly decreasing list of positive parts `λ_1 ≥ … ≥ λ_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Shape {
    parts: Vec<u8>,
}

impl Shape {
    pub fn new(parts: &[usize]) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidShape("shape has no parts".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidShape(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidShape(format!("{parts:?} is not weakly decreasing")));
        }
        let n: usize = parts.iter().sum();
        if n > MAX_N {
            return Err(Error::InvalidShape(format!("n = {n} exceeds the supported maximum {MAX_N}")));
        }
        Ok(Shape { parts: parts.iter().map(|&p| p as u8).collect() })
    }

    /// Every shape of size `n`, in reverse lexicographic order.
    pub fn all(n: usize) -> Result<Vec<Shape>> {
        fn go(rest: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if rest == 0 {
                out.push(cur.clone());
                return;
            }
            for p in (1..=rest.min(cap)).rev() {
                cur.push(p);
                go(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out.iter().map(|p| Shape::new(p)).collect()
    }

    /// `λ = (n)`: the full symmetric group.
    pub fn full(n: usize) -> Result<Self> {
        Self::new(&[n])
    }

    /// `λ = (1^n)`: the trivial group, i.e. the unquotiented order complex.
    pub fn trivial(n: usize) -> Result<Self> {
        Self::new(&vec![1; n])
    }

    /// `λ = (n−1, 1)`, the shape behind `b'_S(n)`.
    pub fn hook(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidShape(format!("hook shape needs n >= 2, got {n}")));
        }
        Self::new(&[n - 1, 1])
    }

    pub fn n(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    /// Number of distinct letters `k`.
    pub fn letters(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> Vec<usize> {
        self.parts.iter().map(|&p| p as usize).collect()
    }

    pub fn multiplicity(&self, letter: usize) -> usize {
        self.parts.get(letter).map_or(0, |&p| p as usize)
    }

    /// Content of the whole ground set.
    pub fn whole(&self) -> BlockContent {
        BlockContent { counts: self.parts.clone() }
    }

    /// Letter of each element `0..n` under the standard coloring: the first
    /// `λ_1` elements get letter 0, the next `λ_2` letter 1, and so on.
    pub fn colors(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.n());
        for (letter, &p) in self.parts.iter().enumerate() {
            out.extend(std::iter::repeat_n(letter as u8, p as usize));
        }
        out
    }

    /// Every nonzero content that fits inside the shape.
    pub fn realizable_contents(&self) -> Vec<BlockContent> {
        let mut out = Vec::new();
        let mut cur = vec![0u8; self.parts.len()];
        loop {
            if cur.iter().any(|&c| c > 0) {
                out.push(BlockContent { counts: cur.clone() });
            }
            let mut i = 0;
            loop {
                if i == cur.len() {
                    return out;
                }
                if cur[i] < self.parts[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Multiplicity of each letter in a block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BlockContent {
    counts: Vec<u8>,
}

impl BlockContent {
    pub fn new(counts: Vec<u8>) -> Self {
        BlockContent { counts }
    }

    pub fn zero(letters: usize) -> Self {
        BlockContent { counts: vec![0; letters] }
    }

    /// Content of a single element with the given letter.
    pub fn singleton(letters: usize, letter: u8) -> Self {
        let mut c = Self::zero(letters);
        c.counts[letter as usize] = 1;
        c
    }

    /// Content of the elements of `mask` under `colors`.
    pub fn of_mask(mask: u32, colors: &[u8], letters: usize) -> Self {
        let mut c = Self::zero(letters);
        let mut m = mask;
        while m != 0 {
            let e = m.trailing_zeros() as usize;
            c.counts[colors[e] as usize] += 1;
            m &= m - 1;
        }
        c
    }

    pub fn counts(&self) -> &[u8] {
        &self.counts
    }

    pub fn size(&self) -> usize {
        self.counts.iter().map(|&c| c as usize).sum()
    }

    pub fn contains(&self, letter: usize) -> bool {
        self.counts.get(letter).is_some_and(|&c| c > 0)
    }

    /// `w_B`: the letters of the block in weakly increasing order.
    pub fn word(&self) -> Vec<u8> {
        let mut w = Vec::with_capacity(self.size());
        for (letter, &c) in self.counts.iter().enumerate() {
            w.extend(std::iter::repeat_n(letter as u8, c as usize));
        }
        w
    }

    /// Componentwise `self ≤ other`.
    pub fn fits_in(&self, other: &BlockContent) -> bool {
        self.counts.len() == other.counts.len() && self.counts.iter().zip(&other.counts).all(|(a, b)| a <= b)
    }

    /// Concatenation `BB'`: multiplicities add.
    pub fn concat(&self, other: &BlockContent) -> BlockContent {
        BlockContent { counts: self.counts.iter().zip(&other.counts).map(|(a, b)| a + b).collect() }
    }

    /// `self − other`; `None` unless `other` fits in `self`.
    pub fn minus(&self, other: &BlockContent) -> Option<BlockContent> {
        if !other.fits_in(self) {
            return None;
        }
        Some(BlockContent { counts: self.counts.iter().zip(&other.counts).map(|(a, b)| a - b).collect() })
    }

    /// Sub-contents `0 < c ≤ self`, each once, in increasing `Ord` order.
    pub fn sub_contents(&self) -> Vec<BlockContent> {
        let mut out = Vec::new();
        let mut cur = vec![0u8; self.counts.len()];
        loop {
            let mut i = cur.len();
            // odometer, last coordinate fastest so that output follows `Ord`
            loop {
                if i == 0 {
                    out.sort();
                    return out;
                }
                i -= 1;
                if cur[i] < self.counts[i] {
                    cur[i] += 1;
                    for c in cur.iter_mut().skip(i + 1) {
                        *c = 0;
                    }
                    break;
                }
            }
            out.push(BlockContent { counts: cur.clone() });
        }
    }

    /// Serialized multiplicities: a plain decimal for one letter, otherwise
    /// the decimals joined by `.`.
    pub fn encode(&self) -> String {
        let parts: Vec<String> = self.counts.iter().map(|c| c.to_string()).collect();
        parts.join(".")
    }

    pub fn decode(s: &str, letters: usize) -> Result<Self> {
        let counts: std::result::Result<Vec<u8>, _> = s.split('.').map(|t| t.parse::<u8>()).collect();
        let counts = counts.map_err(|e| Error::Parse(format!("bad content {s:?}: {e}")))?;
        if counts.len() != letters {
            return Err(Error::Parse(format!("content {s:?} has {} letters, expected {letters}", counts.len())));
        }
        Ok(BlockContent { counts })
    }
}

impl fmt::Display for BlockContent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

/// All multisets of exactly `parts` nonzero contents summing to `total`,
/// each multiset listed once with its parts in non-increasing `Ord` order.
pub fn vector_partitions(total: &BlockContent, parts: usize) -> Vec<Vec<BlockContent>> {
    fn rec(
        remaining: &BlockContent,
        parts: usize,
        bound: Option<&BlockContent>,
        cur: &mut Vec<BlockContent>,
        out: &mut Vec<Vec<BlockContent>>,
    ) {
        if parts == 0 {
            if remaining.size() == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if remaining.size() < parts {
            return;
        }
        if parts == 1 {
            if bound.is_none_or(|b| remaining.cmp(b) != Ordering::Greater) {
                cur.push(remaining.clone());
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for part in remaining.sub_contents().into_iter().rev() {
            if bound.is_some_and(|b| part.cmp(b) == Ordering::Greater) {
                continue;
            }
            let rest = remaining.minus(&part).expect("sub-content");
            if rest.size() < parts - 1 {
                continue;
            }
            cur.push(part.clone());
            rec(&rest, parts - 1, Some(&part), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, parts, None, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_validation() {
        assert!(Shape::new(&[3, 1]).is_ok());
        assert!(Shape::new(&[1, 3]).is_err());
        assert!(Shape::new(&[]).is_err());
        assert!(Shape::new(&[2, 0]).is_err());
        assert_eq!(Shape::hook(5).unwrap().parts(), vec![4, 1]);
        assert_eq!(Shape::new(&[2, 2, 1]).unwrap().colors(), vec![0, 0, 1, 1, 2]);
    }

    #[test]
    fn integer_partitions_counted() {
        // p(n, k): partitions of n into exactly k parts
        let whole = Shape::full(7).unwrap().whole();
        let counts: Vec<usize> = (1..=7).map(|k| vector_partitions(&whole, k).len()).collect();
        assert_eq!(counts, vec![1, 3, 4, 3, 2, 1, 1]);
    }

    #[test]
    fn all_shapes() {
        let counts: Vec<usize> = (1..=8).map(|n| Shape::all(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(Shape::all(3).unwrap()[1].parts(), vec![2, 1]);
    }

    #[test]
    fn set_partitions_counted_for_distinct_letters() {
        // Stirling numbers S(5, k)
        let whole = Shape::trivial(5).unwrap().whole();
        let counts: Vec<usize> = (1..=5).map(|k| vector_partitions(&whole, k).len()).collect();
        assert_eq!(counts, vec![1, 15, 25, 10, 1]);
    }

    #[test]
    fn content_words_and_codec() {
        let c = BlockContent::new(vec![2, 1]);
        assert_eq!(c.word(), vec![0, 0, 1]);
        assert_eq!(c.encode(), "2.1");
        assert_eq!(BlockContent::decode("2.1", 2).unwrap(), c);
        assert!(BlockContent::decode("2.1", 1).is_err());
        assert_eq!(c.sub_contents().len(), 5);
    }
}
