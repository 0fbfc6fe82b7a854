//! Integer partitions: parsing, conjugation, dominance order and the
//! almost-rectangular structure that drives the rest of the crate.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
///
/// The empty partition is the unique partition of 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
    n: usize,
}

/// Result of comparing two partitions of the same integer in dominance order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dominance {
    Less,
    Greater,
    Equal,
    Incomparable,
}

impl Dominance {
    /// True for `Greater` or `Equal`.
    pub fn dominates(self) -> bool {
        matches!(self, Dominance::Greater | Dominance::Equal)
    }
}

impl Partition {
    /// Builds a partition from arbitrary parts: zeros are dropped and the rest sorted.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let n = parts.iter().sum();
        Partition { parts, n }
    }

    /// Builds a partition from parts that must already be weakly decreasing and positive.
    pub fn from_sorted(parts: Vec<usize>) -> Option<Self> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        ok.then(|| {
            let n = parts.iter().sum();
            Partition { parts, n }
        })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// The one-part partition `(n)`; empty for `n = 0`.
    pub fn single(n: usize) -> Self {
        Partition::new(alloc::vec![n])
    }

    /// `(1^n)`.
    pub fn ones(n: usize) -> Self {
        Partition {
            parts: alloc::vec![1; n],
            n,
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<usize> {
        self.parts
    }

    /// The integer being partitioned.
    pub fn total(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest(&self) -> Option<usize> {
        self.parts.first().copied()
    }

    pub fn smallest(&self) -> Option<usize> {
        self.parts.last().copied()
    }

    /// Distinct part sizes with their multiplicities, largest first.
    pub fn groups(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Number of parts equal to `p` (possibly zero).
    pub fn count_parts_of_size(&self, p: usize) -> usize {
        self.parts.iter().filter(|&&x| x == p).count()
    }

    /// The almost rectangular subpartition `(p^N(p), (p-1)^N(p-1))`.
    pub fn subpartition_r(&self, p: usize) -> Result<Partition> {
        let top = self.count_parts_of_size(p);
        if p == 0 || top == 0 {
            return Err(Error::PartAbsent {
                partition: self.clone(),
                p,
            });
        }
        let below = if p > 1 { self.count_parts_of_size(p - 1) } else { 0 };
        let mut parts = alloc::vec![p; top];
        parts.extend(core::iter::repeat_n(p - 1, below));
        Ok(Partition::new(parts))
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let width = self.largest().unwrap_or(0);
        let parts = (1..=width)
            .map(|c| self.parts.iter().take_while(|&&p| p >= c).count())
            .collect();
        Partition { parts, n: self.n }
    }

    /// Compares `self` against `other` in dominance order.
    pub fn dominance_cmp(&self, other: &Partition) -> Result<Dominance> {
        if self.n != other.n {
            return Err(Error::TotalMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let (mut ge, mut le) = (true, true);
        let (mut a, mut b) = (0usize, 0usize);
        for i in 0..self.len().max(other.len()) {
            a += self.parts.get(i).copied().unwrap_or(0);
            b += other.parts.get(i).copied().unwrap_or(0);
            ge &= a >= b;
            le &= a <= b;
        }
        Ok(match (ge, le) {
            (true, true) => Dominance::Equal,
            (true, false) => Dominance::Greater,
            (false, true) => Dominance::Less,
            (false, false) => Dominance::Incomparable,
        })
    }

    /// Largest and smallest parts differ by at most one.
    pub fn is_almost_rectangular(&self) -> bool {
        match (self.largest(), self.smallest()) {
            (Some(a), Some(b)) => a - b <= 1,
            _ => true,
        }
    }

    /// Consecutive parts differ by at least two.
    pub fn is_stable(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] >= w[1] + 2)
    }

    /// Greedy decomposition into maximal consecutive almost rectangular runs.
    pub fn ar_decompose(&self) -> ArDecomposition {
        let mut segments = Vec::new();
        let mut start = 0;
        while start < self.parts.len() {
            let top = self.parts[start];
            let mut end = start;
            while end < self.parts.len() && self.parts[end] + 1 >= top {
                end += 1;
            }
            let largest_count = self.parts[start..end].iter().filter(|&&p| p == top).count();
            segments.push(ArSegment {
                start,
                largest: top,
                largest_count,
                smaller_count: end - start - largest_count,
            });
            start = end;
        }
        ArDecomposition { segments }
    }

    /// `r_P`: minimum number of consecutive almost rectangular pieces.
    pub fn ar_count(&self) -> usize {
        self.ar_decompose().count()
    }
}

/// `[n]^k`: the partition of `n` into `k` parts that differ by at most one.
pub fn almost_rectangular(n: usize, k: usize) -> Result<Partition> {
    if k == 0 || k > n {
        return Err(Error::PartCountOutOfRange { n, k });
    }
    let (x, r) = (n / k, n % k);
    let mut parts = alloc::vec![x + 1; r];
    parts.extend(core::iter::repeat_n(x, k - r));
    Ok(Partition { parts, n })
}

/// One almost rectangular run `(p^a, (p-1)^b)` inside a partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ArSegment {
    /// Index of the first part of the run.
    pub start: usize,
    pub largest: usize,
    pub largest_count: usize,
    pub smaller_count: usize,
}

impl ArSegment {
    pub fn len(&self) -> usize {
        self.largest_count + self.smaller_count
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn end(&self) -> usize {
        self.start + self.len()
    }

    pub fn total(&self) -> usize {
        self.largest * self.largest_count + (self.largest - 1) * self.smaller_count
    }

    pub fn to_partition(&self) -> Partition {
        let mut parts = alloc::vec![self.largest; self.largest_count];
        parts.extend(core::iter::repeat_n(self.largest - 1, self.smaller_count));
        Partition::new(parts)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ArDecomposition {
    pub segments: Vec<ArSegment>,
}

impl ArDecomposition {
    pub fn count(&self) -> usize {
        self.segments.len()
    }

    /// Parts of all segments, concatenated in order.
    pub fn concat(&self) -> Vec<usize> {
        self.segments
            .iter()
            .flat_map(|s| s.to_partition().into_parts())
            .collect()
    }
}

impl fmt::Display for Partition {
    /// Compact exponent form, e.g. `6,4^2,3^2,2^2,1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (p, m)) in self.groups().into_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if m == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts comma separated parts with optional `^multiplicity`, in any order.
    /// Surrounding parentheses are ignored; blank input is the empty partition.
    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let text = text
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(text)
            .trim();
        if text.is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for raw in text.split(',') {
            let token = raw.trim();
            let bad = |reason| Error::Parse {
                token: token.to_string(),
                reason,
            };
            let (base, exp) = match token.split_once('^') {
                Some((b, e)) => (b.trim(), Some(e.trim())),
                None => (token, None),
            };
            let part: usize = parse_positive(base).map_err(bad)?;
            let mult: usize = match exp {
                Some(e) => parse_positive(e).map_err(bad)?,
                None => 1,
            };
            parts.extend(core::iter::repeat_n(part, mult));
        }
        Ok(Partition::new(parts))
    }
}

fn parse_positive(s: &str) -> core::result::Result<usize, &'static str> {
    if s.is_empty() {
        return Err("empty token");
    }
    if s.starts_with('-') {
        return Err("negative value");
    }
    match s.parse::<usize>() {
        Ok(0) => Err("zero is not allowed"),
        Ok(v) => Ok(v),
        Err(_) => Err("not a positive integer"),
    }
}
