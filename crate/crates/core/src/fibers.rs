//! Partitions grouped by their image under `Q`, and the box-shape predictions
//! for those groups.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::oblak::q_map;
use crate::partition::Partition;

pub const DEFAULT_ENUMERATION_LIMIT: usize = 40;

/// All partitions of `n` in reverse lexicographic order, `(n)` first and `(1^n)` last.
#[derive(Clone, Debug)]
pub struct PartitionsOf {
    next: Option<Vec<usize>>,
}

impl PartitionsOf {
    pub fn new(n: usize) -> Self {
        PartitionsOf {
            next: Some(if n == 0 { Vec::new() } else { alloc::vec![n] }),
        }
    }
}

impl Iterator for PartitionsOf {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        // rightmost part above 1 gets decremented; everything after it is refilled greedily
        if let Some(pos) = current.iter().rposition(|&x| x > 1) {
            let mut succ = current[..pos].to_vec();
            let head = current[pos] - 1;
            let mut rest = current.len() - pos;
            succ.push(head);
            while rest > 0 {
                let part = rest.min(head);
                succ.push(part);
                rest -= part;
            }
            self.next = Some(succ);
        }
        Some(Partition::from_sorted(current).expect("generator emits partitions"))
    }
}

pub fn enumerate_partitions(n: usize) -> Result<Vec<Partition>> {
    enumerate_partitions_bounded(n, DEFAULT_ENUMERATION_LIMIT)
}

pub fn enumerate_partitions_bounded(n: usize, limit: usize) -> Result<Vec<Partition>> {
    if n > limit {
        return Err(Error::ResourceLimit {
            what: "partition enumeration size",
            limit,
            got: n,
        });
    }
    Ok(PartitionsOf::new(n).collect())
}

/// Fibers of a map on the partitions of `n`, keyed by image.
pub type Fibers = BTreeMap<Partition, Vec<Partition>>;

/// Groups the partitions of `n` by `Q(P)`. Members keep enumeration order.
pub fn q_fibers(n: usize) -> Result<Fibers> {
    q_fibers_with(n, DEFAULT_ENUMERATION_LIMIT, q_map)
}

/// Like [`q_fibers`] but with a caller supplied `Q`, e.g. the sampling oracle.
pub fn q_fibers_with(n: usize, limit: usize, mut image: impl FnMut(&Partition) -> Result<Partition>) -> Result<Fibers> {
    let mut fibers = Fibers::new();
    for part in enumerate_partitions_bounded(n, limit)? {
        let key = image(&part)?;
        fibers.entry(key).or_default().push(part);
    }
    Ok(fibers)
}

/// Box side lengths `s_i = q_i - q_{i+1} - 1`, and `s_k = q_k` for the last part.
pub fn box_dims(q: &Partition) -> Result<Vec<usize>> {
    if !q.is_stable() {
        return Err(Error::NotStable(q.clone()));
    }
    let parts = q.parts();
    Ok(parts
        .iter()
        .enumerate()
        .map(|(i, &x)| match parts.get(i + 1) {
            Some(&next) => x - next - 1,
            None => x,
        })
        .collect())
}

/// `counts[m]` = number of index tuples `1 <= i_j <= s_j` with `sum i_j = m`.
pub fn box_grade_counts(dims: &[usize]) -> Vec<usize> {
    let mut counts = alloc::vec![1usize];
    for &s in dims {
        let mut next = alloc::vec![0usize; counts.len() + s];
        for (m, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for i in 1..=s {
                next[m + i] += c;
            }
        }
        counts = next;
    }
    counts
}

/// `counts[m]` = number of members with exactly `m` parts.
pub fn part_count_histogram(fiber: &[Partition]) -> Vec<usize> {
    let longest = fiber.iter().map(Partition::len).max().unwrap_or(0);
    let mut counts = alloc::vec![0usize; longest + 1];
    for member in fiber {
        counts[member.len()] += 1;
    }
    counts
}

fn trim(mut v: Vec<usize>) -> Vec<usize> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxReport {
    pub q: Partition,
    pub dims: Vec<usize>,
    pub predicted: usize,
    pub fiber: Vec<Partition>,
    pub cardinality_ok: bool,
    pub part_count_ok: bool,
    /// For `Q = (u, u - r)`: whether the fiber has `(u - r)(r - 1)` members.
    pub two_part_ok: Option<bool>,
}

impl BoxReport {
    pub fn new(q: Partition, fiber: Vec<Partition>) -> Result<Self> {
        let dims = box_dims(&q)?;
        let predicted = dims.iter().product();
        let cardinality_ok = fiber.len() == predicted;
        let part_count_ok = trim(box_grade_counts(&dims)) == trim(part_count_histogram(&fiber));
        let two_part_ok = match *q.parts() {
            [u, v] => {
                let r = u - v;
                Some(fiber.len() == v * (r - 1))
            }
            _ => None,
        };
        Ok(BoxReport {
            q,
            dims,
            predicted,
            fiber,
            cardinality_ok,
            part_count_ok,
            two_part_ok,
        })
    }

    pub fn passed(&self) -> bool {
        self.cardinality_ok && self.part_count_ok && self.two_part_ok != Some(false)
    }
}

/// One report per stable partition of `n`, largest key first.
pub fn check_box(n: usize) -> Result<Vec<BoxReport>> {
    check_box_fibers(q_fibers(n)?)
}

pub fn check_box_fibers(fibers: Fibers) -> Result<Vec<BoxReport>> {
    fibers
        .into_iter()
        .rev()
        .map(|(q, fiber)| BoxReport::new(q, fiber))
        .collect()
}
