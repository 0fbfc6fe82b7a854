//! Exhaustive property sweep of the Oblak map over all partitions of `n`.

use alloc::vec::Vec;

use crate::error::Result;
use crate::fibers::enumerate_partitions;
use crate::oblak::{explore_all_tie_choices, q_map};
use crate::partition::Partition;
use crate::poset::max_u_chains;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    /// `Q(P) = P` exactly when parts differ pairwise by at least 2.
    StableFixedPoints,
    Idempotent,
    /// `Q(P)` has `r_P` parts.
    PartCount,
    /// `Q(P)` dominates `P`.
    Dominance,
    /// `Q(P) = (n)` exactly when `P` is almost rectangular.
    AlmostRectangular,
    ImageStable,
    /// Largest part of `Q(P)` is the largest U-chain.
    LargestPart,
    TieIndependence,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::StableFixedPoints => "stable_fixed_points",
            Property::Idempotent => "idempotent",
            Property::PartCount => "part_count",
            Property::Dominance => "dominance",
            Property::AlmostRectangular => "almost_rectangular",
            Property::ImageStable => "image_stable",
            Property::LargestPart => "largest_part",
            Property::TieIndependence => "tie_independence",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub partition: Partition,
    pub property: Property,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PropertyReport {
    pub n: usize,
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Properties violated by a single partition.
pub fn check_partition(partition: &Partition, with_ties: bool) -> Result<Vec<Property>> {
    let n = partition.total();
    let q = q_map(partition)?;
    let mut failed = Vec::new();
    let mut check = |ok: bool, prop| {
        if !ok {
            failed.push(prop);
        }
    };
    check((q == *partition) == partition.is_stable(), Property::StableFixedPoints);
    check(q_map(&q)? == q, Property::Idempotent);
    check(q.len() == partition.ar_count(), Property::PartCount);
    check(q.dominance_cmp(partition)?.dominates(), Property::Dominance);
    check(
        (q == Partition::single(n)) == partition.is_almost_rectangular(),
        Property::AlmostRectangular,
    );
    check(q.is_stable(), Property::ImageStable);
    check(q.largest() == Some(max_u_chains(partition)?.1), Property::LargestPart);
    if with_ties {
        let all = explore_all_tie_choices(partition)?;
        check(all.len() == 1 && all.contains(&q), Property::TieIndependence);
    }
    Ok(failed)
}

/// Checks every partition of `n`; tie exploration runs when `n <= tie_bound`.
pub fn check_properties(n: usize, tie_bound: usize) -> Result<PropertyReport> {
    let mut report = PropertyReport {
        n,
        ..Default::default()
    };
    if n == 0 {
        return Ok(report);
    }
    for partition in enumerate_partitions(n)? {
        for property in check_partition(&partition, n <= tie_bound)? {
            report.violations.push(Violation {
                partition: partition.clone(),
                property,
            });
        }
        report.checked += 1;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweeps_pass() {
        for n in 1..=8 {
            let report = check_properties(n, 8).unwrap();
            assert!(report.passed(), "{report:?}");
        }
        assert_eq!(check_properties(6, 0).unwrap().checked, 11);
    }
}
