//! Oblak's recursive process: peel off a maximum U-chain, shrink the
//! partition accordingly, and repeat. The removed chain sizes form `Q(P)`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::poset::{max_u_chains, u_cardinality};

pub const DEFAULT_TRACE_LIMIT: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OblakStep {
    pub chosen_p: usize,
    pub chain_size: usize,
    pub residual: Partition,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OblakTrace {
    pub input: Partition,
    pub steps: Vec<OblakStep>,
    pub result: Partition,
}

/// Removes `U_P(p)`: parts `p` and `p - 1` disappear, longer parts lose two
/// cells, shorter parts stay.
pub fn oblak_step(partition: &Partition, p: usize) -> Result<(usize, Partition)> {
    let size = u_cardinality(partition, p)?;
    let residual = partition
        .parts()
        .iter()
        .filter_map(|&x| match x {
            x if x > p => Some(x - 2),
            x if x + 1 < p => Some(x),
            _ => None,
        })
        .collect();
    // Partition::new drops parts that reached zero
    Ok((size, Partition::new(residual)))
}

/// Runs the process choosing the smallest maximizing part size at every step.
pub fn oblak_process(partition: &Partition) -> Result<OblakTrace> {
    if partition.is_empty() {
        return Err(Error::EmptyPartition);
    }
    let mut steps = Vec::new();
    let mut current = partition.clone();
    while !current.is_empty() {
        let (choices, _) = max_u_chains(&current)?;
        let chosen_p = choices[0];
        let (chain_size, residual) = oblak_step(&current, chosen_p)?;
        steps.push(OblakStep {
            chosen_p,
            chain_size,
            residual: residual.clone(),
        });
        current = residual;
    }
    let result = Partition::from_sorted(steps.iter().map(|s| s.chain_size).collect())
        .expect("chain sizes are weakly decreasing");
    Ok(OblakTrace {
        input: partition.clone(),
        steps,
        result,
    })
}

/// `Q(P)`, the generic commuting Jordan type.
pub fn q_map(partition: &Partition) -> Result<Partition> {
    oblak_process(partition).map(|t| t.result)
}

/// Follows every sequence of maximizing choices and collects the distinct results.
pub fn explore_all_tie_choices(partition: &Partition) -> Result<BTreeSet<Partition>> {
    explore_all_tie_choices_bounded(partition, DEFAULT_TRACE_LIMIT)
}

pub fn explore_all_tie_choices_bounded(partition: &Partition, trace_limit: usize) -> Result<BTreeSet<Partition>> {
    if partition.is_empty() {
        return Err(Error::EmptyPartition);
    }
    let mut results = BTreeSet::new();
    let mut traces = 0usize;
    let mut prefix = Vec::new();
    explore(partition, &mut prefix, &mut results, &mut traces, trace_limit)?;
    Ok(results)
}

fn explore(
    current: &Partition,
    prefix: &mut Vec<usize>,
    results: &mut BTreeSet<Partition>,
    traces: &mut usize,
    limit: usize,
) -> Result<()> {
    if current.is_empty() {
        *traces += 1;
        if *traces > limit {
            return Err(Error::ResourceLimit {
                what: "explored Oblak traces",
                limit,
                got: *traces,
            });
        }
        results.insert(Partition::new(prefix.clone()));
        return Ok(());
    }
    let (choices, _) = max_u_chains(current)?;
    for p in choices {
        let (size, residual) = oblak_step(current, p)?;
        prefix.push(size);
        explore(&residual, prefix, results, traces, limit)?;
        prefix.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn step_examples() {
        let big = p(&[6, 4, 4, 3, 3, 2, 2, 1]);
        assert_eq!(oblak_step(&big, 4), Ok((16, p(&[4, 2, 2, 1]))));
        assert_eq!(oblak_step(&big, 3), Ok((16, p(&[4, 2, 2, 1]))));
        assert_eq!(oblak_step(&p(&[4, 2, 2, 1]), 2), Ok((7, p(&[2]))));
        assert!(matches!(oblak_step(&big, 5), Err(Error::PartAbsent { p: 5, .. })));
    }

    #[test]
    fn step_drops_emptied_parts() {
        // parts of size 2 above p = 1 shrink to nothing
        assert_eq!(oblak_step(&p(&[2, 1]), 1), Ok((3, Partition::empty())));
    }

    #[test]
    fn process_examples() {
        let trace = oblak_process(&p(&[6, 4, 4, 3, 3, 2, 2, 1])).unwrap();
        assert_eq!(trace.result, p(&[16, 7, 2]));
        let sizes: Vec<_> = trace.steps.iter().map(|s| s.chain_size).collect();
        assert_eq!(sizes, [16, 7, 2]);
        assert_eq!(trace.steps[0].chosen_p, 3);
        assert_eq!(trace.steps[0].residual, p(&[4, 2, 2, 1]));
        assert_eq!(trace.steps[1].residual, p(&[2]));
        assert!(trace.steps[2].residual.is_empty());

        assert_eq!(q_map(&p(&[3, 1])), Ok(p(&[3, 1])));
        assert_eq!(q_map(&Partition::ones(7)), Ok(Partition::single(7)));
        assert_eq!(q_map(&p(&[2, 2])), Ok(Partition::single(4)));
        assert_eq!(q_map(&Partition::empty()), Err(Error::EmptyPartition));
    }

    #[test]
    fn tie_exploration() {
        let all = explore_all_tie_choices(&p(&[6, 4, 4, 3, 3, 2, 2, 1])).unwrap();
        assert_eq!(all.into_iter().collect::<Vec<_>>(), [p(&[16, 7, 2])]);
        let all = explore_all_tie_choices(&p(&[8])).unwrap();
        assert_eq!(all.len(), 1);
        assert!(matches!(
            explore_all_tie_choices_bounded(&p(&[6, 4, 4, 3, 3, 2, 2, 1]), 1),
            Err(Error::ResourceLimit { .. })
        ));
    }
}
