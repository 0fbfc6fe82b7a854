//! Maximum unions of `k` chains in `D_P` and Gansner's partition `lambda(D_P)`.
//!
//! Every vertex is split into an in/out pair joined by a unit-capacity arc
//! of cost -1 and an uncapacitated bypass of cost 0. Each unit of flow from
//! source to sink is one chain; successive shortest paths yields the minimum
//! cost for every flow value, so `c_k` is minus the cost after `k` units.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::poset::PosetDp;

pub const DEFAULT_VERTEX_LIMIT: usize = 64;

const INF_CAP: i64 = i64::MAX / 4;
const INF_COST: i64 = i64::MAX / 4;

struct Arc {
    to: usize,
    cap: i64,
    cost: i64,
}

struct FlowNetwork {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        FlowNetwork {
            arcs: Vec::new(),
            out: (0..nodes).map(|_| Vec::new()).collect(),
        }
    }

    fn link(&mut self, from: usize, to: usize, cap: i64, cost: i64) {
        self.out[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap, cost });
        self.out[to].push(self.arcs.len());
        self.arcs.push(Arc {
            to: from,
            cap: 0,
            cost: -cost,
        });
    }

    /// Sends one unit along a cheapest residual path (Bellman-Ford), returning its cost.
    fn augment_unit(&mut self, source: usize, sink: usize) -> Option<i64> {
        let nodes = self.out.len();
        let mut dist = alloc::vec![INF_COST; nodes];
        let mut via = alloc::vec![usize::MAX; nodes];
        dist[source] = 0;
        for _ in 0..nodes {
            let mut changed = false;
            for v in 0..nodes {
                if dist[v] == INF_COST {
                    continue;
                }
                for &a in &self.out[v] {
                    let arc = &self.arcs[a];
                    if arc.cap > 0 && dist[v] + arc.cost < dist[arc.to] {
                        dist[arc.to] = dist[v] + arc.cost;
                        via[arc.to] = a;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        if dist[sink] == INF_COST {
            return None;
        }
        let mut v = sink;
        while v != source {
            let a = via[v];
            self.arcs[a].cap -= 1;
            self.arcs[a ^ 1].cap += 1;
            v = self.arcs[a ^ 1].to;
        }
        Some(dist[sink])
    }
}

/// `c_k` for `k = 1..`, stopping once every vertex is covered.
pub fn max_chain_unions(dp: &PosetDp, vertex_limit: usize) -> Result<Vec<usize>> {
    let n = dp.vertex_count();
    if n > vertex_limit {
        return Err(Error::ResourceLimit {
            what: "poset vertex count",
            limit: vertex_limit,
            got: n,
        });
    }
    let (source, sink) = (0, 1);
    let vin = |v: usize| 2 + 2 * v;
    let vout = |v: usize| 3 + 2 * v;
    let mut net = FlowNetwork::new(2 * n + 2);
    for v in 0..n {
        net.link(source, vin(v), INF_CAP, 0);
        net.link(vin(v), vout(v), 1, -1);
        net.link(vin(v), vout(v), INF_CAP, 0);
        net.link(vout(v), sink, INF_CAP, 0);
    }
    for e in dp.edges() {
        net.link(vout(e.from), vin(e.to), INF_CAP, 0);
    }
    let mut covered = 0usize;
    let mut c = Vec::new();
    while covered < n {
        let cost = net
            .augment_unit(source, sink)
            .expect("source-sink bypass always has capacity");
        covered += (-cost) as usize;
        c.push(covered);
    }
    Ok(c)
}

/// Gansner's `lambda(D_P)`: successive differences of the maximal chain-union sizes.
pub fn greene_kleitman_lambda(dp: &PosetDp) -> Result<Partition> {
    greene_kleitman_lambda_bounded(dp, DEFAULT_VERTEX_LIMIT)
}

pub fn greene_kleitman_lambda_bounded(dp: &PosetDp, vertex_limit: usize) -> Result<Partition> {
    let c = max_chain_unions(dp, vertex_limit)?;
    let mut prev = 0;
    let diffs: Vec<usize> = c
        .into_iter()
        .map(|ck| {
            let d = ck - prev;
            prev = ck;
            d
        })
        .collect();
    Ok(Partition::from_sorted(diffs).expect("Greene-Kleitman differences form a partition"))
}
