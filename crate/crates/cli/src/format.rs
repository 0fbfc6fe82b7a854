//! JSON documents written by the CLI. Every document carries a `schema` tag.

use cjt_core::fibers::BoxReport;
use cjt_core::oblak::OblakTrace;
use cjt_core::oracle::VerifyReport;
use cjt_core::poset::{max_u_chains, PosetDp};
use cjt_core::verify::PropertyReport;
use cjt_core::Partition;
use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "cjt/1";

/// Partitions serialize as arrays of parts, largest first.
pub fn parts(p: &Partition) -> Vec<usize> {
    p.parts().to_vec()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QDoc {
    pub schema: String,
    pub partition: Vec<usize>,
    pub q: Vec<usize>,
}

impl QDoc {
    pub fn new(p: &Partition, q: &Partition) -> Self {
        QDoc {
            schema: SCHEMA.into(),
            partition: parts(p),
            q: parts(q),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDoc {
    pub p: usize,
    pub size: usize,
    pub residual: Vec<usize>,
    /// Every part size whose U-chain was maximal at this step.
    pub maximizers: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDoc {
    pub schema: String,
    pub input: Vec<usize>,
    pub steps: Vec<StepDoc>,
    pub result: Vec<usize>,
}

impl TraceDoc {
    pub fn new(trace: &OblakTrace) -> Self {
        let mut current = trace.input.clone();
        let steps = trace
            .steps
            .iter()
            .map(|s| {
                let maximizers = max_u_chains(&current).map(|m| m.0).unwrap_or_default();
                current = s.residual.clone();
                StepDoc {
                    p: s.chosen_p,
                    size: s.chain_size,
                    residual: parts(&s.residual),
                    maximizers,
                }
            })
            .collect();
        TraceDoc {
            schema: SCHEMA.into(),
            input: parts(&trace.input),
            steps,
            result: parts(&trace.result),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDoc {
    pub id: usize,
    pub label: String,
    pub u: usize,
    pub p: usize,
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub from: usize,
    pub to: usize,
    pub family: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDoc {
    pub schema: String,
    pub partition: Vec<usize>,
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<EdgeDoc>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub highlight: Option<Vec<usize>>,
}

impl PosetDoc {
    pub fn new(dp: &PosetDp, highlight: Option<&[usize]>) -> Self {
        let vertices = dp
            .vertices()
            .iter()
            .enumerate()
            .map(|(id, v)| VertexDoc {
                id,
                label: v.to_string(),
                u: v.u,
                p: v.p,
                k: v.k,
            })
            .collect();
        let edges = dp
            .edges()
            .iter()
            .map(|e| EdgeDoc {
                from: e.from,
                to: e.to,
                family: e.family.name().into(),
            })
            .collect();
        PosetDoc {
            schema: SCHEMA.into(),
            partition: parts(dp.partition()),
            vertices,
            edges,
            highlight: highlight.map(<[usize]>::to_vec),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleDoc {
    pub seed: u64,
    #[serde(rename = "type")]
    pub jordan_type: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleDoc {
    pub partition: Vec<usize>,
    pub oblak: Vec<usize>,
    pub oracle: Vec<usize>,
    pub agree: bool,
    pub samples: Vec<SampleDoc>,
    /// Indices of samples whose type the Oblak result fails to dominate.
    pub undominated: Vec<usize>,
    /// Configuration actually used when the run escalated past the defaults.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub escalated: Option<EscalationDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EscalationDoc {
    pub prime: u64,
    pub samples: usize,
}

impl OracleDoc {
    pub fn new(r: &VerifyReport) -> Self {
        OracleDoc {
            partition: parts(&r.partition),
            oblak: parts(&r.oblak),
            oracle: parts(&r.oracle),
            agree: r.agree,
            samples: r
                .samples
                .iter()
                .map(|s| SampleDoc {
                    seed: s.seed,
                    jordan_type: parts(&s.jordan_type),
                })
                .collect(),
            undominated: r.undominated.clone(),
            escalated: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleRunDoc {
    pub schema: String,
    pub prime: u64,
    pub samples: usize,
    pub seed: u64,
    pub reports: Vec<OracleDoc>,
    pub all_agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxDoc {
    pub q: Vec<usize>,
    pub dims: Vec<usize>,
    pub predicted: usize,
    pub observed: usize,
    pub cardinality_ok: bool,
    pub part_count_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub two_part_ok: Option<bool>,
    pub fiber: Vec<Vec<usize>>,
}

impl BoxDoc {
    pub fn new(r: &BoxReport) -> Self {
        BoxDoc {
            q: parts(&r.q),
            dims: r.dims.clone(),
            predicted: r.predicted,
            observed: r.fiber.len(),
            cardinality_ok: r.cardinality_ok,
            part_count_ok: r.part_count_ok,
            two_part_ok: r.two_part_ok,
            fiber: r.fiber.iter().map(parts).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxRunDoc {
    pub schema: String,
    pub n: usize,
    pub reports: Vec<BoxDoc>,
    pub all_pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationDoc {
    pub partition: Vec<usize>,
    pub property: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDoc {
    pub schema: String,
    pub n: usize,
    pub checked: usize,
    pub violations: Vec<ViolationDoc>,
    pub passed: bool,
}

impl VerifyDoc {
    pub fn new(r: &PropertyReport) -> Self {
        VerifyDoc {
            schema: SCHEMA.into(),
            n: r.n,
            checked: r.checked,
            violations: r
                .violations
                .iter()
                .map(|v| ViolationDoc {
                    partition: parts(&v.partition),
                    property: v.property.name().into(),
                })
                .collect(),
            passed: r.passed(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cjt_core::oblak_process;

    #[test]
    fn trace_doc_shape() {
        let p: Partition = "6,4^2,3^2,2^2,1".parse().unwrap();
        let doc = TraceDoc::new(&oblak_process(&p).unwrap());
        let json = serde_json::to_value(&doc).unwrap();
        assert_eq!(json["schema"], SCHEMA);
        assert_eq!(json["result"], serde_json::json!([16, 7, 2]));
        assert_eq!(json["steps"][0]["size"], 16);
        assert_eq!(json["steps"][0]["residual"], serde_json::json!([4, 2, 2, 1]));
        assert_eq!(json["steps"][0]["maximizers"], serde_json::json!([3, 4]));
        let back: TraceDoc = serde_json::from_value(json).unwrap();
        assert_eq!(back, doc);
    }

    #[test]
    fn sample_type_field_is_named_type() {
        let s = SampleDoc {
            seed: 3,
            jordan_type: vec![2, 1],
        };
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"{"seed":3,"type":[2,1]}"#);
    }
}
