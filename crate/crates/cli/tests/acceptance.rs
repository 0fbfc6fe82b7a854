//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails or overruns its time budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cjt_core::chains::greene_kleitman_lambda;
use cjt_core::fibers::{check_box, enumerate_partitions};
use cjt_core::field::{PrimeField, Rationals, DEFAULT_PRIME};
use cjt_core::matrix::{jordan_matrix, Matrix};
use cjt_core::oblak::{explore_all_tie_choices, oblak_step};
use cjt_core::oracle::{
    centralizer_dim_bruteforce, sample_nilpotent_commuting, verify_q, CentralizerBasis, OracleConfig,
};
use cjt_core::poset::{max_u_chains, u_cardinality, PosetDp};
use cjt_core::verify::check_properties;
use cjt_core::{almost_rectangular, oblak_process, q_map, Partition};

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn part(s: &str) -> Partition {
    s.parse().expect("literal partition")
}

fn all_up_to(n: usize) -> Vec<Partition> {
    (1..=n)
        .flat_map(|m| enumerate_partitions(m).expect("small n"))
        .collect()
}

fn fp() -> PrimeField {
    PrimeField::new(DEFAULT_PRIME).expect("default prime")
}

fn worked_example() -> Result<String, String> {
    let p = part("6,4^2,3^2,2^2,1");
    let trace = oblak_process(&p).map_err(|e| e.to_string())?;
    ensure(trace.result == part("16,7,2"), || format!("Q = ({})", trace.result))?;
    let sizes: Vec<_> = trace.steps.iter().map(|s| s.chain_size).collect();
    ensure(sizes == [16, 7, 2], || format!("step sizes {sizes:?}"))?;
    let residuals: Vec<_> = trace.steps.iter().map(|s| s.residual.clone()).collect();
    ensure(residuals[0] == part("4,2^2,1") && residuals[1] == part("2"), || {
        format!("residuals ({}), ({})", residuals[0], residuals[1])
    })?;
    // both maximal first choices lead to the same residual and result
    for first in [4, 3] {
        let (size, residual) = oblak_step(&p, first).map_err(|e| e.to_string())?;
        ensure(size == 16 && residual == part("4,2^2,1"), || {
            format!("p={first}: {size}, ({residual})")
        })?;
        let q = q_map(&residual).map_err(|e| e.to_string())?;
        ensure(q == part("7,2"), || format!("p={first}: tail ({q})"))?;
    }
    let every = explore_all_tie_choices(&p).map_err(|e| e.to_string())?;
    ensure(every.len() == 1, || {
        format!("{} distinct results across ties", every.len())
    })?;
    Ok("Q = (16,7,2), steps 16/7/2, ties p=4 and p=3 agree".into())
}

fn u_values() -> Result<String, String> {
    let p = part("6,4^2,3^2,2^2,1");
    let expected = [(6, 6), (4, 16), (3, 16), (2, 15), (1, 15)];
    for (q, want) in expected {
        let got = u_cardinality(&p, q).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("u({q}) = {got}, expected {want}"))?;
        let dp = PosetDp::build(&p).map_err(|e| e.to_string())?;
        let chain = dp.u_chain(q).map_err(|e| e.to_string())?;
        ensure(chain.vertices.len() == want, || {
            format!("U-chain for {q} has {} vertices", chain.vertices.len())
        })?;
    }
    let (argmax, best) = max_u_chains(&p).map_err(|e| e.to_string())?;
    ensure(argmax == [3, 4] && best == 16, || format!("max at {argmax:?} = {best}"))?;
    Ok("u = 6,16,16,15,15 for p = 6,4,3,2,1".into())
}

fn jordan_types() -> Result<String, String> {
    for n in 1..=30 {
        let j = jordan_matrix(fp(), &Partition::single(n));
        let mut power = j.clone();
        for k in 1..=n {
            let ty = power.jordan_type().map_err(|e| e.to_string())?;
            let want = almost_rectangular(n, k).map_err(|e| e.to_string())?;
            ensure(ty == want, || format!("J_{n}^{k}: ({ty}) != ({want})"))?;
            power = power.mul(&j).map_err(|e| e.to_string())?;
        }
        ensure(power.is_zero(), || format!("J_{n}^{} nonzero", n + 1))?;
    }
    let mut count = 0;
    for p in all_up_to(12) {
        let a = jordan_matrix(fp(), &p).jordan_type().map_err(|e| e.to_string())?;
        let b = jordan_matrix(Rationals, &p).jordan_type().map_err(|e| e.to_string())?;
        ensure(a == p && b == p, || format!("round trip of ({p}) gave ({a}) / ({b})"))?;
        count += 1;
    }
    Ok(format!("J_n^k types for n <= 30; {count} round trips for n <= 12"))
}

fn theorem_suite() -> Result<String, String> {
    let mut checked = 0;
    for n in 1..=14 {
        let report = check_properties(n, 12).map_err(|e| e.to_string())?;
        ensure(report.passed(), || {
            let v = &report.violations[0];
            format!("n = {n}: {} fails for ({})", v.property.name(), v.partition)
        })?;
        checked += report.checked;
    }
    Ok(format!("{checked} partitions, n <= 14, ties explored for n <= 12"))
}

fn oracle_agreement() -> Result<String, String> {
    let config = OracleConfig {
        prime: DEFAULT_PRIME,
        samples: 8,
        seed: 0x4a43_0001,
    };
    let mut count = 0;
    for p in all_up_to(10) {
        let r = verify_q(&p, &config).map_err(|e| e.to_string())?;
        ensure(r.agree, || {
            format!("({p}): oblak ({}) vs oracle ({})", r.oblak, r.oracle)
        })?;
        ensure(r.undominated.is_empty(), || {
            format!("({p}): undominated samples {:?}", r.undominated)
        })?;
        ensure(r.samples.len() == 8, || format!("({p}): {} samples", r.samples.len()))?;
        count += 1;
    }
    Ok(format!(
        "{count} partitions, q = {DEFAULT_PRIME}, 8 samples, seed 0x4a430001"
    ))
}

fn centralizer() -> Result<String, String> {
    let config = OracleConfig::default();
    let mut count = 0;
    for p in all_up_to(10) {
        let n = p.total();
        let basis = CentralizerBasis::new(&p);
        let dim = centralizer_dim_bruteforce(fp(), &p).map_err(|e| e.to_string())?;
        ensure(basis.len() == dim, || {
            format!("({p}): basis {} vs kernel {dim}", basis.len())
        })?;
        let j = jordan_matrix(fp(), &p);
        for e in &basis.elements {
            let b: Matrix<PrimeField> = basis.to_matrix(fp(), e);
            ensure(b.commutes_with(&j).map_err(|e| e.to_string())?, || {
                format!("({p}): {e:?} does not commute")
            })?;
            if basis.is_nilpotent_direction(e) {
                let zero = b.pow(n as u64).map_err(|e| e.to_string())?.is_zero();
                ensure(zero, || format!("({p}): {e:?} has B^n != 0"))?;
            }
        }
        for i in 0..config.samples {
            let seed = cjt_core::oracle::derive_seed(config.seed, i);
            let s = sample_nilpotent_commuting(&p, fp(), seed).map_err(|e| e.to_string())?;
            ensure(s.matrix.commutes_with(&j).map_err(|e| e.to_string())?, || {
                format!("({p}) sample {i}")
            })?;
            let zero = s.matrix.pow(n as u64).map_err(|e| e.to_string())?.is_zero();
            ensure(zero, || format!("({p}) sample {i} has B^n != 0"))?;
        }
        count += 1;
    }
    Ok(format!(
        "{count} partitions, basis = kernel dimension, commuting and nilpotent"
    ))
}

fn gansner_lambda() -> Result<String, String> {
    let mut count = 0;
    for p in all_up_to(10) {
        let dp = PosetDp::build(&p).map_err(|e| e.to_string())?;
        let lambda = greene_kleitman_lambda(&dp).map_err(|e| e.to_string())?;
        let q = q_map(&p).map_err(|e| e.to_string())?;
        let cmp = lambda.dominance_cmp(&q).map_err(|e| e.to_string())?;
        ensure(cmp.dominates(), || {
            format!("({p}): lambda ({lambda}) does not dominate Q ({q})")
        })?;
        count += 1;
    }
    let p = part("3,1");
    let lambda = greene_kleitman_lambda(&PosetDp::build(&p).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(lambda == part("3,1"), || format!("lambda(3,1) = ({lambda})"))?;
    Ok(format!("{count} partitions, lambda(3,1) = (3,1)"))
}

fn box_sweep() -> Result<String, String> {
    let mut fibers = 0;
    let mut two_part = 0;
    for n in 1..=16 {
        for r in check_box(n).map_err(|e| e.to_string())? {
            ensure(r.passed(), || {
                format!(
                    "n = {n}, Q = ({}): predicted {}, observed {}, part counts ok = {}, two-part = {:?}",
                    r.q,
                    r.predicted,
                    r.fiber.len(),
                    r.part_count_ok,
                    r.two_part_ok
                )
            })?;
            fibers += 1;
            if r.two_part_ok.is_some() {
                two_part += 1;
            }
        }
    }
    Ok(format!(
        "{fibers} fibers for n <= 16, {two_part} with the two-part count checked"
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, Check, Duration); 8] = [
        ("worked example", worked_example, Duration::from_secs(1)),
        ("u-values of the worked example", u_values, Duration::from_secs(1)),
        (
            "jordan types of powers and round trips",
            jordan_types,
            Duration::from_secs(30),
        ),
        ("property suite n <= 14", theorem_suite, Duration::from_secs(300)),
        ("oracle agreement n <= 10", oracle_agreement, Duration::from_secs(600)),
        ("centralizer basis n <= 10", centralizer, Duration::from_secs(600)),
        ("lambda dominates Q n <= 10", gansner_lambda, Duration::from_secs(600)),
        ("box sweep n <= 16", box_sweep, Duration::from_secs(120)),
    ];
    let mut failures = 0;
    for (i, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let (status, detail) = match result {
            Ok(_) if elapsed > *budget => ("FAIL", format!("took {elapsed:.2?}, budget {budget:?}")),
            Ok(detail) => ("PASS", detail),
            Err(detail) => ("FAIL", detail),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!("[{status}] {}. {name} ({elapsed:.2?} / {budget:?}): {detail}", i + 1);
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
