//! Linear-algebra ground truth for `Q(P)`.
//!
//! The centralizer of `J_P` is spanned by block matrices with ones on a single
//! diagonal. Random combinations whose leading coefficient matrices on each
//! group of equal blocks are strictly upper triangular are nilpotent; their
//! Jordan types are bounded above by `Q(P)` and reach it generically.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, DEFAULT_PRIME};
use crate::matrix::{jordan_matrix, Matrix};
use crate::oblak::q_map;
use crate::partition::{Dominance, Partition};

pub const DEFAULT_SAMPLES: usize = 8;
pub const DEFAULT_SEED: u64 = 0x4a43_0001;
pub const BRUTEFORCE_LIMIT: usize = 16;

/// One centralizer basis element: ones on diagonal `shift` of block `(row, col)`,
/// counted from the first diagonal that commutes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub block_row: usize,
    pub block_col: usize,
    pub shift: usize,
}

#[derive(Clone, Debug)]
pub struct CentralizerBasis {
    pub partition: Partition,
    pub elements: Vec<BasisElement>,
    offsets: Vec<usize>,
}

impl CentralizerBasis {
    pub fn new(partition: &Partition) -> Self {
        let parts = partition.parts();
        let mut offsets = Vec::with_capacity(parts.len());
        let mut acc = 0;
        for &p in parts {
            offsets.push(acc);
            acc += p;
        }
        let mut elements = Vec::new();
        for (i, &a) in parts.iter().enumerate() {
            for (j, &b) in parts.iter().enumerate() {
                for shift in 0..a.min(b) {
                    elements.push(BasisElement {
                        block_row: i,
                        block_col: j,
                        shift,
                    });
                }
            }
        }
        CentralizerBasis {
            partition: partition.clone(),
            elements,
            offsets,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Cells `(row, col)` of the full matrix where `element` has a one.
    pub fn support(&self, element: &BasisElement) -> impl Iterator<Item = (usize, usize)> + '_ {
        let parts = self.partition.parts();
        let (a, b) = (parts[element.block_row], parts[element.block_col]);
        // block X satisfies J_a X = X J_b iff X[r][c] depends only on c - r
        // and vanishes below diagonal max(0, b - a)
        let diag = b.saturating_sub(a) + element.shift;
        let (r0, c0) = (self.offsets[element.block_row], self.offsets[element.block_col]);
        (0..a)
            .filter(move |r| r + diag < b)
            .map(move |r| (r0 + r, c0 + r + diag))
    }

    pub fn to_matrix<K: Field>(&self, field: K, element: &BasisElement) -> Matrix<K> {
        let n = self.partition.total();
        let mut m = Matrix::zeros(field, n, n);
        for (r, c) in self.support(element) {
            let one = m.field().one();
            m.set(r, c, one);
        }
        m
    }

    /// Whether `element` carries a free coefficient in a nilpotent combination.
    /// Identity-like elements between equal blocks are allowed only above the diagonal.
    pub fn is_nilpotent_direction(&self, element: &BasisElement) -> bool {
        let parts = self.partition.parts();
        let same_size = parts[element.block_row] == parts[element.block_col];
        !(same_size && element.shift == 0) || element.block_row < element.block_col
    }
}

/// Dimension of `{X : J_P X = X J_P}` from the `n^2 x n^2` linear system.
pub fn centralizer_dim_bruteforce<K: Field>(field: K, partition: &Partition) -> Result<usize> {
    let n = partition.total();
    if n > BRUTEFORCE_LIMIT {
        return Err(Error::ResourceLimit {
            what: "brute-force centralizer size",
            limit: BRUTEFORCE_LIMIT,
            got: n,
        });
    }
    let j = jordan_matrix(field.clone(), partition);
    let mut system = Matrix::zeros(field.clone(), n * n, n * n);
    let var = |r: usize, c: usize| r * n + c;
    for r in 0..n {
        for c in 0..n {
            let eq = var(r, c);
            // (J X)[r][c] = sum_k J[r][k] X[k][c]
            for k in 0..n {
                let jrk = j.get(r, k);
                if !field.is_zero(jrk) {
                    let cur = system.get(eq, var(k, c)).clone();
                    system.set(eq, var(k, c), field.add(&cur, jrk));
                }
                // (X J)[r][c] = sum_k X[r][k] J[k][c]
                let jkc = j.get(k, c);
                if !field.is_zero(jkc) {
                    let cur = system.get(eq, var(r, k)).clone();
                    system.set(eq, var(r, k), field.sub(&cur, jkc));
                }
            }
        }
    }
    Ok(n * n - system.rank())
}

/// A random nilpotent element of the centralizer of `J_P`.
#[derive(Clone, Debug)]
pub struct NilpotentSample {
    pub matrix: Matrix<PrimeField>,
    pub seed: u64,
    pub jordan_type: Partition,
}

/// Draws uniform coefficients on every nilpotent direction of the centralizer
/// basis, then checks commutation and `B^n = 0` before returning.
pub fn sample_nilpotent_commuting(partition: &Partition, field: PrimeField, seed: u64) -> Result<NilpotentSample> {
    let n = partition.total();
    if field.modulus() <= n as u64 {
        return Err(Error::CharacteristicTooSmall { q: field.modulus(), n });
    }
    let basis = CentralizerBasis::new(partition);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = Matrix::zeros(field, n, n);
    for element in &basis.elements {
        if !basis.is_nilpotent_direction(element) {
            continue;
        }
        let coef = rng.random_range(0..field.modulus());
        for (r, c) in basis.support(element) {
            b.set(r, c, coef);
        }
    }
    let j = jordan_matrix(field, partition);
    if !b.commutes_with(&j)? {
        return Err(Error::CommutationGuard {
            partition: partition.clone(),
            seed,
        });
    }
    if !b.is_nilpotent()? {
        return Err(Error::NilpotencyGuard {
            partition: partition.clone(),
            seed,
        });
    }
    let jordan_type = b.jordan_type()?;
    Ok(NilpotentSample {
        matrix: b,
        seed,
        jordan_type,
    })
}

/// Seed of the `index`-th sample under a master seed (splitmix64 finalizer).
pub fn derive_seed(master: u64, index: usize) -> u64 {
    let mut z = master.wrapping_add((index as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub prime: u64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            prime: DEFAULT_PRIME,
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
        }
    }
}

impl OracleConfig {
    fn field_for(&self, n: usize) -> Result<PrimeField> {
        if self.samples == 0 {
            return Err(Error::NoSamples);
        }
        let field = PrimeField::new(self.prime)?;
        if self.prime <= n as u64 {
            return Err(Error::CharacteristicTooSmall { q: self.prime, n });
        }
        Ok(field)
    }
}

/// Sampled Jordan types, in sample order.
pub fn sample_types(partition: &Partition, config: &OracleConfig) -> Result<Vec<NilpotentSample>> {
    let field = config.field_for(partition.total())?;
    (0..config.samples)
        .map(|i| sample_nilpotent_commuting(partition, field, derive_seed(config.seed, i)))
        .collect()
}

/// Dominance maximum of types that must form a chain under the running maximum.
pub fn dominance_max<'a>(types: impl IntoIterator<Item = &'a Partition>) -> Result<Option<Partition>> {
    let mut best: Option<Partition> = None;
    for t in types {
        best = Some(match best {
            None => t.clone(),
            Some(cur) => match t.dominance_cmp(&cur)? {
                Dominance::Greater => t.clone(),
                Dominance::Less | Dominance::Equal => cur,
                Dominance::Incomparable => return Err(Error::IncomparableSamples { a: cur, b: t.clone() }),
            },
        });
    }
    Ok(best)
}

/// Estimate of the generic Jordan type in the nilpotent commutator of `J_P`.
pub fn generic_commuting_type(partition: &Partition, config: &OracleConfig) -> Result<Partition> {
    let samples = sample_types(partition, config)?;
    let max = dominance_max(samples.iter().map(|s| &s.jordan_type))?;
    Ok(max.expect("at least one sample"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleRecord {
    pub seed: u64,
    pub jordan_type: Partition,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub partition: Partition,
    pub oblak: Partition,
    pub oracle: Partition,
    pub agree: bool,
    pub samples: Vec<SampleRecord>,
    /// Indices of samples whose type is not dominated by the Oblak result.
    pub undominated: Vec<usize>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.agree && self.undominated.is_empty()
    }
}

/// Compares the Oblak process with the sampling oracle for one partition.
pub fn verify_q(partition: &Partition, config: &OracleConfig) -> Result<VerifyReport> {
    let oblak = q_map(partition)?;
    let drawn = sample_types(partition, config)?;
    let mut undominated = Vec::new();
    for (i, s) in drawn.iter().enumerate() {
        if !oblak.dominance_cmp(&s.jordan_type)?.dominates() {
            undominated.push(i);
        }
    }
    let oracle = dominance_max(drawn.iter().map(|s| &s.jordan_type))?.expect("at least one sample");
    let samples = drawn
        .into_iter()
        .map(|s| SampleRecord {
            seed: s.seed,
            jordan_type: s.jordan_type,
        })
        .collect();
    Ok(VerifyReport {
        partition: partition.clone(),
        agree: oracle == oblak,
        oblak,
        oracle,
        samples,
        undominated,
    })
}

/// Larger modulus tried by [`verify_q_escalating`] once extra samples do not help.
pub const ESCALATION_PRIME: u64 = 2_147_483_647;

/// Like [`verify_q`], but a sampled maximum that falls short of the Oblak
/// result is retried up to `rounds` times, quadrupling the sample count and
/// switching to [`ESCALATION_PRIME`] from the second retry on. Returns the
/// final report and the configuration that produced it. An undominated
/// sample is never retried since more samples cannot remove it.
pub fn verify_q_escalating(
    partition: &Partition,
    config: &OracleConfig,
    rounds: usize,
) -> Result<(VerifyReport, OracleConfig)> {
    let mut cfg = *config;
    let mut report = verify_q(partition, &cfg)?;
    for round in 0..rounds {
        if report.agree || !report.undominated.is_empty() {
            break;
        }
        cfg.samples = cfg.samples.saturating_mul(4);
        if round >= 1 {
            cfg.prime = ESCALATION_PRIME;
        }
        report = verify_q(partition, &cfg)?;
    }
    Ok((report, cfg))
}
