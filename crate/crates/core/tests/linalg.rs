use cjt_core::fibers::enumerate_partitions;
use cjt_core::field::{Field, PrimeField, Rationals, DEFAULT_PRIME};
use cjt_core::matrix::{jordan_matrix, jordan_power_rank, Matrix};
use cjt_core::partition::{almost_rectangular, Partition};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fp() -> PrimeField {
    PrimeField::new(DEFAULT_PRIME).unwrap()
}

fn all_up_to(n: usize) -> impl Iterator<Item = Partition> {
    (1..=n).flat_map(|m| enumerate_partitions(m).unwrap())
}

#[test]
fn jordan_type_round_trips_over_both_fields() {
    for p in all_up_to(12) {
        assert_eq!(jordan_matrix(fp(), &p).jordan_type().unwrap(), p);
        assert_eq!(jordan_matrix(Rationals, &p).jordan_type().unwrap(), p);
    }
}

fn check_power_ranks<K: Field>(field: K, n: usize) {
    let j = jordan_matrix(field.clone(), &Partition::single(n));
    let mut power = Matrix::identity(field, n);
    for k in 0..=n + 2 {
        assert_eq!(power.rank(), jordan_power_rank(n, k), "n={n} k={k}");
        if (1..=n).contains(&k) {
            assert_eq!(power.jordan_type().unwrap(), almost_rectangular(n, k).unwrap());
        }
        power = power.mul(&j).unwrap();
    }
}

#[test]
fn power_rank_formula_matches_elimination() {
    for n in 1..=30 {
        check_power_ranks(fp(), n);
        check_power_ranks(Rationals, n);
    }
}

#[test]
fn rank_of_zero_one_matrices_is_field_independent() {
    let big = PrimeField::new(1_048_583).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..100 {
        let n = rng.random_range(1..=12);
        let bits: Vec<bool> = (0..n * n).map(|_| rng.random_bool(0.4)).collect();
        let q = Matrix::from_fn(Rationals, n, n, |r, c| Rationals.from_u64(bits[r * n + c] as u64));
        let f = Matrix::from_fn(big, n, n, |r, c| bits[r * n + c] as u64);
        assert_eq!(q.rank(), f.rank());
    }
}

#[test]
fn strictly_upper_matrices_have_decreasing_ranks() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let n = rng.random_range(1..=10);
        let m = Matrix::from_fn(fp(), n, n, |r, c| {
            if c > r && rng.random_bool(0.5) {
                rng.random_range(0..DEFAULT_PRIME)
            } else {
                0
            }
        });
        assert!(m.is_nilpotent().unwrap());
        let ranks = m.power_ranks().unwrap();
        assert!(ranks.windows(2).all(|w| w[0] > w[1]));
        let drops: Vec<_> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
        assert!(drops.windows(2).all(|w| w[0] >= w[1]), "{drops:?}");
        assert_eq!(m.jordan_type().unwrap().total(), n);
    }
}
