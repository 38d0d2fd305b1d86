use foulkes_core::combinatorics::{block_partition_count, enumerate_block_partitions};
use foulkes_core::exactla::{certify_injective, default_primes, rank_mod_p};
use foulkes_core::foulkes_map::{check_factorization, psi_composed, psi_entry, psi_fused};
use foulkes_core::plethysm::{foulkes_check, multiplicity_vector, sym_dimension};
use foulkes_core::tensorspace::OrbitSumBasis;
use num_bigint::BigUint;
use proptest::prelude::*;

fn small_shape() -> impl Strategy<Value = (usize, usize)> {
    (1usize..=4, 1usize..=4).prop_filter("ab <= 8", |(a, b)| a * b <= 8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn both_constructions_agree((a, b) in small_shape()) {
        prop_assert_eq!(psi_fused(a, b).unwrap(), psi_composed(a, b).unwrap());
    }

    #[test]
    fn entries_are_the_common_value((a, b) in small_shape()) {
        let psi = psi_fused(a, b).unwrap();
        let e = psi_entry(a, b);
        prop_assert!(psi.matrix.entries().all(|(_, _, v)| *v == e));
        let cols = enumerate_block_partitions(a, b).unwrap();
        prop_assert_eq!(psi.domain_dim(), cols.len());
        prop_assert_eq!(BigUint::from(psi.codomain_dim()), block_partition_count(b, a));
    }

    #[test]
    fn injective_when_a_at_most_b((a, b) in small_shape()) {
        let psi = psi_fused(a, b).unwrap();
        let cert = certify_injective(&psi.matrix).unwrap();
        if a <= b {
            prop_assert!(cert.injective);
        }
        prop_assert!(cert.rank <= psi.domain_dim().min(psi.codomain_dim()));
        let p = default_primes()[0];
        prop_assert!(rank_mod_p(&psi.matrix, p).unwrap() <= cert.rank);
    }

    #[test]
    fn factorization_holds((a, b) in small_shape().prop_filter("a < b", |(a, b)| a < b)) {
        let psi = psi_composed(a, b).unwrap();
        prop_assert!(check_factorization(a, b, &psi).unwrap().equal);
    }

    #[test]
    fn multiplicities_sum_to_dimension(a in 1usize..=6, b in 1usize..=6) {
        prop_assume!(a * b <= 10);
        let v = multiplicity_vector(a, b).unwrap();
        prop_assert_eq!(sym_dimension(&v), block_partition_count(a, b));
        prop_assert!(v.support().iter().all(|l| l.length() <= a));
        prop_assert_eq!(OrbitSumBasis::sa_orbits(a, b).map(|o| o.len()).ok(), Some(psi_fused(a, b).unwrap().domain_dim()));
        if a <= b {
            prop_assert!(foulkes_check(a, b).unwrap().holds());
        }
    }
}
