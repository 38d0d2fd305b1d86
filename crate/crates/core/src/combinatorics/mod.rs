//! Partitions, block set partitions, symmetric group characters, Kostka
//! numbers and dimension formulas.

mod blocks;
mod characters;
mod kostka;
mod partition;

pub use blocks::{
    block_partition_count, enumerate_block_partitions, enumerate_block_partitions_with_limit,
    enumerate_pointed_partitions, permutation_of_type, permutations, BlockSetPartition, MAX_GROUND_SET,
};
pub use characters::{character, CharacterMemo, CharacterTable};
pub use kostka::kostka;
pub use partition::{
    binomial, class_size, dim_irrep_gl, dim_irrep_sym, factorial, multinomial, partitions_of,
    Partition, WeakComposition,
};
