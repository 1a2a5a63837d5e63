//! Partitions, Kostka numbers, Schur and factorial Schur functions.

mod kostka;
mod numbers;
mod partition;
mod schur;

pub use kostka::{kostka, kostka_ones, KostkaOnes};
pub use numbers::{barnes_g, binomial, factorial, factorial_product, falling, inv_factorial_or_zero, multinomial};
pub use partition::{compositions, hook_count, partitions, Partition, ShiftedSequence, WeightVector};
pub use schur::{factorial_schur, schur_eval, SchurEval};
