//! Finite groups given by multiplication tables, conjugacy data, exact
//! cyclotomic numbers and character tables.

mod character;
mod conjugacy;
mod cyclotomic;
mod dixon;
mod group;
mod parse;

pub use character::{
    character_table, conjugate_irrep, multiplicity, CharacterTable, ClassFunction, Irrep, DEFAULT_MAX_ORDER,
};
pub use conjugacy::{conjugacy_data, ConjugacyData};
pub use cyclotomic::{cyclotomic_polynomial, Cyclotomic, CyclotomicField};
pub use group::{FiniteGroup, Subgroup, ASSOCIATIVITY_SEED, EXHAUSTIVE_ASSOCIATIVITY_BOUND};
pub use parse::{parse_builtin, parse_group};

/// All ordered pairs of commuting elements.
pub fn commuting_pairs(group: &FiniteGroup) -> Vec<(usize, usize)> {
    group.commuting_pairs()
}

/// Closure of `generators` in `group`.
pub fn subgroup(group: &FiniteGroup, generators: &[usize]) -> Subgroup {
    group.subgroup(generators)
}
