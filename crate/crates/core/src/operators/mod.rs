//! Maximal functions, potentials, singular integrals, commutators and
//! pseudo-differential operators on discrete spaces.

mod maximal;
mod potential;
mod pseudodiff;
mod singular;

pub use maximal::{fractional_maximal, hl_maximal, iterated_maximal, sharp_maximal, vector_maximal};
pub use potential::{metric_potential, riesz_potential, riesz_potential_at};
pub use pseudodiff::pseudodiff_apply;
pub use singular::{
    cauchy_singular, commutator, cz_apply, cz_apply_real, kernel_condition_check, KernelKind, KernelSpec,
    OperatorReport,
};

pub(crate) use maximal::{maximal_of_nonneg, sweep};

