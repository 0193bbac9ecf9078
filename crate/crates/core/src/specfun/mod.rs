//! Special functions: Kummer and Whittaker functions, Laguerre polynomials,
//! Bessel zeros and the counting function for z-zeros of `M(a, b, .)`.

mod bessel;
mod counting;
mod gamma;
mod kummer;
mod laguerre;

pub use bessel::{bessel_j, bessel_zero, mcmahon_seed};
pub use counting::{count_positive_z_zeros, default_samples, sign_changes_in_z, z_scan};
pub use gamma::{digamma, digamma_int, factorial, gamma, ln_pochhammer_abs, pochhammer, EULER_GAMMA};
pub use kummer::{
    kummer_m, kummer_m_certified, kummer_m_second, kummer_m_second_certified, kummer_m_split, kummer_reflect,
    kummer_reflect_certified, whittaker_m, whittaker_m_certified, KummerArgs, SecondSolutionBranch,
};
pub use laguerre::{
    laguerre, laguerre_recurrence_step, plancherel_rotach, plancherel_rotach_amplitude,
    plancherel_rotach_argument, plancherel_rotach_error, plancherel_rotach_exact, PrRegime,
};
