//! The etale algebra `L = K[A]/(f)`: norms, the kernel of the norm on
//! `L^x / L^x2 K^x`, the `x - A` map, S-unramified classes and their
//! enumeration.

pub mod algebra;
pub mod enumerate;
pub mod kernel;
pub mod roots;
pub mod unramified;

pub use algebra::{EtaleAlgebra, EtaleElement};
pub use enumerate::enumerate_unramified_kernel;
pub use kernel::{
    in_kernel_of_norm, normalize, x_minus_alpha, AffineDivisor, KernelClass, KernelTest,
};
pub use roots::{has_rational_root, rational_roots, splits_over_k};
pub use unramified::{
    candidate_places, is_s_unramified, valuation_of_ell_at_point, valuations_above,
    RamificationWitness, UnramifiedVerdict,
};
