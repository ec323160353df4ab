//! Quaternion symbols, tame residues, and the Brauer classes
//! `h(l) = Cor((l, x - A)_2)` attached to classes of the norm kernel.

pub mod filter;
pub mod residue;
pub mod symbol;

pub use filter::{
    br_x_filter, filter_one, CorClass, FailCertificate, FilterReport, FilterRow, FilterVerdict,
};
pub use residue::{
    fiber_at, is_square_in_fiber_field, residue_at, residue_profile, split_h_expansion,
    verify_in_Br_C, vertical_residue_of_h, CertificatePlace, CertificateVerdict,
    ResidueCertificate,
};
pub use symbol::{
    fmt_kpoly, norm_to_constants, tame_residue, weil_product, Ambient, CurveFunction,
    QuaternionSymbol, SymbolSum,
};
