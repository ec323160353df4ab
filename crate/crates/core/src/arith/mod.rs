//! Exact arithmetic: polynomials, rational functions, number fields,
//! truncated power series and square classes.

pub mod factor;
pub mod field;
pub mod numfield;
pub mod poly;
pub mod ratfunc;
pub mod series;
pub mod sqclass;

pub use factor::{factor_over_rationals, is_irreducible, squarefree_part};
pub use field::{ExtField, Field, IsZero, NumberField, NumberFieldElement, Rationals};
pub use numfield::{is_square_in_number_field, NfPoly};
pub use poly::{Poly, PolyRing};
pub use ratfunc::{
    kring, qring, rat, ratio, resultant_x, FunctionField, KPoly, QPoly, RationalFunction,
};
pub use series::{Order, PowerSeries, SeriesRing};
pub use sqclass::{is_square_in_k, FiberField, Mode, SquareClass};
