//! Descent on genus-one fibrations `y^2 = f(x, t)` over `Q(t)`.

pub mod arith;
pub mod brauer;
pub mod error;
pub mod etale;
pub mod places;
pub mod surface;
pub mod syntax;

pub use error::{Error, Result};
