//! Scattering matrices, R-groups and Whittaker dimensions for unramified
//! genuine principal series of Brylinski–Deligne covering groups.

pub mod character;
pub mod cover;
pub mod error;
pub mod intlin;
pub mod rootdata;
pub mod scalars;
pub mod scattering;
pub mod smatrix;
pub mod weylact;
pub mod whitfun;

pub use character::{rgroup, Character, IrrChar, RGroupData};
pub use cover::{Bisector, CoverDatum, QuadraticInput};
pub use error::{Error, Result};
pub use rootdata::{CartanType, RootDatum, WeylGroup};
pub use scalars::{Cyclotomic, Instantiation, Scalar};
pub use scattering::{whittaker_dims, NumericOptions, Scattering, Verdict, WhittakerReport};
pub use weylact::OrbitTable;
pub use whitfun::{whitrank, EvalMatrix, RankProvenance};
