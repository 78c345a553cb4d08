//! Chain complexes of finitely presented modules over finite commutative
//! rings, with Cartan-Eilenberg structure checks, Gorenstein projectivity,
//! resolutions and homotopy-category computations.

pub mod error;
pub mod ring;

pub use error::{Error, Result};
pub use ring::{Ring, RingElement, RingMatrix, RingSpec, ZeroGorenstein};
pub mod module;
pub mod complex;
pub mod random;
pub mod ce;
pub mod gp;
pub mod homotopy;

pub use module::{FpModule, GpBounds, GpStatus, GpVerdict, ModuleMap};
pub use complex::{ChainMap, Complex, DegreeData, Ends, LongSequence, Shape, ShortSequence, Support};
pub use gp::{GpClassification, Resolution, Verdict};
pub use homotopy::{Homotopy, HomotopyEquivalence, Minimization};
