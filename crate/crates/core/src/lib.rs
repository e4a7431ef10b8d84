//! Clifford Fourier-Mellin transform for signals valued in Cl(2,0), Cl(1,1) and Cl(0,2).
//!
//! The transform is parameterized by two square roots of -1, `f` and `g`, acting as a
//! left radial kernel `r^{-f v}` and a right angular kernel `e^{-g k theta}`. Signals
//! live on a uniform log-polar grid where image scaling and rotation are cyclic shifts.

pub mod algebra;
pub mod bench;
pub mod cfmt;
pub mod error;
pub mod fft;
pub mod imaging;
pub mod io;
pub mod roots;
pub mod signal;
pub mod split;
pub mod verify;

pub use algebra::{Multivector, Signature};
pub use cfmt::{cfmt_direct, cfmt_fast, cfmt_forward, cfmt_forward_direct, cfmt_inverse, Spectrum};
pub use error::{Error, Result};
pub use roots::{RootOfMinusOne, RootPair};
pub use signal::{GridGeometry, LogPolarSignal};
pub use split::SplitPair;
