//! Exact-arithmetic toolkit connecting the curves `y^2 - a x y - y = x^3 - b x^2 - c x`
//! to Riordan arrays, weighted lattice paths, Hankel transforms, elliptic
//! divisibility sequences and J-fractions.

pub mod curve;
pub mod error;
pub mod paths;
pub mod pipeline;
pub mod rational;
pub mod riordan;
pub mod series;
pub mod transforms;

pub use curve::{CurveParams, CurvePoint, EdsSequence, Multiples};
pub use error::{Error, Result};
pub use paths::{Step, StepSet};
pub use rational::Rational;
pub use riordan::{AMatrix, RiordanArray, Triangle};
pub use series::Series;
pub use transforms::{JFraction, SomosParams, SomosReport};
