//! Exact computations with interval and string modules over the real line
//! and the circle, constrained by Kupisch profiles.
//!
//! Everything is rational: endpoints, breakpoints and the coefficients of
//! the piecewise fractional-linear successor maps.

pub mod discrete;
pub mod error;
pub mod format;
pub mod interval;
pub mod kupisch;
pub mod pwmap;
pub mod rational;
pub mod repcat;

pub use discrete::{DiscreteModule, KupischSeries};
pub use error::{Error, Result};
pub use interval::{EndpointKind, Interval, StringLift};
pub use kupisch::{ComponentDescriptor, ComponentRef, KupischProfile, SeparationSet, Space};
pub use pwmap::{Domain, FracLinear, PiecewiseMap};
pub use rational::{Bound, Rational};
pub use repcat::{MorphismAnalysis, ResolutionReport, ScalarMorphism, Verdict};
