//! Radii, explicit constructions, numerical verification and SVG figures for
//! the 32 triplets of circles in which each circle touches the other two and
//! two of the side lines of a triangle.
//!
//! The Malfatti circles are the first of these triplets. The rest are
//! obtained by letting the circles touch the extensions of the sides.
//!
//! ```
//! use malfatti::{closed_form, Triangle, TripletVariant};
//!
//! let t = Triangle::from_sides(1.0, 1.0, 1.0).unwrap();
//! let q = t.derive();
//! let ang = q.auxiliary_angles();
//! let i1 = closed_form::radii_for_variant(&q, &ang, TripletVariant::from_index(1).unwrap());
//! assert!((i1.r1 - (3f64.sqrt() - 1.0) / 4.0).abs() < 1e-12);
//! ```

pub mod cli;
pub mod closed_form;
pub mod construct;
pub mod error;
pub mod oracle;
pub mod render;
pub mod report;
pub mod system;
pub mod triangle;

pub use closed_form::{Family, FormulaMode, RadiiTriplet, TripletVariant};
pub use construct::{Case, Configuration, Frame, Region, RegionAssignment, TangencyType};
pub use error::{Error, Result};
pub use oracle::{VerificationReport, VerifyOptions, VerifyStatus};
pub use system::{NormalizedSolution, SystemSpec};
pub use triangle::{AuxiliaryAngles, DerivedQuantities, Triangle, Vertex};

/// 2-D vector type used for all planar coordinates.
pub type Vec2 = nalgebra::Vector2<f64>;
