//! Nonconforming finite elements on convex quadrilateral and mixed
//! triangle/quadrilateral meshes: the QLTZ Stokes pair, quadrilateral and
//! triangular Morley elements, and checks of the discrete Stokes complex.

pub mod assembly;
pub mod complex;
pub mod elements;
pub mod error;
pub mod experiments;
pub mod mesh;
pub mod solver;
pub mod spaces;

pub use error::{Error, Result};

pub type Point = nalgebra::Point2<f64>;
pub type Vector = nalgebra::Vector2<f64>;
