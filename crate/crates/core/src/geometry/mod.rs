//! Curvature, inductive dimension, wheels and geometric-graph tests.

pub mod curvature;
pub mod dimension;
pub mod wheels;

pub use curvature::{curvature, flatness_check, positive_curvature_report, second_order_curvature, CurvatureVector};
pub use dimension::{expected_dimension_polynomial, inductive_dimension, is_geometric, DimensionValue, GeometricVerdict};
pub use wheels::{sectional_and_ricci, Wheel, WheelCurvatures};
