//! Volume growth of concave-gauge metrics on the line and finite-scale
//! Busemann constructions.

pub mod finite;
pub mod gauge;

pub use finite::{all_isometries, busemann_distance, cycle_rotations, busemann_gauge, vn_hull, BusemannDistance, FiniteIsometry, FiniteMetric, MetricError};
pub use gauge::{
    ball_volume, doubling_ratio, growth_bound_check, log_metric_volume, polynomial_bound_failure, standard_gauge, standard_node,
    GaugeCurve, GaugeError,
};
