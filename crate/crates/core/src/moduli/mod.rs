//! Combinatorics and coordinates of the moduli space of stable genus zero curves with
//! `N + 3` marked points.

mod chart;
mod coords;
mod cross_ratio;
mod poly;
mod tree;

pub use chart::{chain_ranking, chart_coordinates, chart_coordinates_ranked, relate, Form};
pub use coords::{
    iota, iota_at, limit_of_power_curve, point_r, project, x_to_z, z_along_power_curve, z_to_x, zdiv_on_special_line,
    zdiv_residue,
};
pub use cross_ratio::{cross_ratio, CrossRatioField, Proj};
pub use poly::{Limit, Poly, RatFn};
pub use tree::{
    boundary_divisor_count, divisors_intersect, full_set, label_bit, labels_of, LabelSet, Partition2, Quadruple,
    StableTree, Topology, TreeJson,
};
