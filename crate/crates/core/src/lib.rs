//! Ordered and unordered theta-graphs: construction, exact stretch
//! measurement, closed-form spanning-ratio bounds, and generators for the
//! worst-case point sets that realize them.
//!
//! A theta-graph splits the plane around every vertex into `m` cones of
//! aperture `2*pi/m` and connects each vertex, per cone, to the vertex
//! closest by projection onto the cone bisector. The ordered variant
//! inserts vertices one by one and only connects to previously-inserted
//! vertices; different orders give different graphs, and adversarial
//! orders cost real stretch. This crate makes those costs measurable at
//! desk scale.

pub mod bounds;
pub mod construction;
pub mod error;
pub mod generators;
pub mod geometry;
pub mod instance;
pub mod lemmas;
pub mod metrics;

pub use bounds::{classify, lower_bound, staircase_limit, staircase_limit_4k2, tower_growth, upper_bound, BoundFamily, FamilyKind};
pub use construction::{build_ordered, build_unordered, closest_in_cone, perturb, Edge, InsertionOrder, SpannerGraph};
pub use error::{Error, Result};
pub use generators::{gen_for_family, gen_random, gen_staircase_4k2, gen_staircase_4k4, gen_staircase_odd, gen_tower, GenParams, GeneratedInstance};
pub use geometry::{ConeSystem, GeneralPositionReport, Point};
pub use instance::{InstanceFile, ReportFile};
pub use metrics::{all_pairs_stretch, shortest_path_distance, stretch_oracle, theorem1_certificate, StretchReport};
