//! Per-snapshot structural metrics.

mod betweenness;
mod centrality;
mod components;
mod degree;
pub(crate) mod detection;
mod distance;
mod forest;
mod timeseries;
mod triangles;

pub use betweenness::edge_betweenness;
pub use centrality::{
    eigenvector_centrality, top_central_profile, CentralProfile, CentralityResult, DEFAULT_MAX_ITER,
    DEFAULT_TOL,
};
pub use components::{connected_components, giant_component, ComponentDecomposition};
pub use degree::{degree_stats, power_law_exponent, DegreeStats};
pub use detection::{detection_distances, late_infection_edges, DetectionDistances, LateInfectionCounts};
pub use distance::{distance_summary, DistanceSummary};
pub use forest::{entropy, infection_forest, InfectionForest, TreeSummary};
pub use timeseries::{attribute_timeseries, AttributeBucket};
pub use triangles::{triangle_participation, TriangleCounts};
