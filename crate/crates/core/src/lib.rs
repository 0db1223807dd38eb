//! Depth-corrected maxmin landmarks for lazy witness persistence.
//!
//! Maxmin seeds partition a cloud into nearest-seed cells; each seed is then
//! replaced by, or moved part of the way toward, the deepest point of its
//! cell (halfspace depth) and projected back onto the cell. The crate also
//! builds the lazy witness filtration on a landmark set, reduces it over
//! GF(2), and provides the synthetic and silhouette data used to compare
//! landmark rules.
//!
//! ```
//! use depthmark_core::prelude::*;
//!
//! let cloud = generate(&DatasetSpec::new(Family::Circle, Contamination::Uniform, 7)).unwrap();
//! let seeds = maxmin(&cloud, 20, 0).unwrap();
//! let cells = assign_cells(&cloud, &seeds).unwrap();
//! let lms = recenter_support_weighted(&cloud, &cells, 0.6, 1.0, DepthRule::Exact2d).unwrap();
//! let filtration = build_lazy_witness(&lms.coords, &cloud, &WitnessConfig::default()).unwrap();
//! let diagram = compute_persistence(&filtration).unwrap();
//! assert!(thresholded_h1_count(&diagram, 0.25) >= 1);
//! ```

pub mod datagen;
pub mod error;
pub mod geometry;
pub mod io;
pub mod landmarks;
pub mod persistence;
pub mod pgm;
pub mod witness;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::datagen::{
        generate, load_silhouette_pgm, normalize, Contamination, DatasetSpec, Family,
    };
    pub use crate::error::{Error, Result};
    pub use crate::geometry::{
        cover_radius, deepest_point, directional_depth_approx, halfspace_depth_2d,
        mean_signal_cover, Depth, DepthRule, Label, PointCloud,
    };
    pub use crate::landmarks::{
        assign_cells, dense_core_maxmin, epsnet_matched, maxmin, outlier_landmark_count,
        random_landmarks, recenter_fixed_step, recenter_full, recenter_support_weighted,
        CellPartition, LandmarkSet, Method, MethodParams,
    };
    pub use crate::persistence::{
        bottleneck_trimmed, compute_persistence, thresholded_h1_count, top_lifetimes, Bar,
        PersistenceDiagram,
    };
    pub use crate::witness::{build_lazy_witness, simplex_count, Filtration, WitnessConfig};
}
