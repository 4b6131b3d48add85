//! Smooth complete toric surfaces: fans, line-bundle cohomology by torus
//! characters, Hille exceptional sequences and witnessed length spectra.

pub mod cohomology;
pub mod fan;
pub mod report;

pub use cohomology::{
    cohomology, ext_line_bundles, intersection_number, riemann_roch, self_intersections, Cohomology,
    TorusDivisor, BOX_GROWTH,
};
pub use fan::{random_fan, Fan2D, FanDoc, Preset, Ray};
pub use report::{
    hille_dot, hille_sequence, negative_ray_selection, toric_length_report, Block, Geometry, ToricReport,
    MAX_NEGATIVE_RAYS,
};
