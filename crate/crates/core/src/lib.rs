//! Numerical certificates for the minimality of the equatorial hypercone
//! `C(S^{n-1}(λ))` inside the singular cone `C(S^n(λ))`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod competitors;
pub mod decision;
pub mod density;
pub mod emit;
pub mod error;
pub mod geometry;
pub mod quadrature;
pub mod radial;
pub mod roots;
pub mod scan;
pub mod shooting;
pub mod stability;

pub use competitors::{
    catenoid_area_closed_form, competitor_search, disk_profile, sec5_area_numeric, sec5_bound,
    solve_catenoid, CatenoidParams, CompetitorReport, Sec5Competitor,
};
pub use decision::{decide, threshold, Certificate, DecideConfig, Decision, Mode, Verdict};
pub use density::{density_ratio, Surface};
pub use emit::{emit, Format};
pub use error::{Error, Result};
pub use geometry::{
    cone_ricci, cone_sectional, unit_ball_volume, ConeSpace, CrossSectionCurvature, Direction,
    Plane,
};
pub use quadrature::{Estimate, QuadratureConfig};
pub use radial::{graph_area, s_functional, LengthProfile, ProfileKind, RadialProfile};
pub use scan::{empirical_threshold, scan, ScanConfig, ScanRecord};
pub use stability::{
    instability_certificate, scale_second_fundamental, stability_gap, TestFunctionEta,
};
