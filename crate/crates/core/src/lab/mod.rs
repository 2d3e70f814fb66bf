//! The commuting-scheme laboratory: ideal presentations, ring maps,
//! distinguished points, parametrization samples, degeneration families,
//! the regular-point criterion, and the verification suite tying them
//! together.

pub mod build;
pub mod family;
pub mod hom;
pub mod points;
pub mod psi;
pub mod regular;
pub mod report;
pub mod suite;

pub use build::{build_ideal, Family, SchemeSpec, Tag};
pub use family::{
    family_check, l54_canonical, l55_canonical, l56_canonical, l59_canonical, FamilyInstance,
};
pub use hom::{map_27, map_28, map_44, verify_hom, RingMap};
pub use points::{check_jacobian_rank, jsecond_ideal, point_p};
pub use psi::{psi_membership_check, psi_sample, CVTuple};
pub use regular::regular_point_test;
pub use report::{Status, VerificationReport};
pub use suite::{dimension_report, regular_report, run_suite, saturation_report, RegularCase, SuiteConfig};
