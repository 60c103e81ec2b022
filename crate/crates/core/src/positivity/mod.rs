//! Nef tests, the orthogonal complement `D^⊥`, and asymptotic speciality.

pub mod classify;
pub mod effectivity;
pub(crate) mod lp;
pub mod family;
pub mod nef;
pub mod perp;

pub use classify::{
    classify_asymptotic, corollary_spe_witness, ClassifyOptions, PaPerpReport, PaPerpVerdict, SpecialityTag,
    SpecialityVerdict,
};
pub use effectivity::{effectivity_verdict, Certificate, Effectivity, OracleBudget, PositionModel};
pub use family::{verify_quadratic_family, FamilyClass, QuadraticFamily};
pub use nef::{
    nef_dual_membership, nef_test_pn, nef_test_surface, nef_test_surface_with, DualMembership, MoriGenerator,
    NefGenerator, NefScreen, NefWitness,
};
pub use perp::{dperp_gram, pa_perp_candidates, pa_perp_upper, GramBasis};
