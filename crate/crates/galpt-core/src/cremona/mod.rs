//! Birational transformations of the projective plane: fractional-linear
//! actions on a fiber coordinate and their lifts to de Jonquières
//! transformations centered at o = (0:0:1).

pub mod dejonq;
pub mod moebius;

pub use dejonq::{
    compose_forms, dejonquieres_lift, linear_map_components, maps_projectively_equal,
    rho_restriction_trivial, BinaryForm, DeJonquieresMap,
};
pub use moebius::Moebius;
