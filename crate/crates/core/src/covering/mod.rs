//! Covering perfect hash families of strength 3 and the covering arrays they expand to.

mod ca;
mod cphf;
mod extend;

pub use ca::{ca_from_cphf, ca_from_extended_scphf, verify_ca, CaReport, CaWitness, CoveringArray};
pub use cphf::{cphf_from_family, cphf_from_planes, verify_cphf, CphfArray};
pub use extend::{extend_scphf, search_extension};
