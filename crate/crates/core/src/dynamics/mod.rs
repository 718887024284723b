//! Orbits, heights, preperiodic catalogs and the monomial torus engine.

pub mod catalog;
pub mod height;
pub mod invariance;
pub mod monomial;
pub mod orbit;

pub use catalog::{
    build_catalog, stratum_within, CatalogConfig, CatalogStrategy, Certification, PreperiodicCatalog, Stratum,
};
pub use height::{bounded_height_points, coprime_tuple, weil_height, HeightValue};
pub use invariance::{verify_invariance, InvarianceReport, Violation};
pub use monomial::{monomial_periodic_points, MonomialMapSpec, TorusPoint};
pub use orbit::{orbit, OrbitRecord, OrbitStatus, ORBIT_BIT_CAP};
