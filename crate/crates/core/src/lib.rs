//! Exact enumeration and analytic machinery for genus-filtered RNA
//! pseudoknot structures over one backbone.
//!
//! The crate builds up in layers:
//! - [`algebra`]: big-integer polynomials, truncated power series,
//!   big floats and resultants;
//! - [`diagram`]: chord diagrams, fatgraph genus, shadows and the
//!   irreducible-shadow decomposition;
//! - [`shadows`]: brute-force catalogs of irreducible shadows of genus 1
//!   and 2 and their generating polynomials;
//! - [`genfun`]: the functional equations for matchings, shapes and
//!   structures, solved as exact truncated series;
//! - [`oracle`]: independent exhaustive enumeration used to validate every
//!   series at small sizes;
//! - [`asymptotics`]: numeric singularity analysis and the central-limit
//!   parameters of the genus distribution.

pub mod algebra;
pub mod asymptotics;
pub mod diagram;
pub mod genfun;
pub mod oracle;
pub mod shadows;

pub mod acceptance;
