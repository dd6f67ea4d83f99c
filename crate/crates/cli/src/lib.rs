//! Command line plumbing for cubulator: job specs, JSON/DOT documents,
//! reference oracles and the acceptance suites.

pub mod io;
pub mod job;
pub mod oracles;
pub mod suite;
