//! Analysis and simulation of SINR outage in a millimeter-wave personal-area
//! network with two dominant interferers under correlated blocking.
//!
//! The library is organized around the pipeline that produces an SINR
//! distribution:
//!
//! * [`geometry`] — blocking predicates for perpendicular segment blockages,
//!   blocking-region areas and the overlap area between two regions.
//! * [`blocking`] — marginal and joint blocking statistics of the two
//!   interferers: `p_i`, the correlation coefficient `rho`, and the joint
//!   pmf of the blocking indicators.
//! * [`sinr`] — the discrete distribution of the unblocked interference and
//!   the resulting piecewise-constant SINR CDF.
//! * [`antenna`] — directional gain models and effective received power.
//! * [`montecarlo`] — a deterministic, parallelizable simulation engine that
//!   validates every closed-form quantity.
//!
//! All angles are radians and all powers linear inside the library; dB and
//! degrees appear only at I/O boundaries.

pub mod antenna;
pub mod blocking;
pub mod geometry;
pub mod montecarlo;
pub mod sinr;
