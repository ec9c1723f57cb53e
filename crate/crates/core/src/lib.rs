//! Bicorn curves, subsurface projections and the Farey-graph annular example
//! of the bounded geodesic image theorem, all computed exactly.

pub mod bicorn;
pub mod diagram;
pub mod farey;
pub mod fuzz;
pub mod projection;
pub mod verify;
