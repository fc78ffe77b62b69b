//! Garside calculus, duality, and Hurwitz classification in the braid group B₃.

pub mod braid_core;
pub mod classify;
pub mod cli;
pub mod duality;
pub mod garside;
pub mod half_twist;
pub mod hurwitz;
pub mod lefschetz;
