//! Regularity exponent κ(G) of semisimple Lie groups and numerical checks of
//! the Hölder regularity of spherical functions.

pub mod rational;
pub mod rootsys;
pub mod catalog;
pub mod liegroup;
pub mod spherical;
pub mod asymptotics;
pub mod acceptance;
