//! Exact sheltered middle paths of three plane polylines sharing their
//! endpoints, plus a generator for finite stages of a construction in which
//! the sheltered set oscillates like a topologist's sine curve.

pub mod arrangement;
pub mod geometry;
pub mod winding;
pub mod shelter;
pub mod sine_gen;
pub mod tracer;
