//! Grid-world turtle plans checked against a CSP model.
//!
//! The turtle is a CSP process built from per-direction navigation processes
//! interleaved with a pen flip-flop. Plans are checked by trace membership and
//! goal reachability by trace refinement under hiding, both against an
//! in-crate checker ([`kernel`]). Verified plans can be turned into Python
//! Turtle scripts, SVG maps, replay expectations and CSPM scripts.

pub mod checker;
pub mod cli;
pub mod codegen;
pub mod kernel;
pub mod model;
pub mod plan_io;
