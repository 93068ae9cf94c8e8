//! File formats, generators and solution verification.

pub mod format;
pub mod gen;
pub mod verify;
