pub mod centre;
pub mod classify;
pub mod resonance;
pub mod scan;
pub mod spectrum;
pub mod trace;
pub mod validate;
