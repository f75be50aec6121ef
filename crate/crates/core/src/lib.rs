pub mod arith;
pub mod fgl;
pub mod groups;
pub mod hkr;
pub mod cli;
