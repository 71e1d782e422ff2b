pub mod cavity;
pub mod cli;
pub mod config;
pub mod dynamics;
pub mod green;
pub mod materials;
pub mod specfun;
