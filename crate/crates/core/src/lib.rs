pub mod exec;
pub mod linalg;
pub mod algebra;
pub mod structure;
pub mod derivations;
pub mod torus;
pub mod extension;
pub mod format;
pub mod golden;
