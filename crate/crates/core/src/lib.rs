pub mod error;
pub mod expint;
pub mod gamma;
pub mod series;
pub mod asym;
pub mod xfloat;
