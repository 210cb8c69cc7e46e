pub mod arrangement;
pub mod bands;
pub mod chamber_complex;
pub mod chambers;
pub mod cli;
pub mod incidence;
pub mod nets;
pub mod os;
pub mod projective;
pub mod scalar;
pub mod zmod;
