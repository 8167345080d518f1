pub mod formats;
pub mod fourier;
pub mod verify;
