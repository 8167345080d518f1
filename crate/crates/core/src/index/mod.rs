pub mod genus;
pub mod divisor;
pub mod simplicial;
