pub mod algebra;
pub mod form;
pub mod homology;
pub mod laurent;
