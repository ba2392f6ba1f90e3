pub mod algebra;
pub mod commuting;
pub mod constructions;
pub mod field;
pub mod format;
pub mod lemmas;
pub mod linalg;
pub mod peirce;
