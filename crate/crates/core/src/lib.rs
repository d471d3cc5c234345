pub mod catalog;
pub mod format;
pub mod grading;
pub mod growth;
pub mod lie;
pub mod linalg;
pub mod modification;
pub mod nilshadow;
