//! Lie algebras by structure constants and their classical invariants.

pub mod algebra;
pub mod fingerprint;
pub mod killing;
pub mod series;
pub mod typer;

pub use algebra::{check_hom, LieAlgebra, LieError, LieHom};
pub use fingerprint::{fingerprint, InvariantFingerprint};
pub use killing::{killing_annihilator, killing_form, killing_signature, nilradical, radical};
pub use series::{derived_series, is_nilpotent, is_solvable, lower_central_series};
pub use typer::{is_type_r, Confidence, TypeRVerdict};
