//! The scaling function F(S,a,b) of the volume-controlled map generating
//! function: exact coefficient tables, arbitrary-precision evaluation, and
//! Laurent coefficient extraction in S.

pub mod eval;
pub mod extract;
pub mod poly;
pub mod tables;

pub use eval::{eval_f, eval_f_b0, eval_f_diag, eval_f_with, eval_r, ScalingConfig};
pub use extract::{extract_phi_coeff, extraction_window, richardson_phi};
pub use tables::{audit_dump, dump_tables, tables, ScalingTables, TablesDump};
