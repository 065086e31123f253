//! Exact arithmetic for Schur algebras `S(n, r)`, their truncations
//! `1_λ S(n, r) 1_μ`, the enveloping algebra `U(gl_n)` and its modified form.

pub mod cellular;
pub mod codet;
pub mod error;
pub mod linalg;
pub mod pbw;
pub mod perm;
pub mod rational;
pub mod schur;
pub mod simples;
pub mod tableau;
pub mod tensor;
pub mod udot;
pub mod verify;
pub mod weights;

pub use cellular::{cell_datum_check, CellOrder, CellReport};
pub use codet::{codet_basis, codeterminant, exact_rank, unimodular_change, Codeterminant};
pub use error::{Error, Result};
pub use linalg::ChangeOfBasis;
pub use pbw::{PBWMonomial, PbwForm, Side, UElement};
pub use perm::Permutation;
pub use rational::Q;
pub use schur::{ell_word, SchurElement, SymmetricGroupIso};
pub use simples::SimpleIndexReport;
pub use tableau::{kostka, ssyt, Tableau};
pub use tensor::{TensorEndo, TensorSpace};
pub use udot::{GeneratorSide, UdotElement};
pub use verify::{Check, SuiteParams, VerificationReport};
pub use weights::{compositions, margin_matrices, MarginMatrix, MatrixMode, MultiIndex, Weight};
