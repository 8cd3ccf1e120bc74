//! Zero-divisor graphs of Z_n and the linear codes spanned by their incidence
//! matrices over prime fields.
//!
//! ```
//! use zdcode::{gfmat::PrimeField, lincode::{code_params, Budgets}, modring::factorize, zdgraph::build_graph};
//!
//! let g = build_graph(&factorize(15).unwrap()).unwrap();
//! let gen = g.incidence_matrix(PrimeField::new(3).unwrap()).matrix;
//! let (params, _) = code_params(&gen, Some(&g), Budgets::default()).unwrap();
//! assert_eq!(params.to_string(), "[8, 5, 2]_3");
//! ```

pub mod cli;
pub mod error;
pub mod gfmat;
pub mod lincode;
pub mod modring;
pub mod oracle;
pub mod theorems;
pub mod zdgraph;

pub use error::{Error, Result};
