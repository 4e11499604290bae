//! Truncated completed group algebras of the free abelian pro-`p` group of
//! rank two, the operator calculus on them, and normal-form arithmetic in the
//! free metabelian and centre-by-metabelian pro-`p` groups on two generators.
//!
//! Everything is computed modulo `p^N` and below a total-degree bound `D`;
//! see [`Params`].

pub mod coeff;
pub mod error;
pub mod groupalg;
pub mod groups;
pub mod interp;
pub mod operators;
pub mod oracle;
pub mod sample;
pub mod series;
mod tuple;

pub use coeff::{binomial, PadicInt, Params};
pub use error::{Error, Result};
pub use series::{Chart, ChartHint, Monomial, Series};
pub use groupalg::{group_series, pairing, pairing_pi, Embedding, GroupElt, Ideal, RElem, SElem};
pub use operators::{cross_witness, psi, psi_axis, solve_s_delta, solve_s_zeta, AntisymElem, Axis, DeltaWitness, PsiIndex};
pub use groups::{centralizer_check, membership_cn, phi_series, prof_hypotheses_check, CbmElem, CnClass, MetabElem};
pub use interp::{f_map, pairing_kernel, rel_add_check, rel_product_check, rel_star_check, InterpInstance};
