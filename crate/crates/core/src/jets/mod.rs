//! Taylor jets, the lemma operators `D_{u,k}`, the Borel map and the
//! residue transform `K`.

mod jet;
mod lemma;
mod operator;
mod transform;

pub use lemma::{f_d, product_derivative};
pub use jet::{FunctionJet, JetRecord, KernelJet};
pub use operator::{build_d, DiffOperator, USym};
pub use transform::{borel, borel_weighted, d_u1, DerivativeSpec, KTransform, ULayout};
