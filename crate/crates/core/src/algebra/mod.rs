pub mod fp;
pub mod mpoly;
pub mod partition;
pub mod qtpoly;
pub mod quantum;
pub mod rat;
pub mod schur;
pub mod tripoincare;

pub use fp::Fp;
pub use mpoly::{monomials_of_degree, MPoly, Monomial, Var};
pub use partition::Partition;
pub use qtpoly::{Prefactor, QTPoly};
pub use quantum::{quantum_binomial, quantum_integer};
pub use rat::Rat;
pub use schur::{rewrite_pi_in_primes, schur, schur_from_elementary, RewriteTerm};
pub use tripoincare::{Row, TriPoincare};
