//! osp(1|2n) as a symbolic object: structure constants, the invariant form,
//! α: g₀ → W(g₁), normal forms in U(g) ⊗ W(g₁), the Dirac operator and its
//! square, and Dirac cohomology of explicit rank-one modules.

pub mod cohomology;
pub mod module;
pub mod ops;
pub mod pbw;
pub mod structure;
pub mod weyl;

pub use cohomology::{dirac_cohomology, DiracCohomologyResult};
pub use module::{build_module, ExplicitModule};
pub use ops::{
    alpha, casimir, casimir_even_diagonal, casimir_with_basis, dirac_operator, dirac_operator_with_basis,
    hc_image, kostant_constant, verify_dirac_square, verify_dirac_square_with, KostantConstant, Polynomial,
};
pub use pbw::{PbwOrder, TensorAlgebra, TensorElement};
pub use structure::{Generator, GeneratorKind, LinComb, Parity, SuperAlgebraStructure};
pub use weyl::{WeylMonomial, WeylPoly};

use crate::error::Result;

/// Builds osp(1|2n) for n ≤ 3 with all structural checks.
pub fn build_structure(n: usize) -> Result<SuperAlgebraStructure> {
    SuperAlgebraStructure::build(n)
}
