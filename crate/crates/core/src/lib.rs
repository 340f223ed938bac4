//! Exact construction, verification and analysis of the sl(n+1)-modules
//! `M(p)` whose restriction to the abelian nilradical
//! `span(e(1,n+1), ..., e(n,n+1))` is free of rank one.
//!
//! Every such module lives on the polynomial ring `Q[x1..xn]` and is
//! determined by one polynomial `p`. Operators are represented exactly in the
//! Weyl algebra, so all checks in this crate are equalities of normal forms.
//!
//! * [`poly`]: sparse rational polynomials, degree operators, text format
//! * [`weyl`]: normal-ordered differential operators
//! * [`lie`]: the sl(n+1) basis and its brackets
//! * [`rep`]: building `M(p)` and `V(p)`, verification, classification
//! * [`structure`]: invariant degree filtrations and simplicity
//! * [`tensor`]: `V(p) ⊗ L(k)` decompositions for sl(2)
//! * [`linalg`]: exact Gaussian elimination used by the certificates

pub mod lie;
pub mod linalg;
pub mod poly;
pub mod rep;
pub mod structure;
pub mod tensor;
pub mod weyl;

pub use lie::{bracket, LieBasisElement, LieCombination};
pub use poly::{parse_polynomial, DegreeMode, Monomial, Polynomial, Rational};
pub use rep::{build_rep, build_rep_sl2, verify_representation, Representation, Sl2Rep};
pub use weyl::WeylElement;
pub use structure::{
    isomorphism_test, minimal_invariant_degree, predicted_reducibility, quotient_data,
    sl2_exact_sequence_witness, submodule_report, SubmoduleReport,
};
pub use tensor::{
    build_finite_module, clebsch_gordan_components, decompose_tensor, split_tensor_l1,
    tensor_representation, Decomposition, TensorElement,
};
