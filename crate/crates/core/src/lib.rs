//! Exact construction and certification of orthogonal decompositions of
//! `sl_n(R)` into abelian Cartan subalgebras (ODACs) over finite commutative
//! rings `R`.

pub mod arith;
pub mod construct;
pub mod error;
pub mod gf;
pub mod matrix;
pub mod module;
pub mod ring;
pub mod roots;
pub mod search;
pub mod sln;
pub mod verify;

pub use construct::{
    b_form, build_generators, build_j, build_j_w, construct_odac, construct_prime, construct_prime_power,
    shift_matrix_x, symplectic_basis, FieldPair, Generators, JIndex, SymplecticCoords, SymplecticSpace, Verdict,
};
pub use error::{Error, Result};
pub use matrix::Matrix;
pub use module::{canonical_span, module_equal, solve_kernel, Submodule};
pub use ring::{
    crt_decompose, field_trace, find_primitive_root, parse_ring_spec, trace_dual_basis, Elem, LocalFactor, Ring,
    RingSpec,
};
pub use roots::{
    classical_conditions, is_classical_cartan, root_space_decomposition, ClassicalConditions, RootDecomposition,
};
pub use search::{
    classical_odac_search_sl3, exhaustive_lemma_shape_check, lemma_h_oracle, sl2_orthogonality_analysis,
    verify_remark_no_pair, Budget,
};
pub use sln::{conjugate_subalgebra, SlnAlgebra, Subalgebra};
pub use verify::{verify_odac, Component, Decomposition, VerificationReport, VerifyOptions, Witness};
