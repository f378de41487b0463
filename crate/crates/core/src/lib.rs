//! Exact construction, certification and decomposition of completely
//! positive (CP) and `{0,1}`-CP symmetric tensors.
//!
//! A symmetric tensor `A` of order `m` and dimension `n` is CP when
//! `A = sum_j beta_j^m` for nonnegative vectors `beta_j`, and `{0,1}`-CP when
//! the `beta_j` can be taken as 0/1 vectors. The crate provides
//!
//! * canonical storage of symmetric tensors ([`tensor`], [`index`]),
//! * Gramian tensors and exact decomposition checks ([`gramian`]),
//! * certifiers for 2-dimensional tensors and pairwise necessary
//!   conditions ([`dim2`]),
//! * block structure and `{0,1}`-CP certification of `(0,1)` tensors
//!   ([`binary`]) with an exhaustive reference search ([`oracle`]),
//! * multi-hypergraphs, Property R and indicator matrices ([`hypergraph`]).
//!
//! All arithmetic is exact. The algebra is generic over [`Scalar`]; the
//! aliases below fix the arbitrary-precision rational type used by the
//! command-line tool.

pub mod binary;
pub mod certificate;
pub mod dim2;
pub mod error;
pub mod gramian;
pub mod hypergraph;
pub mod index;
pub mod oracle;
pub mod permutation;
pub mod scalar;
pub mod tensor;
pub mod text;

pub use binary::{
    certify_binary_cp_01, diagonal_bcprank, irreducible_components, is_reducible, splits,
    uniform_bounds_check, BinaryCpResult, BlockDecomposition, UniformReport,
};
pub use certificate::{Certificate, Witness};
pub use dim2::{
    certify_binary_cp_dim2, construct_cp_dim2, dominance_necessary_check, pairwise_necessary_check,
    profile_dim2, BcpCertificate, Dim2Profile,
};
pub use error::{Error, Result};
pub use gramian::{
    gram_tensor, hadamard, holder_check, m_inner_product, m_norm, verify_cp_decomposition,
    CpDecomposition, FactorMatrix, HolderReport, Norm, WeightedFactor,
};
pub use hypergraph::{
    adjacency_tensor, associated_matrix, certify_unique_maximal, indicator_matrix, maximal_edges,
    property_r_check, tensor_to_multihypergraph, IndicatorMatrix, MultiHypergraph, PropertyR,
};
pub use index::{MultiIndex, Shape};
pub use oracle::{oracle_binary_cp_search, OracleOutcome};
pub use permutation::Permutation;
pub use scalar::Scalar;
pub use tensor::{khatri_rao_power, rank_one_power, sum_rank_one, Domain, SymmetricTensor};

/// Arbitrary-precision rational scalar.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision integer scalar.
pub type Integer = num_bigint::BigInt;

pub type RationalTensor = SymmetricTensor<Rational>;
pub type IntegerTensor = SymmetricTensor<Integer>;
/// Machine-word integer tensor; arithmetic overflows are not checked.
pub type SmallTensor = SymmetricTensor<i64>;

pub type RationalDecomposition = CpDecomposition<Rational>;
pub type RationalFactorMatrix = FactorMatrix<Rational>;
pub type RationalCertificate = Certificate<Rational>;
