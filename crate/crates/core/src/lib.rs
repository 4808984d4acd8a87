//! Exact-arithmetic engine for the descent algebras of the Coxeter groups of
//! types B and D.
//!
//! The type-D product is computed by a template rule: for basis elements
//! `B_p` and `B_q` the product expands over a finite set of filled integer
//! grids, each grid contributing a term determined by its reading word. The
//! same machinery yields the type-B product, the ideal spanned by the
//! weight-`n` basis elements, and the isomorphism between the quotient by
//! that ideal and the type-B algebra two ranks down.
//!
//! Everything rule-based is cross-checked against a brute-force group
//! oracle: signed permutations, Cayley-graph BFS lengths, minimal coset
//! representatives and Solomon's structure-constant count.

pub mod algebra_b;
pub mod algebra_d;
pub mod composition;
pub mod error;
pub mod oracle;
pub mod quotient;
pub mod render;
pub mod report;
pub mod template;
pub mod verify;

pub use algebra_b::BAlgebraElement;
pub use algebra_d::AlgebraElement;
pub use composition::{BasisIndex, ClassTag, Composition, GeneratorSet};
pub use error::{Error, Result};
pub use oracle::{GroupKind, GroupTable, SignedPermutation};
pub use template::FilledTemplate;
