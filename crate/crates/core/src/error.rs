use alloc::string::String;
use alloc::vec::Vec;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("arrow `{arrow}` has endpoint `{vertex}` which is not a declared vertex")]
    DanglingEndpoint { arrow: String, vertex: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("paths are not composable: source `{source_vertex}` differs from target `{target_vertex}`")]
    NotComposable {
        source_vertex: String,
        target_vertex: String,
    },
    #[error("relation `{outer}*{inner}` is not a composable pair")]
    RelationNotComposable { outer: String, inner: String },
    #[error("relation `{outer}*{inner}` listed twice")]
    DuplicateRelation { outer: String, inner: String },
    #[error("special vertex `{0}` listed twice")]
    DuplicateSpecial(String),
    #[error("bound quiver is infinite dimensional (relation-free cycle {witness:?})")]
    InfiniteDimensional { witness: Vec<String> },
    #[error("no valid triple found within {attempts} attempts")]
    GenerationExhausted { attempts: usize },
    #[error("bound quiver is not gentle or not finite dimensional")]
    NotGentle,
    #[error("triple is not skewed-gentle")]
    NotSkewedGentle,
    #[error("derived name `{0}` collides with an existing name")]
    NameCollision(String),
    #[error("vertex `{0}` is not special")]
    NotSpecial(String),
    #[error("path enumeration exceeded the cap of {cap} paths")]
    LimitExceeded { cap: usize },
    #[error("arithmetic overflow during exact elimination")]
    Overflow,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}
