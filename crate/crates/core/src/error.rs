use thiserror::Error;

/// A law violated by a candidate multiplication table. Indices refer to the
/// rows/columns of the table as supplied, before identity normalization.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("empty table: a monoid has at least one element")]
    Empty,
    #[error("row {row} has {found} entries, expected {expected}")]
    NotSquare { row: usize, found: usize, expected: usize },
    #[error("entry ({row}, {col}) = {value} is out of range for {size} elements")]
    EntryOutOfRange { row: usize, col: usize, value: usize, size: usize },
    #[error("identity index {identity} is out of range for {size} elements")]
    IdentityOutOfRange { identity: usize, size: usize },
    #[error("{found} names supplied for {expected} elements")]
    NameCount { found: usize, expected: usize },
    #[error("duplicate element name `{name}`")]
    DuplicateName { name: String },
    #[error("identity law fails: e*{element} = {found}, expected {element}")]
    BrokenIdentity { element: usize, found: usize },
    #[error("not commutative: {a}*{b} = {ab} but {b}*{a} = {ba}")]
    NotCommutative { a: usize, b: usize, ab: usize, ba: usize },
    #[error("not associative: ({a}*{b})*{c} = {left} but {a}*({b}*{c}) = {right}")]
    NotAssociative { a: usize, b: usize, c: usize, left: usize, right: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct TableParseError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}, column {column}: unknown generator `{name}`")]
    UnknownGenerator { line: usize, column: usize, name: String },
    #[error("line {line}, column {column}: negative exponent")]
    NegativeExponent { line: usize, column: usize },
    #[error("duplicate generator `{name}`")]
    DuplicateGenerator { name: String },
    #[error("word has {found} exponents, presentation has {expected} generators")]
    WordLength { found: usize, expected: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cap exceeded: {what} is {size}, cap is {cap}")]
pub struct CapExceeded {
    pub what: &'static str,
    pub size: usize,
    pub cap: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdjointError {
    #[error("map is not monotone: {x} <= {y} but f({x}) = {fx} is not <= f({y}) = {fy}")]
    NotMonotone { x: usize, y: usize, fx: usize, fy: usize },
    #[error("map does not preserve the least element")]
    LeastNotPreserved,
    #[error("map does not preserve the join of {x} and {y}")]
    JoinNotPreserved { x: usize, y: usize },
    #[error("map does not preserve the top element")]
    TopNotPreserved,
    #[error("map does not preserve the meet of {x} and {y}")]
    MeetNotPreserved { x: usize, y: usize },
    #[error("no greatest element in {{x | f(x) <= {y}}}")]
    NoGreatest { y: usize },
    #[error("no least element in {{x | {y} <= g(x)}}")]
    NoLeast { y: usize },
    #[error("candidate adjoint fails at ({x}, {y})")]
    AdjunctionFails { x: usize, y: usize },
    #[error("map has {found} images, source has {expected} elements")]
    WrongArity { found: usize, expected: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error(transparent)]
    TableParse(#[from] TableParseError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Cap(#[from] CapExceeded),
    #[error(transparent)]
    Adjoint(#[from] AdjointError),
    #[error("monoid is not idempotent: {element}*{element} != {element}")]
    NotIdempotent { element: usize },
    #[error("{0} is not a submonoid")]
    NotSubmonoid(String),
    #[error("power hypothesis fails: no power of element {element} lies in the submonoid")]
    PowerHypothesis { element: usize },
    #[error("not a bijection: {0}")]
    NotBijective(String),
    #[error("inverse system is not functorial: {0}")]
    NotFunctorial(String),
    #[error("integrity failure: {0}")]
    Integrity(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
