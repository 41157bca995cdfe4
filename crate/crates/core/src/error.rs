use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    UnknownVariable(String),
    DuplicateVariable(String),
    ZeroCardinality(String),
    OverlappingQuery(String),
    DimensionMismatch(String),
    RowSum { table: String, row: usize, sum: String },
    NegativeEntry { table: String, row: usize },
    NotDeterministic { table: String, row: usize },
    TooLarge { cells: u128 },
    Overflow,
    Structure(String),
    NotIndependent(String),
    Nonconforming { family: String, detail: String },
    FamilyMismatch { expected: String, found: String },
    MissingConstant(String),
    Unbounded(String),
    InfeasibleConfig(String),
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnknownVariable(v) => write!(f, "unknown variable `{v}`"),
            Error::DuplicateVariable(v) => write!(f, "variable `{v}` declared twice"),
            Error::ZeroCardinality(v) => write!(f, "variable `{v}` has cardinality 0"),
            Error::OverlappingQuery(v) => {
                write!(f, "variable `{v}` appears in more than one query set")
            }
            Error::DimensionMismatch(msg) => write!(f, "dimension mismatch: {msg}"),
            Error::RowSum { table, row, sum } => write!(
                f,
                "factor row not summing to 1: table {table}, row {row} (row sum ≠ 1, got {sum})"
            ),
            Error::NegativeEntry { table, row } => {
                write!(f, "negative probability in table {table}, row {row}")
            }
            Error::NotDeterministic { table, row } => {
                write!(f, "encoder table not deterministic: {table}, row {row}")
            }
            Error::TooLarge { cells } => {
                write!(f, "joint table would have {cells} cells (limit 10^7)")
            }
            Error::Overflow => write!(f, "common denominator overflows 128 bits"),
            Error::Structure(msg) => write!(f, "factor structure: {msg}"),
            Error::NotIndependent(msg) => write!(f, "independence violated: {msg}"),
            Error::Nonconforming { family, detail } => {
                write!(f, "distribution does not conform to family {family}: {detail}")
            }
            Error::FamilyMismatch { expected, found } => {
                write!(f, "family mismatch: expected {expected}, found {found}")
            }
            Error::MissingConstant(c) => write!(f, "missing constant `{c}`"),
            Error::Unbounded(msg) => write!(f, "unbounded: {msg}"),
            Error::InfeasibleConfig(msg) => write!(f, "infeasible configuration: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
