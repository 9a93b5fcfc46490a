use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("{monomials} monomials in {variables} variables; an invertible polynomial needs as many monomials as variables")]
    NotSquare { monomials: usize, variables: usize },

    #[error("exponent matrix is singular (det = 0)")]
    SingularMatrix,

    #[error("monomial {0} appears more than once")]
    DuplicateMonomial(String),

    #[error("malformed matrix: {0}")]
    InvalidMatrix(String),

    #[error("group of order {order} exceeds the {what} cap of {cap}")]
    GroupTooLarge {
        what: &'static str,
        order: String,
        cap: u64,
    },

    #[error("too many variables ({0}) for stratum enumeration")]
    TooManyVariables(usize),

    #[error("element {0} is not in the group")]
    ElementNotInGroup(String),

    #[error("groups are not attached to transposed exponent matrices")]
    MismatchedMatrices,

    #[error("subgroups live in different groups")]
    MismatchedOwners,

    #[error("orbifold Euler characteristic {numerator}/{denominator} is not an integer")]
    NonIntegralResult { numerator: String, denominator: u64 },

    #[error("stratum {stratum}: isotropy route gives {via_isotropy}, determinant route gives {via_determinant}")]
    StratumMismatch {
        stratum: String,
        via_isotropy: String,
        via_determinant: String,
    },

    #[error("stratum {0} does not satisfy |supp f ∩ Z^I| = |I|")]
    CriterionNotMet(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

impl Error {
    pub(crate) fn too_large(what: &'static str, order: impl ToString, cap: u64) -> Self {
        Error::GroupTooLarge {
            what,
            order: order.to_string(),
            cap,
        }
    }

    /// True for errors raised by a configured size cap.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::GroupTooLarge { .. } | Error::TooManyVariables(_)
        )
    }
}
