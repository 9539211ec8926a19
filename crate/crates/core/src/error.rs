use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("infinite field: {0} cannot be enumerated")]
    InfiniteField(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("prime {0} exceeds the supported bound 2^31")]
    PrimeTooLarge(u64),

    #[error("cannot parse scalar {text:?} in {field}")]
    ParseScalar { text: String, field: String },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("subspace is not contained in the ambient subspace")]
    NotContained,

    #[error("subspace is not an ideal")]
    NotAnIdeal,

    #[error("subspace is not closed under the product")]
    NotASubalgebra,

    #[error("budget exceeded for {what}: need {needed}, budget {budget}")]
    BudgetExceeded {
        what: String,
        needed: u128,
        budget: u128,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("algebra is not solvable")]
    NotSolvable,

    #[error("algebra is not centraliser transitive")]
    NotCt,

    #[error("invalid algebra file: {0}")]
    Format(String),

    #[error("invalid linear expression {0:?}")]
    Expression(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_budget(what: &str, needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        Err(Error::BudgetExceeded {
            what: what.to_string(),
            needed,
            budget,
        })
    } else {
        Ok(())
    }
}
