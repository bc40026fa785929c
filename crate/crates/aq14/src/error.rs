use thiserror::Error;

use crate::torus::TorusElement;

#[derive(Error, Debug)]
pub enum Error {
    #[error("operation requires a nonzero element")]
    EmptyElement,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parity hypothesis violated: {0}")]
    Parity(String),

    #[error("expansion did not terminate; nonzero residue remains")]
    ExpansionResidue { residue: TorusElement },

    #[error("structural violation: {0}")]
    Structural(String),
}

pub type Result<T> = std::result::Result<T, Error>;
