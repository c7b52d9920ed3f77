//! Class groups of imaginary quadratic fields via reduced binary quadratic
//! forms, used as an independent check on small instances of the one-curve
//! construction.

mod form;
mod oracle;
mod structure;

pub use form::{check_discriminant, compose, power, reduce, BinaryQuadraticForm};
pub use oracle::{
    curve_instances, oracle_instances, oracle_parameters, small_instance_oracle, OracleBudget, OracleStatus,
    OracleVerdict, SingleCurve, ORACLE_PARAMETER_LIMIT,
};
pub use structure::{
    class_number, enumerate_reduced, fundamental_discriminant, group_structure, p_rank,
    p_torsion_count, smith_diagonal, ClassGroupStructure, DEFAULT_DISC_BOUND,
};
