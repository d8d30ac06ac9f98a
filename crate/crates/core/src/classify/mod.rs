//! Classification of torus-homogeneous locally nilpotent derivations.
//!
//! Admissible tuples pick one column per block; each admissible tuple carries
//! explicit base derivations, whose replicas exhaust the homogeneous LNDs.

mod construct;
mod kernel;
pub mod oracle;
mod report;
mod rigidity;
mod tuples;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::derivation::DerivationError;
use crate::scalar::GaussianRational;

pub use construct::{build_lnd, build_lnd_type1, build_lnd_type2, free_variable_lnd, lambda_family_text};
pub use kernel::kernel_generators;
pub use oracle::{oracle_enumerate, induced_weight_box, OracleConfig, OracleReport, WeightSolution};
pub use report::{
    class_report, ClassCount, ClassEntry, ClassTotal, Factoriality, FormulaEntry, FormulaVerdict, LndClassReport,
    ReportConfig,
};
pub use rigidity::{is_rigid, is_semirigid, makar_limanov, MlInvariant, RigidityWitness, Semirigidity};
pub use tuples::{admissible_tuples, base_descriptors, tuple_is_admissible};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("tuple {0} is not admissible")]
    InadmissibleTuple(String),
    #[error("needs normalization: {0}")]
    NeedsNormalization(String),
    #[error("exact division failed (internal contract violation): {0}")]
    ExactDivisionFailed(String),
    #[error("no free variable S{0}")]
    NoSuchFreeVariable(u32),
    #[error("operation requires a Type {expected} presentation")]
    WrongType { expected: u8 },
    #[error("descriptor does not fit the presentation: {0}")]
    InadmissibleDescriptor(String),
    #[error("oracle search space too large: {0}")]
    BoxTooLarge(String),
    #[error(transparent)]
    Derivation(#[from] DerivationError),
}

/// One column index `c_i` per block, in block order (1-based columns).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Columns(pub Vec<u32>);

impl fmt::Display for Columns {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for Columns {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum TupleCase {
    /// At most one block `i0` with `l_{i c_i} != 1`.
    Type1 { i0: Option<u32> },
    /// Every admissible labeling `{i1, i2}` for the two-exception case.
    T2CaseA { labelings: Vec<(u32, u32)> },
    /// Every admissible labeling `(i1, i2, i3)` for the three-exception case.
    T2CaseB { labelings: Vec<(u32, u32, u32)> },
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TupleC {
    pub columns: Columns,
    pub case: TupleCase,
}

impl TupleC {
    pub fn case_name(&self) -> String {
        match &self.case {
            TupleCase::Type1 { i0: Some(i) } => format!("Type1(i0={i})"),
            TupleCase::Type1 { i0: None } => "Type1".into(),
            TupleCase::T2CaseA { labelings } => {
                let (a, b) = labelings[0];
                format!("T2CaseA({a},{b})")
            }
            TupleCase::T2CaseB { labelings } => {
                let (a, b, c) = labelings[0];
                format!("T2CaseB({a},{b},{c})")
            }
        }
    }
}

/// Which explicit base derivation to build. Roles `[p, q, s]` name the blocks
/// playing the parts of blocks 0, 1, 2 in the three-block formulas.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LndDescriptor {
    FreeVariable(u32),
    Type1(Columns),
    T2a { columns: Columns, roles: [u32; 3] },
    T2b { columns: Columns, roles: [u32; 3], lambda: GaussianRational },
    T2c { columns: Columns, roles: [u32; 3], mu: GaussianRational },
    T2d { columns: Columns, roles: [u32; 3], lambda: GaussianRational },
}

impl LndDescriptor {
    pub fn columns(&self) -> Option<&Columns> {
        match self {
            LndDescriptor::FreeVariable(_) => None,
            LndDescriptor::Type1(c) => Some(c),
            LndDescriptor::T2a { columns, .. }
            | LndDescriptor::T2b { columns, .. }
            | LndDescriptor::T2c { columns, .. }
            | LndDescriptor::T2d { columns, .. } => Some(columns),
        }
    }

    pub fn roles(&self) -> Option<[u32; 3]> {
        match self {
            LndDescriptor::T2a { roles, .. }
            | LndDescriptor::T2b { roles, .. }
            | LndDescriptor::T2c { roles, .. }
            | LndDescriptor::T2d { roles, .. } => Some(*roles),
            _ => None,
        }
    }

    /// Short name in the usual notation.
    pub fn name(&self) -> String {
        match self {
            LndDescriptor::FreeVariable(k) => format!("∂/∂S{k}"),
            LndDescriptor::Type1(c) => format!("δ_C, C={c}"),
            LndDescriptor::T2a { columns, roles } => {
                format!("case (a), C={columns}, blocks {}", fmt_roles(roles))
            }
            LndDescriptor::T2b { columns, roles, lambda } => {
                format!("case (b), C={columns}, blocks {}, λ={lambda}", fmt_roles(roles))
            }
            LndDescriptor::T2c { columns, roles, mu } => {
                format!("case (c), C={columns}, blocks {}, μ={mu}", fmt_roles(roles))
            }
            LndDescriptor::T2d { columns, roles, lambda } => {
                format!("case (d), C={columns}, blocks {}, λ={lambda}", fmt_roles(roles))
            }
        }
    }
}

fn fmt_roles(r: &[u32; 3]) -> String {
    format!("({},{},{})", r[0], r[1], r[2])
}

impl fmt::Display for LndDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl Serialize for LndDescriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
