use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Graded dimensions `dim_0, …, dim_top` of a graded algebra.
///
/// Every producer in this crate pads to `top = t·e(G)` so results from the
/// different methods compare entrywise.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HilbertFunction {
    pub t: u32,
    pub dims: Vec<u64>,
}

impl HilbertFunction {
    pub fn new(t: u32, dims: Vec<u64>) -> Self {
        HilbertFunction { t, dims }
    }

    pub fn total(&self) -> u64 {
        self.dims.iter().sum()
    }

    /// Index of the last nonzero dimension.
    pub fn top_degree(&self) -> Option<usize> {
        self.dims.iter().rposition(|&d| d != 0)
    }

    pub fn padded(mut self, len: usize) -> Self {
        if self.dims.len() < len {
            self.dims.resize(len, 0);
        }
        self
    }
}

impl fmt::Display for HilbertFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.dims.iter().map(u64::to_string).collect();
        write!(f, "[{}]", dims.join(", "))
    }
}

pub(crate) fn to_dim(c: &BigInt, degree: i64) -> Result<u64> {
    c.to_u64().ok_or(Error::BadCoefficient { degree })
}
