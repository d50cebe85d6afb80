//! Reconstruction of the Tutte polynomial of a connected loop-free graph
//! from the Hilbert function of its forest algebra, for `t ≥ n`.
//!
//! With `Q(y) = Σ_k dim_k y^(t·e − k)`, every subforest with `a` edges and
//! activity `b` contributes `(1 + … + y^(t−1))^a · y^(a + t·b)` to `Q`, whose
//! lowest term sits at `m = a + t·b`. Since `a < t`, `m` determines `(a, b)`,
//! so repeatedly stripping the lowest term recovers every count.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::{RecoveryError, Result};
use crate::hilbert::HilbertFunction;
use crate::poly::{Poly1, Poly2};
use crate::tutte::{Provenance, TuttePoly};

/// Stripping state: the residual of `Q` and the counts found so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoveryState {
    pub residual: Poly1,
    pub recovered: BTreeMap<(u32, u32), u64>,
    pub t: u32,
    pub edge_count: usize,
}

impl RecoveryState {
    pub fn new(h: &HilbertFunction, t: u32) -> Result<Self, RecoveryError> {
        let edge_count = infer_edge_count(h, t)?;
        let top = t as usize * edge_count;
        let residual = Poly1::from_terms(
            h.dims.iter().take(top + 1).enumerate().map(|(k, &d)| ((top - k) as u32, BigInt::from(d))),
        );
        Ok(RecoveryState { residual, recovered: BTreeMap::new(), t, edge_count })
    }

    /// Removes the forests accounting for the lowest remaining term.
    /// Returns `false` once the residual is zero.
    pub fn step(&mut self) -> Result<bool, RecoveryError> {
        let Some((m, s)) = self.residual.min_term() else { return Ok(false) };
        if s.is_negative() {
            return Err(RecoveryError::NegativeResidual { degree: m });
        }
        let count = s.to_u64().ok_or(RecoveryError::NegativeResidual { degree: m })?;
        let (a, b) = (m % self.t, m / self.t);
        let summand = Poly1::geometric_block(self.t, 0).pow(a).shift(m).scale(s);
        self.residual = &self.residual - &summand;
        if let Some((deg, _)) = self.residual.terms().find(|(_, c)| c.is_negative()) {
            return Err(RecoveryError::NegativeResidual { degree: deg });
        }
        *self.recovered.entry((a, b)).or_insert(0) += count;
        Ok(true)
    }
}

/// `e` from the top nonzero degree `t·e` attained by the empty forest.
pub fn infer_edge_count(h: &HilbertFunction, t: u32) -> Result<usize, RecoveryError> {
    if h.t != t {
        return Err(RecoveryError::LabelMismatch { expected: t, found: h.t });
    }
    let top = h.top_degree().ok_or(RecoveryError::ZeroHilbert)?;
    if top % t as usize != 0 {
        return Err(RecoveryError::TopDegreeNotDivisible { top, t });
    }
    if h.dims.len() > top + 1 {
        return Err(RecoveryError::LoopsPresent { top, len: h.dims.len() });
    }
    Ok(top / t as usize)
}

/// Counts `N[a][b]` of subforests by size and activity.
pub fn recover_activity_counts(h: &HilbertFunction, t: u32) -> Result<BTreeMap<(u32, u32), u64>, RecoveryError> {
    let mut state = RecoveryState::new(h, t)?;
    while state.step()? {}
    Ok(state.recovered)
}

/// `Σ N[a][b] (x−1)^(n−1−a) y^b`.
pub fn recover_tutte(h: &HilbertFunction, t: u32, n: usize) -> Result<TuttePoly, RecoveryError> {
    if (t as usize) < n {
        return Err(RecoveryError::TooFewLabels { t, n });
    }
    let counts = recover_activity_counts(h, t)?;
    let x_minus_one = &Poly2::x() - &Poly2::one();
    let mut poly = Poly2::zero();
    for (&(a, b), &count) in &counts {
        if a as usize >= n.max(1) {
            return Err(RecoveryError::ForestTooLarge { size: a, n });
        }
        let rank = n.saturating_sub(1) as u32;
        poly = &poly + &x_minus_one.pow(rank - a).shift((0, b)).scale(&BigInt::from(count));
    }
    Ok(TuttePoly { poly, provenance: Provenance::Recovered })
}
