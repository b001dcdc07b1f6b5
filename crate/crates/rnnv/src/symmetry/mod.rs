//! Selection rules, rf Euler trajectories and scaling factors.

mod euler;
mod kappa;
mod table;

pub use euler::{euler_symmetry_defect, euler_trajectory, trajectory_coefficient, EulerTrajectory};
pub use kappa::{scaling_factor_delta, scaling_factor_numeric, st_effective, ScalingFactor, StEffective, TermSign};
pub use table::{reference_kappa, ReferenceKappa};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequence::SymmetryNumbers;

/// Quantum numbers `{l, m, lambda, mu}` of an interaction-frame term. Only
/// rank-1 terms occur for the isotropic pair, so `l = lambda = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TermQuantumNumbers {
    pub ell: i8,
    pub m: i8,
    pub lambda: i8,
    pub mu: i8,
}

impl TermQuantumNumbers {
    pub fn new(m: i8, mu: i8) -> Result<Self> {
        if m.abs() > 1 || mu.abs() > 1 {
            return Err(Error::OutOfRange(format!("term (m, mu) = ({m}, {mu})")));
        }
        Ok(Self { ell: 1, m, lambda: 1, mu })
    }

    /// All nine rank-1 terms, `m` major.
    pub fn all() -> Vec<Self> {
        let mut v = Vec::with_capacity(9);
        for m in -1..=1 {
            for mu in -1..=1 {
                v.push(Self { ell: 1, m, lambda: 1, mu });
            }
        }
        v
    }
}

impl std::fmt::Display for TermQuantumNumbers {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{{},{},{},{}}}", self.ell, self.m, self.lambda, self.mu)
    }
}

/// `m n - mu nu = (N/2) Z` with `Z` of the same parity as `lambda`.
pub fn is_allowed(sym: &SymmetryNumbers, term: &TermQuantumNumbers) -> bool {
    let x = term.m as i64 * sym.n as i64 - term.mu as i64 * sym.nu as i64;
    let half = sym.big_n as i64 / 2;
    if x % half != 0 {
        return false;
    }
    let z = x / half;
    (z - term.lambda as i64).rem_euclid(2) == 0
}

pub fn allowed_terms(sym: &SymmetryNumbers) -> Vec<TermQuantumNumbers> {
    TermQuantumNumbers::all().into_iter().filter(|t| is_allowed(sym, t)).collect()
}

/// The `mu` paired with `m = +1` when the symmetry selects exactly the two
/// singlet-triplet terms `(+1, mu)` and `(-1, -mu)`.
pub fn st_mu(sym: &SymmetryNumbers) -> Result<i8> {
    let terms = allowed_terms(sym);
    let mut pairs: Vec<(i8, i8)> = terms.iter().map(|t| (t.m, t.mu)).collect();
    pairs.sort();
    match pairs.as_slice() {
        [(-1, -1), (1, 1)] => Ok(1),
        [(-1, 1), (1, -1)] => Ok(-1),
        _ => Err(Error::NotSingletTriplet(format!("{} selects {:?}", sym.label(), pairs))),
    }
}
