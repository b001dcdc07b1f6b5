use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::basis::Axis;
use super::operator::{re, Operator, C};
use super::tensor::check_rank1;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Below this `|sin beta|` only one combination of alpha and gamma is defined.
pub const GIMBAL_TOL: f64 = 1e-9;

/// Active `R_z(alpha) R_y(beta) R_z(gamma)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct EulerAngles<T> {
    pub alpha: T,
    pub beta: T,
    pub gamma: T,
}

impl<T: Real> EulerAngles<T> {
    pub fn new(alpha: T, beta: T, gamma: T) -> Self {
        Self { alpha, beta, gamma }
    }
}

/// Spin-1/2 representation of a rotation (sign is physically irrelevant).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Su2<T: Real> {
    pub u: [[C<T>; 2]; 2],
}

impl<T: Real> Su2<T> {
    pub fn identity() -> Self {
        let z = re(T::zero());
        let o = re(T::one());
        Self { u: [[o, z], [z, o]] }
    }

    pub fn rz(theta: T) -> Self {
        let h = theta * T::lit(0.5);
        let z = re(T::zero());
        Self { u: [[Complex::from_polar(T::one(), -h), z], [z, Complex::from_polar(T::one(), h)]] }
    }

    pub fn ry(theta: T) -> Self {
        let (s, c) = (theta * T::lit(0.5)).sin_cos();
        Self { u: [[re(c), re(-s)], [re(s), re(c)]] }
    }

    /// `exp(-i theta (cos phi Sx + sin phi Sy))`
    pub fn pulse(theta: T, phi: T) -> Self {
        let (s, c) = (theta * T::lit(0.5)).sin_cos();
        let mis = Complex::new(T::zero(), -s);
        Self {
            u: [
                [re(c), mis * Complex::from_polar(T::one(), -phi)],
                [mis * Complex::from_polar(T::one(), phi), re(c)],
            ],
        }
    }

    pub fn axis(theta: T, axis: Axis) -> Result<Self> {
        match axis {
            Axis::X => Ok(Self::pulse(theta, T::zero())),
            Axis::Y => Ok(Self::ry(theta)),
            Axis::Z => Ok(Self::rz(theta)),
            a => Err(Error::OutOfRange(format!("rotation axis {a:?}"))),
        }
    }

    pub fn from_euler(e: &EulerAngles<T>) -> Self {
        Self::rz(e.alpha).mul(&Self::ry(e.beta)).mul(&Self::rz(e.gamma))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let a = &self.u;
        let b = &o.u;
        Self {
            u: [
                [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
                [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
            ],
        }
    }

    pub fn adjoint(&self) -> Self {
        let a = &self.u;
        Self { u: [[a[0][0].conj(), a[1][0].conj()], [a[0][1].conj(), a[1][1].conj()]] }
    }

    /// `u (x) u` on the pair space.
    pub fn to_operator(&self) -> Operator<T> {
        Operator::kron(&self.u, &self.u)
    }

    /// Euler decomposition with `beta` in `[0, pi]`. In the gimbal case
    /// gamma is taken from `prev` (or zero) and alpha absorbs the rest.
    pub fn euler(&self, prev: Option<&EulerAngles<T>>) -> EulerAngles<T> {
        let a = self.u[0][0];
        let b = self.u[1][0];
        let two = T::lit(2.0);
        let beta = two * b.norm().atan2(a.norm());
        let sum = -two * a.arg();
        let diff = two * b.arg();
        let g_prev = prev.map(|p| p.gamma).unwrap_or_else(T::zero);
        let tol = T::lit(GIMBAL_TOL);
        let (alpha, gamma) = if beta.sin().abs() < tol {
            if b.norm() <= a.norm() {
                (sum - g_prev, g_prev)
            } else {
                (diff + g_prev, g_prev)
            }
        } else {
            ((sum + diff) / two, (sum - diff) / two)
        };
        match prev {
            Some(p) => EulerAngles { alpha: unwrap_near(alpha, p.alpha), beta, gamma: unwrap_near(gamma, p.gamma) },
            None => EulerAngles { alpha, beta, gamma },
        }
    }

    /// Max-abs distance up to the sign ambiguity of the spinor representation.
    pub fn distance(&self, o: &Self) -> T {
        let mut dp = T::zero();
        let mut dm = T::zero();
        for i in 0..2 {
            for j in 0..2 {
                dp = dp.max((self.u[i][j] - o.u[i][j]).norm());
                dm = dm.max((self.u[i][j] + o.u[i][j]).norm());
            }
        }
        dp.min(dm)
    }
}

/// Shift `x` by a multiple of 2 pi so that it lies nearest to `reference`.
pub fn unwrap_near<T: Real>(x: T, reference: T) -> T {
    let tau = T::TAU();
    let k = ((reference - x) / tau).round();
    x + k * tau
}

/// Total-spin rotation operator for the given Euler triple.
pub fn rotation<T: Real>(omega: &EulerAngles<T>) -> Operator<T> {
    Su2::from_euler(omega).to_operator()
}

/// `exp(-i theta F_axis)`
pub fn rotation_axis<T: Real>(theta: T, axis: Axis) -> Result<Operator<T>> {
    Ok(Su2::axis(theta, axis)?.to_operator())
}

/// Reduced rank-1 Wigner element `d^1_{mu' mu}(beta)`.
pub fn wigner_d1<T: Real>(mu_prime: i8, mu: i8, beta: T) -> Result<T> {
    check_rank1("mu'", mu_prime)?;
    check_rank1("mu", mu)?;
    let (s, c) = beta.sin_cos();
    let half = T::lit(0.5);
    let r = T::FRAC_1_SQRT_2();
    Ok(match (mu_prime, mu) {
        (1, 1) | (-1, -1) => (T::one() + c) * half,
        (1, -1) | (-1, 1) => (T::one() - c) * half,
        (1, 0) | (0, -1) => -s * r,
        (0, 1) | (-1, 0) => s * r,
        _ => c,
    })
}

/// `D^1_{mu' mu}(alpha, beta, gamma) = exp(-i mu' alpha) d^1 exp(-i mu gamma)`.
pub fn wigner_big_d1<T: Real>(mu_prime: i8, mu: i8, e: &EulerAngles<T>) -> Result<C<T>> {
    let d = wigner_d1(mu_prime, mu, e.beta)?;
    let ph = -(T::lit(mu_prime as f64) * e.alpha + T::lit(mu as f64) * e.gamma);
    Ok(Complex::from_polar(d, ph))
}
