#[cfg(test)]
use num_complex::Complex;

use super::operator::{c, re, Operator, StateVector, C};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Spin {
    One,
    Two,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
    Plus,
    Minus,
}

fn single<T: Real>(axis: Axis) -> [[C<T>; 2]; 2] {
    let z = c::<T>(0.0, 0.0);
    match axis {
        Axis::X => [[z, c(0.5, 0.0)], [c(0.5, 0.0), z]],
        Axis::Y => [[z, c(0.0, -0.5)], [c(0.0, 0.5), z]],
        Axis::Z => [[c(0.5, 0.0), z], [z, c(-0.5, 0.0)]],
        Axis::Plus => [[z, c(1.0, 0.0)], [z, z]],
        Axis::Minus => [[z, z], [c(1.0, 0.0), z]],
    }
}

fn eye2<T: Real>() -> [[C<T>; 2]; 2] {
    let z = c::<T>(0.0, 0.0);
    [[c(1.0, 0.0), z], [z, c(1.0, 0.0)]]
}

/// Single-spin operator embedded in the pair space.
pub fn angular_momentum<T: Real>(spin: Spin, axis: Axis) -> Operator<T> {
    match spin {
        Spin::One => Operator::kron(&single(axis), &eye2()),
        Spin::Two => Operator::kron(&eye2(), &single(axis)),
    }
}

/// Total spin component `F_a = I1a + I2a`.
pub fn total<T: Real>(axis: Axis) -> Operator<T> {
    angular_momentum(Spin::One, axis) + angular_momentum(Spin::Two, axis)
}

/// `I1 . I2`
pub fn scalar_coupling<T: Real>() -> Operator<T> {
    [Axis::X, Axis::Y, Axis::Z]
        .into_iter()
        .map(|a| angular_momentum::<T>(Spin::One, a) * angular_momentum(Spin::Two, a))
        .fold(Operator::zero(), |acc, x| acc + x)
}

/// Particle-exchange operator (12).
pub fn exchange<T: Real>() -> Operator<T> {
    Operator::from_real([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ])
}

/// Singlet and triplet kets of the pair.
#[derive(Clone, Copy, Debug)]
pub struct SingletTriplet<T: Real> {
    pub s0: StateVector<T>,
    pub tp1: StateVector<T>,
    pub t0: StateVector<T>,
    pub tm1: StateVector<T>,
}

impl<T: Real> SingletTriplet<T> {
    /// Triplet ket with projection `m`.
    pub fn triplet(&self, m: i8) -> StateVector<T> {
        match m {
            1 => self.tp1,
            0 => self.t0,
            _ => self.tm1,
        }
    }

    /// `[S0, T+1, T0, T-1]`
    pub fn all(&self) -> [StateVector<T>; 4] {
        [self.s0, self.tp1, self.t0, self.tm1]
    }
}

pub fn singlet_triplet_states<T: Real>() -> SingletTriplet<T> {
    let h = T::FRAC_1_SQRT_2();
    let z = re(T::zero());
    SingletTriplet {
        s0: StateVector::new([z, re(h), re(-h), z]),
        tp1: StateVector::basis(0),
        t0: StateVector::new([z, re(h), re(h), z]),
        tm1: StateVector::basis(3),
    }
}

/// Unitary whose columns are `S0, T+1, T0, T-1`.
pub fn st_basis<T: Real>() -> Operator<T> {
    let st = singlet_triplet_states::<T>().all();
    Operator::from_fn(|i, k| st[k].amp[i])
}

#[cfg(test)]
pub(crate) fn cplx<T: Real>(x: f64, y: f64) -> Complex<T> {
    c(x, y)
}
