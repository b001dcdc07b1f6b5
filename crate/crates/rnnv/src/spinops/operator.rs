use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;

use crate::scalar::Real;

pub type C<T> = Complex<T>;

#[inline]
pub(crate) fn c<T: Real>(re: f64, im: f64) -> C<T> {
    C::new(T::lit(re), T::lit(im))
}

#[inline]
pub(crate) fn re<T: Real>(x: T) -> C<T> {
    C::new(x, T::zero())
}

/// Dense 4x4 complex matrix over the two-spin space, Zeeman basis
/// `{aa, ab, ba, bb}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Operator<T: Real> {
    pub m: [[C<T>; 4]; 4],
}

/// Ket in the Zeeman product basis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateVector<T: Real> {
    pub amp: [C<T>; 4],
}

impl<T: Real> Default for Operator<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Real> Operator<T> {
    pub fn zero() -> Self {
        Self { m: [[C::new(T::zero(), T::zero()); 4]; 4] }
    }

    pub fn identity() -> Self {
        Self::diag([re(T::one()); 4])
    }

    pub fn diag(d: [C<T>; 4]) -> Self {
        let mut o = Self::zero();
        for (i, v) in d.into_iter().enumerate() {
            o.m[i][i] = v;
        }
        o
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> C<T>) -> Self {
        let mut o = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                o.m[i][j] = f(i, j);
            }
        }
        o
    }

    pub fn from_real(rows: [[f64; 4]; 4]) -> Self {
        Self::from_fn(|i, j| c(rows[i][j], 0.0))
    }

    /// `|ket><bra|`
    pub fn outer(ket: &StateVector<T>, bra: &StateVector<T>) -> Self {
        Self::from_fn(|i, j| ket.amp[i] * bra.amp[j].conj())
    }

    /// Kronecker product of two 2x2 matrices (spin 1 (x) spin 2).
    pub fn kron(a: &[[C<T>; 2]; 2], b: &[[C<T>; 2]; 2]) -> Self {
        Self::from_fn(|i, j| a[i / 2][j / 2] * b[i % 2][j % 2])
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(|i, j| self.m[j][i].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.m[j][i])
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(|i, j| self.m[i][j].conj())
    }

    pub fn scale(&self, s: C<T>) -> Self {
        Self::from_fn(|i, j| self.m[i][j] * s)
    }

    pub fn scale_re(&self, s: T) -> Self {
        Self::from_fn(|i, j| self.m[i][j] * s)
    }

    pub fn trace(&self) -> C<T> {
        (0..4).fold(C::new(T::zero(), T::zero()), |acc, i| acc + self.m[i][i])
    }

    /// Hilbert-Schmidt inner product `Tr(self^dagger other)`.
    pub fn hs(&self, other: &Self) -> C<T> {
        let mut s = C::new(T::zero(), T::zero());
        for i in 0..4 {
            for j in 0..4 {
                s = s + self.m[i][j].conj() * other.m[i][j];
            }
        }
        s
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    pub fn frobenius(&self) -> T {
        self.hs(self).re.max(T::zero()).sqrt()
    }

    pub fn max_abs(&self) -> T {
        let mut mx = T::zero();
        for row in &self.m {
            for v in row {
                mx = mx.max(v.norm());
            }
        }
        mx
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        (*self - *other).max_abs()
    }

    pub fn hermiticity_error(&self) -> T {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn unitarity_error(&self) -> T {
        (self.adjoint() * *self - Self::identity()).max_abs()
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.hermiticity_error() <= tol
    }

    pub fn is_unitary(&self, tol: T) -> bool {
        self.unitarity_error() <= tol
    }

    /// `U X U^dagger`
    pub fn sandwich(&self, x: &Self) -> Self {
        *self * *x * self.adjoint()
    }

    pub fn apply(&self, v: &StateVector<T>) -> StateVector<T> {
        let mut out = [C::new(T::zero(), T::zero()); 4];
        for (i, o) in out.iter_mut().enumerate() {
            for j in 0..4 {
                *o = *o + self.m[i][j] * v.amp[j];
            }
        }
        StateVector { amp: out }
    }

    /// `<bra| self |ket>`
    pub fn element(&self, bra: &StateVector<T>, ket: &StateVector<T>) -> C<T> {
        bra.inner(&self.apply(ket))
    }

    /// Frobenius distance minimized over a global phase.
    pub fn phase_aligned_distance(&self, other: &Self) -> T {
        let overlap = other.hs(self);
        let mag = overlap.norm();
        let phase = if mag > T::tiny() { overlap / mag } else { re(T::one()) };
        (*self - other.scale(phase)).frobenius()
    }

    /// Change of scalar type.
    pub fn cast<U: Real>(&self) -> Operator<U> {
        Operator::from_fn(|i, j| {
            let v = self.m[i][j];
            C::new(U::lit(v.re.as_f64()), U::lit(v.im.as_f64()))
        })
    }
}

impl<T: Real> Index<(usize, usize)> for Operator<T> {
    type Output = C<T>;
    fn index(&self, (i, j): (usize, usize)) -> &C<T> {
        &self.m[i][j]
    }
}

impl<T: Real> IndexMut<(usize, usize)> for Operator<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C<T> {
        &mut self.m[i][j]
    }
}

impl<T: Real> Mul for Operator<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut o = Self::zero();
        for i in 0..4 {
            for k in 0..4 {
                let a = self.m[i][k];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                for j in 0..4 {
                    o.m[i][j] = o.m[i][j] + a * rhs.m[k][j];
                }
            }
        }
        o
    }
}

impl<T: Real> Mul<C<T>> for Operator<T> {
    type Output = Self;
    fn mul(self, s: C<T>) -> Self {
        self.scale(s)
    }
}

impl<T: Real> Add for Operator<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.m[i][j] + rhs.m[i][j])
    }
}

impl<T: Real> AddAssign for Operator<T> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<T: Real> Sub for Operator<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.m[i][j] - rhs.m[i][j])
    }
}

impl<T: Real> Neg for Operator<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::from_fn(|i, j| -self.m[i][j])
    }
}

impl<T: Real> StateVector<T> {
    pub fn new(amp: [C<T>; 4]) -> Self {
        Self { amp }
    }

    pub fn basis(k: usize) -> Self {
        let mut amp = [C::new(T::zero(), T::zero()); 4];
        amp[k] = re(T::one());
        Self { amp }
    }

    /// `<self|other>`
    pub fn inner(&self, other: &Self) -> C<T> {
        self.amp
            .iter()
            .zip(other.amp.iter())
            .fold(C::new(T::zero(), T::zero()), |acc, (a, b)| acc + a.conj() * *b)
    }

    pub fn norm(&self) -> T {
        self.inner(self).re.sqrt()
    }

    pub fn scale(&self, s: C<T>) -> Self {
        Self { amp: self.amp.map(|a| a * s) }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut amp = self.amp;
        for (a, b) in amp.iter_mut().zip(other.amp.iter()) {
            *a = *a + *b;
        }
        Self { amp }
    }
}
