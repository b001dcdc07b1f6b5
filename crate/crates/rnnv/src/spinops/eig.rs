//! Cyclic complex Jacobi diagonalization for 4x4 Hermitian matrices.

use num_complex::Complex;

use super::operator::{re, Operator};
use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_SWEEPS: usize = 64;

/// Eigen-decomposition `H = V diag(values) V^dagger`, values ascending.
#[derive(Clone, Copy, Debug)]
pub struct HermitianEigen<T: Real> {
    pub values: [T; 4],
    pub vectors: Operator<T>,
}

fn off_norm2<T: Real>(a: &Operator<T>) -> T {
    let mut s = T::zero();
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                s = s + a.m[i][j].norm_sqr();
            }
        }
    }
    s
}

pub fn eigh<T: Real>(h: &Operator<T>) -> Result<HermitianEigen<T>> {
    let mut a = *h;
    let mut v = Operator::<T>::identity();
    let scale = h.frobenius().max(T::tiny());
    let eps = T::epsilon();
    let thresh = (eps * scale) * (eps * scale);

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_norm2(&a) <= thresh {
            converged = true;
            break;
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && off_norm2(&a) > thresh * T::lit(1e4) {
        return Err(Error::NoConvergence);
    }

    let mut idx = [0usize, 1, 2, 3];
    let d = [a.m[0][0].re, a.m[1][1].re, a.m[2][2].re, a.m[3][3].re];
    idx.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).unwrap_or(std::cmp::Ordering::Equal));
    let values = idx.map(|i| d[i]);
    let vectors = Operator::from_fn(|r, k| v.m[r][idx[k]]);
    Ok(HermitianEigen { values, vectors })
}

fn rotate<T: Real>(a: &mut Operator<T>, v: &mut Operator<T>, p: usize, q: usize) {
    let apq = a.m[p][q];
    let mag = apq.norm();
    if mag <= T::tiny() {
        return;
    }
    let app = a.m[p][p].re;
    let aqq = a.m[q][q].re;
    // Phase that makes a_pq real and positive after the diagonal twist.
    let ph = apq.conj() / mag;
    let two = T::one() + T::one();
    let theta = (aqq - app) / (two * mag);
    let t = if theta.is_infinite() {
        T::zero()
    } else {
        theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt())
    };
    let cs = T::one() / (t * t + T::one()).sqrt();
    let sn = t * cs;

    let g_pp = re(cs);
    let g_pq = re(sn);
    let g_qp = ph * (-sn);
    let g_qq = ph * cs;

    // A <- A G
    for r in 0..4 {
        let xp = a.m[r][p];
        let xq = a.m[r][q];
        a.m[r][p] = xp * g_pp + xq * g_qp;
        a.m[r][q] = xp * g_pq + xq * g_qq;
    }
    // A <- G^dagger A
    for col in 0..4 {
        let yp = a.m[p][col];
        let yq = a.m[q][col];
        a.m[p][col] = g_pp.conj() * yp + g_qp.conj() * yq;
        a.m[q][col] = g_pq.conj() * yp + g_qq.conj() * yq;
    }
    a.m[p][q] = re(T::zero());
    a.m[q][p] = re(T::zero());
    a.m[p][p] = re(a.m[p][p].re);
    a.m[q][q] = re(a.m[q][q].re);
    // V <- V G
    for r in 0..4 {
        let xp = v.m[r][p];
        let xq = v.m[r][q];
        v.m[r][p] = xp * g_pp + xq * g_qp;
        v.m[r][q] = xp * g_pq + xq * g_qq;
    }
}

impl<T: Real> HermitianEigen<T> {
    /// `V diag(f(lambda)) V^dagger`
    pub fn map(&self, f: impl Fn(T) -> Complex<T>) -> Operator<T> {
        let fv = self.values.map(f);
        let v = &self.vectors;
        Operator::from_fn(|i, j| {
            let mut s = Complex::new(T::zero(), T::zero());
            for k in 0..4 {
                s = s + v.m[i][k] * fv[k] * v.m[j][k].conj();
            }
            s
        })
    }

    /// `exp(-i H t)`
    pub fn propagator(&self, t: T) -> Operator<T> {
        self.map(|l| Complex::from_polar(T::one(), -(l * t)))
    }
}

/// `exp(-i H t)` for Hermitian `H`.
pub fn expm_hermitian<T: Real>(h: &Operator<T>, t: T) -> Result<Operator<T>> {
    Ok(eigh(h)?.propagator(t))
}
