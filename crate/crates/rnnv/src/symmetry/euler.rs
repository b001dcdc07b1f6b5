use num_complex::Complex;

use crate::engine::{rf_segments, ExecutionContext};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::sequence::{PulseSequence, SymmetryNumbers};
use crate::spinops::{wigner_d1, EulerAngles, Su2};

/// Sampled Euler angles of `U_rf(t)`, alpha and gamma unwrapped.
#[derive(Clone, Debug, Default)]
pub struct EulerTrajectory<T> {
    pub times: Vec<T>,
    pub angles: Vec<EulerAngles<T>>,
}

/// `d^1_{mu 0}(-beta) exp(i mu gamma)`
pub fn trajectory_coefficient<T: Real>(e: &EulerAngles<T>, mu: i8) -> Result<Complex<T>> {
    let d = wigner_d1(mu, 0, -e.beta)?;
    Ok(Complex::from_polar(d, T::lit(mu as f64) * e.gamma))
}

pub fn euler_trajectory<T: Real>(element: &PulseSequence, ctx: &ExecutionContext<T>, grid_step: T) -> Result<EulerTrajectory<T>> {
    if !(grid_step > T::zero()) {
        return Err(Error::InvalidParameter("grid step must be positive".into()));
    }
    let track = rf_segments(element, ctx)?;
    let mut out = EulerTrajectory::default();
    let push = |t: T, u: &Su2<T>, out: &mut EulerTrajectory<T>| {
        let e = u.euler(out.angles.last());
        out.times.push(t);
        out.angles.push(e);
    };
    push(T::zero(), &Su2::identity(), &mut out);
    for seg in &track.segments {
        push(seg.t0, &seg.start, &mut out);
        let k = (seg.duration / grid_step).ceil().to_usize().unwrap_or(1).max(1);
        let h = seg.duration / T::lit(k as f64);
        for i in 1..=k {
            let dt = h * T::lit(i as f64);
            push(seg.t0 + dt, &seg.at(dt), &mut out);
        }
    }
    push(track.duration, &track.end, &mut out);
    Ok(out)
}

/// Largest violation of `f_mu(t + tau_R) = -f_mu(t) exp(-i mu 2 pi nu / N)`
/// over a uniform grid, `f_mu` as in [`trajectory_coefficient`].
pub fn euler_symmetry_defect<T: Real>(train: &PulseSequence, sym: &SymmetryNumbers, ctx: &ExecutionContext<T>, samples: usize) -> Result<T> {
    let track = rf_segments(train, ctx)?;
    let tau_r = track.duration / T::lit(sym.big_n as f64);
    let span = track.duration - tau_r;
    let mut worst = T::zero();
    let turn = T::TAU() * T::lit(sym.nu as f64) / T::lit(sym.big_n as f64);
    for i in 0..samples {
        // offset by half a step so samples avoid element boundaries
        let t = span * (T::lit(i as f64) + T::lit(0.5)) / T::lit(samples as f64);
        let a = track.at(t).euler(None);
        let b = track.at(t + tau_r).euler(None);
        for mu in -1..=1i8 {
            let fa = trajectory_coefficient(&a, mu)?;
            let fb = trajectory_coefficient(&b, mu)?;
            let want = -fa * Complex::from_polar(T::one(), -(T::lit(mu as f64) * turn));
            worst = worst.max((fb - want).norm());
        }
    }
    Ok(worst)
}
