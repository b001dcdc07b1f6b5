use num_complex::Complex;

use super::rf::{rf_segments, RfTrack};
use super::{chemical_shift, propagate, ExecutionContext, SpinSystem};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::sequence::{PulseSequence, SymmetryNumbers};
use crate::spinops::{expm_hermitian, st_basis, term_operator, wigner_d1, Operator};
use crate::symmetry::TermQuantumNumbers;

/// Simpson intervals used across one finite pulse.
const PULSE_INTERVALS: usize = 256;

/// `omega_{1m1mu}`: `omega_Delta / 2` for `m = +-1`, the common offset for `m = 0`.
pub fn term_amplitude<T: Real>(system: &SpinSystem<T>, ctx: &ExecutionContext<T>, m: i8) -> T {
    if m == 0 {
        system.omega_sum * T::lit(0.5) + ctx.offset
    } else {
        system.omega_diff * T::lit(0.5)
    }
}

/// Single `(m, mu)` component of the interaction-frame chemical shift at `t`.
pub fn interaction_frame_term<T: Real>(
    t: T,
    track: &RfTrack<T>,
    system: &SpinSystem<T>,
    ctx: &ExecutionContext<T>,
    term: &TermQuantumNumbers,
) -> Result<Operator<T>> {
    let e = track.at(t).euler(None);
    let d = wigner_d1(term.mu, 0, -e.beta)?;
    let ph = T::lit(term.m as f64) * system.omega_j() * t + T::lit(term.mu as f64) * e.gamma;
    let coef = Complex::from_polar(d * term_amplitude(system, ctx, term.m), ph);
    Ok(term_operator::<T>(term.m, term.mu)?.scale(coef))
}

/// `exp(-i H_J t)`
pub(crate) fn coupling_propagator<T: Real>(system: &SpinSystem<T>, t: T) -> Operator<T> {
    let wj = system.omega_j();
    let b = st_basis::<T>();
    let e = energies(wj);
    let d = Operator::diag(e.map(|x| Complex::from_polar(T::one(), -(x * t))));
    b * d * b.adjoint()
}

/// Coupling energies in the `S0, T+1, T0, T-1` basis.
fn energies<T: Real>(wj: T) -> [T; 4] {
    let q = T::lit(0.25);
    [-(wj * T::lit(0.75)), wj * q, wj * q, wj * q]
}

/// `int_{t0}^{t0+d} exp(i w t) dt`
fn phase_integral<T: Real>(w: T, t0: T, d: T) -> Complex<T> {
    let x = w * d;
    let g = if x.abs() > T::lit(1e-4) {
        (Complex::from_polar(T::one(), x) - Complex::new(T::one(), T::zero())) / Complex::new(T::zero(), w)
    } else {
        let i = Complex::new(T::zero(), T::one());
        let ix = i * x;
        (Complex::new(T::one(), T::zero()) + ix / T::lit(2.0) + ix * ix / T::lit(6.0) + ix * ix * ix / T::lit(24.0)) * d
    };
    Complex::from_polar(T::one(), w * t0) * g
}

/// Projection of the average Hamiltonian onto one term operator.
#[derive(Clone, Copy, Debug)]
pub struct TermProjection<T: Real> {
    pub term: TermQuantumNumbers,
    /// `Tr(Q^dagger H) / Tr(Q^dagger Q)`
    pub coefficient: Complex<T>,
    /// Frobenius norm of `coefficient * Q`.
    pub norm: T,
}

/// First-order average Hamiltonian over a full cycle.
#[derive(Clone, Debug)]
pub struct AverageHamiltonian<T: Real> {
    pub h: Operator<T>,
    pub period: T,
    pub terms: Vec<TermProjection<T>>,
    track: RfTrack<T>,
}

impl<T: Real> AverageHamiltonian<T> {
    pub fn term(&self, m: i8, mu: i8) -> Option<&TermProjection<T>> {
        self.terms.iter().find(|p| p.term.m == m && p.term.mu == mu)
    }

    pub fn rf_track(&self) -> &RfTrack<T> {
        &self.track
    }
}

fn frame_hcs<T: Real>(w: &Operator<T>, hcs: &Operator<T>, uj: &Operator<T>) -> Operator<T> {
    let x = *uj * *w;
    x.adjoint() * *hcs * x
}

/// Numerically integrated first-order average Hamiltonian of a complete
/// RNnv cycle. Delays are integrated analytically, finite pulses by Simpson.
pub fn average_hamiltonian_1<T: Real>(
    seq: &PulseSequence,
    sym: &SymmetryNumbers,
    system: &SpinSystem<T>,
    ctx: &ExecutionContext<T>,
) -> Result<AverageHamiltonian<T>> {
    let track = rf_segments(seq, ctx)?;
    let period = track.duration;
    let cycle = T::lit(sym.n as f64) / system.j_hz;
    if (period - cycle).abs() > cycle * T::lit(1e-3) {
        return Err(Error::DurationMismatch { expected_s: cycle.as_f64(), found_s: period.as_f64() });
    }
    let hcs = chemical_shift(system, ctx);
    let b = st_basis::<T>();
    let m_st = b.adjoint() * hcs * b;
    let e = energies(system.omega_j());

    let mut acc = Operator::zero();
    for seg in &track.segments {
        match seg.pulse {
            None => {
                let integ = Operator::from_fn(|a, c| m_st.m[a][c] * phase_integral(e[a] - e[c], seg.t0, seg.duration));
                let w = seg.start.to_operator();
                acc += w.adjoint() * (b * integ * b.adjoint()) * w;
            }
            Some(_) => {
                let k = PULSE_INTERVALS;
                let h = seg.duration / T::lit(k as f64);
                let mut sum = Operator::zero();
                for i in 0..=k {
                    let dt = h * T::lit(i as f64);
                    let wgt = if i == 0 || i == k {
                        1.0
                    } else if i % 2 == 1 {
                        4.0
                    } else {
                        2.0
                    };
                    let w = seg.at(dt).to_operator();
                    let uj = coupling_propagator(system, seg.t0 + dt);
                    sum += frame_hcs(&w, &hcs, &uj).scale_re(T::lit(wgt));
                }
                acc += sum.scale_re(h / T::lit(3.0));
            }
        }
    }
    let hbar = if period > T::zero() { acc.scale_re(T::one() / period) } else { acc };
    let hbar = (hbar + hbar.adjoint()).scale_re(T::lit(0.5));

    let terms = TermQuantumNumbers::all()
        .into_iter()
        .map(|term| {
            let q = term_operator::<T>(term.m, term.mu)?;
            let qq = q.hs(&q).re;
            let coefficient = q.hs(&hbar) / qq;
            Ok(TermProjection { term, coefficient, norm: coefficient.norm() * qq.sqrt() })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AverageHamiltonian { h: hbar, period, terms, track })
}

/// Phase-aligned Frobenius distance between the exact propagator and the
/// first-order approximation `U_J(T) U_rf(T) exp(-i Hbar T)`.
pub fn effective_vs_exact_error<T: Real>(
    seq: &PulseSequence,
    sym: &SymmetryNumbers,
    system: &SpinSystem<T>,
    ctx: &ExecutionContext<T>,
) -> Result<T> {
    let ah = average_hamiltonian_1(seq, sym, system, ctx)?;
    let exact = propagate(seq, system, ctx)?;
    let t = ah.period;
    let approx = coupling_propagator(system, t) * ah.track.end.to_operator() * expm_hermitian(&ah.h, t)?;
    Ok(exact.phase_aligned_distance(&approx))
}
