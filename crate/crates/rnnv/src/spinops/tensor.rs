use super::basis::{singlet_triplet_states, total, Axis};
use super::operator::{Operator, C};
use crate::error::{Error, Result};
use crate::scalar::Real;

pub(crate) fn check_rank1(name: &str, m: i8) -> Result<()> {
    if (-1..=1).contains(&m) {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("{name} = {m}, expected -1, 0 or 1")))
    }
}

/// Exchange-symmetric rank-1 tensor built from total spin operators.
pub fn tensor_gerade<T: Real>(m: i8) -> Result<Operator<T>> {
    check_rank1("m", m)?;
    let r = T::FRAC_1_SQRT_2();
    Ok(match m {
        1 => total::<T>(Axis::Plus).scale_re(-r),
        0 => total(Axis::Z),
        _ => total::<T>(Axis::Minus).scale_re(r),
    })
}

/// Exchange-antisymmetric rank-1 tensor `|T_m><S0|`.
pub fn tensor_ungerade<T: Real>(m: i8) -> Result<Operator<T>> {
    check_rank1("m", m)?;
    let st = singlet_triplet_states::<T>();
    Ok(Operator::outer(&st.triplet(m), &st.s0))
}

/// Spin operator `Q_{1 m 1 mu}` multiplying the interaction-frame term with
/// quantum numbers `(m, mu)`.
pub fn term_operator<T: Real>(m: i8, mu: i8) -> Result<Operator<T>> {
    check_rank1("m", m)?;
    check_rank1("mu", mu)?;
    Ok(match m {
        1 => tensor_ungerade(mu)?,
        0 => tensor_gerade(mu)?,
        _ => {
            let sign = if mu % 2 == 0 { T::one() } else { -T::one() };
            tensor_ungerade::<T>(-mu)?.adjoint().scale_re(sign)
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

/// Fictitious spin-1/2 operators on the `{T+-1, S0}` two-level subspace.
pub fn single_transition<T: Real>(axis: Axis, branch: Branch) -> Result<Operator<T>> {
    let st = singlet_triplet_states::<T>();
    let t = match branch {
        Branch::Plus => st.tp1,
        Branch::Minus => st.tm1,
    };
    let s = st.s0;
    let ts = Operator::outer(&t, &s);
    let st_ = Operator::outer(&s, &t);
    let half = T::lit(0.5);
    Ok(match axis {
        Axis::X => (ts + st_).scale_re(half),
        Axis::Y => (ts - st_).scale(C::new(T::zero(), -half)),
        Axis::Z => (Operator::outer(&t, &t) - Operator::outer(&s, &s)).scale_re(half),
        other => return Err(Error::OutOfRange(format!("single-transition axis {other:?}"))),
    })
}

/// Projector onto `span{T+-1, S0}`.
pub fn st_projector<T: Real>(branch: Branch) -> Operator<T> {
    let st = singlet_triplet_states::<T>();
    let t = match branch {
        Branch::Plus => st.tp1,
        Branch::Minus => st.tm1,
    };
    Operator::outer(&t, &t) + Operator::outer(&st.s0, &st.s0)
}
