use serde::{Deserialize, Serialize};

use super::protocols::{singlet_filter_protocol, st_excitation_protocol, evolve, Builder};
use super::{singlet_order, t00_filter, thermal_state};
use crate::engine::{ExecutionContext, SpinSystem};
use crate::error::{Error, Result};
use crate::exact::{self, Exact};
use crate::sequence::{build_m2s, build_s2m, Central, DelayRule, EchoOptions, PulseMode, SymmetryNumbers, Timing};

/// Pair parameters in Hz.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SystemConfig {
    pub j_hz: f64,
    /// Sum of the two offsets, Hz.
    pub sum_hz: f64,
    /// Difference of the two offsets, Hz.
    pub diff_hz: f64,
}

impl Default for SystemConfig {
    fn default() -> Self {
        Self { j_hz: 54.39, sum_hz: 0.0, diff_hz: 7.5 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ContextConfig {
    /// Nominal nutation frequency, Hz.
    pub nut_hz: f64,
    pub amplitude_scale: f64,
    /// Common resonance offset, Hz.
    pub offset_hz: f64,
    pub time_grid_s: f64,
}

impl Default for ContextConfig {
    fn default() -> Self {
        Self { nut_hz: 12_500.0, amplitude_scale: 1.0, offset_hz: 0.0, time_grid_s: 1e-6 }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Construction {
    Standard,
    #[default]
    Riffled,
    /// Riffled R4_3^1 shifted by -45 degrees.
    Pulsepol,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum SequenceKind {
    Rnnv {
        sym: SymmetryNumbers,
        #[serde(default)]
        construction: Construction,
        #[serde(default)]
        element: Central,
    },
    M2s {
        #[serde(default)]
        tau_e_us: Option<f64>,
        #[serde(default)]
        n1: Option<u32>,
        #[serde(default)]
        n2: Option<u32>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceConfig {
    pub kind: SequenceKind,
    #[serde(default = "default_mode")]
    pub mode: PulseMode,
    #[serde(default)]
    pub tau_r_us: Option<f64>,
    #[serde(default)]
    pub delay_rule: DelayRule,
    /// Extra phase shift of every pulse, degrees.
    #[serde(default)]
    pub shift_deg: f64,
    /// Relative inter-pulse delay mismatch applied to every delay.
    #[serde(default)]
    pub delay_mismatch: f64,
}

fn default_mode() -> PulseMode {
    PulseMode::Delta
}

impl Default for SequenceConfig {
    fn default() -> Self {
        Self {
            kind: SequenceKind::Rnnv {
                sym: SymmetryNumbers { big_n: 4, n: 3, nu: 1 },
                construction: Construction::Riffled,
                element: Central::Plain,
            },
            mode: PulseMode::Delta,
            tau_r_us: None,
            delay_rule: DelayRule::ConserveElement,
            shift_deg: 0.0,
            delay_mismatch: 0.0,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reconversion {
    /// The excitation train again.
    #[default]
    Same,
    /// Event-reversed excitation sequence.
    TimeReversed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProtocolKind {
    Filtered {
        n_exc: usize,
        n_rec: usize,
        #[serde(default)]
        reconversion: Reconversion,
    },
    StExcitation {
        n: usize,
    },
    SingletOrder {
        n: usize,
    },
}

/// Complete description of one simulation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProtocolConfig {
    #[serde(default)]
    pub system: SystemConfig,
    #[serde(default)]
    pub context: ContextConfig,
    #[serde(default)]
    pub sequence: SequenceConfig,
    pub protocol: ProtocolKind,
}

impl Default for ProtocolConfig {
    fn default() -> Self {
        Self {
            system: SystemConfig::default(),
            context: ContextConfig::default(),
            sequence: SequenceConfig::default(),
            protocol: ProtocolKind::Filtered { n_exc: 9, n_rec: 9, reconversion: Reconversion::Same },
        }
    }
}

fn exact_of(x: f64, what: &'static str) -> Result<Exact> {
    if !x.is_finite() {
        return Err(Error::NonFinite(what));
    }
    exact::snap(x)
}

impl ProtocolConfig {
    pub fn spin_system(&self) -> Result<SpinSystem<f64>> {
        let tau = std::f64::consts::TAU;
        SpinSystem::new(self.system.j_hz, tau * self.system.sum_hz, tau * self.system.diff_hz)
    }

    pub fn execution_context(&self) -> Result<ExecutionContext<f64>> {
        let c = &self.context;
        let tau = std::f64::consts::TAU;
        ExecutionContext::new(tau * c.nut_hz, c.amplitude_scale, tau * c.offset_hz, c.time_grid_s)
    }

    pub fn timing(&self) -> Result<Timing> {
        let mut t = match self.sequence.mode {
            PulseMode::Delta => Timing::delta(),
            PulseMode::Finite => Timing::finite(exact_of(self.context.nut_hz, "nutation frequency")?),
        };
        t = t.with_rule(self.sequence.delay_rule);
        if let Some(us) = self.sequence.tau_r_us {
            t = t.with_tau_r(exact_of(us, "tau_R")? / exact::int(1_000_000));
        }
        Ok(t)
    }

    fn j_exact(&self) -> Result<Exact> {
        exact_of(self.system.j_hz, "J")
    }

    fn echo_options(&self) -> Result<EchoOptions> {
        match &self.sequence.kind {
            SequenceKind::M2s { tau_e_us, n1, n2 } => Ok(EchoOptions {
                tau_e_s: tau_e_us.map(|t| exact_of(t, "tau_e").map(|x| x / exact::int(1_000_000))).transpose()?,
                n1: *n1,
                n2: *n2,
                m1: None,
            }),
            _ => Ok(EchoOptions::default()),
        }
    }

    fn adjust(&self, b: Builder) -> Result<Builder> {
        let shift = exact_of(self.sequence.shift_deg, "phase shift")?;
        let factor = exact::int(1) + exact_of(self.sequence.delay_mismatch, "delay mismatch")?;
        b.map(|s| s.phase_shift(shift).scale_delays(factor))
    }

    /// Builder of the excitation sequence.
    pub fn excitation(&self) -> Result<Builder> {
        let timing = self.timing()?;
        let j = self.j_exact()?;
        let b = match &self.sequence.kind {
            SequenceKind::Rnnv { sym, construction, element } => match construction {
                Construction::Standard => Builder::rnnv(*sym, j, &timing, false, *element)?,
                Construction::Riffled => Builder::rnnv(*sym, j, &timing, true, *element)?,
                Construction::Pulsepol => {
                    let s = SymmetryNumbers::new(4, 3, 1)?;
                    if *sym != s {
                        return Err(Error::InvalidSymmetry(format!("PulsePol is built on {}, not {}", s.label(), sym.label())));
                    }
                    Builder::rnnv(s, j, &timing, true, *element)?.map(|x| Ok(x.phase_shift(exact::int(-45))))?
                }
            },
            SequenceKind::M2s { .. } => {
                let theta = self.spin_system()?.theta_st();
                Builder::Fixed(build_m2s(j, theta, &timing, &self.echo_options()?)?)
            }
        };
        self.adjust(b)
    }

    /// Builder of the reconversion sequence.
    pub fn reconversion(&self) -> Result<Builder> {
        let rec = match self.protocol {
            ProtocolKind::Filtered { reconversion, .. } => reconversion,
            _ => Reconversion::Same,
        };
        match (&self.sequence.kind, rec) {
            (SequenceKind::M2s { .. }, _) => {
                let theta = self.spin_system()?.theta_st();
                let b = Builder::Fixed(build_s2m(self.j_exact()?, theta, &self.timing()?, &self.echo_options()?)?);
                self.adjust(b)
            }
            (_, Reconversion::Same) => self.excitation(),
            (_, Reconversion::TimeReversed) => match &self.protocol {
                ProtocolKind::Filtered { n_exc, .. } => Ok(Builder::Fixed(self.excitation()?.build(*n_exc).reversed())),
                _ => self.excitation(),
            },
        }
    }

    /// Copy with the element counts set to `n`.
    pub fn with_n(&self, n: usize) -> Self {
        let mut c = self.clone();
        c.protocol = match c.protocol {
            ProtocolKind::Filtered { reconversion, .. } => ProtocolKind::Filtered { n_exc: n, n_rec: n, reconversion },
            ProtocolKind::StExcitation { .. } => ProtocolKind::StExcitation { n },
            ProtocolKind::SingletOrder { .. } => ProtocolKind::SingletOrder { n },
        };
        c
    }

    /// Scalar observable: filtered efficiency, singlet order, or the larger
    /// normalized outer-line magnitude.
    pub fn observable(&self) -> Result<f64> {
        let sys = self.spin_system()?;
        let ctx = self.execution_context()?;
        match self.protocol {
            ProtocolKind::Filtered { n_exc, n_rec, .. } => {
                let out = singlet_filter_protocol(&self.excitation()?, &self.reconversion()?, n_exc, n_rec, &sys, &ctx, self.sequence.mode)?;
                Ok(out.efficiency)
            }
            ProtocolKind::SingletOrder { n } => {
                let rho = evolve(&thermal_state(), &self.excitation()?.build(n), &sys, &ctx)?;
                Ok(singlet_order(&t00_filter(&rho)))
            }
            ProtocolKind::StExcitation { n } => {
                let lines = st_excitation_protocol(&self.excitation()?, n, &sys, &ctx)?;
                Ok(lines
                    .iter()
                    .filter(|l| l.transition.contains('S'))
                    .map(|l| l.amplitude.norm())
                    .fold(0.0, f64::max))
            }
        }
    }
}
