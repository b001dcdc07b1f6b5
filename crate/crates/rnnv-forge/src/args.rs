use clap::{Args, ValueEnum};
use rnnv::experiments::{Construction, ProtocolConfig, SequenceKind};
use rnnv::sequence::{Central, DelayRule, PulseMode, SymmetryNumbers};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    Delta,
    Finite,
}

impl From<ModeArg> for PulseMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Delta => PulseMode::Delta,
            ModeArg::Finite => PulseMode::Finite,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum RuleArg {
    /// Delays absorb all pulse durations; element lasts tau_R
    Conserve,
    /// tau = tau_R/2 minus the central pulse
    HalfPeriod,
}

impl From<RuleArg> for DelayRule {
    fn from(r: RuleArg) -> Self {
        match r {
            RuleArg::Conserve => DelayRule::ConserveElement,
            RuleArg::HalfPeriod => DelayRule::HalfPeriodMinusCentral,
        }
    }
}

/// Sequence selection shared by derive, simulate and sweep.
#[derive(Args, Clone, Debug, Default)]
pub struct SequenceArgs {
    /// Symmetry numbers as N,n,nu
    #[arg(long, allow_hyphen_values = true)]
    pub sym: Option<SymmetryNumbers>,
    /// Standard construction (one element, conjugated)
    #[arg(long, conflicts_with_all = ["riffled", "pulsepol", "m2s"])]
    pub standard: bool,
    /// Riffled construction (A and B elements)
    #[arg(long, conflicts_with_all = ["pulsepol", "m2s"])]
    pub riffled: bool,
    /// PulsePol (riffled R4_3^1 shifted by -45 degrees)
    #[arg(long, conflicts_with = "m2s")]
    pub pulsepol: bool,
    /// Magnetization-to-singlet echo train
    #[arg(long)]
    pub m2s: bool,
    /// Central element: plain, bb1, asbo11 or sp7
    #[arg(long)]
    pub element: Option<Central>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Nominal nutation frequency in kHz
    #[arg(long)]
    pub nut_khz: Option<f64>,
    /// Element duration override in microseconds
    #[arg(long)]
    pub tau_r_us: Option<f64>,
    #[arg(long, value_enum)]
    pub rule: Option<RuleArg>,
    /// Extra phase shift of every pulse, degrees
    #[arg(long, allow_hyphen_values = true)]
    pub shift: Option<f64>,
    /// Echo duration override for M2S, microseconds
    #[arg(long)]
    pub tau_e_us: Option<f64>,
    #[arg(long)]
    pub n1: Option<u32>,
    #[arg(long)]
    pub n2: Option<u32>,
}

/// Spin-system and rf conditions.
#[derive(Args, Clone, Debug, Default)]
pub struct SystemArgs {
    /// Scalar coupling, Hz
    #[arg(long)]
    pub j_hz: Option<f64>,
    /// Chemical-shift difference, Hz
    #[arg(long, allow_hyphen_values = true)]
    pub diff_hz: Option<f64>,
    /// Chemical-shift sum, Hz
    #[arg(long, allow_hyphen_values = true)]
    pub sum_hz: Option<f64>,
    /// rf amplitude relative to nominal
    #[arg(long)]
    pub scale: Option<f64>,
    /// Common resonance offset, Hz
    #[arg(long, allow_hyphen_values = true)]
    pub offset_hz: Option<f64>,
}

impl SequenceArgs {
    pub fn apply(&self, c: &mut ProtocolConfig) {
        let s = &mut c.sequence;
        if self.m2s {
            let (t, a, b) = match &s.kind {
                SequenceKind::M2s { tau_e_us, n1, n2 } => (*tau_e_us, *n1, *n2),
                _ => (None, None, None),
            };
            s.kind = SequenceKind::M2s { tau_e_us: self.tau_e_us.or(t), n1: self.n1.or(a), n2: self.n2.or(b) };
        } else if self.sym.is_some() || self.standard || self.riffled || self.pulsepol || self.element.is_some() {
            let (mut sym, mut construction, mut element) = match &s.kind {
                SequenceKind::Rnnv { sym, construction, element } => (*sym, *construction, *element),
                _ => (SymmetryNumbers { big_n: 4, n: 3, nu: 1 }, Construction::Riffled, Central::Plain),
            };
            if let Some(x) = self.sym {
                sym = x;
            }
            if self.standard {
                construction = Construction::Standard;
            }
            if self.riffled {
                construction = Construction::Riffled;
            }
            if self.pulsepol {
                construction = Construction::Pulsepol;
                if self.sym.is_none() {
                    sym = SymmetryNumbers { big_n: 4, n: 3, nu: 1 };
                }
            }
            if let Some(e) = self.element {
                element = e;
            }
            s.kind = SequenceKind::Rnnv { sym, construction, element };
        }
        if let Some(m) = self.mode {
            s.mode = m.into();
        }
        if let Some(t) = self.tau_r_us {
            s.tau_r_us = Some(t);
        }
        if let Some(r) = self.rule {
            s.delay_rule = r.into();
        }
        if let Some(x) = self.shift {
            s.shift_deg = x;
        }
        if let Some(k) = self.nut_khz {
            c.context.nut_hz = k * 1e3;
        }
    }
}

impl SystemArgs {
    pub fn apply(&self, c: &mut ProtocolConfig) {
        if let Some(x) = self.j_hz {
            c.system.j_hz = x;
        }
        if let Some(x) = self.diff_hz {
            c.system.diff_hz = x;
        }
        if let Some(x) = self.sum_hz {
            c.system.sum_hz = x;
        }
        if let Some(x) = self.scale {
            c.context.amplitude_scale = x;
        }
        if let Some(x) = self.offset_hz {
            c.context.offset_hz = x;
        }
    }
}
