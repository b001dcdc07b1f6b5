use std::path::PathBuf;

use clap::{Args, ValueEnum};
use rnnv::experiments::{
    grid, single_pulse_lines, singlet_filter_protocol, st_excitation_protocol, sweep, ProtocolKind, Reconversion, SweepAxis,
};

use crate::args::{SequenceArgs, SystemArgs};
use crate::config::{RunConfig, SweepSpec};
use crate::output::{config_hash, csv_text, emit, num};
use crate::usage;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ProtocolArg {
    /// Excite, T00 filter, reconvert, read out
    Filtered,
    /// Excite ST coherence and list AB-quartet lines
    StExcitation,
    /// Singlet order after excitation and filter
    SingletOrder,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum RecArg {
    Same,
    TimeReversed,
}

#[derive(Args, Debug, Default)]
pub struct CommonArgs {
    /// JSON run config; flags given on the command line override it
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub seq: SequenceArgs,
    #[command(flatten)]
    pub sys: SystemArgs,
    #[arg(long, value_enum)]
    pub protocol: Option<ProtocolArg>,
    /// Element count for excitation and reconversion
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub n_exc: Option<usize>,
    #[arg(long)]
    pub n_rec: Option<usize>,
    #[arg(long, value_enum)]
    pub reconversion: Option<RecArg>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// n, amplitude, offset or delay_mismatch
    #[arg(long)]
    pub axis: Option<SweepAxis>,
    #[arg(long, allow_hyphen_values = true)]
    pub from: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub to: Option<f64>,
    #[arg(long)]
    pub step: Option<f64>,
    /// Worker threads (default: all cores)
    #[arg(long)]
    pub jobs: Option<usize>,
}

fn build(c: &CommonArgs) -> anyhow::Result<RunConfig> {
    let mut rc = match &c.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let sim = &mut rc.simulation;
    c.seq.apply(sim);
    c.sys.apply(sim);
    let (mut n_exc, mut n_rec, mut rec) = match sim.protocol {
        ProtocolKind::Filtered { n_exc, n_rec, reconversion } => (n_exc, n_rec, reconversion),
        ProtocolKind::StExcitation { n } | ProtocolKind::SingletOrder { n } => (n, n, Reconversion::Same),
    };
    if let Some(n) = c.n {
        n_exc = n;
        n_rec = n;
    }
    n_exc = c.n_exc.unwrap_or(n_exc);
    n_rec = c.n_rec.unwrap_or(n_rec);
    if let Some(r) = c.reconversion {
        rec = match r {
            RecArg::Same => Reconversion::Same,
            RecArg::TimeReversed => Reconversion::TimeReversed,
        };
    }
    sim.protocol = match (c.protocol, &sim.protocol) {
        (Some(ProtocolArg::Filtered), _) | (None, ProtocolKind::Filtered { .. }) => {
            ProtocolKind::Filtered { n_exc, n_rec, reconversion: rec }
        }
        (Some(ProtocolArg::StExcitation), _) | (None, ProtocolKind::StExcitation { .. }) => ProtocolKind::StExcitation { n: n_exc },
        _ => ProtocolKind::SingletOrder { n: n_exc },
    };
    rc.validate()?;
    Ok(rc)
}

pub fn run_simulate(a: &SimulateArgs) -> anyhow::Result<()> {
    let rc = build(&a.common)?;
    let cfg = &rc.simulation;
    let sys = cfg.spin_system()?;
    let ctx = cfg.execution_context()?;
    let hash = config_hash(&rc)?;
    let (columns, rows): (Vec<&str>, Vec<Vec<String>>) = match cfg.protocol {
        ProtocolKind::Filtered { n_exc, n_rec, .. } => {
            let out = singlet_filter_protocol(&cfg.excitation()?, &cfg.reconversion()?, n_exc, n_rec, &sys, &ctx, cfg.sequence.mode)?;
            (
                vec!["n_exc", "n_rec", "efficiency", "signal_re", "signal_im", "singlet_order"],
                vec![vec![
                    n_exc.to_string(),
                    n_rec.to_string(),
                    num(out.efficiency),
                    num(out.signal.re),
                    num(out.signal.im),
                    num(out.singlet_order),
                ]],
            )
        }
        ProtocolKind::StExcitation { n } => {
            let mut rows = Vec::new();
            let tau = std::f64::consts::TAU;
            for (src, lines) in [("sequence", st_excitation_protocol(&cfg.excitation()?, n, &sys, &ctx)?), ("single_90", single_pulse_lines(&sys, &ctx)?)] {
                for l in lines {
                    rows.push(vec![
                        src.to_string(),
                        l.transition.clone(),
                        num(l.frequency / tau),
                        num(l.amplitude.re),
                        num(l.amplitude.im),
                        num(l.amplitude.norm()),
                    ]);
                }
            }
            (vec!["source", "transition", "frequency_hz", "amplitude_re", "amplitude_im", "magnitude"], rows)
        }
        ProtocolKind::SingletOrder { n } => (vec!["n", "singlet_order"], vec![vec![n.to_string(), num(cfg.observable()?)]]),
    };
    let text = csv_text(&hash, &columns, &rows)?;
    emit::<_, ()>(a.common.output.as_deref(), &text, &hash, &rc, None)
}

pub fn run_sweep(a: &SweepArgs) -> anyhow::Result<()> {
    let mut rc = build(&a.common)?;
    let spec = match (&rc.sweep, a.axis) {
        (_, Some(axis)) => {
            let (from, to, step) = match (a.from, a.to, a.step) {
                (f, Some(t), s) => (f.unwrap_or(if axis == SweepAxis::N { 1.0 } else { 0.0 }), t, s.unwrap_or(1.0)),
                _ => return usage("--to is required with --axis"),
            };
            SweepSpec { axis, from, to, step }
        }
        (Some(s), None) => SweepSpec {
            axis: s.axis,
            from: a.from.unwrap_or(s.from),
            to: a.to.unwrap_or(s.to),
            step: a.step.unwrap_or(s.step),
        },
        (None, None) => return usage("--axis is required"),
    };
    if a.jobs == Some(0) {
        return usage("--jobs must be at least 1");
    }
    let values = grid(spec.from, spec.to, spec.step).map_err(|e| crate::Usage(e.to_string()))?;
    rc.sweep = Some(spec.clone());
    let hash = config_hash(&rc)?;
    let result = sweep(&rc.simulation, spec.axis, &values, a.jobs)?;
    if result.failures() == values.len() {
        // surface the typed error of the first point
        spec.axis.apply(&rc.simulation, values[0])?.observable()?;
    }
    let rows: Vec<Vec<String>> = result
        .axis_values
        .iter()
        .zip(&result.observable)
        .zip(&result.errors)
        .map(|((x, y), e)| {
            vec![
                num(*x),
                y.map(num).unwrap_or_default(),
                if e.is_some() { "failed".into() } else { "ok".into() },
                e.clone().unwrap_or_default(),
            ]
        })
        .collect();
    let text = csv_text(&hash, &[spec.axis.name(), "observable", "status", "error"], &rows)?;
    emit(a.common.output.as_deref(), &text, &hash, &rc, Some(&result))
}
