use std::path::PathBuf;

use clap::Args;
use rnnv::engine::ExecutionContext;
use rnnv::exact;
use rnnv::sequence::{basic_element_a, Central, PulseMode, SymmetryNumbers, Timing};
use rnnv::symmetry::{is_allowed, reference_kappa, scaling_factor_delta, scaling_factor_numeric, TermQuantumNumbers, TermSign};
use serde::Serialize;

use crate::args::ModeArg;
use crate::output::{config_hash, csv_text, deg, emit, num};
use crate::{usage, Mismatch};

#[derive(Args, Debug)]
pub struct KappaArgs {
    /// Symmetry N,n,nu; repeat or separate with ';'. Defaults to the 21 reference rows
    #[arg(long = "sym", allow_hyphen_values = true)]
    pub syms: Vec<String>,
    #[arg(long, default_value_t = 54.39)]
    pub j_hz: f64,
    #[arg(long, value_enum, default_value = "delta")]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 12.5)]
    pub nut_khz: f64,
    /// Allowed |kappa| disagreement
    #[arg(long, default_value_t = 0.002)]
    pub tolerance: f64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Serialize)]
struct KappaConfig {
    symmetries: Vec<String>,
    j_hz: f64,
    mode: PulseMode,
    nut_hz: f64,
    tolerance: f64,
}

pub const COLUMNS: [&str; 12] =
    ["N", "n", "nu", "term", "abs_kappa", "arg_deg", "K_re", "K_im", "closed_abs", "closed_arg_deg", "reference", "match"];

fn symmetries(a: &KappaArgs) -> anyhow::Result<Vec<SymmetryNumbers>> {
    if a.syms.is_empty() {
        return Ok(reference_kappa().into_iter().map(|r| r.sym).collect());
    }
    let list: Vec<SymmetryNumbers> = a
        .syms
        .iter()
        .flat_map(|s| s.split(';'))
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<SymmetryNumbers>().map_err(|e| crate::Usage(e.to_string()).into()))
        .collect::<anyhow::Result<_>>()?;
    if list.is_empty() {
        return usage("empty symmetry list");
    }
    Ok(list)
}

pub fn run(a: &KappaArgs) -> anyhow::Result<()> {
    let syms = symmetries(a)?;
    if !(a.j_hz > 0.0 && a.nut_khz > 0.0 && a.tolerance >= 0.0) {
        return usage("J, nutation frequency and tolerance must be positive");
    }
    let mode: PulseMode = a.mode.into();
    let timing = match mode {
        PulseMode::Delta => Timing::delta(),
        PulseMode::Finite => Timing::finite(exact::snap(a.nut_khz * 1e3)?),
    };
    let ctx = ExecutionContext::<f64>::new(std::f64::consts::TAU * a.nut_khz * 1e3, 1.0, 0.0, 1e-6)?;
    let j = exact::snap(a.j_hz)?;
    let refs = reference_kappa();
    let mut rows = Vec::with_capacity(syms.len());
    let mut bad = Vec::new();
    for s in &syms {
        let plus = TermQuantumNumbers::new(1, 1)?;
        let term = if is_allowed(s, &plus) { plus } else { TermQuantumNumbers::new(1, -1)? };
        let el = basic_element_a(*s, j, &timing, Central::Plain)?;
        let f = scaling_factor_numeric(s, &el.seq, &term, a.j_hz, &ctx)?;
        let closed = (term == plus).then(|| scaling_factor_delta::<f64>(s, TermSign::Plus)).transpose()?;
        let reference = refs.iter().find(|r| r.sym == *s).map(|r| r.kappa);
        let abs = f.kappa.norm();
        let ok_closed = closed.map_or(true, |c| (c.norm() - abs).abs() <= a.tolerance);
        let ok_ref = reference.map_or(true, |r| (r.abs() - abs).abs() <= a.tolerance);
        let ok = ok_closed && ok_ref;
        if !ok {
            bad.push(s.label());
        }
        rows.push(vec![
            s.big_n.to_string(),
            s.n.to_string(),
            s.nu.to_string(),
            term.to_string(),
            num(abs),
            deg(f.kappa.arg().to_degrees()),
            num(f.k.re),
            num(f.k.im),
            closed.map(|c| num(c.norm())).unwrap_or_default(),
            closed.map(|c| deg(c.arg().to_degrees())).unwrap_or_default(),
            reference.map(num).unwrap_or_default(),
            ok.to_string(),
        ]);
    }
    let cfg = KappaConfig {
        symmetries: syms.iter().map(|s| s.to_string()).collect(),
        j_hz: a.j_hz,
        mode,
        nut_hz: a.nut_khz * 1e3,
        tolerance: a.tolerance,
    };
    let hash = config_hash(&cfg)?;
    let text = csv_text(&hash, &COLUMNS, &rows)?;
    emit::<_, ()>(a.output.as_deref(), &text, &hash, &cfg, None)?;
    if !bad.is_empty() {
        return Err(Mismatch(format!("|kappa| mismatch beyond {} for {}", a.tolerance, bad.join(", "))).into());
    }
    Ok(())
}
