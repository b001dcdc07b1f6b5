use std::path::PathBuf;

use clap::Args;
use rnnv::experiments::{Builder, Construction, ProtocolConfig, SequenceKind};
use rnnv::sequence::{to_json_value, Central};
use serde::Serialize;

use crate::args::{SequenceArgs, SystemArgs};
use crate::output::{config_hash, VERSION};
use crate::usage;

#[derive(Args, Debug)]
pub struct DeriveArgs {
    #[command(flatten)]
    pub seq: SequenceArgs,
    #[command(flatten)]
    pub sys: SystemArgs,
    /// Number of elements (default: one full cycle)
    #[arg(long)]
    pub elements: Option<usize>,
    /// Emit the time reverse (S2M with --m2s)
    #[arg(long)]
    pub reverse: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Serialize)]
struct DeriveConfig<'a> {
    system: &'a rnnv::experiments::SystemConfig,
    sequence: &'a rnnv::experiments::SequenceConfig,
    nut_hz: f64,
    elements: usize,
    reverse: bool,
}

fn label(cfg: &ProtocolConfig, reverse: bool, base: &str) -> String {
    let mut l = match &cfg.sequence.kind {
        SequenceKind::Rnnv { construction: Construction::Pulsepol, .. } => "PulsePol".to_string(),
        SequenceKind::Rnnv { sym, construction, element } => {
            let c = match construction {
                Construction::Standard => "standard",
                _ => "riffled",
            };
            match element {
                Central::Plain => format!("{} {c}", sym.label()),
                e => format!("{} {c} {}", sym.label(), format!("{e:?}").to_lowercase()),
            }
        }
        SequenceKind::M2s { .. } if reverse => return base.replace("M2S", "S2M"),
        SequenceKind::M2s { .. } => return base.to_string(),
    };
    if cfg.sequence.shift_deg != 0.0 {
        l.push_str(&format!(" shifted {}", cfg.sequence.shift_deg));
    }
    if reverse {
        l.push_str(" reversed");
    }
    l
}

pub fn run(a: &DeriveArgs) -> anyhow::Result<()> {
    let s = &a.seq;
    if s.sym.is_none() && !s.pulsepol && !s.m2s {
        return usage("choose a sequence with --sym, --pulsepol or --m2s");
    }
    let mut cfg = ProtocolConfig::default();
    s.apply(&mut cfg);
    a.sys.apply(&mut cfg);
    let builder = cfg.excitation()?;
    let count = match (&builder, a.elements) {
        (_, Some(n)) => n,
        (Builder::Train { .. }, None) => match &cfg.sequence.kind {
            SequenceKind::Rnnv { sym, .. } => sym.big_n as usize,
            _ => 1,
        },
        (Builder::Fixed(_), None) => 1,
    };
    let mut seq = builder.build(count);
    if a.reverse {
        seq = seq.reversed();
    }
    let base = match &builder {
        Builder::Fixed(f) => f.label.clone(),
        _ => String::new(),
    };
    let seq = seq.relabel(label(&cfg, a.reverse, &base));

    let dc = DeriveConfig { system: &cfg.system, sequence: &cfg.sequence, nut_hz: cfg.context.nut_hz, elements: count, reverse: a.reverse };
    let hash = config_hash(&dc)?;
    let mut v = to_json_value(&seq);
    if let Some(obj) = v.as_object_mut() {
        obj.insert("generator".into(), serde_json::json!({ "tool": "rnnv-forge", "version": VERSION, "config": hash }));
    }
    let mut text = serde_json::to_string_pretty(&v)?;
    text.push('\n');
    match &a.output {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}
