//! Human-diffable JSON form: `{kind, flip_deg, phase_deg, duration_ns}` per
//! event, with exact rational strings where a float would lose information.

use serde::{Deserialize, Serialize};

use super::{DelayEvent, Event, FilterKind, FilterMarker, PulseEvent, PulseMode, PulseSequence};
use crate::error::{Error, Result};
use crate::exact::{self, int, Exact, SNAP_DIGITS};

#[derive(Serialize, Deserialize)]
struct SeqRecord {
    label: String,
    total_duration_s: String,
    events: Vec<EventRecord>,
}

#[derive(Default, Serialize, Deserialize)]
struct EventRecord {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    flip_deg: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    phase_deg: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    duration_ns: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mode: Option<PulseMode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    duration_s: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    flip_exact: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    phase_exact: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    m1: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    m2: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tau_e_s: Option<String>,
}

fn on_grid(x: &Exact) -> bool {
    (x * int(10i128.pow(SNAP_DIGITS))).is_integer()
}

fn exact_if_off_grid(x: &Exact) -> Option<String> {
    (!on_grid(x)).then(|| exact::render(x))
}

fn ns(x: &Exact) -> f64 {
    exact::to_f64(&(x * int(1_000_000_000)))
}

fn record(e: &Event) -> EventRecord {
    match e {
        Event::Pulse(p) => EventRecord {
            kind: "pulse".into(),
            flip_deg: Some(exact::to_f64(&p.flip_deg)),
            phase_deg: Some(exact::to_f64(&p.phase_deg)),
            duration_ns: Some(ns(&p.duration)),
            mode: Some(p.mode),
            duration_s: Some(exact::render(&p.duration)),
            flip_exact: exact_if_off_grid(&p.flip_deg),
            phase_exact: exact_if_off_grid(&p.phase_deg),
            ..Default::default()
        },
        Event::Delay(d) => EventRecord {
            kind: "delay".into(),
            duration_ns: Some(ns(&d.duration)),
            duration_s: Some(exact::render(&d.duration)),
            ..Default::default()
        },
        Event::Filter(FilterMarker { kind: FilterKind::T00 }) => EventRecord { kind: "t00".into(), ..Default::default() },
        Event::Filter(FilterMarker { kind: FilterKind::Sod { m1, m2, tau_e } }) => EventRecord {
            kind: "sod".into(),
            m1: Some(*m1),
            m2: Some(*m2),
            tau_e_s: Some(exact::render(tau_e)),
            ..Default::default()
        },
    }
}

fn angle(exact_str: &Option<String>, float: Option<f64>, what: &str) -> Result<Exact> {
    match (exact_str, float) {
        (Some(s), _) => exact::parse(s),
        (None, Some(x)) => exact::snap(x),
        (None, None) => Err(Error::Serde(format!("missing {what}"))),
    }
}

fn duration(r: &EventRecord) -> Result<Exact> {
    match (&r.duration_s, r.duration_ns) {
        (Some(s), _) => exact::parse(s),
        (None, Some(x)) => Ok(exact::snap(x)? / int(1_000_000_000)),
        (None, None) => Err(Error::Serde(format!("{} event without duration", r.kind))),
    }
}

fn event(r: &EventRecord) -> Result<Event> {
    Ok(match r.kind.as_str() {
        "pulse" => {
            let duration = duration(r)?;
            let mode = r.mode.unwrap_or(if duration == int(0) { PulseMode::Delta } else { PulseMode::Finite });
            Event::Pulse(PulseEvent {
                flip_deg: angle(&r.flip_exact, r.flip_deg, "flip_deg")?,
                phase_deg: exact::wrap_deg(angle(&r.phase_exact, r.phase_deg, "phase_deg")?),
                mode,
                duration,
            })
        }
        "delay" => Event::Delay(DelayEvent::new(duration(r)?)?),
        "t00" => Event::Filter(FilterMarker { kind: FilterKind::T00 }),
        "sod" => {
            let m1 = r.m1.ok_or_else(|| Error::Serde("sod marker without m1".into()))?;
            let m2 = r.m2.ok_or_else(|| Error::Serde("sod marker without m2".into()))?;
            if m1 == 0 || m2 == 0 {
                return Err(Error::Serde("sod repetition counts must be >= 1".into()));
            }
            let tau_e = exact::parse(r.tau_e_s.as_deref().ok_or_else(|| Error::Serde("sod marker without tau_e_s".into()))?)?;
            Event::Filter(FilterMarker { kind: FilterKind::Sod { m1, m2, tau_e } })
        }
        k => return Err(Error::Serde(format!("unknown event kind {k:?}"))),
    })
}

pub fn to_json_value(seq: &PulseSequence) -> serde_json::Value {
    let rec = SeqRecord {
        label: seq.label.clone(),
        total_duration_s: exact::render(&seq.total_duration()),
        events: seq.events.iter().map(record).collect(),
    };
    serde_json::to_value(rec).expect("sequence record serializes")
}

pub fn to_json(seq: &PulseSequence) -> String {
    let mut s = serde_json::to_string_pretty(&to_json_value(seq)).expect("sequence record serializes");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<PulseSequence> {
    let rec: SeqRecord = serde_json::from_str(text).map_err(|e| Error::Serde(e.to_string()))?;
    let events = rec.events.iter().map(event).collect::<Result<Vec<_>>>()?;
    Ok(PulseSequence { events, label: rec.label })
}
