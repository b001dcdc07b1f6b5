use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Serialize;
use sha2::{Digest, Sha256};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// First 16 hex digits of the SHA-256 of the config's JSON form.
pub fn config_hash<T: Serialize>(config: &T) -> anyhow::Result<String> {
    let bytes = serde_json::to_vec(config)?;
    let digest = Sha256::digest(&bytes);
    Ok(digest.iter().take(8).map(|b| format!("{b:02x}")).collect())
}

pub fn header(hash: &str) -> String {
    format!("# rnnv-forge v{VERSION} config={hash}\n")
}

/// CSV text with the versioned header comment.
pub fn csv_text(hash: &str, columns: &[&str], rows: &[Vec<String>]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(columns)?;
    for r in rows {
        w.write_record(r)?;
    }
    let body = String::from_utf8(w.into_inner().map_err(|e| anyhow::anyhow!("{e}"))?)?;
    Ok(header(hash) + &body)
}

pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

#[derive(Serialize)]
struct Sidecar<'a, C: Serialize, M: Serialize> {
    tool: &'static str,
    version: &'static str,
    config_hash: &'a str,
    config: &'a C,
    #[serde(skip_serializing_if = "Option::is_none")]
    metadata: Option<&'a M>,
}

/// Writes `text` to `out` (or stdout) and, for files, a JSON sidecar.
pub fn emit<C: Serialize, M: Serialize>(out: Option<&Path>, text: &str, hash: &str, config: &C, metadata: Option<&M>) -> anyhow::Result<()> {
    match out {
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
        }
        Some(p) => {
            std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
            let side = Sidecar { tool: "rnnv-forge", version: VERSION, config_hash: hash, config, metadata };
            let mut js = serde_json::to_string_pretty(&side)?;
            js.push('\n');
            let sp = sidecar_path(p);
            std::fs::write(&sp, js).with_context(|| format!("writing {}", sp.display()))?;
        }
    }
    Ok(())
}

/// Angle in degrees rounded to 1e-9, without negative zero.
pub fn deg(x: f64) -> String {
    let r = (x * 1e9).round() / 1e9;
    num(if r == 0.0 { 0.0 } else { r })
}

/// Shortest round-trip decimal form.
pub fn num(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 {
        "0".into()
    } else if a < 1e-4 || a >= 1e15 {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}
