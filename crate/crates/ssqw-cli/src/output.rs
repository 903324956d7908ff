//! Deterministic serialization: fixed 12-significant-digit floats for CSV,
//! serde for JSON, and temp-file + atomic-rename writes so a failed run
//! never leaves a partial output behind.

use serde::Serialize;
use ssqw_core::analysis::{Quantity, ScanRow};
use ssqw_core::qfim::QfimResult;
use std::io::Write;
use std::path::Path;

/// 12 significant digits, scientific; identical bytes for identical values.
pub fn sig12(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else {
        format!("{v:.11e}")
    }
}

#[derive(Serialize, serde::Deserialize, Debug, PartialEq)]
pub struct QfimJson {
    pub f11: f64,
    pub f12: f64,
    pub f22: f64,
    pub d12: Option<f64>,
    pub incompat: Option<f64>,
    pub region: String,
    pub winding: Option<u8>,
    pub method: String,
    pub t: Option<usize>,
}

impl From<&QfimResult> for QfimJson {
    fn from(r: &QfimResult) -> Self {
        QfimJson {
            f11: r.f[0][0],
            f12: r.f[0][1],
            f22: r.f[1][1],
            d12: r.d12,
            incompat: r.incompat,
            region: r.region.as_str().to_string(),
            winding: r.region.winding(),
            method: r.method.as_str().to_string(),
            t: r.t,
        }
    }
}

pub fn qfim_text(r: &QfimResult) -> String {
    let mut s = String::new();
    s.push_str(&format!("f11      = {}\n", sig12(r.f[0][0])));
    s.push_str(&format!("f12      = {}\n", sig12(r.f[0][1])));
    s.push_str(&format!("f22      = {}\n", sig12(r.f[1][1])));
    s.push_str(&format!("det F    = {}\n", sig12(r.det_f())));
    match r.d12 {
        Some(d) => s.push_str(&format!("d12      = {}\n", sig12(d))),
        None => s.push_str("d12      = n/a (not computed by this method)\n"),
    }
    match r.incompat {
        Some(x) => s.push_str(&format!("incompat = {}\n", sig12(x))),
        None => s.push_str("incompat = n/a\n"),
    }
    let winding = match r.region.winding() {
        Some(w) => w.to_string(),
        None => "-".to_string(),
    };
    s.push_str(&format!(
        "region   = {} (winding {})\n",
        r.region.as_str(),
        winding
    ));
    s.push_str(&format!("method   = {}\n", r.method.as_str()));
    match r.t {
        Some(t) => s.push_str(&format!("t        = {t} (raw, per-step^2 units)\n")),
        None => s.push_str("t        = n/a (t^2-normalized coefficient)\n"),
    }
    s
}

pub fn scan_csv(rows: &[ScanRow], quantity: Quantity) -> String {
    let mut out = String::with_capacity(rows.len() * 64 + 64);
    out.push_str("theta1,theta2,quantity,value,region,winding\n");
    for row in rows {
        let winding = match row.region.winding() {
            Some(w) => w.to_string(),
            None => String::new(),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            sig12(row.theta1),
            sig12(row.theta2),
            quantity.as_str(),
            sig12(row.value),
            row.region.as_str(),
            winding
        ));
    }
    out
}

#[derive(Serialize)]
struct ScanRowJson<'a> {
    theta1: f64,
    theta2: f64,
    quantity: &'a str,
    value: f64,
    region: &'a str,
    winding: Option<u8>,
}

pub fn scan_json(rows: &[ScanRow], quantity: Quantity) -> String {
    let items: Vec<ScanRowJson> = rows
        .iter()
        .map(|row| ScanRowJson {
            theta1: row.theta1,
            theta2: row.theta2,
            quantity: quantity.as_str(),
            value: row.value,
            region: row.region.as_str(),
            winding: row.region.winding(),
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&items).expect("scan rows serialize");
    s.push('\n');
    s
}

/// Write through a sibling temp file and rename into place.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let tmp = path.with_extension("tmp");
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)
}
