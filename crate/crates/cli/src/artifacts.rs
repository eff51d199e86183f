//! Output files: CSV tables, SVG plots, JSON documents and the run manifest.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use wickwalk_core::stats::Histogram;

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};

/// Collects everything a command writes so the manifest can list it.
#[derive(Debug)]
pub struct ArtifactWriter {
    root: PathBuf,
    written: Vec<ArtifactRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ArtifactRecord {
    pub path: String,
    pub bytes: usize,
    pub sha256: String,
}

impl ArtifactWriter {
    pub fn new(root: &Path) -> CliResult<Self> {
        fs::create_dir_all(root).map_err(|e| CliError::io(root, e))?;
        Ok(Self { root: root.to_path_buf(), written: Vec::new() })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn records(&self) -> &[ArtifactRecord] {
        &self.written
    }

    pub fn write_bytes(&mut self, rel: &str, data: &[u8]) -> CliResult<PathBuf> {
        let path = self.root.join(rel);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
        }
        fs::write(&path, data).map_err(|e| CliError::io(&path, e))?;
        self.written.push(ArtifactRecord {
            path: rel.to_string(),
            bytes: data.len(),
            sha256: hex::encode(Sha256::digest(data)),
        });
        Ok(path)
    }

    /// Writes a CSV with a header row. Cells are already formatted.
    pub fn write_csv(&mut self, rel: &str, header: &[&str], rows: &[Vec<String>]) -> CliResult<PathBuf> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let to_io = |e: csv::Error| CliError::io(Path::new(rel), std::io::Error::other(e));
        w.write_record(header).map_err(to_io)?;
        for row in rows {
            w.write_record(row).map_err(to_io)?;
        }
        let data = w.into_inner().map_err(|e| CliError::io(Path::new(rel), std::io::Error::other(e.to_string())))?;
        self.write_bytes(rel, &data)
    }

    pub fn write_json<T: Serialize>(&mut self, rel: &str, value: &T) -> CliResult<PathBuf> {
        let mut data = serde_json::to_vec_pretty(value).expect("report types serialize");
        data.push(b'\n');
        self.write_bytes(rel, &data)
    }

    /// Writes `manifest.json`: configuration, command parameters, a content
    /// hash of both, and checksums of every artifact written so far.
    pub fn finish<P: Serialize>(mut self, command: &str, config: &RunConfig, params: &P) -> CliResult<Vec<ArtifactRecord>> {
        let manifest = Manifest {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command,
            config,
            params: serde_json::to_value(params).expect("params serialize"),
            param_hash: param_hash(command, config, params),
            artifacts: self.written.clone(),
        };
        self.write_json("manifest.json", &manifest)?;
        Ok(self.written)
    }
}

#[derive(Serialize)]
struct Manifest<'a> {
    tool: &'a str,
    version: &'a str,
    command: &'a str,
    config: &'a RunConfig,
    params: serde_json::Value,
    param_hash: String,
    artifacts: Vec<ArtifactRecord>,
}

/// Git-style blob hash (`"blob <len>\0" + body`, SHA-256) of the canonical
/// JSON of the command, configuration and parameters.
pub fn param_hash<P: Serialize>(command: &str, config: &RunConfig, params: &P) -> String {
    let body = serde_json::to_vec(&serde_json::json!({
        "command": command,
        "config": config,
        "params": params,
    }))
    .expect("params serialize");
    let mut h = Sha256::new();
    h.update(format!("blob {}\0", body.len()).as_bytes());
    h.update(&body);
    hex::encode(h.finalize())
}

/// Shortest round-trip decimal form.
pub fn num(x: f64) -> String {
    format!("{x}")
}

pub fn histogram_rows(h: &Histogram) -> Vec<Vec<String>> {
    (0..h.n_bins())
        .map(|i| vec![num(h.edges[i]), num(h.edges[i + 1]), h.counts[i].to_string(), num(h.density(i))])
        .collect()
}

pub const HISTOGRAM_HEADER: [&str; 4] = ["bin_lo", "bin_hi", "count", "density"];

/// One histogram drawn as a step polyline.
pub struct SvgSeries<'a> {
    pub label: &'a str,
    pub color: &'a str,
    pub histogram: &'a Histogram,
}

/// Histogram step lines with a reference curve on shared axes.
pub fn overlay_svg(title: &str, series: &[SvgSeries<'_>], curve: &dyn Fn(f64) -> f64) -> String {
    const W: f64 = 900.0;
    const H: f64 = 520.0;
    const PAD: f64 = 60.0;
    let (lo, hi) = series
        .iter()
        .map(|s| (s.histogram.edges[0], *s.histogram.edges.last().unwrap()))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |a, b| (a.0.min(b.0), a.1.max(b.1)));
    let ymax = series
        .iter()
        .flat_map(|s| (0..s.histogram.n_bins()).map(|i| s.histogram.density(i)))
        .chain((0..=200).map(|i| curve(lo + (hi - lo) * i as f64 / 200.0)))
        .fold(0.0f64, f64::max)
        * 1.1;
    let sx = |x: f64| PAD + (x - lo) / (hi - lo) * (W - 2.0 * PAD);
    let sy = |y: f64| H - PAD - y / ymax * (H - 2.0 * PAD);

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n"
    ));
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    out.push_str(&format!(
        "<text x=\"{}\" y=\"30\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">{}</text>\n",
        W / 2.0,
        title
    ));
    out.push_str(&format!(
        "<line x1=\"{PAD}\" y1=\"{y0}\" x2=\"{x1}\" y2=\"{y0}\" stroke=\"black\"/>\n<line x1=\"{PAD}\" y1=\"{PAD}\" x2=\"{PAD}\" y2=\"{y0}\" stroke=\"black\"/>\n",
        y0 = H - PAD,
        x1 = W - PAD
    ));
    for tick in (lo.ceil() as i64)..=(hi.floor() as i64) {
        let x = sx(tick as f64);
        out.push_str(&format!(
            "<text x=\"{x:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">{tick}</text>\n",
            H - PAD + 16.0
        ));
    }
    for (idx, s) in series.iter().enumerate() {
        let h = s.histogram;
        let mut pts = Vec::with_capacity(2 * h.n_bins() + 2);
        pts.push(format!("{:.2},{:.2}", sx(h.edges[0]), sy(0.0)));
        for i in 0..h.n_bins() {
            let y = sy(h.density(i));
            pts.push(format!("{:.2},{:.2}", sx(h.edges[i]), y));
            pts.push(format!("{:.2},{:.2}", sx(h.edges[i + 1]), y));
        }
        pts.push(format!("{:.2},{:.2}", sx(*h.edges.last().unwrap()), sy(0.0)));
        out.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
            s.color,
            pts.join(" ")
        ));
        out.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" fill=\"{}\">{}</text>\n",
            W - PAD - 220.0,
            PAD + 18.0 * idx as f64,
            s.color,
            s.label
        ));
    }
    let curve_pts: Vec<String> = (0..=400)
        .map(|i| {
            let x = lo + (hi - lo) * i as f64 / 400.0;
            format!("{:.2},{:.2}", sx(x), sy(curve(x)))
        })
        .collect();
    out.push_str(&format!(
        "<polyline fill=\"none\" stroke=\"black\" stroke-dasharray=\"5,3\" stroke-width=\"1.2\" points=\"{}\"/>\n",
        curve_pts.join(" ")
    ));
    out.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\">N(0, 1)</text>\n",
        W - PAD - 220.0,
        PAD + 18.0 * series.len() as f64
    ));
    out.push_str("</svg>\n");
    out
}
