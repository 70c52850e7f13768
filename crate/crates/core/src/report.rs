//! Plot-ready CSV tables and plain-text summaries.
//!
//! Every table starts with a `#` provenance line followed by a header row.
//! Floats are written in shortest round-trip form so identical inputs give
//! identical bytes.

use crate::angular::AngularSpectrumStats;
use crate::error::Result;
use crate::geometry::{self, CanyonGeometry};
use crate::linkbudget::{self, LinkBudgetConfig};
use crate::pathloss::LogLinFit;
use crate::spatialcorr::CorrelationCurve;
use crate::stats::EmpiricalCdf;
use crate::vehicle::{DeltaAngleStats, DeltaCdfReport, GaussianFitResult};
use std::fmt::{self, Write as _};
use std::io::Write;
use std::path::Path;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Origin of a table: tool version, seed and a digest of the inputs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Provenance {
    pub seed: Option<u64>,
    pub input_sha256: Option<String>,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "canyon {TOOL_VERSION}")?;
        match self.seed {
            Some(s) => write!(f, " seed={s}")?,
            None => f.write_str(" seed=-")?,
        }
        match &self.input_sha256 {
            Some(h) => write!(f, " input_sha256={h}"),
            None => f.write_str(" input_sha256=-"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self, provenance: &Provenance) -> String {
        let mut out = format!("# {provenance}\n{}\n", self.header.join(","));
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

fn num(x: f64) -> String {
    format!("{x}")
}

fn deg(rad: f64) -> String {
    num(rad.to_degrees())
}

/// Writes `contents` next to `path` and renames it into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let result = (|| {
        let mut file = std::fs::File::create(&tmp)?;
        file.write_all(contents)?;
        file.sync_all()?;
        std::fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = std::fs::remove_file(&tmp);
    }
    Ok(result?)
}

pub fn angular_mean_table(stats: &AngularSpectrumStats) -> Table {
    let mut t = Table::new(&["phi_deg", "mean_db"]);
    for (a, m) in stats.angles.iter().zip(&stats.mean_db) {
        t.push(vec![deg(*a), num(*m)]);
    }
    t
}

fn histogram(angles: &[f64], edges: &[f64], counts: &[Vec<u32>]) -> Table {
    let mut t = Table::new(&["phi_deg", "bin_low_db", "bin_high_db", "count"]);
    for (a, row) in angles.iter().zip(counts) {
        for (b, c) in row.iter().enumerate() {
            t.push(vec![deg(*a), num(edges[b]), num(edges[b + 1]), c.to_string()]);
        }
    }
    t
}

pub fn angular_histogram_table(stats: &AngularSpectrumStats) -> Table {
    histogram(&stats.angles, &stats.bin_edges_db, &stats.counts)
}

/// Step points of one or more empirical CDFs, tagged by curve name.
pub fn cdf_table(curves: &[(&str, &EmpiricalCdf)]) -> Table {
    let mut t = Table::new(&["curve", "value_db", "probability"]);
    for (name, cdf) in curves {
        for (v, p) in cdf.points() {
            t.push(vec![name.to_string(), num(v), num(p)]);
        }
    }
    t
}

pub fn correlation_table(curve: &CorrelationCurve) -> Table {
    let mut t = Table::new(&["lag_m", "r"]);
    for (l, r) in curve.lag_m.iter().zip(&curve.r) {
        t.push(vec![num(*l), num(*r)]);
    }
    t
}

pub fn delta_angle_table(stats: &DeltaAngleStats) -> Table {
    let mut t = Table::new(&["phi_deg", "mean_delta_db"]);
    for (a, m) in stats.angles.iter().zip(&stats.mean_db) {
        t.push(vec![deg(*a), num(*m)]);
    }
    t
}

pub fn delta_histogram_table(stats: &DeltaAngleStats) -> Table {
    histogram(&stats.angles, &stats.bin_edges_db, &stats.counts)
}

pub fn delta_cdf_table(report: &DeltaCdfReport) -> Table {
    let mut t = Table::new(&["delta_db", "empirical", "gaussian"]);
    for ((x, e), g) in report
        .grid
        .iter()
        .zip(&report.empirical_on_grid)
        .zip(&report.gaussian_on_grid)
    {
        t.push(vec![num(*x), num(*e), num(*g)]);
    }
    t
}

/// Gaussian parameters per configuration.
pub fn gaussian_fit_table(rows: &[(String, GaussianFitResult, f64)]) -> Table {
    let mut t = Table::new(&["configuration", "mu_db", "sigma_db", "samples", "max_cdf_gap"]);
    for (label, fit, gap) in rows {
        t.push(vec![
            label.clone(),
            num(fit.mu),
            num(fit.sigma),
            fit.sample_count.to_string(),
            num(*gap),
        ]);
    }
    t
}

pub fn gaussian_fit_text(rows: &[(String, GaussianFitResult, f64)]) -> String {
    let mut out = format!("{:<28} {:>8} {:>8} {:>10}\n", "Configuration", "mu (dB)", "sigma", "samples");
    for (label, fit, _) in rows {
        let _ = writeln!(out, "{label:<28} {:>8.2} {:>8.2} {:>10}", fit.mu, fit.sigma, fit.sample_count);
    }
    out
}

/// Log-distance fits with 95 % half-widths, one row per configuration.
pub fn fit_table(rows: &[(String, LogLinFit)]) -> Table {
    let mut t = Table::new(&["configuration", "n", "ci_n", "r0_db", "ci_r0_db", "rmse_db", "samples"]);
    for (label, fit) in rows {
        t.push(vec![
            label.clone(),
            num(fit.n),
            num(fit.ci_n),
            num(fit.r0),
            num(fit.ci_r0),
            num(fit.rmse),
            fit.sample_count.to_string(),
        ]);
    }
    t
}

pub fn fit_text(rows: &[(String, LogLinFit)]) -> String {
    let mut out = format!("{:<28} {:>16} {:>18} {:>9}\n", "Configuration", "n", "R0 (dB)", "RMSE (dB)");
    for (label, fit) in rows {
        let n = format!("{:.2} ± {:.2}", fit.n, fit.ci_n);
        let r0 = format!("{:.1} ± {:.1}", fit.r0, fit.ci_r0);
        let _ = writeln!(out, "{label:<28} {n:>16} {r0:>18} {:>9.2}", fit.rmse);
    }
    out
}

/// One-page coverage estimate.
pub fn coverage_text(cfg: &LinkBudgetConfig, model: &LogLinFit) -> Result<String> {
    let noise = linkbudget::noise_floor_dbm(cfg)?;
    let mapl = linkbudget::max_allowable_pathloss_db(cfg)?;
    let range = linkbudget::coverage_range_m(model, mapl)?;
    let mut out = String::new();
    let _ = writeln!(out, "Coverage estimate");
    let _ = writeln!(out, "  bandwidth            {:>10.1} MHz", cfg.bandwidth_hz / 1e6);
    let _ = writeln!(out, "  temperature          {:>10.1} K", cfg.temperature_k);
    let _ = writeln!(out, "  noise figure         {:>10.1} dB", cfg.noise_figure_db);
    let _ = writeln!(out, "  noise floor          {:>10.1} dBm", noise);
    let _ = writeln!(
        out,
        "  EIRP                 {:>10.1} dBm ({:.1} dBm + {:.1} dBi)",
        cfg.eirp_dbm(),
        cfg.tx_power_dbm_per_pol,
        cfg.tx_antenna_gain_dbi
    );
    let _ = writeln!(out, "  required SNR         {:>10.1} dB", cfg.required_snr_db);
    let _ = writeln!(out, "  shadowing margin     {:>10.1} dB", cfg.shadow_margin_db);
    let _ = writeln!(out, "  max allowable loss   {:>10.1} dB", mapl);
    let _ = writeln!(
        out,
        "  gain model           n = {:.2}, R0 = {:.1} dB",
        model.n, model.r0
    );
    let _ = writeln!(out, "  coverage range       {:>10.1} m", range);
    let _ = writeln!(
        out,
        "  throughput (info)    {:>10.2} Gbit/s at {} bit/s/Hz x {} polarizations",
        cfg.throughput_bps() / 1e9,
        cfg.spectral_efficiency,
        cfg.polarizations
    );
    Ok(out)
}

pub fn coverage_table(cfg: &LinkBudgetConfig, model: &LogLinFit) -> Result<Table> {
    let noise = linkbudget::noise_floor_dbm(cfg)?;
    let mapl = linkbudget::max_allowable_pathloss_db(cfg)?;
    let range = linkbudget::coverage_range_m(model, mapl)?;
    let mut t = Table::new(&["quantity", "value"]);
    for (k, v) in [
        ("noise_floor_dbm", noise),
        ("eirp_dbm", cfg.eirp_dbm()),
        ("max_allowable_pathloss_db", mapl),
        ("coverage_range_m", range),
        ("throughput_bps", cfg.throughput_bps()),
    ] {
        t.push(vec![k.to_string(), num(v)]);
    }
    Ok(t)
}

/// Canyon-model quantities for one geometry.
pub fn geometry_table(geom: &CanyonGeometry) -> Result<Table> {
    let mut t = Table::new(&["quantity", "value"]);
    let mut push = |k: &str, v: f64| t.push(vec![k.to_string(), num(v)]);
    push("tx_height_m", geom.tx_height);
    push("width_m", geom.width);
    push("edge_distance_m", geom.edge_distance);
    push("psi_rad", geom.psi);
    push("rx_depth_m", geom.rx_depth);
    if geom.width > 0.0 {
        let angles = geometry::elevation_angles(geom)?;
        push("phi1_deg", angles.phi1.to_degrees());
        push("phi2_deg", angles.phi2.to_degrees());
        push("theta_deg", angles.theta.to_degrees());
    }
    push("poynting_fspl", geometry::poynting_fspl(geom));
    push("projected_aperture_m", geometry::projected_aperture_exact(geom));
    push("acceptance_length_m", geometry::acceptance_length(geom));
    push("vertical_fraction", geometry::vertical_fraction(geom));
    push("received_power_exact", geometry::received_power_exact(geom));
    push("received_power_approx", geometry::received_power_approx(geom));
    push("exact_to_approx_limit", geometry::exact_to_approx_limit(geom));
    Ok(t)
}

pub fn table_text(t: &Table) -> String {
    let mut out = String::new();
    for row in &t.rows {
        let _ = writeln!(out, "{:<28} {}", row[0], row[1..].join("  "));
    }
    out
}
