use crate::{
    AngularArgs, Cli, Command, CoverageArgs, FitArgs, GeometryArgs, SpatialArgs, SynthArgs, VehicleArgs,
};
use canyon::angular::{self, gain_cdfs};
use canyon::config::Config;
use canyon::dataset::{self, Dataset};
use canyon::geometry::CanyonGeometry;
use canyon::pathloss::{self, GainSample, LogLinFit};
use canyon::report::{self, Provenance, Table};
use canyon::scan::{AngularScan, Stacking, TxId, VehicleState};
use canyon::spatialcorr::{averaged_correlation, DenseLine};
use canyon::stats::EmpiricalCdf;
use canyon::synth::{self, TxSite, VehicleMode};
use canyon::{vehicle, Error, Result};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

pub fn run(cli: Cli) -> Result<String> {
    let mut cfg = match &cli.config {
        Some(path) => Config::from_path(path)?,
        None => Config::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.synth.seed = seed;
    }
    match cli.command {
        Command::Synth(args) => synth_cmd(cfg, args),
        Command::Angular(args) => angular_cmd(cfg, args),
        Command::Spatial(args) => spatial_cmd(cfg, args),
        Command::Vehicle(args) => vehicle_cmd(cfg, args),
        Command::Fit(args) => fit_cmd(cfg, args),
        Command::Coverage(args) => coverage_cmd(cfg, args),
        Command::Geometry(args) => geometry_cmd(cfg, args),
    }
}

struct Input {
    bytes: Vec<u8>,
    provenance: Provenance,
}

fn load(path: &Path, seed: u64) -> Result<Input> {
    let bytes = std::fs::read(path)?;
    let provenance = Provenance {
        seed: Some(seed),
        input_sha256: Some(hex::encode(Sha256::digest(&bytes))),
    };
    Ok(Input { bytes, provenance })
}

fn bare_provenance(seed: u64) -> Provenance {
    Provenance {
        seed: Some(seed),
        input_sha256: None,
    }
}

/// Writes each table to `dir/<name>` and lists the files in `summary`.
fn emit(dir: &Path, tables: &[(&str, Table)], prov: &Provenance, summary: &mut String) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    for (name, table) in tables {
        let path = dir.join(name);
        report::write_atomic(&path, table.to_csv(prov).as_bytes())?;
        let _ = writeln!(summary, "wrote {} ({} rows)", path.display(), table.rows.len());
    }
    Ok(())
}

/// Concatenates tables that share a header, adding a leading label column.
fn labelled(column: &str, parts: &[(String, Table)]) -> Table {
    let mut header = vec![column.to_string()];
    if let Some((_, first)) = parts.first() {
        header.extend(first.header.iter().cloned());
    }
    let mut out = Table {
        header,
        rows: Vec::new(),
    };
    for (label, table) in parts {
        for row in &table.rows {
            let mut r = vec![label.clone()];
            r.extend(row.iter().cloned());
            out.rows.push(r);
        }
    }
    out
}

fn config_label(tx: TxId, stacking: Stacking) -> String {
    format!("{tx} {}", stacking.token())
}

fn synth_cmd(mut cfg: Config, args: SynthArgs) -> Result<String> {
    if let Some(n) = args.grid_size {
        cfg.synth.grid_size = n;
    }
    if let Some(h) = args.hpbw {
        cfg.synth.hpbw_deg = h;
    }
    let mode = if args.no_vehicle {
        VehicleMode::Absent
    } else {
        VehicleMode::Included
    };
    let mut scans = Vec::new();
    for stacking in args.layout.stackings() {
        let layout = synth::build_layout(stacking);
        scans.extend(synth::generate_campaign(&layout, &cfg.synth, mode)?.scans);
    }
    let ds = Dataset::new(scans);
    let mut bytes = Vec::new();
    ds.write(&mut bytes, Some(&bare_provenance(cfg.synth.seed).to_string()))?;
    if let Some(dir) = args.out.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    report::write_atomic(&args.out, &bytes)?;
    Ok(format!(
        "wrote {} scans ({} rows) to {}\n",
        ds.scans.len(),
        ds.row_count(),
        args.out.display()
    ))
}

fn absent_configurations(ds: &Dataset) -> Vec<(TxId, Stacking, Vec<&AngularScan>)> {
    ds.configurations()
        .into_iter()
        .map(|(tx, st)| (tx, st, ds.select(Some(tx), Some(st), Some(VehicleState::Absent))))
        .filter(|(_, _, scans)| !scans.is_empty())
        .collect()
}

fn stackings_of(ds: &Dataset) -> Vec<Stacking> {
    let mut out: Vec<Stacking> = ds.scans.iter().map(|s| s.stacking).collect();
    out.sort();
    out.dedup();
    out
}

fn angular_cmd(mut cfg: Config, args: AngularArgs) -> Result<String> {
    let input = load(&args.io.input, cfg.synth.seed)?;
    let ds = Dataset::read(input.bytes.as_slice())?;
    let bin = args.bin_width.unwrap_or(cfg.angular.bin_width_db);
    let configs = absent_configurations(&ds);
    if configs.is_empty() {
        return Err(Error::InsufficientData { needed: 1, got: 0 });
    }

    let mut summary = String::new();
    let (mut means, mut hists) = (Vec::new(), Vec::new());
    for (tx, st, scans) in &configs {
        let stats = angular::ensemble_stats(scans, bin)?;
        let (lo, hi) = stats
            .mean_db
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &m| (l.min(m), h.max(m)));
        let label = config_label(*tx, *st);
        let _ = writeln!(
            summary,
            "{label:<22} {:>4} scans, per-angle mean {lo:.1} to {hi:.1} dB",
            stats.scan_count
        );
        means.push((label.clone(), report::angular_mean_table(&stats)));
        hists.push((label, report::angular_histogram_table(&stats)));
    }

    let positions: BTreeMap<TxId, (f64, f64)> = ds
        .scans
        .iter()
        .map(|s| (s.tx, TxSite::of(s.tx).horizontal()))
        .collect();
    let mut cdf_parts = Vec::new();
    for st in stackings_of(&ds) {
        let scans = ds.select(None, Some(st), Some(VehicleState::Absent));
        if scans.is_empty() {
            continue;
        }
        let cdfs = gain_cdfs(&scans, &positions)?;
        let _ = writeln!(
            summary,
            "{:<22} all-direction vs TX-direction CDF gap {:.2} dB",
            st.label(),
            cdfs.max_horizontal_gap()
        );
        let all = format!("{} all", st.token());
        let toward = format!("{} tx", st.token());
        cdf_parts.push(report::cdf_table(&[(&all, &cdfs.all_directions), (&toward, &cdfs.tx_direction)]));
    }
    let mut gain_cdf = Table::new(&["curve", "value_db", "probability"]);
    for part in cdf_parts {
        gain_cdf.rows.extend(part.rows);
    }

    let absent = ds.select(None, None, Some(VehicleState::Absent));
    let measured = EmpiricalCdf::new(absent.iter().map(|s| angular::azimuth_gain(s)).collect())?;
    let n = absent[0].len();
    if n % 360 == 0 || 360 % n == 0 {
        cfg.synth.grid_size = n;
    }
    if let Some(r) = args.realizations {
        cfg.synth.realizations = r;
    }
    let spread = synth::fullspread_gain_distribution(&cfg.synth)?;
    let _ = writeln!(
        summary,
        "azimuth gain median: data {:.2} dB, fully spread reference {:.2} dB",
        measured.median(),
        spread.median()
    );
    let azimuth = report::cdf_table(&[("data", &measured), ("fullspread", &spread)]);

    emit(
        &args.io.out_dir,
        &[
            ("angular_mean.csv", labelled("configuration", &means)),
            ("angular_histogram.csv", labelled("configuration", &hists)),
            ("gain_cdf.csv", gain_cdf),
            ("azimuth_gain_cdf.csv", azimuth),
        ],
        &input.provenance,
        &mut summary,
    )?;
    Ok(summary)
}

fn spatial_cmd(cfg: Config, args: SpatialArgs) -> Result<String> {
    let input = load(&args.io.input, cfg.synth.seed)?;
    let ds = Dataset::read(input.bytes.as_slice())?;
    let mut summary = String::new();
    let mut parts = Vec::new();
    for (tx, st) in ds.configurations() {
        let lines: Vec<DenseLine> = ds.dense_lines(tx, st, args.min_points)?;
        let lines: Vec<DenseLine> = lines
            .into_iter()
            .filter(|l| l.spacing() <= args.max_spacing)
            .collect();
        let Some(first) = lines.first() else { continue };
        let (len, spacing) = (first.len(), first.spacing());
        let lines: Vec<DenseLine> = lines
            .into_iter()
            .filter(|l| l.len() == len && (l.spacing() - spacing).abs() < 1e-6)
            .collect();
        let curve = averaged_correlation(&lines)?;
        let label = config_label(tx, st);
        let _ = writeln!(
            summary,
            "{label:<22} {} lines of {len} positions at {spacing:.2} m, r at first lag {:.3}",
            lines.len(),
            curve.r.get(1).copied().unwrap_or(f64::NAN)
        );
        parts.push((label, report::correlation_table(&curve)));
    }
    if parts.is_empty() {
        return Err(Error::InsufficientData {
            needed: args.min_points,
            got: 0,
        });
    }
    emit(
        &args.io.out_dir,
        &[("correlation.csv", labelled("configuration", &parts))],
        &input.provenance,
        &mut summary,
    )?;
    Ok(summary)
}

fn vehicle_cmd(cfg: Config, args: VehicleArgs) -> Result<String> {
    let input = load(&args.io.input, cfg.synth.seed)?;
    let ds = Dataset::read(input.bytes.as_slice())?;
    let bin = args.bin_width.unwrap_or(cfg.vehicle.bin_width_db);

    let mut fits = Vec::new();
    let (mut means, mut hists, mut cdfs) = (Vec::new(), Vec::new(), Vec::new());
    for (tx, st) in ds.configurations() {
        let scans = ds.select(Some(tx), Some(st), None);
        for state in [VehicleState::Position1, VehicleState::Position2] {
            let pairs = vehicle::pair_scans(&scans, state);
            if pairs.is_empty() {
                continue;
            }
            let deltas = pairs
                .iter()
                .map(|(base, with)| vehicle::vehicle_delta(base, with))
                .collect::<Result<Vec<_>>>()?;
            let angle_stats = vehicle::delta_angle_stats(pairs[0].0.angles(), &deltas, bin)?;
            let pooled: Vec<f64> = deltas.into_iter().flatten().collect();
            let cdf = vehicle::delta_cdf_report(&pooled)?;
            let label = format!("{} {}", config_label(tx, st), state.token());
            fits.push((label.clone(), cdf.fit, cdf.max_gap));
            means.push((label.clone(), report::delta_angle_table(&angle_stats)));
            hists.push((label.clone(), report::delta_histogram_table(&angle_stats)));
            cdfs.push((label, report::delta_cdf_table(&cdf)));
        }
    }
    if fits.is_empty() {
        return Err(Error::Pairing("no vehicle scans with a matching vehicle-free scan".into()));
    }
    let mut summary = report::gaussian_fit_text(&fits);
    emit(
        &args.io.out_dir,
        &[
            ("vehicle_fit.csv", report::gaussian_fit_table(&fits)),
            ("delta_angle.csv", labelled("configuration", &means)),
            ("delta_histogram.csv", labelled("configuration", &hists)),
            ("delta_cdf.csv", labelled("configuration", &cdfs)),
        ],
        &input.provenance,
        &mut summary,
    )?;
    Ok(summary)
}

fn tx_family(tx: TxId) -> &'static str {
    match tx {
        TxId::Tx1 { .. } => "TX1",
        TxId::Tx2 => "TX2",
    }
}

fn fit_cmd(mut cfg: Config, args: FitArgs) -> Result<String> {
    if let Some(m) = args.distance {
        cfg.fit.distance = m.into();
    }
    if let Some(n) = args.pinned_slope {
        cfg.fit.pinned_slope = n;
    }
    let rx_height = cfg.synth.model.rx_height_m;

    let (groups, provenance): (Vec<(String, Vec<GainSample>)>, Provenance) = match (&args.input, &args.samples) {
        (Some(path), _) => {
            let input = load(path, cfg.synth.seed)?;
            let ds = Dataset::read(input.bytes.as_slice())?;
            let mut groups = Vec::new();
            for st in stackings_of(&ds) {
                let scans = ds.select(None, Some(st), Some(VehicleState::Absent));
                for family in ["TX1", "TX2"] {
                    let subset: Vec<&AngularScan> = scans.iter().copied().filter(|s| tx_family(s.tx) == family).collect();
                    if !subset.is_empty() {
                        groups.push((
                            format!("{} {family}", st.label()),
                            dataset::gain_samples(&subset, cfg.fit.distance, rx_height)?,
                        ));
                    }
                }
                groups.push((
                    format!("{} all", st.label()),
                    dataset::gain_samples(&scans, cfg.fit.distance, rx_height)?,
                ));
            }
            (groups, input.provenance)
        }
        (None, Some(path)) => {
            let input = load(path, cfg.synth.seed)?;
            let samples = dataset::read_samples(input.bytes.as_slice())?;
            (vec![("samples".to_string(), samples)], input.provenance)
        }
        (None, None) => return Err(Error::Config("either --input or --samples is required".into())),
    };

    let mut rows: Vec<(String, LogLinFit)> = Vec::new();
    let mut skipped = String::new();
    let mut last_err = None;
    for (label, samples) in &groups {
        match pathloss::fit_loglinear(samples) {
            Ok(free) => {
                rows.push((label.clone(), free));
                let pinned = pathloss::fit_fixed_slope(samples, cfg.fit.pinned_slope)?;
                rows.push((format!("{label} (n={})", cfg.fit.pinned_slope), pinned));
            }
            Err(e @ (Error::DegenerateFit(_) | Error::InsufficientData { .. })) => {
                let _ = writeln!(skipped, "skipped {label}: {e}");
                last_err = Some(e);
            }
            Err(e) => return Err(e),
        }
    }
    if rows.is_empty() {
        return Err(last_err.unwrap_or(Error::InsufficientData { needed: 3, got: 0 }));
    }
    let mut summary = report::fit_text(&rows);
    summary.push_str(&skipped);
    emit(&args.out_dir, &[("fit.csv", report::fit_table(&rows))], &provenance, &mut summary)?;
    Ok(summary)
}

fn coverage_cmd(mut cfg: Config, args: CoverageArgs) -> Result<String> {
    if let Some(n) = args.slope {
        cfg.coverage_model.n = n;
    }
    if let Some(r0) = args.intercept {
        cfg.coverage_model.r0 = r0;
    }
    let model = cfg.coverage_model.fit();
    let mut summary = report::coverage_text(&cfg.link_budget, &model)?;
    if let Some(dir) = &args.out_dir {
        let table = report::coverage_table(&cfg.link_budget, &model)?;
        emit(dir, &[("coverage.csv", table)], &bare_provenance(cfg.synth.seed), &mut summary)?;
    }
    Ok(summary)
}

fn geometry_cmd(cfg: Config, args: GeometryArgs) -> Result<String> {
    let geom = CanyonGeometry::new(
        args.tx_height,
        args.width,
        args.distance,
        args.psi.unwrap_or(cfg.synth.model.psi),
        args.rx_depth,
    )?;
    let table = report::geometry_table(&geom)?;
    let mut summary = report::table_text(&table);
    if let Some(dir) = &args.out_dir {
        emit(dir, &[("geometry.csv", table)], &bare_provenance(cfg.synth.seed), &mut summary)?;
    }
    Ok(summary)
}
