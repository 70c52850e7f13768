//! Measurement CSV: one row per (transmitter, position, azimuth, vehicle
//! state). Rows are grouped into [`AngularScan`]s on ingest.

use crate::angular;
use crate::error::{Error, Result};
use crate::pathloss::GainSample;
use crate::scan::{AngularScan, PointKey, Stacking, TxId, VehicleState};
use crate::spatialcorr::DenseLine;
use crate::synth::{TxSite, CANYON_WIDTH_M, WALL_OFFSET_Y_M};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::f64::consts::TAU;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

pub const HEADER: &str = "tx_id,x_m,y_m,phi_deg,gain_db,vehicle_state,stacking";
pub const SAMPLES_HEADER: &str = "distance_m,gain_db";

/// Shortest distance accepted in a samples file (m).
pub const MIN_DISTANCE_M: f64 = 1.0;

const SPACING_TOLERANCE_M: f64 = 1e-6;

/// An ordered collection of scans.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Dataset {
    pub scans: Vec<AngularScan>,
}

type ScanKey = (PointKey, VehicleState);

struct Pending {
    key: ScanKey,
    rows: Vec<(f64, f64)>,
    seen: BTreeSet<u64>,
}

/// Strips leading `#` lines and returns the rest with the number of lines
/// skipped.
fn split_comments<R: Read>(reader: R) -> Result<(Vec<u8>, u64)> {
    let mut buf = BufReader::new(reader);
    let mut skipped = 0u64;
    let mut line = String::new();
    loop {
        line.clear();
        let read = buf.read_line(&mut line)?;
        if read == 0 || !line.starts_with('#') {
            break;
        }
        skipped += 1;
    }
    let mut rest = line.into_bytes();
    buf.read_to_end(&mut rest)?;
    Ok((rest, skipped))
}

fn field<'r>(record: &'r csv::StringRecord, index: usize, line: u64) -> Result<&'r str> {
    record.get(index).ok_or_else(|| Error::Parse {
        line,
        message: format!("missing column {index}"),
    })
}

fn number(record: &csv::StringRecord, index: usize, line: u64) -> Result<f64> {
    let raw = field(record, index, line)?;
    let value: f64 = raw.trim().parse().map_err(|_| Error::Parse {
        line,
        message: format!("cannot parse {raw:?} as a number"),
    })?;
    if !value.is_finite() {
        return Err(Error::Parse {
            line,
            message: format!("non-finite value {raw:?}"),
        });
    }
    Ok(value)
}

fn token<T: std::str::FromStr<Err = Error>>(record: &csv::StringRecord, index: usize, line: u64) -> Result<T> {
    field(record, index, line)?.parse().map_err(|e: Error| Error::Parse {
        line,
        message: e.to_string(),
    })
}

fn check_header(header: &csv::StringRecord, expected: &str, line: u64) -> Result<()> {
    let got = header.iter().collect::<Vec<_>>().join(",");
    if got != expected {
        return Err(Error::Parse {
            line,
            message: format!("expected header {expected:?}, found {got:?}"),
        });
    }
    Ok(())
}

fn build_scan(p: Pending) -> Result<AngularScan> {
    let (point, vehicle_state) = p.key;
    let mut rows = p.rows;
    for r in &mut rows {
        r.0 = r.0.to_radians().rem_euclid(TAU);
    }
    rows.sort_by(|a, b| a.0.total_cmp(&b.0));
    let angles: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let gains = rows.iter().map(|r| r.1).collect();
    let key = format!("{point} {}", vehicle_state.token());
    crate::scan::check_grid(&angles).map_err(|message| Error::Grid { key, message })?;
    let canonical = crate::scan::uniform_grid(angles.len(), angles[0]);
    AngularScan::new(
        point.tx,
        point.x(),
        point.y(),
        canonical,
        gains,
        vehicle_state,
        point.stacking,
    )
}

impl Dataset {
    pub fn new(scans: Vec<AngularScan>) -> Self {
        Self { scans }
    }

    pub fn read_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::read(std::fs::File::open(path)?)
    }

    /// Parses a measurement CSV. Leading `#` lines are skipped, the header
    /// must match [`HEADER`] exactly, and rows are grouped into scans in
    /// order of first appearance.
    pub fn read<R: Read>(reader: R) -> Result<Self> {
        let (body, skipped) = split_comments(reader)?;
        let mut csv = csv::ReaderBuilder::new()
            .has_headers(false)
            .from_reader(body.as_slice());
        let mut records = csv.records();
        let header = records.next().ok_or(Error::Parse {
            line: skipped + 1,
            message: "empty file".into(),
        })??;
        check_header(&header, HEADER, skipped + 1)?;

        let mut pending: Vec<Pending> = Vec::new();
        let mut index: HashMap<ScanKey, usize> = HashMap::new();
        for record in records {
            let record = record.map_err(|e| match Error::from(e) {
                Error::Parse { line, message } => Error::Parse {
                    line: line + skipped,
                    message,
                },
                other => other,
            })?;
            let line = record.position().map_or(0, |p| p.line()) + skipped;
            if record.len() != 7 {
                return Err(Error::Parse {
                    line,
                    message: format!("expected 7 fields, found {}", record.len()),
                });
            }
            let tx: TxId = token(&record, 0, line)?;
            let x = number(&record, 1, line)?;
            let y = number(&record, 2, line)?;
            let phi_deg = number(&record, 3, line)?;
            let gain_db = number(&record, 4, line)?;
            let vehicle: VehicleState = token(&record, 5, line)?;
            let stacking: Stacking = token(&record, 6, line)?;

            let key = (PointKey::new(tx, stacking, x, y), vehicle);
            let slot = *index.entry(key).or_insert_with(|| {
                pending.push(Pending {
                    key,
                    rows: Vec::new(),
                    seen: BTreeSet::new(),
                });
                pending.len() - 1
            });
            let scan = &mut pending[slot];
            if !scan.seen.insert(phi_deg.rem_euclid(360.0).to_bits()) {
                return Err(Error::Duplicate {
                    line,
                    key: format!("{} {} phi={phi_deg}", key.0, vehicle.token()),
                });
            }
            scan.rows.push((phi_deg, gain_db));
        }
        let scans = pending.into_iter().map(build_scan).collect::<Result<_>>()?;
        Ok(Self { scans })
    }

    /// Writes the canonical CSV, preceded by `provenance` as a `#` line.
    pub fn write<W: Write>(&self, out: W, provenance: Option<&str>) -> Result<()> {
        let mut out = std::io::BufWriter::new(out);
        if let Some(p) = provenance {
            writeln!(out, "# {p}")?;
        }
        writeln!(out, "{HEADER}")?;
        for scan in &self.scans {
            let prefix = format!("{},{},{}", scan.tx, scan.x, scan.y);
            let suffix = format!("{},{}", scan.vehicle_state.token(), scan.stacking.token());
            for (phi, g) in scan.angles().iter().zip(scan.gain_db()) {
                writeln!(out, "{prefix},{},{g},{suffix}", phi.to_degrees())?;
            }
        }
        out.flush()?;
        Ok(())
    }

    pub fn row_count(&self) -> usize {
        self.scans.iter().map(AngularScan::len).sum()
    }

    pub fn select(
        &self,
        tx: Option<TxId>,
        stacking: Option<Stacking>,
        vehicle: Option<VehicleState>,
    ) -> Vec<&AngularScan> {
        self.scans
            .iter()
            .filter(|s| tx.is_none_or(|t| s.tx == t))
            .filter(|s| stacking.is_none_or(|k| s.stacking == k))
            .filter(|s| vehicle.is_none_or(|v| s.vehicle_state == v))
            .collect()
    }

    /// Distinct (transmitter, stacking) combinations in first-seen order.
    pub fn configurations(&self) -> Vec<(TxId, Stacking)> {
        let mut seen = BTreeSet::new();
        self.scans
            .iter()
            .map(|s| (s.tx, s.stacking))
            .filter(|c| seen.insert(*c))
            .collect()
    }

    /// For every Y line of vehicle-free scans of `tx` and `stacking`, the
    /// longest run of consecutive positions at the line's finest spacing.
    /// Lines with fewer than `min_len` positions in that run are skipped.
    pub fn dense_lines(&self, tx: TxId, stacking: Stacking, min_len: usize) -> Result<Vec<DenseLine<'_>>> {
        let mut by_y: BTreeMap<u64, Vec<&AngularScan>> = BTreeMap::new();
        for s in self.select(Some(tx), Some(stacking), Some(VehicleState::Absent)) {
            by_y.entry(s.y.to_bits()).or_default().push(s);
        }
        let mut lines: Vec<(f64, DenseLine)> = Vec::new();
        for (_, mut scans) in by_y {
            scans.sort_by(|a, b| a.x.total_cmp(&b.x));
            let run = finest_run(&scans);
            if run.len() >= min_len.max(2) {
                let y = run[0].y;
                lines.push((y, DenseLine::new(run)?));
            }
        }
        lines.sort_by(|a, b| a.0.total_cmp(&b.0));
        Ok(lines.into_iter().map(|l| l.1).collect())
    }
}

fn finest_run<'a>(sorted: &[&'a AngularScan]) -> Vec<&'a AngularScan> {
    if sorted.len() < 2 {
        return sorted.to_vec();
    }
    let steps: Vec<f64> = sorted.windows(2).map(|w| w[1].x - w[0].x).collect();
    let finest = steps.iter().copied().fold(f64::INFINITY, f64::min);
    let (mut best, mut start) = ((0, 0), 0);
    for (i, step) in steps.iter().enumerate() {
        if (step - finest).abs() > SPACING_TOLERANCE_M {
            start = i + 1;
        } else if i + 1 - start > best.1 - best.0 {
            best = (start, i + 1);
        }
    }
    sorted[best.0..=best.1].to_vec()
}

/// Distance used as the regressor for angle-averaged gains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistanceMetric {
    /// 3-D transmitter to receiver distance.
    Euclidean,
    /// Horizontal distance from the transmitter to the canyon edge.
    Edge,
}

/// Angle-averaged gain of every vehicle-free scan against distance.
pub fn gain_samples(scans: &[&AngularScan], metric: DistanceMetric, rx_height_m: f64) -> Result<Vec<GainSample>> {
    scans
        .iter()
        .filter(|s| s.vehicle_state == VehicleState::Absent)
        .map(|s| {
            let site = TxSite::of(s.tx);
            let d = match metric {
                DistanceMetric::Euclidean => site.distance_to((s.x, s.y), rx_height_m),
                DistanceMetric::Edge => site.y - (WALL_OFFSET_Y_M + CANYON_WIDTH_M),
            };
            GainSample::new(d, angular::circular_mean_gain(s))
        })
        .collect()
}

pub fn read_samples_path(path: impl AsRef<Path>) -> Result<Vec<GainSample>> {
    read_samples(std::fs::File::open(path)?)
}

/// Parses a `distance_m,gain_db` file, rejecting distances below
/// [`MIN_DISTANCE_M`].
pub fn read_samples<R: Read>(reader: R) -> Result<Vec<GainSample>> {
    let (body, skipped) = split_comments(reader)?;
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(body.as_slice());
    let mut records = csv.records();
    let header = records.next().ok_or(Error::Parse {
        line: skipped + 1,
        message: "empty file".into(),
    })??;
    check_header(&header, SAMPLES_HEADER, skipped + 1)?;
    let mut out = Vec::new();
    for record in records {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line()) + skipped;
        if record.len() != 2 {
            return Err(Error::Parse {
                line,
                message: format!("expected 2 fields, found {}", record.len()),
            });
        }
        let distance = number(&record, 0, line)?;
        let gain = number(&record, 1, line)?;
        if distance < MIN_DISTANCE_M {
            return Err(Error::Parse {
                line,
                message: format!("distance {distance} m is below {MIN_DISTANCE_M} m"),
            });
        }
        out.push(GainSample::new(distance, gain).map_err(|e| Error::Parse {
            line,
            message: e.to_string(),
        })?);
    }
    Ok(out)
}

pub fn write_samples<W: Write>(samples: &[GainSample], out: W, provenance: Option<&str>) -> Result<()> {
    let mut out = std::io::BufWriter::new(out);
    if let Some(p) = provenance {
        writeln!(out, "# {p}")?;
    }
    writeln!(out, "{SAMPLES_HEADER}")?;
    for s in samples {
        writeln!(out, "{},{}", s.distance_m, s.gain_db)?;
    }
    out.flush()?;
    Ok(())
}
