//! Angular scans: one horn rotation at one receiver position.

use crate::error::{Error, Result};
use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

/// Tolerance on the azimuth grid spacing (rad).
pub const GRID_TOLERANCE: f64 = 1e-9;

/// Minimum number of azimuth samples per scan.
pub const MIN_SAMPLES: usize = 8;

/// Transmitter identity. TX1 rides a rail crane and is labelled by its Y
/// offset in metres; TX2 is fixed on a pole.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TxId {
    Tx1 { crane_y: u16 },
    Tx2,
}

impl fmt::Display for TxId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TxId::Tx1 { crane_y } => write!(f, "TX1_{crane_y}"),
            TxId::Tx2 => f.write_str("TX2"),
        }
    }
}

impl FromStr for TxId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "TX2" {
            return Ok(TxId::Tx2);
        }
        s.strip_prefix("TX1_")
            .and_then(|d| d.parse().ok())
            .map(|crane_y| TxId::Tx1 { crane_y })
            .ok_or_else(|| Error::Domain(format!("unknown transmitter id {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VehicleState {
    Absent,
    Position1,
    Position2,
}

impl VehicleState {
    pub fn token(self) -> &'static str {
        match self {
            VehicleState::Absent => "absent",
            VehicleState::Position1 => "position1",
            VehicleState::Position2 => "position2",
        }
    }
}

impl FromStr for VehicleState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "absent" => Ok(VehicleState::Absent),
            "position1" => Ok(VehicleState::Position1),
            "position2" => Ok(VehicleState::Position2),
            _ => Err(Error::Domain(format!("unknown vehicle state {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stacking {
    Uniform,
    Nonuniform,
}

impl Stacking {
    pub fn token(self) -> &'static str {
        match self {
            Stacking::Uniform => "uniform",
            Stacking::Nonuniform => "nonuniform",
        }
    }

    /// Label used in fit tables.
    pub fn label(self) -> &'static str {
        match self {
            Stacking::Uniform => "Uniform",
            Stacking::Nonuniform => "Non uniform",
        }
    }
}

impl FromStr for Stacking {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(Stacking::Uniform),
            "nonuniform" => Ok(Stacking::Nonuniform),
            _ => Err(Error::Domain(format!("unknown stacking {s:?}"))),
        }
    }
}

/// Identifies a receiver placement independently of the vehicle state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointKey {
    pub tx: TxId,
    pub stacking: Stacking,
    x_bits: u64,
    y_bits: u64,
}

impl PointKey {
    pub fn new(tx: TxId, stacking: Stacking, x: f64, y: f64) -> Self {
        Self {
            tx,
            stacking,
            x_bits: x.to_bits(),
            y_bits: y.to_bits(),
        }
    }

    pub fn x(&self) -> f64 {
        f64::from_bits(self.x_bits)
    }

    pub fn y(&self) -> f64 {
        f64::from_bits(self.y_bits)
    }
}

impl fmt::Display for PointKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} x={} y={}",
            self.tx,
            self.stacking.token(),
            self.x(),
            self.y()
        )
    }
}

/// `n` azimuths starting at `offset`, spaced 2π/n.
pub fn uniform_grid(n: usize, offset: f64) -> Vec<f64> {
    (0..n).map(|k| offset + TAU * k as f64 / n as f64).collect()
}

/// Checks that `angles` is a uniform grid covering [0, 2π).
pub fn check_grid(angles: &[f64]) -> std::result::Result<(), String> {
    let n = angles.len();
    if n < MIN_SAMPLES {
        return Err(format!("need at least {MIN_SAMPLES} azimuth samples, got {n}"));
    }
    let start = angles[0];
    let step = TAU / n as f64;
    if !(0.0..step).contains(&start) {
        return Err(format!("first azimuth {start} rad outside [0, {step})"));
    }
    for (k, &a) in angles.iter().enumerate() {
        let expected = start + step * k as f64;
        if (a - expected).abs() > GRID_TOLERANCE {
            return Err(format!(
                "azimuth {k} is {a} rad, expected {expected} for a uniform {n}-point grid"
            ));
        }
    }
    Ok(())
}

/// Received channel gain versus RX azimuth at one position.
///
/// Gains are held in dB; the linear values are derived on demand.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularScan {
    pub tx: TxId,
    pub x: f64,
    pub y: f64,
    pub vehicle_state: VehicleState,
    pub stacking: Stacking,
    angles: Vec<f64>,
    gain_db: Vec<f64>,
}

impl AngularScan {
    pub fn new(
        tx: TxId,
        x: f64,
        y: f64,
        angles: Vec<f64>,
        gain_db: Vec<f64>,
        vehicle_state: VehicleState,
        stacking: Stacking,
    ) -> Result<Self> {
        let key = PointKey::new(tx, stacking, x, y).to_string();
        if angles.len() != gain_db.len() {
            return Err(Error::Shape(format!(
                "{key}: {} angles but {} gains",
                angles.len(),
                gain_db.len()
            )));
        }
        check_grid(&angles).map_err(|message| Error::Grid {
            key: key.clone(),
            message,
        })?;
        if let Some(g) = gain_db.iter().find(|g| !g.is_finite()) {
            return Err(Error::Domain(format!("{key}: non-finite gain {g} dB")));
        }
        if !(x.is_finite() && y.is_finite()) {
            return Err(Error::Domain(format!("{key}: non-finite position")));
        }
        Ok(Self {
            tx,
            x,
            y,
            vehicle_state,
            stacking,
            angles,
            gain_db,
        })
    }

    /// Builds a scan from linear power gains, which must all be positive.
    pub fn from_linear(
        tx: TxId,
        x: f64,
        y: f64,
        angles: Vec<f64>,
        gains: &[f64],
        vehicle_state: VehicleState,
        stacking: Stacking,
    ) -> Result<Self> {
        let gain_db = gains
            .iter()
            .map(|&g| crate::angular::to_db(g))
            .collect::<Result<Vec<_>>>()?;
        Self::new(tx, x, y, angles, gain_db, vehicle_state, stacking)
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn gain_db(&self) -> &[f64] {
        &self.gain_db
    }

    pub fn linear_gains(&self) -> impl Iterator<Item = f64> + '_ {
        self.gain_db.iter().map(|g| 10f64.powf(g / 10.0))
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    pub fn point_key(&self) -> PointKey {
        PointKey::new(self.tx, self.stacking, self.x, self.y)
    }

    pub fn same_grid(&self, other: &AngularScan) -> bool {
        self.angles.len() == other.angles.len()
            && self
                .angles
                .iter()
                .zip(&other.angles)
                .all(|(a, b)| (a - b).abs() <= GRID_TOLERANCE)
    }

    /// Index of the grid azimuth closest to `phi` on the circle.
    pub fn nearest_index(&self, phi: f64) -> usize {
        let n = self.angles.len();
        let step = TAU / n as f64;
        let k = ((phi - self.angles[0]) / step).round();
        k.rem_euclid(n as f64) as usize % n
    }

    /// Index of `phi` if it lies on the grid.
    pub fn index_of(&self, phi: f64) -> Option<usize> {
        let k = self.nearest_index(phi);
        let diff = (phi - self.angles[k]).rem_euclid(TAU);
        (diff.min(TAU - diff) <= GRID_TOLERANCE).then_some(k)
    }
}
