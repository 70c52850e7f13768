//! Canyon propagation model.
//!
//! A plane wave from an elevated transmitter crosses the top opening of a
//! container canyon. The received power is the product of four factors:
//!
//! * `|S|`, the free-space power flux at the canyon top, ∝ 1/ℓ² with
//!   ℓ = √(h² + D²);
//! * `A`, the canyon aperture projected orthogonally to the wave vector,
//!   ℓ·sin(θ) where θ = φ₁ − φ₂ is the angle subtended by the opening;
//! * `L`, the length of canyon that accepts energy within the azimuthal
//!   wedge ψ, D·sin(ψ);
//! * `ν`, the fraction of the entering energy that survives the in-canyon
//!   vertical path ℓ′ ≈ h′D/h, ∝ 1/ℓ′².
//!
//! All powers are proportional: constants are left to the regression
//! intercept. Far from the canyon the product collapses to ψhd/D⁴.

use crate::error::{Error, Result};
use std::f64::consts::FRAC_PI_2;

/// Default azimuthal acceptance angle in radians.
pub const DEFAULT_PSI: f64 = 0.1;

/// Side-view geometry of one transmitter illuminating a canyon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanyonGeometry {
    /// Transmitter height above the canyon top (m).
    pub tx_height: f64,
    /// Internal canyon width (m). Zero is accepted as the closed-canyon limit.
    pub width: f64,
    /// Horizontal distance from the transmitter to the near canyon edge (m).
    pub edge_distance: f64,
    /// Maximum azimuthal acceptance angle (rad).
    pub psi: f64,
    /// Receiver depth below the canyon top (m).
    pub rx_depth: f64,
}

/// Elevation angles of the two canyon edges as seen from the transmitter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElevationAngles {
    /// Elevation of the near edge.
    pub phi1: f64,
    /// Elevation of the far edge.
    pub phi2: f64,
    /// Angle subtended by the opening, `phi1 - phi2`.
    pub theta: f64,
}

impl CanyonGeometry {
    pub fn new(
        tx_height: f64,
        width: f64,
        edge_distance: f64,
        psi: f64,
        rx_depth: f64,
    ) -> Result<Self> {
        let geom = Self {
            tx_height,
            width,
            edge_distance,
            psi,
            rx_depth,
        };
        geom.validate()?;
        Ok(geom)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("tx_height", self.tx_height),
            ("edge_distance", self.edge_distance),
            ("rx_depth", self.rx_depth),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Domain(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.width.is_finite() && self.width >= 0.0) {
            return Err(Error::Domain(format!(
                "width must be non-negative, got {}",
                self.width
            )));
        }
        if !(self.psi > 0.0 && self.psi <= FRAC_PI_2) {
            return Err(Error::Domain(format!(
                "psi must lie in (0, pi/2], got {}",
                self.psi
            )));
        }
        Ok(())
    }

    /// Slant distance ℓ from the transmitter to the near canyon edge.
    pub fn slant_range(&self) -> f64 {
        self.tx_height.hypot(self.edge_distance)
    }

    /// In-canyon horizontal run D′ = h′D/h, from similar triangles.
    pub fn in_canyon_run(&self) -> f64 {
        self.rx_depth * self.edge_distance / self.tx_height
    }

    /// Exact in-canyon path length ℓ′ = √(h′² + D′²).
    pub fn in_canyon_path(&self) -> f64 {
        self.rx_depth.hypot(self.in_canyon_run())
    }
}

/// Subtended angle θ = atan(h/D) − atan(h/(D+d)), evaluated through the
/// arctangent difference identity so it stays accurate when D ≫ h, d.
fn subtended_angle(h: f64, d: f64, big_d: f64) -> f64 {
    (h * d / (big_d * (big_d + d) + h * h)).atan()
}

pub fn elevation_angles(geom: &CanyonGeometry) -> Result<ElevationAngles> {
    geom.validate()?;
    if geom.width <= 0.0 {
        return Err(Error::Domain("elevation angles need a positive width".into()));
    }
    let h = geom.tx_height;
    let big_d = geom.edge_distance;
    Ok(ElevationAngles {
        phi1: (h / big_d).atan(),
        phi2: (h / (big_d + geom.width)).atan(),
        theta: subtended_angle(h, geom.width, big_d),
    })
}

/// Power flux at the canyon top, (h² + D²)⁻¹.
pub fn poynting_fspl(geom: &CanyonGeometry) -> f64 {
    let l = geom.slant_range();
    1.0 / (l * l)
}

/// Projected aperture ℓ·sin(θ) without small-angle shortcuts.
pub fn projected_aperture_exact(geom: &CanyonGeometry) -> f64 {
    if geom.width == 0.0 {
        return 0.0;
    }
    let theta = subtended_angle(geom.tx_height, geom.width, geom.edge_distance);
    geom.slant_range() * theta.sin()
}

/// Length of canyon accepting energy, D·sin(ψ).
pub fn acceptance_length(geom: &CanyonGeometry) -> f64 {
    geom.edge_distance * geom.psi.sin()
}

/// Vertical fraction ν ∝ 1/ℓ′², with ℓ′ ≈ h′D/h.
pub fn vertical_fraction(geom: &CanyonGeometry) -> f64 {
    let r = geom.tx_height / (geom.rx_depth * geom.edge_distance);
    r * r
}

/// ν·L·A·|S| with every factor in its exact form.
pub fn received_power_exact(geom: &CanyonGeometry) -> f64 {
    vertical_fraction(geom)
        * acceptance_length(geom)
        * projected_aperture_exact(geom)
        * poynting_fspl(geom)
}

/// Far-field form ψhd/D⁴.
pub fn received_power_approx(geom: &CanyonGeometry) -> f64 {
    geom.psi * geom.tx_height * geom.width / geom.edge_distance.powi(4)
}

/// Limit of `received_power_exact / received_power_approx` as D → ∞:
/// (h/h′)²·sin(ψ)/ψ.
pub fn exact_to_approx_limit(geom: &CanyonGeometry) -> f64 {
    let r = geom.tx_height / geom.rx_depth;
    r * r * geom.psi.sin() / geom.psi
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn geom(h: f64, d: f64, big_d: f64, psi: f64, hp: f64) -> CanyonGeometry {
        CanyonGeometry::new(h, d, big_d, psi, hp).unwrap()
    }

    #[test]
    fn elevation_examples() {
        let a = elevation_angles(&geom(17.4, 8.0, 63.0, 0.1, 5.0)).unwrap();
        assert_relative_eq!(a.phi1.to_degrees(), 15.439645535319264, epsilon = 1e-10);
        assert_relative_eq!(a.theta.to_degrees(), 1.6695384788985672, epsilon = 1e-10);
        assert_relative_eq!(a.theta, a.phi1 - a.phi2, epsilon = 1e-14);

        let b = elevation_angles(&geom(17.4, 8.0, 113.0, 0.1, 5.0)).unwrap();
        assert_relative_eq!(b.phi1.to_degrees(), 8.753782395441931, epsilon = 1e-10);

        let c = elevation_angles(&geom(12.0, 3.0, 12.0, 0.1, 5.0)).unwrap();
        assert_eq!(c.phi1.to_degrees(), 45.0);
    }

    #[test]
    fn rejects_invalid_geometry() {
        assert!(CanyonGeometry::new(0.0, 8.0, 63.0, 0.1, 5.0).is_err());
        assert!(CanyonGeometry::new(17.0, -1.0, 63.0, 0.1, 5.0).is_err());
        assert!(CanyonGeometry::new(17.0, 8.0, -63.0, 0.1, 5.0).is_err());
        assert!(CanyonGeometry::new(17.0, 8.0, 63.0, 0.0, 5.0).is_err());
        assert!(CanyonGeometry::new(17.0, 8.0, 63.0, 2.0, 5.0).is_err());
        assert!(CanyonGeometry::new(17.0, 8.0, 63.0, 0.1, f64::NAN).is_err());
        let closed = geom(17.0, 0.0, 63.0, 0.1, 5.0);
        assert!(elevation_angles(&closed).is_err());
    }

    #[test]
    fn poynting_examples() {
        assert_relative_eq!(poynting_fspl(&geom(3.0, 8.0, 4.0, 0.1, 1.0)), 0.04, epsilon = 1e-15);
        assert_relative_eq!(
            poynting_fspl(&geom(17.4, 8.0, 63.0, 0.1, 5.0)),
            2.340955484390509e-4,
            max_relative = 1e-12
        );
        assert_relative_eq!(poynting_fspl(&geom(1e-9, 8.0, 10.0, 0.1, 1.0)), 0.01, max_relative = 1e-12);
    }

    #[test]
    fn aperture_examples() {
        assert_relative_eq!(
            projected_aperture_exact(&geom(17.4, 8.0, 63.0, 0.1, 5.0)),
            1.9042140397501406,
            max_relative = 1e-12
        );
        assert_eq!(projected_aperture_exact(&geom(17.4, 0.0, 63.0, 0.1, 5.0)), 0.0);
        assert!(projected_aperture_exact(&geom(1e-12, 8.0, 63.0, 0.1, 5.0)) < 1e-12);
    }

    #[test]
    fn acceptance_length_examples() {
        assert_relative_eq!(
            acceptance_length(&geom(17.4, 8.0, 100.0, FRAC_PI_2, 5.0)),
            100.0,
            epsilon = 1e-12
        );
        assert_relative_eq!(
            acceptance_length(&geom(17.4, 8.0, 100.0, 0.1, 5.0)),
            9.983341664682815,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            acceptance_length(&geom(17.4, 8.0, 63.0, 0.1, 5.0)),
            6.289505248750174,
            max_relative = 1e-13
        );
    }

    #[test]
    fn vertical_fraction_examples() {
        assert_relative_eq!(vertical_fraction(&geom(3.0, 8.0, 1.0, 0.1, 3.0)), 1.0);
        let g = geom(17.4, 8.0, 63.0, 0.1, 5.0);
        assert_relative_eq!(vertical_fraction(&g), 3.051247165532880e-3, max_relative = 1e-12);
        let far = CanyonGeometry {
            edge_distance: 126.0,
            ..g
        };
        assert_relative_eq!(vertical_fraction(&far), vertical_fraction(&g) / 4.0, max_relative = 1e-14);
    }

    #[test]
    fn exact_power_examples() {
        let g = geom(17.4, 8.0, 63.0, 0.1, 5.0);
        // product of the four sub-results above
        let chain = 3.051247165532880e-3 * 6.289505248750174 * 1.9042140397501406 * 2.340955484390509e-4;
        assert_relative_eq!(received_power_exact(&g), chain, max_relative = 1e-12);
        assert_relative_eq!(received_power_exact(&g), 8.554660739651623e-6, max_relative = 1e-12);
        assert_eq!(received_power_exact(&geom(17.4, 0.0, 63.0, 0.1, 5.0)), 0.0);
    }

    #[test]
    fn approx_power_examples() {
        let g = geom(17.4, 8.0, 100.0, 0.1, 5.0);
        assert_relative_eq!(received_power_approx(&g), 1.392e-7, max_relative = 1e-13);
        let g2 = CanyonGeometry {
            edge_distance: 200.0,
            ..g
        };
        assert_relative_eq!(received_power_approx(&g2), 8.7e-9, max_relative = 1e-13);
        assert_relative_eq!(received_power_approx(&g2) / received_power_approx(&g), 1.0 / 16.0);
    }

    #[test]
    fn exact_over_approx_converges() {
        // Frozen from a 40-digit evaluation of the exact chain at D = k·h.
        let frozen = [(1e3, 12.084651798089643), (1e4, 12.089670061350273), (1e5, 12.090170500793140)];
        for (k, want) in frozen {
            let g = geom(17.4, 8.0, k * 17.4, 0.1, 5.0);
            let ratio = received_power_exact(&g) / received_power_approx(&g);
            assert_relative_eq!(ratio, want, max_relative = 1e-9);
        }
        let g = geom(17.4, 8.0, 63.0, 0.1, 5.0);
        assert_relative_eq!(exact_to_approx_limit(&g), 12.090226089597477, max_relative = 1e-12);
    }

    #[test]
    fn exact_power_decreases_with_distance() {
        let mut prev = f64::INFINITY;
        for i in 0..200 {
            let g = geom(17.4, 8.0, 18.0 + 5.0 * i as f64, 0.1, 5.0);
            let p = received_power_exact(&g);
            assert!(p < prev);
            prev = p;
        }
    }

    #[test]
    fn in_canyon_path() {
        let g = geom(17.4, 8.0, 63.0, 0.1, 5.0);
        assert_relative_eq!(g.in_canyon_run(), 5.0 * 63.0 / 17.4);
        assert!(g.in_canyon_path() > g.in_canyon_run());
    }

    proptest::proptest! {
        #[test]
        fn prop_angles_and_power_are_consistent(
            h in 0.5f64..40.0,
            d in 0.5f64..30.0,
            big_d in 1.0f64..2000.0,
            psi in 0.01f64..FRAC_PI_2,
            hp in 0.5f64..20.0,
        ) {
            let g = geom(h, d, big_d, psi, hp);
            let a = elevation_angles(&g).unwrap();
            proptest::prop_assert!(a.phi1 > a.phi2 && a.phi2 > 0.0);
            proptest::prop_assert!((a.theta - (a.phi1 - a.phi2)).abs() < 1e-12);
            let nu = vertical_fraction(&g);
            let twice = CanyonGeometry { edge_distance: big_d * 2.0, ..g };
            proptest::prop_assert!(nu > 0.0);
            proptest::prop_assert!((vertical_fraction(&twice) * 4.0 / nu - 1.0).abs() < 1e-12);
            let p = received_power_exact(&g);
            proptest::prop_assert!(p > 0.0 && p.is_finite());
            let farther = CanyonGeometry { edge_distance: big_d * 1.5, ..g };
            proptest::prop_assert!(received_power_exact(&farther) < p);
            let ratio = received_power_approx(&farther) / received_power_approx(&g);
            proptest::prop_assert!((ratio - 1.5f64.powi(-4)).abs() < 1e-12);
        }
    }
}
