//! Sound in a moving medium: Doppler ratio with propagation guards and the
//! Mach-cone regime classification.

use serde::{Deserialize, Serialize};

use crate::error::{domain, ensure_finite, ensure_positive, DopplerError, Result};

/// Band around `M = 1` treated as sonic.
pub const SONIC_TOLERANCE: f64 = 1e-9;

/// Speeds along the source-observer line.
///
/// `v_s > 0` moves the source towards the observer; `v_o > 0` moves the
/// observer away from the source; `v_m > 0` is flow towards the observer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AcousticScenario {
    /// Sound speed in the still medium (m/s)
    pub v: f64,
    #[serde(default)]
    pub v_m: f64,
    #[serde(default)]
    pub v_s: f64,
    #[serde(default)]
    pub v_o: f64,
    pub f: f64,
}

impl AcousticScenario {
    pub fn validate(&self) -> Result<()> {
        ensure_positive("v", self.v)?;
        ensure_positive("f", self.f)?;
        for (name, x) in [("v_m", self.v_m), ("v_s", self.v_s), ("v_o", self.v_o)] {
            ensure_finite(name, x)?;
        }
        Ok(())
    }

    /// Wave speed over ground, `max(0, v + v_m)`.
    pub fn wave_speed(&self) -> f64 {
        (self.v + self.v_m).max(0.0)
    }
}

/// Received frequency `f (v_w - v_o) / (v_w - v_s)`.
pub fn acoustic_shift(scn: &AcousticScenario) -> Result<f64> {
    scn.validate()?;
    let vw = scn.wave_speed();
    if vw == 0.0 {
        return Err(DopplerError::PropagationBlocked);
    }
    if scn.v_o >= vw {
        return Err(DopplerError::NeverReceived);
    }
    if scn.v_s >= vw {
        return Err(DopplerError::Supersonic { mach: scn.v_s / vw });
    }
    Ok(scn.f * (vw - scn.v_o) / (vw - scn.v_s))
}

/// Frequency and wavelength of the wave travelling in the medium.
pub fn medium_wave_params(v_s: f64, v_w: f64, f: f64) -> Result<(f64, f64)> {
    ensure_positive("v_w", v_w)?;
    ensure_positive("f", f)?;
    ensure_finite("v_s", v_s)?;
    if v_s >= v_w {
        return domain("source at or above the wave speed has no steady wavelength");
    }
    Ok((f / (1.0 - v_s / v_w), (v_w - v_s) / f))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Subsonic,
    Sonic,
    Supersonic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MachInfo {
    pub mach: f64,
    /// Half-angle of the Mach cone (rad), supersonic only
    pub cone_half_angle: Option<f64>,
    pub regime: Regime,
    /// Limiting `f'/f` heard behind the cone, `v_w / (v_w + |v_s|)`; supersonic only
    pub behind_cone_ratio: Option<f64>,
}

pub fn mach_info(v_s: f64, v_w: f64) -> Result<MachInfo> {
    ensure_positive("v_w", v_w)?;
    ensure_finite("v_s", v_s)?;
    let mach = v_s / v_w;
    let regime = if (mach - 1.0).abs() <= SONIC_TOLERANCE {
        Regime::Sonic
    } else if mach < 1.0 {
        Regime::Subsonic
    } else {
        Regime::Supersonic
    };
    let (cone_half_angle, behind_cone_ratio) = match regime {
        Regime::Supersonic => (Some((1.0 / mach).asin()), Some(v_w / (v_w + v_s.abs()))),
        _ => (None, None),
    };
    Ok(MachInfo { mach, cone_half_angle, regime, behind_cone_ratio })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scn(v_m: f64, v_s: f64, v_o: f64) -> AcousticScenario {
        AcousticScenario { v: 343.0, v_m, v_s, v_o, f: 1000.0 }
    }

    #[test]
    fn approaching_source() {
        let f = acoustic_shift(&scn(0.0, 34.3, 0.0)).unwrap();
        assert!((f / 1000.0 - 1.0 / 0.9).abs() < 1e-12);
        assert_eq!(acoustic_shift(&scn(0.0, 0.0, 0.0)).unwrap(), 1000.0);
        let near = acoustic_shift(&scn(0.0, 0.0, 343.0 * (1.0 - 1e-12))).unwrap();
        assert!(near > 0.0 && near < 1e-6);
    }

    #[test]
    fn guards() {
        assert_eq!(acoustic_shift(&scn(-343.0, 0.0, 0.0)), Err(DopplerError::PropagationBlocked));
        assert_eq!(acoustic_shift(&scn(-400.0, 0.0, 0.0)), Err(DopplerError::PropagationBlocked));
        assert_eq!(acoustic_shift(&scn(0.0, 0.0, 343.0)), Err(DopplerError::NeverReceived));
        assert!(matches!(acoustic_shift(&scn(0.0, 343.0, 0.0)), Err(DopplerError::Supersonic { .. })));
    }

    #[test]
    fn asymmetry() {
        let u = 30.0;
        let a = acoustic_shift(&scn(0.0, u, 0.0)).unwrap();
        let b = acoustic_shift(&scn(0.0, 0.0, -u)).unwrap();
        assert!((a - b).abs() > 1.0);
    }

    #[test]
    fn medium_params() {
        assert_eq!(medium_wave_params(0.0, 343.0, 100.0).unwrap(), (100.0, 3.43));
        let (fw, lw) = medium_wave_params(171.5, 343.0, 100.0).unwrap();
        assert!((fw - 200.0).abs() < 1e-12 && (lw - 1.715).abs() < 1e-12);
        assert!(medium_wave_params(343.0, 343.0, 100.0).is_err());
    }

    #[test]
    fn mach_cone() {
        let m = mach_info(686.0, 343.0).unwrap();
        assert_eq!(m.regime, Regime::Supersonic);
        assert!((m.cone_half_angle.unwrap() - 30f64.to_radians()).abs() < 1e-12);
        assert!((m.behind_cone_ratio.unwrap() - 1.0 / 3.0).abs() < 1e-15);
        let s = mach_info(100.0, 343.0).unwrap();
        assert_eq!((s.regime, s.cone_half_angle), (Regime::Subsonic, None));
        assert_eq!(mach_info(343.0, 343.0).unwrap().regime, Regime::Sonic);
    }
}
