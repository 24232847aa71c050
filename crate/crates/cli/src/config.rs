//! TOML run configuration.
//!
//! The document is first deserialized into permissive raw tables (unknown
//! keys rejected), then validated field by field so every error names the
//! offending key path.

use lr2d_core::profiles::{FrequencyProfile, FrictionProfile, OscillatorConfig, Table};
use lr2d_core::ModeIndex;
use serde::Deserialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("cannot parse document: {0}")]
    Parse(String),
    #[error("{path}: {detail}")]
    Schema { path: String, detail: String },
    #[error("{path}: {detail} (got {value})")]
    Range {
        path: String,
        value: String,
        detail: String,
    },
}

fn schema(path: &str, detail: impl Into<String>) -> ConfigError {
    ConfigError::Schema {
        path: path.to_string(),
        detail: detail.into(),
    }
}

fn range(path: &str, value: impl ToString, detail: impl Into<String>) -> ConfigError {
    ConfigError::Range {
        path: path.to_string(),
        value: value.to_string(),
        detail: detail.into(),
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    m: Option<f64>,
    nu: Option<f64>,
    friction: Option<RawProfile>,
    frequency: Option<RawProfile>,
    time: Option<RawTime>,
    mode: Option<RawMode>,
    coherent: Option<RawCoherent>,
    classical: Option<RawClassical>,
    ermakov: Option<RawErmakov>,
    wavefunction: Option<RawWavefunction>,
    spectrum: Option<RawSpectrum>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProfile {
    kind: Option<String>,
    gamma: Option<f64>,
    omega0: Option<f64>,
    t0: Option<f64>,
    dt: Option<f64>,
    values: Option<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTime {
    t_end: Option<f64>,
    samples: Option<i64>,
    tol: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMode {
    n_plus: Option<i64>,
    n_minus: Option<i64>,
    n: Option<i64>,
    ell: Option<i64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCoherent {
    re: Option<f64>,
    im: Option<f64>,
    ell: Option<i64>,
    truncation: Option<i64>,
    t: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawClassical {
    x0: Option<[f64; 2]>,
    v0: Option<[f64; 2]>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawErmakov {
    rho0: Option<f64>,
    rho_dot0: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWavefunction {
    t: Option<f64>,
    r_max: Option<f64>,
    angles: Option<i64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpectrum {
    max_total: Option<i64>,
    cutoff: Option<i64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimeBlock {
    pub t_end: f64,
    pub samples: usize,
    pub tol: f64,
}

/// Coherent-state label; the family is chosen by the subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentBlock {
    pub re: f64,
    pub im: f64,
    pub ell: u32,
    /// Upper bound on the retained index; the tail bound decides otherwise.
    pub truncation: Option<usize>,
    pub t: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalBlock {
    pub x0: [f64; 2],
    pub v0: [f64; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErmakovBlock {
    /// Explicit initial data; `None` selects closed forms or the defaults.
    pub initial: Option<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WavefunctionBlock {
    pub t: f64,
    /// `None` means ten standard radii of the packet at `t`.
    pub r_max: Option<f64>,
    pub angles: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumBlock {
    pub max_total: usize,
    pub cutoff: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub oscillator: OscillatorConfig,
    pub time: TimeBlock,
    pub mode: ModeIndex,
    pub coherent: CoherentBlock,
    pub classical: ClassicalBlock,
    pub ermakov: ErmakovBlock,
    pub wavefunction: WavefunctionBlock,
    pub spectrum: SpectrumBlock,
    /// SHA-256 of the document bytes.
    pub hash: String,
}

fn positive(path: &str, v: f64) -> Result<f64, ConfigError> {
    if v <= 0.0 || !v.is_finite() {
        return Err(range(path, v, "must be positive and finite"));
    }
    Ok(v)
}

fn finite(path: &str, v: f64) -> Result<f64, ConfigError> {
    if !v.is_finite() {
        return Err(range(path, v, "must be finite"));
    }
    Ok(v)
}

fn nonneg_rate(path: &str, v: f64) -> Result<f64, ConfigError> {
    if v < 0.0 || !v.is_finite() {
        return Err(range(path, v, "rate must be nonnegative"));
    }
    Ok(v)
}

fn count(path: &str, v: i64, min: i64, max: i64) -> Result<usize, ConfigError> {
    if v < min || v > max {
        return Err(range(path, v, format!("must lie in [{min}, {max}]")));
    }
    Ok(v as usize)
}

fn required<T>(path: &str, v: Option<T>) -> Result<T, ConfigError> {
    v.ok_or_else(|| schema(path, "missing required key"))
}

fn reject(path: &str, present: bool, kind: &str) -> Result<(), ConfigError> {
    if present {
        return Err(schema(path, format!("not used by kind = \"{kind}\"")));
    }
    Ok(())
}

fn table(block: &str, raw: &RawProfile) -> Result<Table, ConfigError> {
    let t0 = finite(&format!("{block}.t0"), raw.t0.unwrap_or(0.0))?;
    let dt = positive(&format!("{block}.dt"), required(&format!("{block}.dt"), raw.dt)?)?;
    let values = required(&format!("{block}.values"), raw.values.clone())?;
    Table::new(t0, dt, values).map_err(|e| schema(&format!("{block}.values"), e.to_string()))
}

fn friction(raw: Option<&RawProfile>) -> Result<FrictionProfile, ConfigError> {
    let raw = raw.ok_or_else(|| schema("friction", "missing required table"))?;
    let kind = required("friction.kind", raw.kind.as_deref())?;
    reject("friction.omega0", raw.omega0.is_some(), kind)?;
    let table_keys = raw.t0.is_some() || raw.dt.is_some() || raw.values.is_some();
    let profile = match kind {
        "unit" => {
            reject("friction.gamma", raw.gamma.is_some(), kind)?;
            reject("friction.values", table_keys, kind)?;
            FrictionProfile::Unit
        }
        "exponential_decay" => {
            reject("friction.values", table_keys, kind)?;
            let g = nonneg_rate("friction.gamma", required("friction.gamma", raw.gamma)?)?;
            FrictionProfile::exponential_decay(g)
                .map_err(|e| range("friction.gamma", g, e.to_string()))?
        }
        "tabulated" => {
            reject("friction.gamma", raw.gamma.is_some(), kind)?;
            FrictionProfile::tabulated(table("friction", raw)?)
                .map_err(|e| schema("friction.values", e.to_string()))?
        }
        other => {
            return Err(schema(
                "friction.kind",
                format!("unknown kind \"{other}\" (expected unit, exponential_decay, tabulated)"),
            ))
        }
    };
    Ok(profile)
}

fn frequency(raw: Option<&RawProfile>) -> Result<FrequencyProfile, ConfigError> {
    let raw = raw.ok_or_else(|| schema("frequency", "missing required table"))?;
    let kind = required("frequency.kind", raw.kind.as_deref())?;
    let table_keys = raw.t0.is_some() || raw.dt.is_some() || raw.values.is_some();
    let omega0 = || -> Result<f64, ConfigError> {
        positive("frequency.omega0", required("frequency.omega0", raw.omega0)?)
    };
    let gamma = || -> Result<f64, ConfigError> {
        nonneg_rate("frequency.gamma", required("frequency.gamma", raw.gamma)?)
    };
    let wrap = |e: lr2d_core::profiles::ProfileError| schema("frequency", e.to_string());
    let profile = match kind {
        "constant" => {
            reject("frequency.gamma", raw.gamma.is_some(), kind)?;
            reject("frequency.values", table_keys, kind)?;
            FrequencyProfile::constant(omega0()?).map_err(wrap)?
        }
        "exp_half" => {
            reject("frequency.values", table_keys, kind)?;
            FrequencyProfile::exp_half(omega0()?, gamma()?).map_err(wrap)?
        }
        "exp" => {
            reject("frequency.values", table_keys, kind)?;
            FrequencyProfile::exp(omega0()?, gamma()?).map_err(wrap)?
        }
        "tabulated" => {
            reject("frequency.omega0", raw.omega0.is_some(), kind)?;
            reject("frequency.gamma", raw.gamma.is_some(), kind)?;
            FrequencyProfile::tabulated(table("frequency", raw)?).map_err(wrap)?
        }
        other => {
            return Err(schema(
                "frequency.kind",
                format!("unknown kind \"{other}\" (expected constant, exp_half, exp, tabulated)"),
            ))
        }
    };
    Ok(profile)
}

fn mode(raw: Option<&RawMode>) -> Result<ModeIndex, ConfigError> {
    let Some(raw) = raw else {
        return Ok(ModeIndex::new(0, 0));
    };
    let ladder = raw.n_plus.is_some() || raw.n_minus.is_some();
    let radial = raw.n.is_some() || raw.ell.is_some();
    if ladder && radial {
        return Err(schema("mode", "give either n_plus/n_minus or n/ell, not both"));
    }
    if radial {
        let n = count("mode.n", raw.n.unwrap_or(0), 0, 1000)?;
        let ell = raw.ell.unwrap_or(0);
        if ell.abs() > 1000 {
            return Err(range("mode.ell", ell, "must lie in [-1000, 1000]"));
        }
        return Ok(ModeIndex::from_radial(n, ell));
    }
    Ok(ModeIndex::new(
        count("mode.n_plus", raw.n_plus.unwrap_or(0), 0, 1000)?,
        count("mode.n_minus", raw.n_minus.unwrap_or(0), 0, 1000)?,
    ))
}

/// Parses and validates a configuration document.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let raw: RawDocument = toml::from_str(text).map_err(|e| {
        ConfigError::Parse(e.to_string().lines().collect::<Vec<_>>().join(" "))
    })?;
    let m = positive("m", required("m", raw.m)?)?;
    let nu = positive("nu", required("nu", raw.nu)?)?;
    let oscillator = OscillatorConfig::new(
        m,
        nu,
        friction(raw.friction.as_ref())?,
        frequency(raw.frequency.as_ref())?,
    )
    .map_err(|e| schema("oscillator", e.to_string()))?;

    let rt = raw.time.as_ref();
    let time = TimeBlock {
        t_end: positive("time.t_end", rt.and_then(|t| t.t_end).unwrap_or(5.0))?,
        samples: count("time.samples", rt.and_then(|t| t.samples).unwrap_or(512), 1, 1 << 20)?,
        tol: positive("time.tol", rt.and_then(|t| t.tol).unwrap_or(1e-10))?,
    };

    let rc = raw.coherent.as_ref();
    let coherent = CoherentBlock {
        re: finite("coherent.re", rc.and_then(|c| c.re).unwrap_or(0.5))?,
        im: finite("coherent.im", rc.and_then(|c| c.im).unwrap_or(0.0))?,
        ell: count("coherent.ell", rc.and_then(|c| c.ell).unwrap_or(0), 0, 1000)? as u32,
        truncation: rc
            .and_then(|c| c.truncation)
            .map(|n| count("coherent.truncation", n, 0, 511))
            .transpose()?,
        t: {
            let t = rc.and_then(|c| c.t).unwrap_or(0.0);
            if t < 0.0 || !t.is_finite() {
                return Err(range("coherent.t", t, "must be nonnegative"));
            }
            t
        },
    };

    let rcl = raw.classical.as_ref();
    let classical = ClassicalBlock {
        x0: rcl.and_then(|c| c.x0).unwrap_or([1.0, 0.0]),
        v0: rcl.and_then(|c| c.v0).unwrap_or([0.0, 0.0]),
    };
    for (i, v) in classical.x0.iter().chain(&classical.v0).enumerate() {
        let path = if i < 2 { "classical.x0" } else { "classical.v0" };
        finite(path, *v)?;
    }

    let re = raw.ermakov.as_ref();
    let ermakov = ErmakovBlock {
        initial: match (re.and_then(|e| e.rho0), re.and_then(|e| e.rho_dot0)) {
            (None, None) => None,
            (Some(r), rd) => Some((
                positive("ermakov.rho0", r)?,
                finite("ermakov.rho_dot0", rd.unwrap_or(0.0))?,
            )),
            (None, Some(_)) => return Err(schema("ermakov.rho0", "required with rho_dot0")),
        },
    };

    let rw = raw.wavefunction.as_ref();
    let wavefunction = WavefunctionBlock {
        t: {
            let t = rw.and_then(|w| w.t).unwrap_or(0.0);
            if t < 0.0 || !t.is_finite() {
                return Err(range("wavefunction.t", t, "must be nonnegative"));
            }
            t
        },
        r_max: rw
            .and_then(|w| w.r_max)
            .map(|r| positive("wavefunction.r_max", r))
            .transpose()?,
        angles: count("wavefunction.angles", rw.and_then(|w| w.angles).unwrap_or(16), 1, 4096)?,
    };

    let rs = raw.spectrum.as_ref();
    let spectrum = SpectrumBlock {
        max_total: count("spectrum.max_total", rs.and_then(|s| s.max_total).unwrap_or(4), 0, 60)?,
        cutoff: count("spectrum.cutoff", rs.and_then(|s| s.cutoff).unwrap_or(8), 2, 64)?,
    };

    Ok(RunConfig {
        oscillator,
        time,
        mode: mode(raw.mode.as_ref())?,
        coherent,
        classical,
        ermakov,
        wavefunction,
        spectrum,
        hash: hex::encode(Sha256::digest(text.as_bytes())),
    })
}
