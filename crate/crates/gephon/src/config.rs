//! Strict `key = value` run configuration with dotted section prefixes.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use gephon_core::bus::BusConfig;
use gephon_core::cavity::{CouplingSetup, GridSpec, QubitEnvelope};
use gephon_core::device::{ControlBand, DeviceModelParams};
use gephon_core::lattice::{lattice_constant_for_target, LatticeSpec, LatticeType, MaterialSpec, PweConfig};
use sha2::{Digest, Sha256};

pub const DEFAULT_CONFIG: &str = include_str!("../data/default.conf");

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: key `{key}` set twice")]
    DuplicateKey { line: usize, key: String },
    #[error("line {line}: `{key}` = `{value}`: {reason}")]
    InvalidValue { line: usize, key: String, value: String, reason: String },
    #[error("{0}")]
    Invalid(String),
    #[error("cannot read {path}: {reason}")]
    Io { path: PathBuf, reason: String },
}

/// Inclusive arithmetic range `start, start + step, ..., ≤ stop`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRange {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl SweepRange {
    pub const fn new(start: f64, stop: f64, step: f64) -> Self {
        Self { start, stop, step }
    }

    pub fn single(x: f64) -> Self {
        Self { start: x, stop: x, step: 1.0 }
    }

    pub fn validate(&self, name: &str) -> Result<(), ConfigError> {
        if !(self.start.is_finite() && self.stop.is_finite() && self.step.is_finite()) {
            return Err(ConfigError::Invalid(format!("sweep.{name}: bounds must be finite")));
        }
        if !(self.step > 0.0) {
            return Err(ConfigError::Invalid(format!("sweep.{name}: step must be positive")));
        }
        if self.stop < self.start {
            return Err(ConfigError::Invalid(format!("sweep.{name}: empty range (stop < start)")));
        }
        Ok(())
    }

    /// Sample points, with floating-point noise from `i·step` rounded away
    /// at 12 significant digits.
    pub fn values(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..n).map(|i| round_sig(self.start + i as f64 * self.step, 12)).collect()
    }
}

pub(crate) fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits - 1, x).parse().unwrap_or(x)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Conditions {
    pub b_tesla: f64,
    pub temperature_k: f64,
    pub band: ControlBand,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSettings {
    pub lattice_type: LatticeType,
    /// Explicit lattice constant; `None` sizes it from `f_center_ghz`.
    pub a_um: Option<f64>,
    pub f_center_ghz: f64,
    pub r_over_a: f64,
    pub defect_missing_holes: u8,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeSettings {
    pub fwhm_nm: f64,
    pub center_nm: [f64; 2],
    pub dot_length_nm: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CavitySettings {
    pub envelope_width_nm: f64,
    pub q: f64,
    pub grid: GridSpec,
    pub coupling: CouplingSetup,
    pub reference_f_ghz: f64,
    pub reference_g_sp_mhz: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweeps {
    pub efield: SweepRange,
    pub frequency: SweepRange,
    pub sigma: SweepRange,
    pub g: SweepRange,
    pub detuning: SweepRange,
    pub overlap_frequencies_ghz: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub device: DeviceModelParams,
    pub material: MaterialSpec,
    pub conditions: Conditions,
    pub lattice: LatticeSettings,
    pub pwe: PweConfig,
    pub k_per_segment: usize,
    pub envelope: EnvelopeSettings,
    pub cavity: CavitySettings,
    pub bus: BusConfig,
    pub sweeps: Sweeps,
    pub output_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        let mut cfg = Self::builtin();
        cfg.apply_text(DEFAULT_CONFIG).expect("embedded default configuration is valid");
        cfg
    }
}

type Entries = BTreeMap<String, (usize, String)>;

/// Splits text into `key -> (line, value)`, rejecting malformed lines and
/// duplicates. `#` starts a comment.
pub fn parse_entries(text: &str) -> Result<Entries, ConfigError> {
    let mut out = Entries::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) =
            content.split_once('=').ok_or_else(|| ConfigError::Syntax { line, msg: format!("expected `key = value`, found `{content}`") })?;
        let key = key.trim();
        let value = value.trim();
        if key.is_empty() || !key.chars().all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_' || c == '.') {
            return Err(ConfigError::Syntax { line, msg: format!("malformed key `{key}`") });
        }
        if value.is_empty() {
            return Err(ConfigError::Syntax { line, msg: format!("missing value for `{key}`") });
        }
        if out.insert(key.to_owned(), (line, value.to_owned())).is_some() {
            return Err(ConfigError::DuplicateKey { line, key: key.to_owned() });
        }
    }
    Ok(out)
}

struct Field<'a> {
    line: usize,
    key: &'a str,
    value: &'a str,
}

impl Field<'_> {
    fn err(&self, reason: impl Into<String>) -> ConfigError {
        ConfigError::InvalidValue { line: self.line, key: self.key.to_owned(), value: self.value.to_owned(), reason: reason.into() }
    }

    fn num(&self) -> Result<f64, ConfigError> {
        let x: f64 = self.value.parse().map_err(|_| self.err("not a number"))?;
        if !x.is_finite() {
            return Err(self.err("must be finite"));
        }
        Ok(x)
    }

    fn count(&self) -> Result<usize, ConfigError> {
        self.value.parse().map_err(|_| self.err("not a non-negative integer"))
    }

    fn flag(&self) -> Result<bool, ConfigError> {
        match self.value {
            "true" => Ok(true),
            "false" => Ok(false),
            _ => Err(self.err("expected true or false")),
        }
    }

    fn list(&self) -> Result<Vec<f64>, ConfigError> {
        self.value
            .split(',')
            .map(|s| s.trim().parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(|| self.err("expected a comma-separated list of numbers")))
            .collect()
    }
}

impl RunConfig {
    /// Code-level defaults; `cavity.d_eff_uev` is left at zero until a
    /// configuration file supplies the calibrated value.
    fn builtin() -> Self {
        Self {
            device: DeviceModelParams::default(),
            material: MaterialSpec::GERMANIUM,
            conditions: Conditions { b_tesla: 0.25, temperature_k: 0.1, band: ControlBand { f_min: 2.0, f_max: 6.0 } },
            lattice: LatticeSettings {
                lattice_type: LatticeType::Triangular,
                a_um: None,
                f_center_ghz: 5.0,
                r_over_a: 0.35,
                defect_missing_holes: 1,
            },
            pwe: PweConfig::default(),
            k_per_segment: 10,
            envelope: EnvelopeSettings { fwhm_nm: QubitEnvelope::DEFAULT_FWHM_NM, center_nm: [0.0, 0.0], dot_length_nm: 180.0 },
            cavity: CavitySettings {
                envelope_width_nm: 2000.0,
                q: 18_000.0,
                grid: GridSpec::default(),
                coupling: CouplingSetup::default(),
                reference_f_ghz: 6.0,
                reference_g_sp_mhz: 6.3,
            },
            bus: BusConfig::default(),
            sweeps: Sweeps {
                efield: SweepRange::new(0.0, 1.0, 0.2),
                frequency: SweepRange::new(2.0, 8.0, 1.0),
                sigma: SweepRange::new(80.0, 250.0, 10.0),
                g: SweepRange::new(5.0, 10.0, 1.0),
                detuning: SweepRange::new(50.0, 100.0, 10.0),
                overlap_frequencies_ghz: vec![2.0, 3.0, 4.0, 5.0, 6.0, 20.0],
            },
            output_dir: PathBuf::from("out"),
        }
    }

    /// Defaults overridden by `text`.
    pub fn from_text(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = Self::default();
        cfg.apply_text(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io { path: path.to_owned(), reason: e.to_string() })?;
        Self::from_text(&text)
    }

    fn apply_text(&mut self, text: &str) -> Result<(), ConfigError> {
        for (key, (line, value)) in &parse_entries(text)? {
            self.apply(&Field { line: *line, key, value })?;
        }
        Ok(())
    }

    fn apply(&mut self, f: &Field<'_>) -> Result<(), ConfigError> {
        let s = &mut self.sweeps;
        match f.key {
            "device.g0" => self.device.g0 = f.num()?,
            "device.alpha" => self.device.alpha = f.num()?,
            "device.g_sp0" => self.device.g_sp0 = f.num()?,
            "device.beta" => self.device.beta = f.num()?,
            "device.c_t1" => self.device.c_t1 = f.num()?,
            "device.q0" => self.device.q0 = f.num()?,
            "device.k_curv" => self.device.k_curv = f.num()?,
            "device.f_opt" => self.device.f_opt = f.num()?,
            "material.rho" => self.material.rho = f.num()?,
            "material.v_s" => self.material.v_s = f.num()?,
            "material.v_t" => self.material.v_t = f.num()?,
            "conditions.b_tesla" => self.conditions.b_tesla = f.num()?,
            "conditions.temperature_k" => self.conditions.temperature_k = f.num()?,
            "conditions.band_f_min_ghz" => self.conditions.band.f_min = f.num()?,
            "conditions.band_f_max_ghz" => self.conditions.band.f_max = f.num()?,
            "lattice.type" => self.lattice.lattice_type = LatticeType::from_str(f.value).map_err(|_| f.err("expected triangular or honeycomb"))?,
            "lattice.a_um" => self.lattice.a_um = if f.value == "auto" { None } else { Some(f.num()?) },
            "lattice.f_center_ghz" => self.lattice.f_center_ghz = f.num()?,
            "lattice.r_over_a" => self.lattice.r_over_a = f.num()?,
            "lattice.defect_missing_holes" => self.lattice.defect_missing_holes = u8::try_from(f.count()?).map_err(|_| f.err("too large"))?,
            "pwe.n_shells" => self.pwe.n_shells = f.count()?,
            "pwe.contrast" => self.pwe.contrast = f.num()?,
            "pwe.n_bands" => self.pwe.n_bands = f.count()?,
            "pwe.k_per_segment" => self.k_per_segment = f.count()?,
            "envelope.fwhm_nm" => self.envelope.fwhm_nm = f.num()?,
            "envelope.x0_nm" => self.envelope.center_nm[0] = f.num()?,
            "envelope.y0_nm" => self.envelope.center_nm[1] = f.num()?,
            "envelope.dot_length_nm" => self.envelope.dot_length_nm = f.num()?,
            "cavity.envelope_width_nm" => self.cavity.envelope_width_nm = f.num()?,
            "cavity.q" => self.cavity.q = f.num()?,
            "cavity.grid_n" => self.cavity.grid.n = f.count()?,
            "cavity.window_factor" => self.cavity.grid.window_factor = f.num()?,
            "cavity.mode_volume_um3" => self.cavity.coupling.mode_volume_um3 = f.num()?,
            "cavity.ingap_detuning_linewidths" => self.cavity.coupling.ingap_detuning_linewidths = f.num()?,
            "cavity.bottleneck" => self.cavity.coupling.bottleneck = f.flag()?,
            "cavity.reference_f_ghz" => self.cavity.reference_f_ghz = f.num()?,
            "cavity.reference_g_sp_mhz" => self.cavity.reference_g_sp_mhz = f.num()?,
            "cavity.d_eff_uev" => self.cavity.coupling.d_eff_uev = f.num()?,
            "bus.g1_mhz" => self.bus.g1_mhz = f.num()?,
            "bus.g2_mhz" => self.bus.g2_mhz = f.num()?,
            "bus.detuning_mhz" => self.bus.detuning_mhz = f.num()?,
            "bus.kappa_mhz" => self.bus.kappa_mhz = f.num()?,
            "bus.fock_cutoff" => self.bus.fock_cutoff = f.count()?,
            "sweep.efield.start" => s.efield.start = f.num()?,
            "sweep.efield.stop" => s.efield.stop = f.num()?,
            "sweep.efield.step" => s.efield.step = f.num()?,
            "sweep.frequency.start" => s.frequency.start = f.num()?,
            "sweep.frequency.stop" => s.frequency.stop = f.num()?,
            "sweep.frequency.step" => s.frequency.step = f.num()?,
            "sweep.sigma.start" => s.sigma.start = f.num()?,
            "sweep.sigma.stop" => s.sigma.stop = f.num()?,
            "sweep.sigma.step" => s.sigma.step = f.num()?,
            "sweep.g.start" => s.g.start = f.num()?,
            "sweep.g.stop" => s.g.stop = f.num()?,
            "sweep.g.step" => s.g.step = f.num()?,
            "sweep.detuning.start" => s.detuning.start = f.num()?,
            "sweep.detuning.stop" => s.detuning.stop = f.num()?,
            "sweep.detuning.step" => s.detuning.step = f.num()?,
            "sweep.overlap_frequencies_ghz" => s.overlap_frequencies_ghz = f.list()?,
            "output.dir" => self.output_dir = PathBuf::from(f.value),
            _ => return Err(ConfigError::UnknownKey { line: f.line, key: f.key.to_owned() }),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let invalid = |m: &str| ConfigError::Invalid(m.to_owned());
        self.device.validate().map_err(invalid)?;
        self.material.validate().map_err(|e| ConfigError::Invalid(e.to_string()))?;
        if ControlBand::new(self.conditions.band.f_min, self.conditions.band.f_max).is_none() {
            return Err(invalid("control band needs 0 <= f_min < f_max"));
        }
        if !(self.conditions.temperature_k >= 0.0) || !(self.conditions.b_tesla >= 0.0) {
            return Err(invalid("temperature and magnetic field must be non-negative"));
        }
        if !(self.lattice.f_center_ghz > 0.0) {
            return Err(invalid("lattice.f_center_ghz must be positive"));
        }
        self.lattice_spec().validate().map_err(|e| ConfigError::Invalid(e.to_string()))?;
        if !(self.envelope.fwhm_nm > 0.0) || !(self.envelope.dot_length_nm > 0.0) {
            return Err(invalid("envelope widths must be positive"));
        }
        let c = &self.cavity;
        if !(c.envelope_width_nm > 0.0 && c.q > 0.0 && c.grid.n >= 16 && c.grid.window_factor > 0.0 && c.coupling.mode_volume_um3 > 0.0) {
            return Err(invalid("cavity parameters must be positive (grid_n >= 16)"));
        }
        if !(c.coupling.d_eff_uev >= 0.0) || !(c.reference_f_ghz > 0.0) {
            return Err(invalid("cavity.d_eff_uev must be non-negative and reference_f_ghz positive"));
        }
        self.bus.validate().map_err(|e| ConfigError::Invalid(e.to_string()))?;
        let s = &self.sweeps;
        for (name, r) in [("efield", s.efield), ("frequency", s.frequency), ("sigma", s.sigma), ("g", s.g), ("detuning", s.detuning)] {
            r.validate(name)?;
        }
        if s.overlap_frequencies_ghz.is_empty() || s.overlap_frequencies_ghz.iter().any(|f| !(*f > 0.0)) {
            return Err(invalid("sweep.overlap_frequencies_ghz must list positive frequencies"));
        }
        if !s.overlap_frequencies_ghz.windows(2).all(|w| w[0] < w[1]) {
            return Err(invalid("sweep.overlap_frequencies_ghz must be strictly ascending"));
        }
        Ok(())
    }

    pub fn lattice_a_um(&self) -> f64 {
        self.lattice.a_um.unwrap_or_else(|| lattice_constant_for_target(self.lattice.f_center_ghz, &self.material))
    }

    pub fn lattice_spec(&self) -> LatticeSpec {
        let a = self.lattice_a_um();
        LatticeSpec {
            lattice_type: self.lattice.lattice_type,
            a_um: a,
            r_um: self.lattice.r_over_a * a,
            defect_missing_holes: self.lattice.defect_missing_holes,
        }
    }

    pub fn qubit_envelope(&self) -> QubitEnvelope {
        QubitEnvelope::from_fwhm(self.envelope.fwhm_nm, self.envelope.center_nm, self.envelope.dot_length_nm)
    }

    /// Every key with its resolved value, one per line, sorted by key.
    /// Parsing this text reproduces `self`.
    pub fn canonical(&self) -> String {
        let d = &self.device;
        let c = &self.cavity;
        let s = &self.sweeps;
        let num = |x: f64| format!("{x:?}");
        let list = s.overlap_frequencies_ghz.iter().map(|x| num(*x)).collect::<Vec<_>>().join(", ");
        let entries: Vec<(&str, String)> = vec![
            ("bus.detuning_mhz", num(self.bus.detuning_mhz)),
            ("bus.fock_cutoff", self.bus.fock_cutoff.to_string()),
            ("bus.g1_mhz", num(self.bus.g1_mhz)),
            ("bus.g2_mhz", num(self.bus.g2_mhz)),
            ("bus.kappa_mhz", num(self.bus.kappa_mhz)),
            ("cavity.bottleneck", c.coupling.bottleneck.to_string()),
            ("cavity.d_eff_uev", num(c.coupling.d_eff_uev)),
            ("cavity.envelope_width_nm", num(c.envelope_width_nm)),
            ("cavity.grid_n", c.grid.n.to_string()),
            ("cavity.ingap_detuning_linewidths", num(c.coupling.ingap_detuning_linewidths)),
            ("cavity.mode_volume_um3", num(c.coupling.mode_volume_um3)),
            ("cavity.q", num(c.q)),
            ("cavity.reference_f_ghz", num(c.reference_f_ghz)),
            ("cavity.reference_g_sp_mhz", num(c.reference_g_sp_mhz)),
            ("cavity.window_factor", num(c.grid.window_factor)),
            ("conditions.b_tesla", num(self.conditions.b_tesla)),
            ("conditions.band_f_max_ghz", num(self.conditions.band.f_max)),
            ("conditions.band_f_min_ghz", num(self.conditions.band.f_min)),
            ("conditions.temperature_k", num(self.conditions.temperature_k)),
            ("device.alpha", num(d.alpha)),
            ("device.beta", num(d.beta)),
            ("device.c_t1", num(d.c_t1)),
            ("device.f_opt", num(d.f_opt)),
            ("device.g0", num(d.g0)),
            ("device.g_sp0", num(d.g_sp0)),
            ("device.k_curv", num(d.k_curv)),
            ("device.q0", num(d.q0)),
            ("envelope.dot_length_nm", num(self.envelope.dot_length_nm)),
            ("envelope.fwhm_nm", num(self.envelope.fwhm_nm)),
            ("envelope.x0_nm", num(self.envelope.center_nm[0])),
            ("envelope.y0_nm", num(self.envelope.center_nm[1])),
            ("lattice.a_um", self.lattice.a_um.map_or_else(|| "auto".to_owned(), num)),
            ("lattice.defect_missing_holes", self.lattice.defect_missing_holes.to_string()),
            ("lattice.f_center_ghz", num(self.lattice.f_center_ghz)),
            ("lattice.r_over_a", num(self.lattice.r_over_a)),
            ("lattice.type", self.lattice.lattice_type.name().to_owned()),
            ("material.rho", num(self.material.rho)),
            ("material.v_s", num(self.material.v_s)),
            ("material.v_t", num(self.material.v_t)),
            ("output.dir", self.output_dir.display().to_string()),
            ("pwe.contrast", num(self.pwe.contrast)),
            ("pwe.k_per_segment", self.k_per_segment.to_string()),
            ("pwe.n_bands", self.pwe.n_bands.to_string()),
            ("pwe.n_shells", self.pwe.n_shells.to_string()),
            ("sweep.detuning.start", num(s.detuning.start)),
            ("sweep.detuning.step", num(s.detuning.step)),
            ("sweep.detuning.stop", num(s.detuning.stop)),
            ("sweep.efield.start", num(s.efield.start)),
            ("sweep.efield.step", num(s.efield.step)),
            ("sweep.efield.stop", num(s.efield.stop)),
            ("sweep.frequency.start", num(s.frequency.start)),
            ("sweep.frequency.step", num(s.frequency.step)),
            ("sweep.frequency.stop", num(s.frequency.stop)),
            ("sweep.g.start", num(s.g.start)),
            ("sweep.g.step", num(s.g.step)),
            ("sweep.g.stop", num(s.g.stop)),
            ("sweep.overlap_frequencies_ghz", list),
            ("sweep.sigma.start", num(s.sigma.start)),
            ("sweep.sigma.step", num(s.sigma.step)),
            ("sweep.sigma.stop", num(s.sigma.stop)),
        ];
        let mut out = String::new();
        for (k, v) in entries {
            let _ = writeln!(out, "{k} = {v}");
        }
        out
    }

    /// SHA-256 of [`canonical`](Self::canonical), hex encoded. The output
    /// directory is excluded so relocating a run does not change its hash.
    pub fn hash(&self) -> String {
        let text: String = self.canonical().lines().filter(|l| !l.starts_with("output.dir")).map(|l| format!("{l}\n")).collect();
        format!("{:x}", Sha256::digest(text.as_bytes()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid_and_calibrated() {
        let cfg = RunConfig::default();
        cfg.validate().unwrap();
        assert!(cfg.cavity.coupling.d_eff_uev > 0.0);
        assert!((cfg.lattice_a_um() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn canonical_round_trip() {
        let cfg =
            RunConfig::from_text("lattice.type = honeycomb\nlattice.r_over_a = 0.22\nbus.g1_mhz = 7.25\nsweep.overlap_frequencies_ghz = 1.5, 6\n")
                .unwrap();
        let again = RunConfig::from_text(&cfg.canonical()).unwrap();
        assert_eq!(cfg, again);
        assert_eq!(cfg.hash(), again.hash());
        assert_ne!(cfg.hash(), RunConfig::default().hash());
    }

    #[test]
    fn comments_and_whitespace_do_not_change_the_hash() {
        let a = RunConfig::from_text("bus.g1_mhz = 6").unwrap();
        let b = RunConfig::from_text("# note\n\n   bus.g1_mhz=6.0   # trailing\n").unwrap();
        assert_eq!(a.hash(), b.hash());
    }

    #[test]
    fn strictness() {
        assert!(matches!(RunConfig::from_text("bus.g3_mhz = 1"), Err(ConfigError::UnknownKey { line: 1, .. })));
        assert!(matches!(RunConfig::from_text("bus.g1_mhz = 1\nbus.g1_mhz = 2"), Err(ConfigError::DuplicateKey { line: 2, .. })));
        assert!(matches!(RunConfig::from_text("bus.g1_mhz 1"), Err(ConfigError::Syntax { .. })));
        assert!(matches!(RunConfig::from_text("bus.g1_mhz = fast"), Err(ConfigError::InvalidValue { .. })));
        assert!(matches!(RunConfig::from_text("bus.g1_mhz = inf"), Err(ConfigError::InvalidValue { .. })));
        assert!(matches!(RunConfig::from_text("cavity.bottleneck = yes"), Err(ConfigError::InvalidValue { .. })));
        assert!(matches!(RunConfig::from_text("Bus.G1 = 1"), Err(ConfigError::Syntax { .. })));
    }

    #[test]
    fn empty_and_degenerate_ranges() {
        assert!(RunConfig::from_text("sweep.efield.start = 1\nsweep.efield.stop = 0").is_err());
        assert!(RunConfig::from_text("sweep.efield.step = 0").is_err());
        let one = RunConfig::from_text("sweep.efield.start = 0\nsweep.efield.stop = 0").unwrap();
        assert_eq!(one.sweeps.efield.values(), [0.0]);
    }

    #[test]
    fn range_values_are_clean() {
        assert_eq!(SweepRange::new(0.0, 1.0, 0.2).values(), [0.0, 0.2, 0.4, 0.6, 0.8, 1.0]);
        assert_eq!(SweepRange::new(80.0, 250.0, 10.0).values().len(), 18);
        assert_eq!(SweepRange::new(2.0, 8.5, 1.0).values().last(), Some(&8.0));
    }

    #[test]
    fn invalid_physics_is_a_config_error() {
        assert!(RunConfig::from_text("lattice.r_over_a = 0.6").is_err());
        assert!(RunConfig::from_text("bus.detuning_mhz = 0").is_err());
        assert!(RunConfig::from_text("bus.fock_cutoff = 1").is_err());
        assert!(RunConfig::from_text("conditions.band_f_min_ghz = 7").is_err());
    }
}
