//! `key = value` configuration files.
//!
//! One key per line, `#` starts a comment, lists are comma separated and a
//! θ range is written `start:stop:count` with both endpoints included.
//! Angles accept `pi` multiples such as `pi/2`, `2pi` or `0.25*pi`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::LatticeCase;
use crate::kicked_top::KickedTopParams;
use crate::measures::{DiscordSettings, MeasuredSide};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExperimentKind {
    RandomStates,
    KickedTop,
    Lattice,
    FullyConnected,
    RandomWeighted,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 5] = [
        Self::RandomStates,
        Self::KickedTop,
        Self::Lattice,
        Self::FullyConnected,
        Self::RandomWeighted,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::RandomStates => "random-states",
            Self::KickedTop => "kicked-top",
            Self::Lattice => "lattice",
            Self::FullyConnected => "fully-connected",
            Self::RandomWeighted => "random-weighted",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::config(format!("unknown experiment kind '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub kind: ExperimentKind,
    pub n_values: Vec<u64>,
    pub thetas: Vec<f64>,
    pub samples: usize,
    pub seed: u64,
    pub discord: DiscordSettings,
    pub output: Option<PathBuf>,
    pub cases: Vec<LatticeCase>,
    pub kicked_top: KickedTopParams,
    /// Weight of the edge between qubits 0 and 1 in random-weighted graphs.
    pub fixed_theta: f64,
}

const KEYS: &[&str] = &[
    "kind",
    "n",
    "theta",
    "samples",
    "seed",
    "cases",
    "output",
    "discord.n_alpha",
    "discord.n_beta",
    "discord.tolerance",
    "discord.side",
    "kappa",
    "p",
    "theta0",
    "phi0",
    "steps",
    "smoothing",
    "order",
    "fixed_theta",
];

/// Parses an angle: a plain number, `pi`, `k*pi`, `kpi`, `pi/d` or `kpi/d`.
pub fn parse_angle(s: &str) -> Result<f64> {
    let t: String = s
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect::<String>()
        .to_ascii_lowercase();
    let bad = || Error::config(format!("cannot parse angle '{s}'"));
    if let Ok(v) = t.parse::<f64>() {
        return Ok(v);
    }
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a, b.parse::<f64>().map_err(|_| bad())?),
        None => (t.as_str(), 1.0),
    };
    let coeff = num.strip_suffix("pi").ok_or_else(bad)?;
    let coeff = coeff.strip_suffix('*').unwrap_or(coeff);
    let k = match coeff {
        "" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(k * PI / den)
}

/// `start:stop:count` (inclusive) or a comma-separated list of angles.
pub fn parse_theta_grid(s: &str) -> Result<Vec<f64>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::config("theta grid is empty"));
    }
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [single] => single.split(',').map(|x| parse_angle(x.trim())).collect(),
        [start, stop, count] => {
            let start = parse_angle(start)?;
            let stop = parse_angle(stop)?;
            let count: usize = count
                .trim()
                .parse()
                .map_err(|_| Error::config(format!("bad point count in range '{s}'")))?;
            match count {
                0 => Err(Error::config("theta range has zero points")),
                1 => Ok(vec![start]),
                _ => Ok((0..count)
                    .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
                    .collect()),
            }
        }
        _ => Err(Error::config(format!(
            "theta range '{s}' must be start:stop:count"
        ))),
    }
}

fn parse_list<T: FromStr>(key: &str, s: &str) -> Result<Vec<T>> {
    let items: Vec<&str> = s
        .split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .collect();
    if items.is_empty() {
        return Err(Error::config(format!("'{key}' is empty")));
    }
    items
        .into_iter()
        .map(|x| {
            x.parse::<T>()
                .map_err(|_| Error::config(format!("bad value '{x}' for '{key}'")))
        })
        .collect()
}

fn parse_one<T: FromStr>(key: &str, s: &str) -> Result<T> {
    s.trim()
        .parse::<T>()
        .map_err(|_| Error::config(format!("bad value '{}' for '{key}'", s.trim())))
}

impl SweepConfig {
    /// Built-in defaults for a kind; grids that have no sensible default are
    /// left empty and must come from the config.
    pub fn defaults(kind: ExperimentKind) -> Self {
        let (n_values, samples) = match kind {
            ExperimentKind::RandomStates => (vec![5], 1000),
            ExperimentKind::RandomWeighted => (vec![10], 5000),
            ExperimentKind::KickedTop => (vec![8], 1),
            ExperimentKind::Lattice | ExperimentKind::FullyConnected => (vec![], 1),
        };
        Self {
            kind,
            n_values,
            thetas: vec![],
            samples,
            seed: 0,
            discord: DiscordSettings::default(),
            output: None,
            cases: LatticeCase::all(),
            kicked_top: KickedTopParams::default(),
            fixed_theta: PI,
        }
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_with_kind(text, None)
    }

    /// Like [`SweepConfig::parse`], but `kind` may be omitted from the text
    /// when `expected` supplies it; a conflicting `kind` is an error.
    pub fn parse_with_kind(text: &str, expected: Option<ExperimentKind>) -> Result<Self> {
        let mut entries: BTreeMap<String, String> = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::config(format!("line {}: expected key = value", lineno + 1))
            })?;
            let key = key.trim().to_string();
            if !KEYS.contains(&key.as_str()) {
                return Err(Error::config(format!(
                    "line {}: unknown key '{key}'",
                    lineno + 1
                )));
            }
            if entries
                .insert(key.clone(), value.trim().to_string())
                .is_some()
            {
                return Err(Error::config(format!(
                    "line {}: duplicate key '{key}'",
                    lineno + 1
                )));
            }
        }
        let kind = match (
            entries
                .get("kind")
                .map(|k| k.parse::<ExperimentKind>())
                .transpose()?,
            expected,
        ) {
            (Some(k), Some(e)) if k != e => {
                return Err(Error::config(format!("config is for {k}, not {e}")));
            }
            (Some(k), _) | (None, Some(k)) => k,
            (None, None) => return Err(Error::config("missing 'kind'")),
        };
        let mut cfg = Self::defaults(kind);
        for (key, value) in &entries {
            cfg.apply(key, value)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn apply(&mut self, key: &str, v: &str) -> Result<()> {
        match key {
            "kind" => {}
            "n" => self.n_values = parse_list(key, v)?,
            "theta" => self.thetas = parse_theta_grid(v)?,
            "samples" => self.samples = parse_one(key, v)?,
            "seed" => self.seed = parse_one(key, v)?,
            "cases" => self.cases = parse_list(key, v)?,
            "output" => self.output = Some(PathBuf::from(v)),
            "discord.n_alpha" => self.discord.n_alpha = parse_one(key, v)?,
            "discord.n_beta" => self.discord.n_beta = parse_one(key, v)?,
            "discord.tolerance" => self.discord.tolerance = parse_one(key, v)?,
            "discord.side" => self.discord.side = v.parse::<MeasuredSide>()?,
            "kappa" => self.kicked_top.kappa = parse_one(key, v)?,
            "p" => self.kicked_top.p = parse_angle(v)?,
            "theta0" => self.kicked_top.theta0 = parse_angle(v)?,
            "phi0" => self.kicked_top.phi0 = parse_angle(v)?,
            "steps" => self.kicked_top.steps = parse_one(key, v)?,
            "smoothing" => self.kicked_top.smoothing_half_width = parse_one(key, v)?,
            "order" => self.kicked_top.order = v.parse()?,
            "fixed_theta" => self.fixed_theta = parse_angle(v)?,
            other => return Err(Error::config(format!("unknown key '{other}'"))),
        }
        Ok(())
    }

    /// Config-level checks; qubit-count limits are enforced by the runs
    /// themselves as capacity errors.
    pub fn validate(&self) -> Result<()> {
        self.discord
            .validate()
            .map_err(|e| Error::config(e.to_string()))?;
        if self.samples < 1 {
            return Err(Error::config("sample count must be at least 1"));
        }
        let needs_n = !matches!(self.kind, ExperimentKind::Lattice);
        if needs_n && self.n_values.is_empty() {
            return Err(Error::config(format!(
                "{} needs a nonempty 'n' list",
                self.kind
            )));
        }
        let needs_theta = matches!(
            self.kind,
            ExperimentKind::Lattice | ExperimentKind::FullyConnected
        );
        if needs_theta && self.thetas.is_empty() {
            return Err(Error::config(format!(
                "{} needs a nonempty 'theta' grid",
                self.kind
            )));
        }
        if self.kind == ExperimentKind::Lattice && self.cases.is_empty() {
            return Err(Error::config("lattice needs at least one case"));
        }
        if self.kind == ExperimentKind::KickedTop {
            if self.n_values.len() != 1 {
                return Err(Error::config("kicked-top takes a single 'n'"));
            }
            if self.kicked_top.steps < 1 {
                return Err(Error::config("kicked-top needs steps >= 1"));
            }
            if self.n_values[0] < 2 {
                return Err(Error::config("kicked-top needs n >= 2"));
            }
        }
        if matches!(
            self.kind,
            ExperimentKind::RandomStates | ExperimentKind::RandomWeighted
        ) && self.n_values.iter().any(|&n| n < 2)
        {
            return Err(Error::config(format!("{} needs n >= 2", self.kind)));
        }
        if self.kind == ExperimentKind::FullyConnected && self.n_values.iter().any(|&n| n < 2) {
            return Err(Error::config("fully-connected needs n >= 2"));
        }
        Ok(())
    }

    /// Effective settings as `key=value` lines, for the CSV preamble.
    pub fn echo(&self) -> Vec<String> {
        let join = |xs: Vec<String>| xs.join(",");
        let f = super::record::format_float;
        let mut out = vec![
            format!("kind={}", self.kind),
            format!("seed={}", self.seed),
            format!("samples={}", self.samples),
        ];
        if !self.n_values.is_empty() {
            out.push(format!(
                "n={}",
                join(self.n_values.iter().map(|n| n.to_string()).collect())
            ));
        }
        if !self.thetas.is_empty() {
            out.push(format!(
                "theta={}",
                join(self.thetas.iter().map(|&t| f(t)).collect())
            ));
        }
        out.push(format!("discord.n_alpha={}", self.discord.n_alpha));
        out.push(format!("discord.n_beta={}", self.discord.n_beta));
        out.push(format!("discord.tolerance={}", f(self.discord.tolerance)));
        out.push(format!("discord.side={}", self.discord.side));
        match self.kind {
            ExperimentKind::Lattice => {
                out.push(format!(
                    "cases={}",
                    join(self.cases.iter().map(|c| c.to_string()).collect())
                ));
            }
            ExperimentKind::KickedTop => {
                let k = &self.kicked_top;
                out.push(format!("kappa={}", f(k.kappa)));
                out.push(format!("p={}", f(k.p)));
                out.push(format!("theta0={}", f(k.theta0)));
                out.push(format!("phi0={}", f(k.phi0)));
                out.push(format!("steps={}", k.steps));
                out.push(format!("smoothing={}", k.smoothing_half_width));
                out.push(format!("order={}", k.order));
            }
            ExperimentKind::RandomWeighted => {
                out.push(format!("fixed_theta={}", f(self.fixed_theta)))
            }
            _ => {}
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kicked_top::FloquetOrder;

    #[test]
    fn angles() {
        assert_eq!(parse_angle("1.5").unwrap(), 1.5);
        assert_eq!(parse_angle("pi").unwrap(), PI);
        assert_eq!(parse_angle("pi/2").unwrap(), PI / 2.0);
        assert_eq!(parse_angle("2pi").unwrap(), 2.0 * PI);
        assert_eq!(parse_angle("0.25 * pi").unwrap(), 0.25 * PI);
        assert_eq!(parse_angle("-pi/4").unwrap(), -PI / 4.0);
        assert!(parse_angle("tau").is_err());
    }

    #[test]
    fn theta_grids() {
        assert_eq!(
            parse_theta_grid("0:1:5").unwrap(),
            vec![0.0, 0.25, 0.5, 0.75, 1.0]
        );
        assert_eq!(
            parse_theta_grid("0:2pi:3").unwrap(),
            vec![0.0, PI, 2.0 * PI]
        );
        assert_eq!(parse_theta_grid("0.3, pi/2").unwrap(), vec![0.3, PI / 2.0]);
        assert!(parse_theta_grid("").is_err());
        assert!(parse_theta_grid("0:1:0").is_err());
        assert!(parse_theta_grid("0:1").is_err());
    }

    #[test]
    fn parses_a_full_config() {
        let cfg = SweepConfig::parse(
            "# fully connected sweep\nkind = fully-connected\nn = 5, 1000\ntheta = 0:pi:5  # inclusive\nseed=3\ndiscord.side = minimum\n",
        )
        .unwrap();
        assert_eq!(cfg.kind, ExperimentKind::FullyConnected);
        assert_eq!(cfg.n_values, vec![5, 1000]);
        assert_eq!(cfg.thetas.len(), 5);
        assert_eq!(cfg.seed, 3);
        assert_eq!(cfg.discord.side, MeasuredSide::MinimumOverBoth);
    }

    #[test]
    fn rejects_bad_configs() {
        for text in [
            "n = 5",
            "kind = nonsense",
            "kind = random-states\nsamples = 0",
            "kind = random-states\nn =",
            "kind = lattice",
            "kind = lattice\ntheta = ",
            "kind = lattice\ntheta = 1\ncases = hexagonal-C",
            "kind = fully-connected\nn = 5",
            "kind = random-states\nbogus = 1",
            "kind = random-states\nseed = 1\nseed = 2",
            "kind = random-states\ndiscord.n_alpha = 4",
            "kind = kicked-top\nn = 8, 10",
            "kind = random-states\njust a line",
        ] {
            assert!(
                matches!(
                    SweepConfig::parse(text),
                    Err(Error::Config(_)) | Err(Error::Argument(_))
                ),
                "{text}"
            );
        }
    }

    #[test]
    fn kind_from_caller() {
        let cfg = SweepConfig::parse_with_kind("theta = 1", Some(ExperimentKind::Lattice)).unwrap();
        assert_eq!(cfg.kind, ExperimentKind::Lattice);
        assert!(SweepConfig::parse_with_kind(
            "kind = lattice\ntheta = 1",
            Some(ExperimentKind::KickedTop)
        )
        .is_err());
    }

    #[test]
    fn kicked_top_keys() {
        let cfg = SweepConfig::parse("kind = kicked-top\nn = 6\nkappa = 3\np = pi/2\nsteps = 10\nsmoothing = 0\norder = kick-then-rotation").unwrap();
        assert_eq!(cfg.kicked_top.kappa, 3.0);
        assert_eq!(cfg.kicked_top.steps, 10);
        assert_eq!(cfg.kicked_top.smoothing_half_width, 0);
        assert_eq!(cfg.kicked_top.order, FloquetOrder::KickThenRotation);
    }
}
