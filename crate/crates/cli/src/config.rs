//! Flat key=value configuration with command-line overrides.
//!
//! Recognised keys: `level`, `char_index`, `epsilon`, `c_max`, `q_max`.
//! Lines starting with `#` and blank lines are ignored. Command-line flags
//! always win over file values.

use esms::policy::EPSILON_FLOOR;
use std::fmt;
use std::path::Path;

#[derive(Debug, Clone)]
pub struct Config {
    /// Level of the built-in cusp form; only 11 is shipped.
    pub level: u32,
    /// Index k of the character χ(g) = e(k/φ(N)) at the least primitive
    /// root g; must be even and nonzero (the series need χ(-1) = 1).
    pub char_index: u32,
    /// Target precision for internal series and quadrature.
    pub epsilon: f64,
    /// Default modulus cut for c-sums and series evaluation.
    pub c_max: u32,
    /// Default coefficient budget for long Dirichlet-series sums.
    pub q_max: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            level: 11,
            char_index: 2,
            epsilon: 1e-12,
            c_max: 550,
            q_max: 4_000_000,
        }
    }
}

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "configuration error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

impl Config {
    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
        let mut cfg = Config::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(ConfigError(format!(
                    "line {}: expected key=value, got {line:?}",
                    lineno + 1
                )));
            };
            let (key, value) = (key.trim(), value.trim());
            let parse = |what: &str| ConfigError(format!("line {}: bad {what}: {value:?}", lineno + 1));
            match key {
                "level" => cfg.level = value.parse().map_err(|_| parse("level"))?,
                "char_index" => cfg.char_index = value.parse().map_err(|_| parse("char_index"))?,
                "epsilon" => cfg.epsilon = value.parse().map_err(|_| parse("epsilon"))?,
                "c_max" => cfg.c_max = value.parse().map_err(|_| parse("c_max"))?,
                "q_max" => cfg.q_max = value.parse().map_err(|_| parse("q_max"))?,
                other => {
                    return Err(ConfigError(format!(
                        "line {}: unknown key {other:?}",
                        lineno + 1
                    )))
                }
            }
        }
        Ok(cfg)
    }

    /// Validate and normalise; returns warnings to print on stderr.
    pub fn finalise(&mut self) -> Result<Vec<String>, ConfigError> {
        let mut warnings = Vec::new();
        if self.level != 11 {
            return Err(ConfigError(format!(
                "level {} is not available; the built-in cusp form has level 11",
                self.level
            )));
        }
        if self.char_index == 0 || self.char_index % 2 != 0 || self.char_index >= 10 {
            return Err(ConfigError(format!(
                "char_index {} invalid: need an even index in 2..=8 \
                 (χ must be even and non-principal mod 11)",
                self.char_index
            )));
        }
        if self.epsilon < EPSILON_FLOOR {
            warnings.push(format!(
                "epsilon {:.3e} below the supported floor; clamped to {EPSILON_FLOOR:.1e}",
                self.epsilon
            ));
            self.epsilon = EPSILON_FLOOR;
        }
        if !(self.epsilon < 1.0) {
            return Err(ConfigError(format!("epsilon {} must be < 1", self.epsilon)));
        }
        if self.c_max < self.level {
            return Err(ConfigError(format!(
                "c_max {} must be at least the level {}",
                self.c_max, self.level
            )));
        }
        if self.q_max < 1000 {
            return Err(ConfigError(format!("q_max {} too small (min 1000)", self.q_max)));
        }
        Ok(warnings)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn parses_flat_file() {
        let mut f = tempfile_path("esms-config-ok");
        writeln!(f.1, "# comment\nchar_index = 4\nepsilon=1e-10\n\nc_max = 1100").unwrap();
        let cfg = Config::from_file(&f.0).unwrap();
        assert_eq!(cfg.char_index, 4);
        assert_eq!(cfg.epsilon, 1e-10);
        assert_eq!(cfg.c_max, 1100);
        assert_eq!(cfg.level, 11);
        std::fs::remove_file(&f.0).unwrap();
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        let mut f = tempfile_path("esms-config-bad");
        writeln!(f.1, "qmax = 5").unwrap();
        assert!(Config::from_file(&f.0).is_err());
        std::fs::remove_file(&f.0).unwrap();

        let mut cfg = Config {
            char_index: 3,
            ..Config::default()
        };
        assert!(cfg.finalise().is_err());
        let mut cfg = Config {
            level: 7,
            ..Config::default()
        };
        assert!(cfg.finalise().is_err());
    }

    #[test]
    fn epsilon_clamps_with_warning() {
        let mut cfg = Config {
            epsilon: 1e-30,
            ..Config::default()
        };
        let warnings = cfg.finalise().unwrap();
        assert_eq!(warnings.len(), 1);
        assert_eq!(cfg.epsilon, EPSILON_FLOOR);
    }

    fn tempfile_path(stem: &str) -> (std::path::PathBuf, std::fs::File) {
        let path = std::env::temp_dir().join(format!("{stem}-{}.conf", std::process::id()));
        let file = std::fs::File::create(&path).unwrap();
        (path, file)
    }
}
