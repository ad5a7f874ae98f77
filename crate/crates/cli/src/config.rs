//! Run settings: defaults, then a `key = value` config file, then flags.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use clap::Args;
use spinsq::HamiltonianSpec;

use crate::error::CliError;
use crate::grid::{parse_f64_list, parse_usize_list};

pub const KEYS: [&str; 13] = [
    "model",
    "n",
    "mu",
    "chi",
    "gamma",
    "omega",
    "f-coeffs",
    "t-max",
    "dt",
    "out",
    "seed",
    "workers",
    "precision",
];

const DEFAULTS: [(&str, &str); 8] = [
    ("model", "one-axis"),
    ("mu", "1"),
    ("chi", "0"),
    ("gamma", "1"),
    ("t-max", "10"),
    ("dt", "0.01"),
    ("workers", "0"),
    ("precision", "17"),
];

/// Flags shared by `evolve` and `scan`. List-valued flags (`--n`, the
/// coefficients, `--model`) accept several values only under `scan`.
#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// File of `key = value` lines using the flag names below; flags win.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// one-axis, one-axis-field, two-axis or general.
    #[arg(long)]
    pub model: Option<String>,
    /// Number of qubits; scan accepts lists and ranges such as 2-20,50,100.
    #[arg(long)]
    pub n: Option<String>,
    /// Coefficient of Sx^2.
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    /// Coefficient of Sy^2 (general model).
    #[arg(long, allow_hyphen_values = true)]
    pub chi: Option<String>,
    /// Two-axis strength, or the SxSy+SySx coefficient of the general model.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    /// Field strength of the one-axis-field model.
    #[arg(long, allow_hyphen_values = true)]
    pub omega: Option<String>,
    /// Ascending polynomial coefficients of f(Sz) (general model).
    #[arg(long = "f-coeffs", allow_hyphen_values = true)]
    pub f_coeffs: Option<String>,
    #[arg(long = "t-max")]
    pub t_max: Option<String>,
    #[arg(long)]
    pub dt: Option<String>,
    /// Output CSV path; stdout when absent.
    #[arg(long, value_name = "PATH")]
    pub out: Option<String>,
    #[arg(long)]
    pub seed: Option<String>,
    /// Worker threads for scan; 0 uses all cores.
    #[arg(long)]
    pub workers: Option<String>,
    /// Significant digits in CSV output.
    #[arg(long)]
    pub precision: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Model {
    OneAxis,
    OneAxisField,
    TwoAxis,
    General,
}

impl Model {
    fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "one-axis" => Ok(Model::OneAxis),
            "one-axis-field" => Ok(Model::OneAxisField),
            "two-axis" => Ok(Model::TwoAxis),
            "general" => Ok(Model::General),
            _ => Err(CliError::usage(format!(
                "unknown model '{s}' (expected one-axis, one-axis-field, two-axis or general)"
            ))),
        }
    }

    pub fn uses_mu(self) -> bool {
        matches!(self, Model::OneAxis | Model::OneAxisField | Model::General)
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::OneAxis => "one-axis",
            Model::OneAxisField => "one-axis-field",
            Model::TwoAxis => "two-axis",
            Model::General => "general",
        })
    }
}

/// Coupling constants of one model instance. Fields a model ignores are `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct Couplings {
    pub mu: Option<f64>,
    pub chi: Option<f64>,
    pub gamma: Option<f64>,
    pub omega: Option<f64>,
}

impl Couplings {
    pub fn spec(&self, model: Model, f_coeffs: &[f64]) -> HamiltonianSpec {
        let v = |x: Option<f64>| x.unwrap_or(0.0);
        match model {
            Model::OneAxis => HamiltonianSpec::one_axis(v(self.mu)),
            Model::OneAxisField => HamiltonianSpec::one_axis_field(v(self.mu), v(self.omega)),
            Model::TwoAxis => HamiltonianSpec::two_axis(v(self.gamma)),
            Model::General => HamiltonianSpec {
                mu: v(self.mu),
                chi: v(self.chi),
                gamma_sym: v(self.gamma),
                gamma_twist: 0.0,
                f_coeffs: f_coeffs.to_vec(),
            },
        }
    }
}

/// Merged textual settings keyed by flag name.
#[derive(Debug, Clone, Default)]
pub struct Settings {
    values: BTreeMap<String, String>,
}

impl Settings {
    pub fn resolve(args: &RunArgs) -> Result<Self, CliError> {
        let mut values: BTreeMap<String, String> = DEFAULTS
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();
        if let Some(path) = &args.config {
            values.extend(read_config_file(path)?);
        }
        let flags = [
            ("model", &args.model),
            ("n", &args.n),
            ("mu", &args.mu),
            ("chi", &args.chi),
            ("gamma", &args.gamma),
            ("omega", &args.omega),
            ("f-coeffs", &args.f_coeffs),
            ("t-max", &args.t_max),
            ("dt", &args.dt),
            ("out", &args.out),
            ("seed", &args.seed),
            ("workers", &args.workers),
            ("precision", &args.precision),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                values.insert(key.to_string(), v.clone());
            }
        }
        Ok(Self { values })
    }

    fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    fn required(&self, key: &str) -> Result<&str, CliError> {
        self.raw(key)
            .ok_or_else(|| CliError::usage(format!("missing --{key}")))
    }

    fn f64_list(&self, key: &str) -> Result<Option<Vec<f64>>, CliError> {
        self.raw(key)
            .map(|s| parse_f64_list(s).map_err(|e| prefix(key, e)))
            .transpose()
    }

    fn single<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        self.raw(key)
            .map(|s| {
                s.trim()
                    .parse()
                    .map_err(|_| CliError::usage(format!("--{key}: cannot parse '{s}'")))
            })
            .transpose()
    }

    fn only_one<T: Copy>(key: &str, list: Option<Vec<T>>) -> Result<Option<T>, CliError> {
        match list.as_deref() {
            None => Ok(None),
            Some([x]) => Ok(Some(*x)),
            Some(_) => Err(CliError::usage(format!(
                "--{key} takes a single value here; use scan for lists"
            ))),
        }
    }

    fn grid(&self) -> Result<(f64, f64), CliError> {
        let t_max: f64 = self.single("t-max")?.expect("default");
        let dt: f64 = self.single("dt")?.expect("default");
        if !(t_max.is_finite() && dt.is_finite() && dt > 0.0 && dt <= t_max) {
            return Err(CliError::usage(format!(
                "invalid time grid: need 0 < dt <= t-max (got dt={dt}, t-max={t_max})"
            )));
        }
        Ok((t_max, dt))
    }

    fn precision(&self) -> Result<usize, CliError> {
        let p: usize = self.single("precision")?.expect("default");
        if !(1..=40).contains(&p) {
            return Err(CliError::usage("--precision must be between 1 and 40"));
        }
        Ok(p)
    }

    fn models(&self) -> Result<Vec<Model>, CliError> {
        let mut models = self
            .required("model")?
            .split(',')
            .map(|s| Model::parse(s.trim()))
            .collect::<Result<Vec<_>, _>>()?;
        models.sort();
        models.dedup();
        Ok(models)
    }

    fn f_coeffs(&self) -> Result<Vec<f64>, CliError> {
        Ok(self.f64_list("f-coeffs")?.unwrap_or_default())
    }

    fn qubit_counts(&self) -> Result<Vec<usize>, CliError> {
        let ns = parse_usize_list(self.required("n")?).map_err(|e| prefix("n", e))?;
        if let Some(bad) = ns.iter().find(|&&n| n < 2) {
            return Err(CliError::usage(format!(
                "--n: pairwise quantities need at least 2 qubits (got {bad})"
            )));
        }
        Ok(ns)
    }

    fn out(&self) -> Option<PathBuf> {
        self.raw("out").map(PathBuf::from)
    }

    fn workers(&self) -> Result<usize, CliError> {
        Ok(self.single("workers")?.expect("default"))
    }
}

fn prefix(key: &str, e: CliError) -> CliError {
    match e {
        CliError::Usage(msg) => CliError::Usage(format!("--{key}: {msg}")),
        other => other,
    }
}

pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
    parse_config(&text)
}

/// `key = value` per line; `#` starts a comment; `_` and `-` are
/// interchangeable in keys.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::usage(format!(
                "config line {}: expected key = value",
                i + 1
            )));
        };
        let key = key.trim().replace('_', "-");
        if !KEYS.contains(&key.as_str()) {
            return Err(CliError::usage(format!(
                "config line {}: unknown key '{key}'",
                i + 1
            )));
        }
        out.insert(key, value.trim().to_string());
    }
    Ok(out)
}

/// Settings of a single trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub model: Model,
    pub n_qubits: usize,
    pub couplings: Couplings,
    pub f_coeffs: Vec<f64>,
    pub t_max: f64,
    pub dt: f64,
    pub output_path: Option<PathBuf>,
    pub precision: usize,
}

impl RunConfig {
    pub fn from_settings(s: &Settings) -> Result<Self, CliError> {
        let models = s.models()?;
        let [model] = models[..] else {
            return Err(CliError::usage(
                "--model takes a single value here; use scan for lists",
            ));
        };
        let ns = s.qubit_counts()?;
        let n_qubits = Settings::only_one("n", Some(ns))?.expect("nonempty");
        let couplings = Couplings {
            mu: Settings::only_one("mu", s.f64_list("mu")?)?,
            chi: Settings::only_one("chi", s.f64_list("chi")?)?,
            gamma: Settings::only_one("gamma", s.f64_list("gamma")?)?,
            omega: Settings::only_one("omega", s.f64_list("omega")?)?,
        };
        let couplings = relevant(model, &couplings)?;
        let (t_max, dt) = s.grid()?;
        Ok(Self {
            model,
            n_qubits,
            couplings,
            f_coeffs: s.f_coeffs()?,
            t_max,
            dt,
            output_path: s.out(),
            precision: s.precision()?,
        })
    }

    pub fn spec(&self) -> HamiltonianSpec {
        self.couplings.spec(self.model, &self.f_coeffs)
    }
}

/// Keeps only the couplings `model` reads; errors if a required one is missing.
fn relevant(model: Model, c: &Couplings) -> Result<Couplings, CliError> {
    let need = |name: &str, v: Option<f64>| {
        v.map(Some)
            .ok_or_else(|| CliError::usage(format!("model {model} needs --{name}")))
    };
    Ok(match model {
        Model::OneAxis => Couplings {
            mu: need("mu", c.mu)?,
            chi: None,
            gamma: None,
            omega: None,
        },
        Model::OneAxisField => Couplings {
            mu: need("mu", c.mu)?,
            chi: None,
            gamma: None,
            omega: need("omega", c.omega)?,
        },
        Model::TwoAxis => Couplings {
            mu: None,
            chi: None,
            gamma: need("gamma", c.gamma)?,
            omega: None,
        },
        Model::General => Couplings {
            mu: need("mu", c.mu)?,
            chi: need("chi", c.chi)?,
            gamma: need("gamma", c.gamma)?,
            omega: None,
        },
    })
}

/// One grid point of a scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanPoint {
    pub model: Model,
    pub n_qubits: usize,
    pub couplings: Couplings,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanConfig {
    pub points: Vec<ScanPoint>,
    pub f_coeffs: Vec<f64>,
    pub t_max: f64,
    pub dt: f64,
    pub output_path: Option<PathBuf>,
    pub precision: usize,
    pub workers: usize,
}

impl ScanConfig {
    pub fn from_settings(s: &Settings) -> Result<Self, CliError> {
        let models = s.models()?;
        let ns = s.qubit_counts()?;
        let list = |key: &str| -> Result<Vec<Option<f64>>, CliError> {
            Ok(match s.f64_list(key)? {
                Some(v) => v.into_iter().map(Some).collect(),
                None => vec![None],
            })
        };
        let (mus, chis, gammas, omegas) =
            (list("mu")?, list("chi")?, list("gamma")?, list("omega")?);

        let mut points = Vec::new();
        for &model in &models {
            let mut couplings = Vec::new();
            for &mu in &mus {
                for &chi in &chis {
                    for &gamma in &gammas {
                        for &omega in &omegas {
                            let c = relevant(
                                model,
                                &Couplings {
                                    mu,
                                    chi,
                                    gamma,
                                    omega,
                                },
                            )?;
                            if !couplings.contains(&c) {
                                couplings.push(c);
                            }
                        }
                    }
                }
            }
            for &n_qubits in &ns {
                for c in &couplings {
                    points.push(ScanPoint {
                        model,
                        n_qubits,
                        couplings: c.clone(),
                    });
                }
            }
        }
        let (t_max, dt) = s.grid()?;
        Ok(Self {
            points,
            f_coeffs: s.f_coeffs()?,
            t_max,
            dt,
            output_path: s.out(),
            precision: s.precision()?,
            workers: s.workers()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args() -> RunArgs {
        RunArgs::default()
    }

    #[test]
    fn defaults_and_overrides() {
        let mut a = args();
        a.n = Some("6".into());
        let cfg = RunConfig::from_settings(&Settings::resolve(&a).unwrap()).unwrap();
        assert_eq!(cfg.model, Model::OneAxis);
        assert_eq!(cfg.couplings.mu, Some(1.0));
        assert_eq!((cfg.t_max, cfg.dt, cfg.precision), (10.0, 0.01, 17));

        let dir = std::env::temp_dir().join(format!("spinsq-config-{}", std::process::id()));
        std::fs::write(
            &dir,
            "model = two-axis\n# comment\ngamma = 0.5\nt_max = 3 # trailing\n",
        )
        .unwrap();
        a.config = Some(dir.clone());
        a.gamma = Some("2".into());
        let cfg = RunConfig::from_settings(&Settings::resolve(&a).unwrap()).unwrap();
        std::fs::remove_file(dir).unwrap();
        assert_eq!(cfg.model, Model::TwoAxis);
        assert_eq!(cfg.couplings.gamma, Some(2.0));
        assert_eq!(cfg.t_max, 3.0);
        assert_eq!(cfg.spec(), HamiltonianSpec::two_axis(2.0));
    }

    #[test]
    fn rejections() {
        let resolve = |f: &dyn Fn(&mut RunArgs)| {
            let mut a = args();
            a.n = Some("4".into());
            f(&mut a);
            RunConfig::from_settings(&Settings::resolve(&a).unwrap())
        };
        assert!(resolve(&|a| a.dt = Some("0".into())).is_err());
        assert!(resolve(&|a| a.model = Some("one-axis-field".into())).is_err());
        assert!(resolve(&|a| a.model = Some("twisted".into())).is_err());
        assert!(resolve(&|a| a.n = Some("2-4".into())).is_err());
        assert!(resolve(&|a| a.n = Some("1".into())).is_err());
        assert!(resolve(&|a| a.precision = Some("0".into())).is_err());
        assert!(parse_config("speed = 3").is_err());
        assert!(parse_config("mu 3").is_err());
    }

    #[test]
    fn scan_grid() {
        let mut a = args();
        a.model = Some("one-axis-field,one-axis".into());
        a.n = Some("2-4".into());
        a.omega = Some("0.1,0.5".into());
        let cfg = ScanConfig::from_settings(&Settings::resolve(&a).unwrap()).unwrap();
        // one-axis ignores omega, so it contributes one point per N.
        assert_eq!(cfg.points.len(), 3 + 3 * 2);
        assert_eq!(cfg.points[0].model, Model::OneAxis);
        assert_eq!(cfg.points[0].couplings.omega, None);
    }
}
