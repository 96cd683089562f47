//! Command-line front end: figure presets, TOML manifests, CSV output and
//! oracle verification.

mod manifest;
mod output;
mod scenario;

use std::ffi::OsString;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use clap::Parser;
use thiserror::Error;

pub use manifest::{parse_manifest, presets_for, Deform, Overrides, RunManifest, Tolerances, DEFAULT_ORACLE_TOL, DEFAULT_OUT_DIR};
pub use output::{csv_string, metadata_json, plot_script};
pub use scenario::{preset, preset_names, Scenario, DEFAULT_ALPHA2, DEFAULT_STEPS, DEFAULT_T_MAX};

use crate::model::ModelConfig;
use crate::observables::{evolve_series, uniform_grid};
use crate::oracle::{compare, oracle_series, DEFAULT_FIELD_OMEGA};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io { .. } => EXIT_IO,
        }
    }
}

/// Diamond four-level Jaynes-Cummings time series.
#[derive(Debug, Parser)]
#[command(name = "diamond-jcm", version)]
pub struct Args {
    /// Figure panel preset such as fig2b or fig3d-nonlinear; `all` runs every panel.
    #[arg(long, conflicts_with = "config")]
    pub preset: Option<String>,
    /// TOML run manifest.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Mean photon number |alpha|^2 of the initial coherent field.
    #[arg(long, conflicts_with = "config")]
    pub alpha2: Option<f64>,
    #[arg(long, conflicts_with = "config")]
    pub k: Option<u32>,
    #[arg(long, conflicts_with = "config", allow_negative_numbers = true)]
    pub chi: Option<f64>,
    #[arg(long, conflicts_with = "config", allow_negative_numbers = true)]
    pub delta1: Option<f64>,
    #[arg(long, conflicts_with = "config", allow_negative_numbers = true)]
    pub delta3: Option<f64>,
    #[arg(long, value_enum, conflicts_with = "config")]
    pub deform: Option<Deform>,
    /// Final scaled time lambda*t.
    #[arg(long, conflicts_with = "config")]
    pub tmax: Option<f64>,
    /// Number of grid points including both ends.
    #[arg(long, conflicts_with = "config")]
    pub steps: Option<usize>,
    /// Compare against the brute-force oracle and write a report.
    #[arg(long)]
    pub verify: bool,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print preset names and exit.
    #[arg(long)]
    pub list_presets: bool,
}

impl Args {
    fn overrides(&self) -> Overrides {
        Overrides {
            lambda: None,
            alpha2: self.alpha2,
            k: self.k,
            chi: self.chi,
            delta1: self.delta1,
            delta3: self.delta3,
            deform: self.deform,
            tmax: self.tmax,
            steps: self.steps,
            verify: self.verify.then_some(true),
        }
    }
}

/// Builds the manifest from flags, reading `--config` when given.
pub fn manifest_from_args(args: &Args) -> Result<RunManifest, CliError> {
    let mut manifest = if let Some(path) = &args.config {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        let mut m = parse_manifest(&text)?;
        if args.verify {
            m.scenarios.iter_mut().for_each(|s| s.verify = true);
        }
        m
    } else {
        let mut scenarios = match &args.preset {
            Some(name) => presets_for(name)?,
            None => vec![Scenario::new("custom", ModelConfig::default())],
        };
        let o = args.overrides();
        for s in &mut scenarios {
            o.apply(s)?;
        }
        RunManifest { scenarios, out_dir: PathBuf::from(DEFAULT_OUT_DIR), tolerances: Tolerances::default() }
    };
    if let Some(out) = &args.out {
        manifest.out_dir = out.clone();
    }
    manifest.validate()?;
    Ok(manifest)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioOutcome {
    pub name: String,
    /// `None` when the series could not be produced.
    pub nmax: Option<u64>,
    pub failures: Vec<String>,
    /// Largest oracle deviation when verification ran.
    pub max_deviation: Option<f64>,
}

impl ScenarioOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    pub outcomes: Vec<ScenarioOutcome>,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        if self.outcomes.iter().all(ScenarioOutcome::passed) {
            EXIT_OK
        } else {
            EXIT_FAILURE
        }
    }
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn run_scenario(s: &Scenario, m: &RunManifest) -> Result<ScenarioOutcome, CliError> {
    let dir = &m.out_dir;
    let grid = uniform_grid(s.t_max, s.steps);
    let mut outcome = ScenarioOutcome { name: s.name.clone(), nmax: None, failures: Vec::new(), max_deviation: None };
    let series = match evolve_series(&s.config, &grid) {
        Ok(series) => series,
        Err(e) => {
            outcome.failures.push(e.to_string());
            let mut report = format!("{}: closed form failed\n", s.name);
            if let crate::observables::ObservableError::Series(points) = &e {
                for p in points {
                    report.push_str(&format!("  {p}\n"));
                }
            } else {
                report.push_str(&format!("  {e}\n"));
            }
            write(&dir.join(format!("{}.failures.txt", s.name)), &report)?;
            return Ok(outcome);
        }
    };
    outcome.nmax = Some(series.nmax);
    let csv_path = dir.join(format!("{}.csv", s.name));
    write(&csv_path, &csv_string(&series))?;
    write(&dir.join(format!("{}.json", s.name)), &metadata_json(s, series.nmax, &m.tolerances))?;
    write(&dir.join(format!("{}.py", s.name)), &plot_script(s, &csv_path))?;
    if s.verify {
        let report = oracle_series(&s.config, &grid, DEFAULT_FIELD_OMEGA, series.nmax as usize)
            .and_then(|oracle| compare(&series, &oracle, m.tolerances.oracle));
        let text = match report {
            Ok(r) => {
                outcome.max_deviation = Some(r.max_deviation());
                if !r.passed() {
                    outcome.failures.push(format!("oracle deviation {:.3e} exceeds {:.3e}", r.max_deviation(), r.tolerance));
                }
                format!("{}: closed form vs eigendecomposition oracle, nmax {}\n{r}", s.name, series.nmax)
            }
            Err(e) => {
                outcome.failures.push(format!("oracle failed: {e}"));
                format!("{}: oracle failed: {e}\n", s.name)
            }
        };
        write(&dir.join(format!("{}.verify.txt", s.name)), &text)?;
    }
    Ok(outcome)
}

/// Runs every scenario in manifest order, writing `<name>.csv`, `<name>.json`,
/// `<name>.py` and, with verification, `<name>.verify.txt`.
pub fn run(manifest: &RunManifest) -> Result<RunReport, CliError> {
    manifest.validate()?;
    fs::create_dir_all(&manifest.out_dir)
        .map_err(|source| CliError::Io { path: manifest.out_dir.clone(), source })?;
    let outcomes = manifest
        .scenarios
        .iter()
        .map(|s| run_scenario(s, manifest))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RunReport { outcomes })
}

fn summary_line(o: &ScenarioOutcome) -> String {
    let mut line = match o.nmax {
        Some(n) => format!("{}: nmax {n}", o.name),
        None => format!("{}: no output", o.name),
    };
    if let Some(d) = o.max_deviation {
        line.push_str(&format!(", oracle max deviation {d:.3e}"));
    }
    if o.passed() {
        line.push_str(", ok");
    } else {
        line.push_str(&format!(", FAILED: {}", o.failures.join("; ")));
    }
    line
}

pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if args.list_presets {
        for name in preset_names() {
            println!("{name}");
        }
        return EXIT_OK;
    }
    let result = manifest_from_args(&args).and_then(|m| run(&m));
    match result {
        Ok(report) => {
            for o in &report.outcomes {
                println!("{}", summary_line(o));
            }
            report.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<RunManifest, CliError> {
        let mut full = vec!["diamond-jcm"];
        full.extend_from_slice(args);
        let a = Args::try_parse_from(full).map_err(|e| CliError::Usage(e.to_string()))?;
        manifest_from_args(&a)
    }

    #[test]
    fn flags_override_preset() {
        let m = parse(&["--preset", "fig2a", "--chi", "0.1", "--tmax", "3", "--steps", "7", "--out", "x"]).unwrap();
        let s = &m.scenarios[0];
        assert_eq!((s.config.chi, s.t_max, s.steps), (0.1, 3.0, 7));
        assert_eq!(m.out_dir, PathBuf::from("x"));
    }

    #[test]
    fn flags_alone_build_custom_scenario() {
        let m = parse(&["--alpha2", "4", "--k", "2", "--deform", "harmonious", "--delta1", "-2"]).unwrap();
        let s = &m.scenarios[0];
        assert_eq!(s.name, "custom");
        assert_eq!((s.config.k, s.config.delta1), (2, -2.0));
        assert!((s.config.mean_photons() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn usage_errors() {
        for bad in [
            &["--preset"][..],
            &["--preset", "fig9a"],
            &["--preset", "fig2a", "--config", "x.toml"],
            &["--config", "x.toml", "--chi", "0.1"],
            &["--steps", "1"],
            &["--k", "0"],
            &["--deform", "linear"],
            &["--tmax", "-1"],
            &["--bogus"],
            &["--config", "/nonexistent/run.toml"],
        ] {
            let e = parse(bad).unwrap_err();
            assert_eq!(e.exit_code(), EXIT_USAGE, "{bad:?}: {e}");
        }
    }

    #[test]
    fn exit_codes() {
        assert_eq!(main_with_args(["diamond-jcm", "--preset", "nope"]), EXIT_USAGE);
        assert_eq!(main_with_args(["diamond-jcm", "--help"]), EXIT_OK);
        assert_eq!(main_with_args(["diamond-jcm", "--list-presets"]), EXIT_OK);
        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("f");
        fs::write(&file, "").unwrap();
        let out = file.join("sub");
        let code = main_with_args(["diamond-jcm", "--steps", "3", "--tmax", "1", "--out", out.to_str().unwrap()]);
        assert_eq!(code, EXIT_IO);
    }

    #[test]
    fn writes_artifacts() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().to_str().unwrap();
        let code = main_with_args(["diamond-jcm", "--preset", "fig3d", "--tmax", "2", "--steps", "5", "--verify", "--out", out]);
        assert_eq!(code, EXIT_OK);
        for ext in ["csv", "json", "py", "verify.txt"] {
            assert!(dir.path().join(format!("fig3d.{ext}")).exists(), "{ext}");
        }
        let csv = fs::read_to_string(dir.path().join("fig3d.csv")).unwrap();
        assert_eq!(csv.lines().count(), 6);
        let report = fs::read_to_string(dir.path().join("fig3d.verify.txt")).unwrap();
        assert!(report.contains("PASS"), "{report}");
    }

    #[test]
    fn failing_scenario_exits_one() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().to_str().unwrap();
        // the vacuum field leaves the Mandel parameter undefined at t = 0
        let code = main_with_args(["diamond-jcm", "--alpha2", "0", "--tmax", "1", "--steps", "3", "--out", out]);
        assert_eq!(code, EXIT_FAILURE);
        assert!(dir.path().join("custom.failures.txt").exists());
    }

    #[test]
    fn verification_failure_exits_one() {
        let dir = tempfile::tempdir().unwrap();
        let m = RunManifest {
            scenarios: vec![Scenario { verify: true, t_max: 2.0, steps: 5, ..preset("fig2d").unwrap() }],
            out_dir: dir.path().to_path_buf(),
            tolerances: Tolerances { oracle: 1e-300 },
        };
        let report = run(&m).unwrap();
        assert_eq!(report.exit_code(), EXIT_FAILURE);
    }
}
