use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use super::manifest::Tolerances;
use super::scenario::Scenario;
use crate::observables::{ObservableRecord, TimeSeries, INVARIANT_TOL};

/// CSV with the fixed header and 17 significant digits per value.
pub fn csv_string(series: &TimeSeries) -> String {
    let mut out = ObservableRecord::COLUMNS.join(",");
    out.push('\n');
    for r in &series.records {
        let row: Vec<String> = r.values().iter().map(|v| format!("{v:.16e}")).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct Parameters<'a> {
    lambda: f64,
    chi: f64,
    delta1: f64,
    delta3: f64,
    k: u32,
    alpha_re: f64,
    alpha_im: f64,
    alpha2: f64,
    nonlinearity: &'a str,
}

#[derive(Serialize)]
struct ToleranceMeta {
    invariant: f64,
    oracle: f64,
}

#[derive(Serialize)]
struct Metadata<'a> {
    name: &'a str,
    parameters: Parameters<'a>,
    t_max: f64,
    steps: usize,
    nmax: u64,
    verify: bool,
    tolerances: ToleranceMeta,
    columns: [&'static str; 8],
    version: &'static str,
}

pub fn metadata_json(s: &Scenario, nmax: u64, tol: &Tolerances) -> String {
    let c = &s.config;
    let meta = Metadata {
        name: &s.name,
        parameters: Parameters {
            lambda: c.lambda,
            chi: c.chi,
            delta1: c.delta1,
            delta3: c.delta3,
            k: c.k,
            alpha_re: c.alpha.re,
            alpha_im: c.alpha.im,
            alpha2: c.mean_photons(),
            nonlinearity: c.nonlinearity.name(),
        },
        t_max: s.t_max,
        steps: s.steps,
        nmax,
        verify: s.verify,
        tolerances: ToleranceMeta { invariant: INVARIANT_TOL, oracle: tol.oracle },
        columns: ObservableRecord::COLUMNS,
        version: env!("CARGO_PKG_VERSION"),
    };
    let mut json = serde_json::to_string_pretty(&meta).expect("metadata serializes");
    json.push('\n');
    json
}

/// Matplotlib script plotting each observable against `λt` from the CSV next to it.
pub fn plot_script(s: &Scenario, csv: &Path) -> String {
    let csv_name = csv.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let c = &s.config;
    let mut py = String::new();
    let _ = writeln!(py, "import os");
    let _ = writeln!(py, "import numpy as np");
    let _ = writeln!(py, "import matplotlib");
    let _ = writeln!(py, "matplotlib.use(\"Agg\")");
    let _ = writeln!(py, "import matplotlib.pyplot as plt");
    py.push('\n');
    let _ = writeln!(py, "here = os.path.dirname(os.path.abspath(__file__))");
    let _ = writeln!(py, "d = np.genfromtxt(os.path.join(here, {csv_name:?}), delimiter=\",\", names=True)");
    let _ = writeln!(py, "fig, ax = plt.subplots(2, 2, figsize=(10, 7), sharex=True)");
    let _ = writeln!(py, "ax[0, 0].plot(d[\"t\"], d[\"entropy\"])");
    let _ = writeln!(py, "ax[0, 0].set_ylabel(\"S\")");
    let _ = writeln!(py, "ax[0, 1].plot(d[\"t\"], d[\"mandel_q\"])");
    let _ = writeln!(py, "ax[0, 1].axhline(0.0, color=\"gray\", lw=0.5)");
    let _ = writeln!(py, "ax[0, 1].set_ylabel(\"Q\")");
    let _ = writeln!(py, "ax[1, 0].plot(d[\"t\"], d[\"mean_n\"])");
    let _ = writeln!(py, "ax[1, 0].set_ylabel(\"<n>\")");
    let _ = writeln!(py, "ax[1, 1].plot(d[\"t\"], d[\"sx\"], label=\"S_x\")");
    let _ = writeln!(py, "ax[1, 1].plot(d[\"t\"], d[\"sy\"], label=\"S_y\")");
    let _ = writeln!(py, "ax[1, 1].axhline(0.0, color=\"gray\", lw=0.5)");
    let _ = writeln!(py, "ax[1, 1].legend()");
    let _ = writeln!(py, "for a in ax[1]:");
    let _ = writeln!(py, "    a.set_xlabel(\"lambda t\")");
    let _ = writeln!(
        py,
        "fig.suptitle(\"{}: k={}, chi={}, delta1={}, delta3={}, |alpha|^2={}, f={}\")",
        s.name,
        c.k,
        c.chi,
        c.delta1,
        c.delta3,
        c.mean_photons(),
        c.nonlinearity.name()
    );
    let _ = writeln!(py, "fig.tight_layout()");
    let _ = writeln!(py, "fig.savefig(os.path.join(here, {:?}))", format!("{}.png", s.name));
    py
}
