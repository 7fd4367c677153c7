//! Deterministic file output: CSV data, a config-echo sidecar, and optional
//! gnuplot scripts. Floats use Rust's shortest round-trip formatting and
//! files are written to a temporary name then renamed, so outputs are either
//! absent or complete.

use crate::error::CliError;
use serde::Serialize;
use std::io::Write;
use std::path::{Path, PathBuf};

pub fn atomic_write(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path).map_err(|e| CliError::Io(e.error))?;
    Ok(())
}

/// Sibling path with the extension replaced, e.g. `run.csv` -> `run.peaks.csv`.
pub fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().unwrap_or_default().to_string_lossy();
    path.with_file_name(format!("{stem}.{suffix}"))
}

#[derive(Serialize)]
struct Sidecar<'a, C: Serialize> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    config: &'a C,
}

/// Config echo next to the data file; data files themselves carry no
/// metadata so identical configs produce byte-identical output.
pub fn write_sidecar<C: Serialize>(out: &Path, command: &str, config: &C) -> Result<(), CliError> {
    let sidecar = Sidecar {
        tool: "qwalk",
        version: env!("CARGO_PKG_VERSION"),
        command,
        config,
    };
    let json = serde_json::to_string_pretty(&sidecar).expect("config serializes");
    atomic_write(&sibling(out, "meta.json"), &format!("{json}\n"))
}

pub fn write_gnuplot(out: &Path, script_body: &str) -> Result<(), CliError> {
    let script = format!("set datafile separator \",\"\nset key autotitle columnhead\n{script_body}");
    atomic_write(&out.with_extension("gp"), &script)
}

pub fn run_gnuplot_body(csv: &Path) -> String {
    let name = csv.file_name().unwrap_or_default().to_string_lossy();
    format!(
        "set xlabel \"t\"\nset ylabel \"p_marked\"\nplot \"{name}\" using 1:2 with lines\npause -1\n"
    )
}

pub fn sweep_gnuplot_body(csv: &Path) -> String {
    let name = csv.file_name().unwrap_or_default().to_string_lossy();
    format!(
        "set xlabel \"n\"\nset ylabel \"peak probability\"\nplot \"{name}\" using 1:3 with points\npause -1\nset xlabel \"sqrt(n)\"\nset ylabel \"peak time\"\nplot \"{name}\" using (sqrt($1)):4 with points\npause -1\n"
    )
}

pub fn scan_gnuplot_body(csv: &Path, series: usize) -> String {
    let name = csv.file_name().unwrap_or_default().to_string_lossy();
    let plots: Vec<String> = (0..series)
        .map(|i| format!("\"{name}\" using 1:{} with lines", i + 2))
        .collect();
    format!("set xlabel \"t\"\nset ylabel \"p_marked\"\nplot {}\npause -1\n", plots.join(", "))
}

/// Shortest round-trip decimal for a double.
pub fn fmt_f64(x: f64) -> String {
    format!("{x}")
}
