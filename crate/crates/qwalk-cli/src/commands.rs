use crate::config::{ExperimentConfig, FitConfig, ScanConfig, ScanParameter, SweepConfig};
use crate::error::CliError;
use crate::output::{
    atomic_write, fmt_f64, run_gnuplot_body, scan_gnuplot_body, sibling, sweep_gnuplot_body,
    write_gnuplot, write_sidecar,
};
use qwalk::{
    first_significant_peak, fit_inverse_log, fit_piecewise_sqrt, fit_sqrt, run_search,
    run_search_on, validate_graph, FitModel, GraphSpec, ScalingFit, ScalingPoint, SearchConfig,
    SearchRun,
};
use rayon::prelude::*;
use std::path::Path;
use std::sync::Arc;

fn read_to_string(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::config(path, e))
}

fn parse_experiment(path: &Path) -> Result<ExperimentConfig, CliError> {
    serde_json::from_str(&read_to_string(path)?).map_err(|e| CliError::config(path, e))
}

fn expect_kind<T>(
    config: ExperimentConfig,
    want: &str,
    extract: impl FnOnce(ExperimentConfig) -> Option<T>,
) -> Result<T, CliError> {
    let kind = config.kind();
    extract(config).ok_or_else(|| {
        CliError::Config(format!("expected a `{want}` experiment, config holds `{kind}`"))
    })
}

fn install_pool<T: Send>(
    parallelism: usize,
    work: impl FnOnce() -> Result<T, CliError> + Send,
) -> Result<T, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism)
        .build()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    pool.install(work)
}

pub fn cmd_run(config_path: &Path, out: &Path, gnuplot: bool) -> Result<(), CliError> {
    let config = expect_kind(parse_experiment(config_path)?, "run", |c| match c {
        ExperimentConfig::Run(r) => Some(r),
        _ => None,
    })?;
    let run = run_search(&config)?;

    let mut csv = String::from("t,p_marked\n");
    for (t, p) in run.p_marked.iter().enumerate() {
        csv.push_str(&format!("{t},{}\n", fmt_f64(*p)));
    }
    atomic_write(out, &csv)?;

    let mut peaks = String::from("time,probability,significant\n");
    for p in &run.peaks {
        peaks.push_str(&format!("{},{},{}\n", p.time, fmt_f64(p.probability), p.significant));
    }
    atomic_write(&sibling(out, "peaks.csv"), &peaks)?;
    write_sidecar(out, "run", &config)?;
    if gnuplot {
        write_gnuplot(out, &run_gnuplot_body(out))?;
    }
    Ok(())
}

fn sweep_row(
    n: usize,
    graph: &GraphSpec,
    built: Arc<qwalk::PortedGraph>,
    sweep: &SweepConfig,
    marked: usize,
) -> Result<ScalingPoint, CliError> {
    let steps = sweep.steps.unwrap_or_else(|| qwalk::default_step_budget(n));
    let config = SearchConfig {
        graph: *graph,
        marked_vertex: marked,
        default_coin: sweep.default_coin,
        marked_coin: sweep.marked_coin,
        boundary_coin: None,
        initial_state: qwalk::InitialState::UniformAllPorts,
        steps,
    };
    let edge_count = built.edge_count();
    let run = run_search_on(built, &config)?;
    let baseline = 1.0 / n as f64;
    // Runs without a significant first peak fall back to the global maximum
    // over t >= 1 so every instance still yields a row.
    let (peak_time, peak_probability) = match first_significant_peak(&run, baseline) {
        Some(p) => (p.time, p.probability),
        None => run
            .p_marked
            .iter()
            .enumerate()
            .skip(1)
            .max_by(|a, b| a.1.partial_cmp(b.1).expect("finite probabilities"))
            .map(|(t, p)| (t, *p))
            .unwrap_or((0, run.p_marked[0])),
    };
    Ok(ScalingPoint { n, edge_count, peak_probability, peak_time })
}

pub fn cmd_sweep(
    config_path: &Path,
    out: &Path,
    parallelism: usize,
    gnuplot: bool,
) -> Result<(), CliError> {
    let sweep = expect_kind(parse_experiment(config_path)?, "sweep", |c| match c {
        ExperimentConfig::Sweep(s) => Some(s),
        _ => None,
    })?;
    let mut instances = sweep.instances().map_err(CliError::Config)?;
    if instances.is_empty() {
        return Err(CliError::Config("sweep expands to no instances".into()));
    }
    instances.sort_by_key(|i| i.n);

    let rows: Result<Vec<ScalingPoint>, CliError> = install_pool(parallelism, || {
        instances
            .par_iter()
            .map(|inst| {
                let built = Arc::new(inst.graph.build().map_err(|e| {
                    CliError::Invariant(format!("instance {}: {e}", inst.label))
                })?);
                let marked = marked_vertex(&built, &sweep, &inst.label)?;
                sweep_row(inst.n, &inst.graph, built, &sweep, marked)
                    .map_err(|e| CliError::Invariant(format!("instance {}: {e}", inst.label)))
            })
            .collect()
    });
    let rows = rows?;

    let mut csv = String::from("n,edges,peak_prob,peak_time\n");
    for r in &rows {
        csv.push_str(&format!(
            "{},{},{},{}\n",
            r.n,
            r.edge_count,
            fmt_f64(r.peak_probability),
            r.peak_time
        ));
    }
    atomic_write(out, &csv)?;
    write_sidecar(out, "sweep", &sweep)?;
    if gnuplot {
        write_gnuplot(out, &sweep_gnuplot_body(out))?;
    }
    Ok(())
}

fn marked_vertex(
    graph: &qwalk::PortedGraph,
    sweep: &SweepConfig,
    label: &str,
) -> Result<usize, CliError> {
    use crate::config::MarkedRule;
    match sweep.marked_rule {
        MarkedRule::Half => Ok(graph.vertex_count() / 2),
        MarkedRule::Center => Ok(0),
        MarkedRule::Fixed(v) => Ok(v),
        MarkedRule::Shell(s) => graph.shell_start(s).ok_or_else(|| {
            CliError::Invariant(format!("instance {label}: no shell {s} in this graph"))
        }),
    }
}

pub fn cmd_scan(
    config_path: &Path,
    out: &Path,
    parallelism: usize,
    gnuplot: bool,
) -> Result<(), CliError> {
    let scan: ScanConfig = expect_kind(parse_experiment(config_path)?, "scan", |c| match c {
        ExperimentConfig::Scan(s) => Some(s),
        _ => None,
    })?;
    if scan.values.is_empty() {
        return Err(CliError::Config("scan has an empty value list".into()));
    }

    let graph = Arc::new(scan.base.graph.build()?);
    let runs: Result<Vec<SearchRun>, CliError> = install_pool(parallelism, || {
        scan.values
            .par_iter()
            .map(|&value| {
                let mut config = scan.base.clone();
                match scan.parameter {
                    ScanParameter::Delta => config.marked_coin.delta = Some(value),
                    ScanParameter::Phi => config.marked_coin.phi = Some(value),
                }
                run_search_on(Arc::clone(&graph), &config).map_err(CliError::from)
            })
            .collect()
    });
    let runs = runs?;

    let header: Vec<String> = scan.values.iter().map(|v| format!("p[{}]", fmt_f64(*v))).collect();
    let mut csv = format!("t,{}\n", header.join(","));
    for t in 0..=scan.base.steps {
        let cells: Vec<String> = runs.iter().map(|r| fmt_f64(r.p_marked[t])).collect();
        csv.push_str(&format!("{t},{}\n", cells.join(",")));
    }
    atomic_write(out, &csv)?;
    write_sidecar(out, "scan", &scan)?;
    if gnuplot {
        write_gnuplot(out, &scan_gnuplot_body(out, runs.len()))?;
    }
    Ok(())
}

fn parse_sweep_csv(path: &Path) -> Result<Vec<ScalingPoint>, CliError> {
    let text = read_to_string(path)?;
    let mut lines = text.lines();
    match lines.next() {
        Some("n,edges,peak_prob,peak_time") => {}
        other => {
            return Err(CliError::config(
                path,
                format!("expected header `n,edges,peak_prob,peak_time`, got {other:?}"),
            ))
        }
    }
    let mut points = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(CliError::config(path, format!("row {}: expected 4 fields", i + 2)));
        }
        let parse_err = |what: &str| CliError::config(path, format!("row {}: bad {what}", i + 2));
        points.push(ScalingPoint {
            n: fields[0].parse().map_err(|_| parse_err("n"))?,
            edge_count: fields[1].parse().map_err(|_| parse_err("edges"))?,
            peak_probability: fields[2].parse().map_err(|_| parse_err("peak_prob"))?,
            peak_time: fields[3].parse().map_err(|_| parse_err("peak_time"))?,
        });
    }
    Ok(points)
}

fn fit_summary(fit: &ScalingFit) -> String {
    let model = match fit.model {
        FitModel::InverseLog2 => "inverse_log2",
        FitModel::SqrtN => "sqrt_n",
        FitModel::PiecewiseSqrtN => "piecewise_sqrt_n",
    };
    let mut parts = vec![model.to_string()];
    parts.extend(fit.prefactors.iter().map(|c| fmt_f64(*c)));
    if let Some(bp) = fit.breakpoint {
        parts.push(fmt_f64(bp));
    }
    parts.push(fmt_f64(fit.rms_residual));
    parts.join(" ")
}

pub fn cmd_fit(config_path: &Path, out: &Path) -> Result<(), CliError> {
    let fit_config: FitConfig = expect_kind(parse_experiment(config_path)?, "fit", |c| match c {
        ExperimentConfig::Fit(f) => Some(f),
        _ => None,
    })?;
    let points = parse_sweep_csv(&fit_config.input)?;
    let fit = match fit_config.model {
        FitModel::InverseLog2 => fit_inverse_log(&points)?,
        FitModel::SqrtN => fit_sqrt(&points)?,
        FitModel::PiecewiseSqrtN => fit_piecewise_sqrt(&points)?,
    };
    let json = serde_json::to_string_pretty(&fit).expect("fit serializes");
    atomic_write(out, &format!("{json}\n"))?;
    write_sidecar(out, "fit", &fit_config)?;
    println!("{}", fit_summary(&fit));
    Ok(())
}

pub fn cmd_validate(config_path: &Path) -> Result<(), CliError> {
    let spec: GraphSpec = serde_json::from_str(&read_to_string(config_path)?)
        .map_err(|e| CliError::config(config_path, e))?;
    let graph = spec.build()?;
    let violations = validate_graph(&graph);
    for v in &violations {
        println!("{v}");
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(CliError::Invariant(format!("{} violation(s)", violations.len())))
    }
}
