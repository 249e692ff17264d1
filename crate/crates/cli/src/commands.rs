//! The four sweep subcommands. Grid points are evaluated in parallel and
//! collected in index order, so output never depends on scheduling.

use std::path::Path;

use nonmarkov::entanglement::{concurrence, ConcurrenceTrace, EventKind};
use nonmarkov::kernel::{MemoryFunction, MemoryMethod, ReservoirSpec};
use nonmarkov::state::DensityMatrix;
use nonmarkov::two_qubit::evolve_closed_form;
use rayon::prelude::*;

use crate::config::{Command, ScenarioConfig};
use crate::error::{CliError, CliResult};
use crate::format::{fmt_g, write_text, Table};

fn concurrence_at(rho0: &DensityMatrix, p: f64) -> CliResult<f64> {
    Ok(concurrence(&evolve_closed_form(rho0, p)?)?)
}

fn curve(rho0: &DensityMatrix, ps: &[f64]) -> CliResult<Vec<f64>> {
    ps.par_iter().map(|&p| concurrence_at(rho0, p)).collect()
}

fn single_alpha2(cfg: &ScenarioConfig) -> f64 {
    cfg.alpha2.values()[0]
}

/// `gamma0_t, p_closed, p_volterra_ode, p_volterra_quad, p_markov`.
pub fn pfunc(cfg: &ScenarioConfig) -> CliResult<Table> {
    let times = cfg.times()?;
    let spec = ReservoirSpec::from_ratio(cfg.lambdas[0])?;
    let sample = |method| MemoryFunction::new(spec, method).sample_uniform(cfg.t_max, cfg.samples);
    let closed = sample(MemoryMethod::ClosedForm)?;
    let ode = sample(MemoryMethod::VolterraOde { step: cfg.step })?;
    let quad = sample(MemoryMethod::VolterraQuadrature { step: cfg.step })?;
    let markov = sample(MemoryMethod::MarkovLimit)?;
    let mut table = Table::new(
        cfg.record(),
        vec![
            "gamma0_t",
            "p_closed",
            "p_volterra_ode",
            "p_volterra_quad",
            "p_markov",
        ],
    );
    table.blocks.push(
        (0..times.len())
            .map(|k| vec![times[k], closed[k], ode[k], quad[k], markov[k]])
            .collect(),
    );
    Ok(table)
}

/// Concurrence curve with detected events, and the `P` samples behind it.
pub fn concurrence_trace(cfg: &ScenarioConfig) -> CliResult<(ConcurrenceTrace, Vec<f64>)> {
    let times = cfg.times()?;
    let memory = cfg.memory(cfg.lambdas[0])?;
    let ps = memory.sample_uniform(cfg.t_max, cfg.samples)?;
    let rho0 = cfg.state.density(single_alpha2(cfg), cfg.delta)?;
    let values = curve(&rho0, &ps)?;

    let exact = |t: f64| {
        memory
            .eval(t)
            .ok()
            .and_then(|p| concurrence_at(&rho0, p).ok())
            .unwrap_or(f64::NAN)
    };
    let refine: Option<&dyn Fn(f64) -> f64> = if cfg.method.is_exact() {
        Some(&exact)
    } else {
        None
    };
    Ok((
        ConcurrenceTrace::new(times, values, cfg.dead_tol, refine)?,
        ps,
    ))
}

/// `gamma0_t, concurrence, p`, with death and revival intervals in the footer.
pub fn concurrence_curve(cfg: &ScenarioConfig) -> CliResult<Table> {
    let (trace, ps) = concurrence_trace(cfg)?;
    let times = &trace.times;
    let mut table = Table::new(cfg.record(), vec!["gamma0_t", "concurrence", "p"]);
    table.blocks.push(
        (0..times.len())
            .map(|k| vec![times[k], trace.values[k], ps[k]])
            .collect(),
    );
    table.footer.push(format!(
        "events deaths={} revivals={}",
        trace.deaths().count(),
        trace.revivals().count()
    ));
    for e in &trace.events {
        let kind = match e.kind {
            EventKind::Death => "death",
            EventKind::Revival => "revival",
        };
        table.footer.push(format!(
            "{kind} start={} end={} duration={}",
            fmt_g(e.start),
            fmt_g(e.end),
            fmt_g(e.duration())
        ));
    }
    Ok(table)
}

/// Applies `f` to the evolved state at every `(t, alpha2)` point of the
/// surface grid. The outer index is time.
pub fn surface_map<R, F>(cfg: &ScenarioConfig, f: F) -> CliResult<Vec<Vec<R>>>
where
    R: Send,
    F: Fn(f64, f64, &DensityMatrix) -> CliResult<R> + Sync,
{
    let times = cfg.times()?;
    let ps = cfg
        .memory(cfg.lambdas[0])?
        .sample_uniform(cfg.t_max, cfg.samples)?;
    let alphas = cfg.alpha2.values();
    let initial: Vec<DensityMatrix> = alphas
        .iter()
        .map(|&a2| cfg.state.density(a2, cfg.delta))
        .collect::<CliResult<_>>()?;
    (0..times.len())
        .into_par_iter()
        .map(|k| {
            alphas
                .iter()
                .zip(&initial)
                .map(|(&a2, rho0)| f(times[k], a2, &evolve_closed_form(rho0, ps[k])?))
                .collect()
        })
        .collect()
}

/// `gamma0_t, alpha2, concurrence`, one block per time.
pub fn surface(cfg: &ScenarioConfig) -> CliResult<Table> {
    let blocks = surface_map(cfg, |t, a2, rho| Ok(vec![t, a2, concurrence(rho)?]))?;
    let mut table = Table::new(cfg.record(), vec!["gamma0_t", "alpha2", "concurrence"]);
    table.blocks = blocks;
    Ok(table)
}

/// `gamma0_t, c_nonmarkov, c_markov` on a shared grid.
pub fn compare(cfg: &ScenarioConfig) -> CliResult<Table> {
    let times = cfg.times()?;
    let rho0 = cfg.state.density(single_alpha2(cfg), cfg.delta)?;
    let near = curve(
        &rho0,
        &cfg.memory(cfg.lambdas[0])?
            .sample_uniform(cfg.t_max, cfg.samples)?,
    )?;
    let far = curve(
        &rho0,
        &cfg.markov_memory()?
            .sample_uniform(cfg.t_max, cfg.samples)?,
    )?;
    let mut table = Table::new(cfg.record(), vec!["gamma0_t", "c_nonmarkov", "c_markov"]);
    table.blocks.push(
        (0..times.len())
            .map(|k| vec![times[k], near[k], far[k]])
            .collect(),
    );
    Ok(table)
}

pub fn run_scenario(cfg: &ScenarioConfig) -> CliResult<Table> {
    match cfg.command {
        Command::Pfunc => pfunc(cfg),
        Command::Concurrence => concurrence_curve(cfg),
        Command::Surface => surface(cfg),
        Command::Compare => compare(cfg),
        Command::Validate => Err(CliError::Config("validate is not a sweep".into())),
    }
}

/// Gnuplot script plotting `csv_name`, which must sit next to the script.
pub fn gnuplot_script(cfg: &ScenarioConfig, table: &Table, csv_name: &str) -> String {
    let mut s = String::from(
        "set datafile separator ','\nset key autotitle columnhead\nset xlabel 'gamma0 t'\n",
    );
    if cfg.command == Command::Surface {
        s.push_str("set ylabel 'alpha^2'\nset zlabel 'C'\nset pm3d\nset hidden3d\n");
        s.push_str(&format!(
            "splot '{csv_name}' using 1:2:3 with lines notitle\n"
        ));
    } else {
        let plots: Vec<String> = (2..=table.header.len())
            .map(|c| format!("'{csv_name}' using 1:{c} with lines"))
            .collect();
        s.push_str(&format!("plot {}\n", plots.join(", \\\n     ")));
    }
    s
}

/// Writes the CSV (and the gnuplot script when requested).
pub fn emit(cfg: &ScenarioConfig, table: &Table) -> CliResult<()> {
    let out = cfg.out.as_deref();
    write_text(out, &table.render())?;
    if let (true, Some(path)) = (cfg.emit_gnuplot, out) {
        let name = path.file_name().and_then(|n| n.to_str()).ok_or_else(|| {
            CliError::Config(format!(
                "cannot name a gnuplot script after `{}`",
                path.display()
            ))
        })?;
        let script = path.with_extension("gp");
        if script == path {
            return Err(CliError::Config(format!(
                "output `{}` would be overwritten by its gnuplot script",
                path.display()
            )));
        }
        write_text(Some(Path::new(&script)), &gnuplot_script(cfg, table, name))?;
    }
    Ok(())
}
