//! One function per subcommand, plus the flag-value parsing they share.
//! Every function builds a [`Table`] and writes it; invariant checks that
//! fail after the table is written still write it (the artifact shows what
//! failed) and then exit nonzero.

use crate::args::{
    AmplitudeArgs, ConvergeArgs, EvolveArgs, Family, MacroCheckArgs, OrbitsArgs, OutputArgs,
    ParadoxArgs, Tail,
};
use crate::error::CliError;
use crate::table::{write_out, Cell, Table};
use ming_core::{
    convergence_row, decompose, first_spin_observable, is_prime, macroscopic_check,
    paradox_scan, pointer_value, sample_sequential_expectation, smoothing_scan,
    split_first_spin_observable, standard_prefixes, validate_dense,
    BudgetRule, CockedSet, CombinedState, MingDynamics, ParticleAmplitudes, PhysicalScale,
    PointerConfig, PointerFamily, SmoothingModel, SweepRow, TailState,
    equal_superposition_state, superposition_witness, MACRO_SPREAD_TOLERANCE,
};
use num_complex::Complex64;
use rayon::prelude::*;

// ---------------------------------------------------------------------------
// Shared flag-value parsing
// ---------------------------------------------------------------------------

fn stamp(out: &OutputArgs) -> Option<String> {
    if out.no_timestamp {
        None
    } else {
        Some(chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true))
    }
}

fn parse_n_list(raw: &str) -> Result<Vec<usize>, CliError> {
    let ns: Vec<usize> = raw
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("'{part}' is not a register width")))
        })
        .collect::<Result<_, _>>()?;
    if ns.is_empty() {
        return Err(CliError::Usage("--n-list must not be empty".into()));
    }
    for &n in &ns {
        if !is_prime(n) {
            return Err(CliError::Usage(format!(
                "register width {n} is not prime; orbit lengths would no longer all equal n"
            )));
        }
    }
    Ok(ns)
}

fn parse_budget(raw: &str) -> Result<BudgetRule, CliError> {
    match raw {
        "zero" => Ok(BudgetRule::Zero),
        "sqrt" => Ok(BudgetRule::Sqrt),
        other => {
            let gamma: f64 = other.parse().map_err(|_| {
                CliError::Usage(format!(
                    "budget must be 'zero', 'sqrt', or an exponent in (0,1), not '{other}'"
                ))
            })?;
            if !(gamma.is_finite() && 0.0 < gamma && gamma < 1.0) {
                return Err(CliError::Usage(format!(
                    "budget exponent must lie strictly between 0 and 1, got {gamma}"
                )));
            }
            Ok(BudgetRule::Power(gamma))
        }
    }
}

fn budget_label(rule: BudgetRule) -> String {
    match rule {
        BudgetRule::Zero => "zero".into(),
        BudgetRule::Sqrt => "sqrt".into(),
        BudgetRule::Power(gamma) => gamma.to_string(),
    }
}

fn parse_complex(raw: &str, flag: &str) -> Result<Complex64, CliError> {
    let parts: Vec<&str> = raw.split(',').collect();
    if parts.len() != 2 {
        return Err(CliError::Usage(format!("{flag} expects 're,im', got '{raw}'")));
    }
    let re: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("{flag}: '{}' is not a number", parts[0])))?;
    let im: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("{flag}: '{}' is not a number", parts[1])))?;
    Ok(Complex64::new(re, im))
}

fn parse_amplitudes(args: &AmplitudeArgs) -> Result<ParticleAmplitudes, CliError> {
    match (&args.a0, &args.a1, args.p1) {
        (Some(a0), Some(a1), _) => {
            let a0 = parse_complex(a0, "--a0")?;
            let a1 = parse_complex(a1, "--a1")?;
            ParticleAmplitudes::new(a0, a1)
                .map_err(|e| CliError::Usage(format!("amplitude pair rejected: {e}")))
        }
        (None, None, Some(p1)) => ParticleAmplitudes::from_detection_probability(p1, args.phase)
            .map_err(|e| CliError::Usage(format!("amplitude spec rejected: {e}"))),
        _ => Err(CliError::Usage(
            "specify the particle as --p1 <P> [--phase <RAD>] or as --a0 re,im --a1 re,im".into(),
        )),
    }
}

fn parse_scale(h0: f64) -> Result<PhysicalScale, CliError> {
    PhysicalScale::new(h0).map_err(|e| CliError::Usage(format!("--h0 rejected: {e}")))
}

/// The `--validate` cross-check: dense linear algebra agrees with the flow
/// on every requested width small enough to materialise (≤ 12).
fn run_validation(ns: &[usize], scale: PhysicalScale) -> Result<(), CliError> {
    for &n in ns {
        if n <= ming_core::DENSE_WIDTH_CAP {
            validate_dense(n, scale)
                .map_err(|e| CliError::Invariant(format!("dense validation at n = {n}: {e}")))?;
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// orbits
// ---------------------------------------------------------------------------

pub fn orbits(args: &OrbitsArgs) -> Result<(), CliError> {
    let d = decompose(args.n).map_err(|e| CliError::Usage(format!("--n rejected: {e}")))?;
    let mut table = Table::new("orbits", vec!["kind", "orbit", "position", "value", "bits"]);
    table.note("n", args.n as u64);
    table.note("q", d.q() as u64);
    for (index, orbit) in d.orbits().iter().enumerate() {
        for (position, member) in orbit.members().iter().enumerate() {
            table.push(vec![
                Cell::Str("orbit".into()),
                Cell::Int(index as u64),
                Cell::Int(position as u64),
                Cell::Int(member.to_u64().expect("widths ≤ 20 fit in u64")),
                Cell::Str(member.bits_string()),
            ]);
        }
    }
    for fixed in d.fixed_points() {
        table.push(vec![
            Cell::Str("fixed".into()),
            Cell::Null,
            Cell::Null,
            Cell::Int(fixed.to_u64().expect("widths ≤ 20 fit in u64")),
            Cell::Str(fixed.bits_string()),
        ]);
    }
    write_out(
        args.out.output.as_deref(),
        &table.render(args.out.format, stamp(&args.out)),
    )
}

// ---------------------------------------------------------------------------
// evolve
// ---------------------------------------------------------------------------

pub fn evolve(args: &EvolveArgs) -> Result<(), CliError> {
    if !is_prime(args.n) {
        return Err(CliError::Usage(format!(
            "register width {} is not prime",
            args.n
        )));
    }
    let particle = parse_amplitudes(&args.amplitude)?;
    let rule = parse_budget(&args.budget)?;
    let scale = parse_scale(args.h0)?;
    let steps = args.steps.unwrap_or(2 * args.n + 2);
    if steps == 0 {
        return Err(CliError::Usage("--steps must be at least 1".into()));
    }
    let t_max = args.t_max.unwrap_or(args.n as f64);
    if !(t_max.is_finite() && t_max > 0.0) {
        return Err(CliError::Usage(format!(
            "--t-max must be a positive time, got {t_max}"
        )));
    }
    if args.validate {
        run_validation(&[args.n], scale)?;
    }

    let config = PointerConfig::new(args.n, rule)
        .map_err(|e| CliError::Usage(format!("pointer configuration rejected: {e}")))?;
    let cocked = CockedSet::new(config);
    let state = CombinedState::product(particle, &cocked.canonical());
    let dynamics = MingDynamics::new(scale).with_idle_phase_rate(args.idle_phase_rate);

    let mut table = Table::new("evolve", vec!["t", "pointer_value"]);
    table.note("n", args.n as u64);
    table.note("p1", particle.p1());
    table.note("budget", budget_label(rule));
    table.note("h0", scale.h0());
    for j in 0..=steps {
        let t = t_max * j as f64 / steps as f64;
        let value = pointer_value(&dynamics.evolve(&state, t), &cocked)
            .map_err(|e| CliError::Invariant(format!("pointer evaluation at t = {t}: {e}")))?;
        table.push(vec![Cell::Float(t), Cell::Float(value)]);
    }
    write_out(
        args.out.output.as_deref(),
        &table.render(args.out.format, stamp(&args.out)),
    )
}

// ---------------------------------------------------------------------------
// converge
// ---------------------------------------------------------------------------

pub fn converge(args: &ConvergeArgs) -> Result<(), CliError> {
    let ns = parse_n_list(&args.n_list)?;
    let particle = parse_amplitudes(&args.amplitude)?;
    let rule = parse_budget(&args.budget)?;
    let scale = parse_scale(args.h0)?;
    if args.jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    if let Some(steps) = args.steps {
        for &n in &ns {
            if steps < 2 * n + 1 {
                return Err(CliError::Usage(format!(
                    "--steps {steps} cannot resolve the width-{n} trajectory; \
                     the quadrature is exact only from {} steps up",
                    2 * n + 1
                )));
            }
        }
    }
    if args.validate {
        run_validation(&ns, scale)?;
    }

    let row = |&n: &usize| -> Result<SweepRow, CliError> {
        convergence_row(n, particle, rule, args.steps)
            .map_err(|e| CliError::Invariant(format!("sweep row at n = {n}: {e}")))
    };
    let rows: Vec<SweepRow> = if args.jobs == 1 {
        ns.iter().map(row).collect::<Result<_, _>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(args.jobs)
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start {} workers: {e}", args.jobs)))?;
        pool.install(|| ns.par_iter().map(row).collect::<Result<_, _>>())?
    };

    let mut table = Table::new(
        "converge",
        vec!["n", "s", "s_over_n", "avg_spectral", "avg_quadrature", "residual"],
    );
    table.note("p1", particle.p1());
    table.note("budget", budget_label(rule));
    match args.steps {
        Some(steps) => table.note("steps", steps as u64),
        None => table.note("steps", "auto"),
    }
    for r in &rows {
        table.push(vec![
            Cell::Int(r.n as u64),
            Cell::Int(r.s),
            Cell::Float(r.s_over_n),
            Cell::Float(r.avg_spectral),
            Cell::Float(r.avg_quadrature),
            Cell::Float(r.residual),
        ]);
    }
    write_out(
        args.out.output.as_deref(),
        &table.render(args.out.format, stamp(&args.out)),
    )?;

    // Route agreement is a hard invariant of every row, not a best effort.
    for r in &rows {
        let gap = (r.avg_spectral - r.avg_quadrature).abs();
        // Negated form so a NaN gap fails the check instead of passing it.
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(gap <= 1e-8) {
            return Err(CliError::Invariant(format!(
                "spectral and quadrature averages disagree at n = {}: |{} - {}| = {gap:e}",
                r.n, r.avg_spectral, r.avg_quadrature
            )));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// paradox
// ---------------------------------------------------------------------------

fn parse_eps_grid(raw: &str) -> Result<Vec<f64>, CliError> {
    let grid: Vec<f64> = raw
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("'{part}' is not a splitting")))
        })
        .collect::<Result<_, _>>()?;
    if grid.iter().any(|&e| !e.is_finite() || e < 0.0) {
        return Err(CliError::Usage(
            "splittings must be finite and nonnegative".into(),
        ));
    }
    if !grid.contains(&0.0) || grid.iter().filter(|&&e| e > 0.0).count() < 2 {
        return Err(CliError::Usage(
            "--eps must include 0 and at least two positive splittings \
             (the scan exists to straddle the discontinuity)"
                .into(),
        ));
    }
    Ok(grid)
}

pub fn paradox(args: &ParadoxArgs) -> Result<(), CliError> {
    let grid = parse_eps_grid(&args.eps)?;
    let smoothing = args
        .smooth_width
        .map(|w| {
            SmoothingModel::new(w, args.smooth_steepness)
                .map_err(|e| CliError::Usage(format!("smoothing rejected: {e}")))
        })
        .transpose()?;
    if args.samples == Some(0) {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }

    let rows = paradox_scan(&grid).map_err(|e| CliError::Invariant(e.to_string()))?;
    let smoothed = smoothing.map(|model| smoothing_scan(&grid, model));

    let mut columns = vec!["eps", "expectation_r", "outcomes"];
    if smoothed.is_some() {
        columns.push("smoothed_expectation_r");
    }
    if args.samples.is_some() {
        columns.push("sampled_expectation_r");
    }
    let mut table = Table::new("paradox", columns);
    if let Some(model) = smoothing {
        table.note("smooth_width", model.width());
        table.note("smooth_steepness", model.steepness());
        table.note("smoothing", SmoothingModel::note());
    }
    if let Some(shots) = args.samples {
        table.note("samples", shots);
        table.note("seed", args.seed);
    }

    let psi = equal_superposition_state();
    let witness = superposition_witness();
    for (index, row) in rows.iter().enumerate() {
        let outcomes = row
            .outcomes
            .iter()
            .map(|(value, p)| format!("{value}:{p}"))
            .collect::<Vec<_>>()
            .join(";");
        let mut cells = vec![
            Cell::Float(row.eps),
            Cell::Float(row.expectation_r),
            Cell::Str(outcomes),
        ];
        if let Some(smooth_rows) = &smoothed {
            cells.push(Cell::Float(smooth_rows[index].smoothed_expectation_r));
        }
        if let Some(shots) = args.samples {
            let first = if row.eps == 0.0 {
                first_spin_observable()
            } else {
                split_first_spin_observable(row.eps)
                    .map_err(|e| CliError::Invariant(e.to_string()))?
            };
            let sampled = sample_sequential_expectation(
                &psi,
                &first,
                &witness,
                shots,
                args.seed.wrapping_add(index as u64),
            )
            .map_err(|e| CliError::Invariant(e.to_string()))?;
            cells.push(Cell::Float(sampled));
        }
        table.push(cells);
    }
    write_out(
        args.out.output.as_deref(),
        &table.render(args.out.format, stamp(&args.out)),
    )
}

// ---------------------------------------------------------------------------
// macro-check
// ---------------------------------------------------------------------------

pub fn macro_check(args: &MacroCheckArgs) -> Result<(), CliError> {
    let ns = parse_n_list(&args.n_list)?;
    let rule = parse_budget(&args.budget)?;
    let tail = match args.tail {
        Tail::Ground => TailState::ground(),
        Tail::Excited => TailState::excited(),
        Tail::Plus => TailState::plus(),
    };
    let family = match args.family {
        Family::Deficit => PointerFamily::MassDeficit,
        Family::Indicator => PointerFamily::ManifoldIndicator,
    };
    let prefixes = standard_prefixes(&tail);
    let report = macroscopic_check(&prefixes, &tail, &ns, rule, family)
        .map_err(|e| CliError::Usage(format!("check rejected: {e}")))?;

    let mut table = Table::new("macro-check", vec!["prefix", "n", "value"]);
    table.note("budget", budget_label(rule));
    table.note("tail", format!("{:?}", args.tail).to_lowercase());
    table.note("family", format!("{:?}", args.family).to_lowercase());
    for row in &report.rows {
        table.push(vec![
            Cell::Str(row.label.clone()),
            Cell::Int(row.n as u64),
            Cell::Float(row.value),
        ]);
    }
    table.summarize("spread", report.spread);
    table.summarize("tolerance", report.tolerance);
    table.summarize("verdict", if report.pass { "PASS" } else { "FAIL" });
    write_out(
        args.out.output.as_deref(),
        &table.render(args.out.format, stamp(&args.out)),
    )?;

    if !report.pass {
        return Err(CliError::Invariant(format!(
            "pointer readings spread {:e} across prefixes, tolerance {:e}: \
             the requested widths are not yet macroscopic",
            report.spread, MACRO_SPREAD_TOLERANCE
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// entry
// ---------------------------------------------------------------------------

pub fn run(command: &crate::args::Command) -> Result<(), CliError> {
    match command {
        crate::args::Command::Orbits(args) => orbits(args),
        crate::args::Command::Evolve(args) => evolve(args),
        crate::args::Command::Converge(args) => converge(args),
        crate::args::Command::Paradox(args) => paradox(args),
        crate::args::Command::MacroCheck(args) => macro_check(args),
    }
}
