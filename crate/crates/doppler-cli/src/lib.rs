//! Scenario-file front end for the `doppler` crate: evaluates one operation
//! family over a time grid, checks closed forms against their oracles and
//! lists the accepted scenario kinds.

pub mod error;
pub mod families;
pub mod output;
pub mod scenario;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use error::{CliError, CliResult};
pub use families::{Family, Kind, Oracle, Row, REGISTRY};
pub use output::{write_csv, write_json, Table};
pub use scenario::{load_scenario, parse_scenario, Format, Scenario};

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub rows: usize,
    /// Aggregated warnings in grid order of first appearance
    pub warnings: Vec<String>,
    pub elapsed: Duration,
}

fn evaluate<T: Send>(threads: Option<usize>, epochs: &[f64], f: impl Fn(usize, f64) -> T + Sync + Send) -> CliResult<Vec<T>> {
    let go = || epochs.par_iter().enumerate().map(|(i, &t)| f(i, t)).collect::<Vec<T>>();
    match threads {
        None => Ok(go()),
        Some(0) => Err(CliError::Validation("--threads must be at least 1".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Validation(format!("cannot start {n} threads: {e}")))?;
            Ok(pool.install(go))
        }
    }
}

/// Folds per-row warnings into one line per message.
fn collect_warnings(notes: Vec<String>, rows: &[(f64, Vec<String>)]) -> Vec<String> {
    let mut seen: Vec<(String, usize, f64)> = Vec::new();
    for (t, ws) in rows {
        for w in ws {
            match seen.iter_mut().find(|(m, _, _)| m == w) {
                Some(entry) => entry.1 += 1,
                None => seen.push((w.clone(), 1, *t)),
            }
        }
    }
    notes
        .into_iter()
        .chain(seen.into_iter().map(|(m, n, t)| format!("{m} ({n} row{}, first at t = {t} s)", if n == 1 { "" } else { "s" })))
        .collect()
}

/// Evaluates the scenario over its grid. Rows come back in grid order
/// whatever the thread count.
pub fn run(scn: &Scenario, threads: Option<usize>) -> CliResult<(Table, RunReport)> {
    let start = Instant::now();
    let epochs = scn.grid.epochs();
    let fam = scn.family.as_ref();
    let results = evaluate(threads, &epochs, |_, t| fam.row(t))?;
    let columns: Vec<String> = fam.columns().iter().map(|s| s.to_string()).collect();
    let mut rows = Vec::with_capacity(results.len());
    let mut row_warnings = Vec::with_capacity(results.len());
    for (r, &t) in results.into_iter().zip(&epochs) {
        let r = r.map_err(|e| CliError::at(scn.tag(), Some(t), e))?;
        debug_assert_eq!(r.values.len(), columns.len());
        rows.push(r.values);
        row_warnings.push((t, r.warnings));
    }
    let warnings = collect_warnings(fam.notes(), &row_warnings);
    let report = RunReport { rows: rows.len(), warnings, elapsed: start.elapsed() };
    Ok((Table { columns, rows }, report))
}

/// Deliberate multiplicative error injected into the closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Perturbation {
    pub relative: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub quantity: &'static str,
    /// Columns `t_s, closed, reference, rel_deviation`
    pub table: Table,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

fn relative_deviation(closed: f64, reference: f64) -> f64 {
    if closed == reference {
        0.0
    } else if reference == 0.0 {
        closed.abs()
    } else {
        (closed - reference).abs() / reference.abs()
    }
}

/// Runs closed form and oracle side by side over the grid.
pub fn verify(scn: &Scenario, threads: Option<usize>, perturb: Option<Perturbation>) -> CliResult<VerifyReport> {
    let oracle = scn.family.oracle().ok_or_else(|| {
        CliError::Validation(format!("scenario '{}' has no oracle mapping; verify is unavailable", scn.tag()))
    })?;
    let epochs = scn.grid.epochs();
    let factors: Vec<f64> = match perturb {
        None => vec![1.0; epochs.len()],
        Some(p) => {
            let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
            (0..epochs.len()).map(|_| 1.0 + if rng.gen::<bool>() { p.relative } else { -p.relative }).collect()
        }
    };
    let results = evaluate(threads, &epochs, |i, t| oracle.compare(t).map(|(c, r)| (c * factors[i], r)))?;
    let mut rows = Vec::with_capacity(epochs.len());
    let mut max_deviation = 0.0f64;
    for (r, &t) in results.into_iter().zip(&epochs) {
        let (closed, reference) = r.map_err(|e| CliError::at(scn.tag(), Some(t), e))?;
        let d = relative_deviation(closed, reference);
        // a NaN deviation sticks and fails the check
        if d.is_nan() || d > max_deviation {
            max_deviation = d;
        }
        rows.push(vec![t, closed, reference, d]);
    }
    let tolerance = oracle.tolerance();
    let columns = ["t_s", "closed", "reference", "rel_deviation"].iter().map(|s| s.to_string()).collect();
    Ok(VerifyReport {
        quantity: oracle.quantity(),
        table: Table { columns, rows },
        max_deviation,
        tolerance,
        passed: max_deviation <= tolerance,
    })
}

/// One line per scenario kind, sorted by tag.
pub fn list_scenarios() -> String {
    let mut kinds: Vec<&Kind> = REGISTRY.iter().collect();
    kinds.sort_by_key(|k| k.tag);
    let mut out = String::new();
    for k in kinds {
        let verify = if k.has_oracle() { "  [verify]" } else { "" };
        out.push_str(&format!("{:<22} {:<14} {}: {}{verify}\n", k.tag, k.module, k.params, k.about));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn warnings_fold_by_message() {
        let rows = vec![(0.0, vec!["a".to_string()]), (1.0, vec!["a".to_string(), "b".to_string()])];
        let w = collect_warnings(vec!["note".into()], &rows);
        assert_eq!(w, vec!["note", "a (2 rows, first at t = 0 s)", "b (1 row, first at t = 1 s)"]);
    }

    #[test]
    fn deviation_of_equal_values_is_zero() {
        assert_eq!(relative_deviation(3.0, 3.0), 0.0);
        assert_eq!(relative_deviation(0.0, 0.0), 0.0);
        assert!((relative_deviation(1.0 + 1e-6, 1.0) - 1e-6).abs() < 1e-15);
        assert!(relative_deviation(f64::NAN, 1.0).is_nan());
    }

    #[test]
    fn listing_is_sorted_one_line_per_kind() {
        let s = list_scenarios();
        let tags: Vec<&str> = s.lines().map(|l| l.split_whitespace().next().unwrap()).collect();
        assert_eq!(tags.len(), REGISTRY.len());
        let mut sorted = tags.clone();
        sorted.sort();
        assert_eq!(tags, sorted);
    }
}
