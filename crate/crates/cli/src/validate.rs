//! Self-check suite behind `cswap-lab validate`.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use cswap_core::hilbert::DensityMatrix;
use cswap_core::qstates::{self, HaarSampler};
use cswap_core::swaptest::{bipartitions, run, Engine, SwapGroupSpec};
use cswap_core::PureState;

use crate::experiments::{self, per_site, Experiment};
use crate::grid::{Axis, Point};
use crate::record::{Cell, Row};
use crate::run::{evaluate, run_to_string, RunConfig};

/// A stored reference output and the grid it was produced on.
struct Golden {
    id: &'static str,
    grid: &'static [&'static str],
    text: &'static str,
}

macro_rules! golden {
    ($id:literal, [$($g:literal),*]) => {
        Golden { id: $id, grid: &[$($g),*], text: include_str!(concat!("../golden/", $id, ".csv")) }
    };
}

const GOLDEN: &[Golden] = &[
    golden!("mixed-bell", ["c2=0:1:3", "delta=0:pi/4:3"]),
    golden!("mixed-ghz", ["n=3:4:2", "delta=0:pi/4:3", "epsilon=0:pi/4:3"]),
    golden!("mixed-w", ["n=3:4:2", "delta=0:pi/4:3", "epsilon=0:pi/4:3"]),
    golden!("qudit-seesaw", ["d=2:5:4", "n=2:3:2", "delta=0:pi/4:3"]),
    golden!("qudit-vs-qubit", ["d=2:8:7"]),
    golden!("bipartite-tables", []),
    golden!("two-party-tables", []),
    golden!("haar-comparison", ["n=3:4:2", "states=4:4:1"]),
    golden!("squeezed-equiv", ["alpha=0:1:2", "r=0:1:3"]),
    golden!("squeezed-cat", ["alpha=1:1:1", "r=0:2:3", "phi=0:pi:3"]),
    golden!("ecs-general", ["t=0:pi/4:3", "alpha=0:2:3"]),
    golden!("ecvs-vs-ecsplus", ["alpha=0:3:4"]),
    golden!("ecs-qudit", ["alpha=0:3:4"]),
    golden!("tmsv", ["d=20:20:1", "r=0:2:3"]),
];

fn with_grid(id: &str, grid: &[&str]) -> Result<Experiment> {
    let mut exp = experiments::find(id).ok_or_else(|| anyhow!("no experiment {id}"))?;
    let axes: Vec<Axis> = grid.iter().map(|g| g.parse()).collect::<Result<_>>()?;
    exp.grid.apply(&axes)?;
    Ok(exp)
}

fn golden_config() -> RunConfig {
    RunConfig::default()
}

fn read_table(text: &str) -> Result<Vec<Vec<String>>> {
    let mut r = csv::ReaderBuilder::new().has_headers(false).from_reader(text.as_bytes());
    r.records().map(|rec| Ok(rec?.iter().map(String::from).collect())).collect()
}

fn cell_eq(a: &str, b: &str) -> bool {
    match (a.parse::<f64>(), b.parse::<f64>()) {
        (Ok(x), Ok(y)) => x == y || (x - y).abs() <= 1e-12 * x.abs().max(1.0) || (x.is_nan() && y.is_nan()),
        _ => a == b,
    }
}

/// Compares two CSV texts cell by cell, floats to a relative 1e-12.
pub fn compare_csv(expected: &str, actual: &str) -> Result<()> {
    let (e, a) = (read_table(expected)?, read_table(actual)?);
    if e.is_empty() {
        bail!("reference is empty");
    }
    if e[0] != a[0] {
        bail!("header differs: expected {:?}, got {:?}", e[0], a[0]);
    }
    if e.len() != a.len() {
        bail!("expected {} rows, got {}", e.len() - 1, a.len() - 1);
    }
    for (i, (re, ra)) in e.iter().zip(&a).enumerate().skip(1) {
        if re.len() != ra.len() {
            bail!("row {i}: expected {} fields, got {}", re.len(), ra.len());
        }
        for (j, (x, y)) in re.iter().zip(ra).enumerate() {
            if !cell_eq(x, y) {
                bail!("row {i} column {}: expected {x:?}, got {y:?}", e[0][j]);
            }
        }
    }
    Ok(())
}

fn column<'a>(exp: &Experiment, rows: &'a [(Point, Row)], name: &str) -> Vec<&'a Cell> {
    let i = exp.outputs.iter().position(|c| *c == name).unwrap_or_else(|| panic!("no output {name}"));
    rows.iter().map(|(_, r)| &r.outputs[i]).collect()
}

fn float(c: &Cell) -> f64 {
    match c {
        Cell::Float(v) => *v,
        _ => f64::NAN,
    }
}

fn columns_agree(id: &str, grid: &[&str], pairs: &[(&str, &str)], tol: f64) -> Result<()> {
    let exp = with_grid(id, grid)?;
    let rows = evaluate(&exp, &golden_config())?;
    for (a, b) in pairs {
        let worst = column(&exp, &rows, a)
            .iter()
            .zip(column(&exp, &rows, b))
            .map(|(x, y)| (float(x) - float(y)).abs())
            .fold(0.0, f64::max);
        if !(worst <= tol) {
            bail!("{a} against {b}: max gap {worst:.2e}");
        }
    }
    Ok(())
}

fn check_ghz_pure() -> Result<()> {
    for n in 2..=6 {
        let g = qstates::ghz::<f64>(n)?;
        let p0 = per_site(&g, &g)?.all_zero();
        let want = 0.5 + 0.5f64.powi(n as i32);
        if (p0 - want).abs() > 1e-12 {
            bail!("n={n}: P(0^n) = {p0}, expected {want}");
        }
    }
    Ok(())
}

fn check_tables() -> Result<()> {
    let exp = with_grid("bipartite-tables", &[])?;
    let rows = evaluate(&exp, &golden_config())?;
    for (p, r) in &rows {
        let oracle = float(&r.outputs[10]);
        if !oracle.is_nan() && (float(&r.outputs[4]) - oracle).abs() > 1e-12 {
            bail!("bipartite cut {:?} at {p}: P(11) off the exact value", r.params[0]);
        }
    }
    let exp = with_grid("two-party-tables", &[])?;
    let rows = evaluate(&exp, &golden_config())?;
    for (_, r) in &rows {
        if r.outputs.last() == Some(&Cell::Bool(false)) {
            bail!("two-party {:?} {:?} does not match its table", r.params[0], r.params[1]);
        }
    }
    Ok(())
}

fn check_engines() -> Result<()> {
    let mut worst = 0.0f64;
    for n in 1..=3 {
        let mut h = HaarSampler::new(n, 11 + n as u64)?;
        for _ in 0..6 {
            let s: Vec<PureState> = (0..4).map(|_| h.sample()).collect();
            let a = DensityMatrix::mixture(&[(0.7, &s[0]), (0.3, &s[1])])?;
            let b = DensityMatrix::mixture(&[(0.4, &s[2]), (0.6, &s[3])])?;
            let l = a.layout().clone();
            let mut specs = vec![SwapGroupSpec::single(l.clone()), SwapGroupSpec::per_site(l.clone())];
            if n > 1 {
                for c in bipartitions(n) {
                    specs.push(SwapGroupSpec::bipartite(l.clone(), &c)?);
                }
            }
            for spec in &specs {
                let e = run(Engine::Expectation, &a, &b, spec)?;
                let c = run(Engine::Circuit, &a, &b, spec)?;
                worst = worst.max(e.max_abs_diff(&c));
            }
        }
    }
    if worst > 1e-10 {
        bail!("engines differ by {worst:.2e}");
    }
    Ok(())
}

fn check_workers() -> Result<()> {
    let exp = with_grid("qudit-seesaw", &["d=2:4:3", "n=2:3:2", "delta=0:pi/4:4"])?;
    let one = run_to_string(&exp, &RunConfig { workers: 1, shots: Some(500), ..RunConfig::default() })?;
    let many = run_to_string(&exp, &RunConfig { workers: 4, shots: Some(500), ..RunConfig::default() })?;
    if one != many {
        bail!("output depends on the worker count");
    }
    Ok(())
}

fn check_golden(g: &Golden, dir: Option<&Path>) -> Result<()> {
    let stored = match dir {
        Some(d) => {
            let path = d.join(format!("{}.csv", g.id));
            fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?
        }
        None => g.text.to_string(),
    };
    let fresh = run_to_string(&with_grid(g.id, g.grid)?, &golden_config())?;
    compare_csv(&stored, &fresh)
}

/// Writes fresh reference files into `dir`.
pub fn bless(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    for g in GOLDEN {
        let text = run_to_string(&with_grid(g.id, g.grid)?, &golden_config())?;
        fs::write(dir.join(format!("{}.csv", g.id)), text)?;
    }
    Ok(())
}

/// Runs every check, printing one line each; true when all pass.
pub fn run_all(golden_dir: Option<&Path>, out: &mut impl std::io::Write) -> Result<bool> {
    type Check<'a> = Box<dyn Fn() -> Result<()> + 'a>;
    let mut checks: Vec<(String, Check)> = vec![
        ("closed-form/ghz-pure".into(), Box::new(check_ghz_pure)),
        (
            "closed-form/mixed-ghz".into(),
            Box::new(|| {
                columns_agree(
                    "mixed-ghz",
                    &["n=2:5:4", "delta=0:pi/4:5", "epsilon=0:pi/4:5"],
                    &[("p_not0", "p_not0_closed"), ("p_odd", "p_odd_closed")],
                    1e-10,
                )
            }),
        ),
        (
            "closed-form/mixed-w".into(),
            Box::new(|| {
                columns_agree(
                    "mixed-w",
                    &["n=3:5:3", "delta=0:pi/4:5", "epsilon=0:pi/4:5"],
                    &[("p_not0", "p_not0_closed"), ("p_odd", "p_odd_closed")],
                    1e-10,
                )
            }),
        ),
        (
            "closed-form/mixed-bell".into(),
            Box::new(|| {
                columns_agree("mixed-bell", &["delta=0:pi/4:9"], &[("p_odd", "p_odd_closed")], 1e-12)
            }),
        ),
        (
            "closed-form/even-seesaw".into(),
            Box::new(|| {
                columns_agree(
                    "qudit-seesaw",
                    &["d=2:8:4", "n=2:3:2", "delta=0:pi/4:5"],
                    &[("p0", "p0_closed"), ("p_odd", "p_odd_closed")],
                    1e-12,
                )
            }),
        ),
        ("tables".into(), Box::new(check_tables)),
        ("engine-agreement".into(), Box::new(check_engines)),
        ("determinism/workers".into(), Box::new(check_workers)),
    ];
    for g in GOLDEN {
        checks.push((format!("golden/{}", g.id), Box::new(move || check_golden(g, golden_dir))));
    }
    let mut ok = true;
    for (name, check) in checks {
        match check() {
            Ok(()) => writeln!(out, "PASS {name}")?,
            Err(e) => {
                ok = false;
                writeln!(out, "FAIL {name}: {e:#}")?;
            }
        }
    }
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_comparison_names_the_cell() {
        let a = "x,y\n1,2.0000000000000000e0\n";
        assert!(compare_csv(a, a).is_ok());
        assert!(compare_csv(a, "x,y\n1,2.0000000000000004e0\n").is_ok());
        let err = compare_csv(a, "x,y\n1,2.5e0\n").unwrap_err().to_string();
        assert!(err.contains("column y"), "{err}");
        assert!(compare_csv(a, "x,z\n1,2\n").is_err());
        assert!(compare_csv(a, "x,y\n").is_err());
    }
}
